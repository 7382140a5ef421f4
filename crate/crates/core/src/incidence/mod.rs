//! Incidence structures `(P_1, ..., P_k, I)` and the structure `S_chi`
//! attached to a characteristic function.
//!
//! Vertices carry dense global ids `0..N`; each belongs to exactly one part
//! (its level `d(v)` in `1..=k`). Edges are stored directed from the lower
//! level to the higher one.

mod equiv;
mod interval;

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::charfn::{components_where, CellIndex, CharFn, Point};
use crate::error::{invalid, Error, Result};

pub use equiv::{equivalent, equivalent_with_cap, DEFAULT_EQUIVALENCE_CAP};
pub use interval::{recognize_interval, IntervalRep, DEFAULT_CLIQUE_CAP};

/// Global vertex id.
pub type VertexId = u32;

/// Default vertex cap for [`classify`].
pub const DEFAULT_CLASSIFY_CAP: usize = 24;

/// An incidence structure of rank `k` (that is, with parts `P_1..P_k`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "StructureJson", into = "StructureJson")]
pub struct IncidenceStructure {
    rank: u32,
    levels: Vec<u32>,
    edges: BTreeSet<(VertexId, VertexId)>,
}

#[derive(Serialize, Deserialize)]
struct StructureJson {
    rank: u32,
    parts: Vec<Vec<VertexId>>,
    edges: Vec<(VertexId, VertexId)>,
}

impl TryFrom<StructureJson> for IncidenceStructure {
    type Error = Error;

    fn try_from(raw: StructureJson) -> Result<Self> {
        IncidenceStructure::new(raw.rank, raw.parts, raw.edges)
    }
}

impl From<IncidenceStructure> for StructureJson {
    fn from(s: IncidenceStructure) -> Self {
        StructureJson { rank: s.rank, parts: s.parts(), edges: s.edges.into_iter().collect() }
    }
}

impl IncidenceStructure {
    /// Builds a structure from explicit parts (`parts[i]` lists the vertices
    /// of `P_{i+1}`). Vertex ids must be exactly `0..N`. Edges may be given in
    /// either orientation; same-part edges are rejected.
    pub fn new<E>(rank: u32, parts: Vec<Vec<VertexId>>, edges: E) -> Result<Self>
    where
        E: IntoIterator<Item = (VertexId, VertexId)>,
    {
        if parts.len() != rank as usize {
            return invalid(format!("rank {rank} but {} parts given", parts.len()));
        }
        let total: usize = parts.iter().map(Vec::len).sum();
        let mut levels = vec![0u32; total];
        for (i, part) in parts.iter().enumerate() {
            for &v in part {
                let slot = levels
                    .get_mut(v as usize)
                    .ok_or_else(|| Error::Invalid(format!("vertex ids must be 0..{total}, got {v}")))?;
                if *slot != 0 {
                    return invalid(format!("vertex {v} listed twice"));
                }
                *slot = i as u32 + 1;
            }
        }
        Self::from_levels(rank, levels, edges)
    }

    /// Builds a structure from the level of every vertex.
    pub fn from_levels<E>(rank: u32, levels: Vec<u32>, edges: E) -> Result<Self>
    where
        E: IntoIterator<Item = (VertexId, VertexId)>,
    {
        if let Some(v) = levels.iter().position(|&l| l == 0 || l > rank) {
            return invalid(format!("vertex {v} has level {} outside 1..={rank}", levels[v]));
        }
        let n = levels.len() as u32;
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return invalid(format!("edge ({u},{v}) mentions an unknown vertex"));
            }
            let (lu, lv) = (levels[u as usize], levels[v as usize]);
            match lu.cmp(&lv) {
                std::cmp::Ordering::Less => set.insert((u, v)),
                std::cmp::Ordering::Greater => set.insert((v, u)),
                std::cmp::Ordering::Equal => return invalid(format!("edge ({u},{v}) joins two vertices of part {lu}")),
            };
        }
        Ok(IncidenceStructure { rank, levels, edges: set })
    }

    /// The structure with no vertices.
    pub fn empty(rank: u32) -> Self {
        IncidenceStructure { rank, levels: Vec::new(), edges: BTreeSet::new() }
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn num_vertices(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// Level `d(v)` of a vertex.
    pub fn level(&self, v: VertexId) -> u32 {
        self.levels[v as usize]
    }

    pub fn levels(&self) -> &[u32] {
        &self.levels
    }

    pub fn edges(&self) -> &BTreeSet<(VertexId, VertexId)> {
        &self.edges
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.edges.contains(&(u, v)) || self.edges.contains(&(v, u))
    }

    /// Vertex lists of `P_1..P_k`, ascending ids within each part.
    pub fn parts(&self) -> Vec<Vec<VertexId>> {
        let mut parts = vec![Vec::new(); self.rank as usize];
        for (v, &l) in self.levels.iter().enumerate() {
            parts[l as usize - 1].push(v as VertexId);
        }
        parts
    }

    pub fn part_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.rank as usize];
        for &l in &self.levels {
            sizes[l as usize - 1] += 1;
        }
        sizes
    }

    /// Out-neighbours (higher level) of every vertex.
    pub fn up_adjacency(&self) -> Vec<Vec<VertexId>> {
        let mut adj = vec![Vec::new(); self.num_vertices()];
        for &(u, v) in &self.edges {
            adj[u as usize].push(v);
        }
        adj
    }

    /// Undirected adjacency lists.
    pub fn undirected_adjacency(&self) -> Vec<Vec<VertexId>> {
        let mut adj = vec![Vec::new(); self.num_vertices()];
        for &(u, v) in &self.edges {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// The same vertices with a different relation.
    pub fn with_edges<E>(&self, edges: E) -> Result<Self>
    where
        E: IntoIterator<Item = (VertexId, VertexId)>,
    {
        Self::from_levels(self.rank, self.levels.clone(), edges)
    }

    /// Graphviz rendering of the underlying partite graph.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph incidence {\n");
        for (i, part) in self.parts().iter().enumerate() {
            let _ = writeln!(out, "  subgraph part{} {{ rank = same;", i + 1);
            for v in part {
                let _ = writeln!(out, "    v{v} [label=\"{v}\\nP{}\"];", i + 1);
            }
            out.push_str("  }\n");
        }
        for (u, v) in &self.edges {
            let _ = writeln!(out, "  v{u} -- v{v};");
        }
        out.push_str("}\n");
        out
    }
}

/// Reachability closure of the relation. Edges always climb in level, so the
/// relation is acyclic and vertices can be processed from the top level down.
pub fn transitive_closure(s: &IncidenceStructure) -> BTreeSet<(VertexId, VertexId)> {
    let n = s.num_vertices();
    let up = s.up_adjacency();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(s.levels[v]));
    let mut reach: Vec<BTreeSet<VertexId>> = vec![BTreeSet::new(); n];
    for &v in &order {
        let mut acc = BTreeSet::new();
        for &w in &up[v] {
            acc.insert(w);
            acc.extend(reach[w as usize].iter().copied());
        }
        reach[v] = acc;
    }
    reach.into_iter().enumerate().flat_map(|(v, set)| set.into_iter().map(move |w| (v as VertexId, w))).collect()
}

/// The structure with its relation replaced by the transitive closure.
pub fn closed(s: &IncidenceStructure) -> IncidenceStructure {
    IncidenceStructure { rank: s.rank, levels: s.levels.clone(), edges: transitive_closure(s) }
}

/// `S_chi` together with the lattice component behind every vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiStructure {
    pub structure: IncidenceStructure,
    /// `carriers[v]` is the (sorted) connected component labelled by `v`.
    pub carriers: Vec<Vec<Point>>,
    pub chi: CharFn,
    pub r: u32,
}

/// Builds `S_chi`: one vertex per connected component of `chi^{-1}(r - i)`
/// for `1 <= i <= r - 1`, with an edge `(p, q)` whenever some `a in p` and
/// `b in q` are adjacent with `a <= b`.
///
/// Ids are assigned by level, then by the least point of the component.
pub fn build_s_chi(chi: &CharFn, r: u32) -> Result<ChiStructure> {
    if r == 0 {
        return invalid("r must be positive");
    }
    if !chi.validate(r) {
        return invalid(format!("function is not a valid characteristic function for r = {r}"));
    }
    let mut comps = components_where(chi, |v| v >= 1 && v < r);
    comps.sort_by_key(|(v, c)| (std::cmp::Reverse(*v), c[0]));
    let mut owner = vec![u32::MAX; chi.len()];
    let mut levels = Vec::with_capacity(comps.len());
    for (id, (v, comp)) in comps.iter().enumerate() {
        levels.push(r - v);
        for &k in comp {
            owner[k] = id as u32;
        }
    }
    let index = CellIndex::new(chi);
    let mut edges = BTreeSet::new();
    let mut q = vec![0u32; chi.dim()];
    for k in 0..chi.len() {
        if owner[k] == u32::MAX {
            continue;
        }
        q.copy_from_slice(chi.point(k));
        for i in 0..q.len() {
            q[i] += 1;
            if let Some(j) = index.get(&q) {
                if owner[j] != u32::MAX && chi.value_at(j) < chi.value_at(k) {
                    edges.insert((owner[k], owner[j]));
                }
            }
            q[i] -= 1;
        }
    }
    let structure = IncidenceStructure::from_levels(r - 1, levels, edges)?;
    let carriers =
        comps.into_iter().map(|(_, comp)| comp.into_iter().map(|k| chi.point(k).to_vec()).collect()).collect();
    Ok(ChiStructure { structure, carriers, chi: chi.clone(), r })
}

/// Whether every edge of `extended` has a witness `a in p`, `b in q` with
/// `a <= b`, and `extended` contains the relation of `s`. When true the
/// extended relation is equivalent to `I_chi`; when false no verdict follows.
pub fn extension_equivalent(s: &ChiStructure, extended: &BTreeSet<(VertexId, VertexId)>) -> bool {
    let st = &s.structure;
    let n = st.num_vertices() as u32;
    let mut normalized = BTreeSet::new();
    for &(u, v) in extended {
        if u >= n || v >= n {
            return false;
        }
        let (u, v) = match st.level(u).cmp(&st.level(v)) {
            std::cmp::Ordering::Less => (u, v),
            std::cmp::Ordering::Greater => (v, u),
            std::cmp::Ordering::Equal => return false,
        };
        normalized.insert((u, v));
    }
    if !st.edges().is_subset(&normalized) {
        return false;
    }
    normalized.iter().all(|&(u, v)| {
        let lower = &s.carriers[u as usize];
        let upper = &s.carriers[v as usize];
        lower.iter().any(|a| upper.iter().any(|b| a.iter().zip(b).all(|(x, y)| x <= y)))
    })
}

/// Lifts a rank-2 structure to rank `k >= 3` by adding a single vertex `s`
/// in `P_3` above every vertex of `P_1` and `P_2`.
pub fn rank_lift(s: &IncidenceStructure, k: u32) -> Result<IncidenceStructure> {
    if s.rank() != 2 {
        return invalid(format!("rank lift needs a rank-2 structure, got rank {}", s.rank()));
    }
    if k < 3 {
        return invalid(format!("target rank must be at least 3, got {k}"));
    }
    let top = s.num_vertices() as VertexId;
    let mut levels = s.levels.clone();
    levels.push(3);
    let edges = s.edges.iter().copied().chain((0..top).map(|p| (p, top)));
    IncidenceStructure::from_levels(k, levels, edges)
}

/// Graph-class metadata for an incidence structure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    /// The closure relates every pair of vertices in distinct parts, and no
    /// part holds two vertices: the structure is a (partial) flag.
    pub is_complete: bool,
    /// The structure or its transitive closure is an interval graph.
    pub is_interval: bool,
    /// Intervals indexed by vertex id, present when `is_interval`. Their
    /// intersection graph is equivalent to the structure.
    pub interval: Option<IntervalRep>,
    pub partite_profile: Vec<usize>,
}

/// Tests completeness and interval-graph membership of the underlying
/// undirected graph of `I`, falling back to its transitive closure.
pub fn classify(s: &IncidenceStructure) -> Result<Classification> {
    classify_with_caps(s, DEFAULT_CLASSIFY_CAP, DEFAULT_CLIQUE_CAP)
}

pub fn classify_with_caps(s: &IncidenceStructure, vertex_cap: usize, clique_cap: usize) -> Result<Classification> {
    let n = s.num_vertices();
    if n > vertex_cap {
        return Err(Error::ResourceLimit(format!("classification supports at most {vertex_cap} vertices, got {n}")));
    }
    let closure = transitive_closure(s);
    let is_complete = s.part_sizes().iter().all(|&c| c <= 1) && closure.len() == n * n.saturating_sub(1) / 2;
    let mut interval = recognize_interval(&s.undirected_adjacency(), clique_cap)?;
    if interval.is_none() && closure.len() > s.edges.len() {
        let closed = s.with_edges(closure.iter().copied())?;
        interval = recognize_interval(&closed.undirected_adjacency(), clique_cap)?;
    }
    Ok(Classification { is_complete, is_interval: interval.is_some(), interval, partite_profile: s.part_sizes() })
}

/// Checks that an interval representation describes `s` up to equivalence:
/// same-level intervals are disjoint and the intersection graph has the same
/// closure as `s`.
pub fn validate_interval_rep(s: &IncidenceStructure, rep: &IntervalRep) -> Result<()> {
    let n = s.num_vertices();
    if rep.intervals.len() != n {
        return invalid(format!("{} intervals for {n} vertices", rep.intervals.len()));
    }
    if let Some(v) = rep.intervals.iter().position(|&(lo, hi)| lo > hi) {
        return invalid(format!("interval of vertex {v} is empty"));
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let (a, b) = (rep.intervals[u], rep.intervals[v]);
            if a.0 <= b.1 && b.0 <= a.1 {
                if s.levels[u] == s.levels[v] {
                    return invalid(format!("intervals of vertices {u} and {v} share a part and overlap"));
                }
                edges.push((u as VertexId, v as VertexId));
            }
        }
    }
    let induced = s.with_edges(edges)?;
    if transitive_closure(&induced) != transitive_closure(s) {
        return invalid("interval intersection graph is not equivalent to the structure");
    }
    Ok(())
}
