//! Interval-graph recognition for small graphs: chordality by maximum
//! cardinality search, maximal cliques, then a consecutive-ones clique order
//! found by backtracking.

use serde::{Deserialize, Serialize};

use super::VertexId;
use crate::error::{Error, Result};

/// Default cap on the number of maximal cliques the order search accepts.
pub const DEFAULT_CLIQUE_CAP: usize = 12;

/// Closed integer intervals indexed by vertex id.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalRep {
    pub intervals: Vec<(i64, i64)>,
}

impl IntervalRep {
    pub fn right(&self, v: usize) -> i64 {
        self.intervals[v].1
    }

    pub fn intersect(&self, u: usize, v: usize) -> bool {
        let (a, b) = (self.intervals[u], self.intervals[v]);
        a.0 <= b.1 && b.0 <= a.1
    }
}

/// Returns an interval representation of the undirected graph, or `None` if
/// it is not an interval graph. Vertices are limited to 64.
pub fn recognize_interval(adj: &[Vec<VertexId>], clique_cap: usize) -> Result<Option<IntervalRep>> {
    let n = adj.len();
    if n > 64 {
        return Err(Error::ResourceLimit(format!("interval recognition supports 64 vertices, got {n}")));
    }
    let masks: Vec<u64> = adj.iter().map(|l| l.iter().fold(0u64, |m, &w| m | 1 << w)).collect();
    let mut intervals = vec![(0i64, 0i64); n];
    let mut offset = 0i64;
    // components are independent; each gets its own block of positions
    for comp in components(&masks) {
        let local: Vec<u64> = masks.iter().map(|&m| m & comp).collect();
        let Some(cliques) = chordal_maximal_cliques(&local, comp) else {
            return Ok(None);
        };
        if cliques.len() > clique_cap {
            return Err(Error::ResourceLimit(format!(
                "{} maximal cliques in one component exceed the cap of {clique_cap}",
                cliques.len()
            )));
        }
        let mut search = OrderSearch { cliques: &cliques, order: Vec::new(), placed: vec![false; cliques.len()] };
        if !search.run(0, 0) {
            return Ok(None);
        }
        for (v, iv) in intervals.iter_mut().enumerate().filter(|(v, _)| comp >> v & 1 == 1) {
            let positions: Vec<i64> = search
                .order
                .iter()
                .enumerate()
                .filter(|(_, &c)| cliques[c] >> v & 1 == 1)
                .map(|(pos, _)| offset + pos as i64)
                .collect();
            *iv = (positions[0], positions[positions.len() - 1]);
        }
        offset += cliques.len() as i64 + 1;
    }
    Ok(Some(IntervalRep { intervals }))
}

/// Vertex masks of the connected components, ordered by least vertex.
fn components(masks: &[u64]) -> Vec<u64> {
    let mut seen = 0u64;
    let mut out = Vec::new();
    for start in 0..masks.len() {
        if seen >> start & 1 == 1 {
            continue;
        }
        let mut comp = 1u64 << start;
        let mut frontier = comp;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = masks[v] & !comp;
            comp |= fresh;
            frontier |= fresh;
        }
        seen |= comp;
        out.push(comp);
    }
    out
}

/// Maximal cliques of a chordal graph, or `None` if the graph has a chordless
/// cycle. Maximum cardinality search visits vertices so that the earlier-
/// visited neighbours of each vertex form a clique exactly when the graph is
/// chordal; those sets (plus the vertex) contain every maximal clique.
fn chordal_maximal_cliques(masks: &[u64], within: u64) -> Option<Vec<u64>> {
    let n = masks.len();
    let mut weight = vec![0usize; n];
    let mut visited = !within;
    let mut candidates = Vec::with_capacity(n);
    for _ in 0..within.count_ones() {
        let v = (0..n)
            .filter(|&v| visited >> v & 1 == 0)
            .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
            .expect("unvisited vertex remains");
        let earlier = masks[v] & visited & within;
        let mut rest = earlier;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if earlier & !(1 << u) & !masks[u] != 0 {
                return None;
            }
        }
        candidates.push(earlier | 1 << v);
        visited |= 1 << v;
        for w in 0..n {
            if masks[v] >> w & 1 == 1 {
                weight[w] += 1;
            }
        }
    }
    let mut cliques: Vec<u64> = Vec::new();
    for &c in &candidates {
        if !candidates.iter().any(|&d| d != c && d & c == c) && !cliques.contains(&c) {
            cliques.push(c);
        }
    }
    cliques.sort_unstable();
    Some(cliques)
}

struct OrderSearch<'a> {
    cliques: &'a [u64],
    order: Vec<usize>,
    placed: Vec<bool>,
}

impl OrderSearch<'_> {
    /// Appends cliques so that every vertex occupies a contiguous run:
    /// a new clique may only reuse vertices of the clique directly before it.
    fn run(&mut self, seen: u64, closed: u64) -> bool {
        if self.order.len() == self.cliques.len() {
            return true;
        }
        let last = self.order.last().map_or(0, |&c| self.cliques[c]);
        for c in 0..self.cliques.len() {
            if self.placed[c] {
                continue;
            }
            let k = self.cliques[c];
            if k & closed != 0 || k & seen & !last != 0 {
                continue;
            }
            self.placed[c] = true;
            self.order.push(c);
            if self.run(seen | k, closed | (last & !k)) {
                return true;
            }
            self.order.pop();
            self.placed[c] = false;
        }
        false
    }
}
