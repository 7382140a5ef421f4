//! Lattice sets `A_p ⊆ Z^{d-1}`, their two-layer lifts `B_p ⊆ Z^d`, and the
//! characteristic function `chi(a) = min_{b <= a} eta(b)` built from them.

use std::collections::{BTreeSet, VecDeque};

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::charfn::{CharFn, Point};
use crate::error::{invalid, Error, Result};
use crate::incidence::{IncidenceStructure, VertexId};
use crate::schemegeo::count::binomial;

/// Largest support (number of lattice cells) [`sets_to_chi`] will build.
pub const DEFAULT_SUPPORT_CAP: u64 = 20_000_000;

pub type Cell = Vec<i64>;

/// Connected lattice sets `A_p`, one per vertex, with levels `d(p)`.
///
/// Sets of equal level are disjoint, and disjoint sets are at Manhattan
/// distance at least `4(r - 1)`. Coordinates may be negative; the lift
/// translates them into the positive orthant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GridJson", into = "GridJson")]
pub struct GridSets {
    dim: usize,
    r: u32,
    levels: Vec<u32>,
    sets: Vec<BTreeSet<Cell>>,
}

#[derive(Serialize, Deserialize)]
struct GridJson {
    dim: usize,
    r: u32,
    levels: Vec<u32>,
    sets: Vec<Vec<Cell>>,
}

impl TryFrom<GridJson> for GridSets {
    type Error = Error;

    fn try_from(raw: GridJson) -> Result<Self> {
        GridSets::new(raw.dim, raw.r, raw.levels, raw.sets.into_iter().map(|s| s.into_iter().collect()).collect())
    }
}

impl From<GridSets> for GridJson {
    fn from(gs: GridSets) -> Self {
        GridJson {
            dim: gs.dim,
            r: gs.r,
            levels: gs.levels,
            sets: gs.sets.into_iter().map(|s| s.into_iter().collect()).collect(),
        }
    }
}

fn is_connected(set: &BTreeSet<Cell>) -> bool {
    let Some(first) = set.iter().next() else { return false };
    let mut seen: BTreeSet<&Cell> = BTreeSet::from([first]);
    let mut queue = VecDeque::from([first]);
    let mut n = first.clone();
    while let Some(c) = queue.pop_front() {
        n.copy_from_slice(c);
        for i in 0..c.len() {
            for step in [-1, 1] {
                n[i] += step;
                if let Some(m) = set.get(&n) {
                    if seen.insert(m) {
                        queue.push_back(m);
                    }
                }
                n[i] -= step;
            }
        }
    }
    seen.len() == set.len()
}

fn manhattan(a: &[i64], b: &[i64]) -> u64 {
    a.iter().zip(b).map(|(x, y)| x.abs_diff(*y)).sum()
}

fn bounding_box(set: &BTreeSet<Cell>, dim: usize) -> (Vec<i64>, Vec<i64>) {
    let mut lo = vec![i64::MAX; dim];
    let mut hi = vec![i64::MIN; dim];
    for c in set {
        for i in 0..dim {
            lo[i] = lo[i].min(c[i]);
            hi[i] = hi[i].max(c[i]);
        }
    }
    (lo, hi)
}

impl GridSets {
    /// `dim` is `d - 1`, the dimension the sets live in.
    pub fn new(dim: usize, r: u32, levels: Vec<u32>, sets: Vec<BTreeSet<Cell>>) -> Result<Self> {
        if dim == 0 {
            return invalid("grid sets need d - 1 >= 1");
        }
        if r < 2 {
            return invalid(format!("rank r = {r} is below 2"));
        }
        if levels.len() != sets.len() {
            return invalid(format!("{} levels for {} sets", levels.len(), sets.len()));
        }
        for (p, (&l, set)) in levels.iter().zip(&sets).enumerate() {
            if l == 0 || l >= r {
                return invalid(format!("set {p} has level {l} outside 1..{r}"));
            }
            if set.iter().any(|c| c.len() != dim) {
                return invalid(format!("set {p} has a cell with the wrong number of coordinates"));
            }
            if !is_connected(set) {
                return invalid(format!("set {p} is empty or disconnected"));
            }
        }
        let gs = GridSets { dim, r, levels, sets };
        let sep = u64::from(4 * (r - 1));
        let boxes: Vec<_> = gs.sets.iter().map(|s| bounding_box(s, dim)).collect();
        for p in 0..gs.sets.len() {
            for q in p + 1..gs.sets.len() {
                if gs.intersect(p, q) {
                    if gs.levels[p] == gs.levels[q] {
                        return invalid(format!("sets {p} and {q} share level {} and intersect", gs.levels[p]));
                    }
                    continue;
                }
                // boxes far apart cannot hold close cells
                let gap: u64 = (0..dim)
                    .map(|i| {
                        let (a, b) = (&boxes[p], &boxes[q]);
                        (a.0[i] - b.1[i]).max(b.0[i] - a.1[i]).max(0) as u64
                    })
                    .sum();
                if gap >= sep {
                    continue;
                }
                let close = gs.sets[p].iter().any(|a| gs.sets[q].iter().any(|b| manhattan(a, b) < sep));
                if close {
                    return invalid(format!("disjoint sets {p} and {q} are closer than {sep}"));
                }
            }
        }
        Ok(gs)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn levels(&self) -> &[u32] {
        &self.levels
    }

    pub fn sets(&self) -> &[BTreeSet<Cell>] {
        &self.sets
    }

    pub fn intersect(&self, p: usize, q: usize) -> bool {
        let (small, large) = if self.sets[p].len() <= self.sets[q].len() { (p, q) } else { (q, p) };
        self.sets[small].iter().any(|c| self.sets[large].contains(c))
    }

    /// The structure the sets represent: an edge for every intersecting pair.
    pub fn intended_structure(&self) -> Result<IncidenceStructure> {
        let n = self.sets.len();
        let edges: Vec<(VertexId, VertexId)> = (0..n)
            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
            .filter(|&(p, q)| self.intersect(p, q))
            .map(|(p, q)| (p as VertexId, q as VertexId))
            .collect();
        IncidenceStructure::from_levels(self.r - 1, self.levels.clone(), edges)
    }
}

/// The lifts `B_p ⊆ Z^d` of translated grid sets, on the two layers
/// `M + 2(d(p) - 1)` and `M + 2(d(p) - 1) + 1` of the coordinate sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftedSets {
    pub offset: u32,
    pub r: u32,
    pub levels: Vec<u32>,
    pub sets: Vec<BTreeSet<Point>>,
}

/// Translates the grid sets into the positive orthant and lifts them.
pub fn lift(gs: &GridSets) -> Result<LiftedSets> {
    let mut shift = vec![0i64; gs.dim];
    for c in gs.sets.iter().flatten() {
        for i in 0..gs.dim {
            shift[i] = shift[i].min(c[i]);
        }
    }
    let shifted = |c: &Cell| -> Result<Vec<u32>> {
        c.iter()
            .zip(&shift)
            .map(|(x, s)| u32::try_from(x - s).map_err(|_| Error::ResourceLimit("grid coordinates exceed u32".into())))
            .collect()
    };
    let mut max_sum = 0u64;
    for c in gs.sets.iter().flatten() {
        max_sum = max_sum.max(shifted(c)?.iter().map(|&x| u64::from(x)).sum());
    }
    let offset = u32::try_from(max_sum + 1).map_err(|_| Error::ResourceLimit("lift offset exceeds u32".into()))?;
    let mut sets = Vec::with_capacity(gs.sets.len());
    for (set, &level) in gs.sets.iter().zip(&gs.levels) {
        let mut b = BTreeSet::new();
        for c in set {
            let x = shifted(c)?;
            let sum: u32 = x.iter().sum();
            for extra in 0..2 {
                let mut p = x.clone();
                p.push(offset + 2 * (level - 1) + extra - sum);
                b.insert(p);
            }
        }
        sets.push(b);
    }
    Ok(LiftedSets { offset, r: gs.r, levels: gs.levels.clone(), sets })
}

impl LiftedSets {
    /// Upper end (exclusive) of the band holding the lifted sets.
    pub fn top(&self) -> u32 {
        self.offset + 2 * (self.r - 1)
    }

    /// Checks the five properties of the lift against the grid sets it came
    /// from, reporting the first failure.
    pub fn check(&self, gs: &GridSets) -> Result<()> {
        let fail = |msg: String| Err(Error::Invariant(msg));
        for (p, b) in self.sets.iter().enumerate() {
            let wide: BTreeSet<Cell> = b.iter().map(|c| c.iter().map(|&x| i64::from(x)).collect()).collect();
            if !is_connected(&wide) {
                return fail(format!("lifted set {p} is disconnected"));
            }
        }
        let mut owner: FxHashMap<&Point, usize> = FxHashMap::default();
        for (p, b) in self.sets.iter().enumerate() {
            for c in b {
                if let Some(q) = owner.insert(c, p) {
                    return fail(format!("lifted sets {q} and {p} share {c:?}"));
                }
            }
        }
        for (p, b) in self.sets.iter().enumerate() {
            for c in b {
                let s: u32 = c.iter().sum();
                if s < self.offset || s >= self.top() {
                    return fail(format!("lifted set {p} leaves the band at {c:?}"));
                }
            }
        }
        let n = self.sets.len();
        for p in 0..n {
            for q in p + 1..n {
                let (bp, bq) = (&self.sets[p], &self.sets[q]);
                if gs.intersect(p, q) {
                    let (lo, hi) = if self.levels[p] < self.levels[q] { (bp, bq) } else { (bq, bp) };
                    let witnessed = lo.iter().any(|a| hi.iter().any(|b| a.iter().zip(b).all(|(x, y)| x <= y)));
                    if !witnessed {
                        return fail(format!("edge ({p}, {q}) has no comparable lifted pair"));
                    }
                } else {
                    let low_join = bp
                        .iter()
                        .any(|a| bq.iter().any(|b| a.iter().zip(b).map(|(x, y)| x.max(y)).sum::<u32>() < self.top()));
                    if low_join {
                        return fail(format!("non-edge ({p}, {q}) has a common upper bound below the band top"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Builds `chi` from grid sets with the default support cap.
pub fn sets_to_chi(gs: &GridSets) -> Result<CharFn> {
    sets_to_chi_with_cap(gs, DEFAULT_SUPPORT_CAP).map(|(chi, _)| chi)
}

/// Lifts `gs`, checks the lift, and evaluates `chi = min_{b <= a} eta(b)`,
/// where `eta` is `r` below the band, `r - d(p)` on `B_p`, `r` elsewhere in
/// the band and 0 above it. Returns the lift alongside `chi`.
pub fn sets_to_chi_with_cap(gs: &GridSets, cap: u64) -> Result<(CharFn, LiftedSets)> {
    let lifted = lift(gs)?;
    lifted.check(gs)?;
    let d = gs.dim + 1;
    let r = gs.r;
    let (m, top) = (lifted.offset, lifted.top());
    // chi >= 1 on the whole simplex below the band top, so that is the support
    let support = binomial(top - 1 + d as u32, d as u32);
    if support > u128::from(cap) {
        return Err(Error::ResourceLimit(format!(
            "characteristic function would have more than {cap} cells (offset {m}, d = {d})"
        )));
    }
    let mut eta: FxHashMap<Vec<u32>, u32> = FxHashMap::default();
    for (b, &level) in lifted.sets.iter().zip(&lifted.levels) {
        for c in b {
            eta.insert(c.clone(), r - level);
        }
    }
    let size = support as usize;
    let mut coords: Vec<u32> = Vec::with_capacity(size * d);
    let mut values: Vec<u32> = Vec::with_capacity(size);
    let mut band: FxHashMap<Vec<u32>, u32> = FxHashMap::default();
    let mut a = vec![0u32; d];
    let mut q = vec![0u32; d];
    // lexicographic odometer over {a : sum(a) < top}; predecessors come first
    let mut sum = 0u32;
    loop {
        let v = if sum < m {
            r
        } else {
            let mut v = eta.get(&a).copied().unwrap_or(r);
            q.copy_from_slice(&a);
            for i in 0..d {
                if q[i] == 0 {
                    continue;
                }
                q[i] -= 1;
                let below = if sum - 1 < m { r } else { band[&q] };
                q[i] += 1;
                v = v.min(below);
            }
            band.insert(a.clone(), v);
            v
        };
        coords.extend_from_slice(&a);
        values.push(v);
        // advance: bump the last coordinate, carrying leftwards
        let mut i = d;
        loop {
            if i == 0 {
                let chi = CharFn::from_sorted_flat(d, coords, values);
                if !chi.validate(r) {
                    return Err(Error::Invariant("lifted function is not a characteristic function".into()));
                }
                return Ok((chi, lifted));
            }
            i -= 1;
            if sum + 1 < top {
                a[i] += 1;
                sum += 1;
                break;
            }
            sum -= a[i];
            a[i] = 0;
        }
    }
}
