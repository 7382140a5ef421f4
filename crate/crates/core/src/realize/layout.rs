//! Characteristic functions realizing a given partite graph or interval
//! structure, via grid sets.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::geometry::{ceil_sqrt, dyadic_exponent, segment_cells, segment_distance2};
use super::grid::{sets_to_chi_with_cap, Cell, GridSets, LiftedSets, DEFAULT_SUPPORT_CAP};
use crate::charfn::CharFn;
use crate::error::{invalid, Error, Result};
use crate::incidence::IncidenceStructure;
use crate::schemegeo::count::binomial;

/// How [`graph_to_grid_sets`] draws the graph in `Z^3`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Layout {
    /// Vertical columns on an anti-diagonal, joined by axis-parallel paths in
    /// one horizontal plane per vertex-cover vertex. Compact.
    #[default]
    Orthogonal,
    /// Points on the moment curve `t -> (t, t^2, t^3)`, `t = 1..=n`, each
    /// joined by straight half-segments to the midpoints with its
    /// neighbours, then rasterized with a dyadic cell size. Exact but the
    /// grid grows quickly with the number of vertices.
    MomentCurve,
}

/// Realizes the incidence structure `g` (read as a partite graph, rank
/// `r - 1`) as a characteristic function on `N^d`, `d >= 4`.
pub fn graph_to_chi(g: &IncidenceStructure, d: usize, layout: Layout) -> Result<CharFn> {
    graph_to_chi_with_cap(g, d, layout, DEFAULT_SUPPORT_CAP).map(|(chi, _)| chi)
}

/// [`graph_to_chi`] returning the lift as well, with a cap on the support.
pub fn graph_to_chi_with_cap(
    g: &IncidenceStructure,
    d: usize,
    layout: Layout,
    cap: u64,
) -> Result<(CharFn, LiftedSets)> {
    let gs = graph_to_grid_sets(g, d, layout, cap)?;
    sets_to_chi_with_cap(&gs, cap)
}

/// Grid sets in `Z^{d-1}` whose intersection pattern is exactly the edge
/// set of `g`. Only the first three coordinates are used.
pub fn graph_to_grid_sets(g: &IncidenceStructure, d: usize, layout: Layout, cap: u64) -> Result<GridSets> {
    if d < 4 {
        return invalid(format!("graph realization needs d >= 4, got {d}"));
    }
    let r = g.rank() + 1;
    let cells = match layout {
        Layout::Orthogonal => orthogonal(g, r),
        Layout::MomentCurve => moment_curve(g, r, d, cap)?,
    };
    let padded = cells
        .into_iter()
        .map(|set| {
            set.into_iter()
                .map(|mut c| {
                    c.resize(d - 1, 0);
                    c
                })
                .collect()
        })
        .collect();
    GridSets::new(d - 1, r, g.levels().to_vec(), padded)
}

/// Smallest set of vertices touching every edge; exact for small graphs.
fn vertex_cover(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    if n <= 20 {
        let mut best: Option<u32> = None;
        for mask in 0u32..(1 << n) {
            if best.is_some_and(|b| mask.count_ones() >= b.count_ones()) {
                continue;
            }
            if edges.iter().all(|&(u, v)| mask >> u & 1 == 1 || mask >> v & 1 == 1) {
                best = Some(mask);
            }
        }
        let best = best.unwrap_or(0);
        return (0..n).filter(|&v| best >> v & 1 == 1).collect();
    }
    let mut left: Vec<(usize, usize)> = edges.to_vec();
    let mut cover = Vec::new();
    while !left.is_empty() {
        let mut deg = vec![0usize; n];
        for &(u, v) in &left {
            deg[u] += 1;
            deg[v] += 1;
        }
        let v = (0..n).max_by_key(|&v| (deg[v], std::cmp::Reverse(v))).expect("edges remain");
        cover.push(v);
        left.retain(|&(a, b)| a != v && b != v);
    }
    cover.sort_unstable();
    cover
}

/// Vertex `i` is the column `(i s, (n - 1 - i) s) x [0, (c - 1) s]` with
/// `s = 4(r - 1)`, `c` the size of a vertex cover. The `k`-th cover vertex
/// reaches each neighbour in the plane `z = k s` by an L-shaped path through
/// the corner `(min x, min y)`. Every path passes other columns at distance
/// at least `s`, and paths in different planes are `s` apart.
fn orthogonal(g: &IncidenceStructure, r: u32) -> Vec<BTreeSet<Cell>> {
    let n = g.num_vertices();
    let s = i64::from(4 * (r - 1));
    let edges: Vec<(usize, usize)> = g.edges().iter().map(|&(u, v)| (u as usize, v as usize)).collect();
    let cover = vertex_cover(n, &edges);
    let height = (cover.len().max(1) as i64 - 1) * s;
    let pos = |i: usize| (i as i64 * s, (n - 1 - i) as i64 * s);
    let mut sets: Vec<BTreeSet<Cell>> = (0..n)
        .map(|i| {
            let (x, y) = pos(i);
            (0..=height).map(|z| vec![x, y, z]).collect()
        })
        .collect();
    let mut owned = vec![false; edges.len()];
    for (k, &u) in cover.iter().enumerate() {
        let z = k as i64 * s;
        for (e, &(a, b)) in edges.iter().enumerate() {
            if owned[e] || (a != u && b != u) {
                continue;
            }
            owned[e] = true;
            let w = if a == u { b } else { a };
            let ((xu, yu), (xw, yw)) = (pos(u), pos(w));
            let (cx, cy) = (xu.min(xw), yu.min(yw));
            let set = &mut sets[u];
            // u -> corner -> w, each leg parallel to an axis
            for (from, to) in [((xu, yu), (cx, cy)), ((cx, cy), (xw, yw))] {
                for x in from.0.min(to.0)..=from.0.max(to.0) {
                    for y in from.1.min(to.1)..=from.1.max(to.1) {
                        set.insert(vec![x, y, z]);
                    }
                }
            }
        }
    }
    sets
}

fn moment_curve(g: &IncidenceStructure, r: u32, d: usize, cap: u64) -> Result<Vec<BTreeSet<Cell>>> {
    let n = g.num_vertices();
    // doubled coordinates keep midpoints integral
    let point = |i: usize| -> Vec<i64> {
        let t = i as i64 + 1;
        vec![2 * t, 2 * t * t, 2 * t * t * t]
    };
    let mid = |i: usize, j: usize| -> Vec<i64> { point(i).iter().zip(point(j)).map(|(a, b)| (a + b) / 2).collect() };
    let mut segments: Vec<Vec<(Vec<i64>, Vec<i64>)>> = (0..n).map(|i| vec![(point(i), point(i))]).collect();
    for &(u, v) in g.edges() {
        let (u, v) = (u as usize, v as usize);
        segments[u].push((point(u), mid(u, v)));
        segments[v].push((point(v), mid(u, v)));
    }
    let mut min_dist2: Option<BigRational> = None;
    for u in 0..n {
        for v in u + 1..n {
            if g.has_edge(u as u32, v as u32) {
                continue;
            }
            for (a, b) in &segments[u] {
                for (c, e) in &segments[v] {
                    let d2 = segment_distance2(a, b, c, e);
                    if min_dist2.as_ref().is_none_or(|m| d2 < *m) {
                        min_dist2 = Some(d2);
                    }
                }
            }
        }
    }
    let sep = u64::from(4 * (r - 1)) + ceil_sqrt(d as u64);
    let k = match min_dist2 {
        // doubled coordinates: the true squared distance is a quarter
        Some(d2) => {
            let d2 = d2 / BigRational::from_integer(BigInt::from(4));
            dyadic_exponent(&d2, sep).ok_or_else(|| Error::Invariant("non-adjacent vertex sets meet".into()))?
        }
        None => 0,
    };
    // cell size 2^-k: scale doubled coordinates by 2^k, cells become [2c, 2c + 2]
    let scale = 1i64.checked_shl(k).filter(|&s| s < 1 << 40).ok_or_else(|| grid_too_large(k))?;
    let max_sum: i64 = (0..3).map(|j| point(n.saturating_sub(1))[j] * scale / 2 + 1).sum();
    let top = u32::try_from(max_sum + 1 + 2 * (i64::from(r) - 1)).map_err(|_| grid_too_large(k))?;
    if binomial(top - 1 + d as u32, d as u32) > u128::from(cap) {
        return Err(Error::ResourceLimit(format!(
            "moment-curve grid with cell size 2^-{k} exceeds the support cap {cap}"
        )));
    }
    Ok(segments
        .iter()
        .map(|segs| {
            segs.iter()
                .flat_map(|(a, b)| {
                    let a: Vec<i64> = a.iter().map(|x| x * scale).collect();
                    let b: Vec<i64> = b.iter().map(|x| x * scale).collect();
                    segment_cells(&a, &b)
                })
                .collect()
        })
        .collect())
}

fn grid_too_large(k: u32) -> Error {
    Error::ResourceLimit(format!("grid with cell size 2^-{k} is too large"))
}

/// Realizes closed rational intervals with the given levels as a
/// characteristic function on `N^2` of rank `r`.
pub fn intervals_to_chi(intervals: &[(BigRational, BigRational)], levels: &[u32], r: u32) -> Result<CharFn> {
    let gs = intervals_to_grid_sets(intervals, levels, r)?;
    sets_to_chi_with_cap(&gs, DEFAULT_SUPPORT_CAP).map(|(chi, _)| chi)
}

/// One-dimensional grid sets: the cells of size `2^-k` meeting each
/// interval, with `k` chosen so that disjoint intervals end up at least
/// `4(r - 1)` cells apart.
pub fn intervals_to_grid_sets(intervals: &[(BigRational, BigRational)], levels: &[u32], r: u32) -> Result<GridSets> {
    if intervals.len() != levels.len() {
        return invalid(format!("{} intervals for {} levels", intervals.len(), levels.len()));
    }
    if r < 2 {
        return invalid(format!("rank r = {r} is below 2"));
    }
    if let Some(i) = intervals.iter().position(|(a, b)| a > b) {
        return invalid(format!("interval {i} is empty"));
    }
    let n = intervals.len();
    let mut gap: Option<BigRational> = None;
    for p in 0..n {
        for q in p + 1..n {
            let (a, b) = (&intervals[p], &intervals[q]);
            let g = (&a.0 - &b.1).max(&b.0 - &a.1);
            if !g.is_positive() {
                if levels[p] == levels[q] {
                    return invalid(format!("intervals {p} and {q} share level {} and overlap", levels[p]));
                }
                continue;
            }
            if gap.as_ref().is_none_or(|m| g < *m) {
                gap = Some(g);
            }
        }
    }
    let sep = u64::from(4 * (r - 1)) + ceil_sqrt(2);
    let k = match &gap {
        Some(g) => dyadic_exponent(&(g * g), sep).expect("gap is positive"),
        None => 0,
    };
    let scale = BigRational::from_integer(BigInt::from(2).pow(k));
    let origin = intervals.iter().map(|(a, _)| a.clone()).min().unwrap_or_else(BigRational::zero);
    let span = intervals.iter().map(|(_, b)| (b - &origin) * &scale).max().unwrap_or_else(BigRational::zero);
    if span.to_integer() > BigInt::from(DEFAULT_SUPPORT_CAP) {
        return Err(Error::ResourceLimit(format!("interval grid with cell size 2^-{k} is too large")));
    }
    let sets = intervals
        .iter()
        .map(|(a, b)| {
            let lo: BigInt = ((a - &origin) * &scale).ceil().to_integer() - 1;
            let hi = ((b - &origin) * &scale).floor().to_integer();
            let (lo, hi) = (lo.to_i64().expect("checked span"), hi.to_i64().expect("checked span"));
            (lo..=hi).map(|c| vec![c]).collect()
        })
        .collect();
    GridSets::new(1, r, levels.to_vec(), sets)
}
