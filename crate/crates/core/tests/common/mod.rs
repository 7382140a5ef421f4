//! Brute-force oracles and generators shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeSet;

use proptest::prelude::*;
use quotlocus::charfn::NestedIdeals;
use quotlocus::incidence::{IncidenceStructure, VertexId};
use quotlocus::CharFn;

pub type Ideal = BTreeSet<Vec<u32>>;

/// Order ideals of `N^d` of size exactly `n`, built as chains of
/// `(d-1)`-dimensional ideals `I_0 ⊇ I_1 ⊇ ...` stacked along the last axis.
pub fn ideals(d: usize, n: usize) -> Vec<Ideal> {
    if n == 0 {
        return vec![BTreeSet::new()];
    }
    if d == 1 {
        return vec![(0..n as u32).map(|i| vec![i]).collect()];
    }
    let slices: Vec<Vec<Ideal>> = (0..=n).map(|k| ideals(d - 1, k)).collect();
    let mut out = Vec::new();
    stack(&slices, None, n, 0, &mut BTreeSet::new(), &mut out);
    out
}

fn stack(
    slices: &[Vec<Ideal>],
    above: Option<&Ideal>,
    left: usize,
    height: u32,
    acc: &mut Ideal,
    out: &mut Vec<Ideal>,
) {
    if left == 0 {
        out.push(acc.clone());
        return;
    }
    let cap = above.map_or(left, |a| a.len().min(left));
    for k in 1..=cap {
        for slice in &slices[k] {
            if above.is_some_and(|a| !slice.is_subset(a)) {
                continue;
            }
            let added: Vec<Vec<u32>> = slice
                .iter()
                .map(|p| {
                    let mut q = p.clone();
                    q.push(height);
                    q
                })
                .collect();
            acc.extend(added.iter().cloned());
            stack(slices, Some(slice), left - k, height + 1, acc, out);
            for q in &added {
                acc.remove(q);
            }
        }
    }
}

/// Downward closure of a finite set of points.
pub fn down_closure(points: &[Vec<u32>]) -> Ideal {
    let mut out = BTreeSet::new();
    for p in points {
        let mut cur = vec![0u32; p.len()];
        loop {
            out.insert(cur.clone());
            let mut i = 0;
            while i < p.len() && cur[i] == p[i] {
                cur[i] = 0;
                i += 1;
            }
            if i == p.len() {
                break;
            }
            cur[i] += 1;
        }
    }
    out
}

/// Coordinate subspaces per vertex (bitmasks of size `level`) respecting
/// containment along every edge, counted by exhaustive search.
pub fn brute_fixed_points(s: &IncidenceStructure, r: u32) -> u128 {
    let n = s.num_vertices();
    let masks: Vec<Vec<u32>> =
        (0..n).map(|v| (0u32..1 << r).filter(|m| m.count_ones() == s.level(v as VertexId)).collect()).collect();
    let mut choice = vec![0u32; n];
    fn go(v: usize, s: &IncidenceStructure, masks: &[Vec<u32>], choice: &mut Vec<u32>) -> u128 {
        if v == masks.len() {
            let ok = s.edges().iter().all(|&(a, b)| choice[a as usize] & !choice[b as usize] == 0);
            return u128::from(ok);
        }
        let mut total = 0;
        for &m in &masks[v] {
            choice[v] = m;
            total += go(v + 1, s, masks, choice);
        }
        total
    }
    go(0, s, &masks, &mut choice)
}

/// Disjoint union of two structures of the same rank.
pub fn disjoint_union(a: &IncidenceStructure, b: &IncidenceStructure) -> IncidenceStructure {
    let shift = a.num_vertices() as VertexId;
    let levels = a.levels().iter().chain(b.levels()).copied().collect();
    let edges = a.edges().iter().copied().chain(b.edges().iter().map(|&(u, v)| (u + shift, v + shift)));
    IncidenceStructure::from_levels(a.rank(), levels, edges).expect("union of valid structures")
}

/// Random structure of rank `rank` with at most `max_n` vertices.
pub fn structure(rank: u32, max_n: usize) -> impl Strategy<Value = IncidenceStructure> {
    prop::collection::vec(1..=rank, 0..=max_n)
        .prop_flat_map(|levels| {
            let n = levels.len();
            (Just(levels), prop::collection::vec(any::<bool>(), n * n))
        })
        .prop_map(move |(levels, bits)| {
            let n = levels.len();
            let edges: Vec<(VertexId, VertexId)> = (0..n)
                .flat_map(|u| (0..n).map(move |v| (u, v)))
                .filter(|&(u, v)| levels[u] < levels[v] && bits[u * n + v])
                .map(|(u, v)| (u as VertexId, v as VertexId))
                .collect();
            IncidenceStructure::from_levels(rank, levels, edges).expect("levels in range")
        })
}

/// Random valid characteristic function of rank `r`: seeds for each ideal,
/// closed downward and made nested from the top.
pub fn charfn(r: u32, d: usize, coord_max: u32, max_seeds: usize) -> impl Strategy<Value = CharFn> {
    let point = prop::collection::vec(0..=coord_max, d);
    prop::collection::vec(prop::collection::vec(point, 0..=max_seeds), r as usize).prop_map(move |seeds| {
        let mut ideals: Vec<Ideal> = Vec::with_capacity(seeds.len());
        let mut acc: Vec<Vec<u32>> = Vec::new();
        for s in seeds.iter().rev() {
            acc.extend(s.iter().cloned());
            ideals.push(down_closure(&acc));
        }
        ideals.reverse();
        CharFn::from_nested(&NestedIdeals::new(d, ideals).expect("nested by construction"))
    })
}
