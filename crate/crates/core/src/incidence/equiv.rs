//! Equivalence of incidence structures: isomorphism of transitive closures
//! under part-preserving bijections.

use std::collections::BTreeMap;

use super::{transitive_closure, IncidenceStructure};
use crate::error::{Error, Result};

/// Default cap on the number of vertices in any single part.
pub const DEFAULT_EQUIVALENCE_CAP: usize = 12;

/// Whether some part-preserving bijection identifies the transitive closures.
pub fn equivalent(a: &IncidenceStructure, b: &IncidenceStructure) -> Result<bool> {
    equivalent_with_cap(a, b, DEFAULT_EQUIVALENCE_CAP)
}

pub fn equivalent_with_cap(a: &IncidenceStructure, b: &IncidenceStructure, cap: usize) -> Result<bool> {
    if a.rank() != b.rank() || a.part_sizes() != b.part_sizes() {
        return Ok(false);
    }
    if let Some(size) = a.part_sizes().into_iter().find(|&s| s > cap) {
        return Err(Error::ResourceLimit(format!(
            "equivalence check supports at most {cap} vertices per part, got {size}"
        )));
    }
    let (ca, cb) = (transitive_closure(a), transitive_closure(b));
    if ca.len() != cb.len() {
        return Ok(false);
    }
    let n = a.num_vertices();
    let matrix = |closure: &std::collections::BTreeSet<(u32, u32)>| {
        let mut m = vec![vec![false; n]; n];
        for &(u, v) in closure {
            m[u as usize][v as usize] = true;
        }
        m
    };
    let (ma, mb) = (matrix(&ca), matrix(&cb));
    let (cola, colb) = refine(a.levels(), &ma, b.levels(), &mb);
    let histogram = |c: &[usize]| {
        let mut h = BTreeMap::new();
        for &x in c {
            *h.entry(x).or_insert(0usize) += 1;
        }
        h
    };
    let (ha, hb) = (histogram(&cola), histogram(&colb));
    if ha != hb {
        return Ok(false);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (ha[&cola[v]], v));
    let mut matcher =
        Matcher { ma: &ma, mb: &mb, cola: &cola, colb: &colb, order, image: vec![usize::MAX; n], used: vec![false; n] };
    Ok(matcher.extend(0))
}

/// Joint colour refinement of both relations so that colours are comparable
/// across the two structures.
fn refine(la: &[u32], ma: &[Vec<bool>], lb: &[u32], mb: &[Vec<bool>]) -> (Vec<usize>, Vec<usize>) {
    let mut ca: Vec<usize> = la.iter().map(|&l| l as usize).collect();
    let mut cb: Vec<usize> = lb.iter().map(|&l| l as usize).collect();
    let mut classes = count_classes(&ca, &cb);
    loop {
        let sig = |c: &[usize], m: &[Vec<bool>], v: usize| {
            let mut out: Vec<usize> = Vec::new();
            let mut inn: Vec<usize> = Vec::new();
            for w in 0..c.len() {
                if m[v][w] {
                    out.push(c[w]);
                }
                if m[w][v] {
                    inn.push(c[w]);
                }
            }
            out.sort_unstable();
            inn.sort_unstable();
            (c[v], out, inn)
        };
        let sa: Vec<_> = (0..ca.len()).map(|v| sig(&ca, ma, v)).collect();
        let sb: Vec<_> = (0..cb.len()).map(|v| sig(&cb, mb, v)).collect();
        let palette: BTreeMap<_, usize> = sa
            .iter()
            .chain(sb.iter())
            .cloned()
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        ca = sa.iter().map(|s| palette[s]).collect();
        cb = sb.iter().map(|s| palette[s]).collect();
        let next = count_classes(&ca, &cb);
        if next == classes {
            return (ca, cb);
        }
        classes = next;
    }
}

fn count_classes(a: &[usize], b: &[usize]) -> usize {
    a.iter().chain(b).collect::<std::collections::BTreeSet<_>>().len()
}

struct Matcher<'a> {
    ma: &'a [Vec<bool>],
    mb: &'a [Vec<bool>],
    cola: &'a [usize],
    colb: &'a [usize],
    order: Vec<usize>,
    image: Vec<usize>,
    used: Vec<bool>,
}

impl Matcher<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let v = self.order[depth];
        for w in 0..self.colb.len() {
            if self.used[w] || self.colb[w] != self.cola[v] {
                continue;
            }
            let consistent = self.order[..depth].iter().all(|&u| {
                let x = self.image[u];
                self.ma[v][u] == self.mb[w][x] && self.ma[u][v] == self.mb[x][w]
            });
            if !consistent {
                continue;
            }
            self.image[v] = w;
            self.used[w] = true;
            if self.extend(depth + 1) {
                return true;
            }
            self.used[w] = false;
        }
        self.image[v] = usize::MAX;
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::incidence::{build_s_chi, closed};

    #[test]
    fn closure_edge_does_not_matter() {
        let s = IncidenceStructure::new(3, vec![vec![0], vec![1], vec![2]], [(0, 1), (1, 2)]).unwrap();
        assert!(equivalent(&s, &closed(&s)).unwrap());
    }

    #[test]
    fn k22_versus_path() {
        let k22 = IncidenceStructure::new(2, vec![vec![0, 1], vec![2, 3]], [(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let path = IncidenceStructure::new(2, vec![vec![0, 1], vec![2, 3]], [(0, 2), (1, 2), (1, 3)]).unwrap();
        assert!(!equivalent(&k22, &path).unwrap());
    }

    #[test]
    fn relabelled_planar3() {
        let s = build_s_chi(&fixtures::planar3_chi(), 3).unwrap().structure;
        let swap = |v: u32| match v {
            0 => 1,
            1 => 0,
            x => x,
        };
        let t = s.with_edges(s.edges().iter().map(|&(u, v)| (swap(u), swap(v)))).unwrap();
        assert_ne!(s, t);
        assert!(equivalent(&s, &t).unwrap());
    }

    #[test]
    fn same_graph_different_parts() {
        let a = IncidenceStructure::new(3, vec![vec![0], vec![1], vec![]], [(0, 1)]).unwrap();
        let b = IncidenceStructure::new(3, vec![vec![0], vec![], vec![1]], [(0, 1)]).unwrap();
        assert!(!equivalent(&a, &b).unwrap());
    }

    #[test]
    fn regular_graphs_need_search() {
        // 2-regular graphs are invisible to colour refinement
        let c6 = [(0, 3), (0, 4), (1, 4), (1, 5), (2, 5), (2, 3)];
        let a = IncidenceStructure::new(2, vec![vec![0, 1, 2], vec![3, 4, 5]], c6).unwrap();
        let b = IncidenceStructure::new(
            2,
            vec![vec![0, 1, 2], vec![3, 4, 5]],
            [(0, 3), (0, 5), (1, 3), (1, 4), (2, 4), (2, 5)],
        )
        .unwrap();
        assert!(equivalent(&a, &b).unwrap());
        let c = IncidenceStructure::new(
            2,
            vec![vec![0, 1, 2, 3], vec![4, 5, 6, 7]],
            [(0, 4), (0, 5), (1, 4), (1, 5), (2, 6), (2, 7), (3, 6), (3, 7)],
        )
        .unwrap();
        let d = IncidenceStructure::new(
            2,
            vec![vec![0, 1, 2, 3], vec![4, 5, 6, 7]],
            [(0, 4), (0, 5), (1, 5), (1, 6), (2, 6), (2, 7), (3, 7), (3, 4)],
        )
        .unwrap();
        assert!(!equivalent(&c, &d).unwrap());
    }

    #[test]
    fn cap_is_enforced() {
        let s = IncidenceStructure::from_levels(1, vec![1; 13], []).unwrap();
        assert!(matches!(equivalent(&s, &s), Err(Error::ResourceLimit(_))));
        assert!(equivalent_with_cap(&s, &s, 13).unwrap());
    }
}
