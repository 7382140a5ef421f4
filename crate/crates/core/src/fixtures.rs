//! Ready-made characteristic functions and graphs used throughout the tests,
//! benches and the command-line tool.

use crate::charfn::CharFn;
use crate::incidence::IncidenceStructure;

fn chi(dim: usize, entries: &[(&[u32], u32)]) -> CharFn {
    CharFn::from_entries(dim, entries.iter().map(|(p, v)| (p.to_vec(), *v))).expect("fixture entries are well formed")
}

/// The rank-3 planar example of weight 11: three fibres at the origin, a
/// row of twos, and two cells of value one.
pub fn planar3_chi() -> CharFn {
    chi(2, &[(&[0, 0], 3), (&[1, 0], 2), (&[2, 0], 2), (&[0, 1], 2), (&[1, 1], 1), (&[0, 2], 1)])
}

/// The rank-4 planar example whose structure is 3-partite with part sizes
/// 3, 2, 2.
pub fn planar4_chi() -> CharFn {
    let rows: [&[u32]; 5] = [&[4, 4, 4, 4, 3], &[4, 4, 3, 2, 1], &[4, 3, 2, 2, 1], &[3, 3, 2], &[2, 1, 1]];
    let entries = rows
        .iter()
        .enumerate()
        .flat_map(|(y, row)| row.iter().enumerate().map(move |(x, &v)| (vec![x as u32, y as u32], v)));
    CharFn::from_entries(2, entries).expect("fixture entries are well formed")
}

/// The three-dimensional function of rank 3 and weight 11 whose structure is
/// `K_{2,2}`: two points and two lines with every point on every line.
pub fn dim3sing_chi() -> CharFn {
    dim3sing_chi_rank(3)
}

/// The same shape for rank `r >= 3`: value `r` at the origin, weight `8 + r`.
pub fn dim3sing_chi_rank(r: u32) -> CharFn {
    assert!(r >= 3, "the singular example needs r >= 3");
    chi(
        3,
        &[
            (&[0, 0, 0], r),
            (&[1, 0, 0], 2),
            (&[0, 1, 0], 2),
            (&[1, 1, 0], 1),
            (&[0, 0, 1], 1),
            (&[1, 0, 1], 1),
            (&[0, 1, 1], 1),
        ],
    )
}

/// Complete bipartite structure on parts of sizes `a` and `b` (rank 2).
pub fn complete_bipartite(a: u32, b: u32) -> IncidenceStructure {
    let parts = vec![(0..a).collect(), (a..a + b).collect()];
    let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)));
    IncidenceStructure::new(2, parts, edges).expect("complete bipartite is well formed")
}

pub fn k22() -> IncidenceStructure {
    complete_bipartite(2, 2)
}

/// `K_{3,3}`: a string graph that is not planar.
pub fn k33() -> IncidenceStructure {
    complete_bipartite(3, 3)
}

/// `K_5` with every edge subdivided once: the five branch vertices form
/// `P_1`, the ten subdivision vertices `P_2`. Not a string graph.
pub fn subdivided_k5() -> IncidenceStructure {
    let mut edges = Vec::new();
    let mut mid = 5u32;
    for i in 0..5u32 {
        for j in i + 1..5 {
            edges.push((i, mid));
            edges.push((j, mid));
            mid += 1;
        }
    }
    IncidenceStructure::new(2, vec![(0..5).collect(), (5..15).collect()], edges).expect("subdivided K5 is well formed")
}
