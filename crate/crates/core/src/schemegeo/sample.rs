//! Seeded samplers of `F_p`-points of incidence schemes.

use rand::Rng;

use super::config::SubspaceConfig;
use super::dimension::peeling_steps;
use super::field::{Field, PrimeField};
use super::matrix::ExactMatrix;
use crate::error::{Error, Result};
use crate::incidence::{IncidenceStructure, IntervalRep};

type Mat = ExactMatrix<PrimeField>;

fn random_row<R: Rng>(f: &PrimeField, cols: usize, rng: &mut R) -> Vec<u64> {
    (0..cols).map(|_| rng.gen_range(0..f.p())).collect()
}

/// A random `dim`-dimensional subspace `L ⊆ E ⊆ U`, where `U` is given by a
/// basis. Returns `None` when the dimensions make this impossible.
fn random_between<R: Rng>(f: &PrimeField, lower: &Mat, upper: &Mat, dim: usize, rng: &mut R) -> Option<Mat> {
    let lower = lower.rref().0;
    if lower.rows() > dim || upper.rank() < dim || !lower.row_space_within(upper) {
        return None;
    }
    let mut acc = lower;
    while acc.rows() < dim {
        let coeffs = random_row(f, upper.rows(), rng);
        let mut v = vec![0u64; upper.cols()];
        for (k, c) in coeffs.iter().enumerate() {
            for (j, x) in v.iter_mut().enumerate() {
                *x = f.add(x, &f.mul(c, upper.get(k, j)));
            }
        }
        let mut next = acc.clone();
        next.push_row(&v);
        if next.rank() > acc.rows() {
            acc = next.rref().0;
        }
    }
    Some(acc)
}

fn intersection(f: &PrimeField, spaces: &[&Mat], r: usize) -> Mat {
    let mut ann = ExactMatrix::zeros(f, 0, r);
    for s in spaces {
        ann = ann.stack(&s.null_space());
    }
    ann.null_space()
}

fn finish(s: &IncidenceStructure, spaces: Vec<Option<Mat>>) -> Result<SubspaceConfig<PrimeField>> {
    let spaces = spaces
        .into_iter()
        .map(|m| m.ok_or_else(|| Error::Invariant("sampler left a vertex unassigned".into())))
        .collect::<Result<Vec<_>>>()?;
    SubspaceConfig::new(s.clone(), spaces)
}

/// All vertices of level `i` share the `i`-th space of one random complete
/// flag: the most degenerate configuration.
pub fn full_flag_config<R: Rng>(
    s: &IncidenceStructure,
    f: &PrimeField,
    rng: &mut R,
) -> Result<SubspaceConfig<PrimeField>> {
    let r = s.rank() as usize + 1;
    let mut g = ExactMatrix::zeros(f, 0, r);
    while g.rows() < r {
        let mut next = g.clone();
        next.push_row(&random_row(f, r, rng));
        if next.rank() == next.rows() {
            g = next;
        }
    }
    let spaces = (0..s.num_vertices())
        .map(|v| {
            let d = s.level(v as u32) as usize;
            let rows = (0..d).map(|i| g.row(i).to_vec()).collect();
            Some(ExactMatrix::from_rows(f, r, rows).expect("rows have r entries"))
        })
        .collect();
    finish(s, spaces)
}

/// Reverses the peeling fibration of an interval structure: each vertex is
/// placed uniformly between the spaces of its peeling witnesses, which are
/// already placed. Every configuration is reachable this way.
pub fn peeling_config<R: Rng>(
    s: &IncidenceStructure,
    rep: &IntervalRep,
    f: &PrimeField,
    rng: &mut R,
) -> Result<SubspaceConfig<PrimeField>> {
    let r = s.rank() as usize + 1;
    let steps = peeling_steps(s, rep, r as u32)?;
    let mut spaces: Vec<Option<Mat>> = vec![None; s.num_vertices()];
    let full = ExactMatrix::identity(f, r);
    for st in steps.iter().rev() {
        let lower = match st.below {
            Some(b) => spaces[b as usize].clone().expect("peeling witness placed earlier"),
            None => ExactMatrix::zeros(f, 0, r),
        };
        let upper = match st.above {
            Some(a) => spaces[a as usize].clone().expect("peeling witness placed earlier"),
            None => full.clone(),
        };
        let e = random_between(f, &lower, &upper, st.d2 as usize, rng)
            .ok_or_else(|| Error::Invariant("peeling fibre is empty".into()))?;
        spaces[st.vertex as usize] = Some(e);
    }
    finish(s, spaces)
}

/// Places vertices by increasing level, each a random space containing its
/// lower neighbours. Fails when the lower neighbours span too much.
pub fn bottom_up_config<R: Rng>(
    s: &IncidenceStructure,
    f: &PrimeField,
    rng: &mut R,
) -> Option<SubspaceConfig<PrimeField>> {
    let r = s.rank() as usize + 1;
    let n = s.num_vertices();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (s.levels()[v], v));
    let mut lower = vec![Vec::new(); n];
    for &(u, v) in s.edges() {
        lower[v as usize].push(u as usize);
    }
    let full = ExactMatrix::identity(f, r);
    let mut spaces: Vec<Option<Mat>> = vec![None; n];
    for v in order {
        let mut base = ExactMatrix::zeros(f, 0, r);
        for &u in &lower[v] {
            base = base.stack(spaces[u].as_ref()?);
        }
        spaces[v] = Some(random_between(f, &base, &full, s.level(v as u32) as usize, rng)?);
    }
    finish(s, spaces).ok()
}

/// Places vertices by decreasing level, each a random subspace of the
/// intersection of its upper neighbours. Fails when that intersection is
/// too small.
pub fn top_down_config<R: Rng>(
    s: &IncidenceStructure,
    f: &PrimeField,
    rng: &mut R,
) -> Option<SubspaceConfig<PrimeField>> {
    let r = s.rank() as usize + 1;
    let n = s.num_vertices();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(s.levels()[v]), v));
    let mut upper = vec![Vec::new(); n];
    for &(u, v) in s.edges() {
        upper[u as usize].push(v as usize);
    }
    let empty = ExactMatrix::zeros(f, 0, r);
    let mut spaces: Vec<Option<Mat>> = vec![None; n];
    for v in order {
        let above: Vec<&Mat> = upper[v].iter().map(|&w| spaces[w].as_ref()).collect::<Option<_>>()?;
        let room = intersection(f, &above, r);
        spaces[v] = Some(random_between(f, &empty, &room, s.level(v as u32) as usize, rng)?);
    }
    finish(s, spaces).ok()
}
