//! Zariski tangent spaces of incidence schemes at explicit configurations.
//!
//! A tangent vector is a tuple `phi_v in Hom(E_v, k^r / E_v)`. With `E_v` in
//! reduced row echelon form, `k^r / E_v` is identified with the span of the
//! non-pivot unit vectors, so `phi_v` is a `d(v) x (r - d(v))` matrix. An
//! incidence `E_u ⊆ E_v` linearizes to `phi_u(x) ≡ phi_v(x) (mod E_v)` for
//! every `x in E_u`.

use std::collections::BTreeSet;

use super::config::SubspaceConfig;
use super::field::Field;
use super::matrix::ExactMatrix;
use crate::incidence::VertexId;

struct Layout {
    pivots: Vec<Vec<usize>>,
    complement: Vec<Vec<usize>>,
    offset: Vec<usize>,
    total: usize,
}

fn layout<F: Field>(config: &SubspaceConfig<F>) -> Layout {
    let r = config.ambient();
    let mut pivots = Vec::new();
    let mut complement = Vec::new();
    let mut offset = Vec::new();
    let mut total = 0;
    for m in config.spaces() {
        // spaces are stored reduced, so the pivot of row i is its first nonzero
        let piv: Vec<usize> =
            (0..m.rows()).map(|i| (0..r).find(|&c| !m.field().is_zero(m.get(i, c))).expect("full-rank row")).collect();
        let comp: Vec<usize> = (0..r).filter(|c| !piv.contains(c)).collect();
        offset.push(total);
        total += piv.len() * comp.len();
        pivots.push(piv);
        complement.push(comp);
    }
    Layout { pivots, complement, offset, total }
}

/// The linear system cut out by the incidences in `edges`.
fn constraint_matrix<F: Field>(
    config: &SubspaceConfig<F>,
    f: &F,
    edges: &BTreeSet<(VertexId, VertexId)>,
) -> (ExactMatrix<F>, usize) {
    let lay = layout(config);
    let r = config.ambient();
    let mut sys = ExactMatrix::zeros(f, 0, lay.total);
    for &(u, v) in edges {
        let (u, v) = (u as usize, v as usize);
        let eu = config.space(u as u32);
        let ev = config.space(v as u32);
        let (pv, cv) = (&lay.pivots[v], &lay.complement[v]);
        let cu = &lay.complement[u];
        // reduction of each complement unit vector of E_u modulo E_v
        let reduced: Vec<Vec<F::Elem>> = cu
            .iter()
            .map(|&c| {
                let mut w = vec![f.zero(); r];
                w[c] = f.one();
                for (k, &pc) in pv.iter().enumerate() {
                    let coef = w[pc].clone();
                    if !f.is_zero(&coef) {
                        for (j, x) in w.iter_mut().enumerate() {
                            *x = f.sub(x, &f.mul(&coef, ev.get(k, j)));
                        }
                    }
                }
                cv.iter().map(|&j| w[j].clone()).collect()
            })
            .collect();
        for i in 0..eu.rows() {
            for (jj, _) in cv.iter().enumerate() {
                let mut row = vec![f.zero(); lay.total];
                for (jp, red) in reduced.iter().enumerate() {
                    row[lay.offset[u] + i * cu.len() + jp] = red[jj].clone();
                }
                for (k, &pc) in pv.iter().enumerate() {
                    let alpha = eu.get(i, pc);
                    let slot = lay.offset[v] + k * cv.len() + jj;
                    row[slot] = f.sub(&row[slot], alpha);
                }
                sys.push_row(&row);
            }
        }
    }
    (sys, lay.total)
}

/// Dimension of the tangent space of `C_S` at `config`, using the relation
/// `I` exactly as given.
pub fn tangent_dimension<F: Field>(config: &SubspaceConfig<F>) -> usize {
    let Some(f) = config.field() else { return 0 };
    let (sys, total) = constraint_matrix(config, f, config.structure().edges());
    total - sys.rank()
}

/// Same as [`tangent_dimension`] but with the transitive closure of `I`;
/// the two agree at every valid configuration.
pub fn tangent_dimension_closure<F: Field>(config: &SubspaceConfig<F>) -> usize {
    let Some(f) = config.field() else { return 0 };
    let closure = crate::incidence::transitive_closure(config.structure());
    let (sys, total) = constraint_matrix(config, f, &closure);
    total - sys.rank()
}
