//! Dimension of incidence schemes of interval type by peeling: removing the
//! interval with the smallest right endpoint is a Grassmannian bundle.

use crate::error::{invalid, Result};
use crate::incidence::{classify, validate_interval_rep, IncidenceStructure, IntervalRep};

/// One step of the peeling loop.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PeelStep {
    pub vertex: u32,
    /// Largest level among intersecting lower vertices, or 0.
    pub d1: u32,
    pub d2: u32,
    /// Smallest level among intersecting higher vertices, or `r`.
    pub d3: u32,
    /// Vertex realizing `d1`, if any.
    pub below: Option<u32>,
    /// Vertex realizing `d3`, if any.
    pub above: Option<u32>,
}

/// The peeling order with its fibre data. Ties between equal right endpoints
/// and between equally good `d1`/`d3` witnesses go to the lowest id.
pub fn peeling_steps(s: &IncidenceStructure, rep: &IntervalRep, r: u32) -> Result<Vec<PeelStep>> {
    if s.rank() + 1 != r {
        return invalid(format!("structure of rank {} does not live in dimension {r}", s.rank()));
    }
    validate_interval_rep(s, rep)?;
    let n = s.num_vertices();
    let mut alive = vec![true; n];
    let mut steps = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n).filter(|&v| alive[v]).min_by_key(|&v| (rep.right(v), v)).expect("a vertex remains");
        let d2 = s.level(v as u32);
        let mut below: Option<(u32, u32)> = None;
        let mut above: Option<(u32, u32)> = None;
        for w in (0..n).filter(|&w| alive[w] && w != v && rep.intersect(v, w)) {
            let dw = s.level(w as u32);
            if dw < d2 && below.is_none_or(|(d, _)| dw > d) {
                below = Some((dw, w as u32));
            }
            if dw > d2 && above.is_none_or(|(d, _)| dw < d) {
                above = Some((dw, w as u32));
            }
        }
        steps.push(PeelStep {
            vertex: v as u32,
            d1: below.map_or(0, |b| b.0),
            d2,
            d3: above.map_or(r, |a| a.0),
            below: below.map(|b| b.1),
            above: above.map(|a| a.1),
        });
        alive[v] = false;
    }
    Ok(steps)
}

/// `dim C_S` for a structure with the given interval representation.
pub fn interval_dimension(s: &IncidenceStructure, rep: &IntervalRep, r: u32) -> Result<u64> {
    Ok(peeling_steps(s, rep, r)?.iter().map(|st| u64::from(st.d2 - st.d1) * u64::from(st.d3 - st.d2)).sum())
}

/// Finds an interval representation with [`classify`] and peels it.
pub fn structure_dimension(s: &IncidenceStructure, r: u32) -> Result<u64> {
    match classify(s)?.interval {
        Some(rep) => interval_dimension(s, &rep, r),
        None => invalid("structure has no interval representation"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::incidence::build_s_chi;
    use crate::schemegeo::count::flag_dim;

    #[test]
    fn isolated_points_on_the_line() {
        for k in 0..5u32 {
            let s = IncidenceStructure::from_levels(1, vec![1; k as usize], []).unwrap();
            assert_eq!(structure_dimension(&s, 2).unwrap(), u64::from(k));
        }
    }

    #[test]
    fn planar3_has_dimension_five() {
        let s = build_s_chi(&fixtures::planar3_chi(), 3).unwrap().structure;
        // B, A, c2, c1 from the projected centres
        let rep = IntervalRep { intervals: vec![(-5, -1), (1, 8), (-8, -4), (-2, 2)] };
        assert_eq!(interval_dimension(&s, &rep, 3).unwrap(), 5);
        let steps = peeling_steps(&s, &rep, 3).unwrap();
        assert_eq!(steps.iter().map(|s| s.vertex).collect::<Vec<_>>(), vec![2, 0, 3, 1]);
        assert_eq!(structure_dimension(&s, 3).unwrap(), 5);
    }

    #[test]
    fn point_on_line_is_the_full_flag() {
        let s = IncidenceStructure::new(2, vec![vec![0], vec![1]], [(0, 1)]).unwrap();
        assert_eq!(structure_dimension(&s, 3).unwrap(), flag_dim(&[1, 2], 3).unwrap());
    }

    #[test]
    fn rejects_bad_representations() {
        let s = fixtures::k22();
        assert!(structure_dimension(&s, 3).is_err());
        let lone = IncidenceStructure::new(2, vec![vec![0], vec![1]], [(0, 1)]).unwrap();
        let apart = IntervalRep { intervals: vec![(0, 1), (3, 4)] };
        assert!(interval_dimension(&lone, &apart, 3).is_err());
    }
}
