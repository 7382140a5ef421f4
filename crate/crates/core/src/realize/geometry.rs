//! Exact predicates on segments with integer endpoints.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};

fn big(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

fn clamp01(t: BigRational) -> BigRational {
    if t.is_negative() {
        BigRational::zero()
    } else if t > BigRational::one() {
        BigRational::one()
    } else {
        t
    }
}

/// Squared Euclidean distance between the segments `[a, b]` and `[c, d]`
/// (either may be a single point).
pub fn segment_distance2(a: &[i64], b: &[i64], c: &[i64], d: &[i64]) -> BigRational {
    let u: Vec<BigRational> = a.iter().zip(b).map(|(x, y)| big(y - x)).collect();
    let v: Vec<BigRational> = c.iter().zip(d).map(|(x, y)| big(y - x)).collect();
    let w: Vec<BigRational> = a.iter().zip(c).map(|(x, y)| big(x - y)).collect();
    let (uu, uv, vv, uw, vw) = (dot(&u, &u), dot(&u, &v), dot(&v, &v), dot(&u, &w), dot(&v, &w));
    let at = |s: &BigRational, t: &BigRational| -> BigRational {
        let diff: Vec<BigRational> = (0..u.len()).map(|i| &w[i] + s * &u[i] - t * &v[i]).collect();
        dot(&diff, &diff)
    };
    // t minimizing the distance from the point at parameter s
    let best_t = |s: &BigRational| -> BigRational {
        if vv.is_zero() {
            BigRational::zero()
        } else {
            clamp01((&vw + s * &uv) / &vv)
        }
    };
    let best_s = |t: &BigRational| -> BigRational {
        if uu.is_zero() {
            BigRational::zero()
        } else {
            clamp01((t * &uv - &uw) / &uu)
        }
    };
    let (zero, one) = (BigRational::zero(), BigRational::one());
    let mut candidates = vec![
        (zero.clone(), best_t(&zero)),
        (one.clone(), best_t(&one)),
        (best_s(&zero), zero.clone()),
        (best_s(&one), one.clone()),
    ];
    let den = &uu * &vv - &uv * &uv;
    if !den.is_zero() {
        let s = (&uv * &vw - &vv * &uw) / &den;
        let t = (&uu * &vw - &uv * &uw) / &den;
        if s >= zero && s <= one && t >= zero && t <= one {
            candidates.push((s, t));
        }
    }
    candidates.iter().map(|(s, t)| at(s, t)).min().expect("four boundary candidates")
}

/// Closed cells `[2c, 2c + 2]` (one index per coordinate) meeting the segment
/// from `p` to `q`.
///
/// The set of cells containing a point of the segment only changes where a
/// coordinate crosses an even value, so it suffices to look at those
/// parameters and one point strictly between each consecutive pair.
pub fn segment_cells(p: &[i64], q: &[i64]) -> BTreeSet<Vec<i64>> {
    let k = p.len();
    let mut ts: BTreeSet<Ratio<i128>> = BTreeSet::from([Ratio::from_integer(0), Ratio::from_integer(1)]);
    for j in 0..k {
        let delta = i128::from(q[j] - p[j]);
        if delta == 0 {
            continue;
        }
        let (lo, hi) = (p[j].min(q[j]), p[j].max(q[j]));
        let mut e = lo + lo.rem_euclid(2);
        while e <= hi {
            ts.insert(Ratio::new(i128::from(e - p[j]), delta));
            e += 2;
        }
    }
    let ts: Vec<Ratio<i128>> = ts.into_iter().collect();
    let mut params = ts.clone();
    params.extend(ts.windows(2).map(|w| (w[0] + w[1]) / 2));
    let mut out = BTreeSet::new();
    for t in params {
        let per_axis: Vec<Vec<i64>> = (0..k)
            .map(|j| {
                let z = Ratio::from_integer(i128::from(p[j])) + t * i128::from(q[j] - p[j]);
                if z.is_integer() && z.to_integer().rem_euclid(2) == 0 {
                    let c = (z.to_integer() / 2) as i64;
                    vec![c - 1, c]
                } else {
                    vec![(z / 2).floor().to_integer() as i64]
                }
            })
            .collect();
        let mut cell = vec![0i64; k];
        product(&per_axis, 0, &mut cell, &mut out);
    }
    out
}

fn product(choices: &[Vec<i64>], at: usize, cell: &mut Vec<i64>, out: &mut BTreeSet<Vec<i64>>) {
    if at == choices.len() {
        out.insert(cell.clone());
        return;
    }
    for &c in &choices[at] {
        cell[at] = c;
        product(choices, at + 1, cell, out);
    }
}

/// Largest `k >= 0` with `(c / 2^k)^2 <= dist2` is the exponent of the
/// coarsest dyadic cell size satisfying `delta * c <= dist`; returns `None`
/// when `dist2` is zero.
pub fn dyadic_exponent(dist2: &BigRational, c: u64) -> Option<u32> {
    if !dist2.is_positive() {
        return None;
    }
    let c2 = BigRational::from_integer(BigInt::from(c) * BigInt::from(c));
    let mut k = 0u32;
    let mut scaled = dist2.clone();
    while scaled < c2 {
        scaled *= BigRational::from_integer(BigInt::from(4));
        k += 1;
    }
    Some(k)
}

/// `ceil(sqrt(n))`.
pub fn ceil_sqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r < n {
        r += 1;
    }
    while r > 0 && (r - 1) * (r - 1) >= n {
        r -= 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn distances() {
        // skew lines x-axis and the line y = 1 parallel to z
        assert_eq!(segment_distance2(&[-1, 0, 0], &[1, 0, 0], &[0, 1, -1], &[0, 1, 1]), r(1, 1));
        // endpoints closest
        assert_eq!(segment_distance2(&[0, 0, 0], &[1, 0, 0], &[3, 4, 0], &[3, 4, 0]), r(20, 1));
        // point to the interior of a segment
        assert_eq!(segment_distance2(&[0, 0], &[2, 2], &[2, 0], &[2, 0]), r(2, 1));
        // crossing segments
        assert_eq!(segment_distance2(&[0, 0], &[2, 2], &[0, 2], &[2, 0]), r(0, 1));
        // parallel overlapping offsets
        assert_eq!(segment_distance2(&[0, 0], &[4, 0], &[1, 3], &[6, 3]), r(9, 1));
    }

    #[test]
    fn rasterizes_axis_segments() {
        // from 1 to 5 along x in cells of width 2: cells 0, 1, 2 (5 is interior to [4, 6])
        let cells = segment_cells(&[1, 1], &[5, 1]);
        assert_eq!(cells, [vec![0, 0], vec![1, 0], vec![2, 0]].into_iter().collect());
        // lying on a grid line picks up both sides
        let cells = segment_cells(&[1, 2], &[3, 2]);
        assert_eq!(cells, [vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]].into_iter().collect());
    }

    #[test]
    fn diagonal_through_a_corner() {
        let cells = segment_cells(&[1, 1], &[3, 3]);
        assert_eq!(cells, [vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]].into_iter().collect());
        assert_eq!(segment_cells(&[3, 3], &[3, 3]), [vec![1, 1]].into_iter().collect());
    }

    #[test]
    fn dyadic_cells() {
        assert_eq!(dyadic_exponent(&r(100, 1), 10), Some(0));
        assert_eq!(dyadic_exponent(&r(99, 1), 10), Some(1));
        assert_eq!(dyadic_exponent(&r(1, 16), 1), Some(2));
        assert_eq!(dyadic_exponent(&r(0, 1), 3), None);
        assert_eq!(
            (1..20).map(ceil_sqrt).collect::<Vec<_>>(),
            vec![1, 2, 2, 2, 3, 3, 3, 3, 3, 4, 4, 4, 4, 4, 4, 4, 5, 5, 5]
        );
    }
}
