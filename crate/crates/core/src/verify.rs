//! Global cross-checks: torus fixed points summed over characteristic
//! functions against tuples of order ideals, and the `d = 2` series against
//! `prod_{m >= 1} (1 - q^m)^{-r}`.

use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::charfn::{enumerate_with_cap, CharFn, Point, DEFAULT_ENUMERATION_CAP};
use crate::error::{invalid, Error, Result};
use crate::incidence::build_s_chi;
use crate::schemegeo::coordinate_fixed_points;

/// Cap on the number of order ideals held while counting.
pub const DEFAULT_IDEAL_CAP: usize = 5_000_000;

/// Number of order ideals of `N^d` of each size `0..=n`, grown one cell at a
/// time and deduplicated level by level.
pub fn order_ideal_counts(d: usize, n: u32, cap: usize) -> Result<Vec<u128>> {
    if d == 0 {
        return invalid("d must be positive");
    }
    let mut counts = vec![1u128];
    let mut layer: HashSet<BTreeSet<Point>> = HashSet::from([BTreeSet::new()]);
    for _ in 0..n {
        let mut next: HashSet<BTreeSet<Point>> = HashSet::new();
        for ideal in &layer {
            for cell in addable(ideal, d) {
                let mut grown = ideal.clone();
                grown.insert(cell);
                next.insert(grown);
            }
            if next.len() > cap {
                return Err(Error::ResourceLimit(format!("more than {cap} order ideals of one size")));
            }
        }
        counts.push(next.len() as u128);
        layer = next;
    }
    Ok(counts)
}

/// Cells outside `ideal` whose lower neighbours all lie in it.
fn addable(ideal: &BTreeSet<Point>, d: usize) -> Vec<Point> {
    let mut candidates: BTreeSet<Point> = BTreeSet::from([vec![0; d]]);
    for c in ideal {
        for i in 0..d {
            let mut up = c.clone();
            up[i] += 1;
            candidates.insert(up);
        }
    }
    candidates
        .into_iter()
        .filter(|c| {
            !ideal.contains(c)
                && (0..d).all(|i| {
                    c[i] == 0 || {
                        let mut down = c.clone();
                        down[i] -= 1;
                        ideal.contains(&down)
                    }
                })
        })
        .collect()
}

/// Number of `r`-tuples of order ideals in `N^d` of total size `n`.
pub fn tuple_partition_count(r: u32, d: usize, n: u32) -> Result<u128> {
    Ok(tuple_partition_series(r, d, n)?[n as usize])
}

fn tuple_partition_series(r: u32, d: usize, n: u32) -> Result<Vec<u128>> {
    let single = order_ideal_counts(d, n, DEFAULT_IDEAL_CAP)?;
    Ok(power(&single, r, n as usize))
}

fn convolve(a: &[u128], b: &[u128], len: usize) -> Vec<u128> {
    (0..=len).map(|k| (0..=k).map(|i| a[i] * b[k - i]).sum()).collect()
}

fn power(series: &[u128], r: u32, len: usize) -> Vec<u128> {
    let mut acc = vec![0u128; len + 1];
    acc[0] = 1;
    for _ in 0..r {
        acc = convolve(&acc, series, len);
    }
    acc
}

/// Coefficients `0..=n_max` of `prod_{m >= 1} (1 - q^m)^{-r}`.
pub fn partition_product_series(r: u32, n_max: u32) -> Vec<u128> {
    let len = n_max as usize;
    // p(n) by the usual coin-change recursion over parts m = 1..=n_max
    let mut p = vec![0u128; len + 1];
    p[0] = 1;
    for m in 1..=len {
        for k in m..=len {
            p[k] += p[k - m];
        }
    }
    power(&p, r, len)
}

/// Fixed points of one characteristic function's component.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChiContribution {
    pub chi: CharFn,
    pub count: u128,
}

fn contributions(r: u32, d: usize, n: u32, jobs: Option<usize>) -> Result<Vec<ChiContribution>> {
    let chis = enumerate_with_cap(r, d, u64::from(n), DEFAULT_ENUMERATION_CAP)?;
    let one = |chi: &CharFn| -> Result<ChiContribution> {
        let s = build_s_chi(chi, r)?;
        Ok(ChiContribution { chi: chi.clone(), count: coordinate_fixed_points(&s.structure, r)? })
    };
    match jobs {
        Some(j) if j > 1 => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j)
                .build()
                .map_err(|e| Error::Invariant(format!("thread pool: {e}")))?;
            // collect keeps the enumeration order, so output is deterministic
            pool.install(|| chis.par_iter().map(one).collect())
        }
        _ => chis.iter().map(one).collect(),
    }
}

/// Sum of the torus fixed-point counts of all components of weight `n`.
pub fn fixed_sum(r: u32, d: usize, n: u32) -> Result<u128> {
    fixed_sum_with_jobs(r, d, n, None)
}

/// [`fixed_sum`] spread over `jobs` threads.
pub fn fixed_sum_with_jobs(r: u32, d: usize, n: u32, jobs: Option<usize>) -> Result<u128> {
    Ok(contributions(r, d, n, jobs)?.iter().map(|c| c.count).sum())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportParams {
    pub check: &'static str,
    pub r: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    pub n_max: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportLine {
    pub n: u32,
    pub lhs: u128,
    pub rhs: u128,
    pub ok: bool,
    /// Per-function breakdown of `lhs`; filled only when the line fails.
    pub per_chi: Vec<ChiContribution>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub params: ReportParams,
    pub per_n: Vec<ReportLine>,
}

impl Report {
    pub fn all_ok(&self) -> bool {
        self.per_n.iter().all(|l| l.ok)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

fn compare(params: ReportParams, d: usize, rhs: &[u128], jobs: Option<usize>) -> Result<Report> {
    let mut per_n = Vec::new();
    for n in 0..=params.n_max {
        let parts = contributions(params.r, d, n, jobs)?;
        let lhs: u128 = parts.iter().map(|c| c.count).sum();
        let ok = lhs == rhs[n as usize];
        per_n.push(ReportLine { n, lhs, rhs: rhs[n as usize], ok, per_chi: if ok { Vec::new() } else { parts } });
    }
    Ok(Report { params, per_n })
}

/// Compares [`fixed_sum`] with [`tuple_partition_count`] for `n <= n_max`.
/// Mismatches are report contents, not errors.
pub fn check_identity(r: u32, d: usize, n_max: u32, jobs: Option<usize>) -> Result<Report> {
    let rhs = tuple_partition_series(r, d, n_max)?;
    compare(ReportParams { check: "identity", r, d: Some(d), n_max }, d, &rhs, jobs)
}

/// Compares `fixed_sum(r, 2, n)` with the partition product series.
pub fn product_series_check(r: u32, n_max: u32, jobs: Option<usize>) -> Result<Report> {
    let rhs = partition_product_series(r, n_max);
    compare(ReportParams { check: "series", r, d: None, n_max }, 2, &rhs, jobs)
}
