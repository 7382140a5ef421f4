//! Projection of the carriers of `S_chi` to lattice centres in `Z^{d-1}`.
//!
//! A cell `a` becomes the centre `(a_1 - a_d, ..., a_{d-1} - a_d)`, which
//! records `a` modulo the all-ones vector. Distances are measured in the
//! orthogonal projection of `R^d` along `(1, ..., 1)`: there a unit step has
//! length `sqrt((d - 1) / d) < 4/3`, while a difference with entries of both
//! signs has length at least `sqrt(2) > 4/3`. Balls of radius 2/3 therefore
//! meet along every unit step and only between comparable cells.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::charfn::CharFn;
use crate::error::{invalid, Error, Result};
use crate::incidence::{build_s_chi, IncidenceStructure, IntervalRep, VertexId};

pub type Centre = Vec<i64>;

/// Per-vertex sets of projected centres, indexed like the vertices of `S_chi`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RegionsJson", into = "RegionsJson")]
pub struct ProjectedRegions {
    dim: usize,
    r: u32,
    levels: Vec<u32>,
    regions: Vec<BTreeSet<Centre>>,
}

#[derive(Serialize, Deserialize)]
struct RegionsJson {
    d: usize,
    r: u32,
    levels: Vec<u32>,
    regions: Vec<Vec<Centre>>,
}

impl TryFrom<RegionsJson> for ProjectedRegions {
    type Error = Error;

    fn try_from(raw: RegionsJson) -> Result<Self> {
        ProjectedRegions::new(
            raw.d,
            raw.r,
            raw.levels,
            raw.regions.into_iter().map(|c| c.into_iter().collect()).collect(),
        )
    }
}

impl From<ProjectedRegions> for RegionsJson {
    fn from(pr: ProjectedRegions) -> Self {
        RegionsJson {
            d: pr.dim,
            r: pr.r,
            levels: pr.levels,
            regions: pr.regions.into_iter().map(|c| c.into_iter().collect()).collect(),
        }
    }
}

/// Whether the radius-2/3 balls around two centres meet: with `c` the
/// difference extended by a trailing 0, `|c|^2 - (sum c)^2 / d <= 16/9`.
pub fn balls_meet(x: &[i64], y: &[i64]) -> bool {
    let d = x.len() as i64 + 1;
    let (mut sq, mut sum) = (0i64, 0i64);
    for (a, b) in x.iter().zip(y) {
        let c = a - b;
        sq += c * c;
        sum += c;
    }
    9 * (d * sq - sum * sum) <= 16 * d
}

fn connected(region: &BTreeSet<Centre>) -> bool {
    let cells: Vec<&Centre> = region.iter().collect();
    let Some(_) = cells.first() else { return false };
    let mut seen = vec![false; cells.len()];
    seen[0] = true;
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        for j in 0..cells.len() {
            if !seen[j] && balls_meet(cells[i], cells[j]) {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

impl ProjectedRegions {
    /// `dim` is the dimension `d` of the original lattice; centres have
    /// `d - 1` coordinates.
    pub fn new(dim: usize, r: u32, levels: Vec<u32>, regions: Vec<BTreeSet<Centre>>) -> Result<Self> {
        if dim == 0 {
            return invalid("regions need d >= 1");
        }
        if levels.len() != regions.len() {
            return invalid(format!("{} levels for {} regions", levels.len(), regions.len()));
        }
        for (v, (&l, reg)) in levels.iter().zip(&regions).enumerate() {
            if l == 0 || l >= r {
                return invalid(format!("region {v} has level {l} outside 1..{r}"));
            }
            if reg.iter().any(|c| c.len() != dim - 1) {
                return invalid(format!("region {v} has a centre of the wrong length"));
            }
            if !connected(reg) {
                return invalid(format!("region {v} is empty or disconnected"));
            }
        }
        Ok(ProjectedRegions { dim, r, levels, regions })
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

    pub fn regions(&self) -> &[BTreeSet<Centre>] {
        &self.regions
    }

    /// Whether the unions of balls of regions `p` and `q` meet.
    pub fn meets(&self, p: usize, q: usize) -> bool {
        self.regions[p].iter().any(|x| self.regions[q].iter().any(|y| balls_meet(x, y)))
    }
}

/// Projects the carrier of every vertex of `S_chi`.
pub fn chi_to_regions(chi: &CharFn, r: u32) -> Result<ProjectedRegions> {
    let s = build_s_chi(chi, r)?;
    let d = chi.dim();
    let regions = s
        .carriers
        .iter()
        .map(|cells| {
            cells.iter().map(|a| (0..d - 1).map(|i| i64::from(a[i]) - i64::from(a[d - 1])).collect()).collect()
        })
        .collect();
    ProjectedRegions::new(d, r, s.structure.levels().to_vec(), regions)
}

/// The incidence structure whose edges join regions of different levels
/// whose balls meet.
pub fn intersection_structure(pr: &ProjectedRegions) -> Result<IncidenceStructure> {
    let n = pr.regions.len();
    let mut edges = Vec::new();
    for p in 0..n {
        for q in p + 1..n {
            if !pr.meets(p, q) {
                continue;
            }
            if pr.levels[p] == pr.levels[q] {
                return Err(Error::Invariant(format!("regions {p} and {q} share level {} and meet", pr.levels[p])));
            }
            edges.push((p as VertexId, q as VertexId));
        }
    }
    IncidenceStructure::from_levels(pr.r - 1, pr.levels.clone(), edges)
}

/// For `d = 2` the balls are intervals; region `[lo, hi]` becomes
/// `[3 lo - 2, 3 hi + 2]` after scaling by 3.
pub fn regions_interval_rep(pr: &ProjectedRegions) -> Result<IntervalRep> {
    if pr.dim != 2 {
        return invalid(format!("interval representations need d = 2, got d = {}", pr.dim));
    }
    let intervals = pr
        .regions
        .iter()
        .map(|reg| {
            let lo = reg.iter().next().expect("regions are nonempty")[0];
            let hi = reg.iter().next_back().expect("regions are nonempty")[0];
            (3 * lo - 2, 3 * hi + 2)
        })
        .collect();
    Ok(IntervalRep { intervals })
}
