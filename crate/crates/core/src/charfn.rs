//! Characteristic functions: finitely supported, monotone non-increasing maps
//! `Z_{>=0}^d -> {0..r}` recording the fiber dimensions of a torus-fixed
//! quotient.
//!
//! A [`CharFn`] stores only its nonzero values, sorted lexicographically by
//! lattice point. The equivalent [`NestedIdeals`] encoding lists the level
//! sets `{a : chi(a) >= i}` as a descending chain of order ideals; enumeration
//! works on that encoding because the nesting and downward-closure conditions
//! become structural there.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// A lattice point in `Z_{>=0}^d`.
pub type Point = Vec<u32>;

/// Default cap on the number of functions returned by [`enumerate`].
pub const DEFAULT_ENUMERATION_CAP: usize = 1_000_000;

/// A characteristic function with finite support.
///
/// Entries are stored flat (`coords` holds `dim` coordinates per entry) and
/// sorted lexicographically by point, which keeps multi-million-cell functions
/// produced by the realization construction compact.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "CharFnJson", into = "CharFnJson")]
pub struct CharFn {
    dim: usize,
    coords: Vec<u32>,
    values: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    point: Point,
    value: u32,
}

#[derive(Serialize, Deserialize)]
struct CharFnJson {
    d: usize,
    entries: Vec<EntryJson>,
}

impl TryFrom<CharFnJson> for CharFn {
    type Error = Error;

    fn try_from(raw: CharFnJson) -> Result<Self> {
        CharFn::from_entries(raw.d, raw.entries.into_iter().map(|e| (e.point, e.value)))
    }
}

impl From<CharFn> for CharFnJson {
    fn from(chi: CharFn) -> Self {
        CharFnJson {
            d: chi.dim,
            entries: chi.entries().map(|(p, v)| EntryJson { point: p.to_vec(), value: v }).collect(),
        }
    }
}

impl CharFn {
    /// The zero function on `Z_{>=0}^dim`.
    pub fn zero(dim: usize) -> Self {
        CharFn { dim, coords: Vec::new(), values: Vec::new() }
    }

    /// Builds a function from `(point, value)` pairs in any order.
    ///
    /// Rejects zero values, duplicate points, points of the wrong length and
    /// `dim == 0`. Monotonicity is not checked here; see [`CharFn::validate`].
    pub fn from_entries<I>(dim: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Point, u32)>,
    {
        if dim == 0 {
            return invalid("dimension must be positive");
        }
        let mut list: Vec<(Point, u32)> = entries.into_iter().collect();
        for (p, v) in &list {
            if p.len() != dim {
                return invalid(format!("point {p:?} does not have {dim} coordinates"));
            }
            if *v == 0 {
                return invalid(format!("zero value stored at {p:?}"));
            }
        }
        list.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        if let Some(w) = list.windows(2).find(|w| w[0].0 == w[1].0) {
            return invalid(format!("duplicate point {:?}", w[0].0));
        }
        let mut coords = Vec::with_capacity(list.len() * dim);
        let mut values = Vec::with_capacity(list.len());
        for (p, v) in list {
            coords.extend_from_slice(&p);
            values.push(v);
        }
        Ok(CharFn { dim, coords, values })
    }

    /// Builds from already sorted, deduplicated flat storage.
    pub(crate) fn from_sorted_flat(dim: usize, coords: Vec<u32>, values: Vec<u32>) -> Self {
        debug_assert_eq!(coords.len(), values.len() * dim);
        debug_assert!(values.iter().all(|&v| v > 0));
        CharFn { dim, coords, values }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of stored (nonzero) entries.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn point(&self, idx: usize) -> &[u32] {
        &self.coords[idx * self.dim..(idx + 1) * self.dim]
    }

    pub fn value_at(&self, idx: usize) -> u32 {
        self.values[idx]
    }

    /// Entries in lexicographic order of points.
    pub fn entries(&self) -> impl ExactSizeIterator<Item = (&[u32], u32)> + '_ {
        (0..self.len()).map(move |i| (self.point(i), self.values[i]))
    }

    /// Index of `p` among the stored entries.
    pub fn position(&self, p: &[u32]) -> Option<usize> {
        let (mut lo, mut hi) = (0usize, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.point(mid).cmp(p) {
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
                Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    /// Value at an arbitrary lattice point (0 off the support).
    pub fn value(&self, p: &[u32]) -> u32 {
        self.position(p).map_or(0, |i| self.values[i])
    }

    pub fn max_value(&self) -> u32 {
        self.values.iter().copied().max().unwrap_or(0)
    }

    /// Sum of all values, the length `n` of the quotient.
    pub fn weight(&self) -> u64 {
        self.values.iter().map(|&v| u64::from(v)).sum()
    }

    /// Checks membership in `X_{r,d}`: values in `0..=r`, finite weight
    /// (automatic for a finite map) and monotone non-increasing.
    pub fn validate(&self, r: u32) -> bool {
        self.values.iter().all(|&v| v <= r) && self.is_monotone()
    }

    /// Monotonicity reduces to covering pairs `a - e_i <= a`. A monotone
    /// function has an order-ideal support, so the check runs fibre by fibre
    /// along the last coordinate.
    pub fn is_monotone(&self) -> bool {
        let index = CellIndex::new(self);
        let v = &self.values;
        let along_last = index.fibres.iter().all(|&(s, len)| (1..len as usize).all(|t| v[s + t] <= v[s + t - 1]));
        along_last && index.fibre_pairs(self, |lo, hi, len| (0..len as usize).all(|t| v[lo + t] >= v[hi + t]))
    }

    /// Whether the support is an order ideal.
    pub fn is_support_downward_closed(&self) -> bool {
        CellIndex::new(self).downward_closed(self)
    }

    pub fn support(&self) -> BTreeSet<Point> {
        (0..self.len()).map(|k| self.point(k).to_vec()).collect()
    }

    /// The level sets `lambda_i = {a : chi(a) >= i}` for `i = 1..=r`.
    pub fn to_nested(&self, r: u32) -> Result<NestedIdeals> {
        if !self.validate(r) {
            return invalid(format!("function is not a valid characteristic function for r = {r}"));
        }
        let mut ideals = vec![BTreeSet::new(); r as usize];
        for (p, v) in self.entries() {
            for ideal in ideals.iter_mut().take(v as usize) {
                ideal.insert(p.to_vec());
            }
        }
        Ok(NestedIdeals { dim: self.dim, ideals })
    }

    /// Inverse of [`CharFn::to_nested`]: `chi(a) = #{i : a in lambda_i}`.
    pub fn from_nested(ni: &NestedIdeals) -> CharFn {
        let mut counts: BTreeMap<&Point, u32> = BTreeMap::new();
        for ideal in &ni.ideals {
            for p in ideal {
                *counts.entry(p).or_default() += 1;
            }
        }
        let mut coords = Vec::with_capacity(counts.len() * ni.dim);
        let mut values = Vec::with_capacity(counts.len());
        for (p, v) in counts {
            coords.extend_from_slice(p);
            values.push(v);
        }
        CharFn::from_sorted_flat(ni.dim, coords, values)
    }
}

impl PartialOrd for CharFn {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on the sorted entry list (point, then value); functions
/// of different dimension compare by dimension first.
impl Ord for CharFn {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dim.cmp(&other.dim).then_with(|| {
            for (a, b) in self.entries().zip(other.entries()) {
                let c = a.0.cmp(b.0).then(a.1.cmp(&b.1));
                if c != Ordering::Equal {
                    return c;
                }
            }
            self.len().cmp(&other.len())
        })
    }
}

/// Hash lookup from lattice points to entry indices of a [`CharFn`].
///
/// When every fibre along the last coordinate is an initial segment
/// `0..len` (always the case for an order-ideal support) only the fibre
/// prefixes are hashed. Keys are packed into a `u64` when the coordinates
/// fit.
pub(crate) struct CellIndex {
    dim: usize,
    fibred: bool,
    bits: u32,
    packed: Option<FxHashMap<u64, (usize, u32)>>,
    general: FxHashMap<Point, (usize, u32)>,
    fibres: Vec<(usize, u32)>,
}

impl CellIndex {
    pub(crate) fn new(chi: &CharFn) -> Self {
        let dim = chi.dim;
        let mut fibres: Vec<(usize, u32)> = Vec::new();
        let mut fibred = true;
        for k in 0..chi.len() {
            let p = chi.point(k);
            let same = fibres.last().is_some_and(|&(s, _)| chi.point(s)[..dim - 1] == p[..dim - 1]);
            if same {
                let last = fibres.last_mut().expect("checked");
                if p[dim - 1] != last.1 {
                    fibred = false;
                    break;
                }
                last.1 += 1;
            } else {
                if p[dim - 1] != 0 {
                    fibred = false;
                    break;
                }
                fibres.push((k, 1));
            }
        }
        if !fibred {
            fibres = (0..chi.len()).map(|k| (k, 1)).collect();
        }
        let key_len = if fibred { dim - 1 } else { dim };
        // room for max + 1 so that upward neighbours never alias
        let max = chi.coords.iter().copied().max().unwrap_or(0) as u64 + 1;
        let bits = 64 - max.leading_zeros();
        let key = |k: usize| &chi.point(k)[..key_len];
        if (bits as usize) * key_len <= 64 {
            let mut map = FxHashMap::default();
            map.reserve(fibres.len());
            for &(s, len) in &fibres {
                map.insert(Self::pack(key(s), bits), (s, len));
            }
            CellIndex { dim, fibred, bits, packed: Some(map), general: FxHashMap::default(), fibres }
        } else {
            let general = fibres.iter().map(|&(s, len)| (key(s).to_vec(), (s, len))).collect();
            CellIndex { dim, fibred, bits, packed: None, general, fibres }
        }
    }

    fn pack(p: &[u32], bits: u32) -> u64 {
        p.iter().fold(0u64, |acc, &c| (acc << bits) | u64::from(c))
    }

    fn lookup(&self, key: &[u32]) -> Option<(usize, u32)> {
        match &self.packed {
            Some(map) => {
                if key.iter().any(|&c| u64::from(c) >> self.bits != 0) {
                    return None;
                }
                map.get(&Self::pack(key, self.bits)).copied()
            }
            None => self.general.get(key).copied(),
        }
    }

    pub(crate) fn get(&self, p: &[u32]) -> Option<usize> {
        debug_assert_eq!(p.len(), self.dim);
        if self.fibred {
            let (s, len) = self.lookup(&p[..self.dim - 1])?;
            (p[self.dim - 1] < len).then(|| s + p[self.dim - 1] as usize)
        } else {
            self.lookup(p).map(|(s, _)| s)
        }
    }

    /// Whether the support is an order ideal.
    fn downward_closed(&self, chi: &CharFn) -> bool {
        self.fibre_pairs(chi, |_, _, _| true)
    }

    /// Visits each fibre together with the fibre one step below it in every
    /// prefix direction; fails when a lower fibre is missing or shorter.
    fn fibre_pairs<F>(&self, chi: &CharFn, mut ok: F) -> bool
    where
        F: FnMut(usize, usize, u32) -> bool,
    {
        if !self.fibred {
            return chi.is_empty();
        }
        let mut q = vec![0u32; self.dim - 1];
        for &(s, len) in &self.fibres {
            q.copy_from_slice(&chi.point(s)[..self.dim - 1]);
            for i in 0..q.len() {
                if q[i] == 0 {
                    continue;
                }
                q[i] -= 1;
                let below = self.lookup(&q);
                q[i] += 1;
                match below {
                    Some((s2, len2)) if len2 >= len => {
                        if !ok(s2, s, len) {
                            return false;
                        }
                    }
                    _ => return false,
                }
            }
        }
        true
    }
}

/// Chain `lambda_1 ⊇ lambda_2 ⊇ ... ⊇ lambda_r` of finite order ideals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "NestedIdealsJson", into = "NestedIdealsJson")]
pub struct NestedIdeals {
    dim: usize,
    ideals: Vec<BTreeSet<Point>>,
}

#[derive(Serialize, Deserialize)]
struct NestedIdealsJson {
    d: usize,
    ideals: Vec<Vec<Point>>,
}

impl TryFrom<NestedIdealsJson> for NestedIdeals {
    type Error = Error;

    fn try_from(raw: NestedIdealsJson) -> Result<Self> {
        NestedIdeals::new(raw.d, raw.ideals.into_iter().map(|i| i.into_iter().collect()).collect())
    }
}

impl From<NestedIdeals> for NestedIdealsJson {
    fn from(ni: NestedIdeals) -> Self {
        NestedIdealsJson { d: ni.dim, ideals: ni.ideals.into_iter().map(|i| i.into_iter().collect()).collect() }
    }
}

impl NestedIdeals {
    pub fn new(dim: usize, ideals: Vec<BTreeSet<Point>>) -> Result<Self> {
        if dim == 0 {
            return invalid("dimension must be positive");
        }
        if ideals.is_empty() {
            return invalid("rank must be positive");
        }
        for (i, ideal) in ideals.iter().enumerate() {
            if let Some(p) = ideal.iter().find(|p| p.len() != dim) {
                return invalid(format!("point {p:?} does not have {dim} coordinates"));
            }
            if !is_order_ideal(ideal) {
                return invalid(format!("ideal {} is not downward closed", i + 1));
            }
            if i > 0 && !ideal.is_subset(&ideals[i - 1]) {
                return invalid(format!("ideal {} is not contained in ideal {}", i + 1, i));
            }
        }
        Ok(NestedIdeals { dim, ideals })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.ideals.len()
    }

    pub fn ideals(&self) -> &[BTreeSet<Point>] {
        &self.ideals
    }
}

pub fn is_order_ideal(set: &BTreeSet<Point>) -> bool {
    set.iter().all(|p| {
        (0..p.len()).all(|i| {
            if p[i] == 0 {
                return true;
            }
            let mut q = p.clone();
            q[i] -= 1;
            set.contains(&q)
        })
    })
}

/// All of `X_{r,d}^n` with the default output cap.
pub fn enumerate(r: u32, d: usize, n: u64) -> Result<Vec<CharFn>> {
    enumerate_with_cap(r, d, n, DEFAULT_ENUMERATION_CAP)
}

/// All characteristic functions with values in `0..=r` on `Z_{>=0}^d` of
/// weight `n`, each once, sorted by [`CharFn`]'s ordering.
///
/// Enumerates chains of order ideals with non-increasing sizes: `lambda_1`
/// ranges over ideals inside the hook-bounded window, each later ideal over
/// sub-ideals of its predecessor, pruning on the remaining weight.
pub fn enumerate_with_cap(r: u32, d: usize, n: u64, cap: usize) -> Result<Vec<CharFn>> {
    if r == 0 || d == 0 {
        return invalid("r and d must be positive");
    }
    let n = usize::try_from(n).map_err(|_| Error::ResourceLimit("weight too large".into()))?;
    let mut out = Vec::new();
    let mut chain: Vec<Vec<Point>> = Vec::with_capacity(r as usize);
    // lambda_1 has size s1 with n <= r * s1
    for s1 in (n.div_ceil(r as usize))..=n {
        let window = hook_window(d, s1);
        for_each_ideal(&window, s1, &mut |ideal| {
            chain.push(ideal);
            let res = extend_chain(r as usize, d, n - s1, &mut chain, &mut out, cap);
            chain.pop();
            res
        })?;
    }
    out.sort_unstable();
    Ok(out)
}

fn extend_chain(
    r: usize,
    d: usize,
    remaining: usize,
    chain: &mut Vec<Vec<Point>>,
    out: &mut Vec<CharFn>,
    cap: usize,
) -> Result<()> {
    let depth = chain.len();
    let last = chain.last().expect("chain starts with lambda_1").clone();
    if depth == r || remaining == 0 {
        if remaining != 0 {
            return Ok(());
        }
        if out.len() >= cap {
            return Err(Error::ResourceLimit(format!("more than {cap} characteristic functions")));
        }
        let mut counts: BTreeMap<&Point, u32> = BTreeMap::new();
        for ideal in chain.iter() {
            for p in ideal {
                *counts.entry(p).or_default() += 1;
            }
        }
        let mut coords = Vec::with_capacity(counts.len() * d);
        let mut values = Vec::with_capacity(counts.len());
        for (p, v) in counts {
            coords.extend_from_slice(p);
            values.push(v);
        }
        out.push(CharFn::from_sorted_flat(d, coords, values));
        return Ok(());
    }
    let slots = r - depth;
    let max_size = last.len().min(remaining);
    let min_size = remaining.div_ceil(slots);
    if min_size > max_size {
        return Ok(());
    }
    let window = linear_extension(last);
    for s in min_size..=max_size {
        for_each_ideal(&window, s, &mut |ideal| {
            chain.push(ideal);
            let res = extend_chain(r, d, remaining - s, chain, out, cap);
            chain.pop();
            res
        })?;
    }
    Ok(())
}

/// Cells that can belong to an order ideal of size `size`: any ideal holding
/// `a` holds the box below it, of size `prod (a_i + 1)`.
fn hook_window(d: usize, size: usize) -> Vec<Point> {
    fn rec(d: usize, budget: usize, prefix: &mut Point, out: &mut Vec<Point>) {
        if prefix.len() == d {
            out.push(prefix.clone());
            return;
        }
        let mut c = 0u32;
        while (c as usize + 1) <= budget {
            prefix.push(c);
            rec(d, budget / (c as usize + 1), prefix, out);
            prefix.pop();
            c += 1;
        }
    }
    let mut out = Vec::new();
    if size > 0 {
        rec(d, size, &mut Vec::with_capacity(d), &mut out);
    }
    linear_extension(out)
}

/// Sorts cells by coordinate sum, then lexicographically; every predecessor
/// `a - e_i` precedes `a`.
fn linear_extension(mut cells: Vec<Point>) -> Vec<Point> {
    cells.sort_unstable_by(|a, b| {
        let sa: u64 = a.iter().map(|&c| u64::from(c)).sum();
        let sb: u64 = b.iter().map(|&c| u64::from(c)).sum();
        sa.cmp(&sb).then_with(|| a.cmp(b))
    });
    cells
}

/// Calls `f` once for every order ideal of exactly `size` cells inside the
/// downward-closed `window` (given in linear-extension order).
fn for_each_ideal<F>(window: &[Point], size: usize, f: &mut F) -> Result<()>
where
    F: FnMut(Vec<Point>) -> Result<()>,
{
    let pos: HashMap<&Point, usize> = window.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let preds: Vec<Vec<usize>> = window
        .iter()
        .map(|p| {
            (0..p.len())
                .filter(|&i| p[i] > 0)
                .map(|i| {
                    let mut q = p.clone();
                    q[i] -= 1;
                    // window is downward closed, so the predecessor is present
                    pos[&q]
                })
                .collect()
        })
        .collect();

    struct Search<'a, F> {
        window: &'a [Point],
        preds: &'a [Vec<usize>],
        size: usize,
        included: Vec<bool>,
        picked: Vec<usize>,
        f: &'a mut F,
    }

    impl<F: FnMut(Vec<Point>) -> Result<()>> Search<'_, F> {
        fn run(&mut self, at: usize) -> Result<()> {
            if self.picked.len() == self.size {
                let ideal = self.picked.iter().map(|&i| self.window[i].clone()).collect();
                return (self.f)(ideal);
            }
            if self.picked.len() + (self.window.len() - at) < self.size {
                return Ok(());
            }
            if self.preds[at].iter().all(|&j| self.included[j]) {
                self.included[at] = true;
                self.picked.push(at);
                self.run(at + 1)?;
                self.picked.pop();
                self.included[at] = false;
            }
            self.run(at + 1)
        }
    }

    let mut search = Search {
        window,
        preds: &preds,
        size,
        included: vec![false; window.len()],
        picked: Vec::with_capacity(size),
        f,
    };
    search.run(0)
}

/// Connected components of each level set `chi^{-1}(v)`, `v >= 1`.
///
/// Adjacency is a unit step in exactly one coordinate. Each component is
/// sorted, and components of one value are ordered by their least point.
pub fn level_components(chi: &CharFn) -> BTreeMap<u32, Vec<Vec<Point>>> {
    let mut out: BTreeMap<u32, Vec<Vec<Point>>> = BTreeMap::new();
    for (v, comp) in components_where(chi, |_| true) {
        out.entry(v).or_default().push(comp.into_iter().map(|k| chi.point(k).to_vec()).collect());
    }
    for comps in out.values_mut() {
        comps.sort();
    }
    out
}

/// Components (as sorted entry indices) of the level sets whose value passes
/// `keep`. Entries are visited in lexicographic order, so each component is
/// discovered at its least point and the output is ordered by value and then
/// by that least point.
pub(crate) fn components_where<P>(chi: &CharFn, keep: P) -> Vec<(u32, Vec<usize>)>
where
    P: Fn(u32) -> bool,
{
    let index = CellIndex::new(chi);
    let mut seen = vec![false; chi.len()];
    let mut found: Vec<(u32, Vec<usize>)> = Vec::new();
    let mut q = vec![0u32; chi.dim()];
    for start in 0..chi.len() {
        let v = chi.value_at(start);
        if seen[start] || !keep(v) {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut head = 0;
        while head < comp.len() {
            let k = comp[head];
            head += 1;
            q.copy_from_slice(chi.point(k));
            for i in 0..q.len() {
                for up in [false, true] {
                    if !up && q[i] == 0 {
                        continue;
                    }
                    if up {
                        q[i] += 1;
                    } else {
                        q[i] -= 1;
                    }
                    if let Some(j) = index.get(&q) {
                        if !seen[j] && chi.value_at(j) == v {
                            seen[j] = true;
                            comp.push(j);
                        }
                    }
                    if up {
                        q[i] -= 1;
                    } else {
                        q[i] += 1;
                    }
                }
            }
        }
        comp.sort_unstable();
        found.push((v, comp));
    }
    found.sort_by_key(|(v, _)| *v);
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn chi(d: usize, entries: &[(&[u32], u32)]) -> CharFn {
        CharFn::from_entries(d, entries.iter().map(|(p, v)| (p.to_vec(), *v))).unwrap()
    }

    #[test]
    fn planar3_is_valid_with_weight_eleven() {
        let f = fixtures::planar3_chi();
        assert!(f.validate(3));
        assert!(!f.validate(2));
        assert_eq!(f.weight(), 11);
        assert!(f.is_support_downward_closed());
    }

    #[test]
    fn zero_function() {
        let z = CharFn::zero(2);
        assert!(z.validate(1));
        assert_eq!(z.weight(), 0);
        let ni = z.to_nested(3).unwrap();
        assert!(ni.ideals().iter().all(|i| i.is_empty()));
        assert_eq!(CharFn::from_nested(&ni), z);
    }

    #[test]
    fn monotonicity_violation() {
        let f = chi(2, &[(&[0, 0], 2), (&[1, 0], 3)]);
        assert!(!f.validate(3));
        let g = chi(2, &[(&[1, 0], 1)]);
        assert!(!g.validate(3));
        assert!(!g.is_support_downward_closed());
    }

    #[test]
    fn weight_in_four_dimensions() {
        assert_eq!(chi(4, &[(&[0, 0, 0, 0], 3)]).weight(), 3);
    }

    #[test]
    fn malformed_entries_are_rejected() {
        assert!(CharFn::from_entries(2, vec![(vec![0, 0], 0)]).is_err());
        assert!(CharFn::from_entries(2, vec![(vec![0], 1)]).is_err());
        assert!(CharFn::from_entries(2, vec![(vec![0, 0], 1), (vec![0, 0], 2)]).is_err());
        assert!(CharFn::from_entries(0, Vec::new()).is_err());
    }

    #[test]
    fn nested_levels_of_planar3() {
        let ni = fixtures::planar3_chi().to_nested(3).unwrap();
        let pts = |v: &[[u32; 2]]| v.iter().map(|p| p.to_vec()).collect::<BTreeSet<_>>();
        assert_eq!(ni.ideals()[0].len(), 6);
        assert_eq!(ni.ideals()[1], pts(&[[0, 0], [1, 0], [2, 0], [0, 1]]));
        assert_eq!(ni.ideals()[2], pts(&[[0, 0]]));
    }

    #[test]
    fn rank_one_nesting_is_the_support() {
        let f = chi(2, &[(&[0, 0], 1), (&[0, 1], 1)]);
        let ni = f.to_nested(1).unwrap();
        assert_eq!(ni.ideals()[0], f.support());
    }

    #[test]
    fn nested_ideals_reject_bad_chains() {
        let a: BTreeSet<Point> = [vec![0, 0]].into_iter().collect();
        let b: BTreeSet<Point> = [vec![0, 0], vec![1, 0]].into_iter().collect();
        assert!(NestedIdeals::new(2, vec![a.clone(), b.clone()]).is_err());
        assert!(NestedIdeals::new(2, vec![b, a]).is_ok());
        let hole: BTreeSet<Point> = [vec![1, 0]].into_iter().collect();
        assert!(NestedIdeals::new(2, vec![hole]).is_err());
    }

    #[test]
    fn enumeration_small_counts() {
        let counts: Vec<usize> = (0..=6).map(|n| enumerate(1, 2, n).unwrap().len()).collect();
        assert_eq!(counts, [1, 1, 2, 3, 5, 7, 11]);
        let counts: Vec<usize> = (0..=5).map(|n| enumerate(1, 3, n).unwrap().len()).collect();
        assert_eq!(counts, [1, 1, 3, 6, 13, 24]);
    }

    #[test]
    fn rank_two_line_staircases() {
        // pairs (4,0), (3,1), (2,2) of nested 1-D staircases
        let all = enumerate(2, 1, 4).unwrap();
        assert_eq!(all.len(), 3);
        let expect = [
            chi(1, &[(&[0], 1), (&[1], 1), (&[2], 1), (&[3], 1)]),
            chi(1, &[(&[0], 2), (&[1], 1), (&[2], 1)]),
            chi(1, &[(&[0], 2), (&[1], 2)]),
        ];
        for e in &expect {
            assert!(all.contains(e), "missing {e:?}");
        }
    }

    #[test]
    fn enumeration_is_sorted_and_unique() {
        let all = enumerate(3, 2, 5).unwrap();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        for f in &all {
            assert!(f.validate(3));
            assert_eq!(f.weight(), 5);
        }
    }

    #[test]
    fn enumeration_cap() {
        assert!(matches!(enumerate_with_cap(1, 2, 6, 10), Err(Error::ResourceLimit(_))));
        assert_eq!(enumerate_with_cap(1, 2, 6, 11).unwrap().len(), 11);
        assert_eq!(enumerate(4, 3, 0).unwrap(), vec![CharFn::zero(3)]);
    }

    #[test]
    fn components_of_planar3() {
        let comps = level_components(&fixtures::planar3_chi());
        assert_eq!(comps[&2], vec![vec![vec![0, 1]], vec![vec![1, 0], vec![2, 0]]]);
        assert_eq!(comps[&1], vec![vec![vec![0, 2]], vec![vec![1, 1]]]);
        assert_eq!(comps[&3], vec![vec![vec![0, 0]]]);
    }

    #[test]
    fn components_of_planar4() {
        let comps = level_components(&fixtures::planar4_chi());
        assert_eq!(comps[&3].len(), 3);
        assert_eq!(comps[&2].len(), 2);
        assert_eq!(comps[&1].len(), 2);
    }

    #[test]
    fn diagonal_cells_do_not_connect() {
        let f = chi(2, &[(&[0, 0], 2), (&[1, 0], 1), (&[0, 1], 1)]);
        assert_eq!(level_components(&f)[&1].len(), 2);
    }

    #[test]
    fn json_round_trip_and_rejection() {
        let f = fixtures::planar3_chi();
        let s = serde_json::to_string(&f).unwrap();
        assert!(s.starts_with("{\"d\":2,\"entries\":[{\"point\":[0,0],\"value\":3}"));
        let back: CharFn = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        let bad = r#"{"d":2,"entries":[{"point":[0,0],"value":0}]}"#;
        assert!(serde_json::from_str::<CharFn>(bad).is_err());
        let ni = f.to_nested(3).unwrap();
        let s = serde_json::to_string(&ni).unwrap();
        assert_eq!(serde_json::from_str::<NestedIdeals>(&s).unwrap(), ni);
    }
}
