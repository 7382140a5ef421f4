//! Counting invariants: Grassmannian and flag dimensions, torus fixed points
//! (coordinate-subspace configurations) and point counts over `F_q`.

use crate::error::{invalid, Error, Result};
use crate::incidence::IncidenceStructure;

use super::gf::Gf;

/// Default cap on the number of search nodes for the counting routines.
pub const DEFAULT_SEARCH_CAP: u64 = 50_000_000;

/// `dim Gr(m, r) = m (r - m)`.
pub fn grassmannian_dim(m: u32, r: u32) -> Result<u64> {
    if m > r {
        return invalid(format!("Gr({m}, {r}) needs m <= r"));
    }
    Ok(u64::from(m) * u64::from(r - m))
}

/// Dimension of the partial flag variety `Fl(d_1 < ... < d_k; r)`.
pub fn flag_dim(dims: &[u32], r: u32) -> Result<u64> {
    if dims.windows(2).any(|w| w[0] >= w[1]) {
        return invalid("flag dimensions must be strictly increasing");
    }
    if dims.last().is_some_and(|&d| d > r) {
        return invalid(format!("flag dimensions must not exceed {r}"));
    }
    let mut total = 0u64;
    for (i, &d) in dims.iter().enumerate() {
        let next = dims.get(i + 1).copied().unwrap_or(r);
        total += u64::from(d) * u64::from(next - d);
    }
    Ok(total)
}

pub fn binomial(n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    acc
}

/// Gaussian binomial `[n choose k]_q`, the number of `k`-dimensional
/// subspaces of `F_q^n`.
pub fn gaussian_binomial(n: u32, k: u32, q: u64) -> u128 {
    if k > n {
        return 0;
    }
    let q = u128::from(q);
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= q.pow(n - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    num / den
}

fn check_rank(s: &IncidenceStructure, r: u32) -> Result<()> {
    if s.rank() + 1 != r {
        return invalid(format!("structure of rank {} does not live in dimension {r}", s.rank()));
    }
    Ok(())
}

/// Splits vertices into those with an upward edge (searched explicitly, in
/// level order) and sinks, whose choices depend only on already-fixed lower
/// neighbours and are counted in closed form.
fn search_plan(s: &IncidenceStructure) -> (Vec<usize>, Vec<usize>, Vec<Vec<usize>>) {
    let n = s.num_vertices();
    let mut lower = vec![Vec::new(); n];
    let mut has_up = vec![false; n];
    for &(u, v) in s.edges() {
        lower[v as usize].push(u as usize);
        has_up[u as usize] = true;
    }
    let mut inner: Vec<usize> = (0..n).filter(|&v| has_up[v]).collect();
    inner.sort_by_key(|&v| (s.levels()[v], v));
    let sinks = (0..n).filter(|&v| !has_up[v]).collect();
    (inner, sinks, lower)
}

/// Number of assignments `v -> S_v ⊆ {1..r}` with `|S_v| = d(v)` and
/// `S_u ⊆ S_v` along every edge: the torus-fixed points of the incidence
/// scheme.
pub fn coordinate_fixed_points(s: &IncidenceStructure, r: u32) -> Result<u128> {
    coordinate_fixed_points_with_cap(s, r, DEFAULT_SEARCH_CAP)
}

pub fn coordinate_fixed_points_with_cap(s: &IncidenceStructure, r: u32, cap: u64) -> Result<u128> {
    check_rank(s, r)?;
    if r > 64 {
        return invalid("coordinate subsets are limited to r <= 64");
    }
    let (inner, sinks, lower) = search_plan(s);
    let levels = s.levels();
    let mut search = FixedSearch {
        r,
        levels,
        inner: &inner,
        sinks: &sinks,
        lower: &lower,
        chosen: vec![0; levels.len()],
        nodes: 0,
        cap,
    };
    search.run(0)
}

struct FixedSearch<'a> {
    r: u32,
    levels: &'a [u32],
    inner: &'a [usize],
    sinks: &'a [usize],
    lower: &'a [Vec<usize>],
    chosen: Vec<u64>,
    nodes: u64,
    cap: u64,
}

impl FixedSearch<'_> {
    fn run(&mut self, depth: usize) -> Result<u128> {
        self.nodes += 1;
        if self.nodes > self.cap {
            return Err(Error::ResourceLimit(format!("fixed-point search exceeded {} nodes", self.cap)));
        }
        if depth == self.inner.len() {
            let mut prod: u128 = 1;
            for &v in self.sinks {
                let base = self.lower[v].iter().fold(0u64, |m, &u| m | self.chosen[u]);
                let have = base.count_ones();
                let want = self.levels[v];
                if have > want {
                    return Ok(0);
                }
                prod *= binomial(self.r - have, want - have);
            }
            return Ok(prod);
        }
        let v = self.inner[depth];
        let base = self.lower[v].iter().fold(0u64, |m, &u| m | self.chosen[u]);
        let want = self.levels[v];
        if base.count_ones() > want {
            return Ok(0);
        }
        let free: Vec<u32> = (0..self.r).filter(|&i| base >> i & 1 == 0).collect();
        let extra = (want - base.count_ones()) as usize;
        let mut total = 0u128;
        for_each_subset(&free, extra, &mut |add| -> Result<()> {
            self.chosen[v] = base | add;
            total += self.run(depth + 1)?;
            Ok(())
        })?;
        Ok(total)
    }
}

fn for_each_subset<F>(items: &[u32], k: usize, f: &mut F) -> Result<()>
where
    F: FnMut(u64) -> Result<()>,
{
    fn rec<F: FnMut(u64) -> Result<()>>(items: &[u32], k: usize, start: usize, acc: u64, f: &mut F) -> Result<()> {
        if k == 0 {
            return f(acc);
        }
        for i in start..items.len() {
            if items.len() - i < k {
                break;
            }
            rec(items, k - 1, i + 1, acc | 1 << items[i], f)?;
        }
        Ok(())
    }
    rec(items, k, 0, 0, f)
}

/// Number of `F_q`-points of the incidence scheme, for a prime `q < 2^31`
/// or a prime power `q <= 256`.
pub fn count_points_fq(s: &IncidenceStructure, r: u32, q: u64) -> Result<u128> {
    count_points_fq_with_cap(s, r, q, DEFAULT_SEARCH_CAP)
}

/// Vertices with upward edges are enumerated as explicit subspaces, each
/// ranging only over subspaces that contain the span of its lower
/// neighbours; sinks contribute a Gaussian binomial.
pub fn count_points_fq_with_cap(s: &IncidenceStructure, r: u32, q: u64, cap: u64) -> Result<u128> {
    check_rank(s, r)?;
    let Some(gf) = Gf::new(q) else {
        return invalid(format!("q = {q} must be a prime below 2^31 or a prime power up to 256"));
    };
    let (inner, sinks, lower) = search_plan(s);
    let mut search = PointSearch {
        gf,
        r: r as usize,
        levels: s.levels(),
        inner: &inner,
        sinks: &sinks,
        lower: &lower,
        chosen: vec![Vec::new(); s.num_vertices()],
        nodes: 0,
        cap,
    };
    search.run(0)
}

struct PointSearch<'a> {
    gf: Gf,
    r: usize,
    levels: &'a [u32],
    inner: &'a [usize],
    sinks: &'a [usize],
    lower: &'a [Vec<usize>],
    chosen: Vec<Vec<Vec<u64>>>,
    nodes: u64,
    cap: u64,
}

impl PointSearch<'_> {
    fn span_of_lower(&self, v: usize) -> (Vec<Vec<u64>>, Vec<usize>) {
        let rows: Vec<Vec<u64>> = self.lower[v].iter().flat_map(|&u| self.chosen[u].iter().cloned()).collect();
        rref_mod(rows, &self.gf)
    }

    fn run(&mut self, depth: usize) -> Result<u128> {
        self.nodes += 1;
        if self.nodes > self.cap {
            return Err(Error::ResourceLimit(format!("point-count search exceeded {} nodes", self.cap)));
        }
        if depth == self.inner.len() {
            let mut prod: u128 = 1;
            for &v in self.sinks {
                let (basis, _) = self.span_of_lower(v);
                let (have, want) = (basis.len() as u32, self.levels[v]);
                if have > want {
                    return Ok(0);
                }
                prod *= gaussian_binomial(self.r as u32 - have, want - have, self.gf.q());
            }
            return Ok(prod);
        }
        let v = self.inner[depth];
        let (base, pivots) = self.span_of_lower(v);
        let want = self.levels[v] as usize;
        if base.len() > want {
            return Ok(0);
        }
        let complement: Vec<usize> = (0..self.r).filter(|c| !pivots.contains(c)).collect();
        let mut total = 0u128;
        let q = self.gf.q();
        for_each_rref(want - base.len(), complement.len(), q, &mut |small| -> Result<()> {
            let mut rows = base.clone();
            for srow in small {
                let mut row = vec![0u64; self.r];
                for (k, &c) in complement.iter().enumerate() {
                    row[c] = srow[k];
                }
                rows.push(row);
            }
            self.chosen[v] = rows;
            total += self.run(depth + 1)?;
            Ok(())
        })?;
        Ok(total)
    }
}

/// Reduced row echelon form over `F_q`, zero rows dropped.
pub(crate) fn rref_mod(mut rows: Vec<Vec<u64>>, gf: &Gf) -> (Vec<Vec<u64>>, Vec<usize>) {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(i) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, i);
        let inv = gf.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = gf.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = gf.sub(*x, gf.mul(f, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Calls `f` with every `m x n` reduced row echelon matrix of rank `m` over
/// `F_q` (entries as field-element codes `0..q`), i.e. once per
/// `m`-dimensional subspace of `F_q^n`.
fn for_each_rref<F>(m: usize, n: usize, p: u64, f: &mut F) -> Result<()>
where
    F: FnMut(&[Vec<u64>]) -> Result<()>,
{
    if m > n {
        return Ok(());
    }
    let mut pivots = Vec::with_capacity(m);
    choose_pivots(0, m, n, &mut pivots, &mut |piv| {
        // free slots: (row i, col c) with c > piv[i] and c not a pivot
        let slots: Vec<(usize, usize)> =
            (0..m).flat_map(|i| ((piv[i] + 1)..n).filter(|c| !piv.contains(c)).map(move |c| (i, c))).collect();
        let mut mat = vec![vec![0u64; n]; m];
        for (i, &c) in piv.iter().enumerate() {
            mat[i][c] = 1;
        }
        let mut digits = vec![0u64; slots.len()];
        loop {
            for (k, &(i, c)) in slots.iter().enumerate() {
                mat[i][c] = digits[k];
            }
            f(&mat)?;
            let mut k = 0;
            while k < digits.len() {
                digits[k] += 1;
                if digits[k] < p {
                    break;
                }
                digits[k] = 0;
                k += 1;
            }
            if k == digits.len() {
                return Ok(());
            }
        }
    })
}

fn choose_pivots<F>(start: usize, m: usize, n: usize, acc: &mut Vec<usize>, f: &mut F) -> Result<()>
where
    F: FnMut(&[usize]) -> Result<()>,
{
    if acc.len() == m {
        return f(acc);
    }
    for c in start..n {
        if n - c < m - acc.len() {
            break;
        }
        acc.push(c);
        choose_pivots(c + 1, m, n, acc, f)?;
        acc.pop();
    }
    Ok(())
}
