//! Acceptance suite: one line per criterion, exit status 1 if any fails.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use quotlocus::charfn::enumerate;
use quotlocus::fixtures;
use quotlocus::incidence::{build_s_chi, classify, equivalent, IncidenceStructure, VertexId};
use quotlocus::realize::{chi_to_regions, graph_to_grid_sets, intersection_structure, sets_to_chi_with_cap, Layout};
use quotlocus::schemegeo::sample::peeling_config;
use quotlocus::schemegeo::{
    coordinate_fixed_points, count_points_fq, interval_dimension, smooth_verdict, tangent_dimension, Verdict,
    WitnessOptions,
};
use quotlocus::verify::{check_identity, product_series_check, tuple_partition_count};
use quotlocus::{ExactMatrix, PrimeField, SubspaceConfig};

mod common;

use common::ideals;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

fn criterion1() -> Outcome {
    let want2 = [1u64, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
    let want3 = [1u64, 1, 3, 6, 13, 24];
    for (d, want) in [(2usize, &want2[..]), (3, &want3[..])] {
        for (n, &w) in want.iter().enumerate() {
            let got = enumerate(1, d, n as u64).map_err(e)?.len() as u64;
            let brute = ideals(d, n).len() as u64;
            ensure(got == w && brute == w, || {
                format!("d={d} n={n}: enumerate {got}, brute force {brute}, expected {w}")
            })?;
        }
    }
    Ok("X_{1,2}^n for n<=10 and X_{1,3}^n for n<=5 match".into())
}

fn criterion2() -> Outcome {
    let mut cases: Vec<(u32, usize, u32)> = Vec::new();
    for r in 1..=3 {
        for d in 1..=3 {
            cases.push((r, d, 6));
        }
    }
    cases.push((3, 4, 4));
    for &(r, d, n_max) in &cases {
        let rep = check_identity(r, d, n_max, None).map_err(e)?;
        if let Some(bad) = rep.per_n.iter().find(|l| !l.ok) {
            return Err(format!("r={r} d={d} n={}: fixed sum {} vs tuples {}", bad.n, bad.lhs, bad.rhs));
        }
        let direct = tuple_partition_count(r, d, n_max).map_err(e)?;
        ensure(direct == rep.per_n[n_max as usize].rhs, || format!("r={r} d={d}: tuple count mismatch"))?;
    }
    Ok(format!("{} (r,d) pairs", cases.len()))
}

fn criterion3() -> Outcome {
    for r in 1..=3 {
        let rep = product_series_check(r, 8, None).map_err(e)?;
        if let Some(bad) = rep.per_n.iter().find(|l| !l.ok) {
            return Err(format!("r={r} n={}: fixed sum {} vs series {}", bad.n, bad.lhs, bad.rhs));
        }
    }
    Ok("r<=3, n<=8".into())
}

fn criterion4() -> Outcome {
    let mut checked = 0usize;
    for d in 1..=3 {
        for n in 0..=7 {
            for chi in enumerate(2, d, n).map_err(e)? {
                let s = build_s_chi(&chi, 2).map_err(e)?.structure;
                let p1 = s.part_sizes().first().copied().unwrap_or(0);
                let c = classify(&s).map_err(e)?;
                let rep = c.interval.ok_or_else(|| format!("{chi:?}: rank one structure not interval"))?;
                let dim = interval_dimension(&s, &rep, 2).map_err(e)?;
                let fixed = coordinate_fixed_points(&s, 2).map_err(e)?;
                ensure(dim == p1 as u64 && fixed == 1u128 << p1, || {
                    format!("{chi:?}: dimension {dim}, fixed points {fixed}, #P_1 = {p1}")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} functions"))
}

fn criterion5() -> Outcome {
    let f = PrimeField::new(10007).map_err(e)?;
    let mut checked = 0usize;
    for r in 1..=4u32 {
        for n in 0..=8 {
            let chis = enumerate(r, 2, n).map_err(e)?;
            chis.par_iter().enumerate().try_for_each(|(i, chi)| -> Result<(), String> {
                let s = build_s_chi(chi, r).map_err(e)?.structure;
                let c = classify(&s).map_err(e)?;
                let rep = c.interval.ok_or_else(|| format!("r={r} {chi:?}: not interval"))?;
                let dim = interval_dimension(&s, &rep, r).map_err(e)? as usize;
                let mut rng = ChaCha8Rng::seed_from_u64((u64::from(r) << 40) ^ (n << 20) ^ i as u64);
                for _ in 0..5 {
                    let cfg = peeling_config(&s, &rep, &f, &mut rng).map_err(e)?;
                    let t = tangent_dimension(&cfg);
                    ensure(t == dim, || format!("r={r} {chi:?}: tangent {t}, dimension {dim}"))?;
                }
                Ok(())
            })?;
            checked += chis.len();
        }
    }
    Ok(format!("{checked} functions, 5 configurations each"))
}

fn criterion6() -> Outcome {
    let chi = fixtures::dim3sing_chi();
    let s = build_s_chi(&chi, 3).map_err(e)?.structure;
    let k22 = fixtures::k22();
    ensure(equivalent(&s, &k22).map_err(e)?, || "structure is not K_{2,2}".into())?;
    let fixed = coordinate_fixed_points(&s, 3).map_err(e)?;
    ensure(fixed == 18, || format!("fixed points {fixed}"))?;
    let q2 = count_points_fq(&s, 3, 2).map_err(e)?;
    ensure(q2 == 105, || format!("F_2 points {q2}"))?;
    let f = PrimeField::new(10007).map_err(e)?;
    let m = |rows: &[Vec<i64>]| ExactMatrix::from_i64_rows(&f, 3, rows).map_err(e);
    // vertex ids: points 0, 1 then lines 2, 3
    let p = m(&[vec![1, 0, 0]])?;
    let l = m(&[vec![1, 0, 0], vec![0, 1, 0]])?;
    let l2 = m(&[vec![1, 0, 0], vec![0, 0, 1]])?;
    ensure(s.levels() == [1, 1, 2, 2], || format!("levels {:?}", s.levels()))?;
    let coincide = SubspaceConfig::new(s.clone(), vec![p.clone(), p.clone(), l.clone(), l.clone()]).map_err(e)?;
    let lines_apart = SubspaceConfig::new(s.clone(), vec![p.clone(), p, l, l2]).map_err(e)?;
    let (t5, t4) = (tangent_dimension(&coincide), tangent_dimension(&lines_apart));
    ensure(t5 == 5 && t4 == 4, || format!("tangent dimensions {t5} and {t4}"))?;
    let v = smooth_verdict(&chi, 3, &WitnessOptions::default()).map_err(e)?;
    ensure(matches!(v, Verdict::SingularWitness { .. }), || format!("verdict {}", v.to_json()))?;
    Ok("K_{2,2}, 18 fixed points, 105 F_2-points, tangent 5/4, singular witness".into())
}

fn criterion7a() -> Result<usize, String> {
    let mut checked = 0;
    for r in 1..=3u32 {
        for d in 1..=3 {
            for n in 0..=6 {
                for chi in enumerate(r, d, n).map_err(e)? {
                    let s = build_s_chi(&chi, r).map_err(e)?.structure;
                    let pr = chi_to_regions(&chi, r).map_err(e)?;
                    let back = intersection_structure(&pr).map_err(e)?;
                    ensure(equivalent(&back, &s).map_err(e)?, || format!("r={r} {chi:?}: regions disagree"))?;
                    checked += 1;
                }
            }
        }
    }
    Ok(checked)
}

/// Part-preserving isomorphism classes of structures on `1..=max_n` vertices
/// with `k` levels, one representative each.
fn partite_graphs(k: u32, max_n: usize) -> Vec<IncidenceStructure> {
    fn level_seqs(k: u32, n: usize) -> Vec<Vec<u32>> {
        if n == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for mut seq in level_seqs(k, n - 1) {
            let from = seq.last().copied().unwrap_or(1);
            for l in from..=k {
                seq.push(l);
                out.push(seq.clone());
                seq.pop();
            }
        }
        out
    }
    fn perms(levels: &[u32]) -> Vec<Vec<usize>> {
        let n = levels.len();
        let mut all: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..n {
            all = all
                .into_iter()
                .flat_map(|p| {
                    let free: Vec<usize> = (0..n).filter(|x| !p.contains(x)).collect();
                    free.into_iter().map(move |x| [p.clone(), vec![x]].concat())
                })
                .collect();
        }
        all.into_iter().filter(|p| (0..n).all(|i| levels[p[i]] == levels[i])).collect()
    }
    let mut out = Vec::new();
    for n in 1..=max_n {
        for levels in level_seqs(k, n) {
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| levels[u] < levels[v]).collect();
            let ps = perms(&levels);
            let mut seen: HashSet<Vec<(usize, usize)>> = HashSet::new();
            for mask in 0u32..1 << pairs.len() {
                let edges: Vec<(usize, usize)> =
                    pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
                let canon = ps
                    .iter()
                    .map(|p| {
                        let mut img: Vec<(usize, usize)> = edges.iter().map(|&(u, v)| (p[u], p[v])).collect();
                        img.sort();
                        img
                    })
                    .min()
                    .expect("identity permutation");
                if seen.insert(canon) {
                    let edges = edges.iter().map(|&(u, v)| (u as VertexId, v as VertexId));
                    out.push(IncidenceStructure::from_levels(k, levels.clone(), edges).expect("levels in range"));
                }
            }
        }
    }
    out
}

/// Graph count, lift count and lift failures.
fn criterion7b_and_8() -> Result<(usize, usize, Vec<String>), String> {
    let mut graphs = 0;
    let mut lift_failures = Vec::new();
    for r in [3u32, 4] {
        let gs_list = partite_graphs(r - 1, 5);
        let results: Vec<Result<Option<String>, String>> = gs_list
            .par_iter()
            .map(|g| {
                let gs = graph_to_grid_sets(g, 4, Layout::Orthogonal, u64::MAX).map_err(e)?;
                let (chi, lifted) = sets_to_chi_with_cap(&gs, u64::MAX).map_err(e)?;
                let lift_err = lifted.check(&gs).err().map(|x| format!("r={r} {:?}: {x}", g));
                let s = build_s_chi(&chi, r).map_err(e)?.structure;
                ensure(equivalent(&s, g).map_err(e)?, || format!("r={r} {:?}: round trip differs", g))?;
                Ok(lift_err)
            })
            .collect();
        for res in results {
            if let Some(msg) = res? {
                lift_failures.push(msg);
            }
        }
        graphs += gs_list.len();
    }
    Ok((graphs, graphs, lift_failures))
}

/// Lagrange interpolation through `(x_i, y_i)`, returned as coefficients
/// from the constant term up.
fn interpolate(points: &[(i64, u128)]) -> Vec<BigRational> {
    let n = points.len();
    let mut coeffs = vec![BigRational::zero(); n];
    for (i, &(xi, yi)) in points.iter().enumerate() {
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, &(xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * BigRational::from_integer(BigInt::from(xj));
            }
            basis = next;
            denom *= BigRational::from_integer(BigInt::from(xi - xj));
        }
        let scale = BigRational::from_integer(BigInt::from(yi)) / denom;
        for (k, b) in basis.iter().enumerate() {
            coeffs[k] += b * &scale;
        }
    }
    coeffs
}

fn criterion9() -> Outcome {
    let chi = fixtures::planar3_chi();
    let s = build_s_chi(&chi, 3).map_err(e)?.structure;
    let qs = [2u64, 3, 5, 7, 11, 13];
    let points: Vec<(i64, u128)> =
        qs.iter().map(|&q| count_points_fq(&s, 3, q).map(|c| (q as i64, c))).collect::<Result<_, _>>().map_err(e)?;
    let coeffs = interpolate(&points);
    let degree = coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
    let at_one: BigRational = coeffs.iter().sum();
    let fixed = coordinate_fixed_points(&s, 3).map_err(e)?;
    let want = BigRational::from_integer(BigInt::from(24));
    ensure(degree == 5 && at_one == want && fixed == 24, || {
        format!("degree {degree}, value at 1 = {at_one}, fixed points {fixed}")
    })?;
    Ok(format!("counts {:?}, degree 5, P(1) = 24", points.iter().map(|p| p.1).collect::<Vec<_>>()))
}

fn run(label: &str, budget: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let res = f();
    let took = start.elapsed();
    let (ok, detail) = match res {
        Ok(msg) if took <= budget => (true, msg),
        Ok(msg) => (false, format!("{msg}; took {took:.1?}, budget {budget:?}")),
        Err(msg) => (false, msg),
    };
    println!("criterion {label}: {} ({took:.2?}) {detail}", if ok { "PASS" } else { "FAIL" });
    ok
}

fn main() {
    let secs = Duration::from_secs;
    let mut all = true;
    all &= run("1", secs(10), criterion1);
    all &= run("2", secs(300), criterion2);
    all &= run("3", secs(120), criterion3);
    all &= run("4", secs(600), criterion4);
    all &= run("5", secs(300), criterion5);
    all &= run("6", secs(30), criterion6);

    // 8 reports on the lifts made while running 7(b)
    let mut lifts: Option<(usize, Vec<String>)> = None;
    all &= run("7", secs(600), || {
        let na = criterion7a()?;
        let (nb, checked, fails) = criterion7b_and_8()?;
        lifts = Some((checked, fails));
        Ok(format!("{na} functions, {nb} graphs"))
    });
    all &= run("8", secs(600), || match lifts {
        Some((n, fails)) if fails.is_empty() => Ok(format!("{n} lifts")),
        Some((_, fails)) => Err(fails.join("; ")),
        None => Err("criterion 7 did not reach the lifts".into()),
    });
    all &= run("9", secs(60), criterion9);
    if !all {
        std::process::exit(1);
    }
}
