//! `quotlocus`: command-line access to every operation of the library.
//!
//! Exit status: 0 on success, 2 on invalid input or usage, 3 when a resource
//! cap is hit, 1 on internal errors.

mod input;

use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use input::Input;
use quotlocus::charfn::{enumerate_with_cap, DEFAULT_ENUMERATION_CAP};
use quotlocus::fixtures;
use quotlocus::incidence::{build_s_chi, classify};
use quotlocus::realize::{
    chi_to_regions, graph_to_chi_with_cap, intersection_structure, intervals_to_grid_sets, sets_to_chi_with_cap,
    Layout, DEFAULT_SUPPORT_CAP,
};
use quotlocus::schemegeo::count::{coordinate_fixed_points_with_cap, count_points_fq_with_cap, DEFAULT_SEARCH_CAP};
use quotlocus::schemegeo::verdict::DEFAULT_TANGENT_PRIME;
use quotlocus::schemegeo::{
    peeling_steps, smooth_verdict, structure_dimension, structure_verdict, tangent_dimension, AnyConfig, WitnessOptions,
};
use quotlocus::verify::{check_identity, product_series_check};
use quotlocus::{CharFn, Error, IncidenceStructure};

#[derive(Parser)]
#[command(
    name = "quotlocus",
    version,
    about = "Torus-fixed loci of Quot schemes of points: combinatorics and geometry"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Input file (JSON, or an edge list for graphs).
    #[arg(long = "in", global = true, value_name = "FILE")]
    input: Option<String>,
    /// Rank `r` of the free sheaf.
    #[arg(long, global = true)]
    r: Option<u32>,
    /// Dimension `d` of the lattice.
    #[arg(long, global = true)]
    d: Option<usize>,
    /// Number of points `n`.
    #[arg(long, global = true)]
    n: Option<u64>,
    /// Field size for point counts.
    #[arg(long, global = true)]
    q: Option<u64>,
    /// Prime for tangent computations and sampling.
    #[arg(long, global = true, default_value_t = DEFAULT_TANGENT_PRIME)]
    prime: u64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Random configurations per sampler in smoothness searches.
    #[arg(long, global = true, default_value_t = 8)]
    samples: usize,
    /// Overrides the operation's default resource cap.
    #[arg(long, global = true, env = "QUOTLOCUS_CAP")]
    cap: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads for the identity checks.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[arg(long, global = true, default_value_t = 6)]
    nmax: u32,
    #[arg(long, global = true, value_enum, default_value_t = LayoutArg::Orthogonal)]
    layout: LayoutArg,
}

#[derive(Subcommand)]
enum Command {
    /// All characteristic functions with the given r, d and n.
    Enumerate,
    /// The incidence structure S_chi of a characteristic function.
    Structure,
    /// Projected ball regions of a characteristic function.
    Regions,
    /// A characteristic function realizing a graph or grid sets.
    Realize,
    /// A planar characteristic function realizing rational intervals.
    Intervals,
    /// Euler characteristic as the coordinate fixed-point count.
    Euler,
    /// Number of F_q-points of the incidence scheme.
    CountFq,
    /// Dimension of an interval-type incidence scheme by peeling.
    Dimension,
    /// Tangent space dimension at a configuration.
    Tangent,
    /// Smoothness verdict.
    Smooth,
    /// Global identity checks.
    Verify {
        #[arg(value_enum)]
        check: Check,
    },
    /// Ready-made example inputs.
    Fixtures {
        /// Emit a single fixture instead of all of them.
        #[arg(long)]
        name: Option<String>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum LayoutArg {
    Orthogonal,
    MomentCurve,
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    Identity,
    Series,
}

type Res<T> = Result<T, Error>;

fn need<T>(x: Option<T>, flag: &str) -> Res<T> {
    x.ok_or_else(|| Error::Invalid(format!("missing --{flag}")))
}

fn load(cli: &Cli) -> Res<Input> {
    let path = need(cli.input.as_deref(), "in")?;
    input::parse(&input::read(path)?, cli.r.map(|r| r.saturating_sub(1)))
}

/// The characteristic function and `r` (from `--r`, else its largest value).
fn load_chi(cli: &Cli) -> Res<(CharFn, u32)> {
    match load(cli)? {
        Input::Chi(chi) => {
            let r = cli.r.unwrap_or_else(|| chi.max_value().max(1));
            Ok((chi, r))
        }
        _ => Err(Error::Invalid("expected a characteristic function".into())),
    }
}

/// A structure given directly, or `S_chi` of a characteristic function.
fn load_structure(cli: &Cli) -> Res<(IncidenceStructure, u32)> {
    match load(cli)? {
        Input::Structure(s) => {
            let r = s.rank() + 1;
            Ok((s, r))
        }
        Input::Chi(chi) => {
            let r = cli.r.unwrap_or_else(|| chi.max_value().max(1));
            Ok((build_s_chi(&chi, r)?.structure, r))
        }
        _ => Err(Error::Invalid("expected an incidence structure or a characteristic function".into())),
    }
}

/// Counts as JSON integers; beyond `u64` they fall back to decimal strings.
fn int(x: u128) -> Value {
    u64::try_from(x).map_or_else(|_| Value::String(x.to_string()), Value::from)
}

fn cap_or(cli: &Cli, default: u64) -> u64 {
    cli.cap.unwrap_or(default)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

/// Flat objects as a two-line CSV; anything else only as JSON.
fn render(cli: &Cli, v: Value) -> Res<String> {
    match cli.format {
        Format::Json => Ok(pretty(&v)),
        Format::Csv => {
            let obj = v.as_object().filter(|o| o.values().all(|x| !x.is_object() && !x.is_array()));
            let obj = obj.ok_or_else(|| Error::Invalid("this output has no CSV view".into()))?;
            let keys: Vec<&str> = obj.keys().map(String::as_str).collect();
            let vals: Vec<String> =
                obj.values().map(|x| x.as_str().map_or_else(|| x.to_string(), str::to_owned)).collect();
            Ok(format!("{}\n{}\n", keys.join(","), vals.join(",")))
        }
        Format::Dot => Err(Error::Invalid("this output has no DOT view".into())),
    }
}

fn chi_csv(chi: &CharFn) -> String {
    chi.entries()
        .map(|(p, v)| format!("{}:{v}", p.iter().map(u32::to_string).collect::<Vec<_>>().join(".")))
        .collect::<Vec<_>>()
        .join(";")
}

fn structure_output(cli: &Cli, s: &IncidenceStructure, extra: Value) -> Res<String> {
    match cli.format {
        Format::Dot => Ok(s.to_dot()),
        Format::Csv => {
            let mut out = String::from("u,v\n");
            for (u, v) in s.edges() {
                writeln!(out, "{u},{v}").expect("string write");
            }
            Ok(out)
        }
        Format::Json => {
            let mut v = json!({ "structure": s });
            if let (Some(obj), Value::Object(more)) = (v.as_object_mut(), extra) {
                obj.extend(more);
            }
            Ok(pretty(&v))
        }
    }
}

fn run(cli: &Cli) -> Res<String> {
    match &cli.command {
        Command::Enumerate => {
            let (r, d, n) = (need(cli.r, "r")?, need(cli.d, "d")?, need(cli.n, "n")?);
            let cap = cap_or(cli, DEFAULT_ENUMERATION_CAP as u64) as usize;
            let all = enumerate_with_cap(r, d, n, cap)?;
            match cli.format {
                Format::Csv => {
                    let mut out = String::from("index,weight,entries\n");
                    for (i, chi) in all.iter().enumerate() {
                        writeln!(out, "{i},{},{}", chi.weight(), chi_csv(chi)).expect("string write");
                    }
                    Ok(out)
                }
                _ => render(cli, serde_json::to_value(&all)?),
            }
        }
        Command::Structure => {
            let (chi, r) = load_chi(cli)?;
            let cs = build_s_chi(&chi, r)?;
            let class = classify(&cs.structure).ok();
            structure_output(cli, &cs.structure, json!({ "carriers": cs.carriers, "classification": class }))
        }
        Command::Regions => {
            let (chi, r) = load_chi(cli)?;
            let pr = chi_to_regions(&chi, r)?;
            match cli.format {
                Format::Json => {
                    let s = intersection_structure(&pr)?;
                    Ok(pretty(&json!({ "regions": pr, "intersection": s })))
                }
                _ => structure_output(cli, &intersection_structure(&pr)?, Value::Null),
            }
        }
        Command::Realize => {
            let cap = cap_or(cli, DEFAULT_SUPPORT_CAP);
            let chi = match load(cli)? {
                Input::Grid(gs) => sets_to_chi_with_cap(&gs, cap)?.0,
                Input::Structure(g) => {
                    let layout = match cli.layout {
                        LayoutArg::Orthogonal => Layout::Orthogonal,
                        LayoutArg::MomentCurve => Layout::MomentCurve,
                    };
                    graph_to_chi_with_cap(&g, cli.d.unwrap_or(4), layout, cap)?.0
                }
                _ => return Err(Error::Invalid("expected a graph or grid sets".into())),
            };
            render(cli, serde_json::to_value(&chi)?)
        }
        Command::Intervals => match load(cli)? {
            Input::Intervals(doc) => {
                let gs = intervals_to_grid_sets(&doc.rationals()?, &doc.levels, doc.r)?;
                let (chi, _) = sets_to_chi_with_cap(&gs, cap_or(cli, DEFAULT_SUPPORT_CAP))?;
                render(cli, serde_json::to_value(&chi)?)
            }
            _ => Err(Error::Invalid("expected an intervals document".into())),
        },
        Command::Euler => {
            let (s, r) = load_structure(cli)?;
            let e = coordinate_fixed_points_with_cap(&s, r, cap_or(cli, DEFAULT_SEARCH_CAP))?;
            render(cli, json!({ "r": r, "euler": int(e) }))
        }
        Command::CountFq => {
            let (s, r) = load_structure(cli)?;
            let q = need(cli.q, "q")?;
            let c = count_points_fq_with_cap(&s, r, q, cap_or(cli, DEFAULT_SEARCH_CAP))?;
            render(cli, json!({ "r": r, "q": q, "points": int(c) }))
        }
        Command::Dimension => {
            let (s, r) = load_structure(cli)?;
            let dim = structure_dimension(&s, r)?;
            if cli.format != Format::Json {
                return render(cli, json!({ "r": r, "dimension": dim }));
            }
            let rep =
                classify(&s)?.interval.ok_or_else(|| Error::Invalid("structure is not of interval type".into()))?;
            let steps: Vec<Value> = peeling_steps(&s, &rep, r)?
                .iter()
                .map(|st| json!({ "vertex": st.vertex, "d1": st.d1, "d2": st.d2, "d3": st.d3 }))
                .collect();
            render(cli, json!({ "r": r, "dimension": dim, "peeling": steps }))
        }
        Command::Tangent => match load(cli)? {
            Input::Config(cfg) => {
                let t = match &cfg {
                    AnyConfig::Q(c) => tangent_dimension(c),
                    AnyConfig::Fp(_, c) => tangent_dimension(c),
                };
                render(cli, json!({ "tangent_dimension": t }))
            }
            _ => Err(Error::Invalid("expected a subspace configuration".into())),
        },
        Command::Smooth => {
            let opts = WitnessOptions { prime: cli.prime, samples: cli.samples, seed: cli.seed };
            let verdict = match load(cli)? {
                Input::Chi(chi) => {
                    let r = cli.r.unwrap_or_else(|| chi.max_value().max(1));
                    smooth_verdict(&chi, r, &opts)?
                }
                Input::Structure(s) => structure_verdict(&s, s.rank() + 1, &opts)?,
                _ => return Err(Error::Invalid("expected a characteristic function or a structure".into())),
            };
            match cli.format {
                Format::Json => Ok(pretty(&verdict.to_json())),
                _ => {
                    let v = verdict.to_json();
                    render(cli, json!({ "verdict": v["verdict"] }))
                }
            }
        }
        Command::Verify { check } => {
            let r = need(cli.r, "r")?;
            let jobs = Some(cli.jobs);
            let report = match check {
                Check::Identity => check_identity(r, need(cli.d, "d")?, cli.nmax, jobs)?,
                Check::Series => product_series_check(r, cli.nmax, jobs)?,
            };
            match cli.format {
                Format::Csv => {
                    let mut out = String::from("n,lhs,rhs,ok\n");
                    for l in &report.per_n {
                        writeln!(out, "{},{},{},{}", l.n, l.lhs, l.rhs, l.ok).expect("string write");
                    }
                    Ok(out)
                }
                _ => Ok(report.to_json() + "\n"),
            }
        }
        Command::Fixtures { name } => {
            let all = fixture_table(cli.r.unwrap_or(4))?;
            match name {
                Some(n) => all
                    .get(n)
                    .map(pretty)
                    .ok_or_else(|| Error::Invalid(format!("unknown fixture `{n}`; known: {}", known(&all)))),
                None => Ok(pretty(&all)),
            }
        }
    }
}

fn known(all: &Value) -> String {
    all.as_object().map(|o| o.keys().cloned().collect::<Vec<_>>().join(", ")).unwrap_or_default()
}

/// `dim3sing_r` uses `--r` (at least 3).
fn fixture_table(r: u32) -> Res<Value> {
    if r < 3 {
        return Err(Error::Invalid("the singular example needs --r >= 3".into()));
    }
    Ok(json!({
        "planar3": fixtures::planar3_chi(),
        "planar4": fixtures::planar4_chi(),
        "dim3sing": fixtures::dim3sing_chi(),
        "dim3sing_r": fixtures::dim3sing_chi_rank(r),
        "k22": fixtures::k22(),
        "k33": fixtures::k33(),
        "subdivided_k5": fixtures::subdivided_k5(),
    }))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            // a closed pipe downstream is not an error
            let _ = std::io::stdout().lock().write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Invalid(_) | Error::Json(_) => 2,
                Error::ResourceLimit(_) => 3,
                Error::Invariant(_) => 1,
            })
        }
    }
}
