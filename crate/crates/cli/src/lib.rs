//! Command-line front end for `wulffbez-core`.
//!
//! Bodies are given as JSON file paths or as `corpus:<name>`; corpus names
//! are looked up as `<name>.json` in `$WULFFBEZ_CORPUS_DIR` first, then in
//! the built-in corpus.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use wulffbez_core::corpus;
use wulffbez_core::decomposition::{check_witness, homothet_chain_check, weak_witness_search};
use wulffbez_core::inequality::{
    counterexample_search, derivative_probe, evaluate, simplex_certify, CertifyReport, Family, InequalityForm, Verdict,
};
use wulffbez_core::io;
use wulffbez_core::measure::{mixed_area_measure, surface_area_measure};
use wulffbez_core::mixed::{mixed_volume_of, mixed_volume_oracle, BodyTuple};
use wulffbez_core::wulff::{perturb, support_derivative, volume_mixed_derivative, wulff_shape, PerturbationSpec, Side};
use wulffbez_core::{convex_hull, format_scalar, parse_scalar, Direction, Point, Polytope};

/// Exit code for a violated verdict under `--expect-holds`.
pub const EXIT_VIOLATED: i32 = 2;
/// Exit code for input errors.
pub const EXIT_INPUT: i32 = 1;

#[derive(Parser, Debug)]
#[command(
    name = "wulffbez",
    version,
    about = "Exact mixed volumes, area measures, Wulff shapes and Bezout-type inequality checks"
)]
pub struct Cli {
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Convex hull of a point file `{ "n", "points" }` or of a body.
    Hull {
        #[arg(long)]
        points: Option<PathBuf>,
        #[arg(long = "K")]
        k: Option<String>,
    },
    /// Volume of a body.
    Volume {
        #[arg(long = "K")]
        k: String,
    },
    /// Mixed volume of `n` comma-separated bodies.
    Mixedvol {
        #[arg(long, value_delimiter = ',', required = true)]
        bodies: Vec<String>,
        /// Also evaluate the interpolation oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Surface area measure of `--K`, or mixed area measure of `n-1` bodies.
    Measure {
        #[arg(long = "K")]
        k: Option<String>,
        #[arg(long, value_delimiter = ',')]
        bodies: Vec<String>,
    },
    /// Wulff shape of a support spec file.
    Wulff {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Perturbed body `K_t`.
    Perturb {
        #[command(flatten)]
        p: PerturbArgs,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
    /// One-sided derivatives: support at `--u`, `V(K_t,K[n-1])` without `--u`,
    /// or `F(t)` when `--M` is given.
    Derivative {
        #[command(flatten)]
        p: PerturbArgs,
        #[arg(long, value_enum)]
        side: SideArg,
        #[arg(long, allow_hyphen_values = true)]
        u: Option<String>,
        #[arg(long = "M")]
        m: Option<String>,
        #[arg(long)]
        expect_holds: bool,
    },
    /// Evaluate one inequality instance.
    Check {
        #[arg(long)]
        form: String,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long = "K")]
        k: String,
        #[arg(long = "L", value_delimiter = ',', required = true)]
        l: Vec<String>,
        #[arg(long)]
        expect_holds: bool,
    },
    /// Random certification of `B_full` and `MAIN`.
    Certify {
        #[arg(long = "K")]
        k: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Per-instance rows as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        expect_holds: bool,
    },
    /// Bounded counterexample search.
    Search {
        #[arg(long = "K")]
        k: String,
        #[arg(long, value_enum, default_value_t = FamilyArg::Segments)]
        family: FamilyArg,
        #[arg(long, default_value_t = 1000)]
        budget: usize,
        #[arg(long)]
        expect_holds: bool,
    },
    /// Weak-decomposability witness search, or a check of a given `--M`.
    Witness {
        #[arg(long = "K")]
        k: String,
        #[arg(long = "M")]
        m: Option<String>,
        /// Comma-separated facet-move amounts.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        eps: Vec<String>,
        /// Also run the homothety chain for `M` up to this `r`.
        #[arg(long)]
        chain: Option<usize>,
    },
}

#[derive(Args, Debug)]
pub struct PerturbArgs {
    #[arg(long = "K")]
    k: String,
    /// Perturbation file in the support-spec layout.
    #[arg(long)]
    f: PathBuf,
    /// Translate `K` so its vertex centroid is the origin.
    #[arg(long)]
    center: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FamilyArg {
    Segments,
    Faces,
    Truncations,
    Boxes,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Segments => Family::Segments,
            FamilyArg::Faces => Family::Faces,
            FamilyArg::Truncations => Family::Truncations,
            FamilyArg::Boxes => Family::Boxes,
        }
    }
}

/// Report plus exit code.
#[derive(Debug)]
pub struct Outcome {
    pub report: Value,
    pub code: i32,
}

impl Outcome {
    fn ok(report: Value) -> Self {
        Outcome { report, code: 0 }
    }
}

/// Resolves `corpus:<name>` or a JSON file path.
pub fn load_body(spec: &str) -> Result<Polytope> {
    if let Some(name) = spec.strip_prefix("corpus:") {
        if let Some(dir) = std::env::var_os("WULFFBEZ_CORPUS_DIR") {
            let path = Path::new(&dir).join(format!("{name}.json"));
            if path.is_file() {
                return read_polytope(&path);
            }
        }
        return corpus::by_name(name).map_err(|e| anyhow!(e));
    }
    read_polytope(Path::new(spec))
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn read_json(path: &Path) -> Result<Value> {
    io::parse_value(&read_text(path)?).with_context(|| format!("in {}", path.display()))
}

fn read_polytope(path: &Path) -> Result<Polytope> {
    io::polytope_from_json(&read_json(path)?).with_context(|| format!("in {}", path.display()))
}

fn parse_direction(s: &str) -> Result<Direction> {
    let coords = s
        .split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| anyhow!("bad direction `{s}`")))
        .collect::<Result<Vec<_>>>()?;
    Ok(Direction::new(coords)?)
}

fn polytope_report(p: &Polytope) -> Value {
    let mut v = io::polytope_to_json(p);
    let facets: Vec<Value> = p
        .facets()
        .iter()
        .map(|f| {
            json!({
                "normal": io::direction_to_json(&f.normal),
                "offset": format_scalar(&f.offset),
                "coweight": format_scalar(&f.coweight),
            })
        })
        .collect();
    v["dim"] = json!(p.dim());
    v["volume"] = json!(format_scalar(p.volume()));
    v["facets"] = Value::Array(facets);
    v
}

fn perturbation(p: &PerturbArgs) -> Result<PerturbationSpec> {
    let k = load_body(&p.k)?;
    let f = io::perturbation_from_json(&read_json(&p.f)?)?;
    Ok(if p.center { PerturbationSpec::centered(&k, f)? } else { PerturbationSpec::new(k, f)? })
}

fn violated_code(expect_holds: bool, violated: bool) -> i32 {
    if expect_holds && violated {
        EXIT_VIOLATED
    } else {
        0
    }
}

fn write_csv(path: &Path, r: &CertifyReport) -> Result<()> {
    let mut w = csv::Writer::from_path(path).with_context(|| format!("cannot write {}", path.display()))?;
    w.write_record(["trial", "form", "lhs", "rhs", "verdict"])?;
    for row in &r.rows {
        w.write_record([
            row.trial.to_string(),
            row.form.id().to_string(),
            format_scalar(&row.lhs),
            format_scalar(&row.rhs),
            row.verdict.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Executes one parsed command.
pub fn execute(cmd: &Command) -> Result<Outcome> {
    Ok(match cmd {
        Command::Hull { points, k } => {
            let p = match (points, k) {
                (Some(path), None) => {
                    let v = read_json(path)?;
                    let n = v["n"].as_u64().ok_or_else(|| anyhow!("point file needs `n`"))? as usize;
                    let pts = v["points"]
                        .as_array()
                        .ok_or_else(|| anyhow!("point file needs `points`"))?
                        .iter()
                        .map(|row| {
                            row.as_array()
                                .ok_or_else(|| anyhow!("malformed point"))?
                                .iter()
                                .map(|x| io::scalar_from_json(x).map_err(|e| anyhow!(e)))
                                .collect::<Result<Point>>()
                        })
                        .collect::<Result<Vec<_>>>()?;
                    convex_hull(&pts, n)?
                }
                (None, Some(k)) => load_body(k)?,
                _ => bail!("give exactly one of --points or --K"),
            };
            Outcome::ok(polytope_report(&p))
        }
        Command::Volume { k } => {
            let p = load_body(k)?;
            Outcome::ok(json!({ "volume": format_scalar(p.volume()) }))
        }
        Command::Mixedvol { bodies, oracle } => {
            let ps = bodies.iter().map(|b| load_body(b)).collect::<Result<Vec<_>>>()?;
            let refs: Vec<&Polytope> = ps.iter().collect();
            let mv = mixed_volume_of(&refs)?;
            let mut v = json!({ "mixed_volume": format_scalar(&mv) });
            if *oracle {
                let o = mixed_volume_oracle(&BodyTuple::from_bodies(ps.clone()))?;
                v["oracle"] = json!(format_scalar(&o));
                v["agree"] = json!(o == mv);
            }
            Outcome::ok(v)
        }
        Command::Measure { k, bodies } => {
            let m = match (k, bodies.is_empty()) {
                (Some(k), true) => surface_area_measure(&load_body(k)?),
                (None, false) => {
                    let ps = bodies.iter().map(|b| load_body(b)).collect::<Result<Vec<_>>>()?;
                    mixed_area_measure(&ps.iter().collect::<Vec<_>>())?
                }
                _ => bail!("give exactly one of --K or --bodies"),
            };
            Outcome::ok(io::measure_to_json(&m))
        }
        Command::Wulff { spec } => {
            let s = io::spec_from_json(&read_json(spec)?)?;
            Outcome::ok(polytope_report(&wulff_shape(&s)?))
        }
        Command::Perturb { p, t } => {
            let spec = perturbation(p)?;
            let t = parse_scalar(t)?;
            Outcome::ok(polytope_report(&perturb(&spec, &t)?))
        }
        Command::Derivative { p, side, u, m, expect_holds } => {
            let spec = perturbation(p)?;
            let side = Side::from(*side);
            match (u, m) {
                (Some(u), None) => {
                    let r = support_derivative(&spec, &parse_direction(u)?, side, &[])?;
                    Outcome::ok(io::derivative_to_json(&r))
                }
                (None, None) => Outcome::ok(io::volume_derivative_to_json(&volume_mixed_derivative(&spec, side)?)),
                (None, Some(m)) => {
                    let r = derivative_probe(spec.base(), &load_body(m)?, spec.f(), side)?;
                    Outcome { code: violated_code(*expect_holds, r.violation_certified), report: io::probe_to_json(&r) }
                }
                (Some(_), Some(_)) => bail!("--u and --M are exclusive"),
            }
        }
        Command::Check { form, r, k, l, expect_holds } => {
            let form = InequalityForm::parse(form, *r)?;
            let k = load_body(k)?;
            let ls = l.iter().map(|b| load_body(b)).collect::<Result<Vec<_>>>()?;
            let rep = evaluate(form, &ls, &k)?;
            Outcome {
                code: violated_code(*expect_holds, rep.verdict == Verdict::Violated),
                report: io::report_to_json(&rep),
            }
        }
        Command::Certify { k, trials, seed, csv, expect_holds } => {
            let rep = simplex_certify(&load_body(k)?, *trials, *seed)?;
            if let Some(path) = csv {
                write_csv(path, &rep)?;
            }
            Outcome { code: violated_code(*expect_holds, rep.counts.violated > 0), report: io::certify_to_json(&rep) }
        }
        Command::Search { k, family, budget, expect_holds } => {
            let s = counterexample_search(&load_body(k)?, Family::from(*family), *budget)?;
            Outcome { code: violated_code(*expect_holds, s.report.is_some()), report: io::search_to_json(&s) }
        }
        Command::Witness { k, m, eps, chain } => {
            let k = load_body(k)?;
            match m {
                Some(m) => {
                    let m = load_body(m)?;
                    let mut v = io::witness_to_json(&check_witness(&k, &m)?);
                    if let Some(rmax) = chain {
                        let checks = (0..=*rmax)
                            .map(|r| Ok(io::chain_to_json(&homothet_chain_check(&k, &m, r)?)))
                            .collect::<Result<Vec<_>>>()?;
                        v["chain"] = Value::Array(checks);
                    }
                    Outcome::ok(v)
                }
                None => {
                    let eps = eps.iter().map(|e| parse_scalar(e)).collect::<Result<Vec<_>, _>>()?;
                    let s = weak_witness_search(&k, if eps.is_empty() { None } else { Some(&eps) })?;
                    Outcome::ok(json!({
                        "found": s.witness.is_some(),
                        "candidates": s.candidates,
                        "homothetic": s.homothetic,
                        "not_continuous": s.not_continuous,
                        "witness": s.witness.as_ref().map(io::witness_to_json),
                    }))
                }
            }
        }
    })
}

/// Parses `argv` (including the program name), runs the command and writes
/// the report. Returns the process exit code.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(outcome) => {
            let text = serde_json::to_string_pretty(&outcome.report).expect("serializable report") + "\n";
            match &cli.out {
                Some(path) => {
                    if let Err(e) = fs::write(path, text) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return EXIT_INPUT;
                    }
                }
                None => print!("{text}"),
            }
            outcome.code
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_INPUT
        }
    }
}
