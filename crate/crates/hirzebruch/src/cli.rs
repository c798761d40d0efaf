//! Command line entry points.
//!
//! Every subcommand prints one JSON report to stdout and encodes its
//! conclusion in the exit code:
//!
//! * 0: success, or the positivity question closed with "positive"
//! * 1: certified not positive, or a negative witness was found
//! * 2: inconclusive (a numeric check could not decide)
//! * 3: usage or input error
//!
//! Reports are byte for byte deterministic for a fixed seed; wall-clock
//! timings are only attached when --timings is passed.

use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::curvature::{certify_positive, pinching_with_certificate, CurvatureError, Verdict};
use crate::exactpoly::{format_rational, parse_rational, Rational};
use crate::intersect::{closed_form_coefficients, cone_report, intersection_numbers, IntersectError};
use crate::pointcurv::{
    flag_tensor, h_extrema, induced_curvature_at, orthogonal_bisectional_min,
    KahlerCurvatureTensor, PointCurvError,
};
use crate::profile::{
    anyclass_profile, candidate_params, construct_positive_profile, hitchin_profile,
    kahler_class_of, path_between, quartic_profile, validate_profile, AnyClassParams,
    GeneratingProfile, ProfileError,
};
use crate::soliton::{
    compact_alpha, compact_soliton, conjecture_sweep, fik_alpha, fik_soliton, soliton_h_positive,
    soliton_profile, SolitonError, SolitonKind,
};

pub const EXIT_POSITIVE: i32 = 0;
pub const EXIT_NOT_POSITIVE: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

const DEFAULT_ROOT_TOL: f64 = 1e-9;
const DEFAULT_PINCH_TOL: f64 = 1e-6;

/// What one invocation produced: exit code plus the exact bytes for the
/// two output streams. Kept as data so tests can drive the CLI without
/// spawning processes.
#[derive(Debug)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(
    name = "hirzebruch",
    version,
    about = "Positivity certificates, pinching constants, solitons and pointwise \
             curvature for circle-symmetric metrics on projectivized line bundles",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    global: GlobalOpts,
}

#[derive(Args, Debug, Clone)]
struct GlobalOpts {
    /// Seed for every sampling-based search
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Numeric tolerance override (defaults: 1e-9 for root solves,
    /// 1e-6 for pinching scans)
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Worker thread cap for parallel scans (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Attach wall-clock timings to the report (off by default so that
    /// output is reproducible byte for byte)
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Build a named family member and store it as a profile JSON file
    Family {
        #[command(subcommand)]
        which: FamilyCmd,
    },
    /// Check the boundary, slope and interior conditions of a stored profile
    Validate {
        /// Profile JSON file
        #[arg(short, long)]
        profile: PathBuf,
    },
    /// Certify H > 0 for a stored profile with exact sign counts
    Certify {
        /// Profile JSON file
        #[arg(short, long)]
        profile: PathBuf,
    },
    /// Pinching constants of a certified-positive stored profile
    Pinch {
        /// Profile JSON file
        #[arg(short, long)]
        profile: PathBuf,
        /// Headline the global quotient min H / max H instead of the
        /// pointwise one
        #[arg(long)]
        global: bool,
    },
    /// Search for a certified-positive profile in the class [-c, c]
    Construct {
        /// Base dimension (fiber CP^1 over CP^(n-1))
        #[arg(long)]
        n: u32,
        /// Twisting degree of the projectivized bundle
        #[arg(long)]
        k: u32,
        /// Half-width of the moment interval, a rational in (0, n/k)
        #[arg(long)]
        c: String,
        /// Write the found profile here
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Connect two positive profiles by a chain of certified steps
    Path {
        /// Left endpoint profile JSON file
        #[arg(long)]
        from: PathBuf,
        /// Right endpoint profile JSON file
        #[arg(long)]
        to: PathBuf,
        /// Minimum number of certified interpolation steps
        #[arg(long, default_value_t = 8)]
        steps: u32,
    },
    /// Soliton construction and the exact coefficient-window sweep
    Soliton {
        #[command(subcommand)]
        which: SolitonCmd,
    },
    /// Pointwise holomorphic sectional curvature reports
    Point {
        #[command(subcommand)]
        which: PointCmd,
    },
    /// Scan the Kahler cone of a bidegree (p, 1) hypersurface for
    /// classes with negative total scalar coefficient
    Cone {
        /// Projective factors CP^r x CP^s with r >= s >= 2
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
        /// Bidegree (p, 1) of the hypersurface
        #[arg(long)]
        p: u32,
    },
}

#[derive(Subcommand, Debug)]
enum FamilyCmd {
    /// phi = c - U^2/c on [-c, c]
    Hitchin {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        /// Half-width of the moment interval, rational
        #[arg(long)]
        c: String,
        /// Write the profile here
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Degree-4 profile (1 - U^2/c^2)(c mu + (1 - mu) U^2 / c) on [-c, c]
    Quartic {
        #[arg(long)]
        c: String,
        /// Midpoint shape parameter, rational in (1/2, 1]
        #[arg(long)]
        mu: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Degree-2p profile in the class [-c, c]; free parameters default
    /// to the midpoints of their admissible ranges
    Anyclass {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        c: String,
        /// Half the polynomial degree, at least 2
        #[arg(long)]
        p: u32,
        /// Slack in the slope conditions, rational
        #[arg(long)]
        delta1: Option<String>,
        /// Slack in the midpoint condition, rational
        #[arg(long)]
        delta2: Option<String>,
        /// Quadratic coefficient, rational
        #[arg(long)]
        alpha2: Option<String>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum SolitonCmd {
    /// The closed shrinking soliton on the compactified bundle
    Compact {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
    },
    /// The complete shrinking soliton on the open bundle
    Fik {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
    },
    /// Exact window table alpha0 < alpha < k+1 over a parameter grid
    Sweep {
        /// Largest base dimension n
        #[arg(long, default_value_t = 50)]
        nmax: u32,
        /// Largest twist k
        #[arg(long, default_value_t = 10)]
        kmax: u32,
    },
}

#[derive(Subcommand, Debug)]
enum PointCmd {
    /// The incidence three-fold with its closed-form curvature tensor
    Flag {
        /// Unit-sphere samples for the extrema search
        #[arg(long, default_value_t = 2000)]
        samples: usize,
    },
    /// Finite-difference curvature of a bidegree (p, 1) hypersurface in
    /// CP^r x CP^s, in the affine chart around the given point
    Hypersurface {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        p: u32,
        /// Chart coordinates as comma-separated re,im pairs
        /// (2(r+s-1) floats); the origin when omitted
        #[arg(long)]
        at: Option<String>,
        /// Finite-difference step, in [1e-4, 1e-2]
        #[arg(long, default_value_t = 1e-3)]
        step: f64,
        /// Unit-sphere samples for the extrema search
        #[arg(long, default_value_t = 2000)]
        samples: usize,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn inconclusive(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INCONCLUSIVE,
            message: message.into(),
        }
    }

    fn not_positive(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_NOT_POSITIVE,
            message: message.into(),
        }
    }
}

impl From<ProfileError> for Failure {
    fn from(e: ProfileError) -> Self {
        match e {
            ProfileError::SearchExhausted(_) => Failure::inconclusive(e.to_string()),
            ProfileError::CertificationFailed(_) => Failure::not_positive(e.to_string()),
            _ => Failure::usage(e.to_string()),
        }
    }
}

impl From<SolitonError> for Failure {
    fn from(e: SolitonError) -> Self {
        match e {
            SolitonError::OutOfRange(_) => Failure::usage(e.to_string()),
            _ => Failure::inconclusive(e.to_string()),
        }
    }
}

impl From<IntersectError> for Failure {
    fn from(e: IntersectError) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<PointCurvError> for Failure {
    fn from(e: PointCurvError) -> Self {
        match e {
            PointCurvError::StepCheckFailed(_) => Failure::inconclusive(e.to_string()),
            _ => Failure::usage(e.to_string()),
        }
    }
}

/// Runs the CLI on a full argv (binary name included, as in
/// std::env::args) and returns what the process would print and exit
/// with. This is the single entry point; main() only forwards to it.
pub fn run(argv: &[String]) -> RunOutput {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => RunOutput {
                    code: 0,
                    stdout: rendered,
                    stderr: String::new(),
                },
                _ => RunOutput {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: rendered,
                },
            };
        }
    };
    if let Some(jobs) = cli.global.jobs {
        // global pool setup fails if already configured; later calls in
        // the same process just keep the first configuration
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    let started = Instant::now();
    let name = command_name(&cli.cmd);
    let (code, mut report) = match execute(&cli) {
        Ok((code, report)) => (code, report),
        Err(f) => {
            let verdict = if f.code == EXIT_INCONCLUSIVE {
                "inconclusive"
            } else {
                "error"
            };
            (
                f.code,
                json!({
                    "command": name,
                    "error": f.message,
                    "verdict": verdict,
                }),
            )
        }
    };
    decorate(&mut report, &cli.global, started);
    RunOutput {
        code,
        stdout: serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
        stderr: String::new(),
    }
}

fn command_name(cmd: &Cmd) -> &'static str {
    match cmd {
        Cmd::Family { .. } => "family",
        Cmd::Validate { .. } => "validate",
        Cmd::Certify { .. } => "certify",
        Cmd::Pinch { .. } => "pinch",
        Cmd::Construct { .. } => "construct",
        Cmd::Path { .. } => "path",
        Cmd::Soliton { .. } => "soliton",
        Cmd::Point { .. } => "point",
        Cmd::Cone { .. } => "cone",
    }
}

/// Stamps the shared trailer fields onto a report.
fn decorate(report: &mut Value, global: &GlobalOpts, started: Instant) {
    let obj = report.as_object_mut().expect("reports are objects");
    obj.insert(
        "tool".into(),
        json!({"name": "hirzebruch", "version": env!("CARGO_PKG_VERSION")}),
    );
    obj.insert("seed".into(), json!(global.seed));
    if global.timings {
        obj.insert(
            "timings_ms".into(),
            json!({"total": started.elapsed().as_secs_f64() * 1e3}),
        );
    }
}

fn execute(cli: &Cli) -> Result<(i32, Value), Failure> {
    let g = &cli.global;
    match &cli.cmd {
        Cmd::Family { which } => run_family(which),
        Cmd::Validate { profile } => run_validate(profile),
        Cmd::Certify { profile } => run_certify(profile),
        Cmd::Pinch { profile, global } => run_pinch(profile, *global, g),
        Cmd::Construct { n, k, c, out } => run_construct(*n, *k, c, out.as_deref()),
        Cmd::Path { from, to, steps } => run_path(from, to, *steps),
        Cmd::Soliton { which } => run_soliton(which, g),
        Cmd::Point { which } => run_point(which, g),
        Cmd::Cone { r, s, p } => run_cone(*r, *s, *p),
    }
}

fn parse_rat_arg(name: &str, text: &str) -> Result<Rational, Failure> {
    parse_rational(text).map_err(|e| Failure::usage(format!("--{name} {text:?}: {e}")))
}

fn read_profile(path: &std::path::Path) -> Result<GeneratingProfile, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::usage(format!("{} is not a stored profile: {e}", path.display())))
}

fn write_json(path: &std::path::Path, value: &Value) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("profile serializes") + "\n";
    fs::write(path, text).map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))
}

fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::Positive => EXIT_POSITIVE,
        Verdict::NotPositive => EXIT_NOT_POSITIVE,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Positive => "positive",
        Verdict::NotPositive => "not-positive",
        Verdict::Inconclusive => "inconclusive",
    }
}

fn run_family(which: &FamilyCmd) -> Result<(i32, Value), Failure> {
    let (label, inputs, profile, out) = match which {
        FamilyCmd::Hitchin { n, k, c, out } => {
            let cr = parse_rat_arg("c", c)?;
            let profile = hitchin_profile(*n, *k, &cr)?;
            (
                "hitchin",
                json!({"n": n, "k": k, "c": format_rational(&cr)}),
                profile,
                out.as_deref(),
            )
        }
        FamilyCmd::Quartic { c, mu, out } => {
            let cr = parse_rat_arg("c", c)?;
            let mur = parse_rat_arg("mu", mu)?;
            let profile = quartic_profile(&cr, &mur)?;
            (
                "quartic",
                json!({"c": format_rational(&cr), "mu": format_rational(&mur)}),
                profile,
                out.as_deref(),
            )
        }
        FamilyCmd::Anyclass {
            n,
            k,
            c,
            p,
            delta1,
            delta2,
            alpha2,
            out,
        } => {
            let cr = parse_rat_arg("c", c)?;
            let params = match (delta1, delta2, alpha2) {
                (None, None, None) => candidate_params(*n, *k, &cr, *p)?,
                (Some(d1), Some(d2), Some(a2)) => AnyClassParams::derive(
                    *n,
                    *k,
                    &cr,
                    *p,
                    &parse_rat_arg("delta1", d1)?,
                    &parse_rat_arg("delta2", d2)?,
                    &parse_rat_arg("alpha2", a2)?,
                )?,
                _ => {
                    return Err(Failure::usage(
                        "give all of --delta1, --delta2, --alpha2 or none of them",
                    ))
                }
            };
            let profile = anyclass_profile(*n, *k, &cr, &params)?;
            (
                "anyclass",
                json!({
                    "n": n,
                    "k": k,
                    "c": format_rational(&cr),
                    "params": serde_json::to_value(&params).expect("params serialize"),
                }),
                profile,
                out.as_deref(),
            )
        }
    };
    let validation = validate_profile(&profile);
    let class = kahler_class_of(&profile)?;
    let profile_json = serde_json::to_value(&profile).expect("profile serializes");
    if let Some(path) = out {
        write_json(path, &profile_json)?;
    }
    let report = json!({
        "command": "family",
        "family": label,
        "inputs": inputs,
        "profile": profile_json,
        "valid": validation.ok,
        "kahler_class": serde_json::to_value(&class).expect("class serializes"),
        "written": out.map(|p| p.display().to_string()),
        "verdict": "success",
    });
    Ok((EXIT_POSITIVE, report))
}

fn run_validate(path: &std::path::Path) -> Result<(i32, Value), Failure> {
    let profile = read_profile(path)?;
    let validation = validate_profile(&profile);
    let code = if validation.ok {
        EXIT_POSITIVE
    } else {
        EXIT_NOT_POSITIVE
    };
    let report = json!({
        "command": "validate",
        "inputs": {"profile": path.display().to_string()},
        "ok": validation.ok,
        "summary": validation.summary(),
        "violations": serde_json::to_value(&validation.violations).expect("violations serialize"),
        "verdict": if validation.ok { "valid" } else { "invalid" },
    });
    Ok((code, report))
}

fn run_certify(path: &std::path::Path) -> Result<(i32, Value), Failure> {
    let profile = read_profile(path)?;
    let cert = certify_positive(&profile);
    let report = json!({
        "command": "certify",
        "inputs": {"profile": path.display().to_string()},
        "certificate": serde_json::to_value(&cert).expect("certificate serializes"),
        "verdict": verdict_str(cert.verdict),
    });
    Ok((verdict_code(cert.verdict), report))
}

fn run_pinch(path: &std::path::Path, headline_global: bool, g: &GlobalOpts) -> Result<(i32, Value), Failure> {
    let profile = read_profile(path)?;
    let tol = g.tol.unwrap_or(DEFAULT_PINCH_TOL);
    match pinching_with_certificate(&profile, tol) {
        Ok((pinching, cert)) => {
            let headline = if headline_global {
                pinching.global_constant
            } else {
                pinching.local_constant
            };
            let report = json!({
                "command": "pinch",
                "inputs": {
                    "profile": path.display().to_string(),
                    "scope": if headline_global { "global" } else { "local" },
                    "tol": tol,
                },
                "pinching_constant": headline,
                "pinching": serde_json::to_value(&pinching).expect("report serializes"),
                "certificate": serde_json::to_value(&cert).expect("certificate serializes"),
                "verdict": "positive",
            });
            Ok((EXIT_POSITIVE, report))
        }
        Err(CurvatureError::NotPositive(_)) => {
            // rerun for the full certificate so the refusal is explained
            let cert = certify_positive(&profile);
            let report = json!({
                "command": "pinch",
                "inputs": {"profile": path.display().to_string(), "tol": tol},
                "certificate": serde_json::to_value(&cert).expect("certificate serializes"),
                "verdict": verdict_str(cert.verdict),
            });
            Ok((verdict_code(cert.verdict), report))
        }
        Err(e) => Err(Failure::usage(e.to_string())),
    }
}

fn run_construct(n: u32, k: u32, c: &str, out: Option<&std::path::Path>) -> Result<(i32, Value), Failure> {
    let cr = parse_rat_arg("c", c)?;
    let (profile, cert) = construct_positive_profile(n, k, &cr)?;
    let class = kahler_class_of(&profile)?;
    let profile_json = serde_json::to_value(&profile).expect("profile serializes");
    if let Some(path) = out {
        write_json(path, &profile_json)?;
    }
    let report = json!({
        "command": "construct",
        "inputs": {"n": n, "k": k, "c": format_rational(&cr)},
        "profile": profile_json,
        "degree": profile.phi.degree(),
        "certificate": serde_json::to_value(&cert).expect("certificate serializes"),
        "kahler_class": serde_json::to_value(&class).expect("class serializes"),
        "written": out.map(|p| p.display().to_string()),
        "verdict": verdict_str(cert.verdict),
    });
    Ok((verdict_code(cert.verdict), report))
}

fn run_path(from: &std::path::Path, to: &std::path::Path, steps: u32) -> Result<(i32, Value), Failure> {
    let p1 = read_profile(from)?;
    let p2 = read_profile(to)?;
    let chain = path_between(&p1, &p2, steps)?;
    let legs: Vec<Value> = chain
        .iter()
        .enumerate()
        .map(|(i, (prof, cert))| {
            let ratio = kahler_class_of(prof)
                .map(|cl| format_rational(&cl.ratio()))
                .unwrap_or_else(|_| "undefined".into());
            json!({
                "index": i,
                "degree": prof.phi.degree(),
                "kahler_ratio": ratio,
                "verdict": verdict_str(cert.verdict),
                "method": serde_json::to_value(&cert.method).expect("method serializes"),
            })
        })
        .collect();
    let all_positive = chain.iter().all(|(_, cert)| cert.is_positive());
    let report = json!({
        "command": "path",
        "inputs": {
            "from": from.display().to_string(),
            "to": to.display().to_string(),
            "steps": steps,
        },
        "certified_steps": chain.len(),
        "all_positive": all_positive,
        "legs": legs,
        "verdict": if all_positive { "positive" } else { "not-positive" },
    });
    let code = if all_positive {
        EXIT_POSITIVE
    } else {
        EXIT_NOT_POSITIVE
    };
    Ok((code, report))
}

fn run_soliton(which: &SolitonCmd, g: &GlobalOpts) -> Result<(i32, Value), Failure> {
    match which {
        SolitonCmd::Compact { n, k } | SolitonCmd::Fik { n, k } => {
            let kind = match which {
                SolitonCmd::Compact { .. } => SolitonKind::Compact,
                _ => SolitonKind::Fik,
            };
            // --tol overrides the root solve; the default builders use
            // a tighter internal tolerance than the documented 1e-9
            let sol = match (kind, g.tol) {
                (SolitonKind::Compact, None) => compact_soliton(*n, *k)?,
                (SolitonKind::Fik, None) => fik_soliton(*n, *k)?,
                (SolitonKind::Compact, Some(tol)) => {
                    let alpha = compact_alpha(*n, *k, tol.max(DEFAULT_ROOT_TOL * 1e-3))?;
                    let mut s = soliton_profile(*n, *k, alpha, kind)?;
                    s.alpha_err = tol;
                    s
                }
                (SolitonKind::Fik, Some(tol)) => {
                    let alpha = fik_alpha(*n, *k, tol.max(DEFAULT_ROOT_TOL * 1e-3))?;
                    let mut s = soliton_profile(*n, *k, alpha, kind)?;
                    s.alpha_err = tol;
                    s
                }
            };
            let h = soliton_h_positive(*n, *k, kind)?;
            let report = json!({
                "command": "soliton",
                "inputs": {
                    "kind": serde_json::to_value(kind).expect("kind serializes"),
                    "n": n,
                    "k": k,
                },
                "alpha": sol.alpha,
                "alpha_err": sol.alpha_err,
                "ode_residual": sol.residual,
                "h_report": serde_json::to_value(&h).expect("report serializes"),
                "verdict": verdict_str(h.certificate.verdict),
            });
            Ok((verdict_code(h.certificate.verdict), report))
        }
        SolitonCmd::Sweep { nmax, kmax } => {
            let rows = conjecture_sweep(*nmax, *kmax)?;
            let in_window = rows.iter().all(|r| r.holds);
            let above_k = rows.iter().all(|r| r.alpha_gt_k);
            let ok = in_window && above_k;
            let report = json!({
                "command": "soliton",
                "inputs": {"kind": "sweep", "nmax": nmax, "kmax": kmax},
                "rows": rows.len(),
                "all_in_window": in_window,
                "all_above_k": above_k,
                "table": serde_json::to_value(&rows).expect("rows serialize"),
                "verdict": if ok { "positive" } else { "not-positive" },
            });
            let code = if ok { EXIT_POSITIVE } else { EXIT_NOT_POSITIVE };
            Ok((code, report))
        }
    }
}

/// Shared tail of the point subcommands: extrema, the orthogonal
/// bisectional minimum and the framed Ricci matrix of a tensor.
fn tensor_summary(t: &KahlerCurvatureTensor, samples: usize, seed: u64) -> Value {
    let extrema = h_extrema(t, samples, 300, seed);
    let obm = orthogonal_bisectional_min(t, samples, seed);
    let m = t.dim();
    let ricci: Vec<Vec<[f64; 2]>> = (0..m)
        .map(|a| {
            (0..m)
                .map(|b| {
                    let r = t.ricci(a, b);
                    [r.re, r.im]
                })
                .collect()
        })
        .collect();
    let pinching = if extrema.max > 0.0 { Some(extrema.min / extrema.max) } else { None };
    json!({
        "dim": m,
        "h_extrema": serde_json::to_value(&extrema).expect("extrema serialize"),
        "pinching_sampled": pinching,
        "orthogonal_bisectional_min": obm,
        "ricci": ricci,
    })
}

fn run_point(which: &PointCmd, g: &GlobalOpts) -> Result<(i32, Value), Failure> {
    match which {
        PointCmd::Flag { samples } => {
            let t = flag_tensor();
            let report = json!({
                "command": "point",
                "inputs": {"space": "flag", "samples": samples},
                "curvature": tensor_summary(&t, *samples, g.seed),
                "tensor": serde_json::to_value(&t).expect("tensor serializes"),
                "verdict": "success",
            });
            Ok((EXIT_POSITIVE, report))
        }
        PointCmd::Hypersurface {
            r,
            s,
            p,
            at,
            step,
            samples,
        } => {
            let m = r + s - 1;
            let point = match at {
                None => vec![Complex64::new(0.0, 0.0); m],
                Some(text) => parse_point(text, m)?,
            };
            let t = induced_curvature_at(*r, *s, *p, &point, *step)?;
            let at_echo: Vec<[f64; 2]> = point.iter().map(|z| [z.re, z.im]).collect();
            let report = json!({
                "command": "point",
                "inputs": {
                    "space": "hypersurface",
                    "r": r,
                    "s": s,
                    "p": p,
                    "at": at_echo,
                    "step": step,
                    "samples": samples,
                },
                "curvature": tensor_summary(&t, *samples, g.seed),
                "tensor": serde_json::to_value(&t).expect("tensor serializes"),
                "verdict": "success",
            });
            Ok((EXIT_POSITIVE, report))
        }
    }
}

fn parse_point(text: &str, m: usize) -> Result<Vec<Complex64>, Failure> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 2 * m {
        return Err(Failure::usage(format!(
            "--at needs {} comma-separated floats (re,im pairs for {m} chart coordinates), got {}",
            2 * m,
            parts.len()
        )));
    }
    let mut vals = Vec::with_capacity(2 * m);
    for part in parts {
        let v: f64 = part
            .parse()
            .map_err(|e| Failure::usage(format!("--at entry {part:?}: {e}")))?;
        vals.push(v);
    }
    Ok(vals.chunks(2).map(|c| Complex64::new(c[0], c[1])).collect())
}

fn run_cone(r: usize, s: usize, p: u32) -> Result<(i32, Value), Failure> {
    let ring = intersection_numbers(r, s, p)?;
    let coeffs = closed_form_coefficients(r, s, p)?;
    let (c1a, c1b) = ring.c1_coefficients();
    let numbers: Vec<String> = (0..=ring.n())
        .map(|i| ring.intersection_number(i).to_string())
        .collect();
    let rep = cone_report(r, s, p)?;
    let found = rep.witness.is_some();
    let report = json!({
        "command": "cone",
        "inputs": {"r": r, "s": s, "p": p},
        "intersection_numbers": numbers,
        "c1": [c1a.to_string(), c1b.to_string()],
        "scalar_coefficients": [
            coeffs[0].to_string(),
            coeffs[1].to_string(),
            coeffs[2].to_string(),
        ],
        "witness": serde_json::to_value(&rep).expect("report serializes"),
        "verdict": if found { "negative-witness-found" } else { "no-negative-class" },
    });
    let code = if found { EXIT_NOT_POSITIVE } else { EXIT_POSITIVE };
    Ok((code, report))
}
