//! conekit: polytope functionals, continuation, and Reeb cone data from the
//! command line.
//!
//! Subcommands: extremal | eval | continue | cone | verify.
//! Exit codes: 0 success, 2 input error, 3 numerical failure,
//! 4 continuation stalled, 5 wrong sign.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Args, Parser, Subcommand};

use conekit_core::{
    cone_construct, continuation_observed, report_sasaki_metadata, verify, AffineFunction,
    ConeConfig, ConeMode, Error as CoreError, Functionals, LabelledPolytope, QuadratureSpec, Sign,
    SolverConfig, WeightParams,
};

const EXIT_INPUT: u8 = 2;
const EXIT_NUMERIC: u8 = 3;
const EXIT_STALLED: u8 = 4;
const EXIT_WRONG_SIGN: u8 = 5;

#[derive(Parser)]
#[command(
    name = "conekit",
    version,
    about = "Momentum-polytope functionals and Reeb cone data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// Polytope JSON file.
    #[arg(long)]
    polytope: PathBuf,
    /// Gauss points per axis.
    #[arg(long, default_value_t = 8)]
    gauss_points: usize,
    /// Quadrature refinement tolerance.
    #[arg(long, default_value_t = 1e-11)]
    refine_tol: f64,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the extremal affine function of a polytope.
    Extremal {
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Evaluate the functionals at given parameters and affine function.
    Eval {
        #[command(flatten)]
        common: CommonOpts,
        /// eps parameter (lambda = 1/eps).
        #[arg(long, allow_hyphen_values = true)]
        eps: Option<f64>,
        /// lambda parameter (alternative to --eps).
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<f64>,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        b: f64,
        /// Gradient of the affine argument, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        xi: Option<String>,
        /// Constant of the affine argument.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        ell_c: f64,
    },
    /// Follow the continuation path to a target (eps, a); emits a CSV trace.
    Continue {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long, allow_hyphen_values = true)]
        eps: f64,
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, default_value_t = 16)]
        steps: usize,
        /// Newton gradient tolerance.
        #[arg(long, default_value_t = 1e-10)]
        tol_grad: f64,
    },
    /// Build the Reeb cone data over a product with a large factor.
    Cone {
        #[command(flatten)]
        common: CommonOpts,
        /// Base complex dimension (must match the polytope dimension).
        #[arg(long)]
        n: u32,
        /// Projective factor dimension (positive-sign mode).
        #[arg(long)]
        k: Option<u32>,
        /// Total dimension N (genus mode, with --genus).
        #[arg(long = "N")]
        big_n: Option<u32>,
        /// Curve genus (genus mode, with --N).
        #[arg(long)]
        genus: Option<u32>,
        /// Sweep k over an inclusive range LO:HI and report k0.
        #[arg(long)]
        k_sweep: Option<String>,
        /// Worker threads for sweeps.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = 16)]
        steps: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol_grad: f64,
        /// Expected sign of the transversal constant (defaults by mode).
        #[arg(long)]
        sign: Option<String>,
    },
    /// Run the invariant suites (CONEKIT_SEED fixes the sampling).
    Verify {
        /// Write the report here as well as stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        let code = if e.is_input_error() {
            EXIT_INPUT
        } else if matches!(e, CoreError::ContinuationStalled { .. }) {
            EXIT_STALLED
        } else {
            EXIT_NUMERIC
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("conekit: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Extremal { common } => cmd_extremal(&common),
        Command::Eval {
            common,
            eps,
            lambda,
            a,
            b,
            xi,
            ell_c,
        } => cmd_eval(&common, eps, lambda, a, b, xi.as_deref(), ell_c),
        Command::Continue {
            common,
            eps,
            a,
            steps,
            tol_grad,
        } => cmd_continue(&common, eps, a, steps, tol_grad),
        Command::Cone {
            common,
            n,
            k,
            big_n,
            genus,
            k_sweep,
            jobs,
            steps,
            tol_grad,
            sign,
        } => cmd_cone(
            &common,
            n,
            k,
            big_n,
            genus,
            k_sweep.as_deref(),
            jobs,
            steps,
            tol_grad,
            sign.as_deref(),
        ),
        Command::Verify { out } => cmd_verify(out.as_deref()),
    }
}

fn load_polytope(path: &Path) -> Result<LabelledPolytope, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    Ok(LabelledPolytope::from_json_str(&text)?)
}

fn quadrature(common: &CommonOpts) -> QuadratureSpec {
    QuadratureSpec::gauss(common.gauss_points, common.refine_tol)
}

fn solver_config(tol_grad: f64) -> Result<SolverConfig, Failure> {
    if tol_grad <= 0.0 {
        return Err(Failure::input("--tol-grad must be positive"));
    }
    Ok(SolverConfig {
        gradient_tolerance: tol_grad,
        ..SolverConfig::default()
    })
}

fn emit(out: Option<&Path>, content: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{content}");
            Ok(())
        }
    }
}

fn config_value(common: &CommonOpts, extra: &[(&str, serde_json::Value)]) -> serde_json::Value {
    let mut map = serde_json::Map::new();
    map.insert(
        "polytope".into(),
        serde_json::Value::String(common.polytope.display().to_string()),
    );
    map.insert("gauss_points".into(), common.gauss_points.into());
    map.insert(
        "refine_tol".into(),
        serde_json::Number::from_f64(common.refine_tol)
            .expect("finite tolerance")
            .into(),
    );
    for (key, value) in extra {
        map.insert((*key).into(), value.clone());
    }
    serde_json::Value::Object(map)
}

/// Serializes `data` with a leading "config" key for reproducibility.
fn with_config(config: serde_json::Value, data: serde_json::Value) -> String {
    let mut map = serde_json::Map::new();
    map.insert("config".into(), config);
    if let serde_json::Value::Object(fields) = data {
        for (k, v) in fields {
            map.insert(k, v);
        }
    }
    serde_json::to_string_pretty(&serde_json::Value::Object(map)).expect("serializable")
}

fn cmd_extremal(common: &CommonOpts) -> Result<u8, Failure> {
    let p = load_polytope(&common.polytope)?;
    let f = Functionals::with_quadrature(&p, quadrature(common))?;
    let ext = f.extremal_affine()?;
    let json = with_config(
        config_value(common, &[]),
        serde_json::to_value(&ext).expect("serializable"),
    );
    emit(common.out.as_deref(), &json)?;
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_eval(
    common: &CommonOpts,
    eps: Option<f64>,
    lambda: Option<f64>,
    a: f64,
    b: f64,
    xi: Option<&str>,
    ell_c: f64,
) -> Result<u8, Failure> {
    let p = load_polytope(&common.polytope)?;
    let f = Functionals::with_quadrature(&p, quadrature(common))?;
    let gradient = match xi {
        None => vec![0.0; p.dim()],
        Some(text) => {
            let parsed: Result<Vec<f64>, _> =
                text.split(',').map(|t| t.trim().parse::<f64>()).collect();
            let parsed = parsed.map_err(|e| Failure::input(format!("bad --xi value: {e}")))?;
            if parsed.len() != p.dim() {
                return Err(Failure::input(format!(
                    "--xi has {} entries but the polytope has dimension {}",
                    parsed.len(),
                    p.dim()
                )));
            }
            parsed
        }
    };
    let ell = AffineFunction::new(gradient, ell_c);
    let lambda = match (lambda, eps) {
        (Some(_), Some(_)) => {
            return Err(Failure::input("--lambda and --eps are mutually exclusive"))
        }
        (Some(l), None) => l,
        (None, Some(e)) => {
            if e == 0.0 {
                return Err(Failure::input("--eps 0 has no lambda counterpart"));
            }
            1.0 / e
        }
        (None, None) => 0.0,
    };
    let params = WeightParams::lambda(lambda, a, b);
    let s_a = f.s_functional(a, &ell)?;
    let v_a = f.v_functional(a, &ell)?;
    let eh = f.einstein_hilbert(&params, &ell)?;
    let c = f.c_coeff(lambda, a, &ell)?;
    let d = f.d_coeff(lambda, a, &ell)?;
    let margin = conekit_core::domain_margin(&p, a, &ell);
    let eh_tilde = match eps {
        Some(e) => match f.einstein_hilbert_rescaled(e, a, b, &ell) {
            Ok(v) => Some(v),
            Err(CoreError::NonNormalizedInput { .. }) => None,
            Err(err) => return Err(err.into()),
        },
        None => None,
    };
    let data = serde_json::json!({
        "lambda": lambda,
        "a": a,
        "b": b,
        "ell": ell,
        "s_a": s_a,
        "v_a": v_a,
        "eh": eh,
        "eh_tilde": eh_tilde,
        "c": c,
        "d": d,
        "domain_margin": margin,
    });
    let json = with_config(config_value(common, &[]), data);
    emit(common.out.as_deref(), &json)?;
    Ok(0)
}

fn cmd_continue(
    common: &CommonOpts,
    eps: f64,
    a: f64,
    steps: usize,
    tol_grad: f64,
) -> Result<u8, Failure> {
    let p = load_polytope(&common.polytope)?;
    let f = Functionals::with_quadrature(&p, quadrature(common))?;
    let cfg = solver_config(tol_grad)?;
    let r = p.dim();
    let mut trace = String::new();
    trace.push_str("# conekit continue trace\n");
    trace.push_str(&format!("# polytope={}\n", common.polytope.display()));
    trace.push_str(&format!(
        "# eps_target={eps}\n# a_target={a}\n# steps={steps}\n"
    ));
    trace.push_str(&format!(
        "# tol_grad={tol_grad}\n# gauss_points={}\n# refine_tol={}\n",
        common.gauss_points, common.refine_tol
    ));
    let xi_cols: Vec<String> = (1..=r).map(|i| format!("xi_{i}")).collect();
    trace.push_str(&format!(
        "step,eps,a,b,{},c,grad_residual,futaki_const_residual\n",
        xi_cols.join(",")
    ));
    let mut index = 0usize;
    let result = continuation_observed(&f, (eps, a), steps, &cfg, &mut |step| {
        index += 1;
        let rep = &step.report;
        let xi: Vec<String> = rep.ell.gradient.iter().map(|g| format!("{g}")).collect();
        let fut_const = rep.futaki_residuals.last().copied().unwrap_or(f64::NAN);
        trace.push_str(&format!(
            "{index},{},{},{},{},{},{},{}\n",
            step.eps,
            step.a,
            rep.b,
            xi.join(","),
            rep.ell.constant,
            rep.gradient_residual,
            fut_const
        ));
    });
    match result {
        Ok(_) => {
            emit(common.out.as_deref(), trace.trim_end())?;
            Ok(0)
        }
        Err(e @ CoreError::ContinuationStalled { .. }) => {
            trace.push_str(&format!("# stalled: {e}\n"));
            emit(common.out.as_deref(), trace.trim_end())?;
            eprintln!("conekit: {e}");
            Ok(EXIT_STALLED)
        }
        Err(e) => Err(e.into()),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_cone(
    common: &CommonOpts,
    n: u32,
    k: Option<u32>,
    big_n: Option<u32>,
    genus: Option<u32>,
    k_sweep: Option<&str>,
    jobs: usize,
    steps: usize,
    tol_grad: f64,
    sign: Option<&str>,
) -> Result<u8, Failure> {
    let p = load_polytope(&common.polytope)?;
    let f = Functionals::with_quadrature(&p, quadrature(common))?;
    let cfg = ConeConfig {
        steps,
        solver: solver_config(tol_grad)?,
        ..ConeConfig::default()
    };
    let target_sign = match sign {
        Some("positive") => Some(Sign::Positive),
        Some("negative") => Some(Sign::Negative),
        Some(other) => {
            return Err(Failure::input(format!(
                "--sign must be positive or negative, got {other}"
            )))
        }
        None => None,
    };

    if let Some(range) = k_sweep {
        return cmd_cone_sweep(common, &f, n, range, jobs, &cfg);
    }

    let (mode, default_sign) = match (k, big_n, genus) {
        (Some(k), None, None) => (ConeMode::Product { k }, Sign::Positive),
        (None, Some(nn), Some(g)) => (
            ConeMode::Genus {
                big_n: nn,
                genus: g,
            },
            Sign::Negative,
        ),
        _ => {
            return Err(Failure::input(
                "provide either --k (product mode) or both --N and --genus (genus mode)",
            ))
        }
    };
    let expected = target_sign.unwrap_or(default_sign);
    let sol = cone_construct(&f, n, mode, &cfg)?;
    let sasaki = report_sasaki_metadata(&sol, cfg.borderline_tolerance);
    let mut data = serde_json::to_value(&sol).expect("serializable");
    if let serde_json::Value::Object(map) = &mut data {
        map.insert(
            "sasaki".into(),
            serde_json::to_value(&sasaki).expect("serializable"),
        );
    }
    let extra = [
        ("steps", serde_json::Value::from(steps)),
        (
            "tol_grad",
            serde_json::Number::from_f64(tol_grad)
                .expect("finite tolerance")
                .into(),
        ),
    ];
    let json = with_config(config_value(common, &extra), data);
    emit(common.out.as_deref(), &json)?;
    if !sol.sign_matches(expected) {
        eprintln!(
            "conekit: kappa = {} has the wrong sign (expected {expected:?})",
            sol.kappa
        );
        return Ok(EXIT_WRONG_SIGN);
    }
    Ok(0)
}

fn cmd_cone_sweep(
    common: &CommonOpts,
    f: &Functionals,
    n: u32,
    range: &str,
    jobs: usize,
    cfg: &ConeConfig,
) -> Result<u8, Failure> {
    let (lo, hi) = range
        .split_once(':')
        .and_then(|(a, b)| Some((a.parse::<u32>().ok()?, b.parse::<u32>().ok()?)))
        .ok_or_else(|| Failure::input(format!("--k-sweep expects LO:HI, got {range}")))?;
    if lo < 1 || hi < lo {
        return Err(Failure::input("--k-sweep range must satisfy 1 <= LO <= HI"));
    }
    let ks: Vec<u32> = (lo..=hi).collect();
    let jobs = jobs.max(1).min(ks.len());
    let results: Mutex<Vec<Option<serde_json::Value>>> = Mutex::new(vec![None; ks.len()]);
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let idx = next.fetch_add(1, Ordering::Relaxed);
                if idx >= ks.len() {
                    break;
                }
                let k = ks[idx];
                let entry = match cone_construct(f, n, ConeMode::Product { k }, cfg) {
                    Ok(sol) => {
                        let ok = sol.sign == Sign::Positive
                            && sol
                                .residuals
                                .futaki
                                .iter()
                                .all(|r| r.abs() <= cfg.residual_tolerance);
                        serde_json::json!({
                            "k": k,
                            "ok": ok,
                            "kappa": sol.kappa,
                            "sign": sol.sign,
                            "ratio1": sol.ratio1,
                            "ratio2": sol.ratio2,
                            "lambda": sol.lambda,
                        })
                    }
                    Err(e) => serde_json::json!({
                        "k": k,
                        "ok": false,
                        "outcome": e.to_string(),
                    }),
                };
                results.lock().expect("sweep results")[idx] = Some(entry);
            });
        }
    });
    let entries: Vec<serde_json::Value> = results
        .into_inner()
        .expect("sweep results")
        .into_iter()
        .map(|v| v.expect("every k processed"))
        .collect();
    let k0 = entries
        .iter()
        .find(|e| e["ok"].as_bool() == Some(true))
        .map(|e| e["k"].clone())
        .unwrap_or(serde_json::Value::Null);
    let data = serde_json::json!({
        "k0": k0,
        "sweep": entries,
    });
    let extra = [
        ("k_sweep", serde_json::Value::String(range.to_string())),
        ("jobs", serde_json::Value::from(jobs)),
        ("steps", serde_json::Value::from(cfg.steps)),
    ];
    let json = with_config(config_value(common, &extra), data);
    emit(common.out.as_deref(), &json)?;
    match &k0 {
        serde_json::Value::Null => println!("k0 = not-found (no successful k in {range})"),
        value => println!("k0 = {value}"),
    }
    Ok(0)
}

fn cmd_verify(out: Option<&Path>) -> Result<u8, Failure> {
    let seed = std::env::var("CONEKIT_SEED")
        .ok()
        .and_then(|s| s.parse::<u64>().ok())
        .unwrap_or(0xC0FFEE);
    let checks = verify::run_all(seed);
    let mut report = String::new();
    let mut all_ok = true;
    for check in &checks {
        let line = format!(
            "{} {} — {}",
            if check.passed { "PASS" } else { "FAIL" },
            check.name,
            check.detail
        );
        println!("{line}");
        report.push_str(&line);
        report.push('\n');
        all_ok &= check.passed;
    }
    let summary = format!(
        "{}/{} suites passed (seed {seed})",
        checks.iter().filter(|c| c.passed).count(),
        checks.len()
    );
    println!("{summary}");
    report.push_str(&summary);
    report.push('\n');
    if let Some(path) = out {
        std::fs::write(path, &report)
            .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))?;
    }
    if all_ok {
        Ok(0)
    } else {
        Ok(EXIT_NUMERIC)
    }
}
