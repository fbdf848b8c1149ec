//! Runtime invariant suites behind the `verify` CLI subcommand.
//!
//! Each check exercises one contract of the library on the built-in corpus
//! and reports pass/fail with a short diagnostic. Randomized draws are
//! seeded so repeated runs are identical.

use crate::corpus;
use crate::error::Result;
use crate::functionals::{scal_v_oracle_1d, AnalyticWeight, Functionals, NumericWeight};
use crate::numeric::{log_log_slope, SplitMix64};
use crate::pipeline::{cone_construct, ConeConfig, ConeMode};
use crate::polytope::integrate::{
    integrate_boundary, integrate_boundary_exact, integrate_interior, integrate_interior_exact,
    QuadratureSpec,
};
use crate::polytope::polynomial::Polynomial;
use crate::polytope::{affine_range, AffineFunction};
use crate::rational::{rat, to_f64};
use crate::solver::{critical_point, solve_b, SolverConfig};
use crate::weights::{f_closed_branch, f_k, f_series_branch, WeightParams, A_SWITCH};

/// Outcome of one invariant suite.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Runs every suite with the given sampling seed.
pub fn run_all(seed: u64) -> Vec<Check> {
    vec![
        run("polytope/exact-vs-gauss", exact_vs_gauss),
        run("polytope/unimodular-equivariance", unimodular_equivariance),
        run("polytope/green-compatibility", green_compatibility),
        run(
            "polytope/affine-range-at-vertices",
            affine_range_at_vertices,
        ),
        run("weights/algebraic-identities", weight_identities),
        run("weights/branch-consistency", branch_consistency),
        run_seeded(
            "functionals/first-variation-identity",
            seed,
            first_variation,
        ),
        run("functionals/convergence-rates", convergence_rates),
        run("functionals/s-simplification", s_simplification),
        run("functionals/extremal-residual", extremal_residual),
        run("functionals/oracle-weight-set", oracle_weight_set),
        run("functionals/cd-gap-rate", cd_gap_rate),
        run("solver/seed-and-ift-slope", solver_seed_and_slope),
        run("solver/determinism", solver_determinism),
        run("pipeline/weight-consistency", pipeline_weight_consistency),
        run("pipeline/ratio-limits", pipeline_ratio_limits),
    ]
}

fn run(name: &'static str, f: fn() -> Result<(bool, String)>) -> Check {
    match f() {
        Ok((passed, detail)) => Check {
            name,
            passed,
            detail,
        },
        Err(e) => Check {
            name,
            passed: false,
            detail: format!("error: {e}"),
        },
    }
}

fn run_seeded(name: &'static str, seed: u64, f: fn(u64) -> Result<(bool, String)>) -> Check {
    match f(seed) {
        Ok((passed, detail)) => Check {
            name,
            passed,
            detail,
        },
        Err(e) => Check {
            name,
            passed: false,
            detail: format!("error: {e}"),
        },
    }
}

fn test_polynomials(dim: usize) -> Vec<Polynomial> {
    // A few polynomials up to total degree six per dimension.
    let mut out = vec![Polynomial::constant(dim, rat(1))];
    let x0 = Polynomial::coordinate(dim, 0);
    out.push(x0.pow(3).add(&x0.scale(&rat(-2))));
    out.push(x0.pow(6));
    if dim >= 2 {
        let x1 = Polynomial::coordinate(dim, 1);
        out.push(x0.pow(2).mul(&x1.pow(2)));
        out.push(x0.add(&x1).pow(5));
        out.push(x0.pow(4).mul(&x1).sub(&x1.pow(3)));
    }
    if dim >= 3 {
        let x1 = Polynomial::coordinate(dim, 1);
        let x2 = Polynomial::coordinate(dim, 2);
        out.push(x0.mul(&x1).mul(&x2).pow(2));
    }
    out
}

fn exact_vs_gauss() -> Result<(bool, String)> {
    let spec = QuadratureSpec::default();
    let mut worst = 0.0f64;
    for (name, p) in corpus::standard_corpus() {
        for poly in test_polynomials(p.dim()) {
            let exact_i = to_f64(&integrate_interior_exact(&p, &poly)?);
            let gauss_i = integrate_interior(&p, |x| poly.eval_f64(x), &spec)?;
            let rel_i = (exact_i - gauss_i).abs() / (1.0 + exact_i.abs());
            let exact_b = to_f64(&integrate_boundary_exact(&p, &poly)?);
            let gauss_b = integrate_boundary(&p, |x| poly.eval_f64(x), &spec)?;
            let rel_b = (exact_b - gauss_b).abs() / (1.0 + exact_b.abs());
            worst = worst.max(rel_i).max(rel_b);
            if rel_i > 1e-12 || rel_b > 1e-12 {
                return Ok((
                    false,
                    format!("{name}: relative gap {rel_i:.2e}/{rel_b:.2e}"),
                ));
            }
        }
    }
    Ok((true, format!("worst relative gap {worst:.2e}")))
}

fn unimodular_equivariance() -> Result<(bool, String)> {
    let spec = QuadratureSpec::default();
    let a = vec![vec![1i64, 1], vec![0, 1]];
    let a_inv = [[1.0, -1.0], [0.0, 1.0]];
    let b = vec![2i64, -1];
    let mut worst = 0.0f64;
    for (name, p) in [
        ("trapezoid", corpus::trapezoid()),
        ("simplex-2", corpus::simplex(2)),
    ] {
        let q = p.transform_unimodular(&a, &b)?;
        let f = |x: &[f64]| (0.3 * x[0] - 0.2 * x[1]).exp() + x[0] * x[1];
        let pulled = |y: &[f64]| {
            let shifted = [y[0] - b[0] as f64, y[1] - b[1] as f64];
            let x = [
                a_inv[0][0] * shifted[0] + a_inv[0][1] * shifted[1],
                a_inv[1][0] * shifted[0] + a_inv[1][1] * shifted[1],
            ];
            f(&x)
        };
        let li = integrate_interior(&p, f, &spec)?;
        let ri = integrate_interior(&q, pulled, &spec)?;
        let lb = integrate_boundary(&p, f, &spec)?;
        let rb = integrate_boundary(&q, pulled, &spec)?;
        let gap = ((li - ri).abs() / (1.0 + li.abs())).max((lb - rb).abs() / (1.0 + lb.abs()));
        worst = worst.max(gap);
        if gap > 1e-10 {
            return Ok((false, format!("{name}: equivariance gap {gap:.2e}")));
        }
    }
    Ok((true, format!("worst equivariance gap {worst:.2e}")))
}

fn green_compatibility() -> Result<(bool, String)> {
    let weight_set: Vec<Box<dyn crate::functionals::SmoothWeight1d>> = smooth_weight_set();
    let h_set = [
        AffineFunction::constant_fn(1, 1.0),
        AffineFunction::new(vec![1.0], 0.0),
        AffineFunction::new(vec![-2.0], 0.7),
    ];
    let mut worst = 0.0f64;
    for v in &weight_set {
        for h in &h_set {
            let (lhs, rhs) = scal_v_oracle_1d(v.as_ref(), h);
            worst = worst.max((lhs - rhs).abs());
        }
    }
    Ok((worst <= 1e-8, format!("max |lhs - rhs| = {worst:.2e}")))
}

fn smooth_weight_set() -> Vec<Box<dyn crate::functionals::SmoothWeight1d>> {
    let mut out: Vec<Box<dyn crate::functionals::SmoothWeight1d>> = Vec::new();
    // polynomials 1, 1+x, 1+x^2, ..., up to degree 6
    for d in 0..=6u32 {
        out.push(Box::new(AnalyticWeight {
            f: move |x: f64| 1.0 + x.powi(d as i32 + 1),
            df: move |x: f64| (d as f64 + 1.0) * x.powi(d as i32),
            d2f: move |x: f64| {
                if d == 0 {
                    0.0
                } else {
                    (d as f64 + 1.0) * d as f64 * x.powi(d as i32 - 1)
                }
            },
        }));
    }
    // exponentials of affine functions
    for &(s, c) in &[
        (1.0, 0.0),
        (-1.0, 0.5),
        (0.5, -0.2),
        (2.0, 0.1),
        (-0.3, 1.0),
        (0.9, 0.9),
    ] {
        out.push(Box::new(AnalyticWeight {
            f: move |x: f64| (s * x + c).exp(),
            df: move |x: f64| s * (s * x + c).exp(),
            d2f: move |x: f64| s * s * (s * x + c).exp(),
        }));
    }
    // mixtures, numeric-derivative path included
    out.push(Box::new(NumericWeight(|x: f64| 2.0 + (0.7 * x).sin())));
    for &(w1, w2) in &[(0.5, 0.5), (0.25, 1.5)] {
        out.push(Box::new(AnalyticWeight {
            f: move |x: f64| w1 * (x * x + 1.0) + w2 * (0.4 * x).exp(),
            df: move |x: f64| 2.0 * w1 * x + 0.4 * w2 * (0.4 * x).exp(),
            d2f: move |x: f64| 2.0 * w1 + 0.16 * w2 * (0.4 * x).exp(),
        }));
    }
    // rational-positive weights
    for &c in &[1.5, 2.5, 4.0] {
        out.push(Box::new(AnalyticWeight {
            f: move |x: f64| 1.0 / (x + c),
            df: move |x: f64| -1.0 / (x + c).powi(2),
            d2f: move |x: f64| 2.0 / (x + c).powi(3),
        }));
    }
    // scaled constants
    for &c in &[0.1, 7.0] {
        out.push(Box::new(AnalyticWeight {
            f: move |_| c,
            df: |_| 0.0,
            d2f: |_| 0.0,
        }));
    }
    out
}

fn affine_range_at_vertices() -> Result<(bool, String)> {
    for (name, p) in corpus::standard_corpus() {
        let dim = p.dim();
        let mut g = vec![0.0; dim];
        for (i, gi) in g.iter_mut().enumerate() {
            *gi = 1.0 - 0.5 * i as f64;
        }
        let ell = AffineFunction::new(g, -0.3);
        let (lo, hi) = affine_range(&p, &ell);
        let direct_lo = p
            .vertex_points_f64()
            .iter()
            .map(|v| ell.eval(v))
            .fold(f64::INFINITY, f64::min);
        let direct_hi = p
            .vertex_points_f64()
            .iter()
            .map(|v| ell.eval(v))
            .fold(f64::NEG_INFINITY, f64::max);
        if lo != direct_lo || hi != direct_hi {
            return Ok((false, format!("{name}: range mismatch")));
        }
    }
    Ok((true, "range equals vertex extrema exactly".into()))
}

fn weight_identities() -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for &a in &[-0.8, -0.3, -0.01, 0.0, 0.05, 0.4, 0.9] {
        for &t in &[-0.9, -0.2, 0.0, 0.3, 0.8] {
            if 1.0 + a * t <= 0.0 {
                continue;
            }
            let f0 = f_k(0, a, t)?;
            let f1 = f_k(1, a, t)?;
            let f2 = f_k(2, a, t)?;
            let r1 = (f0 - f1 * (1.0 + a * t)).abs() / (1.0 + f0.abs());
            let r2 = ((f1 - f2) - a * t * f2).abs() / (1.0 + f1.abs());
            worst = worst.max(r1).max(r2);
        }
    }
    Ok((worst <= 1e-12, format!("worst identity gap {worst:.2e}")))
}

fn branch_consistency() -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for &factor in &[0.5, 2.0] {
        for &sign in &[-1.0, 1.0] {
            let a = sign * A_SWITCH * factor;
            for &t in &[-1.0, -0.25, 0.5, 1.0] {
                for k in 0..3 {
                    let series = f_series_branch(k, a, t);
                    let closed = f_closed_branch(k, a, t);
                    worst = worst.max((series - closed).abs() / (1.0 + closed.abs()));
                }
            }
        }
    }
    Ok((worst <= 1e-11, format!("worst branch gap {worst:.2e}")))
}

fn first_variation(seed: u64) -> Result<(bool, String)> {
    let mut rng = SplitMix64::new(seed);
    let mut worst = 0.0f64;
    for p in [corpus::interval(), corpus::trapezoid()] {
        let f = Functionals::new(&p)?;
        let dim = p.dim();
        let mut done = 0usize;
        while done < 25 {
            let lambda = rng.uniform(-2.0, 2.0);
            let a = rng.uniform(-0.4, 0.4);
            let b = rng.uniform(-1.0, 1.0);
            let ell = random_affine(&mut rng, dim, 0.4);
            let q = random_affine(&mut rng, dim, 1.0);
            if crate::functionals::domain_margin(&p, a, &ell) < 0.2 {
                continue;
            }
            let params = WeightParams::lambda(lambda, a, b);
            let fut = f.futaki_param(&params, &ell, &q)?;
            let h = 1e-6;
            let vp = f.einstein_hilbert(&params, &ell.add(&q.scale(h)))?;
            let vm = f.einstein_hilbert(&params, &ell.add(&q.scale(-h)))?;
            let v_a = f.v_functional(a, &ell)?;
            let fd = v_a * (vp - vm) / (2.0 * h);
            let rel = (fd - fut).abs() / (1.0 + fut.abs());
            worst = worst.max(rel);
            done += 1;
        }
    }
    Ok((worst <= 1e-6, format!("worst relative gap {worst:.2e}")))
}

fn random_affine(rng: &mut SplitMix64, dim: usize, scale: f64) -> AffineFunction {
    let g: Vec<f64> = (0..dim).map(|_| rng.uniform(-scale, scale)).collect();
    AffineFunction::new(g, rng.uniform(-scale, scale))
}

/// sup-differences of the functional, its first variation, and its second
/// variation between a != 0 and a = 0, fitted against a.
fn convergence_rates() -> Result<(bool, String)> {
    let p = corpus::trapezoid();
    let f = Functionals::new(&p)?;
    let (lambda, b) = (1.3, 0.4);
    let grid: Vec<AffineFunction> = vec![
        AffineFunction::zero(2),
        AffineFunction::new(vec![0.2, -0.1], 0.05),
        AffineFunction::new(vec![-0.15, 0.25], -0.1),
    ];
    let dirs: Vec<AffineFunction> = vec![
        AffineFunction::new(vec![1.0, 0.0], -0.5),
        AffineFunction::new(vec![0.0, 1.0], -0.25),
    ];
    let a_values = [1e-1, 1e-2, 1e-3];
    let h = 1e-4;
    let mut c0 = Vec::new();
    let mut c1 = Vec::new();
    let mut c2 = Vec::new();
    for &a in &a_values {
        let mut d0 = 0.0f64;
        let mut d1 = 0.0f64;
        let mut d2 = 0.0f64;
        for ell in &grid {
            let base = f.einstein_hilbert(&WeightParams::lambda(lambda, 0.0, b), ell)?;
            let at_a = f.einstein_hilbert(&WeightParams::lambda(lambda, a, b), ell)?;
            d0 = d0.max((at_a - base).abs());
            for q in &dirs {
                let g_a = eh_directional(&f, lambda, a, b, ell, q, h)?;
                let g_0 = eh_directional(&f, lambda, 0.0, b, ell, q, h)?;
                d1 = d1.max((g_a - g_0).abs());
                for q2 in &dirs {
                    let h_a = eh_second(&f, lambda, a, b, ell, q, q2, h)?;
                    let h_0 = eh_second(&f, lambda, 0.0, b, ell, q, q2, h)?;
                    d2 = d2.max((h_a - h_0).abs());
                }
            }
        }
        c0.push((a, d0));
        c1.push((a, d1));
        c2.push((a, d2));
    }
    let s0 = log_log_slope(&c0);
    let s1 = log_log_slope(&c1);
    let s2 = log_log_slope(&c2);
    let ok = (s0 - 1.0).abs() <= 0.1 && (s1 - 1.0).abs() <= 0.1 && (s2 - 1.0).abs() <= 0.1;
    Ok((ok, format!("slopes C0 {s0:.3}, C1 {s1:.3}, C2 {s2:.3}")))
}

fn eh_directional(
    f: &Functionals,
    lambda: f64,
    a: f64,
    b: f64,
    ell: &AffineFunction,
    q: &AffineFunction,
    h: f64,
) -> Result<f64> {
    let params = WeightParams::lambda(lambda, a, b);
    let vp = f.einstein_hilbert(&params, &ell.add(&q.scale(h)))?;
    let vm = f.einstein_hilbert(&params, &ell.add(&q.scale(-h)))?;
    Ok((vp - vm) / (2.0 * h))
}

#[allow(clippy::too_many_arguments)]
fn eh_second(
    f: &Functionals,
    lambda: f64,
    a: f64,
    b: f64,
    ell: &AffineFunction,
    q1: &AffineFunction,
    q2: &AffineFunction,
    h: f64,
) -> Result<f64> {
    let gp = eh_directional(f, lambda, a, b, &ell.add(&q2.scale(h)), q1, h)?;
    let gm = eh_directional(f, lambda, a, b, &ell.add(&q2.scale(-h)), q1, h)?;
    Ok((gp - gm) / (2.0 * h))
}

fn s_simplification() -> Result<(bool, String)> {
    let spec = QuadratureSpec::default();
    let mut worst = 0.0f64;
    for (_, p) in corpus::standard_corpus() {
        let f = Functionals::new(&p)?;
        let dim = p.dim();
        let ell = AffineFunction::new(vec![0.1; dim], -0.05);
        for &a in &[-0.5, -0.1, 0.2] {
            let s = f.s_functional(a, &ell)?;
            let via_f1 = 2.0
                * integrate_boundary(
                    &p,
                    |x| {
                        let t = ell.eval(x);
                        crate::weights::f_k_unchecked(1, a, t) * (1.0 + a * t)
                    },
                    &spec,
                )?;
            worst = worst.max((s - via_f1).abs() / (1.0 + s.abs()));
        }
    }
    Ok((
        worst <= 1e-12,
        format!("worst simplification gap {worst:.2e}"),
    ))
}

fn extremal_residual() -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for (_, p) in corpus::standard_corpus() {
        let f = Functionals::new(&p)?;
        let ext = f.extremal_affine()?;
        let ell_ext = ext.ell_ext.clone();
        for q in &f.coords().basis {
            let fut = f.futaki_vw(|_| 1.0, |x| ell_ext.eval(x), q)?;
            worst = worst.max(fut.abs());
        }
        let one = AffineFunction::constant_fn(p.dim(), 1.0);
        let fut = f.futaki_vw(|_| 1.0, |x| ell_ext.eval(x), &one)?;
        worst = worst.max(fut.abs());
    }
    Ok((worst <= 1e-10, format!("worst Futaki residual {worst:.2e}")))
}

fn oracle_weight_set() -> Result<(bool, String)> {
    let weights = smooth_weight_set();
    let h_set = [
        AffineFunction::constant_fn(1, 1.0),
        AffineFunction::new(vec![1.0], 0.0),
    ];
    let mut worst = 0.0f64;
    for v in &weights {
        for h in &h_set {
            let (lhs, rhs) = scal_v_oracle_1d(v.as_ref(), h);
            worst = worst.max((lhs - rhs).abs());
        }
    }
    Ok((
        worst <= 1e-8,
        format!("{} weights, max |lhs - rhs| = {worst:.2e}", weights.len()),
    ))
}

fn cd_gap_rate() -> Result<(bool, String)> {
    let p = corpus::trapezoid();
    let f = Functionals::new(&p)?;
    let ext = f.extremal_affine()?;
    let samples: Vec<(f64, f64)> = [1e-1, 1e-2, 1e-3]
        .iter()
        .map(|&s| {
            let (eps, a) = (s, -s);
            let scaled = ext.ell_ext_normalized.scale(eps);
            let c = f.c_coeff(1.0 / eps, a, &scaled)?;
            let d = f.d_coeff(1.0 / eps, a, &scaled)?;
            Ok((s, (c - d).abs()))
        })
        .collect::<Result<_>>()?;
    let slope = log_log_slope(&samples);
    Ok((slope >= 0.9, format!("|c - d| slope {slope:.3}")))
}

fn solver_seed_and_slope() -> Result<(bool, String)> {
    let p = corpus::trapezoid();
    let f = Functionals::new(&p)?;
    let cfg = SolverConfig::default();
    let ext = f.extremal_affine()?;
    let seed = f.coords().affine(&[0.4, -0.6]);
    let rep = critical_point(&f, 0.0, 0.0, 0.0, &seed, &cfg)?;
    let seed_gap: f64 = rep
        .ell
        .gradient
        .iter()
        .zip(&ext.ell_ext_normalized.gradient)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt();
    if seed_gap > 1e-8 {
        return Ok((
            false,
            format!("limit solve missed the extremal seed by {seed_gap:.2e}"),
        ));
    }
    let samples: Vec<(f64, f64)> = [1e-1, 1e-2, 1e-3]
        .iter()
        .map(|&s| {
            let rep = critical_point(&f, s, 0.0, 0.0, &ext.ell_ext_normalized, &cfg)?;
            let dist: f64 = rep
                .ell
                .gradient
                .iter()
                .zip(&ext.ell_ext_normalized.gradient)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            Ok((s, dist))
        })
        .collect::<Result<_>>()?;
    let slope = log_log_slope(&samples);
    let c_fit = samples.iter().map(|(s, d)| d / s).fold(0.0f64, f64::max);
    Ok((
        slope >= 0.9,
        format!("seed gap {seed_gap:.2e}, drift slope {slope:.3}, fitted C {c_fit:.3}"),
    ))
}

fn solver_determinism() -> Result<(bool, String)> {
    let p = corpus::trapezoid();
    let f = Functionals::new(&p)?;
    let cfg = SolverConfig::default();
    let a = solve_b(&f, 0.05, -0.02, &cfg)?;
    let b = solve_b(&f, 0.05, -0.02, &cfg)?;
    let ja = serde_json::to_string(&a).expect("report serializes");
    let jb = serde_json::to_string(&b).expect("report serializes");
    Ok((ja == jb, "two solves serialized identically".into()))
}

fn pipeline_weight_consistency() -> Result<(bool, String)> {
    let p = corpus::trapezoid();
    let f = Functionals::new(&p)?;
    let sol = cone_construct(&f, 2, ConeMode::Product { k: 30 }, &ConeConfig::default())?;
    let pair = sol.weights(&p)?;
    let mut worst = 0.0f64;
    for x in [&[0.1, 0.2][..], &[1.5, 0.1], &[0.4, 0.9]] {
        let got = pair.w(x) / pair.v(x);
        let want = sol.kappa / sol.ell_reeb.eval(x);
        worst = worst.max((got - want).abs() / (1.0 + want.abs()));
    }
    Ok((worst <= 1e-12, format!("worst pointwise gap {worst:.2e}")))
}

fn pipeline_ratio_limits() -> Result<(bool, String)> {
    let p = corpus::trapezoid();
    let f = Functionals::new(&p)?;
    let cfg = ConeConfig::default();
    let s_bar = f.mean_scalar();
    let mut detail = String::new();
    let mut ok = true;
    let mut prev_gap = f64::INFINITY;
    for &k in &[20u32, 80, 320] {
        let sol = cone_construct(&f, 2, ConeMode::Product { k }, &cfg)?;
        let gap1 = (sol.ratio1 - s_bar).abs() / s_bar;
        let gap2 = (sol.ratio2 - 1.0).abs() * sol.big_n as f64;
        ok &= gap1 < prev_gap;
        prev_gap = gap1;
        detail.push_str(&format!(
            "k={k}: |r1-sbar|/sbar={gap1:.2e}, N|r2-1|={gap2:.2}; "
        ));
        if gap2 > 20.0 {
            ok = false;
        }
    }
    Ok((ok, detail))
}
