//! Acceptance suite: one test per shipped guarantee, each printing a
//! PASS line with its measured quantities (run with `-- --nocapture` to see
//! them). Golden values come from exact rational arithmetic or from
//! independent oracles computed inside this file.

use std::time::{Duration, Instant};

use conekit_core::numeric::{log_log_slope, symmetric_eigenvalues, SplitMix64};
use conekit_core::polytope::polynomial::Polynomial;
use conekit_core::rational::{rat, rat_frac, solve_exact, to_f64, Rat};
use conekit_core::{
    b_constraint, cone_construct, corpus, critical_point, integrate_boundary_exact,
    integrate_interior_exact, k0_search, mean_scalar_exact, scal_v_oracle_1d, solve_b,
    taylor_defect, AffineFunction, AnalyticWeight, ConeConfig, ConeMode, Functionals, ReebSolution,
    Sign, SmoothWeight1d, SolverConfig, WeightParams,
};

fn assert_runtime(criterion: u32, elapsed: Duration, limit: Duration) {
    assert!(
        elapsed <= limit,
        "criterion {criterion}: runtime {elapsed:?} exceeded the {limit:?} budget"
    );
}

#[test]
fn criterion_01_simplex_mean_scalar_exact() {
    let start = Instant::now();
    for n in 1..=4usize {
        let p = corpus::simplex(n);
        let want = rat(2 * (n as i64) * (n as i64 + 1));
        assert_eq!(
            mean_scalar_exact(&p),
            want,
            "criterion 1: mean scalar of the {n}-simplex"
        );
    }
    let elapsed = start.elapsed();
    assert_runtime(1, elapsed, Duration::from_secs(1));
    println!("ACCEPTANCE 1: PASS — sbar(simplex n) = 2n(n+1) exactly for n = 1..4 ({elapsed:?})");
}

#[test]
fn criterion_02_extremal_solver_golden_values() {
    let start = Instant::now();
    // interval: constant 4
    let p = corpus::interval();
    let f = Functionals::new(&p).unwrap();
    let ext = f.extremal_affine().unwrap();
    assert!(ext.ell_ext.gradient[0].abs() < 1e-12);
    assert!((ext.ell_ext.constant - 4.0).abs() < 1e-12);
    // 2-simplex: constant 12
    let p = corpus::simplex(2);
    let f = Functionals::new(&p).unwrap();
    let ext = f.extremal_affine().unwrap();
    assert!(ext.ell_ext.gradient.iter().all(|g| g.abs() < 1e-10));
    assert!((ext.ell_ext.constant - 12.0).abs() < 1e-10);
    // trapezoid against the exact rational Gram solve
    let p = corpus::trapezoid();
    let f = Functionals::new(&p).unwrap();
    let ext = f.extremal_affine().unwrap();
    let r = p.dim();
    let mut matrix = vec![vec![Rat::from_integer(0.into()); r + 1]; r + 1];
    let mut rhs = vec![Rat::from_integer(0.into()); r + 1];
    for i in 0..r {
        for j in 0..r {
            let xi = Polynomial::coordinate(r, i);
            let xj = Polynomial::coordinate(r, j);
            matrix[i][j] = integrate_interior_exact(&p, &xi.mul(&xj)).unwrap();
        }
        let xi = Polynomial::coordinate(r, i);
        matrix[i][r] = integrate_interior_exact(&p, &xi).unwrap();
        matrix[r][i] = matrix[i][r].clone();
        rhs[i] = rat(2) * integrate_boundary_exact(&p, &xi).unwrap();
    }
    matrix[r][r] = integrate_interior_exact(&p, &Polynomial::constant(r, rat(1))).unwrap();
    rhs[r] = rat(2) * integrate_boundary_exact(&p, &Polynomial::constant(r, rat(1))).unwrap();
    let oracle = solve_exact(&matrix, &rhs).expect("Gram system is nonsingular");
    // frozen hand elimination of the same system
    assert_eq!(oracle[0], rat(0));
    assert_eq!(oracle[1], rat_frac(-48, 13));
    assert_eq!(oracle[2], rat_frac(108, 13));
    for i in 0..r {
        assert!(
            (ext.ell_ext.gradient[i] - to_f64(&oracle[i])).abs() <= 1e-10,
            "criterion 2: trapezoid gradient component {i}"
        );
    }
    assert!((ext.ell_ext.constant - to_f64(&oracle[r])).abs() <= 1e-10);
    let elapsed = start.elapsed();
    assert_runtime(2, elapsed, Duration::from_secs(1));
    println!(
        "ACCEPTANCE 2: PASS — ell_ext = 4 on [0,1], 12 on simplex-2, trapezoid matches the \
         rational Gram solve to 1e-10 ({elapsed:?})"
    );
}

fn acceptance_weight_set() -> Vec<Box<dyn SmoothWeight1d>> {
    let mut out: Vec<Box<dyn SmoothWeight1d>> = Vec::new();
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
    for &(s, c) in &[
        (1.0, 0.0),
        (-1.0, 0.5),
        (0.5, -0.2),
        (2.0, 0.1),
        (-0.3, 1.0),
        (0.9, 0.9),
        (1.7, -0.4),
    ] {
        out.push(Box::new(AnalyticWeight {
            f: move |x: f64| (s * x + c).exp(),
            df: move |x: f64| s * (s * x + c).exp(),
            d2f: move |x: f64| s * s * (s * x + c).exp(),
        }));
    }
    for &(w1, w2) in &[(0.5, 0.5), (0.25, 1.5), (2.0, 0.1)] {
        out.push(Box::new(AnalyticWeight {
            f: move |x: f64| w1 * (x * x + 1.0) + w2 * (0.4 * x).exp(),
            df: move |x: f64| 2.0 * w1 * x + 0.4 * w2 * (0.4 * x).exp(),
            d2f: move |x: f64| 2.0 * w1 + 0.16 * w2 * (0.4 * x).exp(),
        }));
    }
    for &c in &[1.5, 2.5, 4.0] {
        out.push(Box::new(AnalyticWeight {
            f: move |x: f64| 1.0 / (x + c),
            df: move |x: f64| -1.0 / (x + c).powi(2),
            d2f: move |x: f64| 2.0 / (x + c).powi(3),
        }));
    }
    out
}

#[test]
fn criterion_03_oracle_equivalence() {
    let start = Instant::now();
    let weights = acceptance_weight_set();
    assert!(weights.len() >= 20, "need at least 20 weight functions");
    let h_set = [
        AffineFunction::constant_fn(1, 1.0),
        AffineFunction::new(vec![1.0], 0.0),
        AffineFunction::new(vec![-2.0], 0.7),
    ];
    let mut worst = 0.0f64;
    for v in &weights {
        for h in &h_set {
            let (lhs, rhs) = scal_v_oracle_1d(v.as_ref(), h);
            worst = worst.max((lhs - rhs).abs());
        }
    }
    assert!(worst <= 1e-8, "criterion 3: worst oracle gap {worst}");
    // pinned values
    let one = AnalyticWeight {
        f: |_| 1.0,
        df: |_| 0.0,
        d2f: |_| 0.0,
    };
    let (lhs, rhs) = scal_v_oracle_1d(&one, &AffineFunction::constant_fn(1, 1.0));
    assert!((lhs - 4.0).abs() < 1e-10 && (rhs - 4.0).abs() < 1e-14);
    let exp = AnalyticWeight {
        f: |x: f64| x.exp(),
        df: |x: f64| x.exp(),
        d2f: |x: f64| x.exp(),
    };
    let (lhs, rhs) = scal_v_oracle_1d(&exp, &AffineFunction::constant_fn(1, 1.0));
    let want = 2.0 * (std::f64::consts::E + 1.0);
    assert!((lhs - want).abs() < 1e-10 && (rhs - want).abs() < 1e-14);
    let elapsed = start.elapsed();
    assert_runtime(3, elapsed, Duration::from_secs(1));
    println!(
        "ACCEPTANCE 3: PASS — 1-d curvature oracle lhs = rhs to 1e-8 over {} weights, \
         worst gap {worst:.2e} ({elapsed:?})",
        weights.len()
    );
}

#[test]
fn criterion_04_first_variation_identity() {
    let start = Instant::now();
    let mut rng = SplitMix64::new(0x5EED);
    let mut worst = 0.0f64;
    let mut checked = 0usize;
    for p in [corpus::interval(), corpus::trapezoid()] {
        let f = Functionals::new(&p).unwrap();
        let dim = p.dim();
        let mut done = 0usize;
        while done < 50 {
            let lambda = rng.uniform(-2.0, 2.0);
            let a = rng.uniform(-0.4, 0.4);
            let b = rng.uniform(-1.0, 1.0);
            let g: Vec<f64> = (0..dim).map(|_| rng.uniform(-0.4, 0.4)).collect();
            let ell = AffineFunction::new(g, rng.uniform(-0.4, 0.4));
            let gq: Vec<f64> = (0..dim).map(|_| rng.uniform(-1.0, 1.0)).collect();
            let q = AffineFunction::new(gq, rng.uniform(-1.0, 1.0));
            if conekit_core::domain_margin(&p, a, &ell) < 0.2 {
                continue;
            }
            let params = WeightParams::lambda(lambda, a, b);
            let fut = f.futaki_param(&params, &ell, &q).unwrap();
            let h = 1e-6;
            let vp = f.einstein_hilbert(&params, &ell.add(&q.scale(h))).unwrap();
            let vm = f.einstein_hilbert(&params, &ell.add(&q.scale(-h))).unwrap();
            let v_a = f.v_functional(a, &ell).unwrap();
            let fd = v_a * (vp - vm) / (2.0 * h);
            let rel = (fd - fut).abs() / (1.0 + fut.abs());
            worst = worst.max(rel);
            done += 1;
            checked += 1;
        }
    }
    assert_eq!(checked, 100);
    assert!(
        worst <= 1e-6,
        "criterion 4: worst relative first-variation gap {worst}"
    );
    let elapsed = start.elapsed();
    assert_runtime(4, elapsed, Duration::from_secs(10));
    println!(
        "ACCEPTANCE 4: PASS — V_a * FD(EH) matches the parametrized Futaki invariant over \
         100 random points, worst relative gap {worst:.2e} ({elapsed:?})"
    );
}

fn eh_directional(
    f: &Functionals,
    lambda: f64,
    a: f64,
    b: f64,
    ell: &AffineFunction,
    q: &AffineFunction,
    h: f64,
) -> f64 {
    let params = WeightParams::lambda(lambda, a, b);
    let vp = f.einstein_hilbert(&params, &ell.add(&q.scale(h))).unwrap();
    let vm = f.einstein_hilbert(&params, &ell.add(&q.scale(-h))).unwrap();
    (vp - vm) / (2.0 * h)
}

#[test]
fn criterion_05_expansion_bounds() {
    let start = Instant::now();
    // Second-order defect of F_k in a, sup over |t| <= 1.
    for k in 0..3u32 {
        let samples: Vec<(f64, f64)> = [1e-1, 1e-2, 1e-3, 1e-4]
            .iter()
            .map(|&a| {
                let sup = (-10..=10)
                    .map(|i| {
                        let t = i as f64 / 10.0;
                        taylor_defect(k, a, t).unwrap().abs()
                    })
                    .fold(0.0, f64::max);
                (a, sup)
            })
            .collect();
        let slope = log_log_slope(&samples);
        assert!(
            (slope - 2.0).abs() <= 0.1,
            "criterion 5: defect slope for k = {k} is {slope}"
        );
    }
    // C0/C1/C2 differences between a != 0 and the extension branch.
    let p = corpus::trapezoid();
    let f = Functionals::new(&p).unwrap();
    let (lambda, b) = (1.3, 0.4);
    let grid = [
        AffineFunction::zero(2),
        AffineFunction::new(vec![0.2, -0.1], 0.05),
        AffineFunction::new(vec![-0.15, 0.25], -0.1),
    ];
    let dirs = [
        AffineFunction::new(vec![1.0, 0.0], -0.5),
        AffineFunction::new(vec![0.0, 1.0], -0.25),
    ];
    let h = 1e-4;
    let mut c0 = Vec::new();
    let mut c1 = Vec::new();
    let mut c2 = Vec::new();
    for &a in &[1e-1, 1e-2, 1e-3] {
        let (mut d0, mut d1, mut d2) = (0.0f64, 0.0f64, 0.0f64);
        for ell in &grid {
            let base = f
                .einstein_hilbert(&WeightParams::lambda(lambda, 0.0, b), ell)
                .unwrap();
            let at_a = f
                .einstein_hilbert(&WeightParams::lambda(lambda, a, b), ell)
                .unwrap();
            d0 = d0.max((at_a - base).abs());
            for q in &dirs {
                let g_a = eh_directional(&f, lambda, a, b, ell, q, h);
                let g_0 = eh_directional(&f, lambda, 0.0, b, ell, q, h);
                d1 = d1.max((g_a - g_0).abs());
                for q2 in &dirs {
                    let h_a = (eh_directional(&f, lambda, a, b, &ell.add(&q2.scale(h)), q, h)
                        - eh_directional(&f, lambda, a, b, &ell.add(&q2.scale(-h)), q, h))
                        / (2.0 * h);
                    let h_0 = (eh_directional(&f, lambda, 0.0, b, &ell.add(&q2.scale(h)), q, h)
                        - eh_directional(&f, lambda, 0.0, b, &ell.add(&q2.scale(-h)), q, h))
                        / (2.0 * h);
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
    for (name, s) in [("C0", s0), ("C1", s1), ("C2", s2)] {
        assert!(
            (s - 1.0).abs() <= 0.1,
            "criterion 5: {name} convergence slope is {s}"
        );
    }
    let elapsed = start.elapsed();
    assert_runtime(5, elapsed, Duration::from_secs(30));
    println!(
        "ACCEPTANCE 5: PASS — expansion defect slope 2, functional C0/C1/C2 slopes \
         ({s0:.3}, {s1:.3}, {s2:.3}) in [0.9, 1.1] ({elapsed:?})"
    );
}

#[test]
fn criterion_06_limit_hessian_concavity() {
    let start = Instant::now();
    for (name, p) in corpus::standard_corpus() {
        let f = Functionals::new(&p).unwrap();
        let r = p.dim();
        let zero = AffineFunction::zero(r);
        let hess = f.hessian(0.0, 0.0, 0.0, &zero).unwrap();
        // independent oracle: second differences of the explicit limit values
        let h = 1e-3;
        for i in 0..r {
            for j in 0..r {
                let qi = &f.coords().basis[i];
                let qj = &f.coords().basis[j];
                let pp = f.rescaled_limit(&zero.add(&qi.scale(h)).add(&qj.scale(h)));
                let pm = f.rescaled_limit(&zero.add(&qi.scale(h)).add(&qj.scale(-h)));
                let mp = f.rescaled_limit(&zero.add(&qi.scale(-h)).add(&qj.scale(h)));
                let mm = f.rescaled_limit(&zero.add(&qi.scale(-h)).add(&qj.scale(-h)));
                let fd = (pp - pm - mp + mm) / (4.0 * h * h);
                assert!(
                    (fd - hess[i][j]).abs() <= 1e-8 * (1.0 + hess[i][j].abs()),
                    "criterion 6: {name} entry ({i},{j}): fd {fd} vs {}",
                    hess[i][j]
                );
                // analytic -gram/vol
                let want = -f.coords().gram[i][j] / f.volume();
                assert!((hess[i][j] - want).abs() <= 1e-12 * (1.0 + want.abs()));
            }
        }
        let eig = symmetric_eigenvalues(&hess);
        assert!(
            eig.iter().all(|&e| e < 0.0),
            "criterion 6: {name} hessian not negative definite: {eig:?}"
        );
    }
    let p = corpus::interval();
    let f = Functionals::new(&p).unwrap();
    let hess = f.hessian(0.0, 0.0, 0.0, &AffineFunction::zero(1)).unwrap();
    assert!(
        (hess[0][0] + 1.0 / 12.0).abs() < 1e-14,
        "criterion 6: interval value {}",
        hess[0][0]
    );
    let elapsed = start.elapsed();
    assert_runtime(6, elapsed, Duration::from_secs(5));
    println!(
        "ACCEPTANCE 6: PASS — limit Hessian equals -gram/vol, negative definite on the \
         corpus, interval entry -1/12 ({elapsed:?})"
    );
}

#[test]
fn criterion_07_ift_seed_and_constraint() {
    let start = Instant::now();
    let p = corpus::trapezoid();
    let f = Functionals::new(&p).unwrap();
    let cfg = SolverConfig::default();
    let ext = f.extremal_affine().unwrap();
    // limit critical point from a far-off seed reproduces the extremal function
    let seed = f.coords().affine(&[0.8, -0.9]);
    let rep = critical_point(&f, 0.0, 0.0, 0.0, &seed, &cfg).unwrap();
    let mut gap = (rep.ell.constant - ext.ell_ext_normalized.constant).abs();
    for (got, want) in rep
        .ell
        .gradient
        .iter()
        .zip(&ext.ell_ext_normalized.gradient)
    {
        gap = gap.max((got - want).abs());
    }
    assert!(gap <= 1e-9, "criterion 7: seed gap {gap}");
    // b-solve at the origin returns b = 0
    let rep = solve_b(&f, 0.0, 0.0, &cfg).unwrap();
    assert_eq!(rep.b, 0.0, "criterion 7: b at the origin");
    // numeric d/db of the constraint near the origin ~ 1/vol
    let (eps, a, db) = (1e-2, -1e-2, 1e-3);
    let (fp, _) = b_constraint(&f, eps, a, db, &ext.ell_ext_normalized, &cfg).unwrap();
    let (fm, _) = b_constraint(&f, eps, a, -db, &ext.ell_ext_normalized, &cfg).unwrap();
    let slope = (fp - fm) / (2.0 * db);
    let want = 1.0 / f.volume();
    assert!(
        (slope - want).abs() <= 0.05 * want,
        "criterion 7: d/db constraint {slope} vs 1/vol {want}"
    );
    let elapsed = start.elapsed();
    assert_runtime(7, elapsed, Duration::from_secs(10));
    println!(
        "ACCEPTANCE 7: PASS — limit solve returns the extremal seed (gap {gap:.2e}), b(0,0) = 0, \
         numeric constraint slope {slope:.6} vs 1/vol = {want:.6} ({elapsed:?})"
    );
}

#[test]
fn criterion_08_full_futaki_vanishing() {
    let start = Instant::now();
    let p = corpus::trapezoid();
    let f = Functionals::new(&p).unwrap();
    let rep = solve_b(&f, 0.05, -0.02, &SolverConfig::default()).unwrap();
    assert_eq!(rep.futaki_residuals.len(), p.dim() + 1);
    let mut worst = 0.0f64;
    for (i, res) in rep.futaki_residuals.iter().enumerate() {
        assert!(
            res.abs() <= 1e-9,
            "criterion 8: Futaki residual {i} = {res}"
        );
        worst = worst.max(res.abs());
    }
    let elapsed = start.elapsed();
    assert_runtime(8, elapsed, Duration::from_secs(60));
    println!(
        "ACCEPTANCE 8: PASS — all {} Futaki residuals <= 1e-9 after the b-solve at \
         (0.05, -0.02), worst {worst:.2e} ({elapsed:?})",
        rep.futaki_residuals.len()
    );
}

#[test]
fn criterion_09_positive_cone_pipeline() {
    let start = Instant::now();
    let p = corpus::trapezoid();
    let f = Functionals::new(&p).unwrap();
    let cfg = ConeConfig::default();
    let search = k0_search(&f, 2, 200, &cfg).unwrap();
    let k0 = search.k0.expect("criterion 9: no admissible k <= 200");
    assert!(k0 <= 200);
    let sol = cone_construct(&f, 2, ConeMode::Product { k: k0 }, &cfg).unwrap();
    assert!(sol.kappa > 0.0, "criterion 9: kappa at k0 = {}", sol.kappa);
    assert!(
        (0.9..=1.1).contains(&sol.ratio2),
        "criterion 9: ratio2 at k0 = {}",
        sol.ratio2
    );
    let sol_large = cone_construct(&f, 2, ConeMode::Product { k: 1000 }, &cfg).unwrap();
    let s_bar = f.mean_scalar();
    let gap = (sol_large.ratio1 - s_bar).abs() / s_bar;
    assert!(gap <= 0.05, "criterion 9: |ratio1 - sbar|/sbar = {gap}");
    let elapsed = start.elapsed();
    assert_runtime(9, elapsed, Duration::from_secs(600));
    println!(
        "ACCEPTANCE 9: PASS — k0 = {k0}, kappa = {:.4} > 0, ratio2 = {:.6}, and at k = 1000 \
         |ratio1 - sbar|/sbar = {gap:.2e} ({elapsed:?})",
        sol.kappa, sol.ratio2
    );
}

#[test]
fn criterion_10_negative_pipeline() {
    let start = Instant::now();
    let p = corpus::interval();
    let f = Functionals::new(&p).unwrap();
    let sol = cone_construct(
        &f,
        1,
        ConeMode::Genus {
            big_n: 10,
            genus: 20,
        },
        &ConeConfig::default(),
    )
    .unwrap();
    assert!(
        (sol.lambda + 68.4).abs() <= 1e-12,
        "criterion 10: lambda = {}",
        sol.lambda
    );
    assert!(sol.kappa < 0.0, "criterion 10: kappa = {}", sol.kappa);
    assert_eq!(sol.sign, Sign::Negative);
    let elapsed = start.elapsed();
    assert_runtime(10, elapsed, Duration::from_secs(120));
    println!(
        "ACCEPTANCE 10: PASS — genus mode (n=1, N=10, g=20) gives lambda = {} and \
         kappa = {:.4} < 0 ({elapsed:?})",
        sol.lambda, sol.kappa
    );
}

#[test]
fn criterion_11_determinism() {
    // Re-runs the computations behind criteria 8-10 twice and compares the
    // serialized result files byte for byte.
    let p = corpus::trapezoid();
    let f = Functionals::new(&p).unwrap();
    let cfg = ConeConfig::default();
    let solver = SolverConfig::default();

    let run_once = |tag: &str| -> Vec<std::path::PathBuf> {
        let dir = std::env::temp_dir();
        let mut files = Vec::new();

        let rep = solve_b(&f, 0.05, -0.02, &solver).unwrap();
        let path = dir.join(format!("conekit-acc11-solve-{tag}.json"));
        std::fs::write(&path, serde_json::to_string_pretty(&rep).unwrap()).unwrap();
        files.push(path);

        let search = k0_search(&f, 2, 10, &cfg).unwrap();
        let path = dir.join(format!("conekit-acc11-k0-{tag}.json"));
        std::fs::write(&path, serde_json::to_string_pretty(&search).unwrap()).unwrap();
        files.push(path);

        let sol = cone_construct(&f, 2, ConeMode::Product { k: 1000 }, &cfg).unwrap();
        let path = dir.join(format!("conekit-acc11-cone-{tag}.json"));
        std::fs::write(&path, serde_json::to_string_pretty(&sol).unwrap()).unwrap();
        files.push(path);

        let pi = corpus::interval();
        let fi = Functionals::new(&pi).unwrap();
        let neg = cone_construct(
            &fi,
            1,
            ConeMode::Genus {
                big_n: 10,
                genus: 20,
            },
            &cfg,
        )
        .unwrap();
        let path = dir.join(format!("conekit-acc11-genus-{tag}.json"));
        std::fs::write(&path, serde_json::to_string_pretty(&neg).unwrap()).unwrap();
        files.push(path);
        files
    };

    let first = run_once("a");
    let second = run_once("b");
    for (fa, fb) in first.iter().zip(&second) {
        let ba = std::fs::read(fa).unwrap();
        let bb = std::fs::read(fb).unwrap();
        assert_eq!(
            ba,
            bb,
            "criterion 11: {} and {} differ",
            fa.display(),
            fb.display()
        );
    }
    for path in first.iter().chain(&second) {
        let _ = std::fs::remove_file(path);
    }
    println!(
        "ACCEPTANCE 11: PASS — repeated runs of criteria 8-10 yield bitwise-identical result files"
    );
}

#[test]
fn result_json_round_trips_exactly() {
    let p = corpus::trapezoid();
    let f = Functionals::new(&p).unwrap();
    let sol = cone_construct(&f, 2, ConeMode::Product { k: 7 }, &ConeConfig::default()).unwrap();
    let text = serde_json::to_string(&sol).unwrap();
    let back: ReebSolution = serde_json::from_str(&text).unwrap();
    assert_eq!(back.kappa, sol.kappa);
    assert_eq!(back.lambda, sol.lambda);
    assert_eq!(back.b, sol.b);
    assert_eq!(back.ell_reeb.gradient, sol.ell_reeb.gradient);
    assert_eq!(back.ratio1, sol.ratio1);
    assert_eq!(back.ratio2, sol.ratio2);
}
