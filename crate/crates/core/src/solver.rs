//! Critical points of the rescaled functional, the scalar constraint solve
//! for the additive constant b, and predictor-corrector continuation in
//! (eps, a) seeded at the extremal affine function.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::functionals::{domain_margin, Functionals};
use crate::numeric::{solve_dense, symmetric_eigenvalues};
use crate::polytope::{AffineFunction, LabelledPolytope};
use crate::weights::WeightParams;

/// Tolerances and iteration budgets for the solvers.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SolverConfig {
    /// Newton stops when ||gradient|| <= gradient_tolerance * (1 + |value|).
    pub gradient_tolerance: f64,
    pub max_newton_iterations: usize,
    /// Absolute tolerance on the scalar constraint for b.
    pub b_tolerance: f64,
    pub max_b_iterations: usize,
    /// Continuation bisects a failing step at most this many times.
    pub max_step_halvings: u32,
    pub condition_limit: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            gradient_tolerance: 1e-10,
            max_newton_iterations: 50,
            b_tolerance: 1e-11,
            max_b_iterations: 40,
            max_step_halvings: 12,
            condition_limit: 1e12,
        }
    }
}

/// Outcome of one converged solve.
#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    /// Normalized critical affine function.
    pub ell: AffineFunction,
    /// Its coordinates in the barycentric basis.
    pub coords: Vec<f64>,
    pub b: f64,
    pub gradient_residual: f64,
    /// Futaki pairings against the basis directions followed by the constant.
    pub futaki_residuals: Vec<f64>,
    pub newton_iterations: usize,
    /// min over vertices of min(1 + a eps l, 2 - (1 + a eps l)).
    pub domain_margin: f64,
    pub hessian_regularized: bool,
}

/// Margin of the constraint 0 < 1 + a l < 2 for an already-scaled argument.
pub fn domain_guard(p: &LabelledPolytope, a: f64, ell_scaled: &AffineFunction) -> f64 {
    domain_margin(p, a, ell_scaled)
}

/// Newton iteration with backtracking on the gradient norm, constrained to
/// keep the domain margin positive.
pub fn critical_point(
    f: &Functionals,
    eps: f64,
    a: f64,
    b: f64,
    seed: &AffineFunction,
    cfg: &SolverConfig,
) -> Result<SolveReport> {
    if eps == 0.0 && a != 0.0 {
        return Err(Error::InvalidParams(
            "eps = 0 with a != 0 is outside the rescaled family".into(),
        ));
    }
    f.check_normalized(seed)?;
    let coords0 = f.coords().coordinates(seed);
    let mut coords = coords0;
    let mut ell = f.coords().affine(&coords);
    f.ensure_domain(a, &ell.scale(eps))?;

    let mut regularized = false;
    let mut iterations = 0usize;
    let mut gradient = f.gradient(eps, a, b, &ell)?;
    let mut residual = norm(&gradient);
    loop {
        let value = f.einstein_hilbert_rescaled(eps, a, b, &ell)?;
        let scale = 1.0 + value.abs();
        if residual <= cfg.gradient_tolerance * scale {
            break;
        }
        if iterations >= cfg.max_newton_iterations {
            return Err(Error::NewtonDiverged {
                iterations,
                residual,
            });
        }
        let mut hess = f.hessian(eps, a, b, &ell)?;
        let eig = symmetric_eigenvalues(&hess);
        if eig.iter().any(|&e| e > -1e-12 && e <= 0.0) {
            // Strict concavity holds in the continuation neighborhood; a
            // near-zero eigenvalue signals its edge, so nudge and flag.
            for (i, row) in hess.iter_mut().enumerate() {
                row[i] -= 1e-10;
            }
            regularized = true;
        }
        let eig = symmetric_eigenvalues(&hess);
        let max_abs = eig.iter().fold(0.0f64, |m, &e| m.max(e.abs()));
        let min_abs = eig.iter().fold(f64::INFINITY, |m, &e| m.min(e.abs()));
        let condition = if min_abs == 0.0 {
            f64::INFINITY
        } else {
            max_abs / min_abs
        };
        if condition > cfg.condition_limit {
            return Err(Error::HessianSingular { condition });
        }
        let neg_g: Vec<f64> = gradient.iter().map(|g| -g).collect();
        let direction = solve_dense(&hess, &neg_g).ok_or(Error::HessianSingular { condition })?;

        // Backtracking on ||g||^2 with factor 1/2; every accepted step
        // strictly decreases the gradient norm and keeps the margin positive.
        let phi0 = residual * residual;
        let mut s = 1.0f64;
        let mut found_feasible = false;
        let accepted = loop {
            let cand: Vec<f64> = coords
                .iter()
                .zip(&direction)
                .map(|(c, d)| c + s * d)
                .collect();
            let cand_ell = f.coords().affine(&cand);
            if domain_margin(f.polytope(), a, &cand_ell.scale(eps)) > 0.0 {
                // A candidate whose integrands overwhelm the quadrature is
                // rejected like an infeasible one; errors at accepted
                // iterates still propagate from the loop head.
                if let Ok(cand_grad) = f.gradient(eps, a, b, &cand_ell) {
                    found_feasible = true;
                    let phi = norm(&cand_grad) * norm(&cand_grad);
                    if phi <= (1.0 - 1e-4 * s) * phi0 {
                        break Some((cand, cand_ell, cand_grad));
                    }
                }
            }
            s *= 0.5;
            if s < 1e-12 {
                break None;
            }
        };
        let Some((cand, cand_ell, cand_grad)) = accepted else {
            if !found_feasible {
                // Line search cannot stay inside 0 < 1 + a eps l < 2; report
                // the full Newton step as the witness.
                let full: Vec<f64> = coords.iter().zip(&direction).map(|(c, d)| c + d).collect();
                let witness = f.coords().affine(&full).scale(eps);
                return Err(f
                    .ensure_domain(a, &witness)
                    .err()
                    .unwrap_or(Error::NewtonDiverged {
                        iterations,
                        residual,
                    }));
            }
            return Err(Error::NewtonDiverged {
                iterations,
                residual,
            });
        };
        coords = cand;
        ell = cand_ell;
        gradient = cand_grad;
        residual = norm(&gradient);
        iterations += 1;
    }

    let margin = domain_guard(f.polytope(), a, &ell.scale(eps));
    let futaki = futaki_residuals(f, eps, a, b, &ell)?;
    Ok(SolveReport {
        ell,
        coords,
        b,
        gradient_residual: residual,
        futaki_residuals: futaki,
        newton_iterations: iterations,
        domain_margin: margin,
        hessian_regularized: regularized,
    })
}

/// Futaki pairings at a candidate, against the basis directions and the
/// constant function.
///
/// At (eps, a) = (0, 0) the pairings are reported in the limiting
/// normalization: vol * gradient for basis directions (the pairing
/// 2 int_dP q - int_P l q) and -b for the constant direction.
pub fn futaki_residuals(
    f: &Functionals,
    eps: f64,
    a: f64,
    b: f64,
    ell: &AffineFunction,
) -> Result<Vec<f64>> {
    if eps == 0.0 {
        let g = f.gradient(0.0, 0.0, b, ell)?;
        let vol = f.volume();
        let mut out: Vec<f64> = g.iter().map(|gi| gi * vol).collect();
        out.push(-b);
        return Ok(out);
    }
    let params = WeightParams::lambda(1.0 / eps, a, b);
    let scaled = ell.scale(eps);
    let mut qs: Vec<AffineFunction> = f.coords().basis.clone();
    qs.push(AffineFunction::constant_fn(f.polytope().dim(), 1.0));
    f.futaki_param_batch(&params, &scaled, &qs)
}

/// The scalar constraint whose zero picks b:
/// c_(1/eps,a)(eps l*) + b / int F_1 - d_(1/eps,a)(eps l*), where l* is the
/// inner critical point at this b.
pub fn b_constraint(
    f: &Functionals,
    eps: f64,
    a: f64,
    b: f64,
    seed: &AffineFunction,
    cfg: &SolverConfig,
) -> Result<(f64, SolveReport)> {
    if eps == 0.0 && a == 0.0 {
        let report = critical_point(f, 0.0, 0.0, b, seed, cfg)?;
        return Ok((b / f.volume(), report));
    }
    let report = critical_point(f, eps, a, b, seed, cfg)?;
    let scaled = report.ell.scale(eps);
    let lambda = 1.0 / eps;
    let c = f.c_coeff(lambda, a, &scaled)?;
    let d = f.d_coeff(lambda, a, &scaled)?;
    let i1 = f.v_functional(a, &scaled)?.powf(1.0 - a);
    Ok((c + b / i1 - d, report))
}

/// Joint solve: outer secant on b, inner Newton re-solve of the critical
/// point, seeded at the extremal affine function.
pub fn solve_b(f: &Functionals, eps: f64, a: f64, cfg: &SolverConfig) -> Result<SolveReport> {
    let ext = f.extremal_affine()?;
    solve_b_seeded(f, eps, a, &ext.ell_ext_normalized, 0.0, cfg)
}

/// As `solve_b` with explicit warm-start data (used along continuation
/// paths).
pub fn solve_b_seeded(
    f: &Functionals,
    eps: f64,
    a: f64,
    seed: &AffineFunction,
    seed_b: f64,
    cfg: &SolverConfig,
) -> Result<SolveReport> {
    if eps == 0.0 && a == 0.0 {
        return critical_point(f, 0.0, 0.0, 0.0, seed, cfg);
    }
    let vol = f.volume();
    let mut b_prev = seed_b;
    let (mut f_prev, mut report) = b_constraint(f, eps, a, b_prev, seed, cfg)?;
    if f_prev.abs() <= cfg.b_tolerance {
        return Ok(report);
    }
    // First corrector uses the known slope 1/vol of the constraint at the
    // origin; subsequent steps are secant updates.
    let mut b_cur = b_prev - f_prev * vol;
    let mut residual = f_prev.abs();
    for _ in 0..cfg.max_b_iterations {
        let seed_ell = report.ell.clone();
        let (f_cur, rep) = b_constraint(f, eps, a, b_cur, &seed_ell, cfg)?;
        report = rep;
        if f_cur.abs() <= cfg.b_tolerance {
            return Ok(report);
        }
        let denom = f_cur - f_prev;
        let delta = if denom.abs() < 1e-300 {
            -f_cur * vol
        } else {
            -f_cur * (b_cur - b_prev) / denom
        };
        b_prev = b_cur;
        f_prev = f_cur;
        b_cur += delta;
        residual = f_cur.abs();
    }
    Err(Error::BSolveDiverged {
        iterations: cfg.max_b_iterations,
        residual,
    })
}

/// One converged continuation step.
#[derive(Debug, Clone, Serialize)]
pub struct PathStep {
    pub eps: f64,
    pub a: f64,
    pub report: SolveReport,
}

/// A converged path toward the target parameters.
#[derive(Debug, Clone, Serialize)]
pub struct ContinuationPath {
    pub steps: Vec<PathStep>,
    pub target: (f64, f64),
    /// The planned parameter grid j/m * target.
    pub schedule: Vec<(f64, f64)>,
}

impl ContinuationPath {
    pub fn last(&self) -> &PathStep {
        self.steps.last().expect("paths contain at least one step")
    }
}

/// Follows the segment s (eps_T, a_T), s in (0, 1], warm-starting each solve
/// from the previous step and bisecting the step on failure.
pub fn continuation(
    f: &Functionals,
    target: (f64, f64),
    m: usize,
    cfg: &SolverConfig,
) -> Result<ContinuationPath> {
    continuation_observed(f, target, m, cfg, &mut |_| {})
}

/// As `continuation`, invoking the observer after every converged step so
/// callers can retain partial traces when the path stalls.
pub fn continuation_observed(
    f: &Functionals,
    target: (f64, f64),
    m: usize,
    cfg: &SolverConfig,
    observer: &mut dyn FnMut(&PathStep),
) -> Result<ContinuationPath> {
    if m == 0 {
        return Err(Error::InvalidParams(
            "continuation needs at least one step".into(),
        ));
    }
    let schedule: Vec<(f64, f64)> = (1..=m)
        .map(|j| {
            let s = j as f64 / m as f64;
            (target.0 * s, target.1 * s)
        })
        .collect();
    let ext = f.extremal_affine()?;
    let mut steps: Vec<PathStep> = Vec::new();

    if target == (0.0, 0.0) {
        let report = solve_b_seeded(f, 0.0, 0.0, &ext.ell_ext_normalized, 0.0, cfg)?;
        let step = PathStep {
            eps: 0.0,
            a: 0.0,
            report,
        };
        observer(&step);
        steps.push(step);
        return Ok(ContinuationPath {
            steps,
            target,
            schedule,
        });
    }

    // Path positions as exact integers: denom units span [0, 1], the base
    // step is 1/m, and max_step_halvings bisections reach a single unit.
    // The halving budget is cumulative so a stall is detected after a
    // bounded number of failed solves.
    let base_step: u64 = 1 << cfg.max_step_halvings;
    let denom: u64 = (m as u64) << cfg.max_step_halvings;
    let mut pos: u64 = 0;
    let mut step = base_step;
    let mut halvings_used: u32 = 0;
    let mut seed_ell = ext.ell_ext_normalized.clone();
    let mut seed_b = 0.0;
    while pos < denom {
        let next = (pos + step).min(denom);
        let s = next as f64 / denom as f64;
        let (eps, a) = (target.0 * s, target.1 * s);
        match solve_b_seeded(f, eps, a, &seed_ell, seed_b, cfg) {
            Ok(report) => {
                seed_ell = report.ell.clone();
                seed_b = report.b;
                let path_step = PathStep { eps, a, report };
                observer(&path_step);
                steps.push(path_step);
                pos = next;
                step = (step * 2).min(base_step);
            }
            Err(e) if e.is_input_error() => return Err(e),
            Err(_) => {
                if halvings_used >= cfg.max_step_halvings || step <= 1 {
                    let s_last = pos as f64 / denom as f64;
                    return Err(Error::ContinuationStalled {
                        last_eps: target.0 * s_last,
                        last_a: target.1 * s_last,
                        steps_completed: steps.len(),
                    });
                }
                halvings_used += 1;
                step /= 2;
            }
        }
    }
    Ok(ContinuationPath {
        steps,
        target,
        schedule,
    })
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}
