//! End-to-end cone constructions: pick (lambda, N) from the product or
//! genus recipe, run continuation to (eps, a) = (1/lambda, -1/N), assemble
//! the Reeb affine function and the transversal constant kappa, and check
//! positivity and sign.
//!
//! The product polytope with the large projective factor is never formed;
//! all computations stay on the base polytope with the factor dimension
//! carried by (lambda, a).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functionals::Functionals;
use crate::polytope::{affine_range, AffineFunction, LabelledPolytope};
use crate::solver::{continuation, ContinuationPath, SolverConfig};
use crate::weights::{sasaki_weight_pair, WeightPair};

/// lambda_N = 2 k (k + 1) / (n + k) for the k-dimensional projective factor.
pub fn lambda_for(k: u32, n: u32) -> f64 {
    let (k, n) = (k as f64, n as f64);
    2.0 * k * (k + 1.0) / (n + k)
}

/// lambda_(N,g) = (N - n)(4 - 4g) / N for products of genus-g curves.
///
/// Requires g >= 2 (so the value is negative) and N > n.
pub fn lambda_for_genus(big_n: u32, n: u32, g: u32) -> Result<f64> {
    if g < 2 {
        return Err(Error::InvalidParams(format!(
            "genus must be at least 2 (flat or positive factors give lambda >= 0), got {g}"
        )));
    }
    if big_n <= n {
        return Err(Error::InvalidParams(format!(
            "total dimension N = {big_n} must exceed the base dimension n = {n}"
        )));
    }
    let (nn, n, g) = (big_n as f64, n as f64, g as f64);
    Ok((nn - n) * (4.0 - 4.0 * g) / nn)
}

/// Which factor closes the cone: a projective space of dimension k, or a
/// product of genus-g curves filling dimension N - n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeMode {
    Product { k: u32 },
    Genus { big_n: u32, genus: u32 },
}

/// Sign expected for the transversal constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Positive,
    Negative,
}

/// Pipeline settings.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ConeConfig {
    pub steps: usize,
    pub solver: SolverConfig,
    /// Residual bound audited on the final continuation step.
    pub residual_tolerance: f64,
    /// |kappa| below this is reported as borderline.
    pub borderline_tolerance: f64,
}

impl Default for ConeConfig {
    fn default() -> Self {
        ConeConfig {
            steps: 16,
            solver: SolverConfig::default(),
            residual_tolerance: 1e-9,
            borderline_tolerance: 1e-8,
        }
    }
}

/// Residuals recorded on the final continuation step.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Residuals {
    pub gradient: f64,
    /// Basis directions followed by the constant direction.
    pub futaki: Vec<f64>,
}

/// Output of the cone pipeline.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReebSolution {
    pub n: u32,
    #[serde(rename = "N")]
    pub big_n: u32,
    pub k: u32,
    pub lambda: f64,
    pub a: f64,
    pub b: f64,
    #[serde(rename = "ell_lambdaN")]
    pub ell_lambda_n: AffineFunction,
    pub ell_reeb: AffineFunction,
    /// Ray representative of ell_reeb rescaled to constant term 1.
    pub ell_reeb_ray: AffineFunction,
    pub kappa: f64,
    pub ratio1: f64,
    pub ratio2: f64,
    pub residuals: Residuals,
    pub sign: Sign,
}

impl ReebSolution {
    pub fn sign_matches(&self, target: Sign) -> bool {
        self.sign == target
    }

    /// The weight pair (v, w) = (ell_reeb^-(N+1), kappa ell_reeb^-(N+2)).
    pub fn weights(&self, p: &LabelledPolytope) -> Result<WeightPair> {
        sasaki_weight_pair(p, &self.ell_reeb, self.big_n, self.kappa)
    }
}

/// Runs continuation to (1/lambda, -1/N) and assembles the Reeb data.
///
/// A kappa of the wrong sign is reported in the returned solution (compare
/// with `sign_matches`), not raised as an error; continuation failures and
/// Reeb positivity violations are errors.
pub fn cone_construct(
    f: &Functionals,
    n: u32,
    mode: ConeMode,
    cfg: &ConeConfig,
) -> Result<ReebSolution> {
    let (big_n, k, lambda) = match mode {
        ConeMode::Product { k } => {
            if k < 1 {
                return Err(Error::InvalidParams("k must be at least 1".into()));
            }
            (n + k, k, lambda_for(k, n))
        }
        ConeMode::Genus { big_n, genus } => {
            let lambda = lambda_for_genus(big_n, n, genus)?;
            (big_n, big_n - n, lambda)
        }
    };
    if n as usize != f.polytope().dim() {
        return Err(Error::InvalidParams(format!(
            "base dimension n = {n} does not match the polytope dimension {}",
            f.polytope().dim()
        )));
    }
    let eps = 1.0 / lambda;
    let a = -1.0 / big_n as f64;
    let path = continuation(f, (eps, a), cfg.steps, &cfg.solver)?;
    finish_cone(f, n, big_n, k, lambda, &path)
}

fn finish_cone(
    f: &Functionals,
    n: u32,
    big_n: u32,
    k: u32,
    lambda: f64,
    path: &ContinuationPath,
) -> Result<ReebSolution> {
    let last = path.last();
    let (eps, a) = (last.eps, last.a);
    let ell_lambda_n = last.report.ell.scale(eps);
    let d = f.d_coeff(lambda, a, &ell_lambda_n)?;
    let kappa = d + lambda * big_n as f64;
    let i1 = f.interior_f(1, a, &ell_lambda_n)?;
    let i2 = f.interior_f(2, a, &ell_lambda_n)?;
    let b1 = f.boundary_f(1, a, &ell_lambda_n)?;
    let ratio1 = 2.0 * b1 / i2;
    let ratio2 = i1 / i2;
    let dim = f.polytope().dim();
    let ell_reeb =
        AffineFunction::constant_fn(dim, 1.0).sub(&ell_lambda_n.scale(1.0 / big_n as f64));
    let (reeb_min, _) = affine_range(f.polytope(), &ell_reeb);
    if reeb_min <= 0.0 {
        let vertex = f
            .polytope()
            .vertex_points_f64()
            .iter()
            .min_by(|u, v| ell_reeb.eval(u).total_cmp(&ell_reeb.eval(v)))
            .cloned()
            .unwrap_or_default();
        return Err(Error::ReebPositivityViolation {
            vertex,
            value: reeb_min,
        });
    }
    let ell_reeb_ray = ell_reeb.scale(1.0 / ell_reeb.constant);
    let sign = if kappa > 0.0 {
        Sign::Positive
    } else {
        Sign::Negative
    };
    Ok(ReebSolution {
        n,
        big_n,
        k,
        lambda,
        a,
        b: last.report.b,
        ell_lambda_n,
        ell_reeb,
        ell_reeb_ray,
        kappa,
        ratio1,
        ratio2,
        residuals: Residuals {
            gradient: last.report.gradient_residual,
            futaki: last.report.futaki_residuals.clone(),
        },
        sign,
    })
}

/// One attempted k in a search.
#[derive(Debug, Clone, Serialize)]
pub struct K0Attempt {
    pub k: u32,
    pub outcome: String,
    pub kappa: Option<f64>,
}

/// Result of the empirical search for the least admissible k.
#[derive(Debug, Clone, Serialize)]
pub struct K0Search {
    pub k0: Option<u32>,
    pub attempts: Vec<K0Attempt>,
}

/// Least k <= k_max with a fully successful positive cone construction;
/// failures are recorded per k, not raised.
pub fn k0_search(f: &Functionals, n: u32, k_max: u32, cfg: &ConeConfig) -> Result<K0Search> {
    if k_max > 10_000 {
        return Err(Error::InvalidParams(
            "k_max beyond 10^4 is not supported".into(),
        ));
    }
    let mut attempts = Vec::new();
    for k in 1..=k_max {
        match cone_construct(f, n, ConeMode::Product { k }, cfg) {
            Ok(sol) => {
                let residuals_ok = sol
                    .residuals
                    .futaki
                    .iter()
                    .all(|r| r.abs() <= cfg.residual_tolerance);
                if sol.sign == Sign::Positive && residuals_ok {
                    attempts.push(K0Attempt {
                        k,
                        outcome: "ok".into(),
                        kappa: Some(sol.kappa),
                    });
                    return Ok(K0Search {
                        k0: Some(k),
                        attempts,
                    });
                }
                let outcome = if sol.sign != Sign::Positive {
                    format!("wrong-sign (kappa = {})", sol.kappa)
                } else {
                    "residuals-above-tolerance".into()
                };
                attempts.push(K0Attempt {
                    k,
                    outcome,
                    kappa: Some(sol.kappa),
                });
            }
            Err(Error::ContinuationStalled {
                last_eps, last_a, ..
            }) => {
                attempts.push(K0Attempt {
                    k,
                    outcome: format!("continuation-stalled at ({last_eps}, {last_a})"),
                    kappa: None,
                });
            }
            Err(Error::ReebPositivityViolation { value, .. }) => {
                attempts.push(K0Attempt {
                    k,
                    outcome: format!("reeb-violation (min {value})"),
                    kappa: None,
                });
            }
            Err(e) if e.is_input_error() => return Err(e),
            Err(e) => {
                attempts.push(K0Attempt {
                    k,
                    outcome: format!("error: {e}"),
                    kappa: None,
                });
            }
        }
    }
    Ok(K0Search { k0: None, attempts })
}

/// Human- and machine-readable summary of a solution's Sasaki meaning.
#[derive(Debug, Clone, Serialize)]
pub struct SasakiReport {
    pub ell_reeb_ray: AffineFunction,
    pub kappa: f64,
    pub sign: Sign,
    pub annotation: String,
    pub equivalence: String,
}

/// Emits the ray representative, the transversal constant, and the
/// equivalence-chain annotation.
pub fn report_sasaki_metadata(sol: &ReebSolution, borderline_tolerance: f64) -> SasakiReport {
    let annotation = if sol.kappa.abs() <= borderline_tolerance {
        "borderline; increase k".to_string()
    } else if sol.kappa > 0.0 {
        "scalar-flat cone polarization exists on this ray".to_string()
    } else {
        "negative transversal cscS; no scalar-flat cone claim".to_string()
    };
    let equivalence = "constant transversal scalar curvature on this Reeb ray; for positive \
                       constants this is equivalent to a scalar-flat cone polarization (rays \
                       correspond bijectively)"
        .to_string();
    SasakiReport {
        ell_reeb_ray: sol.ell_reeb_ray.clone(),
        kappa: sol.kappa,
        sign: sol.sign,
        annotation,
        equivalence,
    }
}
