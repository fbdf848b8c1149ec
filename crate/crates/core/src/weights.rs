//! The weight family F_k(a, t) = (1 + a t)^((1 - k a)/a), its t-derivatives,
//! expansion defects, and the Sasaki weight-pair constructors.
//!
//! F_k extends analytically through a = 0 with F_k(0, t) = e^t. Near a = 0 a
//! series for the exponent avoids the catastrophic cancellation in
//! (1 - k a)/a * log1p(a t).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polytope::{affine_range, AffineFunction, LabelledPolytope};

/// Below this |a| the exponent is evaluated by its series in a.
pub const A_SWITCH: f64 = 1e-4;

/// Parametrization tag for the weight parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamTag {
    Lambda,
    Epsilon,
}

/// The tuple (lambda or epsilon, a, b) parametrizing the functionals.
///
/// `a == 0` marks the analytic-extension branch of the family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightParams {
    pub tag: ParamTag,
    pub value: f64,
    pub a: f64,
    pub b: f64,
}

impl WeightParams {
    pub fn lambda(lambda: f64, a: f64, b: f64) -> Self {
        WeightParams {
            tag: ParamTag::Lambda,
            value: lambda,
            a,
            b,
        }
    }

    pub fn epsilon(eps: f64, a: f64, b: f64) -> Self {
        WeightParams {
            tag: ParamTag::Epsilon,
            value: eps,
            a,
            b,
        }
    }

    /// The lambda value; converts eps -> 1/eps, defined only for eps != 0.
    pub fn as_lambda(&self) -> Result<f64> {
        match self.tag {
            ParamTag::Lambda => Ok(self.value),
            ParamTag::Epsilon => {
                if self.value == 0.0 {
                    Err(Error::InvalidParams(
                        "epsilon = 0 has no lambda counterpart".into(),
                    ))
                } else {
                    Ok(1.0 / self.value)
                }
            }
        }
    }

    /// The epsilon value; converts lambda -> 1/lambda, defined only for
    /// lambda != 0.
    pub fn as_epsilon(&self) -> Result<f64> {
        match self.tag {
            ParamTag::Epsilon => Ok(self.value),
            ParamTag::Lambda => {
                if self.value == 0.0 {
                    Err(Error::InvalidParams(
                        "lambda = 0 has no epsilon counterpart".into(),
                    ))
                } else {
                    Ok(1.0 / self.value)
                }
            }
        }
    }

    /// Whether evaluation runs on the a = 0 analytic extension.
    pub fn uses_extension_branch(&self) -> bool {
        self.a == 0.0
    }
}

/// F_k(a, t). Requires 1 + a t > 0.
pub fn f_k(k: u32, a: f64, t: f64) -> Result<f64> {
    let base = 1.0 + a * t;
    if base <= 0.0 {
        return Err(Error::DomainViolation {
            vertex: vec![t],
            value: base,
        });
    }
    Ok(f_k_unchecked(k, a, t))
}

/// F_k without the domain check; callers guarantee 1 + a t > 0.
pub(crate) fn f_k_unchecked(k: u32, a: f64, t: f64) -> f64 {
    if a.abs() < A_SWITCH {
        exponent_series(k, a, t).exp()
    } else {
        closed_form(k, a, t)
    }
}

/// Series branch of F_k, for cross-checks against the closed form.
pub(crate) fn f_series_branch(k: u32, a: f64, t: f64) -> f64 {
    exponent_series(k, a, t).exp()
}

/// Closed-form branch of F_k, for cross-checks against the series.
pub(crate) fn f_closed_branch(k: u32, a: f64, t: f64) -> f64 {
    closed_form(k, a, t)
}

fn closed_form(k: u32, a: f64, t: f64) -> f64 {
    let exponent = (1.0 - k as f64 * a) / a;
    (exponent * (a * t).ln_1p()).exp()
}

/// Exponent (1/a - k) log(1 + a t) expanded to sixth order in a:
/// t + sum_{m>=1} (-a)^m (t^(m+1)/(m+1) + k t^m / m).
fn exponent_series(k: u32, a: f64, t: f64) -> f64 {
    let kf = k as f64;
    let mut acc = t;
    let mut a_pow = 1.0;
    let mut t_pow = t;
    let mut sign = 1.0;
    for m in 1..=6u32 {
        a_pow *= a;
        sign = -sign;
        let mf = m as f64;
        // t^(m+1)/(m+1) + k t^m/m
        let term = t_pow * t / (mf + 1.0) + kf * t_pow / mf;
        acc += sign * a_pow * term;
        t_pow *= t;
    }
    acc
}

/// j-th t-derivative of F_k: prod_{i=1..j} (1 - (i + k - 1) a) * F_{j+k}.
pub fn f_dt(j: u32, k: u32, a: f64, t: f64) -> Result<f64> {
    let mut prefactor = 1.0;
    for i in 1..=j {
        prefactor *= 1.0 - (i + k - 1) as f64 * a;
    }
    Ok(prefactor * f_k(j + k, a, t)?)
}

/// Defect of the first-order expansion: F_k(a,t) - e^t (1 + a(-t^2/2 - k t)).
pub fn taylor_defect(k: u32, a: f64, t: f64) -> Result<f64> {
    let f = f_k(k, a, t)?;
    let expansion = t.exp() * (1.0 + a * (-t * t / 2.0 - k as f64 * t));
    Ok(f - expansion)
}

/// Weight pair (v, w) = (l^-(n+1), kappa l^-(n+2)) built from a Reeb affine
/// function positive on the polytope.
#[derive(Debug, Clone)]
pub struct WeightPair {
    pub ell: AffineFunction,
    pub n: u32,
    pub kappa: f64,
}

impl WeightPair {
    pub fn v(&self, x: &[f64]) -> f64 {
        self.ell.eval(x).powi(-(self.n as i32 + 1))
    }

    pub fn w(&self, x: &[f64]) -> f64 {
        self.kappa * self.ell.eval(x).powi(-(self.n as i32 + 2))
    }
}

/// Builds the Sasaki weight pair, checking l > 0 on the polytope through the
/// exact vertex range.
pub fn sasaki_weight_pair(
    p: &LabelledPolytope,
    ell: &AffineFunction,
    n: u32,
    kappa: f64,
) -> Result<WeightPair> {
    let (min, _) = affine_range(p, ell);
    if min <= 0.0 {
        let vertex = p
            .vertex_points_f64()
            .iter()
            .min_by(|a, b| ell.eval(a).total_cmp(&ell.eval(b)))
            .cloned()
            .unwrap_or_default();
        return Err(Error::ReebPositivityViolation { vertex, value: min });
    }
    Ok(WeightPair {
        ell: ell.clone(),
        n,
        kappa,
    })
}
