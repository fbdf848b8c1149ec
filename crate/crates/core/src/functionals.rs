//! Class-invariant functionals reduced to polytope integrals.
//!
//! Everything metric-dependent is replaced by its momentum-polytope
//! realization: the Duistermaat-Heckman measure is Lebesgue measure on P and
//! the weighted scalar curvature pairs with affine functions through the
//! boundary measure, `int Scal_v h = 2 int_dP v h dsigma`. The latter
//! normalization is independently checked by the one-dimensional oracle at
//! the bottom of this module.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{pairwise_sum, solve_dense, symmetric_eigenvalues};
use crate::polytope::integrate::{integrate_boundary, integrate_interior, QuadratureSpec};
use crate::polytope::{affine_range, AffineFunction, LabelledPolytope};
use crate::rational::{to_f64, Rat};
use crate::weights::{f_k_unchecked, WeightParams};

/// Extremal affine data of a polytope.
#[derive(Debug, Clone, Serialize)]
pub struct ExtremalData {
    pub ell_ext: AffineFunction,
    pub ell_ext_normalized: AffineFunction,
    pub mean_scalar: f64,
    pub volume: f64,
    pub boundary_measure: f64,
    pub barycenter: Vec<f64>,
    /// Largest residual of the defining linear equations.
    pub residual: f64,
}

/// Barycentric affine coordinates q_i = x_i - xbar_i with their Gram matrix.
#[derive(Debug, Clone)]
pub struct NormalizedCoords {
    pub basis: Vec<AffineFunction>,
    pub gram: Vec<Vec<f64>>,
    pub volume: f64,
    /// Boundary moments 2 int_dP q_i dsigma of the basis.
    pub boundary_moments: Vec<f64>,
}

impl NormalizedCoords {
    fn new(p: &LabelledPolytope) -> Result<Self> {
        let r = p.dim();
        let vol = p.volume_exact();
        let xbar: Vec<Rat> = (0..r).map(|i| p.first_moment_exact(i) / vol).collect();
        let basis: Vec<AffineFunction> = (0..r)
            .map(|i| {
                let mut g = vec![0.0; r];
                g[i] = 1.0;
                AffineFunction::new(g, -to_f64(&xbar[i]))
            })
            .collect();
        let gram: Vec<Vec<f64>> = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        let centered = p.second_moment_exact(i, j)
                            - p.first_moment_exact(i) * p.first_moment_exact(j) / vol;
                        to_f64(&centered)
                    })
                    .collect()
            })
            .collect();
        let eig = symmetric_eigenvalues(&gram);
        if eig.first().copied().unwrap_or(0.0) <= 0.0 {
            return Err(Error::SingularGram);
        }
        let boundary_moments: Vec<f64> = (0..r)
            .map(|i| {
                let m = p.boundary_first_moment_exact(i) - &xbar[i] * p.boundary_measure_exact();
                2.0 * to_f64(&m)
            })
            .collect();
        Ok(NormalizedCoords {
            basis,
            gram,
            volume: to_f64(vol),
            boundary_moments,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The affine function with the given coordinates.
    pub fn affine(&self, coords: &[f64]) -> AffineFunction {
        let mut out = AffineFunction::zero(self.dim());
        for (c, q) in coords.iter().zip(&self.basis) {
            out = out.add(&q.scale(*c));
        }
        out
    }

    /// Coordinates of a normalized affine function (its gradient).
    pub fn coordinates(&self, ell: &AffineFunction) -> Vec<f64> {
        ell.gradient.clone()
    }
}

/// Margin of the constraint 0 < 1 + a l < 2 over the polytope: the minimum
/// over vertices of min(1 + a l, 2 - (1 + a l)). Negative means infeasible.
pub fn domain_margin(p: &LabelledPolytope, a: f64, ell: &AffineFunction) -> f64 {
    let (lo, hi) = affine_range(p, ell);
    let vals = [1.0 + a * lo, 1.0 + a * hi];
    let min_v = vals[0].min(vals[1]);
    let max_v = vals[0].max(vals[1]);
    min_v.min(2.0 - max_v)
}

/// Evaluator for the polytope functionals, carrying the quadrature settings
/// and the normalized coordinate cache.
pub struct Functionals<'a> {
    p: &'a LabelledPolytope,
    quad: QuadratureSpec,
    coords: NormalizedCoords,
    volume: f64,
    boundary: f64,
    s_bar: f64,
}

impl<'a> Functionals<'a> {
    pub fn new(p: &'a LabelledPolytope) -> Result<Self> {
        Self::with_quadrature(p, QuadratureSpec::default())
    }

    pub fn with_quadrature(p: &'a LabelledPolytope, quad: QuadratureSpec) -> Result<Self> {
        quad.validate()?;
        let coords = NormalizedCoords::new(p)?;
        Ok(Functionals {
            p,
            quad,
            coords,
            volume: p.volume(),
            boundary: p.boundary_measure(),
            s_bar: crate::polytope::mean_scalar(p),
        })
    }

    pub fn polytope(&self) -> &LabelledPolytope {
        self.p
    }

    pub fn quadrature(&self) -> &QuadratureSpec {
        &self.quad
    }

    pub fn coords(&self) -> &NormalizedCoords {
        &self.coords
    }

    pub fn volume(&self) -> f64 {
        self.volume
    }

    pub fn mean_scalar(&self) -> f64 {
        self.s_bar
    }

    fn int_p<F: Fn(&[f64]) -> f64>(&self, f: F) -> Result<f64> {
        integrate_interior(self.p, f, &self.quad)
    }

    fn int_b<F: Fn(&[f64]) -> f64>(&self, f: F) -> Result<f64> {
        integrate_boundary(self.p, f, &self.quad)
    }

    /// Rejects arguments leaving 0 < 1 + a l < 2, reporting the worst vertex.
    pub fn ensure_domain(&self, a: f64, ell: &AffineFunction) -> Result<()> {
        if domain_margin(self.p, a, ell) > 0.0 {
            return Ok(());
        }
        let worst = self
            .p
            .vertex_points_f64()
            .iter()
            .min_by(|u, v| {
                let mu = margin_at(a, ell, u);
                let mv = margin_at(a, ell, v);
                mu.total_cmp(&mv)
            })
            .expect("polytope has vertices");
        Err(Error::DomainViolation {
            vertex: worst.clone(),
            value: 1.0 + a * ell.eval(worst),
        })
    }

    /// Exact integral of an affine function against Lebesgue measure.
    fn integral_affine(&self, ell: &AffineFunction) -> f64 {
        let vol = self.p.volume_exact();
        let mut acc = ell.constant * to_f64(vol);
        for (i, g) in ell.gradient.iter().enumerate() {
            acc += g * to_f64(self.p.first_moment_exact(i));
        }
        acc
    }

    /// Exact boundary integral of an affine function.
    fn boundary_integral_affine(&self, ell: &AffineFunction) -> f64 {
        let mut acc = ell.constant * self.boundary;
        for (i, g) in ell.gradient.iter().enumerate() {
            acc += g * to_f64(self.p.boundary_first_moment_exact(i));
        }
        acc
    }

    /// Exact integral of a product of two affine functions.
    fn integral_affine_product(&self, f: &AffineFunction, g: &AffineFunction) -> f64 {
        let r = self.p.dim();
        let mut acc = f.constant * g.constant * self.volume;
        for i in 0..r {
            let m_i = to_f64(self.p.first_moment_exact(i));
            acc += (f.gradient[i] * g.constant + g.gradient[i] * f.constant) * m_i;
            for j in 0..r {
                acc += f.gradient[i] * g.gradient[j] * to_f64(self.p.second_moment_exact(i, j));
            }
        }
        acc
    }

    /// Rejects affine functions whose Lebesgue integral over P is not zero
    /// (up to rounding in the vertex scale).
    pub fn check_normalized(&self, ell: &AffineFunction) -> Result<()> {
        let integral = self.integral_affine(ell);
        let (lo, hi) = affine_range(self.p, ell);
        let scale = 1.0 + lo.abs().max(hi.abs());
        if integral.abs() > 1e-8 * scale * self.volume.max(1.0) {
            return Err(Error::NonNormalizedInput { integral });
        }
        Ok(())
    }

    /// int_P F_k(a, l(x)) dx.
    pub fn interior_f(&self, k: u32, a: f64, ell: &AffineFunction) -> Result<f64> {
        self.ensure_domain(a, ell)?;
        self.int_p(|x| f_k_unchecked(k, a, ell.eval(x)))
    }

    /// int_dP F_k(a, l(x)) dsigma.
    pub fn boundary_f(&self, k: u32, a: f64, ell: &AffineFunction) -> Result<f64> {
        self.ensure_domain(a, ell)?;
        self.int_b(|x| f_k_unchecked(k, a, ell.eval(x)))
    }

    /// S_a(l) = 2 int_dP F_0(a, l) dsigma.
    pub fn s_functional(&self, a: f64, ell: &AffineFunction) -> Result<f64> {
        self.ensure_domain(a, ell)?;
        let val = self.int_b(|x| f_k_unchecked(0, a, ell.eval(x)))?;
        Ok(2.0 * val)
    }

    /// V_a(l) = (int_P F_1(a, l) dx)^(1/(1-a)).
    pub fn v_functional(&self, a: f64, ell: &AffineFunction) -> Result<f64> {
        if a == 1.0 {
            return Err(Error::InvalidParams("V_a is undefined at a = 1".into()));
        }
        self.ensure_domain(a, ell)?;
        let i1 = self.int_p(|x| f_k_unchecked(1, a, ell.eval(x)))?;
        if i1 <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "int F_1 = {i1} is not positive"
            )));
        }
        Ok(i1.powf(1.0 / (1.0 - a)))
    }

    /// The Einstein-Hilbert functional EH_(lambda,a,b)(l) in the lambda
    /// parametrization; a = 0 takes the analytic-extension branch.
    pub fn einstein_hilbert(&self, params: &WeightParams, ell: &AffineFunction) -> Result<f64> {
        let lambda = params.as_lambda()?;
        let a = params.a;
        let b = params.b;
        self.ensure_domain(a, ell)?;
        let s = self.s_functional(a, ell)?;
        let v = self.v_functional(a, ell)?;
        if a == 0.0 {
            let i_le = self.int_p(|x| {
                let l = ell.eval(x);
                l * l.exp()
            })?;
            Ok(s / v + lambda * (-i_le / v + v.ln()) + b / v)
        } else {
            let i0 = self.int_p(|x| f_k_unchecked(0, a, ell.eval(x)))?;
            Ok(s / v + lambda * (-i0 / (a * v) + 1.0 / a) + b / v)
        }
    }

    /// The rescaled functional EH~_(eps,a,b) on normalized affine functions.
    ///
    /// At (eps, a) = (0, 0) this delegates to the explicit limit, which is
    /// independent of b on normalized input.
    pub fn einstein_hilbert_rescaled(
        &self,
        eps: f64,
        a: f64,
        b: f64,
        ell: &AffineFunction,
    ) -> Result<f64> {
        self.check_normalized(ell)?;
        if eps == 0.0 && a == 0.0 {
            return Ok(self.rescaled_limit(ell));
        }
        if eps == 0.0 {
            return Err(Error::InvalidParams(
                "eps = 0 with a != 0 is outside the rescaled family".into(),
            ));
        }
        let scaled = ell.scale(eps);
        self.ensure_domain(a, &scaled)?;
        let vol = self.volume;
        let s = self.s_functional(a, &scaled)?;
        let v = self.v_functional(a, &scaled)?;
        if a == 0.0 {
            let i_le = self.int_p(|x| {
                let l = scaled.eval(x);
                l * l.exp()
            })?;
            let middle = (-i_le / v + v.ln() - vol.ln()) / eps;
            Ok((s / v + middle - self.s_bar + b * (1.0 / v - 1.0 / vol)) / eps)
        } else if (eps * a).abs() < 1e-6 {
            // The direct middle term divides an O(eps a) difference of
            // order-one ratios by eps*a, so its rounding noise grows like
            // 1/(eps^2 a). Below the product threshold its a-expansion
            // (whose linear correction is O(eps^2) on normalized input) is
            // the stable evaluation.
            let v0 = self.int_p(|x| scaled.eval(x).exp())?;
            let i_le = self.int_p(|x| {
                let l = scaled.eval(x);
                l * l.exp()
            })?;
            let v_a0 = vol.powf(1.0 / (1.0 - a));
            let middle = (-i_le / v0 + v0.ln() - vol.ln()) / eps;
            Ok((s / v + middle - self.s_bar + b * (1.0 / v - 1.0 / v_a0)) / eps)
        } else {
            let v_a0 = vol.powf(1.0 / (1.0 - a));
            let i0 = self.int_p(|x| f_k_unchecked(0, a, scaled.eval(x)))?;
            let middle = (vol / v_a0 - i0 / v) / (eps * a);
            Ok((s / v + middle - self.s_bar + b * (1.0 / v - 1.0 / v_a0)) / eps)
        }
    }

    /// Explicit limit of the rescaled functional at (eps, a, b) = (0, 0, 0):
    /// (1/vol) [2 int_dP l dsigma - sbar int_P l dx - 1/2 int_P (l - lbar) l dx].
    pub fn rescaled_limit(&self, ell: &AffineFunction) -> f64 {
        let bdry = self.boundary_integral_affine(ell);
        let mean = self.integral_affine(ell);
        let sq = self.integral_affine_product(ell, ell);
        let centered_sq = sq - mean * mean / self.volume;
        (2.0 * bdry - self.s_bar * mean - 0.5 * centered_sq) / self.volume
    }

    /// Solves the affine Gram system int_P l q dx = 2 int_dP q dsigma for
    /// all affine q.
    pub fn extremal_affine(&self) -> Result<ExtremalData> {
        let r = self.p.dim();
        let vol = self.p.volume_exact();
        let mut matrix = vec![vec![0.0; r + 1]; r + 1];
        let mut rhs = vec![0.0; r + 1];
        for i in 0..r {
            for j in 0..r {
                matrix[i][j] = to_f64(self.p.second_moment_exact(i, j));
            }
            matrix[i][r] = to_f64(self.p.first_moment_exact(i));
            matrix[r][i] = matrix[i][r];
            rhs[i] = 2.0 * to_f64(self.p.boundary_first_moment_exact(i));
        }
        matrix[r][r] = to_f64(vol);
        rhs[r] = 2.0 * self.boundary;
        let sol = solve_dense(&matrix, &rhs).ok_or(Error::SingularGram)?;
        let ell_ext = AffineFunction::new(sol[..r].to_vec(), sol[r]);
        let mut residual = 0.0f64;
        for i in 0..=r {
            let lhs: f64 = (0..=r).map(|j| matrix[i][j] * sol[j]).sum();
            residual = residual.max((lhs - rhs[i]).abs());
        }
        if residual > 1e-10 * (1.0 + rhs.iter().fold(0.0f64, |m, v| m.max(v.abs()))) {
            return Err(Error::SingularGram);
        }
        let mean = self.integral_affine(&ell_ext) / self.volume;
        let ell_norm = ell_ext.sub(&AffineFunction::constant_fn(r, mean));
        Ok(ExtremalData {
            ell_ext,
            ell_ext_normalized: ell_norm,
            mean_scalar: self.s_bar,
            volume: self.volume,
            boundary_measure: self.boundary,
            barycenter: self.p.barycenter(),
            residual,
        })
    }

    /// Fut_(v,w)(l) = 2 int_dP v l dsigma - int_P w l dx.
    pub fn futaki_vw<V, W>(&self, v: V, w: W, ell: &AffineFunction) -> Result<f64>
    where
        V: Fn(&[f64]) -> f64,
        W: Fn(&[f64]) -> f64,
    {
        let bdry = self.int_b(|x| v(x) * ell.eval(x))?;
        let intr = self.int_p(|x| w(x) * ell.eval(x))?;
        Ok(2.0 * bdry - intr)
    }

    /// c_(lambda,a)(l); at a = 0 this is EH_(lambda,0,0)(l) - lambda log V_0(l).
    pub fn c_coeff(&self, lambda: f64, a: f64, ell: &AffineFunction) -> Result<f64> {
        let eh0 = self.einstein_hilbert(&WeightParams::lambda(lambda, a, 0.0), ell)?;
        let v = self.v_functional(a, ell)?;
        if a == 0.0 {
            Ok(eh0 - lambda * v.ln())
        } else {
            let va = v.powf(a);
            Ok(va * eh0 - lambda / a * (va - 1.0))
        }
    }

    /// d_(lambda,a)(l) = (2 int_dP F_1 dsigma - lambda int_P l F_2 dx) / int_P F_2 dx.
    pub fn d_coeff(&self, lambda: f64, a: f64, ell: &AffineFunction) -> Result<f64> {
        self.ensure_domain(a, ell)?;
        let bdry = self.int_b(|x| f_k_unchecked(1, a, ell.eval(x)))?;
        let weighted = self.int_p(|x| {
            let l = ell.eval(x);
            l * f_k_unchecked(2, a, l)
        })?;
        let den = self.int_p(|x| f_k_unchecked(2, a, ell.eval(x)))?;
        Ok((2.0 * bdry - lambda * weighted) / den)
    }

    /// The parametrized Futaki invariant Fut_(lambda,a,b,l)(q).
    pub fn futaki_param(
        &self,
        params: &WeightParams,
        ell: &AffineFunction,
        q: &AffineFunction,
    ) -> Result<f64> {
        Ok(self.futaki_param_batch(params, ell, std::slice::from_ref(q))?[0])
    }

    /// Fut_(lambda,a,b,l) against several directions, sharing the scalar
    /// coefficients across evaluations.
    pub(crate) fn futaki_param_batch(
        &self,
        params: &WeightParams,
        ell: &AffineFunction,
        qs: &[AffineFunction],
    ) -> Result<Vec<f64>> {
        let lambda = params.as_lambda()?;
        let a = params.a;
        let b = params.b;
        self.ensure_domain(a, ell)?;
        let c = self.c_coeff(lambda, a, ell)?;
        let v = self.v_functional(a, ell)?;
        let b_term = if a == 0.0 { b / v } else { b * v.powf(a - 1.0) };
        let mut out = Vec::with_capacity(qs.len());
        for q in qs {
            let bdry = self.int_b(|x| f_k_unchecked(1, a, ell.eval(x)) * q.eval(x))?;
            let intr = self.int_p(|x| {
                let l = ell.eval(x);
                (lambda * l + c + b_term) * f_k_unchecked(2, a, l) * q.eval(x)
            })?;
            out.push(2.0 * bdry - intr);
        }
        Ok(out)
    }

    /// Gradient of EH~_(eps,a,b) along the normalized basis.
    pub fn gradient(&self, eps: f64, a: f64, b: f64, ell: &AffineFunction) -> Result<Vec<f64>> {
        self.check_normalized(ell)?;
        if eps == 0.0 && a == 0.0 {
            return Ok(self.limit_gradient(ell));
        }
        if eps == 0.0 {
            return Err(Error::InvalidParams(
                "eps = 0 with a != 0 is outside the rescaled family".into(),
            ));
        }
        let scaled = ell.scale(eps);
        let params = WeightParams::lambda(1.0 / eps, a, b);
        let futs = self.futaki_param_batch(&params, &scaled, &self.coords.basis)?;
        let v = self.v_functional(a, &scaled)?;
        Ok(futs.into_iter().map(|f| f / v).collect())
    }

    /// Gradient of the explicit limit functional:
    /// g_i = (2 int_dP q_i dsigma - int_P l q_i dx) / vol.
    fn limit_gradient(&self, ell: &AffineFunction) -> Vec<f64> {
        let c = &self.coords;
        (0..c.dim())
            .map(|i| {
                let mixed = self.integral_affine_product(ell, &c.basis[i]);
                (c.boundary_moments[i] - mixed) / c.volume
            })
            .collect()
    }

    /// Hessian of EH~_(eps,a,b) on the normalized basis.
    ///
    /// Analytic (-gram/vol) at the (0,0) limit; central finite differences
    /// of the gradient elsewhere, with the step shrunk as needed to keep the
    /// domain guard positive.
    pub fn hessian(&self, eps: f64, a: f64, b: f64, ell: &AffineFunction) -> Result<Vec<Vec<f64>>> {
        self.check_normalized(ell)?;
        let r = self.coords.dim();
        if eps == 0.0 && a == 0.0 {
            let vol = self.coords.volume;
            return Ok(self
                .coords
                .gram
                .iter()
                .map(|row| row.iter().map(|g| -g / vol).collect())
                .collect());
        }
        if eps == 0.0 {
            return Err(Error::InvalidParams(
                "eps = 0 with a != 0 is outside the rescaled family".into(),
            ));
        }
        let (lo, hi) = affine_range(self.p, ell);
        let mut h = 1e-4 * (1.0 + lo.abs().max(hi.abs()));
        let mut cols: Option<Vec<Vec<f64>>> = None;
        for _ in 0..60 {
            let mut ok = true;
            let mut trial = Vec::with_capacity(r);
            for j in 0..r {
                let plus = ell.add(&self.coords.basis[j].scale(h));
                let minus = ell.add(&self.coords.basis[j].scale(-h));
                if domain_margin(self.p, a, &plus.scale(eps)) <= 0.0
                    || domain_margin(self.p, a, &minus.scale(eps)) <= 0.0
                {
                    ok = false;
                    break;
                }
                let gp = self.gradient(eps, a, b, &plus)?;
                let gm = self.gradient(eps, a, b, &minus)?;
                trial.push(
                    gp.iter()
                        .zip(&gm)
                        .map(|(p, m)| (p - m) / (2.0 * h))
                        .collect(),
                );
            }
            if ok {
                cols = Some(trial);
                break;
            }
            h *= 0.5;
            if h < 1e-10 {
                return Err(Error::FdStepUnderflow);
            }
        }
        let cols = cols.ok_or(Error::FdStepUnderflow)?;
        // Columns hold d(gradient)/d(coord_j); symmetrize.
        let mut out = vec![vec![0.0; r]; r];
        for i in 0..r {
            for j in 0..r {
                out[i][j] = 0.5 * (cols[j][i] + cols[i][j]);
            }
        }
        Ok(out)
    }
}

fn margin_at(a: f64, ell: &AffineFunction, x: &[f64]) -> f64 {
    let v = 1.0 + a * ell.eval(x);
    v.min(2.0 - v)
}

/// A twice-differentiable weight on (a neighborhood of) [0, 1].
///
/// Default derivative implementations use fourth-order central stencils, so
/// implementors only have to provide `value` when closed-form derivatives
/// are inconvenient; the stencil samples slightly outside [0, 1].
pub trait SmoothWeight1d {
    fn value(&self, x: f64) -> f64;

    fn d1(&self, x: f64) -> f64 {
        let h = 1e-2;
        (8.0 * (self.value(x + h) - self.value(x - h))
            - (self.value(x + 2.0 * h) - self.value(x - 2.0 * h)))
            / (12.0 * h)
    }

    fn d2(&self, x: f64) -> f64 {
        let h = 1e-2;
        (-self.value(x + 2.0 * h) + 16.0 * self.value(x + h) - 30.0 * self.value(x)
            + 16.0 * self.value(x - h)
            - self.value(x - 2.0 * h))
            / (12.0 * h * h)
    }
}

/// Weight given by a plain closure; derivatives fall back to stencils.
pub struct NumericWeight<F: Fn(f64) -> f64>(pub F);

impl<F: Fn(f64) -> f64> SmoothWeight1d for NumericWeight<F> {
    fn value(&self, x: f64) -> f64 {
        (self.0)(x)
    }
}

/// Weight with caller-supplied first and second derivatives.
pub struct AnalyticWeight<F, D1, D2>
where
    F: Fn(f64) -> f64,
    D1: Fn(f64) -> f64,
    D2: Fn(f64) -> f64,
{
    pub f: F,
    pub df: D1,
    pub d2f: D2,
}

impl<F, D1, D2> SmoothWeight1d for AnalyticWeight<F, D1, D2>
where
    F: Fn(f64) -> f64,
    D1: Fn(f64) -> f64,
    D2: Fn(f64) -> f64,
{
    fn value(&self, x: f64) -> f64 {
        (self.f)(x)
    }
    fn d1(&self, x: f64) -> f64 {
        (self.df)(x)
    }
    fn d2(&self, x: f64) -> f64 {
        (self.d2f)(x)
    }
}

/// One-dimensional oracle for the boundary normalization.
///
/// With the symmetric potential on [0, 1] (inverse Hessian 2x(1-x)) the
/// weighted scalar curvature is -(v * 2x(1-x))''; the oracle returns
///
///   lhs = -int_0^1 (v(x) 2x(1-x))'' h(x) dx,
///   rhs = 2 (v(0) h(0) + v(1) h(1)),
///
/// which agree for every smooth v and affine h.
pub fn scal_v_oracle_1d<Wt: SmoothWeight1d + ?Sized>(v: &Wt, h: &AffineFunction) -> (f64, f64) {
    let (nodes, weights) = crate::numeric::gauss_legendre_unit(32);
    let mut terms = Vec::with_capacity(nodes.len());
    for (x, w) in nodes.iter().zip(&weights) {
        let phi = 2.0 * x * (1.0 - x);
        let dphi = 2.0 - 4.0 * x;
        let d2phi = -4.0;
        let scal_v = -(v.d2(*x) * phi + 2.0 * v.d1(*x) * dphi + v.value(*x) * d2phi);
        terms.push(w * scal_v * h.eval(&[*x]));
    }
    let lhs = pairwise_sum(&terms);
    let rhs = 2.0 * (v.value(0.0) * h.eval(&[0.0]) + v.value(1.0) * h.eval(&[1.0]));
    (lhs, rhs)
}
