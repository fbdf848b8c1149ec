//! Multivariate polynomials with rational coefficients.
//!
//! Used for the exact integration paths: moments, extremal Gram systems, and
//! the exact-vs-quadrature cross checks. Terms are kept in a BTreeMap so all
//! iteration orders are deterministic.

use std::collections::BTreeMap;

use num_traits::{ToPrimitive, Zero};

use crate::rational::{rat, Rat};

/// A polynomial in `dim` variables with rational coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    dim: usize,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl Polynomial {
    pub fn zero(dim: usize) -> Self {
        Polynomial {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, value: Rat) -> Self {
        let mut p = Polynomial::zero(dim);
        p.insert(vec![0; dim], value);
        p
    }

    /// The coordinate function x_i.
    pub fn coordinate(dim: usize, i: usize) -> Self {
        assert!(i < dim, "coordinate index out of range");
        let mut exps = vec![0; dim];
        exps[i] = 1;
        let mut p = Polynomial::zero(dim);
        p.insert(exps, rat(1));
        p
    }

    /// The affine function <gradient, x> + constant.
    pub fn affine(gradient: &[Rat], constant: Rat) -> Self {
        let dim = gradient.len();
        let mut p = Polynomial::constant(dim, constant);
        for (i, g) in gradient.iter().enumerate() {
            let mut exps = vec![0; dim];
            exps[i] = 1;
            p.insert(exps, g.clone());
        }
        p
    }

    /// A single monomial c * x^exps.
    pub fn monomial(exps: Vec<u32>, coeff: Rat) -> Self {
        let mut p = Polynomial::zero(exps.len());
        p.insert(exps, coeff);
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }

    fn insert(&mut self, exps: Vec<u32>, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.scale(&rat(-1)))
    }

    pub fn scale(&self, factor: &Rat) -> Polynomial {
        let mut out = Polynomial::zero(self.dim);
        if factor.is_zero() {
            return out;
        }
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), c * factor);
        }
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.dim, other.dim);
        let mut out = Polynomial::zero(self.dim);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.insert(exps, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut out = Polynomial::constant(self.dim, rat(1));
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    pub fn eval_rat(&self, x: &[Rat]) -> Rat {
        assert_eq!(x.len(), self.dim);
        let mut acc = Rat::zero();
        for (exps, coeff) in &self.terms {
            let mut term = coeff.clone();
            for (xi, &e) in x.iter().zip(exps) {
                for _ in 0..e {
                    term *= xi;
                }
            }
            acc += term;
        }
        acc
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.dim);
        let mut acc = 0.0;
        for (exps, coeff) in &self.terms {
            let mut term = coeff.to_f64().expect("coefficient out of f64 range");
            for (xi, &e) in x.iter().zip(exps) {
                term *= xi.powi(e as i32);
            }
            acc += term;
        }
        acc
    }

    /// Substitutes `forms[i]` for the i-th variable.
    ///
    /// All forms must share a common dimension, which becomes the dimension
    /// of the result.
    pub fn substitute(&self, forms: &[Polynomial]) -> Polynomial {
        assert_eq!(forms.len(), self.dim);
        let target_dim = forms.first().map(|f| f.dim).unwrap_or(0);
        // Memoize powers of each substituted form.
        let mut powers: Vec<Vec<Polynomial>> = forms
            .iter()
            .map(|f| vec![Polynomial::constant(target_dim, rat(1)), f.clone()])
            .collect();
        let mut out = Polynomial::zero(target_dim);
        for (exps, coeff) in &self.terms {
            let mut term = Polynomial::constant(target_dim, coeff.clone());
            for (j, &e) in exps.iter().enumerate() {
                while powers[j].len() <= e as usize {
                    let next = powers[j].last().unwrap().mul(&forms[j]);
                    powers[j].push(next);
                }
                term = term.mul(&powers[j][e as usize]);
            }
            out = out.add(&term);
        }
        out
    }
}
