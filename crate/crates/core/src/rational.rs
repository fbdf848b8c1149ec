//! Exact rational arithmetic helpers: parsing, linear solves, ranks.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number used on all exact paths.
pub type Rat = num_rational::BigRational;

/// Rational from an integer.
pub fn rat(i: i64) -> Rat {
    Rat::from_integer(BigInt::from(i))
}

/// Rational p/q from integers; panics on q = 0.
pub fn rat_frac(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Lossy conversion to f64.
pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().expect("rational out of f64 range")
}

/// Parses "p/q" or "p" into a rational.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad rational numerator in {s:?}")))?;
            let q: BigInt = q
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad rational denominator in {s:?}")))?;
            if q.is_zero() {
                return Err(Error::InvalidInput(format!("zero denominator in {s:?}")));
            }
            Ok(Rat::new(p, q))
        }
        None => {
            let p: BigInt = s
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad rational literal {s:?}")))?;
            Ok(Rat::from_integer(p))
        }
    }
}

/// n! as a BigInt.
pub fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::from(1);
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    acc
}

/// Solves `a x = b` exactly; `None` when `a` is singular.
pub fn solve_exact(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = b.len();
    let mut m: Vec<Vec<Rat>> = a.to_vec();
    let mut rhs = b.to_vec();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &m[col][col];
            for c in col..n {
                let delta = &factor * &m[col][c];
                m[r][c] -= delta;
            }
            let delta = &factor * &rhs[col];
            rhs[r] -= delta;
        }
    }
    let mut x = vec![Rat::zero(); n];
    for row in (0..n).rev() {
        let mut acc = rhs[row].clone();
        for c in row + 1..n {
            acc -= &m[row][c] * &x[c];
        }
        x[row] = acc / &m[row][row];
    }
    Some(x)
}

/// Row rank of a rational matrix.
pub fn rank_exact(a: &[Vec<Rat>]) -> usize {
    if a.is_empty() {
        return 0;
    }
    let cols = a[0].len();
    let mut m: Vec<Vec<Rat>> = a.to_vec();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        for r in rank + 1..m.len() {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &m[rank][col];
            for c in col..cols {
                let delta = &factor * &m[rank][c];
                m[r][c] -= delta;
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Determinant of a square rational matrix.
pub fn det_exact(a: &[Vec<Rat>]) -> Rat {
    let n = a.len();
    let mut m: Vec<Vec<Rat>> = a.to_vec();
    let mut det = Rat::from_integer(BigInt::from(1));
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rat::zero();
        };
        if pivot != col {
            m.swap(col, pivot);
            det = -det;
        }
        det *= m[col][col].clone();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &m[col][col];
            for c in col..n {
                let delta = &factor * &m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    det
}

/// One nonzero kernel vector of a rational matrix with more columns than its
/// rank, scaled to integer entries; `None` when the kernel is trivial.
pub fn kernel_vector(a: &[Vec<Rat>], cols: usize) -> Option<Vec<BigInt>> {
    // Row-reduce, then back-substitute with one free variable set to 1.
    let mut m: Vec<Vec<Rat>> = a.to_vec();
    let rows = m.len();
    let mut pivot_col = vec![usize::MAX; rows];
    let mut r = 0;
    for col in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        pivot_col[r] = col;
        for i in 0..rows {
            if i != r && !m[i][col].is_zero() {
                let factor = &m[i][col] / &m[r][col];
                for c in 0..cols {
                    let delta = &factor * &m[r][c];
                    m[i][c] -= delta;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    let pivots: Vec<usize> = pivot_col.iter().take(r).copied().collect();
    let free = (0..cols).find(|c| !pivots.contains(c))?;
    let mut x = vec![Rat::zero(); cols];
    x[free] = Rat::from_integer(BigInt::from(1));
    for (row, &pc) in pivots.iter().enumerate() {
        // pivot row: m[row][pc] * x[pc] + m[row][free] * 1 = 0
        x[pc] = -&m[row][free] / &m[row][pc];
    }
    // Clear denominators.
    let mut lcm = BigInt::from(1);
    for xi in &x {
        lcm = num_integer::lcm(lcm, xi.denom().clone());
    }
    let ints: Vec<BigInt> = x.iter().map(|xi| (xi * &lcm).to_integer()).collect();
    if ints.iter().all(|v| v.is_zero()) {
        None
    } else {
        Some(ints)
    }
}

/// Absolute value.
pub fn rat_abs(r: &Rat) -> Rat {
    r.abs()
}
