use std::fmt;

use num_rational::Ratio;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{det, Matrix};
use crate::scalar::Scalar;

/// Univariate polynomial with exact coefficients, lowest degree first.
///
/// Trailing zero coefficients are trimmed, so the zero polynomial has an
/// empty coefficient list.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial {
            coeffs: vec![T::one()],
        }
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = T::one();
        Polynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| T::from_int(c)).collect())
    }

    /// `prod (x + a)^m` over the given `(a, m)` pairs.
    pub fn from_shifted_roots(factors: &[(i64, usize)]) -> Self {
        let mut p = Self::one();
        for &(a, m) in factors {
            let lin = Self::from_i64(&[a, 1]);
            for _ in 0..m {
                p = p.mul(&lin);
            }
        }
        p
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    /// Adds `c * x^k` in place.
    pub fn add_term(&mut self, k: usize, c: T) {
        if self.coeffs.len() <= k {
            self.coeffs.resize(k + 1, T::zero());
        }
        self.coeffs[k] = self.coeffs[k].clone() + c;
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    /// `true` when every coefficient is non-negative.
    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }
}

impl<T: Scalar> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{mag}x^{k}")?,
            }
        }
        Ok(())
    }
}

/// `det(M + x * Id)` as an exact polynomial.
///
/// The determinant is evaluated at `x = 0, 1, ..., m` and the values are
/// interpolated in Newton form over the rationals. Each coefficient must come
/// out integral; otherwise the kernel has a bug and an error is returned.
pub fn char_poly_shifted<T: Scalar>(m: &Matrix<T>) -> Result<Polynomial<T>> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let values = (0..=n)
        .map(|t| det(&m.shifted(&T::from_int(t as i64))?))
        .collect::<Result<Vec<T>>>()?;
    interpolate_consecutive(&values)
}

/// Interpolates the polynomial of degree `< values.len()` with
/// `p(t) = values[t]` for `t = 0, 1, ...`, requiring integer coefficients.
pub fn interpolate_consecutive<T: Scalar>(values: &[T]) -> Result<Polynomial<T>> {
    // Divided differences on nodes 0..n.
    let mut dd: Vec<Ratio<T>> = values.iter().cloned().map(Ratio::from_integer).collect();
    let n = dd.len();
    for level in 1..n {
        for i in (level..n).rev() {
            let diff = dd[i].clone() - dd[i - 1].clone();
            dd[i] = diff / Ratio::from_integer(T::from_int(level as i64));
        }
    }
    // Horner on the Newton basis: p = dd0 + (x-0)(dd1 + (x-1)(dd2 + ...)).
    let mut acc: Vec<Ratio<T>> = Vec::new();
    for i in (0..n).rev() {
        // acc <- acc * (x - i) + dd[i]
        let mut next = vec![Ratio::<T>::zero(); acc.len() + 1];
        let node = Ratio::from_integer(T::from_int(i as i64));
        for (k, a) in acc.iter().enumerate() {
            next[k + 1] = next[k + 1].clone() + a.clone();
            next[k] = next[k].clone() - a.clone() * node.clone();
        }
        next[0] = next[0].clone() + dd[i].clone();
        acc = next;
    }
    let coeffs = acc
        .into_iter()
        .enumerate()
        .map(|(degree, c)| {
            if c.denom().is_one() {
                Ok(c.to_integer())
            } else {
                Err(Error::NonIntegerCoefficient {
                    degree,
                    value: c.to_string(),
                })
            }
        })
        .collect::<Result<Vec<T>>>()?;
    Ok(Polynomial::new(coeffs))
}
