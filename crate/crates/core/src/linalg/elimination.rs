//! Fraction-free elimination: determinants, ranks and an incremental
//! independence tester.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Exact determinant by Bareiss elimination with row pivoting.
///
/// The 0x0 determinant is 1.
pub fn det<T: Scalar>(m: &Matrix<T>) -> Result<T> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(T::one());
    }
    let mut a = m.to_rows();
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(T::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                // Sylvester's identity guarantees the division is exact.
                let num = a[k][k].clone() * a[i][j].clone() - a[i][k].clone() * a[k][j].clone();
                a[i][j] = num / prev.clone();
            }
            a[i][k] = T::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { -d } else { d })
}

/// Bareiss on machine integers with overflow checks. `None` means an
/// intermediate value left `i128`; callers then fall back to [`det`].
pub fn det_checked_i128(rows: &[Vec<i64>]) -> Option<i128> {
    let n = rows.len();
    let mut a: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| v as i128).collect())
        .collect();
    let mut negate = false;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(i) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return Some(0);
            };
            a.swap(k, i);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[k][k]
                    .checked_mul(a[i][j])?
                    .checked_sub(a[i][k].checked_mul(a[k][j])?)?;
                a[i][j] = num / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    let d = if n == 0 { 1 } else { a[n - 1][n - 1] };
    Some(if negate { -d } else { d })
}

/// Rank over the rationals, computed without leaving the integers.
pub fn rank<T: Scalar>(m: &Matrix<T>) -> usize {
    let mut a = m.to_rows();
    let (rows, cols) = (m.rows(), m.cols());
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let pivot = a[r][c].clone();
        for i in r + 1..rows {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in c..cols {
                a[i][j] = pivot.clone() * a[i][j].clone() - f.clone() * a[r][j].clone();
            }
            normalize(&mut a[i]);
        }
        r += 1;
    }
    r
}

/// Divides a vector by the gcd of its entries.
fn normalize<T: Scalar>(v: &mut [T]) {
    let g = v.iter().fold(T::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x = x.clone() / g.clone();
        }
    }
}

/// Row-echelon basis grown one vector at a time.
///
/// Supports stack-like removal of the most recent vector, which makes it a
/// cheap independence oracle for backtracking searches.
#[derive(Clone, Debug)]
pub struct EchelonBasis<T> {
    dim: usize,
    vectors: Vec<(usize, Vec<T>)>,
}

impl<T: Scalar> EchelonBasis<T> {
    pub fn new(dim: usize) -> Self {
        EchelonBasis {
            dim,
            vectors: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Pushes `v` if it is independent of the current basis.
    pub fn try_push(&mut self, v: &[T]) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        let mut w = v.to_vec();
        for (p, b) in &self.vectors {
            if w[*p].is_zero() {
                continue;
            }
            let (bp, wp) = (b[*p].clone(), w[*p].clone());
            for (x, y) in w.iter_mut().zip(b) {
                *x = bp.clone() * x.clone() - wp.clone() * y.clone();
            }
            normalize(&mut w);
        }
        match w.iter().position(|x| !x.is_zero()) {
            Some(p) => {
                self.vectors.push((p, w));
                true
            }
            None => false,
        }
    }

    pub fn pop(&mut self) {
        self.vectors.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn m(rows: &[Vec<i64>]) -> Matrix<BigInt> {
        Matrix::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn det_small_cases() {
        assert_eq!(
            det(&Matrix::<BigInt>::identity(3)).unwrap(),
            BigInt::from(1)
        );
        assert_eq!(
            det(&Matrix::<BigInt>::zeros(0, 0)).unwrap(),
            BigInt::from(1)
        );
        assert_eq!(
            det(&m(&[vec![0, 1], vec![1, 0]])).unwrap(),
            BigInt::from(-1)
        );
        assert_eq!(
            det(&m(&[vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 2]])).unwrap(),
            BigInt::from(6)
        );
        assert_eq!(det(&m(&[vec![1, 2], vec![2, 4]])).unwrap(), BigInt::from(0));
        assert!(matches!(
            det(&Matrix::<BigInt>::zeros(2, 3)),
            Err(Error::NotSquare { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn checked_det_agrees() {
        let rows = vec![vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 2]];
        assert_eq!(det_checked_i128(&rows), Some(6));
        assert_eq!(det_checked_i128(&[]), Some(1));
        assert_eq!(det_checked_i128(&[vec![1, 2], vec![2, 4]]), Some(0));
        assert_eq!(det_checked_i128(&[vec![0, 1], vec![1, 0]]), Some(-1));
        let huge = vec![
            vec![i64::MAX, 1, 0],
            vec![1, i64::MAX, 1],
            vec![0, 1, i64::MAX],
        ];
        assert_eq!(det_checked_i128(&huge), None);
    }

    #[test]
    fn rank_cases() {
        assert_eq!(rank(&Matrix::<BigInt>::zeros(3, 4)), 0);
        assert_eq!(rank(&m(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 0, 1]])), 2);
        assert_eq!(rank(&Matrix::<i64>::identity(4)), 4);
    }

    #[test]
    fn echelon_push_pop() {
        let mut b = EchelonBasis::<i64>::new(3);
        assert!(b.try_push(&[1, 1, 0]));
        assert!(b.try_push(&[0, 1, 1]));
        assert!(!b.try_push(&[1, 2, 1]));
        assert!(!b.try_push(&[0, 0, 0]));
        assert!(b.try_push(&[1, 0, 0]));
        assert_eq!(b.len(), 3);
        b.pop();
        assert!(!b.try_push(&[2, 3, 1]));
        assert!(b.try_push(&[0, 0, 5]));
    }
}
