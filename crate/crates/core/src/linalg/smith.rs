use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Invariant factors `d_1 | d_2 | ... | d_k` of an integer matrix, with
/// `k = min(rows, cols)`. Zero factors (rank deficiency) come last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm<T> {
    pub invariant_factors: Vec<T>,
}

impl<T: Scalar> SmithForm<T> {
    pub fn rank(&self) -> usize {
        self.invariant_factors
            .iter()
            .filter(|d| !d.is_zero())
            .count()
    }

    /// Product of the non-zero invariant factors.
    pub fn nonzero_product(&self) -> T {
        self.invariant_factors
            .iter()
            .filter(|d| !d.is_zero())
            .fold(T::one(), |acc, d| acc * d.clone())
    }

    /// Factors different from one, i.e. the torsion part of the cokernel.
    pub fn torsion(&self) -> Vec<T> {
        self.invariant_factors
            .iter()
            .filter(|d| !d.is_one() && !d.is_zero())
            .cloned()
            .collect()
    }

    pub fn satisfies_divisibility(&self) -> bool {
        self.invariant_factors.windows(2).all(|w| {
            !w[0].is_negative()
                && (w[1].is_zero() || (!w[0].is_zero() && w[1].is_multiple_of(&w[0])))
        }) && self.invariant_factors.iter().all(|d| !d.is_negative())
    }
}

/// Smith normal form by elementary row and column operations.
///
/// At each step the entry of smallest non-zero absolute value in the
/// remaining block becomes the pivot; its row and column are cleared by
/// Euclidean steps, and a pivot that fails to divide the rest of the block
/// absorbs an offending row before the step repeats.
pub fn smith_normal_form<T: Scalar>(m: &Matrix<T>) -> SmithForm<T> {
    let mut a = m.to_rows();
    let (rows, cols) = (m.rows(), m.cols());
    let k_max = rows.min(cols);
    let mut factors = Vec::with_capacity(k_max);

    let mut t = 0;
    while t < k_max {
        let Some((pr, pc)) = smallest_nonzero(&a, t, rows, cols) else {
            break;
        };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }
        loop {
            let mut dirty = false;
            // Clear column t below the pivot.
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let v = a[i][j].clone() - q.clone() * a[t][j].clone();
                    a[i][j] = v;
                }
                if !a[i][t].is_zero() {
                    dirty = true;
                }
            }
            // Clear row t right of the pivot.
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let v = row[j].clone() - q.clone() * row[t].clone();
                    row[j] = v;
                }
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // A smaller remainder appeared in the pivot row or column.
                let (pr, pc) = smallest_in_cross(&a, t, rows, cols);
                a.swap(t, pr);
                for row in a.iter_mut() {
                    row.swap(t, pc);
                }
                continue;
            }
            // Pivot must divide the remaining block.
            let p = a[t][t].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        let v = a[t][j].clone() + a[i][j].clone();
                        a[t][j] = v;
                    }
                }
                None => break,
            }
        }
        factors.push(a[t][t].abs());
        t += 1;
    }
    factors.resize(k_max, T::zero());
    SmithForm {
        invariant_factors: factors,
    }
}

fn smallest_nonzero<T: Scalar>(
    a: &[Vec<T>],
    t: usize,
    rows: usize,
    cols: usize,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, T)> = None;
    for (i, row) in a.iter().enumerate().take(rows).skip(t) {
        for (j, v) in row.iter().enumerate().take(cols).skip(t) {
            if v.is_zero() {
                continue;
            }
            let mag = v.abs();
            if best.as_ref().is_none_or(|(_, _, b)| mag < *b) {
                best = Some((i, j, mag));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

fn smallest_in_cross<T: Scalar>(
    a: &[Vec<T>],
    t: usize,
    rows: usize,
    cols: usize,
) -> (usize, usize) {
    let mut best = (t, t, a[t][t].abs());
    for (i, row) in a.iter().enumerate().take(rows).skip(t + 1) {
        let v = &row[t];
        if !v.is_zero() && v.abs() < best.2 {
            best = (i, t, v.abs());
        }
    }
    for j in t + 1..cols {
        let v = &a[t][j];
        if !v.is_zero() && v.abs() < best.2 {
            best = (t, j, v.abs());
        }
    }
    (best.0, best.1)
}
