//! Benchmark complexes.

use crate::complex::{CellComplexData, Incidence, SimplicialComplex};
use crate::error::{Error, Result};

/// Complete `d`-dimensional complex on `n` vertices: every subset of `[n]`
/// with at most `d + 1` elements.
pub fn complete(n: usize, d: usize) -> Result<SimplicialComplex> {
    if d == 0 || d >= n {
        return Err(Error::InvalidParameters(format!(
            "complete complex needs 1 <= d < n, got n={n}, d={d}"
        )));
    }
    SimplicialComplex::from_facets(&subsets(n, d + 1))
}

/// Boundary of the `(n-1)`-simplex: all proper subsets of `[n]`.
pub fn simplex_boundary(n: usize) -> Result<SimplicialComplex> {
    if n < 3 {
        return Err(Error::InvalidParameters(format!(
            "simplex boundary needs n >= 3, got {n}"
        )));
    }
    SimplicialComplex::from_facets(&subsets(n, n - 1))
}

/// Equatorial bipyramid: apexes 1 and 5 over the triangle {2,3,4}, all seven
/// triangles on the 1-skeleton `K_5` minus the edge {1,5}.
pub fn bipyramid() -> SimplicialComplex {
    SimplicialComplex::from_facets(&[
        [1, 2, 3],
        [1, 2, 4],
        [1, 3, 4],
        [2, 3, 4],
        [2, 3, 5],
        [2, 4, 5],
        [3, 4, 5],
    ])
    .expect("static facet list")
}

/// Six-vertex real projective plane (antipodal quotient of the icosahedron).
pub fn projective_plane_6() -> SimplicialComplex {
    SimplicialComplex::from_facets(&[
        [1, 2, 3],
        [1, 3, 4],
        [1, 4, 5],
        [1, 5, 6],
        [1, 2, 6],
        [2, 3, 5],
        [3, 4, 6],
        [2, 4, 5],
        [3, 5, 6],
        [2, 4, 6],
    ])
    .expect("static facet list")
}

/// `d`-skeleton of the `n`-cube as a cubical complex.
///
/// A `k`-face is a word over `{0, 1, *}` of length `n` with exactly `k`
/// stars (free coordinates). Faces of each grade are sorted by their word.
/// For free coordinates `j_1 < ... < j_k` the boundary is
/// `sum_i (-1)^(i-1) (face[x_{j_i} = 1] - face[x_{j_i} = 0])`.
pub fn hypercube(n: usize, d: usize) -> Result<CellComplexData> {
    if d == 0 || d > n {
        return Err(Error::InvalidParameters(format!(
            "hypercube needs 1 <= d <= n, got n={n}, d={d}"
        )));
    }
    let words_by_dim: Vec<Vec<String>> = (0..=d)
        .map(|k| {
            let mut words: Vec<String> = (0..3usize.pow(n as u32))
                .map(|code| {
                    let mut c = code;
                    (0..n)
                        .map(|_| {
                            let ch = ['0', '1', '*'][c % 3];
                            c /= 3;
                            ch
                        })
                        .collect::<String>()
                })
                .filter(|w| w.chars().filter(|&ch| ch == '*').count() == k)
                .collect();
            words.sort();
            words
        })
        .collect();

    let incidence = (1..=d)
        .map(|k| {
            let lower = &words_by_dim[k - 1];
            let columns = words_by_dim[k]
                .iter()
                .map(|w| {
                    let mut col = Vec::with_capacity(2 * k);
                    let stars = w
                        .char_indices()
                        .filter(|&(_, ch)| ch == '*')
                        .map(|(j, _)| j);
                    for (i, j) in stars.enumerate() {
                        let sign = if i % 2 == 0 { 1 } else { -1 };
                        for (bit, s) in [('1', sign), ('0', -sign)] {
                            let mut face: Vec<char> = w.chars().collect();
                            face[j] = bit;
                            let face: String = face.into_iter().collect();
                            let row = lower
                                .binary_search(&face)
                                .expect("face of a cube is a cube");
                            col.push((row, s));
                        }
                    }
                    col.sort_unstable();
                    col
                })
                .collect();
            Incidence {
                rows: lower.len(),
                columns,
            }
        })
        .collect();
    CellComplexData::new(words_by_dim, incidence)
}

/// All `k`-subsets of `[n]` in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: i64, n: i64, k: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..=n {
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(1, n as i64, k, &mut cur, &mut out);
    out
}
