//! Simplicial and cell complexes with their integer boundary matrices.
//!
//! Faces of each grade are kept in a fixed order (lexicographic on vertex
//! lists for simplicial complexes) and every matrix row/column index refers
//! to a position in those lists. Downstream determinant signs depend on this
//! order.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// A simplex given by its strictly increasing vertex labels.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Face(Vec<u64>);

impl Face {
    /// Sorts the labels; rejects repeats and non-positive labels.
    pub fn new(vertices: &[i64]) -> Result<Self> {
        if vertices.iter().any(|&v| v <= 0) {
            return Err(Error::NonPositiveVertex(vertices.to_vec()));
        }
        let mut vs: Vec<u64> = vertices.iter().map(|&v| v as u64).collect();
        vs.sort_unstable();
        if vs.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicateVertex(vertices.to_vec()));
        }
        Ok(Face(vs))
    }

    pub fn vertices(&self) -> &[u64] {
        &self.0
    }

    pub fn dimension(&self) -> usize {
        self.0.len() - 1
    }

    /// The face with the `j`-th vertex removed.
    pub fn without(&self, j: usize) -> Face {
        let mut vs = self.0.clone();
        vs.remove(j);
        Face(vs)
    }

    pub fn is_subset_of(&self, other: &Face) -> bool {
        self.0.iter().all(|v| other.0.binary_search(v).is_ok())
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Sparse incidence matrix stored by column: `(row, value)` pairs sorted by row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Incidence {
    pub rows: usize,
    pub columns: Vec<Vec<(usize, i64)>>,
}

impl Incidence {
    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn to_matrix<T: Scalar>(&self) -> Matrix<T> {
        let mut m = Matrix::zeros(self.rows, self.columns.len());
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                m[(r, c)] = T::from_int(v);
            }
        }
        m
    }

    /// Entry lookup; zero when absent.
    pub fn entry(&self, row: usize, col: usize) -> i64 {
        self.columns[col]
            .binary_search_by_key(&row, |&(r, _)| r)
            .map_or(0, |i| self.columns[col][i].1)
    }

    /// `true` when `self * upper` is the zero matrix.
    fn composes_to_zero(&self, upper: &Incidence) -> bool {
        upper.columns.iter().all(|col| {
            let mut acc: HashMap<usize, i128> = HashMap::new();
            for &(mid, b) in col {
                for &(r, a) in &self.columns[mid] {
                    *acc.entry(r).or_default() += a as i128 * b as i128;
                }
            }
            acc.values().all(|&v| v == 0)
        })
    }
}

/// A simplicial complex graded by dimension, each grade sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    faces_by_dim: Vec<Vec<Face>>,
    index_by_dim: Vec<HashMap<Face, usize>>,
}

impl SimplicialComplex {
    /// Downward closure of a facet list.
    pub fn from_facets<V: AsRef<[i64]>>(facets: &[V]) -> Result<Self> {
        if facets.is_empty() {
            return Err(Error::EmptyFacets);
        }
        let facets = facets
            .iter()
            .map(|f| {
                let face = Face::new(f.as_ref())?;
                if face.0.len() < 2 {
                    return Err(Error::FacetTooSmall(f.as_ref().to_vec()));
                }
                Ok(face)
            })
            .collect::<Result<Vec<_>>>()?;
        let dim = facets.iter().map(Face::dimension).max().unwrap_or(0);
        let mut grades: Vec<BTreeSet<Face>> = vec![BTreeSet::new(); dim + 1];
        for f in facets {
            close_downward(f, &mut grades);
        }
        let faces_by_dim: Vec<Vec<Face>> = grades
            .into_iter()
            .map(|g| g.into_iter().collect())
            .collect();
        let index_by_dim = faces_by_dim
            .iter()
            .map(|g| g.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect())
            .collect();
        Ok(SimplicialComplex {
            faces_by_dim,
            index_by_dim,
        })
    }

    pub fn dimension(&self) -> usize {
        self.faces_by_dim.len() - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.faces_by_dim[0].len()
    }

    /// Faces of grade `k` in lexicographic order.
    pub fn faces(&self, k: usize) -> &[Face] {
        self.faces_by_dim.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn face_counts(&self) -> Vec<usize> {
        self.faces_by_dim.iter().map(Vec::len).collect()
    }

    pub fn index_of(&self, face: &Face) -> Option<usize> {
        self.index_by_dim
            .get(face.dimension())
            .and_then(|m| m.get(face).copied())
    }

    /// Inclusion-maximal faces, sorted by dimension then lexicographically.
    pub fn facets(&self) -> Vec<Face> {
        let mut out = Vec::new();
        for k in 0..=self.dimension() {
            for f in &self.faces_by_dim[k] {
                let covered = self
                    .faces_by_dim
                    .get(k + 1)
                    .is_some_and(|up| up.iter().any(|g| f.is_subset_of(g)));
                if !covered {
                    out.push(f.clone());
                }
            }
        }
        out
    }

    /// Sparse `∂_k`; entry `[f \ v_j, f] = (-1)^j`.
    pub fn incidence(&self, k: usize) -> Result<Incidence> {
        if k == 0 || k > self.dimension() {
            return Err(Error::DimensionOutOfRange {
                k,
                max: self.dimension(),
            });
        }
        let columns = self.faces_by_dim[k]
            .iter()
            .map(|f| {
                let mut col: Vec<(usize, i64)> = (0..=k)
                    .map(|j| {
                        let r = self.index_by_dim[k - 1][&f.without(j)];
                        (r, if j % 2 == 0 { 1 } else { -1 })
                    })
                    .collect();
                col.sort_unstable();
                col
            })
            .collect();
        Ok(Incidence {
            rows: self.faces_by_dim[k - 1].len(),
            columns,
        })
    }

    pub fn boundary_matrix<T: Scalar>(&self, k: usize) -> Result<Matrix<T>> {
        Ok(self.incidence(k)?.to_matrix())
    }
}

fn close_downward(f: Face, grades: &mut [BTreeSet<Face>]) {
    let k = f.dimension();
    if !grades[k].insert(f.clone()) || k == 0 {
        return;
    }
    for j in 0..=k {
        close_downward(f.without(j), grades);
    }
}

/// A regular cell complex given by face identifiers and incidence matrices.
///
/// `incidence[k - 1]` is `D_k`, rows indexed by `(k-1)`-faces and columns by
/// `k`-faces. Construction asserts `D_{k-1} D_k = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellComplexData {
    face_ids: Vec<Vec<String>>,
    incidence: Vec<Incidence>,
}

impl CellComplexData {
    pub fn new(face_ids: Vec<Vec<String>>, incidence: Vec<Incidence>) -> Result<Self> {
        if face_ids.len() < 2 {
            return Err(Error::Malformed("cell complex needs dimension >= 1".into()));
        }
        let d = face_ids.len() - 1;
        if incidence.len() != d {
            return Err(Error::Malformed(format!(
                "expected {d} incidence matrices, got {}",
                incidence.len()
            )));
        }
        for (i, inc) in incidence.iter().enumerate() {
            let k = i + 1;
            if inc.rows != face_ids[k - 1].len() || inc.cols() != face_ids[k].len() {
                return Err(Error::Malformed(format!(
                    "D_{k} is {}x{}, expected {}x{}",
                    inc.rows,
                    inc.cols(),
                    face_ids[k - 1].len(),
                    face_ids[k].len()
                )));
            }
            for col in &inc.columns {
                if col.iter().any(|&(r, _)| r >= inc.rows) {
                    return Err(Error::Malformed(format!("D_{k} row index out of range")));
                }
                if col.windows(2).any(|w| w[0].0 >= w[1].0) {
                    return Err(Error::Malformed(format!(
                        "D_{k} column entries must be unique and sorted by row"
                    )));
                }
            }
        }
        for k in 2..=d {
            if !incidence[k - 2].composes_to_zero(&incidence[k - 1]) {
                return Err(Error::BoundaryNotClosed {
                    lower: k - 1,
                    upper: k,
                });
            }
        }
        Ok(CellComplexData {
            face_ids,
            incidence,
        })
    }

    pub fn dimension(&self) -> usize {
        self.face_ids.len() - 1
    }

    pub fn face_ids(&self, k: usize) -> &[String] {
        self.face_ids.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn face_counts(&self) -> Vec<usize> {
        self.face_ids.iter().map(Vec::len).collect()
    }

    pub fn incidence(&self, k: usize) -> Result<&Incidence> {
        if k == 0 || k > self.dimension() {
            return Err(Error::DimensionOutOfRange {
                k,
                max: self.dimension(),
            });
        }
        Ok(&self.incidence[k - 1])
    }

    pub fn boundary_matrix<T: Scalar>(&self, k: usize) -> Result<Matrix<T>> {
        Ok(self.incidence(k)?.to_matrix())
    }
}

/// Either kind of complex accepted by the forest machinery.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Complex {
    Simplicial(SimplicialComplex),
    Cell(CellComplexData),
}

impl Complex {
    pub fn dimension(&self) -> usize {
        match self {
            Complex::Simplicial(s) => s.dimension(),
            Complex::Cell(c) => c.dimension(),
        }
    }

    pub fn face_counts(&self) -> Vec<usize> {
        match self {
            Complex::Simplicial(s) => s.face_counts(),
            Complex::Cell(c) => c.face_counts(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Complex::Simplicial(_) => "simplicial",
            Complex::Cell(_) => "cell",
        }
    }

    pub fn incidence(&self, k: usize) -> Result<Incidence> {
        match self {
            Complex::Simplicial(s) => s.incidence(k),
            Complex::Cell(c) => c.incidence(k).cloned(),
        }
    }

    pub fn boundary_matrix<T: Scalar>(&self, k: usize) -> Result<Matrix<T>> {
        Ok(self.incidence(k)?.to_matrix())
    }

    /// Human-readable labels of the grade-`k` faces.
    pub fn face_labels(&self, k: usize) -> Vec<String> {
        match self {
            Complex::Simplicial(s) => s.faces(k).iter().map(Face::to_string).collect(),
            Complex::Cell(c) => c.face_ids(k).to_vec(),
        }
    }
}

impl From<SimplicialComplex> for Complex {
    fn from(s: SimplicialComplex) -> Self {
        Complex::Simplicial(s)
    }
}

impl From<CellComplexData> for Complex {
    fn from(c: CellComplexData) -> Self {
        Complex::Cell(c)
    }
}
