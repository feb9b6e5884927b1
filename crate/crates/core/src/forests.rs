//! Forests, roots and rooted forests of a `d`-dimensional complex, and the
//! enumerative identities relating them to the Laplacian.
//!
//! Everything here is driven by the top boundary matrix `∂_d`, with rows
//! indexed by ridges (`(d-1)`-faces) and columns by facets (`d`-faces).
//! A rooted forest is a pair `(F, R)` with `|F| = |R̄|` and
//! `det ∂[R̄, F] != 0`, where `R̄` is the set of ridges outside `R`; its
//! homological weight is `|det ∂[R̄, F]|`.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{Complex, Incidence};
use crate::error::{Error, NotRootedReason, Result};
use crate::linalg::{
    char_poly_shifted, det, det_checked_i128, rank, smith_normal_form, EchelonBasis, Matrix,
    Polynomial, SmithForm,
};
use crate::scalar::Scalar;

/// Sorted, duplicate-free set of face indices of one grade.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FaceSubset {
    grade: usize,
    members: Vec<usize>,
}

impl FaceSubset {
    /// Validates `members` against a grade of `len` faces.
    pub fn new(grade: usize, members: impl IntoIterator<Item = usize>, len: usize) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        for w in members.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateIndex(w[0]));
            }
        }
        if let Some(&bad) = members.iter().find(|&&i| i >= len) {
            return Err(Error::IndexOutOfBounds { index: bad, len });
        }
        Ok(FaceSubset { grade, members })
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    /// Indices in `0..len` not in the set.
    pub fn complement(&self, len: usize) -> FaceSubset {
        FaceSubset {
            grade: self.grade,
            members: (0..len).filter(|&i| !self.contains(i)).collect(),
        }
    }

    /// A copy with member `i` removed.
    pub fn without(&self, i: usize) -> FaceSubset {
        FaceSubset {
            grade: self.grade,
            members: self.members.iter().copied().filter(|&m| m != i).collect(),
        }
    }
}

/// A rooted forest with its homological weight `|det ∂[R̄, F]| >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedForest<T> {
    pub forest: FaceSubset,
    pub root: FaceSubset,
    pub weight: T,
}

/// Integer values for the indeterminates `x_r`, `y_f` and `w_{r,f}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightAssignment<T> {
    pub x: BTreeMap<usize, T>,
    pub y: BTreeMap<usize, T>,
    pub w: BTreeMap<(usize, usize), T>,
}

impl<T: Scalar> WeightAssignment<T> {
    /// `x_r = x`, `y_f = y` and `w_{r,f} = 1` everywhere.
    pub fn uniform<S: Scalar>(ctx: &ForestContext<S>, x: T, y: T) -> Self {
        WeightAssignment {
            x: (0..ctx.ridge_count()).map(|r| (r, x.clone())).collect(),
            y: (0..ctx.facet_count()).map(|f| (f, y.clone())).collect(),
            w: ctx.incident_pairs().map(|p| (p, T::one())).collect(),
        }
    }

    /// Independent uniform draws from `lo..=hi` for every key, reproducible
    /// from `seed`.
    pub fn seeded<S: Scalar>(ctx: &ForestContext<S>, seed: u64, lo: i64, hi: i64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut draw = || T::from_int(rng.gen_range(lo..=hi));
        let x = (0..ctx.ridge_count()).map(|r| (r, draw())).collect();
        let y = (0..ctx.facet_count()).map(|f| (f, draw())).collect();
        let w = ctx.incident_pairs().map(|p| (p, draw())).collect();
        WeightAssignment { x, y, w }
    }

    pub fn x(&self, r: usize) -> Result<&T> {
        self.x
            .get(&r)
            .ok_or_else(|| Error::MissingWeight(format!("x of ridge {r}")))
    }

    pub fn y(&self, f: usize) -> Result<&T> {
        self.y
            .get(&f)
            .ok_or_else(|| Error::MissingWeight(format!("y of facet {f}")))
    }

    pub fn w(&self, r: usize, f: usize) -> Result<&T> {
        self.w
            .get(&(r, f))
            .ok_or_else(|| Error::MissingWeight(format!("w of pair (ridge {r}, facet {f})")))
    }
}

/// How entries of `∂` are weighted before forming the Laplacian.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LaplacianWeighting {
    /// `∂ Y ∂ᵀ` with `Y = diag(y_f)`.
    FacetY,
    /// `∂^w ∂ᵀ`, each entry of the left factor multiplied by `w_{r,f}`.
    GeneralW,
}

/// Refusal thresholds for exponential enumerations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub max_facets: usize,
    pub max_ridges: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_facets: 20,
            max_ridges: 20,
        }
    }
}

/// The top boundary matrix of a complex together with everything the forest
/// predicates and enumerations need.
#[derive(Clone, Debug)]
pub struct ForestContext<T> {
    dimension: usize,
    ridge_labels: Vec<String>,
    facet_labels: Vec<String>,
    incidence: Incidence,
    boundary: Matrix<T>,
    dense: Vec<Vec<i64>>,
    rank: usize,
    caps: Caps,
}

impl<T: Scalar> ForestContext<T> {
    pub fn new(complex: &Complex) -> Result<Self> {
        let d = complex.dimension();
        let incidence = complex.incidence(d)?;
        let boundary = incidence.to_matrix();
        let rank = rank(&boundary);
        let mut dense = vec![vec![0; incidence.cols()]; incidence.rows];
        for (c, col) in incidence.columns.iter().enumerate() {
            for &(r, v) in col {
                dense[r][c] = v;
            }
        }
        Ok(ForestContext {
            dimension: d,
            ridge_labels: complex.face_labels(d - 1),
            facet_labels: complex.face_labels(d),
            incidence,
            boundary,
            dense,
            rank,
            caps: Caps::default(),
        })
    }

    pub fn with_caps(mut self, caps: Caps) -> Self {
        self.caps = caps;
        self
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn ridge_count(&self) -> usize {
        self.boundary.rows()
    }

    pub fn facet_count(&self) -> usize {
        self.boundary.cols()
    }

    pub fn ridge_label(&self, r: usize) -> &str {
        &self.ridge_labels[r]
    }

    pub fn facet_label(&self, f: usize) -> &str {
        &self.facet_labels[f]
    }

    /// `∂_d` with rows = ridges, columns = facets.
    pub fn boundary(&self) -> &Matrix<T> {
        &self.boundary
    }

    pub fn incidence(&self) -> &Incidence {
        &self.incidence
    }

    /// Entry `∂[r, f]` as a machine integer.
    pub fn entry(&self, r: usize, f: usize) -> i64 {
        self.dense[r][f]
    }

    /// `det ∂[rows, cols]` in the given orders, with a machine-integer fast
    /// path.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<T> {
        if rows.len() != cols.len() {
            return Err(Error::NotSquare {
                rows: rows.len(),
                cols: cols.len(),
            });
        }
        let small: Vec<Vec<i64>> = rows
            .iter()
            .map(|&r| {
                cols.iter()
                    .map(|&c| self.dense.get(r).and_then(|row| row.get(c)).copied())
                    .collect()
            })
            .collect::<Option<_>>()
            .ok_or(Error::IndexOutOfBounds {
                index: rows.iter().chain(cols).copied().max().unwrap_or(0),
                len: self.ridge_count().max(self.facet_count()),
            })?;
        match det_checked_i128(&small).and_then(T::from_i128) {
            Some(d) => Ok(d),
            None => det(&self.boundary.submatrix(rows, cols)?),
        }
    }

    /// Rank of `∂_d` over the rationals.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `(ridge, facet)` pairs with a non-zero incidence entry, column-major.
    pub fn incident_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.incidence
            .columns
            .iter()
            .enumerate()
            .flat_map(|(f, col)| col.iter().map(move |&(r, _)| (r, f)))
    }

    pub fn facet_subset(&self, members: impl IntoIterator<Item = usize>) -> Result<FaceSubset> {
        FaceSubset::new(self.dimension, members, self.facet_count())
    }

    pub fn ridge_subset(&self, members: impl IntoIterator<Item = usize>) -> Result<FaceSubset> {
        FaceSubset::new(self.dimension - 1, members, self.ridge_count())
    }

    pub fn all_facets(&self) -> FaceSubset {
        self.facet_subset(0..self.facet_count())
            .expect("full range")
    }

    pub fn all_ridges(&self) -> FaceSubset {
        self.ridge_subset(0..self.ridge_count())
            .expect("full range")
    }

    /// `R̄ = G_{d-1} \ R`.
    pub fn non_root(&self, root: &FaceSubset) -> FaceSubset {
        root.complement(self.ridge_count())
    }

    /// `L = ∂ ∂ᵀ`, indexed by ridges.
    pub fn laplacian(&self) -> Matrix<T> {
        self.boundary
            .mul(&self.boundary.transpose())
            .expect("conformable")
    }

    pub fn weighted_laplacian(
        &self,
        a: &WeightAssignment<T>,
        mode: LaplacianWeighting,
    ) -> Result<Matrix<T>> {
        let left = match mode {
            LaplacianWeighting::FacetY => {
                let y = (0..self.facet_count())
                    .map(|f| a.y(f).cloned())
                    .collect::<Result<Vec<T>>>()?;
                self.boundary.scale_columns(&y)?
            }
            LaplacianWeighting::GeneralW => {
                let mut m = self.boundary.clone();
                for (r, f) in self.incident_pairs() {
                    m[(r, f)] = m[(r, f)].clone() * a.w(r, f)?.clone();
                }
                m
            }
        };
        left.mul(&self.boundary.transpose())
    }

    fn columns_rank(&self, f: &FaceSubset) -> usize {
        rank(
            &self
                .boundary
                .submatrix(&self.all_ridges().members, &f.members)
                .expect("valid subset"),
        )
    }

    fn rows_rank(&self, rows: &FaceSubset) -> usize {
        rank(
            &self
                .boundary
                .submatrix(&rows.members, &self.all_facets().members)
                .expect("valid subset"),
        )
    }

    /// Columns of `∂` indexed by `f` are independent.
    pub fn is_forest(&self, f: &FaceSubset) -> bool {
        f.grade == self.dimension && self.columns_rank(f) == f.len()
    }

    /// Columns of `∂` indexed by `f` have full rank.
    pub fn is_spanning(&self, f: &FaceSubset) -> bool {
        f.grade == self.dimension && self.columns_rank(f) == self.rank
    }

    /// Rows of `R̄` have maximal rank (`R` contains no boundary).
    pub fn is_relatively_free(&self, root: &FaceSubset) -> bool {
        root.grade + 1 == self.dimension && self.rows_rank(&self.non_root(root)) == self.rank
    }

    /// Rows of `R̄` are independent.
    pub fn is_relatively_generating(&self, root: &FaceSubset) -> bool {
        let nr = self.non_root(root);
        root.grade + 1 == self.dimension && self.rows_rank(&nr) == nr.len()
    }

    /// Rows of `R̄` form a basis of the row space of `∂`.
    pub fn is_root(&self, root: &FaceSubset) -> bool {
        let nr = self.non_root(root);
        root.grade + 1 == self.dimension
            && nr.len() == self.rank
            && self.rows_rank(&nr) == self.rank
    }

    /// `det ∂[R̄, F]` with rows and columns in stored order.
    pub fn signed_minor(&self, forest: &FaceSubset, root: &FaceSubset) -> Result<T> {
        let nr = self.non_root(root);
        if nr.len() != forest.len() {
            return Err(Error::NotRootedForest(NotRootedReason::SizeMismatch {
                facets: forest.len(),
                non_root_ridges: nr.len(),
            }));
        }
        self.minor(&nr.members, &forest.members)
    }

    /// The non-zero `det ∂[R̄, F]` of a rooted forest, or the reason the pair
    /// is not one.
    pub fn rooted_minor(&self, forest: &FaceSubset, root: &FaceSubset) -> Result<T> {
        let d = self.signed_minor(forest, root)?;
        if d.is_zero() {
            Err(Error::NotRootedForest(NotRootedReason::SingularMinor))
        } else {
            Ok(d)
        }
    }

    pub fn is_rooted_forest(&self, forest: &FaceSubset, root: &FaceSubset) -> bool {
        forest.grade == self.dimension
            && root.grade + 1 == self.dimension
            && self.rooted_minor(forest, root).is_ok()
    }

    /// `|H_{d-1}(F, R)| = |det ∂[R̄, F]|`.
    pub fn homology_weight(&self, forest: &FaceSubset, root: &FaceSubset) -> Result<T> {
        Ok(self.rooted_minor(forest, root)?.abs())
    }

    /// Invariant factors of `∂[R̄, F]`, i.e. the structure of `H_{d-1}(F, R)`.
    pub fn homology_structure(
        &self,
        forest: &FaceSubset,
        root: &FaceSubset,
    ) -> Result<SmithForm<T>> {
        self.rooted_minor(forest, root)?;
        let nr = self.non_root(root);
        Ok(smith_normal_form(
            &self.boundary.submatrix(&nr.members, &forest.members)?,
        ))
    }

    fn check_caps(&self) -> Result<()> {
        if self.facet_count() > self.caps.max_facets {
            return Err(Error::CapExceeded {
                what: "facet set",
                size: self.facet_count(),
                cap: self.caps.max_facets,
            });
        }
        if self.ridge_count() > self.caps.max_ridges {
            return Err(Error::CapExceeded {
                what: "ridge set",
                size: self.ridge_count(),
                cap: self.caps.max_ridges,
            });
        }
        Ok(())
    }

    /// Calls `visit` on every forest (independent facet set), backtracking
    /// over facets in stored order with an incremental independence test.
    pub fn visit_forests(&self, mut visit: impl FnMut(&FaceSubset)) -> Result<()> {
        self.check_caps()?;
        let columns: Vec<Vec<T>> = (0..self.facet_count())
            .map(|f| self.boundary.column(f))
            .collect();
        let mut basis = EchelonBasis::new(self.ridge_count());
        let mut chosen = Vec::new();
        self.forest_rec(0, &columns, &mut basis, &mut chosen, None, &mut visit);
        Ok(())
    }

    fn forest_rec(
        &self,
        next: usize,
        columns: &[Vec<T>],
        basis: &mut EchelonBasis<T>,
        chosen: &mut Vec<usize>,
        target: Option<usize>,
        visit: &mut impl FnMut(&FaceSubset),
    ) {
        if target.is_some_and(|t| chosen.len() + (columns.len() - next) < t) {
            return;
        }
        if next == columns.len() || target == Some(chosen.len()) {
            if target.is_none_or(|t| t == chosen.len()) {
                visit(&FaceSubset {
                    grade: self.dimension,
                    members: chosen.clone(),
                });
            }
            return;
        }
        if basis.try_push(&columns[next]) {
            chosen.push(next);
            self.forest_rec(next + 1, columns, basis, chosen, target, visit);
            chosen.pop();
            basis.pop();
        }
        self.forest_rec(next + 1, columns, basis, chosen, target, visit);
    }

    pub fn forests(&self) -> Result<Vec<FaceSubset>> {
        let mut out = Vec::new();
        self.visit_forests(|f| out.push(f.clone()))?;
        Ok(out)
    }

    /// Column bases of `∂`.
    pub fn spanning_forests(&self) -> Result<Vec<FaceSubset>> {
        self.check_caps()?;
        let columns: Vec<Vec<T>> = (0..self.facet_count())
            .map(|f| self.boundary.column(f))
            .collect();
        let mut basis = EchelonBasis::new(self.ridge_count());
        let mut out = Vec::new();
        self.forest_rec(
            0,
            &columns,
            &mut basis,
            &mut Vec::new(),
            Some(self.rank),
            &mut |f| out.push(f.clone()),
        );
        Ok(out)
    }

    /// Subsets `S` of `candidates` with `|S| = size` whose rows, restricted
    /// to `cols`, are independent. Each is passed to `visit` in stored order.
    fn visit_row_bases(&self, cols: &[usize], size: usize, visit: &mut impl FnMut(&[usize])) {
        let candidates: Vec<usize> = (0..self.ridge_count())
            .filter(|&r| cols.iter().any(|&f| !self.boundary[(r, f)].is_zero()))
            .collect();
        let rows: Vec<Vec<T>> = candidates
            .iter()
            .map(|&r| {
                cols.iter()
                    .map(|&f| self.boundary[(r, f)].clone())
                    .collect()
            })
            .collect();
        let mut basis = EchelonBasis::new(cols.len());
        let mut chosen = Vec::with_capacity(size);
        row_rec(0, &candidates, &rows, size, &mut basis, &mut chosen, visit);
    }

    /// Every root of the complex (complements of row bases of `∂`).
    pub fn roots(&self) -> Result<Vec<FaceSubset>> {
        self.check_caps()?;
        let mut out = Vec::new();
        let all = self.all_facets();
        self.visit_row_bases(&all.members, self.rank, &mut |rows| {
            let nr = FaceSubset {
                grade: self.dimension - 1,
                members: rows.to_vec(),
            };
            out.push(nr.complement(self.ridge_count()));
        });
        Ok(out)
    }

    /// Calls `visit` on every rooted forest exactly once: forests in
    /// backtracking order, and for each forest its roots as complements of
    /// row bases of `∂[·, F]`.
    pub fn visit_rooted_forests(&self, mut visit: impl FnMut(&RootedForest<T>)) -> Result<()> {
        self.check_caps()?;
        self.visit_forests(|forest| {
            self.visit_row_bases(&forest.members, forest.len(), &mut |rows| {
                let weight = self
                    .minor(rows, &forest.members)
                    .expect("valid subset")
                    .abs();
                debug_assert!(!weight.is_zero());
                let nr = FaceSubset {
                    grade: self.dimension - 1,
                    members: rows.to_vec(),
                };
                visit(&RootedForest {
                    forest: forest.clone(),
                    root: nr.complement(self.ridge_count()),
                    weight,
                });
            });
        })
    }

    pub fn rooted_forests(&self) -> Result<Vec<RootedForest<T>>> {
        let mut out = Vec::new();
        self.visit_rooted_forests(|rf| out.push(rf.clone()))?;
        Ok(out)
    }

    /// `sum |H_{d-1}(F,R)|^2 x^{|R|}` over all rooted forests.
    pub fn rooted_forest_polynomial(&self) -> Result<Polynomial<T>> {
        let mut p = Polynomial::zero();
        self.visit_rooted_forests(|rf| {
            p.add_term(rf.root.len(), rf.weight.clone() * rf.weight.clone())
        })?;
        Ok(p)
    }

    /// `det(L + x Id)`.
    pub fn laplacian_char_poly(&self) -> Result<Polynomial<T>> {
        char_poly_shifted(&self.laplacian())
    }

    /// Both sides of the weighted forest identity at `a`:
    /// `sum |H|^2 prod_{r in R} x_r prod_{f in F} y_f` and `det(∂ Y ∂ᵀ + X)`.
    pub fn weighted_rooted_forest_sum(&self, a: &WeightAssignment<T>) -> Result<(T, T)> {
        Ok(self
            .weighted_rooted_forest_sums(std::slice::from_ref(a))?
            .remove(0))
    }

    /// [`Self::weighted_rooted_forest_sum`] at several points with a single
    /// enumeration.
    pub fn weighted_rooted_forest_sums(
        &self,
        points: &[WeightAssignment<T>],
    ) -> Result<Vec<(T, T)>> {
        let mut xs = Vec::with_capacity(points.len());
        let mut ys = Vec::with_capacity(points.len());
        for a in points {
            xs.push(
                (0..self.ridge_count())
                    .map(|r| a.x(r).cloned())
                    .collect::<Result<Vec<T>>>()?,
            );
            ys.push(
                (0..self.facet_count())
                    .map(|f| a.y(f).cloned())
                    .collect::<Result<Vec<T>>>()?,
            );
        }
        let mut lhs = vec![T::zero(); points.len()];
        self.visit_rooted_forests(|rf| {
            let squared = rf.weight.clone() * rf.weight.clone();
            for (i, total) in lhs.iter_mut().enumerate() {
                let mut term = squared.clone();
                for &r in rf.root.members() {
                    term = term * xs[i][r].clone();
                }
                for &f in rf.forest.members() {
                    term = term * ys[i][f].clone();
                }
                *total = total.clone() + term;
            }
        })?;
        let mut out = Vec::with_capacity(points.len());
        for ((a, x), l) in points.iter().zip(&xs).zip(lhs) {
            let rhs = det(&self
                .weighted_laplacian(a, LaplacianWeighting::FacetY)?
                .add(&Matrix::diagonal(x))?)?;
            out.push((l, rhs));
        }
        Ok(out)
    }

    /// `det L^R`: the Laplacian with the rows and columns of `root` removed.
    pub fn matrix_tree_rhs(&self, root: &FaceSubset) -> Result<T> {
        if !self.is_root(root) {
            return Err(Error::NotARoot);
        }
        let keep = self.non_root(root);
        det(&self.laplacian().submatrix(&keep.members, &keep.members)?)
    }

    /// `sum |H_{d-1}(F, R)|^2` over spanning forests `F`, for a fixed root.
    pub fn matrix_tree_lhs(&self, root: &FaceSubset) -> Result<T> {
        if !self.is_root(root) {
            return Err(Error::NotARoot);
        }
        let mut total = T::zero();
        for f in self.spanning_forests()? {
            let m = self.signed_minor(&f, root)?;
            total = total + m.clone() * m;
        }
        Ok(total)
    }
}

fn row_rec<T: Scalar>(
    next: usize,
    candidates: &[usize],
    rows: &[Vec<T>],
    size: usize,
    basis: &mut EchelonBasis<T>,
    chosen: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    if chosen.len() == size {
        visit(chosen);
        return;
    }
    if chosen.len() + (candidates.len() - next) < size {
        return;
    }
    if basis.try_push(&rows[next]) {
        chosen.push(candidates[next]);
        row_rec(next + 1, candidates, rows, size, basis, chosen, visit);
        chosen.pop();
        basis.pop();
    }
    row_rec(next + 1, candidates, rows, size, basis, chosen, visit);
}
