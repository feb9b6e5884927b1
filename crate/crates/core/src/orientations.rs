//! Fitting orientations of rooted forests and their signs.
//!
//! A fitting orientation of `(F, R)` is a bijection `φ: R̄ → F` sending each
//! non-root ridge to a facet containing it. Expanding `det ∂[R̄, F]` as a sum
//! over bijections shows that only fitting orientations contribute; the
//! signed terms `λ(φ)`, rescaled by the sign of the determinant, give
//! `Λ(φ)`, which sums to the homological weight.

use crate::error::{Error, Result};
use crate::forests::{
    FaceSubset, ForestContext, LaplacianWeighting, RootedForest, WeightAssignment,
};
use crate::linalg::{det, Matrix, Polynomial};
use crate::scalar::{sign_of, Scalar};

/// A bijection from the non-root ridges to the facets of a forest.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FittingOrientation {
    ridges: Vec<usize>,
    facets: Vec<usize>,
}

impl FittingOrientation {
    /// Builds from `(ridge, facet)` pairs; pairs are sorted by ridge.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut pairs: Vec<(usize, usize)> = pairs.into_iter().collect();
        pairs.sort_unstable();
        let (ridges, facets) = pairs.into_iter().unzip();
        FittingOrientation { ridges, facets }
    }

    /// `(r, φ(r))` in increasing ridge order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.ridges.iter().copied().zip(self.facets.iter().copied())
    }

    pub fn image(&self, ridge: usize) -> Option<usize> {
        self.ridges
            .binary_search(&ridge)
            .ok()
            .map(|i| self.facets[i])
    }

    /// `φ⁻¹(f)`.
    pub fn preimage(&self, facet: usize) -> Option<usize> {
        self.facets
            .iter()
            .position(|&f| f == facet)
            .map(|i| self.ridges[i])
    }

    pub fn len(&self) -> usize {
        self.ridges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ridges.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrientationSign {
    Plus,
    Minus,
}

impl OrientationSign {
    pub fn value(self) -> i64 {
        match self {
            OrientationSign::Plus => 1,
            OrientationSign::Minus => -1,
        }
    }
}

/// A rooted forest with an ordered pair of fitting orientations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiDirectedForest<T> {
    pub forest: RootedForest<T>,
    pub phi: FittingOrientation,
    pub phi_prime: FittingOrientation,
}

/// A non-trivial cycle `(r_1, ..., r_k)` of `θ = φ⁻¹ ∘ φ′` with the facets
/// `f_i = φ′(r_i) = φ(r_{i+1})` it passes through.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strip {
    pub ridges: Vec<usize>,
    pub facets: Vec<usize>,
    pub oriented: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StripDecomposition {
    pub fixed_points: Vec<usize>,
    pub cycles: Vec<Strip>,
}

impl StripDecomposition {
    pub fn oriented_count(&self) -> usize {
        self.cycles.iter().filter(|c| c.oriented).count()
    }

    /// `(-1)^{#oriented strips}`.
    pub fn parity_sign(&self) -> i64 {
        if self.oriented_count().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

/// `det(L + x Id)` recomputed from bi-directed rooted forests, once from
/// products of orientation signs and once from oriented-strip parities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BidirectedPolynomials<T> {
    pub by_signs: Polynomial<T>,
    pub by_strips: Polynomial<T>,
}

/// Sign of a permutation given as `perm[i] = image of i`.
pub fn permutation_sign(perm: &[usize]) -> i64 {
    let mut seen = vec![false; perm.len()];
    let mut transpositions = 0;
    for start in 0..perm.len() {
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len > 0 {
            transpositions += len - 1;
        }
    }
    if transpositions % 2 == 0 {
        1
    } else {
        -1
    }
}

impl<T: Scalar> ForestContext<T> {
    /// Every fitting orientation of `(F, R)` in lexicographic order of the
    /// image sequence. Requires only `|F| = |R̄|`; a pair that is not a
    /// rooted forest may still have orientations.
    pub fn fitting_orientations(
        &self,
        forest: &FaceSubset,
        root: &FaceSubset,
    ) -> Result<Vec<FittingOrientation>> {
        let non_root = self.non_root(root);
        if non_root.len() != forest.len() {
            return Err(Error::NotRootedForest(
                crate::error::NotRootedReason::SizeMismatch {
                    facets: forest.len(),
                    non_root_ridges: non_root.len(),
                },
            ));
        }
        let options: Vec<Vec<usize>> = non_root
            .members()
            .iter()
            .map(|&r| {
                forest
                    .members()
                    .iter()
                    .copied()
                    .filter(|&f| self.entry(r, f) != 0)
                    .collect()
            })
            .collect();
        let mut out = Vec::new();
        if options.iter().any(Vec::is_empty) {
            return Ok(out);
        }
        let mut used = vec![false; self.facet_count()];
        let mut image = Vec::with_capacity(options.len());
        orient_rec(&options, &mut used, &mut image, &mut |img| {
            out.push(FittingOrientation {
                ridges: non_root.members().to_vec(),
                facets: img.to_vec(),
            })
        });
        Ok(out)
    }

    /// Checks that `phi` is a containment-respecting bijection `R̄ → F`.
    pub fn check_fitting(
        &self,
        forest: &FaceSubset,
        root: &FaceSubset,
        phi: &FittingOrientation,
    ) -> Result<()> {
        let non_root = self.non_root(root);
        if phi.ridges != non_root.members() {
            return Err(Error::NotFitting(
                "domain is not the set of non-root ridges".into(),
            ));
        }
        let mut image = phi.facets.clone();
        image.sort_unstable();
        if image != forest.members() {
            return Err(Error::NotFitting("image is not the forest".into()));
        }
        if let Some((r, f)) = phi.pairs().find(|&(r, f)| self.entry(r, f) == 0) {
            return Err(Error::NotFitting(format!(
                "ridge {} is not contained in facet {}",
                self.ridge_label(r),
                self.facet_label(f)
            )));
        }
        Ok(())
    }

    /// `λ_{α,β}(φ) = sign(π_{α,β,φ}) ∏ ∂[r, φ(r)]`, with `alpha` an ordering
    /// of `R̄` and `beta` an ordering of `F`.
    pub fn lambda_with_orders(
        &self,
        phi: &FittingOrientation,
        alpha: &[usize],
        beta: &[usize],
    ) -> T {
        let perm: Vec<usize> = alpha
            .iter()
            .map(|&r| {
                let f = phi.image(r).expect("alpha orders the domain of phi");
                beta.iter()
                    .position(|&b| b == f)
                    .expect("beta orders the image of phi")
            })
            .collect();
        let product = phi
            .pairs()
            .fold(T::one(), |acc, (r, f)| acc * T::from_int(self.entry(r, f)));
        if permutation_sign(&perm) < 0 {
            -product
        } else {
            product
        }
    }

    /// `λ(φ)` for the stored (lexicographic) orderings of `R̄` and `F`.
    pub fn lambda(&self, forest: &FaceSubset, root: &FaceSubset, phi: &FittingOrientation) -> T {
        self.lambda_with_orders(phi, self.non_root(root).members(), forest.members())
    }

    /// `Λ_{α,β}(φ) = sign(det ∂^{α,β}[R̄, F]) · λ_{α,β}(φ)`.
    pub fn orientation_value_with_orders(
        &self,
        forest: &FaceSubset,
        root: &FaceSubset,
        phi: &FittingOrientation,
        alpha: &[usize],
        beta: &[usize],
    ) -> Result<T> {
        self.rooted_minor(forest, root)?;
        self.check_fitting(forest, root, phi)?;
        let minor = self.minor(alpha, beta)?;
        let lambda = self.lambda_with_orders(phi, alpha, beta);
        Ok(if minor.is_negative() { -lambda } else { lambda })
    }

    /// `Λ(φ)` under the stored orderings. Equal to `±1` for simplicial
    /// complexes; larger incidence entries of a cell complex scale it.
    pub fn orientation_value(
        &self,
        forest: &FaceSubset,
        root: &FaceSubset,
        phi: &FittingOrientation,
    ) -> Result<T> {
        let nr = self.non_root(root);
        self.orientation_value_with_orders(forest, root, phi, nr.members(), forest.members())
    }

    pub fn orientation_sign(
        &self,
        forest: &FaceSubset,
        root: &FaceSubset,
        phi: &FittingOrientation,
    ) -> Result<OrientationSign> {
        let v = self.orientation_value(forest, root, phi)?;
        Ok(if v.is_negative() {
            OrientationSign::Minus
        } else {
            OrientationSign::Plus
        })
    }

    /// `Σ_φ Λ(φ)`, which equals `|H_{d-1}(F, R)|`.
    pub fn signed_orientation_sum(&self, forest: &FaceSubset, root: &FaceSubset) -> Result<T> {
        let minor = self.rooted_minor(forest, root)?;
        let total = self
            .fitting_orientations(forest, root)?
            .iter()
            .fold(T::zero(), |acc, phi| acc + self.lambda(forest, root, phi));
        Ok(if minor.is_negative() { -total } else { total })
    }

    /// `Σ_φ λ(φ)` for any size-matched pair; equals `det ∂[R̄, F]`, hence
    /// vanishes when `(F, R)` is not a rooted forest.
    pub fn sum_lambda_unrooted(&self, forest: &FaceSubset, root: &FaceSubset) -> Result<T> {
        Ok(self
            .fitting_orientations(forest, root)?
            .iter()
            .fold(T::zero(), |acc, phi| acc + self.lambda(forest, root, phi)))
    }

    /// Cycle structure of `θ = φ⁻¹ ∘ φ′` on `R̄`, each non-trivial cycle
    /// tagged oriented when `∏ ∂[r_i, f_i] ∂[r_{i+1}, f_i]` has sign `(-1)^k`.
    pub fn strip_decomposition(
        &self,
        forest: &FaceSubset,
        root: &FaceSubset,
        phi: &FittingOrientation,
        phi_prime: &FittingOrientation,
    ) -> Result<StripDecomposition> {
        self.check_fitting(forest, root, phi)?;
        self.check_fitting(forest, root, phi_prime)?;
        let theta = |r: usize| {
            let f = phi_prime.image(r).expect("fitting");
            phi.preimage(f).expect("fitting")
        };
        let mut fixed_points = Vec::new();
        let mut cycles = Vec::new();
        let mut seen = std::collections::BTreeSet::new();
        for &start in &phi.ridges {
            if !seen.insert(start) {
                continue;
            }
            let next = theta(start);
            if next == start {
                fixed_points.push(start);
                continue;
            }
            let mut ridges = vec![start];
            let mut r = next;
            while r != start {
                seen.insert(r);
                ridges.push(r);
                r = theta(r);
            }
            let k = ridges.len();
            let facets: Vec<usize> = ridges
                .iter()
                .map(|&r| phi_prime.image(r).expect("fitting"))
                .collect();
            let mut sign = 1i64;
            for i in 0..k {
                let (ri, rn, fi) = (ridges[i], ridges[(i + 1) % k], facets[i]);
                sign *= self.entry(ri, fi).signum() * self.entry(rn, fi).signum();
            }
            let oriented = sign == if k % 2 == 0 { 1 } else { -1 };
            cycles.push(Strip {
                ridges,
                facets,
                oriented,
            });
        }
        Ok(StripDecomposition {
            fixed_points,
            cycles,
        })
    }

    /// Calls `visit` on every rooted forest together with its fitting
    /// orientations and their `Λ` values.
    pub fn visit_oriented_forests(
        &self,
        mut visit: impl FnMut(&RootedForest<T>, &[FittingOrientation], &[T]),
    ) -> Result<()> {
        let mut failure = None;
        self.visit_rooted_forests(|rf| {
            if failure.is_some() {
                return;
            }
            let res = self
                .fitting_orientations(&rf.forest, &rf.root)
                .and_then(|phis| {
                    // One minor per forest; the orientations are fitting by construction.
                    let negative = self.signed_minor(&rf.forest, &rf.root)?.is_negative();
                    let values = phis
                        .iter()
                        .map(|phi| {
                            let l = self.lambda(&rf.forest, &rf.root, phi);
                            if negative {
                                -l
                            } else {
                                l
                            }
                        })
                        .collect::<Vec<T>>();
                    Ok((phis, values))
                });
            match res {
                Ok((phis, values)) => visit(rf, &phis, &values),
                Err(e) => failure = Some(e),
            }
        })?;
        failure.map_or(Ok(()), Err)
    }

    /// `Σ Λ(φ)Λ(φ′) x^{|R|}` and `Σ (-1)^{#oriented strips} |λ(φ)λ(φ′)| x^{|R|}`
    /// over all bi-directed rooted forests.
    pub fn bidirected_polynomials(&self) -> Result<BidirectedPolynomials<T>> {
        let mut by_signs = Polynomial::zero();
        let mut by_strips = Polynomial::zero();
        let mut failure = None;
        self.visit_oriented_forests(|rf, phis, values| {
            let k = rf.root.len();
            let magnitudes: Vec<T> = phis
                .iter()
                .map(|p| self.lambda(&rf.forest, &rf.root, p).abs())
                .collect();
            for (i, phi) in phis.iter().enumerate() {
                for (j, phi_prime) in phis.iter().enumerate() {
                    by_signs.add_term(k, values[i].clone() * values[j].clone());
                    match self.strip_decomposition(&rf.forest, &rf.root, phi, phi_prime) {
                        Ok(s) => {
                            let m = magnitudes[i].clone() * magnitudes[j].clone();
                            by_strips.add_term(k, if s.parity_sign() < 0 { -m } else { m });
                        }
                        Err(e) => failure = Some(e),
                    }
                }
            }
        })?;
        if let Some(e) = failure {
            return Err(e);
        }
        Ok(BidirectedPolynomials {
            by_signs,
            by_strips,
        })
    }

    /// Both sides of the weighted bi-directed identity at `a`:
    /// `Σ Λ(φ)Λ(φ′) ∏_{r∈R̄} w_{r,φ(r)} ∏_{r∈R} x_r` and `det(∂^w ∂ᵀ + X)`.
    pub fn weighted_bidirected_sum(&self, a: &WeightAssignment<T>) -> Result<(T, T)> {
        Ok(self
            .weighted_bidirected_sums(std::slice::from_ref(a))?
            .remove(0))
    }

    /// [`Self::weighted_bidirected_sum`] at several points with a single
    /// enumeration.
    pub fn weighted_bidirected_sums(&self, points: &[WeightAssignment<T>]) -> Result<Vec<(T, T)>> {
        let mut xs = Vec::with_capacity(points.len());
        let mut rhs = Vec::with_capacity(points.len());
        for a in points {
            let x = (0..self.ridge_count())
                .map(|r| a.x(r).cloned())
                .collect::<Result<Vec<T>>>()?;
            rhs.push(det(&self
                .weighted_laplacian(a, LaplacianWeighting::GeneralW)?
                .add(&Matrix::diagonal(&x))?)?);
            xs.push(x);
        }
        let mut lhs = vec![T::zero(); points.len()];
        let mut failure = None;
        self.visit_oriented_forests(|rf, phis, values| {
            // Σ_{φ′} Λ(φ′) factors out of the inner sum.
            let sign_total = values.iter().fold(T::zero(), |acc, v| acc + v.clone());
            for (i, a) in points.iter().enumerate() {
                let root_part = rf
                    .root
                    .members()
                    .iter()
                    .fold(T::one(), |acc, &r| acc * xs[i][r].clone());
                for (phi, value) in phis.iter().zip(values) {
                    let w_part = phi.pairs().try_fold(T::one(), |acc, (r, f)| {
                        Ok::<T, Error>(acc * a.w(r, f)?.clone())
                    });
                    match w_part {
                        Ok(w) => {
                            lhs[i] = lhs[i].clone()
                                + value.clone() * sign_total.clone() * w * root_part.clone()
                        }
                        Err(e) => failure = Some(e),
                    }
                }
            }
        })?;
        if let Some(e) = failure {
            return Err(e);
        }
        Ok(lhs.into_iter().zip(rhs).collect())
    }
}

fn orient_rec(
    options: &[Vec<usize>],
    used: &mut [bool],
    image: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
) {
    let i = image.len();
    if i == options.len() {
        emit(image);
        return;
    }
    for &f in &options[i] {
        if used[f] {
            continue;
        }
        used[f] = true;
        image.push(f);
        orient_rec(options, used, image, emit);
        image.pop();
        used[f] = false;
    }
}

/// `Λ(φ)Λ(φ′)` equals `(-1)^{#oriented strips}` for unit incidences; this is
/// the cross-check used by tests and the CLI.
pub fn strip_law_holds<T: Scalar>(
    value_phi: &T,
    value_phi_prime: &T,
    strips: &StripDecomposition,
) -> bool {
    sign_of(value_phi) as i64 * sign_of(value_phi_prime) as i64 == strips.parity_sign()
}
