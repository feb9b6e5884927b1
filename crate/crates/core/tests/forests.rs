use std::collections::BTreeSet;

use num_traits::{One, Zero};
use simplicial_forests::forests::ForestContext as GenericContext;
use simplicial_forests::format::{parse_complex, write_complex};
use simplicial_forests::linalg::{det, rank};
use simplicial_forests::{
    generators, BigInt, Complex, Error, FaceSubset, ForestContext, IntMatrix, IntPolynomial,
    NotRootedReason, SimplicialComplex, WeightAssignment,
};

fn ctx(c: impl Into<Complex>) -> ForestContext {
    ForestContext::new(&c.into()).unwrap()
}

fn corpus() -> Vec<(&'static str, Complex)> {
    vec![
        ("bipyramid", generators::bipyramid().into()),
        ("rp2", generators::projective_plane_6().into()),
        ("K_4^2", generators::complete(4, 2).unwrap().into()),
        ("K_5^2", generators::complete(5, 2).unwrap().into()),
        ("K_4^3", generators::complete(4, 3).unwrap().into()),
        ("K_4", generators::complete(4, 1).unwrap().into()),
        ("sphere", generators::simplex_boundary(4).unwrap().into()),
        ("Q_3^2", generators::hypercube(3, 2).unwrap().into()),
        ("Q_3^3", generators::hypercube(3, 3).unwrap().into()),
        ("Q_3^1", generators::hypercube(3, 1).unwrap().into()),
    ]
}

#[test]
fn boundary_of_boundary_vanishes() {
    for (name, c) in corpus() {
        for k in 2..=c.dimension() {
            let upper: IntMatrix = c.boundary_matrix(k).unwrap();
            let lower: IntMatrix = c.boundary_matrix(k - 1).unwrap();
            assert!(
                lower.mul(&upper).unwrap().is_zero(),
                "{name}: D_{} D_{k} != 0",
                k - 1
            );
        }
    }
}

#[test]
fn regeneration_is_idempotent() {
    for (name, c) in corpus() {
        let once = write_complex(&c);
        let parsed = parse_complex(&once).unwrap();
        assert_eq!(parsed, c, "{name}");
        assert_eq!(write_complex(&parsed), once, "{name}");
    }
}

#[test]
fn generator_facet_counts() {
    assert_eq!(generators::bipyramid().facets().len(), 7);
    assert_eq!(generators::complete(4, 2).unwrap().facets().len(), 4);
    assert_eq!(generators::projective_plane_6().facets().len(), 10);
    assert_eq!(
        generators::hypercube(3, 2).unwrap().face_counts(),
        [8, 12, 6]
    );
    assert_eq!(
        generators::hypercube(4, 3).unwrap().face_counts(),
        [16, 32, 24, 8]
    );
}

#[test]
fn complete_complex_polynomials() {
    for (n, d) in [(3, 1), (5, 1), (4, 2), (5, 3), (5, 4), (6, 2)] {
        let g = ctx(generators::complete(n, d).unwrap());
        let choose = |a: usize, b: usize| (0..b).fold(1usize, |acc, i| acc * (a - i) / (i + 1));
        let expected = IntPolynomial::from_shifted_roots(&[
            (0, choose(n - 1, d - 1)),
            (n as i64, choose(n - 1, d)),
        ]);
        assert_eq!(g.laplacian_char_poly().unwrap(), expected, "K_{n}^{d}");
    }
}

#[test]
fn hypercube_polynomials() {
    // x^{|Q_{d-1}|} prod_j (x + 2j)^{...} specialised by hand.
    let g = ctx(generators::hypercube(3, 2).unwrap());
    let expected = IntPolynomial::from_shifted_roots(&[(0, 7), (4, 3), (6, 2)]);
    assert_eq!(g.laplacian_char_poly().unwrap(), expected);
    assert_eq!(g.rooted_forest_polynomial().unwrap(), expected);
    // 3-cube graph: Laplacian spectrum 0, 2^3, 4^3, 6.
    let g = ctx(generators::hypercube(3, 1).unwrap());
    let expected = IntPolynomial::from_shifted_roots(&[(0, 1), (2, 3), (4, 3), (6, 1)]);
    assert_eq!(g.rooted_forest_polynomial().unwrap(), expected);
}

#[test]
fn forests_form_an_independence_system() {
    for (name, c) in corpus() {
        let g = ctx(c);
        if g.facet_count() > 12 {
            continue;
        }
        let forests: BTreeSet<Vec<usize>> = g
            .forests()
            .unwrap()
            .into_iter()
            .map(|f| f.members().to_vec())
            .collect();
        assert!(forests.contains(&Vec::new()), "{name}");
        for f in &forests {
            let sub = g.facet_subset(f.iter().copied()).unwrap();
            assert!(g.is_forest(&sub), "{name}: {f:?}");
            for i in 0..f.len() {
                let mut smaller = f.clone();
                smaller.remove(i);
                assert!(
                    forests.contains(&smaller),
                    "{name}: subset of {f:?} missing"
                );
            }
        }
        // Brute force: every independent subset is listed.
        let n = g.facet_count();
        let independent = (0u32..1 << n)
            .filter(|mask| {
                let s = g
                    .facet_subset((0..n).filter(|i| mask & (1 << i) != 0))
                    .unwrap();
                g.is_forest(&s)
            })
            .count();
        assert_eq!(forests.len(), independent, "{name}");
    }
}

#[test]
fn spanning_forests_have_rank_size() {
    for (name, c) in corpus() {
        let g = ctx(c);
        let r = rank(g.boundary());
        assert_eq!(g.rank(), r, "{name}");
        for f in g.spanning_forests().unwrap() {
            assert_eq!(f.len(), r, "{name}");
            assert!(g.is_spanning(&f) && g.is_forest(&f), "{name}");
        }
        for root in g.roots().unwrap() {
            assert_eq!(root.len(), g.ridge_count() - r, "{name}");
            assert!(
                g.is_relatively_free(&root) && g.is_relatively_generating(&root),
                "{name}"
            );
        }
    }
}

#[test]
fn rooted_forests_match_brute_force_on_small_complexes() {
    for c in [
        Complex::from(generators::complete(4, 2).unwrap()),
        generators::bipyramid().into(),
        generators::hypercube(2, 2).unwrap().into(),
    ] {
        let g = ctx(c);
        let (nf, nr) = (g.facet_count(), g.ridge_count());
        let mut expected = BTreeSet::new();
        for fm in 0u32..1 << nf {
            let f: Vec<usize> = (0..nf).filter(|i| fm & (1 << i) != 0).collect();
            for rm in 0u32..1 << nr {
                let nonroot: Vec<usize> = (0..nr).filter(|i| rm & (1 << i) != 0).collect();
                if nonroot.len() != f.len() {
                    continue;
                }
                let m = g.boundary().submatrix(&nonroot, &f).unwrap();
                let d = det(&m).unwrap();
                if !d.is_zero() {
                    let root: Vec<usize> = (0..nr).filter(|i| rm & (1 << i) == 0).collect();
                    expected.insert((f.clone(), root, &d * &d));
                }
            }
        }
        let got: BTreeSet<_> = g
            .rooted_forests()
            .unwrap()
            .into_iter()
            .map(|rf| {
                (
                    rf.forest.members().to_vec(),
                    rf.root.members().to_vec(),
                    &rf.weight * &rf.weight,
                )
            })
            .collect();
        assert_eq!(got, expected);
    }
}

#[test]
fn matrix_tree_for_every_root() {
    for (name, c) in corpus() {
        let g = ctx(c);
        if g.ridge_count() > 12 {
            continue;
        }
        for root in g.roots().unwrap() {
            assert_eq!(
                g.matrix_tree_lhs(&root).unwrap(),
                g.matrix_tree_rhs(&root).unwrap(),
                "{name}"
            );
        }
    }
    let g = ctx(generators::bipyramid());
    let not_root = g.ridge_subset([0]).unwrap();
    assert!(matches!(g.matrix_tree_rhs(&not_root), Err(Error::NotARoot)));
}

#[test]
fn weighted_identity_specialises_to_char_poly() {
    let g = ctx(generators::bipyramid());
    let p = g.laplacian_char_poly().unwrap();
    for t in 0..4 {
        let a = WeightAssignment::uniform(&g, BigInt::from(t), BigInt::one());
        let (lhs, rhs) = g.weighted_rooted_forest_sum(&a).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, p.eval(&BigInt::from(t)));
    }
    for seed in 0..5 {
        let a = WeightAssignment::seeded(&g, seed, -3, 7);
        let (lhs, rhs) = g.weighted_rooted_forest_sum(&a).unwrap();
        assert_eq!(lhs, rhs, "seed {seed}");
    }
}

#[test]
fn missing_weight_is_reported() {
    let g = ctx(generators::bipyramid());
    let mut a = WeightAssignment::uniform(&g, BigInt::one(), BigInt::one());
    a.y.remove(&3);
    assert!(matches!(
        g.weighted_rooted_forest_sum(&a),
        Err(Error::MissingWeight(_))
    ));
}

#[test]
fn rooted_forest_errors_distinguish_reasons() {
    let g = ctx(generators::complete(4, 2).unwrap());
    let f = g.facet_subset([0, 1]).unwrap();
    let r = g.ridge_subset([0]).unwrap();
    assert!(matches!(
        g.homology_weight(&f, &r),
        Err(Error::NotRootedForest(NotRootedReason::SizeMismatch {
            facets: 2,
            non_root_ridges: 5
        }))
    ));
    // {1,2,3} with non-root ridge {3,4}: not contained, so the minor vanishes.
    let f = g.facet_subset([0]).unwrap();
    let r = FaceSubset::new(1, [5], 6).unwrap().complement(6);
    assert!(matches!(
        g.homology_weight(&f, &r),
        Err(Error::NotRootedForest(NotRootedReason::SingularMinor))
    ));
}

#[test]
fn rp2_forests_carry_torsion() {
    let g = ctx(generators::projective_plane_6());
    let all = g.all_facets();
    let root = g.roots().unwrap().remove(0);
    assert_eq!(g.homology_weight(&all, &root).unwrap(), BigInt::from(2));
    let snf = g.homology_structure(&all, &root).unwrap();
    assert_eq!(snf.torsion(), [BigInt::from(2)]);
}

#[test]
fn caps_are_refusals() {
    let g = ctx(generators::complete(7, 2).unwrap());
    assert!(matches!(g.forests(), Err(Error::CapExceeded { .. })));
    assert!(matches!(
        g.rooted_forest_polynomial(),
        Err(Error::CapExceeded { .. })
    ));
    // Char poly is unaffected by caps.
    assert!(g.laplacian_char_poly().is_ok());
}

#[test]
fn mixed_dimension_complex() {
    // A triangle plus a dangling edge: the edge is a ridge lying in no facet.
    let c = SimplicialComplex::from_facets(&[vec![1, 2, 3], vec![3, 4]]).unwrap();
    let g = ctx(c);
    assert_eq!(g.ridge_count(), 4);
    let p = g.rooted_forest_polynomial().unwrap();
    assert_eq!(p, g.laplacian_char_poly().unwrap());
    // x^4 + 3x^3: the dangling edge is in every root.
    assert_eq!(p, IntPolynomial::from_i64(&[0, 0, 0, 3, 1]));
}

#[test]
fn machine_integer_context_agrees() {
    let c: Complex = generators::bipyramid().into();
    let small: GenericContext<i64> = GenericContext::new(&c).unwrap();
    let p = small.rooted_forest_polynomial().unwrap();
    assert_eq!(p.coeffs(), &[0, 0, 0, 0, 1125, 1425, 710, 174, 21, 1]);
    assert_eq!(small.laplacian_char_poly().unwrap(), p);
}
