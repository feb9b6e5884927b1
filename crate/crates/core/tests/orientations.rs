use std::collections::{BTreeMap, VecDeque};

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use simplicial_forests::format::parse_complex;
use simplicial_forests::orientations::strip_law_holds;
use simplicial_forests::{
    generators, BigInt, Complex, FaceSubset, ForestContext, IntPolynomial, OrientationSign,
    WeightAssignment,
};

fn ctx(c: impl Into<Complex>) -> ForestContext {
    ForestContext::new(&c.into()).unwrap()
}

#[test]
fn sign_is_independent_of_orderings() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for c in [
        Complex::from(generators::bipyramid()),
        generators::complete(5, 2).unwrap().into(),
        generators::hypercube(3, 2).unwrap().into(),
    ] {
        let g = ctx(c);
        let mut checked = 0;
        g.visit_oriented_forests(|rf, phis, values| {
            let nr = g.non_root(&rf.root);
            for (phi, v) in phis.iter().zip(values) {
                for _ in 0..5 {
                    let mut alpha = nr.members().to_vec();
                    let mut beta = rf.forest.members().to_vec();
                    alpha.shuffle(&mut rng);
                    beta.shuffle(&mut rng);
                    let w = g
                        .orientation_value_with_orders(&rf.forest, &rf.root, phi, &alpha, &beta)
                        .unwrap();
                    assert_eq!(&w, v);
                }
                checked += 1;
            }
        })
        .unwrap();
        assert!(checked > 0);
    }
}

/// Distances from the root vertices inside the forest's edges.
fn depths(g: &ForestContext, forest: &FaceSubset, root: &FaceSubset) -> BTreeMap<usize, usize> {
    let mut depth: BTreeMap<usize, usize> = root.members().iter().map(|&r| (r, 0)).collect();
    let mut queue: VecDeque<usize> = root.members().iter().copied().collect();
    while let Some(v) = queue.pop_front() {
        for &e in forest.members() {
            if g.entry(v, e) == 0 {
                continue;
            }
            for u in 0..g.ridge_count() {
                if u != v && g.entry(u, e) != 0 && !depth.contains_key(&u) {
                    depth.insert(u, depth[&v] + 1);
                    queue.push_back(u);
                }
            }
        }
    }
    depth
}

#[test]
fn graph_orientations_point_away_from_roots() {
    for n in 3..=5 {
        let g = ctx(generators::complete(n, 1).unwrap());
        let mut count = 0;
        g.visit_oriented_forests(|rf, phis, values| {
            assert_eq!(phis.len(), 1);
            assert_eq!(values, [BigInt::one()]);
            let depth = depths(&g, &rf.forest, &rf.root);
            for (v, e) in phis[0].pairs() {
                let other = (0..g.ridge_count())
                    .find(|&u| u != v && g.entry(u, e) != 0)
                    .unwrap();
                assert_eq!(depth[&v], depth[&other] + 1, "vertex {v} edge {e}");
            }
            count += 1;
        })
        .unwrap();
        // Rooted forests of K_n: sum over k of C(n,k) k n^{n-k-1}.
        let expected: usize = (1..=n)
            .map(|k| {
                let c = (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1));
                c * k * n.pow((n - k) as u32) / n
            })
            .sum();
        assert_eq!(count, expected, "K_{n}");
    }
}

#[test]
fn rp2_root_has_two_positive_orientations() {
    let g = ctx(generators::projective_plane_6());
    let all = g.all_facets();
    for root in g.roots().unwrap().into_iter().step_by(97) {
        let phis = g.fitting_orientations(&all, &root).unwrap();
        assert!(phis.len() >= 2);
        assert_eq!(
            g.signed_orientation_sum(&all, &root).unwrap(),
            BigInt::from(2)
        );
        if phis.len() == 2 {
            for phi in &phis {
                assert_eq!(
                    g.orientation_sign(&all, &root, phi).unwrap(),
                    OrientationSign::Plus
                );
            }
            let s = g
                .strip_decomposition(&all, &root, &phis[0], &phis[1])
                .unwrap();
            assert_eq!(s.oriented_count() % 2, 0);
        }
        for p in &phis {
            for q in &phis {
                let s = g.strip_decomposition(&all, &root, p, q).unwrap();
                let (vp, vq) = (
                    g.orientation_value(&all, &root, p).unwrap(),
                    g.orientation_value(&all, &root, q).unwrap(),
                );
                assert!(strip_law_holds(&vp, &vq, &s));
            }
        }
    }
}

#[test]
fn bipyramid_rooted_forests_have_unit_signed_sums() {
    let g = ctx(generators::bipyramid());
    g.visit_oriented_forests(|rf, phis, values| {
        assert_eq!(rf.weight, BigInt::one());
        assert!(!phis.is_empty());
        let total: BigInt = values.iter().sum();
        assert_eq!(total, BigInt::one());
    })
    .unwrap();
}

#[test]
fn empty_forest_with_full_root() {
    let g = ctx(generators::bipyramid());
    let empty = g.facet_subset([]).unwrap();
    let all = g.all_ridges();
    let phis = g.fitting_orientations(&empty, &all).unwrap();
    assert_eq!(phis.len(), 1);
    assert!(phis[0].is_empty());
    assert_eq!(
        g.signed_orientation_sum(&empty, &all).unwrap(),
        BigInt::one()
    );
    assert_eq!(g.sum_lambda_unrooted(&empty, &all).unwrap(), BigInt::one());
}

#[test]
fn lambda_sum_is_the_minor() {
    let g = ctx(generators::complete(4, 2).unwrap());
    let (nf, nr) = (g.facet_count(), g.ridge_count());
    for fm in 0u32..1 << nf {
        let f = g
            .facet_subset((0..nf).filter(|i| fm & (1 << i) != 0))
            .unwrap();
        for rm in 0u32..1 << nr {
            if rm.count_ones() as usize != f.len() {
                continue;
            }
            let root = g
                .ridge_subset((0..nr).filter(|i| rm & (1 << i) == 0))
                .unwrap();
            let s = g.sum_lambda_unrooted(&f, &root).unwrap();
            assert_eq!(s, g.signed_minor(&f, &root).unwrap());
        }
    }
    // Three triangles against a dependent triple of edges.
    let f = g.facet_subset([0, 1, 2]).unwrap();
    let root = g.ridge_subset([1, 2, 5]).unwrap();
    assert!(g.signed_minor(&f, &root).unwrap().is_zero());
    assert!(g.sum_lambda_unrooted(&f, &root).unwrap().is_zero());
}

#[test]
fn bidirected_polynomials() {
    let g = ctx(generators::bipyramid());
    let bi = g.bidirected_polynomials().unwrap();
    let expected = IntPolynomial::from_i64(&[0, 0, 0, 0, 1125, 1425, 710, 174, 21, 1]);
    assert_eq!(bi.by_signs, expected);
    assert_eq!(bi.by_strips, expected);

    let g = ctx(generators::complete(3, 1).unwrap());
    let bi = g.bidirected_polynomials().unwrap();
    assert_eq!(bi.by_signs, IntPolynomial::from_i64(&[0, 9, 6, 1]));
    assert_eq!(bi.by_strips, bi.by_signs);

    let empty = parse_complex(
        r#"{"type":"cell","dimension":1,"faces":{"0":["a","b","c"]},"incidence":{}}"#,
    )
    .unwrap();
    let bi = ctx(empty).bidirected_polynomials().unwrap();
    assert_eq!(bi.by_signs, IntPolynomial::monomial(3));
}

#[test]
fn bidirected_polynomials_on_cell_complexes() {
    for c in [
        generators::hypercube(3, 2).unwrap(),
        generators::hypercube(2, 2).unwrap(),
    ] {
        let g = ctx(c);
        let p = g.laplacian_char_poly().unwrap();
        let bi = g.bidirected_polynomials().unwrap();
        assert_eq!(bi.by_signs, p);
        assert_eq!(bi.by_strips, p);
    }
}

#[test]
fn weighted_bidirected_identity() {
    let g = ctx(generators::bipyramid());
    let p = g.laplacian_char_poly().unwrap();
    for t in 1..3 {
        let a = WeightAssignment::uniform(&g, BigInt::from(t), BigInt::one());
        let (lhs, rhs) = g.weighted_bidirected_sum(&a).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, p.eval(&BigInt::from(t)));
    }
    for seed in 0..3 {
        let a = WeightAssignment::seeded(&g, seed, 1, 5);
        let (lhs, rhs) = g.weighted_bidirected_sum(&a).unwrap();
        assert_eq!(lhs, rhs, "seed {seed}");
    }
    // 0/1 weights restrict which ridge may point into which facet.
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..3 {
        let mut a = WeightAssignment::uniform(&g, BigInt::from(2), BigInt::one());
        for w in a.w.values_mut() {
            if *[true, false].choose(&mut rng).unwrap() {
                *w = BigInt::zero();
            }
        }
        let (lhs, rhs) = g.weighted_bidirected_sum(&a).unwrap();
        assert_eq!(lhs, rhs);
    }
}
