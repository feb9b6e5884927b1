//! JSON reports. Integers are emitted as decimal strings and polynomials as
//! coefficient lists from degree 0 upwards, so nothing passes through floats.

use std::collections::BTreeMap;
use std::path::Path;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use simplicial_forests::orientations::strip_law_holds;
use simplicial_forests::{
    BigInt, Caps, Complex, FaceSubset, FittingOrientation, ForestContext, IntPolynomial,
    StripDecomposition, WeightAssignment,
};

use crate::Failure;

const PASS: &str = "PASS";
const FAIL: &str = "FAIL";
/// Weighted identities are checked at this many seeded points.
const WEIGHT_POINTS: u64 = 3;
/// Entries of seeded weight assignments are drawn from this range.
const WEIGHT_RANGE: (i64, i64) = (1, 5);
/// Non-rooted pairs sampled by the annihilation check.
const ANNIHILATION_SAMPLES: usize = 100;

fn poly(p: &IntPolynomial) -> Value {
    json!(p.coeffs().iter().map(BigInt::to_string).collect::<Vec<_>>())
}

fn histogram(counts: &BTreeMap<BigInt, usize>) -> Value {
    json!(counts
        .iter()
        .map(|(w, n)| json!({"weight": w.to_string(), "count": n}))
        .collect::<Vec<_>>())
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        PASS
    } else {
        FAIL
    }
}

fn header(command: &str, file: &Path, complex: &Complex) -> Value {
    json!({
        "command": command,
        "input": file.display().to_string(),
        "complex": {
            "kind": complex.kind(),
            "dimension": complex.dimension(),
            "face_counts": complex.face_counts(),
        },
    })
}

fn with_result(mut head: Value, seed: Option<u64>, result: Value) -> Value {
    let obj = head.as_object_mut().expect("header is an object");
    if let Some(s) = seed {
        obj.insert("seed".into(), json!(s));
    }
    obj.insert("result".into(), result);
    head
}

fn facets_json(g: &ForestContext, s: &FaceSubset) -> Value {
    json!({
        "indices": s.members(),
        "labels": s.members().iter().map(|&f| g.facet_label(f)).collect::<Vec<_>>(),
    })
}

fn ridges_json(g: &ForestContext, s: &FaceSubset) -> Value {
    json!({
        "indices": s.members(),
        "labels": s.members().iter().map(|&r| g.ridge_label(r)).collect::<Vec<_>>(),
    })
}

fn orientation_json(phi: &FittingOrientation) -> Value {
    json!(phi.pairs().map(|(r, f)| [r, f]).collect::<Vec<_>>())
}

fn strips_json(s: &StripDecomposition) -> Value {
    json!({
        "fixed_points": s.fixed_points,
        "oriented_strips": s.oriented_count(),
        "strips": s.cycles.iter().map(|c| json!({
            "ridges": c.ridges,
            "facets": c.facets,
            "oriented": c.oriented,
        })).collect::<Vec<_>>(),
    })
}

fn context(complex: &Complex, caps: Caps) -> Result<ForestContext, Failure> {
    Ok(ForestContext::new(complex)?.with_caps(caps))
}

fn weight_points(g: &ForestContext, seed: u64) -> Vec<(u64, WeightAssignment)> {
    (0..WEIGHT_POINTS)
        .map(|i| {
            let s = seed.wrapping_add(i);
            (
                s,
                WeightAssignment::seeded(g, s, WEIGHT_RANGE.0, WEIGHT_RANGE.1),
            )
        })
        .collect()
}

/// One identity check at each seeded point; returns the entries and whether
/// all of them held.
fn weighted_checks(
    g: &ForestContext,
    seed: u64,
    sides: impl Fn(&[WeightAssignment]) -> simplicial_forests::Result<Vec<(BigInt, BigInt)>>,
) -> Result<(Vec<Value>, bool), Failure> {
    let (seeds, points): (Vec<u64>, Vec<WeightAssignment>) =
        weight_points(g, seed).into_iter().unzip();
    let mut out = Vec::new();
    let mut all = true;
    for (s, (lhs, rhs)) in seeds.into_iter().zip(sides(&points)?) {
        all &= lhs == rhs;
        out.push(json!({
            "point_seed": s,
            "lhs": lhs.to_string(),
            "rhs": rhs.to_string(),
            "verdict": verdict(lhs == rhs),
        }));
    }
    Ok((out, all))
}

pub fn charpoly(file: &Path, complex: &Complex) -> Result<Value, Failure> {
    let g = ForestContext::new(complex)?;
    let p = g.laplacian_char_poly()?;
    Ok(with_result(
        header("charpoly", file, complex),
        None,
        json!({
            "laplacian_size": g.ridge_count(),
            "polynomial": poly(&p),
            "display": p.to_string(),
        }),
    ))
}

pub fn forests(
    file: &Path,
    complex: &Complex,
    caps: Caps,
    weights_seed: Option<u64>,
) -> Result<(Value, bool), Failure> {
    let g = context(complex, caps)?;
    let char_poly = g.laplacian_char_poly()?;
    let mut forest_poly = IntPolynomial::zero();
    let mut by_root_size: BTreeMap<usize, BTreeMap<BigInt, usize>> = BTreeMap::new();
    let mut by_weight: BTreeMap<BigInt, usize> = BTreeMap::new();
    let mut rooted = 0usize;
    g.visit_rooted_forests(|rf| {
        rooted += 1;
        forest_poly.add_term(rf.root.len(), &rf.weight * &rf.weight);
        *by_root_size
            .entry(rf.root.len())
            .or_default()
            .entry(rf.weight.clone())
            .or_default() += 1;
        *by_weight.entry(rf.weight.clone()).or_default() += 1;
    })?;
    let mut forest_count = 0usize;
    g.visit_forests(|_| forest_count += 1)?;
    let spanning = g.spanning_forests()?.len();
    let roots = g.roots()?.len();

    let matches = forest_poly == char_poly;
    let mut passed = matches;
    let mut result = json!({
        "rooted_forest_polynomial": poly(&forest_poly),
        "char_poly": poly(&char_poly),
        "verdict": verdict(matches),
        "counts": {
            "rooted_forests": rooted,
            "forests": forest_count,
            "spanning_forests": spanning,
            "roots": roots,
            "rank": g.rank(),
        },
        "rooted_forests_by_root_size": by_root_size
            .iter()
            .map(|(k, weights)| json!({
                "root_size": k,
                "count": weights.values().sum::<usize>(),
                "weights": histogram(weights),
            }))
            .collect::<Vec<_>>(),
        "weight_histogram": histogram(&by_weight),
    });
    if let Some(seed) = weights_seed {
        let (facet, ok1) = weighted_checks(&g, seed, |a| g.weighted_rooted_forest_sums(a))?;
        let (pair, ok2) = weighted_checks(&g, seed, |a| g.weighted_bidirected_sums(a))?;
        passed &= ok1 && ok2;
        result["weighted"] = json!({
            "facet_weights": facet,
            "pair_weights": pair,
        });
    }
    Ok((
        with_result(header("forests", file, complex), weights_seed, result),
        passed,
    ))
}

pub fn orientations(
    file: &Path,
    complex: &Complex,
    forest: &[usize],
    root: &[usize],
) -> Result<Value, Failure> {
    let g = ForestContext::new(complex)?;
    let f = g.facet_subset(forest.iter().copied())?;
    let r = g.ridge_subset(root.iter().copied())?;
    let weight = g.homology_weight(&f, &r)?;
    let phis = g.fitting_orientations(&f, &r)?;
    let values = phis
        .iter()
        .map(|phi| g.orientation_value(&f, &r, phi))
        .collect::<simplicial_forests::Result<Vec<BigInt>>>()?;
    let signed_sum: BigInt = values.iter().sum();
    let mut pairs = Vec::new();
    for (i, p) in phis.iter().enumerate() {
        for (j, q) in phis.iter().enumerate() {
            let s = g.strip_decomposition(&f, &r, p, q)?;
            let mut entry = strips_json(&s);
            entry["phi"] = json!(i);
            entry["phi_prime"] = json!(j);
            entry["sign_product"] = json!((&values[i] * &values[j]).to_string());
            entry["strip_sign"] = json!(s.parity_sign());
            pairs.push(entry);
        }
    }
    let structure = g.homology_structure(&f, &r)?;
    Ok(with_result(
        header("orientations", file, complex),
        None,
        json!({
            "forest": facets_json(&g, &f),
            "root": ridges_json(&g, &r),
            "weight": weight.to_string(),
            "invariant_factors": structure.invariant_factors.iter().map(BigInt::to_string).collect::<Vec<_>>(),
            "orientation_count": phis.len(),
            "orientations": phis.iter().zip(&values).map(|(p, v)| json!({
                "pairs": orientation_json(p),
                "lambda": g.lambda(&f, &r, p).to_string(),
                "value": v.to_string(),
            })).collect::<Vec<_>>(),
            "signed_sum": signed_sum.to_string(),
            "pairs": pairs,
        }),
    ))
}

struct Checks {
    entries: Vec<Value>,
    passed: bool,
}

impl Checks {
    fn push(&mut self, identity: &str, ok: bool, detail: Value) {
        self.passed &= ok;
        let mut entry = json!({"identity": identity, "verdict": verdict(ok)});
        entry[if ok { "detail" } else { "counterexample" }] = detail;
        self.entries.push(entry);
    }
}

pub fn verify(
    file: &Path,
    complex: &Complex,
    caps: Caps,
    all: bool,
    seed: u64,
) -> Result<(Value, bool), Failure> {
    let g = context(complex, caps)?;
    let mut checks = Checks {
        entries: Vec::new(),
        passed: true,
    };

    let char_poly = g.laplacian_char_poly()?;
    let forest_poly = g.rooted_forest_polynomial()?;
    checks.push(
        "rooted-forest-polynomial",
        forest_poly == char_poly,
        json!({"char_poly": poly(&char_poly), "rooted_forest_polynomial": poly(&forest_poly)}),
    );

    let (points, ok) = weighted_checks(&g, seed, |a| g.weighted_rooted_forest_sums(a))?;
    checks.push("weighted-rooted-forests", ok, json!(points));

    let bi = g.bidirected_polynomials()?;
    checks.push(
        "bidirected-sign-products",
        bi.by_signs == char_poly,
        json!({"char_poly": poly(&char_poly), "polynomial": poly(&bi.by_signs)}),
    );
    checks.push(
        "bidirected-strip-parities",
        bi.by_strips == char_poly,
        json!({"char_poly": poly(&char_poly), "polynomial": poly(&bi.by_strips)}),
    );

    let (points, ok) = weighted_checks(&g, seed, |a| g.weighted_bidirected_sums(a))?;
    checks.push("weighted-bidirected", ok, json!(points));

    if all {
        per_root_checks(&g, &mut checks)?;
        per_forest_checks(&g, &mut checks)?;
        annihilation_check(&g, seed, &mut checks)?;
    }

    let passed = checks.passed;
    let report = with_result(
        header("verify", file, complex),
        Some(seed),
        json!({
            "all": all,
            "checks": checks.entries,
            "verdict": verdict(passed),
        }),
    );
    Ok((report, passed))
}

fn per_root_checks(g: &ForestContext, checks: &mut Checks) -> Result<(), Failure> {
    let roots = g.roots()?;
    let mut bad = None;
    for root in &roots {
        let (lhs, rhs) = (g.matrix_tree_lhs(root)?, g.matrix_tree_rhs(root)?);
        if lhs != rhs {
            bad = Some(
                json!({"root": ridges_json(g, root), "lhs": lhs.to_string(), "rhs": rhs.to_string()}),
            );
            break;
        }
    }
    let ok = bad.is_none();
    checks.push(
        "matrix-tree",
        ok,
        bad.unwrap_or_else(|| json!({"roots": roots.len()})),
    );
    Ok(())
}

fn per_forest_checks(g: &ForestContext, checks: &mut Checks) -> Result<(), Failure> {
    let mut forests = 0usize;
    let mut orientation_pairs = 0usize;
    let mut sum_bad = None;
    let mut bound_bad = None;
    let mut strip_bad = None;
    let mut failure = None;
    g.visit_oriented_forests(|rf, phis, values| {
        forests += 1;
        let rooted =
            || json!({"forest": facets_json(g, &rf.forest), "root": ridges_json(g, &rf.root)});
        let total: BigInt = values.iter().sum();
        if total != rf.weight && sum_bad.is_none() {
            let mut c = rooted();
            c["weight"] = json!(rf.weight.to_string());
            c["signed_sum"] = json!(total.to_string());
            sum_bad = Some(c);
        }
        if BigInt::from(phis.len()) < rf.weight && bound_bad.is_none() {
            let mut c = rooted();
            c["weight"] = json!(rf.weight.to_string());
            c["orientations"] = json!(phis.len());
            bound_bad = Some(c);
        }
        for (i, p) in phis.iter().enumerate() {
            for (j, q) in phis.iter().enumerate() {
                orientation_pairs += 1;
                match g.strip_decomposition(&rf.forest, &rf.root, p, q) {
                    Ok(s)
                        if !strip_law_holds(&values[i], &values[j], &s) && strip_bad.is_none() =>
                    {
                        let mut c = rooted();
                        c["phi"] = orientation_json(p);
                        c["phi_prime"] = orientation_json(q);
                        c["strips"] = strips_json(&s);
                        strip_bad = Some(c);
                    }
                    Ok(_) => {}
                    Err(e) => failure = Some(e),
                }
            }
        }
    })?;
    if let Some(e) = failure {
        return Err(e.into());
    }
    let summary = json!({"rooted_forests": forests});
    checks.push(
        "signed-orientation-sum",
        sum_bad.is_none(),
        sum_bad.unwrap_or_else(|| summary.clone()),
    );
    checks.push(
        "orientation-lower-bound",
        bound_bad.is_none(),
        bound_bad.unwrap_or(summary),
    );
    checks.push(
        "strip-law",
        strip_bad.is_none(),
        strip_bad.unwrap_or_else(|| json!({"orientation_pairs": orientation_pairs})),
    );
    Ok(())
}

/// Samples size-matched pairs `(F, R)` that are not rooted forests and checks
/// that their orientation sums vanish.
fn annihilation_check(g: &ForestContext, seed: u64, checks: &mut Checks) -> Result<(), Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (nf, nr) = (g.facet_count(), g.ridge_count());
    let pick = |rng: &mut ChaCha8Rng, len: usize, k: usize| {
        let mut idx: Vec<usize> = (0..len).collect();
        idx.shuffle(rng);
        idx.truncate(k);
        idx.sort_unstable();
        idx
    };
    let mut sampled = 0usize;
    let mut with_orientations = 0usize;
    let mut bad = None;
    for _ in 0..ANNIHILATION_SAMPLES * 100 {
        if sampled == ANNIHILATION_SAMPLES {
            break;
        }
        let k = rng.gen_range(0..=nf.min(nr));
        let forest = g.facet_subset(pick(&mut rng, nf, k))?;
        let root = g.ridge_subset(pick(&mut rng, nr, k))?.complement(nr);
        if g.is_rooted_forest(&forest, &root) {
            continue;
        }
        sampled += 1;
        if !g.fitting_orientations(&forest, &root)?.is_empty() {
            with_orientations += 1;
        }
        let s = g.sum_lambda_unrooted(&forest, &root)?;
        if !s.is_zero() {
            bad = Some(json!({
                "forest": facets_json(g, &forest),
                "root": ridges_json(g, &root),
                "sum": s.to_string(),
            }));
            break;
        }
    }
    let ok = bad.is_none();
    checks.push(
        "annihilation",
        ok,
        bad.unwrap_or_else(
            || json!({"sampled_pairs": sampled, "with_orientations": with_orientations}),
        ),
    );
    Ok(())
}
