mod common;

use common::{oracle_cap, q, trim, OracleAlgebra, Q};
use num_bigint::BigInt;
use proptest::prelude::*;
use strata::branch_algebra::{default_cap, AlgebraInput, BranchAlgebra, MonomialVector, Term};
use strata::catalog::{with_ordinary_points, Catalog, Family};
use strata::invariants::WeightSpectrum;
use strata::signature::Signature;

fn inputs() -> Vec<(String, AlgebraInput)> {
    let mut out: Vec<(String, AlgebraInput)> = Catalog::builtin()
        .entries()
        .iter()
        .map(|e| (e.id.clone(), e.input()))
        .collect();
    let mut families = Vec::new();
    for g in 2..=6 {
        for name in ["A2g", "A2g+1", "D2g+1", "D2g+2"] {
            families.push(Family::parse(name, &g.to_string()).unwrap());
        }
    }
    for n in 3..=6 {
        families.push(Family::parse("elliptic", &n.to_string()).unwrap());
    }
    for gens in ["3,4", "3,5", "4,5,6", "3,7", "4,5"] {
        families.push(Family::parse("monomial", gens).unwrap());
    }
    for f in families {
        if let Some(input) = f.input() {
            out.push((f.id(), input));
        }
    }
    out
}

fn assert_matches_oracle(id: &str, input: &AlgebraInput) {
    let resolved = input.resolve().unwrap();
    let sig = resolved.signature.clone();
    let alg = resolved.close(2).unwrap();
    let oracle = OracleAlgebra::from_input(input, oracle_cap(&sig));
    for k in 0..=2 * sig.ell() {
        assert_eq!(alg.dim(k).unwrap(), oracle.dim(k), "{id}: dim R_{k}");
    }
    let gaps = alg.gap_sequence().unwrap();
    let upto = sig.max_order() + 2;
    assert_eq!(
        trim(&gaps),
        trim(&oracle.gap_sequence(upto)),
        "{id}: gap sequence"
    );
    let (delta, genus) = alg.delta_and_genus().unwrap();
    let top = sig.weights().iter().max().unwrap() * (sig.max_order() + 2);
    assert_eq!(delta, oracle.delta(top), "{id}: delta");
    assert_eq!(
        genus,
        delta - sig.len() as i64 + 1,
        "{id}: genus from delta"
    );
    assert_eq!(gaps.iter().sum::<usize>() as i64, genus, "{id}: gap sum");
}

#[test]
fn closure_agrees_with_product_oracle() {
    for (id, input) in inputs() {
        assert_matches_oracle(&id, &input);
    }
}

#[test]
fn stored_characters_agree_with_oracle() {
    for entry in Catalog::builtin().entries() {
        let Some(expected) = &entry.expected else {
            continue;
        };
        let sig = entry.parsed_signature().unwrap();
        let oracle = OracleAlgebra::from_input(&entry.input(), oracle_cap(&sig));
        assert_eq!(
            oracle.chi(1),
            BigInt::from(expected.chi1_log),
            "{}: chi1",
            entry.id
        );
        assert_eq!(
            oracle.chi(2),
            BigInt::from(expected.chi2_log),
            "{}: chi2",
            entry.id
        );
        let upto = sig.max_order() + 2;
        assert_eq!(
            trim(&oracle.gap_sequence(upto)),
            expected.gap_sequence,
            "{}: gaps",
            entry.id
        );
    }
}

#[test]
fn seven_one_and_seven_three_loci() {
    let cat = Catalog::builtin();
    for (id, chi1, chi2, gaps, delta) in [
        ("H(7,1)-locus", 20, 100, vec![1, 1, 0, 1, 1, 0, 0, 1], 6),
        ("H(7,3)-locus", 24, 120, vec![1, 1, 1, 1, 0, 1, 0, 1], 7),
    ] {
        let entry = cat.get(id).unwrap();
        let sig = entry.parsed_signature().unwrap();
        let oracle = OracleAlgebra::from_input(&entry.input(), oracle_cap(&sig));
        assert_eq!(oracle.chi(1), BigInt::from(chi1));
        assert_eq!(oracle.chi(2), BigInt::from(chi2));
        assert_eq!(trim(&oracle.gap_sequence(sig.max_order() + 2)), gaps);
        assert_eq!(oracle.delta(oracle_cap(&sig)), delta);
    }
}

#[test]
fn ordinary_points_agree_with_oracle() {
    for id in ["E7", "H(2,2)-odd", "H(5,1)", "H(3,3)-nonhyp"] {
        let input = Catalog::builtin().get(id).unwrap().input();
        for k in 1..=2 {
            let ext = with_ordinary_points(&input, k).unwrap();
            assert_matches_oracle(&format!("{id}+{k}"), &ext);
        }
    }
}

#[test]
fn graded_dimensions_follow_riemann_roch() {
    for (id, input) in inputs() {
        let resolved = input.resolve().unwrap();
        let sig = resolved.signature.clone();
        let alg = BranchAlgebra::close_with(
            &sig,
            resolved.generators.clone(),
            default_cap(&sig, 4),
            resolved.high_order_from,
        )
        .unwrap();
        let (_, g) = alg.delta_and_genus().unwrap();
        let n = sig.len() as i64;
        for m in 1..=4 {
            let total: usize = alg.graded_dims(m * sig.ell()).unwrap().iter().sum();
            let predicted = if m == 1 {
                g - 1 + n
            } else {
                (2 * m - 1) * (g - 1) + m * n
            };
            assert_eq!(total as i64, predicted, "{id}: m = {m}");
            let full: Vec<i64> = sig.orders().iter().map(|&o| m * (o + 1)).collect();
            assert_eq!(
                alg.section_space(&full).unwrap().dimension,
                total,
                "{id}: section space m = {m}"
            );
        }
    }
}

#[test]
fn catalog_genus_and_gap_totals() {
    for entry in Catalog::builtin().entries() {
        let sig = entry.parsed_signature().unwrap();
        let alg = entry.input().resolve().unwrap().close(2).unwrap();
        let (delta, genus) = alg.delta_and_genus().unwrap();
        assert_eq!(genus, sig.genus(), "{}", entry.id);
        assert_eq!(genus, delta - sig.len() as i64 + 1, "{}", entry.id);
        assert_eq!(
            alg.gap_sequence().unwrap().iter().sum::<usize>() as i64,
            genus,
            "{}",
            entry.id
        );
    }
}

#[test]
fn closure_is_deterministic() {
    for (id, input) in inputs() {
        let a = input.resolve().unwrap().close(2).unwrap();
        let b = input.resolve().unwrap().close(2).unwrap();
        for k in 0..=a.degree_cap() {
            assert_eq!(
                a.graded(k).unwrap().rows(),
                b.graded(k).unwrap().rows(),
                "{id}: degree {k}"
            );
        }
    }
}

#[test]
fn dropping_a_generator_breaks_gorenstein() {
    let mut input = Catalog::builtin().get("E7").unwrap().input();
    input.generators.retain(|g| g.name != "y");
    input.high_order_from = Some(5);
    let alg = input.resolve().unwrap().close(2).unwrap();
    let report = alg.conductor_and_gorenstein().unwrap();
    assert_eq!(report.delta, 5);
    assert_eq!(report.colength, 3);
    assert!(!report.gorenstein);
}

fn additive(gaps: &[usize]) -> bool {
    let len = gaps.len();
    (1..=len).all(|i| {
        (1..=len)
            .all(|j| gaps[i - 1] != 0 || gaps[j - 1] != 0 || i + j > len || gaps[i + j - 1] == 0)
    })
}

#[test]
fn catalog_gap_sequences_are_additive() {
    for (id, input) in inputs() {
        let gaps = input
            .resolve()
            .unwrap()
            .close(2)
            .unwrap()
            .gap_sequence()
            .unwrap();
        assert!(additive(&gaps), "{id}: {gaps:?}");
    }
}

/// `(degree, [(branch, exponent, coefficient)])` per generator.
type RawGenerators = Vec<(i64, Vec<(usize, i64, i64)>)>;

fn arb_algebra() -> impl Strategy<Value = (Signature, RawGenerators)> {
    let sigs = prop::sample::select(vec![
        vec![2],
        vec![1, 1],
        vec![4],
        vec![3, 1],
        vec![2, 2],
        vec![2, 1, 1],
        vec![2, 0],
        vec![1, 1, 0],
    ]);
    sigs.prop_flat_map(|orders| {
        let sig = Signature::derive(&orders).unwrap();
        let ell = sig.ell();
        let n = sig.len();
        let gen = (1..=ell + 2, prop::collection::vec(-3i64..=3, n));
        (Just(sig), prop::collection::vec(gen, 1..=3))
    })
    .prop_map(|(sig, raw)| {
        let gens = raw
            .into_iter()
            .map(|(k, coeffs)| {
                let picked: Vec<(usize, i64, i64)> = coeffs
                    .into_iter()
                    .enumerate()
                    .filter(|&(i, c)| k % sig.weights()[i] == 0 && c != 0)
                    .map(|(i, c)| (i, k / sig.weights()[i], c))
                    .collect();
                (k, picked)
            })
            .filter(|(_, t)| !t.is_empty())
            .collect();
        (sig, gens)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_algebras_match_oracle((sig, gens) in arb_algebra()) {
        let high = sig.max_order() + 2;
        let mut vectors = Vec::new();
        let mut dense: Vec<(i64, Vec<Q>)> = Vec::new();
        for (idx, (k, terms)) in gens.iter().enumerate() {
            let terms: Vec<Term<Q>> =
                terms.iter().map(|&(b, e, c)| Term { branch: b, exponent: e, coeff: q(c) }).collect();
            let v = MonomialVector::new(&sig, &format!("g{idx}"), terms).unwrap();
            dense.push((*k, v.dense(sig.len())));
            vectors.push(v);
        }
        let alg = BranchAlgebra::close_with(&sig, vectors, default_cap(&sig, 2), Some(high)).unwrap();
        let oracle = OracleAlgebra::build(&sig, &dense, Some(high), oracle_cap(&sig));
        for k in 0..=2 * sig.ell() {
            prop_assert_eq!(alg.dim(k).unwrap(), oracle.dim(k));
        }
        let gaps = alg.gap_sequence().unwrap();
        prop_assert_eq!(trim(&gaps), trim(&oracle.gap_sequence(high)));
        prop_assert!(additive(&gaps));
        let (delta, _) = alg.delta_and_genus().unwrap();
        prop_assert_eq!(delta, alg.delta_by_degrees().unwrap());
        prop_assert_eq!(gaps.iter().sum::<usize>() as i64, delta - sig.len() as i64 + 1);
        prop_assert_eq!(WeightSpectrum::from_algebra(&alg, 1).unwrap().chi_log, oracle.chi(1));
    }
}
