use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use strata::catalog::Catalog;
use strata::classifier::{
    alpha_search, ordinary_point_budget, passing, required_chi1, semigroup_search, Candidate,
    SearchConfig, Verdict,
};
use strata::signature::Signature;

/// `(signature, component, item, shape)` where `shape` counts Weierstrass points,
/// paired points and free points for hyperelliptic models.
type Row = (
    Vec<i64>,
    Option<String>,
    Option<String>,
    Option<(usize, usize, usize)>,
);

fn sorted(mut v: Vec<i64>) -> Vec<i64> {
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

fn shape(model: &str) -> Option<(usize, usize, usize)> {
    let tags = model.strip_prefix("hyperelliptic[")?.strip_suffix(']')?;
    let tags: Vec<&str> = tags.split(',').collect();
    Some((
        tags.iter().filter(|t| **t == "w").count(),
        tags.iter().filter(|t| t.starts_with("pair:")).count(),
        tags.iter().filter(|t| **t == "free").count(),
    ))
}

fn row(c: &Candidate) -> Row {
    (
        c.signature.clone(),
        c.component.clone(),
        c.item.clone(),
        shape(&c.model),
    )
}

#[derive(Clone, Copy)]
enum Role {
    Weierstrass,
    Paired,
}

/// One hyperelliptic family member; zero parts are free points.
fn hyperelliptic_row(parts: &[(i64, Role)]) -> Row {
    let (mut w, mut paired, mut free) = (0, 0, 0);
    for &(m, role) in parts {
        match (m, role) {
            (0, _) => free += 1,
            (_, Role::Weierstrass) => w += 1,
            (_, Role::Paired) => paired += 1,
        }
    }
    let orders = sorted(parts.iter().map(|p| p.0).collect());
    (
        orders,
        Some("hyp".into()),
        Some("ii".into()),
        Some((w, paired, free)),
    )
}

fn hyperelliptic_rows(g: i64) -> BTreeSet<Row> {
    use Role::{Paired as P, Weierstrass as W};
    let mut out = BTreeSet::new();
    let half = g - 1;
    for a in 0..=half {
        let b = half - a;
        out.insert(hyperelliptic_row(&[(2 * a, W), (b, P), (b, P)]));
        if a >= b {
            out.insert(hyperelliptic_row(&[(a, P), (a, P), (b, P), (b, P)]));
            out.insert(hyperelliptic_row(&[(2 * a, W), (2 * b, W)]));
        }
    }
    out.insert(hyperelliptic_row(&[(g - 1, P), (g - 1, P)]));
    out.insert(hyperelliptic_row(&[(2 * g - 2, W)]));
    out
}

fn item(sig: &[i64], comp: Option<&str>, item: &str) -> Row {
    (
        sig.to_vec(),
        comp.map(String::from),
        Some(item.to_string()),
        None,
    )
}

fn expected(g: i64) -> BTreeSet<Row> {
    let mut out = BTreeSet::new();
    if g == 1 {
        for n in 1..=4 {
            out.insert(item(&vec![0; n], None, "i"));
        }
        return out;
    }
    out.extend(hyperelliptic_rows(g));
    let extra: &[(&[i64], Option<&str>, &str)] = match g {
        3 => &[
            (&[4], Some("odd"), "iii"),
            (&[4, 0], Some("odd"), "iii"),
            (&[3, 1], None, "iii"),
            (&[3, 1, 0], None, "iii"),
            (&[2, 2], Some("odd"), "iii"),
            (&[2, 1, 1], None, "iii"),
            (&[1, 1, 1, 1], None, "iii"),
        ],
        4 => &[
            (&[6], Some("odd"), "iii"),
            (&[6], Some("even"), "iii"),
            (&[6, 0], Some("even"), "iii"),
            (&[5, 1], None, "iii"),
            (&[4, 2], Some("even"), "iii"),
            (&[3, 3], Some("nonhyp"), "iii"),
            (&[2, 2, 2], Some("even"), "iii"),
        ],
        5 => &[(&[7, 1], None, "iv")],
        6 => &[(&[7, 3], None, "v"), (&[10], Some("even"), "vi")],
        _ => &[],
    };
    for (sig, comp, it) in extra {
        out.insert(item(sig, *comp, it));
    }
    out
}

fn search(g: i64) -> Vec<Candidate> {
    alpha_search(&SearchConfig::new(g), Catalog::builtin()).unwrap()
}

#[test]
fn passing_lists_match_the_classification() {
    for g in 1..=6 {
        let found: BTreeSet<Row> = passing(&search(g)).into_iter().map(row).collect();
        let want = expected(g);
        let missing: Vec<_> = want.difference(&found).collect();
        let extra: Vec<_> = found.difference(&want).collect();
        assert!(
            missing.is_empty() && extra.is_empty(),
            "g = {g}\nmissing {missing:?}\nextra {extra:?}"
        );
    }
}

#[test]
fn equality_cases_sit_on_the_threshold() {
    let cases: &[(i64, &[i64], Option<&str>)] = &[
        (3, &[1, 1, 1, 1], None),
        (4, &[5, 1], None),
        (4, &[3, 3], Some("nonhyp")),
        (5, &[7, 1], None),
        (6, &[7, 3], None),
    ];
    for &(g, sig, comp) in cases {
        let all = search(g);
        let c = passing(&all)
            .into_iter()
            .find(|c| c.signature == sig && c.component.as_deref() == comp && c.item.is_some())
            .unwrap_or_else(|| panic!("{sig:?} missing"));
        assert_eq!(c.threshold_lhs, c.threshold_rhs, "{sig:?}");
    }
}

#[test]
fn ordinary_point_budgets() {
    let three_eighths = BigRational::new(3.into(), 8.into());
    let five_one = Signature::derive(&[5, 1]).unwrap();
    assert_eq!(
        ordinary_point_budget(&five_one, &BigInt::from(12), &three_eighths).unwrap(),
        0
    );
    let with_point = Signature::derive(&[5, 1, 0]).unwrap();
    assert!(
        required_chi1(&with_point, &three_eighths, &[]).unwrap()
            > BigRational::from_integer(12.into())
    );
    assert!(!passing(&search(4)).iter().any(|c| c.signature == [5, 1, 0]));
    for g in 2..=6 {
        let all = search(g);
        let top = 2 * g - 2;
        assert!(passing(&all)
            .iter()
            .any(|c| c.signature == [top, 0, 0] && c.component.as_deref() == Some("hyp")));
        assert!(!all
            .iter()
            .any(|c| c.signature == [top, 0, 0, 0] && c.verdict == Verdict::Pass));
    }
}

#[test]
fn exclusions_and_no_unresolved() {
    let mut excluded = BTreeSet::new();
    for g in 1..=6 {
        for c in search(g) {
            assert_ne!(c.verdict, Verdict::Unresolved, "{}", c.label());
            if c.verdict == Verdict::Excluded {
                excluded.insert(c.label());
            }
        }
    }
    let want: BTreeSet<String> = ["(6,2)^even", "(6,4)^even", "(6,4)^odd"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    assert_eq!(excluded, want);
}

#[test]
fn no_candidate_with_five_points() {
    for g in 1..=6 {
        for c in search(g) {
            assert!(c.signature.len() <= 4, "{}", c.label());
        }
    }
}

#[test]
fn pruning_does_not_change_the_result() {
    for g in 1..=4 {
        let mut config = SearchConfig::new(g);
        let pruned: BTreeSet<Row> = passing(&alpha_search(&config, Catalog::builtin()).unwrap())
            .into_iter()
            .map(row)
            .collect();
        config.prune = false;
        let full_run = alpha_search(&config, Catalog::builtin()).unwrap();
        let full: BTreeSet<Row> = passing(&full_run).into_iter().map(row).collect();
        assert_eq!(pruned, full, "g = {g}");
        assert!(passing(&full_run).iter().all(|c| c.signature.len() <= 4));
    }
}

#[test]
fn search_is_independent_of_thread_count() {
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        pool.install(|| (1..=5).map(search).collect::<Vec<_>>())
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn genus_outside_range_is_rejected() {
    assert!(alpha_search(&SearchConfig::new(0), Catalog::builtin()).is_err());
    assert!(alpha_search(&SearchConfig::new(9), Catalog::builtin()).is_err());
}

#[test]
fn genus_six_semigroup_bound() {
    let three_eighths = BigRational::new(3.into(), 8.into());
    let found = semigroup_search(6, &three_eighths).unwrap();
    let bounded: Vec<&Vec<i64>> = found
        .iter()
        .filter(|c| c.within_bound)
        .map(|c| &c.generators)
        .collect();
    assert_eq!(bounded, vec![&vec![3, 7]]);
    let passing: Vec<&Vec<i64>> = found
        .iter()
        .filter(|c| c.verdict == Verdict::Pass)
        .map(|c| &c.generators)
        .collect();
    assert_eq!(passing, vec![&vec![3, 7]]);
}
