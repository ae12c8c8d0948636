use std::collections::BTreeSet;

use clap::ValueEnum;
use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;
use strata::catalog::{Catalog, Family};
use strata::classifier::{
    alpha_search, nonvarying_regression, passing, semigroup_search, SearchConfig, Verdict,
};
use strata::invariants::{
    chi2_nonlog, slope, toric_lattice_identity, verify_weight_identities, WeightSpectrum,
};
use strata::semigroup::{planar_gap_sum_formula, NumericalSemigroup};
use strata::signature::{parity_count, parity_count_closed, Signature};
use strata::{Rational, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Every check below.
    Full,
    Catalog,
    Identities,
    Counting,
    Searches,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub ok: bool,
    pub detail: String,
}

fn check(name: &'static str, outcome: Result<Option<String>>, passed: usize) -> Check {
    match outcome {
        Ok(None) => Check {
            name,
            ok: true,
            detail: format!("{passed} cases"),
        },
        Ok(Some(why)) => Check {
            name,
            ok: false,
            detail: why,
        },
        Err(e) => Check {
            name,
            ok: false,
            detail: format!("error: {e}"),
        },
    }
}

/// Runs one check body, which returns the first failure description if any.
fn run(name: &'static str, body: impl FnOnce(&mut usize) -> Result<Option<String>>) -> Check {
    let mut count = 0;
    let outcome = body(&mut count);
    log::info!("{name}: {count} cases");
    check(name, outcome, count)
}

pub fn run_suite(suite: Suite, catalog: &Catalog) -> Vec<Check> {
    let want = |s: Suite| suite == Suite::Full || suite == s;
    let mut out = Vec::new();
    if want(Suite::Catalog) {
        out.push(run("catalog-regression", |n| {
            catalog_regression(catalog, n)
        }));
        out.push(run("gorenstein-negative", |n| {
            gorenstein_negative(catalog, n)
        }));
    }
    if want(Suite::Identities) {
        out.push(run("weight-identities", |n| weight_identities(catalog, n)));
        out.push(run("family-formulas", family_formulas));
        out.push(run("slope-examples", slope_examples));
        out.push(run("slope-agreement", |n| slope_agreement(catalog, n)));
    }
    if want(Suite::Counting) {
        out.push(run("parity-counts", parity_counts));
        out.push(run("toric-identity", toric_identity));
        out.push(run("ladder-sums", ladder_sums));
        out.push(run("planar-gap-sums", planar_gap_sums));
    }
    if want(Suite::Searches) {
        out.push(run("alpha-search", |n| alpha_lists(catalog, n)));
        out.push(run("semigroup-search", semigroup_bound));
    }
    out
}

fn catalog_regression(catalog: &Catalog, n: &mut usize) -> Result<Option<String>> {
    let report = nonvarying_regression(catalog)?;
    *n = report.checked.len();
    Ok(report.mismatches.first().map(|m| {
        format!(
            "{} {}: expected {}, got {}",
            m.entry, m.field, m.expected, m.actual
        )
    }))
}

fn gorenstein_negative(catalog: &Catalog, n: &mut usize) -> Result<Option<String>> {
    let mut input = catalog.get("E7")?.input();
    input.generators.retain(|g| g.name != "y");
    input.high_order_from = Some(5);
    let report = input.resolve()?.close(2)?.conductor_and_gorenstein()?;
    *n = 1;
    Ok(report
        .gorenstein
        .then(|| "E7 without y still reported Gorenstein".into()))
}

fn weight_identities(catalog: &Catalog, n: &mut usize) -> Result<Option<String>> {
    for entry in catalog.entries() {
        let alg = catalog.algebra(&entry.id, 4)?;
        let level_1 = WeightSpectrum::from_algebra(&alg, 1)?;
        for m in 2..=4 {
            let report = verify_weight_identities(
                &WeightSpectrum::from_algebra(&alg, m)?,
                &level_1,
                alg.signature(),
            );
            *n += 1;
            if !report.all_hold() {
                return Ok(Some(format!("{} at m = {m}: {report:?}", entry.id)));
            }
        }
    }
    Ok(None)
}

fn characters(name: &str, param: i64) -> Result<(BigInt, BigInt, Signature)> {
    let src = Family::parse(name, &param.to_string())?.source(2)?;
    Ok((
        src.spectrum(1)?.chi_log,
        src.spectrum(2)?.chi_log,
        src.signature,
    ))
}

fn family_formulas(n: &mut usize) -> Result<Option<String>> {
    let int = BigInt::from;
    for g in 2..=20i64 {
        let rows: [(&str, i64, i64); 3] = [
            ("A2g+1", g * (g + 1) / 2, (5 * g * g + g) / 2),
            ("D2g+1", g * g, 5 * g * g - 2 * g),
            ("D2g+2", (g * g + g) / 2, (5 * g * g + 3 * g) / 2),
        ];
        for (name, c1, c2) in rows {
            let (a, b, _) = characters(name, g)?;
            *n += 1;
            if (a.clone(), b.clone()) != (int(c1), int(c2)) {
                return Ok(Some(format!(
                    "{name} at g = {g}: ({a}, {b}) vs ({c1}, {c2})"
                )));
            }
        }
    }
    for lines in 3..=10i64 {
        let (a, b, sig) = characters("elliptic", lines)?;
        *n += 1;
        if (a.clone(), b.clone()) != (int(1), int(lines + 1)) || chi2_nonlog(&b, &sig) != int(1) {
            return Ok(Some(format!("elliptic n = {lines}: ({a}, {b})")));
        }
    }
    Ok(None)
}

fn slope_examples(n: &mut usize) -> Result<Option<String>> {
    let ratio = |a: i64, b: i64| Rational::new(a.into(), b.into());
    for g in 3..=15i64 {
        let mut cases = vec![
            ("principal", ratio(6 * (g + 1) + 12, g + 1)),
            ("odd-spin", ratio(4 * (g + 2) + 24, g + 2)),
        ];
        if g % 2 == 1 {
            let den = (3 * g + 5) * (g + 1);
            cases.push((
                "weierstrass-normal",
                ratio(12 * den - 4 * (5 * g + 6) * (g - 1), den),
            ));
        }
        for (name, want) in cases {
            let (c1, c2, sig) = characters(name, g)?;
            let got = slope(&c1, &c2, &sig)?;
            *n += 1;
            if got.ratio != want || !got.agree() {
                return Ok(Some(format!("{name} at g = {g}: {} vs {want}", got.ratio)));
            }
        }
    }
    Ok(None)
}

fn slope_agreement(catalog: &Catalog, n: &mut usize) -> Result<Option<String>> {
    for entry in catalog.entries() {
        let src = catalog.source(&entry.id, 2)?;
        let s = slope(
            &src.spectrum(1)?.chi_log,
            &src.spectrum(2)?.chi_log,
            &src.signature,
        )?;
        *n += 1;
        if !s.agree() {
            return Ok(Some(format!("{}: {} vs {}", entry.id, s.ratio, s.closed)));
        }
    }
    Ok(None)
}

fn parity_counts(n: &mut usize) -> Result<Option<String>> {
    for k2 in 1..=600i64 {
        for k1 in k2 + 1..=600 / k2 {
            if k1.gcd(&k2) != 1 {
                continue;
            }
            *n += 1;
            let (a, b) = (parity_count(k1, k2)?, parity_count_closed(k1, k2)?);
            if a != b {
                return Ok(Some(format!("({k1}, {k2}): {a} vs {b}")));
            }
        }
    }
    Ok(None)
}

fn toric_identity(n: &mut usize) -> Result<Option<String>> {
    for p in 2..=20 {
        for q in 2..=20 {
            let Ok(report) = toric_lattice_identity(p, q) else {
                continue;
            };
            *n += 1;
            if !report.holds {
                return Ok(Some(format!(
                    "({p}, {q}): {} vs {}",
                    report.lhs, report.rhs
                )));
            }
        }
    }
    Ok(None)
}

fn ladder_sums(n: &mut usize) -> Result<Option<String>> {
    for m in 0..=30i64 {
        for other in [0i64, 2, 4, 6, 8] {
            let partner = if (m + other) % 2 == 0 {
                other
            } else {
                other + 1
            };
            let sig = Signature::derive(&[m, partner])?;
            let i = sig.orders().iter().position(|&x| x == m).unwrap_or(0);
            *n += 1;
            if 2 * sig.ladder_sum(i) != (m + 2) * sig.ell() {
                return Ok(Some(format!("m = {m} in {sig}")));
            }
        }
    }
    Ok(None)
}

fn planar_gap_sums(n: &mut usize) -> Result<Option<String>> {
    for p in 2..=30i64 {
        for q in p + 1..=30 {
            if p.gcd(&q) != 1 {
                continue;
            }
            let direct = NumericalSemigroup::from_generators(&[p, q])?.gap_sum();
            let formula = planar_gap_sum_formula(p, q)?;
            *n += 1;
            if formula != BigInt::from(direct) {
                return Ok(Some(format!("<{p},{q}>: {direct} vs {formula}")));
            }
        }
    }
    Ok(None)
}

/// Non-hyperelliptic passing rows `(label, item)` and the number of passing
/// hyperelliptic rows, per genus.
fn expected_lists(g: i64) -> (BTreeSet<(String, String)>, usize) {
    let rows: &[(&str, &str)] = match g {
        1 => &[
            ("(0)", "i"),
            ("(0,0)", "i"),
            ("(0,0,0)", "i"),
            ("(0,0,0,0)", "i"),
        ],
        3 => &[
            ("(4)^odd", "iii"),
            ("(4,0)^odd", "iii"),
            ("(3,1)", "iii"),
            ("(3,1,0)", "iii"),
            ("(2,2)^odd", "iii"),
            ("(2,1,1)", "iii"),
            ("(1,1,1,1)", "iii"),
        ],
        4 => &[
            ("(6)^odd", "iii"),
            ("(6)^even", "iii"),
            ("(6,0)^even", "iii"),
            ("(5,1)", "iii"),
            ("(4,2)^even", "iii"),
            ("(3,3)^nonhyp", "iii"),
            ("(2,2,2)^even", "iii"),
        ],
        5 => &[("(7,1)", "iv")],
        6 => &[("(7,3)", "v"), ("(10)^even", "vi")],
        _ => &[],
    };
    let hyperelliptic = match g {
        1 => 0,
        g => hyperelliptic_count(g),
    };
    (
        rows.iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect(),
        hyperelliptic,
    )
}

/// Distinct members of the hyperelliptic families at genus `g`, zero parts included.
fn hyperelliptic_count(g: i64) -> usize {
    let mut rows = BTreeSet::new();
    let half = g - 1;
    // (sorted orders, Weierstrass points, paired points, free points)
    let key = |w: Vec<i64>, pairs: Vec<i64>| {
        let mut orders: Vec<i64> = w.iter().chain(&pairs).chain(&pairs).copied().collect();
        orders.sort_unstable();
        let free = orders.iter().filter(|&&m| m == 0).count();
        let weierstrass = w.iter().filter(|&&m| m > 0).count();
        (
            orders,
            weierstrass,
            2 * pairs.iter().filter(|&&m| m > 0).count(),
            free,
        )
    };
    for a in 0..=half {
        let b = half - a;
        rows.insert(key(vec![2 * a], vec![b]));
        if a >= b {
            rows.insert(key(vec![], vec![a, b]));
            rows.insert(key(vec![2 * a, 2 * b], vec![]));
        }
    }
    rows.insert(key(vec![], vec![g - 1]));
    rows.insert(key(vec![2 * g - 2], vec![]));
    rows.len()
}

fn alpha_lists(catalog: &Catalog, n: &mut usize) -> Result<Option<String>> {
    let mut excluded = BTreeSet::new();
    for g in 1..=6 {
        let all = alpha_search(&SearchConfig::new(g), catalog)?;
        *n += all.len();
        if let Some(c) = all.iter().find(|c| c.verdict == Verdict::Unresolved) {
            return Ok(Some(format!("{} is unresolved", c.label())));
        }
        if let Some(c) = all.iter().find(|c| c.signature.len() > 4) {
            return Ok(Some(format!("{} has more than four points", c.label())));
        }
        excluded.extend(
            all.iter()
                .filter(|c| c.verdict == Verdict::Excluded)
                .map(|c| c.label()),
        );
        let pass = passing(&all);
        let (want, want_hyp) = expected_lists(g);
        let found: BTreeSet<(String, String)> = pass
            .iter()
            .filter(|c| c.component.as_deref() != Some("hyp"))
            .map(|c| (c.label(), c.item.clone().unwrap_or_default()))
            .collect();
        if found != want {
            return Ok(Some(format!("g = {g}: found {found:?}, expected {want:?}")));
        }
        let hyp = pass
            .iter()
            .filter(|c| c.component.as_deref() == Some("hyp"))
            .count();
        if hyp != want_hyp {
            return Ok(Some(format!(
                "g = {g}: {hyp} hyperelliptic rows, expected {want_hyp}"
            )));
        }
        for c in &pass {
            let equality = ["(1,1,1,1)", "(5,1)", "(3,3)^nonhyp", "(7,1)", "(7,3)"];
            if equality.contains(&c.label().as_str()) && c.threshold_lhs != c.threshold_rhs {
                return Ok(Some(format!("{} should sit on the threshold", c.label())));
            }
        }
    }
    let want: BTreeSet<String> = ["(6,2)^even", "(6,4)^even", "(6,4)^odd"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    Ok((excluded != want).then(|| format!("exclusions {excluded:?}")))
}

fn semigroup_bound(n: &mut usize) -> Result<Option<String>> {
    let found = semigroup_search(6, &Rational::new(3.into(), 8.into()))?;
    *n = found.len();
    let bounded: Vec<&Vec<i64>> = found
        .iter()
        .filter(|c| c.within_bound)
        .map(|c| &c.generators)
        .collect();
    Ok((bounded != [&vec![3, 7]]).then(|| format!("within bound: {bounded:?}")))
}
