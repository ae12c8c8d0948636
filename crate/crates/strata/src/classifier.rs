//! Threshold searches over signatures, curve models and symmetric semigroups.

use std::cmp::Reverse;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{check_entry, Catalog, CatalogEntry, Mismatch};
use crate::curve_models::{CurveModel, PointTag};
use crate::error::{Error, Result};
use crate::invariants::WeightSpectrum;
use crate::scalar::format_rational;
use crate::semigroup::{element_sum_bound_filter, enumerate_symmetric, NumericalSemigroup};
use crate::signature::{enumerate_signatures, Signature};
use crate::{Integer, Rational};

/// Largest genus accepted by [`alpha_search`] unless configured otherwise.
pub const DEFAULT_GENUS_BOUND: i64 = 8;

fn rat(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

/// `13(1 - t)/(2 - t) - 1`; a candidate passes when `chi1 * factor >= (2g-2+n) ell - sum_Q a_i`.
fn threshold_factor(threshold: &Rational) -> Result<Rational> {
    if *threshold >= Rational::new(11.into(), 12.into()) {
        return Err(Error::InvalidInput(format!(
            "threshold {} must be below 11/12",
            format_rational(threshold)
        )));
    }
    let one = Rational::one();
    Ok(rat(13) * (&one - threshold) / (rat(2) - threshold) - one)
}

/// The `chi_1^log` a signature needs to reach `threshold`, with branches `dangling` (0-based) removed from `chi_2`.
pub fn required_chi1(
    sig: &Signature,
    threshold: &Rational,
    dangling: &[usize],
) -> Result<Rational> {
    let removed: i64 = dangling.iter().map(|&i| sig.weights()[i]).sum();
    Ok(rat(sig.log_degree() * sig.ell() - removed) / threshold_factor(threshold)?)
}

/// Upper bound `(g+1) ell / 2` on `chi_1^log` from Clifford's theorem.
pub fn clifford_cap(sig: &Signature) -> Rational {
    Rational::new(BigInt::from(sig.genus() + 1) * sig.ell(), 2.into())
}

/// How many zero entries can be appended to `sig` while `chi1` still meets the threshold.
/// Zero when `chi1` fails already for `sig` itself.
pub fn ordinary_point_budget(sig: &Signature, chi1: &Integer, threshold: &Rational) -> Result<i64> {
    let room = Rational::from_integer(chi1.clone()) * threshold_factor(threshold)? / rat(sig.ell());
    let k = room.floor().to_integer() - BigInt::from(sig.log_degree());
    Ok(k.to_i64().unwrap_or(i64::MAX).max(0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// Numerically admissible but ruled out by a stored exclusion.
    Excluded,
    /// Numerically admissible under the Clifford maximum, with no model settling it.
    Unresolved,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Pass => "pass",
            Self::Fail => "fail",
            Self::Excluded => "excluded",
            Self::Unresolved => "unresolved",
        })
    }
}

/// One evaluated (signature, model) pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Candidate {
    pub signature: Vec<i64>,
    pub component: Option<String>,
    pub model: String,
    pub chi1_log: i64,
    /// `chi1_log` as an exact rational.
    pub threshold_lhs: String,
    /// The `chi1_log` needed to reach the threshold.
    pub threshold_rhs: String,
    pub verdict: Verdict,
    pub item: Option<String>,
    /// Dangling branches, 1-based.
    #[serde(default)]
    pub dangling: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Candidate {
    /// `(4,2)^even` style label.
    pub fn label(&self) -> String {
        crate::catalog::component_label(&self.signature, self.component.as_deref())
    }

    fn sort_key(&self) -> (Reverse<Vec<i64>>, usize, Option<String>, String, Vec<usize>) {
        let core: Vec<i64> = self.signature.iter().copied().filter(|&m| m > 0).collect();
        let zeros = self.signature.len() - core.len();
        (
            Reverse(core),
            zeros,
            self.component.clone(),
            self.model.clone(),
            self.dangling.clone(),
        )
    }
}

/// Settings for [`alpha_search`].
#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub genus: i64,
    pub threshold: Rational,
    /// Also evaluate every nonempty set of dangling branches.
    pub dangling: bool,
    /// Skip signatures above the Clifford cap before evaluating models.
    pub prune: bool,
    pub genus_bound: i64,
}

impl SearchConfig {
    pub fn new(genus: i64) -> Self {
        Self {
            genus,
            threshold: Rational::new(3.into(), 8.into()),
            dangling: false,
            prune: true,
            genus_bound: DEFAULT_GENUS_BOUND,
        }
    }
}

/// Canonical hyperelliptic taggings of a signature with positive orders: in each
/// run of equal orders, the Weierstrass points come first (even orders only) and
/// the rest form consecutive conjugate pairs.
pub fn hyperelliptic_taggings(sig: &Signature) -> Vec<Vec<PointTag>> {
    let orders = sig.orders();
    let mut runs: Vec<(i64, usize)> = Vec::new();
    for &m in orders {
        match runs.last_mut() {
            Some((v, s)) if *v == m => *s += 1,
            _ => runs.push((m, 1)),
        }
    }
    let mut out = vec![Vec::new()];
    for (m, s) in runs {
        let choices: Vec<usize> = (0..=s)
            .filter(|&w| (s - w) % 2 == 0 && (w == 0 || m % 2 == 0))
            .collect();
        let mut next = Vec::new();
        for prefix in &out {
            for &w in &choices {
                let mut tags: Vec<PointTag> = prefix.clone();
                let mut pair_id = tags
                    .iter()
                    .filter(|t| matches!(t, PointTag::Pair(_)))
                    .count() as u32
                    / 2;
                tags.extend(std::iter::repeat_n(PointTag::Weierstrass, w));
                for _ in 0..(s - w) / 2 {
                    pair_id += 1;
                    tags.push(PointTag::Pair(pair_id));
                    tags.push(PointTag::Pair(pair_id));
                }
                next.push(tags);
            }
        }
        out = next;
    }
    out
}

/// Non-hyperelliptic components of a signature of genus at least 3.
pub fn nonhyperelliptic_components(sig: &Signature) -> Vec<Option<String>> {
    let g = sig.genus();
    if g < 3 {
        return Vec::new();
    }
    if sig.all_even() {
        return if g == 3 {
            vec![Some("odd".into())]
        } else {
            vec![Some("even".into()), Some("odd".into())]
        };
    }
    if sig.orders() == [g - 1, g - 1] {
        return vec![Some("nonhyp".into())];
    }
    vec![None]
}

fn semigroup_parity(h: &NumericalSemigroup) -> &'static str {
    if h.count_up_to(h.genus() - 1) % 2 == 1 {
        "odd"
    } else {
        "even"
    }
}

/// Where a model came from; decides how ordinary points are added.
#[derive(Clone, Debug)]
enum Origin {
    Plain,
    Entry(String),
}

#[derive(Clone, Debug)]
struct Job {
    sig: Signature,
    component: Option<String>,
    model: CurveModel,
    origin: Origin,
    item: Option<String>,
}

fn chi1(sig: &Signature, model: &CurveModel) -> Result<Integer> {
    Ok(match model {
        CurveModel::Algebra { algebra, .. } => WeightSpectrum::from_algebra(algebra, 1)?.chi_log,
        other => WeightSpectrum::from_model(other, sig, 1)?.chi_log,
    })
}

fn extend_model(model: &CurveModel, k: usize) -> Option<CurveModel> {
    Some(match model {
        CurveModel::Hyperelliptic { genus, tags } => {
            let mut tags = tags.clone();
            tags.extend(std::iter::repeat_n(PointTag::Free, k));
            CurveModel::Hyperelliptic {
                genus: *genus,
                tags,
            }
        }
        CurveModel::CliffordMax { genus } => CurveModel::CliffordMax { genus: *genus },
        CurveModel::Unibranch {
            semigroup,
            canonical,
        } => {
            let mut canonical = canonical.clone()?;
            canonical.extend(std::iter::repeat_n(0, k));
            CurveModel::Unibranch {
                semigroup: semigroup.clone(),
                canonical: Some(canonical),
            }
        }
        CurveModel::Override { base, table } => CurveModel::Override {
            base: Box::new(extend_model(base, k)?),
            table: table
                .iter()
                .map(|(d, h)| {
                    (
                        d.iter().copied().chain(std::iter::repeat_n(0, k)).collect(),
                        *h,
                    )
                })
                .collect(),
        },
        CurveModel::Algebra { .. } => return None,
    })
}

/// Whether every filtration divisor has degree where the Clifford maximum is forced.
fn clifford_is_exact(sig: &Signature) -> bool {
    let g = sig.genus();
    (0..=sig.ell()).all(|l| {
        let d: i64 = sig.filtration_divisor(1, l).iter().sum();
        d <= 0 || d >= 2 * g - 2
    })
}

fn item_for_semigroup(
    catalog: &Catalog,
    sig: &Signature,
    component: Option<&str>,
    h: &NumericalSemigroup,
) -> Option<String> {
    catalog
        .find(sig, component)
        .into_iter()
        .find_map(|e: &CatalogEntry| {
            let exps: Option<Vec<i64>> = e
                .generators
                .iter()
                .map(|g| (g.monomials.len() == 1).then(|| g.monomials[0].exp))
                .collect();
            let same = exps
                .and_then(|x| NumericalSemigroup::from_generators(&x).ok())
                .is_some_and(|x| &x == h);
            if same {
                e.item.clone()
            } else {
                None
            }
        })
}

/// Models for one zero-free signature; the second list holds settled non-passing outcomes.
fn jobs_for(
    sig: &Signature,
    catalog: &Catalog,
    threshold: &Rational,
) -> Result<(Vec<Job>, Vec<Candidate>)> {
    let g = sig.genus();
    let mut jobs = Vec::new();
    let mut settled = Vec::new();
    if g == 1 {
        jobs.push(Job {
            sig: sig.clone(),
            component: None,
            model: CurveModel::CliffordMax { genus: 1 },
            origin: Origin::Plain,
            item: Some("i".into()),
        });
        return Ok((jobs, settled));
    }
    for tags in hyperelliptic_taggings(sig) {
        jobs.push(Job {
            sig: sig.clone(),
            component: Some("hyp".into()),
            model: CurveModel::hyperelliptic(g, tags)?,
            origin: Origin::Plain,
            item: Some("ii".into()),
        });
    }
    for component in nonhyperelliptic_components(sig) {
        let comp = component.as_deref();
        if sig.len() == 1 {
            for h in enumerate_symmetric(g)
                .into_iter()
                .filter(|h| !h.is_hyperelliptic())
            {
                if comp.is_some_and(|c| c != semigroup_parity(&h)) {
                    continue;
                }
                let item = item_for_semigroup(catalog, sig, comp, &h);
                jobs.push(Job {
                    sig: sig.clone(),
                    component: component.clone(),
                    model: CurveModel::unibranch(h, Some(sig.orders().to_vec()))?,
                    origin: Origin::Plain,
                    item,
                });
            }
            continue;
        }
        let entries: Vec<&CatalogEntry> = catalog
            .find(sig, comp)
            .into_iter()
            .filter(|e| !e.hyperelliptic)
            .collect();
        if !entries.is_empty() {
            for e in entries {
                jobs.push(Job {
                    sig: sig.clone(),
                    component: component.clone(),
                    model: catalog.model(&e.id, 1)?,
                    origin: Origin::Entry(e.id.clone()),
                    item: e.item.clone(),
                });
            }
            continue;
        }
        let model = CurveModel::CliffordMax { genus: g };
        if !clifford_is_exact(sig) {
            let value = chi1(sig, &model)?;
            let rhs = required_chi1(sig, threshold, &[])?;
            if Rational::from_integer(value.clone()) >= rhs {
                let (verdict, note) = match catalog.exclusion(sig, comp) {
                    Some(x) => (Verdict::Excluded, x.reason.clone()),
                    None => (
                        Verdict::Unresolved,
                        "only the Clifford upper bound is available".to_string(),
                    ),
                };
                settled.push(candidate(
                    sig,
                    component.clone(),
                    &model,
                    &value,
                    &rhs,
                    verdict,
                    None,
                    &[],
                    Some(note),
                )?);
                continue;
            }
        }
        jobs.push(Job {
            sig: sig.clone(),
            component,
            model,
            origin: Origin::Plain,
            item: None,
        });
    }
    Ok((jobs, settled))
}

#[allow(clippy::too_many_arguments)]
fn candidate(
    sig: &Signature,
    component: Option<String>,
    model: &CurveModel,
    value: &Integer,
    rhs: &Rational,
    verdict: Verdict,
    item: Option<String>,
    dangling: &[usize],
    note: Option<String>,
) -> Result<Candidate> {
    Ok(Candidate {
        signature: sig.orders().to_vec(),
        component,
        model: model.label(),
        chi1_log: value
            .to_i64()
            .ok_or_else(|| Error::InvalidInput("character exceeds 64 bits".into()))?,
        threshold_lhs: value.to_string(),
        threshold_rhs: format_rational(rhs),
        verdict,
        item,
        dangling: dangling.iter().map(|i| i + 1).collect(),
        note,
    })
}

fn evaluate(job: &Job, catalog: &Catalog, config: &SearchConfig) -> Result<Vec<Candidate>> {
    let value = chi1(&job.sig, &job.model)?;
    let lhs = Rational::from_integer(value.clone());
    let rhs = required_chi1(&job.sig, &config.threshold, &[])?;
    let pass = lhs >= rhs;
    let verdict = if pass { Verdict::Pass } else { Verdict::Fail };
    let mut out = vec![candidate(
        &job.sig,
        job.component.clone(),
        &job.model,
        &value,
        &rhs,
        verdict,
        job.item.clone(),
        &[],
        None,
    )?];
    if config.dangling {
        let n = job.sig.len();
        for mask in 1u32..(1 << n) {
            let q: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            let rhs = required_chi1(&job.sig, &config.threshold, &q)?;
            let verdict = if lhs >= rhs {
                Verdict::Pass
            } else {
                Verdict::Fail
            };
            out.push(candidate(
                &job.sig,
                job.component.clone(),
                &job.model,
                &value,
                &rhs,
                verdict,
                None,
                &q,
                None,
            )?);
        }
    }
    if !pass {
        return Ok(out);
    }
    let budget = ordinary_point_budget(&job.sig, &value, &config.threshold)?;
    for k in 1..=budget as usize {
        let sig = job.sig.with_zeros(k);
        let model = match (&job.origin, extend_model(&job.model, k)) {
            (_, Some(m)) => m,
            (Origin::Entry(id), None) => {
                let entry = catalog.get(id)?.with_ordinary_points(k)?;
                CurveModel::algebra(&entry.id, Arc::new(entry.input().resolve()?.close(1)?))?
            }
            (Origin::Plain, None) => unreachable!("plain jobs never carry algebra models"),
        };
        let value = chi1(&sig, &model)?;
        let rhs = required_chi1(&sig, &config.threshold, &[])?;
        let verdict = if Rational::from_integer(value.clone()) >= rhs {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        out.push(candidate(
            &sig,
            job.component.clone(),
            &model,
            &value,
            &rhs,
            verdict,
            job.item.clone(),
            &[],
            None,
        )?);
    }
    Ok(out)
}

/// Every zero-free signature of genus `g` (and the all-zero ones in genus 1) that the search considers.
fn search_signatures(config: &SearchConfig) -> Result<Vec<Signature>> {
    let g = config.genus;
    let n_max = if g == 1 {
        if config.prune {
            4
        } else {
            6
        }
    } else {
        (2 * g - 2) as usize
    };
    let sigs = enumerate_signatures(g, n_max, g == 1);
    let threshold = &config.threshold;
    let mut kept = Vec::new();
    for s in sigs {
        if config.prune && clifford_cap(&s) < required_chi1(&s, threshold, &[])? {
            continue;
        }
        kept.push(s);
    }
    Ok(kept)
}

/// Evaluates every applicable (signature, model) pair of genus `config.genus`,
/// including ordinary-point extensions of the passing ones. Output is sorted
/// canonically and does not depend on the thread schedule.
pub fn alpha_search(config: &SearchConfig, catalog: &Catalog) -> Result<Vec<Candidate>> {
    if config.genus < 1 || config.genus > config.genus_bound {
        return Err(Error::InvalidInput(format!(
            "genus {} outside the supported range 1..={}",
            config.genus, config.genus_bound
        )));
    }
    threshold_factor(&config.threshold)?;
    let sigs = search_signatures(config)?;
    let prepared = sigs
        .par_iter()
        .map(|s| jobs_for(s, catalog, &config.threshold))
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    let mut jobs = Vec::new();
    for (j, settled) in prepared {
        jobs.extend(j);
        out.extend(settled);
    }
    let evaluated = jobs
        .par_iter()
        .map(|j| evaluate(j, catalog, config))
        .collect::<Result<Vec<_>>>()?;
    out.extend(evaluated.into_iter().flatten());
    out.sort_by_key(|c| c.sort_key());
    out.dedup();
    Ok(out)
}

/// The passing candidates without dangling branches.
pub fn passing(candidates: &[Candidate]) -> Vec<&Candidate> {
    candidates
        .iter()
        .filter(|c| c.verdict == Verdict::Pass && c.dangling.is_empty())
        .collect()
}

/// One symmetric non-hyperelliptic semigroup in the bound search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupCandidate {
    pub generators: Vec<i64>,
    pub gaps: Vec<i64>,
    /// Sum of the `g` smallest elements.
    pub element_sum: i64,
    /// `element_sum <= g^2 - 1`.
    pub within_bound: bool,
    pub gap_sum: i64,
    /// `chi_1^log` needed by the one-point signature at the threshold.
    pub required: String,
    pub verdict: Verdict,
}

/// All symmetric non-hyperelliptic semigroups of genus `g`, with the element-sum bound
/// and the threshold test on their gap sums.
pub fn semigroup_search(g: i64, threshold: &Rational) -> Result<Vec<SemigroupCandidate>> {
    if g < 3 {
        return Err(Error::InvalidInput(format!(
            "semigroup search needs genus >= 3, got {g}"
        )));
    }
    let sig = Signature::derive(&[2 * g - 2])?;
    let rhs = required_chi1(&sig, threshold, &[])?;
    let nonhyp: Vec<NumericalSemigroup> = enumerate_symmetric(g)
        .into_iter()
        .filter(|h| !h.is_hyperelliptic())
        .collect();
    let bounded = element_sum_bound_filter(g, &nonhyp);
    Ok(nonhyp
        .iter()
        .map(|h| {
            let element_sum: i64 = h.first_elements(g as usize).iter().sum();
            SemigroupCandidate {
                generators: h.generators().to_vec(),
                gaps: h.gaps().to_vec(),
                element_sum,
                within_bound: bounded.iter().any(|b| b.generators == h.generators()),
                gap_sum: h.gap_sum(),
                required: format_rational(&rhs),
                verdict: if rat(h.gap_sum()) >= rhs {
                    Verdict::Pass
                } else {
                    Verdict::Fail
                },
            }
        })
        .collect())
}

/// Outcome of re-deriving every catalog entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegressionReport {
    pub checked: Vec<String>,
    pub mismatches: Vec<Mismatch>,
}

impl RegressionReport {
    pub fn clean(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn nonvarying_regression(catalog: &Catalog) -> Result<RegressionReport> {
    let results = catalog
        .entries()
        .par_iter()
        .map(check_entry)
        .collect::<Result<Vec<_>>>()?;
    Ok(RegressionReport {
        checked: catalog.entries().iter().map(|e| e.id.clone()).collect(),
        mismatches: results.into_iter().flatten().collect(),
    })
}
