//! Weight spectra, characters, alpha-invariants and slopes.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::curve_models::CurveModel;
use crate::error::{Error, Result};
use crate::scalar::format_rational;
use crate::signature::Signature;
use crate::{Algebra, Integer, Rational};

/// Multiplicities of the weights on `m`-th log-pluricanonical sections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSpectrum {
    pub level: i64,
    /// `(lambda, multiplicity)` for every weight with positive multiplicity, ascending.
    pub entries: Vec<(i64, i64)>,
    pub chi_log: Integer,
}

impl WeightSpectrum {
    fn from_multiplicities(level: i64, mult: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let entries: Vec<(i64, i64)> = mult.into_iter().filter(|&(_, n)| n != 0).collect();
        let chi_log = entries.iter().map(|&(l, n)| BigInt::from(l) * n).sum();
        Self {
            level,
            entries,
            chi_log,
        }
    }

    /// Weight `lambda` occurs with multiplicity `dim R_{m ell - lambda}`.
    pub fn from_algebra(alg: &Algebra, m: i64) -> Result<Self> {
        let top = m * alg.signature().ell();
        if top > alg.degree_cap() {
            return Err(Error::DegreeCapExceeded {
                requested: top,
                cap: alg.degree_cap(),
            });
        }
        let mult = (0..=top)
            .map(|l| alg.dim(top - l).map(|d| (l, d as i64)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_multiplicities(m, mult))
    }

    /// Multiplicities as successive drops of the filtration dimensions.
    pub fn from_model(model: &CurveModel, sig: &Signature, m: i64) -> Result<Self> {
        let dims = model.filtration_dims(sig, m)?;
        let mult =
            (0..dims.len()).map(|l| (l as i64, dims[l] - dims.get(l + 1).copied().unwrap_or(0)));
        let spectrum = Self::from_multiplicities(m, mult);
        if spectrum.entries.iter().any(|&(_, n)| n < 0) {
            return Err(Error::InvalidInput(format!(
                "model {} gives an increasing filtration",
                model.label()
            )));
        }
        Ok(spectrum)
    }

    pub fn total(&self) -> i64 {
        self.entries.iter().map(|(_, n)| n).sum()
    }

    pub fn multiplicity(&self, lambda: i64) -> i64 {
        self.entries
            .iter()
            .find(|(l, _)| *l == lambda)
            .map_or(0, |(_, n)| *n)
    }

    /// The positive weights, repeated by multiplicity, ascending.
    pub fn nonzero_weights(&self) -> Vec<i64> {
        self.entries
            .iter()
            .filter(|(l, _)| *l > 0)
            .flat_map(|&(l, n)| std::iter::repeat_n(l, n as usize))
            .collect()
    }
}

/// Outcome of the four structural identities relating level `m` to level 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub top_multiplicity: bool,
    pub ladder_multiplicities: bool,
    pub shifted_weights: bool,
    pub character_formula: bool,
}

impl IdentityReport {
    pub fn all_hold(&self) -> bool {
        self.top_multiplicity
            && self.ladder_multiplicities
            && self.shifted_weights
            && self.character_formula
    }
}

/// Checks, for `m >= 2`:
/// the weight `(m-1) ell` occurs `n - 1` times;
/// below it the multiplicities are the ladder increments `sum_i (l_{lambda+1,i} - l_{lambda,i})`;
/// above it the weights are the level-1 weights shifted by `(m-1) ell`;
/// `chi_m = m(m-1)(2g-2+n) ell / 2 + chi_1`.
pub fn verify_weight_identities(
    level_m: &WeightSpectrum,
    level_1: &WeightSpectrum,
    sig: &Signature,
) -> IdentityReport {
    let m = level_m.level;
    let ell = sig.ell();
    let n = sig.len() as i64;
    let base = (m - 1) * ell;
    let top_multiplicity = level_m.multiplicity(base) == n - 1;
    let ladder_multiplicities = (0..base).all(|l| {
        let inc: i64 = sig
            .ladder(l + 1)
            .iter()
            .zip(sig.ladder(l))
            .map(|(a, b)| a - b)
            .sum();
        level_m.multiplicity(l) == inc
    });
    let above: Vec<i64> = level_m
        .entries
        .iter()
        .filter(|(l, _)| *l > base)
        .flat_map(|&(l, k)| std::iter::repeat_n(l - base, k as usize))
        .collect();
    let shifted_weights = above == level_1.nonzero_weights();
    let expected = BigInt::from(m * (m - 1) * sig.log_degree() * ell) / 2 + &level_1.chi_log;
    let character_formula = level_m.chi_log == expected;
    IdentityReport {
        top_multiplicity,
        ladder_multiplicities,
        shifted_weights,
        character_formula,
    }
}

/// The non-log second character, `chi_2 = chi_2^log - sum_i a_i`.
pub fn chi2_nonlog(chi2_log: &Integer, sig: &Signature) -> Integer {
    chi2_log - BigInt::from(sig.weights().iter().sum::<i64>())
}

/// Solves `chi_2' / chi_1 = 13(1 - alpha)/(2 - alpha)` where `chi_2'` drops the
/// weights of the dangling branches.
pub fn alpha(
    chi1_log: &Integer,
    chi2_log: &Integer,
    sig: &Signature,
    dangling: &[usize],
) -> Result<Rational> {
    if let Some(&i) = dangling.iter().find(|&&i| i >= sig.len()) {
        return Err(Error::InvalidInput(format!(
            "dangling branch {} out of range",
            i + 1
        )));
    }
    let removed: i64 = dangling.iter().map(|&i| sig.weights()[i]).sum();
    let chi2 = chi2_log - BigInt::from(removed);
    let thirteen = BigInt::from(13) * chi1_log;
    let den = &thirteen - &chi2;
    if den.is_zero() {
        return Err(Error::DegenerateDenominator);
    }
    Ok(Rational::new(thirteen - BigInt::from(2) * chi2, den))
}

/// The slope evaluated two ways: `(13 chi_1 - chi_2)/chi_1` and the closed form
/// `12 - (2g - 2 + n - sum_i 1/(m_i+1)) ell / chi_1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlopePair {
    pub ratio: Rational,
    pub closed: Rational,
}

impl SlopePair {
    pub fn agree(&self) -> bool {
        self.ratio == self.closed
    }
}

pub fn slope(chi1_log: &Integer, chi2_log: &Integer, sig: &Signature) -> Result<SlopePair> {
    if chi1_log <= &BigInt::zero() {
        return Err(Error::InvalidInput("slope needs chi_1 > 0".into()));
    }
    let chi2 = chi2_nonlog(chi2_log, sig);
    let ratio = Rational::new(BigInt::from(13) * chi1_log - chi2, chi1_log.clone());
    let inverse_sum: Rational = sig
        .orders()
        .iter()
        .map(|&m| Rational::new(1.into(), (m + 1).into()))
        .sum();
    let bracket = Rational::from_integer(sig.log_degree().into()) - inverse_sum;
    let closed = Rational::from_integer(12.into())
        - bracket * Rational::from_integer(sig.ell().into())
            / Rational::from_integer(chi1_log.clone());
    Ok(SlopePair { ratio, closed })
}

/// Characters, alpha and slope of one singularity, with an optional dangling set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaSlopeRecord {
    pub chi1_log: Integer,
    pub chi2_log: Integer,
    pub chi2: Integer,
    pub alpha: Rational,
    pub slope: Rational,
    pub slope_closed: Rational,
    pub dangling: Vec<usize>,
}

impl AlphaSlopeRecord {
    pub fn compute(
        chi1_log: &Integer,
        chi2_log: &Integer,
        sig: &Signature,
        dangling: &[usize],
    ) -> Result<Self> {
        let s = slope(chi1_log, chi2_log, sig)?;
        Ok(Self {
            chi1_log: chi1_log.clone(),
            chi2_log: chi2_log.clone(),
            chi2: chi2_nonlog(chi2_log, sig),
            alpha: alpha(chi1_log, chi2_log, sig, dangling)?,
            slope: s.ratio,
            slope_closed: s.closed,
            dangling: dangling.to_vec(),
        })
    }
}

/// Both sides of the lattice-point identity for the toric singularity of type `(p, q)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToricReport {
    pub p: i64,
    pub q: i64,
    pub b: i64,
    /// `((pq-p-q)^2 + pq(pq-p-q+1) - b^2) / (12 b)`.
    pub lhs: String,
    /// `sum_{k=0}^{(pq-p-q-b)/b} #{(i, j) >= 0 : q i + p j <= k b}`, the first character.
    pub rhs: i64,
    pub holds: bool,
}

pub fn toric_lattice_identity(p: i64, q: i64) -> Result<ToricReport> {
    if p < 2 || q < 2 {
        return Err(Error::InvalidInput(format!(
            "need p, q >= 2, got ({p}, {q})"
        )));
    }
    let b = p.gcd(&q);
    let c = p * q - p - q;
    if c - b < 0 {
        return Err(Error::InvalidInput(format!(
            "({p}, {q}) is a genus-0 case: pq - p - q - b < 0"
        )));
    }
    let lhs = Rational::new(
        BigInt::from(c * c + p * q * (c + 1) - b * b),
        BigInt::from(12 * b),
    );
    let top = (c - b) / b;
    let mut rhs = 0i64;
    for k in 0..=top {
        let bound = k * b;
        for i in 0..=bound / q {
            rhs += (bound - q * i) / p + 1;
        }
    }
    let holds = lhs == Rational::from_integer(rhs.into());
    Ok(ToricReport {
        p,
        q,
        b,
        lhs: format_rational(&lhs),
        rhs,
        holds,
    })
}

/// JSON record of the invariants of one source.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsRecord {
    pub signature: Vec<i64>,
    pub component_label: Option<String>,
    pub model: String,
    pub chi1_log: i64,
    pub chi2_log: i64,
    pub chi2: i64,
    pub alpha: String,
    pub slope: String,
    /// Level `m` (as a string key) to `[lambda, multiplicity]` pairs.
    pub weights: BTreeMap<String, Vec<[i64; 2]>>,
}

impl InvariantsRecord {
    pub fn build(
        sig: &Signature,
        component_label: Option<String>,
        model: String,
        level_1: &WeightSpectrum,
        level_2: &WeightSpectrum,
        extra: &[WeightSpectrum],
    ) -> Result<Self> {
        let rec = AlphaSlopeRecord::compute(&level_1.chi_log, &level_2.chi_log, sig, &[])?;
        let small = |v: &Integer| {
            v.to_i64()
                .ok_or_else(|| Error::InvalidInput("character exceeds 64 bits".into()))
        };
        let mut weights = BTreeMap::new();
        for s in [level_1, level_2].into_iter().chain(extra) {
            weights.insert(
                s.level.to_string(),
                s.entries.iter().map(|&(l, n)| [l, n]).collect(),
            );
        }
        Ok(Self {
            signature: sig.orders().to_vec(),
            component_label,
            model,
            chi1_log: small(&rec.chi1_log)?,
            chi2_log: small(&rec.chi2_log)?,
            chi2: small(&rec.chi2)?,
            alpha: format_rational(&rec.alpha),
            slope: format_rational(&rec.slope),
            weights,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::parse_rational;

    fn int(v: i64) -> Integer {
        BigInt::from(v)
    }

    #[test]
    fn alpha_examples() {
        let sig = Signature::derive(&[3, 1]).unwrap();
        assert_eq!(
            alpha(&int(7), &int(31), &sig, &[]).unwrap(),
            parse_rational("29/60").unwrap()
        );
        let sig = Signature::derive(&[5, 1]).unwrap();
        assert_eq!(
            alpha(&int(12), &int(60), &sig, &[]).unwrap(),
            parse_rational("3/8").unwrap()
        );
        let sig = Signature::derive(&[6, 2]).unwrap();
        assert_eq!(
            alpha(&int(46), &int(256), &sig, &[]).unwrap(),
            parse_rational("43/171").unwrap()
        );
        assert_eq!(
            alpha(&int(1), &int(13), &sig, &[]),
            Err(Error::DegenerateDenominator)
        );
    }

    #[test]
    fn slope_forms_agree_when_character_formula_holds() {
        let sig = Signature::derive(&[3, 1]).unwrap();
        let s = slope(&int(7), &int(31), &sig).unwrap();
        assert!(s.agree());
        assert_eq!(s.ratio, Rational::from_integer(9.into()));
    }

    #[test]
    fn toric_examples() {
        let r = toric_lattice_identity(2, 3).unwrap();
        assert_eq!((r.lhs.as_str(), r.rhs, r.holds), ("1", 1, true));
        let r = toric_lattice_identity(3, 4).unwrap();
        assert_eq!((r.rhs, r.holds), (8, true));
        let r = toric_lattice_identity(4, 6).unwrap();
        assert!(r.holds);
        assert_eq!(r.b, 2);
        assert!(toric_lattice_identity(2, 2).is_err());
    }

    #[test]
    fn genus_one_spectrum() {
        let sig = Signature::derive(&[0]).unwrap();
        let s = WeightSpectrum::from_model(&CurveModel::CliffordMax { genus: 1 }, &sig, 1).unwrap();
        assert_eq!(s.entries, vec![(1, 1)]);
        assert_eq!(s.chi_log, int(1));
    }
}
