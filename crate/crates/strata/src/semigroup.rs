//! Numerical semigroups: cofinite additive submonoids of the naturals.

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A numerical semigroup, materialized as a membership bitmap on `0..=2F+2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NumericalSemigroup {
    generators: Vec<i64>,
    member: Vec<bool>,
    frobenius: i64,
    gaps: Vec<i64>,
}

impl NumericalSemigroup {
    pub fn from_generators(gens: &[i64]) -> Result<Self> {
        if gens.is_empty() || gens.iter().any(|&g| g <= 0) {
            return Err(Error::InvalidInput(
                "generators must be positive and non-empty".into(),
            ));
        }
        let gcd = gens.iter().fold(0i64, |acc, &g| acc.gcd(&g));
        if gcd != 1 {
            return Err(Error::InvalidInput(format!(
                "generators {gens:?} have gcd {gcd}, not cofinite"
            )));
        }
        // Frobenius number is below (min - 1)(max - 1) for any generating set.
        let lo = *gens.iter().min().unwrap();
        let hi = *gens.iter().max().unwrap();
        let bound = ((lo - 1) * (hi - 1)).max(0) as usize + 2;
        let mut member = vec![false; bound + 1];
        member[0] = true;
        for k in 1..=bound {
            member[k] = gens
                .iter()
                .any(|&g| g as usize <= k && member[k - g as usize]);
        }
        Ok(Self::from_membership(&member))
    }

    /// Builds the semigroup whose complement in the naturals is `gaps`.
    pub fn from_gaps(gaps: &[i64]) -> Result<Self> {
        if gaps.iter().any(|&g| g <= 0) {
            return Err(Error::InvalidInput("gaps must be positive".into()));
        }
        let top = gaps.iter().copied().max().unwrap_or(0) as usize;
        let mut member = vec![true; 2 * top + 3];
        for &g in gaps {
            member[g as usize] = false;
        }
        for a in 1..member.len() {
            for b in a..member.len() - a {
                if member[a] && member[b] && !member[a + b] {
                    return Err(Error::InvalidInput(format!(
                        "gap set not closed: {a} + {b} is a gap"
                    )));
                }
            }
        }
        Ok(Self::from_membership(&member))
    }

    fn from_membership(member: &[bool]) -> Self {
        let frobenius = member.iter().rposition(|&m| !m).map_or(-1, |p| p as i64);
        let len = (2 * frobenius + 3).max(1) as usize;
        let member: Vec<bool> = (0..len).map(|k| k >= member.len() || member[k]).collect();
        let gaps: Vec<i64> = (1..len as i64).filter(|&k| !member[k as usize]).collect();
        let mut generators = Vec::new();
        for k in 1..len {
            if member[k] && !(1..k).any(|a| member[a] && member[k - a]) {
                generators.push(k as i64);
            }
        }
        if generators.is_empty() {
            generators.push(1);
        }
        Self {
            generators,
            member,
            frobenius,
            gaps,
        }
    }

    /// Minimal generating set.
    pub fn generators(&self) -> &[i64] {
        &self.generators
    }

    pub fn gaps(&self) -> &[i64] {
        &self.gaps
    }

    pub fn frobenius(&self) -> i64 {
        self.frobenius
    }

    pub fn genus(&self) -> i64 {
        self.gaps.len() as i64
    }

    pub fn contains(&self, k: i64) -> bool {
        k >= 0 && (k as usize >= self.member.len() || self.member[k as usize])
    }

    pub fn is_symmetric(&self) -> bool {
        self.frobenius == 2 * self.genus() - 1
    }

    /// `2` belongs to the semigroup.
    pub fn is_hyperelliptic(&self) -> bool {
        self.contains(2)
    }

    pub fn gap_sum(&self) -> i64 {
        self.gaps.iter().sum()
    }

    /// `#{h in H : h <= k}`.
    pub fn count_up_to(&self, k: i64) -> i64 {
        (0..=k).filter(|&h| self.contains(h)).count() as i64
    }

    /// The `count` smallest elements, starting at 0.
    pub fn first_elements(&self, count: usize) -> Vec<i64> {
        (0..).filter(|&h| self.contains(h)).take(count).collect()
    }

    /// `3 * gap_sum - g^2 + g`.
    pub fn tautological_coefficient(&self) -> BigInt {
        let g = BigInt::from(self.genus());
        BigInt::from(3) * self.gap_sum() - &g * &g + g
    }

    pub fn record(&self) -> SemigroupRecord {
        SemigroupRecord {
            generators: self.generators.clone(),
            gaps: self.gaps.clone(),
            genus: self.genus(),
            frobenius: self.frobenius,
            symmetric: self.is_symmetric(),
            gap_sum: self.gap_sum(),
        }
    }
}

impl std::fmt::Display for NumericalSemigroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "<{}>", parts.join(","))
    }
}

/// Serializable summary of a semigroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupRecord {
    pub generators: Vec<i64>,
    pub gaps: Vec<i64>,
    pub genus: i64,
    pub frobenius: i64,
    pub symmetric: bool,
    pub gap_sum: i64,
}

/// `(p-1)(q-1)(2pq - p - q - 1) / 12`, the gap sum of the semigroup generated by `p, q`.
pub fn planar_gap_sum_formula(p: i64, q: i64) -> Result<BigInt> {
    if p < 2 || q < 2 {
        return Err(Error::InvalidInput(format!(
            "need p, q >= 2, got ({p}, {q})"
        )));
    }
    if p.gcd(&q) != 1 {
        return Err(Error::NotCoprime(p, q));
    }
    let (p, q) = (BigInt::from(p), BigInt::from(q));
    let one = BigInt::from(1);
    let value = (&p - &one) * (&q - &one) * (BigInt::from(2) * &p * &q - &p - &q - &one);
    Ok(value / 12)
}

/// All semigroups of genus `g` with Frobenius number `2g - 1`, ordered by gap set.
pub fn enumerate_symmetric(g: i64) -> Vec<NumericalSemigroup> {
    assert!(g >= 1, "genus must be positive");
    let f = (2 * g - 1) as usize;
    // member[k] for 0..=f; 0 is in, f is out, and exactly one of k, f - k is in.
    let mut member = vec![false; f + 1];
    member[0] = true;
    let mut out = Vec::new();
    search(1, g as usize, f, &mut member, &mut out);
    out.sort_by(|a, b| a.gaps.cmp(&b.gaps));
    out
}

fn search(k: usize, g: usize, f: usize, member: &mut Vec<bool>, out: &mut Vec<NumericalSemigroup>) {
    if k == g {
        let ok = (1..=f).all(|a| (a..=f - a).all(|b| !(member[a] && member[b]) || member[a + b]));
        if ok {
            let gaps: Vec<i64> = (1..=f).filter(|&x| !member[x]).map(|x| x as i64).collect();
            out.push(NumericalSemigroup::from_gaps(&gaps).expect("closure checked"));
        }
        return;
    }
    for choose_low in [false, true] {
        member[k] = choose_low;
        member[f - k] = !choose_low;
        // Partial closure check among decided positions below k + 1 and above f - k - 1.
        let decided = |x: usize| x <= k || x >= f - k;
        let consistent = (1..=f).all(|a| {
            (a..=f - a).all(|b| {
                !(decided(a) && decided(b) && decided(a + b) && member[a] && member[b])
                    || member[a + b]
            })
        });
        if consistent {
            search(k + 1, g, f, member, out);
        }
    }
    member[k] = false;
    member[f - k] = false;
}

/// How a semigroup relates to the element-sum bound `sum_{i<=g} k_i <= g^2 - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementSumRecord {
    pub generators: Vec<i64>,
    pub element_sum: i64,
    /// `true` when the sum equals `g^2 - 2`.
    pub equals_g2_minus_2: bool,
    /// `true` when the sum equals `g^2 - 1`.
    pub equals_g2_minus_1: bool,
}

/// Keeps the semigroups whose `g` smallest elements sum to at most `g^2 - 1`.
pub fn element_sum_bound_filter(
    g: i64,
    semigroups: &[NumericalSemigroup],
) -> Vec<ElementSumRecord> {
    semigroups
        .iter()
        .filter_map(|h| {
            let sum: i64 = h.first_elements(g as usize).iter().sum();
            (sum < g * g).then(|| ElementSumRecord {
                generators: h.generators().to_vec(),
                element_sum: sum,
                equals_g2_minus_2: sum == g * g - 2,
                equals_g2_minus_1: sum == g * g - 1,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_examples() {
        let h = NumericalSemigroup::from_generators(&[3, 4]).unwrap();
        assert_eq!(h.gaps(), &[1, 2, 5]);
        assert_eq!((h.genus(), h.gap_sum(), h.frobenius()), (3, 8, 5));
        let h = NumericalSemigroup::from_generators(&[3, 5]).unwrap();
        assert_eq!(h.gaps(), &[1, 2, 4, 7]);
        assert_eq!(h.gap_sum(), 14);
        let h = NumericalSemigroup::from_generators(&[3, 7]).unwrap();
        assert_eq!(h.gaps(), &[1, 2, 4, 5, 8, 11]);
        assert_eq!(h.gap_sum(), 31);
        let n = NumericalSemigroup::from_generators(&[1]).unwrap();
        assert_eq!((n.genus(), n.frobenius(), n.gaps().len()), (0, -1, 0));
        assert!(NumericalSemigroup::from_generators(&[4, 6]).is_err());
    }

    #[test]
    fn minimal_generators() {
        let h = NumericalSemigroup::from_generators(&[4, 5, 6, 8, 9]).unwrap();
        assert_eq!(h.generators(), &[4, 5, 6]);
        assert_eq!(h.gaps(), &[1, 2, 3, 7]);
        assert!(h.is_symmetric());
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(planar_gap_sum_formula(3, 4).unwrap(), 8.into());
        assert_eq!(planar_gap_sum_formula(3, 7).unwrap(), 31.into());
        for g in 1..10 {
            assert_eq!(
                planar_gap_sum_formula(2, 2 * g + 1).unwrap(),
                (g * g).into()
            );
        }
        assert!(planar_gap_sum_formula(4, 6).is_err());
    }

    #[test]
    fn symmetric_enumeration_examples() {
        let show = |g| {
            enumerate_symmetric(g)
                .iter()
                .map(|h| h.to_string())
                .collect::<Vec<_>>()
        };
        assert_eq!(show(1), vec!["<2,3>"]);
        assert_eq!(show(2), vec!["<2,5>"]);
        let g3 = show(3);
        assert!(g3.contains(&"<3,4>".to_string()) && g3.contains(&"<2,7>".to_string()));
        assert_eq!(g3.len(), 2);
    }

    #[test]
    fn element_sum_examples() {
        let nonhyp: Vec<_> = enumerate_symmetric(6)
            .into_iter()
            .filter(|h| !h.is_hyperelliptic())
            .collect();
        let kept = element_sum_bound_filter(6, &nonhyp);
        assert_eq!(kept.len(), 1);
        assert_eq!(kept[0].generators, vec![3, 7]);
        let h = NumericalSemigroup::from_generators(&[2, 5]).unwrap();
        assert_eq!(element_sum_bound_filter(2, &[h])[0].element_sum, 2);
    }

    #[test]
    fn tautological_examples() {
        let t = |g: &[i64]| {
            NumericalSemigroup::from_generators(g)
                .unwrap()
                .tautological_coefficient()
        };
        assert_eq!(t(&[3, 4]), 18.into());
        assert_eq!(t(&[2, 3]), 3.into());
        assert_eq!(t(&[2, 5]), 10.into());
    }
}
