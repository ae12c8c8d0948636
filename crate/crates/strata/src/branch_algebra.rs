//! Graded subalgebras of a product of one-variable polynomial rings.
//!
//! Branch `i` carries a parameter `t_i` of degree `a_i`, so a homogeneous
//! element of degree `k` is a vector of coefficients, one for each branch
//! with `a_i | k` (the exponent on that branch is `k / a_i`). Degree `k` is the
//! primary index; the t-adic order is derived from it.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{unit, RowSpace};
use crate::scalar::{parse_rational, Field};
use crate::signature::Signature;
use crate::Rational;

/// One term `coeff * t_branch^exponent` (branch is 0-based).
#[derive(Clone, Debug, PartialEq)]
pub struct Term<F> {
    pub branch: usize,
    pub exponent: i64,
    pub coeff: F,
}

/// A homogeneous element with at most one term per branch.
#[derive(Clone, Debug, PartialEq)]
pub struct MonomialVector<F> {
    name: String,
    degree: i64,
    terms: Vec<Term<F>>,
}

impl<F: Field> MonomialVector<F> {
    pub fn new(sig: &Signature, name: &str, terms: Vec<Term<F>>) -> Result<Self> {
        let bad = |reason: String| Error::BadGenerator {
            name: name.to_string(),
            reason,
        };
        let mut kept: Vec<Term<F>> = Vec::new();
        for t in terms {
            if t.branch >= sig.len() {
                return Err(bad(format!("branch {} out of range", t.branch + 1)));
            }
            if t.exponent < 1 {
                return Err(bad(format!("exponent {} must be at least 1", t.exponent)));
            }
            if kept.iter().any(|k| k.branch == t.branch) {
                return Err(bad(format!("two terms on branch {}", t.branch + 1)));
            }
            if !t.coeff.is_zero() {
                kept.push(t);
            }
        }
        let Some(first) = kept.first() else {
            return Err(bad("no nonzero terms".into()));
        };
        let degree = first.exponent * sig.weights()[first.branch];
        if let Some(t) = kept
            .iter()
            .find(|t| t.exponent * sig.weights()[t.branch] != degree)
        {
            return Err(bad(format!(
                "not homogeneous: t{}^{} has degree {}, expected {degree}",
                t.branch + 1,
                t.exponent,
                t.exponent * sig.weights()[t.branch]
            )));
        }
        kept.sort_by_key(|t| t.branch);
        Ok(Self {
            name: name.to_string(),
            degree,
            terms: kept,
        })
    }

    /// The pure monomial `t_branch^exponent`.
    pub fn pure(sig: &Signature, branch: usize, exponent: i64) -> Result<Self> {
        Self::new(
            sig,
            &format!("t{}^{}", branch + 1, exponent),
            vec![Term {
                branch,
                exponent,
                coeff: F::one(),
            }],
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn terms(&self) -> &[Term<F>] {
        &self.terms
    }

    pub fn dense(&self, n: usize) -> Vec<F> {
        let mut v = vec![F::zero(); n];
        for t in &self.terms {
            v[t.branch] = t.coeff.clone();
        }
        v
    }
}

/// The closure of a set of generators, truncated at a degree cap.
#[derive(Clone, Debug, PartialEq)]
pub struct BranchAlgebra<F> {
    signature: Signature,
    generators: Vec<MonomialVector<F>>,
    high_order_from: Option<i64>,
    degree_cap: i64,
    graded: Vec<RowSpace<F>>,
}

/// Degree cap large enough for level-`level` spectra and the conductor window.
pub fn default_cap(sig: &Signature, level: i64) -> i64 {
    let window = 2 * (sig.max_order() + 2) - 1;
    let reach = sig.weights().iter().map(|a| a * window).max().unwrap_or(0);
    (level.max(2) * sig.ell()).max(reach)
}

impl<F: Field> BranchAlgebra<F> {
    /// Closes `generators` under multiplication in every degree up to `cap`.
    pub fn close(sig: &Signature, generators: Vec<MonomialVector<F>>, cap: i64) -> Result<Self> {
        Self::close_with(sig, generators, cap, None)
    }

    /// As [`close`](Self::close), additionally adjoining every pure monomial
    /// `t_i^e` with `e >= high_order_from`.
    pub fn close_with(
        sig: &Signature,
        generators: Vec<MonomialVector<F>>,
        cap: i64,
        high_order_from: Option<i64>,
    ) -> Result<Self> {
        if cap < 2 * sig.ell() {
            return Err(Error::InvalidInput(format!(
                "degree cap {cap} is below 2*ell = {}",
                2 * sig.ell()
            )));
        }
        let n = sig.len();
        let mut products: Vec<(i64, Vec<F>)> = generators
            .iter()
            .filter(|g| g.degree() <= cap)
            .map(|g| (g.degree(), g.dense(n)))
            .collect();
        if let Some(from) = high_order_from {
            if from < 1 {
                return Err(Error::InvalidInput(
                    "high-order bound must be positive".into(),
                ));
            }
            for (i, &a) in sig.weights().iter().enumerate() {
                for e in from..2 * from {
                    if a * e <= cap {
                        products.push((a * e, unit(n, i)));
                    }
                }
            }
        }
        let mut graded = Vec::with_capacity(cap as usize + 1);
        graded.push(RowSpace::from_vectors(n, [vec![F::one(); n]]));
        for k in 1..=cap {
            let mut space = RowSpace::new(n);
            for (d, g) in &products {
                if *d <= k {
                    for row in graded[(k - d) as usize].rows() {
                        space.insert(hadamard(g, row));
                    }
                }
            }
            graded.push(space);
        }
        Ok(Self {
            signature: sig.clone(),
            generators,
            high_order_from,
            degree_cap: cap,
            graded,
        })
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn generators(&self) -> &[MonomialVector<F>] {
        &self.generators
    }

    pub fn high_order_from(&self) -> Option<i64> {
        self.high_order_from
    }

    pub fn degree_cap(&self) -> i64 {
        self.degree_cap
    }

    pub fn branches(&self) -> usize {
        self.signature.len()
    }

    /// The degree-`k` piece. Fails beyond the cap.
    pub fn graded(&self, k: i64) -> Result<&RowSpace<F>> {
        if k < 0 {
            return Err(Error::InvalidInput(format!("negative degree {k}")));
        }
        self.graded.get(k as usize).ok_or(Error::DegreeCapExceeded {
            requested: k,
            cap: self.degree_cap,
        })
    }

    pub fn dim(&self, k: i64) -> Result<usize> {
        Ok(self.graded(k)?.rank())
    }

    pub fn graded_dims(&self, upto: i64) -> Result<Vec<usize>> {
        (0..=upto).map(|k| self.dim(k)).collect()
    }

    /// Branches on which degree `k` is realized by an integral exponent.
    pub fn branches_in_degree(&self, k: i64) -> Vec<usize> {
        self.signature
            .weights()
            .iter()
            .enumerate()
            .filter(|(_, &a)| k % a == 0)
            .map(|(i, _)| i)
            .collect()
    }

    /// `max_i m_i + 2`, the order from which every monomial must lie in the ring.
    pub fn order_bound(&self) -> i64 {
        self.signature.max_order() + 2
    }

    pub fn contains_pure(&self, branch: usize, exponent: i64) -> Result<bool> {
        let k = exponent * self.signature.weights()[branch];
        Ok(self.graded(k)?.contains(&unit(self.branches(), branch)))
    }

    /// `alpha_j` for `j = 1..=max(m_i)+2`.
    pub fn gap_sequence(&self) -> Result<Vec<usize>> {
        let n = self.branches();
        let weights = self.signature.weights();
        let mut distinct: Vec<i64> = weights.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        (1..=self.order_bound())
            .map(|j| {
                let mut leading = RowSpace::new(n);
                for &a in &distinct {
                    let k = j * a;
                    let exact: Vec<usize> = (0..n).filter(|&i| weights[i] == a).collect();
                    let lower: Vec<usize> = (0..n)
                        .filter(|&i| weights[i] > a && k % weights[i] == 0)
                        .collect();
                    let piece = self.graded(k)?.vanishing_on(&lower).project(&exact);
                    for row in piece.rows() {
                        leading.insert(row.clone());
                    }
                }
                Ok(n - leading.rank())
            })
            .collect()
    }

    /// `(delta, genus)` from the gap sequence.
    pub fn delta_and_genus(&self) -> Result<(i64, i64)> {
        let g: i64 = self.gap_sequence()?.iter().map(|&a| a as i64).sum();
        let n = self.branches() as i64;
        Ok((n - 1 + g, g))
    }

    /// `delta` counted degree by degree as the codimension of `R_k` in the normalization.
    pub fn delta_by_degrees(&self) -> Result<i64> {
        self.check_high_order()?;
        let top = self
            .signature
            .weights()
            .iter()
            .map(|a| a * (self.order_bound() - 1))
            .max()
            .unwrap_or(0);
        let mut total = 0i64;
        for k in 0..=top {
            total += self.branches_in_degree(k).len() as i64 - self.dim(k)? as i64;
        }
        Ok(total)
    }

    fn check_high_order(&self) -> Result<()> {
        let bound = self.order_bound();
        for branch in 0..self.branches() {
            for e in bound..2 * bound {
                if !self.contains_pure(branch, e)? {
                    return Err(Error::ConductorBoundViolated {
                        branch: branch + 1,
                        bound,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn conductor_and_gorenstein(&self) -> Result<ConductorReport> {
        self.check_high_order()?;
        let bound = self.order_bound();
        let mut conductor = Vec::with_capacity(self.branches());
        for branch in 0..self.branches() {
            let mut c = bound;
            while c > 0 && self.contains_pure(branch, c - 1)? {
                c -= 1;
            }
            conductor.push(c);
        }
        let weights = self.signature.weights();
        let top = weights
            .iter()
            .zip(&conductor)
            .map(|(a, c)| a * c)
            .max()
            .unwrap_or(0);
        let mut colength = 0i64;
        for k in 0..=top {
            let in_conductor = self
                .branches_in_degree(k)
                .iter()
                .filter(|&&i| k >= weights[i] * conductor[i])
                .count() as i64;
            colength += self.dim(k)? as i64 - in_conductor;
        }
        let (delta, _) = self.delta_and_genus()?;
        Ok(ConductorReport {
            conductor,
            colength,
            delta,
            gorenstein: colength == delta,
        })
    }

    /// Sections of `sum_i c_i y_i`: the part of `R_k` vanishing on branch `i` whenever `k > a_i c_i`.
    pub fn section_space(&self, divisor: &[i64]) -> Result<SectionSpace> {
        let n = self.branches();
        if divisor.len() != n {
            return Err(Error::DivisorLength {
                expected: n,
                got: divisor.len(),
            });
        }
        let weights = self.signature.weights();
        let top = weights
            .iter()
            .zip(divisor)
            .map(|(a, c)| a * c)
            .max()
            .unwrap_or(0)
            .max(0);
        let mut by_degree = Vec::new();
        for k in 0..=top {
            let excluded: Vec<usize> = self
                .branches_in_degree(k)
                .into_iter()
                .filter(|&i| k > weights[i] * divisor[i])
                .collect();
            let dim = self.graded(k)?.vanishing_on(&excluded).rank();
            if dim > 0 {
                by_degree.push((k, dim));
            }
        }
        let dimension = by_degree.iter().map(|(_, d)| d).sum();
        Ok(SectionSpace {
            dimension,
            by_degree,
        })
    }

    /// Parity of the sections of `sum_i (m_i / 2) y_i`, when every order is even.
    pub fn spin_parity(&self) -> Result<Option<Parity>> {
        if !self.signature.all_even() {
            return Ok(None);
        }
        let half: Vec<i64> = self.signature.orders().iter().map(|m| m / 2).collect();
        let dim = self.section_space(&half)?.dimension;
        Ok(Some(if dim % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }))
    }

    pub fn validate_g_conditions(&self, units: &[F]) -> Result<GReport> {
        let n = self.branches();
        if units.len() != n || units.iter().any(Zero::is_zero) {
            return Err(Error::InvalidInput(format!(
                "need {n} nonzero dualizing units"
            )));
        }
        let weights = self.signature.weights();
        let mut no_bare_parameter = true;
        for (i, &a) in weights.iter().enumerate() {
            if self.graded(a)?.contains(&unit(n, i)) {
                no_bare_parameter = false;
            }
        }
        let high_order = match self.check_high_order() {
            Ok(()) => true,
            Err(Error::ConductorBoundViolated { .. }) => false,
            Err(e) => return Err(e),
        };
        let top = self.graded(self.signature.ell())?;
        let mut dualizing = true;
        for i in 0..n {
            for j in i + 1..n {
                let mut v = vec![F::zero(); n];
                v[i] = units[j].clone();
                v[j] = -units[i].clone();
                if !top.contains(&v) {
                    dualizing = false;
                }
            }
        }
        let gaps = self.gap_sequence()?;
        let last = (self.signature.max_order() + 1) as usize;
        let final_gap = gaps.get(last - 1) == Some(&1) && gaps[last..].iter().all(|&a| a == 0);
        Ok(GReport {
            no_bare_parameter,
            homogeneous: true,
            high_order,
            dualizing,
            final_gap,
        })
    }

    /// Generator degrees followed by the hyperplane weight 1.
    pub fn ambient_weights(&self) -> Vec<i64> {
        self.generators
            .iter()
            .map(|g| g.degree())
            .chain([1])
            .collect()
    }

    pub fn report(&self) -> Result<AlgebraReport> {
        let (delta, genus) = self.delta_and_genus()?;
        let cond = self.conductor_and_gorenstein()?;
        Ok(AlgebraReport {
            delta,
            genus,
            gap_sequence: trim_gaps(&self.gap_sequence()?),
            conductor: cond.conductor,
            gorenstein: cond.gorenstein,
            graded_dims: self.graded_dims(self.degree_cap.min(2 * self.signature.ell()))?,
        })
    }
}

fn hadamard<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            if x.is_zero() || y.is_zero() {
                F::zero()
            } else {
                x.clone() * y.clone()
            }
        })
        .collect()
}

/// Drops trailing zeros of a gap sequence.
pub fn trim_gaps(gaps: &[usize]) -> Vec<usize> {
    let end = gaps.iter().rposition(|&a| a != 0).map_or(0, |p| p + 1);
    gaps[..end].to_vec()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConductorReport {
    pub conductor: Vec<i64>,
    pub colength: i64,
    pub delta: i64,
    pub gorenstein: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionSpace {
    pub dimension: usize,
    /// `(degree, dimension)` for every degree with a nonzero contribution.
    pub by_degree: Vec<(i64, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Parity::Odd => "odd",
            Parity::Even => "even",
        })
    }
}

/// Outcome of the five structural checks on a branch algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GReport {
    /// No `t_i` alone lies in the ring.
    pub no_bare_parameter: bool,
    /// Generators are homogeneous (enforced at construction).
    pub homogeneous: bool,
    /// Every monomial of order at least `max m_i + 2` lies in the ring.
    pub high_order: bool,
    /// `u_j t_i^(m_i+1) - u_i t_j^(m_j+1)` lies in the ring for all pairs.
    pub dualizing: bool,
    /// The gap sequence ends with a single 1 at index `max(m_i + 1)`.
    pub final_gap: bool,
}

impl GReport {
    pub fn all_pass(&self) -> bool {
        self.no_bare_parameter
            && self.homogeneous
            && self.high_order
            && self.dualizing
            && self.final_gap
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraReport {
    pub delta: i64,
    pub genus: i64,
    pub gap_sequence: Vec<usize>,
    pub conductor: Vec<i64>,
    pub gorenstein: bool,
    pub graded_dims: Vec<usize>,
}

/// A monomial in the input format (branch is 1-based).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialSpec {
    pub branch: usize,
    pub exp: i64,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub name: String,
    pub monomials: Vec<MonomialSpec>,
}

/// Input document describing a branch algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraInput {
    pub signature: Vec<i64>,
    pub generators: Vec<GeneratorSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dualizing_units: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub high_order_from: Option<i64>,
}

/// An input document resolved against the canonical (non-increasing) branch order.
#[derive(Clone, Debug)]
pub struct ResolvedInput {
    pub signature: Signature,
    pub generators: Vec<MonomialVector<Rational>>,
    pub units: Option<Vec<Rational>>,
    pub high_order_from: Option<i64>,
}

impl AlgebraInput {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))
    }

    /// Validates the document and renumbers branches so the orders are non-increasing.
    pub fn resolve(&self) -> Result<ResolvedInput> {
        let signature = Signature::derive(&self.signature)?;
        let n = self.signature.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| self.signature[b].cmp(&self.signature[a]));
        let mut new_index = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new;
        }
        let generators = self
            .generators
            .iter()
            .map(|g| {
                let terms = g
                    .monomials
                    .iter()
                    .map(|m| {
                        if m.branch == 0 || m.branch > n {
                            return Err(Error::BadGenerator {
                                name: g.name.clone(),
                                reason: format!("branch {} out of range 1..={n}", m.branch),
                            });
                        }
                        Ok(Term {
                            branch: new_index[m.branch - 1],
                            exponent: m.exp,
                            coeff: parse_rational(&m.coeff)?,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                MonomialVector::new(&signature, &g.name, terms)
            })
            .collect::<Result<Vec<_>>>()?;
        let units = match &self.dualizing_units {
            None => None,
            Some(u) if u.len() != n => {
                return Err(Error::InvalidInput(format!(
                    "expected {n} dualizing units, got {}",
                    u.len()
                )))
            }
            Some(u) => {
                let parsed = u
                    .iter()
                    .map(|s| parse_rational(s))
                    .collect::<Result<Vec<_>>>()?;
                Some(order.iter().map(|&old| parsed[old].clone()).collect())
            }
        };
        Ok(ResolvedInput {
            signature,
            generators,
            units,
            high_order_from: self.high_order_from,
        })
    }
}

impl ResolvedInput {
    pub fn close(&self, level: i64) -> Result<BranchAlgebra<Rational>> {
        BranchAlgebra::close_with(
            &self.signature,
            self.generators.clone(),
            default_cap(&self.signature, level),
            self.high_order_from,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e7() -> BranchAlgebra<Rational> {
        let input = AlgebraInput::from_json(
            r#"{"signature":[3,1],"generators":[
                {"name":"x","monomials":[{"branch":1,"exp":2,"coeff":"1"},{"branch":2,"exp":1,"coeff":"1"}]},
                {"name":"y","monomials":[{"branch":1,"exp":3,"coeff":"1"}]}],
                "dualizing_units":["1","-1"]}"#,
        )
        .unwrap();
        input.resolve().unwrap().close(2).unwrap()
    }

    #[test]
    fn e7_graded_dims() {
        assert_eq!(
            e7().graded_dims(8).unwrap(),
            vec![1, 0, 1, 1, 1, 1, 2, 1, 2]
        );
    }

    #[test]
    fn e7_invariants() {
        let alg = e7();
        assert_eq!(trim_gaps(&alg.gap_sequence().unwrap()), vec![1, 1, 0, 1]);
        assert_eq!(alg.delta_and_genus().unwrap(), (4, 3));
        assert_eq!(alg.delta_by_degrees().unwrap(), 4);
        let c = alg.conductor_and_gorenstein().unwrap();
        assert_eq!(
            (c.conductor.clone(), c.colength, c.gorenstein),
            (vec![5, 3], 4, true)
        );
        assert_eq!(alg.ambient_weights(), vec![2, 3, 1]);
    }

    #[test]
    fn e7_g_conditions() {
        let alg = e7();
        let units = [
            Rational::from_integer(1.into()),
            Rational::from_integer((-1).into()),
        ];
        assert!(alg.validate_g_conditions(&units).unwrap().all_pass());
        let wrong = [
            Rational::from_integer(1.into()),
            Rational::from_integer(1.into()),
        ];
        assert!(!alg.validate_g_conditions(&wrong).unwrap().dualizing);
    }

    #[test]
    fn unsorted_input_is_reordered() {
        let input = AlgebraInput::from_json(
            r#"{"signature":[1,3],"generators":[
                {"name":"x","monomials":[{"branch":2,"exp":2,"coeff":"1"},{"branch":1,"exp":1,"coeff":"1"}]},
                {"name":"y","monomials":[{"branch":2,"exp":3,"coeff":"1"}]}]}"#,
        )
        .unwrap();
        let alg = input.resolve().unwrap().close(2).unwrap();
        assert_eq!(alg, e7());
    }

    #[test]
    fn rejects_bad_generators() {
        let sig = Signature::derive(&[3, 1]).unwrap();
        let t = |branch, exponent| Term {
            branch,
            exponent,
            coeff: Rational::from_integer(1.into()),
        };
        assert!(MonomialVector::new(&sig, "x", vec![t(0, 2), t(1, 2)]).is_err());
        assert!(MonomialVector::new(&sig, "x", vec![t(0, 2), t(0, 2)]).is_err());
        assert!(MonomialVector::<Rational>::new(&sig, "x", vec![]).is_err());
        assert!(AlgebraInput::from_json("{\"signature\": [3,1],\n \"generators\": 5}").is_err());
    }

    #[test]
    fn bare_parameter_fails_first_condition() {
        let sig = Signature::derive(&[0, 0]).unwrap();
        let t = MonomialVector::pure(&sig, 0, 1).unwrap();
        let alg = BranchAlgebra::<Rational>::close(&sig, vec![t], 4).unwrap();
        let units = [
            Rational::from_integer(1.into()),
            Rational::from_integer((-1).into()),
        ];
        assert!(!alg.validate_g_conditions(&units).unwrap().no_bare_parameter);
    }

    #[test]
    fn constants_only() {
        let sig = Signature::derive(&[3, 1]).unwrap();
        let alg = BranchAlgebra::<Rational>::close(&sig, vec![], 8).unwrap();
        assert_eq!(alg.dim(0).unwrap(), 1);
        assert!((1..=8).all(|k| alg.dim(k).unwrap() == 0));
        assert!(alg.conductor_and_gorenstein().is_err());
        assert_eq!(alg.section_space(&[0, 0]).unwrap().dimension, 1);
    }

    #[test]
    fn section_space_trivial_divisor() {
        assert_eq!(e7().section_space(&[0, 0]).unwrap().dimension, 1);
        assert_eq!(e7().section_space(&[-1, 0]).unwrap().dimension, 0);
    }
}
