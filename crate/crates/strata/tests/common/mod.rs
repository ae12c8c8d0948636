//! Brute-force reference computations shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use strata::branch_algebra::AlgebraInput;
use strata::signature::Signature;

pub type Q = BigRational;

/// Rank of a list of rational vectors by plain Gaussian elimination.
pub fn rank(rows: &[Vec<Q>]) -> usize {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone() / pivot.clone();
                let pivot_row = m[r].clone();
                for (x, y) in m[i][c..cols].iter_mut().zip(&pivot_row[c..cols]) {
                    *x -= y.clone() * f.clone();
                }
            }
        }
        r += 1;
    }
    r
}

fn normalize(v: Vec<Q>) -> Option<Vec<Q>> {
    let lead = v.iter().find(|x| !x.is_zero())?.clone();
    Some(v.into_iter().map(|x| x / lead.clone()).collect())
}

/// Every degree-`k` product of generators, as a set of normalized vectors, for `k <= cap`.
pub struct OracleAlgebra {
    pub weights: Vec<i64>,
    pub ell: i64,
    pub cap: i64,
    pub products: Vec<BTreeSet<Vec<Q>>>,
}

impl OracleAlgebra {
    pub fn build(
        sig: &Signature,
        gens: &[(i64, Vec<Q>)],
        high_order_from: Option<i64>,
        cap: i64,
    ) -> Self {
        let n = sig.len();
        let mut all: Vec<(i64, Vec<Q>)> = gens.to_vec();
        if let Some(s) = high_order_from {
            for (i, &a) in sig.weights().iter().enumerate() {
                for e in s..2 * s {
                    let mut v = vec![Q::zero(); n];
                    v[i] = Q::one();
                    all.push((a * e, v));
                }
            }
        }
        let mut products: Vec<BTreeSet<Vec<Q>>> = vec![BTreeSet::new(); cap as usize + 1];
        products[0].insert(vec![Q::one(); n]);
        for k in 1..=cap {
            let mut here = BTreeSet::new();
            for (d, g) in &all {
                if *d > k {
                    continue;
                }
                for prev in &products[(k - d) as usize] {
                    let v: Vec<Q> = g
                        .iter()
                        .zip(prev)
                        .map(|(a, b)| a.clone() * b.clone())
                        .collect();
                    if let Some(v) = normalize(v) {
                        here.insert(v);
                    }
                }
            }
            products[k as usize] = here;
        }
        Self {
            weights: sig.weights().to_vec(),
            ell: sig.ell(),
            cap,
            products,
        }
    }

    pub fn from_input(input: &AlgebraInput, cap: i64) -> Self {
        let r = input.resolve().expect("valid input");
        let n = r.signature.len();
        let gens: Vec<(i64, Vec<Q>)> = r
            .generators
            .iter()
            .map(|g| (g.degree(), g.dense(n)))
            .collect();
        Self::build(&r.signature, &gens, r.high_order_from, cap)
    }

    pub fn dim(&self, k: i64) -> usize {
        let rows: Vec<Vec<Q>> = self.products[k as usize].iter().cloned().collect();
        rank(&rows)
    }

    fn in_degree(&self, k: i64) -> Vec<usize> {
        (0..self.weights.len())
            .filter(|&i| k % self.weights[i] == 0)
            .collect()
    }

    /// Rank of the projection of `R_{<=cap}` onto the coordinates `t_i^e` with `e <= j`.
    fn leading_rank(&self, j: i64) -> usize {
        (0..=self.cap)
            .map(|k| {
                let keep: Vec<usize> = self
                    .in_degree(k)
                    .into_iter()
                    .filter(|&i| k <= j * self.weights[i])
                    .collect();
                let rows: Vec<Vec<Q>> = self.products[k as usize]
                    .iter()
                    .map(|v| keep.iter().map(|&i| v[i].clone()).collect())
                    .collect();
                if keep.is_empty() {
                    0
                } else {
                    rank(&rows)
                }
            })
            .sum()
    }

    /// `alpha_j = n - (rank P_{<=j} - rank P_{<=j-1})` for `j = 1..=upto`.
    pub fn gap_sequence(&self, upto: i64) -> Vec<usize> {
        let n = self.weights.len();
        let ranks: Vec<usize> = (0..=upto).map(|j| self.leading_rank(j)).collect();
        (1..=upto as usize)
            .map(|j| n - (ranks[j] - ranks[j - 1]))
            .collect()
    }

    /// Codimension of `R` in the normalization, counted up to degree `top`.
    pub fn delta(&self, top: i64) -> i64 {
        (0..=top)
            .map(|k| self.in_degree(k).len() as i64 - self.dim(k) as i64)
            .sum()
    }

    /// `sum_{k <= m ell} (m ell - k) dim R_k`.
    pub fn chi(&self, m: i64) -> BigInt {
        let top = m * self.ell;
        (0..=top)
            .map(|k| BigInt::from((top - k) * self.dim(k) as i64))
            .sum()
    }
}

/// Trailing zeros removed.
pub fn trim(v: &[usize]) -> Vec<usize> {
    let end = v.iter().rposition(|&a| a != 0).map_or(0, |p| p + 1);
    v[..end].to_vec()
}

pub fn q(v: i64) -> Q {
    Q::from_integer(v.into())
}

/// Cap large enough for level-2 characters and gap sequences up to `max(m)+2`.
pub fn oracle_cap(sig: &Signature) -> i64 {
    let bound = sig.max_order() + 2;
    let reach = sig.weights().iter().max().unwrap() * bound;
    (2 * sig.ell()).max(reach)
}
