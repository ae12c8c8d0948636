//! Zero-order tuples and everything derived from them alone.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A tuple of zero orders, stored non-increasing, with its derived data.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Signature {
    orders: Vec<i64>,
    genus: i64,
    ell: i64,
    weights: Vec<i64>,
}

impl Signature {
    /// Sorts `orders` non-increasingly and derives genus, `ell` and the branch weights.
    pub fn derive(orders: &[i64]) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::EmptySignature);
        }
        if let Some(&m) = orders.iter().find(|&&m| m < 0) {
            return Err(Error::NegativeOrder(m));
        }
        let total = orders
            .iter()
            .try_fold(0i64, |acc, &m| acc.checked_add(m))
            .ok_or(Error::EllOverflow)?;
        if total % 2 != 0 {
            return Err(Error::OddOrderSum(total));
        }
        let mut sorted = orders.to_vec();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        let mut ell: i64 = 1;
        for &m in &sorted {
            let step = m.checked_add(1).ok_or(Error::EllOverflow)?;
            let g = ell.gcd(&step);
            ell = (ell / g).checked_mul(step).ok_or(Error::EllOverflow)?;
        }
        let weights = sorted.iter().map(|&m| ell / (m + 1)).collect();
        Ok(Self {
            genus: total / 2 + 1,
            orders: sorted,
            ell,
            weights,
        })
    }

    /// Parses a comma-separated list such as `3,1`.
    pub fn parse(text: &str) -> Result<Self> {
        let orders = text
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("`{t}` is not an integer")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::derive(&orders)
    }

    pub fn orders(&self) -> &[i64] {
        &self.orders
    }

    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn genus(&self) -> i64 {
        self.genus
    }

    pub fn ell(&self) -> i64 {
        self.ell
    }

    /// Branch weights `a_i = ell / (m_i + 1)`.
    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn max_order(&self) -> i64 {
        self.orders[0]
    }

    /// Degree of the log-canonical divisor class, `2g - 2 + n`.
    pub fn log_degree(&self) -> i64 {
        2 * self.genus - 2 + self.orders.len() as i64
    }

    /// `ceil(lambda / a_i)` for every branch.
    pub fn ladder(&self, lambda: i64) -> Vec<i64> {
        self.weights.iter().map(|&a| ceil_div(lambda, a)).collect()
    }

    /// Sum over `lambda = 1..=ell` of the ladder entry of branch `i`.
    pub fn ladder_sum(&self, i: usize) -> i64 {
        let a = self.weights[i];
        (1..=self.ell).map(|l| ceil_div(l, a)).sum()
    }

    /// The divisor `m * omega_log - sum_i ceil(lambda / a_i) p_i` on the marked points.
    pub fn filtration_divisor(&self, m: i64, lambda: i64) -> Vec<i64> {
        self.orders
            .iter()
            .zip(self.ladder(lambda))
            .map(|(&o, l)| m * (o + 1) - l)
            .collect()
    }

    /// Signature with `k` extra zero entries.
    pub fn with_zeros(&self, k: usize) -> Self {
        let mut orders = self.orders.clone();
        orders.extend(std::iter::repeat_n(0, k));
        Self::derive(&orders).expect("appending zeros keeps a valid signature")
    }

    /// The positive entries only.
    pub fn core(&self) -> Vec<i64> {
        self.orders.iter().copied().filter(|&m| m > 0).collect()
    }

    pub fn zero_count(&self) -> usize {
        self.orders.iter().filter(|&&m| m == 0).count()
    }

    pub fn all_even(&self) -> bool {
        self.orders.iter().all(|m| m % 2 == 0)
    }
}

impl std::fmt::Display for Signature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.orders.iter().map(|m| m.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl TryFrom<Vec<i64>> for Signature {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        Self::derive(&v)
    }
}

impl From<Signature> for Vec<i64> {
    fn from(s: Signature) -> Self {
        s.orders
    }
}

pub fn ceil_div(a: i64, b: i64) -> i64 {
    Integer::div_ceil(&a, &b)
}

/// Counts `lambda` in `1..=k1*k2` for which `ceil(lambda/k2) + ceil(lambda/k1)` is even.
pub fn parity_count(k1: i64, k2: i64) -> Result<i64> {
    if k1 <= k2 || k2 < 1 {
        return Err(Error::InvalidInput(format!(
            "parity count needs k1 > k2 >= 1, got ({k1}, {k2})"
        )));
    }
    if k1.gcd(&k2) != 1 {
        return Err(Error::NotCoprime(k1, k2));
    }
    Ok((1..=k1 * k2)
        .filter(|&l| (ceil_div(l, k2) + ceil_div(l, k1)) % 2 == 0)
        .count() as i64)
}

/// Closed form of [`parity_count`]: `(k1 k2 + 1)/2` if both are odd, `k1 k2 / 2` otherwise.
pub fn parity_count_closed(k1: i64, k2: i64) -> Result<i64> {
    if k1 <= k2 || k2 < 1 {
        return Err(Error::InvalidInput(format!(
            "parity count needs k1 > k2 >= 1, got ({k1}, {k2})"
        )));
    }
    if k1.gcd(&k2) != 1 {
        return Err(Error::NotCoprime(k1, k2));
    }
    let p = k1 * k2;
    Ok(if p % 2 == 1 { (p + 1) / 2 } else { p / 2 })
}

/// Number of `lambda` in `lo..=hi` with `sum_i (ceil(lambda/a_i) - 1)` even.
pub fn n_plus(sig: &Signature, lo: i64, hi: i64) -> i64 {
    (lo..=hi)
        .filter(|&l| sig.ladder(l).iter().map(|x| x - 1).sum::<i64>() % 2 == 0)
        .count() as i64
}

/// Number of `lambda` in `1..=ell` for which the ladder entry of branch `i` is even.
pub fn branch_n_plus(sig: &Signature, i: usize) -> i64 {
    let a = sig.weights()[i];
    (1..=sig.ell()).filter(|&l| ceil_div(l, a) % 2 == 0).count() as i64
}

/// All signatures of genus `g` with at most `n_max` entries.
///
/// Order: positive parts in lexicographically descending order, and for each
/// positive part the variants with 0, 1, 2, ... appended zeros.
pub fn enumerate_signatures(g: i64, n_max: usize, zeros_allowed: bool) -> Vec<Signature> {
    let total = 2 * g - 2;
    let mut parts = Vec::new();
    partitions(total, total, n_max, &mut Vec::new(), &mut parts);
    let mut out = Vec::new();
    for p in parts {
        let extra = if zeros_allowed { n_max - p.len() } else { 0 };
        for z in 0..=extra {
            let mut orders = p.clone();
            orders.extend(std::iter::repeat_n(0, z));
            if orders.is_empty() {
                continue;
            }
            out.push(Signature::derive(&orders).expect("partitions of 2g-2 are valid"));
        }
    }
    out
}

fn partitions(rest: i64, max_part: i64, slots: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if rest == 0 {
        out.push(cur.clone());
        return;
    }
    if slots == 0 {
        return;
    }
    for part in (1..=max_part.min(rest)).rev() {
        cur.push(part);
        partitions(rest - part, part, slots - 1, cur, out);
        cur.pop();
    }
}
