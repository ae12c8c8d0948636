//! Subspaces of `F^n` kept in reduced row-echelon form.
//!
//! Pivots are the lowest nonzero column of each row, so the stored basis is a
//! canonical form: two spans are equal exactly when their bases are equal.

use num_traits::Zero;

use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct RowSpace<F> {
    ambient: usize,
    rows: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> RowSpace<F> {
    pub fn new(ambient: usize) -> Self {
        Self {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_vectors<I: IntoIterator<Item = Vec<F>>>(ambient: usize, vectors: I) -> Self {
        let mut space = Self::new(ambient);
        for v in vectors {
            space.insert(v);
        }
        space
    }

    /// The whole of `F^n`.
    pub fn full(ambient: usize) -> Self {
        Self::from_vectors(ambient, (0..ambient).map(|i| unit(ambient, i)))
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Vec<F>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Subtracts multiples of the basis rows to clear every pivot column of `v`.
    pub fn reduce(&self, mut v: Vec<F>) -> Vec<F> {
        assert_eq!(
            v.len(),
            self.ambient,
            "vector length must match the ambient dimension"
        );
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let factor = v[p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x = x.clone() - factor.clone() * r.clone();
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.reduce(v.to_vec()).iter().all(Zero::is_zero)
    }

    /// Adds `v` to the span. Returns whether the rank grew.
    pub fn insert(&mut self, v: Vec<F>) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].clone().inv();
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = x.clone() * inv.clone();
            }
        }
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let factor = row[p].clone();
                for (x, y) in row.iter_mut().zip(&v) {
                    if !y.is_zero() {
                        *x = x.clone() - factor.clone() * y.clone();
                    }
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(at, v);
        self.pivots.insert(at, p);
        true
    }

    /// The subspace of vectors whose entries vanish on every column in `cols`.
    pub fn vanishing_on(&self, cols: &[usize]) -> Self {
        if cols.is_empty() {
            return self.clone();
        }
        // Reduce with the constrained columns ordered first: rows whose pivot
        // lies outside them are exactly a basis of the vanishing subspace.
        let mut order: Vec<usize> = cols.to_vec();
        order.sort_unstable();
        order.dedup();
        let head = order.len();
        order.extend((0..self.ambient).filter(|c| !cols.contains(c)));
        let permuted = Self::from_vectors(
            self.ambient,
            self.rows
                .iter()
                .map(|r| order.iter().map(|&c| r[c].clone()).collect()),
        );
        let mut result = Self::new(self.ambient);
        for (row, &p) in permuted.rows.iter().zip(&permuted.pivots) {
            if p >= head {
                let mut original = vec![F::zero(); self.ambient];
                for (pos, &c) in order.iter().enumerate() {
                    original[c] = row[pos].clone();
                }
                result.insert(original);
            }
        }
        result
    }

    /// Span of the basis vectors with every column outside `cols` zeroed.
    pub fn project(&self, cols: &[usize]) -> Self {
        Self::from_vectors(
            self.ambient,
            self.rows.iter().map(|r| {
                r.iter()
                    .enumerate()
                    .map(|(c, x)| {
                        if cols.contains(&c) {
                            x.clone()
                        } else {
                            F::zero()
                        }
                    })
                    .collect()
            }),
        )
    }
}

pub fn unit<F: Field>(n: usize, i: usize) -> Vec<F> {
    let mut v = vec![F::zero(); n];
    v[i] = F::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    type Q = Ratio<i64>;

    fn q(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| Q::from_integer(x)).collect()
    }

    #[test]
    fn canonical_form_is_independent_of_insertion_order() {
        let a = RowSpace::from_vectors(3, vec![q(&[1, 2, 3]), q(&[0, 1, 1])]);
        let b = RowSpace::from_vectors(3, vec![q(&[1, 3, 4]), q(&[2, 4, 6])]);
        assert_eq!(a, b);
        assert_eq!(a.rank(), 2);
        assert_eq!(a.pivots(), &[0, 1]);
        assert!(a.contains(&q(&[3, 7, 10])));
        assert!(!a.contains(&q(&[0, 0, 1])));
    }

    #[test]
    fn vanishing_subspace() {
        let s = RowSpace::from_vectors(3, vec![q(&[1, 1, 0]), q(&[1, -1, 1])]);
        let v = s.vanishing_on(&[0]);
        assert_eq!(v.rank(), 1);
        assert!(v.contains(&q(&[0, 2, -1])));
        assert_eq!(s.vanishing_on(&[0, 1, 2]).rank(), 0);
        assert_eq!(s.project(&[2]).rank(), 1);
    }

    #[test]
    fn full_space() {
        let f = RowSpace::<Q>::full(4);
        assert_eq!(f.rank(), 4);
        assert!(f.contains(&q(&[5, -1, 2, 9])));
    }
}
