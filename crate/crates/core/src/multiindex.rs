//! Multi-indices of partial derivatives and monomial exponents.

use num_bigint::BigInt;
use num_traits::One;
use std::cmp::Ordering;

/// Exponent vector of a monomial / order vector of a partial derivative.
///
/// The ordering is graded lexicographic: total order first, then
/// lexicographic on the exponents. This is the canonical monomial order
/// used for printing and term storage.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn zero(dim: usize) -> Self {
        MultiIndex(vec![0; dim])
    }

    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut e = vec![0; dim];
        e[axis] = 1;
        MultiIndex(e)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// |alpha|, the total order.
    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.dim(), other.dim());
        MultiIndex(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// alpha! as an exact integer.
    pub fn factorial(&self) -> BigInt {
        let mut acc = BigInt::one();
        for &e in &self.0 {
            for k in 2..=e {
                acc *= BigInt::from(k);
            }
        }
        acc
    }

    /// Pads with zero exponents up to `dim`.
    pub fn promote(&self, dim: usize) -> MultiIndex {
        debug_assert!(dim >= self.dim());
        let mut e = self.0.clone();
        e.resize(dim, 0);
        MultiIndex(e)
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All multi-indices of dimension `dim` with total order <= `max_order`,
/// in graded lexicographic order.
pub fn indices_up_to(dim: usize, max_order: u32) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; dim];
    for total in 0..=max_order {
        emit(dim, total, 0, &mut cur, &mut out);
    }
    out
}

fn emit(dim: usize, remaining: u32, axis: usize, cur: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
    if axis + 1 == dim {
        cur[axis] = remaining;
        out.push(MultiIndex(cur.clone()));
        cur[axis] = 0;
        return;
    }
    for e in (0..=remaining).rev() {
        cur[axis] = e;
        emit(dim, remaining - e, axis + 1, cur, out);
    }
    cur[axis] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let a = MultiIndex(vec![1, 1]); // degree 2
        let b = MultiIndex(vec![0, 3]); // degree 3
        let c = MultiIndex(vec![2, 1]); // degree 3
        assert!(a < b);
        assert!(b < c); // same degree, lex on exponents
    }

    #[test]
    fn enumeration_counts() {
        // #{alpha in N^d : |alpha| <= m} = C(m + d, d)
        assert_eq!(indices_up_to(2, 3).len(), 10);
        assert_eq!(indices_up_to(3, 2).len(), 10);
        let all = indices_up_to(2, 2);
        assert_eq!(all.first().unwrap(), &MultiIndex::zero(2));
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn factorial() {
        assert_eq!(MultiIndex(vec![3, 2]).factorial(), BigInt::from(12));
        assert_eq!(MultiIndex::zero(4).factorial(), BigInt::one());
    }
}
