//! Dense univariate polynomials over the rationals and Sturm chains.
//!
//! Used to certify positivity of a univariate polynomial on the whole real
//! line: zero sign variations between -infinity and +infinity means no real
//! roots, and a positive sample value then pins the sign everywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Coefficients in ascending powers; trailing zeros are stripped, the zero
/// polynomial is the empty vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    pub coeffs: Vec<BigRational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    /// Remainder of self divided by `divisor` (euclidean division).
    pub fn rem(&self, divisor: &Self) -> Self {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead = divisor.leading().unwrap().clone();
        let mut r = self.coeffs.clone();
        while r.len() > dd {
            let k = r.len() - 1;
            let factor = r[k].clone() / &lead;
            if !factor.is_zero() {
                for i in 0..=dd {
                    let idx = k - dd + i;
                    let sub = &factor * &divisor.coeffs[i];
                    r[idx] -= sub;
                }
            }
            r.pop();
        }
        Self::new(r)
    }

    /// Number of distinct real roots, by Sturm's theorem over (-inf, +inf).
    pub fn count_real_roots(&self) -> usize {
        let deg = match self.degree() {
            None | Some(0) => return 0,
            Some(d) => d,
        };
        let mut chain = vec![self.clone(), self.derivative()];
        loop {
            let n = chain.len();
            let r = chain[n - 2].rem(&chain[n - 1]);
            if r.is_zero() || n > deg + 2 {
                break;
            }
            chain.push(Self::new(r.coeffs.iter().map(|c| -c).collect()));
        }
        let vneg = sign_variations(&chain, Tail::NegInfinity);
        let vpos = sign_variations(&chain, Tail::PosInfinity);
        vneg.saturating_sub(vpos)
    }

    /// True iff the polynomial is strictly positive on all of R.
    pub fn is_positive_definite(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        if self.count_real_roots() != 0 {
            return false;
        }
        // no real roots: the sign anywhere is the sign everywhere
        self.eval(&BigRational::zero()).is_positive()
    }
}

enum Tail {
    NegInfinity,
    PosInfinity,
}

fn sign_variations(chain: &[UniPoly], tail: Tail) -> usize {
    let mut last = 0i8;
    let mut variations = 0;
    for p in chain {
        let s = match (p.degree(), p.leading()) {
            (None, _) => 0i8,
            (Some(d), Some(l)) => {
                let base = if l.is_positive() { 1i8 } else { -1i8 };
                match tail {
                    Tail::PosInfinity => base,
                    Tail::NegInfinity => {
                        if d % 2 == 0 {
                            base
                        } else {
                            -base
                        }
                    }
                }
            }
            _ => 0,
        };
        if s != 0 {
            if last != 0 && s != last {
                variations += 1;
            }
            last = s;
        }
    }
    variations
}
