//! Sparse multivariate polynomials with exact Gaussian-rational coefficients.
//!
//! Terms are stored in a `BTreeMap` keyed by the graded-lexicographic
//! multi-index order, so iteration and printing are canonical. Zero
//! coefficients are never stored; the zero polynomial has no terms and its
//! degree is `None`.

use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;
use crate::multiindex::{indices_up_to, MultiIndex};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarPoly {
    dim: usize,
    terms: BTreeMap<MultiIndex, GaussianRational>,
}

impl ScalarPoly {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: GaussianRational) -> Self {
        let mut p = Self::zero(dim);
        p.add_term(MultiIndex::zero(dim), c);
        p
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, GaussianRational::one())
    }

    /// The variable `x_{axis+1}`.
    pub fn variable(dim: usize, axis: usize) -> Self {
        assert!(axis < dim);
        let mut p = Self::zero(dim);
        p.add_term(MultiIndex::unit(dim, axis), GaussianRational::one());
        p
    }

    pub fn monomial(dim: usize, exponents: MultiIndex, c: GaussianRational) -> Self {
        assert_eq!(exponents.dim(), dim);
        let mut p = Self::zero(dim);
        p.add_term(exponents, c);
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, alpha: &MultiIndex) -> GaussianRational {
        self.terms
            .get(alpha)
            .cloned()
            .unwrap_or_else(GaussianRational::zero)
    }

    /// Greatest term in the graded-lexicographic order.
    pub fn leading_term(&self) -> Option<(&MultiIndex, &GaussianRational)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` is the degree of the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.order()).max()
    }

    /// Adds `c * x^alpha`, dropping the term if the sum cancels.
    pub fn add_term(&mut self, alpha: MultiIndex, c: GaussianRational) {
        debug_assert_eq!(alpha.dim(), self.dim);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(alpha) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = &*e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        Ok(())
    }

    /// Coefficient-wise conjugate p*. For real arguments p*(x) = conj(p(x)).
    pub fn conjugate(&self) -> Self {
        Self {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.conj()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        Self {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    pub fn scale_rational(&self, f: &BigRational) -> Self {
        self.scale(&GaussianRational::real(f.clone()))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.dim);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact partial derivative of order `alpha`.
    pub fn derive(&self, alpha: &MultiIndex) -> Self {
        debug_assert_eq!(alpha.dim(), self.dim);
        let mut out = Self::zero(self.dim);
        'term: for (m, c) in &self.terms {
            let mut factor = BigRational::from_integer(1.into());
            let mut exps = Vec::with_capacity(self.dim);
            for axis in 0..self.dim {
                let e = m.0[axis];
                let k = alpha.0[axis];
                if e < k {
                    continue 'term;
                }
                // falling factorial e (e-1) ... (e-k+1)
                for j in 0..k {
                    factor *= BigRational::from_integer(BigInt::from(e - j));
                }
                exps.push(e - k);
            }
            out.add_term(MultiIndex(exps), c.scale(&factor));
        }
        out
    }

    /// Exact evaluation at a real rational point.
    pub fn eval(&self, point: &[BigRational]) -> GaussianRational {
        assert_eq!(point.len(), self.dim, "evaluation point has wrong length");
        let max_deg = self.degree().unwrap_or(0) as usize;
        // power tables per axis
        let mut powers: Vec<Vec<BigRational>> = Vec::with_capacity(self.dim);
        for x in point {
            let mut col = Vec::with_capacity(max_deg + 1);
            col.push(BigRational::from_integer(1.into()));
            for k in 1..=max_deg {
                let prev = col[k - 1].clone();
                col.push(prev * x);
            }
            powers.push(col);
        }
        let mut acc = GaussianRational::zero();
        for (m, c) in &self.terms {
            let mut mono = BigRational::from_integer(1.into());
            for (axis, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    mono *= &powers[axis][e as usize];
                }
            }
            acc = &acc + &c.scale(&mono);
        }
        acc
    }

    /// Floating-point evaluation at a real point (probe use only).
    pub fn eval_f64(&self, point: &[f64]) -> Complex64 {
        debug_assert_eq!(point.len(), self.dim);
        let mut acc = Complex64::ZERO;
        for (m, c) in &self.terms {
            let mut mono = 1.0f64;
            for (axis, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    mono *= point[axis].powi(e as i32);
                }
            }
            acc += c.to_c64() * mono;
        }
        acc
    }

    /// Real part as a polynomial with real coefficients.
    pub fn real_part(&self) -> Self {
        let mut out = Self::zero(self.dim);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), GaussianRational::real(c.re.clone()));
        }
        out
    }

    /// Imaginary part as a polynomial with real coefficients.
    pub fn imag_part(&self) -> Self {
        let mut out = Self::zero(self.dim);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), GaussianRational::real(c.im.clone()));
        }
        out
    }

    pub fn has_real_coeffs(&self) -> bool {
        self.terms.values().all(|c| c.is_real())
    }

    /// The weight function of the symbol, squared:
    /// sum over all alpha of |d^alpha p|^2, a polynomial with real
    /// coefficients that is strictly positive on R^d whenever p != 0.
    pub fn tilde_squared(&self) -> Self {
        let mut out = Self::zero(self.dim);
        let deg = match self.degree() {
            None => return out,
            Some(d) => d,
        };
        for alpha in indices_up_to(self.dim, deg) {
            let d = self.derive(&alpha);
            if d.is_zero() {
                continue;
            }
            let re = d.real_part();
            let im = d.imag_part();
            out = &out + &(&re * &re);
            if !im.is_zero() {
                out = &out + &(&im * &im);
            }
        }
        out
    }

    /// Terms of maximal total degree. Zero polynomial maps to itself.
    pub fn top_homogeneous_part(&self) -> Self {
        let deg = match self.degree() {
            None => return Self::zero(self.dim),
            Some(d) => d,
        };
        let mut out = Self::zero(self.dim);
        for (m, c) in &self.terms {
            if m.order() == deg {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// Substitutes the monomial curve x_i = c_i * t^{max(w_i, 0)} and returns
    /// the exact univariate result (a polynomial of dimension 1 in t).
    pub fn substitute_curve(&self, weights: &[i64], coeffs: &[BigRational]) -> Self {
        assert_eq!(weights.len(), self.dim);
        assert_eq!(coeffs.len(), self.dim);
        let mut out = Self::zero(1);
        for (m, c) in &self.terms {
            let mut t_deg: u32 = 0;
            let mut factor = BigRational::from_integer(1.into());
            for axis in 0..self.dim {
                let e = m.0[axis];
                if e == 0 {
                    continue;
                }
                let w = weights[axis].max(0) as u32;
                t_deg += w * e;
                let mut pw = BigRational::from_integer(1.into());
                for _ in 0..e {
                    pw *= &coeffs[axis];
                }
                factor *= pw;
            }
            out.add_term(MultiIndex(vec![t_deg]), c.scale(&factor));
        }
        out
    }

    /// Fixes `x_{axis+1} := value`, leaving a polynomial in the remaining
    /// variables (dimension is preserved; the axis no longer occurs).
    pub fn substitute_axis(&self, axis: usize, value: &BigRational) -> Self {
        assert!(axis < self.dim);
        let mut out = Self::zero(self.dim);
        for (m, c) in &self.terms {
            let e = m.0[axis];
            let mut pw = BigRational::from_integer(1.into());
            for _ in 0..e {
                pw *= value;
            }
            let mut exps = m.0.clone();
            exps[axis] = 0;
            out.add_term(MultiIndex(exps), c.scale(&pw));
        }
        out
    }

    /// Dense real coefficient vector along `axis` (ascending powers),
    /// provided no other variable occurs and all coefficients are real.
    pub fn extract_univariate(&self, axis: usize) -> Option<Vec<BigRational>> {
        let deg = self
            .terms
            .keys()
            .map(|m| m.0[axis])
            .max()
            .unwrap_or(0) as usize;
        let mut coeffs = vec![BigRational::zero(); deg + 1];
        for (m, c) in &self.terms {
            if !c.is_real() {
                return None;
            }
            for (a, &e) in m.0.iter().enumerate() {
                if a != axis && e != 0 {
                    return None;
                }
            }
            coeffs[m.0[axis] as usize] = c.re.clone();
        }
        Some(coeffs)
    }

    /// Re-embeds into a larger variable count.
    pub fn promote_dim(&self, dim: usize) -> Self {
        assert!(dim >= self.dim);
        if dim == self.dim {
            return self.clone();
        }
        let mut out = Self::zero(dim);
        for (m, c) in &self.terms {
            out.add_term(m.promote(dim), c.clone());
        }
        out
    }

    /// Canonical string form: graded-lex descending, explicit `*` and `^`,
    /// re-parseable by the expression parser.
    pub fn to_canonical_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut pieces: Vec<(bool, String)> = Vec::new(); // (negative, body)
        for (m, c) in self.terms.iter().rev() {
            pieces.push(render_term(m, c));
        }
        let mut s = String::new();
        for (idx, (neg, body)) in pieces.iter().enumerate() {
            if idx == 0 {
                if *neg {
                    s.push('-');
                }
            } else if *neg {
                s.push_str(" - ");
            } else {
                s.push_str(" + ");
            }
            s.push_str(body);
        }
        s
    }
}

fn render_monomial(m: &MultiIndex) -> String {
    let mut parts = Vec::new();
    for (axis, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(format!("x{}", axis + 1)),
            _ => parts.push(format!("x{}^{}", axis + 1, e)),
        }
    }
    parts.join("*")
}

/// Returns (leading-sign-is-negative, body-without-sign).
fn render_term(m: &MultiIndex, c: &GaussianRational) -> (bool, String) {
    use crate::gaussian::format_rational;
    use num_traits::Signed;
    let mono = render_monomial(m);
    if c.is_real() {
        let neg = c.re.is_negative();
        let mag = if neg { -c.re.clone() } else { c.re.clone() };
        let coeff = format_rational(&mag);
        let body = if mono.is_empty() {
            coeff
        } else if mag.is_one() {
            mono
        } else {
            format!("{}*{}", coeff, mono)
        };
        return (neg, body);
    }
    if c.re.is_zero() {
        let neg = c.im.is_negative();
        let mag = if neg { -c.im.clone() } else { c.im.clone() };
        let coeff = if mag.is_one() {
            "i".to_string()
        } else {
            format!("{}*i", format_rational(&mag))
        };
        let body = if mono.is_empty() {
            coeff
        } else {
            format!("{}*{}", coeff, mono)
        };
        return (neg, body);
    }
    // full complex coefficient, parenthesized
    let coeff = format!("{}", c);
    let body = if mono.is_empty() {
        coeff
    } else {
        format!("{}*{}", coeff, mono)
    };
    (false, body)
}

impl Add for &ScalarPoly {
    type Output = ScalarPoly;
    fn add(self, rhs: Self) -> ScalarPoly {
        assert_eq!(self.dim, rhs.dim, "polynomial dimension mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &ScalarPoly {
    type Output = ScalarPoly;
    fn sub(self, rhs: Self) -> ScalarPoly {
        self + &(-rhs)
    }
}

impl Neg for &ScalarPoly {
    type Output = ScalarPoly;
    fn neg(self) -> ScalarPoly {
        ScalarPoly {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c))
                .collect(),
        }
    }
}

impl Mul for &ScalarPoly {
    type Output = ScalarPoly;
    fn mul(self, rhs: Self) -> ScalarPoly {
        assert_eq!(self.dim, rhs.dim, "polynomial dimension mismatch");
        let mut out = ScalarPoly::zero(self.dim);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.add(mb), ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for ScalarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_canonical_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_scalar_str;

    fn p(src: &str, dim: usize) -> ScalarPoly {
        parse_scalar_str(src, Some(dim)).unwrap()
    }

    #[test]
    fn ring_arithmetic_examples() {
        // (x1 + i)(x1 - i) = x1^2 + 1
        let a = p("x1 + i", 1);
        let b = p("x1 - i", 1);
        assert_eq!(&a * &b, p("x1^2 + 1", 1));
        // conj(i x1) = -i x1
        assert_eq!(p("i*x1", 1).conjugate(), p("-i*x1", 1));
        // (x1 + x2)^2 = x1^2 + 2 x1 x2 + x2^2
        assert_eq!(p("(x1+x2)^2", 2), p("x1^2 + 2*x1*x2 + x2^2", 2));
    }

    #[test]
    fn derive_examples() {
        let q = p("x1^2*x2", 2);
        assert_eq!(q.derive(&MultiIndex(vec![1, 1])), p("2*x1", 2));
        let r = p("x1^2 + x2^2", 2);
        assert_eq!(r.derive(&MultiIndex(vec![2, 0])), p("2", 2));
        let c = p("7", 2);
        assert!(c.derive(&MultiIndex(vec![1, 0])).is_zero());
        // derive(p, 0) = p
        assert_eq!(q.derive(&MultiIndex::zero(2)), q);
    }

    #[test]
    fn eval_examples() {
        let q = p("x1^2 + x2^2", 2);
        let pt = [
            BigRational::from_integer(3.into()),
            BigRational::from_integer(4.into()),
        ];
        assert_eq!(q.eval(&pt), GaussianRational::from_int(25));
        let r = p("i*x1", 1);
        assert_eq!(
            r.eval(&[BigRational::from_integer(2.into())]),
            GaussianRational::new(BigRational::zero(), BigRational::from_integer(2.into()))
        );
        assert!(ScalarPoly::zero(2).eval(&pt).is_zero());
    }

    #[test]
    fn tilde_squared_frozen_values() {
        // p = x1 (d=1): derivatives x1 and 1
        assert_eq!(p("x1", 1).tilde_squared(), p("x1^2 + 1", 1));
        // p = x1^2 (d=1): derivatives x1^2, 2 x1, 2
        assert_eq!(p("x1^2", 1).tilde_squared(), p("x1^4 + 4*x1^2 + 4", 1));
        // p = x1^2 + x2^2 (d=2): p, 2x1, 2x2, 2, 2
        assert_eq!(
            p("x1^2 + x2^2", 2).tilde_squared(),
            p("(x1^2+x2^2)^2 + 4*x1^2 + 4*x2^2 + 8", 2)
        );
        assert!(ScalarPoly::zero(2).tilde_squared().is_zero());
    }

    #[test]
    fn tilde_squared_matches_derivative_enumeration_at_points() {
        // independent oracle: evaluate every |d^alpha p(x)|^2 and sum
        let q = p("(1-2*i)*x1^2*x2 + 3*x2^3 - x1 + 1/2", 2);
        let t2 = q.tilde_squared();
        let pts = [
            [
                BigRational::new(3.into(), 2.into()),
                BigRational::new((-2).into(), 5.into()),
            ],
            [
                BigRational::from_integer(7.into()),
                BigRational::from_integer(1.into()),
            ],
        ];
        for pt in &pts {
            let mut acc = BigRational::zero();
            for alpha in indices_up_to(2, q.degree().unwrap()) {
                acc += q.derive(&alpha).eval(pt).abs_sq();
            }
            let got = t2.eval(pt);
            assert!(got.is_real());
            assert_eq!(got.re, acc);
        }
    }

    #[test]
    fn tilde_squared_constant_lower_bound() {
        // tilde^2(p)(x) >= |alpha! c_alpha|^2 for a top-degree term
        let q = p("2*x1^3 - x2 + i", 2);
        let t2 = q.tilde_squared();
        let alpha = MultiIndex(vec![3, 0]);
        let bound = q
            .coeff(&alpha)
            .scale(&BigRational::from_integer(alpha.factorial()))
            .abs_sq();
        let pt = [
            BigRational::new((-7).into(), 3.into()),
            BigRational::from_integer(11.into()),
        ];
        let val = t2.eval(&pt);
        assert!(val.is_real());
        assert!(val.re >= bound);
    }

    #[test]
    fn curve_substitution_exact() {
        let q = p("x1^2*x2 + x2", 2);
        // x1 = 2 t^2, x2 = -1 t: 4t^4 * (-t) + (-t) = -4 t^5 - t
        let s = q.substitute_curve(
            &[2, 1],
            &[
                BigRational::from_integer(2.into()),
                BigRational::from_integer((-1).into()),
            ],
        );
        assert_eq!(s, p("-4*x1^5 - x1", 1));
        // weights clamp at zero: x2 = c2 t^0 = c2
        let s0 = q.substitute_curve(
            &[1, -3],
            &[
                BigRational::from_integer(1.into()),
                BigRational::from_integer(5.into()),
            ],
        );
        assert_eq!(s0, p("5*x1^2 + 5", 1));
    }

    #[test]
    fn canonical_string_round_trip() {
        let q = p("-x1^2 + (1/2 - 3*i)*x1*x2 - 5/7 + i*x2", 2);
        let s = q.to_canonical_string();
        assert_eq!(parse_scalar_str(&s, Some(2)).unwrap(), q);
    }

    #[test]
    fn degree_sentinel() {
        assert_eq!(ScalarPoly::zero(3).degree(), None);
        assert_eq!(p("5", 3).degree(), Some(0));
        assert_eq!(p("x1*x2^2", 3).degree(), Some(3));
    }
}
