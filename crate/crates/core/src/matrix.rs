//! Matrix polynomials and their symbolic Moore-Penrose pseudoinverse.
//!
//! The pseudoinverse of a matrix polynomial P is a rational matrix; it is
//! represented exactly as a pair (A, Delta) of a matrix polynomial and a
//! nonnegative scalar polynomial with P^+ = A / Delta off the zero set of
//! Delta. The pair is obtained from the characteristic polynomial of P P*
//! (Faddeev-LeVerrier recursion) through Decell's closed formula, and is
//! certified by four cleared-denominator Penrose identities.

use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;
use crate::multiindex::MultiIndex;
use crate::poly::ScalarPoly;
use num_complex::Complex64;
use num_rational::BigRational;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixPoly {
    rows: usize,
    cols: usize,
    dim: usize,
    entries: Vec<ScalarPoly>, // row-major
}

impl MatrixPoly {
    pub fn zero(rows: usize, cols: usize, dim: usize) -> Self {
        assert!(rows > 0 && cols > 0);
        Self {
            rows,
            cols,
            dim,
            entries: vec![ScalarPoly::zero(dim); rows * cols],
        }
    }

    pub fn identity(n: usize, dim: usize) -> Self {
        let mut m = Self::zero(n, n, dim);
        for i in 0..n {
            *m.entry_mut(i, i) = ScalarPoly::one(dim);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<ScalarPoly>>) -> Result<Self> {
        let nrows = rows.len();
        if nrows == 0 {
            return Err(Error::ShapeMismatch {
                context: "matrix must have at least one row",
                left: "0".into(),
                right: "-".into(),
            });
        }
        let ncols = rows[0].len();
        if ncols == 0 || rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::ShapeMismatch {
                context: "ragged matrix rows",
                left: format!("{}", ncols),
                right: format!(
                    "{:?}",
                    rows.iter().map(|r| r.len()).collect::<Vec<_>>()
                ),
            });
        }
        let dim = rows
            .iter()
            .flat_map(|r| r.iter().map(|p| p.dim()))
            .max()
            .unwrap();
        let entries = rows
            .into_iter()
            .flatten()
            .map(|p| p.promote_dim(dim))
            .collect();
        Ok(Self {
            rows: nrows,
            cols: ncols,
            dim,
            entries,
        })
    }

    pub fn scalar(p: ScalarPoly) -> Self {
        let dim = p.dim();
        Self {
            rows: 1,
            cols: 1,
            dim,
            entries: vec![p],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, r: usize, c: usize) -> &ScalarPoly {
        &self.entries[r * self.cols + c]
    }

    pub fn entry_mut(&mut self, r: usize, c: usize) -> &mut ScalarPoly {
        &mut self.entries[r * self.cols + c]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    /// Maximum total degree over entries; `None` for the zero matrix.
    pub fn degree(&self) -> Option<u32> {
        self.entries.iter().filter_map(|p| p.degree()).max()
    }

    pub fn promote_dim(&self, dim: usize) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            dim,
            entries: self.entries.iter().map(|p| p.promote_dim(dim)).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(shape_err("matrix addition", self, rhs));
        }
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            dim: self.dim,
            entries,
        })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            dim: self.dim,
            entries: self.entries.iter().map(|p| -p).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(shape_err("matrix product", self, rhs));
        }
        let mut out = Self::zero(self.rows, rhs.cols, self.dim);
        for r in 0..self.rows {
            for c in 0..rhs.cols {
                let mut acc = ScalarPoly::zero(self.dim);
                for k in 0..self.cols {
                    acc = &acc + &(self.entry(r, k) * rhs.entry(k, c));
                }
                *out.entry_mut(r, c) = acc;
            }
        }
        Ok(out)
    }

    /// Conjugate transpose X*.
    pub fn conj_transpose(&self) -> Self {
        let mut out = Self::zero(self.cols, self.rows, self.dim);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *out.entry_mut(c, r) = self.entry(r, c).conjugate();
            }
        }
        out
    }

    pub fn scale_poly(&self, s: &ScalarPoly) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            dim: self.dim,
            entries: self.entries.iter().map(|p| p * s).collect(),
        }
    }

    /// Entrywise partial derivative of order `alpha`.
    pub fn derivative(&self, alpha: &MultiIndex) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            dim: self.dim,
            entries: self.entries.iter().map(|p| p.derive(alpha)).collect(),
        }
    }

    pub fn trace(&self) -> Result<ScalarPoly> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut acc = ScalarPoly::zero(self.dim);
        for i in 0..self.rows {
            acc = &acc + self.entry(i, i);
        }
        Ok(acc)
    }

    /// Numeric evaluation at a real point; row-major complex matrix.
    pub fn eval_f64(&self, point: &[f64]) -> Vec<Vec<Complex64>> {
        (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| self.entry(r, c).eval_f64(point))
                    .collect()
            })
            .collect()
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &[BigRational]) -> Vec<Vec<GaussianRational>> {
        (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| self.entry(r, c).eval(point))
                    .collect()
            })
            .collect()
    }

    /// Coefficients a_1..a_n of det(lambda I - B) = lambda^n + a_1
    /// lambda^{n-1} + ... + a_n, by the Faddeev-LeVerrier recursion.
    /// Divisions are by integers only, hence exact over the rationals.
    pub fn char_poly_faddeev(&self) -> Result<Vec<ScalarPoly>> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut coeffs = Vec::with_capacity(n);
        let mut aux = Self::identity(n, self.dim); // N_0 = I
        for k in 1..=n {
            let m = self.mul(&aux)?; // M_k = B N_{k-1}
            let tr = m.trace()?;
            let ak = tr.scale_rational(&BigRational::new((-1).into(), (k as i64).into()));
            let shift = Self::identity(n, self.dim).scale_poly(&ak);
            aux = m.add(&shift)?; // N_k = M_k + a_k I
            coeffs.push(ak);
        }
        Ok(coeffs)
    }

    /// Largest k with a nonvanishing k-th characteristic coefficient of
    /// P P*; equals the maximal pointwise rank of P.
    pub fn generic_rank(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroOperator);
        }
        let b = self.gram_smaller_side()?;
        let coeffs = b.char_poly_faddeev()?;
        let r = coeffs.iter().rposition(|a| !a.is_zero());
        Ok(r.map(|i| i + 1).unwrap_or(0))
    }

    // Hermitian Gram matrix on the smaller side: P P* if rows <= cols,
    // else P* P. Nonzero characteristic coefficients agree.
    fn gram_smaller_side(&self) -> Result<Self> {
        if self.rows <= self.cols {
            self.mul(&self.conj_transpose())
        } else {
            self.conj_transpose().mul(self)
        }
    }

    /// Exact pseudoinverse representation P^+ = A / Delta via Decell's
    /// formula on the Gram matrix. The sign convention makes Delta(x) >= 0
    /// for every real x (it is the r-th elementary symmetric function of
    /// the eigenvalues of P(x) P(x)*).
    pub fn pseudoinverse(&self) -> Result<PseudoinverseRep> {
        if self.is_zero() {
            return Err(Error::ZeroOperator);
        }
        if self.rows > self.cols {
            // P^+ = ((P*)^+)*; the Gram matrix of P* is the smaller one.
            let rep = self.conj_transpose().pseudoinverse()?;
            return Ok(PseudoinverseRep {
                a: rep.a.conj_transpose(),
                delta: rep.delta, // real coefficients, conjugation-invariant
                rank: rep.rank,
            });
        }
        let b = self.mul(&self.conj_transpose())?;
        let coeffs = b.char_poly_faddeev()?;
        let r = coeffs
            .iter()
            .rposition(|a| !a.is_zero())
            .map(|i| i + 1)
            .expect("nonzero matrix has nonzero Gram characteristic coefficients");
        let sign = |k: usize| {
            if k % 2 == 0 {
                1i64
            } else {
                -1i64
            }
        };
        let delta = coeffs[r - 1].scale(&GaussianRational::from_int(sign(r)));
        // sum_{i=0}^{r-1} a_i B^{r-1-i} with a_0 = 1
        let n = b.rows;
        let mut sum = Self::zero(n, n, self.dim);
        let mut power = Self::identity(n, self.dim); // B^0
        for i in (0..r).rev() {
            // add a_i * B^{r-1-i}; iterate from the constant power upward
            let ai = if i == 0 {
                ScalarPoly::one(self.dim)
            } else {
                coeffs[i - 1].clone()
            };
            sum = sum.add(&power.scale_poly(&ai))?;
            if i > 0 {
                power = power.mul(&b)?;
            }
        }
        let a = self
            .conj_transpose()
            .mul(&sum)?
            .scale_poly(&ScalarPoly::constant(
                self.dim,
                GaussianRational::from_int(sign(r + 1)),
            ));
        Ok(PseudoinverseRep { a, delta, rank: r })
    }

    /// Determinant via the characteristic polynomial of P itself.
    pub fn determinant(&self) -> Result<ScalarPoly> {
        let coeffs = self.char_poly_faddeev()?;
        let n = self.rows;
        let cn = coeffs[n - 1].clone();
        // det(-P) = a_n, so det P = (-1)^n a_n
        Ok(if n % 2 == 0 { cn } else { -&cn })
    }

    /// Pseudoinverse representation of a generically invertible square
    /// matrix built from the adjugate: A = adj(P) (det P)*, Delta =
    /// (det P)(det P)*. Independent of the Decell route; used to test that
    /// domination verdicts do not depend on the representation.
    pub fn adjugate_pseudoinverse(&self) -> Result<PseudoinverseRep> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let coeffs = self.char_poly_faddeev()?;
        let det = {
            let cn = coeffs[n - 1].clone();
            if n % 2 == 0 {
                cn
            } else {
                -&cn
            }
        };
        if det.is_zero() {
            return Err(Error::SingularDeterminant);
        }
        // adj(P) = (-1)^{n+1} (P^{n-1} + c_1 P^{n-2} + ... + c_{n-1} I)
        let mut sum = Self::zero(n, n, self.dim);
        let mut power = Self::identity(n, self.dim);
        for i in (0..n).rev() {
            let ci = if i == 0 {
                ScalarPoly::one(self.dim)
            } else {
                coeffs[i - 1].clone()
            };
            sum = sum.add(&power.scale_poly(&ci))?;
            if i > 0 {
                power = power.mul(self)?;
            }
        }
        let adj = if n % 2 == 1 {
            sum
        } else {
            sum.neg()
        };
        let det_conj = det.conjugate();
        Ok(PseudoinverseRep {
            a: adj.scale_poly(&det_conj),
            delta: &det * &det_conj,
            rank: n,
        })
    }

    pub fn to_canonical_string(&self) -> String {
        let rows: Vec<String> = (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| self.entry(r, c).to_canonical_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            })
            .collect();
        format!("[{}]", rows.join("; "))
    }
}

fn shape_err(context: &'static str, a: &MatrixPoly, b: &MatrixPoly) -> Error {
    Error::ShapeMismatch {
        context,
        left: format!("{}x{}", a.rows, a.cols),
        right: format!("{}x{}", b.rows, b.cols),
    }
}

impl fmt::Display for MatrixPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_canonical_string())
    }
}

/// Certified representation P^+ = A / Delta with generic rank r.
#[derive(Debug, Clone)]
pub struct PseudoinverseRep {
    pub a: MatrixPoly,
    pub delta: ScalarPoly,
    pub rank: usize,
}

/// Checks the four cleared-denominator Penrose identities exactly:
/// P A P = Delta P, A P A = Delta A, (P A)* = P A, (A P)* = A P.
pub fn penrose_verify(p: &MatrixPoly, rep: &PseudoinverseRep) -> bool {
    let a = &rep.a;
    if a.rows() != p.cols() || a.cols() != p.rows() {
        return false;
    }
    let pa = match p.mul(a) {
        Ok(m) => m,
        Err(_) => return false,
    };
    let ap = match a.mul(p) {
        Ok(m) => m,
        Err(_) => return false,
    };
    let pap = match pa.mul(p) {
        Ok(m) => m,
        Err(_) => return false,
    };
    let apa = match ap.mul(a) {
        Ok(m) => m,
        Err(_) => return false,
    };
    pap == p.scale_poly(&rep.delta)
        && apa == a.scale_poly(&rep.delta)
        && pa.conj_transpose() == pa
        && ap.conj_transpose() == ap
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_matrix_str, parse_scalar_str};
    use num_traits::{Signed, Zero};

    fn m(src: &str, dim: usize) -> MatrixPoly {
        parse_matrix_str(src, Some(dim)).unwrap()
    }

    fn p(src: &str, dim: usize) -> ScalarPoly {
        parse_scalar_str(src, Some(dim)).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        // [x1, x2] * [x1; x2] = [x1^2 + x2^2]
        let row = m("[x1, x2]", 2);
        let col = m("[x1; x2]", 2);
        assert_eq!(row.mul(&col).unwrap(), m("[x1^2 + x2^2]", 2));
        // conjugate transpose of a real row is the column
        assert_eq!(row.conj_transpose(), col);
        // ([i x1])* = [-i x1]
        assert_eq!(m("[i*x1]", 1).conj_transpose(), m("[-i*x1]", 1));
        // (X*)* = X and (XY)* = Y* X*
        let x = m("[x1, i*x2; 0, x1*x2]", 2);
        let y = m("[1; x1 - i]", 2);
        assert_eq!(x.conj_transpose().conj_transpose(), x);
        assert_eq!(
            x.mul(&y).unwrap().conj_transpose(),
            y.conj_transpose().mul(&x.conj_transpose()).unwrap()
        );
    }

    #[test]
    fn char_poly_examples() {
        // 1x1: det(lambda - b) -> a_1 = -b
        let b = m("[x1^2 + x2^2]", 2);
        let coeffs = b.char_poly_faddeev().unwrap();
        assert_eq!(coeffs, vec![p("-(x1^2 + x2^2)", 2)]);
        // identity 2x2: a_1 = -2, a_2 = 1
        let id = MatrixPoly::identity(2, 1);
        let coeffs = id.char_poly_faddeev().unwrap();
        assert_eq!(coeffs, vec![p("-2", 1), p("1", 1)]);
        // paper-style 2x2: det(P P*) = |det P|^2 = x1^2 x2^2
        let pm = m("[x1^2 + x2^2, x1; x2, 0]", 2);
        let b = pm.mul(&pm.conj_transpose()).unwrap();
        let coeffs = b.char_poly_faddeev().unwrap();
        assert_eq!(coeffs[1], p("x1^2*x2^2", 2));
    }

    #[test]
    fn generic_rank_examples() {
        assert_eq!(m("[x1, x2]", 2).generic_rank().unwrap(), 1);
        assert_eq!(
            m("[x1^2 + x2^2, x1; x2, 0]", 2).generic_rank().unwrap(),
            2
        );
        // 2x1 with proportional rows has rank 1
        assert_eq!(m("[x1; x1]", 1).generic_rank().unwrap(), 1);
        assert_eq!(
            MatrixPoly::zero(2, 2, 1).generic_rank(),
            Err(Error::ZeroOperator)
        );
    }

    #[test]
    fn pseudoinverse_examples() {
        // gradient-like row
        let pm = m("[x1, x2]", 2);
        let rep = pm.pseudoinverse().unwrap();
        assert_eq!(rep.delta, p("x1^2 + x2^2", 2));
        assert_eq!(rep.a, m("[x1; x2]", 2));
        assert_eq!(rep.rank, 1);
        assert!(penrose_verify(&pm, &rep));
        // transposed case goes through the smaller Gram matrix
        let col = m("[x1; x2]", 2);
        let rep = col.pseudoinverse().unwrap();
        assert_eq!(rep.delta, p("x1^2 + x2^2", 2));
        assert_eq!(rep.a, m("[x1, x2]", 2));
        assert!(penrose_verify(&col, &rep));
        // nonzero constant 1x1
        let c = m("[2 - i]", 1);
        let rep = c.pseudoinverse().unwrap();
        assert_eq!(rep.delta, p("5", 1));
        assert_eq!(rep.a, m("[2 + i]", 1));
        assert!(penrose_verify(&c, &rep));
    }

    #[test]
    fn penrose_rejects_wrong_representation() {
        let pm = m("[x1, x2]", 2);
        let bad = PseudoinverseRep {
            a: m("[x2; x1]", 2),
            delta: p("x1^2 + x2^2", 2),
            rank: 1,
        };
        assert!(!penrose_verify(&pm, &bad));
        // trivially correct scalar representation
        let one = m("[1]", 1);
        let rep = PseudoinverseRep {
            a: m("[1]", 1),
            delta: p("1", 1),
            rank: 1,
        };
        assert!(penrose_verify(&one, &rep));
    }

    #[test]
    fn adjugate_matches_decell_for_square_generic() {
        let pm = m("[x1^2 + x2^2, x1; x2, 0]", 2);
        let dec = pm.pseudoinverse().unwrap();
        let adj = pm.adjugate_pseudoinverse().unwrap();
        assert_eq!(dec.delta, adj.delta);
        assert_eq!(dec.a, adj.a);
        assert!(penrose_verify(&pm, &adj));
        assert_eq!(pm.determinant().unwrap(), p("-x1*x2", 2));
    }

    #[test]
    fn delta_nonnegative_at_sample_points() {
        let pm = m("[x1 + i*x2, x2^2; 1, x1*x2]", 2);
        let rep = pm.pseudoinverse().unwrap();
        assert!(rep.delta.has_real_coeffs());
        for (a, b) in [(3i64, -2i64), (-1, -1), (5, 7), (0, 0), (-4, 9)] {
            let pt = [
                BigRational::from_integer(a.into()),
                BigRational::from_integer(b.into()),
            ];
            let v = rep.delta.eval(&pt);
            assert!(v.is_real());
            assert!(!v.re.is_negative());
        }
        assert!(penrose_verify(&pm, &rep));
    }

    #[test]
    fn projection_entries_bounded_at_sample_points() {
        // entries of P A / Delta are entries of a Hermitian projection,
        // hence bounded by 1 in modulus wherever Delta != 0
        let pm = m("[x1, x2, 1; 0, x1, x2]", 2);
        let rep = pm.pseudoinverse().unwrap();
        let pa = pm.mul(&rep.a).unwrap();
        for (a, b) in [(1i64, 2i64), (-3, 5), (2, -7), (10, 1)] {
            let pt = [
                BigRational::from_integer(a.into()),
                BigRational::from_integer(b.into()),
            ];
            let dv = rep.delta.eval(&pt);
            if dv.is_zero() {
                continue;
            }
            for r in 0..pa.rows() {
                for c in 0..pa.cols() {
                    let e = pa.entry(r, c).eval(&pt);
                    // |e / delta|^2 <= 1
                    assert!(e.abs_sq() <= dv.abs_sq());
                }
            }
        }
    }

    #[test]
    fn derivative_operator_examples() {
        let pm = m("[x1^2 + x2^2]", 2);
        assert_eq!(
            pm.derivative(&MultiIndex(vec![1, 0])),
            m("[2*x1]", 2)
        );
        assert_eq!(pm.derivative(&MultiIndex::zero(2)), pm);
        assert!(pm.derivative(&MultiIndex(vec![3, 0])).is_zero());
    }

    #[test]
    fn zero_and_shape_errors() {
        assert_eq!(
            MatrixPoly::zero(1, 2, 1).pseudoinverse().err(),
            Some(Error::ZeroOperator)
        );
        let a = m("[x1]", 1);
        let b = m("[x1, x1]", 1);
        assert!(a.add(&b).is_err());
        assert!(b.char_poly_faddeev().is_err());
        assert!(BigRational::zero().is_zero()); // keep import used
    }
}
