//! Sound three-valued deciders for scalar symbol comparison.
//!
//! For nonzero p, the weight p-tilde is strictly positive, so whether
//! sup q-tilde / p-tilde is finite (and whether the ratio vanishes at
//! infinity) is a question about behaviour at infinity only. The deciders
//! below never guess: a `Dominates` answer carries an exact certificate, a
//! `NotDominates` answer carries a witness curve that is re-verified by
//! exact substitution, and anything else is an honest `Unknown`.

use crate::error::{Error, Result};
use crate::poly::ScalarPoly;
use crate::sturm::UniPoly;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Strict,
    Compact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Dominates,
    NotDominates,
    Unknown,
}

/// Exact reasons backing a `Dominates` verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// q = 0; every operator dominates the zero operator.
    ZeroNumerator,
    /// d = 1 and the weight degrees compare as required.
    UnivariateDegree,
    /// q q* = scale * p exactly, so q-tilde^2 <= C p-tilde (derivative
    /// bounds on the unit ball) and p-tilde is bounded below.
    NumeratorSquare { scale: String },
    /// The top form of p-tilde^2 is positive on the unit sphere and the
    /// degree of q-tilde^2 is small enough.
    EllipticTopForm,
    /// C p-tilde^2 - q-tilde^2 has nonnegative coefficients on even
    /// exponents only, hence is nonnegative on R^d.
    EvenCoefficient { constant: u64 },
}

/// A monomial curve x_i(t) = c_i t^{max(w_i,0)} along which exact
/// substitution proves the ratio unbounded (strict mode) or bounded away
/// from zero (compact mode).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessCurve {
    pub weights: Vec<i64>,
    /// Rational coefficients, rendered exactly.
    pub coeffs: Vec<String>,
    /// (deg_t of q-tilde^2 on the curve, deg_t of p-tilde^2 on the curve);
    /// `None` encodes the zero composite.
    pub t_degrees: (Option<u32>, Option<u32>),
}

#[derive(Debug, Clone, Serialize)]
pub struct ScalarVerdict {
    pub outcome: Outcome,
    pub mode: Mode,
    pub certificate: Option<Certificate>,
    pub witness: Option<WitnessCurve>,
    pub note: String,
}

impl ScalarVerdict {
    fn dominates(mode: Mode, certificate: Certificate, note: impl Into<String>) -> Self {
        Self {
            outcome: Outcome::Dominates,
            mode,
            certificate: Some(certificate),
            witness: None,
            note: note.into(),
        }
    }

    fn refuted(mode: Mode, witness: WitnessCurve, note: impl Into<String>) -> Self {
        Self {
            outcome: Outcome::NotDominates,
            mode,
            certificate: None,
            witness: Some(witness),
            note: note.into(),
        }
    }

    fn unknown(mode: Mode, note: impl Into<String>) -> Self {
        Self {
            outcome: Outcome::Unknown,
            mode,
            certificate: None,
            witness: None,
            note: note.into(),
        }
    }
}

/// Tuning knobs for the decision cascade. All randomness is seeded.
#[derive(Debug, Clone)]
pub struct DecisionConfig {
    pub seed: u64,
    /// Number of random weight/coefficient draws in the refutation sweep.
    pub random_weight_draws: usize,
    /// Coefficient re-draws per weight vector, to dodge accidental
    /// cancellations of composite leading terms.
    pub retries: usize,
    /// Accept sampled sphere positivity for d >= 3 top forms. Off by
    /// default: sampling is not a certificate.
    pub heuristic_elliptic: bool,
    /// Sphere sample count per dimension pair in heuristic mode.
    pub sphere_samples: usize,
}

impl Default for DecisionConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            random_weight_draws: 64,
            retries: 3,
            heuristic_elliptic: false,
            sphere_samples: 2048,
        }
    }
}

/// Decides whether p dominates q: sup q-tilde / p-tilde < infinity.
pub fn scalar_dominates(p: &ScalarPoly, q: &ScalarPoly) -> Result<ScalarVerdict> {
    decide(p, q, Mode::Strict, &DecisionConfig::default())
}

/// Decides whether p compactly dominates q: q-tilde / p-tilde -> 0.
pub fn scalar_compactly_dominates(p: &ScalarPoly, q: &ScalarPoly) -> Result<ScalarVerdict> {
    decide(p, q, Mode::Compact, &DecisionConfig::default())
}

/// Full decision cascade.
pub fn decide(
    p: &ScalarPoly,
    q: &ScalarPoly,
    mode: Mode,
    config: &DecisionConfig,
) -> Result<ScalarVerdict> {
    p.check_dim(q)?;
    let d = p.dim();

    if q.is_zero() {
        return Ok(ScalarVerdict::dominates(
            mode,
            Certificate::ZeroNumerator,
            "zero numerator is dominated by anything",
        ));
    }
    if p.is_zero() {
        // q != 0 here; any coordinate ray carries the refutation since the
        // composite of the zero weight is the zero polynomial.
        let ones = vec![BigRational::from_integer(1.into()); d];
        let mut weights = vec![0i64; d];
        weights[0] = 1;
        let qt = q.tilde_squared();
        let qc = qt.substitute_curve(&weights, &ones);
        let witness = WitnessCurve {
            weights,
            coeffs: ones.iter().map(crate::gaussian::format_rational).collect(),
            t_degrees: (qc.degree(), None),
        };
        return Ok(ScalarVerdict::refuted(
            mode,
            witness,
            "zero operator dominates only the zero operator",
        ));
    }

    if d == 1 {
        return univariate_decide(p, q, mode);
    }

    let pt = p.tilde_squared();
    let qt = q.tilde_squared();

    if let Some(witness) = refutation_sweep(&pt, &qt, mode, config) {
        debug_assert!(verify_witness(&pt, &qt, mode, &witness));
        return Ok(ScalarVerdict::refuted(
            mode,
            witness,
            "ratio escapes along the monomial curve",
        ));
    }

    if mode == Mode::Strict {
        if let Some(cert) = numerator_square_certify(p, q) {
            return Ok(ScalarVerdict::dominates(
                mode,
                cert,
                "numerator squares to a positive multiple of the denominator",
            ));
        }
    }

    match elliptic_certify_inner(&pt, &qt, mode, config) {
        EllipticOutcome::Certified => {
            return Ok(ScalarVerdict::dominates(
                mode,
                Certificate::EllipticTopForm,
                "top form of the denominator weight is positive on the sphere",
            ));
        }
        EllipticOutcome::HeuristicOnly(margin) => {
            if config.heuristic_elliptic {
                return Ok(ScalarVerdict::dominates(
                    mode,
                    Certificate::EllipticTopForm,
                    format!(
                        "HEURISTIC: sphere sampling only (d >= 3), min sampled top form {:.3e}",
                        margin
                    ),
                ));
            }
        }
        EllipticOutcome::NotApplicable => {}
    }

    if mode == Mode::Strict {
        if let Some(cert) = even_coefficient_certify(&pt, &qt) {
            return Ok(ScalarVerdict::dominates(
                mode,
                cert,
                "difference has nonnegative coefficients on even exponents",
            ));
        }
    }

    let est = estimate_sup_ratio(&pt, &qt, config.seed);
    Ok(ScalarVerdict::unknown(
        mode,
        format!(
            "no certificate or witness found; non-certified sampled sup of q~/p~ ~= {:.4e}",
            est
        ),
    ))
}

/// Exact decision in one variable: only the weight degrees matter because
/// both weights are positive everywhere and comparable to |x|^deg at
/// infinity.
pub fn univariate_decide(p: &ScalarPoly, q: &ScalarPoly, mode: Mode) -> Result<ScalarVerdict> {
    if p.dim() != 1 || q.dim() != 1 {
        return Err(Error::DimensionMismatch(p.dim(), q.dim()));
    }
    if q.is_zero() {
        return Ok(ScalarVerdict::dominates(
            mode,
            Certificate::ZeroNumerator,
            "zero numerator",
        ));
    }
    if p.is_zero() {
        return decide(p, q, mode, &DecisionConfig::default());
    }
    let pd = p.tilde_squared().degree().expect("nonzero weight");
    let qd = q.tilde_squared().degree().expect("nonzero weight");
    let ok = match mode {
        Mode::Strict => qd <= pd,
        Mode::Compact => qd < pd,
    };
    if ok {
        Ok(ScalarVerdict::dominates(
            mode,
            Certificate::UnivariateDegree,
            format!("deg q~^2 = {} vs deg p~^2 = {}", qd, pd),
        ))
    } else {
        Ok(ScalarVerdict::refuted(
            mode,
            WitnessCurve {
                weights: vec![1],
                coeffs: vec!["1".into()],
                t_degrees: (Some(qd), Some(pd)),
            },
            format!("deg q~^2 = {} vs deg p~^2 = {}", qd, pd),
        ))
    }
}

/// Substitutes the curve into both weights and compares t-degrees. Exact,
/// so a returned witness is a sound refutation.
pub fn curve_refute(
    p: &ScalarPoly,
    q: &ScalarPoly,
    mode: Mode,
    weights: &[i64],
    coeffs: &[BigRational],
) -> Result<Option<WitnessCurve>> {
    p.check_dim(q)?;
    if !weights.iter().any(|&w| w > 0) {
        return Err(Error::InvalidWeights);
    }
    if coeffs.iter().any(|c| c.is_zero()) {
        return Err(Error::InvalidWeights);
    }
    Ok(try_curve(
        &p.tilde_squared(),
        &q.tilde_squared(),
        mode,
        weights,
        coeffs,
    ))
}

fn try_curve(
    pt: &ScalarPoly,
    qt: &ScalarPoly,
    mode: Mode,
    weights: &[i64],
    coeffs: &[BigRational],
) -> Option<WitnessCurve> {
    let pc = pt.substitute_curve(weights, coeffs);
    let qc = qt.substitute_curve(weights, coeffs);
    let qd = qc.degree()?;
    let pd = pc.degree();
    let hit = match (mode, pd) {
        (_, None) => true,
        (Mode::Strict, Some(pd)) => qd > pd,
        (Mode::Compact, Some(pd)) => qd >= pd,
    };
    if hit {
        Some(WitnessCurve {
            weights: weights.to_vec(),
            coeffs: coeffs.iter().map(crate::gaussian::format_rational).collect(),
            t_degrees: (Some(qd), pd),
        })
    } else {
        None
    }
}

/// Re-checks a witness by exact substitution.
pub fn verify_witness(
    pt: &ScalarPoly,
    qt: &ScalarPoly,
    mode: Mode,
    witness: &WitnessCurve,
) -> bool {
    let coeffs: Vec<BigRational> = witness
        .coeffs
        .iter()
        .map(|s| parse_rational(s))
        .collect::<Option<_>>()
        .unwrap_or_default();
    if coeffs.len() != pt.dim() {
        return false;
    }
    try_curve(pt, qt, mode, &witness.weights, &coeffs).is_some()
}

fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((n, d)) => Some(BigRational::new(n.parse().ok()?, d.parse().ok()?)),
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// Deterministic sweep: coordinate rays, the diagonal, every 0/1 weight
/// vector, then seeded random draws with coefficient retries.
fn refutation_sweep(
    pt: &ScalarPoly,
    qt: &ScalarPoly,
    mode: Mode,
    config: &DecisionConfig,
) -> Option<WitnessCurve> {
    let d = pt.dim();
    let ones = vec![BigRational::from_integer(1.into()); d];
    let mut tried: Vec<Vec<i64>> = Vec::new();

    let mut candidates: Vec<Vec<i64>> = Vec::new();
    for axis in 0..d {
        let mut w = vec![0i64; d];
        w[axis] = 1;
        candidates.push(w);
    }
    candidates.push(vec![1i64; d]);
    for mask in 1u32..(1 << d) {
        let w: Vec<i64> = (0..d).map(|i| ((mask >> i) & 1) as i64).collect();
        candidates.push(w);
    }
    for w in candidates {
        if tried.contains(&w) {
            continue;
        }
        if let Some(witness) = try_curve(pt, qt, mode, &w, &ones) {
            return Some(witness);
        }
        tried.push(w);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x9e37_79b9_7f4a_7c15);
    for _ in 0..config.random_weight_draws {
        let mut w: Vec<i64>;
        loop {
            w = (0..d).map(|_| rng.random_range(0..=4i64)).collect();
            if w.iter().any(|&x| x > 0) {
                break;
            }
        }
        for _ in 0..config.retries {
            let coeffs: Vec<BigRational> = (0..d)
                .map(|_| {
                    let num = loop {
                        let n = rng.random_range(-6i64..=6);
                        if n != 0 {
                            break n;
                        }
                    };
                    let den = rng.random_range(1i64..=2);
                    BigRational::new(num.into(), den.into())
                })
                .collect();
            if let Some(witness) = try_curve(pt, qt, mode, &w, &coeffs) {
                return Some(witness);
            }
        }
    }
    None
}

/// Exact structural certificate: q q* = c p with c a positive rational.
/// Then for all real x, q-tilde^2(x) is bounded by a constant multiple of
/// sup over the unit ball of |q|^2 around x (coefficient bounds for fixed
/// degree), that sup equals c sup p, which Taylor bounds by c' p-tilde(x),
/// and p-tilde is bounded below by its positive top-derivative constant.
pub fn numerator_square_certify(p: &ScalarPoly, q: &ScalarPoly) -> Option<Certificate> {
    if q.is_zero() || p.is_zero() {
        return None;
    }
    let qq = q * &q.conjugate();
    // candidate scale from the leading terms
    let (m, c) = qq.leading_term()?;
    let pc = p.coeff(m);
    if pc.is_zero() || !pc.is_real() || !c.is_real() {
        return None;
    }
    let scale = &c.re / &pc.re;
    if !scale.is_positive() {
        return None;
    }
    if qq == p.scale_rational(&scale) {
        Some(Certificate::NumeratorSquare {
            scale: crate::gaussian::format_rational(&scale),
        })
    } else {
        None
    }
}

enum EllipticOutcome {
    Certified,
    HeuristicOnly(f64),
    NotApplicable,
}

/// Public form of the elliptic certificate, per the operation contract.
pub fn elliptic_certify(
    p: &ScalarPoly,
    q: &ScalarPoly,
    mode: Mode,
    config: &DecisionConfig,
) -> Option<Certificate> {
    if p.is_zero() {
        return None;
    }
    match elliptic_certify_inner(&p.tilde_squared(), &q.tilde_squared(), mode, config) {
        EllipticOutcome::Certified => Some(Certificate::EllipticTopForm),
        EllipticOutcome::HeuristicOnly(_) if config.heuristic_elliptic => {
            Some(Certificate::EllipticTopForm)
        }
        _ => None,
    }
}

fn elliptic_certify_inner(
    pt: &ScalarPoly,
    qt: &ScalarPoly,
    mode: Mode,
    config: &DecisionConfig,
) -> EllipticOutcome {
    let two_m = match pt.degree() {
        None => return EllipticOutcome::NotApplicable,
        Some(deg) => deg,
    };
    let qd = qt.degree().unwrap_or(0);
    let degree_ok = match mode {
        Mode::Strict => qd <= two_m,
        Mode::Compact => qd < two_m,
    };
    if !degree_ok {
        return EllipticOutcome::NotApplicable;
    }
    let h = pt.top_homogeneous_part();
    let d = pt.dim();
    match d {
        1 => {
            // single term c x^{2m}; tilde-squared tops always have c > 0
            let ok = h
                .terms()
                .next()
                .map(|(_, c)| c.is_real() && c.re.is_positive())
                .unwrap_or(false);
            if ok {
                EllipticOutcome::Certified
            } else {
                EllipticOutcome::NotApplicable
            }
        }
        2 => {
            // positivity on the circle from the two dehomogenizations
            let u1 = h
                .substitute_axis(0, &BigRational::from_integer(1.into()))
                .extract_univariate(1);
            let u2 = h
                .substitute_axis(1, &BigRational::from_integer(1.into()))
                .extract_univariate(0);
            match (u1, u2) {
                (Some(c1), Some(c2)) => {
                    let ok = UniPoly::new(c1).is_positive_definite()
                        && UniPoly::new(c2).is_positive_definite();
                    if ok {
                        EllipticOutcome::Certified
                    } else {
                        EllipticOutcome::NotApplicable
                    }
                }
                _ => EllipticOutcome::NotApplicable,
            }
        }
        _ => {
            // d >= 3: dense sphere sampling gives evidence, not a proof
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x5f3e_11);
            let mut min_val = f64::INFINITY;
            for _ in 0..config.sphere_samples {
                let v: Vec<f64> = (0..d).map(|_| rng.random::<f64>() * 2.0 - 1.0).collect();
                let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                if norm < 1e-6 {
                    continue;
                }
                let unit: Vec<f64> = v.iter().map(|x| x / norm).collect();
                let val = h.eval_f64(&unit).re;
                min_val = min_val.min(val);
            }
            if min_val > 1e-9 {
                EllipticOutcome::HeuristicOnly(min_val)
            } else {
                EllipticOutcome::NotApplicable
            }
        }
    }
}

/// Searches dyadic C with C p-tilde^2 - q-tilde^2 having only even
/// exponents and nonnegative coefficients; such a polynomial is pointwise
/// nonnegative, so q-tilde <= sqrt(C) p-tilde.
pub fn even_coefficient_certify(pt: &ScalarPoly, qt: &ScalarPoly) -> Option<Certificate> {
    let mut c: u64 = 1;
    while c <= (1 << 20) {
        let scaled = pt.scale_rational(&BigRational::from_integer(c.into()));
        let diff = &scaled - qt;
        let ok = diff.terms().all(|(m, coeff)| {
            m.0.iter().all(|&e| e % 2 == 0) && coeff.is_real() && !coeff.re.is_negative()
        });
        if ok {
            return Some(Certificate::EvenCoefficient { constant: c });
        }
        c <<= 1;
    }
    None
}

/// Non-certified estimate of sup q~/p~ over a deterministic sample cloud,
/// attached to Unknown verdicts for user guidance.
fn estimate_sup_ratio(pt: &ScalarPoly, qt: &ScalarPoly, seed: u64) -> f64 {
    let d = pt.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xe5717_a7e);
    let mut best: f64 = 0.0;
    for k in 0..=20u32 {
        let radius = BigRational::from_integer(num_bigint::BigInt::from(1u64 << k));
        for _ in 0..16 {
            let pt_coords: Vec<BigRational> = (0..d)
                .map(|_| {
                    let num = rng.random_range(-8i64..=8);
                    let den = rng.random_range(1i64..=4);
                    BigRational::new(num.into(), den.into()) * &radius
                })
                .collect();
            let pv = pt.eval(&pt_coords).re;
            let qv = qt.eval(&pt_coords).re;
            if pv.is_positive() {
                let ratio = (qv / pv).to_f64().unwrap_or(0.0);
                best = best.max(ratio.sqrt());
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_scalar_str;

    fn p(src: &str, dim: usize) -> ScalarPoly {
        parse_scalar_str(src, Some(dim)).unwrap()
    }

    fn one(dim: usize) -> ScalarPoly {
        ScalarPoly::one(dim)
    }

    #[test]
    fn curve_refute_examples() {
        // p = x1, q = 1 in d = 2: along x2 both composites are constant,
        // so compactness fails but boundedness holds
        let px = p("x1", 2);
        let w = curve_refute(&px, &one(2), Mode::Compact, &[0, 1], &rat_ones(2))
            .unwrap()
            .expect("compact witness");
        assert_eq!(w.t_degrees, (Some(0), Some(0)));
        assert!(curve_refute(&px, &one(2), Mode::Strict, &[0, 1], &rat_ones(2))
            .unwrap()
            .is_none());
        // p = x1 x2, q = x1^2 + x2^2: strict witness along (t, 1)
        let w = curve_refute(
            &p("x1*x2", 2),
            &p("x1^2 + x2^2", 2),
            Mode::Strict,
            &[1, 0],
            &rat_ones(2),
        )
        .unwrap()
        .expect("strict witness");
        assert!(w.t_degrees.0 > w.t_degrees.1);
        // p = q: no witness in strict mode along any candidate
        let pp = p("x1^2*x2 - i*x1", 2);
        for w in [[1i64, 0], [0, 1], [1, 1], [2, 1]] {
            assert!(curve_refute(&pp, &pp, Mode::Strict, &w, &rat_ones(2))
                .unwrap()
                .is_none());
        }
        // degenerate weight vector rejected
        assert_eq!(
            curve_refute(&px, &one(2), Mode::Strict, &[0, 0], &rat_ones(2)),
            Err(Error::InvalidWeights)
        );
    }

    fn rat_ones(d: usize) -> Vec<BigRational> {
        vec![BigRational::from_integer(1.into()); d]
    }

    #[test]
    fn univariate_examples() {
        // q~^2 = x^2 + 1 (deg 2), p~^2 = (x^2+2)^2 (deg 4)
        let v = univariate_decide(&p("x1^2", 1), &p("x1", 1), Mode::Compact).unwrap();
        assert_eq!(v.outcome, Outcome::Dominates);
        let v = univariate_decide(&p("x1", 1), &p("x1^2", 1), Mode::Strict).unwrap();
        assert_eq!(v.outcome, Outcome::NotDominates);
        assert_eq!(v.witness.as_ref().unwrap().weights, vec![1]);
        let v = univariate_decide(&p("5", 1), &p("7", 1), Mode::Strict).unwrap();
        assert_eq!(v.outcome, Outcome::Dominates);
    }

    #[test]
    fn elliptic_examples() {
        let cfg = DecisionConfig::default();
        // p = x1^2 + x2^2 compactly dominates x1
        assert_eq!(
            elliptic_certify(&p("x1^2 + x2^2", 2), &p("x1", 2), Mode::Compact, &cfg),
            Some(Certificate::EllipticTopForm)
        );
        // h = x1^2 x2^2 vanishes at (1, 0): nothing certified
        assert_eq!(
            elliptic_certify(&p("x1*x2", 2), &p("x1", 2), Mode::Strict, &cfg),
            None
        );
        // h = x1^2 vanishes at (0, 1)
        assert_eq!(
            elliptic_certify(&p("x1", 2), &one(2), Mode::Compact, &cfg),
            None
        );
    }

    #[test]
    fn even_coefficient_examples() {
        let pt = p("x1", 1).tilde_squared();
        let qt = one(1).tilde_squared();
        assert_eq!(
            even_coefficient_certify(&pt, &qt),
            Some(Certificate::EvenCoefficient { constant: 1 })
        );
        let pt = p("x1^2 + x2^2", 2).tilde_squared();
        let qt = one(2).tilde_squared();
        assert_eq!(
            even_coefficient_certify(&pt, &qt),
            Some(Certificate::EvenCoefficient { constant: 1 })
        );
        let pt = p("x1*x2", 2).tilde_squared();
        let qt = p("x1^2 + x2^2", 2).tilde_squared();
        assert_eq!(even_coefficient_certify(&pt, &qt), None);
    }

    #[test]
    fn numerator_square_detects_structure() {
        // q = p*, target = p p*
        let f = p("(1+i)*x1^2 - x2 + 3*i", 2);
        let target = &f * &f.conjugate();
        let cert = numerator_square_certify(&target, &f.conjugate());
        assert!(matches!(cert, Some(Certificate::NumeratorSquare { .. })));
        // scaled variant
        let target2 = target.scale_rational(&BigRational::new(1.into(), 4.into()));
        assert!(numerator_square_certify(&target2, &f.conjugate()).is_some());
        // unrelated denominator
        assert!(numerator_square_certify(&p("x1^2 + 1", 2), &f).is_none());
    }

    #[test]
    fn cascade_golden_cases() {
        // Laplacian-type symbol dominates constants, compactly too
        let lap = p("x1^2 + x2^2", 2);
        let v = scalar_dominates(&lap, &one(2)).unwrap();
        assert_eq!(v.outcome, Outcome::Dominates);
        let v = scalar_compactly_dominates(&lap, &one(2)).unwrap();
        assert_eq!(v.outcome, Outcome::Dominates);
        // single first-order direction: strict holds, compact fails
        let d1 = p("x1", 2);
        let v = decide(&d1, &one(2), Mode::Strict, &DecisionConfig::default()).unwrap();
        assert_eq!(v.outcome, Outcome::Dominates);
        let v = decide(&d1, &one(2), Mode::Compact, &DecisionConfig::default()).unwrap();
        assert_eq!(v.outcome, Outcome::NotDominates);
        assert_eq!(v.witness.as_ref().unwrap().weights, vec![0, 1]);
    }

    #[test]
    fn cascade_zero_cases() {
        let z = ScalarPoly::zero(2);
        let v = decide(&z, &z, Mode::Strict, &DecisionConfig::default()).unwrap();
        assert_eq!(v.outcome, Outcome::Dominates);
        let v = decide(&z, &one(2), Mode::Strict, &DecisionConfig::default()).unwrap();
        assert_eq!(v.outcome, Outcome::NotDominates);
        let v = decide(&p("x1", 2), &z, Mode::Compact, &DecisionConfig::default()).unwrap();
        assert_eq!(v.outcome, Outcome::Dominates);
    }

    #[test]
    fn reflexivity_strict() {
        for src in ["x1*x2", "x1^2 - x2^2", "(1-i)*x1^3 + x2", "x1^2*x2^2 + 1"] {
            let f = p(src, 2);
            let v = scalar_dominates(&f, &f).unwrap();
            assert_eq!(v.outcome, Outcome::Dominates, "reflexivity for {}", src);
        }
    }

    #[test]
    fn verdicts_never_contradictory() {
        let cases = [
            ("x1^2 + x2^2", "1"),
            ("x1", "x2"),
            ("x1*x2", "x1^2 + x2^2"),
            ("x1^2 - x2^2", "1"),
        ];
        for (ps, qs) in cases {
            for mode in [Mode::Strict, Mode::Compact] {
                let v = decide(&p(ps, 2), &p(qs, 2), mode, &DecisionConfig::default()).unwrap();
                assert!(!(v.certificate.is_some() && v.witness.is_some()));
                match v.outcome {
                    Outcome::Dominates => assert!(v.certificate.is_some()),
                    Outcome::NotDominates => assert!(v.witness.is_some()),
                    Outcome::Unknown => {
                        assert!(v.certificate.is_none() && v.witness.is_none());
                        assert!(!v.note.is_empty());
                    }
                }
            }
        }
    }

    #[test]
    fn compact_implies_strict_on_samples() {
        let cases = [
            ("x1^2 + x2^2", "1"),
            ("x1^2 + x2^2", "x1"),
            ("x1", "1"),
            ("x1*x2", "x1"),
            ("x1^2*x2^2 + x1^2 + x2^2", "x1*x2"),
        ];
        for (ps, qs) in cases {
            let compact = decide(
                &p(ps, 2),
                &p(qs, 2),
                Mode::Compact,
                &DecisionConfig::default(),
            )
            .unwrap();
            if compact.outcome == Outcome::Dominates {
                let strict = decide(
                    &p(ps, 2),
                    &p(qs, 2),
                    Mode::Strict,
                    &DecisionConfig::default(),
                )
                .unwrap();
                assert_eq!(strict.outcome, Outcome::Dominates);
            }
        }
    }
}
