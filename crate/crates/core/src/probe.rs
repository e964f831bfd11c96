//! Numerical cross-check harness on a periodic grid.
//!
//! Test functions live on [-pi, pi)^d, supported in a ball well inside the
//! box. Operators are applied spectrally: forward DFT, multiply the
//! coefficient at integer frequency k by the symbol value at k (D = -i
//! grad makes plane waves eigenfunctions), inverse DFT. Everything here is
//! double precision and labeled empirical; the symbolic deciders never
//! consume probe output.

use crate::error::{Error, Result};
use crate::matrix::MatrixPoly;
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rustfft::FftPlanner;
use serde::Serialize;
use std::f64::consts::PI;

/// Complex samples of an N-component function on the periodic grid.
#[derive(Debug, Clone)]
pub struct GridFunction {
    pub dim: usize,
    pub n: usize,
    /// One flat row-major buffer of length n^dim per component.
    pub components: Vec<Vec<Complex64>>,
}

impl GridFunction {
    pub fn zeros(dim: usize, n: usize, ncomp: usize) -> Self {
        let len = n.pow(dim as u32);
        Self {
            dim,
            n,
            components: vec![vec![Complex64::ZERO; len]; ncomp],
        }
    }

    pub fn ncomp(&self) -> usize {
        self.components.len()
    }

    fn len(&self) -> usize {
        self.n.pow(self.dim as u32)
    }

    /// Discrete L2 norm with the grid quadrature weight (2 pi / n)^d.
    pub fn l2_norm(&self) -> f64 {
        let weight = (2.0 * PI / self.n as f64).powi(self.dim as i32);
        let sum: f64 = self
            .components
            .iter()
            .flat_map(|c| c.iter())
            .map(|z| z.norm_sqr())
            .sum();
        (weight * sum).sqrt()
    }

    /// L2 norm computed on the frequency side (Parseval).
    pub fn l2_norm_frequency(&self) -> f64 {
        let len = self.len() as f64;
        let weight = (2.0 * PI / self.n as f64).powi(self.dim as i32);
        let mut sum = 0.0;
        for comp in &self.components {
            let mut buf = comp.clone();
            fft_all_axes(&mut buf, self.dim, self.n, true);
            sum += buf.iter().map(|z| z.norm_sqr()).sum::<f64>() / len;
        }
        (weight * sum).sqrt()
    }
}

fn fft_all_axes(data: &mut [Complex64], dim: usize, n: usize, forward: bool) {
    let mut planner = FftPlanner::new();
    let fft = if forward {
        planner.plan_fft_forward(n)
    } else {
        planner.plan_fft_inverse(n)
    };
    let total = data.len();
    let mut buf = vec![Complex64::ZERO; n];
    // strides: axis a has stride n^{dim-1-a} in row-major layout
    for axis in 0..dim {
        let stride = n.pow((dim - 1 - axis) as u32);
        let block = stride * n;
        let mut base = 0;
        while base < total {
            for lane in 0..stride {
                let start = base + lane;
                for t in 0..n {
                    buf[t] = data[start + t * stride];
                }
                fft.process(&mut buf);
                for t in 0..n {
                    data[start + t * stride] = buf[t];
                }
            }
            base += block;
        }
    }
}

/// Integer frequency of DFT bin `j` for grid size n.
fn bin_frequency(j: usize, n: usize) -> i64 {
    if j < n / 2 {
        j as i64
    } else {
        j as i64 - n as i64
    }
}

fn decode_index(mut flat: usize, dim: usize, n: usize, out: &mut [usize]) {
    for axis in (0..dim).rev() {
        out[axis] = flat % n;
        flat /= n;
    }
}

/// The standard smooth cutoff: exp(1 - 1/(1 - s^2)) for s < 1, else 0.
pub fn bump(s: f64) -> f64 {
    if s.abs() < 1.0 {
        (1.0 - 1.0 / (1.0 - s * s)).exp()
    } else {
        0.0
    }
}

pub fn grid_coordinate(idx: usize, n: usize) -> f64 {
    -PI + 2.0 * PI * idx as f64 / n as f64
}

fn standard_complex_gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    // Box-Muller on uniform draws; keeps the dependency surface small
    let u1: f64 = rng.random::<f64>().max(1e-300);
    let u2: f64 = rng.random::<f64>();
    let r = (-2.0 * u1.ln()).sqrt();
    let theta = 2.0 * PI * u2;
    Complex64::new(r * theta.cos(), r * theta.sin()) / 2.0f64.sqrt()
}

fn validate_params(n: usize, max_freq: u32, rho: f64, dim: usize) -> Result<()> {
    if dim == 0 || dim > 9 {
        return Err(Error::BadProbeParams(format!("dim {} out of range", dim)));
    }
    if !n.is_power_of_two() || n < 4 {
        return Err(Error::BadProbeParams(format!(
            "grid size {} must be a power of two >= 4",
            n
        )));
    }
    if max_freq > 0 && n < 4 * max_freq as usize {
        return Err(Error::BadProbeParams(format!(
            "grid size {} too small for max frequency {} (need n >= 4K)",
            n, max_freq
        )));
    }
    if !(rho > 0.0 && rho <= 0.95) {
        return Err(Error::BadProbeParams(format!(
            "support radius {} outside (0, 0.95]",
            rho
        )));
    }
    Ok(())
}

/// Random bump-localized test function: a trigonometric polynomial with
/// standard complex Gaussian coefficients, multiplied by the cutoff so the
/// support sits inside the ball of radius rho. Bit-identical for a fixed
/// seed.
pub fn synth_test_function(
    seed: u64,
    dim: usize,
    n: usize,
    ncomp: usize,
    max_freq: u32,
    rho: f64,
) -> Result<GridFunction> {
    validate_params(n, max_freq, rho, dim)?;
    if ncomp == 0 {
        return Err(Error::BadProbeParams("need at least one component".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let len = n.pow(dim as u32);
    let k_range: Vec<i64> = (-(max_freq as i64)..=max_freq as i64).collect();
    // per-axis tables of e^{i k x_idx}
    let mut tables = Vec::with_capacity(k_range.len());
    for &k in &k_range {
        let col: Vec<Complex64> = (0..n)
            .map(|idx| Complex64::from_polar(1.0, k as f64 * grid_coordinate(idx, n)))
            .collect();
        tables.push(col);
    }
    // bump profile over the grid
    let mut cutoff = vec![0.0f64; len];
    let mut idx = vec![0usize; dim];
    for (flat, c) in cutoff.iter_mut().enumerate() {
        decode_index(flat, dim, n, &mut idx);
        let r2: f64 = idx
            .iter()
            .map(|&i| {
                let x = grid_coordinate(i, n);
                x * x
            })
            .sum();
        *c = bump(r2.sqrt() / rho);
    }

    let mut out = GridFunction::zeros(dim, n, ncomp);
    let kcount = k_range.len().pow(dim as u32);
    let mut kvec = vec![0usize; dim];
    for comp in out.components.iter_mut() {
        for kflat in 0..kcount {
            let c_k = standard_complex_gaussian(&mut rng);
            // decode the frequency tuple in the k-table basis
            let mut rem = kflat;
            for axis in (0..dim).rev() {
                kvec[axis] = rem % k_range.len();
                rem /= k_range.len();
            }
            for (flat, v) in comp.iter_mut().enumerate() {
                decode_index(flat, dim, n, &mut idx);
                let mut w = c_k;
                for axis in 0..dim {
                    w *= tables[kvec[axis]][idx[axis]];
                }
                *v += w;
            }
        }
        for (flat, v) in comp.iter_mut().enumerate() {
            *v *= cutoff[flat];
        }
    }
    Ok(out)
}

/// Applies the operator with symbol `p` spectrally. Exact on trigonometric
/// polynomials up to rounding; spectrally accurate on bump-localized data.
pub fn apply_operator(p: &MatrixPoly, u: &GridFunction) -> Result<GridFunction> {
    if p.cols() != u.ncomp() {
        return Err(Error::ShapeMismatch {
            context: "operator columns vs grid components",
            left: format!("{}", p.cols()),
            right: format!("{}", u.ncomp()),
        });
    }
    if p.dim() > u.dim {
        return Err(Error::DimensionMismatch(p.dim(), u.dim));
    }
    let n = u.n;
    let dim = u.dim;
    let len = u.len();
    // forward transforms
    let mut spectra: Vec<Vec<Complex64>> = u.components.clone();
    for s in spectra.iter_mut() {
        fft_all_axes(s, dim, n, true);
    }
    let mut out_spectra = vec![vec![Complex64::ZERO; len]; p.rows()];
    let mut idx = vec![0usize; dim];
    let mut freq = vec![0.0f64; dim];
    for flat in 0..len {
        decode_index(flat, dim, n, &mut idx);
        for axis in 0..dim {
            freq[axis] = bin_frequency(idx[axis], n) as f64;
        }
        for row in 0..p.rows() {
            let mut acc = Complex64::ZERO;
            for col in 0..p.cols() {
                let sym = p.entry(row, col).eval_f64(&freq[..p.dim()]);
                acc += sym * spectra[col][flat];
            }
            out_spectra[row][flat] = acc;
        }
    }
    // inverse transforms with 1/n^d normalization
    let scale = 1.0 / len as f64;
    for s in out_spectra.iter_mut() {
        fft_all_axes(s, dim, n, false);
        for v in s.iter_mut() {
            *v *= scale;
        }
    }
    Ok(GridFunction {
        dim,
        n,
        components: out_spectra,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct TrialRecord {
    pub trial: usize,
    /// `None` marks a degenerate trial (denominator norm below 1e-12).
    pub ratio: Option<f64>,
    pub p_norm: f64,
    pub q_norm: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProbeReport {
    pub kind: String,
    pub seed: u64,
    pub dim: usize,
    pub n: usize,
    pub trials: Vec<TrialRecord>,
    pub ratios: Vec<f64>,
    pub max_ratio: Option<f64>,
    pub degenerate: usize,
    /// (t, max ratio over excitation slots) along the probed ray.
    pub trend: Option<Vec<(u32, f64)>>,
    pub note: String,
}

impl ProbeReport {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("trial,ratio,p_norm,q_norm\n");
        for t in &self.trials {
            let ratio = t
                .ratio
                .map(|r| format!("{:.17e}", r))
                .unwrap_or_default();
            s.push_str(&format!(
                "{},{},{:.17e},{:.17e}\n",
                t.trial, ratio, t.p_norm, t.q_norm
            ));
        }
        s
    }
}

/// Grid parameters for the probes.
#[derive(Debug, Clone, Copy)]
pub struct ProbeParams {
    pub n: usize,
    pub max_freq: u32,
    pub rho: f64,
}

impl Default for ProbeParams {
    fn default() -> Self {
        Self {
            n: 128,
            max_freq: 2,
            rho: 0.9,
        }
    }
}

fn thread_pool() -> Option<rayon::ThreadPool> {
    let threads: usize = std::env::var("POLYDOM_THREADS").ok()?.parse().ok()?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .ok()
}

/// Measures ||Q(D)u|| / ||P(D)u|| over random localized test functions.
pub fn ratio_estimate(
    p: &MatrixPoly,
    q: &MatrixPoly,
    trials: usize,
    params: ProbeParams,
    seed: u64,
) -> Result<ProbeReport> {
    if q.cols() != p.cols() {
        return Err(Error::ShapeMismatch {
            context: "operators must share the input component count",
            left: format!("{}", p.cols()),
            right: format!("{}", q.cols()),
        });
    }
    let dim = p.dim().max(q.dim()).max(1);
    validate_params(params.n, params.max_freq, params.rho, dim)?;
    let ncomp = p.cols();
    let run_trial = |trial: usize| -> Result<TrialRecord> {
        let trial_seed = seed.wrapping_add((trial as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let u = synth_test_function(trial_seed, dim, params.n, ncomp, params.max_freq, params.rho)?;
        let pu = apply_operator(p, &u)?;
        let qu = apply_operator(q, &u)?;
        let p_norm = pu.l2_norm();
        let q_norm = qu.l2_norm();
        let ratio = if p_norm < 1e-12 {
            None
        } else {
            Some(q_norm / p_norm)
        };
        Ok(TrialRecord {
            trial,
            ratio,
            p_norm,
            q_norm,
        })
    };
    // trials are independent; results are reduced in trial order
    let records: Result<Vec<TrialRecord>> = match thread_pool() {
        Some(pool) => pool.install(|| {
            use rayon::prelude::*;
            (0..trials).into_par_iter().map(run_trial).collect()
        }),
        None => {
            use rayon::prelude::*;
            (0..trials).into_par_iter().map(run_trial).collect()
        }
    };
    let records = records?;
    let ratios: Vec<f64> = records.iter().filter_map(|r| r.ratio).collect();
    let degenerate = records.len() - ratios.len();
    let max_ratio = ratios.iter().cloned().fold(None, |m: Option<f64>, r| {
        Some(m.map_or(r, |m| m.max(r)))
    });
    Ok(ProbeReport {
        kind: "ratio".into(),
        seed,
        dim,
        n: params.n,
        trials: records,
        ratios,
        max_ratio,
        degenerate,
        trend: None,
        note: "empirical probe; all numbers are non-certified".into(),
    })
}

/// Oscillation probe along a ray: excites the operator pair near frequency
/// round(t v) through the pseudoinverse numerator, u_t = A(D)(e^{i k x}
/// psi e_j), scanning the excitation slot j and recording the worst ratio.
/// A growing trend evidences failure of domination along v; a plateau
/// evidences failure of compactness.
pub fn ray_oscillation_probe(
    p: &MatrixPoly,
    q: &MatrixPoly,
    direction: &[f64],
    ts: &[u32],
    params: ProbeParams,
    seed: u64,
) -> Result<ProbeReport> {
    if q.cols() != p.cols() {
        return Err(Error::ShapeMismatch {
            context: "operators must share the input component count",
            left: format!("{}", p.cols()),
            right: format!("{}", q.cols()),
        });
    }
    let dim = p.dim().max(q.dim()).max(1);
    if direction.len() != dim {
        return Err(Error::BadProbeParams(format!(
            "direction has {} entries, expected {}",
            direction.len(),
            dim
        )));
    }
    let norm = direction.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm < 1e-12 {
        return Err(Error::BadProbeParams("direction must be nonzero".into()));
    }
    validate_params(params.n, params.max_freq, params.rho, dim)?;
    let unit: Vec<f64> = direction.iter().map(|v| v / norm).collect();
    let rep = p.pseudoinverse()?;
    let slots = rep.a.cols(); // = rows of P
    let psi = synth_test_function(seed, dim, params.n, 1, params.max_freq, params.rho)?;
    let len = psi.len();
    let n = params.n;

    let mut trend = Vec::with_capacity(ts.len());
    let mut records = Vec::new();
    let mut degenerate = 0usize;
    let mut idx = vec![0usize; dim];
    for (ti, &t) in ts.iter().enumerate() {
        let kvec: Vec<i64> = unit.iter().map(|v| (t as f64 * v).round() as i64).collect();
        if kvec.iter().any(|&k| k.unsigned_abs() as usize >= n / 2) {
            return Err(Error::BadProbeParams(format!(
                "frequency {:?} exceeds the grid Nyquist limit n/2 = {}",
                kvec,
                n / 2
            )));
        }
        // modulated copy of psi
        let mut modulated = vec![Complex64::ZERO; len];
        for (flat, v) in modulated.iter_mut().enumerate() {
            decode_index(flat, dim, n, &mut idx);
            let phase: f64 = idx
                .iter()
                .zip(&kvec)
                .map(|(&i, &k)| k as f64 * grid_coordinate(i, n))
                .sum();
            *v = psi.components[0][flat] * Complex64::from_polar(1.0, phase);
        }
        let mut best: Option<(f64, f64, f64)> = None;
        for j in 0..slots {
            let mut f = GridFunction::zeros(dim, n, slots);
            f.components[j] = modulated.clone();
            let u = apply_operator(&rep.a, &f)?;
            let pu = apply_operator(p, &u)?;
            let qu = apply_operator(q, &u)?;
            let pn = pu.l2_norm();
            let qn = qu.l2_norm();
            if pn < 1e-12 {
                continue;
            }
            let ratio = qn / pn;
            if best.map_or(true, |(r, _, _)| ratio > r) {
                best = Some((ratio, pn, qn));
            }
        }
        match best {
            Some((ratio, pn, qn)) => {
                trend.push((t, ratio));
                records.push(TrialRecord {
                    trial: ti,
                    ratio: Some(ratio),
                    p_norm: pn,
                    q_norm: qn,
                });
            }
            None => {
                degenerate += 1;
                records.push(TrialRecord {
                    trial: ti,
                    ratio: None,
                    p_norm: 0.0,
                    q_norm: 0.0,
                });
            }
        }
    }
    let ratios: Vec<f64> = trend.iter().map(|&(_, r)| r).collect();
    let max_ratio = ratios.iter().cloned().fold(None, |m: Option<f64>, r| {
        Some(m.map_or(r, |m| m.max(r)))
    });
    Ok(ProbeReport {
        kind: "ray".into(),
        seed,
        dim,
        n,
        trials: records,
        ratios,
        max_ratio,
        degenerate,
        trend: Some(trend),
        note: format!(
            "empirical oscillation probe along {:?}; all numbers are non-certified",
            direction
        ),
    })
}

pub fn default_ray_schedule() -> Vec<u32> {
    vec![4, 8, 16, 32, 64]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_matrix_str;

    fn m(src: &str, dim: usize) -> MatrixPoly {
        parse_matrix_str(src, Some(dim)).unwrap()
    }

    #[test]
    fn synth_is_deterministic_and_supported() {
        let a = synth_test_function(7, 2, 32, 1, 2, 0.5).unwrap();
        let b = synth_test_function(7, 2, 32, 1, 2, 0.5).unwrap();
        assert_eq!(a.components, b.components);
        let c = synth_test_function(8, 2, 32, 1, 2, 0.5).unwrap();
        assert_ne!(a.components, c.components);
        // samples outside the support radius are exactly zero
        let mut idx = vec![0usize; 2];
        for flat in 0..a.components[0].len() {
            decode_index(flat, 2, 32, &mut idx);
            let r: f64 = idx
                .iter()
                .map(|&i| grid_coordinate(i, 32).powi(2))
                .sum::<f64>()
                .sqrt();
            if r >= 0.5 {
                assert_eq!(a.components[0][flat], Complex64::ZERO);
            }
        }
    }

    #[test]
    fn synth_rejects_bad_params() {
        assert!(synth_test_function(0, 2, 30, 1, 2, 0.5).is_err()); // not a power of two
        assert!(synth_test_function(0, 2, 4, 1, 2, 0.5).is_err()); // n < 4K
        assert!(synth_test_function(0, 2, 32, 1, 2, 0.99).is_err()); // rho too big
    }

    #[test]
    fn parseval_consistency() {
        let u = synth_test_function(3, 2, 64, 2, 3, 0.8).unwrap();
        let a = u.l2_norm();
        let b = u.l2_norm_frequency();
        assert!((a - b).abs() <= 1e-10 * a.max(1.0));
    }

    #[test]
    fn identity_and_zero_symbols() {
        let u = synth_test_function(1, 2, 32, 2, 2, 0.8).unwrap();
        let id = MatrixPoly::identity(2, 2);
        let v = apply_operator(&id, &u).unwrap();
        for (a, b) in u.components.iter().zip(&v.components) {
            for (x, y) in a.iter().zip(b) {
                assert!((x - y).norm() < 1e-12);
            }
        }
        let z = MatrixPoly::zero(2, 2, 2);
        let w = apply_operator(&z, &u).unwrap();
        assert!(w.l2_norm() < 1e-14);
    }

    #[test]
    fn spectral_derivative_matches_analytic_product_rule() {
        // u(x) = bump(|x|/rho) e^{i 3 x}; D = -i d/dx gives
        // D u = e^{i 3x} (3 bump - i bump')
        let n = 256;
        let rho = 0.9f64;
        let mut u = GridFunction::zeros(1, n, 1);
        let mut expected = vec![Complex64::ZERO; n];
        for idx in 0..n {
            let x = grid_coordinate(idx, n);
            let s = x / rho;
            let b = bump(s);
            let db = if s.abs() < 1.0 {
                let d = 1.0 - s * s;
                b * (-2.0 * s / (d * d)) / rho
            } else {
                0.0
            };
            let phase = Complex64::from_polar(1.0, 3.0 * x);
            u.components[0][idx] = phase * b;
            expected[idx] = phase * (Complex64::new(3.0 * b, 0.0) - Complex64::i() * db);
        }
        let d1 = m("[x1]", 1);
        let got = apply_operator(&d1, &u).unwrap();
        let num: f64 = got.components[0]
            .iter()
            .zip(&expected)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        let den: f64 = expected.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        assert!(num / den < 1e-6, "relative error {}", num / den);
    }

    #[test]
    fn ratio_estimate_equal_operators() {
        let p = m("[x1^2 + x2^2]", 2);
        let report = ratio_estimate(
            &p,
            &p,
            4,
            ProbeParams {
                n: 32,
                max_freq: 2,
                rho: 0.8,
            },
            11,
        )
        .unwrap();
        assert_eq!(report.degenerate, 0);
        for r in &report.ratios {
            assert!((r - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn divergence_curl_trial_is_degenerate() {
        // u = (D2 phi, -D1 phi) annihilates the divergence symbol row
        let n = 64;
        let phi = synth_test_function(5, 2, n, 1, 2, 0.8).unwrap();
        let d2 = apply_operator(&m("[x2]", 2), &phi).unwrap();
        let d1 = apply_operator(&m("[x1]", 2), &phi).unwrap();
        let mut u = GridFunction::zeros(2, n, 2);
        u.components[0] = d2.components[0].clone();
        u.components[1] = d1.components[0].iter().map(|z| -z).collect();
        let div = m("[x1, x2]", 2);
        let pu = apply_operator(&div, &u).unwrap();
        assert!(pu.l2_norm() < 1e-10);
        let qu = apply_operator(&MatrixPoly::identity(2, 2), &u).unwrap();
        assert!(qu.l2_norm() > 1e-3);
    }

    #[test]
    fn ray_probe_equal_operators_is_flat_at_one() {
        let p = m("[x1^2 + x2^2, x1; x2, 0]", 2);
        let report = ray_oscillation_probe(
            &p,
            &p,
            &[1.0, 0.0],
            &[4, 8],
            ProbeParams {
                n: 64,
                max_freq: 1,
                rho: 0.8,
            },
            0,
        )
        .unwrap();
        for &(_, r) in report.trend.as_ref().unwrap() {
            assert!((r - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn ray_probe_decay_for_strong_operator() {
        // second-order symbol vs constants: ratios fall like t^-2
        let p = m("[x1^2 + x2^2]", 2);
        let q = m("[1]", 2);
        let report = ray_oscillation_probe(
            &p,
            &q,
            &[1.0, 0.0],
            &[4, 8, 16],
            ProbeParams {
                n: 128,
                max_freq: 1,
                rho: 0.8,
            },
            0,
        )
        .unwrap();
        let trend = report.trend.unwrap();
        assert!(trend[1].1 < trend[0].1);
        assert!(trend[2].1 < trend[1].1);
    }
}
