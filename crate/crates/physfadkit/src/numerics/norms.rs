//! Matrix 2-norm by power iteration and Gelfand spectral-radius estimates.

use num_complex::Complex64;

use super::{ComplexMatrix, NumericsError};

const RESIDUAL_TOL: f64 = 1e-10;
const STAGNATION_TOL: f64 = 1e-15;
const STAGNATION_RUN: usize = 3;
const SQUARINGS: usize = 5;

/// Largest singular value of `a`.
///
/// Power iteration on the Gram matrix `B = AᴴA` (or `AAᴴ`, whichever is
/// smaller). The iteration runs on `B^(2^SQUARINGS)` so that near-degenerate
/// top singular pairs still converge quickly, while the estimate itself is
/// the Rayleigh quotient of `B`. Two fixed start vectors are used (the second
/// guards against a start orthogonal to the dominant singular vector); the
/// larger estimate wins.
pub fn spectral_norm(a: &ComplexMatrix) -> Result<f64, NumericsError> {
    let (r, c) = a.shape();
    if r == 0 || c == 0 {
        return Ok(0.0);
    }
    if r == 1 || c == 1 {
        return Ok(a.frobenius_norm());
    }
    let scale = a.max_abs();
    if scale == 0.0 {
        return Ok(0.0);
    }
    if !scale.is_finite() {
        return Ok(f64::INFINITY);
    }
    let a = a.scale(Complex64::new(1.0 / scale, 0.0));
    let gram = if c <= r { a.adjoint().matmul(&a) } else { a.matmul(&a.adjoint()) };
    let n = gram.rows();
    let mut accel = gram.clone();
    for _ in 0..SQUARINGS {
        accel = accel.matmul(&accel);
        let m = accel.max_abs();
        if m == 0.0 {
            break;
        }
        accel = accel.scale(Complex64::new(1.0 / m, 0.0));
    }
    let cap = 10 * r.max(c) * 100;
    let start_flat = vec![Complex64::new(1.0, 0.0); n];
    // quasi-random phases (golden-ratio sequence)
    let start_phase: Vec<Complex64> = (0..n)
        .map(|i| Complex64::from_polar(1.0, std::f64::consts::TAU * ((i as f64 + 1.0) * 0.618_033_988_749_894_9).fract()))
        .collect();
    let l1 = power_gram(&gram, &accel, start_flat, cap)?;
    let l2 = power_gram(&gram, &accel, start_phase, cap)?;
    Ok(l1.max(l2).sqrt() * scale)
}

fn rayleigh(gram: &ComplexMatrix, v: &[Complex64]) -> (f64, f64) {
    let w = gram.matvec(v);
    let lambda: f64 = v.iter().zip(&w).map(|(x, y)| (x.conj() * y).re).sum::<f64>().max(0.0);
    let resid = w
        .iter()
        .zip(v)
        .map(|(y, x)| (y - x * lambda).norm_sqr())
        .sum::<f64>()
        .sqrt();
    (lambda, resid)
}

fn power_gram(gram: &ComplexMatrix, accel: &ComplexMatrix, mut v: Vec<Complex64>, cap: usize) -> Result<f64, NumericsError> {
    let nv = vnorm(&v);
    v.iter_mut().for_each(|x| *x /= nv);
    let (mut lambda, resid) = rayleigh(gram, &v);
    if resid <= RESIDUAL_TOL * lambda {
        return Ok(lambda);
    }
    let mut flat_steps = 0;
    for _ in 0..cap {
        let w = accel.matvec(&v);
        let wn = vnorm(&w);
        if wn == 0.0 {
            // v lies in the null space; this start cannot see the top singular value
            return Ok(lambda);
        }
        v = w.into_iter().map(|x| x / wn).collect();
        let (new_lambda, resid) = rayleigh(gram, &v);
        let improvement = (new_lambda - lambda).abs();
        lambda = new_lambda;
        if resid <= RESIDUAL_TOL * lambda {
            return Ok(lambda);
        }
        if improvement <= STAGNATION_TOL * lambda {
            flat_steps += 1;
            if flat_steps >= STAGNATION_RUN {
                return Ok(lambda);
            }
        } else {
            flat_steps = 0;
        }
    }
    Err(NumericsError::NonConvergence { iterations: cap })
}

fn vnorm(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Result of a Gelfand estimate `min_m ‖A^m‖₂^(1/m)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralRadiusEstimate {
    /// Upper estimate of ρ(A); `+∞` if `A` has non-finite entries.
    pub value: f64,
    /// Power at which `value` was attained.
    pub m: usize,
    pub overflowed: bool,
}

/// Gelfand spectral-radius estimate with `m = 1, 2, 4, …, ≤ m_max`.
///
/// The powers are renormalized after every squaring and their scale is
/// carried as a logarithm, so large `m` neither overflows nor underflows.
pub fn spectral_radius_estimate(a: &ComplexMatrix, m_max: usize) -> Result<SpectralRadiusEstimate, NumericsError> {
    if !a.is_square() {
        return Err(NumericsError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if !a.is_finite() {
        return Ok(SpectralRadiusEstimate {
            value: f64::INFINITY,
            m: 1,
            overflowed: true,
        });
    }
    let m_max = m_max.max(1);
    let mut power = a.clone(); // A^m / exp(log_scale)
    let mut log_scale = 0.0;
    let mut m = 1;
    let mut best = SpectralRadiusEstimate {
        value: f64::INFINITY,
        m: 1,
        overflowed: false,
    };
    loop {
        let norm = spectral_norm(&power)?;
        if norm == 0.0 {
            // nilpotent (to working precision): ρ = 0
            return Ok(SpectralRadiusEstimate { value: 0.0, m, overflowed: false });
        }
        let est = ((log_scale + norm.ln()) / m as f64).exp();
        if est <= best.value {
            best = SpectralRadiusEstimate { value: est, m, overflowed: false };
        }
        if 2 * m > m_max {
            return Ok(best);
        }
        power = power.scale(Complex64::new(1.0 / norm, 0.0));
        log_scale = 2.0 * (log_scale + norm.ln());
        power = power.matmul(&power);
        m *= 2;
    }
}
