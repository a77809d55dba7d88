//! Bessel J0/Y0 and the Hankel function H0⁽²⁾ = J0 − jY0.
//!
//! Below [`SERIES_CROSSOVER`] J0 comes from Miller's backward recurrence on
//! J_n (normalized by J0 + 2ΣJ_2k = 1) and Y0 from the Neumann series over
//! the same even orders. Backward recurrence is stable for J_n, so unlike
//! the ascending power series there is no e^x-sized cancellation. Above the
//! crossover the Hankel asymptotic expansion is used; its optimal-truncation
//! error there is ~e^(−2x), far below double precision.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;

use super::NumericsError;

/// Series/asymptotic switch point.
pub const SERIES_CROSSOVER: f64 = 20.0;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

pub fn bessel_j0(x: f64) -> Result<f64, NumericsError> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(NumericsError::Domain { x });
    }
    if x == 0.0 {
        return Ok(1.0);
    }
    Ok(j0_y0(x).0)
}

pub fn bessel_y0(x: f64) -> Result<f64, NumericsError> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(NumericsError::Domain { x });
    }
    Ok(j0_y0(x).1)
}

/// Second-kind Hankel function of order zero.
pub fn hankel0_2(x: f64) -> Result<Complex64, NumericsError> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(NumericsError::Domain { x });
    }
    let (j, y) = j0_y0(x);
    Ok(Complex64::new(j, -y))
}

/// Both functions at once (shared work); `x > 0` assumed.
pub(crate) fn j0_y0(x: f64) -> (f64, f64) {
    if x < SERIES_CROSSOVER {
        recurrence(x)
    } else {
        asymptotic(x)
    }
}

fn recurrence(x: f64) -> (f64, f64) {
    // start order well above x; J_m(x) is negligible there for x < 20
    let m = 2 * ((x as usize + 40) / 2);
    let (mut next, mut cur) = (0.0_f64, 1e-30_f64);
    let mut norm = 0.0; // J0 + 2Σ J_2k, unnormalized
    let mut neumann = 0.0; // Σ (−1)^k J_2k / k
    for n in (1..=m).rev() {
        let prev = (2.0 * n as f64 / x) * cur - next;
        next = cur;
        cur = prev;
        let order = n - 1;
        if order > 0 && order % 2 == 0 {
            let k = order / 2;
            norm += 2.0 * cur;
            neumann += if k % 2 == 0 { cur } else { -cur } / k as f64;
        }
        if cur.abs() > 1e250 {
            // tiny x: keep the unnormalized values representable
            next *= 1e-250;
            cur *= 1e-250;
            norm *= 1e-250;
            neumann *= 1e-250;
        }
    }
    norm += cur;
    let j0 = cur / norm;
    // Y0 = (2/π)[(ln(x/2) + γ) J0 − 2 Σ (−1)^k J_2k / k]
    let y0 = (2.0 / PI) * (((x * 0.5).ln() + EULER_GAMMA) * j0 - 2.0 * neumann / norm);
    (j0, y0)
}

fn asymptotic(x: f64) -> (f64, f64) {
    // P = 1 − a₂/x² + a₄/x⁴ − …,  Q = −a₁/x + a₃/x³ − …,
    // a_k = Π_{m≤k} (2m−1)² / (k! 8^k)
    let mut p = 1.0;
    let mut q = 0.0;
    let mut a = 1.0; // a_k / x^k
    let mut last = f64::INFINITY;
    for k in 1..200 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        a *= odd * odd / (8.0 * kf * x);
        if a >= last || a < 1e-20 {
            break;
        }
        last = a;
        match k % 4 {
            1 => q -= a,
            2 => p -= a,
            3 => q += a,
            _ => p += a,
        }
    }
    let (sx, cx) = x.sin_cos();
    // θ = x − π/4
    let cos_t = (cx + sx) * FRAC_1_SQRT_2;
    let sin_t = (sx - cx) * FRAC_1_SQRT_2;
    let amp = (2.0 / (PI * x)).sqrt();
    (amp * (p * cos_t - q * sin_t), amp * (p * sin_t + q * cos_t))
}
