//! Numerics against independent references: a tabulated high-precision
//! Bessel oracle and a one-sided Jacobi SVD.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use physfadkit::numerics::{bessel_j0, bessel_y0, hankel0_2, invert, spectral_norm, ComplexMatrix};

fn oracle() -> Vec<[f64; 3]> {
    include_str!("data/bessel_j0_y0.csv")
        .lines()
        .filter(|l| !l.starts_with('#') && !l.is_empty())
        .map(|l| {
            let v: Vec<f64> = l.split(',').map(|s| s.parse().unwrap()).collect();
            [v[0], v[1], v[2]]
        })
        .collect()
}

#[test]
fn bessel_matches_tabulated_values() {
    let pts = oracle();
    assert_eq!(pts.len(), 1000);
    for [x, j, y] in pts {
        let (jj, yy) = (bessel_j0(x).unwrap(), bessel_y0(x).unwrap());
        assert!((jj - j).abs() <= 1e-10 * j.abs(), "J0({x}) = {jj}, expected {j}");
        assert!((yy - y).abs() <= 1e-10 * y.abs(), "Y0({x}) = {yy}, expected {y}");
        let h = hankel0_2(x).unwrap();
        assert_eq!((h.re, h.im), (jj, -yy));
    }
}

#[test]
fn wronskian_identity() {
    // J0·Y0' − J0'·Y0 = 2/(πx), with J0' = −J1, Y0' = −Y1; check via central differences
    for &x in &[0.3, 1.7, 5.0, 11.0, 19.9, 20.1, 35.0] {
        let h = 1e-5 * x;
        let dj = (bessel_j0(x + h).unwrap() - bessel_j0(x - h).unwrap()) / (2.0 * h);
        let dy = (bessel_y0(x + h).unwrap() - bessel_y0(x - h).unwrap()) / (2.0 * h);
        let w = bessel_j0(x).unwrap() * dy - dj * bessel_y0(x).unwrap();
        let expect = 2.0 / (std::f64::consts::PI * x);
        assert!((w - expect).abs() < 1e-7 * expect, "x={x}: {w} vs {expect}");
    }
}

/// Singular values by one-sided Jacobi rotations on the columns.
fn jacobi_singular_values(a: &ComplexMatrix) -> Vec<f64> {
    let n = a.cols();
    let m = a.rows();
    let mut cols: Vec<Vec<Complex64>> = (0..n).map(|j| (0..m).map(|i| a[(i, j)]).collect()).collect();
    for _sweep in 0..100 {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha: f64 = cols[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = cols[q].iter().map(|z| z.norm_sqr()).sum();
                let gamma: Complex64 = cols[p].iter().zip(&cols[q]).map(|(u, v)| u.conj() * v).sum();
                let g = gamma.norm();
                if g <= 1e-15 * (alpha * beta).sqrt() || g == 0.0 {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let (left, right) = cols.split_at_mut(q);
                for (x, y) in left[p].iter_mut().zip(right[0].iter_mut()) {
                    let (u, v) = (*x, *y * phase.conj());
                    *x = u * c - v * s;
                    *y = u * s + v * c;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<f64> = cols.iter().map(|c| c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()).collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

fn random_matrix(r: &mut ChaCha8Rng, m: usize, n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(m, n, |_, _| Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)))
}

#[test]
fn spectral_norm_matches_jacobi_svd() {
    let mut r = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let (m, n) = (r.gen_range(1..=16), r.gen_range(1..=16));
        let a = random_matrix(&mut r, m, n);
        let expect = jacobi_singular_values(&a)[0];
        let got = spectral_norm(&a).unwrap();
        assert!((got - expect).abs() <= 1e-9 * expect, "{m}x{n}: {got} vs {expect}");
    }
}

#[test]
fn spectral_norm_near_degenerate_top_pair() {
    // singular values 1 and 1 − 1e-9 hidden behind a unitary mix
    let mut r = ChaCha8Rng::seed_from_u64(12);
    let q = random_matrix(&mut r, 6, 6);
    let d = ComplexMatrix::from_diag(&[1.0, 1.0 - 1e-9, 0.5, 0.2, 0.1, 0.0].map(|v| Complex64::new(v, 0.0)));
    let a = q.matmul(&d).matmul(&invert(&q).unwrap());
    let expect = jacobi_singular_values(&a)[0];
    let got = spectral_norm(&a).unwrap();
    assert!((got - expect).abs() <= 1e-9 * expect, "{got} vs {expect}");
}

#[test]
fn inversion_multiply_back() {
    let mut r = ChaCha8Rng::seed_from_u64(13);
    for n in [1, 2, 7, 33, 64] {
        let a = random_matrix(&mut r, n, n);
        let inv = invert(&a).unwrap();
        let resid = a.matmul(&inv).sub(&ComplexMatrix::identity(n)).max_abs();
        assert!(resid < 1e-9, "n={n}: residual {resid:e}");
    }
}
