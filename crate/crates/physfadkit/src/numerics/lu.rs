//! LU factorization with partial pivoting.

use num_complex::Complex64;

use super::{ComplexMatrix, NumericsError};

/// Below this reciprocal condition number inversion is refused.
pub const RCOND_REFUSE: f64 = 1e-14;
/// Below this the result is returned but flagged.
pub const RCOND_WARN: f64 = 1e-12;

/// Packed `PA = LU` factors (unit lower triangle implicit).
#[derive(Clone, Debug)]
pub struct Lu {
    n: usize,
    lu: Vec<Complex64>,
    perm: Vec<usize>,
    norm1: f64,
}

impl Lu {
    pub fn factor(a: &ComplexMatrix) -> Result<Self, NumericsError> {
        if !a.is_square() {
            return Err(NumericsError::NotSquare {
                rows: a.rows(),
                cols: a.cols(),
            });
        }
        let n = a.rows();
        let norm1 = norm_1(a);
        let mut lu = a.as_slice().to_vec();
        let mut perm: Vec<usize> = (0..n).collect();

        for k in 0..n {
            let mut p = k;
            let mut best = lu[k * n + k].norm();
            for i in k + 1..n {
                let v = lu[i * n + k].norm();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if !(best > f64::MIN_POSITIVE) {
                return Err(NumericsError::SingularMatrix { pivot_index: k });
            }
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
            }
            let inv_pivot = lu[k * n + k].inv();
            let (upper, lower) = lu.split_at_mut((k + 1) * n);
            let pivot_row = &upper[k * n + k + 1..k * n + n];
            for row in lower.chunks_exact_mut(n) {
                let l = row[k] * inv_pivot;
                row[k] = l;
                if l != Complex64::new(0.0, 0.0) {
                    for (x, &u) in row[k + 1..].iter_mut().zip(pivot_row) {
                        *x -= l * u;
                    }
                }
            }
        }
        Ok(Self { n, lu, perm, norm1 })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Solve `A X = B` for a block of right-hand sides.
    pub fn solve(&self, b: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(b.rows(), self.n, "rhs row count mismatch");
        let n = self.n;
        let m = b.cols();
        let mut x = ComplexMatrix::zeros(n, m);
        {
            let xs = x.as_mut_slice();
            for (i, &p) in self.perm.iter().enumerate() {
                xs[i * m..(i + 1) * m].copy_from_slice(b.row(p));
            }
            // forward substitution with unit L
            for i in 1..n {
                let (done, rest) = xs.split_at_mut(i * m);
                let xi = &mut rest[..m];
                for k in 0..i {
                    let l = self.lu[i * n + k];
                    if l == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    for (a, &b) in xi.iter_mut().zip(&done[k * m..(k + 1) * m]) {
                        *a -= l * b;
                    }
                }
            }
            for i in (0..n).rev() {
                let (head, tail) = xs.split_at_mut((i + 1) * m);
                let xi = &mut head[i * m..];
                for k in i + 1..n {
                    let u = self.lu[i * n + k];
                    if u == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    let xk = &tail[(k - i - 1) * m..(k - i) * m];
                    for (a, &b) in xi.iter_mut().zip(xk) {
                        *a -= u * b;
                    }
                }
                let d = self.lu[i * n + i].inv();
                for a in xi.iter_mut() {
                    *a *= d;
                }
            }
        }
        x
    }

    pub fn solve_vec(&self, b: &[Complex64]) -> Vec<Complex64> {
        self.solve(&ComplexMatrix::column(b)).into_vec()
    }

    pub fn inverse(&self) -> ComplexMatrix {
        self.solve(&ComplexMatrix::identity(self.n))
    }

    /// 1-norm of the factored matrix (kept from factorization time).
    pub fn norm1(&self) -> f64 {
        self.norm1
    }
}

/// Inverse together with its 1-norm reciprocal condition number.
#[derive(Clone, Debug)]
pub struct Inversion {
    pub inverse: ComplexMatrix,
    pub rcond: f64,
}

impl Inversion {
    pub fn ill_conditioned(&self) -> bool {
        self.rcond < RCOND_WARN
    }
}

/// Matrix inverse by LU with partial pivoting.
pub fn invert(m: &ComplexMatrix) -> Result<ComplexMatrix, NumericsError> {
    invert_checked(m).map(|r| r.inverse)
}

/// Like [`invert`] but also reports `rcond = 1/(‖M‖₁‖M⁻¹‖₁)`.
pub fn invert_checked(m: &ComplexMatrix) -> Result<Inversion, NumericsError> {
    let lu = Lu::factor(m)?;
    let inverse = lu.inverse();
    if !inverse.is_finite() {
        return Err(NumericsError::SingularMatrix { pivot_index: m.rows() });
    }
    let denom = lu.norm1() * norm_1(&inverse);
    let rcond = if denom > 0.0 { 1.0 / denom } else { 0.0 };
    if rcond < RCOND_REFUSE {
        return Err(NumericsError::IllConditioned { rcond });
    }
    Ok(Inversion { inverse, rcond })
}

fn norm_1(a: &ComplexMatrix) -> f64 {
    (0..a.cols())
        .map(|j| (0..a.rows()).map(|i| a[(i, j)].norm()).sum::<f64>())
        .fold(0.0, f64::max)
}
