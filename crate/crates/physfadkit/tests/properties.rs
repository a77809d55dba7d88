use num_complex::Complex64;
use proptest::prelude::*;

use physfadkit::analysis::hollow_symmetric_norm_bound;
use physfadkit::channels::{channel_exact, full_inverse};
use physfadkit::experiments::spearman;
use physfadkit::numerics::{invert, spectral_norm, ComplexMatrix, Group};
use physfadkit::physics::{assemble_interaction_matrix, green, Dipole, PhysicalConstants, RisConfiguration, Scene};

fn complex() -> impl Strategy<Value = Complex64> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(a, b)| Complex64::new(a, b))
}

fn matrix(max: usize) -> impl Strategy<Value = ComplexMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(m, n)| {
        prop::collection::vec(complex(), m * n).prop_map(move |v| ComplexMatrix::from_vec(m, n, v).unwrap())
    })
}

/// Dipoles on a coarse grid (spacing ≥ 0.5, so never too close).
fn scene(n_t: usize, n_r: usize, n_e: usize, n_s: usize) -> impl Strategy<Value = Scene> {
    let total = n_t + n_r + n_e + n_s;
    prop::sample::subsequence((0..400).collect::<Vec<usize>>(), total).prop_shuffle().prop_map(move |cells| {
        let pos: Vec<[f64; 2]> = cells.iter().map(|&c| [0.5 * (c % 20) as f64, 0.5 * (c / 20) as f64]).collect();
        let ant = |p: &[f64; 2]| Dipole::antenna(p[0], p[1]);
        let mut s = Scene::free_space(
            pos[..n_t].iter().map(ant).collect(),
            pos[n_t..n_t + n_r].iter().map(ant).collect(),
            pos[n_t + n_r + n_e..].iter().map(ant).collect(),
        )
        .unwrap();
        s.environment = pos[n_t + n_r..n_t + n_r + n_e]
            .iter()
            .map(|p| Dipole::new(p[0], p[1], 2.0, 1.0).with_losses(0.5, std::f64::consts::PI.powi(2)))
            .collect();
        s.validate().unwrap();
        s
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn green_is_symmetric(x1 in -5.0..5.0f64, y1 in -5.0..5.0f64, x2 in -5.0..5.0f64, y2 in -5.0..5.0f64, f in 0.5..2.0f64) {
        let pc = PhysicalConstants::default();
        prop_assume!(((x1 - x2).powi(2) + (y1 - y2).powi(2)).sqrt() >= 0.1);
        let k = pc.wavenumber(f);
        prop_assert_eq!(green([x1, y1], [x2, y2], k, &pc).unwrap(), green([x2, y2], [x1, y1], k, &pc).unwrap());
    }

    #[test]
    fn interaction_matrix_is_symmetric(s in scene(2, 2, 3, 3), f in 0.8..1.2f64) {
        let (w, _) = assemble_interaction_matrix(&s, f).unwrap();
        prop_assert_eq!(w.symmetry_defect(), 0.0);
    }

    #[test]
    fn channel_is_reciprocal(s in scene(2, 3, 3, 4), bits in prop::collection::vec(any::<bool>(), 4)) {
        let c = RisConfiguration::from_bits(bits);
        let (inv, b) = full_inverse(&s, &c, 1.0).unwrap();
        let (t, r) = (b.indices(Group::T), b.indices(Group::R));
        let d = inv.select(&r, &t).sub(&inv.select(&t, &r).transpose()).max_abs();
        prop_assert!(d <= 1e-10 * inv.select(&r, &t).max_abs());
        let h = channel_exact(&s, &c, 1.0).unwrap();
        prop_assert_eq!(h.entries.shape(), (3, 2));
    }

    #[test]
    fn spectral_norm_between_column_and_frobenius(a in matrix(9)) {
        let n = spectral_norm(&a).unwrap();
        let col = (0..a.cols()).map(|j| (0..a.rows()).map(|i| a[(i, j)].norm_sqr()).sum::<f64>().sqrt()).fold(0.0, f64::max);
        prop_assert!(n >= col * (1.0 - 1e-12));
        prop_assert!(n <= a.frobenius_norm() * (1.0 + 1e-12));
    }

    #[test]
    fn hollow_bound_dominates_norm(v in prop::collection::vec(complex(), 66), n in 1usize..=12) {
        let mut a = ComplexMatrix::zeros(n, n);
        let mut it = v.into_iter();
        for i in 0..n {
            for j in i + 1..n {
                let z = it.next().unwrap();
                a[(i, j)] = z;
                a[(j, i)] = z;
            }
        }
        prop_assert!(spectral_norm(&a).unwrap() <= hollow_symmetric_norm_bound(&a).unwrap() * (1.0 + 1e-12));
    }

    #[test]
    fn dominant_matrices_invert(a in matrix(12)) {
        prop_assume!(a.is_square());
        let n = a.rows();
        let b = a.add(&ComplexMatrix::identity(n).scale(Complex64::new(2.0 * n as f64, 0.0)));
        let r = b.matmul(&invert(&b).unwrap()).sub(&ComplexMatrix::identity(n)).max_abs();
        prop_assert!(r < 1e-13);
    }

    #[test]
    fn config_bitstring_round_trip(bits in prop::collection::vec(any::<bool>(), 0..40)) {
        let c = RisConfiguration::from_bits(bits);
        prop_assert_eq!(RisConfiguration::parse(&c.bitstring()).unwrap(), c.clone());
        prop_assert!(c.labels().iter().all(|l| l.abs() == 1.0));
    }

    #[test]
    fn spearman_is_rank_invariant(v in prop::collection::vec(-100.0..100.0f64, 3..20)) {
        let x: Vec<f64> = (0..v.len()).map(|i| i as f64).collect();
        let rho = spearman(&x, &v);
        prop_assert!((-1.0..=1.0).contains(&rho) || rho.is_nan());
        let cubed: Vec<f64> = v.iter().map(|t| t.powi(3) + 7.0).collect();
        let rho2 = spearman(&x, &cubed);
        prop_assert!(rho == rho2 || (rho - rho2).abs() < 1e-12 || (rho.is_nan() && rho2.is_nan()));
    }
}
