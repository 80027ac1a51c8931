use proptest::prelude::*;

use rabi_core::closed_form::{
    self, asymptote_energy_flat, asymptote_energy_steep, bogoliubov_angle, critical_k, effective_spectrum,
    energy_level_at_k, epsilon_gap_factored, flat_asymptote_index, flat_asymptote_k, photon_number,
    photon_number_expectation, sr_coefficients, steep_asymptote_index, steep_asymptote_k,
};
use rabi_core::oracle::{eigen_sym, OperatorMatrix};
use rabi_core::phase::{asymptote_lines, bifurcation_branches, boundary_curve, classify_reduced};
use rabi_core::{Error, QuadraticCoefficients, RabiParams, Region};

fn frequencies() -> impl Strategy<Value = (f64, f64, f64)> {
    (0.1f64..5.0, 0.1f64..5.0, 0.5f64..2.0)
}

fn normal_triple() -> impl Strategy<Value = QuadraticCoefficients> {
    (0.05f64..10.0, -10.0f64..10.0, -0.24f64..5.0)
        .prop_map(|(a, b, c_over_a)| QuadraticCoefficients::new(a, b, c_over_a * a).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rotation_removes_the_anomalous_terms(c in normal_triple()) {
        let sol = bogoliubov_angle(&c).unwrap();
        let scale = c.a.abs() + c.c.abs();
        prop_assert!(sol.residual(&c).abs() <= 1e-12 * scale * sol.beta.cosh().powi(2));
        prop_assert!((sol.epsilon_gap - c.gap_squared().sqrt()).abs() <= 1e-12 * sol.epsilon_gap.max(1.0));
    }

    #[test]
    fn ladder_is_evenly_spaced(c in normal_triple()) {
        let levels = effective_spectrum(&c, 6).unwrap();
        let eps = c.gap_squared().sqrt();
        prop_assert!((levels[0] - (c.b - c.a / 2.0 + eps / 2.0)).abs() <= 1e-12 * (c.b.abs() + c.a + eps));
        for w in levels.windows(2) {
            prop_assert!(((w[1] - w[0]) - eps).abs() <= 1e-12 * (levels[6].abs() + eps));
        }
    }

    #[test]
    fn factored_gap_matches_direct_gap((wc, wa, hbar) in frequencies(), g_ratio in 1.0f64..20.0, offset in 0.0f64..3.0) {
        let base = RabiParams::new(wc, wa, 0.0, 0.0).unwrap().with_hbar(hbar).unwrap();
        let g = g_ratio * base.critical_coupling();
        let roots = critical_k(&base.with_g(g).unwrap()).unwrap();
        // stay outside the band between the roots
        let k = roots.k_plus * (1.0 + offset);
        let p = base.with_g(g).unwrap().with_k(k).unwrap();
        let direct = sr_coefficients(&p).gap_squared();
        let factored = epsilon_gap_factored(&p).unwrap();
        prop_assert!((factored * factored - direct).abs() <= 1e-9 * (p.cavity_quantum().powi(2) + direct));
    }

    #[test]
    fn roots_zero_the_gap((wc, wa, hbar) in frequencies(), g_ratio in 1.0f64..50.0) {
        let base = RabiParams::new(wc, wa, 0.0, 0.0).unwrap().with_hbar(hbar).unwrap();
        let p = base.with_g(g_ratio * base.critical_coupling()).unwrap();
        let roots = critical_k(&p).unwrap();
        let quantum = p.cavity_quantum();
        for k in [roots.k_minus, roots.k_plus] {
            let residue = quantum - 8.0 * k * p.g + 4.0 * hbar * wa * k * k;
            prop_assert!(residue.abs() <= 1e-10 * quantum.max(8.0 * k * p.g));
            // the boundary band is 1e-12 A² wide, narrower than rounding in 1 - 2κG + κ² once κ² ~ 1e3
            if g_ratio < 10.0 {
                prop_assert_eq!(classify_reduced(p.with_k(k).unwrap().kappa(), g_ratio).unwrap().region, Region::Boundary);
            }
        }
        prop_assert!(roots.k_minus <= roots.k_plus);
    }

    #[test]
    fn branches_are_reciprocal(g in 1.0f64..1e3) {
        let (minus, plus) = bifurcation_branches(g).unwrap();
        prop_assert!((minus * plus - 1.0).abs() <= 1e-12);
        prop_assert!(((minus + plus) / 2.0 - g).abs() <= 1e-12 * g);
        prop_assert!((boundary_curve(plus).unwrap() - g).abs() <= 1e-12 * g);
        prop_assert!((boundary_curve(minus).unwrap() - g).abs() <= 1e-12 * g);
    }

    #[test]
    fn boundary_is_sum_of_asymptotes(kappa in 1e-3f64..1e3) {
        let (steep, flat) = asymptote_lines(kappa).unwrap();
        let b = boundary_curve(kappa).unwrap();
        prop_assert!((steep + flat - b).abs() <= 1e-14 * b);
        prop_assert!(b >= 1.0 - 1e-15);
    }

    #[test]
    fn below_the_boundary_is_normal(kappa in 1e-2f64..1e2, frac in 0.0f64..0.999) {
        let g = frac * boundary_curve(kappa).unwrap();
        prop_assume!(g > 0.0);
        let point = classify_reduced(kappa, g).unwrap();
        prop_assert_ne!(point.region, Region::Superradiant);
    }

    #[test]
    fn photon_number_is_bounded_below((v, r) in (-3.0f64..3.0, 0.0f64..3.0), m in 0u32..20) {
        let n = photon_number_expectation(v, r, m);
        prop_assert!(n >= f64::from(m) - 1e-12 * n.abs().max(1.0));
        prop_assert!(n >= v * v * r.cosh().powi(2) * (1.0 - 1e-12));
        let pn = photon_number(v, m);
        prop_assert!(pn.n >= f64::from(m));
    }

    #[test]
    fn asymptotes_hit_the_indices((wc, wa, hbar) in frequencies(), g_ratio in 0.55f64..10.0, m in 0u32..6) {
        let base = RabiParams::new(wc, wa, 0.0, 0.0).unwrap().with_hbar(hbar).unwrap();
        let p = base.with_g(g_ratio * base.critical_coupling()).unwrap();

        let k = steep_asymptote_k(&p).unwrap();
        let e = asymptote_energy_steep(m, &p).unwrap();
        let level = energy_level_at_k(m, k, &p).unwrap();
        prop_assert!((e - level.energy).abs() <= 1e-9 * p.cavity_quantum() * (1.0 + level.n));
        prop_assert!((steep_asymptote_index(e, &p) - level.n).abs() <= 1e-9 * (1.0 + level.n));

        let k = flat_asymptote_k(&p).unwrap();
        let e = asymptote_energy_flat(m, &p).unwrap();
        let level = energy_level_at_k(m, k, &p).unwrap();
        prop_assert!((e - level.energy).abs() <= 1e-9 * p.cavity_quantum() * (1.0 + level.n));
        prop_assert!((flat_asymptote_index(e, &p).unwrap() - f64::from(m)).abs() <= 1e-8 * (1.0 + f64::from(m)) * g_ratio);
    }

    #[test]
    fn inside_the_roots_is_superradiant((wc, wa) in (0.1f64..5.0, 0.1f64..5.0), g_ratio in 1.01f64..20.0, t in 0.05f64..0.95) {
        let base = RabiParams::new(wc, wa, 0.0, 0.0).unwrap();
        let p = base.with_g(g_ratio * base.critical_coupling()).unwrap();
        let roots = critical_k(&p).unwrap();
        let k = roots.k_minus + t * (roots.k_plus - roots.k_minus);
        let inside = p.with_k(k).unwrap();
        let is_superradiant = matches!(closed_form::rabi_spectrum(&inside, 0), Err(Error::SuperradiantRegime { .. }));
        prop_assert!(is_superradiant);
    }

    #[test]
    fn eigen_decomposition_reconstructs(n in 1usize..24, seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut m = OperatorMatrix::zeros(n - 1, false);
        for i in 0..n {
            for j in 0..=i {
                let x: f64 = rng.gen_range(-1.0..1.0);
                m[(i, j)] = x;
                m[(j, i)] = x;
            }
        }
        let dec = eigen_sym(&m, 1e-14).unwrap();
        let err = dec.reconstruct().iter().zip(m.entries()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        prop_assert!(err <= 1e-12 * m.frobenius().max(1.0));
        prop_assert!(dec.orthonormality_error() <= 1e-12);
        let trace: f64 = (0..n).map(|i| m[(i, i)]).sum();
        let sum: f64 = dec.eigenvalues.iter().sum();
        prop_assert!((trace - sum).abs() <= 1e-11 * m.frobenius().max(1.0));
    }
}
