//! Branch maps, Plancherel density and matrix coefficients on SE(2).

mod common;

use std::f64::consts::PI;

use common::fd_oracle;
use num_complex::Complex64;
use proptest::prelude::*;
use subspec::mathieu::{Branch, ParityClass};
use subspec::multiplier::Multiplier;
use subspec::quadrature::{adaptive, AdaptiveOptions};
use subspec::se2::{bi_plancherel_check, density_terms, matrix_coefficient, plancherel_density, SpectralBranch};

/// `ψ⁻¹(λ)` on the ground branch by plain bisection of the finite-difference
/// eigenvalue over a wide bracket.
fn psi_oracle_inverse(lambda: f64, beta: f64) -> f64 {
    let (mut lo, mut hi) = (0.0, 50.0);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if fd_oracle(mid, ParityClass::EVEN_PERIODIC, 0) + beta * mid < lambda {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

// Frozen from `psi_oracle_inverse(2.0, 1.0)`.
const PSI_INV_2_BETA_1: f64 = 1.372_061_692_457_698;

#[test]
fn psi_inverse_frozen() {
    assert!((psi_oracle_inverse(2.0, 1.0) - PSI_INV_2_BETA_1).abs() < 1e-12);
    let sb = SpectralBranch::new(Branch::ground(), 1.0).unwrap();
    let q = sb.psi_inverse(2.0).unwrap();
    assert!((q - PSI_INV_2_BETA_1).abs() < 1e-9, "{q}");
}

#[test]
fn density_integrates_to_counting_function() {
    // ∫_a^b ρ = ½ Σ_b (ψ_b⁻¹(b) - ψ_b⁻¹(a)) while no branch starts in (a, b)
    let (a, b) = (1.2, 3.8);
    let beta = 0.4;
    let opts = AdaptiveOptions {
        abs_tol: 1e-14,
        rel_tol: 1e-12,
        max_depth: 30,
    };
    let integral = adaptive(a, b, opts, |l| plancherel_density(l, beta)).unwrap();
    let count: f64 = density_terms(b, beta)
        .unwrap()
        .iter()
        .map(|t| {
            let sb = SpectralBranch::new(t.branch, beta).unwrap();
            0.5 * (t.q - sb.psi_inverse(a).unwrap())
        })
        .sum();
    assert!((integral - count).abs() < 1e-9 * count, "{integral} vs {count}");
}

#[test]
fn density_jumps_where_branches_start() {
    let beta = 0.3;
    for h in 1..4 {
        let at = (h * h) as f64;
        let below = density_terms(at - 1e-9, beta).unwrap().len();
        let above = density_terms(at + 1e-9, beta).unwrap().len();
        assert!(above > below, "no branch enters at {at}");
        // new branches enter with ψ'(0) = dλ/dq(0) + β > 0, so the jump is finite
        assert!(plancherel_density(at + 1e-9, beta).unwrap() > plancherel_density(at - 1e-9, beta).unwrap());
    }
}

#[test]
fn matrix_coefficient_special_points() {
    for class in ParityClass::ALL {
        let sb = SpectralBranch::new(Branch::new(class, 1), 0.0).unwrap();
        let r = 1.7;
        let pair = sb.eigenpair(r * r).unwrap();
        let id = matrix_coefficient(r, Complex64::new(0.0, 0.0), 0.0, &pair).unwrap();
        assert!((id - 1.0).norm() < 1e-12, "{class}: {id}");
        // rotation by π acts by the antiperiodicity sign
        let sign = if class.is_antiperiodic() { -1.0 } else { 1.0 };
        let half = matrix_coefficient(r, Complex64::new(0.0, 0.0), PI, &pair).unwrap();
        assert!((half - sign).norm() < 1e-12, "{class}: {half}");
        // pure rotations: Σ c_a² cos(f_a θ)
        for theta in [0.3, 1.1, 2.9] {
            let want: f64 = pair
                .coeffs
                .iter()
                .enumerate()
                .map(|(a, c)| c * c * (class.frequency(a) as f64 * theta).cos())
                .sum();
            let got = matrix_coefficient(r, Complex64::new(0.0, 0.0), theta, &pair).unwrap();
            assert!((got - want).norm() < 1e-12, "{class} θ={theta}: {got} vs {want}");
        }
    }
}

#[test]
fn matrix_coefficient_rejects_mismatched_pair() {
    let pair = SpectralBranch::new(Branch::ground(), 0.0).unwrap().eigenpair(4.0).unwrap();
    assert!(matrix_coefficient(1.0, Complex64::new(0.5, 0.0), 0.0, &pair).is_err());
}

#[test]
fn bi_plancherel_single_case() {
    let f = Multiplier::heat(1.0).unwrap();
    let both = bi_plancherel_check(&f, 0.7).unwrap();
    assert!(both.rel_err() < 1e-6, "{both:?}");
}

fn class_strategy() -> impl Strategy<Value = ParityClass> {
    (0usize..4).prop_map(|i| ParityClass::ALL[i])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn psi_bracket_and_inverse(
        class in class_strategy(),
        k in 0usize..3,
        beta in 0.0..3.0f64,
        q in 0.0..60.0f64,
    ) {
        let sb = SpectralBranch::new(Branch::new(class, k), beta).unwrap();
        let start = sb.start();
        let v = sb.psi(q).unwrap();
        prop_assert!(v >= start + beta * q - 1e-9);
        prop_assert!(v <= start + (1.0 + beta) * q + 1e-9);
        let back = sb.psi_inverse(v).unwrap();
        prop_assert!((back - q).abs() < 1e-8 * q.max(1.0), "{back} vs {q}");
    }

    #[test]
    fn psi_strictly_increasing(
        class in class_strategy(),
        k in 0usize..3,
        beta in 0.0..2.0f64,
        q in 0.0..40.0f64,
        dq in 0.01..5.0f64,
    ) {
        let sb = SpectralBranch::new(Branch::new(class, k), beta).unwrap();
        prop_assert!(sb.psi(q + dq).unwrap() > sb.psi(q).unwrap());
        prop_assert!(sb.psi_prime(q).unwrap() > 0.0);
    }

    #[test]
    fn density_positive(lambda in 0.01..120.0f64, beta in 0.0..3.0f64) {
        let terms = density_terms(lambda, beta).unwrap();
        prop_assert!(!terms.is_empty());
        prop_assert!(terms.iter().all(|t| t.value > 0.0 && t.value.is_finite()));
        prop_assert!(terms.iter().all(|t| t.branch.free_eigenvalue() < lambda));
    }

    #[test]
    fn matrix_coefficient_bounded_and_quadrature_stable(
        class in class_strategy(),
        k in 0usize..3,
        r in 0.1..4.0f64,
        zr in -3.0..3.0f64,
        zi in -3.0..3.0f64,
        theta in 0.0..6.3f64,
    ) {
        let pair = SpectralBranch::new(Branch::new(class, k), 0.0).unwrap().eigenpair(r * r).unwrap();
        let z = Complex64::new(zr, zi);
        let m = matrix_coefficient(r, z, theta, &pair).unwrap();
        prop_assert!(m.norm() <= 1.0 + 1e-12, "{m}");
        // independent adaptive quadrature of the defining integral
        let opts = AdaptiveOptions { abs_tol: 1e-13, rel_tol: 1e-12, max_depth: 30 };
        let part = |re: bool| adaptive(0.0, 2.0 * PI, opts, |phi| {
            let phase = r * (z * Complex64::from_polar(1.0, phi)).re;
            let amp = pair.eval(theta + phi) * pair.eval(phi);
            Ok(amp * if re { phase.cos() } else { phase.sin() })
        }).unwrap();
        let want = Complex64::new(part(true), part(false));
        prop_assert!((m - want).norm() < 1e-10, "{m} vs {want}");
    }
}
