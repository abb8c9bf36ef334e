//! Kernels, Plancherel measure and spherical functions on `ℝⁿ × 𝕋ᵐ`.

use std::f64::consts::PI;

use proptest::prelude::*;
use subspec::abelian::*;
use subspec::multiplier::{Multiplier, Squared};
use subspec::{Error, SpectralMultiplier};

/// `J₀(u)` by its power series.
fn bessel_j0(u: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..80 {
        term *= -(u * u) / (4.0 * (k * k) as f64);
        sum += term;
    }
    sum
}

/// Heat kernel on `ℝ × 𝕋` in closed form:
/// `(2π)^{-2} √(π/t) e^{-x²/4t} Σ_k e^{-tk²} cos(ky)`.
fn heat_rt(t: f64, x: f64, y: f64) -> f64 {
    let theta: f64 = (-40i32..=40).map(|k| (-t * (k * k) as f64).exp() * (k as f64 * y).cos()).sum();
    (2.0 * PI).powi(-2) * (PI / t).sqrt() * (-x * x / (4.0 * t)).exp() * theta
}

fn rt_grid() -> AbelianGrid {
    AbelianGrid::uniform(&AbelianSpec::real_line_times_circle(), 241, 0.1, 32)
}

#[test]
fn heat_kernel_matches_closed_form() {
    let spec = AbelianSpec::real_line_times_circle();
    for t in [0.5, 1.0, 2.0] {
        let k = kernel_synthesize(&Multiplier::heat(t).unwrap(), &spec, &rt_grid()).unwrap();
        let mut worst: f64 = 0.0;
        for flat in 0..k.len() {
            let p = k.point(flat);
            worst = worst.max((k.values[flat].re - heat_rt(t, p[0], p[1])).abs());
        }
        assert!(worst < 1e-13, "t={t}: {worst}");
        assert!(k.max_imag() < 1e-14);
    }
}

#[test]
fn plancherel_and_identity_value() {
    let spec = AbelianSpec::real_line_times_circle();
    for t in [0.5, 1.0, 2.0] {
        let f = Multiplier::heat(t).unwrap();
        let k = kernel_synthesize(&f, &spec, &rt_grid()).unwrap();
        let target = sigma_integral(&Squared(&f), &spec).unwrap();
        assert!((k.norm_sq() - target).abs() < 1e-5 * target, "t={t}");
        let k0 = kernel_at_identity(&f, &spec).unwrap();
        assert!((k.get(&[120, 0]).re - k0).abs() < 1e-6 * k0);
    }
}

#[test]
fn kappa_pinned_by_closed_form_plancherel() {
    // ‖K‖² = (2π)^{-4} (π/t) √(2πt) 2π Σ e^{-2tk²} and ∫|F|² dσ = κ √(π/2t) Σ e^{-2tk²}
    let t = 0.8;
    let theta: f64 = (-40i32..=40).map(|k| (-2.0 * t * (k * k) as f64).exp()).sum();
    let norm = (2.0 * PI).powi(-4) * (PI / t) * (2.0 * PI * t).sqrt() * 2.0 * PI * theta;
    let kappa = norm / ((PI / (2.0 * t)).sqrt() * theta);
    let spec = AbelianSpec::real_line_times_circle();
    assert!((spec.kappa() - kappa).abs() < 1e-15);
    assert!((kappa - 1.0 / (4.0 * PI * PI)).abs() < 1e-15);
    let f = Multiplier::heat(t).unwrap();
    let got = sigma_integral(&Squared(&f), &spec).unwrap();
    assert!((got - norm).abs() < 1e-12 * norm);
}

#[test]
fn density_counts_lattice_points() {
    let spec = AbelianSpec::real_line_times_circle();
    let kappa = spec.kappa();
    let lambda: f64 = 0.6;
    assert!((sigma_density(lambda, &spec).unwrap() - kappa / lambda.sqrt()).abs() < 1e-15);
    let lambda: f64 = 4.5;
    let want = kappa * (1.0 / lambda.sqrt() + 2.0 / (lambda - 1.0).sqrt() + 2.0 / (lambda - 4.0).sqrt());
    assert!((sigma_density(lambda, &spec).unwrap() - want).abs() < 1e-14);
    let plane = AbelianSpec::euclidean(2).unwrap();
    let d1 = sigma_density(0.3, &plane).unwrap();
    let d2 = sigma_density(30.0, &plane).unwrap();
    assert_eq!(d1, d2);
    let torus = AbelianSpec::new(0, 1, vec![vec![1.0]]).unwrap();
    assert!(matches!(sigma_density(1.0, &torus), Err(Error::DiscreteSpectrum)));
    assert_eq!(discrete_spectrum(&torus, 4.0), vec![(0.0, 1), (1.0, 2), (4.0, 2)]);
}

#[test]
fn inversion_round_trip() {
    let spec = AbelianSpec::real_line_times_circle();
    let f = Multiplier::heat(1.0).unwrap();
    let k = kernel_synthesize(&f, &spec, &rt_grid()).unwrap();
    let lambdas: Vec<f64> = (1..=100).map(|i| 0.1 * i as f64).collect();
    for (l, v) in multiplier_invert(&k, &spec, &lambdas, 0).unwrap() {
        assert!((v - f.eval(l)).abs() < 1e-5, "lambda={l}");
    }
    assert!(matches!(
        multiplier_invert(&k, &spec, &[1100.0], 0),
        Err(Error::GridTooCoarse { .. })
    ));
    assert!(multiplier_invert(&k, &spec, &[1.0], 1).is_err());
}

#[test]
fn inversion_independent_of_axis() {
    let spec = AbelianSpec::euclidean(2).unwrap();
    let f = Multiplier::heat(1.0).unwrap();
    let k = kernel_synthesize(&f, &spec, &AbelianGrid::uniform(&spec, 61, 0.25, 0)).unwrap();
    let lambdas = [0.1, 0.7, 2.0, 5.5, 10.0];
    let a = multiplier_invert(&k, &spec, &lambdas, 0).unwrap();
    let b = multiplier_invert(&k, &spec, &lambdas, 1).unwrap();
    for (x, y) in a.iter().zip(&b) {
        assert!((x.1 - y.1).abs() < 1e-6);
        assert!((x.1 - f.eval(x.0)).abs() < 1e-5);
    }
}

#[test]
fn inverted_multiplier_continuous_and_refining() {
    // modulus of continuity of λ ↦ F̂(λ) on a fine λ-grid shrinks with the grid step
    let spec = AbelianSpec::real_line_times_circle();
    let f = Multiplier::heat(1.0).unwrap();
    let lambdas: Vec<f64> = (0..=200).map(|i| 0.1 + 0.05 * i as f64).collect();
    let jump = |h: f64, len: usize| {
        let k = kernel_synthesize(&f, &spec, &AbelianGrid::uniform(&spec, len, h, 16)).unwrap();
        let v = multiplier_invert(&k, &spec, &lambdas, 0).unwrap();
        v.windows(2).map(|w| (w[1].1 - w[0].1).abs()).fold(0.0, f64::max)
    };
    let coarse = jump(0.4, 61);
    let fine = jump(0.2, 121);
    assert!(fine <= coarse + 1e-12, "{fine} > {coarse}");
    assert!(fine < 0.05);
}

#[test]
fn zero_multiplier_and_refusals() {
    let spec = AbelianSpec::real_line_times_circle();
    let zero = Multiplier::bump(-2.0, -1.0).unwrap();
    let k = kernel_synthesize(&zero, &spec, &rt_grid()).unwrap();
    assert_eq!(k.max_abs(), 0.0);
    // e^{-λ/10} keeps |k| up to 19 active, 8 y-samples resolve |k| < 4 only
    let wide = Multiplier::heat(0.1).unwrap();
    let coarse = AbelianGrid::uniform(&spec, 41, 0.1, 8);
    assert!(matches!(kernel_synthesize(&wide, &spec, &coarse), Err(Error::GridTooCoarse { .. })));
    let torus = AbelianSpec::new(0, 1, vec![vec![1.0]]).unwrap();
    assert!(matches!(
        kernel_synthesize(&wide, &torus, &AbelianGrid::uniform(&torus, 1, 0.1, 8)),
        Err(Error::DiscreteSpectrum)
    ));
    assert!(AbelianSpec::new(1, 2, vec![vec![1.0, 2.0], vec![2.0, 4.0]]).is_err());
}

#[test]
fn skewed_torus_matches_direct_sum() {
    // ℝ × 𝕋² with a non-diagonal A against a direct lattice sum at one point
    let a = vec![vec![1.0, 0.4], vec![0.0, 1.3]];
    let spec = AbelianSpec::new(1, 2, a.clone()).unwrap();
    let t = 0.7;
    let f = Multiplier::heat(t).unwrap();
    let k = kernel_synthesize(&f, &spec, &AbelianGrid::uniform(&spec, 21, 0.25, 32)).unwrap();
    let idx = [13usize, 3, 22];
    let p = k.point(k.index(&idx));
    let mut want = 0.0;
    for k1 in -30i64..=30 {
        for k2 in -30i64..=30 {
            let c = (a[0][0] * k1 as f64 + a[0][1] * k2 as f64).powi(2)
                + (a[1][0] * k1 as f64 + a[1][1] * k2 as f64).powi(2);
            want += (-t * c).exp() * (k1 as f64 * p[1] + k2 as f64 * p[2]).cos();
        }
    }
    want *= (2.0 * PI).powi(-3) * (PI / t).sqrt() * (-p[0] * p[0] / (4.0 * t)).exp();
    assert!((k.get(&idx).re - want).abs() < 1e-13, "{} vs {want}", k.get(&idx));
}

#[test]
fn sphere_average_matches_bessel() {
    for u in [0.0, 0.3, 1.0, 2.5, 7.0] {
        let got = sphere_average(2, u).unwrap();
        assert!((got - 2.0 * PI * bessel_j0(u)).abs() < 1e-12, "u={u}");
    }
    // the series cancels badly further out
    const J0_12: f64 = 0.047_689_310_796_833_537;
    const J0_40: f64 = 0.007_366_890_584_237_290;
    assert!((sphere_average(2, 12.0).unwrap() - 2.0 * PI * J0_12).abs() < 1e-12);
    assert!((sphere_average(2, 40.0).unwrap() - 2.0 * PI * J0_40).abs() < 1e-12);
}

#[test]
fn chi_limits_and_orthogonality() {
    for h in 1..=3u32 {
        let hs = (h * h) as f64;
        for x in [0.0, 0.7, 2.3] {
            // one-sided limits are approached monotonically
            let sup = |eps: f64, right: bool| {
                (0..64)
                    .map(|i| {
                        let y = 2.0 * PI * i as f64 / 64.0;
                        let (lambda, lim) = if right {
                            (hs + eps, chi_rt_right(h, x, y).unwrap())
                        } else {
                            (hs - eps, chi_rt_left(h, x, y).unwrap())
                        };
                        (chi_rt(lambda, x, y).unwrap() - lim).abs()
                    })
                    .fold(0.0, f64::max)
            };
            for right in [false, true] {
                let d: Vec<f64> = [1e-2, 1e-4, 1e-6].iter().map(|&e| sup(e, right)).collect();
                assert!(d[0] >= d[1] && d[1] >= d[2], "h={h} x={x} right={right}: {d:?}");
                assert!(d[2] < 1e-2);
            }
            // the two limits are orthogonal in L²(𝕋) as functions of y
            let n = 64;
            let inner: f64 = (0..n)
                .map(|i| {
                    let y = 2.0 * PI * i as f64 / n as f64;
                    chi_rt_left(h, x, y).unwrap() * chi_rt_right(h, x, y).unwrap()
                })
                .sum::<f64>()
                * 2.0
                * PI
                / n as f64;
            assert!(inner.abs() < 1e-8, "h={h} x={x}: {inner}");
        }
        assert!(matches!(chi_rt(hs, 0.1, 0.2), Err(Error::JumpPoint { .. })));
    }
}

#[test]
fn chi_homogeneity() {
    let line = AbelianSpec::euclidean(1).unwrap();
    let plane = AbelianSpec::euclidean(2).unwrap();
    for t in [0.5, 2.0] {
        let (l, r) = chi_homogeneity_check(1.3, t, &[0.8], &line).unwrap();
        assert!((l - r).abs() < 1e-8);
        assert!((l - (1.3f64.sqrt() * t * 0.8).cos()).abs() < 1e-8);
        let (l, r) = chi_homogeneity_check(1.0, t, &[0.6, 0.8], &plane).unwrap();
        assert!((l - r).abs() < 1e-6);
        assert!((l - bessel_j0(t)).abs() < 1e-8, "t={t}: {l}");
    }
    let (l, r) = chi_homogeneity_check(2.0, 1.0, &[0.3, -0.4], &plane).unwrap();
    assert_eq!(l, r);
}

#[test]
fn narrow_band_kernel_is_an_eigenfunction() {
    // -ΔK_{F_δ} ≈ λ K_{F_δ} for a window F_δ of width δ at λ
    let spec = AbelianSpec::euclidean(2).unwrap();
    let lambda = 1.0;
    let f = Multiplier::window(lambda, 0.01).unwrap();
    let h = 0.05;
    let k = kernel_synthesize(&f, &spec, &AbelianGrid::uniform(&spec, 9, h, 0)).unwrap();
    for (i, j) in [(4usize, 4usize), (3, 5), (2, 4)] {
        let c = k.get(&[i, j]).re;
        let lap = (k.get(&[i + 1, j]).re + k.get(&[i - 1, j]).re + k.get(&[i, j + 1]).re + k.get(&[i, j - 1]).re
            - 4.0 * c)
            / (h * h);
        assert!((-lap - lambda * c).abs() < 1e-3 * c.abs(), "({i},{j}): {} vs {}", -lap, lambda * c);
    }
}

proptest! {
    #[test]
    fn chi_normalized_at_origin(lambda in 0.01..200.0f64) {
        prop_assume!((lambda.sqrt() - lambda.sqrt().round()).abs() > 1e-9);
        prop_assert!((chi_rt(lambda, 0.0, 0.0).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn chi_single_mode_below_one(lambda in 0.01..0.99f64, x in -5.0..5.0f64, y in 0.0..6.3f64) {
        prop_assert!((chi_rt(lambda, x, y).unwrap() - (lambda.sqrt() * x).cos()).abs() < 1e-14);
    }

    #[test]
    fn chi_bounded(lambda in 0.01..50.0f64, x in -5.0..5.0f64, y in 0.0..6.3f64) {
        prop_assume!((lambda.sqrt() - lambda.sqrt().round()).abs() > 1e-9);
        prop_assert!(chi_rt(lambda, x, y).unwrap().abs() <= 1.0 + 1e-12);
    }
}
