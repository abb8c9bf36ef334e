use proptest::prelude::*;

use subspec::mathieu::{self, Branch, ParityClass, TruncationConfig};

fn class_strategy() -> impl Strategy<Value = ParityClass> {
    (0u8..2, 0u8..2).prop_map(|(i, j)| ParityClass::new(i, j).unwrap())
}

fn lambda(q: f64, class: ParityClass, k: usize) -> f64 {
    mathieu::eigenvalue(q, Branch::new(class, k), &TruncationConfig::default()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn one_lipschitz_and_increasing(
        class in class_strategy(),
        k in 0usize..4,
        q in -50.0f64..50.0,
        dq in 0.0f64..5.0,
    ) {
        let a = lambda(q, class, k);
        let b = lambda(q + dq, class, k);
        prop_assert!(b - a >= -1e-9);
        prop_assert!(b - a <= dq + 1e-9);
    }

    #[test]
    fn reflection_identity(class in class_strategy(), k in 0usize..4, q in 0.0f64..60.0) {
        let neg = lambda(-q, class, k);
        let pos = lambda(q, class.reflected(), k);
        prop_assert!((neg - (pos - q)).abs() < 1e-9, "{neg} vs {}", pos - q);
    }

    #[test]
    fn hellmann_feynman(class in class_strategy(), k in 0usize..3, q in 0.3f64..80.0) {
        let cfg = TruncationConfig::default();
        let pair = mathieu::solve_eigenpair(q, Branch::new(class, k), &cfg).unwrap();
        let h = 1e-4;
        let fd = (lambda(q + h, class, k) - lambda(q - h, class, k)) / (2.0 * h);
        let d = pair.dlambda_dq();
        prop_assert!(d > 0.0 && d <= 1.0);
        prop_assert!((d - fd).abs() <= 1e-6 * fd.abs(), "{d} vs {fd}");
    }

    #[test]
    fn orthonormal_and_ordered(class in class_strategy(), q in -30.0f64..30.0) {
        let pairs = mathieu::solve_branch(q, class, 5, &TruncationConfig::default()).unwrap();
        for (a, pa) in pairs.iter().enumerate() {
            let norm: f64 = pa.coeffs.iter().map(|c| c * c).sum();
            prop_assert!((norm - 1.0).abs() < 1e-12);
            for pb in &pairs[a + 1..] {
                prop_assert!(pb.lambda - pa.lambda > 1e-8);
                let dot: f64 = pa.coeffs.iter().zip(&pb.coeffs).map(|(x, y)| x * y).sum();
                prop_assert!(dot.abs() < 1e-10);
            }
        }
    }

    #[test]
    fn zero_count_matches_free_index(class in class_strategy(), k in 0usize..6, q in 0.05f64..60.0) {
        let pair = mathieu::solve_eigenpair(q, Branch::new(class, k), &TruncationConfig::default()).unwrap();
        prop_assert_eq!(pair.count_zeros().unwrap(), 2 * class.free_index(k));
    }

    #[test]
    fn sign_convention_and_symmetry(class in class_strategy(), k in 0usize..4, q in -20.0f64..40.0, phi in -7.0f64..7.0) {
        let pair = mathieu::solve_eigenpair(q, Branch::new(class, k), &TruncationConfig::default()).unwrap();
        if class.is_odd() {
            prop_assert!(pair.derivative(0.0) > 0.0);
        } else {
            prop_assert!(pair.eval(0.0) > 0.0);
        }
        let si = if class.is_odd() { -1.0 } else { 1.0 };
        let sj = if class.is_antiperiodic() { -1.0 } else { 1.0 };
        let h = pair.eval(phi);
        prop_assert!((pair.eval(-phi) - si * h).abs() < 1e-12);
        prop_assert!((pair.eval(phi + std::f64::consts::PI) - sj * h).abs() < 1e-12);
    }
}

#[test]
fn ground_derivative_nonincreasing() {
    let cfg = TruncationConfig::default();
    let mut prev = f64::INFINITY;
    for q in 0..=100 {
        let d = mathieu::solve_eigenpair(q as f64, Branch::ground(), &cfg)
            .unwrap()
            .dlambda_dq();
        assert!(d <= prev + 1e-13, "q={q}: {d} > {prev}");
        prev = d;
    }
}

#[test]
fn limsup_upper_bound() {
    let cfg = TruncationConfig::default();
    for q in [1e4, 1e5] {
        for class in ParityClass::ALL {
            for k in 0..3 {
                let b = Branch::new(class, k);
                let l = mathieu::eigenvalue(q, b, &cfg).unwrap();
                let bound = (2 * (2 * k + class.i() as usize) + 5) as f64 + 0.1;
                assert!(l / q.sqrt() <= bound, "{b} at q={q}");
            }
        }
    }
}
