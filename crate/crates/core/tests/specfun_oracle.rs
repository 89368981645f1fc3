mod common;

use common::*;
use hcontract::specfun::*;
use proptest::prelude::*;

fn close(got: f64, exact: &num_rational::BigRational, scale: &num_rational::BigRational, tol: f64) -> bool {
    (got - to_f64(exact)).abs() <= tol * to_f64(scale).max(f64::MIN_POSITIVE)
}

#[test]
fn endpoint_values_match_binomials() {
    for n in 0..=50u32 {
        for a in 0..=5u32 {
            for b in 0..=5u32 {
                let p = JacobiParams::new(n, a.into(), b.into()).unwrap();
                let exact = to_f64(&binom(u64::from(n + a), u64::from(n)).into());
                let got = jacobi_eval(p, 1.0).unwrap();
                assert!((got - exact).abs() <= 1e-12 * exact, "P_{n}^({a},{b})(1) = {got}, want {exact}");
            }
        }
    }
}

#[test]
fn legendre_small_degrees() {
    let p2 = JacobiParams::new(2, 0.0, 0.0).unwrap();
    assert_eq!(jacobi_eval(p2, 0.0).unwrap(), -0.5);
    assert_eq!(laguerre_eval(0, 0.0, 7.0).unwrap(), 1.0);
    assert!((laguerre_eval(1, 0.0, 7.0).unwrap() + 6.0).abs() < 1e-15);
}

#[test]
fn binomial_real_is_shifted_binomial() {
    for a in 0..=6u32 {
        for k in 0..=20u32 {
            let exact = to_f64(&binom(u64::from(a + k), u64::from(k)).into());
            let got = binomial_real(f64::from(a), k);
            assert!((got - exact).abs() <= 1e-13 * exact);
        }
    }
}

proptest! {
    #[test]
    fn jacobi_matches_explicit_sum(n in 0u64..40, a in 0u64..6, b in 0u64..6, x in -1.0f64..1.0) {
        let xr = dyadic(x);
        let xf = to_f64(&xr);
        let got = jacobi_eval(JacobiParams::new(n as u32, a as f64, b as f64).unwrap(), xf).unwrap();
        let exact = jacobi_exact(n, a, b, &xr);
        prop_assert!(close(got, &exact, &jacobi_abs_sum(n, a, b, &xr), 1e-13),
            "n={} a={} b={} x={}: {} vs {}", n, a, b, xf, got, to_f64(&exact));
    }

    #[test]
    fn laguerre_matches_explicit_sum(k in 0u64..40, a in 0u64..6, x in 0.0f64..30.0) {
        let xr = dyadic(x);
        let xf = to_f64(&xr);
        let got = laguerre_eval(k as u32, a as f64, xf).unwrap();
        let exact = laguerre_exact(k, a, &xr);
        // The alternating sum cancels heavily; scale the tolerance by the
        // sum of absolute terms.
        prop_assert!(close(got, &exact, &laguerre_abs_sum(k, a, &xr), 1e-13),
            "k={} a={} x={}: {} vs {}", k, a, xf, got, to_f64(&exact));
    }

    #[test]
    fn jacobi_reflection(n in 0u32..60, a in 0.0f64..5.0, b in 0.0f64..5.0, x in -1.0f64..1.0) {
        let p = jacobi_eval(JacobiParams::new(n, a, b).unwrap(), x).unwrap();
        let q = jacobi_eval(JacobiParams::new(n, b, a).unwrap(), -x).unwrap();
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!((p - sign * q).abs() <= 1e-10 * (1.0 + p.abs()));
    }

    #[test]
    fn szego_regimes_partition(deg in 1u32..500, theta in 0.0f64..std::f64::consts::PI, c in 0.1f64..3.0) {
        let r = szego_classify(deg, theta, c).unwrap();
        let edge = c / f64::from(deg);
        let expected = if theta < edge {
            SzegoTag::EdgeLeft
        } else if theta > std::f64::consts::PI - edge {
            SzegoTag::EdgeRight
        } else {
            SzegoTag::Oscillatory
        };
        prop_assert_eq!(r.tag, expected);
    }

    #[test]
    fn laguerre_zeros_are_roots(k in 1u32..25, a in 0.0f64..4.0) {
        let zs = laguerre_zeros(k, a).unwrap();
        prop_assert_eq!(zs.len(), k as usize);
        for w in zs.windows(2) {
            prop_assert!(w[0] < w[1]);
        }
        let scale = binomial_real(a, k);
        for z in zs {
            // |L_k^a(x)| e^{-x/2} <= C(k+a, k) for a >= 0.
            let damped = laguerre_eval(k, a, z).unwrap().abs() * (-0.5 * z).exp();
            prop_assert!(damped <= 1e-10 * scale, "k={} a={} z={}: {}", k, a, z, damped);
        }
    }
}
