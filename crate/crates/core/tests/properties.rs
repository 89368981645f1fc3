mod common;

use common::*;
use hcontract::contraction::{heis_point, sphere_point};
use hcontract::fit::{exponent_report, loglog_fit};
use hcontract::heis::{divisor_sum, exponent_profile, qn_sq_identity, HeisContext};
use hcontract::sphere::{dim_h, Bidegree, SphereContext};
use num_rational::Rational64;
use proptest::prelude::*;
use std::f64::consts::{FRAC_PI_2, PI};

fn angles(n: usize) -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (
        proptest::collection::vec(0.0..=FRAC_PI_2, n - 1),
        proptest::collection::vec(0.0..2.0 * PI, n),
    )
}

proptest! {
    #[test]
    fn sphere_chart_lands_on_unit_sphere(
        (theta, phi) in (1usize..5).prop_flat_map(angles),
        rho in 0.0..=FRAC_PI_2,
        t in -PI..PI,
    ) {
        let x = sphere_point(&theta, rho, &phi, t).unwrap();
        let norm: f64 = x.iter().map(|z| z.norm_sqr()).sum();
        prop_assert!((norm - 1.0).abs() <= 1e-14);
        prop_assert_eq!(x.len(), phi.len() + 1);
    }

    #[test]
    fn heis_chart_has_radius_r(
        (theta, phi) in (1usize..5).prop_flat_map(angles),
        r in 0.0f64..10.0,
        t in -PI..PI,
    ) {
        let (z, tt) = heis_point(&theta, r, &phi, t).unwrap();
        let norm: f64 = z.iter().map(|w| w.norm_sqr()).sum::<f64>().sqrt();
        prop_assert!((norm - r).abs() <= 1e-13 * (1.0 + r));
        prop_assert_eq!(tt, t);
    }

    #[test]
    fn loglog_recovers_power_laws(c in 0.01f64..100.0, e in -3.0f64..3.0, x0 in 0.5f64..5.0) {
        let pts: Vec<(f64, f64)> = (0..8).map(|i| x0 * 1.7f64.powi(i)).map(|x| (x, c * x.powf(e))).collect();
        let fit = loglog_fit(&pts).unwrap();
        prop_assert!((fit.slope - e).abs() <= 1e-12);
        prop_assert!(fit.r_squared >= 1.0 - 1e-12);
    }

    #[test]
    fn verdict_monotone_in_tolerance(e in 0.0f64..2.0, predicted in 0.0f64..2.0, t1 in 0.0f64..1.0, t2 in 0.0f64..1.0) {
        let pts: Vec<(f64, f64)> = (0..5).map(|i| 2f64.powi(i + 1)).map(|x| (x, x.powf(e) * (1.0 + 0.1 * x.ln().sin()))).collect();
        let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
        let a = exponent_report("x", &pts, predicted, lo).unwrap();
        let b = exponent_report("x", &pts, predicted, hi).unwrap();
        prop_assert!(!a.pass || b.pass);
    }

    #[test]
    fn divisor_sums_match_enumeration(n in 1u32..=4, big_n in 1u64..3000) {
        let ctx = HeisContext::new(n).unwrap();
        prop_assert_eq!(divisor_sum(&ctx, big_n).unwrap().value, divisor_sum_brute(n, big_n));
        let (lhs, rhs) = qn_sq_identity(&ctx, big_n).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn dims_symmetric_and_positive(n in 1u32..5, l in 0u32..40, lp in 0u32..40) {
        let ctx = SphereContext::new(n).unwrap();
        let a = dim_h(&ctx, Bidegree::new(l, lp));
        prop_assert_eq!(a.clone(), dim_h(&ctx, Bidegree::new(lp, l)));
        prop_assert!(a > num_bigint::BigUint::from(0u8));
    }

    #[test]
    fn exponent_branches_agree_at_breakpoint(n in 1u32..40) {
        let prof = exponent_profile(n).unwrap();
        let u = prof.u_tilde();
        let (a1, a2) = prof.alpha_branches(u);
        let (r1, r2) = prof.rho_branches(u);
        prop_assert_eq!(a1, a2);
        prop_assert_eq!(r1, r2);
        prop_assert_eq!(a1, Rational64::new(-1, 2 * (2 * i64::from(n) + 1)));
        prop_assert_eq!(r1, Rational64::new(1, 2));
    }
}

#[test]
fn dims_on_rays_are_binomials() {
    for n in 1..=4u32 {
        let ctx = SphereContext::new(n).unwrap();
        for l in 0..30u64 {
            let want = binom(l + u64::from(n), l);
            let got = dim_h(&ctx, Bidegree::new(l as u32, 0));
            assert_eq!(num_bigint::BigInt::from(got), want, "n={n} l={l}");
        }
    }
}

#[test]
fn spec_dimension_example() {
    let ctx = SphereContext::new(2).unwrap();
    assert_eq!(dim_h(&ctx, Bidegree::new(1, 1)), 8u32.into());
}
