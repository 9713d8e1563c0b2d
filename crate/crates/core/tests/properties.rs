use dzeta::asymptotic::{approx_zeta_half, main_term_series, region_check};
use dzeta::coefficients::{
    a_coeff, a_coeffs_by_inversion, c_coeff_binomial, c_coeff_partition, c_coeffs_taylor, ratios,
};
use dzeta::kernel::riemann_zeta;
use dzeta::oracle::double_zeta_direct;
use dzeta::precision::{log2_abs, CNum};
use dzeta::PrecisionContext;
use proptest::prelude::*;
use rug::Complex;

fn ctx() -> PrecisionContext {
    PrecisionContext::new(192, 1e-45).unwrap()
}

fn scaled(a: &CNum, b: &CNum) -> f64 {
    let d = Complex::with_val(192, a - b);
    if d.is_zero() {
        return 0.0;
    }
    log2_abs(&d).exp2() / log2_abs(b).exp2().max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn three_c_routes_agree(m in 10.0..200.0f64, r2 in 0.1..0.9f64, t1 in -3.0..3.0f64, t2 in -3.0..3.0f64) {
        let c = ctx();
        let p = ratios(&c, &c.complex(-(1.0 - r2) * m, t1), &c.complex(-r2 * m, t2)).unwrap();
        for (j, taylor) in c_coeffs_taylor(&c, 10, &p).iter().enumerate() {
            prop_assert!(scaled(&c_coeff_partition(&c, j, &p), taylor) < 1e-40);
            prop_assert!(scaled(&c_coeff_binomial(&c, j, &p), taylor) < 1e-40);
        }
    }

    #[test]
    fn ratios_sum_to_one(a in -80.0..-1.0f64, b in -80.0..-1.0f64, t in -4.0..4.0f64) {
        let c = ctx();
        let p = ratios(&c, &c.complex(a, t), &c.complex(b, -t / 2.0)).unwrap();
        let total = Complex::with_val(192, &p.r1 + &p.r2);
        prop_assert!(scaled(&total, &c.one()) < 1e-50);
    }

    #[test]
    fn a_routes_agree(r2 in 0.05..0.95f64) {
        let c = ctx();
        let r = c.complex(r2, 0.0);
        for (j, inv) in a_coeffs_by_inversion(&c, 10, &r).unwrap().iter().enumerate() {
            prop_assert!(scaled(&a_coeff(&c, j, &r).unwrap(), inv) < 1e-35);
        }
    }

    #[test]
    fn symmetric_point_collapses(re in -90.0..-5.0f64, im in -2.0..2.0f64) {
        let c = ctx();
        let s = c.complex(re, im);
        let p = ratios(&c, &s, &s).unwrap();
        let base = main_term_series(&c, &p, 0).unwrap().ratio_approx;
        for n in 1..=3 {
            let r = main_term_series(&c, &p, n).unwrap().ratio_approx;
            prop_assert!(scaled(&r, &base) < 1e-40);
        }
        prop_assert!(log2_abs(&approx_zeta_half(&c, &s, &s, 2).unwrap()) < -130.0);
    }

    #[test]
    fn stuffle_identity(a in 2.2..6.0f64, b in 2.2..6.0f64, t in -1.0..1.0f64) {
        let c = ctx();
        let (s1, s2) = (c.complex(a, t), c.complex(b, -t));
        let sum = Complex::with_val(192, &s1 + &s2);
        let lhs = double_zeta_direct(&c, &s1, &s2).unwrap()
            + double_zeta_direct(&c, &s2, &s1).unwrap()
            + riemann_zeta(&c, &sum).unwrap();
        let rhs = Complex::with_val(192, riemann_zeta(&c, &s1).unwrap() * riemann_zeta(&c, &s2).unwrap());
        prop_assert!(scaled(&lhs, &rhs) < 1e-35);
    }

    #[test]
    fn region_ratio_test_matches_definition(m in 5.0..100.0f64, r2 in 0.0..1.0f64, eps in 0.02..0.3f64) {
        let c = ctx();
        let s1 = c.complex(-(1.0 - r2) * m, 0.5);
        let s2 = c.complex(-r2 * m, 0.5);
        let v = region_check(&s1, &s2, eps).unwrap();
        let ratio = 1.0 - r2;
        if (ratio - eps).abs() > 1e-9 && (ratio - 1.0 + eps).abs() > 1e-9 {
            prop_assert_eq!(v.ratio_ok, eps < ratio && ratio < 1.0 - eps);
        }
        prop_assert!(v.im1_ok && v.im2_ok);
    }
}

#[test]
fn even_integer_sum_fails_gap() {
    let c = ctx();
    let v = region_check(&c.complex(-20.0, 0.0), &c.complex(-20.0, 0.0), 0.1).unwrap();
    assert!(!v.even_gap_ok && !v.pass());
    let v = region_check(&c.complex(-20.25, 0.0), &c.complex(-20.0, 0.0), 0.1).unwrap();
    assert!(v.even_gap_ok && v.pass());
}
