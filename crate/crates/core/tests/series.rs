mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use spectral_ce::branch::scaled_eigenvalue;
use spectral_ce::series::{
    a000699, ce_coefficients, dispersion_series, divergence_diagnostics, scaled_eigenvalue_series,
    PowerSeries, MAX_ORDER,
};
use spectral_ce::truncation::eval_truncation;
use spectral_ce::Error;

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn rat(v: BigInt) -> BigRational {
    BigRational::from_integer(v)
}

/// Naive truncated product, independent of the library's series type.
fn mul(a: &[BigRational], b: &[BigRational], len: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Naive reciprocal of a series with unit constant term.
fn reciprocal(a: &[BigRational], len: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); len];
    out[0] = a[0].recip();
    for n in 1..len {
        let mut s = BigRational::zero();
        for k in 1..=n.min(a.len() - 1) {
            s += &a[k] * &out[n - k];
        }
        out[n] = -s * &out[0];
    }
    out
}

/// Coefficients of `w(x)` with `S(w(x)) = x`, by Lagrange inversion:
/// `[x^m] w = (1/m)·[t^{m−1}] (t/S(t))^m`.
fn lagrange_reversion(len: usize) -> Vec<BigRational> {
    let moments = common::double_factorials(len);
    // S(t)/t
    let mut s_over_t = vec![BigRational::zero(); len];
    for n in 0..len.div_ceil(2) {
        let m = rat(moments[n].clone());
        s_over_t[2 * n] = if n % 2 == 0 { m } else { -m };
    }
    let h = reciprocal(&s_over_t, len);
    let mut w = vec![BigRational::zero(); len];
    let mut power = vec![BigRational::one()];
    power.resize(len, BigRational::zero());
    for m in 1..len {
        power = mul(&power, &h, len);
        w[m] = &power[m - 1] / rat(big(m as i64));
    }
    w
}

#[test]
fn first_coefficients_are_exact() {
    let s = ce_coefficients(4).unwrap();
    assert_eq!(s.coeffs(), &[big(-1), big(1), big(-4), big(27)]);
}

#[test]
fn magnitudes_match_chord_diagram_counts() {
    let s = ce_coefficients(30).unwrap();
    let a = a000699(30);
    assert_eq!(s.magnitudes(), a.terms);
    for (i, c) in s.coeffs().iter().enumerate() {
        let n = i + 1;
        assert_eq!(c.is_negative(), n % 2 == 1, "sign of c_{n}");
    }
}

#[test]
fn known_chord_diagram_values() {
    let a = a000699(10);
    let expected = [1, 1, 4, 27, 248, 2830, 38232, 593859, 10401712, 202601898];
    assert_eq!(a.terms, expected.iter().map(|&v| big(v)).collect::<Vec<_>>());
}

#[test]
fn lagrange_inversion_agrees_with_newton_reversion() {
    let order = 12;
    let len = 2 * order + 2;
    let w = lagrange_reversion(len);
    // x/w(x) = 1 + λ̂(x)
    let w_over_x: Vec<BigRational> = w[1..].to_vec();
    let mut lambda = reciprocal(&w_over_x, 2 * order + 1);
    lambda[0] -= BigRational::one();
    let s = ce_coefficients(order).unwrap();
    for n in 1..=order {
        assert_eq!(lambda[2 * n], rat(s.coeffs()[n - 1].clone()), "c_{n}");
        assert!(lambda[2 * n - 1].is_zero());
    }
}

#[test]
fn rational_reversion_is_integral_and_agrees() {
    let order = 20;
    let exact = scaled_eigenvalue_series::<BigRational>(order).unwrap();
    let ints = ce_coefficients(order).unwrap();
    for n in 1..=order {
        let c = exact.coeff(2 * n);
        assert!(c.is_integer(), "c_{n} = {c}");
        assert_eq!(c.to_integer(), ints.coeffs()[n - 1]);
    }
}

#[test]
fn reversion_self_test() {
    let len = 41;
    let s = dispersion_series::<BigInt>(len);
    let w = s.reverse(len).unwrap();
    let back = s.compose(&w, len).unwrap();
    assert_eq!(back, PowerSeries::identity(len));
    let forward = w.compose(&s, len).unwrap();
    assert_eq!(forward, PowerSeries::identity(len));
}

#[test]
fn order_out_of_range() {
    assert!(matches!(
        ce_coefficients(0),
        Err(Error::OrderOutOfRange { order: 0, .. })
    ));
    assert!(ce_coefficients(MAX_ORDER + 1).is_err());
}

#[test]
fn partial_sum_at_one_tenth() {
    let s = ce_coefficients(4).unwrap();
    let t4 = eval_truncation(&s, 4, 0.1).unwrap();
    assert!((t4 + 0.009_903_73).abs() <= 1e-6);
    assert!((scaled_eigenvalue(0.1).unwrap() + 0.009_903_73).abs() <= 1e-6);
}

#[test]
fn order_matching_with_leading_omitted_coefficient() {
    // |λ̂ − T_N| ≤ 10·x^{2N+2} on [0, 0.1] for N = 1, 2; from N = 3 on |c_{N+1}|
    // itself exceeds 10, so the bound carries (|c_{N+1}| + 1).
    let s = ce_coefficients(9).unwrap();
    let mags: Vec<f64> = s.to_f64().iter().map(|c| c.abs()).collect();
    for (order, next) in mags.iter().enumerate().skip(1).take(8) {
        let constant = if order <= 2 { 10.0 } else { next + 1.0 };
        for i in 1..=20 {
            let x = 0.005 * i as f64;
            let err = (scaled_eigenvalue(x).unwrap() - eval_truncation(&s, order, x).unwrap()).abs();
            let bound = constant * x.powi(2 * order as i32 + 2);
            // λ̂ itself carries a few ulps of absolute roundoff
            assert!(err <= bound + 4.0 * f64::EPSILON, "N = {order}, x = {x}: {err:e} > {bound:e}");
        }
    }
}

#[test]
fn divergence_report() {
    let s = ce_coefficients(30).unwrap();
    let r = divergence_diagnostics(&s).unwrap();
    assert!(r.root_test_increasing_from <= 5);
    assert!(r.root_test[29] > 3.0);
    for w in r.root_test[4..].windows(2) {
        assert!(w[1] > w[0]);
    }
    let (lo, hi) = r.ratio_band;
    assert!(lo > 0.1 && hi < 1.0, "band ({lo}, {hi})");
    assert!(r.partial_sums_vanish_at_origin);
    assert!(divergence_diagnostics(&ce_coefficients(9).unwrap()).is_err());
}

#[test]
fn json_uses_decimal_strings() {
    let s = ce_coefficients(6).unwrap();
    let json = serde_json::to_string(&s).unwrap();
    assert_eq!(json, r#"["-1","1","-4","27","-248","2830"]"#);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn prefixes_are_stable(order in 1usize..30, extra in 1usize..10) {
        let short = ce_coefficients(order).unwrap();
        let long = ce_coefficients(order + extra).unwrap();
        prop_assert_eq!(short.coeffs(), &long.coeffs()[..order]);
    }

    #[test]
    fn chord_recurrence_prefix(count in 1usize..60) {
        let a = a000699(count);
        prop_assert_eq!(a.terms.len(), count);
        prop_assert!(a.terms.iter().all(|t| t.is_positive()));
    }
}
