use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use spectral_ce::branch::scaled_eigenvalue;
use spectral_ce::series::ce_coefficients;
use spectral_ce::truncation::{
    classify_stability, compare_to_exact, eval_truncation, half_open_grid, sup_error,
};
use spectral_ce::SQRT_HALF_PI;

/// `T_N(t)/t` with `t = x²`, evaluated exactly.
fn reduced_truncation(coeffs: &[BigInt], t: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in coeffs.iter().rev() {
        acc = acc * t + BigRational::from_integer(c.clone());
    }
    acc
}

#[test]
fn parity_law_up_to_order_ten() {
    let s = ce_coefficients(10).unwrap();
    for order in 1..=10 {
        let r = classify_stability(&s, order).unwrap();
        assert_eq!(r.stable, order % 2 == 1, "N = {order}");
        assert_eq!(r.sign_change_x.is_none(), r.stable);
        if r.stable {
            assert_eq!(r.positive_roots, 0);
        }
    }
}

#[test]
fn stable_truncations_are_negative_on_a_fine_grid() {
    // independent of the Sturm count: dense scan of T_N/x² in exact arithmetic
    let s = ce_coefficients(7).unwrap();
    for order in [1, 3, 5, 7] {
        let coeffs = &s.coeffs()[..order];
        for i in 1..=400 {
            // t = x² for x = 2i/400, covering (0, 2]
            let t = BigRational::new(BigInt::from(i * i), BigInt::from(200 * 200));
            assert!(reduced_truncation(coeffs, &t).is_negative(), "N = {order}, i = {i}");
        }
    }
}

#[test]
fn burnett_root_is_exactly_one() {
    let s = ce_coefficients(2).unwrap();
    let r = classify_stability(&s, 2).unwrap();
    assert_eq!(r.sign_change_x, Some(1.0));
    assert_eq!(r.positive_roots, 1);
    // −x² + x⁴ vanishes at x = 1 in exact arithmetic
    assert!(reduced_truncation(s.coeffs(), &BigRational::one()).is_zero());
    assert!(eval_truncation(&s, 2, 1.2).unwrap() > 0.0);
    assert!(scaled_eigenvalue(1.2).unwrap() < 0.0);
}

#[test]
fn sign_changes_precede_criticality() {
    let s = ce_coefficients(10).unwrap();
    let mut previous = f64::INFINITY;
    for order in (2..=10).step_by(2) {
        let x = classify_stability(&s, order).unwrap().sign_change_x.unwrap();
        assert!(x < SQRT_HALF_PI, "N = {order}: {x}");
        assert!(x < previous);
        assert!(eval_truncation(&s, order, x).unwrap().abs() <= 1e-12);
        assert!(eval_truncation(&s, order, 0.99 * x).unwrap() < 0.0);
        assert!(eval_truncation(&s, order, 1.01 * x).unwrap() > 0.0);
        previous = x;
    }
}

#[test]
fn sup_error_shrinks_with_order_near_origin() {
    let s = ce_coefficients(4).unwrap();
    let grid = half_open_grid(0.0, 0.1, 101);
    let errors: Vec<f64> = (1..=4).map(|n| sup_error(&s, n, &grid).unwrap()).collect();
    for w in errors.windows(2) {
        assert!(w[1] < w[0], "{errors:?}");
    }
}

#[test]
fn truncations_fail_near_criticality() {
    let grid = half_open_grid(0.0, SQRT_HALF_PI, 200);
    let report = compare_to_exact(1.0, &grid, &[1, 2, 3, 4]).unwrap();
    assert_eq!(report.rows.len(), 200);
    assert!(report.excluded.is_empty());
    for e in &report.errors {
        assert!(e.near_origin < e.near_critical, "N = {}", e.order);
        // the exact rate is near −1 there, so every truncation is far off
        assert!(e.near_critical > 0.1, "N = {}", e.order);
    }
}

#[test]
fn comparison_grid_endpoint_and_exclusions() {
    let x_end = SQRT_HALF_PI - 1e-3;
    let report = compare_to_exact(2.0, &[0.0, 0.5, x_end, 1.3, 2.0], &[1, 2]).unwrap();
    assert_eq!(report.excluded, vec![1.3, 2.0]);
    assert_eq!(report.rows.len(), 5);
    assert!(report.rows[3..].iter().all(|r| r.exact.is_none()));
    let last = &report.rows[2];
    assert_eq!(last.k, x_end / 2.0);
    let exact = last.exact.unwrap();
    assert!(exact > -1.0 && exact < -0.99);
    assert_eq!(report.rows[0].exact, Some(0.0));
}
