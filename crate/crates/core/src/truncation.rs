//! Finite Chapman-Enskog truncations `T_N(x) = Σ_{n=1}^{N} c_n x^{2n}`.
//!
//! A truncation is stable when `T_N(x) < 0` for every `x > 0`. Since
//! `T_N(x) = x²·p(x²)` with `p(t) = Σ c_n t^{n−1}` and `p(0) = c_1 = −1`,
//! stability is equivalent to `p` having no positive real root. That is
//! decided exactly with a Sturm sequence over the rationals; the smallest
//! positive root, when there is one, is then refined in floating point.
//!
//! Because `sign(c_n) = (−1)^n`, truncations that end on an even `n`
//! (`x⁴`, `x⁸`, ...) have a positive leading coefficient and always change
//! sign; truncations ending on an odd `n` are sign-definite as far as they
//! have been checked.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::branch::scaled_eigenvalue;
use crate::series::{ce_coefficients, CeSeries};
use crate::{Error, Result, SQRT_HALF_PI};

/// Upper end of the `x` window searched for sign changes.
pub const SEARCH_WINDOW: f64 = 2.0 * SQRT_HALF_PI;
/// Points of the default grid on `[0, √(π/2))`.
pub const DEFAULT_GRID_POINTS: usize = 200;

/// Stability classification of one truncation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TruncationReport {
    pub order: usize,
    pub stable: bool,
    /// Smallest `x > 0` with `T_N(x) = 0`, absent iff `stable`.
    pub sign_change_x: Option<f64>,
    /// Number of distinct positive roots of `T_N(x)/x²` in `x`.
    pub positive_roots: usize,
    /// `max |T_N(x) − λ̂(x)|` over the default grid.
    pub sup_error_on_grid: f64,
}

/// One row of the exact-versus-truncation table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRow {
    /// Scaled wave number `τk`.
    pub x: f64,
    pub k: f64,
    /// `λ̂(x)`, absent for supercritical `x`.
    pub exact: Option<f64>,
    /// `T_N(x)` for each requested order.
    pub truncations: Vec<f64>,
}

/// Sup-norm errors of one truncation order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrderError {
    pub order: usize,
    /// Over `[0, 0.5]`.
    pub near_origin: f64,
    /// Over `[0.9·√(π/2), √(π/2))`.
    pub near_critical: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub tau: f64,
    pub orders: Vec<usize>,
    pub rows: Vec<ComparisonRow>,
    /// Grid values of `x` at or beyond `√(π/2)`.
    pub excluded: Vec<f64>,
    pub errors: Vec<OrderError>,
}

fn check_truncation_order(series: &CeSeries, order: usize) -> Result<()> {
    if order > series.order() {
        Err(Error::OrderOutOfRange {
            order,
            min: 0,
            max: series.order(),
        })
    } else {
        Ok(())
    }
}

/// Horner's scheme in `x²` over `c_1..c_N` given as floats.
fn horner(coeffs: &[f64], x: f64) -> f64 {
    let t = x * x;
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c) * t
}

/// `T_N(x)`.
pub fn eval_truncation(series: &CeSeries, order: usize, x: f64) -> Result<f64> {
    check_truncation_order(series, order)?;
    Ok(horner(&series.to_f64()[..order], x))
}

/// Uniform grid of `points` values on `[lo, hi)`.
pub fn half_open_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    (0..points)
        .map(|i| lo + (hi - lo) * i as f64 / points as f64)
        .collect()
}

/// `max |T_N(x) − λ̂(x)|` over the given subcritical points.
pub fn sup_error(series: &CeSeries, order: usize, grid: &[f64]) -> Result<f64> {
    check_truncation_order(series, order)?;
    let coeffs = &series.to_f64()[..order];
    let mut worst: f64 = 0.0;
    for &x in grid {
        let err = (horner(coeffs, x) - scaled_eigenvalue(x)?).abs();
        worst = worst.max(err);
    }
    Ok(worst)
}

/// Decides whether `T_N < 0` on `x > 0` and locates the first sign change.
pub fn classify_stability(series: &CeSeries, order: usize) -> Result<TruncationReport> {
    check_truncation_order(series, order)?;
    if order == 0 {
        return Err(Error::OrderOutOfRange {
            order,
            min: 1,
            max: series.order(),
        });
    }
    let inner = Polynomial::new(
        series.coeffs()[..order]
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect(),
    );
    let sturm = SturmSequence::new(&inner);
    let positive_roots = sturm.positive_roots();

    let sign_change_x = if positive_roots == 0 {
        None
    } else {
        Some(smallest_positive_root(series, order, &sturm))
    };

    let grid = half_open_grid(0.0, SQRT_HALF_PI, DEFAULT_GRID_POINTS);
    Ok(TruncationReport {
        order,
        stable: sign_change_x.is_none(),
        sign_change_x,
        positive_roots,
        sup_error_on_grid: sup_error(series, order, &grid)?,
    })
}

fn smallest_positive_root(series: &CeSeries, order: usize, sturm: &SturmSequence) -> f64 {
    // Isolate the first root of p(t) exactly: count(0, lo] = 0 < count(0, hi].
    let mut hi = sturm.root_bound();
    let mut lo = BigRational::zero();
    let two = BigRational::from_integer(BigInt::from(2));
    let eps = BigRational::new(BigInt::one(), BigInt::from(1u64 << 40));
    while &hi - &lo > eps {
        let mid = (&lo + &hi) / &two;
        if sturm.count_in(&mid) == 0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let to_f64 = |r: &BigRational| -> f64 {
        use num_traits::ToPrimitive;
        r.to_f64().expect("bounded rational")
    };
    let coeffs = &series.to_f64()[..order];
    let mut a = to_f64(&lo).max(0.0).sqrt();
    let mut b = to_f64(&hi).sqrt();
    let fa = horner(coeffs, a);
    let fb = horner(coeffs, b);
    if a == 0.0 || fa.signum() == fb.signum() {
        // Even-multiplicity root or an unresolved bracket: take the midpoint.
        return 0.5 * (a + b);
    }
    loop {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = horner(coeffs, mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == fa.signum() {
            a = mid;
        } else {
            b = mid;
        }
    }
    if horner(coeffs, a).abs() <= horner(coeffs, b).abs() {
        a
    } else {
        b
    }
}

/// Table of `λ̂` and truncations on a grid of scaled wave numbers.
pub fn compare_to_exact(tau: f64, x_grid: &[f64], orders: &[usize]) -> Result<ComparisonReport> {
    if !(tau.is_finite() && tau > 0.0) {
        return Err(Error::InvalidRelaxationTime(tau));
    }
    let max_order = orders.iter().copied().max().unwrap_or(1).max(1);
    let series = ce_coefficients(max_order)?;
    if let Some(&zero) = orders.iter().find(|&&n| n == 0) {
        return Err(Error::OrderOutOfRange {
            order: zero,
            min: 1,
            max: crate::series::MAX_ORDER,
        });
    }
    let coeffs = series.to_f64();

    let mut rows = Vec::with_capacity(x_grid.len());
    let mut excluded = Vec::new();
    for &x in x_grid {
        if !x.is_finite() || x < 0.0 {
            return Err(Error::InvalidWaveNumber(x));
        }
        let exact = if x < SQRT_HALF_PI {
            Some(scaled_eigenvalue(x)?)
        } else {
            excluded.push(x);
            None
        };
        rows.push(ComparisonRow {
            x,
            k: x / tau,
            exact,
            truncations: orders.iter().map(|&n| horner(&coeffs[..n], x)).collect(),
        });
    }

    let origin = uniform_closed(0.0, 0.5, 101);
    let critical = half_open_grid(0.9 * SQRT_HALF_PI, SQRT_HALF_PI, 100);
    let errors = orders
        .iter()
        .map(|&n| {
            Ok(OrderError {
                order: n,
                near_origin: sup_error(&series, n, &origin)?,
                near_critical: sup_error(&series, n, &critical)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(ComparisonReport {
        tau,
        orders: orders.to_vec(),
        rows,
        excluded,
        errors,
    })
}

fn uniform_closed(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    (0..points)
        .map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64)
        .collect()
}

/// Dense polynomial over the rationals, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq)]
struct Polynomial {
    coeffs: Vec<BigRational>,
}

impl Polynomial {
    fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn leading(&self) -> &BigRational {
        self.coeffs.last().expect("nonzero polynomial")
    }

    fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    fn eval(&self, t: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * t + c)
    }

    /// Remainder of `self / divisor`.
    fn rem(&self, divisor: &Self) -> Self {
        let mut r = self.coeffs.clone();
        let d = divisor.degree();
        let lead = divisor.leading();
        while r.len() > d && !r.is_empty() {
            let top = r.len() - 1;
            let q = &r[top] / lead;
            if !q.is_zero() {
                for (i, c) in divisor.coeffs.iter().enumerate() {
                    let idx = top - d + i;
                    r[idx] = &r[idx] - &q * c;
                }
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        Self::new(r)
    }

    /// Divides by `|leading coefficient|`; sign patterns are unchanged.
    fn normalized(self) -> Self {
        if self.is_zero() {
            return self;
        }
        let scale = self.leading().abs();
        Self::new(self.coeffs.into_iter().map(|c| c / &scale).collect())
    }
}

/// Sturm sequence `p, p′, −rem(p, p′), ...`.
struct SturmSequence {
    chain: Vec<Polynomial>,
}

impl SturmSequence {
    fn new(p: &Polynomial) -> Self {
        let mut chain = vec![p.clone().normalized()];
        let d = p.derivative().normalized();
        if !d.is_zero() {
            chain.push(d);
        }
        while chain.len() >= 2 {
            let n = chain.len();
            let r = chain[n - 2].rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            let neg = Polynomial::new(r.coeffs.into_iter().map(|c| -c).collect());
            chain.push(neg.normalized());
        }
        Self { chain }
    }

    fn sign_changes<I: Iterator<Item = i8>>(signs: I) -> usize {
        let mut last = 0i8;
        let mut changes = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
        changes
    }

    fn sign(r: &BigRational) -> i8 {
        if r.is_positive() {
            1
        } else if r.is_negative() {
            -1
        } else {
            0
        }
    }

    fn changes_at(&self, t: &BigRational) -> usize {
        Self::sign_changes(self.chain.iter().map(|p| Self::sign(&p.eval(t))))
    }

    fn changes_at_infinity(&self) -> usize {
        Self::sign_changes(self.chain.iter().map(|p| Self::sign(p.leading())))
    }

    /// Distinct roots in `(0, t]`; `p(0) ≠ 0` is assumed.
    fn count_in(&self, t: &BigRational) -> usize {
        self.changes_at(&BigRational::zero()) - self.changes_at(t)
    }

    /// Distinct roots in `(0, ∞)`.
    fn positive_roots(&self) -> usize {
        self.changes_at(&BigRational::zero()) - self.changes_at_infinity()
    }

    /// Cauchy bound `1 + max |a_i / a_lead|` on the roots of `p`.
    fn root_bound(&self) -> BigRational {
        let p = &self.chain[0];
        let lead = p.leading().abs();
        let max = p.coeffs[..p.degree()]
            .iter()
            .map(|c| c.abs() / &lead)
            .fold(BigRational::zero(), |m, c| if c > m { c } else { m });
        max + BigRational::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(n: usize) -> CeSeries {
        ce_coefficients(n).unwrap()
    }

    #[test]
    fn single_term() {
        assert_eq!(eval_truncation(&series(1), 1, 0.5).unwrap(), -0.25);
    }

    #[test]
    fn burnett_analogue_vanishes_at_one() {
        assert_eq!(eval_truncation(&series(2), 2, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn fourth_order_value() {
        let v = eval_truncation(&series(4), 4, 0.1).unwrap();
        assert!((v + 0.009_903_73).abs() < 1e-12);
    }

    #[test]
    fn order_above_series_rejected() {
        assert!(eval_truncation(&series(2), 3, 0.1).is_err());
        assert!(classify_stability(&series(2), 0).is_err());
    }

    #[test]
    fn first_orders() {
        let s = series(4);
        let r1 = classify_stability(&s, 1).unwrap();
        assert!(r1.stable && r1.sign_change_x.is_none());
        let r2 = classify_stability(&s, 2).unwrap();
        assert!(!r2.stable);
        assert_eq!(r2.sign_change_x, Some(1.0));
        let r3 = classify_stability(&s, 3).unwrap();
        assert!(r3.stable);
        let r4 = classify_stability(&s, 4).unwrap();
        let x4 = r4.sign_change_x.unwrap();
        assert!(x4 > 0.0 && x4 < SQRT_HALF_PI);
        assert!(eval_truncation(&s, 4, x4).unwrap().abs() <= 1e-12);
    }

    #[test]
    fn sturm_counts_known_polynomial() {
        // (t − 1)(t − 2)(t + 3) = t³ − 7t + 6
        let p = Polynomial::new(
            [6, -7, 0, 1]
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        );
        let s = SturmSequence::new(&p);
        assert_eq!(s.positive_roots(), 2);
        let half = BigRational::new(3.into(), 2.into());
        assert_eq!(s.count_in(&half), 1);
    }

    #[test]
    fn comparison_origin_row() {
        let r = compare_to_exact(1.0, &[0.0, 0.5, 1.3], &[1, 2]).unwrap();
        assert_eq!(r.rows[0].exact, Some(0.0));
        assert_eq!(r.rows[0].truncations, vec![0.0, 0.0]);
        assert_eq!(r.excluded, vec![1.3]);
        assert_eq!(r.rows[2].exact, None);
        assert!(compare_to_exact(1.0, &[0.1], &[0]).is_err());
        assert!(compare_to_exact(0.0, &[0.1], &[1]).is_err());
    }
}
