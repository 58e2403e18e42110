//! Exact Chapman-Enskog coefficients of the scaled diffusion eigenvalue.
//!
//! For large `y`, `φ(y) = Im Z(iy)` has the asymptotic moment expansion
//! `φ(y) ~ Σ_{n≥0} (−1)^n (2n−1)!! y^{−2n−1}`. Writing `w = 1/y` turns the
//! branch equation `φ(y) = x` into `S(w) = x` with
//! `S(w) = Σ (−1)^n (2n−1)!! w^{2n+1}`. Reverting `S` gives `w(x)` and the
//! scaled eigenvalue is `λ̂(x) = x·y − 1 = x/w(x) − 1 = Σ_{n≥1} c_n x^{2n}`.
//!
//! The magnitudes `|c_n|` are the irreducible chord-diagram counts
//! `1, 1, 4, 27, 248, ...`, which [`a000699`] produces from an independent
//! quadratic recurrence.

mod power;

pub use power::{Coefficient, PowerSeries};

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::{Error, Result};

/// Largest supported truncation order of [`ce_coefficients`].
pub const MAX_ORDER: usize = 200;

/// Exact coefficients `c_1..c_N` of `λ̂(x) = Σ c_n x^{2n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CeSeries {
    coeffs: Vec<BigInt>,
}

/// Positive integer sequence `a_1..a_N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntSequence {
    pub terms: Vec<BigInt>,
}

impl CeSeries {
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// `c_1..c_N`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `c_n` for `1 ≤ n ≤ order`.
    pub fn coeff(&self, n: usize) -> Option<&BigInt> {
        n.checked_sub(1).and_then(|i| self.coeffs.get(i))
    }

    pub fn magnitudes(&self) -> Vec<BigInt> {
        self.coeffs.iter().map(|c| c.abs()).collect()
    }

    /// Coefficients rounded to `f64`; infinite once they exceed its range.
    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::INFINITY * sign_f64(c)))
            .collect()
    }

    pub fn decimal_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

/// Serialized as a JSON array of decimal strings so big integers never pass
/// through binary floating point.
impl Serialize for CeSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&c.to_string())?;
        }
        seq.end()
    }
}

fn sign_f64(c: &BigInt) -> f64 {
    if c.sign() == Sign::Minus {
        -1.0
    } else {
        1.0
    }
}

/// Natural logarithm of `|a|` without overflowing `f64` for huge integers.
pub fn ln_abs(a: &BigInt) -> f64 {
    let bits = a.bits();
    if bits <= 1000 {
        return a.abs().to_f64().expect("fits in f64").ln();
    }
    let shift = bits - 64;
    let top = (a.abs() >> shift).to_f64().expect("64-bit value");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Double factorials `(2n−1)!!` for `n = 0..=count`, i.e. the even moments
/// `1, 1, 3, 15, 105, ...` of the unit Gaussian.
pub fn gaussian_moment_series(count: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(count + 1);
    let mut m = BigInt::one();
    out.push(m.clone());
    for n in 1..=count {
        m *= BigInt::from(2 * n - 1);
        out.push(m.clone());
    }
    out
}

/// `S(w) = Σ_{n≥0} (−1)^n (2n−1)!! w^{2n+1}`, truncated to `len` terms
/// (powers `w^0..w^{len−1}`).
pub fn dispersion_series<T: Coefficient + From<BigInt>>(len: usize) -> PowerSeries<T> {
    let moments = gaussian_moment_series(len / 2);
    let mut coeffs = vec![T::zero(); len];
    for (n, m) in moments.into_iter().enumerate() {
        let degree = 2 * n + 1;
        if degree >= len {
            break;
        }
        let c = T::from(m);
        coeffs[degree] = if n % 2 == 0 { c } else { -c };
    }
    PowerSeries::new(coeffs)
}

/// Full series `λ̂(x) = x/w(x) − 1` modulo `x^{2N+1}` over the ring `T`.
pub fn scaled_eigenvalue_series<T: Coefficient + From<BigInt>>(
    order: usize,
) -> Result<PowerSeries<T>> {
    check_order(order)?;
    let len = 2 * order + 2;
    let s = dispersion_series::<T>(len);
    let w = s.reverse(len)?;
    // w(x)/x: drop the zero constant term.
    let w_over_x = PowerSeries::new(w.coeffs()[1..].to_vec());
    let mut lambda = w_over_x.inverse(2 * order + 1)?.into_coeffs();
    lambda[0] = lambda[0].clone() - T::one();
    Ok(PowerSeries::new(lambda))
}

fn check_order(order: usize) -> Result<()> {
    if (1..=MAX_ORDER).contains(&order) {
        Ok(())
    } else {
        Err(Error::OrderOutOfRange {
            order,
            min: 1,
            max: MAX_ORDER,
        })
    }
}

/// Exact Chapman-Enskog coefficients `c_1..c_N` by series reversion.
pub fn ce_coefficients(order: usize) -> Result<CeSeries> {
    let series = scaled_eigenvalue_series::<BigInt>(order)?;
    let coeffs = series.coeffs();
    // λ̂ is even with λ̂(0) = 0.
    debug_assert!(coeffs[0].is_zero());
    debug_assert!(coeffs.iter().skip(1).step_by(2).all(Zero::is_zero));
    Ok(CeSeries {
        coeffs: (1..=order).map(|n| coeffs[2 * n].clone()).collect(),
    })
}

/// Irreducible chord diagrams: `a_1 = 1`,
/// `a_n = (n−1)·Σ_{j=1}^{n−1} a_j a_{n−j}`.
pub fn a000699(count: usize) -> IntSequence {
    let mut terms: Vec<BigInt> = Vec::with_capacity(count);
    for n in 1..=count {
        if n == 1 {
            terms.push(BigInt::one());
            continue;
        }
        let mut sum = BigInt::zero();
        for j in 1..n {
            sum += &terms[j - 1] * &terms[n - j - 1];
        }
        terms.push(sum * BigInt::from(n - 1));
    }
    IntSequence { terms }
}

/// Growth diagnostics of a coefficient sequence.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DivergenceReport {
    /// `|c_n| / (2n−1)!!` for `n = 1..N`.
    pub ratios: Vec<f64>,
    /// Root-test values `|c_n|^{1/(2n)}` for `n = 1..N`.
    pub root_test: Vec<f64>,
    /// Smallest `n₀` with `ρ_n` strictly increasing on `n₀..=N`.
    pub root_test_increasing_from: usize,
    /// `1/ρ_N`, an upper estimate of the radius of convergence in `x`; it keeps
    /// shrinking as `N` grows.
    pub radius_estimate: f64,
    /// `(min, max)` of the ratios over `n = 10..N`.
    pub ratio_band: (f64, f64),
    /// Every partial sum vanishes at `x = 0`.
    pub partial_sums_vanish_at_origin: bool,
}

impl DivergenceReport {
    /// Human-readable summary of the root test.
    pub fn verdict(&self) -> String {
        format!(
            "root-test values increase from n = {} to n = {} (last {:.4}); \
             they grow without bound, so the radius of convergence is zero",
            self.root_test_increasing_from,
            self.root_test.len(),
            self.root_test.last().copied().unwrap_or(f64::NAN),
        )
    }
}

/// Ratio and root tests for a series of order at least 10.
pub fn divergence_diagnostics(series: &CeSeries) -> Result<DivergenceReport> {
    let order = series.order();
    if order < 10 {
        return Err(Error::OrderOutOfRange {
            order,
            min: 10,
            max: MAX_ORDER,
        });
    }
    let moments = gaussian_moment_series(order);
    let mut ratios = Vec::with_capacity(order);
    let mut root_test = Vec::with_capacity(order);
    for (i, c) in series.coeffs.iter().enumerate() {
        let n = i + 1;
        let ln_c = ln_abs(c);
        ratios.push((ln_c - ln_abs(&moments[n])).exp());
        root_test.push((ln_c / (2 * n) as f64).exp());
    }

    let mut start = order;
    while start > 1 && root_test[start - 2] < root_test[start - 1] {
        start -= 1;
    }

    let tail = &ratios[9..];
    let band = tail
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &r| {
            (lo.min(r), hi.max(r))
        });

    Ok(DivergenceReport {
        radius_estimate: 1.0 / root_test[order - 1],
        ratios,
        root_test,
        root_test_increasing_from: start,
        ratio_band: band,
        // Each c_n multiplies x^{2n} with n ≥ 1.
        partial_sums_vanish_at_origin: true,
    })
}
