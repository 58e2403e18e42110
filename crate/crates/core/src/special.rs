//! Faddeeva function, scaled complementary error function and the
//! unit-variance plasma dispersion function.
//!
//! `Z` is the entire continuation from the upper half-plane of
//!
//! ```text
//! Z(ζ) = (1/√(2π)) ∫ e^{−v²/2} / (v − ζ) dv,
//! ```
//!
//! which equals `i·√(π/2)·w(ζ/√2)` with `w(z) = e^{−z²} erfc(−iz)`. On the
//! positive imaginary axis `Z(iy) = i·φ(y)` with `φ(y) = √(π/2)·erfcx(y/√2)`
//! real, positive and strictly decreasing.

use errorfunctions::{ComplexErrorFunctions, RealErrorFunctions};
use num_complex::Complex64;

use crate::{Error, Result, SQRT_HALF_PI};

pub type ComplexValue = Complex64;

fn check_finite(z: ComplexValue) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

fn check_nonnegative(y: f64) -> Result<()> {
    if !y.is_finite() {
        Err(Error::NonFinite)
    } else if y < 0.0 {
        Err(Error::NegativeArgument(y))
    } else {
        Ok(())
    }
}

/// Faddeeva function `w(z) = exp(−z²)·erfc(−iz)`.
pub fn faddeeva(z: ComplexValue) -> Result<ComplexValue> {
    check_finite(z)?;
    Ok(z.w())
}

/// Scaled complementary error function `exp(y²)·erfc(y)` for `y ≥ 0`.
pub fn erfcx(y: f64) -> Result<f64> {
    check_nonnegative(y)?;
    Ok(y.erfcx())
}

/// Plasma dispersion function `Z(ζ) = i·√(π/2)·w(ζ/√2)` on the principal sheet.
pub fn plasma_z(zeta: ComplexValue) -> Result<ComplexValue> {
    check_finite(zeta)?;
    Ok(z_unchecked(zeta))
}

/// `Z′(ζ) = −(1 + ζ·Z(ζ))`.
pub fn plasma_z_deriv(zeta: ComplexValue) -> Result<ComplexValue> {
    check_finite(zeta)?;
    Ok(-(1.0 + zeta * z_unchecked(zeta)))
}

/// `φ(y) = Im Z(iy) = √(π/2)·erfcx(y/√2)` for `y ≥ 0`.
pub fn phi(y: f64) -> Result<f64> {
    check_nonnegative(y)?;
    Ok(phi_unchecked(y))
}

/// `φ′(y) = y·φ(y) − 1`, the imaginary-axis restriction of `Z′`.
pub fn phi_deriv(y: f64) -> Result<f64> {
    check_nonnegative(y)?;
    Ok(y * phi_unchecked(y) - 1.0)
}

#[inline]
fn z_unchecked(zeta: ComplexValue) -> ComplexValue {
    let w = (zeta * std::f64::consts::FRAC_1_SQRT_2).w();
    ComplexValue::new(0.0, SQRT_HALF_PI) * w
}

#[inline]
pub(crate) fn phi_unchecked(y: f64) -> f64 {
    SQRT_HALF_PI * (y * std::f64::consts::FRAC_1_SQRT_2).erfcx()
}
