//! Exact spectral closure versus the Chapman-Enskog series for the
//! one-dimensional linear relaxation model
//!
//! ```text
//! ∂f/∂t + v ∂f/∂x = −(1/τ) (f − ρ[f] e^{−v²/2} / √(2π)),   ρ[f] = ∫ f dv.
//! ```
//!
//! The crate is organised bottom-up:
//!
//! * [`special`]: Faddeeva function, scaled complementary error function and the
//!   unit-variance plasma dispersion function `Z`.
//! * [`branch`]: the diffusion-mode eigenvalue `λ_d(k, τ)` obtained from
//!   `Z(i(τλ+1)/(τk)) = iτk`, its critical wave number and the scaling law
//!   `λ(k, τ) = λ̂(τk)/τ`.
//! * [`series`]: exact big-integer Chapman-Enskog coefficients by formal power
//!   series reversion, the chord-diagram recurrence and divergence diagnostics.
//! * [`truncation`]: finite truncations, their stability and the comparison
//!   against the exact branch.
//! * [`kinetic`]: Gauss-Hermite velocity discretisation, operator spectrum and
//!   time integration of the kinetic model in Fourier space.

pub mod branch;
mod error;
pub mod kinetic;
pub mod series;
pub mod special;
pub mod truncation;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// `√(π/2)`: the value of `φ(0)` and the critical scaled wave number `τ·k_crit`.
pub const SQRT_HALF_PI: f64 = 1.253_314_137_315_500_3;
