//! Truncated formal power series over an exact coefficient ring.

use std::ops::Neg;

use num_traits::Num;

use crate::{Error, Result};

/// Exact coefficient ring: integers or rationals.
pub trait Coefficient: Clone + Num + Neg<Output = Self> {}

impl<T: Clone + Num + Neg<Output = T>> Coefficient for T {}

/// `Σ_{i<len} a_i x^i`, known modulo `x^len`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries<T> {
    coeffs: Vec<T>,
}

impl<T: Coefficient> PowerSeries<T> {
    pub fn new(coeffs: Vec<T>) -> Self {
        Self { coeffs }
    }

    pub fn zero(len: usize) -> Self {
        Self {
            coeffs: vec![T::zero(); len],
        }
    }

    /// The series `x`, truncated to `len` terms.
    pub fn identity(len: usize) -> Self {
        let mut s = Self::zero(len);
        if len > 1 {
            s.coeffs[1] = T::one();
        }
        s
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `x^i`; zero beyond the stored terms.
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    /// Keeps (or zero-pads to) exactly `len` terms.
    pub fn truncated(&self, len: usize) -> Self {
        let mut coeffs: Vec<T> = self.coeffs.iter().take(len).cloned().collect();
        coeffs.resize(len, T::zero());
        Self { coeffs }
    }

    pub fn add(&self, other: &Self, len: usize) -> Self {
        Self {
            coeffs: (0..len).map(|i| self.coeff(i) + other.coeff(i)).collect(),
        }
    }

    pub fn sub(&self, other: &Self, len: usize) -> Self {
        Self {
            coeffs: (0..len).map(|i| self.coeff(i) - other.coeff(i)).collect(),
        }
    }

    /// Product modulo `x^len`. Zero coefficients are skipped, which matters
    /// for the odd and even series this crate works with.
    pub fn mul(&self, other: &Self, len: usize) -> Self {
        let mut out = vec![T::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self { coeffs: out }
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| a.clone() * from_usize::<T>(i))
            .collect();
        Self { coeffs }
    }

    /// `self(inner(x))` modulo `x^len` by Horner's scheme; `inner` must have
    /// zero constant term.
    pub fn compose(&self, inner: &Self, len: usize) -> Result<Self> {
        if !inner.coeff(0).is_zero() {
            return Err(Error::NotInvertible(
                "inner series of a composition needs a zero constant term",
            ));
        }
        let inner = inner.truncated(len);
        let mut acc = Self::zero(len);
        let mut started = false;
        // Terms of degree ≥ len in the outer series cannot contribute.
        for a in self.coeffs.iter().take(len).rev() {
            if started {
                acc = acc.mul(&inner, len);
            }
            if !a.is_zero() {
                acc.coeffs[0] = acc.coeffs[0].clone() + a.clone();
                started = true;
            }
        }
        Ok(acc)
    }

    /// Multiplicative inverse modulo `x^len`; the constant term must be a unit
    /// of the coefficient ring.
    pub fn inverse(&self, len: usize) -> Result<Self> {
        let a0 = self.coeff(0);
        if a0.is_zero() {
            return Err(Error::NotInvertible("constant term is zero"));
        }
        let inv0 = T::one() / a0.clone();
        if inv0.clone() * a0 != T::one() {
            return Err(Error::NotInvertible(
                "constant term is not a unit of the coefficient ring",
            ));
        }
        let mut out: Vec<T> = Vec::with_capacity(len);
        for n in 0..len {
            if n == 0 {
                out.push(inv0.clone());
                continue;
            }
            let mut acc = T::zero();
            for (j, bj) in out.iter().enumerate().take(n) {
                let a = self.coeff(n - j);
                if !a.is_zero() && !bj.is_zero() {
                    acc = acc + a * bj.clone();
                }
            }
            out.push(-(acc * inv0.clone()));
        }
        Ok(Self { coeffs: out })
    }

    /// Compositional inverse `r` with `self(r(x)) = x` modulo `x^len`, by
    /// Newton iteration `r ← r − (self(r) − x) / self′(r)` with the precision
    /// doubling each step. Requires a zero constant term and a unit linear
    /// coefficient.
    pub fn reverse(&self, len: usize) -> Result<Self> {
        if !self.coeff(0).is_zero() {
            return Err(Error::NotInvertible(
                "reversion needs a zero constant term",
            ));
        }
        let a1 = self.coeff(1);
        if a1.is_zero() {
            return Err(Error::NotInvertible("reversion needs a nonzero linear term"));
        }
        let inv1 = T::one() / a1.clone();
        if inv1.clone() * a1 != T::one() {
            return Err(Error::NotInvertible(
                "linear coefficient is not a unit of the coefficient ring",
            ));
        }
        if len <= 2 {
            let mut r = Self::zero(len);
            if len == 2 {
                r.coeffs[1] = inv1;
            }
            return Ok(r);
        }

        let deriv = self.derivative();
        let mut r = Self::zero(2);
        r.coeffs[1] = inv1;
        let mut prec = 2;
        while prec < len {
            prec = usize::min(2 * prec, len);
            let r_p = r.truncated(prec);
            let value = self.compose(&r_p, prec)?;
            let defect = value.sub(&Self::identity(prec), prec);
            let slope = deriv.compose(&r_p, prec)?;
            let step = defect.mul(&slope.inverse(prec)?, prec);
            r = r_p.sub(&step, prec);
        }
        Ok(r)
    }
}

fn from_usize<T: Coefficient>(n: usize) -> T {
    // Small multipliers only (series lengths); doubling keeps this O(log n).
    let mut acc = T::zero();
    let mut base = T::one();
    let mut n = n;
    while n > 0 {
        if n & 1 == 1 {
            acc = acc + base.clone();
        }
        base = base.clone() + base;
        n >>= 1;
    }
    acc
}
