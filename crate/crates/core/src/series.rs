//! Truncated formal power series.
//!
//! A [`TruncatedSeries`] stores `c_0..c_N` for a fixed truncation order `N`.
//! Binary operations require equal orders and never extend `N`; everything
//! past `z^N` is discarded.

use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("truncation order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("expected {expected} coefficients for order {order}, got {got}")]
    BadLength { order: usize, expected: usize, got: usize },
    #[error("truncation order must be at least 1")]
    ZeroOrder,
    #[error("series is not normalized (need c_0 = 0, c_1 = 1)")]
    NotNormalized,
    #[error("inner series of a composition must have zero constant term")]
    NonzeroConstant,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> TruncatedSeries<T> {
    /// Builds a series of order `order`; `coeffs` must have exactly `order + 1` entries.
    pub fn new(coeffs: Vec<T>, order: usize) -> Result<Self, SeriesError> {
        if order == 0 {
            return Err(SeriesError::ZeroOrder);
        }
        if coeffs.len() != order + 1 {
            return Err(SeriesError::BadLength { order, expected: order + 1, got: coeffs.len() });
        }
        Ok(Self { coeffs })
    }

    /// Pads (or truncates) `coeffs` to order `order`.
    pub fn from_prefix(coeffs: &[T], order: usize) -> Result<Self, SeriesError> {
        if order == 0 {
            return Err(SeriesError::ZeroOrder);
        }
        let coeffs = (0..=order).map(|k| coeffs.get(k).cloned().unwrap_or_else(T::zero)).collect();
        Ok(Self { coeffs })
    }

    pub fn zero(order: usize) -> Result<Self, SeriesError> {
        Self::from_prefix(&[], order)
    }

    pub fn constant(value: T, order: usize) -> Result<Self, SeriesError> {
        Self::from_prefix(&[value], order)
    }

    /// The identity series `z`.
    pub fn identity(order: usize) -> Result<Self, SeriesError> {
        Self::from_prefix(&[T::zero(), T::one()], order)
    }

    /// `z + a_2 z^2 + ... ` from the tail `[a_2, a_3, ...]`.
    pub fn normalized(tail: &[T], order: usize) -> Result<Self, SeriesError> {
        let mut coeffs = vec![T::zero(), T::one()];
        coeffs.extend_from_slice(tail);
        Self::from_prefix(&coeffs, order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &T {
        &self.coeffs[k]
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn is_normalized(&self) -> bool {
        self.coeffs[0].is_zero() && self.coeffs[1].is_one()
    }

    fn check_order(&self, other: &Self) -> Result<(), SeriesError> {
        if self.order() != other.order() {
            return Err(SeriesError::OrderMismatch { left: self.order(), right: other.order() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        let coeffs =
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() + b.clone()).collect();
        Ok(Self { coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        let coeffs =
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() - b.clone()).collect();
        Ok(Self { coeffs })
    }

    pub fn scale(&self, factor: &T) -> Self {
        Self { coeffs: self.coeffs.iter().map(|a| a.clone() * factor.clone()).collect() }
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.order();
        let coeffs = (0..=n)
            .map(|k| {
                (0..=k).fold(T::zero(), |acc, i| {
                    acc + self.coeffs[i].clone() * other.coeffs[k - i].clone()
                })
            })
            .collect();
        Self { coeffs }
    }

    /// Term-wise derivative, re-padded with a trailing zero to keep the order.
    pub fn derive(&self) -> Self {
        let n = self.order();
        let mut coeffs: Vec<T> =
            (1..=n).map(|k| self.coeffs[k].clone() * T::from_int(k as i64)).collect();
        coeffs.push(T::zero());
        Self { coeffs }
    }

    /// `z * self`, dropping the term pushed past the truncation order.
    pub fn shift_up(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(T::zero());
        coeffs.extend_from_slice(&self.coeffs[..self.order()]);
        Self { coeffs }
    }

    /// `self(inner(z))` truncated at the common order (Horner scheme).
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        self.check_order(inner)?;
        if !inner.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroConstant);
        }
        let n = self.order();
        let mut acc = Self::constant(self.coeffs[n].clone(), n)?;
        for k in (0..n).rev() {
            acc = acc.mul_unchecked(inner);
            acc.coeffs[0] = acc.coeffs[0].clone() + self.coeffs[k].clone();
        }
        Ok(acc)
    }

    /// Compositional inverse of a normalized series.
    ///
    /// Solves `self(g(w)) = w` one order at a time: with `g` known through
    /// `w^{n-1}` and `g_n = 0`, the coefficient of `w^n` in `self(g)` is the
    /// residual that `g_n` must cancel, because `c_1 = 1`.
    pub fn revert(&self) -> Result<Self, SeriesError> {
        if !self.is_normalized() {
            return Err(SeriesError::NotNormalized);
        }
        let n = self.order();
        let mut inverse = Self::identity(n)?;
        for k in 2..=n {
            let residual = self.compose(&inverse)?.coeffs[k].clone();
            inverse.coeffs[k] = -residual;
        }
        Ok(inverse)
    }

    /// Evaluates the truncated polynomial at `z` (float mode).
    pub fn eval_c64(&self, z: num::complex::Complex64) -> num::complex::Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(num::complex::Complex64::new(0.0, 0.0), |acc, c| acc * z + c.to_c64())
    }
}

/// Magnitude of the `n`-th inverse-Koebe coefficient, `(2n)! / (n! (n+1)!)`.
pub fn koebe_inverse_magnitude(n: u32) -> u128 {
    // Catalan number C_n via the product formula; exact in u128 for n <= 60.
    let mut c: u128 = 1;
    for k in 0..n as u128 {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    c
}
