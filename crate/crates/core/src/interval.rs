//! Closed real intervals with outward rounding, and a forward-mode dual
//! number carrying three partial derivatives.
//!
//! Rounding is directed only when an operation is inexact: the exact error
//! of each sum and product is recovered (TwoSum / FMA) and the bound is pushed
//! one ulp outward when the error points that way. Exact inputs such as
//! `4 - 2·2` therefore stay exactly zero.

use std::ops::{Add, Mul, Neg, Sub};

/// The arithmetic needed to evaluate the polynomial majorant and its
/// gradient systems over any of `f64`, [`Interval`], or [`Dual3`].
pub trait Arith:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn cst(value: f64) -> Self;
    fn abs(self) -> Self;
    /// Enclosure of the (generalized) derivative of `|·|` at `self`.
    fn abs_slope(self) -> Self;
}

impl Arith for f64 {
    fn cst(value: f64) -> Self {
        value
    }

    fn abs(self) -> Self {
        f64::abs(self)
    }

    fn abs_slope(self) -> Self {
        if self < 0.0 {
            -1.0
        } else {
            1.0
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

fn down(value: f64, err: f64) -> f64 {
    if err < 0.0 {
        value.next_down()
    } else {
        value
    }
}

fn up(value: f64, err: f64) -> f64 {
    if err > 0.0 {
        value.next_up()
    } else {
        value
    }
}

fn product(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    if !p.is_finite() {
        return (p, 0.0);
    }
    (p, a.mul_add(b, -p))
}

impl Interval {
    /// `[lo, hi]`; panics if `lo > hi` or either end is NaN.
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "invalid interval [{lo}, {hi}]");
        Self { lo, hi }
    }

    pub fn point(value: f64) -> Self {
        Self::new(value, value)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn mid(&self) -> f64 {
        0.5 * self.lo + 0.5 * self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    /// Largest absolute value in the interval.
    pub fn mag(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn contains_zero(&self) -> bool {
        self.lo <= 0.0 && 0.0 <= self.hi
    }

    pub fn contains(&self, value: f64) -> bool {
        self.lo <= value && value <= self.hi
    }

    pub fn hull(&self, other: &Self) -> Self {
        Self::new(self.lo.min(other.lo), self.hi.max(other.hi))
    }

    /// The two halves `[lo, mid]` and `[mid, hi]`.
    pub fn bisect(&self) -> (Self, Self) {
        let m = self.mid();
        (Self::new(self.lo, m), Self::new(m, self.hi))
    }
}

impl Add for Interval {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let (lo, elo) = two_sum(self.lo, rhs.lo);
        let (hi, ehi) = two_sum(self.hi, rhs.hi);
        Self { lo: down(lo, elo), hi: up(hi, ehi) }
    }
}

impl Neg for Interval {
    type Output = Self;

    fn neg(self) -> Self {
        Self { lo: -self.hi, hi: -self.lo }
    }
}

impl Sub for Interval {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for Interval {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let candidates = [
            product(self.lo, rhs.lo),
            product(self.lo, rhs.hi),
            product(self.hi, rhs.lo),
            product(self.hi, rhs.hi),
        ];
        let lo = candidates.iter().map(|&(p, e)| down(p, e)).fold(f64::INFINITY, f64::min);
        let hi = candidates.iter().map(|&(p, e)| up(p, e)).fold(f64::NEG_INFINITY, f64::max);
        Self { lo, hi }
    }
}

impl Arith for Interval {
    fn cst(value: f64) -> Self {
        Self::point(value)
    }

    fn abs(self) -> Self {
        if self.lo >= 0.0 {
            self
        } else if self.hi <= 0.0 {
            -self
        } else {
            Self { lo: 0.0, hi: self.mag() }
        }
    }

    fn abs_slope(self) -> Self {
        if self.lo > 0.0 {
            Self::point(1.0)
        } else if self.hi < 0.0 {
            Self::point(-1.0)
        } else {
            Self::new(-1.0, 1.0)
        }
    }
}

/// Value plus partial derivatives with respect to three variables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dual3<T> {
    pub value: T,
    pub grad: [T; 3],
}

impl<T: Arith> Dual3<T> {
    /// The `index`-th independent variable at `value`.
    pub fn variable(value: T, index: usize) -> Self {
        let mut grad = [T::cst(0.0); 3];
        grad[index] = T::cst(1.0);
        Self { value, grad }
    }
}

impl<T: Arith> Add for Dual3<T> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self {
            value: self.value + rhs.value,
            grad: std::array::from_fn(|i| self.grad[i] + rhs.grad[i]),
        }
    }
}

impl<T: Arith> Sub for Dual3<T> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        Self {
            value: self.value - rhs.value,
            grad: std::array::from_fn(|i| self.grad[i] - rhs.grad[i]),
        }
    }
}

impl<T: Arith> Mul for Dual3<T> {
    type Output = Self;

    #[allow(clippy::suspicious_arithmetic_impl)] // product rule
    fn mul(self, rhs: Self) -> Self {
        Self {
            value: self.value * rhs.value,
            grad: std::array::from_fn(|i| self.grad[i] * rhs.value + self.value * rhs.grad[i]),
        }
    }
}

impl<T: Arith> Neg for Dual3<T> {
    type Output = Self;

    fn neg(self) -> Self {
        Self { value: -self.value, grad: self.grad.map(|g| -g) }
    }
}

impl<T: Arith> Arith for Dual3<T> {
    fn cst(value: f64) -> Self {
        Self { value: T::cst(value), grad: [T::cst(0.0); 3] }
    }

    fn abs(self) -> Self {
        let slope = self.value.abs_slope();
        Self { value: self.value.abs(), grad: self.grad.map(|g| slope * g) }
    }

    fn abs_slope(self) -> Self {
        Self { value: self.value.abs_slope(), grad: [T::cst(0.0); 3] }
    }
}
