//! The real majorant `M(c, x, y) = h₁ + h₂y + h₃y² + h₄(1 − y²)`.

use crate::interval::Arith;

use super::{check_in_omega, BoundError};

/// The four coefficient functions of the majorant at `(c, x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HTerms<T> {
    pub h1: T,
    pub h2: T,
    pub h3: T,
    pub h4: T,
}

/// `h₁..h₄` with `h₁ = x²(4 − c²)²(2c² + |36 − 13c²|x + 2c²x²)`.
///
/// `|36 − 13c²|` is what the triangle inequality yields for the
/// `−(36 − 13c²)δ` term of `g₁`; it changes sign at `c = √(36/13)`.
pub fn h_terms<T: Arith>(c: T, x: T) -> HTerms<T> {
    let k = T::cst(4.0) - c * c;
    let k2 = k * k;
    let c2 = c * c;
    let x2 = x * x;
    let one_minus_x2 = T::cst(1.0) - x2;
    HTerms {
        h1: x2 * k2 * (T::cst(2.0) * c2 + (T::cst(36.0) - T::cst(13.0) * c2).abs() * x + T::cst(2.0) * c2 * x2),
        h2: T::cst(8.0) * c * x * k2 * (T::cst(1.0) + x) * one_minus_x2,
        h3: T::cst(8.0) * k2 * (T::cst(8.0) + x2) * one_minus_x2,
        h4: T::cst(72.0) * x * k2 * one_minus_x2,
    }
}

/// `M(c, x, y)` over any [`Arith`] type; no domain check.
pub fn majorant<T: Arith>(c: T, x: T, y: T) -> T {
    let h = h_terms(c, x);
    let y2 = y * y;
    h.h1 + h.h2 * y + h.h3 * y2 + h.h4 * (T::cst(1.0) - y2)
}

/// `M(c, x, y)` for a point of `Ω`.
pub fn majorant_m(c: f64, x: f64, y: f64) -> Result<f64, BoundError> {
    check_in_omega(c, x, y)?;
    Ok(majorant(c, x, y))
}

/// Literal readings of the printed `h₁`, kept for the audit report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum PrintedGrouping {
    /// `x²(4−c²)²(2c² + (36−13c²)x) + 2c²x²` as in the h-list.
    HList,
    /// `(4−c²)² x²(2c² + (36−13c²)x + 2c²x²)` as in the `y = 0` face formula.
    FaceFormula,
}

/// `M` with the printed `h₁` (no absolute value) under the given grouping.
pub fn majorant_printed(grouping: PrintedGrouping, c: f64, x: f64, y: f64) -> f64 {
    let k2 = (4.0 - c * c).powi(2);
    let c2 = c * c;
    let x2 = x * x;
    let h1 = match grouping {
        PrintedGrouping::HList => x2 * k2 * (2.0 * c2 + (36.0 - 13.0 * c2) * x) + 2.0 * c2 * x2,
        PrintedGrouping::FaceFormula => x2 * k2 * (2.0 * c2 + (36.0 - 13.0 * c2) * x + 2.0 * c2 * x2),
    };
    let h = h_terms(c, x);
    h1 + h.h2 * y + h.h3 * y * y + h.h4 * (1.0 - y * y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::{Dual3, Interval};

    #[test]
    fn anchor_values() {
        assert_eq!(majorant_m(0.0, 0.0, 1.0).unwrap(), 1024.0);
        for i in 0..=20 {
            for j in 0..=20 {
                assert_eq!(majorant_m(2.0, i as f64 / 20.0, j as f64 / 20.0).unwrap(), 0.0);
            }
        }
        let x1 = (2.0f64 / 3.0).sqrt();
        assert!((majorant_m(0.0, x1, 0.0).unwrap() - 256.0 * 6f64.sqrt()).abs() < 1e-9);
        assert!((majorant_m(0.0, 0.816497, 0.0).unwrap() - 627.069).abs() < 1e-3);
    }

    #[test]
    fn rejects_points_outside_omega() {
        assert!(majorant_m(2.5, 0.0, 0.0).is_err());
        assert!(majorant_m(1.0, -0.1, 0.0).is_err());
        assert!(majorant_m(1.0, 0.5, 1.5).is_err());
    }

    #[test]
    fn h_terms_are_nonnegative_on_omega() {
        for i in 0..=40 {
            for j in 0..=40 {
                let (c, x) = (i as f64 / 20.0, j as f64 / 40.0);
                let h = h_terms(c, x);
                assert!(h.h1 >= 0.0 && h.h2 >= 0.0 && h.h3 >= 0.0 && h.h4 >= 0.0);
            }
        }
    }

    #[test]
    fn printed_readings_agree_below_sign_change_and_differ_above() {
        let switch = (36.0f64 / 13.0).sqrt();
        for i in 0..=50 {
            let c = switch * i as f64 / 50.0;
            for (x, y) in [(0.3, 0.0), (0.7, 0.5), (1.0, 1.0)] {
                let m = majorant(c, x, y);
                assert!((majorant_printed(PrintedGrouping::FaceFormula, c, x, y) - m).abs() < 1e-9);
            }
        }
        assert!(majorant_printed(PrintedGrouping::FaceFormula, 1.9, 1.0, 0.0) < majorant(1.9, 1.0, 0.0));
        // the h-list grouping leaves 2c²x² alive on the c = 2 face
        assert_eq!(majorant_printed(PrintedGrouping::HList, 2.0, 0.5, 0.3), 2.0);
    }

    #[test]
    fn interval_and_dual_evaluations_enclose_point_values() {
        let cell = (Interval::new(1.5, 1.75), Interval::new(0.25, 0.5), Interval::new(0.5, 1.0));
        let enclosure = majorant(cell.0, cell.1, cell.2);
        let dual = majorant(
            Dual3::variable(cell.0, 0),
            Dual3::variable(cell.1, 1),
            Dual3::variable(cell.2, 2),
        );
        let h = 1e-6;
        for i in 0..=4 {
            for j in 0..=4 {
                for k in 0..=4 {
                    let c = 1.5 + 0.25 * i as f64 / 4.0;
                    let x = 0.25 + 0.25 * j as f64 / 4.0;
                    let y = 0.5 + 0.5 * k as f64 / 4.0;
                    let v = majorant(c, x, y);
                    assert!(enclosure.contains(v));
                    let point = majorant(Dual3::variable(c, 0), Dual3::variable(x, 1), Dual3::variable(y, 2));
                    let fd = [
                        (majorant(c + h, x, y) - majorant(c - h, x, y)) / (2.0 * h),
                        (majorant(c, x + h, y) - majorant(c, x - h, y)) / (2.0 * h),
                        (majorant(c, x, y + h) - majorant(c, x, y - h)) / (2.0 * h),
                    ];
                    for d in 0..3 {
                        assert!((point.grad[d] - fd[d]).abs() < 1e-4 * (1.0 + fd[d].abs()));
                        assert!(dual.grad[d].lo() - 1e-6 <= point.grad[d] && point.grad[d] <= dual.grad[d].hi() + 1e-6);
                    }
                }
            }
        }
    }
}
