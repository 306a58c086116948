//! Exclusion of critical points of `M` in the open interior of `Ω` and in
//! the open faces `y = 0`, `y = 1`.
//!
//! The face systems are the printed partial derivatives with their
//! nonvanishing factors removed: on `(0,2) × (0,1)` the factors `2c(4−c²)x`,
//! `(4−c²)` and `(4−c²)²` are strictly positive, so a common zero of the
//! partials is a common zero of the reduced brackets.

use serde::Serialize;

use crate::interval::{Arith, Dual3, Interval};

use super::BoundError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Face {
    /// `y = 0`.
    Y0,
    /// `y = 1`.
    Y1,
    /// Open interior of `Ω` (`∂M/∂y` only).
    Interior,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ExclusionMode {
    Float,
    Interval,
}

/// Reduced gradient brackets `(∂M/∂c, ∂M/∂x)` on a face.
fn face_system<T: Arith>(face: Face, c: T, x: T) -> (T, T) {
    let k = T::cst;
    match face {
        Face::Y0 => {
            let c2 = c * c;
            let x2 = x * x;
            let dc = (k(8.0) - k(6.0) * c2) * x2 * x + (k(39.0) * c2 + k(20.0)) * x2 + (k(8.0) - k(6.0) * c2) * x
                - k(144.0);
            let dx = k(72.0) + k(4.0) * c2 * x - (k(108.0) + k(39.0) * c2) * x2 + k(8.0) * c2 * x2 * x;
            (dc, dx)
        }
        Face::Y1 | Face::Interior => {
            let c2 = c * c;
            let x2 = x * x;
            let x3 = x2 * x;
            let one_px = k(1.0) + x;
            let common = x * (k(1.0) - x) * one_px * one_px;
            let dc = k(32.0) * common - k(40.0) * c2 * common
                - k(6.0) * c2 * c * x2 * (k(2.0) - k(13.0) * x + k(2.0) * x2)
                + k(8.0) * c * (k(-32.0) + k(30.0) * x2 - k(31.0) * x3 + k(6.0) * x2 * x2);
            let dx = c2 * x * (k(4.0) - k(39.0) * x + k(8.0) * x2) - k(4.0) * x * (k(28.0) - k(27.0) * x + k(8.0) * x2)
                - k(8.0) * c * (k(-1.0) - k(2.0) * x + k(3.0) * x2 + k(4.0) * x3);
            (dc, dx)
        }
    }
}

/// Evaluates the reduced face system at a point (exposed for reports and tests).
pub fn face_gradient(face: Face, c: f64, x: f64) -> (f64, f64) {
    face_system(face, c, x)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExclusionReport {
    pub face: Face,
    pub mode: ExclusionMode,
    pub resolution: usize,
    pub cells: usize,
    /// Cells where one of the two functions provably (interval) or
    /// apparently (float) keeps a strict sign.
    pub excluded_cells: usize,
    /// Cells whose only common zero is a vertex on the domain boundary and
    /// on which the Jacobian is nonsingular (so the zero is isolated there).
    pub boundary_zero_cells: usize,
    /// Cells where both functions change sign and nothing rules out a common zero.
    pub common_zero_cells: usize,
    pub undecided_cells: usize,
    /// `min max(|F|/‖F‖, |G|/‖G‖)` over interior grid points.
    pub min_normalized_residual: f64,
    pub boundary_zeros: Vec<[f64; 2]>,
}

impl ExclusionReport {
    pub fn no_interior_critical_point(&self) -> bool {
        self.common_zero_cells == 0 && self.undecided_cells == 0
    }
}

/// Case 1: the `∂M/∂y = 0` root `y₀ = −cx(1+x) / (2(8−x)(1−x))` is negative.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InteriorReport {
    pub resolution: usize,
    pub grid_points: usize,
    pub max_y0: f64,
    pub negative_points: usize,
    /// Every linear factor of the numerator `c·x·(1+x)` and denominator
    /// `2(8−x)(1−x)` is nonnegative on the closed box and not identically zero.
    pub factors_positive: bool,
}

impl InteriorReport {
    pub fn all_negative(&self) -> bool {
        self.factors_positive && self.negative_points == self.grid_points
    }
}

/// `a0 + ac·c + ax·x`.
#[derive(Debug, Clone, Copy)]
struct Linear {
    a0: f64,
    ac: f64,
    ax: f64,
}

impl Linear {
    fn positive_on_open_box(&self) -> bool {
        let corners = [(0.0, 0.0), (2.0, 0.0), (0.0, 1.0), (2.0, 1.0)];
        let identically_zero = self.a0 == 0.0 && self.ac == 0.0 && self.ax == 0.0;
        !identically_zero && corners.iter().all(|&(c, x)| self.a0 + self.ac * c + self.ax * x >= 0.0)
    }
}

pub fn y0_closed_form(c: f64, x: f64) -> f64 {
    -(c * x * (1.0 + x)) / (2.0 * (8.0 - x) * (1.0 - x))
}

pub fn interior_sign_check(resolution: usize) -> InteriorReport {
    let numerator = [
        Linear { a0: 0.0, ac: 1.0, ax: 0.0 },
        Linear { a0: 0.0, ac: 0.0, ax: 1.0 },
        Linear { a0: 1.0, ac: 0.0, ax: 1.0 },
    ];
    let denominator = [
        Linear { a0: 2.0, ac: 0.0, ax: 0.0 },
        Linear { a0: 8.0, ac: 0.0, ax: -1.0 },
        Linear { a0: 1.0, ac: 0.0, ax: -1.0 },
    ];
    let factors_positive = numerator.iter().chain(&denominator).all(Linear::positive_on_open_box);
    let mut max_y0 = f64::NEG_INFINITY;
    let mut negative_points = 0;
    for i in 0..resolution {
        for j in 0..resolution {
            let c = 2.0 * (i as f64 + 0.5) / resolution as f64;
            let x = (j as f64 + 0.5) / resolution as f64;
            let y0 = y0_closed_form(c, x);
            max_y0 = max_y0.max(y0);
            if y0 < 0.0 {
                negative_points += 1;
            }
        }
    }
    InteriorReport {
        resolution,
        grid_points: resolution * resolution,
        max_y0,
        negative_points,
        factors_positive,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum CellVerdict {
    Excluded,
    BoundaryZero([f64; 2]),
    CommonZero,
    Undecided,
}

fn strict_sign(values: &[f64]) -> bool {
    values.iter().all(|&v| v > 0.0) || values.iter().all(|&v| v < 0.0)
}

fn on_domain_boundary(c: f64, x: f64) -> bool {
    c == 0.0 || c == 2.0 || x == 0.0 || x == 1.0
}

fn jacobian_det<T: Arith>(face: Face, c: T, x: T) -> T {
    let (f, g) = face_system(Face::clone(&face), Dual3::variable(c, 0), Dual3::variable(x, 1));
    f.grad[0] * g.grad[1] - f.grad[1] * g.grad[0]
}

fn float_cell(face: Face, c: (f64, f64), x: (f64, f64)) -> CellVerdict {
    let corners = [[c.0, x.0], [c.1, x.0], [c.0, x.1], [c.1, x.1]];
    let values: Vec<(f64, f64)> = corners.iter().map(|p| face_system(face, p[0], p[1])).collect();
    if values.iter().any(|(f, g)| !f.is_finite() || !g.is_finite()) {
        return CellVerdict::Undecided;
    }
    let fs: Vec<f64> = values.iter().map(|v| v.0).collect();
    let gs: Vec<f64> = values.iter().map(|v| v.1).collect();
    if strict_sign(&fs) || strict_sign(&gs) {
        return CellVerdict::Excluded;
    }
    let dets: Vec<f64> = corners.iter().map(|p| jacobian_det(face, p[0], p[1])).collect();
    for (p, (f, g)) in corners.iter().zip(&values) {
        if on_domain_boundary(p[0], p[1]) && f.abs() <= 1e-12 && g.abs() <= 1e-12 && strict_sign(&dets) {
            return CellVerdict::BoundaryZero(*p);
        }
    }
    CellVerdict::CommonZero
}

fn interval_cell(face: Face, c: Interval, x: Interval, depth: usize) -> CellVerdict {
    let (f, g) = face_system(face, c, x);
    if !f.contains_zero() || !g.contains_zero() {
        return CellVerdict::Excluded;
    }
    let corners = [[c.lo(), x.lo()], [c.hi(), x.lo()], [c.lo(), x.hi()], [c.hi(), x.hi()]];
    let det = jacobian_det(face, c, x);
    if !det.contains_zero() {
        // injective on the cell: at most one zero, and an exact zero at a
        // boundary vertex accounts for it
        for p in corners {
            if !on_domain_boundary(p[0], p[1]) {
                continue;
            }
            let (fp, gp) = face_system(face, Interval::point(p[0]), Interval::point(p[1]));
            if fp == Interval::point(0.0) && gp == Interval::point(0.0) {
                return CellVerdict::BoundaryZero(p);
            }
        }
    }
    if depth == 0 {
        return if det.contains_zero() { CellVerdict::Undecided } else { CellVerdict::CommonZero };
    }
    let (c_lo, c_hi) = c.bisect();
    let (x_lo, x_hi) = x.bisect();
    let mut boundary = None;
    let mut verdict = CellVerdict::Excluded;
    for (cc, xx) in [(c_lo, x_lo), (c_hi, x_lo), (c_lo, x_hi), (c_hi, x_hi)] {
        match interval_cell(face, cc, xx, depth - 1) {
            CellVerdict::Excluded => {}
            CellVerdict::BoundaryZero(p) => boundary = Some(p),
            CellVerdict::CommonZero => verdict = CellVerdict::CommonZero,
            CellVerdict::Undecided => {
                if verdict != CellVerdict::CommonZero {
                    verdict = CellVerdict::Undecided;
                }
            }
        }
    }
    match (verdict, boundary) {
        (CellVerdict::Excluded, Some(p)) => CellVerdict::BoundaryZero(p),
        (v, _) => v,
    }
}

/// Bisection depth used below each grid cell in interval mode.
const INTERVAL_DEPTH: usize = 6;

/// Checks that the face gradient system (or, for the interior, `∂M/∂y`)
/// has no zero on the open domain at the given grid resolution.
pub fn critical_point_exclusion(
    face: Face,
    resolution: usize,
    mode: ExclusionMode,
) -> Result<ExclusionReport, BoundError> {
    if resolution < 64 {
        return Err(BoundError::InvalidResolution(resolution));
    }
    if face == Face::Interior {
        let interior = interior_sign_check(resolution);
        let bad = interior.grid_points - interior.negative_points;
        return Ok(ExclusionReport {
            face,
            mode,
            resolution,
            cells: interior.grid_points,
            excluded_cells: interior.negative_points,
            boundary_zero_cells: 0,
            common_zero_cells: bad,
            undecided_cells: usize::from(!interior.factors_positive),
            min_normalized_residual: -interior.max_y0,
            boundary_zeros: Vec::new(),
        });
    }

    let n = resolution;
    let cs: Vec<f64> = (0..=n).map(|i| 2.0 * i as f64 / n as f64).collect();
    let xs: Vec<f64> = (0..=n).map(|j| j as f64 / n as f64).collect();

    let mut f_scale: f64 = 0.0;
    let mut g_scale: f64 = 0.0;
    for &c in &cs {
        for &x in &xs {
            let (f, g) = face_system(face, c, x);
            f_scale = f_scale.max(f.abs());
            g_scale = g_scale.max(g.abs());
        }
    }
    let mut min_residual = f64::INFINITY;
    for &c in &cs[1..n] {
        for &x in &xs[1..n] {
            let (f, g) = face_system(face, c, x);
            min_residual = min_residual.min((f.abs() / f_scale).max(g.abs() / g_scale));
        }
    }

    let mut report = ExclusionReport {
        face,
        mode,
        resolution,
        cells: n * n,
        excluded_cells: 0,
        boundary_zero_cells: 0,
        common_zero_cells: 0,
        undecided_cells: 0,
        min_normalized_residual: min_residual,
        boundary_zeros: Vec::new(),
    };
    for i in 0..n {
        for j in 0..n {
            let verdict = match mode {
                ExclusionMode::Float => float_cell(face, (cs[i], cs[i + 1]), (xs[j], xs[j + 1])),
                ExclusionMode::Interval => interval_cell(
                    face,
                    Interval::new(cs[i], cs[i + 1]),
                    Interval::new(xs[j], xs[j + 1]),
                    INTERVAL_DEPTH,
                ),
            };
            match verdict {
                CellVerdict::Excluded => report.excluded_cells += 1,
                CellVerdict::BoundaryZero(p) => {
                    report.boundary_zero_cells += 1;
                    if !report.boundary_zeros.contains(&p) {
                        report.boundary_zeros.push(p);
                    }
                }
                CellVerdict::CommonZero => report.common_zero_cells += 1,
                CellVerdict::Undecided => report.undecided_cells += 1,
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bound_search::majorant::majorant;

    #[test]
    fn reduced_systems_are_rescaled_partials_of_m() {
        for i in 1..10 {
            for j in 1..10 {
                let (c, x) = (0.2 * i as f64, 0.1 * j as f64);
                let k = 4.0 - c * c;
                for (face, y) in [(Face::Y0, 0.0), (Face::Y1, 1.0)] {
                    if c * c >= 36.0 / 13.0 {
                        continue; // printed face forms omit |36 - 13c^2|
                    }
                    let d = majorant(Dual3::variable(c, 0), Dual3::variable(x, 1), Dual3::variable(y, 2));
                    let (f, g) = face_gradient(face, c, x);
                    let (fc, gx) = match face {
                        Face::Y0 => (2.0 * c * k * x * f, k * k * g),
                        _ => (k * f, k * k * g),
                    };
                    assert!((d.grad[0] - fc).abs() < 1e-8 * (1.0 + fc.abs()), "{face:?} c={c} x={x}");
                    assert!((d.grad[1] - gx).abs() < 1e-8 * (1.0 + gx.abs()), "{face:?} c={c} x={x}");
                }
            }
        }
    }

    #[test]
    fn dm_dy_factorization_matches_dual_derivative() {
        for i in 1..10 {
            for j in 1..10 {
                for y in [0.1, 0.5, 0.9] {
                    let (c, x) = (0.2 * i as f64, 0.1 * j as f64);
                    let d = majorant(Dual3::variable(c, 0), Dual3::variable(x, 1), Dual3::variable(y, 2));
                    let factored = 8.0 * (4.0 - c * c).powi(2) * (1.0 - x * x)
                        * (c * x * (1.0 + x) + 2.0 * (1.0 - x) * (8.0 - x) * y);
                    assert!((d.grad[2] - factored).abs() < 1e-8 * (1.0 + factored.abs()));
                }
            }
        }
    }

    #[test]
    fn interior_root_is_negative() {
        let report = interior_sign_check(128);
        assert!(report.factors_positive);
        assert!(report.all_negative());
        assert!(report.max_y0 < 0.0);
    }

    #[test]
    fn faces_have_no_common_zero_at_moderate_resolution() {
        for face in [Face::Y0, Face::Y1] {
            for mode in [ExclusionMode::Float, ExclusionMode::Interval] {
                let r = critical_point_exclusion(face, 64, mode).unwrap();
                assert!(r.no_interior_critical_point(), "{r:?}");
                assert_eq!(r.excluded_cells + r.boundary_zero_cells, r.cells);
            }
        }
        let y1 = critical_point_exclusion(Face::Y1, 64, ExclusionMode::Interval).unwrap();
        assert_eq!(y1.boundary_zeros, vec![[0.0, 0.0]]);
    }

    #[test]
    fn low_resolution_is_rejected() {
        assert!(critical_point_exclusion(Face::Y0, 32, ExclusionMode::Float).is_err());
    }
}
