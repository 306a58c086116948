//! The bounding chain for `9216·|H₃(1)(f⁻¹)|` and its maximization over the
//! cuboid `Ω = [0,2] × [0,1] × [0,1]`.
//!
//! Variables: `c = c₁`, `x = |δ|`, `y = |η|`.

mod cases;
mod exclusion;
mod gchain;
mod majorant;
mod scan;
mod verify;

pub use cases::{face_edge_values, CASE_RELATIVE_TOLERANCE, CaseRow, CaseTable, ClosedForm};
pub use exclusion::{
    critical_point_exclusion, face_gradient, interior_sign_check, y0_closed_form, ExclusionMode, ExclusionReport, Face,
    InteriorReport,
};
pub use gchain::{
    g_chain, g_chain_oracle, g_chain_printed, g_chain_audit, triangle_dominance_check, DominanceReport,
    GChain, GChainAudit,
};
pub use majorant::{
    h_terms, majorant, majorant_m, majorant_printed, HTerms, PrintedGrouping,
};
pub use scan::{global_gradient_bound, scan_cuboid, scan_region, BoundCertificate, ScanOptions};
pub use verify::{verify_bound, CERTIFICATION_SLACK, BoundReport, BoundStatus, VerifyOptions};

use thiserror::Error;

use crate::interval::Interval;

/// `9216 · H₃(1)(f⁻¹)` is the polynomial whose modulus the majorant bounds.
pub const H3_SCALE: f64 = 9216.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundError {
    #[error("point ({c}, {x}, {y}) lies outside the cuboid [0,2]x[0,1]x[0,1]")]
    OutsideCuboid { c: f64, x: f64, y: f64 },
    #[error("invalid region: {0}")]
    InvalidRegion(String),
    #[error("grid step must lie in (0, 0.05], got {0}")]
    InvalidGridStep(f64),
    #[error("resolution must be at least 64, got {0}")]
    InvalidResolution(usize),
    #[error("sub-check failed: {0}")]
    SubCheck(String),
}

/// Closed box inside `Ω`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CuboidRegion {
    pub c: Interval,
    pub x: Interval,
    pub y: Interval,
}

impl CuboidRegion {
    pub fn new(c: (f64, f64), x: (f64, f64), y: (f64, f64)) -> Result<Self, BoundError> {
        let check = |name: &str, (lo, hi): (f64, f64), max: f64| {
            if !(lo.is_finite() && hi.is_finite()) || lo > hi || lo < 0.0 || hi > max {
                return Err(BoundError::InvalidRegion(format!(
                    "{name} = [{lo}, {hi}] must satisfy 0 <= lo <= hi <= {max}"
                )));
            }
            Ok(Interval::new(lo, hi))
        };
        Ok(Self { c: check("c", c, 2.0)?, x: check("x", x, 1.0)?, y: check("y", y, 1.0)? })
    }

    /// The full cuboid `Ω`.
    pub fn omega() -> Self {
        Self::new((0.0, 2.0), (0.0, 1.0), (0.0, 1.0)).expect("omega is valid")
    }

    pub fn contains(&self, c: f64, x: f64, y: f64) -> bool {
        self.c.contains(c) && self.x.contains(x) && self.y.contains(y)
    }
}

pub(crate) fn check_in_omega(c: f64, x: f64, y: f64) -> Result<(), BoundError> {
    if CuboidRegion::omega().contains(c, x, y) {
        Ok(())
    } else {
        Err(BoundError::OutsideCuboid { c, x, y })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn region_validation() {
        assert!(CuboidRegion::new((0.0, 2.0), (0.0, 1.0), (0.0, 1.0)).is_ok());
        assert!(CuboidRegion::new((2.0, 2.0), (0.0, 1.0), (0.0, 1.0)).is_ok());
        assert!(CuboidRegion::new((0.0, 2.1), (0.0, 1.0), (0.0, 1.0)).is_err());
        assert!(CuboidRegion::new((1.0, 0.5), (0.0, 1.0), (0.0, 1.0)).is_err());
        assert!(CuboidRegion::new((0.0, 2.0), (-0.1, 1.0), (0.0, 1.0)).is_err());
    }
}
