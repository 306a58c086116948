//! End-to-end check of `|H₃(1)(f⁻¹)| ≤ 1/9`: closed-form case table,
//! critical-point exclusion, certified scan, and the extremal witness.

use serde::Serialize;

use crate::extremal::extremal_report;
use crate::scalar::{q, Rational};

use super::cases::{face_edge_values, CaseTable};
use super::exclusion::{critical_point_exclusion, ExclusionMode, ExclusionReport, Face};
use super::scan::{scan_region, BoundCertificate, ScanOptions};
use super::{BoundError, CuboidRegion, H3_SCALE};

/// Largest induced bound accepted as certifying `1/9`.
pub const CERTIFICATION_SLACK: f64 = 1.2e-4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub grid_step: f64,
    pub refine: bool,
    pub include_extremal: bool,
    pub exclusion_resolution: usize,
    pub exclusion_mode: ExclusionMode,
    pub table_resolution: usize,
    pub region: CuboidRegion,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            grid_step: 0.01,
            refine: true,
            include_extremal: true,
            exclusion_resolution: 512,
            exclusion_mode: ExclusionMode::Float,
            table_resolution: 200,
            region: CuboidRegion::omega(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BoundStatus {
    /// Bound certified and attained by the extremal function.
    Sharp,
    /// Bound certified, attainment not shown.
    BoundOnly,
    Failed,
}

impl BoundStatus {
    pub fn label(&self) -> &'static str {
        match self {
            Self::Sharp => "SHARP",
            Self::BoundOnly => "BOUND-ONLY",
            Self::Failed => "FAILED",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub certificate: BoundCertificate,
    pub cases: CaseTable,
    pub exclusions: Vec<ExclusionReport>,
    /// `|H₃(1)(f₀⁻¹)|` in exact arithmetic, when the extremal check ran.
    pub witness: Option<Rational>,
    pub status: BoundStatus,
}

impl BoundReport {
    pub fn bound_certified(&self) -> bool {
        self.certificate.induced_h3_bound <= 1.0 / 9.0 + CERTIFICATION_SLACK
            && self.cases.all_bounds_hold()
            && self.exclusions.iter().all(ExclusionReport::no_interior_critical_point)
    }
}

pub fn verify_bound(opts: &VerifyOptions) -> Result<BoundReport, BoundError> {
    let certificate = scan_region(
        &opts.region,
        &ScanOptions { grid_step: opts.grid_step, ..ScanOptions::new(opts.grid_step, opts.refine) },
    )?;
    let cases = face_edge_values(opts.table_resolution);
    let exclusions = [Face::Interior, Face::Y0, Face::Y1]
        .into_iter()
        .map(|face| critical_point_exclusion(face, opts.exclusion_resolution, opts.exclusion_mode))
        .collect::<Result<Vec<_>, _>>()?;
    let witness = if opts.include_extremal {
        let r = extremal_report(8).map_err(|e| BoundError::SubCheck(e.to_string()))?;
        let consistent = r.constructions_agree && r.inverse_routes_agree;
        consistent.then(|| num::Signed::abs(&r.h3_inverse))
    } else {
        None
    };
    let mut report = BoundReport { certificate, cases, exclusions, witness, status: BoundStatus::Failed };
    let attained = report.witness == Some(q(1, 9)) && report.certificate.observed_max == H3_SCALE / 9.0;
    report.status = match (report.bound_certified(), attained) {
        (true, true) => BoundStatus::Sharp,
        (true, false) => BoundStatus::BoundOnly,
        (false, _) => BoundStatus::Failed,
    };
    Ok(report)
}
