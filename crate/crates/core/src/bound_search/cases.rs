//! Closed-form values of `M` on the edges, faces and vertices of `Ω`, as
//! stated in the case analysis, checked against the majorant on grids.

use serde::Serialize;

use super::majorant::majorant;

type Form = fn(f64, f64, f64) -> f64;

/// One printed closed-form claim.
#[derive(Debug, Clone, Copy)]
pub struct ClosedForm {
    pub case: &'static str,
    pub locus: &'static str,
    pub printed: &'static str,
    /// Which coordinates are free: any of `'c'`, `'x'`, `'y'`.
    free: &'static str,
    fixed: [f64; 3],
    form: Form,
    pub claimed_max: f64,
    /// Where the claimed maximum sits, when the text names it.
    pub claimed_argmax: Option<[f64; 3]>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseRow {
    pub case: String,
    pub locus: String,
    pub printed: String,
    pub claimed_max: f64,
    pub observed_max: f64,
    pub observed_argmax: [f64; 3],
    /// `observed_max ≤ claimed_max + tol`.
    pub bound_holds: bool,
    /// `|observed_max − claimed_max| ≤ tol`, i.e. the claimed value is attained.
    pub attained: bool,
    /// Largest `|printed(c,x,y) − M(c,x,y)|` on the grid.
    pub form_deviation: f64,
    pub form_matches: bool,
}

impl CaseRow {
    pub fn status(&self) -> &'static str {
        match (self.bound_holds, self.form_matches) {
            (false, _) => "BOUND-FAIL",
            (true, false) => "FORM-MISMATCH",
            (true, true) => "OK",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseTable {
    pub rows: Vec<CaseRow>,
    pub grid_points: usize,
}

impl CaseTable {
    pub fn all_bounds_hold(&self) -> bool {
        self.rows.iter().all(|r| r.bound_holds)
    }

    pub fn row(&self, case: &str, locus: &str) -> Option<&CaseRow> {
        self.rows.iter().find(|r| r.case == case && r.locus == locus)
    }
}

fn k2(c: f64) -> f64 {
    (4.0 - c * c).powi(2)
}

fn sqrt_two_thirds() -> f64 {
    (2.0f64 / 3.0).sqrt()
}

fn closed_forms() -> Vec<ClosedForm> {
    let x1 = sqrt_two_thirds();
    let peak = 256.0 * 6f64.sqrt();
    let zero: Form = |_, _, _| 0.0;
    let edge_x1: Form = |c, _, _| k2(c) * (36.0 - 13.0 * c * c);
    let mut forms = vec![
        ClosedForm {
            case: "2.1", locus: "x=1, y=0", printed: "(4-c^2)^2 (36-13c^2)",
            free: "c", fixed: [0.0, 1.0, 0.0], form: edge_x1,
            claimed_max: 576.0, claimed_argmax: Some([0.0, 1.0, 0.0]),
        },
        ClosedForm {
            case: "2.1", locus: "x=1, y=1", printed: "(4-c^2)^2 (36-13c^2)",
            free: "c", fixed: [0.0, 1.0, 1.0], form: edge_x1,
            claimed_max: 576.0, claimed_argmax: Some([0.0, 1.0, 1.0]),
        },
        ClosedForm {
            case: "2.2", locus: "x=0, y=1", printed: "64 (4-c^2)^2",
            free: "c", fixed: [0.0, 0.0, 1.0], form: |c, _, _| 64.0 * k2(c),
            claimed_max: 1024.0, claimed_argmax: Some([0.0, 0.0, 1.0]),
        },
        ClosedForm {
            case: "2.3", locus: "c=0, y=0", printed: "-576x^3 + 1152x",
            free: "x", fixed: [0.0, 0.0, 0.0], form: |_, x, _| -576.0 * x.powi(3) + 1152.0 * x,
            claimed_max: peak, claimed_argmax: Some([0.0, x1, 0.0]),
        },
        ClosedForm {
            case: "2.4", locus: "c=0, y=1", printed: "1024 - 896x^2 + 576x^3 - 128x^4",
            free: "x", fixed: [0.0, 0.0, 1.0],
            form: |_, x, _| 1024.0 - 896.0 * x * x + 576.0 * x.powi(3) - 128.0 * x.powi(4),
            claimed_max: 1024.0, claimed_argmax: Some([0.0, 0.0, 1.0]),
        },
        ClosedForm {
            case: "2.5", locus: "c=0, x=0", printed: "1024y^2",
            free: "y", fixed: [0.0, 0.0, 0.0], form: |_, _, y| 1024.0 * y * y,
            claimed_max: 1024.0, claimed_argmax: Some([0.0, 0.0, 1.0]),
        },
        ClosedForm {
            case: "2.6", locus: "c=0, x=1", printed: "576",
            free: "y", fixed: [0.0, 1.0, 0.0], form: |_, _, _| 576.0,
            claimed_max: 576.0, claimed_argmax: None,
        },
    ];
    for (locus, free, fixed) in [
        ("c=2, x=0", "y", [2.0, 0.0, 0.0]),
        ("c=2, x=1", "y", [2.0, 1.0, 0.0]),
        ("c=2, y=0", "x", [2.0, 0.0, 0.0]),
        ("c=2, y=1", "x", [2.0, 0.0, 1.0]),
        ("x=0, y=0", "c", [0.0, 0.0, 0.0]),
    ] {
        forms.push(ClosedForm {
            case: "2.7", locus, printed: "0", free, fixed, form: zero,
            claimed_max: 0.0, claimed_argmax: None,
        });
    }
    forms.extend([
        ClosedForm {
            case: "3.1", locus: "c=2", printed: "0",
            free: "xy", fixed: [2.0, 0.0, 0.0], form: zero,
            claimed_max: 0.0, claimed_argmax: None,
        },
        ClosedForm {
            case: "3.2", locus: "c=0",
            printed: "1152 - 576x^3 + (1024 - 1152x - 896x^2 + 1152x^3 - 128x^4) y^2",
            free: "xy", fixed: [0.0, 0.0, 0.0],
            form: |_, x, y| {
                1152.0 - 576.0 * x.powi(3)
                    + (1024.0 - 1152.0 * x - 896.0 * x * x + 1152.0 * x.powi(3) - 128.0 * x.powi(4)) * y * y
            },
            claimed_max: 1024.0, claimed_argmax: Some([0.0, 0.0, 1.0]),
        },
        ClosedForm {
            case: "3.3", locus: "x=0", printed: "64 (4-c^2)^2 y^2",
            free: "cy", fixed: [0.0, 0.0, 0.0], form: |c, _, y| 64.0 * k2(c) * y * y,
            claimed_max: 1024.0, claimed_argmax: Some([0.0, 0.0, 1.0]),
        },
        ClosedForm {
            case: "3.4", locus: "x=1", printed: "(4-c^2)^2 (36-c^2)",
            free: "cy", fixed: [0.0, 1.0, 0.0], form: |c, _, _| k2(c) * (36.0 - c * c),
            claimed_max: 576.0, claimed_argmax: Some([0.0, 1.0, 0.0]),
        },
        ClosedForm {
            case: "3.5", locus: "y=0",
            printed: "(4-c^2)^2 (72x(1-x^2) + x^2(2c^2 + (36-13c^2)x + 2c^2x^2))",
            free: "cx", fixed: [0.0, 0.0, 0.0],
            form: |c, x, _| {
                k2(c) * (72.0 * x * (1.0 - x * x) + x * x * (2.0 * c * c + (36.0 - 13.0 * c * c) * x + 2.0 * c * c * x * x))
            },
            claimed_max: peak, claimed_argmax: Some([0.0, x1, 0.0]),
        },
        ClosedForm {
            case: "3.6", locus: "y=1",
            printed: "(4-c^2)^2 [x^2(2c^2x^2 + (36-13c^2)x + 2c^2) + 8cx(1+x)(1-x^2) + 8(8+x^2)(1-x^2)]",
            free: "cx", fixed: [0.0, 0.0, 1.0],
            form: |c, x, _| {
                k2(c) * (x * x * (2.0 * c * c * x * x + (36.0 - 13.0 * c * c) * x + 2.0 * c * c)
                    + 8.0 * c * x * (1.0 + x) * (1.0 - x * x)
                    + 8.0 * (8.0 + x * x) * (1.0 - x * x))
            },
            claimed_max: 1024.0, claimed_argmax: Some([0.0, 0.0, 1.0]),
        },
    ]);
    let vertices: [([f64; 3], f64, &'static str); 8] = [
        ([0.0, 0.0, 0.0], 0.0, "(0,0,0)"),
        ([2.0, 0.0, 0.0], 0.0, "(2,0,0)"),
        ([2.0, 1.0, 0.0], 0.0, "(2,1,0)"),
        ([2.0, 1.0, 1.0], 0.0, "(2,1,1)"),
        ([2.0, 0.0, 1.0], 0.0, "(2,0,1)"),
        ([0.0, 1.0, 0.0], 576.0, "(0,1,0)"),
        ([0.0, 1.0, 1.0], 576.0, "(0,1,1)"),
        ([0.0, 0.0, 1.0], 1024.0, "(0,0,1)"),
    ];
    for (point, value, locus) in vertices {
        let form: Form = match value as i64 {
            0 => |_, _, _| 0.0,
            576 => |_, _, _| 576.0,
            _ => |_, _, _| 1024.0,
        };
        forms.push(ClosedForm {
            case: "4", locus, printed: "vertex value", free: "", fixed: point, form,
            claimed_max: value, claimed_argmax: Some(point),
        });
    }
    forms
}

fn lexicographic_better(value: f64, point: [f64; 3], best: (f64, [f64; 3])) -> bool {
    value > best.0 || (value == best.0 && point < best.1)
}

fn evaluate(form: &ClosedForm, n: usize, tol: f64) -> CaseRow {
    let span = |axis: char| -> Vec<f64> {
        if form.free.contains(axis) {
            let max = if axis == 'c' { 2.0 } else { 1.0 };
            (0..=n).map(|i| max * i as f64 / n as f64).collect()
        } else {
            vec![form.fixed[match axis { 'c' => 0, 'x' => 1, _ => 2 }]]
        }
    };
    let mut points = Vec::new();
    for &c in &span('c') {
        for &x in &span('x') {
            for &y in &span('y') {
                points.push([c, x, y]);
            }
        }
    }
    if let Some(p) = form.claimed_argmax {
        points.push(p);
    }
    let mut best = (f64::NEG_INFINITY, [f64::INFINITY; 3]);
    let mut deviation: f64 = 0.0;
    let mut scale: f64 = 1.0;
    for p in points {
        let m = majorant(p[0], p[1], p[2]);
        let printed = (form.form)(p[0], p[1], p[2]);
        deviation = deviation.max((printed - m).abs());
        scale = scale.max(m.abs());
        if lexicographic_better(m, p, best) {
            best = (m, p);
        }
    }
    let tol_abs = tol * (1.0 + form.claimed_max.abs());
    CaseRow {
        case: form.case.to_string(),
        locus: form.locus.to_string(),
        printed: form.printed.to_string(),
        claimed_max: form.claimed_max,
        observed_max: best.0,
        observed_argmax: best.1,
        bound_holds: best.0 <= form.claimed_max + tol_abs,
        attained: (best.0 - form.claimed_max).abs() <= tol_abs,
        form_deviation: deviation,
        form_matches: deviation <= tol * scale,
    }
}

/// Relative tolerance for the bound, attainment and form checks.
pub const CASE_RELATIVE_TOLERANCE: f64 = 1e-9;

/// Evaluates every printed edge, face and vertex claim against `M` on a grid
/// with `n` subdivisions per free axis.
pub fn face_edge_values(n: usize) -> CaseTable {
    let rows = closed_forms().iter().map(|f| evaluate(f, n, CASE_RELATIVE_TOLERANCE)).collect();
    CaseTable { rows, grid_points: n + 1 }
}
