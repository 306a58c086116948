//! Certified maximization of `M` over a box of `Ω`.
//!
//! Grid vertices give the observed maximum. Each grid cell gets an upper
//! bound from the smaller of the natural interval extension and the
//! mean-value form `M(center) + Σ |∂ᵢM|·rᵢ` with interval gradients.
//! Cells whose bound exceeds the observed maximum by more than the
//! tolerance are bisected until they do not or the depth limit is hit.

use rayon::prelude::*;
use serde::Serialize;

use crate::interval::{Dual3, Interval};

use super::majorant::majorant;
use super::{BoundError, CuboidRegion, H3_SCALE};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanOptions {
    pub grid_step: f64,
    pub refine: bool,
    /// Absolute slack above the observed maximum below which a cell is settled.
    pub refine_tolerance: f64,
    pub max_depth: usize,
}

impl ScanOptions {
    pub fn new(grid_step: f64, refine: bool) -> Self {
        Self { grid_step, refine, refine_tolerance: 0.05, max_depth: 24 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCertificate {
    /// Rigorous upper bound of `M` over the region.
    pub sup_m: f64,
    pub argmax: [f64; 3],
    pub observed_max: f64,
    pub grid_step: f64,
    /// `sup_m = observed_max + lipschitz_slack · grid_step` (rounded up).
    pub lipschitz_slack: f64,
    /// Upper bound of `|∂c M| + |∂x M| + |∂y M|` over `Ω`.
    pub lipschitz_constant: f64,
    /// `sup_m / 9216`, rounded up.
    pub induced_h3_bound: f64,
    pub cells: usize,
    pub refined_cells: usize,
}

/// Vertices and cells along one axis; a degenerate axis is one point cell.
fn axis(iv: Interval, step: f64) -> (Vec<f64>, Vec<Interval>) {
    if iv.width() == 0.0 {
        return (vec![iv.lo()], vec![iv]);
    }
    let n = ((iv.width() / step) - 1e-9).ceil().max(1.0) as usize;
    let vertices: Vec<f64> = (0..=n)
        .map(|i| if i == n { iv.hi() } else { iv.lo() + iv.width() * i as f64 / n as f64 })
        .collect();
    let cells = vertices.windows(2).map(|w| Interval::new(w[0], w[1])).collect();
    (vertices, cells)
}

/// Larger value wins; ties go to the lexicographically smaller point.
fn better(a: (f64, [f64; 3]), b: (f64, [f64; 3])) -> (f64, [f64; 3]) {
    match a.0.partial_cmp(&b.0) {
        Some(std::cmp::Ordering::Greater) => a,
        Some(std::cmp::Ordering::Less) => b,
        _ => {
            if a.1.partial_cmp(&b.1) == Some(std::cmp::Ordering::Greater) {
                b
            } else {
                a
            }
        }
    }
}

const NONE: (f64, [f64; 3]) = (f64::NEG_INFINITY, [f64::INFINITY; 3]);

/// Upper bound of `M` over a box.
fn cell_bound(c: Interval, x: Interval, y: Interval) -> f64 {
    let natural = majorant(c, x, y).hi();
    let grad = majorant(Dual3::variable(c, 0), Dual3::variable(x, 1), Dual3::variable(y, 2)).grad;
    let center = [c.mid(), x.mid(), y.mid()];
    let mut bound = majorant(Interval::point(center[0]), Interval::point(center[1]), Interval::point(center[2]));
    for (i, iv) in [c, x, y].into_iter().enumerate() {
        let radius = (iv.hi() - center[i]).max(center[i] - iv.lo());
        bound = bound + Interval::point(grad[i].mag()) * Interval::point(radius);
    }
    natural.min(bound.hi())
}

struct CellOutcome {
    bound: f64,
    best: (f64, [f64; 3]),
    refined: usize,
}

fn split(iv: Interval) -> Vec<Interval> {
    if iv.width() == 0.0 {
        vec![iv]
    } else {
        let (a, b) = iv.bisect();
        vec![a, b]
    }
}

fn refine_cell(c: Interval, x: Interval, y: Interval, threshold: f64, depth: usize) -> CellOutcome {
    let bound = cell_bound(c, x, y);
    if bound <= threshold || depth == 0 {
        return CellOutcome { bound, best: NONE, refined: 0 };
    }
    let point = [c.mid(), x.mid(), y.mid()];
    let mut out = CellOutcome { bound: f64::NEG_INFINITY, best: (majorant(point[0], point[1], point[2]), point), refined: 1 };
    for cc in split(c) {
        for xx in split(x) {
            for yy in split(y) {
                let child = refine_cell(cc, xx, yy, threshold, depth - 1);
                out.bound = out.bound.max(child.bound);
                out.best = better(out.best, child.best);
                out.refined += child.refined;
            }
        }
    }
    // a parent bound is still valid; keep the sharper one
    out.bound = out.bound.min(bound);
    out
}

/// Upper bound of the `ℓ¹` gradient norm of `M` over `Ω`.
pub fn global_gradient_bound() -> f64 {
    let pieces = 16;
    let mut best: f64 = 0.0;
    for i in 0..pieces {
        for j in 0..pieces {
            for k in 0..pieces {
                let c = Interval::new(2.0 * i as f64 / pieces as f64, 2.0 * (i + 1) as f64 / pieces as f64);
                let x = Interval::new(j as f64 / pieces as f64, (j + 1) as f64 / pieces as f64);
                let y = Interval::new(k as f64 / pieces as f64, (k + 1) as f64 / pieces as f64);
                let g = majorant(Dual3::variable(c, 0), Dual3::variable(x, 1), Dual3::variable(y, 2)).grad;
                let norm = Interval::point(g[0].mag()) + Interval::point(g[1].mag()) + Interval::point(g[2].mag());
                best = best.max(norm.hi());
            }
        }
    }
    best
}

pub fn scan_region(region: &CuboidRegion, opts: &ScanOptions) -> Result<BoundCertificate, BoundError> {
    if !(opts.grid_step > 0.0 && opts.grid_step <= 0.05) {
        return Err(BoundError::InvalidGridStep(opts.grid_step));
    }
    let (cv, cc) = axis(region.c, opts.grid_step);
    let (xv, xc) = axis(region.x, opts.grid_step);
    let (yv, yc) = axis(region.y, opts.grid_step);

    let observed = (0..cv.len())
        .into_par_iter()
        .map(|i| {
            let mut best = NONE;
            for &x in &xv {
                for &y in &yv {
                    best = better(best, (majorant(cv[i], x, y), [cv[i], x, y]));
                }
            }
            best
        })
        .reduce(|| NONE, better);

    let threshold = observed.0 + opts.refine_tolerance;
    let depth = if opts.refine { opts.max_depth } else { 0 };
    let (bound, refined_best, refined) = (0..cc.len())
        .into_par_iter()
        .map(|i| {
            let mut acc = (f64::NEG_INFINITY, NONE, 0usize);
            for &x in &xc {
                for &y in &yc {
                    let out = refine_cell(cc[i], x, y, threshold, depth);
                    acc = (acc.0.max(out.bound), better(acc.1, out.best), acc.2 + out.refined);
                }
            }
            acc
        })
        .reduce(
            || (f64::NEG_INFINITY, NONE, 0usize),
            |a, b| (a.0.max(b.0), better(a.1, b.1), a.2 + b.2),
        );

    let best = better(observed, refined_best);
    let sup_m = bound.max(best.0);
    let step = opts.grid_step;
    let mut slack = ((sup_m - best.0) / step).max(0.0);
    while best.0 + slack * step < sup_m {
        slack = slack.next_up();
    }
    let mut induced = sup_m / H3_SCALE;
    if induced.mul_add(H3_SCALE, -sup_m) < 0.0 {
        induced = induced.next_up();
    }
    Ok(BoundCertificate {
        sup_m,
        argmax: best.1,
        observed_max: best.0,
        grid_step: step,
        lipschitz_slack: slack,
        lipschitz_constant: global_gradient_bound(),
        induced_h3_bound: induced,
        cells: cc.len() * xc.len() * yc.len(),
        refined_cells: refined,
    })
}

/// [`scan_region`] over the full cuboid.
pub fn scan_cuboid(grid_step: f64, refine: bool) -> Result<BoundCertificate, BoundError> {
    scan_region(&CuboidRegion::omega(), &ScanOptions::new(grid_step, refine))
}
