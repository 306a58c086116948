//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

use std::time::{Duration, Instant};

use hankel_core::bound_search::{
    critical_point_exclusion, interior_sign_check, majorant_m, scan_cuboid, triangle_dominance_check,
    ExclusionMode, Face,
};
use hankel_core::caratheodory::{
    c_from_params, p_from_measure, sample_params, toeplitz_min_eigenvalue, CaratheodoryParams, HerglotzMeasure,
    SamplingMode,
};
use hankel_core::extremal::{cube_root_series, extremal_from_recurrence, extremal_report};
use hankel_core::functionals::{
    a_from_c, h3_direct, h3_inverse, h3_inverse_poly, hankel_det, inverse_from_c, inverse_from_direct,
};
use hankel_core::scalar::{cq, q, ComplexRational, Rational};
use hankel_core::series::{koebe_inverse_magnitude, TruncatedSeries};
use num::complex::Complex64;
use num::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_240_917;

// tolerances and limits
const C1_LIMIT: Duration = Duration::from_secs(5);
const C2_LIMIT: Duration = Duration::from_secs(5);
const C3_LIMIT: Duration = Duration::from_secs(1);
const C3_TOL: f64 = 1e-9;
const C4_LIMIT: Duration = Duration::from_secs(60);
const C4_SUP_FACTOR: f64 = 1.001;
const C4_INDUCED_SLACK: f64 = 1.2e-4;
const C6_LIMIT: Duration = Duration::from_secs(30);
const C6_TOL: f64 = 1e-9;
const C7_LIMIT: Duration = Duration::from_secs(60);
const C8_LIMIT: Duration = Duration::from_secs(120);
const C8_TOL: f64 = 1e-9;
const C8_ATTAIN_TOL: f64 = 1e-12;
const C9_EIG_TOL: f64 = 1e-9;
const C9_MOD_TOL: f64 = 1e-12;

type Check = Box<dyn FnOnce() -> Outcome>;

struct Outcome {
    pass: bool,
    detail: String,
}

fn timed(limit: Duration, check: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut out = check();
    let elapsed = start.elapsed();
    out.detail = format!("{}; {:.2}s (limit {}s)", out.detail, elapsed.as_secs_f64(), limit.as_secs());
    out.pass &= elapsed <= limit;
    out
}

fn rational_in(rng: &mut ChaCha8Rng, lo: i64, hi: i64, den: i64) -> Rational {
    q(rng.gen_range(lo * den..=hi * den), den)
}

fn gaussian_in_disk(rng: &mut ChaCha8Rng) -> ComplexRational {
    loop {
        let re = rational_in(rng, -1, 1, 16);
        let im = rational_in(rng, -1, 1, 16);
        if &re * &re + &im * &im <= Rational::one() {
            return cq(re, im);
        }
    }
}

fn criterion_1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut bad = 0;
    for _ in 0..100 {
        let c1 = cq(rational_in(&mut rng, 0, 2, 32), Rational::zero());
        let p = CaratheodoryParams::new(c1, gaussian_in_disk(&mut rng), gaussian_in_disk(&mut rng), gaussian_in_disk(&mut rng))
            .expect("valid tuple");
        let [c2, c3, c4] = c_from_params(&p);
        let c1 = p.c1();
        let big_a = inverse_from_c(c1, &c2, &c3, &c4);
        let via_det = hankel_det(&big_a.with_leading_one(), 3, 1).expect("five coefficients");
        let poly = h3_inverse_poly(c1, &c2, &c3, &c4);
        let composed = inverse_from_direct(&a_from_c(c1, &c2, &c3, &c4));
        if poly != via_det || composed != big_a {
            bad += 1;
        }
    }
    Outcome { pass: bad == 0, detail: format!("{bad}/100 exact mismatches") }
}

fn catalan(n: u32) -> Rational {
    // C_n = binom(2n, n) / (n + 1)
    let mut b = Rational::one();
    for k in 0..n {
        b *= q(2 * n as i64 - k as i64, k as i64 + 1);
    }
    b / q(n as i64 + 1, 1)
}

fn criterion_2() -> Outcome {
    let order = 8;
    let koebe: Vec<Rational> = (0..=order).map(|n| q(n as i64, 1)).collect();
    let inv = TruncatedSeries::new(koebe, order).unwrap().revert().unwrap();
    let mut koebe_ok = true;
    for n in 2..=8u32 {
        let k = Rational::from_integer(koebe_inverse_magnitude(n).into());
        koebe_ok &= inv.coeff(n as usize).abs() == k && k == catalan(n);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let id = TruncatedSeries::<Rational>::identity(order).unwrap();
    let mut bad = 0;
    for _ in 0..50 {
        let tail: Vec<Rational> = (2..=order).map(|_| rational_in(&mut rng, -3, 3, 7)).collect();
        let f = TruncatedSeries::normalized(&tail, order).unwrap();
        let g = f.revert().unwrap();
        if f.compose(&g).unwrap() != id || g.compose(&f).unwrap() != id {
            bad += 1;
        }
    }
    Outcome {
        pass: koebe_ok && bad == 0,
        detail: format!("Koebe magnitudes exact: {koebe_ok}; {bad}/50 reversion failures"),
    }
}

fn criterion_3() -> Outcome {
    let corner = majorant_m(0.0, 0.0, 1.0).unwrap() == 1024.0;
    let mut c2_zero = true;
    for i in 0..50 {
        for j in 0..50 {
            c2_zero &= majorant_m(2.0, i as f64 / 49.0, j as f64 / 49.0).unwrap() == 0.0;
        }
    }
    let mut worst = 0.0f64;
    let mut worst_c = 0.0;
    let mut edge_max = (f64::NEG_INFINITY, 0.0);
    for i in 0..=200 {
        let c = 2.0 * i as f64 / 200.0;
        let m = majorant_m(c, 1.0, 0.0).unwrap();
        let stated = (4.0 - c * c).powi(2) * (36.0 - 13.0 * c * c);
        if (m - stated).abs() > worst {
            worst = (m - stated).abs();
            worst_c = c;
        }
        if m > edge_max.0 {
            edge_max = (m, c);
        }
    }
    let identity = worst <= C3_TOL;
    let edge = edge_max == (576.0, 0.0);
    let x1 = (2.0f64 / 3.0).sqrt();
    let face = (majorant_m(0.0, x1, 0.0).unwrap() - 256.0 * 6f64.sqrt()).abs() <= C3_TOL;
    Outcome {
        pass: corner && c2_zero && identity && edge && face,
        detail: format!(
            "M(0,0,1)=1024: {corner}; M(2,.,.)=0: {c2_zero}; M(c,1,0)=(4-c^2)^2(36-13c^2): {identity} \
             (max dev {worst:.6e} at c={worst_c}); max 576 at c=0: {edge}; M(0,sqrt(2/3),0)=256sqrt6: {face}"
        ),
    }
}

fn criterion_4() -> Outcome {
    let cert = scan_cuboid(0.01, true).expect("valid step");
    let at_corner = cert.observed_max == 1024.0 && cert.argmax == [0.0, 0.0, 1.0];
    let sup_ok = cert.sup_m <= 1024.0 * C4_SUP_FACTOR;
    let induced_ok = cert.induced_h3_bound >= 1.0 / 9.0 && cert.induced_h3_bound <= 1.0 / 9.0 + C4_INDUCED_SLACK;
    Outcome {
        pass: at_corner && sup_ok && induced_ok,
        detail: format!(
            "observed {} at {:?}; sup_m {:.6}; induced {:.9}; refined cells {}",
            cert.observed_max, cert.argmax, cert.sup_m, cert.induced_h3_bound, cert.refined_cells
        ),
    }
}

fn criterion_5() -> Outcome {
    let r = extremal_report(8).expect("extremal construction");
    let recurrence = extremal_from_recurrence(8).unwrap();
    let binomial = cube_root_series(1, 8);
    let same = recurrence == binomial && r.constructions_agree && r.inverse_routes_agree;
    let ninth = q(1, 9);
    let direct = r.h3_direct.abs() == ninth;
    let inverse = r.h3_inverse.abs() == ninth;
    Outcome {
        pass: same && direct && inverse,
        detail: format!(
            "constructions agree: {same}; H3(f0) = {}; H3(f0^-1) = {}",
            r.h3_direct, r.h3_inverse
        ),
    }
}

fn criterion_6() -> Outcome {
    let uniform = triangle_dominance_check(10_000, SEED + 6, SamplingMode::Uniform, C6_TOL);
    let boundary =
        triangle_dominance_check(10_000, SEED + 7, SamplingMode::BoundaryBiased { concentration: 8.0 }, C6_TOL);
    let violations = |r: &hankel_core::bound_search::DominanceReport| {
        r.triangle_violations + r.majorant_violations + r.identity_violations
    };
    let total = violations(&uniform) + violations(&boundary);
    Outcome {
        pass: total == 0,
        detail: format!(
            "violations uniform {} / boundary-biased {}; worst majorant margin {:.3e}",
            violations(&uniform),
            violations(&boundary),
            uniform.worst_majorant_margin.min(boundary.worst_majorant_margin)
        ),
    }
}

fn criterion_7() -> Outcome {
    let interior = interior_sign_check(512);
    let y0 = critical_point_exclusion(Face::Y0, 512, ExclusionMode::Float).unwrap();
    let y1 = critical_point_exclusion(Face::Y1, 512, ExclusionMode::Float).unwrap();
    let clean = |r: &hankel_core::bound_search::ExclusionReport| r.common_zero_cells == 0 && r.undecided_cells == 0;
    Outcome {
        pass: interior.all_negative() && clean(&y0) && clean(&y1),
        detail: format!(
            "max y0 {:.3e}; y=0 face common/undecided {}/{}; y=1 face common/undecided {}/{} (boundary-zero cells {})",
            interior.max_y0,
            y0.common_zero_cells,
            y0.undecided_cells,
            y1.common_zero_cells,
            y1.undecided_cells,
            y1.boundary_zero_cells
        ),
    }
}

fn h3_pair(measure: &HerglotzMeasure) -> (f64, f64) {
    let p = p_from_measure(measure, 4).unwrap();
    let c = p.coeffs();
    let a = a_from_c(&c[1], &c[2], &c[3], &c[4]);
    (h3_direct(&a).norm(), h3_inverse(&inverse_from_direct(&a)).norm())
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 8);
    let (mut max_direct, mut max_inverse) = (0.0f64, 0.0f64);
    for _ in 0..100_000 {
        let atoms = rng.gen_range(1..=4);
        let m = HerglotzMeasure::sample(&mut rng, atoms).unwrap();
        let (d, i) = h3_pair(&m);
        max_direct = max_direct.max(d);
        max_inverse = max_inverse.max(i);
    }
    let (rd, ri) = h3_pair(&HerglotzMeasure::roots_of_unity(3).unwrap());
    let ninth = 1.0 / 9.0;
    let bounded = max_direct <= ninth + C8_TOL && max_inverse <= ninth + C8_TOL;
    let attained = (rd - ninth).abs() <= C8_ATTAIN_TOL && (ri - ninth).abs() <= C8_ATTAIN_TOL;
    Outcome {
        pass: bounded && attained,
        detail: format!(
            "max |H3(f)| {max_direct:.12}; max |H3(f^-1)| {max_inverse:.12}; roots of unity {rd:.15}/{ri:.15}"
        ),
    }
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 9);
    let (mut min_eig, mut max_mod) = (f64::INFINITY, 0.0f64);
    for k in 0..10_000 {
        let mode = if k % 2 == 0 { SamplingMode::Uniform } else { SamplingMode::BoundaryBiased { concentration: 8.0 } };
        let p = sample_params(&mut rng, mode);
        let [c2, c3, c4] = c_from_params(&p);
        let coeffs: [Complex64; 4] = [*p.c1(), c2, c3, c4];
        min_eig = min_eig.min(toeplitz_min_eigenvalue(&coeffs));
        max_mod = coeffs.iter().map(|c| c.norm()).fold(max_mod, f64::max);
    }
    Outcome {
        pass: min_eig >= -C9_EIG_TOL && max_mod <= 2.0 + C9_MOD_TOL,
        detail: format!("min Toeplitz eigenvalue {min_eig:.3e}; max |c_n| {max_mod:.15}"),
    }
}

fn main() {
    let criteria: [(&str, Check); 9] = [
        ("exact oracle identities", Box::new(|| timed(C1_LIMIT, criterion_1))),
        ("Koebe magnitudes and reversion", Box::new(|| timed(C2_LIMIT, criterion_2))),
        ("majorant anchors", Box::new(|| timed(C3_LIMIT, criterion_3))),
        ("certified cuboid scan", Box::new(|| timed(C4_LIMIT, criterion_4))),
        ("extremal function", Box::new(criterion_5)),
        ("dominance chain", Box::new(|| timed(C6_LIMIT, criterion_6))),
        ("critical-point exclusion", Box::new(|| timed(C7_LIMIT, criterion_7))),
        ("Herglotz sampling", Box::new(|| timed(C8_LIMIT, criterion_8))),
        ("Caratheodory parametrization", Box::new(criterion_9)),
    ];
    let mut failures = 0;
    for (index, (name, check)) in criteria.into_iter().enumerate() {
        let out = check();
        if !out.pass {
            failures += 1;
        }
        println!("criterion {} [{}] {name}: {}", index + 1, if out.pass { "PASS" } else { "FAIL" }, out.detail);
    }
    println!("acceptance: {}/9 passed", 9 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
