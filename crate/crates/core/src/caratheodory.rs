//! Members of the Carathéodory class: the three-parameter description of
//! `c_2, c_3, c_4`, finite Herglotz measures, and the map `p ↦ f` for starlike
//! functions of order `α`.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num::complex::Complex64;
use rand::Rng;
use rand_distr::{Beta, Distribution, Exp1};
use thiserror::Error;

use crate::scalar::Scalar;
use crate::series::{SeriesError, TruncatedSeries};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CaratheodoryError {
    #[error("c1 must be real and lie in [0, 2], got {0:?}")]
    C1OutOfRange(Complex64),
    #[error("|{name}| must not exceed 1, got {value:?}")]
    OutsideUnitDisk { name: &'static str, value: Complex64 },
    #[error("Herglotz measure must have at least one atom")]
    EmptyMeasure,
    #[error("Herglotz weights must be nonnegative and sum to 1 (sum = {0})")]
    BadWeights(f64),
    #[error("Herglotz atom {index} is off the unit circle (|x| = {modulus})")]
    AtomOffCircle { index: usize, modulus: f64 },
    #[error("p must have constant term 1")]
    NotNormalizedP,
    #[error("alpha must lie in [0, 1), got {0}")]
    BadAlpha(f64),
    #[error("evaluation failed at z = {0}")]
    Evaluation(Complex64),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// `(c_1, δ, η, ρ)` with `c_1 ∈ [0, 2]` real and `δ, η, ρ` in the closed unit disk.
#[derive(Debug, Clone, PartialEq)]
pub struct CaratheodoryParams<T> {
    c1: T,
    delta: T,
    eta: T,
    rho: T,
}

impl<T: Scalar> CaratheodoryParams<T> {
    pub fn new(c1: T, delta: T, eta: T, rho: T) -> Result<Self, CaratheodoryError> {
        match c1.real_part_if_real() {
            Some(r) if (0.0..=2.0).contains(&r) => {}
            _ => return Err(CaratheodoryError::C1OutOfRange(c1.to_c64())),
        }
        for (name, value) in [("delta", &delta), ("eta", &eta), ("rho", &rho)] {
            if !value.in_closed_unit_disk() {
                return Err(CaratheodoryError::OutsideUnitDisk { name, value: value.to_c64() });
            }
        }
        Ok(Self { c1, delta, eta, rho })
    }

    pub fn c1(&self) -> &T {
        &self.c1
    }

    pub fn delta(&self) -> &T {
        &self.delta
    }

    pub fn eta(&self) -> &T {
        &self.eta
    }

    pub fn rho(&self) -> &T {
        &self.rho
    }
}

/// `(c_2, c_3, c_4)` from the parametrization
///
/// ```text
/// 2c₂ = c₁² + δ(4 − c₁²)
/// 4c₃ = c₁³ + 2(4 − c₁²)c₁δ − (4 − c₁²)c₁δ² + 2(4 − c₁²)(1 − |δ|²)η
/// 8c₄ = c₁⁴ + (4 − c₁²)δ(c₁²(δ² − 3δ + 3) + 4δ)
///       − 4(4 − c₁²)(1 − |δ|²)(c₁(δ − 1)η + δ̄η² − (1 − |η|²)ρ)
/// ```
pub fn c_from_params<T: Scalar>(p: &CaratheodoryParams<T>) -> [T; 3] {
    lemma_coefficients(
        &p.c1,
        &p.delta,
        &p.delta.conj(),
        &p.eta,
        &p.eta.conj(),
        &p.rho,
    )
}

/// Same map with `δ̄` and `η̄` passed as independent values and no range checks.
///
/// The exact g-chain oracle uses this to treat the parameters as formal
/// indeterminates at rational points outside the unit disk.
pub fn lemma_coefficients<T: Scalar>(
    c1: &T,
    delta: &T,
    delta_bar: &T,
    eta: &T,
    eta_bar: &T,
    rho: &T,
) -> [T; 3] {
    let n = |k: i64| T::from_int(k);
    let c1 = c1.clone();
    let (d, db, e, eb, r) = (delta.clone(), delta_bar.clone(), eta.clone(), eta_bar.clone(), rho.clone());
    let c1sq = c1.clone() * c1.clone();
    let k = n(4) - c1sq.clone();
    let one_minus_dd = T::one() - d.clone() * db.clone();
    let one_minus_ee = T::one() - e.clone() * eb;

    let c2 = (c1sq.clone() + d.clone() * k.clone()) / n(2);

    let c3 = (c1sq.clone() * c1.clone()
        + n(2) * k.clone() * c1.clone() * d.clone()
        - k.clone() * c1.clone() * d.clone() * d.clone()
        + n(2) * k.clone() * one_minus_dd.clone() * e.clone())
        / n(4);

    let inner = c1sq.clone() * (d.clone() * d.clone() - n(3) * d.clone() + n(3)) + n(4) * d.clone();
    let bracket = c1.clone() * (d.clone() - T::one()) * e.clone() + db * e.clone() * e
        - one_minus_ee * r;
    let c4 = (c1sq.clone() * c1sq
        + k.clone() * d * inner
        - n(4) * k * one_minus_dd * bracket)
        / n(8);

    [c2, c3, c4]
}

/// Minimum eigenvalue of the Hermitian Toeplitz matrix `T_{jk} = c_{j-k}`
/// with `c_0 = 2` and `c_{-m} = conj(c_m)`.
///
/// Initial segments of Carathéodory coefficients are exactly those for which
/// this matrix is positive semidefinite.
pub fn toeplitz_min_eigenvalue(coeffs: &[Complex64]) -> f64 {
    let size = coeffs.len() + 1;
    let entry = |m: isize| -> Complex64 {
        match m {
            0 => Complex64::new(2.0, 0.0),
            m if m > 0 => coeffs[m as usize - 1],
            m => coeffs[(-m) as usize - 1].conj(),
        }
    };
    let t = DMatrix::from_fn(size, size, |j, k| entry(j as isize - k as isize));
    t.symmetric_eigen().eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
}

/// How moduli of `δ, η, ρ` are drawn.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SamplingMode {
    /// Uniform on the closed unit disk (rejection from the square).
    Uniform,
    /// Modulus `~ Beta(a, 1)`, which pushes mass toward the unit circle for `a > 1`.
    BoundaryBiased { concentration: f64 },
}

fn sample_disk<R: Rng + ?Sized>(rng: &mut R, mode: SamplingMode) -> Complex64 {
    match mode {
        SamplingMode::Uniform => loop {
            let z = Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0));
            if z.norm_sqr() <= 1.0 {
                return z;
            }
        },
        SamplingMode::BoundaryBiased { concentration } => {
            let beta = Beta::new(concentration, 1.0).expect("positive concentration");
            let r: f64 = beta.sample(rng);
            Complex64::from_polar(r.min(1.0), rng.gen_range(0.0..2.0 * PI))
        }
    }
}

/// Draws a valid parameter tuple: `c_1` uniform on `[0, 2]`, the rest per `mode`.
pub fn sample_params<R: Rng + ?Sized>(
    rng: &mut R,
    mode: SamplingMode,
) -> CaratheodoryParams<Complex64> {
    let c1 = Complex64::new(rng.gen_range(0.0..=2.0), 0.0);
    let delta = sample_disk(rng, mode);
    let eta = sample_disk(rng, mode);
    let rho = sample_disk(rng, mode);
    CaratheodoryParams::new(c1, delta, eta, rho).expect("sampler produces valid parameters")
}

/// Finite atomic probability measure on the unit circle.
#[derive(Debug, Clone, PartialEq)]
pub struct HerglotzMeasure {
    atoms: Vec<(f64, Complex64)>,
}

impl HerglotzMeasure {
    pub fn new(atoms: Vec<(f64, Complex64)>) -> Result<Self, CaratheodoryError> {
        if atoms.is_empty() {
            return Err(CaratheodoryError::EmptyMeasure);
        }
        let sum: f64 = atoms.iter().map(|(w, _)| w).sum();
        if atoms.iter().any(|(w, _)| *w < 0.0 || !w.is_finite()) || (sum - 1.0).abs() > 1e-12 {
            return Err(CaratheodoryError::BadWeights(sum));
        }
        for (index, (_, x)) in atoms.iter().enumerate() {
            if (x.norm() - 1.0).abs() > 1e-12 {
                return Err(CaratheodoryError::AtomOffCircle { index, modulus: x.norm() });
            }
        }
        Ok(Self { atoms })
    }

    /// Equal weights at the `k`-th roots of unity; generates `(1 + z^k)/(1 − z^k)`.
    pub fn roots_of_unity(k: usize) -> Result<Self, CaratheodoryError> {
        if k == 0 {
            return Err(CaratheodoryError::EmptyMeasure);
        }
        let w = 1.0 / k as f64;
        let atoms =
            (0..k).map(|j| (w, Complex64::from_polar(1.0, 2.0 * PI * j as f64 / k as f64))).collect();
        Self::new(atoms)
    }

    /// Dirichlet(1, …, 1) weights and uniform angles.
    pub fn sample<R: Rng + ?Sized>(rng: &mut R, atoms: usize) -> Result<Self, CaratheodoryError> {
        if atoms == 0 {
            return Err(CaratheodoryError::EmptyMeasure);
        }
        let raw: Vec<f64> = (0..atoms).map(|_| Exp1.sample(rng)).collect();
        let total: f64 = raw.iter().sum();
        let mut weights: Vec<f64> = raw.iter().map(|v| v / total).collect();
        // absorb rounding so the weights sum to 1 within the validation tolerance
        let drift = 1.0 - weights.iter().sum::<f64>();
        weights[atoms - 1] += drift;
        let points = (0..atoms).map(|_| Complex64::from_polar(1.0, rng.gen_range(0.0..2.0 * PI)));
        Self::new(weights.into_iter().zip(points).collect())
    }

    pub fn atoms(&self) -> &[(f64, Complex64)] {
        &self.atoms
    }

    /// `p(z) = Σ λ_k (1 + x_k z)/(1 − x_k z)`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.atoms
            .iter()
            .map(|&(w, x)| w * (1.0 + x * z) / (1.0 - x * z))
            .sum()
    }
}

/// Taylor coefficients `c_0 = 1`, `c_n = 2 Σ λ_k x_kⁿ` of the measure's `p`.
pub fn p_from_measure(
    measure: &HerglotzMeasure,
    order: usize,
) -> Result<TruncatedSeries<Complex64>, CaratheodoryError> {
    let mut coeffs = vec![Complex64::new(1.0, 0.0)];
    coeffs.extend((1..=order).map(|n| {
        measure.atoms.iter().map(|&(w, x)| 2.0 * w * x.powu(n as u32)).sum::<Complex64>()
    }));
    Ok(TruncatedSeries::new(coeffs, order)?)
}

/// Coefficients of the `f` with `z f′ = (α + (1 − α) p) f`, `f(z) = z + …`.
///
/// Matching `zⁿ` gives `(n − 1) a_n = (1 − α) Σ_{k=1}^{n−1} c_k a_{n−k}`; for
/// `α = 1/2` this is `a_n = (1/(2(n−1))) Σ c_k a_{n−k}`.
pub fn starlike_from_p<T: Scalar>(
    p: &TruncatedSeries<T>,
    alpha: &T,
    order: usize,
) -> Result<TruncatedSeries<T>, CaratheodoryError> {
    if !p.coeff(0).is_one() {
        return Err(CaratheodoryError::NotNormalizedP);
    }
    match alpha.real_part_if_real() {
        Some(a) if (0.0..1.0).contains(&a) => {}
        other => return Err(CaratheodoryError::BadAlpha(other.unwrap_or(f64::NAN))),
    }
    let weight = T::one() - alpha.clone();
    let mut a = vec![T::zero(), T::one()];
    for n in 2..=order {
        let sum = (1..n)
            .filter(|&k| k <= p.order())
            .fold(T::zero(), |acc, k| acc + p.coeff(k).clone() * a[n - k].clone());
        a.push(weight.clone() * sum / T::from_int(n as i64 - 1));
    }
    Ok(TruncatedSeries::from_prefix(&a, order.max(1))?)
}

/// Sampling grid for [`verify_membership`].
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid {
    pub radii: Vec<f64>,
    pub angles: usize,
}

impl Default for RadialGrid {
    fn default() -> Self {
        Self { radii: vec![0.25, 0.5, 0.75, 0.9, 0.99, 0.999], angles: 2048 }
    }
}

/// Outcome of a sampled real-part check. A pass is not a membership proof.
#[derive(Debug, Clone, PartialEq)]
pub struct MembershipReport {
    pub alpha: f64,
    pub min_real_part: f64,
    pub argmin: Complex64,
    pub samples: usize,
    pub passed: bool,
}

/// Samples `min Re q(z)` over the grid and compares it with `alpha - tolerance`.
pub fn check_real_part<F>(
    q: F,
    alpha: f64,
    grid: &RadialGrid,
    tolerance: f64,
) -> Result<MembershipReport, CaratheodoryError>
where
    F: Fn(Complex64) -> Option<Complex64>,
{
    let mut min_real_part = f64::INFINITY;
    let mut argmin = Complex64::new(0.0, 0.0);
    let mut samples = 0;
    for &r in &grid.radii {
        for j in 0..grid.angles {
            let z = Complex64::from_polar(r, 2.0 * PI * j as f64 / grid.angles as f64);
            let value = q(z).filter(|v| v.re.is_finite() && v.im.is_finite());
            let value = value.ok_or(CaratheodoryError::Evaluation(z))?;
            samples += 1;
            if value.re < min_real_part {
                min_real_part = value.re;
                argmin = z;
            }
        }
    }
    Ok(MembershipReport {
        alpha,
        min_real_part,
        argmin,
        samples,
        passed: min_real_part > alpha - tolerance,
    })
}

/// Falsification check for `Re(z f′/f) > α`; `f_and_derivative` returns `(f(z), f′(z))`.
pub fn verify_membership<F>(
    f_and_derivative: F,
    alpha: f64,
    grid: &RadialGrid,
) -> Result<MembershipReport, CaratheodoryError>
where
    F: Fn(Complex64) -> Option<(Complex64, Complex64)>,
{
    check_real_part(
        |z| {
            let (f, df) = f_and_derivative(z)?;
            (f.norm() > 0.0).then(|| z * df / f)
        },
        alpha,
        grid,
        1e-12,
    )
}
