//! Coefficient functionals: the maps `c ↦ a`, `a ↦ A`, `c ↦ A`, Hankel
//! determinants, and the closed-form polynomial for `H₃(1)(f⁻¹)` in `c₁..c₄`.

use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FunctionalError {
    #[error("Hankel determinant H_{q}({n}) needs coefficients a_1..a_{needed}, got {available}")]
    InsufficientCoefficients { q: usize, n: usize, needed: usize, available: usize },
    #[error("q and n must be at least 1")]
    BadIndex,
}

/// `a_2..a_5` of `f(z) = z + a₂z² + …`.
#[derive(Debug, Clone, PartialEq)]
pub struct SchlichtCoefficients<T> {
    pub a2: T,
    pub a3: T,
    pub a4: T,
    pub a5: T,
}

/// `A_2..A_5` of `f⁻¹(w) = w + A₂w² + …`.
#[derive(Debug, Clone, PartialEq)]
pub struct InverseCoefficients<T> {
    pub a2: T,
    pub a3: T,
    pub a4: T,
    pub a5: T,
}

impl<T: Scalar> SchlichtCoefficients<T> {
    pub fn from_slice(tail: &[T]) -> Self {
        let get = |k: usize| tail.get(k).cloned().unwrap_or_else(T::zero);
        Self { a2: get(0), a3: get(1), a4: get(2), a5: get(3) }
    }

    /// `[1, a2, a3, a4, a5]`, i.e. `a_1..a_5`.
    pub fn with_leading_one(&self) -> [T; 5] {
        [T::one(), self.a2.clone(), self.a3.clone(), self.a4.clone(), self.a5.clone()]
    }
}

impl<T: Scalar> InverseCoefficients<T> {
    pub fn from_slice(tail: &[T]) -> Self {
        let get = |k: usize| tail.get(k).cloned().unwrap_or_else(T::zero);
        Self { a2: get(0), a3: get(1), a4: get(2), a5: get(3) }
    }

    pub fn with_leading_one(&self) -> [T; 5] {
        [T::one(), self.a2.clone(), self.a3.clone(), self.a4.clone(), self.a5.clone()]
    }
}

fn r<T: Scalar>(num: i64, den: i64) -> T {
    T::from_ratio(num, den)
}

/// `a_n` of the order-1/2 starlike function generated by `p` with coefficients `c_n`.
pub fn a_from_c<T: Scalar>(c1: &T, c2: &T, c3: &T, c4: &T) -> SchlichtCoefficients<T> {
    let (c1, c2, c3, c4) = (c1.clone(), c2.clone(), c3.clone(), c4.clone());
    let c1sq = c1.clone() * c1.clone();
    SchlichtCoefficients {
        a2: c1.clone() * r(1, 2),
        a3: (r::<T>(2, 1) * c2.clone() + c1sq.clone()) * r(1, 8),
        a4: (r::<T>(8, 1) * c3.clone() + r::<T>(6, 1) * c1.clone() * c2.clone() + c1sq.clone() * c1.clone())
            * r(1, 48),
        a5: (r::<T>(48, 1) * c4
            + r::<T>(32, 1) * c1.clone() * c3
            + r::<T>(12, 1) * c2.clone() * c2.clone()
            + r::<T>(12, 1) * c1sq.clone() * c2
            + c1sq.clone() * c1sq)
            * r(1, 384),
    }
}

/// Inverse coefficients from `f(f⁻¹(w)) = w`:
///
/// ```text
/// A₂ = −a₂
/// A₃ = 2a₂² − a₃
/// A₄ = 5a₂a₃ − 5a₂³ − a₄
/// A₅ = 14a₂⁴ − 21a₃a₂² + 6a₂a₄ + 3a₃² − a₅
/// ```
pub fn inverse_from_direct<T: Scalar>(a: &SchlichtCoefficients<T>) -> InverseCoefficients<T> {
    let (a2, a3, a4, a5) = (a.a2.clone(), a.a3.clone(), a.a4.clone(), a.a5.clone());
    let a2sq = a2.clone() * a2.clone();
    InverseCoefficients {
        a2: -a2.clone(),
        a3: r::<T>(2, 1) * a2sq.clone() - a3.clone(),
        a4: r::<T>(5, 1) * a2.clone() * a3.clone() - r::<T>(5, 1) * a2sq.clone() * a2.clone() - a4.clone(),
        a5: r::<T>(14, 1) * a2sq.clone() * a2sq.clone() - r::<T>(21, 1) * a3.clone() * a2sq
            + r::<T>(6, 1) * a2 * a4
            + r::<T>(3, 1) * a3.clone() * a3
            - a5,
    }
}

/// `A_n` directly in terms of `c₁..c₄`.
pub fn inverse_from_c<T: Scalar>(c1: &T, c2: &T, c3: &T, c4: &T) -> InverseCoefficients<T> {
    let (c1, c2, c3, c4) = (c1.clone(), c2.clone(), c3.clone(), c4.clone());
    let c1sq = c1.clone() * c1.clone();
    InverseCoefficients {
        a2: -c1.clone() * r(1, 2),
        a3: r::<T>(3, 8) * c1sq.clone() - r::<T>(1, 4) * c2.clone(),
        a4: -r::<T>(1, 3) * c1sq.clone() * c1.clone() + r::<T>(1, 2) * c1.clone() * c2.clone()
            - r::<T>(1, 6) * c3.clone(),
        a5: r::<T>(125, 384) * c1sq.clone() * c1sq.clone() - r::<T>(25, 32) * c1sq * c2.clone()
            + r::<T>(5, 32) * c2.clone() * c2
            + r::<T>(5, 12) * c1 * c3
            - r::<T>(1, 8) * c4,
    }
}

/// Determinant of a square matrix by Gaussian elimination with
/// largest-modulus pivoting (exact for rational fields).
pub fn determinant<T: Scalar>(mut m: Vec<Vec<T>>) -> T {
    let size = m.len();
    let mut det = T::one();
    for col in 0..size {
        let pivot = (col..size)
            .filter(|&row| !m[row][col].is_zero())
            .max_by(|&i, &j| m[i][col].modulus().total_cmp(&m[j][col].modulus()));
        let Some(pivot) = pivot else {
            return T::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let head = m[col][col].clone();
        det = det * head.clone();
        for row in col + 1..size {
            let factor = m[row][col].clone() / head.clone();
            if factor.is_zero() {
                continue;
            }
            for k in col..size {
                let delta = factor.clone() * m[col][k].clone();
                m[row][k] = m[row][k].clone() - delta;
            }
        }
    }
    det
}

/// `H_q(n)`: determinant of `[a_{n+i+j}]_{i,j=0..q-1}`.
///
/// `coeffs[k]` holds `a_{k+1}`, so `coeffs[0]` is `a_1`.
pub fn hankel_det<T: Scalar>(coeffs: &[T], q: usize, n: usize) -> Result<T, FunctionalError> {
    if q == 0 || n == 0 {
        return Err(FunctionalError::BadIndex);
    }
    let needed = n + 2 * q - 2;
    if coeffs.len() < needed {
        return Err(FunctionalError::InsufficientCoefficients { q, n, needed, available: coeffs.len() });
    }
    let matrix = hankel_matrix(coeffs, q, n);
    Ok(determinant(matrix))
}

pub(crate) fn hankel_matrix<T: Scalar>(coeffs: &[T], q: usize, n: usize) -> Vec<Vec<T>> {
    (0..q).map(|i| (0..q).map(|j| coeffs[n - 1 + i + j].clone()).collect()).collect()
}

/// `H₃(1)(f)` for `f = z + a₂z² + … + a₅z⁵`.
pub fn h3_direct<T: Scalar>(a: &SchlichtCoefficients<T>) -> T {
    hankel_det(&a.with_leading_one(), 3, 1).expect("five coefficients are enough for H_3(1)")
}

/// `H₃(1)(f⁻¹)` from the inverse coefficients.
pub fn h3_inverse<T: Scalar>(a: &InverseCoefficients<T>) -> T {
    hankel_det(&a.with_leading_one(), 3, 1).expect("five coefficients are enough for H_3(1)")
}

/// Closed form of `H₃(1)(f⁻¹)` for `f ∈ S*(1/2)` in terms of `c₁..c₄`.
pub fn h3_inverse_poly<T: Scalar>(c1: &T, c2: &T, c3: &T, c4: &T) -> T {
    let (c1, c2, c3, c4) = (c1.clone(), c2.clone(), c3.clone(), c4.clone());
    let n = |k: i64| T::from_int(k);
    let c1_2 = c1.clone() * c1.clone();
    let c1_3 = c1_2.clone() * c1.clone();
    let c1_4 = c1_2.clone() * c1_2.clone();
    let c1_6 = c1_4.clone() * c1_2.clone();
    let numerator = n(17) * c1_6 - n(102) * c1_4 * c2.clone() + n(32) * c1_3 * c3.clone()
        + n(180) * c1_2.clone() * c2.clone() * c2.clone()
        - n(144) * c1_2 * c4.clone()
        + n(192) * c1 * c2.clone() * c3.clone()
        - n(216) * c2.clone() * c2.clone() * c2.clone()
        + n(288) * c2 * c4
        - n(256) * c3.clone() * c3;
    numerator / n(9216)
}
