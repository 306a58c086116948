//! The extremal function `f₀(z) = z(1 − z³)^{−1/3}` and its inverse
//! `f₀⁻¹(w) = w(1 + w³)^{−1/3}`, built independently and cross-checked in
//! exact arithmetic.

use num::{One, Zero};

use crate::caratheodory::{starlike_from_p, CaratheodoryError};
use crate::functionals::{h3_direct, h3_inverse, inverse_from_direct, InverseCoefficients, SchlichtCoefficients};
use crate::scalar::{q, Rational};
use crate::series::TruncatedSeries;

/// `z(1 − s·z³)^{−1/3}` by the binomial series, truncated at `order`.
pub fn cube_root_series(sign: i64, order: usize) -> TruncatedSeries<Rational> {
    let mut coeffs = vec![Rational::zero(); order.max(1) + 1];
    // (1 − t)^{−1/3} = Σ b_k t^k with b_{k+1} = b_k (3k + 1) / (3k + 3)
    let mut b = Rational::one();
    let mut k = 0i64;
    while (3 * k as usize) < order {
        let signed = if sign < 0 && k % 2 == 1 { -b.clone() } else { b.clone() };
        coeffs[3 * k as usize + 1] = signed;
        b *= q(3 * k + 1, 3 * k + 3);
        k += 1;
    }
    TruncatedSeries::new(coeffs, order.max(1)).expect("length matches order")
}

/// `f₀` from `z f′/f = ½ + ½ p` with `p(z) = (1 + z³)/(1 − z³)`.
pub fn extremal_from_recurrence(order: usize) -> Result<TruncatedSeries<Rational>, CaratheodoryError> {
    let c: Vec<Rational> = (0..=order)
        .map(|n| match n {
            0 => Rational::one(),
            n if n % 3 == 0 => q(2, 1),
            _ => Rational::zero(),
        })
        .collect();
    let p = TruncatedSeries::new(c, order)?;
    starlike_from_p(&p, &q(1, 2), order)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalReport {
    pub order: usize,
    pub direct: Vec<Rational>,
    pub inverse: Vec<Rational>,
    /// Recurrence and binomial constructions of `f₀` coincide.
    pub constructions_agree: bool,
    /// Reversion, the coefficient formulas and the closed-form inverse coincide.
    pub inverse_routes_agree: bool,
    pub h3_direct: Rational,
    pub h3_inverse: Rational,
}

impl ExtremalReport {
    pub fn attains_one_ninth(&self) -> bool {
        let target = q(1, 9);
        self.h3_direct == -target.clone() && self.h3_inverse == -target
    }
}

/// Builds `f₀` and `f₀⁻¹` every available way up to `order ≥ 5`.
pub fn extremal_report(order: usize) -> Result<ExtremalReport, CaratheodoryError> {
    let order = order.max(5);
    let binomial = cube_root_series(1, order);
    let recurrence = extremal_from_recurrence(order)?;
    let reverted = binomial.revert()?;
    let closed_inverse = cube_root_series(-1, order);

    let a = SchlichtCoefficients::from_slice(&binomial.coeffs()[2..=5]);
    let from_formulas = inverse_from_direct(&a);
    let reverted_head = InverseCoefficients::from_slice(&reverted.coeffs()[2..=5]);

    Ok(ExtremalReport {
        order,
        direct: binomial.coeffs().to_vec(),
        inverse: reverted.coeffs().to_vec(),
        constructions_agree: binomial == recurrence,
        inverse_routes_agree: reverted == closed_inverse && from_formulas == reverted_head,
        h3_direct: h3_direct(&a),
        h3_inverse: h3_inverse(&from_formulas),
    })
}
