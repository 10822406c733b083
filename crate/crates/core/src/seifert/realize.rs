//! Metabolic Seifert matrices with prescribed Alexander polynomial
//! `f(t)·f(t⁻¹)`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::SeifertMatrix;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::polyring::LaurentPoly;

/// Builds `A = [[0, B], [Bᵗ − I, 0]]` with `det(I + (t−1)B) = f(t)`.
///
/// `f` must satisfy `f(1) = ±1`. The Λ-span of the last `g` dual basis
/// elements is a metabolizer of the resulting Blanchfield module
/// `Λ/f(t) ⊕ Λ/f(t⁻¹)`.
pub fn metabolic_realization(f: &LaurentPoly) -> Result<SeifertMatrix> {
    let mut coeffs = f.normalized_dense()?;
    let at_one: BigInt = coeffs.iter().sum();
    if !at_one.abs().is_one() {
        return Err(Error::Invalid(format!("f(1) = {at_one}, expected ±1")));
    }
    if at_one.is_negative() {
        coeffs.iter_mut().for_each(|c| *c = -&*c);
    }
    // h(s) = f(1 + s) = 1 + a_1 s + … + a_g s^g
    let g = coeffs.len() - 1;
    let mut h = vec![BigInt::zero(); g + 1];
    for (i, c) in coeffs.iter().enumerate() {
        // (1 + s)^i
        let mut binom = BigInt::one();
        for j in 0..=i {
            h[j] += c * &binom;
            binom = binom * (i - j) / (j + 1);
        }
    }
    debug_assert!(h[0].is_one());
    if g == 0 {
        return Ok(SeifertMatrix::unknot());
    }
    // B = −companion(x^g + a_1 x^{g−1} + … + a_g), so det(I − sC) = h(s)
    let mut b = Matrix::zeros(g, g);
    for i in 0..g {
        if i + 1 < g {
            b[(i + 1, i)] = BigInt::from(-1);
        }
        b[(i, g - 1)] = h[g - i].clone();
    }
    let bt_minus_i = &b.transpose() - &Matrix::identity(g);
    let mut a = Matrix::zeros(2 * g, 2 * g);
    a.set_block(0, g, &b);
    a.set_block(g, 0, &bt_minus_i);
    SeifertMatrix::new(a)
}

/// Dual-basis coordinates of the standard metabolizer generators of
/// [`metabolic_realization`] with half-dimension `g`.
pub fn realization_metabolizer(g: usize) -> Vec<Vec<i64>> {
    (g..2 * g)
        .map(|i| (0..2 * g).map(|j| (i == j) as i64).collect())
        .collect()
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::cyclotomic;

    #[test]
    fn prescribed_alexander_polynomials() {
        let phi30 = cyclotomic(30).unwrap();
        let p = LaurentPoly::from_i64s(&[1, -4, 4], 0);
        let terasaka = LaurentPoly::from_i64s(&[4, -3, 2, 4, -7, 1, 2, -3, 1], 0);
        for f in [phi30, p, terasaka, LaurentPoly::from_i64s(&[2, -1], 0)] {
            let a = metabolic_realization(&f).unwrap();
            let expect = (&f * &f.reciprocal()).normalize_units().unwrap();
            assert_eq!(a.alexander(), expect, "f = {f}");
            assert_eq!(a.dim(), 2 * f.span() as usize);
        }
    }

    #[test]
    fn rejects_bad_value_at_one() {
        assert!(metabolic_realization(&LaurentPoly::from_i64s(&[1, 1], 0)).is_err());
        assert_eq!(metabolic_realization(&LaurentPoly::one()).unwrap().dim(), 0);
    }
}
