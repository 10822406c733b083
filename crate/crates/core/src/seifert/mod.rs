//! Seifert matrices and their invariants.

mod metabolic;
mod realize;
mod roots;
mod signature;
mod sum;

pub use metabolic::{metabolic_witness, MetabolicWitness, WitnessMode};
pub use realize::{metabolic_realization, realization_metabolizer};
pub use roots::{circle_roots, CircleRoot};
pub use signature::{
    signature_integral, signature_profile, tolerance, Arc, Breakpoint, IntegralValue,
    PointValue, SignatureProfile,
};
pub use sum::{SeifertSum, SumPart};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::polyring::LaurentPoly;

/// Square integer matrix `A` with `det(A − Aᵗ) = ±1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SeifertMatrix {
    a: Matrix,
}

impl SeifertMatrix {
    pub fn new(a: Matrix) -> Result<Self> {
        Self::named(a, None)
    }

    pub fn named(a: Matrix, name: Option<&str>) -> Result<Self> {
        let bad = |reason: String| Error::InvalidSeifert { name: name.map(str::to_owned), reason };
        if !a.is_square() {
            return Err(bad(format!("not square ({}×{})", a.rows(), a.cols())));
        }
        if !a.rows().is_multiple_of(2) {
            return Err(bad(format!("odd dimension {}", a.rows())));
        }
        let d = (&a - &a.transpose()).det();
        if !d.abs().is_one() {
            return Err(bad(format!("det(A − Aᵗ) = {d}, expected ±1")));
        }
        Ok(SeifertMatrix { a })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(Matrix::from_rows(rows))
    }

    pub fn unknot() -> Self {
        SeifertMatrix { a: Matrix::zeros(0, 0) }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.a
    }

    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    pub fn genus(&self) -> usize {
        self.dim() / 2
    }

    pub fn rows_i64(&self) -> Vec<Vec<i64>> {
        self.a.to_i64_rows().expect("Seifert entries fit in i64")
    }

    pub fn transpose(&self) -> Self {
        SeifertMatrix { a: self.a.transpose() }
    }

    /// `−A`; represents the concordance inverse.
    pub fn negate(&self) -> Self {
        SeifertMatrix { a: -&self.a }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        SeifertMatrix { a: Matrix::block_diag(&[&self.a, &other.a]) }
    }

    /// `m·A`: the |m|-fold direct sum of `A` (of `−A` when `m < 0`).
    pub fn multiple(&self, m: i64) -> Self {
        let base = if m < 0 { self.negate() } else { self.clone() };
        (0..m.unsigned_abs()).fold(Self::unknot(), |acc, _| acc.direct_sum(&base))
    }

    /// `P A Pᵗ` for unimodular `P`.
    pub fn congruent(&self, p: &Matrix) -> Result<Self> {
        Self::new(&(p * &self.a) * &p.transpose())
    }

    /// Normalized `det(At − Aᵗ)`.
    pub fn alexander(&self) -> LaurentPoly {
        let n = self.dim();
        if n == 0 {
            return LaurentPoly::one();
        }
        // det(At − Aᵗ) is a polynomial of degree ≤ n; interpolate it exactly
        // from values at t = 0..=n.
        let values: Vec<BigInt> = (0..=n as i64)
            .map(|t| (&self.a.scale(&BigInt::from(t)) - &self.a.transpose()).det())
            .collect();
        interpolate_integer(&values)
            .normalize_units()
            .expect("Alexander polynomial is nonzero")
    }

    /// True iff `Δ(−1) ≡ ±1 (mod 8)`, i.e. the Arf invariant vanishes.
    pub fn arf_zero_solvable(&self) -> bool {
        arf_from_alexander(&self.alexander())
    }
}

pub(crate) fn arf_from_alexander(delta: &LaurentPoly) -> bool {
    let v = delta.eval_int(-1).to_integer();
    let r = v.mod_floor(&BigInt::from(8)).to_i64().unwrap();
    r == 1 || r == 7
}

/// Polynomial through `(i, values[i])` for `i = 0..len`, with integer
/// coefficients (Newton forward differences).
fn interpolate_integer(values: &[BigInt]) -> LaurentPoly {
    let n = values.len();
    // forward differences Δ^k f(0)
    let mut diffs = Vec::with_capacity(n);
    let mut row = values.to_vec();
    for _ in 0..n {
        diffs.push(row[0].clone());
        row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    // f(t) = Σ Δ^k f(0) · C(t, k)
    let mut result = LaurentPoly::zero();
    let mut falling = LaurentPoly::one(); // t(t−1)…(t−k+1)
    let mut fact = BigInt::one();
    for (k, d) in diffs.iter().enumerate() {
        if k > 0 {
            fact *= BigInt::from(k);
            falling = &falling * &LaurentPoly::from_i64s(&[-(k as i64 - 1), 1], 0);
        }
        let term = falling.scale(d);
        result = &result + &term_div(&term, &fact);
    }
    result
}

fn term_div(p: &LaurentPoly, d: &BigInt) -> LaurentPoly {
    LaurentPoly::from_terms(p.terms().map(|(e, c)| {
        debug_assert!(c.is_multiple_of(d));
        (e, c / d)
    }))
}

impl std::fmt::Debug for SeifertMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SeifertMatrix({:?})", self.a)
    }
}

impl serde::Serialize for SeifertMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows_i64().serialize(s)
    }
}

/// Named Seifert matrices: the B1, B2, B3 family and the figure-eight knot.
pub mod library {
    use super::{metabolic_realization, SeifertMatrix, SeifertSum};
    use crate::polyring::LaurentPoly;

    pub fn b1() -> SeifertMatrix {
        SeifertMatrix::from_rows(&[
            vec![0, 0, 1, 1],
            vec![0, 0, 0, 1],
            vec![1, 1, 0, 1],
            vec![0, 1, 0, 0],
        ])
        .unwrap()
    }

    pub fn b2() -> SeifertMatrix {
        SeifertMatrix::from_rows(&[vec![1, 1], vec![0, 1]]).unwrap()
    }

    pub fn b3() -> SeifertMatrix {
        SeifertMatrix::from_rows(&[
            vec![1, 0, 0, 0, 1, 0],
            vec![-1, 1, 0, 1, 0, 1],
            vec![0, 0, 0, 1, 1, 1],
            vec![0, 1, 0, 1, 0, 1],
            vec![1, 0, 1, 0, 1, 1],
            vec![0, 1, 1, 1, 0, 1],
        ])
        .unwrap()
    }

    pub fn figure_eight() -> SeifertMatrix {
        SeifertMatrix::from_rows(&[vec![1, 1], vec![0, -1]]).unwrap()
    }

    /// `7·B3 ⊕ −6·B2`: Arf zero, σ = 2 at the nontrivial fifth roots, zero
    /// signature integral.
    pub fn d_sum() -> SeifertSum {
        SeifertSum::single("B3", b3()).times(7).concat(&SeifertSum::single("B2", b2()).times(6).negated())
    }

    /// `f` for the metabolic model with `Δ ≐ Φ30²`.
    pub fn phi30_factor() -> LaurentPoly {
        LaurentPoly::from_i64s(&[1, 1, 0, -1, -1, -1, 0, 1, 1], 0)
    }

    /// `f = (2t − 1)²`, so `Δ ≐ p(t)²` with `p(t) = −2t + 5 − 2t⁻¹`.
    pub fn p_squared_factor() -> LaurentPoly {
        LaurentPoly::from_i64s(&[1, -4, 4], 0)
    }

    /// `f = 4 − 3t + 2t² + 4t³ − 7t⁴ + t⁵ + 2t⁶ − 3t⁷ + t⁸`.
    pub fn terasaka_factor() -> LaurentPoly {
        LaurentPoly::from_i64s(&[4, -3, 2, 4, -7, 1, 2, -3, 1], 0)
    }

    pub fn phi30_squared() -> SeifertMatrix {
        metabolic_realization(&phi30_factor()).unwrap()
    }

    pub fn p_squared() -> SeifertMatrix {
        metabolic_realization(&p_squared_factor()).unwrap()
    }

    pub fn terasaka() -> SeifertMatrix {
        metabolic_realization(&terasaka_factor()).unwrap()
    }
}

#[cfg(test)]
pub(crate) use library as fixtures;

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::polyring::cyclotomic;

    #[test]
    fn alexander_of_fixtures() {
        let tre = LaurentPoly::from_i64s(&[1, -1, 1], 0);
        assert_eq!(b2().alexander(), tre);
        assert_eq!(b1().alexander(), &tre * &tre);
        assert_eq!(b3().alexander(), cyclotomic(14).unwrap());
        assert_eq!(SeifertMatrix::unknot().alexander(), LaurentPoly::one());
        assert_eq!(figure_eight().alexander(), LaurentPoly::from_i64s(&[1, -3, 1], 0));
    }

    #[test]
    fn alexander_at_one_is_one() {
        for a in [b1(), b2(), b3(), figure_eight(), b2().multiple(-3)] {
            assert_eq!(num_traits::Signed::abs(&a.alexander().eval_int(1)), num_rational::BigRational::one());
        }
    }

    #[test]
    fn arf_examples() {
        assert!(b1().arf_zero_solvable());
        assert!(!b2().arf_zero_solvable());
        assert!(SeifertMatrix::unknot().arf_zero_solvable());
    }

    #[test]
    fn rejects_non_unimodular() {
        let e = SeifertMatrix::named(Matrix::from_rows(&[vec![1, 0], vec![0, 1]]), Some("bad")).unwrap_err();
        assert!(e.to_string().contains("'bad'"), "{e}");
        assert!(SeifertMatrix::from_rows(&[vec![1]]).is_err());
    }

    #[test]
    fn multiples() {
        let m = b2().multiple(-2);
        assert_eq!(m.dim(), 4);
        assert_eq!(m.matrix()[(0, 0)], BigInt::from(-1));
        assert_eq!(b2().multiple(0).dim(), 0);
    }
}
