//! Laurent polynomials over the integers and rationals.

mod circle;
mod cyclotomic;
pub mod dense;
mod factor;
mod modp;
mod resultant;
mod serde_impl;

pub use circle::{reduce_turn as circle_reduce, UnitCirclePoint};
pub use cyclotomic::{cyclotomic, cyclotomic_index};
pub use factor::{factor_over_integers, reciprocal_pairing, reciprocal_pairing_factors, FACTOR_SPAN_BOUND};
pub use resultant::resultant;
pub(crate) use resultant::t_k_minus_one;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Coefficient ring for [`LaurentPoly`].
pub trait Coeff:
    Clone + PartialEq + Zero + One + Neg<Output = Self> + Signed + fmt::Display
{
}
impl<T> Coeff for T where T: Clone + PartialEq + Zero + One + Neg<Output = T> + Signed + fmt::Display {}

/// Finitely supported map from exponents to nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly<R = BigInt> {
    terms: BTreeMap<i64, R>,
}

pub type RatLaurentPoly = LaurentPoly<BigRational>;

impl<R: Coeff> LaurentPoly<R> {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(R::one(), 0)
    }

    pub fn monomial(c: R, e: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    /// `Σ coeffs[i] t^(min_exp + i)`.
    pub fn from_coeffs<I>(coeffs: I, min_exp: i64) -> Self
    where
        I: IntoIterator,
        I::Item: Into<R>,
    {
        let mut p = Self::zero();
        for (i, c) in coeffs.into_iter().enumerate() {
            p.add_term(min_exp + i as i64, c.into());
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, R)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: i64, c: R) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(R::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: i64) -> R {
        self.terms.get(&e).cloned().unwrap_or_else(R::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &R)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// `max_exp − min_exp`; zero for the zero polynomial.
    pub fn span(&self) -> i64 {
        match (self.min_exp(), self.max_exp()) {
            (Some(a), Some(b)) => b - a,
            _ => 0,
        }
    }

    pub fn leading_coeff(&self) -> Option<&R> {
        self.terms.values().next_back()
    }

    pub fn shift(&self, by: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + by, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, x)| (*e, x.clone() * c.clone())))
    }

    /// `f(t^{-1})`.
    pub fn reciprocal(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Substitutes `t ↦ t^m`.
    pub fn compose_power(&self, m: i64) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (e * m, c.clone())))
    }

    /// Unit normal form: minimum exponent 0 and positive leading coefficient.
    pub fn normalize_units(&self) -> Result<Self> {
        let lo = self.min_exp().ok_or(Error::ZeroPolynomial)?;
        let p = self.shift(-lo);
        if p.leading_coeff().is_some_and(|c| c.is_negative()) {
            Ok(-p)
        } else {
            Ok(p)
        }
    }

    /// Evaluates at a point of any ring containing the coefficients, using
    /// `inv` for negative powers.
    pub fn eval_with<T>(&self, x: &T, inv: &T) -> T
    where
        T: Clone + Zero + One + Mul<Output = T> + Add<Output = T>,
        R: Into<T>,
    {
        let mut acc = T::zero();
        for (e, c) in &self.terms {
            let base = if *e < 0 { inv } else { x };
            let mut pw = T::one();
            for _ in 0..e.unsigned_abs() {
                pw = pw * base.clone();
            }
            acc = acc + c.clone().into() * pw;
        }
        acc
    }

    /// Ordinary coefficient vector, valid when `min_exp >= 0`.
    pub fn dense(&self) -> Vec<R> {
        let Some(hi) = self.max_exp() else {
            return Vec::new();
        };
        assert!(self.min_exp().unwrap() >= 0, "dense() needs a polynomial without negative powers");
        (0..=hi).map(|e| self.coeff(e)).collect()
    }
}

impl LaurentPoly<BigInt> {
    pub fn from_i64s(coeffs: &[i64], min_exp: i64) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)), min_exp)
    }

    pub fn eval_int(&self, x: i64) -> BigRational {
        let x = BigRational::from_integer(x.into());
        let inv = if x.is_zero() { BigRational::zero() } else { x.recip() };
        self.to_rational().eval_with(&x, &inv)
    }

    pub fn to_rational(&self) -> RatLaurentPoly {
        LaurentPoly::from_terms(
            self.terms
                .iter()
                .map(|(e, c)| (*e, BigRational::from_integer(c.clone()))),
        )
    }

    /// Numeric evaluation at `e^{2πi·turn}`, returned as `(re, im)`.
    pub fn eval_turn_f64(&self, turn: f64) -> (f64, f64) {
        use num_traits::ToPrimitive;
        let th = 2.0 * std::f64::consts::PI * turn;
        self.terms.iter().fold((0.0, 0.0), |(re, im), (e, c)| {
            let c = c.to_f64().unwrap_or(f64::NAN);
            let a = th * *e as f64;
            (re + c * a.cos(), im + c * a.sin())
        })
    }

    pub fn from_dense(d: &[BigInt]) -> Self {
        Self::from_coeffs(d.iter().cloned(), 0)
    }

    /// Content-free, unit-normalized ordinary coefficient vector.
    pub fn normalized_dense(&self) -> Result<Vec<BigInt>> {
        Ok(self.normalize_units()?.dense())
    }
}

impl<R: Coeff> Add for &LaurentPoly<R> {
    type Output = LaurentPoly<R>;
    fn add(self, rhs: Self) -> LaurentPoly<R> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<R: Coeff> Sub for &LaurentPoly<R> {
    type Output = LaurentPoly<R>;
    fn sub(self, rhs: Self) -> LaurentPoly<R> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl<R: Coeff> Mul for &LaurentPoly<R> {
    type Output = LaurentPoly<R>;
    fn mul(self, rhs: Self) -> LaurentPoly<R> {
        let mut out = LaurentPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a + b, x.clone() * y.clone());
            }
        }
        out
    }
}

impl<R: Coeff> Neg for LaurentPoly<R> {
    type Output = LaurentPoly<R>;
    fn neg(self) -> LaurentPoly<R> {
        LaurentPoly {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl<R: Coeff> fmt::Display for LaurentPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag.is_one();
            match *e {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "t")?,
                1 => write!(f, "{mag}t")?,
                _ if unit => write!(f, "t^{e}")?,
                _ => write!(f, "{mag}t^{e}")?,
            }
        }
        Ok(())
    }
}

impl<R: Coeff> fmt::Debug for LaurentPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64], lo: i64) -> LaurentPoly {
        LaurentPoly::from_i64s(c, lo)
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(p(&[0, -1, 1], 0).normalize_units().unwrap(), p(&[-1, 1], 0));
        assert_eq!(p(&[-1, 1, -1], -1).normalize_units().unwrap(), p(&[1, -1, 1], 0));
        assert_eq!(p(&[2, -5, 2], -1).normalize_units().unwrap(), p(&[2, -5, 2], 0));
        assert!(matches!(
            LaurentPoly::<BigInt>::zero().normalize_units(),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn zero_coefficients_are_never_stored() {
        let a = p(&[1, 2, 3], 0);
        let d = &a - &a;
        assert!(d.is_zero());
        assert_eq!(p(&[0, 0, 1, 0], -2), p(&[1], 0));
    }

    #[test]
    fn arithmetic_and_display() {
        let a = p(&[1, -1], 0);
        let b = p(&[1, 1], 0);
        assert_eq!(&a * &b, p(&[1, 0, -1], 0));
        assert_eq!(p(&[-2, 5, -2], -1).to_string(), "-2t^-1 + 5 - 2t");
        assert_eq!(p(&[1, -1, 1], 0).eval_int(-1), BigRational::from_integer(3.into()));
        assert_eq!(p(&[1, 1], 0).reciprocal(), p(&[1, 1], -1));
    }
}
