use num_bigint::BigInt;
use num_traits::One;

use super::dense::{self, ZPoly};
use super::LaurentPoly;
use crate::arith::{euler_phi, factorize};
use crate::error::{Error, Result};

fn t_pow_minus_one(d: u64) -> ZPoly {
    let mut v = vec![BigInt::from(0); d as usize + 1];
    v[0] = BigInt::from(-1);
    v[d as usize] = BigInt::one();
    v
}

fn mobius(n: u64) -> i32 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `Φ_n = ∏_{d|n} (t^d − 1)^{μ(n/d)}`.
pub(crate) fn cyclotomic_dense(n: u64) -> ZPoly {
    let divisors: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let num = divisors
        .iter()
        .filter(|&&d| mobius(n / d) == 1)
        .fold(vec![BigInt::one()], |acc, &d| dense::mul(&acc, &t_pow_minus_one(d)));
    divisors
        .iter()
        .filter(|&&d| mobius(n / d) == -1)
        .fold(num, |acc, &d| dense::div_exact(&acc, &t_pow_minus_one(d)).expect("exact quotient"))
}

/// The `n`-th cyclotomic polynomial.
pub fn cyclotomic(n: u64) -> Result<LaurentPoly> {
    if n == 0 {
        return Err(Error::CyclotomicIndex);
    }
    Ok(LaurentPoly::from_dense(&cyclotomic_dense(n)))
}

/// If `f` is unit-equivalent to some `Φ_n`, returns `n`.
pub fn cyclotomic_index(f: &LaurentPoly) -> Option<u64> {
    let d = f.normalized_dense().ok()?;
    let deg = dense::degree(&d)? as u64;
    if deg == 0 {
        return None;
    }
    // φ(n) ≥ sqrt(n/2), so n ≤ 2·deg².
    (1..=2 * deg * deg + 2)
        .filter(|&n| euler_phi(n) == deg)
        .find(|&n| cyclotomic_dense(n) == d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{is_prime_power, prime_power_base};
    use num_rational::BigRational;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(6).unwrap(), LaurentPoly::from_i64s(&[1, -1, 1], 0));
        assert_eq!(
            cyclotomic(30).unwrap(),
            LaurentPoly::from_i64s(&[1, 1, 0, -1, -1, -1, 0, 1, 1], 0)
        );
        assert_eq!(
            cyclotomic(14).unwrap(),
            LaurentPoly::from_i64s(&[1, -1, 1, -1, 1, -1, 1], 0)
        );
        assert!(cyclotomic(0).is_err());
    }

    #[test]
    fn value_at_one() {
        assert_eq!(cyclotomic(9).unwrap().eval_int(1), BigRational::from_integer(3.into()));
        for n in 2..60u64 {
            let v = cyclotomic(n).unwrap().eval_int(1);
            let expect = if is_prime_power(n) { prime_power_base(n).unwrap() } else { 1 };
            assert_eq!(v, BigRational::from_integer(expect.into()), "n = {n}");
        }
    }

    #[test]
    fn product_over_divisors_is_t_n_minus_one() {
        for n in 1..25u64 {
            let prod = (1..=n)
                .filter(|d| n % d == 0)
                .fold(LaurentPoly::one(), |acc, d| &acc * &cyclotomic(d).unwrap());
            let target = &LaurentPoly::monomial(BigInt::one(), n as i64) - &LaurentPoly::one();
            assert_eq!(prod, target);
        }
    }

    #[test]
    fn recognizes_cyclotomics() {
        assert_eq!(cyclotomic_index(&LaurentPoly::from_i64s(&[-1, 1, -1], 3)), Some(6));
        assert_eq!(cyclotomic_index(&cyclotomic(30).unwrap()), Some(30));
        assert_eq!(cyclotomic_index(&LaurentPoly::from_i64s(&[1, -3, 1], 0)), None);
    }
}
