use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::dense;
use super::LaurentPoly;
use crate::error::Result;
use crate::matrix::Matrix;

/// Resultant of the unit-normalized ordinary parts of `f` and `g`, via the
/// Sylvester determinant.
pub fn resultant(f: &LaurentPoly, g: &LaurentPoly) -> Result<BigInt> {
    let a = f.normalized_dense()?;
    let b = g.normalized_dense()?;
    Ok(sylvester_resultant(&a, &b))
}

pub(crate) fn sylvester_resultant(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let m = dense::degree(a).unwrap_or(0);
    let n = dense::degree(b).unwrap_or(0);
    if m == 0 && n == 0 {
        return BigInt::one();
    }
    let size = m + n;
    let mut s = Matrix::zeros(size, size);
    for i in 0..n {
        for (j, c) in a.iter().rev().enumerate().take(m + 1) {
            s[(i, i + j)] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in b.iter().rev().enumerate().take(n + 1) {
            s[(n + i, i + j)] = c.clone();
        }
    }
    if a.iter().all(Zero::is_zero) || b.iter().all(Zero::is_zero) {
        return BigInt::zero();
    }
    s.det()
}

/// `t^k − 1`.
pub(crate) fn t_k_minus_one(k: u32) -> LaurentPoly {
    &LaurentPoly::monomial(BigInt::one(), k as i64) - &LaurentPoly::one()
}
