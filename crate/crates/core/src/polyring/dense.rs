//! Ordinary integer polynomials as coefficient vectors (index = degree),
//! always trimmed of trailing zeros.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type ZPoly = Vec<BigInt>;

pub fn trim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

pub fn degree(a: &[BigInt]) -> Option<usize> {
    a.iter().rposition(|c| !c.is_zero())
}

pub fn from_i64(c: &[i64]) -> ZPoly {
    trim(c.iter().map(|&x| BigInt::from(x)).collect())
}

pub fn add(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default())
            .collect(),
    )
}

pub fn sub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default())
            .collect(),
    )
}

pub fn mul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub fn scale(a: &[BigInt], c: &BigInt) -> ZPoly {
    trim(a.iter().map(|x| x * c).collect())
}

pub fn derivative(a: &[BigInt]) -> ZPoly {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect(),
    )
}

pub fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Divides out the content and makes the leading coefficient positive.
pub fn primitive_part(a: &[BigInt]) -> ZPoly {
    let a = trim(a.to_vec());
    if a.is_empty() {
        return a;
    }
    let mut c = content(&a);
    if a.last().unwrap().is_negative() {
        c = -c;
    }
    a.iter().map(|x| x / &c).collect()
}

/// Exact quotient `a / b` over the integers, if it exists.
pub fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let db = degree(b)?;
    let mut r = trim(a.to_vec());
    if r.is_empty() {
        return Some(r);
    }
    let da = degree(&r)?;
    if da < db {
        return None;
    }
    let lb = &b[db];
    let mut q = vec![BigInt::zero(); da - db + 1];
    while let Some(dr) = degree(&r) {
        if dr < db {
            return None;
        }
        let (c, rem) = r[dr].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        let s = dr - db;
        for (i, bc) in b.iter().enumerate() {
            r[s + i] -= &c * bc;
        }
        q[s] = c;
        r = trim(r);
    }
    Some(trim(q))
}

pub fn eval(a: &[BigInt], x: &BigInt) -> BigInt {
    a.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

pub fn eval_rational(a: &[BigInt], x: &BigRational) -> BigRational {
    a.iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
}

/// Greatest common divisor of two integer polynomials, primitive with
/// positive leading coefficient (content is ignored).
pub fn gcd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let to_q = |p: &[BigInt]| -> Vec<BigRational> {
        p.iter().map(|c| BigRational::from_integer(c.clone())).collect()
    };
    let mut x = to_q(&trim(a.to_vec()));
    let mut y = to_q(&trim(b.to_vec()));
    while !y.is_empty() {
        let r = rem_q(&x, &y);
        x = y;
        y = r;
    }
    if x.is_empty() {
        return Vec::new();
    }
    let den = x.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    primitive_part(
        &x.iter()
            .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
            .collect::<Vec<_>>(),
    )
}

fn rem_q(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db && !r.is_empty() {
        let c = r.last().unwrap() / &b[db];
        let s = r.len() - 1 - db;
        for (i, bc) in b.iter().enumerate() {
            r[s + i] -= &c * bc;
        }
        r.pop();
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

/// Largest squarefree divisor (product of the distinct irreducible
/// factors), primitive.
pub fn squarefree_part(a: &[BigInt]) -> ZPoly {
    let a = primitive_part(a);
    let g = gcd(&a, &derivative(&a));
    if degree(&g).unwrap_or(0) == 0 {
        return a;
    }
    primitive_part(&div_exact(&a, &g).expect("gcd divides"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_division() {
        let a = from_i64(&[-1, 0, 1]);
        let b = from_i64(&[-1, 1]);
        assert_eq!(div_exact(&a, &b), Some(from_i64(&[1, 1])));
        assert_eq!(div_exact(&from_i64(&[1, 0, 1]), &b), None);
        assert_eq!(div_exact(&from_i64(&[1, 2]), &from_i64(&[2])), None);
    }

    #[test]
    fn gcd_and_squarefree() {
        let f = from_i64(&[1, -1, 1]);
        let g = mul(&f, &from_i64(&[2, 1]));
        let h = mul(&f, &from_i64(&[3, -1]));
        assert_eq!(gcd(&g, &h), f);
        let sq = mul(&f, &f);
        assert_eq!(squarefree_part(&scale(&sq, &BigInt::from(-4))), f);
    }
}
