//! Unit-circle zeros of a reciprocal integer polynomial: cyclotomic factors
//! give exact turns, the rest is isolated through `x = t + t⁻¹` and a Sturm
//! sequence on `[−2, 2]`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::euler_phi;
use crate::error::{Error, Result};
use crate::polyring::dense::{self, ZPoly};
use crate::polyring::{cyclotomic, LaurentPoly};

/// A zero of `Δ` on the circle, as a turn in `[0, 1)`.
#[derive(Clone, Debug, PartialEq)]
pub enum CircleRoot {
    Exact { turn: Rational64, order: u64 },
    /// Certified isolating interval of turns for a non-cyclotomic zero.
    Isolated { lo: f64, hi: f64 },
}

impl CircleRoot {
    pub fn approx(&self) -> f64 {
        match self {
            CircleRoot::Exact { turn, .. } => ratio_f64(turn),
            CircleRoot::Isolated { lo, hi } => (lo + hi) / 2.0,
        }
    }
}

pub(crate) fn ratio_f64(r: &Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Orders `n` with `Φ_n | Δ`, and the cofactor with every cyclotomic
/// factor removed.
pub(crate) fn split_cyclotomic(delta: &LaurentPoly) -> Result<(Vec<u64>, ZPoly)> {
    let mut rest = delta.normalized_dense()?;
    let mut orders = Vec::new();
    let deg = dense::degree(&rest).unwrap_or(0) as u64;
    for n in 1..=2 * deg * deg + 2 {
        if euler_phi(n) > dense::degree(&rest).unwrap_or(0) as u64 {
            continue;
        }
        let phi = cyclotomic(n)?.dense();
        let mut hit = false;
        while let Some(q) = dense::div_exact(&rest, &phi) {
            rest = q;
            hit = true;
        }
        if hit {
            orders.push(n);
        }
    }
    Ok((orders, rest))
}

/// Whether `Δ` vanishes at the primitive `q`-th roots of unity.
pub(crate) fn vanishes_at_order(delta: &LaurentPoly, q: u64) -> bool {
    let d = delta.normalized_dense().expect("nonzero");
    let phi = cyclotomic(q).expect("q ≥ 1").dense();
    dense::div_exact(&d, &phi).is_some()
}

/// All zeros of `Δ` on the unit circle, sorted by turn.
pub fn circle_roots(delta: &LaurentPoly) -> Result<Vec<CircleRoot>> {
    let (orders, rest) = split_cyclotomic(delta)?;
    let mut roots = Vec::new();
    for n in orders {
        for j in 0..n {
            if j.gcd(&n) == 1 {
                roots.push(CircleRoot::Exact {
                    turn: Rational64::new(j as i64, n as i64),
                    order: n,
                });
            }
        }
    }
    if dense::degree(&rest).unwrap_or(0) > 0 {
        let sqf = dense::squarefree_part(&rest);
        let h = chebyshev_reduce(&sqf).ok_or_else(|| {
            Error::RootIsolation(format!("{} is not palindromic", LaurentPoly::from_dense(&sqf)))
        })?;
        for (a, b) in isolate_real_roots(&h, -2, 2) {
            let lo_t = (b.to_f64().unwrap() / 2.0).clamp(-1.0, 1.0).acos() / std::f64::consts::TAU;
            let hi_t = (a.to_f64().unwrap() / 2.0).clamp(-1.0, 1.0).acos() / std::f64::consts::TAU;
            let pad = 1e-13;
            roots.push(CircleRoot::Isolated { lo: lo_t - pad, hi: hi_t + pad });
            roots.push(CircleRoot::Isolated { lo: 1.0 - hi_t - pad, hi: 1.0 - lo_t + pad });
        }
    }
    roots.sort_by(|x, y| x.approx().total_cmp(&y.approx()));
    // isolating intervals must separate every root from its neighbours
    for w in roots.windows(2) {
        let (a_hi, b_lo) = match (&w[0], &w[1]) {
            (CircleRoot::Exact { turn, .. }, CircleRoot::Isolated { lo, .. }) => (ratio_f64(turn), *lo),
            (CircleRoot::Isolated { hi, .. }, CircleRoot::Exact { turn, .. }) => (*hi, ratio_f64(turn)),
            (CircleRoot::Isolated { hi, .. }, CircleRoot::Isolated { lo, .. }) => (*hi, *lo),
            _ => continue,
        };
        if a_hi >= b_lo {
            return Err(Error::RootIsolation(format!(
                "{} (zeros near turn {:.12} not separated)",
                LaurentPoly::from_dense(&rest),
                a_hi
            )));
        }
    }
    Ok(roots)
}

/// For palindromic `r` of degree `2d`, the `h` with `r(t) = t^d·h(t + t⁻¹)`.
fn chebyshev_reduce(r: &[BigInt]) -> Option<ZPoly> {
    let deg = dense::degree(r)?;
    if deg % 2 != 0 || (0..=deg).any(|i| r[i] != r[deg - i]) {
        return None;
    }
    let d = deg / 2;
    // D_0 = 2, D_1 = x, D_{j+1} = x·D_j − D_{j−1}: t^j + t^{-j} = D_j(t + t⁻¹)
    let x = vec![BigInt::zero(), BigInt::one()];
    let mut prev = vec![BigInt::from(2)];
    let mut cur = x.clone();
    let mut h = vec![r[d].clone()];
    for j in 1..=d {
        if j > 1 {
            let next = dense::sub(&dense::mul(&x, &cur), &prev);
            prev = cur;
            cur = next;
        }
        h = dense::add(&h, &dense::scale(&cur, &r[d + j]));
    }
    Some(h)
}

type QPoly = Vec<BigRational>;

fn qtrim(mut a: QPoly) -> QPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn qrem(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let c = r.last().unwrap() / &b[db];
        let s = r.len() - 1 - db;
        for (i, bc) in b.iter().enumerate() {
            r[s + i] -= &c * bc;
        }
        r.pop();
        r = qtrim(r);
    }
    r
}

fn qeval(a: &[BigRational], x: &BigRational) -> BigRational {
    a.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

fn sturm_chain(h: &[BigInt]) -> Vec<QPoly> {
    let p0: QPoly = h.iter().map(|c| BigRational::from_integer(c.clone())).collect();
    let p1: QPoly = dense::derivative(h)
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect();
    let mut chain = vec![qtrim(p0), qtrim(p1)];
    while chain.last().is_some_and(|p| !p.is_empty()) {
        let n = chain.len();
        let r: QPoly = qrem(&chain[n - 2], &chain[n - 1]).into_iter().map(|c| -c).collect();
        if r.is_empty() {
            break;
        }
        chain.push(r);
    }
    chain.retain(|p| !p.is_empty());
    chain
}

fn sign_changes(chain: &[QPoly], x: &BigRational) -> usize {
    let signs: Vec<i32> = chain
        .iter()
        .map(|p| {
            let v = qeval(p, x);
            if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            }
        })
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Disjoint intervals `(a, b]`, each holding exactly one real root of the
/// squarefree `h` inside `(lo, hi)`, narrowed to width below `2^-48`.
fn isolate_real_roots(h: &[BigInt], lo: i64, hi: i64) -> Vec<(BigRational, BigRational)> {
    let chain = sturm_chain(h);
    let count = |a: &BigRational, b: &BigRational| sign_changes(&chain, a) - sign_changes(&chain, b);
    let width = BigRational::new(BigInt::one(), BigInt::one() << 48);
    let hq = |x: &BigRational| dense::eval_rational(h, x);
    let mut stack = vec![(BigRational::from_integer(lo.into()), BigRational::from_integer(hi.into()))];
    let mut out = Vec::new();
    while let Some((a, b)) = stack.pop() {
        let c = count(&a, &b);
        if c == 0 {
            continue;
        }
        if c == 1 && &b - &a < width {
            out.push((a, b));
            continue;
        }
        // split away from a root of h so endpoint counts stay valid
        let mut m = (&a + &b) / BigRational::from_integer(2.into());
        for (num, den) in [(3, 7), (4, 9), (5, 11), (6, 13)] {
            if !hq(&m).is_zero() {
                break;
            }
            m = &a + (&b - &a) * BigRational::new(num.into(), den.into());
        }
        stack.push((m.clone(), b));
        stack.push((a, m));
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_roots_are_exact() {
        let tre = LaurentPoly::from_i64s(&[1, -1, 1], 0);
        let roots = circle_roots(&(&tre * &tre)).unwrap();
        assert_eq!(
            roots,
            vec![
                CircleRoot::Exact { turn: Rational64::new(1, 6), order: 6 },
                CircleRoot::Exact { turn: Rational64::new(5, 6), order: 6 },
            ]
        );
    }

    #[test]
    fn figure_eight_has_no_circle_roots() {
        assert!(circle_roots(&LaurentPoly::from_i64s(&[1, -3, 1], 0)).unwrap().is_empty());
    }

    #[test]
    fn non_cyclotomic_roots_are_isolated() {
        // 2 − 3t + 2t²: roots at cos θ = 3/4
        let d = LaurentPoly::from_i64s(&[2, -3, 2], 0);
        let roots = circle_roots(&d).unwrap();
        assert_eq!(roots.len(), 2);
        let expect = (0.75f64).acos() / std::f64::consts::TAU;
        match roots[0] {
            CircleRoot::Isolated { lo, hi } => assert!(lo <= expect && expect <= hi && hi - lo < 1e-9),
            _ => panic!("expected isolated root"),
        }
        assert!((roots[1].approx() - (1.0 - expect)).abs() < 1e-9);
    }

    #[test]
    fn chebyshev_identity() {
        // t⁴ + t³ + t² + t + 1 = t²·((x² − 2) + x + 1) with x = t + 1/t
        let r = dense::from_i64(&[1, 1, 1, 1, 1]);
        assert_eq!(chebyshev_reduce(&r).unwrap(), dense::from_i64(&[-1, 1, 1]));
    }
}
