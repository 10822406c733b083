//! Factorization over the integers: squarefree reduction, a cyclotomic
//! pre-screen, then Zassenhaus (modular factorization, Hensel lifting,
//! factor recombination).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::cyclotomic::cyclotomic_dense;
use super::dense::{self, ZPoly};
use super::modp::{Field, PPoly};
use super::LaurentPoly;
use crate::arith::{euler_phi, factorize};
use crate::error::{Error, Result};

pub const FACTOR_SPAN_BOUND: i64 = 24;

const PRIMES: [u64; 24] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

/// Irreducible factors of `normalize_units(f)` with multiplicity, in a
/// deterministic order (constants first, then by degree and coefficients).
/// Integer content is returned as prime constants.
pub fn factor_over_integers(f: &LaurentPoly) -> Result<Vec<LaurentPoly>> {
    let span = f.span();
    if span > FACTOR_SPAN_BOUND {
        return Err(Error::FactorizationBound { span, bound: FACTOR_SPAN_BOUND });
    }
    let d = f.normalized_dense()?;
    let mut out: Vec<ZPoly> = Vec::new();
    let c = dense::content(&d);
    for (p, e) in factorize(c.to_u64().expect("content fits in u64")) {
        out.extend(std::iter::repeat_n(vec![BigInt::from(p)], e as usize));
    }
    let prim = dense::primitive_part(&d);
    if dense::degree(&prim).unwrap_or(0) > 0 {
        let sqf = dense::squarefree_part(&prim);
        for g in irreducible_factors_squarefree(&sqf) {
            let mut rest = prim.clone();
            while let Some(q) = dense::div_exact(&rest, &g) {
                out.push(g.clone());
                rest = q;
            }
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out.iter().map(|g| LaurentPoly::from_dense(g)).collect())
}

/// Irreducible factors of a primitive squarefree polynomial of positive
/// degree.
fn irreducible_factors_squarefree(f: &[BigInt]) -> Vec<ZPoly> {
    let mut rest = f.to_vec();
    let mut out = Vec::new();
    // t divides only if the constant term vanishes
    if rest[0].is_zero() {
        out.push(vec![BigInt::zero(), BigInt::one()]);
        rest = dense::div_exact(&rest, &out[0]).unwrap();
    }
    let deg = dense::degree(&rest).unwrap_or(0) as u64;
    for n in 1..=2 * deg * deg + 2 {
        if euler_phi(n) > dense::degree(&rest).unwrap_or(0) as u64 {
            continue;
        }
        let phi = cyclotomic_dense(n);
        if let Some(q) = dense::div_exact(&rest, &phi) {
            out.push(phi);
            rest = q;
        }
    }
    if dense::degree(&rest).unwrap_or(0) > 0 {
        out.extend(zassenhaus(&dense::primitive_part(&rest)));
    }
    out
}

fn zassenhaus(f: &[BigInt]) -> Vec<ZPoly> {
    let n = dense::degree(f).unwrap();
    if n == 1 {
        return vec![f.to_vec()];
    }
    let lc = f[n].clone();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);

    // a few admissible primes; keep the one with fewest modular factors
    let mut best: Option<(Field, Vec<PPoly>)> = None;
    let mut tried = 0;
    for &p in &PRIMES {
        let field = Field::new(p);
        if lc.is_multiple_of(&BigInt::from(p)) {
            continue;
        }
        let fp = field.reduce(f);
        if field.gcd(&fp, &field.derivative(&fp)).len() != 1 {
            continue;
        }
        let facs = field.factor_squarefree(&field.monic(&fp), &mut rng);
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((field, facs));
        }
        tried += 1;
        if tried == 5 || best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
    }
    let (field, facs) = best.expect("some small prime keeps the polynomial squarefree");
    if facs.len() == 1 {
        return vec![f.to_vec()];
    }

    // lift until p^a exceeds twice a coefficient bound for lc·(any factor)
    let norm1: BigInt = f.iter().map(|c| c.abs()).sum();
    let bound = (BigInt::one() << n) * norm1 * lc.abs();
    let p = BigInt::from(field.p);
    let mut modulus = p.clone();
    let mut a = 1u32;
    while modulus <= &bound * 2 {
        modulus *= &p;
        a += 1;
    }
    let lifted = lift_all(f, &facs, field, a);
    recombine(f, lifted, &modulus)
}

/// Monic lifts of the modular factors of `f` modulo `p^a`.
fn lift_all(f: &[BigInt], facs: &[PPoly], field: Field, a: u32) -> Vec<ZPoly> {
    let p = BigInt::from(field.p);
    let pa = p.pow(a);
    if facs.len() == 1 {
        let lc = f.last().unwrap();
        let inv = mod_inverse(lc, &pa);
        return vec![f.iter().map(|c| (c * &inv).mod_floor(&pa)).collect()];
    }
    let g = &facs[0];
    let h = facs[1..].iter().fold(vec![1u64], |acc, x| field.mul_poly(&acc, x));
    let (gl, hl) = lift_pair(f, g, &h, field, a);
    let mut out = vec![gl];
    out.extend(lift_all(&hl, &facs[1..], field, a));
    out
}

/// Given `f ≡ lc·g·h (mod p)` with `g, h` monic and coprime, returns monic
/// `G, H` with `f ≡ lc·G·H (mod p^a)`.
fn lift_pair(f: &[BigInt], g: &[u64], h: &[u64], field: Field, a: u32) -> (ZPoly, ZPoly) {
    let p = BigInt::from(field.p);
    let lc = f.last().unwrap().clone();
    let lc_inv = field.inv(lc.mod_floor(&p).to_u64().unwrap());
    let (_, s, t) = field.ext_gcd(g, h);
    let mut gz = field.lift(g);
    let mut hz = field.lift(h);
    let mut m = p.clone();
    for _ in 1..a {
        let prod = dense::scale(&dense::mul(&gz, &hz), &lc);
        let diff = dense::sub(f, &prod);
        let e: Vec<BigInt> = diff.iter().map(|c| c / &m).collect();
        let e = field.scale(&field.reduce(&e), lc_inv);
        let (q, dh) = field.divrem(&field.mul_poly(&e, &s), h);
        let dg = field.add(&field.mul_poly(&e, &t), &field.mul_poly(&q, g));
        gz = dense::add(&gz, &dense::scale(&field.lift(&dg), &m));
        hz = dense::add(&hz, &dense::scale(&field.lift(&dh), &m));
        m *= &p;
        gz = gz.iter().map(|c| c.mod_floor(&m)).collect();
        hz = hz.iter().map(|c| c.mod_floor(&m)).collect();
    }
    (gz, hz)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    e.x.mod_floor(m)
}

fn symmetric_mod(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn recombine(f: &[BigInt], mut lifted: Vec<ZPoly>, modulus: &BigInt) -> Vec<ZPoly> {
    let mut rest = f.to_vec();
    let mut out = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut found = false;
        for subset in subsets(lifted.len(), size) {
            let lc = rest.last().unwrap().clone();
            let prod = subset
                .iter()
                .fold(vec![lc.clone()], |acc, &i| dense::mul(&acc, &lifted[i]));
            let cand: ZPoly = prod.iter().map(|c| symmetric_mod(c, modulus)).collect();
            let cand = dense::primitive_part(&cand);
            if let Some(q) = dense::div_exact(&rest, &cand) {
                out.push(cand);
                rest = q;
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
                found = true;
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    if dense::degree(&rest).unwrap_or(0) > 0 {
        out.push(dense::primitive_part(&rest));
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Returns `f` with `Δ ≐ f(t)·f(t⁻¹)` when the irreducible factors of `Δ`
/// can be grouped that way.
pub fn reciprocal_pairing(delta: &LaurentPoly) -> Result<Option<LaurentPoly>> {
    reciprocal_pairing_factors(&factor_over_integers(delta)?)
}

/// As [`reciprocal_pairing`], for a polynomial given by its irreducible
/// factors (with repetition).
pub fn reciprocal_pairing_factors(factors: &[LaurentPoly]) -> Result<Option<LaurentPoly>> {
    let mut mult: BTreeMap<Vec<BigInt>, usize> = BTreeMap::new();
    for g in factors {
        *mult.entry(g.normalize_units()?.dense()).or_default() += 1;
    }
    let mut f = LaurentPoly::one();
    for (g, &m) in &mult {
        let gp = LaurentPoly::from_dense(g);
        if g.len() == 1 {
            // prime constant c contributes c = c·c only in even multiplicity
            if m % 2 != 0 {
                return Ok(None);
            }
            f = &f * &gp.pow(m as u32 / 2);
            continue;
        }
        let star = gp.reciprocal().normalize_units()?.dense();
        if &star == g {
            if m % 2 != 0 {
                return Ok(None);
            }
            f = &f * &gp.pow(m as u32 / 2);
        } else {
            if mult.get(&star).copied().unwrap_or(0) != m {
                return Ok(None);
            }
            if g < &star {
                f = &f * &gp.pow(m as u32);
            }
        }
    }
    Ok(Some(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::cyclotomic;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_i64s(c, 0)
    }

    fn product(fs: &[LaurentPoly]) -> LaurentPoly {
        fs.iter().fold(LaurentPoly::one(), |acc, g| &acc * g)
    }

    fn terasaka_f() -> LaurentPoly {
        p(&[4, -3, 2, 4, -7, 1, 2, -3, 1])
    }

    /// Kronecker's method: finds a proper factor of degree ≤ deg/2 by
    /// interpolating through divisors of sample values.
    fn kronecker_is_irreducible(f: &[BigInt]) -> bool {
        let n = dense::degree(f).unwrap();
        let xs: Vec<i64> = (0..=(n / 2) as i64).map(|i| if i % 2 == 0 { i / 2 } else { -(i + 1) / 2 }).collect();
        let divisors = |v: &BigInt| -> Vec<i64> {
            let v = v.abs().to_i64().unwrap();
            let mut ds = Vec::new();
            for d in 1..=v {
                if v % d == 0 {
                    ds.push(d);
                    ds.push(-d);
                }
            }
            ds
        };
        for d in 1..=n / 2 {
            let pts = &xs[..=d];
            let vals: Vec<BigInt> = pts.iter().map(|&x| dense::eval(f, &BigInt::from(x))).collect();
            if vals.iter().any(|v| v.is_zero()) {
                return false;
            }
            let choices: Vec<Vec<i64>> = vals.iter().map(divisors).collect();
            let mut idx = vec![0usize; d + 1];
            loop {
                let ys: Vec<i64> = idx.iter().zip(&choices).map(|(&i, c)| c[i]).collect();
                if let Some(g) = interpolate(pts, &ys) {
                    if dense::degree(&g).unwrap_or(0) >= 1 && dense::div_exact(f, &g).is_some() {
                        return false;
                    }
                }
                let mut k = 0;
                loop {
                    if k == idx.len() {
                        break;
                    }
                    idx[k] += 1;
                    if idx[k] < choices[k].len() {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
                if k == idx.len() {
                    break;
                }
            }
        }
        true
    }

    fn interpolate(xs: &[i64], ys: &[i64]) -> Option<ZPoly> {
        let n = xs.len();
        let mut coeffs = vec![BigRational::zero(); n];
        for i in 0..n {
            let mut basis = vec![BigRational::one()];
            let mut denom = BigRational::one();
            for j in 0..n {
                if i == j {
                    continue;
                }
                let mut next = vec![BigRational::zero(); basis.len() + 1];
                for (k, c) in basis.iter().enumerate() {
                    next[k + 1] += c;
                    next[k] -= c * BigRational::from_integer(xs[j].into());
                }
                basis = next;
                denom *= BigRational::from_integer((xs[i] - xs[j]).into());
            }
            for (k, c) in basis.iter().enumerate() {
                coeffs[k] += c * BigRational::from_integer(ys[i].into()) / &denom;
            }
        }
        coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(dense::trim)
    }

    #[test]
    fn squares_and_cyclotomics() {
        let f = p(&[1, -1, 1]);
        assert_eq!(factor_over_integers(&(&f * &f)).unwrap(), vec![f.clone(), f]);
        let phi14 = cyclotomic(14).unwrap();
        assert_eq!(factor_over_integers(&phi14).unwrap(), vec![phi14]);
        assert_eq!(factor_over_integers(&LaurentPoly::one()).unwrap(), vec![]);
    }

    #[test]
    fn content_becomes_prime_constants() {
        let fs = factor_over_integers(&p(&[4, 4])).unwrap();
        assert_eq!(fs, vec![p(&[2]), p(&[2]), p(&[1, 1])]);
    }

    #[test]
    fn non_monic_factors() {
        // 2t² − 5t + 2 = (2t − 1)(t − 2)
        let fs = factor_over_integers(&LaurentPoly::from_i64s(&[-2, 5, -2], -1)).unwrap();
        assert_eq!(fs, vec![p(&[-2, 1]), p(&[-1, 2])]);
    }

    #[test]
    fn terasaka_product_refactors_compatibly() {
        let f = terasaka_f();
        let fstar = f.reciprocal().normalize_units().unwrap();
        let delta = &f * &f.reciprocal();
        let mut expect = factor_over_integers(&f).unwrap();
        expect.extend(factor_over_integers(&fstar).unwrap());
        expect.sort_by(|a, b| a.span().cmp(&b.span()).then_with(|| a.dense().cmp(&b.dense())));
        let got = factor_over_integers(&delta).unwrap();
        assert_eq!(got, expect);
        assert_eq!(product(&got), delta.normalize_units().unwrap());
        let pair = reciprocal_pairing(&delta).unwrap().unwrap();
        assert_eq!(
            (&pair * &pair.reciprocal()).normalize_units().unwrap(),
            delta.normalize_units().unwrap()
        );
    }

    #[test]
    fn span_bound() {
        let big = LaurentPoly::from_i64s(&[1; 26], 0);
        assert!(matches!(factor_over_integers(&big), Err(Error::FactorizationBound { .. })));
    }

    #[test]
    fn reciprocal_pairing_examples() {
        let f = p(&[1, -1, 1]);
        assert_eq!(reciprocal_pairing(&(&f * &f)).unwrap(), Some(f.clone()));
        assert_eq!(reciprocal_pairing(&f).unwrap(), None);
        assert_eq!(reciprocal_pairing(&LaurentPoly::one()).unwrap(), Some(LaurentPoly::one()));
        // 2t² − 5t + 2 ≐ (2t−1)(2t⁻¹−1)
        let q = reciprocal_pairing(&p(&[2, -5, 2])).unwrap().unwrap();
        assert_eq!(q.span(), 1);
    }

    proptest! {
        #[test]
        fn factorization_agrees_with_kronecker(
            a in proptest::collection::vec(-3i64..4, 2..4),
            b in proptest::collection::vec(-3i64..4, 2..5),
        ) {
            let fa = p(&a);
            let fb = p(&b);
            prop_assume!(fa.span() >= 1 && fb.span() >= 1);
            let prod = &fa * &fb;
            let fs = factor_over_integers(&prod).unwrap();
            let lhs = product(&fs);
            let rhs = prod.normalize_units().unwrap();
            prop_assert!(lhs == rhs || lhs == -rhs.clone());
            for g in &fs {
                if g.span() >= 1 {
                    prop_assert!(kronecker_is_irreducible(&g.dense()), "{} reducible", g);
                }
            }
        }

        #[test]
        fn reciprocal_pairing_finds_products(c in proptest::collection::vec(-4i64..5, 1..9)) {
            let f = p(&c);
            prop_assume!(!f.is_zero());
            let delta = &f * &f.reciprocal();
            prop_assert!(reciprocal_pairing(&delta).unwrap().is_some());
        }
    }
}
