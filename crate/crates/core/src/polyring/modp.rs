//! Polynomials over a prime field `F_p` (odd `p < 2^31`), for modular
//! factorization.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rand::Rng;

use crate::arith::mod_pow;

pub type PPoly = Vec<u64>;

#[derive(Clone, Copy, Debug)]
pub struct Field {
    pub p: u64,
}

impl Field {
    pub fn new(p: u64) -> Self {
        Field { p }
    }

    fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn inv(self, a: u64) -> u64 {
        mod_pow(a, self.p - 2, self.p)
    }

    pub fn trim(self, mut a: PPoly) -> PPoly {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn reduce(self, a: &[BigInt]) -> PPoly {
        let p = BigInt::from(self.p);
        self.trim(a.iter().map(|c| c.mod_floor(&p).to_u64().unwrap()).collect())
    }

    pub fn lift(self, a: &[u64]) -> Vec<BigInt> {
        a.iter().map(|&c| BigInt::from(c)).collect()
    }

    pub fn add(self, a: &[u64], b: &[u64]) -> PPoly {
        let n = a.len().max(b.len());
        self.trim(
            (0..n)
                .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % self.p)
                .collect(),
        )
    }

    pub fn sub(self, a: &[u64], b: &[u64]) -> PPoly {
        let n = a.len().max(b.len());
        self.trim(
            (0..n)
                .map(|i| {
                    (a.get(i).copied().unwrap_or(0) + self.p - b.get(i).copied().unwrap_or(0)) % self.p
                })
                .collect(),
        )
    }

    pub fn mul_poly(self, a: &[u64], b: &[u64]) -> PPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % self.p;
            }
        }
        self.trim(out)
    }

    pub fn scale(self, a: &[u64], c: u64) -> PPoly {
        self.trim(a.iter().map(|&x| self.mul(x, c)).collect())
    }

    pub fn monic(self, a: &[u64]) -> PPoly {
        match a.last() {
            Some(&l) => self.scale(a, self.inv(l)),
            None => Vec::new(),
        }
    }

    /// Quotient and remainder; `b` must be nonzero.
    pub fn divrem(self, a: &[u64], b: &[u64]) -> (PPoly, PPoly) {
        let db = b.len() - 1;
        let li = self.inv(b[db]);
        let mut r = a.to_vec();
        if r.len() <= db {
            return (Vec::new(), self.trim(r));
        }
        let mut q = vec![0u64; r.len() - db];
        while r.len() > db {
            let c = self.mul(*r.last().unwrap(), li);
            let s = r.len() - 1 - db;
            q[s] = c;
            for (i, &bc) in b.iter().enumerate() {
                r[s + i] = (r[s + i] + self.p - self.mul(c, bc)) % self.p;
            }
            r.pop();
            r = self.trim(r);
        }
        (self.trim(q), r)
    }

    pub fn rem(self, a: &[u64], b: &[u64]) -> PPoly {
        self.divrem(a, b).1
    }

    pub fn gcd(self, a: &[u64], b: &[u64]) -> PPoly {
        let (mut x, mut y) = (self.trim(a.to_vec()), self.trim(b.to_vec()));
        while !y.is_empty() {
            let r = self.rem(&x, &y);
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    /// `(g, s, t)` with `s·a + t·b = g` monic.
    pub fn ext_gcd(self, a: &[u64], b: &[u64]) -> (PPoly, PPoly, PPoly) {
        let (mut r0, mut r1) = (self.trim(a.to_vec()), self.trim(b.to_vec()));
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            let s2 = self.sub(&s0, &self.mul_poly(&q, &s1));
            let t2 = self.sub(&t0, &self.mul_poly(&q, &t1));
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s2);
            (t0, t1) = (t1, t2);
        }
        let li = self.inv(*r0.last().unwrap());
        (self.scale(&r0, li), self.scale(&s0, li), self.scale(&t0, li))
    }

    pub fn derivative(self, a: &[u64]) -> PPoly {
        self.trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| self.mul(c, i as u64 % self.p))
                .collect(),
        )
    }

    pub fn pow_mod(self, base: &[u64], e: &BigUint, m: &[u64]) -> PPoly {
        let mut result = vec![1u64];
        let b = self.rem(base, m);
        for i in (0..e.bits()).rev() {
            result = self.rem(&self.mul_poly(&result, &result), m);
            if e.bit(i) {
                result = self.rem(&self.mul_poly(&result, &b), m);
            }
        }
        self.rem(&result, m)
    }

    /// Factors a monic squarefree polynomial into monic irreducibles.
    pub fn factor_squarefree<R: Rng>(self, f: &[u64], rng: &mut R) -> Vec<PPoly> {
        let mut out = Vec::new();
        for (d, g) in self.distinct_degree(f) {
            self.equal_degree(&g, d, rng, &mut out);
        }
        out.sort();
        out
    }

    fn distinct_degree(self, f: &[u64]) -> Vec<(usize, PPoly)> {
        let x = vec![0u64, 1];
        let mut rest = f.to_vec();
        let mut h = x.clone();
        let p = BigUint::from(self.p);
        let mut out = Vec::new();
        let mut d = 0;
        while rest.len() > 1 {
            d += 1;
            if 2 * d > rest.len() - 1 {
                out.push((rest.len() - 1, rest));
                break;
            }
            h = self.pow_mod(&h, &p, &rest);
            let g = self.gcd(&self.sub(&h, &x), &rest);
            if g.len() > 1 {
                rest = self.divrem(&rest, &g).0;
                h = self.rem(&h, &rest);
                out.push((d, g));
            }
        }
        out
    }

    fn equal_degree<R: Rng>(self, g: &[u64], d: usize, rng: &mut R, out: &mut Vec<PPoly>) {
        let n = g.len() - 1;
        if n == d {
            out.push(g.to_vec());
            return;
        }
        let e = (BigUint::from(self.p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
        loop {
            let a: PPoly = self.trim((0..n).map(|_| rng.gen_range(0..self.p)).collect());
            if a.len() < 2 {
                continue;
            }
            let b = self.sub(&self.pow_mod(&a, &e, g), &[1]);
            let h = self.gcd(&b, g);
            if h.len() > 1 && h.len() < g.len() {
                let other = self.divrem(g, &h).0;
                self.equal_degree(&h, d, rng, out);
                self.equal_degree(&other, d, rng, out);
                return;
            }
        }
    }
}
