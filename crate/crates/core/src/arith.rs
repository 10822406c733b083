//! Small-integer number theory shared by the group and character code.

use num_integer::Integer;

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / a.gcd(&b) * b
    }
}

/// Prime factorization by trial division, as (prime, exponent) pairs in
/// increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == vec![(n, 1)]
}

/// Returns the prime if `n = p^e` with `e >= 1`.
pub fn prime_power_base(n: u64) -> Option<u64> {
    match factorize(n).as_slice() {
        [(p, _)] => Some(*p),
        _ => None,
    }
}

pub fn is_prime_power(n: u64) -> bool {
    prime_power_base(n).is_some()
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

pub fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    r
}

/// Inverse modulo `m`, if `a` is a unit.
pub fn mod_inv(a: i64, m: i64) -> Option<i64> {
    let e = a.rem_euclid(m).extended_gcd(&m);
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m))
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n != 0 && n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// Prime powers `q` with `2 <= q <= bound`, ascending.
pub fn prime_powers_up_to(bound: u64) -> Vec<u64> {
    (2..=bound).filter(|&q| is_prime_power(q)).collect()
}

/// Primes `l` with `l ≡ 1 (mod q)` above `start`, used to realize q-th roots
/// of unity in a prime field.
pub fn primes_one_mod(q: u64, start: u64, count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut l = start - start % q + 1;
    while out.len() < count {
        if l > start && is_prime(l) {
            out.push(l);
        }
        l += q;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization_and_powers() {
        assert_eq!(factorize(1296), vec![(2, 4), (3, 4)]);
        assert_eq!(factorize(1), vec![]);
        assert!(is_prime_power(49));
        assert!(!is_prime_power(6));
        assert!(!is_prime_power(1));
        assert_eq!(prime_power_base(625), Some(5));
        assert_eq!(euler_phi(30), 8);
        assert_eq!(euler_phi(14), 6);
        assert_eq!(prime_powers_up_to(9), vec![2, 3, 4, 5, 7, 8, 9]);
    }

    #[test]
    fn modular_helpers() {
        assert_eq!(mod_inv(2, 5), Some(3));
        assert_eq!(mod_inv(2, 4), None);
        assert_eq!(mod_pow(3, 4, 7), 4);
        for l in primes_one_mod(6, 1 << 20, 3) {
            assert!(is_prime(l));
            assert_eq!(l % 6, 1);
        }
        assert_eq!(valuation(50625, 5), 4);
    }
}
