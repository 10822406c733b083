//! Finite abelian groups `⊕ Z/d_i` in invariant-factor coordinates, with
//! integer endomorphism matrices acting on coordinate vectors.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::matrix::Matrix;

pub type Elem = Vec<u64>;

pub fn reduce(x: &[i64], factors: &[u64]) -> Elem {
    x.iter()
        .zip(factors)
        .map(|(v, &d)| v.rem_euclid(d as i64) as u64)
        .collect()
}

pub fn add(a: &[u64], b: &[u64], factors: &[u64]) -> Elem {
    a.iter().zip(b).zip(factors).map(|((x, y), d)| (x + y) % d).collect()
}

pub fn neg(a: &[u64], factors: &[u64]) -> Elem {
    a.iter().zip(factors).map(|(x, d)| (d - x) % d).collect()
}

pub fn scale(a: &[u64], c: i64, factors: &[u64]) -> Elem {
    a.iter()
        .zip(factors)
        .map(|(&x, &d)| ((x as i128 * c as i128).rem_euclid(d as i128)) as u64)
        .collect()
}

pub fn zero(factors: &[u64]) -> Elem {
    vec![0; factors.len()]
}

pub fn is_zero(a: &[u64]) -> bool {
    a.iter().all(|&x| x == 0)
}

/// `M·x` for an endomorphism given by an integer matrix.
pub fn apply(m: &[Vec<i64>], x: &[u64], factors: &[u64]) -> Elem {
    m.iter()
        .zip(factors)
        .map(|(row, &d)| {
            let s: i128 = row.iter().zip(x).map(|(a, &b)| *a as i128 * b as i128).sum();
            s.rem_euclid(d as i128) as u64
        })
        .collect()
}

pub fn compose(a: &[Vec<i64>], b: &[Vec<i64>], factors: &[u64]) -> Vec<Vec<i64>> {
    let r = factors.len();
    (0..r)
        .map(|i| {
            (0..r)
                .map(|j| {
                    let s: i128 = (0..r).map(|k| a[i][k] as i128 * b[k][j] as i128).sum();
                    s.rem_euclid(factors[i] as i128) as i64
                })
                .collect()
        })
        .collect()
}

pub fn identity(r: usize) -> Vec<Vec<i64>> {
    (0..r).map(|i| (0..r).map(|j| (i == j) as i64).collect()).collect()
}

pub fn order(factors: &[u64]) -> u128 {
    factors.iter().map(|&d| d as u128).product()
}

/// Order of the element `a`.
pub fn element_order(a: &[u64], factors: &[u64]) -> u64 {
    a.iter()
        .zip(factors)
        .fold(1u64, |acc, (&x, &d)| acc.lcm(&(d / x.gcd(&d))))
}

/// Mixed-radix index of an element.
pub fn index(a: &[u64], factors: &[u64]) -> usize {
    a.iter()
        .zip(factors)
        .rev()
        .fold(0usize, |acc, (&x, &d)| acc * d as usize + x as usize)
}

pub fn from_index(mut i: usize, factors: &[u64]) -> Elem {
    factors
        .iter()
        .map(|&d| {
            let x = (i % d as usize) as u64;
            i /= d as usize;
            x
        })
        .collect()
}

/// All elements in index order.
pub fn elements(factors: &[u64]) -> impl Iterator<Item = Elem> + '_ {
    (0..order(factors) as usize).map(move |i| from_index(i, factors))
}

/// Whether `m` is a well-defined endomorphism: images of generators are
/// killed by the generator orders.
pub fn is_endomorphism(m: &[Vec<i64>], factors: &[u64]) -> bool {
    (0..factors.len()).all(|j| {
        let col: Vec<i64> = m.iter().map(|row| row[j]).collect();
        is_zero(&scale(&reduce(&col, factors), factors[j] as i64, factors))
    })
}

/// `G/⟨gens⟩` in its own invariant-factor coordinates.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub factors: Vec<u64>,
    /// Row `j` maps `G`-coordinates to quotient coordinate `j`.
    pub proj: Vec<Vec<i64>>,
}

impl Quotient {
    pub fn order(&self) -> u128 {
        order(&self.factors)
    }

    pub fn project(&self, x: &[u64]) -> Elem {
        apply(&self.proj, x, &self.factors)
    }
}

pub fn quotient(factors: &[u64], gens: &[Elem]) -> Quotient {
    let r = factors.len();
    let rel = Matrix::from_fn(r, r + gens.len(), |i, j| {
        if j < r {
            if i == j { BigInt::from(factors[i]) } else { BigInt::from(0) }
        } else {
            BigInt::from(gens[j - r][i])
        }
    });
    let s = rel.smith();
    let mut qf = Vec::new();
    let mut proj = Vec::new();
    for (j, d) in s.diag.iter().enumerate() {
        if d.is_one() {
            continue;
        }
        let d64 = d.to_u64().expect("quotient factor divides a group factor");
        qf.push(d64);
        proj.push(s.u.row(j).iter().map(|x| x.mod_floor(d).to_i64().unwrap()).collect());
    }
    Quotient { factors: qf, proj }
}

/// Order of the subgroup generated by `gens`.
pub fn span_order(factors: &[u64], gens: &[Elem]) -> u128 {
    order(factors) / quotient(factors, gens).order()
}

/// All elements of the subgroup generated by `gens`, sorted by index.
pub fn span_elements(factors: &[u64], gens: &[Elem]) -> Vec<Elem> {
    let mut seen: HashSet<Elem> = HashSet::from([zero(factors)]);
    let mut frontier = vec![zero(factors)];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = add(&x, g, factors);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    let mut out: Vec<Elem> = seen.into_iter().collect();
    out.sort_by_key(|e| index(e, factors));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_round_trip() {
        let f = [2u64, 6];
        for (i, e) in elements(&f).enumerate() {
            assert_eq!(index(&e, &f), i);
        }
        assert_eq!(elements(&f).count(), 12);
        assert_eq!(element_order(&[1, 2], &f), 6);
    }

    #[test]
    fn quotients_and_spans() {
        let f = [2u64, 6];
        let q = quotient(&f, &[vec![0, 2]]);
        assert_eq!(q.order(), 4);
        assert_eq!(span_order(&f, &[vec![0, 2]]), 3);
        assert_eq!(span_elements(&f, &[vec![1, 3]]).len(), 2);
        assert!(is_zero(&q.project(&[0, 4])));
        assert!(!is_zero(&q.project(&[1, 0])));
        assert_eq!(span_order(&f, &[]), 1);
    }

    #[test]
    fn endomorphism_check() {
        assert!(is_endomorphism(&[vec![1, 0], vec![0, 2]], &[3, 3]));
        // Z/2 → Z/3 nonzero map is not well defined
        assert!(!is_endomorphism(&[vec![1, 0], vec![1, 1]], &[2, 3]));
    }
}
