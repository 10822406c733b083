use num_integer::Integer;
use num_rational::Rational64;
use serde::Serialize;

use super::{LinkingForm, Metabolizer};
use crate::arith::is_prime_power;
use crate::covers::CoverGroup;
use crate::error::{Error, Result};
use crate::group::{self, Elem};

/// `χ: H → Z/m`, given by its values on the invariant-factor generators.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Character {
    pub modulus: u64,
    pub values: Vec<u64>,
    /// Exact order of `χ` (divides `modulus`).
    pub order: u64,
}

impl Character {
    pub fn new(factors: &[u64], modulus: u64, values: Vec<u64>) -> Result<Self> {
        if values.len() != factors.len() {
            return Err(Error::Invalid("character has wrong number of values".into()));
        }
        let values: Vec<u64> = values.into_iter().map(|v| v % modulus).collect();
        for (v, d) in values.iter().zip(factors) {
            if !(*v as u128 * *d as u128).is_multiple_of(modulus as u128) {
                return Err(Error::Invalid(format!(
                    "character value {v}/{modulus} is not killed by generator order {d}"
                )));
            }
        }
        let order = values
            .iter()
            .fold(1u64, |acc, &v| acc.lcm(&(modulus / v.gcd(&modulus))));
        Ok(Character { modulus, values, order })
    }

    pub fn trivial(factors: &[u64]) -> Self {
        Character { modulus: 1, values: vec![0; factors.len()], order: 1 }
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn is_surjective(&self) -> bool {
        self.order == self.modulus
    }

    /// `χ(x)` as an element of `Z/m`.
    pub fn eval(&self, x: &[u64]) -> u64 {
        let m = self.modulus as u128;
        (self.values.iter().zip(x).map(|(&v, &a)| v as u128 * a as u128 % m).sum::<u128>() % m) as u64
    }

    /// `χ(x)` as a turn in `[0, 1)`.
    pub fn turn(&self, x: &[u64]) -> Rational64 {
        Rational64::new(self.eval(x) as i64, self.modulus as i64)
    }

    /// `χ ∘ t`.
    pub fn compose_t(&self, g: &CoverGroup) -> Self {
        let m = self.modulus as i128;
        let r = self.values.len();
        let values = (0..r)
            .map(|j| {
                (0..r)
                    .map(|i| self.values[i] as i128 * g.t[i][j] as i128)
                    .sum::<i128>()
                    .rem_euclid(m) as u64
            })
            .collect();
        Character { modulus: self.modulus, values, order: self.order }
    }

    /// `χ^j`.
    pub fn power(&self, j: i64) -> Self {
        let m = self.modulus as i128;
        let values: Vec<u64> = self
            .values
            .iter()
            .map(|&v| (v as i128 * j as i128).rem_euclid(m) as u64)
            .collect();
        let order = values
            .iter()
            .fold(1u64, |acc, &v| acc.lcm(&(self.modulus / v.gcd(&self.modulus))));
        Character { modulus: self.modulus, values, order }
    }

    /// `χ·ψ` on the same group, with modulus `lcm` of the two.
    pub fn product(&self, other: &Character, factors: &[u64]) -> Result<Self> {
        let m = self.modulus.lcm(&other.modulus);
        let (a, b) = (m / self.modulus, m / other.modulus);
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&x, &y)| ((x as u128 * a as u128 + y as u128 * b as u128) % m as u128) as u64)
            .collect();
        Character::new(factors, m, values)
    }

    /// `χ ∘ π` for the natural quotient `π: H_1(L_hi) → H_1(L_lo)` where `χ`
    /// lives on `lo`.
    pub fn pull_back(&self, lo: &CoverGroup, hi: &CoverGroup) -> Result<Self> {
        let values = (0..hi.rank())
            .map(|i| {
                let mut e = group::zero(&hi.factors);
                e[i] = 1;
                Ok(self.eval(&hi.transfer(&e, lo)?))
            })
            .collect::<Result<Vec<u64>>>()?;
        Character::new(&hi.factors, self.modulus, values)
    }

    /// All characters of order dividing `m` on a group, trivial included.
    pub fn all(factors: &[u64], m: u64) -> Result<Vec<Self>> {
        let mut v = characters_of_quotient(factors, &[], m)?;
        v.insert(0, Character::new(factors, m, vec![0; factors.len()])?);
        Ok(v)
    }

    pub fn kills(&self, gens: &[Elem]) -> bool {
        gens.iter().all(|g| self.eval(g) == 0)
    }

    /// Whether `χ ∘ t^k = χ`.
    pub fn factors_through_level(&self, g: &CoverGroup, k: u32) -> bool {
        g.t.is_empty() || (0..k).fold(self.clone(), |c, _| c.compose_t(g)) == *self
    }
}

/// Nontrivial characters of order dividing the prime power `m` that vanish
/// on `P`.
pub fn characters_vanishing(form: &LinkingForm, p: &Metabolizer, m: u64) -> Result<Vec<Character>> {
    if !is_prime_power(m) {
        return Err(Error::NotPrimePower(m));
    }
    characters_vanishing_any(form, p, m)
}

/// As [`characters_vanishing`] without the prime-power restriction.
pub fn characters_vanishing_any(form: &LinkingForm, p: &Metabolizer, m: u64) -> Result<Vec<Character>> {
    characters_of_quotient(form.factors(), &p.generators, m)
}

pub(crate) const CHARACTER_BOUND: u128 = 1_000_000;

/// Nontrivial characters of `G/⟨gens⟩` of order dividing `m`, pulled back to
/// `G`, sorted.
pub(crate) fn characters_of_quotient(factors: &[u64], gens: &[Elem], m: u64) -> Result<Vec<Character>> {
    if m == 0 {
        return Err(Error::Invalid("character order must be positive".into()));
    }
    let q = group::quotient(factors, gens);
    let steps: Vec<u64> = q.factors.iter().map(|&d| m / d.gcd(&m)).collect();
    let counts: Vec<u64> = q.factors.iter().map(|&d| d.gcd(&m)).collect();
    let total: u128 = counts.iter().map(|&c| c as u128).product();
    if total > CHARACTER_BOUND {
        return Err(Error::EnumerationBound(format!("{total} characters of order dividing {m}")));
    }
    let mut out = Vec::with_capacity(total as usize);
    for idx in 0..total as usize {
        let c = group::from_index(idx, &counts);
        let values: Vec<u64> = (0..factors.len())
            .map(|i| {
                let s: u128 = (0..q.factors.len())
                    .map(|j| c[j] as u128 * steps[j] as u128 % m as u128 * q.proj[j][i] as u128)
                    .sum();
                (s % m as u128) as u64
            })
            .collect();
        let ch = Character::new(factors, m, values)?;
        if !ch.is_trivial() {
            out.push(ch);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linkform::tests::hyperbolic;
    use crate::linkform::{linking_form, metabolizers};
    use crate::polyring::cyclotomic;
    use crate::seifert::{metabolic_realization, realization_metabolizer};

    #[test]
    fn hyperbolic_quotient() {
        let l = hyperbolic(5);
        let p = Metabolizer::new(&l, vec![vec![1, 0]]).unwrap();
        let cs = characters_vanishing(&l, &p, 5).unwrap();
        assert_eq!(cs.len(), 4);
        for c in &cs {
            assert!(c.kills(&p.generators));
            assert_eq!(c.order, 5);
        }
        assert!(characters_vanishing(&l, &p, 6).is_err());
    }

    #[test]
    fn whole_group_leaves_nothing() {
        let l = hyperbolic(3);
        let all = vec![vec![1, 0], vec![0, 1]];
        assert!(characters_of_quotient(l.factors(), &all, 9).unwrap().is_empty());
    }

    #[test]
    fn phi30_sixfold_cover() {
        let a = metabolic_realization(&cyclotomic(30).unwrap()).unwrap();
        let l = linking_form(&a, 6).unwrap();
        assert_eq!(l.order(), 625);
        let declared = Metabolizer::from_lambda_generators(&l, &realization_metabolizer(8)).unwrap();
        assert_eq!(declared.order, 25);
        let cs = characters_vanishing(&l, &declared, 5).unwrap();
        assert_eq!(cs.len(), 24);
        for c in &cs {
            assert!(c.factors_through_level(&l.group, 6));
        }
        let ms = metabolizers(&l).unwrap();
        assert!(ms.iter().any(|m| m.elements(l.factors()) == declared.elements(l.factors())));
        for m in &ms {
            assert_eq!(characters_vanishing(&l, m, 5).unwrap().len(), 24);
        }
    }

    #[test]
    fn exact_orders() {
        let c = Character::new(&[2, 6], 6, vec![3, 2]).unwrap();
        assert_eq!(c.order, 6);
        assert!(c.is_surjective());
        assert_eq!(c.power(3).order, 2);
        assert!(Character::new(&[2], 6, vec![1]).is_err());
    }
}
