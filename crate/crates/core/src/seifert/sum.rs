//! Formal direct sums `Σ ±m_i·A_i`, evaluated through additivity so large
//! sums never need to be materialized.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use num_rational::Rational64;
use num_traits::Zero;

use super::signature::{signature_profile, Arc, Breakpoint, IntegralValue, PointValue, SignatureProfile};
use super::{arf_from_alexander, SeifertMatrix};
use crate::error::Result;
use crate::polyring::{LaurentPoly, UnitCirclePoint};

#[derive(Clone, Debug, PartialEq)]
pub struct SumPart {
    pub label: String,
    pub copies: u64,
    pub negate: bool,
    pub matrix: SeifertMatrix,
}

impl SumPart {
    fn coefficient(&self) -> i64 {
        if self.negate {
            -(self.copies as i64)
        } else {
            self.copies as i64
        }
    }
}

#[derive(Debug)]
pub struct SeifertSum {
    parts: Vec<SumPart>,
    cache: Mutex<HashMap<Rational64, i64>>,
}

impl Clone for SeifertSum {
    fn clone(&self) -> Self {
        Self::new(self.parts.clone())
    }
}

impl PartialEq for SeifertSum {
    fn eq(&self, other: &Self) -> bool {
        self.parts == other.parts
    }
}

impl SeifertSum {
    pub fn new(parts: Vec<SumPart>) -> Self {
        SeifertSum {
            parts: parts.into_iter().filter(|p| p.copies > 0).collect(),
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn single(label: &str, matrix: SeifertMatrix) -> Self {
        Self::new(vec![SumPart { label: label.into(), copies: 1, negate: false, matrix }])
    }

    pub fn parts(&self) -> &[SumPart] {
        &self.parts
    }

    /// `m` copies of the whole sum.
    pub fn times(&self, m: u64) -> Self {
        Self::new(
            self.parts
                .iter()
                .map(|p| SumPart { copies: p.copies * m, ..p.clone() })
                .collect(),
        )
    }

    pub fn negated(&self) -> Self {
        Self::new(
            self.parts
                .iter()
                .map(|p| SumPart { negate: !p.negate, ..p.clone() })
                .collect(),
        )
    }

    pub fn concat(&self, other: &SeifertSum) -> Self {
        Self::new(self.parts.iter().chain(&other.parts).cloned().collect())
    }

    pub fn dim(&self) -> usize {
        self.parts.iter().map(|p| p.copies as usize * p.matrix.dim()).sum()
    }

    /// The block-diagonal matrix of the sum.
    pub fn materialize(&self) -> SeifertMatrix {
        self.parts.iter().fold(SeifertMatrix::unknot(), |acc, p| {
            acc.direct_sum(&p.matrix.multiple(p.coefficient()))
        })
    }

    pub fn alexander(&self) -> LaurentPoly {
        let prod = self
            .parts
            .iter()
            .fold(LaurentPoly::one(), |acc, p| &acc * &p.matrix.alexander().pow(p.copies as u32));
        prod.normalize_units().expect("nonzero")
    }

    pub fn arf_zero_solvable(&self) -> bool {
        arf_from_alexander(&self.alexander())
    }

    pub fn signature_at_turn(&self, turn: Rational64) -> Result<i64> {
        let turn = crate::polyring::circle_reduce(turn);
        if let Some(v) = self.cache.lock().unwrap().get(&turn) {
            return Ok(*v);
        }
        let mut total = 0;
        for p in &self.parts {
            total += p.coefficient() * p.matrix.signature_at_turn(turn)?;
        }
        self.cache.lock().unwrap().insert(turn, total);
        Ok(total)
    }

    pub fn signature_at(&self, z: &UnitCirclePoint) -> Result<i64> {
        match z.exact() {
            Some(t) => self.signature_at_turn(t),
            None => {
                let mut total = 0;
                for p in &self.parts {
                    total += p.coefficient() * p.matrix.signature_at(z)?;
                }
                Ok(total)
            }
        }
    }

    /// Profile of the sum: merged from the summands when all their zeros are
    /// exact, otherwise computed on the materialized matrix.
    pub fn profile(&self) -> Result<SignatureProfile> {
        if let [p] = self.parts.as_slice() {
            if p.copies == 1 && !p.negate {
                return signature_profile(&p.matrix);
            }
        }
        let profiles = self
            .parts
            .iter()
            .map(|p| signature_profile(&p.matrix))
            .collect::<Result<Vec<_>>>()?;
        if !profiles.iter().all(SignatureProfile::is_exact) {
            return signature_profile(&self.materialize());
        }
        let mut cuts: Vec<Rational64> = profiles
            .iter()
            .flat_map(|pr| pr.arcs.iter().flat_map(|a| [a.start.exact().unwrap(), a.end.exact().unwrap()]))
            .collect();
        cuts.sort();
        cuts.dedup();
        let combine = |turn: Rational64| -> i64 {
            self.parts
                .iter()
                .zip(&profiles)
                .map(|(p, pr)| p.coefficient() * pr.value_at(turn).expect("exact profile"))
                .sum()
        };
        let two = Rational64::from_integer(2);
        let arcs = cuts
            .windows(2)
            .map(|w| Arc {
                start: Breakpoint::Exact(w[0]),
                end: Breakpoint::Exact(w[1]),
                value: combine((w[0] + w[1]) / two),
            })
            .collect();
        let points = cuts
            .iter()
            .filter(|t| !t.is_zero() && **t < Rational64::from_integer(1))
            .map(|&turn| PointValue { turn, value: combine(turn) })
            .collect();
        Ok(SignatureProfile { arcs, points })
    }

    pub fn integral(&self) -> Result<IntegralValue> {
        let mut total = IntegralValue::Exact(Zero::zero());
        for p in &self.parts {
            total = total.add(&signature_profile(&p.matrix)?.integral().scale(p.coefficient()));
        }
        Ok(total)
    }
}

impl fmt::Display for SeifertSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "unknot");
        }
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, " ⊕ ")?;
            }
            let sign = if p.negate { "−" } else { "" };
            if p.copies == 1 {
                write!(f, "{sign}{}", p.label)?;
            } else {
                write!(f, "{sign}{}·{}", p.copies, p.label)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use num_rational::BigRational;

    fn example_one() -> SeifertSum {
        SeifertSum::new(vec![
            SumPart { label: "B3".into(), copies: 7, negate: false, matrix: b3() },
            SumPart { label: "B2".into(), copies: 6, negate: true, matrix: b2() },
        ])
    }

    #[test]
    fn sum_invariants() {
        let s = example_one();
        assert_eq!(s.dim(), 54);
        assert!(s.arf_zero_solvable());
        for j in 1..5 {
            assert_eq!(s.signature_at_turn(Rational64::new(j, 5)).unwrap(), 2);
        }
        assert_eq!(s.integral().unwrap(), IntegralValue::Exact(BigRational::zero()));
        assert_eq!(s.profile().unwrap().integral(), IntegralValue::Exact(BigRational::zero()));
        assert_eq!(s.to_string(), "7·B3 ⊕ −6·B2");
    }

    #[test]
    fn merged_profile_matches_materialized() {
        let s = SeifertSum::new(vec![
            SumPart { label: "B2".into(), copies: 2, negate: false, matrix: b2() },
            SumPart { label: "B1".into(), copies: 1, negate: true, matrix: b1() },
        ]);
        let merged = s.profile().unwrap();
        let direct = signature_profile(&s.materialize()).unwrap();
        assert_eq!(merged, direct);
        assert_eq!(s.alexander(), s.materialize().alexander());
    }
}
