//! Levine–Tristram signatures: pointwise values, arc profiles and the circle
//! integral.

use std::fmt;

use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::roots::{circle_roots, ratio_f64, vanishes_at_order, CircleRoot};
use super::SeifertMatrix;
use crate::arith::{factorize, mod_pow, primes_one_mod};
use crate::error::{Error, Result};
use crate::polyring::UnitCirclePoint;
use crate::serde_util;

/// Zero-gap for eigenvalues relative to the matrix scale. Overridable with
/// `SLICENESS_TOLERANCE`.
pub fn tolerance() -> f64 {
    std::env::var("SLICENESS_TOLERANCE")
        .ok()
        .and_then(|s| s.parse().ok())
        .filter(|&t: &f64| t > 0.0)
        .unwrap_or(1e-9)
}

impl SeifertMatrix {
    /// Signature of `A(1−z) + Aᵗ(1−z̄)`, zero eigenvalues excluded.
    pub fn signature_at(&self, z: &UnitCirclePoint) -> Result<i64> {
        match z {
            UnitCirclePoint::ExactTurn(r) => self.signature_at_turn(*r),
            UnitCirclePoint::GenericTranscendental { witness: Some(w) } => {
                self.signature_numeric(*w, 0, &format!("witness turn {w}"))
            }
            UnitCirclePoint::GenericTranscendental { witness: None } => Err(Error::Invalid(
                "signature at a transcendental point needs a numeric witness".into(),
            )),
        }
    }

    pub fn signature_at_turn(&self, turn: Rational64) -> Result<i64> {
        let turn = crate::polyring::circle_reduce(turn);
        if self.dim() == 0 || turn.is_zero() {
            return Ok(0);
        }
        let q = *turn.denom() as u64;
        let delta = self.alexander();
        let nullity = if vanishes_at_order(&delta, q) {
            self.dim() - self.rank_at_root(*turn.numer() as u64, q)
        } else {
            0
        };
        self.signature_numeric(ratio_f64(&turn), nullity, &format!("turn {turn}"))
    }

    /// Eigenvalue count on the realified matrix, demanding exactly
    /// `2·nullity` eigenvalues below the gap.
    fn signature_numeric(&self, turn: f64, nullity: usize, at: &str) -> Result<i64> {
        let n = self.dim();
        if n == 0 {
            return Ok(0);
        }
        let a = self.rows_i64();
        let th = std::f64::consts::TAU * turn;
        let (c, s) = (th.cos(), th.sin());
        let mut m = DMatrix::<f64>::zeros(2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                let x = (1.0 - c) * (a[i][j] + a[j][i]) as f64;
                let y = s * (a[j][i] - a[i][j]) as f64;
                m[(i, j)] = x;
                m[(n + i, n + j)] = x;
                m[(i, n + j)] = -y;
                m[(n + i, j)] = y;
            }
        }
        let scale = m.norm().max(1.0);
        let gap = tolerance() * scale;
        let mut eig: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
        eig.sort_by(|x, y| x.abs().total_cmp(&y.abs()));
        let zeros = 2 * nullity;
        if eig[..zeros].iter().any(|l| l.abs() >= gap) || eig[zeros..].iter().any(|l| l.abs() <= gap) {
            return Err(Error::UncertifiedSignature(format!(
                "eigenvalue gap below {:.1e} at {at}",
                tolerance()
            )));
        }
        let pos = eig[zeros..].iter().filter(|&&l| l > 0.0).count() as i64;
        let neg = eig[zeros..].iter().filter(|&&l| l < 0.0).count() as i64;
        Ok((pos - neg) / 2)
    }

    /// Rank of `zA − Aᵗ` at `z = ζ_q^p`, via reductions modulo primes
    /// `ℓ ≡ 1 (mod q)`. Reduction can only lower the rank, so the maximum
    /// over several primes is taken.
    fn rank_at_root(&self, p: u64, q: u64) -> usize {
        let a = self.rows_i64();
        let n = a.len();
        let mut best = 0;
        for l in primes_one_mod(q, 1 << 24, 3) {
            let w = root_of_unity(q, l);
            let z = mod_pow(w, p, l);
            let mut m: Vec<Vec<u64>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let za = (z as i128 * a[i][j] as i128 - a[j][i] as i128).rem_euclid(l as i128);
                            za as u64
                        })
                        .collect()
                })
                .collect();
            best = best.max(rank_mod(&mut m, l));
        }
        best
    }
}

fn root_of_unity(q: u64, l: u64) -> u64 {
    let primes: Vec<u64> = factorize(q).into_iter().map(|(r, _)| r).collect();
    (2..l)
        .map(|g| mod_pow(g, (l - 1) / q, l))
        .find(|&w| primes.iter().all(|&r| mod_pow(w, q / r, l) != 1))
        .expect("ℓ ≡ 1 mod q has a primitive q-th root")
}

fn rank_mod(m: &mut [Vec<u64>], l: u64) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(p, r);
        let inv = mod_pow(m[r][c], l - 2, l);
        for i in r + 1..rows {
            if m[i][c] == 0 {
                continue;
            }
            let f = m[i][c] * inv % l;
            for j in c..cols {
                m[i][j] = (m[i][j] + l - f * m[r][j] % l) % l;
            }
        }
        r += 1;
    }
    r
}

/// Arc endpoint: an exact turn or a certified isolating interval.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Breakpoint {
    Exact(#[serde(with = "serde_util::ratio")] Rational64),
    Isolated { lo: f64, hi: f64 },
}

impl Breakpoint {
    pub fn approx(&self) -> f64 {
        match self {
            Breakpoint::Exact(r) => ratio_f64(r),
            Breakpoint::Isolated { lo, hi } => (lo + hi) / 2.0,
        }
    }

    pub fn exact(&self) -> Option<Rational64> {
        match self {
            Breakpoint::Exact(r) => Some(*r),
            _ => None,
        }
    }

    fn upper(&self) -> f64 {
        match self {
            Breakpoint::Exact(r) => ratio_f64(r),
            Breakpoint::Isolated { hi, .. } => *hi,
        }
    }

    fn lower(&self) -> f64 {
        match self {
            Breakpoint::Exact(r) => ratio_f64(r),
            Breakpoint::Isolated { lo, .. } => *lo,
        }
    }
}

impl fmt::Display for Breakpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Breakpoint::Exact(r) => write!(f, "{r}"),
            Breakpoint::Isolated { lo, hi } => write!(f, "[{lo:.10}, {hi:.10}]"),
        }
    }
}

/// Open arc of turns with constant signature.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Arc {
    pub start: Breakpoint,
    pub end: Breakpoint,
    pub value: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PointValue {
    #[serde(with = "serde_util::ratio")]
    pub turn: Rational64,
    pub value: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SignatureProfile {
    pub arcs: Vec<Arc>,
    pub points: Vec<PointValue>,
}

impl SignatureProfile {
    /// Value at an exact turn, if the turn is not inside an isolating
    /// interval.
    pub fn value_at(&self, turn: Rational64) -> Option<i64> {
        let turn = crate::polyring::circle_reduce(turn);
        if turn.is_zero() {
            return Some(0);
        }
        if let Some(p) = self.points.iter().find(|p| p.turn == turn) {
            return Some(p.value);
        }
        let x = ratio_f64(&turn);
        self.arcs.iter().find_map(|arc| {
            let after_start = match &arc.start {
                Breakpoint::Exact(r) => turn > *r,
                b => x > b.upper(),
            };
            let before_end = match &arc.end {
                Breakpoint::Exact(r) => turn < *r,
                b => x < b.lower(),
            };
            (after_start && before_end).then_some(arc.value)
        })
    }

    pub fn is_exact(&self) -> bool {
        self.arcs.iter().all(|a| a.start.exact().is_some() && a.end.exact().is_some())
    }

    pub fn integral(&self) -> IntegralValue {
        if self.is_exact() {
            let total = self.arcs.iter().fold(BigRational::zero(), |acc, a| {
                let len = a.end.exact().unwrap() - a.start.exact().unwrap();
                acc + BigRational::new(BigInt::from(*len.numer()), BigInt::from(*len.denom()))
                    * BigRational::from_integer(a.value.into())
            });
            IntegralValue::Exact(total)
        } else {
            let value = self.arcs.iter().map(|a| a.value as f64 * (a.end.approx() - a.start.approx())).sum();
            let error = self
                .arcs
                .iter()
                .map(|a| {
                    let w = |b: &Breakpoint| (b.upper() - b.lower()) / 2.0;
                    a.value.unsigned_abs() as f64 * (w(&a.start) + w(&a.end))
                })
                .sum();
            IntegralValue::Approx { value, error }
        }
    }
}

/// Circle integral of the signature function (total measure 1).
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum IntegralValue {
    Exact(#[serde(with = "serde_util::big_ratio")] BigRational),
    Approx { value: f64, error: f64 },
}

impl IntegralValue {
    pub fn exact(&self) -> Option<&BigRational> {
        match self {
            IntegralValue::Exact(r) => Some(r),
            _ => None,
        }
    }

    pub fn approx(&self) -> f64 {
        match self {
            IntegralValue::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            IntegralValue::Approx { value, .. } => *value,
        }
    }

    /// True when the value is certainly nonzero.
    pub fn certainly_nonzero(&self) -> bool {
        match self {
            IntegralValue::Exact(r) => !r.is_zero(),
            IntegralValue::Approx { value, error } => value.abs() > *error,
        }
    }

    pub fn add(&self, other: &IntegralValue) -> IntegralValue {
        match (self, other) {
            (IntegralValue::Exact(a), IntegralValue::Exact(b)) => IntegralValue::Exact(a + b),
            _ => {
                let err = |v: &IntegralValue| match v {
                    IntegralValue::Approx { error, .. } => *error,
                    _ => 0.0,
                };
                IntegralValue::Approx { value: self.approx() + other.approx(), error: err(self) + err(other) }
            }
        }
    }

    pub fn scale(&self, c: i64) -> IntegralValue {
        match self {
            IntegralValue::Exact(a) => IntegralValue::Exact(a * BigRational::from_integer(c.into())),
            IntegralValue::Approx { value, error } => IntegralValue::Approx {
                value: value * c as f64,
                error: error * c.unsigned_abs() as f64,
            },
        }
    }
}

impl fmt::Display for IntegralValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntegralValue::Exact(r) => write!(f, "{r}"),
            IntegralValue::Approx { value, error } => write!(f, "{value:.12} ± {error:.1e}"),
        }
    }
}

/// Arcs between consecutive circle zeros of `Δ`, each labeled by the
/// signature at an interior point, plus the values at exact zeros.
pub fn signature_profile(a: &SeifertMatrix) -> Result<SignatureProfile> {
    let roots = circle_roots(&a.alexander())?;
    let mut cuts = vec![Breakpoint::Exact(Rational64::zero())];
    cuts.extend(roots.iter().map(|r| match r {
        CircleRoot::Exact { turn, .. } => Breakpoint::Exact(*turn),
        CircleRoot::Isolated { lo, hi } => Breakpoint::Isolated { lo: *lo, hi: *hi },
    }));
    cuts.push(Breakpoint::Exact(Rational64::from_integer(1)));

    let arcs = cuts
        .par_windows(2)
        .map(|w| {
            let value = match (&w[0], &w[1]) {
                (Breakpoint::Exact(x), Breakpoint::Exact(y)) => {
                    a.signature_at_turn((x + y) / Rational64::from_integer(2))?
                }
                (x, y) => a.signature_at(&UnitCirclePoint::with_witness((x.upper() + y.lower()) / 2.0))?,
            };
            Ok(Arc { start: w[0].clone(), end: w[1].clone(), value })
        })
        .collect::<Result<Vec<_>>>()?;
    let points = roots
        .par_iter()
        .filter_map(|r| match r {
            CircleRoot::Exact { turn, .. } => Some(*turn),
            _ => None,
        })
        .map(|turn| Ok(PointValue { turn, value: a.signature_at_turn(turn)? }))
        .collect::<Result<Vec<_>>>()?;
    Ok(SignatureProfile { arcs, points })
}

pub fn signature_integral(a: &SeifertMatrix) -> Result<IntegralValue> {
    Ok(signature_profile(a)?.integral())
}
