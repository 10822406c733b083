use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::error::Error;

/// A point `e^{2πi·turn}` of the unit circle, either an exact rational turn
/// or a symbolic transcendental point.
#[derive(Clone, Debug)]
pub enum UnitCirclePoint {
    ExactTurn(Rational64),
    GenericTranscendental { witness: Option<f64> },
}

impl UnitCirclePoint {
    /// Exact turn `p/q`, reduced into `[0, 1)`.
    pub fn turn(p: i64, q: i64) -> Self {
        Self::from_ratio(Rational64::new(p, q))
    }

    pub fn from_ratio(r: Rational64) -> Self {
        UnitCirclePoint::ExactTurn(reduce_turn(r))
    }

    pub fn transcendental() -> Self {
        UnitCirclePoint::GenericTranscendental { witness: None }
    }

    pub fn with_witness(turn: f64) -> Self {
        UnitCirclePoint::GenericTranscendental {
            witness: Some(turn.rem_euclid(1.0)),
        }
    }

    pub fn exact(&self) -> Option<Rational64> {
        match self {
            UnitCirclePoint::ExactTurn(r) => Some(*r),
            _ => None,
        }
    }

    pub fn is_transcendental(&self) -> bool {
        matches!(self, UnitCirclePoint::GenericTranscendental { .. })
    }

    /// Turn as a float, when one is known.
    pub fn approx_turn(&self) -> Option<f64> {
        match self {
            UnitCirclePoint::ExactTurn(r) => Some(*r.numer() as f64 / *r.denom() as f64),
            UnitCirclePoint::GenericTranscendental { witness } => *witness,
        }
    }
}

/// Representative of `r mod 1` in `[0, 1)`.
pub fn reduce_turn(r: Rational64) -> Rational64 {
    let f = r - r.floor();
    if f == Rational64::one() {
        Rational64::zero()
    } else {
        f
    }
}

impl PartialEq for UnitCirclePoint {
    fn eq(&self, other: &Self) -> bool {
        use UnitCirclePoint::*;
        match (self, other) {
            (ExactTurn(a), ExactTurn(b)) => a == b,
            (GenericTranscendental { witness: a }, GenericTranscendental { witness: b }) => {
                a.map(f64::to_bits) == b.map(f64::to_bits)
            }
            _ => false,
        }
    }
}

impl fmt::Display for UnitCirclePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnitCirclePoint::ExactTurn(r) => write!(f, "{r}"),
            UnitCirclePoint::GenericTranscendental { witness: None } => write!(f, "transcendental"),
            UnitCirclePoint::GenericTranscendental { witness: Some(w) } => {
                write!(f, "transcendental(~{w})")
            }
        }
    }
}

impl FromStr for UnitCirclePoint {
    type Err = Error;

    /// Accepts `p/q`, an integer, or `transcendental`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s == "transcendental" || s == "generic" {
            return Ok(Self::transcendental());
        }
        let bad = || Error::Invalid(format!("cannot parse turn '{s}' (expected p/q)"));
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?),
            None => (s.parse().map_err(|_| bad())?, 1),
        };
        if q == 0 {
            return Err(bad());
        }
        Ok(Self::turn(p, q))
    }
}

impl serde::Serialize for UnitCirclePoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        match self {
            UnitCirclePoint::GenericTranscendental { .. } => s.serialize_str("transcendental"),
            UnitCirclePoint::ExactTurn(t) => {
                let mut m = s.serialize_map(Some(1))?;
                m.serialize_entry("turn", &t.to_string())?;
                m.end()
            }
        }
    }
}
