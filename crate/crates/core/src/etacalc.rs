//! Eta-value bookkeeping: cover corrections, the satellite formula, and
//! abelian/satellite L²-eta values, with explicit base-case assumptions.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;
use num_traits::Zero;
use serde::Serialize;

use crate::arith::is_prime_power;
use crate::covers::CoverGroup;
use crate::error::{Error, Result};
use crate::group::{self, Elem};
use crate::linkform::{Character, LinkingForm, Metabolizer};
use crate::polyring::UnitCirclePoint;
use crate::seifert::{signature_integral, IntegralValue, SeifertMatrix, SeifertSum};
use crate::serde_util;

/// `Σ_{j=1}^{k} σ_{j/k}(A)`.
pub fn cover_correction(a: &SeifertMatrix, k: u32) -> Result<i64> {
    if k == 0 {
        return Err(Error::Invalid("cover degree k must be positive".into()));
    }
    (1..=k as i64)
        .map(|j| a.signature_at_turn(Rational64::new(j, k as i64)))
        .sum()
}

/// The orbit knot of a satellite with its declared facts.
#[derive(Clone, Debug)]
pub struct Orbit {
    pub matrix: SeifertMatrix,
    pub ribbon: bool,
    pub slice: bool,
    /// Λ-generators of a declared Blanchfield metabolizer, in dual-basis
    /// coordinates.
    pub metabolizer_family: Option<Vec<Vec<i64>>>,
    /// Declared `N` with `|η(M_K, α)| ≤ N` for all representations considered.
    pub eta_bound: Option<i64>,
}

impl Orbit {
    pub fn plain(matrix: SeifertMatrix) -> Self {
        Orbit { matrix, ribbon: false, slice: false, metabolizer_family: None, eta_bound: None }
    }

    /// The declared metabolizer projected to the level of `form`.
    pub fn declared_metabolizer(&self, form: &LinkingForm) -> Result<Metabolizer> {
        let fam = self.metabolizer_family.as_ref().ok_or(Error::MissingMetabolizerFamily)?;
        Metabolizer::from_lambda_generators(form, fam)
    }
}

/// Lifts of the satellite axes at one cover level, in dual-basis coordinates.
#[derive(Clone, Debug, PartialEq)]
pub enum AxisClasses {
    /// One axis per listed class.
    List(Vec<Vec<i64>>),
    /// One axis for every element of the cover group.
    All,
}

/// Companion knot tied in along one or more axes.
#[derive(Clone, Debug)]
pub struct Stage {
    pub companion: SeifertSum,
    pub axis: BTreeMap<u32, AxisClasses>,
}

#[derive(Clone, Debug)]
pub struct SatelliteKnot {
    pub orbit: Orbit,
    pub stages: Vec<Stage>,
}

impl SatelliteKnot {
    pub fn new(orbit: Orbit, stages: Vec<Stage>) -> Self {
        SatelliteKnot { orbit, stages }
    }

    /// Validates axis data at level `k` against the group.
    pub fn check_axes(&self, g: &CoverGroup) -> Result<()> {
        for (j, s) in self.stages.iter().enumerate() {
            match s.axis.get(&g.k) {
                None => return Err(Error::MissingAxis { stage: j, k: g.k }),
                Some(AxisClasses::List(v)) => {
                    if let Some(bad) = v.iter().find(|c| c.len() != g.ambient_dim()) {
                        return Err(Error::Invalid(format!(
                            "axis class {bad:?} of stage {j} needs {} coordinates",
                            g.ambient_dim()
                        )));
                    }
                }
                Some(AxisClasses::All) => {}
            }
        }
        Ok(())
    }
}

/// How the orbit's own eta value enters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "bound", rename_all = "snake_case")]
pub enum BaseTerm {
    Zero,
    /// `|η| ≤ N`.
    Bounded(i64),
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SignatureTerm {
    pub companion: String,
    #[serde(with = "serde_util::ratio")]
    pub turn: Rational64,
    pub multiplicity: u64,
    pub signature: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EtaExpression {
    pub z: UnitCirclePoint,
    pub base: BaseTerm,
    pub terms: Vec<SignatureTerm>,
    pub correction: i64,
    pub assumptions: Vec<String>,
}

impl EtaExpression {
    pub fn lower_bound(&self) -> Option<i64> {
        match self.base {
            BaseTerm::Zero => Some(self.correction),
            BaseTerm::Bounded(n) => Some(self.correction - n),
            BaseTerm::Unknown => None,
        }
    }

    pub fn upper_bound(&self) -> Option<i64> {
        match self.base {
            BaseTerm::Zero => Some(self.correction),
            BaseTerm::Bounded(n) => Some(self.correction + n),
            BaseTerm::Unknown => None,
        }
    }

    /// Exact value when the base is zero.
    pub fn value(&self) -> Option<i64> {
        (self.base == BaseTerm::Zero).then_some(self.correction)
    }

    pub fn certainly_nonzero(&self) -> bool {
        self.lower_bound().is_some_and(|l| l > 0) || self.upper_bound().is_some_and(|u| u < 0)
    }

    pub fn is_assumption_free(&self) -> bool {
        self.assumptions.is_empty()
    }
}

impl fmt::Display for EtaExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.base {
            BaseTerm::Zero => write!(f, "0")?,
            BaseTerm::Bounded(n) => write!(f, "[−{n}, {n}]")?,
            BaseTerm::Unknown => write!(f, "η(orbit)")?,
        }
        write!(f, " + {}", self.correction)?;
        match (self.lower_bound(), self.upper_bound()) {
            (Some(l), Some(u)) if l == u => write!(f, " = {l}"),
            (Some(l), Some(u)) => write!(f, " ∈ [{l}, {u}]"),
            _ => Ok(()),
        }
    }
}

pub const ASSUME_RIBBON_BASE: &str =
    "base eta vanishes: orbit is declared ribbon/slice and χ kills the declared metabolizer";

pub fn assume_bound(n: i64) -> String {
    format!("base eta bounded: |η(M_K, α)| ≤ {n} for every representation of this dimension (declared)")
}

/// `η(M_S, α_(z,χ)) = η(M_K, α_(z,χ)) + Σ_j Σ_{i<k} σ_{χ(t^i·Ã_j)}(C_j)`.
pub fn satellite_eta(
    s: &SatelliteKnot,
    form: &LinkingForm,
    chi: &Character,
    z: &UnitCirclePoint,
) -> Result<EtaExpression> {
    let declared = match (&s.orbit.metabolizer_family, s.orbit.ribbon || s.orbit.slice) {
        (Some(_), true) => Some(s.orbit.declared_metabolizer(form)?),
        _ => None,
    };
    satellite_eta_with(s, form, declared.as_ref(), chi, z)
}

/// [`satellite_eta`] with the declared metabolizer already projected to the
/// level of `form`, for sweeps that evaluate many characters.
pub fn satellite_eta_with(
    s: &SatelliteKnot,
    form: &LinkingForm,
    declared: Option<&Metabolizer>,
    chi: &Character,
    z: &UnitCirclePoint,
) -> Result<EtaExpression> {
    let g = &form.group;
    s.check_axes(g)?;
    if !chi.factors_through_level(g, g.k) {
        return Err(Error::CharacterLevel(g.k));
    }
    let mut assumptions = Vec::new();
    // the vanishing theorems only cover irreducible α_(z,χ) with z
    // transcendental and χ of prime-power order
    let covered = z.is_transcendental()
        && (chi.order == 1 || is_prime_power(chi.order))
        && orbit_size(g, chi) == g.k;
    let kills_declared = covered && (s.orbit.ribbon || s.orbit.slice) && declared.is_some_and(|p| chi.kills(&p.generators));
    let base = if kills_declared {
        assumptions.push(ASSUME_RIBBON_BASE.to_string());
        BaseTerm::Zero
    } else if let Some(n) = s.orbit.eta_bound {
        assumptions.push(assume_bound(n));
        BaseTerm::Bounded(n)
    } else {
        BaseTerm::Unknown
    };

    let mut counts: BTreeMap<(String, Rational64), (u64, usize)> = BTreeMap::new();
    for (j, stage) in s.stages.iter().enumerate() {
        let label = stage.companion.to_string();
        for (turn, mult) in axis_turns(g, chi, &stage.axis[&g.k])? {
            let e = counts.entry((label.clone(), turn)).or_insert((0, j));
            e.0 += mult;
        }
    }
    let mut terms = Vec::new();
    let mut correction = 0i64;
    for ((companion, turn), (multiplicity, j)) in counts {
        let signature = s.stages[j].companion.signature_at_turn(turn)?;
        correction += signature * multiplicity as i64;
        terms.push(SignatureTerm { companion, turn, multiplicity, signature });
    }
    Ok(EtaExpression { z: z.clone(), base, terms, correction, assumptions })
}

fn orbit_size(g: &CoverGroup, chi: &Character) -> u32 {
    if g.t.is_empty() {
        return 1;
    }
    let mut c = chi.compose_t(g);
    let mut n = 1;
    while c != *chi {
        c = c.compose_t(g);
        n += 1;
    }
    n
}

/// Multiset of turns `χ(t^i·Ã)` over all axes of one stage.
fn axis_turns(g: &CoverGroup, chi: &Character, axes: &AxisClasses) -> Result<BTreeMap<Rational64, u64>> {
    let mut out: BTreeMap<Rational64, u64> = BTreeMap::new();
    match axes {
        AxisClasses::List(classes) => {
            for c in classes {
                let mut x: Elem = g.project(c);
                for _ in 0..g.k {
                    *out.entry(chi.turn(&x)).or_insert(0) += 1;
                    x = if g.t.is_empty() { x } else { g.apply_t(&x) };
                }
            }
        }
        AxisClasses::All => {
            // t permutes the group, and each value in the image of χ has
            // |ker χ| preimages
            let order = group::order(&g.factors);
            let fiber = order / chi.order as u128;
            let mult = u64::try_from(fiber * g.k as u128)
                .map_err(|_| Error::EnumerationBound("axis multiplicity overflows".into()))?;
            for c in 0..chi.order as i64 {
                out.insert(Rational64::new(c, chi.order as i64), mult);
            }
        }
    }
    Ok(out)
}

/// `η^(2)(M_K, Z) = ∫ σ_z(K)`.
pub fn l2_abelian(a: &SeifertMatrix) -> Result<IntegralValue> {
    signature_integral(a)
}

pub fn l2_abelian_sum(a: &SeifertSum) -> Result<IntegralValue> {
    a.integral()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct L2Term {
    pub companion: String,
    pub integral: IntegralValue,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct L2Expression {
    /// `None` when the base value is unknown.
    pub base: Option<IntegralValue>,
    pub terms: Vec<L2Term>,
    pub value: Option<IntegralValue>,
    pub assumptions: Vec<String>,
}

pub const ASSUME_ITERATED_L2: &str =
    "iterated L² satellite formula: the single-stage formula applied once per stage";

/// Base value plus `∫σ(C)` for every companion whose axis is nonzero under
/// the abelian character.
pub fn l2_satellite(base: Option<IntegralValue>, companions: &[(SeifertSum, bool)]) -> Result<L2Expression> {
    let mut terms = Vec::new();
    let mut total = base.clone();
    for (c, nonvanishing) in companions {
        if !nonvanishing {
            continue;
        }
        let integral = c.integral()?;
        total = total.map(|t| t.add(&integral));
        terms.push(L2Term { companion: c.to_string(), integral });
    }
    let assumptions = if companions.len() > 1 { vec![ASSUME_ITERATED_L2.to_string()] } else { Vec::new() };
    Ok(L2Expression { base, terms, value: total, assumptions })
}

/// Exact zero integral, the usual base value for a slice orbit.
pub fn zero_integral() -> IntegralValue {
    IntegralValue::Exact(num_rational::BigRational::zero())
}
