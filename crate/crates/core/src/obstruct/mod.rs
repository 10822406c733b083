//! Obstruction pipelines: the abelian battery, metabelian eta sweeps over
//! metabolizers, doubly-slice checks, and canned example scenarios.

mod examples;
mod report;

pub use examples::{example_five_satellite, example_four_satellite, example_two_satellite, reproduce_example};
pub use report::{Check, CheckStatus, ObstructionReport, Verdict};

use num_integer::Integer;
use num_rational::Rational64;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{factorize, is_prime_power, lcm, prime_powers_up_to};
use crate::covers::{prime_power_scan, CoverGroup, PrimePowerScan};
use crate::error::{Error, Result};
use crate::etacalc::{satellite_eta_with, EtaExpression, SatelliteKnot};
use crate::group::{self, Elem};
use crate::linkform::{
    characters_vanishing, characters_vanishing_any, complementary_pairs, linking_form, metabolizers_bounded,
    Character, LinkingForm, Metabolizer,
};
use crate::metarep::{build_rep, tensor, Classification};
use crate::polyring::{factor_over_integers, reciprocal_pairing_factors, LaurentPoly, UnitCirclePoint};
use crate::seifert::{metabolic_witness, MetabolicWitness, SeifertMatrix, SeifertSum, WitnessMode};
use crate::serde_util;

/// Search bounds and character-order policy.
#[derive(Clone, Debug, Serialize)]
pub struct Config {
    pub max_k: u32,
    pub max_group: u128,
    pub max_order: u64,
    /// Explicit character orders; empty means every maximal prime power
    /// `≤ max_order` for the primes dividing the group.
    pub orders: Vec<u64>,
    /// Admit characters whose order is not a prime power.
    pub allow_non_prime_power: bool,
    /// Largest root-of-unity order in the signature battery.
    pub max_root: u64,
    /// Coefficient bound for Seifert-form pattern searches.
    pub pattern_bound: i64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_k: 9,
            max_group: 10_000,
            max_order: 49,
            orders: Vec::new(),
            allow_non_prime_power: false,
            max_root: 16,
            pattern_bound: 1,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FoxMilnor {
    pub satisfied: bool,
    /// `f` with `Δ ≐ f(t)f(t⁻¹)`.
    pub witness: Option<LaurentPoly>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TurnValue {
    #[serde(with = "serde_util::ratio")]
    pub turn: Rational64,
    pub value: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Battery {
    pub alexander: LaurentPoly,
    pub arf_zero: bool,
    pub fox_milnor: FoxMilnor,
    pub signatures: Vec<TurnValue>,
    pub verdicts: Vec<Verdict>,
}

/// Fox–Milnor test for a formal sum, factoring part by part.
pub fn fox_milnor(k: &SeifertSum) -> Result<FoxMilnor> {
    let mut factors = Vec::new();
    for part in k.parts() {
        let fs = factor_over_integers(&part.matrix.alexander())?;
        for _ in 0..part.copies {
            factors.extend(fs.iter().cloned());
        }
    }
    let witness = reciprocal_pairing_factors(&factors)?;
    Ok(FoxMilnor { satisfied: witness.is_some(), witness })
}

/// Arf, Fox–Milnor and signatures at prime-power roots of unity.
pub fn basic_battery(k: &SeifertSum, max_root: u64) -> Result<Battery> {
    let alexander = k.alexander();
    let arf_zero = k.arf_zero_solvable();
    let fm = fox_milnor(k)?;
    let mut turns = Vec::new();
    for q in prime_powers_up_to(max_root) {
        for j in 1..q {
            if j.gcd(&q) == 1 {
                turns.push(Rational64::new(j as i64, q as i64));
            }
        }
    }
    turns.sort();
    let values: Vec<i64> = turns.par_iter().map(|&t| k.signature_at_turn(t)).collect::<Result<_>>()?;
    let signatures: Vec<TurnValue> =
        turns.into_iter().zip(values).map(|(turn, value)| TurnValue { turn, value }).collect();
    let mut verdicts = Vec::new();
    verdicts.push(if arf_zero {
        Verdict::none("not (0)-solvable", "Arf invariant vanishes: Δ(−1) ≡ ±1 mod 8")
    } else {
        Verdict::certified("not (0)-solvable", format!("Arf invariant is 1: Δ(−1) = {}", alexander.eval_int(-1)))
    });
    verdicts.push(match &fm.witness {
        Some(f) => Verdict::none("not algebraically slice (Fox–Milnor)", format!("Δ ≐ f(t)f(t⁻¹) with f = {f}")),
        None => Verdict::certified("not algebraically slice (Fox–Milnor)", "Δ is not of the form f(t)f(t⁻¹)"),
    });
    match signatures.iter().find(|s| s.value != 0) {
        Some(s) => {
            let why = format!("σ = {} at turn {}, a prime-power root of unity", s.value, s.turn);
            verdicts.push(Verdict::certified("not algebraically slice (signature)", why.clone()));
            verdicts.push(Verdict::certified("not algebraically torsion", why));
        }
        None => verdicts.push(Verdict::none(
            "not algebraically slice (signature)",
            format!("σ vanishes at all prime-power roots of order ≤ {max_root}"),
        )),
    }
    Ok(Battery { alexander, arf_zero, fox_milnor: fm, signatures, verdicts })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Slice,
    Ribbon,
    Tensor,
    Doubly,
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "slice" => Ok(Mode::Slice),
            "ribbon" => Ok(Mode::Ribbon),
            "tensor" => Ok(Mode::Tensor),
            "doubly" => Ok(Mode::Doubly),
            _ => Err(Error::Parse(format!("unknown mode '{s}'"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub character: Character,
    pub classification: Classification,
    pub eta: EtaExpression,
}

#[derive(Clone, Debug, Serialize)]
pub struct MetabolizerSweep {
    pub index: usize,
    pub order: u64,
    pub generators: Vec<Elem>,
    pub characters_checked: usize,
    pub admissible: usize,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelReport {
    pub k: u32,
    pub mode: Mode,
    pub factors: Vec<u64>,
    pub cover_order: u128,
    pub metabolizer_count: usize,
    pub orders: Vec<u64>,
    pub metabolizers: Vec<MetabolizerSweep>,
    /// True when no admissible representation exists at this level.
    pub vacuous: bool,
    pub obstruction: bool,
    pub note: String,
}

fn character_orders(cfg: &Config, quotient: &[u64]) -> Result<Vec<u64>> {
    if !cfg.orders.is_empty() {
        for &m in &cfg.orders {
            if !is_prime_power(m) && !cfg.allow_non_prime_power {
                return Err(Error::NotPrimePower(m));
            }
        }
        return Ok(cfg.orders.clone());
    }
    let q = quotient.iter().fold(1, |a, &d| lcm(a, d));
    let mut out = Vec::new();
    for (p, _) in factorize(q) {
        let mut m = 1;
        while m * p <= cfg.max_order && q % (m * p) == 0 {
            m *= p;
        }
        if m > 1 {
            out.push(m);
        }
    }
    Ok(out)
}

fn declared_at(s: &SatelliteKnot, form: &LinkingForm) -> Result<Option<Metabolizer>> {
    match &s.orbit.metabolizer_family {
        Some(_) if s.orbit.ribbon || s.orbit.slice => s.orbit.declared_metabolizer(form).map(Some),
        _ => Ok(None),
    }
}

fn sweep_metabolizer(
    s: &SatelliteKnot,
    form: &LinkingForm,
    declared: Option<&Metabolizer>,
    p: &Metabolizer,
    index: usize,
    cfg: &Config,
) -> Result<MetabolizerSweep> {
    let g = &form.group;
    let z = UnitCirclePoint::transcendental();
    let quotient = group::quotient(&g.factors, &p.generators).factors;
    let mut checked = 0;
    let mut admissible = 0;
    let mut witness = None;
    'orders: for m in character_orders(cfg, &quotient)? {
        let chars = if is_prime_power(m) {
            characters_vanishing(form, p, m)?
        } else {
            characters_vanishing_any(form, p, m)?
        };
        for chi in chars {
            checked += 1;
            let rep = build_rep(g.k, &z, &chi, g)?;
            let class = rep.classify();
            let ok = if cfg.allow_non_prime_power { class.irreducible } else { class.in_pk_irr };
            if !ok {
                continue;
            }
            admissible += 1;
            let eta = satellite_eta_with(s, form, declared, &chi, &z)?;
            if eta.certainly_nonzero() {
                witness = Some(Witness { character: chi, classification: class, eta });
                break 'orders;
            }
        }
    }
    Ok(MetabolizerSweep {
        index,
        order: p.order,
        generators: p.generators.clone(),
        characters_checked: checked,
        admissible,
        witness,
    })
}

/// Metabelian eta sweep at one cover level.
///
/// Slice mode certifies an obstruction when every metabolizer admits a
/// character vanishing on it with certainly nonzero eta; ribbon mode only
/// sweeps the declared metabolizer.
pub fn se_sweep(s: &SatelliteKnot, k: u32, mode: Mode, cfg: &Config) -> Result<LevelReport> {
    if k > cfg.max_k {
        return Err(Error::EnumerationBound(format!("level {k} exceeds max k = {}", cfg.max_k)));
    }
    if mode == Mode::Slice && !is_prime_power(k as u64) {
        return Err(Error::Invalid(format!("slice sweeps need a prime-power level, got {k}")));
    }
    if !matches!(mode, Mode::Slice | Mode::Ribbon) {
        return Err(Error::Invalid("se_sweep handles slice and ribbon modes".into()));
    }
    let form = linking_form(&s.orbit.matrix, k)?;
    let g = &form.group;
    let cover_order = form.order();
    let mut report = LevelReport {
        k,
        mode,
        factors: g.factors.clone(),
        cover_order,
        metabolizer_count: 0,
        orders: Vec::new(),
        metabolizers: Vec::new(),
        vacuous: false,
        obstruction: false,
        note: String::new(),
    };
    if g.is_trivial() {
        report.vacuous = true;
        report.metabolizer_count = 1;
        report.note = format!("H_1(L_{k}) = 0: no irreducible metabelian representations of dimension {k}");
        return Ok(report);
    }
    s.check_axes(g)?;
    let declared = declared_at(s, &form)?;
    let ms = match (mode, &declared) {
        (Mode::Ribbon, Some(p)) => vec![p.clone()],
        (Mode::Ribbon, None) => vec![s.orbit.declared_metabolizer(&form)?],
        _ => metabolizers_bounded(&form, cfg.max_group)?,
    };
    report.metabolizer_count = ms.len();
    if ms.is_empty() {
        report.obstruction = true;
        report.note = format!("linking form on H_1(L_{k}) has no metabolizer");
        return Ok(report);
    }
    let sweeps: Vec<MetabolizerSweep> = ms
        .par_iter()
        .enumerate()
        .map(|(i, p)| sweep_metabolizer(s, &form, declared.as_ref(), p, i, cfg))
        .collect::<Result<_>>()?;
    let mut orders: Vec<u64> = Vec::new();
    for p in &ms {
        let q = group::quotient(&g.factors, &p.generators).factors;
        for m in character_orders(cfg, &q)? {
            if !orders.contains(&m) {
                orders.push(m);
            }
        }
    }
    orders.sort();
    report.orders = orders;
    report.vacuous = sweeps.iter().all(|w| w.admissible == 0);
    report.obstruction = sweeps.iter().all(|w| w.witness.is_some());
    let with = sweeps.iter().filter(|w| w.witness.is_some()).count();
    report.note = match mode {
        Mode::Ribbon => {
            if report.obstruction {
                "declared metabolizer admits a character with nonzero eta".into()
            } else {
                "no witness for the declared metabolizer".into()
            }
        }
        _ => format!("{with} of {} metabolizers have a nonzero-eta witness", sweeps.len()),
    };
    report.metabolizers = sweeps;
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct TupleSweep {
    pub indices: Vec<usize>,
    pub prime: Option<u64>,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TensorReport {
    pub levels: Vec<u32>,
    pub metabolizer_counts: Vec<usize>,
    pub tuples: Vec<TupleSweep>,
    pub vacuous: bool,
    pub obstruction: bool,
    pub note: String,
}

/// Products `α_1 ⊗ … ⊗ α_r` over pairwise coprime prime-power levels, one
/// prime `p` shared by all character orders.
pub fn tensor_sweep(s: &SatelliteKnot, levels: &[u32], cfg: &Config) -> Result<TensorReport> {
    for (i, &a) in levels.iter().enumerate() {
        if !is_prime_power(a as u64) {
            return Err(Error::NotPrimePower(a as u64));
        }
        for &b in &levels[i + 1..] {
            if a.gcd(&b) != 1 {
                return Err(Error::TensorNotCoprime(a, b));
            }
        }
    }
    let top: u32 = levels.iter().product();
    if top > cfg.max_k {
        return Err(Error::EnumerationBound(format!("product level {top} exceeds max k = {}", cfg.max_k)));
    }
    let forms: Vec<LinkingForm> = levels.iter().map(|&k| linking_form(&s.orbit.matrix, k)).collect::<Result<_>>()?;
    let ms: Vec<Vec<Metabolizer>> =
        forms.iter().map(|f| metabolizers_bounded(f, cfg.max_group)).collect::<Result<_>>()?;
    let counts: Vec<usize> = ms.iter().map(Vec::len).collect();
    let mut report = TensorReport {
        levels: levels.to_vec(),
        metabolizer_counts: counts.clone(),
        tuples: Vec::new(),
        vacuous: false,
        obstruction: false,
        note: String::new(),
    };
    if let Some(i) = counts.iter().position(|&c| c == 0) {
        report.obstruction = true;
        report.note = format!("linking form at level {} has no metabolizer", levels[i]);
        return Ok(report);
    }
    let top_form = linking_form(&s.orbit.matrix, top)?;
    s.check_axes(&top_form.group)?;
    let declared = declared_at(s, &top_form)?;
    let primes: Vec<u64> = {
        let mut ps: Vec<u64> = forms
            .iter()
            .flat_map(|f| f.factors().iter().flat_map(|&d| factorize(d).into_iter().map(|(p, _)| p)))
            .collect();
        ps.sort();
        ps.dedup();
        ps
    };
    let z = UnitCirclePoint::transcendental();
    let total: usize = counts.iter().product();
    let mut any_admissible = false;
    for t in 0..total {
        let idx = group::from_index(t, &counts.iter().map(|&c| c as u64).collect::<Vec<_>>());
        let indices: Vec<usize> = idx.iter().map(|&i| i as usize).collect();
        let mut tuple = TupleSweep { indices: indices.clone(), prime: None, witness: None };
        'primes: for &p in &primes {
            let mut m = p;
            while m * p <= cfg.max_order {
                m *= p;
            }
            if m > cfg.max_order {
                continue;
            }
            let mut per_level: Vec<Vec<crate::metarep::MetaRep>> = Vec::new();
            for (l, f) in forms.iter().enumerate() {
                let reps: Vec<_> = characters_vanishing(f, &ms[l][indices[l]], m)?
                    .into_iter()
                    .filter_map(|c| build_rep(f.group.k, &z, &c, &f.group).ok())
                    .filter(|r| r.classify().in_pk_irr)
                    .collect();
                per_level.push(reps);
            }
            if per_level.iter().any(Vec::is_empty) {
                continue;
            }
            any_admissible = true;
            let sizes: Vec<u64> = per_level.iter().map(|v| v.len() as u64).collect();
            for c in 0..group::order(&sizes) as usize {
                let pick = group::from_index(c, &sizes);
                let mut acc = per_level[0][pick[0] as usize].clone();
                for l in 1..per_level.len() {
                    let level = acc.k * per_level[l][pick[l] as usize].k;
                    let target = if level == top { top_form.group.clone() } else { crate::covers::cover_group(&s.orbit.matrix, level)? };
                    acc = tensor(&acc, &per_level[l][pick[l] as usize], &target, 16)?;
                }
                let eta = satellite_eta_with(s, &top_form, declared.as_ref(), &acc.chi, &z)?;
                if eta.certainly_nonzero() {
                    tuple.prime = Some(p);
                    tuple.witness = Some(Witness { character: acc.chi.clone(), classification: acc.classify(), eta });
                    break 'primes;
                }
            }
        }
        report.tuples.push(tuple);
    }
    report.vacuous = !any_admissible;
    report.obstruction = report.tuples.iter().all(|t| t.witness.is_some());
    report.note = format!(
        "{} of {} metabolizer tuples have a nonzero-eta tensor witness",
        report.tuples.iter().filter(|t| t.witness.is_some()).count(),
        report.tuples.len()
    );
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct DoublyLevel {
    pub k: u32,
    pub cover_order: u128,
    pub metabolizers: usize,
    pub pairs: usize,
    pub obstruction: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DoublyReport {
    pub pattern: MetabolicWitness,
    pub levels: Vec<DoublyLevel>,
    pub obstruction: bool,
}

/// Complementary metabolizer pairs per level, plus the `[[0, B], [C, 0]]`
/// Seifert-form pattern search.
pub fn doubly_slice_check(a: &SeifertMatrix, levels: &[u32], cfg: &Config) -> Result<DoublyReport> {
    let pattern = metabolic_witness(a, cfg.pattern_bound.max(1), WitnessMode::Doubly)?;
    let mut out = Vec::new();
    for &k in levels {
        let form = linking_form(a, k)?;
        let ms = metabolizers_bounded(&form, cfg.max_group)?;
        let pairs = if ms.is_empty() { 0 } else { complementary_pairs(&form)?.len() };
        out.push(DoublyLevel { k, cover_order: form.order(), metabolizers: ms.len(), pairs, obstruction: pairs == 0 });
    }
    let obstruction = out.iter().any(|l| l.obstruction);
    Ok(DoublyReport { pattern, levels: out, obstruction })
}

/// Prime-power cover orders and the three-primes cyclotomic criterion.
pub fn cover_scan(a: &SeifertMatrix, cfg: &Config) -> Result<PrimePowerScan> {
    prime_power_scan(&a.alexander(), cfg.max_k)
}

/// Finite cover group or a descriptive error.
pub fn finite_cover(a: &SeifertMatrix, k: u32) -> Result<CoverGroup> {
    let g = crate::covers::cover_group(a, k)?;
    if !g.is_finite() {
        return Err(Error::InfiniteCover(k));
    }
    Ok(g)
}

fn merge_assumptions<'a>(etas: impl Iterator<Item = &'a EtaExpression>) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for e in etas {
        for a in &e.assumptions {
            if !out.contains(a) {
                out.push(a.clone());
            }
        }
    }
    out
}

fn skippable(e: &Error) -> bool {
    matches!(e, Error::InfiniteCover(_) | Error::EnumerationBound(_) | Error::MissingAxis { .. })
}

/// Battery plus the sweeps of `mode` on one knot. With `levels` empty the
/// default levels are swept and levels the bounds or data cannot handle are
/// listed as skipped; explicitly requested levels propagate every error.
pub fn obstruct_knot(
    label: &str,
    sum: &SeifertSum,
    sat: &SatelliteKnot,
    mode: Mode,
    levels: &[u32],
    cfg: &Config,
) -> Result<ObstructionReport> {
    let mut r = ObstructionReport::new(label);
    let battery = basic_battery(sum, cfg.max_root)?;
    r.verdicts.extend(battery.verdicts.iter().cloned());
    r.battery = Some(battery);
    let explicit = !levels.is_empty();
    match mode {
        Mode::Slice | Mode::Ribbon => {
            let ks: Vec<u32> = if explicit {
                levels.to_vec()
            } else {
                (2..=cfg.max_k).filter(|&k| mode == Mode::Ribbon || is_prime_power(k as u64)).collect()
            };
            let results: Vec<(u32, Result<LevelReport>)> =
                ks.par_iter().map(|&k| (k, se_sweep(sat, k, mode, cfg))).collect();
            for (k, res) in results {
                match res {
                    Ok(l) => r.levels.push(l),
                    Err(e) if !explicit && skippable(&e) => r.skipped.push(format!("k={k}: {e}")),
                    Err(e) => return Err(e),
                }
            }
            let claim = if mode == Mode::Slice { "not slice" } else { "not ribbon" };
            for l in r.levels.iter().filter(|l| l.obstruction) {
                let reason = if l.metabolizer_count == 0 {
                    format!("level {}: linking form has no metabolizer", l.k)
                } else {
                    format!("level {}: every metabolizer has a nonzero-eta witness", l.k)
                };
                let a = merge_assumptions(l.metabolizers.iter().filter_map(|m| m.witness.as_ref()).map(|w| &w.eta));
                r.verdicts.push(Verdict::certified(claim, reason).with_assumptions(a));
            }
            if !r.levels.iter().any(|l| l.obstruction) {
                r.verdicts.push(Verdict::none(claim, format!("no metabelian obstruction at {} swept levels", r.levels.len())));
            }
        }
        Mode::Tensor => {
            let ks = if explicit { levels.to_vec() } else { vec![2, 3] };
            let t = tensor_sweep(sat, &ks, cfg)?;
            let a = merge_assumptions(t.tuples.iter().filter_map(|x| x.witness.as_ref()).map(|w| &w.eta));
            r.verdicts.push(if t.obstruction {
                Verdict::certified("not slice", format!("tensor levels {ks:?}: {}", t.note)).with_assumptions(a)
            } else {
                Verdict::none("not slice", format!("tensor levels {ks:?}: {}", t.note))
            });
            r.tensor = Some(t);
        }
        Mode::Doubly => {
            let ks = if explicit { levels.to_vec() } else { vec![2, 3] };
            let d = doubly_slice_check(&sum.materialize(), &ks, cfg)?;
            for l in &d.levels {
                if l.obstruction {
                    let why = if l.metabolizers == 0 {
                        format!("level {}: no metabolizer, so no complementary metabolizer pair", l.k)
                    } else {
                        format!("level {}: no complementary metabolizer pair", l.k)
                    };
                    r.verdicts.push(Verdict::certified("not doubly slice", why));
                }
            }
            if !d.obstruction {
                r.verdicts.push(Verdict::none("not doubly slice", "complementary metabolizer pairs at every level"));
            }
            r.doubly = Some(d);
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::etacalc::{AxisClasses, Orbit, Stage};
    use crate::seifert::fixtures::*;
    use std::collections::BTreeMap;

    fn d() -> SeifertSum {
        SeifertSum::single("B3", b3()).times(7).concat(&SeifertSum::single("B2", b2()).times(6).negated())
    }

    #[test]
    fn battery_examples() {
        let t = basic_battery(&SeifertSum::single("B2", b2()), 9).unwrap();
        assert!(!t.arf_zero);
        assert!(t.verdicts[0].certified);
        assert_eq!(t.signatures.iter().find(|s| s.turn == Rational64::new(1, 2)).unwrap().value, 2);
        let e1 = basic_battery(&d(), 9).unwrap();
        assert!(e1.arf_zero);
        for j in 1..5 {
            assert_eq!(e1.signatures.iter().find(|s| s.turn == Rational64::new(j, 5)).unwrap().value, 2);
        }
        assert!(e1.verdicts.iter().any(|v| v.claim == "not algebraically torsion" && v.certified));
        let m = basic_battery(&SeifertSum::single("B1", b1()), 16).unwrap();
        assert!(m.arf_zero && m.fox_milnor.satisfied);
        assert!(m.signatures.iter().all(|s| s.value == 0));
        assert!(m.verdicts.iter().all(|v| !v.certified));
    }

    #[test]
    fn doubly_examples() {
        let tre = doubly_slice_check(&b2(), &[2], &Config::default()).unwrap();
        assert!(tre.obstruction);
        assert_eq!(tre.levels[0].pairs, 0);
        let u = doubly_slice_check(&SeifertMatrix::unknot(), &[2, 3], &Config::default()).unwrap();
        assert!(!u.obstruction);
        let h = doubly_slice_check(&b2().direct_sum(&b2().negate()), &[2], &Config::default()).unwrap();
        assert_eq!(h.levels[0].cover_order, 9);
    }

    fn plain(a: SeifertMatrix, k: u32) -> SatelliteKnot {
        let _ = k;
        SatelliteKnot::new(Orbit::plain(a), Vec::new())
    }

    #[test]
    fn linking_form_obstruction_for_trefoil() {
        let r = se_sweep(&plain(b2(), 2), 2, Mode::Slice, &Config::default()).unwrap();
        assert!(r.obstruction);
        assert_eq!(r.metabolizer_count, 0);
        assert!(se_sweep(&plain(b2(), 6), 6, Mode::Slice, &Config::default()).is_err());
    }

    #[test]
    fn quantifier_needs_every_metabolizer() {
        // B2 ⊕ −B2 at k=2: (Z/3)² with two metabolizers; an axis on one
        // summand only gives a witness for one of them
        let a = b2().direct_sum(&b2().negate());
        let stage = Stage {
            companion: SeifertSum::single("B2", b2()),
            axis: BTreeMap::from([(2, AxisClasses::List(vec![vec![1, 0, 0, 0]]))]),
        };
        let mut orbit = Orbit::plain(a.clone());
        orbit.eta_bound = Some(0);
        let s = SatelliteKnot::new(orbit, vec![stage]);
        let r = se_sweep(&s, 2, Mode::Slice, &Config::default()).unwrap();
        assert!(r.metabolizer_count >= 1);
        let with = r.metabolizers.iter().filter(|m| m.witness.is_some()).count();
        assert_eq!(r.obstruction, with == r.metabolizer_count);
        if with > 0 && with < r.metabolizer_count {
            assert!(!r.obstruction);
        }
        // adding more orders never removes witnesses
        let cfg = Config { orders: vec![3, 9], ..Config::default() };
        let r2 = se_sweep(&s, 2, Mode::Slice, &cfg).unwrap();
        assert!(r2.metabolizers.iter().filter(|m| m.witness.is_some()).count() >= with);
    }

    #[test]
    fn refuses_non_prime_power_orders() {
        let cfg = Config { orders: vec![6], ..Config::default() };
        let err = se_sweep(&plain(b2().direct_sum(&b2().negate()), 2), 2, Mode::Slice, &cfg).unwrap_err();
        assert!(matches!(err, Error::NotPrimePower(6)));
    }

    #[test]
    fn pipeline_exit_codes() {
        let cfg = Config::default();
        let unknot = SeifertSum::new(Vec::new());
        let u = obstruct_knot("unknot", &unknot, &plain(SeifertMatrix::unknot(), 0), Mode::Slice, &[], &cfg).unwrap();
        assert_eq!(u.exit_code(), 0);
        let tre = SeifertSum::single("B2", b2());
        let d = obstruct_knot("trefoil", &tre, &plain(b2(), 0), Mode::Doubly, &[], &cfg).unwrap();
        assert_eq!(d.exit_code(), 2);
        assert!(d.to_string().contains("no complementary metabolizer pair"));
        let b1s = SeifertSum::single("B1", b1());
        let tight = Config { max_group: 1, ..Config::default() };
        let m = obstruct_knot("B1", &b1s, &plain(b1(), 0), Mode::Slice, &[], &tight).unwrap();
        assert!(m.skipped.iter().any(|s| s.starts_with("k=2")), "{:?}", m.skipped);
        assert!(obstruct_knot("B1", &b1s, &plain(b1(), 0), Mode::Slice, &[6], &cfg).is_err());
    }

    #[test]
    fn tensor_mode_mechanics() {
        let r = tensor_sweep(&plain(figure_eight(), 6), &[2, 3], &Config::default()).unwrap();
        assert!(r.obstruction);
        assert!(tensor_sweep(&plain(figure_eight(), 6), &[2, 4], &Config::default()).is_err());
    }
}
