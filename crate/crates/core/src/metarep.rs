//! Metabelian unitary representations `α_(z,χ)` of `Z ⋉ H_1(L_k)` as
//! monomial matrices with exact phases.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::arith::is_prime_power;
use crate::covers::CoverGroup;
use crate::error::{Error, Result};
use crate::group::{self, Elem};
use crate::linkform::Character;
use crate::polyring::{circle_reduce, UnitCirclePoint};

/// `e^{2πi·turn} · ∏ z_s^{e_s}` with independent symbolic circle elements
/// `z_s` (rational exponents allowed).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Phase {
    turn: Rational64,
    symbols: BTreeMap<u32, Rational64>,
}

impl Phase {
    pub fn one() -> Self {
        Phase { turn: Rational64::zero(), symbols: BTreeMap::new() }
    }

    pub fn root(turn: Rational64) -> Self {
        Phase { turn: circle_reduce(turn), symbols: BTreeMap::new() }
    }

    /// The generic circle element `z_id`.
    pub fn symbol(id: u32) -> Self {
        Phase { turn: Rational64::zero(), symbols: BTreeMap::from([(id, Rational64::one())]) }
    }

    pub fn from_point(z: &UnitCirclePoint) -> Self {
        match z.exact() {
            Some(t) => Phase::root(t),
            None => Phase::symbol(0),
        }
    }

    pub fn turn(&self) -> Rational64 {
        self.turn
    }

    pub fn is_root_of_unity(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbol_exponent(&self, id: u32) -> Rational64 {
        self.symbols.get(&id).copied().unwrap_or_else(Rational64::zero)
    }

    pub fn mul(&self, other: &Phase) -> Phase {
        let mut symbols = self.symbols.clone();
        for (&s, &e) in &other.symbols {
            let v = symbols.entry(s).or_insert_with(Rational64::zero);
            *v += e;
            if v.is_zero() {
                symbols.remove(&s);
            }
        }
        Phase { turn: circle_reduce(self.turn + other.turn), symbols }
    }

    pub fn pow(&self, e: Rational64) -> Phase {
        Phase {
            turn: circle_reduce(self.turn * e),
            symbols: self.symbols.iter().filter(|_| !e.is_zero()).map(|(&s, &x)| (s, x * e)).collect(),
        }
    }

    pub fn powi(&self, e: i64) -> Phase {
        self.pow(Rational64::from_integer(e))
    }

    pub fn inv(&self) -> Phase {
        self.powi(-1)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.turn.is_zero() || self.symbols.is_empty() {
            parts.push(format!("e(2πi·{})", self.turn));
        }
        for (s, e) in &self.symbols {
            if e.is_one() {
                parts.push(format!("z{s}"));
            } else {
                parts.push(format!("z{s}^{e}"));
            }
        }
        write!(f, "{}", parts.join("·"))
    }
}

impl Serialize for Phase {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if *self == Phase::symbol(0) {
            return s.serialize_str("transcendental");
        }
        let mut m = s.serialize_map(None)?;
        m.serialize_entry("turn", &self.turn.to_string())?;
        if !self.symbols.is_empty() {
            let syms: BTreeMap<String, String> =
                self.symbols.iter().map(|(k, v)| (format!("z{k}"), v.to_string())).collect();
            m.serialize_entry("symbols", &syms)?;
        }
        m.end()
    }
}

/// A matrix with exactly one nonzero entry per row and column: row `i`
/// holds `phases[i]` in column `cols[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialMatrix {
    cols: Vec<usize>,
    phases: Vec<Phase>,
}

impl fmt::Display for MonomialMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.cols.iter().zip(&self.phases).map(|(c, p)| format!("{c}:{p}")).collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl MonomialMatrix {
    pub fn identity(k: usize) -> Self {
        MonomialMatrix { cols: (0..k).collect(), phases: vec![Phase::one(); k] }
    }

    /// `S e_i = e_{i+1}` (indices mod `k`).
    pub fn shift(k: usize) -> Self {
        MonomialMatrix { cols: (0..k).map(|r| (r + k - 1) % k).collect(), phases: vec![Phase::one(); k] }
    }

    pub fn diag(phases: Vec<Phase>) -> Self {
        MonomialMatrix { cols: (0..phases.len()).collect(), phases }
    }

    /// Permutation matrix sending `e_j` to `e_{p[j]}`.
    pub fn permutation(p: &[usize]) -> Self {
        let mut cols = vec![0; p.len()];
        for (j, &i) in p.iter().enumerate() {
            cols[i] = j;
        }
        MonomialMatrix { cols, phases: vec![Phase::one(); p.len()] }
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    /// Entry at `(i, j)`, `None` for zero.
    pub fn entry(&self, i: usize, j: usize) -> Option<&Phase> {
        (self.cols[i] == j).then(|| &self.phases[i])
    }

    pub fn mul(&self, other: &MonomialMatrix) -> MonomialMatrix {
        let cols = self.cols.iter().map(|&c| other.cols[c]).collect();
        let phases = self
            .phases
            .iter()
            .zip(&self.cols)
            .map(|(p, &c)| p.mul(&other.phases[c]))
            .collect();
        MonomialMatrix { cols, phases }
    }

    pub fn inverse(&self) -> MonomialMatrix {
        let k = self.dim();
        let mut cols = vec![0; k];
        let mut phases = vec![Phase::one(); k];
        for i in 0..k {
            cols[self.cols[i]] = i;
            phases[self.cols[i]] = self.phases[i].inv();
        }
        MonomialMatrix { cols, phases }
    }

    pub fn pow(&self, e: i64) -> MonomialMatrix {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        (0..e.unsigned_abs()).fold(MonomialMatrix::identity(self.dim()), |acc, _| acc.mul(&base))
    }

    pub fn scale(&self, c: &Phase) -> MonomialMatrix {
        MonomialMatrix { cols: self.cols.clone(), phases: self.phases.iter().map(|p| p.mul(c)).collect() }
    }

    /// Kronecker product; `e_a ⊗ e_b` has index `a·dim(other) + b`.
    pub fn tensor(&self, other: &MonomialMatrix) -> MonomialMatrix {
        let k2 = other.dim();
        let mut cols = Vec::with_capacity(self.dim() * k2);
        let mut phases = Vec::with_capacity(self.dim() * k2);
        for a in 0..self.dim() {
            for b in 0..k2 {
                cols.push(self.cols[a] * k2 + other.cols[b]);
                phases.push(self.phases[a].mul(&other.phases[b]));
            }
        }
        MonomialMatrix { cols, phases }
    }

    /// `det` as a phase.
    pub fn det(&self) -> Phase {
        let k = self.dim();
        let mut seen = vec![false; k];
        let mut sign_turn = Rational64::zero();
        for s in 0..k {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                i = self.cols[i];
                len += 1;
            }
            if len % 2 == 0 {
                sign_turn += Rational64::new(1, 2);
            }
        }
        self.phases.iter().fold(Phase::root(sign_turn), |acc, p| acc.mul(p))
    }
}

/// `α_(z,χ)` on `Z ⋉ H`, with `H` a cover group whose deck action has order
/// dividing `k`.
#[derive(Clone, Debug)]
pub struct MetaRep {
    pub k: u32,
    pub z: Phase,
    pub chi: Character,
    group: CoverGroup,
    shift: MonomialMatrix,
}

impl Serialize for MetaRep {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(3))?;
        m.serialize_entry("k", &self.k)?;
        m.serialize_entry("z", &self.z)?;
        m.serialize_entry("chi", &self.chi)?;
        m.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub irreducible: bool,
    pub in_pk_irr: bool,
    pub orbit_size: u32,
}

pub fn build_rep(k: u32, z: &UnitCirclePoint, chi: &Character, group: &CoverGroup) -> Result<MetaRep> {
    build_rep_phase(k, Phase::from_point(z), chi, group)
}

pub fn build_rep_phase(k: u32, z: Phase, chi: &Character, group: &CoverGroup) -> Result<MetaRep> {
    if k == 0 {
        return Err(Error::Invalid("representation dimension must be positive".into()));
    }
    if chi.values.len() != group.rank() || !chi.factors_through_level(group, k) {
        return Err(Error::CharacterLevel(k));
    }
    let shift = MonomialMatrix::shift(k as usize).scale(&z);
    Ok(MetaRep { k, z, chi: chi.clone(), group: group.clone(), shift })
}

impl MetaRep {
    pub fn group(&self) -> &CoverGroup {
        &self.group
    }

    fn t_pow(&self, h: &[u64], e: i64) -> Elem {
        if self.group.t.is_empty() {
            return h.to_vec();
        }
        let steps = e.rem_euclid(self.k as i64) as u32;
        self.group.apply_t_pow(h, steps)
    }

    /// `α(0, h) = diag(χ(h), χ(th), …, χ(t^{k−1}h))`.
    pub fn diag_part(&self, h: &[u64]) -> MonomialMatrix {
        let mut x = h.to_vec();
        let mut phases = Vec::with_capacity(self.k as usize);
        for _ in 0..self.k {
            phases.push(Phase::root(self.chi.turn(&x)));
            x = self.t_pow(&x, 1);
        }
        MonomialMatrix::diag(phases)
    }

    /// `α(1, 0) = z·S`.
    pub fn shift_part(&self) -> &MonomialMatrix {
        &self.shift
    }

    /// `α(n, h) = (zS)^n · α(0, h)`.
    pub fn eval(&self, n: i64, h: &[u64]) -> MonomialMatrix {
        self.shift.pow(n).mul(&self.diag_part(h))
    }

    /// Group law `(n,h)(m,g) = (n+m, t^m h + g)`.
    pub fn compose(&self, (n, h): (i64, &[u64]), (m, g): (i64, &[u64])) -> (i64, Elem) {
        (n + m, group::add(&self.t_pow(h, m), g, &self.group.factors))
    }

    /// Size of the orbit of `χ` under precomposition with `t`.
    pub fn orbit_size(&self) -> u32 {
        if self.group.t.is_empty() {
            return 1;
        }
        let mut c = self.chi.compose_t(&self.group);
        let mut size = 1;
        while c != self.chi {
            c = c.compose_t(&self.group);
            size += 1;
        }
        size
    }

    pub fn classify(&self) -> Classification {
        let orbit_size = self.orbit_size();
        let irreducible = orbit_size == self.k;
        let generic = !self.z.is_root_of_unity();
        let prime_power = self.chi.order == 1 || is_prime_power(self.chi.order);
        Classification { irreducible, in_pk_irr: irreducible && generic && prime_power, orbit_size }
    }
}

/// `α_(k1k2, z1z2, χ1χ2)` on the level-`k1k2` group, checked against
/// `α1 ⊗ α2` in the basis `f_i = e_{i mod k1} ⊗ e_{i mod k2}` on every
/// element of `target` (or the first `samples` of them).
pub fn tensor(r1: &MetaRep, r2: &MetaRep, target: &CoverGroup, samples: usize) -> Result<MetaRep> {
    if r1.k.gcd(&r2.k) != 1 {
        return Err(Error::TensorNotCoprime(r1.k, r2.k));
    }
    let k = r1.k * r2.k;
    if !target.k.is_multiple_of(k) && !target.t.is_empty() {
        return Err(Error::Invalid(format!("target group is level {}, need a multiple of {k}", target.k)));
    }
    let c1 = r1.chi.pull_back(&r1.group, target)?;
    let c2 = r2.chi.pull_back(&r2.group, target)?;
    let chi = c1.product(&c2, &target.factors)?;
    let rep = build_rep_phase(k, r1.z.mul(&r2.z), &chi, target)?;
    let (k1, k2) = (r1.k as usize, r2.k as usize);
    let f: Vec<usize> = (0..k as usize).map(|i| (i % k1) * k2 + i % k2).collect();
    let p = MonomialMatrix::permutation(&f);
    let p_inv = p.inverse();
    for (idx, h) in target.elements().take(samples.max(1)).enumerate() {
        let n = idx as i64 % (2 * k as i64 + 1) - k as i64;
        let h1 = target.transfer(&h, &r1.group)?;
        let h2 = target.transfer(&h, &r2.group)?;
        let prod = r1.eval(n, &h1).tensor(&r2.eval(n, &h2));
        if p_inv.mul(&prod).mul(&p) != rep.eval(n, &h) {
            return Err(Error::Invalid(format!("tensor product differs from α_(k1k2) at ({n}, {h:?})")));
        }
    }
    Ok(rep)
}

/// Takes `α(1,0)` in the shift-with-phases form (`z_i` below the diagonal
/// in column `i`, `z_k` in the corner) to `w·S` with `w^k = ∏ z_i`; returns
/// `w` and the diagonal conjugator `Q` with `Q⁻¹ α(1,0) Q = w·S`.
pub fn normalize_shift(zs: &[Phase]) -> (Phase, MonomialMatrix) {
    let k = zs.len() as i64;
    let prod = zs.iter().fold(Phase::one(), |a, z| a.mul(z));
    let w = prod.pow(Rational64::new(1, k));
    let mut d = vec![Phase::one()];
    for i in 0..zs.len() - 1 {
        let next = zs[i].mul(&d[i]).mul(&w.inv());
        d.push(next);
    }
    (w, MonomialMatrix::diag(d))
}

/// Shift matrix `e_i ↦ z_i e_{i+1}`.
pub fn shift_with_phases(zs: &[Phase]) -> MonomialMatrix {
    let k = zs.len();
    let mut m = MonomialMatrix::shift(k);
    for r in 0..k {
        m.phases[r] = zs[(r + k - 1) % k].clone();
    }
    m
}

/// `β_(z,χ^j): (n, v) ↦ z^n χ(v)^j`.
#[derive(Clone, Debug, Serialize)]
pub struct U1Rep {
    pub z: Phase,
    pub chi: Character,
    pub power: i64,
}

pub fn u1_pushdown(z: &UnitCirclePoint, chi: &Character, j: i64) -> U1Rep {
    U1Rep { z: Phase::from_point(z), chi: chi.clone(), power: j }
}

impl U1Rep {
    pub fn eval(&self, n: i64, v: &[u64]) -> Phase {
        self.z.powi(n).mul(&Phase::root(self.chi.turn(v) * self.power))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covers::cover_group;
    use crate::seifert::fixtures::*;


    fn check_hom(rep: &MetaRep, ns: std::ops::RangeInclusive<i64>) {
        let elems: Vec<Elem> = rep.group().elements().collect();
        for n in ns.clone() {
            for m in ns.clone() {
                for h in &elems {
                    for g in &elems {
                        let (nm, hg) = rep.compose((n, h), (m, g));
                        assert_eq!(rep.eval(nm, &hg), rep.eval(n, h).mul(&rep.eval(m, g)));
                    }
                }
            }
        }
    }

    #[test]
    fn order_five_weights() {
        // t = 2 has order 4 on Z/5, so χ∘t³ = χ fails; use the order-4 level
        let g = CoverGroup::synthetic(4, vec![5], vec![vec![2]]).unwrap();
        let chi = Character::new(&[5], 5, vec![1]).unwrap();
        assert!(build_rep(3, &UnitCirclePoint::transcendental(), &chi, &g).is_err());
        let rep = build_rep(4, &UnitCirclePoint::transcendental(), &chi, &g).unwrap();
        let d = rep.diag_part(&[1]);
        let turns: Vec<Rational64> = (0..4).map(|i| d.entry(i, i).unwrap().turn()).collect();
        assert_eq!(turns, vec![Rational64::new(1, 5), Rational64::new(2, 5), Rational64::new(4, 5), Rational64::new(3, 5)]);
        check_hom(&rep, -2..=2);
        let c = rep.classify();
        assert_eq!(c, Classification { irreducible: true, in_pk_irr: true, orbit_size: 4 });
    }

    #[test]
    fn orbit_of_size_three() {
        // t satisfies t² + t + 1 on (Z/5)²
        let g = CoverGroup::synthetic(3, vec![5, 5], vec![vec![0, 4], vec![1, 4]]).unwrap();
        let chi = Character::new(&[5, 5], 5, vec![1, 0]).unwrap();
        let rep = build_rep(3, &UnitCirclePoint::transcendental(), &chi, &g).unwrap();
        assert_eq!(rep.classify(), Classification { irreducible: true, in_pk_irr: true, orbit_size: 3 });
        check_hom(&rep, -1..=1);
    }

    #[test]
    fn trivial_character_is_reducible() {
        let g = cover_group(&figure_eight(), 2).unwrap();
        let chi = Character::trivial(&g.factors);
        let rep = build_rep(2, &UnitCirclePoint::transcendental(), &chi, &g).unwrap();
        assert_eq!(rep.eval(0, &[3]), MonomialMatrix::identity(2));
        assert_eq!(rep.shift_part().entry(1, 0), Some(&Phase::symbol(0)));
        assert!(!rep.classify().irreducible);
        let abelian = build_rep(1, &UnitCirclePoint::turn(1, 3), &chi, &g).unwrap();
        assert_eq!(abelian.eval(2, &[1]).entry(0, 0), Some(&Phase::root(Rational64::new(2, 3))));
    }

    #[test]
    fn conjugation_identity_and_det() {
        let g = cover_group(&figure_eight(), 3).unwrap();
        for chi in Character::all(&g.factors, 4).unwrap() {
            let rep = build_rep(3, &UnitCirclePoint::transcendental(), &chi, &g).unwrap();
            let a = rep.shift_part();
            for h in g.elements() {
                let th = g.apply_t(&h);
                assert_eq!(rep.diag_part(&th), a.inverse().mul(&rep.diag_part(&h)).mul(a));
            }
            assert_eq!(a.det(), Phase::symbol(0).powi(3));
        }
    }

    #[test]
    fn order_six_is_not_prime_power() {
        let g = CoverGroup::synthetic(2, vec![6], vec![vec![5]]).unwrap();
        let chi = Character::new(&[6], 6, vec![1]).unwrap();
        let rep = build_rep(2, &UnitCirclePoint::transcendental(), &chi, &g).unwrap();
        let c = rep.classify();
        assert!(c.irreducible && !c.in_pk_irr);
        let exact = build_rep(2, &UnitCirclePoint::turn(1, 7), &Character::new(&[6], 2, vec![1]).unwrap(), &g).unwrap();
        assert!(!exact.classify().in_pk_irr);
    }

    #[test]
    fn tensor_of_figure_eight_levels() {
        let a = figure_eight();
        let (g2, g3, g6) = (cover_group(&a, 2).unwrap(), cover_group(&a, 3).unwrap(), cover_group(&a, 6).unwrap());
        let chi1 = Character::new(&g2.factors, 5, vec![1]).unwrap();
        let chi2 = Character::all(&g3.factors, 2)
            .unwrap()
            .into_iter()
            .find(|c| !c.is_trivial())
            .unwrap();
        let r1 = build_rep_phase(2, Phase::symbol(1), &chi1, &g2).unwrap();
        let r2 = build_rep_phase(3, Phase::symbol(2), &chi2, &g3).unwrap();
        assert!(r1.classify().irreducible && r2.classify().irreducible);
        let t = tensor(&r1, &r2, &g6, 50).unwrap();
        assert_eq!(t.k, 6);
        assert!(t.classify().irreducible);
        assert!(matches!(tensor(&r1, &r1, &g6, 5), Err(Error::TensorNotCoprime(2, 2))));
    }

    #[test]
    fn normalizer() {
        let zs = vec![Phase::symbol(1), Phase::root(Rational64::new(1, 3)), Phase::symbol(2)];
        let (w, q) = normalize_shift(&zs);
        let a = shift_with_phases(&zs);
        assert_eq!(q.inverse().mul(&a).mul(&q), MonomialMatrix::shift(3).scale(&w));
        assert_eq!(w.powi(3), zs.iter().fold(Phase::one(), |x, z| x.mul(z)));
    }

    #[test]
    fn u1_values() {
        let chi = Character::new(&[5], 5, vec![1]).unwrap();
        let z = UnitCirclePoint::transcendental();
        assert_eq!(u1_pushdown(&z, &chi, 2).eval(0, &[1]), Phase::root(Rational64::new(2, 5)));
        assert_eq!(u1_pushdown(&z, &chi, 1).eval(1, &[0]), Phase::symbol(0));
        assert_eq!(u1_pushdown(&z, &chi, 0).eval(3, &[4]), Phase::symbol(0).powi(3));
    }
}
