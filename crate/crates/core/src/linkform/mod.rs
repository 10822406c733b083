//! The `Q/Z` linking pairing on `H_1(L_k)`, metabolizers, and characters.

mod character;
mod metabolizer;

pub use character::{characters_vanishing, characters_vanishing_any, Character};
pub use metabolizer::{brute_force_metabolizers, metabolizers, metabolizers_bounded, ENUMERATION_BOUND};

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::covers::{cover_group, invert_automorphism, CoverGroup};
use crate::error::{Error, Result};
use crate::group::{self, Elem};
use crate::matrix::{invariant_factors_mod_det, Matrix};
use crate::seifert::SeifertMatrix;

#[derive(Clone, Debug, Serialize)]
pub struct LinkingForm {
    pub group: CoverGroup,
    #[serde(serialize_with = "ser_gram")]
    pub gram: Vec<Vec<Rational64>>,
    /// `gram · e` as integers modulo the exponent `e`.
    #[serde(skip)]
    scaled: Vec<Vec<u64>>,
    #[serde(skip)]
    exponent: u64,
}

fn ser_gram<S: serde::Serializer>(g: &[Vec<Rational64>], s: S) -> std::result::Result<S::Ok, S::Error> {
    let rows: Vec<Vec<String>> = g.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
    serde::Serialize::serialize(&rows, s)
}

/// Reduces into `[0, 1)`.
pub fn frac(x: Rational64) -> Rational64 {
    x - x.floor()
}

impl LinkingForm {
    /// Checks symmetry, well-definedness, non-singularity and t-isometry.
    pub fn new(group: CoverGroup, gram: Vec<Vec<Rational64>>) -> Result<Self> {
        let r = group.rank();
        let bad = |why: &str| Err(Error::OrderInconsistency(format!("linking form: {why}")));
        if gram.len() != r || gram.iter().any(|row| row.len() != r) {
            return bad("Gram matrix has wrong shape");
        }
        let gram: Vec<Vec<Rational64>> = gram.into_iter().map(|row| row.into_iter().map(frac).collect()).collect();
        let exponent = group.factors.last().copied().unwrap_or(1);
        let mut scaled = vec![vec![0u64; r]; r];
        for i in 0..r {
            for j in 0..r {
                if gram[i][j] != gram[j][i] {
                    return bad("not symmetric");
                }
                let di = group.factors[i] as i64;
                if !(gram[i][j] * di).is_integer() {
                    return bad("not well defined on the generator orders");
                }
                scaled[i][j] = (gram[i][j] * exponent as i64).to_integer() as u64;
            }
        }
        let form = LinkingForm { group, gram, scaled, exponent };
        // adjoint map x ↦ (d_j λ(x, e_j))_j must be invertible
        let f = &form.group.factors;
        let adj: Vec<Vec<i64>> = (0..r)
            .map(|j| (0..r).map(|i| (form.gram[i][j] * f[j] as i64).to_integer()).collect())
            .collect();
        if invert_automorphism(&adj, f).is_none() {
            return bad("singular");
        }
        if !form.group.t.is_empty() {
            for i in 0..r {
                for j in 0..r {
                    let ei = form.unit(i);
                    let ej = form.unit(j);
                    let (ti, tj) = (form.group.apply_t(&ei), form.group.apply_t(&ej));
                    if form.pair_scaled(&ti, &tj) != form.pair_scaled(&ei, &ej) {
                        return bad("t is not an isometry");
                    }
                }
            }
        }
        Ok(form)
    }

    pub fn factors(&self) -> &[u64] {
        &self.group.factors
    }

    pub fn order(&self) -> u128 {
        group::order(&self.group.factors)
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    fn unit(&self, i: usize) -> Elem {
        let mut e = group::zero(self.factors());
        e[i] = 1;
        e
    }

    /// `e · λ(x, y)` modulo the exponent `e`.
    pub fn pair_scaled(&self, x: &[u64], y: &[u64]) -> u64 {
        let e = self.exponent as u128;
        let mut acc = 0u128;
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            let row: u128 = self.scaled[i]
                .iter()
                .zip(y)
                .map(|(&w, &yj)| w as u128 * yj as u128 % e)
                .sum();
            acc = (acc + xi as u128 * (row % e)) % e;
        }
        acc as u64
    }

    pub fn pair(&self, x: &[u64], y: &[u64]) -> Rational64 {
        Rational64::new(self.pair_scaled(x, y) as i64, self.exponent as i64)
    }

    pub fn is_isotropic(&self, gens: &[Elem]) -> bool {
        gens.iter()
            .enumerate()
            .all(|(i, x)| gens[i..].iter().all(|y| self.pair_scaled(x, y) == 0))
    }

    pub fn is_t_invariant(&self, gens: &[Elem]) -> bool {
        let f = self.factors();
        let span = group::span_order(f, gens);
        gens.iter().all(|g| {
            let mut extended = gens.to_vec();
            extended.push(self.group.apply_t(g));
            group::span_order(f, &extended) == span
        })
    }

    /// `P^⊥` by enumeration; only for small groups.
    pub fn orthogonal_elements(&self, gens: &[Elem]) -> Vec<Elem> {
        self.group
            .elements()
            .filter(|y| gens.iter().all(|g| self.pair_scaled(g, y) == 0))
            .collect()
    }

    /// Whether `P = ⟨gens⟩` is a t-invariant subgroup with `P = P^⊥`.
    pub fn is_metabolizer(&self, gens: &[Elem]) -> bool {
        let ord = group::span_order(self.factors(), gens);
        ord * ord == self.order() && self.is_isotropic(gens) && self.is_t_invariant(gens)
    }
}

/// A t-invariant subgroup with `P = P^⊥`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Metabolizer {
    pub generators: Vec<Elem>,
    pub order: u64,
}

impl Metabolizer {
    pub fn trivial() -> Self {
        Metabolizer { generators: Vec::new(), order: 1 }
    }

    /// Validates `gens` against the form.
    pub fn new(form: &LinkingForm, gens: Vec<Elem>) -> Result<Self> {
        if !form.is_metabolizer(&gens) {
            return Err(Error::NotAMetabolizer(form.group.k));
        }
        let order = group::span_order(form.factors(), &gens) as u64;
        Ok(Metabolizer { generators: gens, order })
    }

    /// `π_k` of a Λ-submodule given by dual-basis coordinate vectors.
    pub fn from_lambda_generators(form: &LinkingForm, coords: &[Vec<i64>]) -> Result<Self> {
        let g = &form.group;
        let mut gens = Vec::new();
        for c in coords {
            let mut x = g.project(c);
            for _ in 0..g.k.max(1) {
                if !group::is_zero(&x) && !gens.contains(&x) {
                    gens.push(x.clone());
                }
                x = g.apply_t(&x);
            }
        }
        Self::new(form, gens)
    }

    pub fn elements(&self, factors: &[u64]) -> Vec<Elem> {
        group::span_elements(factors, &self.generators)
    }
}

/// Block tridiagonal presentation `E_k` of `H_1(L_k)` with its linking form.
pub fn linking_matrix(a: &SeifertMatrix, k: u32) -> Matrix {
    let n = a.dim();
    let m = (k.saturating_sub(1)) as usize;
    let at = a.matrix().transpose();
    let diag = a.matrix() + &at;
    let (up, down) = (-a.matrix(), -&at);
    let mut e = Matrix::zeros(m * n, m * n);
    for j in 0..m {
        e.set_block(j * n, j * n, &diag);
        if j + 1 < m {
            e.set_block(j * n, (j + 1) * n, &up);
            e.set_block((j + 1) * n, j * n, &down);
        }
    }
    e
}

pub fn linking_form(a: &SeifertMatrix, k: u32) -> Result<LinkingForm> {
    let group = cover_group(a, k)?;
    if !group.is_finite() {
        return Err(Error::InfiniteCover(k));
    }
    let r = group.rank();
    if r == 0 {
        return LinkingForm::new(group, Vec::new());
    }
    let n = a.dim();
    let e = linking_matrix(a, k);
    let size = e.rows();
    let det = e.det();
    let mut from_e: Vec<BigInt> = invariant_factors_mod_det(&e, &det)
        .into_iter()
        .filter(|d| !d.is_zero() && *d != BigInt::from(1))
        .collect();
    from_e.sort();
    let from_phi: Vec<BigInt> = group.factors.iter().map(|&d| BigInt::from(d)).collect();
    if from_e != from_phi {
        return Err(Error::OrderInconsistency(format!(
            "linking presentation gives {from_e:?}, cover presentation gives {from_phi:?}"
        )));
    }
    let rhs = Matrix::from_fn(size, n, |i, j| BigInt::from((i == size - n + j) as i64));
    let x = e.solve_rational(&rhs).expect("E_k is nonsingular for finite covers");
    let block = |i: usize, j: usize| x[(size - n + i, j)].clone();
    let mut gram = vec![vec![Rational64::zero(); r]; r];
    for i in 0..r {
        for j in 0..r {
            let (li, lj) = (group.lift(i), group.lift(j));
            let mut acc = BigRational::zero();
            for p in 0..n {
                if li[p].is_zero() {
                    continue;
                }
                for q in 0..n {
                    if !lj[q].is_zero() {
                        acc += block(p, q) * BigRational::from_integer(&li[p] * &lj[q]);
                    }
                }
            }
            let reduced = &acc - acc.floor();
            let num = reduced.numer().to_i64().expect("small numerator");
            let den = reduced.denom().to_i64().expect("small denominator");
            gram[i][j] = Rational64::new(num, den);
        }
    }
    LinkingForm::new(group, gram)
}

/// Ordered pairs of metabolizers that intersect trivially and span.
pub fn complementary_pairs(form: &LinkingForm) -> Result<Vec<(Metabolizer, Metabolizer)>> {
    let ms = metabolizers(form)?;
    let f = form.factors();
    let mut out = Vec::new();
    for a in &ms {
        for b in &ms {
            let mut gens = a.generators.clone();
            gens.extend(b.generators.iter().cloned());
            if group::span_order(f, &gens) == form.order() {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    Ok(out)
}
