use std::collections::{BTreeSet, HashSet};

use super::{LinkingForm, Metabolizer};
use crate::arith::factorize;
use crate::error::{Error, Result};
use crate::group::{self, Elem};

/// Default cap on the order of each primary component searched.
pub const ENUMERATION_BOUND: u128 = 10_000;

/// The `p`-primary part of the group in its own coordinates.
struct Component<'a> {
    form: &'a LinkingForm,
    factors: Vec<u64>,
    coords: Vec<usize>,
    scale: Vec<u64>,
    /// `e·λ` on component generators, `e` the exponent of the whole group.
    w: Vec<Vec<u64>>,
    t: Vec<Vec<i64>>,
}

impl<'a> Component<'a> {
    fn new(form: &'a LinkingForm, p: u64) -> Self {
        let mut factors = Vec::new();
        let mut coords = Vec::new();
        let mut scale = Vec::new();
        for (i, &d) in form.factors().iter().enumerate() {
            let mut q = 1;
            while d % (q * p) == 0 {
                q *= p;
            }
            if q > 1 {
                factors.push(q);
                coords.push(i);
                scale.push(d / q);
            }
        }
        let mut c = Component { form, factors, coords, scale, w: Vec::new(), t: Vec::new() };
        let r = c.factors.len();
        let units: Vec<Elem> = (0..r).map(|j| c.embed(&c.unit(j))).collect();
        c.w = (0..r)
            .map(|i| (0..r).map(|j| form.pair_scaled(&units[i], &units[j])).collect())
            .collect();
        let images: Vec<Elem> = units
            .iter()
            .map(|u| c.restrict(&form.group.apply_t(u)))
            .collect();
        c.t = if form.group.t.is_empty() {
            group::identity(r)
        } else {
            (0..r).map(|i| (0..r).map(|j| images[j][i] as i64).collect()).collect()
        };
        c
    }

    fn unit(&self, j: usize) -> Elem {
        let mut e = group::zero(&self.factors);
        e[j] = 1;
        e
    }

    fn embed(&self, y: &[u64]) -> Elem {
        let f = self.form.factors();
        let mut x = group::zero(f);
        for (i, &c) in self.coords.iter().enumerate() {
            x[c] = (y[i] * self.scale[i]) % f[c];
        }
        x
    }

    fn restrict(&self, x: &[u64]) -> Elem {
        self.coords
            .iter()
            .enumerate()
            .map(|(i, &c)| (x[c] / self.scale[i]) % self.factors[i])
            .collect()
    }

    fn order(&self) -> u128 {
        group::order(&self.factors)
    }

    fn pair(&self, x: &[u64], y: &[u64]) -> u64 {
        let e = self.form.exponent() as u128;
        let mut acc = 0u128;
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                acc = (acc + xi as u128 * yj as u128 % e * self.w[i][j] as u128) % e;
            }
        }
        acc as u64
    }

    fn apply_t(&self, x: &[u64]) -> Elem {
        group::apply(&self.t, x, &self.factors)
    }

    fn orbit(&self, x: &[u64]) -> Vec<Elem> {
        let mut out = vec![x.to_vec()];
        loop {
            let y = self.apply_t(out.last().unwrap());
            if y == out[0] || out.contains(&y) {
                return out;
            }
            out.push(y);
        }
    }

    /// Metabolizers as element-index sets with generators.
    fn enumerate(&self) -> Vec<(Vec<usize>, Vec<Elem>)> {
        let size = self.order() as usize;
        let target = (size as f64).sqrt().round() as usize;
        if target * target != size {
            return Vec::new();
        }
        let f = &self.factors;
        let elems: Vec<Elem> = group::elements(f).collect();
        let orbits: Vec<Vec<Elem>> = elems.iter().map(|x| self.orbit(x)).collect();
        let self_iso: Vec<bool> = (0..size)
            .map(|i| orbits[i].iter().all(|y| self.pair(&elems[i], y) == 0))
            .collect();

        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut stack: Vec<(Vec<bool>, Vec<Elem>)> = vec![({
            let mut m = vec![false; size];
            m[0] = true;
            m
        }, Vec::new())];
        let mut found = Vec::new();
        while let Some((members, gens)) = stack.pop() {
            let count = members.iter().filter(|&&b| b).count();
            if count == target {
                let set: Vec<usize> = (0..size).filter(|&i| members[i]).collect();
                found.push((set, gens));
                continue;
            }
            for x in 0..size {
                if members[x] || !self_iso[x] {
                    continue;
                }
                if gens.iter().any(|g| self.pair(&elems[x], g) != 0) {
                    continue;
                }
                let mut next = members.clone();
                let mut next_gens = gens.clone();
                for g in &orbits[x] {
                    if !next[group::index(g, f)] {
                        self.extend(&mut next, g, &elems);
                        next_gens.push(g.clone());
                    }
                }
                let key: Vec<usize> = (0..size).filter(|&i| next[i]).collect();
                if key.len() > target {
                    continue;
                }
                if seen.insert(key) {
                    stack.push((next, next_gens));
                }
            }
        }
        found.sort();
        found
    }

    /// `members += ⟨g⟩`.
    fn extend(&self, members: &mut [bool], g: &[u64], elems: &[Elem]) {
        let f = &self.factors;
        let base: Vec<usize> = (0..members.len()).filter(|&i| members[i]).collect();
        let mut m = g.to_vec();
        while !members[group::index(&m, f)] {
            for &b in &base {
                let s = group::add(&elems[b], &m, f);
                members[group::index(&s, f)] = true;
            }
            m = group::add(&m, g, f);
        }
    }
}

fn primes_of(form: &LinkingForm) -> Vec<u64> {
    let mut ps: BTreeSet<u64> = BTreeSet::new();
    for &d in form.factors() {
        ps.extend(factorize(d).into_iter().map(|(p, _)| p));
    }
    ps.into_iter().collect()
}

pub fn metabolizers(form: &LinkingForm) -> Result<Vec<Metabolizer>> {
    metabolizers_bounded(form, ENUMERATION_BOUND)
}

/// All t-invariant metabolizers, searched one primary component at a time.
pub fn metabolizers_bounded(form: &LinkingForm, bound: u128) -> Result<Vec<Metabolizer>> {
    let comps: Vec<Component> = primes_of(form).into_iter().map(|p| Component::new(form, p)).collect();
    for c in &comps {
        if c.order() > bound {
            return Err(Error::EnumerationBound(format!(
                "primary component of order {} exceeds {bound}",
                c.order()
            )));
        }
    }
    let mut acc = vec![Metabolizer::trivial()];
    for c in &comps {
        let local = c.enumerate();
        let mut next = Vec::with_capacity(acc.len() * local.len());
        for m in &acc {
            for (set, gens) in &local {
                let mut generators = m.generators.clone();
                generators.extend(gens.iter().map(|g| c.embed(g)));
                next.push(Metabolizer { generators, order: m.order * set.len() as u64 });
            }
        }
        acc = next;
    }
    Ok(acc)
}

/// Every subgroup checked directly for t-invariance and `P = P^⊥`; element
/// index sets, sorted. For testing on small groups.
pub fn brute_force_metabolizers(form: &LinkingForm) -> Vec<Vec<usize>> {
    let f = form.factors();
    let elems: Vec<Elem> = group::elements(f).collect();
    let cyclic: BTreeSet<Vec<usize>> = elems.iter().map(|x| index_set(f, std::slice::from_ref(x))).collect();
    let mut all: BTreeSet<Vec<usize>> = cyclic.clone();
    let mut frontier: Vec<Vec<usize>> = all.iter().cloned().collect();
    while let Some(s) = frontier.pop() {
        for c in &cyclic {
            let gens: Vec<Elem> = s.iter().chain(c).map(|&i| elems[i].clone()).collect();
            let j = index_set(f, &gens);
            if all.insert(j.clone()) {
                frontier.push(j);
            }
        }
    }
    all.into_iter()
        .filter(|s| {
            let members: HashSet<usize> = s.iter().copied().collect();
            let invariant = s
                .iter()
                .all(|&i| members.contains(&group::index(&form.group.apply_t(&elems[i]), f)));
            let perp: Vec<usize> = (0..elems.len())
                .filter(|&y| s.iter().all(|&x| form.pair_scaled(&elems[x], &elems[y]) == 0))
                .collect();
            (form.group.t.is_empty() || invariant) && perp == *s
        })
        .collect()
}

fn index_set(f: &[u64], gens: &[Elem]) -> Vec<usize> {
    let mut v: Vec<usize> = group::span_elements(f, gens).iter().map(|e| group::index(e, f)).collect();
    v.sort();
    v
}
