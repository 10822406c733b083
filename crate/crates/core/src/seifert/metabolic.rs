//! Bounded search for metabolizing sublattices of the Seifert form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::Serialize;

use super::SeifertMatrix;
use crate::error::{Error, Result};
use crate::matrix::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessMode {
    /// Half-rank primitive sublattice on which `vᵗAw = 0`.
    Metabolic,
    /// Unimodular basis with both diagonal blocks of `PAPᵗ` zero.
    Doubly,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum MetabolicWitness {
    /// Rows span the metabolizer (metabolic mode) or form the full basis
    /// change `P` (doubly mode, first half spans the first metabolizer).
    Found { basis: Vec<Vec<i64>> },
    /// Nothing within the entry bound; not a proof of anything.
    NotFound { bound: i64, exhaustive: bool },
}

/// Searches vectors with entries in `[−bound, bound]` (all of them when
/// `n ≤ 8`, otherwise those with at most two nonzero entries).
pub fn metabolic_witness(a: &SeifertMatrix, bound: i64, mode: WitnessMode) -> Result<MetabolicWitness> {
    if bound <= 0 {
        return Err(Error::Invalid("search bound must be positive".into()));
    }
    let n = a.dim();
    let g = n / 2;
    if n == 0 {
        return Ok(MetabolicWitness::Found { basis: Vec::new() });
    }
    let exhaustive = n <= 8;
    let form = a.rows_i64();
    let pair = |v: &[i64], w: &[i64]| -> i64 {
        (0..n).map(|i| v[i] * (0..n).map(|j| form[i][j] * w[j]).sum::<i64>()).sum()
    };
    let candidates: Vec<Vec<i64>> = enumerate_vectors(n, bound, exhaustive)
        .into_iter()
        .filter(|v| pair(v, v) == 0)
        .collect();

    let mut search = Search { pair: &pair, cands: &candidates, g, budget: 2_000_000 };
    let found = match mode {
        WitnessMode::Metabolic => search.first_isotropic(&[], |_| true),
        WitnessMode::Doubly => {
            let mut result = None;
            let mut first_sets = Vec::new();
            search.all_isotropic(&[], &mut first_sets, 2000);
            for l1 in first_sets {
                let l2 = search.first_isotropic(&[], |l2| {
                    let full: Vec<Vec<i64>> = l1.iter().chain(l2).cloned().collect();
                    Matrix::from_rows(&full).det().abs().is_one()
                });
                if let Some(l2) = l2 {
                    result = Some(l1.into_iter().chain(l2).collect());
                    break;
                }
            }
            result
        }
    };
    Ok(match found {
        Some(basis) if mode == WitnessMode::Metabolic => MetabolicWitness::Found { basis: saturate(&basis) },
        Some(basis) => MetabolicWitness::Found { basis },
        None => MetabolicWitness::NotFound { bound, exhaustive },
    })
}

fn enumerate_vectors(n: usize, bound: i64, exhaustive: bool) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    if exhaustive {
        let width = (2 * bound + 1) as usize;
        let total = width.pow(n as u32);
        for code in 0..total {
            let mut v = vec![0i64; n];
            let mut c = code;
            for x in v.iter_mut() {
                *x = (c % width) as i64 - bound;
                c /= width;
            }
            out.push(v);
        }
    } else {
        for i in 0..n {
            for a in -bound..=bound {
                for j in i + 1..n {
                    for b in -bound..=bound {
                        let mut v = vec![0i64; n];
                        v[i] = a;
                        v[j] = b;
                        out.push(v);
                    }
                }
            }
        }
    }
    // primitive, first nonzero entry positive, small vectors first
    out.retain(|v| {
        let g = v.iter().fold(0i64, |g, x| g.gcd(x));
        g == 1 && v.iter().find(|x| **x != 0).is_some_and(|x| *x > 0)
    });
    out.sort_by_key(|v| {
        let norm: i64 = v.iter().map(|x| x.abs()).sum();
        let pos = v.iter().position(|x| *x != 0).unwrap();
        (norm, pos, v.iter().map(|x| -x).collect::<Vec<_>>())
    });
    out.dedup();
    out
}

struct Search<'a, F: Fn(&[i64], &[i64]) -> i64> {
    pair: &'a F,
    cands: &'a [Vec<i64>],
    g: usize,
    budget: usize,
}

impl<F: Fn(&[i64], &[i64]) -> i64> Search<'_, F> {
    fn compatible(&self, chosen: &[Vec<i64>], v: &[i64]) -> bool {
        chosen.iter().all(|w| (self.pair)(v, w) == 0 && (self.pair)(w, v) == 0)
            && Matrix::from_rows(&chosen.iter().cloned().chain([v.to_vec()]).collect::<Vec<_>>()).rank()
                == chosen.len() + 1
    }

    fn first_isotropic(&mut self, start: &[Vec<i64>], accept: impl Fn(&[Vec<i64>]) -> bool + Copy) -> Option<Vec<Vec<i64>>> {
        self.dfs(start.to_vec(), 0, accept)
    }

    fn dfs(&mut self, chosen: Vec<Vec<i64>>, from: usize, accept: impl Fn(&[Vec<i64>]) -> bool + Copy) -> Option<Vec<Vec<i64>>> {
        if chosen.len() == self.g {
            return accept(&chosen).then_some(chosen);
        }
        for i in from..self.cands.len() {
            if self.budget == 0 {
                return None;
            }
            self.budget -= 1;
            if self.compatible(&chosen, &self.cands[i]) {
                let mut next = chosen.clone();
                next.push(self.cands[i].clone());
                if let Some(r) = self.dfs(next, i + 1, accept) {
                    return Some(r);
                }
            }
        }
        None
    }

    fn all_isotropic(&mut self, chosen: &[Vec<i64>], out: &mut Vec<Vec<Vec<i64>>>, cap: usize) {
        self.collect(chosen.to_vec(), 0, out, cap);
    }

    fn collect(&mut self, chosen: Vec<Vec<i64>>, from: usize, out: &mut Vec<Vec<Vec<i64>>>, cap: usize) {
        if out.len() >= cap {
            return;
        }
        if chosen.len() == self.g {
            out.push(chosen);
            return;
        }
        for i in from..self.cands.len() {
            if self.budget == 0 || out.len() >= cap {
                return;
            }
            self.budget -= 1;
            if self.compatible(&chosen, &self.cands[i]) {
                let mut next = chosen.clone();
                next.push(self.cands[i].clone());
                self.collect(next, i + 1, out, cap);
            }
        }
    }
}

/// Basis of `(span ⊗ Q) ∩ Zⁿ`.
fn saturate(basis: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let m = Matrix::from_rows(basis);
    let s = m.smith();
    if s.diag.iter().all(|d| d.is_one()) {
        return basis.to_vec();
    }
    // rows of V⁻¹ (first r) span the saturation
    let vinv = s.v.inverse_unimodular().expect("unimodular");
    (0..basis.len())
        .map(|i| vinv.row(i).iter().map(|x| i64::try_from(x).expect("small")).collect())
        .collect()
}

#[allow(dead_code)]
fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| x.into()).collect()
}
