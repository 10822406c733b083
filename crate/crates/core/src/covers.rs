//! Homology of finite cyclic branched covers from Gilmer's presentation
//! `Γ = (Aᵗ − A)⁻¹Aᵗ`, `φ_k = Γ^k − (Γ − 1)^k`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{is_prime_power, prime_power_base};
use crate::error::{Error, Result};
use crate::group::{self, Elem};
use crate::matrix::Matrix;
use crate::polyring::{cyclotomic_index, factor_over_integers, resultant, t_k_minus_one, LaurentPoly};
use crate::seifert::SeifertMatrix;
use crate::serde_util;

/// `(Γ, φ_k)`.
pub fn gamma_phi(a: &SeifertMatrix, k: u32) -> Result<(Matrix, Matrix)> {
    if k == 0 {
        return Err(Error::Invalid("cover degree k must be positive".into()));
    }
    let m = a.matrix();
    let at = m.transpose();
    let inv = (&at - m).inverse_unimodular().expect("Aᵗ − A is unimodular");
    let gamma = &inv * &at;
    let id = Matrix::identity(a.dim());
    let phi = &gamma.pow(k) - &(&gamma - &id).pow(k);
    Ok((gamma, phi))
}

/// `H_1(L_k)` as `⊕ Z/d_i` with its deck transformation `t`.
///
/// The group is `Zⁿ / φ_kᵗ Zⁿ`; coordinate vectors in `Zⁿ` (coefficients of
/// the dual basis lifts) project to invariant-factor coordinates. The deck
/// transformation acts as `Γᵗ(Γᵗ − 1)⁻¹`.
#[derive(Clone, Debug, Serialize)]
pub struct CoverGroup {
    pub k: u32,
    pub factors: Vec<u64>,
    /// Number of infinite cyclic summands; nonzero means the cover has
    /// infinite homology.
    #[serde(skip_serializing_if = "is_zero_usize")]
    pub free_rank: usize,
    pub t: Vec<Vec<i64>>,
    #[serde(skip)]
    project: Vec<Vec<i64>>,
    #[serde(skip)]
    lifts: Vec<Vec<BigInt>>,
    #[serde(skip)]
    n: usize,
}

fn is_zero_usize(x: &usize) -> bool {
    *x == 0
}

impl CoverGroup {
    /// A group given directly by invariant factors and a deck action, with
    /// no Seifert presentation behind it.
    pub fn synthetic(k: u32, factors: Vec<u64>, t: Vec<Vec<i64>>) -> Result<Self> {
        if t.len() != factors.len() || !group::is_endomorphism(&t, &factors) {
            return Err(Error::Invalid("t is not an endomorphism of the group".into()));
        }
        Ok(CoverGroup { k, factors, free_rank: 0, t, project: Vec::new(), lifts: Vec::new(), n: 0 })
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.is_finite() && self.factors.is_empty()
    }

    /// `None` for infinite groups.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite()
            .then(|| self.factors.iter().map(|&d| BigInt::from(d)).product())
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order()?.to_u64()
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Dimension `n` of the Seifert form the group was presented from.
    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    /// Image of `Σ x_j α̃_j` (dual-basis coordinates).
    pub fn project(&self, x: &[i64]) -> Elem {
        assert_eq!(x.len(), self.n, "coordinate vector has wrong length");
        self.project
            .iter()
            .zip(&self.factors)
            .map(|(row, &d)| {
                let s: i128 = row.iter().zip(x).map(|(a, b)| *a as i128 * *b as i128).sum();
                s.rem_euclid(d as i128) as u64
            })
            .collect()
    }

    /// Image of the `j`-th dual basis element.
    pub fn dual_generator(&self, j: usize) -> Elem {
        let mut e = vec![0i64; self.n];
        e[j] = 1;
        self.project(&e)
    }

    /// An integer lift in `Zⁿ` of the `i`-th invariant-factor generator.
    pub fn lift(&self, i: usize) -> &[BigInt] {
        &self.lifts[i]
    }

    pub fn apply_t(&self, x: &[u64]) -> Elem {
        group::apply(&self.t, x, &self.factors)
    }

    pub fn apply_t_pow(&self, x: &[u64], e: u32) -> Elem {
        (0..e).fold(x.to_vec(), |acc, _| self.apply_t(&acc))
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        group::elements(&self.factors)
    }

    /// Image of `x` under the natural quotient onto a lower level `to`
    /// (same Seifert form, `to.k` dividing `self.k`).
    pub fn transfer(&self, x: &[u64], to: &CoverGroup) -> Result<Elem> {
        if to.n != self.n || to.k == 0 || !self.k.is_multiple_of(to.k) {
            return Err(Error::Invalid(format!("no natural map from level {} to level {}", self.k, to.k)));
        }
        let m = BigInt::from(big_modulus(to));
        let mut acc = vec![BigInt::zero(); self.n];
        for (i, &c) in x.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (a, l) in acc.iter_mut().zip(&self.lifts[i]) {
                *a = (&*a + l * BigInt::from(c)).mod_floor(&m);
            }
        }
        let v: Vec<i64> = acc.iter().map(|a| a.to_i64().unwrap()).collect();
        Ok(to.project(&v))
    }

    pub fn reduce(&self, x: &[i64]) -> Elem {
        group::reduce(x, &self.factors)
    }
}

/// Computes `H_1(L_k)`, cross-checking the order against
/// `|resultant(Δ, t^k − 1)|`.
pub fn cover_group(a: &SeifertMatrix, k: u32) -> Result<CoverGroup> {
    let n = a.dim();
    let (gamma, phi) = gamma_phi(a, k)?;
    let det = phi.det();
    let res = resultant(&a.alexander(), &t_k_minus_one(k))?;
    if det.abs() != res.abs() {
        return Err(Error::OrderInconsistency(format!(
            "|det φ_{k}| = {} but |resultant(Δ, t^{k} − 1)| = {}",
            det.abs(),
            res.abs()
        )));
    }
    let pres = phi.transpose();
    let s = pres.smith();
    let keep: Vec<usize> = (0..n).filter(|&i| !s.diag[i].is_one()).collect();
    let free_rank = keep.iter().filter(|&&i| s.diag[i].is_zero()).count();
    let mut factors = Vec::new();
    for &i in &keep {
        if s.diag[i].is_zero() {
            continue;
        }
        factors.push(s.diag[i].to_u64().filter(|&d| d < 1 << 62).ok_or_else(|| {
            Error::EnumerationBound(format!("invariant factor {} exceeds 64-bit arithmetic", s.diag[i]))
        })?);
    }
    let finite_idx: Vec<usize> = keep.iter().copied().filter(|&i| !s.diag[i].is_zero()).collect();
    let project: Vec<Vec<i64>> = finite_idx
        .iter()
        .zip(&factors)
        .map(|(&i, &d)| {
            let d = BigInt::from(d);
            s.u.row(i).iter().map(|x| x.mod_floor(&d).to_i64().unwrap()).collect()
        })
        .collect();
    let lifts: Vec<Vec<BigInt>> = finite_idx.iter().map(|&i| s.u_inv.column(i)).collect();
    let mut g = CoverGroup { k, factors, free_rank, t: Vec::new(), project, lifts, n };
    if g.is_finite() && !g.factors.is_empty() {
        g.t = deck_action(&g, &gamma)?;
    }
    Ok(g)
}

/// Matrix of the endomorphism induced by `m` (acting on `Zⁿ`) in
/// invariant-factor coordinates.
fn induced(g: &CoverGroup, m: &Matrix) -> Vec<Vec<i64>> {
    let cols: Vec<Elem> = g
        .lifts
        .iter()
        .map(|l| {
            let img = m.mul_vec(l);
            let x: Vec<i64> = img
                .iter()
                .map(|v| v.mod_floor(&BigInt::from(big_modulus(g))).to_i64().unwrap())
                .collect();
            g.project(&x)
        })
        .collect();
    let r = g.rank();
    (0..r).map(|i| (0..r).map(|j| cols[j][i] as i64).collect()).collect()
}

/// A common multiple of all factors, used to shrink lifts before projecting.
fn big_modulus(g: &CoverGroup) -> u64 {
    g.factors.iter().copied().max().unwrap_or(1)
}

fn deck_action(g: &CoverGroup, gamma: &Matrix) -> Result<Vec<Vec<i64>>> {
    let gt = gamma.transpose();
    let id = Matrix::identity(g.n);
    let a = induced(g, &gt);
    let b = induced(g, &(&gt - &id));
    let b_inv = invert_automorphism(&b, &g.factors).ok_or_else(|| {
        Error::OrderInconsistency("Γᵗ − 1 is not invertible on the cover group".into())
    })?;
    let t = group::compose(&a, &b_inv, &g.factors);
    let check = (0..g.k).fold(group::identity(g.rank()), |acc, _| group::compose(&t, &acc, &g.factors));
    let id_r = group::identity(g.rank());
    let same = (0..g.rank()).all(|j| {
        let col: Vec<i64> = check.iter().map(|row| row[j]).collect();
        let e: Vec<i64> = id_r.iter().map(|row| row[j]).collect();
        group::reduce(&col, &g.factors) == group::reduce(&e, &g.factors)
    });
    if !same {
        return Err(Error::OrderInconsistency(format!("deck transformation has t^{} ≠ 1", g.k)));
    }
    Ok(t)
}

/// Inverse of an automorphism of `⊕ Z/d_i`, by solving `M y ≡ e_j`.
pub(crate) fn invert_automorphism(m: &[Vec<i64>], factors: &[u64]) -> Option<Vec<Vec<i64>>> {
    let r = factors.len();
    // [M | diag(d)] z = e_j over Z
    let sys = Matrix::from_fn(r, 2 * r, |i, j| {
        if j < r {
            BigInt::from(m[i][j])
        } else if j - r == i {
            BigInt::from(factors[i])
        } else {
            BigInt::zero()
        }
    });
    let s = sys.smith();
    let mut cols = Vec::with_capacity(r);
    for j in 0..r {
        let mut e = vec![BigInt::zero(); r];
        e[j] = BigInt::one();
        let ub = s.u.mul_vec(&e);
        let mut w = vec![BigInt::zero(); 2 * r];
        for i in 0..r {
            let d = &s.diag[i];
            if d.is_zero() {
                if !ub[i].is_zero() {
                    return None;
                }
            } else {
                let (q, rem) = ub[i].div_rem(d);
                if !rem.is_zero() {
                    return None;
                }
                w[i] = q;
            }
        }
        let z = s.v.mul_vec(&w);
        let y: Vec<i64> = (0..r)
            .map(|i| z[i].mod_floor(&BigInt::from(factors[i])).to_i64().unwrap())
            .collect();
        cols.push(y);
    }
    let inv: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| cols[j][i]).collect()).collect();
    // must be a two-sided inverse
    let prod = group::compose(m, &inv, factors);
    let ok = (0..r).all(|j| {
        let col: Vec<i64> = prod.iter().map(|row| row[j]).collect();
        let mut e = vec![0i64; r];
        e[j] = 1;
        group::reduce(&col, factors) == group::reduce(&e, factors)
    });
    ok.then_some(inv)
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanEntry {
    pub k: u32,
    /// `None` when the cover has infinite homology.
    #[serde(serialize_with = "ser_opt_big")]
    pub order: Option<BigInt>,
    pub trivial: bool,
}

fn ser_opt_big<S: serde::Serializer>(x: &Option<BigInt>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => serde_util::big_int::serialize(v, s),
        None => s.serialize_str("infinite"),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimePowerScan {
    pub entries: Vec<ScanEntry>,
    /// An irreducible factor of `Δ` that is not `Φ_n` with `n` divisible by
    /// three distinct primes, if one exists.
    pub nontrivial_factor: Option<LaurentPoly>,
}

/// Orders of `Λ/(Δ, t^k − 1)` for prime powers `k ≤ k_max`, and the
/// three-primes cyclotomic criterion.
pub fn prime_power_scan(delta: &LaurentPoly, k_max: u32) -> Result<PrimePowerScan> {
    let mut entries = Vec::new();
    for k in 2..=k_max {
        if !is_prime_power(k as u64) {
            continue;
        }
        let r = resultant(delta, &t_k_minus_one(k))?.abs();
        let order = (!r.is_zero()).then_some(r);
        let trivial = order.as_ref().is_some_and(|o| o.is_one());
        entries.push(ScanEntry { k, order, trivial });
    }
    let nontrivial_factor = factor_over_integers(delta)?.into_iter().find(|g| {
        g.span() > 0
            && match cyclotomic_index(g) {
                Some(n) => crate::arith::factorize(n).len() < 3,
                None => true,
            }
    });
    Ok(PrimePowerScan { entries, nontrivial_factor })
}

/// `B^k`: the kernel of `φ_k` acting on `(Q/Z)ⁿ`.
#[derive(Clone, Debug, Serialize)]
pub struct GilmerKernel {
    pub factors: Vec<u64>,
    /// Generators as rational vectors modulo `Zⁿ`.
    #[serde(serialize_with = "ser_rat_vecs")]
    pub generators: Vec<Vec<BigRational>>,
}

fn ser_rat_vecs<S: serde::Serializer>(v: &[Vec<BigRational>], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for g in v {
        seq.serialize_element(&g.iter().map(|x| x.to_string()).collect::<Vec<_>>())?;
    }
    seq.end()
}

pub fn gilmer_kernel(a: &SeifertMatrix, k: u32) -> Result<GilmerKernel> {
    let (_, phi) = gamma_phi(a, k)?;
    if phi.det().is_zero() {
        return Err(Error::InfiniteCover(k));
    }
    let s = phi.smith();
    let mut factors = Vec::new();
    let mut generators = Vec::new();
    for (i, d) in s.diag.iter().enumerate() {
        if d.is_one() {
            continue;
        }
        factors.push(d.to_u64().ok_or_else(|| Error::EnumerationBound(format!("factor {d}")))?);
        generators.push(
            s.v.column(i)
                .into_iter()
                .map(|x| {
                    let q = BigRational::new(x, d.clone());
                    &q - q.floor()
                })
                .collect(),
        );
    }
    Ok(GilmerKernel { factors, generators })
}

/// Primes dividing the order of a finite group, ascending.
pub fn order_primes(g: &CoverGroup) -> Vec<u64> {
    let mut ps: Vec<u64> = g
        .factors
        .iter()
        .flat_map(|&d| crate::arith::factorize(d).into_iter().map(|(p, _)| p))
        .collect();
    ps.sort();
    ps.dedup();
    ps
}

/// Largest prime power `p^e ≤ bound` dividing the exponent of the group.
pub fn max_prime_power(g: &CoverGroup, p: u64, bound: u64) -> Option<u64> {
    let exp = g.factors.last().copied()?;
    let mut q = 1u64;
    while exp % (q * p) == 0 && q * p <= bound {
        q *= p;
    }
    (q > 1 && prime_power_base(q) == Some(p)).then_some(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seifert::fixtures::*;

    fn rows(m: &Matrix) -> Vec<Vec<i64>> {
        m.to_i64_rows().unwrap()
    }

    #[test]
    fn trefoil_gamma_phi() {
        let (g, p2) = gamma_phi(&b2(), 2).unwrap();
        assert_eq!(rows(&g), vec![vec![1, 1], vec![-1, 0]]);
        assert_eq!(rows(&p2), vec![vec![1, 2], vec![-2, -1]]);
        let (_, p1) = gamma_phi(&b1(), 1).unwrap();
        assert_eq!(p1, Matrix::identity(4));
    }

    #[test]
    fn trefoil_covers() {
        let g = cover_group(&b2(), 2).unwrap();
        assert_eq!(g.factors, vec![3]);
        assert_eq!(g.t, vec![vec![2]]);
        let g6 = cover_group(&b2(), 6).unwrap();
        assert!(!g6.is_finite());
        assert_eq!(g6.order(), None);
        assert!(cover_group(&b2(), 1).unwrap().is_trivial());
    }

    #[test]
    fn t_commutes_with_presentation() {
        for a in [b1(), b2(), b3(), figure_eight()] {
            for k in 2..6 {
                let (gamma, phi) = gamma_phi(&a, k).unwrap();
                assert_eq!(&gamma * &phi, &phi * &gamma);
                let g = cover_group(&a, k).unwrap();
                if !g.is_finite() {
                    continue;
                }
                assert!(group::is_endomorphism(&g.t, &g.factors));
                for e in g.elements().take(200) {
                    assert_eq!(g.apply_t_pow(&e, k), e);
                }
            }
        }
    }

    #[test]
    fn levels_are_natural() {
        for a in [b1(), figure_eight(), b3()] {
            for (hi, lo) in [(6, 2), (6, 3), (4, 2)] {
                let (gh, gl) = (cover_group(&a, hi).unwrap(), cover_group(&a, lo).unwrap());
                if !gh.is_finite() || !gl.is_finite() {
                    continue;
                }
                let (_, phi) = gamma_phi(&a, hi).unwrap();
                // relations of the higher level die in the lower one
                for j in 0..a.dim() {
                    let big: Vec<BigInt> = (0..a.dim()).map(|i| phi[(j, i)].clone()).collect();
                    let m = BigInt::from(big_modulus(&gl).max(1));
                    let v: Vec<i64> = big.iter().map(|x| x.mod_floor(&m).to_i64().unwrap()).collect();
                    assert!(group::is_zero(&gl.project(&v)));
                }
                for e in gh.elements().take(300) {
                    let down = gh.transfer(&e, &gl).unwrap();
                    assert_eq!(gh.transfer(&gh.apply_t(&e), &gl).unwrap(), gl.apply_t(&down));
                }
            }
        }
    }

    #[test]
    fn direct_sum_orders_multiply() {
        let s = b2().direct_sum(&figure_eight());
        for k in [2, 3, 5] {
            let a = cover_group(&b2(), k).unwrap().order().unwrap();
            let b = cover_group(&figure_eight(), k).unwrap().order().unwrap();
            assert_eq!(cover_group(&s, k).unwrap().order().unwrap(), a * b);
        }
    }

    #[test]
    fn scan_examples() {
        let tre = LaurentPoly::from_i64s(&[1, -1, 1], 0);
        let s = prime_power_scan(&tre, 9).unwrap();
        assert_eq!(s.entries[0].order, Some(BigInt::from(3)));
        assert!(s.nontrivial_factor.is_some());
        let phi30 = crate::polyring::cyclotomic(30).unwrap();
        let s = prime_power_scan(&(&phi30 * &phi30), 9).unwrap();
        assert!(s.entries.iter().all(|e| e.trivial));
        assert!(s.nontrivial_factor.is_none());
        assert!(prime_power_scan(&LaurentPoly::one(), 9).unwrap().entries.iter().all(|e| e.trivial));
    }

    #[test]
    fn realized_models() {
        use crate::polyring::cyclotomic;
        use crate::seifert::metabolic_realization;
        let phi30 = metabolic_realization(&cyclotomic(30).unwrap()).unwrap();
        for k in [2, 3, 4, 5, 7, 8, 9] {
            assert!(cover_group(&phi30, k).unwrap().is_trivial(), "k = {k}");
        }
        let g6 = cover_group(&phi30, 6).unwrap();
        assert_eq!(g6.order_u64(), Some(625));
        assert_eq!(g6.factors, vec![5, 5, 5, 5]);
        let f = LaurentPoly::from_i64s(&[4, -3, 2, 4, -7, 1, 2, -3, 1], 0);
        let ter = metabolic_realization(&f).unwrap();
        // |Res(f, t^5 − 1)| = 1296, so the full Δ = f·f* gives its square
        assert_eq!(cover_group(&ter, 5).unwrap().order_u64(), Some(1296 * 1296));
        assert_eq!(resultant(&f, &t_k_minus_one(5)).unwrap().abs(), BigInt::from(1296));
        let p2 = metabolic_realization(&LaurentPoly::from_i64s(&[1, -4, 4], 0)).unwrap();
        assert_eq!(cover_group(&p2, 4).unwrap().order_u64(), Some(50625));
    }

    #[test]
    fn gilmer_kernel_orders() {
        let k = gilmer_kernel(&b2(), 2).unwrap();
        assert_eq!(k.factors, vec![3]);
        let (_, phi) = gamma_phi(&b1(), 2).unwrap();
        let kb = gilmer_kernel(&b1(), 2).unwrap();
        let ord: u64 = kb.factors.iter().product();
        assert_eq!(BigInt::from(ord), phi.det().abs());
        for g in &kb.generators {
            let img: Vec<BigRational> = (0..4)
                .map(|i| (0..4).map(|j| BigRational::from_integer(phi[(i, j)].clone()) * &g[j]).sum())
                .collect();
            assert!(img.iter().all(|x: &BigRational| x.is_integer()));
        }
        assert!(gilmer_kernel(&b1(), 1).unwrap().factors.is_empty());
        assert!(gilmer_kernel(&b2(), 6).is_err());
    }
}
