//! End-to-end acceptance checks, one line per criterion.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config as PtConfig, TestRunner};

use sliceness::covers::{cover_group, gamma_phi, CoverGroup};
use sliceness::etacalc::cover_correction;
use sliceness::group::{self, Elem};
use sliceness::linkform::{brute_force_metabolizers, linking_form, metabolizers, Character, LinkingForm};
use sliceness::matrix::Matrix;
use sliceness::metarep::{build_rep, build_rep_phase, tensor, MonomialMatrix, Phase};
use sliceness::obstruct::{
    example_five_satellite, example_four_satellite, example_two_satellite, reproduce_example, se_sweep, CheckStatus,
    Config, Mode,
};
use sliceness::polyring::{cyclotomic, resultant, LaurentPoly, UnitCirclePoint};
use sliceness::seifert::library::*;
use sliceness::seifert::{signature_profile, Breakpoint, IntegralValue, SeifertMatrix, SignatureProfile};
use sliceness::Error;

enum Status {
    Pass,
    Fail,
    /// Holds against the independently recomputed value, which differs from
    /// a published one; see the notes.
    Discrepancy,
}

struct Outcome {
    status: Status,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { status: Status::Pass, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { status: Status::Fail, detail: detail.into() }
}

fn ensure(ok: bool, detail: impl Into<String>) -> Outcome {
    if ok {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn t_k_minus_one(k: u32) -> LaurentPoly {
    let mut c = vec![0; k as usize + 1];
    c[0] = -1;
    c[k as usize] = 1;
    LaurentPoly::from_i64s(&c, 0)
}

fn res_order(delta: &LaurentPoly, k: u32) -> BigInt {
    resultant(delta, &t_k_minus_one(k)).unwrap().abs()
}

fn alexander_polynomials() -> Outcome {
    let phi6 = cyclotomic(6).unwrap();
    let ok = b1().alexander() == &phi6 * &phi6 && b2().alexander() == phi6 && b3().alexander() == cyclotomic(14).unwrap();
    ensure(ok, "Δ(B1) = Φ6², Δ(B2) = Φ6, Δ(B3) = Φ14")
}

/// Arcs with equal neighbouring values merged, as `(start, end, value)`.
fn merged(p: &SignatureProfile) -> Vec<(Rational64, Rational64, i64)> {
    let mut out: Vec<(Rational64, Rational64, i64)> = Vec::new();
    for a in &p.arcs {
        let (Breakpoint::Exact(s), Breakpoint::Exact(e)) = (&a.start, &a.end) else {
            panic!("inexact breakpoint");
        };
        match out.last_mut() {
            Some(last) if last.2 == a.value => last.1 = *e,
            _ => out.push((*s, *e, a.value)),
        }
    }
    out
}

fn arcs(table: &[(i64, i64, i64)], q: i64) -> Vec<(Rational64, Rational64, i64)> {
    table.iter().map(|&(s, e, v)| (Rational64::new(s, q), Rational64::new(e, q), v)).collect()
}

fn signature_tables() -> Outcome {
    let p2 = signature_profile(&b2()).unwrap();
    let p3 = signature_profile(&b3()).unwrap();
    let p1 = signature_profile(&b1()).unwrap();
    let want2 = arcs(&[(0, 1, 0), (1, 5, 2), (5, 6, 0)], 6);
    let want3 = arcs(&[(0, 1, 0), (1, 3, 2), (3, 5, 0), (5, 9, 2), (9, 11, 0), (11, 13, 2), (13, 14, 0)], 14);
    let want1 = arcs(&[(0, 1, 0)], 1);
    let pts1: Vec<(Rational64, i64)> = p1.points.iter().filter(|p| p.value != 0).map(|p| (p.turn, p.value)).collect();
    let ok = merged(&p2) == want2
        && merged(&p3) == want3
        && merged(&p1) == want1
        && pts1 == vec![(Rational64::new(1, 6), -1), (Rational64::new(5, 6), -1)];
    ensure(ok, "B2: 2 on (1/6,5/6); B3: 2 on (1/14,3/14)∪(5/14,9/14)∪(11/14,13/14); B1: 0 on arcs, −1 at 1/6 and 5/6")
}

fn example_one() -> Outcome {
    let d = d_sum();
    let sig: Vec<i64> = (1..5).map(|j| d.signature_at_turn(Rational64::new(j, 5)).unwrap()).collect();
    let integral = d.integral().unwrap();
    let ok = d.arf_zero_solvable() && sig == vec![2; 4] && integral == IntegralValue::Exact(BigRational::zero());
    ensure(ok, format!("7·B3 ⊕ −6·B2: Arf 0, σ(j/5) = {sig:?}, ∫σ = {integral}"))
}

fn cover_orders() -> Outcome {
    let a = phi30_squared();
    let delta = a.alexander();
    let mut bad = Vec::new();
    for k in 1..=9u32 {
        let det = gamma_phi(&a, k).unwrap().1.det().abs();
        if det != res_order(&delta, k) {
            bad.push(format!("det φ_{k} ≠ |Res|"));
        }
        let g = cover_group(&a, k).unwrap();
        let order = g.order().unwrap();
        if order != det {
            bad.push(format!("|H_1(L_{k})| ≠ |det φ_{k}|"));
        }
        let prime_power = k > 1 && sliceness::arith::is_prime_power(k as u64);
        if prime_power && order != BigInt::from(1) {
            bad.push(format!("|H_1(L_{k})| = {order}, expected 1"));
        }
    }
    if cover_group(&a, 6).unwrap().order() != Some(BigInt::from(625)) {
        bad.push("|H_1(L_6)| ≠ 625".into());
    }
    if !bad.is_empty() {
        return fail(bad.join("; "));
    }
    let t = terasaka();
    let g5 = cover_group(&t, 5).unwrap();
    let order = g5.order().unwrap();
    let res_full = res_order(&t.alexander(), 5);
    let res_half = res_order(&terasaka_factor(), 5);
    let form = linking_form(&t, 5).unwrap();
    let metabolizer_order = metabolizers(&form).unwrap().first().map(|m| m.order);
    let consistent = order == res_full
        && gamma_phi(&t, 5).unwrap().1.det().abs() == order
        && res_half == BigInt::from(1296)
        && order == &res_half * &res_half
        && metabolizer_order == Some(1296);
    if !consistent {
        return fail(format!("Terasaka level 5: order {order}, |Res(Δ)| {res_full}, |Res(f)| {res_half}"));
    }
    Outcome {
        status: Status::Discrepancy,
        detail: format!(
            "Φ30²: order 1 at prime powers ≤ 9, 625 at k=6, |det φ_k| = |Res| for k ≤ 9; Terasaka k=5: \
             published 1296, computed {order} = 1296² = |Res(Δ, t⁵−1)|; 1296 = |Res(f, t⁵−1)| = |P_5|"
        ),
    }
}

fn known_discrepancy() -> Outcome {
    let a = p_squared();
    let oracle = res_order(&a.alexander(), 4);
    let order = cover_group(&a, 4).unwrap().order().unwrap();
    let report = reproduce_example(2).unwrap();
    let flagged = report
        .checks
        .iter()
        .any(|c| c.name == "|H_1(L_4)|" && c.status == CheckStatus::Discrepancy && c.expected == "225" && c.computed == "50625");
    ensure(
        oracle == BigInt::from(50625) && order == oracle && flagged,
        format!("|Res(p², t⁴−1)| = {oracle} = 225², cover order {order}, report flags published 225: {flagged}"),
    )
}

fn exhaustive_homomorphism(g: &CoverGroup, k: u32) -> Result<usize, String> {
    let exp = g.factors.iter().fold(1u64, |a, &d| num_integer::lcm(a, d));
    let z = UnitCirclePoint::transcendental();
    let elems: Vec<Elem> = g.elements().collect();
    let mut checked = 0;
    for chi in Character::all(&g.factors, exp).map_err(|e| e.to_string())? {
        if !chi.factors_through_level(g, k) {
            continue;
        }
        let rep = build_rep(k, &z, &chi, g).map_err(|e| e.to_string())?;
        for n in 0..k as i64 {
            for h in &elems {
                let a = rep.eval(n, h);
                for m in 0..k as i64 {
                    for x in &elems {
                        let (s, y) = rep.compose((n, h), (m, x));
                        if a.mul(&rep.eval(m, x)) != rep.eval(s, &y) {
                            return Err(format!("k={k} χ={:?}: α(g)α(h) ≠ α(gh)", chi.values));
                        }
                        checked += 1;
                    }
                }
            }
        }
    }
    Ok(checked)
}

fn representations() -> Outcome {
    let mut pairs = 0;
    for a in [b1(), b2(), figure_eight(), p_squared(), b2().direct_sum(&b2().negate())] {
        for k in 1..=4u32 {
            let g = cover_group(&a, k).unwrap();
            if !g.is_finite() || g.order_u64().unwrap() > 25 {
                continue;
            }
            match exhaustive_homomorphism(&g, k) {
                Ok(n) => pairs += n,
                Err(e) => return fail(e),
            }
        }
    }
    // tensor against an independently assembled α_(6, z1z2, χ1χ2)
    let a = figure_eight();
    let (g2, g3, g6) = (cover_group(&a, 2).unwrap(), cover_group(&a, 3).unwrap(), cover_group(&a, 6).unwrap());
    let chi1 = Character::new(&g2.factors, 5, vec![1]).unwrap();
    let chi2 = Character::all(&g3.factors, 2).unwrap().into_iter().find(|c| !c.is_trivial()).unwrap();
    let r1 = build_rep_phase(2, Phase::symbol(1), &chi1, &g2).unwrap();
    let r2 = build_rep_phase(3, Phase::symbol(2), &chi2, &g3).unwrap();
    let t = match tensor(&r1, &r2, &g6, 50) {
        Ok(t) => t,
        Err(e) => return fail(e.to_string()),
    };
    let values: Vec<u64> = (0..g6.rank())
        .map(|i| {
            let e = g6.dual_generator(0).iter().enumerate().map(|(j, _)| u64::from(j == i)).collect::<Vec<_>>();
            let turn = chi1.turn(&g6.transfer(&e, &g2).unwrap()) + chi2.turn(&g6.transfer(&e, &g3).unwrap());
            let v = turn * Rational64::from_integer(10);
            (v.to_integer().rem_euclid(10)) as u64
        })
        .collect();
    let chi = Character::new(&g6.factors, 10, values).unwrap();
    let direct = build_rep_phase(6, Phase::symbol(1).mul(&Phase::symbol(2)), &chi, &g6).unwrap();
    let basis: Vec<usize> = (0..6).map(|i| (i % 2) * 3 + i % 3).collect();
    let p = MonomialMatrix::permutation(&basis);
    let elems: Vec<Elem> = g6.elements().collect();
    let mut samples = 0;
    for s in 0..50usize {
        let h = &elems[(s * 7919) % elems.len()];
        let n = (s as i64 % 13) - 6;
        let prod = r1.eval(n, &g6.transfer(h, &g2).unwrap()).tensor(&r2.eval(n, &g6.transfer(h, &g3).unwrap()));
        if p.inverse().mul(&prod).mul(&p) != direct.eval(n, h) || t.eval(n, h) != direct.eval(n, h) {
            return fail(format!("tensor differs from α_6 at ({n}, {h:?})"));
        }
        samples += 1;
    }
    // order-6 characters are irreducible here but outside P_k^irr
    let tg = cover_group(&terasaka(), 5).unwrap();
    let mut v = vec![0; tg.rank()];
    v[0] = 1;
    let c6 = Character::new(&tg.factors, 6, v).unwrap();
    let class = build_rep(5, &UnitCirclePoint::transcendental(), &c6, &tg).unwrap().classify();
    ensure(
        c6.order == 6 && class.irreducible && !class.in_pk_irr,
        format!(
            "{pairs} exhaustive products on |group| ≤ 25, k ≤ 4; 2⊗3 tensor equals α_6 on {samples} samples; \
             order-6 character: irreducible {}, in P_k^irr {}",
            class.irreducible, class.in_pk_irr
        ),
    )
}

fn index_sets(form: &LinkingForm) -> Vec<Vec<usize>> {
    let f = form.factors();
    let mut v: Vec<Vec<usize>> = metabolizers(form)
        .unwrap()
        .iter()
        .map(|m| {
            let mut s: Vec<usize> = m.elements(f).iter().map(|e| group::index(e, f)).collect();
            s.sort();
            s
        })
        .collect();
    v.sort();
    v
}

fn linking_form_oracle() -> Outcome {
    let fixtures: Vec<(&str, SeifertMatrix)> = vec![
        ("B1", b1()),
        ("B2", b2()),
        ("figure-eight", figure_eight()),
        ("PSQ", p_squared()),
        ("B2 ⊕ −B2", b2().direct_sum(&b2().negate())),
        ("B2 ⊕ B2", b2().direct_sum(&b2())),
        ("figure-eight ⊕ figure-eight", figure_eight().direct_sum(&figure_eight())),
        ("figure-eight ⊕ −figure-eight", figure_eight().direct_sum(&figure_eight().negate())),
    ];
    let mut compared = 0;
    for (name, a) in &fixtures {
        for k in [2u32, 3] {
            let g = cover_group(a, k).unwrap();
            if !g.is_finite() || g.order_u64().unwrap() > 81 {
                continue;
            }
            let form = linking_form(a, k).unwrap();
            let fast = index_sets(&form);
            let brute = brute_force_metabolizers(&form);
            let direct_ok = metabolizers(&form).unwrap().iter().all(|m| {
                let span = group::span_elements(form.factors(), &m.generators);
                let invariant = span.iter().all(|x| span.contains(&form.group.apply_t(x)));
                let mut perp = form.orthogonal_elements(&m.generators);
                let mut s = span.clone();
                perp.sort();
                s.sort();
                invariant && perp == s
            });
            if fast != brute || !direct_ok {
                return fail(format!("{name} k={k}: enumeration {} vs brute force {}", fast.len(), brute.len()));
            }
            compared += 1;
        }
    }
    let trefoil = metabolizers(&linking_form(&b2(), 2).unwrap()).unwrap().len();
    ensure(trefoil == 0, format!("{compared} forms agree with brute force; trefoil k=2 has {trefoil} metabolizers"))
}

fn example_two() -> Outcome {
    let cfg = Config { orders: vec![5], ..Config::default() };
    let mut parts = Vec::new();
    for n in [0i64, 3, 10] {
        let level = se_sweep(&example_two_satellite(n), 4, Mode::Slice, &cfg).unwrap();
        let lows: Vec<i64> = level
            .metabolizers
            .iter()
            .filter_map(|m| m.witness.as_ref())
            .filter(|w| w.character.order == 5 && w.classification.in_pk_irr)
            .filter_map(|w| w.eta.lower_bound())
            .collect();
        let ok = level.obstruction
            && level.metabolizer_count > 0
            && lows.len() == level.metabolizer_count
            && lows.iter().all(|&l| l >= n + 2);
        if !ok {
            return fail(format!("N={n}: {}", level.note));
        }
        parts.push(format!("N={n}: {} metabolizers, min bound {}", level.metabolizer_count, lows.iter().min().unwrap()));
    }
    pass(format!("not slice (SE-obstruction); {}", parts.join(", ")))
}

fn example_four() -> Outcome {
    let s = example_four_satellite().unwrap();
    let ribbon = se_sweep(&s, 6, Mode::Ribbon, &Config { orders: vec![5], ..Config::default() }).unwrap();
    let witness = ribbon.metabolizers.first().and_then(|m| m.witness.as_ref());
    let mut plain = s.clone();
    plain.stages.clear();
    let vacuous = [2u32, 3, 4, 5, 7, 8, 9].iter().all(|&k| {
        let l = se_sweep(&plain, k, Mode::Slice, &Config::default()).unwrap();
        l.vacuous && !l.obstruction
    });
    ensure(
        ribbon.obstruction && witness.is_some_and(|w| w.character.order == 5) && vacuous,
        format!("ribbon sweep at k=6: {}; prime-power slice sweeps vacuous: {vacuous}", ribbon.note),
    )
}

fn example_five() -> Outcome {
    let s = example_five_satellite(3);
    let over = Config { orders: vec![6], allow_non_prime_power: true, ..Config::default() };
    let level = se_sweep(&s, 5, Mode::Slice, &over).unwrap();
    let uppers: Vec<i64> = level
        .metabolizers
        .iter()
        .filter_map(|m| m.witness.as_ref())
        .filter(|w| w.character.order == 6)
        .filter_map(|w| w.eta.upper_bound())
        .collect();
    let bounded = level.obstruction && uppers.len() == level.metabolizer_count && uppers.iter().all(|&u| u <= -1);
    let strict = Config { orders: vec![6], ..Config::default() };
    let refused = matches!(se_sweep(&s, 5, Mode::Slice, &strict), Err(Error::NotPrimePower(6)));
    ensure(
        bounded && refused,
        format!(
            "override: {} metabolizers, every one with η ≤ {} ≤ −1; without override refused: {refused}",
            level.metabolizer_count,
            uppers.iter().max().map_or("?".into(), |u| u.to_string())
        ),
    )
}

fn elementary(n: usize, i: usize, j: usize, c: i64) -> Matrix {
    let mut rows = vec![vec![0i64; n]; n];
    for (d, row) in rows.iter_mut().enumerate() {
        row[d] = 1;
    }
    rows[i][j] += c;
    Matrix::from_rows(&rows)
}

fn property_suite() -> Outcome {
    let mut notes = Vec::new();
    let seed = |n: u32| PtConfig { cases: n, failure_persistence: None, ..PtConfig::default() };

    // congruence invariance
    let library = [b1(), b2(), b3(), figure_eight(), p_squared()];
    let turns: Vec<Rational64> =
        [(1, 7), (1, 6), (1, 5), (1, 3), (2, 5), (1, 2), (3, 4), (5, 6), (9, 14)].iter().map(|&(p, q)| Rational64::new(p, q)).collect();
    let ops = prop::collection::vec((0usize..8, 0usize..8, -2i64..=2), 1..7);
    let mut runner = TestRunner::new(seed(100));
    let r = runner.run(&(0usize..library.len(), ops), |(which, ops)| {
        let a = &library[which];
        let n = a.dim();
        let p = ops
            .iter()
            .filter(|(i, j, _)| i % n != j % n)
            .fold(Matrix::identity(n), |acc, &(i, j, c)| &elementary(n, i % n, j % n, c) * &acc);
        let b = a.congruent(&p).unwrap();
        for &t in &turns {
            prop_assert_eq!(a.signature_at_turn(t).unwrap(), b.signature_at_turn(t).unwrap());
        }
        Ok(())
    });
    if let Err(e) = r {
        return fail(format!("congruence invariance: {e}"));
    }
    notes.push("congruence 100/100");

    // cover correction of metabolic matrices
    let mut runner = TestRunner::new(seed(100));
    let r = runner.run(&(1usize..=2, prop::collection::vec(-2i64..=2, 4), 2u32..=6), |(g, entries, k)| {
        let b: Vec<Vec<i64>> = (0..g).map(|i| (0..g).map(|j| entries[i * 2 + j]).collect()).collect();
        let n = 2 * g;
        let mut rows = vec![vec![0i64; n]; n];
        for i in 0..g {
            for j in 0..g {
                rows[i][g + j] = b[i][j];
                rows[g + i][j] = b[j][i] - i64::from(i == j);
            }
        }
        let a = SeifertMatrix::from_rows(&rows).unwrap();
        prop_assume!(!resultant(&a.alexander(), &t_k_minus_one(k)).unwrap().is_zero());
        prop_assert_eq!(cover_correction(&a, k).unwrap(), 0);
        Ok(())
    });
    if let Err(e) = r {
        return fail(format!("metabolic cover correction: {e}"));
    }
    notes.push("metabolic correction 100/100");

    // P^⊥⊥ = P and t-isometry on random forms
    let forms_checked = std::cell::Cell::new(0usize);
    let mut runner = TestRunner::new(seed(200));
    let r = runner.run(
        &(1usize..=2, prop::collection::vec(-3i64..=3, 10), prop::collection::vec(0u64..1000, 4), 2u32..=3),
        |(g, entries, picks, k)| {
            let n = 2 * g;
            let mut rows = vec![vec![0i64; n]; n];
            let mut e = entries.iter();
            for i in 0..n {
                for j in i..n {
                    let v = *e.next().unwrap();
                    rows[i][j] += v;
                    if i != j {
                        rows[j][i] += v;
                    }
                }
            }
            for i in 0..g {
                rows[i][g + i] += 1;
            }
            let a = SeifertMatrix::from_rows(&rows).unwrap();
            let cg = cover_group(&a, k).unwrap();
            prop_assume!(cg.is_finite() && cg.order_u64().unwrap() <= 300);
            let form = linking_form(&a, k).unwrap();
            let f = form.factors().to_vec();
            let total = group::order(&f) as usize;
            let gens: Vec<Elem> = picks[..2].iter().map(|&x| group::from_index(x as usize % total, &f)).collect();
            let mut span = group::span_elements(&f, &gens);
            let perp = form.orthogonal_elements(&gens);
            let mut perp2 = form.orthogonal_elements(&perp);
            span.sort();
            perp2.sort();
            prop_assert_eq!(span, perp2);
            for i in 0..f.len() {
                for j in 0..f.len() {
                    let (x, y): (Elem, Elem) = (unit(&f, i), unit(&f, j));
                    prop_assert_eq!(
                        form.pair(&form.group.apply_t(&x), &form.group.apply_t(&y)),
                        form.pair(&x, &y)
                    );
                }
            }
            forms_checked.set(forms_checked.get() + 1);
            Ok(())
        },
    );
    if let Err(e) = r {
        return fail(format!("P^⊥⊥ = P / t-isometry: {e}"));
    }
    notes.push("P^⊥⊥ = P 200/200");

    // t-isometry on every form built from the bundled matrices
    let mut fixed = 0;
    for a in [b1(), b2(), b3(), figure_eight(), p_squared(), phi30_squared()] {
        for k in 2..=6u32 {
            let Ok(form) = linking_form(&a, k) else { continue };
            let f = form.factors().to_vec();
            let ok = (0..f.len()).all(|i| {
                (0..f.len()).all(|j| {
                    let (x, y) = (unit(&f, i), unit(&f, j));
                    form.pair(&form.group.apply_t(&x), &form.group.apply_t(&y)) == form.pair(&x, &y)
                })
            });
            if !ok {
                return fail(format!("t-isometry fails at k={k}"));
            }
            fixed += 1;
        }
    }
    pass(format!("{}, t-isometry on {} random and {fixed} library forms", notes.join(", "), forms_checked.get()))
}

fn unit(f: &[u64], i: usize) -> Elem {
    let mut e = group::zero(f);
    e[i] = 1 % f[i];
    e
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        ("Alexander polynomials", alexander_polynomials),
        ("signature tables", signature_tables),
        ("example 1 invariants", example_one),
        ("cover orders", cover_orders),
        ("known-discrepancy ledger", known_discrepancy),
        ("representation suite", representations),
        ("linking-form oracle", linking_form_oracle),
        ("example 2 pipeline", example_two),
        ("example 4 pipeline", example_four),
        ("example 5 pipeline", example_five),
        ("property suite", property_suite),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            fail(format!("panicked: {msg}"))
        });
        let tag = match out.status {
            Status::Pass => "PASS",
            Status::Discrepancy => "PASS (known discrepancy)",
            Status::Fail => {
                failed += 1;
                "FAIL"
            }
        };
        println!("criterion {:>2} {tag}: {name}: {} [{:.2?}]", i + 1, out.detail, start.elapsed());
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
