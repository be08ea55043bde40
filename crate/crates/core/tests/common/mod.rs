//! Strategies, brute-force oracles and property checks shared by the
//! property suite and the acceptance runner.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use sympow_core::closure::{in_closure, Closure};
use sympow_core::decompose::{big_height, irreducible_decomposition};
use sympow_core::lp::{LinearProgram, Relation};
use sympow_core::membership::monomial_in_power;
use sympow_core::polyhedron::newton_polyhedron;
use sympow_core::rational::Rational;
use sympow_core::resurgence::asymptotic_resurgence;
use sympow_core::symbolic::{symbolic_membership, symbolic_power};
use sympow_core::{Limits, Monomial, MonomialIdeal, SymbolicScheme, Workspace};

pub type Check = Result<(), TestCaseError>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(TestCaseError::fail(format!($($fmt)+)));
        }
    };
}

fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

// ---------- strategies ----------

fn gens_in(n: usize, max_gens: usize, max_exp: u32) -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(prop::collection::vec(0..=max_exp, n), 1..=max_gens)
}

fn build(n: usize, gens: Vec<Vec<u32>>) -> MonomialIdeal {
    MonomialIdeal::from_exponents(n, gens).unwrap()
}

/// Proper nonzero ideal with exponents `≤ max_exp`.
pub fn ideal(n: usize, max_gens: usize, max_exp: u32) -> impl Strategy<Value = MonomialIdeal> {
    gens_in(n, max_gens, max_exp)
        .prop_filter("proper", |g| g.iter().all(|e| e.iter().any(|&x| x > 0)))
        .prop_map(move |g| build(n, g))
}

pub fn squarefree(n: usize, max_gens: usize) -> impl Strategy<Value = MonomialIdeal> {
    ideal(n, max_gens, 1)
}

/// Several ideals over a common random number of variables.
pub fn ideals(
    vars: std::ops::RangeInclusive<usize>,
    count: usize,
    max_gens: usize,
    max_exp: u32,
) -> impl Strategy<Value = Vec<MonomialIdeal>> {
    vars.prop_flat_map(move |n| prop::collection::vec(ideal(n, max_gens, max_exp), count))
}

/// Edge ideal of a random graph with at least two edges.
pub fn edge_ideal(max_vertices: usize) -> impl Strategy<Value = MonomialIdeal> {
    (3..=max_vertices).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        let m = pairs.len();
        prop::collection::vec(any::<bool>(), m)
            .prop_filter("two edges", |keep| keep.iter().filter(|&&k| k).count() >= 2)
            .prop_map(move |keep| {
                let supports: Vec<Vec<usize>> = pairs
                    .iter()
                    .zip(&keep)
                    .filter(|(_, &k)| k)
                    .map(|(&(i, j), _)| vec![i, j])
                    .collect();
                let refs: Vec<&[usize]> = supports.iter().map(Vec::as_slice).collect();
                MonomialIdeal::from_supports(n, &refs).unwrap()
            })
    })
}

// ---------- brute-force oracles ----------

pub fn monomials_up_to(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u32>| {
                let used: u32 = p.iter().sum();
                (0..=d - used).map(move |k| {
                    let mut p = p.clone();
                    p.push(k);
                    p
                })
            })
            .collect();
    }
    out.into_iter().map(Monomial::new).collect()
}

/// Keeps the monomials not strictly divisible by another one (first copy of
/// duplicates), by a quadratic scan.
pub fn brute_minimal(gens: &[Monomial]) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = Vec::new();
    for (k, g) in gens.iter().enumerate() {
        let dominated = gens
            .iter()
            .enumerate()
            .any(|(j, h)| j != k && h.divides(g) && (h != g || j < k));
        if !dominated {
            out.push(g.clone());
        }
    }
    out.sort();
    out
}

pub fn in_gens(m: &Monomial, gens: &[Monomial]) -> bool {
    gens.iter().any(|g| g.divides(m))
}

/// All products of `r` generators.
pub fn brute_power(i: &MonomialIdeal, r: u32) -> Vec<Monomial> {
    let mut acc = vec![Monomial::one(i.nvars())];
    for _ in 0..r {
        acc = acc
            .iter()
            .flat_map(|a| i.gens().iter().map(move |g| a.mul(g)))
            .collect();
        acc = brute_minimal(&acc);
    }
    acc
}

/// Minimal vertex covers of the generator supports, by subset enumeration.
pub fn brute_min_primes(i: &MonomialIdeal) -> Vec<Vec<usize>> {
    let n = i.nvars();
    let covers: Vec<u32> = (0u32..1 << n)
        .filter(|&s| {
            i.gens()
                .iter()
                .all(|g| g.support().any(|v| s >> v & 1 == 1))
        })
        .collect();
    covers
        .iter()
        .filter(|&&s| !covers.iter().any(|&t| t != s && t & s == t))
        .map(|&s| (0..n).filter(|v| s >> v & 1 == 1).collect())
        .collect()
}

/// `m ∈ I^(s)` for squarefree `I` through the cover oracle.
pub fn brute_symbolic(m: &Monomial, primes: &[Vec<usize>], s: u32) -> bool {
    primes
        .iter()
        .all(|p| p.iter().map(|&v| m.exponents()[v]).sum::<u32>() >= s)
}

fn lcm_offsets(i: &MonomialIdeal) -> u32 {
    newton_polyhedron(i)
        .unwrap()
        .facets
        .iter()
        .fold(1u64, |a, h| a.lcm(&h.offset)) as u32
}

// ---------- monomial-core properties ----------

pub fn normalize_matches_filter(n: usize, gens: Vec<Vec<u32>>) -> Check {
    let ms: Vec<Monomial> = gens.into_iter().map(Monomial::new).collect();
    let i = MonomialIdeal::new(n, ms.clone()).unwrap();
    let mut expected = brute_minimal(&ms);
    expected.dedup();
    ensure!(
        i.gens() == expected.as_slice(),
        "{:?} vs {:?}",
        i.gens(),
        expected
    );
    Ok(())
}

pub fn intersection_membership(i: &MonomialIdeal, j: &MonomialIdeal) -> Check {
    let k = i.intersect(j).unwrap();
    for m in monomials_up_to(i.nvars(), 8) {
        ensure!(
            k.contains(&m) == (i.contains(&m) && j.contains(&m)),
            "membership of {m:?} in {i:?} ∩ {j:?}"
        );
    }
    ensure!(k == j.intersect(i).unwrap(), "intersection not commutative");
    Ok(())
}

pub fn intersection_distributes(i: &MonomialIdeal, j: &MonomialIdeal, k: &MonomialIdeal) -> Check {
    let lhs = i.intersect(&j.sum(k).unwrap()).unwrap();
    let rhs = i
        .intersect(j)
        .unwrap()
        .sum(&i.intersect(k).unwrap())
        .unwrap();
    ensure!(lhs == rhs, "I∩(J+K) = {lhs:?}, I∩J+I∩K = {rhs:?}");
    let a = i.intersect(j).unwrap().intersect(k).unwrap();
    let b = i.intersect(&j.intersect(k).unwrap()).unwrap();
    ensure!(a == b, "intersection not associative");
    Ok(())
}

/// `π` over the generating set `{lcm(m, n)}` of `I ∩ J` is
/// `lcm(π(I), π(J))`; over minimal generators it divides it.
pub fn pi_of_intersection(i: &MonomialIdeal, j: &MonomialIdeal) -> Check {
    let rhs = i.pi().unwrap().lcm(&j.pi().unwrap());
    let lcms = i
        .gens()
        .iter()
        .flat_map(|m| j.gens().iter().map(move |n| m.lcm(n)))
        .fold(Monomial::one(i.nvars()), |a, b| a.lcm(&b));
    ensure!(lcms == rhs, "π over lcm set = {lcms:?}, lcm = {rhs:?}");
    let minimal = i.intersect(j).unwrap().pi().unwrap();
    ensure!(
        minimal.divides(&rhs),
        "π(I∩J) = {minimal:?} does not divide {rhs:?}"
    );
    Ok(())
}

/// `π(I ∩ J) = lcm(π(I), π(J))` with `π` over minimal generators.
pub fn pi_of_intersection_minimal(i: &MonomialIdeal, j: &MonomialIdeal) -> Check {
    let lhs = i.intersect(j).unwrap().pi().unwrap();
    let rhs = i.pi().unwrap().lcm(&j.pi().unwrap());
    ensure!(
        lhs == rhs,
        "π(I∩J) = {lhs:?}, lcm = {rhs:?} for {i:?}, {j:?}"
    );
    Ok(())
}

pub fn bracket_distributes(i: &MonomialIdeal, j: &MonomialIdeal) -> Check {
    for r in [2, 3] {
        let lhs = i.intersect(j).unwrap().bracket_power(r);
        let rhs = i.bracket_power(r).intersect(&j.bracket_power(r)).unwrap();
        ensure!(lhs == rhs, "r={r}: {lhs:?} vs {rhs:?}");
    }
    Ok(())
}

/// Every minimal prime has height at least 2.
pub fn has_codim_two(i: &MonomialIdeal) -> bool {
    brute_min_primes(i).iter().all(|p| p.len() >= 2)
}

pub fn pi_power_in_power(i: &MonomialIdeal) -> Check {
    if !has_codim_two(i) {
        return Ok(());
    }
    let pi = i.pi().unwrap();
    let d = pi.degree() as u32;
    for r in [d, d + 1] {
        ensure!(
            monomial_in_power(&pi.pow(r - 1), i, r),
            "π^{} ∉ I^{r}",
            r - 1
        );
    }
    Ok(())
}

pub fn power_and_bracket(i: &MonomialIdeal, j: &MonomialIdeal) -> Check {
    for r in [2, 3] {
        let lhs = i
            .power_capped(r, usize::MAX)
            .unwrap()
            .intersect(&j.bracket_power(r))
            .unwrap();
        let ij = i.intersect(j).unwrap();
        for g in lhs.gens() {
            ensure!(monomial_in_power(g, &ij, r), "r={r}: {g:?} ∉ (I∩J)^r");
        }
    }
    Ok(())
}

pub fn power_membership_oracle(i: &MonomialIdeal, r: u32) -> Check {
    let gens = brute_power(i, r);
    for m in monomials_up_to(i.nvars(), 8) {
        ensure!(
            monomial_in_power(&m, i, r) == in_gens(&m, &gens),
            "{m:?} in {i:?}^{r}"
        );
    }
    let p = i.power_capped(r, usize::MAX).unwrap();
    ensure!(p.gens() == gens.as_slice(), "generators of power differ");
    Ok(())
}

pub fn reconstruction(i: &MonomialIdeal) -> Check {
    let comps = irreducible_decomposition(i).unwrap();
    let back = MonomialIdeal::intersect_all(i.nvars(), comps.iter(), usize::MAX).unwrap();
    ensure!(back == *i, "{comps:?} intersect to {back:?}, not {i:?}");
    for c in &comps {
        ensure!(
            c.gens().iter().all(|g| g.support().count() == 1),
            "component {c:?} is not generated by pure powers"
        );
    }
    Ok(())
}

// ---------- polyhedra and closures ----------

/// `k` with `m^k ∈ I^{rk}` from a solution `λ` of `Σ λ_g g ≤ a/r`,
/// `Σ λ_g = 1`, `λ ≥ 0` over the generators; `None` when infeasible.
pub fn closure_certificate(m: &Monomial, i: &MonomialIdeal, r: u32) -> Option<u32> {
    let gens = i.gens();
    let mut lp = LinearProgram::new(vec![q(0); gens.len()]);
    lp.constrain(vec![q(1); gens.len()], Relation::Eq, q(1));
    for v in 0..i.nvars() {
        lp.constrain(
            gens.iter()
                .map(|g| q(g.exponents()[v] as i64 * r as i64))
                .collect(),
            Relation::Le,
            q(m.exponents()[v] as i64),
        );
    }
    let sol = lp.minimize().ok()?;
    let k = sol
        .argmin
        .iter()
        .fold(BigInt::one(), |a, x| a.lcm((x * q(r as i64)).denom()));
    Some(k.try_into().unwrap())
}

/// `m ∈ closure(I^r)` by facets agrees with the generator-side certificate,
/// and the certificate exponent `k` gives `m^k ∈ I^{rk}`.
pub fn closure_valuative(i: &MonomialIdeal, r: u32) -> Check {
    let cl = Closure::new(i, &Limits::default()).unwrap();
    for m in monomials_up_to(i.nvars(), 6) {
        let by_facets = in_closure(&m, i, r).unwrap();
        ensure!(by_facets == cl.contains(&m, r), "closure paths disagree");
        let cert = closure_certificate(&m, i, r);
        ensure!(
            by_facets == cert.is_some(),
            "{m:?}: facets say {by_facets}, generators say {cert:?}"
        );
        if let Some(k) = cert {
            ensure!(
                monomial_in_power(&m.pow(k), i, r * k),
                "{m:?}^{k} ∉ I^{}",
                r * k
            );
        }
    }
    Ok(())
}

/// The same criterion with `k` fixed to the lcm of the facet offsets.
pub fn closure_valuative_facet_lcm(i: &MonomialIdeal, r: u32) -> Check {
    let k = lcm_offsets(i);
    for m in monomials_up_to(i.nvars(), 6) {
        let by_facets = in_closure(&m, i, r).unwrap();
        let by_power = monomial_in_power(&m.pow(k), i, r * k);
        ensure!(
            by_facets == by_power,
            "{m:?} in closure of {i:?}^{r}: facets say {by_facets}, m^{k} ∈ I^{} says {by_power}",
            r * k
        );
    }
    Ok(())
}

pub fn facets_sound_and_tight(i: &MonomialIdeal) -> Check {
    let np = newton_polyhedron(i).unwrap();
    for h in &np.facets {
        for g in i.gens() {
            ensure!(h.value(g.exponents()) >= h.offset, "{g:?} violates {h:?}");
        }
        // tight at ≥ n affinely independent points among vertices and rays
        let n = i.nvars();
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        let tight: Vec<&Monomial> = np
            .vertices
            .iter()
            .filter(|v| h.value(v.exponents()) == h.offset)
            .collect();
        let base = tight.first().map(|v| v.exponents().to_vec());
        ensure!(base.is_some(), "facet {h:?} touches no vertex");
        let base = base.unwrap();
        for v in &tight[1..] {
            rows.push(
                v.exponents()
                    .iter()
                    .zip(&base)
                    .map(|(&a, &b)| q(a as i64 - b as i64))
                    .collect(),
            );
        }
        for (k, &w) in h.normal.iter().enumerate() {
            if w == 0 {
                let mut e = vec![q(0); n];
                e[k] = q(1);
                rows.push(e);
            }
        }
        ensure!(
            rank(rows) + 1 >= n,
            "facet {h:?} is not tight at enough points"
        );
    }
    Ok(())
}

fn rank(mut m: Vec<Vec<Rational>>) -> usize {
    let mut r = 0;
    let cols = m.first().map_or(0, Vec::len);
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r].clone();
        for row in m.iter_mut().skip(r + 1) {
            if !row[c].is_zero() {
                let f = &row[c] / &pivot[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
    }
    r
}

pub fn closure_filtration(i: &MonomialIdeal) -> Check {
    let lim = Limits::default();
    let cl = Closure::new(i, &lim).unwrap();
    for r in 1..=3 {
        let ir = i.power_capped(r, usize::MAX).unwrap();
        for g in ir.gens() {
            ensure!(cl.contains(g, r), "{g:?} ∈ I^{r} outside closure");
        }
    }
    let c1 = cl.power(1, &lim).unwrap();
    let c2 = cl.power(2, &lim).unwrap();
    for a in c1.gens() {
        for b in c2.gens() {
            ensure!(
                cl.contains(&a.mul(b), 3),
                "closure filtration not multiplicative"
            );
        }
    }
    Ok(())
}

// ---------- linear programs ----------

pub fn lp_duality(obj: Vec<u8>, rows: Vec<(Vec<i8>, i8)>) -> Check {
    let n = obj.len();
    let mut lp = LinearProgram::new(obj.iter().map(|&c| q(c as i64)).collect());
    for (a, b) in &rows {
        lp.constrain(
            a.iter().map(|&x| q(x as i64)).collect(),
            Relation::Ge,
            q(*b as i64),
        );
    }
    match lp.minimize() {
        Ok(sol) => {
            ensure!(lp.is_feasible_point(&sol.argmin), "argmin infeasible");
            let value: Rational = sol
                .argmin
                .iter()
                .zip(&obj)
                .map(|(x, &c)| x * q(c as i64))
                .fold(q(0), |a, b| a + b);
            ensure!(value == sol.value, "objective at argmin differs from value");
            ensure!(
                lp.verify_dual_certificate(&sol.dual, &sol.value),
                "dual certificate rejected"
            );
            // no feasible integer point in a small box beats the optimum
            let pts = monomials_up_to(n, 4);
            for p in pts {
                let x: Vec<Rational> = p.exponents().iter().map(|&e| q(e as i64)).collect();
                if lp.is_feasible_point(&x) {
                    let v = x
                        .iter()
                        .zip(&obj)
                        .map(|(x, &c)| x * q(c as i64))
                        .fold(q(0), |a, b| a + b);
                    ensure!(v >= sol.value, "feasible point below optimum");
                }
            }
        }
        Err(sympow_core::Error::Infeasible) => {
            for p in monomials_up_to(n, 6) {
                let x: Vec<Rational> = p.exponents().iter().map(|&e| q(e as i64)).collect();
                ensure!(
                    !lp.is_feasible_point(&x),
                    "reported infeasible but {x:?} is feasible"
                );
            }
        }
        Err(e) => return Err(TestCaseError::fail(format!("{e}"))),
    }
    Ok(())
}

// ---------- symbolic powers and resurgence ----------

pub fn symbolic_membership_oracle(i: &MonomialIdeal, s: u32) -> Check {
    let ws = Workspace::new();
    let primes = brute_min_primes(i);
    let p = symbolic_power(i, s, &ws).unwrap();
    for m in monomials_up_to(i.nvars(), 7) {
        let a = symbolic_membership(&m, i, s).unwrap();
        ensure!(a == p.contains(&m), "{m:?}: membership vs generators");
        ensure!(
            a == brute_symbolic(&m, &primes, s),
            "{m:?}: membership vs covers"
        );
    }
    Ok(())
}

pub fn symbolic_filtration(i: &MonomialIdeal) -> Check {
    let ws = Workspace::new();
    let sch = SymbolicScheme::new(i).unwrap();
    let powers: Vec<MonomialIdeal> = (0..=6).map(|s| sch.power(s, &ws).unwrap()).collect();
    for s in 1..6 {
        for g in powers[s + 1].gens() {
            ensure!(sch.contains(g, s as u32), "I^({}) ⊄ I^({s})", s + 1);
        }
    }
    for a in 1..=3usize {
        for b in 1..=3usize {
            for x in powers[a].gens() {
                for y in powers[b].gens() {
                    ensure!(
                        sch.contains(&x.mul(y), (a + b) as u32),
                        "I^({a})I^({b}) ⊄ I^({})",
                        a + b
                    );
                }
            }
        }
    }
    Ok(())
}

pub fn uniform_containment(i: &MonomialIdeal, r_max: u32) -> Check {
    let ws = Workspace::new();
    let sch = SymbolicScheme::new(i).unwrap();
    let h = sch.big_height() as u32;
    for r in 1..=r_max {
        let c = sch.containment_in_power(h * r, i, r, &ws).unwrap();
        ensure!(c.holds, "I^({}) ⊄ I^{r}, witness {:?}", h * r, c.witness);
    }
    Ok(())
}

/// `I^(rh−h) ⊆ I^r` at `r = ℓ` and `ℓ + 1` when `h ≥ 2`.
pub fn late_containment(i: &MonomialIdeal) -> Check {
    let ws = Workspace::new();
    let sch = SymbolicScheme::new(i).unwrap();
    let h = sch.big_height() as u32;
    if h < 2 || i.nvars() < 2 {
        return Ok(());
    }
    let l = i.nvars() as u32;
    for r in [l, l + 1] {
        let c = sch.containment_in_power(r * h - h, i, r, &ws).unwrap();
        ensure!(
            c.holds,
            "I^({}) ⊄ I^{r}, witness {:?}",
            r * h - h,
            c.witness
        );
    }
    Ok(())
}

pub fn rho_hat_below_h(i: &MonomialIdeal) -> Check {
    let ws = Workspace::new();
    let sch = SymbolicScheme::new(i).unwrap();
    let h = big_height(i).unwrap() as i64;
    let l = i.nvars() as i64;
    let a = asymptotic_resurgence(&sch, &ws).unwrap();
    ensure!(a.exact, "squarefree ρ̂ not exact");
    let bound = q(h) - Rational::new(BigInt::one(), BigInt::from(l));
    ensure!(a.rho_hat <= bound || h == 1, "ρ̂ = {} > h − 1/ℓ", a.rho_hat);
    ensure!(a.rho_hat >= q(1), "ρ̂ < 1");
    Ok(())
}

/// `ν̂` from the linear program equals `ν(I^(s))/s` at the denominator of
/// the optimal vertex, and bounds it from below for `s ≤ 6`.
pub fn nu_hat_stabilizes(i: &MonomialIdeal) -> Check {
    let ws = Workspace::new();
    let sch = SymbolicScheme::new(i).unwrap();
    let w = vec![1u32; i.nvars()];
    let lp = sch.nu_hat_program(&w);
    let sol = lp.minimize().unwrap();
    let value = sch.nu_hat(&w, &ws).unwrap().value;
    ensure!(value == sol.value, "nu_hat differs from its program");
    let s = sol
        .argmin
        .iter()
        .fold(BigInt::one(), |a, x| a.lcm(x.denom()));
    let s: u32 = s.try_into().unwrap();
    let at = sch.nu_of_power(&w, s, &ws).unwrap();
    ensure!(
        Rational::new(BigInt::from(at), BigInt::from(s)) == value,
        "ν(I^({s}))/{s} = {at}/{s} ≠ {value}"
    );
    for t in 1..=6u32 {
        let v = sch.nu_of_power(&w, t, &ws).unwrap();
        ensure!(
            Rational::new(BigInt::from(v), BigInt::from(t)) >= value,
            "ν(I^({t}))/{t} below ν̂"
        );
    }
    Ok(())
}
