//! Asymptotic resurgence, resurgence and the containment-derived bounds.
//!
//! `ρ̂(I) = max ν(I)/ν̂(I)` over the Rees valuations. When `ρ̂ < ρ`, some
//! `I^(s0) ⊄ I^(r0)` has `s0/r0 > ρ̂`, and every noncontainment satisfies
//! `s/r < (1 + b/r)·ρ̂`, so only `r < N = b·ρ̂/(s0/r0 − ρ̂)` matters.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::closure::{b_of, Closure};
use crate::decompose::{minimal_primes, PrimeSupport};
use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::lp::{LinearProgram, Relation};
use crate::membership::{monomial_in_power, Containment, Workspace};
use crate::monomial::Monomial;
use crate::polyhedron::{nu, Halfspace};
use crate::rational::{self, Rational};
use crate::symbolic::{SymbolicScheme, ValuationProfile};

/// Flag attached to bounds whose proofs assume a radical ideal.
pub const HEIGHT_CAVEAT: &str = "height-based, see analytic-spread caveat";

pub const DEFAULT_SEARCH_CAP: u32 = 20;

fn q(p: u64, d: u64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(d))
}

fn qi(p: u64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// A pair of exponents `(s, r)` for the question `I^(s) ⊆ I^r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Pair {
    pub s: u32,
    pub r: u32,
}

impl Pair {
    pub fn new(s: u32, r: u32) -> Self {
        Pair { s, r }
    }

    pub fn ratio(&self) -> Rational {
        q(self.s as u64, self.r as u64)
    }
}

/// Memoized answers to `I^(s) ⊆ I^r`, using monotonicity in `s`.
pub struct ContainmentOracle<'a> {
    scheme: &'a SymbolicScheme,
    ws: &'a Workspace,
    answers: Mutex<HashMap<Pair, Containment>>,
}

impl<'a> ContainmentOracle<'a> {
    pub fn new(scheme: &'a SymbolicScheme, ws: &'a Workspace) -> Self {
        ContainmentOracle {
            scheme,
            ws,
            answers: Mutex::default(),
        }
    }

    pub fn scheme(&self) -> &SymbolicScheme {
        self.scheme
    }

    pub fn check(&self, s: u32, r: u32) -> Result<Containment> {
        let key = Pair::new(s, r);
        if let Some(c) = self.answers.lock().unwrap().get(&key) {
            return Ok(c.clone());
        }
        let c = self
            .scheme
            .containment_in_power(s, self.scheme.source(), r, self.ws)?;
        self.answers.lock().unwrap().insert(key, c.clone());
        Ok(c)
    }

    pub fn contained(&self, s: u32, r: u32) -> Result<bool> {
        // I^(s) ⊆ I^(s') for s ≥ s', so known answers propagate.
        {
            let answers = self.answers.lock().unwrap();
            for (p, c) in answers.iter() {
                if p.r == r && c.holds && p.s <= s {
                    return Ok(true);
                }
                if p.r == r && !c.holds && p.s >= s {
                    return Ok(false);
                }
            }
        }
        Ok(self.check(s, r)?.holds)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AsymptoticResurgence {
    /// Exact `ρ̂` when `exact`, otherwise a lower bound.
    #[serde(with = "crate::rational::serde_p_q")]
    pub rho_hat: Rational,
    pub exact: bool,
    /// Upper bound for `ρ̂` (equal to `rho_hat` when exact).
    #[serde(with = "crate::rational::serde_p_q")]
    pub upper: Rational,
    pub profiles: Vec<ValuationProfile>,
}

/// `ρ̂(I) = max ν_w(I)/ν̂_w(I)` over the Rees valuations `w`.
pub fn asymptotic_resurgence(
    scheme: &SymbolicScheme,
    ws: &Workspace,
) -> Result<AsymptoticResurgence> {
    let i = scheme.source();
    if i.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let cl = Closure::new(i, ws.limits())?;
    let profiles = cl
        .polyhedron()
        .facets
        .iter()
        .map(|h| scheme.valuation_profile(h, ws))
        .collect::<Result<Vec<_>>>()?;
    let exact = profiles.iter().all(|p| p.nu_hat_exact);
    let rho_hat = profiles
        .iter()
        .map(|p| p.ratio.clone())
        .max()
        .unwrap_or_else(Rational::one)
        .max(Rational::one());
    let upper = if exact {
        rho_hat.clone()
    } else {
        qi(scheme.big_height() as u64)
    };
    Ok(AsymptoticResurgence {
        rho_hat,
        exact,
        upper,
        profiles,
    })
}

/// `max_{i, j ≤ n} j·ν_i(I)/ν_i(I^(j))` over the Rees valuations, which is
/// `ρ̂(I)` when the symbolic Rees algebra is generated in degree `≤ n`.
pub fn rho_hat_from_generating_degree(
    scheme: &SymbolicScheme,
    n: u32,
    ws: &Workspace,
) -> Result<Rational> {
    let i = scheme.source();
    let cl = Closure::new(i, ws.limits())?;
    let mut best = Rational::one();
    for h in &cl.polyhedron().facets {
        let nu_i = nu(i, &h.normal)?;
        for j in 1..=n {
            let v = scheme.nu_of_power(&h.normal, j, ws)?;
            best = best.max(q(j as u64 * nu_i, v));
        }
    }
    Ok(best)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Exact,
    Interval,
    Capped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResurgenceResult {
    #[serde(with = "crate::rational::serde_p_q")]
    pub rho_hat: Rational,
    pub rho_hat_exact: bool,
    /// `ρ(I)` when `status` is exact.
    #[serde(with = "crate::rational::serde_p_q_opt")]
    pub rho: Option<Rational>,
    #[serde(with = "crate::rational::serde_p_q")]
    pub lower: Rational,
    #[serde(with = "crate::rational::serde_p_q")]
    pub upper: Rational,
    pub status: Status,
    /// First noncontainment found with `s/r > ρ̂`.
    pub witness: Option<Pair>,
    #[serde(with = "crate::rational::serde_p_q_opt")]
    pub n: Option<Rational>,
    pub b: u32,
    pub h: usize,
    /// Pairs of the finite box with `s/r` above the witness ratio.
    pub candidates: Vec<Pair>,
    /// Every noncontainment established during the search.
    pub noncontainments: Vec<Pair>,
    /// All noncontainments attaining the reported maximum.
    pub maximizers: Vec<Pair>,
    pub search_cap: u32,
    pub caveats: Vec<String>,
}

fn ceil_minus_one(x: &Rational) -> u32 {
    // largest integer strictly below x
    let c = x.ceil().to_integer().to_i64().unwrap_or(i64::MAX);
    (c - 1).clamp(0, u32::MAX as i64) as u32
}

fn floor_u32(x: &Rational) -> u32 {
    x.floor().to_integer().to_u32().unwrap_or(u32::MAX)
}

pub fn resurgence(
    scheme: &SymbolicScheme,
    ws: &Workspace,
    search_cap: u32,
) -> Result<ResurgenceResult> {
    let i = scheme.source();
    let asym = asymptotic_resurgence(scheme, ws)?;
    let profile = b_of(i, ws.limits())?;
    let b = profile.b;
    let h = scheme.big_height();
    let oracle = ContainmentOracle::new(scheme, ws);
    let mut caveats = Vec::new();
    if !profile.b_verified {
        caveats.push("b is the Briançon-Skoda cap".to_string());
    }
    let mut result = ResurgenceResult {
        rho_hat: asym.rho_hat.clone(),
        rho_hat_exact: asym.exact,
        rho: None,
        lower: asym.rho_hat.clone(),
        upper: qi(h as u64),
        status: Status::Interval,
        witness: None,
        n: None,
        b,
        h,
        candidates: Vec::new(),
        noncontainments: Vec::new(),
        maximizers: Vec::new(),
        search_cap,
        caveats,
    };
    if !asym.exact {
        result
            .caveats
            .push("asymptotic resurgence is a lower bound".to_string());
        return interval_without_exact_rho_hat(&oracle, result, search_cap);
    }
    let rho_hat = asym.rho_hat;
    if b == 0 {
        result.rho = Some(rho_hat.clone());
        result.upper = rho_hat.clone();
        result.status = Status::Exact;
        result.n = Some(Rational::zero());
        return Ok(result);
    }
    let bq = qi(b as u64);
    // Phase 1: look for a noncontainment above ρ̂.
    let mut witness = None;
    'outer: for r in 2..=search_cap {
        let hi = ceil_minus_one(&(qi((r + b) as u64) * &rho_hat)).min(h as u32 * r - 1);
        let lo = (floor_u32(&(qi(r as u64) * &rho_hat)) + 1).max(r + 1);
        for s in (lo..=hi).rev() {
            match oracle.contained(s, r) {
                Ok(true) => {}
                Ok(false) => {
                    witness = Some(Pair::new(s, r));
                    break 'outer;
                }
                Err(Error::ResourceExceeded { what, limit }) => {
                    result.status = Status::Capped;
                    result
                        .caveats
                        .push(format!("{what} exceeded {limit} at s={s}, r={r}"));
                    return Ok(result);
                }
                Err(e) => return Err(e),
            }
        }
    }
    let Some(w) = witness else {
        // Phase 2b: every noncontainment with r ≤ cap has s/r ≤ ρ̂, and any
        // with larger r has s/r < (1 + b/(cap+1))·ρ̂.
        let tail = (Rational::one() + bq / qi(search_cap as u64 + 1)) * &rho_hat;
        result.upper = tail.min(qi(h as u64)).max(rho_hat.clone());
        for r in 2..=search_cap {
            let s = qi(r as u64) * &rho_hat;
            if rational::is_integer(&s) {
                let s = floor_u32(&s);
                if !oracle.contained(s, r)? {
                    result.noncontainments.push(Pair::new(s, r));
                    result.maximizers.push(Pair::new(s, r));
                    break;
                }
            }
        }
        if result.upper == result.lower {
            result.rho = Some(rho_hat);
            result.status = Status::Exact;
        }
        return Ok(result);
    };
    // Phase 2a: finite box.
    result.witness = Some(w);
    result.noncontainments.push(w);
    let mut best = w.ratio();
    let n_of = |best: &Rational| &bq * &rho_hat / (best - &rho_hat);
    let mut n_val = n_of(&best);
    result.n = Some(n_val.clone());
    let mut r = 2u32;
    while qi(r as u64) < n_val {
        let hi = ceil_minus_one(&(qi((r + b) as u64) * &rho_hat)).min(h as u32 * r - 1);
        for s in ((r + 1)..=hi).rev() {
            let p = Pair::new(s, r);
            if p.ratio() <= best {
                break;
            }
            result.candidates.push(p);
            if !oracle.contained(s, r)? {
                result.noncontainments.push(p);
                best = p.ratio();
                n_val = n_of(&best);
                break;
            }
        }
        r += 1;
    }
    // All pairs attaining the maximum lie in the final box.
    let mut r = 2u32;
    while qi(r as u64) < n_val {
        let hi = ceil_minus_one(&(qi((r + b) as u64) * &rho_hat)).min(h as u32 * r - 1);
        for s in (r + 1)..=hi {
            let p = Pair::new(s, r);
            if p.ratio() == best && !oracle.contained(s, r)? {
                result.maximizers.push(p);
                if !result.noncontainments.contains(&p) {
                    result.noncontainments.push(p);
                }
            }
        }
        r += 1;
    }
    result.rho = Some(best.clone());
    result.lower = best.clone();
    result.upper = best;
    result.status = Status::Exact;
    Ok(result)
}

/// Without an exact `ρ̂`, bracket `ρ` by `max λ_r/r` from below and the big
/// height from above.
fn interval_without_exact_rho_hat(
    oracle: &ContainmentOracle<'_>,
    mut result: ResurgenceResult,
    search_cap: u32,
) -> Result<ResurgenceResult> {
    let h = result.h as u32;
    for r in 2..=search_cap {
        let lambda = match lambda_r(oracle, r, h * r) {
            Ok(l) => l,
            Err(Error::ResourceExceeded { what, limit }) => {
                result.status = Status::Capped;
                result
                    .caveats
                    .push(format!("{what} exceeded {limit} at r={r}"));
                break;
            }
            Err(e) => return Err(e),
        };
        let p = Pair::new(lambda, r);
        let ratio = p.ratio();
        if ratio > result.lower {
            result.lower = ratio.clone();
            result.maximizers = vec![p];
            result.witness = Some(p);
        } else if ratio == result.lower {
            result.maximizers.push(p);
        }
        result.noncontainments.push(p);
    }
    Ok(result)
}

/// `λ_r = max{s : I^(s) ⊄ I^r}` given that `I^(hi) ⊆ I^r`.
fn lambda_r(oracle: &ContainmentOracle<'_>, r: u32, hi: u32) -> Result<u32> {
    // I^(r-1) ⊇ I^(r-1)... ⊄ I^r by degree, so lo is a noncontainment.
    let (mut lo, mut hi) = (r - 1, hi);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if oracle.contained(mid, r)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(lo)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContainmentTable {
    /// `(i, γ_i)`: largest `r` with `I^(i) ⊆ I^r`.
    pub gamma: Vec<(u32, u32)>,
    /// `(r, λ_r)`: largest `s` with `I^(s) ⊄ I^r`.
    pub lambda: Vec<(u32, u32)>,
}

/// `γ_i` for `i = 1..=n`.
pub fn gamma_table(scheme: &SymbolicScheme, n: u32, ws: &Workspace) -> Result<Vec<(u32, u32)>> {
    let oracle = ContainmentOracle::new(scheme, ws);
    (1..=n)
        .map(|i| {
            let mut r = 1;
            while oracle.contained(i, r + 1)? {
                r += 1;
            }
            Ok((i, r))
        })
        .collect()
}

/// `γ_s = min{Σ y_i γ_i : Σ i·y_i = s, y ∈ Z^n_{≥0}}`, the containment
/// predicted from `γ_1..γ_n` and a generating degree `n`.
pub fn predicted_gamma(gamma: &[(u32, u32)], s: u32) -> u32 {
    let mut best = vec![u32::MAX; s as usize + 1];
    best[0] = 0;
    for t in 1..=s as usize {
        for &(i, g) in gamma {
            let i = i as usize;
            if i <= t && best[t - i] != u32::MAX {
                best[t] = best[t].min(best[t - i] + g);
            }
        }
    }
    best[s as usize]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaBound {
    pub gamma: Vec<(u32, u32)>,
    /// Value of the linear program.
    #[serde(with = "crate::rational::serde_p_q")]
    pub v: Rational,
    /// `1/v`, an upper bound on `ρ(I)`.
    #[serde(with = "crate::rational::serde_p_q")]
    pub bound: Rational,
}

/// `ρ(I) ≤ 1/v` with `v = min Σ γ_i y_i` over `Σ i·y_i = 1`, `y ≥ 0`.
pub fn gamma_bound(scheme: &SymbolicScheme, n: u32, ws: &Workspace) -> Result<GammaBound> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let gamma = gamma_table(scheme, n, ws)?;
    let mut lp = LinearProgram::new(gamma.iter().map(|&(_, g)| qi(g as u64)).collect());
    lp.constrain(
        (1..=n).map(|i| qi(i as u64)).collect(),
        Relation::Eq,
        Rational::one(),
    );
    let v = lp.minimize()?.value;
    let bound = Rational::one() / &v;
    Ok(GammaBound { gamma, v, bound })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaBracket {
    pub r: u32,
    pub lambda: u32,
    /// `λ_r/(r+b) < ρ̂`.
    #[serde(with = "crate::rational::serde_p_q")]
    pub lower: Rational,
    /// `ρ̂ ≤ (λ_r+h)/r`.
    #[serde(with = "crate::rational::serde_p_q")]
    pub upper: Rational,
    /// `λ_r/r ≤ ρ`.
    #[serde(with = "crate::rational::serde_p_q")]
    pub rho_lower: Rational,
    /// `ρ ≤ (λ_r+h)/r·(1 + b/2)`.
    #[serde(with = "crate::rational::serde_p_q")]
    pub rho_upper: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaReport {
    pub b: u32,
    pub h: usize,
    pub brackets: Vec<LambdaBracket>,
    #[serde(with = "crate::rational::serde_p_q")]
    pub envelope_lower: Rational,
    #[serde(with = "crate::rational::serde_p_q")]
    pub envelope_upper: Rational,
    pub caveats: Vec<String>,
}

/// `λ_r` for the given `r` with the brackets they imply on `ρ̂` and `ρ`.
pub fn lambda_brackets(
    scheme: &SymbolicScheme,
    rs: &[u32],
    ws: &Workspace,
) -> Result<LambdaReport> {
    let i = scheme.source();
    let b = b_of(i, ws.limits())?.b;
    let h = scheme.big_height();
    let rho_hat = asymptotic_resurgence(scheme, ws)
        .ok()
        .filter(|a| a.exact)
        .map(|a| a.rho_hat);
    let oracle = ContainmentOracle::new(scheme, ws);
    let mut brackets = Vec::new();
    for &r in rs {
        if r == 0 {
            continue;
        }
        let mut hi = h as u32 * r;
        if let Some(rh) = &rho_hat {
            // s ≥ (r+b)ρ̂ forces containment
            hi = hi.min(ceil_minus_one(&(qi((r + b) as u64) * rh)) + 1);
        }
        let lambda = lambda_r(&oracle, r, hi.max(r))?;
        let upper = q(lambda as u64 + h as u64, r as u64);
        brackets.push(LambdaBracket {
            r,
            lambda,
            lower: q(lambda as u64, (r + b) as u64),
            rho_lower: q(lambda as u64, r as u64),
            rho_upper: &upper * (Rational::one() + q(b as u64, 2)),
            upper,
        });
    }
    let envelope_lower = brackets
        .iter()
        .map(|x| x.lower.clone())
        .max()
        .unwrap_or_else(Rational::zero);
    let envelope_upper = brackets
        .iter()
        .map(|x| x.upper.clone())
        .min()
        .unwrap_or_else(|| qi(h as u64));
    let mut caveats = Vec::new();
    if !i.is_squarefree() {
        caveats.push(HEIGHT_CAVEAT.to_string());
    }
    Ok(LambdaReport {
        b,
        h,
        brackets,
        envelope_lower,
        envelope_upper,
        caveats,
    })
}

/// Checks `I^(s) ⊆ closure(I^r)`. Squarefree schemes compare valuations,
/// `ν_w(I^(s)) ≥ r·ν_w(I)` for every Rees valuation; the witness is a
/// generator of `I^(s)` minimizing the failing valuation.
pub fn symbolic_in_closure(
    scheme: &SymbolicScheme,
    cl: &Closure,
    s: u32,
    r: u32,
    ws: &Workspace,
) -> Result<Containment> {
    if scheme.is_squarefree_mode() && s > 0 {
        let region = scheme.region(s);
        for f in &cl.polyhedron().facets {
            let w: Vec<u64> = f.normal.iter().map(|&x| x as u64).collect();
            let need = f.offset * r as u64;
            let lower = need.saturating_sub(1);
            if let Some((v, at)) = region.min_weight(&w, lower, ws.limits().max_search_nodes)? {
                if v < need {
                    // `min_weight` may stop at any point below `need`; report
                    // the first failing generator instead for determinism.
                    let _ = at;
                    return scheme
                        .first_generator_failing(s, ws, |m| f.value(m.exponents()) >= need);
                }
            }
        }
        return Ok(Containment::from_witness(None));
    }
    scheme.first_generator_failing(s, ws, |m| cl.contains(m, r))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContainmentBound {
    pub s: u32,
    pub r: u32,
    pub h: usize,
    #[serde(with = "crate::rational::serde_p_q")]
    pub bound: Rational,
    /// The bound is strict (`ρ̂ < bound`).
    pub strict: bool,
    pub caveats: Vec<String>,
}

fn radical_caveats(i: &MonomialIdeal) -> Vec<String> {
    if i.is_squarefree() {
        Vec::new()
    } else {
        vec![HEIGHT_CAVEAT.to_string()]
    }
}

/// `ρ̂(I) ≤ (s+h)/r`, after verifying `I^(s+1) ⊆ closure(I^r)`.
pub fn rho_hat_from_containment(
    scheme: &SymbolicScheme,
    s: u32,
    r: u32,
    ws: &Workspace,
) -> Result<ContainmentBound> {
    let i = scheme.source();
    if r == 0 {
        return Err(Error::InvalidArgument("r must be positive".into()));
    }
    let cl = Closure::new(i, ws.limits())?;
    let c = symbolic_in_closure(scheme, &cl, s + 1, r, ws)?;
    if !c.holds {
        return Err(Error::HypothesisFailed {
            reason: format!("I^({}) is not contained in the closure of I^{r}", s + 1),
            witness: c.witness,
        });
    }
    let h = scheme.big_height();
    Ok(ContainmentBound {
        s,
        r,
        h,
        bound: q(s as u64 + h as u64, r as u64),
        strict: false,
        caveats: radical_caveats(i),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedCertificate {
    pub h: usize,
    /// Smallest `r` with `I^(rh-h) ⊆ closure(I^r)`, if any up to the cap.
    pub r: Option<u32>,
    /// `(rh-1)/r`, the implied bound on `ρ̂`.
    #[serde(with = "crate::rational::serde_p_q_opt")]
    pub rho_hat_bound: Option<Rational>,
    /// `ρ(I) < h` is certified.
    pub expected_resurgence: bool,
}

/// Smallest `r ≤ r_max` with `I^(rh−h) ⊆ closure(I^r)`, certifying `ρ < h`.
pub fn expected_resurgence_certificate(
    scheme: &SymbolicScheme,
    r_max: u32,
    ws: &Workspace,
) -> Result<ExpectedCertificate> {
    let i = scheme.source();
    if !i.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let h = scheme.big_height();
    let cl = Closure::new(i, ws.limits())?;
    let mut found = None;
    if h >= 2 {
        for r in 2..=r_max {
            let s = r * h as u32 - h as u32;
            if symbolic_in_closure(scheme, &cl, s, r, ws)?.holds {
                found = Some(r);
                break;
            }
        }
    }
    Ok(ExpectedCertificate {
        h,
        r: found,
        rho_hat_bound: found.map(|r| q(r as u64 * h as u64 - 1, r as u64)),
        expected_resurgence: found.is_some(),
    })
}

/// Centers of Rees valuations that are not minimal primes of `I`.
pub fn embedded_centers(i: &MonomialIdeal, ws: &Workspace) -> Result<Vec<PrimeSupport>> {
    let cl = Closure::new(i, ws.limits())?;
    let minimal = minimal_primes(i)?;
    let mut out: Vec<PrimeSupport> = cl
        .polyhedron()
        .facets
        .iter()
        .map(|h| PrimeSupport::new(h.support()))
        .filter(|p| !minimal.contains(p))
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Intersection of the embedded centers; the unit ideal if there are none.
pub fn embedded_center_ideal(i: &MonomialIdeal, ws: &Workspace) -> Result<MonomialIdeal> {
    let primes: Vec<MonomialIdeal> = embedded_centers(i, ws)?
        .iter()
        .map(|p| MonomialIdeal::prime(i.nvars(), p))
        .collect();
    MonomialIdeal::intersect_all(i.nvars(), primes.iter(), ws.limits().max_generators)
}

/// `m ∈ A·closure(I^r)`: some generator `g` of `A` divides `m` with
/// `m/g ∈ closure(I^r)`.
fn in_product_with_closure(m: &Monomial, a: &MonomialIdeal, cl: &Closure, r: u32) -> bool {
    a.gens()
        .iter()
        .any(|g| m.checked_div(g).is_some_and(|rest| cl.contains(&rest, r)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrictBound {
    pub j: MonomialIdeal,
    /// No embedded centers: every Rees valuation is centered on a minimal
    /// prime, so `ρ̂ = 1`.
    pub shortcut_rho_hat_one: bool,
    pub bound: Option<ContainmentBound>,
    /// `s = rh − h`, so `ρ(I) < h` is certified.
    pub certifies_expected: bool,
}

/// `ρ̂(I) < (s+h)/r` after verifying `I^(s+1) ⊆ J·closure(I^r)`.
pub fn strict_bound(
    scheme: &SymbolicScheme,
    s: u32,
    r: u32,
    ws: &Workspace,
) -> Result<StrictBound> {
    let i = scheme.source();
    let j = embedded_center_ideal(i, ws)?;
    if j.is_unit() {
        return Ok(StrictBound {
            j,
            shortcut_rho_hat_one: true,
            bound: None,
            certifies_expected: false,
        });
    }
    let cl = Closure::new(i, ws.limits())?;
    let c =
        scheme.first_generator_failing(s + 1, ws, |m| in_product_with_closure(m, &j, &cl, r))?;
    if !c.holds {
        return Err(Error::HypothesisFailed {
            reason: format!(
                "I^({}) is not contained in J times the closure of I^{r}",
                s + 1
            ),
            witness: c.witness,
        });
    }
    let h = scheme.big_height();
    Ok(StrictBound {
        j,
        shortcut_rho_hat_one: false,
        bound: Some(ContainmentBound {
            s,
            r,
            h,
            bound: q(s as u64 + h as u64, r as u64),
            strict: true,
            caveats: radical_caveats(i),
        }),
        certifies_expected: s as usize + h == r as usize * h,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChudnovskyLine {
    pub weight: Halfspace,
    pub nu_i: u64,
    pub nu_j: u64,
    /// `r(ν(I) + C·ν(J))/(s+h)`.
    #[serde(with = "crate::rational::serde_p_q")]
    pub implied_lower: Rational,
    #[serde(with = "crate::rational::serde_p_q")]
    pub nu_hat: Rational,
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChudnovskyReport {
    pub s: u32,
    pub r: u32,
    pub c: u32,
    pub h: usize,
    pub j: MonomialIdeal,
    pub lines: Vec<ChudnovskyLine>,
    pub caveats: Vec<String>,
}

/// After verifying `I^(s+1) ⊆ J^{rC}·closure(I^r)`, reports for each Rees
/// valuation the implied lower bound on `ν̂` next to its computed value.
pub fn chudnovsky_type_bound(
    scheme: &SymbolicScheme,
    s: u32,
    r: u32,
    c: u32,
    ws: &Workspace,
) -> Result<ChudnovskyReport> {
    let i = scheme.source();
    let j = embedded_center_ideal(i, ws)?;
    let jp = ws.power(&j, r * c)?;
    let cl = Closure::new(i, ws.limits())?;
    let hold =
        scheme.first_generator_failing(s + 1, ws, |m| in_product_with_closure(m, &jp, &cl, r))?;
    if !hold.holds {
        return Err(Error::HypothesisFailed {
            reason: format!(
                "I^({}) is not contained in J^{} times the closure of I^{r}",
                s + 1,
                r * c
            ),
            witness: hold.witness,
        });
    }
    let h = scheme.big_height();
    let lines = cl
        .polyhedron()
        .facets
        .iter()
        .map(|f| {
            let nu_i = nu(i, &f.normal)?;
            let nu_j = nu(&j, &f.normal)?;
            let implied_lower = q(r as u64 * (nu_i + c as u64 * nu_j), s as u64 + h as u64);
            let nu_hat = scheme.nu_hat(&f.normal, ws)?.value;
            Ok(ChudnovskyLine {
                weight: f.clone(),
                nu_i,
                nu_j,
                consistent: implied_lower <= nu_hat,
                implied_lower,
                nu_hat,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ChudnovskyReport {
        s,
        r,
        c,
        h,
        j,
        lines,
        caveats: radical_caveats(i),
    })
}

/// `T_r = ∩_i (Q_i^[r] + <π(Q_i^{r-1})>)` for a list of components `Q_i`.
pub fn diagnostic_t(components: &[MonomialIdeal], r: u32, ws: &Workspace) -> Result<MonomialIdeal> {
    let n = components
        .first()
        .map(MonomialIdeal::nvars)
        .ok_or_else(|| Error::InvalidArgument("no components".into()))?;
    let parts = components
        .iter()
        .map(|qc| {
            let pi = ws.power(qc, r.saturating_sub(1))?.pi()?;
            qc.bracket_power(r).sum(&MonomialIdeal::principal(pi))
        })
        .collect::<Result<Vec<_>>>()?;
    MonomialIdeal::intersect_all(n, parts.iter(), ws.limits().max_generators)
}

/// `x^a ∈ I^r`, a convenience used by reports.
pub fn in_ordinary_power(m: &Monomial, i: &MonomialIdeal, r: u32) -> bool {
    monomial_in_power(m, i, r)
}
