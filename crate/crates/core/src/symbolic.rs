//! Symbolic powers, valuations on them, `ν̂` and Waldschmidt constants.
//!
//! For a squarefree ideal `x^a ∈ I^(s)` iff `Σ_{i∈P} a_i ≥ s` for every
//! minimal prime `P`, so generators are minimal lattice points and valuations
//! are integer programs. Otherwise `I^(s) = ∩_P (I_P)^s`, where `I_P` sets
//! every variable outside `P` to one.

use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::decompose::{associated_primes, minimal_primes, PrimeSupport};
use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::lattice::UpRegion;
use crate::lp::{LinearProgram, Relation};
use crate::membership::{monomial_in_power, Containment, Workspace};
use crate::monomial::Monomial;
use crate::polyhedron::Halfspace;
use crate::rational::{self, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SymbolicMode {
    /// Intersection of powers of minimal primes; squarefree input only.
    #[serde(rename = "sqfree")]
    Squarefree,
    /// Intersection over all associated primes.
    #[serde(rename = "ass")]
    Associated,
    /// Intersection over minimal primes only.
    #[serde(rename = "minprimes")]
    MinimalPrimes,
    /// Intersection over the radicals of user-supplied components.
    #[serde(rename = "components")]
    Components,
}

#[derive(Clone, Debug)]
pub struct SymbolicScheme {
    source: MonomialIdeal,
    mode: SymbolicMode,
    primes: Vec<PrimeSupport>,
    localized: Vec<MonomialIdeal>,
    components: Vec<MonomialIdeal>,
    generating_degree: Option<u32>,
    c_value: Option<u32>,
}

impl SymbolicScheme {
    /// Squarefree mode for squarefree ideals, associated primes otherwise.
    pub fn new(i: &MonomialIdeal) -> Result<Self> {
        let mode = if i.is_squarefree() {
            SymbolicMode::Squarefree
        } else {
            SymbolicMode::Associated
        };
        Self::with_mode(i, mode)
    }

    pub fn with_mode(i: &MonomialIdeal, mode: SymbolicMode) -> Result<Self> {
        let primes = match mode {
            SymbolicMode::Squarefree => {
                if !i.is_squarefree() {
                    return Err(Error::NotSquarefree);
                }
                minimal_primes(i)?
            }
            SymbolicMode::Associated => associated_primes(i)?,
            SymbolicMode::MinimalPrimes => minimal_primes(i)?,
            SymbolicMode::Components => {
                return Err(Error::InvalidArgument(
                    "components mode needs the components".into(),
                ))
            }
        };
        Ok(Self::assemble(i, mode, primes, Vec::new()))
    }

    /// Uses the radicals of `components`, which must intersect to `I`.
    pub fn with_components(i: &MonomialIdeal, components: Vec<MonomialIdeal>) -> Result<Self> {
        for q in &components {
            i.check_ambient(q)?;
        }
        let back = MonomialIdeal::intersect_all(i.nvars(), components.iter(), usize::MAX)?;
        if back != *i || components.is_empty() {
            return Err(Error::ComponentMismatch);
        }
        let mut primes: Vec<PrimeSupport> = components
            .iter()
            .map(|q| PrimeSupport::new(q.gens().iter().flat_map(|g| g.support()).collect()))
            .collect();
        primes.sort();
        primes.dedup();
        Ok(Self::assemble(
            i,
            SymbolicMode::Components,
            primes,
            components,
        ))
    }

    fn assemble(
        i: &MonomialIdeal,
        mode: SymbolicMode,
        primes: Vec<PrimeSupport>,
        components: Vec<MonomialIdeal>,
    ) -> Self {
        let localized = primes.iter().map(|p| i.localize_contract(p)).collect();
        SymbolicScheme {
            source: i.clone(),
            mode,
            primes,
            localized,
            components,
            generating_degree: None,
            c_value: None,
        }
    }

    /// A known generating degree of the symbolic Rees algebra.
    pub fn with_generating_degree(mut self, n: u32) -> Self {
        self.generating_degree = Some(n);
        self
    }

    /// A value `c` with `I^(cn) = (I^(c))^n` for all `n`.
    pub fn with_c_value(mut self, c: u32) -> Self {
        self.c_value = Some(c);
        self
    }

    pub fn source(&self) -> &MonomialIdeal {
        &self.source
    }

    pub fn mode(&self) -> SymbolicMode {
        self.mode
    }

    pub fn primes(&self) -> &[PrimeSupport] {
        &self.primes
    }

    pub fn components(&self) -> &[MonomialIdeal] {
        &self.components
    }

    pub fn generating_degree(&self) -> Option<u32> {
        self.generating_degree
    }

    pub fn c_value(&self) -> Option<u32> {
        self.c_value
    }

    pub fn is_squarefree_mode(&self) -> bool {
        self.mode == SymbolicMode::Squarefree
    }

    /// Largest height of a prime in the scheme.
    pub fn big_height(&self) -> usize {
        self.primes
            .iter()
            .map(PrimeSupport::height)
            .max()
            .unwrap_or(0)
    }

    pub(crate) fn region(&self, s: u32) -> UpRegion {
        let n = self.source.nvars();
        let rows = self
            .primes
            .iter()
            .map(|p| {
                let mut row = vec![0u64; n];
                for &i in p.vars() {
                    row[i] = 1;
                }
                row
            })
            .collect();
        UpRegion::new(n, rows, vec![s as u64; self.primes.len()])
    }

    /// `m ∈ I^(s)` without materializing generators.
    pub fn contains(&self, m: &Monomial, s: u32) -> bool {
        if s == 0 {
            return true;
        }
        if self.is_squarefree_mode() {
            return self.region(s).contains(m.exponents());
        }
        self.primes
            .iter()
            .zip(&self.localized)
            .all(|(p, ip)| monomial_in_power(&m.restrict(p.vars()), ip, s))
    }

    /// Minimal generators of `I^(s)`; `s = 0` gives the unit ideal.
    pub fn power(&self, s: u32, ws: &Workspace) -> Result<MonomialIdeal> {
        let n = self.source.nvars();
        if s == 0 {
            return Ok(MonomialIdeal::unit(n));
        }
        let limits = ws.limits();
        if self.is_squarefree_mode() {
            let pts = self
                .region(s)
                .minimal_points(limits.max_generators, limits.max_search_nodes)?;
            let gens = pts.into_iter().map(Monomial::new).collect();
            return Ok(MonomialIdeal::from_minimal_unchecked(n, gens));
        }
        let mut acc = MonomialIdeal::unit(n);
        for ip in &self.localized {
            let p = ws.power(ip, s)?;
            acc = acc.intersect_capped(&p, limits.max_generators)?;
        }
        Ok(acc)
    }

    /// Visits generators of `I^(s)` in lexicographic order until `visit`
    /// breaks. Squarefree mode streams them without storing the ideal.
    pub fn for_each_generator<F>(&self, s: u32, ws: &Workspace, mut visit: F) -> Result<()>
    where
        F: FnMut(&Monomial) -> ControlFlow<()>,
    {
        if self.is_squarefree_mode() && s > 0 {
            self.region(s)
                .for_each_minimal(ws.limits().max_search_nodes, |a| visit(&Monomial::from(a)))?;
            return Ok(());
        }
        for g in self.power(s, ws)?.gens() {
            if visit(g).is_break() {
                break;
            }
        }
        Ok(())
    }

    /// `I^(s) ⊆ J^r`, with the first failing generator of `I^(s)`.
    pub fn containment_in_power(
        &self,
        s: u32,
        j: &MonomialIdeal,
        r: u32,
        ws: &Workspace,
    ) -> Result<Containment> {
        self.source.check_ambient(j)?;
        self.first_generator_failing(s, ws, |m| monomial_in_power(m, j, r))
    }

    /// First generator of `I^(s)` (lexicographic) for which `pred` fails.
    /// Generators are tested in parallel batches.
    pub fn first_generator_failing<P>(&self, s: u32, ws: &Workspace, pred: P) -> Result<Containment>
    where
        P: Fn(&Monomial) -> bool + Sync,
    {
        const BATCH: usize = 8192;
        let mut batch: Vec<Monomial> = Vec::with_capacity(BATCH);
        let mut witness = None;
        let check = |batch: &[Monomial]| -> Option<Monomial> {
            batch.par_iter().find_first(|m| !pred(m)).cloned()
        };
        self.for_each_generator(s, ws, |m| {
            batch.push(m.clone());
            if batch.len() == BATCH {
                witness = check(&batch);
                batch.clear();
                if witness.is_some() {
                    return ControlFlow::Break(());
                }
            }
            ControlFlow::Continue(())
        })?;
        if witness.is_none() && !batch.is_empty() {
            witness = check(&batch);
        }
        Ok(Containment::from_witness(witness))
    }

    /// `ν_w(I^(s))`.
    pub fn nu_of_power(&self, w: &[u32], s: u32, ws: &Workspace) -> Result<u64> {
        if s == 0 {
            return Ok(0);
        }
        if self.is_squarefree_mode() {
            let lp = self.nu_hat_program(w);
            let floor = match lp.minimize() {
                Ok(sol) => {
                    rational::ceil_u64(&(sol.value * Rational::from_integer(BigInt::from(s))))
                        .unwrap_or(0)
                }
                Err(_) => 0,
            };
            let w64: Vec<u64> = w.iter().map(|&x| x as u64).collect();
            return self
                .region(s)
                .min_weight(&w64, floor, ws.limits().max_search_nodes)?
                .map(|(v, _)| v)
                .ok_or(Error::ZeroIdeal);
        }
        crate::polyhedron::nu(&self.power(s, ws)?, w)
    }

    /// `min w·a` subject to `Σ_{i∈P} a_i ≥ 1` for every prime, `a ≥ 0`.
    pub fn nu_hat_program(&self, w: &[u32]) -> LinearProgram {
        let n = self.source.nvars();
        let mut lp = LinearProgram::new(
            w.iter()
                .map(|&x| Rational::from_integer(BigInt::from(x)))
                .collect(),
        );
        for p in &self.primes {
            let mut row = vec![Rational::zero(); n];
            for &i in p.vars() {
                row[i] = Rational::one();
            }
            lp.constrain(row, Relation::Ge, Rational::one());
        }
        lp
    }

    /// `ν̂_w(I) = lim ν_w(I^(s))/s`.
    pub fn nu_hat(&self, w: &[u32], ws: &Workspace) -> Result<NuHat> {
        let nu_i = crate::polyhedron::nu(&self.source, w)?;
        if nu_i == 0 {
            return Err(Error::UnsupportedValuation);
        }
        if self.is_squarefree_mode() {
            let lp = self.nu_hat_program(w);
            let sol = lp.minimize()?;
            let certified = lp.verify_dual_certificate(&sol.dual, &sol.value);
            return Ok(NuHat {
                value: sol.value,
                exact: certified,
                method: NuHatMethod::LinearProgram,
                upto: None,
            });
        }
        if let Some(c) = self.c_value {
            let v = self.nu_of_power(w, c, ws)?;
            return Ok(NuHat {
                value: ratio(v, c as u64),
                exact: true,
                method: NuHatMethod::CValue,
                upto: Some(c),
            });
        }
        if let Some(n) = self.generating_degree {
            return self.nu_hat_by_powers(w, n, NuHatMethod::GeneratingDegree, true, ws);
        }
        let lp = self.polyhedral_program(w, ws)?;
        let sol = lp.minimize()?;
        let certified = lp.verify_dual_certificate(&sol.dual, &sol.value);
        Ok(NuHat {
            value: sol.value,
            exact: certified,
            method: NuHatMethod::PolyhedralProgram,
            upto: None,
        })
    }

    /// `min_{m ≤ upto} ν(I^(m))/m`, an upper bound for `ν̂` in general.
    pub fn nu_hat_upper_bound(&self, w: &[u32], upto: u32, ws: &Workspace) -> Result<NuHat> {
        self.nu_hat_by_powers(w, upto, NuHatMethod::UpperBound, false, ws)
    }

    /// `min w·a` over `a ∈ NP(I_P)` for every prime `P` of the scheme.
    ///
    /// Lattice points of `s·NP(I_P)` lie in `closure(I_P^s) ⊆ I_P^{s-k}` for a
    /// fixed `k`, so this is the limit of `ν(I^(s))/s`.
    pub fn polyhedral_program(&self, w: &[u32], ws: &Workspace) -> Result<LinearProgram> {
        let n = self.source.nvars();
        let mut lp = LinearProgram::new(
            w.iter()
                .map(|&x| Rational::from_integer(BigInt::from(x)))
                .collect(),
        );
        for ip in &self.localized {
            let np = crate::polyhedron::newton_polyhedron_capped(ip, ws.limits().max_facets)?;
            for f in &np.facets {
                let row = (0..n)
                    .map(|i| Rational::from_integer(BigInt::from(f.normal[i])))
                    .collect();
                lp.constrain(
                    row,
                    Relation::Ge,
                    Rational::from_integer(BigInt::from(f.offset)),
                );
            }
        }
        Ok(lp)
    }

    fn nu_hat_by_powers(
        &self,
        w: &[u32],
        upto: u32,
        method: NuHatMethod,
        exact: bool,
        ws: &Workspace,
    ) -> Result<NuHat> {
        let upto = upto.max(1);
        let mut best: Option<Rational> = None;
        for m in 1..=upto {
            let q = ratio(self.nu_of_power(w, m, ws)?, m as u64);
            if best.as_ref().is_none_or(|b| q < *b) {
                best = Some(q);
            }
        }
        Ok(NuHat {
            value: best.expect("upto >= 1"),
            exact,
            method,
            upto: Some(upto),
        })
    }

    /// Waldschmidt constant: `ν̂` of the total degree.
    pub fn waldschmidt(&self, ws: &Workspace) -> Result<NuHat> {
        self.nu_hat(&vec![1; self.source.nvars()], ws)
    }

    /// Checks `I^(cn) = (I^(c))^n` for `n = 2..=n_max`.
    pub fn c_shortcut_holds(&self, c: u32, n_max: u32, ws: &Workspace) -> Result<bool> {
        let ic = self.power(c, ws)?;
        for n in 2..=n_max {
            let lhs = self.power(c * n, ws)?;
            let rhs = ws.power(&ic, n)?;
            if lhs != *rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// For `i = 1..=c_max`: whether `(I^(i))^2 = I^(2i)`, with a generator of
    /// `I^(2i)` outside `(I^(i))^2` when not.
    pub fn noetherian_power_test(&self, c_max: u32, ws: &Workspace) -> Result<Vec<PowerTest>> {
        (1..=c_max)
            .map(|i| {
                let base = self.power(i, ws)?;
                let c =
                    self.first_generator_failing(2 * i, ws, |m| monomial_in_power(m, &base, 2))?;
                Ok(PowerTest {
                    i,
                    equal: c.holds,
                    witness: c.witness,
                })
            })
            .collect()
    }

    /// Profile of one valuation: `ν(I)`, `ν̂(I)` and their ratio.
    pub fn valuation_profile(&self, h: &Halfspace, ws: &Workspace) -> Result<ValuationProfile> {
        let nu_i = crate::polyhedron::nu(&self.source, &h.normal)?;
        let nh = self.nu_hat(&h.normal, ws)?;
        let center = PrimeSupport::new(h.support());
        let center_is_minimal = self.primes.contains(&center)
            && minimal_primes(&self.source).is_ok_and(|mp| mp.contains(&center));
        Ok(ValuationProfile {
            weight: h.clone(),
            nu_i,
            ratio: ratio(nu_i, 1) / &nh.value,
            nu_hat: nh.value,
            nu_hat_exact: nh.exact,
            center,
            center_is_minimal,
        })
    }
}

/// Depth of the `ν(I^(s))/s` sequence when no generating degree is known.
pub const DEFAULT_BOUND_DEPTH: u32 = 8;

fn ratio(p: u64, q: u64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NuHatMethod {
    LinearProgram,
    /// Linear program over the Newton polyhedra of the localizations.
    PolyhedralProgram,
    GeneratingDegree,
    CValue,
    /// `min_{s ≤ upto} ν(I^(s))/s`, an upper bound only.
    UpperBound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NuHat {
    #[serde(with = "crate::rational::serde_p_q")]
    pub value: Rational,
    pub exact: bool,
    pub method: NuHatMethod,
    pub upto: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerTest {
    pub i: u32,
    pub equal: bool,
    pub witness: Option<Monomial>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValuationProfile {
    pub weight: Halfspace,
    pub nu_i: u64,
    #[serde(with = "crate::rational::serde_p_q")]
    pub nu_hat: Rational,
    pub nu_hat_exact: bool,
    #[serde(with = "crate::rational::serde_p_q")]
    pub ratio: Rational,
    pub center: PrimeSupport,
    pub center_is_minimal: bool,
}

/// `m ∈ I^(s)` for squarefree `I`.
pub fn symbolic_membership(m: &Monomial, i: &MonomialIdeal, s: u32) -> Result<bool> {
    if !i.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    Ok(SymbolicScheme::with_mode(i, SymbolicMode::Squarefree)?.contains(m, s))
}

pub fn symbolic_power(i: &MonomialIdeal, s: u32, ws: &Workspace) -> Result<MonomialIdeal> {
    SymbolicScheme::new(i)?.power(s, ws)
}

pub fn waldschmidt(i: &MonomialIdeal, ws: &Workspace) -> Result<NuHat> {
    SymbolicScheme::new(i)?.waldschmidt(ws)
}
