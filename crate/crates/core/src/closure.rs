//! Integral closures of powers, the constant `b(I)`, the generation degree of
//! the normalized Rees algebra and the statistics `K_r`.
//!
//! `x^a ∈ closure(I^r)` iff `a ∈ r·NP(I)`, i.e. `w·a ≥ r·c` for every Rees
//! valuation `(w, c)`. Generators of `closure(I^r)` are the minimal lattice
//! points of that region.

use std::ops::ControlFlow;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::hilbert_generation_degree;
use crate::ideal::MonomialIdeal;
use crate::lattice::UpRegion;
use crate::membership::{monomial_in_power, Containment, Limits};
use crate::monomial::Monomial;
use crate::polyhedron::{newton_polyhedron_capped, NewtonPolyhedron};
use crate::rational::Rational;

/// Budget of fundamental-parallelepiped points for the Hilbert basis.
pub const HILBERT_CANDIDATE_CAP: usize = 5_000_000;

/// An ideal together with its Newton polyhedron.
#[derive(Clone, Debug)]
pub struct Closure {
    ideal: MonomialIdeal,
    np: NewtonPolyhedron,
}

impl Closure {
    pub fn new(i: &MonomialIdeal, limits: &Limits) -> Result<Self> {
        Ok(Closure {
            ideal: i.clone(),
            np: newton_polyhedron_capped(i, limits.max_facets)?,
        })
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    pub fn polyhedron(&self) -> &NewtonPolyhedron {
        &self.np
    }

    /// `m ∈ closure(I^r)`.
    pub fn contains(&self, m: &Monomial, r: u32) -> bool {
        self.np.contains_scaled(m.exponents(), r)
    }

    /// The region `r·NP(I)`. Offsets are scaled by `r`.
    pub fn region(&self, r: u32) -> UpRegion {
        let rows = self
            .np
            .facets
            .iter()
            .map(|h| h.normal.iter().map(|&w| w as u64).collect())
            .collect();
        let rhs = self.np.facets.iter().map(|h| h.offset * r as u64).collect();
        UpRegion::new(self.ideal.nvars(), rows, rhs)
    }

    /// Minimal generators of `closure(I^r)`.
    pub fn power(&self, r: u32, limits: &Limits) -> Result<MonomialIdeal> {
        if self.ideal.is_unit() || r == 0 {
            return Ok(MonomialIdeal::unit(self.ideal.nvars()));
        }
        let pts = self
            .region(r)
            .minimal_points(limits.max_generators, limits.max_search_nodes)?;
        let gens = pts.into_iter().map(Monomial::new).collect();
        Ok(MonomialIdeal::from_minimal_unchecked(
            self.ideal.nvars(),
            gens,
        ))
    }

    /// `closure(I^j) ⊆ I^r`, with the first failing generator.
    pub fn contained_in_power(&self, j: u32, r: u32, limits: &Limits) -> Result<Containment> {
        if j == 0 {
            let one = Monomial::one(self.ideal.nvars());
            let holds = monomial_in_power(&one, &self.ideal, r);
            return Ok(Containment::from_witness((!holds).then_some(one)));
        }
        let mut witness = None;
        self.region(j)
            .for_each_minimal(limits.max_search_nodes, |a| {
                let m = Monomial::from(a);
                if monomial_in_power(&m, &self.ideal, r) {
                    ControlFlow::Continue(())
                } else {
                    witness = Some(m);
                    ControlFlow::Break(())
                }
            })?;
        Ok(Containment::from_witness(witness))
    }

    /// `m ∈ Σ_{1≤i≤⌊k/2⌋} closure(I^i)·closure(I^{k-i})`.
    fn decomposes(&self, m: &Monomial, k: u32, lower: &[MonomialIdeal]) -> bool {
        (1..=k / 2).any(|i| {
            lower[i as usize].gens().iter().any(|h| {
                m.checked_div(h)
                    .is_some_and(|rest| self.contains(&rest, k - i))
            })
        })
    }
}

pub fn closure_power(i: &MonomialIdeal, r: u32, limits: &Limits) -> Result<MonomialIdeal> {
    if i.is_zero() {
        return Ok(i.clone());
    }
    Closure::new(i, limits)?.power(r, limits)
}

pub fn in_closure(m: &Monomial, i: &MonomialIdeal, r: u32) -> Result<bool> {
    if i.is_zero() {
        return Ok(r == 0);
    }
    Ok(Closure::new(i, &Limits::default())?.contains(m, r))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DegreeMethod {
    HilbertBasis,
    RegenerationWindow,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReesDegree {
    pub degree: u32,
    /// `false` when the value is an assumed cap rather than a proven degree.
    pub verified: bool,
    pub method: DegreeMethod,
}

/// Generation degree of the normalized Rees algebra, exact via the Hilbert
/// basis; if that exceeds its budget, the regeneration window is used.
pub fn rees_generation_degree(i: &MonomialIdeal, limits: &Limits) -> Result<ReesDegree> {
    proper(i)?;
    match hilbert_generation_degree(i, HILBERT_CANDIDATE_CAP, limits.max_facets) {
        Ok(degree) => Ok(ReesDegree {
            degree,
            verified: true,
            method: DegreeMethod::HilbertBasis,
        }),
        Err(Error::ResourceExceeded { .. }) | Err(Error::Overflow(_)) => {
            let cap = limits
                .rees_cap
                .unwrap_or((i.nvars() as u32).saturating_sub(1))
                .max(1);
            regeneration_degree(i, cap, limits)
        }
        Err(e) => Err(e),
    }
}

/// Smallest `d ≤ cap` such that no closure power `closure(I^m)` with
/// `d < m ≤ cap + d` has a generator outside the products of lower closure
/// powers. If none qualifies, returns `cap` unverified.
pub fn regeneration_degree(i: &MonomialIdeal, cap: u32, limits: &Limits) -> Result<ReesDegree> {
    proper(i)?;
    let cap = cap.max(1);
    let cl = Closure::new(i, limits)?;
    let top = 2 * cap;
    let mut powers = vec![MonomialIdeal::unit(i.nvars())];
    let mut new_gens = vec![false; top as usize + 1];
    for k in 1..=top {
        let p = cl.power(k, limits)?;
        if k >= 2 {
            new_gens[k as usize] = p.gens().iter().any(|m| !cl.decomposes(m, k, &powers));
        }
        powers.push(p);
    }
    let found = (1..=cap).find(|&d| (d + 1..=cap + d).all(|m| !new_gens[m as usize]));
    Ok(match found {
        Some(d) => ReesDegree {
            degree: d,
            verified: true,
            method: DegreeMethod::RegenerationWindow,
        },
        None => ReesDegree {
            degree: cap,
            verified: false,
            method: DegreeMethod::RegenerationWindow,
        },
    })
}

fn proper(i: &MonomialIdeal) -> Result<()> {
    if i.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    if i.is_unit() {
        return Err(Error::UnitIdeal);
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureProfile {
    pub rees_degree: ReesDegree,
    /// Smallest `k` with `closure(I^{r+k}) ⊆ I^r` for all `r ≥ 1`.
    pub b: u32,
    /// `false` if `b` fell back to the Briançon-Skoda cap.
    pub b_verified: bool,
    pub briancon_skoda_cap: u32,
}

/// `b(I)` from the window `closure(I^j) ⊆ I^{j-k}` for `k < j ≤ k + d`.
///
/// Sufficient because `closure(I^m) = I^{m-d}·closure(I^d)` for `m ≥ d`.
pub fn b_of(i: &MonomialIdeal, limits: &Limits) -> Result<ClosureProfile> {
    proper(i)?;
    let rees_degree = rees_generation_degree(i, limits)?;
    let cl = Closure::new(i, limits)?;
    let cap = (i.nvars() as u32).saturating_sub(1);
    if rees_degree.verified {
        let d = rees_degree.degree;
        for k in 0..=cap {
            let mut ok = true;
            for j in k + 1..=k + d {
                if !cl.contained_in_power(j, j - k, limits)?.holds {
                    ok = false;
                    break;
                }
            }
            if ok {
                return Ok(ClosureProfile {
                    rees_degree,
                    b: k,
                    b_verified: true,
                    briancon_skoda_cap: cap,
                });
            }
        }
    }
    Ok(ClosureProfile {
        rees_degree,
        b: cap,
        b_verified: false,
        briancon_skoda_cap: cap,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KStatistics {
    /// `(r, K_r)` with `K_r = min{s : closure(I^s) ⊆ I^r}`.
    pub k: Vec<(u32, u32)>,
    /// `max K_r / r` over the computed window.
    #[serde(with = "crate::rational::serde_p_q")]
    pub k_estimate: Rational,
    /// `1 + b/2`.
    #[serde(with = "crate::rational::serde_p_q")]
    pub k_bound: Rational,
}

pub fn k_statistics(i: &MonomialIdeal, r_max: u32, b: u32, limits: &Limits) -> Result<KStatistics> {
    proper(i)?;
    let cl = Closure::new(i, limits)?;
    let mut k = Vec::new();
    for r in 1..=r_max {
        let mut s = r;
        while !cl.contained_in_power(s, r, limits)?.holds {
            s += 1;
        }
        k.push((r, s));
    }
    let k_estimate = k
        .iter()
        .map(|&(r, s)| Rational::new(BigInt::from(s), BigInt::from(r)))
        .max()
        .unwrap_or_else(|| Rational::from_integer(BigInt::from(1)));
    let k_bound =
        Rational::from_integer(BigInt::from(1)) + Rational::new(BigInt::from(b), BigInt::from(2));
    Ok(KStatistics {
        k,
        k_estimate,
        k_bound,
    })
}
