//! Membership in ordinary powers, containment of ideals in powers, and the
//! per-session [`Workspace`] that carries resource limits and power caches.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::ideal::{MonomialIdeal, DEFAULT_GENERATOR_CAP};
use crate::monomial::Monomial;

/// Resource caps shared by every heavy operation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Maximum number of generators of any intermediate ideal.
    pub max_generators: usize,
    /// Maximum number of nodes visited by one lattice-point search.
    pub max_search_nodes: u64,
    /// Maximum number of facets / extreme rays in hull computations.
    pub max_facets: usize,
    /// Cap for the regeneration-window fallback of the Rees generation
    /// degree; `None` uses `nvars - 1`.
    pub rees_cap: Option<u32>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_generators: DEFAULT_GENERATOR_CAP,
            max_search_nodes: 2_000_000_000,
            max_facets: 100_000,
            rees_cap: None,
        }
    }
}

/// `m ∈ I^r`: is there a multiset of `r` generators whose product divides `m`?
///
/// Depth-first search over generator multiplicities, pruned by how many more
/// copies of the remaining generators can still fit under `m`.
pub fn monomial_in_power(m: &Monomial, i: &MonomialIdeal, r: u32) -> bool {
    if r == 0 {
        return true;
    }
    let usable: Vec<&[u32]> = i
        .gens()
        .iter()
        .filter(|g| g.divides(m))
        .map(|g| g.exponents())
        .collect();
    if usable.is_empty() {
        return false;
    }
    if usable[0].iter().all(|&e| e == 0) {
        // unit ideal
        return true;
    }
    let mut residual: Vec<u32> = m.exponents().to_vec();
    fits(&usable, 0, r, &mut residual)
}

fn max_copies(g: &[u32], residual: &[u32]) -> u32 {
    g.iter()
        .zip(residual)
        .filter(|(&e, _)| e > 0)
        .map(|(&e, &r)| r / e)
        .min()
        .unwrap_or(u32::MAX)
}

fn fits(gens: &[&[u32]], k: usize, need: u32, residual: &mut [u32]) -> bool {
    if need == 0 {
        return true;
    }
    if k == gens.len() {
        return false;
    }
    let mut total = 0u64;
    for g in &gens[k..] {
        total += max_copies(g, residual).min(need) as u64;
        if total >= need as u64 {
            break;
        }
    }
    if total < need as u64 {
        return false;
    }
    let g = gens[k];
    let top = max_copies(g, residual).min(need);
    for c in (0..=top).rev() {
        for (r, &e) in residual.iter_mut().zip(g) {
            *r -= e * c;
        }
        let ok = fits(gens, k + 1, need - c, residual);
        for (r, &e) in residual.iter_mut().zip(g) {
            *r += e * c;
        }
        if ok {
            return true;
        }
    }
    false
}

/// Outcome of a containment query `A ⊆ B`, with the first generator of `A`
/// (in canonical order) that fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Containment {
    pub holds: bool,
    pub witness: Option<Monomial>,
}

impl Containment {
    pub fn from_witness(witness: Option<Monomial>) -> Self {
        Containment {
            holds: witness.is_none(),
            witness,
        }
    }
}

/// First element of `items` failing `pred`, evaluated in parallel but
/// reported deterministically.
pub(crate) fn first_failure<T, F>(items: &[T], pred: F) -> Option<T>
where
    T: Sync + Clone,
    F: Fn(&T) -> bool + Sync,
{
    if items.len() < 64 {
        return items.iter().find(|x| !pred(x)).cloned();
    }
    items.par_iter().find_first(|x| !pred(x)).cloned()
}

/// Per-session state: limits plus a cache of ordinary powers.
///
/// The cache is internally synchronized, so a workspace can be shared by
/// reference across threads.
#[derive(Debug, Default)]
pub struct Workspace {
    limits: Limits,
    powers: Mutex<HashMap<(MonomialIdeal, u32), Arc<MonomialIdeal>>>,
}

impl Workspace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_limits(limits: Limits) -> Self {
        Workspace {
            limits,
            powers: Mutex::default(),
        }
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    /// `I^r` with minimal generators; `r = 0` is the unit ideal.
    pub fn power(&self, i: &MonomialIdeal, r: u32) -> Result<Arc<MonomialIdeal>> {
        if r == 0 {
            return Ok(Arc::new(MonomialIdeal::unit(i.nvars())));
        }
        if r == 1 {
            return Ok(Arc::new(i.clone()));
        }
        let key = (i.clone(), r);
        if let Some(p) = self.powers.lock().unwrap().get(&key) {
            return Ok(p.clone());
        }
        // Reuse the largest cached power below r when there is one.
        let base = {
            let cache = self.powers.lock().unwrap();
            (2..r)
                .rev()
                .find_map(|k| cache.get(&(i.clone(), k)).map(|p| (k, p.clone())))
        };
        let p = match base {
            Some((k, pk)) => {
                let rest = i.power_capped(r - k, self.limits.max_generators)?;
                pk.multiply_capped(&rest, self.limits.max_generators)?
            }
            None => i.power_capped(r, self.limits.max_generators)?,
        };
        let p = Arc::new(p);
        self.powers.lock().unwrap().insert(key, p.clone());
        Ok(p)
    }

    /// `A ⊆ I^r`, decided generator by generator with [`monomial_in_power`].
    pub fn containment_in_power(
        &self,
        a: &MonomialIdeal,
        i: &MonomialIdeal,
        r: u32,
    ) -> Result<Containment> {
        a.check_ambient(i)?;
        let witness = first_failure(a.gens(), |g| monomial_in_power(g, i, r));
        Ok(Containment::from_witness(witness))
    }

    /// Same query, answered by materializing `I^r`.
    pub fn containment_in_power_materialized(
        &self,
        a: &MonomialIdeal,
        i: &MonomialIdeal,
        r: u32,
    ) -> Result<Containment> {
        a.check_ambient(i)?;
        let p = self.power(i, r)?;
        Ok(Containment::from_witness(a.containment_witness(&p)))
    }
}
