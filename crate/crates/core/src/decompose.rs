//! Minimal primes, irreducible decompositions and associated primes.
//!
//! Squarefree ideals go through minimal transversals of the hypergraph of
//! generator supports. Everything else is split recursively: a generator
//! `u*v` with coprime `u`, `v` gives `I = (I + <u>) ∩ (I + <v>)`, and the
//! leaves are irreducible ideals generated by pure powers.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;

/// A monomial prime, identified with its (sorted) set of variables.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PrimeSupport(Vec<usize>);

impl PrimeSupport {
    pub fn new(mut vars: Vec<usize>) -> Self {
        vars.sort_unstable();
        vars.dedup();
        PrimeSupport(vars)
    }

    pub fn from_mask(mask: u64) -> Self {
        PrimeSupport((0..64).filter(|i| mask >> i & 1 == 1).collect())
    }

    pub fn vars(&self) -> &[usize] {
        &self.0
    }

    pub fn height(&self) -> usize {
        self.0.len()
    }

    pub fn mask(&self) -> u64 {
        self.0.iter().fold(0, |m, &i| m | 1 << i)
    }

    pub fn contains_var(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn is_subset_of(&self, other: &PrimeSupport) -> bool {
        self.0.iter().all(|&i| other.contains_var(i))
    }

    pub fn render(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&i| {
                names
                    .get(i)
                    .cloned()
                    .unwrap_or_else(|| format!("x{}", i + 1))
            })
            .collect();
        format!("<{}>", parts.join(", "))
    }
}

impl fmt::Debug for PrimeSupport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub minimal_primes: Vec<PrimeSupport>,
    pub associated_primes: Vec<PrimeSupport>,
    pub irreducible_components: Vec<MonomialIdeal>,
    pub big_height: usize,
}

fn check_proper(i: &MonomialIdeal) -> Result<()> {
    if i.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    if i.is_unit() {
        return Err(Error::UnitIdeal);
    }
    if i.nvars() > 64 {
        return Err(Error::InvalidArgument(
            "decomposition supports at most 64 variables".into(),
        ));
    }
    Ok(())
}

/// Minimal transversals of a family of edges (as bitmasks), sorted.
pub(crate) fn minimal_transversals(edges: &[u64]) -> Vec<u64> {
    let mut edges: Vec<u64> = edges.to_vec();
    // Processing small edges first keeps the intermediate families small.
    edges.sort_by_key(|e| e.count_ones());
    let mut family: Vec<u64> = vec![0];
    for &e in &edges {
        let mut next: Vec<u64> = Vec::with_capacity(family.len());
        for &t in &family {
            if t & e != 0 {
                next.push(t);
            } else {
                let mut bits = e;
                while bits != 0 {
                    let b = bits & bits.wrapping_neg();
                    next.push(t | b);
                    bits ^= b;
                }
            }
        }
        next.sort_by_key(|t| (t.count_ones(), *t));
        next.dedup();
        let mut kept: Vec<u64> = Vec::with_capacity(next.len());
        for t in next {
            if !kept.iter().any(|&k| k & !t == 0) {
                kept.push(t);
            }
        }
        family = kept;
    }
    family.sort_unstable();
    family
}

/// Minimal primes of a squarefree ideal (minimal vertex covers of the
/// generator hypergraph). Non-squarefree input is routed through the
/// associated-prime computation.
pub fn minimal_primes(i: &MonomialIdeal) -> Result<Vec<PrimeSupport>> {
    check_proper(i)?;
    if !i.is_squarefree() {
        let ass = associated_primes(i)?;
        return Ok(minimal_elements(&ass));
    }
    let edges: Vec<u64> = i.gens().iter().map(Monomial::support_mask).collect();
    let mut primes: Vec<PrimeSupport> = minimal_transversals(&edges)
        .into_iter()
        .map(PrimeSupport::from_mask)
        .collect();
    primes.sort();
    Ok(primes)
}

fn minimal_elements(primes: &[PrimeSupport]) -> Vec<PrimeSupport> {
    let mut out: Vec<PrimeSupport> = primes
        .iter()
        .filter(|p| !primes.iter().any(|q| q != *p && q.is_subset_of(p)))
        .cloned()
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Irredundant irreducible decomposition by recursive generator splitting.
pub fn irreducible_decomposition(i: &MonomialIdeal) -> Result<Vec<MonomialIdeal>> {
    check_proper(i)?;
    if i.is_squarefree() {
        return Ok(minimal_primes(i)?
            .iter()
            .map(|p| MonomialIdeal::prime(i.nvars(), p))
            .collect());
    }
    let mut leaves: BTreeSet<Vec<Monomial>> = BTreeSet::new();
    let mut seen: BTreeSet<Vec<Monomial>> = BTreeSet::new();
    let mut stack = vec![i.clone()];
    while let Some(cur) = stack.pop() {
        if !seen.insert(cur.gens().to_vec()) {
            continue;
        }
        let split = cur
            .gens()
            .iter()
            .find(|g| g.support().count() >= 2)
            .cloned();
        match split {
            None => {
                leaves.insert(cur.gens().to_vec());
            }
            Some(g) => {
                let v0 = g.support().next().unwrap();
                let mut u = Monomial::one(cur.nvars()).into_exponents();
                u[v0] = g.exponents()[v0];
                let u = Monomial::new(u);
                let v = g.checked_div(&u).unwrap();
                for part in [u, v] {
                    stack.push(cur.sum(&MonomialIdeal::principal(part))?);
                }
            }
        }
    }
    let comps: Vec<MonomialIdeal> = leaves
        .into_iter()
        .map(|g| MonomialIdeal::from_minimal_unchecked(i.nvars(), g))
        .collect();
    // Drop components that contain another one.
    let mut out: Vec<MonomialIdeal> = comps
        .iter()
        .filter(|q| !comps.iter().any(|p| p != *q && p.is_subset_of(q)))
        .cloned()
        .collect();
    out.sort_by(|a, b| a.gens().cmp(b.gens()));
    Ok(out)
}

/// Radical supports of the irredundant irreducible components.
pub fn associated_primes(i: &MonomialIdeal) -> Result<Vec<PrimeSupport>> {
    let comps = irreducible_decomposition(i)?;
    let mut primes: Vec<PrimeSupport> = comps
        .iter()
        .map(|q| PrimeSupport::new(q.gens().iter().flat_map(|g| g.support()).collect()))
        .collect();
    primes.sort();
    primes.dedup();
    Ok(primes)
}

/// Maximum height of an associated prime.
pub fn big_height(i: &MonomialIdeal) -> Result<usize> {
    let primes = if i.is_squarefree() {
        minimal_primes(i)?
    } else {
        associated_primes(i)?
    };
    Ok(primes.iter().map(PrimeSupport::height).max().unwrap_or(0))
}

pub fn decompose(i: &MonomialIdeal) -> Result<DecompositionReport> {
    let irreducible_components = irreducible_decomposition(i)?;
    let associated_primes = associated_primes(i)?;
    let minimal_primes = minimal_elements(&associated_primes);
    let big_height = associated_primes
        .iter()
        .map(PrimeSupport::height)
        .max()
        .unwrap_or(0);
    Ok(DecompositionReport {
        minimal_primes,
        associated_primes,
        irreducible_components,
        big_height,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(nvars: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(nvars, gens.iter().map(|g| g.to_vec()).collect()).unwrap()
    }

    fn supports(ps: &[PrimeSupport]) -> Vec<Vec<usize>> {
        ps.iter().map(|p| p.vars().to_vec()).collect()
    }

    #[test]
    fn triangle_primes() {
        let tri = ideal(3, &[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]);
        assert_eq!(
            supports(&minimal_primes(&tri).unwrap()),
            vec![vec![0, 1], vec![0, 2], vec![1, 2]]
        );
        assert_eq!(big_height(&tri).unwrap(), 2);
        assert_eq!(
            associated_primes(&tri).unwrap(),
            minimal_primes(&tri).unwrap()
        );
    }

    #[test]
    fn single_variable() {
        let x = ideal(1, &[&[1]]);
        assert_eq!(supports(&minimal_primes(&x).unwrap()), vec![vec![0]]);
    }

    #[test]
    fn embedded_component() {
        // <x^2, xy> = <x> ∩ <x^2, y>
        let i = ideal(2, &[&[2, 0], &[1, 1]]);
        let comps = irreducible_decomposition(&i).unwrap();
        assert_eq!(
            comps,
            vec![ideal(2, &[&[2, 0], &[0, 1]]), ideal(2, &[&[1, 0]])]
        );
        assert_eq!(
            supports(&associated_primes(&i).unwrap()),
            vec![vec![0], vec![0, 1]]
        );
        assert_eq!(supports(&minimal_primes(&i).unwrap()), vec![vec![0]]);
        let back = MonomialIdeal::intersect_all(2, comps.iter(), usize::MAX).unwrap();
        assert_eq!(back, i);
    }

    #[test]
    fn proper_ideals_only() {
        assert_eq!(
            minimal_primes(&MonomialIdeal::zero(2)),
            Err(Error::ZeroIdeal)
        );
        assert_eq!(
            minimal_primes(&MonomialIdeal::unit(2)),
            Err(Error::UnitIdeal)
        );
    }

    #[test]
    fn transversals_match_subset_enumeration() {
        let edges = [0b0011u64, 0b0110, 0b1100, 0b1001, 0b0101];
        let mut brute: Vec<u64> = (0u64..16)
            .filter(|t| edges.iter().all(|e| e & t != 0))
            .collect();
        let all = brute.clone();
        brute.retain(|t| !all.iter().any(|s| s != t && s & t == *s));
        brute.sort_unstable();
        assert_eq!(minimal_transversals(&edges), brute);
    }
}
