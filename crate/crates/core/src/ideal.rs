//! Monomial ideals and their generator-level arithmetic.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::decompose::PrimeSupport;
use crate::error::{Error, Result};
use crate::monomial::Monomial;

/// Default cap on the number of generators any intermediate result may have.
pub const DEFAULT_GENERATOR_CAP: usize = 200_000;

/// A monomial ideal given by its minimal generators.
///
/// The generator list is always minimal and sorted lexicographically. An
/// empty list is the zero ideal; the single generator `1` is the unit ideal.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

/// Reduces a list of monomials to the minimal generators of the ideal they
/// generate. Fails if the exponent vectors disagree in length.
pub fn normalize(nvars: usize, gens: Vec<Monomial>) -> Result<MonomialIdeal> {
    normalize_capped(nvars, gens, usize::MAX)
}

pub fn normalize_capped(nvars: usize, gens: Vec<Monomial>, cap: usize) -> Result<MonomialIdeal> {
    if let Some(bad) = gens.iter().find(|g| g.nvars() != nvars) {
        return Err(Error::AmbientMismatch {
            expected: nvars,
            found: bad.nvars(),
        });
    }
    let gens = minimalize(gens);
    if gens.len() > cap {
        return Err(Error::generators(cap));
    }
    Ok(MonomialIdeal { nvars, gens })
}

/// Keeps the divisibility-minimal elements, sorted lexicographically.
pub(crate) fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    let mut keyed: Vec<(u64, u64, Monomial)> = gens
        .drain(..)
        .map(|g| (g.degree(), g.support_mask(), g))
        .collect();
    keyed.sort_unstable_by(|a, b| a.0.cmp(&b.0).then_with(|| a.2.cmp(&b.2)));
    keyed.dedup_by(|a, b| a.2 == b.2);

    let mut kept: Vec<(u64, u64, Monomial)> = Vec::new();
    for cand in keyed {
        let covered = kept
            .iter()
            .any(|(deg, mask, k)| *deg < cand.0 && mask & !cand.1 == 0 && k.divides(&cand.2));
        if !covered {
            kept.push(cand);
        }
    }
    let mut out: Vec<Monomial> = kept.into_iter().map(|(_, _, m)| m).collect();
    out.sort_unstable();
    out
}

impl MonomialIdeal {
    pub fn new(nvars: usize, gens: Vec<Monomial>) -> Result<Self> {
        normalize(nvars, gens)
    }

    pub fn from_exponents(nvars: usize, gens: Vec<Vec<u32>>) -> Result<Self> {
        normalize(nvars, gens.into_iter().map(Monomial::new).collect())
    }

    /// Ideal generated by squarefree monomials given as variable index sets.
    pub fn from_supports(nvars: usize, supports: &[&[usize]]) -> Result<Self> {
        normalize(
            nvars,
            supports
                .iter()
                .map(|s| Monomial::from_support(nvars, s.iter().copied()))
                .collect(),
        )
    }

    /// Builds an ideal from generators already known to be minimal and sorted.
    pub(crate) fn from_minimal_unchecked(nvars: usize, mut gens: Vec<Monomial>) -> Self {
        gens.sort_unstable();
        MonomialIdeal { nvars, gens }
    }

    pub fn zero(nvars: usize) -> Self {
        MonomialIdeal {
            nvars,
            gens: Vec::new(),
        }
    }

    pub fn unit(nvars: usize) -> Self {
        MonomialIdeal {
            nvars,
            gens: vec![Monomial::one(nvars)],
        }
    }

    /// The monomial prime ideal generated by the variables of `p`.
    pub fn prime(nvars: usize, p: &PrimeSupport) -> Self {
        MonomialIdeal::from_minimal_unchecked(
            nvars,
            p.vars().iter().map(|&i| Monomial::var(nvars, i)).collect(),
        )
    }

    pub fn principal(m: Monomial) -> Self {
        MonomialIdeal {
            nvars: m.nvars(),
            gens: vec![m],
        }
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    #[inline]
    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    pub fn min_degree(&self) -> Option<u64> {
        self.gens.iter().map(Monomial::degree).min()
    }

    pub(crate) fn check_ambient(&self, other: &MonomialIdeal) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::AmbientMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    /// Membership of a monomial: some generator divides it.
    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// `self ⊆ other`, with the first generator of `self` outside `other`.
    pub fn containment_witness(&self, other: &MonomialIdeal) -> Option<Monomial> {
        self.gens.iter().find(|g| !other.contains(g)).cloned()
    }

    pub fn is_subset_of(&self, other: &MonomialIdeal) -> bool {
        self.containment_witness(other).is_none()
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_ambient(other)?;
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        normalize(self.nvars, g)
    }

    pub fn multiply(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.multiply_capped(other, DEFAULT_GENERATOR_CAP)
    }

    pub fn multiply_capped(&self, other: &MonomialIdeal, cap: usize) -> Result<MonomialIdeal> {
        self.check_ambient(other)?;
        let mut prods = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                prods.push(a.mul(b));
            }
        }
        normalize_capped(self.nvars, prods, cap)
    }

    /// Ordinary power by repeated squaring, normalizing after every product.
    /// `r = 0` gives the unit ideal.
    pub fn power_capped(&self, r: u32, cap: usize) -> Result<MonomialIdeal> {
        let mut result = MonomialIdeal::unit(self.nvars);
        if r == 0 {
            return Ok(result);
        }
        let mut base = self.clone();
        let mut e = r;
        loop {
            if e & 1 == 1 {
                result = result.multiply_capped(&base, cap)?;
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.multiply_capped(&base, cap)?;
        }
        Ok(result)
    }

    /// Intersection: minimal generators among pairwise lcms.
    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.intersect_capped(other, DEFAULT_GENERATOR_CAP)
    }

    pub fn intersect_capped(&self, other: &MonomialIdeal, cap: usize) -> Result<MonomialIdeal> {
        self.check_ambient(other)?;
        let mut lcms = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                lcms.push(a.lcm(b));
            }
        }
        normalize_capped(self.nvars, lcms, cap)
    }

    /// n-ary intersection folding pairwise; the empty intersection is `R`.
    pub fn intersect_all<'a>(
        nvars: usize,
        ideals: impl IntoIterator<Item = &'a MonomialIdeal>,
        cap: usize,
    ) -> Result<MonomialIdeal> {
        let mut acc = MonomialIdeal::unit(nvars);
        for i in ideals {
            acc = acc.intersect_capped(i, cap)?;
        }
        Ok(acc)
    }

    /// `I^[r]`: the ideal generated by r-th powers of the generators.
    pub fn bracket_power(&self, r: u32) -> MonomialIdeal {
        MonomialIdeal::from_minimal_unchecked(
            self.nvars,
            self.gens.iter().map(|g| g.pow(r)).collect(),
        )
    }

    /// `π(I)`: the lcm of the minimal generators.
    pub fn pi(&self) -> Result<Monomial> {
        let mut it = self.gens.iter();
        let first = it.next().ok_or(Error::ZeroIdeal)?;
        Ok(it.fold(first.clone(), |acc, g| acc.lcm(g)))
    }

    /// gcd of the minimal generators.
    pub fn gens_gcd(&self) -> Result<Monomial> {
        let mut it = self.gens.iter();
        let first = it.next().ok_or(Error::ZeroIdeal)?;
        Ok(it.fold(first.clone(), |acc, g| acc.gcd(g)))
    }

    /// `I R_P ∩ R` for a monomial prime `P`: variables outside `P` are set to 1.
    pub fn localize_contract(&self, p: &PrimeSupport) -> MonomialIdeal {
        let gens = self.gens.iter().map(|g| g.restrict(p.vars())).collect();
        MonomialIdeal {
            nvars: self.nvars,
            gens: minimalize(gens),
        }
    }

    /// Quotient by a monomial: `I : m`.
    pub fn colon_monomial(&self, m: &Monomial) -> MonomialIdeal {
        let gens = self
            .gens
            .iter()
            .map(|g| {
                Monomial::new(
                    g.exponents()
                        .iter()
                        .zip(m.exponents())
                        .map(|(&a, &b)| a.saturating_sub(b))
                        .collect(),
                )
            })
            .collect();
        MonomialIdeal {
            nvars: self.nvars,
            gens: minimalize(gens),
        }
    }

    pub fn render(&self, names: &[String]) -> String {
        let parts: Vec<String> = self.gens.iter().map(|g| g.render(names)).collect();
        format!("<{}>", parts.join(", "))
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&[]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(nvars: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(nvars, gens.iter().map(|g| g.to_vec()).collect()).unwrap()
    }

    #[test]
    fn normalize_drops_multiples() {
        assert_eq!(ideal(1, &[&[1], &[2]]).gens(), &[Monomial::new(vec![1])]);
        let i = ideal(3, &[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1]]);
        assert_eq!(i.len(), 3);
        assert!(!i.contains(&Monomial::new(vec![1, 0, 0])));
    }

    #[test]
    fn normalize_rejects_length_mismatch() {
        let err = MonomialIdeal::from_exponents(2, vec![vec![1, 0], vec![1, 0, 0]]).unwrap_err();
        assert_eq!(
            err,
            Error::AmbientMismatch {
                expected: 2,
                found: 3
            }
        );
    }

    #[test]
    fn square_of_maximal_ideal() {
        let m = ideal(2, &[&[1, 0], &[0, 1]]);
        assert_eq!(
            m.power_capped(2, usize::MAX).unwrap(),
            ideal(2, &[&[2, 0], &[1, 1], &[0, 2]])
        );
        assert_eq!(m.power_capped(1, usize::MAX).unwrap(), m);
        assert!(m.power_capped(0, usize::MAX).unwrap().is_unit());
    }

    #[test]
    fn intersections() {
        let x = ideal(2, &[&[1, 0]]);
        let y = ideal(2, &[&[0, 1]]);
        assert_eq!(x.intersect(&y).unwrap(), ideal(2, &[&[1, 1]]));

        let xy = ideal(3, &[&[1, 0, 0], &[0, 1, 0]]);
        let xz = ideal(3, &[&[1, 0, 0], &[0, 0, 1]]);
        let yz = ideal(3, &[&[0, 1, 0], &[0, 0, 1]]);
        let tri = MonomialIdeal::intersect_all(3, [&xy, &xz, &yz], usize::MAX).unwrap();
        assert_eq!(tri, ideal(3, &[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]));
    }

    #[test]
    fn bracket_and_pi() {
        let m = ideal(2, &[&[1, 0], &[0, 1]]);
        assert_eq!(m.bracket_power(2), ideal(2, &[&[2, 0], &[0, 2]]));
        assert_eq!(m.bracket_power(1), m);
        let tri = ideal(3, &[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]);
        assert_eq!(tri.pi().unwrap().exponents(), &[1, 1, 1]);
        assert_eq!(ideal(1, &[&[1]]).pi().unwrap().exponents(), &[1]);
        assert_eq!(MonomialIdeal::zero(2).pi(), Err(Error::ZeroIdeal));
    }

    #[test]
    fn localize_contract_sets_outside_vars_to_one() {
        let i = ideal(2, &[&[2, 0], &[1, 1]]);
        let p = PrimeSupport::new(vec![0]);
        assert_eq!(i.localize_contract(&p), ideal(2, &[&[1, 0]]));
        let full = PrimeSupport::new(vec![0, 1]);
        assert_eq!(i.localize_contract(&full), i);
    }

    #[test]
    fn cap_is_enforced() {
        let m = ideal(
            4,
            &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]],
        );
        let err = m.power_capped(6, 50).unwrap_err();
        assert!(matches!(err, Error::ResourceExceeded { .. }));
    }
}
