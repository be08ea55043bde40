//! Newton polyhedra of monomial ideals and their Rees valuations.
//!
//! A pair `(w, c)` gives a valid inequality `w·x ≥ c` for
//! `NP(I) = conv(exponents) + R^n_{≥0}` iff `w ≥ 0` and `w·v ≥ c` for every
//! generator `v`. Those pairs form a pointed polyhedral cone whose extreme rays
//! are exactly the facets of `NP(I)` together with the trivial `0 ≥ -1`. The
//! rays are enumerated with the double description method in exact integer
//! arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;
use crate::rational::Rational;

/// The inequality `normal · x ≥ offset`, with `normal` primitive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Halfspace {
    pub normal: Vec<u32>,
    pub offset: u64,
}

impl Halfspace {
    pub fn new(normal: Vec<u32>, offset: u64) -> Self {
        Halfspace { normal, offset }
    }

    /// `w · a`, the value of the monomial valuation on `x^a`.
    pub fn value(&self, a: &[u32]) -> u64 {
        self.normal
            .iter()
            .zip(a)
            .map(|(&w, &x)| w as u64 * x as u64)
            .sum()
    }

    /// Variables with positive weight: the center of the valuation.
    pub fn support(&self) -> Vec<usize> {
        (0..self.normal.len())
            .filter(|&i| self.normal[i] > 0)
            .collect()
    }

    pub fn render(&self, names: &[String]) -> String {
        let terms: Vec<String> = self
            .normal
            .iter()
            .enumerate()
            .filter(|(_, &w)| w > 0)
            .map(|(i, &w)| {
                let name = names
                    .get(i)
                    .cloned()
                    .unwrap_or_else(|| format!("x{}", i + 1));
                if w == 1 {
                    name
                } else {
                    format!("{w}*{name}")
                }
            })
            .collect();
        format!("{} >= {}", terms.join(" + "), self.offset)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonPolyhedron {
    pub nvars: usize,
    /// Generator exponents that are vertices, in lexicographic order.
    pub vertices: Vec<Monomial>,
    /// Facets with positive offset (the Rees valuations), lexicographic.
    pub facets: Vec<Halfspace>,
    /// Indices `i` for which `x_i ≥ 0` is a facet.
    pub coordinate_facets: Vec<usize>,
}

impl NewtonPolyhedron {
    /// `a ∈ r·NP(I)`, i.e. `x^a ∈ closure(I^r)`.
    pub fn contains_scaled(&self, a: &[u32], r: u32) -> bool {
        self.facets
            .iter()
            .all(|h| h.value(a) >= r as u64 * h.offset)
    }

    /// The first facet violated by `a` in `r·NP(I)`.
    pub fn violated_facet(&self, a: &[u32], r: u32) -> Option<&Halfspace> {
        self.facets
            .iter()
            .find(|h| h.value(a) < r as u64 * h.offset)
    }
}

fn gcd_normalize(v: &mut [i128]) {
    let g = v.iter().fold(0i128, |g, &x| g.gcd(&x));
    if g > 1 {
        for x in v.iter_mut() {
            *x /= g;
        }
    }
}

#[derive(Clone)]
struct Ray {
    /// `(w_1, …, w_n, c)`.
    coords: Vec<i128>,
    /// Bitset of constraints tight at this ray.
    zeros: Vec<u64>,
}

fn bit_set(bits: &mut [u64], i: usize) {
    bits[i / 64] |= 1 << (i % 64);
}

fn is_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

fn popcount(a: &[u64]) -> usize {
    a.iter().map(|x| x.count_ones() as usize).sum()
}

/// Extreme rays of `{y ∈ R^{n+1} : rows · y ≥ 0}` where the first `n+1` rows
/// are linearly independent and form an initial simplicial cone with the
/// given rays.
fn double_description(
    dim: usize,
    rows: &[Vec<i128>],
    initial: Vec<Vec<i128>>,
    max_rays: usize,
) -> Result<Vec<Vec<i128>>> {
    let words = rows.len().div_ceil(64);
    let eval = |row: &[i128], y: &[i128]| -> Result<i128> {
        row.iter().zip(y).try_fold(0i128, |acc, (&a, &b)| {
            a.checked_mul(b)
                .and_then(|p| acc.checked_add(p))
                .ok_or(Error::Overflow("facet enumeration"))
        })
    };
    let mut rays: Vec<Ray> = Vec::new();
    for coords in initial {
        let mut zeros = vec![0u64; words];
        for (k, row) in rows.iter().enumerate().take(dim) {
            if eval(row, &coords)? == 0 {
                bit_set(&mut zeros, k);
            }
        }
        rays.push(Ray { coords, zeros });
    }
    for (k, row) in rows.iter().enumerate().skip(dim) {
        let values: Vec<i128> = rays
            .iter()
            .map(|r| eval(row, &r.coords))
            .collect::<Result<_>>()?;
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i] > 0).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| values[i] < 0).collect();
        if neg.is_empty() {
            for (i, r) in rays.iter_mut().enumerate() {
                if values[i] == 0 {
                    bit_set(&mut r.zeros, k);
                }
            }
            continue;
        }
        let mut next: Vec<Ray> = Vec::new();
        for (i, r) in rays.iter().enumerate() {
            if values[i] >= 0 {
                let mut r = r.clone();
                if values[i] == 0 {
                    bit_set(&mut r.zeros, k);
                }
                next.push(r);
            }
        }
        for &p in &pos {
            for &q in &neg {
                let common: Vec<u64> = rays[p]
                    .zeros
                    .iter()
                    .zip(&rays[q].zeros)
                    .map(|(a, b)| a & b)
                    .collect();
                if popcount(&common) + 2 < dim {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(t, r)| t == p || t == q || !is_subset(&common, &r.zeros));
                if !adjacent {
                    continue;
                }
                let (vp, vq) = (values[p], -values[q]);
                let mut coords: Vec<i128> = rays[p]
                    .coords
                    .iter()
                    .zip(&rays[q].coords)
                    .map(|(&a, &b)| {
                        vq.checked_mul(a)
                            .zip(vp.checked_mul(b))
                            .and_then(|(x, y)| x.checked_add(y))
                            .ok_or(Error::Overflow("facet enumeration"))
                    })
                    .collect::<Result<_>>()?;
                gcd_normalize(&mut coords);
                let mut zeros = common;
                bit_set(&mut zeros, k);
                next.push(Ray { coords, zeros });
            }
        }
        if next.len() > max_rays {
            return Err(Error::ResourceExceeded {
                what: "polyhedron facets",
                limit: max_rays,
            });
        }
        rays = next;
    }
    Ok(rays.into_iter().map(|r| r.coords).collect())
}

/// Rank of an integer matrix, by exact elimination.
pub(crate) fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| Rational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[rank][c];
                let pivot = m[rank][c..].to_vec();
                for (x, p) in m[i][c..].iter_mut().zip(&pivot) {
                    *x -= &f * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Facets of `conv(points) + R^n_{≥0}` for a nonempty set of points.
pub(crate) fn orthant_hull_facets(
    nvars: usize,
    points: &[&[u32]],
    max_facets: usize,
) -> Result<(Vec<Halfspace>, Vec<usize>)> {
    assert!(!points.is_empty());
    let dim = nvars + 1;
    let mut rows: Vec<Vec<i128>> = Vec::new();
    for i in 0..nvars {
        let mut row = vec![0i128; dim];
        row[i] = 1;
        rows.push(row);
    }
    for v in points {
        let mut row: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        row.push(-1);
        rows.push(row);
    }
    let v0 = points[0];
    let mut initial: Vec<Vec<i128>> = (0..nvars)
        .map(|k| {
            let mut ray = vec![0i128; dim];
            ray[k] = 1;
            ray[nvars] = v0[k] as i128;
            ray
        })
        .collect();
    let mut down = vec![0i128; dim];
    down[nvars] = -1;
    initial.push(down);
    let rays = double_description(dim, &rows, initial, max_facets)?;
    let mut facets = Vec::new();
    let mut coords = Vec::new();
    for ray in rays {
        let c = ray[nvars];
        let w = &ray[..nvars];
        if w.iter().all(|&x| x == 0) {
            continue;
        }
        if c > 0 {
            let normal = w
                .iter()
                .map(|&x| u32::try_from(x).map_err(|_| Error::Overflow("facet normal")))
                .collect::<Result<Vec<u32>>>()?;
            let offset = u64::try_from(c).map_err(|_| Error::Overflow("facet offset"))?;
            facets.push(Halfspace::new(normal, offset));
        } else if c == 0 {
            let support: Vec<usize> = (0..nvars).filter(|&i| w[i] != 0).collect();
            if support.len() == 1 {
                coords.push(support[0]);
            }
        }
    }
    facets.sort();
    facets.dedup();
    coords.sort_unstable();
    coords.dedup();
    Ok((facets, coords))
}

pub fn newton_polyhedron(i: &MonomialIdeal) -> Result<NewtonPolyhedron> {
    newton_polyhedron_capped(i, crate::membership::Limits::default().max_facets)
}

pub fn newton_polyhedron_capped(i: &MonomialIdeal, max_facets: usize) -> Result<NewtonPolyhedron> {
    if i.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    let n = i.nvars();
    let points: Vec<&[u32]> = i.gens().iter().map(|g| g.exponents()).collect();
    let (facets, coordinate_facets) = orthant_hull_facets(n, &points, max_facets)?;
    let vertices = i
        .gens()
        .iter()
        .filter(|g| {
            let a = g.exponents();
            let mut tight: Vec<Vec<i64>> = facets
                .iter()
                .filter(|h| h.value(a) == h.offset)
                .map(|h| h.normal.iter().map(|&x| x as i64).collect())
                .collect();
            for (j, &x) in a.iter().enumerate() {
                if x == 0 {
                    let mut e = vec![0i64; n];
                    e[j] = 1;
                    tight.push(e);
                }
            }
            rank(&tight) == n
        })
        .cloned()
        .collect();
    Ok(NewtonPolyhedron {
        nvars: n,
        vertices,
        facets,
        coordinate_facets,
    })
}

/// The non-coordinate facets of the Newton polyhedron: each `(w, c)` is a
/// monomial valuation `ν_w` with `ν_w(I) = c`.
pub fn rees_valuations(i: &MonomialIdeal) -> Result<Vec<Halfspace>> {
    Ok(newton_polyhedron(i)?.facets)
}

/// `ν_w(I) = min_g w · g`.
pub fn nu(i: &MonomialIdeal, w: &[u32]) -> Result<u64> {
    i.gens()
        .iter()
        .map(|g| g.weighted_degree(w))
        .min()
        .ok_or(Error::ZeroIdeal)
}

/// Primitive integer normal of a rational weight vector.
pub fn primitive(w: &[Rational]) -> Vec<BigInt> {
    let lcm = w.iter().fold(BigInt::from(1), |l, x| l.lcm(x.denom()));
    let ints: Vec<BigInt> = w.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = crate::rational::gcd_all(ints.iter().cloned());
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| (x / &g).abs()).collect()
}
