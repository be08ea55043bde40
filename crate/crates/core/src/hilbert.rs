//! Generation degree of the normalized Rees algebra of a monomial ideal.
//!
//! The normalization of `R[It]` is the semigroup ring of the lattice points of
//! `C = cone{(e_i, 0), (v, 1) : v vertex of NP(I)}`, with `Ī^k` in
//! `t`-degree `k`. Its generation degree is the largest `t`-degree of an
//! element of the Hilbert basis of `C`.
//!
//! `C` is split by a placing triangulation; each simplicial cone contributes
//! the lattice points of its fundamental parallelepiped, and together with the
//! rays these generate the monoid. The Hilbert basis is the set of irreducible
//! elements among them.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::polyhedron::{newton_polyhedron, orthant_hull_facets, Halfspace};
use crate::rational::Rational;

/// Inequalities `row · y ≥ 0` describing `C`.
fn cone_facets(nvars: usize, facets: &[Halfspace], coords: &[usize]) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for h in facets {
        let mut row: Vec<i64> = h.normal.iter().map(|&w| w as i64).collect();
        row.push(-(h.offset as i64));
        out.push(row);
    }
    for &i in coords {
        let mut row = vec![0i64; nvars + 1];
        row[i] = 1;
        out.push(row);
    }
    let mut t = vec![0i64; nvars + 1];
    t[nvars] = 1;
    out.push(t);
    out
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Placing triangulation of the cone spanned by `rays`, where the first
/// `dim` rays are linearly independent. Returns simplices as index lists.
fn placing_triangulation(
    nvars: usize,
    rays: &[Vec<i64>],
    vertex_points: &[Vec<u32>],
    max_facets: usize,
) -> Result<Vec<Vec<usize>>> {
    let dim = nvars + 1;
    let mut simplices: Vec<Vec<usize>> = vec![(0..dim).collect()];
    for k in 1..vertex_points.len() {
        let placed: Vec<&[u32]> = vertex_points[..k].iter().map(Vec::as_slice).collect();
        let (facets, coords) = orthant_hull_facets(nvars, &placed, max_facets)?;
        let boundary = cone_facets(nvars, &facets, &coords);
        let p = nvars + k;
        let visible: Vec<&Vec<i64>> = boundary.iter().filter(|h| dot(h, &rays[p]) < 0).collect();
        if visible.is_empty() {
            continue;
        }
        let mut added = Vec::new();
        for s in &simplices {
            for drop in 0..s.len() {
                let face: Vec<usize> = s
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != drop)
                    .map(|(_, &x)| x)
                    .collect();
                if visible
                    .iter()
                    .any(|h| face.iter().all(|&f| dot(h, &rays[f]) == 0))
                {
                    let mut simplex = face;
                    simplex.push(p);
                    added.push(simplex);
                }
            }
        }
        simplices.extend(added);
    }
    Ok(simplices)
}

/// Inverse of an integer matrix scaled to an integer matrix: returns
/// `(A, |det|)` with `G^{-1} = A / |det|`.
fn scaled_inverse(g: &[Vec<i64>]) -> Result<(Vec<Vec<i64>>, i64)> {
    let n = g.len();
    let mut m: Vec<Vec<Rational>> = g
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rational> = row
                .iter()
                .map(|&x| Rational::from_integer(BigInt::from(x)))
                .collect();
            r.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            r
        })
        .collect();
    let mut det = Rational::one();
    for c in 0..n {
        let p = (c..n)
            .find(|&i| !m[i][c].is_zero())
            .ok_or_else(|| Error::InvalidArgument("singular simplex".into()))?;
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let pv = m[c][c].clone();
        det *= &pv;
        for v in m[c].iter_mut() {
            *v /= &pv;
        }
        let pivot_row = m[c].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != c && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v -= &f * pv;
                }
            }
        }
    }
    let abs = det.abs();
    let d = abs
        .to_integer()
        .to_i64()
        .ok_or(Error::Overflow("simplex volume"))?;
    let a = m
        .iter()
        .map(|row| {
            row[n..]
                .iter()
                .map(|x| {
                    (x * &abs)
                        .to_integer()
                        .to_i64()
                        .ok_or(Error::Overflow("simplex adjugate"))
                })
                .collect::<Result<Vec<i64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((a, d))
}

/// Nonzero lattice points `G λ` with `λ ∈ [0,1)^n` of one simplicial cone.
fn parallelepiped_points(
    gens: &[Vec<i64>],
    budget: &mut usize,
    out: &mut HashSet<Vec<i64>>,
) -> Result<()> {
    let n = gens.len();
    // Matrix with the generators as columns.
    let g: Vec<Vec<i64>> = (0..n)
        .map(|i| gens.iter().map(|c| c[i]).collect())
        .collect();
    let (a, d) = scaled_inverse(&g)?;
    if d == 1 {
        return Ok(());
    }
    if (d as usize) > *budget {
        return Err(Error::ResourceExceeded {
            what: "Hilbert basis candidates",
            limit: *budget,
        });
    }
    *budget -= d as usize;
    // The group Z^n / G Z^n embeds in (Z/d)^n via x -> A x mod d and is
    // generated by the images of the unit vectors.
    let steps: Vec<Vec<i64>> = (0..n)
        .map(|k| (0..n).map(|i| a[i][k].rem_euclid(d)).collect())
        .collect();
    let zero = vec![0i64; n];
    let mut seen: HashSet<Vec<i64>> = HashSet::from([zero.clone()]);
    let mut queue = VecDeque::from([zero]);
    while let Some(mu) = queue.pop_front() {
        for s in &steps {
            let next: Vec<i64> = mu.iter().zip(s).map(|(x, y)| (x + y) % d).collect();
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    for mu in seen {
        if mu.iter().all(|&x| x == 0) {
            continue;
        }
        let point: Vec<i64> = (0..n)
            .map(|i| {
                let num: i64 = (0..n).map(|j| g[i][j] * mu[j]).sum();
                debug_assert_eq!(num % d, 0);
                num / d
            })
            .collect();
        out.insert(point);
    }
    Ok(())
}

/// Largest `t`-degree of a Hilbert basis element of the cone over `NP(I)`.
pub fn hilbert_generation_degree(
    i: &MonomialIdeal,
    max_candidates: usize,
    max_facets: usize,
) -> Result<u32> {
    if i.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    let np = newton_polyhedron(i)?;
    let n = i.nvars();
    let vertex_points: Vec<Vec<u32>> = np.vertices.iter().map(|v| v.exponents().to_vec()).collect();
    let mut rays: Vec<Vec<i64>> = (0..n)
        .map(|k| {
            let mut e = vec![0i64; n + 1];
            e[k] = 1;
            e
        })
        .collect();
    for v in &vertex_points {
        let mut r: Vec<i64> = v.iter().map(|&x| x as i64).collect();
        r.push(1);
        rays.push(r);
    }
    let simplices = placing_triangulation(n, &rays, &vertex_points, max_facets)?;
    let mut candidates: HashSet<Vec<i64>> = rays.iter().cloned().collect();
    let mut budget = max_candidates;
    for s in &simplices {
        let gens: Vec<Vec<i64>> = s.iter().map(|&j| rays[j].clone()).collect();
        parallelepiped_points(&gens, &mut budget, &mut candidates)?;
    }
    let cone = cone_facets(n, &np.facets, &np.coordinate_facets);
    let in_cone = |y: &[i64]| cone.iter().all(|h| dot(h, y) >= 0);
    let mut by_degree: Vec<Vec<i64>> = candidates.into_iter().collect();
    by_degree.sort_by(|a, b| b[n].cmp(&a[n]).then_with(|| a.cmp(b)));
    for x in &by_degree {
        let reducible = by_degree.iter().any(|y| {
            y != x && y[n] <= x[n] && {
                let diff: Vec<i64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
                in_cone(&diff)
            }
        });
        if !reducible {
            return Ok(x[n] as u32);
        }
    }
    Ok(1)
}
