//! Minimal lattice points of up-closed polyhedral regions.
//!
//! A region `{a ∈ Z^n, a ≥ 0 : W a ≥ c}` with a nonnegative integer matrix
//! `W` is closed upwards, so it is the exponent set of a monomial ideal whose
//! minimal generators are the minimal lattice points of the region. Both
//! squarefree symbolic powers (`W` = prime indicators, `c = s`) and integral
//! closures of powers (`W` = facet normals, `c = r * offset`) have this shape.
//!
//! A point `a` is minimal iff lowering any positive coordinate by one leaves
//! the region, so minimality is checked locally without pairwise divisibility
//! tests. Minimal points satisfy `a_i <= max_k ceil(c_k / W_ki)`.

use std::ops::ControlFlow;

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct UpRegion {
    nvars: usize,
    rows: Vec<Vec<u64>>,
    rhs: Vec<u64>,
    /// For each variable, the constraints it appears in.
    cols: Vec<Vec<usize>>,
    bounds: Vec<u32>,
    /// `suffix[k][i] = Σ_{j ≥ i} W_kj * bound_j`
    suffix: Vec<Vec<u64>>,
    empty: bool,
}

impl UpRegion {
    pub fn new(nvars: usize, rows: Vec<Vec<u64>>, rhs: Vec<u64>) -> Self {
        assert_eq!(rows.len(), rhs.len());
        let mut empty = false;
        let mut kept_rows = Vec::new();
        let mut kept_rhs = Vec::new();
        for (row, c) in rows.into_iter().zip(rhs) {
            assert_eq!(row.len(), nvars);
            if c == 0 {
                continue;
            }
            if row.iter().all(|&w| w == 0) {
                empty = true;
            }
            kept_rows.push(row);
            kept_rhs.push(c);
        }
        let mut cols = vec![Vec::new(); nvars];
        let mut bounds = vec![0u32; nvars];
        for (k, row) in kept_rows.iter().enumerate() {
            for (i, &w) in row.iter().enumerate() {
                if w > 0 {
                    cols[i].push(k);
                    let b = kept_rhs[k].div_ceil(w);
                    bounds[i] = bounds[i].max(u32::try_from(b).unwrap_or(u32::MAX));
                }
            }
        }
        let suffix = kept_rows
            .iter()
            .map(|row| {
                let mut s = vec![0u64; nvars + 1];
                for i in (0..nvars).rev() {
                    s[i] = s[i + 1] + row[i] * bounds[i] as u64;
                }
                s
            })
            .collect();
        UpRegion {
            nvars,
            rows: kept_rows,
            rhs: kept_rhs,
            cols,
            bounds,
            suffix,
            empty,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn bounds(&self) -> &[u32] {
        &self.bounds
    }

    pub fn contains(&self, a: &[u32]) -> bool {
        !self.empty
            && self
                .rows
                .iter()
                .zip(&self.rhs)
                .all(|(row, &c)| row.iter().zip(a).map(|(&w, &x)| w * x as u64).sum::<u64>() >= c)
    }

    pub fn is_minimal(&self, a: &[u32]) -> bool {
        if !self.contains(a) {
            return false;
        }
        let sums: Vec<u64> = self
            .rows
            .iter()
            .map(|row| row.iter().zip(a).map(|(&w, &x)| w * x as u64).sum())
            .collect();
        (0..self.nvars).filter(|&j| a[j] > 0).all(|j| {
            self.cols[j]
                .iter()
                .any(|&k| sums[k] < self.rhs[k] + self.rows[k][j])
        })
    }

    /// Visits every minimal lattice point in lexicographic order until the
    /// visitor breaks. Returns `true` if the visitor broke.
    pub fn for_each_minimal<F>(&self, max_nodes: u64, mut visit: F) -> Result<bool>
    where
        F: FnMut(&[u32]) -> ControlFlow<()>,
    {
        if self.empty {
            return Ok(false);
        }
        let mut search = Search {
            region: self,
            point: vec![0; self.nvars],
            sums: vec![0; self.rows.len()],
            nodes: 0,
            max_nodes,
        };
        match search.descend(0, &mut visit)? {
            ControlFlow::Break(()) => Ok(true),
            ControlFlow::Continue(()) => Ok(false),
        }
    }

    pub fn minimal_points(&self, max_points: usize, max_nodes: u64) -> Result<Vec<Vec<u32>>> {
        let mut out = Vec::new();
        let mut overflow = false;
        self.for_each_minimal(max_nodes, |a| {
            if out.len() == max_points {
                overflow = true;
                return ControlFlow::Break(());
            }
            out.push(a.to_vec());
            ControlFlow::Continue(())
        })?;
        if overflow {
            return Err(Error::generators(max_points));
        }
        Ok(out)
    }

    /// Exact `min w·a` over the region, with a minimizing minimal point.
    /// `lower_bound` (e.g. a rounded LP value) allows stopping early.
    pub fn min_weight(
        &self,
        w: &[u64],
        lower_bound: u64,
        max_nodes: u64,
    ) -> Result<Option<(u64, Vec<u32>)>> {
        if self.empty {
            return Ok(None);
        }
        let mut best: Option<(u64, Vec<u32>)> = None;
        let mut search = BoundSearch {
            region: self,
            w,
            point: vec![0; self.nvars],
            sums: vec![0; self.rows.len()],
            cost: 0,
            nodes: 0,
            max_nodes,
            lower_bound,
        };
        search.descend(0, &mut best)?;
        Ok(best)
    }

    #[inline]
    fn feasible_after(&self, sums: &[u64], next: usize) -> bool {
        sums.iter()
            .zip(&self.rhs)
            .zip(&self.suffix)
            .all(|((&s, &c), suf)| s + suf[next] >= c)
    }

    /// Every assigned positive coordinate `j ≤ upto` must still be able to be
    /// tight for some constraint; sums only grow further down the tree.
    #[inline]
    fn minimal_so_far(&self, point: &[u32], sums: &[u64], upto: usize) -> bool {
        (0..=upto).filter(|&j| point[j] > 0).all(|j| {
            self.cols[j]
                .iter()
                .any(|&k| sums[k] < self.rhs[k] + self.rows[k][j])
        })
    }
}

struct Search<'a> {
    region: &'a UpRegion,
    point: Vec<u32>,
    sums: Vec<u64>,
    nodes: u64,
    max_nodes: u64,
}

impl Search<'_> {
    fn descend<F>(&mut self, i: usize, visit: &mut F) -> Result<ControlFlow<()>>
    where
        F: FnMut(&[u32]) -> ControlFlow<()>,
    {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(Error::ResourceExceeded {
                what: "lattice search nodes",
                limit: self.max_nodes as usize,
            });
        }
        let r = self.region;
        if i == r.nvars {
            return Ok(visit(&self.point));
        }
        let col = &r.cols[i];
        let mut flow = ControlFlow::Continue(());
        let mut v = 0u32;
        loop {
            if v > r.bounds[i] {
                break;
            }
            self.point[i] = v;
            if r.feasible_after(&self.sums, i + 1) {
                if !r.minimal_so_far(&self.point, &self.sums, i) {
                    break;
                }
                flow = self.descend(i + 1, visit)?;
                if flow.is_break() {
                    break;
                }
            }
            if col.is_empty() {
                break;
            }
            for &k in col {
                self.sums[k] += r.rows[k][i];
            }
            v += 1;
        }
        for &k in col {
            self.sums[k] -= r.rows[k][i] * v.min(r.bounds[i] + 1) as u64;
        }
        self.point[i] = 0;
        Ok(flow)
    }
}

struct BoundSearch<'a> {
    region: &'a UpRegion,
    w: &'a [u64],
    point: Vec<u32>,
    sums: Vec<u64>,
    cost: u64,
    nodes: u64,
    max_nodes: u64,
    lower_bound: u64,
}

impl BoundSearch<'_> {
    /// Returns `true` when the search can stop (the lower bound was met).
    fn descend(&mut self, i: usize, best: &mut Option<(u64, Vec<u32>)>) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(Error::ResourceExceeded {
                what: "lattice search nodes",
                limit: self.max_nodes as usize,
            });
        }
        if let Some((b, _)) = best {
            if self.cost >= *b {
                return Ok(false);
            }
        }
        let r = self.region;
        if i == r.nvars {
            *best = Some((self.cost, self.point.clone()));
            return Ok(self.cost <= self.lower_bound);
        }
        let col = &r.cols[i];
        let mut done = false;
        let mut v = 0u32;
        loop {
            if v > r.bounds[i] {
                break;
            }
            self.point[i] = v;
            if r.feasible_after(&self.sums, i + 1) {
                if !r.minimal_so_far(&self.point, &self.sums, i) {
                    break;
                }
                if self.descend(i + 1, best)? {
                    done = true;
                    break;
                }
            }
            if col.is_empty() {
                break;
            }
            for &k in col {
                self.sums[k] += r.rows[k][i];
            }
            self.cost += self.w[i];
            v += 1;
        }
        let steps = v.min(r.bounds[i] + 1) as u64;
        for &k in col {
            self.sums[k] -= r.rows[k][i] * steps;
        }
        self.cost -= self.w[i] * steps;
        self.point[i] = 0;
        Ok(done)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute force over the bounding box.
    fn brute(region: &UpRegion) -> Vec<Vec<u32>> {
        let n = region.nvars();
        let b = region.bounds().to_vec();
        let mut out = Vec::new();
        let mut a = vec![0u32; n];
        loop {
            if region.is_minimal(&a) {
                out.push(a.clone());
            }
            let mut i = n;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if a[i] < b[i] {
                    a[i] += 1;
                    break;
                }
                a[i] = 0;
            }
        }
    }

    #[test]
    fn triangle_second_symbolic_power() {
        // a_x + a_y >= 2, a_x + a_z >= 2, a_y + a_z >= 2
        let region = UpRegion::new(
            3,
            vec![vec![1, 1, 0], vec![1, 0, 1], vec![0, 1, 1]],
            vec![2, 2, 2],
        );
        let pts = region.minimal_points(100, 1_000_000).unwrap();
        assert!(pts.contains(&vec![1, 1, 1]));
        assert_eq!(pts, brute(&region));
        assert_eq!(pts.len(), 4);
    }

    #[test]
    fn matches_brute_force_on_weighted_rows() {
        let region = UpRegion::new(
            3,
            vec![vec![3, 2, 0], vec![1, 1, 1], vec![0, 1, 4]],
            vec![6, 3, 4],
        );
        assert_eq!(
            region.minimal_points(1000, 1_000_000).unwrap(),
            brute(&region)
        );
    }

    #[test]
    fn min_weight_matches_enumeration() {
        let region = UpRegion::new(
            4,
            vec![
                vec![1, 1, 0, 0],
                vec![0, 1, 1, 0],
                vec![0, 0, 1, 1],
                vec![1, 0, 0, 1],
            ],
            vec![3, 3, 3, 3],
        );
        let w = [2u64, 1, 3, 1];
        let pts = region.minimal_points(10_000, 1_000_000).unwrap();
        let want = pts
            .iter()
            .map(|a| a.iter().zip(&w).map(|(&x, &c)| x as u64 * c).sum::<u64>())
            .min()
            .unwrap();
        let (got, at) = region.min_weight(&w, 0, 1_000_000).unwrap().unwrap();
        assert_eq!(got, want);
        assert!(region.contains(&at));
    }

    #[test]
    fn empty_row_means_empty_region() {
        let region = UpRegion::new(2, vec![vec![0, 0]], vec![1]);
        assert!(region.minimal_points(10, 100).unwrap().is_empty());
    }
}
