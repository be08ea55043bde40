//! Exact linear programming over the rationals.
//!
//! Two-phase tableau simplex with Bland's rule, so it always terminates. Every
//! row carries an artificial column; those columns start as the identity and
//! therefore always hold `B^{-1}`, which gives the dual solution for free.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    Ge,
    Le,
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// `minimize objective · x` subject to the constraints and `x ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearProgram {
    pub nvars: usize,
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    pub value: Rational,
    pub argmin: Vec<Rational>,
    /// One dual multiplier per constraint: `≥ 0` for `Ge` rows, `≤ 0` for
    /// `Le` rows, free for `Eq` rows.
    pub dual: Vec<Rational>,
}

impl LinearProgram {
    pub fn new(objective: Vec<Rational>) -> Self {
        LinearProgram {
            nvars: objective.len(),
            objective,
            constraints: Vec::new(),
        }
    }

    pub fn constrain(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) {
        assert_eq!(coeffs.len(), self.nvars);
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
    }

    pub fn is_feasible_point(&self, x: &[Rational]) -> bool {
        x.len() == self.nvars
            && x.iter().all(|v| !v.is_negative())
            && self.constraints.iter().all(|c| {
                let lhs = dot(&c.coeffs, x);
                match c.relation {
                    Relation::Ge => lhs >= c.rhs,
                    Relation::Le => lhs <= c.rhs,
                    Relation::Eq => lhs == c.rhs,
                }
            })
    }

    /// Checks that `dual` is a feasible solution of the dual program whose
    /// value is `value`, which proves `value` is a lower bound for the primal.
    pub fn verify_dual_certificate(&self, dual: &[Rational], value: &Rational) -> bool {
        if dual.len() != self.constraints.len() {
            return false;
        }
        let signs_ok = self
            .constraints
            .iter()
            .zip(dual)
            .all(|(c, y)| match c.relation {
                Relation::Ge => !y.is_negative(),
                Relation::Le => !y.is_positive(),
                Relation::Eq => true,
            });
        if !signs_ok {
            return false;
        }
        let reduced_ok = (0..self.nvars).all(|j| {
            let aty: Rational = self
                .constraints
                .iter()
                .zip(dual)
                .map(|(c, y)| &c.coeffs[j] * y)
                .sum();
            aty <= self.objective[j]
        });
        let bty: Rational = self
            .constraints
            .iter()
            .zip(dual)
            .map(|(c, y)| &c.rhs * y)
            .sum();
        reduced_ok && &bty == value
    }

    pub fn minimize(&self) -> Result<LpSolution> {
        Tableau::build(self).solve(self)
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

struct Tableau {
    /// `m` rows of `ncols + 1` entries, the last being the right-hand side.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    /// Columns: originals, then one slack per inequality, then artificials.
    n_orig: usize,
    art_start: usize,
    ncols: usize,
    /// Rows multiplied by −1 so the right-hand side is nonnegative.
    flipped: Vec<bool>,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Tableau {
        let m = lp.constraints.len();
        let n = lp.nvars;
        let n_slack = lp
            .constraints
            .iter()
            .filter(|c| c.relation != Relation::Eq)
            .count();
        let art_start = n + n_slack;
        let ncols = art_start + m;
        let mut rows = Vec::with_capacity(m);
        let mut flipped = Vec::with_capacity(m);
        let mut slack = n;
        for (i, c) in lp.constraints.iter().enumerate() {
            let mut row = vec![Rational::zero(); ncols + 1];
            for (j, a) in c.coeffs.iter().enumerate() {
                row[j] = a.clone();
            }
            match c.relation {
                Relation::Ge => {
                    row[slack] = -Rational::one();
                    slack += 1;
                }
                Relation::Le => {
                    row[slack] = Rational::one();
                    slack += 1;
                }
                Relation::Eq => {}
            }
            row[ncols] = c.rhs.clone();
            let flip = c.rhs.is_negative();
            if flip {
                for v in row.iter_mut() {
                    *v = -v.clone();
                }
            }
            row[art_start + i] = Rational::one();
            rows.push(row);
            flipped.push(flip);
        }
        Tableau {
            rows,
            basis: (art_start..art_start + m).collect(),
            n_orig: n,
            art_start,
            ncols,
            flipped,
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v /= &p;
            }
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        self.basis[r] = c;
    }

    fn reduced_cost(&self, cost: &[Rational], j: usize) -> Rational {
        let mut rc = cost[j].clone();
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if !cost[b].is_zero() && !row[j].is_zero() {
                rc -= &cost[b] * &row[j];
            }
        }
        rc
    }

    /// Bland-rule simplex on columns `< allowed`. Returns `false` if unbounded.
    fn run(&mut self, cost: &[Rational], allowed: usize) -> bool {
        loop {
            let entering = (0..allowed)
                .filter(|j| !self.basis.contains(j))
                .find(|&j| self.reduced_cost(cost, j).is_negative());
            let Some(c) = entering else {
                return true;
            };
            let mut best: Option<(Rational, usize, usize)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[c].is_positive() {
                    let ratio = &row[self.ncols] / &row[c];
                    let better = match &best {
                        None => true,
                        Some((q, _, b)) => ratio < *q || (ratio == *q && self.basis[i] < *b),
                    };
                    if better {
                        best = Some((ratio, i, self.basis[i]));
                    }
                }
            }
            match best {
                None => return false,
                Some((_, r, _)) => self.pivot(r, c),
            }
        }
    }

    fn solve(mut self, lp: &LinearProgram) -> Result<LpSolution> {
        let m = self.rows.len();
        let mut phase1 = vec![Rational::zero(); self.ncols];
        for v in &mut phase1[self.art_start..] {
            *v = Rational::one();
        }
        self.run(&phase1, self.ncols);
        let infeasibility: Rational = self
            .rows
            .iter()
            .zip(&self.basis)
            .filter(|(_, &b)| b >= self.art_start)
            .map(|(row, _)| row[self.ncols].clone())
            .sum();
        if infeasibility.is_positive() {
            return Err(Error::Infeasible);
        }
        // Drive zero-level artificials out where possible; rows where this is
        // impossible are redundant and stay inert.
        for r in 0..m {
            if self.basis[r] >= self.art_start {
                if let Some(c) = (0..self.art_start).find(|&j| !self.rows[r][j].is_zero()) {
                    self.pivot(r, c);
                }
            }
        }
        let mut phase2 = vec![Rational::zero(); self.ncols];
        for (j, c) in lp.objective.iter().enumerate() {
            phase2[j] = c.clone();
        }
        if !self.run(&phase2, self.art_start) {
            return Err(Error::Unbounded);
        }
        let mut argmin = vec![Rational::zero(); self.n_orig];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if b < self.n_orig {
                argmin[b] = row[self.ncols].clone();
            }
        }
        let value = dot(&lp.objective, &argmin);
        let dual: Vec<Rational> = (0..m)
            .map(|i| {
                let col = self.art_start + i;
                let y: Rational = self
                    .rows
                    .iter()
                    .zip(&self.basis)
                    .filter(|(row, &b)| !phase2[b].is_zero() && !row[col].is_zero())
                    .map(|(row, &b)| &phase2[b] * &row[col])
                    .sum();
                if self.flipped[i] {
                    -y
                } else {
                    y
                }
            })
            .collect();
        Ok(LpSolution {
            value,
            argmin,
            dual,
        })
    }
}

/// Convenience wrapper: minimize and return the solution.
pub fn lp_minimize(lp: &LinearProgram) -> Result<LpSolution> {
    lp.minimize()
}
