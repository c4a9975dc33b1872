//! Exact two-phase simplex over rationals with Bland's rule.
//!
//! Dense tableau, no scaling, no tolerances: every pivot is exact, Bland's
//! rule guarantees termination, and the deterministic pivot order makes
//! returned optima reproducible across runs.

use num_traits::{Signed, Zero};

use crate::numerics::Rational;

/// `minimize objective . x` subject to `sum coef * x <= rhs` per row and
/// `x >= 0`.
#[derive(Debug, Clone)]
pub(crate) struct LinearProgram {
    pub num_vars: usize,
    pub objective: Vec<Rational>,
    /// Sparse rows: (coefficients, right-hand side).
    pub rows: Vec<(Vec<(usize, Rational)>, Rational)>,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum LpOutcome {
    Optimal { value: Rational, point: Vec<Rational> },
    Infeasible,
    Unbounded,
}

struct Tableau {
    /// rows[r][c]; the last column is the right-hand side.
    rows: Vec<Vec<Rational>>,
    cost: Vec<Rational>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn rhs_col(&self) -> usize {
        self.width
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let pivot_value = self.rows[r][c].clone();
        debug_assert!(!pivot_value.is_zero());
        for entry in &mut self.rows[r] {
            *entry /= &pivot_value;
        }
        for other in 0..self.rows.len() {
            if other == r {
                continue;
            }
            let factor = self.rows[other][c].clone();
            if factor.is_zero() {
                continue;
            }
            for col in 0..=self.width {
                let delta = &factor * &self.rows[r][col];
                self.rows[other][col] -= delta;
            }
        }
        let factor = self.cost[c].clone();
        if !factor.is_zero() {
            for col in 0..=self.width {
                let delta = &factor * &self.rows[r][col];
                self.cost[col] -= delta;
            }
        }
        self.basis[r] = c;
    }

    /// Bland: entering column is the smallest eligible index, leaving row
    /// breaks ratio ties by the smallest basic index. Returns false at
    /// optimality, `Err` row when unbounded.
    fn bland_step(&mut self, banned: &dyn Fn(usize) -> bool) -> Result<bool, ()> {
        let rhs = self.rhs_col();
        let entering = (0..self.width)
            .find(|&c| !banned(c) && self.cost[c].is_negative());
        let Some(c) = entering else {
            return Ok(false);
        };
        let mut leaving: Option<(usize, Rational)> = None;
        for r in 0..self.rows.len() {
            if !self.rows[r][c].is_positive() {
                continue;
            }
            let ratio = &self.rows[r][rhs] / &self.rows[r][c];
            let better = match &leaving {
                None => true,
                Some((best_row, best_ratio)) => {
                    ratio < *best_ratio
                        || (ratio == *best_ratio && self.basis[r] < self.basis[*best_row])
                }
            };
            if better {
                leaving = Some((r, ratio));
            }
        }
        let Some((r, _)) = leaving else {
            return Err(());
        };
        self.pivot(r, c);
        Ok(true)
    }
}

/// Solves the program exactly. Phase 1 drives artificial variables out of
/// the basis (dropping redundant rows); phase 2 optimizes the true
/// objective.
pub(crate) fn solve_min(lp: &LinearProgram) -> LpOutcome {
    let n = lp.num_vars;
    let m = lp.rows.len();
    // columns: structural | slack | artificial (one per negative-rhs row)
    let negative_rows: Vec<usize> = (0..m)
        .filter(|&r| lp.rows[r].1.is_negative())
        .collect();
    let a = negative_rows.len();
    let width = n + m + a;

    let mut tableau = Tableau {
        rows: vec![vec![Rational::zero(); width + 1]; m],
        cost: vec![Rational::zero(); width + 1],
        basis: vec![0; m],
        width,
    };

    let mut artificial_idx = 0usize;
    for r in 0..m {
        let (coefs, rhs) = &lp.rows[r];
        let negate = rhs.is_negative();
        for (var, coef) in coefs {
            tableau.rows[r][*var] = if negate { -coef.clone() } else { coef.clone() };
        }
        let slack = n + r;
        tableau.rows[r][slack] = if negate {
            -Rational::from_integer(1.into())
        } else {
            Rational::from_integer(1.into())
        };
        tableau.rows[r][width] = if negate { -rhs.clone() } else { rhs.clone() };
        if negate {
            let art = n + m + artificial_idx;
            artificial_idx += 1;
            tableau.rows[r][art] = Rational::from_integer(1.into());
            tableau.basis[r] = art;
        } else {
            tableau.basis[r] = slack;
        }
    }

    if a > 0 {
        // Phase 1: minimize the sum of artificials; cost row = -(sum of
        // rows with a basic artificial) prices the basics out.
        for r in 0..m {
            if tableau.basis[r] >= n + m {
                for col in 0..=width {
                    let delta = tableau.rows[r][col].clone();
                    tableau.cost[col] -= delta;
                }
            }
        }
        for art in (n + m)..width {
            tableau.cost[art] = Rational::zero();
        }
        while let Ok(true) = tableau.bland_step(&|_| false) {}
        let infeasibility: Rational = (0..m)
            .filter(|&r| tableau.basis[r] >= n + m)
            .map(|r| tableau.rows[r][width].clone())
            .sum();
        if !infeasibility.is_zero() {
            return LpOutcome::Infeasible;
        }
        // Degenerate basic artificials: pivot them out on any usable
        // column, or drop the (redundant) row.
        let mut r = 0;
        while r < tableau.rows.len() {
            if tableau.basis[r] >= n + m {
                match (0..n + m).find(|&c| !tableau.rows[r][c].is_zero()) {
                    Some(c) => tableau.pivot(r, c),
                    None => {
                        tableau.rows.remove(r);
                        tableau.basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
    }

    // Phase 2 with the real objective priced out over the current basis.
    tableau.cost = vec![Rational::zero(); width + 1];
    for (var, coef) in lp.objective.iter().enumerate() {
        tableau.cost[var] = coef.clone();
    }
    for r in 0..tableau.rows.len() {
        let b = tableau.basis[r];
        let factor = tableau.cost[b].clone();
        if !factor.is_zero() {
            for col in 0..=width {
                let delta = &factor * &tableau.rows[r][col];
                tableau.cost[col] -= delta;
            }
        }
    }
    let banned = |c: usize| c >= n + m; // artificials never re-enter
    loop {
        match tableau.bland_step(&banned) {
            Ok(true) => {}
            Ok(false) => break,
            Err(()) => return LpOutcome::Unbounded,
        }
    }

    let mut point = vec![Rational::zero(); n];
    for r in 0..tableau.rows.len() {
        let b = tableau.basis[r];
        if b < n {
            point[b] = tableau.rows[r][tableau.rhs_col()].clone();
        }
    }
    let value: Rational = lp
        .objective
        .iter()
        .zip(&point)
        .map(|(c, x)| c * x)
        .sum();
    LpOutcome::Optimal { value, point }
}
