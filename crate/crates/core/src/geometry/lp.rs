//! Exact two-phase simplex over the rationals with Bland's smallest-index
//! pivot rule, which guarantees termination. Problems are given in equality
//! form with non-negative variables; that is all the cycle polytopes need.

use num::{BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

/// `maximize c.x  subject to  A x = b, x >= 0`.
#[derive(Debug, Clone)]
pub struct Program {
    pub vars: usize,
    pub equalities: Vec<(Vec<BigRational>, BigRational)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal {
        value: BigRational,
        point: Vec<BigRational>,
    },
    Infeasible,
}

struct Tableau {
    cols: usize,
    rows: Vec<Vec<BigRational>>, // each row: coefficients then rhs
    basis: Vec<usize>,
    usable: Vec<bool>,
}

impl Tableau {
    fn rhs(&self, r: usize) -> &BigRational {
        &self.rows[r][self.cols]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let factor = self.rows[r][c].clone();
        for entry in self.rows[r].iter_mut() {
            *entry /= &factor;
        }
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let scale = self.rows[i][c].clone();
            for j in 0..=self.cols {
                let delta = &scale * &self.rows[r][j];
                self.rows[i][j] -= delta;
            }
        }
        self.basis[r] = c;
    }

    /// Reduced cost of column `j` for the objective `obj` (maximization).
    fn reduced_cost(&self, obj: &[BigRational], j: usize) -> BigRational {
        let mut cost = obj[j].clone();
        for (r, &b) in self.basis.iter().enumerate() {
            if !obj[b].is_zero() {
                cost -= &obj[b] * &self.rows[r][j];
            }
        }
        cost
    }

    /// Runs Bland-rule simplex for the maximization objective. Returns
    /// `false` when the objective is unbounded above.
    fn optimize(&mut self, obj: &[BigRational]) -> bool {
        loop {
            let entering = (0..self.cols).find(|&j| {
                self.usable[j] && !self.basis.contains(&j) && self.reduced_cost(obj, j).is_positive()
            });
            let Some(col) = entering else {
                return true;
            };
            let mut leaving: Option<(usize, BigRational)> = None;
            for r in 0..self.rows.len() {
                if self.rows[r][col].is_positive() {
                    let ratio = self.rhs(r) / &self.rows[r][col];
                    let better = match &leaving {
                        None => true,
                        Some((lr, lratio)) => {
                            ratio < *lratio
                                || (ratio == *lratio && self.basis[r] < self.basis[*lr])
                        }
                    };
                    if better {
                        leaving = Some((r, ratio));
                    }
                }
            }
            let Some((row, _)) = leaving else {
                return false;
            };
            self.pivot(row, col);
        }
    }

    fn objective_value(&self, obj: &[BigRational]) -> BigRational {
        self.basis
            .iter()
            .enumerate()
            .fold(BigRational::zero(), |acc, (r, &b)| acc + &obj[b] * self.rhs(r))
    }

    fn extract(&self, vars: usize) -> Vec<BigRational> {
        let mut x = vec![BigRational::zero(); vars];
        for (r, &b) in self.basis.iter().enumerate() {
            if b < vars {
                x[b] = self.rhs(r).clone();
            }
        }
        x
    }
}

fn phase_one(p: &Program) -> Result<Option<Tableau>> {
    let n = p.vars;
    let m = p.equalities.len();
    let cols = n + m;
    let mut rows = Vec::with_capacity(m);
    for (i, (coeffs, rhs)) in p.equalities.iter().enumerate() {
        if coeffs.len() != n {
            return Err(Error::Precondition(format!(
                "equality row has {} coefficients for {} variables",
                coeffs.len(),
                n
            )));
        }
        let flip = rhs.is_negative();
        let mut row: Vec<BigRational> = coeffs
            .iter()
            .map(|c| if flip { -c } else { c.clone() })
            .collect();
        row.resize(cols, BigRational::zero());
        row[n + i] = BigRational::one();
        row.push(if flip { -rhs } else { rhs.clone() });
        rows.push(row);
    }
    let mut t = Tableau {
        cols,
        rows,
        basis: (n..n + m).collect(),
        usable: vec![true; cols],
    };
    // maximize minus the sum of artificials
    let mut obj = vec![BigRational::zero(); cols];
    for slot in obj.iter_mut().skip(n) {
        *slot = -BigRational::one();
    }
    let bounded = t.optimize(&obj);
    debug_assert!(bounded, "phase one objective is bounded by zero");
    if !t.objective_value(&obj).is_zero() {
        return Ok(None);
    }
    // Drive leftover artificials out of the basis.
    let mut r = 0;
    while r < t.rows.len() {
        if t.basis[r] >= n {
            if let Some(c) = (0..n).find(|&c| !t.rows[r][c].is_zero()) {
                t.pivot(r, c);
            } else {
                // redundant constraint
                t.rows.remove(r);
                t.basis.remove(r);
                continue;
            }
        }
        r += 1;
    }
    for j in n..cols {
        t.usable[j] = false;
    }
    Ok(Some(t))
}

/// A feasible point of the program, if one exists.
pub fn feasible_point(p: &Program) -> Result<Option<Vec<BigRational>>> {
    Ok(phase_one(p)?.map(|t| t.extract(p.vars)))
}

/// Maximizes `objective . x` over the program. Unboundedness is reported as
/// an internal error: every program in this crate constrains its variables
/// to a simplex slice, so an unbounded ray signals a modelling bug.
pub fn maximize(p: &Program, objective: &[BigRational]) -> Result<LpOutcome> {
    if objective.len() != p.vars {
        return Err(Error::Precondition(format!(
            "objective has {} coefficients for {} variables",
            objective.len(),
            p.vars
        )));
    }
    let Some(mut t) = phase_one(p)? else {
        return Ok(LpOutcome::Infeasible);
    };
    let mut obj = objective.to_vec();
    obj.resize(t.cols, BigRational::zero());
    if !t.optimize(&obj) {
        return Err(Error::InternalInconsistency(
            "objective unbounded over a bounded feasible set".into(),
        ));
    }
    let point = t.extract(p.vars);
    let value = t.objective_value(&obj);
    Ok(LpOutcome::Optimal { value, point })
}
