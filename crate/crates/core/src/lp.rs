//! Dense two-phase simplex with Bland's rule. Meant for the small programs
//! that arise in dominance tests, not for anything large or sparse.

use crate::error::{Error, Result};

const PIVOT_TOL: f64 = 1e-11;
const FEAS_TOL: f64 = 1e-9;
const MAX_ITER: usize = 50_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<f64>,
    pub relation: Relation,
    pub rhs: f64,
}

/// `maximize c.x  subject to  constraints, x >= 0`.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    pub objective: Vec<f64>,
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
}

struct Tableau {
    // rows 0..m are constraints, each with a trailing rhs entry
    a: Vec<Vec<f64>>,
    // reduced-cost row, z_j = c_B B^-1 a_j - c_j, trailing entry is the objective value
    z: Vec<f64>,
    basis: Vec<usize>,
    width: usize,
    iterations: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let w = self.width;
        let p = self.a[r][c];
        for v in self.a[r].iter_mut() {
            *v /= p;
        }
        let pivot_row = self.a[r].clone();
        for (i, row) in self.a.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c];
            if f != 0.0 {
                for j in 0..=w {
                    row[j] -= f * pivot_row[j];
                }
                row[c] = 0.0;
            }
        }
        let f = self.z[c];
        if f != 0.0 {
            for j in 0..=w {
                self.z[j] -= f * pivot_row[j];
            }
            self.z[c] = 0.0;
        }
        self.basis[r] = c;
    }

    fn set_objective(&mut self, c: &[f64]) {
        let w = self.width;
        self.z = vec![0.0; w + 1];
        for (j, &cj) in c.iter().enumerate() {
            self.z[j] = -cj;
        }
        for r in 0..self.a.len() {
            let cb = c.get(self.basis[r]).copied().unwrap_or(0.0);
            if cb != 0.0 {
                for j in 0..=w {
                    self.z[j] += cb * self.a[r][j];
                }
            }
        }
    }

    /// Runs simplex iterations, letting only columns `< allowed` enter.
    fn optimize(&mut self, allowed: usize) -> Result<()> {
        let w = self.width;
        loop {
            if self.iterations >= MAX_ITER {
                return Err(Error::LpFailure("iteration limit reached".into()));
            }
            let Some(enter) = (0..allowed).find(|&j| self.z[j] < -PIVOT_TOL) else {
                return Ok(());
            };
            let mut leave: Option<(usize, f64)> = None;
            for r in 0..self.a.len() {
                let arc = self.a[r][enter];
                if arc > PIVOT_TOL {
                    let ratio = self.a[r][w] / arc;
                    leave = match leave {
                        None => Some((r, ratio)),
                        Some((lr, lratio)) => {
                            if ratio < lratio - 1e-14
                                || (ratio <= lratio + 1e-14 && self.basis[r] < self.basis[lr])
                            {
                                Some((r, ratio))
                            } else {
                                Some((lr, lratio))
                            }
                        }
                    };
                }
            }
            let Some((r, _)) = leave else {
                return Err(Error::LpFailure("objective unbounded".into()));
            };
            self.pivot(r, enter);
            self.iterations += 1;
        }
    }
}

impl LinearProgram {
    pub fn maximize(&self) -> Result<LpSolution> {
        let n = self.objective.len();
        let m = self.constraints.len();
        for (i, c) in self.constraints.iter().enumerate() {
            if c.coeffs.len() != n {
                return Err(Error::LpFailure(format!(
                    "constraint {i} has {} coefficients, expected {n}",
                    c.coeffs.len()
                )));
            }
            if !c.rhs.is_finite() || c.coeffs.iter().any(|v| !v.is_finite()) {
                return Err(Error::LpFailure(format!("constraint {i} is not finite")));
            }
        }

        // Normalize to nonnegative right-hand sides.
        let rows: Vec<(Vec<f64>, Relation, f64)> = self
            .constraints
            .iter()
            .map(|c| {
                if c.rhs < 0.0 {
                    let rel = match c.relation {
                        Relation::Le => Relation::Ge,
                        Relation::Ge => Relation::Le,
                        Relation::Eq => Relation::Eq,
                    };
                    (c.coeffs.iter().map(|v| -v).collect(), rel, -c.rhs)
                } else {
                    (c.coeffs.clone(), c.relation, c.rhs)
                }
            })
            .collect();

        let n_slack = rows.iter().filter(|r| r.1 != Relation::Eq).count();
        let n_art = rows.iter().filter(|r| r.1 != Relation::Le).count();
        let width = n + n_slack + n_art;
        let art_start = n + n_slack;

        let mut a = vec![vec![0.0; width + 1]; m];
        let mut basis = vec![0; m];
        let (mut s, mut t) = (n, art_start);
        for (r, (coeffs, rel, rhs)) in rows.iter().enumerate() {
            a[r][..n].copy_from_slice(coeffs);
            a[r][width] = *rhs;
            match rel {
                Relation::Le => {
                    a[r][s] = 1.0;
                    basis[r] = s;
                    s += 1;
                }
                Relation::Ge => {
                    a[r][s] = -1.0;
                    s += 1;
                    a[r][t] = 1.0;
                    basis[r] = t;
                    t += 1;
                }
                Relation::Eq => {
                    a[r][t] = 1.0;
                    basis[r] = t;
                    t += 1;
                }
            }
        }

        let mut tab = Tableau {
            a,
            z: Vec::new(),
            basis,
            width,
            iterations: 0,
        };

        if n_art > 0 {
            let mut phase1 = vec![0.0; width];
            phase1[art_start..].iter_mut().for_each(|v| *v = -1.0);
            tab.set_objective(&phase1);
            tab.optimize(width)?;
            let infeas = -tab.z[width];
            let scale = 1.0 + rows.iter().map(|r| r.2).fold(0.0, f64::max);
            if infeas > FEAS_TOL * scale {
                return Err(Error::LpFailure(format!(
                    "infeasible (phase one residual {infeas:e})"
                )));
            }
            // Drive zero-level artificials out of the basis where possible.
            for r in 0..m {
                if tab.basis[r] >= art_start {
                    if let Some(c) = (0..art_start).find(|&j| tab.a[r][j].abs() > 1e-9) {
                        tab.pivot(r, c);
                    }
                }
            }
        }

        let mut c = self.objective.clone();
        c.resize(width, 0.0);
        tab.set_objective(&c);
        tab.optimize(art_start)?;

        let mut x = vec![0.0; n];
        for (r, &b) in tab.basis.iter().enumerate() {
            if b < n {
                x[b] = tab.a[r][width].max(0.0);
            }
        }
        let value = self.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
        Ok(LpSolution {
            x,
            value,
            iterations: tab.iterations,
        })
    }
}
