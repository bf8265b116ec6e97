//! Exact rational linear programming by the two-phase primal simplex
//! method with Bland's rule. Dense tableau, no tolerances, no scaling: the
//! instances this crate sees have a handful of rows and columns, so the
//! priority is termination and exactness, not speed.

use crate::error::{Error, Result};
use crate::poly::HPolyhedron;
use crate::rat::{QVector, Rational};

/// Result of maximizing a linear functional over a polyhedron.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    /// Finite optimum, attained at the returned point (a vertex of the
    /// feasible region whenever the region is pointed).
    Optimal { value: Rational, point: QVector },
    /// A recession direction of the feasible set with positive objective.
    Unbounded { ray: QVector },
    /// Farkas certificate: multipliers `y >= 0` over the halfspace rows
    /// with `y^T A >= 0` on sign-constrained coordinates, `= 0` on free
    /// ones, and `y^T b < 0`.
    Infeasible { certificate: Vec<Rational> },
}

/// Maximize `objective . x` over `p`.
pub fn lp_max(objective: &QVector, p: &HPolyhedron) -> Result<LpOutcome> {
    if objective.dim() != p.dim {
        return Err(Error::DimensionMismatch {
            left: objective.dim(),
            right: p.dim,
        });
    }
    let n = p.dim;
    let rows: Vec<&QVector> = p.halfspaces.iter().map(|h| &h.normal).collect();
    let rhs: Vec<Rational> = p.halfspaces.iter().map(|h| h.rhs.clone()).collect();
    if p.nonneg {
        let a: Vec<QVector> = rows.iter().map(|r| (*r).clone()).collect();
        Ok(match simplex_max(&a, &rhs, objective) {
            StdOutcome::Optimal { value, point } => LpOutcome::Optimal { value, point },
            StdOutcome::Unbounded { ray } => LpOutcome::Unbounded { ray },
            StdOutcome::Infeasible { dual } => LpOutcome::Infeasible { certificate: dual },
        })
    } else {
        // Split free variables: x = u - v with u, v >= 0.
        let split = |v: &QVector| {
            let mut e: Vec<Rational> = v.entries().to_vec();
            e.extend(v.entries().iter().map(|r| -r));
            QVector::new(e)
        };
        let a: Vec<QVector> = rows.iter().map(|r| split(r)).collect();
        let c = split(objective);
        let unsplit = |x: &QVector| {
            QVector::new((0..n).map(|j| x.get(j) - x.get(n + j)).collect())
        };
        Ok(match simplex_max(&a, &rhs, &c) {
            StdOutcome::Optimal { value, point } => LpOutcome::Optimal {
                value,
                point: unsplit(&point),
            },
            StdOutcome::Unbounded { ray } => LpOutcome::Unbounded { ray: unsplit(&ray) },
            StdOutcome::Infeasible { dual } => LpOutcome::Infeasible { certificate: dual },
        })
    }
}

pub(crate) enum StdOutcome {
    Optimal { value: Rational, point: QVector },
    Unbounded { ray: QVector },
    Infeasible { dual: Vec<Rational> },
}

/// Maximize `c . x` subject to `A x <= b`, `x >= 0`.
pub(crate) fn simplex_max(a: &[QVector], b: &[Rational], c: &QVector) -> StdOutcome {
    Tableau::new(a, b, c).solve()
}

/// Full simplex tableau: `m` constraint rows over `n` structural columns,
/// `m` slack columns, and (during phase 1) one artificial column.
struct Tableau {
    n: usize,
    m: usize,
    /// m x cols coefficient matrix in the current basis.
    t: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    /// Reduced-cost row for the current objective.
    zrow: Vec<Rational>,
    zval: Rational,
    cols: usize,
    /// Structural objective, kept for phase 2.
    obj: Vec<Rational>,
}

impl Tableau {
    fn new(a: &[QVector], b: &[Rational], c: &QVector) -> Self {
        let m = a.len();
        let n = c.dim();
        let cols = n + m;
        let mut t = Vec::with_capacity(m);
        for (i, row) in a.iter().enumerate() {
            assert_eq!(row.dim(), n, "constraint row width");
            let mut r: Vec<Rational> = row.entries().to_vec();
            for j in 0..m {
                r.push(if i == j { Rational::one() } else { Rational::zero() });
            }
            t.push(r);
        }
        Tableau {
            n,
            m,
            t,
            rhs: b.to_vec(),
            basis: (n..n + m).collect(),
            zrow: vec![Rational::zero(); cols],
            zval: Rational::zero(),
            cols,
            obj: c.entries().to_vec(),
        }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.t[row][col].recip();
        for x in self.t[row].iter_mut() {
            *x = &*x * &inv;
        }
        self.rhs[row] = &self.rhs[row] * &inv;
        for i in 0..self.m {
            if i == row || self.t[i][col].is_zero() {
                continue;
            }
            let factor = self.t[i][col].clone();
            for j in 0..self.cols {
                if !self.t[row][j].is_zero() {
                    let delta = &self.t[row][j] * &factor;
                    self.t[i][j] = &self.t[i][j] - &delta;
                }
            }
            let delta = &self.rhs[row] * &factor;
            self.rhs[i] = &self.rhs[i] - &delta;
        }
        if !self.zrow[col].is_zero() {
            let factor = self.zrow[col].clone();
            for j in 0..self.cols {
                if !self.t[row][j].is_zero() {
                    let delta = &self.t[row][j] * &factor;
                    self.zrow[j] = &self.zrow[j] - &delta;
                }
            }
            let delta = &self.rhs[row] * &factor;
            self.zval = &self.zval + &delta;
        }
        self.basis[row] = col;
    }

    /// Rebuild the reduced-cost row for objective `cost` (length `cols`).
    fn set_objective(&mut self, cost: &[Rational]) {
        self.zrow = cost.to_vec();
        self.zval = Rational::zero();
        for i in 0..self.m {
            let cb = cost[self.basis[i]].clone();
            if cb.is_zero() {
                continue;
            }
            for j in 0..self.cols {
                if !self.t[i][j].is_zero() {
                    let delta = &self.t[i][j] * &cb;
                    self.zrow[j] = &self.zrow[j] - &delta;
                }
            }
            let delta = &self.rhs[i] * &cb;
            self.zval = &self.zval + &delta;
        }
    }

    /// Bland's pivoting until optimal or unbounded. Returns the entering
    /// column on unboundedness.
    fn run(&mut self) -> Option<usize> {
        loop {
            // Entering: lowest-index column with positive reduced cost.
            let col = (0..self.cols).find(|&j| self.zrow[j].is_positive())?;
            // Leaving: minimum ratio, ties broken by lowest basis index.
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.m {
                if !self.t[i][col].is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / &self.t[i][col];
                best = match best {
                    None => Some((i, ratio)),
                    Some((bi, br)) => {
                        if ratio < br || (ratio == br && self.basis[i] < self.basis[bi]) {
                            Some((i, ratio))
                        } else {
                            Some((bi, br))
                        }
                    }
                };
            }
            match best {
                Some((row, _)) => self.pivot(row, col),
                None => return Some(col),
            }
        }
    }

    fn solve(mut self) -> StdOutcome {
        let n = self.n;
        let m = self.m;
        if self.rhs.iter().any(Rational::is_negative) {
            // Phase 1: maximize -x0 for Ax - x0 <= b.
            let art = self.cols;
            self.cols += 1;
            for row in self.t.iter_mut() {
                row.push(-Rational::one());
            }
            let worst = (0..m)
                .min_by(|&i, &j| self.rhs[i].cmp(&self.rhs[j]))
                .expect("some negative rhs");
            self.zrow.push(Rational::zero());
            self.pivot(worst, art);
            let mut aux = vec![Rational::zero(); self.cols];
            aux[art] = -Rational::one();
            self.set_objective(&aux);
            let unbounded = self.run();
            debug_assert!(unbounded.is_none(), "aux objective is bounded above by 0");
            if self.zval.is_negative() {
                // y_i is the negated reduced cost of slack i.
                let dual: Vec<Rational> = (0..m).map(|i| -&self.zrow[n + i]).collect();
                return StdOutcome::Infeasible { dual };
            }
            if let Some(row) = (0..m).find(|&i| self.basis[i] == art) {
                // Artificial stuck in the basis at value zero: pivot it out
                // on any other nonzero entry of its row (always exists since
                // the slack block of the row is a row of an invertible
                // matrix), a degenerate pivot.
                let col = (0..art)
                    .find(|&j| !self.t[row][j].is_zero())
                    .expect("basis row has a nonzero slack entry");
                self.pivot(row, col);
            }
            // Drop the artificial column.
            self.cols -= 1;
            for r in self.t.iter_mut() {
                r.pop();
            }
            self.zrow.pop();
        }
        // Phase 2.
        let mut cost = vec![Rational::zero(); self.cols];
        cost[..n].clone_from_slice(&self.obj);
        self.set_objective(&cost);
        match self.run() {
            None => {
                let mut point = QVector::zeros(n);
                for i in 0..m {
                    if self.basis[i] < n {
                        point.set(self.basis[i], self.rhs[i].clone());
                    }
                }
                StdOutcome::Optimal {
                    value: self.zval.clone(),
                    point,
                }
            }
            Some(col) => {
                let mut ray = QVector::zeros(n);
                if col < n {
                    ray.set(col, Rational::one());
                }
                for i in 0..m {
                    if self.basis[i] < n && !self.t[i][col].is_zero() {
                        ray.set(self.basis[i], -&self.t[i][col]);
                    }
                }
                StdOutcome::Unbounded { ray }
            }
        }
    }
}
