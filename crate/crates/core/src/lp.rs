//! Packing linear programs over path-like columns.
//!
//! Every LP here has the shape `max r^T x  s.t.  A x <= b, x >= 0` with
//! `A >= 0` and `b >= 0`, so the slack basis is always feasible and a
//! phase-one is never needed. The engine is a dense revised simplex with an
//! explicit basis inverse, sized for graph instances with up to a few
//! hundred rows. Exact scalars use Bland's rule throughout; floating point
//! uses Dantzig pricing and falls back to Bland after a run of degenerate
//! pivots.

use std::collections::HashSet;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// One LP variable: objective coefficient and sparse row coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Column<T, K> {
    pub key: K,
    pub objective: T,
    pub entries: Vec<(usize, T)>,
}

impl<T: Scalar, K> Column<T, K> {
    pub fn new(key: K, objective: T, entries: Vec<(usize, T)>) -> Self {
        Column {
            key,
            objective,
            entries,
        }
    }

    /// `r_j - y^T a_j`
    pub fn reduced_cost(&self, dual: &[T]) -> T {
        self.entries.iter().fold(self.objective.clone(), |acc, (row, a)| {
            acc - dual[*row].clone() * a.clone()
        })
    }
}

/// An explicit packing LP.
#[derive(Clone, Debug)]
pub struct PackingLp<T, K> {
    pub bounds: Vec<T>,
    pub columns: Vec<Column<T, K>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug)]
pub struct LpResult<T, K> {
    pub status: LpStatus,
    /// Value of every known column, in insertion order.
    pub primal: Vec<(K, T)>,
    /// One nonnegative multiplier per row.
    pub dual: Vec<T>,
    pub objective: T,
}

impl<T: Scalar, K> LpResult<T, K> {
    /// Columns carrying a value above tolerance.
    pub fn support(&self) -> impl Iterator<Item = (&K, &T)> {
        self.primal
            .iter()
            .filter(|(_, v)| v.is_positive_tol())
            .map(|(k, v)| (k, v))
    }

    /// `b^T y`
    pub fn dual_objective(&self, bounds: &[T]) -> T {
        bounds
            .iter()
            .zip(&self.dual)
            .fold(T::zero(), |acc, (b, y)| acc + b.clone() * y.clone())
    }
}

/// Solves a packing LP with an explicit, finite column set.
pub fn solve_explicit<T: Scalar, K: Clone>(lp: PackingLp<T, K>) -> Result<LpResult<T, K>> {
    let mut simplex = Simplex::new(lp.bounds);
    let mut keys = Vec::with_capacity(lp.columns.len());
    for col in lp.columns {
        keys.push(col.key);
        simplex.push_column(col.objective, col.entries);
    }
    let status = simplex.solve()?;
    Ok(simplex.result(keys, status))
}

/// Dual separation oracle for [`column_generation`].
///
/// Given row duals, returns columns whose dual constraint is violated
/// (reduced cost above tolerance), or an empty vector when there is none.
pub trait Pricer<T, K> {
    fn price(&mut self, dual: &[T]) -> Result<Vec<Column<T, K>>>;
}

impl<T, K, F> Pricer<T, K> for F
where
    F: FnMut(&[T]) -> Result<Vec<Column<T, K>>>,
{
    fn price(&mut self, dual: &[T]) -> Result<Vec<Column<T, K>>> {
        self(dual)
    }
}

/// Column generation with warm-started restricted masters.
///
/// Offered columns that are already present, or whose reduced cost is not
/// positive beyond tolerance, are rejected; the loop stops once a pricing
/// round yields nothing new.
pub fn column_generation<T, K, P>(
    pricer: &mut P,
    initial_columns: Vec<Column<T, K>>,
    bounds: Vec<T>,
) -> Result<LpResult<T, K>>
where
    T: Scalar,
    K: Clone + Eq + Hash,
    P: Pricer<T, K> + ?Sized,
{
    let mut simplex = Simplex::new(bounds);
    let mut keys: Vec<K> = Vec::new();
    let mut known: HashSet<K> = HashSet::new();
    for col in initial_columns {
        if known.insert(col.key.clone()) {
            keys.push(col.key);
            simplex.push_column(col.objective, col.entries);
        }
    }
    loop {
        let status = simplex.solve()?;
        if status != LpStatus::Optimal {
            return Ok(simplex.result(keys, status));
        }
        let dual = simplex.duals();
        let mut added = false;
        for col in pricer.price(&dual)? {
            if known.contains(&col.key) || !col.reduced_cost(&dual).is_positive_tol() {
                continue;
            }
            known.insert(col.key.clone());
            keys.push(col.key);
            simplex.push_column(col.objective, col.entries);
            added = true;
        }
        if !added {
            return Ok(simplex.result(keys, status));
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Var {
    Slack(usize),
    Col(usize),
}

/// Revised simplex over a growing column set.
struct Simplex<T> {
    bounds: Vec<T>,
    objective: Vec<T>,
    entries: Vec<Vec<(usize, T)>>,
    basis: Vec<Var>,
    /// Row of the basis each column occupies, if basic.
    col_pos: Vec<Option<usize>>,
    slack_pos: Vec<Option<usize>>,
    binv: Vec<Vec<T>>,
    xb: Vec<T>,
    infeasible: bool,
}

const MAX_PIVOTS: usize = 200_000;
const DEGENERATE_RUN: usize = 50;

impl<T: Scalar> Simplex<T> {
    fn new(bounds: Vec<T>) -> Self {
        let m = bounds.len();
        let infeasible = bounds.iter().any(|b| *b < T::zero());
        let binv = (0..m)
            .map(|i| (0..m).map(|j| if i == j { T::one() } else { T::zero() }).collect())
            .collect();
        Simplex {
            xb: bounds.clone(),
            bounds,
            objective: Vec::new(),
            entries: Vec::new(),
            basis: (0..m).map(Var::Slack).collect(),
            col_pos: Vec::new(),
            slack_pos: (0..m).map(Some).collect(),
            binv,
            infeasible,
        }
    }

    fn rows(&self) -> usize {
        self.bounds.len()
    }

    fn push_column(&mut self, objective: T, entries: Vec<(usize, T)>) {
        debug_assert!(entries.iter().all(|(r, _)| *r < self.rows()));
        self.objective.push(objective);
        self.entries.push(entries);
        self.col_pos.push(None);
    }

    fn order(&self, v: Var) -> usize {
        match v {
            Var::Slack(i) => i,
            Var::Col(j) => self.rows() + j,
        }
    }

    fn cost(&self, v: Var) -> T {
        match v {
            Var::Slack(_) => T::zero(),
            Var::Col(j) => self.objective[j].clone(),
        }
    }

    fn duals(&self) -> Vec<T> {
        let m = self.rows();
        let mut y = vec![T::zero(); m];
        for (k, var) in self.basis.iter().enumerate() {
            let c = self.cost(*var);
            if c.is_zero() {
                continue;
            }
            for (i, yi) in y.iter_mut().enumerate() {
                let b = &self.binv[k][i];
                if !b.is_zero() {
                    *yi = yi.clone() + c.clone() * b.clone();
                }
            }
        }
        if !T::EXACT {
            for v in &mut y {
                if *v < T::zero() && v.approx_eq(&T::zero()) {
                    *v = T::zero();
                }
            }
        }
        y
    }

    fn reduced_cost(&self, v: Var, y: &[T]) -> T {
        match v {
            Var::Slack(i) => -y[i].clone(),
            Var::Col(j) => self.entries[j]
                .iter()
                .fold(self.objective[j].clone(), |acc, (r, a)| acc - y[*r].clone() * a.clone()),
        }
    }

    fn is_basic(&self, v: Var) -> bool {
        match v {
            Var::Slack(i) => self.slack_pos[i].is_some(),
            Var::Col(j) => self.col_pos[j].is_some(),
        }
    }

    fn candidates(&self) -> impl Iterator<Item = Var> + '_ {
        (0..self.rows())
            .map(Var::Slack)
            .chain((0..self.objective.len()).map(Var::Col))
            .filter(|v| !self.is_basic(*v))
    }

    fn entering(&self, y: &[T], bland: bool) -> Option<Var> {
        if bland {
            return self.candidates().find(|v| self.reduced_cost(*v, y).is_positive_tol());
        }
        let mut best: Option<(Var, T)> = None;
        for v in self.candidates() {
            let d = self.reduced_cost(v, y);
            if d.is_positive_tol() && best.as_ref().is_none_or(|(_, b)| d > *b) {
                best = Some((v, d));
            }
        }
        best.map(|(v, _)| v)
    }

    /// `B^{-1} a_v`
    fn direction(&self, v: Var) -> Vec<T> {
        match v {
            Var::Slack(i) => self.binv.iter().map(|row| row[i].clone()).collect(),
            Var::Col(j) => self
                .binv
                .iter()
                .map(|row| {
                    self.entries[j]
                        .iter()
                        .fold(T::zero(), |acc, (r, a)| acc + row[*r].clone() * a.clone())
                })
                .collect(),
        }
    }

    fn solve(&mut self) -> Result<LpStatus> {
        if self.infeasible {
            return Ok(LpStatus::Infeasible);
        }
        let mut degenerate_run = 0usize;
        for _ in 0..MAX_PIVOTS {
            let y = self.duals();
            let bland = T::EXACT || degenerate_run >= DEGENERATE_RUN;
            let Some(enter) = self.entering(&y, bland) else {
                return Ok(LpStatus::Optimal);
            };
            let alpha = self.direction(enter);
            let mut leave: Option<(usize, T)> = None;
            for (k, a) in alpha.iter().enumerate() {
                if !a.is_positive_tol() {
                    continue;
                }
                let ratio = self.xb[k].clone() / a.clone();
                let better = match &leave {
                    None => true,
                    Some((lk, lr)) => {
                        ratio < *lr || (ratio.approx_eq(lr) && self.order(self.basis[k]) < self.order(self.basis[*lk]))
                    }
                };
                if better {
                    leave = Some((k, ratio));
                }
            }
            let Some((row, step)) = leave else {
                return Ok(LpStatus::Unbounded);
            };
            if step.is_positive_tol() {
                degenerate_run = 0;
            } else {
                degenerate_run += 1;
            }
            self.pivot(enter, row, &alpha);
        }
        Err(Error::IterationLimit(MAX_PIVOTS))
    }

    fn pivot(&mut self, enter: Var, row: usize, alpha: &[T]) {
        let pivot = alpha[row].clone();
        for v in self.binv[row].iter_mut() {
            if !v.is_zero() {
                *v = v.clone() / pivot.clone();
            }
        }
        self.xb[row] = self.xb[row].clone() / pivot;
        let pivot_row = self.binv[row].clone();
        let pivot_x = self.xb[row].clone();
        let rows = self.binv.iter_mut().zip(self.xb.iter_mut()).zip(alpha);
        for (k, ((binv, xb), f)) in rows.enumerate() {
            if k == row || f.is_zero() {
                continue;
            }
            for (v, p) in binv.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v = v.clone() - f.clone() * p.clone();
                }
            }
            let x = xb.clone() - f.clone() * pivot_x.clone();
            *xb = if !T::EXACT && x < T::zero() && x.approx_eq(&T::zero()) {
                T::zero()
            } else {
                x
            };
        }
        match self.basis[row] {
            Var::Slack(i) => self.slack_pos[i] = None,
            Var::Col(j) => self.col_pos[j] = None,
        }
        match enter {
            Var::Slack(i) => self.slack_pos[i] = Some(row),
            Var::Col(j) => self.col_pos[j] = Some(row),
        }
        self.basis[row] = enter;
    }

    fn result<K>(&self, keys: Vec<K>, status: LpStatus) -> LpResult<T, K> {
        let values: Vec<T> = self
            .col_pos
            .iter()
            .map(|pos| match pos {
                Some(r) => {
                    let x = self.xb[*r].clone();
                    if x < T::zero() {
                        T::zero()
                    } else {
                        x
                    }
                }
                None => T::zero(),
            })
            .collect();
        let objective = values
            .iter()
            .zip(&self.objective)
            .fold(T::zero(), |acc, (x, c)| acc + x.clone() * c.clone());
        LpResult {
            status,
            primal: keys.into_iter().zip(values).collect(),
            dual: if status == LpStatus::Optimal {
                self.duals()
            } else {
                vec![T::zero(); self.rows()]
            },
            objective,
        }
    }
}
