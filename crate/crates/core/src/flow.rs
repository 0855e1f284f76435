//! Robust maximum flow.
//!
//! For a fixed guess `λ = 1/c_f` of the most expensive arc the interdictor
//! touches, the flow player's problem is a packing LP over paths with
//! scaled coefficients `min(λ c̄_P, 1)`. Its dual separation problem is a
//! family of shortest-path problems, one per distinct scaled cost, so each
//! LP is solved by column generation. The robust optimum is the best LP
//! value over all candidate arcs (or zero).

use std::collections::HashSet;
use std::thread;

use crate::error::{Error, Result};
use crate::ext::Ext;
use crate::graph::{bottleneck_cost, validate_instance, ArcId, Budgets, Network, Path, PathFlow, Terminal};
use crate::interdiction::evaluate;
use crate::lp::{column_generation, Column, LpStatus};
use crate::paths::{shortest_path, widest_path};
use crate::scalar::Scalar;

/// How candidate breakpoints are searched.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SearchMode {
    /// Solve the LP at every candidate.
    #[default]
    Enumerate,
    /// Newton-type search with line intersections, pruning intervals by an
    /// upper bound on the parametric objective.
    Newton,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RfOptions {
    pub mode: SearchMode,
    /// Worker threads for enumeration; Newton search is sequential.
    pub threads: usize,
}

impl Default for RfOptions {
    fn default() -> Self {
        RfOptions {
            mode: SearchMode::Enumerate,
            threads: 1,
        }
    }
}

impl RfOptions {
    pub fn newton() -> Self {
        RfOptions {
            mode: SearchMode::Newton,
            ..Self::default()
        }
    }
}

/// Costs rescaled for breakpoint arc `arc`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScaledCosts<T> {
    pub arc: ArcId,
    /// `B_I / c_f`
    pub b_prime: T,
    /// `min(c_e / c_f, 1)`, with `inf` mapped to 1.
    pub c_prime: Vec<T>,
}

impl<T: Scalar> ScaledCosts<T> {
    /// Smallest scaled cost along `path`.
    pub fn cbar_prime(&self, path: &Path) -> T {
        min_along(&self.c_prime, path)
    }
}

fn min_along<T: Scalar>(values: &[T], path: &Path) -> T {
    path.arcs()
        .iter()
        .map(|a| values[a.0].clone())
        .reduce(T::min_of)
        .unwrap_or_else(T::one)
}

pub fn build_scaled_costs<T: Scalar>(network: &Network<T>, f: ArcId, interdictor_budget: &T) -> Result<ScaledCosts<T>> {
    let Ext::Finite(cf) = &network.arc(f)?.cost else {
        return Err(Error::InvalidBreakpoint(f));
    };
    if *cf <= T::zero() {
        return Err(Error::InvalidBreakpoint(f));
    }
    Ok(ScaledCosts {
        arc: f,
        b_prime: interdictor_budget.clone() / cf.clone(),
        c_prime: scale_costs(network, &Ext::Finite(cf.clone())),
    })
}

fn scale_costs<T: Scalar>(network: &Network<T>, cf: &Ext<T>) -> Vec<T> {
    network
        .arcs()
        .iter()
        .map(|a| match (&a.cost, cf) {
            (Ext::Infinite, _) => T::one(),
            (Ext::Finite(_), Ext::Infinite) => T::zero(),
            (Ext::Finite(c), Ext::Finite(f)) => T::min_of(c.clone() / f.clone(), T::one()),
        })
        .collect()
}

/// A candidate value of `λ`. `arc` is the lowest-id arc of that cost and is
/// `None` for `λ = 0` (only unattackable paths count).
#[derive(Clone, Debug, PartialEq)]
pub struct Breakpoint<T> {
    pub arc: Option<ArcId>,
    pub cost: Ext<T>,
    pub lambda: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BreakpointValue<T> {
    pub breakpoint: Breakpoint<T>,
    /// LP objective including the `-λ B_I` offset.
    pub lp_value: T,
    pub flow: PathFlow<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RfSolution<T> {
    pub flow: PathFlow<T>,
    /// Value of `flow` against the greedy interdictor.
    pub robust_value: T,
    /// Best LP objective, clamped at zero.
    pub lp_value: T,
    /// Winning breakpoint; `None` when every flow can be stolen entirely.
    pub breakpoint: Option<Breakpoint<T>>,
    pub fully_interdictable: bool,
    /// Every LP solved, in increasing `λ`.
    pub breakpoints: Vec<BreakpointValue<T>>,
}

impl<T: Scalar> RfSolution<T> {
    pub fn lambda(&self) -> Option<&T> {
        self.breakpoint.as_ref().map(|b| &b.lambda)
    }

    /// See [`concavity_defect`].
    pub fn concavity_defect(&self) -> T {
        let points: Vec<(T, T)> = self
            .breakpoints
            .iter()
            .map(|b| (b.breakpoint.lambda.clone(), b.lp_value.clone()))
            .collect();
        concavity_defect(&points)
    }
}

/// Largest increase between successive slopes of the points `(λ, value)`,
/// sorted by `λ`; zero when the sequence is concave.
pub fn concavity_defect<T: Scalar>(points: &[(T, T)]) -> T {
    let slopes: Vec<T> = points
        .windows(2)
        .map(|w| (w[1].1.clone() - w[0].1.clone()) / (w[1].0.clone() - w[0].0.clone()))
        .collect();
    slopes
        .windows(2)
        .map(|s| s[1].clone() - s[0].clone())
        .fold(T::zero(), T::max_of)
}

/// Largest bottleneck cost over `terminal` paths (widest path on costs).
pub fn compute_c_bot<T: Scalar>(network: &Network<T>, terminal: &Terminal<T>) -> Result<Ext<T>> {
    widest_path(network, terminal.source, terminal.sink, |a| {
        network.arcs()[a.0].cost.clone()
    })
    .map(|(w, _)| w)
    .ok_or(Error::Disconnected {
        from: terminal.source,
        to: terminal.sink,
    })
}

/// Row layout shared by all LPs of one instance: one row per
/// finite-capacity arc, plus the flow-player budget row if present.
struct LpFlow<'a, T> {
    network: &'a Network<T>,
    row_of: Vec<Option<usize>>,
    bounds: Vec<T>,
    budget_row: Option<usize>,
}

impl<'a, T: Scalar> LpFlow<'a, T> {
    fn new(network: &'a Network<T>, flow_budget: Option<&T>) -> Self {
        let mut row_of = vec![None; network.num_arcs()];
        let mut bounds = Vec::new();
        for (i, arc) in network.arcs().iter().enumerate() {
            if let Ext::Finite(u) = &arc.capacity {
                row_of[i] = Some(bounds.len());
                bounds.push(u.clone());
            }
        }
        let budget_row = flow_budget.map(|b| {
            bounds.push(b.clone());
            bounds.len() - 1
        });
        LpFlow {
            network,
            row_of,
            bounds,
            budget_row,
        }
    }

    /// `None` for a path of infinite price under a flow budget.
    fn column(&self, path: Path, c_prime: &[T]) -> Option<Column<T, Path>> {
        let mut entries: Vec<(usize, T)> = path
            .arcs()
            .iter()
            .filter_map(|a| self.row_of[a.0].map(|r| (r, T::one())))
            .collect();
        if let Some(r) = self.budget_row {
            let mut price = Ext::zero();
            for a in path.arcs() {
                price = price.add(&self.network.arcs()[a.0].price);
            }
            let price = price.into_finite()?;
            if !price.is_zero() {
                entries.push((r, price));
            }
        }
        let objective = min_along(c_prime, &path);
        Some(Column::new(path, objective, entries))
    }

    /// Dual row prices folded onto arcs: `y_e + μ γ_e`.
    fn arc_weights(&self, dual: &[T]) -> Vec<Option<T>> {
        let mu = self.budget_row.map(|r| dual[r].clone());
        self.network
            .arcs()
            .iter()
            .enumerate()
            .map(|(i, arc)| {
                let y = self.row_of[i].map_or_else(T::zero, |r| dual[r].clone());
                match &mu {
                    None => Some(y),
                    Some(mu) => arc.price.finite().map(|g| y + mu.clone() * g.clone()),
                }
            })
            .collect()
    }

    /// Violated path constraints of every commodity.
    fn price(&self, c_prime: &[T], levels: &[T], dual: &[T]) -> Vec<Column<T, Path>> {
        let weights = self.arc_weights(dual);
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for term in self.network.terminals() {
            for (_, path) in violated_paths(self.network, term, c_prime, levels, &weights) {
                if seen.insert(path.clone()) {
                    out.extend(self.column(path, c_prime));
                }
            }
        }
        out
    }

    /// Solves the LP for scaled costs `c_prime`; returns the optimal
    /// `sum c̄' x` and flow (without the budget offset).
    fn solve(&self, c_prime: &[T]) -> Result<(T, PathFlow<T>)> {
        let levels = distinct_positive(c_prime);
        let mut pricer = |dual: &[T]| -> Result<Vec<Column<T, Path>>> { Ok(self.price(c_prime, &levels, dual)) };
        let res = column_generation(&mut pricer, Vec::new(), self.bounds.clone())?;
        match res.status {
            LpStatus::Optimal => {}
            LpStatus::Unbounded => return Err(Error::Unbounded),
            LpStatus::Infeasible => return Err(Error::Pricing("restricted master infeasible".into())),
        }
        let flow = res.support().map(|(p, v)| (p.clone(), v.clone())).collect();
        Ok((res.objective, flow))
    }
}

fn distinct_positive<T: Scalar>(values: &[T]) -> Vec<T> {
    let mut out: Vec<T> = values.iter().filter(|v| **v > T::zero()).cloned().collect();
    out.sort_by(|a, b| a.partial_cmp(b).expect("comparable"));
    out.dedup();
    out
}

/// For each level `γ`, the shortest path over arcs with `c'_e >= γ`; kept
/// when its length is below `γ`.
fn violated_paths<T: Scalar>(
    network: &Network<T>,
    term: &Terminal<T>,
    c_prime: &[T],
    levels: &[T],
    weights: &[Option<T>],
) -> Vec<(T, Path)> {
    let mut out = Vec::new();
    for gamma in levels {
        let found = shortest_path(network, term.source, term.sink, |a| {
            if c_prime[a.0] >= *gamma {
                weights[a.0].clone()
            } else {
                None
            }
        });
        if let Some((pi, path)) = found {
            if pi.definitely_lt(gamma) {
                out.push((gamma.clone() - pi, path));
            }
        }
    }
    out
}

/// Pricing for a single commodity without flow budget: the most violated
/// path under arc duals `dual`, if any.
pub fn price_lp_flow<T: Scalar>(
    dual: &[T],
    scaled: &ScaledCosts<T>,
    network: &Network<T>,
    terminal: &Terminal<T>,
) -> Option<Path> {
    let levels = distinct_positive(&scaled.c_prime);
    let weights: Vec<Option<T>> = dual.iter().cloned().map(Some).collect();
    violated_paths(network, terminal, &scaled.c_prime, &levels, &weights)
        .into_iter()
        .reduce(|a, b| if b.0 > a.0 { b } else { a })
        .map(|(_, p)| p)
}

/// LP for breakpoint arc `f`: returns an optimal flow and the objective
/// `sum c̄'_P x_P - B'`.
pub fn solve_lp_flow_fixed_arc<T: Scalar>(
    network: &Network<T>,
    budgets: &Budgets<T>,
    f: ArcId,
) -> Result<(PathFlow<T>, T)> {
    let scaled = build_scaled_costs(network, f, &budgets.interdictor)?;
    let (obj, flow) = LpFlow::new(network, None).solve(&scaled.c_prime)?;
    Ok((flow, obj - scaled.b_prime))
}

/// Robust flow over every commodity of `network`.
pub fn solve_rf<T: Scalar>(network: &Network<T>, budgets: &Budgets<T>, options: RfOptions) -> Result<RfSolution<T>> {
    solve(network, budgets, options, None)
}

/// Robust flow whose total protection price `sum_e γ_e x_e` is at most `B_F`.
pub fn solve_rf_budgeted<T: Scalar>(
    network: &Network<T>,
    budgets: &Budgets<T>,
    options: RfOptions,
) -> Result<RfSolution<T>> {
    let bf = budgets.flow_player.as_ref().ok_or(Error::MissingFlowBudget)?;
    solve(network, budgets, options, Some(bf))
}

/// Same as [`solve_rf`]; paths of all commodities compete for capacity.
pub fn solve_rf_multicommodity<T: Scalar>(
    network: &Network<T>,
    budgets: &Budgets<T>,
    options: RfOptions,
) -> Result<RfSolution<T>> {
    solve_rf(network, budgets, options)
}

/// Candidate breakpoints in increasing `λ`: the unattackable regime when
/// some path has infinite bottleneck, then every distinct positive finite
/// cost up to `c_bot` in decreasing order.
fn candidates<T: Scalar>(network: &Network<T>) -> Result<Vec<Breakpoint<T>>> {
    let mut c_bot: Option<Ext<T>> = None;
    let mut first_err = None;
    for term in network.terminals() {
        match compute_c_bot(network, term) {
            Ok(c) => c_bot = Some(c_bot.map_or(c.clone(), |b| b.max(c))),
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
    }
    let Some(c_bot) = c_bot else {
        return Err(first_err.unwrap_or(Error::InvalidInstance(Vec::new())));
    };
    let mut out = Vec::new();
    if c_bot.is_infinite() {
        out.push(Breakpoint {
            arc: None,
            cost: Ext::Infinite,
            lambda: T::zero(),
        });
    }
    let mut finite: Vec<(T, ArcId)> = Vec::new();
    for (i, arc) in network.arcs().iter().enumerate() {
        if let Ext::Finite(c) = &arc.cost {
            if *c > T::zero() && Ext::Finite(c.clone()) <= c_bot && !finite.iter().any(|(d, _)| d == c) {
                finite.push((c.clone(), ArcId(i)));
            }
        }
    }
    finite.sort_by(|a, b| b.0.partial_cmp(&a.0).expect("comparable"));
    out.extend(finite.into_iter().map(|(c, arc)| Breakpoint {
        arc: Some(arc),
        lambda: T::one() / c.clone(),
        cost: Ext::Finite(c),
    }));
    Ok(out)
}

fn solve_at<T: Scalar>(lp: &LpFlow<'_, T>, budgets: &Budgets<T>, bp: &Breakpoint<T>) -> Result<BreakpointValue<T>> {
    let c_prime = scale_costs(lp.network, &bp.cost);
    let (obj, flow) = lp.solve(&c_prime)?;
    let lp_value = obj - bp.lambda.clone() * budgets.interdictor.clone();
    Ok(BreakpointValue {
        breakpoint: bp.clone(),
        lp_value,
        flow,
    })
}

fn solve<T: Scalar>(
    network: &Network<T>,
    budgets: &Budgets<T>,
    options: RfOptions,
    flow_budget: Option<&T>,
) -> Result<RfSolution<T>> {
    let violations = validate_instance(network, budgets);
    if !violations.is_empty() {
        return Err(Error::InvalidInstance(violations));
    }
    let cands = candidates(network)?;
    let lp = LpFlow::new(network, flow_budget);
    let mut values = match options.mode {
        SearchMode::Enumerate => enumerate(&lp, budgets, &cands, options.threads)?,
        SearchMode::Newton => newton(&lp, budgets, &cands)?,
    };
    values.sort_by(|a, b| {
        a.breakpoint
            .lambda
            .partial_cmp(&b.breakpoint.lambda)
            .expect("comparable")
    });

    let best =
        values
            .iter()
            .filter(|v| v.lp_value.is_positive_tol())
            .reduce(|a, b| if b.lp_value > a.lp_value { b } else { a });
    let Some(best) = best else {
        return Ok(RfSolution {
            flow: PathFlow::new(),
            robust_value: T::zero(),
            lp_value: T::zero(),
            breakpoint: None,
            fully_interdictable: true,
            breakpoints: values,
        });
    };
    let flow = best.flow.clone();
    let robust_value = evaluate(&flow, network, &budgets.interdictor)?;
    Ok(RfSolution {
        flow,
        robust_value,
        lp_value: best.lp_value.clone(),
        breakpoint: Some(best.breakpoint.clone()),
        fully_interdictable: false,
        breakpoints: values,
    })
}

fn enumerate<T: Scalar>(
    lp: &LpFlow<'_, T>,
    budgets: &Budgets<T>,
    cands: &[Breakpoint<T>],
    threads: usize,
) -> Result<Vec<BreakpointValue<T>>> {
    let threads = threads.max(1).min(cands.len().max(1));
    if threads == 1 {
        return cands.iter().map(|bp| solve_at(lp, budgets, bp)).collect();
    }
    let chunk = cands.len().div_ceil(threads);
    let results: Vec<Result<Vec<BreakpointValue<T>>>> = thread::scope(|scope| {
        let handles: Vec<_> = cands
            .chunks(chunk)
            .map(|part| scope.spawn(move || part.iter().map(|bp| solve_at(lp, budgets, bp)).collect()))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("breakpoint worker panicked"))
            .collect()
    });
    let mut out = Vec::with_capacity(cands.len());
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

/// Sum of `c̄_P x_P` over paths with `λ c̄_P < 1` (`right`) or `<= 1`.
fn slope_mass<T: Scalar>(network: &Network<T>, flow: &PathFlow<T>, lambda: &T, right: bool) -> T {
    let mut total = T::zero();
    for (path, x) in flow.iter() {
        let Ok(Ext::Finite(c)) = bottleneck_cost(path, network) else {
            continue;
        };
        let t = lambda.clone() * c.clone();
        if t < T::one() || (!right && t == T::one()) {
            total = total + c * x.clone();
        }
    }
    total
}

/// Upper bound on the parametric objective between two evaluated
/// breakpoints `a < b`.
///
/// With `W(λ) = value + λ B_I`, every path coefficient `min(λ c̄, 1)` is
/// nondecreasing in `λ` and `min(λ c̄, 1) / λ` is nonincreasing, hence
/// `W(λ) <= min(W(a) λ / a, W(b))` on `[a, b]`.
fn interval_bound<T: Scalar>(a: &BreakpointValue<T>, b: &BreakpointValue<T>, budget: &T) -> T {
    let (la, lb) = (&a.breakpoint.lambda, &b.breakpoint.lambda);
    let wa = a.lp_value.clone() + la.clone() * budget.clone();
    let wb = b.lp_value.clone() + lb.clone() * budget.clone();
    let h = |l: &T| T::min_of(wa.clone() * l.clone() / la.clone(), wb.clone()) - l.clone() * budget.clone();
    let mut best = T::max_of(h(la), h(lb));
    if wa > T::zero() {
        let kink = la.clone() * wb.clone() / wa.clone();
        if kink > *la && kink < *lb {
            best = T::max_of(best, h(&kink));
        }
    }
    best
}

/// Newton-type breakpoint search.
///
/// The zero-`λ` candidate and both ends of the finite range are always
/// solved. Open index intervals are processed best bound first; an interval
/// whose bound cannot beat the incumbent is dropped, otherwise the
/// breakpoint nearest to the intersection of the two supporting lines is
/// solved and the interval split.
fn newton<T: Scalar>(
    lp: &LpFlow<'_, T>,
    budgets: &Budgets<T>,
    cands: &[Breakpoint<T>],
) -> Result<Vec<BreakpointValue<T>>> {
    let budget = &budgets.interdictor;
    let mut out = Vec::new();
    let finite: Vec<&Breakpoint<T>> = cands.iter().filter(|b| b.arc.is_some()).collect();
    if let Some(zero) = cands.iter().find(|b| b.arc.is_none()) {
        out.push(solve_at(lp, budgets, zero)?);
    }
    if finite.is_empty() {
        return Ok(out);
    }
    let mut solved: Vec<Option<BreakpointValue<T>>> = vec![None; finite.len()];
    let last = finite.len() - 1;
    solved[0] = Some(solve_at(lp, budgets, finite[0])?);
    if last > 0 {
        solved[last] = Some(solve_at(lp, budgets, finite[last])?);
    }
    let incumbent = |out: &[BreakpointValue<T>], solved: &[Option<BreakpointValue<T>>]| {
        out.iter()
            .chain(solved.iter().flatten())
            .map(|v| v.lp_value.clone())
            .fold(T::zero(), T::max_of)
    };
    let mut open: Vec<(usize, usize)> = if last > 1 { vec![(0, last)] } else { Vec::new() };
    while !open.is_empty() {
        let best = incumbent(&out, &solved);
        let bounds: Vec<T> = open
            .iter()
            .map(|&(i, j)| interval_bound(solved[i].as_ref().unwrap(), solved[j].as_ref().unwrap(), budget))
            .collect();
        let pick = (0..open.len())
            .reduce(|a, b| if bounds[b] > bounds[a] { b } else { a })
            .unwrap();
        if bounds[pick].approx_le(&best) {
            break;
        }
        let (i, j) = open.swap_remove(pick);
        let k = newton_step(
            lp.network,
            solved[i].as_ref().unwrap(),
            solved[j].as_ref().unwrap(),
            budget,
            &finite,
            i,
            j,
        );
        solved[k] = Some(solve_at(lp, budgets, finite[k])?);
        for (a, b) in [(i, k), (k, j)] {
            if b > a + 1 {
                open.push((a, b));
            }
        }
    }
    out.extend(solved.into_iter().flatten());
    Ok(out)
}

/// Index strictly inside `(i, j)` nearest to where the line through `a`
/// with its right slope meets the line through `b` with its left slope.
fn newton_step<T: Scalar>(
    network: &Network<T>,
    a: &BreakpointValue<T>,
    b: &BreakpointValue<T>,
    budget: &T,
    finite: &[&Breakpoint<T>],
    i: usize,
    j: usize,
) -> usize {
    let mid = (i + j) / 2;
    let (la, lb) = (&a.breakpoint.lambda, &b.breakpoint.lambda);
    let sa = slope_mass(network, &a.flow, la, true) - budget.clone();
    let sb = slope_mass(network, &b.flow, lb, false) - budget.clone();
    if sa == sb {
        return mid;
    }
    let cross =
        (b.lp_value.clone() - a.lp_value.clone() + sa.clone() * la.clone() - sb.clone() * lb.clone()) / (sa - sb);
    if cross <= *la || cross >= *lb {
        return mid;
    }
    ((i + 1)..j)
        .min_by(|&p, &q| {
            let dp = (finite[p].lambda.clone() - cross.clone()).abs();
            let dq = (finite[q].lambda.clone() - cross.clone()).abs();
            dp.partial_cmp(&dq).expect("comparable")
        })
        .unwrap_or(mid)
}
