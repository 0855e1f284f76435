//! Network design: the flow player buys interdiction costs.
//!
//! Raising the cost of arc `e` to `c_e` costs `γ_e c_e` per unit of flow on
//! `e`, within budget `B_F`. An optimal strategy spreads the budget evenly,
//! giving every flow-carrying vulnerable arc the cost `B_F / Γ(x)`, so the
//! flow itself is a min-cost circulation with arc costs `(B_I/B_F) γ_e` and
//! a return arc of cost `-1`.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ext::Ext;
use crate::graph::{decompose_flow, validate_instance, ArcId, Budgets, Network, NodeId, Path, PathFlow};
use crate::interdiction::evaluate;
use crate::lp::{column_generation, Column, LpStatus};
use crate::paths::shortest_path;
use crate::scalar::Scalar;

/// `Γ(x) = sum_P sum_{e in P} γ_e x_P`; `inf` when flow uses an arc that
/// cannot be protected.
pub fn gamma_of_flow<T: Scalar>(flow: &PathFlow<T>, network: &Network<T>) -> Result<Ext<T>> {
    let loads = flow.arc_loads(network.num_arcs());
    let mut total = Ext::zero();
    for (arc, load) in network.arcs().iter().zip(&loads) {
        total = total.add(&arc.price.scale(load));
    }
    Ok(total)
}

/// `sum_P x_P - Γ(x) B_I / B_F`.
pub fn design_profit<T: Scalar>(flow: &PathFlow<T>, network: &Network<T>, budgets: &Budgets<T>) -> Result<T> {
    let gamma = gamma_of_flow(flow, network)?;
    let Ext::Finite(gamma) = gamma else {
        return Err(Error::BudgetViolated("flow uses an arc with infinite price".into()));
    };
    if gamma.is_zero() {
        return Ok(flow.value());
    }
    let bf = budgets.flow_player.clone().ok_or(Error::MissingFlowBudget)?;
    if bf <= T::zero() {
        return Err(Error::NoProtectionBudget);
    }
    Ok(flow.value() - gamma * budgets.interdictor.clone() / bf)
}

/// `1 - (B_I/B_F) sum_{e in P} γ_e`, the LP weight of a path; `None` when
/// the path has an arc of infinite price.
pub fn design_weight<T: Scalar>(path: &Path, network: &Network<T>, budgets: &Budgets<T>) -> Result<Option<T>> {
    let ratio = cost_ratio(budgets)?;
    let mut price = Ext::zero();
    for a in path.arcs() {
        price = price.add(&network.arc(*a)?.price);
    }
    Ok(price.into_finite().map(|g| T::one() - ratio * g))
}

fn cost_ratio<T: Scalar>(budgets: &Budgets<T>) -> Result<T> {
    let bf = budgets.flow_player.clone().ok_or(Error::MissingFlowBudget)?;
    if bf <= T::zero() {
        return Err(Error::NoProtectionBudget);
    }
    Ok(budgets.interdictor.clone() / bf)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CircArc<T> {
    pub tail: NodeId,
    pub head: NodeId,
    pub capacity: T,
    pub cost: T,
    /// Network arc this one copies; `None` for the return arc.
    pub original: Option<ArcId>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Circulation<T> {
    pub num_nodes: usize,
    pub arcs: Vec<CircArc<T>>,
}

/// Network arcs of finite price with cost `(B_I/B_F) γ_e`, followed by the
/// return arc `(t, s)` of cost `-1`.
///
/// Infinite capacities become `sum` of the finite ones, which bounds any
/// optimal flow once [`solve_design`] has ruled out unboundedness.
pub fn build_circulation_network<T: Scalar>(network: &Network<T>, budgets: &Budgets<T>) -> Result<Circulation<T>> {
    let ratio = cost_ratio(budgets)?;
    let term = network.terminals().first().ok_or(Error::InvalidInstance(Vec::new()))?;
    let bound = network
        .arcs()
        .iter()
        .filter_map(|a| a.capacity.finite().cloned())
        .fold(T::zero(), |acc, u| acc + u);
    let mut arcs = Vec::new();
    for (i, arc) in network.arcs().iter().enumerate() {
        let Ext::Finite(g) = &arc.price else { continue };
        arcs.push(CircArc {
            tail: arc.tail,
            head: arc.head,
            capacity: arc.capacity.finite().cloned().unwrap_or_else(|| bound.clone()),
            cost: ratio.clone() * g.clone(),
            original: Some(ArcId(i)),
        });
    }
    arcs.push(CircArc {
        tail: term.sink,
        head: term.source,
        capacity: bound,
        cost: -T::one(),
        original: None,
    });
    Ok(Circulation {
        num_nodes: network.num_nodes(),
        arcs,
    })
}

/// Residual arc: circulation arc index and direction.
#[derive(Clone, Copy)]
struct Residual {
    arc: usize,
    forward: bool,
}

fn residual_arcs<T: Scalar>(circ: &Circulation<T>, flow: &[T]) -> Vec<(usize, usize, T, Residual)> {
    let mut out = Vec::new();
    for (i, a) in circ.arcs.iter().enumerate() {
        if (a.capacity.clone() - flow[i].clone()).is_positive_tol() {
            out.push((a.tail.0, a.head.0, a.cost.clone(), Residual { arc: i, forward: true }));
        }
        if flow[i].is_positive_tol() {
            out.push((a.head.0, a.tail.0, -a.cost.clone(), Residual { arc: i, forward: false }));
        }
    }
    out
}

/// Minimum-cost circulation by successive shortest paths.
///
/// Negative-cost arcs are saturated first, which leaves a residual network
/// without negative arcs; the resulting excesses are then routed back along
/// shortest residual paths (Bellman-Ford). Integral capacities give an
/// integral circulation.
pub fn min_cost_circulation<T: Scalar>(circ: &Circulation<T>) -> Vec<T> {
    let n = circ.num_nodes;
    let mut flow = vec![T::zero(); circ.arcs.len()];
    let mut excess = vec![T::zero(); n];
    for (i, a) in circ.arcs.iter().enumerate() {
        if a.cost < T::zero() {
            flow[i] = a.capacity.clone();
            excess[a.head.0] = excess[a.head.0].clone() + a.capacity.clone();
            excess[a.tail.0] = excess[a.tail.0].clone() - a.capacity.clone();
        }
    }
    loop {
        let sources: Vec<usize> = (0..n).filter(|&v| excess[v].is_positive_tol()).collect();
        if sources.is_empty() {
            break;
        }
        let res = residual_arcs(circ, &flow);
        let mut dist: Vec<Option<T>> = vec![None; n];
        let mut pred: Vec<Option<usize>> = vec![None; n];
        for &s in &sources {
            dist[s] = Some(T::zero());
        }
        for _ in 0..n {
            let mut changed = false;
            for (k, (u, v, c, _)) in res.iter().enumerate() {
                let Some(du) = dist[*u].clone() else { continue };
                let cand = du + c.clone();
                if dist[*v].as_ref().is_none_or(|d| cand.definitely_lt(d)) {
                    dist[*v] = Some(cand);
                    pred[*v] = Some(k);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let target = (0..n)
            .filter(|&v| (-excess[v].clone()).is_positive_tol() && dist[v].is_some())
            .min_by(|&a, &b| dist[a].partial_cmp(&dist[b]).expect("comparable"));
        let Some(target) = target else { break };
        let mut path = Vec::new();
        let mut v = target;
        while let Some(k) = pred[v] {
            path.push(k);
            v = res[k].0;
        }
        let source = v;
        let mut amount = T::min_of(excess[source].clone(), -excess[target].clone());
        for &k in &path {
            let r = res[k].3;
            let a = &circ.arcs[r.arc];
            let room = if r.forward {
                a.capacity.clone() - flow[r.arc].clone()
            } else {
                flow[r.arc].clone()
            };
            amount = T::min_of(amount, room);
        }
        for &k in &path {
            let r = res[k].3;
            flow[r.arc] = if r.forward {
                flow[r.arc].clone() + amount.clone()
            } else {
                flow[r.arc].clone() - amount.clone()
            };
        }
        excess[source] = excess[source].clone() - amount.clone();
        excess[target] = excess[target].clone() + amount;
    }
    flow
}

pub fn circulation_cost<T: Scalar>(circ: &Circulation<T>, flow: &[T]) -> T {
    circ.arcs
        .iter()
        .zip(flow)
        .fold(T::zero(), |acc, (a, x)| acc + a.cost.clone() * x.clone())
}

/// Bellman-Ford negative cycle detection on the residual network.
pub fn residual_has_negative_cycle<T: Scalar>(circ: &Circulation<T>, flow: &[T]) -> bool {
    let n = circ.num_nodes;
    let res = residual_arcs(circ, flow);
    let mut dist = vec![T::zero(); n];
    for _ in 0..=n {
        let mut changed = false;
        for (u, v, c, _) in &res {
            let cand = dist[*u].clone() + c.clone();
            if cand.definitely_lt(&dist[*v]) {
                dist[*v] = cand;
                changed = true;
            }
        }
        if !changed {
            return false;
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq)]
pub struct DesignSolution<T> {
    pub flow: PathFlow<T>,
    /// Bought interdiction costs `c*`.
    pub costs: Vec<Ext<T>>,
    pub profit: T,
    pub gamma_of_flow: T,
}

/// Optimal design strategy.
///
/// A single commodity goes through [`min_cost_circulation`]; several
/// commodities through column generation on the path LP, where integrality
/// is not guaranteed.
pub fn solve_design<T: Scalar>(network: &Network<T>, budgets: &Budgets<T>) -> Result<DesignSolution<T>> {
    let violations = validate_instance(network, budgets);
    if !violations.is_empty() {
        return Err(Error::InvalidInstance(violations));
    }
    let ratio = cost_ratio(budgets)?;
    let flow = if network.terminals().len() == 1 {
        check_bounded(network, &ratio)?;
        let term = &network.terminals()[0];
        let circ = build_circulation_network(network, budgets)?;
        let circ_flow = min_cost_circulation(&circ);
        let mut arc_flow = vec![T::zero(); network.num_arcs()];
        for (a, x) in circ.arcs.iter().zip(circ_flow) {
            if let Some(id) = a.original {
                arc_flow[id.0] = x;
            }
        }
        decompose_flow(&arc_flow, network, term.source, term.sink)?
    } else {
        solve_design_lp(network, budgets)?.0
    };
    Ok(uniform_solution(flow, network, budgets))
}

/// Fails when some path of unbounded capacity has positive weight.
fn check_bounded<T: Scalar>(network: &Network<T>, ratio: &T) -> Result<()> {
    for term in network.terminals() {
        let found = shortest_path(network, term.source, term.sink, |a| {
            let arc = &network.arcs()[a.0];
            match (&arc.capacity, &arc.price) {
                (Ext::Infinite, Ext::Finite(g)) => Some(ratio.clone() * g.clone()),
                _ => None,
            }
        });
        if matches!(found, Some((cost, _)) if cost.definitely_lt(&T::one())) {
            return Err(Error::Unbounded);
        }
    }
    Ok(())
}

/// Path LP `max sum_P (1 - (B_I/B_F) γ(P)) x_P` under capacities, solved by
/// column generation with shortest paths on `y_e + (B_I/B_F) γ_e`.
pub fn solve_design_lp<T: Scalar>(network: &Network<T>, budgets: &Budgets<T>) -> Result<(PathFlow<T>, T)> {
    let ratio = cost_ratio(budgets)?;
    let mut row_of = vec![None; network.num_arcs()];
    let mut bounds = Vec::new();
    for (i, arc) in network.arcs().iter().enumerate() {
        if let Ext::Finite(u) = &arc.capacity {
            row_of[i] = Some(bounds.len());
            bounds.push(u.clone());
        }
    }
    let mut pricer = |dual: &[T]| -> Result<Vec<Column<T, Path>>> {
        let mut out = Vec::new();
        for term in network.terminals() {
            let found = shortest_path(network, term.source, term.sink, |a| {
                let y = row_of[a.0].map_or_else(T::zero, |r| dual[r].clone());
                network.arcs()[a.0]
                    .price
                    .finite()
                    .map(|g| y + ratio.clone() * g.clone())
            });
            let Some((pi, path)) = found else { continue };
            if !pi.definitely_lt(&T::one()) {
                continue;
            }
            let weight = path.arcs().iter().fold(T::one(), |acc, a| {
                acc - ratio.clone() * network.arcs()[a.0].price.finite().cloned().unwrap_or_else(T::zero)
            });
            let entries = path
                .arcs()
                .iter()
                .filter_map(|a| row_of[a.0].map(|r| (r, T::one())))
                .collect();
            out.push(Column::new(path, weight, entries));
        }
        Ok(out)
    };
    let res = column_generation(&mut pricer, Vec::new(), bounds)?;
    if res.status != LpStatus::Optimal {
        return Err(Error::Unbounded);
    }
    let flow = res.support().map(|(p, v)| (p.clone(), v.clone())).collect();
    Ok((flow, res.objective))
}

/// Completes a flow with the uniform costs `B_F / Γ(x)`.
pub fn uniform_solution<T: Scalar>(flow: PathFlow<T>, network: &Network<T>, budgets: &Budgets<T>) -> DesignSolution<T> {
    let loads = flow.arc_loads(network.num_arcs());
    let bf = budgets.flow_player.clone().unwrap_or_else(T::zero);
    let gamma = network
        .arcs()
        .iter()
        .zip(&loads)
        .filter_map(|(a, x)| a.price.finite().map(|g| g.clone() * x.clone()))
        .fold(T::zero(), |acc, v| acc + v);
    let costs = network
        .arcs()
        .iter()
        .zip(&loads)
        .map(|(a, x)| match &a.price {
            Ext::Finite(g) if g.is_zero() => Ext::Infinite,
            Ext::Finite(_) if x.is_positive_tol() => Ext::Finite(bf.clone() / gamma.clone()),
            _ => Ext::zero(),
        })
        .collect();
    let profit = if gamma.is_zero() {
        flow.value()
    } else {
        flow.value() - gamma.clone() * budgets.interdictor.clone() / bf
    };
    DesignSolution {
        flow,
        costs,
        profit,
        gamma_of_flow: gamma,
    }
}

/// Protection money spent by `(flow, costs)`: `sum_e γ_e c_e x_e`, with
/// `inf * 0 = 0`.
pub fn protection_spent<T: Scalar>(flow: &PathFlow<T>, costs: &[Ext<T>], network: &Network<T>) -> Ext<T> {
    let loads = flow.arc_loads(network.num_arcs());
    let mut total = Ext::zero();
    for ((arc, c), x) in network.arcs().iter().zip(costs).zip(&loads) {
        if arc.price.is_zero() || !x.is_positive_tol() || c.is_zero() {
            continue;
        }
        total = total.add(&arc.price.scale(x).into_finite().map_or(Ext::Infinite, |v| c.scale(&v)));
    }
    total
}

/// Value of `(flow, costs)` against the greedy interdictor.
pub fn evaluate_design<T: Scalar>(
    flow: &PathFlow<T>,
    costs: &[Ext<T>],
    network: &Network<T>,
    budgets: &Budgets<T>,
) -> Result<T> {
    evaluate(flow, &network.with_costs(costs.to_vec()), &budgets.interdictor)
}

#[derive(Clone, Debug, PartialEq)]
pub struct UniformityReport<T> {
    pub trials: usize,
    /// Greedy value of the solution being checked.
    pub baseline: T,
    pub best_found: T,
    /// Trials whose value exceeded the baseline beyond tolerance.
    pub improvements: usize,
}

impl<T: Scalar> UniformityReport<T> {
    pub fn improved(&self) -> bool {
        self.improvements > 0
    }
}

/// Searches random feasible strategies near `solution` for a better value.
///
/// Perturbations: moving budget between two flow-carrying arcs, a random
/// split of the whole budget, scaling the flow, dropping a path and pushing
/// extra flow along a residual path. Each candidate respects capacities and
/// `B_F` and is valued by the greedy interdictor.
pub fn verify_uniform_optimality<T: Scalar>(
    solution: &DesignSolution<T>,
    network: &Network<T>,
    budgets: &Budgets<T>,
    trials: usize,
    seed: u64,
) -> Result<UniformityReport<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let baseline = evaluate_design(&solution.flow, &solution.costs, network, budgets)?;
    let bf = budgets.flow_player.clone().ok_or(Error::MissingFlowBudget)?;
    let mut best = baseline.clone();
    let mut improvements = 0;
    for trial in 0..trials {
        let (flow, costs) = match trial % 5 {
            0 => shift_budget(solution, network, &mut rng),
            1 => random_split(&solution.flow, network, &bf, &mut rng),
            2 => {
                let alpha = T::from_ratio(rng.gen_range(0..=16), 16);
                uniform_costs(solution.flow.map_values(|x| x.clone() * alpha.clone()), network, &bf)
            }
            3 => {
                let mut flow = solution.flow.clone();
                if !flow.is_empty() {
                    let k = rng.gen_range(0..flow.len());
                    let path = flow.paths().nth(k).cloned().unwrap();
                    flow = flow
                        .iter()
                        .filter(|(p, _)| **p != path)
                        .map(|(p, x)| (p.clone(), x.clone()))
                        .collect();
                }
                uniform_costs(flow, network, &bf)
            }
            _ => uniform_costs(augment_random(&solution.flow, network, budgets, &mut rng), network, &bf),
        };
        let within = match protection_spent(&flow, &costs, network) {
            Ext::Finite(s) => s.approx_le(&bf),
            Ext::Infinite => false,
        };
        if !within {
            continue;
        }
        let value = evaluate_design(&flow, &costs, network, budgets)?;
        if value.definitely_lt(&baseline) || value.approx_eq(&baseline) {
            continue;
        }
        improvements += 1;
        if value > best {
            best = value;
        }
    }
    Ok(UniformityReport {
        trials,
        baseline,
        best_found: best,
        improvements,
    })
}

/// Uniform costs for an arbitrary flow (`c = B_F / Γ`).
fn uniform_costs<T: Scalar>(flow: PathFlow<T>, network: &Network<T>, bf: &T) -> (PathFlow<T>, Vec<Ext<T>>) {
    let budgets = Budgets::both(T::zero(), bf.clone());
    let sol = uniform_solution(flow, network, &budgets);
    (sol.flow, sol.costs)
}

/// Arcs that carry flow and can be protected at a positive price.
fn priced_loads<T: Scalar>(flow: &PathFlow<T>, network: &Network<T>) -> Vec<(usize, T)> {
    let loads = flow.arc_loads(network.num_arcs());
    network
        .arcs()
        .iter()
        .zip(loads)
        .enumerate()
        .filter_map(|(i, (a, x))| match &a.price {
            Ext::Finite(g) if !g.is_zero() && x.is_positive_tol() => Some((i, g.clone() * x)),
            _ => None,
        })
        .collect()
}

fn shift_budget<T: Scalar, R: Rng>(
    solution: &DesignSolution<T>,
    network: &Network<T>,
    rng: &mut R,
) -> (PathFlow<T>, Vec<Ext<T>>) {
    let mut costs = solution.costs.clone();
    let priced = priced_loads(&solution.flow, network);
    if priced.len() >= 2 {
        let a = rng.gen_range(0..priced.len());
        let mut b = rng.gen_range(0..priced.len() - 1);
        if b >= a {
            b += 1;
        }
        let (ea, wa) = &priced[a];
        let (eb, wb) = &priced[b];
        if let (Ext::Finite(ca), Ext::Finite(cb)) = (costs[*ea].clone(), costs[*eb].clone()) {
            let spent_a = ca.clone() * wa.clone();
            let moved = spent_a * T::from_ratio(rng.gen_range(1..=8), 8);
            costs[*ea] = Ext::Finite(ca - moved.clone() / wa.clone());
            costs[*eb] = Ext::Finite(cb + moved / wb.clone());
        }
    }
    (solution.flow.clone(), costs)
}

fn random_split<T: Scalar, R: Rng>(
    flow: &PathFlow<T>,
    network: &Network<T>,
    bf: &T,
    rng: &mut R,
) -> (PathFlow<T>, Vec<Ext<T>>) {
    let (flow, mut costs) = uniform_costs(flow.clone(), network, bf);
    let priced = priced_loads(&flow, network);
    let weights: Vec<T> = priced.iter().map(|_| T::from_int(rng.gen_range(1..=10))).collect();
    let total = weights.iter().fold(T::zero(), |acc, w| acc + w.clone());
    for ((e, w), share) in priced.iter().zip(&weights) {
        costs[*e] = Ext::Finite(bf.clone() * share.clone() / total.clone() / w.clone());
    }
    (flow, costs)
}

/// Adds flow along a cheap residual path, with random weight noise on
/// every other call.
fn augment_random<T: Scalar, R: Rng>(
    flow: &PathFlow<T>,
    network: &Network<T>,
    budgets: &Budgets<T>,
    rng: &mut R,
) -> PathFlow<T> {
    let Ok(ratio) = cost_ratio(budgets) else {
        return flow.clone();
    };
    let Some(term) = network.terminals().first() else {
        return flow.clone();
    };
    let loads = flow.arc_loads(network.num_arcs());
    let noisy = rng.gen_bool(0.5);
    let noise: Vec<T> = (0..network.num_arcs())
        .map(|_| {
            if noisy {
                T::from_ratio(rng.gen_range(0..=4), 4)
            } else {
                T::zero()
            }
        })
        .collect();
    let found = shortest_path(network, term.source, term.sink, |a| {
        let arc = &network.arcs()[a.0];
        let room = match &arc.capacity {
            Ext::Finite(u) => (u.clone() - loads[a.0].clone()).is_positive_tol(),
            Ext::Infinite => true,
        };
        if !room {
            return None;
        }
        arc.price
            .finite()
            .map(|g| ratio.clone() * g.clone() + noise[a.0].clone())
    });
    let Some((_, path)) = found else {
        return flow.clone();
    };
    let mut room: Option<T> = None;
    for a in path.arcs() {
        if let Ext::Finite(u) = &network.arcs()[a.0].capacity {
            let r = u.clone() - loads[a.0].clone();
            room = Some(room.map_or(r.clone(), |m| T::min_of(m, r)));
        }
    }
    let room = room.unwrap_or_else(T::one);
    let amount = room * T::from_ratio(rng.gen_range(1..=4), 4);
    let mut out = flow.clone();
    out.add(path, amount);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Arc, Terminal};
    use crate::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn fin(n: i64, d: i64) -> Ext<Rational> {
        Ext::Finite(q(n, d))
    }

    fn single(u: i64, gamma: Ext<Rational>) -> Network<Rational> {
        Network::new(
            2,
            vec![Arc::new(0, 1, fin(u, 1), fin(0, 1), gamma)],
            vec![Terminal::new(0, 1)],
        )
    }

    #[test]
    fn profit_examples() {
        let net = single(2, fin(1, 1));
        let flow: PathFlow<Rational> = [(Path::from_indices(&[0]), q(2, 1))].into_iter().collect();
        assert_eq!(
            design_profit(&flow, &net, &Budgets::both(q(1, 1), q(4, 1))).unwrap(),
            q(3, 2)
        );
        assert_eq!(
            design_profit(&PathFlow::new(), &net, &Budgets::both(q(1, 1), q(4, 1))).unwrap(),
            q(0, 1)
        );
        let free = single(2, fin(0, 1));
        assert_eq!(
            design_profit(&flow, &free, &Budgets::both(q(1, 1), q(4, 1))).unwrap(),
            q(2, 1)
        );
        assert_eq!(
            design_profit(&flow, &net, &Budgets::both(q(1, 1), q(0, 1))),
            Err(Error::NoProtectionBudget)
        );
    }

    #[test]
    fn circulation_network_shape() {
        let net = single(2, fin(3, 10));
        let circ = build_circulation_network(&net, &Budgets::both(q(2, 1), q(1, 1))).unwrap();
        assert_eq!(circ.arcs.len(), 2);
        assert_eq!(circ.arcs[0].cost, q(3, 5));
        assert_eq!(circ.arcs[1].cost, q(-1, 1));
        assert_eq!((circ.arcs[1].tail, circ.arcs[1].head), (NodeId(1), NodeId(0)));
    }

    fn circ(arcs: &[(usize, usize, i64, Rational)], n: usize) -> Circulation<Rational> {
        Circulation {
            num_nodes: n,
            arcs: arcs
                .iter()
                .map(|(t, h, u, c)| CircArc {
                    tail: NodeId(*t),
                    head: NodeId(*h),
                    capacity: q(*u, 1),
                    cost: c.clone(),
                    original: None,
                })
                .collect(),
        }
    }

    #[test]
    fn circulation_examples() {
        let c = circ(&[(0, 1, 2, q(1, 4)), (1, 0, 2, q(-1, 1))], 2);
        let f = min_cost_circulation(&c);
        assert_eq!(f, vec![q(2, 1), q(2, 1)]);
        assert_eq!(circulation_cost(&c, &f), q(-3, 2));
        assert!(!residual_has_negative_cycle(&c, &f));

        let c = circ(&[(0, 1, 2, q(3, 2)), (1, 0, 2, q(-1, 1))], 2);
        assert_eq!(min_cost_circulation(&c), vec![q(0, 1), q(0, 1)]);

        let c = circ(&[(0, 1, 1, q(1, 5)), (0, 1, 1, q(9, 10)), (1, 0, 2, q(-1, 1))], 2);
        let f = min_cost_circulation(&c);
        assert_eq!(f, vec![q(1, 1), q(1, 1), q(2, 1)]);
        assert!(!residual_has_negative_cycle(&c, &f));
        assert!(residual_has_negative_cycle(&c, &[q(0, 1), q(0, 1), q(0, 1)]));
    }

    #[test]
    fn design_examples() {
        let net = single(2, fin(1, 1));
        let sol = solve_design(&net, &Budgets::both(q(1, 1), q(4, 1))).unwrap();
        assert_eq!(sol.flow.value(), q(2, 1));
        assert_eq!(sol.costs, vec![fin(2, 1)]);
        assert_eq!(sol.profit, q(3, 2));
        assert_eq!(
            evaluate_design(&sol.flow, &sol.costs, &net, &Budgets::both(q(1, 1), q(4, 1))).unwrap(),
            q(3, 2)
        );

        let sol = solve_design(&net, &Budgets::both(q(0, 1), q(4, 1))).unwrap();
        assert_eq!(sol.profit, q(2, 1));
        assert_eq!(sol.costs, vec![fin(2, 1)]);

        let net = single(1, fin(1, 1));
        let sol = solve_design(&net, &Budgets::both(q(10, 1), q(1, 1))).unwrap();
        assert!(sol.flow.is_empty());
        assert_eq!(sol.profit, q(0, 1));
    }

    #[test]
    fn unbounded_design_is_reported() {
        let net = Network::new(
            2,
            vec![Arc::new(0, 1, Ext::Infinite, fin(0, 1), fin(0, 1))],
            vec![Terminal::new(0, 1)],
        );
        assert_eq!(
            solve_design(&net, &Budgets::both(q(1, 1), q(1, 1))),
            Err(Error::Unbounded)
        );
    }

    #[test]
    fn infinite_price_arcs_are_unused() {
        let arcs = vec![
            Arc::new(0, 1, fin(5, 1), fin(0, 1), Ext::Infinite),
            Arc::new(0, 1, fin(1, 1), fin(0, 1), fin(1, 1)),
        ];
        let net = Network::new(2, arcs, vec![Terminal::new(0, 1)]);
        let sol = solve_design(&net, &Budgets::both(q(1, 1), q(2, 1))).unwrap();
        assert_eq!(sol.flow.value(), q(1, 1));
        assert_eq!(sol.costs[0], fin(0, 1));
        assert_eq!(sol.profit, q(1, 2));
    }

    fn two_paths() -> (Network<Rational>, Budgets<Rational>) {
        let arcs = vec![
            Arc::new(0, 1, fin(1, 1), fin(0, 1), fin(1, 1)),
            Arc::new(0, 1, fin(1, 1), fin(0, 1), fin(1, 1)),
        ];
        (
            Network::new(2, arcs, vec![Terminal::new(0, 1)]),
            Budgets::both(q(1, 1), q(4, 1)),
        )
    }

    #[test]
    fn optimal_solution_survives_perturbation() {
        let (net, b) = two_paths();
        let sol = solve_design(&net, &b).unwrap();
        let report = verify_uniform_optimality(&sol, &net, &b, 100, 1).unwrap();
        assert_eq!(report.baseline, sol.profit);
        assert!(!report.improved(), "{report:?}");
    }

    #[test]
    fn non_uniform_costs_are_improved() {
        let (net, b) = two_paths();
        let mut sol = solve_design(&net, &b).unwrap();
        sol.costs = vec![fin(3, 1), fin(1, 1)];
        let report = verify_uniform_optimality(&sol, &net, &b, 100, 2).unwrap();
        assert!(report.baseline < q(3, 2));
        assert!(report.improved());
    }

    #[test]
    fn zero_flow_is_improved() {
        let (net, b) = two_paths();
        let empty = uniform_solution(PathFlow::new(), &net, &b);
        let report = verify_uniform_optimality(&empty, &net, &b, 100, 3).unwrap();
        assert!(report.improved());
    }

    #[test]
    fn lp_route_agrees_with_circulation() {
        let (net, b) = two_paths();
        let (_, obj) = solve_design_lp(&net, &b).unwrap();
        assert_eq!(obj, solve_design(&net, &b).unwrap().profit);
    }
}
