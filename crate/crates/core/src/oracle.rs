//! Brute-force reference solvers over fully enumerated path sets.
//!
//! Nothing here uses pricing, breakpoint pruning, greedy interdiction or
//! min-cost flow; every answer comes from an explicit LP over all paths,
//! which makes these functions usable as ground truth for the solvers.
//! They are meant for instances with at most a few thousand paths.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::ext::Ext;
use crate::graph::{Arc, ArcId, Budgets, Network, NodeId, Path, PathFlow, Terminal};
use crate::lp::{solve_explicit, Column, LpStatus, PackingLp};
use crate::reductions::{evaluate_protect, AdpInstance, MfInstance, ProtectInstance, ProtectStrategy};
use crate::scalar::Scalar;
use crate::Rational;

pub const DEFAULT_PATH_CAP: usize = 2000;

/// All arc-simple terminal paths of an instance, per commodity.
#[derive(Clone, Debug, PartialEq)]
pub struct PathUniverse {
    pub per_commodity: Vec<Vec<Path>>,
}

impl PathUniverse {
    /// Paths of every commodity, commodity by commodity.
    pub fn all(&self) -> impl Iterator<Item = &Path> {
        self.per_commodity.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.per_commodity.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Exhaustive DFS over arc-simple `source`-`sink` paths.
///
/// Fails with [`Error::PathCapExceeded`] as soon as more than `cap` exist.
pub fn enumerate_paths<T: Scalar>(network: &Network<T>, source: NodeId, sink: NodeId, cap: usize) -> Result<Vec<Path>> {
    let mut out = Vec::new();
    if source == sink || source.0 >= network.num_nodes() || sink.0 >= network.num_nodes() {
        return Ok(out);
    }
    let mut used = vec![false; network.num_arcs()];
    let mut stack = Vec::new();
    dfs(network, source, sink, cap, &mut used, &mut stack, &mut out)?;
    out.sort();
    Ok(out)
}

fn dfs<T: Scalar>(
    network: &Network<T>,
    at: NodeId,
    sink: NodeId,
    cap: usize,
    used: &mut [bool],
    stack: &mut Vec<ArcId>,
    out: &mut Vec<Path>,
) -> Result<()> {
    for &id in network.out_arcs(at) {
        if used[id.0] {
            continue;
        }
        let head = network.arcs()[id.0].head;
        stack.push(id);
        if head == sink {
            out.push(Path::new(stack.clone()));
            if out.len() > cap {
                return Err(Error::PathCapExceeded { cap });
            }
        }
        // Arc-simple walks may pass through the sink and come back to it.
        used[id.0] = true;
        dfs(network, head, sink, cap, used, stack, out)?;
        used[id.0] = false;
        stack.pop();
    }
    Ok(())
}

/// Enumerates the paths of every commodity; the cap applies to the total.
pub fn enumerate_universe<T: Scalar>(network: &Network<T>, cap: usize) -> Result<PathUniverse> {
    let mut per_commodity = Vec::new();
    let mut total = 0;
    for t in network.terminals() {
        let paths = enumerate_paths(network, t.source, t.sink, cap)?;
        total += paths.len();
        if total > cap {
            return Err(Error::PathCapExceeded { cap });
        }
        per_commodity.push(paths);
    }
    Ok(PathUniverse { per_commodity })
}

/// Exact interdictor optimum: total flow minus the largest amount any
/// budget-feasible `z` can steal.
///
/// Solved as an LP over one variable per (arc, path) pair, without
/// assuming that attacks happen on cheapest arcs.
pub fn best_response_exact<T: Scalar>(flow: &PathFlow<T>, network: &Network<T>, budget: &T) -> Result<T> {
    let paths: Vec<(&Path, &T)> = flow.iter().collect();
    let budget_row = paths.len();
    let mut bounds: Vec<T> = paths.iter().map(|(_, x)| (*x).clone()).collect();
    bounds.push(budget.clone());
    let mut columns = Vec::new();
    for (row, (path, _)) in paths.iter().enumerate() {
        for &arc in path.arcs() {
            let Ext::Finite(c) = &network.arc(arc)?.cost else {
                continue;
            };
            columns.push(Column::new(
                (row, arc),
                T::one(),
                vec![(row, T::one()), (budget_row, c.clone())],
            ));
        }
    }
    let res = solve_explicit(PackingLp { bounds, columns })?;
    if res.status != LpStatus::Optimal {
        return Err(Error::Unbounded);
    }
    Ok(flow.value() - res.objective)
}

/// Result of [`brute_force_rf`].
#[derive(Clone, Debug)]
pub struct BruteForceRf<T> {
    /// Robust optimum (never negative: the empty flow is always available).
    pub value: T,
    pub flow: PathFlow<T>,
    /// `(c_f, objective)` for each candidate, `c_f = inf` standing for `λ = 0`.
    pub per_breakpoint: Vec<(Ext<T>, T)>,
}

/// Robust-flow optimum by solving the per-breakpoint LP on all paths for
/// every distinct positive interdiction cost and for `λ = 0`.
pub fn brute_force_rf<T: Scalar>(
    network: &Network<T>,
    budgets: &Budgets<T>,
    universe: &PathUniverse,
) -> Result<BruteForceRf<T>> {
    rf_over_universe(network, budgets, universe, None)
}

/// As [`brute_force_rf`] with the flow-player budget row
/// `sum_P (sum_{e in P} γ_e) x_P <= B_F`.
pub fn brute_force_rf_budgeted<T: Scalar>(
    network: &Network<T>,
    budgets: &Budgets<T>,
    universe: &PathUniverse,
) -> Result<BruteForceRf<T>> {
    let bf = budgets.flow_player.clone().ok_or(Error::MissingFlowBudget)?;
    rf_over_universe(network, budgets, universe, Some(bf))
}

fn rf_over_universe<T: Scalar>(
    network: &Network<T>,
    budgets: &Budgets<T>,
    universe: &PathUniverse,
    flow_budget: Option<T>,
) -> Result<BruteForceRf<T>> {
    let mut costs: Vec<Ext<T>> = vec![Ext::Infinite];
    for arc in network.arcs() {
        if let Ext::Finite(c) = &arc.cost {
            if *c > T::zero() && !costs.contains(&arc.cost) {
                costs.push(Ext::Finite(c.clone()));
            }
        }
    }
    let mut best = BruteForceRf {
        value: T::zero(),
        flow: PathFlow::new(),
        per_breakpoint: Vec::new(),
    };
    for cf in costs {
        let scaled: Vec<T> = network
            .arcs()
            .iter()
            .map(|a| match (&a.cost, &cf) {
                (Ext::Infinite, _) => T::one(),
                (Ext::Finite(_), Ext::Infinite) => T::zero(),
                (Ext::Finite(c), Ext::Finite(f)) => T::min_of(c.clone() / f.clone(), T::one()),
            })
            .collect();
        let offset = match &cf {
            Ext::Finite(f) => budgets.interdictor.clone() / f.clone(),
            Ext::Infinite => T::zero(),
        };
        let weights = |p: &Path| -> Option<T> { p.arcs().iter().map(|a| scaled[a.0].clone()).reduce(T::min_of) };
        let (objective, flow) = path_lp(network, universe, weights, flow_budget.as_ref())?;
        let objective = objective - offset;
        if objective > best.value {
            best.value = objective.clone();
            best.flow = flow;
        }
        best.per_breakpoint.push((cf, objective));
    }
    Ok(best)
}

/// `max sum_P w_P x_P` over all universe paths under arc capacities (and
/// the optional price budget). Paths with `w_P = None` are left out.
fn path_lp<T: Scalar>(
    network: &Network<T>,
    universe: &PathUniverse,
    weight: impl Fn(&Path) -> Option<T>,
    flow_budget: Option<&T>,
) -> Result<(T, PathFlow<T>)> {
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
    let mut columns = Vec::new();
    for path in universe.all() {
        let Some(w) = weight(path) else { continue };
        let mut entries: Vec<(usize, T)> = path
            .arcs()
            .iter()
            .filter_map(|a| row_of[a.0].map(|r| (r, T::one())))
            .collect();
        if let Some(r) = budget_row {
            let mut price = Ext::zero();
            for a in path.arcs() {
                price = price.add(&network.arcs()[a.0].price);
            }
            let Ext::Finite(price) = price else { continue };
            if !price.is_zero() {
                entries.push((r, price));
            }
        }
        columns.push(Column::new(path.clone(), w, entries));
    }
    let res = solve_explicit(PackingLp { bounds, columns })?;
    if res.status != LpStatus::Optimal {
        return Err(Error::Unbounded);
    }
    let flow = res.support().map(|(p, v)| (p.clone(), v.clone())).collect();
    Ok((res.objective, flow))
}

/// Optimal network-design profit: the LP `max sum_P (1 - (B_I/B_F) γ(P)) x_P`
/// over all universe paths.
pub fn brute_force_design<T: Scalar>(network: &Network<T>, budgets: &Budgets<T>, universe: &PathUniverse) -> Result<T> {
    let bf = budgets.flow_player.clone().ok_or(Error::MissingFlowBudget)?;
    if bf <= T::zero() {
        return Err(Error::NoProtectionBudget);
    }
    let ratio = budgets.interdictor.clone() / bf;
    let weight = |p: &Path| -> Option<T> {
        let mut price = Ext::zero();
        for a in p.arcs() {
            price = price.add(&network.arcs()[a.0].price);
        }
        price.into_finite().map(|g| T::one() - ratio.clone() * g)
    };
    Ok(path_lp(network, universe, weight, None)?.0)
}

/// Decides multicommodity-flow feasibility with a path LP that maximizes
/// routed demand subject to capacities and per-commodity demand caps.
pub fn multicommodity_feasible<T: Scalar>(mf: &MfInstance<T>, cap: usize) -> Result<bool> {
    let arcs: Vec<Arc<T>> = mf
        .arcs
        .iter()
        .map(|(t, h, u)| Arc::new(*t, *h, u.clone(), Ext::zero(), Ext::zero()))
        .collect();
    let terminals = mf.commodities.iter().map(|(s, t, _)| Terminal::new(*s, *t)).collect();
    let net = Network::new(mf.num_nodes, arcs, terminals);
    let universe = enumerate_universe(&net, cap)?;
    let mut row_of = vec![None; net.num_arcs()];
    let mut bounds = Vec::new();
    for (i, arc) in net.arcs().iter().enumerate() {
        if let Ext::Finite(u) = &arc.capacity {
            row_of[i] = Some(bounds.len());
            bounds.push(u.clone());
        }
    }
    let mut total_demand = T::zero();
    let mut columns = Vec::new();
    for (k, paths) in universe.per_commodity.iter().enumerate() {
        let demand_row = bounds.len();
        bounds.push(mf.commodities[k].2.clone());
        total_demand = total_demand + mf.commodities[k].2.clone();
        for p in paths {
            let mut entries: Vec<(usize, T)> = p
                .arcs()
                .iter()
                .filter_map(|a| row_of[a.0].map(|r| (r, T::one())))
                .collect();
            entries.push((demand_row, T::one()));
            columns.push(Column::new((k, p.clone()), T::one(), entries));
        }
    }
    let res = solve_explicit(PackingLp { bounds, columns })?;
    Ok(res.objective.approx_eq(&total_demand))
}

/// Knobs for [`random_instance`].
#[derive(Clone, Debug)]
pub struct RandomSpec {
    pub max_nodes: usize,
    pub max_arcs: usize,
    pub commodities: usize,
    pub integral_capacities: bool,
    pub path_cap: usize,
}

impl Default for RandomSpec {
    fn default() -> Self {
        RandomSpec {
            max_nodes: 8,
            max_arcs: 16,
            commodities: 1,
            integral_capacities: false,
            path_cap: DEFAULT_PATH_CAP,
        }
    }
}

/// Random test instance: arcs sampled uniformly between node pairs with
/// values from the grid `{1/2, 1, 2, 3, 5, inf}`.
///
/// Capacities are always finite (and integral if requested), every
/// commodity has at least one path and the path count stays under the cap.
pub fn random_instance<R: Rng>(rng: &mut R, spec: &RandomSpec) -> (Network<Rational>, Budgets<Rational>) {
    let grid = |rng: &mut R, allow_inf: bool| -> Ext<Rational> {
        let choices: &[(i64, i64)] = &[(1, 2), (1, 1), (2, 1), (3, 1), (5, 1)];
        if allow_inf && rng.gen_ratio(1, 6) {
            return Ext::Infinite;
        }
        let (n, d) = *choices.choose(rng).unwrap();
        Ext::Finite(Rational::from_ratio(n, d))
    };
    loop {
        let n = rng.gen_range(2..=spec.max_nodes.max(2));
        let m = rng.gen_range(1..=spec.max_arcs.max(1));
        let mut arcs = Vec::with_capacity(m);
        for _ in 0..m {
            let tail = rng.gen_range(0..n);
            let mut head = rng.gen_range(0..n - 1);
            if head >= tail {
                head += 1;
            }
            let capacity = if spec.integral_capacities {
                Ext::Finite(Rational::from_int(rng.gen_range(1..=3)))
            } else {
                grid(rng, false)
            };
            let cost = grid(rng, true);
            let price = if rng.gen_ratio(1, 5) {
                Ext::zero()
            } else {
                grid(rng, false)
            };
            arcs.push(Arc::new(tail, head, capacity, cost, price));
        }
        let mut terminals = vec![Terminal::new(0, n - 1)];
        for _ in 1..spec.commodities {
            let s = rng.gen_range(0..n);
            let mut t = rng.gen_range(0..n - 1);
            if t >= s {
                t += 1;
            }
            terminals.push(Terminal::new(s, t));
        }
        let net = Network::new(n, arcs, terminals);
        let Ok(universe) = enumerate_universe(&net, spec.path_cap) else {
            continue;
        };
        if universe.per_commodity.iter().any(Vec::is_empty) {
            continue;
        }
        let bi = [(0, 1), (1, 2), (1, 1), (2, 1), (3, 1), (5, 1), (8, 1)];
        let (a, b) = *bi.choose(rng).unwrap();
        let bf = [(1, 2), (1, 1), (2, 1), (5, 1), (10, 1)];
        let (c, d) = *bf.choose(rng).unwrap();
        let budgets = Budgets::both(Rational::from_ratio(a, b), Rational::from_ratio(c, d));
        return (net, budgets);
    }
}

/// Random path flow on `universe` that respects every finite capacity:
/// a few paths get random grid amounts, then the whole flow is scaled down
/// if some arc is overloaded.
pub fn random_feasible_flow<R: Rng>(
    rng: &mut R,
    network: &Network<Rational>,
    universe: &PathUniverse,
) -> PathFlow<Rational> {
    let paths: Vec<&Path> = universe.all().collect();
    let mut flow = PathFlow::new();
    if paths.is_empty() {
        return flow;
    }
    let count = rng.gen_range(1..=paths.len().min(4));
    for _ in 0..count {
        let p = paths[rng.gen_range(0..paths.len())];
        flow.add(p.clone(), Rational::from_ratio(rng.gen_range(1..=6), 2));
    }
    let loads = flow.arc_loads(network.num_arcs());
    let mut scale = Rational::from_int(1);
    for (arc, load) in network.arcs().iter().zip(&loads) {
        if let Ext::Finite(u) = &arc.capacity {
            if *load > Rational::from_int(0) && u.clone() / load.clone() < scale {
                scale = u.clone() / load.clone();
            }
        }
    }
    flow.map_values(|x| x.clone() * scale.clone()).cleaned()
}

/// Random multicommodity instance with up to `max_commodities` demands.
///
/// With `planted`, each commodity is routed along a random walk first and
/// capacities are raised to carry it, so the instance is feasible.
pub fn random_mf_instance<R: Rng>(rng: &mut R, max_commodities: usize, planted: bool) -> MfInstance<Rational> {
    let n = rng.gen_range(3..=5);
    let m = rng.gen_range(2..=6);
    let mut arcs: Vec<(usize, usize, Ext<Rational>)> = (0..m)
        .map(|_| {
            let (t, h) = random_pair(rng, n);
            (t, h, Ext::Finite(Rational::from_int(rng.gen_range(1..=2))))
        })
        .collect();
    let k = rng.gen_range(1..=max_commodities.max(1));
    let mut commodities = Vec::new();
    for _ in 0..k {
        let demand = Rational::from_int(rng.gen_range(1..=2));
        if planted {
            let mut at = rng.gen_range(0..n);
            let start = at;
            let hops = rng.gen_range(1..=3);
            for _ in 0..hops {
                let (_, next) = random_pair_from(rng, n, at);
                match arcs.iter().position(|(t, h, _)| *t == at && *h == next) {
                    Some(i) => {
                        let u = arcs[i].2.finite().cloned().unwrap() + demand.clone();
                        arcs[i].2 = Ext::Finite(u);
                    }
                    None if arcs.len() < 10 => arcs.push((at, next, Ext::Finite(demand.clone()))),
                    None => break,
                }
                at = next;
            }
            if at == start {
                at = (start + 1) % n;
                arcs.push((start, at, Ext::Finite(demand.clone())));
            }
            commodities.push((start, at, demand));
        } else {
            let (s, t) = random_pair(rng, n);
            commodities.push((s, t, demand));
        }
    }
    MfInstance {
        num_nodes: n,
        arcs,
        commodities,
    }
}

fn random_pair<R: Rng>(rng: &mut R, n: usize) -> (usize, usize) {
    let a = rng.gen_range(0..n);
    random_pair_from(rng, n, a)
}

fn random_pair_from<R: Rng>(rng: &mut R, n: usize, a: usize) -> (usize, usize) {
    let mut b = rng.gen_range(0..n - 1);
    if b >= a {
        b += 1;
    }
    (a, b)
}

/// Random two-paths instance on at most `max_nodes` nodes that has (or,
/// with `positive == false`, lacks) arc-disjoint `s1`-`t1`, `s2`-`t2`
/// paths. Negative instances still connect both pairs individually.
pub fn random_adp_instance<R: Rng>(rng: &mut R, max_nodes: usize, max_arcs: usize, positive: bool) -> AdpInstance {
    loop {
        let n = rng.gen_range(4..=max_nodes.max(4));
        let mut nodes: Vec<usize> = (0..n).collect();
        nodes.shuffle(rng);
        let (s1, t1, s2, t2) = (nodes[0], nodes[1], nodes[2], nodes[3]);
        let mut arcs = Vec::new();
        if positive {
            for (s, t) in [(s1, t1), (s2, t2)] {
                let mut at = s;
                let hops = rng.gen_range(0..=2);
                for _ in 0..hops {
                    let (_, next) = random_pair_from(rng, n, at);
                    if next == t {
                        break;
                    }
                    arcs.push((at, next));
                    at = next;
                }
                arcs.push((at, t));
            }
        }
        while arcs.len() < max_arcs.min(rng.gen_range(3..=max_arcs.max(3))) {
            arcs.push(random_pair(rng, n));
        }
        arcs.shuffle(rng);
        let inst = AdpInstance {
            num_nodes: n,
            arcs,
            s1,
            t1,
            s2,
            t2,
        };
        let found = inst.disjoint_paths().is_some();
        if found == positive && (positive || both_connected(&inst)) {
            return inst;
        }
    }
}

fn both_connected(adp: &AdpInstance) -> bool {
    let arcs = adp
        .arcs
        .iter()
        .map(|&(a, b)| Arc::new(a, b, Ext::<Rational>::Infinite, Ext::Infinite, Ext::Infinite))
        .collect();
    let net = Network::new(adp.num_nodes, arcs, Vec::new());
    [(adp.s1, adp.t1), (adp.s2, adp.t2)]
        .iter()
        .all(|&(s, t)| enumerate_paths(&net, NodeId(s), NodeId(t), 1).map_or(true, |p| !p.is_empty()))
}

/// Best profit found over a discretized strategy space of a protection
/// instance: flows on one or two paths with amounts from
/// `{1/2, 1, M/2, M}`, and for every subset of the flow-carrying priced
/// arcs the budget spread evenly (in cost per unit of load) over it.
pub fn protect_exhaustive(instance: &ProtectInstance<Rational>, cap: usize) -> Result<Rational> {
    let net = &instance.network;
    let universe = enumerate_universe(net, cap)?;
    let paths: Vec<&Path> = universe.all().collect();
    let m = instance.big_m.clone();
    let two = Rational::from_int(2);
    let amounts = [Rational::from_ratio(1, 2), Rational::from_int(1), m.clone() / two, m];
    let bf = instance.budgets.flow_player.clone().ok_or(Error::MissingFlowBudget)?;
    let mut choices: Vec<Vec<(&Path, &Rational)>> = Vec::new();
    for (i, p) in paths.iter().enumerate() {
        for a in &amounts {
            choices.push(vec![(p, a)]);
            for q in &paths[i + 1..] {
                for b in &amounts {
                    choices.push(vec![(p, a), (q, b)]);
                }
            }
        }
    }
    let mut best = Rational::from_int(0);
    for choice in choices {
        let flow: PathFlow<Rational> = choice.iter().map(|(p, x)| ((*p).clone(), (*x).clone())).collect();
        if flow.check_feasible(net).is_err() {
            continue;
        }
        let loads = flow.arc_loads(net.num_arcs());
        let priced: Vec<usize> = (0..net.num_arcs())
            .filter(|&i| {
                loads[i] > Rational::from_int(0)
                    && matches!(&net.arcs()[i].price, Ext::Finite(g) if *g > Rational::from_int(0))
            })
            .collect();
        for mask in 0u64..(1 << priced.len()) {
            let chosen: Vec<usize> = priced
                .iter()
                .enumerate()
                .filter(|(b, _)| mask & (1 << b) != 0)
                .map(|(_, &i)| i)
                .collect();
            let mut increase = vec![Rational::from_int(0); net.num_arcs()];
            let weight = chosen.iter().fold(Rational::from_int(0), |acc, &i| {
                acc + net.arcs()[i].price.finite().unwrap().clone() * loads[i].clone()
            });
            for &i in &chosen {
                increase[i] = bf.clone() / weight.clone();
            }
            let strategy = ProtectStrategy {
                flow: flow.clone(),
                increase,
            };
            let value = evaluate_protect(instance, &strategy)?;
            if value > best {
                best = value;
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interdiction::evaluate;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn fin(n: i64) -> Ext<Rational> {
        Ext::Finite(q(n, 1))
    }

    fn simple(arcs: &[(usize, usize)], n: usize) -> Network<Rational> {
        let arcs = arcs
            .iter()
            .map(|&(t, h)| Arc::new(t, h, fin(1), fin(1), fin(1)))
            .collect();
        Network::new(n, arcs, vec![Terminal::new(0, n - 1)])
    }

    /// Independent count: number of arc-simple walks by recursion over
    /// subsets of used arcs, with no shared code with the DFS above.
    fn count_walks(arcs: &[(usize, usize)], at: usize, sink: usize, used: u64) -> usize {
        let mut total = 0;
        for (i, &(t, h)) in arcs.iter().enumerate() {
            if t == at && used & (1 << i) == 0 {
                total += usize::from(h == sink) + count_walks(arcs, h, sink, used | (1 << i));
            }
        }
        total
    }

    #[test]
    fn parallel_and_series_counts() {
        let par = simple(&[(0, 1), (0, 1)], 2);
        assert_eq!(enumerate_paths(&par, NodeId(0), NodeId(1), 10).unwrap().len(), 2);
        let series = simple(&[(0, 1), (1, 2), (2, 3)], 4);
        assert_eq!(enumerate_paths(&series, NodeId(0), NodeId(3), 10).unwrap().len(), 1);
    }

    #[test]
    fn complete_digraph_count_matches_recursion() {
        let mut pairs = Vec::new();
        for a in 0..4 {
            for b in 0..4 {
                if a != b {
                    pairs.push((a, b));
                }
            }
        }
        let net = simple(&pairs, 4);
        let expected = count_walks(&pairs, 0, 3, 0);
        let got = enumerate_paths(&net, NodeId(0), NodeId(3), 10_000).unwrap();
        assert_eq!(got.len(), expected);
        for p in &got {
            assert!(p.validate(&net, NodeId(0), NodeId(3)).is_ok());
        }
    }

    #[test]
    fn cap_is_enforced() {
        let par = simple(&[(0, 1), (0, 1), (0, 1)], 2);
        assert_eq!(
            enumerate_paths(&par, NodeId(0), NodeId(1), 2),
            Err(Error::PathCapExceeded { cap: 2 })
        );
    }

    fn two_parallel() -> (Network<Rational>, Budgets<Rational>) {
        let arcs = vec![
            Arc::new(0, 1, fin(1), fin(1), fin(1)),
            Arc::new(0, 1, fin(1), fin(2), fin(1)),
        ];
        (
            Network::new(2, arcs, vec![Terminal::new(0, 1)]),
            Budgets::both(q(1, 1), q(1, 1)),
        )
    }

    #[test]
    fn brute_force_two_parallel_arcs() {
        let (net, budgets) = two_parallel();
        let uni = enumerate_universe(&net, 100).unwrap();
        let bf = brute_force_rf(&net, &budgets, &uni).unwrap();
        // c_f = 1: 1 + 1 - 1 = 1;  c_f = 2: 1/2 + 1 - 1/2 = 1
        assert_eq!(bf.value, q(1, 1));
        assert!(bf.per_breakpoint.contains(&(fin(1), q(1, 1))));
        assert!(bf.per_breakpoint.contains(&(fin(2), q(1, 1))));
        assert_eq!(evaluate(&bf.flow, &net, &budgets.interdictor).unwrap(), q(1, 1));
    }

    #[test]
    fn brute_force_without_budget_is_max_flow() {
        let (net, _) = two_parallel();
        let uni = enumerate_universe(&net, 100).unwrap();
        let bf = brute_force_rf(&net, &Budgets::interdictor(q(0, 1)), &uni).unwrap();
        assert_eq!(bf.value, q(2, 1));
    }

    #[test]
    fn brute_force_all_infinite_costs_is_max_flow() {
        let arcs = vec![
            Arc::new(0, 1, fin(1), Ext::Infinite, fin(0)),
            Arc::new(0, 1, fin(2), Ext::Infinite, fin(0)),
        ];
        let net = Network::new(2, arcs, vec![Terminal::new(0, 1)]);
        let uni = enumerate_universe(&net, 100).unwrap();
        let bf = brute_force_rf(&net, &Budgets::interdictor(q(10, 1)), &uni).unwrap();
        assert_eq!(bf.value, q(3, 1));
    }

    #[test]
    fn brute_force_budgeted_two_parallel() {
        let (net, budgets) = two_parallel();
        let uni = enumerate_universe(&net, 100).unwrap();
        let bf = brute_force_rf_budgeted(&net, &budgets, &uni).unwrap();
        // one unit of flow overall; best is arc 2: c_f=2 gives 1 - 1/2
        assert_eq!(bf.value, q(1, 2));
    }

    #[test]
    fn best_response_examples() {
        let (net, _) = two_parallel();
        let flow: PathFlow<Rational> = [(Path::from_indices(&[0]), q(1, 1)), (Path::from_indices(&[1]), q(1, 1))]
            .into_iter()
            .collect();
        assert_eq!(best_response_exact(&flow, &net, &q(1, 1)).unwrap(), q(1, 1));
        assert_eq!(best_response_exact(&flow, &net, &q(3, 1)).unwrap(), q(0, 1));
        assert_eq!(best_response_exact(&flow, &net, &q(0, 1)).unwrap(), q(2, 1));
    }

    #[test]
    fn design_examples() {
        let net = Network::new(
            2,
            vec![Arc::new(0, 1, fin(2), fin(1), fin(1))],
            vec![Terminal::new(0, 1)],
        );
        let uni = enumerate_universe(&net, 10).unwrap();
        assert_eq!(
            brute_force_design(&net, &Budgets::both(q(1, 1), q(4, 1)), &uni).unwrap(),
            q(3, 2)
        );
        assert_eq!(
            brute_force_design(&net, &Budgets::both(q(0, 1), q(4, 1)), &uni).unwrap(),
            q(2, 1)
        );
        assert_eq!(
            brute_force_design(&net, &Budgets::both(q(10, 1), q(1, 1)), &uni).unwrap(),
            q(0, 1)
        );
    }

    #[test]
    fn random_instances_are_connected_and_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let (net, _) = random_instance(&mut rng, &RandomSpec::default());
            let uni = enumerate_universe(&net, DEFAULT_PATH_CAP).unwrap();
            assert!(!uni.is_empty());
            assert!(net.num_nodes() <= 8 && net.num_arcs() <= 16);
        }
    }

    #[test]
    fn exhaustive_protection_finds_the_witness_profit() {
        let adp = AdpInstance {
            num_nodes: 4,
            arcs: vec![(0, 1), (2, 3)],
            s1: 0,
            t1: 1,
            s2: 2,
            t2: 3,
        };
        let inst = crate::reductions::adp_to_protect::<Rational>(&adp);
        let best = protect_exhaustive(&inst, DEFAULT_PATH_CAP).unwrap();
        assert!(best >= q(1, 1) / inst.big_m.clone());
    }
}
