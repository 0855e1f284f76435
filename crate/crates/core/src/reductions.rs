//! Hardness reductions used as structured instance generators, plus an
//! evaluator for the variant with base costs and purchasable increases.

use crate::error::{Error, Result};
use crate::ext::Ext;
use crate::graph::{Arc, ArcId, Budgets, Network, NodeId, Path, PathFlow, Terminal};
use crate::interdiction::evaluate;
use crate::oracle::enumerate_paths;
use crate::scalar::Scalar;
use crate::Rational;

/// Multicommodity flow feasibility instance.
#[derive(Clone, Debug, PartialEq)]
pub struct MfInstance<T> {
    pub num_nodes: usize,
    /// `(tail, head, capacity)`.
    pub arcs: Vec<(usize, usize, Ext<T>)>,
    /// `(source, sink, demand)`, indexed 1..k in order.
    pub commodities: Vec<(usize, usize, T)>,
}

/// Builds the robust-flow instance whose optimum is 1 exactly when the
/// multicommodity instance is feasible.
///
/// Node `n` is the super source and `n + 1` the super sink. Arc layout:
/// original arcs (cost `inf`), then `a_i = (s, s_i)` and `z_i = (t_i, t)` per
/// commodity with capacity `d_i` and cost `i`, then `e* = (s, t)` with
/// capacity 1 and cost `k + 1`. The interdictor budget is `sum_i i d_i`.
pub fn mf_to_rf<T: Scalar>(mf: &MfInstance<T>) -> (Network<T>, Budgets<T>) {
    let n = mf.num_nodes;
    let (s, t) = (n, n + 1);
    let k = mf.commodities.len();
    let mut arcs: Vec<Arc<T>> = mf
        .arcs
        .iter()
        .map(|(a, b, u)| Arc::new(*a, *b, u.clone(), Ext::Infinite, Ext::zero()))
        .collect();
    let mut budget = T::zero();
    for (i, (si, ti, d)) in mf.commodities.iter().enumerate() {
        let idx = T::from_int(i as i64 + 1);
        arcs.push(Arc::new(
            s,
            *si,
            Ext::Finite(d.clone()),
            Ext::Finite(idx.clone()),
            Ext::zero(),
        ));
        arcs.push(Arc::new(
            *ti,
            t,
            Ext::Finite(d.clone()),
            Ext::Finite(idx.clone()),
            Ext::zero(),
        ));
        budget = budget + d.clone() * idx;
    }
    arcs.push(Arc::new(
        s,
        t,
        Ext::Finite(T::one()),
        Ext::Finite(T::from_int(k as i64 + 1)),
        Ext::zero(),
    ));
    (
        Network::new(n + 2, arcs, vec![Terminal::new(s, t)]),
        Budgets::interdictor(budget),
    )
}

/// Arc-disjoint two-paths instance: does the digraph contain arc-disjoint
/// `s1`-`t1` and `s2`-`t2` paths?
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdpInstance {
    pub num_nodes: usize,
    pub arcs: Vec<(usize, usize)>,
    pub s1: usize,
    pub t1: usize,
    pub s2: usize,
    pub t2: usize,
}

impl AdpInstance {
    /// Makes `s1` have exactly one outgoing arc and `t1` exactly one
    /// incoming arc by splicing in a fresh node and arc where needed.
    ///
    /// Disjoint paths exist after normalization iff they existed before.
    pub fn normalized(&self) -> AdpInstance {
        let mut out = self.clone();
        if out.arcs.iter().filter(|(a, _)| *a == out.s1).count() != 1 {
            let fresh = out.num_nodes;
            out.num_nodes += 1;
            out.arcs.push((fresh, out.s1));
            out.s1 = fresh;
        }
        if out.arcs.iter().filter(|(_, b)| *b == out.t1).count() != 1 {
            let fresh = out.num_nodes;
            out.num_nodes += 1;
            out.arcs.push((out.t1, fresh));
            out.t1 = fresh;
        }
        out
    }

    /// Exhaustive search for arc-disjoint paths, first by `(P1, P2)` order.
    pub fn disjoint_paths(&self) -> Option<(Path, Path)> {
        let arcs = self
            .arcs
            .iter()
            .map(|&(a, b)| Arc::new(a, b, Ext::<Rational>::Infinite, Ext::Infinite, Ext::Infinite))
            .collect();
        let net = Network::new(self.num_nodes, arcs, Vec::new());
        let first = enumerate_paths(&net, NodeId(self.s1), NodeId(self.t1), usize::MAX).ok()?;
        let second = enumerate_paths(&net, NodeId(self.s2), NodeId(self.t2), usize::MAX).ok()?;
        for p in &first {
            if let Some(q) = second.iter().find(|q| q.arcs().iter().all(|a| !p.contains(*a))) {
                return Some((p.clone(), q.clone()));
            }
        }
        None
    }
}

/// Robust-flow instance with base costs and per-arc prices for raising them.
#[derive(Clone, Debug, PartialEq)]
pub struct ProtectInstance<T> {
    /// Arc costs hold the base costs `c0`.
    pub network: Network<T>,
    pub budgets: Budgets<T>,
    pub big_m: T,
    /// Normalized source instance; its arc `i` is arc `i` of `network`.
    pub source: AdpInstance,
    pub a1: ArcId,
    pub z1: ArcId,
    pub a2: ArcId,
    pub z2: ArcId,
}

/// Builds the protection instance of a two-disjoint-paths question: its
/// optimum is positive exactly when the disjoint paths exist.
pub fn adp_to_protect<T: Scalar>(adp: &AdpInstance) -> ProtectInstance<T> {
    let source = adp.normalized();
    let m = source.arcs.len();
    let big_m = T::from_int(m as i64 + 3);
    let (s, t) = (source.num_nodes, source.num_nodes + 1);
    let one = || Ext::Finite(T::one());
    let mut arcs: Vec<Arc<T>> = source
        .arcs
        .iter()
        .map(|&(a, b)| Arc::new(a, b, Ext::Infinite, one(), one()))
        .collect();
    let fm = Ext::Finite(big_m.clone());
    arcs.push(Arc::new(s, source.s1, one(), fm.clone(), Ext::Infinite));
    arcs.push(Arc::new(source.t1, t, one(), fm.clone(), Ext::Infinite));
    arcs.push(Arc::new(s, source.s2, fm.clone(), one(), Ext::Infinite));
    arcs.push(Arc::new(source.t2, t, fm, one(), Ext::Infinite));
    let budgets = Budgets::both(
        big_m.clone() + big_m.clone() - T::one(),
        T::from_int(m as i64) * (big_m.clone() - T::one()),
    );
    ProtectInstance {
        network: Network::new(source.num_nodes + 2, arcs, vec![Terminal::new(s, t)]),
        budgets,
        big_m,
        source,
        a1: ArcId(m),
        z1: ArcId(m + 1),
        a2: ArcId(m + 2),
        z2: ArcId(m + 3),
    }
}

/// A flow together with cost increases, one per arc.
#[derive(Clone, Debug, PartialEq)]
pub struct ProtectStrategy<T> {
    pub flow: PathFlow<T>,
    pub increase: Vec<T>,
}

impl<T: Scalar> ProtectInstance<T> {
    /// Strategy with profit `1/M` built from arc-disjoint paths `p1`, `p2`
    /// of the normalized source instance.
    pub fn witness(&self, p1: &Path, p2: &Path) -> ProtectStrategy<T> {
        let wrap = |first: ArcId, p: &Path, last: ArcId| {
            let mut arcs = vec![first];
            arcs.extend_from_slice(p.arcs());
            arcs.push(last);
            Path::new(arcs)
        };
        let mut flow = PathFlow::new();
        flow.add(wrap(self.a1, p1, self.z1), T::one());
        flow.add(wrap(self.a2, p2, self.z2), self.big_m.clone());
        let mut increase = vec![T::zero(); self.network.num_arcs()];
        let m = T::from_int(self.source.arcs.len() as i64);
        let level = m * (self.big_m.clone() - T::one()) / T::from_int(p1.len() as i64);
        for a in p1.arcs() {
            increase[a.0] = level.clone();
        }
        ProtectStrategy { flow, increase }
    }
}

/// Profit of a strategy: checks capacities and the purchase budget, then
/// evaluates the flow against the greedy interdictor on costs `c0 + c+`.
pub fn evaluate_protect<T: Scalar>(instance: &ProtectInstance<T>, strategy: &ProtectStrategy<T>) -> Result<T> {
    evaluate_with_increase(&instance.network, &instance.budgets, strategy)
}

/// [`evaluate_protect`] for an arbitrary network whose arc costs are the
/// base costs `c0`.
pub fn evaluate_with_increase<T: Scalar>(
    net: &Network<T>,
    budgets: &Budgets<T>,
    strategy: &ProtectStrategy<T>,
) -> Result<T> {
    if strategy.increase.len() != net.num_arcs() {
        return Err(Error::InvalidArcFlow(format!(
            "expected {} cost increases, got {}",
            net.num_arcs(),
            strategy.increase.len()
        )));
    }
    if let Some(i) = strategy.increase.iter().position(|c| *c < T::zero()) {
        return Err(Error::Negative(format!("cost increase on arc {}", ArcId(i))));
    }
    strategy.flow.check_feasible(net)?;
    let loads = strategy.flow.arc_loads(net.num_arcs());
    let mut spent = T::zero();
    for (i, arc) in net.arcs().iter().enumerate() {
        let bought = strategy.increase[i].clone() * loads[i].clone();
        if bought.is_zero() {
            continue;
        }
        match &arc.price {
            Ext::Finite(g) => spent = spent + g.clone() * bought,
            Ext::Infinite => {
                return Err(Error::BudgetViolated(format!(
                    "arc {} has infinite price but its cost is raised",
                    ArcId(i)
                )))
            }
        }
    }
    let bf = budgets.flow_player.clone().ok_or(Error::MissingFlowBudget)?;
    if !spent.approx_le(&bf) {
        return Err(Error::BudgetViolated(format!("spent {} of {}", spent, bf)));
    }
    let costs = net
        .arcs()
        .iter()
        .zip(&strategy.increase)
        .map(|(a, c)| a.cost.add(&Ext::Finite(c.clone())))
        .collect();
    evaluate(&strategy.flow, &net.with_costs(costs), &budgets.interdictor)
}
