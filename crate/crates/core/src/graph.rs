//! Networks, paths and path flows.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::ext::Ext;
use crate::scalar::Scalar;

/// Zero-based arc index. Displayed 1-based, matching instance files.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArcId(pub usize);

/// Zero-based node index. Displayed 1-based, matching instance files.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub usize);

impl fmt::Display for ArcId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0 + 1)
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0 + 1)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Arc<T> {
    pub tail: NodeId,
    pub head: NodeId,
    pub capacity: Ext<T>,
    /// Per-unit price the interdictor pays to steal flow on this arc.
    pub cost: Ext<T>,
    /// Per-unit protection price paid by the flow player.
    pub price: Ext<T>,
}

impl<T: Scalar> Arc<T> {
    pub fn new(tail: usize, head: usize, capacity: Ext<T>, cost: Ext<T>, price: Ext<T>) -> Self {
        Arc {
            tail: NodeId(tail),
            head: NodeId(head),
            capacity,
            cost,
            price,
        }
    }
}

/// A source/sink pair; `demand` is only meaningful for multicommodity input.
#[derive(Clone, Debug, PartialEq)]
pub struct Terminal<T> {
    pub source: NodeId,
    pub sink: NodeId,
    pub demand: Option<T>,
}

impl<T> Terminal<T> {
    pub fn new(source: usize, sink: usize) -> Self {
        Terminal {
            source: NodeId(source),
            sink: NodeId(sink),
            demand: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Budgets<T> {
    /// `B_I`
    pub interdictor: T,
    /// `B_F`
    pub flow_player: Option<T>,
}

impl<T: Scalar> Budgets<T> {
    pub fn interdictor(b: T) -> Self {
        Budgets {
            interdictor: b,
            flow_player: None,
        }
    }

    pub fn both(interdictor: T, flow_player: T) -> Self {
        Budgets {
            interdictor,
            flow_player: Some(flow_player),
        }
    }

    pub fn map_scalar<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Budgets<U> {
        Budgets {
            interdictor: f(&self.interdictor),
            flow_player: self.flow_player.as_ref().map(f),
        }
    }
}

/// Directed multigraph with per-arc capacity, interdiction cost and
/// protection price. Immutable once built.
#[derive(Clone, Debug, PartialEq)]
pub struct Network<T> {
    num_nodes: usize,
    arcs: Vec<Arc<T>>,
    terminals: Vec<Terminal<T>>,
    out_arcs: Vec<Vec<ArcId>>,
}

impl<T: Scalar> Network<T> {
    /// Builds a network without validating it; see [`validate_instance`].
    pub fn new(num_nodes: usize, arcs: Vec<Arc<T>>, terminals: Vec<Terminal<T>>) -> Self {
        let mut out_arcs = vec![Vec::new(); num_nodes];
        for (i, arc) in arcs.iter().enumerate() {
            if arc.tail.0 < num_nodes && arc.head.0 < num_nodes {
                out_arcs[arc.tail.0].push(ArcId(i));
            }
        }
        Network {
            num_nodes,
            arcs,
            terminals,
            out_arcs,
        }
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn num_arcs(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[Arc<T>] {
        &self.arcs
    }

    pub fn arc_ids(&self) -> impl Iterator<Item = ArcId> {
        (0..self.arcs.len()).map(ArcId)
    }

    pub fn arc(&self, id: ArcId) -> Result<&Arc<T>> {
        self.arcs.get(id.0).ok_or(Error::UnknownArc(id))
    }

    pub fn terminals(&self) -> &[Terminal<T>] {
        &self.terminals
    }

    pub fn out_arcs(&self, node: NodeId) -> &[ArcId] {
        self.out_arcs.get(node.0).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Same graph with the interdiction costs replaced.
    pub fn with_costs(&self, costs: Vec<Ext<T>>) -> Self {
        assert_eq!(costs.len(), self.arcs.len());
        let arcs = self
            .arcs
            .iter()
            .zip(costs)
            .map(|(a, cost)| Arc { cost, ..a.clone() })
            .collect();
        Network::new(self.num_nodes, arcs, self.terminals.clone())
    }

    /// Converts every scalar with `f`, keeping `inf` sentinels.
    pub fn map_scalar<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Network<U> {
        let ext = |e: &Ext<T>| match e {
            Ext::Finite(v) => Ext::Finite(f(v)),
            Ext::Infinite => Ext::Infinite,
        };
        let arcs = self
            .arcs
            .iter()
            .map(|a| Arc {
                tail: a.tail,
                head: a.head,
                capacity: ext(&a.capacity),
                cost: ext(&a.cost),
                price: ext(&a.price),
            })
            .collect();
        let terminals = self
            .terminals
            .iter()
            .map(|t| Terminal {
                source: t.source,
                sink: t.sink,
                demand: t.demand.as_ref().map(&f),
            })
            .collect();
        Network::new(self.num_nodes, arcs, terminals)
    }

    /// Same arcs with a different terminal list.
    pub fn with_terminals(&self, terminals: Vec<Terminal<T>>) -> Self {
        Network::new(self.num_nodes, self.arcs.clone(), terminals)
    }
}

/// A structural problem found by [`validate_instance`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    UnknownNode { arc: ArcId, node: NodeId },
    NegativeCapacity(ArcId),
    NegativeCost(ArcId),
    NegativePrice(ArcId),
    MissingTerminals,
    UnknownTerminalNode { commodity: usize, node: NodeId },
    SourceIsSink { commodity: usize },
    NonPositiveDemand { commodity: usize },
    NegativeInterdictorBudget,
    NegativeFlowBudget,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnknownNode { arc, node } => write!(f, "unknown node {node} on arc {arc}"),
            Violation::NegativeCapacity(a) => write!(f, "negative capacity on arc {a}"),
            Violation::NegativeCost(a) => write!(f, "negative interdiction cost on arc {a}"),
            Violation::NegativePrice(a) => write!(f, "negative protection price on arc {a}"),
            Violation::MissingTerminals => f.write_str("missing terminals"),
            Violation::UnknownTerminalNode { commodity, node } => {
                write!(f, "unknown node {node} in commodity {}", commodity + 1)
            }
            Violation::SourceIsSink { commodity } => {
                write!(f, "source equals sink in commodity {}", commodity + 1)
            }
            Violation::NonPositiveDemand { commodity } => {
                write!(f, "non-positive demand in commodity {}", commodity + 1)
            }
            Violation::NegativeInterdictorBudget => f.write_str("negative interdictor budget"),
            Violation::NegativeFlowBudget => f.write_str("negative flow player budget"),
        }
    }
}

/// Every violated structural invariant; empty means the instance is valid.
pub fn validate_instance<T: Scalar>(network: &Network<T>, budgets: &Budgets<T>) -> Vec<Violation> {
    let mut out = Vec::new();
    let n = network.num_nodes();
    for (i, arc) in network.arcs().iter().enumerate() {
        let id = ArcId(i);
        for node in [arc.tail, arc.head] {
            if node.0 >= n {
                out.push(Violation::UnknownNode { arc: id, node });
            }
        }
        if arc.capacity.is_negative() {
            out.push(Violation::NegativeCapacity(id));
        }
        if arc.cost.is_negative() {
            out.push(Violation::NegativeCost(id));
        }
        if arc.price.is_negative() {
            out.push(Violation::NegativePrice(id));
        }
    }
    if network.terminals().is_empty() {
        out.push(Violation::MissingTerminals);
    }
    for (k, term) in network.terminals().iter().enumerate() {
        for node in [term.source, term.sink] {
            if node.0 >= n {
                out.push(Violation::UnknownTerminalNode { commodity: k, node });
            }
        }
        if term.source == term.sink {
            out.push(Violation::SourceIsSink { commodity: k });
        }
        if matches!(&term.demand, Some(d) if *d <= T::zero()) {
            out.push(Violation::NonPositiveDemand { commodity: k });
        }
    }
    if budgets.interdictor < T::zero() {
        out.push(Violation::NegativeInterdictorBudget);
    }
    if matches!(&budgets.flow_player, Some(b) if *b < T::zero()) {
        out.push(Violation::NegativeFlowBudget);
    }
    out
}

/// Ordered arc sequence. Paths may revisit nodes but never arcs.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path(Vec<ArcId>);

impl Path {
    pub fn new(arcs: Vec<ArcId>) -> Self {
        Path(arcs)
    }

    pub fn from_indices(arcs: &[usize]) -> Self {
        Path(arcs.iter().copied().map(ArcId).collect())
    }

    pub fn arcs(&self) -> &[ArcId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, arc: ArcId) -> bool {
        self.0.contains(&arc)
    }

    /// Checks that the arcs form an arc-simple walk from `source` to `sink`.
    pub fn validate<T: Scalar>(&self, network: &Network<T>, source: NodeId, sink: NodeId) -> Result<()> {
        let first = self.0.first().ok_or_else(|| Error::InvalidPath("empty path".into()))?;
        if network.arc(*first)?.tail != source {
            return Err(Error::InvalidPath(format!("path does not start at node {source}")));
        }
        let mut seen = vec![false; network.num_arcs()];
        let mut at = source;
        for &id in &self.0 {
            let arc = network.arc(id)?;
            if arc.tail != at {
                return Err(Error::InvalidPath(format!("arc {id} does not continue from node {at}")));
            }
            if std::mem::replace(&mut seen[id.0], true) {
                return Err(Error::InvalidPath(format!("arc {id} repeated")));
            }
            at = arc.head;
        }
        if at != sink {
            return Err(Error::InvalidPath(format!("path does not end at node {sink}")));
        }
        Ok(())
    }

    /// Index of the first commodity whose terminals this path connects.
    pub fn commodity<T: Scalar>(&self, network: &Network<T>) -> Option<usize> {
        network
            .terminals()
            .iter()
            .position(|t| self.validate(network, t.source, t.sink).is_ok())
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

/// `min_{e in P} c_e`, the per-unit price of stealing from `path`.
pub fn bottleneck_cost<T: Scalar>(path: &Path, network: &Network<T>) -> Result<Ext<T>> {
    let mut best = Ext::Infinite;
    for &id in path.arcs() {
        best = best.min(network.arc(id)?.cost.clone());
    }
    Ok(best)
}

/// Nonnegative flow values on explicit paths, ordered lexicographically.
#[derive(Clone, Debug, PartialEq)]
pub struct PathFlow<T> {
    entries: BTreeMap<Path, T>,
}

impl<T: Scalar> Default for PathFlow<T> {
    fn default() -> Self {
        PathFlow {
            entries: BTreeMap::new(),
        }
    }
}

impl<T: Scalar> PathFlow<T> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `value` to the flow on `path`; zero entries are not stored.
    pub fn add(&mut self, path: Path, value: T) {
        if value.is_zero() {
            return;
        }
        let slot = self.entries.entry(path).or_insert_with(T::zero);
        *slot = slot.clone() + value;
    }

    pub fn get(&self, path: &Path) -> T {
        self.entries.get(path).cloned().unwrap_or_else(T::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Path, &T)> {
        self.entries.iter()
    }

    pub fn paths(&self) -> impl Iterator<Item = &Path> {
        self.entries.keys()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `sum_P x_P`
    pub fn value(&self) -> T {
        self.entries.values().fold(T::zero(), |acc, v| acc + v.clone())
    }

    /// `x_e = sum_{P ∋ e} x_P` for every arc.
    pub fn arc_loads(&self, num_arcs: usize) -> Vec<T> {
        let mut loads = vec![T::zero(); num_arcs];
        for (path, v) in &self.entries {
            for &id in path.arcs() {
                if let Some(slot) = loads.get_mut(id.0) {
                    *slot = slot.clone() + v.clone();
                }
            }
        }
        loads
    }

    pub fn is_integral(&self) -> bool {
        self.entries.values().all(Scalar::is_integral)
    }

    /// Nonnegativity, path validity and capacity feasibility (up to tolerance).
    pub fn check_feasible(&self, network: &Network<T>) -> Result<()> {
        for (path, v) in &self.entries {
            if *v < T::zero() && !v.approx_eq(&T::zero()) {
                return Err(Error::Negative(format!("flow {v} on path {path}")));
            }
            if path.commodity(network).is_none() {
                return Err(Error::InvalidPath(format!("{path} connects no terminal pair")));
            }
        }
        for (i, load) in self.arc_loads(network.num_arcs()).iter().enumerate() {
            if let Ext::Finite(cap) = &network.arcs()[i].capacity {
                if !load.approx_le(cap) {
                    return Err(Error::CapacityViolated { arc: ArcId(i) });
                }
            }
        }
        Ok(())
    }

    /// Drops entries that are zero up to tolerance and clamps tiny negatives.
    pub fn cleaned(self) -> Self {
        PathFlow {
            entries: self.entries.into_iter().filter(|(_, v)| v.is_positive_tol()).collect(),
        }
    }

    pub fn map_values<U: Scalar>(&self, f: impl Fn(&T) -> U) -> PathFlow<U> {
        let mut out = PathFlow::new();
        for (p, v) in &self.entries {
            out.add(p.clone(), f(v));
        }
        out
    }
}

impl<T: Scalar> FromIterator<(Path, T)> for PathFlow<T> {
    fn from_iter<I: IntoIterator<Item = (Path, T)>>(iter: I) -> Self {
        let mut flow = PathFlow::new();
        for (p, v) in iter {
            flow.add(p, v);
        }
        flow
    }
}

/// Decomposes an `s`-`t` arc flow into at most `|A|` paths.
///
/// Circulation components that do not carry `s`-`t` flow are dropped, so
/// the per-arc load of the result is at most the input (equal when the
/// input is acyclic). Integral input yields an integral decomposition.
pub fn decompose_flow<T: Scalar>(
    arc_flow: &[T],
    network: &Network<T>,
    source: NodeId,
    sink: NodeId,
) -> Result<PathFlow<T>> {
    let m = network.num_arcs();
    let n = network.num_nodes();
    if arc_flow.len() != m {
        return Err(Error::InvalidArcFlow(format!(
            "expected {m} arc values, got {}",
            arc_flow.len()
        )));
    }
    for node in [source, sink] {
        if node.0 >= n {
            return Err(Error::UnknownNode(node));
        }
    }
    let mut balance = vec![T::zero(); n];
    for (i, (arc, x)) in network.arcs().iter().zip(arc_flow).enumerate() {
        if *x < T::zero() && !x.approx_eq(&T::zero()) {
            return Err(Error::InvalidArcFlow(format!("negative flow on arc {}", ArcId(i))));
        }
        if let Ext::Finite(cap) = &arc.capacity {
            if !x.approx_le(cap) {
                return Err(Error::CapacityViolated { arc: ArcId(i) });
            }
        }
        balance[arc.tail.0] = balance[arc.tail.0].clone() - x.clone();
        balance[arc.head.0] = balance[arc.head.0].clone() + x.clone();
    }
    for (v, b) in balance.iter().enumerate() {
        if v != source.0 && v != sink.0 && !b.approx_eq(&T::zero()) {
            return Err(Error::Conservation(NodeId(v)));
        }
    }

    let mut residual: Vec<T> = arc_flow.to_vec();
    let mut value = -balance[source.0].clone();
    let mut out = PathFlow::new();
    if source == sink {
        return Ok(out);
    }
    // Every round zeroes an arc or the remaining value.
    for _ in 0..=m + 1 {
        if !value.is_positive_tol() {
            break;
        }
        match positive_walk(network, &residual, source, sink) {
            Walk::Path(path) => {
                let amount = path
                    .iter()
                    .map(|a| residual[a.0].clone())
                    .fold(value.clone(), T::min_of);
                subtract(&mut residual, &path, &amount);
                value = value - amount.clone();
                out.add(Path::new(path), amount);
            }
            Walk::Cycle(cycle) => {
                let amount = cycle
                    .iter()
                    .map(|a| residual[a.0].clone())
                    .reduce(T::min_of)
                    .expect("non-empty cycle");
                subtract(&mut residual, &cycle, &amount);
            }
            Walk::Stuck => break,
        }
    }
    Ok(out)
}

fn subtract<T: Scalar>(residual: &mut [T], arcs: &[ArcId], amount: &T) {
    for a in arcs {
        let r = residual[a.0].clone() - amount.clone();
        residual[a.0] = if r.is_positive_tol() { r } else { T::zero() };
    }
}

enum Walk {
    Path(Vec<ArcId>),
    Cycle(Vec<ArcId>),
    Stuck,
}

/// Follows positive residual arcs from `s` until it reaches `t` or closes
/// a cycle.
fn positive_walk<T: Scalar>(network: &Network<T>, residual: &[T], s: NodeId, t: NodeId) -> Walk {
    let mut position: Vec<Option<usize>> = vec![None; network.num_nodes()];
    let mut arcs: Vec<ArcId> = Vec::new();
    let mut at = s;
    position[s.0] = Some(0);
    loop {
        if at == t {
            return Walk::Path(arcs);
        }
        let Some(&id) = network.out_arcs(at).iter().find(|a| residual[a.0].is_positive_tol()) else {
            return Walk::Stuck;
        };
        arcs.push(id);
        at = network.arcs()[id.0].head;
        if let Some(p) = position[at.0] {
            return Walk::Cycle(arcs.split_off(p));
        }
        position[at.0] = Some(arcs.len());
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn fin(n: i64) -> Ext<Rational> {
        Ext::Finite(q(n))
    }

    fn arc(t: usize, h: usize, u: i64, c: i64) -> Arc<Rational> {
        Arc::new(t, h, fin(u), fin(c), fin(0))
    }

    fn diamond() -> Network<Rational> {
        // s=0, a=1, b=2, t=3
        Network::new(
            4,
            vec![arc(0, 1, 5, 1), arc(1, 3, 5, 1), arc(0, 2, 5, 1), arc(2, 3, 5, 1)],
            vec![Terminal::new(0, 3)],
        )
    }

    #[test]
    fn well_formed_instance_has_no_violations() {
        let net = Network::new(2, vec![arc(0, 1, 1, 1)], vec![Terminal::new(0, 1)]);
        assert!(validate_instance(&net, &Budgets::interdictor(q(1))).is_empty());
    }

    #[test]
    fn unknown_node_is_reported() {
        let net = Network::new(2, vec![arc(5, 1, 1, 1)], vec![Terminal::new(0, 1)]);
        let v = validate_instance(&net, &Budgets::interdictor(q(1)));
        assert_eq!(
            v,
            vec![Violation::UnknownNode {
                arc: ArcId(0),
                node: NodeId(5)
            }]
        );
        assert!(v[0].to_string().contains("unknown node"));
    }

    #[test]
    fn negative_capacity_is_reported() {
        let net = Network::new(2, vec![arc(0, 1, -1, 1)], vec![Terminal::new(0, 1)]);
        let v = validate_instance(&net, &Budgets::interdictor(q(1)));
        assert_eq!(v, vec![Violation::NegativeCapacity(ArcId(0))]);
        assert!(v[0].to_string().contains("negative capacity"));
    }

    #[test]
    fn missing_terminals_and_budgets() {
        let net = Network::new(2, vec![arc(0, 1, 1, 1)], vec![]);
        let v = validate_instance(&net, &Budgets::both(q(-1), q(-2)));
        assert!(v.contains(&Violation::MissingTerminals));
        assert!(v.contains(&Violation::NegativeInterdictorBudget));
        assert!(v.contains(&Violation::NegativeFlowBudget));
    }

    #[test]
    fn bottleneck_examples() {
        let net = Network::new(
            4,
            vec![arc(0, 1, 1, 3), arc(1, 2, 1, 1), arc(2, 3, 1, 2)],
            vec![Terminal::new(0, 3)],
        );
        assert_eq!(bottleneck_cost(&Path::from_indices(&[0, 1, 2]), &net), Ok(fin(1)));
        let inf = Network::new(
            2,
            vec![Arc::new(0, 1, fin(1), Ext::Infinite, fin(0))],
            vec![Terminal::new(0, 1)],
        );
        assert_eq!(bottleneck_cost(&Path::from_indices(&[0]), &inf), Ok(Ext::Infinite));
        let equal = Network::new(3, vec![arc(0, 1, 1, 5), arc(1, 2, 1, 5)], vec![Terminal::new(0, 2)]);
        assert_eq!(bottleneck_cost(&Path::from_indices(&[0, 1]), &equal), Ok(fin(5)));
        assert_eq!(
            bottleneck_cost(&Path::from_indices(&[7]), &equal),
            Err(Error::UnknownArc(ArcId(7)))
        );
    }

    #[test]
    fn path_validation() {
        let net = diamond();
        let (s, t) = (NodeId(0), NodeId(3));
        assert!(Path::from_indices(&[0, 1]).validate(&net, s, t).is_ok());
        assert!(Path::from_indices(&[0, 3]).validate(&net, s, t).is_err());
        assert!(Path::from_indices(&[0]).validate(&net, s, t).is_err());
        assert!(Path::from_indices(&[]).validate(&net, s, t).is_err());
        assert_eq!(Path::from_indices(&[2, 3]).commodity(&net), Some(0));
    }

    #[test]
    fn path_may_revisit_nodes_but_not_arcs() {
        // 0 -> 1 -> 0 -> 1 -> 2 through distinct parallel arcs
        let net = Network::new(
            3,
            vec![arc(0, 1, 1, 1), arc(1, 0, 1, 1), arc(0, 1, 1, 1), arc(1, 2, 1, 1)],
            vec![Terminal::new(0, 2)],
        );
        let (s, t) = (NodeId(0), NodeId(2));
        assert!(Path::from_indices(&[0, 1, 2, 3]).validate(&net, s, t).is_ok());
        assert!(Path::from_indices(&[0, 1, 0, 3]).validate(&net, s, t).is_err());
    }

    #[test]
    fn decompose_single_arc() {
        let net = Network::new(2, vec![arc(0, 1, 5, 1)], vec![Terminal::new(0, 1)]);
        let flow = decompose_flow(&[q(2)], &net, NodeId(0), NodeId(1)).unwrap();
        assert_eq!(flow.len(), 1);
        assert_eq!(flow.get(&Path::from_indices(&[0])), q(2));
    }

    #[test]
    fn decompose_parallel_arcs() {
        let net = Network::new(2, vec![arc(0, 1, 5, 1), arc(0, 1, 5, 1)], vec![Terminal::new(0, 1)]);
        let flow = decompose_flow(&[q(1), q(1)], &net, NodeId(0), NodeId(1)).unwrap();
        assert_eq!(flow.len(), 2);
        assert_eq!(flow.get(&Path::from_indices(&[0])), q(1));
        assert_eq!(flow.get(&Path::from_indices(&[1])), q(1));
    }

    #[test]
    fn decompose_diamond_matches_loads() {
        let net = diamond();
        let input = vec![q(3); 4];
        let flow = decompose_flow(&input, &net, NodeId(0), NodeId(3)).unwrap();
        assert_eq!(flow.len(), 2);
        assert_eq!(flow.value(), q(6));
        assert_eq!(flow.arc_loads(4), input);
        assert!(flow.is_integral());
    }

    #[test]
    fn decompose_rejects_broken_conservation() {
        let net = diamond();
        let err = decompose_flow(&[q(3), q(1), q(0), q(0)], &net, NodeId(0), NodeId(3)).unwrap_err();
        assert_eq!(err, Error::Conservation(NodeId(1)));
    }

    #[test]
    fn decompose_drops_detached_cycles() {
        // s=0 -> t=1 plus cycle 2 <-> 3
        let net = Network::new(
            4,
            vec![arc(0, 1, 5, 1), arc(2, 3, 5, 1), arc(3, 2, 5, 1)],
            vec![Terminal::new(0, 1)],
        );
        let flow = decompose_flow(&[q(1), q(2), q(2)], &net, NodeId(0), NodeId(1)).unwrap();
        assert_eq!(flow.value(), q(1));
        assert_eq!(flow.arc_loads(3), vec![q(1), q(0), q(0)]);
    }

    #[test]
    fn decompose_counts_net_value_when_flow_reenters_source() {
        // 2 units leave s, 1 comes back over t -> s
        let net = Network::new(
            2,
            vec![arc(0, 1, 5, 1), arc(0, 1, 5, 1), arc(1, 0, 5, 1)],
            vec![Terminal::new(0, 1)],
        );
        let flow = decompose_flow(&[q(1), q(1), q(1)], &net, NodeId(0), NodeId(1)).unwrap();
        assert_eq!(flow.value(), q(1));
        assert_eq!(flow.arc_loads(3)[2], q(0));
    }

    #[test]
    fn feasibility_check() {
        let net = diamond();
        let mut flow = PathFlow::new();
        flow.add(Path::from_indices(&[0, 1]), q(5));
        assert!(flow.check_feasible(&net).is_ok());
        flow.add(Path::from_indices(&[0, 1]), q(1));
        assert_eq!(
            flow.check_feasible(&net),
            Err(Error::CapacityViolated { arc: ArcId(0) })
        );
    }
}
