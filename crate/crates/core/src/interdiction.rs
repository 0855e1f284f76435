//! The interdictor's best response and robust-value evaluation.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::ext::Ext;
use crate::graph::{bottleneck_cost, ArcId, Network, Path, PathFlow};
use crate::scalar::Scalar;

/// Amounts `z_{e,P}` stolen from path `P` on arc `e`.
#[derive(Clone, Debug, PartialEq)]
pub struct InterdictionPlan<T> {
    steals: BTreeMap<(ArcId, Path), T>,
    spent: T,
}

impl<T: Scalar> InterdictionPlan<T> {
    pub fn empty() -> Self {
        InterdictionPlan {
            steals: BTreeMap::new(),
            spent: T::zero(),
        }
    }

    /// Builds a plan from raw steals, charging `c_e` per unit.
    pub fn from_steals(network: &Network<T>, steals: impl IntoIterator<Item = (ArcId, Path, T)>) -> Result<Self> {
        let mut plan = InterdictionPlan::empty();
        for (arc, path, amount) in steals {
            if amount < T::zero() {
                return Err(Error::Negative(format!("steal {amount} on arc {arc}")));
            }
            network.arc(arc)?;
            let slot = plan.steals.entry((arc, path)).or_insert_with(T::zero);
            *slot = slot.clone() + amount;
        }
        if let Ext::Finite(spent) = plan.cost(network)? {
            plan.spent = spent;
        }
        Ok(plan)
    }

    pub fn steals(&self) -> impl Iterator<Item = (ArcId, &Path, &T)> {
        self.steals.iter().map(|((a, p), v)| (*a, p, v))
    }

    pub fn len(&self) -> usize {
        self.steals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steals.is_empty()
    }

    pub fn spent_budget(&self) -> &T {
        &self.spent
    }

    /// `sum_e c_e sum_P z_{e,P}`, infinite if any steal sits on an infinite-cost arc.
    pub fn cost(&self, network: &Network<T>) -> Result<Ext<T>> {
        let mut total = Ext::zero();
        for ((arc, _), amount) in &self.steals {
            total = total.add(&network.arc(*arc)?.cost.scale(amount));
        }
        Ok(total)
    }

    /// Checks membership of every steal in its path and the budget `B_I`.
    pub fn check_feasible(&self, network: &Network<T>, budget: &T) -> Result<()> {
        for (arc, path) in self.steals.keys() {
            if !path.contains(*arc) {
                return Err(Error::StealOffPath { arc: *arc });
            }
        }
        let cost = self.cost(network)?;
        let within = match &cost {
            Ext::Finite(c) => c.approx_le(budget),
            Ext::Infinite => false,
        };
        if !within {
            return Err(Error::BudgetViolated(format!(
                "interdiction costs {cost}, budget is {budget}"
            )));
        }
        Ok(())
    }
}

/// Flow left on each path after an interdiction.
#[derive(Clone, Debug, PartialEq)]
pub struct SurvivingFlow<T> {
    pub entries: BTreeMap<Path, T>,
    pub total_value: T,
}

/// `x̄_P = (x_P - sum_{e in P} z_{e,P})^+` and their sum.
pub fn robust_value<T: Scalar>(flow: &PathFlow<T>, plan: &InterdictionPlan<T>) -> Result<SurvivingFlow<T>> {
    let mut stolen: BTreeMap<&Path, T> = BTreeMap::new();
    for (arc, path, amount) in plan.steals() {
        if !path.contains(arc) {
            return Err(Error::StealOffPath { arc });
        }
        let slot = stolen.entry(path).or_insert_with(T::zero);
        *slot = slot.clone() + amount.clone();
    }
    let mut entries = BTreeMap::new();
    let mut total = T::zero();
    for (path, x) in flow.iter() {
        let left = match stolen.get(path) {
            Some(z) => T::max_of(x.clone() - z.clone(), T::zero()),
            None => x.clone(),
        };
        total = total + left.clone();
        entries.insert(path.clone(), left);
    }
    Ok(SurvivingFlow {
        entries,
        total_value: total,
    })
}

/// Greedy optimal interdiction.
///
/// Flow-carrying paths are attacked in order of non-decreasing bottleneck
/// cost (ties by arc-id sequence), each on its lowest-id cheapest arc, until
/// the budget runs out; the last attacked path may be hit fractionally.
/// Paths of infinite bottleneck cost are never attacked.
pub fn greedy_best_response<T: Scalar>(
    flow: &PathFlow<T>,
    network: &Network<T>,
    budget: &T,
) -> Result<InterdictionPlan<T>> {
    let mut targets: Vec<(T, &Path, &T, ArcId)> = Vec::new();
    for (path, x) in flow.iter() {
        if !x.is_positive_tol() {
            continue;
        }
        let Ext::Finite(cbar) = bottleneck_cost(path, network)? else {
            continue;
        };
        let arc = *path
            .arcs()
            .iter()
            .filter(|a| network.arcs()[a.0].cost == Ext::Finite(cbar.clone()))
            .min()
            .expect("bottleneck attained on the path");
        targets.push((cbar, path, x, arc));
    }
    // Stable sort keeps the lexicographic path order among equal costs.
    targets.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("comparable costs"));

    let mut plan = InterdictionPlan::<T>::empty();
    let mut remaining = budget.clone();
    for (cbar, path, x, arc) in targets {
        let amount = if cbar.is_zero() {
            x.clone()
        } else {
            if !remaining.is_positive_tol() {
                break;
            }
            let affordable = remaining.clone() / cbar.clone();
            T::min_of(x.clone(), affordable)
        };
        let cost = amount.clone() * cbar;
        remaining = T::max_of(remaining - cost.clone(), T::zero());
        plan.spent = plan.spent.clone() + cost;
        plan.steals.insert((arc, path.clone()), amount);
    }
    Ok(plan)
}

/// `sum_P c̄_P x_P`, the price of stealing everything.
pub fn interdiction_cost_of_flow<T: Scalar>(flow: &PathFlow<T>, network: &Network<T>) -> Result<Ext<T>> {
    let mut total = Ext::zero();
    for (path, x) in flow.iter() {
        total = total.add(&bottleneck_cost(path, network)?.scale(x));
    }
    Ok(total)
}

/// Surviving value of `flow` against the greedy interdictor.
pub fn evaluate<T: Scalar>(flow: &PathFlow<T>, network: &Network<T>, budget: &T) -> Result<T> {
    let plan = greedy_best_response(flow, network, budget)?;
    Ok(robust_value(flow, &plan)?.total_value)
}
