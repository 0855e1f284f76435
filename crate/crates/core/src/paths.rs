//! Shortest-path and widest-path searches over small dense networks.
//!
//! Both use the O(n^2) array variant of Dijkstra; node ties go to the
//! lowest index and arcs are scanned in id order, so results are
//! deterministic.

use crate::ext::Ext;
use crate::graph::{ArcId, Network, NodeId, Path};
use crate::scalar::Scalar;

/// Shortest `source`-`sink` path under nonnegative weights.
///
/// `weight` returns `None` for arcs that must not be used. The returned
/// path is node-simple, hence arc-simple.
pub fn shortest_path<T: Scalar>(
    network: &Network<T>,
    source: NodeId,
    sink: NodeId,
    weight: impl Fn(ArcId) -> Option<T>,
) -> Option<(T, Path)> {
    let n = network.num_nodes();
    if source.0 >= n || sink.0 >= n || source == sink {
        return None;
    }
    let weights: Vec<Option<T>> = network.arc_ids().map(&weight).collect();
    let mut dist: Vec<Option<T>> = vec![None; n];
    let mut pred: Vec<Option<ArcId>> = vec![None; n];
    let mut done = vec![false; n];
    dist[source.0] = Some(T::zero());
    loop {
        let mut pick: Option<usize> = None;
        for v in 0..n {
            if done[v] {
                continue;
            }
            if let Some(d) = &dist[v] {
                if pick.is_none_or(|p| *d < *dist[p].as_ref().unwrap()) {
                    pick = Some(v);
                }
            }
        }
        let Some(u) = pick else { break };
        done[u] = true;
        if u == sink.0 {
            break;
        }
        let du = dist[u].clone().unwrap();
        for &id in network.out_arcs(NodeId(u)) {
            let Some(w) = &weights[id.0] else { continue };
            let head = network.arcs()[id.0].head.0;
            if done[head] {
                continue;
            }
            let cand = du.clone() + w.clone();
            if dist[head].as_ref().is_none_or(|d| cand < *d) {
                dist[head] = Some(cand);
                pred[head] = Some(id);
            }
        }
    }
    let length = dist[sink.0].clone()?;
    Some((length, trace(network, &pred, source, sink)))
}

/// Maximum over `source`-`sink` paths of the minimum arc `width`, together
/// with a path attaining it. `None` when `sink` is unreachable.
pub fn widest_path<T: Scalar>(
    network: &Network<T>,
    source: NodeId,
    sink: NodeId,
    width: impl Fn(ArcId) -> Ext<T>,
) -> Option<(Ext<T>, Path)> {
    let n = network.num_nodes();
    if source.0 >= n || sink.0 >= n || source == sink {
        return None;
    }
    let mut best: Vec<Option<Ext<T>>> = vec![None; n];
    let mut pred: Vec<Option<ArcId>> = vec![None; n];
    let mut done = vec![false; n];
    best[source.0] = Some(Ext::Infinite);
    loop {
        let mut pick: Option<usize> = None;
        for v in 0..n {
            if done[v] {
                continue;
            }
            if let Some(b) = &best[v] {
                if pick.is_none_or(|p| *b > *best[p].as_ref().unwrap()) {
                    pick = Some(v);
                }
            }
        }
        let Some(u) = pick else { break };
        done[u] = true;
        if u == sink.0 {
            break;
        }
        let bu = best[u].clone().unwrap();
        for &id in network.out_arcs(NodeId(u)) {
            let head = network.arcs()[id.0].head.0;
            if done[head] {
                continue;
            }
            let cand = bu.clone().min(width(id));
            if best[head].as_ref().is_none_or(|b| cand > *b) {
                best[head] = Some(cand);
                pred[head] = Some(id);
            }
        }
    }
    let value = best[sink.0].clone()?;
    Some((value, trace(network, &pred, source, sink)))
}

fn trace<T: Scalar>(network: &Network<T>, pred: &[Option<ArcId>], source: NodeId, sink: NodeId) -> Path {
    let mut arcs = Vec::new();
    let mut at = sink;
    while at != source {
        let id = pred[at.0].expect("reached node has a predecessor");
        arcs.push(id);
        at = network.arcs()[id.0].tail;
    }
    arcs.reverse();
    Path::new(arcs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Arc, Terminal};
    use crate::Rational;

    fn fin(n: i64) -> Ext<Rational> {
        Ext::Finite(Rational::from_int(n))
    }

    fn net(arcs: &[(usize, usize, i64)], n: usize) -> Network<Rational> {
        let arcs = arcs
            .iter()
            .map(|&(t, h, c)| Arc::new(t, h, fin(1), fin(c), fin(0)))
            .collect();
        Network::new(n, arcs, vec![Terminal::new(0, n - 1)])
    }

    #[test]
    fn shortest_prefers_cheap_detour() {
        let g = net(&[(0, 2, 10), (0, 1, 1), (1, 2, 1)], 3);
        let w = |a: ArcId| g.arcs()[a.0].cost.clone().into_finite();
        let (len, path) = shortest_path(&g, NodeId(0), NodeId(2), w).unwrap();
        assert_eq!(len, Rational::from_int(2));
        assert_eq!(path, Path::from_indices(&[1, 2]));
    }

    #[test]
    fn filtered_arcs_disconnect() {
        let g = net(&[(0, 1, 1)], 2);
        assert!(shortest_path(&g, NodeId(0), NodeId(1), |_| None).is_none());
    }

    #[test]
    fn widest_examples() {
        let series = net(&[(0, 1, 1), (1, 2, 3)], 3);
        let cost = |g: &Network<Rational>| {
            let g = g.clone();
            move |a: ArcId| g.arcs()[a.0].cost.clone()
        };
        assert_eq!(
            widest_path(&series, NodeId(0), NodeId(2), cost(&series)).unwrap().0,
            fin(1)
        );
        let parallel = net(&[(0, 1, 1), (0, 1, 3)], 2);
        assert_eq!(
            widest_path(&parallel, NodeId(0), NodeId(1), cost(&parallel)).unwrap().0,
            fin(3)
        );
        // diamond: branch a costs (2,5), branch b costs (4,3)
        let diamond = net(&[(0, 1, 2), (1, 3, 5), (0, 2, 4), (2, 3, 3)], 4);
        let (w, p) = widest_path(&diamond, NodeId(0), NodeId(3), cost(&diamond)).unwrap();
        assert_eq!(w, fin(3));
        assert_eq!(p, Path::from_indices(&[2, 3]));
    }
}
