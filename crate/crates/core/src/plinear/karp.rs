//! Karp's minimum mean-weight cycle, run separately on every strongly
//! connected component, with exact rational output.
//!
//! For a component with `n` vertices and a source `s`, let `D_k(v)` be the
//! minimum weight of a walk of exactly `k` edges from `s` to `v`. The minimum
//! cycle mean is `min_v max_k (D_n(v) - D_k(v)) / (n - k)`.

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::rational::Rational;

/// Minimum mean weight over all directed cycles, or `None` if the graph is
/// acyclic. `adjacency[u]` lists `(v, weight)` for each edge `u -> v`.
pub fn min_mean_cycle(adjacency: &[Vec<(usize, i64)>]) -> Option<Rational> {
    let mut graph = DiGraph::<(), i64>::new();
    let nodes: Vec<_> = (0..adjacency.len()).map(|_| graph.add_node(())).collect();
    for (u, edges) in adjacency.iter().enumerate() {
        for &(v, w) in edges {
            graph.add_edge(nodes[u], nodes[v], w);
        }
    }
    let mut component_of = vec![usize::MAX; adjacency.len()];
    let sccs = tarjan_scc(&graph);
    for (c, scc) in sccs.iter().enumerate() {
        for node in scc {
            component_of[node.index()] = c;
        }
    }
    sccs.iter()
        .enumerate()
        .filter_map(|(c, scc)| {
            let members: Vec<usize> = scc.iter().map(|n| n.index()).collect();
            karp_component(adjacency, &members, &component_of, c)
        })
        .min()
}

fn karp_component(
    adjacency: &[Vec<(usize, i64)>],
    members: &[usize],
    component_of: &[usize],
    component: usize,
) -> Option<Rational> {
    let n = members.len();
    let has_internal_edge = members
        .iter()
        .any(|&u| adjacency[u].iter().any(|&(v, _)| component_of[v] == component));
    if !has_internal_edge {
        return None;
    }
    let mut local = vec![usize::MAX; adjacency.len()];
    for (i, &u) in members.iter().enumerate() {
        local[u] = i;
    }
    // dist[k][v], None = unreachable in exactly k steps
    let mut dist: Vec<Vec<Option<i64>>> = vec![vec![None; n]; n + 1];
    dist[0][0] = Some(0);
    for k in 1..=n {
        for (i, &u) in members.iter().enumerate() {
            let Some(du) = dist[k - 1][i] else { continue };
            for &(v, w) in &adjacency[u] {
                if component_of[v] != component {
                    continue;
                }
                let j = local[v];
                let cand = du + w;
                if dist[k][j].is_none_or(|d| cand < d) {
                    dist[k][j] = Some(cand);
                }
            }
        }
    }
    (0..n)
        .filter_map(|v| {
            let dn = dist[n][v]?;
            (0..n)
                .filter_map(|k| dist[k][v].map(|dk| Rational::new(dn - dk, (n - k) as i64)))
                .max()
        })
        .min()
}
