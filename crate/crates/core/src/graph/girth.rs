use std::collections::VecDeque;

use super::types::{BipartiteGraph, Graph};

/// Exact girth by breadth-first search from every vertex; `None` for forests.
pub fn girth(g: &Graph) -> Option<usize> {
    let n = g.vertex_count();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        adj[u].push((v, e));
        adj[v].push((u, e));
    }
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; n];
    let mut via = vec![usize::MAX; n];
    for s in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            // no shorter cycle can close past this depth
            if best.is_some_and(|b| 2 * dist[u] + 1 >= b) {
                break;
            }
            for &(w, e) in &adj[u] {
                if e == via[u] && u != s {
                    continue;
                }
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    via[w] = e;
                    queue.push_back(w);
                } else {
                    let len = dist[u] + dist[w] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}

pub fn bipartite_girth(g: &BipartiteGraph) -> Option<usize> {
    girth(&g.as_graph())
}
