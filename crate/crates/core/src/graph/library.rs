use std::collections::{HashSet, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::girth::bipartite_girth;
use super::types::{BipartiteGraph, Graph, GraphFile};
use crate::algebra::Field;
use crate::{Error, Result};

/// Point-line incidence graph of PG(2, q): points on the left, lines on the right.
pub fn projective_plane(q: u64) -> Result<BipartiteGraph> {
    let f = Field::from_order(q)?;
    let q = q as u32;
    // normalized representatives: first nonzero coordinate is 1
    let mut pts: Vec<[u32; 3]> = Vec::new();
    for a in 0..q {
        for b in 0..q {
            pts.push([1, a, b]);
        }
    }
    for b in 0..q {
        pts.push([0, 1, b]);
    }
    pts.push([0, 0, 1]);
    let mut edges = Vec::new();
    for (i, p) in pts.iter().enumerate() {
        for (j, l) in pts.iter().enumerate() {
            let dot = (0..3).fold(0, |acc, t| f.add(acc, f.mul(p[t], l[t])));
            if dot == 0 {
                edges.push((i, j));
            }
        }
    }
    BipartiteGraph::new(pts.len(), pts.len(), edges)
}

/// Incidence graph of the Fano plane.
pub fn heawood() -> BipartiteGraph {
    projective_plane(2).expect("GF(2) exists")
}

/// Cycle of even length `len` with alternate vertices on each side.
pub fn even_cycle(len: usize) -> Result<BipartiteGraph> {
    if len < 4 || len % 2 == 1 {
        return Err(Error::Params(format!("bipartite cycle length must be even and ≥ 4, got {len}")));
    }
    let m = len / 2;
    let edges = (0..m).flat_map(|i| [(i, i), ((i + 1) % m, i)]).collect();
    BipartiteGraph::new(m, m, edges)
}

pub fn complete_bipartite(a: usize, b: usize) -> BipartiteGraph {
    let edges = (0..a).flat_map(|u| (0..b).map(move |v| (u, v))).collect();
    BipartiteGraph::new(a, b, edges).expect("no duplicates")
}

/// Graphs by name: `heawood`, `pg2-Q`, `cycle-L` (bipartite, even L),
/// `kbip-A-B`, `complete-N`, `ring-N`.
pub fn named(name: &str) -> Result<GraphFile> {
    let parts: Vec<&str> = name.split('-').collect();
    let num = |s: &str| s.parse::<usize>().map_err(|_| Error::Params(format!("bad number in graph name {name:?}")));
    match parts.as_slice() {
        ["heawood"] => Ok(GraphFile::Bipartite(heawood())),
        ["pg2", q] => Ok(GraphFile::Bipartite(projective_plane(num(q)? as u64)?)),
        ["cycle", l] => Ok(GraphFile::Bipartite(even_cycle(num(l)?)?)),
        ["kbip", a, b] => Ok(GraphFile::Bipartite(complete_bipartite(num(a)?, num(b)?))),
        ["complete", n] => Ok(GraphFile::General(Graph::complete(num(n)?))),
        ["ring", n] => Ok(GraphFile::General(Graph::cycle(num(n)?)?)),
        _ => Err(Error::Params(format!("unknown graph {name:?}"))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GirthSearch {
    pub degree: usize,
    pub girth_target: usize,
    pub side: usize,
    pub seed: u64,
    /// Number of attempted edge swaps.
    pub budget: usize,
}

impl GirthSearch {
    pub fn new(degree: usize, girth_target: usize, side: usize, seed: u64) -> GirthSearch {
        GirthSearch { degree, girth_target, side, seed, budget: 50_000 }
    }
}

struct SwapState {
    side: usize,
    edges: Vec<(usize, usize)>,
    present: HashSet<(usize, usize)>,
}

impl SwapState {
    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); 2 * self.side];
        for &(u, v) in &self.edges {
            adj[u].push(self.side + v);
            adj[self.side + v].push(u);
        }
        adj
    }

    /// Edges lying on a cycle shorter than `target`.
    fn short_edges(&self, target: usize) -> Vec<usize> {
        let adj = self.adjacency();
        let limit = target.saturating_sub(2);
        let mut dist = vec![usize::MAX; 2 * self.side];
        let mut out = Vec::new();
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            let (a, b) = (u, self.side + v);
            // shortest a-b path avoiding the edge itself
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[a] = 0;
            let mut queue = VecDeque::from([a]);
            let mut found = false;
            'bfs: while let Some(x) = queue.pop_front() {
                if dist[x] >= limit {
                    break;
                }
                for &y in &adj[x] {
                    if x == a && y == b {
                        continue;
                    }
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        if y == b {
                            found = true;
                            break 'bfs;
                        }
                        queue.push_back(y);
                    }
                }
            }
            if found {
                out.push(e);
            }
        }
        out
    }
}

/// Randomized edge-swap search for a `degree`-regular bipartite graph with
/// `side` vertices per side and girth at least `girth_target`. The result
/// is verified by [`bipartite_girth`].
pub fn high_girth_search(params: GirthSearch) -> Result<BipartiteGraph> {
    let GirthSearch { degree, girth_target, side, seed, budget } = params;
    if degree < 2 || degree > side {
        return Err(Error::Params(format!("degree {degree} needs 2 ≤ Δ ≤ side = {side}")));
    }
    if girth_target < 4 || girth_target % 2 == 1 {
        return Err(Error::Params(format!("bipartite girth target must be even and ≥ 4, got {girth_target}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // circulant start: left u joins right u, u+1, ..., u+Δ-1
    let edges: Vec<(usize, usize)> = (0..side).flat_map(|u| (0..degree).map(move |j| (u, (u + j) % side))).collect();
    let present = edges.iter().copied().collect();
    let mut st = SwapState { side, edges, present };
    let mut bad = st.short_edges(girth_target);
    for _ in 0..budget {
        if bad.is_empty() {
            break;
        }
        let e1 = *bad.choose(&mut rng).expect("nonempty");
        let e2 = rng.gen_range(0..st.edges.len());
        let ((u1, v1), (u2, v2)) = (st.edges[e1], st.edges[e2]);
        if u1 == u2 || v1 == v2 || st.present.contains(&(u1, v2)) || st.present.contains(&(u2, v1)) {
            continue;
        }
        let apply = |st: &mut SwapState, a: (usize, usize), b: (usize, usize)| {
            st.present.remove(&st.edges[e1]);
            st.present.remove(&st.edges[e2]);
            st.edges[e1] = a;
            st.edges[e2] = b;
            st.present.insert(a);
            st.present.insert(b);
        };
        apply(&mut st, (u1, v2), (u2, v1));
        let now = st.short_edges(girth_target);
        if now.len() <= bad.len() {
            bad = now;
        } else {
            apply(&mut st, (u1, v1), (u2, v2));
        }
    }
    let mut edges = st.edges;
    edges.sort_unstable();
    let g = BipartiteGraph::new(side, side, edges)?;
    match bipartite_girth(&g) {
        Some(x) if x < girth_target => Err(Error::SearchExhausted(format!("reached girth {x} < {girth_target} within {budget} swaps"))),
        _ => Ok(g),
    }
}
