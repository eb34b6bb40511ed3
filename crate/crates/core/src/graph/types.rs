use std::collections::HashSet;

use crate::{Error, Result};

/// Simple undirected graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

/// Bipartite graph with its own left and right vertex numbering. The edge
/// order fixes the symbol order of edge codes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    left: usize,
    right: usize,
    edges: Vec<(usize, usize)>,
}

/// Contents of a graph file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphFile {
    General(Graph),
    Bipartite(BipartiteGraph),
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Graph> {
        let mut seen = HashSet::new();
        for &(u, v) in &edges {
            if u >= n || v >= n {
                return Err(Error::IndexOutOfRange { index: u.max(v), len: n });
            }
            if u == v {
                return Err(Error::Params(format!("self-loop at {u}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::Params(format!("duplicate edge ({u}, {v})")));
            }
        }
        Ok(Graph { n, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency().iter().map(Vec::len).collect()
    }

    /// Common degree when the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degrees();
        let first = *d.first()?;
        d.iter().all(|&x| x == first).then_some(first)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    pub fn complete(n: usize) -> Graph {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Graph { n, edges }
    }

    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(Error::Params("a cycle needs at least 3 vertices".into()));
        }
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect())
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("graph {}\n", self.n);
        for &(u, v) in &self.edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }
}

impl BipartiteGraph {
    pub fn new(left: usize, right: usize, edges: Vec<(usize, usize)>) -> Result<BipartiteGraph> {
        let mut seen = HashSet::new();
        for &(u, v) in &edges {
            if u >= left {
                return Err(Error::IndexOutOfRange { index: u, len: left });
            }
            if v >= right {
                return Err(Error::IndexOutOfRange { index: v, len: right });
            }
            if !seen.insert((u, v)) {
                return Err(Error::Params(format!("duplicate edge ({u}, {v})")));
            }
        }
        Ok(BipartiteGraph { left, right, edges })
    }

    pub fn left_count(&self) -> usize {
        self.left
    }

    pub fn right_count(&self) -> usize {
        self.right
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Edge indices at each left vertex, in edge order.
    pub fn left_edges(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.left];
        for (e, &(u, _)) in self.edges.iter().enumerate() {
            out[u].push(e);
        }
        out
    }

    /// Edge indices at each right vertex, in edge order.
    pub fn right_edges(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.right];
        for (e, &(_, v)) in self.edges.iter().enumerate() {
            out[v].push(e);
        }
        out
    }

    pub fn left_neighbors(&self) -> Vec<Vec<usize>> {
        self.left_edges().iter().map(|es| es.iter().map(|&e| self.edges[e].1).collect()).collect()
    }

    pub fn right_neighbors(&self) -> Vec<Vec<usize>> {
        self.right_edges().iter().map(|es| es.iter().map(|&e| self.edges[e].0).collect()).collect()
    }

    pub fn left_regular_degree(&self) -> Option<usize> {
        let d: Vec<usize> = self.left_edges().iter().map(Vec::len).collect();
        let first = *d.first()?;
        d.iter().all(|&x| x == first).then_some(first)
    }

    pub fn right_regular_degree(&self) -> Option<usize> {
        let d: Vec<usize> = self.right_edges().iter().map(Vec::len).collect();
        let first = *d.first()?;
        d.iter().all(|&x| x == first).then_some(first)
    }

    /// Common degree when both sides are regular with the same degree.
    pub fn regular_degree(&self) -> Option<usize> {
        match (self.left_regular_degree(), self.right_regular_degree()) {
            (Some(a), Some(b)) if a == b => Some(a),
            _ => None,
        }
    }

    pub fn max_degree(&self) -> usize {
        self.left_edges().iter().chain(self.right_edges().iter()).map(Vec::len).max().unwrap_or(0)
    }

    /// Same graph on `left + right` vertices, right vertex v becoming `left + v`.
    pub fn as_graph(&self) -> Graph {
        Graph { n: self.left + self.right, edges: self.edges.iter().map(|&(u, v)| (u, self.left + v)).collect() }
    }

    pub fn is_connected(&self) -> bool {
        self.as_graph().is_connected()
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("bipartite {} {}\n", self.left, self.right);
        for &(u, v) in &self.edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }
}

/// Bipartite double cover: edge e = (u, v) becomes edges 2e = (u_l, v_r)
/// and 2e + 1 = (v_l, u_r).
pub fn double_cover(g: &Graph) -> BipartiteGraph {
    let edges = g.edges().iter().flat_map(|&(u, v)| [(u, v), (v, u)]).collect();
    BipartiteGraph { left: g.vertex_count(), right: g.vertex_count(), edges }
}

impl GraphFile {
    pub fn parse(text: &str) -> Result<GraphFile> {
        let mut lines = text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Format("empty graph file".into()))?;
        let h: Vec<&str> = header.split_whitespace().collect();
        let num = |s: &str| s.parse::<usize>().map_err(|_| Error::Format(format!("not a number: {s:?}")));
        let mut edges = Vec::new();
        for l in lines {
            let t: Vec<&str> = l.split_whitespace().collect();
            if t.len() != 2 {
                return Err(Error::Format(format!("expected \"u v\", got {l:?}")));
            }
            edges.push((num(t[0])?, num(t[1])?));
        }
        match h.as_slice() {
            ["graph", n] => Ok(GraphFile::General(Graph::new(num(n)?, edges)?)),
            ["bipartite", l, r] => Ok(GraphFile::Bipartite(BipartiteGraph::new(num(l)?, num(r)?, edges)?)),
            _ => Err(Error::Format(format!("bad graph header {header:?}"))),
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            GraphFile::General(g) => g.to_text(),
            GraphFile::Bipartite(b) => b.to_text(),
        }
    }
}
