use serde::{Deserialize, Serialize};

use super::types::{double_cover, BipartiteGraph, Graph, GraphFile};
use crate::algebra::{Field, Matrix};
use crate::code::{min_distance, CodeMeta, LinearCode};
use crate::constructions::mds_code;
use crate::{Error, Parallelism, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// Parity constraint on the symbols at one vertex.
#[derive(Clone, Debug)]
pub struct LocalConstraint {
    pub vertex: usize,
    pub side: Side,
    pub symbols: Vec<usize>,
    /// Parity rows over `symbols`, in that order.
    pub parity: Matrix,
    /// Minimum distance of the local code (kernel of `parity`).
    pub dmin: usize,
}

impl LocalConstraint {
    /// Dimension of the local code.
    pub fn local_k(&self) -> usize {
        self.symbols.len() - self.parity.rank()
    }
}

/// Code together with the local constraints that define or certify it.
#[derive(Clone, Debug)]
pub struct ConstraintCode {
    pub code: LinearCode,
    pub constraints: Vec<LocalConstraint>,
}

fn stack(field: &Field, n: usize, constraints: &[LocalConstraint]) -> Result<Matrix> {
    let rows: usize = constraints.iter().map(|c| c.parity.rows()).sum();
    let mut h = Matrix::zeros(field, rows.max(1), n);
    let mut r = 0;
    for c in constraints {
        for i in 0..c.parity.rows() {
            for (j, &s) in c.symbols.iter().enumerate() {
                h.set(r, s, c.parity.get(i, j));
            }
            r += 1;
        }
    }
    Ok(h)
}

fn finish(field: &Field, n: usize, constraints: Vec<LocalConstraint>, meta: CodeMeta) -> Result<ConstraintCode> {
    let h = stack(field, n, &constraints)?;
    let groups = constraints.iter().map(|c| c.symbols.clone()).collect();
    let code = LinearCode::from_parity_check(h, meta)?.with_groups(groups)?;
    Ok(ConstraintCode { code, constraints })
}

fn mds_parity(field: &Field, len: usize, t: usize) -> Result<Matrix> {
    if t == 0 || t >= len {
        return Err(Error::Params(format!("local redundancy t = {t} must satisfy 1 ≤ t < {len}")));
    }
    Ok(mds_code(field, len, len - t)?.parity_check().clone())
}

/// One symbol per edge; each vertex forces its incident symbols to sum to zero.
pub fn edge_code(g: &BipartiteGraph, field: &Field) -> Result<ConstraintCode> {
    if g.edges().is_empty() {
        return Err(Error::Params("edge code needs at least one edge".into()));
    }
    let sides = [(Side::Left, g.left_edges()), (Side::Right, g.right_edges())];
    let mut constraints = Vec::new();
    for (side, lists) in sides {
        for (vertex, symbols) in lists.into_iter().enumerate().filter(|(_, s)| !s.is_empty()) {
            let parity = Matrix::from_rows(field, &[vec![1; symbols.len()]], symbols.len())?;
            constraints.push(LocalConstraint { vertex, side, symbols, parity, dmin: 2 });
        }
    }
    let meta = CodeMeta::new("edge").with("q", field.q()).with("graph", g.to_text());
    finish(field, g.edges().len(), constraints, meta)
}

/// Symbols on left vertices; each right vertex holds an [Δ, Δ−t, t+1] MDS
/// constraint over its neighbourhood.
pub fn unbalanced_expander_code(g: &BipartiteGraph, field: &Field, t: usize) -> Result<ConstraintCode> {
    let delta = g.right_regular_degree().ok_or_else(|| Error::Params("expander code needs constant right degree".into()))?;
    let parity = mds_parity(field, delta, t)?;
    let constraints = g
        .right_neighbors()
        .into_iter()
        .enumerate()
        .map(|(vertex, symbols)| LocalConstraint { vertex, side: Side::Right, symbols, parity: parity.clone(), dmin: t + 1 })
        .collect();
    let meta = CodeMeta::new("expander").with("q", field.q()).with("t", t).with("graph", g.to_text());
    finish(field, g.left_count(), constraints, meta)
}

/// Code on the edges of the double cover of a Δ-regular graph, every
/// vertex carrying an MDS constraint of distance `local_dmin`.
pub fn zemor_code(g: &Graph, field: &Field, local_dmin: usize) -> Result<ConstraintCode> {
    let delta = g.regular_degree().ok_or_else(|| Error::Params("Zemor code needs a regular graph".into()))?;
    if local_dmin < 2 {
        return Err(Error::Params("local distance must be at least 2".into()));
    }
    let parity = mds_parity(field, delta, local_dmin - 1)?;
    let cover = double_cover(g);
    let mut constraints = Vec::new();
    for (side, lists) in [(Side::Left, cover.left_edges()), (Side::Right, cover.right_edges())] {
        for (vertex, symbols) in lists.into_iter().enumerate() {
            constraints.push(LocalConstraint { vertex, side, symbols, parity: parity.clone(), dmin: local_dmin });
        }
    }
    let meta = CodeMeta::new("zemor").with("q", field.q()).with("local_dmin", local_dmin).with("graph", g.to_text());
    finish(field, cover.edges().len(), constraints, meta)
}

fn same_code(a: &LinearCode, b: &LinearCode) -> bool {
    a.n() == b.n() && a.k() == b.k() && (0..b.k()).all(|i| a.is_codeword(b.generator().row(i)))
}

impl ConstraintCode {
    /// Constraints for a code built by [`edge_code`], [`unbalanced_expander_code`]
    /// or [`zemor_code`] (rebuilt from its metadata and checked against it),
    /// or else one constraint per hint group taken from the code's projection.
    pub fn for_code(code: &LinearCode) -> Result<ConstraintCode> {
        let graph = code.meta.params.get("graph").and_then(|v| v.as_str()).map(GraphFile::parse).transpose()?;
        let rebuilt = match (code.meta.kind.as_str(), graph) {
            ("edge", Some(GraphFile::Bipartite(g))) => Some(edge_code(&g, code.field())?),
            ("expander", Some(GraphFile::Bipartite(g))) => {
                let t = code.meta.param_u64("t").ok_or_else(|| Error::Format("expander code without t".into()))?;
                Some(unbalanced_expander_code(&g, code.field(), t as usize)?)
            }
            ("zemor", Some(GraphFile::General(g))) => {
                let d = code.meta.param_u64("local_dmin").ok_or_else(|| Error::Format("Zemor code without local_dmin".into()))?;
                Some(zemor_code(&g, code.field(), d as usize)?)
            }
            _ => None,
        };
        match rebuilt {
            Some(cc) if same_code(&cc.code, code) => Ok(ConstraintCode { code: code.clone(), constraints: cc.constraints }),
            Some(_) => Err(Error::Format("code does not match its recorded graph".into())),
            None => ConstraintCode::from_groups(code),
        }
    }

    /// One constraint per hint group: the parity checks of the code
    /// projected onto the group.
    pub fn from_groups(code: &LinearCode) -> Result<ConstraintCode> {
        if code.hints.groups.is_empty() {
            return Err(Error::Strategy(format!("{} code has no local groups", code.meta.kind)));
        }
        let mut constraints = Vec::new();
        for (vertex, group) in code.hints.groups.iter().enumerate() {
            let proj = code.generator().select_columns(group);
            let local = LinearCode::from_generator(proj, CodeMeta::new("local"))?;
            let dmin = if local.k() == 0 { group.len() + 1 } else { min_distance(&local, Parallelism::Sequential)? };
            constraints.push(LocalConstraint { vertex, side: Side::Right, symbols: group.clone(), parity: local.parity_check().clone(), dmin });
        }
        Ok(ConstraintCode { code: code.clone(), constraints })
    }

    /// Constraint indices on each side.
    pub fn side(&self, side: Side) -> Vec<usize> {
        (0..self.constraints.len()).filter(|&i| self.constraints[i].side == side).collect()
    }
}
