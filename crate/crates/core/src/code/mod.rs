//! Linear codes, cooperative-locality oracles, bounds, the subcode witness and
//! the disjoint-group scheduler.

mod bounds;
mod json;
mod locality;
mod schedule;
mod witness;

pub use bounds::{alphabet_bound_k, dmin_bound, BoundReport, Rational};
pub use json::{CodeFile, FieldSpec};
pub use locality::{
    codewords, is_recoverable, locality_oracle, min_distance, min_weight_codeword, minimal_repair_set,
    recover_symbols, repair_set_check, LocalityCertificate, LocalityOptions, RepairSearch, DISTANCE_CAP,
};
pub use schedule::{disjoint_groups_schedule, groups_from_hints};
pub use witness::{subcode_witness, WitnessRound, WitnessTrace};

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::algebra::{Field, Matrix, VectorBasis};
use crate::{Error, Result};

/// Construction descriptor stored alongside a code.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CodeMeta {
    pub kind: String,
    #[serde(default)]
    pub params: Map<String, Value>,
}

impl CodeMeta {
    pub fn new(kind: &str) -> CodeMeta {
        CodeMeta { kind: kind.to_string(), params: Map::new() }
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> CodeMeta {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn param_u64(&self, key: &str) -> Option<u64> {
        self.params.get(key).and_then(Value::as_u64)
    }
}

/// Optional locality hints: local groups and a graph file reference.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hints {
    #[serde(default)]
    pub groups: Vec<Vec<usize>>,
    #[serde(default)]
    pub graph: Option<String>,
}

#[derive(Clone, Debug)]
pub struct LinearCode {
    field: Field,
    n: usize,
    k: usize,
    generator: Matrix,
    parity_check: Matrix,
    pub meta: CodeMeta,
    pub hints: Hints,
}

fn independent_rows(m: &Matrix) -> Matrix {
    let mut basis = VectorBasis::new(m.field(), m.cols());
    let keep: Vec<usize> = (0..m.rows()).filter(|&i| basis.insert(m.row(i))).collect();
    m.select_rows(&keep)
}

impl LinearCode {
    /// Code spanned by the rows of `g`. Dependent rows are dropped, keeping
    /// the first independent ones so encoding stays `m·G` on those rows.
    pub fn from_generator(g: Matrix, meta: CodeMeta) -> Result<LinearCode> {
        let generator = independent_rows(&g);
        let n = g.cols();
        if n == 0 {
            return Err(Error::Params("code length must be positive".into()));
        }
        let parity_check = if generator.rows() == 0 { Matrix::identity(g.field(), n) } else { generator.null_space() };
        Ok(LinearCode {
            field: g.field().clone(),
            n,
            k: generator.rows(),
            generator,
            parity_check,
            meta,
            hints: Hints::default(),
        })
    }

    /// Kernel of `h`.
    pub fn from_parity_check(h: Matrix, meta: CodeMeta) -> Result<LinearCode> {
        let n = h.cols();
        if n == 0 {
            return Err(Error::Params("code length must be positive".into()));
        }
        let generator = h.null_space();
        let parity_check = independent_rows(&h);
        Ok(LinearCode { field: h.field().clone(), n, k: generator.rows(), generator, parity_check, meta, hints: Hints::default() })
    }

    pub fn with_groups(mut self, groups: Vec<Vec<usize>>) -> Result<LinearCode> {
        for g in &groups {
            for &i in g {
                if i >= self.n {
                    return Err(Error::IndexOutOfRange { index: i, len: self.n });
                }
            }
        }
        self.hints.groups = groups;
        Ok(self)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    pub fn parity_check(&self) -> &Matrix {
        &self.parity_check
    }

    pub fn rate(&self) -> Rational {
        Rational::new(self.k as i64, self.n as i64)
    }

    pub fn encode(&self, message: &[u32]) -> Result<Vec<u32>> {
        if message.len() != self.k {
            return Err(Error::Dimension(format!("message of length {} for dimension {}", message.len(), self.k)));
        }
        if self.k == 0 {
            return Ok(vec![0; self.n]);
        }
        self.generator.left_mul(message)
    }

    pub fn is_codeword(&self, c: &[u32]) -> bool {
        c.len() == self.n
            && c.iter().all(|&v| self.field.contains(v))
            && self.parity_check.right_mul(c).map(|s| s.iter().all(|&x| x == 0)).unwrap_or(false)
    }

    /// `G·Hᵀ = 0`, `rank G = k` and `rank H = n − k`.
    pub fn check_consistency(&self) -> bool {
        let ght_zero = self.k == 0
            || self.parity_check.rows() == 0
            || self.generator.mul(&self.parity_check.transpose()).map(|m| m.is_zero()).unwrap_or(false);
        ght_zero && self.generator.rank() == self.k && self.parity_check.rank() == self.n - self.k
    }

    fn validate_coords(&self, coords: &[usize]) -> Result<Vec<bool>> {
        let mut mask = vec![false; self.n];
        for &c in coords {
            if c >= self.n {
                return Err(Error::IndexOutOfRange { index: c, len: self.n });
            }
            if mask[c] {
                return Err(Error::Duplicate(c));
            }
            mask[c] = true;
        }
        if coords.len() == self.n {
            return Err(Error::Params("cannot remove every coordinate".into()));
        }
        Ok(mask)
    }

    /// Deletes `coords`.
    pub fn puncture(&self, coords: &[usize]) -> Result<LinearCode> {
        if coords.is_empty() {
            return Ok(self.clone());
        }
        let mask = self.validate_coords(coords)?;
        let keep: Vec<usize> = (0..self.n).filter(|&i| !mask[i]).collect();
        let meta = CodeMeta::new("punctured").with("parent", self.meta.kind.clone()).with("coords", coords.to_vec());
        LinearCode::from_generator(self.generator.select_columns(&keep), meta)
    }

    /// Keeps codewords vanishing on `coords`, then deletes them.
    pub fn shorten(&self, coords: &[usize]) -> Result<LinearCode> {
        let mask = self.validate_coords(coords)?;
        let keep: Vec<usize> = (0..self.n).filter(|&i| !mask[i]).collect();
        let meta = CodeMeta::new("shortened").with("parent", self.meta.kind.clone()).with("coords", coords.to_vec());
        if self.k == 0 {
            return LinearCode::from_generator(Matrix::zeros(&self.field, 0, keep.len()), meta);
        }
        let messages = self.generator.select_columns(coords).transpose().null_space();
        let sub = if messages.rows() == 0 {
            Matrix::zeros(&self.field, 0, self.n)
        } else {
            messages.mul(&self.generator)?
        };
        LinearCode::from_generator(sub.select_columns(&keep), meta)
    }

    /// Generator columns indexed by `idx` as vectors of length k.
    pub fn columns(&self, idx: &[usize]) -> Vec<Vec<u32>> {
        idx.iter().map(|&j| self.generator.column(j)).collect()
    }

    /// Rank of the generator restricted to `idx`.
    pub fn rank_of(&self, idx: &[usize]) -> usize {
        let mut b = VectorBasis::new(&self.field, self.k);
        idx.iter().filter(|&&j| b.insert(&self.generator.column(j))).count()
    }

    /// Short identifier for grouping reports by code.
    pub fn fingerprint(&self) -> String {
        format!("{}[n={},k={},q={}]{}", self.meta.kind, self.n, self.k, self.field.q(), Value::Object(self.meta.params.clone()))
    }

    /// `{"kind", "params", "n", "k"}` summary embedded in reports.
    pub fn summary(&self) -> Value {
        serde_json::json!({
            "kind": self.meta.kind,
            "params": Value::Object(self.meta.params.clone()),
            "n": self.n,
            "k": self.k,
            "q": self.field.q(),
        })
    }
}
