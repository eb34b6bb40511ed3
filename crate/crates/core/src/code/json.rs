use serde::{Deserialize, Serialize};

use super::{CodeMeta, Hints, LinearCode};
use crate::algebra::{Field, Matrix};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub m: u32,
    /// Lowest degree first, leading 1 included; empty for prime fields.
    #[serde(default)]
    pub modulus: Vec<u32>,
}

/// On-disk form of a [`LinearCode`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CodeFile {
    pub field: FieldSpec,
    pub n: usize,
    pub k: usize,
    pub generator: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parity_check: Option<Vec<Vec<u32>>>,
    pub meta: CodeMeta,
    #[serde(default)]
    pub hints: Hints,
}

impl LinearCode {
    pub fn to_file(&self) -> CodeFile {
        let f = self.field();
        CodeFile {
            field: FieldSpec { p: f.p() as u64, m: f.m(), modulus: f.modulus().to_vec() },
            n: self.n(),
            k: self.k(),
            generator: self.generator().to_rows(),
            parity_check: Some(self.parity_check().to_rows()),
            meta: self.meta.clone(),
            hints: self.hints.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("code serializes")
    }

    /// Rebuilds a code, keeping the stored generator rows verbatim. The
    /// parity check is recomputed; a stored copy must describe the same code.
    pub fn from_file(file: &CodeFile) -> Result<LinearCode> {
        let field = Field::with_modulus(file.field.p, file.field.m, &file.field.modulus)?;
        let g = Matrix::from_rows(&field, &file.generator, file.n)?;
        if g.rows() != file.k || g.rank() != file.k {
            return Err(Error::Format(format!("generator does not have full rank k = {}", file.k)));
        }
        let mut code = LinearCode::from_generator(g, file.meta.clone())?;
        if let Some(h) = &file.parity_check {
            let h = Matrix::from_rows(&field, h, file.n)?;
            let orthogonal =
                code.k() == 0 || h.rows() == 0 || code.generator().mul(&h.transpose()).map(|m| m.is_zero()).unwrap_or(false);
            if !orthogonal || h.rank() != file.n - file.k {
                return Err(Error::Format("stored parity check does not match the generator".into()));
            }
        }
        code = code.with_groups(file.hints.groups.clone())?;
        code.hints.graph = file.hints.graph.clone();
        Ok(code)
    }

    pub fn from_json(text: &str) -> Result<LinearCode> {
        let file: CodeFile = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        LinearCode::from_file(&file)
    }
}
