use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::code::{groups_from_hints, disjoint_groups_schedule, minimal_repair_set, recover_symbols, LinearCode};
use crate::constructions::hadamard_repair;
use crate::graph::{local_iterative_repair, zemor_decode, ConstraintCode};
use crate::repair::{ErasedWord, RepairReport, RepairState};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StrategyKind {
    GenericLinear,
    GroupScheduler,
    Peeling,
    Expander,
    Zemor,
    HadamardRecursive,
}

impl StrategyKind {
    pub const ALL: [StrategyKind; 6] = [
        StrategyKind::GenericLinear,
        StrategyKind::GroupScheduler,
        StrategyKind::Peeling,
        StrategyKind::Expander,
        StrategyKind::Zemor,
        StrategyKind::HadamardRecursive,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StrategyKind::GenericLinear => "generic-linear",
            StrategyKind::GroupScheduler => "group-scheduler",
            StrategyKind::Peeling => "peeling",
            StrategyKind::Expander => "expander",
            StrategyKind::Zemor => "zemor",
            StrategyKind::HadamardRecursive => "hadamard-recursive",
        }
    }
}

impl fmt::Display for StrategyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StrategyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<StrategyKind> {
        let short = match s {
            "generic" | "linear" => Some(StrategyKind::GenericLinear),
            "group" | "groups" | "scheduler" => Some(StrategyKind::GroupScheduler),
            "hadamard" => Some(StrategyKind::HadamardRecursive),
            _ => None,
        };
        short
            .or_else(|| StrategyKind::ALL.into_iter().find(|k| k.name() == s))
            .ok_or_else(|| Error::Strategy(format!("unknown strategy {s:?}")))
    }
}

/// Strategy plus its tuning knobs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrategyParams {
    /// generic-linear: largest repair set searched exhaustively.
    pub r_max: Option<usize>,
    /// zemor: round limit.
    pub max_rounds: Option<usize>,
}

pub trait Repairer: Send + Sync {
    fn kind(&self) -> StrategyKind;
    fn code(&self) -> &LinearCode;
    fn repair(&self, word: &ErasedWord) -> Result<RepairReport>;
}

struct GenericLinear {
    code: LinearCode,
    r_max: usize,
}

impl Repairer for GenericLinear {
    fn kind(&self) -> StrategyKind {
        StrategyKind::GenericLinear
    }

    fn code(&self) -> &LinearCode {
        &self.code
    }

    fn repair(&self, word: &ErasedWord) -> Result<RepairReport> {
        let erased = word.erased();
        let mut st = RepairState::new(word);
        if erased.is_empty() {
            return Ok(st.finish());
        }
        let search = minimal_repair_set(&self.code, &erased, self.r_max)?;
        let Some(gamma) = search.set() else {
            return Ok(st.fail("erasures are not recoverable"));
        };
        let gamma = gamma.to_vec();
        let values: Vec<u32> = gamma.iter().map(|&i| st.read(i).expect("repair set avoids erasures")).collect();
        let rebuilt = recover_symbols(&self.code, &erased, &gamma, &values)?;
        for (&e, &v) in erased.iter().zip(&rebuilt) {
            st.set(e, v);
        }
        st.step("generic", erased, gamma);
        Ok(st.finish())
    }
}

struct GroupScheduler {
    code: LinearCode,
    groups: Vec<Vec<Vec<usize>>>,
}

impl Repairer for GroupScheduler {
    fn kind(&self) -> StrategyKind {
        StrategyKind::GroupScheduler
    }

    fn code(&self) -> &LinearCode {
        &self.code
    }

    fn repair(&self, word: &ErasedWord) -> Result<RepairReport> {
        disjoint_groups_schedule(&self.code, &self.groups, word)
    }
}

struct Local {
    kind: StrategyKind,
    cc: ConstraintCode,
}

impl Repairer for Local {
    fn kind(&self) -> StrategyKind {
        self.kind
    }

    fn code(&self) -> &LinearCode {
        &self.cc.code
    }

    fn repair(&self, word: &ErasedWord) -> Result<RepairReport> {
        local_iterative_repair(&self.cc, word, self.kind.name())
    }
}

struct Zemor {
    cc: ConstraintCode,
    max_rounds: Option<usize>,
}

impl Repairer for Zemor {
    fn kind(&self) -> StrategyKind {
        StrategyKind::Zemor
    }

    fn code(&self) -> &LinearCode {
        &self.cc.code
    }

    fn repair(&self, word: &ErasedWord) -> Result<RepairReport> {
        Ok(zemor_decode(&self.cc, word, self.max_rounds)?.report)
    }
}

struct Hadamard {
    code: LinearCode,
}

impl Repairer for Hadamard {
    fn kind(&self) -> StrategyKind {
        StrategyKind::HadamardRecursive
    }

    fn code(&self) -> &LinearCode {
        &self.code
    }

    fn repair(&self, word: &ErasedWord) -> Result<RepairReport> {
        hadamard_repair(&self.code, word)
    }
}

fn mismatch(kind: StrategyKind, code: &LinearCode) -> Error {
    Error::Strategy(format!("{kind} does not apply to {} codes", code.meta.kind))
}

/// Prepares a repairer, rejecting strategies that do not fit the code.
///
/// `expander` runs the local decoder on any code with local constraints:
/// graph codes use their vertex constraints, others their hint groups.
pub fn repairer(code: &LinearCode, kind: StrategyKind, params: &StrategyParams) -> Result<Box<dyn Repairer>> {
    let code = code.clone();
    Ok(match kind {
        StrategyKind::GenericLinear => {
            let r_max = params.r_max.unwrap_or(code.n());
            Box::new(GenericLinear { code, r_max })
        }
        StrategyKind::GroupScheduler => {
            if code.hints.groups.is_empty() {
                return Err(mismatch(kind, &code));
            }
            let groups = groups_from_hints(&code);
            Box::new(GroupScheduler { code, groups })
        }
        StrategyKind::Peeling => {
            if code.meta.kind != "edge" {
                return Err(mismatch(kind, &code));
            }
            Box::new(Local { kind, cc: ConstraintCode::for_code(&code)? })
        }
        StrategyKind::Expander => {
            if code.meta.kind == "zemor" {
                return Err(mismatch(kind, &code));
            }
            Box::new(Local { kind, cc: ConstraintCode::for_code(&code).map_err(|_| mismatch(kind, &code))? })
        }
        StrategyKind::Zemor => {
            if code.meta.kind != "zemor" {
                return Err(mismatch(kind, &code));
            }
            Box::new(Zemor { cc: ConstraintCode::for_code(&code)?, max_rounds: params.max_rounds })
        }
        StrategyKind::HadamardRecursive => {
            if code.meta.kind != "hadamard" {
                return Err(mismatch(kind, &code));
            }
            Box::new(Hadamard { code })
        }
    })
}
