//! Types shared by every repair algorithm.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A codeword with some positions erased.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErasedWord {
    values: Vec<Option<u32>>,
}

impl ErasedWord {
    pub fn new(codeword: &[u32], erased: &[usize]) -> Result<ErasedWord> {
        let mut values: Vec<Option<u32>> = codeword.iter().map(|&v| Some(v)).collect();
        for &e in erased {
            match values.get_mut(e) {
                None => return Err(Error::IndexOutOfRange { index: e, len: codeword.len() }),
                Some(v) if v.is_none() => return Err(Error::Duplicate(e)),
                Some(v) => *v = None,
            }
        }
        Ok(ErasedWord { values })
    }

    pub fn from_partial(values: Vec<Option<u32>>) -> ErasedWord {
        ErasedWord { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<u32> {
        self.values[i]
    }

    pub fn values(&self) -> &[Option<u32>] {
        &self.values
    }

    pub fn is_erased(&self, i: usize) -> bool {
        self.values[i].is_none()
    }

    pub fn erased(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&i| self.values[i].is_none()).collect()
    }
}

/// One step of a repair plan: which symbols were rebuilt from which reads.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepairStep {
    pub rule: String,
    pub targets: Vec<usize>,
    pub reads: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepairReport {
    pub erased: Vec<usize>,
    pub steps: Vec<RepairStep>,
    /// Distinct originally intact symbols read, ascending.
    pub contacts: Vec<usize>,
    pub contact_count: usize,
    pub success: bool,
    /// Full codeword after repair, present on success.
    pub recovered: Option<Vec<u32>>,
    /// Erasures left when the algorithm stalled.
    pub stopping_set: Option<Vec<usize>>,
    pub failure: Option<String>,
}

/// Mutable state threaded through a repair episode.
#[derive(Clone, Debug)]
pub struct RepairState {
    erased: Vec<usize>,
    values: Vec<Option<u32>>,
    intact: Vec<bool>,
    contacts: BTreeSet<usize>,
    steps: Vec<RepairStep>,
}

impl RepairState {
    pub fn new(word: &ErasedWord) -> RepairState {
        RepairState {
            erased: word.erased(),
            values: word.values().to_vec(),
            intact: word.values().iter().map(|v| v.is_some()).collect(),
            contacts: BTreeSet::new(),
            steps: Vec::new(),
        }
    }

    pub fn known(&self, i: usize) -> bool {
        self.values[i].is_some()
    }

    pub fn value(&self, i: usize) -> Option<u32> {
        self.values[i]
    }

    pub fn is_intact(&self, i: usize) -> bool {
        self.intact[i]
    }

    pub fn was_contacted(&self, i: usize) -> bool {
        self.contacts.contains(&i)
    }

    /// Known value of `i`, counting a contact when `i` is an original intact symbol.
    pub fn read(&mut self, i: usize) -> Option<u32> {
        let v = self.values[i]?;
        if self.intact[i] {
            self.contacts.insert(i);
        }
        Some(v)
    }

    pub fn set(&mut self, i: usize, v: u32) {
        self.values[i] = Some(v);
    }

    pub fn remaining(&self) -> Vec<usize> {
        self.erased.iter().copied().filter(|&e| self.values[e].is_none()).collect()
    }

    pub fn values(&self) -> &[Option<u32>] {
        &self.values
    }

    pub fn step(&mut self, rule: impl Into<String>, targets: Vec<usize>, reads: Vec<usize>) {
        self.steps.push(RepairStep { rule: rule.into(), targets, reads });
    }

    pub fn contact_count(&self) -> usize {
        self.contacts.len()
    }

    pub fn finish(self) -> RepairReport {
        let remaining = self.remaining();
        let contacts: Vec<usize> = self.contacts.into_iter().collect();
        let success = remaining.is_empty();
        RepairReport {
            erased: self.erased,
            steps: self.steps,
            contact_count: contacts.len(),
            contacts,
            success,
            recovered: if success { Some(self.values.iter().map(|v| v.unwrap()).collect()) } else { None },
            stopping_set: if success { None } else { Some(remaining) },
            failure: None,
        }
    }

    pub fn fail(self, reason: impl Into<String>) -> RepairReport {
        let mut r = self.finish();
        if r.success {
            return r;
        }
        r.failure = Some(reason.into());
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contacts_are_distinct_intact_reads() {
        let w = ErasedWord::new(&[1, 0, 1, 1], &[1]).unwrap();
        let mut st = RepairState::new(&w);
        assert_eq!(st.read(1), None);
        st.read(0);
        st.read(0);
        st.read(2);
        st.set(1, 0);
        st.read(1);
        let r = st.finish();
        assert!(r.success);
        assert_eq!(r.contacts, vec![0, 2]);
        assert_eq!(r.recovered, Some(vec![1, 0, 1, 1]));
    }

    #[test]
    fn erased_word_validation() {
        assert!(ErasedWord::new(&[0, 0], &[2]).is_err());
        assert_eq!(ErasedWord::new(&[0, 0], &[1, 1]), Err(Error::Duplicate(1)));
    }
}
