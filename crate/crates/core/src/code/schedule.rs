use super::{recover_symbols, repair_set_check, LinearCode};
use crate::repair::{ErasedWord, RepairReport, RepairState};
use crate::{Error, Result};

/// Per-symbol repair groups derived from `hints.groups`: for symbol i, every
/// local group L containing i contributes L \ {i} when it repairs i.
pub fn groups_from_hints(code: &LinearCode) -> Vec<Vec<Vec<usize>>> {
    (0..code.n())
        .map(|i| {
            code.hints
                .groups
                .iter()
                .filter(|g| g.contains(&i))
                .map(|g| g.iter().copied().filter(|&j| j != i).collect::<Vec<_>>())
                .filter(|g| repair_set_check(code, &[i], g).unwrap_or(false))
                .collect()
        })
        .collect()
}

fn validate(code: &LinearCode, groups: &[Vec<Vec<usize>>]) -> Result<()> {
    let n = code.n();
    if groups.len() != n {
        return Err(Error::Params(format!("{} group lists for {n} symbols", groups.len())));
    }
    for (i, gs) in groups.iter().enumerate() {
        let mut seen = vec![false; n];
        for g in gs {
            for &j in g {
                if j >= n {
                    return Err(Error::IndexOutOfRange { index: j, len: n });
                }
                if j == i {
                    return Err(Error::Overlap(i));
                }
                if seen[j] {
                    return Err(Error::Params(format!("repair groups of symbol {i} are not disjoint at {j}")));
                }
                seen[j] = true;
            }
        }
    }
    Ok(())
}

/// Repairs erasures one at a time, each time taking the lowest-index erased
/// symbol that still has a repair group with no missing symbol.
pub fn disjoint_groups_schedule(code: &LinearCode, groups: &[Vec<Vec<usize>>], word: &ErasedWord) -> Result<RepairReport> {
    validate(code, groups)?;
    if word.len() != code.n() {
        return Err(Error::Dimension("word length differs from code length".into()));
    }
    let mut st = RepairState::new(word);
    loop {
        let remaining = st.remaining();
        if remaining.is_empty() {
            break;
        }
        let pick = remaining
            .iter()
            .find_map(|&s| groups[s].iter().find(|g| g.iter().all(|&j| st.known(j))).map(|g| (s, g.clone())));
        let Some((s, g)) = pick else {
            return Err(Error::NoIntactGroup);
        };
        let vals: Vec<u32> = g.iter().map(|&j| st.read(j).expect("group is known")).collect();
        let v = recover_symbols(code, &[s], &g, &vals).map_err(|_| Error::InvalidRepairSet(vec![s]))?;
        st.set(s, v[0]);
        st.step("group", vec![s], g);
    }
    Ok(st.finish())
}
