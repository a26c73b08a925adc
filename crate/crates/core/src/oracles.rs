//! Brute-force reference solvers.
//!
//! Each oracle enumerates candidates in (size, lex) order over plain bit
//! masks and shares no code with the solvers it is used to check.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Digraph;
use crate::reductions::{CnfFormula, HittingSetInstance, QbfInstance};
use crate::vset::{check_universe, VertexSet};

pub use crate::hulls::iso_hull_enumerate;
pub use crate::mingen::brute_force_min_gen as min_generator_exhaustive;

/// Size cap for the enumeration oracles.
pub const ORACLE_LIMIT: usize = 20;

/// First subset of `0..n`, as a mask, in (size, lex) order that `accept`
/// takes.
fn first_in_canonical_order(n: usize, mut accept: impl FnMut(u32) -> bool) -> Option<u32> {
    for size in 0..=n {
        // combinations as increasing index vectors, advanced in lex order
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let mask = idx.iter().fold(0u32, |m, &i| m | 1 << i);
            if accept(mask) {
                return Some(mask);
            }
            let mut pos = size;
            while pos > 0 && idx[pos - 1] == n - size + pos - 1 {
                pos -= 1;
            }
            if pos == 0 {
                break;
            }
            idx[pos - 1] += 1;
            for t in pos..size {
                idx[t] = idx[t - 1] + 1;
            }
        }
    }
    None
}

/// Minimum dominating set: every vertex outside `X` has an in-neighbour in `X`.
pub fn dominating_set_exact(d: &Digraph) -> Result<(usize, VertexSet)> {
    let n = d.n();
    check_universe(n, ORACLE_LIMIT)?;
    let mut dominators: Vec<u32> = (0..n).map(|v| 1 << v).collect();
    for (u, v) in d.arcs() {
        dominators[v] |= 1 << u;
    }
    let mask = first_in_canonical_order(n, |m| dominators.iter().all(|&ds| ds & m != 0)).expect("V dominates");
    Ok((mask.count_ones() as usize, VertexSet::from_mask(n, u64::from(mask))))
}

/// Minimum hitting set; [`Error::Infeasible`] if some set is empty.
pub fn hitting_set_exact(h: &HittingSetInstance) -> Result<(usize, VertexSet)> {
    check_universe(h.universe, ORACLE_LIMIT)?;
    let masks: Vec<u32> = h.sets.iter().map(|s| s.to_mask() as u32).collect();
    if let Some(j) = masks.iter().position(|&m| m == 0) {
        return Err(Error::Infeasible(format!("set {} is empty", j + 1)));
    }
    let mask = first_in_canonical_order(h.universe, |k| masks.iter().all(|&s| s & k != 0)).expect("U hits every nonempty set");
    Ok((mask.count_ones() as usize, VertexSet::from_mask(h.universe, u64::from(mask))))
}

fn assignment(bits: u32, vars: usize) -> Vec<bool> {
    (0..vars).map(|i| bits >> i & 1 == 1).collect()
}

fn literal_true(l: i32, bits: u32) -> bool {
    let on = bits >> (l.unsigned_abs() - 1) & 1 == 1;
    on == (l > 0)
}

/// Satisfying assignment found by exhaustive search (variable 1 is the
/// lowest bit of the counter), or `None`.
pub fn sat_solve(f: &CnfFormula) -> Result<Option<Vec<bool>>> {
    check_universe(f.vars, ORACLE_LIMIT)?;
    for bits in 0..(1u32 << f.vars) {
        if f.clauses.iter().all(|c| c.iter().any(|&l| literal_true(l, bits))) {
            return Ok(Some(assignment(bits, f.vars)));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "value", rename_all = "snake_case")]
pub enum QbfVerdict {
    /// An existential assignment making `Φ` true for every universal one.
    True { x: Vec<bool> },
    /// For every existential assignment (in counter order), a falsifying
    /// universal assignment.
    False { counter: Vec<Vec<bool>> },
}

/// Exhaustive evaluation of `∃X ∀Y Φ` for a DNF `Φ`.
pub fn qsat2_eval(q: &QbfInstance) -> Result<QbfVerdict> {
    check_universe(q.n_x + q.n_y, 16)?;
    let eval = |bits: u32| q.terms.iter().any(|t| t.iter().all(|&l| literal_true(l, bits)));
    let mut counter = Vec::with_capacity(1 << q.n_x);
    for xb in 0..(1u32 << q.n_x) {
        match (0..(1u32 << q.n_y)).find(|&yb| !eval(xb | yb << q.n_x)) {
            None => return Ok(QbfVerdict::True { x: assignment(xb, q.n_x) }),
            Some(yb) => counter.push(assignment(yb, q.n_y)),
        }
    }
    Ok(QbfVerdict::False { counter })
}
