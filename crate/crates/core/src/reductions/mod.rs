//! Instance translators and gadget constructions for the hardness results.

mod coordinate;
mod dominating;
mod isohull;
mod qbf;
mod sat;
mod triangle;
mod wrap;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::vset::VertexSet;

pub use coordinate::{build_mk_instance, coordinate_reversal_solve, coordinate_to_hitting, hitting_to_coordinate, CoordinateReduction};
pub use dominating::{dominating_to_closure, DominatingClosure};
pub use isohull::{hitting_to_isohull, HittingIsoHull};
pub use qbf::{qsat2_to_hullset, QbfHullSet};
pub use sat::{sat_to_isohull, shared_literal_pairs, SatIsoHull, SatParams};
pub use triangle::{triangle_gadget, triangle_size, Triangle};
pub use wrap::{wrap_three_terminals, Wrapped};

/// A hitting set instance over the ground set `0..universe`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HittingSetInstance {
    pub universe: usize,
    pub sets: Vec<VertexSet>,
    pub bound: Option<usize>,
}

impl HittingSetInstance {
    pub fn new(universe: usize, sets: Vec<VertexSet>) -> Result<Self> {
        for s in &sets {
            if s.universe_size() != universe {
                return Err(Error::UniverseMismatch {
                    left: universe,
                    right: s.universe_size(),
                });
            }
        }
        Ok(HittingSetInstance {
            universe,
            sets,
            bound: None,
        })
    }

    pub fn from_lists(universe: usize, lists: &[&[usize]]) -> Result<Self> {
        let sets = lists
            .iter()
            .map(|l| VertexSet::from_members(universe, l.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(universe, sets)
    }

    pub fn is_hitting_set(&self, k: &VertexSet) -> bool {
        self.sets.iter().all(|s| !s.is_disjoint(k))
    }
}

/// A set of hypercube vertices; bit `e` of a vector is coordinate `e`
/// (set = `+`, clear = `-`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CubeVectorSet {
    pub dimension: usize,
    pub vectors: Vec<VertexSet>,
    pub bound: Option<usize>,
}

impl CubeVectorSet {
    pub fn new(dimension: usize, vectors: Vec<VertexSet>) -> Result<Self> {
        for (i, v) in vectors.iter().enumerate() {
            if v.universe_size() != dimension {
                return Err(Error::UniverseMismatch {
                    left: dimension,
                    right: v.universe_size(),
                });
            }
            if vectors[..i].contains(v) {
                return Err(Error::InvalidInstance(format!("vector {i} is repeated")));
            }
        }
        Ok(CubeVectorSet {
            dimension,
            vectors,
            bound: None,
        })
    }

    /// Whether the chosen vectors take both values on every coordinate.
    pub fn reverses_all(&self, chosen: &VertexSet) -> bool {
        (0..self.dimension).all(|e| {
            let mut plus = false;
            let mut minus = false;
            for i in chosen {
                if self.vectors[i].contains(e) {
                    plus = true;
                } else {
                    minus = true;
                }
            }
            plus && minus
        })
    }
}

/// DIMACS-style literal: `+v` or `-v` for variable `v ≥ 1`.
pub type Literal = i32;

fn check_literals(vars: usize, clauses: &[Vec<Literal>], what: &str) -> Result<()> {
    for (j, c) in clauses.iter().enumerate() {
        for (a, &l) in c.iter().enumerate() {
            if l == 0 || l.unsigned_abs() as usize > vars {
                return Err(Error::InvalidInstance(format!("{what} {}: literal {l} out of range", j + 1)));
            }
            if c[..a].iter().any(|&o| o.abs() == l.abs()) {
                return Err(Error::InvalidInstance(format!(
                    "{what} {} mentions variable {} twice",
                    j + 1,
                    l.abs()
                )));
            }
        }
    }
    Ok(())
}

/// A CNF formula over variables `1..=vars`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CnfFormula {
    pub vars: usize,
    pub clauses: Vec<Vec<Literal>>,
}

impl CnfFormula {
    /// Checks ranges and that no clause mentions a variable twice.
    pub fn new(vars: usize, clauses: Vec<Vec<Literal>>) -> Result<Self> {
        check_literals(vars, &clauses, "clause")?;
        Ok(CnfFormula { vars, clauses })
    }

    /// `assignment[i]` is the value of variable `i + 1`.
    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| c.iter().any(|&l| lit_value(l, assignment)))
    }

    pub fn is_3cnf(&self) -> bool {
        self.clauses.iter().all(|c| c.len() == 3)
    }
}

pub(crate) fn lit_value(l: Literal, assignment: &[bool]) -> bool {
    let v = assignment[l.unsigned_abs() as usize - 1];
    if l > 0 {
        v
    } else {
        !v
    }
}

/// `∃X ∀Y Φ(X, Y)` with `Φ` in DNF. Variables `1..=n_x` are existential,
/// `n_x+1..=n_x+n_y` universal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QbfInstance {
    pub n_x: usize,
    pub n_y: usize,
    pub terms: Vec<Vec<Literal>>,
}

impl QbfInstance {
    pub fn new(n_x: usize, n_y: usize, terms: Vec<Vec<Literal>>) -> Result<Self> {
        check_literals(n_x + n_y, &terms, "term")?;
        Ok(QbfInstance { n_x, n_y, terms })
    }

    pub fn vars(&self) -> usize {
        self.n_x + self.n_y
    }

    /// Value of `Φ` under a full assignment (existential first).
    pub fn eval(&self, assignment: &[bool]) -> bool {
        self.terms.iter().any(|t| t.iter().all(|&l| lit_value(l, assignment)))
    }

    /// The shape assumed by the hull-set reduction: three literals per term
    /// and every variable occurring both positively and negatively.
    pub fn check_reduction_shape(&self) -> Result<()> {
        if let Some(j) = self.terms.iter().position(|t| t.len() != 3) {
            return Err(Error::InvalidInstance(format!("term {} does not have three literals", j + 1)));
        }
        for v in 1..=self.vars() as i32 {
            let pos = self.terms.iter().any(|t| t.contains(&v));
            let neg = self.terms.iter().any(|t| t.contains(&-v));
            if !(pos && neg) {
                return Err(Error::InvalidInstance(format!(
                    "variable {v} must occur both positively and negatively"
                )));
            }
        }
        Ok(())
    }
}

/// Construction parameters recorded next to a gadget graph.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct GadgetParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<usize>,
    #[serde(rename = "n'", skip_serializing_if = "Option::is_none")]
    pub n_prime: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
}

/// Names for the special vertices of a constructed graph.
///
/// `roles` are pairwise distinct vertices. `aliases` are extra names for
/// vertices that were identified during the construction (a triangle corner
/// glued onto a variable vertex, say), so several aliases may share a vertex.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct GadgetLayout {
    pub roles: BTreeMap<String, usize>,
    pub aliases: BTreeMap<String, usize>,
    pub paths: BTreeMap<String, Vec<usize>>,
    pub params: GadgetParams,
}

impl GadgetLayout {
    pub(crate) fn role(&mut self, name: impl Into<String>, v: usize) {
        let name = name.into();
        let prev = self.roles.insert(name.clone(), v);
        debug_assert!(prev.is_none(), "role {name} assigned twice");
    }

    pub(crate) fn alias(&mut self, name: impl Into<String>, v: usize) {
        self.aliases.insert(name.into(), v);
    }

    pub(crate) fn path(&mut self, name: impl Into<String>, p: Vec<usize>) {
        self.paths.insert(name.into(), p);
    }

    /// Vertex of a role or alias.
    pub fn get(&self, name: &str) -> Option<usize> {
        self.roles.get(name).or_else(|| self.aliases.get(name)).copied()
    }

    pub fn vertex(&self, name: &str) -> usize {
        self.get(name).unwrap_or_else(|| panic!("no vertex named {name}"))
    }

    pub fn path_of(&self, name: &str) -> &[usize] {
        self.paths.get(name).map(Vec::as_slice).unwrap_or_else(|| panic!("no path named {name}"))
    }

    /// Checks that roles are pairwise distinct and every name is a vertex.
    pub fn validate(&self, n: usize) -> Result<()> {
        let mut seen: BTreeMap<usize, &str> = BTreeMap::new();
        for (name, &v) in &self.roles {
            if v >= n {
                return Err(Error::InvalidInstance(format!("role {name} = {v} is not a vertex")));
            }
            if let Some(other) = seen.insert(v, name) {
                return Err(Error::InvalidInstance(format!("roles {other} and {name} share vertex {v}")));
            }
        }
        for (name, &v) in &self.aliases {
            if v >= n {
                return Err(Error::InvalidInstance(format!("alias {name} = {v} is not a vertex")));
            }
        }
        for (name, p) in &self.paths {
            if let Some(&v) = p.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidInstance(format!("path {name} visits {v}, not a vertex")));
            }
        }
        Ok(())
    }
}

/// Appends a path of `len` edges from `from`; returns all its vertices,
/// `from` first. With `to` given, the last edge ends there.
pub(crate) fn attach_path(g: &mut crate::graph::Graph, from: usize, len: usize, to: Option<usize>) -> Vec<usize> {
    assert!(len >= 1 || to.is_none());
    let mut path = vec![from];
    let fresh = if to.is_some() { len - 1 } else { len };
    for _ in 0..fresh {
        let v = g.add_vertex();
        g.add_edge(*path.last().unwrap(), v).expect("fresh vertex");
        path.push(v);
    }
    if let Some(t) = to {
        g.add_edge(*path.last().unwrap(), t).expect("valid endpoint");
        path.push(t);
    }
    path
}
