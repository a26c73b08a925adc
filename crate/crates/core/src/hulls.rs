//! Convex hull-number, isometric hulls and isometric hull sets.

use std::collections::HashSet;

use serde::Serialize;

use crate::closure::{enumerate_images_with, ConvexHullOperator, ImageOptions, ImageStrategy};
use crate::error::{Error, Result};
use crate::graph::Geodesics;
use crate::mingen::min_gen;
use crate::reductions::{coordinate_reversal_solve, CubeVectorSet};
use crate::vset::{check_universe, subsets_in_canonical_order, Combinations, VertexSet};

/// Default cap on the number of convex sets enumerated by [`hull_number`].
pub const DEFAULT_CONVEX_SET_BUDGET: usize = 1_000_000;

/// Largest graph handled by the subset-enumeration routines.
pub const ENUMERATION_LIMIT: usize = 15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HullMethod {
    Exact,
    Greedy,
    Enumeration,
}

/// An isometric superset of the input set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HullResult {
    pub vertices: VertexSet,
    pub size: usize,
    /// Set only when no smaller isometric superset exists.
    pub optimal: bool,
    pub method: HullMethod,
    pub nodes_explored: usize,
}

impl HullResult {
    fn new(vertices: VertexSet, optimal: bool, method: HullMethod, nodes_explored: usize) -> Self {
        HullResult {
            size: vertices.len(),
            vertices,
            optimal,
            method,
            nodes_explored,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverBudget {
    /// Search nodes before the exact solver gives up.
    pub max_nodes: usize,
    /// Shortest paths enumerated per violated pair before falling back to
    /// branching on single interval vertices.
    pub max_paths_per_pair: usize,
}

impl Default for SolverBudget {
    fn default() -> Self {
        SolverBudget {
            max_nodes: 200_000,
            max_paths_per_pair: 10_000,
        }
    }
}

/// Outcome of the exact isometric-hull search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ExactOutcome {
    Optimal(HullResult),
    /// Budget ran out; carries the best hull found (an upper bound).
    Unknown(HullResult),
}

impl ExactOutcome {
    pub fn result(&self) -> &HullResult {
        match self {
            ExactOutcome::Optimal(r) | ExactOutcome::Unknown(r) => r,
        }
    }

    pub fn optimal(self) -> Option<HullResult> {
        match self {
            ExactOutcome::Optimal(r) => Some(r),
            ExactOutcome::Unknown(_) => None,
        }
    }
}

fn require_connected(geo: &Geodesics) -> Result<()> {
    if geo.is_connected() {
        Ok(())
    } else {
        Err(Error::Disconnected)
    }
}

/// Minimum hull set of the geodesic convexity, via the closed-set lattice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HullNumber {
    pub size: usize,
    pub witness: VertexSet,
    pub convex_sets: usize,
}

pub fn hull_number(geo: &Geodesics) -> Result<HullNumber> {
    hull_number_with_budget(geo, DEFAULT_CONVEX_SET_BUDGET)
}

pub fn hull_number_with_budget(geo: &Geodesics, budget: usize) -> Result<HullNumber> {
    require_connected(geo)?;
    let conv = ConvexHullOperator::from_geodesics(geo.clone())?;
    let images = enumerate_images_with(
        &conv,
        ImageOptions {
            strategy: ImageStrategy::Lectic,
            budget: Some(budget),
        },
    )?;
    let table = min_gen(&conv, &images)?;
    let witness = table
        .label(&VertexSet::full(geo.n()))
        .expect("the vertex set is convex")
        .clone();
    Ok(HullNumber {
        size: witness.len(),
        witness,
        convex_sets: images.len(),
    })
}

/// Hull-number of a partial cube computed as a coordinate-reversal instance
/// on its hypercube embedding.
pub fn hull_number_via_coordinate_reversal(geo: &Geodesics) -> Result<(usize, VertexSet)> {
    // a lone vertex has no coordinates to reverse but still needs itself
    if geo.n() == 1 {
        return Ok((1, VertexSet::full(1)));
    }
    let emb = geo.hypercube_embedding().ok_or(Error::NotPartialCube)?;
    let vectors = CubeVectorSet::new(emb.dimension, emb.coordinates)?;
    coordinate_reversal_solve(&vectors)
}

/// Violated pair with the largest excess, ties broken lexicographically.
fn worst_violation(geo: &Geodesics, s: &VertexSet) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, u32)> = None;
    for (u, v, excess) in geo.violations(s) {
        if best.is_none_or(|(_, _, e)| excess > e) {
            best = Some((u, v, excess));
        }
    }
    best.map(|(u, v, _)| (u, v))
}

/// Shortest `u`–`v` path using the fewest vertices outside `s`; returns those
/// outside vertices. Ties go to the smallest predecessor id.
fn cheapest_path(geo: &Geodesics, s: &VertexSet, u: usize, v: usize) -> VertexSet {
    let n = geo.n();
    let duv = geo.dist(u, v).expect("connected");
    let mut layers: Vec<Vec<usize>> = vec![Vec::new(); duv as usize + 1];
    for w in 0..n {
        if let (Some(a), Some(b)) = (geo.dist(u, w), geo.dist(w, v)) {
            if a + b == duv {
                layers[a as usize].push(w);
            }
        }
    }
    let mut cost = vec![usize::MAX; n];
    let mut pred = vec![usize::MAX; n];
    cost[u] = usize::from(!s.contains(u));
    for (layer, ws) in layers.iter().enumerate().skip(1) {
        for &w in ws {
            let extra = usize::from(!s.contains(w));
            for &p in geo.graph().neighbors(w) {
                if geo.dist(u, p) == Some(layer as u32 - 1) && cost[p] != usize::MAX && cost[p] + extra < cost[w] {
                    cost[w] = cost[p] + extra;
                    pred[w] = p;
                }
            }
        }
    }
    let mut out = VertexSet::empty(n);
    let mut cur = v;
    loop {
        if !s.contains(cur) {
            out.insert(cur);
        }
        if cur == u {
            break;
        }
        cur = pred[cur];
    }
    out
}

/// Heuristic isometric hull: repair the worst violated pair with its
/// cheapest shortest path until the set is isometric.
pub fn iso_hull_greedy(geo: &Geodesics, s: &VertexSet) -> Result<HullResult> {
    require_connected(geo)?;
    let mut cur = s.clone();
    let mut steps = 0;
    while let Some((u, v)) = worst_violation(geo, &cur) {
        cur.union_with(&cheapest_path(geo, &cur, u, v));
        steps += 1;
    }
    Ok(HullResult::new(cur, false, HullMethod::Greedy, steps))
}

/// Distinct sets of outside vertices over all shortest `u`–`v` paths, with
/// dominated (superset) options removed; `None` when more than `cap` paths
/// would have to be walked.
fn path_options(geo: &Geodesics, s: &VertexSet, u: usize, v: usize, cap: usize) -> Option<Vec<VertexSet>> {
    let n = geo.n();
    let duv = geo.dist(u, v).expect("connected");
    let mut found: HashSet<VertexSet> = HashSet::new();
    let mut walked = 0usize;
    // iterative DFS over the geodesic DAG
    let mut stack: Vec<(usize, VertexSet)> = vec![(u, {
        let mut o = VertexSet::empty(n);
        if !s.contains(u) {
            o.insert(u);
        }
        o
    })];
    while let Some((w, outside)) = stack.pop() {
        if w == v {
            walked += 1;
            if walked > cap {
                return None;
            }
            found.insert(outside);
            continue;
        }
        let dw = geo.dist(u, w).unwrap();
        for &x in geo.graph().neighbors(w) {
            if geo.dist(u, x) == Some(dw + 1) && geo.dist(x, v).map(|d| d + dw + 1) == Some(duv) {
                let mut o = outside.clone();
                if !s.contains(x) {
                    o.insert(x);
                }
                stack.push((x, o));
            }
        }
    }
    let mut options: Vec<VertexSet> = found.into_iter().collect();
    options.sort();
    let mut kept: Vec<VertexSet> = Vec::new();
    for o in options {
        if !kept.iter().any(|k| k.is_subset(&o)) {
            kept.push(o);
        }
    }
    Some(kept)
}

struct Search<'a> {
    geo: &'a Geodesics,
    budget: SolverBudget,
    best: VertexSet,
    nodes: usize,
    exhausted: bool,
    seen: HashSet<VertexSet>,
}

impl Search<'_> {
    fn run(&mut self, state: VertexSet) {
        if self.exhausted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes {
            self.exhausted = true;
            return;
        }
        if state.len() >= self.best.len() {
            return;
        }
        let violations = self.geo.violations(&state);
        if violations.is_empty() {
            self.best = state;
            return;
        }
        // every violated pair needs some shortest path added
        let mut bound = 0;
        for &(a, b, _) in &violations {
            bound = bound.max(cheapest_path(self.geo, &state, a, b).len());
            if state.len() + bound >= self.best.len() {
                return;
            }
        }
        let (u, v) = worst_violation(self.geo, &state).expect("violations nonempty");
        let branches = match path_options(self.geo, &state, u, v, self.budget.max_paths_per_pair) {
            Some(options) => options,
            None => {
                let mut interval = self.geo.interval(u, v).expect("connected");
                interval.difference_with(&state);
                interval.iter().map(|w| VertexSet::singleton(self.geo.n(), w)).collect()
            }
        };
        for extra in branches {
            let child = state.union(&extra);
            if child.len() < self.best.len() && self.seen.insert(child.clone()) {
                self.run(child);
            }
        }
    }
}

/// Minimum isometric superset of `s` by branch and bound over shortest
/// paths of violated pairs.
pub fn iso_hull_exact(geo: &Geodesics, s: &VertexSet, budget: SolverBudget) -> Result<ExactOutcome> {
    require_connected(geo)?;
    let upper = iso_hull_greedy(geo, s)?.vertices;
    let (best, nodes, exhausted) = branch_and_bound(geo, s, upper, budget);
    let optimal = !exhausted;
    let result = HullResult::new(best, optimal, HullMethod::Exact, nodes);
    Ok(if optimal {
        ExactOutcome::Optimal(result)
    } else {
        ExactOutcome::Unknown(result)
    })
}

/// Searches for an isometric superset of `s` strictly smaller than `upper`.
fn branch_and_bound(geo: &Geodesics, s: &VertexSet, upper: VertexSet, budget: SolverBudget) -> (VertexSet, usize, bool) {
    let mut search = Search {
        geo,
        budget,
        best: upper,
        nodes: 0,
        exhausted: false,
        seen: HashSet::new(),
    };
    search.seen.insert(s.clone());
    search.run(s.clone());
    (search.best, search.nodes, search.exhausted)
}

/// Minimum isometric superset of `s` by plain enumeration of supersets in
/// (size, lex) order.
pub fn iso_hull_enumerate(geo: &Geodesics, s: &VertexSet) -> Result<HullResult> {
    require_connected(geo)?;
    let n = geo.n();
    check_universe(n, 20)?;
    let rest: Vec<usize> = (0..n).filter(|&v| !s.contains(v)).collect();
    let mut checked = 0;
    for k in 0..=rest.len() {
        for combo in Combinations::new(rest.len(), k) {
            let mut candidate = s.clone();
            for i in combo {
                candidate.insert(rest[i]);
            }
            checked += 1;
            if geo.is_isometric(&candidate) {
                return Ok(HullResult::new(candidate, true, HullMethod::Enumeration, checked));
            }
        }
    }
    unreachable!("the whole vertex set is isometric")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum HullSetVerdict {
    HullSet,
    /// A proper isometric superset of the set.
    NotHullSet { witness: VertexSet },
    Unknown,
}

/// Is `s` an isometric hull set, i.e. is no proper isometric vertex subset
/// a superset of `s`?
pub fn is_hull_set(geo: &Geodesics, s: &VertexSet, budget: SolverBudget) -> Result<HullSetVerdict> {
    require_connected(geo)?;
    let n = geo.n();
    if s.is_full() {
        return Ok(HullSetVerdict::HullSet);
    }
    if n <= ENUMERATION_LIMIT {
        let rest: Vec<usize> = (0..n).filter(|&v| !s.contains(v)).collect();
        for k in 0..rest.len() {
            for combo in Combinations::new(rest.len(), k) {
                let mut candidate = s.clone();
                for i in combo {
                    candidate.insert(rest[i]);
                }
                if geo.is_isometric(&candidate) {
                    return Ok(HullSetVerdict::NotHullSet { witness: candidate });
                }
            }
        }
        return Ok(HullSetVerdict::HullSet);
    }
    let (best, _, exhausted) = branch_and_bound(geo, s, VertexSet::full(n), budget);
    Ok(if best.len() < n {
        HullSetVerdict::NotHullSet { witness: best }
    } else if exhausted {
        HullSetVerdict::Unknown
    } else {
        HullSetVerdict::HullSet
    })
}

/// Smallest isometric hull set, by tabulating isometry over all subsets.
pub fn iso_hull_number(geo: &Geodesics) -> Result<(usize, VertexSet)> {
    require_connected(geo)?;
    let n = geo.n();
    check_universe(n, ENUMERATION_LIMIT)?;
    let full = (1u32 << n) - 1;
    // has_proper[w]: some proper isometric set contains w
    let mut has_proper: Vec<bool> = (0..=full)
        .map(|m| m != full && geo.is_isometric(&VertexSet::from_mask(n, u64::from(m))))
        .collect();
    for bit in 0..n {
        for m in 0..=full {
            if m & (1 << bit) == 0 && has_proper[(m | 1 << bit) as usize] {
                has_proper[m as usize] = true;
            }
        }
    }
    let witness = subsets_in_canonical_order(n)
        .find(|s| !has_proper[s.to_mask() as usize])
        .expect("the vertex set is a hull set");
    Ok((witness.len(), witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn set(n: usize, m: &[usize]) -> VertexSet {
        VertexSet::from_members(n, m.iter().copied()).unwrap()
    }

    fn geo(g: Graph) -> Geodesics {
        Geodesics::new(g)
    }

    #[test]
    fn hull_number_examples() {
        assert_eq!(hull_number(&geo(Graph::complete(5))).unwrap().size, 5);
        assert_eq!(hull_number(&geo(Graph::path(6))).unwrap().size, 2);
        assert_eq!(hull_number(&geo(Graph::cycle(5))).unwrap().size, 3);
        let disconnected = geo(Graph::from_edges(3, [(0, 1)]).unwrap());
        assert_eq!(hull_number(&disconnected), Err(Error::Disconnected));
        assert!(matches!(
            hull_number_with_budget(&geo(Graph::complete(6)), 10),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn exact_hull_examples() {
        let c4 = geo(Graph::cycle(4));
        let r = iso_hull_exact(&c4, &set(4, &[0, 2]), SolverBudget::default()).unwrap().optimal().unwrap();
        assert_eq!(r.size, 3);
        assert!(r.vertices == set(4, &[0, 1, 2]) || r.vertices == set(4, &[0, 2, 3]));
        let p = geo(Graph::cycle(9));
        let r = iso_hull_exact(&p, &set(9, &[0, 4]), SolverBudget::default()).unwrap().optimal().unwrap();
        assert_eq!(r.size, 5);
        let full = iso_hull_exact(&c4, &VertexSet::full(4), SolverBudget::default()).unwrap();
        assert_eq!(full.result().size, 4);
    }

    #[test]
    fn exact_reports_unknown_when_budget_runs_out() {
        let q3 = geo(Graph::hypercube(3));
        let s = set(8, &[0, 3, 5, 6]);
        let tight = SolverBudget {
            max_nodes: 1,
            max_paths_per_pair: 10,
        };
        match iso_hull_exact(&q3, &s, tight).unwrap() {
            ExactOutcome::Unknown(r) => assert!(q3.is_isometric(&r.vertices) && !r.optimal),
            ExactOutcome::Optimal(_) => panic!("one node cannot prove optimality here"),
        }
    }

    #[test]
    fn path_cap_fallback_stays_exact() {
        let q4 = geo(Graph::hypercube(4));
        let s = set(16, &[0, 15, 6]);
        let normal = iso_hull_exact(&q4, &s, SolverBudget::default()).unwrap().optimal().unwrap();
        let capped = iso_hull_exact(
            &q4,
            &s,
            SolverBudget {
                max_nodes: 1_000_000,
                max_paths_per_pair: 1,
            },
        )
        .unwrap()
        .optimal()
        .unwrap();
        assert_eq!(normal.size, capped.size);
        assert_eq!(normal.size, iso_hull_enumerate(&q4, &s).unwrap().size);
    }

    #[test]
    fn greedy_examples() {
        let c4 = geo(Graph::cycle(4));
        let s = set(4, &[0, 1, 2]);
        assert_eq!(iso_hull_greedy(&c4, &s).unwrap().vertices, s);
        assert_eq!(iso_hull_greedy(&c4, &set(4, &[0, 2])).unwrap().size, 3);
    }

    #[test]
    fn hull_set_examples() {
        let c4 = geo(Graph::cycle(4));
        assert_eq!(is_hull_set(&c4, &VertexSet::full(4), SolverBudget::default()).unwrap(), HullSetVerdict::HullSet);
        assert_eq!(
            is_hull_set(&c4, &set(4, &[0, 2]), SolverBudget::default()).unwrap(),
            HullSetVerdict::NotHullSet {
                witness: set(4, &[0, 1, 2])
            }
        );
        let p3 = geo(Graph::path(3));
        assert_eq!(is_hull_set(&p3, &set(3, &[0, 2]), SolverBudget::default()).unwrap(), HullSetVerdict::HullSet);
    }

    #[test]
    fn hull_set_search_path_for_larger_graphs() {
        // C16 (n > 15): an antipodal pair has a proper isometric superset, a
        // spread-out triple does not.
        let c16 = geo(Graph::cycle(16));
        assert!(matches!(
            is_hull_set(&c16, &set(16, &[0, 8]), SolverBudget::default()).unwrap(),
            HullSetVerdict::NotHullSet { .. }
        ));
        assert_eq!(
            is_hull_set(&c16, &set(16, &[0, 5, 10]), SolverBudget::default()).unwrap(),
            HullSetVerdict::HullSet
        );
    }

    #[test]
    fn iso_hull_number_examples() {
        assert_eq!(iso_hull_number(&geo(Graph::path(5))).unwrap().0, 2);
        // every triple of C4 induces an isometric P3
        assert_eq!(iso_hull_number(&geo(Graph::cycle(4))).unwrap().0, 4);
        assert_eq!(iso_hull_number(&geo(Graph::cycle(6))).unwrap().0, 3);
        assert_eq!(iso_hull_number(&geo(Graph::complete(4))).unwrap().0, 4);
        assert!(iso_hull_number(&geo(Graph::path(16))).is_err());
    }

    #[test]
    fn coordinate_reversal_route_examples() {
        assert_eq!(hull_number_via_coordinate_reversal(&geo(Graph::path(2))).unwrap().0, 2);
        assert_eq!(hull_number_via_coordinate_reversal(&geo(Graph::cycle(4))).unwrap().0, 2);
        assert_eq!(hull_number_via_coordinate_reversal(&geo(Graph::hypercube(3))).unwrap().0, 2);
        assert_eq!(
            hull_number_via_coordinate_reversal(&geo(Graph::complete(3))),
            Err(Error::NotPartialCube)
        );
    }
}
