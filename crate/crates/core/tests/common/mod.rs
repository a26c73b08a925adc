//! Instance generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet};
use std::time::{Duration, Instant};

use hullkit::closure::{closure_from_family, ClosedFamily, FamilyClosure, RepresentativeOperator};
use hullkit::reductions::{CnfFormula, HittingSetInstance};
use hullkit::{Graph, VertexSet};

/// Connected graphs on 1..=7 vertices up to isomorphism (OEIS A001349).
pub const CONNECTED_COUNTS: [usize; 7] = [1, 1, 2, 6, 21, 112, 853];

/// Trees on 1..=8 vertices up to isomorphism (OEIS A000055).
pub const TREE_COUNTS: [usize; 8] = [1, 1, 1, 2, 3, 6, 11, 23];

/// Moore families on 0..=4 elements (OEIS A102896).
pub const MOORE_COUNTS: [usize; 5] = [1, 2, 7, 61, 2480];

pub fn set(n: usize, members: &[usize]) -> VertexSet {
    VertexSet::from_members(n, members.iter().copied()).unwrap()
}

fn pair_index(n: usize, u: usize, v: usize) -> usize {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    a * n - a * (a + 1) / 2 + (b - a - 1)
}

fn edge_mask(n: usize, adj: &[Vec<usize>], perm: &[usize]) -> u32 {
    let mut m = 0u32;
    for u in 0..n {
        for &v in &adj[u] {
            if u < v {
                m |= 1 << pair_index(n, perm[u], perm[v]);
            }
        }
    }
    m
}

/// Canonical edge mask of a graph on at most 8 vertices.
///
/// Vertices are first split by iterated colour refinement, which is
/// isomorphism invariant, and the minimum mask is taken over relabelings that
/// keep the refined colour order.
pub fn canonical_form(g: &Graph) -> (usize, u32) {
    let n = g.n();
    assert!(n <= 8);
    let adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).to_vec()).collect();
    let mut colour: Vec<usize> = vec![0; n];
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = adj[v].iter().map(|&u| colour[u]).collect();
                nb.sort_unstable();
                (colour[v], nb)
            })
            .collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = sigs.iter().map(|s| distinct.binary_search(s).unwrap()).collect();
        let stable = distinct.len() == colour.iter().collect::<HashSet<_>>().len();
        colour = next;
        if stable {
            break;
        }
    }
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for c in 0..n {
        let cell: Vec<usize> = (0..n).filter(|&v| colour[v] == c).collect();
        if !cell.is_empty() {
            cells.push(cell);
        }
    }
    let options: Vec<Vec<Vec<usize>>> = cells.iter().map(|c| permutations(c)).collect();
    let mut best = u32::MAX;
    let mut perm = vec![0; n];
    let mut choice = vec![0; cells.len()];
    // odometer over one permutation per cell
    loop {
        let mut pos = 0;
        for (ci, opts) in options.iter().enumerate() {
            for &v in &opts[choice[ci]] {
                perm[v] = pos;
                pos += 1;
            }
        }
        best = best.min(edge_mask(n, &adj, &perm));
        let mut ci = 0;
        while ci < cells.len() {
            choice[ci] += 1;
            if choice[ci] < options[ci].len() {
                break;
            }
            choice[ci] = 0;
            ci += 1;
        }
        if ci == cells.len() {
            break;
        }
    }
    (n, if n == 0 { 0 } else { best })
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let first = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, first);
            out.push(p);
        }
    }
    out
}

fn extend_by_vertex(reps: &[Graph], leaves_only: bool) -> Vec<Graph> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for g in reps {
        let n = g.n();
        let masks: Vec<u32> = if leaves_only {
            (0..n).map(|v| 1 << v).collect()
        } else {
            (1..1u32 << n).collect()
        };
        for mask in masks {
            let mut h = g.clone();
            let v = h.add_vertex();
            for u in (0..n).filter(|&u| mask >> u & 1 == 1) {
                h.add_edge(u, v).unwrap();
            }
            if seen.insert(canonical_form(&h)) {
                out.push(h);
            }
        }
    }
    out
}

/// Connected graphs by order: entry `i` holds the graphs on `i + 1`
/// vertices. Every connected graph has a vertex whose removal keeps it
/// connected, so growing the smaller representatives by one vertex reaches
/// every class.
pub fn connected_graphs(max_n: usize) -> Vec<Vec<Graph>> {
    let mut out = vec![vec![Graph::new(1)]];
    while out.len() < max_n {
        let next = extend_by_vertex(out.last().unwrap(), false);
        out.push(next);
    }
    out
}

/// Trees by order, grown leaf by leaf.
pub fn trees(max_n: usize) -> Vec<Vec<Graph>> {
    let mut out = vec![vec![Graph::new(1)]];
    while out.len() < max_n {
        let next = extend_by_vertex(out.last().unwrap(), true);
        out.push(next);
    }
    out
}

/// Every intersection-closed family on `n ≤ 4` elements containing the
/// universe, as a bitmask over subset masks.
pub fn moore_families(n: usize) -> Vec<u32> {
    assert!(n <= 4);
    let subsets = 1usize << n;
    let full = subsets - 1;
    let families = 1u64 << subsets;
    (0..families)
        .map(|f| f as u32)
        .filter(|&f| f >> full & 1 == 1)
        .filter(|&f| {
            let members: Vec<usize> = (0..subsets).filter(|&s| f >> s & 1 == 1).collect();
            members.iter().all(|&a| members.iter().all(|&b| f >> (a & b) & 1 == 1))
        })
        .collect()
}

/// Closure table of a family given as a bitmask over subset masks.
pub fn closure_table(n: usize, family: u32) -> Vec<u32> {
    let subsets = 1u32 << n;
    (0..subsets)
        .map(|x| {
            (0..subsets)
                .filter(|&s| family >> s & 1 == 1 && x & !s == 0)
                .fold(subsets - 1, |acc, s| acc & s)
        })
        .collect()
}

pub fn family_sets(n: usize, family: u32) -> Vec<VertexSet> {
    (0..1u64 << n).filter(|&s| family >> s & 1 == 1).map(|s| VertexSet::from_mask(n, s)).collect()
}

/// A representative pseudo-closure that needs three sweeps of the label loop.
///
/// The closure lives on `{0..5}` with `Q = {3,4,5}`; its closed sets are
/// `∅`, `Q`, `{x} ∪ Q`, `{x,y} ∪ Q` for `x, y ∈ {0,1,2}`, and the universe.
/// Pair sets are represented by `{x,y,3}` and the universe by `{0,1,2,3}`,
/// so the pair images sort before the singleton images that improve them.
pub fn three_pass_operator() -> RepresentativeOperator<FamilyClosure> {
    let n = 6;
    let mut sets = vec![VertexSet::empty(n), set(n, &[3, 4, 5]), VertexSet::full(n)];
    let mut pick = HashMap::new();
    for x in 0..3 {
        sets.push(set(n, &[x, 3, 4, 5]));
        for y in x + 1..3 {
            sets.push(set(n, &[x, y, 3, 4, 5]));
            pick.insert(set(n, &[x, y, 3, 4, 5]), set(n, &[x, y, 3]));
        }
    }
    pick.insert(VertexSet::full(n), set(n, &[0, 1, 2, 3]));
    let cl = closure_from_family(ClosedFamily::new(n, sets).unwrap());
    RepresentativeOperator::new(cl, pick).unwrap()
}

/// Every hitting-set instance on `universe` elements with `m` nonempty sets,
/// as multisets (sets listed in nondecreasing mask order).
pub fn hitting_instances(universe: usize, m: usize) -> Vec<HittingSetInstance> {
    let masks: Vec<u64> = (1..1u64 << universe).collect();
    let mut out = Vec::new();
    let mut stack = Vec::new();
    fn rec(masks: &[u64], start: usize, left: usize, universe: usize, stack: &mut Vec<u64>, out: &mut Vec<HittingSetInstance>) {
        if left == 0 {
            let sets = stack.iter().map(|&m| VertexSet::from_mask(universe, m)).collect();
            out.push(HittingSetInstance::new(universe, sets).unwrap());
            return;
        }
        for i in start..masks.len() {
            stack.push(masks[i]);
            rec(masks, i, left - 1, universe, stack, out);
            stack.pop();
        }
    }
    rec(&masks, 0, m, universe, &mut stack, &mut out);
    out
}

/// Clauses over variables 1, 2, 3, one per sign pattern.
pub fn full_clauses() -> Vec<Vec<i32>> {
    (0..8)
        .map(|signs: i32| (1..=3).map(|v| if signs >> (v - 1) & 1 == 1 { -v } else { v }).collect())
        .collect()
}

/// Every 3-CNF over three variables with at most two clauses, clauses as
/// multisets.
pub fn small_3cnfs() -> Vec<CnfFormula> {
    let clauses = full_clauses();
    let mut out = vec![CnfFormula::new(3, vec![]).unwrap()];
    for (i, a) in clauses.iter().enumerate() {
        out.push(CnfFormula::new(3, vec![a.clone()]).unwrap());
        for b in &clauses[i..] {
            out.push(CnfFormula::new(3, vec![a.clone(), b.clone()]).unwrap());
        }
    }
    out
}

pub fn assignments(vars: usize) -> impl Iterator<Item = Vec<bool>> {
    (0..1u32 << vars).map(move |bits| (0..vars).map(|i| bits >> i & 1 == 1).collect())
}

/// Median wall time of `runs` calls, each repeated until it takes at least
/// `floor` so short calls are not lost in timer noise.
pub fn median_time(runs: usize, floor: Duration, mut f: impl FnMut()) -> Duration {
    let mut times: Vec<Duration> = (0..runs)
        .map(|_| {
            let start = Instant::now();
            let mut reps = 0u32;
            while reps == 0 || start.elapsed() < floor {
                f();
                reps += 1;
            }
            start.elapsed() / reps
        })
        .collect();
    times.sort();
    times[runs / 2]
}
