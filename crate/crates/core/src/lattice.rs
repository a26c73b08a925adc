//! Inclusion lattices of closed-set families.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::closure::{enumerate_images, ClosedFamily, ConvexHullOperator};
use crate::error::Result;
use crate::graph::Graph;
use crate::vset::VertexSet;

/// Hasse diagram of a closed-set family ordered by inclusion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lattice {
    universe: usize,
    elements: Vec<VertexSet>,
    covers: Vec<(usize, usize)>,
    #[serde(skip)]
    lower: Vec<Vec<usize>>,
    #[serde(skip)]
    upper: Vec<Vec<usize>>,
    top: usize,
    bottom: usize,
}

/// Builds the cover relation of `fam`; elements keep the family's canonical
/// (size, lex) order, so covers always point to a later index.
pub fn build_lattice(fam: &ClosedFamily) -> Lattice {
    let elements = fam.sets().to_vec();
    let k = elements.len();
    let mut lower = vec![Vec::new(); k];
    let mut upper = vec![Vec::new(); k];
    let mut covers = Vec::new();
    for i in 0..k {
        let supersets: Vec<usize> = (i + 1..k)
            .filter(|&j| elements[j].len() > elements[i].len() && elements[i].is_subset(&elements[j]))
            .collect();
        for &j in &supersets {
            if !supersets.iter().any(|&t| t != j && elements[t].is_subset(&elements[j])) {
                covers.push((i, j));
                lower[j].push(i);
                upper[i].push(j);
            }
        }
    }
    Lattice {
        universe: fam.universe_size(),
        top: k - 1,
        bottom: 0,
        elements,
        covers,
        lower,
        upper,
    }
}

impl Lattice {
    pub fn universe_size(&self) -> usize {
        self.universe
    }

    pub fn elements(&self) -> &[VertexSet] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `(lower, upper)` index pairs.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.lower[i]
    }

    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.upper[i]
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn index_of(&self, s: &VertexSet) -> Option<usize> {
        self.elements.binary_search(s).ok()
    }

    /// Least element containing `s`.
    pub fn join_of(&self, s: &VertexSet) -> usize {
        let mut out = VertexSet::full(self.universe);
        for e in &self.elements {
            if s.is_subset(e) {
                out.intersect_with(e);
            }
        }
        self.index_of(&out).expect("families are intersection-closed")
    }

    /// Elements with exactly one lower cover.
    pub fn join_irreducibles(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.lower[i].len() == 1).collect()
    }

    /// Upper covers of the bottom.
    pub fn atoms(&self) -> Vec<usize> {
        self.upper[self.bottom].clone()
    }

    /// Every element is the join of the atoms below it.
    pub fn is_atomistic(&self) -> bool {
        let atoms = self.atoms();
        (0..self.len()).all(|i| {
            let mut union = VertexSet::empty(self.universe);
            for &a in &atoms {
                if self.elements[a].is_subset(&self.elements[i]) {
                    union.union_with(&self.elements[a]);
                }
            }
            self.join_of(&union) == i
        })
    }

    /// Either the common length of all maximal chains, or a shortest and a
    /// longest maximal chain (bottom to top) when lengths differ.
    pub fn is_graded(&self) -> Gradedness {
        let k = self.len();
        let mut shortest = vec![usize::MAX; k];
        let mut longest = vec![0usize; k];
        let mut via_short = vec![usize::MAX; k];
        let mut via_long = vec![usize::MAX; k];
        shortest[self.bottom] = 0;
        // covers go to larger indices, so index order is topological
        for j in 0..k {
            for &i in &self.lower[j] {
                if shortest[i] + 1 < shortest[j] {
                    shortest[j] = shortest[i] + 1;
                    via_short[j] = i;
                }
                if longest[i] + 1 > longest[j] || via_long[j] == usize::MAX {
                    longest[j] = longest[i] + 1;
                    via_long[j] = i;
                }
            }
        }
        if shortest[self.top] == longest[self.top] {
            return Gradedness::Graded { height: longest[self.top] };
        }
        let chain = |via: &[usize]| {
            let mut c = vec![self.top];
            while *c.last().unwrap() != self.bottom {
                c.push(via[*c.last().unwrap()]);
            }
            c.reverse();
            c.into_iter().map(|i| self.elements[i].clone()).collect()
        };
        Gradedness::NotGraded {
            short: chain(&via_short),
            long: chain(&via_long),
        }
    }

    /// Hasse diagram in DOT, bottom at the bottom.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n");
        for (i, e) in self.elements.iter().enumerate() {
            writeln!(out, "  n{i} [label=\"{e}\"];").unwrap();
        }
        for &(a, b) in &self.covers {
            writeln!(out, "  n{a} -> n{b};").unwrap();
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Gradedness {
    Graded { height: usize },
    NotGraded { short: Vec<VertexSet>, long: Vec<VertexSet> },
}

impl Gradedness {
    pub fn is_graded(&self) -> bool {
        matches!(self, Gradedness::Graded { .. })
    }
}

/// Convexity lattice of a connected graph.
pub fn convexity_lattice(g: &Graph) -> Result<Lattice> {
    let conv = ConvexHullOperator::new(g.clone())?;
    let family = ClosedFamily::from_family(enumerate_images(&conv)?)?;
    Ok(build_lattice(&family))
}

/// A graph whose convexity lattice is not graded, with witness chains.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NongradedExhibit {
    pub graph: Graph,
    pub short: Vec<VertexSet>,
    pub long: Vec<VertexSet>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Graphs up to this order are enumerated exhaustively (by edge set).
    pub exhaustive_up_to: usize,
    /// Random connected graphs drawn per larger order.
    pub samples: usize,
    pub seed: u64,
    /// Stop after this many exhibits.
    pub limit: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            exhaustive_up_to: 5,
            samples: 200,
            seed: crate::closure::DEFAULT_SEED,
            limit: usize::MAX,
        }
    }
}

fn check_candidate(g: Graph, out: &mut Vec<NongradedExhibit>) -> Result<()> {
    if !g.is_connected() {
        return Ok(());
    }
    if let Gradedness::NotGraded { short, long } = convexity_lattice(&g)?.is_graded() {
        out.push(NongradedExhibit { graph: g, short, long });
    }
    Ok(())
}

/// Connected graphs on at most `max_n` vertices (up to 9) whose convexity
/// lattice is not graded.
pub fn find_nongraded(max_n: usize, opts: SearchOptions) -> Result<Vec<NongradedExhibit>> {
    if max_n > 9 {
        return Err(crate::Error::InvalidParameters(format!("max_n must be at most 9, got {max_n}")));
    }
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for n in 1..=max_n {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        if n <= opts.exhaustive_up_to {
            for mask in 0u64..(1 << pairs.len()) {
                let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
                check_candidate(Graph::from_edges(n, edges)?, &mut out)?;
                if out.len() >= opts.limit {
                    return Ok(out);
                }
            }
        } else {
            for _ in 0..opts.samples {
                let p: f64 = rng.gen_range(0.2..0.7);
                let edges: Vec<(usize, usize)> = pairs.iter().copied().filter(|_| rng.gen_bool(p)).collect();
                check_candidate(Graph::from_edges(n, edges)?, &mut out)?;
                if out.len() >= opts.limit {
                    return Ok(out);
                }
            }
        }
    }
    Ok(out)
}
