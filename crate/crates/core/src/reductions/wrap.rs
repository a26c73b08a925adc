use crate::error::{Error, Result};
use crate::graph::{Geodesics, Graph};
use crate::vset::VertexSet;

use super::{attach_path, GadgetLayout, GadgetParams};

/// A hull instance rewritten with three terminals.
#[derive(Debug, Clone)]
pub struct Wrapped {
    pub graph: Graph,
    /// `{x, y, z}`.
    pub s_prime: VertexSet,
    /// `k + |V(G')| − |V(G)|`, the bound equivalent to `k` in the input.
    pub target: usize,
    /// `k + 2sn' + s + 1`, the additive constant stated with the construction.
    pub nominal_target: usize,
    pub layout: GadgetLayout,
    pub n_prime: usize,
    pub s: usize,
}

impl Wrapped {
    /// Vertices added to the input graph.
    pub fn added_vertices(&self, original: usize) -> usize {
        self.graph.n() - original
    }
}

/// Adds a path `P = (x, v_1, w_1, v_2, …, w_{s−1}, v_s, y)`, a vertex `z`,
/// and for every `u_i ∈ S` paths of length `n'` from `v_i` and from `z`
/// to `u_i`, where `n'` is `|V(G)|` rounded up to even.
pub fn wrap_three_terminals(g: &Graph, s: &VertexSet, k: usize) -> Result<Wrapped> {
    let geo = Geodesics::new(g.clone());
    if !geo.is_connected() {
        return Err(Error::Disconnected);
    }
    let terminals: Vec<usize> = s.iter().collect();
    if terminals.is_empty() {
        return Err(Error::InvalidInstance("the terminal set is empty".into()));
    }
    for (i, &a) in terminals.iter().enumerate() {
        for &b in &terminals[i + 1..] {
            let d = geo.dist(a, b).expect("connected");
            if d % 2 == 1 {
                return Err(Error::InvalidInstance(format!("vertices {a} and {b} are at odd distance {d}")));
            }
        }
    }
    let n = g.n();
    let n_prime = n + n % 2;
    let count = terminals.len();
    let mut out = g.clone();
    let mut layout = GadgetLayout {
        params: GadgetParams {
            n_prime: Some(n_prime),
            s: Some(count),
            ..GadgetParams::default()
        },
        ..GadgetLayout::default()
    };

    let x = out.add_vertex();
    layout.role("x", x);
    let mut p = vec![x];
    let mut v = Vec::with_capacity(count);
    for i in 1..=count {
        if i > 1 {
            let w = out.add_vertex();
            out.add_edge(*p.last().unwrap(), w)?;
            layout.role(format!("w_{}", i - 1), w);
            p.push(w);
        }
        let vi = out.add_vertex();
        out.add_edge(*p.last().unwrap(), vi)?;
        layout.role(format!("v_{i}"), vi);
        p.push(vi);
        v.push(vi);
    }
    let y = out.add_vertex();
    out.add_edge(*p.last().unwrap(), y)?;
    p.push(y);
    layout.role("y", y);
    layout.path("P", p);
    let z = out.add_vertex();
    layout.role("z", z);
    for (i, (&vi, &ui)) in v.iter().zip(&terminals).enumerate() {
        layout.alias(format!("u_{}", i + 1), ui);
        let mut path = attach_path(&mut out, vi, n_prime, Some(ui));
        let back = attach_path(&mut out, z, n_prime, Some(ui));
        path.extend(back.iter().rev().skip(1));
        layout.path(format!("P_{}", i + 1), path);
    }
    layout.validate(out.n())?;
    let added = out.n() - n;
    let s_prime = VertexSet::from_members(out.n(), [x, y, z])?;
    Ok(Wrapped {
        graph: out,
        s_prime,
        target: k + added,
        nominal_target: k + 2 * count * n_prime + count + 1,
        layout,
        n_prime,
        s: count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hulls::{iso_hull_exact, SolverBudget};

    #[test]
    fn structure() {
        let c4 = Graph::cycle(4);
        let s = VertexSet::from_members(4, [0, 2]).unwrap();
        let w = wrap_three_terminals(&c4, &s, 3).unwrap();
        // P has 2s + 1 vertices, z one, and 2s paths contribute n' − 1 each
        assert_eq!(w.added_vertices(4), 2 * 2 * 4 + 2);
        let geo = Geodesics::new(w.graph.clone());
        let (x, y, z) = (w.layout.vertex("x"), w.layout.vertex("y"), w.layout.vertex("z"));
        assert_eq!(geo.count_shortest_paths(x, y), 1);
        assert_eq!(geo.dist(x, y), Some(4));
        for i in 1..=2 {
            let vi = w.layout.vertex(&format!("v_{i}"));
            assert_eq!(geo.count_shortest_paths(vi, z), 1);
            assert_eq!(geo.dist(vi, z), Some(8));
        }
        assert!(geo.is_isometric(&VertexSet::full(w.graph.n()).difference(&VertexSet::from_members(w.graph.n(), 4..w.graph.n()).unwrap())));
        assert!(w.graph.is_bipartite());
    }

    #[test]
    fn target_matches_exact_hull() {
        // iso hull of {0, 2} in C4 has 3 vertices
        let c4 = Graph::cycle(4);
        let s = VertexSet::from_members(4, [0, 2]).unwrap();
        let w = wrap_three_terminals(&c4, &s, 3).unwrap();
        let geo = Geodesics::new(w.graph.clone());
        let hull = iso_hull_exact(&geo, &w.s_prime, SolverBudget::default()).unwrap().optimal().unwrap();
        assert_eq!(hull.size, w.target);
        assert_eq!(w.target, 21);
        assert_eq!(w.nominal_target, 22);
    }

    #[test]
    fn rejects_odd_distances() {
        let p = Graph::path(2);
        assert!(wrap_three_terminals(&p, &VertexSet::full(2), 2).is_err());
    }
}
