use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vset::VertexSet;

use super::{GadgetLayout, HittingSetInstance};

/// Hitting set → isometric hull in a bipartite graph of diameter 3.
#[derive(Debug, Clone)]
pub struct HittingIsoHull {
    pub graph: Graph,
    /// `{x}` together with the set vertices.
    pub s: VertexSet,
    pub layout: GadgetLayout,
    /// Vertex of each ground element, `None` for elements in no set.
    pub element_vertex: Vec<Option<usize>>,
    /// Vertices of the dummy elements added to get two disjoint sets.
    pub dummy_elements: Vec<usize>,
    /// Number of sets after normalisation (dummy singletons included).
    pub m: usize,
    pub x: usize,
    pub y: usize,
}

impl HittingIsoHull {
    /// Minimum hull size for an input whose minimum hitting set has size `k`:
    /// `k' + m' + 2` on the normalised instance, `k' = k + #dummies`.
    pub fn target(&self, k: usize) -> usize {
        k + self.dummy_elements.len() + self.m + 2
    }

    /// Hitting set of the input → isometric hull containing `S`.
    pub fn forward(&self, hitting: &VertexSet) -> VertexSet {
        let mut hull = self.s.with(self.y);
        for e in hitting {
            if let Some(v) = self.element_vertex[e] {
                hull.insert(v);
            }
        }
        for &d in &self.dummy_elements {
            hull.insert(d);
        }
        hull
    }

    /// Isometric hull containing `S` → hitting set of the input.
    pub fn backward(&self, hull: &VertexSet) -> VertexSet {
        let mut out = VertexSet::empty(self.element_vertex.len());
        for (e, v) in self.element_vertex.iter().enumerate() {
            if v.is_some_and(|v| hull.contains(v)) {
                out.insert(e);
            }
        }
        out
    }
}

/// Incidence graph of the set system plus a vertex `x` joined to every
/// element and `y` joined to every set; `S = {x} ∪ sets`.
///
/// Elements in no set are dropped (they would push the diameter to 4), and
/// dummy singleton sets are added until two sets are disjoint, which forces
/// `y` into every hull.
pub fn hitting_to_isohull(h: &HittingSetInstance) -> Result<HittingIsoHull> {
    if let Some(j) = h.sets.iter().position(VertexSet::is_empty) {
        return Err(Error::Infeasible(format!("set {} is empty and cannot be hit", j + 1)));
    }
    let has_disjoint_pair = h
        .sets
        .iter()
        .enumerate()
        .any(|(i, a)| h.sets[i + 1..].iter().any(|b| a.is_disjoint(b)));
    let dummies = match (has_disjoint_pair, h.sets.len()) {
        (true, _) => 0,
        (false, 0) => 2,
        (false, _) => 1,
    };

    let mut g = Graph::new(0);
    let mut layout = GadgetLayout::default();
    let mut element_vertex = vec![None; h.universe];
    for (e, slot) in element_vertex.iter_mut().enumerate() {
        if h.sets.iter().any(|s| s.contains(e)) {
            let v = g.add_vertex();
            *slot = Some(v);
            layout.role(format!("u_{e}"), v);
        }
    }
    let dummy_elements: Vec<usize> = (1..=dummies)
        .map(|i| {
            let v = g.add_vertex();
            layout.role(format!("dummy_{i}"), v);
            v
        })
        .collect();

    let mut set_vertices = Vec::new();
    for (j, s) in h.sets.iter().enumerate() {
        let v = g.add_vertex();
        layout.role(format!("X_{}", j + 1), v);
        for e in s {
            g.add_edge(v, element_vertex[e].expect("element of a set"))?;
        }
        set_vertices.push(v);
    }
    for (i, &d) in dummy_elements.iter().enumerate() {
        let v = g.add_vertex();
        layout.role(format!("X_dummy_{}", i + 1), v);
        g.add_edge(v, d)?;
        set_vertices.push(v);
    }
    let x = g.add_vertex();
    let y = g.add_vertex();
    layout.role("x", x);
    layout.role("y", y);
    for e in element_vertex.iter().flatten().chain(&dummy_elements) {
        g.add_edge(x, *e)?;
    }
    for &v in &set_vertices {
        g.add_edge(y, v)?;
    }
    let n = g.n();
    let mut s = VertexSet::from_members(n, set_vertices.iter().copied())?;
    s.insert(x);
    Ok(HittingIsoHull {
        graph: g,
        s,
        layout,
        element_vertex,
        dummy_elements,
        m: set_vertices.len(),
        x,
        y,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Geodesics;
    use crate::hulls::iso_hull_enumerate;

    #[test]
    fn worked_example() {
        let h = HittingSetInstance::from_lists(2, &[&[0], &[1], &[0, 1]]).unwrap();
        let red = hitting_to_isohull(&h).unwrap();
        assert_eq!(red.graph.n(), 7);
        assert!(red.dummy_elements.is_empty());
        let geo = Geodesics::new(red.graph.clone());
        assert_eq!(red.graph.diameter(), Some(3));
        assert!(red.graph.is_bipartite());
        let hull = iso_hull_enumerate(&geo, &red.s).unwrap();
        assert_eq!(hull.size, red.target(2));
        assert!(hull.vertices.contains(red.y));
        assert!(h.is_hitting_set(&red.backward(&hull.vertices)));
        assert!(geo.is_isometric(&red.forward(&VertexSet::full(2))));
        red.layout.validate(7).unwrap();
    }

    #[test]
    fn normalisation() {
        // no disjoint pair: one dummy; unused element 2 dropped
        let h = HittingSetInstance::from_lists(3, &[&[0, 1], &[1]]).unwrap();
        let red = hitting_to_isohull(&h).unwrap();
        assert_eq!(red.dummy_elements.len(), 1);
        assert_eq!(red.element_vertex[2], None);
        assert_eq!(red.graph.diameter(), Some(3));
        let hull = iso_hull_enumerate(&Geodesics::new(red.graph.clone()), &red.s).unwrap();
        assert_eq!(hull.size, red.target(1));

        let empty_family = HittingSetInstance::new(2, vec![]).unwrap();
        let red = hitting_to_isohull(&empty_family).unwrap();
        assert_eq!(red.dummy_elements.len(), 2);
        let hull = iso_hull_enumerate(&Geodesics::new(red.graph.clone()), &red.s).unwrap();
        assert_eq!(hull.size, red.target(0));

        let with_empty = HittingSetInstance::new(2, vec![VertexSet::empty(2)]).unwrap();
        assert!(matches!(hitting_to_isohull(&with_empty), Err(Error::Infeasible(_))));
    }
}
