use crate::closure::{closure_from_family, ClosedFamily, FamilyClosure};
use crate::error::Result;
use crate::graph::Digraph;
use crate::vset::VertexSet;

/// The atomistic closure built from a digraph, with certificate maps.
#[derive(Debug, Clone)]
pub struct DominatingClosure {
    pub closure: FamilyClosure,
    /// Digraph vertex behind each closure element.
    pub kept: Vec<usize>,
    /// Closure element standing in for each digraph vertex.
    pub rep: Vec<usize>,
    /// The reduced in-neighbourhood family over the closure elements: an
    /// antichain whose elements are pairwise separated.
    pub neighborhoods: Vec<VertexSet>,
}

impl DominatingClosure {
    /// Dominating set → generating set of at most the same size.
    pub fn forward(&self, dominating: &VertexSet) -> VertexSet {
        let mut out = VertexSet::empty(self.kept.len());
        for v in dominating {
            out.insert(self.rep[v]);
        }
        out
    }

    /// Generating set → dominating set of the same size.
    pub fn backward(&self, generators: &VertexSet) -> VertexSet {
        let mut out = VertexSet::empty(self.rep.len());
        for e in generators {
            out.insert(self.kept[e]);
        }
        out
    }
}

/// Builds a closure whose minimum generating set has the size of a minimum
/// dominating set of `d`.
///
/// Dominating sets of `d` are the hitting sets of the closed
/// in-neighbourhoods. That family is first reduced, without changing its
/// hitting sets' minimum size, by dropping sets containing another set and
/// elements whose sets are all shared by another element. The closed sets are
/// then all intersections of complements of the remaining sets.
pub fn dominating_to_closure(d: &Digraph) -> Result<DominatingClosure> {
    let n = d.n();
    let mut sets: Vec<VertexSet> = (0..n).map(|v| d.closed_in_neighborhood(v)).collect();
    let mut alive = VertexSet::full(n);
    let mut parent: Vec<usize> = (0..n).collect();
    loop {
        let mut changed = false;
        // keep only inclusion-minimal sets, one copy each
        let mut kept: Vec<VertexSet> = Vec::new();
        sets.sort();
        for s in sets {
            if !kept.iter().any(|k| k.is_subset(&s)) {
                kept.push(s);
            } else {
                changed = true;
            }
        }
        sets = kept;
        // drop an element whenever another element lies in all its sets
        let members: Vec<usize> = alive.iter().collect();
        for &v in &members {
            let dominator = members.iter().copied().find(|&u| {
                u != v && alive.contains(u) && sets.iter().all(|s| !s.contains(v) || s.contains(u))
            });
            if let Some(u) = dominator {
                alive.remove(v);
                parent[v] = u;
                for s in &mut sets {
                    s.remove(v);
                }
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    let kept: Vec<usize> = alive.iter().collect();
    let mut index = vec![usize::MAX; n];
    for (i, &v) in kept.iter().enumerate() {
        index[v] = i;
    }
    let rep = (0..n)
        .map(|mut v| {
            while !alive.contains(v) {
                v = parent[v];
            }
            index[v]
        })
        .collect();
    let w = kept.len();
    let neighborhoods: Vec<VertexSet> = sets
        .iter()
        .map(|s| VertexSet::from_members(w, s.iter().map(|v| index[v])))
        .collect::<Result<_>>()?;
    let complements: Vec<VertexSet> = neighborhoods.iter().map(VertexSet::complement).collect();
    let family = ClosedFamily::generated_by(w, &complements)?;
    Ok(DominatingClosure {
        closure: closure_from_family(family),
        kept,
        rep,
        neighborhoods,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::{classify, enumerate_images, ClassifyMode, PseudoClosure};
    use crate::mingen::{mgs_decision, MgsVerdict};

    fn min_generator(dc: &DominatingClosure) -> VertexSet {
        let im = enumerate_images(&dc.closure).unwrap();
        match mgs_decision(&dc.closure, &im, usize::MAX).unwrap() {
            MgsVerdict::Yes { witness } => witness,
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn isolated_vertex() {
        let dc = dominating_to_closure(&Digraph::new(1)).unwrap();
        let g = min_generator(&dc);
        assert_eq!(dc.backward(&g), VertexSet::full(1));
    }

    #[test]
    fn star() {
        let d = Digraph::from_arcs(3, [(0, 1), (0, 2)]).unwrap();
        let dc = dominating_to_closure(&d).unwrap();
        let g = min_generator(&dc);
        assert_eq!(g.len(), 1);
        assert_eq!(dc.backward(&g), VertexSet::singleton(3, 0));
    }

    #[test]
    fn closure_is_atomistic_and_maps_round_trip() {
        let d = Digraph::from_arcs(5, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 3), (2, 3)]).unwrap();
        let dc = dominating_to_closure(&d).unwrap();
        let c = classify(&dc.closure, ClassifyMode::Exhaustive).unwrap();
        assert!(c.is_closure() && c.atomistic);
        let full = VertexSet::full(d.n());
        let gen = dc.forward(&full);
        assert!(dc.closure.evaluate(&gen).is_full());
        let dom = dc.backward(&min_generator(&dc));
        for v in 0..d.n() {
            assert!(!dom.is_disjoint(&d.closed_in_neighborhood(v)));
        }
    }
}
