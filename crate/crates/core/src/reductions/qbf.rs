use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vset::VertexSet;

use super::sat::{add_variable, SatParams};
use super::triangle::add_triangle;
use super::{attach_path, GadgetLayout, GadgetParams, QbfInstance};

/// `∃∀` 3-DNF → isometric hull set of bounded size.
#[derive(Debug, Clone)]
pub struct QbfHullSet {
    pub instance: QbfInstance,
    pub params: SatParams,
    pub graph: Graph,
    /// Pendant vertices every hull set contains: `dd`, `gg` of each variable
    /// and `r'`.
    pub mandatory: VertexSet,
    /// `3n_x + 2n_y + 1`.
    pub target: usize,
    pub delta: usize,
    /// Diameter of the graph before the `H^i` paths were added.
    pub diameter_before_h: u32,
    /// Interior vertices of each `H^i`, listed from the `p` end.
    pub h_interiors: Vec<Vec<usize>>,
    pub layout: GadgetLayout,
}

impl QbfHullSet {
    /// The candidate hull set of an existential assignment: the mandatory
    /// vertices plus `h^p_i` for true and `h^n_i` for false variables.
    pub fn certificate(&self, x_assignment: &[bool]) -> Result<VertexSet> {
        if x_assignment.len() != self.instance.n_x {
            return Err(Error::InvalidInstance(format!(
                "assignment has {} values for {} existential variables",
                x_assignment.len(),
                self.instance.n_x
            )));
        }
        let mut s = self.mandatory.clone();
        let half = (self.delta - 1) / 2;
        for (interior, &value) in self.h_interiors.iter().zip(x_assignment) {
            s.insert(if value { interior[half - 1] } else { interior[half] });
        }
        Ok(s)
    }

    /// The vertex set without the interiors of the `H^i` paths.
    pub fn without_h_interiors(&self) -> VertexSet {
        let mut s = VertexSet::full(self.graph.n());
        for v in self.h_interiors.iter().flatten() {
            s.remove(*v);
        }
        s
    }
}

/// Builds the hull-set gadget graph of a QBF instance. Parameters default
/// to [`SatParams::auto`] for the number of terms.
pub fn qsat2_to_hullset(q: &QbfInstance, params: Option<SatParams>) -> Result<QbfHullSet> {
    q.check_reduction_shape()?;
    let m = q.terms.len();
    let params = match params {
        Some(p) => {
            p.validate(m)?;
            p
        }
        None => SatParams::auto(m)?,
    };
    let SatParams { alpha, beta, gamma } = params;

    let mut g = Graph::new(0);
    let mut layout = GadgetLayout::default();
    let r = g.add_vertex();
    layout.role("r", r);
    let mut mandatory = Vec::new();
    let mut variables = Vec::with_capacity(q.vars());
    for v in 1..=q.vars() {
        let (side, i) = if v <= q.n_x { ("x", v) } else { ("y", v - q.n_x) };
        let var = add_variable(&mut g, alpha);
        for (name, vertex) in [("d", var.d), ("p", var.p), ("g", var.g), ("n", var.n)] {
            layout.role(format!("{name}^{side}_{i}"), vertex);
        }
        for (name, anchor) in [("dd", var.d), ("gg", var.g)] {
            let pendant = g.add_vertex();
            g.add_edge(anchor, pendant)?;
            layout.role(format!("{name}^{side}_{i}"), pendant);
            mandatory.push(pendant);
        }
        layout.path(format!("P^{i}_{side}"), var.pos_path.clone());
        layout.path(format!("N^{i}_{side}"), var.neg_path.clone());
        for (name, end) in [("d", var.d), ("g", var.g)] {
            let p = attach_path(&mut g, r, beta, Some(end));
            layout.path(format!("P(r,{name}^{side}_{i})"), p);
        }
        variables.push(var);
    }
    let r_prime = g.add_vertex();
    g.add_edge(r, r_prime)?;
    layout.role("r'", r_prime);
    mandatory.push(r_prime);

    let mut clauses = Vec::with_capacity(m);
    for (j, term) in q.terms.iter().enumerate() {
        // positive occurrences sit on P, negative ones on N
        let corners: [usize; 3] = std::array::from_fn(|c| {
            let var = &variables[term[c].unsigned_abs() as usize - 1];
            if term[c] > 0 {
                var.p
            } else {
                var.n
            }
        });
        let t = add_triangle(&mut g, gamma, Some(corners));
        layout.role(format!("c^{}", j + 1), t.center);
        for (c, &v) in t.corners.iter().enumerate() {
            layout.alias(format!("corner({},{})", j + 1, c + 1), v);
        }
        clauses.push(t);
    }
    let qv = g.add_vertex();
    layout.role("q", qv);
    for t in &clauses {
        g.add_edge(qv, t.center)?;
    }

    let diameter = g.diameter().ok_or(Error::Disconnected)?;
    let delta = diameter as usize + 1 + (diameter as usize % 2);
    debug_assert!(delta % 2 == 1 && delta > diameter as usize);
    let mut h_interiors = Vec::with_capacity(q.n_x);
    for (i, var) in variables[..q.n_x].iter().enumerate() {
        let path = attach_path(&mut g, var.p, delta, Some(var.n));
        let interior = path[1..path.len() - 1].to_vec();
        let half = (delta - 1) / 2;
        layout.role(format!("h^p_{}", i + 1), interior[half - 1]);
        layout.role(format!("h^n_{}", i + 1), interior[half]);
        layout.path(format!("H^{}", i + 1), path);
        h_interiors.push(interior);
    }
    layout.params = GadgetParams {
        alpha: Some(alpha),
        beta: Some(beta),
        gamma: Some(gamma),
        delta: Some(delta),
        ..GadgetParams::default()
    };
    layout.validate(g.n())?;
    let mandatory = VertexSet::from_members(g.n(), mandatory)?;
    Ok(QbfHullSet {
        instance: q.clone(),
        params,
        target: 3 * q.n_x + 2 * q.n_y + 1,
        mandatory,
        delta,
        diameter_before_h: diameter,
        h_interiors,
        graph: g,
        layout,
    })
}
