use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vset::VertexSet;

use super::triangle::{add_triangle, triangle_size, Triangle};
use super::{attach_path, CnfFormula, GadgetLayout, GadgetParams, Literal};

/// Gadget sizes: variable cycles of length `4α`, hub paths of length `β`,
/// clause triangles `T_γ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SatParams {
    pub alpha: usize,
    pub beta: usize,
    pub gamma: usize,
}

impl SatParams {
    /// Smallest even `α` with `2α > m + 1` that leaves room for `γ`,
    /// `β = α + 2`, and the smallest odd `γ` satisfying the remaining
    /// inequalities. `2β < γ` alone is not enough: a vertex in the middle
    /// of a clause side reaches the opposite corner through the inner
    /// triangle in only `γ − 3` more steps than the side's nearer corner, so
    /// keeping shortest paths off the third corner takes `γ > 2β + 3`.
    pub fn auto(m: usize) -> Result<Self> {
        let mut alpha = 2;
        while 2 * alpha <= m + 1 {
            alpha += 2;
        }
        loop {
            let beta = alpha + 2;
            let gamma = (2 * beta + 5..2 * (alpha + beta))
                .step_by(2)
                .find(|&g| triangle_size(g) > (m + 3) * g);
            if let Some(gamma) = gamma {
                let p = SatParams { alpha, beta, gamma };
                p.validate(m)?;
                return Ok(p);
            }
            alpha += 2;
        }
    }

    /// Checks every construction inequality, naming the first that fails.
    pub fn validate(&self, m: usize) -> Result<()> {
        let SatParams { alpha, beta, gamma } = *self;
        let fail = |what: &str| Err(Error::InvalidParameters(format!("{what} violated (alpha={alpha}, beta={beta}, gamma={gamma}, m={m})")));
        if alpha == 0 || alpha % 2 != 0 {
            return fail("alpha even and positive");
        }
        if beta % 2 != 0 {
            return fail("beta even");
        }
        if gamma % 2 != 1 || gamma < 3 {
            return fail("gamma odd and at least 3");
        }
        if 2 * alpha <= m + 1 {
            return fail("m + 1 < 2*alpha");
        }
        if alpha >= beta {
            return fail("2*alpha < 2*beta");
        }
        if 2 * beta >= gamma {
            return fail("2*beta < gamma");
        }
        if 2 * beta + 3 >= gamma {
            return fail("2*beta + 3 < gamma");
        }
        if gamma >= 2 * (alpha + beta) {
            return fail("gamma < 2*(alpha + beta)");
        }
        if triangle_size(gamma) <= (m + 3) * gamma {
            return fail("|T_gamma| - 3*gamma > m*gamma");
        }
        Ok(())
    }

    fn layout_params(&self) -> GadgetParams {
        GadgetParams {
            alpha: Some(self.alpha),
            beta: Some(self.beta),
            gamma: Some(self.gamma),
            ..GadgetParams::default()
        }
    }
}

/// One variable cycle of length `4α`: `d` at 0, `p` at `α`, `g` at `2α`,
/// `n` at `3α`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct VariableGadget {
    pub d: usize,
    pub p: usize,
    pub g: usize,
    pub n: usize,
    /// `d … p … g`.
    pub pos_path: Vec<usize>,
    /// `d … n … g`.
    pub neg_path: Vec<usize>,
}

pub(crate) fn add_variable(g: &mut Graph, alpha: usize) -> VariableGadget {
    let cycle: Vec<usize> = (0..4 * alpha).map(|_| g.add_vertex()).collect();
    for i in 0..cycle.len() {
        g.add_edge(cycle[i], cycle[(i + 1) % cycle.len()]).expect("fresh cycle");
    }
    let pos_path = cycle[..=2 * alpha].to_vec();
    let mut neg_path = vec![cycle[0]];
    neg_path.extend(cycle[2 * alpha..].iter().rev());
    VariableGadget {
        d: cycle[0],
        p: cycle[alpha],
        g: cycle[2 * alpha],
        n: cycle[3 * alpha],
        pos_path,
        neg_path,
    }
}

/// 3-SAT → isometric hull of `S` in a bipartite graph.
#[derive(Debug, Clone)]
pub struct SatIsoHull {
    pub formula: CnfFormula,
    pub params: SatParams,
    /// The graph without `q`.
    pub g0: Graph,
    /// `g0` plus `q` (the last vertex) adjacent to every clause center.
    pub g: Graph,
    /// `{r} ∪ {d_i, g_i}`, over the vertices of `g0`.
    pub s: VertexSet,
    pub layout: GadgetLayout,
    /// Size of the certificate hull of a satisfying assignment in which every
    /// clause has two false literals: `1 + n(2α + 2β − 1) + m(γ − 2)`.
    pub target: usize,
    /// The bound `n(α + 2β) + mγ` stated with the construction.
    pub nominal_target: usize,
    pub(crate) variables: Vec<VariableGadget>,
    pub(crate) clauses: Vec<Triangle>,
    pub(crate) hub_paths: Vec<Vec<usize>>,
}

impl SatIsoHull {
    /// Target for `g`: an isometric hull of `S` smaller than the whole graph.
    pub fn g_target(&self) -> usize {
        self.g.n() - 1
    }

    /// Vertex of a literal on the variable side of the gadgets: `n_i` for a
    /// positive occurrence, `p_i` for a negative one.
    pub fn corner_vertex(&self, l: Literal) -> usize {
        let var = &self.variables[l.unsigned_abs() as usize - 1];
        if l > 0 {
            var.n
        } else {
            var.p
        }
    }

    /// The subgraph `H` of a satisfying assignment: hub paths, `P^i` or
    /// `N^i`, and a corner-to-corner side of every clause with two corners
    /// in `H`. Vertex set over `g0`.
    pub fn certificate(&self, assignment: &[bool]) -> Result<VertexSet> {
        if assignment.len() != self.formula.vars {
            return Err(Error::InvalidInstance(format!(
                "assignment has {} values for {} variables",
                assignment.len(),
                self.formula.vars
            )));
        }
        if !self.formula.satisfied_by(assignment) {
            return Err(Error::InvalidInstance("assignment does not satisfy the formula".into()));
        }
        let mut h = VertexSet::empty(self.g0.n());
        for p in &self.hub_paths {
            for &v in p {
                h.insert(v);
            }
        }
        for (var, &value) in self.variables.iter().zip(assignment) {
            for &v in if value { &var.pos_path } else { &var.neg_path } {
                h.insert(v);
            }
        }
        for t in &self.clauses {
            let inside: Vec<usize> = (0..3).filter(|&c| h.contains(t.corners[c])).collect();
            debug_assert!(inside.len() < 3, "a satisfied clause keeps a corner outside");
            if let [a, b] = inside[..] {
                // sides[t] joins corners t and t+1
                let side = if b == a + 1 { &t.sides[a] } else { &t.sides[2] };
                for &v in side {
                    h.insert(v);
                }
            }
        }
        Ok(h)
    }

    /// Reads an assignment off a hull: `v_i` is true iff `P^i` lies in it.
    pub fn read_assignment(&self, hull: &VertexSet) -> Vec<bool> {
        self.variables.iter().map(|var| var.pos_path.iter().all(|&v| hull.contains(v))).collect()
    }
}

/// Literal pairs occurring together in more than one clause.
///
/// Two such clauses give two shortest paths between the same two corners,
/// so a hull can join the three corners of a falsified clause with sides of
/// other clauses and skip its triangle. Small isometric hulls then exist for
/// some unsatisfiable formulas, e.g. the eight clauses on three variables.
pub fn shared_literal_pairs(formula: &CnfFormula) -> Vec<[Literal; 2]> {
    let mut seen = std::collections::BTreeMap::new();
    for clause in &formula.clauses {
        for (i, &a) in clause.iter().enumerate() {
            for &b in &clause[i + 1..] {
                *seen.entry([a.min(b), a.max(b)]).or_insert(0) += 1;
            }
        }
    }
    seen.into_iter().filter(|&(_, c)| c > 1).map(|(p, _)| p).collect()
}

/// Builds the 3-SAT gadget graph. Parameters default to [`SatParams::auto`].
pub fn sat_to_isohull(formula: &CnfFormula, params: Option<SatParams>) -> Result<SatIsoHull> {
    if !formula.is_3cnf() {
        return Err(Error::InvalidInstance("every clause needs exactly three literals".into()));
    }
    let m = formula.clauses.len();
    let params = match params {
        Some(p) => {
            p.validate(m)?;
            p
        }
        None => SatParams::auto(m)?,
    };
    let SatParams { alpha, beta, gamma } = params;
    let n = formula.vars;

    let mut g = Graph::new(0);
    let mut layout = GadgetLayout {
        params: params.layout_params(),
        ..GadgetLayout::default()
    };
    let r = g.add_vertex();
    layout.role("r", r);
    let mut variables = Vec::with_capacity(n);
    let mut hub_paths = Vec::with_capacity(2 * n);
    for i in 1..=n {
        let var = add_variable(&mut g, alpha);
        for (name, v) in [("d", var.d), ("p", var.p), ("g", var.g), ("n", var.n)] {
            layout.role(format!("{name}_{i}"), v);
        }
        layout.path(format!("P^{i}"), var.pos_path.clone());
        layout.path(format!("N^{i}"), var.neg_path.clone());
        for (name, end) in [("d", var.d), ("g", var.g)] {
            let p = attach_path(&mut g, r, beta, Some(end));
            layout.path(format!("P(r,{name}_{i})"), p.clone());
            hub_paths.push(p);
        }
        variables.push(var);
    }
    let mut clauses = Vec::with_capacity(m);
    for (j, clause) in formula.clauses.iter().enumerate() {
        let corners: [usize; 3] = std::array::from_fn(|c| {
            let var = &variables[clause[c].unsigned_abs() as usize - 1];
            if clause[c] > 0 {
                var.n
            } else {
                var.p
            }
        });
        let t = add_triangle(&mut g, gamma, Some(corners));
        layout.role(format!("c^{}", j + 1), t.center);
        for (c, &v) in t.corners.iter().enumerate() {
            layout.alias(format!("corner({},{})", j + 1, c + 1), v);
        }
        clauses.push(t);
    }
    let g0 = g.clone();
    let q = g.add_vertex();
    layout.role("q", q);
    for t in &clauses {
        g.add_edge(q, t.center)?;
    }
    let mut s = VertexSet::singleton(g0.n(), r);
    for var in &variables {
        s.insert(var.d);
        s.insert(var.g);
    }
    layout.validate(g.n())?;
    Ok(SatIsoHull {
        formula: formula.clone(),
        params,
        target: 1 + n * (2 * alpha + 2 * beta - 1) + m * (gamma - 2),
        nominal_target: n * (alpha + 2 * beta) + m * gamma,
        g0,
        g,
        s,
        layout,
        variables,
        clauses,
        hub_paths,
    })
}
