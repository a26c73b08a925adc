//! Seeded random instances and randomized round-trip checks of the
//! reductions against the brute-force oracles.

use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::closure::{classify, closure_from_family, enumerate_images, punctured, ClassifyMode, ClosedFamily, PseudoClosure};
use crate::error::{Error, Result};
use crate::graph::{Digraph, Geodesics, Graph};
use crate::hulls::iso_hull_enumerate;
use crate::mingen::{brute_force_min_gen, mgs_decision, min_gen, MgsVerdict};
use crate::oracles::{dominating_set_exact, hitting_set_exact, sat_solve};
use crate::reductions::{
    coordinate_reversal_solve, coordinate_to_hitting, dominating_to_closure, hitting_to_coordinate, hitting_to_isohull,
    sat_to_isohull, triangle_gadget, triangle_size, CnfFormula, CubeVectorSet, HittingSetInstance,
};
use crate::vset::VertexSet;

/// Suites accepted by [`run_suite`].
pub const SUITES: &[&str] = &["dom2mgs", "hs2cr", "cr2hs", "hs2hull", "sat2hull", "mingen", "classify", "triangle"];

/// Random subset of `0..n`, each element kept with probability `p`.
pub fn random_subset(rng: &mut impl Rng, n: usize, p: f64) -> VertexSet {
    let mut s = VertexSet::empty(n);
    for v in 0..n {
        if rng.gen_bool(p) {
            s.insert(v);
        }
    }
    s
}

/// Digraph on `1..=max_n` vertices with a random arc density.
pub fn random_digraph(rng: &mut impl Rng, max_n: usize) -> Digraph {
    let n = rng.gen_range(1..=max_n);
    let p = rng.gen_range(0.05..0.5);
    let mut d = Digraph::new(n);
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(p) {
                d.add_arc(u, v).expect("in range");
            }
        }
    }
    d
}

/// Connected graph on `n` vertices: a random tree plus each remaining pair
/// with probability `p`.
pub fn random_connected_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::new(n);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for i in 1..n {
        let parent = order[rng.gen_range(0..i)];
        g.add_edge(parent, order[i]).expect("tree edge");
    }
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) && rng.gen_bool(p) {
                g.add_edge(u, v).expect("in range");
            }
        }
    }
    g
}

/// Hitting-set instance with `1..=max_universe` elements and
/// `1..=max_sets` nonempty sets.
pub fn random_hitting_instance(rng: &mut impl Rng, max_universe: usize, max_sets: usize) -> HittingSetInstance {
    let n = rng.gen_range(1..=max_universe);
    let m = rng.gen_range(1..=max_sets);
    let p = rng.gen_range(0.2..0.6);
    let sets = (0..m)
        .map(|_| loop {
            let s = random_subset(rng, n, p);
            if !s.is_empty() {
                break s;
            }
        })
        .collect();
    HittingSetInstance::new(n, sets).expect("same universe")
}

/// Intersection closure of a few random subsets of `0..n`.
pub fn random_closed_family(rng: &mut impl Rng, n: usize) -> ClosedFamily {
    let k = rng.gen_range(0..=2 * n);
    let p = rng.gen_range(0.3..0.8);
    let gens: Vec<VertexSet> = (0..k).map(|_| random_subset(rng, n, p)).collect();
    ClosedFamily::generated_by(n, &gens).expect("same universe")
}

/// 3-CNF with distinct variables per clause.
pub fn random_3cnf(rng: &mut impl Rng, vars: usize, clauses: usize) -> CnfFormula {
    let all: Vec<i32> = (1..=vars as i32).collect();
    let cs = (0..clauses)
        .map(|_| {
            all.choose_multiple(rng, 3)
                .map(|&v| if rng.gen_bool(0.5) { v } else { -v })
                .collect()
        })
        .collect();
    CnfFormula::new(vars, cs).expect("valid literals")
}

/// Up to `max_vectors` distinct vectors of dimension `1..=max_dimension`.
pub fn random_cube_vectors(rng: &mut impl Rng, max_dimension: usize, max_vectors: usize) -> CubeVectorSet {
    let d = rng.gen_range(1..=max_dimension);
    let k = rng.gen_range(1..=max_vectors.min(1 << d));
    let mut vectors: Vec<VertexSet> = Vec::with_capacity(k);
    while vectors.len() < k {
        let v = random_subset(rng, d, 0.5);
        if !vectors.contains(&v) {
            vectors.push(v);
        }
    }
    CubeVectorSet::new(d, vectors).expect("distinct vectors")
}

/// Every vertex outside `x` has an in-neighbour in `x`.
pub fn is_dominating(d: &Digraph, x: &VertexSet) -> bool {
    (0..d.n()).all(|v| !d.closed_in_neighborhood(v).is_disjoint(x))
}

/// Pass/fail counts of one named check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRow {
    pub check: String,
    pub passed: usize,
    pub failed: usize,
    pub first_failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub trials: usize,
    pub rows: Vec<CheckRow>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(|r| r.failed == 0)
    }

    /// Plain-text table, one line per check.
    pub fn table(&self) -> String {
        let width = self.rows.iter().map(|r| r.check.len()).max().unwrap_or(5).max(5);
        let mut out = format!("suite {} (seed {}, trials {})\n", self.suite, self.seed, self.trials);
        writeln!(out, "{:<width$}  {:>6}  {:>6}  status", "check", "pass", "fail").unwrap();
        for r in &self.rows {
            let status = if r.failed == 0 { "PASS" } else { "FAIL" };
            writeln!(out, "{:<width$}  {:>6}  {:>6}  {status}", r.check, r.passed, r.failed).unwrap();
            if let Some(f) = &r.first_failure {
                writeln!(out, "    first failure: {f}").unwrap();
            }
        }
        out
    }
}

#[derive(Default)]
struct Tally {
    rows: Vec<CheckRow>,
}

impl Tally {
    fn check(&mut self, name: &str, ok: bool, detail: impl FnOnce() -> String) {
        let pos = match self.rows.iter().position(|r| r.check == name) {
            Some(p) => p,
            None => {
                self.rows.push(CheckRow {
                    check: name.to_string(),
                    passed: 0,
                    failed: 0,
                    first_failure: None,
                });
                self.rows.len() - 1
            }
        };
        let row = &mut self.rows[pos];
        if ok {
            row.passed += 1;
        } else {
            row.failed += 1;
            if row.first_failure.is_none() {
                row.first_failure = Some(detail());
            }
        }
    }
}

/// Runs one suite with `trials` random instances drawn from `seed`.
pub fn run_suite(name: &str, seed: u64, trials: usize) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Tally::default();
    match name {
        "dom2mgs" => (0..trials).try_for_each(|_| dom2mgs(&mut rng, &mut t))?,
        "hs2cr" => (0..trials).try_for_each(|_| hs2cr(&mut rng, &mut t))?,
        "cr2hs" => (0..trials).try_for_each(|_| cr2hs(&mut rng, &mut t))?,
        "hs2hull" => (0..trials).try_for_each(|_| hs2hull(&mut rng, &mut t))?,
        "sat2hull" => (0..trials).try_for_each(|_| sat2hull(&mut rng, &mut t))?,
        "mingen" => (0..trials).try_for_each(|_| mingen(&mut rng, &mut t))?,
        "classify" => (0..trials).try_for_each(|_| classify_punctured(&mut rng, &mut t))?,
        "triangle" => triangle(&mut t)?,
        other => {
            return Err(Error::InvalidParameters(format!(
                "unknown suite {other:?}; expected one of {}",
                SUITES.join(", ")
            )))
        }
    }
    Ok(SuiteReport {
        suite: name.to_string(),
        seed,
        trials,
        rows: t.rows,
    })
}

fn dom2mgs(rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    let d = random_digraph(rng, 8);
    let (opt, witness) = dominating_set_exact(&d)?;
    let red = dominating_to_closure(&d)?;
    let images = enumerate_images(&red.closure)?;
    let show = || format!("digraph n={} arcs={:?}", d.n(), d.arcs().collect::<Vec<_>>());
    let verdict = mgs_decision(&red.closure, &images, opt)?;
    let label = match &verdict {
        MgsVerdict::Yes { witness } => Some(witness.clone()),
        _ => None,
    };
    t.check("OPT(dominating) = OPT(generating)", label.as_ref().is_some_and(|l| l.len() == opt), || {
        format!("{}: dominating {opt}, mgs {verdict:?}", show())
    });
    if opt > 0 {
        let below = mgs_decision(&red.closure, &images, opt - 1)?;
        t.check("no generating set below OPT", matches!(below, MgsVerdict::No { .. }), || {
            format!("{}: {below:?} at k = {}", show(), opt - 1)
        });
    }
    if let Some(l) = label {
        let back = red.backward(&l);
        t.check("backward map dominates", back.len() == opt && is_dominating(&d, &back), || {
            format!("{}: {l} -> {back}", show())
        });
    }
    let fwd = red.forward(&witness);
    t.check("forward map generates", fwd.len() <= opt && red.closure.evaluate(&fwd).is_full(), || {
        format!("{}: {witness} -> {fwd}", show())
    });
    let atomistic = (0..red.kept.len()).all(|e| {
        let s = VertexSet::singleton(red.kept.len(), e);
        red.closure.evaluate(&s) == s
    }) && red.closure.evaluate(&VertexSet::empty(red.kept.len())).is_empty();
    t.check("closure is atomistic", atomistic, show);
    Ok(())
}

fn hs2cr(rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    let h = random_hitting_instance(rng, 8, 6);
    let show = || format!("universe {} sets {:?}", h.universe, h.sets.iter().map(ToString::to_string).collect::<Vec<_>>());
    let (k, witness) = hitting_set_exact(&h)?;
    let red = hitting_to_coordinate(&h)?;
    let (r, reversal) = coordinate_reversal_solve(&red.cube)?;
    t.check("OPT(reversal) = OPT(hitting) + 1", r == k + 1, || format!("{}: {r} vs {k} + 1", show()));
    let fwd = red.forward(&witness);
    t.check("forward map reverses", fwd.len() == k + 1 && red.cube.reverses_all(&fwd), || {
        format!("{}: {witness} -> {fwd}", show())
    });
    let back = red.backward(&reversal);
    t.check("backward map hits", back.len() < r + 1 && h.is_hitting_set(&back), || {
        format!("{}: {reversal} -> {back}", show())
    });
    let round = coordinate_to_hitting(&red.cube)?;
    let (k2, _) = hitting_set_exact(&round)?;
    t.check("reversal -> hitting keeps OPT", k2 == r, || format!("{}: {k2} vs {r}", show()));
    Ok(())
}

fn cr2hs(rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    let c = random_cube_vectors(rng, 6, 8);
    let show = || format!("cube {} vectors {:?}", c.dimension, c.vectors.iter().map(ToString::to_string).collect::<Vec<_>>());
    match (coordinate_to_hitting(&c), coordinate_reversal_solve(&c)) {
        (Err(Error::Infeasible(_)), Err(Error::Infeasible(_))) => {
            t.check("constant coordinates reported by both", true, String::new);
        }
        (Ok(h), Ok((r, reversal))) => {
            let (k, witness) = hitting_set_exact(&h)?;
            t.check("OPT(hitting) = OPT(reversal)", k == r, || format!("{}: {k} vs {r}", show()));
            t.check("hitting witness reverses", c.reverses_all(&witness), || format!("{}: {witness}", show()));
            t.check("reversal witness hits", h.is_hitting_set(&reversal), || format!("{}: {reversal}", show()));
        }
        (a, b) => t.check("constant coordinates reported by both", false, || {
            format!("{}: {:?} vs {:?}", show(), a.map(|_| ()), b.map(|_| ()))
        }),
    }
    Ok(())
}

fn hs2hull(rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    let h = random_hitting_instance(rng, 3, 3);
    let show = || format!("universe {} sets {:?}", h.universe, h.sets.iter().map(ToString::to_string).collect::<Vec<_>>());
    let (k, witness) = hitting_set_exact(&h)?;
    let red = hitting_to_isohull(&h)?;
    let geo = Geodesics::new(red.graph.clone());
    let hull = iso_hull_enumerate(&geo, &red.s)?;
    t.check("OPT(hull) = k + m + 2", hull.size == red.target(k), || {
        format!("{}: hull {} vs target {}", show(), hull.size, red.target(k))
    });
    t.check("diameter 3", red.graph.diameter() == Some(3), || format!("{}: {:?}", show(), red.graph.diameter()));
    t.check("bipartite", red.graph.is_bipartite(), show);
    let fwd = red.forward(&witness);
    t.check("forward map is an isometric hull", fwd.len() == red.target(k) && geo.is_isometric(&fwd), || {
        format!("{}: {witness} -> {fwd}", show())
    });
    let back = red.backward(&hull.vertices);
    t.check("backward map hits", back.len() <= k && h.is_hitting_set(&back), || {
        format!("{}: {} -> {back}", show(), hull.vertices)
    });
    Ok(())
}

fn sat2hull(rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    let vars = rng.gen_range(3..=4);
    let m = rng.gen_range(1..=2);
    let f = random_3cnf(rng, vars, m);
    let red = sat_to_isohull(&f, None)?;
    let show = || format!("{:?}", f.clauses);
    t.check("bipartite", red.g0.is_bipartite() && red.g.is_bipartite(), show);
    t.check("oracle finds an assignment", sat_solve(&f)?.is_some(), show);
    let geo0 = Geodesics::new(red.g0.clone());
    let geo = Geodesics::new(red.g.clone());
    for bits in 0..1u32 << vars {
        let a: Vec<bool> = (0..vars).map(|i| bits >> i & 1 == 1).collect();
        if !f.satisfied_by(&a) {
            continue;
        }
        let h = red.certificate(&a)?;
        t.check("certificate isometric in G0", red.s.is_subset(&h) && geo0.is_isometric(&h), || format!("{}: {a:?}", show()));
        t.check("certificate isometric in G", geo.is_isometric(&h.widen(red.g.n())), || format!("{}: {a:?}", show()));
        t.check("certificate within target", h.len() <= red.target, || format!("{}: {} > {}", show(), h.len(), red.target));
        t.check("assignment read back", red.read_assignment(&h) == a, || format!("{}: {a:?}", show()));
    }
    Ok(())
}

fn mingen(rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    let n = rng.gen_range(1..=6);
    let fam = random_closed_family(rng, n);
    let show = || format!("family {:?}", fam.sets().iter().map(ToString::to_string).collect::<Vec<_>>());
    let cl = closure_from_family(fam.clone());
    let table = min_gen(&cl, fam.family())?;
    let oracle = brute_force_min_gen(&cl)?;
    let sizes_match = table.iter().all(|(img, l)| oracle.label(img).is_some_and(|o| o.len() == l.len()));
    t.check("label sizes = brute force", sizes_match && table.len() == oracle.len(), show);
    t.check("labels generate their images", table.iter().all(|(img, l)| cl.evaluate(l) == *img), show);
    let passes = table.while_iterations;
    t.check("at most two passes", passes <= 2, || format!("{}: {passes} passes", show()));
    t.check("two passes iff a label changed", (passes == 2) == (table.label_updates > 0), || {
        format!("{}: {passes} passes, {} updates", show(), table.label_updates)
    });
    Ok(())
}

fn classify_punctured(rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    let n = rng.gen_range(1..=5);
    let fam = random_closed_family(rng, n);
    let big = loop {
        let b = random_subset(rng, n, 0.5);
        if !b.is_empty() {
            break b;
        }
    };
    let small = loop {
        let s = random_subset(rng, n, 0.5).intersection(&big);
        if !s.is_empty() {
            break s;
        }
    };
    let show = || format!("X={big} X'={small} family {:?}", fam.sets().iter().map(ToString::to_string).collect::<Vec<_>>());
    let cl = closure_from_family(fam.clone());
    let base = classify(&cl, ClassifyMode::Exhaustive)?;
    t.check("closure passes every axiom", base.is_closure() && base.pseudo_closure_law && base.size_increasing, show);
    let p = punctured(cl, big.clone(), small.clone())?;
    let c = classify(&p, ClassifyMode::Exhaustive)?;
    t.check("punctured: pseudo-closure law holds", c.pseudo_closure_law, show);
    t.check("punctured: not extensive", !c.extensive, show);
    Ok(())
}

fn triangle(t: &mut Tally) -> Result<()> {
    for gamma in [3, 5, 7, 9] {
        let (g, layout) = triangle_gadget(gamma)?;
        let show = || format!("gamma {gamma}");
        t.check("|V(T_gamma)| matches the recurrence", g.n() == triangle_size(gamma), show);
        let geo = Geodesics::new(g.clone());
        let c = ["x", "y", "z"].map(|r| layout.vertex(r));
        let corner_ok = (0..3).all(|i| geo.dist(c[i], c[(i + 1) % 3]) == Some(gamma as u32 - 1));
        t.check("corners pairwise at gamma - 1", corner_ok, show);
        t.check("bipartite", g.is_bipartite(), show);
        let center = layout.vertex("c");
        let expected = ((gamma * gamma - 1) / 8) as u32;
        t.check("center at (gamma^2 - 1)/8 from each corner", c.iter().all(|&x| geo.dist(center, x) == Some(expected)), show);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_a_few_trials() {
        for suite in SUITES {
            let report = run_suite(suite, 3, 5).unwrap();
            assert!(report.all_passed(), "{}", report.table());
            assert!(!report.rows.is_empty());
        }
        assert!(run_suite("nope", 0, 1).is_err());
    }

    #[test]
    fn generators_are_seeded() {
        let a = random_digraph(&mut ChaCha8Rng::seed_from_u64(9), 8);
        let b = random_digraph(&mut ChaCha8Rng::seed_from_u64(9), 8);
        assert_eq!(a, b);
        let g = random_connected_graph(&mut ChaCha8Rng::seed_from_u64(1), 7, 0.2);
        assert!(g.is_connected());
    }
}
