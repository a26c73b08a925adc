use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde_json::{json, Value};

use hullkit::closure::{classify, closure_from_family, enumerate_images, ClassifyMode, ClosedFamily, ConvexHullOperator, PseudoClosure, TableOperator};
use hullkit::hulls::{self, ExactOutcome, HullSetVerdict, SolverBudget};
use hullkit::io;
use hullkit::lattice::{build_lattice, find_nongraded, Lattice, SearchOptions};
use hullkit::mingen::{brute_force_min_gen, min_gen, GeneratorTable};
use hullkit::reductions::{self, GadgetLayout, HittingSetInstance, SatParams};
use hullkit::{Geodesics, Graph, VertexSet};

use crate::report::{read_input, write_output, CliResult, Failure, InputDigest, Status};
use crate::{OperatorInput, OperatorKind};

type Outcome = CliResult<(Value, Status)>;

#[derive(Default)]
pub struct Context {
    pub inputs: Vec<InputDigest>,
    pub seed: Option<u64>,
    /// Printed instead of the JSON report when set.
    pub text_output: Option<String>,
}

impl Context {
    fn read(&mut self, path: &Path) -> CliResult<String> {
        read_input(path, &mut self.inputs)
    }

    fn graph(&mut self, path: &Path) -> CliResult<Graph> {
        Ok(io::parse_graph(&self.read(path)?)?)
    }
}

/// A comma-separated vertex list such as `0,2,5`.
#[derive(Debug, Clone, Default)]
pub struct VertexList(pub Vec<usize>);

/// Parses `0,2,5` (an empty string is the empty list).
pub fn parse_list(s: &str) -> Result<VertexList, String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| format!("{t:?} is not a vertex index")))
        .collect::<Result<_, _>>()
        .map(VertexList)
}

fn vertex_set(n: usize, members: &[usize]) -> CliResult<VertexSet> {
    Ok(VertexSet::from_members(n, members.iter().copied())?)
}

fn json<T: serde::Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("plain data serialises")
}

/// The requested interpretation, or a guess from the header line.
fn resolve_kind(kind: Option<OperatorKind>, text: &str) -> OperatorKind {
    let set_family = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .is_some_and(|l| l.starts_with("universe"));
    kind.unwrap_or(if set_family { OperatorKind::ClosedSets } else { OperatorKind::Graph })
}

fn load_operator(ctx: &mut Context, input: &OperatorInput) -> CliResult<Box<dyn PseudoClosure>> {
    let text = ctx.read(&input.file)?;
    Ok(match resolve_kind(input.kind, &text) {
        OperatorKind::Graph => Box::new(ConvexHullOperator::new(io::parse_graph(&text)?)?),
        OperatorKind::ClosedSets => {
            let family = io::parse_set_family(&text)?;
            Box::new(closure_from_family(ClosedFamily::from_family(family)?))
        }
        OperatorKind::Table => {
            let (n, sets) = io::parse_sets(&text)?;
            let table = sets.iter().map(|s| s.to_mask() as u32).collect();
            Box::new(TableOperator::new(n, table)?)
        }
    })
}

fn table_json(t: &GeneratorTable) -> Value {
    let labels: Vec<Value> = t.iter().map(|(image, label)| json!({ "image": image, "label": label })).collect();
    json!({
        "images": t.len(),
        "while_iterations": t.while_iterations,
        "label_updates": t.label_updates,
        "labels": labels,
    })
}

pub fn mingen(ctx: &mut Context, input: &OperatorInput, k: Option<usize>, check: bool) -> Outcome {
    let f = load_operator(ctx, input)?;
    let images = enumerate_images(&f)?;
    let table = min_gen(&f, &images)?;
    let mut result = table_json(&table);
    if check {
        let oracle = brute_force_min_gen(&f)?;
        let agree = oracle.len() == table.len() && oracle.iter().all(|(image, label)| table.label(image).map(VertexSet::len) == Some(label.len()));
        result["oracle_agrees"] = json!(agree);
        if !agree {
            return Ok((result, Status::Negative));
        }
    }
    let mut status = Status::Answered;
    if let Some(k) = k {
        let verdict = hullkit::mingen::mgs_decision(&f, &images, k)?;
        if !matches!(verdict, hullkit::mingen::MgsVerdict::Yes { .. }) {
            status = Status::Negative;
        }
        result["decision"] = json(&verdict);
    }
    Ok((result, status))
}

pub fn hull_number(ctx: &mut Context, path: &Path, budget: usize, via_reversal: bool) -> Outcome {
    let geo = Geodesics::new(ctx.graph(path)?);
    if via_reversal {
        let (size, witness) = hulls::hull_number_via_coordinate_reversal(&geo)?;
        return Ok((json!({ "size": size, "witness": witness }), Status::Answered));
    }
    let h = hulls::hull_number_with_budget(&geo, budget)?;
    Ok((json(&h), Status::Answered))
}

pub fn conv(ctx: &mut Context, path: &Path, set: &[usize]) -> Outcome {
    let geo = Geodesics::new(ctx.graph(path)?);
    let s = vertex_set(geo.n(), set)?;
    let hull = geo.conv(&s)?;
    Ok((json!({ "set": s, "hull": hull, "size": hull.len() }), Status::Answered))
}

pub fn iso_hull(ctx: &mut Context, path: &Path, set: &[usize], greedy: bool, budget: usize) -> Outcome {
    let geo = Geodesics::new(ctx.graph(path)?);
    let s = vertex_set(geo.n(), set)?;
    if greedy {
        return Ok((json(&hulls::iso_hull_greedy(&geo, &s)?), Status::Answered));
    }
    let budget = SolverBudget {
        max_nodes: budget,
        ..SolverBudget::default()
    };
    Ok(match hulls::iso_hull_exact(&geo, &s, budget)? {
        ExactOutcome::Optimal(r) => (json(&r), Status::Answered),
        ExactOutcome::Unknown(r) => {
            eprintln!("node budget exhausted; reporting the best hull found");
            (json(&r), Status::Budget)
        }
    })
}

pub fn iso_hull_number(ctx: &mut Context, path: &Path) -> Outcome {
    let geo = Geodesics::new(ctx.graph(path)?);
    let (size, witness) = hulls::iso_hull_number(&geo)?;
    Ok((json!({ "size": size, "witness": witness }), Status::Answered))
}

pub fn hull_set_check(ctx: &mut Context, path: &Path, set: &[usize], budget: usize) -> Outcome {
    let geo = Geodesics::new(ctx.graph(path)?);
    let s = vertex_set(geo.n(), set)?;
    let budget = SolverBudget {
        max_nodes: budget,
        ..SolverBudget::default()
    };
    let verdict = hulls::is_hull_set(&geo, &s, budget)?;
    let status = match verdict {
        HullSetVerdict::HullSet => Status::Answered,
        HullSetVerdict::NotHullSet { .. } => Status::Negative,
        HullSetVerdict::Unknown => Status::Budget,
    };
    Ok((json(&verdict), status))
}

fn lattice_json(l: &Lattice) -> Value {
    json!({
        "elements": l.elements(),
        "covers": l.covers(),
        "atoms": l.atoms(),
        "join_irreducibles": l.join_irreducibles(),
        "atomistic": l.is_atomistic(),
        "graded": l.is_graded(),
    })
}

pub fn lattice(ctx: &mut Context, input: &OperatorInput, dot: Option<&Path>) -> Outcome {
    let text = ctx.read(&input.file)?;
    let l = match resolve_kind(input.kind, &text) {
        OperatorKind::Graph => hullkit::lattice::convexity_lattice(&io::parse_graph(&text)?)?,
        OperatorKind::ClosedSets => build_lattice(&ClosedFamily::from_family(io::parse_set_family(&text)?)?),
        OperatorKind::Table => return Err(Failure::Usage("lattice takes a graph or a closed-set family".into())),
    };
    if let Some(path) = dot {
        write_output(path, &l.to_dot())?;
    }
    Ok((lattice_json(&l), Status::Answered))
}

pub fn nongraded_search(ctx: &mut Context, max_n: usize, limit: usize, seed: u64) -> Outcome {
    ctx.seed = Some(seed);
    let found = find_nongraded(
        max_n,
        SearchOptions {
            limit,
            seed,
            ..SearchOptions::default()
        },
    )?;
    let status = if found.is_empty() { Status::Negative } else { Status::Answered };
    Ok((json!({ "found": found }), status))
}

/// Writes a graph and its layout sidecar, or inlines both when `out` is
/// absent.
fn emit_graph(g: &Graph, layout: &GadgetLayout, out: Option<&Path>) -> CliResult<Value> {
    let summary = json!({ "n": g.n(), "m": g.m() });
    emit(summary, &io::write_graph(g), Some(layout), out)
}

fn emit(mut summary: Value, text: &str, layout: Option<&GadgetLayout>, out: Option<&Path>) -> CliResult<Value> {
    match out {
        Some(path) => {
            write_output(path, text)?;
            summary["output"] = json!(path.display().to_string());
            if let Some(layout) = layout {
                let side = sidecar(path);
                let body = serde_json::to_string_pretty(layout).expect("layout serialises");
                write_output(&side, &(body + "\n"))?;
                summary["layout_file"] = json!(side.display().to_string());
            }
        }
        None => {
            summary["output_text"] = json!(text);
            if let Some(layout) = layout {
                summary["layout"] = json(layout);
            }
        }
    }
    Ok(summary)
}

fn sidecar(path: &Path) -> PathBuf {
    let mut name = path.as_os_str().to_owned();
    name.push(".layout.json");
    PathBuf::from(name)
}

pub fn triangle(_ctx: &mut Context, gamma: usize, out: Option<&Path>) -> Outcome {
    let (g, layout) = reductions::triangle_gadget(gamma)?;
    let mut result = emit_graph(&g, &layout, out)?;
    result["gamma"] = json!(gamma);
    Ok((result, Status::Answered))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Reduction {
    /// digraph → closed-set family (dominating set to minimum generator).
    Dom2mgs,
    /// set family → cube vectors (hitting set to coordinate reversal).
    Hs2cr,
    /// cube vectors → set family.
    Cr2hs,
    /// set family → graph (hitting set to isometric hull).
    Hs2hull,
    /// cnf → graph (3-SAT to isometric hull).
    Sat2hull,
    /// graph with --set and --k → graph with three terminals.
    Wrap3,
    /// qdimacs → graph (quantified formula to isometric hull set).
    Qsat2hull,
    /// --gamma → triangle gadget.
    Triangle,
    /// --k → the cube vectors M_k.
    Mk,
}

#[derive(Args)]
pub struct ReduceArgs {
    #[arg(value_enum)]
    name: Reduction,
    /// Input instance (not used by triangle and mk).
    input: Option<PathBuf>,
    /// Output file; the layout goes to `<out>.layout.json`.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, value_parser = parse_list)]
    set: Option<VertexList>,
    #[arg(long)]
    alpha: Option<usize>,
    #[arg(long)]
    beta: Option<usize>,
    #[arg(long)]
    gamma: Option<usize>,
}

impl ReduceArgs {
    fn input(&self, ctx: &mut Context) -> CliResult<String> {
        let path = self
            .input
            .as_ref()
            .ok_or_else(|| Failure::Usage(format!("reduce {:?} needs an input file", self.name).to_lowercase()))?;
        ctx.read(path)
    }

    fn need_k(&self) -> CliResult<usize> {
        self.k.ok_or_else(|| Failure::Usage("--k is required".into()))
    }

    fn params(&self) -> CliResult<Option<SatParams>> {
        match (self.alpha, self.beta, self.gamma) {
            (None, None, None) => Ok(None),
            (Some(alpha), Some(beta), Some(gamma)) => Ok(Some(SatParams { alpha, beta, gamma })),
            _ => Err(Failure::Usage("give all of --alpha, --beta, --gamma or none".into())),
        }
    }
}

fn hitting_instance(text: &str) -> CliResult<HittingSetInstance> {
    let (universe, sets) = io::parse_sets(text)?;
    Ok(HittingSetInstance::new(universe, sets)?)
}

pub fn reduce(ctx: &mut Context, args: ReduceArgs) -> Outcome {
    let out = args.out.as_deref();
    let result = match args.name {
        Reduction::Dom2mgs => {
            let d = io::parse_digraph(&args.input(ctx)?)?;
            let red = reductions::dominating_to_closure(&d)?;
            let family = red.closure.family().family();
            let summary = json!({
                "elements": red.kept.len(),
                "closed_sets": family.len(),
                "kept": red.kept,
                "rep": red.rep,
                "neighborhoods": red.neighborhoods,
            });
            emit(summary, &io::write_set_family(family), None, out)?
        }
        Reduction::Hs2cr => {
            let h = hitting_instance(&args.input(ctx)?)?;
            let red = reductions::hitting_to_coordinate(&h)?;
            let summary = json!({
                "dimension": red.cube.dimension,
                "vectors": red.cube.vectors.len(),
                "x": red.x,
                "vector_of": red.vector_of,
                "element_of": red.element_of,
            });
            emit(summary, &io::write_cube(&red.cube), None, out)?
        }
        Reduction::Cr2hs => {
            let c = io::parse_cube(&args.input(ctx)?)?;
            let h = reductions::coordinate_to_hitting(&c)?;
            let summary = json!({ "universe": h.universe, "sets": h.sets.len() });
            emit(summary, &io::write_sets(h.universe, &h.sets), None, out)?
        }
        Reduction::Hs2hull => {
            let h = hitting_instance(&args.input(ctx)?)?;
            let red = reductions::hitting_to_isohull(&h)?;
            let mut summary = emit_graph(&red.graph, &red.layout, out)?;
            summary["s"] = json(&red.s);
            summary["dummy_elements"] = json!(red.dummy_elements);
            summary["m"] = json!(red.m);
            if let Some(k) = args.k {
                summary["target"] = json!(red.target(k));
            }
            summary
        }
        Reduction::Sat2hull => {
            let f = io::parse_cnf(&args.input(ctx)?)?;
            let params = args.params()?;
            let red = reductions::sat_to_isohull(&f, params)?;
            let shared = reductions::shared_literal_pairs(&f);
            if !shared.is_empty() {
                eprintln!(
                    "warning: {} literal pair(s) occur in more than one clause; small hulls may exist for unsatisfiable formulas",
                    shared.len()
                );
            }
            let mut summary = emit_graph(&red.g0, &red.layout, out)?;
            summary["s"] = json(&red.s);
            summary["target"] = json!(red.target);
            summary["nominal_target"] = json!(red.nominal_target);
            summary["params"] = json(&red.params);
            summary["shared_literal_pairs"] = json!(shared);
            summary
        }
        Reduction::Wrap3 => {
            let g = io::parse_graph(&args.input(ctx)?)?;
            let set = args.set.as_ref().ok_or_else(|| Failure::Usage("--set is required".into()))?;
            let s = vertex_set(g.n(), &set.0)?;
            let w = reductions::wrap_three_terminals(&g, &s, args.need_k()?)?;
            let mut summary = emit_graph(&w.graph, &w.layout, out)?;
            summary["s_prime"] = json(&w.s_prime);
            summary["target"] = json!(w.target);
            summary["nominal_target"] = json!(w.nominal_target);
            summary
        }
        Reduction::Qsat2hull => {
            let q = io::parse_qdimacs(&args.input(ctx)?)?;
            let red = reductions::qsat2_to_hullset(&q, args.params()?)?;
            let mut summary = emit_graph(&red.graph, &red.layout, out)?;
            summary["mandatory"] = json(&red.mandatory);
            summary["target"] = json!(red.target);
            summary["delta"] = json!(red.delta);
            summary
        }
        Reduction::Triangle => {
            let gamma = args.gamma.ok_or_else(|| Failure::Usage("--gamma is required".into()))?;
            return triangle(ctx, gamma, out);
        }
        Reduction::Mk => {
            let k = args.need_k()?;
            let c = reductions::build_mk_instance(k)?;
            let summary = json!({ "dimension": c.dimension, "vectors": c.vectors.len() });
            emit(summary, &io::write_cube(&c), None, out)?
        }
    };
    Ok((result, Status::Answered))
}

pub fn verify(ctx: &mut Context, suite: &str, seed: u64, trials: usize, text: bool) -> Outcome {
    ctx.seed = Some(seed);
    let report = hullkit::verify::run_suite(suite, seed, trials)?;
    if text {
        ctx.text_output = Some(report.table());
    }
    let status = if report.all_passed() { Status::Answered } else { Status::Negative };
    let mut result = json(&report);
    result["all_passed"] = json!(report.all_passed());
    Ok((result, status))
}

pub fn classify_operator(ctx: &mut Context, input: &OperatorInput, samples: Option<usize>, seed: Option<u64>) -> Outcome {
    let f = load_operator(ctx, input)?;
    let mode = match (samples, seed) {
        (None, None) if f.universe_size() <= hullkit::closure::EXHAUSTIVE_LIMIT => ClassifyMode::Exhaustive,
        _ => {
            let seed = seed.unwrap_or(crate::DEFAULT_SEED);
            ctx.seed = Some(seed);
            ClassifyMode::Sampled {
                seed,
                trials: samples.unwrap_or(hullkit::closure::DEFAULT_TRIALS),
            }
        }
    };
    let c = classify(&f, mode)?;
    let mut result = json(&c);
    result["closure"] = json!(c.is_closure());
    Ok((result, Status::Answered))
}
