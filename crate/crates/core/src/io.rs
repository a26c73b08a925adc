//! Plain-text formats.
//!
//! * graph: header `n m`, then `m` lines `u v`
//! * digraph: header `d n m`, then `m` arcs `u v`
//! * set family: header `universe N count K`, then `K` lines of sorted
//!   element indices; an empty line is the empty set
//! * cube vectors: header `cube d count K`, then `K` binary strings of length `d`
//! * DIMACS `cnf` and QDIMACS (`e`/`a` prefix, clause lines read as DNF terms)
//!
//! `#` starts a comment in the first four formats; blank lines are ignored
//! except inside a set-family body. Writers emit the canonical form, which
//! parses back to an identical value.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Digraph, Graph};
use crate::reductions::{CnfFormula, CubeVectorSet, Literal, QbfInstance};
use crate::vset::{SetFamily, VertexSet};

/// Non-comment lines with their 1-based line numbers; `#` comments are cut.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
}

fn numbers(line: usize, s: &str) -> Result<Vec<usize>> {
    s.split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|_| Error::parse(line, format!("expected a non-negative integer, found {t:?}"))))
        .collect()
}

fn header<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>, what: &str) -> Result<(usize, &'a str)> {
    lines
        .find(|(_, l)| !l.is_empty())
        .ok_or_else(|| Error::parse(0, format!("missing {what} header")))
}

fn edge_list<'a>(lines: impl Iterator<Item = (usize, &'a str)>, m: usize, last_line: usize) -> Result<Vec<(usize, usize, usize)>> {
    let mut out = Vec::with_capacity(m);
    for (no, l) in lines.filter(|(_, l)| !l.is_empty()) {
        let nums = numbers(no, l)?;
        let [u, v] = nums[..] else {
            return Err(Error::parse(no, "expected two vertex indices"));
        };
        out.push((no, u, v));
    }
    if out.len() != m {
        return Err(Error::parse(last_line, format!("header announces {m} lines, found {}", out.len())));
    }
    Ok(out)
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (no, h) = header(&mut lines, "graph")?;
    let [n, m] = numbers(no, h)?[..] else {
        return Err(Error::parse(no, "graph header must be `n m`"));
    };
    let mut g = Graph::new(n);
    for (line, u, v) in edge_list(lines, m, text.lines().count())? {
        if !g.add_edge(u, v).map_err(|e| Error::parse(line, e.to_string()))? {
            return Err(Error::parse(line, format!("duplicate edge {u} {v}")));
        }
    }
    Ok(g)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn parse_digraph(text: &str) -> Result<Digraph> {
    let mut lines = content_lines(text);
    let (no, h) = header(&mut lines, "digraph")?;
    let mut parts = h.split_whitespace();
    if parts.next() != Some("d") {
        return Err(Error::parse(no, "digraph header must be `d n m`"));
    }
    let [n, m] = numbers(no, &parts.collect::<Vec<_>>().join(" "))?[..] else {
        return Err(Error::parse(no, "digraph header must be `d n m`"));
    };
    let mut d = Digraph::new(n);
    for (line, u, v) in edge_list(lines, m, text.lines().count())? {
        if !d.add_arc(u, v).map_err(|e| Error::parse(line, e.to_string()))? {
            return Err(Error::parse(line, format!("duplicate arc {u} {v}")));
        }
    }
    Ok(d)
}

pub fn write_digraph(d: &Digraph) -> String {
    let mut out = format!("d {} {}\n", d.n(), d.arc_count());
    for (u, v) in d.arcs() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

fn keyword_header(no: usize, h: &str, first: &str, second: &str) -> Result<(usize, usize)> {
    let t: Vec<&str> = h.split_whitespace().collect();
    match t[..] {
        [a, x, b, y] if a == first && b == second => {
            let parse = |s: &str| s.parse::<usize>().map_err(|_| Error::parse(no, format!("expected a number, found {s:?}")));
            Ok((parse(x)?, parse(y)?))
        }
        _ => Err(Error::parse(no, format!("header must be `{first} N {second} K`"))),
    }
}

/// Parses a set family; sets are returned in file order (duplicates kept).
pub fn parse_sets(text: &str) -> Result<(usize, Vec<VertexSet>)> {
    let raw: Vec<&str> = text.lines().collect();
    let mut idx = 0;
    // header: first line that is not blank or a comment
    let (no, h) = loop {
        let Some(l) = raw.get(idx) else {
            return Err(Error::parse(0, "missing set-family header"));
        };
        idx += 1;
        let l = l.split('#').next().unwrap_or("").trim();
        if !l.is_empty() {
            break (idx, l);
        }
    };
    let (universe, count) = keyword_header(no, h, "universe", "count")?;
    let mut sets = Vec::with_capacity(count);
    while sets.len() < count {
        let Some(l) = raw.get(idx) else {
            return Err(Error::parse(raw.len(), format!("header announces {count} sets, found {}", sets.len())));
        };
        idx += 1;
        if l.trim_start().starts_with('#') {
            continue;
        }
        let members = numbers(idx, l.split('#').next().unwrap_or("").trim())?;
        let mut sorted = members.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted != members {
            return Err(Error::parse(idx, "elements must be listed in increasing order"));
        }
        sets.push(VertexSet::from_members(universe, members).map_err(|e| Error::parse(idx, e.to_string()))?);
    }
    if let Some((off, _)) = raw[idx..].iter().enumerate().find(|(_, l)| !l.split('#').next().unwrap_or("").trim().is_empty()) {
        return Err(Error::parse(idx + off + 1, "unexpected content after the last set"));
    }
    Ok((universe, sets))
}

pub fn parse_set_family(text: &str) -> Result<SetFamily> {
    let (universe, sets) = parse_sets(text)?;
    SetFamily::new(universe, sets)
}

pub fn write_sets(universe: usize, sets: &[VertexSet]) -> String {
    let mut out = format!("universe {universe} count {}\n", sets.len());
    for s in sets {
        let items: Vec<String> = s.iter().map(|e| e.to_string()).collect();
        out.push_str(&items.join(" "));
        out.push('\n');
    }
    out
}

pub fn write_set_family(f: &SetFamily) -> String {
    write_sets(f.universe_size(), f.sets())
}

pub fn parse_cube(text: &str) -> Result<CubeVectorSet> {
    let mut lines = content_lines(text);
    let (no, h) = header(&mut lines, "cube")?;
    let (d, count) = keyword_header(no, h, "cube", "count")?;
    let mut vectors = Vec::with_capacity(count);
    for (no, l) in lines.filter(|(_, l)| !l.is_empty()) {
        if l.len() != d || !l.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(Error::parse(no, format!("expected a binary string of length {d}")));
        }
        vectors.push(VertexSet::from_members(d, l.bytes().enumerate().filter(|(_, b)| *b == b'1').map(|(i, _)| i))?);
    }
    if vectors.len() != count {
        return Err(Error::parse(text.lines().count(), format!("header announces {count} vectors, found {}", vectors.len())));
    }
    CubeVectorSet::new(d, vectors)
}

pub fn write_cube(c: &CubeVectorSet) -> String {
    let mut out = format!("cube {} count {}\n", c.dimension, c.vectors.len());
    for v in &c.vectors {
        out.extend((0..c.dimension).map(|e| if v.contains(e) { '1' } else { '0' }));
        out.push('\n');
    }
    out
}

/// Clause bodies of a DIMACS file after the `p` line, plus the prefix lines
/// (`e …`/`a …`) in order.
struct Dimacs {
    vars: usize,
    prefix: Vec<(usize, char, Vec<usize>)>,
    clauses: Vec<Vec<Literal>>,
}

fn parse_dimacs_body(text: &str) -> Result<Dimacs> {
    let mut header: Option<(usize, usize)> = None;
    let mut prefix = Vec::new();
    let mut clauses = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    for (i, l) in text.lines().enumerate() {
        let no = i + 1;
        let l = l.trim();
        if l.is_empty() || l.starts_with('c') || l.starts_with('%') {
            continue;
        }
        let tokens: Vec<&str> = l.split_whitespace().collect();
        if tokens[0] == "p" {
            if header.is_some() {
                return Err(Error::parse(no, "second problem line"));
            }
            match tokens[..] {
                ["p", "cnf", v, c] => {
                    let v = v.parse().map_err(|_| Error::parse(no, "bad variable count"))?;
                    let c = c.parse().map_err(|_| Error::parse(no, "bad clause count"))?;
                    header = Some((v, c));
                }
                _ => return Err(Error::parse(no, "problem line must be `p cnf V C`")),
            }
            continue;
        }
        let Some((vars, _)) = header else {
            return Err(Error::parse(no, "content before the `p cnf` line"));
        };
        if tokens[0] == "e" || tokens[0] == "a" {
            if !clauses.is_empty() || !current.is_empty() {
                return Err(Error::parse(no, "quantifier line after clauses"));
            }
            let mut nums = numbers(no, &tokens[1..].join(" "))?;
            if nums.pop() != Some(0) {
                return Err(Error::parse(no, "quantifier line must end with 0"));
            }
            if let Some(&v) = nums.iter().find(|&&v| v == 0 || v > vars) {
                return Err(Error::parse(no, format!("variable {v} out of range")));
            }
            prefix.push((no, tokens[0].chars().next().unwrap(), nums));
            continue;
        }
        for t in tokens {
            let lit: Literal = t.parse().map_err(|_| Error::parse(no, format!("bad literal {t:?}")))?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else if lit.unsigned_abs() as usize > vars {
                return Err(Error::parse(no, format!("literal {lit} out of range")));
            } else {
                current.push(lit);
            }
        }
    }
    let Some((vars, count)) = header else {
        return Err(Error::parse(0, "missing `p cnf` line"));
    };
    if !current.is_empty() {
        return Err(Error::parse(text.lines().count(), "last clause is not terminated by 0"));
    }
    if clauses.len() != count {
        return Err(Error::parse(text.lines().count(), format!("header announces {count} clauses, found {}", clauses.len())));
    }
    Ok(Dimacs { vars, prefix, clauses })
}

pub fn parse_cnf(text: &str) -> Result<CnfFormula> {
    let d = parse_dimacs_body(text)?;
    if let Some((no, _, _)) = d.prefix.first() {
        return Err(Error::parse(*no, "quantifiers in a plain cnf file"));
    }
    CnfFormula::new(d.vars, d.clauses)
}

pub fn write_cnf(f: &CnfFormula) -> String {
    let mut out = format!("p cnf {} {}\n", f.vars, f.clauses.len());
    for c in &f.clauses {
        for l in c {
            write!(out, "{l} ").unwrap();
        }
        out.push_str("0\n");
    }
    out
}

/// QDIMACS with an `e` block followed by an `a` block. Variables are
/// renumbered so existential ones come first, in prefix order; clause lines
/// are the terms of the DNF matrix.
pub fn parse_qdimacs(text: &str) -> Result<QbfInstance> {
    let d = parse_dimacs_body(text)?;
    let mut exist: Vec<usize> = Vec::new();
    let mut univ: Vec<usize> = Vec::new();
    for (no, q, vars) in &d.prefix {
        match (q, univ.is_empty()) {
            ('e', true) => exist.extend(vars),
            ('a', _) => univ.extend(vars),
            _ => return Err(Error::parse(*no, "expected an existential block followed by a universal block")),
        }
    }
    let mut rename = vec![0i32; d.vars + 1];
    for (i, &v) in exist.iter().chain(&univ).enumerate() {
        if rename[v] != 0 {
            return Err(Error::parse(0, format!("variable {v} quantified twice")));
        }
        rename[v] = i as i32 + 1;
    }
    let terms = d
        .clauses
        .iter()
        .map(|t| {
            t.iter()
                .map(|&l| {
                    let r = rename[l.unsigned_abs() as usize];
                    if r == 0 {
                        Err(Error::parse(0, format!("variable {} is not quantified", l.abs())))
                    } else {
                        Ok(if l > 0 { r } else { -r })
                    }
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    QbfInstance::new(exist.len(), univ.len(), terms)
}

pub fn write_qdimacs(q: &QbfInstance) -> String {
    let mut out = format!("p cnf {} {}\n", q.vars(), q.terms.len());
    let block = |from: usize, to: usize| (from..=to).map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
    if q.n_x > 0 {
        writeln!(out, "e {} 0", block(1, q.n_x)).unwrap();
    }
    if q.n_y > 0 {
        writeln!(out, "a {} 0", block(q.n_x + 1, q.vars())).unwrap();
    }
    for t in &q.terms {
        for l in t {
            write!(out, "{l} ").unwrap();
        }
        out.push_str("0\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_round_trip() {
        let text = "# a path\n3 2\n\n0 1\n1 2 # last\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g, Graph::path(3));
        let canon = write_graph(&g);
        assert_eq!(canon, "3 2\n0 1\n1 2\n");
        assert_eq!(parse_graph(&canon).unwrap(), g);
    }

    #[test]
    fn graph_errors() {
        assert!(matches!(parse_graph("2 1\n0 0\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_graph("2 2\n0 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_graph("2 1\n0 5\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_graph("x\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_graph("2 2\n0 1\n1 0\n"), Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn digraph_round_trip() {
        let d = parse_digraph("d 3 2\n0 1\n0 2\n").unwrap();
        assert_eq!(d.arc_count(), 2);
        assert_eq!(parse_digraph(&write_digraph(&d)).unwrap(), d);
        assert!(parse_digraph("3 2\n0 1\n0 2\n").is_err());
    }

    #[test]
    fn set_family_with_empty_set() {
        let text = "universe 3 count 3\n\n0 2\n0 1 2\n";
        let f = parse_set_family(text).unwrap();
        assert_eq!(f.len(), 3);
        assert!(f.contains(&VertexSet::empty(3)));
        let canon = write_set_family(&f);
        assert_eq!(canon, text);
        assert_eq!(parse_set_family(&canon).unwrap(), f);
        assert!(parse_sets("universe 3 count 1\n2 1\n").is_err());
        assert!(parse_sets("universe 3 count 1\n3\n").is_err());
        assert!(parse_sets("universe 3 count 1\n1\n2\n").is_err());
    }

    #[test]
    fn cube_round_trip() {
        let c = parse_cube("cube 3 count 2\n010\n111\n").unwrap();
        assert_eq!(write_cube(&c), "cube 3 count 2\n010\n111\n");
        assert!(parse_cube("cube 3 count 1\n01\n").is_err());
    }

    #[test]
    fn dimacs() {
        let f = parse_cnf("c comment\np cnf 3 2\n1 -2 3 0\n-1 2\n3 0\n").unwrap();
        assert_eq!(f.clauses, vec![vec![1, -2, 3], vec![-1, 2, 3]]);
        assert_eq!(parse_cnf(&write_cnf(&f)).unwrap(), f);
        assert!(parse_cnf("p cnf 2 1\n1 3 0\n").is_err());
        assert!(parse_cnf("p cnf 2 2\n1 2 0\n").is_err());
    }

    #[test]
    fn qdimacs_renumbers() {
        let q = parse_qdimacs("p cnf 3 2\ne 2 0\na 1 3 0\n2 1 3 0\n-2 -1 -3 0\n").unwrap();
        assert_eq!((q.n_x, q.n_y), (1, 2));
        assert_eq!(q.terms, vec![vec![1, 2, 3], vec![-1, -2, -3]]);
        assert_eq!(parse_qdimacs(&write_qdimacs(&q)).unwrap(), q);
        assert!(parse_qdimacs("p cnf 2 1\na 1 0\ne 2 0\n1 2 0\n").is_err());
    }
}
