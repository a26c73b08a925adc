//! Simple undirected graphs, BFS metrics, geodesic intervals and convex hulls.

use std::collections::VecDeque;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::vset::VertexSet;

/// Simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Graph", 2)?;
        st.serialize_field("n", &self.n())?;
        st.serialize_field("edges", &self.edges().collect::<Vec<_>>())?;
        st.end()
    }
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
        }
    }

    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Result<Self> {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least three vertices");
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).expect("valid edge");
            }
        }
        g
    }

    /// The `d`-dimensional hypercube; vertex `i` has coordinates given by its bits.
    pub fn hypercube(d: usize) -> Self {
        let n = 1usize << d;
        let mut g = Graph::new(n);
        for u in 0..n {
            for b in 0..d {
                let v = u ^ (1 << b);
                if u < v {
                    g.add_edge(u, v).expect("valid edge");
                }
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    /// Adds `u–v`; returns false if the edge already existed.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        let n = self.n();
        if u >= n || v >= n {
            return Err(Error::InvalidGraph(format!("edge {u}-{v} outside 0..{n}")));
        }
        if u == v {
            return Err(Error::InvalidGraph(format!("self-loop at {u}")));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Ok(false),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                Ok(true)
            }
        }
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    /// BFS distances from `source`; `None` marks unreachable vertices.
    pub fn bfs(&self, source: usize) -> Vec<Option<u32>> {
        self.bfs_within(source, None)
    }

    /// BFS restricted to the subgraph induced by `within` (when given).
    pub fn bfs_within(&self, source: usize, within: Option<&VertexSet>) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.n()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].expect("queued vertices are reached");
            for &w in &self.adj[u] {
                if dist[w].is_none() && within.is_none_or(|s| s.contains(w)) {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.bfs(0).iter().all(Option::is_some)
    }

    pub fn is_bipartite(&self) -> bool {
        let mut side: Vec<Option<bool>> = vec![None; self.n()];
        for start in 0..self.n() {
            if side[start].is_some() {
                continue;
            }
            side[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let su = side[u].unwrap();
                for &w in &self.adj[u] {
                    match side[w] {
                        None => {
                            side[w] = Some(!su);
                            queue.push_back(w);
                        }
                        Some(sw) if sw == su => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    pub fn distances(&self) -> DistanceMatrix {
        let n = self.n();
        let mut data = Vec::with_capacity(n * n);
        for s in 0..n {
            data.extend(self.bfs(s));
        }
        DistanceMatrix { n, data }
    }

    /// Largest finite distance, or `None` if the graph is disconnected.
    pub fn diameter(&self) -> Option<u32> {
        let mut best = 0;
        for s in 0..self.n() {
            for d in self.bfs(s) {
                best = best.max(d?);
            }
        }
        Some(best)
    }

    /// Number of distinct shortest `u`–`v` paths (saturating), 0 if unreachable.
    pub fn count_shortest_paths(&self, u: usize, v: usize) -> u128 {
        let n = self.n();
        let mut dist: Vec<Option<u32>> = vec![None; n];
        let mut count = vec![0u128; n];
        dist[u] = Some(0);
        count[u] = 1;
        let mut queue = VecDeque::from([u]);
        while let Some(a) = queue.pop_front() {
            let da = dist[a].unwrap();
            if Some(da) >= dist[v] && dist[v].is_some() {
                break;
            }
            for &b in &self.adj[a] {
                match dist[b] {
                    None => {
                        dist[b] = Some(da + 1);
                        count[b] = count[a];
                        queue.push_back(b);
                    }
                    Some(db) if db == da + 1 => count[b] = count[b].saturating_add(count[a]),
                    _ => {}
                }
            }
        }
        count[v]
    }

    /// Subgraph induced by `s`, with the map from new to old vertex ids.
    pub fn induced(&self, s: &VertexSet) -> (Graph, Vec<usize>) {
        let old: Vec<usize> = s.iter().collect();
        let mut new_of = vec![usize::MAX; self.n()];
        for (i, &v) in old.iter().enumerate() {
            new_of[v] = i;
        }
        let mut h = Graph::new(old.len());
        for (i, &v) in old.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = new_of[w];
                if j != usize::MAX && i < j {
                    h.add_edge(i, j).expect("induced edge");
                }
            }
        }
        (h, old)
    }
}

/// All-pairs BFS distances with an explicit unreachable marker (`None`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<Option<u32>>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> Option<u32> {
        self.data[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[Option<u32>] {
        &self.data[u * self.n..(u + 1) * self.n]
    }
}

/// A graph bundled with its distance matrix; the entry point for interval,
/// hull and isometry queries.
#[derive(Debug, Clone)]
pub struct Geodesics {
    graph: Graph,
    dist: DistanceMatrix,
    connected: bool,
}

impl Geodesics {
    pub fn new(graph: Graph) -> Self {
        let dist = graph.distances();
        let connected = dist.data.iter().all(Option::is_some);
        Geodesics {
            graph,
            dist,
            connected,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn distances(&self) -> &DistanceMatrix {
        &self.dist
    }

    pub fn dist(&self, u: usize, v: usize) -> Option<u32> {
        self.dist.get(u, v)
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    fn require_connected(&self) -> Result<()> {
        if self.connected {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    /// Vertices on at least one shortest `u`–`v` path.
    pub fn interval(&self, u: usize, v: usize) -> Result<VertexSet> {
        let duv = self.dist(u, v).ok_or(Error::Unreachable { u, v })?;
        let mut out = VertexSet::empty(self.n());
        let (ru, rv) = (self.dist.row(u), self.dist.row(v));
        for w in 0..self.n() {
            if let (Some(a), Some(b)) = (ru[w], rv[w]) {
                if a + b == duv {
                    out.insert(w);
                }
            }
        }
        Ok(out)
    }

    /// Smallest convex superset of `s`.
    pub fn conv(&self, s: &VertexSet) -> Result<VertexSet> {
        self.require_connected()?;
        Ok(self.conv_extend(&VertexSet::empty(self.n()), s.iter()))
    }

    /// `conv(base ∪ extra)` for a convex `base`; only pairs touching new
    /// vertices are scanned.
    pub(crate) fn conv_extend<I: IntoIterator<Item = usize>>(&self, base: &VertexSet, extra: I) -> VertexSet {
        let mut hull = base.clone();
        let mut processed: Vec<usize> = base.iter().collect();
        let mut queue: Vec<usize> = Vec::new();
        for w in extra {
            if hull.insert(w) {
                queue.push(w);
            }
        }
        while let Some(w) = queue.pop() {
            let rw = self.dist.row(w);
            for &p in &processed {
                let dwp = rw[p].expect("connected");
                let rp = self.dist.row(p);
                for t in 0..self.n() {
                    if !hull.contains(t) && rw[t].unwrap() + rp[t].unwrap() == dwp {
                        hull.insert(t);
                        queue.push(t);
                    }
                }
            }
            processed.push(w);
        }
        hull
    }

    pub fn is_convex(&self, s: &VertexSet) -> Result<bool> {
        self.require_connected()?;
        let members: Vec<usize> = s.iter().collect();
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                if !self.interval(u, v)?.is_subset(s) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// True iff the subgraph induced by `s` preserves all distances between
    /// members of `s`.
    pub fn is_isometric(&self, s: &VertexSet) -> bool {
        self.first_violation(s).is_none()
    }

    /// Some pair of `s` whose induced distance exceeds its distance in the
    /// whole graph, if any.
    pub fn first_violation(&self, s: &VertexSet) -> Option<(usize, usize)> {
        let members: Vec<usize> = s.iter().collect();
        for &u in &members {
            let local = self.graph.bfs_within(u, Some(s));
            for &v in &members {
                if v > u && local[v] != self.dist(u, v) {
                    return Some((u, v));
                }
            }
        }
        None
    }

    /// Every violated pair `(u, v, excess)` of `s` with `u < v`; `excess` is
    /// the induced minus the true distance, with `u32::MAX` standing for
    /// "disconnected inside `s`".
    pub fn violations(&self, s: &VertexSet) -> Vec<(usize, usize, u32)> {
        let members: Vec<usize> = s.iter().collect();
        let mut out = Vec::new();
        for &u in &members {
            let local = self.graph.bfs_within(u, Some(s));
            for &v in &members {
                if v <= u {
                    continue;
                }
                let truth = self.dist(u, v);
                if local[v] != truth {
                    let excess = match (local[v], truth) {
                        (Some(a), Some(b)) => a - b,
                        _ => u32::MAX,
                    };
                    out.push((u, v, excess));
                }
            }
        }
        out
    }

    pub fn count_shortest_paths(&self, u: usize, v: usize) -> u128 {
        self.graph.count_shortest_paths(u, v)
    }

    /// Isometric embedding into a hypercube, or `None` if the graph is not a
    /// partial cube. Coordinates are the Djoković–Winkler classes.
    pub fn hypercube_embedding(&self) -> Option<CubeEmbedding> {
        if !self.connected || !self.graph.is_bipartite() {
            return None;
        }
        let edges: Vec<(usize, usize)> = self.graph.edges().collect();
        let d = |a: usize, b: usize| self.dist(a, b).unwrap() as i64;
        let mut uf = UnionFind::new(edges.len());
        for (i, &(a, b)) in edges.iter().enumerate() {
            for (j, &(x, y)) in edges.iter().enumerate().skip(i + 1) {
                if d(a, x) + d(b, y) != d(a, y) + d(b, x) {
                    uf.union(i, j);
                }
            }
        }
        let mut class_of_root = std::collections::BTreeMap::new();
        let mut representatives = Vec::new();
        for (i, &e) in edges.iter().enumerate() {
            let root = uf.find(i);
            class_of_root.entry(root).or_insert_with(|| {
                representatives.push(e);
                representatives.len() - 1
            });
        }
        let dim = representatives.len();
        let coords: Vec<VertexSet> = (0..self.n())
            .map(|v| {
                let mut c = VertexSet::empty(dim);
                for (k, &(a, b)) in representatives.iter().enumerate() {
                    if d(v, b) < d(v, a) {
                        c.insert(k);
                    }
                }
                c
            })
            .collect();
        let emb = CubeEmbedding {
            dimension: dim,
            coordinates: coords,
        };
        for u in 0..self.n() {
            for v in u + 1..self.n() {
                if emb.hamming(u, v) as i64 != d(u, v) {
                    return None;
                }
            }
        }
        Some(emb)
    }
}

/// Binary coordinates for each vertex; bit `e` of `coordinates[v]` is the
/// value of coordinate `e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeEmbedding {
    pub dimension: usize,
    pub coordinates: Vec<VertexSet>,
}

impl CubeEmbedding {
    pub fn hamming(&self, u: usize, v: usize) -> usize {
        let (a, b) = (&self.coordinates[u], &self.coordinates[v]);
        a.difference_len(b) + b.difference_len(a)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut x = x;
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Directed graph without self-loops.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Digraph {
    out: Vec<Vec<usize>>,
}

impl Digraph {
    pub fn new(n: usize) -> Self {
        Digraph {
            out: vec![Vec::new(); n],
        }
    }

    pub fn from_arcs<I: IntoIterator<Item = (usize, usize)>>(n: usize, arcs: I) -> Result<Self> {
        let mut d = Digraph::new(n);
        for (u, v) in arcs {
            d.add_arc(u, v)?;
        }
        Ok(d)
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn add_arc(&mut self, u: usize, v: usize) -> Result<bool> {
        let n = self.n();
        if u >= n || v >= n {
            return Err(Error::InvalidGraph(format!("arc {u}->{v} outside 0..{n}")));
        }
        if u == v {
            return Err(Error::InvalidGraph(format!("self-loop at {u}")));
        }
        match self.out[u].binary_search(&v) {
            Ok(_) => Ok(false),
            Err(pos) => {
                self.out[u].insert(pos, v);
                Ok(true)
            }
        }
    }

    /// Arcs sorted lexicographically.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v)))
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    /// `{v} ∪ {u : u → v}`.
    pub fn closed_in_neighborhood(&self, v: usize) -> VertexSet {
        let mut s = VertexSet::singleton(self.n(), v);
        for (u, outs) in self.out.iter().enumerate() {
            if outs.binary_search(&v).is_ok() {
                s.insert(u);
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, m: &[usize]) -> VertexSet {
        VertexSet::from_members(n, m.iter().copied()).unwrap()
    }

    #[test]
    fn path_and_cycle_distances() {
        let p = Geodesics::new(Graph::path(3));
        assert_eq!(p.dist(0, 2), Some(2));
        assert_eq!(p.dist(1, 1), Some(0));
        let c6 = Geodesics::new(Graph::cycle(6));
        assert_eq!(c6.dist(0, 3), Some(3));
    }

    #[test]
    fn unreachable_is_none() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        let geo = Geodesics::new(g);
        assert_eq!(geo.dist(0, 2), None);
        assert_eq!(geo.interval(0, 2), Err(Error::Unreachable { u: 0, v: 2 }));
        assert_eq!(geo.conv(&set(3, &[0])), Err(Error::Disconnected));
    }

    #[test]
    fn rejects_loops_and_ranges() {
        assert!(Graph::from_edges(2, [(0, 0)]).is_err());
        assert!(Graph::from_edges(2, [(0, 2)]).is_err());
        let mut g = Graph::new(2);
        assert!(g.add_edge(0, 1).unwrap());
        assert!(!g.add_edge(1, 0).unwrap());
        assert_eq!(g.m(), 1);
    }

    #[test]
    fn intervals() {
        let c4 = Geodesics::new(Graph::cycle(4));
        assert_eq!(c4.interval(0, 2).unwrap(), VertexSet::full(4));
        assert_eq!(c4.interval(1, 1).unwrap(), set(4, &[1]));
        let p4 = Geodesics::new(Graph::path(4));
        assert_eq!(p4.interval(0, 3).unwrap(), VertexSet::full(4));
    }

    #[test]
    fn conv_examples() {
        let c4 = Geodesics::new(Graph::cycle(4));
        assert_eq!(c4.conv(&set(4, &[0, 2])).unwrap(), VertexSet::full(4));
        assert_eq!(c4.conv(&set(4, &[3])).unwrap(), set(4, &[3]));
        let k5 = Geodesics::new(Graph::complete(5));
        let s = set(5, &[0, 3, 4]);
        assert_eq!(k5.conv(&s).unwrap(), s);
        assert!(c4.conv(&VertexSet::empty(4)).unwrap().is_empty());
    }

    #[test]
    fn convexity_and_isometry() {
        let c4 = Geodesics::new(Graph::cycle(4));
        assert!(!c4.is_convex(&set(4, &[0, 1, 2])).unwrap());
        assert!(c4.is_convex(&set(4, &[2])).unwrap());
        assert!(c4.is_convex(&VertexSet::full(4)).unwrap());
        assert!(c4.is_isometric(&set(4, &[0, 1, 2])));
        assert!(c4.is_isometric(&VertexSet::full(4)));
        assert!(!c4.is_isometric(&set(4, &[0, 2])));
        let c6 = Geodesics::new(Graph::cycle(6));
        assert!(!c6.is_isometric(&set(6, &[0, 1, 2, 3, 4])));
    }

    #[test]
    fn shortest_path_counts() {
        assert_eq!(Graph::path(5).count_shortest_paths(0, 4), 1);
        assert_eq!(Graph::cycle(4).count_shortest_paths(0, 2), 2);
        assert_eq!(Graph::hypercube(3).count_shortest_paths(0, 7), 6);
        assert_eq!(Graph::path(3).count_shortest_paths(1, 1), 1);
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(g.count_shortest_paths(0, 2), 0);
    }

    #[test]
    fn partial_cube_embeddings() {
        let edge = Geodesics::new(Graph::path(2)).hypercube_embedding().unwrap();
        assert_eq!(edge.dimension, 1);
        assert_ne!(edge.coordinates[0], edge.coordinates[1]);
        assert_eq!(Geodesics::new(Graph::cycle(4)).hypercube_embedding().unwrap().dimension, 2);
        assert_eq!(Geodesics::new(Graph::hypercube(3)).hypercube_embedding().unwrap().dimension, 3);
        assert_eq!(Geodesics::new(Graph::cycle(6)).hypercube_embedding().unwrap().dimension, 3);
        assert!(Geodesics::new(Graph::complete(3)).hypercube_embedding().is_none());
        // K_{2,3} is bipartite but not a partial cube.
        let k23 = Graph::from_edges(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        assert!(Geodesics::new(k23).hypercube_embedding().is_none());
    }

    #[test]
    fn closed_in_neighborhoods() {
        let d = Digraph::from_arcs(3, [(1, 2), (1, 0)]).unwrap();
        assert_eq!(d.closed_in_neighborhood(2), set(3, &[1, 2]));
        assert_eq!(d.closed_in_neighborhood(1), set(3, &[1]));
    }
}
