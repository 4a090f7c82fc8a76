//! Finite directed multigraphs: the substrate every other module queries.
//!
//! Vertices and edges are addressed by dense indices ([`Vertex`], [`Edge`])
//! assigned in declared order, so `BTreeSet<Vertex>` iterates in the order
//! the graph document listed them.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex(pub(crate) u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(pub(crate) u32);

impl Vertex {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl Edge {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

pub type VertexSet = BTreeSet<Vertex>;
pub type EdgeSet = BTreeSet<Edge>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeRecord {
    pub id: String,
    pub src: Vertex,
    pub dst: Vertex,
}

/// On-disk graph document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeDocument>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDocument {
    pub id: String,
    pub src: String,
    pub dst: String,
}

/// A finite directed multigraph `E = (E^0, E^1, r, s)`.
#[derive(Clone, Debug)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<EdgeRecord>,
    vertex_ids: HashMap<String, Vertex>,
    edge_ids: HashMap<String, Edge>,
    out: Vec<Vec<Edge>>,
    incoming: Vec<Vec<Edge>>,
    special: Vec<Option<Edge>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for Graph {}

fn valid_id(id: &str) -> bool {
    !id.is_empty()
        && !id
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, '(' | ')' | '*' | '+' | '·'))
}

/// Number of paths, possibly infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Count {
    Finite(u64),
    Infinite,
}

impl Count {
    pub fn is_finite(self) -> bool {
        matches!(self, Count::Finite(_))
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Finite(n) => write!(f, "{n}"),
            Count::Infinite => f.write_str("infinite"),
        }
    }
}

impl Serialize for Count {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Count::Finite(n) => s.serialize_u64(*n),
            Count::Infinite => s.serialize_str("infinite"),
        }
    }
}

/// A path `e_1 … e_n`; length zero paths are vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    source: Vertex,
    range: Vertex,
    edges: Vec<Edge>,
}

impl Path {
    pub fn trivial(v: Vertex) -> Path {
        Path {
            source: v,
            range: v,
            edges: Vec::new(),
        }
    }

    pub fn source(&self) -> Vertex {
        self.source
    }

    pub fn range(&self) -> Vertex {
        self.range
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn last_edge(&self) -> Option<Edge> {
        self.edges.last().copied()
    }

    /// `self` followed by `other`; `None` unless `r(self) = s(other)`.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.range != other.source {
            return None;
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Some(Path {
            source: self.source,
            range: other.range,
            edges,
        })
    }

    /// If `self = prefix · rest`, returns `rest`.
    pub fn strip_prefix(&self, prefix: &Path) -> Option<Path> {
        if self.source != prefix.source || !self.edges.starts_with(&prefix.edges) {
            return None;
        }
        Some(Path {
            source: prefix.range,
            range: self.range,
            edges: self.edges[prefix.edges.len()..].to_vec(),
        })
    }

    /// Drops the last edge; the new range is that edge's source.
    pub fn pop(&self, g: &Graph) -> Option<Path> {
        let (last, rest) = self.edges.split_last()?;
        Some(Path {
            source: self.source,
            range: g.src(*last),
            edges: rest.to_vec(),
        })
    }

    pub fn push(&self, g: &Graph, e: Edge) -> Option<Path> {
        if g.src(e) != self.range {
            return None;
        }
        let mut edges = self.edges.clone();
        edges.push(e);
        Some(Path {
            source: self.source,
            range: g.dst(e),
            edges,
        })
    }

    /// Vertices visited, `μ^0`.
    pub fn vertices(&self, g: &Graph) -> VertexSet {
        let mut out = VertexSet::new();
        out.insert(self.source);
        out.extend(self.edges.iter().map(|&e| g.dst(e)));
        out
    }

    pub fn render(&self, g: &Graph) -> String {
        if self.edges.is_empty() {
            g.vertex_name(self.source).to_string()
        } else {
            self.edges.iter().map(|&e| g.edge_name(e)).collect()
        }
    }
}

/// A simple cycle, stored starting at its lexicographically least vertex id.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cycle {
    edges: Vec<Edge>,
}

impl Cycle {
    /// Validates `edges` as a simple cycle and rotates it to canonical form.
    pub fn new(g: &Graph, edges: Vec<Edge>) -> Result<Cycle> {
        if edges.is_empty() {
            return Err(Error::CycleNotInGraph);
        }
        let n = edges.len();
        let mut sources = VertexSet::new();
        for i in 0..n {
            let e = g
                .edges
                .get(edges[i].index())
                .ok_or(Error::CycleNotInGraph)?;
            let next = g
                .edges
                .get(edges[(i + 1) % n].index())
                .ok_or(Error::CycleNotInGraph)?;
            if e.dst != next.src || !sources.insert(e.src) {
                return Err(Error::CycleNotInGraph);
            }
        }
        Ok(Self::canonical(g, edges))
    }

    fn canonical(g: &Graph, edges: Vec<Edge>) -> Cycle {
        let start = (0..edges.len())
            .min_by(|&a, &b| {
                g.vertex_name(g.src(edges[a]))
                    .cmp(g.vertex_name(g.src(edges[b])))
            })
            .unwrap_or(0);
        let mut rotated = edges[start..].to_vec();
        rotated.extend_from_slice(&edges[..start]);
        Cycle { edges: rotated }
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn base(&self, g: &Graph) -> Vertex {
        g.src(self.edges[0])
    }

    /// `c^0`
    pub fn vertices(&self, g: &Graph) -> VertexSet {
        self.edges.iter().map(|&e| g.src(e)).collect()
    }

    /// `c^1`
    pub fn edge_set(&self) -> EdgeSet {
        self.edges.iter().copied().collect()
    }

    /// The rotation `c_u` based at `u`, as a closed path.
    pub fn rotation(&self, g: &Graph, u: Vertex) -> Option<Path> {
        let i = self.edges.iter().position(|&e| g.src(e) == u)?;
        let mut edges = self.edges[i..].to_vec();
        edges.extend_from_slice(&self.edges[..i]);
        Some(Path {
            source: u,
            range: u,
            edges,
        })
    }

    pub fn render(&self, g: &Graph) -> String {
        self.edges
            .iter()
            .map(|&e| g.edge_name(e))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn edge_names(&self, g: &Graph) -> Vec<String> {
        self.edges
            .iter()
            .map(|&e| g.edge_name(e).to_string())
            .collect()
    }
}

impl Graph {
    /// Builds a graph from declared vertex ids and `(id, src, dst)` edge triples.
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S, S)]) -> Result<Graph> {
        if vertices.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let mut vertex_ids = HashMap::new();
        let mut names = Vec::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            let v = v.as_ref();
            if !valid_id(v) {
                return Err(Error::InvalidId(v.to_string()));
            }
            if vertex_ids.insert(v.to_string(), Vertex(i as u32)).is_some() {
                return Err(Error::DuplicateId(v.to_string()));
            }
            names.push(v.to_string());
        }
        let mut edge_ids = HashMap::new();
        let mut records = Vec::with_capacity(edges.len());
        let mut out = vec![Vec::new(); names.len()];
        let mut incoming = vec![Vec::new(); names.len()];
        for (i, (id, src, dst)) in edges.iter().enumerate() {
            let id = id.as_ref();
            if !valid_id(id) {
                return Err(Error::InvalidId(id.to_string()));
            }
            if vertex_ids.contains_key(id)
                || edge_ids.insert(id.to_string(), Edge(i as u32)).is_some()
            {
                return Err(Error::DuplicateId(id.to_string()));
            }
            let lookup = |name: &str| {
                vertex_ids
                    .get(name)
                    .copied()
                    .ok_or_else(|| Error::DanglingEndpoint {
                        edge: id.to_string(),
                        vertex: name.to_string(),
                    })
            };
            let s = lookup(src.as_ref())?;
            let d = lookup(dst.as_ref())?;
            out[s.index()].push(Edge(i as u32));
            incoming[d.index()].push(Edge(i as u32));
            records.push(EdgeRecord {
                id: id.to_string(),
                src: s,
                dst: d,
            });
        }
        let special = out
            .iter()
            .map(|es| {
                es.iter()
                    .copied()
                    .min_by(|a, b| records[a.index()].id.cmp(&records[b.index()].id))
            })
            .collect();
        Ok(Graph {
            vertices: names,
            edges: records,
            vertex_ids,
            edge_ids,
            out,
            incoming,
            special,
        })
    }

    pub fn from_document(doc: &GraphDocument) -> Result<Graph> {
        let edges: Vec<(&str, &str, &str)> = doc
            .edges
            .iter()
            .map(|e| (e.id.as_str(), e.src.as_str(), e.dst.as_str()))
            .collect();
        let vertices: Vec<&str> = doc.vertices.iter().map(String::as_str).collect();
        Graph::new(&vertices, &edges)
    }

    pub fn to_document(&self) -> GraphDocument {
        GraphDocument {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeDocument {
                    id: e.id.clone(),
                    src: self.vertex_name(e.src).to_string(),
                    dst: self.vertex_name(e.dst).to_string(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_document()).expect("graph documents always serialize")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.vertices.len() as u32).map(Vertex)
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.edges.len() as u32).map(Edge)
    }

    pub fn all_vertices(&self) -> VertexSet {
        self.vertices().collect()
    }

    pub fn vertex(&self, name: &str) -> Result<Vertex> {
        self.vertex_ids
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn edge(&self, name: &str) -> Result<Edge> {
        self.edge_ids
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownEdge(name.to_string()))
    }

    pub fn vertex_set<S: AsRef<str>>(&self, names: &[S]) -> Result<VertexSet> {
        names.iter().map(|n| self.vertex(n.as_ref())).collect()
    }

    pub fn vertex_name(&self, v: Vertex) -> &str {
        &self.vertices[v.index()]
    }

    pub fn edge_name(&self, e: Edge) -> &str {
        &self.edges[e.index()].id
    }

    pub fn names(&self, set: &VertexSet) -> Vec<String> {
        set.iter()
            .map(|&v| self.vertex_name(v).to_string())
            .collect()
    }

    pub fn src(&self, e: Edge) -> Vertex {
        self.edges[e.index()].src
    }

    pub fn dst(&self, e: Edge) -> Vertex {
        self.edges[e.index()].dst
    }

    /// `s^{-1}(v)` in declared order.
    pub fn out_edges(&self, v: Vertex) -> &[Edge] {
        &self.out[v.index()]
    }

    /// `r^{-1}(v)` in declared order.
    pub fn in_edges(&self, v: Vertex) -> &[Edge] {
        &self.incoming[v.index()]
    }

    pub fn is_sink(&self, v: Vertex) -> bool {
        self.out[v.index()].is_empty()
    }

    /// The edge of `s^{-1}(v)` with the lexicographically least id; `None`
    /// at a sink.
    pub fn special_edge(&self, v: Vertex) -> Option<Edge> {
        self.special[v.index()]
    }

    pub fn is_bifurcation(&self, v: Vertex) -> bool {
        self.out[v.index()].len() >= 2
    }

    pub fn sinks(&self) -> VertexSet {
        self.vertices().filter(|&v| self.is_sink(v)).collect()
    }

    pub fn edge_path(&self, e: Edge) -> Path {
        Path {
            source: self.src(e),
            range: self.dst(e),
            edges: vec![e],
        }
    }

    /// Builds a path from consecutive edges.
    pub fn path(&self, edges: &[Edge]) -> Option<Path> {
        let (&first, _) = edges.split_first()?;
        let mut p = Path::trivial(self.src(first));
        for &e in edges {
            p = p.push(self, e)?;
        }
        Some(p)
    }

    /// Parses a path written as a vertex id or as space-separated edge ids.
    pub fn path_from_names(&self, names: &[&str]) -> Result<Path> {
        match names {
            [single] if self.vertex_ids.contains_key(*single) => {
                Ok(Path::trivial(self.vertex(single)?))
            }
            _ => {
                let edges = names
                    .iter()
                    .map(|n| self.edge(n))
                    .collect::<Result<Vec<_>>>()?;
                self.path(&edges).ok_or_else(|| {
                    Error::MalformedTerm(format!("`{}` is not a path", names.join(" ")))
                })
            }
        }
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v.index() < self.vertices.len() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(format!("#{}", v.0)))
        }
    }

    fn check_set(&self, set: &VertexSet) -> Result<()> {
        set.iter().try_for_each(|&v| self.check_vertex(v))
    }

    /// `T(v)`: everything reachable from `v`, including `v`.
    pub fn tree(&self, v: Vertex) -> Result<VertexSet> {
        self.check_vertex(v)?;
        Ok(self.tree_of_set(&std::iter::once(v).collect()))
    }

    /// Union of `T(v)` over `from`.
    pub fn tree_of_set(&self, from: &VertexSet) -> VertexSet {
        let mut seen = vec![false; self.vertex_count()];
        let mut queue: VecDeque<Vertex> = from.iter().copied().collect();
        for &v in from {
            seen[v.index()] = true;
        }
        while let Some(v) = queue.pop_front() {
            for &e in self.out_edges(v) {
                let w = self.dst(e);
                if !seen[w.index()] {
                    seen[w.index()] = true;
                    queue.push_back(w);
                }
            }
        }
        self.collect_flags(&seen)
    }

    /// Vertices that reach some member of `to` (reverse reachability).
    pub fn reaching(&self, to: &VertexSet) -> VertexSet {
        let mut seen = vec![false; self.vertex_count()];
        let mut queue: VecDeque<Vertex> = to.iter().copied().collect();
        for &v in to {
            seen[v.index()] = true;
        }
        while let Some(v) = queue.pop_front() {
            for &e in self.in_edges(v) {
                let w = self.src(e);
                if !seen[w.index()] {
                    seen[w.index()] = true;
                    queue.push_back(w);
                }
            }
        }
        self.collect_flags(&seen)
    }

    fn collect_flags(&self, flags: &[bool]) -> VertexSet {
        flags
            .iter()
            .enumerate()
            .filter(|(_, &f)| f)
            .map(|(i, _)| Vertex(i as u32))
            .collect()
    }

    /// True iff `T(v) ∩ targets ≠ ∅`.
    pub fn connects_to(&self, v: Vertex, targets: &VertexSet) -> Result<bool> {
        self.check_vertex(v)?;
        self.check_set(targets)?;
        Ok(!self.tree(v)?.is_disjoint(targets))
    }

    /// Subgraph on `keep` with every edge whose endpoints both lie in `keep`.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> Result<Graph> {
        let vertices: Vec<&str> = keep.iter().map(|&v| self.vertex_name(v)).collect();
        let edges: Vec<(&str, &str, &str)> = self
            .edges
            .iter()
            .filter(|e| keep.contains(&e.src) && keep.contains(&e.dst))
            .map(|e| {
                (
                    e.id.as_str(),
                    self.vertex_name(e.src),
                    self.vertex_name(e.dst),
                )
            })
            .collect();
        Graph::new(&vertices, &edges)
    }

    /// Components of the underlying undirected graph, ordered by first vertex.
    pub fn connected_components(&self) -> Vec<Graph> {
        let mut parent: Vec<usize> = (0..self.vertex_count()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for e in &self.edges {
            let a = find(&mut parent, e.src.index());
            let b = find(&mut parent, e.dst.index());
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: Vec<(usize, VertexSet)> = Vec::new();
        for v in self.vertices() {
            let root = find(&mut parent, v.index());
            match groups.iter_mut().find(|(r, _)| *r == root) {
                Some((_, set)) => {
                    set.insert(v);
                }
                None => groups.push((root, std::iter::once(v).collect())),
            }
        }
        groups
            .into_iter()
            .map(|(_, set)| {
                self.induced_subgraph(&set)
                    .expect("components of a valid graph are valid")
            })
            .collect()
    }

    /// Every simple cycle exactly once, canonically rotated and sorted by
    /// (length, base vertex id, edge ids).
    pub fn simple_cycles(&self) -> Vec<Cycle> {
        let n = self.vertex_count();
        let mut found = Vec::new();
        let mut on_path = vec![false; n];
        let mut stack: Vec<Edge> = Vec::new();
        // Each cycle is found once, from its vertex of least index.
        for start in 0..n {
            on_path[start] = true;
            self.cycle_search(start, start, &mut on_path, &mut stack, &mut found);
            on_path[start] = false;
        }
        let mut cycles: Vec<Cycle> = found
            .into_iter()
            .map(|edges| Cycle::canonical(self, edges))
            .collect();
        cycles.sort_by(|a, b| self.cycle_key(a).cmp(&self.cycle_key(b)));
        cycles
    }

    fn cycle_search(
        &self,
        start: usize,
        at: usize,
        on_path: &mut [bool],
        stack: &mut Vec<Edge>,
        found: &mut Vec<Vec<Edge>>,
    ) {
        for &e in &self.out[at] {
            let w = self.dst(e).index();
            if w == start {
                stack.push(e);
                found.push(stack.clone());
                stack.pop();
            } else if w > start && !on_path[w] {
                on_path[w] = true;
                stack.push(e);
                self.cycle_search(start, w, on_path, stack, found);
                stack.pop();
                on_path[w] = false;
            }
        }
    }

    fn cycle_key<'a>(&'a self, c: &Cycle) -> (usize, &'a str, Vec<&'a str>) {
        (
            c.len(),
            self.vertex_name(c.base(self)),
            c.edges().iter().map(|&e| self.edge_name(e)).collect(),
        )
    }

    /// Vertices lying on at least one cycle.
    pub fn cycle_vertices(&self) -> VertexSet {
        // v lies on a cycle iff it reaches itself by a path of positive length.
        self.vertices()
            .filter(|&v| {
                let next: VertexSet = self.out_edges(v).iter().map(|&e| self.dst(e)).collect();
                self.tree_of_set(&next).contains(&v)
            })
            .collect()
    }

    /// Edges `e ∉ c^1` with `s(e) ∈ c^0`.
    pub fn cycle_exits(&self, c: &Cycle) -> Result<EdgeSet> {
        Cycle::new(self, c.edges().to_vec())?;
        let members = c.edge_set();
        Ok(c.vertices(self)
            .iter()
            .flat_map(|&v| self.out_edges(v).iter().copied())
            .filter(|e| !members.contains(e))
            .collect())
    }

    /// Paths (length zero included) ending in `targets` and avoiding
    /// `forbidden` edges.
    pub fn count_paths_into(&self, targets: &VertexSet, forbidden: &EdgeSet) -> Result<Count> {
        self.check_set(targets)?;
        if let Some(e) = forbidden.iter().find(|e| e.index() >= self.edge_count()) {
            return Err(Error::UnknownEdge(format!("#{}", e.0)));
        }
        let succ: Vec<Vec<usize>> = self
            .vertices()
            .map(|v| {
                self.out_edges(v)
                    .iter()
                    .filter(|e| !forbidden.contains(e))
                    .map(|&e| self.dst(e).index())
                    .collect()
            })
            .collect();
        let mut is_target = vec![false; self.vertex_count()];
        for &t in targets {
            is_target[t.index()] = true;
        }
        Ok(count_paths(&succ, &is_target))
    }

    /// Every path of length at most `max_len`, ordered by length, then
    /// source, then edge sequence.
    pub fn paths_up_to(&self, max_len: usize) -> Vec<Path> {
        let mut all: Vec<Path> = self.vertices().map(Path::trivial).collect();
        let mut frontier = all.clone();
        for _ in 0..max_len {
            let mut next = Vec::new();
            for p in &frontier {
                for &e in self.out_edges(p.range()) {
                    next.push(p.push(self, e).expect("edge leaves the path's range"));
                }
            }
            next.sort_by(|a, b| (a.source, &a.edges).cmp(&(b.source, &b.edges)));
            all.extend(next.iter().cloned());
            frontier = next;
        }
        all
    }
}

/// Counts walks ending at a target in an abstract digraph given by successor
/// lists (parallel arcs repeated). `Infinite` iff a directed cycle lies inside
/// the part that reaches a target.
pub(crate) fn count_paths(succ: &[Vec<usize>], is_target: &[bool]) -> Count {
    count_walks(succ, is_target, &vec![true; succ.len()])
}

/// As [`count_paths`], counting only walks that start at an `is_start` node.
pub(crate) fn count_walks(succ: &[Vec<usize>], is_target: &[bool], is_start: &[bool]) -> Count {
    let n = succ.len();
    let mut pred: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (v, ws) in succ.iter().enumerate() {
        for &w in ws {
            pred[w].push(v);
        }
    }
    let mut reached = is_start.to_vec();
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| is_start[v]).collect();
    while let Some(v) = queue.pop_front() {
        for &w in &succ[v] {
            if !reached[w] {
                reached[w] = true;
                queue.push_back(w);
            }
        }
    }
    let mut relevant: Vec<bool> = (0..n).map(|v| is_target[v] && reached[v]).collect();
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| relevant[v]).collect();
    while let Some(v) = queue.pop_front() {
        for &u in &pred[v] {
            if reached[u] && !relevant[u] {
                relevant[u] = true;
                queue.push_back(u);
            }
        }
    }
    // Kahn's algorithm on the relevant part, counting from the far end.
    let mut outdeg = vec![0usize; n];
    for v in (0..n).filter(|&v| relevant[v]) {
        outdeg[v] = succ[v].iter().filter(|&&w| relevant[w]).count();
    }
    let mut ready: VecDeque<usize> = (0..n).filter(|&v| relevant[v] && outdeg[v] == 0).collect();
    let mut paths_from = vec![0u64; n];
    let mut done = 0usize;
    while let Some(v) = ready.pop_front() {
        done += 1;
        let mut total = u64::from(is_target[v]);
        for &w in succ[v].iter().filter(|&&w| relevant[w]) {
            total = total.saturating_add(paths_from[w]);
        }
        paths_from[v] = total;
        for &u in &pred[v] {
            if relevant[u] {
                outdeg[u] -= 1;
                if outdeg[u] == 0 {
                    ready.push_back(u);
                }
            }
        }
    }
    if done < relevant.iter().filter(|&&r| r).count() {
        return Count::Infinite;
    }
    Count::Finite(
        (0..n)
            .filter(|&v| is_start[v])
            .fold(0u64, |acc, v| acc.saturating_add(paths_from[v])),
    )
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let doc: GraphDocument =
        serde_json::from_str(text).map_err(|e| Error::MalformedDocument(e.to_string()))?;
    Graph::from_document(&doc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn set(g: &Graph, names: &[&str]) -> VertexSet {
        g.vertex_set(names).unwrap()
    }

    #[test]
    fn parses_fixtures() {
        let g = fixtures::loop_graph();
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 1));
        let g = fixtures::line3();
        assert_eq!((g.vertex_count(), g.edge_count()), (3, 2));
        assert_eq!(g.vertex_name(Vertex(0)), "v1");
    }

    #[test]
    fn rejects_bad_documents() {
        let dangling = r#"{"vertices":["v"],"edges":[{"id":"e","src":"v","dst":"w"}]}"#;
        assert_eq!(
            parse_graph(dangling),
            Err(Error::DanglingEndpoint {
                edge: "e".into(),
                vertex: "w".into()
            })
        );
        let dup = r#"{"vertices":["v","v"],"edges":[]}"#;
        assert_eq!(parse_graph(dup), Err(Error::DuplicateId("v".into())));
        let clash = r#"{"vertices":["v"],"edges":[{"id":"v","src":"v","dst":"v"}]}"#;
        assert_eq!(parse_graph(clash), Err(Error::DuplicateId("v".into())));
        assert_eq!(
            parse_graph(r#"{"vertices":[],"edges":[]}"#),
            Err(Error::EmptyGraph)
        );
        assert!(matches!(parse_graph("{"), Err(Error::MalformedDocument(_))));
        assert!(matches!(
            parse_graph(r#"{"vertices":["a b"],"edges":[]}"#),
            Err(Error::InvalidId(_))
        ));
        assert!(matches!(
            parse_graph(r#"{"vertices":["v"],"edges":[],"extra":1}"#),
            Err(Error::MalformedDocument(_))
        ));
    }

    #[test]
    fn document_round_trip() {
        let g = fixtures::ext2();
        assert_eq!(parse_graph(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn trees() {
        let g = fixtures::line3();
        assert_eq!(g.tree(g.vertex("v3").unwrap()).unwrap(), set(&g, &["v3"]));
        let g = fixtures::toeplitz();
        assert_eq!(
            g.tree(g.vertex("u").unwrap()).unwrap(),
            set(&g, &["u", "v"])
        );
        let g = fixtures::ext2();
        assert_eq!(
            g.tree(g.vertex("w").unwrap()).unwrap(),
            set(&g, &["u", "w"])
        );
        assert!(g.tree(Vertex(9)).is_err());
    }

    #[test]
    fn connectivity() {
        let g = fixtures::toeplitz();
        let u = g.vertex("u").unwrap();
        assert!(g.connects_to(u, &set(&g, &["v"])).unwrap());
        assert!(g.connects_to(u, &set(&g, &["u"])).unwrap());
        let g = fixtures::cwe();
        assert!(!g
            .connects_to(g.vertex("z").unwrap(), &set(&g, &["w"]))
            .unwrap());
    }

    #[test]
    fn components() {
        assert_eq!(fixtures::loop_graph().connected_components().len(), 1);
        let parts = fixtures::loop_line3().connected_components();
        let sizes: Vec<usize> = parts.iter().map(Graph::vertex_count).collect();
        assert_eq!(sizes, vec![1, 3]);
        assert_eq!(
            fixtures::toeplitz().connected_components(),
            vec![fixtures::toeplitz()]
        );
    }

    #[test]
    fn cycles_and_exits() {
        assert!(fixtures::line3().simple_cycles().is_empty());
        let g = fixtures::ext2();
        let cycles = g.simple_cycles();
        let rendered: Vec<String> = cycles.iter().map(|c| c.render(&g)).collect();
        assert_eq!(rendered, vec!["e", "f g"]);
        assert_eq!(
            g.cycle_exits(&cycles[0]).unwrap(),
            [g.edge("f").unwrap()].into()
        );
        let g = fixtures::r2();
        let rendered: Vec<String> = g.simple_cycles().iter().map(|c| c.render(&g)).collect();
        assert_eq!(rendered, vec!["e1", "e2"]);
        let g = fixtures::loop_graph();
        assert!(g.cycle_exits(&g.simple_cycles()[0]).unwrap().is_empty());
        let g = fixtures::toeplitz();
        let c = &g.simple_cycles()[0];
        assert_eq!(g.cycle_exits(c).unwrap(), [g.edge("f").unwrap()].into());
    }

    #[test]
    fn canonical_rotation_starts_at_least_id() {
        let g = Graph::new(
            &["b", "a", "c"],
            &[("x", "b", "c"), ("y", "c", "a"), ("z", "a", "b")],
        )
        .unwrap();
        let c = &g.simple_cycles()[0];
        assert_eq!(g.vertex_name(c.base(&g)), "a");
        assert_eq!(c.render(&g), "z x y");
        let again = Cycle::new(
            &g,
            vec![
                g.edge("y").unwrap(),
                g.edge("z").unwrap(),
                g.edge("x").unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(&again, c);
        assert!(Cycle::new(&g, vec![g.edge("x").unwrap()]).is_err());
    }

    #[test]
    fn path_counts() {
        let g = fixtures::line3();
        assert_eq!(
            g.count_paths_into(&set(&g, &["v3"]), &EdgeSet::new())
                .unwrap(),
            Count::Finite(3)
        );
        let g = fixtures::toeplitz();
        assert_eq!(
            g.count_paths_into(&set(&g, &["v"]), &EdgeSet::new())
                .unwrap(),
            Count::Infinite
        );
        let g = fixtures::loop_graph();
        let c = g.edge("c").unwrap();
        assert_eq!(
            g.count_paths_into(&set(&g, &["v"]), &[c].into()).unwrap(),
            Count::Finite(1)
        );
    }

    #[test]
    fn path_helpers() {
        let g = fixtures::line3();
        let p = g.path_from_names(&["e1", "e2"]).unwrap();
        assert_eq!(p.render(&g), "e1e2");
        assert_eq!(p.range(), g.vertex("v3").unwrap());
        let e1 = g.path_from_names(&["e1"]).unwrap();
        assert_eq!(p.strip_prefix(&e1).unwrap().render(&g), "e2");
        assert!(g.path_from_names(&["e2", "e1"]).is_err());
        assert_eq!(g.paths_up_to(2).len(), 3 + 2 + 1);
    }
}
