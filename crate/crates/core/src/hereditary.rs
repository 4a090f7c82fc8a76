//! Hereditary and saturated vertex sets, first-entry paths `F_E(H)`, the
//! restriction graph `_H E`, density and vertex resolution.

use serde::Serialize;

use crate::engine::{Algebra, Element, Field};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Path, Vertex, VertexSet};

/// A vertex subset together with its (computed) closure flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HereditarySet {
    members: VertexSet,
    hereditary: bool,
    saturated: bool,
}

impl HereditarySet {
    pub fn new(g: &Graph, members: VertexSet) -> Result<HereditarySet> {
        if let Some(v) = members.iter().find(|v| v.index() >= g.vertex_count()) {
            return Err(Error::UnknownVertex(format!("#{}", v.index())));
        }
        let hereditary = members
            .iter()
            .all(|&v| g.out_edges(v).iter().all(|&e| members.contains(&g.dst(e))));
        let saturated = !g.vertices().any(|v| {
            !members.contains(&v)
                && !g.is_sink(v)
                && g.out_edges(v).iter().all(|&e| members.contains(&g.dst(e)))
        });
        Ok(HereditarySet {
            members,
            hereditary,
            saturated,
        })
    }

    pub fn from_names<S: AsRef<str>>(g: &Graph, names: &[S]) -> Result<HereditarySet> {
        HereditarySet::new(g, g.vertex_set(names)?)
    }

    pub fn members(&self) -> &VertexSet {
        &self.members
    }

    pub fn into_members(self) -> VertexSet {
        self.members
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.members.contains(&v)
    }

    pub fn is_hereditary(&self) -> bool {
        self.hereditary
    }

    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    fn require_hereditary(&self) -> Result<()> {
        if self.hereditary {
            Ok(())
        } else {
            Err(Error::NotHereditary)
        }
    }
}

/// `F_E(H)`, or the marker that it is infinite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EntryPaths {
    Finite(Vec<Path>),
    Infinite,
}

impl EntryPaths {
    pub fn is_finite(&self) -> bool {
        matches!(self, EntryPaths::Finite(_))
    }

    pub fn finite(&self) -> Option<&[Path]> {
        match self {
            EntryPaths::Finite(p) => Some(p),
            EntryPaths::Infinite => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryPathSet {
    pub target: HereditarySet,
    pub paths: EntryPaths,
}

pub fn hereditary_closure(g: &Graph, seed: &VertexSet) -> Result<HereditarySet> {
    if let Some(v) = seed.iter().find(|v| v.index() >= g.vertex_count()) {
        return Err(Error::UnknownVertex(format!("#{}", v.index())));
    }
    HereditarySet::new(g, g.tree_of_set(seed))
}

/// Λ-iteration: passes over the vertices in declared order until a full
/// pass adjoins nothing.
fn saturate(g: &Graph, start: &VertexSet) -> VertexSet {
    let mut members = start.clone();
    loop {
        let mut changed = false;
        for v in g.vertices() {
            if members.contains(&v) || g.is_sink(v) {
                continue;
            }
            if g.out_edges(v).iter().all(|&e| members.contains(&g.dst(e))) {
                members.insert(v);
                changed = true;
            }
        }
        if !changed {
            return members;
        }
    }
}

/// `H̄`: the least hereditary saturated superset of a hereditary `H`.
pub fn saturated_closure(g: &Graph, h: &HereditarySet) -> Result<HereditarySet> {
    h.require_hereditary()?;
    let members = saturate(g, &h.members);
    HereditarySet::new(g, members)
}

/// Hereditary and saturated closure of an arbitrary vertex set.
pub fn hs_closure(g: &Graph, seed: &VertexSet) -> Result<HereditarySet> {
    saturated_closure(g, &hereditary_closure(g, seed)?)
}

/// First-entry paths into a hereditary `H`.
pub fn entry_paths(g: &Graph, h: &HereditarySet) -> Result<EntryPathSet> {
    h.require_hereditary()?;
    let paths = first_entry_paths(g, h.members());
    Ok(EntryPathSet {
        target: h.clone(),
        paths,
    })
}

/// `F_E(H)` for any vertex set closed under successors (e.g. `c^0` of a cycle
/// without exits).
pub(crate) fn first_entry_paths(g: &Graph, h: &VertexSet) -> EntryPaths {
    let outside: VertexSet = g.reaching(h).difference(h).copied().collect();
    // A cycle touching `outside` cannot meet the hereditary set, so it
    // feeds `H` infinitely often.
    if !outside.is_disjoint(&g.cycle_vertices()) {
        return EntryPaths::Infinite;
    }
    let mut found = Vec::new();
    for &v in &outside {
        extend_entry(g, h, &outside, Path::trivial(v), &mut found);
    }
    EntryPaths::Finite(found)
}

fn extend_entry(
    g: &Graph,
    h: &VertexSet,
    outside: &VertexSet,
    prefix: Path,
    found: &mut Vec<Path>,
) {
    for &e in g.out_edges(prefix.range()) {
        let w = g.dst(e);
        if h.contains(&w) {
            found.push(prefix.push(g, e).expect("edge leaves the prefix range"));
        } else if outside.contains(&w) {
            let next = prefix.push(g, e).expect("edge leaves the prefix range");
            extend_entry(g, h, outside, next, found);
        }
    }
}

/// `_H E` with the bookkeeping needed to map its generators back into `L_K(E)`.
#[derive(Clone, Debug)]
pub struct RestrictionGraph {
    pub graph: Graph,
    /// `H` itself, as vertices of the ambient graph.
    pub base: VertexSet,
    /// Each `α ∈ F_E(H)` in order; vertex `[α]` and edge `ᾱ` of `graph`
    /// correspond to the same index.
    pub entry_paths: Vec<Path>,
}

impl RestrictionGraph {
    pub fn path_vertex_name(g: &Graph, alpha: &Path) -> String {
        format!("[{}]", alpha.render(g))
    }

    pub fn bar_edge_name(g: &Graph, alpha: &Path) -> String {
        format!("<{}>", alpha.render(g))
    }
}

/// Builds `_H E`: vertices `H ∪ F_E(H)`, edges with source in `H`, plus one
/// edge `ᾱ: [α] → r(α)` per entry path.
pub fn restriction_graph(g: &Graph, h: &HereditarySet) -> Result<RestrictionGraph> {
    let entry = entry_paths(g, h)?;
    let alphas = match entry.paths {
        EntryPaths::Finite(p) => p,
        EntryPaths::Infinite => return Err(Error::InfiniteEntryPaths),
    };
    let mut vertices: Vec<String> = h
        .members()
        .iter()
        .map(|&v| g.vertex_name(v).to_string())
        .collect();
    vertices.extend(
        alphas
            .iter()
            .map(|a| RestrictionGraph::path_vertex_name(g, a)),
    );
    let mut edges: Vec<(String, String, String)> = g
        .edges()
        .filter(|&e| h.contains(g.src(e)))
        .map(|e| {
            (
                g.edge_name(e).to_string(),
                g.vertex_name(g.src(e)).to_string(),
                g.vertex_name(g.dst(e)).to_string(),
            )
        })
        .collect();
    edges.extend(alphas.iter().map(|a| {
        (
            RestrictionGraph::bar_edge_name(g, a),
            RestrictionGraph::path_vertex_name(g, a),
            g.vertex_name(a.range()).to_string(),
        )
    }));
    Ok(RestrictionGraph {
        graph: Graph::new(&vertices, &edges)?,
        base: h.members().clone(),
        entry_paths: alphas,
    })
}

/// `I(H)` is dense iff every vertex connects to `H`.
pub fn is_dense_ideal(g: &Graph, h: &HereditarySet) -> Result<bool> {
    h.require_hereditary()?;
    Ok(g.reaching(h.members()).len() == g.vertex_count())
}

/// Paths `α_i` with `r(α_i) ∈ H` and `Σ α_i α_i* = v`.
pub fn resolve_vertex(g: &Graph, v: Vertex, h: &HereditarySet) -> Result<Vec<Path>> {
    h.require_hereditary()?;
    if v.index() >= g.vertex_count() {
        return Err(Error::UnknownVertex(format!("#{}", v.index())));
    }
    let closure = saturate(g, h.members());
    if !closure.contains(&v) {
        return Err(Error::OutsideClosure(g.vertex_name(v).to_string()));
    }
    let mut out = Vec::new();
    resolve_into(g, h.members(), Path::trivial(v), &mut out);
    Ok(out)
}

// A vertex adjoined by Λ only has edges into members adjoined before it, so
// the recursion terminates.
fn resolve_into(g: &Graph, h: &VertexSet, prefix: Path, out: &mut Vec<Path>) {
    let v = prefix.range();
    if h.contains(&v) {
        out.push(prefix);
        return;
    }
    for &e in g.out_edges(v) {
        resolve_into(
            g,
            h,
            prefix.push(g, e).expect("edge leaves the prefix range"),
            out,
        );
    }
}

/// A defining relation of `L_K(_H E)` whose image under the generator map
/// is not zero in `L_K(E)`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RelationFailure {
    pub relation: String,
    pub residue: String,
}

/// Maps every (V), (E1), (E2), (CK1) and (CK2) relation of `_H E` into
/// `L_K(E)` through `v ↦ v`, `[α] ↦ αα*`, `e ↦ e`, `ᾱ ↦ α` and reports the
/// relations whose image does not normalize to zero.
pub fn restriction_relation_failures<F: Field>(
    ambient: &Algebra<F>,
    restricted: &RestrictionGraph,
) -> Vec<RelationFailure> {
    let g = ambient.graph();
    let rg = &restricted.graph;
    let n_base = restricted.base.len();
    let base: Vec<Vertex> = restricted.base.iter().copied().collect();
    let vertex_image = |v: Vertex| -> Element<F> {
        let i = v.index();
        if i < n_base {
            ambient.vertex(base[i])
        } else {
            let alpha = &restricted.entry_paths[i - n_base];
            ambient.path_times_ghost(alpha, alpha)
        }
    };
    let edge_image = |e: Edge| -> (Element<F>, Element<F>) {
        let name = rg.edge_name(e);
        let path = match g.edge(name) {
            Ok(orig) if restricted.base.contains(&g.src(orig)) => g.edge_path(orig),
            _ => {
                let i = rg.src(e).index() - n_base;
                restricted.entry_paths[i].clone()
            }
        };
        let real = ambient.path_element(&path);
        let ghost = ambient.involution(&real);
        (real, ghost)
    };
    let mut failures = Vec::new();
    let mut check = |label: String, value: Element<F>| {
        if !value.is_zero() {
            failures.push(RelationFailure {
                relation: label,
                residue: ambient.render(&value),
            });
        }
    };
    for v in rg.vertices() {
        for w in rg.vertices() {
            let lhs = ambient.mul(&vertex_image(v), &vertex_image(w));
            let rhs = if v == w {
                vertex_image(v)
            } else {
                ambient.zero()
            };
            check(
                format!("(V) {}·{}", rg.vertex_name(v), rg.vertex_name(w)),
                ambient.sub(&lhs, &rhs),
            );
        }
    }
    for e in rg.edges() {
        let (real, ghost) = edge_image(e);
        let s = vertex_image(rg.src(e));
        let r = vertex_image(rg.dst(e));
        let name = rg.edge_name(e);
        check(
            format!("(E1) s({name})·{name}"),
            ambient.sub(&ambient.mul(&s, &real), &real),
        );
        check(
            format!("(E1) {name}·r({name})"),
            ambient.sub(&ambient.mul(&real, &r), &real),
        );
        check(
            format!("(E2) r({name})·{name}*"),
            ambient.sub(&ambient.mul(&r, &ghost), &ghost),
        );
        check(
            format!("(E2) {name}*·s({name})"),
            ambient.sub(&ambient.mul(&ghost, &s), &ghost),
        );
        for f in rg.edges() {
            let (real_f, _) = edge_image(f);
            let lhs = ambient.mul(&ghost, &real_f);
            let rhs = if e == f { r.clone() } else { ambient.zero() };
            check(
                format!("(CK1) {name}*·{}", rg.edge_name(f)),
                ambient.sub(&lhs, &rhs),
            );
        }
    }
    for v in rg.vertices().filter(|&v| !rg.is_sink(v)) {
        let mut sum = ambient.zero();
        for &e in rg.out_edges(v) {
            let (real, ghost) = edge_image(e);
            sum = ambient.add(&sum, &ambient.mul(&real, &ghost));
        }
        check(
            format!("(CK2) {}", rg.vertex_name(v)),
            ambient.sub(&vertex_image(v), &sum),
        );
    }
    failures
}
