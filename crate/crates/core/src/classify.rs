//! Vertex and cycle classification: line points, cycles with and without
//! exits, extreme cycles, the `~` relation and the finite/infinite split of
//! its classes.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::graph::{count_walks, Count, Cycle, Graph, Vertex, VertexSet};
use crate::hereditary::{
    first_entry_paths, hereditary_closure, hs_closure, is_dense_ideal, restriction_graph,
    EntryPaths, HereditarySet,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleInfo {
    pub cycle: Cycle,
    pub has_exits: bool,
    pub is_extreme: bool,
    pub in_s: bool,
    /// Paths ending in `c^0` that use no edge of `c`.
    pub entry_count: Count,
    /// Paths ending in `c^0` that do not use every edge of `c`.
    pub wrap_count: Count,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleSummary {
    pub edges: Vec<String>,
    pub vertices: Vec<String>,
    pub has_exits: bool,
    pub is_extreme: bool,
    pub in_s: bool,
    pub entry_count: Count,
    pub wrap_count: Count,
}

impl CycleInfo {
    pub fn summary(&self, g: &Graph) -> CycleSummary {
        CycleSummary {
            edges: self.cycle.edge_names(g),
            vertices: g.names(&self.cycle.vertices(g)),
            has_exits: self.has_exits,
            is_extreme: self.is_extreme,
            in_s: self.in_s,
            entry_count: self.entry_count,
            wrap_count: self.wrap_count,
        }
    }
}

/// Vertices whose tree has neither bifurcations nor cycle vertices.
pub fn line_points(g: &Graph) -> VertexSet {
    let on_cycle = g.cycle_vertices();
    g.vertices()
        .filter(|&v| {
            tree(g, v)
                .iter()
                .all(|&w| !g.is_bifurcation(w) && !on_cycle.contains(&w))
        })
        .collect()
}

fn tree(g: &Graph, v: Vertex) -> VertexSet {
    g.tree_of_set(&std::iter::once(v).collect())
}

pub fn classify_cycles(g: &Graph) -> Vec<CycleInfo> {
    g.simple_cycles()
        .into_iter()
        .map(|c| cycle_info(g, c))
        .collect()
}

fn cycle_info(g: &Graph, cycle: Cycle) -> CycleInfo {
    let c0 = cycle.vertices(g);
    let has_exits = !g.cycle_exits(&cycle).expect("own cycle").is_empty();
    let is_extreme = has_exits && g.tree_of_set(&c0).is_subset(&g.reaching(&c0));
    let entry_count = g
        .count_paths_into(&c0, &cycle.edge_set())
        .expect("own vertices");
    let wrap_count = if has_exits {
        wrap_count_automaton(g, &cycle)
    } else {
        // Once on a cycle without exits a path can only run along it, so a
        // wrapping path is an entry path followed by fewer than l(c) edges.
        match entry_count {
            Count::Finite(n) => Count::Finite(n.saturating_mul(cycle.len() as u64)),
            Count::Infinite => Count::Infinite,
        }
    };
    CycleInfo {
        in_s: !has_exits && wrap_count.is_finite(),
        cycle,
        has_exits,
        is_extreme,
        entry_count,
        wrap_count,
    }
}

/// Counts paths into `c^0` missing some edge of `c` by walking the product
/// of the graph with the set of `c`-edges used so far.
pub(crate) fn wrap_count_automaton(g: &Graph, cycle: &Cycle) -> Count {
    let c_edges = cycle.edges();
    let full: usize = (1usize << c_edges.len()) - 1;
    let masks = full + 1;
    let n = g.vertex_count() * masks;
    let node = |v: Vertex, m: usize| v.index() * masks + m;
    let c0 = cycle.vertices(g);
    let mut succ = vec![Vec::new(); n];
    let mut is_target = vec![false; n];
    let mut is_start = vec![false; n];
    for v in g.vertices() {
        is_start[node(v, 0)] = true;
        for m in 0..full {
            is_target[node(v, m)] = c0.contains(&v);
            for &e in g.out_edges(v) {
                let bit = c_edges.iter().position(|&f| f == e).map_or(0, |i| 1 << i);
                let next = m | bit;
                if next != full {
                    succ[node(v, m)].push(node(g.dst(e), next));
                }
            }
        }
    }
    count_walks(&succ, &is_target, &is_start)
}

/// `P_c`: vertices on cycles without exits.
pub fn no_exit_vertices(cycles: &[CycleInfo], g: &Graph) -> VertexSet {
    cycles
        .iter()
        .filter(|c| !c.has_exits)
        .flat_map(|c| c.cycle.vertices(g))
        .collect()
}

/// An equivalence class of extreme cycles under connectivity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremeClass {
    pub cycles: Vec<Cycle>,
    /// `c̃^0 = T(c^0)` for any member `c`.
    pub vertices: VertexSet,
}

pub fn extreme_classes(g: &Graph) -> Vec<ExtremeClass> {
    extreme_classes_of(g, &classify_cycles(g))
}

fn extreme_classes_of(g: &Graph, cycles: &[CycleInfo]) -> Vec<ExtremeClass> {
    let mut out: Vec<ExtremeClass> = Vec::new();
    for info in cycles.iter().filter(|c| c.is_extreme) {
        let c0 = info.cycle.vertices(g);
        match out.iter_mut().find(|cls| !cls.vertices.is_disjoint(&c0)) {
            Some(cls) => cls.cycles.push(info.cycle.clone()),
            None => out.push(ExtremeClass {
                cycles: vec![info.cycle.clone()],
                vertices: g.tree_of_set(&c0),
            }),
        }
    }
    out.sort_by_key(|cls| cls.vertices.iter().next().copied());
    out
}

/// Vertices whose tree meets infinitely many bifurcations; always empty on a
/// finite graph.
pub fn p_binf(_g: &Graph) -> VertexSet {
    VertexSet::new()
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let root = self.find(p);
        self.0[x] = root;
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Classes of `~` on all vertices, ordered by first member.
pub fn sim_classes(g: &Graph) -> Vec<VertexSet> {
    let n = g.vertex_count();
    let mut uf = UnionFind((0..n).collect());
    let on_cycle = g.cycle_vertices();
    for u in g.vertices() {
        let t = tree(g, u);
        let rule_i = t.iter().all(|&w| !g.is_bifurcation(w));
        if rule_i || on_cycle.contains(&u) {
            for w in t {
                uf.union(u.index(), w.index());
            }
        }
    }
    let mut classes: Vec<VertexSet> = Vec::new();
    let mut index_of = vec![usize::MAX; n];
    for v in g.vertices() {
        let root = uf.find(v.index());
        if index_of[root] == usize::MAX {
            index_of[root] = classes.len();
            classes.push(VertexSet::new());
        }
        classes[index_of[root]].insert(v);
    }
    classes
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassType {
    Line,
    CycleLaurent,
    CycleDegenerate,
    Extreme,
}

/// A `~`-class meeting `P = P_l ∪ P_c ∪ P_ec`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XClass {
    pub members: VertexSet,
    /// Saturated closure of the class.
    pub closure: VertexSet,
    pub entry_paths: EntryPaths,
    /// `None` for classes outside `X_f`.
    pub class_type: Option<ClassType>,
    /// Cycles of `S` lying in the class.
    pub s_cycles: Vec<Cycle>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub p_l: VertexSet,
    pub p_c: VertexSet,
    pub p_c_plus: VertexSet,
    pub p_c_minus: VertexSet,
    pub p_e: VertexSet,
    pub p_ec: VertexSet,
    pub p_binf: VertexSet,
    pub cycles: Vec<CycleInfo>,
    pub extreme: Vec<ExtremeClass>,
    pub sim_classes: Vec<VertexSet>,
    pub x_f: Vec<XClass>,
    pub x_inf: Vec<XClass>,
    pub h_f: VertexSet,
    pub h_inf: VertexSet,
}

impl Classification {
    /// `P = P_l ∪ P_c ∪ P_ec`
    pub fn p(&self) -> VertexSet {
        self.p_l
            .iter()
            .chain(&self.p_c)
            .chain(&self.p_ec)
            .copied()
            .collect()
    }

    /// The set `S` of cycles without exits fed by finitely many paths.
    pub fn s_cycles(&self) -> impl Iterator<Item = &CycleInfo> {
        self.cycles.iter().filter(|c| c.in_s)
    }

    pub fn report(&self, g: &Graph) -> ClassificationReport {
        let names = |s: &VertexSet| g.names(s);
        let class = |c: &XClass| ClassSummary {
            members: names(&c.members),
            closure: names(&c.closure),
            entry_paths: match &c.entry_paths {
                EntryPaths::Finite(ps) => Some(ps.iter().map(|p| p.render(g)).collect()),
                EntryPaths::Infinite => None,
            },
            class_type: c.class_type,
            s_cycles: c.s_cycles.iter().map(|c| c.edge_names(g)).collect(),
        };
        ClassificationReport {
            p_l: names(&self.p_l),
            p_c: names(&self.p_c),
            p_c_plus: names(&self.p_c_plus),
            p_c_minus: names(&self.p_c_minus),
            p_e: names(&self.p_e),
            p_ec: names(&self.p_ec),
            p_binf: names(&self.p_binf),
            cycles: self.cycles.iter().map(|c| c.summary(g)).collect(),
            x_ec: self
                .extreme
                .iter()
                .map(|cls| ExtremeSummary {
                    cycles: cls.cycles.iter().map(|c| c.edge_names(g)).collect(),
                    vertices: names(&cls.vertices),
                })
                .collect(),
            sim_classes: self.sim_classes.iter().map(names).collect(),
            x_f: self.x_f.iter().map(class).collect(),
            x_inf: self.x_inf.iter().map(class).collect(),
            h_f: names(&self.h_f),
            h_inf: names(&self.h_inf),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtremeSummary {
    pub cycles: Vec<Vec<String>>,
    pub vertices: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassSummary {
    pub members: Vec<String>,
    pub closure: Vec<String>,
    /// `null` when infinite.
    pub entry_paths: Option<Vec<String>>,
    pub class_type: Option<ClassType>,
    pub s_cycles: Vec<Vec<String>>,
}

/// Name-level view of a [`Classification`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    #[serde(rename = "P_l")]
    pub p_l: Vec<String>,
    #[serde(rename = "P_c")]
    pub p_c: Vec<String>,
    #[serde(rename = "P_c_plus")]
    pub p_c_plus: Vec<String>,
    #[serde(rename = "P_c_minus")]
    pub p_c_minus: Vec<String>,
    #[serde(rename = "P_e")]
    pub p_e: Vec<String>,
    #[serde(rename = "P_ec")]
    pub p_ec: Vec<String>,
    #[serde(rename = "P_binf")]
    pub p_binf: Vec<String>,
    pub cycles: Vec<CycleSummary>,
    #[serde(rename = "X_ec")]
    pub x_ec: Vec<ExtremeSummary>,
    pub sim_classes: Vec<Vec<String>>,
    #[serde(rename = "X_f")]
    pub x_f: Vec<ClassSummary>,
    #[serde(rename = "X_inf")]
    pub x_inf: Vec<ClassSummary>,
    #[serde(rename = "H_f")]
    pub h_f: Vec<String>,
    #[serde(rename = "H_inf")]
    pub h_inf: Vec<String>,
}

pub fn x_decomposition(g: &Graph) -> Classification {
    let cycles = classify_cycles(g);
    let p_l = line_points(g);
    let p_c = no_exit_vertices(&cycles, g);
    let mut p_c_plus = VertexSet::new();
    let mut p_c_minus = VertexSet::new();
    let mut p_e = VertexSet::new();
    let mut p_ec = VertexSet::new();
    for info in &cycles {
        let c0 = info.cycle.vertices(g);
        if info.has_exits {
            p_e.extend(&c0);
        } else if info.wrap_count.is_finite() {
            p_c_minus.extend(&c0);
        } else {
            p_c_plus.extend(&c0);
        }
        if info.is_extreme {
            p_ec.extend(&c0);
        }
    }
    let extreme = extreme_classes_of(g, &cycles);
    let sim = sim_classes(g);
    let p: VertexSet = p_l.iter().chain(&p_c).chain(&p_ec).copied().collect();
    let mut x_f = Vec::new();
    let mut x_inf = Vec::new();
    for members in sim.iter().filter(|cls| !cls.is_disjoint(&p)) {
        let closure = hs_closure(g, members)
            .expect("class vertices belong to the graph")
            .into_members();
        let entry_paths = first_entry_paths(g, &closure);
        let s_cycles: Vec<Cycle> = cycles
            .iter()
            .filter(|c| c.in_s && c.cycle.vertices(g).is_subset(members))
            .map(|c| c.cycle.clone())
            .collect();
        let in_p: VertexSet = members.intersection(&p).copied().collect();
        let class_type = if in_p.is_subset(&p_l) {
            ClassType::Line
        } else if in_p.is_subset(&p_ec) {
            ClassType::Extreme
        } else if !s_cycles.is_empty() {
            ClassType::CycleLaurent
        } else {
            ClassType::CycleDegenerate
        };
        let finite = entry_paths.is_finite();
        let class = XClass {
            members: members.clone(),
            closure,
            entry_paths,
            class_type: finite.then_some(class_type),
            s_cycles,
        };
        if finite {
            x_f.push(class);
        } else {
            x_inf.push(class);
        }
    }
    let p_binf = p_binf(g);
    let h_f = x_f.iter().flat_map(|c| c.closure.iter().copied()).collect();
    let h_inf = x_inf
        .iter()
        .flat_map(|c| c.closure.iter().copied())
        .chain(p_binf.iter().copied())
        .collect();
    Classification {
        p_l,
        p_c,
        p_c_plus,
        p_c_minus,
        p_e,
        p_ec,
        p_binf,
        cycles,
        extreme,
        sim_classes: sim,
        x_f,
        x_inf,
        h_f,
        h_inf,
    }
}

/// The three conditions for `L_K(E)` to be purely infinite simple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PisCertificate {
    pub purely_infinite_simple: bool,
    pub every_vertex_reaches_cycle: bool,
    pub every_cycle_has_exit: bool,
    pub hs_lattice_trivial: bool,
    /// First failing condition with an offending vertex or cycle.
    pub failure: Option<String>,
}

pub fn is_purely_infinite_simple(g: &Graph) -> PisCertificate {
    let all = g.all_vertices();
    let on_cycle = g.cycle_vertices();
    let reach = g.reaching(&on_cycle);
    let no_reach = all.difference(&reach).next().copied();
    let exitless = g
        .simple_cycles()
        .into_iter()
        .find(|c| g.cycle_exits(c).map(|e| e.is_empty()).unwrap_or(false));
    let small = g.vertices().find(|&v| {
        hs_closure(g, &std::iter::once(v).collect())
            .map(|h| h.members().len() != all.len())
            .unwrap_or(true)
    });
    let failure = if let Some(v) = no_reach {
        Some(format!(
            "vertex {} does not connect to a cycle",
            g.vertex_name(v)
        ))
    } else if let Some(c) = &exitless {
        Some(format!("cycle {} has no exit", c.render(g)))
    } else {
        small.map(|v| {
            format!(
                "the hereditary saturated closure of {} is proper",
                g.vertex_name(v)
            )
        })
    };
    PisCertificate {
        purely_infinite_simple: failure.is_none(),
        every_vertex_reaches_cycle: no_reach.is_none(),
        every_cycle_has_exit: exitless.is_none(),
        hs_lattice_trivial: small.is_none(),
        failure,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SinkPart {
    pub sink: String,
    /// Paths ending at the sink; the summand is `M_m(K)`.
    pub m: Count,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NoExitPart {
    pub cycle: Vec<String>,
    /// Entry count; the summand is `M_n(K[x, x⁻¹])`.
    pub n: Count,
    pub wrap_count: Count,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtremePart {
    pub cycles: Vec<Vec<String>>,
    pub vertices: Vec<String>,
    /// Certificate for the restriction graph of the class; `None` when the
    /// class has infinitely many entry paths.
    pub restriction_certificate: Option<PisCertificate>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealStructure {
    pub sinks: Vec<SinkPart>,
    pub no_exit_cycles: Vec<NoExitPart>,
    pub extreme_classes: Vec<ExtremePart>,
    /// Whether `I(P_l ∪ P_c ∪ P_ec)` is dense.
    pub dense: bool,
}

pub fn ideal_structure(g: &Graph) -> IdealStructure {
    ideal_structure_of(g, &x_decomposition(g))
}

pub fn ideal_structure_of(g: &Graph, cls: &Classification) -> IdealStructure {
    let sinks = g
        .sinks()
        .into_iter()
        .map(|s| SinkPart {
            sink: g.vertex_name(s).to_string(),
            m: g.count_paths_into(&std::iter::once(s).collect(), &BTreeSet::new())
                .expect("own vertex"),
        })
        .collect();
    let no_exit_cycles = cls
        .cycles
        .iter()
        .filter(|c| !c.has_exits)
        .map(|c| NoExitPart {
            cycle: c.cycle.edge_names(g),
            n: c.entry_count,
            wrap_count: c.wrap_count,
        })
        .collect();
    let extreme_classes = cls
        .extreme
        .iter()
        .map(|x| {
            let h = HereditarySet::new(g, x.vertices.clone()).expect("own vertices");
            ExtremePart {
                cycles: x.cycles.iter().map(|c| c.edge_names(g)).collect(),
                vertices: g.names(&x.vertices),
                restriction_certificate: restriction_graph(g, &h)
                    .ok()
                    .map(|r| is_purely_infinite_simple(&r.graph)),
            }
        })
        .collect();
    let p = HereditarySet::new(g, cls.p()).expect("own vertices");
    IdealStructure {
        sinks,
        no_exit_cycles,
        extreme_classes,
        dense: is_dense_ideal(g, &p).unwrap_or(false),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum PrimeCase {
    Sink {
        sink: String,
        m: Count,
    },
    NoExitCycle {
        cycle: Vec<String>,
        n: Count,
    },
    Extreme {
        cycles: Vec<Vec<String>>,
        vertices: Vec<String>,
    },
    NotPrime {
        witness: (String, String),
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeReport {
    /// Primeness is tested as downward directedness, a standard graph
    /// criterion that is not part of the trichotomy itself.
    pub criterion: &'static str,
    #[serde(flatten)]
    pub case: PrimeCase,
}

/// A pair of vertices with no common descendant, if any.
pub fn directedness_failure(g: &Graph) -> Option<(Vertex, Vertex)> {
    let trees: Vec<VertexSet> = g.vertices().map(|v| tree(g, v)).collect();
    for u in g.vertices() {
        for v in g.vertices().filter(|&v| v > u) {
            if trees[u.index()].is_disjoint(&trees[v.index()]) {
                return Some((u, v));
            }
        }
    }
    None
}

pub fn prime_trichotomy(g: &Graph) -> PrimeReport {
    prime_trichotomy_of(g, &x_decomposition(g))
}

pub fn prime_trichotomy_of(g: &Graph, cls: &Classification) -> PrimeReport {
    let criterion = "downward directedness (external test; the trichotomy assumes primeness)";
    if let Some((u, v)) = directedness_failure(g) {
        return PrimeReport {
            criterion,
            case: PrimeCase::NotPrime {
                witness: (g.vertex_name(u).to_string(), g.vertex_name(v).to_string()),
            },
        };
    }
    let sinks = g.sinks();
    let no_exit: Vec<&CycleInfo> = cls.cycles.iter().filter(|c| !c.has_exits).collect();
    let case = if let (1, Some(&s)) = (sinks.len(), sinks.iter().next()) {
        PrimeCase::Sink {
            sink: g.vertex_name(s).to_string(),
            m: g.count_paths_into(&sinks, &BTreeSet::new())
                .expect("own vertex"),
        }
    } else if let [c] = no_exit.as_slice() {
        PrimeCase::NoExitCycle {
            cycle: c.cycle.edge_names(g),
            n: c.entry_count,
        }
    } else if let [x] = cls.extreme.as_slice() {
        PrimeCase::Extreme {
            cycles: x.cycles.iter().map(|c| c.edge_names(g)).collect(),
            vertices: g.names(&x.vertices),
        }
    } else {
        unreachable!("a downward directed finite graph has exactly one terminal part")
    };
    PrimeReport { criterion, case }
}

/// Whether a class's vertex set is hereditary.
pub fn class_is_hereditary(g: &Graph, members: &VertexSet) -> bool {
    hereditary_closure(g, members)
        .map(|h| h.members() == members)
        .unwrap_or(false)
}
