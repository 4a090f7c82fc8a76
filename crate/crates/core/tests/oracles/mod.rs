//! Brute-force reference implementations. These work straight from the
//! definitions (powersets, reachability matrices, literal path lists) and
//! never call the library routines they are used to check.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use lpa_core::engine::{Element, Rationals};
use lpa_core::{Edge, Graph, Path, Vertex};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// `reach[u][v]`: a path of length at least one runs from `u` to `v`.
pub fn reach_plus(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.vertex_count();
    let mut r = vec![vec![false; n]; n];
    for e in g.edges() {
        r[g.src(e).index()][g.dst(e).index()] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if r[i][k] {
                for j in 0..n {
                    if r[k][j] {
                        r[i][j] = true;
                    }
                }
            }
        }
    }
    r
}

/// `u ≥ v`, length-zero paths allowed.
pub fn reaches(r: &[Vec<bool>], u: usize, v: usize) -> bool {
    u == v || r[u][v]
}

fn vertex_list(g: &Graph) -> Vec<Vertex> {
    g.vertices().collect()
}

fn is_hereditary(g: &Graph, set: &BTreeSet<usize>) -> bool {
    g.edges()
        .all(|e| !set.contains(&g.src(e).index()) || set.contains(&g.dst(e).index()))
}

fn is_saturated(g: &Graph, set: &BTreeSet<usize>) -> bool {
    g.vertices().all(|v| {
        let out = g.out_edges(v);
        set.contains(&v.index())
            || out.is_empty()
            || !out.iter().all(|&e| set.contains(&g.dst(e).index()))
    })
}

/// Every subset of the vertex indices, as sets.
pub fn powerset(n: usize) -> Vec<BTreeSet<usize>> {
    (0u32..(1 << n))
        .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect())
        .collect()
}

/// Smallest hereditary saturated superset, found as the intersection of all
/// hereditary saturated supersets.
pub fn brute_hs_closure(g: &Graph, seed: &BTreeSet<usize>) -> BTreeSet<usize> {
    let n = g.vertex_count();
    let mut best: BTreeSet<usize> = (0..n).collect();
    for s in powerset(n) {
        if seed.is_subset(&s) && is_hereditary(g, &s) && is_saturated(g, &s) {
            best = best.intersection(&s).copied().collect();
        }
    }
    best
}

/// Smallest saturated superset of an already hereditary set.
pub fn brute_saturation(g: &Graph, seed: &BTreeSet<usize>) -> BTreeSet<usize> {
    let n = g.vertex_count();
    let mut best: BTreeSet<usize> = (0..n).collect();
    for s in powerset(n) {
        if seed.is_subset(&s) && is_saturated(g, &s) {
            best = best.intersection(&s).copied().collect();
        }
    }
    best
}

/// Vertex sets reachable from `seed`.
pub fn brute_hereditary_closure(g: &Graph, seed: &BTreeSet<usize>) -> BTreeSet<usize> {
    let r = reach_plus(g);
    (0..g.vertex_count())
        .filter(|&v| seed.iter().any(|&s| reaches(&r, s, v)))
        .collect()
}

pub fn all_hereditary_sets(g: &Graph) -> Vec<BTreeSet<usize>> {
    powerset(g.vertex_count())
        .into_iter()
        .filter(|s| is_hereditary(g, s))
        .collect()
}

/// The one-step relation and its transitive closure, straight from the
/// definition, as sorted name lists.
pub fn brute_sim_classes(g: &Graph) -> BTreeSet<Vec<String>> {
    let n = g.vertex_count();
    let r = reach_plus(g);
    let vs = vertex_list(g);
    let bif: Vec<bool> = vs.iter().map(|&v| g.out_edges(v).len() >= 2).collect();
    let tree_has_bif = |u: usize| (0..n).any(|x| reaches(&r, u, x) && bif[x]);
    let on_cycle: Vec<bool> = (0..n).map(|w| r[w][w]).collect();
    let mut rel = vec![vec![false; n]; n];
    for u in 0..n {
        for v in 0..n {
            let comparable = reaches(&r, u, v) || reaches(&r, v, u);
            let line = comparable && !tree_has_bif(u) && !tree_has_bif(v);
            let common = (0..n).any(|w| on_cycle[w] && reaches(&r, w, u) && reaches(&r, w, v));
            rel[u][v] = u == v || line || common;
        }
    }
    for k in 0..n {
        for i in 0..n {
            if rel[i][k] {
                for j in 0..n {
                    if rel[k][j] {
                        rel[i][j] = true;
                    }
                }
            }
        }
    }
    let mut out = BTreeSet::new();
    for u in 0..n {
        let mut class: Vec<String> = (0..n)
            .filter(|&v| rel[u][v] && rel[v][u])
            .map(|v| g.vertex_name(vs[v]).to_string())
            .collect();
        class.sort();
        out.insert(class);
    }
    out
}

/// Paths (length zero included) ending in `targets` that avoid `forbidden`
/// and satisfy `keep`, by explicit enumeration. `None` means infinite: some
/// kept path is longer than `max_len`, which must be large enough to force a
/// repeated state.
/// Returns `Err(())` when more than `budget` paths were listed.
pub fn brute_count_paths<K>(
    g: &Graph,
    targets: &BTreeSet<Vertex>,
    forbidden: &BTreeSet<Edge>,
    max_len: usize,
    budget: usize,
    keep: K,
) -> Result<Option<u64>, ()>
where
    K: Fn(&[Edge]) -> bool,
{
    // Walk backwards from each target, building the path from its end.
    let mut count = 0u64;
    let mut stack: Vec<(Vertex, Vec<Edge>)> = targets.iter().map(|&t| (t, Vec::new())).collect();
    let mut seen = 0usize;
    while let Some((start, rev)) = stack.pop() {
        seen += 1;
        if seen > budget {
            return Err(());
        }
        if rev.len() > max_len {
            return Ok(None);
        }
        let forward: Vec<Edge> = rev.iter().rev().copied().collect();
        // `keep` must be closed under taking suffixes, so a rejected path
        // has no kept extensions.
        if !keep(&forward) {
            continue;
        }
        count += 1;
        for &e in g.in_edges(start) {
            if forbidden.contains(&e) {
                continue;
            }
            let mut next = rev.clone();
            next.push(e);
            stack.push((g.src(e), next));
        }
    }
    Ok(Some(count))
}

/// Least edge id (by name) leaving `v`.
pub fn least_edge(g: &Graph, v: Vertex) -> Option<Edge> {
    g.out_edges(v)
        .iter()
        .copied()
        .min_by(|&a, &b| g.edge_name(a).cmp(g.edge_name(b)))
}

/// `(coef, α edges, β edges, s(α), s(β))`.
type Raw = (Q, Vec<Edge>, Vec<Edge>, Vertex, Vertex);

/// Normal form by rewriting reducible terms in a random order, then
/// collecting like terms. Terms are `(coef, α, β)` with `r(α) = r(β)`.
pub fn random_order_normal_form<R: Rng>(
    g: &Graph,
    terms: Vec<(Q, Path, Path)>,
    rng: &mut R,
) -> BTreeMap<(Vec<String>, String, Vec<String>), Q> {
    let mut done: Vec<Raw> = Vec::new();
    let mut pending: Vec<Raw> = terms
        .into_iter()
        .map(|(c, a, b)| {
            (
                c,
                a.edges().to_vec(),
                b.edges().to_vec(),
                a.source(),
                b.source(),
            )
        })
        .collect();
    while !pending.is_empty() {
        pending.shuffle(rng);
        let (c, mut a, mut b, s, bs) = pending.pop().unwrap();
        let reducible = match (a.last(), b.last()) {
            (Some(&x), Some(&y)) => x == y && least_edge(g, g.src(x)) == Some(x),
            _ => false,
        };
        if !reducible {
            done.push((c, a, b, s, bs));
            continue;
        }
        let e = a.pop().unwrap();
        b.pop();
        pending.push((c.clone(), a.clone(), b.clone(), s, bs));
        for &f in g.out_edges(g.src(e)) {
            if f != e {
                let mut a2 = a.clone();
                a2.push(f);
                let mut b2 = b.clone();
                b2.push(f);
                pending.push((-c.clone(), a2, b2, s, bs));
            }
        }
    }
    let mut out: BTreeMap<(Vec<String>, String, Vec<String>), Q> = BTreeMap::new();
    for (c, a, b, s, bs) in done {
        let names = |p: &[Edge]| {
            p.iter()
                .map(|&e| g.edge_name(e).to_string())
                .collect::<Vec<_>>()
        };
        // Trivial paths are told apart by their vertex.
        let key_vertex = if a.is_empty() && b.is_empty() {
            g.vertex_name(s).to_string()
        } else {
            format!("{}|{}", g.vertex_name(s), g.vertex_name(bs))
        };
        let slot = out
            .entry((names(&a), key_vertex, names(&b)))
            .or_insert_with(Q::zero);
        *slot += c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// The same keying as [`random_order_normal_form`] applied to an engine
/// element, so the two can be compared.
pub fn element_key(x: &Element<Rationals>) -> BTreeMap<(Vec<String>, String, Vec<String>), Q> {
    let g = x.graph();
    let names = |p: &Path| {
        p.edges()
            .iter()
            .map(|&e| g.edge_name(e).to_string())
            .collect::<Vec<_>>()
    };
    x.terms()
        .map(|(m, c)| {
            let (a, b) = (m.alpha(), m.beta());
            let key_vertex = if a.is_empty() && b.is_empty() {
                g.vertex_name(a.source()).to_string()
            } else {
                format!(
                    "{}|{}",
                    g.vertex_name(a.source()),
                    g.vertex_name(b.source())
                )
            };
            ((names(a), key_vertex, names(b)), c.clone())
        })
        .collect()
}

/// A vector in the space spanned by finite paths that end at sinks.
pub type PathVec = HashMap<Path, Q>;

/// Every path ending at a sink with at most `max_len` edges.
pub fn sink_paths(g: &Graph, max_len: usize) -> Vec<Path> {
    let mut out = Vec::new();
    let mut layer: Vec<Path> = g
        .vertices()
        .filter(|&v| g.is_sink(v))
        .map(Path::trivial)
        .collect();
    for _ in 0..=max_len {
        let mut next = Vec::new();
        for p in &layer {
            for &e in g.in_edges(p.source()) {
                next.push(g.edge_path(e).concat(p).expect("edge meets path"));
            }
        }
        out.append(&mut layer);
        layer = next;
    }
    out
}

/// `αβ*` sends `βγ` to `αγ` and kills every other path. On paths ending at
/// sinks this respects every defining relation, so it is a representation.
pub fn act(x: &Element<Rationals>, v: &PathVec) -> PathVec {
    let mut out = PathVec::new();
    for (p, k) in v {
        for (m, c) in x.terms() {
            if let Some(rest) = p.strip_prefix(m.beta()) {
                if let Some(img) = m.alpha().concat(&rest) {
                    *out.entry(img).or_insert_with(Q::zero) += c * k;
                }
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

pub fn basis_vec(p: &Path) -> PathVec {
    PathVec::from([(p.clone(), Q::one())])
}

pub fn is_acyclic(g: &Graph) -> bool {
    let r = reach_plus(g);
    (0..g.vertex_count()).all(|v| !r[v][v])
}

fn random_walk<R: Rng>(g: &Graph, rng: &mut R, start: Vertex, len: usize, backwards: bool) -> Path {
    let mut p = Path::trivial(start);
    for _ in 0..len {
        let choices = if backwards {
            g.in_edges(p.source())
        } else {
            g.out_edges(p.range())
        };
        if choices.is_empty() {
            break;
        }
        let e = choices[rng.gen_range(0..choices.len())];
        p = if backwards {
            g.edge_path(e).concat(&p).unwrap()
        } else {
            p.push(g, e).unwrap()
        };
    }
    p
}

/// `n` raw terms `cαβ*`: α walks forward from a random vertex and β walks
/// backwards from `r(α)`, so every term is well formed but rarely normal.
pub fn random_terms<R: Rng>(g: &Graph, rng: &mut R, n: usize) -> Vec<(Q, Path, Path)> {
    let vs: Vec<Vertex> = g.vertices().collect();
    (0..n)
        .map(|_| {
            let v = vs[rng.gen_range(0..vs.len())];
            let la = rng.gen_range(0..4);
            let a = random_walk(g, rng, v, la, false);
            let lb = rng.gen_range(0..4);
            let b = random_walk(g, rng, a.range(), lb, true);
            (q(rng.gen_range(-3..=3)), a, b)
        })
        .collect()
}
