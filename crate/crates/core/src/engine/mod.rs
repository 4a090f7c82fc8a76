//! Exact arithmetic in `L_K(E)` over normal-form monomials `αβ*`.
//!
//! A monomial is in normal form unless `α` and `β` both end in the special
//! edge `σ(v)` of the same vertex. Anything else is rewritten with
//! `α'σ(β'σ)* → α'β'* − Σ_{f≠σ} α'ff*β'*`.

mod corner;
mod field;
mod render;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Path, Vertex};

pub use corner::{reduce_to_corner, CornerCase, CornerOutcome, CornerReduction};
pub use field::{Field, PrimeField, Rationals};

/// `αβ*` with `r(α) = r(β)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    alpha: Path,
    beta: Path,
}

impl Monomial {
    pub fn new(alpha: Path, beta: Path) -> Result<Monomial> {
        if alpha.range() != beta.range() {
            return Err(Error::MalformedTerm("r(α) and r(β) differ".to_string()));
        }
        Ok(Monomial { alpha, beta })
    }

    pub fn vertex(v: Vertex) -> Monomial {
        Monomial {
            alpha: Path::trivial(v),
            beta: Path::trivial(v),
        }
    }

    pub fn alpha(&self) -> &Path {
        &self.alpha
    }

    pub fn beta(&self) -> &Path {
        &self.beta
    }

    pub fn degree(&self) -> i64 {
        self.alpha.len() as i64 - self.beta.len() as i64
    }

    /// `|α| + |β|`
    pub fn total_len(&self) -> usize {
        self.alpha.len() + self.beta.len()
    }

    /// `βα*`
    pub fn star(&self) -> Monomial {
        Monomial {
            alpha: self.beta.clone(),
            beta: self.alpha.clone(),
        }
    }

    pub fn is_normal(&self, g: &Graph) -> bool {
        match (self.alpha.last_edge(), self.beta.last_edge()) {
            (Some(a), Some(b)) => a != b || g.special_edge(g.src(a)) != Some(a),
            _ => true,
        }
    }

    fn key(&self) -> (usize, Vertex, &[Edge], Vertex, &[Edge]) {
        (
            self.total_len(),
            self.alpha.source(),
            self.alpha.edges(),
            self.beta.source(),
            self.beta.edges(),
        )
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Raw product of two monomials before normalization, `None` for zero.
pub fn mono_mul_raw(m1: &Monomial, m2: &Monomial) -> Option<Monomial> {
    if let Some(gamma) = m2.alpha.strip_prefix(&m1.beta) {
        let alpha = m1.alpha.concat(&gamma)?;
        return Some(Monomial {
            alpha,
            beta: m2.beta.clone(),
        });
    }
    if let Some(delta) = m1.beta.strip_prefix(&m2.alpha) {
        let beta = m2.beta.concat(&delta)?;
        return Some(Monomial {
            alpha: m1.alpha.clone(),
            beta,
        });
    }
    None
}

/// An element of `L_K(E)`: normal monomials with nonzero coefficients.
#[derive(Clone)]
pub struct Element<F: Field> {
    graph: Arc<Graph>,
    field: F,
    terms: BTreeMap<Monomial, F::Elem>,
}

impl<F: Field> fmt::Debug for Element<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render::render(self))
    }
}

impl<F: Field> fmt::Display for Element<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render::render(self))
    }
}

impl<F: Field> PartialEq for Element<F> {
    fn eq(&self, other: &Self) -> bool {
        same_graph(&self.graph, &other.graph) && self.terms == other.terms
    }
}

impl<F: Field> Eq for Element<F> {}

fn same_graph(a: &Arc<Graph>, b: &Arc<Graph>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Adds `coef · m` to `acc`, rewriting `m` into normal form first.
fn accumulate<F: Field>(
    g: &Graph,
    field: &F,
    acc: &mut BTreeMap<Monomial, F::Elem>,
    m: Monomial,
    coef: F::Elem,
) {
    let mut pending = vec![(m, coef)];
    while let Some((m, coef)) = pending.pop() {
        if field.is_zero(&coef) {
            continue;
        }
        if m.is_normal(g) {
            let slot = acc.entry(m);
            match slot {
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(coef);
                }
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    let sum = field.add(o.get(), &coef);
                    if field.is_zero(&sum) {
                        o.remove();
                    } else {
                        *o.get_mut() = sum;
                    }
                }
            }
            continue;
        }
        let sigma = m.alpha.last_edge().expect("reducible term has edges");
        let a = m.alpha.pop(g).expect("nonempty");
        let b = m.beta.pop(g).expect("nonempty");
        let v = g.src(sigma);
        let minus = field.neg(&coef);
        for &f in g.out_edges(v) {
            if f != sigma {
                let alpha = a.push(g, f).expect("f leaves v");
                let beta = b.push(g, f).expect("f leaves v");
                pending.push((Monomial { alpha, beta }, minus.clone()));
            }
        }
        pending.push((Monomial { alpha: a, beta: b }, coef));
    }
}

impl<F: Field> Element<F> {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F::Elem)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> F::Elem {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    fn empty_like(&self) -> Element<F> {
        Element {
            graph: self.graph.clone(),
            field: self.field.clone(),
            terms: BTreeMap::new(),
        }
    }

    fn check_same(&self, other: &Element<F>) -> Result<()> {
        if same_graph(&self.graph, &other.graph) {
            Ok(())
        } else {
            Err(Error::MixedGraphs)
        }
    }

    pub fn checked_add(&self, other: &Element<F>) -> Result<Element<F>> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            accumulate(
                &self.graph,
                &self.field,
                &mut out.terms,
                m.clone(),
                c.clone(),
            );
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Element<F>) -> Result<Element<F>> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Element<F> {
        self.scale(&self.field.from_i64(-1))
    }

    pub fn scale(&self, k: &F::Elem) -> Element<F> {
        let mut out = self.empty_like();
        if self.field.is_zero(k) {
            return out;
        }
        out.terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), self.field.mul(c, k)))
            .collect();
        out
    }

    pub fn checked_mul(&self, other: &Element<F>) -> Result<Element<F>> {
        self.check_same(other)?;
        let mut out = self.empty_like();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if let Some(m) = mono_mul_raw(m1, m2) {
                    let c = self.field.mul(c1, c2);
                    accumulate(&self.graph, &self.field, &mut out.terms, m, c);
                }
            }
        }
        Ok(out)
    }

    /// `[x, y] = xy − yx`
    pub fn commutator(&self, other: &Element<F>) -> Result<Element<F>> {
        self.checked_mul(other)?
            .checked_sub(&other.checked_mul(self)?)
    }

    /// `(αβ*)* = βα*`, coefficients fixed.
    pub fn involution(&self) -> Element<F> {
        let mut out = self.empty_like();
        for (m, c) in &self.terms {
            accumulate(
                &self.graph,
                &self.field,
                &mut out.terms,
                m.star(),
                c.clone(),
            );
        }
        out
    }

    pub fn homogeneous_components(&self) -> BTreeMap<i64, Element<F>> {
        let mut out: BTreeMap<i64, Element<F>> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree())
                .or_insert_with(|| self.empty_like())
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    /// `Some(n)` when every term has degree `n`; zero is homogeneous of
    /// every degree and reports `None`.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn max_total_len(&self) -> usize {
        self.terms
            .keys()
            .map(Monomial::total_len)
            .max()
            .unwrap_or(0)
    }

    pub fn render(&self) -> String {
        render::render(self)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<F: Field> ops::$tr<&Element<F>> for &Element<F> {
            type Output = Element<F>;

            /// Panics when the operands belong to different graphs.
            fn $method(self, rhs: &Element<F>) -> Element<F> {
                self.$checked(rhs).expect("operands over the same graph")
            }
        }

        impl<F: Field> ops::$tr<&Element<F>> for Element<F> {
            type Output = Element<F>;

            fn $method(self, rhs: &Element<F>) -> Element<F> {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl<F: Field> ops::Neg for &Element<F> {
    type Output = Element<F>;

    fn neg(self) -> Element<F> {
        Element::neg(self)
    }
}

/// Outcome of checking a candidate against every generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Centrality {
    pub central: bool,
    /// First generator that fails to commute, with the rendered commutator.
    pub witness: Option<(String, String)>,
}

/// A graph and a field, producing elements over them.
#[derive(Clone, Debug)]
pub struct Algebra<F: Field> {
    graph: Arc<Graph>,
    field: F,
}

impl<F: Field> Algebra<F> {
    pub fn new(graph: Graph, field: F) -> Algebra<F> {
        Algebra {
            graph: Arc::new(graph),
            field,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn zero(&self) -> Element<F> {
        Element {
            graph: self.graph.clone(),
            field: self.field.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// Builds an element from raw terms, normalizing each.
    pub fn normal_form<I>(&self, terms: I) -> Result<Element<F>>
    where
        I: IntoIterator<Item = (F::Elem, Path, Path)>,
    {
        let mut out = self.zero();
        for (c, alpha, beta) in terms {
            let m = Monomial::new(alpha, beta)?;
            accumulate(&self.graph, &self.field, &mut out.terms, m, c);
        }
        Ok(out)
    }

    pub fn monomial(&self, m: &Monomial) -> Element<F> {
        self.term(self.field.one(), m.clone())
    }

    pub fn term(&self, coef: F::Elem, m: Monomial) -> Element<F> {
        let mut out = self.zero();
        accumulate(&self.graph, &self.field, &mut out.terms, m, coef);
        out
    }

    pub fn scalar(&self, k: i64) -> F::Elem {
        self.field.from_i64(k)
    }

    pub fn vertex(&self, v: Vertex) -> Element<F> {
        self.monomial(&Monomial::vertex(v))
    }

    /// `Σ_v v`, the unit on a finite graph.
    pub fn one(&self) -> Element<F> {
        let mut out = self.zero();
        for v in self.graph.vertices() {
            out.terms.insert(Monomial::vertex(v), self.field.one());
        }
        out
    }

    pub fn edge(&self, e: Edge) -> Element<F> {
        self.path_element(&self.graph.edge_path(e))
    }

    pub fn ghost(&self, e: Edge) -> Element<F> {
        self.ghost_path(&self.graph.edge_path(e))
    }

    pub fn path_element(&self, p: &Path) -> Element<F> {
        self.path_times_ghost(p, &Path::trivial(p.range()))
    }

    pub fn ghost_path(&self, p: &Path) -> Element<F> {
        self.path_times_ghost(&Path::trivial(p.range()), p)
    }

    /// `αβ*`; zero when `r(α) ≠ r(β)`.
    pub fn path_times_ghost(&self, alpha: &Path, beta: &Path) -> Element<F> {
        match Monomial::new(alpha.clone(), beta.clone()) {
            Ok(m) => self.monomial(&m),
            Err(_) => self.zero(),
        }
    }

    pub fn add(&self, x: &Element<F>, y: &Element<F>) -> Element<F> {
        x + y
    }

    pub fn sub(&self, x: &Element<F>, y: &Element<F>) -> Element<F> {
        x - y
    }

    pub fn mul(&self, x: &Element<F>, y: &Element<F>) -> Element<F> {
        x * y
    }

    pub fn involution(&self, x: &Element<F>) -> Element<F> {
        x.involution()
    }

    pub fn render(&self, x: &Element<F>) -> String {
        render::render(x)
    }

    pub fn parse(&self, text: &str) -> Result<Element<F>> {
        render::parse(self, text)
    }

    /// Every vertex, edge and ghost edge, labelled.
    pub fn generators(&self) -> Vec<(String, Element<F>)> {
        let g = &self.graph;
        let mut out: Vec<(String, Element<F>)> = g
            .vertices()
            .map(|v| (g.vertex_name(v).to_string(), self.vertex(v)))
            .collect();
        for e in g.edges() {
            out.push((g.edge_name(e).to_string(), self.edge(e)));
        }
        for e in g.edges() {
            out.push((format!("{}*", g.edge_name(e)), self.ghost(e)));
        }
        out
    }

    /// Commutes `x` past every generator; the generators span the algebra.
    pub fn is_central(&self, x: &Element<F>) -> Result<Centrality> {
        for (label, gen) in self.generators() {
            let c = x.commutator(&gen)?;
            if !c.is_zero() {
                return Ok(Centrality {
                    central: false,
                    witness: Some((label, c.render())),
                });
            }
        }
        Ok(Centrality {
            central: true,
            witness: None,
        })
    }

    /// All normal monomials with `|α| + |β| ≤ max_total_len`, in canonical
    /// order.
    pub fn normal_monomials(&self, max_total_len: usize) -> Vec<Monomial> {
        let g = &self.graph;
        let paths = g.paths_up_to(max_total_len);
        let mut by_range: BTreeMap<Vertex, Vec<&Path>> = BTreeMap::new();
        for p in &paths {
            by_range.entry(p.range()).or_default().push(p);
        }
        let mut out = Vec::new();
        for group in by_range.values() {
            for a in group {
                for b in group {
                    if a.len() + b.len() <= max_total_len {
                        let m = Monomial {
                            alpha: (*a).clone(),
                            beta: (*b).clone(),
                        };
                        if m.is_normal(g) {
                            out.push(m);
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    pub fn normal_monomials_of_degree(&self, degree: i64, max_total_len: usize) -> Vec<Monomial> {
        self.normal_monomials(max_total_len)
            .into_iter()
            .filter(|m| m.degree() == degree)
            .collect()
    }
}

/// Lexicographically least edge id leaving `v`.
pub fn special_edge(g: &Graph, v: Vertex) -> Result<Edge> {
    g.special_edge(v)
        .ok_or_else(|| Error::Sink(g.vertex_name(v).to_string()))
}
