//! Bounded search for `α* x β` landing in `K v` or in a Laurent corner
//! `K[c, c*]` of a cycle without exits.

use serde::Serialize;

use super::{Algebra, Element, Field, Monomial};
use crate::error::{Error, Result};
use crate::graph::{Cycle, Graph, Path, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum CornerCase {
    /// `α* x β = k v`
    Vertex { coefficient: String, vertex: String },
    /// Every term is `c_u^m` or `(c_u*)^m` for one cycle `c` without exits.
    Laurent { cycle: Vec<String>, base: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CornerReduction {
    pub alpha: String,
    pub beta: String,
    pub result: String,
    #[serde(flatten)]
    pub case: CornerCase,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum CornerOutcome {
    Found(CornerReduction),
    /// No pair within the bound worked; this says nothing about larger ones.
    Inconclusive {
        pairs_tried: usize,
    },
}

/// Tries pairs `(α, β)` with `|α|, |β| ≤ max_len`, shortest total length
/// first.
pub fn reduce_to_corner<F: Field>(
    alg: &Algebra<F>,
    x: &Element<F>,
    max_len: usize,
) -> Result<CornerOutcome> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    let g = alg.graph();
    let paths = g.paths_up_to(max_len);
    let no_exit: Vec<Cycle> = g
        .simple_cycles()
        .into_iter()
        .filter(|c| g.cycle_exits(c).map(|e| e.is_empty()).unwrap_or(false))
        .collect();
    let mut pairs: Vec<(&Path, &Path)> = Vec::new();
    for a in &paths {
        for b in &paths {
            pairs.push((a, b));
        }
    }
    // paths_up_to is already in (len, source, edges) order, so a stable
    // sort by total length keeps α then β order within a length.
    pairs.sort_by_key(|(a, b)| a.len() + b.len());
    for (a, b) in &pairs {
        let y = &(&alg.ghost_path(a) * x) * &alg.path_element(b);
        if y.is_zero() {
            continue;
        }
        if let Some(case) = classify_corner(g, &y, &no_exit) {
            return Ok(CornerOutcome::Found(CornerReduction {
                alpha: a.render(g),
                beta: b.render(g),
                result: y.render(),
                case,
            }));
        }
    }
    Ok(CornerOutcome::Inconclusive {
        pairs_tried: pairs.len(),
    })
}

fn classify_corner<F: Field>(g: &Graph, y: &Element<F>, no_exit: &[Cycle]) -> Option<CornerCase> {
    let terms: Vec<(&Monomial, &F::Elem)> = y.terms().collect();
    if let [(m, k)] = terms.as_slice() {
        if m.total_len() == 0 {
            return Some(CornerCase::Vertex {
                coefficient: y.field().render(k),
                vertex: g.vertex_name(m.alpha().source()).to_string(),
            });
        }
    }
    let u: Vertex = terms.first()?.0.alpha().source();
    let c = no_exit.iter().find(|c| c.vertices(g).contains(&u))?;
    let rot = c.rotation(g, u)?;
    let is_power = |p: &Path| {
        p.source() == u
            && p.range() == u
            && p.len().is_multiple_of(rot.len())
            && p.edges().chunks(rot.len()).all(|ch| ch == rot.edges())
    };
    let all = terms.iter().all(|(m, _)| {
        (m.beta().is_empty() && is_power(m.alpha())) || (m.alpha().is_empty() && is_power(m.beta()))
    });
    all.then(|| CornerCase::Laurent {
        cycle: c.edge_names(g),
        base: g.vertex_name(u).to_string(),
    })
}
