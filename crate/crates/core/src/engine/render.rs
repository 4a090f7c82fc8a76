//! Text form of elements: `1·e1e2 (e2)* + (-1)·v1`.
//!
//! Coefficients that are nonnegative integers print bare, others in
//! parentheses. A path prints as its concatenated edge ids, or as the vertex
//! id when trivial. The parser re-segments concatenated ids against the
//! graph and refuses when more than one reading exists.

use std::collections::HashMap;

use super::{accumulate, Algebra, Element, Field, Monomial};
use crate::error::{Error, Result};
use crate::graph::{Graph, Path, Vertex};

pub(super) fn render<F: Field>(x: &Element<F>) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let g = x.graph();
    x.terms()
        .map(|(m, c)| {
            let coef = x.field().render(c);
            let coef = if coef.bytes().all(|b| b.is_ascii_digit()) {
                coef
            } else {
                format!("({coef})")
            };
            format!("{coef}·{}", render_monomial(g, m))
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn render_monomial(g: &Graph, m: &Monomial) -> String {
    match (m.alpha().is_empty(), m.beta().is_empty()) {
        (true, true) => g.vertex_name(m.alpha().source()).to_string(),
        (false, true) => m.alpha().render(g),
        (true, false) => format!("({})*", m.beta().render(g)),
        (false, false) => format!("{} ({})*", m.alpha().render(g), m.beta().render(g)),
    }
}

pub(super) fn parse<F: Field>(alg: &Algebra<F>, text: &str) -> Result<Element<F>> {
    let text = text.trim();
    let mut out = alg.zero();
    if text == "0" {
        return Ok(out);
    }
    let g = alg.graph();
    for term in text.split(" + ") {
        let (coef, mono) = term
            .split_once('·')
            .ok_or_else(|| syntax(format!("term `{term}` lacks `·`")))?;
        let coef = coef.trim();
        let inner = coef
            .strip_prefix('(')
            .and_then(|c| c.strip_suffix(')'))
            .unwrap_or(coef);
        let k = alg
            .field()
            .parse(inner)
            .ok_or_else(|| syntax(format!("bad coefficient `{coef}`")))?;
        let m = parse_monomial(g, mono)?;
        accumulate(g, alg.field(), &mut out.terms, m, k);
    }
    Ok(out)
}

fn syntax(msg: String) -> Error {
    Error::ElementSyntax(msg)
}

fn parse_monomial(g: &Graph, text: &str) -> Result<Monomial> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    let ghost_of = |t: &str| -> Option<Result<Path>> {
        let inner = t.strip_prefix('(')?.strip_suffix(")*")?;
        Some(edge_word(g, inner))
    };
    match tokens.as_slice() {
        [t] => match ghost_of(t) {
            Some(beta) => {
                let beta = beta?;
                Monomial::new(Path::trivial(beta.range()), beta)
            }
            None => {
                let alpha = real_token(g, t)?;
                Monomial::new(alpha.clone(), Path::trivial(alpha.range()))
            }
        },
        [a, b] => {
            let alpha = edge_word(g, a)?;
            let beta =
                ghost_of(b).ok_or_else(|| syntax(format!("`{b}` is not a ghost path")))??;
            Monomial::new(alpha, beta)
        }
        _ => Err(syntax(format!(
            "monomial `{text}` must have one or two parts"
        ))),
    }
}

/// A vertex id or a nonempty edge word.
fn real_token(g: &Graph, t: &str) -> Result<Path> {
    let as_vertex = g.vertex(t).ok();
    let as_path = segment(g, t);
    match (as_vertex, as_path) {
        (Some(_), Ok(_)) => Err(syntax(format!("`{t}` is both a vertex and a path"))),
        (Some(v), Err(_)) => Ok(Path::trivial(v)),
        (None, r) => r,
    }
}

fn edge_word(g: &Graph, t: &str) -> Result<Path> {
    segment(g, t)
}

/// Splits `word` into consecutive edge ids forming a path; exactly one
/// split must exist.
fn segment(g: &Graph, word: &str) -> Result<Path> {
    if word.is_empty() {
        return Err(syntax("empty path".to_string()));
    }
    let mut memo = HashMap::new();
    match ways(g, word, 0, None, &mut memo) {
        0 => Err(syntax(format!("`{word}` is not a path of the graph"))),
        1 => {
            let mut edges = Vec::new();
            let mut pos = 0;
            let mut at: Option<Vertex> = None;
            while pos < word.len() {
                let next = g
                    .edges()
                    .find(|&e| {
                        let name = g.edge_name(e);
                        word[pos..].starts_with(name)
                            && at.is_none_or(|v| g.src(e) == v)
                            && ways(g, word, pos + name.len(), Some(g.dst(e)), &mut memo) > 0
                    })
                    .expect("a unique split exists");
                edges.push(next);
                pos += g.edge_name(next).len();
                at = Some(g.dst(next));
            }
            Ok(g.path(&edges).expect("split is a path"))
        }
        _ => Err(syntax(format!(
            "`{word}` splits into edge ids in more than one way"
        ))),
    }
}

/// Number of splits of `word[pos..]` starting at `at`, capped at 2.
fn ways(
    g: &Graph,
    word: &str,
    pos: usize,
    at: Option<Vertex>,
    memo: &mut HashMap<(usize, Option<Vertex>), u8>,
) -> u8 {
    if pos == word.len() {
        return 1;
    }
    if let Some(&n) = memo.get(&(pos, at)) {
        return n;
    }
    let mut total = 0u8;
    for e in g.edges() {
        let name = g.edge_name(e);
        if word[pos..].starts_with(name) && at.is_none_or(|v| g.src(e) == v) {
            total = (total + ways(g, word, pos + name.len(), Some(g.dst(e)), memo)).min(2);
            if total == 2 {
                break;
            }
        }
    }
    memo.insert((pos, at), total);
    total
}
