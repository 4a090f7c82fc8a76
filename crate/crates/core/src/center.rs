//! Explicit bases of the homogeneous components of the center, and an
//! independent brute-force commutant for cross-checking them.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::classify::{ClassType, Classification, XClass};
use crate::engine::{Algebra, Element, Field, Monomial};
use crate::error::{Error, Result};
use crate::graph::{Cycle, Path};
use crate::hereditary::{first_entry_paths, EntryPaths};
use crate::linalg::{same_span, Echelon, SparseVec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Provenance {
    /// Index into `X_f`.
    pub class: usize,
    /// Edge ids of the cycle, for nonzero degrees.
    pub cycle: Option<Vec<String>>,
    pub power: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralBasisElement<F: Field> {
    pub degree: i64,
    pub element: Element<F>,
    pub provenance: Provenance,
}

/// `Σ_{u ∈ H} u + Σ_{α ∈ F_E(H)} αα*` for the closure `H` of a finite class.
pub fn a_class<F: Field>(
    alg: &Algebra<F>,
    index: usize,
    class: &XClass,
) -> Result<CentralBasisElement<F>> {
    let EntryPaths::Finite(alphas) = &class.entry_paths else {
        return Err(Error::InfiniteClass);
    };
    let mut x = alg.zero();
    for &u in &class.closure {
        x = &x + &alg.vertex(u);
    }
    for a in alphas {
        x = &x + &alg.path_times_ghost(a, a);
    }
    Ok(CentralBasisElement {
        degree: 0,
        element: x,
        provenance: Provenance {
            class: index,
            cycle: None,
            power: 0,
        },
    })
}

pub fn basis_zero<F: Field>(alg: &Algebra<F>, cls: &Classification) -> Vec<CentralBasisElement<F>> {
    cls.x_f
        .iter()
        .enumerate()
        .map(|(i, c)| a_class(alg, i, c).expect("X_f classes are finite"))
        .collect()
}

fn power(g: &crate::graph::Graph, c: &Cycle, u: crate::graph::Vertex, m: u64) -> Path {
    let rot = c.rotation(g, u).expect("u lies on c");
    let mut p = Path::trivial(u);
    for _ in 0..m {
        p = p.concat(&rot).expect("closed path");
    }
    p
}

/// One element per cycle `c ∈ S` with `l(c) | n`.
pub fn basis_n<F: Field>(
    alg: &Algebra<F>,
    cls: &Classification,
    n: i64,
) -> Result<Vec<CentralBasisElement<F>>> {
    if n == 0 {
        return Err(Error::ZeroDegree);
    }
    let g = alg.graph();
    let mut out = Vec::new();
    for info in cls.s_cycles() {
        let l = info.cycle.len() as i64;
        if n % l != 0 {
            continue;
        }
        let m = (n / l).unsigned_abs();
        let c0 = info.cycle.vertices(g);
        let mut x = alg.zero();
        for &u in &c0 {
            x = &x + &alg.path_element(&power(g, &info.cycle, u, m));
        }
        let EntryPaths::Finite(alphas) = first_entry_paths(g, &c0) else {
            unreachable!("cycles in S have finitely many entry paths");
        };
        for a in &alphas {
            let body = a
                .concat(&power(g, &info.cycle, a.range(), m))
                .expect("α ends on c");
            x = &x + &alg.path_times_ghost(&body, a);
        }
        if n < 0 {
            x = x.involution();
        }
        let class = cls
            .x_f
            .iter()
            .position(|c| c.s_cycles.contains(&info.cycle))
            .expect("S-cycles lie in finite classes");
        out.push(CentralBasisElement {
            degree: n,
            element: x,
            provenance: Provenance {
                class,
                cycle: Some(info.cycle.edge_names(g)),
                power: n / l,
            },
        });
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IsoType {
    #[serde(rename = "K")]
    pub k: usize,
    #[serde(rename = "Laurent")]
    pub laurent: usize,
}

impl IsoType {
    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        if self.k > 0 {
            parts.push(if self.k == 1 {
                "K".to_string()
            } else {
                format!("K^{}", self.k)
            });
        }
        if self.laurent > 0 {
            parts.push(if self.laurent == 1 {
                "K[x,x^-1]".to_string()
            } else {
                format!("K[x,x^-1]^{}", self.laurent)
            });
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentroidReport {
    pub sinks: usize,
    pub no_exit_cycles: usize,
    pub extreme_classes: usize,
    pub formula: String,
    pub status: &'static str,
}

/// `(m, n, n′)`: sinks, cycles without exits, classes of extreme cycles.
pub fn extended_centroid_report(g: &crate::graph::Graph, cls: &Classification) -> CentroidReport {
    let m = g.sinks().len();
    let n = cls.cycles.iter().filter(|c| !c.has_exits).count();
    let n_prime = cls.extreme.len();
    let k = m + n_prime;
    let formula = IsoType { k, laurent: n }.describe();
    CentroidReport {
        sinks: m,
        no_exit_cycles: n,
        extreme_classes: n_prime,
        formula,
        status: "stated formula, not independently verified",
    }
}

#[derive(Clone, Debug)]
pub struct CenterReport<F: Field> {
    pub basis_zero: Vec<CentralBasisElement<F>>,
    pub basis_nonzero: BTreeMap<i64, Vec<CentralBasisElement<F>>>,
    pub iso_type: IsoType,
    pub centroid: CentroidReport,
    pub divergence_flags: Vec<String>,
    pub window: i64,
}

/// Default degree window: twice the longest cycle.
pub fn default_window(g: &crate::graph::Graph) -> i64 {
    2 * g.simple_cycles().iter().map(Cycle::len).max().unwrap_or(0) as i64
}

pub fn center_report<F: Field>(
    alg: &Algebra<F>,
    cls: &Classification,
    window: i64,
) -> CenterReport<F> {
    let g = alg.graph();
    let mut iso = IsoType::default();
    let mut divergence_flags = Vec::new();
    for c in &cls.x_f {
        match c.class_type {
            Some(ClassType::CycleLaurent) => iso.laurent += 1,
            Some(ClassType::CycleDegenerate) => {
                iso.k += 1;
                divergence_flags.push(format!(
                    "class {{{}}} contains vertices of cycles without exits but no cycle of S; \
                     it contributes K, not K[x,x^-1], and its nonzero-degree central components vanish",
                    g.names(&c.members).join(", ")
                ));
            }
            _ => iso.k += 1,
        }
    }
    let basis_nonzero = (-window..=window)
        .filter(|&n| n != 0)
        .map(|n| (n, basis_n(alg, cls, n).expect("nonzero degree")))
        .collect();
    CenterReport {
        basis_zero: basis_zero(alg, cls),
        basis_nonzero,
        iso_type: iso,
        centroid: extended_centroid_report(g, cls),
        divergence_flags,
        window,
    }
}

impl<F: Field> CenterReport<F> {
    pub fn all_elements(&self) -> impl Iterator<Item = &CentralBasisElement<F>> {
        self.basis_zero
            .iter()
            .chain(self.basis_nonzero.values().flatten())
    }

    pub fn basis_of_degree(&self, n: i64) -> &[CentralBasisElement<F>] {
        if n == 0 {
            &self.basis_zero
        } else {
            self.basis_nonzero.get(&n).map(Vec::as_slice).unwrap_or(&[])
        }
    }
}

/// Basis of `{x ∈ span(normal monomials of degree n, |α|+|β| ≤ L) : [x, g] = 0
/// for every generator g}`.
pub fn oracle_commutant<F: Field>(
    alg: &Algebra<F>,
    degree: i64,
    max_len: usize,
) -> Vec<Element<F>> {
    let g = alg.graph();
    // `vαβ* = αβ*v` for every vertex exactly when `s(α) = s(β)`, so only
    // those monomials can appear.
    let mut basis: Vec<Element<F>> = alg
        .normal_monomials_of_degree(degree, max_len)
        .iter()
        .filter(|m| m.alpha().source() == m.beta().source())
        .map(|m| alg.monomial(m))
        .collect();
    // Edges and ghosts cut the space fastest; vertices go last as a check
    // on the filter above.
    let mut generators: Vec<Element<F>> = g.edges().map(|e| alg.edge(e)).collect();
    generators.extend(g.edges().map(|e| alg.ghost(e)));
    generators.extend(g.vertices().map(|v| alg.vertex(v)));
    for gen in &generators {
        if basis.is_empty() {
            break;
        }
        basis = commuting_part(alg, basis, gen);
    }
    basis
}

/// Basis of the elements of `span(basis)` that commute with `gen`.
fn commuting_part<F: Field>(
    alg: &Algebra<F>,
    basis: Vec<Element<F>>,
    gen: &Element<F>,
) -> Vec<Element<F>> {
    let images: Vec<Element<F>> = basis
        .par_iter()
        .map(|b| b.commutator(gen).expect("same algebra"))
        .collect();
    if images.iter().all(Element::is_zero) {
        return basis;
    }
    let mut rows: HashMap<Monomial, SparseVec<F>> = HashMap::new();
    for (j, img) in images.iter().enumerate() {
        for (out, c) in img.terms() {
            rows.entry(out.clone()).or_default().insert(j, c.clone());
        }
    }
    let mut keyed: Vec<(Monomial, SparseVec<F>)> = rows.into_iter().collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    let mut ech = Echelon::new(alg.field().clone());
    for (_, row) in keyed {
        ech.insert(row);
    }
    ech.kernel(basis.len())
        .into_iter()
        .map(|v| {
            if v.len() == 1 {
                let (&j, c) = v.iter().next().expect("one entry");
                if alg.field().is_one(c) {
                    return basis[j].clone();
                }
            }
            let mut x = alg.zero();
            for (j, c) in v {
                x = &x + &basis[j].scale(&c);
            }
            x
        })
        .collect()
}

/// Smallest oracle bound accepted for a degree: long enough for every basis
/// element and never below `|n| + 2`.
pub fn required_bound<F: Field>(basis: &[CentralBasisElement<F>], degree: i64) -> usize {
    basis
        .iter()
        .map(|b| b.element.max_total_len())
        .max()
        .unwrap_or(0)
        .max(degree.unsigned_abs() as usize + 2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleComparison {
    pub degree: i64,
    pub bound: usize,
    pub basis_dim: usize,
    pub oracle_dim: usize,
    pub agrees: bool,
}

/// Compares the oracle's space with the span of `basis` as exact subspaces.
pub fn compare_with_oracle<F: Field>(
    alg: &Algebra<F>,
    basis: &[CentralBasisElement<F>],
    degree: i64,
    max_len: Option<usize>,
) -> Result<OracleComparison> {
    let needed = required_bound(basis, degree);
    let bound = max_len.unwrap_or(needed);
    if bound < needed {
        return Err(Error::BoundTooSmall {
            given: bound,
            needed,
        });
    }
    let oracle = oracle_commutant(alg, degree, bound);
    let mut index: BTreeMap<Monomial, usize> = BTreeMap::new();
    let mut to_vec = |x: &Element<F>| -> SparseVec<F> {
        x.terms()
            .map(|(m, c)| {
                let n = index.len();
                (*index.entry(m.clone()).or_insert(n), c.clone())
            })
            .collect()
    };
    let ours: Vec<SparseVec<F>> = basis.iter().map(|b| to_vec(&b.element)).collect();
    let theirs: Vec<SparseVec<F>> = oracle.iter().map(&mut to_vec).collect();
    let field = alg.field();
    Ok(OracleComparison {
        degree,
        bound,
        basis_dim: crate::linalg::rank(field, &ours),
        oracle_dim: theirs.len(),
        agrees: same_span(field, &ours, &theirs),
    })
}
