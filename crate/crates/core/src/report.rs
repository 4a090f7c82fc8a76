//! The JSON report envelope shared by every command, its schema, and the
//! random campaign driver.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::center::{
    center_report, compare_with_oracle, default_window, CenterReport, CentralBasisElement,
    CentroidReport, IsoType, OracleComparison, Provenance,
};
use crate::classify::{
    ideal_structure_of, is_purely_infinite_simple, prime_trichotomy_of, x_decomposition, ClassType,
    Classification, ClassificationReport, IdealStructure, PisCertificate, PrimeReport,
};
use crate::engine::{Algebra, Field};
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphDocument};
use crate::random::{random_graphs, RandomConfig};

pub const SCHEMA: &str = include_str!("../schema/report.schema.json");

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CENTRALITY: i32 = 3;
pub const EXIT_ORACLE: i32 = 4;
pub const EXIT_INVARIANT: i32 = 5;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

const TOOL: Tool = Tool {
    name: "lpa",
    version: env!("CARGO_PKG_VERSION"),
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisEntry {
    pub degree: i64,
    pub element: String,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CenterSection {
    pub iso_type: IsoType,
    pub iso_description: String,
    pub window: i64,
    pub basis_zero: Vec<BasisEntry>,
    /// Keyed by degree.
    pub basis_nonzero: BTreeMap<String, Vec<BasisEntry>>,
    pub centroid: CentroidReport,
    pub divergence_flags: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub generator: String,
    pub commutator: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub degree: i64,
    pub element: String,
    pub status: VerdictStatus,
    pub witness: Option<Witness>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleStatus {
    Agree,
    Mismatch,
    BoundTooSmall,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleSection {
    pub status: OracleStatus,
    pub comparisons: Vec<OracleComparison>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportEnvelope {
    pub tool: Tool,
    pub command: &'static str,
    pub field: String,
    pub graph: GraphDocument,
    pub classification: ClassificationReport,
    pub ideal_structure: IdealStructure,
    pub purely_infinite_simple: PisCertificate,
    pub prime: PrimeReport,
    pub center: Option<CenterSection>,
    pub verification: Vec<Verdict>,
    pub oracle: Option<OracleSection>,
    pub invariant_breaches: Vec<String>,
}

impl ReportEnvelope {
    /// Invariant breaches win over centrality failures, which win over
    /// oracle problems.
    pub fn exit_code(&self) -> i32 {
        if !self.invariant_breaches.is_empty() {
            EXIT_INVARIANT
        } else if self
            .verification
            .iter()
            .any(|v| v.status == VerdictStatus::Fail)
        {
            EXIT_CENTRALITY
        } else if self
            .oracle
            .as_ref()
            .is_some_and(|o| o.status != OracleStatus::Agree)
        {
            EXIT_ORACLE
        } else {
            EXIT_OK
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CenterOptions {
    pub verify: bool,
    pub oracle: bool,
    pub max_len: Option<usize>,
    pub window: Option<i64>,
}

/// Structural checks on a classification, as human-readable breaches.
pub fn classification_breaches(g: &Graph, cls: &Classification) -> Vec<String> {
    let mut out = Vec::new();
    if !cls.p_l.is_disjoint(&cls.p_c)
        || !cls.p_l.is_disjoint(&cls.p_ec)
        || !cls.p_c.is_disjoint(&cls.p_ec)
    {
        out.push("P_l, P_c and P_ec are not pairwise disjoint".to_string());
    }
    let split: crate::graph::VertexSet = cls.p_c_plus.union(&cls.p_c_minus).copied().collect();
    if split != cls.p_c || !cls.p_c_plus.is_disjoint(&cls.p_c_minus) {
        out.push("P_c is not the disjoint union of P_c_plus and P_c_minus".to_string());
    }
    for info in &cls.cycles {
        if info.is_extreme && !info.has_exits {
            out.push(format!(
                "extreme cycle {} has no exits",
                info.cycle.render(g)
            ));
        }
        if info.in_s != (!info.has_exits && info.wrap_count.is_finite()) {
            out.push(format!(
                "S membership of {} is inconsistent",
                info.cycle.render(g)
            ));
        }
    }
    let classes: Vec<_> = cls.x_f.iter().chain(&cls.x_inf).collect();
    for c in &classes {
        if !crate::classify::class_is_hereditary(g, &c.members) {
            out.push(format!(
                "class {{{}}} is not hereditary",
                g.names(&c.members).join(", ")
            ));
        }
    }
    for (i, a) in classes.iter().enumerate() {
        for b in &classes[i + 1..] {
            if !a.closure.is_disjoint(&b.closure) {
                out.push(format!(
                    "classes {{{}}} and {{{}}} have overlapping closures",
                    g.names(&a.members).join(", "),
                    g.names(&b.members).join(", ")
                ));
            }
        }
    }
    for c in &cls.x_f {
        if c.class_type == Some(ClassType::CycleLaurent) && c.s_cycles.len() != 1 {
            out.push(format!(
                "Laurent class {{{}}} holds {} cycles of S",
                g.names(&c.members).join(", "),
                c.s_cycles.len()
            ));
        }
    }
    out
}

fn center_breaches<F: Field>(cls: &Classification, center: &CenterReport<F>) -> Vec<String> {
    let mut out = Vec::new();
    if center.basis_zero.len() != cls.x_f.len() {
        out.push("degree-zero basis size differs from the number of finite classes".to_string());
    }
    let laurent = cls
        .x_f
        .iter()
        .filter(|c| c.class_type == Some(ClassType::CycleLaurent))
        .count();
    if center.iso_type.laurent != laurent {
        out.push("Laurent multiplicity differs from the number of Laurent classes".to_string());
    }
    for b in center.all_elements() {
        if b.element.homogeneous_degree() != Some(b.degree) {
            out.push(format!(
                "{} is not homogeneous of degree {}",
                b.element.render(),
                b.degree
            ));
        }
    }
    out
}

fn entry<F: Field>(b: &CentralBasisElement<F>) -> BasisEntry {
    BasisEntry {
        degree: b.degree,
        element: b.element.render(),
        provenance: b.provenance.clone(),
    }
}

fn base_envelope(
    g: &Graph,
    cls: &Classification,
    command: &'static str,
    field: String,
) -> ReportEnvelope {
    ReportEnvelope {
        tool: TOOL,
        command,
        field,
        graph: g.to_document(),
        classification: cls.report(g),
        ideal_structure: ideal_structure_of(g, cls),
        purely_infinite_simple: is_purely_infinite_simple(g),
        prime: prime_trichotomy_of(g, cls),
        center: None,
        verification: Vec::new(),
        oracle: None,
        invariant_breaches: classification_breaches(g, cls),
    }
}

pub fn classify_envelope(g: &Graph) -> ReportEnvelope {
    let cls = x_decomposition(g);
    base_envelope(g, &cls, "classify", "Q".to_string())
}

pub fn center_envelope<F: Field>(g: &Graph, field: F, opts: &CenterOptions) -> ReportEnvelope {
    center_envelope_named(g, field, opts, "center")
}

fn center_envelope_named<F: Field>(
    g: &Graph,
    field: F,
    opts: &CenterOptions,
    command: &'static str,
) -> ReportEnvelope {
    let cls = x_decomposition(g);
    let mut env = base_envelope(g, &cls, command, field.name());
    let alg = Algebra::new(g.clone(), field);
    let window = opts.window.unwrap_or_else(|| default_window(g));
    let center = center_report(&alg, &cls, window);
    env.invariant_breaches
        .extend(center_breaches(&cls, &center));
    env.verification = center
        .all_elements()
        .map(|b| {
            let (status, witness) = if opts.verify {
                let c = alg.is_central(&b.element).expect("same graph");
                match c.witness {
                    None => (VerdictStatus::Pass, None),
                    Some((generator, commutator)) => (
                        VerdictStatus::Fail,
                        Some(Witness {
                            generator,
                            commutator,
                        }),
                    ),
                }
            } else {
                (VerdictStatus::Skipped, None)
            };
            Verdict {
                degree: b.degree,
                element: b.element.render(),
                status,
                witness,
            }
        })
        .collect();
    if opts.oracle {
        env.oracle = Some(run_oracle(&alg, &center, opts.max_len));
    }
    env.center = Some(CenterSection {
        iso_type: center.iso_type,
        iso_description: center.iso_type.describe(),
        window,
        basis_zero: center.basis_zero.iter().map(entry).collect(),
        basis_nonzero: center
            .basis_nonzero
            .iter()
            .map(|(n, bs)| (n.to_string(), bs.iter().map(entry).collect()))
            .collect(),
        centroid: center.centroid.clone(),
        divergence_flags: center.divergence_flags.clone(),
    });
    env
}

/// Oracle degrees: zero and `0 < |n| ≤ min(window, 2)`.
pub fn oracle_degrees(window: i64) -> Vec<i64> {
    let w = window.clamp(0, 2);
    (-w..=w).collect()
}

fn run_oracle<F: Field>(
    alg: &Algebra<F>,
    center: &CenterReport<F>,
    max_len: Option<usize>,
) -> OracleSection {
    let mut comparisons = Vec::new();
    for n in oracle_degrees(center.window) {
        match compare_with_oracle(alg, center.basis_of_degree(n), n, max_len) {
            Ok(c) => comparisons.push(c),
            Err(e @ Error::BoundTooSmall { .. }) => {
                return OracleSection {
                    status: OracleStatus::BoundTooSmall,
                    comparisons,
                    error: Some(format!("degree {n}: {e}")),
                }
            }
            Err(e) => {
                return OracleSection {
                    status: OracleStatus::Mismatch,
                    comparisons,
                    error: Some(e.to_string()),
                }
            }
        }
    }
    let status = if comparisons.iter().all(|c| c.agrees) {
        OracleStatus::Agree
    } else {
        OracleStatus::Mismatch
    };
    OracleSection {
        status,
        comparisons,
        error: None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CampaignSummary {
    pub seed: u64,
    pub graphs: usize,
    pub verified: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Campaign {
    pub envelopes: Vec<ReportEnvelope>,
    pub summary: CampaignSummary,
}

impl Campaign {
    pub fn exit_code(&self) -> i32 {
        self.envelopes
            .iter()
            .map(ReportEnvelope::exit_code)
            .find(|&c| c != EXIT_OK)
            .unwrap_or(EXIT_OK)
    }

    /// One compact JSON line per graph, then a summary line.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for env in &self.envelopes {
            out.push_str(&env.to_json_line());
            out.push('\n');
        }
        let summary = serde_json::json!({ "summary": self.summary });
        out.push_str(&summary.to_string());
        out.push('\n');
        out
    }
}

/// Runs classification, center construction and verification on every
/// generated graph. Graphs are processed in parallel; output keeps index
/// order.
pub fn campaign<F: Field>(cfg: &RandomConfig, field: F, opts: &CenterOptions) -> Result<Campaign> {
    let graphs = random_graphs(cfg)?;
    let opts = CenterOptions {
        verify: true,
        ..*opts
    };
    let envelopes: Vec<ReportEnvelope> = graphs
        .par_iter()
        .map(|g| center_envelope_named(g, field.clone(), &opts, "random"))
        .collect();
    let verified = envelopes
        .iter()
        .filter(|e| e.exit_code() == EXIT_OK)
        .count();
    Ok(Campaign {
        summary: CampaignSummary {
            seed: cfg.seed,
            graphs: envelopes.len(),
            verified,
            failed: envelopes.len() - verified,
        },
        envelopes,
    })
}

/// Human-readable rendering of an envelope.
pub fn render_text(env: &ReportEnvelope) -> String {
    let mut s = String::new();
    let c = &env.classification;
    let set = |v: &[String]| format!("{{{}}}", v.join(", "));
    let _ = writeln!(
        s,
        "{} {} ({} over {})",
        env.tool.name, env.tool.version, env.command, env.field
    );
    let _ = writeln!(s, "P_l = {}", set(&c.p_l));
    let _ = writeln!(
        s,
        "P_c = {} (plus {}, minus {})",
        set(&c.p_c),
        set(&c.p_c_plus),
        set(&c.p_c_minus)
    );
    let _ = writeln!(s, "P_e = {}", set(&c.p_e));
    let _ = writeln!(s, "P_ec = {}", set(&c.p_ec));
    for x in &c.x_f {
        let kind = x
            .class_type
            .map(|t| {
                serde_json::to_value(t)
                    .expect("serializes")
                    .as_str()
                    .unwrap_or("")
                    .to_string()
            })
            .unwrap_or_default();
        let _ = writeln!(
            s,
            "class {} closure {} type {}",
            set(&x.members),
            set(&x.closure),
            kind
        );
    }
    let _ = writeln!(s, "dense: {}", env.ideal_structure.dense);
    let _ = writeln!(
        s,
        "purely infinite simple: {}",
        env.purely_infinite_simple.purely_infinite_simple
    );
    let _ = writeln!(
        s,
        "prime: {}",
        serde_json::to_string(&env.prime.case).expect("serializes")
    );
    if let Some(center) = &env.center {
        let _ = writeln!(s, "center: {}", center.iso_description);
        for b in &center.basis_zero {
            let _ = writeln!(s, "  deg 0: {}", b.element);
        }
        for bs in center.basis_nonzero.values() {
            for b in bs {
                let _ = writeln!(s, "  deg {}: {}", b.degree, b.element);
            }
        }
        for f in &center.divergence_flags {
            let _ = writeln!(s, "note: {f}");
        }
    }
    let failed = env
        .verification
        .iter()
        .filter(|v| v.status == VerdictStatus::Fail)
        .count();
    if env
        .verification
        .iter()
        .any(|v| v.status != VerdictStatus::Skipped)
    {
        let _ = writeln!(
            s,
            "verification: {} checked, {} failed",
            env.verification.len(),
            failed
        );
    }
    if let Some(o) = &env.oracle {
        let _ = writeln!(
            s,
            "oracle: {}{}",
            serde_json::to_value(o.status)
                .expect("serializes")
                .as_str()
                .unwrap_or(""),
            o.error
                .as_deref()
                .map(|e| format!(" ({e})"))
                .unwrap_or_default()
        );
    }
    for b in &env.invariant_breaches {
        let _ = writeln!(s, "invariant breach: {b}");
    }
    s
}
