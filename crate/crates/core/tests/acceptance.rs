//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Sizes and seeds are fixed so reruns are identical.

mod oracles;

use std::collections::BTreeSet;
use std::time::Instant;

use lpa_core::center::{center_report, compare_with_oracle, default_window};
use lpa_core::classify::{
    directedness_failure, ideal_structure_of, is_purely_infinite_simple, prime_trichotomy_of,
    x_decomposition, PrimeCase,
};
use lpa_core::engine::{Algebra, Rationals};
use lpa_core::fixtures;
use lpa_core::hereditary::{
    hereditary_closure, hs_closure, resolve_vertex, restriction_graph,
    restriction_relation_failures, saturated_closure, HereditarySet,
};
use lpa_core::random::{random_graphs, RandomConfig};
use lpa_core::report::{campaign, center_envelope, classify_envelope, CenterOptions};
use lpa_core::{parse_graph, Graph, Path, Vertex};
use oracles::{brute_hs_closure, reach_plus, reaches};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn graphs(seed: u64, count: usize, v: usize, e: usize) -> Vec<Graph> {
    random_graphs(&RandomConfig {
        seed,
        count,
        max_vertices: v,
        max_edges: e,
    })
    .expect("valid config")
}

/// 500 graphs, at most 6 vertices and 12 edges.
fn campaign_graphs() -> Vec<Graph> {
    graphs(20240611, 500, 6, 12)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fixture_centers() -> Check {
    // (fixture, K summands, Laurent summands, expects a divergence flag)
    let expected = [
        ("loop", 0, 1, false),
        ("line3", 1, 0, false),
        ("toeplitz", 1, 0, false),
        ("r2", 1, 0, false),
        ("ext2", 1, 0, false),
        ("loop_loop", 0, 2, false),
        ("cwe", 1, 0, true),
    ];
    for (name, k, laurent, flagged) in expected {
        let doc = fixtures::ALL.iter().find(|(n, _)| *n == name).unwrap().1;
        let g = parse_graph(doc).unwrap();
        let alg = Algebra::new(g.clone(), Rationals);
        let r = center_report(&alg, &x_decomposition(&g), default_window(&g));
        ensure(r.iso_type.k == k && r.iso_type.laurent == laurent, || {
            format!("{name}: got {}", r.iso_type.describe())
        })?;
        ensure(r.divergence_flags.is_empty() != flagged, || {
            format!("{name}: divergence flags {:?}", r.divergence_flags)
        })?;
        if name == "toeplitz" {
            let u = alg.vertex(g.vertex("u").unwrap());
            let v = alg.vertex(g.vertex("v").unwrap());
            ensure(
                r.basis_zero.len() == 1 && r.basis_zero[0].element == &u + &v,
                || "toeplitz: basis is not {u + v}".into(),
            )?;
        }
    }
    Ok("7 fixtures exact".into())
}

fn centrality() -> Check {
    let gs = campaign_graphs();
    let counted: Result<Vec<usize>, String> = gs
        .par_iter()
        .map(|g| {
            let alg = Algebra::new(g.clone(), Rationals);
            let r = center_report(&alg, &x_decomposition(g), 4);
            let mut n = 0;
            for b in r.all_elements() {
                let c = alg.is_central(&b.element).map_err(|e| e.to_string())?;
                if !c.central {
                    return Err(format!(
                        "{} not central on {}: {:?}",
                        b.element,
                        g.to_json(),
                        c.witness
                    ));
                }
                n += 1;
            }
            Ok(n)
        })
        .collect();
    Ok(format!(
        "{} elements on {} graphs",
        counted?.iter().sum::<usize>(),
        gs.len()
    ))
}

fn oracle_equivalence() -> Check {
    let mut gs: Vec<Graph> = fixtures::ALL
        .iter()
        .map(|(_, d)| parse_graph(d).unwrap())
        .collect();
    gs.extend(graphs(77, 100, 5, 10));
    let done: Result<Vec<usize>, String> = gs
        .par_iter()
        .map(|g| {
            let alg = Algebra::new(g.clone(), Rationals);
            let r = center_report(&alg, &x_decomposition(g), 2);
            for n in -2..=2 {
                let cmp = compare_with_oracle(&alg, r.basis_of_degree(n), n, None)
                    .map_err(|e| e.to_string())?;
                if !cmp.agrees {
                    return Err(format!("degree {n} on {}: {cmp:?}", g.to_json()));
                }
            }
            Ok(5)
        })
        .collect();
    Ok(format!(
        "{} degree comparisons on {} graphs",
        done?.iter().sum::<usize>(),
        gs.len()
    ))
}

fn orthogonality() -> Check {
    let mut pairs = 0;
    for g in campaign_graphs() {
        let alg = Algebra::new(g.clone(), Rationals);
        let b0 = lpa_core::center::basis_zero(&alg, &x_decomposition(&g));
        for (i, a) in b0.iter().enumerate() {
            for (j, b) in b0.iter().enumerate() {
                let p = &a.element * &b.element;
                let ok = if i == j { p == a.element } else { p.is_zero() };
                ensure(ok, || format!("classes {i},{j} on {}", g.to_json()))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} products"))
}

fn dimensions() -> Check {
    let line = Algebra::new(fixtures::line3(), Rationals);
    let n = line.normal_monomials(12).len();
    ensure(n == 9, || format!("line3 has {n} normal monomials"))?;
    let lp = Algebra::new(fixtures::loop_graph(), Rationals);
    let ms = lp.normal_monomials(8);
    ensure(
        ms.len() == 17
            && ms
                .iter()
                .all(|m| m.alpha().is_empty() || m.beta().is_empty()),
        || format!("loop monomials: {}", ms.len()),
    )?;
    let mut regular = 0;
    for g in campaign_graphs() {
        let alg = Algebra::new(g.clone(), Rationals);
        for v in g.vertices().filter(|&v| !g.is_sink(v)) {
            let mut terms = vec![(alg.scalar(1), Path::trivial(v), Path::trivial(v))];
            for &e in g.out_edges(v) {
                terms.push((alg.scalar(-1), g.edge_path(e), g.edge_path(e)));
            }
            let x = alg.normal_form(terms).unwrap();
            ensure(x.is_zero(), || {
                format!("relation at {} leaves {x}", g.vertex_name(v))
            })?;
            regular += 1;
        }
    }
    Ok(format!("9 / 2L+1 monomials, {regular} regular vertices"))
}

fn random_set<R: Rng>(g: &Graph, rng: &mut R) -> BTreeSet<Vertex> {
    g.vertices().filter(|_| rng.gen_bool(0.3)).collect()
}

fn closure_laws() -> Check {
    let gs = graphs(606, 1000, 6, 10);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for g in &gs {
        let h1 = hereditary_closure(g, &random_set(g, &mut rng)).unwrap();
        let h2 = hereditary_closure(g, &random_set(g, &mut rng)).unwrap();
        let c1 = saturated_closure(g, &h1).unwrap();
        let c2 = saturated_closure(g, &h2).unwrap();
        let meet: BTreeSet<Vertex> = h1.members().intersection(h2.members()).copied().collect();
        let lhs = hs_closure(g, &meet).unwrap();
        let rhs: BTreeSet<Vertex> = c1.members().intersection(c2.members()).copied().collect();
        ensure(lhs.members() == &rhs, || {
            format!("intersection law on {}", g.to_json())
        })?;
        let brute = brute_hs_closure(g, &meet.iter().map(|v| v.index()).collect());
        let got: BTreeSet<usize> = lhs.members().iter().map(|v| v.index()).collect();
        ensure(got == brute, || {
            format!("closure disagrees with powerset search on {}", g.to_json())
        })?;
        ensure(saturated_closure(g, &c1).unwrap() == c1, || {
            "not idempotent".into()
        })?;
        let union: BTreeSet<Vertex> = h1.members().union(h2.members()).copied().collect();
        let hu = HereditarySet::new(g, union).unwrap();
        let cu = saturated_closure(g, &hu).unwrap();
        ensure(c1.members().is_subset(cu.members()), || {
            "not monotone".into()
        })?;
    }
    Ok(format!("{} pairs", gs.len()))
}

fn density() -> Check {
    for g in campaign_graphs() {
        let cls = x_decomposition(&g);
        ensure(ideal_structure_of(&g, &cls).dense, || {
            format!("not dense on {}", g.to_json())
        })?;
        let r = reach_plus(&g);
        let p: Vec<usize> = cls.p().iter().map(|v| v.index()).collect();
        let all = (0..g.vertex_count()).all(|u| p.iter().any(|&w| reaches(&r, u, w)));
        ensure(all, || format!("a vertex misses P on {}", g.to_json()))?;
    }
    Ok("500 graphs".into())
}

fn restriction_soundness() -> Check {
    let mut classes = 0;
    for g in campaign_graphs() {
        let alg = Algebra::new(g.clone(), Rationals);
        for x in &x_decomposition(&g).extreme {
            let h = HereditarySet::new(&g, x.vertices.clone()).unwrap();
            let Ok(rg) = restriction_graph(&g, &h) else {
                continue;
            };
            let fails = restriction_relation_failures(&alg, &rg);
            ensure(fails.is_empty(), || format!("{fails:?} on {}", g.to_json()))?;
            let cert = is_purely_infinite_simple(&rg.graph);
            ensure(cert.purely_infinite_simple, || {
                format!("{cert:?} on {}", g.to_json())
            })?;
            classes += 1;
        }
    }
    ensure(classes > 0, || {
        "no extreme class with finite entry paths".into()
    })?;
    Ok(format!("{classes} classes"))
}

fn prime_trichotomy() -> Check {
    let mut prime = 0;
    for g in campaign_graphs() {
        if directedness_failure(&g).is_some() {
            continue;
        }
        prime += 1;
        let cls = x_decomposition(&g);
        let sinks = g.sinks();
        let no_exit: Vec<_> = cls.cycles.iter().filter(|c| !c.has_exits).collect();
        let terminal = [sinks.len() == 1, no_exit.len() == 1, cls.extreme.len() == 1];
        ensure(terminal.iter().filter(|&&t| t).count() == 1, || {
            format!("{terminal:?} on {}", g.to_json())
        })?;
        let r = reach_plus(&g);
        let everyone_reaches = |target: &BTreeSet<Vertex>| {
            g.vertices()
                .all(|u| target.iter().any(|w| reaches(&r, u.index(), w.index())))
        };
        let ok = match prime_trichotomy_of(&g, &cls).case {
            PrimeCase::Sink { sink, .. } => {
                terminal[0] && everyone_reaches(&BTreeSet::from([g.vertex(&sink).unwrap()]))
            }
            PrimeCase::NoExitCycle { cycle, .. } => {
                terminal[1]
                    && everyone_reaches(&no_exit[0].cycle.vertices(&g))
                    && cycle == no_exit[0].cycle.edge_names(&g)
            }
            PrimeCase::Extreme { vertices, .. } => {
                terminal[2] && vertices == g.names(&cls.extreme[0].vertices)
            }
            PrimeCase::NotPrime { .. } => false,
        };
        ensure(ok, || format!("witness fails on {}", g.to_json()))?;
    }
    ensure(prime > 0, || "no downward directed graph".into())?;
    Ok(format!("{prime} directed graphs"))
}

fn positive_degrees() -> Check {
    let mut products = 0;
    for g in campaign_graphs() {
        let alg = Algebra::new(g.clone(), Rationals);
        let cls = x_decomposition(&g);
        let r = center_report(&alg, &cls, 4);
        let killers: BTreeSet<Vertex> = cls
            .p_l
            .iter()
            .chain(&cls.p_e)
            .chain(&cls.p_c_plus)
            .copied()
            .collect();
        for n in 1..=4 {
            for b in r.basis_of_degree(n) {
                for &u in &killers {
                    ensure((&b.element * &alg.vertex(u)).is_zero(), || {
                        format!("{} · {} on {}", b.element, g.vertex_name(u), g.to_json())
                    })?;
                    products += 1;
                }
            }
        }
    }
    Ok(format!("{products} products"))
}

fn resolve_soundness() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut triples = 0;
    let mut attempts = 0;
    while triples < 200 {
        attempts += 1;
        ensure(attempts < 20_000, || "too few usable triples".into())?;
        let g = graphs(rng.gen(), 1, 6, 10).pop().unwrap();
        let h = hereditary_closure(&g, &random_set(&g, &mut rng)).unwrap();
        let closure = saturated_closure(&g, &h).unwrap();
        let extra: Vec<Vertex> = closure.members().difference(h.members()).copied().collect();
        let pool: Vec<Vertex> = if extra.is_empty() || rng.gen_bool(0.2) {
            closure.members().iter().copied().collect()
        } else {
            extra
        };
        if pool.is_empty() {
            continue;
        }
        let v = pool[rng.gen_range(0..pool.len())];
        let alg = Algebra::new(g.clone(), Rationals);
        let paths = resolve_vertex(&g, v, &h).map_err(|e| e.to_string())?;
        ensure(paths.iter().all(|p| h.contains(p.range())), || {
            "path ends outside H".into()
        })?;
        let sum = alg
            .normal_form(paths.iter().map(|p| (alg.scalar(1), p.clone(), p.clone())))
            .unwrap();
        ensure(sum == alg.vertex(v), || {
            format!("{sum} ≠ {} on {}", g.vertex_name(v), g.to_json())
        })?;
        triples += 1;
    }
    Ok(format!("{triples} triples"))
}

fn determinism() -> Check {
    let opts = CenterOptions {
        verify: true,
        oracle: true,
        ..Default::default()
    };
    for (name, doc) in fixtures::ALL {
        let g = parse_graph(doc).unwrap();
        ensure(
            classify_envelope(&g).to_json() == classify_envelope(&g).to_json(),
            || name.to_string(),
        )?;
        let a = center_envelope(&g, Rationals, &opts).to_json();
        let b = center_envelope(&parse_graph(doc).unwrap(), Rationals, &opts).to_json();
        ensure(a == b, || name.to_string())?;
    }
    let cfg = RandomConfig {
        seed: 99,
        count: 60,
        max_vertices: 5,
        max_edges: 10,
    };
    let a = campaign(&cfg, Rationals, &opts).unwrap().to_json_lines();
    let b = campaign(&cfg, Rationals, &opts).unwrap().to_json_lines();
    ensure(a == b, || "campaign output differs".into())?;
    Ok(format!(
        "{} fixtures, {} campaign bytes",
        fixtures::ALL.len(),
        a.len()
    ))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("fixture centers", fixture_centers),
        ("centrality of emitted bases", centrality),
        ("oracle span equality", oracle_equivalence),
        ("class idempotents orthogonal", orthogonality),
        ("engine dimensions and CK2", dimensions),
        ("closure laws", closure_laws),
        ("density of the P ideal", density),
        ("restriction graph soundness", restriction_soundness),
        ("prime trichotomy", prime_trichotomy),
        ("positive degrees kill P_l, P_e, P_c+", positive_degrees),
        ("resolve soundness", resolve_soundness),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
