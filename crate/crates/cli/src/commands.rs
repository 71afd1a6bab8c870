//! The eval, solve, and reduce commands.

use std::path::Path;
use std::process::ExitCode;

use clap::ValueEnum;
use serde::Serialize;

use ppcp_core::approx::{approx_ppcp, tree_mac_pcenter_exact};
use ppcp_core::dist::covering_radius;
use ppcp_core::evacuation::{evaluate, EvaluationReport};
use ppcp_core::exact::{
    min_vertex_cover_with, solve_ppcp_exact_with, OracleLimits, SolveReport,
};
use ppcp_core::feasibility::mac_decomposition;
use ppcp_core::instances::{to_json, InstanceDocument, SCHEMA_VERSION};
use ppcp_core::length::Length;
use ppcp_core::reduction::{
    build_bundle, default_orientation, verify_reduction_with, GadgetRecord, ReductionReport,
};
use ppcp_core::{CenterSet, Error, Result, WeightedGraph};

use crate::builtin::{load_embedding, load_instance};
use crate::render;

#[derive(Clone, Copy, ValueEnum)]
pub enum Mode {
    Exact,
    Approx,
    Tree,
}

fn to_pretty<T: Serialize>(x: &T) -> Result<String> {
    serde_json::to_string_pretty(x).map_err(|e| Error::invalid(format!("cannot encode report: {e}")))
}

#[derive(Serialize)]
struct EvalOut<'a> {
    schema_version: u32,
    command: &'static str,
    instance: &'a str,
    centers: Vec<String>,
    covering_radius: Length,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
    report: &'a EvaluationReport,
}

pub fn eval(instance: &str, centers: &[String], json: bool) -> Result<ExitCode> {
    let g = load_instance(instance)?;
    let mut ids = Vec::with_capacity(centers.len());
    for t in centers {
        ids.push(g.resolve_vertex(t)?);
    }
    let c = CenterSet::new(ids);
    let rep = evaluate(&g, &c)?;
    let radius = covering_radius(&g, &c);
    let witness = if rep.probabilistic_radius.is_finite() {
        None
    } else {
        Some(infeasibility_witness(&g, &c)?)
    };
    if json {
        let out = EvalOut {
            schema_version: SCHEMA_VERSION,
            command: "eval",
            instance: g.name().unwrap_or(instance),
            centers: c.iter().map(|v| g.label_of(v)).collect(),
            covering_radius: radius,
            witness: witness.clone(),
            report: &rep,
        };
        println!("{}", to_pretty(&out)?);
    } else {
        println!("{}", render::header(&g));
        println!("centers {}", render::centers(&g, &c));
        println!("{:<10} {:<22} argmax", "scenario", "radius");
        for s in &rep.scenarios {
            println!(
                "{:<10} {:<22} {}",
                g.label_of(s.scenario),
                render::value(&s.radius),
                g.label_of(s.argmax)
            );
        }
        println!("probabilistic radius  {}", render::value(&rep.probabilistic_radius));
        println!("deterministic radius  {}", render::value(&rep.deterministic_radius));
        println!("covering radius       {}", render::value(&radius));
        if let Some(w) = &witness {
            println!("{w}");
        }
    }
    Ok(if witness.is_some() {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    })
}

/// Names a reason the objective is unbounded: too few shelters, or a
/// component left shelterless behind its articulation point.
fn infeasibility_witness(g: &WeightedGraph, c: &CenterSet) -> Result<String> {
    if c.len() < 2 {
        return Ok(format!(
            "infeasible: at least two shelters are required, got {}",
            c.len()
        ));
    }
    let d = mac_decomposition(g)?;
    for mac in &d.macs {
        if !mac.vertices.iter().any(|&v| c.contains(v)) {
            let names: Vec<String> = mac.vertices.iter().map(|&v| g.label_of(v)).collect();
            return Ok(format!(
                "infeasible: component {{{}}} behind articulation point {} has no shelter",
                names.join(", "),
                g.label_of(mac.articulation)
            ));
        }
    }
    Ok("infeasible: the objective is unbounded for this set".to_string())
}

#[derive(Serialize)]
struct SolveOut<'a, T: Serialize> {
    schema_version: u32,
    command: &'static str,
    instance: &'a str,
    mode: &'static str,
    p: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    min_feasible_p: Option<usize>,
    report: &'a T,
}

pub fn solve(
    instance: &str,
    p: usize,
    mode: Mode,
    json: bool,
    limits: &OracleLimits,
) -> Result<ExitCode> {
    let g = load_instance(instance)?;
    match mode {
        Mode::Exact => {
            let rep = solve_ppcp_exact_with(&g, p, limits)?;
            finish_exact(&g, instance, "exact", p, rep, json)
        }
        Mode::Tree => {
            let rep = tree_mac_pcenter_exact(&g, p)?;
            finish_exact(&g, instance, "tree", p, rep, json)
        }
        Mode::Approx => {
            let rep = approx_ppcp(&g, p)?;
            if json {
                let out = SolveOut {
                    schema_version: SCHEMA_VERSION,
                    command: "solve",
                    instance: g.name().unwrap_or(instance),
                    mode: "approx",
                    p,
                    min_feasible_p: None,
                    report: &rep,
                };
                println!("{}", to_pretty(&out)?);
            } else {
                println!("{}", render::header(&g));
                println!("mode approx, p = {p}");
                println!("value {}", render::value(&rep.value));
                println!("certified bound {}", render::value(&rep.certified_bound));
                if let Some(r) = &rep.apriori_ratio {
                    println!("a-priori ratio {}", render::ratio(r));
                }
                println!("solution {}", render::centers(&g, &rep.solution));
                println!("trace:");
                for t in &rep.trace {
                    let verdict = if t.accepted { "accepted" } else { "rejected" };
                    let tail = match &t.radius {
                        Some(r) => format!(", radius {}", render::value(r)),
                        None => String::new(),
                    };
                    println!(
                        "  d = {}: {verdict}, independent set {}{tail}",
                        render::value(&t.d),
                        t.independent_set_size
                    );
                }
                for w in &rep.warnings {
                    println!("warning: {w}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn finish_exact(
    g: &WeightedGraph,
    instance: &str,
    mode: &'static str,
    p: usize,
    rep: SolveReport<Length>,
    json: bool,
) -> Result<ExitCode> {
    let need = if rep.is_infeasible() {
        Some(mac_decomposition(g)?.min_feasible_p())
    } else {
        None
    };
    if json {
        let out = SolveOut {
            schema_version: SCHEMA_VERSION,
            command: "solve",
            instance: g.name().unwrap_or(instance),
            mode,
            p,
            min_feasible_p: need,
            report: &rep,
        };
        println!("{}", to_pretty(&out)?);
    } else {
        println!("{}", render::header(&g));
        println!("mode {mode}, p = {p}");
        match rep.value() {
            Some(v) => {
                println!("value {}", render::value(v));
                let c = rep.solution().expect("optimal outcome carries a solution");
                println!("solution {}", render::centers(&g, c));
                println!("explored {} candidates", rep.explored);
            }
            None => {
                println!(
                    "infeasible: this instance needs at least {} shelters",
                    need.unwrap_or(2)
                );
            }
        }
    }
    Ok(if rep.is_infeasible() {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    })
}

#[derive(Serialize)]
struct RegistryOut<'a> {
    schema_version: u32,
    base: &'a str,
    q: u32,
    records: &'a [GadgetRecord],
}

#[derive(Serialize)]
struct ReduceOut<'a> {
    schema_version: u32,
    command: &'static str,
    base: &'a str,
    q: u32,
    base_n: usize,
    base_m: usize,
    base_cover: usize,
    contracted_n: usize,
    contracted_m: usize,
    inserted_pairs: usize,
    substituted_n: usize,
    substituted_m: usize,
    instance_file: String,
    registry_file: String,
    report: &'a ReductionReport,
}

pub fn reduce(
    embedding: &str,
    q: u32,
    out_dir: &Path,
    json: bool,
    limits: &OracleLimits,
) -> Result<ExitCode> {
    let e = load_embedding(embedding)?;
    let o = default_orientation(&e.graph);
    let b = build_bundle(&e, q, &o)?;
    let cover = min_vertex_cover_with(&b.base.to_unweighted(), limits)?;
    let tau = *cover
        .value()
        .ok_or_else(|| Error::invalid("cover oracle returned no value"))?;
    let rep = verify_reduction_with(&b, tau, limits)?;

    let name = b.base.name().unwrap_or("base").to_string();
    std::fs::create_dir_all(out_dir)
        .map_err(|e| Error::invalid(format!("cannot create {}: {e}", out_dir.display())))?;
    let stem = artifact_stem(embedding);
    let instance_path = out_dir.join(format!("{stem}-f.json"));
    let doc = InstanceDocument::from_graph(&b.f, None);
    std::fs::write(&instance_path, to_json(&doc)?)
        .map_err(|e| Error::invalid(format!("cannot write {}: {e}", instance_path.display())))?;
    let registry_path = out_dir.join(format!("{stem}-registry.json"));
    let registry = RegistryOut {
        schema_version: SCHEMA_VERSION,
        base: &name,
        q,
        records: &b.registry,
    };
    std::fs::write(&registry_path, to_pretty(&registry)?)
        .map_err(|e| Error::invalid(format!("cannot write {}: {e}", registry_path.display())))?;

    if json {
        let out = ReduceOut {
            schema_version: SCHEMA_VERSION,
            command: "reduce",
            base: &name,
            q,
            base_n: b.base.n(),
            base_m: b.base.edge_count(),
            base_cover: tau,
            contracted_n: b.h_tilde.n(),
            contracted_m: b.h_tilde.edge_count(),
            inserted_pairs: b.k_sum(),
            substituted_n: b.f.n(),
            substituted_m: b.f.edge_count(),
            instance_file: instance_path.display().to_string(),
            registry_file: registry_path.display().to_string(),
            report: &rep,
        };
        println!("{}", to_pretty(&out)?);
    } else {
        println!(
            "base {name}: {} vertices, {} edges, minimum cover {tau}",
            b.base.n(),
            b.base.edge_count()
        );
        println!(
            "contracted graph: {} vertices, {} edges, {} inserted pairs",
            b.h_tilde.n(),
            b.h_tilde.edge_count(),
            b.k_sum()
        );
        println!(
            "substituted graph: {} vertices, {} edges",
            b.f.n(),
            b.f.edge_count()
        );
        for c in &rep.checks {
            let verdict = if c.passed { "pass" } else { "FAIL" };
            println!("check {:<20} {:<4} {}", c.name, verdict, c.detail);
        }
        if let Some(v) = &rep.expected_value {
            println!("objective {}", render::value(v));
        }
        if let (Some(m), Some(bd)) = (&rep.margin, &rep.margin_bound) {
            println!(
                "margin below two {} (guaranteed at least {})",
                render::value(m),
                render::value(bd)
            );
        }
        println!("wrote {}", instance_path.display());
        println!("wrote {}", registry_path.display());
    }
    Ok(if rep.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

/// File stem for the artifacts written next to a reduction: the token's last
/// path component without its extension, non-filename characters dashed.
fn artifact_stem(token: &str) -> String {
    let tail = token.rsplit(['/', '\\']).next().unwrap_or(token);
    let tail = tail
        .strip_suffix(".json")
        .or_else(|| tail.strip_suffix(".txt"))
        .unwrap_or(tail);
    tail.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' || c == '_' {
                c
            } else {
                '-'
            }
        })
        .collect()
}
