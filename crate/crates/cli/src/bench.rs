//! Benchmark suites: seeded instance sweeps comparing the approximation
//! algorithms against the exact oracles. One record per instance, sorted by
//! instance name, so output bytes never depend on worker scheduling.

use std::process::ExitCode;
use std::time::Instant;

use clap::ValueEnum;
use num::bigint::BigInt;
use num::rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use ppcp_core::approx::{approx_mac_pcenter, approx_partial_pcenter, approx_ppcp};
use ppcp_core::exact::{
    solve_mac_pcenter_exact_with, solve_partial_pcenter_exact_with, solve_ppcp_exact_with,
    OracleLimits,
};
use ppcp_core::feasibility::min_feasible_p;
use ppcp_core::instances::{connected_random, SCHEMA_VERSION};
use ppcp_core::length::Length;
use ppcp_core::{Error, Result, VertexId, WeightedGraph};

#[derive(Clone, Copy, ValueEnum)]
pub enum Suite {
    /// Backup placement against the exact oracle, factor 2 guarantee.
    RatioMac,
    /// Partial coverage against the exact oracle, factor 2 guarantee.
    RatioPartial,
    /// Full pipeline against the exact oracle, degree-dependent guarantee.
    RatioPpcp,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

struct Case {
    g: WeightedGraph,
    p: usize,
    u: Vec<VertexId>,
    bound: BigRational,
}

#[derive(Serialize)]
struct Record {
    instance: String,
    n: usize,
    m: usize,
    p: usize,
    avgdeg: String,
    exact: String,
    approx: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    ratio: Option<String>,
    bound: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact_ms: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    approx_ms: Option<u128>,
}

#[derive(Serialize)]
struct JsonOut<'a> {
    schema_version: u32,
    command: &'static str,
    suite: &'static str,
    seed: u64,
    records: &'a [Record],
}

fn suite_name(suite: Suite) -> &'static str {
    match suite {
        Suite::RatioMac => "ratio-mac",
        Suite::RatioPartial => "ratio-partial",
        Suite::RatioPpcp => "ratio-ppcp",
    }
}

fn mix(seed: u64, i: u64) -> u64 {
    let x = seed ^ i.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    x.wrapping_mul(0xBF58_476D_1CE4_E5B9) ^ (x >> 31)
}

fn two() -> BigRational {
    BigRational::from_integer(BigInt::from(2))
}

/// Small connected instances with a feasible backup budget of at most 4.
fn mac_cases(seed: u64) -> Result<Vec<Case>> {
    let mut cases = Vec::new();
    let mut attempt = 0u64;
    while cases.len() < 200 {
        attempt += 1;
        if attempt > 50_000 {
            return Err(Error::invalid("instance sweep starved"));
        }
        let s = mix(seed, attempt);
        let n = 4 + (s % 9) as usize;
        let max_m = n * (n - 1) / 2;
        let m = (n - 1 + ((s >> 8) as usize % n)).min(max_m);
        let g = connected_random(n, m, s)?;
        let need = min_feasible_p(&g)?;
        if need > 4 {
            continue;
        }
        let p = need + ((s >> 16) as usize) % (5 - need);
        cases.push(Case {
            g,
            p,
            u: Vec::new(),
            bound: two(),
        });
    }
    Ok(cases)
}

/// Small connected instances with a nonempty coverage target drawn from the
/// seed bits.
fn partial_cases(seed: u64) -> Result<Vec<Case>> {
    let mut cases = Vec::new();
    for i in 1..=200u64 {
        let s = mix(seed, i);
        let n = 3 + (s % 8) as usize;
        let max_m = n * (n - 1) / 2;
        let m = (n - 1 + ((s >> 8) as usize % n)).min(max_m);
        let g = connected_random(n, m, s)?;
        let bits = mix(s, 0xD1);
        let mut u: Vec<VertexId> = (0..n)
            .filter(|v| (bits >> v) & 1 == 1)
            .map(VertexId)
            .collect();
        if u.is_empty() {
            u.push(VertexId((bits % n as u64) as usize));
        }
        let p = 1 + ((s >> 40) as usize) % 3;
        cases.push(Case {
            g,
            p,
            u,
            bound: two(),
        });
    }
    Ok(cases)
}

/// Small connected instances where the full objective is finite and positive
/// for the chosen budget.
fn ppcp_cases(seed: u64) -> Result<Vec<Case>> {
    let mut cases = Vec::new();
    let mut attempt = 0u64;
    while cases.len() < 100 {
        attempt += 1;
        if attempt > 50_000 {
            return Err(Error::invalid("instance sweep starved"));
        }
        let s = mix(seed, attempt);
        let n = 4 + (s % 9) as usize;
        let max_m = n * (n - 1) / 2;
        let m = (n - 1 + ((s >> 8) as usize % n)).min(max_m);
        let g = connected_random(n, m, s)?;
        let need = min_feasible_p(&g)?;
        if need > 4 || need >= n {
            continue;
        }
        let p = (need + ((s >> 16) as usize) % 2).min(4).min(n - 1);
        let bound =
            BigRational::from_integer(BigInt::from(4)) * g.avg_degree() + two();
        cases.push(Case { g, p, u: Vec::new(), bound });
    }
    Ok(cases)
}

fn solve_case(c: &Case, suite: Suite, limits: &OracleLimits, timings: bool) -> Result<Record> {
    let t0 = Instant::now();
    let exact: Length = match suite {
        Suite::RatioMac => solve_mac_pcenter_exact_with(&c.g, c.p, limits)?,
        Suite::RatioPartial => solve_partial_pcenter_exact_with(&c.g, &c.u, c.p, limits)?,
        Suite::RatioPpcp => solve_ppcp_exact_with(&c.g, c.p, limits)?,
    }
    .value()
    .cloned()
    .ok_or_else(|| Error::invalid("the sweep produced an infeasible case"))?;
    let exact_ms = timings.then(|| t0.elapsed().as_millis());
    let t1 = Instant::now();
    let approx: Length = match suite {
        Suite::RatioMac => approx_mac_pcenter(&c.g, c.p)?.value,
        Suite::RatioPartial => approx_partial_pcenter(&c.g, &c.u, c.p)?.value,
        Suite::RatioPpcp => approx_ppcp(&c.g, c.p)?.value,
    };
    let approx_ms = timings.then(|| t1.elapsed().as_millis());
    let ratio = match (exact.as_rational(), approx.as_rational()) {
        (Some(e), Some(a)) if !exact.is_zero() => Some((a / e).to_string()),
        _ => None,
    };
    Ok(Record {
        instance: c.g.name().unwrap_or("unnamed").to_string(),
        n: c.g.n(),
        m: c.g.edge_count(),
        p: c.p,
        avgdeg: c.g.avg_degree().to_string(),
        exact: exact.to_string(),
        approx: approx.to_string(),
        ratio,
        bound: c.bound.to_string(),
        exact_ms,
        approx_ms,
    })
}

pub fn run(
    suite: Suite,
    seed: u64,
    format: OutputFormat,
    parallel: usize,
    timings: bool,
    limits: &OracleLimits,
) -> Result<ExitCode> {
    let cases = match suite {
        Suite::RatioMac => mac_cases(seed)?,
        Suite::RatioPartial => partial_cases(seed)?,
        Suite::RatioPpcp => ppcp_cases(seed)?,
    };
    let workers = parallel.max(1);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::invalid(format!("cannot start {workers} workers: {e}")))?;
    let mut records: Vec<Record> = pool.install(|| {
        cases
            .par_iter()
            .map(|c| solve_case(c, suite, limits, timings))
            .collect::<Result<Vec<_>>>()
    })?;
    records.sort_by(|a, b| (a.instance.as_str(), a.p).cmp(&(b.instance.as_str(), b.p)));

    match format {
        OutputFormat::Csv => {
            let mut header = String::from("instance,n,m,p,avgdeg,exact,approx,ratio,bound");
            if timings {
                header.push_str(",exact_ms,approx_ms");
            }
            println!("{header}");
            for r in &records {
                let mut line = format!(
                    "{},{},{},{},{},{},{},{},{}",
                    r.instance,
                    r.n,
                    r.m,
                    r.p,
                    r.avgdeg,
                    r.exact,
                    r.approx,
                    r.ratio.as_deref().unwrap_or(""),
                    r.bound
                );
                if timings {
                    line.push_str(&format!(
                        ",{},{}",
                        r.exact_ms.unwrap_or(0),
                        r.approx_ms.unwrap_or(0)
                    ));
                }
                println!("{line}");
            }
        }
        OutputFormat::Json => {
            let out = JsonOut {
                schema_version: SCHEMA_VERSION,
                command: "bench",
                suite: suite_name(suite),
                seed,
                records: &records,
            };
            let text = serde_json::to_string_pretty(&out)
                .map_err(|e| Error::invalid(format!("cannot encode records: {e}")))?;
            println!("{text}");
        }
    }
    Ok(ExitCode::SUCCESS)
}
