//! Command-line front end: reads a state file and reports on it.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bbs::{find_period, solve_q, trajectory, BbsState};
use crate::curve::{CornerLocus, CurveData, GraphPoint, MetricGraph};
use crate::error::{Error, Result};
use crate::jacobian::JacobianData;
use crate::oracle::{default_prefactor, det_identities_check, valuation_check};
use crate::rational::{fmt_rat, Rat};
use crate::spectral::{newton_check, SpectralData};

/// Tolerance on extrapolated valuations in the `oracle` report.
pub const VALUATION_TOLERANCE: f64 = 0.05;
/// Relative tolerance on determinant identities in the `oracle` report.
pub const IDENTITY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Parser)]
#[command(name = "tropbbs", version, about = "Periodic 2D box-ball system and its tropical spectral curve")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Print the state at t = 0..=steps.
    Simulate {
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        steps: usize,
    },
    /// Smallest F <= t-max with evolve^F = id on this state.
    Period {
        input: PathBuf,
        #[arg(long = "t-max", default_value_t = 1000)]
        t_max: u64,
    },
    /// Tropical characteristic polynomial as "i j c" lines.
    Spectral {
        input: PathBuf,
        /// Also list the exact polynomial as "c i j k" lines (coefficient of x^i y^j q^k).
        #[arg(long)]
        exact: bool,
    },
    /// The tropical curve as JSON.
    Curve { input: PathBuf },
    /// F'', F', the period matrix and the translation vectors.
    FundamentalCycle { input: PathBuf },
    /// Simulated F against F', with the divisibility verdict.
    Verify {
        input: PathBuf,
        #[arg(long = "t-max", default_value_t = 1000)]
        t_max: u64,
    },
    /// Discrete-level checks: valuations and determinant identities.
    Oracle {
        input: PathBuf,
        #[arg(long = "eps")]
        eps: Vec<f64>,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// What a run produced. `success` is false when a verification failed.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub output: String,
    pub success: bool,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Self { output, success: true }
    }
}

pub fn parse_state(text: &str) -> Result<BbsState> {
    BbsState::parse(text)
}

pub fn read_state(path: &Path) -> Result<BbsState> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_state(&text)
}

fn r(v: &Rat) -> Value {
    Value::String(fmt_rat(v))
}

fn rs(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(r).collect())
}

fn matrix(b: &[Vec<Rat>]) -> Value {
    Value::Array(b.iter().map(|row| rs(row)).collect())
}

fn join(v: &[Rat]) -> String {
    v.iter().map(fmt_rat).collect::<Vec<_>>().join(" ")
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn point_json(p: &GraphPoint, g: &MetricGraph, g0: &CornerLocus) -> Value {
    let (x, y) = g.coords(p, g0);
    match p {
        GraphPoint::Node(v) => json!({ "kind": "vertex", "vertex": v, "at": [r(&x), r(&y)] }),
        GraphPoint::OnEdge { edge, pos } => {
            json!({ "kind": "edge", "edge": g.edges[*edge].parent, "copy": g.edges[*edge].copy, "pos": r(pos), "at": [r(&x), r(&y)] })
        }
        GraphPoint::Stub(k) => {
            let st = &g.stubs[*k];
            json!({ "kind": "ray", "ray": st.parent, "copy": st.copy, "direction": [st.direction.0, st.direction.1], "at": [r(&x), r(&y)] })
        }
    }
}

pub fn curve_json(c: &CurveData) -> Value {
    let g0 = &c.locus;
    let sp = &c.special;
    json!({
        "vertices": g0.vertices.iter().map(|(x, y)| json!([r(x), r(y)])).collect::<Vec<_>>(),
        "edges": g0.edges.iter().map(|e| json!({
            "endpoints": [e.a, e.b],
            "weight": e.weight,
            "length": r(&e.length),
            "direction": [e.direction.0, e.direction.1],
        })).collect::<Vec<_>>(),
        "rays": g0.rays.iter().map(|ray| json!({
            "origin": ray.origin,
            "direction": [ray.direction.0, ray.direction.1],
            "weight": ray.weight,
        })).collect::<Vec<_>>(),
        "genus": c.graph.genus(),
        "special_points": {
            "G": r(&sp.g),
            "P0": point_json(&sp.p0, &c.graph, g0),
            "P1": point_json(&sp.p1, &c.graph, g0),
            "P2": point_json(&sp.p2, &c.graph, g0),
            "P3": sp.p3.iter().map(|p| point_json(p, &c.graph, g0)).collect::<Vec<_>>(),
            "ambiguous": sp.ambiguous,
        },
    })
}

fn simulate(s: &BbsState, steps: usize, format: Format) -> Result<Outcome> {
    let states = trajectory(s, steps)?;
    let mut blocks = Vec::with_capacity(states.len());
    for st in &states {
        blocks.push(st.render(solve_q(st)?.grid.first_row()));
    }
    Ok(Outcome::ok(match format {
        Format::Text => blocks.iter().enumerate().map(|(t, b)| format!("t={t}\n{b}\n")).collect::<Vec<_>>().join("\n"),
        Format::Json => pretty(&json!({
            "states": states.iter().zip(&blocks).enumerate().map(|(t, (st, b))| json!({
                "t": t,
                "picture": b,
                "w": matrix(st.grid()),
            })).collect::<Vec<_>>(),
        })),
    }))
}

fn spectral(s: &BbsState, exact: bool, format: Format) -> Result<Outcome> {
    let sd = SpectralData::new(s)?;
    let newton = newton_check(&sd);
    Ok(Outcome::ok(match format {
        Format::Text => {
            let mut out = sd.charpoly_trop.to_text();
            if exact {
                out.push_str("# exact\n");
                out.push_str(&sd.charpoly_exact.to_text());
            }
            out
        }
        Format::Json => {
            let mut v = json!({
                "support": sd.charpoly_trop.terms().map(|((i, j), c)| json!([i, j, r(&c)])).collect::<Vec<_>>(),
                "q_scale": sd.scale,
                "newton_ok": newton.ok,
            });
            if exact {
                v["exact"] = sd.charpoly_exact.terms().map(|((i, j, k), c)| json!([c.to_string(), i, j, k])).collect();
            }
            pretty(&v)
        }
    }))
}

fn fundamental(s: &BbsState, format: Format) -> Result<Outcome> {
    let j = JacobianData::new(s)?;
    let v = &j.vectors;
    Ok(Outcome::ok(match format {
        Format::Text => {
            let mut out = format!("genus {}\nd {}\nF'' {}\nF' {}\n", j.period.genus(), s.d(), j.fpp, j.fp);
            for row in &j.period.b {
                out.push_str(&format!("B {}\n", join(row)));
            }
            out.push_str(&format!("T {}\nN {}\n", join(&v.t), join(&v.n)));
            for (m, vec) in v.m.iter().enumerate() {
                out.push_str(&format!("M{} {}\n", m + 1, join(vec)));
            }
            out.push_str(&format!("B^-1 T {}\n", join(&j.reduced_t)));
            out
        }
        Format::Json => pretty(&json!({
            "genus": j.period.genus(),
            "d": s.d(),
            "F''": j.fpp,
            "F'": j.fp,
            "B": matrix(&j.period.b),
            "basis": j.period.basis.iter().map(|p| p.iter().map(|sg| json!([sg.edge, r(&sg.from), r(&sg.to)])).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "T": rs(&v.t),
            "N": rs(&v.n),
            "M": matrix(&v.m),
            "B^-1 T": rs(&j.reduced_t),
        })),
    }))
}

fn verify(s: &BbsState, t_max: u64, format: Format) -> Result<Outcome> {
    let j = JacobianData::new(s)?;
    let f = find_period(s, t_max)?;
    let divides = f % j.fp == 0;
    let output = match format {
        Format::Text => format!(
            "F {f}\nF' {}\nverdict {}\n{}",
            j.fp,
            if divides { "PASS" } else { "FAIL" },
            if f != j.fp && divides { "note F != F'\n" } else { "" },
        ),
        Format::Json => pretty(&json!({ "F": f, "F'": j.fp, "F''": j.fpp, "divides": divides, "equal": f == j.fp })),
    };
    Ok(Outcome { output, success: divides })
}

fn oracle(s: &BbsState, eps: &[f64], samples: usize, seed: u64, format: Format) -> Result<Outcome> {
    let eps = if eps.is_empty() { vec![0.05, 0.02] } else { eps.to_vec() };
    let k1 = default_prefactor(s);
    let val = valuation_check(s, &eps, k1)?;
    let mut identities = Vec::with_capacity(eps.len());
    for &e in &eps {
        identities.push(det_identities_check(s, e, k1, samples, seed)?);
    }
    let val_ok = val.max_deviation <= VALUATION_TOLERANCE;
    let id_ok = identities.iter().all(|rep| rep.passed(IDENTITY_TOLERANCE));
    let output = match format {
        Format::Text => {
            let mut out = format!(
                "valuation max deviation {:.3e} ({})\nkappa valuation {:.6}\n",
                val.max_deviation,
                if val_ok { "PASS" } else { "FAIL" },
                val.kappa_valuation
            );
            for rep in &identities {
                out.push_str(&format!(
                    "eps {} identities max rel err {:.3e} ({})\n",
                    rep.eps,
                    [
                        rep.max_det_err(),
                        rep.reconstruction_err,
                        rep.refactor_err,
                        rep.invariance_err,
                        rep.ring_residual
                    ]
                    .iter()
                    .copied()
                    .fold(0.0, f64::max),
                    if rep.passed(IDENTITY_TOLERANCE) { "PASS" } else { "FAIL" }
                ));
            }
            out
        }
        Format::Json => pretty(&json!({
            "eps": eps,
            "prefactor": k1,
            "valuation": {
                "q_exact": matrix(&val.q_exact),
                "q_estimate": val.q_estimate,
                "max_deviation": val.max_deviation,
                "kappa_valuation": val.kappa_valuation,
                "passed": val_ok,
            },
            "identities": identities.iter().map(|rep| json!({
                "eps": rep.eps,
                "kappa": rep.kappa,
                "samples": samples,
                "max_det_err": rep.max_det_err(),
                "kappa_root_err": rep.kappa_root_err,
                "reconstruction_err": rep.reconstruction_err,
                "refactor_err": rep.refactor_err,
                "alpha_err": rep.alpha_err,
                "beta_err": rep.beta_err,
                "invariance_err": rep.invariance_err,
                "ring_residual": rep.ring_residual,
                "passed": rep.passed(IDENTITY_TOLERANCE),
            })).collect::<Vec<_>>(),
        })),
    };
    Ok(Outcome { output, success: val_ok && id_ok })
}

pub fn run(cfg: &RunConfig) -> Result<Outcome> {
    let format = cfg.format;
    match &cfg.command {
        Command::Simulate { input, steps } => simulate(&read_state(input)?, *steps, format),
        Command::Period { input, t_max } => {
            let f = find_period(&read_state(input)?, *t_max)?;
            Ok(Outcome::ok(match format {
                Format::Text => format!("{f}\n"),
                Format::Json => pretty(&json!({ "F": f })),
            }))
        }
        Command::Spectral { input, exact } => spectral(&read_state(input)?, *exact, format),
        Command::Curve { input } => Ok(Outcome::ok(pretty(&curve_json(&CurveData::new(&read_state(input)?)?)))),
        Command::FundamentalCycle { input } => fundamental(&read_state(input)?, format),
        Command::Verify { input, t_max } => verify(&read_state(input)?, *t_max, format),
        Command::Oracle { input, eps, samples, seed } => oracle(&read_state(input)?, eps, *samples, *seed, format),
    }
}
