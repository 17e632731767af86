//! Command-line front end: argument parsing and per-subcommand rendering.

pub mod output;
pub mod suites;

use std::collections::BTreeMap;

use clap::{Parser, Subcommand};
use serde::Serialize;

use qfaulhaber::faulhaber::{self, FaulhaberTable, Provenance};
use qfaulhaber::lgv::{self, LatticePoint, WeightConvention};
use qfaulhaber::render::{q_latex, q_string, PolyJson};
use qfaulhaber::{salie, TPoly};

use output::{to_json, Cell, OutputFormat, Table};
use suites::{Ranges, Suite, VerifyReport};

#[derive(Debug, Parser)]
#[command(name = "qfaulhaber", version, about = "Exact q-Faulhaber polynomials and identity checks")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    pub format: OutputFormat,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The q-power sum S_{m,n}(q).
    Psum {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        m: u32,
        #[arg(long)]
        n: u32,
    },
    /// Table of P_{m,k} for 0 <= k <= m <= m_max.
    Faulhaber {
        #[arg(long)]
        m_max: usize,
    },
    /// Run a verification suite; exits 1 if any case fails.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        m_max: Option<usize>,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = lgv::DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Fit the polynomials g_{k,m} of the alternating-sum expansion.
    Salie {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        m: u32,
    },
    /// Lattice path determinant and brute-force family sum for one (m, k).
    Lgv {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = lgv::DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Log-concavity of P_{m,k} and sign pattern of g_{k,m}.
    Report {
        #[arg(long, default_value_t = 10)]
        m_max: usize,
    },
}

/// Rendered output plus the process exit code.
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { output, code: 0 }
    }
}

pub fn execute(cli: &Cli) -> Outcome {
    let fmt = cli.format;
    match &cli.command {
        Command::Psum { m, n } => psum(*m, *n, fmt),
        Command::Faulhaber { m_max } => faulhaber_table(*m_max, fmt),
        Command::Verify { suite, m_max, n_max, k, budget } => {
            let ranges = Ranges { m_max: *m_max, n_max: *n_max, k_max: *k, budget: *budget };
            verify(*suite, &ranges, fmt)
        }
        Command::Salie { m } => salie_cmd(*m as usize, fmt),
        Command::Lgv { m, k, budget } => lgv_cmd(*m, *k, *budget, fmt),
        Command::Report { m_max } => report(*m_max, fmt),
    }
}

fn poly_cell(p: &TPoly) -> Cell {
    Cell::math(q_string(p), q_latex(p))
}

fn error(msg: impl std::fmt::Display) -> Outcome {
    Outcome { output: format!("error: {msg}\n"), code: 1 }
}

pub fn psum(m: u32, n: u32, fmt: OutputFormat) -> Outcome {
    let p = match faulhaber::power_sum(m, n) {
        Ok(p) => p,
        Err(e) => return error(e),
    };
    let out = match fmt {
        OutputFormat::Text => format!("{}\n", q_string(&p)),
        OutputFormat::Latex => format!("{}\n", q_latex(&p)),
        OutputFormat::Json => to_json(&PolyJson::from(&p)),
        OutputFormat::Csv => {
            let mut t = Table::new(&["m", "n", "polynomial"]);
            t.push(vec![Cell::plain(m), Cell::plain(n), poly_cell(&p)]);
            t.to_csv()
        }
    };
    Outcome::ok(out)
}

#[derive(Serialize)]
struct CellJson {
    m: usize,
    k: usize,
    q_degree: isize,
    provenance: Vec<Provenance>,
    poly: PolyJson,
}

pub fn faulhaber_table(m_max: usize, fmt: OutputFormat) -> Outcome {
    let table = match FaulhaberTable::build(m_max, &[Provenance::Determinant, Provenance::Inverse], lgv::DEFAULT_BUDGET) {
        Ok(t) => t,
        Err(e) => return error(e),
    };
    let out = match fmt {
        OutputFormat::Json => {
            let cells: Vec<CellJson> = table
                .cells
                .iter()
                .map(|(&(m, k), c)| CellJson {
                    m,
                    k,
                    q_degree: c.poly.q_degree(),
                    provenance: c.provenance.clone(),
                    poly: PolyJson::from(c.poly.as_tpoly()),
                })
                .collect();
            to_json(&serde_json::json!({ "m_max": m_max, "cells": cells }))
        }
        OutputFormat::Text => table
            .cells
            .iter()
            .map(|(&(m, k), c)| format!("P_{{{m},{k}}} = {}\n", q_string(c.poly.as_tpoly())))
            .collect(),
        OutputFormat::Csv | OutputFormat::Latex => {
            let mut t = Table::new(&["m", "k", "polynomial"]);
            for (&(m, k), c) in &table.cells {
                t.push(vec![Cell::plain(m), Cell::plain(k), poly_cell(c.poly.as_tpoly())]);
            }
            if fmt == OutputFormat::Csv {
                t.to_csv()
            } else {
                t.to_latex()
            }
        }
    };
    Outcome::ok(out)
}

pub fn render_report(rep: &VerifyReport, fmt: OutputFormat) -> String {
    match fmt {
        OutputFormat::Json => to_json(rep),
        OutputFormat::Text => {
            let mut out = String::new();
            for c in &rep.cases {
                let tag = if c.passed { "PASS" } else { "FAIL" };
                out.push_str(&format!("{tag} {}/{} ({:.2} ms)\n", rep.suite, c.id, c.millis));
                if let Some(m) = &c.counterexample {
                    out.push_str(&format!("     {}:\n       left:  {}\n       right: {}\n", m.what, m.left, m.right));
                }
            }
            out.push_str(&format!(
                "{}: {}/{} passed{}\n",
                rep.suite,
                rep.pass_count(),
                rep.cases.len(),
                if rep.passed { "" } else { " -- FAILED" }
            ));
            out
        }
        OutputFormat::Csv | OutputFormat::Latex => {
            let mut t = Table::new(&["suite", "case", "verdict", "millis"]);
            for c in &rep.cases {
                t.push(vec![
                    Cell::plain(&rep.suite),
                    Cell::plain(&c.id),
                    Cell::plain(if c.passed { "pass" } else { "fail" }),
                    Cell::plain(format!("{:.3}", c.millis)),
                ]);
            }
            if fmt == OutputFormat::Csv {
                t.to_csv()
            } else {
                t.to_latex()
            }
        }
    }
}

pub fn verify(suite: Suite, ranges: &Ranges, fmt: OutputFormat) -> Outcome {
    let rep = suites::run(suite, ranges);
    Outcome { output: render_report(&rep, fmt), code: if rep.passed { 0 } else { 1 } }
}

#[derive(Serialize)]
struct SalieJson {
    m: usize,
    degree_bounds: Vec<usize>,
    escalations: usize,
    probes_used: Vec<usize>,
    held_out: Vec<usize>,
    residual_ok: bool,
    g: Vec<GJson>,
}

#[derive(Serialize)]
struct GJson {
    k: usize,
    has_negative: bool,
    poly: PolyJson,
}

pub fn salie_cmd(m: usize, fmt: OutputFormat) -> Outcome {
    let fit = match salie::salie_fit(m, m + 2, None) {
        Ok(f) => f,
        Err(e) => return error(format!("{e} (no polynomial g_{{k,{m}}} reproduces the alternating sums)")),
    };
    let code = if fit.residual_ok { 0 } else { 1 };
    let out = match fmt {
        OutputFormat::Json => to_json(&SalieJson {
            m,
            degree_bounds: fit.degree_bounds.clone(),
            escalations: fit.escalations,
            probes_used: fit.probes_used.clone(),
            held_out: fit.held_out.clone(),
            residual_ok: fit.residual_ok,
            g: fit
                .g
                .iter()
                .map(|(&k, g)| GJson { k, has_negative: g.has_negative_coeff(), poly: PolyJson::from(g) })
                .collect(),
        }),
        OutputFormat::Text => {
            let mut out = String::new();
            for (k, g) in &fit.g {
                let mark = if g.has_negative_coeff() { "   [negative coefficients]" } else { "" };
                out.push_str(&format!("g_{{{k},{m}}} = {}{mark}\n", q_string(g)));
            }
            if !fit.residual_ok {
                out.push_str("residual check failed on held-out probes\n");
            }
            out
        }
        OutputFormat::Csv | OutputFormat::Latex => {
            let mut t = Table::new(&["k", "m", "g", "has_negative"]);
            for (&k, g) in &fit.g {
                t.push(vec![Cell::plain(k), Cell::plain(m), poly_cell(g), Cell::plain(g.has_negative_coeff())]);
            }
            if fmt == OutputFormat::Csv {
                t.to_csv()
            } else {
                t.to_latex()
            }
        }
    };
    Outcome { output: out, code }
}

#[derive(Serialize)]
struct LgvJson {
    m: usize,
    k: usize,
    starts: Vec<(i64, i64)>,
    ends: Vec<(i64, i64)>,
    determinant: PolyJson,
    bruteforce: Option<PolyJson>,
    families: Option<usize>,
    agree: Option<bool>,
}

pub fn lgv_cmd(m: usize, k: usize, budget: u64, fmt: OutputFormat) -> Outcome {
    let (starts, ends) = match lgv::endpoints(m, k) {
        Ok(e) => e,
        Err(e) => return error(e),
    };
    let det = match lgv::lgv_determinant(m, k, WeightConvention::EVEN) {
        Ok(d) => d,
        Err(e) => return error(e),
    };
    let (brute, families) = match lgv::nonintersecting_families(m, k, budget) {
        Ok(fams) => {
            let mut counts = BTreeMap::<usize, i64>::new();
            for f in &fams {
                *counts.entry(f.weight_exponent(WeightConvention::EVEN)).or_default() += 1;
            }
            let top = counts.keys().last().copied().unwrap_or(0);
            let q: Vec<i64> = (0..=top).map(|e| counts.get(&e).copied().unwrap_or(0)).collect();
            (Some(TPoly::from_q_i64s(&q)), Some(fams.len()))
        }
        Err(lgv::LgvError::BudgetExceeded { .. }) => (None, None),
        Err(e) => return error(e),
    };
    let agree = brute.as_ref().map(|b| b == det.as_tpoly());
    let pts = |v: &[LatticePoint]| v.iter().map(|p| (p.x, p.y)).collect::<Vec<_>>();
    let out = match fmt {
        OutputFormat::Json => to_json(&LgvJson {
            m,
            k,
            starts: pts(&starts),
            ends: pts(&ends),
            determinant: PolyJson::from(det.as_tpoly()),
            bruteforce: brute.as_ref().map(PolyJson::from),
            families,
            agree,
        }),
        OutputFormat::Text => {
            let mut out = format!("starts: {:?}\nends:   {:?}\n", pts(&starts), pts(&ends));
            out.push_str(&format!("determinant: {}\n", q_string(det.as_tpoly())));
            match (&brute, families) {
                (Some(b), Some(n)) => out.push_str(&format!(
                    "brute force: {} ({n} families)\nagree: {}\n",
                    q_string(b),
                    if agree == Some(true) { "yes" } else { "NO" }
                )),
                _ => out.push_str(&format!("brute force: skipped (over budget {budget})\n")),
            }
            out
        }
        OutputFormat::Csv | OutputFormat::Latex => {
            let mut t = Table::new(&["m", "k", "determinant", "bruteforce", "families"]);
            t.push(vec![
                Cell::plain(m),
                Cell::plain(k),
                poly_cell(det.as_tpoly()),
                brute.as_ref().map(poly_cell).unwrap_or_else(|| Cell::plain("")),
                Cell::plain(families.map(|n| n.to_string()).unwrap_or_default()),
            ]);
            if fmt == OutputFormat::Csv {
                t.to_csv()
            } else {
                t.to_latex()
            }
        }
    };
    Outcome { output: out, code: if agree == Some(false) { 1 } else { 0 } }
}

pub fn report(m_max: usize, fmt: OutputFormat) -> Outcome {
    let logc = match faulhaber::logconcavity_report(m_max) {
        Ok(r) => r,
        Err(e) => return error(e),
    };
    let signs = match salie::salie_sign_report(4) {
        Ok(r) => r,
        Err(e) => return error(e),
    };
    let out = match fmt {
        OutputFormat::Json => to_json(&serde_json::json!({ "logconcavity": logc, "salie_signs": signs })),
        OutputFormat::Text => {
            let bad: Vec<_> = logc.iter().filter(|e| !e.log_concave).collect();
            let mut out = format!(
                "log-concavity of P_{{m,k}}, m <= {m_max}: {}/{} log-concave\n",
                logc.len() - bad.len(),
                logc.len()
            );
            for e in bad {
                out.push_str(&format!("  not log-concave: P_{{{},{}}} at q^{:?}\n", e.m, e.k, e.first_violation));
            }
            out.push_str("signs of g_{k,m}, m <= 4:\n");
            for s in &signs {
                let tag = if s.has_negative { "has negative coefficients" } else { "nonnegative" };
                out.push_str(&format!("  g_{{{},{}}} = {}   {tag}\n", s.k, s.m, s.g));
            }
            out
        }
        OutputFormat::Csv | OutputFormat::Latex => {
            let mut t = Table::new(&["kind", "m", "k", "property"]);
            for e in &logc {
                t.push(vec![Cell::plain("logconcave"), Cell::plain(e.m), Cell::plain(e.k), Cell::plain(e.log_concave)]);
            }
            for s in &signs {
                t.push(vec![Cell::plain("salie_negative"), Cell::plain(s.m), Cell::plain(s.k), Cell::plain(s.has_negative)]);
            }
            if fmt == OutputFormat::Csv {
                t.to_csv()
            } else {
                t.to_latex()
            }
        }
    };
    Outcome::ok(out)
}
