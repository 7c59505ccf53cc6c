//! Front end for the `pommaret` binary: argument parsing, the ideal file
//! format and the command runners. Everything here is deterministic, so
//! the same input and flags always produce the same bytes.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use pommaret_core::verify::{check_exactness_with_cap, DEFAULT_STRAND_CAP};
use pommaret_core::{
    build_cell_complex, build_matching_v, build_p_graph, check_complex, ek_complex,
    homological_invariants, is_morse_matching, minimize, oracle_betti, pommaret_basis, ps_complex,
    random_quasi_stable, resolution_graph, supports_check, taylor_complex, BettiTable,
    Error as CoreError, FreeComplex, MonomialIdeal, PommaretBasis, ReducedComplex, Ring,
};

mod parse;

pub use parse::{parse_ideal, Input};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("line {line}: expected {expected} variables, found {found}")]
    Arity {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Syntax { .. } => "cli::SyntaxError",
            CliError::Arity { .. } => "cli::ArityMismatch",
            CliError::Usage(_) => "cli::Usage",
            CliError::Io { .. } => "cli::Io",
            CliError::Core(e) => e.code(),
        }
    }

    /// 2 for bad input, 3 for a failed precondition on the ideal, 4 for
    /// an algorithmic failure, 1 for I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Syntax { .. } | CliError::Arity { .. } | CliError::Usage(_) => 2,
            CliError::Io { .. } => 1,
            CliError::Core(CoreError::UnitGenerator | CoreError::EmptyInput) => 2,
            CliError::Core(e) if e.is_precondition() => 3,
            CliError::Core(_) => 4,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    Ps,
    Ek,
    Taylor,
}

#[derive(Debug, Parser)]
#[command(name = "pommaret", version, about = "Pommaret bases and minimal free resolutions of monomial ideals")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Maximum number of lcm-lattice strands examined per exactness check.
    #[arg(long, default_value_t = DEFAULT_STRAND_CAP, global = true)]
    pub strand_cap: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Pommaret basis with classes and multiplicative variables.
    Basis { input: PathBuf },
    /// The P-graph of the basis.
    Pgraph { input: PathBuf },
    /// A free resolution of the ideal.
    Resolution {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "ps")]
        variant: Variant,
    },
    /// The cell complex supporting the Pommaret-Seiler resolution.
    Cellular { input: PathBuf },
    /// Minimal free resolution via the Morse matching.
    Minimize {
        input: PathBuf,
        /// Write one JSON record per cancellation to this file.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Betti table, projective dimension and regularity.
    Betti { input: PathBuf },
    /// Run every check on the pipeline for one ideal.
    Verify { input: PathBuf },
    /// Run the verification on seeded random quasi-stable ideals.
    RandomTest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of ideals.
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 3)]
        vars: usize,
        #[arg(long, default_value_t = 4)]
        max_deg: u32,
        /// Random generators added to the pure powers.
        #[arg(long, default_value_t = 3)]
        gens: usize,
    },
}

/// The result of a successful run. `ok` is false when a check failed; the
/// report is still produced.
#[derive(Debug, Default)]
pub struct Outcome {
    pub output: String,
    pub trace: Option<(PathBuf, String)>,
    pub ok: bool,
}

fn read_input(path: &PathBuf) -> Result<Input, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })?;
    parse_ideal(&text)
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn ok(output: String) -> Outcome {
    Outcome {
        output,
        trace: None,
        ok: true,
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let dot_allowed = matches!(cli.command, Command::Pgraph { .. } | Command::Cellular { .. });
    if cli.format == Format::Dot && !dot_allowed {
        return Err(CliError::Usage(
            "--format dot is only available for pgraph and cellular".into(),
        ));
    }
    let format = cli.format;
    match &cli.command {
        Command::Basis { input } => {
            let input = read_input(input)?;
            let basis = pommaret_basis(&input.ideal)?;
            Ok(ok(render_basis(&input.ring, &basis, format)))
        }
        Command::Pgraph { input } => {
            let input = read_input(input)?;
            let basis = pommaret_basis(&input.ideal)?;
            let g = build_p_graph(&basis);
            let out = match format {
                Format::Dot => g.to_dot(&input.ring),
                Format::Json => {
                    let edges: Vec<_> = g
                        .edges()
                        .iter()
                        .map(|e| {
                            json!({
                                "source": e.source,
                                "target": e.target,
                                "var": e.var,
                                "t": input.ring.format(&e.t),
                            })
                        })
                        .collect();
                    let vertices: Vec<String> = g.vertices().iter().map(|v| input.ring.format(v)).collect();
                    pretty(&json!({ "vertices": vertices, "edges": edges }))
                }
                Format::Text => {
                    let mut s = String::new();
                    let _ = writeln!(s, "vertices: {}, edges: {}", g.vertices().len(), g.edges().len());
                    for e in g.edges() {
                        let _ = writeln!(
                            s,
                            "  {} --{}--> {}  t = {}",
                            input.ring.format(&g.vertices()[e.source]),
                            input.ring.name(e.var),
                            input.ring.format(&g.vertices()[e.target]),
                            input.ring.format(&e.t)
                        );
                    }
                    s
                }
            };
            Ok(ok(out))
        }
        Command::Resolution { input, variant } => {
            let input = read_input(input)?;
            let f = match variant {
                Variant::Ps => ps_complex(&pommaret_basis(&input.ideal)?),
                Variant::Ek => ek_complex(&input.ideal)?,
                Variant::Taylor => taylor_complex(&input.ideal),
            };
            Ok(ok(render_complex(&input.ring, &f, format)))
        }
        Command::Cellular { input } => {
            let input = read_input(input)?;
            let cells = build_cell_complex(&pommaret_basis(&input.ideal)?);
            let out = match format {
                Format::Dot => cells.to_dot(&input.ring),
                Format::Json => pretty(&cells.to_json()),
                Format::Text => {
                    let mut s = String::new();
                    let _ = writeln!(s, "cells by dimension: {:?}", cells.counts());
                    for (p, layer) in cells.cells().iter().enumerate() {
                        for cell in layer {
                            let h = input.ring.format(&cells.elements()[cell.h]);
                            let tau = input.ring.format_varset(&cell.tau);
                            let verts: Vec<String> = cell
                                .vertices
                                .iter()
                                .map(|&v| input.ring.format(&cells.elements()[v]))
                                .collect();
                            let _ = writeln!(
                                s,
                                "  dim {p}  U({h}, {tau})  label {}  vertices {{{}}}",
                                input.ring.format(&cell.label),
                                verts.join(", ")
                            );
                        }
                    }
                    s
                }
            };
            Ok(ok(out))
        }
        Command::Minimize { input, trace } => {
            let input = read_input(input)?;
            let basis = pommaret_basis(&input.ideal)?;
            let f = ps_complex(&basis);
            let r = minimize(&f)?;
            let mut outcome = ok(render_minimize(&input.ring, &f, &r, format));
            if let Some(path) = trace {
                let mut lines = String::new();
                for rec in &r.trace {
                    lines.push_str(&serde_json::to_string(rec).expect("json values serialize"));
                    lines.push('\n');
                }
                outcome.trace = Some((path.clone(), lines));
            }
            Ok(outcome)
        }
        Command::Betti { input } => {
            let input = read_input(input)?;
            let basis = pommaret_basis(&input.ideal)?;
            let r = minimize(&ps_complex(&basis))?;
            let b = r.complex.betti_table();
            Ok(ok(render_betti(&b, format)))
        }
        Command::Verify { input } => {
            let input = read_input(input)?;
            let report = verify_ideal(&input.ideal, cli.strand_cap)?;
            let out = match format {
                Format::Json => pretty(&serde_json::to_value(&report).expect("report serializes")),
                _ => report.render(),
            };
            Ok(Outcome {
                output: out,
                trace: None,
                ok: report.ok,
            })
        }
        Command::RandomTest {
            seed,
            count,
            vars,
            max_deg,
            gens,
        } => {
            if *vars == 0 || *max_deg == 0 {
                return Err(CliError::Usage("--vars and --max-deg must be positive".into()));
            }
            let ring = Ring::new(*vars);
            let mut all_ok = true;
            let mut text = String::new();
            let mut records = Vec::new();
            for k in 0..*count {
                let s = seed.wrapping_add(k as u64);
                let ideal = random_quasi_stable(s, *vars, *max_deg, *gens);
                let gens_str: Vec<String> = ideal.gens().iter().map(|g| ring.format(g)).collect();
                let report = verify_ideal(&ideal, cli.strand_cap)?;
                all_ok &= report.ok;
                let failed: Vec<&str> = report
                    .checks
                    .iter()
                    .filter(|c| !c.ok)
                    .map(|c| c.name)
                    .collect();
                let status = if report.ok {
                    "ok".to_string()
                } else {
                    format!("FAILED {failed:?}")
                };
                let _ = writeln!(
                    text,
                    "seed {s}: {status}  betti {:?}  <{}>",
                    report.totals,
                    gens_str.join(", ")
                );
                records.push(json!({
                    "seed": s,
                    "generators": gens_str,
                    "ok": report.ok,
                    "totals": report.totals,
                    "failed": failed,
                }));
            }
            let passed = records.iter().filter(|r| r["ok"] == true).count();
            let _ = writeln!(text, "{passed}/{count} ideals passed");
            let out = match format {
                Format::Json => pretty(&json!({ "passed": passed, "count": count, "ideals": records })),
                _ => text,
            };
            Ok(Outcome {
                output: out,
                trace: None,
                ok: all_ok,
            })
        }
    }
}

fn render_basis(ring: &Ring, basis: &PommaretBasis, format: Format) -> String {
    match format {
        Format::Json => {
            let elems: Vec<_> = (0..basis.len())
                .map(|a| {
                    let m = basis.element(a);
                    let mult: Vec<&str> = (1..=basis.class(a)).map(|i| ring.name(i)).collect();
                    let non: Vec<&str> = basis.non_multiplicative(a).iter().map(|i| ring.name(i)).collect();
                    json!({
                        "monomial": ring.format(m),
                        "exponents": m.exps(),
                        "class": basis.class(a),
                        "multiplicative": mult,
                        "non_multiplicative": non,
                    })
                })
                .collect();
            let gens: Vec<String> = basis.ideal().gens().iter().map(|g| ring.format(g)).collect();
            pretty(&json!({
                "vars": basis.n(),
                "generators": gens,
                "basis": elems,
                "class_counts": basis.class_counts(),
                "linear_quotients": basis.has_linear_quotients(),
            }))
        }
        _ => {
            let mut s = String::new();
            let _ = writeln!(s, "Pommaret basis: {} elements", basis.len());
            let width = (0..basis.len())
                .map(|a| ring.format(basis.element(a)).len())
                .max()
                .unwrap_or(1);
            for a in 0..basis.len() {
                let mult: Vec<&str> = (1..=basis.class(a)).map(|i| ring.name(i)).collect();
                let _ = writeln!(
                    s,
                    "  {:<width$}  cls {}  multiplicative {{{}}}",
                    ring.format(basis.element(a)),
                    basis.class(a),
                    mult.join(", ")
                );
            }
            s
        }
    }
}

fn render_complex(ring: &Ring, f: &FreeComplex, format: Format) -> String {
    match format {
        Format::Json => pretty(&f.to_json()),
        _ => f.render_text(ring),
    }
}

fn critical_labels(ring: &Ring, f: &FreeComplex, r: &ReducedComplex) -> Vec<Vec<String>> {
    r.critical
        .iter()
        .enumerate()
        .map(|(i, ks)| ks.iter().map(|&k| f.label_string(ring, &f.module(i)[k])).collect())
        .collect()
}

fn matching_sizes(r: &ReducedComplex) -> Vec<(usize, usize)> {
    r.matching
        .as_ref()
        .map(|m| m.sizes_by_var().into_iter().rev().collect())
        .unwrap_or_default()
}

fn render_minimize(ring: &Ring, f: &FreeComplex, r: &ReducedComplex, format: Format) -> String {
    let sizes = matching_sizes(r);
    let critical = critical_labels(ring, f, r);
    match format {
        Format::Json => {
            let sizes: serde_json::Map<String, serde_json::Value> = sizes
                .iter()
                .map(|(v, c)| (format!("V_{v}"), json!(c)))
                .collect();
            pretty(&json!({
                "matching": sizes,
                "matched_cancellations": r.matched_cancellations,
                "extra_cancellations": r.safety_net,
                "critical": critical,
                "complex": r.complex.to_json(),
            }))
        }
        _ => {
            let mut s = String::new();
            let parts: Vec<String> = sizes.iter().map(|(v, c)| format!("|V_{v}| = {c}")).collect();
            if parts.is_empty() {
                s.push_str("matching: empty\n");
            } else {
                let _ = writeln!(s, "{}", parts.join(", "));
            }
            if r.safety_net > 0 {
                let _ = writeln!(s, "extra unit cancellations: {}", r.safety_net);
            }
            let total: usize = critical.iter().map(Vec::len).sum();
            let _ = writeln!(s, "critical cells ({total}):");
            for (i, labels) in critical.iter().enumerate() {
                let _ = writeln!(s, "  F_{i}: {}", labels.join(" "));
            }
            s.push_str(&r.complex.render_text(ring));
            s
        }
    }
}

fn tuple(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn render_betti(b: &BettiTable, format: Format) -> String {
    match format {
        Format::Json => {
            let graded: Vec<_> = b
                .by_degree
                .iter()
                .map(|((i, j), c)| json!({ "i": i, "j": j, "beta": c }))
                .collect();
            pretty(&json!({
                "totals": b.totals(),
                "graded": graded,
                "pd": b.pd(),
                "reg": b.reg(),
            }))
        }
        _ => {
            let mut s = b.render();
            let _ = writeln!(s, "total Betti numbers: {}", tuple(&b.totals()));
            let _ = writeln!(s, "pd = {}", b.pd());
            let _ = writeln!(s, "reg = {}", b.reg());
            s
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub ok: bool,
    pub detail: String,
}

/// Every check of the pipeline on one ideal.
#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub ok: bool,
    pub basis_size: usize,
    pub ps_ranks: Vec<usize>,
    pub minimal_ranks: Vec<usize>,
    pub totals: Vec<usize>,
    pub pd: usize,
    pub reg: i64,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "basis size: {}", self.basis_size);
        let _ = writeln!(s, "Pommaret-Seiler ranks: {}", tuple(&self.ps_ranks));
        let _ = writeln!(s, "minimal ranks: {}", tuple(&self.minimal_ranks));
        let _ = writeln!(s, "pd = {}, reg = {}", self.pd, self.reg);
        for c in &self.checks {
            let mark = if c.ok { "ok  " } else { "FAIL" };
            let _ = writeln!(s, "[{mark}] {}: {}", c.name, c.detail);
        }
        let _ = writeln!(s, "{}", if self.ok { "all checks passed" } else { "verification FAILED" });
        s
    }
}

fn exactness_check(
    name: &'static str,
    f: &FreeComplex,
    ideal: &MonomialIdeal,
    cap: usize,
) -> Result<Check, CliError> {
    Ok(match check_exactness_with_cap(f, ideal, cap) {
        Ok(rep) => Check {
            name,
            ok: rep.ok,
            detail: format!(
                "{}/{} strands ({:.1}% coverage), {} failures",
                rep.strands_checked,
                rep.lattice_size,
                100.0 * rep.coverage(),
                rep.failures.len()
            ),
        },
        Err(e @ CoreError::NotAComplex(_)) => Check {
            name,
            ok: false,
            detail: e.to_string(),
        },
        Err(e) => return Err(e.into()),
    })
}

pub fn verify_ideal(ideal: &MonomialIdeal, cap: usize) -> Result<VerifyReport, CliError> {
    let basis = pommaret_basis(ideal)?;
    let f = ps_complex(&basis);
    let mut checks = Vec::new();

    checks.push(Check {
        name: "linear quotients",
        ok: basis.has_linear_quotients(),
        detail: format!("{} basis elements in P-order", basis.len()),
    });
    let axioms = check_complex(&f);
    checks.push(Check {
        name: "complex axioms",
        ok: axioms.ok,
        detail: format!("{} failures", axioms.failures.len()),
    });
    checks.push(exactness_check("exactness", &f, ideal, cap)?);

    let cells = build_cell_complex(&basis);
    let supported = supports_check(&cells, &f)?;
    checks.push(Check {
        name: "cellular support",
        ok: supported && cells.boundary_squares_to_zero() && cells.labels_are_lcms(),
        detail: format!("cells {:?}", cells.counts()),
    });

    let v = build_matching_v(&f, &basis)?;
    let acyclic = is_morse_matching(&resolution_graph(&f), &v);
    checks.push(Check {
        name: "Morse matching",
        ok: acyclic,
        detail: format!("{} pairs", v.len()),
    });

    let r = minimize(&f)?;
    checks.push(Check {
        name: "minimality",
        ok: r.complex.is_minimal() && r.safety_net == 0,
        detail: format!(
            "{} matched cancellations, {} extra",
            r.matched_cancellations, r.safety_net
        ),
    });
    checks.push(exactness_check("minimal exactness", &r.complex, ideal, cap)?);

    let inv = homological_invariants(&r.complex, &basis)?;
    checks.push(Check {
        name: "projective dimension",
        ok: inv.length_check,
        detail: format!("pd {} vs n - d = {}", inv.pd, inv.expected_pd),
    });
    checks.push(Check {
        name: "regularity",
        ok: inv.reg_check,
        detail: format!("reg {} vs max basis degree {}", inv.reg, inv.basis_max_degree),
    });
    let oracle = oracle_betti(ideal)?;
    let betti = r.complex.betti_table();
    checks.push(Check {
        name: "Betti numbers vs Taylor",
        ok: oracle == betti,
        detail: format!("Taylor gives {}", tuple(&oracle.totals())),
    });

    Ok(VerifyReport {
        ok: checks.iter().all(|c| c.ok),
        basis_size: basis.len(),
        ps_ranks: f.ranks(),
        minimal_ranks: r.complex.ranks(),
        totals: betti.totals(),
        pd: inv.pd,
        reg: inv.reg,
        checks,
    })
}
