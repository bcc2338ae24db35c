//! Command-line front end: expression parser, invariant reports, catalog
//! verification and the random corpus sweep.

pub mod parse;
pub mod report;

use std::ffi::OsString;

use clap::{Parser, Subcommand, ValueEnum};

pub use parse::{parse_poly, ParseError};
pub use report::{build_report, Report, What};

use crate::catalog::{build_catalog, corpus, verify_catalog};
use crate::logideals::LogError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INVALID_INPUT: i32 = 2;
pub const EXIT_IDENTITY_VIOLATION: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "curvelog", version, about = "Logarithmic Tjurina invariants of plane curve germs relative to y = 0")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Invariants, ideals, deformation and resolution of one germ.
    Report {
        #[arg(long)]
        poly: String,
        #[arg(long, value_enum, default_value = "all")]
        what: What,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Also write the resolution tree of y·F in DOT format.
        #[arg(long)]
        dot: Option<std::path::PathBuf>,
        /// Recompute τ_log and τ^es_log for y·f + x^w'·u, w' up to this bound.
        #[arg(long, value_name = "WMAX")]
        wmax_check: Option<u32>,
    },
    /// Recompute every catalog entry and compare with its expectations.
    VerifyCatalog {
        #[arg(long, default_value_t = 10)]
        wmax: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check identities and inclusions on the catalog plus seeded random trinomials.
    Corpus {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 40)]
        count: usize,
        #[arg(long, default_value_t = 10)]
        wmax: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// Exit code with what goes to stdout and stderr.
#[derive(Debug, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn error(code: i32, msg: impl Into<String>) -> Self {
        Outcome { code, stdout: String::new(), stderr: msg.into() }
    }
}

pub fn exit_code(e: &LogError) -> i32 {
    use crate::branches::BranchError;
    use crate::germ::GermError;
    use crate::resolution::ResolutionError;
    match e {
        LogError::IdentityViolation(_) => EXIT_IDENTITY_VIOLATION,
        LogError::Germ(GermError::Exact(_) | GermError::Groebner(_)) => EXIT_FAILURE,
        LogError::Germ(_) => EXIT_INVALID_INPUT,
        LogError::Resolution(
            ResolutionError::ZeroPolynomial | ResolutionError::NotThroughOrigin | ResolutionError::NonReducedInput,
        ) => EXIT_INVALID_INPUT,
        LogError::Branch(BranchError::ZeroPolynomial | BranchError::NotThroughOrigin | BranchError::NonReducedInput) => {
            EXIT_INVALID_INPUT
        }
        _ => EXIT_FAILURE,
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable report");
    s.push('\n');
    s
}

pub fn cmd_report(poly: &str, what: What, format: Format, dot: Option<&std::path::Path>, wmax_check: Option<u32>) -> Outcome {
    let p = match parse_poly(poly) {
        Ok(p) => p,
        Err(e) => return Outcome::error(EXIT_INVALID_INPUT, format!("error: {e}\n")),
    };
    let report = match build_report(&p, what, wmax_check) {
        Ok(r) => r,
        Err(e) => return Outcome::error(exit_code(&e), format!("error: {e}\n")),
    };
    if let Some(path) = dot {
        let tree = match crate::resolution::resolve(&report.germ.with_divisor()) {
            Ok(t) => t,
            Err(e) => {
                let msg = format!("error: {e}\n");
                return Outcome::error(exit_code(&e.into()), msg);
            }
        };
        if let Err(e) = std::fs::write(path, tree.to_dot()) {
            return Outcome::error(EXIT_FAILURE, format!("error: cannot write {}: {e}\n", path.display()));
        }
    }
    let stdout = match format {
        Format::Json => to_json(&report.doc),
        Format::Text => report.to_text(),
    };
    Outcome { code: EXIT_OK, stdout, stderr: String::new() }
}

pub fn cmd_verify_catalog(wmax: u32, format: Format) -> Outcome {
    if wmax < 8 {
        return Outcome::error(EXIT_INVALID_INPUT, "error: --wmax must be at least 8\n");
    }
    let entries = build_catalog(wmax);
    let report = verify_catalog(&entries);
    let summary = format!("{} entries, {} passed", report.entries.len(), report.passed());
    let stdout = match format {
        Format::Json => to_json(&serde_json::json!({ "summary": summary, "report": report })),
        Format::Text => {
            let mut s = String::new();
            for e in &report.entries {
                let tag = if e.passed { "PASS" } else { "FAIL" };
                let note = if e.verified_against_source { "" } else { " [unverified row]" };
                s.push_str(&format!("{tag} {}{note}: {}\n", e.label, e.poly));
                if let Some(c) = &e.computed {
                    s.push_str(&format!(
                        "     delta={} tau_log={} tes_log={} tau_es(yF)={} I^ea_log=<{}>\n",
                        c.delta_res,
                        c.tau_log,
                        c.tes_log,
                        c.tes_cup,
                        c.ea_log.join(", ")
                    ));
                }
                for d in &e.diffs {
                    s.push_str(&format!("     diff: {d}\n"));
                }
            }
            for st in &report.stability {
                let tag = if st.stable { "PASS" } else { "FAIL" };
                s.push_str(&format!("{tag} w-stability {}: {:?}\n", st.family, st.values));
            }
            for b in &report.boundaries {
                let tag = if b.rejected { "PASS" } else { "FAIL" };
                s.push_str(&format!("{tag} excluded parameter {}: {}\n", b.label, b.reason));
            }
            s.push_str(&summary);
            s.push('\n');
            s
        }
    };
    let code = if report.all_passed() { EXIT_OK } else { EXIT_FAILURE };
    Outcome { code, stdout, stderr: String::new() }
}

#[derive(serde::Serialize)]
struct CorpusLine {
    poly: String,
    w: u32,
    tau_log: Option<usize>,
    tes_log: Option<usize>,
    delta: Option<usize>,
    chain_holds: Option<bool>,
    error: Option<String>,
}

pub fn cmd_corpus(seed: u64, count: usize, wmax: u32, format: Format) -> Outcome {
    let mut code = EXIT_OK;
    let mut lines = Vec::new();
    for g in corpus(wmax, seed, count) {
        let mut line = CorpusLine {
            poly: g.poly.to_text(),
            w: g.w,
            tau_log: None,
            tes_log: None,
            delta: None,
            chain_holds: None,
            error: None,
        };
        let checked = crate::logideals::tau_report(&g).and_then(|r| {
            let chain = crate::branches::inclusion_chain_check(&g)?;
            Ok((r, chain))
        });
        match checked {
            Ok((r, chain)) => {
                line.tau_log = Some(r.tau_log);
                line.tes_log = Some(r.tes_log);
                line.delta = Some(r.delta);
                line.chain_holds = Some(chain.all_hold());
                if !chain.all_hold() && code == EXIT_OK {
                    code = EXIT_FAILURE;
                }
            }
            Err(e) => {
                code = code.max(exit_code(&e));
                line.error = Some(e.to_string());
            }
        }
        lines.push(line);
    }
    let stdout = match format {
        Format::Json => to_json(&lines),
        Format::Text => {
            let mut s = String::new();
            for l in &lines {
                match &l.error {
                    Some(e) => s.push_str(&format!("ERROR {} (w={}): {e}\n", l.poly, l.w)),
                    None => s.push_str(&format!(
                        "{} {} (w={}): tau_log={} tes_log={} delta={}\n",
                        if l.chain_holds == Some(true) { "OK  " } else { "FAIL" },
                        l.poly,
                        l.w,
                        l.tau_log.unwrap_or_default(),
                        l.tes_log.unwrap_or_default(),
                        l.delta.unwrap_or_default()
                    )),
                }
            }
            s.push_str(&format!("{} germs\n", lines.len()));
            s
        }
    };
    Outcome { code, stdout, stderr: String::new() }
}

/// Parses arguments and runs the chosen command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome::error(code, rendered)
            } else {
                Outcome { code, stdout: rendered, stderr: String::new() }
            };
        }
    };
    match cli.command {
        Command::Report { poly, what, format, dot, wmax_check } => cmd_report(&poly, what, format, dot.as_deref(), wmax_check),
        Command::VerifyCatalog { wmax, format } => cmd_verify_catalog(wmax, format),
        Command::Corpus { seed, count, wmax, format } => cmd_corpus(seed, count, wmax, format),
    }
}
