//! The `reeb` command line.
//!
//! Exit codes: 0 on success, 1 when an input or certificate is invalid, 2
//! when a search runs out of budget and 3 for usage errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use crate::cosheaf::{evaluate, reeb_cosheaf, Interval, Piece};
use crate::graph::RGraph;
use crate::interleave::{
    distance_bracket, verify_certificate, Bracket, Certificate, InterleaveError, Smoothings, Verdict,
    DEFAULT_SEARCH_BUDGET,
};
use crate::io::{emit_morphism, emit_rgraph, export_dot, parse_field, parse_morphism, parse_rgraph, reeb_of_complex, DotOptions};
use crate::rational::Rational;
use crate::smoothing::{smooth_naive, smooth_sweep};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "reeb", version, about = "Reeb graphs, smoothings and interleavings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Algo {
    Sweep,
    Naive,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that a graph document is well formed.
    Validate { file: PathBuf },
    /// Compute the Reeb graph of a scalar field on a 2-complex.
    Reeb {
        field: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Smooth a graph by ε.
    Smooth {
        file: PathBuf,
        #[arg(long, value_parser = rational)]
        epsilon: Rational,
        #[arg(long, value_enum, default_value = "sweep")]
        algo: Algo,
        /// Write the canonical map into the smoothing here.
        #[arg(long)]
        emit_zeta: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Evaluate the Reeb cosheaf on an open interval `LO,HI`; either end
    /// may be `-inf` or `inf`.
    CosheafEval {
        file: PathBuf,
        #[arg(long, value_parser = interval, allow_hyphen_values = true)]
        interval: Interval,
    },
    /// Verify an ε-interleaving given by two map files.
    CheckInterleave {
        f: PathBuf,
        g: PathBuf,
        #[arg(long, value_parser = rational)]
        epsilon: Rational,
        /// Map from F into the ε-smoothing of G.
        #[arg(long)]
        alpha: PathBuf,
        /// Map from G into the ε-smoothing of F.
        #[arg(long)]
        beta: PathBuf,
    },
    /// Bracket the interleaving distance of two graphs.
    Distance {
        f: PathBuf,
        g: PathBuf,
        #[arg(long, value_parser = rational)]
        tol: Rational,
        #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
        budget: u64,
        /// Write the witnessing maps to `DIR/alpha.map` and `DIR/beta.map`.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Print a graph in DOT format.
    ExportDot {
        file: PathBuf,
        /// Put the vertices of each level on one rank.
        #[arg(long)]
        rank: bool,
    },
}

fn rational(s: &str) -> Result<Rational, String> {
    s.parse().map_err(|e: crate::rational::RationalParseError| e.to_string())
}

fn interval(s: &str) -> Result<Interval, String> {
    let (lo, hi) = s.split_once(',').ok_or("expected LO,HI")?;
    let end = |w: &str, inf: &[&str]| -> Result<Option<Rational>, String> {
        let w = w.trim();
        if inf.contains(&w) {
            Ok(None)
        } else {
            rational(w).map(Some)
        }
    };
    let lo = end(lo, &["-inf"])?;
    let hi = end(hi, &["inf", "+inf"])?;
    Interval::new(lo, hi).map_err(|e| e.to_string())
}

/// A failed command: the message and the exit code.
struct Failure(i32, String);

impl Failure {
    fn invalid(msg: impl Into<String>) -> Failure {
        Failure(EXIT_INVALID, msg.into())
    }
}

impl From<InterleaveError> for Failure {
    fn from(e: InterleaveError) -> Failure {
        match e {
            InterleaveError::Budget(_) => Failure(EXIT_BUDGET, e.to_string()),
            other => Failure::invalid(other.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<RGraph, Failure> {
    parse_rgraph(&read(path)?).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

fn write_to(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::invalid(format!("{}: {e}", p.display()))),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Failure::invalid(e.to_string())),
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure::invalid(e.to_string());
    match command {
        Command::Validate { file } => {
            let g = load(&file)?;
            writeln!(
                out,
                "ok: {} vertices, {} edges, {} critical values, {} components",
                g.num_vertices(),
                g.num_edges(),
                g.num_levels(),
                g.num_components()
            )
            .map_err(io)?;
        }
        Command::Reeb { field, output } => {
            let k = parse_field(&read(&field)?).map_err(|e| Failure::invalid(format!("{}: {e}", field.display())))?;
            let r = reeb_of_complex(&k);
            write_to(output.as_deref(), &emit_rgraph(&r.graph), out)?;
        }
        Command::Smooth {
            file,
            epsilon,
            algo,
            emit_zeta,
            output,
        } => {
            let g = load(&file)?;
            let r = match algo {
                Algo::Sweep => smooth_sweep(&g, epsilon),
                Algo::Naive => smooth_naive(&g, epsilon),
            }
            .map_err(|e| Failure::invalid(e.to_string()))?;
            write_to(output.as_deref(), &emit_rgraph(&r.smoothed), out)?;
            if let Some(z) = emit_zeta {
                fs::write(&z, emit_morphism(&r.zeta)).map_err(io)?;
            }
        }
        Command::CosheafEval { file, interval } => {
            let f = reeb_cosheaf(&load(&file)?);
            let ev = evaluate(&f, interval);
            writeln!(out, "{} components over {}", ev.len(), interval).map_err(io)?;
            for (n, pieces) in ev.elements.iter().enumerate() {
                let mut cells: Vec<&str> = pieces
                    .iter()
                    .flat_map(|&p| match p {
                        Piece::Node(i, k) => &f.nodes(i)[k].cells,
                        Piece::Edge(i, k) => &f.edges(i)[k].cells,
                    })
                    .map(String::as_str)
                    .collect();
                cells.sort_unstable();
                cells.dedup();
                writeln!(out, "component {n}: {}", cells.join(" ")).map_err(io)?;
            }
        }
        Command::CheckInterleave {
            f,
            g,
            epsilon,
            alpha,
            beta,
        } => {
            let (fg, gg) = (Arc::new(load(&f)?), Arc::new(load(&g)?));
            if epsilon.is_negative() {
                return Err(Failure::invalid(format!("negative parameter {epsilon}")));
            }
            let sf = Smoothings::compute(&fg, epsilon).map_err(|e| Failure::invalid(e.to_string()))?;
            let sg = Smoothings::compute(&gg, epsilon).map_err(|e| Failure::invalid(e.to_string()))?;
            let map = |path: &Path, src: &Arc<RGraph>, tgt: &Arc<RGraph>| {
                parse_morphism(&read(path)?, src.clone(), tgt.clone())
                    .map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
            };
            let a = map(&alpha, &fg, &sg.once.smoothed)?;
            let b = map(&beta, &gg, &sf.once.smoothed)?;
            let c = Certificate::new(epsilon, fg, gg, a, b, sf, sg)?;
            match verify_certificate(&c)? {
                Verdict::Valid => writeln!(out, "valid {epsilon}-interleaving").map_err(io)?,
                v => return Err(Failure::invalid(format!("invalid: {v}"))),
            }
        }
        Command::Distance {
            f,
            g,
            tol,
            budget,
            witness,
        } => {
            let (fg, gg) = (Arc::new(load(&f)?), Arc::new(load(&g)?));
            match distance_bracket(&fg, &gg, tol, budget)? {
                Bracket::Infinite => writeln!(out, "infinite").map_err(io)?,
                Bracket::Finite(b) => {
                    writeln!(out, "bracket [{}, {}]", b.lower, b.upper).map_err(io)?;
                    for p in &b.probes {
                        writeln!(out, "probe {} {:?}", p.epsilon, p.outcome).map_err(io)?;
                    }
                    if let Some(dir) = witness {
                        fs::create_dir_all(&dir).map_err(io)?;
                        fs::write(dir.join("alpha.map"), emit_morphism(&b.witness.alpha)).map_err(io)?;
                        fs::write(dir.join("beta.map"), emit_morphism(&b.witness.beta)).map_err(io)?;
                    }
                    if b.unknown_gaps {
                        return Err(Failure(
                            EXIT_BUDGET,
                            format!("search budget of {budget} exhausted; bracket has unknown gaps"),
                        ));
                    }
                }
            }
        }
        Command::ExportDot { file, rank } => {
            let g = load(&file)?;
            out.write_all(export_dot(&g, DotOptions { rank_by_value: rank }).as_bytes())
                .map_err(io)?;
        }
    }
    Ok(())
}

/// Runs one command and returns its exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}
