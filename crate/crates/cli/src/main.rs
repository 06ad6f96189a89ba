use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;
use ulpa_cli::commands::{
    self, CmdError, ConstructArgs, ConstructKind, EvalArgs, ReportArgs, VerifyArgs,
};

/// Symbolic workbench for graph and ultragraph Leavitt path algebras.
#[derive(Parser)]
#[command(name = "ulpa", version, about)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Eg,
    Gf,
    Desing,
}

#[derive(Subcommand)]
enum Cmd {
    /// Structural analysis: singular vertices, unitality, Condition (L),
    /// hereditary saturated collections, simplicity verdict.
    Analyze { file: String },
    /// Derived structures: the word-construction graph, the finite graph
    /// approximant, or the desingularization, in DSL form.
    Construct {
        #[arg(value_enum)]
        kind: Kind,
        file: String,
        #[arg(long)]
        structure: Option<String>,
        #[arg(long, default_value_t = 0)]
        window: u32,
        #[arg(long)]
        depth: Option<usize>,
        /// greedy | file (use the structure's own sigma table)
        #[arg(long, default_value = "greedy")]
        sigma: String,
        /// Comma-separated edge names for the approximant
        #[arg(long)]
        edges: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run a named verification suite; nonzero exit on any failure.
    Verify {
        suite: String,
        file: String,
        #[arg(long)]
        structure: Option<String>,
        #[arg(long, default_value = "Z")]
        ring: String,
        #[arg(long, default_value_t = 0)]
        window: u32,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long, default_value_t = 3)]
        degree_bound: usize,
        #[arg(long, default_value_t = 3)]
        desing_depth: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long)]
        edges: Option<String>,
    },
    /// Emit DOT for every structure in the document.
    ExportDot {
        file: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the whole applicable battery and emit a plain-text report;
    /// with -o, also line-delimited structured records.
    Report {
        file: String,
        #[arg(long, default_value = "Z")]
        ring: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        window: u32,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Evaluate an element expression over a structure.
    Eval {
        file: String,
        expr: String,
        #[arg(long)]
        structure: Option<String>,
        #[arg(long, default_value = "Z")]
        ring: String,
    },
}

fn split_edges(edges: Option<String>) -> Vec<String> {
    edges
        .map(|e| {
            e.split(',')
                .map(|s| s.trim().to_string())
                .filter(|s| !s.is_empty())
                .collect()
        })
        .unwrap_or_default()
}

fn write_out(output: Option<PathBuf>, text: &str) -> Result<(), CmdError> {
    match output {
        Some(path) => std::fs::write(&path, text)
            .map_err(|e| CmdError::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), CmdError> {
    match cli.cmd {
        Cmd::Analyze { file } => {
            let doc = commands::load(&file)?;
            print!("{}", commands::analyze(&doc)?);
            Ok(())
        }
        Cmd::Construct {
            kind,
            file,
            structure,
            window,
            depth,
            sigma,
            edges,
            output,
        } => {
            let doc = commands::load(&file)?;
            let args = ConstructArgs {
                kind: match kind {
                    Kind::Eg => ConstructKind::Eg,
                    Kind::Gf => ConstructKind::Gf,
                    Kind::Desing => ConstructKind::Desing,
                },
                structure,
                window,
                depth,
                sigma_from_file: match sigma.as_str() {
                    "greedy" => false,
                    "file" => true,
                    other => {
                        return Err(CmdError::Parse(format!(
                            "unknown sigma strategy {other}; expected greedy or file"
                        )))
                    }
                },
                edges: split_edges(edges),
            };
            let text = commands::construct(&doc, &args)?;
            write_out(output, &text)
        }
        Cmd::Verify {
            suite,
            file,
            structure,
            ring,
            window,
            depth,
            degree_bound,
            desing_depth,
            seed,
            samples,
            edges,
        } => {
            let doc = commands::load(&file)?;
            let args = VerifyArgs {
                suite,
                structure,
                ring: commands::parse_ring(&ring)?,
                window,
                depth,
                degree_bound,
                desing_depth,
                seed,
                samples,
                edges: split_edges(edges),
            };
            let (text, passed) = commands::verify(&doc, &args)?;
            print!("{text}");
            if passed {
                Ok(())
            } else {
                Err(CmdError::SuiteFailure)
            }
        }
        Cmd::ExportDot { file, output } => {
            let doc = commands::load(&file)?;
            write_out(output, &commands::export_dot(&doc))
        }
        Cmd::Report {
            file,
            ring,
            seed,
            window,
            depth,
            output,
        } => {
            let doc = commands::load(&file)?;
            let args = ReportArgs {
                ring: commands::parse_ring(&ring)?,
                seed,
                window,
                depth,
            };
            let (text, records, passed) = commands::report(&doc, &args)?;
            print!("{text}");
            if let Some(path) = output {
                let mut body = records.join("\n");
                body.push('\n');
                std::fs::write(&path, body)
                    .map_err(|e| CmdError::Io(format!("{}: {e}", path.display())))?;
            }
            if passed {
                Ok(())
            } else {
                Err(CmdError::SuiteFailure)
            }
        }
        Cmd::Eval {
            file,
            expr,
            structure,
            ring,
        } => {
            let doc = commands::load(&file)?;
            let args = EvalArgs {
                structure,
                ring: commands::parse_ring(&ring)?,
                expr,
            };
            print!("{}", commands::eval(&doc, &args)?);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !matches!(e, CmdError::SuiteFailure) {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
