//! The `fwcs` command line.
//!
//! Exit codes: 0 on success, 1 when the input fails a check or an operation
//! is refused, 2 on usage errors (bad flags, unreadable files, wrong kind of
//! document).

use std::ffi::OsString;
use std::io::Write;
use std::net::{IpAddr, SocketAddr};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::compiler::{self, CompilerInput};
use crate::cs::{self, OptimizedCert, Presentation, Report};
use crate::document::{self, Document, Payload};
use crate::fw::{self, FwSystem, Indexing, Monotonicity};
use crate::rewrite::{self, RewriteOp};
use crate::session::Session;
use crate::{dot, service};

#[derive(Debug, Parser)]
#[command(name = "fwcs", version, about = "Finger/Whitney systems and carving/surgery presentations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a document against the invariants of its kind.
    Validate { file: PathBuf },
    /// Check a presentation against the FWCS arrow rules.
    CheckFwcs { file: PathBuf },
    /// Check an optimized presentation against a geometry certificate.
    CheckOptimized {
        file: PathBuf,
        #[arg(long)]
        cert: PathBuf,
    },
    /// Print the depth of every component, or of one.
    Depth {
        file: PathBuf,
        #[arg(long)]
        id: Option<String>,
    },
    /// Compile an F|W system with curve data into a presentation.
    Compile {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Also write the rule trace as JSON.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Apply one rewrite to a presentation.
    Apply {
        file: PathBuf,
        #[arg(long)]
        op: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Pass an F|W system to the cyclic cover of the given degree.
    Lift {
        file: PathBuf,
        #[arg(long)]
        degree: i64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the finger-graph S-triviality criterion.
    Trivial { file: PathBuf },
    /// Write the arrow graph in Graphviz format.
    ExportDot {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Serve a rewrite session over HTTP.
    Serve {
        /// Initial presentation; empty when omitted.
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: IpAddr,
    },
}

enum Failure {
    Check(String),
    Usage(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Check(_) => 1,
            Failure::Usage(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Check(m) | Failure::Usage(m) => m,
        }
    }
}

type Outcome = Result<i32, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    std::fs::write(path, bytes).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Document, Failure> {
    let text = read(path)?;
    document::parse(text.as_bytes()).map_err(|e| Failure::Check(format!("{}: {e}", path.display())))
}

fn load_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = read(path)?;
    document::parse_json(&text).map_err(|e| Failure::Check(format!("{}: {e}", path.display())))
}

fn wrong_kind(path: &Path, want: &str, got: &Payload) -> Failure {
    Failure::Usage(format!("{}: expected a {want} document, found {:?}", path.display(), got.kind()))
}

fn load_presentation(path: &Path) -> Result<Presentation, Failure> {
    match load(path)?.payload {
        Payload::Presentation(p) => Ok(p),
        other => Err(wrong_kind(path, "presentation", &other)),
    }
}

fn load_system(path: &Path) -> Result<FwSystem, Failure> {
    match load(path)?.payload {
        Payload::FwSystem(s) => Ok(s),
        other => Err(wrong_kind(path, "fwSystem", &other)),
    }
}

fn emit_report(out: &mut dyn Write, r: &Report) -> i32 {
    let _ = out.write_all(document::to_canonical_json(r).as_bytes());
    if r.ok {
        0
    } else {
        1
    }
}

fn emit(out: &mut dyn Write, path: Option<&Path>, bytes: &[u8]) -> Outcome {
    match path {
        Some(p) => write_file(p, bytes)?,
        None => {
            let _ = out.write_all(bytes);
        }
    }
    Ok(0)
}

fn execute(cmd: Command, out: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Validate { file } => Ok(emit_report(out, &load(&file)?.validate())),
        Command::CheckFwcs { file } => Ok(emit_report(out, &cs::check_fwcs(&load_presentation(&file)?))),
        Command::CheckOptimized { file, cert } => {
            let p = load_presentation(&file)?;
            let cert: OptimizedCert = load_json(&cert)?;
            let r = cs::check_optimized(&p, &cert).map_err(|e| Failure::Check(e.to_string()))?;
            Ok(emit_report(out, &r))
        }
        Command::Depth { file, id } => {
            let p = load_presentation(&file)?;
            let text = match id {
                Some(id) => format!("{}\n", p.depth(&id).map_err(|e| Failure::Check(e.to_string()))?),
                None => {
                    let depths = p.depths().map_err(|e| Failure::Check(e.to_string()))?;
                    let max = depths.values().copied().max().unwrap_or(0);
                    document::to_canonical_json(&serde_json::json!({ "depths": depths, "max": max }))
                }
            };
            emit(out, None, text.as_bytes())
        }
        Command::Compile { file, output, trace } => {
            let input = match load(&file)?.payload {
                Payload::CompilerInput(c) => c,
                Payload::FwSystem(s) if s.indexing == Indexing::Base => CompilerInput::from_base(&s, Vec::new()),
                other => return Err(wrong_kind(&file, "compilerInput or base-indexed fwSystem", &other)),
            };
            let compiled = compiler::compile(&input).map_err(|e| Failure::Check(e.to_string()))?;
            let mut doc = Document::presentation(compiled.presentation);
            doc.metadata.insert("source".into(), "compile".into());
            write_file(&output, &document::serialize(&doc))?;
            if let Some(t) = trace {
                write_file(&t, document::to_canonical_json(&compiled.trace).as_bytes())?;
            }
            Ok(0)
        }
        Command::Apply { file, op, output } => {
            let p = load_presentation(&file)?;
            let op: RewriteOp = load_json(&op)?;
            let (next, diff) = rewrite::apply(&p, &op).map_err(|e| Failure::Check(format!("{}: {e}", e.code())))?;
            write_file(&output, &document::serialize(&Document::presentation(next)))?;
            emit(out, None, document::to_canonical_json(&diff).as_bytes())
        }
        Command::Lift { file, degree, output } => {
            let s = load_system(&file)?;
            let lifted = fw::lift_to_cover(&s, degree).map_err(|e| Failure::Check(e.to_string()))?;
            emit(out, output.as_deref(), &document::serialize(&Document::fw_system(lifted)))
        }
        Command::Trivial { file } => {
            let s = load_system(&file)?;
            s.validate().map_err(|e| Failure::Check(e.to_string()))?;
            let verdict = if fw::s_trivial_by_graph(&s) {
                "S-trivial by graph criterion"
            } else {
                "not decided by graph criterion"
            };
            let mono = match fw::is_monotone(&s) {
                Monotonicity::Up => "up",
                Monotonicity::Down => "down",
                Monotonicity::None => "none",
            };
            emit(out, None, format!("{verdict}\nmonotone: {mono}\n").as_bytes())
        }
        Command::ExportDot { file, output } => {
            let p = load_presentation(&file)?;
            emit(out, output.as_deref(), dot::export_dot(&p).as_bytes())
        }
        Command::Serve { file, port, host } => {
            let p = match file {
                Some(f) => load_presentation(&f)?,
                None => Presentation::new(),
            };
            let session = Session::new(p).map_err(|e| Failure::Check(e.to_string()))?;
            let addr = SocketAddr::new(host, port);
            let rt = tokio::runtime::Runtime::new().map_err(|e| Failure::Usage(e.to_string()))?;
            let _ = writeln!(out, "listening on http://{addr}");
            let _ = out.flush();
            rt.block_on(service::serve(session, addr)).map_err(|e| Failure::Usage(format!("{addr}: {e}")))?;
            Ok(0)
        }
    }
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(sink, "{e}");
            return if code == 0 { 0 } else { 2 };
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}
