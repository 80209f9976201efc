use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use quiverdeg::singularity::DEFAULT_SEED;
use quiverdeg::{
    classify_seeded, codim, decompose_nilpotent, degenerates, euler_form, ext1_dim, extension_witness, hasse, hom_dim,
    read_quiver, read_representation, realize, scan_seeded, write_representation, DimVector, Error, Representation,
    WindowMultiset, WindowsFile,
};

#[derive(Parser)]
#[command(
    name = "quiverdeg",
    version,
    about = "Degenerations of quiver representations, computed exactly"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// dim Hom(V, W) for two representation files
    Hom { v: PathBuf, w: PathBuf },
    /// dim Ext¹(V, W) for two representation files
    Ext { v: PathBuf, w: PathBuf },
    /// Euler form <d, e>, from two representation files or from a quiver
    /// file with --d and --e
    Euler {
        files: Vec<PathBuf>,
        #[arg(long)]
        quiver: Option<PathBuf>,
        #[arg(long, value_delimiter = ',')]
        d: Option<Vec<usize>>,
        #[arg(long, value_delimiter = ',')]
        e: Option<Vec<usize>>,
    },
    /// Window decomposition of a nilpotent cyclic representation
    Decompose { rep: PathBuf },
    /// Matrix representation of a windows file
    Realize { windows: PathBuf },
    /// Whether M degenerates to N
    Degenerates {
        m: PathBuf,
        nn: PathBuf,
        /// Also search for a sequence 0 -> U -> M -> V -> 0 with U + V = N
        /// (seeded by QUIVERDEG_SEED)
        #[arg(long)]
        witness: bool,
    },
    /// codim(M, N) = [N,N] - [M,M]
    Codim { m: PathBuf, nn: PathBuf },
    /// Singularity type of a degeneration of codimension at most 2
    /// (exact-sequence search seeded by QUIVERDEG_SEED)
    Classify {
        m: PathBuf,
        nn: PathBuf,
        /// Write the reduction trace as JSON
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Hasse diagram of the degeneration order for one dimension vector
    Hasse {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        dim: Vec<usize>,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
        #[arg(long)]
        annotate: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Classify every codimension-2 degeneration up to the given sizes
    Scan {
        #[arg(long, default_value_t = 3)]
        max_n: usize,
        #[arg(long, default_value_t = 7)]
        max_dim: usize,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
}

enum Failure {
    Lib(Error),
    Io(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self::Lib(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NotNilpotent => 3,
        Error::NotADegeneration => 4,
        Error::OutOfScope(_) => 5,
        Error::EntryCount { .. }
        | Error::VectorLength { .. }
        | Error::InvalidQuiver(_)
        | Error::ShapeMismatch { .. }
        | Error::LengthMismatch { .. }
        | Error::QuiverMismatch
        | Error::BadWindow { .. }
        | Error::NotCyclic
        | Error::RankMismatch(..)
        | Error::BadResidue(_)
        | Error::BadArity { .. }
        | Error::Parse(_) => 2,
        _ => 1,
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Io(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn read_rep(path: &Path) -> Result<Representation, Failure> {
    read_representation(&read_text(path)?).map_err(|e| Failure::Lib(prefix(path, e)))
}

fn read_windows(path: &Path) -> Result<WindowMultiset, Failure> {
    serde_json::from_str(&read_text(path)?).map_err(|e| Failure::Lib(Error::Parse(format!("{}: {e}", path.display()))))
}

fn prefix(path: &Path, e: Error) -> Error {
    match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        other => other,
    }
}

fn windows_json(ms: &WindowMultiset) -> String {
    serde_json::to_string(&WindowsFile::from(ms.clone())).expect("windows serialize")
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            io::stdout().flush().map_err(|e| Failure::Io(e.to_string()))
        }
    }
}

fn seed() -> Result<u64, Failure> {
    match std::env::var("QUIVERDEG_SEED") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Failure::Lib(Error::Parse(format!("QUIVERDEG_SEED: not an integer: {s:?}")))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, Failure> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        builder = builder.num_threads(j.max(1));
    }
    let pool = builder.build().map_err(|e| Failure::Io(e.to_string()))?;
    Ok(pool.install(f))
}

fn same_quiver(v: &Representation, w: &Representation) -> Result<(), Failure> {
    if v.quiver() == w.quiver() {
        Ok(())
    } else {
        Err(Error::QuiverMismatch.into())
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Hom { v, w } => {
            let (v, w) = (read_rep(&v)?, read_rep(&w)?);
            same_quiver(&v, &w)?;
            println!("{}", hom_dim(&v, &w)?);
        }
        Command::Ext { v, w } => {
            let (v, w) = (read_rep(&v)?, read_rep(&w)?);
            same_quiver(&v, &w)?;
            println!("{}", ext1_dim(&v, &w)?);
        }
        Command::Euler { files, quiver, d, e } => {
            let value = match (files.as_slice(), quiver, d, e) {
                ([a, b], None, None, None) => {
                    let (v, w) = (read_rep(a)?, read_rep(b)?);
                    same_quiver(&v, &w)?;
                    euler_form(v.quiver(), v.dims(), w.dims())?
                }
                ([], Some(q), Some(d), Some(e)) => {
                    let q = read_quiver(&read_text(&q)?).map_err(|err| Failure::Lib(prefix(&q, err)))?;
                    euler_form(&q, &DimVector(d), &DimVector(e))?
                }
                _ => {
                    return Err(Failure::Usage(
                        "euler takes two representation files, or --quiver with --d and --e".into(),
                    ))
                }
            };
            println!("{value}");
        }
        Command::Decompose { rep } => {
            let ms = decompose_nilpotent(&read_rep(&rep)?)?;
            println!("{}", windows_json(&ms));
        }
        Command::Realize { windows } => {
            println!("{}", write_representation(&realize(&read_windows(&windows)?)));
        }
        Command::Degenerates { m, nn, witness } => {
            let (m, nn) = (read_windows(&m)?, read_windows(&nn)?);
            let verdict = degenerates(&m, &nn)?;
            println!("{verdict}");
            if witness && verdict {
                match extension_witness(&m, &nn, seed()?, 16)? {
                    Some((u, v)) => println!("witness: 0 -> {u} -> M -> {v} -> 0"),
                    None => println!("witness: none found"),
                }
            }
        }
        Command::Codim { m, nn } => {
            let (m, nn) = (read_windows(&m)?, read_windows(&nn)?);
            println!("{}", codim(&m, &nn)?);
        }
        Command::Classify { m, nn, trace } => {
            let (m, nn) = (read_windows(&m)?, read_windows(&nn)?);
            let (kind, steps) = classify_seeded(&m, &nn, seed()?)?;
            if let Some(path) = trace {
                let json = serde_json::to_string(&steps).expect("trace serializes");
                write_out(Some(&path), &format!("{json}\n"))?;
            }
            println!("{kind}");
            if let quiverdeg::SingularityType::Unresolved(diag) = &kind {
                eprintln!("{diag}");
            }
        }
        Command::Hasse {
            n,
            dim,
            format,
            annotate,
            output,
            jobs,
        } => {
            let d = DimVector(dim);
            let h = with_jobs(jobs, || hasse(n, &d, annotate))??;
            let text = match format {
                Format::Dot => h.to_dot(),
                Format::Json => format!("{}\n", h.to_json()),
            };
            write_out(output.as_deref(), &text)?;
        }
        Command::Scan {
            max_n,
            max_dim,
            jobs,
            json,
        } => {
            let seed = seed()?;
            let report = with_jobs(jobs, || scan_seeded(max_n, max_dim, seed))??;
            if json {
                println!("{}", serde_json::to_string(&report).expect("report serializes"));
            } else {
                print!("{}", report.render());
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
