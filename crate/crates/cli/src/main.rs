use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use pseudolines::analysis::analyze;
use pseudolines::complex::CellComplex;
use pseudolines::enumerate::{enumerate_simple, Filter};
use pseudolines::error::NecklaceError;
use pseudolines::lines::LineArrangement;
use pseudolines::necklace::{build_arrangement, enumerate_selfdual, q_formula, SelfDualNecklace};
use pseudolines::realize::{realize_im, realizes};
use pseudolines::render::{render_diagram, render_lines};
use pseudolines::verify::verify_n;
use pseudolines::wiring::WiringDiagram;

/// Simple Euclidean pseudoline arrangements.
#[derive(Debug, Parser)]
#[command(name = "pseudolines", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Face census, criticality and Im membership of a wiring diagram.
    Analyze {
        /// Wiring diagram file, `-` for stdin.
        file: PathBuf,
    },
    /// List the wiring diagrams with `n` wires.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        filter: Option<FilterArg>,
        /// One representative per isomorphism class.
        #[arg(long)]
        dedup: bool,
        /// Print only the number of diagrams.
        #[arg(long)]
        count_only: bool,
        #[command(flatten)]
        jobs: Jobs,
    },
    /// Self-dual necklaces and the arrangements built from them.
    Necklace(NecklaceArgs),
    /// Stretch an Im diagram into straight lines.
    Realize {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// SVG drawing of a wiring diagram or of a JSON line arrangement.
    Render { file: PathBuf },
    /// Run every invariant suite over all diagrams with `n` wires.
    Verify {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        jobs: Jobs,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FilterArg {
    OneGe5,
    Im,
}

#[derive(Debug, Args)]
struct Jobs {
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Debug, Args)]
#[group(skip)]
#[command(group(ArgGroup::new("mode").required(true).args(["count", "list", "build"])))]
struct NecklaceArgs {
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    count: bool,
    #[arg(long)]
    list: bool,
    #[arg(long, value_name = "BITSTRING")]
    build: Option<String>,
}

/// Failure of a command: `Usage` exits with 2, `Failed` with 1.
enum Failure {
    Usage(String),
    Failed(String),
}

type Outcome = Result<(), Failure>;

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

fn read_input(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(usage)?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn read_diagram(path: &PathBuf) -> Result<WiringDiagram, Failure> {
    read_input(path)?.parse().map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn set_jobs(jobs: &Jobs) -> Outcome {
    if let Some(k) = jobs.jobs {
        if k == 0 {
            return Err(usage("--jobs must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new().num_threads(k).build_global().map_err(usage)?;
    }
    Ok(())
}

fn run(cli: Cli, out: &mut impl Write) -> io::Result<Outcome> {
    match cli.command {
        Command::Analyze { file } => {
            let d = match read_diagram(&file) {
                Ok(d) => d,
                Err(e) => return Ok(Err(e)),
            };
            let report = analyze(&d);
            writeln!(out, "{}", report.to_json())?;
            if report.pass == Some(false) {
                return Ok(Err(Failure::Failed("the counting identities fail".into())));
            }
        }
        Command::Enumerate { n, filter, dedup, count_only, jobs } => {
            if let Err(e) = set_jobs(&jobs) {
                return Ok(Err(e));
            }
            let filter = filter.map(|f| match f {
                FilterArg::OneGe5 => Filter::OneGe5,
                FilterArg::Im => Filter::Im,
            });
            let stream = match enumerate_simple(n, filter, dedup) {
                Ok(s) => s,
                Err(e) => return Ok(Err(usage(e))),
            };
            if count_only {
                writeln!(out, "{}", stream.count())?;
            } else if dedup || filter.is_some() {
                for d in stream.diagrams() {
                    write_swaps(out, &d)?;
                }
            } else {
                for d in stream.iter() {
                    write_swaps(out, &d)?;
                }
            }
        }
        Command::Necklace(args) => return necklace(args, out),
        Command::Realize { file, seed } => {
            let d = match read_diagram(&file) {
                Ok(d) => d,
                Err(e) => return Ok(Err(e)),
            };
            let r = match realize_im(&d, seed) {
                Ok(r) => r,
                Err(e) => return Ok(Err(Failure::Failed(e.to_string()))),
            };
            writeln!(out, "{}", r.lines.to_json())?;
            if !realizes(&d, &r.lines) {
                return Ok(Err(Failure::Failed("the lines do not reproduce the diagram".into())));
            }
        }
        Command::Render { file } => {
            let text = match read_input(&file) {
                Ok(t) => t,
                Err(e) => return Ok(Err(e)),
            };
            let svg = if text.trim_start().starts_with('[') {
                match LineArrangement::from_json(&text) {
                    Ok(la) => render_lines(&la),
                    Err(e) => return Ok(Err(usage(format!("{}: {e}", file.display())))),
                }
            } else {
                match text.parse::<WiringDiagram>() {
                    Ok(d) => render_diagram(&CellComplex::build(&d)),
                    Err(e) => return Ok(Err(usage(format!("{}: {e}", file.display())))),
                }
            };
            out.write_all(svg.as_bytes())?;
        }
        Command::Verify { n, jobs } => {
            if let Err(e) = set_jobs(&jobs) {
                return Ok(Err(e));
            }
            let report = match verify_n(n) {
                Ok(r) => r,
                Err(e) => return Ok(Err(usage(e))),
            };
            write!(out, "{}", report.table())?;
            if let Some(s) = report.first_failure() {
                let json = serde_json::to_string(s).expect("serializable");
                return Ok(Err(Failure::Failed(format!("counterexample: {json}"))));
            }
        }
    }
    Ok(Ok(()))
}

fn write_swaps(out: &mut impl Write, d: &WiringDiagram) -> io::Result<()> {
    let words: Vec<String> = d.tracks_one_based().iter().map(usize::to_string).collect();
    writeln!(out, "{}", words.join(" "))
}

fn necklace(args: NecklaceArgs, out: &mut impl Write) -> io::Result<Outcome> {
    if let Some(bits) = args.build {
        let c: SelfDualNecklace = match bits.parse() {
            Ok(c) => c,
            Err(e) => return Ok(Err(usage(e))),
        };
        if args.m.is_some_and(|m| m != c.m()) {
            return Ok(Err(usage(format!("`{bits}` has {} beads, expected 2m = {}", 2 * c.m(), 2 * args.m.unwrap()))));
        }
        return Ok(match build_arrangement(&c) {
            Ok((la, d)) => {
                writeln!(out, "{}", la.to_json())?;
                write!(out, "{d}")?;
                Ok(())
            }
            Err(e @ NecklaceError::TooSmall(_)) => Err(usage(e)),
            Err(e) => Err(Failure::Failed(e.to_string())),
        });
    }
    let Some(m) = args.m else {
        return Ok(Err(usage("--count and --list need --m")));
    };
    if m == 0 || m > 24 {
        return Ok(Err(usage(format!("--m must lie in 1..=24, got {m}"))));
    }
    let list = enumerate_selfdual(m);
    if args.count {
        if q_formula(m as u64) != list.len().into() {
            return Ok(Err(Failure::Failed(format!("the closed formula disagrees with the {} listed necklaces", list.len()))));
        }
        writeln!(out, "{}", list.len())?;
    } else {
        for c in list {
            writeln!(out, "{c}")?;
        }
    }
    Ok(Ok(()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let outcome = run(cli, &mut out);
    let flushed = out.flush();
    match (outcome, flushed) {
        (Ok(Ok(())), Ok(())) => ExitCode::SUCCESS,
        (Ok(Err(Failure::Usage(msg))), _) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        (Ok(Err(Failure::Failed(msg))), _) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        (Err(e), _) | (_, Err(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        (Err(e), _) | (_, Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
