use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use htl_core::builders::{build, build_oriented};
use htl_core::io::{analyze_export, emit_htl, parse_graph, parse_htl, render_svg};
use htl_core::search::{
    double_hamiltonian, search_labelings, walk_to_labeling, SearchBudget, SearchStatus,
    DEFAULT_MAX_SLOTS,
};
use htl_core::surface::{double_cover, dual, glue};
use htl_core::{verify, Error, Labeling, SizeBound};

/// Proper labelings of polygon families and the hyperbolic surfaces they glue into.
#[derive(Parser)]
#[command(name = "htl", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Htl,
    Json,
    Svg,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Input {
    /// HTL document; `-` reads stdin.
    #[arg(default_value = "-")]
    file: String,
}

#[derive(Subcommand)]
enum Command {
    /// Minimal proper labeling of N(k) k-gons.
    Build {
        #[arg(long)]
        k: u32,
        /// Build the oriented variant.
        #[arg(long)]
        oriented: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Oriented proper labeling of k-gons with the largest possible χ.
    BuildOriented {
        #[arg(long)]
        k: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Checks conditions (i)-(v); exits 1 when one fails.
    Verify {
        #[command(flatten)]
        input: Input,
        /// Also require an oriented labeling.
        #[arg(long)]
        oriented: bool,
        /// Smallest admissible polygon size.
        #[arg(long, default_value_t = 7)]
        min_size: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Topology, areas and minimality as JSON.
    Analyze {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
    /// Exhaustive search for proper labelings of n k-gons.
    Search {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        oriented: bool,
        /// Stop after this many labelings.
        #[arg(long)]
        limit: Option<usize>,
        /// Largest n·k searched.
        #[arg(long, default_value_t = DEFAULT_MAX_SLOTS)]
        budget: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Orientation double cover of a non-orientable labeling.
    DoubleCover {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
    /// Dual triangle tiling as JSON.
    Dual {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
    /// Double Hamiltonian walk of a cubic graph given as an edge list.
    Hamilton {
        #[command(flatten)]
        input: Input,
        /// Traverse each edge once in each direction.
        #[arg(long)]
        oriented: bool,
        #[command(flatten)]
        output: Output,
    },
    /// SVG schematic of a labeling.
    Render {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
}

enum Failure {
    Verification(String),
    Core(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Verification(_) | Failure::Core(Error::NotProper(_)) => 1,
            Failure::Core(Error::SearchIncomplete(_) | Error::ConstructionIncomplete { .. }) => 3,
            _ => 2,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Verification(m) | Failure::Io(m) => m.clone(),
            Failure::Core(e) => e.to_string(),
        }
    }
}

type CliResult = Result<(), Failure>;

fn read_input(input: &Input) -> Result<String, Failure> {
    if input.file == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Io(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(&input.file).map_err(|e| Failure::Io(format!("{}: {e}", input.file)))
    }
}

fn read_labeling(input: &Input) -> Result<Labeling, Failure> {
    Ok(parse_htl(&read_input(input)?)?)
}

fn write_output(output: &Output, text: &str) -> CliResult {
    match &output.out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("value serializes");
    s.push('\n');
    s
}

fn emit_labeling(output: &Output, labeling: &Labeling) -> CliResult {
    let text = match output.format.unwrap_or(Format::Htl) {
        Format::Htl => emit_htl(labeling),
        Format::Json => json(labeling),
        Format::Svg => render_svg(labeling)?,
    };
    write_output(output, &text)
}

fn json_only(output: &Output) -> CliResult {
    match output.format {
        None | Some(Format::Json) => Ok(()),
        Some(_) => Err(Failure::Io("this command only writes json".into())),
    }
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Build {
            k,
            oriented,
            output,
        } => {
            let l = if oriented {
                build_oriented(k)?
            } else {
                build(k)?
            };
            emit_labeling(&output, &l)
        }
        Command::BuildOriented { k, output } => emit_labeling(&output, &build_oriented(k)?),
        Command::Verify {
            input,
            oriented,
            min_size,
            output,
        } => {
            let l = read_labeling(&input)?;
            let bound = if min_size == 7 {
                SizeBound::Strict
            } else {
                SizeBound::Relaxed(min_size)
            };
            let report = verify(&l, bound);
            let text = match output.format {
                Some(Format::Json) => json(&report),
                Some(Format::Svg) => return Err(Failure::Io("verify writes text or json".into())),
                _ => {
                    let mut s = String::new();
                    for (c, ok) in &report.verdicts {
                        s += &format!("{:<12} {}\n", c.id(), if *ok { "ok" } else { "FAILED" });
                    }
                    for v in &report.violations {
                        s += &format!("  {v}\n");
                    }
                    s += &format!("proper: {}\n", report.proper);
                    if report.proper {
                        s += &format!("oriented: {}\n", report.oriented);
                    }
                    s
                }
            };
            write_output(&output, &text)?;
            if !report.proper {
                Err(Failure::Verification("labeling is not proper".into()))
            } else if oriented && !report.oriented {
                Err(Failure::Verification("labeling is not oriented".into()))
            } else {
                Ok(())
            }
        }
        Command::Analyze { input, output } => {
            json_only(&output)?;
            let l = read_labeling(&input)?;
            let mut text = analyze_export(&l)?;
            text.push('\n');
            write_output(&output, &text)?;
            if verify(&l, SizeBound::Strict).proper {
                Ok(())
            } else {
                Err(Failure::Verification("labeling is not proper".into()))
            }
        }
        Command::Search {
            k,
            n,
            oriented,
            limit,
            budget,
            output,
        } => {
            let budget = SearchBudget {
                max_slots: budget,
                ..SearchBudget::default()
            };
            let outcome = search_labelings(k, n, oriented, limit, budget)?;
            let text = match output.format.unwrap_or(Format::Htl) {
                Format::Json => json(&outcome),
                Format::Htl => {
                    let status = match outcome.status {
                        SearchStatus::Exhausted => "exhausted",
                        SearchStatus::Divisibility => "none: 6 does not divide n·k",
                        SearchStatus::LimitReached => "limit reached",
                    };
                    let mut s = format!("# {} labeling(s), {status}\n", outcome.labelings.len());
                    for l in &outcome.labelings {
                        s += &emit_htl(l);
                    }
                    s
                }
                Format::Svg => return Err(Failure::Io("search writes htl or json".into())),
            };
            write_output(&output, &text)
        }
        Command::DoubleCover { input, output } => {
            emit_labeling(&output, &double_cover(&read_labeling(&input)?)?)
        }
        Command::Dual { input, output } => {
            json_only(&output)?;
            let l = read_labeling(&input)?;
            let tiling = dual(&glue(&l)?, &l)?;
            write_output(&output, &json(&tiling))
        }
        Command::Hamilton {
            input,
            oriented,
            output,
        } => {
            let graph = parse_graph(&read_input(&input)?)?;
            let Some(walk) = double_hamiltonian(&graph, oriented) else {
                return Err(Failure::Verification("no double walk exists".into()));
            };
            let labeling = if graph.has_parallel_edges() {
                None
            } else {
                Some(walk_to_labeling(&graph, &walk)?)
            };
            match (output.format.unwrap_or(Format::Json), &labeling) {
                (Format::Json, _) => {
                    #[derive(Serialize)]
                    struct Report<'a> {
                        vertices: Vec<usize>,
                        labeling: Option<&'a Labeling>,
                    }
                    let report = Report {
                        vertices: walk.vertices.iter().map(|v| v + 1).collect(),
                        labeling: labeling.as_ref(),
                    };
                    write_output(&output, &json(&report))
                }
                (_, Some(l)) => emit_labeling(&output, l),
                (_, None) => Err(Failure::Io("walk has no labeling on a multigraph".into())),
            }
        }
        Command::Render { input, output } => {
            let l = read_labeling(&input)?;
            match output.format {
                None | Some(Format::Svg) => write_output(&output, &render_svg(&l)?),
                Some(_) => Err(Failure::Io("render writes svg".into())),
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("htl: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}
