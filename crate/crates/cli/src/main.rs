use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use isospectral::apps::{LaplacianKind, Strategy};
use isospectral::graph::WeightedDigraph;
use isospectral::regions::RegionFamily;
use isospectral_cli::commands::{self, Output, ReducePlan};
use isospectral_cli::format::GraphFile;
use isospectral_cli::CliError;

/// Isospectral graph reductions and eigenvalue inclusion regions.
///
/// Vertex labels on the command line and in output are 1-based. Exit status
/// is 0 on success, 1 on I/O failure, 2 on invalid input and 3 when a
/// numerical method fails to converge.
#[derive(Parser)]
#[command(name = "isospec", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a graph file and print its canonical form.
    Validate { file: PathBuf },
    /// Reduce a graph onto a structural set.
    Reduce {
        file: PathBuf,
        /// Vertices to keep, e.g. 1,2,3. Repeat for a nested sequence.
        #[arg(long, value_name = "LIST", required_unless_present = "eliminate", conflicts_with = "eliminate")]
        keep: Vec<String>,
        /// Vertices to remove one at a time, in this order.
        #[arg(long, value_name = "LIST")]
        eliminate: Option<String>,
        /// Reach each kept set by single-vertex eliminations.
        #[arg(long, requires = "keep")]
        sequence: bool,
        /// Also write the reduced graph alone to this file.
        #[arg(long, value_name = "PATH")]
        graph_out: Option<PathBuf>,
    },
    /// Eigenvalues with multiplicities.
    Spectrum {
        file: PathBuf,
        /// Root clustering tolerance.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Rasterize an inclusion region.
    Region {
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: Kind,
        /// re_min,re_max,im_min,im_max; defaults to the Gershgorin-type bounding box.
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        /// Grid size, NX or NXxNY.
        #[arg(long, default_value = "200")]
        res: String,
        /// Write the raster here instead of stdout.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Bound the spectral radius through successive reductions.
    Rho {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        levels: usize,
        #[arg(long)]
        json: bool,
    },
    /// Laplacian of a graph, as a graph file.
    Laplacian {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = LapKind::Combinatorial)]
        kind: LapKind,
    },
    /// Rank candidate structural sets.
    Suggest {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Strat::ExposedBoundary)]
        strategy: Strat,
        #[arg(long, default_value_t = 10)]
        limit: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Gershgorin,
    Brauer,
    Brualdi,
}

#[derive(Clone, Copy, ValueEnum)]
enum LapKind {
    Combinatorial,
    Normalized,
    Generalized,
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum Strat {
    LooplessFirst,
    ExposedBoundary,
    ExhaustiveSmall,
}

fn read_text(path: &Path) -> Result<String, CliError> {
    let io = |source| CliError::Io {
        path: path.display().to_string(),
        source,
    };
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io)
    }
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn load(path: &Path) -> Result<WeightedDigraph, CliError> {
    let text = read_text(path)?;
    let loaded = GraphFile::parse(&text)
        .and_then(|f| f.to_graph())
        .map_err(|e| match e {
            CliError::Invalid(m) => CliError::Invalid(format!("{}: {m}", path.display())),
            other => other,
        })?;
    for w in &loaded.warnings {
        eprintln!("warning: {w}");
    }
    Ok(loaded.graph)
}

fn run(cli: Cli) -> Result<Output, CliError> {
    match cli.command {
        Command::Validate { file } => {
            let text = read_text(&file)?;
            commands::validate(&GraphFile::parse(&text)?)
        }
        Command::Reduce {
            file,
            keep,
            eliminate,
            sequence,
            graph_out,
        } => {
            let g = load(&file)?;
            let plan = match eliminate {
                Some(list) => ReducePlan::Eliminate(commands::parse_labels(&list)?),
                None => {
                    let keeps = keep.iter().map(|k| commands::parse_labels(k)).collect::<Result<Vec<_>, _>>()?;
                    if sequence {
                        ReducePlan::Sequence(keeps)
                    } else {
                        ReducePlan::Keep(keeps)
                    }
                }
            };
            let (out, graph) = commands::reduce(&g, &plan)?;
            if let Some(p) = graph_out {
                write_text(&p, &graph.to_json())?;
            }
            Ok(out)
        }
        Command::Spectrum { file, tol, json } => commands::spectrum_cmd(&load(&file)?, tol, json),
        Command::Region {
            file,
            kind,
            window,
            res,
            out,
        } => {
            let g = load(&file)?;
            let family = match kind {
                Kind::Gershgorin => RegionFamily::Gershgorin,
                Kind::Brauer => RegionFamily::Brauer,
                Kind::Brualdi => RegionFamily::Brualdi,
            };
            let window = window.as_deref().map(commands::parse_window).transpose()?;
            let (_, mut output) = commands::region(&g, family, window, commands::parse_resolution(&res)?)?;
            if let Some(p) = out {
                write_text(&p, &output.stdout)?;
                output.stdout.clear();
            }
            Ok(output)
        }
        Command::Rho { file, levels, json } => commands::rho(&load(&file)?, levels, json),
        Command::Laplacian { file, kind } => {
            let kind = match kind {
                LapKind::Combinatorial => LaplacianKind::Combinatorial,
                LapKind::Normalized => LaplacianKind::Normalized,
                LapKind::Generalized => LaplacianKind::Generalized,
            };
            commands::laplacian_cmd(&load(&file)?, kind)
        }
        Command::Suggest {
            file,
            strategy,
            limit,
            json,
        } => {
            let strategy = match strategy {
                Strat::LooplessFirst => Strategy::LooplessFirst,
                Strat::ExposedBoundary => Strategy::ExposedBoundary,
                Strat::ExhaustiveSmall => Strategy::ExhaustiveSmall,
            };
            commands::suggest(&load(&file)?, strategy, limit, json)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{}", out.stdout);
            for n in &out.notes {
                eprintln!("{n}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
