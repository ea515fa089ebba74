//! `infcat`: one subcommand per construction or check of the library.
//!
//! Exit status: 0 when the verdict holds or the construction succeeded, 1
//! when the verdict fails (a witness is printed), 2 when the question could
//! not be decided within the given bounds, 3 on bad input.

mod commands;
mod dot;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "infcat", version, about = "Finite models of simplicial sets, quasicategories and their relatives")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::ReportText)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    ReportText,
    Structured,
    Dot,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModeArg {
    Inner,
    Kan,
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum EmbedArg {
    Discrete,
    Constant,
}

#[derive(clap::Args)]
pub struct Dim {
    /// Dimension bound for truncations and horn checks.
    #[arg(long, default_value_t = 3)]
    dim: usize,
}

#[derive(clap::Args)]
pub struct Bisimplicial {
    file: PathBuf,
    /// Horizontal bound.
    #[arg(long, default_value_t = 2)]
    dim: usize,
    /// Vertical bound.
    #[arg(long, default_value_t = 2)]
    vertical_dim: usize,
    /// How a simplicial set or a category without weak arrows is embedded.
    #[arg(long, value_enum, default_value_t = EmbedArg::Discrete)]
    embed: EmbedArg,
}

#[derive(Subcommand)]
pub enum Command {
    /// Horn classification; inner horns unless `--mode` says otherwise.
    CheckQuasicategory {
        file: PathBuf,
        #[command(flatten)]
        dim: Dim,
        #[arg(long, value_enum, default_value_t = ModeArg::Inner)]
        mode: ModeArg,
    },
    /// All horns up to `--dim`.
    CheckKan {
        file: PathBuf,
        #[command(flatten)]
        dim: Dim,
    },
    /// Homotopy category of a quasicategory.
    Ho { file: PathBuf },
    /// Edges invertible in the homotopy category.
    Equivalences { file: PathBuf },
    /// The largest Kan subcomplex spanned by equivalences.
    MaxKan { file: PathBuf },
    /// Left or right mapping space between two vertices.
    HomSpace {
        file: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, value_enum, default_value_t = SideArg::Right)]
        side: SideArg,
        #[command(flatten)]
        dim: Dim,
    },
    /// Path components.
    Pi0 { file: PathBuf },
    /// Fundamental group at a vertex.
    Pi1 {
        file: PathBuf,
        #[arg(long)]
        base: String,
    },
    /// `n`-th homotopy group at a vertex.
    Pin {
        file: PathBuf,
        #[arg(long)]
        base: String,
        #[arg(long)]
        n: usize,
    },
    /// Nerve of a category, truncated at `--dim`.
    Nerve {
        file: PathBuf,
        #[command(flatten)]
        dim: Dim,
    },
    /// One-object category of `Z/n` or `S3`.
    Bg {
        #[arg(long)]
        group: String,
    },
    /// Localization of a category at its weak arrows.
    Localize {
        file: PathBuf,
        #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(u64).range(1..))]
        fuel: u64,
    },
    /// Homotopy-coherent nerve of a simplicial category.
    CoherentNerve {
        file: PathBuf,
        #[command(flatten)]
        dim: Dim,
    },
    /// The simplicial category 𝔠[Δ^n], `n = --dim`.
    FrakC {
        #[command(flatten)]
        dim: Dim,
    },
    /// Normalized chains of the free simplicial module on a simplicial set.
    NormalizedChains {
        file: PathBuf,
        #[command(flatten)]
        dim: Dim,
        #[arg(long, default_value = "Z")]
        ring: String,
    },
    /// Simplicial module of a nonnegatively graded complex.
    DoldKan {
        file: PathBuf,
        #[command(flatten)]
        dim: Dim,
    },
    Homology { file: PathBuf },
    /// Whether a chain map has acyclic mapping cone.
    QuasiIso { file: PathBuf },
    /// Trivial cofibration followed by a fibration.
    #[command(name = "factor-4a")]
    Factor4a { file: PathBuf },
    /// Cofibration followed by a trivial fibration, at most `--fuel` stages.
    #[command(name = "factor-4b")]
    Factor4b {
        file: PathBuf,
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
        fuel: u64,
    },
    LeftFibration { file: PathBuf },
    /// Cocartesian and locally cocartesian arrows of a functor.
    CocartAnalyze { file: PathBuf },
    /// Total category of a split functor to Cat, with its projection.
    GrothendieckBuild { file: PathBuf },
    /// Fibers, transports and comparison maps of a locally cocartesian functor.
    GrothendieckRead { file: PathBuf },
    Join { left: PathBuf, right: PathBuf },
    /// Twisted arrow category with its projection to `C^op × C`.
    TwistedArrows { file: PathBuf },
    /// Rezk nerve of a category with weak arrows.
    RezkNerve {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 2)]
        vertical_dim: usize,
    },
    SegalCheck(Bisimplicial),
    Completeness(Bisimplicial),
    /// Graph of a category, a simplicial set, a functor's analysis or a
    /// bisimplicial set.
    ExportDot { file: PathBuf },
}

/// What a subcommand produced, in every output format it supports.
pub struct Outcome {
    pub status: Status,
    pub text: String,
    pub structured: String,
    pub dot: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Holds,
    Fails,
    Undecided,
}

impl Status {
    fn code(self) -> u8 {
        match self {
            Status::Holds => 0,
            Status::Fails => 1,
            Status::Undecided => 2,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    let outcome = match commands::run(&cli.command) {
        Ok(o) => o,
        Err(e) => return commands::failure(e),
    };
    let body = match cli.format {
        Format::ReportText => outcome.text,
        Format::Structured => outcome.structured,
        Format::Dot => match outcome.dot {
            Some(d) => d,
            None => {
                eprintln!("error: this result has no graph form");
                return ExitCode::from(3);
            }
        },
    };
    let body = if body.ends_with('\n') { body } else { body + "\n" };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, body) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(3);
            }
        }
        None => print!("{body}"),
    }
    ExitCode::from(outcome.status.code())
}
