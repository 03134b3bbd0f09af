//! Command-line front end. `run` parses arguments, loads inputs through a
//! [`Source`], runs one operation and renders a deterministic report.
//!
//! Exit codes: 0 pass, 1 checker failure or operation error, 2 input error.

mod commands;
mod report;
pub mod selftest;

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};

pub use report::Report;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Human,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "topokit", version, about = "Batch checks on simplicial complexes, flows, colorings, Thompson groups and Stein-Farley complexes")]
pub struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Input {
    /// Input document.
    #[arg(long, short)]
    pub input: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduced and unreduced integer homology.
    Homology(Input),
    /// Homological connectivity and a fundamental group certificate.
    Hconn(Input),
    /// Weakly Cohen-Macaulay test of dimension n.
    WcmCheck {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_negative_numbers = true)]
        n: i32,
    },
    /// The subcomplex X_m of the barycentric subdivision.
    Xm {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_negative_numbers = true)]
        m: i32,
    },
    /// X wCM of dimension n implies X_m is (n-m)-connected.
    TeoMCheck {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_negative_numbers = true)]
        n: i32,
        #[arg(long)]
        m: i32,
    },
    /// Fibers n-connected implies source and target agree on n-connectivity.
    FiberCheck {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_negative_numbers = true)]
        n: i32,
    },
    /// Contractible fibers of p_m: X_m -> Y_m give a homology isomorphism.
    Fiber2Check {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        m: i32,
    },
    /// Good links above threshold give an isomorphism in degrees <= m.
    BadsimplexCheck {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        m: i32,
    },
    /// Classifies a map as a (complete) join complex.
    JoinCheck(Input),
    /// Complete join over a wCM target: wCM source and connectivity transfer.
    Join2Check {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_negative_numbers = true)]
        n: i32,
    },
    /// Validates the three flow hypotheses.
    FlowCheck {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = crate::flow::DEFAULT_K_MAX)]
        k_max: usize,
    },
    /// Runs the flow from every simplex and compares homology of X and Y.
    FlowRun {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = crate::flow::DEFAULT_K_MAX)]
        k_max: usize,
    },
    /// Extends a labeled k-sphere to a labeled (k+1)-disk.
    ColoringExtend {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_negative_numbers = true)]
        k: i32,
        /// Interior label set, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        labels: Vec<u32>,
    },
    /// Checks a labeled disk against its boundary sphere.
    ColoringVerify {
        #[arg(long)]
        sphere: String,
        #[arg(long)]
        disk: String,
        #[arg(long, allow_negative_numbers = true)]
        k: i32,
        #[arg(long, value_delimiter = ',', required = true)]
        labels: Vec<u32>,
    },
    /// Tree-pair arithmetic in V_{d,r}.
    #[command(subcommand)]
    Thompson(ThompsonCommand),
    /// Stein-Farley truncations.
    #[command(subcommand)]
    SteinFarley(SfCommand),
    /// Runs the fixture battery.
    Selftest {
        /// Directory of fixture documents; the bundled battery if omitted.
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum ThompsonCommand {
    /// a ∘ b (b first).
    Compose {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Inverse of a tree pair.
    Inverse {
        #[arg(long)]
        a: String,
    },
    /// Reduces a possibly unreduced diagram.
    Reduce {
        #[arg(long)]
        a: String,
    },
    /// Image of an address `root:word`.
    Act {
        #[arg(long)]
        a: String,
        #[arg(long)]
        address: String,
    },
}

#[derive(Debug, Args)]
pub struct SfParams {
    #[arg(long)]
    pub d: u32,
    #[arg(long)]
    pub r: u32,
    #[arg(long)]
    pub max_height: u32,
    /// `standard` (the named generators of V_{2,1}) or a gens document.
    #[arg(long)]
    pub gens: Option<String>,
    /// Keep only generators with at most this many carets.
    #[arg(long)]
    pub max_gen_carets: Option<usize>,
    #[arg(long, default_value_t = crate::stein_farley::DEFAULT_MAX_VERTICES)]
    pub cap: usize,
    #[arg(long, default_value_t = 1)]
    pub rounds: usize,
}

#[derive(Debug, Subcommand)]
pub enum SfCommand {
    /// Builds a truncation and reports cells, homology and orbit census.
    Build {
        #[command(flatten)]
        params: SfParams,
        /// List every vertex and cube.
        #[arg(long)]
        cells: bool,
    },
    /// Descending link of one vertex of the truncation.
    Desclink {
        #[command(flatten)]
        params: SfParams,
        /// Vertex index in the truncation.
        #[arg(long)]
        vertex: usize,
    },
}

/// Where named inputs come from.
pub trait Source {
    fn read(&self, name: &str) -> Result<String>;
}

/// Reads inputs as file paths.
pub struct FsSource;

impl Source for FsSource {
    fn read(&self, name: &str) -> Result<String> {
        std::fs::read_to_string(name).map_err(|e| Error::InvalidArgument(format!("cannot read {name}: {e}")))
    }
}

/// Inputs held in memory, keyed by name.
pub struct MapSource(pub BTreeMap<String, String>);

impl Source for MapSource {
    fn read(&self, name: &str) -> Result<String> {
        self.0
            .get(name)
            .cloned()
            .ok_or_else(|| Error::InvalidArgument(format!("no input named {name}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub exit: i32,
    pub text: String,
    pub output: Option<PathBuf>,
}

/// Parses `args` (without the program name) and runs the command.
pub fn run<S: AsRef<str>>(args: &[S], src: &dyn Source) -> Outcome {
    let argv = std::iter::once("topokit").chain(args.iter().map(AsRef::as_ref));
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let exit = if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
            return Outcome {
                exit,
                text: e.to_string(),
                output: None,
            };
        }
    };
    let format = cli.format;
    let output = cli.output.clone();
    let (exit, text) = match commands::dispatch(&cli.command, src) {
        Ok(report) => (report.exit_code(), report.render(format)),
        Err(Failure::Input(e)) => (EXIT_INPUT, Report::error("input error", &e).render(format)),
        Err(Failure::Operation(e)) => (EXIT_FAIL, Report::error("operation error", &e).render(format)),
    };
    Outcome { exit, text, output }
}

/// Errors split by phase: loading inputs (exit 2) or running (exit 1).
#[derive(Debug)]
enum Failure {
    Input(Error),
    Operation(Error),
}
