//! Command-line front end for `hocat`.
//!
//! [`run`] parses arguments, reads the input files, dispatches to the
//! library and renders the report. Exit codes: 0 when a verdict was
//! computed (negative verdicts included), 1 for usage and input errors, 2
//! when a resource cap was hit or some verdict is Unknown.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

mod commands;
pub mod report;

pub use report::{Format, Record, Report};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Input { path: String, source: hocat::Error },
    #[error("{0}")]
    Library(#[from] hocat::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input { source: hocat::Error::Resource { .. }, .. } | CliError::Library(hocat::Error::Resource { .. }) => 2,
            _ => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "hocat", version, about = "Finite models of homotopy theories")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

/// A category or simplicial set file, with the dimension cap used for
/// nerves.
#[derive(Debug, Args)]
pub struct SetInput {
    pub file: PathBuf,
    #[arg(long, default_value_t = 3)]
    pub dim: usize,
}

/// A category or bisimplicial set file. Categories become classifying
/// diagrams with horizontal cap `--dim` and vertical cap `--bound`.
#[derive(Debug, Args)]
pub struct SpaceInput {
    pub file: PathBuf,
    #[arg(long, default_value_t = 3)]
    pub dim: usize,
    #[arg(long, default_value_t = 1)]
    pub bound: usize,
}

/// A category with a class of morphisms `S`: `all`, `iso`, `id` or a comma
/// separated list of morphism names.
#[derive(Debug, Args)]
pub struct ClassInput {
    pub file: PathBuf,
    #[arg(long = "class", default_value = "id")]
    pub class: String,
}

#[derive(Debug, Args)]
pub struct Pair {
    #[arg(long)]
    pub from: Option<String>,
    #[arg(long)]
    pub to: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Nerve of a category and its reconstruction round trip.
    Nerve {
        #[command(flatten)]
        input: SetInput,
        #[arg(long)]
        emit: bool,
    },
    /// Horn filling for all horns up to `--dim`.
    CheckKan {
        #[command(flatten)]
        input: SetInput,
        #[arg(long)]
        table: bool,
    },
    /// Inner horn filling, inner uniqueness and full horn filling.
    CheckQuasicat {
        #[command(flatten)]
        input: SetInput,
        #[arg(long)]
        table: bool,
    },
    /// Recognizes nerves of groupoids and of categories.
    ClassifyNerve {
        #[command(flatten)]
        input: SetInput,
        #[arg(long)]
        emit: bool,
    },
    /// Level sizes and components of the classifying diagram.
    ClassifyingDiagram {
        #[command(flatten)]
        input: SpaceInput,
        #[arg(long)]
        emit: bool,
    },
    /// Segal maps, homotopy category, homotopy equivalences and mapping spaces.
    SegalCheck {
        #[command(flatten)]
        input: SpaceInput,
    },
    /// Completeness of a Segal space.
    CompleteCheck {
        #[command(flatten)]
        input: SpaceInput,
    },
    /// Dwyer-Kan check for a functor bundle (source, target, functor).
    DkCheck {
        #[command(flatten)]
        input: SpaceInput,
    },
    /// Discretization to a Segal precategory.
    Discretize {
        #[command(flatten)]
        input: SpaceInput,
        #[arg(long)]
        emit: bool,
    },
    /// Components and integral homology below the cap.
    Homology {
        #[command(flatten)]
        input: SetInput,
    },
    /// Coherent nerve of a simplicial category (or of an enriched category).
    CoherentNerve {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// How a plain category file is enriched.
        #[arg(long, value_enum, default_value = "discrete")]
        enrichment: commands::Enrichment,
        #[arg(long)]
        emit: bool,
    },
    /// Bounded zig-zag localization hom-sets.
    Localize {
        #[command(flatten)]
        input: ClassInput,
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value_t = 4)]
        word_cap: usize,
    },
    /// Components of hammock mapping spaces.
    Hammock {
        #[command(flatten)]
        input: ClassInput,
        #[command(flatten)]
        pair: Pair,
    },
    /// Closure and the two Ore conditions.
    OreCheck {
        #[command(flatten)]
        input: ClassInput,
    },
    /// Morphisms of Θ_n between two objects, optionally composed with a third.
    ThetaHom {
        source: String,
        target: String,
        #[arg(long)]
        then: Option<String>,
        #[arg(long)]
        emit: bool,
    },
    /// One Hall product (`--dims X Y`) or the product table up to `--bound`.
    HallProduct {
        file: PathBuf,
        #[arg(long)]
        q: usize,
        #[arg(long, num_args = 1..)]
        dims: Vec<usize>,
        /// Class indices within the two dimension vectors.
        #[arg(long, num_args = 2, default_values_t = [0, 0])]
        index: Vec<usize>,
        #[arg(long, num_args = 1..)]
        bound: Vec<usize>,
    },
    /// Associativity of the Hall algebra up to `--bound`.
    HallAssoc {
        file: PathBuf,
        #[arg(long)]
        q: usize,
        #[arg(long, num_args = 1.., required = true)]
        bound: Vec<usize>,
    },
    /// Derived Hall numbers and products of graded vector spaces
    /// written `d@k+d@k`.
    DerivedHall {
        objects: Vec<String>,
        #[arg(long)]
        q: usize,
        #[arg(long, num_args = 2, allow_negative_numbers = true, default_values_t = [0, 0])]
        window: Vec<i64>,
        /// Check associativity on all objects of total dimension at most `--bound`.
        #[arg(long)]
        assoc: bool,
        #[arg(long, default_value_t = 2)]
        bound: usize,
    },
}

/// Library operations and the subcommand that exposes each.
pub const OPERATIONS: &[(&str, &str)] = &[
    ("nerve", "nerve"),
    ("reconstruct_category", "nerve"),
    ("nerve_comparison", "nerve"),
    ("is_kan", "check-kan"),
    ("is_quasicategory", "check-quasicat"),
    ("is_nerve_of_groupoid", "classify-nerve"),
    ("is_nerve_of_category", "classify-nerve"),
    ("classifying_diagram", "classifying-diagram"),
    ("segal_check", "segal-check"),
    ("homotopy_category", "segal-check"),
    ("heq", "segal-check"),
    ("mapping_space", "segal-check"),
    ("completeness_check", "complete-check"),
    ("check_equivalence", "dk-check"),
    ("classifying_diagram_map", "dk-check"),
    ("dk_check", "dk-check"),
    ("dk_check_enriched", "dk-check"),
    ("discretize", "discretize"),
    ("is_segal_precategory", "discretize"),
    ("homology", "homology"),
    ("pi0", "homology"),
    ("cdelta", "coherent-nerve"),
    ("coherent_nerve", "coherent-nerve"),
    ("pi0_category", "coherent-nerve"),
    ("gz_localize_hom", "localize"),
    ("hammock_mapping_space", "hammock"),
    ("ore_check", "ore-check"),
    ("theta_hom", "theta-hom"),
    ("theta_compose", "theta-hom"),
    ("enumerate_reps", "hall-product"),
    ("hall_number", "hall-product"),
    ("hall_product", "hall-product"),
    ("hall_associativity", "hall-assoc"),
    ("derived_hall_number", "derived-hall"),
    ("derived_hall_product", "derived-hall"),
    ("derived_associativity", "derived-hall"),
];

/// Output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match commands::dispatch(&cli.command) {
        Ok(report) => Outcome { code: report.exit_code(), stdout: report.render(cli.format), stderr: String::new() },
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}
