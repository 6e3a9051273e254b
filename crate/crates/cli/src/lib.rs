//! Command-line front end: parses structure files, runs one checker and
//! reports the verdict with a witness.
//!
//! Exit codes: 0 the property holds, 1 it is violated (the report carries a
//! witness), 2 bad input or usage, 3 a resource cap was exceeded.

mod commands;
mod error;
mod load;
mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use fuzzylie::manifold::Tolerances;
use fuzzylie::topology::DEFAULT_CAP;

pub use error::CliError;
pub use report::{render_error, Format, Outcome, Report};

#[derive(Debug, Parser)]
#[command(name = "fuzzylie", version, about = "Witness-producing checkers for fuzzy algebraic and topological structures")]
pub struct Cli {
    #[command(flatten)]
    pub options: Options,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    /// Output style.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    pub format: Format,
    /// Grade lattice resolution q (grades k/q) for topology commands.
    #[arg(long, value_name = "INT", global = true)]
    pub lattice_q: Option<u64>,
    /// Numeric tolerance override, e.g. `eps_deriv=1e-5`. Repeatable.
    #[arg(long = "tolerance", value_name = "NAME=VALUE", global = true)]
    pub tolerances: Vec<String>,
    /// Rescale chart memberships so every sample reaches grade 1.
    #[arg(long, global = true)]
    pub normalize_cover: bool,
    /// Sample file for the Lie commands.
    #[arg(long, value_name = "PATH", global = true)]
    pub samples: Option<PathBuf>,
    /// Largest topology the closure may build.
    #[arg(long, value_name = "INT", global = true)]
    pub cap: Option<usize>,
    /// Re-check every failure witness directly against the definition.
    #[arg(long, global = true)]
    pub audit: bool,
}

impl Options {
    pub fn cap(&self) -> usize {
        self.cap.unwrap_or(DEFAULT_CAP)
    }

    pub fn tolerances(&self) -> Result<Tolerances, CliError> {
        let mut tol = Tolerances::default();
        for item in &self.tolerances {
            let (name, value) = item
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("--tolerance expects NAME=VALUE, got `{item}`")))?;
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("--tolerance {name}: `{value}` is not a number")))?;
            tol.set(name.trim(), value)?;
        }
        Ok(tol)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Is a fuzzy set on a group a fuzzy subgroup?
    CheckSubgroup { group: PathBuf, set: PathBuf },
    /// Is a crisp map between groups a fuzzy homomorphism?
    CheckHomomorphism { source_group: PathBuf, target_group: PathBuf, map: PathBuf },
    /// Does the listed family satisfy the fuzzy topology axioms?
    CheckTopology { topology: PathBuf },
    /// Is every fuzzy point closed in the generated topology?
    CheckT1 { topology: PathBuf },
    /// Are distinct fuzzy points separated by disjoint opens?
    CheckHausdorff { topology: PathBuf },
    /// Continuity, openness and bijectivity of a map between topologies.
    CheckContinuity { map: PathBuf, source: PathBuf, target: PathBuf },
    /// Are multiplication and inversion continuous for the topology?
    CheckTopgroup { group: PathBuf, topology: PathBuf },
    /// Does the table satisfy the action laws?
    CheckAction { action: PathBuf },
    /// Is a fuzzy subset of the space invariant under the action?
    CheckInvariant {
        action: PathBuf,
        set: PathBuf,
        /// Fuzzy subset of the group acting (default: all of the group).
        #[arg(long, value_name = "PATH")]
        nu: Option<PathBuf>,
    },
    /// Restrict an action to a subgroup or to an invariant subset.
    Restrict {
        action: PathBuf,
        /// Subgroup elements, comma separated.
        #[arg(long, value_delimiter = ',', num_args = 1.., conflicts_with = "invariant", required_unless_present = "invariant")]
        subgroup: Vec<String>,
        /// Fuzzy-set file of an invariant subset.
        #[arg(long, value_name = "PATH")]
        invariant: Option<PathBuf>,
    },
    /// The action induced on equivalence classes.
    Quotient { action: PathBuf, relation: PathBuf },
    /// Antisymmetry and Jacobi identity of structure constants.
    CheckLie { constants: PathBuf },
    /// Fuzzy Lie subalgebra conditions on sampled vectors.
    CheckLieSubalgebra { constants: PathBuf, classifier: PathBuf },
    /// Fuzzy Lie ideal conditions on sampled vectors.
    CheckLieIdeal { constants: PathBuf, classifier: PathBuf },
    /// Elements with grade at least t.
    LevelSet { set: PathBuf, t: String },
    /// Cover condition and C1 transitions of an atlas given as chart tables.
    CheckAtlas {
        table: PathBuf,
        /// Second atlas; transitions into it are checked too.
        #[arg(long, value_name = "PATH")]
        against: Option<PathBuf>,
    },
    /// Both built-in circle atlases.
    DemoCircle {
        /// Samples on the circle.
        #[arg(long, default_value_t = fuzzylie::manifold::DEFAULT_CIRCLE_SAMPLES)]
        points: usize,
    },
    /// Numeric smoothness checks on GL(n) and O(n).
    DemoGl {
        /// Single dimension to run (default: 1, 2 and 3).
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// The cross-product algebra: a subalgebra that is not an ideal.
    #[command(name = "demo-example-2-14")]
    DemoExample214,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::CheckSubgroup { .. } => "check-subgroup",
            Command::CheckHomomorphism { .. } => "check-homomorphism",
            Command::CheckTopology { .. } => "check-topology",
            Command::CheckT1 { .. } => "check-t1",
            Command::CheckHausdorff { .. } => "check-hausdorff",
            Command::CheckContinuity { .. } => "check-continuity",
            Command::CheckTopgroup { .. } => "check-topgroup",
            Command::CheckAction { .. } => "check-action",
            Command::CheckInvariant { .. } => "check-invariant",
            Command::Restrict { .. } => "restrict",
            Command::Quotient { .. } => "quotient",
            Command::CheckLie { .. } => "check-lie",
            Command::CheckLieSubalgebra { .. } => "check-lie-subalgebra",
            Command::CheckLieIdeal { .. } => "check-lie-ideal",
            Command::LevelSet { .. } => "level-set",
            Command::CheckAtlas { .. } => "check-atlas",
            Command::DemoCircle { .. } => "demo-circle",
            Command::DemoGl { .. } => "demo-gl",
            Command::DemoExample214 => "demo-example-2-14",
        }
    }
}

/// Runs one command and returns its report.
pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    let o = &cli.options;
    match &cli.command {
        Command::CheckSubgroup { group, set } => commands::groups::check_subgroup(o, group, set),
        Command::CheckHomomorphism { source_group, target_group, map } => {
            commands::groups::check_homomorphism(o, source_group, target_group, map)
        }
        Command::CheckTopology { topology } => commands::topology::check_topology(o, topology),
        Command::CheckT1 { topology } => commands::topology::check_t1(o, topology),
        Command::CheckHausdorff { topology } => commands::topology::check_hausdorff(o, topology),
        Command::CheckContinuity { map, source, target } => commands::topology::check_continuity(o, map, source, target),
        Command::CheckTopgroup { group, topology } => commands::topology::check_topgroup(o, group, topology),
        Command::CheckAction { action } => commands::actions::check_action(o, action),
        Command::CheckInvariant { action, set, nu } => commands::actions::check_invariant(o, action, set, nu.as_deref()),
        Command::Restrict { action, subgroup, invariant } => {
            commands::actions::restrict(o, action, subgroup, invariant.as_deref())
        }
        Command::Quotient { action, relation } => commands::actions::quotient(o, action, relation),
        Command::CheckLie { constants } => commands::lie::check_lie(o, constants),
        Command::CheckLieSubalgebra { constants, classifier } => {
            commands::lie::check_conditions(o, constants, classifier, commands::lie::Kind::Subalgebra)
        }
        Command::CheckLieIdeal { constants, classifier } => {
            commands::lie::check_conditions(o, constants, classifier, commands::lie::Kind::Ideal)
        }
        Command::LevelSet { set, t } => commands::groups::level_set(o, set, t),
        Command::CheckAtlas { table, against } => commands::manifold::check_atlas(o, table, against.as_deref()),
        Command::DemoCircle { points } => commands::manifold::demo_circle(o, *points),
        Command::DemoGl { dim, count, seed } => commands::manifold::demo_gl(o, *dim, *count, *seed),
        Command::DemoExample214 => commands::lie::demo_example(o),
    }
}

/// What a finished invocation prints and returns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invocation {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parses arguments and executes, never panicking on bad input.
pub fn run<I, T>(args: I) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Invocation { stdout: text, stderr: String::new(), code }
            } else {
                Invocation { stdout: String::new(), stderr: text, code }
            };
        }
    };
    match execute(&cli) {
        Ok(report) => Invocation {
            stdout: report.render(cli.options.format),
            stderr: String::new(),
            code: report.exit_code(),
        },
        Err(e) => {
            let code = e.exit_code();
            let message = e.to_string();
            match cli.options.format {
                Format::Machine => Invocation {
                    stdout: render_error(cli.command.name(), &message, code),
                    stderr: format!("error: {message}\n"),
                    code,
                },
                Format::Human => Invocation { stdout: String::new(), stderr: format!("error: {message}\n"), code },
            }
        }
    }
}
