use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use chring_cli::config::{parse_window, ModuleSpec, Task, TaskConfig, TaskKind};
use chring_cli::{run, ConfigError, Settings, EXIT_CONFIG};

#[derive(Parser)]
#[command(name = "chring", version, about = "Exact verification of change-of-rings identities")]
struct Cli {
    /// Internal degree window LO:HI
    #[arg(long, global = true, default_value = "-40:40", allow_hyphen_values = true)]
    window: String,

    /// Rewrite depth for the diagram engine
    #[arg(long, global = true, default_value_t = 8)]
    depth: usize,

    /// Koszul tower depth
    #[arg(long, global = true, default_value_t = 12)]
    tower_depth: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Catalog file, or `builtin`
    #[arg(long, global = true, default_value = "builtin")]
    catalog: String,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Args, Default)]
struct TaskArgs {
    /// Inclusion `G>H` from the catalog
    #[arg(long)]
    pair: Option<String>,

    /// Group whose cohomology ring the module lives over
    #[arg(long)]
    ring: Option<String>,

    /// `ring`, `field`, `target`, or a module description in JSON
    #[arg(long)]
    module: Option<String>,

    /// Second module for ext and tor
    #[arg(long)]
    other: Option<String>,

    /// Builtin corpus name or path to a corpus file
    #[arg(long)]
    corpus: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Run every task of a config file
    Run { config: PathBuf },
    /// Minimal free resolution of a module
    Resolve(TaskArgs),
    Ext(TaskArgs),
    Tor(TaskArgs),
    /// Gorenstein shift of an inclusion
    Gorenstein(TaskArgs),
    /// Compare Tor over the source with shifted Ext
    ShiftIso(TaskArgs),
    /// Local cohomology at the maximal ideal by both routes
    LocalCohomology(TaskArgs),
    /// Local (co)homology base change along an inclusion
    BaseChange(TaskArgs),
    /// Torsion submodule against H^0
    Torsion(TaskArgs),
    /// Is the target free over the source?
    Freeness(TaskArgs),
    /// Decide the diagrams of a corpus
    MatesVerify(TaskArgs),
    /// Catalog-wide checks and every builtin corpus
    FullSuite,
}

fn module_arg(text: &str, flag: &str) -> Result<ModuleSpec, ConfigError> {
    if text.trim_start().starts_with('{') {
        serde_json::from_str(text).map_err(|e| {
            ConfigError::at(format!("--{flag}, column {}", e.column()), e.to_string())
        })
    } else {
        Ok(ModuleSpec::Keyword(text.to_string()))
    }
}

fn task_from(kind: TaskKind, a: &TaskArgs) -> Result<Task, ConfigError> {
    let mut t = Task::new(kind);
    t.pair = a.pair.clone();
    t.ring = a.ring.clone();
    t.corpus = a.corpus.clone();
    t.module = a.module.as_deref().map(|m| module_arg(m, "module")).transpose()?;
    t.other = a.other.as_deref().map(|m| module_arg(m, "other")).transpose()?;
    Ok(t)
}

fn config_for(cli: &Cli) -> Result<(TaskConfig, PathBuf), ConfigError> {
    let (kind, args) = match &cli.command {
        Command::Run { config } => {
            let text = std::fs::read_to_string(config)
                .map_err(|e| ConfigError::new(format!("cannot read {}: {e}", config.display())))?;
            let parsed = TaskConfig::parse(&text)?;
            let dir = config.parent().unwrap_or(Path::new(".")).to_path_buf();
            return Ok((parsed, dir));
        }
        Command::Resolve(a) => (TaskKind::Resolve, a),
        Command::Ext(a) => (TaskKind::Ext, a),
        Command::Tor(a) => (TaskKind::Tor, a),
        Command::Gorenstein(a) => (TaskKind::Gorenstein, a),
        Command::ShiftIso(a) => (TaskKind::ShiftIso, a),
        Command::LocalCohomology(a) => (TaskKind::LocalCohomology, a),
        Command::BaseChange(a) => (TaskKind::BaseChange, a),
        Command::Torsion(a) => (TaskKind::Torsion, a),
        Command::Freeness(a) => (TaskKind::Freeness, a),
        Command::MatesVerify(a) => (TaskKind::MatesVerify, a),
        Command::FullSuite => (TaskKind::FullSuite, &TaskArgs::default()),
    };
    let mut config = TaskConfig::single(task_from(kind, args)?);
    config.catalog = cli.catalog.clone();
    Ok((config, PathBuf::from(".")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = parse_window(&cli.window)
        .map_err(|e| ConfigError::at("--window", e))
        .and_then(|window| {
            let defaults = Settings {
                window,
                depth: cli.depth,
                tower_depth: cli.tower_depth,
            };
            let (config, dir) = config_for(&cli)?;
            run(&config, &defaults, &dir)
        });
    match outcome {
        Ok(report) => {
            match cli.format {
                Format::Json => println!("{}", report.to_json()),
                Format::Table => print!("{}", report.to_table()),
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(EXIT_CONFIG as u8)
        }
    }
}
