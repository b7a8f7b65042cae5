//! Task orchestration and reports for the `chring` command.

pub mod config;
pub mod report;
pub mod tasks;

use std::path::Path;
use std::time::Instant;

use chring::catalog::{builtin_catalog, load_catalog, Catalog};

pub use config::{ConfigError, ModuleSpec, Task, TaskConfig, TaskKind, SCHEMA};
pub use report::{Report, TaskReport, Verdict};
pub use tasks::Settings;

/// Exit code for configuration errors.
pub const EXIT_CONFIG: i32 = 2;

pub fn catalog_for(name: &str, base_dir: &Path) -> Result<Catalog, ConfigError> {
    if name == "builtin" {
        return Ok(builtin_catalog());
    }
    load_catalog(&base_dir.join(name)).map_err(|e| ConfigError::at("catalog", e.to_string()))
}

/// Resolves every task, then runs them in config order. Relative paths
/// are taken from `base_dir`. Settings in the config override `defaults`
/// and settings on a task override both.
pub fn run(config: &TaskConfig, defaults: &Settings, base_dir: &Path) -> Result<Report, ConfigError> {
    let start = Instant::now();
    let catalog = catalog_for(&config.catalog, base_dir)?;
    let settings = defaults.layered(
        config.window.as_deref(),
        config.depth,
        config.tower_depth,
        "config",
    )?;
    let prepared = config
        .tasks
        .iter()
        .enumerate()
        .map(|(i, t)| tasks::prepare(i, t, &catalog, &settings, base_dir))
        .collect::<Result<Vec<_>, _>>()?;
    let reports: Vec<TaskReport> = prepared.iter().map(|p| tasks::execute(p, &catalog)).collect();
    let passed = reports.iter().all(|r| r.verdict != Verdict::Fail);
    Ok(Report {
        schema: SCHEMA,
        catalog: config.catalog.clone(),
        rejected: catalog.rejected.clone(),
        settings: settings.to_json(),
        tasks: reports,
        passed,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}
