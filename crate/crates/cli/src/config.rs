//! Task configuration files.

use std::fmt;

use chring::modules::ModuleDescription;
use chring::DegreeWindow;
use serde::{Deserialize, Serialize};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum TaskKind {
    Resolve,
    Ext,
    Tor,
    Gorenstein,
    ShiftIso,
    LocalCohomology,
    BaseChange,
    Torsion,
    Freeness,
    MatesVerify,
    FullSuite,
}

impl TaskKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TaskKind::Resolve => "resolve",
            TaskKind::Ext => "ext",
            TaskKind::Tor => "tor",
            TaskKind::Gorenstein => "gorenstein",
            TaskKind::ShiftIso => "shift-iso",
            TaskKind::LocalCohomology => "local-cohomology",
            TaskKind::BaseChange => "base-change",
            TaskKind::Torsion => "torsion",
            TaskKind::Freeness => "freeness",
            TaskKind::MatesVerify => "mates-verify",
            TaskKind::FullSuite => "full-suite",
        }
    }
}

impl fmt::Display for TaskKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A module argument: a keyword (`"ring"`, `"field"`, `"target"`) resolved
/// against the task's ring, or an explicit presentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModuleSpec {
    Keyword(String),
    Described(ModuleDescription),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Task {
    pub kind: TaskKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub other: Option<ModuleSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corpus: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tower_depth: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskConfig {
    pub schema: u32,
    #[serde(default = "builtin")]
    pub catalog: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tower_depth: Option<usize>,
    pub tasks: Vec<Task>,
}

fn builtin() -> String {
    "builtin".into()
}

/// A configuration problem. Mapped to exit code 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigError {
    pub location: Option<String>,
    pub message: String,
}

impl ConfigError {
    pub fn new(message: impl Into<String>) -> Self {
        ConfigError {
            location: None,
            message: message.into(),
        }
    }

    pub fn at(location: impl Into<String>, message: impl Into<String>) -> Self {
        ConfigError {
            location: Some(location.into()),
            message: message.into(),
        }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.location {
            Some(loc) => write!(f, "config error at {loc}: {}", self.message),
            None => write!(f, "config error: {}", self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

impl Task {
    pub fn new(kind: TaskKind) -> Self {
        Task {
            kind,
            pair: None,
            ring: None,
            module: None,
            other: None,
            corpus: None,
            window: None,
            depth: None,
            tower_depth: None,
        }
    }
}

impl TaskConfig {
    pub fn single(task: Task) -> Self {
        TaskConfig {
            schema: SCHEMA,
            catalog: builtin(),
            window: None,
            depth: None,
            tower_depth: None,
            tasks: vec![task],
        }
    }

    pub fn parse(text: &str) -> Result<TaskConfig, ConfigError> {
        let config: TaskConfig = serde_json::from_str(text).map_err(|e| {
            ConfigError::at(
                format!("line {}, column {}", e.line(), e.column()),
                e.to_string(),
            )
        })?;
        if config.schema != SCHEMA {
            return Err(ConfigError::at(
                "schema",
                format!("unsupported schema {}, expected {SCHEMA}", config.schema),
            ));
        }
        Ok(config)
    }
}

/// Parses `LO:HI`.
pub fn parse_window(text: &str) -> Result<DegreeWindow, String> {
    let (lo, hi) = text
        .split_once(':')
        .ok_or_else(|| format!("window {text:?} is not of the form LO:HI"))?;
    let lo: i64 = lo
        .trim()
        .parse()
        .map_err(|_| format!("bad lower bound in window {text:?}"))?;
    let hi: i64 = hi
        .trim()
        .parse()
        .map_err(|_| format!("bad upper bound in window {text:?}"))?;
    DegreeWindow::new(lo, hi).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn windows() {
        assert_eq!(parse_window("-40:40").unwrap(), DegreeWindow::new(-40, 40).unwrap());
        assert!(parse_window("3:1").is_err());
        assert!(parse_window("3").is_err());
    }

    #[test]
    fn json_errors_carry_location() {
        let err = TaskConfig::parse("{\"schema\": 1,\n \"tasks\": [}").unwrap_err();
        assert_eq!(err.location.as_deref(), Some("line 2, column 12"));
    }

    #[test]
    fn module_specs() {
        let t: Task = serde_json::from_str(
            r#"{"kind": "resolve", "module": {"ring": "T2", "generators": [0], "relations": [["t1"]]}}"#,
        )
        .unwrap();
        assert!(matches!(t.module, Some(ModuleSpec::Described(_))));
        let t: Task = serde_json::from_str(r#"{"kind": "shift-iso", "module": "field"}"#).unwrap();
        assert_eq!(t.module, Some(ModuleSpec::Keyword("field".into())));
    }
}
