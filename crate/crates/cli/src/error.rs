use std::fmt;

use serde_json::{json, Value};
use shortcount::alphamap::AlphaError;
use shortcount::counter::CounterError;
use shortcount::encode::EncodeError;
use shortcount::formula::ParseError;
use shortcount::knowledge::KnowledgeError;
use shortcount::metrics::MetricsError;
use shortcount::tasks::TaskError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Usage,
    Input,
    Capacity,
    Io,
}

impl Kind {
    pub fn exit_code(self) -> i32 {
        match self {
            Kind::Usage | Kind::Input => 1,
            Kind::Capacity => 2,
            Kind::Io => 3,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            Kind::Usage => "usage",
            Kind::Input => "input",
            Kind::Capacity => "capacity",
            Kind::Io => "io",
        }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub kind: Kind,
    pub message: String,
    /// Configuration key the error refers to.
    pub path: Option<String>,
    /// 1-based line of an input file.
    pub line: Option<usize>,
}

impl CliError {
    pub fn new(kind: Kind, message: impl Into<String>) -> Self {
        CliError {
            kind,
            message: message.into(),
            path: None,
            line: None,
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Self::new(Kind::Usage, message)
    }

    pub fn io(path: &std::path::Path, e: std::io::Error) -> Self {
        Self::new(Kind::Io, format!("{}: {e}", path.display()))
    }

    pub fn to_json(&self) -> Value {
        let mut body = json!({ "kind": self.kind.as_str(), "message": self.message });
        if let Some(p) = &self.path {
            body["path"] = json!(p);
        }
        if let Some(l) = self.line {
            body["line"] = json!(l);
        }
        json!({ "error": body })
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<KnowledgeError> for CliError {
    fn from(e: KnowledgeError) -> Self {
        let kind = match e {
            KnowledgeError::Capacity { .. } => Kind::Capacity,
            _ => Kind::Input,
        };
        Self::new(kind, e.to_string())
    }
}

impl From<AlphaError> for CliError {
    fn from(e: AlphaError) -> Self {
        match e {
            AlphaError::Knowledge(k) => k.into(),
            AlphaError::Capacity { .. } => Self::new(Kind::Capacity, e.to_string()),
            AlphaError::Invalid(_) => Self::new(Kind::Input, e.to_string()),
        }
    }
}

impl From<EncodeError> for CliError {
    fn from(e: EncodeError) -> Self {
        match e {
            EncodeError::Knowledge(k) => k.into(),
            EncodeError::UnsupportedMode(_) => Self::usage(e.to_string()),
            EncodeError::Capacity { .. } => Self::new(Kind::Capacity, e.to_string()),
            _ => Self::new(Kind::Input, e.to_string()),
        }
    }
}

impl From<CounterError> for CliError {
    fn from(e: CounterError) -> Self {
        Self::new(Kind::Capacity, e.to_string())
    }
}

impl From<TaskError> for CliError {
    fn from(e: TaskError) -> Self {
        match e {
            TaskError::Knowledge(k) => k.into(),
            TaskError::Config { path, message } => CliError {
                path: Some(path.clone()),
                ..Self::new(Kind::Input, format!("configuration error at `{path}`: {message}"))
            },
            _ => Self::new(Kind::Input, e.to_string()),
        }
    }
}

impl From<MetricsError> for CliError {
    fn from(e: MetricsError) -> Self {
        let line = match e {
            MetricsError::Parse { line, .. } => Some(line),
            _ => None,
        };
        CliError {
            line,
            ..Self::new(Kind::Input, e.to_string())
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError {
            line: Some(e.line),
            ..Self::new(Kind::Input, format!("DIMACS {e}"))
        }
    }
}
