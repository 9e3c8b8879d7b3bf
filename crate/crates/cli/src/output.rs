use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// What a subcommand produced: a JSON result plus its plain-text rendering.
pub struct Report {
    pub command: &'static str,
    pub result: Value,
    pub details: Map<String, Value>,
    pub text: String,
    /// False for a well-formed negative answer (exit code 1).
    pub affirmative: bool,
}

impl Report {
    pub fn new(command: &'static str, result: Value, text: impl Into<String>) -> Report {
        Report {
            command,
            result,
            details: Map::new(),
            text: text.into(),
            affirmative: true,
        }
    }

    pub fn detail(mut self, key: &str, value: Value) -> Report {
        self.details.insert(key.to_string(), value);
        self
    }

    pub fn negative_if(mut self, negative: bool) -> Report {
        self.affirmative = !negative;
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Json => serde_json::to_string_pretty(&json!({
                "command": self.command,
                "result": self.result,
                "details": self.details,
            }))
            .expect("report serializes"),
        }
    }
}

/// Exact integer as a JSON number when it fits, otherwise as a decimal string.
pub fn integer(text: &str) -> Value {
    match text.parse::<i64>() {
        Ok(n) => json!(n),
        Err(_) => json!(text),
    }
}
