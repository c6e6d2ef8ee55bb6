use serde_json::{json, Value};

/// A finished command: its verdict decides between exit codes 0 and 1.
pub struct Outcome {
    pub verdict: bool,
    pub text: String,
    pub result: Value,
    pub warnings: Vec<String>,
}

impl Outcome {
    pub fn new(verdict: bool, text: impl Into<String>, result: Value) -> Self {
        Self {
            verdict,
            text: text.into(),
            result,
            warnings: Vec::new(),
        }
    }

    pub fn affirmative(text: impl Into<String>, result: Value) -> Self {
        Self::new(true, text, result)
    }

    pub fn warn(mut self, warnings: impl IntoIterator<Item = String>) -> Self {
        self.warnings.extend(warnings);
        self
    }

    pub fn print(&self, json: bool) {
        if json {
            let doc = json!({"ok": true, "result": self.result, "warnings": self.warnings});
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("plain JSON")
            );
            return;
        }
        let text = self.text.trim_end_matches('\n');
        if !text.is_empty() {
            println!("{text}");
        }
        for w in &self.warnings {
            eprintln!("warning: {w}");
        }
    }
}

pub enum Failure {
    /// Bad arguments, unreadable or invalid input, violated preconditions.
    Input(anyhow::Error),
    /// A search or size cap was reached; raising it may help.
    Cap(anyhow::Error),
}

impl Failure {
    fn error(&self) -> &anyhow::Error {
        match self {
            Failure::Input(e) | Failure::Cap(e) => e,
        }
    }

    pub fn print(&self, json: bool) {
        let message = format!("{:#}", self.error());
        if json {
            let kind = match self {
                Failure::Input(_) => "input",
                Failure::Cap(_) => "cap_exhausted",
            };
            let doc = json!({
                "ok": false,
                "result": {"error": message, "kind": kind},
                "warnings": [],
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("plain JSON")
            );
        } else {
            eprintln!("error: {message}");
        }
    }
}

impl From<coxeter_core::Error> for Failure {
    fn from(e: coxeter_core::Error) -> Self {
        if e.is_cap_exhaustion() {
            Failure::Cap(e.into())
        } else {
            Failure::Input(e.into())
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast_ref::<coxeter_core::Error>() {
            Some(inner) if inner.is_cap_exhaustion() => Failure::Cap(e),
            _ => Failure::Input(e),
        }
    }
}
