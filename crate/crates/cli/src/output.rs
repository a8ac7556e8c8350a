use std::io::{self, Write};

use serde_json::{json, Value};

/// Plain lines plus the equivalent structured record for one command.
pub struct Report {
    pub command: &'static str,
    pub inputs: Value,
    pub result: Value,
    pub lines: Vec<String>,
}

impl Report {
    pub fn new(command: &'static str, inputs: Value) -> Self {
        Report {
            command,
            inputs,
            result: json!({}),
            lines: Vec::new(),
        }
    }

    pub fn line(&mut self, key: &str, value: impl std::fmt::Display) {
        self.lines.push(format!("{key}: {value}"));
    }

    pub fn to_json(&self) -> Value {
        record(self.command, &self.inputs, &self.result)
    }

    pub fn emit(&self, json: bool) -> io::Result<()> {
        let stdout = io::stdout();
        let mut out = stdout.lock();
        if json {
            serde_json::to_writer_pretty(&mut out, &self.to_json())?;
            writeln!(out)?;
        } else {
            for l in &self.lines {
                writeln!(out, "{l}")?;
            }
        }
        out.flush()
    }
}

pub fn record(command: &str, inputs: &Value, result: &Value) -> Value {
    json!({
        "command": command,
        "inputs": inputs,
        "result": result,
    })
}
