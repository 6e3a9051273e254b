//! Check reports and their two renderings.

use std::fmt::Display;

use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Machine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    pub fn from_holds(holds: bool) -> Self {
        if holds {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }

    fn word(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
        }
    }
}

/// The result of one command: a verdict, what was checked, and ordered
/// `KEY=VALUE` fields. Field order is insertion order, so output is
/// deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub provenance: String,
    pub outcome: Outcome,
    fields: Vec<(String, String)>,
}

impl Report {
    pub fn new(command: &str, provenance: &str) -> Self {
        Report {
            command: command.to_string(),
            provenance: provenance.to_string(),
            outcome: Outcome::Pass,
            fields: Vec::new(),
        }
    }

    pub fn field(&mut self, key: &str, value: impl Display) -> &mut Self {
        debug_assert!(key.chars().all(|c| c.is_ascii_uppercase() || c.is_ascii_digit() || c == '_'));
        // Values stay on one line.
        let value = value.to_string().replace('\n', "; ");
        self.fields.push((key.to_string(), value));
        self
    }

    pub fn fail(&mut self) -> &mut Self {
        self.outcome = Outcome::Fail;
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn fields(&self) -> &[(String, String)] {
        &self.fields
    }

    pub fn exit_code(&self) -> i32 {
        match self.outcome {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Machine => {
                let mut out = format!(
                    "COMMAND={}\nVERDICT={}\nPROVENANCE={}\n",
                    self.command,
                    self.outcome.word(),
                    self.provenance
                );
                for (k, v) in &self.fields {
                    out.push_str(&format!("{k}={v}\n"));
                }
                out
            }
            Format::Human => {
                let mut out = format!(
                    "{}: {}\n  checks: {}\n",
                    self.command,
                    self.outcome.word().to_uppercase(),
                    self.provenance
                );
                let labels: Vec<String> = self.fields.iter().map(|(k, _)| k.to_lowercase().replace('_', " ")).collect();
                let width = labels.iter().map(String::len).max().unwrap_or(0);
                for (label, (_, v)) in labels.iter().zip(&self.fields) {
                    out.push_str(&format!("  {label:<width$}  {v}\n"));
                }
                out
            }
        }
    }
}

/// Machine rendering of a failed invocation.
pub fn render_error(command: &str, message: &str, code: i32) -> String {
    format!("COMMAND={command}\nVERDICT=error\nEXIT={code}\nERROR={}\n", message.replace('\n', "; "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn machine_lines_keep_insertion_order() {
        let mut r = Report::new("check-x", "something");
        r.field("B", 2).field("A", "x\ny").fail();
        assert_eq!(
            r.render(Format::Machine),
            "COMMAND=check-x\nVERDICT=fail\nPROVENANCE=something\nB=2\nA=x; y\n"
        );
        assert_eq!(r.exit_code(), 1);
        assert_eq!(r.get("A"), Some("x; y"));
    }

    #[test]
    fn human_aligns_labels() {
        let mut r = Report::new("check-x", "something");
        r.field("ORDER", 4).field("WITNESS_PAIR", "(1, 1)");
        let text = r.render(Format::Human);
        assert!(text.starts_with("check-x: PASS\n"));
        assert!(text.contains("  order         4\n"), "{text}");
        assert!(text.contains("  witness pair  (1, 1)\n"), "{text}");
    }
}
