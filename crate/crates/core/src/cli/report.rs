use serde_json::{Map, Value};

use super::{Format, EXIT_FAIL, EXIT_PASS};

/// Ordered key/value report. Human output keeps insertion order; JSON output
/// is an object with sorted keys.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    command: String,
    status: &'static str,
    fields: Vec<(String, Value)>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.into(),
            status: "pass",
            fields: Vec::new(),
        }
    }

    pub fn error(kind: &str, e: &crate::Error) -> Self {
        let mut r = Report::new(kind);
        r.status = "error";
        r.add("error", e.to_string());
        r
    }

    pub fn add(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.fields.push((key.into(), v.into()));
        self
    }

    pub fn add_display(&mut self, key: &str, v: impl std::fmt::Display) -> &mut Self {
        self.add(key, v.to_string())
    }

    /// Marks the check as failed.
    pub fn fail(&mut self) -> &mut Self {
        self.status = "fail";
        self
    }

    pub fn set_pass(&mut self, pass: bool) -> &mut Self {
        if !pass {
            self.fail();
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.status == "pass"
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            EXIT_PASS
        } else {
            EXIT_FAIL
        }
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Human => {
                let mut out = format!("command: {}\nstatus: {}\n", self.command, self.status);
                for (k, v) in &self.fields {
                    match v {
                        Value::String(s) if s.contains('\n') => {
                            out.push_str(&format!("{k}:\n"));
                            for line in s.lines() {
                                out.push_str(&format!("  {line}\n"));
                            }
                        }
                        Value::String(s) => out.push_str(&format!("{k}: {s}\n")),
                        other => out.push_str(&format!("{k}: {other}\n")),
                    }
                }
                out
            }
            Format::Json => {
                let mut m = Map::new();
                m.insert("command".into(), Value::String(self.command.clone()));
                m.insert("status".into(), Value::String(self.status.into()));
                for (k, v) in &self.fields {
                    m.insert(k.clone(), v.clone());
                }
                let mut s = serde_json::to_string_pretty(&Value::Object(m)).expect("serializable");
                s.push('\n');
                s
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn human_and_json() {
        let mut r = Report::new("demo");
        r.add("n", 3).add("text", "a\nb").fail();
        assert_eq!(r.render(Format::Human), "command: demo\nstatus: fail\nn: 3\ntext:\n  a\n  b\n");
        assert!(r.render(Format::Json).contains("\"status\": \"fail\""));
        assert_eq!(r.exit_code(), EXIT_FAIL);
    }
}
