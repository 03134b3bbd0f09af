//! Fixture battery. Each fixture is run twice; it passes when both runs give
//! identical bytes, the exit code and substrings match, and every input
//! document that parses survives a serialize/parse round trip.

use std::collections::BTreeMap;
use std::path::Path;

use super::{run, Format, MapSource, Report};
use crate::error::{Error, Result};
use crate::io::{self, Fixture};

include!("bundled.rs");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureResult {
    pub name: String,
    pub passed: bool,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SelftestRun {
    pub results: Vec<FixtureResult>,
}

impl SelftestRun {
    /// False for an empty battery.
    pub fn passed(&self) -> bool {
        !self.results.is_empty() && self.results.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> Vec<&FixtureResult> {
        self.results.iter().filter(|r| !r.passed).collect()
    }

    pub fn report(&self) -> Report {
        let mut r = Report::new("selftest");
        let passed = self.results.iter().filter(|r| r.passed).count();
        r.add("fixtures", self.results.len()).add("passed", passed);
        if self.results.is_empty() {
            r.add("error", "no fixtures found");
        }
        let lines: Vec<String> = self
            .failures()
            .iter()
            .map(|f| format!("{}: {}", f.name, f.detail.as_deref().unwrap_or("failed")))
            .collect();
        if !lines.is_empty() {
            r.add("failures", lines.join("\n"));
        }
        r.set_pass(self.passed());
        r
    }
}

fn round_trip(text: &str) -> std::result::Result<(), String> {
    let Ok(doc) = io::parse_document(text) else {
        return Ok(());
    };
    let out = io::to_text(&doc);
    match io::parse_document(&out) {
        Ok(again) if again == doc => Ok(()),
        Ok(_) => Err("round trip changed the document".into()),
        Err(e) => Err(format!("round trip output does not parse: {e}")),
    }
}

pub fn run_fixture(f: &Fixture) -> FixtureResult {
    let fail = |detail: String| FixtureResult {
        name: f.name.clone(),
        passed: false,
        detail: Some(detail),
    };
    let inputs: BTreeMap<String, String> = f
        .inputs
        .iter()
        .map(|(k, v)| (k.clone(), serde_json::to_string_pretty(v).expect("serializable")))
        .collect();
    for (k, text) in &inputs {
        if let Err(e) = round_trip(text) {
            return fail(format!("input {k}: {e}"));
        }
    }
    let src = MapSource(inputs);
    let first = run(&f.args, &src);
    let second = run(&f.args, &src);
    if first.text != second.text || first.exit != second.exit {
        return fail("output differs between two runs".into());
    }
    if first.exit != f.expect.exit {
        return fail(format!("exit {} (expected {})", first.exit, f.expect.exit));
    }
    if let Some(s) = f.expect.contains.iter().find(|s| !first.text.contains(s.as_str())) {
        return fail(format!("output lacks {s:?}"));
    }
    FixtureResult {
        name: f.name.clone(),
        passed: true,
        detail: None,
    }
}

/// Runs `(file name, text)` pairs in the given order.
pub fn run_texts<'a>(texts: impl IntoIterator<Item = (&'a str, &'a str)>) -> SelftestRun {
    let results = texts
        .into_iter()
        .map(|(file, text)| match io::parse_fixture(text) {
            Ok(f) => run_fixture(&f),
            Err(e) => FixtureResult {
                name: file.to_string(),
                passed: false,
                detail: Some(e.to_string()),
            },
        })
        .collect();
    SelftestRun { results }
}

pub fn run_bundled() -> SelftestRun {
    run_texts(BUNDLED.iter().copied())
}

/// Runs every `*.json` file of `dir`, sorted by name.
pub fn run_dir(dir: &Path) -> Result<SelftestRun> {
    let entries = std::fs::read_dir(dir)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", dir.display())))?;
    let mut files: Vec<_> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let mut texts = Vec::new();
    for p in &files {
        let t = std::fs::read_to_string(p)
            .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", p.display())))?;
        texts.push((p.file_name().unwrap().to_string_lossy().into_owned(), t));
    }
    Ok(run_texts(texts.iter().map(|(a, b)| (a.as_str(), b.as_str()))))
}

/// The report text of a bundled run, for determinism checks.
pub fn bundled_report(format: Format) -> String {
    run_bundled().report().render(format)
}
