//! Golden-file corpus: `NAME.case.json` holds the problem fields (same names
//! as the flags), `NAME.golden.json` the expected report JSON.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde_json::Value;

use crate::{parse_problem, run, RawProblem};

const CASE: &str = ".case.json";
const GOLDEN: &str = ".golden.json";
/// Differences listed per failing case before truncating.
const MAX_DIFFS: usize = 20;

#[derive(Debug)]
pub struct CaseResult {
    pub name: String,
    pub passed: bool,
    /// Diagnostics or the structural diff, one entry per line.
    pub details: Vec<String>,
}

#[derive(Debug)]
pub struct CorpusReport {
    pub cases: Vec<CaseResult>,
}

impl CorpusReport {
    pub fn failures(&self) -> usize {
        self.cases.iter().filter(|c| !c.passed).count()
    }

    pub fn summary(&self) -> String {
        let width = self.cases.iter().map(|c| c.name.len()).max().unwrap_or(4).max(4);
        let mut out = String::new();
        for c in &self.cases {
            let _ = writeln!(out, "{:<width$}  {}", c.name, if c.passed { "PASS" } else { "FAIL" });
            for d in &c.details {
                let _ = writeln!(out, "{:<width$}    {d}", "");
            }
        }
        let n = self.cases.len();
        let _ = writeln!(out, "{}/{n} passed", n - self.failures());
        out
    }
}

fn case_from_json(v: &Value) -> Result<RawProblem, String> {
    let obj = v.as_object().ok_or("case is not a JSON object")?;
    let mut raw = RawProblem::default();
    for (k, val) in obj {
        let text = match val {
            Value::String(s) => s.clone(),
            Value::Number(n) => n.to_string(),
            _ => return Err(format!("field `{k}` must be a string or number")),
        };
        let slot = match k.as_str() {
            "vars" => &mut raw.vars,
            "eq" => &mut raw.eq,
            "gens" => &mut raw.gens,
            "driver" => &mut raw.driver,
            "control" => &mut raw.control,
            "subscheme" => &mut raw.subscheme,
            _ => return Err(format!("unknown field `{k}`")),
        };
        *slot = Some(text);
    }
    Ok(raw)
}

/// Paths where `expected` and `actual` differ, `$`-rooted.
pub fn structural_diff(expected: &Value, actual: &Value) -> Vec<String> {
    let mut out = Vec::new();
    diff_at("$", expected, actual, &mut out);
    out
}

fn diff_at(path: &str, e: &Value, a: &Value, out: &mut Vec<String>) {
    match (e, a) {
        (Value::Object(eo), Value::Object(ao)) => {
            for (k, ev) in eo {
                match ao.get(k) {
                    Some(av) => diff_at(&format!("{path}.{k}"), ev, av, out),
                    None => out.push(format!("{path}.{k}: missing")),
                }
            }
            for k in ao.keys().filter(|k| !eo.contains_key(*k)) {
                out.push(format!("{path}.{k}: unexpected"));
            }
        }
        (Value::Array(ea), Value::Array(aa)) => {
            for (i, (ev, av)) in ea.iter().zip(aa).enumerate() {
                diff_at(&format!("{path}[{i}]"), ev, av, out);
            }
            if ea.len() != aa.len() {
                out.push(format!("{path}: expected {} entries, got {}", ea.len(), aa.len()));
            }
        }
        _ if e != a => out.push(format!("{path}: expected {e}, got {a}")),
        _ => {}
    }
}

fn run_case(name: &str, case: &Path, golden: &Path) -> CaseResult {
    let fail = |details: Vec<String>| CaseResult { name: name.to_string(), passed: false, details };
    let read = |p: &Path| -> Result<Value, String> {
        let text = fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
        serde_json::from_str(&text).map_err(|e| format!("{}: malformed JSON: {e}", p.display()))
    };
    let raw = match read(case).and_then(|v| case_from_json(&v)) {
        Ok(r) => r,
        Err(e) => return fail(vec![format!("malformed case: {e}")]),
    };
    let spec = match parse_problem(&raw) {
        Ok(s) => s,
        Err(d) => return fail(d.0.into_iter().map(|e| format!("malformed case: {e}")).collect()),
    };
    if !golden.exists() {
        return fail(vec![format!("missing golden {}", golden.display())]);
    }
    let expected = match read(golden) {
        Ok(v) => v,
        Err(e) => return fail(vec![e]),
    };
    let actual = match run(&spec) {
        Ok(r) => r.to_json(),
        Err(e) => return fail(vec![format!("driver aborted: {e}")]),
    };
    let mut diff = structural_diff(&expected, &actual);
    if diff.len() > MAX_DIFFS {
        let more = diff.len() - MAX_DIFFS;
        diff.truncate(MAX_DIFFS);
        diff.push(format!("... and {more} more"));
    }
    CaseResult { name: name.to_string(), passed: diff.is_empty(), details: diff }
}

/// Runs every case in `dir`, each on its own thread; results come back in
/// name order.
pub fn run_corpus(dir: &Path) -> Result<CorpusReport, String> {
    let entries = fs::read_dir(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    let mut cases: Vec<(String, PathBuf)> = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| e.to_string())?.path();
        let file = path.file_name().and_then(|f| f.to_str()).unwrap_or_default();
        if let Some(name) = file.strip_suffix(CASE) {
            cases.push((name.to_string(), path.clone()));
        }
    }
    if cases.is_empty() {
        return Err(format!("empty corpus: no *{CASE} files in {}", dir.display()));
    }
    cases.sort();
    let results = std::thread::scope(|s| {
        let handles: Vec<_> = cases
            .iter()
            .map(|(name, case)| s.spawn(move || run_case(name, case, &dir.join(format!("{name}{GOLDEN}")))))
            .collect();
        handles.into_iter().map(|h| h.join().expect("case thread panicked")).collect()
    });
    Ok(CorpusReport { cases: results })
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn diff_names_the_paths() {
        let e = json!({"steps": [{"center": {"gens": ["y", "z"]}}], "root": "root"});
        let a = json!({"steps": [{"center": {"gens": ["x", "z"]}}, {}], "extra": 1, "root": "root"});
        assert_eq!(
            structural_diff(&e, &a),
            vec![
                "$.steps[0].center.gens[0]: expected \"y\", got \"x\"",
                "$.steps: expected 1 entries, got 2",
                "$.extra: unexpected",
            ]
        );
    }

    #[test]
    fn numeric_control_is_accepted() {
        let raw = case_from_json(&json!({"vars": "x,z", "gens": "z^6, x*z^3", "driver": "marked", "control": 2})).unwrap();
        assert_eq!(raw.control.as_deref(), Some("2"));
    }

    #[test]
    fn unknown_fields_are_rejected() {
        assert!(case_from_json(&json!({"vars": "x", "drive": "floc"})).is_err());
    }
}
