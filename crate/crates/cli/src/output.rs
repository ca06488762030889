//! Report rendering. JSON keys come out sorted, so a report depends only on
//! the scenario, the command line and the seed.

use std::fmt::Write;

use condind::{CheckReport, Verdict};
use serde_json::{json, Value};

use crate::commands::Outcome;
use crate::Format;

pub fn render(format: Format, command: &str, args: &[String], seed: u64, outcome: &Outcome) -> String {
    let status = if outcome.passed() { "ok" } else { "counterexample" };
    match format {
        Format::Json => {
            let report = json!({
                "command": command,
                "args": args,
                "seed": seed,
                "status": status,
                "result": outcome.result,
                "checks": outcome.checks,
            });
            let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "{command} (seed {seed}): {status}");
            text_value(&mut s, &outcome.result, 1);
            for c in &outcome.checks {
                text_check(&mut s, c, 1);
            }
            s
        }
    }
}

fn text_value(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                if v.is_object() || v.is_array() && v.as_array().is_some_and(|a| a.iter().any(Value::is_object)) {
                    let _ = writeln!(out, "{pad}{k}:");
                    text_value(out, v, depth + 1);
                } else {
                    let _ = writeln!(out, "{pad}{k}: {}", flat(v));
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                let _ = writeln!(out, "{pad}-");
                text_value(out, item, depth + 1);
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", flat(other));
        }
    }
}

fn flat(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn text_check(out: &mut String, c: &CheckReport, depth: usize) {
    let pad = "  ".repeat(depth);
    let verdict = match &c.verdict {
        Verdict::Verified { cases } => format!("verified ({cases} cases)"),
        Verdict::Skipped { reason } => format!("skipped: {reason}"),
        Verdict::Counterexample(cx) => {
            let inputs: Vec<String> = cx.inputs.iter().map(|(n, v)| format!("{n}={v}")).collect();
            format!("COUNTEREXAMPLE {}: {} vs {} [{}]", cx.detail, cx.lhs, cx.rhs, inputs.join(", "))
        }
    };
    let alarm = if c.alarm { " ALARM" } else { "" };
    let _ = writeln!(out, "{pad}{}: {verdict}{alarm}", c.property);
    for n in &c.notes {
        let _ = writeln!(out, "{pad}  note: {n}");
    }
    for child in &c.children {
        text_check(out, child, depth + 1);
    }
}
