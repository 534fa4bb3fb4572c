//! Browser bindings.
//!
//! Every export takes plain strings and returns a JSON string, either the
//! result object or `{"error": "..."}`, so the page needs no glue beyond
//! `JSON.parse` and the functions run unchanged in native tests.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use stackpat::enumeration::{count_sortable_with, CountOptions, Method};
use stackpat::machine::{trace, MachineSpec, StackOp};
use stackpat::oracles::classify;
use stackpat::patterns::parse_pattern_list;
use stackpat::words::{format_letters, Domain, Word};

/// Browser runs are single threaded, so keep brute force small.
const BROWSER_GUARD: usize = 9;

fn spec(sigma: &str, domain: &str) -> Result<MachineSpec, String> {
    let d: Domain = domain.parse().map_err(|e| format!("{e}"))?;
    let patterns = parse_pattern_list(sigma).map_err(|e| e.to_string())?;
    MachineSpec::new(&patterns, d).map_err(|e| e.to_string())
}

fn respond(r: Result<Value, String>) -> String {
    r.unwrap_or_else(|e| json!({ "error": e })).to_string()
}

/// Step-by-step run with the contents of both stacks after every move.
#[wasm_bindgen(js_name = traceRun)]
pub fn trace_run(sigma: &str, domain: &str, word: &str) -> String {
    respond((|| {
        let spec = spec(sigma, domain)?;
        let w = word.parse::<Word>().map_err(|e| e.to_string())?.into_vec();
        spec.check_member(&w).map_err(|e| e.to_string())?;
        let t = trace(&w, &spec);
        let (mut s1, mut s2) = (Vec::new(), Vec::new());
        let frames: Vec<Value> = t
            .steps
            .iter()
            .map(|s| {
                let stack = if s.stack == 1 { &mut s1 } else { &mut s2 };
                let op = match s.op {
                    StackOp::Push => {
                        stack.push(s.value);
                        "push"
                    }
                    StackOp::Pop => {
                        stack.pop();
                        "pop"
                    }
                };
                json!({ "stack": s.stack, "op": op, "value": s.value,
                    "first": format_letters(&s1), "second": format_letters(&s2) })
            })
            .collect();
        Ok(json!({
            "input": format_letters(&t.input),
            "first_output": format_letters(&t.first_output),
            "final_output": format_letters(&t.final_output),
            "sortable": t.sortable,
            "frames": frames,
        }))
    })())
}

/// Counts of sortable words for lengths `1..=max_n`.
#[wasm_bindgen(js_name = countSortable)]
pub fn count_sortable(sigma: &str, domain: &str, max_n: usize, method: &str) -> String {
    respond((|| {
        let spec = spec(sigma, domain)?;
        let method: Method = method.parse().map_err(|e| format!("{e}"))?;
        let opts = CountOptions { guard: Some(BROWSER_GUARD.min(spec.domain().default_guard())), strict: false };
        let mut counts = Vec::new();
        let mut used = Vec::new();
        for n in 1..=max_n {
            let o = count_sortable_with(&spec, n, method, opts).map_err(|e| e.to_string())?;
            counts.push(o.count.to_string());
            used.push(o.method.to_string());
        }
        Ok(json!({ "sigma": spec.sigma_labels(), "domain": spec.domain(), "counts": counts, "methods": used }))
    })())
}

/// Class or non-class, with a basis or a witness pair.
#[wasm_bindgen(js_name = classifyPattern)]
pub fn classify_pattern(sigma: &str, domain: &str) -> String {
    respond((|| {
        let spec = spec(sigma, domain)?;
        let [s] = spec.sigma() else {
            return Err("classification takes a single pattern".to_string());
        };
        let c = classify(s, spec.domain()).map_err(|e| e.to_string())?;
        Ok(json!({
            "is_class": c.is_class,
            "basis": c.basis.map(|b| b.iter().map(|p| p.to_string()).collect::<Vec<_>>()),
            "witness": c.witness.map(|w| json!({
                "word": format_letters(&w.word), "pattern": format_letters(&w.pattern),
            })),
        }))
    })())
}
