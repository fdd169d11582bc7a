//! wasm-bindgen entry points for the static demo page. Every function returns a JSON string.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use qhopf_core::catalog::{build_instance, instance_specs};
use qhopf_core::quasihopf::verify_axioms;
use qhopf_core::suite::graded_iso;
use qhopf_core::weylcheck::{self, RootType};

fn error(e: impl std::fmt::Display, code: &str) -> Value {
    json!({ "error": { "kind": code, "message": e.to_string() } })
}

#[wasm_bindgen]
pub fn instances() -> String {
    json!(instance_specs()).to_string()
}

/// Build a catalog instance and check every axiom.
#[wasm_bindgen]
pub fn verify_instance(spec: &str) -> String {
    let v = match build_instance(spec) {
        Ok(q) => {
            let rep = verify_axioms(&q);
            json!({ "instance": spec, "dim": q.dim(), "pass": rep.all_pass(), "axioms": rep.results })
        }
        Err(e) => error(&e, e.code()),
    };
    v.to_string()
}

/// Radical filtration dimensions of the algebra underlying an instance.
#[wasm_bindgen]
pub fn radical_dims(spec: &str) -> String {
    let v = match build_instance(spec) {
        Ok(q) => {
            let dims: Vec<usize> = q.alg.radical_filtration().iter().map(|f| f.len()).collect();
            let gr = q.alg.grading.is_some().then(|| graded_iso(&q.alg));
            json!({ "instance": spec, "filtration_dims": dims, "gr_isomorphic": gr })
        }
        Err(e) => error(&e, e.code()),
    };
    v.to_string()
}

/// The λ_w table of every valid (p, d) with p < pmax.
#[wasm_bindgen]
pub fn weyl_table(kind: &str, pmax: u32) -> String {
    let v = kind
        .parse::<RootType>()
        .and_then(|k| weylcheck::sweep(k, pmax.min(1000) as u64))
        .map(|reps| json!({ "type": kind, "cases": reps, "pass": reps.iter().all(|r| r.pass) }))
        .unwrap_or_else(|e| error(&e, e.code()));
    v.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entry_points() {
        let v: Value = serde_json::from_str(&verify_instance("Aq:n=2,r=1")).unwrap();
        assert_eq!(v["pass"], true);
        let v: Value = serde_json::from_str(&radical_dims("Aq:n=2,r=1")).unwrap();
        assert_eq!(v["filtration_dims"], json!([8, 6, 4, 2, 0]));
        let v: Value = serde_json::from_str(&weyl_table("G2", 50)).unwrap();
        assert_eq!(v["pass"], true);
        let v: Value = serde_json::from_str(&verify_instance("bogus")).unwrap();
        assert_eq!(v["error"]["kind"], "PARSE_ERROR");
        assert!(instances().contains("H32"));
    }
}
