//! Report assembly: every command produces the same envelope, rendered either
//! as human-readable text or as one JSON document.

use deltakit::{AlgebraSpec, Element, Matrix};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub struct Report {
    pub command: String,
    pub input_digest: Option<String>,
    pub results: Value,
    pub exit_status: u8,
    /// Pre-rendered human text; the JSON path ignores it.
    pub human: String,
}

impl Report {
    pub fn print(&self, json: bool) {
        if json {
            let doc = json!({
                "command": self.command,
                "input_digest": self.input_digest,
                "results": self.results,
                "exit_status": self.exit_status,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("report is serializable"));
        } else {
            print!("{}", self.human);
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    let mut out = String::with_capacity(2 * digest.len());
    for b in digest {
        out.push_str(&format!("{b:02x}"));
    }
    format!("sha256:{out}")
}

/// Renders an element as a named linear combination, e.g. "2*e - h".
pub fn render_element(a: &AlgebraSpec, el: &Element) -> String {
    let mut parts = Vec::new();
    for (i, c) in el.coords().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let name = &a.names()[i];
        if c.is_one() {
            parts.push(name.clone());
        } else {
            parts.push(format!("({c})*{name}"));
        }
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

pub fn render_matrix(m: &Matrix, indent: &str) -> String {
    let mut out = String::new();
    for r in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|c| m.get(r, c).to_string()).collect();
        out.push_str(&format!("{indent}[{}]\n", row.join(", ")));
    }
    out
}
