//! Regenerates the reference chain diagnostic that lives under `artifacts/`
//! in the repository root. The acceptance suite recomputes the same document
//! and compares byte-for-byte, so the archived file doubles as a
//! reproducibility check for the solver and the report serialization.
//!
//! Usage:
//!   cargo run -p spexlab --example emit_chain_reference \
//!     > artifacts/chain-report-n200-d3-eps0.1.json

use spexlab::graph::FamilySpec;
use spexlab::lemmas::{check_adjacency_chain, check_q_chain};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = FamilySpec::ExtremalH { n: 200, k: 3 }.build()?;
    let adjacency = check_adjacency_chain(&g, 3)?;
    let q = check_q_chain(&g, 3, 0.1)?;
    let doc = serde_json::json!({
        "target": "h:200,3",
        "delta_f": 3,
        "epsilon": 0.1,
        "adjacency_chain": adjacency,
        "q_chain": q,
    });
    println!("{}", serde_json::to_string_pretty(&doc)?);
    Ok(())
}
