//! Run every reproduction preset and summarize the manifests.
//!
//! ```bash
//! cargo run --example reproduce_figures
//! ```
//!
//! Artifacts land under `reproduce-out/<preset>/`. The `l2l3-poset`
//! preset is expected to report a failed check: its reference drawing is
//! provably incomplete (see the README note on reproduction).

use reslat::reproduce::{run, PRESETS};

fn main() -> reslat::Result<()> {
    let base = std::path::PathBuf::from("reproduce-out");
    for preset in PRESETS {
        let manifest = run(preset, &base.join(preset))?;
        println!(
            "{:<20} passed={:<5} counts={:?}",
            manifest.preset, manifest.passed, manifest.counts
        );
        for check in &manifest.checks {
            let flag = if check.passed { "ok  " } else { "FAIL" };
            if check.detail.is_empty() {
                println!("    [{flag}] {}", check.name);
            } else {
                println!("    [{flag}] {} ({})", check.name, check.detail);
            }
        }
    }
    Ok(())
}
