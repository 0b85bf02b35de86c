//! A small corpus run with a seeded fault, then a replay of its bundle.

use pcentral::corpus::{replay_bundle, run_corpus, ExperimentConfig};

const CONFIG: &str = r#"
checks = ["catalog", "main1", "cor", "main2"]

[[corpus]]
group = "heisenberg(3)"
actions = ["inner"]
expect = { order = 27, exponent = 3, class = 2 }

[[corpus]]
group = "dihedral(16)"
actions = ["inner"]
# deliberately wrong
expect = { exponent = 16 }

[[corpus]]
group = "sym(4)"
"#;

fn main() -> pcentral::Result<()> {
    let dir = std::env::temp_dir().join("pcentral-corpus-example");
    let cfg = ExperimentConfig::from_toml_str(CONFIG)?;
    let report = run_corpus(&cfg, &dir)?;
    print!("{}", report.summary_table());
    for b in &report.bundles {
        let replay = replay_bundle(b)?;
        println!("{}: reproduced {}", b.display(), replay.reproduced());
    }
    Ok(())
}
