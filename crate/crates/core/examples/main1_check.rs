//! Running the action checks on one pair and printing the verdicts as JSON.
//!
//!     cargo run --example main1_check -- 'heisenberg(3)' sylow_aut

use std::sync::Arc;

use pcentral::corpus::{build_action, ActionSpec, Caps};
use pcentral::verify::{self, Facts};

fn main() -> pcentral::Result<()> {
    let mut args = std::env::args().skip(1);
    let group = args.next().unwrap_or_else(|| "heisenberg(3)".into());
    let action = args.next().unwrap_or_else(|| "inner".into());
    let g = Arc::new(pcentral::catalog::build_str(&group)?);
    let pair = build_action(&g, &ActionSpec::parse(&action)?, &Caps::default())?;
    let f = Facts::new(&pair)?;
    let verdicts = [
        verify::check_theorem_main1(&f),
        verify::check_lemma_l0_3(&f),
        verify::check_lemma_l2(&f),
        verify::check_p7(&f, 2),
        verify::check_p8(&f),
    ];
    for v in &verdicts {
        println!("{}", serde_json::to_string(v).expect("serializable"));
    }
    Ok(())
}
