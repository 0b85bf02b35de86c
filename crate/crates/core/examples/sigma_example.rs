//! The Jordan block acting on (Z/p)^{p+1}: orders, the mixed series, and the
//! two readings of its p-centrality claim.
//!
//!     cargo run --example sigma_example -- 3

use pcentral::catalog::{sigma_pair, sigma_power_closed_form};
use pcentral::verify::sigma_wording;

fn main() -> pcentral::Result<()> {
    let p: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let pair = sigma_pair(p)?;
    let e = pair.group();
    println!("|E| = {}, |A| = {}", e.order(), pair.a_order());
    println!("exp [E,A] = {}", e.exponent_of(&pair.commutator_ga()));
    println!("gamma_k(E,A) orders: {:?}", pair.gamma_ga_full().orders());
    println!("sigma^p =\n{:?}", sigma_power_closed_form(p, p as u64)?);
    let report = sigma_wording(p, 4096)?;
    println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
    Ok(())
}
