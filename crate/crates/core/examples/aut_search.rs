//! Aut(G) by exhaustive search, and a Sylow subgroup of it.
//!
//!     cargo run --release --example aut_search -- 'elementary_abelian(3,3)'

use std::sync::Arc;
use std::time::Instant;

use pcentral::autsearch::{brute_force_aut, minimal_generating_sequence, sylow_p_subgroup, DEFAULT_BUDGET};

fn main() -> pcentral::Result<()> {
    let spec = std::env::args().nth(1).unwrap_or_else(|| "heisenberg(3)".into());
    let g = Arc::new(pcentral::catalog::build_str(&spec)?);
    println!("generating sequence {:?}", minimal_generating_sequence(&g));
    let start = Instant::now();
    let aut = brute_force_aut(Arc::clone(&g), DEFAULT_BUDGET)?;
    println!(
        "|Aut({spec})| = {} after {} nodes in {:.2?}",
        aut.order(),
        aut.nodes,
        start.elapsed()
    );
    let perm = &aut.perm;
    let mut n = perm.order() as u64;
    let mut q = 2;
    while n > 1 {
        if n.is_multiple_of(q) {
            let s = sylow_p_subgroup(perm, q as u32);
            println!(
                "Sylow {q}-subgroup: order {}, exponent {}",
                s.order(),
                perm.exponent_of(&s)
            );
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
        q += 1;
    }
    Ok(())
}
