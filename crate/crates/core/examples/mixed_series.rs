//! The series gamma_k(G,A) for a few actions, checked against the
//! definitional search.

use std::sync::Arc;

use pcentral::corpus::{build_action, ActionSpec, Caps};

fn main() -> pcentral::Result<()> {
    let caps = Caps::default();
    for (group, action) in [
        ("heisenberg(3)", "inner"),
        ("heisenberg(3)", "sylow_aut"),
        ("elementary_abelian(3,4)", "jordan"),
        ("elementary_abelian(3,4)", "jordan_power(3)"),
        ("quaternion(8)", "full_aut"),
    ] {
        let g = Arc::new(pcentral::catalog::build_str(group)?);
        let pair = build_action(&g, &ActionSpec::parse(action)?, &caps)?;
        let fast = pair.gamma_ga_full();
        let defs = pair.gamma_ga_definitional_series(4, g.order() * 4 + 1, caps.definitional_budget)?;
        let agree = (1..=4).zip(&defs).all(|(k, d)| fast.term(k) == Some(d));
        println!(
            "{group} | {action}: |A| = {}, orders {:?}, definitional agreement {agree}",
            pair.a_order(),
            fast.orders()
        );
    }
    Ok(())
}
