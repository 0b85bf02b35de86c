//! Normal p-complements for a few groups that are not p-groups.

use pcentral::verify::{check_gw, check_main2, normal_p_complement};

fn main() -> pcentral::Result<()> {
    for (spec, p) in [
        ("direct_product(quaternion(8),cyclic(3,1))", 2),
        ("sym(3)", 3),
        ("sym(3)", 2),
        ("sl2_3", 2),
        ("sl2_3", 3),
        ("alt(4)", 3),
    ] {
        let g = pcentral::catalog::build_str(spec)?;
        let (has, _) = normal_p_complement(&g, p);
        let main2: Vec<String> = (1..=3)
            .map(|i| format!("{:?}", check_main2(&g, p, i).hypothesis))
            .collect();
        let gw = check_gw(&g, p, 1)?;
        println!(
            "{spec} p={p}: complement {has}; main2 hypotheses for i=1..3 {main2:?}; gw(k=1) hypothesis {:?}",
            gw.hypothesis
        );
    }
    Ok(())
}
