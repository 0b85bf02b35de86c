//! Invariants of a catalog group.
//!
//!     cargo run --example show_group -- 'wreath_cp_cp(3)'

use pcentral::series::{describe, upper_central_series};

fn main() -> pcentral::Result<()> {
    let spec = std::env::args().nth(1).unwrap_or_else(|| "ut(4,2)".into());
    let g = pcentral::catalog::build_str(&spec)?;
    let d = describe(&g)?;
    println!("{} has order {} and exponent {}", d.name, d.order, d.exponent);
    match d.class {
        Some(c) => println!("nilpotent of class {c}"),
        None => println!("not nilpotent"),
    }
    println!("lower central orders {:?}", d.lower_central);
    println!("upper central orders {:?}", upper_central_series(&g)?.orders());
    if d.prime.is_some() {
        println!("Omega_i orders {:?}, agemo orders {:?}", d.omega, d.agemo);
        println!("p-central height {:?}", d.p_central_height);
    }
    Ok(())
}
