//! Bounded exhaustive enumeration: chains by discriminant, resolution chains
//! from the blow-up grammar, and the closed-form u-families.
//!
//! Run with: cargo run -p twigcalc --example chain_enumeration

use twigcalc::numeric::rat_str;
use twigcalc::search::{enum_chains_by_discriminant, enum_resolution_chains, verify_u_families};

fn main() {
    for n in 2..=6 {
        let chains: Vec<String> = enum_chains_by_discriminant(n)
            .unwrap()
            .iter()
            .map(|c| c.to_string())
            .collect();
        println!("d = {n}: {}", chains.join(" "));
    }

    let chains = enum_resolution_chains(7);
    println!("\n{} resolution chains with at most 7 components:", chains.len());
    for rc in chains.iter().take(12) {
        println!(
            "  {}  arms d = ({}, {}), u = {}, delta = {}",
            rc.full(),
            rc.d_prime(),
            rc.d_second(),
            rat_str(rc.u_bar()),
            rat_str(rc.delta_bar())
        );
    }
    if chains.len() > 12 {
        println!("  ... and {} more", chains.len() - 12);
    }

    // Each small first arm pins the second arm into a one-parameter family
    // with a closed-form u-value.
    let report = verify_u_families(4);
    println!("\nu-families verified up to k = 4 (all ok: {}):", report.all_ok);
    for case in report.cases.iter().filter(|c| c.k <= 2) {
        println!(
            "  {} k = {}: {}  u = {}",
            case.family,
            case.k,
            case.full,
            rat_str(&case.closed_form)
        );
    }
    println!("family completeness: {}", report.completeness_ok);
}
