//! Hamburger-Noether pairs: validation, the blow-up simulator, multiplicity
//! sequences, M/I invariants, the genus formula and star-type segments.
//!
//! Run with: cargo run -p twigcalc --example cusp_resolution

use std::collections::BTreeMap;
use twigcalc::search::ResolutionChain;
use twigcalc::hn::{
    genus_check, hn_multiplicities, hn_resolve, mi_invariants, star_pairs, star_segment,
    simulate_subsequence, validate_hn, HNPairSeq,
};

fn main() {
    let params = BTreeMap::from([("k".to_string(), 1u64), ("l".to_string(), 1u64)]);
    for s in ["(3/2)", "(16/9)", "(9/6)(3/3)^k(3/2)", "(36/24)(12/12)^k(12/6)(6/6)^l(6/5)"] {
        let seq = HNPairSeq::parse(s, &params).unwrap();
        println!("{seq}");
        println!("  validation: {:?}", validate_hn(&seq));
        let (graph, mults) = hn_resolve(&seq).unwrap();
        match graph.as_chain() {
            Some(chain) => {
                let canonical = ResolutionChain::from_full(chain.clone())
                    .map(|rc| rc.full().clone())
                    .unwrap_or(chain);
                println!("  resolution graph: chain {canonical}");
            }
            None => println!("  resolution graph: branched tree with {} components", graph.len()),
        }
        println!("  multiplicities: {}", mults);
        println!("  quotient expansion agrees: {}", hn_multiplicities(&seq).unwrap() == mults);
        let (m, i) = mi_invariants(&seq).unwrap();
        println!("  M = {m}, I = {i}");
    }

    // Genus formula: the tricuspidal quartic closes exactly.
    let cusp = HNPairSeq::from_i64(&[(3, 2)]);
    let genus = genus_check(4, &vec![cusp; 3]).unwrap();
    println!(
        "\ngenus check for the tricuspidal quartic: {} = {} ({})",
        genus.lhs,
        genus.rhs,
        if genus.ok { "ok" } else { "fails" }
    );

    // A star-type segment *(6,1) appended over a free point of a weight-4
    // curve, closed form versus simulator.
    let seg = star_segment(6, 1).unwrap();
    println!("\n*(6,1) over a weight-4 head: closed form {}", seg.applied_to(4));
    let g = simulate_subsequence(4, &star_pairs(6, 1)).unwrap();
    println!("simulated:                            {}", g.as_chain().unwrap());
    println!("components added: {}, K-dot added: {}", seg.count_delta, seg.k_delta);
}
