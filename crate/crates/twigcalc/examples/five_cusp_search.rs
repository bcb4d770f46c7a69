//! The five-cusp, ten-twig search: exhaustively list every candidate set of
//! cusp resolution chains compatible with the global bounds
//! 7/2 <= delta(D) < e(D) <= 4, then eliminate each candidate through the
//! genus formula.
//!
//! Run with: cargo run -p twigcalc --example five_cusp_search

use twigcalc::numeric::{rat, rat_str};
use twigcalc::search::{five_cusp_candidate_pool, five_cusp_degree_elimination, five_cusp_search};

fn main() {
    let pool = five_cusp_candidate_pool(&rat(1, 2));
    println!("candidate pool ({} chains with delta > 1/6 and u <= 1/2):", pool.len());
    for rc in &pool {
        println!(
            "  {}  delta = {}, u = {}, e = {}",
            rc.full(),
            rat_str(rc.delta_bar()),
            rat_str(rc.u_bar()),
            rat_str(rc.e_bar())
        );
    }

    let solutions = five_cusp_search();
    println!("\n{} candidate configurations survive the global bounds:", solutions.len());
    for sol in &solutions {
        let names: Vec<String> = sol.chains().iter().map(|c| c.to_string()).collect();
        println!(
            "  {{{}}}  delta(D) = {}, e(D) = {}",
            names.join(", "),
            rat_str(&sol.delta_d),
            rat_str(&sol.e_d)
        );
    }

    let elimination = five_cusp_degree_elimination(&solutions).unwrap();
    println!("\ndegree elimination (genus sum must equal C(d-1,2) for some d):");
    for s in &elimination.per_solution {
        println!(
            "  genus sum {}: {}",
            s.genus_sum,
            if s.eliminated { "no degree exists" } else { "realizable!" }
        );
    }
    println!("all eliminated: {}", elimination.all_eliminated);
}
