//! The four resolution chains with small arm discriminant at most 4 and
//! total u strictly between 0 and 1/2.
//!
//! Run with: cargo run -p twigcalc --example small_u_classification

use twigcalc::numeric::rat_str;
use twigcalc::search::classify_small_u;

fn main() {
    for entry in classify_small_u() {
        println!(
            "{}  T' = {}, T'' = {}, u = {}, delta = {}",
            entry.chain.full(),
            entry.chain.t_prime(),
            entry.chain.t_second(),
            rat_str(&entry.u_bar),
            rat_str(&entry.delta_bar)
        );
    }
}
