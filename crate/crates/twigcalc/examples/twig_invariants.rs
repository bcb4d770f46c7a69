//! The delta/e/u invariants of twigs and the bark of a branched tree.
//!
//! Run with: cargo run -p twigcalc --example twig_invariants

use twigcalc::dual_graph::{Chain, DualGraph};
use twigcalc::numeric::rat_str;
use twigcalc::twig::{bark, bark_square, divisor_delta_e, twig_invariants};

fn main() {
    for s in ["[2]", "[3]", "[2,2]", "[2,2,2]", "[2,2,3]", "[5,2]"] {
        let inv = twig_invariants(&Chain::parse(s).unwrap()).unwrap();
        println!(
            "{s}: d = {}, delta = {}, e = {}, u = {}",
            inv.d,
            rat_str(&inv.delta),
            rat_str(&inv.e),
            rat_str(&inv.u)
        );
    }

    // A branched tree: center of self-intersection -2 carrying the twigs
    // [2,2], [2] and [3] (tips outward, inner ends on the center).
    let g = DualGraph::new(
        vec![(0, -2), (1, -2), (2, -2), (3, -2), (4, -3)],
        vec![(1, 2), (2, 0), (3, 0), (4, 0)],
    )
    .unwrap();
    let bk = bark(&g).unwrap();
    println!("bark coefficients of the star with twigs [2,2], [2], [3]:");
    for (v, c) in &bk.coeffs {
        println!("  vertex {v}: {}", rat_str(c));
    }
    let square = bark_square(&g).unwrap();
    let (delta, e, t) = divisor_delta_e(&g).unwrap();
    println!("t = {t} twigs, delta(D) = {}, e(D) = {}", rat_str(&delta), rat_str(&e));
    println!("(Bk)^2 = {} = -e(D): {}", rat_str(&square), square == -e);
}
