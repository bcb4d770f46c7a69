//! Discriminants of weighted chains and trees, the gluing formula, and
//! blow-down contraction.
//!
//! Run with: cargo run -p twigcalc --example discriminants

use twigcalc::dual_graph::{check_det_formula, Chain, DualGraph};

fn main() {
    // d(T) = det(-Q(T)); the empty divisor has d = 1.
    for s in ["[]", "[2]", "[2,1,3]", "[2,2,3]", "[5,2,1,3,2,2,3]"] {
        let c = Chain::parse(s).unwrap();
        println!("d({s}) = {}", c.discriminant());
    }

    // The [(2)_k, 3] family: d = 2k + 3.
    for k in 0..=5 {
        let mut w = vec![2; k];
        w.push(3);
        let c = Chain::new(w);
        println!("d({c}) = {}", c.discriminant());
    }

    // Gluing formula d(S+T) = d(S)d(T) - d(S-S0)d(T-T0) on a tip join.
    let s = Chain::parse("[2]").unwrap().to_graph();
    let t = Chain::parse("[3]").unwrap().to_graph();
    println!(
        "gluing [2]--[3] satisfies the determinant formula: {}",
        check_det_formula(&s, &t, 0, 0).unwrap()
    );

    // Blow-down: [2,1,3] contracts to a point through [1,2] and [1].
    let mut g = Chain::parse("[2,1,3]").unwrap().to_graph();
    println!("contracting [2,1,3]:");
    while !g.is_empty() {
        let v = g
            .ids()
            .iter()
            .copied()
            .find(|&v| g.self_int(v) == -1 && g.degree(v) <= 2)
            .expect("a (-1)-curve is always available here");
        g = g.contract_once(v).unwrap();
        println!("  -> {}", g.as_chain().unwrap());
    }

    // Graphs can also come from JSON.
    let json = r#"{"vertices":[{"id":0,"weight":-2},{"id":1,"weight":-1},{"id":2,"weight":-3}],
                   "edges":[[0,1],[1,2]]}"#;
    let g = DualGraph::from_json(json).unwrap();
    println!(
        "JSON graph: chain {}, discriminant {}, negative definite: {}",
        g.as_chain().unwrap(),
        g.discriminant(),
        g.is_negative_definite().unwrap()
    );
}
