//! The five four-cusp, ten-twig case analyses: parameterized M/I
//! polynomials, elimination to a single Diophantine relation, and a residue
//! (or integer-root) certificate that the relation has no admissible
//! solutions.
//!
//! Run with: cargo run -p twigcalc --example four_cusp_cases

use twigcalc::curve::{four_cusp_case, four_cusp_twig_options, CaseCertificate};

fn main() {
    println!("leftover twig pairs with 1/a + 1/b = 2/3:");
    for (a, b) in four_cusp_twig_options() {
        println!("  ({a}, {b})");
    }

    for id in 1..=5u8 {
        let r = four_cusp_case(id).unwrap();
        println!(
            "\ncase {id}: T9 = {}, T10 = {} ({})",
            r.t9,
            r.t10,
            if r.t10_in_q1 { "both on q1" } else { "split over q1 and q2" }
        );
        println!("  q1 = {}", r.hn_q1);
        println!("  q2 = {}", r.hn_q2);
        for (name, poly) in &r.mi_polys {
            println!("  {name} = {poly}");
        }
        println!("  relation: {}", r.relation);
        match &r.certificate {
            CaseCertificate::Residue(cert) => println!(
                "  certificate: {} = {} (mod {}) is impossible (squares: {:?})",
                cert.form, cert.residue, cert.modulus, cert.squares
            ),
            CaseCertificate::IntegerRoot(cert) => println!(
                "  certificate: discriminant {} is not a perfect square",
                cert.discriminant
            ),
        }
        println!(
            "  sweep d <= {}, k <= {}: {} hits; case {}",
            r.sweep.d_max,
            r.sweep.k_max,
            r.sweep.hits.len(),
            if r.ok { "certified impossible" } else { "FAILED" }
        );
    }
}
