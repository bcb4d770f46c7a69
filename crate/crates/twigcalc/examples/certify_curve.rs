//! The rectifiability certifier on two classical curves: the tricuspidal
//! quartic and the four-cusp quintic. Both violate an inequality that any
//! non-rectifiable curve must satisfy, so both are certified rectifiable.
//!
//! Run with: cargo run -p twigcalc --example certify_curve

use twigcalc::curve::{build_surface, four_cusp_quintic, inequality_report, tricuspidal_quartic};
use twigcalc::numeric::rat_str;

fn main() {
    for (name, cfg) in [
        ("tricuspidal quartic", tricuspidal_quartic()),
        ("four-cusp quintic", four_cusp_quintic()),
    ] {
        println!("== {name} (degree {}, {} cusps)", cfg.degree(), cfg.cusp_count());
        let surface = build_surface(&cfg).unwrap();
        println!(
            "E^2 = {}, gamma = {}, K^2 = {}, #D = {}, t = {} twigs",
            surface.e_self, surface.gamma, surface.k_sq, surface.component_count, surface.twig_count
        );
        println!(
            "delta(D) = {}, e(D) = {}, P^2 = {}",
            surface.delta_d.as_ref().map(rat_str).unwrap(),
            surface.e_d.as_ref().map(rat_str).unwrap(),
            surface.p_sq.as_ref().map(rat_str).unwrap()
        );
        let report = inequality_report(&cfg).unwrap();
        let star = report.star.as_ref().unwrap();
        println!(
            "(*)  {} <= {} <= {}  [{}]",
            rat_str(&star.lhs),
            rat_str(&star.mid),
            rat_str(&star.rhs),
            if star.holds { "holds" } else { "violated" }
        );
        println!("certificate: {}", report.certificate);
        for reason in &report.certificate_reasons {
            println!("  - {reason}");
        }
        println!();
    }
}
