//! Run every registered check: enumerations, identities, searches,
//! eliminations and the derived conclusions, with a pass/fail line each.
//! Equivalent to `twigcalc verify-paper`.
//!
//! Run with: cargo run -p twigcalc --example full_verification

use twigcalc::verify::{verify_paper, VerifyOptions};

fn main() {
    let report = verify_paper(&VerifyOptions::default());
    print!("{}", report.render_text());
    std::process::exit(if report.all_passed() { 0 } else { 1 });
}
