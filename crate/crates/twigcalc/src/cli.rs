//! Command-line front end. Every capability of the library is reachable as a
//! subcommand; `--json` switches to machine-readable output.
//!
//! Exit codes: 0 when everything succeeded (for `verify-paper`, when every
//! check passed), 1 when a verification failed, 2 on usage or input errors.

use crate::curve::{
    four_cusp_case, inequality_report, CaseCertificate, CurveConfig, InequalityReport,
};
use crate::dual_graph::{Chain, DualGraph};
use crate::hn::{hn_multiplicities, hn_resolve, mi_invariants, HNPairSeq};
use crate::numeric::{parse_rat, rat_str, Rat};
use crate::search::{
    classify_small_u, enum_chains_by_discriminant, five_cusp_search_exhaustive,
    five_cusp_search_with_bound, FiveCuspSolution,
};
use crate::twig::{bark, bark_square, twig_invariants};
use crate::verify::{verify_paper, VerifyOptions};
use crate::{Error, Result};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use num::rational::Ratio;
use std::collections::BTreeMap;
use std::io::Write;

#[derive(Parser)]
#[command(
    name = "twigcalc",
    about = "Exact calculus on weighted dual graphs of rational cuspidal plane curves",
    version
)]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ParamArgs {
    /// Bind a named exponent parameter, e.g. --param k=2. Repeatable.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    param: Vec<String>,
}

impl ParamArgs {
    fn parse(&self) -> Result<BTreeMap<String, u64>> {
        let mut map = BTreeMap::new();
        for p in &self.param {
            let (name, value) = p
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("--param needs NAME=VALUE, got {p:?}")))?;
            let value: u64 = value
                .parse()
                .map_err(|e| Error::Parse(format!("--param {name}: {e}")))?;
            map.insert(name.to_string(), value);
        }
        Ok(map)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Discriminant d = det(-Q) of a chain "[2,1,3]", a graph JSON file, or
    /// an inline JSON object.
    Disc { input: String },
    /// The d, delta, e, u invariants of a negative definite chain.
    Twigs { chain: String },
    /// Bark coefficients of a tree that is not a chain, plus (Bk)^2.
    Bark { input: String },
    /// All negative definite chains without (-1)-curves of one discriminant.
    EnumChains {
        #[arg(long)]
        disc: u64,
    },
    /// Classification searches.
    Classify {
        #[command(subcommand)]
        what: ClassifyCommand,
    },
    /// Exhaustive searches.
    Search {
        #[command(subcommand)]
        what: SearchCommand,
    },
    /// Hamburger-Noether pair operations.
    Hn {
        #[command(subcommand)]
        what: HnCommand,
    },
    /// Certify a curve configuration JSON file.
    CheckCurve {
        config: String,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Run one of the four-cusp case analyses.
    FourCusp {
        #[arg(long)]
        case: u8,
    },
    /// Run every registered check and print the report.
    VerifyPaper {
        /// Restrict to the checks of one section.
        #[arg(long)]
        section: Option<u8>,
        /// Run independent checks concurrently (report order is fixed).
        #[arg(long)]
        parallel: bool,
    },
}

#[derive(Subcommand)]
enum ClassifyCommand {
    /// The resolution chains with d(T') <= 4 and 0 < u < 1/2.
    #[command(name = "small-u")]
    SmallU,
}

#[derive(Subcommand)]
enum SearchCommand {
    /// The five-cusp, ten-twig candidate search.
    #[command(name = "five-cusps")]
    FiveCusps {
        /// Upper bound for the total u (default 1/2), as p/q.
        #[arg(long, value_name = "P/Q")]
        u_bound: Option<String>,
        /// Use the pruning-free reference search.
        #[arg(long)]
        dumb: bool,
    },
}

#[derive(Subcommand)]
enum HnCommand {
    /// Resolution dual graph of a pair sequence like "(3/2)" or
    /// "(9/6)(3/3)^k(3/2)" with --param k=1.
    Resolve {
        pairs: String,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Multiplicity sequence of a pair sequence.
    Mults {
        pairs: String,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// The M and I invariants of a pair sequence.
    Mi {
        pairs: String,
        #[command(flatten)]
        params: ParamArgs,
    },
}

/// Read graph-like input: an inline chain/JSON literal, or a file path.
fn read_graph_input(input: &str) -> Result<DualGraph> {
    let t = input.trim_start();
    if t.starts_with('[') || t.starts_with('{') {
        DualGraph::parse(input)
    } else {
        let content = std::fs::read_to_string(input)
            .map_err(|e| Error::Parse(format!("cannot read {input}: {e}")))?;
        DualGraph::parse(&content)
    }
}

fn chain_json(c: &Chain) -> serde_json::Value {
    serde_json::Value::Array(c.weights().iter().map(|&w| serde_json::json!(w)).collect())
}

fn rat_json(r: &Rat) -> serde_json::Value {
    serde_json::Value::String(rat_str(r))
}

fn solutions_json(sols: &[FiveCuspSolution]) -> serde_json::Value {
    let arr: Vec<serde_json::Value> = sols
        .iter()
        .map(|s| {
            serde_json::json!({
                "cusps": s.chains().iter().map(chain_json).collect::<Vec<_>>(),
                "per_cusp": s
                    .per_cusp
                    .iter()
                    .map(|(u, d)| serde_json::json!({"u": rat_str(u), "delta": rat_str(d)}))
                    .collect::<Vec<_>>(),
                "delta_D": rat_str(&s.delta_d),
                "e_D": rat_str(&s.e_d),
            })
        })
        .collect();
    serde_json::Value::Array(arr)
}

fn inequality_report_json(r: &InequalityReport) -> serde_json::Value {
    let surface = &r.surface;
    serde_json::json!({
        "degree": surface.degree,
        "cusps": surface.cusp_count,
        "E_self": surface.e_self,
        "gamma": surface.gamma,
        "blowups": surface.blowups,
        "K_sq": surface.k_sq,
        "component_count": surface.component_count,
        "twig_count": surface.twig_count,
        "delta_D": surface.delta_d.as_ref().map(rat_str),
        "e_D": surface.e_d.as_ref().map(rat_str),
        "K_dot_K_plus_D": surface.k_dot_k_plus_d,
        "P_sq": surface.p_sq.as_ref().map(rat_str),
        "h0_2K_plus_D": surface.h0_2kd,
        "epsilon": r.epsilon,
        "star": r.star.as_ref().map(|s| serde_json::json!({
            "lhs": rat_str(&s.lhs),
            "mid": rat_str(&s.mid),
            "rhs": rat_str(&s.rhs),
            "holds": s.holds,
            "P_dot_D": rat_str(&s.p_dot_d),
            "P_dot_E": rat_str(&s.p_dot_e),
        })),
        "diamond": r.diamond.as_ref().map(|d| serde_json::json!({
            "lhs": rat_str(&d.lhs),
            "holds": d.holds,
            "h0_plus_e": d.h0_plus_e.as_ref().map(rat_str),
        })),
        "certificate": r.certificate.to_string(),
        "certificate_reasons": r.certificate_reasons,
        "assumptions": r.assumptions,
        "divisor": serde_json::from_str::<serde_json::Value>(&surface.divisor.to_json()).unwrap(),
    })
}

fn render_inequality_report(r: &InequalityReport, out: &mut dyn Write) -> std::io::Result<()> {
    let s = &r.surface;
    writeln!(out, "degree {}, {} cusps", s.degree, s.cusp_count)?;
    writeln!(
        out,
        "E^2 = {}, gamma = {}, s = {} blow-ups, K^2 = {}, #D = {}, t = {}",
        s.e_self, s.gamma, s.blowups, s.k_sq, s.component_count, s.twig_count
    )?;
    match (&s.delta_d, &s.e_d) {
        (Some(d), Some(e)) => writeln!(out, "delta(D) = {}, e(D) = {}", rat_str(d), rat_str(e))?,
        _ => writeln!(out, "delta(D), e(D): undefined (a maximal twig is not negative definite)")?,
    }
    writeln!(
        out,
        "K.(K+D) = {}, P^2 = {}, h0(2K+D) = {}",
        s.k_dot_k_plus_d,
        s.p_sq.as_ref().map(rat_str).unwrap_or_else(|| "undefined".into()),
        s.h0_2kd.map(|h| h.to_string()).unwrap_or_else(|| "unknown".into())
    )?;
    if let Some(star) = &r.star {
        writeln!(
            out,
            "(*)  {} <= {} <= {}  [{}]   (P.D = {}, P.E = {})",
            rat_str(&star.lhs),
            rat_str(&star.mid),
            rat_str(&star.rhs),
            if star.holds { "holds" } else { "VIOLATED" },
            rat_str(&star.p_dot_d),
            rat_str(&star.p_dot_e),
        )?;
    }
    if let Some(d) = &r.diamond {
        writeln!(
            out,
            "(<>) P^2 + 2 = {} <= 5  [{}]",
            rat_str(&d.lhs),
            if d.holds { "holds" } else { "VIOLATED" }
        )?;
    }
    writeln!(out, "certificate: {}", r.certificate)?;
    for reason in &r.certificate_reasons {
        writeln!(out, "  - {reason}")?;
    }
    writeln!(out, "assumptions:")?;
    for a in &r.assumptions {
        writeln!(out, "  - {a}")?;
    }
    Ok(())
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    let json = cli.json;
    match cli.command {
        Command::Disc { input } => {
            let g = read_graph_input(&input)?;
            let d = g.discriminant();
            if json {
                let _ = writeln!(out, "{}", serde_json::json!({ "discriminant": d.to_string() }));
            } else {
                let _ = writeln!(out, "{d}");
            }
            Ok(0)
        }
        Command::Twigs { chain } => {
            let c = Chain::parse(&chain)?;
            let inv = twig_invariants(&c)?;
            if json {
                let _ = writeln!(
                    out,
                    "{}",
                    serde_json::json!({
                        "chain": chain_json(&c),
                        "d": inv.d.to_string(),
                        "delta": rat_str(&inv.delta),
                        "e": rat_str(&inv.e),
                        "u": rat_str(&inv.u),
                    })
                );
            } else {
                let _ = writeln!(
                    out,
                    "d = {}, delta = {}, e = {}, u = {}",
                    inv.d,
                    rat_str(&inv.delta),
                    rat_str(&inv.e),
                    rat_str(&inv.u)
                );
            }
            Ok(0)
        }
        Command::Bark { input } => {
            let g = read_graph_input(&input)?;
            let bk = bark(&g)?;
            let square = bark_square(&g)?;
            if json {
                let coeffs: serde_json::Map<String, serde_json::Value> = bk
                    .coeffs
                    .iter()
                    .map(|(v, c)| (v.to_string(), rat_json(c)))
                    .collect();
                let _ = writeln!(
                    out,
                    "{}",
                    serde_json::json!({ "coefficients": coeffs, "bark_square": rat_str(&square) })
                );
            } else {
                for (v, c) in &bk.coeffs {
                    let _ = writeln!(out, "vertex {v}: {}", rat_str(c));
                }
                let _ = writeln!(out, "(Bk)^2 = {}", rat_str(&square));
            }
            Ok(0)
        }
        Command::EnumChains { disc } => {
            let chains = enum_chains_by_discriminant(disc)?;
            let rendered: Vec<String> = chains.iter().map(|c| c.to_string()).collect();
            if json {
                let _ = writeln!(
                    out,
                    "{}",
                    serde_json::Value::Array(chains.iter().map(chain_json).collect())
                );
            } else {
                let _ = writeln!(out, "[{}]", rendered.join(","));
            }
            Ok(0)
        }
        Command::Classify { what: ClassifyCommand::SmallU } => {
            let table = classify_small_u();
            if json {
                let rows: Vec<serde_json::Value> = table
                    .iter()
                    .map(|e| {
                        serde_json::json!({
                            "chain": chain_json(e.chain.full()),
                            "u": rat_str(&e.u_bar),
                            "delta": rat_str(&e.delta_bar),
                        })
                    })
                    .collect();
                let _ = writeln!(out, "{}", serde_json::Value::Array(rows));
            } else {
                for e in &table {
                    let _ = writeln!(
                        out,
                        "{}  u = {}, delta = {}",
                        e.chain.full(),
                        rat_str(&e.u_bar),
                        rat_str(&e.delta_bar)
                    );
                }
            }
            Ok(0)
        }
        Command::Search { what: SearchCommand::FiveCusps { u_bound, dumb } } => {
            let bound = match u_bound {
                Some(s) => parse_rat(&s)
                    .ok_or_else(|| Error::Parse(format!("--u-bound: bad rational {s:?}")))?,
                None => Ratio::new(1.into(), 2.into()),
            };
            let sols = if dumb {
                five_cusp_search_exhaustive(&bound)
            } else {
                five_cusp_search_with_bound(&bound)
            };
            if json {
                let _ = writeln!(out, "{}", solutions_json(&sols));
            } else {
                let _ = writeln!(out, "{} solutions", sols.len());
                for s in &sols {
                    let chains: Vec<String> = s.chains().iter().map(|c| c.to_string()).collect();
                    let _ = writeln!(
                        out,
                        "{{{}}}  delta(D) = {}, e(D) = {}",
                        chains.join(", "),
                        rat_str(&s.delta_d),
                        rat_str(&s.e_d)
                    );
                }
            }
            Ok(0)
        }
        Command::Hn { what } => {
            let (pairs_str, params, mode) = match &what {
                HnCommand::Resolve { pairs, params } => (pairs, params, 0u8),
                HnCommand::Mults { pairs, params } => (pairs, params, 1),
                HnCommand::Mi { pairs, params } => (pairs, params, 2),
            };
            let seq = HNPairSeq::parse(pairs_str, &params.parse()?)?;
            match mode {
                0 => {
                    let (g, _) = hn_resolve(&seq)?;
                    if json {
                        let _ = writeln!(out, "{}", g.to_json());
                    } else if let Some(c) = g.as_chain() {
                        // Orient chains with the smaller arm first.
                        let canonical = crate::search::ResolutionChain::from_full(c.clone())
                            .map(|rc| rc.full().clone())
                            .unwrap_or(c);
                        let _ = writeln!(out, "{canonical}");
                    } else {
                        let _ = writeln!(out, "{}", g.to_json());
                    }
                }
                1 => {
                    let m = hn_multiplicities(&seq)?;
                    if json {
                        let arr: Vec<serde_json::Value> =
                            m.0.iter().map(|x| serde_json::json!(x.to_string())).collect();
                        let _ = writeln!(out, "{}", serde_json::Value::Array(arr));
                    } else {
                        let _ = writeln!(out, "{m}");
                    }
                }
                _ => {
                    let (m, i) = mi_invariants(&seq)?;
                    if json {
                        let _ = writeln!(
                            out,
                            "{}",
                            serde_json::json!({"M": m.to_string(), "I": i.to_string()})
                        );
                    } else {
                        let _ = writeln!(out, "M = {m}, I = {i}");
                    }
                }
            }
            Ok(0)
        }
        Command::CheckCurve { config, params } => {
            let content = std::fs::read_to_string(&config)
                .map_err(|e| Error::Parse(format!("cannot read {config}: {e}")))?;
            let cfg = CurveConfig::from_json(&content, &params.parse()?)?;
            let report = inequality_report(&cfg)?;
            if json {
                let _ = writeln!(out, "{}", inequality_report_json(&report));
            } else {
                let _ = render_inequality_report(&report, out);
            }
            Ok(0)
        }
        Command::FourCusp { case } => {
            let report = four_cusp_case(case)?;
            if json {
                let cert = match &report.certificate {
                    CaseCertificate::Residue(r) => serde_json::json!({
                        "kind": "residue",
                        "modulus": r.modulus,
                        "form": r.form,
                        "residue": r.residue,
                        "squares_mod": r.squares,
                        "congruence_derived": r.congruence_derived,
                        "impossible": r.impossible,
                    }),
                    CaseCertificate::IntegerRoot(c) => serde_json::json!({
                        "kind": "integer_root",
                        "discriminant": c.discriminant.to_string(),
                        "is_perfect_square": c.is_perfect_square,
                    }),
                };
                let _ = writeln!(
                    out,
                    "{}",
                    serde_json::json!({
                        "case": report.case_id,
                        "t9": chain_json(&report.t9),
                        "t10": chain_json(&report.t10),
                        "t10_in_q1": report.t10_in_q1,
                        "q1": report.hn_q1,
                        "q2": report.hn_q2,
                        "mi_polynomials": report
                            .mi_polys
                            .iter()
                            .map(|(n, p)| serde_json::json!({"name": n, "poly": p.to_string()}))
                            .collect::<Vec<_>>(),
                        "printed_polynomials_match": report.printed_polys_match,
                        "star_structure_ok": report.star_structure_ok,
                        "relation": report.relation,
                        "relation_matches_printed": report.relation_matches_printed,
                        "certificate": cert,
                        "certificate_ok": report.certificate_ok,
                        "sweep": {
                            "d_max": report.sweep.d_max,
                            "k_max": report.sweep.k_max,
                            "hits": report.sweep.hits,
                        },
                        "ok": report.ok,
                    })
                );
            } else {
                let _ = writeln!(
                    out,
                    "case {}: T9 = {}, T10 = {} ({})",
                    report.case_id,
                    report.t9,
                    report.t10,
                    if report.t10_in_q1 { "both on q1" } else { "split over q1, q2" }
                );
                let _ = writeln!(out, "q1: {}", report.hn_q1);
                let _ = writeln!(out, "q2: {}", report.hn_q2);
                for (name, poly) in &report.mi_polys {
                    let _ = writeln!(out, "{name} = {poly}");
                }
                let _ = writeln!(
                    out,
                    "relation: {}  [{}]",
                    report.relation,
                    if report.relation_matches_printed { "matches" } else { "MISMATCH" }
                );
                match &report.certificate {
                    CaseCertificate::Residue(r) => {
                        let _ = writeln!(
                            out,
                            "certificate: {} = {} (mod {}) has no solution; squares mod {} are {:?}",
                            r.form, r.residue, r.modulus, r.modulus, r.squares
                        );
                    }
                    CaseCertificate::IntegerRoot(c) => {
                        let _ = writeln!(
                            out,
                            "certificate: discriminant {} is not a perfect square",
                            c.discriminant
                        );
                    }
                }
                let _ = writeln!(
                    out,
                    "sweep d <= {}, k <= {}: {} solutions",
                    report.sweep.d_max,
                    report.sweep.k_max,
                    report.sweep.hits.len()
                );
                let _ = writeln!(out, "result: {}", if report.ok { "certified" } else { "FAILED" });
            }
            Ok(if report.ok { 0 } else { 1 })
        }
        Command::VerifyPaper { section, parallel } => {
            let report = verify_paper(&VerifyOptions {
                section,
                parallel,
                ..Default::default()
            });
            if json {
                let _ = writeln!(out, "{}", report.to_json());
            } else {
                let _ = write!(out, "{}", report.render_text());
            }
            Ok(if report.all_passed() { 0 } else { 1 })
        }
    }
}

/// Parse and execute; suitable for tests. `args` includes the program name.
pub fn dispatch(args: &[&str], out: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let kind = e.kind();
            if kind == ErrorKind::DisplayHelp || kind == ErrorKind::DisplayVersion {
                let _ = write!(out, "{e}");
                return 0;
            }
            eprintln!("{e}");
            return 2;
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                // Bad or unsuitable input is a usage error; a configuration
                // that fails its consistency checks is a failed verification.
                Error::ImpossibleConfiguration(_) | Error::Internal(_) => 1,
                _ => 2,
            }
        }
    }
}

/// Entry point for the binary.
pub fn run() -> i32 {
    let args: Vec<String> = std::env::args().collect();
    let arg_refs: Vec<&str> = args.iter().map(|s| s.as_str()).collect();
    let mut stdout = std::io::stdout();
    dispatch(&arg_refs, &mut stdout)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_cli(args: &[&str]) -> (i32, String) {
        let mut full = vec!["twigcalc"];
        full.extend_from_slice(args);
        let mut out = Vec::new();
        let code = dispatch(&full, &mut out);
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn disc_command() {
        let (code, out) = run_cli(&["disc", "[2,1,3]"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "1");
        let (code, out) = run_cli(&["--json", "disc", "[2,2]"]);
        assert_eq!(code, 0);
        assert!(out.contains("\"discriminant\":\"3\""));
    }

    #[test]
    fn enum_chains_command() {
        let (code, out) = run_cli(&["enum-chains", "--disc", "5"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "[[2,2,2,2],[2,3],[3,2],[5]]");
    }

    #[test]
    fn twigs_command() {
        let (code, out) = run_cli(&["twigs", "[2,2,3]"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "d = 7, delta = 1/7, e = 5/7, u = 4/7");
    }

    #[test]
    fn hn_commands() {
        let (code, out) = run_cli(&["hn", "resolve", "(3/2)"]);
        assert_eq!(code, 0);
        assert!(out.trim() == "[3,1,2]" || out.trim() == "[2,1,3]");
        let (code, out) = run_cli(&["hn", "mults", "(16/9)"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "(9,7,2,2,2,1,1)");
        let (code, out) = run_cli(&["hn", "mi", "(16/9)"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "M = 24, I = 144");
        // Parameter binding.
        let (code, out) = run_cli(&["hn", "mi", "(9/6)(3/3)^k(3/2)", "--param", "k=1"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "M = 19, I = 69");
        // Unbound parameter is a usage error.
        let (code, _) = run_cli(&["hn", "mi", "(9/6)(3/3)^k(3/2)"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn classify_small_u_command() {
        let (code, out) = run_cli(&["classify", "small-u"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 4);
        assert!(out.contains("[2,1,3,2]  u = 2/5, delta = 7/10"));
    }

    #[test]
    fn search_command() {
        let (code, out) = run_cli(&["search", "five-cusps"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("7 solutions"));
    }

    #[test]
    fn four_cusp_command() {
        let (code, out) = run_cli(&["four-cusp", "--case", "1"]);
        assert_eq!(code, 0);
        assert!(out.contains("d^2 - 21d - 444 - 66k = 0"));
        assert!(out.contains("certified"));
        let (code, _) = run_cli(&["four-cusp", "--case", "9"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn check_curve_command() {
        let dir = std::env::temp_dir();
        let path = dir.join("twigcalc_test_quartic.json");
        std::fs::write(&path, r#"{"degree":4,"cusps":["(3/2)","(3/2)","(3/2)"]}"#).unwrap();
        let (code, out) = run_cli(&["check-curve", path.to_str().unwrap()]);
        assert_eq!(code, 0);
        assert!(out.contains("certificate: rectifiable"), "{out}");
        assert!(out.contains("VIOLATED"));
        // Malformed file: exit 2.
        std::fs::write(&path, "{ not json").unwrap();
        let (code, _) = run_cli(&["check-curve", path.to_str().unwrap()]);
        assert_eq!(code, 2);
        let _ = std::fs::remove_file(&path);
    }

    #[test]
    fn usage_errors() {
        let (code, _) = run_cli(&["disc"]);
        assert_eq!(code, 2);
        let (code, _) = run_cli(&["no-such-command"]);
        assert_eq!(code, 2);
        let (code, out) = run_cli(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("verify-paper"));
    }
}
