//! Property suites: the algebraic identities of the calculus checked on
//! randomized inputs, plus oracle-equivalence tests for the enumerators.

use num::{Integer as _, One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use std::collections::BTreeSet;
use twigcalc::curve::{build_surface, Assumptions, CurveConfig};
use twigcalc::dual_graph::{check_det_formula, Chain, DualGraph};
use twigcalc::hn::{hn_multiplicities, hn_resolve, mi_invariants, validate_hn, HNPairSeq};
use twigcalc::numeric::{rat, Int};
use twigcalc::search::{enum_chains_by_discriminant, enum_resolution_chains};
use twigcalc::twig::{bark, bark_defining_property_violation, divisor_delta_e, quadratic_form, twig_invariants};

/// Random tree: `weights[i]` is `-(self-intersection)`, vertex `i >= 1`
/// attaches to a uniformly chosen earlier vertex.
fn tree_strategy(max_n: usize, wlo: i64, whi: i64) -> impl Strategy<Value = DualGraph> {
    prop::collection::vec((wlo..=whi, any::<prop::sample::Index>()), 1..=max_n).prop_map(|items| {
        let vertices: Vec<(u32, i64)> = items
            .iter()
            .enumerate()
            .map(|(i, (w, _))| (i as u32, -w))
            .collect();
        let edges: Vec<(u32, u32)> = items
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, (_, parent))| (parent.index(i) as u32, i as u32))
            .collect();
        DualGraph::new(vertices, edges).expect("tree construction is valid")
    })
}

fn chain_strategy(max_len: usize, wlo: i64, whi: i64) -> impl Strategy<Value = Chain> {
    prop::collection::vec(wlo..=whi, 1..=max_len).prop_map(Chain::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    /// d(S+T) = d(S)d(T) - d(S-S0)d(T-T0) on random one-edge joins.
    #[test]
    fn det_formula_holds(
        s in tree_strategy(8, 1, 9),
        t in tree_strategy(8, 1, 9),
        s0 in any::<prop::sample::Index>(),
        t0 in any::<prop::sample::Index>(),
    ) {
        let s0 = s.ids()[s0.index(s.len())];
        let t0 = t.ids()[t0.index(t.len())];
        prop_assert!(check_det_formula(&s, &t, s0, t0).unwrap());
    }

    /// The chain discriminant recursion equals the direct matrix determinant.
    #[test]
    fn recursion_equals_matrix(c in chain_strategy(8, 1, 9)) {
        prop_assert_eq!(c.discriminant(), c.to_graph().discriminant());
    }

    /// Definiteness is independent of vertex order and chain orientation.
    #[test]
    fn definiteness_order_invariant(
        g in tree_strategy(8, 0, 6),
        shuffle in any::<prop::sample::Index>(),
    ) {
        let reference = g.is_negative_definite().unwrap();
        // A deterministic permutation derived from the index.
        let mut order: Vec<u32> = g.ids().to_vec();
        let k = shuffle.index(order.len().max(1));
        order.rotate_left(k);
        order.reverse();
        prop_assert_eq!(g.is_negative_definite_in_order(&order).unwrap(), reference);
        if let Some(c) = g.as_chain() {
            prop_assert_eq!(
                c.is_negative_definite().unwrap(),
                c.reversed().is_negative_definite().unwrap()
            );
        }
    }

    /// Trees satisfy the handshake identity sum (beta - 2) = -2 and have
    /// p_a = 0 as full rational trees.
    #[test]
    fn tree_classification_identities(g in tree_strategy(10, 1, 9)) {
        let cls = g.classify().unwrap();
        let sum: i64 = cls.branching_numbers.values().map(|b| b - 2).sum();
        prop_assert_eq!(sum, -2);
        let all: BTreeSet<u32> = g.ids().iter().copied().collect();
        prop_assert_eq!(g.canonical_pairing(&all).unwrap().p_a, 0);
    }

    /// Bark: defining property, coefficient range and the square identity,
    /// with the closed form cross-checked against the linear solve inside
    /// `bark` itself.
    #[test]
    fn bark_properties(g in tree_strategy(10, 2, 7)) {
        let cls = g.classify().unwrap();
        prop_assume!(!cls.is_chain);
        let bk = bark(&g).unwrap();
        prop_assert!(bark_defining_property_violation(&g, &bk).unwrap().is_none());
        for c in bk.coeffs.values() {
            prop_assert!(c > &num::BigRational::zero() && c < &num::BigRational::one());
        }
        let (_, e, _) = divisor_delta_e(&g).unwrap();
        prop_assert_eq!(quadratic_form(&g, &bk), -e);
    }

    /// The second inequality is monotone in e(D): raising e never flips a
    /// violated instance back to satisfied.
    #[test]
    fn diamond_monotone_in_e(
        kd in -6i64..6,
        p in 0i64..200,
        q in 1i64..40,
        bump_p in 0i64..100,
        bump_q in 1i64..40,
    ) {
        let e_low = rat(p, q);
        let e_high = &e_low + rat(bump_p, bump_q);
        let (_, holds_low) = twigcalc::curve::diamond_from_parts(kd, &e_low);
        let (_, holds_high) = twigcalc::curve::diamond_from_parts(kd, &e_high);
        // violated(low) implies violated(high).
        prop_assert!(holds_high <= holds_low);
    }

    /// Random single characteristic pairs: the simulator's multiplicities
    /// match the quotient expansion and the M/I closed forms.
    #[test]
    fn hn_sum_identities(p in 2i64..40, delta in 1i64..80) {
        let c = p + delta;
        let seq = HNPairSeq::from_i64(&[(c, p)]);
        prop_assume!(validate_hn(&seq).is_ok());
        let (m, i) = mi_invariants(&seq).unwrap();
        let (graph, observed) = hn_resolve(&seq).unwrap();
        prop_assert_eq!(observed.sum(), m);
        prop_assert_eq!(observed.sum_of_squares(), i);
        prop_assert!(observed.is_non_increasing());
        prop_assert_eq!(hn_multiplicities(&seq).unwrap(), observed);
        // Resolution graph invariants.
        prop_assert!(graph.is_tree());
        prop_assert!(graph.contracts_to_point());
        prop_assert_eq!(graph.discriminant(), Int::one());
    }

    /// Multi-pair sequences with bounded total c: both sum identities hold
    /// with the multiplicity list produced independently by the simulator.
    #[test]
    fn hn_multi_pair_identities(
        p1 in 2i64..12,
        q1 in 1i64..5,
        scale in 2i64..5,
        p2 in 1i64..12,
    ) {
        // Build (c1, p1') with gcd g, then continue with (g, p2') coprime.
        let g = scale;
        let c1 = g * (p1 + q1);
        let p1v = g * p1;
        let mut p2v = p2 % g;
        if p2v == 0 { p2v = 1; }
        while num::integer::gcd(g, p2v) != 1 {
            p2v -= 1;
            if p2v == 0 { p2v = 1; }
        }
        let seq = HNPairSeq::from_i64(&[(c1, p1v), (g, p2v)]);
        prop_assume!(validate_hn(&seq).is_ok());
        prop_assume!(c1 + g <= 200);
        let (m, i) = mi_invariants(&seq).unwrap();
        let (_, observed) = hn_resolve(&seq).unwrap();
        prop_assert_eq!(observed.sum(), m);
        prop_assert_eq!(observed.sum_of_squares(), i);
        prop_assert_eq!(hn_multiplicities(&seq).unwrap(), observed);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// Noether and the multiplicity-sum identities on randomly generated
    /// buildable configurations.
    #[test]
    fn surface_identities(
        picks in prop::collection::vec(0usize..6, 1..4),
        pad in 0usize..2,
    ) {
        let pool: [&[(i64, i64)]; 6] = [
            &[(3, 2)],
            &[(5, 3)],
            &[(4, 3)],
            &[(7, 4)],
            &[(16, 9)],
            &[(9, 6), (3, 3), (3, 2)],
        ];
        let mut cusps: Vec<HNPairSeq> = picks.iter().map(|&i| HNPairSeq::from_i64(pool[i])).collect();
        for _ in 0..pad {
            cusps.push(HNPairSeq::from_i64(&[(3, 2)]));
        }
        // Pad with simple cusps until the genus sum is triangular.
        let mut sum = Int::zero();
        for c in &cusps {
            sum += hn_multiplicities(c).unwrap().genus_sum();
        }
        let degree = loop {
            if let Some(d) = twigcalc::numeric::degree_with_genus_sum(&sum) {
                if d >= Int::from(3) {
                    break d.to_i64().unwrap();
                }
            }
            cusps.push(HNPairSeq::from_i64(&[(3, 2)]));
            sum += Int::one();
        };
        let cfg = CurveConfig::new(degree, cusps.clone(), Assumptions::default()).unwrap();
        let report = build_surface(&cfg).unwrap();
        prop_assert_eq!(report.k_sq + report.component_count as i64, 10);
        let (mut sum_m, mut sum_i) = (Int::zero(), Int::zero());
        for seq in &cusps {
            let (m, i) = mi_invariants(seq).unwrap();
            sum_m += m;
            sum_i += i;
        }
        let d = Int::from(degree);
        prop_assert_eq!(Int::from(report.gamma) - Int::from(2) + Int::from(3) * &d, sum_m);
        prop_assert_eq!(Int::from(report.gamma) + &d * &d, sum_i);
        prop_assert_eq!(Int::from(report.k_dot_e), Int::from(report.gamma - 2));
    }
}

/// Oracle for the chain enumerator: depth-first extension with the direct
/// matrix determinant (not the two-term recursion) and pruning justified by
/// the strict growth of the discriminant under extension.
fn oracle_chains(n: u64, max_len: usize) -> Vec<Chain> {
    let target = Int::from(n);
    let mut out = Vec::new();
    let mut prefix: Vec<i64> = Vec::new();
    fn extend(prefix: &mut Vec<i64>, max_w: i64, max_len: usize, target: &Int, out: &mut Vec<Chain>) {
        if prefix.len() == max_len {
            return;
        }
        for w in 2..=max_w {
            prefix.push(w);
            let c = Chain::new(prefix.clone());
            let d = c.to_graph().discriminant();
            if d.is_positive() && &d <= target {
                if &d == target {
                    out.push(c);
                }
                extend(prefix, max_w, max_len, target, out);
            }
            prefix.pop();
            if prefix.is_empty() && Int::from(w) >= *target {
                break;
            }
        }
    }
    extend(&mut prefix, n as i64 + 1, max_len, &target, &mut out);
    out.sort();
    out
}

#[test]
fn enum_chains_matches_brute_force_up_to_30() {
    for n in 1..=30u64 {
        let expected = oracle_chains(n, 12);
        let got: Vec<Chain> = enum_chains_by_discriminant(n)
            .unwrap()
            .into_iter()
            .filter(|c| c.len() <= 12)
            .collect();
        assert_eq!(got, expected, "discriminant {n}");
    }
}

#[test]
fn enumerated_resolution_chains_satisfy_all_invariants() {
    let chains = enum_resolution_chains(12);
    assert!(chains.len() > 100);
    for rc in &chains {
        let full = rc.full();
        assert_eq!(full.discriminant(), Int::one(), "{full}");
        assert_eq!(full.weights().iter().filter(|&&w| w == 1).count(), 1, "{full}");
        let idx = full.weights().iter().position(|&w| w == 1).unwrap();
        assert!(idx > 0 && idx + 1 < full.len(), "(-1) must be interior in {full}");
        assert!(full.to_graph().contracts_to_point(), "{full}");
        assert!(rc.d_prime().gcd(rc.d_second()).is_one(), "{full}");
        // u >= 0 on both arms (resolution twigs), zero total only for [2,1,3].
        let up = twig_invariants(rc.t_prime()).unwrap().u;
        let us = twig_invariants(rc.t_second()).unwrap().u;
        assert!(up >= num::BigRational::zero() && us >= num::BigRational::zero(), "{full}");
        if full == &Chain::parse("[2,1,3]").unwrap() {
            assert!(rc.u_bar().is_zero());
        } else {
            assert!(rc.u_bar() > &num::BigRational::zero(), "{full}");
        }
        // delta <= e on each arm.
        let ip = twig_invariants(rc.t_prime()).unwrap();
        assert!(ip.delta <= ip.e, "{full}");
    }
}

#[test]
fn contraction_is_order_independent() {
    // For every enumerated chain, contracting along different eligible
    // vertices never changes the outcome.
    for rc in enum_resolution_chains(8) {
        let g = rc.full().to_graph();
        assert!(g.contracts_to_point());
        // Follow a different order: contract the highest-id eligible vertex
        // first at every step, manually.
        let mut cur = g;
        while !cur.is_empty() {
            let eligible: Vec<u32> = cur
                .ids()
                .iter()
                .filter(|&&v| cur.self_int(v) == -1 && cur.degree(v) <= 2)
                .copied()
                .collect();
            let &v = eligible.last().unwrap_or_else(|| panic!("stuck while contracting"));
            cur = cur.contract_once(v).unwrap();
        }
    }
}

#[test]
fn every_enumerated_chain_is_negative_definite() {
    for n in 2..=20u64 {
        for c in enum_chains_by_discriminant(n).unwrap() {
            assert!(c.is_negative_definite().unwrap(), "{c}");
        }
    }
}
