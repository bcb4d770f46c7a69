//! Bounded exhaustive enumerators and classification searches: chains with a
//! given discriminant, resolution chains generated by a blow-up grammar, the
//! small-u classification, closed-form u-families, and the five-cusp search
//! with its degree elimination.
//!
//! All searches are deterministic: results are sorted by component count and
//! then lexicographically by weights.

use crate::dual_graph::Chain;
use crate::hn::{hn_multiplicities, hn_pairs_from_chain};
use crate::numeric::{degree_with_genus_sum, rat, Int, Rat};
use crate::twig::twig_invariants;
use crate::{Error, Result};
use num::{Integer, One, Zero};
use std::collections::BTreeSet;

/// All negative definite chains with no (-1)-components and discriminant
/// exactly `n`, in lexicographic order. Orientation-distinct chains are both
/// listed. Generated by extending chains at the inner end; the discriminant
/// strictly increases with each extension, which bounds the search.
pub fn enum_chains_by_discriminant(n: u64) -> Result<Vec<Chain>> {
    if n == 0 {
        return Err(Error::InvalidArgument("discriminant must be at least 1".into()));
    }
    let target = Int::from(n);
    let mut out = Vec::new();
    let mut prefix: Vec<i64> = Vec::new();

    fn extend(prefix: &mut Vec<i64>, d_prev: &Int, d_cur: &Int, target: &Int, out: &mut Vec<Chain>) {
        let mut w = 2i64;
        loop {
            let d_next = Int::from(w) * d_cur - d_prev;
            if &d_next > target {
                break;
            }
            prefix.push(w);
            if &d_next == target {
                out.push(Chain::new(prefix.clone()));
            } else {
                extend(prefix, d_cur, &d_next, target, out);
            }
            prefix.pop();
            w += 1;
        }
    }

    extend(&mut prefix, &Int::zero(), &Int::one(), &target, &mut out);
    out.sort();
    Ok(out)
}

/// A chain-shaped exceptional divisor of a cusp resolution: `T' + C + T''`
/// with a unique interior (-1)-curve `C`, negative definite, discriminant 1,
/// contractible to a point, and coprime arm discriminants.
///
/// Canonical orientation: the arm with the smaller discriminant comes first,
/// so `full = T' ++ [1] ++ reverse(T'')` with `d(T') < d(T'')`. `t_prime` and
/// `t_second` are both stored tip first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionChain {
    full: Chain,
    minus_one_index: usize,
    t_prime: Chain,
    t_second: Chain,
    d_prime: Int,
    d_second: Int,
    u_bar: Rat,
    delta_bar: Rat,
    e_bar: Rat,
}

impl PartialOrd for ResolutionChain {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ResolutionChain {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.full.len(), &self.full).cmp(&(other.full.len(), &other.full))
    }
}

impl ResolutionChain {
    /// Validate and canonicalize a full chain. Errors if any of the four
    /// defining invariants fails.
    pub fn from_full(chain: Chain) -> Result<Self> {
        let w = chain.weights();
        let ones: Vec<usize> = w.iter().enumerate().filter(|(_, &x)| x == 1).map(|(i, _)| i).collect();
        if ones.len() != 1 {
            return Err(Error::InvalidArgument(format!(
                "{chain} must contain exactly one (-1)-component, found {}",
                ones.len()
            )));
        }
        let i = ones[0];
        if i == 0 || i == w.len() - 1 {
            return Err(Error::InvalidArgument(format!("the (-1)-component of {chain} is a tip")));
        }
        if !chain.is_negative_definite()? {
            return Err(Error::NotNegativeDefinite(chain.to_string()));
        }
        if !chain.discriminant().is_one() {
            return Err(Error::InvalidArgument(format!(
                "{chain} has discriminant {}, expected 1",
                chain.discriminant()
            )));
        }
        let left = Chain::new(w[..i].to_vec());
        let right_rev = Chain::new(w[i + 1..].to_vec()).reversed();
        let (dl, dr) = (left.discriminant(), right_rev.discriminant());
        let (full, t_prime, t_second, d_prime, d_second, minus_one_index) = if dl <= dr {
            (chain.clone(), left, right_rev, dl, dr, i)
        } else {
            (chain.reversed(), right_rev, left, dr, dl, w.len() - 1 - i)
        };
        if !d_prime.gcd(&d_second).is_one() {
            return Err(Error::InvalidArgument(format!(
                "arm discriminants {d_prime} and {d_second} of {full} are not coprime"
            )));
        }
        if !full.to_graph().contracts_to_point() {
            return Err(Error::InvalidArgument(format!("{full} does not contract to a point")));
        }
        let inv_p = twig_invariants(&t_prime)?;
        let inv_s = twig_invariants(&t_second)?;
        Ok(ResolutionChain {
            full,
            minus_one_index,
            u_bar: &inv_p.u + &inv_s.u,
            delta_bar: &inv_p.delta + &inv_s.delta,
            e_bar: &inv_p.e + &inv_s.e,
            t_prime,
            t_second,
            d_prime,
            d_second,
        })
    }

    pub fn parse(s: &str) -> Result<Self> {
        ResolutionChain::from_full(Chain::parse(s)?)
    }

    pub fn full(&self) -> &Chain {
        &self.full
    }

    pub fn minus_one_index(&self) -> usize {
        self.minus_one_index
    }

    /// The smaller arm, tip first.
    pub fn t_prime(&self) -> &Chain {
        &self.t_prime
    }

    /// The larger arm, tip first.
    pub fn t_second(&self) -> &Chain {
        &self.t_second
    }

    pub fn d_prime(&self) -> &Int {
        &self.d_prime
    }

    pub fn d_second(&self) -> &Int {
        &self.d_second
    }

    /// `u(T') + u(T'')`.
    pub fn u_bar(&self) -> &Rat {
        &self.u_bar
    }

    /// `delta(T') + delta(T'')`.
    pub fn delta_bar(&self) -> &Rat {
        &self.delta_bar
    }

    /// `e(T') + e(T'') = delta_bar + u_bar`.
    pub fn e_bar(&self) -> &Rat {
        &self.e_bar
    }
}

/// Grammar state: a chain with a single (-1)-curve, grown one blow-up at a
/// time with the center always on the last exceptional curve. Blowing up a
/// free point appends at the tip; blowing up an intersection point inserts
/// the new curve between the (-1) and a neighbor, bumping both.
#[derive(Clone)]
struct GrammarState {
    weights: Vec<i64>,
    pos: usize,
}

impl GrammarState {
    fn start() -> Self {
        GrammarState { weights: vec![1], pos: 0 }
    }

    fn is_final(&self) -> bool {
        self.pos > 0 && self.pos + 1 < self.weights.len()
    }

    fn children(&self) -> Vec<GrammarState> {
        let mut out = Vec::new();
        let n = self.weights.len();
        if self.pos + 1 == n {
            // Free point of the tip (-1)-curve: append a fresh (-1).
            let mut w = self.weights.clone();
            w[self.pos] += 1;
            w.push(1);
            out.push(GrammarState { weights: w, pos: n });
        }
        if self.pos > 0 {
            // Intersection with the left neighbor.
            let mut w = self.weights.clone();
            w[self.pos - 1] += 1;
            w[self.pos] += 1;
            w.insert(self.pos, 1);
            out.push(GrammarState { weights: w, pos: self.pos });
        }
        if self.pos + 1 < n {
            // Intersection with the right neighbor.
            let mut w = self.weights.clone();
            w[self.pos] += 1;
            w[self.pos + 1] += 1;
            w.insert(self.pos + 1, 1);
            out.push(GrammarState { weights: w, pos: self.pos + 1 });
        }
        out
    }

    /// Discriminants of the two arms around the (-1)-curve.
    fn arm_discriminants(&self) -> (Int, Int) {
        let left = Chain::new(self.weights[..self.pos].to_vec());
        let right = Chain::new(self.weights[self.pos + 1..].to_vec());
        (left.discriminant(), right.discriminant())
    }
}

fn grammar_collect(
    max_components: usize,
    prune: &dyn Fn(&GrammarState) -> bool,
    state: GrammarState,
    out: &mut BTreeSet<Chain>,
) {
    if state.weights.len() > max_components || prune(&state) {
        return;
    }
    if state.is_final() {
        let rc = ResolutionChain::from_full(Chain::new(state.weights.clone()))
            .expect("grammar states satisfy the resolution-chain invariants");
        out.insert(rc.full().clone());
    }
    for child in state.children() {
        grammar_collect(max_components, prune, child, out);
    }
}

/// Every chain-shaped exceptional divisor of a cusp resolution with at most
/// `max_components` components: the forward blow-up grammar restricted to
/// chains, deduplicated up to orientation and sorted by (component count,
/// weights).
pub fn enum_resolution_chains(max_components: usize) -> Vec<ResolutionChain> {
    enum_resolution_chains_pruned(max_components, &|_| false)
}

fn enum_resolution_chains_pruned(
    max_components: usize,
    prune: &dyn Fn(&GrammarState) -> bool,
) -> Vec<ResolutionChain> {
    let mut set = BTreeSet::new();
    grammar_collect(max_components, prune, GrammarState::start(), &mut set);
    let mut chains: Vec<ResolutionChain> = set
        .into_iter()
        .map(|c| ResolutionChain::from_full(c).expect("already validated"))
        .collect();
    chains.sort();
    chains
}

/// One row of the small-u classification.
#[derive(Clone, Debug)]
pub struct SmallUEntry {
    pub chain: ResolutionChain,
    pub u_bar: Rat,
    pub delta_bar: Rat,
}

/// The resolution chains with `d(T') <= 4` and `0 < u_bar < 1/2`. The search
/// is finite: the u-family formulas grow monotonically in the tail length, so
/// every candidate has at most 5 components (cross-checked by
/// [`verify_u_families`]); exactly four chains qualify.
pub fn classify_small_u() -> Vec<SmallUEntry> {
    let half = rat(1, 2);
    enum_resolution_chains(10)
        .into_iter()
        .filter(|rc| {
            rc.d_prime() <= &Int::from(4)
                && rc.u_bar() > &Rat::zero()
                && rc.u_bar() < &half
        })
        .map(|rc| SmallUEntry {
            u_bar: rc.u_bar().clone(),
            delta_bar: rc.delta_bar().clone(),
            chain: rc,
        })
        .collect()
}

/// One verified member of a u-family.
#[derive(Clone, Debug)]
pub struct UFamilyCase {
    pub family: &'static str,
    pub k: u32,
    pub full: Chain,
    pub u_bar: Rat,
    pub closed_form: Rat,
    pub ok: bool,
}

/// Report of [`verify_u_families`].
#[derive(Clone, Debug)]
pub struct UFamilyReport {
    pub cases: Vec<UFamilyCase>,
    /// Every enumerated resolution chain with small arm [2], [2,2], [3] or
    /// [4] and tail within the component budget matched its family pattern.
    pub completeness_ok: bool,
    pub all_ok: bool,
}

struct UFamily {
    name: &'static str,
    t_prime: &'static [i64],
    /// Tail appended beyond `T' + C` in full-chain order (inner end first).
    base_tail: &'static [i64],
    /// u_bar(k) = a_num/a_den - b/(c k + d).
    closed: (i64, i64, i64, i64, i64),
}

/// The four one-parameter families of resolution chains with small first arm:
/// full chains `T' + [1] + base_tail + (2)_k`.
const U_FAMILIES: [UFamily; 4] = [
    UFamily { name: "T'=[2]", t_prime: &[2], base_tail: &[3], closed: (1, 1, 3, 2, 3) },
    UFamily { name: "T'=[2,2]", t_prime: &[2, 2], base_tail: &[4], closed: (4, 3, 4, 3, 4) },
    UFamily { name: "T'=[3]", t_prime: &[3], base_tail: &[2, 3], closed: (1, 1, 4, 3, 5) },
    UFamily { name: "T'=[4]", t_prime: &[4], base_tail: &[2, 2, 3], closed: (1, 1, 5, 4, 7) },
];

fn family_full_chain(fam: &UFamily, k: u32) -> Chain {
    let mut w = fam.t_prime.to_vec();
    w.push(1);
    w.extend_from_slice(fam.base_tail);
    w.extend(std::iter::repeat(2).take(k as usize));
    Chain::new(w)
}

fn family_closed_form(fam: &UFamily, k: u32) -> Rat {
    let (a_num, a_den, b, c, d) = fam.closed;
    rat(a_num, a_den) - Rat::new(Int::from(b), Int::from(c * k as i64 + d))
}

/// Build every family member for `k = 0..=k_max`, verify the four
/// resolution-chain invariants and the closed-form u-value, and check family
/// completeness: every resolution chain whose smaller arm is [2], [2,2], [3]
/// or [4] and whose larger arm has at most `k_max + 3` components lies in the
/// corresponding family.
pub fn verify_u_families(k_max: u32) -> UFamilyReport {
    let mut cases = Vec::new();
    let mut family_members: BTreeSet<Chain> = BTreeSet::new();
    for fam in &U_FAMILIES {
        // Membership extends two steps past k_max so that the completeness
        // sweep below (which admits larger arms of up to k_max + 3
        // components) always has the matching family member available.
        for k in 0..=k_max + 2 {
            let full = family_full_chain(fam, k);
            let closed_form = family_closed_form(fam, k);
            let (u_bar, ok) = match ResolutionChain::from_full(full.clone()) {
                Ok(rc) => {
                    family_members.insert(rc.full().clone());
                    let ok = rc.u_bar() == &closed_form
                        && rc.d_prime().gcd(rc.d_second()).is_one()
                        && Chain::new(fam.t_prime.to_vec()) == *rc.t_prime();
                    (rc.u_bar().clone(), ok)
                }
                Err(_) => (Rat::zero(), false),
            };
            if k <= k_max {
                cases.push(UFamilyCase { family: fam.name, k, full, u_bar, closed_form, ok });
            } else if !ok {
                cases.push(UFamilyCase { family: fam.name, k, full, u_bar, closed_form, ok });
            }
        }
    }

    // Completeness: enumerate all resolution chains whose smaller arm has
    // discriminant <= 4 within the component budget. Both arm discriminants
    // strictly increase along grammar moves, so subtrees where both exceed 4
    // cannot recover and are pruned.
    let budget = k_max as usize + 6;
    let four = Int::from(4);
    let small_arm = enum_resolution_chains_pruned(budget, &|state| {
        if state.pos == 0 || state.pos + 1 == state.weights.len() {
            return false; // free spine: one arm still empty
        }
        let (dl, dr) = state.arm_discriminants();
        dl > four && dr > four
    });
    let triple_two = Chain::new(vec![2, 2, 2]);
    let mut completeness_ok = true;
    for rc in small_arm {
        if rc.d_prime() > &four || rc.t_second().len() > k_max as usize + 3 {
            continue;
        }
        if rc.t_prime() == &triple_two {
            // No family: these all have u_bar >= 1/2.
            completeness_ok &= rc.u_bar() >= &rat(1, 2);
            continue;
        }
        completeness_ok &= family_members.contains(rc.full());
    }

    let all_ok = cases.iter().all(|c| c.ok);
    UFamilyReport { cases, completeness_ok, all_ok }
}

/// A five-cusp candidate: five resolution chains with per-cusp
/// `(u_bar, delta_bar)` and the divisor totals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiveCuspSolution {
    pub cusps: Vec<ResolutionChain>,
    pub per_cusp: Vec<(Rat, Rat)>,
    pub delta_d: Rat,
    pub e_d: Rat,
}

impl FiveCuspSolution {
    fn from_multiset(mut cusps: Vec<ResolutionChain>) -> Self {
        cusps.sort();
        let per_cusp = cusps
            .iter()
            .map(|c| (c.u_bar().clone(), c.delta_bar().clone()))
            .collect();
        let delta_d: Rat = cusps.iter().map(|c| c.delta_bar().clone()).sum();
        let e_d: Rat = cusps.iter().map(|c| c.e_bar().clone()).sum();
        FiveCuspSolution { cusps, per_cusp, delta_d, e_d }
    }

    pub fn chains(&self) -> Vec<Chain> {
        self.cusps.iter().map(|c| c.full().clone()).collect()
    }

    /// Re-evaluate the defining constraints, as a consistency check.
    pub fn satisfies_bounds(&self, u_bound: &Rat) -> bool {
        let sum_u = &self.e_d - &self.delta_d;
        self.delta_d >= rat(7, 2)
            && self.e_d <= rat(4, 1)
            && self.delta_d < self.e_d
            && sum_u > Rat::zero()
            && sum_u <= *u_bound
    }
}

fn solution_sort_key(s: &FiveCuspSolution) -> Vec<(usize, Chain)> {
    s.cusps.iter().map(|c| (c.full().len(), c.full().clone())).collect()
}

/// The candidate pool for the five-cusp search: every resolution chain that
/// could appear as some `Q_i` under the global bounds. Per-cusp necessary
/// conditions: `delta_bar > 1/6` (each of the other four cusps contributes at
/// most `delta_bar([2,1,3]) = 5/6` towards `delta(D) >= 7/2`) and
/// `u_bar <= u_bound` (the `u_bar_i` are nonnegative and sum to at most
/// `u_bound`). The 16-component grammar cap is exhaustive for any
/// `u_bound <= 3/5`: arms with three or more leading 2-weights force
/// `u_bar > 1/2` (five or more force `u_bar > 3/5`), and past the first
/// satellite blow-up both arm discriminants grow by at least one per move, so
/// `delta_bar > 1/6` caps the remaining depth at nine.
pub fn five_cusp_candidate_pool(u_bound: &Rat) -> Vec<ResolutionChain> {
    let sixth = rat(1, 6);
    let mut pool: Vec<ResolutionChain> = enum_resolution_chains_pruned(16, &|state| {
        if state.pos == 0 || state.pos + 1 == state.weights.len() {
            return false;
        }
        let (dl, dr) = state.arm_discriminants();
        // delta_bar strictly decreases along moves below a final state.
        Rat::new(Int::one(), dl) + Rat::new(Int::one(), dr) <= sixth
    })
    .into_iter()
    .filter(|rc| rc.delta_bar() > &sixth && rc.u_bar() <= u_bound)
    .collect();
    // Highest delta_bar first; ties by the chain ordering.
    pool.sort_by(|a, b| b.delta_bar().cmp(a.delta_bar()).then_with(|| a.cmp(b)));
    pool
}

/// Exhaustive search for five-cusp, ten-twig configurations satisfying
/// `7/2 <= delta(D) < e(D) <= 4` and `0 < sum u_bar_i <= 1/2`, mirroring the
/// per-twig bounds above. Returns the solutions as sorted multisets, in a
/// deterministic order. The bound `sum u_bar <= 1/2` follows from the two
/// global inequalities; [`five_cusp_search_with_bound`] exposes it as a
/// parameter for monotonicity checks.
pub fn five_cusp_search() -> Vec<FiveCuspSolution> {
    five_cusp_search_with_bound(&rat(1, 2))
}

/// The search with an explicit upper bound on `sum u_bar_i`. Uses branch
/// pruning over the delta-sorted pool; [`five_cusp_search_exhaustive`] is the
/// pruning-free reference.
pub fn five_cusp_search_with_bound(u_bound: &Rat) -> Vec<FiveCuspSolution> {
    let pool = five_cusp_candidate_pool(u_bound);
    let min_e = pool.iter().map(|c| c.e_bar().clone()).min();
    let mut out = Vec::new();
    let Some(min_e) = min_e else {
        return out;
    };
    let seven_halves = rat(7, 2);
    let four = rat(4, 1);
    let mut chosen: Vec<usize> = Vec::new();

    fn descend(
        pool: &[ResolutionChain],
        start: usize,
        chosen: &mut Vec<usize>,
        sum_delta: Rat,
        sum_u: Rat,
        sum_e: Rat,
        min_e: &Rat,
        u_bound: &Rat,
        seven_halves: &Rat,
        four: &Rat,
        out: &mut Vec<FiveCuspSolution>,
    ) {
        if chosen.len() == 5 {
            let sol = FiveCuspSolution::from_multiset(
                chosen.iter().map(|&i| pool[i].clone()).collect(),
            );
            if sol.satisfies_bounds(u_bound) {
                out.push(sol);
            }
            return;
        }
        let remaining = 5 - chosen.len();
        for i in start..pool.len() {
            let c = &pool[i];
            // Later candidates have delta_bar <= this one: if even taking
            // this delta for every remaining slot cannot reach 7/2, stop.
            let best_possible =
                &sum_delta + &(Rat::from_integer(Int::from(remaining as i64)) * c.delta_bar());
            if best_possible < *seven_halves {
                break;
            }
            let next_u = &sum_u + c.u_bar();
            if &next_u > u_bound {
                continue;
            }
            let next_e = &sum_e + c.e_bar();
            let min_rest = Rat::from_integer(Int::from(remaining as i64 - 1)) * min_e;
            if &next_e + &min_rest > *four {
                continue;
            }
            chosen.push(i);
            descend(
                pool,
                i,
                chosen,
                &sum_delta + c.delta_bar(),
                next_u,
                next_e,
                min_e,
                u_bound,
                seven_halves,
                four,
                out,
            );
            chosen.pop();
        }
    }

    descend(
        &pool,
        0,
        &mut chosen,
        Rat::zero(),
        Rat::zero(),
        Rat::zero(),
        &min_e,
        u_bound,
        &seven_halves,
        &four,
        &mut out,
    );
    out.sort_by_key(solution_sort_key);
    out.dedup();
    out
}

/// Reference implementation without branch pruning: every 5-multiset of pool
/// candidates is checked against the global bounds directly. Used to guard
/// the pruned search against pruning bugs.
pub fn five_cusp_search_exhaustive(u_bound: &Rat) -> Vec<FiveCuspSolution> {
    let pool = five_cusp_candidate_pool(u_bound);
    let n = pool.len();
    let mut out = Vec::new();
    for i1 in 0..n {
        for i2 in i1..n {
            for i3 in i2..n {
                for i4 in i3..n {
                    for i5 in i4..n {
                        let sol = FiveCuspSolution::from_multiset(vec![
                            pool[i1].clone(),
                            pool[i2].clone(),
                            pool[i3].clone(),
                            pool[i4].clone(),
                            pool[i5].clone(),
                        ]);
                        if sol.satisfies_bounds(u_bound) {
                            out.push(sol);
                        }
                    }
                }
            }
        }
    }
    out.sort_by_key(solution_sort_key);
    out.dedup();
    out
}

/// Elimination record for one five-cusp solution: the genus sum
/// `sum C(m,2)` over all cusps and whether any degree realizes it.
#[derive(Clone, Debug)]
pub struct SolutionElimination {
    pub chains: Vec<Chain>,
    pub genus_sum: Int,
    pub realizing_degree: Option<Int>,
    pub eliminated: bool,
}

/// Degree-elimination report across all solutions.
#[derive(Clone, Debug)]
pub struct DegreeElimination {
    pub per_solution: Vec<SolutionElimination>,
    pub all_eliminated: bool,
}

/// For each solution, recover the characteristic pairs of every cusp, sum
/// `C(m,2)` over all multiplicities, and certify that no degree `d >= 1`
/// satisfies `C(d-1,2) = sum` (the genus formula has no solution).
pub fn five_cusp_degree_elimination(solutions: &[FiveCuspSolution]) -> Result<DegreeElimination> {
    let mut per_solution = Vec::new();
    for sol in solutions {
        let mut genus_sum = Int::zero();
        for cusp in &sol.cusps {
            let pairs = hn_pairs_from_chain(cusp.full())?;
            genus_sum += hn_multiplicities(&pairs)?.genus_sum();
        }
        let realizing_degree = degree_with_genus_sum(&genus_sum);
        per_solution.push(SolutionElimination {
            chains: sol.chains(),
            eliminated: realizing_degree.is_none(),
            genus_sum,
            realizing_degree,
        });
    }
    let all_eliminated = per_solution.iter().all(|s| s.eliminated);
    Ok(DegreeElimination { per_solution, all_eliminated })
}
