//! Hamburger-Noether (characteristic) pair arithmetic: validation,
//! multiplicity sequences, the blow-up simulator producing resolution dual
//! graphs, the M/I invariants and the genus formula.
//!
//! A cusp is described by pairs `(c_1, p_1), .., (c_h, p_h)` with
//! `p_j <= c_j`, `gcd(c_j, p_j) = c_{j+1}` for `j < h` and
//! `gcd(c_h, p_h) = 1`. The blow-up simulator is the single source of truth
//! for dual graphs, multiplicity sequences and star-type chain segments; the
//! closed-form Euclidean expansion of multiplicities is checked against it.

use crate::dual_graph::{Chain, DualGraph};
use crate::numeric::{choose2, Int};
use crate::{Error, Result};
use num::{Integer, One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// A sequence of characteristic pairs describing one cusp.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct HNPairSeq {
    pairs: Vec<(Int, Int)>,
}

/// Outcome of [`validate_hn`]: either everything holds or a description of
/// the first violated invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HnValidation {
    Ok,
    Violation(String),
}

impl HnValidation {
    pub fn is_ok(&self) -> bool {
        matches!(self, HnValidation::Ok)
    }
}

impl HNPairSeq {
    pub fn new(pairs: Vec<(Int, Int)>) -> Self {
        HNPairSeq { pairs }
    }

    pub fn from_i64(pairs: &[(i64, i64)]) -> Self {
        HNPairSeq {
            pairs: pairs.iter().map(|&(c, p)| (Int::from(c), Int::from(p))).collect(),
        }
    }

    pub fn pairs(&self) -> &[(Int, Int)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// The multiplicity of the cusp itself: `m_0 = p_1`.
    pub fn multiplicity(&self) -> Option<&Int> {
        self.pairs.first().map(|(_, p)| p)
    }

    /// Parse `"(36/24)(12/12)^k(12/6)(6/6)^l(6/5)"`. Exponents may be
    /// nonnegative integer literals or parameter names bound in `params`;
    /// an exponent of zero drops the group.
    pub fn parse(s: &str, params: &BTreeMap<String, u64>) -> Result<Self> {
        let mut pairs = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' at {rest:?}")))?;
            let (body, after) = open
                .split_once(')')
                .ok_or_else(|| Error::Parse(format!("unclosed pair in {s:?}")))?;
            let (c, p) = body
                .split_once('/')
                .ok_or_else(|| Error::Parse(format!("pair {body:?} must look like c/p")))?;
            let c: Int = c
                .trim()
                .parse()
                .map_err(|e| Error::Parse(format!("bad integer {c:?}: {e}")))?;
            let p: Int = p
                .trim()
                .parse()
                .map_err(|e| Error::Parse(format!("bad integer {p:?}: {e}")))?;
            let mut count = 1u64;
            rest = after.trim_start();
            if let Some(exp) = rest.strip_prefix('^') {
                let end = exp
                    .find(|ch: char| !ch.is_ascii_alphanumeric() && ch != '_')
                    .unwrap_or(exp.len());
                let (token, after_exp) = exp.split_at(end);
                if token.is_empty() {
                    return Err(Error::Parse(format!("dangling '^' in {s:?}")));
                }
                count = if token.chars().all(|ch| ch.is_ascii_digit()) {
                    token
                        .parse()
                        .map_err(|e| Error::Parse(format!("bad exponent {token:?}: {e}")))?
                } else {
                    *params.get(token).ok_or_else(|| {
                        Error::Parse(format!("unbound parameter {token:?}; pass --param {token}=N"))
                    })?
                };
                rest = after_exp.trim_start();
            }
            for _ in 0..count {
                pairs.push((c.clone(), p.clone()));
            }
        }
        if pairs.is_empty() {
            return Err(Error::Parse("empty H-N pair sequence".into()));
        }
        Ok(HNPairSeq { pairs })
    }
}

impl fmt::Display for HNPairSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Run-length encode repeats as (c/p)^k.
        let mut i = 0;
        while i < self.pairs.len() {
            let (c, p) = &self.pairs[i];
            let mut j = i + 1;
            while j < self.pairs.len() && &self.pairs[j] == &self.pairs[i] {
                j += 1;
            }
            write!(f, "({c}/{p})")?;
            if j - i > 1 {
                write!(f, "^{}", j - i)?;
            }
            i = j;
        }
        Ok(())
    }
}

impl fmt::Debug for HNPairSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Check the three pair-sequence invariants, reporting the first violation:
/// positivity with `p_j <= c_j`, the gcd chain, and a coprime last pair.
pub fn validate_hn(seq: &HNPairSeq) -> HnValidation {
    if seq.is_empty() {
        return HnValidation::Violation("empty sequence".into());
    }
    for (j, (c, p)) in seq.pairs.iter().enumerate() {
        if !c.is_positive() || !p.is_positive() {
            return HnValidation::Violation(format!("pair {} = ({c},{p}) is not positive", j + 1));
        }
        if p > c {
            return HnValidation::Violation(format!("pair {} has p = {p} > c = {c}", j + 1));
        }
    }
    for j in 0..seq.pairs.len() - 1 {
        let (c, p) = &seq.pairs[j];
        let g = c.gcd(p);
        let next_c = &seq.pairs[j + 1].0;
        if &g != next_c {
            return HnValidation::Violation(format!(
                "gcd({c},{p}) = {g} but the next pair has c = {next_c}"
            ));
        }
    }
    let (c, p) = seq.pairs.last().unwrap();
    let g = c.gcd(p);
    if !g.is_one() {
        return HnValidation::Violation(format!("gcd({c},{p}) = {g} != 1 in the last pair"));
    }
    HnValidation::Ok
}

fn require_valid(seq: &HNPairSeq) -> Result<()> {
    match validate_hn(seq) {
        HnValidation::Ok => Ok(()),
        HnValidation::Violation(v) => Err(Error::HnPairs(v)),
    }
}

/// The full multiplicity sequence of a cusp, 1's included, non-increasing.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiplicitySequence(pub Vec<Int>);

impl MultiplicitySequence {
    pub fn sum(&self) -> Int {
        self.0.iter().sum()
    }

    pub fn sum_of_squares(&self) -> Int {
        self.0.iter().map(|m| m * m).sum()
    }

    /// `sum C(m, 2)` over all entries.
    pub fn genus_sum(&self) -> Int {
        self.0.iter().map(choose2).sum()
    }

    pub fn is_non_increasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }
}

impl fmt::Display for MultiplicitySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for MultiplicitySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Multiplicity sequence by Euclidean quotient expansion: for each pair
/// `(c, p)`, push `p` exactly `floor(c/p)` times and recurse on
/// `(p, c mod p)` until the remainder vanishes; pair expansions are
/// concatenated in order. Checked against the blow-up simulator.
pub fn hn_multiplicities(seq: &HNPairSeq) -> Result<MultiplicitySequence> {
    require_valid(seq)?;
    let mut out = Vec::new();
    for (c, p) in &seq.pairs {
        let mut a = c.clone();
        let mut b = p.clone();
        while !b.is_zero() {
            let (q, r) = a.div_rem(&b);
            let reps: u64 = q.to_string().parse().map_err(|_| {
                Error::InvalidArgument("pair quotient too large to expand".into())
            })?;
            for _ in 0..reps {
                out.push(b.clone());
            }
            a = b;
            b = r;
        }
    }
    Ok(MultiplicitySequence(out))
}

/// `M(q) = c_1 + sum_j p_j - 1` and `I(q) = sum_j c_j p_j`. These equal the
/// sum and sum of squares of the multiplicity sequence (tested identity).
pub fn mi_invariants(seq: &HNPairSeq) -> Result<(Int, Int)> {
    require_valid(seq)?;
    let c1 = &seq.pairs[0].0;
    let m = c1 + seq.pairs.iter().map(|(_, p)| p).sum::<Int>() - Int::one();
    let i = seq.pairs.iter().map(|(c, p)| c * p).sum();
    Ok((m, i))
}

/// State of the blow-up simulator: the exceptional curves created so far
/// (chain weights `w = -self-intersection` and adjacency) plus the current
/// center, which sits on one or two carriers with positive residual local
/// intersection multiplicities. A carrier of `None` is one of the two local
/// coordinate curves at the original point; those never enter the graph.
pub struct BlowUpSim {
    weights: Vec<i64>,
    adj: Vec<Vec<usize>>,
    mults: Vec<Int>,
    position: Vec<(Option<usize>, Int)>,
}

impl BlowUpSim {
    /// Start resolving a fresh point with local data `(c, p)`.
    fn at_origin(c: Int, p: Int) -> Self {
        BlowUpSim {
            weights: Vec::new(),
            adj: Vec::new(),
            mults: Vec::new(),
            position: vec![(None, c), (None, p)],
        }
    }

    /// Start at a free point of a pre-existing head curve of chain weight
    /// `head_weight`, met by the branch with multiplicity `residual`.
    /// Used for star-type subsequences.
    fn at_free_point(head_weight: i64, residual: Int) -> Self {
        BlowUpSim {
            weights: vec![head_weight],
            adj: vec![Vec::new()],
            mults: Vec::new(),
            position: vec![(Some(0), residual)],
        }
    }

    fn link(&mut self, a: usize, b: usize) {
        self.adj[a].push(b);
        self.adj[b].push(a);
    }

    fn unlink(&mut self, a: usize, b: usize) {
        self.adj[a].retain(|&x| x != b);
        self.adj[b].retain(|&x| x != a);
    }

    /// Blow up the current center once. The new exceptional curve meets the
    /// proper transforms of the carriers the center lay on; two real
    /// carriers separate. Residuals drop by the branch multiplicity.
    fn blow_up_once(&mut self) {
        let m = self.position.iter().map(|(_, r)| r.clone()).min().expect("position nonempty");
        self.mults.push(m.clone());
        let new = self.weights.len();
        self.weights.push(1);
        self.adj.push(Vec::new());
        let real: Vec<usize> = self.position.iter().filter_map(|(c, _)| *c).collect();
        for &c in &real {
            self.weights[c] += 1;
            self.link(new, c);
        }
        if real.len() == 2 {
            debug_assert!(self.adj[real[0]].contains(&real[1]));
            self.unlink(real[0], real[1]);
        }
        let mut next: Vec<(Option<usize>, Int)> = self
            .position
            .iter()
            .filter_map(|(c, r)| {
                let nr = r - &m;
                if nr.is_positive() {
                    Some((*c, nr))
                } else {
                    None
                }
            })
            .collect();
        next.push((Some(new), m));
        self.position = next;
    }

    /// Run one pair to exhaustion: from a 2-carrier position, blow up until
    /// the branch sits at a free point of the last curve.
    fn run_pair(&mut self) {
        while self.position.len() == 2 {
            self.blow_up_once();
        }
    }

    /// Residual branch multiplicity at the current free point.
    fn free_residual(&self) -> &Int {
        debug_assert_eq!(self.position.len(), 1);
        &self.position[0].1
    }

    /// Process pairs, each continuing from the current free point: the
    /// pair's `c` must equal the residual there (the gcd linking).
    fn feed(&mut self, pairs: &[(Int, Int)]) -> Result<()> {
        for (c, p) in pairs {
            if self.free_residual() != c {
                return Err(Error::HnPairs(format!(
                    "pair ({c},{p}) does not continue residual {}",
                    self.free_residual()
                )));
            }
            self.position.push((None, p.clone()));
            self.run_pair();
        }
        Ok(())
    }

    fn into_graph(self) -> (DualGraph, MultiplicitySequence, Option<u32>) {
        let vertices: Vec<(u32, i64)> = self
            .weights
            .iter()
            .enumerate()
            .map(|(i, &w)| (i as u32, -w))
            .collect();
        let mut edges = Vec::new();
        for (a, nbs) in self.adj.iter().enumerate() {
            for &b in nbs {
                if a < b {
                    edges.push((a as u32, b as u32));
                }
            }
        }
        let mut g = DualGraph::new(vertices, edges).expect("simulator produces valid graphs");
        let last = self.weights.len().checked_sub(1).map(|i| i as u32);
        g.marks.minus_one = last;
        (g, MultiplicitySequence(self.mults), last)
    }
}

/// The dual graph of the minimal embedded resolution of a cusp, produced by
/// simulating every blow-up. The unique (-1)-curve (where the proper
/// transform of the curve attaches) is recorded in `marks.minus_one`.
pub fn hn_resolution_graph(seq: &HNPairSeq) -> Result<DualGraph> {
    Ok(hn_resolve(seq)?.0)
}

/// Resolution graph together with the simulator's observed multiplicity
/// sequence (an independent route to [`hn_multiplicities`]).
pub fn hn_resolve(seq: &HNPairSeq) -> Result<(DualGraph, MultiplicitySequence)> {
    require_valid(seq)?;
    let (c1, p1) = seq.pairs[0].clone();
    let mut sim = BlowUpSim::at_origin(c1, p1);
    sim.run_pair();
    sim.feed(&seq.pairs[1..])?;
    debug_assert!(sim.free_residual().is_one());
    let (g, mults, _) = sim.into_graph();
    Ok((g, mults))
}

/// Simulate a pair subsequence starting from a free point of a head curve of
/// weight `head_weight`, met with multiplicity equal to the first pair's `c`.
/// Returns the resulting graph (head curve has id 0). The sequence need not
/// end coprime; the simulation simply stops at the last free point.
pub fn simulate_subsequence(head_weight: i64, pairs: &[(Int, Int)]) -> Result<DualGraph> {
    let first_c = pairs
        .first()
        .map(|(c, _)| c.clone())
        .ok_or_else(|| Error::InvalidArgument("empty subsequence".into()))?;
    for (c, p) in pairs {
        if !c.is_positive() || !p.is_positive() || p > c {
            return Err(Error::HnPairs(format!("bad pair ({c},{p})")));
        }
    }
    let mut sim = BlowUpSim::at_free_point(head_weight, first_c);
    sim.feed(pairs)?;
    Ok(sim.into_graph().0)
}

/// Recover the single characteristic pair of a cusp whose resolution graph
/// is a chain: `(c, p) = (d(T''), d(T'))`, the discriminants of the two arms
/// on either side of the unique (-1)-curve, larger arm first.
pub fn hn_pairs_from_chain(chain: &Chain) -> Result<HNPairSeq> {
    let w = chain.weights();
    let ones: Vec<usize> = w.iter().enumerate().filter(|(_, &x)| x == 1).map(|(i, _)| i).collect();
    if ones.len() != 1 {
        return Err(Error::InvalidArgument(format!(
            "chain {chain} does not have a unique (-1)-component"
        )));
    }
    let i = ones[0];
    if i == 0 || i == w.len() - 1 {
        return Err(Error::InvalidArgument(format!(
            "the (-1)-component of {chain} is a tip"
        )));
    }
    let left = Chain::new(w[..i].to_vec());
    let right = Chain::new(w[i + 1..].to_vec());
    let (dl, dr) = (left.discriminant(), right.discriminant());
    let (c, p) = if dl >= dr { (dl, dr) } else { (dr, dl) };
    let seq = HNPairSeq::new(vec![(c, p)]);
    if let HnValidation::Violation(v) = validate_hn(&seq) {
        return Err(Error::InvalidArgument(format!(
            "arms of {chain} are not coprime: {v}"
        )));
    }
    Ok(seq)
}

/// Result of the genus formula check `sum C(m,2) = C(d-1, 2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusCheck {
    pub lhs: Int,
    pub rhs: Int,
    pub ok: bool,
}

/// Evaluate the genus formula for a degree-`d` rational curve with the given
/// cusps. The left side is computed both from the multiplicity sequences and
/// from `(sum I - sum M)/2`; the two must agree.
pub fn genus_check(d: i64, cusps: &[HNPairSeq]) -> Result<GenusCheck> {
    if d < 1 {
        return Err(Error::InvalidArgument(format!("degree {d} < 1")));
    }
    let mut lhs = Int::zero();
    let mut sum_m = Int::zero();
    let mut sum_i = Int::zero();
    for seq in cusps {
        lhs += hn_multiplicities(seq)?.genus_sum();
        let (m, i) = mi_invariants(seq)?;
        sum_m += m;
        sum_i += i;
    }
    let lhs_via_mi = (sum_i - sum_m) / Int::from(2);
    if lhs != lhs_via_mi {
        return Err(Error::Internal(format!(
            "genus sum disagreement: multiplicities give {lhs}, M/I give {lhs_via_mi}"
        )));
    }
    let rhs = choose2(&Int::from(d - 1));
    let ok = lhs == rhs;
    Ok(GenusCheck { lhs, rhs, ok })
}

/// The chain segment appended by a star-type `*(n,k)` pair subsequence
/// `(n/n)^k (n/n-1)` performed over a free point of a head curve: the head
/// weight rises by `head_increment` and `tail` is appended beyond it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarSegment {
    pub n: u32,
    pub k: u32,
    pub head_increment: i64,
    pub tail: Chain,
    /// Number of components added: `k + n`.
    pub count_delta: i64,
    /// Increase of `K . (total transform)`: `n - 1`.
    pub k_delta: i64,
}

impl StarSegment {
    /// The full chain produced over a head curve of weight `head_weight`.
    pub fn applied_to(&self, head_weight: i64) -> Chain {
        Chain::new(vec![head_weight + self.head_increment]).concat(&self.tail)
    }
}

/// Closed form of the `*(n,k)` segment:
/// `[w+1, (2)_{k-1}, 3, (2)_{n-2}, 1, n]` for `k >= 1` and
/// `[w+2, (2)_{n-2}, 1, n]` for `k = 0`.
pub fn star_segment(n: u32, k: u32) -> Result<StarSegment> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("star segment needs n >= 2, got {n}")));
    }
    let mut tail = Vec::new();
    let head_increment;
    if k == 0 {
        head_increment = 2;
    } else {
        head_increment = 1;
        tail.extend(std::iter::repeat(2).take(k as usize - 1));
        tail.push(3);
    }
    tail.extend(std::iter::repeat(2).take(n as usize - 2));
    tail.push(1);
    tail.push(n as i64);
    Ok(StarSegment {
        n,
        k,
        head_increment,
        tail: Chain::new(tail),
        count_delta: (k + n) as i64,
        k_delta: n as i64 - 1,
    })
}

/// The pair subsequence realizing `*(n,k)` with unit scale: `(n/n)^k (n/n-1)`.
pub fn star_pairs(n: u32, k: u32) -> Vec<(Int, Int)> {
    let n_int = Int::from(n);
    let mut pairs = vec![(n_int.clone(), n_int.clone()); k as usize];
    pairs.push((n_int.clone(), n_int - Int::one()));
    pairs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(pairs: &[(i64, i64)]) -> HNPairSeq {
        HNPairSeq::from_i64(pairs)
    }

    fn mults(m: &[i64]) -> MultiplicitySequence {
        MultiplicitySequence(m.iter().map(|&x| Int::from(x)).collect())
    }

    #[test]
    fn validation_examples() {
        assert!(validate_hn(&seq(&[(3, 2)])).is_ok());
        assert!(validate_hn(&seq(&[(36, 24), (12, 12), (12, 6), (6, 6), (6, 5)])).is_ok());
        match validate_hn(&seq(&[(4, 3), (5, 2)])) {
            HnValidation::Violation(v) => assert!(v.contains("gcd(4,3) = 1"), "{v}"),
            HnValidation::Ok => panic!("expected violation"),
        }
        assert!(!validate_hn(&seq(&[(2, 3)])).is_ok());
        assert!(!validate_hn(&seq(&[(6, 4)])).is_ok());
        assert!(!validate_hn(&seq(&[])).is_ok());
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(hn_multiplicities(&seq(&[(3, 2)])).unwrap(), mults(&[2, 1, 1]));
        assert_eq!(
            hn_multiplicities(&seq(&[(16, 9)])).unwrap(),
            mults(&[9, 7, 2, 2, 2, 1, 1])
        );
        assert_eq!(hn_multiplicities(&seq(&[(5, 3)])).unwrap(), mults(&[3, 2, 1, 1]));
        // (2n-1, n) -> (n, n-1, 1^{n-1})
        for n in 5..=9i64 {
            let m = hn_multiplicities(&seq(&[(2 * n - 1, n)])).unwrap();
            let mut expect = vec![n, n - 1];
            expect.extend(std::iter::repeat(1).take(n as usize - 1));
            assert_eq!(m, mults(&expect));
        }
    }

    #[test]
    fn resolution_graph_golden() {
        let g = hn_resolution_graph(&seq(&[(3, 2)])).unwrap();
        let chain = g.as_chain().unwrap();
        assert!(chain == Chain::parse("[2,1,3]").unwrap() || chain == Chain::parse("[3,1,2]").unwrap());
        assert!(g.contracts_to_point());
        assert_eq!(g.discriminant(), Int::one());

        let g = hn_resolution_graph(&seq(&[(16, 9)])).unwrap();
        let chain = g.as_chain().unwrap();
        assert!(
            chain == Chain::parse("[5,2,1,3,2,2,3]").unwrap()
                || chain == Chain::parse("[3,2,2,3,1,2,5]").unwrap(),
            "got {chain}"
        );
        assert!(g.contracts_to_point());
    }

    #[test]
    fn resolution_graph_n_family() {
        // (2n-1, n) resolves to [n,1,(2)_{n-2},3] for n = 5..9.
        for n in 5..=9i64 {
            let g = hn_resolution_graph(&seq(&[(2 * n - 1, n)])).unwrap();
            let chain = g.as_chain().unwrap();
            let mut expect = vec![n, 1];
            expect.extend(std::iter::repeat(2).take(n as usize - 2));
            expect.push(3);
            let expect = Chain::new(expect);
            assert!(chain == expect || chain == expect.reversed(), "n={n}: got {chain}");
        }
    }

    #[test]
    fn simulator_and_expansion_agree() {
        for pairs in [
            vec![(3, 2)],
            vec![(16, 9)],
            vec![(36, 24), (12, 12), (12, 6), (6, 6), (6, 5)],
            vec![(9, 6), (3, 3), (3, 2)],
            vec![(6, 4), (2, 2), (2, 1)],
            vec![(27, 18), (9, 9), (9, 6), (3, 3), (3, 2)],
        ] {
            let s = seq(&pairs);
            let (_, observed) = hn_resolve(&s).unwrap();
            assert_eq!(observed, hn_multiplicities(&s).unwrap(), "pairs {s}");
            assert!(observed.is_non_increasing());
        }
    }

    #[test]
    fn resolution_graph_structure_invariants() {
        for pairs in [
            vec![(3, 2)],
            vec![(16, 9)],
            vec![(36, 24), (12, 12), (12, 6), (6, 6), (6, 5)],
            vec![(9, 6), (3, 3), (3, 2)],
        ] {
            let s = seq(&pairs);
            let g = hn_resolution_graph(&s).unwrap();
            assert!(g.is_tree());
            assert!(g.contracts_to_point());
            let minus_ones: Vec<u32> = g
                .ids()
                .iter()
                .filter(|&&v| g.self_int(v) == -1)
                .copied()
                .collect();
            assert_eq!(minus_ones.len(), 1, "{s}");
            assert_eq!(g.marks.minus_one, Some(minus_ones[0]));
            assert!(g.degree(minus_ones[0]) >= 2, "(-1)-curve of {s} must not be a tip");
        }
    }

    #[test]
    fn mi_examples() {
        assert_eq!(mi_invariants(&seq(&[(3, 2)])).unwrap(), (Int::from(4), Int::from(6)));
        assert_eq!(mi_invariants(&seq(&[(16, 9)])).unwrap(), (Int::from(24), Int::from(144)));
        // (9,6)(3,3)^k(3,2) at k = 1: M = 16 + 3k = 19, I = 60 + 9k = 69.
        assert_eq!(
            mi_invariants(&seq(&[(9, 6), (3, 3), (3, 2)])).unwrap(),
            (Int::from(19), Int::from(69))
        );
    }

    #[test]
    fn mi_equals_multiplicity_sums() {
        for pairs in [
            vec![(3, 2)],
            vec![(16, 9)],
            vec![(36, 24), (12, 12), (12, 6), (6, 6), (6, 5)],
            vec![(6, 4), (2, 2), (2, 1)],
        ] {
            let s = seq(&pairs);
            let m = hn_multiplicities(&s).unwrap();
            let (sum, squares) = mi_invariants(&s).unwrap();
            assert_eq!(m.sum(), sum, "{s}");
            assert_eq!(m.sum_of_squares(), squares, "{s}");
        }
    }

    #[test]
    fn genus_examples() {
        // Tricuspidal quartic: 3 = 3.
        let g = genus_check(4, &vec![seq(&[(3, 2)]); 3]).unwrap();
        assert_eq!(g.lhs, Int::from(3));
        assert_eq!(g.rhs, Int::from(3));
        assert!(g.ok);
        // A line.
        let g = genus_check(1, &[]).unwrap();
        assert!(g.ok);
        assert_eq!(g.lhs, Int::zero());
        // Degree must be positive.
        assert!(genus_check(0, &[]).is_err());
    }

    #[test]
    fn parse_and_display() {
        let params = BTreeMap::from([("k".to_string(), 1u64), ("l".to_string(), 1u64)]);
        let s = HNPairSeq::parse("(36/24)(12/12)^k(12/6)(6/6)^l(6/5)", &params).unwrap();
        assert_eq!(s, seq(&[(36, 24), (12, 12), (12, 6), (6, 6), (6, 5)]));
        assert_eq!(s.to_string(), "(36/24)(12/12)(12/6)(6/6)(6/5)");
        // Zero exponent drops the group.
        let params0 = BTreeMap::from([("k".to_string(), 0u64)]);
        let s = HNPairSeq::parse("(9/6)(3/3)^k(3/2)", &params0).unwrap();
        assert_eq!(s, seq(&[(9, 6), (3, 2)]));
        // Literal exponent.
        let s = HNPairSeq::parse("(3/3)^2(3/2)", &BTreeMap::new()).unwrap();
        assert_eq!(s, seq(&[(3, 3), (3, 3), (3, 2)]));
        assert_eq!(s.to_string(), "(3/3)^2(3/2)");
        // Unbound parameter errors.
        assert!(HNPairSeq::parse("(3/3)^k(3/2)", &BTreeMap::new()).is_err());
    }

    #[test]
    fn pair_recovery_round_trip() {
        for chain_str in ["[2,1,3]", "[3,1,2,3]", "[2,2,1,4]", "[5,2,1,3,2,2,3]", "[2,1,3,2]"] {
            let chain = Chain::parse(chain_str).unwrap();
            let pairs = hn_pairs_from_chain(&chain).unwrap();
            let g = hn_resolution_graph(&pairs).unwrap();
            let got = g.as_chain().unwrap();
            assert!(
                got == chain || got == chain.reversed(),
                "{chain_str}: pairs {pairs} resolve to {got}"
            );
        }
        assert_eq!(
            hn_pairs_from_chain(&Chain::parse("[2,1,3]").unwrap()).unwrap(),
            seq(&[(3, 2)])
        );
        assert_eq!(
            hn_pairs_from_chain(&Chain::parse("[5,2,1,3,2,2,3]").unwrap()).unwrap(),
            seq(&[(16, 9)])
        );
    }

    #[test]
    fn star_segment_closed_forms() {
        // (n,k) = (6,1) over head weight w: [w+1, 3, (2)_4, 1, 6].
        let s = star_segment(6, 1).unwrap();
        assert_eq!(s.applied_to(2), Chain::parse("[3,3,2,2,2,2,1,6]").unwrap());
        assert_eq!(s.count_delta, 7);
        assert_eq!(s.k_delta, 5);
        // (n,k) = (2,0): [w+2, 1, 2].
        let s = star_segment(2, 0).unwrap();
        assert_eq!(s.applied_to(3), Chain::parse("[5,1,2]").unwrap());
        assert_eq!(s.count_delta, 2);
        assert_eq!(s.k_delta, 1);
        assert!(star_segment(1, 0).is_err());
    }

    #[test]
    fn star_segment_matches_simulator() {
        for n in 2..=7u32 {
            for k in 0..=3u32 {
                let closed = star_segment(n, k).unwrap();
                let head_weight = 4;
                let g = simulate_subsequence(head_weight, &star_pairs(n, k)).unwrap();
                let got = g.as_chain().unwrap();
                let expect = closed.applied_to(head_weight);
                assert!(
                    got == expect || got == expect.reversed(),
                    "*(n={n},k={k}): simulator {got}, closed form {expect}"
                );
                // Component count and K-dot deltas.
                assert_eq!(g.len() as i64 - 1, closed.count_delta, "*(n={n},k={k})");
                let k_dot_total: i64 = g.ids().iter().map(|&v| -g.self_int(v) - 2).sum();
                let k_dot_head: i64 = head_weight - 2;
                assert_eq!(k_dot_total - k_dot_head, closed.k_delta, "*(n={n},k={k})");
            }
        }
    }
}
