//! The delta/e/u calculus on twigs and the bark of a divisor.
//!
//! For a negative definite chain `T` with tip `T_1`:
//! `delta(T) = 1/d(T)`, `e(T) = d(T - T_1)/d(T)`, `u(T) = e(T) - delta(T)`.
//! For a tree `D` with maximal twigs `T_1..T_t`, `delta(D)` and `e(D)` are the
//! sums over the twigs.
//!
//! The bark of a tree `T` (not a chain) is the unique fractional divisor
//! supported on the maximal twigs with `Bk T . T_0 = beta_T(T_0) - 2` on every
//! twig component. Its coefficients have the closed form
//! `d(tail after T_{i,j}) / d(T_i)`; the implementation computes that closed
//! form and independently solves the defining linear system, erroring if the
//! two routes ever disagree.

use crate::dual_graph::{Chain, Classification, DualGraph};
use crate::numeric::{solve_rational, Int, Rat};
use crate::{Error, Result};
use num::{One, Zero};
use std::collections::BTreeMap;

/// The exact rational invariants of a single twig.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwigInvariants {
    pub d: Int,
    pub delta: Rat,
    pub e: Rat,
    pub u: Rat,
}

/// Compute `d`, `delta`, `e`, `u` for a nonempty negative definite chain,
/// tip first.
pub fn twig_invariants(t: &Chain) -> Result<TwigInvariants> {
    if t.is_empty() {
        return Err(Error::EmptyDivisor);
    }
    if !t.is_negative_definite()? {
        return Err(Error::NotNegativeDefinite(format!("twig {t}")));
    }
    let d = t.discriminant();
    let delta = Rat::new(Int::one(), d.clone());
    let e = Rat::new(t.without_tip().discriminant(), d.clone());
    let u = &e - &delta;
    Ok(TwigInvariants { d, delta, e, u })
}

/// `delta(D)`, `e(D)` and the twig count `t` of a tree, summed over its
/// maximal twigs.
pub fn divisor_delta_e(g: &DualGraph) -> Result<(Rat, Rat, usize)> {
    let cls = g.classify()?;
    divisor_delta_e_from(&cls)
}

pub(crate) fn divisor_delta_e_from(cls: &Classification) -> Result<(Rat, Rat, usize)> {
    let mut delta = Rat::zero();
    let mut e = Rat::zero();
    for twig in &cls.maximal_twigs {
        let inv = twig_invariants(&twig.chain)?;
        delta += inv.delta;
        e += inv.e;
    }
    Ok((delta, e, cls.maximal_twigs.len()))
}

/// Bark coefficients per vertex id. Vertices outside the maximal twigs carry
/// coefficient zero and are omitted from the map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarkCoefficients {
    pub coeffs: BTreeMap<u32, Rat>,
}

impl BarkCoefficients {
    pub fn coeff(&self, id: u32) -> Rat {
        self.coeffs.get(&id).cloned().unwrap_or_else(Rat::zero)
    }
}

/// Compute the bark of a tree which is not a chain and whose maximal twigs
/// are all negative definite.
///
/// The closed-form coefficient of the j-th component (tip first) of a twig
/// `T_i` is `d(T_{i,j+1} + .. + T_{i,k_i}) / d(T_i)`; the defining property
/// `Bk . T_0 = beta(T_0) - 2` is re-derived by a linear solve per twig and
/// compared.
pub fn bark(g: &DualGraph) -> Result<BarkCoefficients> {
    let cls = g.classify()?;
    if cls.is_chain {
        return Err(Error::BarkOfChain);
    }
    let mut coeffs = BTreeMap::new();
    for twig in &cls.maximal_twigs {
        if !twig.chain.is_negative_definite()? {
            return Err(Error::NotNegativeDefinite(format!("maximal twig {}", twig.chain)));
        }
        let d_twig = twig.chain.discriminant();
        let k = twig.vertices.len();
        // Closed form: tail discriminants over the twig discriminant.
        let mut closed = Vec::with_capacity(k);
        for j in 0..k {
            let tail = Chain::new(twig.chain.weights()[j + 1..].to_vec());
            closed.push(Rat::new(tail.discriminant(), d_twig.clone()));
        }
        // Independent route: solve the defining tridiagonal system
        // sum_l c_l (v_j . v_l) = beta(v_j) - 2. The tip has beta = 1, every
        // other twig component beta = 2 (the innermost one meets the
        // branching vertex, which carries coefficient zero).
        let w = twig.chain.weights();
        let mut a = vec![vec![Rat::zero(); k]; k];
        let mut b = vec![Rat::zero(); k];
        for j in 0..k {
            a[j][j] = Rat::from_integer(Int::from(-w[j]));
            if j > 0 {
                a[j][j - 1] = Rat::one();
            }
            if j + 1 < k {
                a[j][j + 1] = Rat::one();
            }
            b[j] = Rat::from_integer(Int::from(if j == 0 { -1 } else { 0 }));
        }
        let solved = solve_rational(&a, &b)
            .ok_or_else(|| Error::Internal(format!("singular twig system for {}", twig.chain)))?;
        if solved != closed {
            return Err(Error::Internal(format!(
                "bark closed form and linear solve disagree on twig {}",
                twig.chain
            )));
        }
        for (v, c) in twig.vertices.iter().zip(closed) {
            coeffs.insert(*v, c);
        }
    }
    Ok(BarkCoefficients { coeffs })
}

/// `(Bk T)^2`: the quadratic form of the bark coefficients under the
/// intersection matrix. Equals `-e(T)` (tested identity).
pub fn bark_square(g: &DualGraph) -> Result<Rat> {
    let bk = bark(g)?;
    Ok(quadratic_form(g, &bk))
}

/// Evaluate `v^T Q v` for a coefficient vector supported on some vertices of
/// the graph, with `Q` the (signed) intersection matrix.
pub fn quadratic_form(g: &DualGraph, coeffs: &BarkCoefficients) -> Rat {
    let mut total = Rat::zero();
    for (&v, c) in &coeffs.coeffs {
        total += c * c * Rat::from_integer(Int::from(g.self_int(v)));
    }
    for (a, b) in g.edges() {
        let (ca, cb) = (coeffs.coeff(a), coeffs.coeff(b));
        if !ca.is_zero() && !cb.is_zero() {
            total += Rat::from_integer(Int::from(2)) * ca * cb;
        }
    }
    total
}

/// Check the defining property `Bk . T_0 = beta(T_0) - 2` for every maximal
/// twig component. Returns the first violating vertex, if any.
pub fn bark_defining_property_violation(
    g: &DualGraph,
    bk: &BarkCoefficients,
) -> Result<Option<u32>> {
    let cls = g.classify()?;
    for twig in &cls.maximal_twigs {
        for &v in &twig.vertices {
            let mut pairing = bk.coeff(v) * Rat::from_integer(Int::from(g.self_int(v)));
            for n in g.neighbors(v) {
                pairing += bk.coeff(n);
            }
            let beta = Rat::from_integer(Int::from(cls.branching_numbers[&v] - 2));
            if pairing != beta {
                return Ok(Some(v));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;

    fn chain(w: &[i64]) -> Chain {
        Chain::new(w.to_vec())
    }

    /// A star: one branching center with the given chains attached, each
    /// listed tip first (so the last entry of each chain touches the center).
    pub(crate) fn star(center_self_int: i64, twigs: &[&[i64]]) -> DualGraph {
        let mut vertices = vec![(0u32, center_self_int)];
        let mut edges = Vec::new();
        let mut next = 1u32;
        for t in twigs {
            let ids: Vec<u32> = (0..t.len()).map(|i| next + i as u32).collect();
            for (i, &w) in t.iter().enumerate() {
                vertices.push((ids[i], -w));
            }
            for i in 1..t.len() {
                edges.push((ids[i - 1], ids[i]));
            }
            edges.push((*ids.last().unwrap(), 0));
            next += t.len() as u32;
        }
        DualGraph::new(vertices, edges).unwrap()
    }

    #[test]
    fn twig_invariant_values() {
        let inv = twig_invariants(&chain(&[2, 2, 2])).unwrap();
        assert_eq!(inv.d, Int::from(4));
        assert_eq!(inv.delta, rat(1, 4));
        assert_eq!(inv.e, rat(3, 4));
        assert_eq!(inv.u, rat(1, 2));

        let inv = twig_invariants(&chain(&[3])).unwrap();
        assert_eq!(inv.d, Int::from(3));
        assert_eq!(inv.delta, rat(1, 3));
        assert_eq!(inv.e, rat(1, 3));
        assert_eq!(inv.u, rat(0, 1));

        // [(2)_k, 3] with k = 2: d = 7, e = 5/7, u = 4/7.
        let inv = twig_invariants(&chain(&[2, 2, 3])).unwrap();
        assert_eq!(inv.d, Int::from(7));
        assert_eq!(inv.e, rat(5, 7));
        assert_eq!(inv.u, rat(4, 7));
    }

    #[test]
    fn twig_invariants_all_two_chains() {
        // [(2)_k]: (k+1, 1/(k+1), k/(k+1), (k-1)/(k+1)) for k = 1..20.
        for k in 1..=20i64 {
            let inv = twig_invariants(&Chain::repeated(2, k as usize)).unwrap();
            assert_eq!(inv.d, Int::from(k + 1));
            assert_eq!(inv.delta, rat(1, k + 1));
            assert_eq!(inv.e, rat(k, k + 1));
            assert_eq!(inv.u, rat(k - 1, k + 1));
        }
    }

    #[test]
    fn twig_invariants_errors() {
        assert!(matches!(twig_invariants(&chain(&[])), Err(Error::EmptyDivisor)));
        assert!(matches!(
            twig_invariants(&chain(&[0])),
            Err(Error::NotNegativeDefinite(_))
        ));
    }

    #[test]
    fn bark_of_single_component_twigs() {
        // Twig [2] off a branching vertex: coefficient 1/2 = delta.
        let g = star(-2, &[&[2], &[2], &[2]]);
        let bk = bark(&g).unwrap();
        for id in 1..=3 {
            assert_eq!(bk.coeff(id), rat(1, 2));
        }
        assert_eq!(bk.coeff(0), rat(0, 1));
        // Twig [3]: coefficient 1/3.
        let g = star(-2, &[&[3], &[2], &[2]]);
        let bk = bark(&g).unwrap();
        assert_eq!(bk.coeff(1), rat(1, 3));
    }

    #[test]
    fn bark_of_two_component_twig() {
        // Twig [2,2] tip first: coefficients (2/3, 1/3).
        let g = star(-2, &[&[2, 2], &[2], &[2]]);
        let bk = bark(&g).unwrap();
        assert_eq!(bk.coeff(1), rat(2, 3)); // tip
        assert_eq!(bk.coeff(2), rat(1, 3)); // inner, equals delta([2,2])
        assert!(bark_defining_property_violation(&g, &bk).unwrap().is_none());
    }

    #[test]
    fn bark_square_matches_minus_e() {
        let g = star(-2, &[&[2, 2], &[2], &[2]]);
        let sq = bark_square(&g).unwrap();
        let (_, e, _) = divisor_delta_e(&g).unwrap();
        assert_eq!(sq, -e.clone());
        assert_eq!(e, rat(2, 3) + rat(1, 2) + rat(1, 2));
    }

    #[test]
    fn bark_rejects_chains_and_indefinite_twigs() {
        assert!(matches!(bark(&chain(&[2, 1, 3]).to_graph()), Err(Error::BarkOfChain)));
        let g = star(-2, &[&[0], &[2], &[2]]);
        assert!(matches!(bark(&g), Err(Error::NotNegativeDefinite(_))));
    }
}
