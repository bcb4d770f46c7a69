//! Exact integer and rational helpers: fraction-free determinants, leading
//! principal minors, a small rational linear solver, and `p/q` formatting.
//!
//! Matrices here never exceed a few dozen rows, so the implementations favour
//! obvious correctness over asymptotics.

use num::{BigInt, BigRational, One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

/// Shorthand for an exact integer from a machine integer.
pub fn int(n: i64) -> Int {
    Int::from(n)
}

/// Shorthand for an exact rational `p/q`. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(int(p), int(q))
}

/// Format a rational as `p/q`, or just `p` when the denominator is 1.
/// Never produces a decimal expansion.
pub fn rat_str(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `p/q` or a bare integer into an exact rational.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: Int = p.trim().parse().ok()?;
            let q: Int = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Rat::new(p, q))
            }
        }
        None => {
            let p: Int = s.parse().ok()?;
            Some(Rat::from_integer(p))
        }
    }
}

/// Exact determinant by Bareiss fraction-free elimination with column
/// pivoting. The empty matrix has determinant 1.
pub fn determinant(mat: &[Vec<Int>]) -> Int {
    let n = mat.len();
    if n == 0 {
        return Int::one();
    }
    debug_assert!(mat.iter().all(|row| row.len() == n));
    let mut m: Vec<Vec<Int>> = mat.to_vec();
    let mut prev = Int::one();
    let mut sign = Int::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            // Column pivoting keeps the elimination fraction-free.
            let swap = (k + 1..n).find(|&r| !m[r][k].is_zero());
            match swap {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return Int::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = &t / &prev;
            }
            m[i][k] = Int::zero();
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// Leading principal minors `det(M[..k][..k])` for `k = 1..=n`, computed in
/// one fraction-free pass. Stops early (returning a short vector) as soon as
/// a minor is zero, since the remaining pivots are then undefined.
pub fn leading_minors(mat: &[Vec<Int>]) -> Vec<Int> {
    let n = mat.len();
    let mut m: Vec<Vec<Int>> = mat.to_vec();
    let mut minors = Vec::with_capacity(n);
    let mut prev = Int::one();
    for k in 0..n {
        // In Bareiss elimination without pivoting the k-th pivot equals the
        // k-th leading principal minor.
        let pivot = m[k][k].clone();
        minors.push(pivot.clone());
        if pivot.is_zero() {
            return minors;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = &t / &prev;
            }
        }
        prev = pivot;
    }
    minors
}

/// Solve `A x = b` over the rationals by Gaussian elimination.
/// Returns `None` when `A` is singular.
pub fn solve_rational(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.len();
    debug_assert_eq!(b.len(), n);
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for k in 0..n {
        let pivot_row = (k..n).find(|&r| !m[r][k].is_zero())?;
        m.swap(k, pivot_row);
        let pivot = m[k][k].clone();
        for j in k..=n {
            m[k][j] = &m[k][j] / &pivot;
        }
        for i in 0..n {
            if i != k && !m[i][k].is_zero() {
                let f = m[i][k].clone();
                for j in k..=n {
                    let t = &m[i][j] - &(&f * &m[k][j]);
                    m[i][j] = t;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

/// Binomial coefficient C(m, 2) = m(m-1)/2 for any integer m.
pub fn choose2(m: &Int) -> Int {
    m * (m - Int::one()) / int(2)
}

/// Find the degree `d >= 1` with C(d-1, 2) equal to `s`, if one exists.
///
/// Used by the degree-elimination certificates: a genus sum that is not of
/// this form admits no plane curve degree at all.
pub fn degree_with_genus_sum(s: &Int) -> Option<Int> {
    if s.is_negative() {
        return None;
    }
    if s.is_zero() {
        return Some(Int::one());
    }
    // (d-1)(d-2) = 2s; try x = d-2 near sqrt(2s).
    let target = int(2) * s;
    let root = target.sqrt();
    for delta in -1i64..=1 {
        let x = &root + int(delta);
        if x.is_negative() {
            continue;
        }
        if &x * (&x + Int::one()) == target {
            return Some(x + int(2));
        }
    }
    None
}

/// All quadratic residues modulo `m`, as a sorted deduplicated list.
pub fn squares_mod(m: u64) -> Vec<u64> {
    let mut set: Vec<u64> = (0..m).map(|x| x * x % m).collect();
    set.sort_unstable();
    set.dedup();
    set
}
