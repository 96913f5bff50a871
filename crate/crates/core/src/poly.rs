//! Univariate polynomial helpers over the rationals: just enough for exact
//! eigenvalue extraction (square-free reduction and rational root search).
//!
//! Polynomials are coefficient vectors, `p[k]` the coefficient of `x^k`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Scalar;

pub fn degree(p: &[Scalar]) -> usize {
    p.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
}

pub fn eval(p: &[Scalar], x: &Scalar) -> Scalar {
    let mut acc = Scalar::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

pub fn derivative(p: &[Scalar]) -> Vec<Scalar> {
    if p.len() <= 1 {
        return vec![Scalar::zero()];
    }
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * Scalar::from_integer(BigInt::from(k)))
        .collect()
}

fn trim(p: &mut Vec<Scalar>) {
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
}

/// Remainder of `a` divided by `b` (monic division, `b != 0`).
fn rem(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let db = degree(b);
    let lead = b[db].clone();
    let mut r = a.to_vec();
    trim(&mut r);
    while degree(&r) >= db && !(r.len() == 1 && r[0].is_zero()) {
        let dr = degree(&r);
        let factor = &r[dr] / &lead;
        for k in 0..=db {
            let v = &r[dr - db + k] - &factor * &b[k];
            r[dr - db + k] = v;
        }
        r[dr] = Scalar::zero();
        trim(&mut r);
        if dr == 0 {
            break;
        }
    }
    r
}

fn gcd(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !(y.len() == 1 && y[0].is_zero()) {
        let r = rem(&x, &y);
        x = y;
        y = r;
    }
    let d = degree(&x);
    let lead = x[d].clone();
    if !lead.is_zero() {
        for c in &mut x {
            *c /= &lead;
        }
    }
    x
}

/// Exact quotient `a / b` (no remainder expected).
fn div_exact(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let da = degree(a);
    let db = degree(b);
    assert!(da >= db);
    let mut r = a.to_vec();
    let mut q = vec![Scalar::zero(); da - db + 1];
    let lead = b[db].clone();
    for k in (0..=da - db).rev() {
        let factor = &r[db + k] / &lead;
        q[k] = factor.clone();
        for t in 0..=db {
            let v = &r[t + k] - &factor * &b[t];
            r[t + k] = v;
        }
    }
    debug_assert!(r.iter().all(Zero::is_zero), "inexact polynomial division");
    q
}

/// All divisors of |n|, or `None` when the factorization does not complete
/// within the trial-division bound (callers then fall back to numerics).
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let mut m = n.abs();
    if m.is_zero() {
        return Some(vec![]);
    }
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut p = BigInt::from(2);
    let bound = BigInt::from(1_000_000u64);
    while &p * &p <= m && p <= bound {
        if m.is_multiple_of(&p) {
            let mut e = 0;
            while m.is_multiple_of(&p) {
                m /= &p;
                e += 1;
            }
            factors.push((p.clone(), e));
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    if m > BigInt::one() {
        if &m / &bound > bound {
            // Cofactor could be composite with large factors; give up.
            return None;
        }
        factors.push((m, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs.dedup();
    Some(divs)
}

/// Distinct rational roots of `p`, sorted ascending. The boolean is true
/// when the search was exhaustive (so a missing root proves irrationality).
pub fn rational_roots(p: &[Scalar]) -> (Vec<Scalar>, bool) {
    let mut f = p.to_vec();
    trim(&mut f);
    if degree(&f) == 0 {
        return (vec![], true);
    }
    // Square-free part captures every distinct root once.
    let g = gcd(&f, &derivative(&f));
    let mut sf = if degree(&g) > 0 { div_exact(&f, &g) } else { f };
    trim(&mut sf);
    let mut roots = Vec::new();
    // Pull out the root at zero first.
    if sf[0].is_zero() {
        roots.push(Scalar::zero());
        sf.remove(0);
        trim(&mut sf);
    }
    if degree(&sf) == 0 {
        roots.sort();
        return (roots, true);
    }
    // Clear denominators to an integer polynomial.
    let mut denom_lcm = BigInt::one();
    for c in &sf {
        denom_lcm = denom_lcm.lcm(c.denom());
    }
    let int_coeffs: Vec<BigInt> = sf
        .iter()
        .map(|c| c.numer() * (&denom_lcm / c.denom()))
        .collect();
    let d = int_coeffs.len() - 1;
    let Some(p_divs) = divisors(&int_coeffs[0]) else {
        return (roots, false);
    };
    let Some(q_divs) = divisors(&int_coeffs[d]) else {
        return (roots, false);
    };
    for pd in &p_divs {
        for qd in &q_divs {
            for sign in [1i32, -1] {
                let cand = Scalar::new(pd * BigInt::from(sign), qd.clone());
                if eval(&sf, &cand).is_zero() && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    (roots, true)
}
