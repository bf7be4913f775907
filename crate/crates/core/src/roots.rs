//! Univariate integer polynomials: square-free decomposition and exact
//! isolation of positive real roots.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::{IntPolynomial, Var};

type Q = BigRational;

/// Ascending coefficients.
pub type UPoly = Vec<BigInt>;

fn trim<T: Zero>(mut p: Vec<T>) -> Vec<T> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn to_q(p: &[BigInt]) -> Vec<Q> {
    p.iter().map(|c| Q::from_integer(c.clone())).collect()
}

/// Clears denominators and content; the leading coefficient is made positive.
pub fn primitive(p: &[Q]) -> UPoly {
    let p = trim(p.to_vec());
    if p.is_empty() {
        return Vec::new();
    }
    let lcm = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| (c * Q::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = if ints.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
    ints.into_iter().map(|c| c / &g * &sign).collect()
}

fn derivative(p: &[Q]) -> Vec<Q> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * Q::from_integer(BigInt::from(i)))
        .collect()
}

fn divrem(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let b = trim(b.to_vec());
    let mut rem = trim(a.to_vec());
    assert!(!b.is_empty(), "division by zero polynomial");
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Q::zero(); rem.len() - b.len() + 1];
    let lead = b.last().unwrap().clone();
    while rem.len() >= b.len() && !rem.is_empty() {
        let k = rem.len() - b.len();
        let c = rem.last().unwrap() / &lead;
        for (i, bi) in b.iter().enumerate() {
            rem[k + i] -= &c * bi;
        }
        quot[k] = c;
        rem = trim(rem);
    }
    (trim(quot), rem)
}

fn gcd(a: &[Q], b: &[Q]) -> Vec<Q> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let (_, r) = divrem(&a, &b);
        // keep coefficient growth in check
        a = b;
        b = to_q(&primitive(&r));
    }
    to_q(&primitive(&a))
}

fn sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    let n = a.len().max(b.len());
    let mut out = vec![Q::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    trim(out)
}

/// Yun's algorithm: `p = c * prod f_i^i` with the `f_i` square-free and
/// pairwise coprime. Returns the non-constant `(f_i, i)`.
pub fn squarefree_decomposition(p: &[BigInt]) -> Vec<(UPoly, u32)> {
    let a = to_q(&primitive(&to_q(p)));
    if a.len() <= 1 {
        return Vec::new();
    }
    let b = derivative(&a);
    let c = gcd(&a, &b);
    let mut w = divrem(&a, &c).0;
    let mut y = divrem(&b, &c).0;
    let mut z = sub(&y, &derivative(&w));
    let mut out = Vec::new();
    let mut i = 1;
    while w.len() > 1 {
        let g = gcd(&w, &z);
        if g.len() > 1 {
            out.push((primitive(&g), i));
        }
        w = divrem(&w, &g).0;
        y = divrem(&z, &g).0;
        z = sub(&y, &derivative(&w));
        i += 1;
    }
    out
}

pub fn eval(p: &[BigInt], x: &Q) -> Q {
    p.iter()
        .rev()
        .fold(Q::zero(), |acc, c| acc * x + Q::from_integer(c.clone()))
}

fn eval_q(p: &[Q], x: &Q) -> Q {
    p.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
}

fn mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Sign variations of `(x+1)^d p((a x + b)/(x + 1))`, an upper bound on
/// (and of the same parity as) the number of roots in `(a, b)`.
fn descartes_bound(p: &[Q], a: &Q, b: &Q) -> usize {
    let d = p.len() - 1;
    let lin = vec![b.clone(), a.clone()];
    let one_plus = vec![Q::one(), Q::one()];
    let mut lin_pows = vec![vec![Q::one()]];
    let mut op_pows = vec![vec![Q::one()]];
    for _ in 0..d {
        lin_pows.push(mul(lin_pows.last().unwrap(), &lin));
        op_pows.push(mul(op_pows.last().unwrap(), &one_plus));
    }
    let mut r = vec![Q::zero(); d + 1];
    for (i, c) in p.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = mul(&lin_pows[i], &op_pows[d - i]);
        for (k, t) in term.iter().enumerate() {
            r[k] += c * t;
        }
    }
    let signs: Vec<bool> = r.iter().filter(|c| !c.is_zero()).map(|c| c.is_positive()).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// A positive real root in `[lo, hi]` (a point when found exactly).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootEnclosure {
    pub lo: Q,
    pub hi: Q,
    pub multiplicity: u32,
    /// The square-free factor the root belongs to.
    pub factor: UPoly,
}

impl RootEnclosure {
    pub fn mid(&self) -> Q {
        (&self.lo + &self.hi) / Q::from_integer(BigInt::from(2))
    }

    pub fn width(&self) -> Q {
        &self.hi - &self.lo
    }

    pub fn to_f64(&self) -> f64 {
        self.mid().to_f64().unwrap_or(f64::NAN)
    }

    pub fn contains(&self, x: &Q) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

fn cauchy_bound(p: &[Q]) -> Q {
    let lead = p.last().unwrap().abs();
    let m = p[..p.len() - 1]
        .iter()
        .map(|c| c.abs() / &lead)
        .fold(Q::zero(), |a, b| if b > a { b } else { a });
    Q::one() + m.ceil()
}

/// Refines a simple root of `p` strictly inside `(lo, hi)` by bisection.
fn refine(p: &[Q], mut lo: Q, mut hi: Q, width: &Q) -> (Q, Q) {
    let two = Q::from_integer(BigInt::from(2));
    let s_lo = eval_q(p, &lo).is_positive();
    while &(&hi - &lo) > width {
        let mid = (&lo + &hi) / &two;
        let v = eval_q(p, &mid);
        if v.is_zero() {
            return (mid.clone(), mid);
        }
        if v.is_positive() == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

fn isolate_squarefree(p: &[Q], width: &Q) -> Vec<(Q, Q)> {
    let two = Q::from_integer(BigInt::from(2));
    let mut found = Vec::new();
    let mut stack = vec![(Q::zero(), cauchy_bound(p))];
    while let Some((a, b)) = stack.pop() {
        match descartes_bound(p, &a, &b) {
            0 => {}
            1 => found.push(refine(p, a, b, width)),
            _ => {
                let mid = (&a + &b) / &two;
                if eval_q(p, &mid).is_zero() {
                    found.push((mid.clone(), mid.clone()));
                }
                stack.push((a, mid.clone()));
                stack.push((mid, b));
            }
        }
    }
    found
}

/// All positive real roots of `p`, each enclosed in an interval no wider
/// than `width`, sorted increasingly.
pub fn isolate_positive_roots_univariate(p: &[BigInt], width: &Q) -> Vec<RootEnclosure> {
    let mut out = Vec::new();
    for (factor, multiplicity) in squarefree_decomposition(p) {
        let fq = to_q(&factor);
        for (lo, hi) in isolate_squarefree(&fq, width) {
            out.push(RootEnclosure {
                lo,
                hi,
                multiplicity,
                factor: factor.clone(),
            });
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    out
}

/// [`isolate_positive_roots_univariate`] for a polynomial in `z` alone.
pub fn isolate_positive_roots(p: &IntPolynomial, width: &Q) -> crate::Result<Vec<RootEnclosure>> {
    let coeffs = p.to_univariate(Var::Z).ok_or_else(|| {
        crate::Error::InvalidInput(format!("expected a polynomial in z, got {p}"))
    })?;
    Ok(isolate_positive_roots_univariate(&coeffs, width))
}

/// Positive roots of a polynomial with rational coefficients.
pub fn isolate_positive_roots_rational(p: &[Q], width: &Q) -> Vec<RootEnclosure> {
    isolate_positive_roots_univariate(&primitive(p), width)
}

/// Does `d` divide `p` exactly (over the rationals)?
pub fn divides(d: &[BigInt], p: &[BigInt]) -> bool {
    divrem(&to_q(p), &to_q(d)).1.is_empty()
}

/// `p / d` when the division is exact with an integer quotient.
pub fn div_exact(p: &[BigInt], d: &[BigInt]) -> Option<UPoly> {
    let (quot, rem) = divrem(&to_q(p), &to_q(d));
    if !rem.is_empty() || quot.iter().any(|c| !c.is_integer()) {
        return None;
    }
    Some(quot.into_iter().map(|c| c.to_integer()).collect())
}

/// `10^(-digits)`.
pub fn width_for_digits(digits: u32) -> Q {
    Q::new(BigInt::one(), BigInt::from(10).pow(digits))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> UPoly {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn yun_splits_multiplicities() {
        // (z-1)^2 (z+2) = z^3 - 3z + 2
        let d = squarefree_decomposition(&p(&[2, -3, 0, 1]));
        assert_eq!(d, vec![(p(&[2, 1]), 1), (p(&[-1, 1]), 2)]);
    }

    #[test]
    fn exact_division() {
        assert!(divides(&p(&[-1, 1]), &p(&[2, -3, 0, 1])));
        assert!(!divides(&p(&[1, 1]), &p(&[2, -3, 0, 1])));
    }

    #[test]
    fn double_root() {
        let roots = isolate_positive_roots_univariate(&p(&[1, -2, 1]), &width_for_digits(20));
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].multiplicity, 2);
        assert!(roots[0].contains(&Q::one()));
    }

    #[test]
    fn quadratic_roots() {
        // 67z^2 - 20z + 1: (10 -+ sqrt 33)/67
        let roots = isolate_positive_roots_univariate(&p(&[1, -20, 67]), &width_for_digits(30));
        let v: Vec<f64> = roots.iter().map(RootEnclosure::to_f64).collect();
        let s = 33f64.sqrt();
        assert!((v[0] - (10.0 - s) / 67.0).abs() < 1e-15);
        assert!((v[1] - (10.0 + s) / 67.0).abs() < 1e-15);
    }

    #[test]
    fn exact_rational_roots_are_points() {
        // (2z-1)(4z-1)
        let roots = isolate_positive_roots_univariate(&p(&[1, -6, 8]), &width_for_digits(10));
        assert_eq!(roots.len(), 2);
        assert!(roots.iter().all(|r| r.width() < width_for_digits(10)));
    }

    #[test]
    fn negative_roots_are_ignored() {
        let roots = isolate_positive_roots_univariate(&p(&[2, 3, 1]), &width_for_digits(10));
        assert!(roots.is_empty());
    }
}
