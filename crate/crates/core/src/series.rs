//! Truncated formal power series with exact rational coefficients, in one
//! variable `z` or in `z` and a component-marking variable `w`.
//!
//! A series of truncation order `T` stores `a_0..=a_T`; every operation
//! returns the coefficients it can certify and nothing beyond.

use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{IntPolynomial, Var};

pub type Q = BigRational;

pub(crate) fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub(crate) fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Series {
    coeffs: Vec<Q>,
}

impl Series {
    /// Pads with zeros or truncates to `order`.
    pub fn new(mut coeffs: Vec<Q>, order: usize) -> Self {
        coeffs.resize(order + 1, Q::zero());
        Series { coeffs }
    }

    pub fn from_ints(values: &[i64], order: usize) -> Self {
        Series::new(values.iter().map(|&v| q(v)).collect(), order)
    }

    pub fn zero(order: usize) -> Self {
        Series::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Series::new(vec![Q::one()], order)
    }

    /// The series `z`.
    pub fn z(order: usize) -> Self {
        Series::new(vec![Q::zero(), Q::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &Q {
        &self.coeffs[n]
    }

    /// `[z^n]`, or an error if `n` is past the truncation order.
    pub fn get(&self, n: usize) -> Result<&Q> {
        self.coeffs.get(n).ok_or(Error::RaiseTruncation {
            n,
            order: self.order(),
        })
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        Series::new(self.coeffs[..=order].to_vec(), order)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Q) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Formal derivative; known to one order less.
    pub fn derive(&self) -> Self {
        let order = self.order().saturating_sub(1);
        let coeffs = (1..self.coeffs.len())
            .map(|n| &self.coeffs[n] * q(n as i64))
            .collect();
        Series::new(coeffs, order)
    }

    /// Multiplication by `z`; known to one order more.
    pub fn mul_z(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Q::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Series { coeffs }
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Series::one(self.order());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `self(inner(z))`; the inner series must have zero constant term.
    pub fn compose(&self, inner: &Series) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonZeroConstantTerm);
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncate(order);
        let mut acc = Series::zero(order);
        // Horner from the top coefficient
        for c in self.coeffs[..=order].iter().rev() {
            acc = &acc * &inner;
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// `P(z, self(z))` for a polynomial in `z` and `Y`, to the same order.
    pub fn substitute_into(&self, p: &IntPolynomial) -> Result<Series> {
        let b = BiSeries::from_series(self);
        let out = eval_poly(p, &b, self.order())?;
        Ok(out.specialize_w(&Q::one()))
    }

    /// Coefficients as integers, if they all are.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// True if every coefficient is a non-negative integer.
    pub fn is_counting_sequence(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer() && !c.is_negative())
    }

    /// Partial sum at a real point.
    pub fn partial_sum_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    pub fn to_json(&self, class: &str) -> serde_json::Value {
        #[derive(Serialize)]
        struct Export<'a> {
            class: &'a str,
            #[serde(rename = "T")]
            order: usize,
            coeffs: Vec<String>,
        }
        serde_json::to_value(Export {
            class,
            order: self.order(),
            coeffs: self.coeffs.iter().map(ToString::to_string).collect(),
        })
        .expect("series export serializes")
    }
}

impl<'a> Add<&'a Series> for &'a Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order).map(|n| &self.coeffs[n] + &rhs.coeffs[n]).collect();
        Series { coeffs }
    }
}

impl<'a> Sub<&'a Series> for &'a Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order).map(|n| &self.coeffs[n] - &rhs.coeffs[n]).collect();
        Series { coeffs }
    }
}

impl<'a> Mul<&'a Series> for &'a Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![Q::zero(); order + 1];
        for (i, a) in self.coeffs[..=order].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=order - i].iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Series { coeffs }
    }
}

/// Polynomial in `w` with rational coefficients, ascending, no trailing zeros.
type WPoly = Vec<Q>;

fn w_trim(mut p: WPoly) -> WPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn w_add_assign(acc: &mut WPoly, other: &[Q]) {
    if acc.len() < other.len() {
        acc.resize(other.len(), Q::zero());
    }
    for (a, b) in acc.iter_mut().zip(other) {
        *a += b;
    }
}

fn w_mul(a: &[Q], b: &[Q]) -> WPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    w_trim(out)
}

/// Exact division `a / b` in `Q[w]`; `None` if there is a remainder.
fn w_div_exact(a: &[Q], b: &[Q]) -> Option<WPoly> {
    let a = w_trim(a.to_vec());
    let b = w_trim(b.to_vec());
    assert!(!b.is_empty(), "division by zero polynomial");
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let mut rem = a;
    let mut quot = vec![Q::zero(); rem.len() - b.len() + 1];
    let lead = b.last().unwrap();
    for k in (0..quot.len()).rev() {
        let c = &rem[k + b.len() - 1] / lead;
        if c.is_zero() {
            continue;
        }
        for (i, bi) in b.iter().enumerate() {
            rem[k + i] -= &c * bi;
        }
        quot[k] = c;
    }
    rem.iter().all(Zero::is_zero).then(|| w_trim(quot))
}

/// Bivariate truncated series: row `n` holds the polynomial `[z^n] F(z, w)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BiSeries {
    rows: Vec<WPoly>,
}

impl BiSeries {
    pub fn new(rows: Vec<Vec<Q>>, order: usize) -> Self {
        let mut rows: Vec<WPoly> = rows.into_iter().map(w_trim).collect();
        rows.resize(order + 1, Vec::new());
        BiSeries { rows }
    }

    pub fn zero(order: usize) -> Self {
        BiSeries::new(Vec::new(), order)
    }

    pub fn from_series(s: &Series) -> Self {
        BiSeries::new(s.coeffs.iter().map(|c| vec![c.clone()]).collect(), s.order())
    }

    /// Truncation of a polynomial in `z` and `w`.
    pub fn from_polynomial(p: &IntPolynomial, order: usize) -> Result<Self> {
        if p.contains(Var::Y) || p.contains(Var::A) {
            return Err(Error::InvalidInput(format!(
                "expected a polynomial in z and w, got {p}"
            )));
        }
        let mut rows = vec![Vec::new(); order + 1];
        for (m, c) in p.terms() {
            let (n, k) = (m[0] as usize, m[1] as usize);
            if n > order {
                continue;
            }
            let row: &mut WPoly = &mut rows[n];
            if row.len() <= k {
                row.resize(k + 1, Q::zero());
            }
            row[k] += Q::from_integer(c.clone());
        }
        Ok(BiSeries::new(rows, order))
    }

    pub fn order(&self) -> usize {
        self.rows.len() - 1
    }

    /// `[z^n]` as ascending coefficients in `w` (possibly shorter than `n+1`).
    pub fn row(&self, n: usize) -> &[Q] {
        &self.rows[n]
    }

    /// `[z^n w^k]`.
    pub fn coeff(&self, n: usize, k: usize) -> Q {
        self.rows[n].get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order());
        BiSeries {
            rows: self.rows[..=order].to_vec(),
        }
    }

    pub fn specialize_w(&self, w: &Q) -> Series {
        let coeffs = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .rev()
                    .fold(Q::zero(), |acc, c| acc * w + c)
            })
            .collect();
        Series { coeffs }
    }

    /// The univariate series `F(z, 1)`.
    pub fn marginal(&self) -> Series {
        self.specialize_w(&Q::one())
    }

    /// Mean of the `w`-statistic over objects of size `n`: `sum_k k f_{n,k} / f_n`.
    pub fn mean_statistic(&self, n: usize) -> Q {
        let row = &self.rows[n];
        let total: Q = row.iter().fold(Q::zero(), |a, c| a + c);
        let weighted = row
            .iter()
            .enumerate()
            .fold(Q::zero(), |a, (k, c)| a + c * q(k as i64));
        weighted / total
    }

    fn mul_truncated(&self, rhs: &BiSeries, order: usize) -> BiSeries {
        let mut rows = vec![Vec::new(); order + 1];
        for i in 0..=order.min(self.order()) {
            if self.rows[i].is_empty() {
                continue;
            }
            for j in 0..=(order - i).min(rhs.order()) {
                if rhs.rows[j].is_empty() {
                    continue;
                }
                let prod = w_mul(&self.rows[i], &rhs.rows[j]);
                w_add_assign(&mut rows[i + j], &prod);
            }
        }
        BiSeries::new(rows, order)
    }

    fn add_truncated(&self, rhs: &BiSeries, order: usize) -> BiSeries {
        let mut rows = vec![Vec::new(); order + 1];
        for (n, row) in rows.iter_mut().enumerate() {
            if n <= self.order() {
                w_add_assign(row, &self.rows[n]);
            }
            if n <= rhs.order() {
                w_add_assign(row, &rhs.rows[n]);
            }
        }
        BiSeries::new(rows, order)
    }

    fn padded(&self, order: usize) -> BiSeries {
        let mut rows = self.rows.clone();
        rows.resize(order + 1, Vec::new());
        rows.truncate(order + 1);
        BiSeries { rows }
    }
}

/// `P(z, w, Y(z, w))` truncated at `order`, by Horner in `Y`.
fn eval_poly(p: &IntPolynomial, y: &BiSeries, order: usize) -> Result<BiSeries> {
    let coeffs = p.coefficients_in(Var::Y);
    let y = y.padded(order);
    let mut acc = BiSeries::zero(order);
    for c in coeffs.iter().rev() {
        let c = BiSeries::from_polynomial(c, order)?;
        acc = acc.mul_truncated(&y, order).add_truncated(&c, order);
    }
    Ok(acc)
}

/// Undetermined coefficients for `P(z, w, Y) = 0` starting from a seed.
///
/// If `v` is the valuation of `P_Y(z, w, Y)` along the branch and the seed
/// has more than `v` terms, then `[z^(n+v)] P(z, w, Y_{<n} + c z^n)` is
/// linear in `c` with coefficient `[z^v] P_Y`, which pins every later
/// coefficient down uniquely.
fn solve_core(p: &IntPolynomial, seed: &[Vec<Q>], order: usize) -> Result<BiSeries> {
    let s = seed.len();
    if s == 0 {
        return Err(Error::AmbiguousSeed(0));
    }
    let py = p.derivative(Var::Y);
    let seed_series = BiSeries::new(seed.to_vec(), s - 1);

    let dy = eval_poly(&py, &seed_series, s - 1)?;
    let v = (0..s)
        .find(|&n| !dy.rows[n].is_empty())
        .ok_or(Error::AmbiguousSeed(s))?;
    let residual = eval_poly(p, &seed_series, s + v - 1)?;
    if residual.rows.iter().any(|r| !r.is_empty()) {
        return Err(Error::BranchMismatch);
    }
    let lead = dy.rows[v].clone();

    let mut y = seed_series;
    for n in s..=order {
        let e = eval_poly(p, &y, n + v)?;
        let r: Vec<Q> = e.rows[n + v].iter().map(|c| -c).collect();
        let c = w_div_exact(&r, &lead).ok_or_else(|| {
            Error::Degenerate(format!("coefficient of z^{n} is not polynomial in w"))
        })?;
        y = y.padded(n);
        y.rows[n] = c;
    }
    Ok(if order < y.order() {
        y.truncate(order)
    } else {
        y.padded(order)
    })
}

/// Power-series solution of `P(z, Y) = 0` extending `seed`, to order `order`.
///
/// Errors with [`Error::BranchMismatch`] if no branch agrees with the seed
/// and [`Error::AmbiguousSeed`] if the seed is too short to separate branches.
pub fn solve_algebraic(p: &IntPolynomial, seed: &[Q], order: usize) -> Result<Series> {
    if p.contains(Var::W) || p.contains(Var::A) {
        return Err(Error::InvalidInput(
            "univariate solve expects a polynomial in z and Y".into(),
        ));
    }
    let rows: Vec<Vec<Q>> = seed.iter().map(|c| vec![c.clone()]).collect();
    Ok(solve_core(p, &rows, order)?.specialize_w(&Q::one()))
}

/// Same as [`solve_algebraic`] for `P(z, w, Y)`; seed rows are polynomials in `w`.
pub fn solve_algebraic_bivariate(
    p: &IntPolynomial,
    seed: &[Vec<Q>],
    order: usize,
) -> Result<BiSeries> {
    if p.contains(Var::A) {
        return Err(Error::InvalidInput("unexpected auxiliary variable".into()));
    }
    solve_core(p, seed, order)
}

/// Fixed point of `F = 1 + T(z F)`: forests whose components come from the
/// tree class `T`.
///
/// Coefficient `n` of `F` only depends on coefficients `< n`, so the powers
/// of `x = z F` are grown one coefficient at a time; this is the limit of
/// the iteration `F <- 1 + T(zF)` after `T` rounds.
pub fn forest_from_tree(tree: &Series) -> Result<Series> {
    if !tree.coeff(0).is_zero() {
        return Err(Error::NonZeroConstantTerm);
    }
    let order = tree.order();
    let mut f = vec![Q::zero(); order + 1];
    f[0] = Q::one();
    // powers[j][m] = [z^m] x^j
    let mut powers: Vec<Vec<Q>> = vec![vec![Q::zero(); order + 1]; order + 1];
    for n in 1..=order {
        powers[1][n] = f[n - 1].clone();
        for j in 2..=n {
            let mut acc = Q::zero();
            for i in 1..=n + 1 - j {
                let a = &powers[1][i];
                let b = &powers[j - 1][n - i];
                if !a.is_zero() && !b.is_zero() {
                    acc += a * b;
                }
            }
            powers[j][n] = acc;
        }
        let mut acc = Q::zero();
        for j in 1..=n {
            let t = tree.coeff(j);
            if !t.is_zero() {
                acc += t * &powers[j][n];
            }
        }
        f[n] = acc;
    }
    Ok(Series::new(f, order))
}

/// Bivariate forests `F = 1 + U(zF) + w M(zF)`: components from `unmarked`
/// are counted with weight 1 and components from `marked` with weight `w`.
///
/// Rows come from Lagrange inversion: with `x = z phi(x)`,
/// `phi = 1 + U + w M`, one has `[z^n] F = [u^n] phi^(n+1) / (n+1)` and so
/// `f_{n,k} = C(n+1, k) / (n+1) [u^n] M^k (1+U)^(n+1-k)`.
pub fn forest_from_trees(unmarked: &Series, marked: &Series) -> Result<BiSeries> {
    if !unmarked.coeff(0).is_zero() || !marked.coeff(0).is_zero() {
        return Err(Error::NonZeroConstantTerm);
    }
    let order = unmarked.order().min(marked.order());
    let a = &Series::one(order) + &unmarked.truncate(order);
    let m = marked.truncate(order);
    let mut m_pows = vec![Series::one(order)];
    let mut a_pows = vec![Series::one(order)];
    for _ in 0..=order {
        m_pows.push(m_pows.last().unwrap() * &m);
        a_pows.push(a_pows.last().unwrap() * &a);
    }
    let mut rows = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let mut row = vec![Q::zero(); n + 2];
        for (k, slot) in row.iter_mut().enumerate() {
            let mk = &m_pows[k];
            let ak = &a_pows[n + 1 - k];
            let mut acc = Q::zero();
            for i in 0..=n {
                let (x, y) = (mk.coeff(i), ak.coeff(n - i));
                if !x.is_zero() && !y.is_zero() {
                    acc += x * y;
                }
            }
            if !acc.is_zero() {
                let c = Q::new(binomial(n as u64 + 1, k as u64), BigInt::from(n + 1));
                *slot = acc * c;
            }
        }
        rows.push(row);
    }
    Ok(BiSeries::new(rows, order))
}

/// Plain bivariate forests: every component carries `w`.
pub fn forest_from_tree_marked(tree: &Series) -> Result<BiSeries> {
    forest_from_trees(&Series::zero(tree.order()), tree)
}

/// Distribution check helper: `Pr[stat >= threshold]` among objects of size `n`.
pub fn tail_probability(b: &BiSeries, n: usize, threshold: &Q) -> Q {
    let row = b.row(n);
    let total: Q = row.iter().fold(Q::zero(), |a, c| a + c);
    let tail: Q = row
        .iter()
        .enumerate()
        .filter(|(k, _)| &q(*k as i64) >= threshold)
        .fold(Q::zero(), |a, (_, c)| a + c);
    tail / total
}


#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    fn ints(s: &Series) -> Vec<i64> {
        s.coeffs().iter().map(|c| c.to_integer().try_into().unwrap()).collect()
    }

    #[test]
    fn product_truncates() {
        let a = Series::from_ints(&[1, 1], 2);
        let b = Series::from_ints(&[1, -1], 2);
        assert_eq!(ints(&(&a * &b)), vec![1, 0, -1]);
    }

    #[test]
    fn composition() {
        let outer = Series::from_ints(&[0, 0, 1], 3);
        let inner = Series::from_ints(&[0, 1, 1], 3);
        assert_eq!(ints(&outer.compose(&inner).unwrap()), vec![0, 0, 1, 2]);
    }

    #[test]
    fn composition_rejects_constant_term() {
        let outer = Series::from_ints(&[0, 1], 3);
        let inner = Series::from_ints(&[1, 1], 3);
        assert!(matches!(outer.compose(&inner), Err(Error::NonZeroConstantTerm)));
    }

    #[test]
    fn derive_then_shift_marks_every_vertex() {
        let t = Series::from_ints(&[0, 1, 1, 3, 12], 4);
        let marked = t.derive().mul_z();
        assert_eq!(marked.order(), 4);
        assert_eq!(ints(&marked), vec![0, 1, 2, 9, 48]);
    }

    #[test]
    fn tree_equation_seeded() {
        let t = solve_algebraic(&poly("Y^3-zY+z^2"), &[q(0), q(1)], 6).unwrap();
        assert_eq!(ints(&t), vec![0, 1, 1, 3, 12, 55, 273]);
    }

    #[test]
    fn wrong_seed_is_a_mismatch() {
        let r = solve_algebraic(&poly("Y^3-zY+z^2"), &[q(0), q(2)], 6);
        assert!(matches!(r, Err(Error::BranchMismatch)));
    }

    #[test]
    fn short_seed_is_ambiguous() {
        // Y^2 = z^2 has the branches z and -z; one coefficient cannot pick one
        let r = solve_algebraic(&poly("Y^2-z^2"), &[q(0)], 4);
        assert!(matches!(r, Err(Error::AmbiguousSeed(1))));
        let ok = solve_algebraic(&poly("Y^2-z^2"), &[q(0), q(-1)], 4).unwrap();
        assert_eq!(ints(&ok), vec![0, -1, 0, 0, 0]);
    }

    #[test]
    fn isolated_vertices_only() {
        let f = forest_from_tree(&Series::z(6)).unwrap();
        assert_eq!(ints(&f), vec![1; 7]);
    }

    #[test]
    fn bivariate_from_single_vertices() {
        // every vertex its own component: f_{n,n} = 1
        let b = forest_from_tree_marked(&Series::z(5)).unwrap();
        for n in 0..=5 {
            for k in 0..=n + 1 {
                assert_eq!(b.coeff(n, k), q(i64::from(k == n)));
            }
        }
    }

    #[test]
    fn exact_polynomial_division_in_w() {
        let a = vec![q(-1), q(0), q(1)];
        let b = vec![q(1), q(1)];
        assert_eq!(w_div_exact(&a, &b), Some(vec![q(-1), q(1)]));
        assert_eq!(w_div_exact(&[q(1), q(0), q(1)], &b), None);
    }

    #[test]
    fn bivariate_solver_matches_lagrange_rows() {
        // forests over all nc-trees, w per component
        let p = poly("(Y-1)^3-w^2zY(Y-1)+w^3z^2Y^2");
        let b = solve_algebraic_bivariate(&p, &[vec![q(1)], vec![q(0), q(1)]], 7).unwrap();
        let t = solve_algebraic(&poly("Y^3-zY+z^2"), &[q(0), q(1)], 7).unwrap();
        assert_eq!(b, forest_from_tree_marked(&t).unwrap());
    }
}
