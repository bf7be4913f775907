//! Sparse multivariate polynomials with integer coefficients and the
//! Sylvester resultant used to eliminate unknowns.
//!
//! Four variables are available: `z` (size), `w` (component marks), `Y`
//! (the generating function) and an auxiliary `A` that only ever appears
//! as the variable being eliminated.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Z,
    W,
    Y,
    A,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::Z, Var::W, Var::Y, Var::A];

    fn index(self) -> usize {
        match self {
            Var::Z => 0,
            Var::W => 1,
            Var::Y => 2,
            Var::A => 3,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Var::Z => "z",
            Var::W => "w",
            Var::Y => "Y",
            Var::A => "A",
        }
    }
}

pub type Monomial = [u32; 4];

/// Integer polynomial in `z`, `w`, `Y`, `A`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct IntPolynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term([0; 4], c.into());
        p
    }

    pub fn var(v: Var) -> Self {
        let mut m = [0; 4];
        m[v.index()] = 1;
        let mut p = Self::zero();
        p.add_term(m, BigInt::one());
        p
    }

    pub fn monomial(c: impl Into<BigInt>, m: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c.into());
        p
    }

    /// Univariate polynomial in `v` from ascending coefficients.
    pub fn from_univariate(v: Var, coeffs: &[BigInt]) -> Self {
        let mut p = Self::zero();
        for (i, c) in coeffs.iter().enumerate() {
            let mut m = [0; 4];
            m[v.index()] = i as u32;
            p.add_term(m, c.clone());
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Degree in `v`; `None` for the zero polynomial.
    pub fn degree(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|m| m[v.index()]).max()
    }

    pub fn contains(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m[v.index()] > 0)
    }

    pub fn vars(&self) -> Vec<Var> {
        Var::ALL.into_iter().filter(|&v| self.contains(v)).collect()
    }

    /// Coefficients with respect to `v`: `self = sum_i out[i] * v^i`.
    pub fn coefficients_in(&self, v: Var) -> Vec<IntPolynomial> {
        let deg = self.degree(v).unwrap_or(0) as usize;
        let mut out = vec![IntPolynomial::zero(); deg + 1];
        for (m, c) in &self.terms {
            let mut rest = *m;
            let e = rest[v.index()] as usize;
            rest[v.index()] = 0;
            out[e].add_term(rest, c.clone());
        }
        out
    }

    pub fn derivative(&self, v: Var) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m[v.index()];
            if e == 0 {
                continue;
            }
            let mut m2 = *m;
            m2[v.index()] = e - 1;
            out.add_term(m2, c * BigInt::from(e));
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Simultaneous substitution of the listed variables.
    pub fn subst(&self, images: &[(Var, IntPolynomial)]) -> Self {
        let mut cache: BTreeMap<(usize, u32), IntPolynomial> = BTreeMap::new();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut term = IntPolynomial::monomial(c.clone(), [0; 4]);
            let mut kept = [0u32; 4];
            for v in Var::ALL {
                let e = m[v.index()];
                if e == 0 {
                    continue;
                }
                match images.iter().position(|(u, _)| *u == v) {
                    Some(pos) => {
                        let p = cache
                            .entry((pos, e))
                            .or_insert_with(|| images[pos].1.pow(e))
                            .clone();
                        term = &term * &p;
                    }
                    None => kept[v.index()] = e,
                }
            }
            out = &out + &(&term * &IntPolynomial::monomial(1, kept));
        }
        out
    }

    /// Substitutes `v = num / den` and clears the denominator:
    /// returns `sum_j c_j * num^j * den^(d - j)` with `d = deg_v(self)`.
    /// The other variables in the coefficients `c_j` are replaced by `images`
    /// simultaneously.
    pub fn subst_fraction(
        &self,
        v: Var,
        num: &IntPolynomial,
        den: &IntPolynomial,
        images: &[(Var, IntPolynomial)],
    ) -> Self {
        let coeffs = self.coefficients_in(v);
        let d = coeffs.len() as u32 - 1;
        let mut out = Self::zero();
        for (j, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = &(&c.subst(images) * &num.pow(j as u32)) * &den.pow(d - j as u32);
            out = &out + &term;
        }
        out
    }

    /// Evaluates with every present variable bound to an integer.
    pub fn eval_int(&self, point: &[(Var, BigInt)]) -> BigInt {
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for v in Var::ALL {
                let e = m[v.index()];
                if e == 0 {
                    continue;
                }
                let x = point
                    .iter()
                    .find(|(u, _)| *u == v)
                    .map(|(_, x)| x)
                    .expect("variable missing from evaluation point");
                t *= num_traits::pow(x.clone(), e as usize);
            }
            total += t;
        }
        total
    }

    /// Evaluates at rational values; unbound variables must not occur.
    pub fn eval_rational(&self, point: &[(Var, BigRational)]) -> BigRational {
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for v in Var::ALL {
                let e = m[v.index()];
                if e == 0 {
                    continue;
                }
                let x = point
                    .iter()
                    .find(|(u, _)| *u == v)
                    .map(|(_, x)| x)
                    .expect("variable missing from evaluation point");
                t *= num_traits::pow(x.clone(), e as usize);
            }
            total += t;
        }
        total
    }

    /// Partial evaluation: binds some variables to rationals and returns the
    /// polynomial in the remaining one (`rest`) as ascending rational
    /// coefficients.
    pub fn specialize_to_univariate(
        &self,
        rest: Var,
        point: &[(Var, BigRational)],
    ) -> Vec<BigRational> {
        self.coefficients_in(rest)
            .iter()
            .map(|c| c.eval_rational(point))
            .collect()
    }

    /// Ascending integer coefficients if the polynomial only involves `v`.
    pub fn to_univariate(&self, v: Var) -> Option<Vec<BigInt>> {
        if self.vars().iter().any(|&u| u != v) {
            return None;
        }
        let deg = self.degree(v).unwrap_or(0) as usize;
        let mut out = vec![BigInt::zero(); deg + 1];
        for (m, c) in &self.terms {
            out[m[v.index()] as usize] = c.clone();
        }
        Some(out)
    }

    pub fn content(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the integer content and the largest monomial dividing
    /// every term; the sign is fixed so that the lowest monomial (in
    /// `z, w, Y, A` lexicographic order) has a positive coefficient.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut low = [u32::MAX; 4];
        for m in self.terms.keys() {
            for i in 0..4 {
                low[i] = low[i].min(m[i]);
            }
        }
        let g = self.content();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut m2 = *m;
            for i in 0..4 {
                m2[i] -= low[i];
            }
            out.add_term(m2, c / &g);
        }
        let lead = out.terms.iter().next().map(|(_, c)| c.is_negative()).unwrap_or(false);
        if lead {
            -out
        } else {
            out
        }
    }

    /// Exact division by an integer; `None` if some coefficient is not divisible.
    pub fn div_exact_int(&self, d: &BigInt) -> Option<Self> {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            out.add_term(*m, q);
        }
        Some(out)
    }

    /// True if `self` is a rational multiple of `other`.
    pub fn is_proportional_to(&self, other: &IntPolynomial) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        if self.terms.len() != other.terms.len() {
            return false;
        }
        let (m0, a0) = self.terms.iter().next().unwrap();
        let Some(b0) = other.terms.get(m0) else {
            return false;
        };
        self.terms.iter().all(|(m, a)| match other.terms.get(m) {
            Some(b) => a * b0 == b * a0,
            None => false,
        })
    }
}

impl Neg for IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl<'a> Add<&'a IntPolynomial> for &'a IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a IntPolynomial> for &'a IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a IntPolynomial> for &'a IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        let mut out = IntPolynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = [ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2], ma[3] + mb[3]];
                out.add_term(m, ca * cb);
            }
        }
        out
    }
}

impl Add for IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: IntPolynomial) -> IntPolynomial {
        &self + &rhs
    }
}

impl Sub for IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: IntPolynomial) -> IntPolynomial {
        &self - &rhs
    }
}

impl Mul for IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: IntPolynomial) -> IntPolynomial {
        &self * &rhs
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // highest power of Y first, then z, w, A
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            (b[2], b[0], b[1], b[3]).cmp(&(a[2], a[0], a[1], a[3]))
        });
        for (i, (m, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mut factors = Vec::new();
            for v in [Var::Z, Var::W, Var::Y, Var::A] {
                match m[v.index()] {
                    0 => {}
                    1 => factors.push(v.name().to_string()),
                    e => factors.push(format!("{}^{}", v.name(), e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

/// Parses expressions such as `27z(1+z)^3Y^4-(83z^3+180z^2+93z+4)Y^3+4`.
/// Multiplication may be implicit. Variables: `z`, `w`, `Y`/`y`, `A`/`a`.
impl FromStr for IntPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut parser = Parser { chars, pos: 0 };
        let p = parser.expr()?;
        if parser.pos != parser.chars.len() {
            return Err(Error::Parse(format!(
                "unexpected '{}' at {}",
                parser.chars[parser.pos], parser.pos
            )));
        }
        Ok(p)
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<IntPolynomial> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                '-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<IntPolynomial> {
        let mut negate = false;
        while let Some(c @ ('-' | '+')) = self.peek() {
            if c == '-' {
                negate = !negate;
            }
            self.pos += 1;
        }
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(c) if c.is_ascii_alphanumeric() || c == '(' => {
                    acc = &acc * &self.factor()?;
                }
                _ => break,
            }
        }
        Ok(if negate { -acc } else { acc })
    }

    fn factor(&mut self) -> Result<IntPolynomial> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.number()?;
            let e = e
                .to_u32()
                .ok_or_else(|| Error::Parse("exponent too large".into()))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn number(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Parse(format!("expected number at {start}")));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse::<BigInt>()
            .map_err(|e| Error::Parse(e.to_string()))
    }

    fn atom(&mut self) -> Result<IntPolynomial> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(Error::Parse(format!("expected ')' at {}", self.pos)));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => Ok(IntPolynomial::constant(self.number()?)),
            Some(c) => {
                self.pos += 1;
                let v = match c {
                    'z' => Var::Z,
                    'w' => Var::W,
                    'Y' | 'y' => Var::Y,
                    'A' | 'a' => Var::A,
                    other => return Err(Error::Parse(format!("unknown symbol '{other}'"))),
                };
                Ok(IntPolynomial::var(v))
            }
            None => Err(Error::Parse("unexpected end of input".into())),
        }
    }
}

/// Resultant of `p` and `q` with respect to `v`, as an exact integer
/// polynomial in the remaining variables.
///
/// The Sylvester determinant is evaluated on an integer grid large enough
/// for the degree bound `deg_v(q) deg_u(p) + deg_v(p) deg_u(q)` in each
/// remaining variable `u`, then interpolated back.
pub fn resultant(p: &IntPolynomial, q: &IntPolynomial, v: Var) -> Result<IntPolynomial> {
    let dp = p.degree(v).unwrap_or(0);
    let dq = q.degree(v).unwrap_or(0);
    if dp == 0 || dq == 0 {
        return Err(Error::Degenerate(format!(
            "resultant needs both polynomials to involve {} (degrees {dp}, {dq})",
            v.name()
        )));
    }
    let pc = p.coefficients_in(v);
    let qc = q.coefficients_in(v);
    let others: Vec<Var> = Var::ALL
        .into_iter()
        .filter(|&u| u != v && (p.contains(u) || q.contains(u)))
        .collect();
    let bounds: Vec<usize> = others
        .iter()
        .map(|&u| {
            (dq * p.degree(u).unwrap_or(0) + dp * q.degree(u).unwrap_or(0)) as usize
        })
        .collect();
    let dims: Vec<usize> = bounds.iter().map(|b| b + 1).collect();
    let total: usize = dims.iter().product();

    let mut values = Vec::with_capacity(total);
    for flat in 0..total {
        let idx = unflatten(flat, &dims);
        let point: Vec<(Var, BigInt)> = others
            .iter()
            .zip(&idx)
            .map(|(&u, &i)| (u, BigInt::from(i)))
            .collect();
        let a: Vec<BigInt> = pc.iter().map(|c| c.eval_int(&point)).collect();
        let b: Vec<BigInt> = qc.iter().map(|c| c.eval_int(&point)).collect();
        values.push(bareiss_det(sylvester(&a, &b)));
    }

    let coeffs = interpolate_grid(values, &dims)?;
    let mut out = IntPolynomial::zero();
    for (flat, c) in coeffs.into_iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let idx = unflatten(flat, &dims);
        let mut m = [0u32; 4];
        for (&u, &e) in others.iter().zip(&idx) {
            m[u.index()] = e as u32;
        }
        out.add_term(m, c);
    }
    Ok(out)
}

/// Sylvester matrix of two coefficient vectors given in ascending order.
fn sylvester(a: &[BigInt], b: &[BigInt]) -> Vec<Vec<BigInt>> {
    let m = a.len() - 1;
    let n = b.len() - 1;
    let size = m + n;
    let mut rows = vec![vec![BigInt::zero(); size]; size];
    for i in 0..n {
        for (j, c) in a.iter().rev().enumerate() {
            rows[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in b.iter().rev().enumerate() {
            rows[n + i][i + j] = c.clone();
        }
    }
    rows
}

/// Fraction-free Gaussian elimination.
pub(crate) fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

fn unflatten(mut flat: usize, dims: &[usize]) -> Vec<usize> {
    let mut idx = vec![0; dims.len()];
    for d in (0..dims.len()).rev() {
        idx[d] = flat % dims[d];
        flat /= dims[d];
    }
    idx
}

/// Converts values on the grid `{0..dims[0]} x ...` into monomial
/// coefficients, one dimension at a time.
fn interpolate_grid(mut values: Vec<BigInt>, dims: &[usize]) -> Result<Vec<BigInt>> {
    let total = values.len();
    for d in 0..dims.len() {
        let stride: usize = dims[d + 1..].iter().product();
        let len = dims[d];
        for base in 0..total {
            // visit each line along dimension d once, from its first element
            if (base / stride) % len != 0 {
                continue;
            }
            let line: Vec<BigInt> = (0..len).map(|i| values[base + i * stride].clone()).collect();
            let coeffs = interpolate_line(&line)?;
            for (i, c) in coeffs.into_iter().enumerate() {
                values[base + i * stride] = c;
            }
        }
    }
    Ok(values)
}

/// Newton interpolation through `(i, ys[i])`, `i = 0..n`, returned in the
/// monomial basis. The result must have integer coefficients.
fn interpolate_line(ys: &[BigInt]) -> Result<Vec<BigInt>> {
    let n = ys.len();
    // forward differences divided by k! give the Newton coefficients
    let mut diffs: Vec<BigRational> = ys.iter().cloned().map(BigRational::from_integer).collect();
    let mut newton = Vec::with_capacity(n);
    let mut fact = BigInt::one();
    for k in 0..n {
        if k > 0 {
            fact *= BigInt::from(k);
        }
        newton.push(&diffs[0] / BigRational::from_integer(fact.clone()));
        for i in 0..diffs.len().saturating_sub(1) {
            diffs[i] = &diffs[i + 1] - &diffs[i];
        }
        diffs.pop();
    }
    // p(x) = c0 + x (c1 + (x - 1)(c2 + (x - 2)(...)))
    let mut poly: Vec<BigRational> = vec![BigRational::zero(); n];
    for k in (0..n).rev() {
        // poly <- poly * (x - k) + newton[k]
        let mut next = vec![BigRational::zero(); n];
        let shift = BigRational::from_integer(BigInt::from(k));
        for i in 0..n {
            if poly[i].is_zero() {
                continue;
            }
            if i + 1 < n {
                next[i + 1] += &poly[i];
            }
            next[i] -= &poly[i] * &shift;
        }
        next[0] += &newton[k];
        poly = next;
    }
    poly.into_iter()
        .map(|c| {
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(Error::Degenerate(format!("non-integral interpolation coefficient {c}")))
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn parses_implicit_products() {
        let a = p("27z(1+z)^3Y^4");
        let b = p("27*z*Y^4 + 81*z^2*Y^4 + 81*z^3*Y^4 + 27*z^4*Y^4");
        assert_eq!(a, b);
        assert_eq!(p("-(12+40z)Y"), p("-12Y-40zY"));
        assert_eq!(p("6(3z+2)(8z+1)Y^2"), p("144z^2Y^2+114zY^2+12Y^2"));
    }

    #[test]
    fn rejects_garbage() {
        assert!("3x".parse::<IntPolynomial>().is_err());
        assert!("(z+1".parse::<IntPolynomial>().is_err());
    }

    #[test]
    fn linear_resultant() {
        let r = resultant(&p("Y-z"), &p("Y+z"), Var::Y).unwrap();
        assert_eq!(r, p("2z"));
    }

    #[test]
    fn resultant_needs_the_variable() {
        assert!(matches!(
            resultant(&p("z+1"), &p("Y^2-z"), Var::Y),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn resultant_vanishes_on_common_factor() {
        let f = p("(Y-z)(Y+2)");
        let g = p("(Y-z)(Y-3z)");
        assert!(resultant(&f, &g, Var::Y).unwrap().is_zero());
    }

    #[test]
    fn discriminant_of_square_root() {
        let f = p("Y^2-z");
        let d = resultant(&f, &f.derivative(Var::Y), Var::Y).unwrap();
        assert_eq!(d, p("-4z"));
    }

    #[test]
    fn bivariate_resultant_matches_closed_form() {
        // Res_Y(Y^2 - z, Y - w) = w^2 - z
        let r = resultant(&p("Y^2-z"), &p("Y-w"), Var::Y).unwrap();
        assert_eq!(r, p("w^2-z"));
    }

    #[test]
    fn subst_fraction_clears_denominators() {
        // t^2 - x with t = (Y-1)/w, x = zY  ->  (Y-1)^2 - w^2 zY
        let q = p("A^2-z");
        let out = q.subst_fraction(
            Var::A,
            &p("Y-1"),
            &p("w"),
            &[(Var::Z, p("zY"))],
        );
        assert_eq!(out, p("(Y-1)^2-w^2zY"));
    }

    #[test]
    fn normalization_strips_monomial_and_integer_content() {
        let q = p("-6z^2Y^3-4z^3Y^4");
        assert_eq!(q.normalized(), p("3+2zY"));
    }
}
