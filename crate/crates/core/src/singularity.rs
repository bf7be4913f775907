//! Dominant singularities of algebraic class series, the constants of the
//! square-root asymptotics, and the mean number of marked components.
//!
//! Coefficients grow like `rho^-n`: the asymptotic form used throughout is
//! `[z^n] Y ~ gamma rho^-n n^-3/2`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::classes::{bivariate_equation_for, equation_for, Catalog, GraphClass};
use crate::error::{Error, Result};
use crate::hp;
use crate::poly::{resultant, IntPolynomial, Var};
use crate::roots::{
    isolate_positive_roots_rational, isolate_positive_roots_univariate, squarefree_decomposition,
    width_for_digits, RootEnclosure,
};
use crate::series::Series;

type Q = BigRational;

#[derive(Clone, Debug)]
pub struct SingularityConfig {
    /// Decimal digits carried through root isolation and evaluation.
    pub digits: u32,
    /// Largest accepted `|candidate - ratio estimate|`.
    pub tolerance: f64,
    /// Order of the Richardson extrapolation.
    pub richardson_order: usize,
}

impl Default for SingularityConfig {
    fn default() -> Self {
        SingularityConfig {
            digits: 60,
            tolerance: 1e-3,
            richardson_order: 6,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Candidate {
    pub root: RootEnclosure,
    pub accepted: bool,
    pub reason: String,
}

/// The singular value and the derivatives entering the square-root
/// asymptotics, all at `(rho, tau)`.
#[derive(Clone, Debug)]
pub struct SquareRoot {
    pub tau: Q,
    pub g: Q,
    pub g_z: Q,
    pub g_y: Q,
    pub g_yy: Q,
}

#[derive(Clone, Debug)]
pub struct SingularityReport {
    pub label: String,
    pub rho: Q,
    pub omega: Q,
    /// `None` when the series is unbounded at `rho` (marked tree classes,
    /// whose singularity is of inverse square-root type).
    pub square_root: Option<SquareRoot>,
    pub gamma: Option<Q>,
    pub kappa: Option<Q>,
    /// Extrapolated `a_n / a_(n+1)`.
    pub ratio_estimate: Q,
    pub candidates: Vec<Candidate>,
    pub digits: u32,
}

impl SingularityReport {
    pub fn tau(&self) -> Option<&Q> {
        self.square_root.as_ref().map(|s| &s.tau)
    }
}

/// `Res_Y(P, dP/dY)`, integer content kept. Other variables (such as `w`)
/// are carried along.
pub fn discriminant_z(p: &IntPolynomial) -> Result<IntPolynomial> {
    if p.degree(Var::Y).unwrap_or(0) < 2 {
        return Err(Error::Degenerate(format!("degree in Y below 2: {p}")));
    }
    let d = resultant(p, &p.derivative(Var::Y), Var::Y)?;
    if d.is_zero() {
        return Err(Error::Degenerate(
            "zero discriminant; the equation has a repeated factor in Y".into(),
        ));
    }
    Ok(d)
}

/// `k`-th order Richardson limit of `s_m = L + c_1/m + ... `, from the
/// values at `m = n..=n+k`.
pub fn richardson(values: &[Q], n: usize) -> Q {
    let k = values.len() - 1;
    let mut fact = vec![BigInt::one()];
    for i in 1..=k {
        fact.push(fact[i - 1].clone() * BigInt::from(i));
    }
    let mut acc = Q::zero();
    for (j, v) in values.iter().enumerate() {
        let m = BigInt::from(n + j).pow(k as u32);
        let c = Q::new(m, &fact[j] * &fact[k - j]);
        if (k - j) % 2 == 0 {
            acc += c * v;
        } else {
            acc -= c * v;
        }
    }
    acc
}

/// Extrapolated `lim a_n / a_(n+1)` from the last terms of the series.
pub fn ratio_estimate(s: &Series, order: usize) -> Result<Q> {
    let t = s.order();
    if t < order + 20 {
        return Err(Error::RaiseTruncation { n: order + 20, order: t });
    }
    let n = t - 1 - order;
    let ratios: Vec<Q> = (n..t)
        .map(|m| s.coeff(m) / s.coeff(m + 1))
        .collect();
    Ok(richardson(&ratios, n))
}

/// Extrapolated `lim a_n rho^n n^(3/2)`.
pub fn gamma_fit(s: &Series, rho: &Q, order: usize) -> Q {
    let t = s.order();
    let n = t - order;
    let rho = hp::round_to(rho, 40);
    let values: Vec<Q> = (n..=t)
        .map(|m| {
            let mq = Q::from_integer(BigInt::from(m));
            let root = hp::sqrt(&mq, 40).unwrap();
            s.coeff(m) * num_traits::pow(rho.clone(), m) * mq * root
        })
        .collect();
    richardson(&values, n)
}

fn abs_f64(x: &Q) -> f64 {
    hp::to_f64(&x.abs())
}

/// Locates `rho` and `tau` for the branch of `P(z, Y) = 0` whose series is `s`.
pub fn locate(
    label: &str,
    p: &IntPolynomial,
    s: &Series,
    cfg: &SingularityConfig,
) -> Result<SingularityReport> {
    let disc = discriminant_z(p)?;
    let width = width_for_digits(cfg.digits + 5);
    let roots = crate::roots::isolate_positive_roots(&disc, &width)?;
    let estimate = ratio_estimate(s, cfg.richardson_order)?;
    let est = hp::to_f64(&estimate);

    let mut candidates = Vec::new();
    let mut chosen: Option<RootEnclosure> = None;
    for r in roots {
        let v = r.to_f64();
        let (accepted, reason) = if chosen.is_some() {
            (false, "larger than the dominant singularity".to_string())
        } else if (v - est).abs() <= cfg.tolerance {
            (true, format!("agrees with coefficient ratios ({est:.8})"))
        } else if v < est {
            (
                false,
                format!("coefficient ratios ({est:.8}) exclude it: not a singularity of this branch"),
            )
        } else {
            (false, format!("beyond the ratio estimate {est:.8}"))
        };
        if accepted {
            chosen = Some(r.clone());
        }
        candidates.push(Candidate {
            root: r,
            accepted,
            reason,
        });
    }
    let rho_enc = chosen.ok_or_else(|| {
        let listed: Vec<String> = candidates
            .iter()
            .map(|c| format!("{:.10}", c.root.to_f64()))
            .collect();
        Error::SingularitySelection(format!(
            "no discriminant root within {} of ratio estimate {est:.10}; candidates {listed:?}",
            cfg.tolerance
        ))
    })?;
    let rho = rho_enc.mid();

    let square_root = square_root_data(p, &rho, s, cfg)?;
    let omega = Q::one() / &rho;
    Ok(SingularityReport {
        label: label.to_string(),
        rho,
        omega,
        square_root,
        gamma: None,
        kappa: None,
        ratio_estimate: estimate,
        candidates,
        digits: cfg.digits,
    })
}

/// `tau`: a root of `P_Y(rho, .)` at which `P(rho, .)` vanishes too, taken
/// closest to the partial sum of the series at `rho`.
fn square_root_data(
    p: &IntPolynomial,
    rho: &Q,
    s: &Series,
    cfg: &SingularityConfig,
) -> Result<Option<SquareRoot>> {
    let py = p.derivative(Var::Y);
    let h = py.specialize_to_univariate(Var::Y, &[(Var::Z, rho.clone())]);
    let g = p.specialize_to_univariate(Var::Y, &[(Var::Z, rho.clone())]);
    let eval = |c: &[Q], y: &Q| c.iter().rev().fold(Q::zero(), |a, k| a * y + k);
    let threshold = width_for_digits(cfg.digits / 3);
    let width = width_for_digits(cfg.digits + 5);
    let partial = s.partial_sum_f64(hp::to_f64(rho));
    let Some(tau_enc) = isolate_positive_roots_rational(&h, &width)
        .into_iter()
        .filter(|r| eval(&g, &r.mid()).abs() < threshold)
        .min_by(|a, b| {
            let da = (a.to_f64() - partial).abs();
            let db = (b.to_f64() - partial).abs();
            da.total_cmp(&db)
        })
    else {
        return Ok(None);
    };
    let tau = tau_enc.mid();
    let at = [(Var::Z, rho.clone()), (Var::Y, tau.clone())];
    let data = SquareRoot {
        g: p.eval_rational(&at),
        g_z: p.derivative(Var::Z).eval_rational(&at),
        g_y: py.eval_rational(&at),
        g_yy: py.derivative(Var::Y).eval_rational(&at),
        tau,
    };
    if data.g_yy.is_zero() || data.g_z.is_zero() {
        return Err(Error::SingularitySelection(
            "square-root hypotheses fail: G_z or G_yy vanishes".into(),
        ));
    }
    Ok(Some(data))
}

/// `sqrt(rho G_z / (2 pi G_yy))`.
pub fn subexponential_constant(report: &SingularityReport) -> Result<Q> {
    let sq = report.square_root.as_ref().ok_or_else(|| {
        Error::SingularitySelection(format!(
            "{}: no finite singular value, the square-root form does not apply",
            report.label
        ))
    })?;
    let pi = hp::pi(report.digits + 10);
    let two = Q::from_integer(BigInt::from(2));
    let radicand = &report.rho * &sq.g_z / (two * pi * &sq.g_yy);
    hp::sqrt(&radicand, report.digits).ok_or_else(|| {
        Error::NegativeRadicand(format!(
            "G_z = {:.6e}, G_yy = {:.6e} have opposite signs",
            hp::to_f64(&sq.g_z),
            hp::to_f64(&sq.g_yy)
        ))
    })
}

/// `-rho'(1) / rho` for the singularity curve of `P(z, w, Y) = 0`.
///
/// `rho(w)` is the root of the bivariate discriminant `D(z, w)` through
/// `(rho, 1)`, so `rho'(1) = -D_w / D_z` there, which needs `rho` to be a
/// simple root of `D(z, 1)`.
pub fn component_rate_from_equation(bivariate: &IntPolynomial, rho: &Q, digits: u32) -> Result<Q> {
    let d = discriminant_z(bivariate)?;
    let d1 = d.subst(&[(Var::W, IntPolynomial::one())]);
    let coeffs = d1.to_univariate(Var::Z).ok_or_else(|| {
        Error::DegenerateFactor("discriminant at w = 1 is not univariate".into())
    })?;
    let width = width_for_digits(digits + 5);
    let near = |r: &RootEnclosure| abs_f64(&(r.mid() - rho)) < 1e-20;
    let mut hits = Vec::new();
    for (factor, mult) in squarefree_decomposition(&coeffs) {
        let found = isolate_positive_roots_univariate(&factor, &width);
        if found.iter().any(near) {
            hits.push(mult);
        }
    }
    match hits.as_slice() {
        [1] => {}
        [] => {
            return Err(Error::DegenerateFactor(
                "rho is not a root of the bivariate discriminant at w = 1".into(),
            ))
        }
        _ => {
            return Err(Error::DegenerateFactor(
                "rho is a multiple root of the discriminant at w = 1".into(),
            ))
        }
    }
    let at = [(Var::Z, rho.clone()), (Var::W, Q::one())];
    let dz = d.derivative(Var::Z).eval_rational(&at);
    let dw = d.derivative(Var::W).eval_rational(&at);
    Ok(dw / (dz * rho))
}

/// Full analysis of one class: `rho, tau, omega, gamma` and, for forest
/// classes, `kappa`.
pub fn analyze(class: GraphClass, catalog: &Catalog, cfg: &SingularityConfig) -> Result<SingularityReport> {
    let mut report = locate(class.tag(), &equation_for(class), catalog.series(class), cfg)?;
    if report.square_root.is_some() {
        report.gamma = Some(subexponential_constant(&report)?);
    }
    if class.is_forest() {
        report.kappa = Some(component_rate(class, &report.rho, cfg.digits)?);
    }
    Ok(report)
}

/// `rho`, `tau` and `omega` only.
pub fn dominant_singularity(
    class: GraphClass,
    catalog: &Catalog,
    cfg: &SingularityConfig,
) -> Result<SingularityReport> {
    locate(class.tag(), &equation_for(class), catalog.series(class), cfg)
}

/// Mean components (or marked components) per vertex for a forest class.
pub fn component_rate(class: GraphClass, rho: &Q, digits: u32) -> Result<Q> {
    component_rate_from_equation(&bivariate_equation_for(class)?, rho, digits)
}

impl SingularityReport {
    pub fn to_json(&self, digits: usize) -> Value {
        let f = |x: &Q| hp::to_decimal(x, digits);
        let rejected: Vec<Value> = self
            .candidates
            .iter()
            .filter(|c| !c.accepted)
            .map(|c| json!({"root": f(&c.root.mid()), "multiplicity": c.root.multiplicity, "reason": c.reason}))
            .collect();
        let checks = self.square_root.as_ref().map(|sq| {
            json!({
                "G": format!("{:.3e}", hp::to_f64(&sq.g)),
                "G_y": format!("{:.3e}", hp::to_f64(&sq.g_y)),
                "G_yy": format!("{:.6e}", hp::to_f64(&sq.g_yy)),
                "G_z": format!("{:.6e}", hp::to_f64(&sq.g_z)),
            })
        });
        json!({
            "class": self.label,
            "rho": f(&self.rho),
            "tau": self.tau().map(f),
            "omega": f(&self.omega),
            "gamma": self.gamma.as_ref().map(f),
            "kappa": self.kappa.as_ref().map(f),
            "ratio_estimate": f(&self.ratio_estimate),
            "rejected_candidates": rejected,
            "checks": checks,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{q, solve_algebraic};

    fn poly(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn discriminant_of_square_root_is_proportional_to_z() {
        let d = discriminant_z(&poly("Y^2 - z")).unwrap();
        assert!(d.is_proportional_to(&poly("z")));
    }

    #[test]
    fn linear_equations_have_no_discriminant() {
        assert!(discriminant_z(&poly("Y - z")).is_err());
    }

    #[test]
    fn richardson_is_exact_on_polynomials_in_one_over_n() {
        // s_m = 2 + 3/m - 5/m^2
        let vals: Vec<Q> = (10..=13)
            .map(|m| q(2) + Q::new(3.into(), m.into()) - Q::new(5.into(), (m * m).into()))
            .collect();
        assert_eq!(richardson(&vals, 10), q(2));
    }

    #[test]
    fn trees() {
        let p = poly("Y^3 - zY + z^2");
        let s = solve_algebraic(&p, &[q(0), q(1)], 60).unwrap();
        let r = locate("TREES", &p, &s, &SingularityConfig::default()).unwrap();
        let rho = Q::new(4.into(), 27.into());
        assert!(abs_f64(&(&r.rho - &rho)) < 1e-50);
        assert!(abs_f64(&(r.tau().unwrap() - Q::new(2.into(), 9.into()))) < 1e-40);
        // gamma^2 = 1 / (243 pi)
        let g = hp::to_f64(&subexponential_constant(&r).unwrap());
        assert!((g * g * 243.0 * std::f64::consts::PI - 1.0).abs() < 1e-12);
        let fit = hp::to_f64(&gamma_fit(&s, &r.rho, 6));
        assert!((fit / g - 1.0).abs() < 1e-3, "{fit} vs {g}");
    }
}
