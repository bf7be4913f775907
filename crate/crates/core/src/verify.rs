//! Self-checks tying the exact counts, the singularity analysis, the
//! bounds and the brute-force oracle together. Each suite yields one
//! pass/fail line plus details.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::bounds::construction::{check_variant, Variant};
use crate::bounds::{self, interior_forest_count, BoundConstants, BoundKind};
use crate::classes::{with_isolated_vertices, Catalog, GraphClass};
use crate::geometry::{make_convex, make_double_chain, make_single_chain};
use crate::oracle::{count_nc, total, Family, GroupBy};
use crate::poly::{IntPolynomial, Var};
use crate::singularity::{analyze, SingularityConfig, SingularityReport};
use crate::{hp, roots, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Oracle,
    Interior,
    Growth,
    Singular,
    Rates,
    SumRules,
    Bounds,
    Constructions,
    Structure,
    SingleChain,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Oracle,
        Suite::Interior,
        Suite::Growth,
        Suite::Singular,
        Suite::Rates,
        Suite::SumRules,
        Suite::Bounds,
        Suite::Constructions,
        Suite::Structure,
        Suite::SingleChain,
    ];

    pub fn number(self) -> usize {
        Suite::ALL.iter().position(|&s| s == self).unwrap() + 1
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Oracle => "oracle",
            Suite::Interior => "interior",
            Suite::Growth => "growth",
            Suite::Singular => "singular",
            Suite::Rates => "rates",
            Suite::SumRules => "sum-rules",
            Suite::Bounds => "bounds",
            Suite::Constructions => "constructions",
            Suite::Structure => "structure",
            Suite::SingleChain => "single-chain",
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            Suite::Oracle => "series counts equal convex oracle censuses, n <= 8",
            Suite::Interior => "interior-forest formula equals double-chain census, n <= 5",
            Suite::Growth => "growth constants by discriminant and by ratio extrapolation",
            Suite::Singular => "singular point and discriminant factor of marked forests without isolated vertices",
            Suite::Rates => "component rates, cross-checked by exact means at n = 60",
            Suite::SumRules => "growth constants differ by one; mean-component relation",
            Suite::Bounds => "bound reproduction and optimizer certificates",
            Suite::Constructions => "constructions at n = 3 are valid and injective",
            Suite::Structure => "superadditivity, isolated-vertex convolution, bivariate marginals, n <= 12",
            Suite::SingleChain => "single-chain spanning trees equal marked forests, n <= 7",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|k| k.name() == s || k.number().to_string() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub suite: Suite,
    pub pass: bool,
    pub details: Vec<String>,
}

impl Check {
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} {:<13} {}  {}",
            self.suite.number(),
            self.suite.name(),
            if self.pass { "PASS" } else { "FAIL" },
            self.suite.title()
        )
    }

    pub fn to_json(&self) -> Value {
        json!({
            "criterion": self.suite.number(),
            "suite": self.suite.name(),
            "pass": self.pass,
            "details": self.details,
        })
    }
}

/// Shared state: the catalog and a cache of singularity reports.
pub struct Context<'a> {
    pub catalog: &'a Catalog,
    pub cfg: SingularityConfig,
    pub cap: usize,
    reports: Mutex<HashMap<GraphClass, SingularityReport>>,
}

impl<'a> Context<'a> {
    pub fn new(catalog: &'a Catalog, cfg: SingularityConfig, cap: usize) -> Self {
        Context {
            catalog,
            cfg,
            cap,
            reports: Mutex::new(HashMap::new()),
        }
    }

    pub fn report(&self, class: GraphClass) -> Result<SingularityReport> {
        if let Some(r) = self.reports.lock().unwrap().get(&class) {
            return Ok(r.clone());
        }
        let r = analyze(class, self.catalog, &self.cfg)?;
        self.reports.lock().unwrap().insert(class, r.clone());
        Ok(r)
    }

    fn omega(&self, class: GraphClass) -> Result<f64> {
        Ok(hp::to_f64(&self.report(class)?.omega))
    }

    fn kappa(&self, class: GraphClass) -> Result<f64> {
        self.report(class)?
            .kappa
            .map(|k| hp::to_f64(&k))
            .ok_or_else(|| Error::Degenerate(format!("{class} has no component rate")))
    }
}

struct Acc {
    pass: bool,
    details: Vec<String>,
}

impl Acc {
    fn new() -> Self {
        Acc {
            pass: true,
            details: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, detail: String) {
        self.pass &= ok;
        self.details.push(format!("{} {detail}", if ok { "ok  " } else { "FAIL" }));
    }

    fn close(&mut self, what: &str, got: f64, want: f64, tol: f64) {
        self.check((got - want).abs() <= tol, format!("{what}: {got:.7} vs {want:.7} (tol {tol:.1e})"));
    }

    fn done(self, suite: Suite) -> Check {
        Check {
            suite,
            pass: self.pass,
            details: self.details,
        }
    }
}

pub fn run(suite: Suite, ctx: &Context) -> Result<Check> {
    let mut a = Acc::new();
    match suite {
        Suite::Oracle => oracle_equivalence(ctx, &mut a)?,
        Suite::Interior => interior(ctx, &mut a)?,
        Suite::Growth => growth(ctx, &mut a)?,
        Suite::Singular => singular(ctx, &mut a)?,
        Suite::Rates => rates(ctx, &mut a)?,
        Suite::SumRules => sum_rules(ctx, &mut a)?,
        Suite::Bounds => bound_reproduction(ctx, &mut a)?,
        Suite::Constructions => constructions(ctx, &mut a)?,
        Suite::Structure => structure(ctx, &mut a)?,
        Suite::SingleChain => single_chain(ctx, &mut a)?,
    }
    Ok(a.done(suite))
}

/// Runs a suite, turning an error into a failed check.
pub fn run_or_fail(suite: Suite, ctx: &Context) -> Check {
    run(suite, ctx).unwrap_or_else(|e| Check {
        suite,
        pass: false,
        details: vec![format!("error: {e}")],
    })
}

fn oracle_equivalence(ctx: &Context, a: &mut Acc) -> Result<()> {
    for class in GraphClass::ALL {
        let mut ok = true;
        for n in 1..=8 {
            let census = total(&make_convex(n), Family::for_class(class), ctx.cap.max(8))?;
            ok &= census == ctx.catalog.count(class, n)?;
        }
        a.check(ok, format!("{class}"));
    }
    Ok(())
}

fn interior(ctx: &Context, a: &mut Acc) -> Result<()> {
    for n in 1..=5 {
        let census = count_nc(&make_double_chain(n)?, Family::InteriorForests, GroupBy::Edges, ctx.cap.max(10))?;
        let formula: Vec<BigInt> = (1..2 * n).map(|k| interior_forest_count(n, k)).collect();
        let oracle: Vec<BigInt> = (1..2 * n).map(|k| census.group(k)).collect();
        let extra = census.groups.keys().any(|&k| k == 0 || k >= 2 * n);
        a.check(formula == oracle && !extra, format!("n={n}: total {}", census.total));
    }
    Ok(())
}

/// `(class, quoted growth constant)`.
const GROWTH: [(GraphClass, f64); 6] = [
    (GraphClass::Forests, 8.2246),
    (GraphClass::MarkedForests, 9.5816),
    (GraphClass::MarkedForestsNoIso, 8.5816),
    (GraphClass::ForestsNoIso, 7.2246),
    (GraphClass::Mixed, 9.8643),
    (GraphClass::MixedNoIso, 8.8643),
];

fn growth(ctx: &Context, a: &mut Acc) -> Result<()> {
    for (class, want) in GROWTH {
        let r = ctx.report(class)?;
        let omega = hp::to_f64(&r.omega);
        a.close(&format!("{class} omega"), omega, want, 5e-4);
        let by_ratio = 1.0 / hp::to_f64(&r.ratio_estimate);
        a.close(&format!("{class} 1/ratio estimate (T={})", ctx.catalog.order()), by_ratio, want, 5e-4);
    }
    Ok(())
}

fn singular(ctx: &Context, a: &mut Acc) -> Result<()> {
    let class = GraphClass::MarkedForestsNoIso;
    let r = ctx.report(class)?;
    a.close("rho", hp::to_f64(&r.rho), 0.116527, 1e-4);
    a.close("tau", r.tau().map(hp::to_f64).unwrap_or(f64::NAN), 1.1537, 1e-4);
    let disc = crate::singularity::discriminant_z(&crate::classes::equation_for(class))?;
    let disc = disc
        .to_univariate(Var::Z)
        .ok_or_else(|| Error::Degenerate("discriminant is not univariate".into()))?;
    let ints = |v: &[i64]| -> Vec<BigInt> { v.iter().map(|&c| BigInt::from(c)).collect() };
    let quintic = ints(&[-16, 283, -1454, 793, 7640, 4778]);
    a.check(roots::divides(&quintic, &disc), "discriminant divisible by the quintic factor".into());
    // Res_Y(P, P_Y) = (-1)^(d(d-1)/2) lc(P) disc(P)
    let eq = crate::classes::equation_for(class);
    let d = eq.degree(Var::Y).unwrap_or(0);
    let lc = eq.coefficients_in(Var::Y)[d as usize]
        .to_univariate(Var::Z)
        .ok_or_else(|| Error::Degenerate("leading coefficient is not univariate".into()))?;
    let sign = if (d * d.saturating_sub(1) / 2) % 2 == 0 { 1 } else { -1 };
    let proper = roots::div_exact(&disc, &lc).map(|q| {
        let q: Vec<BigInt> = q.into_iter().map(|c| c * sign).collect();
        IntPolynomial::from_univariate(Var::Z, &q)
    });
    let printed: IntPolynomial = "-16z^3(1-20z+67z^2)^2(4778z^5+7640z^4+793z^3-1454z^2+283z-16)".parse()?;
    a.check(proper == Some(printed), "discriminant equals the printed factorization".into());
    Ok(())
}

/// `(class, quoted component rate)`.
const RATES: [(GraphClass, f64); 4] = [
    (GraphClass::MarkedForests, 0.2237),
    (GraphClass::MarkedForestsNoIso, 0.1332),
    (GraphClass::Mixed, 0.1106),
    (GraphClass::MixedNoIso, 0.1231),
];

fn rates(ctx: &Context, a: &mut Acc) -> Result<()> {
    for (class, want) in RATES {
        let kappa = ctx.kappa(class)?;
        a.close(&format!("{class} kappa"), kappa, want, 1e-3);
        let mean = ctx.catalog.bivariate(class)?.mean_statistic(60).to_f64().unwrap_or(f64::NAN) / 60.0;
        a.close(&format!("{class} mean/n at n=60"), mean, kappa, 2.0 / 60.0);
    }
    Ok(())
}

fn sum_rules(ctx: &Context, a: &mut Acc) -> Result<()> {
    let (f, l) = (ctx.omega(GraphClass::Forests)?, ctx.omega(GraphClass::ForestsNoIso)?);
    a.close("omega FORESTS - omega FORESTS_NOISO", f - l, 1.0, 1e-6);
    let (m, u) = (ctx.omega(GraphClass::MarkedForests)?, ctx.omega(GraphClass::MarkedForestsNoIso)?);
    a.close("omega MARKED_FORESTS - omega MARKED_FORESTS_NOISO", m - u, 1.0, 1e-6);
    let (kf, kl) = (ctx.kappa(GraphClass::Forests)?, ctx.kappa(GraphClass::ForestsNoIso)?);
    a.close("kappa FORESTS vs (1 + c kappa~)/b", kf, (1.0 + l * kl) / f, 1e-4);
    Ok(())
}

fn bound_reproduction(ctx: &Context, a: &mut Acc) -> Result<()> {
    let c = BoundConstants::computed(ctx.catalog, &ctx.cfg)?;
    for kind in BoundKind::ALL {
        let r = bounds::bound(kind, &c)?;
        a.check(r.certified(), format!("{kind}: optimum {:.6} >= quoted point {:.6}", r.base, r.quoted_base));
        match kind {
            BoundKind::UbTrees => {
                a.close("ub alpha*", r.parameters[0].1, 0.750614, 1e-3);
                a.close("ub t(alpha*)", r.get("t").unwrap_or(f64::NAN), 8.93341, 1e-3);
                a.close("ub base", r.base, kind.reference_base(), 1e-2);
            }
            BoundKind::LbNoIsoForests => {
                a.close("lb-noiso base at quoted point", r.quoted_base, kind.reference_base(), 1e-3);
                a.close("lb-noiso after the shift", r.quoted_base + 1.0, 13.6108, 1e-3);
                a.details.push(format!(
                    "note alternative shift (sqrt(b)+1)^2 = {:.4}",
                    r.get("alternative_final").unwrap_or(f64::NAN)
                ));
            }
            _ => a.close(&format!("{kind} base at quoted point"), r.quoted_base, kind.reference_base(), 1e-3),
        }
    }
    let printed = BoundConstants::printed();
    for kind in [BoundKind::LbTrees, BoundKind::LbForests, BoundKind::LbNoIsoForests] {
        let r = bounds::bound(kind, &printed)?;
        a.close(&format!("{kind} with four-digit constants"), r.quoted_base, kind.reference_base(), 1e-3);
    }
    Ok(())
}

fn constructions(ctx: &Context, a: &mut Acc) -> Result<()> {
    let trees = total(&make_double_chain(3)?, Family::SpanningTrees, ctx.cap.max(6))?;
    for variant in Variant::ALL {
        let c = check_variant(variant, 3, 2)?;
        a.check(
            c.sound(),
            format!("{} n=3: {}/{} outputs valid", variant.name(), c.valid, c.inputs),
        );
        a.check(
            c.injective(),
            format!(
                "{} n=3: {} canonical inputs, {} distinct outputs",
                variant.name(),
                c.canonical,
                c.distinct_canonical
            ),
        );
        a.details.push(format!(
            "note {}: all {} inputs give {} distinct outputs",
            variant.name(),
            c.inputs,
            c.distinct
        ));
        if variant == Variant::Tree {
            a.check(
                BigInt::from(c.distinct) <= trees,
                format!("tree outputs {} <= spanning trees {trees}", c.distinct),
            );
        }
    }
    Ok(())
}

fn structure(ctx: &Context, a: &mut Acc) -> Result<()> {
    const N: usize = 12;
    for class in GraphClass::FORESTS {
        let f = ctx.catalog.counts(class, 0..=N)?;
        let ok = (1..N).all(|i| (1..=N - i).all(|j| f[i + j] >= &f[i] * &f[j]));
        a.check(ok, format!("{class} superadditive"));
    }
    let pairs = [
        (GraphClass::Forests, GraphClass::ForestsNoIso),
        (GraphClass::MarkedForests, GraphClass::MarkedForestsNoIso),
        (GraphClass::Mixed, GraphClass::MixedNoIso),
    ];
    for (with, without) in pairs {
        let f = ctx.catalog.counts(with, 0..=N)?;
        let g = ctx.catalog.counts(without, 0..=N)?;
        let ok = (0..=N).all(|n| f[n] == with_isolated_vertices(&g, n));
        a.check(ok, format!("{with} = isolated vertices * {without}"));
    }
    for class in GraphClass::FORESTS {
        let marginal = ctx.catalog.bivariate(class)?.marginal();
        let series = ctx.catalog.series(class);
        let ok = (0..=N).all(|n| marginal.coeff(n) == series.coeff(n));
        a.check(ok, format!("{class} bivariate marginal"));
    }
    Ok(())
}

fn single_chain(ctx: &Context, a: &mut Acc) -> Result<()> {
    for n in 1..=7 {
        let oracle = total(&make_single_chain(n)?, Family::SpanningTrees, ctx.cap.max(8))?;
        let series = ctx.catalog.single_chain_tree_count(n)?;
        a.check(oracle == series, format!("n={n}: {series}"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
            assert_eq!(s.number().to_string().parse::<Suite>().unwrap(), s);
        }
    }
}
