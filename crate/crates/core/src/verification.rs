//! Named numerical and exact suites.

use crate::catalog::{representative_records, TableKind};
use crate::classifier::{mu_fns_ratio, row_verdict};
use crate::lie_algebra::{build_root_system, casimir, LieType};
use crate::rational::{format_rational, int};
use crate::tensor_engine::{
    covariant, inner, lichnerowicz, quadrature, trace, volume, AmbientOneForm, BlockMetric,
    ChartMetric, CurvatureMode, EigenfunctionSpec, Field, FieldRef, LieDerivative, LieDerivativeFd,
    MetricField, MetricMultiple, Polynomial, QuadratureRule, SecondVariation, SphereChart, Tensor,
    TensorError, Vh, ZeroField,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::{Duration, Instant};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub description: String,
    pub measured: f64,
    pub bound: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub seed: u64,
    pub passed: bool,
    #[serde(skip)]
    pub runtime: Duration,
}

impl SuiteReport {
    fn new(suite: Suite, seed: u64) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            checks: Vec::new(),
            seed,
            passed: true,
            runtime: Duration::ZERO,
        }
    }

    fn check(&mut self, description: impl Into<String>, measured: f64, bound: f64) {
        let pass = measured <= bound;
        self.passed &= pass;
        self.checks.push(Check {
            description: description.into(),
            measured,
            bound,
            pass,
        });
    }

    /// An evaluation error is a failed check, not a crash.
    fn error(&mut self, description: impl Into<String>, e: TensorError) {
        self.passed = false;
        self.checks.push(Check {
            description: format!("{}: {e}", description.into()),
            measured: f64::INFINITY,
            bound: 0.0,
            pass: false,
        });
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "suite {} (seed {}): {} ({} checks, {:.2?})\n",
            self.suite,
            self.seed,
            if self.passed { "PASS" } else { "FAIL" },
            self.checks.len(),
            self.runtime
        );
        for c in &self.checks {
            out.push_str(&format!(
                "  [{}] {}: {:.3e} <= {:.3e}\n",
                if c.pass { "ok" } else { "FAIL" },
                c.description,
                c.measured,
                c.bound
            ));
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Suite {
    Lemma33,
    Lemma34,
    Orthogonality,
    Product,
    CasimirTables,
    Properties,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Lemma33,
        Suite::Lemma34,
        Suite::Orthogonality,
        Suite::Product,
        Suite::CasimirTables,
        Suite::Properties,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Suite::Lemma33 => "lemma33",
            Suite::Lemma34 => "lemma34",
            Suite::Orthogonality => "orthogonality",
            Suite::Product => "product",
            Suite::CasimirTables => "casimir-tables",
            Suite::Properties => "properties",
        }
    }

    pub fn default_tol(self) -> f64 {
        match self {
            Suite::Lemma33 => 1e-5,
            Suite::Lemma34 | Suite::Orthogonality | Suite::Product => 1e-6,
            Suite::CasimirTables => 0.0,
            Suite::Properties => 1e-10,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown suite `{0}` (expected lemma33, lemma34, orthogonality, product, casimir-tables, properties or all)")]
pub struct UnknownSuite(pub String);

impl FromStr for Suite {
    type Err = UnknownSuite;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let k = s.trim().to_ascii_lowercase().replace('_', "-");
        Suite::ALL
            .into_iter()
            .find(|x| x.id() == k || x.id().replace('-', "") == k)
            .ok_or_else(|| UnknownSuite(s.to_string()))
    }
}

/// Parses `all` or a single suite id.
pub fn parse_suites(s: &str) -> Result<Vec<Suite>, UnknownSuite> {
    if s.trim().eq_ignore_ascii_case("all") {
        return Ok(Suite::ALL.to_vec());
    }
    Ok(vec![s.parse()?])
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub seed: u64,
    pub points: usize,
    /// Overrides each suite's main tolerance.
    pub tol: Option<f64>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 2024,
            points: 20,
            tol: None,
        }
    }
}

impl VerifyOptions {
    fn tol(&self, suite: Suite) -> f64 {
        self.tol.unwrap_or(suite.default_tol())
    }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> SuiteReport {
    let start = Instant::now();
    let mut report = match suite {
        Suite::Lemma33 => suite_lemma33(opts.seed, opts.points, opts.tol(suite)),
        Suite::Lemma34 => suite_lemma34(opts.seed, opts.points, opts.tol(suite)),
        Suite::Orthogonality => suite_orthogonality(opts.seed, opts.tol(suite)),
        Suite::Product => suite_product_instability(opts.seed, opts.points, opts.tol(suite)),
        Suite::CasimirTables => suite_casimir_tables(opts.seed),
        Suite::Properties => suite_properties(opts.seed, opts.points, opts.tol(suite)),
    };
    report.runtime = start.elapsed();
    report
}

/// Runs suites concurrently; reports come back in the order given.
pub fn run_suites(suites: &[Suite], opts: &VerifyOptions) -> Vec<SuiteReport> {
    suites.par_iter().map(|s| run_suite(*s, opts)).collect()
}

fn unit_s3() -> ChartMetric {
    ChartMetric::round_sphere(3, 1.0).expect("valid model")
}

fn unit_s2xs2() -> ChartMetric {
    let s2 = ChartMetric::round_sphere(2, 1.0).expect("valid model");
    ChartMetric::product(s2.clone(), s2)
}

fn max_over<F>(points: &[Vec<f64>], f: F) -> Result<f64, TensorError>
where
    F: Fn(&[f64]) -> Result<f64, TensorError> + Sync,
{
    let vals = points
        .par_iter()
        .map(|x| f(x))
        .collect::<Result<Vec<f64>, TensorError>>()?;
    Ok(vals.into_iter().fold(0.0, f64::max))
}

/// The three vector fields `ξ` of the Lie derivative check, as ambient polynomial fields on `R^4`.
pub fn lemma33_fields(seed: u64) -> Vec<(String, Vec<Polynomial>)> {
    let x = |i| Polynomial::coordinate(4, i);
    let zero = || Polynomial::zero(4);
    let rotation = vec![x(1).scale(-1.0), x(0), zero(), zero()];
    // tangential part of a constant field is the gradient of X_0
    let conformal = vec![Polynomial::constant(4, 1.0), zero(), zero(), zero()];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let generic: Vec<Polynomial> = (0..4).map(|_| Polynomial::random(4, 3, &mut rng)).collect();
    vec![
        ("Killing rotation X_0∂_1 - X_1∂_0".into(), rotation),
        ("conformal field ∇X_0".into(), conformal),
        ("seeded cubic field".into(), generic),
    ]
}

/// `N(L_ξ g) = 0` and the trace equation on the unit 3-sphere.
pub fn suite_lemma33(seed: u64, n_points: usize, tol: f64) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::Lemma33, seed);
    let m = unit_s3();
    let rule = QuadratureRule::default();
    let points = m.sample_points(seed, n_points);
    for (name, p) in lemma33_fields(seed) {
        let h: FieldRef = Arc::new(LieDerivative::new(p.clone()));
        let n = match SecondVariation::new(&m, h.clone(), Some(Vh::TraceOfH), &rule) {
            Ok(n) => n,
            Err(e) => {
                report.error(format!("{name}: setup"), e);
                continue;
            }
        };
        let per_point = points
            .par_iter()
            .map(|x| {
                let t = n.terms(&m, x)?;
                let c2 =
                    t.h.max_abs()
                        .max(t.nabla_h.max_abs())
                        .max(t.nabla2_h.max_abs());
                Ok((
                    t.total.max_abs() / (1.0 + c2),
                    t.vh_residual.abs(),
                    t.h.max_abs(),
                ))
            })
            .collect::<Result<Vec<_>, TensorError>>();
        let per_point = match per_point {
            Ok(v) => v,
            Err(e) => {
                report.error(format!("{name}: evaluation"), e);
                continue;
            }
        };
        let worst = |k: usize| {
            per_point
                .iter()
                .map(|t| [t.0, t.1, t.2][k])
                .fold(0.0, f64::max)
        };
        report.check(
            format!("{name}: max ‖N h‖∞/(1+‖h‖_C²) at {n_points} points, h = L_ξ g"),
            worst(0),
            tol,
        );
        report.check(
            format!("{name}: max |Δ tr h + λ tr h - div div h|"),
            worst(1),
            1e-6,
        );
        report.check(
            format!("{name}: |mean of tr h| (mean term of N)"),
            n.mean_trace().abs(),
            1e-10,
        );
        if name.starts_with("Killing") {
            report.check(format!("{name}: max ‖h‖∞ (Killing)"), worst(2), 1e-12);
        }
        let fd = LieDerivativeFd::new(Arc::new(AmbientOneForm { p }));
        match fd.and_then(|fd| {
            max_over(&points, |x| {
                let a = h.eval(&m, x)?;
                Ok(a.sub(&fd.eval(&m, x)?).max_abs() / (1.0 + a.max_abs()))
            })
        }) {
            Ok(d) => report.check(
                format!("{name}: closed-form vs differenced ∇ξ + ∇ξᵀ"),
                d,
                1e-6,
            ),
            Err(e) => report.error(format!("{name}: differenced Lie derivative"), e),
        }
    }
    report
}

/// Per-mode values of the conformal second variation on the unit 3-sphere.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConformalMode {
    pub degree: u32,
    pub eigenvalue: f64,
    /// `2∫⟨N(fg), fg⟩ dV`.
    pub pairing: f64,
    pub f_norm2: f64,
    /// `∫u² dV` with `f = Δu + λu`.
    pub u_norm2: f64,
    pub max_vh_residual: f64,
    pub max_eigen_residual: f64,
}

impl ConformalMode {
    /// The printed product `(k+λ)((n-1)k+nλ)(k+2λ)`.
    pub fn closed_form_product(&self, n: f64, lambda: f64) -> f64 {
        let k = self.eigenvalue;
        (k + lambda) * ((n - 1.0) * k + n * lambda) * (k + 2.0 * lambda)
    }

    /// `2∫⟨N(fg),fg⟩/∫f²` in closed form: the product divided by `(k+λ)²`.
    pub fn closed_form_f_quotient(&self, n: f64, lambda: f64) -> f64 {
        let k = self.eigenvalue;
        (k + 2.0 * lambda) * ((n - 1.0) * k + n * lambda) / (k + lambda)
    }
}

pub fn conformal_mode(
    m: &ChartMetric,
    f: &EigenfunctionSpec,
    rule: &QuadratureRule,
    points: &[Vec<f64>],
) -> Result<ConformalMode, TensorError> {
    let fr: FieldRef = Arc::new(f.clone());
    let h: FieldRef = Arc::new(MetricMultiple::new(fr.clone())?);
    let n = SecondVariation::new(m, h.clone(), Some(Vh::Conformal(f.clone())), rule)?;
    let lambda = n.lambda();
    let pairing = 2.0
        * quadrature(m, rule, |c, x| {
            let nh = n.apply(c, x)?;
            inner(c, &nh, &h.eval(c, x)?, x)
        })?;
    let f_norm2 = quadrature(m, rule, |c, x| Ok(fr.eval(c, x)?.value().powi(2)))?;
    let shift = f.eigenvalue + lambda;
    let u_norm2 = quadrature(m, rule, |c, x| Ok((fr.eval(c, x)?.value() / shift).powi(2)))?;
    let max_vh_residual = max_over(points, |x| Ok(n.terms(m, x)?.vh_residual.abs()))?;
    let max_eigen_residual = max_over(points, |x| {
        let lap = crate::tensor_engine::rough_laplacian(m, &fr, x)?.value();
        Ok((lap - f.eigenvalue * fr.eval(m, x)?.value()).abs())
    })?;
    Ok(ConformalMode {
        degree: f.poly.degree(),
        eigenvalue: f.eigenvalue,
        pairing,
        f_norm2,
        u_norm2,
        max_vh_residual,
        max_eigen_residual,
    })
}

fn rel_err(measured: f64, target: f64) -> f64 {
    (measured - target).abs() / target.abs().max(1.0)
}

/// `2∫⟨N(fg),fg⟩` for harmonics of degree 1, 2, 3 on the unit 3-sphere.
///
/// The closed-form product is the pairing per unit `∫u²`, where
/// `f = Δu + λu`; per unit `∫f²` it is divided by `(k+λ)²`. Both are checked.
pub fn suite_lemma34(seed: u64, n_points: usize, tol: f64) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::Lemma34, seed);
    let m = unit_s3();
    let (n, lambda) = (3.0, 2.0);
    let rule = QuadratureRule::default();
    let points = m.sample_points(seed, n_points);
    for l in 1..=3u32 {
        let f = EigenfunctionSpec::sphere_harmonic(3, 1.0, l, 0, 1);
        let mode = match conformal_mode(&m, &f, &rule, &points) {
            Ok(v) => v,
            Err(e) => {
                report.error(format!("degree {l}"), e);
                continue;
            }
        };
        let k = mode.eigenvalue;
        let product = mode.closed_form_product(n, lambda);
        let per_u = mode.pairing / mode.u_norm2;
        let per_f = mode.pairing / mode.f_norm2;
        report.check(
            format!(
                "degree {l} (k = {k}): 2∫⟨N(fg),fg⟩/∫u² = {per_u:.9} vs (k+λ)((n-1)k+nλ)(k+2λ) = {product}"
            ),
            rel_err(per_u, product),
            tol,
        );
        let fq = mode.closed_form_f_quotient(n, lambda);
        report.check(
            format!("degree {l} (k = {k}): 2∫⟨N(fg),fg⟩/∫f² = {per_f:.9} vs (k+2λ)((n-1)k+nλ)/(k+λ) = {fq:.9}"),
            rel_err(per_f, fq),
            tol,
        );
        report.check(
            format!("degree {l}: sign of the mode agrees with the product (stable: ≤ 0)"),
            if per_u.signum() == product.signum() || product == 0.0 {
                per_u.max(0.0) * if product == 0.0 { 1.0 } else { 0.0 }
            } else {
                f64::INFINITY
            },
            tol,
        );
        report.check(
            format!("degree {l}: max |Δv + λv - div div (fg)|"),
            mode.max_vh_residual,
            1e-6,
        );
        report.check(
            format!("degree {l}: max |Δf - kf|"),
            mode.max_eigen_residual,
            1e-6,
        );
    }
    report
}

fn product_direction() -> FieldRef {
    Arc::new(BlockMetric {
        a: 0.5,
        b: -0.5,
        split: 2,
    })
}

fn product_n(m: &ChartMetric, rule: &QuadratureRule) -> Result<SecondVariation, TensorError> {
    let zero: FieldRef = Arc::new(ZeroField { rank: 0 });
    SecondVariation::new(m, product_direction(), Some(Vh::Explicit(zero)), rule)
}

/// Exact for the integrands of these suites, which have degree at most 4 on each factor.
fn product_rule() -> QuadratureRule {
    QuadratureRule {
        polar: 4,
        azimuth: 8,
    }
}

/// `∫⟨N h, u g⟩ = 0` for the TT tensor `h = ½g₁ - ½g₂` on `S²×S²`.
pub fn suite_orthogonality(seed: u64, tol: f64) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::Orthogonality, seed);
    let m = unit_s2xs2();
    let rule = product_rule();
    let n = match product_n(&m, &rule) {
        Ok(n) => n,
        Err(e) => {
            report.error("setup", e);
            return report;
        }
    };
    let points = m.sample_points(seed, 10);
    match max_over(&points, |x| Ok(n.terms(&m, x)?.div_div_h.abs())) {
        Ok(d) => report.check("max |div div h| (so v_h = 0)", d, 1e-8),
        Err(e) => report.error("div div h", e),
    }
    let h = product_direction();
    let h_norm = quadrature(&m, &rule, |c, x| {
        let hv = h.eval(c, x)?;
        inner(c, &hv, &hv, x)
    })
    .map(f64::sqrt);
    let h_norm = match h_norm {
        Ok(v) => v,
        Err(e) => {
            report.error("‖h‖", e);
            return report;
        }
    };
    let s2 = |l, a, b| EigenfunctionSpec::sphere_harmonic(2, 1.0, l, a, b);
    let choices = [
        ("u = 1", EigenfunctionSpec::constant(6)),
        (
            "u = factor-1 degree-1 harmonic",
            s2(1, 0, 1).on_factor(6, 0, 1),
        ),
        (
            "u = factor-2 degree-2 harmonic",
            s2(2, 1, 2).on_factor(6, 3, 2),
        ),
        (
            "u = factor-1 degree-2 harmonic",
            s2(2, 0, 2).on_factor(6, 0, 1),
        ),
    ];
    for (name, u) in choices {
        let ug: FieldRef = match MetricMultiple::new(Arc::new(u)) {
            Ok(v) => Arc::new(v),
            Err(e) => {
                report.error(name, e);
                continue;
            }
        };
        let pairing = quadrature(&m, &rule, |c, x| {
            inner(c, &n.apply(c, x)?, &ug.eval(c, x)?, x)
        });
        let ug_norm = quadrature(&m, &rule, |c, x| {
            let v = ug.eval(c, x)?;
            inner(c, &v, &v, x)
        });
        match (pairing, ug_norm) {
            (Ok(p), Ok(un)) => report.check(
                format!("{name}: |∫⟨N h, u g⟩| / (‖h‖ ‖u g‖)"),
                p.abs() / (h_norm * un.sqrt()),
                tol,
            ),
            (Err(e), _) | (_, Err(e)) => report.error(name, e),
        }
    }
    report
}

/// `N h = h` for `h = ½g₁ - ½g₂` on `S²×S²`: the product is unstable.
pub fn suite_product_instability(seed: u64, n_points: usize, tol: f64) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::Product, seed);
    let m = unit_s2xs2();
    let rule = product_rule();
    let n = match product_n(&m, &rule) {
        Ok(n) => n,
        Err(e) => {
            report.error("setup", e);
            return report;
        }
    };
    let h = product_direction();
    let points = m.sample_points(seed, n_points.max(30));
    match max_over(&points, |x| {
        let t = n.terms(&m, x)?;
        Ok(t.total.sub(&t.h).max_abs())
    }) {
        Ok(d) => report.check(
            format!("max ‖N h - h‖∞ at {} points", points.len()),
            d,
            1e-8,
        ),
        Err(e) => report.error("pointwise N h", e),
    }
    match max_over(&points, |x| {
        let hv = h.eval(&m, x)?;
        let d = crate::tensor_engine::div(&m, &h, x)?;
        Ok(trace(&m, &hv, x)?.abs().max(d.max_abs()))
    }) {
        Ok(d) => report.check("max |tr h|, |div h| (h is TT)", d, 1e-10),
        Err(e) => report.error("tr h, div h", e),
    }
    match max_over(&points, |x| Ok(lichnerowicz(&m, &h, x)?.max_abs())) {
        Ok(d) => report.check("max ‖Δ_L h‖∞", d, 1e-8),
        Err(e) => report.error("Δ_L h", e),
    }
    let num = quadrature(&m, &rule, |c, x| {
        inner(c, &n.apply(c, x)?, &h.eval(c, x)?, x)
    });
    let lnum = quadrature(&m, &rule, |c, x| {
        let hv = h.eval(c, x)?;
        let lh = lichnerowicz(c, &h, x)?.add(&hv.scale(2.0 * n.lambda()));
        Ok(0.5 * inner(c, &lh, &hv, x)?)
    });
    let den = quadrature(&m, &rule, |c, x| {
        let hv = h.eval(c, x)?;
        inner(c, &hv, &hv, x)
    });
    match (num, lnum, den) {
        (Ok(a), Ok(b), Ok(d)) => {
            let r = a / d;
            report.check(
                format!("Rayleigh quotient ∫⟨N h,h⟩/∫|h|² = {r:.12}, |r - 1|"),
                (r - 1.0).abs(),
                tol,
            );
            report.check(
                format!("½∫⟨(Δ_L + 2λ)h,h⟩/∫|h|² = {:.12}, |r - 1|", b / d),
                (b / d - 1.0).abs(),
                tol,
            );
            report.check("second variation along h is positive: -r", -r, 0.0);
        }
        (Err(e), ..) | (_, Err(e), _) | (.., Err(e)) => report.error("Rayleigh quotient", e),
    }
    report
}

/// Every catalog row at its representative parameters against the printed
/// column values.
pub fn suite_casimir_tables(seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::CasimirTables, seed);
    for r in representative_records() {
        let table = if r.is_group_type {
            TableKind::Group
        } else {
            TableKind::Quotient
        };
        let row = format!(
            "{:?} table, {} {} ({})",
            table,
            r.label,
            r.name,
            r.params_text()
        );
        match mu_fns_ratio(&r) {
            Ok(c) => report.check(
                format!(
                    "{row}: column -λ⁻¹μ_fns computed {} printed {}",
                    format_rational(&c),
                    format_rational(&r.expected_fns_ratio)
                ),
                if c == r.expected_fns_ratio { 0.0 } else { 1.0 },
                0.0,
            ),
            Err(e) => report.check(format!("{row}: column -λ⁻¹μ_fns: {e}"), 1.0, 0.0),
        }
        match row_verdict(&r) {
            Ok(v) => report.check(
                format!(
                    "{row}: column ν-verdict computed {} printed {}",
                    v.kind.short(),
                    r.expected_verdict.short()
                ),
                if v.kind == r.expected_verdict {
                    0.0
                } else {
                    1.0
                },
                0.0,
            ),
            Err(e) => report.check(format!("{row}: column ν-verdict: {e}"), 1.0, 0.0),
        }
    }
    report
}

fn curvature_defect(m: &ChartMetric, x: &[f64]) -> Result<f64, TensorError> {
    let r = m.riemann(x)?;
    let n = m.dim();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let v = r.get(&[i, j, k, l]);
                    worst = worst
                        .max((v + r.get(&[j, i, k, l])).abs())
                        .max((v + r.get(&[i, j, l, k])).abs())
                        .max((v - r.get(&[k, l, i, j])).abs())
                        .max((v + r.get(&[j, k, i, l]) + r.get(&[k, i, j, l])).abs());
                }
            }
        }
    }
    Ok(worst / (1.0 + r.max_abs()))
}

fn property_models() -> Vec<(&'static str, ChartMetric, bool)> {
    let s3 = unit_s3();
    let polar = ChartMetric::round_sphere_in(3, 1.0, SphereChart::Polar).expect("valid model");
    let p = unit_s2xs2();
    vec![
        ("S^3", s3.clone(), false),
        ("S^3 polar", polar, false),
        ("S^2×S^2", p.clone(), false),
        ("T^3", ChartMetric::flat(3), false),
        (
            "S^3 differenced",
            s3.with_mode(CurvatureMode::FiniteDifference),
            true,
        ),
        (
            "S^2×S^2 differenced",
            p.with_mode(CurvatureMode::FiniteDifference),
            true,
        ),
    ]
}

/// Curvature symmetries, metric compatibility, Einstein residuals and the
/// Casimir normalization `c(θ) = 1`.
pub fn suite_properties(seed: u64, n_points: usize, tol: f64) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::Properties, seed);
    let g: FieldRef = Arc::new(MetricField);
    for (name, m, fd) in property_models() {
        let bound = if fd { tol.max(1e-6) } else { tol };
        let points = m.sample_points(seed, n_points.max(50));
        let lambda = m.einstein_constant().unwrap_or(f64::NAN);
        match max_over(&points, |x| curvature_defect(&m, x)) {
            Ok(d) => report.check(
                format!(
                    "{name}: curvature symmetries and first Bianchi at {} points",
                    points.len()
                ),
                d,
                bound,
            ),
            Err(e) => report.error(format!("{name}: curvature"), e),
        }
        match max_over(&points, |x| Ok(covariant(&m, &g, x)?.max_abs())) {
            Ok(d) => report.check(format!("{name}: max |∇g|"), d, 1e-8),
            Err(e) => report.error(format!("{name}: ∇g"), e),
        }
        match max_over(&points, |x| {
            let res: Tensor = m.ricci(x)?.sub(&m.metric(x)?.scale(lambda));
            Ok(res.max_abs())
        }) {
            Ok(d) => report.check(
                format!("{name}: max |Ric - λg| (λ = {lambda})"),
                d,
                bound * 10.0,
            ),
            Err(e) => report.error(format!("{name}: Einstein"), e),
        }
    }
    let rule = QuadratureRule::default();
    for (name, m, want) in [
        (
            "S^2",
            ChartMetric::round_sphere(2, 1.0),
            4.0 * std::f64::consts::PI,
        ),
        (
            "S^3",
            ChartMetric::round_sphere(3, 1.0),
            2.0 * std::f64::consts::PI.powi(2),
        ),
    ] {
        match m.and_then(|m| volume(&m, &rule)) {
            Ok(v) => report.check(format!("vol({name}) = {v:.15}"), (v - want).abs(), 1e-10),
            Err(e) => report.error(format!("vol({name})"), e),
        }
    }
    for ty in LieType::ALL {
        let ranks: Vec<usize> = match ty.fixed_rank() {
            Some(r) => vec![r],
            None => (ty.min_rank()..=8).collect(),
        };
        for rank in ranks {
            let c = build_root_system(ty, rank).and_then(|rs| {
                let theta = rs.highest_root.clone();
                casimir(&rs, &theta)
            });
            let label = if ty.fixed_rank().is_some() {
                ty.to_string()
            } else {
                format!("{ty}{rank}")
            };
            match c {
                Ok(c) => report.check(
                    format!("{label}: c(θ) = {}", format_rational(&c)),
                    if c == int(1) { 0.0 } else { 1.0 },
                    0.0,
                ),
                Err(e) => report.check(format!("{label}: c(θ): {e}"), 1.0, 0.0),
            }
        }
    }
    report
}


#[cfg(test)]
mod full_tests {
    use super::*;

    #[test]
    fn all_suites_pass_with_defaults_and_are_deterministic() {
        let opts = VerifyOptions::default();
        let a = run_suites(&Suite::ALL, &opts);
        for r in &a {
            assert!(r.passed, "{}", r.to_text());
        }
        let b = run_suites(&[Suite::Lemma33, Suite::Orthogonality], &opts);
        assert_eq!(a[0].to_json(), b[0].to_json());
        assert_eq!(a[2].to_json(), b[1].to_json());
    }
}
