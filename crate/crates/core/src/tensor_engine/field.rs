//! Tensor fields evaluated pointwise in a chart.

use super::metric::ChartMetric;
use super::poly::Polynomial;
use super::{fd_partial, Tensor, TensorError};
use std::sync::Arc;

/// Derivative budget of closed-form fields.
pub const SMOOTH: usize = 6;

/// A covariant tensor field. Evaluators must accept points slightly off the
/// sample, since derivatives are taken by central differences.
pub trait Field: Send + Sync {
    fn rank(&self) -> usize;
    fn eval(&self, m: &ChartMetric, x: &[f64]) -> Result<Tensor, TensorError>;
    /// How many further numerical derivatives the values tolerate.
    fn depth(&self) -> usize {
        SMOOTH
    }
}

pub type FieldRef = Arc<dyn Field>;

fn need_embedding(m: &ChartMetric, x: &[f64]) -> Result<(Vec<f64>, Vec<Vec<f64>>), TensorError> {
    match (m.embed(x), m.embed_jacobian(x)) {
        (Some(p), Some(j)) => Ok((p, j)),
        _ => Err(TensorError::UnsupportedManifold(format!(
            "{} has no ambient embedding",
            m.domain_description()
        ))),
    }
}

fn check_ambient(m: &ChartMetric, nvars: usize) -> Result<(), TensorError> {
    match m.ambient_dim() {
        Some(d) if d == nvars => Ok(()),
        Some(d) => Err(TensorError::InvalidModel(format!(
            "polynomial in {nvars} variables on a model in R^{d}"
        ))),
        None => Err(TensorError::UnsupportedManifold(format!(
            "{} has no ambient embedding",
            m.domain_description()
        ))),
    }
}

pub struct ZeroField {
    pub rank: usize,
}

impl Field for ZeroField {
    fn rank(&self) -> usize {
        self.rank
    }
    fn eval(&self, m: &ChartMetric, _: &[f64]) -> Result<Tensor, TensorError> {
        Ok(if self.rank == 0 {
            Tensor::scalar(0.0)
        } else {
            Tensor::zeros(m.dim(), self.rank)
        })
    }
}

/// The metric itself.
pub struct MetricField;

impl Field for MetricField {
    fn rank(&self) -> usize {
        2
    }
    fn eval(&self, m: &ChartMetric, x: &[f64]) -> Result<Tensor, TensorError> {
        m.metric(x)
    }
}

/// `f·g` for a function `f`.
pub struct MetricMultiple {
    f: FieldRef,
}

impl MetricMultiple {
    pub fn new(f: FieldRef) -> Result<Self, TensorError> {
        if f.rank() != 0 {
            return Err(TensorError::RankMismatch {
                expected: 0,
                got: f.rank(),
            });
        }
        Ok(MetricMultiple { f })
    }
}

impl Field for MetricMultiple {
    fn rank(&self) -> usize {
        2
    }
    fn eval(&self, m: &ChartMetric, x: &[f64]) -> Result<Tensor, TensorError> {
        Ok(m.metric(x)?.scale(self.f.eval(m, x)?.value()))
    }
    fn depth(&self) -> usize {
        self.f.depth()
    }
}

/// `a·g₁ ⊕ b·g₂` on a product whose first factor has `split` coordinates.
pub struct BlockMetric {
    pub a: f64,
    pub b: f64,
    pub split: usize,
}

impl Field for BlockMetric {
    fn rank(&self) -> usize {
        2
    }
    fn eval(&self, m: &ChartMetric, x: &[f64]) -> Result<Tensor, TensorError> {
        let mut g = m.metric(x)?;
        let n = m.dim();
        for i in 0..n {
            for j in 0..n {
                g[(i, j)] *= match (i < self.split, j < self.split) {
                    (true, true) => self.a,
                    (false, false) => self.b,
                    _ => 0.0,
                };
            }
        }
        Ok(g)
    }
}

type ChartFn = Arc<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>;

/// Components given directly as functions of the chart coordinates.
pub struct ChartField {
    rank: usize,
    depth: usize,
    f: ChartFn,
}

impl ChartField {
    pub fn new<F>(rank: usize, f: F) -> Self
    where
        F: Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
    {
        ChartField {
            rank,
            depth: SMOOTH,
            f: Arc::new(f),
        }
    }

    pub fn with_depth(mut self, depth: usize) -> Self {
        self.depth = depth;
        self
    }
}

impl Field for ChartField {
    fn rank(&self) -> usize {
        self.rank
    }
    fn eval(&self, m: &ChartMetric, x: &[f64]) -> Result<Tensor, TensorError> {
        let data = (self.f)(x);
        let dim = if self.rank == 0 { 0 } else { m.dim() };
        if data.len() != m.dim().pow(self.rank as u32) {
            return Err(TensorError::RankMismatch {
                expected: self.rank,
                got: data.len(),
            });
        }
        Ok(Tensor::from_vec(dim, self.rank, data))
    }
    fn depth(&self) -> usize {
        self.depth
    }
}

/// A polynomial in the ambient coordinates, restricted to the model.
pub struct AmbientFunction {
    pub poly: Polynomial,
}

impl Field for AmbientFunction {
    fn rank(&self) -> usize {
        0
    }
    fn eval(&self, m: &ChartMetric, x: &[f64]) -> Result<Tensor, TensorError> {
        check_ambient(m, self.poly.nvars())?;
        let (p, _) = need_embedding(m, x)?;
        Ok(Tensor::scalar(self.poly.eval(&p)))
    }
}

/// A function with known Laplace eigenvalue `Δf = k f`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenfunctionSpec {
    pub poly: Polynomial,
    pub eigenvalue: f64,
    pub label: String,
}

impl EigenfunctionSpec {
    /// `Re (X_a + i X_b)^l` on `S^n` of curvature `k`, eigenvalue `-l(l+n-1)k`.
    pub fn sphere_harmonic(n: usize, k: f64, l: u32, a: usize, b: usize) -> Self {
        let poly = if l == 0 {
            Polynomial::constant(n + 1, 1.0)
        } else {
            Polynomial::harmonic(n + 1, l, a, b)
        };
        EigenfunctionSpec {
            poly,
            eigenvalue: -(l as f64) * (l as f64 + n as f64 - 1.0) * k,
            label: format!("Re(X{a} + iX{b})^{l} on S^{n}"),
        }
    }

    pub fn constant(nvars: usize) -> Self {
        EigenfunctionSpec {
            poly: Polynomial::constant(nvars, 1.0),
            eigenvalue: 0.0,
            label: "1".into(),
        }
    }

    /// Pull back from a factor whose ambient coordinates start at `offset`.
    pub fn on_factor(&self, nvars: usize, offset: usize, factor: usize) -> Self {
        EigenfunctionSpec {
            poly: self.poly.embed(nvars, offset),
            eigenvalue: self.eigenvalue,
            label: format!("{} on factor {factor}", self.label),
        }
    }
}

impl Field for EigenfunctionSpec {
    fn rank(&self) -> usize {
        0
    }
    fn eval(&self, m: &ChartMetric, x: &[f64]) -> Result<Tensor, TensorError> {
        check_ambient(m, self.poly.nvars())?;
        let (p, _) = need_embedding(m, x)?;
        Ok(Tensor::scalar(self.poly.eval(&p)))
    }
}

fn pullback_vector(p: &[Polynomial], pos: &[f64], jac: &[Vec<f64>], n: usize) -> Vec<f64> {
    let vals: Vec<f64> = p.iter().map(|q| q.eval(pos)).collect();
    (0..n)
        .map(|a| vals.iter().zip(jac).map(|(v, row)| v * row[a]).sum())
        .collect()
}

/// `ω_a = P(X)·∂_a X`: the 1-form dual to the tangential part of an ambient field.
pub struct AmbientOneForm {
    pub p: Vec<Polynomial>,
}

impl Field for AmbientOneForm {
    fn rank(&self) -> usize {
        1
    }
    fn eval(&self, m: &ChartMetric, x: &[f64]) -> Result<Tensor, TensorError> {
        check_ambient(m, self.p.len())?;
        let (pos, jac) = need_embedding(m, x)?;
        Ok(Tensor::from_vec(
            m.dim(),
            1,
            pullback_vector(&self.p, &pos, &jac, m.dim()),
        ))
    }
}

/// `∇_a ξ_b + ∇_b ξ_a` for `ξ` the tangential part of a polynomial ambient field,
/// in closed form from the second fundamental form of round factors.
pub struct LieDerivative {
    pub p: Vec<Polynomial>,
    jac: Vec<Vec<Polynomial>>,
}

impl LieDerivative {
    pub fn new(p: Vec<Polynomial>) -> Self {
        let jac = p.iter().map(|q| q.gradient()).collect();
        LieDerivative { p, jac }
    }
}

impl Field for LieDerivative {
    fn rank(&self) -> usize {
        2
    }
    fn eval(&self, m: &ChartMetric, x: &[f64]) -> Result<Tensor, TensorError> {
        check_ambient(m, self.p.len())?;
        let blocks = m
            .sphere_blocks()
            .ok_or_else(|| TensorError::UnsupportedManifold(m.domain_description()))?;
        let (pos, jac) = need_embedding(m, x)?;
        let n = m.dim();
        let big = self.p.len();
        // (DP ∂_a X)^A
        let dp: Vec<Vec<f64>> = (0..n)
            .map(|a| {
                (0..big)
                    .map(|i| {
                        (0..big)
                            .map(|j| self.jac[i][j].eval(&pos) * jac[j][a])
                            .sum()
                    })
                    .collect()
            })
            .collect();
        let g = m.metric(x)?;
        let vals: Vec<f64> = self.p.iter().map(|q| q.eval(&pos)).collect();
        let mut h = Tensor::zeros(n, 2);
        for a in 0..n {
            for b in 0..n {
                let t: f64 = (0..big)
                    .map(|i| dp[a][i] * jac[i][b] + dp[b][i] * jac[i][a])
                    .sum();
                h[(a, b)] = t;
            }
        }
        for blk in blocks {
            let pn: f64 = blk.ambient.clone().map(|i| vals[i] * pos[i]).sum();
            for a in blk.coords.clone() {
                for b in blk.coords.clone() {
                    h[(a, b)] -= 2.0 * blk.curvature * pn * g[(a, b)];
                }
            }
        }
        Ok(h)
    }
}

/// `∇_i T_{j…}` by Richardson-extrapolated central differences plus Christoffel terms.
pub struct CovariantDerivative {
    inner: FieldRef,
}

impl CovariantDerivative {
    pub fn new(inner: FieldRef) -> Result<Self, TensorError> {
        if inner.depth() == 0 {
            return Err(TensorError::InsufficientDepth {
                needed: 1,
                available: 0,
            });
        }
        Ok(CovariantDerivative { inner })
    }
}

impl Field for CovariantDerivative {
    fn rank(&self) -> usize {
        self.inner.rank() + 1
    }

    fn eval(&self, m: &ChartMetric, x: &[f64]) -> Result<Tensor, TensorError> {
        let n = m.dim();
        let r = self.inner.rank();
        let t = self.inner.eval(m, x)?;
        let gam = m.christoffel(x)?;
        let block = n.pow(r as u32);
        let mut out = Tensor::zeros(n, r + 1);
        let inner_shape = Tensor::zeros(n, r);
        for k in 0..n {
            let d = fd_partial(
                |y| Ok(self.inner.eval(m, y)?.data().to_vec()),
                x,
                k,
                m.step(),
            )?;
            for (o, idx) in inner_shape.indices().enumerate() {
                let mut v = d[o];
                for s in 0..r {
                    let mut j = idx.clone();
                    for p in 0..n {
                        j[s] = p;
                        v -= gam.get(&[p, k, idx[s]]) * t.get(&j);
                    }
                }
                out.data_mut()[k * block + o] = v;
            }
        }
        Ok(out)
    }

    fn depth(&self) -> usize {
        self.inner.depth() - 1
    }
}

/// `∇_a ω_b + ∇_b ω_a`, differentiated numerically.
pub struct LieDerivativeFd {
    nabla: CovariantDerivative,
}

impl LieDerivativeFd {
    pub fn new(omega: FieldRef) -> Result<Self, TensorError> {
        if omega.rank() != 1 {
            return Err(TensorError::RankMismatch {
                expected: 1,
                got: omega.rank(),
            });
        }
        Ok(LieDerivativeFd {
            nabla: CovariantDerivative::new(omega)?,
        })
    }
}

impl Field for LieDerivativeFd {
    fn rank(&self) -> usize {
        2
    }
    fn eval(&self, m: &ChartMetric, x: &[f64]) -> Result<Tensor, TensorError> {
        let d = self.nabla.eval(m, x)?;
        Ok(d.add(&d.transpose()))
    }
    fn depth(&self) -> usize {
        self.nabla.depth()
    }
}

/// `g^ij h_ij`.
pub struct Trace {
    pub h: FieldRef,
}

impl Field for Trace {
    fn rank(&self) -> usize {
        0
    }
    fn eval(&self, m: &ChartMetric, x: &[f64]) -> Result<Tensor, TensorError> {
        let h = self.h.eval(m, x)?;
        let ginv = m.inverse_metric(x)?;
        Ok(Tensor::scalar(
            h.data().iter().zip(ginv.data()).map(|(a, b)| a * b).sum(),
        ))
    }
    fn depth(&self) -> usize {
        self.h.depth()
    }
}

/// `s·F`.
pub struct Scaled {
    pub s: f64,
    pub f: FieldRef,
}

impl Field for Scaled {
    fn rank(&self) -> usize {
        self.f.rank()
    }
    fn eval(&self, m: &ChartMetric, x: &[f64]) -> Result<Tensor, TensorError> {
        Ok(self.f.eval(m, x)?.scale(self.s))
    }
    fn depth(&self) -> usize {
        self.f.depth()
    }
}

/// `Σ c_i F_i` over fields of one rank.
pub struct LinearCombination {
    rank: usize,
    terms: Vec<(f64, FieldRef)>,
}

impl LinearCombination {
    pub fn new(terms: Vec<(f64, FieldRef)>) -> Result<Self, TensorError> {
        let rank = terms
            .first()
            .map(|(_, f)| f.rank())
            .ok_or_else(|| TensorError::InvalidModel("empty linear combination".into()))?;
        if let Some((_, f)) = terms.iter().find(|(_, f)| f.rank() != rank) {
            return Err(TensorError::RankMismatch {
                expected: rank,
                got: f.rank(),
            });
        }
        Ok(LinearCombination { rank, terms })
    }
}

impl Field for LinearCombination {
    fn rank(&self) -> usize {
        self.rank
    }
    fn eval(&self, m: &ChartMetric, x: &[f64]) -> Result<Tensor, TensorError> {
        let mut it = self.terms.iter();
        let (c, f) = it.next().expect("non-empty");
        let mut acc = f.eval(m, x)?.scale(*c);
        for (c, f) in it {
            acc = acc.add(&f.eval(m, x)?.scale(*c));
        }
        Ok(acc)
    }
    fn depth(&self) -> usize {
        self.terms
            .iter()
            .map(|(_, f)| f.depth())
            .min()
            .unwrap_or(SMOOTH)
    }
}

/// `Hess f` in closed form for an ambient polynomial `f`: half the Lie derivative along `∇f`.
pub fn ambient_hessian(poly: &Polynomial) -> FieldRef {
    Arc::new(Scaled {
        s: 0.5,
        f: Arc::new(LieDerivative::new(poly.gradient())),
    })
}
