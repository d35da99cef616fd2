//! Model manifolds in coordinate charts.

use super::{fd_partial, invert, Tensor, TensorError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CurvatureMode {
    ClosedForm,
    FiniteDifference,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SphereChart {
    /// Projection from the north pole; the origin is the south pole.
    Stereographic,
    /// Projection from the south pole.
    ReflectedStereographic,
    /// Hyperspherical angles `(ψ_1, …, ψ_{n-1}, φ)`.
    Polar,
}

pub(crate) struct SphereBlock {
    pub ambient: std::ops::Range<usize>,
    pub coords: std::ops::Range<usize>,
    pub curvature: f64,
}

type MetricFn = Arc<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>;

#[derive(Clone)]
enum Geometry {
    /// Flat torus on `[0, 2π]^n`.
    Flat {
        dim: usize,
    },
    Sphere {
        dim: usize,
        curvature: f64,
        chart: SphereChart,
    },
    Product(Box<ChartMetric>, Box<ChartMetric>),
    Custom {
        dim: usize,
        lo: Vec<f64>,
        hi: Vec<f64>,
        metric: MetricFn,
    },
}

/// A Riemannian metric in one coordinate chart.
#[derive(Clone)]
pub struct ChartMetric {
    geometry: Geometry,
    mode: CurvatureMode,
    step: f64,
}

pub const DEFAULT_STEP: f64 = 1e-3;

impl fmt::Debug for ChartMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ChartMetric")
            .field("domain", &self.domain_description())
            .field("mode", &self.mode)
            .field("step", &self.step)
            .finish()
    }
}

impl ChartMetric {
    pub fn flat(dim: usize) -> Self {
        ChartMetric {
            geometry: Geometry::Flat { dim },
            mode: CurvatureMode::ClosedForm,
            step: DEFAULT_STEP,
        }
    }

    /// Round `S^n` of sectional curvature `k` in the stereographic chart.
    pub fn round_sphere(n: usize, k: f64) -> Result<Self, TensorError> {
        Self::round_sphere_in(n, k, SphereChart::Stereographic)
    }

    pub fn round_sphere_in(n: usize, k: f64, chart: SphereChart) -> Result<Self, TensorError> {
        if n == 0 {
            return Err(TensorError::InvalidModel(
                "sphere dimension must be positive".into(),
            ));
        }
        if !(k > 0.0 && k.is_finite()) {
            return Err(TensorError::InvalidModel(format!(
                "sectional curvature must be positive, got {k}"
            )));
        }
        Ok(ChartMetric {
            geometry: Geometry::Sphere {
                dim: n,
                curvature: k,
                chart,
            },
            mode: CurvatureMode::ClosedForm,
            step: DEFAULT_STEP,
        })
    }

    pub fn product(a: ChartMetric, b: ChartMetric) -> Self {
        ChartMetric {
            geometry: Geometry::Product(Box::new(a), Box::new(b)),
            mode: CurvatureMode::ClosedForm,
            step: DEFAULT_STEP,
        }
    }

    /// An arbitrary metric on the box `lo < x < hi`; curvature by finite differences only.
    pub fn custom<F>(lo: Vec<f64>, hi: Vec<f64>, metric: F) -> Result<Self, TensorError>
    where
        F: Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
    {
        if lo.len() != hi.len()
            || lo.is_empty()
            || lo
                .iter()
                .zip(&hi)
                .any(|(a, b)| a.partial_cmp(b) != Some(std::cmp::Ordering::Less))
        {
            return Err(TensorError::InvalidModel(
                "empty or malformed coordinate box".into(),
            ));
        }
        Ok(ChartMetric {
            geometry: Geometry::Custom {
                dim: lo.len(),
                lo,
                hi,
                metric: Arc::new(metric),
            },
            mode: CurvatureMode::FiniteDifference,
            step: DEFAULT_STEP,
        })
    }

    /// Custom metrics stay in finite-difference mode.
    pub fn with_mode(mut self, mode: CurvatureMode) -> Self {
        if !matches!(self.geometry, Geometry::Custom { .. }) {
            self.mode = mode;
        }
        self
    }

    pub fn with_step(mut self, step: f64) -> Self {
        self.step = step;
        if let Geometry::Product(a, b) = &mut self.geometry {
            a.step = step;
            b.step = step;
        }
        self
    }

    pub fn dim(&self) -> usize {
        match &self.geometry {
            Geometry::Flat { dim }
            | Geometry::Sphere { dim, .. }
            | Geometry::Custom { dim, .. } => *dim,
            Geometry::Product(a, b) => a.dim() + b.dim(),
        }
    }

    pub fn mode(&self) -> CurvatureMode {
        self.mode
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn factors(&self) -> Option<(&ChartMetric, &ChartMetric)> {
        match &self.geometry {
            Geometry::Product(a, b) => Some((a, b)),
            _ => None,
        }
    }

    /// `(dimension, sectional curvature, chart)` for a round sphere.
    pub fn sphere(&self) -> Option<(usize, f64, SphereChart)> {
        match &self.geometry {
            Geometry::Sphere {
                dim,
                curvature,
                chart,
            } => Some((*dim, *curvature, *chart)),
            _ => None,
        }
    }

    pub fn is_flat(&self) -> bool {
        matches!(self.geometry, Geometry::Flat { .. })
    }

    /// The same manifold in another sphere chart, recursively for products.
    pub(crate) fn rechart(&self, charts: &[SphereChart]) -> ChartMetric {
        let mut it = charts.iter().copied();
        self.rechart_iter(&mut it)
    }

    fn rechart_iter(&self, charts: &mut impl Iterator<Item = SphereChart>) -> ChartMetric {
        let geometry = match &self.geometry {
            Geometry::Sphere { dim, curvature, .. } => Geometry::Sphere {
                dim: *dim,
                curvature: *curvature,
                chart: charts.next().expect("one chart per sphere factor"),
            },
            Geometry::Product(a, b) => Geometry::Product(
                Box::new(a.rechart_iter(charts)),
                Box::new(b.rechart_iter(charts)),
            ),
            g => g.clone(),
        };
        ChartMetric {
            geometry,
            mode: self.mode,
            step: self.step,
        }
    }

    pub fn domain_description(&self) -> String {
        match &self.geometry {
            Geometry::Flat { dim } => format!("flat torus [0, 2π]^{dim}"),
            Geometry::Sphere {
                dim,
                curvature,
                chart,
            } => {
                let r = 1.0 / curvature.sqrt();
                match chart {
                    SphereChart::Polar => format!(
                        "S^{dim} (K = {curvature}), angles (0, π)^{} × (0, 2π)",
                        dim - 1
                    ),
                    SphereChart::Stereographic => format!(
                        "S^{dim} (K = {curvature}), stereographic ball |x| < {}",
                        2.0 * r
                    ),
                    SphereChart::ReflectedStereographic => format!(
                        "S^{dim} (K = {curvature}), reflected stereographic ball |x| < {}",
                        2.0 * r
                    ),
                }
            }
            Geometry::Product(a, b) => {
                format!(
                    "({}) × ({})",
                    a.domain_description(),
                    b.domain_description()
                )
            }
            Geometry::Custom { lo, hi, .. } => format!("custom metric on box {lo:?} .. {hi:?}"),
        }
    }

    /// Coordinate box or ball used for sampling: `(lo, hi)` per coordinate and an optional ball radius.
    fn sample_into<R: Rng>(&self, rng: &mut R, out: &mut Vec<f64>) {
        const MARGIN: f64 = 0.05;
        let boxed = |rng: &mut R, out: &mut Vec<f64>, lo: f64, hi: f64| {
            let w = hi - lo;
            out.push(rng.gen_range(lo + MARGIN * w..=hi - MARGIN * w));
        };
        match &self.geometry {
            Geometry::Flat { dim } => {
                for _ in 0..*dim {
                    boxed(rng, out, 0.0, std::f64::consts::TAU);
                }
            }
            Geometry::Sphere {
                dim,
                curvature,
                chart,
            } => match chart {
                SphereChart::Polar => {
                    for m in 0..*dim {
                        let hi = if m + 1 == *dim {
                            std::f64::consts::TAU
                        } else {
                            std::f64::consts::PI
                        };
                        boxed(rng, out, 0.0, hi);
                    }
                }
                _ => {
                    let radius = 0.9 * 2.0 / curvature.sqrt();
                    loop {
                        let p: Vec<f64> =
                            (0..*dim).map(|_| rng.gen_range(-radius..=radius)).collect();
                        if p.iter().map(|v| v * v).sum::<f64>() <= radius * radius {
                            out.extend(p);
                            break;
                        }
                    }
                }
            },
            Geometry::Product(a, b) => {
                a.sample_into(rng, out);
                b.sample_into(rng, out);
            }
            Geometry::Custom { lo, hi, .. } => {
                for (l, h) in lo.iter().zip(hi) {
                    boxed(rng, out, *l, *h);
                }
            }
        }
    }

    /// Seeded points away from the chart boundary.
    pub fn sample_points(&self, seed: u64, count: usize) -> Vec<Vec<f64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count)
            .map(|_| {
                let mut p = Vec::with_capacity(self.dim());
                self.sample_into(&mut rng, &mut p);
                p
            })
            .collect()
    }

    pub fn einstein_constant(&self) -> Option<f64> {
        match &self.geometry {
            Geometry::Flat { .. } => Some(0.0),
            Geometry::Sphere { dim, curvature, .. } => Some((*dim as f64 - 1.0) * curvature),
            Geometry::Product(a, b) => {
                let (la, lb) = (a.einstein_constant()?, b.einstein_constant()?);
                ((la - lb).abs() <= 1e-12 * la.abs().max(lb.abs()).max(1.0)).then_some(la)
            }
            Geometry::Custom { .. } => None,
        }
    }

    fn check_point(&self, x: &[f64]) -> Result<(), TensorError> {
        if x.len() != self.dim() || x.iter().any(|v| !v.is_finite()) {
            return Err(TensorError::OutOfDomain { point: x.to_vec() });
        }
        Ok(())
    }

    fn metric_raw(&self, x: &[f64]) -> Vec<f64> {
        let n = self.dim();
        match &self.geometry {
            Geometry::Flat { .. } => Tensor::identity(n).data().to_vec(),
            Geometry::Sphere {
                curvature, chart, ..
            } => {
                let r2 = 1.0 / curvature;
                let mut g = vec![0.0; n * n];
                match chart {
                    SphereChart::Polar => {
                        let mut w = r2;
                        for m in 0..n {
                            g[m * n + m] = w;
                            w *= x[m].sin().powi(2);
                        }
                    }
                    _ => {
                        let s: f64 = x.iter().map(|v| v * v).sum();
                        let sigma = 2.0 * r2 / (r2 + s);
                        for m in 0..n {
                            g[m * n + m] = sigma * sigma;
                        }
                    }
                }
                g
            }
            Geometry::Product(a, b) => {
                let (na, nb) = (a.dim(), b.dim());
                let (ga, gb) = (a.metric_raw(&x[..na]), b.metric_raw(&x[na..]));
                let mut g = vec![0.0; n * n];
                for i in 0..na {
                    for j in 0..na {
                        g[i * n + j] = ga[i * na + j];
                    }
                }
                for i in 0..nb {
                    for j in 0..nb {
                        g[(na + i) * n + na + j] = gb[i * nb + j];
                    }
                }
                g
            }
            Geometry::Custom { metric, .. } => metric(x),
        }
    }

    pub fn metric(&self, x: &[f64]) -> Result<Tensor, TensorError> {
        self.check_point(x)?;
        let g = self.metric_raw(x);
        let n = self.dim();
        if g.len() != n * n || g.iter().any(|v| !v.is_finite()) {
            return Err(TensorError::InvalidModel(format!(
                "metric evaluator returned {} components, expected {}",
                g.len(),
                n * n
            )));
        }
        Ok(Tensor::from_vec(n, 2, g))
    }

    pub fn inverse_metric(&self, x: &[f64]) -> Result<Tensor, TensorError> {
        let g = self.metric(x)?;
        let n = self.dim();
        let inv =
            invert(g.data(), n).ok_or_else(|| TensorError::SingularMetric { point: x.to_vec() })?;
        Ok(Tensor::from_vec(n, 2, inv))
    }

    /// `Γ^k_ij` stored as `[k][i][j]`.
    pub fn christoffel(&self, x: &[f64]) -> Result<Tensor, TensorError> {
        self.check_point(x)?;
        match self.mode {
            CurvatureMode::ClosedForm => self.christoffel_closed(x),
            CurvatureMode::FiniteDifference => self.christoffel_fd(x),
        }
    }

    #[allow(clippy::needless_range_loop)]
    fn christoffel_closed(&self, x: &[f64]) -> Result<Tensor, TensorError> {
        let n = self.dim();
        let mut gam = Tensor::zeros(n, 3);
        match &self.geometry {
            Geometry::Flat { .. } => {}
            Geometry::Sphere {
                curvature, chart, ..
            } => match chart {
                SphereChart::Polar => {
                    let g = self.metric_raw(x);
                    let gd: Vec<f64> = (0..n).map(|m| g[m * n + m]).collect();
                    if gd.iter().any(|v| *v <= 1e-300) {
                        return Err(TensorError::SingularMetric { point: x.to_vec() });
                    }
                    // ∂_j g_mm = 2 cot(x_j) g_mm for j < m.
                    let dg = |m: usize, j: usize| -> f64 {
                        if j < m {
                            2.0 * x[j].cos() / x[j].sin() * gd[m]
                        } else {
                            0.0
                        }
                    };
                    for k in 0..n {
                        for i in 0..n {
                            for j in 0..n {
                                let mut t = 0.0;
                                if j == k {
                                    t += dg(k, i);
                                }
                                if i == k {
                                    t += dg(k, j);
                                }
                                if i == j {
                                    t -= dg(i, k);
                                }
                                if t != 0.0 {
                                    gam.set(&[k, i, j], t / (2.0 * gd[k]));
                                }
                            }
                        }
                    }
                }
                _ => {
                    let r2 = 1.0 / curvature;
                    let s: f64 = x.iter().map(|v| v * v).sum();
                    let phi: Vec<f64> = x.iter().map(|v| -2.0 * v / (r2 + s)).collect();
                    for k in 0..n {
                        for i in 0..n {
                            for j in 0..n {
                                let mut t = 0.0;
                                if i == k {
                                    t += phi[j];
                                }
                                if j == k {
                                    t += phi[i];
                                }
                                if i == j {
                                    t -= phi[k];
                                }
                                gam.set(&[k, i, j], t);
                            }
                        }
                    }
                }
            },
            Geometry::Product(a, b) => {
                let na = a.dim();
                let ga = a.christoffel(&x[..na])?;
                let gb = b.christoffel(&x[na..])?;
                for idx in ga.indices() {
                    gam.set(&idx, ga.get(&idx));
                }
                for idx in gb.indices() {
                    let shifted: Vec<usize> = idx.iter().map(|i| i + na).collect();
                    gam.set(&shifted, gb.get(&idx));
                }
            }
            Geometry::Custom { .. } => return self.christoffel_fd(x),
        }
        Ok(gam)
    }

    fn christoffel_fd(&self, x: &[f64]) -> Result<Tensor, TensorError> {
        let n = self.dim();
        let ginv = self.inverse_metric(x)?;
        let dg: Vec<Vec<f64>> = (0..n)
            .map(|l| fd_partial(|y| Ok(self.metric_raw(y)), x, l, self.step))
            .collect::<Result<_, _>>()?;
        let mut gam = Tensor::zeros(n, 3);
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let mut t = 0.0;
                    for l in 0..n {
                        t +=
                            ginv[(k, l)] * (dg[i][j * n + l] + dg[j][i * n + l] - dg[l][i * n + j]);
                    }
                    gam.set(&[k, i, j], 0.5 * t);
                }
            }
        }
        Ok(gam)
    }

    /// `R_ijkl`.
    pub fn riemann(&self, x: &[f64]) -> Result<Tensor, TensorError> {
        self.check_point(x)?;
        let n = self.dim();
        match (&self.geometry, self.mode) {
            (Geometry::Flat { .. }, CurvatureMode::ClosedForm) => Ok(Tensor::zeros(n, 4)),
            (Geometry::Sphere { curvature, .. }, CurvatureMode::ClosedForm) => {
                let g = self.metric(x)?;
                let mut r = Tensor::zeros(n, 4);
                for i in 0..n {
                    for j in 0..n {
                        for k in 0..n {
                            for l in 0..n {
                                let v = g[(i, l)] * g[(j, k)] - g[(i, k)] * g[(j, l)];
                                if v != 0.0 {
                                    r.set(&[i, j, k, l], curvature * v);
                                }
                            }
                        }
                    }
                }
                Ok(r)
            }
            (Geometry::Product(a, b), CurvatureMode::ClosedForm) => {
                let na = a.dim();
                let ra = a.riemann(&x[..na])?;
                let rb = b.riemann(&x[na..])?;
                let mut r = Tensor::zeros(n, 4);
                for idx in ra.indices() {
                    r.set(&idx, ra.get(&idx));
                }
                for idx in rb.indices() {
                    let shifted: Vec<usize> = idx.iter().map(|i| i + na).collect();
                    r.set(&shifted, rb.get(&idx));
                }
                Ok(r)
            }
            _ => self.riemann_fd(x),
        }
    }

    fn riemann_fd(&self, x: &[f64]) -> Result<Tensor, TensorError> {
        let n = self.dim();
        let g = self.metric(x)?;
        let gam = self.christoffel_fd(x)?;
        // dgam[i] = ∂_i Γ, same layout as Γ.
        let dgam: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                fd_partial(
                    |y| Ok(self.christoffel_fd(y)?.data().to_vec()),
                    x,
                    i,
                    self.step,
                )
            })
            .collect::<Result<_, _>>()?;
        let at = |d: &[f64], m: usize, j: usize, k: usize| d[(m * n + j) * n + k];
        let mut up = Tensor::zeros(n, 4); // [m][i][j][k] = R^m_ijk
        for m in 0..n {
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        let mut v = at(&dgam[i], m, j, k) - at(&dgam[j], m, i, k);
                        for p in 0..n {
                            v += gam.get(&[m, i, p]) * gam.get(&[p, j, k])
                                - gam.get(&[m, j, p]) * gam.get(&[p, i, k]);
                        }
                        up.set(&[m, i, j, k], v);
                    }
                }
            }
        }
        let mut r = Tensor::zeros(n, 4);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let v: f64 = (0..n).map(|m| up.get(&[m, i, j, k]) * g[(m, l)]).sum();
                        r.set(&[i, j, k, l], v);
                    }
                }
            }
        }
        Ok(r)
    }

    /// `Ric_ij = g^ab R_iabj`.
    pub fn ricci(&self, x: &[f64]) -> Result<Tensor, TensorError> {
        let n = self.dim();
        let r = self.riemann(x)?;
        let ginv = self.inverse_metric(x)?;
        let mut ric = Tensor::zeros(n, 2);
        for i in 0..n {
            for j in 0..n {
                let mut v = 0.0;
                for a in 0..n {
                    for b in 0..n {
                        v += ginv[(a, b)] * r.get(&[i, a, b, j]);
                    }
                }
                ric[(i, j)] = v;
            }
        }
        Ok(ric)
    }

    pub fn scalar(&self, x: &[f64]) -> Result<f64, TensorError> {
        let ric = self.ricci(x)?;
        let ginv = self.inverse_metric(x)?;
        Ok(ric.data().iter().zip(ginv.data()).map(|(a, b)| a * b).sum())
    }

    /// Dimension of the Euclidean space the model sits in, if any.
    pub fn ambient_dim(&self) -> Option<usize> {
        match &self.geometry {
            Geometry::Flat { dim } => Some(*dim),
            Geometry::Sphere { dim, .. } => Some(dim + 1),
            Geometry::Product(a, b) => Some(a.ambient_dim()? + b.ambient_dim()?),
            Geometry::Custom { .. } => None,
        }
    }

    /// Ambient position of a chart point. Flat tori use the chart coordinates.
    pub fn embed(&self, x: &[f64]) -> Option<Vec<f64>> {
        match &self.geometry {
            Geometry::Flat { .. } => Some(x.to_vec()),
            Geometry::Sphere {
                dim,
                curvature,
                chart,
            } => {
                let r = 1.0 / curvature.sqrt();
                let n = *dim;
                Some(match chart {
                    SphereChart::Polar => (0..=n).map(|k| r * polar_factors(x, k, None)).collect(),
                    _ => {
                        let r2 = r * r;
                        let s: f64 = x.iter().map(|v| v * v).sum();
                        let mut out: Vec<f64> = x.iter().map(|v| 2.0 * r2 * v / (r2 + s)).collect();
                        let last = r * (s - r2) / (r2 + s);
                        out.push(if *chart == SphereChart::Stereographic {
                            last
                        } else {
                            -last
                        });
                        out
                    }
                })
            }
            Geometry::Product(a, b) => {
                let na = a.dim();
                let mut out = a.embed(&x[..na])?;
                out.extend(b.embed(&x[na..])?);
                Some(out)
            }
            Geometry::Custom { .. } => None,
        }
    }

    /// `∂_a X^A` as rows `A`, columns `a`.
    pub fn embed_jacobian(&self, x: &[f64]) -> Option<Vec<Vec<f64>>> {
        let n = self.dim();
        match &self.geometry {
            Geometry::Flat { .. } => Some(Tensor::identity(n).to_matrix()),
            Geometry::Sphere {
                curvature, chart, ..
            } => {
                let r = 1.0 / curvature.sqrt();
                Some(match chart {
                    SphereChart::Polar => (0..=n)
                        .map(|k| (0..n).map(|a| r * polar_factors(x, k, Some(a))).collect())
                        .collect(),
                    _ => {
                        let r2 = r * r;
                        let s: f64 = x.iter().map(|v| v * v).sum();
                        let den = (r2 + s) * (r2 + s);
                        let mut rows: Vec<Vec<f64>> = (0..n)
                            .map(|i| {
                                (0..n)
                                    .map(|a| {
                                        let d = if i == a { r2 + s } else { 0.0 };
                                        2.0 * r2 * (d - 2.0 * x[i] * x[a]) / den
                                    })
                                    .collect()
                            })
                            .collect();
                        let sign = if *chart == SphereChart::Stereographic {
                            1.0
                        } else {
                            -1.0
                        };
                        rows.push(x.iter().map(|v| sign * 4.0 * r2 * r * v / den).collect());
                        rows
                    }
                })
            }
            Geometry::Product(a, b) => {
                let (na, ma) = (a.dim(), a.ambient_dim()?);
                let ja = a.embed_jacobian(&x[..na])?;
                let jb = b.embed_jacobian(&x[na..])?;
                let mut rows = vec![vec![0.0; n]; ma + b.ambient_dim()?];
                for (row, src) in rows.iter_mut().zip(&ja) {
                    row[..na].copy_from_slice(src);
                }
                for (row, src) in rows[ma..].iter_mut().zip(&jb) {
                    row[na..].copy_from_slice(src);
                }
                Some(rows)
            }
            Geometry::Custom { .. } => None,
        }
    }

    /// Round sphere factors with their ambient and chart index ranges.
    pub(crate) fn sphere_blocks(&self) -> Option<Vec<SphereBlock>> {
        match &self.geometry {
            Geometry::Flat { .. } => Some(Vec::new()),
            Geometry::Sphere { dim, curvature, .. } => Some(vec![SphereBlock {
                ambient: 0..dim + 1,
                coords: 0..*dim,
                curvature: *curvature,
            }]),
            Geometry::Product(a, b) => {
                let (na, ma) = (a.dim(), a.ambient_dim()?);
                let mut out = a.sphere_blocks()?;
                out.extend(b.sphere_blocks()?.into_iter().map(|s| SphereBlock {
                    ambient: s.ambient.start + ma..s.ambient.end + ma,
                    coords: s.coords.start + na..s.coords.end + na,
                    curvature: s.curvature,
                }));
                Some(out)
            }
            Geometry::Custom { .. } => None,
        }
    }

    /// Chart coordinates of an ambient point, for stereographic charts.
    pub(crate) fn chart_of(&self, ambient: &[f64]) -> Option<Vec<f64>> {
        match &self.geometry {
            Geometry::Flat { .. } => Some(ambient.to_vec()),
            Geometry::Sphere {
                dim,
                curvature,
                chart,
            } => {
                let r = 1.0 / curvature.sqrt();
                let last = ambient[*dim];
                let den = match chart {
                    SphereChart::Stereographic => r - last,
                    SphereChart::ReflectedStereographic => r + last,
                    SphereChart::Polar => return None,
                };
                Some(ambient[..*dim].iter().map(|v| r * v / den).collect())
            }
            Geometry::Product(a, b) => {
                let ma = a.ambient_dim()?;
                let mut out = a.chart_of(&ambient[..ma])?;
                out.extend(b.chart_of(&ambient[ma..])?);
                Some(out)
            }
            Geometry::Custom { .. } => None,
        }
    }
}

/// `X_k / r` in hyperspherical angles, or its derivative along angle `d`.
fn polar_factors(x: &[f64], k: usize, d: Option<usize>) -> f64 {
    let n = x.len();
    let mut v = 1.0;
    for (j, &xj) in x.iter().enumerate() {
        let (f, df) = if j < k {
            (xj.sin(), xj.cos())
        } else if j == k && k < n {
            (xj.cos(), -xj.sin())
        } else {
            (1.0, 0.0)
        };
        v *= if d == Some(j) { df } else { f };
    }
    v
}
