//! Numerical Riemannian geometry on model Einstein manifolds.
//!
//! Conventions: `R^m_ijk = ∂_iΓ^m_jk - ∂_jΓ^m_ik + Γ^m_ipΓ^p_jk - Γ^m_jpΓ^p_ik`,
//! `R_ijkl = R^m_ijk g_ml`, so the round sphere has `R_ijji > 0` and
//! `Ric_ij = g^ab R_iabj`. Covariant derivatives put the new index first.

mod field;
mod metric;
mod ops;
mod poly;
mod quadrature;

#[cfg(test)]
mod identity_tests;

pub use field::{
    ambient_hessian, AmbientFunction, AmbientOneForm, BlockMetric, ChartField, CovariantDerivative,
    EigenfunctionSpec, Field, FieldRef, LieDerivative, LieDerivativeFd, LinearCombination,
    MetricField, MetricMultiple, Scaled, Trace, ZeroField, SMOOTH,
};
pub use metric::{ChartMetric, CurvatureMode, SphereChart, DEFAULT_STEP};
pub use ops::{
    covariant, div, div_star, hess, inner, lichnerowicz, rm_contract, rough_laplacian, s_of_u,
    trace, v_for_conformal, NTerms, SecondVariation, Vh,
};
pub use poly::Polynomial;
pub use quadrature::{
    gauss_gegenbauer, gauss_legendre, pairwise_sum, quadrature, volume, QuadratureRule,
};

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TensorError {
    #[error("metric is singular at {point:?}")]
    SingularMetric { point: Vec<f64> },
    #[error("point {point:?} is outside the chart domain")]
    OutOfDomain { point: Vec<f64> },
    #[error("field supports {available} more numerical derivatives, {needed} requested")]
    InsufficientDepth { needed: usize, available: usize },
    #[error("metric is not Einstein")]
    NotEinstein,
    #[error("eigenvalue k = {k} resonates with λ = {lambda}: k + λ = 0")]
    Resonance { k: f64, lambda: f64 },
    #[error("v_h is required for h but was not supplied")]
    MissingVh,
    #[error("unsupported manifold: {0}")]
    UnsupportedManifold(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("expected a rank {expected} field, got rank {got}")]
    RankMismatch { expected: usize, got: usize },
}

/// Covariant tensor components at a point, row major.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Tensor {
    dim: usize,
    rank: usize,
    data: Vec<f64>,
}

impl Tensor {
    pub fn zeros(dim: usize, rank: usize) -> Self {
        Tensor {
            dim,
            rank,
            data: vec![0.0; dim.pow(rank as u32)],
        }
    }

    pub fn scalar(v: f64) -> Self {
        Tensor {
            dim: 0,
            rank: 0,
            data: vec![v],
        }
    }

    pub fn from_vec(dim: usize, rank: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), dim.pow(rank as u32), "component count");
        Tensor { dim, rank, data }
    }

    pub fn from_matrix(m: &[Vec<f64>]) -> Self {
        let n = m.len();
        Tensor::from_vec(n, 2, m.iter().flatten().copied().collect())
    }

    pub fn identity(dim: usize) -> Self {
        let mut t = Tensor::zeros(dim, 2);
        for i in 0..dim {
            t[(i, i)] = 1.0;
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn value(&self) -> f64 {
        debug_assert_eq!(self.rank, 0);
        self.data[0]
    }

    pub fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.rank);
        idx.iter().fold(0, |acc, &i| acc * self.dim + i)
    }

    pub fn get(&self, idx: &[usize]) -> f64 {
        self.data[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: f64) {
        let o = self.offset(idx);
        self.data[o] = v;
    }

    /// Multi-indices in storage order.
    pub fn indices(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        let (dim, rank) = (self.dim, self.rank);
        (0..self.data.len()).map(move |mut o| {
            let mut idx = vec![0; rank];
            for slot in idx.iter_mut().rev() {
                *slot = o % dim.max(1);
                o /= dim.max(1);
            }
            idx
        })
    }

    fn zip_with(&self, other: &Tensor, f: impl Fn(f64, f64) -> f64) -> Tensor {
        assert_eq!((self.dim, self.rank), (other.dim, other.rank), "shape");
        Tensor {
            dim: self.dim,
            rank: self.rank,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(*a, *b))
                .collect(),
        }
    }

    pub fn add(&self, other: &Tensor) -> Tensor {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Tensor) -> Tensor {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: f64) -> Tensor {
        Tensor {
            dim: self.dim,
            rank: self.rank,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, a| m.max(a.abs()))
    }

    /// `max |T - Tᵀ|` over the last two slots.
    pub fn symmetry_defect(&self) -> f64 {
        if self.rank < 2 {
            return 0.0;
        }
        let mut worst: f64 = 0.0;
        for idx in self.indices() {
            let mut t = idx.clone();
            t.swap(self.rank - 2, self.rank - 1);
            worst = worst.max((self.get(&idx) - self.get(&t)).abs());
        }
        worst
    }

    pub fn transpose(&self) -> Tensor {
        assert_eq!(self.rank, 2);
        let n = self.dim;
        let mut t = Tensor::zeros(n, 2);
        for i in 0..n {
            for j in 0..n {
                t[(i, j)] = self[(j, i)];
            }
        }
        t
    }

    pub fn to_matrix(&self) -> Vec<Vec<f64>> {
        assert_eq!(self.rank, 2);
        self.data.chunks(self.dim).map(|r| r.to_vec()).collect()
    }
}

impl std::ops::Index<(usize, usize)> for Tensor {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Tensor {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.dim + j]
    }
}

/// Index symmetry expected of a field value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Valence {
    Function,
    OneForm,
    Symmetric2,
    General(usize),
}

impl Valence {
    pub fn rank(self) -> usize {
        match self {
            Valence::Function => 0,
            Valence::OneForm => 1,
            Valence::Symmetric2 => 2,
            Valence::General(r) => r,
        }
    }
}

/// A field value together with where it was taken.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TensorFieldValue {
    pub valence: Valence,
    pub components: Tensor,
    pub point: Vec<f64>,
}

impl TensorFieldValue {
    pub fn new(valence: Valence, components: Tensor, point: Vec<f64>) -> Result<Self, TensorError> {
        if components.rank() != valence.rank() {
            return Err(TensorError::RankMismatch {
                expected: valence.rank(),
                got: components.rank(),
            });
        }
        Ok(TensorFieldValue {
            valence,
            components,
            point,
        })
    }

    /// Largest violation of the valence's symmetry.
    pub fn symmetry_defect(&self) -> f64 {
        match self.valence {
            Valence::Symmetric2 => self.components.symmetry_defect(),
            _ => 0.0,
        }
    }
}

/// Gauss-Jordan inverse of a row-major `n×n` matrix.
pub(crate) fn invert(a: &[f64], n: usize) -> Option<Vec<f64>> {
    let mut m = a.to_vec();
    let mut inv = vec![0.0; n * n];
    for i in 0..n {
        inv[i * n + i] = 1.0;
    }
    let scale = a.iter().fold(0.0f64, |s, v| s.max(v.abs()));
    if scale == 0.0 || !scale.is_finite() {
        return None;
    }
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| m[i * n + c].abs().total_cmp(&m[j * n + c].abs()))?;
        if m[p * n + c].abs() <= 1e-14 * scale {
            return None;
        }
        for k in 0..n {
            m.swap(c * n + k, p * n + k);
            inv.swap(c * n + k, p * n + k);
        }
        let d = m[c * n + c];
        for k in 0..n {
            m[c * n + k] /= d;
            inv[c * n + k] /= d;
        }
        for r in 0..n {
            if r != c {
                let f = m[r * n + c];
                if f != 0.0 {
                    for k in 0..n {
                        m[r * n + k] -= f * m[c * n + k];
                        inv[r * n + k] -= f * inv[c * n + k];
                    }
                }
            }
        }
    }
    Some(inv)
}

/// Richardson-extrapolated central difference of `f` along coordinate `k`.
pub(crate) fn fd_partial<F>(f: F, x: &[f64], k: usize, h: f64) -> Result<Vec<f64>, TensorError>
where
    F: Fn(&[f64]) -> Result<Vec<f64>, TensorError>,
{
    let shifted = |d: f64| -> Result<Vec<f64>, TensorError> {
        let mut y = x.to_vec();
        y[k] += d;
        f(&y)
    };
    let (p1, m1) = (shifted(h)?, shifted(-h)?);
    let (p2, m2) = (shifted(h / 2.0)?, shifted(-h / 2.0)?);
    Ok((0..p1.len())
        .map(|i| {
            let d1 = (p1[i] - m1[i]) / (2.0 * h);
            let d2 = (p2[i] - m2[i]) / h;
            (4.0 * d2 - d1) / 3.0
        })
        .collect())
}
