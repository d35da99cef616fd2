//! Differential operators and the second variation operator `N`.

use super::field::{CovariantDerivative, EigenfunctionSpec, Field, FieldRef, Scaled, Trace};
use super::metric::ChartMetric;
use super::quadrature::{quadrature, volume, QuadratureRule};
use super::{Tensor, TensorError};
use std::sync::Arc;

/// `∇^k F`, checking the derivative budget first.
fn nabla_k(f: &FieldRef, k: usize) -> Result<FieldRef, TensorError> {
    if f.depth() < k {
        return Err(TensorError::InsufficientDepth {
            needed: k,
            available: f.depth(),
        });
    }
    let mut out = f.clone();
    for _ in 0..k {
        out = Arc::new(CovariantDerivative::new(out)?);
    }
    Ok(out)
}

fn expect_rank(f: &FieldRef, rank: usize) -> Result<(), TensorError> {
    if f.rank() != rank {
        return Err(TensorError::RankMismatch {
            expected: rank,
            got: f.rank(),
        });
    }
    Ok(())
}

pub fn covariant(m: &ChartMetric, f: &FieldRef, x: &[f64]) -> Result<Tensor, TensorError> {
    nabla_k(f, 1)?.eval(m, x)
}

pub fn trace(m: &ChartMetric, h: &Tensor, x: &[f64]) -> Result<f64, TensorError> {
    let ginv = m.inverse_metric(x)?;
    Ok(h.data().iter().zip(ginv.data()).map(|(a, b)| a * b).sum())
}

/// `(div h)_i = g^jk ∇_j h_ki`.
pub fn div(m: &ChartMetric, h: &FieldRef, x: &[f64]) -> Result<Tensor, TensorError> {
    expect_rank(h, 2)?;
    let d = covariant(m, h, x)?;
    let ginv = m.inverse_metric(x)?;
    Ok(div_from(&d, &ginv))
}

fn div_from(d: &Tensor, ginv: &Tensor) -> Tensor {
    let n = ginv.dim();
    let mut out = Tensor::zeros(n, 1);
    for i in 0..n {
        let mut v = 0.0;
        for j in 0..n {
            for k in 0..n {
                v += ginv[(j, k)] * d.get(&[j, k, i]);
            }
        }
        out.data_mut()[i] = v;
    }
    out
}

/// `(div* ω)_ij = -½(∇_i ω_j + ∇_j ω_i)`.
pub fn div_star(m: &ChartMetric, omega: &FieldRef, x: &[f64]) -> Result<Tensor, TensorError> {
    expect_rank(omega, 1)?;
    let d = covariant(m, omega, x)?;
    Ok(d.add(&d.transpose()).scale(-0.5))
}

/// `∇_i ∇_j u`.
pub fn hess(m: &ChartMetric, u: &FieldRef, x: &[f64]) -> Result<Tensor, TensorError> {
    expect_rank(u, 0)?;
    nabla_k(u, 2)?.eval(m, x)
}

/// `g^ab ∇_a ∇_b T`.
pub fn rough_laplacian(m: &ChartMetric, t: &FieldRef, x: &[f64]) -> Result<Tensor, TensorError> {
    let dd = nabla_k(t, 2)?.eval(m, x)?;
    let ginv = m.inverse_metric(x)?;
    Ok(trace_first_two(&dd, &ginv, t.rank()))
}

fn trace_first_two(dd: &Tensor, ginv: &Tensor, rank: usize) -> Tensor {
    let n = ginv.dim();
    let block = n.pow(rank as u32);
    let mut out = if rank == 0 {
        Tensor::scalar(0.0)
    } else {
        Tensor::zeros(n, rank)
    };
    for a in 0..n {
        for b in 0..n {
            let w = ginv[(a, b)];
            if w == 0.0 {
                continue;
            }
            let base = (a * n + b) * block;
            for o in 0..block {
                out.data_mut()[o] += w * dd.data()[base + o];
            }
        }
    }
    out
}

fn raise_both(h: &Tensor, ginv: &Tensor) -> Tensor {
    let n = ginv.dim();
    let mut up = Tensor::zeros(n, 2);
    for k in 0..n {
        for l in 0..n {
            let mut v = 0.0;
            for a in 0..n {
                for b in 0..n {
                    v += ginv[(k, a)] * ginv[(l, b)] * h[(a, b)];
                }
            }
            up[(k, l)] = v;
        }
    }
    up
}

fn rm_with(r: &Tensor, up: &Tensor) -> Tensor {
    let n = up.dim();
    let mut out = Tensor::zeros(n, 2);
    for i in 0..n {
        for j in 0..n {
            let mut v = 0.0;
            for k in 0..n {
                for l in 0..n {
                    v += r.get(&[i, k, l, j]) * up[(k, l)];
                }
            }
            out[(i, j)] = v;
        }
    }
    out
}

/// `Rm(h, ·)_ij = R_iklj h^kl`.
pub fn rm_contract(m: &ChartMetric, h: &Tensor, x: &[f64]) -> Result<Tensor, TensorError> {
    let ginv = m.inverse_metric(x)?;
    Ok(rm_with(&m.riemann(x)?, &raise_both(h, &ginv)))
}

/// `⟨A, B⟩` with all indices raised by `g`.
pub fn inner(m: &ChartMetric, a: &Tensor, b: &Tensor, x: &[f64]) -> Result<f64, TensorError> {
    if a.rank() != b.rank() {
        return Err(TensorError::RankMismatch {
            expected: a.rank(),
            got: b.rank(),
        });
    }
    if a.rank() == 0 {
        return Ok(a.value() * b.value());
    }
    let ginv = m.inverse_metric(x)?;
    let n = m.dim();
    let mut cur = a.clone();
    for slot in 0..a.rank() {
        let mut next = Tensor::zeros(n, a.rank());
        for idx in cur.indices() {
            let mut v = 0.0;
            let mut j = idx.clone();
            for p in 0..n {
                j[slot] = p;
                v += ginv[(idx[slot], p)] * cur.get(&j);
            }
            next.set(&idx, v);
        }
        cur = next;
    }
    Ok(cur.data().iter().zip(b.data()).map(|(p, q)| p * q).sum())
}

/// `(Ric∘h)_ij + (h∘Ric)_ij`.
fn ric_compose(ric: &Tensor, h: &Tensor, ginv: &Tensor) -> Tensor {
    let n = h.dim();
    let mut out = Tensor::zeros(n, 2);
    for i in 0..n {
        for j in 0..n {
            let mut v = 0.0;
            for a in 0..n {
                for b in 0..n {
                    v += ginv[(a, b)] * (ric[(i, a)] * h[(b, j)] + h[(i, a)] * ric[(b, j)]);
                }
            }
            out[(i, j)] = v;
        }
    }
    out
}

/// `Δ_L h = Δh + 2Rm(h,·) - Ric∘h - h∘Ric`.
pub fn lichnerowicz(m: &ChartMetric, h: &FieldRef, x: &[f64]) -> Result<Tensor, TensorError> {
    expect_rank(h, 2)?;
    let lap = rough_laplacian(m, h, x)?;
    let hv = h.eval(m, x)?;
    let ginv = m.inverse_metric(x)?;
    let rm = rm_with(&m.riemann(x)?, &raise_both(&hv, &ginv));
    let ric = m.ricci(x)?;
    Ok(lap.add(&rm.scale(2.0)).sub(&ric_compose(&ric, &hv, &ginv)))
}

/// `S(u) = (Δu) g - Hess u + λ u g`.
pub fn s_of_u(m: &ChartMetric, u: &FieldRef, x: &[f64]) -> Result<Tensor, TensorError> {
    expect_rank(u, 0)?;
    let lambda = m.einstein_constant().ok_or(TensorError::NotEinstein)?;
    let hs = hess(m, u, x)?;
    let lap = trace(m, &hs, x)?;
    let g = m.metric(x)?;
    let uv = u.eval(m, x)?.value();
    Ok(g.scale(lap + lambda * uv).sub(&hs))
}

/// `v = k f / (k + λ)`, the solution of `Δv + λv = Δf` for an eigenfunction `f`.
pub fn v_for_conformal(f: &EigenfunctionSpec, lambda: f64) -> Result<FieldRef, TensorError> {
    let k = f.eigenvalue;
    if (k + lambda).abs() <= 1e-12 * lambda.abs().max(1.0) {
        return Err(TensorError::Resonance { k, lambda });
    }
    Ok(Arc::new(Scaled {
        s: k / (k + lambda),
        f: Arc::new(f.clone()),
    }))
}

/// How `v_h` is obtained.
#[derive(Clone)]
pub enum Vh {
    /// `h = f g` with `f` an eigenfunction.
    Conformal(EigenfunctionSpec),
    /// `v_h = tr h`, valid for `h` in the image of `div*`.
    TraceOfH,
    Explicit(FieldRef),
}

/// All pieces of `N h` at one point.
#[derive(Debug, Clone)]
pub struct NTerms {
    pub h: Tensor,
    pub nabla_h: Tensor,
    pub nabla2_h: Tensor,
    pub half_laplacian: Tensor,
    pub rm: Tensor,
    pub div_star_div: Tensor,
    pub half_hess_v: Tensor,
    pub mean_term: Tensor,
    pub total: Tensor,
    pub v: f64,
    pub laplacian_v: f64,
    pub div_div_h: f64,
    /// `Δv + λv - div div h`.
    pub vh_residual: f64,
}

/// `N h = ½Δh + Rm(h,·) + div* div h + ½ Hess v_h - (λ g / (n vol)) ∫ tr h dV`.
pub struct SecondVariation {
    lambda: f64,
    h: FieldRef,
    v: FieldRef,
    dh: FieldRef,
    ddh: FieldRef,
    ddv: FieldRef,
    mean_trace: f64,
}

impl SecondVariation {
    pub fn new(
        m: &ChartMetric,
        h: FieldRef,
        vh: Option<Vh>,
        rule: &QuadratureRule,
    ) -> Result<Self, TensorError> {
        let tr = Trace { h: h.clone() };
        let total = quadrature(m, rule, |c, x| Ok(tr.eval(c, x)?.value()))?;
        let vol = volume(m, rule)?;
        Self::with_mean_trace(m, h, vh, total / vol)
    }

    /// Skips the quadrature when the mean of `tr h` is known.
    pub fn with_mean_trace(
        m: &ChartMetric,
        h: FieldRef,
        vh: Option<Vh>,
        mean_trace: f64,
    ) -> Result<Self, TensorError> {
        expect_rank(&h, 2)?;
        let lambda = m.einstein_constant().ok_or(TensorError::NotEinstein)?;
        let v: FieldRef = match vh.ok_or(TensorError::MissingVh)? {
            Vh::Conformal(f) => v_for_conformal(&f, lambda)?,
            Vh::TraceOfH => Arc::new(Trace { h: h.clone() }),
            Vh::Explicit(v) => {
                expect_rank(&v, 0)?;
                v
            }
        };
        let ddh = nabla_k(&h, 2)?;
        let dh = nabla_k(&h, 1)?;
        let ddv = nabla_k(&v, 2)?;
        Ok(SecondVariation {
            lambda,
            h,
            v,
            dh,
            ddh,
            ddv,
            mean_trace,
        })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// `∫ tr h dV / vol`.
    pub fn mean_trace(&self) -> f64 {
        self.mean_trace
    }

    pub fn v(&self) -> &FieldRef {
        &self.v
    }

    pub fn h(&self) -> &FieldRef {
        &self.h
    }

    pub fn terms(&self, m: &ChartMetric, x: &[f64]) -> Result<NTerms, TensorError> {
        let n = m.dim();
        let g = m.metric(x)?;
        let ginv = m.inverse_metric(x)?;
        let h = self.h.eval(m, x)?;
        let nabla_h = self.dh.eval(m, x)?;
        let dd = self.ddh.eval(m, x)?;

        let lap = trace_first_two(&dd, &ginv, 2);
        // ∇_i (div h)_j = g^ab ∇_i ∇_a h_bj
        let mut ndiv = Tensor::zeros(n, 2);
        for i in 0..n {
            for j in 0..n {
                let mut v = 0.0;
                for a in 0..n {
                    for b in 0..n {
                        v += ginv[(a, b)] * dd.get(&[i, a, b, j]);
                    }
                }
                ndiv[(i, j)] = v;
            }
        }
        let div_div_h = trace(m, &ndiv, x)?;
        let div_star_div = ndiv.add(&ndiv.transpose()).scale(-0.5);
        let rm = rm_with(&m.riemann(x)?, &raise_both(&h, &ginv));

        let hv = self.ddv.eval(m, x)?;
        let v = self.v.eval(m, x)?.value();
        let laplacian_v = trace(m, &hv, x)?;
        let mean_term = g.scale(self.lambda * self.mean_trace / n as f64);

        let half_laplacian = lap.scale(0.5);
        let half_hess_v = hv.scale(0.5);
        let total = half_laplacian
            .add(&rm)
            .add(&div_star_div)
            .add(&half_hess_v)
            .sub(&mean_term);
        Ok(NTerms {
            h,
            nabla_h,
            nabla2_h: dd,
            half_laplacian,
            rm,
            div_star_div,
            half_hess_v,
            mean_term,
            total,
            v,
            laplacian_v,
            div_div_h,
            vh_residual: laplacian_v + self.lambda * v - div_div_h,
        })
    }

    pub fn apply(&self, m: &ChartMetric, x: &[f64]) -> Result<Tensor, TensorError> {
        Ok(self.terms(m, x)?.total)
    }
}
