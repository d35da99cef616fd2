//! Quadrature over the built-in global models.
//!
//! Spheres use Gauss-Gegenbauer nodes in the cosines of the polar angles and
//! the trapezoid rule in the azimuth, exact on ambient polynomials of
//! moderate degree; integrands are evaluated in whichever stereographic
//! chart keeps the node away from the projection pole.

use super::metric::{ChartMetric, SphereChart};
use super::TensorError;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadratureRule {
    /// Gauss nodes per polar angle.
    pub polar: usize,
    /// Trapezoid nodes per azimuth or torus circle.
    pub azimuth: usize,
}

impl Default for QuadratureRule {
    fn default() -> Self {
        QuadratureRule {
            polar: 16,
            azimuth: 24,
        }
    }
}

/// Gauss nodes and weights on `[-1, 1]` for the weight `(1 - t²)^((p-1)/2)`,
/// by Golub-Welsch. `p = 1` is Gauss-Legendre.
pub fn gauss_gegenbauer(n: usize, p: u32) -> (Vec<f64>, Vec<f64>) {
    if n == 0 {
        return (Vec::new(), Vec::new());
    }
    let a = p as f64 / 2.0;
    // ∫_0^π sin^p ψ dψ
    let mut mu0 = if p.is_multiple_of(2) { PI } else { 2.0 };
    for q in (2 + p % 2..=p).step_by(2) {
        mu0 *= (q as f64 - 1.0) / q as f64;
    }
    let mut jac = nalgebra::DMatrix::<f64>::zeros(n, n);
    for k in 1..n {
        let kf = k as f64;
        let beta = kf * (kf + 2.0 * a - 1.0) / (4.0 * (kf + a) * (kf + a - 1.0));
        jac[(k, k - 1)] = beta.sqrt();
        jac[(k - 1, k)] = beta.sqrt();
    }
    let eig = nalgebra::SymmetricEigen::new(jac);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| (eig.eigenvalues[i], mu0 * eig.eigenvectors[(0, i)].powi(2)))
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    // symmetrize against eigen-solver noise
    for i in 0..n / 2 {
        let (t, w) = (
            (pairs[n - 1 - i].0 - pairs[i].0) / 2.0,
            (pairs[i].1 + pairs[n - 1 - i].1) / 2.0,
        );
        pairs[i] = (-t, w);
        pairs[n - 1 - i] = (t, w);
    }
    if n % 2 == 1 {
        pairs[n / 2].0 = 0.0;
    }
    pairs.into_iter().unzip()
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    gauss_gegenbauer(n, 1)
}

/// Sum with `O(log n)` error growth and a fixed association order.
pub fn pairwise_sum(v: &[f64]) -> f64 {
    if v.len() <= 8 {
        return v.iter().sum();
    }
    let (a, b) = v.split_at(v.len() / 2);
    pairwise_sum(a) + pairwise_sum(b)
}

enum Atom {
    Flat(usize),
    Sphere(usize, f64),
}

fn atoms(m: &ChartMetric, out: &mut Vec<Atom>) -> Result<(), TensorError> {
    if let Some((a, b)) = m.factors() {
        atoms(a, out)?;
        return atoms(b, out);
    }
    if let Some((n, k, _)) = m.sphere() {
        out.push(Atom::Sphere(n, k));
        return Ok(());
    }
    if m.is_flat() {
        out.push(Atom::Flat(m.dim()));
        return Ok(());
    }
    Err(TensorError::UnsupportedManifold(m.domain_description()))
}

/// `(weight, ambient point)` pairs for one factor.
fn atom_nodes(atom: &Atom, rule: &QuadratureRule) -> Vec<(f64, Vec<f64>)> {
    let m = rule.azimuth.max(1);
    let dphi = TAU / m as f64;
    match *atom {
        Atom::Flat(n) => {
            let mut out = vec![(1.0, Vec::new())];
            for _ in 0..n {
                out = out
                    .into_iter()
                    .flat_map(|(w, p)| {
                        (0..m).map(move |j| {
                            let mut q = p.clone();
                            q.push(j as f64 * dphi);
                            (w * dphi, q)
                        })
                    })
                    .collect();
            }
            out
        }
        Atom::Sphere(n, k) => {
            let r = 1.0 / k.sqrt();
            // angles ψ_1..ψ_{n-1} in t = cos ψ, then φ
            let mut angles: Vec<(f64, Vec<f64>)> = vec![(r.powi(n as i32), Vec::new())];
            for a in 0..n - 1 {
                let (t, w) = gauss_gegenbauer(rule.polar, (n - 1 - a) as u32);
                angles = angles
                    .into_iter()
                    .flat_map(|(wt, p)| {
                        let (t, w) = (&t, &w);
                        (0..t.len()).map(move |i| {
                            let mut q = p.clone();
                            q.push(t[i].acos());
                            (wt * w[i], q)
                        })
                    })
                    .collect();
            }
            angles
                .into_iter()
                .flat_map(|(wt, p)| {
                    (0..m).map(move |j| {
                        let mut q = p.clone();
                        q.push((j as f64 + 0.5) * dphi);
                        (wt * dphi, polar_point(&q, r))
                    })
                })
                .collect()
        }
    }
}

fn polar_point(angles: &[f64], r: f64) -> Vec<f64> {
    let n = angles.len();
    let mut out = Vec::with_capacity(n + 1);
    let mut s = r;
    for &a in angles {
        out.push(s * a.cos());
        s *= a.sin();
    }
    out.push(s);
    out
}

struct Node {
    weight: f64,
    chart: usize,
    x: Vec<f64>,
}

fn build(
    m: &ChartMetric,
    rule: &QuadratureRule,
) -> Result<(Vec<ChartMetric>, Vec<Node>), TensorError> {
    let mut list = Vec::new();
    atoms(m, &mut list)?;
    let spheres = list
        .iter()
        .filter(|a| matches!(a, Atom::Sphere(..)))
        .count();
    let atlas: Vec<ChartMetric> = (0..1usize << spheres)
        .map(|bits| {
            let charts: Vec<SphereChart> = (0..spheres)
                .map(|s| {
                    if bits >> s & 1 == 1 {
                        SphereChart::ReflectedStereographic
                    } else {
                        SphereChart::Stereographic
                    }
                })
                .collect();
            m.rechart(&charts)
        })
        .collect();

    // (weight, ambient, chart bits)
    let mut combos: Vec<(f64, Vec<f64>, usize)> = vec![(1.0, Vec::new(), 0)];
    let mut sphere_index = 0;
    for atom in &list {
        let nodes = atom_nodes(atom, rule);
        let bit = match atom {
            Atom::Sphere(..) => {
                sphere_index += 1;
                Some(sphere_index - 1)
            }
            Atom::Flat(_) => None,
        };
        combos = combos
            .into_iter()
            .flat_map(|(w, p, bits)| {
                nodes.iter().map(move |(w2, q)| {
                    let mut pq = p.clone();
                    pq.extend_from_slice(q);
                    let north = bit.is_some() && q.last().copied().unwrap_or(0.0) > 0.0;
                    let bits = if north {
                        bits | 1 << bit.unwrap()
                    } else {
                        bits
                    };
                    (w * w2, pq, bits)
                })
            })
            .collect();
    }
    let nodes = combos
        .into_iter()
        .map(|(weight, ambient, chart)| {
            let x = atlas[chart]
                .chart_of(&ambient)
                .ok_or_else(|| TensorError::UnsupportedManifold(m.domain_description()))?;
            Ok(Node { weight, chart, x })
        })
        .collect::<Result<Vec<_>, TensorError>>()?;
    Ok((atlas, nodes))
}

/// `∫_M f dV`. The integrand receives the chart each node is expressed in,
/// so fields must be chart independent (ambient or metric-derived).
pub fn quadrature<F>(m: &ChartMetric, rule: &QuadratureRule, f: F) -> Result<f64, TensorError>
where
    F: Fn(&ChartMetric, &[f64]) -> Result<f64, TensorError> + Sync,
{
    let (atlas, nodes) = build(m, rule)?;
    let vals = nodes
        .par_iter()
        .map(|nd| Ok(nd.weight * f(&atlas[nd.chart], &nd.x)?))
        .collect::<Result<Vec<f64>, TensorError>>()?;
    Ok(pairwise_sum(&vals))
}

pub fn volume(m: &ChartMetric, rule: &QuadratureRule) -> Result<f64, TensorError> {
    let mut list = Vec::new();
    atoms(m, &mut list)?;
    Ok(list
        .iter()
        .map(|a| {
            let nodes = atom_nodes(a, rule);
            pairwise_sum(&nodes.iter().map(|(w, _)| *w).collect::<Vec<_>>())
        })
        .product())
}
