//! Sparse multivariate polynomials in ambient coordinates.

use rand::Rng;

#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    nvars: usize,
    terms: Vec<(f64, Vec<u32>)>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(nvars: usize, c: f64) -> Self {
        Polynomial {
            nvars,
            terms: vec![(c, vec![0; nvars])],
        }
    }

    /// The coordinate function `X_i`.
    pub fn coordinate(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Polynomial {
            nvars,
            terms: vec![(1.0, e)],
        }
    }

    pub fn monomial(nvars: usize, coeff: f64, exps: &[u32]) -> Self {
        assert_eq!(exps.len(), nvars);
        Polynomial {
            nvars,
            terms: vec![(coeff, exps.to_vec())],
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(_, e)| e.iter().sum())
            .max()
            .unwrap_or(0)
    }

    /// `Re (X_a + i X_b)^l`, harmonic in the ambient space.
    pub fn harmonic(nvars: usize, l: u32, a: usize, b: usize) -> Self {
        assert!(a != b && a < nvars && b < nvars);
        let mut p = Polynomial::zero(nvars);
        let mut binom = 1.0;
        for j in 0..=l {
            if j % 2 == 0 {
                let sign = if (j / 2) % 2 == 0 { 1.0 } else { -1.0 };
                let mut e = vec![0; nvars];
                e[a] = l - j;
                e[b] = j;
                p.terms.push((sign * binom, e));
            }
            binom = binom * (l - j) as f64 / (j + 1) as f64;
        }
        p
    }

    /// Random coefficients in `[-1, 1]` on every monomial of degree ≤ `degree`.
    pub fn random<R: Rng>(nvars: usize, degree: u32, rng: &mut R) -> Self {
        fn rec(nvars: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if cur.len() == nvars {
                out.push(cur.clone());
                return;
            }
            for e in 0..=left {
                cur.push(e);
                rec(nvars, left - e, cur, out);
                cur.pop();
            }
        }
        let mut exps = Vec::new();
        rec(nvars, degree, &mut Vec::new(), &mut exps);
        Polynomial {
            nvars,
            terms: exps
                .into_iter()
                .map(|e| (rng.gen_range(-1.0..=1.0), e))
                .collect(),
        }
    }

    /// The same polynomial in a larger variable set, variable `i` renamed to `offset + i`.
    pub fn embed(&self, nvars: usize, offset: usize) -> Self {
        assert!(offset + self.nvars <= nvars);
        Polynomial {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(c, e)| {
                    let mut f = vec![0; nvars];
                    f[offset..offset + self.nvars].copy_from_slice(e);
                    (*c, f)
                })
                .collect(),
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(c, e)| (c * s, e.clone())).collect(),
        }
    }

    pub fn add(&self, other: &Polynomial) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Polynomial {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.nvars);
        self.terms
            .iter()
            .map(|(c, e)| {
                e.iter().zip(x).fold(
                    *c,
                    |acc, (&k, &xi)| if k == 0 { acc } else { acc * xi.powi(k as i32) },
                )
            })
            .sum()
    }

    pub fn derivative(&self, i: usize) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(_, e)| e[i] > 0)
                .map(|(c, e)| {
                    let mut f = e.clone();
                    f[i] -= 1;
                    (c * e[i] as f64, f)
                })
                .collect(),
        }
    }

    pub fn gradient(&self) -> Vec<Polynomial> {
        (0..self.nvars).map(|i| self.derivative(i)).collect()
    }

    /// Flat Laplacian of the ambient space.
    pub fn laplacian(&self) -> Self {
        let mut out = Polynomial::zero(self.nvars);
        for i in 0..self.nvars {
            out = out.add(&self.derivative(i).derivative(i));
        }
        out
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        let mut merged: std::collections::BTreeMap<Vec<u32>, f64> = Default::default();
        for (c, e) in &self.terms {
            *merged.entry(e.clone()).or_default() += c;
        }
        merged.values().all(|c| c.abs() <= tol)
    }
}
