//! Root systems of the compact simple Lie algebras, in exact arithmetic.
//!
//! Weights are written in fundamental-weight coordinates with Bourbaki node
//! numbering. Casimir values are normalized so the adjoint representation
//! has Casimir 1.

use crate::rational::{int, Rational};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::HashSet;
use std::fmt;

/// Bound on the coefficient sum used by [`min_nontrivial_casimir`] when the
/// caller has no better choice.
pub const DEFAULT_COEFF_BOUND: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LieType {
    A,
    B,
    C,
    D,
    E6,
    E7,
    E8,
    F4,
    G2,
}

impl LieType {
    pub const ALL: [LieType; 9] = [
        LieType::A,
        LieType::B,
        LieType::C,
        LieType::D,
        LieType::E6,
        LieType::E7,
        LieType::E8,
        LieType::F4,
        LieType::G2,
    ];

    /// The rank of an exceptional type; `None` for the classical series.
    pub fn fixed_rank(self) -> Option<usize> {
        match self {
            LieType::E6 => Some(6),
            LieType::E7 => Some(7),
            LieType::E8 => Some(8),
            LieType::F4 => Some(4),
            LieType::G2 => Some(2),
            _ => None,
        }
    }

    pub fn min_rank(self) -> usize {
        match self {
            LieType::A => 1,
            LieType::B => 2,
            LieType::C => 3,
            LieType::D => 4,
            other => other.fixed_rank().unwrap(),
        }
    }

    /// Accepts `A`..`D`, `E6`, `E_6`, `F4`, `G2` (any case). A bare `E`, `F` or
    /// `G` is resolved with `rank`.
    pub fn parse(s: &str, rank: Option<usize>) -> Result<LieType, LieError> {
        let t: String = s
            .trim()
            .chars()
            .filter(|c| *c != '_')
            .collect::<String>()
            .to_ascii_uppercase();
        let ty = match t.as_str() {
            "A" => LieType::A,
            "B" => LieType::B,
            "C" => LieType::C,
            "D" => LieType::D,
            "E6" => LieType::E6,
            "E7" => LieType::E7,
            "E8" => LieType::E8,
            "F4" | "F" => LieType::F4,
            "G2" | "G" => LieType::G2,
            "E" => match rank {
                Some(6) => LieType::E6,
                Some(7) => LieType::E7,
                Some(8) => LieType::E8,
                Some(r) => {
                    return Err(LieError::InvalidRank {
                        lie_type: "E".into(),
                        rank: r,
                        constraint: "E exists only in ranks 6, 7, 8".into(),
                    })
                }
                None => return Err(LieError::UnknownType(s.to_string())),
            },
            _ => return Err(LieError::UnknownType(s.to_string())),
        };
        Ok(ty)
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LieType::A => "A",
            LieType::B => "B",
            LieType::C => "C",
            LieType::D => "D",
            LieType::E6 => "E6",
            LieType::E7 => "E7",
            LieType::E8 => "E8",
            LieType::F4 => "F4",
            LieType::G2 => "G2",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieError {
    #[error("rank {rank} is not valid for type {lie_type}: {constraint}")]
    InvalidRank {
        lie_type: String,
        rank: usize,
        constraint: String,
    },
    #[error("unknown Lie type {0:?}")]
    UnknownType(String),
    #[error("weight has {got} coefficients, root system has rank {expected}")]
    RankMismatch { expected: usize, got: usize },
    #[error("weight {0} is not dominant")]
    NonDominant(Weight),
    #[error("coefficient bound {0} is below 2")]
    BoundTooSmall(usize),
    #[error("Weyl dimension does not fit in 128 bits")]
    Overflow,
}

/// An integral weight in fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    /// The fundamental weight ω_i, with `i` counted from 1.
    pub fn fundamental(rank: usize, i: usize) -> Self {
        assert!(
            i >= 1 && i <= rank,
            "fundamental weight index {i} out of 1..={rank}"
        );
        let mut c = vec![0; rank];
        c[i - 1] = 1;
        Weight(c)
    }

    /// Builds a weight from `(index, coefficient)` terms, indices from 1.
    pub fn from_terms(rank: usize, terms: &[(usize, i64)]) -> Self {
        let mut c = vec![0; rank];
        for &(i, k) in terms {
            c[i - 1] += k;
        }
        Weight(c)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Parses a comma separated coefficient list such as `0,0,1`.
    pub fn parse(s: &str) -> Result<Weight, String> {
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| format!("bad weight coefficient {:?}", t.trim()))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Weight)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if c < 0 {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            if c.abs() != 1 {
                write!(f, "{}", c.abs())?;
            }
            write!(f, "ω{}", i + 1)?;
            first = false;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    pub lie_type: LieType,
    pub rank: usize,
    /// `cartan[i][j] = 2(α_i, α_j)/(α_i, α_i)`.
    pub cartan: Vec<Vec<i64>>,
    /// `(α_i, α_i)/2`, long roots normalized to 1.
    pub symmetrizer: Vec<Rational>,
    pub highest_root: Weight,
    pub weyl_vector: Weight,
    gram: Vec<Vec<Rational>>,
    positive_roots: Vec<Vec<i64>>,
    adjoint_raw: Rational,
}

impl Serialize for RootSystem {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Raw {
            lie_type: LieType,
            rank: usize,
        }
        Raw {
            lie_type: self.lie_type,
            rank: self.rank,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RootSystem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            lie_type: LieType,
            rank: usize,
        }
        let raw = Raw::deserialize(d)?;
        build_root_system(raw.lie_type, raw.rank).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lie_type.fixed_rank().is_some() {
            write!(f, "{}", self.lie_type)
        } else {
            write!(f, "{}{}", self.lie_type, self.rank)
        }
    }
}

fn rank_error(lie_type: LieType, rank: usize) -> LieError {
    let constraint = match lie_type {
        LieType::A => "A_n needs n ≥ 1".to_string(),
        LieType::B => "B_n needs n ≥ 2 (B1 is A1)".to_string(),
        LieType::C => "C_n needs n ≥ 3 (C2 is B2, use type B)".to_string(),
        LieType::D => "D_n needs n ≥ 4 (D3 is A3, use type A)".to_string(),
        other => format!("{other} has rank {}", other.fixed_rank().unwrap()),
    };
    LieError::InvalidRank {
        lie_type: lie_type.to_string(),
        rank,
        constraint,
    }
}

fn cartan_matrix(lie_type: LieType, n: usize) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let join = |a: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match lie_type {
        LieType::A | LieType::B | LieType::C => {
            for i in 0..n - 1 {
                join(&mut a, i, i + 1);
            }
            if lie_type == LieType::B {
                a[n - 1][n - 2] = -2;
            } else if lie_type == LieType::C {
                a[n - 2][n - 1] = -2;
            }
        }
        LieType::D => {
            for i in 0..n - 2 {
                join(&mut a, i, i + 1);
            }
            join(&mut a, n - 3, n - 1);
        }
        LieType::E6 | LieType::E7 | LieType::E8 => {
            join(&mut a, 0, 2);
            join(&mut a, 1, 3);
            for i in 2..n - 1 {
                join(&mut a, i, i + 1);
            }
        }
        LieType::F4 => {
            join(&mut a, 0, 1);
            join(&mut a, 1, 2);
            join(&mut a, 2, 3);
            a[2][1] = -2;
        }
        LieType::G2 => {
            a[0][1] = -3;
            a[1][0] = -1;
        }
    }
    a
}

fn symmetrizer(lie_type: LieType, n: usize) -> Vec<Rational> {
    let half = Rational::new(1.into(), 2.into());
    match lie_type {
        LieType::B => (0..n)
            .map(|i| if i == n - 1 { half.clone() } else { int(1) })
            .collect(),
        LieType::C => (0..n)
            .map(|i| if i == n - 1 { int(1) } else { half.clone() })
            .collect(),
        LieType::F4 => vec![int(1), int(1), half.clone(), half],
        LieType::G2 => vec![Rational::new(1.into(), 3.into()), int(1)],
        _ => vec![int(1); n],
    }
}

fn highest_root(lie_type: LieType, n: usize) -> Weight {
    let e = |terms: &[(usize, i64)]| Weight::from_terms(n, terms);
    match lie_type {
        LieType::A if n == 1 => e(&[(1, 2)]),
        LieType::A => e(&[(1, 1), (n, 1)]),
        LieType::B if n == 2 => e(&[(2, 2)]),
        LieType::B => e(&[(2, 1)]),
        LieType::C => e(&[(1, 2)]),
        LieType::D => e(&[(2, 1)]),
        LieType::E6 => e(&[(2, 1)]),
        LieType::E7 => e(&[(1, 1)]),
        LieType::E8 => e(&[(8, 1)]),
        LieType::F4 => e(&[(1, 1)]),
        LieType::G2 => e(&[(2, 1)]),
    }
}

fn invert(m: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| int((i == j) as i64)).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("Cartan matrices are invertible");
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let t = &f * &a[col][j];
                a[r][j] -= t;
                let t = &f * &inv[col][j];
                inv[r][j] -= t;
            }
        }
    }
    inv
}

/// Positive roots in simple-root coordinates, generated by root strings.
fn positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let simple: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| (i == j) as i64).collect())
        .collect();
    let mut all: Vec<Vec<i64>> = simple.clone();
    let mut seen: HashSet<Vec<i64>> = simple.iter().cloned().collect();
    let mut layer = simple;
    while !layer.is_empty() {
        let mut next = Vec::new();
        for beta in &layer {
            for i in 0..n {
                let pairing: i64 = (0..n).map(|j| cartan[i][j] * beta[j]).sum();
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if seen.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if seen.insert(up.clone()) {
                        next.push(up.clone());
                        all.push(up);
                    }
                }
            }
        }
        layer = next;
    }
    all
}

pub fn build_root_system(lie_type: LieType, rank: usize) -> Result<RootSystem, LieError> {
    let valid = match lie_type.fixed_rank() {
        Some(r) => rank == r,
        None => rank >= lie_type.min_rank(),
    };
    if !valid {
        return Err(rank_error(lie_type, rank));
    }
    let cartan = cartan_matrix(lie_type, rank);
    let sym = symmetrizer(lie_type, rank);
    let a: Vec<Vec<Rational>> = cartan
        .iter()
        .map(|row| row.iter().map(|&x| int(x)).collect())
        .collect();
    let a_inv = invert(&a);
    let gram: Vec<Vec<Rational>> = (0..rank)
        .map(|i| (0..rank).map(|j| &sym[i] * &a_inv[i][j]).collect())
        .collect();
    let mut rs = RootSystem {
        lie_type,
        rank,
        positive_roots: positive_roots(&cartan),
        cartan,
        symmetrizer: sym,
        highest_root: highest_root(lie_type, rank),
        weyl_vector: Weight(vec![1; rank]),
        gram,
        adjoint_raw: int(0),
    };
    rs.adjoint_raw = rs.raw_casimir(&rs.highest_root);
    Ok(rs)
}

impl RootSystem {
    /// The simple root α_i (from 1) in fundamental-weight coordinates.
    pub fn simple_root(&self, i: usize) -> Weight {
        Weight((0..self.rank).map(|r| self.cartan[r][i - 1]).collect())
    }

    /// Positive roots as coefficient vectors over the simple roots.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    /// Gram matrix of the fundamental weights at working scale.
    pub fn gram(&self) -> &[Vec<Rational>] {
        &self.gram
    }

    /// `dim g = rank + 2·|Φ⁺|`.
    pub fn algebra_dimension(&self) -> usize {
        self.rank + 2 * self.positive_roots.len()
    }

    fn check_rank(&self, w: &Weight) -> Result<(), LieError> {
        if w.rank() != self.rank {
            return Err(LieError::RankMismatch {
                expected: self.rank,
                got: w.rank(),
            });
        }
        Ok(())
    }

    fn form(&self, a: &[i64], b: &[i64]) -> Rational {
        let mut s = int(0);
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj != 0 {
                    s += &self.gram[i][j] * int(ai * bj);
                }
            }
        }
        s
    }

    fn raw_casimir(&self, w: &Weight) -> Rational {
        let shifted: Vec<i64> = w.0.iter().map(|c| c + 2).collect();
        self.form(&w.0, &shifted)
    }

    /// `⟨λ, α⟩` for a weight λ and a root α in simple-root coordinates.
    fn pair_root(&self, lambda: &[i64], root: &[i64]) -> Rational {
        let mut s = int(0);
        for i in 0..self.rank {
            if root[i] != 0 && lambda[i] != 0 {
                s += &self.symmetrizer[i] * int(root[i] * lambda[i]);
            }
        }
        s
    }
}

pub fn inner_product(rs: &RootSystem, a: &Weight, b: &Weight) -> Result<Rational, LieError> {
    rs.check_rank(a)?;
    rs.check_rank(b)?;
    Ok(rs.form(&a.0, &b.0))
}

/// `⟨Λ, Λ+2ρ⟩ / ⟨θ, θ+2ρ⟩`.
pub fn casimir(rs: &RootSystem, w: &Weight) -> Result<Rational, LieError> {
    rs.check_rank(w)?;
    if !w.is_dominant() {
        return Err(LieError::NonDominant(w.clone()));
    }
    Ok(rs.raw_casimir(w) / &rs.adjoint_raw)
}

/// All nonzero dominant weights with coefficient sum at most `max_sum`, in
/// lexicographic order.
pub fn dominant_weights(rank: usize, max_sum: usize) -> Vec<Weight> {
    fn rec(rank: usize, left: usize, cur: &mut Vec<i64>, out: &mut Vec<Weight>) {
        if cur.len() == rank {
            if cur.iter().any(|&c| c != 0) {
                out.push(Weight(cur.clone()));
            }
            return;
        }
        for c in 0..=left {
            cur.push(c as i64);
            rec(rank, left - c, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(rank, max_sum, &mut Vec::with_capacity(rank), &mut out);
    out
}

/// The nontrivial dominant weight of smallest Casimir among those with
/// coefficient sum ≤ `coeff_bound`. Ties go to the weight with mass on the
/// lowest-numbered nodes, i.e. the lexicographically greatest vector.
pub fn min_nontrivial_casimir(
    rs: &RootSystem,
    coeff_bound: usize,
) -> Result<(Weight, Rational), LieError> {
    if coeff_bound < 2 {
        return Err(LieError::BoundTooSmall(coeff_bound));
    }
    let mut best: Option<(Weight, Rational)> = None;
    for w in dominant_weights(rs.rank, coeff_bound) {
        let c = rs.raw_casimir(&w);
        let better = match &best {
            None => true,
            Some((bw, bc)) => c < *bc || (c == *bc && w > *bw),
        };
        if better {
            best = Some((w, c));
        }
    }
    let (w, c) = best.expect("rank ≥ 1 has a nonzero weight");
    Ok((w, c / &rs.adjoint_raw))
}

/// Weyl dimension formula `∏_{α>0} ⟨Λ+ρ, α⟩ / ⟨ρ, α⟩`.
pub fn weyl_dim(rs: &RootSystem, w: &Weight) -> Result<u128, LieError> {
    rs.check_rank(w)?;
    if !w.is_dominant() {
        return Err(LieError::NonDominant(w.clone()));
    }
    let shifted: Vec<i64> = w.0.iter().map(|c| c + 1).collect();
    let mut num = int(1);
    let mut den = int(1);
    for root in &rs.positive_roots {
        num *= rs.pair_root(&shifted, root);
        den *= rs.pair_root(&rs.weyl_vector.0, root);
    }
    let d = num / den;
    debug_assert!(d.is_integer());
    let d: BigInt = d.to_integer();
    d.to_u128().ok_or(LieError::Overflow)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn rs(t: LieType, r: usize) -> RootSystem {
        build_root_system(t, r).unwrap()
    }

    #[test]
    fn a2_cartan_and_highest_root() {
        let a2 = rs(LieType::A, 2);
        assert_eq!(a2.cartan, vec![vec![2, -1], vec![-1, 2]]);
        assert_eq!(a2.highest_root, Weight(vec![1, 1]));
    }

    #[test]
    fn short_root_rows_carry_the_large_entries() {
        let b3 = rs(LieType::B, 3);
        assert_eq!(b3.cartan[2][1], -2);
        assert_eq!(b3.cartan[1][2], -1);
        let c3 = rs(LieType::C, 3);
        assert_eq!(c3.cartan[1][2], -2);
        let g2 = rs(LieType::G2, 2);
        assert_eq!(g2.cartan, vec![vec![2, -3], vec![-1, 2]]);
    }

    #[test]
    fn rank_restrictions() {
        assert!(build_root_system(LieType::C, 2).is_err());
        assert!(build_root_system(LieType::D, 3).is_err());
        assert!(build_root_system(LieType::B, 1).is_err());
        assert!(build_root_system(LieType::A, 0).is_err());
        assert!(build_root_system(LieType::E6, 7).is_err());
        let msg = build_root_system(LieType::C, 2).unwrap_err().to_string();
        assert!(msg.contains("B2"), "{msg}");
    }

    #[test]
    fn positive_root_counts() {
        let cases = [
            (LieType::A, 4, 10),
            (LieType::B, 3, 9),
            (LieType::C, 4, 16),
            (LieType::D, 5, 20),
            (LieType::E6, 6, 36),
            (LieType::E7, 7, 63),
            (LieType::E8, 8, 120),
            (LieType::F4, 4, 24),
            (LieType::G2, 2, 6),
        ];
        for (t, r, n) in cases {
            assert_eq!(rs(t, r).positive_roots().len(), n, "{t}{r}");
        }
    }

    #[test]
    fn highest_root_table_matches_generated_roots() {
        for t in LieType::ALL {
            let ranks: Vec<usize> = match t.fixed_rank() {
                Some(r) => vec![r],
                None => (t.min_rank()..t.min_rank() + 4).collect(),
            };
            for r in ranks {
                let sys = rs(t, r);
                let top = sys
                    .positive_roots()
                    .iter()
                    .max_by_key(|v| v.iter().sum::<i64>())
                    .unwrap();
                let fund: Vec<i64> = (0..r)
                    .map(|i| (0..r).map(|j| sys.cartan[i][j] * top[j]).sum())
                    .collect();
                assert_eq!(Weight(fund), sys.highest_root, "{t}{r}");
                let th = &sys.highest_root;
                assert_eq!(inner_product(&sys, th, th).unwrap(), int(2), "{t}{r}");
            }
        }
    }

    #[test]
    fn a2_inner_product_ratio() {
        let a2 = rs(LieType::A, 2);
        let w1 = Weight::fundamental(2, 1);
        let a1 = a2.simple_root(1);
        let r = inner_product(&a2, &w1, &w1).unwrap() / inner_product(&a2, &a1, &a1).unwrap();
        assert_eq!(r, q(1, 3));
    }

    #[test]
    fn casimir_examples() {
        for n in 1..8 {
            let sys = rs(LieType::A, n);
            let c = casimir(&sys, &Weight::fundamental(n, 1)).unwrap();
            assert_eq!(c, q((n * (n + 2)) as i64, (2 * (n + 1) * (n + 1)) as i64));
        }
        let b3 = rs(LieType::B, 3);
        assert_eq!(casimir(&b3, &Weight::fundamental(3, 3)).unwrap(), q(21, 40));
        assert!(casimir(&b3, &Weight(vec![1, -1, 0])).is_err());
        assert!(casimir(&b3, &Weight(vec![1, 0])).is_err());
    }

    #[test]
    fn minimum_search_examples() {
        let (w, c) = min_nontrivial_casimir(&rs(LieType::A, 2), 2).unwrap();
        assert_eq!((w, c), (Weight(vec![1, 0]), q(4, 9)));
        let (w, c) = min_nontrivial_casimir(&rs(LieType::B, 3), 2).unwrap();
        assert_eq!((w, c), (Weight(vec![0, 0, 1]), q(21, 40)));
        assert_eq!(
            casimir(&rs(LieType::B, 3), &Weight(vec![1, 0, 0])).unwrap(),
            q(3, 5)
        );
        let (w, c) = min_nontrivial_casimir(&rs(LieType::C, 3), 2).unwrap();
        assert_eq!((w, c.clone()), (Weight(vec![1, 0, 0]), q(7, 16)));
        assert_eq!(c * int(4), q(7, 4));
        assert!(min_nontrivial_casimir(&rs(LieType::A, 2), 1).is_err());
    }

    #[test]
    fn weyl_dimensions() {
        assert_eq!(
            weyl_dim(&rs(LieType::A, 2), &Weight(vec![1, 0])).unwrap(),
            3
        );
        assert_eq!(
            weyl_dim(&rs(LieType::B, 3), &Weight(vec![0, 0, 1])).unwrap(),
            8
        );
        assert_eq!(
            weyl_dim(&rs(LieType::G2, 2), &Weight(vec![1, 0])).unwrap(),
            7
        );
        assert_eq!(weyl_dim(&rs(LieType::E8, 8), &Weight::zero(8)).unwrap(), 1);
        assert_eq!(
            weyl_dim(&rs(LieType::E6, 6), &Weight::fundamental(6, 1)).unwrap(),
            27
        );
        for t in LieType::ALL {
            let r = t.fixed_rank().unwrap_or(t.min_rank() + 1);
            let sys = rs(t, r);
            let d = weyl_dim(&sys, &sys.highest_root).unwrap();
            assert_eq!(d as usize, sys.algebra_dimension(), "{t}{r}");
        }
    }

    #[test]
    fn weight_display_and_parse() {
        assert_eq!(Weight(vec![1, 0, 0, 0, 0, 1]).to_string(), "ω1+ω6");
        assert_eq!(Weight(vec![2, 0]).to_string(), "2ω1");
        assert_eq!(Weight(vec![2, -1]).to_string(), "2ω1-ω2");
        assert_eq!(Weight::zero(3).to_string(), "0");
        assert_eq!(Weight::parse("0, 0,1").unwrap(), Weight(vec![0, 0, 1]));
        assert!(Weight::parse("1,x").is_err());
    }

    #[test]
    fn type_parsing() {
        assert_eq!(LieType::parse("e", Some(7)).unwrap(), LieType::E7);
        assert_eq!(LieType::parse("E_8", None).unwrap(), LieType::E8);
        assert_eq!(LieType::parse("g", None).unwrap(), LieType::G2);
        assert!(LieType::parse("E", Some(5)).is_err());
        assert!(LieType::parse("H", None).is_err());
    }

    #[test]
    fn serde_rebuilds_root_system() {
        let sys = rs(LieType::F4, 4);
        let json = serde_json::to_string(&sys).unwrap();
        assert_eq!(json, r#"{"lie_type":"F4","rank":4}"#);
        let back: RootSystem = serde_json::from_str(&json).unwrap();
        assert_eq!(back, sys);
        assert!(serde_json::from_str::<RootSystem>(r#"{"lie_type":"C","rank":2}"#).is_err());
    }
}
