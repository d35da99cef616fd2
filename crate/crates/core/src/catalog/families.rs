//! Row families of the two eigenvalue tables.

use super::{HilbertStatus, Params};
use crate::classifier::VerdictKind;
use crate::lie_algebra::{LieType, Weight};
use crate::rational::{int, q, Rational};
use std::sync::OnceLock;

use HilbertStatus::{Neutral, Stable, Unknown, Unstable};
use VerdictKind::{LinearlyStable as LS, LinearlyUnstable as LU, NeutrallyLinearlyStable as NLS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TableKind {
    /// Compact simple groups with a bi-invariant metric.
    Group,
    /// Irreducible quotients G/K of non-group type.
    Quotient,
}

/// One printed row of a table, possibly parameterized.
#[derive(Clone)]
pub struct Family {
    pub id: &'static str,
    pub label: &'static str,
    pub table: TableKind,
    pub generic_name: &'static str,
    /// Other generic spellings accepted by the name parser, e.g. `CP^p`.
    pub generic_aliases: &'static [&'static str],
    pub params: &'static [&'static str],
    /// The parameter range as printed, e.g. `p ≥ q ≥ 2`.
    pub constraint: &'static str,
    pub dim_formula: &'static str,
    pub fns_formula: &'static str,
    pub min_l_formula: &'static str,
    pub hilbert: HilbertStatus,
    pub verdict: VerdictKind,
    pub is_sphere: bool,
    pub note: Option<&'static str>,
    pub valid: fn(&Params) -> bool,
    pub dimension: fn(&Params) -> u64,
    pub name: fn(&Params) -> String,
    pub aliases: fn(&Params) -> Vec<String>,
    pub group: fn(&Params) -> (LieType, usize),
    /// Candidate spherical weights on the group's root system. Empty for group type.
    pub weights: fn(&Params) -> Vec<Weight>,
    pub hermitian: fn(&Params) -> bool,
    pub fns_ratio: fn(&Params) -> Rational,
    pub min_l: fn(&Params) -> Rational,
}

impl std::fmt::Debug for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Family")
            .field("id", &self.id)
            .finish_non_exhaustive()
    }
}

impl Family {
    pub fn is_group(&self) -> bool {
        self.table == TableKind::Group
    }

    /// Generic name with its open range, as the row appears in the table.
    pub fn row_title(&self) -> String {
        let open: Vec<&str> = self
            .constraint
            .split(", ")
            .filter(|c| c.contains('≥'))
            .collect();
        if open.is_empty() {
            self.generic_name.to_string()
        } else {
            format!("{} ({})", self.generic_name, open.join(", "))
        }
    }

    /// Every valid parameter assignment whose values all lie in `values`.
    pub fn sweep(&self, values: &[u32]) -> Vec<Params> {
        let mut out = vec![Params::new()];
        for name in self.params {
            let mut next = Vec::new();
            for p in &out {
                for &v in values {
                    let mut p = p.clone();
                    p.insert((*name).to_string(), v);
                    next.push(p);
                }
            }
            out = next;
        }
        out.retain(|p| (self.valid)(p));
        out
    }

    /// Smallest valid value of each parameter over `0..=bound`.
    pub fn minimal_params(&self, bound: u32) -> Params {
        let all: Vec<u32> = (0..=bound).collect();
        let valid = self.sweep(&all);
        let mut out = Params::new();
        for name in self.params {
            if let Some(m) = valid.iter().map(|p| p[*name]).min() {
                out.insert((*name).to_string(), m);
            }
        }
        out
    }

    /// Parameters drawn from `{m, m+1, m+2, 10}` per parameter, `m` its minimum.
    pub fn representative_params(&self) -> Vec<Params> {
        let mins = self.minimal_params(12);
        let mut values: Vec<u32> = Vec::new();
        for m in mins.values() {
            values.extend([*m, m + 1, m + 2]);
        }
        values.push(10);
        values.sort_unstable();
        values.dedup();
        self.sweep(&values)
            .into_iter()
            .filter(|p| {
                p.iter()
                    .all(|(k, v)| [mins[k], mins[k] + 1, mins[k] + 2, 10].contains(v))
            })
            .collect()
    }
}

fn v(p: &Params, k: &str) -> i64 {
    p.get(k).copied().unwrap_or(0) as i64
}

fn w(rank: usize, terms: &[(usize, i64)]) -> Weight {
    Weight::from_terms(rank, terms)
}

fn none(_: &Params) -> Vec<String> {
    Vec::new()
}

fn no(_: &Params) -> bool {
    false
}

fn yes(_: &Params) -> bool {
    true
}

fn no_weights(_: &Params) -> Vec<Weight> {
    Vec::new()
}

fn two(_: &Params) -> Rational {
    int(2)
}

/// Highest root of A_r with r ≥ 2.
fn theta_a(r: usize) -> Weight {
    w(r, &[(1, 1), (r, 1)])
}

macro_rules! fixed {
    ($x:expr) => {
        |_: &Params| $x
    };
}

#[allow(clippy::too_many_arguments)]
fn group(
    id: &'static str,
    label: &'static str,
    name: &'static str,
    params: &'static [&'static str],
    constraint: &'static str,
    dim_formula: &'static str,
    fns_formula: &'static str,
    min_l_formula: &'static str,
) -> Family {
    Family {
        id,
        label,
        table: TableKind::Group,
        generic_name: name,
        generic_aliases: &[],
        params,
        constraint,
        dim_formula,
        fns_formula,
        min_l_formula,
        hilbert: Stable,
        verdict: LS,
        is_sphere: false,
        note: None,
        valid: yes,
        dimension: fixed!(0),
        name: fixed!(String::new()),
        aliases: none,
        group: fixed!((LieType::A, 1)),
        weights: no_weights,
        hermitian: no,
        fns_ratio: two,
        min_l: two,
    }
}

#[allow(clippy::too_many_arguments)]
fn quotient(
    id: &'static str,
    label: &'static str,
    name: &'static str,
    params: &'static [&'static str],
    constraint: &'static str,
    dim_formula: &'static str,
    fns_formula: &'static str,
    min_l_formula: &'static str,
) -> Family {
    Family {
        table: TableKind::Quotient,
        ..group(
            id,
            label,
            name,
            params,
            constraint,
            dim_formula,
            fns_formula,
            min_l_formula,
        )
    }
}

fn build() -> Vec<Family> {
    vec![
        // Group type.
        Family {
            hilbert: Neutral,
            verdict: LU,
            valid: |p| v(p, "n") >= 2,
            dimension: |p| (v(p, "n") * (v(p, "n") + 2)) as u64,
            name: |p| format!("SU({})", v(p, "n") + 1),
            aliases: |p| match v(p, "n") {
                3 => vec!["Spin(6)".into()],
                _ => vec![],
            },
            group: |p| (LieType::A, v(p, "n") as usize),
            fns_ratio: |p| {
                let n = v(p, "n");
                q(2 * n * (n + 2), (n + 1) * (n + 1))
            },
            min_l: |p| {
                let n = v(p, "n");
                q(2 * n * (n + 2), (n + 1) * (n + 1))
            },
            ..group(
                "su",
                "A_n",
                "SU(n+1)",
                &["n"],
                "n ≥ 2",
                "n(n+2)",
                "2n(n+2)/(n+1)^2",
                "2n(n+2)/(n+1)^2",
            )
        },
        Family {
            hilbert: Unstable,
            verdict: LU,
            valid: |p| v(p, "n") == 2,
            dimension: fixed!(10),
            name: fixed!("Spin(5)".into()),
            aliases: |_| vec!["Sp(2)".into()],
            group: fixed!((LieType::B, 2)),
            fns_ratio: fixed!(q(5, 3)),
            min_l: fixed!(q(4, 3)),
            ..group(
                "spin5",
                "B_n",
                "Spin(5)",
                &["n"],
                "n = 2",
                "10",
                "5/3",
                "4/3",
            )
        },
        Family {
            valid: |p| v(p, "n") == 3,
            dimension: fixed!(21),
            name: fixed!("Spin(7)".into()),
            group: fixed!((LieType::B, 3)),
            fns_ratio: fixed!(q(21, 10)),
            min_l: fixed!(q(12, 5)),
            ..group(
                "spin7",
                "B_n",
                "Spin(7)",
                &["n"],
                "n = 3",
                "21",
                "21/10",
                "12/5",
            )
        },
        Family {
            valid: |p| v(p, "n") >= 4,
            dimension: |p| (v(p, "n") * (2 * v(p, "n") + 1)) as u64,
            name: |p| format!("Spin({})", 2 * v(p, "n") + 1),
            group: |p| (LieType::B, v(p, "n") as usize),
            fns_ratio: |p| q(4 * v(p, "n"), 2 * v(p, "n") - 1),
            min_l: |p| q(4 * v(p, "n"), 2 * v(p, "n") - 1),
            ..group(
                "spin_odd",
                "B_n",
                "Spin(2n+1)",
                &["n"],
                "n ≥ 4",
                "n(2n+1)",
                "4n/(2n-1)",
                "4n/(2n-1)",
            )
        },
        Family {
            hilbert: Unstable,
            verdict: LU,
            valid: |p| v(p, "n") >= 3,
            dimension: |p| (v(p, "n") * (2 * v(p, "n") + 1)) as u64,
            name: |p| format!("Sp({})", v(p, "n")),
            group: |p| (LieType::C, v(p, "n") as usize),
            fns_ratio: |p| q(2 * v(p, "n") + 1, v(p, "n") + 1),
            min_l: |p| q(4 * v(p, "n") - 1, 2 * (v(p, "n") + 1)),
            ..group(
                "sp",
                "C_n",
                "Sp(n)",
                &["n"],
                "n ≥ 3",
                "n(2n+1)",
                "(2n+1)/(n+1)",
                "(4n-1)/(2(n+1))",
            )
        },
        Family {
            valid: |p| v(p, "n") >= 4,
            dimension: |p| (v(p, "n") * (2 * v(p, "n") - 1)) as u64,
            name: |p| format!("Spin({})", 2 * v(p, "n")),
            group: |p| (LieType::D, v(p, "n") as usize),
            fns_ratio: |p| q(2 * v(p, "n") - 1, v(p, "n") - 1),
            min_l: |p| q(2 * v(p, "n") - 1, v(p, "n") - 1),
            ..group(
                "spin_even",
                "D_n",
                "Spin(2n)",
                &["n"],
                "n ≥ 4",
                "n(2n-1)",
                "(2n-1)/(n-1)",
                "(2n-1)/(n-1)",
            )
        },
        Family {
            dimension: fixed!(78),
            name: fixed!("E6".into()),
            group: fixed!((LieType::E6, 6)),
            fns_ratio: fixed!(q(26, 9)),
            min_l: fixed!(q(17, 6)),
            ..group("e6", "E_6", "E6", &[], "", "78", "26/9", "17/6")
        },
        Family {
            dimension: fixed!(133),
            name: fixed!("E7".into()),
            group: fixed!((LieType::E7, 7)),
            fns_ratio: fixed!(q(19, 6)),
            min_l: fixed!(int(3)),
            ..group("e7", "E_7", "E7", &[], "", "133", "19/6", "3")
        },
        Family {
            dimension: fixed!(248),
            name: fixed!("E8".into()),
            group: fixed!((LieType::E8, 8)),
            fns_ratio: fixed!(int(4)),
            min_l: fixed!(q(47, 15)),
            ..group("e8", "E_8", "E8", &[], "", "248", "4", "47/15")
        },
        Family {
            dimension: fixed!(52),
            name: fixed!("F4".into()),
            group: fixed!((LieType::F4, 4)),
            fns_ratio: fixed!(q(8, 3)),
            min_l: fixed!(q(8, 3)),
            ..group("f4", "F_4", "F4", &[], "", "52", "8/3", "8/3")
        },
        Family {
            verdict: NLS,
            dimension: fixed!(14),
            name: fixed!("G2".into()),
            group: fixed!((LieType::G2, 2)),
            ..group("g2", "G_2", "G2", &[], "", "14", "2", "2")
        },
        // Non-group type.
        Family {
            hilbert: Neutral,
            verdict: NLS,
            valid: |p| v(p, "n") >= 3,
            dimension: |p| ((v(p, "n") - 1) * (v(p, "n") + 2) / 2) as u64,
            name: |p| format!("SU({0})/SO({0})", v(p, "n")),
            aliases: |p| match v(p, "n") {
                4 => vec!["SO(6)/SO(3)×SO(3)".into()],
                _ => vec![],
            },
            group: |p| (LieType::A, v(p, "n") as usize - 1),
            weights: |p| {
                let r = v(p, "n") as usize - 1;
                vec![w(r, &[(1, 2)]), w(r, &[(r, 2)])]
            },
            fns_ratio: |p| {
                let n = v(p, "n");
                q(2 * (n - 1) * (n + 2), n * n)
            },
            ..quotient(
                "a1",
                "A I",
                "SU(n)/SO(n)",
                &["n"],
                "n ≥ 3",
                "(n-1)(n+2)/2",
                "2(n-1)(n+2)/n^2",
                "2",
            )
        },
        Family {
            is_sphere: true,
            valid: |p| v(p, "n") == 2,
            dimension: fixed!(5),
            name: fixed!("SU(4)/Sp(2)".into()),
            aliases: |_| vec!["S^5".into()],
            group: fixed!((LieType::A, 3)),
            weights: |_| vec![w(3, &[(2, 1)])],
            fns_ratio: fixed!(q(5, 4)),
            min_l: fixed!(int(3)),
            ..quotient(
                "a2_sphere",
                "A II",
                "SU(4)/Sp(2)",
                &["n"],
                "n = 2",
                "5",
                "5/4",
                "3",
            )
        },
        Family {
            hilbert: Neutral,
            verdict: LU,
            valid: |p| v(p, "n") >= 3,
            dimension: |p| ((v(p, "n") - 1) * (2 * v(p, "n") + 1)) as u64,
            name: |p| format!("SU({})/Sp({})", 2 * v(p, "n"), v(p, "n")),
            group: |p| (LieType::A, 2 * v(p, "n") as usize - 1),
            weights: |p| vec![w(2 * v(p, "n") as usize - 1, &[(2, 1)])],
            fns_ratio: |p| {
                let n = v(p, "n");
                q((2 * n + 1) * (n - 1), n * n)
            },
            ..quotient(
                "a2",
                "A II",
                "SU(2n)/Sp(n)",
                &["n"],
                "n ≥ 3",
                "(n-1)(2n+1)",
                "(2n+1)(n-1)/n^2",
                "2",
            )
        },
        Family {
            generic_aliases: &["U(p+1)/U(p)×U(1)"],
            verdict: NLS,
            valid: |p| v(p, "q") == 1 && v(p, "p") >= 2,
            dimension: |p| 2 * v(p, "p") as u64,
            name: |p| format!("CP^{}", v(p, "p")),
            aliases: |p| vec![format!("U({})/U({})×U(1)", v(p, "p") + 1, v(p, "p"))],
            group: |p| (LieType::A, v(p, "p") as usize),
            weights: |p| vec![theta_a(v(p, "p") as usize)],
            hermitian: yes,
            ..quotient(
                "cp",
                "A III",
                "CP^p",
                &["p", "q"],
                "q = 1, p ≥ 2",
                "2p",
                "2",
                "2",
            )
        },
        Family {
            hilbert: Neutral,
            verdict: NLS,
            note: Some("also admits neutrally stable deformations along TT tensors; not computed"),
            valid: |p| v(p, "p") >= v(p, "q") && v(p, "q") >= 2,
            dimension: |p| (2 * v(p, "p") * v(p, "q")) as u64,
            name: |p| {
                let (a, b) = (v(p, "p"), v(p, "q"));
                format!("U({})/U({})×U({})", a + b, a, b)
            },
            aliases: |p| match (v(p, "p"), v(p, "q")) {
                (2, 2) => vec!["SO(6)/SO(4)×SO(2)".into(), "Q^4".into()],
                _ => vec![],
            },
            group: |p| (LieType::A, (v(p, "p") + v(p, "q")) as usize - 1),
            weights: |p| vec![theta_a((v(p, "p") + v(p, "q")) as usize - 1)],
            hermitian: yes,
            ..quotient(
                "a3",
                "A III",
                "U(p+q)/U(p)×U(q)",
                &["p", "q"],
                "p ≥ q ≥ 2",
                "2pq",
                "2",
                "2",
            )
        },
        Family {
            generic_aliases: &["S^{2q}"],
            is_sphere: true,
            valid: |p| v(p, "q") >= 1,
            dimension: |p| 2 * v(p, "q") as u64,
            name: |p| format!("SO({})/SO({})", 2 * v(p, "q") + 1, 2 * v(p, "q")),
            aliases: |p| vec![format!("S^{}", 2 * v(p, "q"))],
            group: |p| match v(p, "q") {
                1 => (LieType::A, 1),
                k => (LieType::B, k as usize),
            },
            weights: |p| match v(p, "q") {
                1 => vec![w(1, &[(1, 2)])],
                k => vec![w(k as usize, &[(1, 1)])],
            },
            hermitian: |p| v(p, "q") == 1,
            fns_ratio: |p| q(2 * v(p, "q"), 2 * v(p, "q") - 1),
            min_l: |p| q(4 * v(p, "q") + 2, 2 * v(p, "q") - 1),
            ..quotient(
                "b_sphere",
                "B II",
                "SO(2q+1)/SO(2q)",
                &["q"],
                "q ≥ 1",
                "2q",
                "2q/(2q-1)",
                "(4q+2)/(2q-1)",
            )
        },
        Family {
            hilbert: Unstable,
            verdict: LU,
            dimension: fixed!(6),
            name: fixed!("SO(5)/SO(3)×SO(2)".into()),
            aliases: |_| vec!["Sp(2)/U(2)".into(), "Q^3".into()],
            group: fixed!((LieType::B, 2)),
            weights: |_| vec![w(2, &[(2, 2)])],
            hermitian: yes,
            min_l: fixed!(q(4, 3)),
            ..quotient("b_q3", "B I", "SO(5)/SO(3)×SO(2)", &[], "", "6", "2", "4/3")
        },
        Family {
            verdict: NLS,
            valid: |p| v(p, "p") >= 2,
            dimension: |p| (2 * (2 * v(p, "p") + 1)) as u64,
            name: |p| format!("SO({})/SO({})×SO(2)", 2 * v(p, "p") + 3, 2 * v(p, "p") + 1),
            group: |p| (LieType::B, v(p, "p") as usize + 1),
            weights: |p| vec![w(v(p, "p") as usize + 1, &[(2, 1)])],
            hermitian: yes,
            min_l: |p| q(8, 2 * v(p, "p") + 1),
            ..quotient(
                "b_hermitian",
                "B I",
                "SO(2p+3)/SO(2p+1)×SO(2)",
                &["p"],
                "p ≥ 2",
                "2(2p+1)",
                "2",
                "8/(2p+1)",
            )
        },
        Family {
            dimension: fixed!(12),
            name: fixed!("SO(7)/SO(3)×SO(4)".into()),
            group: fixed!((LieType::B, 3)),
            weights: |_| vec![w(3, &[(3, 2)]), w(3, &[(1, 2)])],
            fns_ratio: fixed!(q(12, 5)),
            min_l: fixed!(q(8, 5)),
            ..quotient(
                "b_so7",
                "B I",
                "SO(7)/SO(3)×SO(4)",
                &[],
                "",
                "12",
                "12/5",
                "8/5",
            )
        },
        Family {
            valid: |p| v(p, "q") >= 3,
            dimension: |p| 6 * v(p, "q") as u64,
            name: |p| format!("SO({})/SO(3)×SO({})", 2 * v(p, "q") + 3, 2 * v(p, "q")),
            group: |p| (LieType::B, v(p, "q") as usize + 1),
            weights: |p| {
                let r = v(p, "q") as usize + 1;
                vec![w(r, &[(1, 2)]), w(r, &[(3, 1)])]
            },
            fns_ratio: |p| q(4 * v(p, "q") + 6, 2 * v(p, "q") + 1),
            min_l: |p| q(8, 2 * v(p, "q") + 1),
            ..quotient(
                "b_three",
                "B I",
                "SO(2q+3)/SO(3)×SO(2q)",
                &["q"],
                "q ≥ 3",
                "6q",
                "(4q+6)/(2q+1)",
                "8/(2q+1)",
            )
        },
        Family {
            valid: |p| v(p, "p") >= 2 && v(p, "q") >= 2,
            dimension: |p| (2 * v(p, "q") * (2 * v(p, "p") + 1)) as u64,
            name: |p| {
                let (a, b) = (v(p, "p"), v(p, "q"));
                format!("SO({})/SO({})×SO({})", 2 * a + 2 * b + 1, 2 * a + 1, 2 * b)
            },
            group: |p| (LieType::B, (v(p, "p") + v(p, "q")) as usize),
            weights: |p| vec![w((v(p, "p") + v(p, "q")) as usize, &[(1, 2)])],
            fns_ratio: |p| {
                let s = v(p, "p") + v(p, "q");
                q(4 * s + 2, 2 * s - 1)
            },
            min_l: |p| q(8, 2 * (v(p, "p") + v(p, "q")) - 1),
            ..quotient(
                "b_general",
                "B I",
                "SO(2p+2q+1)/SO(2p+1)×SO(2q)",
                &["p", "q"],
                "p ≥ 2, q ≥ 2",
                "2q(2p+1)",
                "(4p+4q+2)/(2p+2q-1)",
                "8/(2p+2q-1)",
            )
        },
        Family {
            hilbert: Unstable,
            verdict: LU,
            valid: |p| v(p, "n") >= 3,
            dimension: |p| (v(p, "n") * (v(p, "n") + 1)) as u64,
            name: |p| format!("Sp({0})/U({0})", v(p, "n")),
            group: |p| (LieType::C, v(p, "n") as usize),
            weights: |p| vec![w(v(p, "n") as usize, &[(1, 2)])],
            hermitian: yes,
            min_l: |p| q(2 * v(p, "n"), v(p, "n") + 1),
            ..quotient(
                "c1",
                "C I",
                "Sp(n)/U(n)",
                &["n"],
                "n ≥ 3",
                "n(n+1)",
                "2",
                "2n/(n+1)",
            )
        },
        Family {
            is_sphere: true,
            valid: |p| v(p, "p") == 1 && v(p, "q") == 1,
            dimension: fixed!(4),
            name: fixed!("Sp(2)/Sp(1)×Sp(1)".into()),
            aliases: |_| vec!["S^4".into()],
            group: fixed!((LieType::B, 2)),
            weights: |_| vec![w(2, &[(1, 1)])],
            fns_ratio: fixed!(q(4, 3)),
            min_l: fixed!(q(10, 3)),
            ..quotient(
                "c2_sphere",
                "C II",
                "Sp(2)/Sp(1)×Sp(1)",
                &["p", "q"],
                "p = q = 1",
                "4",
                "4/3",
                "10/3",
            )
        },
        Family {
            hilbert: Unknown,
            verdict: LU,
            valid: |p| v(p, "p") == 2 && v(p, "q") == 1,
            dimension: fixed!(8),
            name: fixed!("Sp(3)/Sp(2)×Sp(1)".into()),
            aliases: |_| vec!["HP^2".into(), "Sp(3)/Sp(1)×Sp(2)".into()],
            group: fixed!((LieType::C, 3)),
            weights: |_| vec![w(3, &[(2, 1)])],
            fns_ratio: fixed!(q(3, 2)),
            min_l: fixed!(q(3, 2)),
            ..quotient(
                "c2_hp2",
                "C II",
                "Sp(3)/Sp(2)×Sp(1)",
                &["p", "q"],
                "p = 2, q = 1",
                "8",
                "3/2",
                "3/2",
            )
        },
        Family {
            generic_aliases: &["HP^p"],
            verdict: LU,
            valid: |p| v(p, "p") >= 3 && v(p, "q") == 1,
            dimension: |p| 4 * v(p, "p") as u64,
            name: |p| format!("Sp({})/Sp({})×Sp(1)", v(p, "p") + 1, v(p, "p")),
            aliases: |p| vec![format!("HP^{}", v(p, "p"))],
            group: |p| (LieType::C, v(p, "p") as usize + 1),
            weights: |p| vec![w(v(p, "p") as usize + 1, &[(2, 1)])],
            fns_ratio: |p| q(2 * (v(p, "p") + 1), v(p, "p") + 2),
            min_l: |p| q(2 * (v(p, "p") + 1), v(p, "p") + 2),
            ..quotient(
                "c2_hp",
                "C II",
                "Sp(p+1)/Sp(p)×Sp(1)",
                &["p", "q"],
                "q = 1, p ≥ 3",
                "4p",
                "2(p+1)/(p+2)",
                "2(p+1)/(p+2)",
            )
        },
        Family {
            hilbert: Unknown,
            verdict: LU,
            valid: |p| v(p, "p") >= v(p, "q") && v(p, "q") >= 2,
            dimension: |p| (4 * v(p, "p") * v(p, "q")) as u64,
            name: |p| {
                let (a, b) = (v(p, "p"), v(p, "q"));
                format!("Sp({})/Sp({})×Sp({})", a + b, a, b)
            },
            group: |p| (LieType::C, (v(p, "p") + v(p, "q")) as usize),
            weights: |p| vec![w((v(p, "p") + v(p, "q")) as usize, &[(2, 1)])],
            fns_ratio: |p| {
                let s = v(p, "p") + v(p, "q");
                q(2 * s, s + 1)
            },
            min_l: |p| {
                let s = v(p, "p") + v(p, "q");
                q(2 * s, s + 1)
            },
            ..quotient(
                "c2",
                "C II",
                "Sp(p+q)/Sp(p)×Sp(q)",
                &["p", "q"],
                "p ≥ q ≥ 2",
                "4pq",
                "2(p+q)/(p+q+1)",
                "2(p+q)/(p+q+1)",
            )
        },
        Family {
            generic_aliases: &["S^{2p+1}"],
            is_sphere: true,
            valid: |p| v(p, "p") >= 3,
            dimension: |p| (2 * v(p, "p") + 1) as u64,
            name: |p| format!("SO({})/SO({})", 2 * v(p, "p") + 2, 2 * v(p, "p") + 1),
            aliases: |p| vec![format!("S^{}", 2 * v(p, "p") + 1)],
            group: |p| (LieType::D, v(p, "p") as usize + 1),
            weights: |p| vec![w(v(p, "p") as usize + 1, &[(1, 1)])],
            fns_ratio: |p| q(2 * v(p, "p") + 1, 2 * v(p, "p")),
            min_l: |p| q(2 * (v(p, "p") + 1), v(p, "p")),
            ..quotient(
                "d_sphere",
                "D II",
                "SO(2p+2)/SO(2p+1)",
                &["p"],
                "p ≥ 3",
                "2p+1",
                "(2p+1)/(2p)",
                "2(p+1)/p",
            )
        },
        Family {
            dimension: fixed!(15),
            name: fixed!("SO(8)/SO(5)×SO(3)".into()),
            group: fixed!((LieType::D, 4)),
            weights: |_| vec![w(4, &[(3, 1), (4, 1)]), w(4, &[(1, 2)])],
            fns_ratio: fixed!(q(5, 2)),
            min_l: fixed!(q(5, 2)),
            ..quotient(
                "d_so8",
                "D I",
                "SO(8)/SO(5)×SO(3)",
                &[],
                "",
                "15",
                "5/2",
                "5/2",
            )
        },
        Family {
            verdict: NLS,
            valid: |p| v(p, "q") >= 3,
            dimension: |p| 4 * v(p, "q") as u64,
            name: |p| format!("SO({})/SO({})×SO(2)", 2 * v(p, "q") + 2, 2 * v(p, "q")),
            group: |p| (LieType::D, v(p, "q") as usize + 1),
            weights: |p| vec![w(v(p, "q") as usize + 1, &[(2, 1)])],
            hermitian: yes,
            ..quotient(
                "d_hermitian",
                "D I",
                "SO(2q+2)/SO(2q)×SO(2)",
                &["q"],
                "q ≥ 3",
                "4q",
                "2",
                "2",
            )
        },
        Family {
            valid: |p| v(p, "q") >= 4,
            dimension: |p| (v(p, "q") * v(p, "q")) as u64,
            name: |p| format!("SO({})/SO({1})×SO({1})", 2 * v(p, "q"), v(p, "q")),
            group: |p| (LieType::D, v(p, "q") as usize),
            weights: |p| vec![w(v(p, "q") as usize, &[(1, 2)])],
            fns_ratio: |p| q(2 * v(p, "q"), v(p, "q") - 1),
            min_l: |p| q(2 * v(p, "q"), v(p, "q") - 1),
            ..quotient(
                "d_equal",
                "D I",
                "SO(2q)/SO(q)×SO(q)",
                &["q"],
                "q ≥ 4",
                "q^2",
                "2q/(q-1)",
                "2q/(q-1)",
            )
        },
        Family {
            valid: |p| v(p, "q") >= 4,
            dimension: |p| (v(p, "q") * (v(p, "q") + 2)) as u64,
            name: |p| {
                let k = v(p, "q");
                format!("SO({})/SO({})×SO({})", 2 * k + 2, k + 2, k)
            },
            group: |p| (LieType::D, v(p, "q") as usize + 1),
            weights: |p| vec![w(v(p, "q") as usize + 1, &[(1, 2)])],
            fns_ratio: |p| q(2 * v(p, "q") + 2, v(p, "q")),
            min_l: |p| q(2 * v(p, "q") + 2, v(p, "q")),
            ..quotient(
                "d_near",
                "D I",
                "SO(2q+2)/SO(q+2)×SO(q)",
                &["q"],
                "q ≥ 4",
                "q(q+2)",
                "(2q+2)/q",
                "(2q+2)/q",
            )
        },
        Family {
            valid: |p| v(p, "n") - 2 >= v(p, "q") && v(p, "q") >= 3,
            dimension: |p| (v(p, "q") * (2 * v(p, "n") - v(p, "q"))) as u64,
            name: |p| {
                let (n, k) = (v(p, "n"), v(p, "q"));
                format!("SO({})/SO({})×SO({})", 2 * n, 2 * n - k, k)
            },
            group: |p| (LieType::D, v(p, "n") as usize),
            weights: |p| vec![w(v(p, "n") as usize, &[(1, 2)])],
            fns_ratio: |p| q(2 * v(p, "n"), v(p, "n") - 1),
            min_l: |p| q(2 * v(p, "n"), v(p, "n") - 1),
            ..quotient(
                "d_general",
                "D I",
                "SO(2n)/SO(2n-q)×SO(q)",
                &["n", "q"],
                "n-2 ≥ q ≥ 3",
                "q(2n-q)",
                "2n/(n-1)",
                "2n/(n-1)",
            )
        },
        Family {
            verdict: NLS,
            valid: |p| v(p, "n") >= 5,
            dimension: |p| (v(p, "n") * (v(p, "n") - 1)) as u64,
            name: |p| format!("SO({})/U({})", 2 * v(p, "n"), v(p, "n")),
            group: |p| (LieType::D, v(p, "n") as usize),
            weights: |p| vec![w(v(p, "n") as usize, &[(2, 1)])],
            hermitian: yes,
            ..quotient(
                "d3",
                "D III",
                "SO(2n)/U(n)",
                &["n"],
                "n ≥ 5",
                "n(n-1)",
                "2",
                "2",
            )
        },
        Family {
            dimension: fixed!(42),
            name: fixed!("E6/Sp(4)".into()),
            aliases: |_| vec!["E6/[Sp(4)/{±I}]".into()],
            group: fixed!((LieType::E6, 6)),
            weights: |_| vec![w(6, &[(1, 2)])],
            fns_ratio: fixed!(q(28, 9)),
            min_l: fixed!(int(3)),
            ..quotient("ei", "E I", "E6/Sp(4)", &[], "", "42", "28/9", "3")
        },
        Family {
            dimension: fixed!(40),
            name: fixed!("E6/SU(2)·SU(6)".into()),
            group: fixed!((LieType::E6, 6)),
            weights: |_| vec![w(6, &[(1, 1), (6, 1)])],
            fns_ratio: fixed!(int(3)),
            min_l: fixed!(int(3)),
            ..quotient("eii", "E II", "E6/SU(2)·SU(6)", &[], "", "40", "3", "3")
        },
        Family {
            verdict: NLS,
            dimension: fixed!(32),
            name: fixed!("E6/SO(10)·SO(2)".into()),
            group: fixed!((LieType::E6, 6)),
            weights: |_| vec![w(6, &[(2, 1)])],
            hermitian: yes,
            ..quotient("eiii", "E III", "E6/SO(10)·SO(2)", &[], "", "32", "2", "2")
        },
        Family {
            hilbert: Neutral,
            verdict: LU,
            dimension: fixed!(26),
            name: fixed!("E6/F4".into()),
            group: fixed!((LieType::E6, 6)),
            weights: |_| vec![w(6, &[(1, 1)])],
            fns_ratio: fixed!(q(13, 9)),
            min_l: fixed!(q(13, 9)),
            ..quotient("eiv", "E IV", "E6/F4", &[], "", "26", "13/9", "13/9")
        },
        Family {
            dimension: fixed!(70),
            name: fixed!("E7/SU(8)".into()),
            aliases: |_| vec!["E7/[SU(8)/{±I}]".into()],
            group: fixed!((LieType::E7, 7)),
            weights: |_| vec![w(7, &[(7, 2)])],
            fns_ratio: fixed!(q(10, 3)),
            min_l: fixed!(q(28, 9)),
            ..quotient("ev", "E V", "E7/SU(8)", &[], "", "70", "10/3", "28/9")
        },
        Family {
            dimension: fixed!(64),
            name: fixed!("E7/SO'(12)·SU(2)".into()),
            group: fixed!((LieType::E7, 7)),
            weights: |_| vec![w(7, &[(6, 1)])],
            fns_ratio: fixed!(q(28, 9)),
            min_l: fixed!(q(28, 9)),
            ..quotient(
                "evi",
                "E VI",
                "E7/SO'(12)·SU(2)",
                &[],
                "",
                "64",
                "28/9",
                "28/9",
            )
        },
        Family {
            verdict: NLS,
            dimension: fixed!(54),
            name: fixed!("E7/E6·SO(2)".into()),
            group: fixed!((LieType::E7, 7)),
            weights: |_| vec![w(7, &[(1, 1)])],
            hermitian: yes,
            ..quotient("evii", "E VII", "E7/E6·SO(2)", &[], "", "54", "2", "2")
        },
        Family {
            dimension: fixed!(128),
            name: fixed!("E8/SO'(16)".into()),
            group: fixed!((LieType::E8, 8)),
            weights: |_| vec![w(8, &[(8, 2)])],
            fns_ratio: fixed!(q(62, 15)),
            min_l: fixed!(q(16, 5)),
            ..quotient(
                "eviii",
                "E VIII",
                "E8/SO'(16)",
                &[],
                "",
                "128",
                "62/15",
                "16/5",
            )
        },
        Family {
            dimension: fixed!(112),
            name: fixed!("E8/E7·SU(2)".into()),
            group: fixed!((LieType::E8, 8)),
            weights: |_| vec![w(8, &[(1, 1)])],
            fns_ratio: fixed!(q(16, 5)),
            min_l: fixed!(q(16, 5)),
            ..quotient("eix", "E IX", "E8/E7·SU(2)", &[], "", "112", "16/5", "16/5")
        },
        Family {
            dimension: fixed!(28),
            name: fixed!("F4/Sp(3)·SU(2)".into()),
            group: fixed!((LieType::F4, 4)),
            weights: |_| vec![w(4, &[(4, 2)])],
            fns_ratio: fixed!(q(26, 9)),
            min_l: fixed!(q(26, 9)),
            ..quotient("fi", "F I", "F4/Sp(3)·SU(2)", &[], "", "28", "26/9", "26/9")
        },
        Family {
            hilbert: Unknown,
            verdict: LU,
            dimension: fixed!(16),
            name: fixed!("F4/Spin(9)".into()),
            aliases: |_| vec!["OP^2".into()],
            group: fixed!((LieType::F4, 4)),
            weights: |_| vec![w(4, &[(4, 1)])],
            fns_ratio: fixed!(q(4, 3)),
            min_l: fixed!(q(4, 3)),
            ..quotient("fii", "F II", "F4/Spin(9)", &[], "", "16", "4/3", "4/3")
        },
        Family {
            dimension: fixed!(8),
            name: fixed!("G2/SO(4)".into()),
            group: fixed!((LieType::G2, 2)),
            weights: |_| vec![w(2, &[(1, 2)])],
            fns_ratio: fixed!(q(7, 3)),
            min_l: fixed!(q(7, 3)),
            ..quotient("g", "G", "G2/SO(4)", &[], "", "8", "7/3", "7/3")
        },
    ]
}

/// All families, group type first, in table order.
pub fn families() -> &'static [Family] {
    static FAMILIES: OnceLock<Vec<Family>> = OnceLock::new();
    FAMILIES.get_or_init(build)
}

pub fn family(id: &str) -> Option<&'static Family> {
    families().iter().find(|f| f.id == id)
}
