//! Irreducible compact symmetric spaces: the rows of the two eigenvalue
//! tables, their parameterized families, and a JSON exchange format.

mod families;
mod names;

pub use families::{families, family, Family, TableKind};
pub use names::normalize_name;

use crate::classifier::{self, VerdictKind};
use crate::lie_algebra::{build_root_system, LieError, RootSystem, Weight};
use crate::rational::{self, format_rational, Rational};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

pub type Params = BTreeMap<String, u32>;

/// Environment variable naming an extra catalog file.
pub const CATALOG_ENV: &str = "NU_STABILITY_CATALOG";

/// Stability of the metric as a critical point of the Hilbert action.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HilbertStatus {
    Stable,
    /// Infinitesimally deformable: a zero mode of the Hilbert Hessian.
    Neutral,
    Unstable,
    Unknown,
}

impl HilbertStatus {
    pub fn short(self) -> &'static str {
        match self {
            HilbertStatus::Stable => "H.stable",
            HilbertStatus::Neutral => "i.d.",
            HilbertStatus::Unstable => "H.unstable",
            HilbertStatus::Unknown => "unknown",
        }
    }
}

impl fmt::Display for HilbertStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymmetricSpaceRecord {
    /// Id of the generating family. Free-form for records loaded from files.
    pub family: String,
    /// Cartan classification label, e.g. `A I` or `B_n`.
    pub label: String,
    pub name: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub aliases: Vec<String>,
    #[serde(default)]
    pub params: Params,
    pub is_group_type: bool,
    pub is_sphere: bool,
    pub dimension: u64,
    pub root_system: RootSystem,
    pub einstein_ratio_normalizer: u32,
    #[serde(default)]
    pub fns_weights: Vec<Weight>,
    #[serde(with = "rational::serde_str")]
    pub expected_fns_ratio: Rational,
    #[serde(with = "rational::serde_str")]
    pub min_l_ratio: Rational,
    pub is_hermitian: bool,
    pub hilbert_status: HilbertStatus,
    pub expected_verdict: VerdictKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl SymmetricSpaceRecord {
    pub fn params_text(&self) -> String {
        format_params(&self.params)
    }
}

pub fn format_params(p: &Params) -> String {
    p.iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("no family with label {0:?}")]
    UnknownFamily(String),
    #[error("{label} takes parameters {expected}, got {got}")]
    BadParams {
        label: String,
        expected: String,
        got: String,
    },
    #[error("{label} with {params} is out of range, need {constraint}")]
    OutOfRange {
        label: String,
        params: String,
        constraint: String,
    },
    #[error("{name:?} is a parameterized family, give {params}, e.g. {example:?}")]
    MissingParams {
        name: String,
        params: String,
        example: String,
    },
    #[error("unknown space {name:?}{}", suggest(.suggestions))]
    UnknownSpace {
        name: String,
        suggestions: Vec<String>,
    },
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("catalog {path}: {message}")]
    Load { path: String, message: String },
}

fn suggest(s: &[String]) -> String {
    if s.is_empty() {
        String::new()
    } else {
        format!("; nearest matches: {}", s.join(", "))
    }
}

/// Builds the record of `family` at `params`.
pub fn instantiate_family(
    family: &Family,
    params: &Params,
) -> Result<SymmetricSpaceRecord, CatalogError> {
    let expected: Vec<&str> = family.params.to_vec();
    let got: Vec<&str> = params.keys().map(String::as_str).collect();
    let mut sorted = expected.clone();
    sorted.sort_unstable();
    if sorted != got {
        return Err(CatalogError::BadParams {
            label: family.label.to_string(),
            expected: if expected.is_empty() {
                "none".into()
            } else {
                expected.join(", ")
            },
            got: if got.is_empty() {
                "none".into()
            } else {
                format_params(params)
            },
        });
    }
    if !(family.valid)(params) {
        return Err(CatalogError::OutOfRange {
            label: family.label.to_string(),
            params: format_params(params),
            constraint: family.constraint.to_string(),
        });
    }
    let (lie_type, rank) = (family.group)(params);
    Ok(SymmetricSpaceRecord {
        family: family.id.to_string(),
        label: family.label.to_string(),
        name: (family.name)(params),
        aliases: (family.aliases)(params),
        params: params.clone(),
        is_group_type: family.is_group(),
        is_sphere: family.is_sphere,
        dimension: (family.dimension)(params),
        root_system: build_root_system(lie_type, rank)?,
        einstein_ratio_normalizer: if family.is_group() { 4 } else { 2 },
        fns_weights: (family.weights)(params),
        expected_fns_ratio: (family.fns_ratio)(params),
        min_l_ratio: (family.min_l)(params),
        is_hermitian: (family.hermitian)(params),
        hilbert_status: family.hilbert,
        expected_verdict: family.verdict,
        note: family.note.map(str::to_string),
    })
}

/// Instantiates the family printed under `label` whose parameter names and
/// range fit `params`.
pub fn instantiate(label: &str, params: &Params) -> Result<SymmetricSpaceRecord, CatalogError> {
    let key = normalize_name(label);
    let same_label: Vec<&Family> = families()
        .iter()
        .filter(|f| normalize_name(f.label) == key)
        .collect();
    if same_label.is_empty() {
        return Err(CatalogError::UnknownFamily(label.to_string()));
    }
    instantiate_among(&same_label, label, params)
}

fn instantiate_among(
    candidates: &[&Family],
    label: &str,
    params: &Params,
) -> Result<SymmetricSpaceRecord, CatalogError> {
    let named: Vec<&Family> = candidates
        .iter()
        .copied()
        .filter(|f| {
            let mut a: Vec<&str> = f.params.to_vec();
            a.sort_unstable();
            a == params.keys().map(String::as_str).collect::<Vec<_>>()
        })
        .collect();
    if let Some(f) = named.iter().find(|f| (f.valid)(params)) {
        return instantiate_family(f, params);
    }
    match named.first() {
        Some(_) => Err(CatalogError::OutOfRange {
            label: label.to_string(),
            params: format_params(params),
            constraint: named
                .iter()
                .map(|f| f.constraint)
                .filter(|c| !c.is_empty())
                .collect::<Vec<_>>()
                .join(" or "),
        }),
        None => {
            let mut expected: Vec<String> = candidates
                .iter()
                .map(|f| {
                    if f.params.is_empty() {
                        "none".to_string()
                    } else {
                        f.params.join(", ")
                    }
                })
                .collect();
            expected.dedup();
            Err(CatalogError::BadParams {
                label: label.to_string(),
                expected: expected.join(" or "),
                got: format_params(params),
            })
        }
    }
}

/// Every non-sphere space of dimension at most `max_dim`, ordered by
/// dimension, then label, then name.
pub fn enumerate(max_dim: u64) -> Vec<SymmetricSpaceRecord> {
    let values: Vec<u32> = (0..=max_dim.min(u32::MAX as u64) as u32).collect();
    let mut out: Vec<SymmetricSpaceRecord> = families()
        .iter()
        .filter(|f| !f.is_sphere)
        .flat_map(|f| {
            f.sweep(&values)
                .into_iter()
                .filter(move |p| (f.dimension)(p) <= max_dim)
                .map(move |p| instantiate_family(f, &p).expect("swept parameters are valid"))
        })
        .collect();
    out.sort_by(|a, b| (a.dimension, &a.label, &a.name).cmp(&(b.dimension, &b.label, &b.name)));
    out
}

/// All records of every family with parameter values drawn from `values`.
/// An empty value set yields no records.
pub fn sweep(values: &[u32]) -> Vec<SymmetricSpaceRecord> {
    if values.is_empty() {
        return Vec::new();
    }
    families()
        .iter()
        .flat_map(|f| {
            f.sweep(values)
                .into_iter()
                .map(move |p| instantiate_family(f, &p).expect("swept parameters are valid"))
        })
        .collect()
}

/// One record per family at each of its representative parameters.
pub fn representative_records() -> Vec<SymmetricSpaceRecord> {
    families()
        .iter()
        .flat_map(|f| {
            f.representative_params().into_iter().map(move |p| {
                instantiate_family(f, &p).expect("representative parameters are valid")
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub record: String,
    pub check: String,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every record's invariants and that the classifier reproduces the
/// stored ratio and verdict. Problems are collected, not thrown.
pub fn validate_catalog(records: &[SymmetricSpaceRecord]) -> ValidationReport {
    let mut report = ValidationReport {
        checked: records.len(),
        violations: Vec::new(),
    };
    for r in records {
        let who = if r.params.is_empty() {
            r.name.clone()
        } else {
            format!("{} [{} {}]", r.name, r.label, r.params_text())
        };
        let mut bad = |check: &str, message: String| {
            report.violations.push(Violation {
                record: who.clone(),
                check: check.to_string(),
                message,
            })
        };
        let want_norm = if r.is_group_type { 4 } else { 2 };
        if r.einstein_ratio_normalizer != want_norm {
            bad(
                "normalizer",
                format!("{} instead of {want_norm}", r.einstein_ratio_normalizer),
            );
        }
        if r.dimension == 0 {
            bad("dimension", "dimension is zero".into());
        }
        if r.is_group_type && r.dimension != r.root_system.algebra_dimension() as u64 {
            bad(
                "dimension",
                format!(
                    "{} but the Lie algebra has dimension {}",
                    r.dimension,
                    r.root_system.algebra_dimension()
                ),
            );
        }
        if let Some(f) = family(&r.family) {
            if f.is_group() == r.is_group_type && (f.valid)(&r.params) {
                let d = (f.dimension)(&r.params);
                if d != r.dimension {
                    bad(
                        "dimension",
                        format!("{} but the family formula gives {d}", r.dimension),
                    );
                }
            } else if f.is_group() == r.is_group_type {
                bad(
                    "params",
                    format!("{} outside {}", r.params_text(), f.constraint),
                );
            }
        }
        for w in &r.fns_weights {
            if w.rank() != r.root_system.rank || !w.is_dominant() {
                bad(
                    "fns_weights",
                    format!("{w} is not a dominant weight of {}", r.root_system),
                );
            }
        }
        let two = rational::int(2);
        if !r.is_group_type && r.is_hermitian != (r.expected_fns_ratio == two) {
            bad(
                "hermitian",
                format!(
                    "hermitian = {} but expected ratio is {}",
                    r.is_hermitian,
                    format_rational(&r.expected_fns_ratio)
                ),
            );
        }
        if r.hilbert_status == HilbertStatus::Unknown && r.expected_fns_ratio >= two {
            bad(
                "hilbert_status",
                "unknown Hilbert status needs a conformal ratio below 2".into(),
            );
        }
        match classifier::mu_fns_ratio(r) {
            Ok(c) if c != r.expected_fns_ratio => bad(
                "expected_fns_ratio",
                format!(
                    "computed {} but record says {}",
                    format_rational(&c),
                    format_rational(&r.expected_fns_ratio)
                ),
            ),
            Ok(_) => {}
            Err(e) => bad("expected_fns_ratio", e.to_string()),
        }
        match classifier::row_verdict(r) {
            Ok(v) if v.kind != r.expected_verdict => bad(
                "expected_verdict",
                format!(
                    "classifier gives {} but record says {}",
                    v.kind.short(),
                    r.expected_verdict.short()
                ),
            ),
            Ok(_) => {}
            Err(e) => bad("expected_verdict", e.to_string()),
        }
    }
    report
}

/// Lookup over the built-in families plus any records loaded from files.
#[derive(Debug, Clone, Default)]
pub struct Catalog {
    extra: Vec<SymmetricSpaceRecord>,
}

impl Catalog {
    pub fn builtin() -> Self {
        Catalog::default()
    }

    /// Built-in families plus `records`, which take precedence on lookup.
    pub fn with_records(records: Vec<SymmetricSpaceRecord>) -> Self {
        Catalog { extra: records }
    }

    /// Reads a JSON array of records.
    pub fn load(path: &Path) -> Result<Self, CatalogError> {
        let err = |message: String| CatalogError::Load {
            path: path.display().to_string(),
            message,
        };
        let text = std::fs::read_to_string(path).map_err(|e| err(e.to_string()))?;
        let records = parse_records(&text).map_err(|e| err(e.to_string()))?;
        Ok(Catalog::with_records(records))
    }

    /// `path` if given, else the file named by [`CATALOG_ENV`], else built-in only.
    pub fn from_path_or_env(path: Option<&Path>) -> Result<Self, CatalogError> {
        match path {
            Some(p) => Catalog::load(p),
            None => match std::env::var_os(CATALOG_ENV) {
                Some(p) if !p.is_empty() => Catalog::load(Path::new(&p)),
                _ => Ok(Catalog::builtin()),
            },
        }
    }

    pub fn extra_records(&self) -> &[SymmetricSpaceRecord] {
        &self.extra
    }

    /// Resolves a space name; see [`names`] for the accepted grammar.
    pub fn lookup(&self, name: &str) -> Result<SymmetricSpaceRecord, CatalogError> {
        names::lookup(&self.extra, name)
    }
}

pub fn parse_records(json: &str) -> Result<Vec<SymmetricSpaceRecord>, serde_json::Error> {
    serde_json::from_str(json)
}

pub fn records_to_json(records: &[SymmetricSpaceRecord]) -> String {
    serde_json::to_string_pretty(records).expect("records serialize")
}

/// The JSON Schema describing catalog files.
pub const CATALOG_SCHEMA: &str = include_str!("../../schema/catalog.schema.json");
