//! The linear-stability decision procedure and table rendering.

use crate::catalog::{
    families, instantiate_family, Family, HilbertStatus, SymmetricSpaceRecord, TableKind,
};
use crate::lie_algebra::{casimir, min_nontrivial_casimir, LieError, DEFAULT_COEFF_BOUND};
use crate::rational::{self, format_rational, Rational};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VerdictKind {
    LinearlyStable,
    NeutrallyLinearlyStable,
    LinearlyUnstable,
    Undetermined,
}

impl VerdictKind {
    /// The abbreviation used in the tables.
    pub fn short(self) -> &'static str {
        match self {
            VerdictKind::LinearlyStable => "l.stable",
            VerdictKind::NeutrallyLinearlyStable => "n.l.stable",
            VerdictKind::LinearlyUnstable => "l.unstable",
            VerdictKind::Undetermined => "undetermined",
        }
    }
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    ConformalUnstable,
    HilbertUnstable,
    HermitianNeutral,
    IDeformableNeutral,
    StrictlyStable,
    SphereExcluded,
    /// Riemannian product of Einstein factors.
    ProductUnstable,
    Undetermined,
}

impl Rule {
    pub fn kind(self) -> VerdictKind {
        match self {
            Rule::ConformalUnstable | Rule::HilbertUnstable | Rule::ProductUnstable => {
                VerdictKind::LinearlyUnstable
            }
            Rule::HermitianNeutral | Rule::IDeformableNeutral => {
                VerdictKind::NeutrallyLinearlyStable
            }
            Rule::StrictlyStable | Rule::SphereExcluded => VerdictKind::LinearlyStable,
            Rule::Undetermined => VerdictKind::Undetermined,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityVerdict {
    pub space: String,
    pub kind: VerdictKind,
    /// `−λ⁻¹μ_fns`; absent for products.
    #[serde(
        with = "opt_rational",
        skip_serializing_if = "Option::is_none",
        default
    )]
    pub conformal_ratio: Option<Rational>,
    #[serde(rename = "rule")]
    pub rule_fired: Rule,
    pub evidence: Vec<String>,
}

mod opt_rational {
    use crate::rational::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_str(&format_rational(r)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| parse_rational(&s).map_err(serde::de::Error::custom))
            .transpose()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("the theorem excludes the standard sphere ({0})")]
    Sphere(String),
    #[error("{0} has no spherical weights")]
    NoWeights(String),
    #[error("a product needs at least 2 factors, got {0}")]
    TooFewFactors(usize),
    #[error(transparent)]
    Lie(#[from] LieError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ConformalVerdict {
    Unstable,
    Neutral,
    Stable,
}

/// The ratio `−λ⁻¹μ_fns` from Casimir values: the normalizer times the
/// smallest Casimir among the spherical weights, or among all nontrivial
/// representations for group type.
pub fn mu_fns_ratio(record: &SymmetricSpaceRecord) -> Result<Rational, ClassifyError> {
    let norm = rational::int(record.einstein_ratio_normalizer as i64);
    let rs = &record.root_system;
    if record.is_group_type {
        let (_, c) = min_nontrivial_casimir(rs, DEFAULT_COEFF_BOUND)?;
        return Ok(norm * c);
    }
    let mut best: Option<Rational> = None;
    for w in &record.fns_weights {
        let c = casimir(rs, w)?;
        if best.as_ref().is_none_or(|b| c < *b) {
            best = Some(c);
        }
    }
    best.map(|c| norm * c)
        .ok_or_else(|| ClassifyError::NoWeights(record.name.clone()))
}

pub fn conformal_verdict(
    ratio: &Rational,
    is_sphere: bool,
) -> Result<ConformalVerdict, ClassifyError> {
    if is_sphere {
        return Err(ClassifyError::Sphere("sphere".into()));
    }
    Ok(match ratio.cmp(&rational::int(2)) {
        Ordering::Less => ConformalVerdict::Unstable,
        Ordering::Equal => ConformalVerdict::Neutral,
        Ordering::Greater => ConformalVerdict::Stable,
    })
}

fn ratio_evidence(record: &SymmetricSpaceRecord, ratio: &Rational) -> String {
    if record.is_group_type {
        let (w, _) = min_nontrivial_casimir(&record.root_system, DEFAULT_COEFF_BOUND)
            .expect("checked by mu_fns_ratio");
        format!(
            "-μ_fns/λ = {} from the nontrivial representation {} of {} of least Casimir, normalizer {}",
            format_rational(ratio),
            w,
            record.root_system,
            record.einstein_ratio_normalizer
        )
    } else {
        let ws: Vec<String> = record.fns_weights.iter().map(|w| w.to_string()).collect();
        format!(
            "-μ_fns/λ = {} from spherical weights {} of {}, normalizer {}",
            format_rational(ratio),
            ws.join(", "),
            record.root_system,
            record.einstein_ratio_normalizer
        )
    }
}

/// Decides linear stability of a non-sphere catalog space.
pub fn classify(record: &SymmetricSpaceRecord) -> Result<StabilityVerdict, ClassifyError> {
    if record.is_sphere {
        return Err(ClassifyError::Sphere(record.name.clone()));
    }
    let ratio = mu_fns_ratio(record)?;
    let conformal = conformal_verdict(&ratio, false)?;
    let hilbert = record.hilbert_status;
    let (rule, why) = if conformal == ConformalVerdict::Unstable {
        (
            Rule::ConformalUnstable,
            "ratio below 2: unstable along conformal variations".to_string(),
        )
    } else if hilbert == HilbertStatus::Unstable {
        (
            Rule::HilbertUnstable,
            "Hilbert-unstable: a TT direction with μ_L > -2λ".to_string(),
        )
    } else if conformal == ConformalVerdict::Neutral {
        (
            Rule::HermitianNeutral,
            "ratio exactly 2: conformal null direction outside Im div*".to_string(),
        )
    } else if hilbert == HilbertStatus::Neutral {
        (
            Rule::IDeformableNeutral,
            "infinitesimally deformable: TT null direction with μ_L = -2λ".to_string(),
        )
    } else if hilbert == HilbertStatus::Stable {
        (
            Rule::StrictlyStable,
            "ratio above 2 and Hilbert-stable".to_string(),
        )
    } else {
        (
            Rule::Undetermined,
            "Hilbert status unknown and conformal ratio not below 2".to_string(),
        )
    };
    let mut evidence = vec![
        ratio_evidence(record, &ratio),
        format!("Hilbert action: {hilbert}"),
        format!(
            "min L_i/λ = {} (upper bound only)",
            format_rational(&record.min_l_ratio)
        ),
        why,
    ];
    if let Some(note) = &record.note {
        evidence.push(note.clone());
    }
    Ok(StabilityVerdict {
        space: record.name.clone(),
        kind: rule.kind(),
        conformal_ratio: Some(ratio),
        rule_fired: rule,
        evidence,
    })
}

/// Like [`classify`], but spheres get the stable verdict their table rows
/// print, tagged with [`Rule::SphereExcluded`].
pub fn row_verdict(record: &SymmetricSpaceRecord) -> Result<StabilityVerdict, ClassifyError> {
    if !record.is_sphere {
        return classify(record);
    }
    let ratio = mu_fns_ratio(record)?;
    Ok(StabilityVerdict {
        space: record.name.clone(),
        kind: Rule::SphereExcluded.kind(),
        evidence: vec![
            ratio_evidence(record, &ratio),
            "standard sphere: outside the classification, stable by separate results".into(),
        ],
        conformal_ratio: Some(ratio),
        rule_fired: Rule::SphereExcluded,
    })
}

/// A product of positive Einstein factors (rescaled to a common Einstein
/// constant) is always linearly unstable.
pub fn classify_product(
    factors: &[SymmetricSpaceRecord],
) -> Result<StabilityVerdict, ClassifyError> {
    if factors.len() < 2 {
        return Err(ClassifyError::TooFewFactors(factors.len()));
    }
    let (a, b) = (&factors[0], &factors[1]);
    let name = factors
        .iter()
        .map(|f| f.name.as_str())
        .collect::<Vec<_>>()
        .join(" × ");
    Ok(StabilityVerdict {
        space: name,
        kind: VerdictKind::LinearlyUnstable,
        conformal_ratio: None,
        rule_fired: Rule::ProductUnstable,
        evidence: vec![
            format!(
                "h = (1/{})g₁ - (1/{})g₂ on {} × {} is TT with N h = λh",
                a.dimension, b.dimension, a.name, b.name
            ),
            "δ²ν(h,h) > 0".into(),
        ],
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Markdown,
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown table format {0:?}, expected md, csv or json")]
pub struct UnknownFormat(pub String);

impl FromStr for TableFormat {
    type Err = UnknownFormat;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "md" | "markdown" => Ok(TableFormat::Markdown),
            "csv" => Ok(TableFormat::Csv),
            "json" => Ok(TableFormat::Json),
            _ => Err(UnknownFormat(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub name: String,
    pub dimension: String,
    pub mu_fns_ratio: String,
    pub min_l_ratio: String,
    pub hilbert_status: String,
    pub verdict: String,
}

const HEADER: [&str; 6] = [
    "name",
    "dim",
    "-μ_fns/λ",
    "min L_i/λ",
    "Hilbert",
    "ν-verdict",
];

fn verdict_text(v: &Result<StabilityVerdict, ClassifyError>) -> String {
    match v {
        Ok(v) => v.kind.short().to_string(),
        Err(e) => format!("error: {e}"),
    }
}

impl TableRow {
    /// A concrete space with computed ratio and verdict.
    pub fn from_record(r: &SymmetricSpaceRecord) -> TableRow {
        TableRow {
            name: r.name.clone(),
            dimension: r.dimension.to_string(),
            mu_fns_ratio: mu_fns_ratio(r)
                .map(|x| format_rational(&x))
                .unwrap_or_else(|e| format!("error: {e}")),
            min_l_ratio: format_rational(&r.min_l_ratio),
            hilbert_status: r.hilbert_status.short().to_string(),
            verdict: verdict_text(&row_verdict(r)),
        }
    }

    /// A family row with its printed formulas; the verdict is computed at the
    /// family's smallest parameters.
    pub fn from_family(f: &Family) -> TableRow {
        let verdict = instantiate_family(f, &f.minimal_params(12))
            .map_err(|e| e.to_string())
            .map(|r| verdict_text(&row_verdict(&r)))
            .unwrap_or_else(|e| format!("error: {e}"));
        TableRow {
            name: f.row_title(),
            dimension: f.dim_formula.to_string(),
            mu_fns_ratio: f.fns_formula.to_string(),
            min_l_ratio: f.min_l_formula.to_string(),
            hilbert_status: f.hilbert.short().to_string(),
            verdict,
        }
    }

    fn cells(&self) -> [&str; 6] {
        [
            &self.name,
            &self.dimension,
            &self.mu_fns_ratio,
            &self.min_l_ratio,
            &self.hilbert_status,
            &self.verdict,
        ]
    }
}

/// Rows for concrete records. With `group_families`, records of the same
/// family that agree in every computed column collapse into one row, e.g.
/// `CP^p (p=2,3,4,5)`.
pub fn rows_for_records(records: &[SymmetricSpaceRecord], group_families: bool) -> Vec<TableRow> {
    if !group_families {
        return records.iter().map(TableRow::from_record).collect();
    }
    let mut groups: Vec<(String, TableRow, Vec<&SymmetricSpaceRecord>)> = Vec::new();
    for r in records {
        let row = TableRow::from_record(r);
        let same = |g: &(String, TableRow, Vec<&SymmetricSpaceRecord>)| {
            g.0 == r.family
                && !r.params.is_empty()
                && g.1.mu_fns_ratio == row.mu_fns_ratio
                && g.1.min_l_ratio == row.min_l_ratio
                && g.1.hilbert_status == row.hilbert_status
                && g.1.verdict == row.verdict
        };
        match groups.iter_mut().find(|g| same(g)) {
            Some(g) => g.2.push(r),
            None => groups.push((r.family.clone(), row, vec![r])),
        }
    }
    groups
        .into_iter()
        .map(|(family_id, mut row, members)| {
            if members.len() > 1 {
                let f = crate::catalog::family(&family_id).expect("grouped rows have families");
                let varying: Vec<&str> = f
                    .params
                    .iter()
                    .copied()
                    .filter(|p| {
                        members
                            .iter()
                            .any(|m| m.params[*p] != members[0].params[*p])
                    })
                    .collect();
                let values: Vec<String> = members
                    .iter()
                    .map(|m| {
                        varying
                            .iter()
                            .map(|p| m.params[*p].to_string())
                            .collect::<Vec<_>>()
                            .join(":")
                    })
                    .collect();
                row.name = format!(
                    "{} ({}={})",
                    f.generic_name,
                    varying.join(":"),
                    values.join(",")
                );
                row.dimension = members
                    .iter()
                    .map(|m| m.dimension.to_string())
                    .collect::<Vec<_>>()
                    .join(",");
            }
            row
        })
        .collect()
}

/// One row per printed family of the given table.
pub fn rows_for_table(table: TableKind) -> Vec<TableRow> {
    families()
        .iter()
        .filter(|f| f.table == table)
        .map(TableRow::from_family)
        .collect()
}

/// Renders rows deterministically in the chosen format.
pub fn emit_table(rows: &[TableRow], format: TableFormat) -> String {
    match format {
        TableFormat::Markdown => {
            let mut out = String::new();
            out.push_str(&format!("| {} |\n", HEADER.join(" | ")));
            out.push_str(&format!("|{}\n", "---|".repeat(HEADER.len())));
            for r in rows {
                out.push_str(&format!("| {} |\n", r.cells().join(" | ")));
            }
            out
        }
        TableFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(HEADER).expect("in-memory write");
            for r in rows {
                w.write_record(r.cells()).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
        }
        TableFormat::Json => {
            let mut s = serde_json::to_string_pretty(rows).expect("rows serialize");
            s.push('\n');
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{enumerate, Catalog};
    use crate::rational::q;

    fn lookup(name: &str) -> SymmetricSpaceRecord {
        Catalog::builtin().lookup(name).unwrap()
    }

    #[test]
    fn ratio_examples() {
        assert_eq!(mu_fns_ratio(&lookup("SU(3)")).unwrap(), q(16, 9));
        for p in 2..7 {
            assert_eq!(
                mu_fns_ratio(&lookup(&format!("CP^{p}"))).unwrap(),
                rational::int(2)
            );
        }
        assert_eq!(mu_fns_ratio(&lookup("SU(5)/SO(5)")).unwrap(), q(56, 25));
        let mut r = lookup("G2/SO(4)");
        r.fns_weights.clear();
        assert!(matches!(mu_fns_ratio(&r), Err(ClassifyError::NoWeights(_))));
    }

    #[test]
    fn conformal_windows() {
        assert_eq!(
            conformal_verdict(&q(13, 9), false).unwrap(),
            ConformalVerdict::Unstable
        );
        assert_eq!(
            conformal_verdict(&q(2, 1), false).unwrap(),
            ConformalVerdict::Neutral
        );
        assert_eq!(
            conformal_verdict(&q(7, 3), false).unwrap(),
            ConformalVerdict::Stable
        );
        assert!(conformal_verdict(&q(7, 3), true).is_err());
    }

    #[test]
    fn decision_order_examples() {
        let v = classify(&lookup("Spin(5)")).unwrap();
        assert_eq!(
            (v.kind, v.rule_fired),
            (VerdictKind::LinearlyUnstable, Rule::ConformalUnstable)
        );
        assert_eq!(v.conformal_ratio, Some(q(5, 3)));
        let v = classify(&lookup("Sp(3)/U(3)")).unwrap();
        assert_eq!(
            (v.kind, v.rule_fired),
            (VerdictKind::LinearlyUnstable, Rule::HilbertUnstable)
        );
        assert_eq!(v.conformal_ratio, Some(rational::int(2)));
        let v = classify(&lookup("SU(4)/SO(4)")).unwrap();
        assert_eq!(v.rule_fired, Rule::IDeformableNeutral);
        assert_eq!(v.conformal_ratio, Some(q(9, 4)));
        let v = classify(&lookup("SO(5)/SO(3)×SO(2)")).unwrap();
        assert_eq!(v.rule_fired, Rule::HilbertUnstable);
        let v = classify(&lookup("G2/SO(4)")).unwrap();
        assert_eq!(
            (v.kind, v.rule_fired),
            (VerdictKind::LinearlyStable, Rule::StrictlyStable)
        );
        assert!(classify(&lookup("S^4")).is_err());
        assert_eq!(
            row_verdict(&lookup("S^4")).unwrap().rule_fired,
            Rule::SphereExcluded
        );
    }

    #[test]
    fn rule_one_wins_over_hilbert_status() {
        let mut r = lookup("F4/Spin(9)");
        for h in [
            HilbertStatus::Stable,
            HilbertStatus::Neutral,
            HilbertStatus::Unstable,
        ] {
            r.hilbert_status = h;
            let v = classify(&r).unwrap();
            assert_eq!(v.rule_fired, Rule::ConformalUnstable);
        }
    }

    #[test]
    fn products() {
        let s2 = lookup("S^2");
        let v = classify_product(&[s2.clone(), s2.clone()]).unwrap();
        assert_eq!(v.kind, VerdictKind::LinearlyUnstable);
        assert!(v.evidence[0].contains("(1/2)g₁ - (1/2)g₂"));
        let v = classify_product(&[lookup("CP^2"), s2.clone()]).unwrap();
        assert!(v.evidence[0].contains("(1/4)g₁ - (1/2)g₂"));
        assert!(matches!(
            classify_product(&[s2]),
            Err(ClassifyError::TooFewFactors(1))
        ));
    }

    #[test]
    fn tables() {
        let md = emit_table(&rows_for_table(TableKind::Group), TableFormat::Markdown);
        assert!(
            md.contains("| G2 | 14 | 2 | 2 | H.stable | n.l.stable |"),
            "{md}"
        );
        let csv = emit_table(&[], TableFormat::Csv);
        assert_eq!(csv.lines().count(), 1);
        let rows = rows_for_records(&enumerate(10), true);
        assert_eq!(rows.len(), 10);
        let json = emit_table(&rows, TableFormat::Json);
        let back: Vec<TableRow> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, rows);
        let cp = rows.iter().find(|r| r.name.starts_with("CP^p")).unwrap();
        assert_eq!(cp.name, "CP^p (p=2,3,4,5)");
        assert_eq!(cp.dimension, "4,6,8,10");
        assert!("tsv".parse::<TableFormat>().is_err());
    }

    #[test]
    fn verdict_json_shape() {
        let v = classify(&lookup("G2/SO(4)")).unwrap();
        let j = serde_json::to_value(&v).unwrap();
        assert_eq!(j["kind"], "LinearlyStable");
        assert_eq!(j["conformal_ratio"], "7/3");
        assert_eq!(j["rule"], "StrictlyStable");
    }
}
