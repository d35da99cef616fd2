//! Command-line front end.

use crate::catalog::{
    enumerate, records_to_json, sweep, validate_catalog, Catalog, CatalogError,
    SymmetricSpaceRecord, TableKind,
};
use crate::classifier::{
    classify_product, emit_table, mu_fns_ratio, row_verdict, rows_for_records, rows_for_table,
    ClassifyError, StabilityVerdict, TableFormat,
};
use crate::lie_algebra::{build_root_system, casimir, weyl_dim, LieError, LieType, Weight};
use crate::rational::format_rational;
use crate::verification::{parse_suites, run_suites, UnknownSuite, VerifyOptions};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// JSON Schemas for each `--format json` output, keyed by file name.
pub const OUTPUT_SCHEMAS: [(&str, &str); 7] = [
    ("verdict", include_str!("../schema/verdict.schema.json")),
    ("table", include_str!("../schema/table.schema.json")),
    ("casimir", include_str!("../schema/casimir.schema.json")),
    ("mu-fns", include_str!("../schema/mu-fns.schema.json")),
    ("verify", include_str!("../schema/verify.schema.json")),
    (
        "validation",
        include_str!("../schema/validation.schema.json"),
    ),
    ("error", include_str!("../schema/error.schema.json")),
];

pub fn output_schema(name: &str) -> Option<&'static str> {
    OUTPUT_SCHEMAS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, s)| *s)
}

#[derive(Debug, Parser)]
#[command(
    name = "nu-stability",
    version,
    about = "Linear stability of the ν-entropy on compact symmetric spaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    /// Compact simple groups, one row per family.
    Table1,
    /// Non-group quotients, one row per family.
    Table2,
    /// Every non-sphere space up to `--max-dim`.
    Lowdim,
}

#[derive(Debug, Args)]
pub struct CatalogArg {
    /// Extra catalog records (JSON); falls back to $NU_STABILITY_CATALOG.
    #[arg(long, value_name = "PATH")]
    pub catalog: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a space. Several names classify their Riemannian product.
    Classify {
        #[arg(required = true, num_args = 1..)]
        names: Vec<String>,
        #[command(flatten)]
        catalog: CatalogArg,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Emit a stability table.
    Table {
        #[arg(long, default_value_t = 10)]
        max_dim: u64,
        #[arg(long, value_enum, default_value = "lowdim")]
        which: Which,
        /// md, markdown, csv or json.
        #[arg(long, default_value = "md", value_parser = parse_table_format)]
        format: TableFormat,
        /// One row per space instead of folding a family's equal rows.
        #[arg(long)]
        ungrouped: bool,
    },
    /// Normalized Casimir eigenvalue of a highest weight.
    Casimir {
        #[arg(long = "type", value_name = "T")]
        lie_type: String,
        /// Implied by E6, E7, E8, F4, G2.
        #[arg(long)]
        rank: Option<usize>,
        /// Fundamental-weight coefficients, e.g. 0,0,1.
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// -μ_fns/λ for a space.
    MuFns {
        name: String,
        #[command(flatten)]
        catalog: CatalogArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run verification suites.
    Verify {
        /// lemma33, lemma34, orthogonality, product, casimir-tables, properties or all.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Replaces each suite's main tolerance.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, default_value_t = VerifyOptions::default().seed)]
        seed: u64,
        #[arg(long, default_value_t = VerifyOptions::default().points)]
        points: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check records against the Lie algebra and the printed formulas.
    ValidateCatalog {
        #[command(flatten)]
        catalog: CatalogArg,
        /// Parameter values swept for the built-in families.
        #[arg(long, value_delimiter = ',', default_value = "2,3,4,5,6,10")]
        values: Vec<u32>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Write built-in records as a catalog file.
    ExportCatalog {
        #[arg(long, value_delimiter = ',', default_value = "2,3,4,5")]
        values: Vec<u32>,
    },
}

fn parse_table_format(s: &str) -> Result<TableFormat, String> {
    s.parse()
        .map_err(|e: crate::classifier::UnknownFormat| e.to_string())
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Suite(#[from] UnknownSuite),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Suite(_) => EXIT_USAGE,
            _ => EXIT_DOMAIN,
        }
    }

    fn to_json(&self) -> serde_json::Value {
        let mut v = json!({ "error": self.to_string(), "exit_code": self.exit_code() });
        if let CliError::Catalog(CatalogError::UnknownSpace { suggestions, .. }) = self {
            v["suggestions"] = json!(suggestions);
        }
        v
    }
}

/// Parses `argv` (including the program name), runs it, and returns the exit status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let json_errors = matches!(
        cli.command,
        Command::Classify {
            format: Format::Json,
            ..
        } | Command::Casimir {
            format: Format::Json,
            ..
        } | Command::MuFns {
            format: Format::Json,
            ..
        } | Command::Verify {
            format: Format::Json,
            ..
        } | Command::ValidateCatalog {
            format: Format::Json,
            ..
        }
    );
    match execute(&cli.command) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            if json_errors {
                let _ = writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&e.to_json()).unwrap()
                );
            }
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("output serializes");
    s.push('\n');
    s
}

fn load(c: &CatalogArg) -> Result<Catalog, CliError> {
    Ok(Catalog::from_path_or_env(c.catalog.as_deref())?)
}

fn verdict_text(v: &StabilityVerdict) -> String {
    let mut s = format!("{}: {} ({:?})\n", v.space, v.kind.short(), v.rule_fired);
    for e in &v.evidence {
        s.push_str(&format!("  {e}\n"));
    }
    s
}

/// Runs a parsed command, returning its output and exit status.
pub fn execute(cmd: &Command) -> Result<(String, i32), CliError> {
    match cmd {
        Command::Classify {
            names,
            catalog,
            format,
        } => {
            let cat = load(catalog)?;
            let records = names
                .iter()
                .map(|n| cat.lookup(n))
                .collect::<Result<Vec<SymmetricSpaceRecord>, _>>()?;
            let v = if records.len() == 1 {
                row_verdict(&records[0])?
            } else {
                classify_product(&records)?
            };
            Ok((
                match format {
                    Format::Json => pretty(&v),
                    Format::Text => verdict_text(&v),
                },
                EXIT_OK,
            ))
        }
        Command::Table {
            max_dim,
            which,
            format,
            ungrouped,
        } => {
            let rows = match which {
                Which::Table1 => rows_for_table(TableKind::Group),
                Which::Table2 => rows_for_table(TableKind::Quotient),
                Which::Lowdim => rows_for_records(&enumerate(*max_dim), !ungrouped),
            };
            Ok((emit_table(&rows, *format), EXIT_OK))
        }
        Command::Casimir {
            lie_type,
            rank,
            weight,
            format,
        } => {
            let ty = LieType::parse(lie_type, *rank)?;
            let w = Weight::parse(weight).map_err(CliError::Usage)?;
            let r = match (rank, ty.fixed_rank()) {
                (Some(r), _) => *r,
                (None, Some(r)) => r,
                (None, None) => w.coeffs().len(),
            };
            let rs = build_root_system(ty, r)?;
            let c = casimir(&rs, &w)?;
            let text = match format {
                Format::Text => format!("{}\n", format_rational(&c)),
                Format::Json => pretty(&json!({
                    "type": ty.to_string(),
                    "rank": r,
                    "weight": w,
                    "casimir": format_rational(&c),
                    "dimension": weyl_dim(&rs, &w).ok().map(|d| d.to_string()),
                })),
            };
            Ok((text, EXIT_OK))
        }
        Command::MuFns {
            name,
            catalog,
            format,
        } => {
            let rec = load(catalog)?.lookup(name)?;
            let r = mu_fns_ratio(&rec)?;
            let text = match format {
                Format::Text => format!("{}\n", format_rational(&r)),
                Format::Json => pretty(&json!({
                    "space": rec.name,
                    "mu_fns_ratio": format_rational(&r),
                    "weights": rec.fns_weights,
                })),
            };
            Ok((text, EXIT_OK))
        }
        Command::Verify {
            suite,
            tol,
            seed,
            points,
            format,
        } => {
            let suites = parse_suites(suite)?;
            if matches!(tol, Some(t) if !(t.is_finite() && *t >= 0.0)) {
                return Err(CliError::Usage(
                    "--tol must be a finite non-negative number".into(),
                ));
            }
            let opts = VerifyOptions {
                seed: *seed,
                points: *points,
                tol: *tol,
            };
            let reports = run_suites(&suites, &opts);
            let passed = reports.iter().all(|r| r.passed);
            let text = match format {
                Format::Json if suites.len() == 1 => pretty(&reports[0]),
                Format::Json => pretty(&reports),
                Format::Text => reports.iter().map(|r| r.to_text()).collect(),
            };
            Ok((text, if passed { EXIT_OK } else { EXIT_DOMAIN }))
        }
        Command::ValidateCatalog {
            catalog,
            values,
            format,
        } => {
            let cat = load(catalog)?;
            let mut records = sweep(values);
            records.extend_from_slice(cat.extra_records());
            let report = validate_catalog(&records);
            let text = match format {
                Format::Json => pretty(&report),
                Format::Text => {
                    let mut s = format!(
                        "{} records, {} violations\n",
                        report.checked,
                        report.violations.len()
                    );
                    for v in &report.violations {
                        s.push_str(&format!("  {} [{}]: {}\n", v.record, v.check, v.message));
                    }
                    s
                }
            };
            Ok((
                text,
                if report.is_clean() {
                    EXIT_OK
                } else {
                    EXIT_DOMAIN
                },
            ))
        }
        Command::ExportCatalog { values } => {
            let mut s = records_to_json(&sweep(values));
            s.push('\n');
            Ok((s, EXIT_OK))
        }
    }
}
