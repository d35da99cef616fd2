//! Space names.
//!
//! Accepted forms: a family label or generic name followed by parameter
//! assignments (`A I n=5`, `SU(n)/SO(n) n=5`, `A III p=3,q=2`), a concrete
//! display name (`SU(5)/SO(5)`), or an alias (`S^4`, `HP^2`, `Sp(2)/U(2)`).
//! Matching ignores case, spaces, underscores and braces, and treats `x`,
//! `*` and `×` alike.

use super::{families, format_params, instantiate_among, instantiate_family, CatalogError};
use super::{Family, Params, SymmetricSpaceRecord};
use std::collections::HashMap;
use std::sync::OnceLock;

/// Largest parameter value indexed for one- and two-parameter families.
const ONE_PARAM_BOUND: u32 = 200;
const TWO_PARAM_BOUND: u32 = 60;

fn superscript(c: char) -> Option<char> {
    let d = match c {
        '⁰' => '0',
        '¹' => '1',
        '²' => '2',
        '³' => '3',
        '⁴' => '4',
        '⁵' => '5',
        '⁶' => '6',
        '⁷' => '7',
        '⁸' => '8',
        '⁹' => '9',
        _ => return None,
    };
    Some(d)
}

pub fn normalize_name(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut in_sup = false;
    for c in s.chars() {
        if let Some(d) = superscript(c) {
            if !in_sup {
                out.push('^');
            }
            out.push(d);
            in_sup = true;
            continue;
        }
        in_sup = false;
        match c {
            c if c.is_whitespace() => {}
            '_' | '{' | '}' | '$' => {}
            'x' | 'X' | '*' | '×' => out.push('×'),
            '.' | '⋅' | '·' => out.push('·'),
            '−' | '–' => out.push('-'),
            'ℂ' => out.push('c'),
            'ℍ' => out.push('h'),
            '𝕆' => out.push('o'),
            '𝕊' => out.push('s'),
            c => out.extend(c.to_lowercase()),
        }
    }
    out
}

struct Index {
    by_key: HashMap<String, (usize, Params)>,
    /// Display strings for suggestions, skipping large parameter values.
    shown: Vec<(String, String)>,
}

fn index() -> &'static Index {
    static INDEX: OnceLock<Index> = OnceLock::new();
    INDEX.get_or_init(|| {
        let mut by_key = HashMap::new();
        let mut shown = Vec::new();
        let sweeps: Vec<Vec<Params>> = families()
            .iter()
            .map(|f| {
                let bound = if f.params.len() > 1 {
                    TWO_PARAM_BOUND
                } else {
                    ONE_PARAM_BOUND
                };
                f.sweep(&(0..=bound).collect::<Vec<_>>())
            })
            .collect();
        for (i, f) in families().iter().enumerate() {
            for p in &sweeps[i] {
                let name = (f.name)(p);
                let key = normalize_name(&name);
                if let std::collections::hash_map::Entry::Vacant(e) = by_key.entry(key) {
                    if p.values().all(|&v| v <= 8) {
                        shown.push((e.key().clone(), name));
                    }
                    e.insert((i, p.clone()));
                }
            }
        }
        for (i, f) in families().iter().enumerate() {
            for p in &sweeps[i] {
                for alias in (f.aliases)(p) {
                    by_key
                        .entry(normalize_name(&alias))
                        .or_insert_with(|| (i, p.clone()));
                }
            }
        }
        Index { by_key, shown }
    })
}

/// Splits trailing `k=v` assignments off a name.
fn split_params(name: &str) -> Result<(String, Params), CatalogError> {
    let tokens: Vec<&str> = name.split_whitespace().collect();
    let mut params = Params::new();
    let mut cut = tokens.len();
    while cut > 0 {
        let tok = tokens[cut - 1];
        let parts: Vec<&str> = tok.split(',').filter(|t| !t.is_empty()).collect();
        if parts.is_empty() || !parts.iter().all(|t| t.contains('=')) {
            break;
        }
        for part in parts {
            let (k, v) = part.split_once('=').unwrap();
            let k = k.trim();
            if k.is_empty() || !k.chars().all(|c| c.is_ascii_alphabetic()) {
                return Err(CatalogError::UnknownSpace {
                    name: name.to_string(),
                    suggestions: Vec::new(),
                });
            }
            let v: u32 = v.trim().parse().map_err(|_| CatalogError::BadParams {
                label: tokens[..cut - 1].join(" "),
                expected: "non-negative integer values".into(),
                got: part.to_string(),
            })?;
            params.insert(k.to_string(), v);
        }
        cut -= 1;
    }
    Ok((tokens[..cut].join(" "), params))
}

fn family_matches(f: &Family, key: &str) -> bool {
    normalize_name(f.label) == key
        || normalize_name(f.generic_name) == key
        || f.generic_aliases.iter().any(|a| normalize_name(a) == key)
}

fn suggestions(key: &str) -> Vec<String> {
    let mut scored: Vec<(f64, String)> = index()
        .shown
        .iter()
        .map(|(k, shown)| (strsim::jaro_winkler(key, k), shown.clone()))
        .chain(families().iter().flat_map(|f| {
            [f.label, f.generic_name]
                .into_iter()
                .map(|s| (strsim::jaro_winkler(key, &normalize_name(s)), s.to_string()))
        }))
        .collect();
    scored.sort_by(|a, b| b.0.total_cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    let mut out: Vec<String> = Vec::new();
    for (_, s) in scored {
        if !out.contains(&s) {
            out.push(s);
        }
        if out.len() == 3 {
            break;
        }
    }
    out
}

pub(super) fn lookup(
    extra: &[SymmetricSpaceRecord],
    name: &str,
) -> Result<SymmetricSpaceRecord, CatalogError> {
    let (base, params) = split_params(name)?;
    let key = normalize_name(&base);
    let unknown = || CatalogError::UnknownSpace {
        name: name.trim().to_string(),
        suggestions: suggestions(&key),
    };
    if key.is_empty() {
        return Err(unknown());
    }

    if !params.is_empty() {
        if let Some(r) = extra
            .iter()
            .find(|r| normalize_name(&r.label) == key && r.params == params)
        {
            return Ok(r.clone());
        }
        let candidates: Vec<&Family> = families()
            .iter()
            .filter(|f| family_matches(f, &key))
            .collect();
        if candidates.is_empty() {
            return Err(unknown());
        }
        return instantiate_among(&candidates, base.trim(), &params);
    }

    if let Some(r) = extra.iter().find(|r| {
        normalize_name(&r.name) == key || r.aliases.iter().any(|a| normalize_name(a) == key)
    }) {
        return Ok(r.clone());
    }
    if let Some((i, p)) = index().by_key.get(&key) {
        return instantiate_family(&families()[*i], p);
    }
    let candidates: Vec<&Family> = families()
        .iter()
        .filter(|f| family_matches(f, &key))
        .collect();
    if let [only] = candidates.as_slice() {
        if only.params.is_empty() {
            return instantiate_family(only, &Params::new());
        }
    }
    if let Some(f) = candidates.iter().find(|f| !f.params.is_empty()) {
        let mut sets: Vec<String> = candidates
            .iter()
            .filter(|f| !f.params.is_empty())
            .map(|f| f.params.join(", "))
            .collect();
        sets.dedup();
        return Err(CatalogError::MissingParams {
            name: base.trim().to_string(),
            params: sets.join(" or "),
            example: format!("{} {}", base.trim(), format_params(&f.minimal_params(12))),
        });
    }
    if !candidates.is_empty() {
        let names: Vec<String> = candidates
            .iter()
            .map(|f| f.generic_name.to_string())
            .collect();
        return Err(CatalogError::UnknownSpace {
            name: name.trim().to_string(),
            suggestions: names,
        });
    }
    Err(unknown())
}

#[cfg(test)]
mod tests {
    use super::super::{representative_records, Catalog};
    use super::*;

    #[test]
    fn normalization() {
        assert_eq!(
            normalize_name("U(4)/U(2) x U(2)"),
            normalize_name("U(4)/U(2)×U(2)")
        );
        assert_eq!(normalize_name("ℂP²"), "cp^2");
        assert_eq!(normalize_name("S^{10}"), "s^10");
        assert_eq!(normalize_name("E_6"), "e6");
    }

    #[test]
    fn every_display_name_round_trips() {
        let cat = Catalog::builtin();
        for r in representative_records() {
            let back = cat.lookup(&r.name).unwrap();
            assert_eq!(back, r, "{}", r.name);
        }
    }

    #[test]
    fn labels_and_generic_names_with_params() {
        let cat = Catalog::builtin();
        let a = cat.lookup("SU(n)/SO(n) n=5").unwrap();
        let b = cat.lookup("A I n=5").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.name, "SU(5)/SO(5)");
        assert_eq!(cat.lookup("A III p=3,q=2").unwrap().name, "U(5)/U(3)×U(2)");
        assert_eq!(cat.lookup("CP^p p=4 q=1").unwrap().name, "CP^4");
        assert_eq!(cat.lookup("G").unwrap().name, "G2/SO(4)");
        assert_eq!(cat.lookup("E VII").unwrap().name, "E7/E6·SO(2)");
    }

    #[test]
    fn aliases() {
        let cat = Catalog::builtin();
        assert_eq!(cat.lookup("Sp(2)/U(2)").unwrap().name, "SO(5)/SO(3)×SO(2)");
        assert_eq!(cat.lookup("HP^2").unwrap().name, "Sp(3)/Sp(2)×Sp(1)");
        assert_eq!(cat.lookup("ℂP²").unwrap().name, "CP^2");
        assert_eq!(cat.lookup("S^4").unwrap().name, "SO(5)/SO(4)");
        assert_eq!(cat.lookup("Sp(2)").unwrap().name, "Spin(5)");
        assert_eq!(cat.lookup("SO(6)/SO(3)xSO(3)").unwrap().name, "SU(4)/SO(4)");
    }

    #[test]
    fn errors() {
        let cat = Catalog::builtin();
        match cat.lookup("SU(5)/SO(6)") {
            Err(CatalogError::UnknownSpace { suggestions, .. }) => {
                assert!(!suggestions.is_empty())
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            cat.lookup("C I n=2"),
            Err(CatalogError::OutOfRange { .. })
        ));
        assert!(matches!(
            cat.lookup("A I"),
            Err(CatalogError::MissingParams { .. })
        ));
        assert!(matches!(
            cat.lookup("B I"),
            Err(CatalogError::MissingParams { .. })
        ));
        assert!(matches!(
            cat.lookup("  "),
            Err(CatalogError::UnknownSpace { .. })
        ));
        assert!(cat.lookup("A I n=x").is_err());
    }

    #[test]
    fn loaded_records_take_precedence() {
        let mut r = Catalog::builtin().lookup("G2/SO(4)").unwrap();
        r.name = "Custom".into();
        r.aliases = vec!["My G".into()];
        let cat = Catalog::with_records(vec![r.clone()]);
        assert_eq!(cat.lookup("custom").unwrap(), r);
        assert_eq!(cat.lookup("My G").unwrap(), r);
        assert_eq!(cat.lookup("G2/SO(4)").unwrap().name, "G2/SO(4)");
    }
}
