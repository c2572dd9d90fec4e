//! JSON form of a generator set.
//!
//! Generators are stored in primitive integer form; σ-parts, tails and the
//! tables use the internal scaling, so a document carries everything needed
//! to rebuild the set exactly. Rationals are `"num/den"` strings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::parse_rational;
use crate::forge::{CoefficientTables, GeneratorSet, Table};
use crate::params::{validate_and_derive, ParamError};
use crate::poly::{canonicalize_primitive, Polynomial, TermRecord};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedPolynomial {
    pub name: String,
    pub terms: Vec<TermRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct TableDocument {
    pub c: BTreeMap<String, String>,
    pub a: BTreeMap<String, String>,
    pub d: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputDocument {
    pub n: u32,
    pub lambda: u64,
    pub generators: Vec<NamedPolynomial>,
    pub sigma_parts: Vec<NamedPolynomial>,
    pub tails: Vec<NamedPolynomial>,
    pub tables: TableDocument,
    /// Tables rescaled to the primitive generators.
    pub primitive_tables: TableDocument,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error("bad entry {0}")]
    BadEntry(String),
    #[error("document is inconsistent: {0}")]
    Inconsistent(String),
}

fn named(prefix: &str, suffix: &str, polys: &[Polynomial]) -> Vec<NamedPolynomial> {
    polys
        .iter()
        .enumerate()
        .map(|(i, f)| NamedPolynomial {
            name: format!("{prefix}{}{suffix}", i + 1),
            terms: f.to_records(),
        })
        .collect()
}

fn table_strings(t: &Table) -> BTreeMap<String, String> {
    t.iter()
        .map(|((i, j), v)| (format!("{i},{j}"), v.to_string()))
        .collect()
}

fn parse_table(t: &BTreeMap<String, String>) -> Result<Table, DocumentError> {
    t.iter()
        .map(|(k, v)| {
            let bad = || DocumentError::BadEntry(format!("{k}: {v}"));
            let (i, j) = k.split_once(',').ok_or_else(bad)?;
            let key = (
                i.trim().parse().map_err(|_| bad())?,
                j.trim().parse().map_err(|_| bad())?,
            );
            Ok((key, parse_rational(v).map_err(|_| bad())?))
        })
        .collect()
}

fn tables_doc(t: &CoefficientTables) -> TableDocument {
    TableDocument {
        c: table_strings(&t.c),
        a: table_strings(&t.a),
        d: table_strings(&t.d),
    }
}

fn parse_polys(list: &[NamedPolynomial]) -> Result<Vec<Polynomial>, DocumentError> {
    list.iter()
        .map(|p| {
            Polynomial::from_records(&p.terms)
                .map_err(|e| DocumentError::BadEntry(format!("{}: {e}", p.name)))
        })
        .collect()
}

impl OutputDocument {
    pub fn from_set(set: &GeneratorSet) -> Self {
        Self {
            n: set.params.n,
            lambda: set.params.lambda,
            generators: named("f", "", &set.display),
            sigma_parts: named("f", "_sigma", &set.sigma_parts),
            tails: named("f", "_tau", &set.tails),
            tables: tables_doc(&set.tables),
            primitive_tables: tables_doc(&set.display_tables()),
        }
    }

    /// Rebuilds the generator set, checking that the stored primitive
    /// generators and rescaled tables agree with the internal data.
    pub fn to_set(&self) -> Result<GeneratorSet, DocumentError> {
        let params = validate_and_derive(self.n, self.lambda)?;
        let sigma_parts = parse_polys(&self.sigma_parts)?;
        let tails = parse_polys(&self.tails)?;
        let display = parse_polys(&self.generators)?;
        let count = params.n as usize + 1;
        if sigma_parts.len() != count || tails.len() != count || display.len() != count {
            return Err(DocumentError::Inconsistent(format!(
                "expected {count} polynomials per list"
            )));
        }
        let generators: Vec<Polynomial> =
            sigma_parts.iter().zip(&tails).map(|(s, t)| s + t).collect();
        for (i, (f, shown)) in generators.iter().zip(&display).enumerate() {
            let canon = canonicalize_primitive(f)
                .map_err(|e| DocumentError::Inconsistent(e.to_string()))?;
            if &canon != shown {
                return Err(DocumentError::Inconsistent(format!(
                    "f{} does not match its parts",
                    i + 1
                )));
            }
        }
        let tables = CoefficientTables {
            c: parse_table(&self.tables.c)?,
            a: parse_table(&self.tables.a)?,
            d: parse_table(&self.tables.d)?,
        };
        let set = GeneratorSet {
            params,
            sigma_parts,
            tails,
            generators,
            tables,
            display,
        };
        if tables_doc(&set.display_tables()) != self.primitive_tables {
            return Err(DocumentError::Inconsistent(
                "primitive tables disagree".into(),
            ));
        }
        Ok(set)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn parse(s: &str) -> Result<Self, DocumentError> {
        serde_json::from_str(s).map_err(|e| DocumentError::Json(e.to_string()))
    }
}

pub fn emit(set: &GeneratorSet) -> String {
    OutputDocument::from_set(set).to_json_string()
}

pub fn parse(s: &str) -> Result<GeneratorSet, DocumentError> {
    OutputDocument::parse(s)?.to_set()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forge::build_generators;
    use proptest::prelude::*;

    #[test]
    fn worked_example_round_trip() {
        let set = build_generators(3, 27).unwrap();
        let json = emit(&set);
        assert_eq!(parse(&json).unwrap(), set);
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["generators"][3]["name"], "f4");
        assert_eq!(value["generators"][0]["terms"][0]["x"], 4);
        assert_eq!(value["generators"][0]["terms"][0]["coeff"], "1");
        assert_eq!(value["tables"]["a"]["1,2"], "3/2");
        assert_eq!(value["primitive_tables"]["a"]["2,2"], "1/3");
    }

    #[test]
    fn tampering_is_detected() {
        let set = build_generators(1, 3).unwrap();
        let mut doc = OutputDocument::from_set(&set);
        doc.generators[1].terms[0].coeff = "2".into();
        assert!(matches!(doc.to_set(), Err(DocumentError::Inconsistent(_))));
        assert!(matches!(parse("{"), Err(DocumentError::Json(_))));
        let mut doc = OutputDocument::from_set(&set);
        doc.lambda = 2;
        assert!(matches!(doc.to_set(), Err(DocumentError::Param(_))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn round_trip_across_parameters(k in 0usize..4, idx in 0usize..5) {
            let n = 2 * k as u32 + 1;
            let lambda = crate::params::valid_lambdas(n).nth(idx).unwrap();
            let set = build_generators(n, lambda).unwrap();
            prop_assert_eq!(parse(&emit(&set)).unwrap(), set);
        }
    }
}
