//! JSON and inline text forms of elements and certificates.
//!
//! An element document looks like `{"level":4,"coeffs":{"1":"1","10":"-3/2"}}`:
//! keys are decimal basis indices, values exact rationals. Zero coefficients
//! are omitted on output and may be omitted on input. The inline form
//! `4:1=1,10=-3/2` carries the same information on one line.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::constructions::{Certificate, Provenance};
use crate::element::{check_level, make_element, Element};
use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementDocument {
    pub level: u32,
    pub coeffs: BTreeMap<usize, Coefficient>,
}

/// A coefficient as written in a document. Output is always a string;
/// bare JSON integers are accepted on input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coefficient {
    Text(String),
    Integer(i64),
}

impl ElementDocument {
    pub fn from_element(x: &Element) -> Self {
        ElementDocument {
            level: x.level(),
            coeffs: x
                .support()
                .map(|(p, c)| (p, Coefficient::Text(format_rational(c))))
                .collect(),
        }
    }

    pub fn to_element(&self) -> Result<Element> {
        check_level(self.level)?;
        let dim = 1usize << self.level;
        let mut terms = Vec::with_capacity(self.coeffs.len());
        for (&index, value) in &self.coeffs {
            if index >= dim {
                return Err(Error::input(format!(
                    "coeffs key \"{index}\": basis index must be < {dim} at level {}",
                    self.level
                )));
            }
            let q = match value {
                Coefficient::Text(t) => parse_rational(t).map_err(|_| {
                    Error::input(format!("coeffs key \"{index}\": malformed rational {t:?}"))
                })?,
                Coefficient::Integer(v) => crate::rational::int(*v),
            };
            terms.push((index, q));
        }
        make_element(self.level, terms)
    }
}

fn json_error(e: serde_json::Error) -> Error {
    Error::input(format!("line {} column {}: {e}", e.line(), e.column()))
}

pub fn parse_element_json(text: &str) -> Result<Element> {
    let doc: ElementDocument = serde_json::from_str(text).map_err(json_error)?;
    doc.to_element()
}

pub fn element_from_value(value: &serde_json::Value) -> Result<Element> {
    let doc: ElementDocument = serde_json::from_value(value.clone()).map_err(|e| Error::input(e.to_string()))?;
    doc.to_element()
}

/// Compact single-line JSON.
pub fn element_to_json(x: &Element) -> String {
    serde_json::to_string(&ElementDocument::from_element(x)).expect("documents always serialize")
}

/// Parses `IDX=VAL` assignments at a given level, e.g. `["1=1", "10=-3/2"]`.
pub fn parse_assignments<S: AsRef<str>>(level: u32, items: &[S]) -> Result<Element> {
    let mut terms = Vec::with_capacity(items.len());
    for (pos, item) in items.iter().enumerate() {
        let item = item.as_ref();
        let (idx, val) = item.split_once('=').ok_or_else(|| {
            Error::input(format!("coefficient {} ({item:?}): expected IDX=VALUE", pos + 1))
        })?;
        let index: usize = idx.trim().parse().map_err(|_| {
            Error::input(format!("coefficient {} ({item:?}): bad index {idx:?}", pos + 1))
        })?;
        let value = parse_rational(val).map_err(|_| {
            Error::input(format!("coefficient {} ({item:?}): malformed rational {val:?}", pos + 1))
        })?;
        terms.push((index, value));
    }
    make_element(level, terms)
}

/// Parses the inline form `LEVEL:IDX=VAL,IDX=VAL,...`; `LEVEL:` alone is zero.
pub fn parse_inline(text: &str) -> Result<Element> {
    let (level, rest) = text
        .split_once(':')
        .ok_or_else(|| Error::input(format!("inline element {text:?}: expected LEVEL:IDX=VAL,...")))?;
    let level: u32 = level
        .trim()
        .parse()
        .map_err(|_| Error::input(format!("inline element {text:?}: bad level {level:?}")))?;
    let items: Vec<&str> = rest.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    parse_assignments(level, &items)
}

/// Inline form of an element, inverse of [`parse_inline`].
pub fn element_to_inline(x: &Element) -> String {
    let terms: Vec<String> = x
        .support()
        .map(|(p, c)| format!("{p}={}", format_rational(c)))
        .collect();
    format!("{}:{}", x.level(), terms.join(","))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub element: ElementDocument,
    pub claimed_ann_dim: usize,
    pub provenance: Provenance,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_basis: Option<Vec<ElementDocument>>,
}

impl CertificateDocument {
    pub fn from_certificate(c: &Certificate) -> Self {
        CertificateDocument {
            element: ElementDocument::from_element(&c.element),
            claimed_ann_dim: c.claimed_ann_dim,
            provenance: c.provenance.clone(),
            witness_basis: c
                .witness
                .as_ref()
                .map(|w| w.basis().iter().map(ElementDocument::from_element).collect()),
        }
    }

    pub fn to_certificate(&self) -> Result<Certificate> {
        let element = self.element.to_element()?;
        let witness = match &self.witness_basis {
            Some(docs) => {
                let vectors = docs.iter().map(|d| d.to_element()).collect::<Result<Vec<_>>>()?;
                Some(crate::linalg::Subspace::span(element.level(), &vectors)?)
            }
            None => None,
        };
        Ok(Certificate {
            element,
            claimed_ann_dim: self.claimed_ann_dim,
            provenance: self.provenance.clone(),
            witness,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn parse_examples() {
        let i = parse_element_json(r#"{"level":2,"coeffs":{"1":"1"}}"#).unwrap();
        assert_eq!(i, Element::basis(2, 1).unwrap());
        let zd = parse_element_json(r#"{"level":4,"coeffs":{"1":"1","10":"1"}}"#).unwrap();
        assert_eq!(zd, Element::from_ints(4, &[(1, 1), (10, 1)]).unwrap());
        let err = parse_element_json(r#"{"level":3,"coeffs":{"9":"1"}}"#).unwrap_err();
        assert!(err.to_string().contains("must be < 8"), "{err}");
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = parse_element_json("{\"level\":2,\n \"coeffs\":{\"x\":\"1\"}}").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        let err = parse_element_json(r#"{"level":2,"coeffs":{"1":"1/0"}}"#).unwrap_err();
        assert!(err.to_string().contains("coeffs key \"1\""), "{err}");
        assert!(parse_element_json(r#"{"level":2,"coeffs":{},"extra":1}"#).is_err());
        assert!(parse_element_json(r#"{"level":99,"coeffs":{}}"#).is_err());
    }

    #[test]
    fn round_trip() {
        let x = make_element(5, [(0, ratio(-7, 3)), (10, ratio(1, 2)), (31, ratio(5, 1))]).unwrap();
        let text = element_to_json(&x);
        assert_eq!(text, r#"{"level":5,"coeffs":{"0":"-7/3","10":"1/2","31":"5"}}"#);
        assert_eq!(parse_element_json(&text).unwrap(), x);
        assert_eq!(parse_inline(&element_to_inline(&x)).unwrap(), x);
    }

    #[test]
    fn integer_values_accepted() {
        let x = parse_element_json(r#"{"level":1,"coeffs":{"1":-2}}"#).unwrap();
        assert_eq!(x, Element::from_ints(1, &[(1, -2)]).unwrap());
    }

    #[test]
    fn inline_forms() {
        assert_eq!(parse_inline("4:1=1,10=1").unwrap(), Element::from_ints(4, &[(1, 1), (10, 1)]).unwrap());
        assert_eq!(parse_inline("3:").unwrap(), Element::zero(3).unwrap());
        assert!(parse_inline("3:8=1").is_err());
        assert!(parse_inline("1=1").is_err());
        assert!(parse_assignments(2, &["1:1"]).is_err());
    }

    #[test]
    fn certificate_round_trip() {
        let c = crate::constructions::element_with_ann_dim(5, 12).unwrap();
        let doc = CertificateDocument::from_certificate(&c);
        let text = serde_json::to_string(&doc).unwrap();
        let back: CertificateDocument = serde_json::from_str(&text).unwrap();
        let c2 = back.to_certificate().unwrap();
        assert_eq!(c2, c);
        c2.verify().unwrap();
    }
}
