//! Bundled knot tables and injected invariant values.
//!
//! Two CSV tables ship with the crate: the full table of prime knots with
//! at most nine crossings (with PD codes rebuilt and verified by the
//! `gen_corpus` binary), and a list of knots whose Turaev genus is known
//! to be two from the literature. The second table carries no PD codes:
//! no reconstructible source for those diagrams is available, so entries
//! are names and citations only and downstream commands report them as
//! skipped. Injected invariant values (for invariants this crate does not
//! compute) are loaded from a JSON file; every injected value carries a
//! citation.

use std::collections::BTreeSet;

use num::{BigInt, BigRational};

use crate::diagram::Diagram;
use crate::error::{Error, Result};

const ROLFSEN_CSV: &str = include_str!("../data/rolfsen.csv");
const GENUS_TWO_CSV: &str = include_str!("../data/genus_two.csv");
const INJECTED_JSON: &str = include_str!("../data/injected.json");

/// One row of a knot table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    /// PD text; `None` when the table ships the entry without a diagram.
    pub pd: Option<String>,
    pub components: usize,
    pub citations: String,
}

impl CorpusEntry {
    /// Parse the entry's diagram.
    pub fn diagram(&self) -> Result<Diagram> {
        match &self.pd {
            Some(pd) => Diagram::parse_pd(pd),
            None => Err(Error::MissingData(format!(
                "entry {} ships without a diagram",
                self.name
            ))),
        }
    }
}

/// Split one CSV record, honouring double-quoted fields.
fn split_csv(line: &str, row: usize) -> Result<Vec<String>> {
    let mut fields = Vec::new();
    let mut cur = String::new();
    let mut quoted = false;
    let mut chars = line.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '"' if quoted => {
                if chars.peek() == Some(&'"') {
                    chars.next();
                    cur.push('"');
                } else {
                    quoted = false;
                }
            }
            '"' if cur.is_empty() => quoted = true,
            ',' if !quoted => {
                fields.push(std::mem::take(&mut cur));
            }
            _ => cur.push(c),
        }
    }
    if quoted {
        return Err(Error::Syntax(format!("row {row}: unterminated quote")));
    }
    fields.push(cur);
    Ok(fields)
}

/// Parse a knot-table CSV: UTF-8, `#` comment lines, optional header row
/// `name,pd,components,citations`, duplicate names rejected.
pub fn parse_corpus_csv(text: &str) -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    let mut seen: BTreeSet<String> = BTreeSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let row = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line == "name,pd,components,citations" {
            continue;
        }
        let fields = split_csv(line, row)?;
        if fields.len() != 4 {
            return Err(Error::Syntax(format!(
                "row {row}: expected 4 fields, found {}",
                fields.len()
            )));
        }
        let name = fields[0].trim().to_string();
        if name.is_empty() {
            return Err(Error::Syntax(format!("row {row}: empty name")));
        }
        if !seen.insert(name.clone()) {
            return Err(Error::Syntax(format!("row {row}: duplicate name {name}")));
        }
        let pd_text = fields[1].trim();
        let pd = if pd_text.is_empty() {
            None
        } else {
            // Validate eagerly so a bad row is reported with its number.
            Diagram::parse_pd(pd_text)
                .map_err(|e| Error::Syntax(format!("row {row}: bad PD: {e}")))?;
            Some(pd_text.to_string())
        };
        let components: usize = fields[2].trim().parse().map_err(|_| {
            Error::Syntax(format!("row {row}: bad component count {:?}", fields[2]))
        })?;
        out.push(CorpusEntry {
            name,
            pd,
            components,
            citations: fields[3].trim().to_string(),
        });
    }
    Ok(out)
}

/// The bundled table of all prime knots with at most nine crossings.
pub fn bundled_rolfsen() -> Vec<CorpusEntry> {
    parse_corpus_csv(ROLFSEN_CSV).expect("bundled table parses")
}

/// The bundled list of knots with Turaev genus two (names and citations
/// only; see module docs).
pub fn bundled_genus_two() -> Vec<CorpusEntry> {
    parse_corpus_csv(GENUS_TWO_CSV).expect("bundled table parses")
}

/// An injected invariant value: either an exact rational or an interval.
#[derive(Debug, Clone, PartialEq)]
pub enum InjectedValue {
    Exact(BigRational),
    Interval(BigRational, BigRational),
}

impl InjectedValue {
    pub fn endpoints(&self) -> (BigRational, BigRational) {
        match self {
            InjectedValue::Exact(v) => (v.clone(), v.clone()),
            InjectedValue::Interval(lo, hi) => (lo.clone(), hi.clone()),
        }
    }
}

/// One injected invariant record.
#[derive(Debug, Clone, PartialEq)]
pub struct InjectedRecord {
    pub knot: String,
    pub invariant: String,
    pub value: InjectedValue,
    pub citation: String,
}

/// Parse a rational written as `a` or `a/b`.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| Error::Syntax(format!("bad rational {text:?}")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| Error::Syntax(format!("bad rational {text:?}")))?;
    if d == BigInt::from(0) {
        return Err(Error::Syntax(format!("zero denominator in {text:?}")));
    }
    Ok(BigRational::new(n, d))
}

fn value_from_json(v: &serde_json::Value) -> Result<InjectedValue> {
    match v {
        serde_json::Value::String(s) => Ok(InjectedValue::Exact(parse_rational(s)?)),
        serde_json::Value::Number(n) => {
            let i = n
                .as_i64()
                .ok_or_else(|| Error::Syntax(format!("non-integer number {n}")))?;
            Ok(InjectedValue::Exact(BigRational::from_integer(i.into())))
        }
        serde_json::Value::Array(a) if a.len() == 2 => {
            let lo = value_from_json(&a[0])?;
            let hi = value_from_json(&a[1])?;
            match (lo, hi) {
                (InjectedValue::Exact(lo), InjectedValue::Exact(hi)) => {
                    Ok(InjectedValue::Interval(lo, hi))
                }
                _ => Err(Error::Syntax("nested interval".into())),
            }
        }
        other => Err(Error::Syntax(format!("bad injected value: {other}"))),
    }
}

/// Parse injected invariant records from JSON: an array of objects
/// `{knot, invariant, value, citation}` where `value` is a rational
/// string, an integer, or a 2-element `[lo, hi]` interval.
pub fn parse_injected(text: &str) -> Result<Vec<InjectedRecord>> {
    let root: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| Error::Syntax(format!("injected JSON: {e}")))?;
    let arr = root
        .as_array()
        .ok_or_else(|| Error::Syntax("injected JSON: expected an array".into()))?;
    let mut out = Vec::new();
    for (idx, item) in arr.iter().enumerate() {
        let obj = item
            .as_object()
            .ok_or_else(|| Error::Syntax(format!("injected record {idx}: not an object")))?;
        let get = |key: &str| -> Result<&serde_json::Value> {
            obj.get(key)
                .ok_or_else(|| Error::Syntax(format!("injected record {idx}: missing {key}")))
        };
        let knot = get("knot")?
            .as_str()
            .ok_or_else(|| Error::Syntax(format!("injected record {idx}: knot not a string")))?
            .to_string();
        let invariant = get("invariant")?
            .as_str()
            .ok_or_else(|| {
                Error::Syntax(format!("injected record {idx}: invariant not a string"))
            })?
            .to_string();
        let citation = get("citation")?
            .as_str()
            .ok_or_else(|| {
                Error::Syntax(format!("injected record {idx}: citation not a string"))
            })?
            .to_string();
        if citation.trim().is_empty() {
            return Err(Error::Syntax(format!(
                "injected record {idx}: empty citation"
            )));
        }
        let value = value_from_json(get("value")?)?;
        out.push(InjectedRecord {
            knot,
            invariant,
            value,
            citation,
        });
    }
    Ok(out)
}

/// The bundled injected-invariant records.
pub fn bundled_injected() -> Vec<InjectedRecord> {
    parse_injected(INJECTED_JSON).expect("bundled injected data parses")
}

/// Look up an injected record by knot and invariant name.
pub fn injected_lookup<'a>(
    records: &'a [InjectedRecord],
    knot: &str,
    invariant: &str,
) -> Option<&'a InjectedRecord> {
    records
        .iter()
        .find(|r| r.knot == knot && r.invariant == invariant)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_table_loads_and_parses() {
        let entries = bundled_rolfsen();
        assert!(entries.len() >= 84, "table has {} entries", entries.len());
        for e in &entries {
            let d = e.diagram().unwrap();
            assert!(d.is_knot(), "{} is not a knot", e.name);
            assert_eq!(e.components, 1);
            assert!(!e.citations.is_empty());
        }
    }

    #[test]
    fn genus_two_table_is_diagramless() {
        let entries = bundled_genus_two();
        assert_eq!(entries.len(), 12);
        for e in &entries {
            assert!(e.pd.is_none());
            assert!(e.diagram().is_err());
        }
    }

    #[test]
    fn empty_and_malformed_inputs() {
        assert_eq!(parse_corpus_csv("").unwrap(), vec![]);
        assert_eq!(parse_corpus_csv("# only a comment\n").unwrap(), vec![]);
        let bad = "name,pd,components,citations\nk1,\"PD[X[1,1]]\",1,\"c\"\n";
        let err = parse_corpus_csv(bad).unwrap_err();
        assert!(err.to_string().contains("row 2"), "{err}");
        let dup = "a,,1,c\na,,1,c\n";
        assert!(parse_corpus_csv(dup).is_err());
    }

    #[test]
    fn injected_records_load() {
        let records = bundled_injected();
        assert!(!records.is_empty());
        for r in &records {
            assert!(!r.citation.is_empty());
        }
        let r = injected_lookup(&records, "K(2,1)", "limsup_s_n_over_n").unwrap();
        assert_eq!(
            r.value,
            InjectedValue::Exact(BigRational::from_integer(0.into()))
        );
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3").unwrap(), BigRational::from_integer(3.into()));
        assert_eq!(
            parse_rational("-4/6").unwrap(),
            BigRational::new((-2).into(), 3.into())
        );
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
