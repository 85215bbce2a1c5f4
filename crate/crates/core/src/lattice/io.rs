use serde::{Deserialize, Serialize, Serializer};
use serde_json::Value;

use super::IntegerLattice;
use crate::error::{Error, Result};
use crate::numberfield::{format_rational, parse_rational, Rational};

pub(crate) fn ser_rational<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

/// On-disk lattice: `{"rank": n, "gram": [[..]], "basis": [[..]]?}` with
/// entries as rational strings (`"3"`, `"-1/2"`) or JSON integers. Unknown
/// fields are ignored.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatticeFile {
    pub rank: usize,
    pub gram: Vec<Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<Value>>>,
}

fn entry(v: &Value, field: String) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| Error::parse(field, e.to_string())),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Rational::from_integer(i.into())),
            None => Err(Error::parse(field, format!("{n} is not an integer; write fractions as strings"))),
        },
        other => Err(Error::parse(field, format!("expected a rational, found {other}"))),
    }
}

fn matrix(rows: &[Vec<Value>], name: &str, rows_expected: usize, cols_expected: Option<usize>) -> Result<Vec<Vec<Rational>>> {
    if rows.len() != rows_expected {
        return Err(Error::parse(name, format!("expected {rows_expected} rows, found {}", rows.len())));
    }
    rows.iter()
        .enumerate()
        .map(|(i, r)| {
            let cols = cols_expected.unwrap_or(rows_expected);
            if r.len() != cols {
                return Err(Error::parse(format!("{name}[{i}]"), format!("expected {cols} entries, found {}", r.len())));
            }
            r.iter()
                .enumerate()
                .map(|(j, v)| entry(v, format!("{name}[{i}][{j}]")))
                .collect()
        })
        .collect()
}

/// Parses and validates a lattice file; syntax errors carry line and column.
pub fn lattice_from_json(text: &str) -> Result<IntegerLattice> {
    let file: LatticeFile = serde_json::from_str(text).map_err(|e| {
        Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string())
    })?;
    let gram = matrix(&file.gram, "gram", file.rank, None)?;
    let lattice = match &file.basis {
        None => IntegerLattice::from_gram(gram)?,
        Some(b) => {
            let cols = b.first().map_or(0, Vec::len);
            let basis = matrix(b, "basis", file.rank, Some(cols))?;
            let l = IntegerLattice::from_basis(basis)?;
            if *l.gram() != gram {
                return Err(Error::parse("gram", "does not equal basis · basisᵀ"));
            }
            l
        }
    };
    Ok(lattice)
}

pub fn lattice_to_json(l: &IntegerLattice) -> serde_json::Value {
    let strings = |m: &[Vec<Rational>]| -> Vec<Vec<Value>> {
        m.iter().map(|r| r.iter().map(|v| Value::String(format_rational(v))).collect()).collect()
    };
    serde_json::to_value(LatticeFile {
        rank: l.rank(),
        gram: strings(l.gram()),
        basis: l.basis().map(|b| strings(b)),
    })
    .expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::e8_standard_basis;

    #[test]
    fn round_trip() {
        let e8 = e8_standard_basis();
        let text = serde_json::to_string_pretty(&lattice_to_json(&e8)).unwrap();
        let back = lattice_from_json(&text).unwrap();
        assert_eq!(back, e8);
    }

    #[test]
    fn integer_entries_and_extra_fields() {
        let l = lattice_from_json(r#"{"rank": 2, "gram": [[2, -1], ["-1", "2"]], "note": "A2"}"#).unwrap();
        assert_eq!(l.rank(), 2);
    }

    #[test]
    fn diagnostics_name_the_field() {
        let err = lattice_from_json(r#"{"rank": 2, "gram": [[2, -1], ["-1", "x"]]}"#).unwrap_err();
        assert!(matches!(&err, Error::Parse { field, .. } if field == "gram[1][1]"), "{err}");
        let err = lattice_from_json(r#"{"rank": 3, "gram": [[2, -1], [-1, 2]]}"#).unwrap_err();
        assert!(matches!(&err, Error::Parse { field, .. } if field == "gram"), "{err}");
        let err = lattice_from_json("{\"rank\": 2,\n \"gram\": [[2, -1] [-1, 2]]}").unwrap_err();
        assert!(matches!(&err, Error::Parse { field, .. } if field.starts_with("line 2")), "{err}");
        let err = lattice_from_json(r#"{"rank": 2, "gram": [[2, 0], [1, 2]]}"#).unwrap_err();
        assert!(matches!(err, Error::MalformedLattice(_)));
    }
}
