//! Stable JSON form for polynomials and exact rationals.
//!
//! A polynomial serializes as
//!
//! ```json
//! {
//!   "vars": ["x", "y"],
//!   "terms": [
//!     { "exp": [2, 0], "num": "1", "den": "1" },
//!     { "exp": [0, 1], "num": "-1", "den": "2" }
//!   ]
//! }
//! ```
//!
//! with terms listed leading-first in the canonical graded-reverse-lex
//! order, numerators carrying the sign, and denominators positive. The
//! encoder always produces this shape byte-for-byte deterministically;
//! the decoder accepts any term order and re-canonicalizes.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::poly::{MultiPoly, PolyError, Rat};
use crate::vars::VariableTable;

/// Serialized polynomial.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

/// One serialized term.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u64>,
    pub num: String,
    pub den: String,
}

/// Encodes a polynomial into its canonical JSON structure.
pub fn poly_to_json(p: &MultiPoly) -> PolyJson {
    PolyJson {
        vars: p.table().names().to_vec(),
        terms: p
            .terms_desc()
            .map(|(m, c)| TermJson {
                exp: m.exponents().to_vec(),
                num: c.numer().to_string(),
                den: c.denom().to_string(),
            })
            .collect(),
    }
}

/// Encodes a polynomial as a compact JSON string.
pub fn poly_to_json_string(p: &MultiPoly) -> String {
    serde_json::to_string(&poly_to_json(p)).expect("polynomial JSON serializes")
}

/// Decodes a polynomial, building its table from the `vars` list.
pub fn poly_from_json(json: &PolyJson) -> Result<MultiPoly, PolyError> {
    let table = VariableTable::new(&json.vars)?;
    poly_from_json_with_table(&table, json)
}

/// Decodes a polynomial against an existing table, which must list the
/// same variables in the same order.
pub fn poly_from_json_with_table(
    table: &Arc<VariableTable>,
    json: &PolyJson,
) -> Result<MultiPoly, PolyError> {
    if table.names() != json.vars.as_slice() {
        return Err(PolyError::TableMismatch);
    }
    let mut terms = Vec::with_capacity(json.terms.len());
    for t in &json.terms {
        let num: BigInt = t
            .num
            .parse()
            .map_err(|_| PolyError::BadSerialization(format!("bad numerator {:?}", t.num)))?;
        let den: BigInt = t
            .den
            .parse()
            .map_err(|_| PolyError::BadSerialization(format!("bad denominator {:?}", t.den)))?;
        if den.is_zero() {
            return Err(PolyError::BadSerialization(
                "zero denominator in term".to_string(),
            ));
        }
        terms.push((t.exp.clone(), Rat::new(num, den)));
    }
    MultiPoly::from_terms(table, terms)
}

/// Decodes a polynomial from a JSON string.
pub fn poly_from_json_string(s: &str) -> Result<MultiPoly, PolyError> {
    let json: PolyJson = serde_json::from_str(s)
        .map_err(|e| PolyError::BadSerialization(e.to_string()))?;
    poly_from_json(&json)
}

/// Parses an exact rational from a string: `"3"`, `"-3"`, `"p/q"`.
pub fn rat_from_str(s: &str) -> Result<Rat, PolyError> {
    let s = s.trim();
    let bad = || PolyError::BadSerialization(format!("bad rational literal {s:?}"));
    match s.split_once('/') {
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rat::from(n))
        }
        Some((num, den)) => {
            let n: BigInt = num.trim().parse().map_err(|_| bad())?;
            let d: BigInt = den.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(n, d))
        }
    }
}

/// Formats an exact rational as `"p"` or `"p/q"` with positive
/// denominator; inverse of [`rat_from_str`].
pub fn rat_to_str(r: &Rat) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses a rational from a JSON value that is either a string literal
/// (`"1/3"`) or an integer number.
pub fn rat_from_value(v: &serde_json::Value) -> Result<Rat, PolyError> {
    match v {
        serde_json::Value::String(s) => rat_from_str(s),
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rat::from(BigInt::from(i)))
            } else {
                Err(PolyError::BadSerialization(format!(
                    "non-integer numeric literal {n}; write exact rationals as strings like \"1/3\""
                )))
            }
        }
        other => Err(PolyError::BadSerialization(format!(
            "expected rational literal, found {other}"
        ))),
    }
}

/// True when the rational is negative (helper shared by report builders).
pub fn rat_is_negative(r: &Rat) -> bool {
    r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    #[test]
    fn golden_serialization() {
        let t = VariableTable::new(&["x", "y"]).unwrap();
        let p = parse_poly(&t, "x^2 - 1/2*y").unwrap();
        let s = poly_to_json_string(&p);
        assert_eq!(
            s,
            r#"{"vars":["x","y"],"terms":[{"exp":[2,0],"num":"1","den":"1"},{"exp":[0,1],"num":"-1","den":"2"}]}"#
        );
        let back = poly_from_json_string(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn decoder_recanonicalizes() {
        // Unsorted input with a duplicate term and a zero term.
        let s = r#"{"vars":["x","y"],"terms":[
            {"exp":[0,1],"num":"1","den":"2"},
            {"exp":[2,0],"num":"1","den":"1"},
            {"exp":[0,1],"num":"-1","den":"1"},
            {"exp":[5,5],"num":"0","den":"3"}
        ]}"#;
        let p = poly_from_json_string(s).unwrap();
        let t = p.table().clone();
        assert_eq!(p, parse_poly(&t, "x^2 - 1/2*y").unwrap());
        assert_eq!(p.num_terms(), 2);
    }

    #[test]
    fn rejects_malformed_terms() {
        let s = r#"{"vars":["x"],"terms":[{"exp":[1,2],"num":"1","den":"1"}]}"#;
        assert!(poly_from_json_string(s).is_err());
        let s = r#"{"vars":["x"],"terms":[{"exp":[1],"num":"1","den":"0"}]}"#;
        assert!(poly_from_json_string(s).is_err());
        let s = r#"{"vars":["x"],"terms":[{"exp":[1],"num":"q","den":"1"}]}"#;
        assert!(poly_from_json_string(s).is_err());
    }

    #[test]
    fn rational_strings() {
        assert_eq!(rat_from_str("-3/6").unwrap(), Rat::new((-1).into(), 2.into()));
        assert_eq!(rat_to_str(&rat_from_str("7").unwrap()), "7");
        assert_eq!(rat_to_str(&rat_from_str("-14/4").unwrap()), "-7/2");
        assert!(rat_from_str("1/0").is_err());
        assert!(rat_from_str("x").is_err());
    }
}
