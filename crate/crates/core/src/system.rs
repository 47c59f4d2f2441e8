//! Planar polynomial differential systems `x' = P(x, y)`, `y' = Q(x, y)`.
//!
//! `P` and `Q` are [`MultiPoly`] values that may carry symbolic parameters
//! besides the two phase variables; [`PlanarSystem::bind`] specializes the
//! parameters to rationals. The phase variables are always the table
//! entries named `x` and `y`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::jsonio::{rat_from_value, rat_to_str};
use crate::parse::parse_poly;
use crate::poly::{MultiPoly, PolyError, Rat};
use crate::vars::VariableTable;

/// Errors specific to system construction and I/O.
#[derive(Debug, Error)]
pub enum SystemError {
    #[error("system table must contain variables named \"x\" and \"y\"")]
    MissingPhaseVariables,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("invalid system description: {0}")]
    BadDescription(String),
}

/// A planar polynomial vector field.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanarSystem {
    p: MultiPoly,
    q: MultiPoly,
    x: usize,
    y: usize,
}

impl PlanarSystem {
    /// Builds a system from the two component polynomials, which must share
    /// a table containing variables `x` and `y`.
    pub fn new(p: MultiPoly, q: MultiPoly) -> Result<Self, SystemError> {
        if !p.table().compatible(q.table()) {
            return Err(SystemError::Poly(PolyError::TableMismatch));
        }
        let table = p.table();
        let (x, y) = match (table.index("x"), table.index("y")) {
            (Some(x), Some(y)) => (x, y),
            _ => return Err(SystemError::MissingPhaseVariables),
        };
        Ok(PlanarSystem { p, q, x, y })
    }

    /// Parses the two components from expression strings over `table`.
    pub fn parse(
        table: &Arc<VariableTable>,
        p: &str,
        q: &str,
    ) -> Result<Self, SystemError> {
        Ok(PlanarSystem::new(
            parse_poly(table, p)?,
            parse_poly(table, q)?,
        )?)
    }

    pub fn p(&self) -> &MultiPoly {
        &self.p
    }

    pub fn q(&self) -> &MultiPoly {
        &self.q
    }

    pub fn table(&self) -> &Arc<VariableTable> {
        self.p.table()
    }

    /// Index of the phase variable `x` in the table.
    pub fn x_idx(&self) -> usize {
        self.x
    }

    /// Index of the phase variable `y` in the table.
    pub fn y_idx(&self) -> usize {
        self.y
    }

    /// Degree of the system: the maximum total degree of `P` and `Q`
    /// counted in the phase variables only. `None` when both are zero.
    pub fn degree(&self) -> Option<u64> {
        let vars = [self.x, self.y];
        self.p
            .degree_in(&vars)
            .into_iter()
            .chain(self.q.degree_in(&vars))
            .max()
    }

    /// True when no symbolic parameter occurs (only `x`, `y`).
    pub fn is_numeric(&self) -> bool {
        let vars = [self.x, self.y];
        self.p.uses_only(&vars) && self.q.uses_only(&vars)
    }

    /// Replaces named parameters by rational values.
    pub fn bind(&self, values: &BTreeMap<String, Rat>) -> Result<PlanarSystem, SystemError> {
        let table = self.table();
        let mut by_idx = BTreeMap::new();
        for (name, v) in values {
            let idx = table.require(name)?;
            if idx == self.x || idx == self.y {
                return Err(SystemError::BadDescription(format!(
                    "cannot bind phase variable {name:?} to a constant"
                )));
            }
            by_idx.insert(idx, v.clone());
        }
        Ok(PlanarSystem {
            p: self.p.bind(&by_idx),
            q: self.q.bind(&by_idx),
            x: self.x,
            y: self.y,
        })
    }

    /// Homogeneous component of degree `k` (in the phase variables) of
    /// both components.
    pub fn homogeneous_component(&self, k: u64) -> (MultiPoly, MultiPoly) {
        let vars = [self.x, self.y];
        (
            self.p.homogeneous_component(k, &vars),
            self.q.homogeneous_component(k, &vars),
        )
    }

    /// Evaluates the field at a rational point (parameters must already be
    /// bound).
    pub fn eval(&self, x: &Rat, y: &Rat) -> Result<(Rat, Rat), SystemError> {
        let mut vals = BTreeMap::new();
        vals.insert(self.x, x.clone());
        vals.insert(self.y, y.clone());
        Ok((self.p.eval(&vals)?, self.q.eval(&vals)?))
    }

    /// The Jacobian matrix entries `[[P_x, P_y], [Q_x, Q_y]]`.
    pub fn jacobian(&self) -> [[MultiPoly; 2]; 2] {
        [
            [self.p.diff_idx(self.x), self.p.diff_idx(self.y)],
            [self.q.diff_idx(self.x), self.q.diff_idx(self.y)],
        ]
    }

    /// Applies `(x, y, t) -> (x, y, -t)`: negates both components.
    pub fn time_reversed(&self) -> PlanarSystem {
        PlanarSystem {
            p: -&self.p,
            q: -&self.q,
            x: self.x,
            y: self.y,
        }
    }
}

/// On-disk JSON description of a system:
///
/// ```json
/// {
///   "vars": ["x", "y", "a3", "a5"],
///   "p": "y",
///   "q": "-x + a3*x^3*y^2 + a5*x^5",
///   "bind": { "a3": "-1", "a5": "0" }
/// }
/// ```
///
/// `vars` is optional and defaults to the canonical nine-variable table;
/// `bind` is optional. Rational values may be strings (`"1/3"`) or
/// integers.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SystemDescription {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vars: Option<Vec<String>>,
    pub p: String,
    pub q: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bind: Option<BTreeMap<String, serde_json::Value>>,
}

impl SystemDescription {
    /// Parses a JSON string into a description.
    pub fn from_json_str(s: &str) -> Result<Self, SystemError> {
        serde_json::from_str(s).map_err(|e| SystemError::BadDescription(e.to_string()))
    }

    /// Builds the (bound) system this description denotes.
    pub fn build(&self) -> Result<PlanarSystem, SystemError> {
        let table = match &self.vars {
            None => VariableTable::canonical(),
            Some(names) => VariableTable::new(names)?,
        };
        let sys = PlanarSystem::parse(&table, &self.p, &self.q)?;
        match &self.bind {
            None => Ok(sys),
            Some(binds) => {
                let mut values = BTreeMap::new();
                for (name, v) in binds {
                    values.insert(name.clone(), rat_from_value(v)?);
                }
                sys.bind(&values)
            }
        }
    }

    /// Describes an already-built numeric or symbolic system.
    pub fn from_system(sys: &PlanarSystem) -> Self {
        SystemDescription {
            vars: Some(sys.table().names().to_vec()),
            p: sys.p().to_string(),
            q: sys.q().to_string(),
            bind: None,
        }
    }
}

/// Formats a rational point for reports.
pub fn point_to_strings(x: &Rat, y: &Rat) -> [String; 2] {
    [rat_to_str(x), rat_to_str(y)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat_int;

    #[test]
    fn build_and_bind() {
        let d = SystemDescription {
            vars: None,
            p: "y".into(),
            q: "-x + a5*x^5 + a3*x^3*y^2".into(),
            bind: Some(
                [
                    ("a5".to_string(), serde_json::json!("-1")),
                    ("a3".to_string(), serde_json::json!(2)),
                ]
                .into_iter()
                .collect(),
            ),
        };
        let sys = d.build().unwrap();
        assert!(sys.is_numeric());
        assert_eq!(sys.degree(), Some(5));
        let (px, qx) = sys.eval(&rat_int(1), &rat_int(1)).unwrap();
        assert_eq!(px, rat_int(1));
        // -1 + (-1)*1 + 2*1 = 0
        assert_eq!(qx, rat_int(0));
    }

    #[test]
    fn degree_counts_phase_variables_only() {
        let t = VariableTable::canonical();
        let sys = PlanarSystem::parse(&t, "y", "-x + a0*a1*a2*y^2").unwrap();
        assert_eq!(sys.degree(), Some(2));
        assert!(!sys.is_numeric());
    }

    #[test]
    fn rejects_tables_without_phase_variables() {
        let t = VariableTable::new(&["u", "v"]).unwrap();
        let p = parse_poly(&t, "u").unwrap();
        let q = parse_poly(&t, "v").unwrap();
        assert!(matches!(
            PlanarSystem::new(p, q),
            Err(SystemError::MissingPhaseVariables)
        ));
    }
}
