//! Ordered variable tables shared by polynomials.
//!
//! A [`VariableTable`] fixes the names and the significance order of the
//! variables a polynomial may mention. Two polynomials interoperate only
//! when their tables agree (same names, same order); every arithmetic
//! entry point checks this. Tables compare by content, so independently
//! constructed tables with the same names are interchangeable.

use std::fmt;
use std::sync::Arc;

use crate::poly::PolyError;

/// Variable names used by the built-in quintic family, in significance
/// order: phase variables first, then the six family parameters, then the
/// auxiliary variable reserved for radical-membership computations.
pub const CANONICAL_NAMES: [&str; 9] = ["x", "y", "a0", "a1", "a2", "a3", "a4", "a5", "w"];

/// An immutable, ordered list of distinct variable names.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct VariableTable {
    names: Vec<String>,
}

impl VariableTable {
    /// Builds a table from the given names. Names must be distinct,
    /// nonempty, start with a letter or `_`, and continue with
    /// alphanumerics or `_`.
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Arc<Self>, PolyError> {
        let mut seen: Vec<&str> = Vec::with_capacity(names.len());
        for name in names {
            let name = name.as_ref();
            if !is_identifier(name) {
                return Err(PolyError::BadVariableName(name.to_string()));
            }
            if seen.contains(&name) {
                return Err(PolyError::DuplicateVariable(name.to_string()));
            }
            seen.push(name);
        }
        Ok(Arc::new(VariableTable {
            names: names.iter().map(|s| s.as_ref().to_string()).collect(),
        }))
    }

    /// The nine-variable table used throughout the quintic-family tooling:
    /// `x, y, a0, a1, a2, a3, a4, a5, w`.
    pub fn canonical() -> Arc<Self> {
        VariableTable::new(&CANONICAL_NAMES).expect("canonical names are valid")
    }

    /// Number of variables.
    pub fn len(&self) -> usize {
        self.names.len()
    }

    /// True when the table has no variables (constants only).
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// The index of `name`, if present.
    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// The index of `name`, or an error naming the unknown variable.
    pub fn require(&self, name: &str) -> Result<usize, PolyError> {
        self.index(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }

    /// The name at `idx`.
    pub fn name(&self, idx: usize) -> &str {
        &self.names[idx]
    }

    /// All names in order.
    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// True when two tables are interchangeable (identical name lists).
    pub fn compatible(&self, other: &VariableTable) -> bool {
        std::ptr::eq(self, other) || self.names == other.names
    }
}

impl fmt::Display for VariableTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.names.join(", "))
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_table_layout() {
        let t = VariableTable::canonical();
        assert_eq!(t.len(), 9);
        assert_eq!(t.index("x"), Some(0));
        assert_eq!(t.index("y"), Some(1));
        assert_eq!(t.index("a0"), Some(2));
        assert_eq!(t.index("a5"), Some(7));
        assert_eq!(t.index("w"), Some(8));
        assert_eq!(t.index("z"), None);
    }

    #[test]
    fn rejects_duplicates_and_bad_names() {
        assert!(VariableTable::new(&["x", "x"]).is_err());
        assert!(VariableTable::new(&["1x"]).is_err());
        assert!(VariableTable::new(&[""]).is_err());
        assert!(VariableTable::new(&["x y"]).is_err());
        assert!(VariableTable::new(&["_ok", "b2"]).is_ok());
    }

    #[test]
    fn content_equality() {
        let a = VariableTable::new(&["u", "v"]).unwrap();
        let b = VariableTable::new(&["u", "v"]).unwrap();
        let c = VariableTable::new(&["v", "u"]).unwrap();
        assert!(a.compatible(&b));
        assert!(!a.compatible(&c));
    }
}
