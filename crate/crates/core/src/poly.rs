//! Sparse multivariate polynomials over arbitrary-precision rationals.
//!
//! Terms are stored in a `BTreeMap` keyed by [`Monomial`], whose `Ord`
//! implementation is graded reverse-lexicographic with respect to the
//! table's variable order. That gives every polynomial a canonical term
//! sequence used by `Display`, the JSON form, and the golden tests.
//!
//! Coefficients are `num_rational::BigRational`; all arithmetic is exact.
//! Exponent arithmetic is checked: overflow aborts with a panic rather
//! than wrapping, since a wrapped exponent would silently corrupt results.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::vars::VariableTable;

/// Exact rational scalar used for all symbolic coefficients.
pub type Rat = BigRational;

/// Shorthand for a rational from an integer pair. Panics when `den == 0`.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an integer rational.
pub fn rat_int(num: i64) -> Rat {
    Rat::from(BigInt::from(num))
}

/// Errors from polynomial construction, parsing and arithmetic.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("variable name {0:?} is not a valid identifier")]
    BadVariableName(String),
    #[error("duplicate variable name {0:?}")]
    DuplicateVariable(String),
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("variable index {index} out of range for table of {len} variables")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("operands use different variable tables")]
    TableMismatch,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("polynomial is not univariate in {0:?}")]
    NotUnivariate(String),
    #[error("division is not exact")]
    InexactDivision,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("variable {0:?} is not bound to a value")]
    UnboundVariable(String),
    #[error("invalid serialized polynomial: {0}")]
    BadSerialization(String),
}

/// Exponent vector of a single term, one entry per table variable.
///
/// Ordering is graded reverse-lexicographic: higher total degree first;
/// among equal degrees, the monomial whose *last* differing exponent is
/// *smaller* compares as larger.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub(crate) Vec<u64>);

impl Monomial {
    pub fn unit(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        let mut e = vec![0; nvars];
        e[idx] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u64] {
        &self.0
    }

    pub fn total_degree(&self) -> u64 {
        let deg: u128 = self.0.iter().map(|&e| e as u128).sum();
        u64::try_from(deg).expect("monomial degree overflows u64")
    }

    /// Degree counted over the listed variable indices only.
    pub fn degree_in(&self, vars: &[usize]) -> u64 {
        vars.iter().map(|&i| self.0[i]).sum()
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Product of two exponent vectors; panics on exponent overflow.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.checked_add(b).expect("monomial exponent overflow"))
                .collect(),
        )
    }

    /// True when `self` divides `other` componentwise.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a <= b)
    }

    /// Componentwise quotient; caller must ensure divisibility.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.checked_sub(b).expect("monomial quotient underflow"))
                .collect(),
        )
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        )
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.0.len(), other.0.len(), "monomial arity mismatch");
        let da: u128 = self.0.iter().map(|&e| e as u128).sum();
        let db: u128 = other.0.iter().map(|&e| e as u128).sum();
        match da.cmp(&db) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for i in (0..self.0.len()).rev() {
            match self.0[i].cmp(&other.0[i]) {
                Ordering::Equal => {}
                // Reverse-lex: smaller trailing exponent wins.
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A sparse multivariate polynomial bound to a [`VariableTable`].
#[derive(Debug, Clone)]
pub struct MultiPoly {
    table: Arc<VariableTable>,
    terms: BTreeMap<Monomial, Rat>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.table.compatible(&other.table) && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl MultiPoly {
    // ----- constructors ---------------------------------------------------

    pub fn zero(table: &Arc<VariableTable>) -> Self {
        MultiPoly {
            table: Arc::clone(table),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(table: &Arc<VariableTable>, value: Rat) -> Self {
        let mut p = MultiPoly::zero(table);
        if !value.is_zero() {
            p.terms.insert(Monomial::unit(table.len()), value);
        }
        p
    }

    pub fn one(table: &Arc<VariableTable>) -> Self {
        MultiPoly::constant(table, Rat::one())
    }

    /// The polynomial `name`, which must be a table variable.
    pub fn var(table: &Arc<VariableTable>, name: &str) -> Result<Self, PolyError> {
        let idx = table.require(name)?;
        Ok(MultiPoly::var_idx(table, idx))
    }

    /// The polynomial given by variable index `idx`.
    pub fn var_idx(table: &Arc<VariableTable>, idx: usize) -> Self {
        assert!(idx < table.len(), "variable index out of range");
        let mut p = MultiPoly::zero(table);
        p.terms.insert(Monomial::var(table.len(), idx), Rat::one());
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs,
    /// accumulating duplicates and dropping zeros.
    pub fn from_terms<I>(table: &Arc<VariableTable>, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Vec<u64>, Rat)>,
    {
        let mut p = MultiPoly::zero(table);
        for (exps, coeff) in terms {
            if exps.len() != table.len() {
                return Err(PolyError::BadSerialization(format!(
                    "term has {} exponents but the table has {} variables",
                    exps.len(),
                    table.len()
                )));
            }
            p.add_term(Monomial(exps), coeff);
        }
        Ok(p)
    }

    // ----- accessors ------------------------------------------------------

    pub fn table(&self) -> &Arc<VariableTable> {
        &self.table
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    /// Terms in descending canonical order (leading term first).
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter().rev()
    }

    /// Leading term under the canonical internal order.
    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    /// Coefficient of an exact exponent vector (zero when absent).
    pub fn coeff(&self, exps: &[u64]) -> Rat {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    /// The constant term.
    pub fn constant_term(&self) -> Rat {
        self.terms
            .get(&Monomial::unit(self.table.len()))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    /// Total degree over all variables; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    /// Max degree counted over the listed variables; `None` when zero.
    pub fn degree_in(&self, vars: &[usize]) -> Option<u64> {
        self.terms.keys().map(|m| m.degree_in(vars)).max()
    }

    /// True when every term has zero exponent outside `vars`.
    pub fn uses_only(&self, vars: &[usize]) -> bool {
        self.terms.keys().all(|m| {
            m.0.iter()
                .enumerate()
                .all(|(i, &e)| e == 0 || vars.contains(&i))
        })
    }

    /// Variable indices that actually occur.
    pub fn support_vars(&self) -> Vec<usize> {
        let n = self.table.len();
        let mut used = vec![false; n];
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    used[i] = true;
                }
            }
        }
        (0..n).filter(|&i| used[i]).collect()
    }

    // ----- term-level editing --------------------------------------------

    pub(crate) fn add_term(&mut self, mono: Monomial, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn assert_compatible(&self, other: &MultiPoly) {
        assert!(
            self.table.compatible(&other.table),
            "polynomial arithmetic across different variable tables"
        );
    }

    /// Table-checked addition for callers that must not panic.
    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        if !self.table.compatible(&other.table) {
            return Err(PolyError::TableMismatch);
        }
        Ok(self + other)
    }

    /// Table-checked multiplication for callers that must not panic.
    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        if !self.table.compatible(&other.table) {
            return Err(PolyError::TableMismatch);
        }
        Ok(self * other)
    }

    // ----- algebra ---------------------------------------------------------

    pub fn scale(&self, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.table);
        }
        MultiPoly {
            table: Arc::clone(&self.table),
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, exp: u64) -> MultiPoly {
        let mut result = MultiPoly::one(&self.table);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Partial derivative with respect to variable index `var`.
    pub fn diff_idx(&self, var: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.table);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[var] = e - 1;
            out.add_term(Monomial(exps), c * Rat::from(BigInt::from(e)));
        }
        out
    }

    /// Partial derivative with respect to the named variable.
    pub fn diff(&self, var: &str) -> Result<MultiPoly, PolyError> {
        Ok(self.diff_idx(self.table.require(var)?))
    }

    /// Sum of the terms whose degree over `vars` equals `k`.
    pub fn homogeneous_component(&self, k: u64, vars: &[usize]) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.table);
        for (m, c) in &self.terms {
            if m.degree_in(vars) == k {
                out.terms.insert(m.clone(), c.clone());
            }
        }
        out
    }

    /// Substitutes polynomials for variables: index `i` becomes `map[i]`
    /// when bound, else stays `x_i`. All bound polynomials must share this
    /// polynomial's table.
    pub fn substitute(&self, map: &BTreeMap<usize, MultiPoly>) -> Result<MultiPoly, PolyError> {
        for p in map.values() {
            if !self.table.compatible(&p.table) {
                return Err(PolyError::TableMismatch);
            }
        }
        let mut out = MultiPoly::zero(&self.table);
        // Cache powers of each substituted image as they are needed.
        let mut pow_cache: BTreeMap<(usize, u64), MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut term = MultiPoly::constant(&self.table, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match map.get(&i) {
                    None => {
                        let mut exps = vec![0; self.table.len()];
                        exps[i] = e;
                        term = term.mul_monomial(&Monomial(exps), &Rat::one());
                    }
                    Some(img) => {
                        let key = (i, e);
                        if !pow_cache.contains_key(&key) {
                            let p = img.pow(e);
                            pow_cache.insert(key, p);
                        }
                        term = &term * &pow_cache[&key];
                    }
                }
            }
            out += &term;
        }
        Ok(out)
    }

    /// Replaces the listed variables by rational constants, leaving the
    /// rest symbolic.
    pub fn bind(&self, values: &BTreeMap<usize, Rat>) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.table);
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut exps = m.0.clone();
            for (&i, v) in values {
                let e = exps[i];
                if e > 0 {
                    coeff *= pow_rat(v, e);
                    exps[i] = 0;
                }
            }
            out.add_term(Monomial(exps), coeff);
        }
        out
    }

    /// Evaluates at a full rational point. Every variable that occurs must
    /// be bound.
    pub fn eval(&self, values: &BTreeMap<usize, Rat>) -> Result<Rat, PolyError> {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let v = values
                    .get(&i)
                    .ok_or_else(|| PolyError::UnboundVariable(self.table.name(i).to_string()))?;
                term *= pow_rat(v, e);
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Multiplies by a single scaled monomial (fast path used by division
    /// and substitution).
    pub(crate) fn mul_monomial(&self, mono: &Monomial, coeff: &Rat) -> MultiPoly {
        if coeff.is_zero() {
            return MultiPoly::zero(&self.table);
        }
        MultiPoly {
            table: Arc::clone(&self.table),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul(mono), c * coeff))
                .collect(),
        }
    }

    /// Exact polynomial division: returns `q` with `self == q * divisor`,
    /// or an error when no such polynomial exists.
    pub fn exact_div(&self, divisor: &MultiPoly) -> Result<MultiPoly, PolyError> {
        if !self.table.compatible(&divisor.table) {
            return Err(PolyError::TableMismatch);
        }
        if divisor.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let (dm, dc) = divisor.leading().expect("nonzero divisor");
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(&self.table);
        while let Some((lm, lc)) = rem.leading() {
            if !dm.divides(lm) {
                return Err(PolyError::InexactDivision);
            }
            let qm = lm.div(dm);
            let qc = lc / dc;
            quot.add_term(qm.clone(), qc.clone());
            rem -= &divisor.mul_monomial(&qm, &qc);
        }
        Ok(quot)
    }

    /// Divides by `x_var^k`, failing unless every term is divisible.
    pub fn div_var_power(&self, var: usize, k: u64) -> Result<MultiPoly, PolyError> {
        let mut out = MultiPoly::zero(&self.table);
        for (m, c) in &self.terms {
            if m.0[var] < k {
                return Err(PolyError::InexactDivision);
            }
            let mut exps = m.0.clone();
            exps[var] -= k;
            out.terms.insert(Monomial(exps), c.clone());
        }
        Ok(out)
    }

    /// The largest `k` such that `x_var^k` divides this polynomial
    /// (zero polynomial reports `None`).
    pub fn max_var_power(&self, var: usize) -> Option<u64> {
        self.terms.keys().map(|m| m.0[var]).min()
    }

    /// Coefficients of `self` viewed as a univariate polynomial in `var`,
    /// ascending by power; each coefficient is a polynomial in the other
    /// variables. Empty for the zero polynomial.
    pub fn coeffs_in(&self, var: usize) -> Vec<MultiPoly> {
        let deg = match self.terms.keys().map(|m| m.0[var]).max() {
            None => return Vec::new(),
            Some(d) => d,
        };
        let deg = usize::try_from(deg).expect("degree fits in usize");
        let mut out = vec![MultiPoly::zero(&self.table); deg + 1];
        for (m, c) in &self.terms {
            let e = m.0[var] as usize;
            let mut exps = m.0.clone();
            exps[var] = 0;
            out[e].add_term(Monomial(exps), c.clone());
        }
        out
    }

    /// Dense coefficient vector (ascending powers) of a polynomial that
    /// must be univariate in `var`. Empty for zero.
    pub fn to_unipoly(&self, var: usize) -> Result<Vec<Rat>, PolyError> {
        if !self.uses_only(&[var]) {
            return Err(PolyError::NotUnivariate(self.table.name(var).to_string()));
        }
        let deg = match self.terms.keys().map(|m| m.0[var]).max() {
            None => return Ok(Vec::new()),
            Some(d) => d as usize,
        };
        let mut out = vec![Rat::zero(); deg + 1];
        for (m, c) in &self.terms {
            out[m.0[var] as usize] = c.clone();
        }
        Ok(out)
    }

    /// Rational content: the positive rational `r` such that `self / r`
    /// has coprime integer coefficients. Zero for the zero polynomial.
    pub fn content(&self) -> Rat {
        use num_integer::Integer;
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        if num_gcd.is_zero() {
            Rat::zero()
        } else {
            Rat::new(num_gcd, den_lcm)
        }
    }

    /// `self / content`, with sign chosen so the leading coefficient is
    /// positive. Zero stays zero.
    pub fn primitive_part(&self) -> MultiPoly {
        let c = self.content();
        if c.is_zero() {
            return self.clone();
        }
        let mut p = self.scale(&c.recip());
        if let Some((_, lc)) = p.leading() {
            if lc.is_negative() {
                p = -&p;
            }
        }
        p
    }

    /// Scales so the leading coefficient is 1. Zero stays zero.
    pub fn monic(&self) -> MultiPoly {
        match self.leading() {
            None => self.clone(),
            Some((_, lc)) => {
                let inv = lc.clone().recip();
                self.scale(&inv)
            }
        }
    }
}

fn pow_rat(base: &Rat, exp: u64) -> Rat {
    let mut result = Rat::one();
    let mut b = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result *= &b;
        }
        e >>= 1;
        if e > 0 {
            b = &b * &b;
        }
    }
    result
}

// ----- operator impls -------------------------------------------------------

impl std::ops::AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        self.assert_compatible(rhs);
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl std::ops::SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &MultiPoly) {
        self.assert_compatible(rhs);
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl std::ops::Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl std::ops::Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl std::ops::Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            table: Arc::clone(&self.table),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl std::ops::Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.assert_compatible(rhs);
        let mut out = MultiPoly::zero(&self.table);
        // Multiply the smaller polynomial into the larger one.
        let (a, b) = if self.num_terms() <= rhs.num_terms() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

// ----- display ---------------------------------------------------------------

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms_desc() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_unit() {
                factors.push(format_rat(&abs));
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.table.name(i).to_string()),
                    _ => factors.push(format!("{}^{}", self.table.name(i), e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// Formats a nonnegative rational as `p` or `p/q`.
fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn table() -> Arc<VariableTable> {
        VariableTable::canonical()
    }

    fn p(s: &str) -> MultiPoly {
        parse_poly(&table(), s).unwrap()
    }

    #[test]
    fn grevlex_order_on_monomials() {
        // In grevlex with x > y: x^2 > x*y > y^2 > x > y > 1.
        let seq = ["x^2", "x*y", "y^2", "x", "y", "1"];
        for w in seq.windows(2) {
            let a = p(w[0]);
            let b = p(w[1]);
            let (ma, _) = a.leading().unwrap();
            let (mb, _) = b.leading().unwrap();
            assert!(ma > mb, "{} should exceed {}", w[0], w[1]);
        }
    }

    #[test]
    fn grevlex_classic_tiebreak() {
        // Degree-3 classic: x^2*y > x*y^2 and x^3 > x^2*y.
        assert!(p("x^3").leading().unwrap().0 > p("x^2*y").leading().unwrap().0);
        assert!(p("x^2*y").leading().unwrap().0 > p("x*y^2").leading().unwrap().0);
    }

    #[test]
    fn arithmetic_basics() {
        let a = p("x + y");
        let b = p("x - y");
        assert_eq!(&a * &b, p("x^2 - y^2"));
        assert_eq!(&(&a + &b), &p("2*x"));
        assert_eq!(a.pow(2), p("x^2 + 2*x*y + y^2"));
        assert_eq!(&a - &a, MultiPoly::zero(&table()));
    }

    #[test]
    fn derivative_and_components() {
        let f = p("x^3*y + a0*x*y^2 - 5*y");
        assert_eq!(f.diff("x").unwrap(), p("3*x^2*y + a0*y^2"));
        assert_eq!(f.diff("y").unwrap(), p("x^3 + 2*a0*x*y - 5"));
        let t = table();
        let xy = [t.index("x").unwrap(), t.index("y").unwrap()];
        assert_eq!(f.homogeneous_component(4, &xy), p("x^3*y"));
        assert_eq!(f.homogeneous_component(3, &xy), p("a0*x*y^2"));
        assert_eq!(f.homogeneous_component(1, &xy), p("-5*y"));
        assert!(f.homogeneous_component(2, &xy).is_zero());
    }

    #[test]
    fn substitution_composes() {
        let t = table();
        let f = p("x^2 + y");
        let mut map = BTreeMap::new();
        map.insert(t.index("x").unwrap(), p("y + 1"));
        map.insert(t.index("y").unwrap(), p("x*y"));
        assert_eq!(f.substitute(&map).unwrap(), p("y^2 + 2*y + 1 + x*y"));
    }

    #[test]
    fn bind_and_eval() {
        let t = table();
        let f = p("a0*x^2 - 1/2*y");
        let mut vals = BTreeMap::new();
        vals.insert(t.index("a0").unwrap(), rat(3, 1));
        assert_eq!(f.bind(&vals), p("3*x^2 - 1/2*y"));
        vals.insert(t.index("x").unwrap(), rat(2, 1));
        vals.insert(t.index("y").unwrap(), rat(4, 1));
        assert_eq!(f.eval(&vals).unwrap(), rat(10, 1));
    }

    #[test]
    fn eval_requires_bindings() {
        let t = table();
        let f = p("x + y");
        let mut vals = BTreeMap::new();
        vals.insert(t.index("x").unwrap(), rat(1, 1));
        assert_eq!(
            f.eval(&vals),
            Err(PolyError::UnboundVariable("y".to_string()))
        );
    }

    #[test]
    fn exact_division() {
        let f = p("x^2 - y^2");
        let g = p("x - y");
        assert_eq!(f.exact_div(&g).unwrap(), p("x + y"));
        assert_eq!(
            p("x^2 + 1").exact_div(&g),
            Err(PolyError::InexactDivision)
        );
        let t = table();
        let x = t.index("x").unwrap();
        assert_eq!(
            p("x^3*y + x^2").div_var_power(x, 2).unwrap(),
            p("x*y + 1")
        );
        assert!(p("x^3*y + x^2").div_var_power(x, 3).is_err());
        assert_eq!(p("x^3*y + x^2").max_var_power(x), Some(2));
    }

    #[test]
    fn content_and_primitive() {
        let f = p("4/3*x^2 - 2/9*y");
        assert_eq!(f.content(), rat(2, 9));
        assert_eq!(f.primitive_part(), p("6*x^2 - y"));
        let g = p("-4*x^2 + 2*y");
        assert_eq!(g.primitive_part(), p("2*x^2 - y"));
    }

    #[test]
    fn coeffs_in_variable() {
        let t = table();
        let y = t.index("y").unwrap();
        let f = p("x*y^2 + a1*y^2 + x^3 - y");
        let cs = f.coeffs_in(y);
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[0], p("x^3"));
        assert_eq!(cs[1], p("-1"));
        assert_eq!(cs[2], p("x + a1"));
    }

    #[test]
    fn display_round_trip() {
        let samples = [
            "0",
            "1",
            "-1/2",
            "x",
            "-x + y",
            "x^2 - 2*x*y + y^2 - 7/3",
            "a0*x^5 + a5*y^5 - 1/16*w",
            "3*x^2*y - 1/2*a0",
        ];
        for s in samples {
            let f = p(s);
            let printed = f.to_string();
            let reparsed = parse_poly(&table(), &printed).unwrap();
            assert_eq!(f, reparsed, "round trip failed for {s} -> {printed}");
        }
    }
}
