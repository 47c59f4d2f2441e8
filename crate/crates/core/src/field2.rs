//! Exact scalar arithmetic for equilibrium classification: the rationals, a
//! real quadratic extension `ℚ(√r)`, and dense bivariate polynomials over
//! either — the coefficient layer used when an equilibrium has coordinates
//! like `a/√a32` that are irrational but exactly representable.

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::poly::{rat_int, MultiPoly, Rat};
use crate::roots::{rat_to_f64, rational_sign};

/// Errors from scalar or bivariate-polynomial construction.
#[derive(Debug, Error)]
pub enum Field2Error {
    #[error("polynomial uses a variable other than the two phase variables")]
    ExtraVariable,
    #[error("mixed quadratic extensions: sqrt({0}) vs sqrt({1})")]
    MixedRadicands(String, String),
    #[error("negative radicand: {0}")]
    NegativeRadicand(String),
}

/// An exact real scalar with decidable sign.
pub trait Scalar: Clone + PartialEq + std::fmt::Debug + std::fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rat(r: &Rat) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn is_zero(&self) -> bool;
    /// Exact sign: −1, 0, or +1.
    fn sign(&self) -> i8;
    fn to_f64(&self) -> f64;
}

impl Scalar for Rat {
    fn zero() -> Self {
        rat_int(0)
    }
    fn one() -> Self {
        rat_int(1)
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(rat_int(1) / self)
        }
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn sign(&self) -> i8 {
        rational_sign(self)
    }
    fn to_f64(&self) -> f64 {
        rat_to_f64(self)
    }
}

/// Splits a positive integer as `s²·m` with `m` free of small square
/// factors: trial division by small primes, then a final perfect-square
/// check on the cofactor.
fn extract_square_part(n: &num_bigint::BigInt) -> (num_bigint::BigInt, num_bigint::BigInt) {
    use num_bigint::BigInt;
    let mut s = BigInt::from(1);
    let mut m = n.clone();
    for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        let p = BigInt::from(p);
        let p2 = &p * &p;
        while (&m % &p2).is_zero() {
            m /= &p2;
            s *= &p;
        }
    }
    let root = m.sqrt();
    if &root * &root == m {
        s *= &root;
        m = BigInt::from(1);
    }
    (s, m)
}

/// True when `r` is the square of a rational.
pub fn is_rational_square(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    if Zero::is_zero(r) {
        return Some(rat_int(0));
    }
    let n = r.numer();
    let d = r.denom();
    let sn = n.sqrt();
    let sd = d.sqrt();
    if &(&sn * &sn) == n && &(&sd * &sd) == d {
        Some(Rat::new(sn, sd))
    } else {
        None
    }
}

/// An element `a + b·√r` of a real quadratic extension. Normal form: `b = 0`
/// implies `r = 0`, and `r` is never a rational square, so the representation
/// is unique and zero tests are coefficient tests.
#[derive(Debug, Clone, PartialEq)]
pub struct Quad {
    a: Rat,
    b: Rat,
    r: Rat,
}

impl Quad {
    /// Build `a + b·√r`, folding rational-square radicands into `a`.
    ///
    /// Returns an error for negative `r` (complex values are out of scope).
    pub fn new(a: Rat, b: Rat, r: Rat) -> Result<Quad, Field2Error> {
        if r.is_negative() {
            return Err(Field2Error::NegativeRadicand(r.to_string()));
        }
        if Zero::is_zero(&b) || Zero::is_zero(&r) {
            return Ok(Quad {
                a,
                b: rat_int(0),
                r: rat_int(0),
            });
        }
        if let Some(s) = is_rational_square(&r) {
            return Ok(Quad {
                a: a + b * s,
                b: rat_int(0),
                r: rat_int(0),
            });
        }
        // Canonicalize the radicand: with r = n/d, √(n/d) = √(n·d)/d, and
        // square factors of n·d move out into the coefficient.
        let nd = r.numer() * r.denom();
        let (s, m) = extract_square_part(&nd);
        let b = b * Rat::new(s, r.denom().clone());
        Ok(Quad {
            a,
            b,
            r: Rat::from_integer(m),
        })
    }

    /// The square root of a non-negative rational.
    pub fn sqrt(r: &Rat) -> Result<Quad, Field2Error> {
        Quad::new(rat_int(0), rat_int(1), r.clone())
    }

    pub fn rational_part(&self) -> &Rat {
        &self.a
    }

    pub fn radical_part(&self) -> &Rat {
        &self.b
    }

    pub fn radicand(&self) -> &Rat {
        &self.r
    }

    /// True when the value lies in ℚ.
    pub fn is_rational(&self) -> bool {
        Zero::is_zero(&self.b)
    }

    /// The rational value, when there is one.
    pub fn as_rational(&self) -> Option<&Rat> {
        if self.is_rational() {
            Some(&self.a)
        } else {
            None
        }
    }

    /// Galois conjugate `a − b·√r`.
    pub fn conj(&self) -> Quad {
        Quad {
            a: self.a.clone(),
            b: -&self.b,
            r: self.r.clone(),
        }
    }

    /// Shared radicand plus both radical coefficients rewritten over it;
    /// panics on genuinely mixed extensions (a programming error in this
    /// crate's usage).
    fn aligned(&self, o: &Quad) -> (Rat, Rat, Rat) {
        if Zero::is_zero(&self.b) {
            (o.r.clone(), self.b.clone(), o.b.clone())
        } else if Zero::is_zero(&o.b) || self.r == o.r {
            (self.r.clone(), self.b.clone(), o.b.clone())
        } else {
            // √(o.r) = √(self.r)/s when self.r/o.r = s².
            let ratio = &self.r / &o.r;
            let Some(s) = is_rational_square(&ratio) else {
                panic!(
                    "mixed quadratic extensions in one computation: sqrt({}) vs sqrt({})",
                    self.r, o.r
                );
            };
            (self.r.clone(), self.b.clone(), &o.b / s)
        }
    }
}

impl std::fmt::Display for Quad {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if Zero::is_zero(&self.b) {
            write!(f, "{}", self.a)
        } else if Zero::is_zero(&self.a) {
            write!(f, "{}*sqrt({})", self.b, self.r)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.r)
        }
    }
}

impl Scalar for Quad {
    fn zero() -> Self {
        Quad {
            a: rat_int(0),
            b: rat_int(0),
            r: rat_int(0),
        }
    }
    fn one() -> Self {
        Quad {
            a: rat_int(1),
            b: rat_int(0),
            r: rat_int(0),
        }
    }
    fn from_rat(r: &Rat) -> Self {
        Quad {
            a: r.clone(),
            b: rat_int(0),
            r: rat_int(0),
        }
    }
    fn add(&self, o: &Self) -> Self {
        let (r, b1, b2) = self.aligned(o);
        let b = b1 + b2;
        Quad {
            a: &self.a + &o.a,
            r: if Zero::is_zero(&b) { rat_int(0) } else { r },
            b,
        }
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        let (r, b1, b2) = self.aligned(o);
        // (a + b√r)(c + d√r) = ac + bd·r + (ad + bc)√r
        let a = &self.a * &o.a + &b1 * &b2 * &r;
        let b = &self.a * &b2 + &b1 * &o.a;
        Quad {
            a,
            r: if Zero::is_zero(&b) { rat_int(0) } else { r },
            b,
        }
    }
    fn neg(&self) -> Self {
        Quad {
            a: -&self.a,
            b: -&self.b,
            r: self.r.clone(),
        }
    }
    fn inv(&self) -> Option<Self> {
        // (a + b√r)⁻¹ = (a − b√r)/(a² − b²r); the norm vanishes only at 0
        // because r is never a rational square.
        let norm = &self.a * &self.a - &self.b * &self.b * &self.r;
        if Zero::is_zero(&norm) {
            return None;
        }
        let c = self.conj();
        Some(Quad {
            a: &c.a / &norm,
            b: &c.b / &norm,
            r: c.r,
        })
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.a) && Zero::is_zero(&self.b)
    }
    fn sign(&self) -> i8 {
        let sa = rational_sign(&self.a);
        let sb = rational_sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // Opposite signs: compare |a| with |b|√r via squares. When a²
        // exceeds b²r the rational part dominates, otherwise the radical.
        let cmp = &self.a * &self.a - &self.b * &self.b * &self.r;
        match rational_sign(&cmp) {
            0 => 0,
            1 => sa,
            _ => sb,
        }
    }
    fn to_f64(&self) -> f64 {
        rat_to_f64(&self.a) + rat_to_f64(&self.b) * rat_to_f64(&self.r).sqrt()
    }
}

/// Solutions of `q2·t² + q1·t + q0 = 0` over the reals, exactly, as elements
/// of ℚ or of one quadratic extension. Requires `q2 ≠ 0`.
pub fn solve_quadratic(q2: &Rat, q1: &Rat, q0: &Rat) -> Vec<Quad> {
    assert!(!Zero::is_zero(q2), "leading coefficient must be nonzero");
    let two = rat_int(2);
    let four = rat_int(4);
    let disc = q1 * q1 - &four * q2 * q0;
    match rational_sign(&disc) {
        -1 => Vec::new(),
        0 => vec![Quad::from_rat(&(-q1 / (&two * q2)))],
        _ => {
            let shift = -q1 / (&two * q2);
            let scale = rat_int(1) / (&two * q2);
            // roots: shift ± scale·√disc
            let lo = Quad::new(shift.clone(), -&scale, disc.clone())
                .expect("disc > 0");
            let hi = Quad::new(shift, scale, disc).expect("disc > 0");
            let (mut lo, mut hi) = (lo, hi);
            if lo.sign() > hi.sign()
                || (lo.sign() == hi.sign() && lo.sub(&hi).sign() > 0)
            {
                std::mem::swap(&mut lo, &mut hi);
            }
            vec![lo, hi]
        }
    }
}

/// Dense bivariate polynomial over an exact scalar type; `coeff[i][j]` is
/// the coefficient of `x^i y^j`.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly2<F: Scalar> {
    c: Vec<Vec<F>>,
}

impl<F: Scalar> Poly2<F> {
    pub fn zero() -> Self {
        Poly2 { c: Vec::new() }
    }

    pub fn constant(v: F) -> Self {
        let mut p = Poly2 { c: vec![vec![v]] };
        p.trim();
        p
    }

    pub fn one() -> Self {
        Poly2::constant(F::one())
    }

    pub fn var_x() -> Self {
        Poly2 {
            c: vec![vec![F::zero()], vec![F::one()]],
        }
    }

    pub fn var_y() -> Self {
        Poly2 {
            c: vec![vec![F::zero(), F::one()]],
        }
    }

    /// Import from a sparse polynomial that uses only the variables at
    /// `xi` and `yi`.
    pub fn from_multipoly(
        p: &MultiPoly,
        xi: usize,
        yi: usize,
    ) -> Result<Poly2<F>, Field2Error> {
        if !p.uses_only(&[xi, yi]) {
            return Err(Field2Error::ExtraVariable);
        }
        let mut out = Poly2::zero();
        for (mono, coeff) in p.terms() {
            let i = mono.exponents()[xi] as usize;
            let j = mono.exponents()[yi] as usize;
            out.set(i, j, F::from_rat(coeff));
        }
        out.trim();
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn coeff(&self, i: usize, j: usize) -> F {
        self.c
            .get(i)
            .and_then(|row| row.get(j))
            .cloned()
            .unwrap_or_else(F::zero)
    }

    fn set(&mut self, i: usize, j: usize, v: F) {
        while self.c.len() <= i {
            self.c.push(Vec::new());
        }
        let row = &mut self.c[i];
        while row.len() <= j {
            row.push(F::zero());
        }
        row[j] = v;
    }

    fn add_at(&mut self, i: usize, j: usize, v: &F) {
        let cur = self.coeff(i, j);
        self.set(i, j, cur.add(v));
    }

    fn trim(&mut self) {
        for row in &mut self.c {
            while row.last().is_some_and(F::is_zero) {
                row.pop();
            }
        }
        while self.c.last().is_some_and(Vec::is_empty) {
            self.c.pop();
        }
    }

    /// Iterate nonzero terms as `(i, j, coeff)`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &F)> {
        self.c.iter().enumerate().flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(move |(j, v)| (i, j, v))
        })
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.terms().map(|(i, j, _)| i + j).max()
    }

    /// Lowest total degree among nonzero terms.
    pub fn lowest_degree(&self) -> Option<usize> {
        self.terms().map(|(i, j, _)| i + j).min()
    }

    /// The homogeneous component of total degree `k`.
    pub fn homogeneous_component(&self, k: usize) -> Poly2<F> {
        let mut out = Poly2::zero();
        for (i, j, v) in self.terms() {
            if i + j == k {
                out.set(i, j, v.clone());
            }
        }
        out.trim();
        out
    }

    pub fn add(&self, o: &Poly2<F>) -> Poly2<F> {
        let mut out = self.clone();
        for (i, j, v) in o.terms() {
            out.add_at(i, j, v);
        }
        out.trim();
        out
    }

    pub fn sub(&self, o: &Poly2<F>) -> Poly2<F> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Poly2<F> {
        let mut out = self.clone();
        for row in &mut out.c {
            for v in row.iter_mut() {
                *v = v.neg();
            }
        }
        out
    }

    pub fn scale(&self, s: &F) -> Poly2<F> {
        let mut out = Poly2::zero();
        for (i, j, v) in self.terms() {
            out.set(i, j, v.mul(s));
        }
        out.trim();
        out
    }

    pub fn mul(&self, o: &Poly2<F>) -> Poly2<F> {
        let mut out = Poly2::zero();
        for (i1, j1, v1) in self.terms() {
            for (i2, j2, v2) in o.terms() {
                out.add_at(i1 + i2, j1 + j2, &v1.mul(v2));
            }
        }
        out.trim();
        out
    }

    pub fn pow(&self, mut e: usize) -> Poly2<F> {
        let mut base = self.clone();
        let mut acc = Poly2::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn eval(&self, x: &F, y: &F) -> F {
        // Horner in x of Horner-in-y rows.
        let mut acc = F::zero();
        for row in self.c.iter().rev() {
            let mut row_val = F::zero();
            for v in row.iter().rev() {
                row_val = row_val.mul(y).add(v);
            }
            acc = acc.mul(x).add(&row_val);
        }
        acc
    }

    pub fn partial_x(&self) -> Poly2<F> {
        let mut out = Poly2::zero();
        for (i, j, v) in self.terms() {
            if i > 0 {
                let k = F::from_rat(&rat_int(i as i64));
                out.set(i - 1, j, v.mul(&k));
            }
        }
        out.trim();
        out
    }

    pub fn partial_y(&self) -> Poly2<F> {
        let mut out = Poly2::zero();
        for (i, j, v) in self.terms() {
            if j > 0 {
                let k = F::from_rat(&rat_int(j as i64));
                out.set(i, j - 1, v.mul(&k));
            }
        }
        out.trim();
        out
    }

    /// Substitute `x → sx`, `y → sy` for arbitrary polynomial images.
    pub fn compose(&self, sx: &Poly2<F>, sy: &Poly2<F>) -> Poly2<F> {
        let mut out = Poly2::zero();
        // Cache powers on demand.
        let mut px: Vec<Poly2<F>> = vec![Poly2::one()];
        let mut py: Vec<Poly2<F>> = vec![Poly2::one()];
        for (i, j, v) in self.terms() {
            while px.len() <= i {
                let next = px.last().unwrap().mul(sx);
                px.push(next);
            }
            while py.len() <= j {
                let next = py.last().unwrap().mul(sy);
                py.push(next);
            }
            let term = px[i].mul(&py[j]).scale(v);
            out = out.add(&term);
        }
        out
    }

    /// `p(x + α, y + β)` — move the point `(α, β)` to the origin.
    pub fn translate(&self, alpha: &F, beta: &F) -> Poly2<F> {
        let sx = Poly2 {
            c: vec![vec![alpha.clone()], vec![F::one()]],
        };
        let sy = Poly2 {
            c: vec![vec![beta.clone(), F::one()]],
        };
        let mut out = self.compose(&sx, &sy);
        out.trim();
        out
    }

    /// Exact division by `x^k`; `None` when some term has a smaller power.
    pub fn div_x_power(&self, k: usize) -> Option<Poly2<F>> {
        if self.is_zero() {
            return Some(Poly2::zero());
        }
        if self.terms().any(|(i, _, _)| i < k) {
            return None;
        }
        let mut out = Poly2::zero();
        for (i, j, v) in self.terms() {
            out.set(i - k, j, v.clone());
        }
        out.trim();
        Some(out)
    }

    /// Largest `k` with `x^k` dividing the polynomial (0 for the zero poly).
    pub fn x_multiplicity(&self) -> usize {
        self.terms().map(|(i, _, _)| i).min().unwrap_or(0)
    }

    /// Restriction `p(0, y)` as dense univariate coefficients in `y`.
    pub fn restrict_x0(&self) -> Vec<F> {
        let mut out: Vec<F> = self
            .c
            .first()
            .map(|row| row.to_vec())
            .unwrap_or_default();
        while out.last().is_some_and(F::is_zero) {
            out.pop();
        }
        out
    }

    /// The substitution `(x, y) → (x, y·x)` of a vertical blow-up.
    pub fn vertical_substitute(&self) -> Poly2<F> {
        let mut out = Poly2::zero();
        for (i, j, v) in self.terms() {
            out.add_at(i + j, j, v);
        }
        out.trim();
        out
    }

    /// The substitution `(x, y) → (x − y, y)` of the shear used before a
    /// vertical blow-up when the vertical direction is characteristic.
    pub fn twist_substitute(&self) -> Poly2<F> {
        let x_minus_y = Poly2 {
            c: vec![vec![F::zero(), F::one().neg()], vec![F::one()]],
        };
        self.compose(&x_minus_y, &Poly2::var_y())
    }

    /// The substitution `(x, y) → (y, x)`.
    pub fn swap_xy(&self) -> Poly2<F> {
        let mut out = Poly2::zero();
        for (i, j, v) in self.terms() {
            out.set(j, i, v.clone());
        }
        out.trim();
        out
    }
}

/// Dense univariate helpers over a scalar type (ascending coefficients).
pub mod uni {
    use super::Scalar;

    pub fn trim<F: Scalar>(p: &mut Vec<F>) {
        while p.last().is_some_and(F::is_zero) {
            p.pop();
        }
    }

    pub fn eval<F: Scalar>(p: &[F], x: &F) -> F {
        let mut acc = F::zero();
        for v in p.iter().rev() {
            acc = acc.mul(x).add(v);
        }
        acc
    }

    pub fn mul<F: Scalar>(a: &[F], b: &[F]) -> Vec<F> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![F::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = out[i + j].add(&x.mul(y));
            }
        }
        trim(&mut out);
        out
    }

    pub fn add<F: Scalar>(a: &[F], b: &[F]) -> Vec<F> {
        let mut out = a.to_vec();
        if out.len() < b.len() {
            out.resize(b.len(), F::zero());
        }
        for (i, v) in b.iter().enumerate() {
            out[i] = out[i].add(v);
        }
        trim(&mut out);
        out
    }

    pub fn scale<F: Scalar>(a: &[F], s: &F) -> Vec<F> {
        let mut out: Vec<F> = a.iter().map(|v| v.mul(s)).collect();
        trim(&mut out);
        out
    }

    /// First nonzero coefficient index and value (the valuation at 0).
    pub fn leading_low<F: Scalar>(p: &[F]) -> Option<(usize, &F)> {
        p.iter().enumerate().find(|(_, v)| !v.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn quad_normalizes_square_radicands() {
        let q = Quad::new(rat_int(1), rat_int(3), rat(4, 9)).unwrap();
        assert!(q.is_rational());
        assert_eq!(q.as_rational(), Some(&rat_int(3))); // 1 + 3·(2/3)
    }

    #[test]
    fn quad_sign_with_negative_rational_part() {
        // −1 + √2 > 0: the radical part dominates.
        let v = Quad::new(rat_int(-1), rat_int(1), rat_int(2)).unwrap();
        assert_eq!(v.sign(), 1);
        // −3 + √2 < 0: the rational part dominates.
        let w = Quad::new(rat_int(-3), rat_int(1), rat_int(2)).unwrap();
        assert_eq!(w.sign(), -1);
        // Mirror cases.
        assert_eq!(v.neg().sign(), -1);
        assert_eq!(w.neg().sign(), 1);
    }

    #[test]
    fn quad_radicand_canonicalization() {
        // (1/2)√8 is stored as √2, so structural equality sees through it.
        let half_sqrt8 = Quad::new(rat_int(0), rat(1, 2), rat_int(8)).unwrap();
        let s2 = Quad::sqrt(&rat_int(2)).unwrap();
        assert_eq!(half_sqrt8, s2);
        assert!(half_sqrt8.sub(&s2).is_zero());
        // √(9/2) = (3/2)√2.
        let q = Quad::sqrt(&rat(9, 2)).unwrap();
        assert_eq!(q, Quad::new(rat_int(0), rat(3, 2), rat_int(2)).unwrap());
        // √12 · √3 = 6.
        let s12 = Quad::sqrt(&rat_int(12)).unwrap();
        let s3 = Quad::sqrt(&rat_int(3)).unwrap();
        assert_eq!(s12.mul(&s3).as_rational(), Some(&rat_int(6)));
    }

    #[test]
    fn quad_arithmetic_and_sign() {
        let s2 = Quad::sqrt(&rat_int(2)).unwrap();
        // (1 + √2)(1 − √2) = −1
        let p = Quad::new(rat_int(1), rat_int(1), rat_int(2)).unwrap();
        let q = p.conj();
        let prod = p.mul(&q);
        assert_eq!(prod.as_rational(), Some(&rat_int(-1)));
        // sign(3 − 2√2) > 0 since 9 > 8; sign(1 − √2) < 0.
        let a = Quad::new(rat_int(3), rat_int(-2), rat_int(2)).unwrap();
        assert_eq!(a.sign(), 1);
        assert_eq!(q.sign(), -1);
        // Inverse: √2 · (√2)⁻¹ = 1
        let inv = s2.inv().unwrap();
        assert_eq!(s2.mul(&inv).as_rational(), Some(&rat_int(1)));
        // 1/(3 − 2√2) = 3 + 2√2
        let ainv = a.inv().unwrap();
        assert_eq!(ainv, Quad::new(rat_int(3), rat_int(2), rat_int(2)).unwrap());
    }

    #[test]
    fn quadratic_solver_cases() {
        // x² − 2 = 0 → ±√2
        let roots = solve_quadratic(&rat_int(1), &rat_int(0), &rat_int(-2));
        assert_eq!(roots.len(), 2);
        assert!(roots[0].sign() < 0 && roots[1].sign() > 0);
        assert_eq!(roots[1], Quad::sqrt(&rat_int(8)).unwrap().mul(&Quad::from_rat(&rat(1, 2))));
        // x² − 3x + 2 → 1, 2 (rational fold)
        let roots = solve_quadratic(&rat_int(1), &rat_int(-3), &rat_int(2));
        assert_eq!(roots[0].as_rational(), Some(&rat_int(1)));
        assert_eq!(roots[1].as_rational(), Some(&rat_int(2)));
        // x² + 1 → none real
        assert!(solve_quadratic(&rat_int(1), &rat_int(0), &rat_int(1)).is_empty());
        // (x − 1)² → single root
        let roots = solve_quadratic(&rat_int(1), &rat_int(-2), &rat_int(1));
        assert_eq!(roots.len(), 1);
    }

    #[test]
    fn poly2_roundtrip_and_ops() {
        let t = crate::vars::VariableTable::new(&["x", "y"]).unwrap();
        let p = crate::parse::parse_poly(&t, "x^2*y - 2*x + 1/2*y^3").unwrap();
        let d: Poly2<Rat> = Poly2::from_multipoly(&p, 0, 1).unwrap();
        assert_eq!(d.coeff(2, 1), rat_int(1));
        assert_eq!(d.coeff(1, 0), rat_int(-2));
        assert_eq!(d.coeff(0, 3), rat(1, 2));
        assert_eq!(d.total_degree(), Some(3));
        assert_eq!(d.lowest_degree(), Some(1));
        // eval at (1, 2): 2 − 2 + 4 = 4
        assert_eq!(d.eval(&rat_int(1), &rat_int(2)), rat_int(4));
        // ∂x = 2xy − 2
        let dx = d.partial_x();
        assert_eq!(dx.coeff(1, 1), rat_int(2));
        assert_eq!(dx.coeff(0, 0), rat_int(-2));
    }

    #[test]
    fn poly2_substitutions() {
        // p = y² − x³ ; vertical blow-up: (x, yx) → y²x² − x³
        let t = crate::vars::VariableTable::new(&["x", "y"]).unwrap();
        let p = crate::parse::parse_poly(&t, "y^2 - x^3").unwrap();
        let d: Poly2<Rat> = Poly2::from_multipoly(&p, 0, 1).unwrap();
        let v = d.vertical_substitute();
        assert_eq!(v.coeff(2, 2), rat_int(1));
        assert_eq!(v.coeff(3, 0), rat_int(-1));
        assert_eq!(v.x_multiplicity(), 2);
        let w = v.div_x_power(2).unwrap();
        assert_eq!(w.coeff(0, 2), rat_int(1));
        assert_eq!(w.coeff(1, 0), rat_int(-1));
        assert!(v.div_x_power(3).is_none());
        // Twist of x: x → x − y.
        let x: Poly2<Rat> = Poly2::var_x();
        let tw = x.twist_substitute();
        assert_eq!(tw.coeff(1, 0), rat_int(1));
        assert_eq!(tw.coeff(0, 1), rat_int(-1));
        // Translation: (x+1)² at x → x−1 returns x².
        let sq = Poly2::<Rat>::var_x().add(&Poly2::one()).pow(2);
        let back = sq.translate(&rat_int(-1), &rat_int(0));
        assert_eq!(back, Poly2::var_x().pow(2));
    }

    #[test]
    fn poly2_quad_coefficients() {
        // (x − √2)(x + √2) = x² − 2 over ℚ(√2).
        let s2 = Quad::sqrt(&rat_int(2)).unwrap();
        let x: Poly2<Quad> = Poly2::var_x();
        let a = x.add(&Poly2::constant(s2.neg()));
        let b = x.add(&Poly2::constant(s2));
        let prod = a.mul(&b);
        assert_eq!(prod.coeff(2, 0).as_rational(), Some(&rat_int(1)));
        assert_eq!(prod.coeff(0, 0).as_rational(), Some(&rat_int(-2)));
        assert!(prod.coeff(1, 0).is_zero());
    }
}
