//! Exact real-root analysis for univariate rational polynomials.
//!
//! A univariate polynomial is a dense `Vec<Rat>` of coefficients in
//! ascending powers with a nonzero last entry (the zero polynomial is the
//! empty vector). The module provides square-free (Yun) decomposition,
//! Sturm sequences, root counting and isolation, rational-root
//! extraction, and exact real algebraic numbers represented by a
//! square-free defining polynomial plus an isolating interval.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::poly::{Rat, rat_int};

/// Dense univariate polynomial, ascending powers, no trailing zeros.
pub type UniPoly = Vec<Rat>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RootError {
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("interval endpoints must satisfy lo <= hi")]
    BadInterval,
}

/// Closed interval with rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rat,
    pub hi: Rat,
}

impl Interval {
    pub fn new(lo: Rat, hi: Rat) -> Result<Self, RootError> {
        if lo > hi {
            return Err(RootError::BadInterval);
        }
        Ok(Interval { lo, hi })
    }

    pub fn point(v: Rat) -> Self {
        Interval {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / rat_int(2)
    }

    pub fn contains(&self, v: &Rat) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    /// Midpoint as `f64` (for numeric consumers only).
    pub fn to_f64(&self) -> f64 {
        rat_to_f64(&self.midpoint())
    }
}

/// Converts a rational to the nearest `f64`.
pub fn rat_to_f64(r: &Rat) -> f64 {
    // Scale by 2^k so the numerator/denominator both fit comfortably.
    let num = r.numer();
    let den = r.denom();
    let nbits = num.bits() as i64;
    let dbits = den.bits() as i64;
    let shift = (nbits.max(dbits) - 52).max(0);
    let n = num >> shift as usize;
    let d = den >> shift as usize;
    let nf = bigint_to_f64(&n);
    let df = bigint_to_f64(&d);
    if df == 0.0 {
        return 0.0;
    }
    nf / df
}

fn bigint_to_f64(b: &BigInt) -> f64 {
    // BigInt implements conversion through string only in some versions;
    // use base-2^32 digits for a faithful conversion of small values.
    let (sign, digits) = b.to_u32_digits();
    let mut val = 0.0f64;
    for &d in digits.iter().rev() {
        val = val * 4294967296.0 + d as f64;
    }
    match sign {
        num_bigint::Sign::Minus => -val,
        _ => val,
    }
}

// ----- basic dense-polynomial helpers ---------------------------------------

/// Removes trailing zero coefficients in place.
pub fn normalize(p: &mut UniPoly) {
    while matches!(p.last(), Some(c) if c.is_zero()) {
        p.pop();
    }
}

pub fn is_zero(p: &UniPoly) -> bool {
    p.iter().all(Rat::is_zero)
}

/// Degree, or `None` for the zero polynomial.
pub fn degree(p: &UniPoly) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn eval(p: &UniPoly, x: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

pub fn derivative(p: &UniPoly) -> UniPoly {
    let mut out: UniPoly = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * rat_int(i as i64))
        .collect();
    normalize(&mut out);
    out
}

fn trimmed(p: &UniPoly) -> UniPoly {
    let mut q = p.clone();
    normalize(&mut q);
    q
}

/// Product of two dense univariate polynomials.
pub fn mul(a: &UniPoly, b: &UniPoly) -> UniPoly {
    if is_zero(a) || is_zero(b) {
        return Vec::new();
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            if !cb.is_zero() {
                out[i + j] += ca * cb;
            }
        }
    }
    normalize(&mut out);
    out
}

fn sub(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let mut out = vec![Rat::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    normalize(&mut out);
    out
}

/// Euclidean division: returns `(quotient, remainder)`.
pub fn div_rem(a: &UniPoly, b: &UniPoly) -> Result<(UniPoly, UniPoly), RootError> {
    let db = degree(b).ok_or(RootError::ZeroPolynomial)?;
    let mut rem = trimmed(a);
    let lead = b[db].clone();
    let mut quot: UniPoly = Vec::new();
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let shift = dr - db;
        let coeff = &rem[dr] / &lead;
        if quot.len() < shift + 1 {
            quot.resize(shift + 1, Rat::zero());
        }
        quot[shift] = coeff.clone();
        for i in 0..=db {
            let delta = &b[i] * &coeff;
            rem[i + shift] -= delta;
        }
        normalize(&mut rem);
    }
    normalize(&mut quot);
    Ok((quot, rem))
}

/// Monic greatest common divisor.
pub fn gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let mut f = trimmed(a);
    let mut g = trimmed(b);
    while !is_zero(&g) {
        let (_, r) = div_rem(&f, &g).expect("nonzero divisor");
        f = g;
        g = r;
    }
    if let Some(d) = degree(&f) {
        let lead = f[d].clone();
        for c in &mut f {
            *c /= lead.clone();
        }
    }
    f
}

/// Yun square-free decomposition: returns `[(g1, 1), (g2, 2), ...]` with
/// `p = lc * prod gi^i`, each `gi` monic square-free, pairwise coprime.
/// Factors with `gi = 1` are omitted.
pub fn squarefree_decomposition(p: &UniPoly) -> Result<Vec<(UniPoly, usize)>, RootError> {
    let f = trimmed(p);
    let df = degree(&f).ok_or(RootError::ZeroPolynomial)?;
    if df == 0 {
        return Ok(Vec::new());
    }
    let fp = derivative(&f);
    let a0 = gcd(&f, &fp);
    let mut b = div_rem(&f, &a0).expect("gcd divides").0;
    let mut c = div_rem(&fp, &a0).expect("gcd divides").0;
    let mut d = sub(&c, &derivative(&b));
    let mut out = Vec::new();
    let mut i = 1usize;
    loop {
        let a = gcd(&b, &d);
        if degree(&a).unwrap_or(0) > 0 {
            out.push((a.clone(), i));
        }
        b = div_rem(&b, &a).expect("divides").0;
        if degree(&b).unwrap_or(0) == 0 {
            break;
        }
        c = div_rem(&d, &a).expect("divides").0;
        d = sub(&c, &derivative(&b));
        i += 1;
    }
    Ok(out)
}

/// The square-free part `p / gcd(p, p')`, made monic.
pub fn squarefree_part(p: &UniPoly) -> Result<UniPoly, RootError> {
    let f = trimmed(p);
    let df = degree(&f).ok_or(RootError::ZeroPolynomial)?;
    if df == 0 {
        return Ok(vec![Rat::one()]);
    }
    let g = gcd(&f, &derivative(&f));
    let mut q = div_rem(&f, &g)?.0;
    let d = degree(&q).expect("nonzero");
    let lead = q[d].clone();
    for c in &mut q {
        *c /= lead.clone();
    }
    Ok(q)
}

// ----- Sturm sequences -------------------------------------------------------

/// The Sturm sequence of `p`: `p, p', -rem(...), ...`.
pub fn sturm_sequence(p: &UniPoly) -> Result<Vec<UniPoly>, RootError> {
    let f = trimmed(p);
    degree(&f).ok_or(RootError::ZeroPolynomial)?;
    let mut seq = vec![f.clone()];
    let mut g = derivative(&f);
    while !is_zero(&g) {
        let prev = seq.last().expect("nonempty").clone();
        seq.push(g.clone());
        let (_, r) = div_rem(&prev, &g)?;
        g = r.iter().map(|c| -c.clone()).collect();
        normalize(&mut g);
    }
    Ok(seq)
}

fn sign_variations_at(seq: &[UniPoly], x: &Rat) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for p in seq {
        let v = eval(p, x);
        let s = if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Number of distinct real roots of the (square-free-able) polynomial in
/// the half-open interval `(lo, hi]`, computed from its Sturm sequence.
pub fn count_roots_in(seq: &[UniPoly], lo: &Rat, hi: &Rat) -> usize {
    let a = sign_variations_at(seq, lo);
    let b = sign_variations_at(seq, hi);
    a.saturating_sub(b)
}

/// Cauchy bound: every real root lies in `[-B, B]`.
pub fn root_bound(p: &UniPoly) -> Result<Rat, RootError> {
    let d = degree(p).ok_or(RootError::ZeroPolynomial)?;
    let lead = p[d].clone();
    let mut max = Rat::zero();
    for c in &p[..d] {
        let ratio = (c / &lead).abs();
        if ratio > max {
            max = ratio;
        }
    }
    Ok(max + Rat::one())
}

// ----- rational-root extraction ----------------------------------------------

/// Divisors of `n` (positive), by trial division; `None` when the count
/// would exceed `cap`.
fn divisors(n: &BigInt, cap: usize) -> Option<Vec<BigInt>> {
    let n = n.abs();
    if n.is_zero() {
        return Some(vec![]);
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    loop {
        let dsq = &d * &d;
        if dsq > n {
            break;
        }
        if (&n % &d).is_zero() {
            small.push(d.clone());
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
            if small.len() + large.len() > cap {
                return None;
            }
        }
        d += 1;
        // Trial division cost guard for huge inputs.
        if d.bits() > 20 {
            return None;
        }
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

/// Extracts all rational roots of `p` with multiplicities by candidate
/// testing on the primitive integer form; returns the roots and the
/// deflated polynomial. Falls back to no extraction (empty root list)
/// when the coefficient divisor sets are too large to enumerate.
pub fn rational_roots(p: &UniPoly) -> Result<(Vec<(Rat, usize)>, UniPoly), RootError> {
    let mut f = trimmed(p);
    degree(&f).ok_or(RootError::ZeroPolynomial)?;
    let mut roots: Vec<(Rat, usize)> = Vec::new();

    // Factor out x = 0 first.
    let mut zero_mult = 0usize;
    while degree(&f).unwrap_or(0) >= 1 && f[0].is_zero() {
        f.remove(0);
        zero_mult += 1;
    }
    if zero_mult > 0 {
        roots.push((Rat::zero(), zero_mult));
    }
    if degree(&f).unwrap_or(0) == 0 {
        return Ok((roots, f));
    }

    // Clear denominators: integer coefficients.
    let mut den_lcm = BigInt::one();
    for c in &f {
        den_lcm = den_lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = f
        .iter()
        .map(|c| c.numer() * (&den_lcm / c.denom()))
        .collect();
    let d = ints.len() - 1;
    let cap = 4096;
    let ps = divisors(&ints[0], cap);
    let qs = divisors(&ints[d], cap);
    let (ps, qs) = match (ps, qs) {
        (Some(a), Some(b)) => (a, b),
        _ => return Ok((roots, f)), // too many candidates; leave unextracted
    };
    let mut candidates: Vec<Rat> = Vec::new();
    for pn in &ps {
        for qn in &qs {
            let r = Rat::new(pn.clone(), qn.clone());
            if !candidates.contains(&r) {
                candidates.push(r);
            }
        }
    }
    for cand in candidates {
        for signed in [cand.clone(), -cand] {
            let mut mult = 0usize;
            while degree(&f).unwrap_or(0) >= 1 && eval(&f, &signed).is_zero() {
                // Deflate by (x - r) using synthetic division.
                f = deflate(&f, &signed);
                mult += 1;
            }
            if mult > 0 {
                roots.push((signed, mult));
            }
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    Ok((roots, f))
}

/// Synthetic division of `p` by `(x - r)`; caller guarantees `p(r) = 0`.
fn deflate(p: &UniPoly, r: &Rat) -> UniPoly {
    let d = degree(p).expect("nonzero");
    let mut out = vec![Rat::zero(); d];
    let mut carry = Rat::zero();
    for i in (0..=d).rev() {
        let v = &p[i] + &carry;
        if i == 0 {
            debug_assert!(v.is_zero(), "deflation at a non-root");
            break;
        }
        out[i - 1] = v.clone();
        carry = v * r;
    }
    out
}

// ----- root isolation ----------------------------------------------------------

/// Location of one real root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootLoc {
    /// An exactly known rational root.
    Exact(Rat),
    /// An irrational root isolated in an open interval containing exactly
    /// one root of (the square-free part of) the polynomial.
    Isolated(Interval),
}

impl RootLoc {
    /// A rational point inside the root's interval (the root itself when
    /// exact).
    pub fn witness(&self) -> Rat {
        match self {
            RootLoc::Exact(r) => r.clone(),
            RootLoc::Isolated(iv) => iv.midpoint(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            RootLoc::Exact(r) => rat_to_f64(r),
            RootLoc::Isolated(iv) => iv.to_f64(),
        }
    }
}

/// One real root with its multiplicity in the original polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealRoot {
    pub loc: RootLoc,
    pub multiplicity: usize,
}

/// All real roots of `p`, ascending, with multiplicities. Rational roots
/// are returned exactly; irrational ones as isolating intervals of width
/// at most `max_width` (when positive).
pub fn real_roots(p: &UniPoly, max_width: &Rat) -> Result<Vec<RealRoot>, RootError> {
    let f = trimmed(p);
    if degree(&f).ok_or(RootError::ZeroPolynomial)? == 0 {
        return Ok(Vec::new());
    }
    let mut out: Vec<RealRoot> = Vec::new();
    for (factor, mult) in squarefree_decomposition(&f)? {
        // factor is square-free; take exact rational roots first.
        let (rats, rest) = rational_roots(&factor)?;
        for (r, m) in rats {
            debug_assert_eq!(m, 1, "square-free factor has simple roots");
            out.push(RealRoot {
                loc: RootLoc::Exact(r),
                multiplicity: mult,
            });
        }
        if degree(&rest).unwrap_or(0) >= 1 {
            for iv in isolate_squarefree(&rest, max_width)? {
                out.push(RealRoot {
                    loc: RootLoc::Isolated(iv),
                    multiplicity: mult,
                });
            }
        }
    }
    out.sort_by(|a, b| cmp_rootloc(&a.loc, &b.loc));
    Ok(out)
}

fn cmp_rootloc(a: &RootLoc, b: &RootLoc) -> Ordering {
    let ka = match a {
        RootLoc::Exact(r) => (r.clone(), r.clone()),
        RootLoc::Isolated(iv) => (iv.lo.clone(), iv.hi.clone()),
    };
    let kb = match b {
        RootLoc::Exact(r) => (r.clone(), r.clone()),
        RootLoc::Isolated(iv) => (iv.lo.clone(), iv.hi.clone()),
    };
    ka.0.cmp(&kb.0).then(ka.1.cmp(&kb.1))
}

/// Isolates the real roots of a square-free polynomial with no rational
/// roots: disjoint intervals, one root each, width at most `max_width`
/// when positive.
fn isolate_squarefree(f: &UniPoly, max_width: &Rat) -> Result<Vec<Interval>, RootError> {
    let seq = sturm_sequence(f)?;
    let bound = root_bound(f)?;
    let lo = -bound.clone();
    let hi = bound;
    let total = count_roots_in(&seq, &lo, &hi);
    let mut out = Vec::new();
    if total == 0 {
        return Ok(out);
    }
    // Work stack of intervals with their root counts.
    let mut stack = vec![(lo, hi, total)];
    while let Some((a, b, n)) = stack.pop() {
        if n == 0 {
            continue;
        }
        let width = &b - &a;
        if n == 1 && (!max_width.is_positive() || &width <= max_width) {
            out.push(Interval { lo: a, hi: b });
            continue;
        }
        // Pick a split point that is not itself a root (possible when
        // rational-root extraction was skipped for size reasons).
        let mut mid = (&a + &b) / rat_int(2);
        let mut k = 3i64;
        while eval(f, &mid).is_zero() {
            mid = &a + &((&b - &a) / rat_int(k));
            k += 2;
        }
        let left = count_roots_in(&seq, &a, &mid);
        stack.push((a, mid.clone(), left));
        stack.push((mid, b, n - left));
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    Ok(out)
}

/// Halves an isolating interval for a root of square-free `f` until its
/// width is at most `eps`.
pub fn refine_root(f: &UniPoly, iv: &Interval, eps: &Rat) -> Interval {
    let mut lo = iv.lo.clone();
    let mut hi = iv.hi.clone();
    let slo = eval(f, &lo);
    if slo.is_zero() {
        // Endpoint roots are not expected (isolation yields open
        // intervals around irrational roots), but stay safe.
        return Interval::point(lo);
    }
    // The sign at `lo` is invariant: `lo` only moves onto midpoints that
    // share it.
    let sign_lo = slo.is_positive();
    while &(&hi - &lo) > eps {
        let mid = (&lo + &hi) / rat_int(2);
        let v = eval(f, &mid);
        if v.is_zero() {
            return Interval::point(mid);
        }
        if v.is_positive() == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Interval { lo, hi }
}

// ----- exact real algebraic numbers ------------------------------------------

/// A real algebraic number: a square-free defining polynomial together
/// with an isolating interval containing exactly that root. Rational
/// numbers use the `Exact` representation.
#[derive(Debug, Clone)]
pub enum RealAlgebraic {
    Exact(Rat),
    Root { poly: UniPoly, interval: Interval },
}

impl RealAlgebraic {
    /// Wraps a root location over its (square-free) polynomial.
    pub fn from_loc(poly: &UniPoly, loc: &RootLoc) -> RealAlgebraic {
        match loc {
            RootLoc::Exact(r) => RealAlgebraic::Exact(r.clone()),
            RootLoc::Isolated(iv) => RealAlgebraic::Root {
                poly: poly.clone(),
                interval: iv.clone(),
            },
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            RealAlgebraic::Exact(r) => rat_to_f64(r),
            RealAlgebraic::Root { poly, interval } => {
                let iv = refine_root(poly, interval, &Rat::new(1.into(), BigInt::from(2).pow(60)));
                iv.to_f64()
            }
        }
    }

    /// Exact sign of `g` evaluated at this algebraic number.
    pub fn sign_of(&self, g: &UniPoly) -> i8 {
        match self {
            RealAlgebraic::Exact(r) => {
                let v = eval(g, r);
                rational_sign(&v)
            }
            RealAlgebraic::Root { poly, interval } => {
                let g = trimmed(g);
                if is_zero(&g) {
                    return 0;
                }
                // If the defining polynomial shares a factor with g whose
                // root lies in our interval, the sign is exactly zero.
                let common = gcd(poly, &g);
                if degree(&common).unwrap_or(0) >= 1 {
                    if let Ok(seq) = sturm_sequence(&common) {
                        if count_roots_in(&seq, &interval.lo, &interval.hi) > 0 {
                            return 0;
                        }
                    }
                }
                // Otherwise refine until g has no root in the interval,
                // making its sign constant there.
                let seq = sturm_sequence(&g).expect("nonzero g");
                let mut iv = interval.clone();
                loop {
                    if eval(&g, &iv.lo).is_zero() || eval(&g, &iv.hi).is_zero() {
                        // Perturb by refining the defining interval.
                        iv = half(poly, &iv);
                        continue;
                    }
                    if count_roots_in(&seq, &iv.lo, &iv.hi) == 0 {
                        return rational_sign(&eval(&g, &iv.midpoint()));
                    }
                    iv = half(poly, &iv);
                }
            }
        }
    }
}

/// One bisection step of the isolating interval of a root of `f`.
fn half(f: &UniPoly, iv: &Interval) -> Interval {
    let mid = iv.midpoint();
    let vm = eval(f, &mid);
    if vm.is_zero() {
        return Interval::point(mid);
    }
    let vl = eval(f, &iv.lo);
    if vl.is_positive() != vm.is_positive() {
        Interval {
            lo: iv.lo.clone(),
            hi: mid,
        }
    } else {
        Interval {
            lo: mid,
            hi: iv.hi.clone(),
        }
    }
}

/// Sign of a rational as -1, 0, 1.
pub fn rational_sign(r: &Rat) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn upoly(coeffs: &[(i64, i64)]) -> UniPoly {
        let mut p: UniPoly = coeffs.iter().map(|&(n, d)| rat(n, d)).collect();
        normalize(&mut p);
        p
    }

    #[test]
    fn division_and_gcd() {
        // (x^2 - 1) = (x + 1)(x - 1)
        let f = upoly(&[(-1, 1), (0, 1), (1, 1)]);
        let g = upoly(&[(1, 1), (1, 1)]);
        let (q, r) = div_rem(&f, &g).unwrap();
        assert_eq!(q, upoly(&[(-1, 1), (1, 1)]));
        assert!(is_zero(&r));
        let h = gcd(&f, &g);
        assert_eq!(h, upoly(&[(1, 1), (1, 1)]));
    }

    #[test]
    fn squarefree_decomposition_splits_multiplicities() {
        // p = (x - 1)^2 (x + 2)
        let sq = mul(
            &upoly(&[(-1, 1), (1, 1)]),
            &upoly(&[(-1, 1), (1, 1)]),
        );
        let p = mul(&sq, &upoly(&[(2, 1), (1, 1)]));
        let parts = squarefree_decomposition(&p).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].1, 1);
        assert_eq!(parts[0].0, upoly(&[(2, 1), (1, 1)]));
        assert_eq!(parts[1].1, 2);
        assert_eq!(parts[1].0, upoly(&[(-1, 1), (1, 1)]));
    }

    #[test]
    fn counts_roots_with_sturm() {
        // x^3 - 2x: roots -sqrt(2), 0, sqrt(2)
        let p = upoly(&[(0, 1), (-2, 1), (0, 1), (1, 1)]);
        let seq = sturm_sequence(&p).unwrap();
        assert_eq!(count_roots_in(&seq, &rat(-10, 1), &rat(10, 1)), 3);
        assert_eq!(count_roots_in(&seq, &rat(1, 1), &rat(10, 1)), 1);
        assert_eq!(count_roots_in(&seq, &rat(-1, 1), &rat(1, 1)), 1);
    }

    #[test]
    fn real_roots_mixed_rational_irrational() {
        // (x - 1/2)(x^2 - 2) = x^3 - 1/2 x^2 - 2x + 1
        let p = upoly(&[(1, 1), (-2, 1), (-1, 2), (1, 1)]);
        let roots = real_roots(&p, &rat(1, 1024)).unwrap();
        assert_eq!(roots.len(), 3);
        match &roots[0].loc {
            RootLoc::Isolated(iv) => {
                assert!(iv.contains(&rat(-1414214, 1000000)) || iv.width() <= rat(1, 1024));
                assert!(rat_to_f64(&iv.midpoint()) + 1.4142135 < 1e-2);
            }
            other => panic!("expected isolated root, got {other:?}"),
        }
        assert_eq!(roots[1].loc, RootLoc::Exact(rat(1, 2)));
        match &roots[2].loc {
            RootLoc::Isolated(iv) => {
                assert!((rat_to_f64(&iv.midpoint()) - 1.4142135).abs() < 1e-2)
            }
            other => panic!("expected isolated root, got {other:?}"),
        }
    }

    #[test]
    fn real_roots_respect_multiplicity() {
        // (x^2 - 3)^2
        let base = upoly(&[(-3, 1), (0, 1), (1, 1)]);
        let p = mul(&base, &base);
        let roots = real_roots(&p, &rat(1, 1024)).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.iter().all(|r| r.multiplicity == 2));
    }

    #[test]
    fn no_real_roots() {
        let p = upoly(&[(1, 1), (0, 1), (1, 1)]); // x^2 + 1
        assert!(real_roots(&p, &rat(1, 1024)).unwrap().is_empty());
    }

    #[test]
    fn algebraic_sign_evaluation() {
        // alpha = sqrt(2), isolated in [1, 2].
        let p = upoly(&[(-2, 1), (0, 1), (1, 1)]);
        let alpha = RealAlgebraic::Root {
            poly: p.clone(),
            interval: Interval::new(rat(1, 1), rat(2, 1)).unwrap(),
        };
        // sign(alpha^2 - 2) = 0 exactly.
        assert_eq!(alpha.sign_of(&p), 0);
        // sign(alpha - 1.4) > 0, sign(alpha - 1.5) < 0.
        assert_eq!(alpha.sign_of(&upoly(&[(-7, 5), (1, 1)])), 1);
        assert_eq!(alpha.sign_of(&upoly(&[(-3, 2), (1, 1)])), -1);
        // sign of a multiple of the defining polynomial is 0.
        let double = mul(&p, &upoly(&[(5, 1), (3, 1)]));
        assert_eq!(alpha.sign_of(&double), 0);
    }

    #[test]
    fn rational_root_extraction() {
        // 6x^3 - x^2 - 5x + ... pick (2x - 1)(3x + 2)(x - 3) = 6x^3 - 17x^2 - 5x + 6... compute directly:
        let f = mul(
            &mul(&upoly(&[(-1, 1), (2, 1)]), &upoly(&[(2, 1), (3, 1)])),
            &upoly(&[(-3, 1), (1, 1)]),
        );
        let (roots, rest) = rational_roots(&f).unwrap();
        assert_eq!(degree(&rest), Some(0));
        let vals: Vec<Rat> = roots.iter().map(|(r, _)| r.clone()).collect();
        assert!(vals.contains(&rat(1, 2)));
        assert!(vals.contains(&rat(-2, 3)));
        assert!(vals.contains(&rat(3, 1)));
    }

    #[test]
    fn float_conversion() {
        assert!((rat_to_f64(&rat(1, 3)) - 1.0 / 3.0).abs() < 1e-15);
        assert!((rat_to_f64(&rat(-22, 7)) + 22.0 / 7.0).abs() < 1e-14);
        assert_eq!(rat_to_f64(&rat(0, 5)), 0.0);
    }
}
