//! Polynomial ideals over the rationals: Buchberger's algorithm with the
//! Gebauer–Möller pair criteria and sugar selection, reduced Gröbner
//! bases, normal forms, radical membership via an auxiliary variable, and
//! ideal intersection through an elimination order.
//!
//! The engine works fraction-free on primitive integer polynomials with a
//! compact fixed-arity monomial representation; results are returned as
//! monic rational [`MultiPoly`] values. Every potentially long-running
//! entry point takes a [`GbBudget`] and fails with
//! [`IdealError::BudgetExhausted`] — distinguishable from a negative
//! mathematical answer — when the step or wall-clock limit is hit.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::poly::{Monomial, MultiPoly, PolyError, Rat};
use crate::vars::VariableTable;

/// Maximum number of variables the basis engine supports.
pub const MAX_GB_VARS: usize = 12;

#[derive(Debug, Error)]
pub enum IdealError {
    #[error(
        "computation budget exhausted after {steps} S-polynomial reductions ({elapsed:?} elapsed)"
    )]
    BudgetExhausted { steps: u64, elapsed: Duration },
    #[error("generators use different variable tables")]
    TableMismatch,
    #[error("the basis engine supports at most {MAX_GB_VARS} variables, table has {0}")]
    TooManyVariables(usize),
    #[error("exponent {0} too large for the basis engine")]
    ExponentTooLarge(u64),
    #[error("order priority must be a permutation of the table variables")]
    BadOrderPriority,
    #[error("normal forms require a reduced basis")]
    NotReduced,
    #[error("the ideal has no generators over a known table")]
    EmptyGeneratorList,
    #[error("auxiliary variable {0:?} must exist in the table and not occur in the input")]
    AuxiliaryVariable(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Step/time budget for basis computations.
#[derive(Debug, Clone)]
pub struct GbBudget {
    pub max_steps: Option<u64>,
    pub max_time: Option<Duration>,
}

impl Default for GbBudget {
    fn default() -> Self {
        GbBudget {
            max_steps: None,
            max_time: Some(Duration::from_secs(1800)),
        }
    }
}

impl GbBudget {
    pub fn unlimited() -> Self {
        GbBudget {
            max_steps: None,
            max_time: None,
        }
    }

    pub fn steps(n: u64) -> Self {
        GbBudget {
            max_steps: Some(n),
            max_time: None,
        }
    }
}

/// Term-order family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderKind {
    /// Pure lexicographic.
    Lex,
    /// Graded reverse lexicographic.
    DegRevLex,
    /// Block elimination order: the first `block` priority variables are
    /// compared first (by degree, then reverse-lex), then the rest by
    /// graded reverse-lex. Leading terms free of the block variables have
    /// block-free polynomials.
    Elimination { block: usize },
}

/// A monomial order: a kind plus a significance permutation of the table
/// variables (most significant first).
#[derive(Debug, Clone)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    /// `priority[0]` is the most significant variable's table index.
    pub priority: Vec<usize>,
}

impl MonomialOrder {
    /// Builds an order with the named variables most significant, in the
    /// given sequence; unnamed table variables follow in table order.
    pub fn with_leading(
        kind: OrderKind,
        table: &VariableTable,
        leading: &[&str],
    ) -> Result<Self, IdealError> {
        let mut priority = Vec::with_capacity(table.len());
        for name in leading {
            let idx = table.require(name)?;
            if priority.contains(&idx) {
                return Err(IdealError::BadOrderPriority);
            }
            priority.push(idx);
        }
        for idx in 0..table.len() {
            if !priority.contains(&idx) {
                priority.push(idx);
            }
        }
        Ok(MonomialOrder {
            kind,
            priority,
        })
    }

    /// The default order for parameter ideals: graded reverse-lex with
    /// significance `w > a5 > a4 > a3 > a2 > a1 > a0`, then remaining
    /// table variables. Falls back to plain table order when those names
    /// are absent.
    pub fn default_for(table: &VariableTable) -> Self {
        let wanted = ["w", "a5", "a4", "a3", "a2", "a1", "a0"];
        let present: Vec<&str> = wanted
            .iter()
            .copied()
            .filter(|n| table.index(n).is_some())
            .collect();
        MonomialOrder::with_leading(OrderKind::DegRevLex, table, &present)
            .expect("present names form a valid priority")
    }

    fn validate(&self, table: &VariableTable) -> Result<(), IdealError> {
        let n = table.len();
        if self.priority.len() != n {
            return Err(IdealError::BadOrderPriority);
        }
        let mut seen = vec![false; n];
        for &i in &self.priority {
            if i >= n || seen[i] {
                return Err(IdealError::BadOrderPriority);
            }
            seen[i] = true;
        }
        if let OrderKind::Elimination { block } = self.kind {
            if block == 0 || block > n {
                return Err(IdealError::BadOrderPriority);
            }
        }
        Ok(())
    }
}

// ----- internal compact monomials ---------------------------------------------

/// Exponents permuted into priority order (most significant first).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct GMono {
    deg: u32,
    e: [u16; MAX_GB_VARS],
}

impl GMono {
    fn mul(&self, other: &GMono) -> GMono {
        let mut e = [0u16; MAX_GB_VARS];
        for i in 0..MAX_GB_VARS {
            e[i] = self.e[i]
                .checked_add(other.e[i])
                .expect("basis-engine exponent overflow");
        }
        GMono {
            deg: self.deg + other.deg,
            e,
        }
    }

    fn divides(&self, other: &GMono) -> bool {
        if self.deg > other.deg {
            return false;
        }
        self.e.iter().zip(&other.e).all(|(&a, &b)| a <= b)
    }

    fn div(&self, other: &GMono) -> GMono {
        let mut e = [0u16; MAX_GB_VARS];
        for i in 0..MAX_GB_VARS {
            e[i] = self.e[i] - other.e[i];
        }
        GMono {
            deg: self.deg - other.deg,
            e,
        }
    }

    fn lcm(&self, other: &GMono) -> GMono {
        let mut e = [0u16; MAX_GB_VARS];
        let mut deg = 0u32;
        for i in 0..MAX_GB_VARS {
            e[i] = self.e[i].max(other.e[i]);
            deg += e[i] as u32;
        }
        GMono { deg, e }
    }

    fn coprime(&self, other: &GMono) -> bool {
        self.e.iter().zip(&other.e).all(|(&a, &b)| a == 0 || b == 0)
    }
}

/// Order context: compares permuted monomials.
struct OrderCtx {
    kind: OrderKind,
    /// priority-position -> table index
    perm: Vec<usize>,
    nvars: usize,
}

impl OrderCtx {
    fn new(order: &MonomialOrder, table: &VariableTable) -> Result<Self, IdealError> {
        order.validate(table)?;
        if table.len() > MAX_GB_VARS {
            return Err(IdealError::TooManyVariables(table.len()));
        }
        Ok(OrderCtx {
            kind: order.kind,
            perm: order.priority.clone(),
            nvars: table.len(),
        })
    }

    fn convert(&self, m: &Monomial) -> Result<GMono, IdealError> {
        let mut e = [0u16; MAX_GB_VARS];
        let mut deg = 0u32;
        for (pos, &tidx) in self.perm.iter().enumerate() {
            let exp = m.exponents()[tidx];
            let small = u16::try_from(exp).map_err(|_| IdealError::ExponentTooLarge(exp))?;
            e[pos] = small;
            deg = deg
                .checked_add(small as u32)
                .ok_or(IdealError::ExponentTooLarge(exp))?;
        }
        Ok(GMono { deg, e })
    }

    fn restore(&self, g: &GMono) -> Monomial {
        let mut exps = vec![0u64; self.nvars];
        for (pos, &tidx) in self.perm.iter().enumerate() {
            exps[tidx] = g.e[pos] as u64;
        }
        Monomial(exps)
    }

    fn cmp(&self, a: &GMono, b: &GMono) -> Ordering {
        match self.kind {
            OrderKind::Lex => {
                for i in 0..self.nvars {
                    match a.e[i].cmp(&b.e[i]) {
                        Ordering::Equal => {}
                        ord => return ord,
                    }
                }
                Ordering::Equal
            }
            OrderKind::DegRevLex => self.grevlex_range(a, b, 0, self.nvars),
            OrderKind::Elimination { block } => {
                let da: u32 = a.e[..block].iter().map(|&x| x as u32).sum();
                let db: u32 = b.e[..block].iter().map(|&x| x as u32).sum();
                match da.cmp(&db) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
                match self.grevlex_range(a, b, 0, block) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
                self.grevlex_range(a, b, block, self.nvars)
            }
        }
    }

    fn grevlex_range(&self, a: &GMono, b: &GMono, from: usize, to: usize) -> Ordering {
        let da: u32 = a.e[from..to].iter().map(|&x| x as u32).sum();
        let db: u32 = b.e[from..to].iter().map(|&x| x as u32).sum();
        match da.cmp(&db) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for i in (from..to).rev() {
            match a.e[i].cmp(&b.e[i]) {
                Ordering::Equal => {}
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
            }
        }
        Ordering::Equal
    }
}

/// Integer polynomial, terms sorted descending under the order.
type IPoly = Vec<(GMono, BigInt)>;

fn to_ipoly(p: &MultiPoly, ctx: &OrderCtx) -> Result<IPoly, IdealError> {
    let mut den_lcm = BigInt::one();
    for (_, c) in p.terms() {
        den_lcm = den_lcm.lcm(c.denom());
    }
    let mut out: IPoly = Vec::with_capacity(p.num_terms());
    for (m, c) in p.terms() {
        let coeff = c.numer() * (&den_lcm / c.denom());
        out.push((ctx.convert(m)?, coeff));
    }
    out.sort_by(|x, y| ctx.cmp(&y.0, &x.0));
    strip_content(&mut out);
    Ok(out)
}

fn from_ipoly_monic(ip: &IPoly, ctx: &OrderCtx, table: &Arc<VariableTable>) -> MultiPoly {
    let mut out = MultiPoly::zero(table);
    if ip.is_empty() {
        return out;
    }
    let lc = Rat::from(ip[0].1.clone());
    for (g, c) in ip {
        out.add_term(ctx.restore(g), Rat::from(c.clone()) / &lc);
    }
    out
}

/// Divides by the integer content and normalizes the leading sign to +.
fn strip_content(p: &mut IPoly) {
    if p.is_empty() {
        return;
    }
    let mut g = BigInt::zero();
    for (_, c) in p.iter() {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    if p[0].1.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for (_, c) in p.iter_mut() {
            *c = &*c / &g;
        }
    }
}

// ----- fraction-free reduction -------------------------------------------------

/// Fully reduces `f` modulo the leading terms of `basis` (fraction-free).
/// Returns the primitive remainder and the accumulated sugar degree.
fn reduce_ipoly(
    mut f: IPoly,
    mut sugar: u64,
    basis: &[BasisEntry],
    ctx: &OrderCtx,
) -> (IPoly, u64) {
    let mut i = 0usize;
    let mut ops = 0u32;
    'work: while i < f.len() {
        let (tm, tc) = f[i].clone();
        for entry in basis {
            if entry.poly.is_empty() {
                continue;
            }
            let (gm, gc) = &entry.poly[0];
            if !gm.divides(&tm) {
                continue;
            }
            let u = tm.div(gm);
            let d = tc.gcd(gc);
            let scale_f = gc / &d;
            let scale_g = &tc / &d;
            // f <- scale_f * f - scale_g * u * g   (cancels term i exactly)
            f = linear_combine(&f, &scale_f, &entry.poly, &scale_g, &u, ctx);
            sugar = sugar.max(entry.sugar + u.deg as u64);
            ops += 1;
            if ops % 48 == 0 {
                strip_content(&mut f);
            }
            continue 'work;
        }
        i += 1;
    }
    strip_content(&mut f);
    (f, sugar)
}

/// Computes `a*f - b*(u*g)` as a sorted merge (both inputs sorted).
fn linear_combine(
    f: &IPoly,
    a: &BigInt,
    g: &IPoly,
    b: &BigInt,
    u: &GMono,
    ctx: &OrderCtx,
) -> IPoly {
    let mut out: IPoly = Vec::with_capacity(f.len() + g.len());
    let mut i = 0;
    let mut j = 0;
    while i < f.len() || j < g.len() {
        if j >= g.len() {
            out.push((f[i].0, &f[i].1 * a));
            i += 1;
            continue;
        }
        let gm = g[j].0.mul(u);
        if i >= f.len() {
            out.push((gm, -(&g[j].1 * b)));
            j += 1;
            continue;
        }
        match ctx.cmp(&f[i].0, &gm) {
            Ordering::Greater => {
                out.push((f[i].0, &f[i].1 * a));
                i += 1;
            }
            Ordering::Less => {
                out.push((gm, -(&g[j].1 * b)));
                j += 1;
            }
            Ordering::Equal => {
                let c = &f[i].1 * a - &g[j].1 * b;
                if !c.is_zero() {
                    out.push((gm, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

struct BasisEntry {
    poly: IPoly,
    sugar: u64,
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: GMono,
    sugar: u64,
}

/// Gebauer–Möller pair-set update for a newly added basis element `t`.
fn gm_update(basis: &[BasisEntry], pairs: &mut Vec<Pair>, t: usize) {
    let lt = basis[t].poly[0].0;
    let make = |i: usize| -> Pair {
        let li = basis[i].poly[0].0;
        let lcm = li.lcm(&lt);
        let s = (basis[i].sugar + (lcm.deg - li.deg) as u64)
            .max(basis[t].sugar + (lcm.deg - lt.deg) as u64);
        Pair {
            i,
            j: t,
            lcm,
            sugar: s,
        }
    };
    let candidates: Vec<Pair> = (0..t)
        .filter(|&i| !basis[i].poly.is_empty())
        .map(make)
        .collect();

    // M criterion: drop (i,t) when another new pair's lcm strictly
    // divides its lcm.
    let survives_m: Vec<bool> = candidates
        .iter()
        .map(|p| {
            !candidates
                .iter()
                .any(|q| q.lcm != p.lcm && q.lcm.divides(&p.lcm))
        })
        .collect();

    // F criterion: among equal lcms keep one representative, unless some
    // member has coprime leading monomials (then drop the whole class).
    let mut kept: Vec<Pair> = Vec::new();
    for (idx, p) in candidates.iter().enumerate() {
        if !survives_m[idx] {
            continue;
        }
        let class_coprime = candidates.iter().enumerate().any(|(k, q)| {
            survives_m[k] && q.lcm == p.lcm && basis[q.i].poly[0].0.coprime(&lt)
        });
        if class_coprime {
            continue;
        }
        if kept.iter().any(|q| q.lcm == p.lcm) {
            continue;
        }
        kept.push(p.clone());
    }

    // B criterion: prune old pairs strictly covered by the new element.
    pairs.retain(|p| {
        let li = basis[p.i].poly[0].0;
        let lj = basis[p.j].poly[0].0;
        !(lt.divides(&p.lcm) && li.lcm(&lt) != p.lcm && lj.lcm(&lt) != p.lcm)
    });
    pairs.extend(kept);
}

/// A (reduced, monic) Gröbner basis together with its order.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    pub table: Arc<VariableTable>,
    pub order: MonomialOrder,
    /// Monic generators, sorted ascending by leading monomial.
    pub gens: Vec<MultiPoly>,
    /// Number of S-polynomial reduction steps performed.
    pub steps: u64,
}

impl GroebnerBasis {
    /// True when the basis is `{1}` (the whole ring).
    pub fn is_unit_ideal(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].total_degree() == Some(0)
    }

    /// True when the basis has no generators (the zero ideal).
    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }
}

fn budget_check(
    budget: &GbBudget,
    steps: u64,
    start: Instant,
) -> Result<(), IdealError> {
    if let Some(max) = budget.max_steps {
        if steps >= max {
            return Err(IdealError::BudgetExhausted {
                steps,
                elapsed: start.elapsed(),
            });
        }
    }
    if let Some(max) = budget.max_time {
        if start.elapsed() >= max {
            return Err(IdealError::BudgetExhausted {
                steps,
                elapsed: start.elapsed(),
            });
        }
    }
    Ok(())
}

/// Computes the reduced Gröbner basis of the ideal generated by `gens`
/// under `order`, within `budget`.
pub fn buchberger(
    gens: &[MultiPoly],
    order: &MonomialOrder,
    budget: &GbBudget,
) -> Result<GroebnerBasis, IdealError> {
    let table = common_table(gens)?;
    let ctx = OrderCtx::new(order, &table)?;
    let start = Instant::now();

    let mut basis: Vec<BasisEntry> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut steps = 0u64;

    let add_element = |basis: &mut Vec<BasisEntry>,
                           pairs: &mut Vec<Pair>,
                           poly: IPoly,
                           sugar: u64|
     -> bool {
        // Returns true when the ideal is revealed to be the unit ideal.
        let unit = poly.len() >= 1 && poly[0].0.deg == 0;
        basis.push(BasisEntry { poly, sugar });
        let t = basis.len() - 1;
        gm_update(basis, pairs, t);
        unit
    };

    for g in gens {
        if g.is_zero() {
            continue;
        }
        let ip = to_ipoly(g, &ctx)?;
        let sugar = ip[0].0.deg as u64;
        // Interreduce inputs lightly: full reduction keeps the basis tidy.
        let (red, sug) = reduce_ipoly(ip, sugar, &basis, &ctx);
        if red.is_empty() {
            continue;
        }
        if add_element(&mut basis, &mut pairs, red, sug) {
            return Ok(finalize(basis, order, &ctx, &table, steps));
        }
    }

    while !pairs.is_empty() {
        budget_check(budget, steps, start)?;
        // Sugar selection: smallest (sugar, lcm) first.
        let mut best = 0usize;
        for k in 1..pairs.len() {
            let a = &pairs[k];
            let b = &pairs[best];
            let ord = a
                .sugar
                .cmp(&b.sugar)
                .then_with(|| ctx.cmp(&a.lcm, &b.lcm))
                .then(a.j.cmp(&b.j))
                .then(a.i.cmp(&b.i));
            if ord == Ordering::Less {
                best = k;
            }
        }
        let pair = pairs.swap_remove(best);
        let f = &basis[pair.i].poly;
        let g = &basis[pair.j].poly;
        let (lf, cf) = (&f[0].0, &f[0].1);
        let (lg, cg) = (&g[0].0, &g[0].1);
        let d = cf.gcd(cg);
        let uf = pair.lcm.div(lf);
        let ug = pair.lcm.div(lg);
        // S = (cg/d) * uf * f  -  (cf/d) * ug * g
        let sf: IPoly = f
            .iter()
            .map(|(m, c)| (m.mul(&uf), c * (cg / &d)))
            .collect();
        let spoly = linear_combine(&sf, &BigInt::one(), g, &(cf / &d), &ug, &ctx);
        steps += 1;
        let (red, sug) = reduce_ipoly(spoly, pair.sugar, &basis, &ctx);
        if red.is_empty() {
            continue;
        }
        if add_element(&mut basis, &mut pairs, red, sug) {
            return Ok(finalize(basis, order, &ctx, &table, steps));
        }
    }

    Ok(finalize(basis, order, &ctx, &table, steps))
}

fn common_table(gens: &[MultiPoly]) -> Result<Arc<VariableTable>, IdealError> {
    let first = gens.first().ok_or(IdealError::EmptyGeneratorList)?;
    for g in &gens[1..] {
        if !first.table().compatible(g.table()) {
            return Err(IdealError::TableMismatch);
        }
    }
    Ok(Arc::clone(first.table()))
}

/// Interreduces the final basis into the unique reduced monic form.
fn finalize(
    mut basis: Vec<BasisEntry>,
    order: &MonomialOrder,
    ctx: &OrderCtx,
    table: &Arc<VariableTable>,
    steps: u64,
) -> GroebnerBasis {
    // Shortcut: a unit in the basis collapses everything to {1}.
    if basis
        .iter()
        .any(|e| !e.poly.is_empty() && e.poly[0].0.deg == 0)
    {
        return GroebnerBasis {
            table: Arc::clone(table),
            order: order.clone(),
            gens: vec![MultiPoly::one(table)],
            steps,
        };
    }
    // Drop entries whose leading monomial is divisible by another's.
    basis.retain(|e| !e.poly.is_empty());
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let li = basis[i].poly[0].0;
            let lj = basis[j].poly[0].0;
            if lj.divides(&li) && (lj != li || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let mut minimal: Vec<BasisEntry> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(e, k)| k.then_some(e))
        .collect();

    // Fully reduce each element against the others until stable.
    loop {
        let mut changed = false;
        for i in 0..minimal.len() {
            let me = std::mem::replace(
                &mut minimal[i],
                BasisEntry {
                    poly: Vec::new(),
                    sugar: 0,
                },
            );
            let sugar = me.sugar;
            let original = me.poly.clone();
            let others: Vec<&BasisEntry> =
                minimal.iter().filter(|e| !e.poly.is_empty()).collect();
            let (red, _) = reduce_ipoly_refs(me.poly, sugar, &others, ctx);
            if red != original {
                changed = true;
            }
            minimal[i] = BasisEntry { poly: red, sugar };
        }
        minimal.retain(|e| !e.poly.is_empty());
        if !changed {
            break;
        }
    }

    let mut gens: Vec<MultiPoly> = minimal
        .iter()
        .map(|e| from_ipoly_monic(&e.poly, ctx, table))
        .collect();
    // Sort ascending by leading monomial under the order.
    let mut keyed: Vec<(GMono, MultiPoly)> = gens
        .drain(..)
        .map(|g| {
            let lm = {
                let mut best: Option<GMono> = None;
                for (m, _) in g.terms() {
                    let gm = ctx.convert(m).expect("exponents already validated");
                    best = Some(match best {
                        None => gm,
                        Some(b) => {
                            if ctx.cmp(&gm, &b) == Ordering::Greater {
                                gm
                            } else {
                                b
                            }
                        }
                    });
                }
                best.expect("nonzero generator")
            };
            (lm, g)
        })
        .collect();
    keyed.sort_by(|a, b| ctx.cmp(&a.0, &b.0));
    GroebnerBasis {
        table: Arc::clone(table),
        order: order.clone(),
        gens: keyed.into_iter().map(|(_, g)| g).collect(),
        steps,
    }
}

/// Variant of [`reduce_ipoly`] over borrowed entries (used by finalize).
fn reduce_ipoly_refs(
    mut f: IPoly,
    mut sugar: u64,
    basis: &[&BasisEntry],
    ctx: &OrderCtx,
) -> (IPoly, u64) {
    let mut i = 0usize;
    let mut ops = 0u32;
    'work: while i < f.len() {
        let (tm, tc) = f[i].clone();
        for entry in basis {
            if entry.poly.is_empty() {
                continue;
            }
            let (gm, gc) = &entry.poly[0];
            if !gm.divides(&tm) {
                continue;
            }
            let u = tm.div(gm);
            let d = tc.gcd(gc);
            let scale_f = gc / &d;
            let scale_g = &tc / &d;
            f = linear_combine(&f, &scale_f, &entry.poly, &scale_g, &u, ctx);
            sugar = sugar.max(entry.sugar + u.deg as u64);
            ops += 1;
            if ops % 48 == 0 {
                strip_content(&mut f);
            }
            continue 'work;
        }
        i += 1;
    }
    strip_content(&mut f);
    (f, sugar)
}

/// The normal form of `p` modulo a reduced basis: the unique remainder
/// with no term divisible by any basis leading monomial.
pub fn normal_form(p: &MultiPoly, gb: &GroebnerBasis) -> Result<MultiPoly, IdealError> {
    if !p.table().compatible(&gb.table) {
        return Err(IdealError::TableMismatch);
    }
    let ctx = OrderCtx::new(&gb.order, &gb.table)?;
    // Convert basis to sorted rational term vectors (monic already).
    let basis: Vec<Vec<(GMono, Rat)>> = gb
        .gens
        .iter()
        .map(|g| {
            let mut v: Vec<(GMono, Rat)> = g
                .terms()
                .map(|(m, c)| Ok((ctx.convert(m)?, c.clone())))
                .collect::<Result<_, IdealError>>()?;
            v.sort_by(|a, b| ctx.cmp(&b.0, &a.0));
            Ok(v)
        })
        .collect::<Result<_, IdealError>>()?;

    let mut work: Vec<(GMono, Rat)> = p
        .terms()
        .map(|(m, c)| Ok((ctx.convert(m)?, c.clone())))
        .collect::<Result<_, IdealError>>()?;
    work.sort_by(|a, b| ctx.cmp(&b.0, &a.0));

    let mut rem: Vec<(GMono, Rat)> = Vec::new();
    let mut i = 0usize;
    'work: while i < work.len() {
        let (tm, tc) = work[i].clone();
        if tc.is_zero() {
            i += 1;
            continue;
        }
        for g in &basis {
            let (gm, _) = &g[0];
            if !gm.divides(&tm) {
                continue;
            }
            let u = tm.div(gm);
            // work -= tc * u * g  (g monic), merging sorted sequences.
            let mut out: Vec<(GMono, Rat)> = Vec::with_capacity(work.len() + g.len());
            let (mut a, mut b) = (i, 0usize);
            out.extend_from_slice(&work[..i]);
            while a < work.len() || b < g.len() {
                if b >= g.len() {
                    out.push(work[a].clone());
                    a += 1;
                    continue;
                }
                let gm2 = g[b].0.mul(&u);
                if a >= work.len() {
                    out.push((gm2, -(&g[b].1 * &tc)));
                    b += 1;
                    continue;
                }
                match ctx.cmp(&work[a].0, &gm2) {
                    Ordering::Greater => {
                        out.push(work[a].clone());
                        a += 1;
                    }
                    Ordering::Less => {
                        out.push((gm2, -(&g[b].1 * &tc)));
                        b += 1;
                    }
                    Ordering::Equal => {
                        let c = &work[a].1 - &(&g[b].1 * &tc);
                        if !c.is_zero() {
                            out.push((gm2, c));
                        }
                        a += 1;
                        b += 1;
                    }
                }
            }
            work = out;
            continue 'work;
        }
        rem.push((tm, tc));
        i += 1;
    }

    let mut out = MultiPoly::zero(&gb.table);
    for (g, c) in rem {
        out.add_term(ctx.restore(&g), c);
    }
    Ok(out)
}

/// Ideal membership: `p` is in the ideal iff its normal form vanishes.
pub fn is_in_ideal(p: &MultiPoly, gb: &GroebnerBasis) -> Result<bool, IdealError> {
    Ok(normal_form(p, gb)?.is_zero())
}

/// Radical membership: adjoins `1 - w*p` for the auxiliary variable `w`
/// (which must exist in the table and occur nowhere in the input) and
/// tests whether the saturated ideal is the unit ideal.
pub fn is_in_radical(
    p: &MultiPoly,
    gens: &[MultiPoly],
    budget: &GbBudget,
) -> Result<bool, IdealError> {
    let table = common_table(gens)?;
    if !p.table().compatible(&table) {
        return Err(IdealError::TableMismatch);
    }
    let w_idx = table
        .index("w")
        .ok_or_else(|| IdealError::AuxiliaryVariable("w".to_string()))?;
    if !p.uses_only(&complement(&table, w_idx)) {
        return Err(IdealError::AuxiliaryVariable("w".to_string()));
    }
    for g in gens {
        if !g.uses_only(&complement(&table, w_idx)) {
            return Err(IdealError::AuxiliaryVariable("w".to_string()));
        }
    }
    if p.is_zero() {
        return Ok(true);
    }
    let w = MultiPoly::var_idx(&table, w_idx);
    let one = MultiPoly::one(&table);
    let mut all: Vec<MultiPoly> = gens.to_vec();
    all.push(&one - &(&w * p));
    let order = MonomialOrder::default_for(&table);
    let gb = buchberger(&all, &order, budget)?;
    Ok(gb.is_unit_ideal())
}

fn complement(table: &VariableTable, excluded: usize) -> Vec<usize> {
    (0..table.len()).filter(|&i| i != excluded).collect()
}

/// Intersection of two ideals via `J = w*A + (1-w)*B`, eliminating the
/// auxiliary variable `w` with a block order. Returns generators of
/// `A ∩ B` (a Gröbner basis of it under the elimination order, restricted
/// to the `w`-free variables).
pub fn intersect(
    a: &[MultiPoly],
    b: &[MultiPoly],
    budget: &GbBudget,
) -> Result<Vec<MultiPoly>, IdealError> {
    let table = common_table(a).or_else(|_| common_table(b))?;
    for g in a.iter().chain(b) {
        if !g.table().compatible(&table) {
            return Err(IdealError::TableMismatch);
        }
    }
    let w_idx = table
        .index("w")
        .ok_or_else(|| IdealError::AuxiliaryVariable("w".to_string()))?;
    let others = complement(&table, w_idx);
    for g in a.iter().chain(b) {
        if !g.uses_only(&others) {
            return Err(IdealError::AuxiliaryVariable("w".to_string()));
        }
    }
    let w = MultiPoly::var_idx(&table, w_idx);
    let one_minus_w = &MultiPoly::one(&table) - &w;
    let mut gens: Vec<MultiPoly> = Vec::with_capacity(a.len() + b.len());
    for g in a {
        gens.push(&w * g);
    }
    for g in b {
        gens.push(&one_minus_w * g);
    }
    let order = MonomialOrder::with_leading(
        OrderKind::Elimination { block: 1 },
        &table,
        &["w"],
    )?;
    let gb = buchberger(&gens, &order, budget)?;
    Ok(gb
        .gens
        .into_iter()
        .filter(|g| g.uses_only(&others))
        .collect())
}

/// Evaluates every generator at a rational point given by variable name.
pub fn evaluate_ideal(
    gens: &[MultiPoly],
    point: &BTreeMap<String, Rat>,
) -> Result<Vec<Rat>, IdealError> {
    let table = common_table(gens)?;
    let mut by_idx = BTreeMap::new();
    for (name, v) in point {
        by_idx.insert(table.require(name)?, v.clone());
    }
    let mut out = Vec::with_capacity(gens.len());
    for g in gens {
        out.push(g.eval(&by_idx)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::poly::rat_int;

    fn table() -> Arc<VariableTable> {
        VariableTable::canonical()
    }

    fn polys(strs: &[&str]) -> Vec<MultiPoly> {
        let t = table();
        strs.iter().map(|s| parse_poly(&t, s).unwrap()).collect()
    }

    fn xy_first_order() -> MonomialOrder {
        MonomialOrder::with_leading(OrderKind::DegRevLex, &table(), &["x", "y"]).unwrap()
    }

    #[test]
    fn textbook_basis() {
        let gens = polys(&["x^2 + y^2", "x*y"]);
        let gb = buchberger(&gens, &xy_first_order(), &GbBudget::unlimited()).unwrap();
        let expect = polys(&["y^3", "x*y", "x^2 + y^2"]);
        assert_eq!(gb.gens.len(), 3);
        for e in &expect {
            assert!(gb.gens.contains(e), "missing {e}");
        }
    }

    #[test]
    fn normal_forms_and_membership() {
        let gens = polys(&["x^2 + y^2", "x*y"]);
        let gb = buchberger(&gens, &xy_first_order(), &GbBudget::unlimited()).unwrap();
        let t = table();
        // x^3 = x*(x^2+y^2) - y*(x*y) is in the ideal.
        let p = parse_poly(&t, "x^3").unwrap();
        assert!(is_in_ideal(&p, &gb).unwrap());
        // x^2 reduces to -y^2 (not in the ideal).
        let q = parse_poly(&t, "x^2").unwrap();
        let nf = normal_form(&q, &gb).unwrap();
        assert_eq!(nf, parse_poly(&t, "-y^2").unwrap());
        // y^4 = y*(y^3) is in.
        assert!(is_in_ideal(&parse_poly(&t, "y^4").unwrap(), &gb).unwrap());
        // Linear combination with nontrivial cofactors.
        let r = parse_poly(&t, "x^3 + 7*x*y - 2*y^3").unwrap();
        assert!(is_in_ideal(&r, &gb).unwrap());
    }

    #[test]
    fn reduced_basis_is_idempotent() {
        let gens = polys(&[
            "a3^2 + 49/18*a2^2",
            "a0",
            "a1",
            "a4 + a2 + 5*a0",
            "a5 + 1/7*a3",
        ]);
        let order = MonomialOrder::default_for(&table());
        let gb = buchberger(&gens, &order, &GbBudget::unlimited()).unwrap();
        let gb2 = buchberger(&gb.gens, &order, &GbBudget::unlimited()).unwrap();
        assert_eq!(gb.gens, gb2.gens);
        // Each generator is already its own normal form against the others.
        for (i, g) in gb.gens.iter().enumerate() {
            let others: Vec<MultiPoly> = gb
                .gens
                .iter()
                .enumerate()
                .filter_map(|(j, h)| (j != i).then(|| h.clone()))
                .collect();
            let sub = buchberger(&others, &order, &GbBudget::unlimited()).unwrap();
            let nf = normal_form(g, &sub).unwrap();
            assert_eq!(&nf, g);
        }
    }

    #[test]
    fn radical_membership() {
        let t = table();
        let gens = polys(&["a0^2"]);
        let a0 = parse_poly(&t, "a0").unwrap();
        let a1 = parse_poly(&t, "a1 + 1").unwrap();
        assert!(is_in_radical(&a0, &gens, &GbBudget::unlimited()).unwrap());
        assert!(!is_in_radical(&a1, &gens, &GbBudget::unlimited()).unwrap());
        // Zero is in every radical; constants are not (proper ideal).
        let zero = MultiPoly::zero(&t);
        assert!(is_in_radical(&zero, &gens, &GbBudget::unlimited()).unwrap());
    }

    #[test]
    fn radical_rejects_w_in_input() {
        let t = table();
        let gens = polys(&["w*a0"]);
        let p = parse_poly(&t, "a0").unwrap();
        assert!(matches!(
            is_in_radical(&p, &gens, &GbBudget::unlimited()),
            Err(IdealError::AuxiliaryVariable(_))
        ));
    }

    #[test]
    fn intersection_of_principal_ideals() {
        let a = polys(&["a0"]);
        let b = polys(&["a1"]);
        let meet = intersect(&a, &b, &GbBudget::unlimited()).unwrap();
        assert_eq!(meet.len(), 1);
        assert_eq!(meet[0], polys(&["a0*a1"])[0]);
    }

    #[test]
    fn intersection_with_overlap() {
        // <a0> ∩ <a0, a1> = <a0>.
        let a = polys(&["a0"]);
        let b = polys(&["a0", "a1"]);
        let meet = intersect(&a, &b, &GbBudget::unlimited()).unwrap();
        assert_eq!(meet, polys(&["a0"]));
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let gens = polys(&["x^2 + y^2", "x*y"]);
        let result = buchberger(&gens, &xy_first_order(), &GbBudget::steps(1));
        assert!(matches!(
            result,
            Err(IdealError::BudgetExhausted { steps: 1, .. })
        ));
    }

    #[test]
    fn unit_ideal_collapses() {
        let gens = polys(&["a0", "a0 + 1"]);
        let order = MonomialOrder::default_for(&table());
        let gb = buchberger(&gens, &order, &GbBudget::unlimited()).unwrap();
        assert!(gb.is_unit_ideal());
    }

    #[test]
    fn evaluate_ideal_at_point() {
        let gens = polys(&["a0 + a1", "a0*a1 - 2"]);
        let mut pt = BTreeMap::new();
        pt.insert("a0".to_string(), rat_int(2));
        pt.insert("a1".to_string(), rat_int(-1));
        let vals = evaluate_ideal(&gens, &pt).unwrap();
        assert_eq!(vals, vec![rat_int(1), rat_int(-4)]);
    }

    #[test]
    fn lex_order_eliminates() {
        // Under lex x > y, GB of <x - y^2, x*y - 1> contains y^3 - 1.
        let gens = polys(&["x - y^2", "x*y - 1"]);
        let order =
            MonomialOrder::with_leading(OrderKind::Lex, &table(), &["x", "y"]).unwrap();
        let gb = buchberger(&gens, &order, &GbBudget::unlimited()).unwrap();
        let t = table();
        let target = parse_poly(&t, "y^3 - 1").unwrap();
        assert!(gb.gens.contains(&target), "basis: {:?}", gb.gens);
    }
}
