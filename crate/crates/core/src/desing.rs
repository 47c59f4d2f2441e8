//! Desingularization of degenerate equilibria by directional blow-ups.
//!
//! The module provides three layers:
//!
//! * exact coordinate transformations on whole systems — vertical and
//!   horizontal blow-ups, the shear ("twist") used when the vertical
//!   direction is characteristic, time rescaling by powers of a
//!   coordinate, and translations — together with a replayable log;
//! * classification of an isolated equilibrium from its linear part,
//!   including the semi-hyperbolic reduction (solve the hyperbolic
//!   equation for the slaved variable as a power series, substitute into
//!   the center equation and read the leading term);
//! * a depth-limited recursive driver that blows up linearly-degenerate
//!   points, classifies every equilibrium on the exceptional line, and
//!   assembles the local sector structure when blowing back down, tagging
//!   each separatrix as lying on the line at infinity or being a finite
//!   orbit.
//!
//! Throughout, scalars live in ℚ or in one real quadratic extension
//! ℚ(√r), so points such as equilibria at coordinates `a/√b` are handled
//! exactly. Sector sequences are cyclic lists alternating separatrices and
//! sectors (hyperbolic, elliptic, parabolic); a point whose neighborhood
//! is a single rotational or radial family is reported as one parabolic
//! item.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::compactify::ChartField;
use crate::field2::{
    is_rational_square, solve_quadratic, uni, Field2Error, Poly2, Quad, Scalar,
};
use crate::poly::{rat, rat_int, Monomial, MultiPoly, PolyError, Rat};
use crate::roots::{
    self, RealAlgebraic, RootError, RootLoc, UniPoly,
};
use crate::system::{PlanarSystem, SystemError};

/// Default recursion limit for the blow-up driver.
pub const DEFAULT_BLOWUP_DEPTH: u32 = 6;
/// Default truncation order for the semi-hyperbolic power series.
pub const DEFAULT_SERIES_ORDER: usize = 12;
/// Maximum number of shears tried before giving up on making the vertical
/// direction non-characteristic.
const MAX_TWISTS: usize = 6;

/// Errors from transformations and classification.
#[derive(Debug, Error)]
pub enum DesingError {
    #[error("the requested point is not an equilibrium of the system")]
    NotEquilibrium,
    #[error("time rescale does not divide the system exactly")]
    InexactRescale,
    #[error("semi-hyperbolic series did not resolve within order {0}")]
    SeriesTruncation(usize),
    #[error("system has unbound parameters; bind them before classification")]
    SymbolicParameters,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    System(#[from] SystemError),
    #[error(transparent)]
    Field2(#[from] Field2Error),
    #[error(transparent)]
    Root(#[from] RootError),
}

// ----- whole-system transformations ---------------------------------------------

/// One exact change of variables (or of time) applied to a planar system.
///
/// `Twist` is the shear `(x, y) → (x − y, y)` read as "old coordinates in
/// terms of new"; `Untwist` is its inverse. `TimeRescale(k)` divides both
/// components by `x^k` (which reverses orbit orientation on `x < 0` when
/// `k` is odd).
#[derive(Debug, Clone, PartialEq)]
pub enum TransformKind {
    VerticalBlowup,
    HorizontalBlowup,
    Twist,
    Untwist,
    TimeRescale(u32),
    Translate(Rat, Rat),
}

impl std::fmt::Display for TransformKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TransformKind::VerticalBlowup => write!(f, "vertical_blowup"),
            TransformKind::HorizontalBlowup => write!(f, "horizontal_blowup"),
            TransformKind::Twist => write!(f, "twist"),
            TransformKind::Untwist => write!(f, "untwist"),
            TransformKind::TimeRescale(k) => write!(f, "time_rescale({k})"),
            TransformKind::Translate(a, b) => write!(f, "translate({a},{b})"),
        }
    }
}

fn binom(n: u64, k: u64) -> Rat {
    Rat::from_integer(num_integer::binomial(BigInt::from(n), BigInt::from(k)))
}

fn rat_is_zero(r: &Rat) -> bool {
    num_traits::Zero::is_zero(r)
}

/// Substitute `y → y·x` (exponent remap `(a, b) → (a + b, b)`).
fn subst_y_to_yx(p: &MultiPoly, xi: usize, yi: usize) -> MultiPoly {
    let mut out = MultiPoly::zero(p.table());
    for (mono, c) in p.terms() {
        let mut e = mono.exponents().to_vec();
        e[xi] += e[yi];
        out.add_term(Monomial(e), c.clone());
    }
    out
}

/// Substitute `x → x·y`.
fn subst_x_to_xy(p: &MultiPoly, xi: usize, yi: usize) -> MultiPoly {
    let mut out = MultiPoly::zero(p.table());
    for (mono, c) in p.terms() {
        let mut e = mono.exponents().to_vec();
        e[yi] += e[xi];
        out.add_term(Monomial(e), c.clone());
    }
    out
}

/// Substitute `x → x + s·y` for `s = ±1`.
fn subst_shear(p: &MultiPoly, xi: usize, yi: usize, s: i64) -> MultiPoly {
    let mut out = MultiPoly::zero(p.table());
    let sr = rat_int(s);
    for (mono, c) in p.terms() {
        let a = mono.exponents()[xi];
        for i in 0..=a {
            let mut e = mono.exponents().to_vec();
            e[xi] = i;
            e[yi] += a - i;
            let mut coeff = c * binom(a, i);
            let mut pw = Rat::from_integer(1.into());
            for _ in 0..(a - i) {
                pw *= &sr;
            }
            coeff *= pw;
            out.add_term(Monomial(e), coeff);
        }
    }
    out
}

/// Substitute `x → x + α`, `y → y + β`.
fn subst_translate(p: &MultiPoly, xi: usize, yi: usize, alpha: &Rat, beta: &Rat) -> MultiPoly {
    let mut out = MultiPoly::zero(p.table());
    for (mono, c) in p.terms() {
        let a = mono.exponents()[xi];
        let b = mono.exponents()[yi];
        for i in 0..=a {
            let mut pa = Rat::from_integer(1.into());
            for _ in 0..(a - i) {
                pa *= alpha;
            }
            for j in 0..=b {
                let mut pb = Rat::from_integer(1.into());
                for _ in 0..(b - j) {
                    pb *= beta;
                }
                let mut e = mono.exponents().to_vec();
                e[xi] = i;
                e[yi] = j;
                out.add_term(Monomial(e), c * binom(a, i) * binom(b, j) * &pa * &pb);
            }
        }
    }
    out
}

/// Exact division by `x^k`; errors when some term has a smaller power.
fn div_var_power(p: &MultiPoly, vi: usize, k: u64) -> Result<MultiPoly, DesingError> {
    let mut out = MultiPoly::zero(p.table());
    for (mono, c) in p.terms() {
        if mono.exponents()[vi] < k {
            return Err(DesingError::InexactRescale);
        }
        let mut e = mono.exponents().to_vec();
        e[vi] -= k;
        out.add_term(Monomial(e), c.clone());
    }
    Ok(out)
}

fn var_poly(sys: &PlanarSystem, vi: usize) -> MultiPoly {
    let mut out = MultiPoly::zero(sys.table());
    out.add_term(Monomial::var(sys.table().len(), vi), rat_int(1));
    out
}

/// Apply one exact transformation to a system.
///
/// The blow-ups require the origin to be an equilibrium (so that the
/// single division they perform is exact); `TimeRescale` requires exact
/// divisibility of both components.
pub fn transform(sys: &PlanarSystem, kind: &TransformKind) -> Result<PlanarSystem, DesingError> {
    let (xi, yi) = (sys.x_idx(), sys.y_idx());
    let (p, q) = (sys.p(), sys.q());
    let (np, nq) = match kind {
        TransformKind::VerticalBlowup => {
            if !rat_is_zero(&p.constant_term()) || !rat_is_zero(&q.constant_term()) {
                return Err(DesingError::NotEquilibrium);
            }
            let ps = subst_y_to_yx(p, xi, yi);
            let qs = subst_y_to_yx(q, xi, yi);
            let num = &qs - &(&var_poly(sys, yi) * &ps);
            (ps, div_var_power(&num, xi, 1)?)
        }
        TransformKind::HorizontalBlowup => {
            if !rat_is_zero(&p.constant_term()) || !rat_is_zero(&q.constant_term()) {
                return Err(DesingError::NotEquilibrium);
            }
            let ps = subst_x_to_xy(p, xi, yi);
            let qs = subst_x_to_xy(q, xi, yi);
            let num = &ps - &(&var_poly(sys, xi) * &qs);
            (div_var_power(&num, yi, 1)?, qs)
        }
        TransformKind::Twist => {
            let ps = subst_shear(p, xi, yi, -1);
            let qs = subst_shear(q, xi, yi, -1);
            (&ps + &qs, qs)
        }
        TransformKind::Untwist => {
            let ps = subst_shear(p, xi, yi, 1);
            let qs = subst_shear(q, xi, yi, 1);
            (&ps - &qs, qs)
        }
        TransformKind::TimeRescale(k) => (
            div_var_power(p, xi, u64::from(*k))?,
            div_var_power(q, xi, u64::from(*k))?,
        ),
        TransformKind::Translate(a, b) => (
            subst_translate(p, xi, yi, a, b),
            subst_translate(q, xi, yi, a, b),
        ),
    };
    Ok(PlanarSystem::new(np, nq)?)
}

/// A system together with the log of transformations that produced it.
///
/// Invariant: replaying `steps` from `start` reproduces `current` exactly.
#[derive(Debug, Clone)]
pub struct TransformChain {
    pub start: PlanarSystem,
    pub steps: Vec<TransformKind>,
    pub current: PlanarSystem,
}

impl TransformChain {
    pub fn new(start: PlanarSystem) -> Self {
        TransformChain {
            current: start.clone(),
            start,
            steps: Vec::new(),
        }
    }

    /// Apply a transformation and append it to the log.
    pub fn apply(&mut self, kind: TransformKind) -> Result<&PlanarSystem, DesingError> {
        self.current = transform(&self.current, &kind)?;
        self.steps.push(kind);
        Ok(&self.current)
    }

    /// Recompute the final system from the log alone.
    pub fn replay(&self) -> Result<PlanarSystem, DesingError> {
        let mut sys = self.start.clone();
        for step in &self.steps {
            sys = transform(&sys, step)?;
        }
        Ok(sys)
    }
}

// ----- characteristic directions -------------------------------------------------

/// The data deciding which directions orbits can use to approach the
/// origin: with `P_k, Q_k` the lowest-degree components, the homogeneous
/// form `gamma = P_k·y − Q_k·x` vanishes exactly on the characteristic
/// directions. When `gamma ≡ 0` every direction is characteristic
/// (`dicritical`). `full_gamma = y·P − x·Q` is the same construction
/// applied to the whole field.
#[derive(Debug, Clone)]
pub struct CharacteristicForm {
    pub k: u64,
    pub gamma: MultiPoly,
    pub full_gamma: MultiPoly,
    pub dicritical: bool,
}

/// Compute the characteristic form at the origin.
pub fn characteristic_form(sys: &PlanarSystem) -> Result<CharacteristicForm, DesingError> {
    if !rat_is_zero(&sys.p().constant_term()) || !rat_is_zero(&sys.q().constant_term()) {
        return Err(DesingError::NotEquilibrium);
    }
    let deg = sys.degree().ok_or(DesingError::NotEquilibrium)?;
    let x = var_poly(sys, sys.x_idx());
    let y = var_poly(sys, sys.y_idx());
    let mut found = None;
    for k in 1..=deg {
        let (pk, qk) = sys.homogeneous_component(k);
        if pk.num_terms() > 0 || qk.num_terms() > 0 {
            found = Some((k, pk, qk));
            break;
        }
    }
    let (k, pk, qk) = found.ok_or(DesingError::NotEquilibrium)?;
    let gamma = &(&pk * &y) - &(&qk * &x);
    let full_gamma = &(sys.p() * &y) - &(sys.q() * &x);
    let dicritical = gamma.num_terms() == 0;
    Ok(CharacteristicForm {
        k,
        gamma,
        full_gamma,
        dicritical,
    })
}

// ----- report types ---------------------------------------------------------------

/// Local type of an equilibrium, as read from the linear part (plus the
/// series reduction in the semi-hyperbolic case). `LinearlyZero` covers
/// every point whose linear part has two zero eigenvalues (zero or
/// nilpotent matrix); the blow-up driver handles those.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum EquilibriumKind {
    HyperbolicSaddle,
    HyperbolicNode { stable: bool },
    HyperbolicFocusOrCenter,
    SemiHyperbolicSaddle,
    SemiHyperbolicNode { stable: bool },
    SemiHyperbolicSaddleNode,
    LinearlyZero,
    Unresolved { reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SectorKind {
    Hyperbolic,
    Elliptic,
    Parabolic,
}

/// Where a separatrix orbit lives: on the circle at infinity (possible
/// only when the analyzed point is itself at infinity) or in the finite
/// plane of the analyzed chart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SeparatrixLocation {
    OnInfinity,
    Finite,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum SectorItem {
    Separatrix(SeparatrixLocation),
    Sector(SectorKind),
}

/// Cyclic sector structure around a point: alternating separatrices and
/// sectors, read counterclockwise. A single-item sequence means the whole
/// neighborhood is one family with no distinguished boundary orbit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SectorSequence {
    pub items: Vec<SectorItem>,
}

impl SectorSequence {
    pub fn contains_elliptic(&self) -> bool {
        self.items
            .iter()
            .any(|i| matches!(i, SectorItem::Sector(SectorKind::Elliptic)))
    }

    /// True when the sequence is exactly two hyperbolic sectors split by
    /// two separatrices lying on the circle at infinity — the shape that
    /// characterizes an infinite degenerate point compatible with a
    /// center whose period annulus fills the plane.
    pub fn is_two_hyperbolic_on_infinity(&self) -> bool {
        if self.items.len() != 4 {
            return false;
        }
        // Accept any rotation of [sep-inf, H, sep-inf, H].
        for r in 0..2 {
            let ok = (0..4).all(|i| match (i + r) % 2 {
                0 => {
                    self.items[i] == SectorItem::Separatrix(SeparatrixLocation::OnInfinity)
                }
                _ => self.items[i] == SectorItem::Sector(SectorKind::Hyperbolic),
            });
            if ok {
                return true;
            }
        }
        false
    }
}

/// One logged step of the resolution of a point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum TraceStep {
    Twist,
    VerticalBlowup,
    TimeRescale(u32),
    Translate { x: String, y: String },
}

/// Full report on one equilibrium: exact point, linear part, kind, the
/// sector structure when known, the transformation trace, and reports for
/// the equilibria found on the exceptional line after a blow-up.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EquilibriumReport {
    pub point: (String, String),
    pub linear_part: [[String; 2]; 2],
    pub trace_sign: i8,
    pub det_sign: i8,
    /// Leading term `(m, sign)` of the center-direction reduction for
    /// semi-hyperbolic points.
    pub center_leading: Option<(usize, i8)>,
    pub kind: EquilibriumKind,
    pub sectors: Option<SectorSequence>,
    pub steps: Vec<TraceStep>,
    pub exceptional_equilibria: Vec<EquilibriumReport>,
}

// ----- internal exact machinery over ℚ(√r) ---------------------------------------

type QPoly = Poly2<Quad>;

#[derive(Debug, Clone, PartialEq)]
enum LineTag {
    Infinity,
    Exceptional(u32),
}

#[derive(Debug, Clone)]
enum MarkDir {
    Vertical,
    Slope(Quad),
}

/// An invariant line through the current origin, tagged by its meaning.
#[derive(Debug, Clone)]
struct Mark {
    dir: MarkDir,
    tag: LineTag,
}

fn qzero() -> Quad {
    Quad::zero()
}

fn qone() -> Quad {
    Quad::one()
}

/// Square root of `v` inside ℚ or the ambient extension ℚ(√ambient);
/// `None` when the root does not lie in that field.
fn quad_sqrt(v: &Quad, ambient: &Rat) -> Option<Quad> {
    match v.sign() {
        -1 => None,
        0 => Some(qzero()),
        _ => {
            if let Some(r) = v.as_rational() {
                if let Some(s) = is_rational_square(r) {
                    return Some(Quad::from_rat(&s));
                }
                if rat_is_zero(ambient) {
                    return Quad::sqrt(r).ok();
                }
                // Maybe r = s²·ambient, so √r = s·√ambient.
                let ratio = r / ambient;
                return is_rational_square(&ratio)
                    .map(|s| Quad::new(rat_int(0), s, ambient.clone()).expect("ambient ≥ 0"));
            }
            // v = a + b√r: look for (c + d√r)² = v, which forces
            // c² = (a ± √(a²−b²r))/2 and d = b/(2c).
            let a = v.rational_part();
            let b = v.radical_part();
            let r = v.radicand();
            let norm = a * a - b * b * r;
            let sn = is_rational_square(&norm)?;
            for branch in [&sn + a, a - &sn] {
                let c2 = branch / rat_int(2);
                if let Some(c) = is_rational_square(&c2) {
                    if rat_is_zero(&c) {
                        continue;
                    }
                    let d = b / (rat_int(2) * &c);
                    let cand = Quad::new(c, d, r.clone()).ok()?;
                    if cand.sign() > 0 {
                        return Some(cand);
                    }
                    return Some(cand.neg());
                }
            }
            None
        }
    }
}

/// First nonzero radicand among a set of values (0 when all rational).
fn ambient_radicand(values: &[&Quad]) -> Rat {
    for v in values {
        if !v.is_rational() {
            return v.radicand().clone();
        }
    }
    rat_int(0)
}

// ----- direction/ray utilities ----------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Sense {
    In,
    Out,
}

#[derive(Debug, Clone, PartialEq)]
enum SecPiece {
    H,
    E,
    P(Sense),
    /// Radial crossing family of a dicritical blow-down.
    X,
}

#[derive(Debug, Clone, PartialEq)]
enum RayTag {
    Inf,
    Exc(u32),
    Fin,
}

#[derive(Debug, Clone)]
struct Ray {
    dx: Quad,
    dy: Quad,
    tag: RayTag,
}

#[derive(Debug, Clone)]
enum Piece {
    Sep(Ray),
    Sec(SecPiece),
}

/// Cyclic fan of pieces around a point, counterclockwise, alternating
/// separatrix/sector whenever any separatrix exists.
#[derive(Debug, Clone)]
struct Fan {
    items: Vec<Piece>,
}

/// 0 = down, 1 = right half, 2 = up, 3 = left half.
fn dir_class(dx: &Quad, dy: &Quad) -> u8 {
    match dx.sign() {
        0 => {
            if dy.sign() > 0 {
                2
            } else {
                0
            }
        }
        1 => 1,
        _ => 3,
    }
}

/// Counterclockwise comparison of rays starting at the downward vertical.
fn ray_cmp(a: &Ray, b: &Ray) -> std::cmp::Ordering {
    let (ca, cb) = (dir_class(&a.dx, &a.dy), dir_class(&b.dx, &b.dy));
    if ca != cb {
        return ca.cmp(&cb);
    }
    if ca == 0 || ca == 2 {
        return std::cmp::Ordering::Equal;
    }
    // Within an open half-plane, the counterclockwise order is ascending
    // slope; compare dy1/dx1 vs dy2/dx2 via cross products (dx signs are
    // equal within a class, so the inequality direction is preserved).
    let cross = a.dy.mul(&b.dx).sub(&b.dy.mul(&a.dx));
    match cross.sign() {
        -1 => std::cmp::Ordering::Less,
        1 => std::cmp::Ordering::Greater,
        _ => std::cmp::Ordering::Equal,
    }
}

fn same_ray(a: &Ray, b: &Ray) -> bool {
    ray_cmp(a, b) == std::cmp::Ordering::Equal
        && dir_class(&a.dx, &a.dy) == dir_class(&b.dx, &b.dy)
        && a.dx.mul(&b.dy).sub(&b.dx.mul(&a.dy)).is_zero()
}

/// Ray lies on the marked line (either orientation).
fn ray_on_mark(dx: &Quad, dy: &Quad, mark: &MarkDir) -> bool {
    match mark {
        MarkDir::Vertical => dx.is_zero(),
        MarkDir::Slope(m) => dy.sub(&m.mul(dx)).is_zero(),
    }
}

fn tag_for(dx: &Quad, dy: &Quad, marks: &[Mark]) -> RayTag {
    for m in marks {
        if ray_on_mark(dx, dy, &m.dir) {
            return match &m.tag {
                LineTag::Infinity => RayTag::Inf,
                LineTag::Exceptional(l) => RayTag::Exc(*l),
            };
        }
    }
    RayTag::Fin
}

fn sort_rays_ccw(mut rays: Vec<Ray>) -> Vec<Ray> {
    rays.sort_by(ray_cmp);
    let mut out: Vec<Ray> = Vec::new();
    for r in rays {
        if out.last().is_some_and(|p| same_ray(p, &r)) {
            continue;
        }
        out.push(r);
    }
    out
}

fn fan_from_rays(rays: Vec<Ray>, kind: impl Fn(usize) -> SecPiece) -> Fan {
    let n = rays.len();
    let mut items = Vec::with_capacity(2 * n);
    for (i, r) in rays.into_iter().enumerate() {
        items.push(Piece::Sep(r));
        items.push(Piece::Sec(kind(i)));
    }
    Fan { items }
}

/// Rotate the cyclic list so a downward-vertical separatrix (when present)
/// comes first; otherwise start at the first separatrix.
fn canonical_rotation(fan: &mut Fan) {
    let pos_down = fan.items.iter().position(|p| match p {
        Piece::Sep(r) => dir_class(&r.dx, &r.dy) == 0,
        _ => false,
    });
    let pos_sep = fan
        .items
        .iter()
        .position(|p| matches!(p, Piece::Sep(_)));
    if let Some(i) = pos_down.or(pos_sep) {
        fan.items.rotate_left(i);
    }
}

fn flip_piece(p: &Piece) -> Piece {
    match p {
        Piece::Sec(SecPiece::P(Sense::In)) => Piece::Sec(SecPiece::P(Sense::Out)),
        Piece::Sec(SecPiece::P(Sense::Out)) => Piece::Sec(SecPiece::P(Sense::In)),
        other => other.clone(),
    }
}

fn sectors_from_fan(fan: &Fan) -> SectorSequence {
    let items = fan
        .items
        .iter()
        .map(|p| match p {
            Piece::Sep(r) => SectorItem::Separatrix(match r.tag {
                RayTag::Inf => SeparatrixLocation::OnInfinity,
                _ => SeparatrixLocation::Finite,
            }),
            Piece::Sec(SecPiece::H) => SectorItem::Sector(SectorKind::Hyperbolic),
            Piece::Sec(SecPiece::E) => SectorItem::Sector(SectorKind::Elliptic),
            Piece::Sec(SecPiece::P(_)) | Piece::Sec(SecPiece::X) => {
                SectorItem::Sector(SectorKind::Parabolic)
            }
        })
        .collect();
    SectorSequence { items }
}

// ----- linear classification ------------------------------------------------------

#[derive(Debug, Clone)]
enum Dirs {
    None,
    /// Two exact invariant directions (eigendirections of a saddle, or
    /// strong/center pair for a semi-hyperbolic point).
    Two {
        a: (Quad, Quad),
        b: (Quad, Quad),
    },
}

#[derive(Debug, Clone)]
struct Classified {
    j: [[Quad; 2]; 2],
    det_sign: i8,
    trace_sign: i8,
    kind: EquilibriumKind,
    center_leading: Option<(usize, i8)>,
    dirs: Dirs,
}

fn jacobian_origin(p: &QPoly, q: &QPoly) -> [[Quad; 2]; 2] {
    [
        [p.coeff(1, 0), p.coeff(0, 1)],
        [q.coeff(1, 0), q.coeff(0, 1)],
    ]
}

/// Scale a direction so its first nonzero coordinate is positive.
fn normalize_dir(v: (Quad, Quad)) -> (Quad, Quad) {
    let s = if v.0.sign() != 0 { v.0.sign() } else { v.1.sign() };
    if s < 0 {
        (v.0.neg(), v.1.neg())
    } else {
        v
    }
}

/// Eigenvector of `j` for eigenvalue `lambda` (assumed exact).
fn eigenvector(j: &[[Quad; 2]; 2], lambda: &Quad) -> (Quad, Quad) {
    let c1 = (j[0][1].clone(), lambda.sub(&j[0][0]));
    if !c1.0.is_zero() || !c1.1.is_zero() {
        return normalize_dir(c1);
    }
    normalize_dir((lambda.sub(&j[1][1]), j[1][0].clone()))
}

/// Kernel vector of `j` (for a zero eigenvalue).
fn kernel_vector(j: &[[Quad; 2]; 2]) -> (Quad, Quad) {
    if !j[0][0].is_zero() || !j[0][1].is_zero() {
        normalize_dir((j[0][1].clone(), j[0][0].neg()))
    } else {
        normalize_dir((j[1][1].clone(), j[1][0].neg()))
    }
}

/// Evaluate a bivariate polynomial as a power series in one variable `u`
/// along the curve `v = φ(u)`, truncated at `order`.
fn series_along(p: &QPoly, phi: &[Quad], order: usize) -> Vec<Quad> {
    let mut pow_cache: Vec<Vec<Quad>> = vec![vec![qone()]];
    let mut out: Vec<Quad> = Vec::new();
    for (i, jj, c) in p.terms() {
        if i > order {
            continue;
        }
        while pow_cache.len() <= jj {
            let next = truncate_series(&uni::mul(pow_cache.last().unwrap(), phi), order);
            pow_cache.push(next);
        }
        // c · u^i · φ(u)^j
        let mut term = uni::scale(&pow_cache[jj], c);
        term = truncate_series(&term, order.saturating_sub(i));
        let mut shifted = vec![qzero(); i];
        shifted.extend(term);
        out = uni::add(&out, &shifted);
    }
    truncate_series(&out, order)
}

fn truncate_series(p: &[Quad], order: usize) -> Vec<Quad> {
    let mut v: Vec<Quad> = p.iter().take(order + 1).cloned().collect();
    uni::trim(&mut v);
    v
}

/// Semi-hyperbolic reduction: in eigencoordinates `(u, v)` with
/// `v̇ = λv + …`, solve `λv + …(u, v) = 0` for `v = φ(u)` as a series and
/// read the leading term of the `u̇` equation along it.
fn semi_hyperbolic_reduce(
    p: &QPoly,
    q: &QPoly,
    j: &[[Quad; 2]; 2],
    lambda: &Quad,
    order: usize,
) -> Result<(usize, i8), DesingError> {
    let center = kernel_vector(j);
    let strong = eigenvector(j, lambda);
    let det_m = center.0.mul(&strong.1).sub(&center.1.mul(&strong.0));
    let det_inv = det_m.inv().ok_or(DesingError::NotEquilibrium)?;
    // x = c.0·u + s.0·v, y = c.1·u + s.1·v
    let sx = Poly2::constant(center.0.clone())
        .mul(&Poly2::var_x())
        .add(&Poly2::constant(strong.0.clone()).mul(&Poly2::var_y()));
    let sy = Poly2::constant(center.1.clone())
        .mul(&Poly2::var_x())
        .add(&Poly2::constant(strong.1.clone()).mul(&Poly2::var_y()));
    let pc = p.compose(&sx, &sy);
    let qc = q.compose(&sx, &sy);
    // (u̇, v̇) = M⁻¹ (ẋ, ẏ)
    let a_field = pc
        .scale(&strong.1.mul(&det_inv))
        .add(&qc.scale(&strong.0.neg().mul(&det_inv)));
    let b_field = pc
        .scale(&center.1.neg().mul(&det_inv))
        .add(&qc.scale(&center.0.mul(&det_inv)));
    // Strip the linear part of the v̇ equation.
    let b_nl = b_field.sub(&Poly2::var_y().scale(lambda));
    let lambda_inv = lambda.inv().expect("nonzero eigenvalue");
    let mut phi: Vec<Quad> = Vec::new();
    for _ in 0..=order {
        let next = uni::scale(
            &series_along(&b_nl, &phi, order),
            &lambda_inv.neg(),
        );
        if next == phi {
            break;
        }
        phi = next;
    }
    let h = series_along(&a_field, &phi, order);
    match uni::leading_low(&h) {
        Some((m, c)) if m >= 2 => Ok((m, c.sign())),
        Some(_) => Err(DesingError::NotEquilibrium),
        None => Err(DesingError::SeriesTruncation(order)),
    }
}

fn classify_core(p: &QPoly, q: &QPoly, order: usize) -> Result<Classified, DesingError> {
    if !p.coeff(0, 0).is_zero() || !q.coeff(0, 0).is_zero() {
        return Err(DesingError::NotEquilibrium);
    }
    let j = jacobian_origin(p, q);
    let tr = j[0][0].add(&j[1][1]);
    let det = j[0][0].mul(&j[1][1]).sub(&j[0][1].mul(&j[1][0]));
    let ts = tr.sign();
    let ds = det.sign();
    let ambient = ambient_radicand(&[&j[0][0], &j[0][1], &j[1][0], &j[1][1]]);
    let four = Quad::from_rat(&rat_int(4));
    let disc = tr.mul(&tr).sub(&four.mul(&det));

    let (kind, center_leading, dirs) = if ds < 0 {
        let dirs = match quad_sqrt(&disc, &ambient) {
            Some(sq) => {
                let half = Quad::from_rat(&rat(1, 2));
                let l1 = tr.sub(&sq).mul(&half);
                let l2 = tr.add(&sq).mul(&half);
                Dirs::Two {
                    a: eigenvector(&j, &l1),
                    b: eigenvector(&j, &l2),
                }
            }
            None => Dirs::None,
        };
        (EquilibriumKind::HyperbolicSaddle, None, dirs)
    } else if ds > 0 {
        if ts == 0 || disc.sign() < 0 {
            (EquilibriumKind::HyperbolicFocusOrCenter, None, Dirs::None)
        } else {
            (
                EquilibriumKind::HyperbolicNode { stable: ts < 0 },
                None,
                Dirs::None,
            )
        }
    } else if ts != 0 {
        let (m, sgn) = semi_hyperbolic_reduce(p, q, &j, &tr, order)?;
        let kind = if m % 2 == 0 {
            EquilibriumKind::SemiHyperbolicSaddleNode
        } else if i32::from(sgn) * i32::from(ts) < 0 {
            EquilibriumKind::SemiHyperbolicSaddle
        } else {
            EquilibriumKind::SemiHyperbolicNode { stable: ts < 0 }
        };
        let dirs = Dirs::Two {
            a: kernel_vector(&j),
            b: eigenvector(&j, &tr),
        };
        (kind, Some((m, sgn)), dirs)
    } else {
        (EquilibriumKind::LinearlyZero, None, Dirs::None)
    };
    Ok(Classified {
        j,
        det_sign: ds,
        trace_sign: ts,
        kind,
        center_leading,
        dirs,
    })
}

// ----- terminal fans --------------------------------------------------------------

/// Build the cyclic fan of a terminally classified point, given the
/// invariant marked lines through it. Returns `None` when the exact
/// direction data needed is unavailable or inconsistent with the marks.
fn terminal_fan(cls: &Classified, marks: &[Mark]) -> Option<Fan> {
    match &cls.kind {
        EquilibriumKind::HyperbolicSaddle | EquilibriumKind::SemiHyperbolicSaddle => {
            let (a, b) = match &cls.dirs {
                Dirs::Two { a, b } => (a, b),
                Dirs::None => return None,
            };
            // Every invariant marked line must be an eigendirection.
            for m in marks {
                if !ray_on_mark(&a.0, &a.1, &m.dir) && !ray_on_mark(&b.0, &b.1, &m.dir) {
                    return None;
                }
            }
            let rays = sort_rays_ccw(
                [
                    (a.0.clone(), a.1.clone()),
                    (a.0.neg(), a.1.neg()),
                    (b.0.clone(), b.1.clone()),
                    (b.0.neg(), b.1.neg()),
                ]
                .into_iter()
                .map(|(dx, dy)| Ray {
                    tag: tag_for(&dx, &dy, marks),
                    dx,
                    dy,
                })
                .collect(),
            );
            if rays.len() != 4 {
                return None;
            }
            Some(fan_from_rays(rays, |_| SecPiece::H))
        }
        EquilibriumKind::HyperbolicNode { stable }
        | EquilibriumKind::SemiHyperbolicNode { stable } => {
            let sense = if *stable { Sense::In } else { Sense::Out };
            let mut rays = Vec::new();
            for m in marks {
                let (dx, dy) = match &m.dir {
                    MarkDir::Vertical => (qzero(), qone()),
                    MarkDir::Slope(s) => (qone(), s.clone()),
                };
                rays.push(Ray {
                    tag: tag_for(&dx, &dy, marks),
                    dx: dx.clone(),
                    dy: dy.clone(),
                });
                rays.push(Ray {
                    tag: tag_for(&dx, &dy, marks),
                    dx: dx.neg(),
                    dy: dy.neg(),
                });
            }
            if rays.is_empty() {
                return Some(Fan {
                    items: vec![Piece::Sec(SecPiece::P(sense))],
                });
            }
            Some(fan_from_rays(sort_rays_ccw(rays), |_| SecPiece::P(sense)))
        }
        EquilibriumKind::SemiHyperbolicSaddleNode => {
            let (center, strong) = match &cls.dirs {
                Dirs::Two { a, b } => (a, b),
                Dirs::None => return None,
            };
            for m in marks {
                if !ray_on_mark(&center.0, &center.1, &m.dir)
                    && !ray_on_mark(&strong.0, &strong.1, &m.dir)
                {
                    return None;
                }
            }
            let s = cls.center_leading.map(|(_, s)| s).unwrap_or(0);
            if s == 0 {
                return None;
            }
            // Outflow side of the center direction bounds the two
            // hyperbolic sectors; the opposite side is parabolic.
            let su = if s > 0 {
                (center.0.clone(), center.1.clone())
            } else {
                (center.0.neg(), center.1.neg())
            };
            let sense = if cls.trace_sign < 0 {
                Sense::In
            } else {
                Sense::Out
            };
            let rays = sort_rays_ccw(
                [
                    (su.0.clone(), su.1.clone()),
                    (su.0.neg(), su.1.neg()),
                    (strong.0.clone(), strong.1.clone()),
                    (strong.0.neg(), strong.1.neg()),
                ]
                .into_iter()
                .map(|(dx, dy)| Ray {
                    tag: tag_for(&dx, &dy, marks),
                    dx,
                    dy,
                })
                .collect(),
            );
            if rays.len() != 4 {
                return None;
            }
            // A sector is hyperbolic iff bounded by the outflow ray su.
            let su_ray = Ray {
                dx: su.0.clone(),
                dy: su.1.clone(),
                tag: RayTag::Fin,
            };
            let adjacent: Vec<bool> = (0..4)
                .map(|i| {
                    same_ray(&rays[i], &su_ray) || same_ray(&rays[(i + 1) % 4], &su_ray)
                })
                .collect();
            Some(fan_from_rays(rays, move |i| {
                if adjacent[i] {
                    SecPiece::H
                } else {
                    SecPiece::P(sense)
                }
            }))
        }
        _ => None,
    }
}

// ----- exceptional-line root finding ---------------------------------------------

fn quad_in_open_interval(q: &Quad, lo: &Rat, hi: &Rat) -> bool {
    q.sub(&Quad::from_rat(lo)).sign() > 0 && Quad::from_rat(hi).sub(q).sign() > 0
}

/// Fit a solver result (which may use a fresh radicand) into the ambient
/// extension field; `None` when the value does not belong to it.
fn fit_radicand(q: Quad, ambient: &Rat) -> Option<Quad> {
    if q.is_rational() {
        return Some(q);
    }
    if rat_is_zero(ambient) || q.radicand() == ambient {
        return Some(q);
    }
    let ratio = q.radicand() / ambient;
    is_rational_square(&ratio).map(|s| {
        Quad::new(
            q.rational_part().clone(),
            q.radical_part() * s,
            ambient.clone(),
        )
        .expect("ambient ≥ 0")
    })
}

/// Exact quadratic-field coordinate of one isolated real root of `poly`;
/// `None` when the root lies beyond one quadratic extension of ℚ.
pub fn real_root_to_quad(
    poly: &UniPoly,
    root: &crate::roots::RealRoot,
) -> Result<Option<Quad>, DesingError> {
    match &root.loc {
        RootLoc::Exact(r) => Ok(Some(Quad::from_rat(r))),
        RootLoc::Isolated(iv) => {
            let sf = roots::squarefree_part(poly)?;
            let (_, rest) = roots::rational_roots(&sf)?;
            if roots::degree(&rest) != Some(2) {
                return Ok(None);
            }
            for cand in solve_quadratic(&rest[2], &rest[1], &rest[0]) {
                if quad_in_open_interval(&cand, &iv.lo, &iv.hi) {
                    return Ok(Some(cand));
                }
            }
            Ok(None)
        }
    }
}

/// Quadratic-or-rational real roots of a rational polynomial, or `None`
/// when some real root lies beyond one quadratic extension.
fn rational_poly_quad_roots(
    poly: &UniPoly,
    ambient: &Rat,
) -> Result<Option<Vec<Quad>>, DesingError> {
    let width = rat(1, 4096);
    let mut out = Vec::new();
    for root in roots::real_roots(poly, &width)? {
        match root.loc {
            RootLoc::Exact(r) => out.push(Quad::from_rat(&r)),
            RootLoc::Isolated(iv) => {
                let sf = roots::squarefree_part(poly)?;
                let (_, rest) = roots::rational_roots(&sf)?;
                if roots::degree(&rest) != Some(2) {
                    return Ok(None);
                }
                let mut matched = false;
                for cand in solve_quadratic(&rest[2], &rest[1], &rest[0]) {
                    let Some(fitted) = fit_radicand(cand, ambient) else {
                        return Ok(None);
                    };
                    if quad_in_open_interval(&fitted, &iv.lo, &iv.hi) {
                        out.push(fitted);
                        matched = true;
                        break;
                    }
                }
                if !matched {
                    return Ok(None);
                }
            }
        }
    }
    Ok(Some(out))
}

/// Real roots of a univariate polynomial with coefficients in ℚ(√r),
/// expressed in the same field; `None` when a real root is not
/// representable there.
fn quad_poly_real_roots(poly: &[Quad]) -> Result<Option<Vec<Quad>>, DesingError> {
    let r = ambient_radicand(&poly.iter().collect::<Vec<_>>());
    let q1: UniPoly = poly.iter().map(|c| c.rational_part().clone()).collect();
    let q2: UniPoly = poly.iter().map(|c| c.radical_part().clone()).collect();
    if roots::is_zero(&q2) {
        return rational_poly_quad_roots(&q1, &rat_int(0));
    }
    let mut out: Vec<Quad> = Vec::new();
    // Roots with both rational parts vanishing: common roots of q1, q2.
    let g = roots::gcd(&q1, &q2);
    if roots::degree(&g).unwrap_or(0) >= 1 {
        match rational_poly_quad_roots(&g, &r)? {
            Some(v) => out.extend(v),
            None => return Ok(None),
        }
    }
    // Remaining roots satisfy q1(t) = −√r·q2(t) with q1(t)·q2(t) ≠ 0, so
    // they are roots of the rational polynomial D = q1² − r·q2² whose
    // signs of q1, q2 are opposite.
    let rq2sq = roots::mul(&q2, &q2)
        .into_iter()
        .map(|c| c * &r)
        .collect::<Vec<_>>();
    let mut d = roots::mul(&q1, &q1);
    while d.len() < rq2sq.len() {
        d.push(rat_int(0));
    }
    for (i, c) in rq2sq.iter().enumerate() {
        d[i] -= c;
    }
    roots::normalize(&mut d);
    if roots::is_zero(&d) {
        return Ok(None);
    }
    let width = rat(1, 4096);
    let sf = roots::squarefree_part(&d)?;
    for root in roots::real_roots(&d, &width)? {
        match root.loc {
            // A rational root with q1, q2 not both zero cannot satisfy
            // q1 = −√r·q2; such roots belong to the conjugate or to g.
            RootLoc::Exact(_) => continue,
            RootLoc::Isolated(iv) => {
                let alg = RealAlgebraic::from_loc(&sf, &RootLoc::Isolated(iv.clone()));
                let s1 = alg.sign_of(&q1);
                let s2 = alg.sign_of(&q2);
                if s1 == 0 && s2 == 0 {
                    continue; // already found via g
                }
                if s1 != -s2 {
                    continue; // root of the conjugate polynomial
                }
                let (_, rest) = roots::rational_roots(&sf)?;
                if roots::degree(&rest) != Some(2) {
                    return Ok(None);
                }
                let mut matched = false;
                for cand in solve_quadratic(&rest[2], &rest[1], &rest[0]) {
                    let Some(fitted) = fit_radicand(cand, &r) else {
                        return Ok(None);
                    };
                    if quad_in_open_interval(&fitted, &iv.lo, &iv.hi) {
                        if !out.iter().any(|o| o.sub(&fitted).is_zero()) {
                            out.push(fitted.clone());
                        }
                        matched = true;
                        break;
                    }
                }
                if !matched {
                    return Ok(None);
                }
            }
        }
    }
    out.sort_by(|a, b| match a.sub(b).sign() {
        -1 => std::cmp::Ordering::Less,
        1 => std::cmp::Ordering::Greater,
        _ => std::cmp::Ordering::Equal,
    });
    Ok(Some(out))
}

// ----- fan assembly ---------------------------------------------------------------

struct EqFanData {
    height: Quad,
    right: Vec<Piece>,
    left: Vec<Piece>,
}

/// Split a cyclic fan along the vertical line into its right and left
/// open-half piece lists (counterclockwise each). Requires vertical rays.
fn split_halves(fan: &Fan) -> Option<(Vec<Piece>, Vec<Piece>)> {
    let n = fan.items.len();
    let mut idx_down = None;
    let mut idx_up = None;
    for (i, p) in fan.items.iter().enumerate() {
        if let Piece::Sep(r) = p {
            match dir_class(&r.dx, &r.dy) {
                0 => idx_down = Some(i),
                2 => idx_up = Some(i),
                _ => {}
            }
        }
    }
    let (d, u) = (idx_down?, idx_up?);
    let collect = |from: usize, to: usize| {
        let mut v = Vec::new();
        let mut i = (from + 1) % n;
        while i != to {
            v.push(fan.items[i].clone());
            i = (i + 1) % n;
        }
        v
    };
    Some((collect(d, u), collect(u, d)))
}

fn merge_kinds(kinds: &[SecPiece]) -> Option<SecPiece> {
    let has_h = kinds.iter().any(|k| *k == SecPiece::H);
    let has_e = kinds.iter().any(|k| *k == SecPiece::E);
    let has_in = kinds.iter().any(|k| *k == SecPiece::P(Sense::In));
    let has_out = kinds.iter().any(|k| *k == SecPiece::P(Sense::Out));
    let has_x = kinds.iter().any(|k| *k == SecPiece::X);
    if has_x {
        return None;
    }
    if has_h && (has_e || has_in || has_out) {
        return None;
    }
    if has_h || kinds.is_empty() {
        return Some(SecPiece::H);
    }
    if has_e || (has_in && has_out) {
        return Some(SecPiece::E);
    }
    if has_in {
        return Some(SecPiece::P(Sense::In));
    }
    Some(SecPiece::P(Sense::Out))
}

/// Blow the exceptional-line fans down to a single cyclic fan around the
/// origin. The caller has already flipped the left-half pieces when a time
/// rescale by an odd power reversed the flow there.
fn assemble_fans(eqs: &[EqFanData]) -> Result<Fan, String> {
    // Build the full cyclic sequence of events. Right half: ascending
    // heights; then the upper gap; then the left half, again ascending
    // heights (the blow-down mirrors the left half, so each left list has
    // already been reversed by the caller); the lower gap closes the cycle.
    enum Ev {
        Sep(Ray),
        Sec(SecPiece),
    }
    let mut cycle: Vec<Ev> = Vec::new();
    let push_half = |cycle: &mut Vec<Ev>, right: bool| {
        for eq in eqs {
            for piece in if right { &eq.right } else { &eq.left } {
                match piece {
                    Piece::Sep(ray) => {
                        let sign: i64 = if right { 1 } else { -1 };
                        let dx = Quad::from_rat(&rat_int(sign));
                        let dy = eq.height.mul(&dx);
                        cycle.push(Ev::Sep(Ray {
                            dx,
                            dy,
                            tag: ray.tag.clone(),
                        }));
                    }
                    Piece::Sec(k) => cycle.push(Ev::Sec(k.clone())),
                }
            }
        }
    };
    push_half(&mut cycle, true);
    push_half(&mut cycle, false);
    let sep_count = cycle.iter().filter(|e| matches!(e, Ev::Sep(_))).count();
    if sep_count == 0 {
        let kinds: Vec<SecPiece> = cycle
            .iter()
            .filter_map(|e| match e {
                Ev::Sec(k) => Some(k.clone()),
                _ => None,
            })
            .collect();
        let merged =
            merge_kinds(&kinds).ok_or_else(|| "inconsistent sector merge".to_string())?;
        return Ok(Fan {
            items: vec![Piece::Sec(merged)],
        });
    }
    // Merge the sector material between consecutive surviving separatrices.
    let first_sep = cycle
        .iter()
        .position(|e| matches!(e, Ev::Sep(_)))
        .expect("sep exists");
    let mut items: Vec<Piece> = Vec::new();
    let mut run: Vec<SecPiece> = Vec::new();
    for idx in 0..cycle.len() {
        let e = &cycle[(first_sep + idx) % cycle.len()];
        match e {
            Ev::Sep(ray) => {
                if idx > 0 {
                    let merged = merge_kinds(&run)
                        .ok_or_else(|| "inconsistent sector merge".to_string())?;
                    items.push(Piece::Sec(merged));
                    run.clear();
                }
                items.push(Piece::Sep(ray.clone()));
            }
            Ev::Sec(k) => run.push(k.clone()),
        }
    }
    let merged = merge_kinds(&run).ok_or_else(|| "inconsistent sector merge".to_string())?;
    items.push(Piece::Sec(merged));
    // items currently starts with a Sep; rotate to canonical form.
    let mut fan = Fan { items };
    canonical_rotation(&mut fan);
    Ok(fan)
}

// ----- the recursive driver -------------------------------------------------------

struct Ctx {
    series_order: usize,
    next_level: u32,
}

struct NodeOut {
    cls_kind: EquilibriumKind,
    linear_part: [[String; 2]; 2],
    det_sign: i8,
    trace_sign: i8,
    center_leading: Option<(usize, i8)>,
    fan: Option<Fan>,
    sectors: Option<SectorSequence>,
    steps: Vec<TraceStep>,
    children: Vec<EquilibriumReport>,
}

fn untwist_dir(dx: &Quad, dy: &Quad) -> (Quad, Quad) {
    // Twisted coordinates (X, Y) satisfy x = X − Y, y = Y.
    (dx.sub(dy), dy.clone())
}

fn untwist_fan(fan: &mut Fan, times: usize) {
    for _ in 0..times {
        for item in &mut fan.items {
            if let Piece::Sep(r) = item {
                let (dx, dy) = untwist_dir(&r.dx, &r.dy);
                r.dx = dx;
                r.dy = dy;
            }
        }
    }
    canonical_rotation(fan);
}

fn twist_mark(m: &Mark) -> Mark {
    // Under (x, y) → (x − y, y), the line of slope s maps to slope
    // s/(1+s); the vertical line maps to slope 1.
    let dir = match &m.dir {
        MarkDir::Vertical => MarkDir::Slope(qone()),
        MarkDir::Slope(s) => {
            let denom = qone().add(s);
            if denom.is_zero() {
                MarkDir::Vertical
            } else {
                MarkDir::Slope(s.mul(&denom.inv().expect("nonzero")))
            }
        }
    };
    Mark {
        dir,
        tag: m.tag.clone(),
    }
}

fn unresolved(reason: &str) -> EquilibriumKind {
    EquilibriumKind::Unresolved {
        reason: reason.to_string(),
    }
}

fn linear_part_strings(j: &[[Quad; 2]; 2]) -> [[String; 2]; 2] {
    [
        [j[0][0].to_string(), j[0][1].to_string()],
        [j[1][0].to_string(), j[1][1].to_string()],
    ]
}

/// Homogeneous characteristic form of lowest joint degree, over ℚ(√r).
fn char_form_quad(p: &QPoly, q: &QPoly) -> Option<(usize, QPoly)> {
    let lp = p.lowest_degree();
    let lq = q.lowest_degree();
    let k = match (lp, lq) {
        (Some(a), Some(b)) => a.min(b),
        (Some(a), None) => a,
        (None, Some(b)) => b,
        (None, None) => return None,
    };
    let pk = p.homogeneous_component(k);
    let qk = q.homogeneous_component(k);
    let gamma = pk
        .mul(&Poly2::var_y())
        .sub(&qk.mul(&Poly2::var_x()));
    Some((k, gamma))
}

fn resolve_core(
    p: QPoly,
    q: QPoly,
    marks: Vec<Mark>,
    depth: u32,
    ctx: &mut Ctx,
) -> Result<NodeOut, DesingError> {
    let cls = classify_core(&p, &q, ctx.series_order)?;
    let mut out = NodeOut {
        cls_kind: cls.kind.clone(),
        linear_part: linear_part_strings(&cls.j),
        det_sign: cls.det_sign,
        trace_sign: cls.trace_sign,
        center_leading: cls.center_leading,
        fan: None,
        sectors: None,
        steps: Vec::new(),
        children: Vec::new(),
    };
    match cls.kind {
        EquilibriumKind::LinearlyZero => {}
        EquilibriumKind::HyperbolicFocusOrCenter => {
            out.sectors = Some(SectorSequence {
                items: vec![SectorItem::Sector(SectorKind::Parabolic)],
            });
            return Ok(out);
        }
        _ => {
            let fan = terminal_fan(&cls, &marks);
            match fan {
                Some(f) => {
                    out.sectors = Some(sectors_from_fan(&f));
                    out.fan = Some(f);
                }
                None => {
                    out.cls_kind = unresolved(
                        "separatrix directions unavailable or inconsistent with invariant lines",
                    );
                }
            }
            return Ok(out);
        }
    }

    // Linearly zero: blow up (after shearing the vertical direction away
    // when it is characteristic).
    if depth == 0 {
        out.cls_kind = unresolved("blow-up depth exhausted");
        return Ok(out);
    }
    let mut p = p;
    let mut q = q;
    let mut marks = marks;
    let mut twists = 0usize;
    let dicritical = loop {
        let Some((k, gamma)) = char_form_quad(&p, &q) else {
            out.cls_kind = unresolved("zero vector field");
            return Ok(out);
        };
        if gamma.is_zero() {
            break true;
        }
        // The vertical direction is characteristic iff x divides gamma,
        // i.e. the y^{k+1} coefficient vanishes.
        if !gamma.coeff(0, k + 1).is_zero() {
            break false;
        }
        if twists == MAX_TWISTS {
            out.cls_kind = unresolved("shear budget exhausted");
            return Ok(out);
        }
        let ps = p.twist_substitute();
        let qs = q.twist_substitute();
        p = ps.add(&qs);
        q = qs;
        marks = marks.iter().map(twist_mark).collect();
        out.steps.push(TraceStep::Twist);
        twists += 1;
    };

    // Vertical blow-up (x, y) → (x, y·x), then the maximal exact time
    // rescale by a power of x.
    let p1 = p.vertical_substitute();
    let q1_num = q
        .vertical_substitute()
        .sub(&Poly2::var_y().mul(&p1));
    let q1 = q1_num
        .div_x_power(1)
        .expect("division exact at an equilibrium");
    out.steps.push(TraceStep::VerticalBlowup);
    let mp = if p1.is_zero() {
        usize::MAX
    } else {
        p1.x_multiplicity()
    };
    let mq = if q1.is_zero() {
        usize::MAX
    } else {
        q1.x_multiplicity()
    };
    let m = mp.min(mq);
    let (p2, q2) = if m > 0 && m != usize::MAX {
        out.steps.push(TraceStep::TimeRescale(m as u32));
        (
            p1.div_x_power(m).expect("multiplicity checked"),
            q1.div_x_power(m).expect("multiplicity checked"),
        )
    } else {
        (p1, q1)
    };
    let parity_odd = m != usize::MAX && m % 2 == 1;
    let level = ctx.next_level;
    ctx.next_level += 1;

    let line_invariant = p2.restrict_x0().is_empty();
    if !line_invariant {
        // Dicritical blow-down: orbits cross the exceptional line. When
        // no equilibria sit on it the blown-down point is reached by a
        // radial family.
        let px = p2.restrict_x0();
        let qx = q2.restrict_x0();
        let has_common_zero = {
            // Common real zeros of the two restrictions.
            let (Some(rp), Some(rq)) = (
                quad_poly_real_roots(&px)?,
                if qx.is_empty() {
                    Some(Vec::new())
                } else {
                    quad_poly_real_roots(&qx)?
                },
            ) else {
                out.cls_kind = unresolved("exceptional-line equilibria beyond the field");
                return Ok(out);
            };
            if qx.is_empty() {
                !rp.is_empty()
            } else {
                rp.iter()
                    .any(|a| rq.iter().any(|b| a.sub(b).is_zero()))
            }
        };
        if has_common_zero || !dicritical {
            out.cls_kind = unresolved("equilibria on a non-invariant exceptional line");
            return Ok(out);
        }
        let fan = Fan {
            items: vec![Piece::Sec(SecPiece::X)],
        };
        out.sectors = Some(sectors_from_fan(&fan));
        out.fan = Some(fan);
        return Ok(out);
    }

    // Equilibria on the invariant exceptional line x = 0.
    let g = q2.restrict_x0();
    if g.is_empty() {
        out.cls_kind = unresolved("exceptional line consists of equilibria after rescaling");
        return Ok(out);
    }
    let Some(heights) = quad_poly_real_roots(&g)? else {
        out.cls_kind = unresolved("exceptional-line equilibria beyond the field");
        return Ok(out);
    };
    if heights.is_empty() {
        out.cls_kind = unresolved("no equilibria on the exceptional line (monodromic blow-up)");
        return Ok(out);
    }

    let mut eq_fans: Vec<EqFanData> = Vec::new();
    let mut all_resolved = true;
    for h in &heights {
        let mut sub_marks = vec![Mark {
            dir: MarkDir::Vertical,
            tag: LineTag::Exceptional(level),
        }];
        for mk in &marks {
            if let MarkDir::Slope(s) = &mk.dir {
                if s.sub(h).is_zero() {
                    sub_marks.push(Mark {
                        dir: MarkDir::Slope(qzero()),
                        tag: mk.tag.clone(),
                    });
                }
            }
        }
        let pt = q2.translate(&qzero(), h);
        let pp = p2.translate(&qzero(), h);
        let sub = resolve_core(pp, pt, sub_marks, depth - 1, ctx)?;
        let mut child = EquilibriumReport {
            point: ("0".to_string(), h.to_string()),
            linear_part: sub.linear_part,
            trace_sign: sub.trace_sign,
            det_sign: sub.det_sign,
            center_leading: sub.center_leading,
            kind: sub.cls_kind,
            sectors: sub.sectors,
            steps: sub.steps,
            exceptional_equilibria: sub.children,
        };
        child.steps.insert(
            0,
            TraceStep::Translate {
                x: "0".to_string(),
                y: h.to_string(),
            },
        );
        match sub.fan {
            Some(fan) => match split_halves(&fan) {
                Some((right, mut left)) => {
                    if parity_odd {
                        left = left.iter().map(flip_piece).collect();
                    }
                    left.reverse();
                    eq_fans.push(EqFanData {
                        height: h.clone(),
                        right,
                        left,
                    });
                }
                None => all_resolved = false,
            },
            None => all_resolved = false,
        }
        out.children.push(child);
    }
    if !all_resolved {
        out.cls_kind = unresolved("an exceptional-line equilibrium could not be resolved");
        return Ok(out);
    }
    match assemble_fans(&eq_fans) {
        Ok(mut fan) => {
            untwist_fan(&mut fan, twists);
            out.sectors = Some(sectors_from_fan(&fan));
            out.fan = Some(fan);
        }
        Err(reason) => {
            out.cls_kind = unresolved(&reason);
        }
    }
    Ok(out)
}

// ----- public entry points --------------------------------------------------------

fn system_to_qpolys(sys: &PlanarSystem) -> Result<(QPoly, QPoly), DesingError> {
    if !sys.is_numeric() {
        return Err(DesingError::SymbolicParameters);
    }
    let p = Poly2::from_multipoly(sys.p(), sys.x_idx(), sys.y_idx())?;
    let q = Poly2::from_multipoly(sys.q(), sys.x_idx(), sys.y_idx())?;
    Ok((p, q))
}

fn run_resolution(
    sys: &PlanarSystem,
    point: (&Quad, &Quad),
    marks: Vec<Mark>,
    depth: u32,
) -> Result<EquilibriumReport, DesingError> {
    run_resolution_with(sys, point, marks, depth, DEFAULT_SERIES_ORDER)
}

fn run_resolution_with(
    sys: &PlanarSystem,
    point: (&Quad, &Quad),
    marks: Vec<Mark>,
    depth: u32,
    series_order: usize,
) -> Result<EquilibriumReport, DesingError> {
    let (p0, q0) = system_to_qpolys(sys)?;
    let p = p0.translate(point.0, point.1);
    let q = q0.translate(point.0, point.1);
    if !p.coeff(0, 0).is_zero() || !q.coeff(0, 0).is_zero() {
        return Err(DesingError::NotEquilibrium);
    }
    let mut ctx = Ctx {
        series_order,
        next_level: 1,
    };
    let out = resolve_core(p, q, marks, depth, &mut ctx)?;
    let mut steps = out.steps;
    if !point.0.is_zero() || !point.1.is_zero() {
        steps.insert(
            0,
            TraceStep::Translate {
                x: point.0.to_string(),
                y: point.1.to_string(),
            },
        );
    }
    Ok(EquilibriumReport {
        point: (point.0.to_string(), point.1.to_string()),
        linear_part: out.linear_part,
        trace_sign: out.trace_sign,
        det_sign: out.det_sign,
        center_leading: out.center_leading,
        kind: out.cls_kind,
        sectors: out.sectors,
        steps,
        exceptional_equilibria: out.children,
    })
}

/// Classify an equilibrium at a rational point (no blow-up; degenerate
/// points come back as `LinearlyZero`).
pub fn classify(
    sys: &PlanarSystem,
    point: (&Rat, &Rat),
) -> Result<EquilibriumReport, DesingError> {
    let x = Quad::from_rat(point.0);
    let y = Quad::from_rat(point.1);
    run_resolution(sys, (&x, &y), Vec::new(), 0).map(strip_depth_unresolved)
}

/// Classify an equilibrium whose coordinates live in a real quadratic
/// extension (for instance chart equilibria at `±a/√b`).
pub fn classify_quad(
    sys: &PlanarSystem,
    point: (&Quad, &Quad),
) -> Result<EquilibriumReport, DesingError> {
    run_resolution(sys, point, Vec::new(), 0).map(strip_depth_unresolved)
}

/// A depth-0 resolution reports depth exhaustion on degenerate points;
/// plain classification should report `LinearlyZero` instead.
fn strip_depth_unresolved(mut rep: EquilibriumReport) -> EquilibriumReport {
    if matches!(&rep.kind, EquilibriumKind::Unresolved { reason } if reason == "blow-up depth exhausted")
    {
        rep.kind = EquilibriumKind::LinearlyZero;
    }
    rep
}

/// Resolve the local phase portrait at a rational equilibrium of a planar
/// system by recursive blow-up, to the given depth.
pub fn resolve_local_portrait(
    sys: &PlanarSystem,
    point: (&Rat, &Rat),
    depth: u32,
) -> Result<EquilibriumReport, DesingError> {
    let x = Quad::from_rat(point.0);
    let y = Quad::from_rat(point.1);
    run_resolution(sys, (&x, &y), Vec::new(), depth)
}

/// Resolve an equilibrium on the circle at infinity, given as the point
/// `(x0, 0)` of a compactification chart. The chart's second coordinate
/// vanishes exactly on the circle at infinity, so the horizontal line
/// through the point is tracked and separatrices on it are tagged
/// `OnInfinity`.
pub fn resolve_infinite_point(
    chart: &ChartField,
    x0: &Quad,
    depth: u32,
) -> Result<EquilibriumReport, DesingError> {
    resolve_infinite_point_with(chart, x0, depth, DEFAULT_SERIES_ORDER)
}

/// [`resolve_infinite_point`] with an explicit truncation order for the
/// center-manifold series used on semi-hyperbolic points.
pub fn resolve_infinite_point_with(
    chart: &ChartField,
    x0: &Quad,
    depth: u32,
    series_order: usize,
) -> Result<EquilibriumReport, DesingError> {
    let marks = vec![Mark {
        dir: MarkDir::Slope(qzero()),
        tag: LineTag::Infinity,
    }];
    run_resolution_with(&chart.system, (x0, &qzero()), marks, depth, series_order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::vars::VariableTable;

    fn sys2(p: &str, q: &str) -> PlanarSystem {
        let t = VariableTable::new(&["x", "y"]).unwrap();
        PlanarSystem::new(parse_poly(&t, p).unwrap(), parse_poly(&t, q).unwrap()).unwrap()
    }

    fn sys_with(vars: &[&str], p: &str, q: &str) -> PlanarSystem {
        let t = VariableTable::new(vars).unwrap();
        PlanarSystem::new(parse_poly(&t, p).unwrap(), parse_poly(&t, q).unwrap()).unwrap()
    }

    #[test]
    fn characteristic_form_dicritical_quadratic_family() {
        // Chart system whose lowest components are P₂ = −a1·x², Q₂ = −a1·x·y:
        // gamma ≡ 0, so every direction is characteristic.
        let sys = sys_with(
            &["x", "y", "a1", "a3", "asq"],
            "asq*x^6 + x^2*y^4 - a3*x^4 + y^4 - a1*x^2",
            "asq*x^5*y + x*y^5 - a3*x^3*y - a1*x*y",
        );
        let cf = characteristic_form(&sys).unwrap();
        assert_eq!(cf.k, 2);
        assert!(cf.dicritical);
        assert_eq!(cf.gamma.num_terms(), 0);
        // The full-field form is y⁵.
        let expect = parse_poly(sys.table(), "y^5").unwrap();
        assert_eq!(cf.full_gamma, expect);
    }

    #[test]
    fn characteristic_form_quartic_case() {
        let sys = sys_with(
            &["x", "y", "a3"],
            "x^2*y^4 - a3*x^4 + y^4",
            "x*y^5 - a3*x^3*y",
        );
        let cf = characteristic_form(&sys).unwrap();
        assert_eq!(cf.k, 4);
        assert!(!cf.dicritical);
        assert_eq!(cf.gamma, parse_poly(sys.table(), "y^5").unwrap());
        assert_eq!(cf.full_gamma, parse_poly(sys.table(), "y^5").unwrap());
    }

    #[test]
    fn characteristic_form_mixed_full_form() {
        let sys = sys_with(
            &["x", "y", "a3"],
            "a3*x^2 - x^2*y^4 - y^4",
            "-x*y^5",
        );
        let cf = characteristic_form(&sys).unwrap();
        assert_eq!(cf.k, 2);
        assert_eq!(cf.gamma, parse_poly(sys.table(), "a3*x^2*y").unwrap());
        assert_eq!(
            cf.full_gamma,
            parse_poly(sys.table(), "a3*x^2*y - y^5").unwrap()
        );
    }

    #[test]
    fn blowup_and_rescale_chain() {
        // Vertical blow-up then x³ time rescale of the quartic chart case
        // with the parameter bound to 4.
        let sys = sys2("x^2*y^4 - 4*x^4 + y^4", "x*y^5 - 4*x^3*y");
        let mut chain = TransformChain::new(sys);
        chain.apply(TransformKind::VerticalBlowup).unwrap();
        let mid = chain.current.clone();
        assert_eq!(
            *mid.p(),
            parse_poly(mid.table(), "x^6*y^4 + x^4*y^4 - 4*x^4").unwrap()
        );
        assert_eq!(*mid.q(), parse_poly(mid.table(), "-x^3*y^5").unwrap());
        chain.apply(TransformKind::TimeRescale(3)).unwrap();
        let end = &chain.current;
        assert_eq!(
            *end.p(),
            parse_poly(end.table(), "x^3*y^4 + x*y^4 - 4*x").unwrap()
        );
        assert_eq!(*end.q(), parse_poly(end.table(), "-y^5").unwrap());
        // Replay reproduces the final system.
        let replayed = chain.replay().unwrap();
        assert_eq!(*replayed.p(), *end.p());
        assert_eq!(*replayed.q(), *end.q());
    }

    #[test]
    fn twist_untwist_roundtrip() {
        let sys = sys2("y - 3*x^2*y + x^3", "-x + x*y^4 - 2*y^5");
        let t = transform(&sys, &TransformKind::Twist).unwrap();
        let back = transform(&t, &TransformKind::Untwist).unwrap();
        assert_eq!(*back.p(), *sys.p());
        assert_eq!(*back.q(), *sys.q());
    }

    #[test]
    fn horizontal_blowup_swaps_roles() {
        // For ẋ = x, ẏ = −y the horizontal blow-up x → x·y gives
        // ẋ₁ = (x₁y₁ − x₁·(−y₁))/y₁ = 2x₁, ẏ₁ = −y₁.
        let sys = sys2("x", "-y");
        let h = transform(&sys, &TransformKind::HorizontalBlowup).unwrap();
        assert_eq!(*h.p(), parse_poly(h.table(), "2*x").unwrap());
        assert_eq!(*h.q(), parse_poly(h.table(), "-y").unwrap());
    }

    #[test]
    fn classify_hyperbolic_kinds() {
        let saddle = classify(&sys2("x", "-y"), (&rat_int(0), &rat_int(0))).unwrap();
        assert_eq!(saddle.kind, EquilibriumKind::HyperbolicSaddle);
        assert_eq!(saddle.det_sign, -1);
        let node = classify(&sys2("-x", "-2*y"), (&rat_int(0), &rat_int(0))).unwrap();
        assert_eq!(node.kind, EquilibriumKind::HyperbolicNode { stable: true });
        let focus = classify(&sys2("y", "-x"), (&rat_int(0), &rat_int(0))).unwrap();
        assert_eq!(focus.kind, EquilibriumKind::HyperbolicFocusOrCenter);
        assert_eq!(
            focus.sectors.unwrap().items,
            vec![SectorItem::Sector(SectorKind::Parabolic)]
        );
        let off = classify(&sys2("y", "-x + x^2"), (&rat_int(1), &rat_int(0))).unwrap();
        // Jacobian at (1, 0) is [[0, 1], [1, 0]]: a saddle.
        assert_eq!(off.kind, EquilibriumKind::HyperbolicSaddle);
    }

    #[test]
    fn classify_semi_hyperbolic_node_and_saddle() {
        // Stable-node fixture: ẋ = −a·x + x³y⁴ + x·y⁴, ẏ = −y⁵ with a = 4;
        // the center line x = 0 carries ẏ = −y⁵, so m = 5 with a negative
        // coefficient and a negative eigenvalue: a stable node.
        let node_sys = sys2("x^3*y^4 + x*y^4 - 4*x", "-y^5");
        let rep = classify(&node_sys, (&rat_int(0), &rat_int(0))).unwrap();
        assert_eq!(rep.kind, EquilibriumKind::SemiHyperbolicNode { stable: true });
        assert_eq!(rep.center_leading, Some((5, -1)));
        assert_eq!(rep.trace_sign, -1);

        // Saddle fixture: positive eigenvalue with the same center series.
        let saddle_sys = sys2("x^3*y^4 + x*y^4 + x^3 + x", "-y^5");
        let rep = classify(&saddle_sys, (&rat_int(0), &rat_int(0))).unwrap();
        assert_eq!(rep.kind, EquilibriumKind::SemiHyperbolicSaddle);
        assert_eq!(rep.center_leading, Some((5, -1)));
        assert_eq!(rep.trace_sign, 1);
    }

    #[test]
    fn classify_saddle_node() {
        // ẋ = x², ẏ = −y: center series m = 2 (even) → saddle-node.
        let rep = classify(&sys2("x^2", "-y"), (&rat_int(0), &rat_int(0))).unwrap();
        assert_eq!(rep.kind, EquilibriumKind::SemiHyperbolicSaddleNode);
        assert_eq!(rep.center_leading, Some((2, 1)));
    }

    #[test]
    fn classify_quintic_saddle_fixture() {
        // Hyperbolic saddle with diagonal linear part diag(a, −a), a < 0,
        // arising at the origin of a doubly blown-up chart.
        let sys = sys2("-x*(x^4*y^4 + x^2*y^4 + 1)", "y*(x^2*y^4 + 1)");
        let rep = classify(&sys, (&rat_int(0), &rat_int(0))).unwrap();
        assert_eq!(rep.kind, EquilibriumKind::HyperbolicSaddle);
    }

    #[test]
    fn classify_rejects_non_equilibrium() {
        let err = classify(&sys2("1 + x^2", "-x*y"), (&rat_int(0), &rat_int(0)));
        assert!(matches!(err, Err(DesingError::NotEquilibrium)));
    }

    #[test]
    fn semi_hyperbolic_at_quadratic_point() {
        // U1-style chart with two equilibria at (±1/√2, 0): semi-hyperbolic
        // with nonzero eigenvalue 2·a3·x0 = 4/√2 > 0 at the positive root.
        let sys = sys2("-x^2*y^4 - y^4 + 2*x^2 - 1", "-x*y^5");
        let x0 = Quad::sqrt(&rat(1, 2)).unwrap();
        let rep = classify_quad(&sys, (&x0, &Quad::zero())).unwrap();
        assert_eq!(rep.kind, EquilibriumKind::SemiHyperbolicSaddle);
        assert_eq!(rep.trace_sign, 1);
        assert_eq!(rep.center_leading, Some((5, -1)));
        // The mirror point has the opposite eigenvalue sign and the
        // opposite center-series sign, so it is again a saddle.
        let rep2 = classify_quad(&sys, (&x0.neg(), &Quad::zero())).unwrap();
        assert_eq!(rep2.trace_sign, -1);
        assert_eq!(rep2.center_leading, Some((5, 1)));
        assert_eq!(rep2.kind, EquilibriumKind::SemiHyperbolicSaddle);
    }

    fn family_chart_u2(a1: i64, a3: i64, a5: i64) -> ChartField {
        let term = |c: i64, m: &str| {
            if c >= 0 {
                format!("+ {c}*{m}")
            } else {
                format!("- {}*{m}", -c)
            }
        };
        let q = format!(
            "-x {} {} {}",
            term(a1, "x*y^4"),
            term(a3, "x^3*y^2"),
            term(a5, "x^5")
        );
        let sys = sys2("y", &q);
        crate::compactify::chart_field(&sys, crate::compactify::Chart::U2).unwrap()
    }

    #[test]
    fn resolve_infinite_origin_two_hyperbolic_sectors() {
        // a3 < 0, a5 < 0: the degenerate infinite point resolves to two
        // hyperbolic sectors with separatrices on the circle at infinity.
        let chart = family_chart_u2(0, -1, -1);
        let rep = resolve_infinite_point(&chart, &Quad::zero(), DEFAULT_BLOWUP_DEPTH).unwrap();
        assert_eq!(rep.kind, EquilibriumKind::LinearlyZero);
        let sectors = rep.sectors.expect("resolved");
        assert!(sectors.is_two_hyperbolic_on_infinity(), "{sectors:?}");
        assert_eq!(rep.exceptional_equilibria.len(), 1);
        assert_eq!(
            rep.exceptional_equilibria[0].kind,
            EquilibriumKind::SemiHyperbolicSaddle
        );
    }

    #[test]
    fn resolve_infinite_origin_elliptic_case() {
        // a3 > 0, a5 = 0: the resolved infinite point contains elliptic
        // sectors (the blown-up point is a stable node and the odd time
        // rescale reverses the left half-plane).
        let chart = family_chart_u2(0, 4, 0);
        let rep = resolve_infinite_point(&chart, &Quad::zero(), DEFAULT_BLOWUP_DEPTH).unwrap();
        let sectors = rep.sectors.expect("resolved");
        assert!(sectors.contains_elliptic(), "{sectors:?}");
        assert!(!sectors.is_two_hyperbolic_on_infinity());
        assert_eq!(
            rep.exceptional_equilibria[0].kind,
            EquilibriumKind::SemiHyperbolicNode { stable: true }
        );
    }

    #[test]
    fn resolve_infinite_origin_deep_chain() {
        // a3 = 0, a5 < 0: resolution needs two shears and three blow-ups;
        // the result is again two hyperbolic sectors on infinity.
        let chart = family_chart_u2(0, 0, -1);
        let rep = resolve_infinite_point(&chart, &Quad::zero(), DEFAULT_BLOWUP_DEPTH).unwrap();
        let sectors = rep.sectors.expect("resolved");
        assert!(sectors.is_two_hyperbolic_on_infinity(), "{sectors:?}");
        // The chain passes through a second-level degenerate point.
        let first = &rep.exceptional_equilibria[0];
        assert_eq!(first.kind, EquilibriumKind::LinearlyZero);
        assert!(first
            .exceptional_equilibria
            .iter()
            .any(|c| c.kind == EquilibriumKind::HyperbolicSaddle));
    }

    #[test]
    fn resolve_infinite_origin_dicritical_case() {
        // a1 ≠ 0 makes the lowest homogeneous form vanish identically; the
        // blown-up line is crossed by orbits and the point is radial.
        let chart = family_chart_u2(1, 0, 0);
        let rep = resolve_infinite_point(&chart, &Quad::zero(), DEFAULT_BLOWUP_DEPTH).unwrap();
        let sectors = rep.sectors.expect("resolved");
        assert_eq!(
            sectors.items,
            vec![SectorItem::Sector(SectorKind::Parabolic)]
        );
    }

    #[test]
    fn resolve_u1_origin_saddle_case() {
        // a3 < 0, a5 = 0: the endpoint of the x-axis at infinity is
        // degenerate; one blow-up yields a hyperbolic saddle and the
        // blow-down gives two hyperbolic sectors on infinity.
        let sys = sys2("y", "-x - x^3*y^2");
        let chart = crate::compactify::chart_field(&sys, crate::compactify::Chart::U1).unwrap();
        let rep = resolve_infinite_point(&chart, &Quad::zero(), DEFAULT_BLOWUP_DEPTH).unwrap();
        let sectors = rep.sectors.expect("resolved");
        assert!(sectors.is_two_hyperbolic_on_infinity(), "{sectors:?}");
        assert_eq!(
            rep.exceptional_equilibria[0].kind,
            EquilibriumKind::HyperbolicSaddle
        );
    }

    #[test]
    fn linear_center_chart_origin_is_not_equilibrium() {
        let sys = sys2("y", "-x");
        let chart = crate::compactify::chart_field(&sys, crate::compactify::Chart::U2).unwrap();
        let err = resolve_infinite_point(&chart, &Quad::zero(), 6);
        assert!(matches!(err, Err(DesingError::NotEquilibrium)));
    }

    #[test]
    fn depth_limit_reports_unresolved() {
        let chart = family_chart_u2(0, 0, -1);
        let rep = resolve_infinite_point(&chart, &Quad::zero(), 1).unwrap();
        assert!(matches!(rep.kind, EquilibriumKind::Unresolved { .. }));
    }

    #[test]
    fn quad_poly_roots_rational_and_quadratic() {
        // (y − 1)·(y² − 2) over ℚ: roots 1, ±√2.
        let t = [
            Quad::from_rat(&rat_int(2)),
            Quad::from_rat(&rat_int(-2)),
            Quad::from_rat(&rat_int(-1)),
            Quad::from_rat(&rat_int(1)),
        ];
        let roots = quad_poly_real_roots(&t).unwrap().unwrap();
        assert_eq!(roots.len(), 3);
        assert!(roots[0].sign() < 0);
        assert_eq!(roots[1].as_rational(), Some(&rat_int(1)));
        let s2 = Quad::sqrt(&rat_int(2)).unwrap();
        assert!(roots[2].sub(&s2).is_zero());
        // y³ − 2 has a real cube root outside any quadratic extension.
        let c = [
            Quad::from_rat(&rat_int(-2)),
            Quad::zero(),
            Quad::zero(),
            Quad::from_rat(&rat_int(1)),
        ];
        assert!(quad_poly_real_roots(&c).unwrap().is_none());
    }
}
