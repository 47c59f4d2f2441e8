//! Center and global-center decision procedures for the quintic family
//!
//! ```text
//! ẋ = y,   ẏ = −x + a0·y⁵ + a1·x·y⁴ + a2·x²·y³ + a3·x³·y² + a4·x⁴·y + a5·x⁵
//! ```
//!
//! Two independent routes produce a global-center verdict: a closed-form
//! predicate on the coefficients (`Mode::Theorem`), and a geometric pipeline
//! (`Mode::Pipeline`) that verifies a unique finite equilibrium, a center
//! certificate, and resolves every equilibrium on the circle at infinity,
//! requiring each to show exactly two hyperbolic sectors with both
//! separatrices on the infinite circle. Infinite equilibria are enumerated in
//! the `U1`/`U2` charts; each stands for its antipodal mirror as well, whose
//! local portrait has the same sector types (the antipodal field differs at
//! most by time reversal, which preserves sector classes).

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::compactify::{self, chart_field, Chart, CompactifyError, InfinitePoint};
use crate::desing::{
    self, DesingError, EquilibriumKind, EquilibriumReport, DEFAULT_BLOWUP_DEPTH,
};
use crate::field2::Quad;
use crate::ideals::{buchberger, GbBudget, IdealError, MonomialOrder, OrderKind};
use crate::jsonio::{rat_from_str, rat_to_str};
use crate::lyapunov::{reversibility_test, weak_focus_order, Axis, LyapunovError};
use crate::poly::{rat, rat_int, PolyError, Rat};
use crate::portrait::{self, IntegrationSpec, OrbitVerdict, PortraitError};
use crate::roots::{self, rational_sign, RootError, RootLoc, UniPoly};
use crate::system::{PlanarSystem, SystemError};
use crate::vars::VariableTable;

/// Errors from family construction or the decision procedures.
#[derive(Debug, Error)]
pub enum GlobalCenterError {
    #[error("unknown parameter name (expected a0…a5): {0}")]
    UnknownParameter(String),
    #[error("malformed parameter assignment: {0}")]
    BadAssignment(String),
    #[error("system still contains free parameters; bind them first")]
    SymbolicParameters,
    #[error("equilibrium coordinates lie beyond the supported algebraic representation")]
    UnsupportedCoordinates,
    #[error("cross-validation failed: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    System(#[from] SystemError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Lyapunov(#[from] LyapunovError),
    #[error(transparent)]
    Desing(#[from] DesingError),
    #[error(transparent)]
    Compactify(#[from] CompactifyError),
    #[error(transparent)]
    Portrait(#[from] PortraitError),
}

// ----- family parameters ------------------------------------------------------------

/// The six rational coefficients of the quintic part, `a_i` multiplying
/// `x^i · y^(5−i)`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FamilyParameters {
    pub a0: Rat,
    pub a1: Rat,
    pub a2: Rat,
    pub a3: Rat,
    pub a4: Rat,
    pub a5: Rat,
}

impl FamilyParameters {
    pub const NAMES: [&'static str; 6] = ["a0", "a1", "a2", "a3", "a4", "a5"];

    pub fn new(a: [Rat; 6]) -> FamilyParameters {
        let [a0, a1, a2, a3, a4, a5] = a;
        FamilyParameters {
            a0,
            a1,
            a2,
            a3,
            a4,
            a5,
        }
    }

    pub fn values(&self) -> [&Rat; 6] {
        [&self.a0, &self.a1, &self.a2, &self.a3, &self.a4, &self.a5]
    }

    /// Parse a comma-separated assignment list such as `a3=-1,a5=1/2`;
    /// unmentioned parameters default to zero.
    pub fn parse_assignments(s: &str) -> Result<FamilyParameters, GlobalCenterError> {
        let mut out = FamilyParameters::default();
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Ok(out);
        }
        for piece in trimmed.split(',') {
            let piece = piece.trim();
            let Some((name, value)) = piece.split_once('=') else {
                return Err(GlobalCenterError::BadAssignment(piece.to_string()));
            };
            let value = rat_from_str(value.trim())
                .map_err(|_| GlobalCenterError::BadAssignment(piece.to_string()))?;
            let slot = match name.trim() {
                "a0" => &mut out.a0,
                "a1" => &mut out.a1,
                "a2" => &mut out.a2,
                "a3" => &mut out.a3,
                "a4" => &mut out.a4,
                "a5" => &mut out.a5,
                other => return Err(GlobalCenterError::UnknownParameter(other.to_string())),
            };
            *slot = value;
        }
        Ok(out)
    }

    pub fn bindings(&self) -> BTreeMap<String, Rat> {
        Self::NAMES
            .iter()
            .zip(self.values())
            .map(|(n, v)| (n.to_string(), v.clone()))
            .collect()
    }

    fn display_map(&self) -> BTreeMap<String, String> {
        Self::NAMES
            .iter()
            .zip(self.values())
            .map(|(n, v)| (n.to_string(), rat_to_str(v)))
            .collect()
    }

    /// The family system with these coefficients bound (parameter-free).
    pub fn system(&self) -> Result<PlanarSystem, GlobalCenterError> {
        Ok(family_template()?.bind(&self.bindings())?)
    }
}

/// The symbolic quintic family over the canonical variable table
/// `[x, y, a0…a5]`.
pub fn family_template() -> Result<PlanarSystem, GlobalCenterError> {
    let mut names: Vec<&str> = vec!["x", "y"];
    names.extend(FamilyParameters::NAMES);
    let table = Arc::new(VariableTable::new(&names)?);
    Ok(PlanarSystem::parse(
        &table,
        "y",
        "-x + a0*y^5 + a1*x*y^4 + a2*x^2*y^3 + a3*x^3*y^2 + a4*x^4*y + a5*x^5",
    )?)
}

// ----- finite equilibria ------------------------------------------------------------

/// One coordinate of a located point: exact rational, or an isolating
/// interval for an algebraic value.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Coordinate {
    Exact { value: String },
    Interval { lo: String, hi: String },
}

impl Coordinate {
    fn exact(r: &Rat) -> Coordinate {
        Coordinate::Exact {
            value: rat_to_str(r),
        }
    }

    fn interval(lo: &Rat, hi: &Rat) -> Coordinate {
        Coordinate::Interval {
            lo: rat_to_str(lo),
            hi: rat_to_str(hi),
        }
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self, Coordinate::Exact { value } if value == "0")
    }
}

/// A located finite equilibrium.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FinitePoint {
    pub x: Coordinate,
    pub y: Coordinate,
}

/// All finite equilibria, or the distinguished degenerate outcome.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FiniteEquilibria {
    Isolated { points: Vec<FinitePoint> },
    /// The solution set contains a curve (common component of `P` and `Q`).
    PositiveDimensional,
}

impl FiniteEquilibria {
    pub fn count(&self) -> Option<usize> {
        match self {
            FiniteEquilibria::Isolated { points } => Some(points.len()),
            FiniteEquilibria::PositiveDimensional => None,
        }
    }
}

/// Exact interval Horner evaluation of a rational polynomial over
/// `[lo, hi]`.
fn interval_eval(p: &UniPoly, lo: &Rat, hi: &Rat) -> (Rat, Rat) {
    let mul = |a: (&Rat, &Rat), b: (&Rat, &Rat)| -> (Rat, Rat) {
        let cands = [a.0 * b.0, a.0 * b.1, a.1 * b.0, a.1 * b.1];
        let mut min = cands[0].clone();
        let mut max = cands[0].clone();
        for c in &cands[1..] {
            if c < &min {
                min = c.clone();
            }
            if c > &max {
                max = c.clone();
            }
        }
        (min, max)
    };
    let mut acc = (rat_int(0), rat_int(0));
    for c in p.iter().rev() {
        let prod = mul((&acc.0, &acc.1), (lo, hi));
        acc = (prod.0 + c, prod.1 + c);
    }
    acc
}

/// All real solutions of `P = Q = 0` for a parameter-free system, located by
/// eliminating `y` with a Gröbner basis and isolating the real roots of the
/// eliminant. Solutions with irrational coordinates are reported as
/// isolating intervals; a common curve of equilibria is reported as
/// [`FiniteEquilibria::PositiveDimensional`].
pub fn finite_equilibria(
    sys: &PlanarSystem,
    max_width: &Rat,
) -> Result<FiniteEquilibria, GlobalCenterError> {
    if !sys.is_numeric() {
        return Err(GlobalCenterError::SymbolicParameters);
    }
    let (xi, yi) = (sys.x_idx(), sys.y_idx());
    let (p, q) = (sys.p(), sys.q());
    if p.is_zero() && q.is_zero() {
        return Ok(FiniteEquilibria::PositiveDimensional);
    }
    if p.is_zero() || q.is_zero() {
        let nz = if p.is_zero() { q } else { p };
        return if nz.total_degree() == Some(0) {
            Ok(FiniteEquilibria::Isolated { points: Vec::new() })
        } else {
            // The zero set of a single nonconstant polynomial is a curve.
            Ok(FiniteEquilibria::PositiveDimensional)
        };
    }

    let order = MonomialOrder::with_leading(
        OrderKind::Elimination { block: 1 },
        sys.table(),
        &["y"],
    )?;
    let gb = buchberger(&[p.clone(), q.clone()], &order, &GbBudget::unlimited())?;
    if gb.is_unit_ideal() {
        return Ok(FiniteEquilibria::Isolated { points: Vec::new() });
    }

    // Eliminant: generator of the ideal's contraction to ℚ[x].
    let mut eliminant: Option<UniPoly> = None;
    for g in &gb.gens {
        if g.uses_only(&[xi]) {
            let uni = g.to_unipoly(xi)?;
            eliminant = Some(match eliminant {
                None => uni,
                Some(prev) => roots::gcd(&prev, &uni),
            });
        }
    }
    let Some(ex) = eliminant else {
        return Ok(FiniteEquilibria::PositiveDimensional);
    };

    // A generator of y-degree one with constant leading coefficient gives
    // the y-coordinate over irrational x-roots.
    let linear_in_y: Option<(UniPoly, Rat)> = gb
        .gens
        .iter()
        .filter(|g| g.degree_in(&[yi]) == Some(1))
        .find_map(|g| {
            let coeffs = g.coeffs_in(yi);
            let c1 = coeffs.get(1)?;
            if c1.total_degree() != Some(0) {
                return None;
            }
            let c0 = coeffs.first()?;
            if !c0.uses_only(&[xi]) {
                return None;
            }
            Some((c0.to_unipoly(xi).ok()?, c1.constant_term()))
        });

    let mut points = Vec::new();
    for root in roots::real_roots(&ex, max_width)? {
        match &root.loc {
            RootLoc::Exact(r) => {
                let mut bind = BTreeMap::new();
                bind.insert(xi, r.clone());
                let pu = p.bind(&bind).to_unipoly(yi)?;
                let qu = q.bind(&bind).to_unipoly(yi)?;
                let g = if roots::is_zero(&pu) && roots::is_zero(&qu) {
                    return Ok(FiniteEquilibria::PositiveDimensional);
                } else if roots::is_zero(&pu) {
                    qu
                } else if roots::is_zero(&qu) {
                    pu
                } else {
                    roots::gcd(&pu, &qu)
                };
                if roots::degree(&g).unwrap_or(0) == 0 {
                    continue; // the shared root over x = r is not real-extendable
                }
                for yroot in roots::real_roots(&g, max_width)? {
                    let y = match &yroot.loc {
                        RootLoc::Exact(s) => Coordinate::exact(s),
                        RootLoc::Isolated(iv) => Coordinate::interval(&iv.lo, &iv.hi),
                    };
                    points.push(FinitePoint {
                        x: Coordinate::exact(r),
                        y,
                    });
                }
            }
            RootLoc::Isolated(iv) => {
                let Some((c0, c1)) = &linear_in_y else {
                    return Err(GlobalCenterError::UnsupportedCoordinates);
                };
                let y = if roots::is_zero(c0) {
                    Coordinate::exact(&rat_int(0))
                } else {
                    let (mut lo, mut hi) = interval_eval(c0, &iv.lo, &iv.hi);
                    lo = -lo / c1;
                    hi = -hi / c1;
                    if lo > hi {
                        std::mem::swap(&mut lo, &mut hi);
                    }
                    Coordinate::interval(&lo, &hi)
                };
                points.push(FinitePoint {
                    x: Coordinate::interval(&iv.lo, &iv.hi),
                    y,
                });
            }
        }
    }
    Ok(FiniteEquilibria::Isolated { points })
}

// ----- center check -----------------------------------------------------------------

/// Three-way verdict on the origin of a family member.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CenterVerdict {
    CenterWithUniqueEquilibrium,
    Focus,
    CenterButExtraEquilibria,
}

/// Verdict plus the cross-validation trail.
#[derive(Debug, Clone, Serialize)]
pub struct CenterReport {
    pub verdict: CenterVerdict,
    /// First index with a nonzero Lyapunov constant (focus case).
    pub focus_order: Option<usize>,
    /// Value of that constant, as an exact rational string.
    pub first_nonzero_constant: Option<String>,
    /// True when the field is mirror-symmetric about the x-axis (the
    /// center certificate for this family).
    pub reversible_about_x_axis: bool,
    pub equilibria: FiniteEquilibria,
}

const MAX_FOCUS_ORDER: usize = 15;

/// Decide center vs focus and equilibrium uniqueness for one family member.
///
/// The closed-form predicate (`a0 = a2 = a4 = 0` for the center;
/// `a5 ≤ 0` for uniqueness) is cross-validated: claimed centers must be
/// reversible about the x-axis, claimed foci must show a nonzero Lyapunov
/// constant, and the uniqueness claim must match the located equilibria.
pub fn center_check(params: &FamilyParameters) -> Result<CenterReport, GlobalCenterError> {
    let sys = params.system()?;
    let is_center = params.a0.is_zero() && params.a2.is_zero() && params.a4.is_zero();
    let axes = reversibility_test(&sys);
    let reversible_x = axes.contains(&Axis::XAxis);
    let equilibria = finite_equilibria(&sys, &rat(1, 4096))?;

    if !is_center {
        let Some((order, value)) = weak_focus_order(&sys, MAX_FOCUS_ORDER)? else {
            return Err(GlobalCenterError::Inconsistent(format!(
                "nonzero odd coefficients but no nonzero Lyapunov constant up to index {MAX_FOCUS_ORDER}"
            )));
        };
        return Ok(CenterReport {
            verdict: CenterVerdict::Focus,
            focus_order: Some(order),
            first_nonzero_constant: Some(rat_to_str(&value)),
            reversible_about_x_axis: reversible_x,
            equilibria,
        });
    }

    if !reversible_x {
        return Err(GlobalCenterError::Inconsistent(
            "center coefficient conditions hold but the field is not x-axis reversible"
                .to_string(),
        ));
    }
    let unique_predicate = rational_sign(&params.a5) <= 0;
    let count = equilibria.count().ok_or_else(|| {
        GlobalCenterError::Inconsistent(
            "family member reported a curve of equilibria".to_string(),
        )
    })?;
    if unique_predicate != (count == 1) {
        return Err(GlobalCenterError::Inconsistent(format!(
            "uniqueness predicate ({unique_predicate}) disagrees with located equilibria ({count})"
        )));
    }
    Ok(CenterReport {
        verdict: if unique_predicate {
            CenterVerdict::CenterWithUniqueEquilibrium
        } else {
            CenterVerdict::CenterButExtraEquilibria
        },
        focus_order: None,
        first_nonzero_constant: None,
        reversible_about_x_axis: true,
        equilibria,
    })
}

// ----- global-center check ----------------------------------------------------------

/// Decision route.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Closed-form coefficient predicate.
    Theorem,
    /// Geometric pipeline: equilibrium census plus sector resolution at
    /// infinity.
    Pipeline,
}

/// Three-valued outcome: the pipeline refuses to guess when a local
/// portrait stays unresolved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    True,
    False,
    Undecided,
}

/// Resolution summary for one equilibrium on the circle at infinity.
#[derive(Debug, Clone, Serialize)]
pub struct InfinitePointReport {
    /// Chart holding the point (`U1` or `U2`); each listed point also
    /// stands for its antipodal mirror.
    pub chart: String,
    /// Chart coordinate of the point on the infinity line.
    pub location: String,
    pub two_hyperbolic_on_infinity: bool,
    pub report: EquilibriumReport,
}

/// Numeric confirmation that some orbit leaves the escape radius.
#[derive(Debug, Clone, Serialize)]
pub struct EscapeEvidence {
    pub seed: (f64, f64),
    pub radius: f64,
    pub section_crossings: usize,
}

/// Full evidence bundle for one global-center decision.
#[derive(Debug, Clone, Serialize)]
pub struct GlobalCenterEvidence {
    pub mode: Mode,
    pub verdict: Verdict,
    pub params: BTreeMap<String, String>,
    /// Closed-form predicate value (computed in both modes).
    pub theorem_predicate: bool,
    /// Parameter-region label (`c1`…`c6`) for a1 = 0 centers with `a5 ≤ 0`.
    pub case: Option<String>,
    pub reason: String,
    pub center: Option<CenterReport>,
    pub infinite_points: Vec<InfinitePointReport>,
    pub numeric_escape: Option<EscapeEvidence>,
}

/// Pipeline tuning knobs.
#[derive(Debug, Clone)]
pub struct PipelineOptions {
    pub blowup_depth: u32,
    /// Truncation order for center-manifold series at semi-hyperbolic points.
    pub series_order: usize,
    pub root_width: Rat,
    pub integration: IntegrationSpec,
    /// Seeds probed (in order) for numeric escape evidence on `False`
    /// verdicts; the first escaping orbit is reported.
    pub escape_seeds: Vec<(f64, f64)>,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            blowup_depth: DEFAULT_BLOWUP_DEPTH,
            series_order: desing::DEFAULT_SERIES_ORDER,
            root_width: rat(1, 4096),
            integration: IntegrationSpec::default(),
            escape_seeds: vec![(1.0, 0.0), (3.0, 0.0), (10.0, 0.0)],
        }
    }
}

/// The closed-form global-center predicate on the coefficients.
pub fn theorem_predicate(params: &FamilyParameters) -> bool {
    params.a0.is_zero()
        && params.a1.is_zero()
        && params.a2.is_zero()
        && params.a4.is_zero()
        && rational_sign(&params.a3) <= 0
        && rational_sign(&params.a5) <= 0
}

/// Parameter-region label for a1 = 0 centers with `a5 ≤ 0`.
fn case_label(params: &FamilyParameters) -> Option<String> {
    let center = params.a0.is_zero() && params.a2.is_zero() && params.a4.is_zero();
    if !center || !params.a1.is_zero() || rational_sign(&params.a5) > 0 {
        return None;
    }
    let s3 = rational_sign(&params.a3);
    let negative_quintic = rational_sign(&params.a5) < 0;
    Some(
        match (s3, negative_quintic) {
            (1, true) => "c1",
            (1, false) => "c2",
            (-1, true) => "c3",
            (-1, false) => "c4",
            (0, true) => "c5",
            (0, false) => "c6",
            _ => unreachable!("sign is −1, 0, or 1"),
        }
        .to_string(),
    )
}

/// Decide whether the family member has a global center at the origin.
pub fn global_center_check(
    params: &FamilyParameters,
    mode: Mode,
) -> Result<GlobalCenterEvidence, GlobalCenterError> {
    global_center_check_with(params, mode, &PipelineOptions::default())
}

/// [`global_center_check`] with explicit pipeline options.
pub fn global_center_check_with(
    params: &FamilyParameters,
    mode: Mode,
    opts: &PipelineOptions,
) -> Result<GlobalCenterEvidence, GlobalCenterError> {
    let predicate = theorem_predicate(params);
    let case = case_label(params);
    match mode {
        Mode::Theorem => Ok(GlobalCenterEvidence {
            mode,
            verdict: if predicate { Verdict::True } else { Verdict::False },
            params: params.display_map(),
            theorem_predicate: predicate,
            case,
            reason: if predicate {
                "coefficient predicate holds: a0 = a1 = a2 = a4 = 0, a3 ≤ 0, a5 ≤ 0"
                    .to_string()
            } else {
                "coefficient predicate fails".to_string()
            },
            center: None,
            infinite_points: Vec::new(),
            numeric_escape: None,
        }),
        Mode::Pipeline => pipeline_check(params, opts, predicate, case),
    }
}

fn pipeline_check(
    params: &FamilyParameters,
    opts: &PipelineOptions,
    predicate: bool,
    case: Option<String>,
) -> Result<GlobalCenterEvidence, GlobalCenterError> {
    let sys = params.system()?;
    let center = center_check(params)?;
    let evidence = |verdict, reason: String, center, infinite_points, numeric_escape| {
        GlobalCenterEvidence {
            mode: Mode::Pipeline,
            verdict,
            params: params.display_map(),
            theorem_predicate: predicate,
            case: case.clone(),
            reason,
            center,
            infinite_points,
            numeric_escape,
        }
    };

    match center.verdict {
        CenterVerdict::Focus => {
            let order = center.focus_order.unwrap_or(0);
            return Ok(evidence(
                Verdict::False,
                format!("the origin is a weak focus of order {order}, not a center"),
                Some(center),
                Vec::new(),
                None,
            ));
        }
        CenterVerdict::CenterButExtraEquilibria => {
            return Ok(evidence(
                Verdict::False,
                "the center is not the unique finite equilibrium".to_string(),
                Some(center),
                Vec::new(),
                None,
            ));
        }
        CenterVerdict::CenterWithUniqueEquilibrium => {}
    }

    let analysis = compactify::infinite_equilibria(&sys, &opts.root_width)?;
    if analysis.line_of_equilibria {
        return Ok(evidence(
            Verdict::Undecided,
            "the circle at infinity consists of equilibria; the sector test does not apply"
                .to_string(),
            Some(center),
            Vec::new(),
            None,
        ));
    }
    let Some(points) = analysis.points.clone() else {
        return Err(GlobalCenterError::SymbolicParameters);
    };

    let u1 = chart_field(&sys, Chart::U1)?;
    let u2 = chart_field(&sys, Chart::U2)?;
    let restriction = analysis.restriction.to_unipoly(sys.x_idx())?;

    let mut reports = Vec::new();
    let mut failing: Option<String> = None;
    let mut unresolved: Option<String> = None;
    for point in &points {
        let (chart, location, report) = match point {
            InfinitePoint::U1 { x } => match desing::real_root_to_quad(&restriction, x)? {
                Some(x0) => {
                    let report = desing::resolve_infinite_point_with(
                        &u1,
                        &x0,
                        opts.blowup_depth,
                        opts.series_order,
                    )?;
                    ("U1".to_string(), x0.to_string(), report)
                }
                // Coordinates of degree > 2 over ℚ stay unresolved; the scan
                // continues so a decisive failure elsewhere still counts.
                None => {
                    let location = root_location_string(&x.loc);
                    let report = unrepresentable_report(&location);
                    ("U1".to_string(), location, report)
                }
            },
            InfinitePoint::U2Origin => {
                let origin = <Quad as crate::field2::Scalar>::zero();
                let report = desing::resolve_infinite_point_with(
                    &u2,
                    &origin,
                    opts.blowup_depth,
                    opts.series_order,
                )?;
                ("U2".to_string(), "0".to_string(), report)
            }
        };
        let two_h = report
            .sectors
            .as_ref()
            .map(|s| s.is_two_hyperbolic_on_infinity())
            .unwrap_or(false);
        let label = format!("{chart} chart, x = {location}");
        if matches!(report.kind, EquilibriumKind::Unresolved { .. }) {
            unresolved.get_or_insert(label.clone());
        } else if !two_h && report.sectors.is_some() {
            failing.get_or_insert(label.clone());
        } else if report.sectors.is_none() {
            unresolved.get_or_insert(label.clone());
        }
        reports.push(InfinitePointReport {
            chart,
            location,
            two_hyperbolic_on_infinity: two_h,
            report,
        });
    }

    if let Some(label) = failing {
        let escape = escape_probe(&sys, opts);
        return Ok(evidence(
            Verdict::False,
            format!(
                "infinite equilibrium at {label} is not two hyperbolic sectors with \
                 separatrices on the infinite circle"
            ),
            Some(center),
            reports,
            escape,
        ));
    }
    if let Some(label) = unresolved {
        return Ok(evidence(
            Verdict::Undecided,
            format!("local portrait at {label} could not be resolved"),
            Some(center),
            reports,
            None,
        ));
    }
    Ok(evidence(
        Verdict::True,
        if reports.is_empty() {
            "unique finite center and no equilibria on the circle at infinity".to_string()
        } else {
            "unique finite center; every infinite equilibrium shows two hyperbolic \
             sectors with separatrices on the infinite circle"
                .to_string()
        },
        Some(center),
        reports,
        None,
    ))
}

/// Human-readable location of a real root: the exact rational, or the
/// isolating interval for an irrational root.
pub fn root_location_string(loc: &RootLoc) -> String {
    match loc {
        RootLoc::Exact(r) => rat_to_str(r),
        RootLoc::Isolated(iv) => format!("({}, {})", rat_to_str(&iv.lo), rat_to_str(&iv.hi)),
    }
}

/// Placeholder report for an infinite equilibrium whose chart coordinate is
/// algebraic of degree greater than two over ℚ.
fn unrepresentable_report(location: &str) -> EquilibriumReport {
    let z = "0".to_string();
    EquilibriumReport {
        point: (location.to_string(), "0".to_string()),
        linear_part: [[z.clone(), z.clone()], [z.clone(), z]],
        trace_sign: 0,
        det_sign: 0,
        center_leading: None,
        kind: EquilibriumKind::Unresolved {
            reason: "chart coordinate is algebraic of degree greater than two".to_string(),
        },
        sectors: None,
        steps: Vec::new(),
        exceptional_equilibria: Vec::new(),
    }
}

/// Try the configured seeds and report the first numerically escaping orbit.
fn escape_probe(sys: &PlanarSystem, opts: &PipelineOptions) -> Option<EscapeEvidence> {
    for &seed in &opts.escape_seeds {
        let Ok(trace) = portrait::integrate(sys, seed, &opts.integration) else {
            continue;
        };
        if let OrbitVerdict::Escaped { radius } = trace.verdict {
            return Some(EscapeEvidence {
                seed,
                radius,
                section_crossings: trace.crossings.len(),
            });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(list: &str) -> FamilyParameters {
        FamilyParameters::parse_assignments(list).unwrap()
    }

    #[test]
    fn assignment_parsing_and_errors() {
        let p = params("a3=-1, a5=1/2");
        assert_eq!(p.a3, rat_int(-1));
        assert_eq!(p.a5, rat(1, 2));
        assert_eq!(p.a0, rat_int(0));
        assert!(matches!(
            FamilyParameters::parse_assignments("b1=2"),
            Err(GlobalCenterError::UnknownParameter(_))
        ));
        assert!(matches!(
            FamilyParameters::parse_assignments("a3"),
            Err(GlobalCenterError::BadAssignment(_))
        ));
        assert_eq!(params(""), FamilyParameters::default());
    }

    #[test]
    fn family_system_shape() {
        let lin = params("").system().unwrap();
        assert_eq!(lin.degree(), Some(1));
        let quintic = params("a5=-1").system().unwrap();
        assert_eq!(quintic.degree(), Some(5));
        assert!(quintic.is_numeric());
    }

    #[test]
    fn finite_equilibria_family_counts() {
        let w = rat(1, 4096);
        let only_origin = finite_equilibria(&params("a5=-1").system().unwrap(), &w).unwrap();
        match &only_origin {
            FiniteEquilibria::Isolated { points } => {
                assert_eq!(points.len(), 1);
                assert!(points[0].x.is_exact_zero() && points[0].y.is_exact_zero());
            }
            other => panic!("unexpected {other:?}"),
        }

        let three = finite_equilibria(&params("a5=1").system().unwrap(), &w).unwrap();
        match &three {
            FiniteEquilibria::Isolated { points } => {
                let xs: Vec<_> = points.iter().map(|p| p.x.clone()).collect();
                assert_eq!(points.len(), 3);
                assert!(xs.contains(&Coordinate::Exact {
                    value: "-1".to_string()
                }));
                assert!(xs.contains(&Coordinate::Exact {
                    value: "0".to_string()
                }));
                assert!(xs.contains(&Coordinate::Exact {
                    value: "1".to_string()
                }));
                assert!(points.iter().all(|p| p.y.is_exact_zero()));
            }
            other => panic!("unexpected {other:?}"),
        }

        let halves = finite_equilibria(&params("a5=16").system().unwrap(), &w).unwrap();
        match &halves {
            FiniteEquilibria::Isolated { points } => {
                let xs: Vec<_> = points.iter().map(|p| p.x.clone()).collect();
                assert_eq!(points.len(), 3);
                assert!(xs.contains(&Coordinate::Exact {
                    value: "-1/2".to_string()
                }));
                assert!(xs.contains(&Coordinate::Exact {
                    value: "1/2".to_string()
                }));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn finite_equilibria_irrational_roots_become_intervals() {
        // a5 = 2: the extra equilibria sit at x = ±(1/2)^{1/4}, which is not
        // quadratic over ℚ; y = 0 stays exact through the linear generator.
        let fe = finite_equilibria(&params("a5=2").system().unwrap(), &rat(1, 4096)).unwrap();
        match fe {
            FiniteEquilibria::Isolated { points } => {
                assert_eq!(points.len(), 3);
                assert!(points.iter().all(|p| p.y.is_exact_zero()));
                let intervals = points
                    .iter()
                    .filter(|p| matches!(p.x, Coordinate::Interval { .. }))
                    .count();
                assert_eq!(intervals, 2);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn finite_equilibria_positive_dimensional() {
        let table = Arc::new(VariableTable::new(&["x", "y"]).unwrap());
        let shared = PlanarSystem::parse(&table, "y - x", "2*y - 2*x").unwrap();
        assert_eq!(
            finite_equilibria(&shared, &rat(1, 4096)).unwrap(),
            FiniteEquilibria::PositiveDimensional
        );
        let vertical = PlanarSystem::parse(&table, "x*y", "x*y + x").unwrap();
        assert_eq!(
            finite_equilibria(&vertical, &rat(1, 4096)).unwrap(),
            FiniteEquilibria::PositiveDimensional
        );
    }

    #[test]
    fn center_check_three_verdicts() {
        let c = center_check(&params("a1=1,a3=-1,a5=-1")).unwrap();
        assert_eq!(c.verdict, CenterVerdict::CenterWithUniqueEquilibrium);
        assert!(c.reversible_about_x_axis);

        let f = center_check(&params("a0=1")).unwrap();
        assert_eq!(f.verdict, CenterVerdict::Focus);
        assert_eq!(f.focus_order, Some(3));
        assert_eq!(f.first_nonzero_constant.as_deref(), Some("-5/16"));

        let e = center_check(&params("a5=1")).unwrap();
        assert_eq!(e.verdict, CenterVerdict::CenterButExtraEquilibria);
    }

    #[test]
    fn theorem_mode_verdicts() {
        let t = |list: &str| {
            global_center_check(&params(list), Mode::Theorem)
                .unwrap()
                .verdict
        };
        assert_eq!(t("a3=-1,a5=-1"), Verdict::True);
        assert_eq!(t(""), Verdict::True);
        assert_eq!(t("a1=1,a3=-1,a5=-1"), Verdict::False);
        assert_eq!(t("a3=1,a5=-1"), Verdict::False);
        assert_eq!(t("a0=1"), Verdict::False);
    }

    #[test]
    fn pipeline_linear_center_is_global() {
        let ev = global_center_check(&params(""), Mode::Pipeline).unwrap();
        assert_eq!(ev.verdict, Verdict::True);
        assert_eq!(ev.case.as_deref(), Some("c6"));
        assert!(ev.infinite_points.is_empty());
    }

    #[test]
    fn pipeline_c3_is_global() {
        let ev = global_center_check(&params("a3=-1,a5=-1"), Mode::Pipeline).unwrap();
        assert_eq!(ev.verdict, Verdict::True, "reason: {}", ev.reason);
        assert_eq!(ev.case.as_deref(), Some("c3"));
        assert_eq!(ev.infinite_points.len(), 1);
        assert_eq!(ev.infinite_points[0].chart, "U2");
        assert!(ev.infinite_points[0].two_hyperbolic_on_infinity);
    }

    #[test]
    fn pipeline_dicritical_family_escapes() {
        let ev = global_center_check(&params("a1=1,a3=-1,a5=-1"), Mode::Pipeline).unwrap();
        assert_eq!(ev.verdict, Verdict::False, "reason: {}", ev.reason);
        assert!(ev.theorem_predicate == false);
        let escape = ev.numeric_escape.expect("escape evidence");
        assert!(escape.radius > 1e3);
    }

    #[test]
    fn pipeline_c1_not_global() {
        let ev = global_center_check(&params("a3=1,a5=-1"), Mode::Pipeline).unwrap();
        assert_eq!(ev.verdict, Verdict::False, "reason: {}", ev.reason);
        assert_eq!(ev.case.as_deref(), Some("c1"));
        // The U1 mirror points x = ±1 fail the sector test.
        assert!(ev
            .infinite_points
            .iter()
            .any(|p| p.chart == "U1" && !p.two_hyperbolic_on_infinity));
    }

    #[test]
    fn theorem_and_pipeline_agree_on_sample_cases() {
        for list in ["", "a3=-1", "a5=-1", "a3=-1,a5=-1"] {
            let p = params(list);
            let t = global_center_check(&p, Mode::Theorem).unwrap().verdict;
            let g = global_center_check(&p, Mode::Pipeline).unwrap().verdict;
            assert_eq!(t, g, "modes disagree at {list:?}");
            assert_eq!(t, Verdict::True);
        }
    }
}
