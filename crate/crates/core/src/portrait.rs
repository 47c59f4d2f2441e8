//! Floating-point orbit integration and Poincaré-disc rendering.
//!
//! This is the numeric counterpart to the exact machinery: an adaptive
//! embedded Runge–Kutta integrator with a Poincaré section on the positive
//! x-axis (closed-orbit and escape verdicts), an independent fixed-step
//! integrator used as a cross-check oracle, and a deterministic SVG renderer
//! that maps the plane onto the unit disc with infinity as the boundary
//! circle.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::MultiPoly;
use crate::roots::rat_to_f64;
use crate::system::{PlanarSystem, SystemError};

/// Errors from numeric integration or rendering.
#[derive(Debug, Error)]
pub enum PortraitError {
    #[error("system still contains free parameters; bind them before integrating")]
    SymbolicParameters,
    #[error("seed ({0}, {1}) is an equilibrium of the field")]
    SeedAtEquilibrium(f64, f64),
    #[error("invalid integration settings: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    System(#[from] SystemError),
}

// ----- compiled field ---------------------------------------------------------------

/// One polynomial lowered to f64 terms `(x-exponent, y-exponent, coefficient)`.
struct CompiledPoly(Vec<(u32, u32, f64)>);

impl CompiledPoly {
    fn compile(p: &MultiPoly, xi: usize, yi: usize) -> CompiledPoly {
        CompiledPoly(
            p.terms()
                .map(|(m, c)| {
                    let e = m.exponents();
                    (e[xi] as u32, e[yi] as u32, rat_to_f64(c))
                })
                .collect(),
        )
    }

    fn eval(&self, x: f64, y: f64) -> f64 {
        let mut acc = 0.0;
        for &(i, j, c) in &self.0 {
            acc += c * x.powi(i as i32) * y.powi(j as i32);
        }
        acc
    }
}

/// A planar field lowered to f64 for fast evaluation.
pub struct FieldEval {
    p: CompiledPoly,
    q: CompiledPoly,
}

impl FieldEval {
    pub fn new(sys: &PlanarSystem) -> Result<FieldEval, PortraitError> {
        if !sys.is_numeric() {
            return Err(PortraitError::SymbolicParameters);
        }
        let (xi, yi) = (sys.x_idx(), sys.y_idx());
        Ok(FieldEval {
            p: CompiledPoly::compile(sys.p(), xi, yi),
            q: CompiledPoly::compile(sys.q(), xi, yi),
        })
    }

    fn f(&self, s: [f64; 2]) -> [f64; 2] {
        [self.p.eval(s[0], s[1]), self.q.eval(s[0], s[1])]
    }
}

// ----- integration settings ---------------------------------------------------------

/// Settings for one orbit integration.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IntegrationSpec {
    /// Relative local-error tolerance per step.
    pub rel_tol: f64,
    /// Absolute local-error tolerance per step.
    pub abs_tol: f64,
    /// Accepted-step budget.
    pub max_steps: usize,
    /// Escape radius as a multiple of the seed norm.
    pub escape_factor: f64,
    /// Relative gap between consecutive section radii that counts as closed.
    pub closure_rel_defect: f64,
    /// Section-crossing budget.
    pub max_crossings: usize,
}

impl Default for IntegrationSpec {
    fn default() -> Self {
        IntegrationSpec {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            max_steps: 2_000_000,
            escape_factor: 1e3,
            closure_rel_defect: 1e-6,
            max_crossings: 200,
        }
    }
}

impl IntegrationSpec {
    /// The same settings at half the error tolerances (verdict-stability
    /// checks).
    pub fn halved(&self) -> IntegrationSpec {
        IntegrationSpec {
            rel_tol: self.rel_tol / 2.0,
            abs_tol: self.abs_tol / 2.0,
            ..self.clone()
        }
    }

    fn validate(&self) -> Result<(), PortraitError> {
        if !(self.rel_tol > 0.0) || !(self.abs_tol > 0.0) {
            return Err(PortraitError::InvalidSpec(
                "tolerances must be positive".to_string(),
            ));
        }
        if self.max_steps == 0 {
            return Err(PortraitError::InvalidSpec(
                "max_steps must be positive".to_string(),
            ));
        }
        if !(self.escape_factor > 1.0) {
            return Err(PortraitError::InvalidSpec(
                "escape_factor must exceed 1".to_string(),
            ));
        }
        Ok(())
    }
}

/// Outcome of one orbit integration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OrbitVerdict {
    /// Two consecutive section radii agreed within the closure tolerance.
    Closed { defect: f64 },
    /// The orbit left the escape radius.
    Escaped { radius: f64 },
    /// Step or crossing budget exhausted (or the step size underflowed)
    /// before a verdict.
    Budget,
}

/// A recorded orbit: polyline, section-crossing radii, and the verdict.
#[derive(Debug, Clone, Serialize)]
pub struct OrbitTrace {
    pub points: Vec<(f64, f64)>,
    pub crossings: Vec<f64>,
    pub verdict: OrbitVerdict,
}

// ----- Dormand–Prince 5(4) ----------------------------------------------------------

const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];

/// Fifth-order weights (the last row of `A` duplicates them: FSAL layout).
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];

/// Embedded fourth-order weights.
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// One Dormand–Prince step of size `h` from `s`: the fifth-order result and
/// the embedded error estimate.
fn dp45_step(field: &FieldEval, s: [f64; 2], h: f64) -> ([f64; 2], [f64; 2]) {
    let mut k = [[0.0f64; 2]; 7];
    k[0] = field.f(s);
    for stage in 1..7 {
        let mut arg = s;
        for (j, kj) in k.iter().enumerate().take(stage) {
            let a = A[stage - 1][j];
            if a != 0.0 {
                arg[0] += h * a * kj[0];
                arg[1] += h * a * kj[1];
            }
        }
        k[stage] = field.f(arg);
    }
    let mut y5 = s;
    let mut err = [0.0f64; 2];
    for (j, kj) in k.iter().enumerate() {
        y5[0] += h * B5[j] * kj[0];
        y5[1] += h * B5[j] * kj[1];
        err[0] += h * (B5[j] - B4[j]) * kj[0];
        err[1] += h * (B5[j] - B4[j]) * kj[1];
    }
    (y5, err)
}

/// One classical fourth-order Runge–Kutta step.
fn rk4_step(field: &FieldEval, s: [f64; 2], h: f64) -> [f64; 2] {
    let k1 = field.f(s);
    let k2 = field.f([s[0] + 0.5 * h * k1[0], s[1] + 0.5 * h * k1[1]]);
    let k3 = field.f([s[0] + 0.5 * h * k2[0], s[1] + 0.5 * h * k2[1]]);
    let k4 = field.f([s[0] + h * k3[0], s[1] + h * k3[1]]);
    [
        s[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
        s[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
    ]
}

// ----- section bookkeeping ----------------------------------------------------------

/// Shared per-orbit state: crossing record and verdict tests.
struct SectionTracker {
    crossings: Vec<f64>,
    /// +1 when the first observed crossing went y: −→+, −1 for +→−;
    /// later crossings only count in the same direction.
    direction: i8,
    escape_radius: f64,
    closure_rel_defect: f64,
    max_crossings: usize,
}

impl SectionTracker {
    fn new(seed: [f64; 2], spec: &IntegrationSpec) -> SectionTracker {
        let seed_norm = (seed[0] * seed[0] + seed[1] * seed[1]).sqrt();
        SectionTracker {
            crossings: Vec::new(),
            direction: 0,
            escape_radius: spec.escape_factor * seed_norm,
            closure_rel_defect: spec.closure_rel_defect,
            max_crossings: spec.max_crossings,
        }
    }

    fn escaped(&self, s: [f64; 2]) -> Option<OrbitVerdict> {
        let r = (s[0] * s[0] + s[1] * s[1]).sqrt();
        (r > self.escape_radius).then_some(OrbitVerdict::Escaped { radius: r })
    }

    /// Handle a section hit at `x > 0`; returns a verdict when the orbit is
    /// closed or the crossing budget runs out.
    fn record(&mut self, x: f64, dir: i8) -> Option<OrbitVerdict> {
        if self.direction == 0 {
            self.direction = dir;
        } else if dir != self.direction {
            return None;
        }
        if let Some(prev) = self.crossings.last() {
            let defect = (x - prev).abs() / prev.abs().max(f64::MIN_POSITIVE);
            self.crossings.push(x);
            if defect < self.closure_rel_defect {
                return Some(OrbitVerdict::Closed { defect });
            }
        } else {
            self.crossings.push(x);
        }
        (self.crossings.len() >= self.max_crossings).then_some(OrbitVerdict::Budget)
    }
}

/// Locate the section hit inside one step by bisection on the sub-step size,
/// using `stepper` as the smooth one-step map from `s0`.
fn refine_crossing(
    s0: [f64; 2],
    h: f64,
    stepper: impl Fn([f64; 2], f64) -> [f64; 2],
) -> [f64; 2] {
    let (mut lo, mut hi) = (0.0f64, h);
    let mut best = stepper(s0, h);
    let y0 = s0[1];
    for _ in 0..120 {
        let mid = 0.5 * (lo + hi);
        let s = stepper(s0, mid);
        if s[1] == 0.0 {
            return s;
        }
        if (s[1] > 0.0) == (y0 > 0.0) {
            lo = mid;
        } else {
            hi = mid;
            best = s;
        }
        if (hi - lo).abs() <= f64::EPSILON * h.abs() {
            break;
        }
    }
    best
}

/// Step outcome shared by both integrators.
enum StepOutcome {
    Continue,
    Done(OrbitVerdict),
}

fn process_accepted_step(
    tracker: &mut SectionTracker,
    points: &mut Vec<(f64, f64)>,
    s0: [f64; 2],
    s1: [f64; 2],
    h: f64,
    stepper: impl Fn([f64; 2], f64) -> [f64; 2],
) -> StepOutcome {
    points.push((s1[0], s1[1]));
    let crossed = (s0[1] > 0.0 && s1[1] <= 0.0) || (s0[1] < 0.0 && s1[1] >= 0.0);
    if crossed {
        let hit = refine_crossing(s0, h, &stepper);
        if hit[0] > 0.0 {
            let dir = if s0[1] > 0.0 { -1 } else { 1 };
            if let Some(v) = tracker.record(hit[0], dir) {
                return StepOutcome::Done(v);
            }
        }
    }
    if let Some(v) = tracker.escaped(s1) {
        return StepOutcome::Done(v);
    }
    StepOutcome::Continue
}

// ----- integrators ------------------------------------------------------------------

/// Integrate one orbit with adaptive Dormand–Prince 5(4) until it closes,
/// escapes, or runs out of budget.
pub fn integrate(
    sys: &PlanarSystem,
    seed: (f64, f64),
    spec: &IntegrationSpec,
) -> Result<OrbitTrace, PortraitError> {
    spec.validate()?;
    let field = FieldEval::new(sys)?;
    let s0 = [seed.0, seed.1];
    let f0 = field.f(s0);
    if f0[0] == 0.0 && f0[1] == 0.0 {
        return Err(PortraitError::SeedAtEquilibrium(seed.0, seed.1));
    }

    let mut tracker = SectionTracker::new(s0, spec);
    let mut points = vec![(s0[0], s0[1])];
    let mut s = s0;
    // Initial step: aim the first move at ~1e-3 of the state scale.
    let speed = (f0[0] * f0[0] + f0[1] * f0[1]).sqrt();
    let scale = (s0[0] * s0[0] + s0[1] * s0[1]).sqrt().max(1.0);
    let mut h = (1e-3 * scale / speed).min(0.1);
    let h_floor = 1e-14;

    let mut accepted = 0usize;
    while accepted < spec.max_steps {
        let (s1, err) = dp45_step(&field, s, h);
        let sc0 = spec.abs_tol + spec.rel_tol * s[0].abs().max(s1[0].abs());
        let sc1 = spec.abs_tol + spec.rel_tol * s[1].abs().max(s1[1].abs());
        let e0 = err[0] / sc0;
        let e1 = err[1] / sc1;
        let err_norm = (0.5 * (e0 * e0 + e1 * e1)).sqrt();
        if !err_norm.is_finite() {
            h *= 0.25;
            if h < h_floor {
                break;
            }
            continue;
        }
        if err_norm <= 1.0 {
            accepted += 1;
            let outcome = process_accepted_step(
                &mut tracker,
                &mut points,
                s,
                s1,
                h,
                |from, tau| dp45_step(&field, from, tau).0,
            );
            s = s1;
            if let StepOutcome::Done(verdict) = outcome {
                return Ok(OrbitTrace {
                    points,
                    crossings: tracker.crossings,
                    verdict,
                });
            }
        }
        let factor = if err_norm == 0.0 {
            5.0
        } else {
            (0.9 * err_norm.powf(-0.2)).clamp(0.2, 5.0)
        };
        h *= factor;
        if h < h_floor {
            break;
        }
    }
    Ok(OrbitTrace {
        points,
        crossings: tracker.crossings,
        verdict: OrbitVerdict::Budget,
    })
}

/// Fixed-step fourth-order oracle integrator: same section and verdict
/// logic, no step control. Independent cross-check for [`integrate`].
pub fn integrate_fixed_rk4(
    sys: &PlanarSystem,
    seed: (f64, f64),
    h: f64,
    spec: &IntegrationSpec,
) -> Result<OrbitTrace, PortraitError> {
    spec.validate()?;
    if !(h > 0.0) {
        return Err(PortraitError::InvalidSpec(
            "fixed step size must be positive".to_string(),
        ));
    }
    let field = FieldEval::new(sys)?;
    let s0 = [seed.0, seed.1];
    let f0 = field.f(s0);
    if f0[0] == 0.0 && f0[1] == 0.0 {
        return Err(PortraitError::SeedAtEquilibrium(seed.0, seed.1));
    }
    let mut tracker = SectionTracker::new(s0, spec);
    let mut points = vec![(s0[0], s0[1])];
    let mut s = s0;
    for _ in 0..spec.max_steps {
        let s1 = rk4_step(&field, s, h);
        if !(s1[0].is_finite() && s1[1].is_finite()) {
            break;
        }
        let outcome = process_accepted_step(
            &mut tracker,
            &mut points,
            s,
            s1,
            h,
            |from, tau| rk4_step(&field, from, tau),
        );
        s = s1;
        if let StepOutcome::Done(verdict) = outcome {
            return Ok(OrbitTrace {
                points,
                crossings: tracker.crossings,
                verdict,
            });
        }
    }
    Ok(OrbitTrace {
        points,
        crossings: tracker.crossings,
        verdict: OrbitVerdict::Budget,
    })
}

// ----- rendering --------------------------------------------------------------------

/// Settings for one disc rendering.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RenderSpec {
    /// Orbit seeds, drawn in order.
    pub seeds: Vec<(f64, f64)>,
    pub integration: IntegrationSpec,
    /// Pixel radius of the disc on the 1000×1000 canvas.
    pub disc_radius_px: f64,
    /// Output path; unused by [`render_disc`] itself, carried for callers.
    pub out: Option<String>,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            seeds: vec![(1.0, 0.0)],
            integration: IntegrationSpec::default(),
            disc_radius_px: 470.0,
            out: None,
        }
    }
}

const CANVAS: f64 = 1000.0;
const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];

/// Map a plane point into canvas pixels through the disc compression
/// `(x, y) ↦ (x, y) / (1 + √(x² + y²))`.
fn to_pixel(x: f64, y: f64, disc_radius_px: f64) -> (f64, f64) {
    let r = (x * x + y * y).sqrt();
    let u = x / (1.0 + r);
    let v = y / (1.0 + r);
    (CANVAS / 2.0 + disc_radius_px * u, CANVAS / 2.0 - disc_radius_px * v)
}

fn verdict_label(v: &OrbitVerdict) -> String {
    match v {
        OrbitVerdict::Closed { defect } => format!("closed defect {defect:.3e}"),
        OrbitVerdict::Escaped { radius } => format!("escaped radius {radius:.3e}"),
        OrbitVerdict::Budget => "budget".to_string(),
    }
}

/// Render the phase portrait of a numeric system on the Poincaré disc as a
/// deterministic standalone SVG document.
pub fn render_disc(sys: &PlanarSystem, spec: &RenderSpec) -> Result<String, PortraitError> {
    if spec.seeds.is_empty() {
        return Err(PortraitError::InvalidSpec(
            "at least one seed is required".to_string(),
        ));
    }
    if !(spec.disc_radius_px > 0.0 && spec.disc_radius_px <= CANVAS / 2.0) {
        return Err(PortraitError::InvalidSpec(
            "disc radius must lie in (0, 500]".to_string(),
        ));
    }
    let mut doc = String::new();
    doc.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         width=\"{CANVAS:.0}\" height=\"{CANVAS:.0}\" \
         viewBox=\"0 0 {CANVAS:.0} {CANVAS:.0}\">\n"
    ));
    doc.push_str(&format!(
        "<rect width=\"{CANVAS:.0}\" height=\"{CANVAS:.0}\" fill=\"#ffffff\"/>\n"
    ));
    doc.push_str(&format!(
        "<circle cx=\"{:.3}\" cy=\"{:.3}\" r=\"{:.3}\" fill=\"none\" \
         stroke=\"#000000\" stroke-width=\"2\"/>\n",
        CANVAS / 2.0,
        CANVAS / 2.0,
        spec.disc_radius_px
    ));

    for (idx, &(sx, sy)) in spec.seeds.iter().enumerate() {
        let trace = integrate(sys, (sx, sy), &spec.integration)?;
        let stride = (trace.points.len() / 4000).max(1);
        let mut d = String::new();
        for (i, &(x, y)) in trace.points.iter().enumerate() {
            if i % stride != 0 && i + 1 != trace.points.len() {
                continue;
            }
            let (px, py) = to_pixel(x, y, spec.disc_radius_px);
            if d.is_empty() {
                d.push_str(&format!("M {px:.3} {py:.3}"));
            } else {
                d.push_str(&format!(" L {px:.3} {py:.3}"));
            }
        }
        let color = PALETTE[idx % PALETTE.len()];
        doc.push_str(&format!(
            "<path d=\"{d}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1\">\
             <title>seed ({sx:.3}, {sy:.3}): {}</title></path>\n",
            verdict_label(&trace.verdict)
        ));
    }

    // Mark the origin when it is an equilibrium.
    if let Ok((px, qx)) = sys.eval(&crate::poly::rat_int(0), &crate::poly::rat_int(0)) {
        use num_traits::Zero;
        if px.is_zero() && qx.is_zero() {
            let (cx, cy) = to_pixel(0.0, 0.0, spec.disc_radius_px);
            doc.push_str(&format!(
                "<circle cx=\"{cx:.3}\" cy=\"{cy:.3}\" r=\"4\" fill=\"#000000\"/>\n"
            ));
        }
    }
    doc.push_str("</svg>\n");
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vars::VariableTable;
    use std::sync::Arc;

    fn sys(p: &str, q: &str) -> PlanarSystem {
        let table = Arc::new(VariableTable::new(&["x", "y"]).unwrap());
        PlanarSystem::parse(&table, p, q).unwrap()
    }

    fn family(a1: i64, a3: i64, a5: i64) -> PlanarSystem {
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
        sys("y", &q)
    }

    #[test]
    fn linear_center_orbit_closes_tightly() {
        let s = sys("y", "-x");
        let trace = integrate(&s, (1.0, 0.0), &IntegrationSpec::default()).unwrap();
        match trace.verdict {
            OrbitVerdict::Closed { defect } => assert!(defect < 1e-9, "defect {defect}"),
            v => panic!("expected closed, got {v:?}"),
        }
        for r in &trace.crossings {
            assert!((r - 1.0).abs() < 1e-9, "crossing radius {r}");
        }
    }

    #[test]
    fn family_center_orbit_closes() {
        let s = family(0, -1, -1);
        let trace = integrate(&s, (1.0, 0.0), &IntegrationSpec::default()).unwrap();
        match trace.verdict {
            OrbitVerdict::Closed { defect } => assert!(defect < 1e-6, "defect {defect}"),
            v => panic!("expected closed, got {v:?}"),
        }
    }

    #[test]
    fn dicritical_perturbation_escapes_and_oracle_agrees() {
        let s = family(1, -1, -1);
        let spec = IntegrationSpec::default();
        let trace = integrate(&s, (3.0, 0.0), &spec).unwrap();
        match trace.verdict {
            OrbitVerdict::Escaped { radius } => assert!(radius > 3.0e3),
            v => panic!("expected escape, got {v:?}"),
        }
        // Verdict stable under halved tolerances.
        let trace2 = integrate(&s, (3.0, 0.0), &spec.halved()).unwrap();
        assert!(matches!(trace2.verdict, OrbitVerdict::Escaped { .. }));
        // Independent fixed-step oracle agrees.
        let oracle = integrate_fixed_rk4(&s, (3.0, 0.0), 1e-5, &spec).unwrap();
        assert!(
            matches!(oracle.verdict, OrbitVerdict::Escaped { .. }),
            "oracle verdict {:?}",
            oracle.verdict
        );
    }

    #[test]
    fn fixed_step_oracle_closes_linear_center() {
        let s = sys("y", "-x");
        let trace =
            integrate_fixed_rk4(&s, (1.0, 0.0), 1e-3, &IntegrationSpec::default()).unwrap();
        match trace.verdict {
            OrbitVerdict::Closed { defect } => assert!(defect < 1e-9, "defect {defect}"),
            v => panic!("expected closed, got {v:?}"),
        }
    }

    #[test]
    fn mirror_seeds_agree_for_reversible_family() {
        let s = family(0, -1, -1);
        let spec = IntegrationSpec::default();
        let up = integrate(&s, (0.8, 0.3), &spec).unwrap();
        let down = integrate(&s, (0.8, -0.3), &spec).unwrap();
        let (ru, rd) = (up.crossings.first(), down.crossings.first());
        let (ru, rd) = (ru.expect("crossing"), rd.expect("crossing"));
        assert!((ru - rd).abs() < 1e-6, "mirror radii {ru} vs {rd}");
    }

    #[test]
    fn seed_at_equilibrium_rejected() {
        let s = sys("y", "-x");
        let err = integrate(&s, (0.0, 0.0), &IntegrationSpec::default());
        assert!(matches!(err, Err(PortraitError::SeedAtEquilibrium(_, _))));
    }

    #[test]
    fn invalid_spec_rejected() {
        let s = sys("y", "-x");
        let mut spec = IntegrationSpec::default();
        spec.rel_tol = 0.0;
        assert!(matches!(
            integrate(&s, (1.0, 0.0), &spec),
            Err(PortraitError::InvalidSpec(_))
        ));
    }

    #[test]
    fn svg_renderer_is_deterministic() {
        let s = sys("y", "-x");
        let spec = RenderSpec {
            seeds: vec![(0.5, 0.0), (1.0, 0.0), (2.0, 0.0)],
            ..RenderSpec::default()
        };
        let doc1 = render_disc(&s, &spec).unwrap();
        let doc2 = render_disc(&s, &spec).unwrap();
        assert_eq!(doc1, doc2);
        assert!(doc1.starts_with("<svg"));
        assert!(doc1.trim_end().ends_with("</svg>"));
        assert_eq!(doc1.matches("<path").count(), 3);
        assert!(doc1.contains("closed defect"));
    }
}
