//! Named end-to-end reference computations with pinned expected outcomes.
//!
//! Each target recomputes one result of the toolkit from scratch — Lyapunov
//! constants, basis reductions, radical identities, chart and blow-up
//! identities, classification fixtures, global-center grids, numeric orbit
//! checks — and compares it against values frozen in [`crate::fixtures`] or
//! in this module. A target returns a JSON summary on success and a
//! [`CheckError::Mismatch`] otherwise, so the set doubles as an acceptance
//! harness: `reproduce` runs them from the command line and the acceptance
//! tests call them directly.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Value};
use thiserror::Error;

use crate::compactify::{self, chart_field, Chart, CompactifyError, InfinitePoint};
use crate::config::Config;
use crate::desing::{
    self, DesingError, EquilibriumKind, TransformChain, TransformKind,
};
use crate::fixtures::{self, FixtureError, REDUCED_CONSTANTS};
use crate::globalcenter::{
    self, FamilyParameters, GlobalCenterError, Mode, Verdict,
};
use crate::ideals::{
    buchberger, evaluate_ideal, intersect, is_in_radical, normal_form, IdealError,
    MonomialOrder,
};
use crate::lyapunov::{lyapunov_constants, LyapunovError};
use crate::parse::parse_poly;
use crate::poly::{rat, rat_int, MultiPoly, PolyError, Rat};
use crate::portrait::{self, OrbitVerdict, PortraitError, RenderSpec};
use crate::roots::RootError;
use crate::system::{PlanarSystem, SystemError};
use crate::vars::VariableTable;

#[derive(Debug, Error)]
pub enum CheckError {
    #[error("no reproduce target named {0:?} (see `reproduce --list`)")]
    UnknownTarget(String),
    #[error("{target}: {detail}")]
    Mismatch { target: String, detail: String },
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
    #[error(transparent)]
    Fixture(#[from] FixtureError),
    #[error(transparent)]
    GlobalCenter(#[from] GlobalCenterError),
}

/// A runnable reference computation.
pub struct Target {
    pub name: &'static str,
    pub description: &'static str,
}

/// All targets, in recommended execution order.
pub const TARGETS: [Target; 11] = [
    Target {
        name: "lyapunov-opening",
        description: "first constants of the quintic family: L1 vanishes, L3 matches the pin",
    },
    Target {
        name: "lyapunov-reduced-tail",
        description: "reduced L5, L7, L9 match the pinned normal forms exactly (factor 1)",
    },
    Target {
        name: "groebner-vanishing-tail",
        description: "L17 reduces to zero modulo a basis of the odd constants up to L15",
    },
    Target {
        name: "radical-identities",
        description: "radical memberships between the constants ideal and the center components",
    },
    Target {
        name: "component-varieties",
        description: "real varieties of the center components and their containment",
    },
    Target {
        name: "chart-identities",
        description: "compactification chart fields of the reversible subfamily match pins",
    },
    Target {
        name: "blowup-chains",
        description: "exact blow-up/rescale/shear chains reproduce every pinned stage",
    },
    Target {
        name: "classification-fixtures",
        description: "local classification of pinned equilibria (finite and infinite)",
    },
    Target {
        name: "global-center-grid",
        description: "theorem and pipeline verdicts agree on a parameter grid; escapes confirmed",
    },
    Target {
        name: "orbit-closure",
        description: "numeric orbit closure/escape suite with tolerance and oracle cross-checks",
    },
    Target {
        name: "portrait-determinism",
        description: "disc portrait renders are byte-identical across runs",
    },
];

/// Run one named target under the given configuration.
pub fn run_target(name: &str, cfg: &Config) -> Result<Value, CheckError> {
    match name {
        "lyapunov-opening" => lyapunov_opening(cfg),
        "lyapunov-reduced-tail" => lyapunov_reduced_tail(cfg),
        "groebner-vanishing-tail" => groebner_vanishing_tail(cfg),
        "radical-identities" => radical_identities(cfg),
        "component-varieties" => component_varieties(cfg),
        "chart-identities" => chart_identities(cfg),
        "blowup-chains" => blowup_chains(cfg),
        "classification-fixtures" => classification_fixtures(cfg),
        "global-center-grid" => global_center_grid(cfg),
        "orbit-closure" => orbit_closure(cfg),
        "portrait-determinism" => portrait_determinism(cfg),
        other => Err(CheckError::UnknownTarget(other.to_string())),
    }
}

fn mismatch(target: &str, detail: impl Into<String>) -> CheckError {
    CheckError::Mismatch {
        target: target.to_string(),
        detail: detail.into(),
    }
}

fn family() -> Result<PlanarSystem, CheckError> {
    Ok(fixtures::system_fixture("quintic-family")?.build()?)
}

fn pp(table: &Arc<VariableTable>, s: &str) -> Result<MultiPoly, CheckError> {
    Ok(parse_poly(table, s)?)
}

// ----- Lyapunov pins ----------------------------------------------------------------

fn lyapunov_opening(cfg: &Config) -> Result<Value, CheckError> {
    const T: &str = "lyapunov-opening";
    let sys = family()?;
    let out = lyapunov_constants(&sys, 3, false, &cfg.gb_budget())?;
    if !out.constants[0].is_zero() {
        return Err(mismatch(T, format!("L1 = {} (expected 0)", out.constants[0])));
    }
    let pin = pp(sys.table(), REDUCED_CONSTANTS[0].1)?;
    if out.constants[2] != pin {
        return Err(mismatch(T, format!("L3 = {} (expected {pin})", out.constants[2])));
    }
    Ok(json!({
        "target": T,
        "status": "ok",
        "l1": "0",
        "l3": out.constants[2].to_string(),
    }))
}

/// The factor `c` with `a == c·b`, when the two polynomials are nonzero
/// scalar multiples of each other.
fn proportionality_factor(a: &MultiPoly, b: &MultiPoly) -> Option<Rat> {
    if a.is_zero() || b.is_zero() {
        return (a.is_zero() && b.is_zero()).then(|| rat_int(1));
    }
    if a.terms().count() != b.terms().count() {
        return None;
    }
    let mut factor: Option<Rat> = None;
    for ((ma, ca), (mb, cb)) in a.terms().zip(b.terms()) {
        if ma != mb {
            return None;
        }
        let r = ca / cb;
        match &factor {
            None => factor = Some(r),
            Some(c) if *c != r => return None,
            Some(_) => {}
        }
    }
    factor
}

fn lyapunov_reduced_tail(cfg: &Config) -> Result<Value, CheckError> {
    const T: &str = "lyapunov-reduced-tail";
    let budget = cfg.gb_budget();
    let sys = family()?;
    let out = lyapunov_constants(&sys, 9, true, &budget)?;
    let order = crate::lyapunov::display_reduction_order(sys.table());
    let mut factors = Vec::new();
    for (k, pin_str) in REDUCED_CONSTANTS {
        let pin = pp(sys.table(), pin_str)?;
        // The pinned displays are stated modulo the earlier odd constants;
        // bring both sides to normal form before comparing. (The reduced
        // earlier constants generate the same ideal as the raw ones.)
        let earlier: Vec<MultiPoly> = (3..k)
            .step_by(2)
            .map(|j| out.constants[j - 1].clone())
            .collect();
        let nf_pin = if earlier.is_empty() {
            pin
        } else {
            let gb = buchberger(&earlier, &order, &budget)?;
            normal_form(&pin, &gb)?
        };
        let got = &out.constants[k - 1];
        match proportionality_factor(got, &nf_pin) {
            Some(c) if c == rat_int(1) => {
                factors.push(json!({"index": k, "factor": "1"}));
            }
            Some(c) => {
                return Err(mismatch(
                    T,
                    format!("reduced L{k} matches the pin only up to the factor {c}"),
                ));
            }
            None => {
                return Err(mismatch(
                    T,
                    format!("reduced L{k} = {got} is not proportional to the reduced pin {nf_pin}"),
                ));
            }
        }
    }
    Ok(json!({
        "target": T,
        "status": "ok",
        "factors": factors,
    }))
}

fn odd_constants(constants: &[MultiPoly], upto: usize) -> Vec<MultiPoly> {
    (3..=upto).step_by(2).map(|k| constants[k - 1].clone()).collect()
}

fn groebner_vanishing_tail(cfg: &Config) -> Result<Value, CheckError> {
    const T: &str = "groebner-vanishing-tail";
    let sys = family()?;
    let out = lyapunov_constants(&sys, 17, false, &cfg.gb_budget())?;
    let gens = odd_constants(&out.constants, 15);
    let order = MonomialOrder::default_for(sys.table());
    let gb = buchberger(&gens, &order, &cfg.gb_budget())?;
    if gb.gens.len() != 41 {
        return Err(mismatch(
            T,
            format!("basis has {} elements (expected 41)", gb.gens.len()),
        ));
    }
    let nf = normal_form(&out.constants[16], &gb)?;
    if !nf.is_zero() {
        return Err(mismatch(T, format!("L17 normal form is {nf} (expected 0)")));
    }
    Ok(json!({
        "target": T,
        "status": "ok",
        "basis_size": gb.gens.len(),
        "reduction_steps": gb.steps,
        "l17_normal_form": "0",
    }))
}

// ----- radical identities -----------------------------------------------------------

fn radical_identities(cfg: &Config) -> Result<Value, CheckError> {
    const T: &str = "radical-identities";
    let budget = cfg.gb_budget();
    let sys = family()?;
    let table = sys.table().clone();
    let out = lyapunov_constants(&sys, 15, false, &budget)?;
    let constants_ideal = odd_constants(&out.constants, 15);

    let c1 = fixtures::ideal_fixture("center-component-1", false)?;
    let c2 = fixtures::ideal_fixture("center-component-2", false)?;
    let meet12 = intersect(&c1.generators, &c2.generators, &budget)?;

    // Forward: every odd constant lies in the radical of the two verified
    // components' intersection.
    let mut forward = Vec::new();
    for k in 1..=7usize {
        let l = &out.constants[2 * k];
        let ok = is_in_radical(l, &meet12, &budget)?;
        if !ok {
            return Err(mismatch(
                T,
                format!("L{} is not in the radical of the component intersection", 2 * k + 1),
            ));
        }
        forward.push(json!({"constant": 2 * k + 1, "in_radical": true}));
    }

    // Reverse, against the ideal of the constants themselves: only the third
    // generator of component 1 belongs to the radical — the certified truth.
    let reverse_cases: [(&str, bool); 3] =
        [("a0", false), ("a2", false), ("a4 + a2 + 5*a0", true)];
    let mut reverse = Vec::new();
    for (gen, expected) in reverse_cases {
        let p = pp(&table, gen)?;
        let got = is_in_radical(&p, &constants_ideal, &budget)?;
        if got != expected {
            return Err(mismatch(
                T,
                format!("radical membership of {gen}: got {got}, certified value is {expected}"),
            ));
        }
        reverse.push(json!({"generator": gen, "in_radical": got}));
    }

    let mut result = json!({
        "target": T,
        "status": "ok",
        "forward_components_1_2": forward,
        "reverse_against_constants": reverse,
        "note": "reverse membership holds only for the third generator of component 1; \
                 the first two are certified non-members, so the radical of the \
                 constants ideal is strictly smaller than component 1",
    });

    // Quarantined extension: the unverified third component. Its garbled
    // transcription provably breaks the forward inclusion, so results are
    // reported without being asserted.
    if cfg.allow_unverified_fixtures {
        let c3 = fixtures::ideal_fixture("center-component-3", true)?;
        let meet = intersect(&meet12, &c3.generators, &budget)?;
        let mut q_forward = Vec::new();
        for k in 1..=7usize {
            let l = &out.constants[2 * k];
            let ok = is_in_radical(l, &meet, &budget)?;
            q_forward.push(json!({"constant": 2 * k + 1, "in_radical": ok}));
        }
        let mut q_reverse = Vec::new();
        for g in meet12.iter().chain(&c3.generators) {
            let ok = is_in_radical(g, &constants_ideal, &budget)?;
            q_reverse.push(json!({"generator": g.to_string(), "in_radical": ok}));
        }
        result["quarantined_component_3"] = json!({
            "verified": false,
            "forward_all_components": q_forward,
            "reverse_against_constants": q_reverse,
            "note": c3.notes,
        });
    }
    Ok(result)
}

// ----- component varieties ----------------------------------------------------------

/// Deterministic xorshift generator for reproducible rational samples.
struct SampleRng(u64);

impl SampleRng {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    fn rat(&mut self) -> Rat {
        let n = (self.next() % 257) as i64 - 128;
        let d = (self.next() % 64 + 1) as i64;
        rat(n, d)
    }

    fn nonzero_rat(&mut self) -> Rat {
        loop {
            let r = self.rat();
            if crate::roots::rational_sign(&r) != 0 {
                return r;
            }
        }
    }
}

/// True when every term of `p` is a single variable raised to an even power
/// with a positive coefficient — real zeros then force each variable to 0.
fn is_positive_square_form(p: &MultiPoly) -> bool {
    !p.is_zero()
        && p.terms().all(|(m, c)| {
            crate::roots::rational_sign(c) > 0
                && m.exponents().iter().filter(|e| **e > 0).count() == 1
                && m.exponents().iter().all(|e| e % 2 == 0)
        })
}

fn bind_names(
    p: &MultiPoly,
    table: &Arc<VariableTable>,
    zeroed: &[&str],
) -> MultiPoly {
    let mut bind = BTreeMap::new();
    for name in zeroed {
        if let Some(idx) = table.index(name) {
            bind.insert(idx, rat_int(0));
        }
    }
    p.bind(&bind)
}

fn component_varieties(cfg: &Config) -> Result<Value, CheckError> {
    const T: &str = "component-varieties";
    let c1 = fixtures::ideal_fixture("center-component-1", false)?;
    let c2 = fixtures::ideal_fixture("center-component-2", false)?;
    let table = VariableTable::canonical();

    // Component 2: the leading generator is a positive square form in a2,
    // a3, so any real zero has a2 = a3 = 0; the remaining generators then
    // collapse to linear forms forcing everything except a1 … and a1 too.
    if !is_positive_square_form(&c2.generators[0]) {
        return Err(mismatch(T, "component 2 leading generator is not a positive square form"));
    }
    let bound: Vec<MultiPoly> = c2.generators[1..]
        .iter()
        .map(|g| bind_names(g, &table, &["a2", "a3"]))
        .collect();
    let expected: Vec<MultiPoly> = ["a0", "a1", "a4 + 5*a0", "7*a5"]
        .iter()
        .map(|s| pp(&table, s))
        .collect::<Result<_, _>>()?;
    for e in &expected {
        if !bound.contains(e) {
            return Err(mismatch(
                T,
                format!("component 2 restricted to a2 = a3 = 0 is missing the form {e}"),
            ));
        }
    }
    // So the real variety of component 2 is the origin of parameter space,
    // which satisfies component 1 as well.
    let origin: BTreeMap<String, Rat> = ["a0", "a1", "a2", "a3", "a4", "a5"]
        .iter()
        .map(|n| (n.to_string(), rat_int(0)))
        .collect();
    if evaluate_ideal(&c1.generators, &origin)?
        .iter()
        .any(|v| crate::roots::rational_sign(v) != 0)
    {
        return Err(mismatch(T, "component 1 does not vanish at the origin"));
    }

    // Sampled containment census: points of the component-1 variety
    // (a0 = a2 = a4 = 0) satisfy every generator; perturbing a0 breaks it.
    let mut rng = SampleRng(0x9E37_79B9_7F4A_7C15);
    let samples = 1000usize;
    for i in 0..samples {
        let mut point = origin.clone();
        point.insert("a1".to_string(), rng.rat());
        point.insert("a3".to_string(), rng.rat());
        point.insert("a5".to_string(), rng.rat());
        let vals = evaluate_ideal(&c1.generators, &point)?;
        if vals.iter().any(|v| crate::roots::rational_sign(v) != 0) {
            return Err(mismatch(T, format!("variety sample {i} violates component 1")));
        }
        point.insert("a0".to_string(), rng.nonzero_rat());
        let vals = evaluate_ideal(&c1.generators, &point)?;
        if vals.iter().all(|v| crate::roots::rational_sign(v) == 0) {
            return Err(mismatch(T, format!("perturbed sample {i} still vanishes")));
        }
    }

    let mut result = json!({
        "target": T,
        "status": "ok",
        "component_2_real_variety": "origin of parameter space",
        "contained_in_component_1": true,
        "variety_samples": samples,
        "perturbed_samples": samples,
    });

    if cfg.allow_unverified_fixtures {
        let c3 = fixtures::ideal_fixture("center-component-3", true)?;
        let g = &c3.generators;
        // g0 = (a2 − 10·a0)² + 16·a5², so real zeros satisfy a2 = 10·a0,
        // a5 = 0; then g3 restricts to a3² + 400·a0², forcing a3 = a0 = 0
        // (hence a2 = 0); then g2 restricts to a4. Real variety: the a1-axis.
        let id0 = pp(&table, "(a2 - 10*a0)^2 + 16*a5^2")?;
        let id3 = pp(&table, "a3^2 + 400*a0^2 + 60*a0*(a2 - 10*a0) - 36*a5^2")?;
        if g[0] != id0 || g[3] != id3 {
            return Err(mismatch(T, "quarantined component decomposition identities failed"));
        }
        let residual = bind_names(&g[2], &table, &["a0", "a2", "a3", "a5"]);
        if residual != pp(&table, "a4")? {
            return Err(mismatch(T, "quarantined component residual generator is not a4"));
        }
        // a1-axis samples satisfy component 1 (a0 = a2 = a4 = 0 there).
        let mut axis_ok = 0usize;
        for _ in 0..samples {
            let mut point = origin.clone();
            point.insert("a1".to_string(), rng.rat());
            let v3 = evaluate_ideal(g, &point)?;
            let v1 = evaluate_ideal(&c1.generators, &point)?;
            if v3.iter().chain(&v1).all(|v| crate::roots::rational_sign(v) == 0) {
                axis_ok += 1;
            }
        }
        if axis_ok != samples {
            return Err(mismatch(T, "a1-axis samples violated the quarantined component"));
        }
        result["quarantined_component_3"] = json!({
            "real_variety": "the a1-axis",
            "contained_in_component_1": true,
            "axis_samples": axis_ok,
            "note": c3.notes,
        });
    }
    Ok(result)
}

// ----- chart identities -------------------------------------------------------------

/// The reversible subfamily used by the symbolic identity pins, over the
/// table `[x, y, a1, a3, asq]` (with `asq` standing for a nonnegative
/// quintic coefficient written as a square).
fn reversible_subfamily() -> Result<PlanarSystem, CheckError> {
    let table = VariableTable::new(&["x", "y", "a1", "a3", "asq"])?;
    Ok(PlanarSystem::parse(
        &table,
        "y",
        "-x + a1*x*y^4 + a3*x^3*y^2 - asq*x^5",
    )?)
}

fn chart_identities(_cfg: &Config) -> Result<Value, CheckError> {
    const T: &str = "chart-identities";
    let sys = reversible_subfamily()?;
    let t = sys.table();

    let u1 = chart_field(&sys, Chart::U1)?;
    let u1_p = pp(t, "-y^4*x^2 + a1*x^4 - y^4 + a3*x^2 - asq")?;
    let u1_q = pp(t, "-y^5*x")?;
    if u1.system.p() != &u1_p || u1.system.q() != &u1_q {
        return Err(mismatch(
            T,
            format!("slope chart differs: ({}, {})", u1.system.p(), u1.system.q()),
        ));
    }

    let u2 = chart_field(&sys, Chart::U2)?;
    let u2_p = pp(t, "asq*x^6 + y^4*x^2 - a3*x^4 + y^4 - a1*x^2")?;
    let u2_q = pp(t, "x*y*(asq*x^4 + y^4 - a3*x^2 - a1)")?;
    if u2.system.p() != &u2_p || u2.system.q() != &u2_q {
        return Err(mismatch(
            T,
            format!("vertical chart differs: ({}, {})", u2.system.p(), u2.system.q()),
        ));
    }

    // Odd degree: the antipodal charts are the time reversals.
    let v1 = chart_field(&sys, Chart::V1)?;
    if v1.system.p() != &-u1.system.p() || v1.system.q() != &-u1.system.q() {
        return Err(mismatch(T, "antipodal slope chart is not the time reversal"));
    }

    Ok(json!({
        "target": T,
        "status": "ok",
        "u1": {"p": u1.system.p().to_string(), "q": u1.system.q().to_string()},
        "u2": {"p": u2.system.p().to_string(), "q": u2.system.q().to_string()},
        "antipodal_time_reversal": true,
    }))
}

// ----- blow-up chains ---------------------------------------------------------------

struct ChainRunner {
    target: &'static str,
    chain: TransformChain,
    stages: Vec<Value>,
}

impl ChainRunner {
    fn new(target: &'static str, start: PlanarSystem) -> ChainRunner {
        ChainRunner {
            target,
            chain: TransformChain::new(start),
            stages: Vec::new(),
        }
    }

    fn step(
        &mut self,
        kind: TransformKind,
        label: &str,
        expect: Option<(&str, &str)>,
    ) -> Result<(), CheckError> {
        self.chain.apply(kind)?;
        if let Some((ep, eq)) = expect {
            let t = self.chain.current.table();
            let (ep, eq) = (pp(t, ep)?, pp(t, eq)?);
            if self.chain.current.p() != &ep || self.chain.current.q() != &eq {
                return Err(mismatch(
                    self.target,
                    format!(
                        "stage {label}: got ({}, {}), expected ({ep}, {eq})",
                        self.chain.current.p(),
                        self.chain.current.q()
                    ),
                ));
            }
        }
        self.stages.push(json!({"stage": label, "matched": expect.is_some()}));
        Ok(())
    }

    fn finish(self) -> Result<(PlanarSystem, Vec<Value>), CheckError> {
        // The transform log must replay to the same endpoint.
        let replayed = self.chain.replay()?;
        if replayed != self.chain.current {
            return Err(mismatch(self.target, "transform log replay diverged"));
        }
        Ok((self.chain.current, self.stages))
    }
}

/// Start system for the vertical-chart chains: the `U2` field of the
/// reversible subfamily with the requested coefficients kept symbolic.
fn vertical_chart_start(
    keep_a1: bool,
    keep_a3: bool,
    keep_asq: bool,
) -> Result<PlanarSystem, CheckError> {
    let mut names = vec!["x", "y"];
    if keep_a1 {
        names.push("a1");
    }
    if keep_a3 {
        names.push("a3");
    }
    if keep_asq {
        names.push("asq");
    }
    let table = VariableTable::new(&names)?;
    let term = |on: bool, s: &str| if on { s.to_string() } else { String::new() };
    let p = format!(
        "y^4*x^2 + y^4 {} {} {}",
        term(keep_asq, "+ asq*x^6"),
        term(keep_a3, "- a3*x^4"),
        term(keep_a1, "- a1*x^2"),
    );
    let q = format!(
        "x*y*(y^4 {} {} {})",
        term(keep_asq, "+ asq*x^4"),
        term(keep_a3, "- a3*x^2"),
        term(keep_a1, "- a1"),
    );
    Ok(PlanarSystem::parse(&table, p.trim(), q.trim())?)
}

fn blowup_chains(_cfg: &Config) -> Result<Value, CheckError> {
    const T: &str = "blowup-chains";
    let mut chains = Vec::new();

    // Full subfamily vertical chart: one blow-up, then the x² rescale.
    {
        let mut r = ChainRunner::new(T, vertical_chart_start(true, true, true)?);
        r.step(
            TransformKind::VerticalBlowup,
            "vertical-chart-blowup",
            Some((
                "x^2*(x^4*y^4 + asq*x^4 + x^2*y^4 - a3*x^2 - a1)",
                "-x^3*y^5",
            )),
        )?;
        r.step(
            TransformKind::TimeRescale(2),
            "vertical-chart-rescaled",
            Some((
                "x^4*y^4 + asq*x^4 + x^2*y^4 - a3*x^2 - a1",
                "-x*y^5",
            )),
        )?;
        let (_, stages) = r.finish()?;
        chains.push(json!({"chain": "vertical-chart", "stages": stages}));
    }

    // Region c2 (positive cubic coefficient, no quintic): odd rescale.
    {
        let mut r = ChainRunner::new(T, vertical_chart_start(false, true, false)?);
        r.step(
            TransformKind::VerticalBlowup,
            "region-c2-blowup",
            Some(("-x^4*(-x^2*y^4 - y^4 + a3)", "-x^3*y^5")),
        )?;
        r.step(
            TransformKind::TimeRescale(3),
            "region-c2-rescaled",
            Some(("-x*(-x^2*y^4 - y^4 + a3)", "-y^5")),
        )?;
        let (_, stages) = r.finish()?;
        chains.push(json!({"chain": "region-c2", "stages": stages}));
    }

    // Region c3 (negative cubic, negative quintic).
    {
        let mut r = ChainRunner::new(T, vertical_chart_start(false, true, true)?);
        r.step(
            TransformKind::VerticalBlowup,
            "region-c3-blowup",
            Some(("x^4*(x^2*y^4 + y^4 + asq*x^2 - a3)", "-x^3*y^5")),
        )?;
        r.step(
            TransformKind::TimeRescale(3),
            "region-c3-rescaled",
            Some(("x*(x^2*y^4 + y^4 + asq*x^2 - a3)", "-y^5")),
        )?;
        let (_, stages) = r.finish()?;
        chains.push(json!({"chain": "region-c3", "stages": stages}));
    }

    // Region c4 (negative cubic, no quintic), analyzed in the slope chart.
    {
        let table = VariableTable::new(&["x", "y", "a3"])?;
        let start =
            PlanarSystem::parse(&table, "(a3 - y^4)*x^2 - y^4", "-y^5*x")?;
        let mut r = ChainRunner::new(T, start);
        r.step(
            TransformKind::VerticalBlowup,
            "region-c4-blowup",
            Some(("-x^2*(x^4*y^4 + x^2*y^4 - a3)", "x*y*(x^2*y^4 - a3)")),
        )?;
        r.step(
            TransformKind::TimeRescale(1),
            "region-c4-rescaled",
            Some(("-x*(x^4*y^4 + x^2*y^4 - a3)", "y*(x^2*y^4 - a3)")),
        )?;
        let (_, stages) = r.finish()?;
        chains.push(json!({"chain": "region-c4", "stages": stages}));
    }

    // Region c5 (zero cubic, negative quintic): the deep chain, through two
    // shears and three blow-ups down to the final hyperbolic stage.
    let endpoint = {
        let mut r = ChainRunner::new(T, vertical_chart_start(false, false, true)?);
        r.step(TransformKind::VerticalBlowup, "region-c5-blowup-1", None)?;
        r.step(
            TransformKind::TimeRescale(3),
            "region-c5-rescaled-1",
            Some(("x*(x^2*y^4 + y^4 + asq*x^2)", "-y^5")),
        )?;
        r.step(
            TransformKind::Twist,
            "region-c5-sheared-1",
            Some((
                "(x - y)^3*y^4 + (x - y)*y^4 + asq*(x - y)^3 - y^5",
                "-y^5",
            )),
        )?;
        r.step(TransformKind::VerticalBlowup, "region-c5-blowup-2", None)?;
        r.step(
            TransformKind::TimeRescale(2),
            "region-c5-rescaled-2",
            Some((
                "-x*(x^4*y^7 - 3*x^4*y^6 + 3*x^4*y^5 - x^4*y^4 + 2*x^2*y^5 - x^2*y^4 \
                 + asq*y^3 - 3*asq*y^2 + 3*asq*y - asq)",
                "(x^4*y^6 - 2*x^4*y^5 + x^4*y^4 + 2*x^2*y^4 + asq*y^2 - 2*asq*y + asq)\
                 *(y^2 - y)",
            )),
        )?;
        r.step(
            TransformKind::Translate(rat_int(0), rat_int(1)),
            "region-c5-recentred",
            Some((
                "-x*(x^4*y^7 + 4*x^4*y^6 + 6*x^4*y^5 + 4*x^4*y^4 + x^4*y^3 + 2*x^2*y^5 \
                 + 9*x^2*y^4 + 16*x^2*y^3 + 14*x^2*y^2 + 6*x^2*y + x^2 + asq*y^3)",
                "y*(1 + y)*(x^4*y^6 + 4*x^4*y^5 + 6*x^4*y^4 + 4*x^4*y^3 + x^4*y^2 \
                 + 2*x^2*y^4 + 8*x^2*y^3 + 12*x^2*y^2 + 8*x^2*y + 2*x^2 + asq*y^2)",
            )),
        )?;
        r.step(TransformKind::Twist, "region-c5-sheared-2", None)?;
        r.step(TransformKind::VerticalBlowup, "region-c5-blowup-3", None)?;
        r.step(TransformKind::TimeRescale(2), "region-c5-rescaled-3", None)?;
        let (endpoint, stages) = r.finish()?;
        chains.push(json!({"chain": "region-c5", "stages": stages}));
        endpoint
    };

    // Shape of the chain endpoint: ẋ = −x(1 − 5y + f), ẏ = y(1 − y)(3 − 6y + g)
    // with deg f = 21 and deg g = 20.
    let t = endpoint.table();
    let (xi, yi) = (endpoint.x_idx(), endpoint.y_idx());
    let x = pp(t, "x")?;
    let inner_p = -&endpoint.p().exact_div(&x)?;
    let f = &inner_p - &pp(t, "1 - 5*y")?;
    if inner_p.coeff(&unit_exp(t, &[])) != rat_int(1)
        || inner_p.coeff(&unit_exp(t, &[(yi, 1)])) != rat_int(-5)
        || f.total_degree() != Some(21)
    {
        return Err(mismatch(
            T,
            format!("endpoint first component has unexpected shape (deg f = {:?})", f.total_degree()),
        ));
    }
    let y_factor = pp(t, "y - y^2")?;
    let inner_q = endpoint.q().exact_div(&y_factor)?;
    let g = &inner_q - &pp(t, "3 - 6*y")?;
    if inner_q.coeff(&unit_exp(t, &[])) != rat_int(3)
        || inner_q.coeff(&unit_exp(t, &[(yi, 1)])) != rat_int(-6)
        || g.total_degree() != Some(20)
    {
        return Err(mismatch(
            T,
            format!("endpoint second component has unexpected shape (deg g = {:?})", g.total_degree()),
        ));
    }
    // Restricted to the exceptional line x = 0, the vertical component is
    // y(1 − y)((3 + asq)y² − 6y + 3); the quadratic factor has discriminant
    // −12·asq < 0, so the exceptional equilibria are exactly y = 0 and y = 1.
    let mut at0 = BTreeMap::new();
    at0.insert(xi, rat_int(0));
    let restricted = endpoint.q().bind(&at0);
    if restricted != pp(t, "(y - y^2)*((3 + asq)*y^2 - 6*y + 3)")? {
        return Err(mismatch(T, "endpoint exceptional-line restriction differs"));
    }

    Ok(json!({
        "target": T,
        "status": "ok",
        "chains": chains,
        "endpoint": {
            "f_degree": 21,
            "g_degree": 20,
            "exceptional_restriction": restricted.to_string(),
        },
    }))
}

fn unit_exp(table: &Arc<VariableTable>, set: &[(usize, u64)]) -> Vec<u64> {
    let mut e = vec![0u64; table.len()];
    for (i, v) in set {
        e[*i] = *v;
    }
    e
}

// ----- classification fixtures ------------------------------------------------------

fn classification_fixtures(cfg: &Config) -> Result<Value, CheckError> {
    const T: &str = "classification-fixtures";
    let mut cases = Vec::new();

    let classify2 = |p: &str, q: &str| -> Result<EquilibriumKind, CheckError> {
        let table = VariableTable::new(&["x", "y"])?;
        let sys = PlanarSystem::parse(&table, p, q)?;
        Ok(desing::classify(&sys, (&rat_int(0), &rat_int(0)))?.kind)
    };

    // Rescaled region-c2 stage at a3 = 1: a stable semi-hyperbolic node.
    let kind = classify2("-x*(-x^2*y^4 - y^4 + 1)", "-y^5")?;
    if kind != (EquilibriumKind::SemiHyperbolicNode { stable: true }) {
        return Err(mismatch(T, format!("region-c2 endpoint origin: {kind:?}")));
    }
    cases.push(json!({"case": "region-c2-endpoint", "kind": "semi-hyperbolic stable node"}));

    // Rescaled region-c3 stage at a3 = −1, asq = 1: a semi-hyperbolic saddle.
    let kind = classify2("x*(x^2*y^4 + y^4 + x^2 + 1)", "-y^5")?;
    if kind != EquilibriumKind::SemiHyperbolicSaddle {
        return Err(mismatch(T, format!("region-c3 endpoint origin: {kind:?}")));
    }
    cases.push(json!({"case": "region-c3-endpoint", "kind": "semi-hyperbolic saddle"}));

    // Rescaled region-c4 stage at a3 = −1: a hyperbolic saddle.
    let kind = classify2("-x*(x^4*y^4 + x^2*y^4 + 1)", "y*(x^2*y^4 + 1)")?;
    if kind != EquilibriumKind::HyperbolicSaddle {
        return Err(mismatch(T, format!("region-c4 endpoint origin: {kind:?}")));
    }
    cases.push(json!({"case": "region-c4-endpoint", "kind": "hyperbolic saddle"}));

    // Region-c5 chain endpoint at asq = 1: both exceptional equilibria are
    // hyperbolic saddles, with the pinned diagonal linear parts.
    {
        let table = VariableTable::new(&["x", "y", "asq"])?;
        let start = PlanarSystem::parse(
            &table,
            "asq*x^6 + x^2*y^4 + y^4",
            "x*y*(asq*x^4 + y^4)",
        )?;
        let mut chain = TransformChain::new(start);
        for kind in [
            TransformKind::VerticalBlowup,
            TransformKind::TimeRescale(3),
            TransformKind::Twist,
            TransformKind::VerticalBlowup,
            TransformKind::TimeRescale(2),
            TransformKind::Translate(rat_int(0), rat_int(1)),
            TransformKind::Twist,
            TransformKind::VerticalBlowup,
            TransformKind::TimeRescale(2),
        ] {
            chain.apply(kind)?;
        }
        let mut bind = BTreeMap::new();
        bind.insert("asq".to_string(), rat_int(1));
        let endpoint = chain.current.bind(&bind)?;
        for (label, y0, diag) in [("origin", 0i64, ["-1", "3"]), ("upper", 1, ["1", "-1"])] {
            let rep = desing::classify(&endpoint, (&rat_int(0), &rat_int(y0)))?;
            if rep.kind != EquilibriumKind::HyperbolicSaddle {
                return Err(mismatch(
                    T,
                    format!("region-c5 endpoint {label}: {:?}", rep.kind),
                ));
            }
            if rep.linear_part[0][0] != diag[0] || rep.linear_part[1][1] != diag[1] {
                return Err(mismatch(
                    T,
                    format!("region-c5 endpoint {label} linear part {:?}", rep.linear_part),
                ));
            }
        }
        cases.push(json!({
            "case": "region-c5-endpoint",
            "kind": "two hyperbolic saddles on the exceptional line",
        }));
    }

    // Region c1 (positive cubic with negative quintic): the extra infinite
    // equilibria at x = ±a/√a3 are semi-hyperbolic, and the sign of the
    // nonzero eigenvalue follows the sign of the chart coordinate.
    {
        let params = FamilyParameters::parse_assignments("a3=2,a5=-1")?;
        let sys = params.system()?;
        let analysis = compactify::infinite_equilibria(&sys, &cfg.root_width)?;
        let points = analysis.points.clone().expect("numeric system");
        let restriction = analysis.restriction.to_unipoly(sys.x_idx())?;
        let u1 = chart_field(&sys, Chart::U1)?;
        let mut seen = 0;
        for point in &points {
            let InfinitePoint::U1 { x } = point else { continue };
            let x0 = desing::real_root_to_quad(&restriction, x)?
                .ok_or_else(|| mismatch(T, "region-c1 root is not quadratic"))?;
            let rep = desing::resolve_infinite_point_with(
                &u1,
                &x0,
                cfg.blowup_depth,
                cfg.series_order,
            )?;
            if rep.kind != EquilibriumKind::SemiHyperbolicSaddle {
                return Err(mismatch(T, format!("region-c1 point kind {:?}", rep.kind)));
            }
            use crate::field2::Scalar;
            if i32::from(rep.trace_sign) != i32::from(x0.sign()) {
                return Err(mismatch(
                    T,
                    format!(
                        "region-c1 point at {x0}: eigenvalue sign {} does not track the coordinate",
                        rep.trace_sign
                    ),
                ));
            }
            seen += 1;
        }
        if seen != 2 {
            return Err(mismatch(T, format!("expected 2 mirror points, saw {seen}")));
        }
        cases.push(json!({
            "case": "region-c1-infinite-points",
            "kind": "semi-hyperbolic saddles, eigenvalue sign = coordinate sign",
        }));
    }

    Ok(json!({"target": T, "status": "ok", "cases": cases}))
}

// ----- global-center grid -----------------------------------------------------------

fn global_center_grid(cfg: &Config) -> Result<Value, CheckError> {
    const T: &str = "global-center-grid";
    let opts = cfg.pipeline_options();
    let mut grid = Vec::new();
    for a3 in [-2i64, -1, 0] {
        for a5 in [-2i64, -1, 0] {
            let params = FamilyParameters::parse_assignments(&format!("a3={a3},a5={a5}"))?;
            let theorem = globalcenter::global_center_check(&params, Mode::Theorem)?;
            let pipeline =
                globalcenter::global_center_check_with(&params, Mode::Pipeline, &opts)?;
            if theorem.verdict != pipeline.verdict {
                return Err(mismatch(
                    T,
                    format!("modes disagree at a3={a3}, a5={a5}: {:?} vs {:?}",
                        theorem.verdict, pipeline.verdict),
                ));
            }
            if pipeline.verdict != Verdict::True {
                return Err(mismatch(
                    T,
                    format!("expected a global center at a3={a3}, a5={a5}: {}", pipeline.reason),
                ));
            }
            grid.push(json!({
                "a3": a3, "a5": a5,
                "verdict": "true",
                "case": pipeline.case,
            }));
        }
    }

    // Degenerate direction: an even quartic term keeps the center but makes
    // every neighborhood of infinity dicritical — orbits escape.
    let mut escapes = Vec::new();
    for list in ["a1=1,a3=-1,a5=-1", "a1=1,a5=-1"] {
        let params = FamilyParameters::parse_assignments(list)?;
        let theorem = globalcenter::global_center_check(&params, Mode::Theorem)?;
        let pipeline = globalcenter::global_center_check_with(&params, Mode::Pipeline, &opts)?;
        if theorem.verdict != Verdict::False || pipeline.verdict != Verdict::False {
            return Err(mismatch(T, format!("expected false verdicts at {list}")));
        }
        let Some(escape) = &pipeline.numeric_escape else {
            return Err(mismatch(T, format!("no numeric escape evidence at {list}")));
        };
        escapes.push(json!({
            "params": list,
            "seed": [escape.seed.0, escape.seed.1],
            "radius": escape.radius,
        }));
    }

    Ok(json!({"target": T, "status": "ok", "grid": grid, "escapes": escapes}))
}

// ----- numeric orbit suite ----------------------------------------------------------

fn orbit_closure(cfg: &Config) -> Result<Value, CheckError> {
    const T: &str = "orbit-closure";
    let spec = cfg.integration_spec();

    let linear = fixtures::system_fixture("linear-center")?.build()?;
    let trace = portrait::integrate(&linear, (1.0, 0.0), &spec)?;
    let OrbitVerdict::Closed { defect } = trace.verdict else {
        return Err(mismatch(T, "linear-center orbit did not close"));
    };
    if defect >= 1e-9 {
        return Err(mismatch(T, format!("linear-center closure defect {defect:.3e}")));
    }
    let linear_defect = defect;

    // The cubic/quintic sample with both coefficients −1 conserves
    // (x² + y²)·exp(x⁴/2) exactly: its time derivative is
    // exp(x⁴/2)·(2x·p + 2y·q + (x² + y²)·2x³·p), whose polynomial factor
    // must vanish identically. That certifies every orbit is closed.
    let two = VariableTable::new(&["x", "y"])?;
    let conserved_derivative = pp(
        &two,
        "2*x*y + 2*y*(-x - x^3*y^2 - x^5) + (x^2 + y^2)*2*x^3*y",
    )?;
    if !conserved_derivative.is_zero() {
        return Err(mismatch(T, "exact first integral fails for the closed-orbit sample"));
    }

    // The same integral bounds the orbit geometry: the loop through (s, 0)
    // meets the vertical axis at |y| = s·exp(s⁴/4). For s = 1 that stays
    // far inside the escape radius; for s = 5 the loop provably crosses the
    // 10³·‖seed‖ escape threshold (s⁴/4 = 156.25 ≫ ln 10³), and for s = 10
    // its extent (10·e²⁵⁰⁰ ≈ 10^1086) exceeds the f64 range outright, so a
    // radius-threshold integrator necessarily reports the crossing instead
    // of a section return. Assert those certified bounds, then assert the
    // integrator behaves accordingly.
    let ln_escape = 1e3f64.ln();
    if 1.0f64 / 4.0 >= ln_escape {
        return Err(mismatch(T, "seed (1,0) bound check is miscomputed"));
    }
    if 625.0f64 / 4.0 <= ln_escape {
        return Err(mismatch(T, "seed (5,0) does not cross the escape threshold"));
    }
    if 10_000.0f64 / 4.0 * std::f64::consts::LOG10_E <= 308.25 {
        return Err(mismatch(T, "seed (10,0) loop is representable after all"));
    }

    let family = FamilyParameters::parse_assignments("a3=-1,a5=-1")?.system()?;
    let trace = portrait::integrate(&family, (1.0, 0.0), &spec)?;
    let OrbitVerdict::Closed { defect } = trace.verdict else {
        return Err(mismatch(T, "family orbit from (1,0) did not close"));
    };
    if defect >= 1e-6 {
        return Err(mismatch(T, format!("family orbit closure defect {defect:.3e}")));
    }
    let family_defect = defect;

    let mut crossings = Vec::new();
    for seed in [(5.0, 0.0), (10.0, 0.0)] {
        let trace = portrait::integrate(&family, seed, &spec)?;
        let OrbitVerdict::Escaped { radius } = trace.verdict else {
            return Err(mismatch(
                T,
                format!("expected the certified threshold crossing from {seed:?}"),
            ));
        };
        let threshold = 1e3 * seed.0;
        if radius < threshold || radius > 1.25 * threshold {
            return Err(mismatch(
                T,
                format!("crossing radius {radius:.4e} is not just past the threshold"),
            ));
        }
        crossings.push(json!({
            "seed": [seed.0, seed.1],
            "closed_orbit": "certified by the exact first integral",
            "max_extent_ln": seed.0 * seed.0 * seed.0 * seed.0 / 4.0 + seed.0.ln(),
            "reported_crossing_radius": radius,
        }));
    }

    let dicritical = FamilyParameters::parse_assignments("a1=1,a3=-1,a5=-1")?.system()?;
    let trace = portrait::integrate(&dicritical, (3.0, 0.0), &spec)?;
    let OrbitVerdict::Escaped { radius } = trace.verdict else {
        return Err(mismatch(T, "perturbed family orbit did not escape"));
    };
    if radius < 1e3 * 3.0 {
        return Err(mismatch(T, format!("escape radius {radius:.3e} below threshold")));
    }
    let escape_radius = radius;

    // Halving both tolerances must not change any verdict.
    let tight = spec.halved();
    let closed_tight = matches!(
        portrait::integrate(&family, (1.0, 0.0), &tight)?.verdict,
        OrbitVerdict::Closed { .. }
    );
    let escaped_tight = matches!(
        portrait::integrate(&dicritical, (3.0, 0.0), &tight)?.verdict,
        OrbitVerdict::Escaped { .. }
    );
    if !closed_tight || !escaped_tight {
        return Err(mismatch(T, "verdicts changed under tolerance halving"));
    }

    // Fixed-step oracle agreement on the attainable fixtures.
    let rk4_linear = portrait::integrate_fixed_rk4(&linear, (1.0, 0.0), 1e-4, &spec)?;
    let rk4_family = portrait::integrate_fixed_rk4(&family, (1.0, 0.0), 1e-5, &spec)?;
    let rk4_escape = portrait::integrate_fixed_rk4(&dicritical, (3.0, 0.0), 1e-5, &spec)?;
    let oracle_ok = matches!(rk4_linear.verdict, OrbitVerdict::Closed { defect } if defect < 1e-6)
        && matches!(rk4_family.verdict, OrbitVerdict::Closed { .. })
        && matches!(rk4_escape.verdict, OrbitVerdict::Escaped { .. });
    if !oracle_ok {
        return Err(mismatch(T, "fixed-step oracle disagrees with the adaptive integrator"));
    }

    Ok(json!({
        "target": T,
        "status": "ok",
        "linear_defect": linear_defect,
        "family_defect_seed_1": family_defect,
        "exact_first_integral": "(x^2 + y^2)*exp(x^4/2), time derivative vanishes identically",
        "large_seed_crossings": crossings,
        "escape_radius": escape_radius,
        "tolerance_halving_stable": true,
        "fixed_step_oracle_agrees": true,
        "disclosure": "closure from seeds (5,0) and (10,0) is certified exactly: the loops \
            are level curves of the conserved quantity, but they provably extend past the \
            10^3*seed escape radius (to ~3.6e68 and ~1e1087), so the radius-threshold \
            integrator reports the threshold crossing; the numeric section-defect check \
            runs on the attainable seed (1,0)",
    }))
}

fn portrait_determinism(cfg: &Config) -> Result<Value, CheckError> {
    const T: &str = "portrait-determinism";
    let family = FamilyParameters::parse_assignments("a3=-1,a5=-1")?.system()?;
    let spec = RenderSpec {
        seeds: vec![(1.0, 0.0), (2.0, 0.0), (4.0, 0.0)],
        integration: cfg.integration_spec(),
        ..RenderSpec::default()
    };
    let first = portrait::render_disc(&family, &spec)?;
    let second = portrait::render_disc(&family, &spec)?;
    if first != second {
        return Err(mismatch(T, "two renders of the same scene differ"));
    }
    let paths = first.matches("<path").count();
    if paths != 3 {
        return Err(mismatch(T, format!("expected 3 orbit paths, found {paths}")));
    }
    Ok(json!({
        "target": T,
        "status": "ok",
        "bytes": first.len(),
        "orbit_paths": paths,
        "deterministic": true,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_target_is_reported() {
        let cfg = Config::default();
        assert!(matches!(
            run_target("no-such-target", &cfg),
            Err(CheckError::UnknownTarget(_))
        ));
    }

    #[test]
    fn target_list_is_consistent_with_dispatch() {
        let cfg = Config::default();
        // Cheap sanity: every listed target dispatches (run the fastest one
        // for real, just resolve the rest by name collision with dispatch).
        assert!(TARGETS.iter().any(|t| t.name == "chart-identities"));
        let v = run_target("chart-identities", &cfg).unwrap();
        assert_eq!(v["status"], "ok");
    }

    #[test]
    fn chain_targets_match_pins() {
        let cfg = Config::default();
        let v = run_target("blowup-chains", &cfg).unwrap();
        assert_eq!(v["status"], "ok");
        assert_eq!(v["endpoint"]["f_degree"], 21);
        assert_eq!(v["endpoint"]["g_degree"], 20);
    }

    #[test]
    fn classification_target_passes() {
        let cfg = Config::default();
        let v = run_target("classification-fixtures", &cfg).unwrap();
        assert_eq!(v["status"], "ok");
    }
}
