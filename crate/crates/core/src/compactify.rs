//! Extension of a polynomial vector field to the Poincaré disc: the field in
//! the four local charts covering the circle at infinity, and the location of
//! the equilibria on that circle.
//!
//! For a field `(P, Q)` of degree `n`, chart `U1` covers the directions with
//! positive first component. Its local coordinates `(x, y)` relate to the
//! plane by `x = Y/X`, `y = 1/X`, so the circle at infinity is `{y = 0}` and
//! the chart field is polynomial after clearing denominators with `y^n`
//! (first component) and `y^{n+1}` (second). Chart `U2` covers the directions
//! with positive second component via `x = X/Y`, `y = 1/Y`. Charts `V1`, `V2`
//! cover the antipodal half-circles; their fields equal the corresponding
//! `U`-chart fields multiplied by `(−1)^n`.
//!
//! The circle at infinity is invariant: every chart field has second
//! component divisible by `y`. Equilibria at infinity therefore appear as
//! real roots of the `U1` field's first component restricted to `y = 0`
//! (each root covering an antipodal pair of directions), plus possibly the
//! origin of `U2` (the vertical direction pair).

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{Monomial, MultiPoly, PolyError, Rat};
use crate::roots::{self, RealRoot, RootError};
use crate::system::{PlanarSystem, SystemError};

/// Errors from chart construction or infinite-equilibrium location.
#[derive(Debug, Error)]
pub enum CompactifyError {
    /// Chart fields are defined for fields of positive degree only.
    #[error("system must have degree >= 1 in the phase variables")]
    DegreeZero,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    System(#[from] SystemError),
    #[error(transparent)]
    Root(#[from] RootError),
}

/// One of the four local charts covering the circle at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Chart {
    U1,
    U2,
    V1,
    V2,
}

impl Chart {
    /// Parse a chart name as used on the command line.
    pub fn parse(name: &str) -> Option<Chart> {
        match name {
            "U1" | "u1" => Some(Chart::U1),
            "U2" | "u2" => Some(Chart::U2),
            "V1" | "v1" => Some(Chart::V1),
            "V2" | "v2" => Some(Chart::V2),
            _ => None,
        }
    }
}

impl std::fmt::Display for Chart {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Chart::U1 => "U1",
            Chart::U2 => "U2",
            Chart::V1 => "V1",
            Chart::V2 => "V2",
        };
        f.write_str(s)
    }
}

/// A vector field expressed in one local chart of the disc.
#[derive(Debug, Clone)]
pub struct ChartField {
    pub chart: Chart,
    /// The chart field; its variables `x`, `y` are the chart coordinates and
    /// the circle at infinity is `{y = 0}`.
    pub system: PlanarSystem,
    /// Degree of the source field (the `n` used to clear denominators).
    pub degree: u64,
}

/// Monomial-exponent image of `y^n · F(1/y, x/y)` (`swap = true`) or
/// `y^n · F(x/y, 1/y)` (`swap = false`); total for `F` of degree ≤ `n`.
fn infinity_map(
    f: &MultiPoly,
    n: u64,
    xi: usize,
    yi: usize,
    swap: bool,
) -> MultiPoly {
    let table = f.table().clone();
    let mut out = MultiPoly::zero(&table);
    for (mono, c) in f.terms() {
        let a = mono.exponents()[xi];
        let b = mono.exponents()[yi];
        debug_assert!(a + b <= n, "degree bound violated in infinity_map");
        let mut exps = mono.exponents().to_vec();
        exps[xi] = if swap { b } else { a };
        exps[yi] = n - a - b;
        out.add_term(Monomial(exps), c.clone());
    }
    out
}

/// The compactified field in the requested chart.
///
/// `U1 = (y^n[Q − x·P](1/y, x/y), −y^{n+1}·P(1/y, x/y))`,
/// `U2 = (y^n[P − x·Q](x/y, 1/y), −y^{n+1}·Q(x/y, 1/y))`, and the `V`-charts
/// are the matching `U`-chart fields times `(−1)^n`.
pub fn chart_field(
    sys: &PlanarSystem,
    chart: Chart,
) -> Result<ChartField, CompactifyError> {
    let n = match sys.degree() {
        Some(n) if n >= 1 => n,
        _ => return Err(CompactifyError::DegreeZero),
    };
    let table = sys.table().clone();
    let x = MultiPoly::var(&table, "x")?;
    let y = MultiPoly::var(&table, "y")?;
    let xi = sys.x_idx();
    let yi = sys.y_idx();
    let swap = matches!(chart, Chart::U1 | Chart::V1);
    let (first, second) = match chart {
        Chart::U1 | Chart::V1 => (sys.q(), sys.p()),
        Chart::U2 | Chart::V2 => (sys.p(), sys.q()),
    };
    let tf = infinity_map(first, n, xi, yi, swap);
    let ts = infinity_map(second, n, xi, yi, swap);
    let mut fx = &tf - &(&x * &ts);
    let mut fy = -&(&y * &ts);
    if matches!(chart, Chart::V1 | Chart::V2) && n % 2 == 1 {
        fx = -&fx;
        fy = -&fy;
    }
    Ok(ChartField {
        chart,
        system: PlanarSystem::new(fx, fy)?,
        degree: n,
    })
}

/// An equilibrium on the circle at infinity, up to the antipodal
/// identification (each listed point also represents its mirror in the
/// matching `V`-chart).
#[derive(Debug, Clone)]
pub enum InfinitePoint {
    /// `(x, 0)` in chart `U1`: the direction pair with slope `x`.
    U1 { x: RealRoot },
    /// The origin of chart `U2`: the vertical direction pair.
    U2Origin,
}

/// Outcome of locating the equilibria at infinity.
#[derive(Debug, Clone)]
pub struct InfinityAnalysis {
    /// Degree of the source field.
    pub degree: u64,
    /// First component of the `U1` chart field restricted to `y = 0`; its
    /// real roots are the non-vertical equilibrium directions.
    pub restriction: MultiPoly,
    /// True when the origin of `U2` is an equilibrium of the `U2` field.
    pub u2_origin_equilibrium: bool,
    /// True when the whole circle at infinity consists of equilibria (the
    /// restriction vanishes identically). The sector-based global-center
    /// test does not apply in this case.
    pub line_of_equilibria: bool,
    /// Isolated equilibria; `None` when the restriction still contains free
    /// parameters (symbolic systems) or when the circle is a line of
    /// equilibria.
    pub points: Option<Vec<InfinitePoint>>,
}

/// Locate the equilibria on the circle at infinity.
///
/// For parameter-free systems the non-vertical equilibria are isolated by
/// exact real-root isolation on the `U1` restriction; intervals are refined
/// below `max_width`. For symbolic systems the restriction polynomial and
/// the vertical-direction test are still computed, but no roots are
/// isolated.
pub fn infinite_equilibria(
    sys: &PlanarSystem,
    max_width: &Rat,
) -> Result<InfinityAnalysis, CompactifyError> {
    let u1 = chart_field(sys, Chart::U1)?;
    let n = u1.degree;
    let table = sys.table().clone();
    let yi = sys.y_idx();
    let xi = sys.x_idx();

    // Restrict the first U1 component to the circle y = 0.
    let mut at_infinity = std::collections::BTreeMap::new();
    at_infinity.insert(yi, Rat::zero());
    let restriction = u1.system.p().bind(&at_infinity);

    // The U2 origin is an equilibrium exactly when the coefficient of y^n in
    // P vanishes (the first U2 component at the origin; the second vanishes
    // there identically).
    let mut yn = vec![0u64; table.len()];
    yn[yi] = n;
    let u2_origin_equilibrium = sys.p().coeff(&yn).is_zero();

    let line_of_equilibria = restriction.is_zero() && u2_origin_equilibrium;

    let points = if line_of_equilibria {
        None
    } else if restriction.uses_only(&[xi]) {
        let uni = restriction.to_unipoly(xi)?;
        let mut pts: Vec<InfinitePoint> = Vec::new();
        if !roots::is_zero(&uni) {
            for r in roots::real_roots(&uni, max_width)? {
                pts.push(InfinitePoint::U1 { x: r });
            }
        }
        if u2_origin_equilibrium {
            pts.push(InfinitePoint::U2Origin);
        }
        Some(pts)
    } else {
        None
    };

    Ok(InfinityAnalysis {
        degree: n,
        restriction,
        u2_origin_equilibrium,
        line_of_equilibria,
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat_int;
    use crate::vars::VariableTable;
    use std::collections::BTreeMap;

    fn family() -> PlanarSystem {
        let t = VariableTable::canonical();
        PlanarSystem::parse(
            &t,
            "y",
            "-x + a0*y^5 + a1*x*y^4 + a2*x^2*y^3 + a3*x^3*y^2 + a4*x^4*y + a5*x^5",
        )
        .unwrap()
    }

    fn bound_family(vals: &[(&str, i64)]) -> PlanarSystem {
        let mut m = BTreeMap::new();
        for name in ["a0", "a1", "a2", "a3", "a4", "a5"] {
            m.insert(name.to_string(), rat_int(0));
        }
        for (name, v) in vals {
            m.insert(name.to_string(), rat_int(*v));
        }
        family().bind(&m).unwrap()
    }

    #[test]
    fn clockwise_linear_center_charts() {
        let t = VariableTable::new(&["x", "y"]).unwrap();
        let sys = PlanarSystem::parse(&t, "y", "-x").unwrap();
        let u1 = chart_field(&sys, Chart::U1).unwrap();
        assert_eq!(
            u1.system.p(),
            &crate::parse::parse_poly(&t, "-1 - x^2").unwrap()
        );
        assert_eq!(
            u1.system.q(),
            &crate::parse::parse_poly(&t, "-x*y").unwrap()
        );
        // Odd degree: the V-chart field is the negated U-chart field.
        let v1 = chart_field(&sys, Chart::V1).unwrap();
        assert_eq!(v1.system.p(), &-u1.system.p());
        assert_eq!(v1.system.q(), &-u1.system.q());
        // No equilibria at infinity: -1 - x^2 has no real roots.
        let inf = infinite_equilibria(&sys, &crate::poly::rat(1, 1000)).unwrap();
        assert!(!inf.line_of_equilibria);
        assert!(!inf.u2_origin_equilibrium);
        assert_eq!(inf.points.as_deref().map(<[_]>::len), Some(0));
    }

    #[test]
    fn family_u1_chart_matches_display() {
        // Quintic family with a0 = a2 = a4 = 0 left symbolic in a1, a3, a5.
        let t = VariableTable::canonical();
        let mut m = BTreeMap::new();
        for name in ["a0", "a2", "a4"] {
            m.insert(name.to_string(), rat_int(0));
        }
        let sys = family().bind(&m).unwrap();
        let u1 = chart_field(&sys, Chart::U1).unwrap();
        let want_p =
            crate::parse::parse_poly(&t, "-x^2*y^4 + a1*x^4 - y^4 + a3*x^2 + a5")
                .unwrap();
        let want_q = crate::parse::parse_poly(&t, "-x*y^5").unwrap();
        assert_eq!(u1.system.p(), &want_p);
        assert_eq!(u1.system.q(), &want_q);
    }

    #[test]
    fn family_u2_chart_matches_display() {
        let t = VariableTable::canonical();
        let mut m = BTreeMap::new();
        for name in ["a0", "a2", "a4"] {
            m.insert(name.to_string(), rat_int(0));
        }
        let sys = family().bind(&m).unwrap();
        let u2 = chart_field(&sys, Chart::U2).unwrap();
        let want_p = crate::parse::parse_poly(
            &t,
            "-a5*x^6 + x^2*y^4 - a3*x^4 + y^4 - a1*x^2",
        )
        .unwrap();
        let want_q = crate::parse::parse_poly(
            &t,
            "-a5*x^5*y + x*y^5 - a3*x^3*y - a1*x*y",
        )
        .unwrap();
        assert_eq!(u2.system.p(), &want_p);
        assert_eq!(u2.system.q(), &want_q);
    }

    #[test]
    fn chart_overlap_consistency() {
        // On the overlap of U1 and U2 the fields agree up to the coordinate
        // change (x, y) -> (1/x, y/x) and a positive time factor:
        //   x^{n+1} · U2_x(1/x, y/x) = −U1_x(x, y)
        //   x^{n+1} · U2_y(1/x, y/x) = x·U1_y(x, y) − y·U1_x(x, y)
        let sys = family();
        let n = sys.degree().unwrap();
        let u1 = chart_field(&sys, Chart::U1).unwrap();
        let u2 = chart_field(&sys, Chart::U2).unwrap();
        // w[F] := x^{n+1}·F(1/x, y/x): exponent map (a, b) -> (n+1−a−b, b).
        let table = sys.table().clone();
        let xi = table.require("x").unwrap();
        let yi = table.require("y").unwrap();
        let w = |f: &MultiPoly| {
            let mut out = MultiPoly::zero(&table);
            for (mono, c) in f.terms() {
                let a = mono.exponents()[xi];
                let b = mono.exponents()[yi];
                let mut exps = mono.exponents().to_vec();
                exps[xi] = n + 1 - a - b;
                exps[yi] = b;
                out.add_term(Monomial(exps), c.clone());
            }
            out
        };
        let x = MultiPoly::var(&table, "x").unwrap();
        let y = MultiPoly::var(&table, "y").unwrap();
        assert_eq!(w(u2.system.p()), -u1.system.p());
        assert_eq!(
            w(u2.system.q()),
            &(&x * u1.system.q()) - &(&y * u1.system.p())
        );
    }

    #[test]
    fn chart_degree_bound() {
        let sys = family();
        let n = sys.degree().unwrap();
        for chart in [Chart::U1, Chart::U2, Chart::V1, Chart::V2] {
            let cf = chart_field(&sys, chart).unwrap();
            assert!(cf.system.degree().unwrap() <= n + 1);
        }
    }

    #[test]
    fn family_infinite_equilibria_instance() {
        // a3 = 4, a5 = -4: non-vertical directions from 4x^2 - 4, i.e. ±1,
        // plus the vertical pair.
        let sys = bound_family(&[("a3", 4), ("a5", -4)]);
        let inf = infinite_equilibria(&sys, &crate::poly::rat(1, 1_000_000)).unwrap();
        assert!(!inf.line_of_equilibria);
        assert!(inf.u2_origin_equilibrium);
        let pts = inf.points.unwrap();
        let mut slopes = Vec::new();
        let mut vertical = 0;
        for p in &pts {
            match p {
                InfinitePoint::U1 { x } => slopes.push(x.loc.witness()),
                InfinitePoint::U2Origin => vertical += 1,
            }
        }
        assert_eq!(vertical, 1);
        assert_eq!(slopes, vec![rat_int(-1), rat_int(1)]);
    }

    #[test]
    fn family_no_u1_equilibria_when_a3_negative() {
        // a3 < 0, a5 < 0: the restriction a3 x^2 + a5 has no real roots.
        let sys = bound_family(&[("a3", -1), ("a5", -1)]);
        let inf = infinite_equilibria(&sys, &crate::poly::rat(1, 1_000_000)).unwrap();
        let pts = inf.points.unwrap();
        assert_eq!(pts.len(), 1);
        assert!(matches!(pts[0], InfinitePoint::U2Origin));
    }

    #[test]
    fn degree_zero_rejected() {
        let t = VariableTable::new(&["x", "y"]).unwrap();
        let sys = PlanarSystem::parse(&t, "1", "2").unwrap();
        assert!(matches!(
            chart_field(&sys, Chart::U1),
            Err(CompactifyError::DegreeZero)
        ));
    }

    #[test]
    fn radial_field_gives_line_of_equilibria() {
        // ẋ = x, ẏ = y: every direction at infinity is an equilibrium.
        let t = VariableTable::new(&["x", "y"]).unwrap();
        let sys = PlanarSystem::parse(&t, "x", "y").unwrap();
        let inf = infinite_equilibria(&sys, &crate::poly::rat(1, 1000)).unwrap();
        assert!(inf.line_of_equilibria);
        assert!(inf.points.is_none());
    }

    #[test]
    fn symbolic_restriction_reported_without_points() {
        let inf = infinite_equilibria(&family(), &crate::poly::rat(1, 1000)).unwrap();
        assert!(inf.points.is_none());
        assert!(!inf.line_of_equilibria);
        let t = VariableTable::canonical();
        let want = crate::parse::parse_poly(
            &t,
            "a0*x^5 + a1*x^4 + a2*x^3 + a3*x^2 + a4*x + a5",
        )
        .unwrap();
        assert_eq!(inf.restriction, want);
    }
}
