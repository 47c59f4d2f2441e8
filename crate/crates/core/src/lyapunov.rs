//! Lyapunov constants of a monodromic equilibrium at the origin.
//!
//! For a system whose linear part is the rotation `(-y, x)` (systems with
//! linear part `(y, -x)` are first time-reversed), the engine builds a
//! truncated formal first integral
//!
//! ```text
//! H = (x^2 + y^2)/2 + H_3 + H_4 + ...
//! ```
//!
//! degree by degree so that the derivative of `H` along the flow is a
//! combination of even powers of `x^2 + y^2`:
//!
//! ```text
//! dH/dt = L_1 (x^2+y^2) + L_2 (x^2+y^2)^2 + L_3 (x^2+y^2)^3 + ...
//! ```
//!
//! The `L_k` — polynomials in any symbolic parameters of the field — are
//! the Lyapunov constants. `L_1` vanishes identically for a rotation
//! linear part; the first nonzero `L_k` determines the stability and the
//! order of a weak focus, and the origin is a center iff all constants
//! vanish.
//!
//! Each homogeneous degree is solved by two tridiagonal coefficient
//! sweeps in O(degree) polynomial operations: the rotation operator
//! couples the coefficient of `x^{i-j} y^j` only to its neighbours
//! `j ± 2`, splitting the unknowns into two parity-interleaved chains.
//! At even degrees the odd chain carries the new constant symbolically
//! and fixes it by the final consistency equation; the even chain is
//! pinned by setting the coefficient of `x^i` to zero, which makes the
//! integral (and hence every constant) uniquely determined.

use std::collections::BTreeMap;

use num_integer::binomial;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::ideals::{self, GbBudget, IdealError, MonomialOrder, OrderKind};
use crate::poly::{MultiPoly, PolyError, Rat, rat_int};
use crate::system::PlanarSystem;

#[derive(Debug, Error)]
pub enum LyapunovError {
    #[error("origin is not a rotation point: {0}")]
    NotRotation(String),
    #[error("internal solver inconsistency: {0}")]
    Internal(String),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Truncated formal first integral, one homogeneous component per degree.
#[derive(Debug, Clone)]
pub struct FormalIntegral {
    /// Homogeneous components keyed by phase-variable degree (from 2 up).
    pub components: BTreeMap<u64, MultiPoly>,
}

impl FormalIntegral {
    /// The full truncated integral (sum of all components).
    pub fn truncated(&self) -> MultiPoly {
        let mut acc = None;
        for c in self.components.values() {
            acc = Some(match acc {
                None => c.clone(),
                Some(a) => &a + c,
            });
        }
        acc.expect("integral has at least the quadratic component")
    }

    /// Highest computed degree.
    pub fn max_degree(&self) -> u64 {
        *self.components.keys().next_back().expect("nonempty")
    }
}

/// Result of a Lyapunov computation.
#[derive(Debug, Clone)]
pub struct LyapunovOutput {
    /// `constants[k-1]` is `L_k`; `L_1` is identically zero.
    pub constants: Vec<MultiPoly>,
    pub integral: FormalIntegral,
    /// The normalized field actually integrated (time-reversed when the
    /// input linear part was `(y, -x)`).
    pub normalized: PlanarSystem,
    pub time_reversed: bool,
    pub reduced: bool,
}

/// Symmetry axes detected by [`reversibility_test`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    XAxis,
    YAxis,
}

/// The monomial order used when reducing constants modulo earlier ones:
/// graded reverse-lex with the first family parameter most significant,
/// so normal forms eliminate it first.
pub fn display_reduction_order(table: &crate::vars::VariableTable) -> MonomialOrder {
    let wanted = ["a0", "a1", "a2", "a3", "a4", "a5"];
    let present: Vec<&str> = wanted
        .iter()
        .copied()
        .filter(|n| table.index(n).is_some())
        .collect();
    MonomialOrder::with_leading(OrderKind::DegRevLex, table, &present)
        .expect("valid priority")
}

/// Normalizes the linear part to the rotation `(-y, x)`.
///
/// Accepts exactly the linear parts `(-y, x)` (kept) and `(y, -x)`
/// (time-reversed to the first form, which reverses orbit orientation but
/// preserves the center/focus dichotomy and every vanishing statement).
pub fn normalize_rotation(sys: &PlanarSystem) -> Result<(PlanarSystem, bool), LyapunovError> {
    let table = sys.table();
    let x = MultiPoly::var_idx(table, sys.x_idx());
    let y = MultiPoly::var_idx(table, sys.y_idx());
    let c0 = sys.homogeneous_component(0);
    if !c0.0.is_zero() || !c0.1.is_zero() {
        return Err(LyapunovError::NotRotation(
            "the origin must be an equilibrium (no constant terms)".to_string(),
        ));
    }
    let (p1, q1) = sys.homogeneous_component(1);
    if p1 == -&y && q1 == x {
        Ok((sys.clone(), false))
    } else if p1 == y && q1 == -&x {
        Ok((sys.time_reversed(), true))
    } else {
        Err(LyapunovError::NotRotation(format!(
            "linear part must be (-y, x) or (y, -x); found ({p1}, {q1})"
        )))
    }
}

/// Incremental degree-by-degree solver.
struct Engine {
    sys: PlanarSystem,
    /// Nonzero nonlinear homogeneous components `(k, P_k, Q_k)`, `k >= 2`.
    nonlinear: Vec<(u64, MultiPoly, MultiPoly)>,
    h: BTreeMap<u64, MultiPoly>,
    /// `constants[k-1] = L_k`.
    constants: Vec<MultiPoly>,
    next_degree: u64,
}

impl Engine {
    fn new(normalized: PlanarSystem) -> Self {
        let table = normalized.table().clone();
        let x = MultiPoly::var_idx(&table, normalized.x_idx());
        let y = MultiPoly::var_idx(&table, normalized.y_idx());
        let deg = normalized.degree().unwrap_or(1);
        let mut nonlinear = Vec::new();
        for k in 2..=deg {
            let (pk, qk) = normalized.homogeneous_component(k);
            if !pk.is_zero() || !qk.is_zero() {
                nonlinear.push((k, pk, qk));
            }
        }
        let half = MultiPoly::constant(&table, Rat::new(BigInt::one(), BigInt::from(2)));
        let h2 = &(&(&x * &x) + &(&y * &y)) * &half;
        let mut h = BTreeMap::new();
        h.insert(2, h2);
        Engine {
            sys: normalized,
            nonlinear,
            h,
            // L_1 vanishes identically for a rotation linear part.
            constants: vec![MultiPoly::zero(&table)],
            next_degree: 3,
        }
    }

    /// Source term of degree `i`: the homogeneous degree-`i` part of
    /// `P_nl * dH/dx + Q_nl * dH/dy` over already-known components.
    fn source(&self, i: u64) -> MultiPoly {
        let table = self.sys.table();
        let (xi, yi) = (self.sys.x_idx(), self.sys.y_idx());
        let mut s = MultiPoly::zero(table);
        for (k, pk, qk) in &self.nonlinear {
            if *k >= i {
                continue;
            }
            // Degree of the H component that pairs with degree k: the
            // product P_k * dH_j has degree k + j - 1 = i.
            let j = i + 1 - k;
            debug_assert!((2..i).contains(&j));
            if let Some(hj) = self.h.get(&j) {
                if !pk.is_zero() {
                    s += &(pk * &hj.diff_idx(xi));
                }
                if !qk.is_zero() {
                    s += &(qk * &hj.diff_idx(yi));
                }
            }
        }
        s
    }

    /// Splits a homogeneous degree-`i` phase polynomial into parameter
    /// polynomials: `buckets[j]` is the coefficient of `x^{i-j} y^j`.
    fn split(&self, s: &MultiPoly, i: u64) -> Vec<MultiPoly> {
        let table = self.sys.table();
        let (xi, yi) = (self.sys.x_idx(), self.sys.y_idx());
        let mut buckets = vec![MultiPoly::zero(table); (i + 1) as usize];
        for (m, c) in s.terms() {
            let ey = m.exponents()[yi];
            let ex = m.exponents()[xi];
            debug_assert_eq!(ex + ey, i, "source term of unexpected degree");
            let mut exps = m.exponents().to_vec();
            exps[xi] = 0;
            exps[yi] = 0;
            buckets[ey as usize].add_term(crate::poly::Monomial(exps), c.clone());
        }
        buckets
    }

    /// Recombines chain coefficients into the homogeneous component.
    fn assemble(&self, q: &[MultiPoly], i: u64) -> MultiPoly {
        let table = self.sys.table();
        let (xi, yi) = (self.sys.x_idx(), self.sys.y_idx());
        let mut h = MultiPoly::zero(table);
        for (ell, qe) in q.iter().enumerate() {
            if qe.is_zero() {
                continue;
            }
            let mut exps = vec![0u64; table.len()];
            exps[xi] = i - ell as u64;
            exps[yi] = ell as u64;
            h += &qe.mul_monomial(&crate::poly::Monomial(exps), &Rat::one());
        }
        h
    }

    /// Processes the next degree; returns the new constant at even
    /// degrees.
    fn step(&mut self) -> Result<Option<MultiPoly>, LyapunovError> {
        let i = self.next_degree;
        self.next_degree += 1;
        let table = self.sys.table().clone();
        let s = self.source(i);
        let buckets = self.split(&s, i);
        let n = i as usize;
        let mut q = vec![MultiPoly::zero(&table); n + 1];

        let constant = if i % 2 == 0 {
            let m = i / 2;
            let kcoef = |j: u64| -> Rat {
                // Coefficient of x^{i-j} y^j in (x^2+y^2)^m, even j.
                Rat::from(binomial(BigInt::from(m), BigInt::from(j / 2)))
            };
            // Odd-index chain, carrying the constant L symbolically as
            // q_l = A_l + L * b_l.
            let mut a = vec![MultiPoly::zero(&table); n + 1];
            let mut b = vec![Rat::zero(); n + 1];
            a[1] = -&buckets[0];
            b[1] = kcoef(0);
            let mut j = 2u64;
            while j <= i - 2 {
                let ju = j as usize;
                let inv = Rat::new(BigInt::one(), BigInt::from(j + 1));
                let carry = rat_int((i - j + 1) as i64);
                a[ju + 1] = (&(-&buckets[ju]) + &a[ju - 1].scale(&carry)).scale(&inv);
                b[ju + 1] = (kcoef(j) + &b[ju - 1] * &carry) * &inv;
                j += 2;
            }
            // Consistency at j = i: L * (K_i + b_{i-1}) = s_{i,i} - A_{i-1}.
            let denom = kcoef(i) + &b[n - 1];
            if denom.is_zero() {
                return Err(LyapunovError::Internal(format!(
                    "vanishing pivot at degree {i}"
                )));
            }
            let l = (&buckets[n] - &a[n - 1]).scale(&denom.recip());
            // Substitute L back into the odd chain.
            for ell in (1..=n - 1).step_by(2) {
                q[ell] = &a[ell] + &l.scale(&b[ell]);
            }
            // Even-index chain, pinned by q_0 = 0.
            let mut j = 1u64;
            while j <= i - 1 {
                let ju = j as usize;
                let inv = Rat::new(BigInt::one(), BigInt::from(j + 1));
                let carry = rat_int((i - j + 1) as i64);
                q[ju + 1] = (&(-&buckets[ju]) + &q[ju - 1].scale(&carry)).scale(&inv);
                j += 2;
            }
            Some(l)
        } else {
            // Odd-index chain, forward.
            q[1] = -&buckets[0];
            let mut j = 2u64;
            while j <= i - 1 {
                let ju = j as usize;
                let inv = Rat::new(BigInt::one(), BigInt::from(j + 1));
                let carry = rat_int((i - j + 1) as i64);
                q[ju + 1] = (&(-&buckets[ju]) + &q[ju - 1].scale(&carry)).scale(&inv);
                j += 2;
            }
            // Even-index chain, backward from q_{i-1} = s_{i,i}.
            q[n - 1] = buckets[n].clone();
            let mut j = i - 2;
            while j >= 1 {
                let ju = j as usize;
                let inv = Rat::new(BigInt::one(), BigInt::from(i - j + 1));
                let scale = rat_int((j + 1) as i64);
                q[ju - 1] = (&q[ju + 1].scale(&scale) + &buckets[ju]).scale(&inv);
                if j < 2 {
                    break;
                }
                j -= 2;
            }
            None
        };

        let h_i = self.assemble(&q, i);
        self.h.insert(i, h_i);
        if let Some(l) = &constant {
            self.constants.push(l.clone());
        }
        Ok(constant)
    }
}

/// Computes `L_1 ... L_n` together with the formal integral.
///
/// With `reduce = true` every constant is replaced by its normal form
/// modulo a Gröbner basis (under [`display_reduction_order`]) of the
/// earlier odd-index constants, which exposes the new information each
/// constant adds; `budget` bounds those basis computations.
pub fn lyapunov_constants(
    sys: &PlanarSystem,
    n: usize,
    reduce: bool,
    budget: &GbBudget,
) -> Result<LyapunovOutput, LyapunovError> {
    if n == 0 {
        return Err(LyapunovError::Internal(
            "at least one constant must be requested".to_string(),
        ));
    }
    let (normalized, time_reversed) = normalize_rotation(sys)?;
    let mut engine = Engine::new(normalized.clone());
    while engine.next_degree <= 2 * n as u64 {
        engine.step()?;
    }
    let mut constants = engine.constants.clone();
    debug_assert_eq!(constants.len(), n);

    if reduce {
        let order = display_reduction_order(sys.table());
        for k in 1..=n {
            // Ideal of earlier odd-index constants (indices 3, 5, ..).
            let earlier: Vec<MultiPoly> = (3..k)
                .step_by(2)
                .map(|j| engine.constants[j - 1].clone())
                .filter(|p| !p.is_zero())
                .collect();
            if earlier.is_empty() {
                continue;
            }
            let gb = ideals::buchberger(&earlier, &order, budget)?;
            constants[k - 1] = ideals::normal_form(&constants[k - 1], &gb)?;
        }
    }

    Ok(LyapunovOutput {
        constants,
        integral: FormalIntegral {
            components: engine.h,
        },
        normalized,
        time_reversed,
        reduced: reduce,
    })
}

/// First index `k <= max_n` with `L_k != 0` for a parameter-free system,
/// with the constant's value. `None` when all tested constants vanish.
pub fn weak_focus_order(
    sys: &PlanarSystem,
    max_n: usize,
) -> Result<Option<(usize, Rat)>, LyapunovError> {
    if !sys.is_numeric() {
        return Err(LyapunovError::Internal(
            "weak-focus order requires a fully bound system".to_string(),
        ));
    }
    let (normalized, _) = normalize_rotation(sys)?;
    let mut engine = Engine::new(normalized);
    for k in 2..=max_n {
        while engine.constants.len() < k {
            engine.step()?;
        }
        let l = &engine.constants[k - 1];
        if !l.is_zero() {
            return Ok(Some((k, l.constant_term())));
        }
    }
    Ok(None)
}

/// Detects time-reversal symmetry axes from coefficient parities:
/// mirrored about the x-axis iff `P` is odd and `Q` even in `y`;
/// mirrored about the y-axis iff `P` is even and `Q` odd in `x`.
pub fn reversibility_test(sys: &PlanarSystem) -> Vec<Axis> {
    let (xi, yi) = (sys.x_idx(), sys.y_idx());
    let parity_all = |p: &MultiPoly, var: usize, want_odd: bool| -> bool {
        p.terms()
            .all(|(m, _)| (m.exponents()[var] % 2 == 1) == want_odd)
    };
    let mut out = Vec::new();
    if parity_all(sys.p(), yi, true) && parity_all(sys.q(), yi, false) {
        out.push(Axis::XAxis);
    }
    if parity_all(sys.p(), xi, false) && parity_all(sys.q(), xi, true) {
        out.push(Axis::YAxis);
    }
    out
}

/// Report from [`bautin_inclusion_check`]: for each even index, whether
/// the constant lies in the ideal of the earlier odd-index constants.
#[derive(Debug, Clone)]
pub struct BautinReport {
    /// `(even index, reduces to zero)` pairs.
    pub even_indices: Vec<(usize, bool)>,
}

/// Checks that each even-index constant `L_{2j}`, `j <= j_max`, lies in
/// the ideal generated by the earlier odd-index constants — i.e. that the
/// even constants carry no new center conditions.
pub fn bautin_inclusion_check(
    sys: &PlanarSystem,
    j_max: usize,
    budget: &GbBudget,
) -> Result<BautinReport, LyapunovError> {
    let out = lyapunov_constants(sys, 2 * j_max, false, budget)?;
    let order = display_reduction_order(sys.table());
    let mut even_indices = Vec::new();
    for j in 1..=j_max {
        let idx = 2 * j;
        let le = &out.constants[idx - 1];
        let earlier: Vec<MultiPoly> = (3..idx)
            .step_by(2)
            .map(|k| out.constants[k - 1].clone())
            .filter(|p| !p.is_zero())
            .collect();
        let ok = if earlier.is_empty() {
            le.is_zero()
        } else {
            let gb = ideals::buchberger(&earlier, &order, budget)?;
            ideals::normal_form(le, &gb)?.is_zero()
        };
        even_indices.push((idx, ok));
    }
    Ok(BautinReport { even_indices })
}

/// Verifies the defining identity of the computed integral: for every
/// degree `3 <= i <= 2n`, the degree-`i` part of `dH/dt` equals
/// `L_{i/2} (x^2+y^2)^{i/2}` (zero at odd degrees).
pub fn validate_integral(output: &LyapunovOutput) -> bool {
    let sys = &output.normalized;
    let table = sys.table();
    let (xi, yi) = (sys.x_idx(), sys.y_idx());
    let h = output.integral.truncated();
    let d = &(&h.diff_idx(xi) * sys.p()) + &(&h.diff_idx(yi) * sys.q());
    let x = MultiPoly::var_idx(table, xi);
    let y = MultiPoly::var_idx(table, yi);
    let r2 = &(&x * &x) + &(&y * &y);
    let max_deg = output.integral.max_degree();
    for i in 3..=max_deg {
        let got = d.homogeneous_component(i, &[xi, yi]);
        let expect = if i % 2 == 0 {
            let k = (i / 2) as usize;
            match output.constants.get(k - 1) {
                Some(l) => &r2.pow(i / 2) * l,
                None => return false,
            }
        } else {
            MultiPoly::zero(table)
        };
        if got != expect {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::poly::rat;
    use crate::vars::VariableTable;

    fn quintic_family() -> PlanarSystem {
        let t = VariableTable::canonical();
        PlanarSystem::parse(
            &t,
            "y",
            "-x + a0*y^5 + a1*x*y^4 + a2*x^2*y^3 + a3*x^3*y^2 + a4*x^4*y + a5*x^5",
        )
        .unwrap()
    }

    #[test]
    fn family_is_time_reversed_into_normal_form() {
        let sys = quintic_family();
        let (norm, reversed) = normalize_rotation(&sys).unwrap();
        assert!(reversed);
        let t = sys.table();
        assert_eq!(
            norm.p(),
            &parse_poly(t, "-y").unwrap()
        );
        let (p1, q1) = norm.homogeneous_component(1);
        assert_eq!(p1, parse_poly(t, "-y").unwrap());
        assert_eq!(q1, parse_poly(t, "x").unwrap());
    }

    #[test]
    fn family_first_constant_exact() {
        let sys = quintic_family();
        let out = lyapunov_constants(&sys, 3, false, &GbBudget::unlimited()).unwrap();
        let t = sys.table();
        assert!(out.constants[0].is_zero(), "L_1 must vanish");
        assert!(out.constants[1].is_zero(), "L_2 must vanish");
        let expect = parse_poly(t, "-1/16*(5*a0 + a2 + a4)").unwrap();
        assert_eq!(out.constants[2], expect, "L_3 = -(5 a0 + a2 + a4)/16");
    }

    #[test]
    fn family_integral_identity() {
        let sys = quintic_family();
        let out = lyapunov_constants(&sys, 4, false, &GbBudget::unlimited()).unwrap();
        assert!(validate_integral(&out));
    }

    #[test]
    fn cubic_perturbation_constant() {
        // x' = -y + x^3, y' = x: dH/dt = x^4 + ..., whose circle average
        // (3/8) r^4 forces L_2 = 3/8.
        let t = VariableTable::canonical();
        let sys = PlanarSystem::parse(&t, "-y + x^3", "x").unwrap();
        let out = lyapunov_constants(&sys, 2, false, &GbBudget::unlimited()).unwrap();
        assert!(!out.time_reversed);
        assert_eq!(out.constants[1], parse_poly(&t, "3/8").unwrap());
        assert_eq!(
            weak_focus_order(&sys, 5).unwrap(),
            Some((2, rat(3, 8)))
        );
        assert!(validate_integral(&out));
    }

    #[test]
    fn reversible_quadratic_is_a_center() {
        // x' = -y + x^2, y' = x is mirrored about the y-axis: P even in
        // x, Q odd in x. All constants vanish.
        let t = VariableTable::canonical();
        let sys = PlanarSystem::parse(&t, "-y + x^2", "x").unwrap();
        assert_eq!(reversibility_test(&sys), vec![Axis::YAxis]);
        let out = lyapunov_constants(&sys, 4, false, &GbBudget::unlimited()).unwrap();
        for (k, l) in out.constants.iter().enumerate() {
            assert!(l.is_zero(), "L_{} should vanish", k + 1);
        }
        assert_eq!(weak_focus_order(&sys, 4).unwrap(), None);
        assert!(validate_integral(&out));
    }

    #[test]
    fn family_reversibility_condition() {
        let sys = quintic_family();
        // Symbolic family: not reversible (parameters present).
        assert!(reversibility_test(&sys).is_empty());
        // With the odd-in-y coefficients of Q zeroed it becomes mirrored
        // about the x-axis.
        let mut binds = std::collections::BTreeMap::new();
        for name in ["a0", "a2", "a4"] {
            binds.insert(name.to_string(), rat(0, 1));
        }
        let bound = sys.bind(&binds).unwrap();
        // The surviving monomials x*y^4, x^3*y^2, x^5 are odd in x and
        // even in y, so both mirror symmetries hold.
        assert_eq!(reversibility_test(&bound), vec![Axis::XAxis, Axis::YAxis]);
    }

    #[test]
    fn rejects_non_rotation_linear_parts() {
        let t = VariableTable::canonical();
        for (p, q) in [("x", "y"), ("2*y", "-2*x"), ("-y + 1", "x"), ("y", "x")] {
            let sys = PlanarSystem::parse(&t, p, q).unwrap();
            assert!(
                matches!(
                    lyapunov_constants(&sys, 2, false, &GbBudget::unlimited()),
                    Err(LyapunovError::NotRotation(_))
                ),
                "({p}, {q}) should be rejected"
            );
        }
    }

    #[test]
    fn even_constants_join_odd_ideal_for_family() {
        let sys = quintic_family();
        let report = bautin_inclusion_check(&sys, 2, &GbBudget::unlimited()).unwrap();
        assert_eq!(report.even_indices.len(), 2);
        for (idx, ok) in report.even_indices {
            assert!(ok, "L_{idx} should reduce to zero modulo earlier odds");
        }
    }
}
