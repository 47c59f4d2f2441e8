//! Embedded reference fixtures: named systems and parameter-space ideals.
//!
//! Fixtures ship inside the library (via `include_str!`) so results are
//! reproducible without external files. Ideal fixtures carry a `verified`
//! flag; the single unverified fixture (transcribed from a typographically
//! ambiguous upstream display) is refused unless the caller passes
//! `allow_unverified = true`, mirroring
//! [`Config::allow_unverified_fixtures`](crate::config::Config::allow_unverified_fixtures).

use serde::Deserialize;
use thiserror::Error;

use crate::parse::parse_poly;
use crate::poly::{MultiPoly, PolyError};
use crate::system::{SystemDescription, SystemError};
use crate::vars::VariableTable;

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("no fixture named {0:?}")]
    UnknownFixture(String),
    #[error(
        "fixture {0:?} is unverified (ambiguous upstream display); \
         pass allow_unverified to load it"
    )]
    UnverifiedFixture(String),
    #[error("fixture is not valid JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    System(#[from] SystemError),
}

/// Pinned reduced Lyapunov constants of the quintic family: `(k, L_k)` with
/// each constant in normal form modulo a Gröbner basis of the earlier
/// odd-index constants (under
/// [`display_reduction_order`](crate::lyapunov::display_reduction_order)).
/// Frozen as parseable strings so independent runs can be compared exactly.
pub const REDUCED_CONSTANTS: [(usize, &str); 4] = [
    (3, "-1/16*(5*a0 + a2 + a4)"),
    (
        5,
        "-1/128*(5*a5*a4 + 7/5*a4*a3 + 1/5*a4*a1 + 3/2*a5*a2 + 9/10*a3*a2 + 7/10*a2*a1)",
    ),
    (
        7,
        "-1/2400*(a4^3 - 9/32*a2^3 - 765/784*a3^2*a2 + 165275/3136*a5^2*a4 \
         + 825/196*a5^2*a2 + 11625/1568*a5*a4*a3 + 21075/1568*a5*a4*a1 \
         - 375/196*a5*a3*a2 - 5/8*a4^2*a2 - 155/448*a4*a3^2 + 3825/1568*a4*a3*a1 \
         - 9/8*a4*a2^2 - 675/448*a4*a1^2)",
    ),
    (
        9,
        "1/36864*(a3^3*a2 - 27665/27*a5^3*a4 - 440/9*a5^3*a2 - 7493/21*a5^2*a4*a3 \
         - 2707/9*a5^2*a4*a1 + 404/63*a5^2*a3*a2 - 1363574/46305*a5*a4^3 \
         + 388547/46305*a5*a4^2*a2 - 4813/108*a5*a4*a3^2 - 73/36*a4*a3^3 \
         - 1700/21*a5*a4*a3*a1 + 16031/1470*a5*a4*a2^2 + 47/7*a5*a3^2*a2 \
         + 517/420*a5*a2^3 - 53482/11025*a4^3*a3 - 1388/343*a4^3*a1 \
         + 92923/77175*a4^2*a3*a2 - 85/12*a4*a3^2*a1 + 3907/2450*a4*a3*a2^2 \
         + 209/700*a3*a2^3)",
    ),
];

/// Names accepted by [`system_fixture`].
pub const SYSTEM_FIXTURES: [&str; 2] = ["quintic-family", "linear-center"];

/// Names accepted by [`ideal_fixture`], in the canonical component order.
pub const IDEAL_FIXTURES: [&str; 3] = [
    "center-component-1",
    "center-component-2",
    "center-component-3",
];

const QUINTIC_FAMILY_JSON: &str = include_str!("../fixtures/quintic_family.json");
const LINEAR_CENTER_JSON: &str = include_str!("../fixtures/linear_center.json");
const COMPONENT_JSON: [&str; 3] = [
    include_str!("../fixtures/center_component_1.json"),
    include_str!("../fixtures/center_component_2.json"),
    include_str!("../fixtures/center_component_3.json"),
];

/// A named ideal in the quintic family's parameter ring, with generators
/// parsed over the canonical variable table (which includes the auxiliary
/// `w`, so radical-membership checks can run directly).
#[derive(Debug, Clone)]
pub struct IdealFixture {
    pub name: String,
    pub generators: Vec<MultiPoly>,
    pub verified: bool,
    pub notes: String,
}

#[derive(Deserialize)]
struct IdealFixtureFile {
    name: String,
    generators: Vec<String>,
    verified: bool,
    #[serde(default)]
    notes: String,
}

/// Load a named system description (`quintic-family`, `linear-center`).
pub fn system_fixture(name: &str) -> Result<SystemDescription, FixtureError> {
    let json = match name {
        "quintic-family" => QUINTIC_FAMILY_JSON,
        "linear-center" => LINEAR_CENTER_JSON,
        other => return Err(FixtureError::UnknownFixture(other.to_string())),
    };
    Ok(SystemDescription::from_json_str(json)?)
}

/// Load a named parameter-space ideal. The unverified fixture is refused
/// unless `allow_unverified` is set.
pub fn ideal_fixture(name: &str, allow_unverified: bool) -> Result<IdealFixture, FixtureError> {
    let Some(pos) = IDEAL_FIXTURES.iter().position(|n| *n == name) else {
        return Err(FixtureError::UnknownFixture(name.to_string()));
    };
    let file: IdealFixtureFile = serde_json::from_str(COMPONENT_JSON[pos])
        .map_err(|e| FixtureError::Json(e.to_string()))?;
    if !file.verified && !allow_unverified {
        return Err(FixtureError::UnverifiedFixture(file.name));
    }
    let table = VariableTable::canonical();
    let generators = file
        .generators
        .iter()
        .map(|s| parse_poly(&table, s))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(IdealFixture {
        name: file.name,
        generators,
        verified: file.verified,
        notes: file.notes,
    })
}

/// All center-variety component ideals that are currently loadable: the two
/// verified components always, plus the unverified one when allowed.
pub fn center_component_ideals(
    allow_unverified: bool,
) -> Result<Vec<IdealFixture>, FixtureError> {
    IDEAL_FIXTURES
        .iter()
        .filter_map(|name| match ideal_fixture(name, allow_unverified) {
            Err(FixtureError::UnverifiedFixture(_)) if !allow_unverified => None,
            other => Some(other),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat_int;
    use std::collections::BTreeMap;

    #[test]
    fn system_fixtures_build() {
        let family = system_fixture("quintic-family").unwrap().build().unwrap();
        assert!(!family.is_numeric());
        let mut bind = BTreeMap::new();
        for name in ["a0", "a1", "a2", "a3", "a4"] {
            bind.insert(name.to_string(), rat_int(0));
        }
        bind.insert("a5".to_string(), rat_int(-1));
        assert_eq!(family.bind(&bind).unwrap().degree(), Some(5));

        let linear = system_fixture("linear-center").unwrap().build().unwrap();
        assert!(linear.is_numeric());
        assert_eq!(linear.degree(), Some(1));

        assert!(matches!(
            system_fixture("no-such"),
            Err(FixtureError::UnknownFixture(_))
        ));
    }

    #[test]
    fn ideal_fixtures_parse_with_expected_shapes() {
        let c1 = ideal_fixture("center-component-1", false).unwrap();
        assert_eq!(c1.generators.len(), 3);
        assert!(c1.verified);
        let c2 = ideal_fixture("center-component-2", false).unwrap();
        assert_eq!(c2.generators.len(), 5);
        assert_eq!(c2.generators[0].total_degree(), Some(2));
    }

    #[test]
    fn unverified_fixture_is_gated() {
        assert!(matches!(
            ideal_fixture("center-component-3", false),
            Err(FixtureError::UnverifiedFixture(_))
        ));
        let c3 = ideal_fixture("center-component-3", true).unwrap();
        assert!(!c3.verified);
        assert_eq!(c3.generators.len(), 5);

        assert_eq!(center_component_ideals(false).unwrap().len(), 2);
        assert_eq!(center_component_ideals(true).unwrap().len(), 3);
    }
}
