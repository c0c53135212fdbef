use serde::Serialize;

use crate::error::LatticeError;

/// Degree and self-intersection of a surface in a fourfold, with the
/// invariants of its normalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DoublePointData {
    pub deg: i64,
    pub r2: i64,
    pub k2: i64,
    pub hk: i64,
    pub chi: i64,
}

/// Improper double points of a generic map of a surface to a fourfold:
/// `(R^2 - 6 deg - 3 hK - K^2 + chi) / 2`.
pub fn double_point(d: &DoublePointData) -> Result<i64, LatticeError> {
    let twice = d.r2 - 6 * d.deg - 3 * d.hk - d.k2 + d.chi;
    if twice % 2 != 0 {
        return Err(LatticeError::NonInteger(twice));
    }
    Ok(twice / 2)
}

/// Degree and self-intersection; `h^2` has square 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DiscriminantData {
    pub deg: i64,
    pub r2: i64,
}

/// `det [[3, deg], [deg, R^2]]`.
pub fn discriminant2(d: &DiscriminantData) -> i64 {
    3 * d.r2 - d.deg * d.deg
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimensionIdentity {
    pub name: &'static str,
    pub expression: String,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

fn pgl(n: i64) -> i64 {
    n * n - 1
}

fn identity(name: &'static str, expression: String, lhs: i64, rhs: i64) -> DimensionIdentity {
    DimensionIdentity {
        name,
        expression,
        lhs,
        rhs,
        holds: lhs == rhs,
    }
}

/// Parameter counts for the moduli of nodal septic scrolls and their cubic fourfolds.
pub fn dimension_ledger() -> Vec<DimensionIdentity> {
    let aut_scroll = 6; // automorphisms of F_1 preserving the embedding
    let aut_quartic_scroll = 2 * pgl(2);
    let sec_dim = 5;
    let cubics_through = 12;
    let k3_moduli = 19;
    let nodes = 3;
    let hilb = pgl(9) - aut_scroll;
    let scrolls = nodes * sec_dim - aut_scroll;
    vec![
        identity(
            "septic scrolls in P^8",
            format!("{} - {} = {}", pgl(9), aut_scroll, hilb),
            hilb,
            74,
        ),
        identity(
            "nodal septic scrolls in P^5 up to projectivities",
            format!("{nodes}*{sec_dim} - {aut_scroll} = {scrolls}"),
            scrolls,
            9,
        ),
        identity(
            "cubic fourfolds with a nodal septic scroll",
            format!(
                "{scrolls} + {cubics_through} = {}",
                scrolls + cubics_through
            ),
            scrolls + cubics_through,
            k3_moduli + 2,
        ),
        identity(
            "quartic scrolls with three marked points",
            format!(
                "{} - {} + {nodes}*2 = {}",
                pgl(6),
                aut_quartic_scroll,
                pgl(6) - aut_quartic_scroll + nodes * 2
            ),
            pgl(6) - aut_quartic_scroll + nodes * 2,
            pgl(6),
        ),
        identity(
            "one-pointed K3 surfaces",
            format!("{k3_moduli} + 2 = {}", k3_moduli + 2),
            k3_moduli + 2,
            21,
        ),
    ]
}
