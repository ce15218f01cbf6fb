//! Cartesian realisations of H3 and H4, and symmetry-axis vectors.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{highest_root, GroupId, RootVector};
use crate::error::{Error, Result};
use crate::golden::GoldenRat;
use crate::matrix::Matrix;

/// Rotation axes along which affine roots are taken.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Twofold,
    Threefold,
    Fivefold,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::Twofold => "twofold",
            Axis::Threefold => "threefold",
            Axis::Fivefold => "fivefold",
        })
    }
}

impl FromStr for Axis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "twofold" | "2" | "2-fold" => Ok(Axis::Twofold),
            "threefold" | "3" | "3-fold" => Ok(Axis::Threefold),
            "fivefold" | "5" | "5-fold" => Ok(Axis::Fivefold),
            other => {
                Err(Error::Parse { input: other.into(), reason: "expected twofold, threefold or fivefold".into() })
            }
        }
    }
}

fn half(a: i64, b: i64) -> GoldenRat {
    GoldenRat::new(a, b, 2)
}

/// Columns are the simple roots in Cartesian coordinates, unit length.
pub fn cartesian_embedding(group: GroupId) -> Result<Matrix> {
    let z = GoldenRat::zero;
    let one = GoldenRat::one;
    // sigma = 1 - tau, tau = tau
    let cols: Vec<Vec<GoldenRat>> = match group {
        GroupId::H3 => vec![
            vec![z(), one(), z()],
            // -(1/2)(-sigma, 1, tau)
            vec![half(1, -1), half(-1, 0), half(0, -1)],
            vec![z(), z(), one()],
        ],
        GroupId::H4 => vec![
            // (1/2)(-sigma, -tau, 0, -1)
            vec![half(-1, 1), half(0, -1), z(), half(-1, 0)],
            // (1/2)(0, -sigma, -tau, 1)
            vec![z(), half(-1, 1), half(0, -1), half(1, 0)],
            // (1/2)(0, 1, -sigma, -tau)
            vec![z(), half(1, 0), half(-1, 1), half(0, -1)],
            // (1/2)(0, -1, -sigma, tau)
            vec![z(), half(-1, 0), half(-1, 1), half(0, 1)],
        ],
        g => {
            return Err(Error::Invalid(format!("no Cartesian embedding is provided for {g}")));
        }
    };
    Ok(Matrix::from_rows(cols)?.transpose())
}

pub fn to_cartesian(v: &RootVector) -> Result<Vec<GoldenRat>> {
    Ok(cartesian_embedding(v.group)?.mul_vec(&v.coords))
}

pub fn from_cartesian(group: GroupId, x: &[GoldenRat]) -> Result<RootVector> {
    let b = cartesian_embedding(group)?;
    if x.len() != b.rows() {
        return Err(Error::Dimension(format!("{group} Cartesian vectors have {} entries", b.rows())));
    }
    RootVector::new(group, b.solve(x)?)
}

/// Direction of an axis in simple-root coordinates.
///
/// Twofold is `-alpha_H` for every H group, so that `lambda = 1` gives the
/// standard affine root. Threefold `(tau, 0, sigma)` and fivefold
/// `(tau, -1, 0)` exist for H3 only.
pub fn axis_vector(group: GroupId, axis: Axis) -> Result<RootVector> {
    let unsupported = || Error::UnsupportedAxis { group, axis: axis.to_string() };
    if group.is_crystallographic() {
        return Err(unsupported());
    }
    match (group, axis) {
        (_, Axis::Twofold) => Ok(highest_root(group).scale(&GoldenRat::from_int(-1))),
        (GroupId::H3, Axis::Threefold) => {
            from_cartesian(group, &[GoldenRat::tau(), GoldenRat::zero(), GoldenRat::sigma()])
        }
        (GroupId::H3, Axis::Fivefold) => {
            from_cartesian(group, &[GoldenRat::tau(), GoldenRat::from_int(-1), GoldenRat::zero()])
        }
        _ => Err(unsupported()),
    }
}
