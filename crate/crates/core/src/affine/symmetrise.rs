//! Symmetrisation `A = D S` and the lifted transposes of induced extensions.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{extension_by_name, transpose, BorderedCartan};
use crate::coxeter::CartanLike;
use crate::error::{Error, Result};
use crate::golden::GoldenRat;
use crate::matrix::Matrix;
use crate::projection::{lift_bordered, ProjectionMap, Subspace};

/// `A = D S` with `D` positive diagonal and `S` symmetric.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Symmetrisation {
    /// Diagonal of `D`, with `d = 1` on the last node of every component.
    pub d: Vec<GoldenRat>,
    pub s: Matrix,
    pub exists: bool,
    /// Every `d_i` is rational.
    pub rational: bool,
}

impl Symmetrisation {
    /// Entries of `S` outside `Z[tau]`.
    pub fn non_integral_entries(&self) -> Vec<(usize, usize)> {
        let n = self.s.rows();
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| !self.s[(i, j)].is_golden_integer()).collect()
    }
}

/// Finds `D` from `d_i A_ji = d_j A_ij` along a spanning forest of the
/// diagram, then checks every edge and positivity. When no symmetrisation
/// exists the result has `exists = false` and `S = A`.
pub fn symmetrise(a: &Matrix) -> Result<Symmetrisation> {
    if !a.is_square() {
        return Err(Error::Dimension("symmetrising a non-square matrix".into()));
    }
    let n = a.rows();
    for i in 0..n {
        for j in 0..i {
            if a[(i, j)].is_zero() != a[(j, i)].is_zero() {
                return Err(Error::Invalid(format!("zero pattern is not symmetric at ({i}, {j})")));
            }
        }
    }
    let mut d: Vec<Option<GoldenRat>> = vec![None; n];
    for root in (0..n).rev() {
        if d[root].is_some() {
            continue;
        }
        d[root] = Some(GoldenRat::one());
        let mut queue = VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            let di = d[i].clone().expect("visited");
            for j in 0..n {
                if j != i && !a[(i, j)].is_zero() && d[j].is_none() {
                    // S_ij = A_ij / d_i must equal S_ji = A_ji / d_j
                    d[j] = Some(&(&di * &a[(j, i)]) / &a[(i, j)]);
                    queue.push_back(j);
                }
            }
        }
    }
    let d: Vec<GoldenRat> = d.into_iter().map(|x| x.expect("every node visited")).collect();
    let s = Matrix::from_fn(n, n, |i, j| &a[(i, j)] / &d[i]);
    let exists = s.is_symmetric() && d.iter().all(GoldenRat::is_positive);
    let rational = d.iter().all(GoldenRat::is_rational);
    if !exists {
        return Ok(Symmetrisation { d, s: a.clone(), exists, rational });
    }
    Ok(Symmetrisation { d, s, exists, rational })
}

/// Lifts the transpose of an induced extension back to the crystallographic
/// group it came from.
pub fn lift_transpose_project(ext: &BorderedCartan) -> Result<CartanLike> {
    if ext.base.is_crystallographic() {
        return Err(Error::Invalid(format!("{} is already crystallographic", ext.base)));
    }
    let subspace = if ext.conjugate { Subspace::Perpendicular } else { Subspace::Parallel };
    let map = ProjectionMap::for_target(ext.base, subspace)?;
    let root = transpose(ext).affine_root()?;
    let mut m = lift_bordered(&map, &root)?;
    if let Some(name) = &ext.name {
        m.labels[0] = format!("{}^T lifted", name);
    }
    Ok(m)
}

/// `S` from `symmetrise(LTP^T)`; its corner entry is the lifted node's
/// squared length over 2 relative to the base.
pub fn symmetrised_ltp(name: &str) -> Result<Symmetrisation> {
    let ltp = lift_transpose_project(&extension_by_name(name)?)?;
    symmetrise(&ltp.entries.transpose())
}
