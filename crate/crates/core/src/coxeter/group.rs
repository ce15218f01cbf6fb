//! Breadth-first closure of the simple-reflection matrices.

use std::collections::HashSet;

use super::{cartan_matrix, GroupId};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::zt::{cmp_slices, Zt, ZtMatrix};

/// Largest group `generate_group` will build.
pub const GROUP_CAP: usize = 20_000;

/// A finite reflection group as matrices acting on simple-root coordinates
/// (column vectors), sorted canonically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterGroup {
    pub group: GroupId,
    pub elements: Vec<Matrix>,
    /// `true` for orientation-preserving elements (determinant `+1`).
    pub even: Vec<bool>,
    pub(crate) packed: Vec<ZtMatrix>,
}

impl CoxeterGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Elements of the rotation subgroup (determinant `+1`).
    pub fn rotations(&self) -> impl Iterator<Item = &Matrix> {
        self.elements.iter().zip(&self.even).filter(|(_, e)| **e).map(|(m, _)| m)
    }

    pub(crate) fn packed_elements(&self, rotations_only: bool) -> Vec<&ZtMatrix> {
        self.packed.iter().zip(&self.even).filter(|(_, e)| !rotations_only || **e).map(|(m, _)| m).collect()
    }
}

/// All elements of the Coxeter group of `group`, failing above [`GROUP_CAP`].
pub fn generate_group(group: GroupId) -> Result<CoxeterGroup> {
    let n = group.rank();
    let a = cartan_matrix(group).entries;
    let a: Vec<Zt> =
        a.entries().map(|x| Zt::from_golden(x).ok_or(Error::Overflow("Cartan entry"))).collect::<Result<_>>()?;
    let identity: ZtMatrix = (0..n * n).map(|k| if k / n == k % n { Zt { a: 1, b: 0 } } else { Zt::ZERO }).collect();

    let mut seen: HashSet<ZtMatrix> = HashSet::new();
    let mut all: Vec<(ZtMatrix, bool)> = Vec::new();
    seen.insert(identity.clone());
    all.push((identity.clone(), true));
    let mut frontier = vec![(identity, true)];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (m, even) in &frontier {
            for i in 0..n {
                let p = left_reflect(&a, n, i, m)?;
                if !seen.contains(&p) {
                    if seen.len() >= GROUP_CAP {
                        return Err(Error::CapExceeded { cap: GROUP_CAP });
                    }
                    seen.insert(p.clone());
                    all.push((p.clone(), !even));
                    next.push((p, !even));
                }
            }
        }
        frontier = next;
    }
    all.sort_by(|x, y| cmp_slices(&x.0, &y.0));
    let elements = all.iter().map(|(m, _)| Matrix::from_fn(n, n, |i, j| m[i * n + j].to_golden())).collect();
    let even = all.iter().map(|(_, e)| *e).collect();
    let packed = all.into_iter().map(|(m, _)| m).collect();
    Ok(CoxeterGroup { group, elements, even, packed })
}

/// `S_i M`: only row `i` changes, `row_i -> row_i - sum_k A_ik row_k`.
fn left_reflect(a: &[Zt], n: usize, i: usize, m: &[Zt]) -> Result<ZtMatrix> {
    let mut out = m.to_vec();
    for c in 0..n {
        let mut s = Zt::ZERO;
        for k in 0..n {
            let aik = a[i * n + k];
            if !aik.is_zero() {
                s = s.add(aik.mul(m[k * n + c])?)?;
            }
        }
        out[i * n + c] = m[i * n + c].sub(s)?;
    }
    Ok(out)
}
