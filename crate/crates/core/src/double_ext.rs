//! Simply-laced affine extensions of A4, D6, E8 by two nodes, and the test
//! whether both new roots could live in the span of the base roots (a
//! trivial projection kernel).

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coxeter::{cartan_matrix, diagram_automorphisms, gram_matrix, CartanLike, GroupId, MatrixKind};
use crate::error::{Error, Result};
use crate::golden::GoldenRat;
use crate::matrix::Matrix;

/// Base matrix bordered by two new nodes at indices 0 and 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleExtension {
    pub base: GroupId,
    /// Links of the first new node to the base nodes (0 or -1).
    pub v1: Vec<i64>,
    /// Links of the second new node to the base nodes (0 or -1).
    pub v2: Vec<i64>,
    /// Entry between the two new nodes (0 or -1).
    pub coupling: i64,
    pub full: CartanLike,
}

impl DoubleExtension {
    pub fn new(base: GroupId, v1: Vec<i64>, v2: Vec<i64>, coupling: i64) -> Result<Self> {
        if !base.is_crystallographic() {
            return Err(Error::Invalid(format!("{base} is not simply laced")));
        }
        let r = base.rank();
        if v1.len() != r || v2.len() != r {
            return Err(Error::Dimension(format!("{base} attachments need {r} entries")));
        }
        if v1.iter().chain(&v2).chain([&coupling]).any(|&x| x != 0 && x != -1) {
            return Err(Error::Invalid("simply-laced entries must be 0 or -1".into()));
        }
        let full = assemble(base, &v1, &v2, coupling);
        Ok(DoubleExtension { base, v1, v2, coupling, full })
    }

    /// The first new node has no links at all.
    pub fn has_disconnected_node(&self) -> bool {
        let isolated = |v: &[i64]| self.coupling == 0 && v.iter().all(|&x| x == 0);
        isolated(&self.v1) || isolated(&self.v2)
    }

    /// Determinants with the first or the second new node deleted.
    pub fn single_deletion_dets(&self) -> (GoldenRat, GoldenRat) {
        (self.full.entries.without(&[1]).det(), self.full.entries.without(&[0]).det())
    }
}

fn assemble(base: GroupId, v1: &[i64], v2: &[i64], coupling: i64) -> CartanLike {
    let a = cartan_matrix(base).entries;
    let border = |i: usize, k: usize| -> i64 {
        match (i, k) {
            (0, 0) | (1, 1) => 2,
            (0, 1) | (1, 0) => coupling,
            (0, k) => v1[k - 2],
            (1, k) => v2[k - 2],
            _ => unreachable!(),
        }
    };
    let n = base.rank() + 2;
    let entries = Matrix::from_fn(n, n, |i, j| {
        if i < 2 {
            GoldenRat::from_int(border(i, j))
        } else if j < 2 {
            GoldenRat::from_int(border(j, i))
        } else {
            a[(i - 2, j - 2)].clone()
        }
    });
    let zero = base.node_label(0).replace('1', "0");
    let mut labels = vec![zero.clone(), format!("{zero}'")];
    labels.extend(base.node_labels());
    CartanLike { group: Some(base), kind: MatrixKind::Bordered, labels, entries, annotations: Vec::new() }
}

/// Integer adjugate and determinant of a crystallographic Cartan matrix.
fn integer_adjugate(base: GroupId) -> Result<(Vec<Vec<i64>>, i64)> {
    let a = cartan_matrix(base).entries;
    let to_int = |x: &GoldenRat| x.to_i64().filter(|_| x.is_integer()).ok_or(Error::Overflow("integer adjugate"));
    let d = to_int(&a.det())?;
    let adj = a.adjugate();
    let rows = (0..adj.rows())
        .map(|i| adj.row(i).iter().map(to_int).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok((rows, d))
}

fn quad(k: &[Vec<i64>], x: &[i64], y: &[i64]) -> i64 {
    let mut s = 0;
    for (i, xi) in x.iter().enumerate() {
        if *xi != 0 {
            for (j, yj) in y.iter().enumerate() {
                s += xi * k[i][j] * yj;
            }
        }
    }
    s
}

fn mask_vector(mask: u32, r: usize) -> Vec<i64> {
    (0..r).map(|i| if mask >> i & 1 == 1 { -1 } else { 0 }).collect()
}

/// All labelled simply-laced double extensions with `det = 0` where at
/// least one single new-node deletion is nonsingular.
///
/// Uses the Schur complement over the base: with `K = adj(A)`, `d = det A`
/// and `q_ij = v_i^T K v_j`, the full determinant vanishes iff
/// `(2d - q11)(2d - q22) = (c d - q12)^2`. Every hit is re-checked with the
/// exact determinant.
pub fn enumerate_double(base: GroupId) -> Result<Vec<DoubleExtension>> {
    if !base.is_crystallographic() {
        return Err(Error::Invalid(format!("{base} is not simply laced")));
    }
    let r = base.rank();
    let (k, d) = integer_adjugate(base)?;
    let masks: Vec<u32> = (0..1u32 << r).collect();
    let quads: Vec<i64> = masks
        .iter()
        .map(|&m| {
            let v = mask_vector(m, r);
            quad(&k, &v, &v)
        })
        .collect();
    let mut hits: Vec<(u32, u32, i64)> = masks
        .par_iter()
        .flat_map_iter(|&m1| {
            let v1 = mask_vector(m1, r);
            let (k, quads) = (&k, &quads);
            masks.iter().flat_map(move |&m2| {
                let v2 = mask_vector(m2, r);
                let (q11, q22) = (quads[m1 as usize], quads[m2 as usize]);
                let q12 = quad(k, &v1, &v2);
                let s11 = 2 * d - q11;
                let s22 = 2 * d - q22;
                [0i64, -1]
                    .into_iter()
                    .filter(move |&c| s11 * s22 == (c * d - q12).pow(2) && (s11 != 0 || s22 != 0))
                    .map(move |c| (m1, m2, c))
            })
        })
        .collect();
    hits.sort_unstable();
    hits.into_iter()
        .map(|(m1, m2, c)| {
            let ext = DoubleExtension::new(base, mask_vector(m1, r), mask_vector(m2, r), c)?;
            if !ext.full.entries.det().is_zero() {
                return Err(Error::Invalid("Schur test disagrees with the exact determinant".into()));
            }
            Ok(ext)
        })
        .collect()
}

/// Isomorphism class of double extensions under base diagram automorphisms
/// and the swap of the two new nodes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramClass {
    pub representative: DoubleExtension,
    /// Number of labelled matrices in the class.
    pub members: usize,
    pub has_disconnected_node: bool,
}

fn canonical_key(ext: &DoubleExtension, autos: &[Vec<usize>]) -> (Vec<i64>, Vec<i64>, i64) {
    let permute = |v: &[i64], p: &[usize]| {
        let mut out = vec![0; v.len()];
        for (i, &x) in v.iter().enumerate() {
            out[p[i]] = x;
        }
        out
    };
    autos
        .iter()
        .flat_map(|p| {
            let (a, b) = (permute(&ext.v1, p), permute(&ext.v2, p));
            [(a.clone(), b.clone(), ext.coupling), (b, a, ext.coupling)]
        })
        .min()
        .expect("identity automorphism")
}

/// Groups labelled matrices into diagram classes, in order of first member.
pub fn distinct_diagrams(exts: &[DoubleExtension]) -> Vec<DiagramClass> {
    let mut autos_by_base: BTreeMap<GroupId, Vec<Vec<usize>>> = BTreeMap::new();
    let mut order: Vec<(GroupId, (Vec<i64>, Vec<i64>, i64))> = Vec::new();
    let mut classes: BTreeMap<(GroupId, (Vec<i64>, Vec<i64>, i64)), DiagramClass> = BTreeMap::new();
    for ext in exts {
        let autos =
            autos_by_base.entry(ext.base).or_insert_with(|| diagram_automorphisms(&cartan_matrix(ext.base).entries));
        let key = (ext.base, canonical_key(ext, autos));
        classes.entry(key.clone()).and_modify(|c| c.members += 1).or_insert_with(|| {
            order.push(key);
            DiagramClass { representative: ext.clone(), members: 1, has_disconnected_node: ext.has_disconnected_node() }
        });
    }
    order.into_iter().map(|k| classes.remove(&k).expect("class recorded")).collect()
}

/// Per-root outcome of realising the new roots inside the base span.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelCheck {
    /// Coordinates over the base roots fixed by the links of each new root.
    pub coords: [Vec<GoldenRat>; 2],
    /// Each realised root has norm 2.
    pub norms_ok: [bool; 2],
    /// The realised roots have the prescribed mutual product.
    pub coupling_ok: bool,
}

impl KernelCheck {
    pub fn trivial(&self) -> bool {
        self.norms_ok[0] && self.norms_ok[1] && self.coupling_ok
    }
}

/// Solves `G c = g` for each new root and checks norms and coupling.
pub fn kernel_check(ext: &DoubleExtension) -> Result<KernelCheck> {
    let g = gram_matrix(ext.base).entries;
    let to_vec = |v: &[i64]| v.iter().map(|&x| GoldenRat::from_int(x)).collect::<Vec<_>>();
    let c1 = g.solve(&to_vec(&ext.v1))?;
    let c2 = g.solve(&to_vec(&ext.v2))?;
    let two = GoldenRat::from_int(2);
    let norms_ok = [g.bilinear(&c1, &c1) == two, g.bilinear(&c2, &c2) == two];
    let coupling_ok = g.bilinear(&c1, &c2) == GoldenRat::from_int(ext.coupling);
    Ok(KernelCheck { coords: [c1, c2], norms_ok, coupling_ok })
}

/// Both new roots can be realised in the base span with the right norms
/// and mutual product, i.e. the projection would have a trivial kernel.
pub fn kernel_trivial(ext: &DoubleExtension) -> Result<bool> {
    Ok(kernel_check(ext)?.trivial())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labelled_counts() {
        assert_eq!(enumerate_double(GroupId::A4).unwrap().len(), 6);
        assert_eq!(enumerate_double(GroupId::D6).unwrap().len(), 27);
    }

    #[test]
    fn a4_has_three_diagrams_one_with_an_isolated_node() {
        let exts = enumerate_double(GroupId::A4).unwrap();
        let classes = distinct_diagrams(&exts);
        assert_eq!(classes.len(), 3);
        assert_eq!(classes.iter().map(|c| c.members).sum::<usize>(), 6);
        assert_eq!(classes.iter().filter(|c| c.has_disconnected_node).count(), 1);
    }

    #[test]
    fn every_hit_is_degenerate_with_a_regular_deletion() {
        for ext in enumerate_double(GroupId::A4).unwrap() {
            assert!(ext.full.det().is_zero());
            let (a, b) = ext.single_deletion_dets();
            assert!(!a.is_zero() || !b.is_zero());
        }
    }

    #[test]
    fn schur_test_matches_brute_force_on_a4() {
        // oracle: exact determinant over every candidate
        let r = 4;
        let mut brute = Vec::new();
        for m1 in 0..16u32 {
            for m2 in 0..16u32 {
                for c in [0, -1] {
                    let ext = DoubleExtension::new(GroupId::A4, mask_vector(m1, r), mask_vector(m2, r), c).unwrap();
                    let (a, b) = ext.single_deletion_dets();
                    if ext.full.det().is_zero() && (!a.is_zero() || !b.is_zero()) {
                        brute.push((ext.v1.clone(), ext.v2.clone(), c));
                    }
                }
            }
        }
        brute.sort();
        let mut fast: Vec<_> =
            enumerate_double(GroupId::A4).unwrap().into_iter().map(|e| (e.v1, e.v2, e.coupling)).collect();
        fast.sort();
        assert_eq!(fast, brute);
    }

    #[test]
    fn no_double_extension_has_a_trivial_kernel() {
        for base in [GroupId::A4, GroupId::D6] {
            for ext in enumerate_double(base).unwrap() {
                assert!(!kernel_trivial(&ext).unwrap());
            }
        }
    }

    #[test]
    fn a4_roots_are_realisable_one_at_a_time_only() {
        // the affine node alone is the negative highest root
        for ext in enumerate_double(GroupId::A4).unwrap() {
            let check = kernel_check(&ext).unwrap();
            assert!(!check.trivial());
            if check.norms_ok[0] && check.norms_ok[1] {
                assert!(!check.coupling_ok);
            }
        }
    }

    #[test]
    fn rejects_non_simply_laced_entries() {
        assert!(DoubleExtension::new(GroupId::A4, vec![-2, 0, 0, 0], vec![0; 4], 0).is_err());
        assert!(enumerate_double(GroupId::H3).is_err());
    }
}
