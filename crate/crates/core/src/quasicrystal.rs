//! Quasicrystal fragments generated by an affine-extended H group.
//!
//! With translation `T: v -> v + alpha_0`, the shell `P(m)` collects the
//! images of the root system under group words containing `T` exactly `m`
//! times. Because every shell is invariant under the orbit group `W`, words
//! `w_m T ... w_1 T w_0` collapse to the recursion `P(m) = W (P(m-1) + alpha_0)`
//! with `P(0) = Phi`.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::affine::ExtensionRecord;
use crate::coxeter::{axis_vector, coxeter_group, gram_matrix, root_system, Axis, GroupId, RootVector};
use crate::error::{Error, Result};
use crate::golden::GoldenRat;
use crate::zt::{cmp_slices, Zt};

/// Upper bound on the bytes a single shell step may need.
pub const MEMORY_LIMIT: u128 = 4 << 30;

/// Points of rank at most 4, padded with zeros.
type Pt = [Zt; 4];

/// Translation `alpha_0 = length * axis vector`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranslationSpec {
    pub group: GroupId,
    pub axis: Axis,
    pub length: GoldenRat,
    /// Work in the Galois-conjugate frame (roots, group and axis conjugated).
    #[serde(default)]
    pub conjugate: bool,
}

impl TranslationSpec {
    pub fn new(group: GroupId, axis: Axis, length: GoldenRat) -> Self {
        TranslationSpec { group, axis, length, conjugate: false }
    }

    /// The translation of an induced or searched extension.
    pub fn from_record(rec: &ExtensionRecord) -> Self {
        TranslationSpec { group: rec.target, axis: rec.axis, length: rec.translation.clone(), conjugate: rec.conjugate }
    }

    /// `alpha_0` in simple-root coordinates of the working frame.
    pub fn affine_root(&self) -> Result<RootVector> {
        let mut u = axis_vector(self.group, self.axis)?;
        if self.conjugate {
            u = u.conj();
        }
        let a0 = u.scale(&self.length);
        if a0.is_zero() {
            return Err(Error::ZeroAffineRoot);
        }
        Ok(a0)
    }
}

/// Group whose orbits form the shells.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrbitGroup {
    /// Orientation-preserving elements.
    #[default]
    Rotations,
    Full,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cardinalities {
    /// `|P(m)|` for `m = 0..=n`.
    pub shells: Vec<usize>,
    /// `|Q(n)|`.
    pub union: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fragment {
    pub spec: TranslationSpec,
    pub orbit_group: OrbitGroup,
    pub n: usize,
    /// `P(0..=n)`, each sorted.
    pub shells: Vec<Vec<RootVector>>,
    /// `Q(n)`, sorted.
    pub union: Vec<RootVector>,
    pub cardinalities: Cardinalities,
}

/// `s_aff v = alpha_0 + v - 2 (alpha_0|v)/(alpha_0|alpha_0) alpha_0`.
pub fn affine_reflect(alpha0: &RootVector, v: &RootVector) -> Result<RootVector> {
    if alpha0.group != v.group {
        return Err(Error::GroupMismatch { expected: alpha0.group, found: v.group });
    }
    if alpha0.is_zero() {
        return Err(Error::ZeroAffineRoot);
    }
    let g = gram_matrix(v.group).entries;
    let k = &(&GoldenRat::from_int(2) * &g.bilinear(&alpha0.coords, &v.coords))
        / &g.bilinear(&alpha0.coords, &alpha0.coords);
    alpha0.add(v)?.sub(&alpha0.scale(&k))
}

/// Linear reflection in the hyperplane orthogonal to `alpha0`.
pub fn linear_reflect(alpha0: &RootVector, v: &RootVector) -> Result<RootVector> {
    let g = gram_matrix(v.group).entries;
    let n = g.bilinear(&alpha0.coords, &alpha0.coords);
    if n.is_zero() {
        return Err(Error::ZeroAffineRoot);
    }
    let k = &(&GoldenRat::from_int(2) * &g.bilinear(&alpha0.coords, &v.coords)) / &n;
    v.sub(&alpha0.scale(&k))
}

struct Frame {
    rank: usize,
    /// Common denominator of the stored points.
    den: i64,
    elements: Vec<Vec<Zt>>,
}

fn frame(spec: &TranslationSpec, orbit: OrbitGroup) -> Result<(Frame, Pt)> {
    let group = spec.group;
    if group.is_crystallographic() {
        return Err(Error::Invalid(format!("fragments are built for H groups, not {group}")));
    }
    let rank = group.rank();
    let a0 = spec.affine_root()?;
    let den = a0.coords.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.den()));
    let den = den.to_i64().ok_or(Error::Overflow("fragment denominator"))?;
    let w = coxeter_group(group)?;
    let conj = |z: Zt| if spec.conjugate { Zt { a: z.a + z.b, b: -z.b } } else { z };
    let elements = w
        .packed_elements(orbit == OrbitGroup::Rotations)
        .into_iter()
        .map(|m| m.iter().map(|&z| conj(z)).collect())
        .collect();
    let shift = to_point(&a0.coords, den)?;
    Ok((Frame { rank, den, elements }, shift))
}

fn to_point(coords: &[GoldenRat], den: i64) -> Result<Pt> {
    let mut p = [Zt::ZERO; 4];
    for (slot, x) in p.iter_mut().zip(coords) {
        *slot = Zt::from_golden(&(x * &GoldenRat::from_int(den))).ok_or(Error::Overflow("fragment point"))?;
    }
    Ok(p)
}

fn sorted(set: HashSet<Pt>) -> Vec<Pt> {
    let mut v: Vec<Pt> = set.into_iter().collect();
    v.sort_unstable_by(|x, y| cmp_slices(x, y));
    v
}

/// `W (prev + shift)`, deduplicated and sorted.
fn shell_step(f: &Frame, prev: &[Pt], shift: &Pt) -> Result<Vec<Pt>> {
    let mut shifted = HashSet::with_capacity(prev.len());
    for p in prev {
        let mut q = *p;
        for i in 0..f.rank {
            q[i] = q[i].add(shift[i])?;
        }
        shifted.insert(q);
    }
    let shifted = sorted(shifted);
    let estimate = (shifted.len() as u128) * (f.elements.len() as u128) * std::mem::size_of::<Pt>() as u128;
    if estimate > MEMORY_LIMIT {
        return Err(Error::MemoryEstimate { estimate, limit: MEMORY_LIMIT });
    }
    let n = f.rank;
    let set = f
        .elements
        .par_iter()
        .try_fold(HashSet::new, |mut acc, m| {
            for p in &shifted {
                let mut out = [Zt::ZERO; 4];
                crate::zt::mat_vec(m, &p[..n], &mut out[..n])?;
                acc.insert(out);
            }
            Ok::<_, Error>(acc)
        })
        .try_reduce(HashSet::new, |mut a, b| {
            if a.len() < b.len() {
                return Ok(b.into_iter().chain(a).collect());
            }
            a.extend(b);
            Ok(a)
        })?;
    Ok(sorted(set))
}

fn to_roots(group: GroupId, f: &Frame, pts: &[Pt]) -> Vec<RootVector> {
    pts.iter().map(|p| RootVector { group, coords: p[..f.rank].iter().map(|z| z.over(f.den)).collect() }).collect()
}

/// Shells `P(0..=n)` and their union, with orbits of the rotation subgroup.
pub fn generate_fragment(spec: &TranslationSpec, n: usize) -> Result<Fragment> {
    generate_fragment_with(spec, n, OrbitGroup::Rotations)
}

pub fn generate_fragment_with(spec: &TranslationSpec, n: usize, orbit: OrbitGroup) -> Result<Fragment> {
    let (f, shift) = frame(spec, orbit)?;
    let roots: Vec<GoldenRat> = root_system(spec.group)
        .iter()
        .flat_map(|r| r.coords.iter().map(|x| if spec.conjugate { x.conj() } else { x.clone() }))
        .collect();
    let mut p0 = HashSet::new();
    for r in roots.chunks(f.rank) {
        p0.insert(to_point(r, f.den)?);
    }
    let mut shells = vec![sorted(p0)];
    for _ in 0..n {
        let next = shell_step(&f, shells.last().expect("P(0)"), &shift)?;
        shells.push(next);
    }
    let union: HashSet<Pt> = shells.iter().flatten().copied().collect();
    let union = sorted(union);
    let cardinalities = Cardinalities { shells: shells.iter().map(Vec::len).collect(), union: union.len() };
    Ok(Fragment {
        spec: spec.clone(),
        orbit_group: orbit,
        n,
        shells: shells.iter().map(|s| to_roots(spec.group, &f, s)).collect(),
        union: to_roots(spec.group, &f, &union),
        cardinalities,
    })
}

/// `|P(1)|` alone, without converting points.
pub fn first_shell_size(spec: &TranslationSpec, orbit: OrbitGroup) -> Result<usize> {
    let (f, shift) = frame(spec, orbit)?;
    let mut p0 = HashSet::new();
    for r in root_system(spec.group).iter() {
        let c: Vec<GoldenRat> = r.coords.iter().map(|x| if spec.conjugate { x.conj() } else { x.clone() }).collect();
        p0.insert(to_point(&c, f.den)?);
    }
    Ok(shell_step(&f, &sorted(p0), &shift)?.len())
}

/// One row per length: `|P(1)|` for a translation by `|lambda|` along the
/// twofold axis, or `|Phi|` for `lambda = 0`.
pub fn cardinality_table(group: GroupId, lengths: &[GoldenRat]) -> Result<Vec<(GoldenRat, usize)>> {
    lengths
        .iter()
        .map(|l| {
            if l.is_zero() {
                return Ok((l.clone(), root_system(group).len()));
            }
            let spec = TranslationSpec::new(group, Axis::Twofold, l.abs());
            Ok((l.clone(), first_shell_size(&spec, OrbitGroup::Rotations)?))
        })
        .collect()
}

/// Lengths used to find the generic (maximal) first-shell size.
pub const GENERIC_LENGTHS: [(i64, i64); 2] = [(5, 7), (13, 11)];

/// `|P(1)|` for a generic translation along the axis of `spec`.
pub fn generic_first_shell(spec: &TranslationSpec) -> Result<usize> {
    let sizes = GENERIC_LENGTHS
        .iter()
        .map(|&(p, q)| {
            let s = TranslationSpec { length: GoldenRat::from_ratio(p, q), ..spec.clone() };
            first_shell_size(&s, OrbitGroup::Rotations)
        })
        .collect::<Result<Vec<_>>>()?;
    if sizes[0] != sizes[1] {
        return Err(Error::OracleDisagreement { first: sizes[0], second: sizes[1] });
    }
    Ok(sizes[0])
}

/// The first shell is smaller than for a generic length along the same axis.
pub fn is_distinguished(spec: &TranslationSpec) -> Result<bool> {
    let generic = generic_first_shell(spec)?;
    Ok(first_shell_size(spec, OrbitGroup::Rotations)? < generic)
}
