//! Simple-root data, reflections, root systems and reflection groups for
//! A4, D6, E8 and the non-crystallographic H2, H3, H4.
//!
//! Coordinates are always simple-root coordinates. The bilinear form is
//! normalised so every root has norm 2, which makes the Gram matrix equal
//! to the Cartan matrix for all six groups.

mod diagram;
mod embedding;
mod group;

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::golden::GoldenRat;
use crate::matrix::Matrix;

pub use diagram::{cartan_to_diagram, diagram_automorphisms, CoxeterDiagram, EdgeLabel};
pub use embedding::{axis_vector, cartesian_embedding, from_cartesian, to_cartesian, Axis};
pub use group::{generate_group, CoxeterGroup, GROUP_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupId {
    A4,
    D6,
    E8,
    H2,
    H3,
    H4,
}

impl GroupId {
    pub const ALL: [GroupId; 6] = [GroupId::A4, GroupId::D6, GroupId::E8, GroupId::H2, GroupId::H3, GroupId::H4];

    pub fn rank(self) -> usize {
        match self {
            GroupId::A4 | GroupId::H4 => 4,
            GroupId::D6 => 6,
            GroupId::E8 => 8,
            GroupId::H2 => 2,
            GroupId::H3 => 3,
        }
    }

    pub fn is_crystallographic(self) -> bool {
        matches!(self, GroupId::A4 | GroupId::D6 | GroupId::E8)
    }

    fn index(self) -> usize {
        self as usize
    }

    /// Node label, 0-based index: `alpha1..` for A/D/E, `a1..` for H.
    pub fn node_label(self, i: usize) -> String {
        if self.is_crystallographic() {
            format!("alpha{}", i + 1)
        } else {
            format!("a{}", i + 1)
        }
    }

    pub fn node_labels(self) -> Vec<String> {
        (0..self.rank()).map(|i| self.node_label(i)).collect()
    }

    pub fn name(self) -> &'static str {
        match self {
            GroupId::A4 => "A4",
            GroupId::D6 => "D6",
            GroupId::E8 => "E8",
            GroupId::H2 => "H2",
            GroupId::H3 => "H3",
            GroupId::H4 => "H4",
        }
    }
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GroupId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        GroupId::ALL
            .into_iter()
            .find(|g| g.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownGroup(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatrixKind {
    Cartan,
    Gram,
    Bordered,
}

/// Flags attached to bordered matrices that fall outside the usual
/// generalised-Cartan conventions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Annotation {
    PositiveOffDiagonal,
    FractionalEntries,
}

/// A square matrix with node labels: Cartan, Gram or bordered.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanLike {
    pub group: Option<GroupId>,
    pub kind: MatrixKind,
    pub labels: Vec<String>,
    pub entries: Matrix,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub annotations: Vec<Annotation>,
}

impl CartanLike {
    pub fn size(&self) -> usize {
        self.entries.rows()
    }

    pub fn det(&self) -> GoldenRat {
        self.entries.det()
    }

    pub fn zero_pattern_symmetric(&self) -> bool {
        let m = &self.entries;
        (0..m.rows()).all(|i| (0..i).all(|j| m[(i, j)].is_zero() == m[(j, i)].is_zero()))
    }

    /// Recomputes the nonstandard-entry flags from the entries.
    pub fn annotate(&mut self) {
        let m = &self.entries;
        let n = m.rows();
        let mut notes = Vec::new();
        if (0..n).any(|i| (0..n).any(|j| i != j && m[(i, j)].is_positive())) {
            notes.push(Annotation::PositiveOffDiagonal);
        }
        let integral = |x: &GoldenRat| x.is_golden_integer();
        if !m.entries().all(integral) {
            notes.push(Annotation::FractionalEntries);
        }
        self.annotations = notes;
    }
}

/// Coordinates of a vector over the simple roots of `group`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootVector {
    pub group: GroupId,
    pub coords: Vec<GoldenRat>,
}

impl RootVector {
    pub fn new(group: GroupId, coords: Vec<GoldenRat>) -> Result<Self> {
        if coords.len() != group.rank() {
            return Err(Error::Dimension(format!(
                "{group} vectors have {} coordinates, got {}",
                group.rank(),
                coords.len()
            )));
        }
        Ok(RootVector { group, coords })
    }

    pub fn from_ints(group: GroupId, coords: &[i64]) -> Result<Self> {
        Self::new(group, coords.iter().map(|&c| GoldenRat::from_int(c)).collect())
    }

    pub fn zero(group: GroupId) -> Self {
        RootVector { group, coords: vec![GoldenRat::zero(); group.rank()] }
    }

    /// The `i`-th simple root (0-based).
    pub fn simple(group: GroupId, i: usize) -> Result<Self> {
        let rank = group.rank();
        if i >= rank {
            return Err(Error::IndexOutOfRange { index: i, rank });
        }
        let mut v = Self::zero(group);
        v.coords[i] = GoldenRat::one();
        Ok(v)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(GoldenRat::is_zero)
    }

    pub fn scale(&self, k: &GoldenRat) -> Self {
        RootVector { group: self.group, coords: self.coords.iter().map(|c| c * k).collect() }
    }

    pub fn conj(&self) -> Self {
        RootVector { group: self.group, coords: self.coords.iter().map(GoldenRat::conj).collect() }
    }

    pub fn add(&self, other: &RootVector) -> Result<Self> {
        self.check_same(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        Ok(RootVector { group: self.group, coords })
    }

    pub fn sub(&self, other: &RootVector) -> Result<Self> {
        self.add(&other.scale(&GoldenRat::from_int(-1)))
    }

    /// `(self | other)` under the norm-2 Gram form.
    pub fn inner(&self, other: &RootVector) -> Result<GoldenRat> {
        self.check_same(other)?;
        Ok(gram_matrix(self.group).entries.bilinear(&self.coords, &other.coords))
    }

    pub fn norm_sq(&self) -> GoldenRat {
        gram_matrix(self.group).entries.bilinear(&self.coords, &self.coords)
    }

    /// True when all coordinates are `>= 0`.
    pub fn is_nonnegative(&self) -> bool {
        self.coords.iter().all(|c| !c.is_negative())
    }

    fn check_same(&self, other: &RootVector) -> Result<()> {
        if self.group != other.group {
            return Err(Error::GroupMismatch { expected: self.group, found: other.group });
        }
        Ok(())
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "{}({})", self.group, parts.join(", "))
    }
}

fn edges(group: GroupId) -> Vec<(usize, usize, GoldenRat)> {
    let one = || GoldenRat::from_int(-1);
    let tau = || -GoldenRat::tau();
    let chain = |n: usize| (0..n - 1).map(|i| (i, i + 1, one())).collect::<Vec<_>>();
    match group {
        GroupId::A4 => chain(4),
        GroupId::D6 => {
            let mut e = chain(5);
            e.push((3, 5, one()));
            e
        }
        GroupId::E8 => {
            let mut e = chain(7);
            e.push((4, 7, one()));
            e
        }
        GroupId::H2 => vec![(0, 1, tau())],
        GroupId::H3 => vec![(0, 1, one()), (1, 2, tau())],
        GroupId::H4 => vec![(0, 1, one()), (1, 2, one()), (2, 3, tau())],
    }
}

/// Cartan matrix in the fixed node labelling: E8 is the chain 1..7 with
/// node 8 on node 5, D6 the chain 1..5 with node 6 on node 4, and the
/// label-5 edge of H2/H3/H4 sits at the end of the chain.
pub fn cartan_matrix(group: GroupId) -> CartanLike {
    let n = group.rank();
    let mut m = Matrix::from_fn(n, n, |i, j| if i == j { GoldenRat::from_int(2) } else { GoldenRat::zero() });
    for (i, j, x) in edges(group) {
        m[(i, j)] = x.clone();
        m[(j, i)] = x;
    }
    CartanLike {
        group: Some(group),
        kind: MatrixKind::Cartan,
        labels: group.node_labels(),
        entries: m,
        annotations: Vec::new(),
    }
}

/// Gram matrix `(alpha_i | alpha_j)` with all roots of norm 2.
pub fn gram_matrix(group: GroupId) -> CartanLike {
    static CACHE: [OnceLock<CartanLike>; 6] = [const { OnceLock::new() }; 6];
    CACHE[group.index()].get_or_init(|| CartanLike { kind: MatrixKind::Gram, ..cartan_matrix(group) }).clone()
}

/// Simple reflection `s_i`: only coordinate `i` changes,
/// `c_i -> c_i - sum_j A_ij c_j`.
pub fn reflect(i: usize, v: &RootVector) -> Result<RootVector> {
    let rank = v.group.rank();
    if i >= rank {
        return Err(Error::IndexOutOfRange { index: i, rank });
    }
    let a = cartan_matrix(v.group).entries;
    let mut out = v.clone();
    out.coords[i] = reflect_coord(&a, i, &v.coords);
    Ok(out)
}

fn reflect_coord(a: &Matrix, i: usize, c: &[GoldenRat]) -> GoldenRat {
    let s: GoldenRat = a.row(i).iter().zip(c).filter(|(x, y)| !x.is_zero() && !y.is_zero()).map(|(x, y)| x * y).sum();
    &c[i] - &s
}

const ROOT_CAP: usize = 100_000;

/// Closure of the simple roots under all simple reflections, sorted.
pub fn generate_root_system(group: GroupId) -> Result<Vec<RootVector>> {
    let a = cartan_matrix(group).entries;
    let rank = group.rank();
    let mut seen = std::collections::BTreeSet::new();
    let mut frontier: Vec<Vec<GoldenRat>> =
        (0..rank).map(|i| RootVector::simple(group, i).expect("in range").coords).collect();
    for f in &frontier {
        seen.insert(f.clone());
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for c in &frontier {
            for i in 0..rank {
                let mut r = c.clone();
                r[i] = reflect_coord(&a, i, c);
                if seen.insert(r.clone()) {
                    next.push(r);
                }
            }
        }
        if seen.len() > ROOT_CAP {
            return Err(Error::CapExceeded { cap: ROOT_CAP });
        }
        frontier = next;
    }
    Ok(seen.into_iter().map(|coords| RootVector { group, coords }).collect())
}

/// Cached root system.
pub fn root_system(group: GroupId) -> Arc<Vec<RootVector>> {
    static CACHE: [OnceLock<Arc<Vec<RootVector>>>; 6] = [const { OnceLock::new() }; 6];
    CACHE[group.index()].get_or_init(|| Arc::new(generate_root_system(group).expect("finite root system"))).clone()
}

/// Cached reflection group.
pub fn coxeter_group(group: GroupId) -> Result<Arc<CoxeterGroup>> {
    static CACHE: [OnceLock<Result<Arc<CoxeterGroup>>>; 6] = [const { OnceLock::new() }; 6];
    CACHE[group.index()].get_or_init(|| generate_group(group).map(Arc::new)).clone()
}

/// The root whose coordinates dominate every other root componentwise.
pub fn highest_root(group: GroupId) -> RootVector {
    let roots = root_system(group);
    let dominates = |r: &RootVector| roots.iter().all(|s| r.coords.iter().zip(&s.coords).all(|(x, y)| x >= y));
    roots.iter().find(|r| dominates(r)).cloned().expect("finite irreducible root systems have a highest root")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tau() -> GoldenRat {
        GoldenRat::tau()
    }

    #[test]
    fn root_system_sizes() {
        let sizes: Vec<usize> = GroupId::ALL.iter().map(|&g| root_system(g).len()).collect();
        assert_eq!(sizes, vec![20, 60, 240, 10, 30, 120]);
    }

    #[test]
    fn cartan_examples() {
        let h4 = cartan_matrix(GroupId::H4).entries;
        assert_eq!(h4[(0, 1)], GoldenRat::from_int(-1));
        assert_eq!(h4[(1, 2)], GoldenRat::from_int(-1));
        assert_eq!(h4[(2, 3)], -tau());
        let h2 = cartan_matrix(GroupId::H2).entries;
        assert_eq!(h2, Matrix::from_rows(vec![vec![2.into(), -tau()], vec![-tau(), 2.into()]]).unwrap());
        let a4 = cartan_matrix(GroupId::A4).entries;
        assert_eq!(a4, Matrix::from_i64(&[&[2, -1, 0, 0], &[-1, 2, -1, 0], &[0, -1, 2, -1], &[0, 0, -1, 2]]));
    }

    #[test]
    fn gram_is_cartan_and_e8_unimodular() {
        for g in GroupId::ALL {
            assert_eq!(gram_matrix(g).entries, cartan_matrix(g).entries);
            assert!(gram_matrix(g).entries.is_symmetric());
        }
        assert_eq!(gram_matrix(GroupId::E8).entries.det(), GoldenRat::one());
    }

    #[test]
    fn reflection_basics() {
        let a1 = RootVector::simple(GroupId::E8, 0).unwrap();
        assert_eq!(reflect(0, &a1).unwrap(), a1.scale(&GoldenRat::from_int(-1)));
        assert!(reflect(8, &a1).is_err());
    }

    #[test]
    fn highest_roots() {
        let h2 = highest_root(GroupId::H2);
        assert_eq!(h2.coords, vec![tau(), tau()]);
        let e8 = highest_root(GroupId::E8);
        assert_eq!(e8, RootVector::from_ints(GroupId::E8, &[2, 3, 4, 5, 6, 4, 2, 3]).unwrap());
        let d6 = highest_root(GroupId::D6);
        assert_eq!(d6, RootVector::from_ints(GroupId::D6, &[1, 2, 2, 2, 1, 1]).unwrap());
        let a4 = highest_root(GroupId::A4);
        assert_eq!(a4, RootVector::from_ints(GroupId::A4, &[1, 1, 1, 1]).unwrap());
    }

    #[test]
    fn roots_closed_and_reduced() {
        for g in GroupId::ALL {
            let roots = root_system(g);
            let set: std::collections::BTreeSet<_> = roots.iter().cloned().collect();
            for r in roots.iter() {
                assert_eq!(r.norm_sq(), GoldenRat::from_int(2));
                assert!(set.contains(&r.scale(&GoldenRat::from_int(-1))));
                for i in 0..g.rank() {
                    assert!(set.contains(&reflect(i, r).unwrap()));
                }
                // all coordinates share a sign
                assert!(r.is_nonnegative() || r.scale(&GoldenRat::from_int(-1)).is_nonnegative());
            }
            // no multiples other than +-1: two roots with a rational-or-golden
            // ratio are parallel iff their inner product is +-2
            for (i, r) in roots.iter().enumerate() {
                for s in roots.iter().skip(i + 1) {
                    let ip = r.inner(s).unwrap();
                    if ip.abs() == GoldenRat::from_int(2) {
                        assert_eq!(*s, r.scale(&GoldenRat::from_int(-1)));
                    }
                }
            }
        }
    }

    #[test]
    fn group_names_parse() {
        assert_eq!("e8".parse::<GroupId>().unwrap(), GroupId::E8);
        assert!("B3".parse::<GroupId>().is_err());
    }
}
