//! Folding projections E8 -> H4, D6 -> H3, A4 -> H2 and their inverse lift.
//!
//! Each target simple root `a_i` comes from a pair of source nodes
//! `(p, q)`: the source coefficient on `p` contributes `1`, the one on `q`
//! contributes `tau` (parallel subspace) or `sigma` (perpendicular subspace).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::coxeter::{cartan_matrix, gram_matrix, CartanLike, GroupId, MatrixKind, RootVector};
use crate::error::{Error, Result};
use crate::golden::GoldenRat;
use crate::matrix::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Subspace {
    Parallel,
    Perpendicular,
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Subspace::Parallel => "par",
            Subspace::Perpendicular => "perp",
        })
    }
}

impl FromStr for Subspace {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "par" | "parallel" => Ok(Subspace::Parallel),
            "perp" | "perpendicular" => Ok(Subspace::Perpendicular),
            other => Err(Error::Parse { input: other.into(), reason: "expected par or perp".into() }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectionMap {
    pub source: GroupId,
    pub target: GroupId,
    /// `pairs[i] = (plain node, tau node)` feeding target root `i` (0-based).
    pub pairs: Vec<(usize, usize)>,
    pub subspace: Subspace,
}

impl ProjectionMap {
    pub fn with_subspace(&self, subspace: Subspace) -> Self {
        ProjectionMap { subspace, ..self.clone() }
    }

    /// The map whose source is `source` (A4, D6 or E8).
    pub fn for_source(source: GroupId, subspace: Subspace) -> Result<Self> {
        derive_maps()
            .into_iter()
            .find(|m| m.source == source)
            .map(|m| m.with_subspace(subspace))
            .ok_or_else(|| Error::Invalid(format!("{source} is not a folding source")))
    }

    /// The map whose target is `target` (H2, H3 or H4).
    pub fn for_target(target: GroupId, subspace: Subspace) -> Result<Self> {
        derive_maps()
            .into_iter()
            .find(|m| m.target == target)
            .map(|m| m.with_subspace(subspace))
            .ok_or_else(|| Error::Invalid(format!("{target} is not a folding target")))
    }

    /// Multiplier carried by the second node of each pair.
    fn partner(&self) -> GoldenRat {
        match self.subspace {
            Subspace::Parallel => GoldenRat::tau(),
            Subspace::Perpendicular => GoldenRat::sigma(),
        }
    }
}

/// E8 -> H4 pairing, 0-based: (1,7), (2,6), (3,5), (8,4) in node labels.
const E8_PAIRS: [(usize, usize); 4] = [(0, 6), (1, 5), (2, 4), (7, 3)];

/// D6 labels of the surviving E8 nodes 2, 3, 4, 5, 6, 8: the chain keeps its
/// order, E8 node 8 becomes the chain end 5 and E8 node 6 the branch node 6.
const D6_RELABEL: [usize; 6] = [0, 1, 2, 3, 5, 4];

/// The three folding maps (parallel subspace). D6 -> H3 and A4 -> H2 are
/// obtained by deleting E8 nodes and restricting the E8 -> H4 pairing.
pub fn derive_maps() -> Vec<ProjectionMap> {
    let e8 = ProjectionMap {
        source: GroupId::E8,
        target: GroupId::H4,
        pairs: E8_PAIRS.to_vec(),
        subspace: Subspace::Parallel,
    };
    let d6 = restrict(&e8, &[0, 6], Some(&D6_RELABEL), GroupId::D6, GroupId::H3).expect("D6 sits inside E8");
    let a4 = restrict(&e8, &[0, 1, 5, 6], None, GroupId::A4, GroupId::H2).expect("A4 sits inside E8");
    vec![e8, d6, a4]
}

/// Deletes E8 nodes, relabels survivors (by `relabel` if given, else by the
/// first isomorphism onto the source Cartan matrix), and keeps pairs whose
/// nodes both survive.
fn restrict(
    e8: &ProjectionMap,
    deleted: &[usize],
    relabel: Option<&[usize]>,
    source: GroupId,
    target: GroupId,
) -> Result<ProjectionMap> {
    let survivors: Vec<usize> = (0..8).filter(|i| !deleted.contains(i)).collect();
    let sub = cartan_matrix(GroupId::E8).entries.submatrix(&survivors);
    let base = cartan_matrix(source).entries;
    let relabel = match relabel {
        Some(r) => {
            let ok = (0..r.len()).all(|i| (0..r.len()).all(|j| base[(r[i], r[j])] == sub[(i, j)]));
            if !ok {
                return Err(Error::Invalid(format!("relabelling is not an isomorphism onto {source}")));
            }
            r.to_vec()
        }
        None => {
            first_isomorphism(&sub, &base).ok_or_else(|| Error::Invalid(format!("no embedding of {source} found")))?
        }
    };
    let new_index = |e8_node: usize| survivors.iter().position(|&s| s == e8_node).map(|k| relabel[k]);
    let mut pairs = Vec::new();
    for &(p, q) in &e8.pairs {
        match (new_index(p), new_index(q)) {
            (Some(np), Some(nq)) => pairs.push((np, nq)),
            (None, None) => {}
            _ => return Err(Error::Invalid("deletion splits a folding pair".into())),
        }
    }
    if pairs.len() != target.rank() {
        return Err(Error::Invalid(format!("restriction leaves {} pairs", pairs.len())));
    }
    Ok(ProjectionMap { source, target, pairs, subspace: e8.subspace })
}

/// Lexicographically first bijection `f` with `b[f(i)][f(j)] = a[i][j]`.
fn first_isomorphism(a: &Matrix, b: &Matrix) -> Option<Vec<usize>> {
    fn go(a: &Matrix, b: &Matrix, f: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let i = f.len();
        if i == a.rows() {
            return true;
        }
        for c in 0..b.rows() {
            if used[c] || b[(c, c)] != a[(i, i)] {
                continue;
            }
            if (0..i).all(|j| b[(c, f[j])] == a[(i, j)] && b[(f[j], c)] == a[(j, i)]) {
                f.push(c);
                used[c] = true;
                if go(a, b, f, used) {
                    return true;
                }
                used[c] = false;
                f.pop();
            }
        }
        false
    }
    if a.rows() != b.rows() {
        return None;
    }
    let mut f = Vec::new();
    let mut used = vec![false; b.rows()];
    go(a, b, &mut f, &mut used).then_some(f)
}

/// Projects source coordinates onto the target simple roots.
pub fn project(map: &ProjectionMap, v: &RootVector) -> Result<RootVector> {
    if v.group != map.source {
        return Err(Error::GroupMismatch { expected: map.source, found: v.group });
    }
    let t = map.partner();
    let coords = map.pairs.iter().map(|&(p, q)| &v.coords[p] + &(&t * &v.coords[q])).collect();
    RootVector::new(map.target, coords)
}

/// Inverse of [`project`]: splits each target coefficient `x + y*tau`
/// (or `x' + y'*sigma`) into plain and partner parts.
pub fn lift(map: &ProjectionMap, v: &RootVector) -> Result<RootVector> {
    if v.group != map.target {
        return Err(Error::GroupMismatch { expected: map.target, found: v.group });
    }
    let mut out = RootVector::zero(map.source);
    for (&(p, q), c) in map.pairs.iter().zip(&v.coords) {
        // a + b tau = (a + b) - b sigma
        let c = match map.subspace {
            Subspace::Parallel => c.clone(),
            Subspace::Perpendicular => c.conj(),
        };
        let (x, y) = c.parts();
        out.coords[p] = GoldenRat::from_rational(&x);
        out.coords[q] = GoldenRat::from_rational(&y);
    }
    Ok(out)
}

/// Bordered `(rank + 1)` matrix of the source group for an affine root
/// `alpha_0` given in target coordinates. Row 0 holds
/// `2(alpha_0|alpha_i)/(alpha_0|alpha_0)`, column 0 holds
/// `2(alpha_i|alpha_0)/(alpha_i|alpha_i)`.
pub fn lift_bordered(map: &ProjectionMap, affine_root: &RootVector) -> Result<CartanLike> {
    let lifted = lift(map, affine_root)?;
    let gram = gram_matrix(map.source).entries;
    bordered_from_root(map.source, &gram, &lifted.coords)
}

/// Bordered matrix for an extra root with coordinates `c` against a base
/// with Gram matrix `gram` (simple roots of norm 2).
pub(crate) fn bordered_from_root(base: GroupId, gram: &Matrix, c: &[GoldenRat]) -> Result<CartanLike> {
    let g = gram.mul_vec(c);
    let norm = gram.bilinear(c, c);
    if norm.is_zero() {
        return Err(Error::ZeroAffineRoot);
    }
    let two = GoldenRat::from_int(2);
    let v: Vec<GoldenRat> = g.iter().map(|x| &(&two * x) / &norm).collect();
    let w: Vec<GoldenRat> = g;
    let mut cl = assemble_bordered(base, gram, &v, &w);
    cl.annotate();
    Ok(cl)
}

/// `[[2, v^T], [w, base]]` with the affine node first.
pub(crate) fn assemble_bordered(base: GroupId, base_matrix: &Matrix, v: &[GoldenRat], w: &[GoldenRat]) -> CartanLike {
    let n = base_matrix.rows();
    let entries = Matrix::from_fn(n + 1, n + 1, |i, j| match (i, j) {
        (0, 0) => GoldenRat::from_int(2),
        (0, j) => v[j - 1].clone(),
        (i, 0) => w[i - 1].clone(),
        (i, j) => base_matrix[(i - 1, j - 1)].clone(),
    });
    let mut labels = vec![base.node_label(0).replace('1', "0")];
    labels.extend(base.node_labels());
    CartanLike { group: Some(base), kind: MatrixKind::Bordered, labels, entries, annotations: Vec::new() }
}
