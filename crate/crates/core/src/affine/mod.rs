//! Affine (Kac-Moody-type) extensions: bordered Cartan matrices, their
//! search over the crystallographic bases, induction to the H groups
//! through the folding projections, classification and symmetrisation.
//!
//! A bordered matrix is `[[2, v^T], [w, A]]` with the affine node at index 0:
//! `v_i = 2(alpha_0|alpha_i)/(alpha_0|alpha_0)` and
//! `w_i = 2(alpha_i|alpha_0)/(alpha_i|alpha_i)`.

mod classify;
mod search;
mod symmetrise;

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::coxeter::{cartan_matrix, gram_matrix, CartanLike, GroupId, RootVector};
use crate::error::{Error, Result};
use crate::golden::GoldenRat;
use crate::matrix::Matrix;
use crate::projection::{assemble_bordered, bordered_from_root, project, ProjectionMap, Subspace};

pub use classify::{axis_constraint, classify, fibonacci_rescale, ExtensionRecord, FamilyReference, Quadruplet};
pub use search::{extend_affine_by_one, search_single_extensions, Border, SearchHit, DEFAULT_ENTRY_BOUND};
pub use symmetrise::{lift_transpose_project, symmetrise, symmetrised_ltp, Symmetrisation};

/// A base Cartan matrix bordered by one extra node at index 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BorderedCartan {
    pub base: GroupId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// Row 0 without the diagonal entry.
    pub v: Vec<GoldenRat>,
    /// Column 0 without the diagonal entry.
    pub w: Vec<GoldenRat>,
    /// The base block is the Galois conjugate of the Cartan matrix
    /// (simple roots of the perpendicular subspace).
    #[serde(default)]
    pub conjugate: bool,
}

impl BorderedCartan {
    pub fn new(base: GroupId, v: Vec<GoldenRat>, w: Vec<GoldenRat>) -> Result<Self> {
        let r = base.rank();
        if v.len() != r || w.len() != r {
            return Err(Error::Dimension(format!("{base} borders need {r} entries")));
        }
        Ok(BorderedCartan { base, name: None, v, w, conjugate: false })
    }

    pub fn from_ints(base: GroupId, v: &[i64], w: &[i64]) -> Result<Self> {
        let f = |x: &[i64]| x.iter().map(|&c| GoldenRat::from_int(c)).collect();
        Self::new(base, f(v), f(w))
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// Cartan block of the base in this frame.
    pub fn base_matrix(&self) -> Matrix {
        let a = cartan_matrix(self.base).entries;
        if self.conjugate {
            a.conj()
        } else {
            a
        }
    }

    fn base_gram(&self) -> Matrix {
        let g = gram_matrix(self.base).entries;
        if self.conjugate {
            g.conj()
        } else {
            g
        }
    }

    pub fn full(&self) -> CartanLike {
        let mut m = assemble_bordered(self.base, &self.base_matrix(), &self.v, &self.w);
        m.annotate();
        m
    }

    pub fn det(&self) -> GoldenRat {
        self.full().det()
    }

    /// Coordinates of `alpha_0` over the base simple roots of this frame,
    /// from `G c = w` and the consistency check `v = 2w/(c^T G c)`.
    pub fn affine_root(&self) -> Result<RootVector> {
        let g = self.base_gram();
        let c = g.solve(&self.w)?;
        let norm = g.bilinear(&c, &c);
        if norm.is_zero() {
            return Err(Error::ZeroAffineRoot);
        }
        let two = GoldenRat::from_int(2);
        for (vi, wi) in self.v.iter().zip(&self.w) {
            if *vi != &(&two * wi) / &norm {
                return Err(Error::NoAffineRoot(format!(
                    "row {} is not 2/{} times column {}",
                    fmt_vec(&self.v),
                    norm,
                    fmt_vec(&self.w)
                )));
            }
        }
        RootVector::new(self.base, c)
    }

    /// `|alpha_0|^2 / |alpha_i|^2` for the affine root of this border.
    pub fn length_sq_ratio(&self) -> Result<GoldenRat> {
        let a0 = self.affine_root()?;
        let n = self.base_gram().bilinear(&a0.coords, &a0.coords);
        Ok(&n / &GoldenRat::from_int(2))
    }
}

pub(crate) fn fmt_vec(v: &[GoldenRat]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

/// Coefficients of `-alpha_0` over the base simple roots.
pub fn decompose_affine_root(ext: &BorderedCartan) -> Result<RootVector> {
    if !ext.det().is_zero() {
        return Err(Error::NoAffineRoot("bordered matrix is not degenerate".into()));
    }
    Ok(ext.affine_root()?.scale(&GoldenRat::from_int(-1)))
}

/// Swaps row and column borders.
pub fn transpose(ext: &BorderedCartan) -> BorderedCartan {
    BorderedCartan {
        base: ext.base,
        name: ext.name.as_ref().map(|n| format!("{n}^T")),
        v: ext.w.clone(),
        w: ext.v.clone(),
        conjugate: ext.conjugate,
    }
}

/// Componentwise Galois conjugation, switching to the other subspace.
pub fn galois_conjugate_extension(ext: &BorderedCartan) -> BorderedCartan {
    let name = ext.name.as_ref().map(|n| match n.strip_prefix("Hbar") {
        Some(rest) => format!("H{rest}"),
        None => n.replacen('H', "Hbar", 1),
    });
    BorderedCartan {
        base: ext.base,
        name,
        v: ext.v.iter().map(GoldenRat::conj).collect(),
        w: ext.w.iter().map(GoldenRat::conj).collect(),
        conjugate: !ext.conjugate,
    }
}

/// Projects the affine root of a crystallographic extension and borders the
/// target Cartan matrix with it; the perpendicular subspace uses the
/// conjugate target basis.
pub fn induce(ext: &BorderedCartan, map: &ProjectionMap) -> Result<(BorderedCartan, ExtensionRecord)> {
    if ext.base != map.source {
        return Err(Error::GroupMismatch { expected: map.source, found: ext.base });
    }
    let alpha0 = ext.affine_root()?;
    let a0 = project(map, &alpha0)?;
    if a0.is_zero() {
        return Err(Error::ZeroAffineRoot);
    }
    let conjugate = map.subspace == Subspace::Perpendicular;
    let gram = {
        let g = gram_matrix(map.target).entries;
        if conjugate {
            g.conj()
        } else {
            g
        }
    };
    let full = bordered_from_root(map.target, &gram, &a0.coords)?;
    let r = map.target.rank();
    let v = full.entries.row(0)[1..=r].to_vec();
    let w = full.entries.column(0)[1..=r].to_vec();
    let name = ext.name.as_deref().and_then(|n| induced_name(n, map.subspace));
    let induced = BorderedCartan { base: map.target, name, v, w, conjugate };
    let record = classify(&induced)?;
    Ok((induced, record))
}

fn induced_name(source: &str, subspace: Subspace) -> Option<String> {
    let (group, kind) = source.split_at(2);
    let h = match group {
        "E8" => "4",
        "D6" => "3",
        "A4" => "2",
        _ => return None,
    };
    let prefix = if subspace == Subspace::Perpendicular { "Hbar" } else { "H" };
    Some(format!("{prefix}{h}{kind}"))
}

/// Names accepted by [`extension_by_name`].
pub const EXTENSION_NAMES: [&str; 15] = [
    "A4=", "D6<", "D6=", "D6>", "E8=", "H2=", "H3<", "H3=", "H3>", "H4=", "Hbar2=", "Hbar3<", "Hbar3=", "Hbar3>",
    "Hbar4=",
];

/// The five standard extensions, from the exhaustive search at the default bound.
pub fn standard_extensions() -> Result<Vec<BorderedCartan>> {
    static CACHE: OnceLock<Result<Vec<BorderedCartan>>> = OnceLock::new();
    CACHE
        .get_or_init(|| {
            let mut out = Vec::new();
            for base in [GroupId::A4, GroupId::D6, GroupId::E8] {
                let mut hits = search_single_extensions(base, DEFAULT_ENTRY_BOUND)?;
                hits.sort_by_key(|h| h.extension.name.clone());
                out.extend(hits.into_iter().map(|h| h.extension));
            }
            Ok(out)
        })
        .clone()
}

/// Looks up a standard or induced extension by its catalogue name.
pub fn extension_by_name(name: &str) -> Result<BorderedCartan> {
    let unknown = || Error::UnknownExtension { name: name.to_string(), known: EXTENSION_NAMES.join(", ") };
    let name = name.trim();
    if !EXTENSION_NAMES.contains(&name) {
        return Err(unknown());
    }
    if let Some(ext) = standard_extensions()?.into_iter().find(|e| e.name.as_deref() == Some(name)) {
        return Ok(ext);
    }
    let (subspace, rest) = match name.strip_prefix("Hbar") {
        Some(rest) => (Subspace::Perpendicular, rest),
        None => (Subspace::Parallel, &name[1..]),
    };
    let (digit, kind) = rest.split_at(1);
    let source = match digit {
        "4" => "E8",
        "3" => "D6",
        "2" => "A4",
        _ => return Err(unknown()),
    };
    let ext = extension_by_name(&format!("{source}{kind}"))?;
    let map = ProjectionMap::for_source(ext.base, subspace)?;
    Ok(induce(&ext, &map)?.0)
}

/// Which ring the entries of a matrix lie in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryRing {
    Integers,
    GoldenIntegers,
    GoldenRationals,
}

/// Outcome of [`is_kac_moody_extension`], one flag per condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KacMoodyCheck {
    pub diagonal_two: bool,
    pub ring: EntryRing,
    pub ring_ok: bool,
    /// Entries are in `Q[tau]` but not `Z[tau]` (accepted for H bases).
    pub rational_flag: bool,
    pub off_diagonal_nonpositive: bool,
    /// Signs were checked after conjugating back from the perpendicular frame.
    pub conjugate_embedding: bool,
    pub symmetric_zeros: bool,
    pub determinant_zero: bool,
    pub passed: bool,
}

/// Checks the four conditions: diagonal 2, entry ring (`Z` for A/D/E,
/// `Z[tau]` or flagged `Q[tau]` for H), non-positive off-diagonal entries
/// with symmetric zeros, and `det = 0`.
pub fn is_kac_moody_extension(m: &CartanLike) -> KacMoodyCheck {
    let e = &m.entries;
    let n = e.rows();
    let two = GoldenRat::from_int(2);
    let diagonal_two = e.is_square() && (0..n).all(|i| e[(i, i)] == two);
    let ring = if e.entries().all(GoldenRat::is_integer) {
        EntryRing::Integers
    } else if e.entries().all(GoldenRat::is_golden_integer) {
        EntryRing::GoldenIntegers
    } else {
        EntryRing::GoldenRationals
    };
    let crystallographic = m.group.map_or(false, GroupId::is_crystallographic);
    let ring_ok = if crystallographic { ring == EntryRing::Integers } else { true };
    let rational_flag = ring == EntryRing::GoldenRationals;
    let nonpositive =
        |f: &dyn Fn(&GoldenRat) -> GoldenRat| (0..n).all(|i| (0..n).all(|j| i == j || !f(&e[(i, j)]).is_positive()));
    let standard = nonpositive(&|x| x.clone());
    let conjugate_embedding = !standard && !crystallographic && nonpositive(&GoldenRat::conj);
    let off_diagonal_nonpositive = standard || conjugate_embedding;
    let symmetric_zeros = m.zero_pattern_symmetric();
    let determinant_zero = e.is_square() && e.det().is_zero();
    let passed = diagonal_two && ring_ok && off_diagonal_nonpositive && symmetric_zeros && determinant_zero;
    KacMoodyCheck {
        diagonal_two,
        ring,
        ring_ok,
        rational_flag,
        off_diagonal_nonpositive,
        conjugate_embedding,
        symmetric_zeros,
        determinant_zero,
        passed,
    }
}
