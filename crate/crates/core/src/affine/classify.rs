//! Fibonacci classification of single-axis affine extensions of H groups.
//!
//! A single-axis border has `v = x * g/g_p` and `w = y * g/g_p`, where
//! `g = G u` for the axis vector `u` and `p` is the first node with
//! `g_p != 0`. The determinant constraint fixes `xy`. Writing
//! `x = gamma (a + b tau)` and `y = delta (c + d tau)` with rational
//! multipliers and coprime integer pairs, solutions of one constraint form
//! families `x = tau^k x_ref`, `y = tau^-k y_ref`.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{fmt_vec, BorderedCartan};
use crate::coxeter::{axis_vector, gram_matrix, Axis, GroupId, RootVector};
use crate::error::{Error, Result};
use crate::golden::{tau_pow, GoldenInt, GoldenRat};

/// Integer part `(a, b; c, d)` of a solution `(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Quadruplet {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl Quadruplet {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Quadruplet { a: a.into(), b: b.into(), c: c.into(), d: d.into() }
    }

    /// `x -> x/tau`, `y -> tau y`: `(a, b; c, d) -> (b - a, a; d, c + d)`.
    pub fn step(&self) -> Self {
        Quadruplet { a: &self.b - &self.a, b: self.a.clone(), c: self.d.clone(), d: &self.c + &self.d }
    }

    /// Inverse of [`Quadruplet::step`].
    pub fn step_back(&self) -> Self {
        Quadruplet { a: self.b.clone(), b: &self.a + &self.b, c: &self.d - &self.c, d: self.c.clone() }
    }

    pub fn x_part(&self) -> GoldenRat {
        GoldenInt::new(self.a.clone(), self.b.clone()).into()
    }

    pub fn y_part(&self) -> GoldenRat {
        GoldenInt::new(self.c.clone(), self.d.clone()).into()
    }
}

impl fmt::Display for Quadruplet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}; {}, {})", self.a, self.b, self.c, self.d)
    }
}

/// Reference solution of a Fibonacci family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyReference {
    /// `(1, -1; 1, -1)`, the symmetric solution.
    Symmetric,
    /// `(1, -2; 1, -1)`.
    FivefoldRow,
    /// `(1, -1; 1, -2)`, the transposed five-fold family.
    FivefoldColumn,
}

impl FamilyReference {
    pub fn quadruplet(self) -> Quadruplet {
        match self {
            FamilyReference::Symmetric => Quadruplet::new(1, -1, 1, -1),
            FamilyReference::FivefoldRow => Quadruplet::new(1, -2, 1, -1),
            FamilyReference::FivefoldColumn => Quadruplet::new(1, -1, 1, -2),
        }
    }
}

/// Classification data of a single-axis affine extension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub target: GroupId,
    pub axis: Axis,
    /// The matrix lives in the conjugate (perpendicular) frame; the family
    /// data below are those of its Galois conjugate.
    pub conjugate: bool,
    pub v: Vec<GoldenRat>,
    pub w: Vec<GoldenRat>,
    pub x: GoldenRat,
    pub y: GoldenRat,
    pub reference: FamilyReference,
    pub quadruplet: Quadruplet,
    pub k: i64,
    /// `(gamma, delta)`, both rational.
    pub multipliers: (GoldenRat, GoldenRat),
    /// `alpha_0` over the simple roots of the matrix's frame.
    pub affine_root: RootVector,
    /// `mu` with `alpha_0 = mu * axis vector` (in the matrix's frame).
    pub translation: GoldenRat,
    /// `|alpha_0|^2 / |a_i|^2`, equal to `y / x`.
    pub length_sq_ratio: GoldenRat,
}

impl ExtensionRecord {
    pub fn to_bordered(&self) -> BorderedCartan {
        BorderedCartan {
            base: self.target,
            name: self.name.clone(),
            v: self.v.clone(),
            w: self.w.clone(),
            conjugate: self.conjugate,
        }
    }

    pub fn xy(&self) -> GoldenRat {
        &self.x * &self.y
    }
}

/// Required product `xy` for a border along `axis`.
pub fn axis_constraint(target: GroupId, axis: Axis) -> Result<GoldenRat> {
    let unsupported = || Error::UnsupportedAxis { group: target, axis: axis.to_string() };
    match (target, axis) {
        (GroupId::H2 | GroupId::H3 | GroupId::H4, Axis::Twofold) => Ok(GoldenRat::new(2, -1, 1)),
        (GroupId::H3, Axis::Threefold) => Ok(GoldenRat::new(8, -4, 3)),
        (GroupId::H3, Axis::Fivefold) => Ok(GoldenRat::new(12, -4, 5)),
        _ => Err(unsupported()),
    }
}

fn axes_for(target: GroupId) -> &'static [Axis] {
    match target {
        GroupId::H3 => &[Axis::Twofold, Axis::Threefold, Axis::Fivefold],
        GroupId::H2 | GroupId::H4 => &[Axis::Twofold],
        _ => &[],
    }
}

/// Unit direction pattern `g / g_p` of an axis, with `p` its first support.
fn axis_pattern(target: GroupId, axis: Axis) -> Result<(usize, Vec<GoldenRat>)> {
    let u = axis_vector(target, axis)?;
    let g = gram_matrix(target).entries.mul_vec(&u.coords);
    let p = g.iter().position(|x| !x.is_zero()).ok_or(Error::ZeroAffineRoot)?;
    let gp = g[p].clone();
    Ok((p, g.iter().map(|x| x / &gp).collect()))
}

/// Identifies axis, family, `k` and multipliers of a single-axis border.
pub fn classify(ext: &BorderedCartan) -> Result<ExtensionRecord> {
    let target = ext.base;
    if target.is_crystallographic() {
        return Err(Error::Invalid(format!("{target} is not a non-crystallographic group")));
    }
    // family data are read in the standard frame
    let (sv, sw): (Vec<GoldenRat>, Vec<GoldenRat>) = if ext.conjugate {
        (ext.v.iter().map(GoldenRat::conj).collect(), ext.w.iter().map(GoldenRat::conj).collect())
    } else {
        (ext.v.clone(), ext.w.clone())
    };
    let mut found = None;
    for &axis in axes_for(target) {
        let (p, pat) = axis_pattern(target, axis)?;
        let x = sv[p].clone();
        let y = sw[p].clone();
        let fits = |vec: &[GoldenRat], s: &GoldenRat| vec.iter().zip(&pat).all(|(e, q)| *e == s * q);
        if !x.is_zero() && !y.is_zero() && fits(&sv, &x) && fits(&sw, &y) {
            found = Some((axis, x, y));
            break;
        }
    }
    let (axis, x, y) =
        found.ok_or_else(|| Error::NotSingleAxis(format!("v = {}, w = {}", fmt_vec(&ext.v), fmt_vec(&ext.w))))?;
    let constraint = axis_constraint(target, axis)?;
    if &x * &y != constraint {
        return Err(Error::NotInFamily(format!("xy = {} but the {axis} constraint is {constraint}", &x * &y)));
    }
    let (gamma, a, b) = x.primitive_split();
    let (delta, c, d) = y.primitive_split();
    let quadruplet = Quadruplet { a, b, c, d };
    let refs: &[FamilyReference] = match axis {
        Axis::Fivefold => &[FamilyReference::FivefoldRow, FamilyReference::FivefoldColumn],
        _ => &[FamilyReference::Symmetric],
    };
    let (reference, k) =
        refs.iter().find_map(|&r| family_index(&quadruplet, &r.quadruplet()).map(|k| (r, k))).ok_or_else(|| {
            Error::NotInFamily(format!("quadruplet {quadruplet} is not a tau-power rescaling of a reference"))
        })?;

    let affine_root = ext.affine_root()?;
    let mut u = axis_vector(target, axis)?;
    if ext.conjugate {
        u = u.conj();
    }
    let translation = proportionality(&affine_root, &u)
        .ok_or_else(|| Error::NotSingleAxis("affine root is not along the axis".into()))?;
    let length_sq_ratio = ext.length_sq_ratio()?;
    Ok(ExtensionRecord {
        name: ext.name.clone(),
        target,
        axis,
        conjugate: ext.conjugate,
        v: ext.v.clone(),
        w: ext.w.clone(),
        x: ext.v[first_support(&ext.v)].clone(),
        y: ext.w[first_support(&ext.w)].clone(),
        reference,
        quadruplet,
        k,
        multipliers: (GoldenRat::from_rational(&gamma), GoldenRat::from_rational(&delta)),
        affine_root,
        translation,
        length_sq_ratio,
    })
}

fn first_support(v: &[GoldenRat]) -> usize {
    v.iter().position(|x| !x.is_zero()).unwrap_or(0)
}

/// `k` with `a + b tau = tau^k (a_r + b_r tau)` and
/// `c + d tau = tau^-k (c_r + d_r tau)`.
fn family_index(q: &Quadruplet, r: &Quadruplet) -> Option<i64> {
    let ux = &q.x_part() / &r.x_part();
    let k = unit_exponent(&ux)?;
    (q.y_part() == &tau_pow(-k) * &r.y_part()).then_some(k)
}

/// `k` with `u = tau^k`, if any.
fn unit_exponent(u: &GoldenRat) -> Option<i64> {
    if !u.is_golden_integer() || !u.is_positive() || !u.numer().is_unit() {
        return None;
    }
    let approx = (u.to_f64().ln() / GoldenRat::tau().to_f64().ln()).round() as i64;
    (tau_pow(approx) == *u).then_some(approx)
}

/// `mu` with `a = mu * b`, if the vectors are parallel.
fn proportionality(a: &RootVector, b: &RootVector) -> Option<GoldenRat> {
    let p = b.coords.iter().position(|x| !x.is_zero())?;
    let mu = &a.coords[p] / &b.coords[p];
    (b.scale(&mu) == *a).then_some(mu)
}

/// Moves `steps` places along the Fibonacci family:
/// `(x, y) -> (tau^-s x, tau^s y)`, one quadruplet step per unit of `s`.
/// `k` is defined by `x = tau^k x_ref`, so it decreases by `s`.
pub fn fibonacci_rescale(rec: &ExtensionRecord, steps: i64) -> ExtensionRecord {
    let mut q = rec.quadruplet.clone();
    for _ in 0..steps.unsigned_abs() {
        q = if steps > 0 { q.step() } else { q.step_back() };
    }
    let down = if rec.conjugate { tau_pow(-steps).conj() } else { tau_pow(-steps) };
    let up = if rec.conjugate { tau_pow(steps).conj() } else { tau_pow(steps) };
    let scale = |v: &[GoldenRat], f: &GoldenRat| v.iter().map(|e| e * f).collect::<Vec<_>>();
    ExtensionRecord {
        name: None,
        v: scale(&rec.v, &down),
        w: scale(&rec.w, &up),
        x: &rec.x * &down,
        y: &rec.y * &up,
        quadruplet: q,
        k: rec.k - steps,
        affine_root: rec.affine_root.scale(&up),
        translation: &rec.translation * &up,
        length_sq_ratio: &(&rec.length_sq_ratio * &up) * &up,
        ..rec.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::{extension_by_name, transpose};
    use crate::coxeter::cartan_matrix;

    fn g(a: i64, b: i64, d: i64) -> GoldenRat {
        GoldenRat::new(a, b, d)
    }

    fn rec(name: &str) -> ExtensionRecord {
        classify(&extension_by_name(name).unwrap()).unwrap()
    }

    #[test]
    fn step_examples() {
        assert_eq!(Quadruplet::new(1, -1, 1, -1).step(), Quadruplet::new(-2, 1, -1, 0));
        let q = Quadruplet::new(3, -5, 2, 7);
        assert_eq!(q.step().step_back(), q);
    }

    #[test]
    fn table_rows() {
        let r = rec("H4=");
        assert_eq!((r.reference, r.k), (FamilyReference::Symmetric, -1));
        assert_eq!(r.multipliers, (g(1, 0, 1), g(1, 0, 1)));
        assert_eq!(r.v, vec![g(-2, 1, 1), g(0, 0, 1), g(0, 0, 1), g(0, 0, 1)]);
        assert_eq!(r.translation, GoldenRat::tau());

        let r = rec("H3=");
        assert_eq!((r.axis, r.reference, r.k), (Axis::Twofold, FamilyReference::Symmetric, -1));
        assert_eq!(r.w, vec![g(0, 0, 1), g(-1, 0, 1), g(0, 0, 1)]);

        let r = rec("H3<");
        assert_eq!((r.axis, r.reference, r.k), (Axis::Fivefold, FamilyReference::FivefoldRow, -1));
        assert_eq!(r.multipliers, (g(4, 0, 5), g(1, 0, 1)));
        assert_eq!(r.x, g(-12, 4, 5));
        assert_eq!(r.translation, g(1, 0, 2));

        let r = rec("H3>");
        assert_eq!((r.reference, r.k), (FamilyReference::FivefoldRow, -1));
        assert_eq!(r.multipliers, (g(2, 0, 5), g(2, 0, 1)));
        assert_eq!(r.translation, g(1, 0, 1));

        let r = rec("H2=");
        assert_eq!((r.reference, r.k), (FamilyReference::Symmetric, -1));
        assert_eq!(r.v, vec![g(-2, 1, 1), g(-2, 1, 1)]);
        assert_eq!(r.w, vec![g(-1, 0, 1), g(-1, 0, 1)]);
    }

    #[test]
    fn conjugate_rows_classify_like_their_conjugates() {
        for name in ["H2=", "H3<", "H3=", "H3>", "H4="] {
            let a = rec(name);
            let b = rec(&name.replacen('H', "Hbar", 1));
            assert!(b.conjugate);
            assert_eq!((a.k, a.reference, &a.multipliers), (b.k, b.reference, &b.multipliers));
            assert_eq!(b.translation, a.translation.conj());
        }
    }

    #[test]
    fn transposed_h4_has_positive_k() {
        let r = classify(&transpose(&extension_by_name("H4=").unwrap())).unwrap();
        assert_eq!(r.k, 1);
        // translation of length |sigma| along the highest root
        assert_eq!(r.translation.abs(), GoldenRat::sigma().abs());
    }

    #[test]
    fn axis_constraints_make_the_determinant_vanish() {
        // oracle: xy = 2 det A / (g^T adj(A) g) for the unit pattern g
        for (grp, axis) in [
            (GroupId::H2, Axis::Twofold),
            (GroupId::H3, Axis::Twofold),
            (GroupId::H3, Axis::Threefold),
            (GroupId::H3, Axis::Fivefold),
            (GroupId::H4, Axis::Twofold),
        ] {
            let a = cartan_matrix(grp).entries;
            let (_, pat) = axis_pattern(grp, axis).unwrap();
            let q = a.adjugate().bilinear(&pat, &pat);
            let oracle = &(&GoldenRat::from_int(2) * &a.det()) / &q;
            assert_eq!(axis_constraint(grp, axis).unwrap(), oracle, "{grp} {axis}");
        }
        assert!(axis_constraint(GroupId::H4, Axis::Fivefold).is_err());
    }

    #[test]
    fn rescaling_moves_along_the_family() {
        let base = rec("H4=");
        for s in -5..=5 {
            let r = fibonacci_rescale(&base, s);
            assert_eq!(r.xy(), base.xy());
            assert!(r.to_bordered().det().is_zero());
            let again = classify(&r.to_bordered()).unwrap();
            assert_eq!(again.k, base.k - s);
            assert_eq!(again.quadruplet, r.quadruplet);
            assert_eq!(again.translation, r.translation);
        }
        assert_eq!(fibonacci_rescale(&base, 0), ExtensionRecord { name: None, ..base.clone() });
        // one step back from H4= is the symmetric extension along -alpha_H
        let sym = fibonacci_rescale(&base, -1);
        assert_eq!(sym.k, 0);
        assert_eq!(sym.v, sym.w);
        assert_eq!(sym.translation, GoldenRat::one());
    }

    #[test]
    fn non_axial_borders_are_rejected() {
        let ext = BorderedCartan::new(
            GroupId::H3,
            vec![g(-1, 0, 1), g(-1, 0, 1), g(0, 0, 1)],
            vec![g(-1, 0, 1), g(-1, 0, 1), g(0, 0, 1)],
        )
        .unwrap();
        assert!(matches!(classify(&ext), Err(Error::NotSingleAxis(_))));
    }
}
