//! Exhaustive search for integer borders with `det = 0`.
//!
//! For a base matrix `A`, `det [[2, v^T], [w, A]] = 2 det A - v^T adj(A) w`.
//! When `adj(A)` has entries of one sign and the border entries are `<= 0`,
//! every term of `v^T adj(A) w` has that sign, so a partial sum that already
//! overshoots `2 det A` can be pruned.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::BorderedCartan;
use crate::coxeter::{cartan_matrix, diagram_automorphisms, GroupId};
use crate::error::{Error, Result};
use crate::golden::GoldenRat;
use crate::matrix::Matrix;

pub const DEFAULT_ENTRY_BOUND: i64 = 4;

/// An integer border `(v, w)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Border {
    pub v: Vec<i64>,
    pub w: Vec<i64>,
}

impl Border {
    pub fn is_zero(&self) -> bool {
        self.v.iter().chain(&self.w).all(|&x| x == 0)
    }

    fn permuted(&self, perm: &[usize]) -> Border {
        let mut v = vec![0; self.v.len()];
        let mut w = vec![0; self.w.len()];
        for (i, &p) in perm.iter().enumerate() {
            v[p] = self.v[i];
            w[p] = self.w[i];
        }
        Border { v, w }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchHit {
    pub extension: BorderedCartan,
    /// Number of distinct borders in the orbit under base automorphisms.
    pub orbit_size: usize,
}

/// All affine single-node extensions of a crystallographic base with border
/// entries in `{0, -1, ..., -bound}`, one representative per automorphism
/// orbit, named by the length of the new root relative to the base roots.
pub fn search_single_extensions(base: GroupId, bound: i64) -> Result<Vec<SearchHit>> {
    if !base.is_crystallographic() {
        return Err(Error::Invalid(format!("{base} is not a crystallographic base")));
    }
    let a = cartan_matrix(base).entries;
    let raw: Vec<Border> = border_search(&a, bound)?.into_iter().filter(|b| !b.is_zero()).collect();
    let autos = diagram_automorphisms(&a);
    let mut reps: Vec<(Border, usize)> = Vec::new();
    for b in raw {
        let mut orbit: Vec<Border> = autos.iter().map(|p| b.permuted(p)).collect();
        orbit.sort();
        orbit.dedup();
        let canon = orbit.last().expect("identity is an automorphism").clone();
        if !reps.iter().any(|(r, _)| *r == canon) {
            reps.push((canon, orbit.len()));
        }
    }
    reps.sort();
    reps.into_iter()
        .map(|(b, orbit_size)| {
            let ext = BorderedCartan::from_ints(base, &b.v, &b.w)?;
            let name = format!("{base}{}", length_mark(&ext)?);
            Ok(SearchHit { extension: ext.named(name), orbit_size })
        })
        .collect()
}

/// `=`, `<` or `>` as the new root is as long as, shorter or longer than
/// the base roots.
fn length_mark(ext: &BorderedCartan) -> Result<&'static str> {
    let ratio = ext.length_sq_ratio()?;
    Ok(match ratio.cmp(&GoldenRat::one()) {
        std::cmp::Ordering::Equal => "=",
        std::cmp::Ordering::Less => "<",
        std::cmp::Ordering::Greater => ">",
    })
}

/// Integer borders of one more node on an affine extension with `det = 0`
/// (including the all-zero, disconnected border).
pub fn extend_affine_by_one(ext: &BorderedCartan, bound: i64) -> Result<Vec<Border>> {
    let a = ext.full().entries;
    border_search(&a, bound)
}

/// All borders with entries in `{0, -1, ..., -bound}`, `v_i = 0` iff
/// `w_i = 0`, and `det = 0`, sorted.
pub(crate) fn border_search(a: &Matrix, bound: i64) -> Result<Vec<Border>> {
    if bound < 0 {
        return Err(Error::Invalid("entry bound must be non-negative".into()));
    }
    let n = a.rows();
    let to_i64 = |x: &GoldenRat| x.to_i64().ok_or_else(|| Error::Invalid(format!("non-integer entry {x}")));
    let adj = a.adjugate();
    let mut k: Vec<i64> = adj.entries().map(to_i64).collect::<Result<_>>()?;
    let mut target = to_i64(&a.det())?.checked_mul(2).ok_or(Error::Overflow("border search"))?;
    if k.iter().all(|&x| x <= 0) {
        k.iter_mut().for_each(|x| *x = -*x);
        target = -target;
    } else if k.iter().any(|&x| x < 0) {
        return Err(Error::Invalid("adjugate has mixed signs; pruning bound does not apply".into()));
    }
    if target < 0 {
        return Ok(Vec::new());
    }
    let mut choices = vec![(0i64, 0i64)];
    for x in 1..=bound {
        for y in 1..=bound {
            choices.push((-x, -y));
        }
    }
    let ctx = Ctx { n, k: &k, target, choices: &choices };
    let mut found: Vec<Border> = choices
        .par_iter()
        .map(|&first| {
            let mut out = Vec::new();
            let mut v = vec![0; n];
            let mut w = vec![0; n];
            v[0] = first.0;
            w[0] = first.1;
            let s = first.0 * k[0] * first.1;
            if s <= target {
                ctx.descend(1, s, &mut v, &mut w, &mut out);
            }
            out
        })
        .flatten()
        .collect();
    found.sort();
    for b in &found {
        let m = bordered(a, b);
        if !m.det().is_zero() {
            return Err(Error::Invalid("pruned search produced a nonsingular border".into()));
        }
    }
    Ok(found)
}

struct Ctx<'a> {
    n: usize,
    k: &'a [i64],
    target: i64,
    choices: &'a [(i64, i64)],
}

impl Ctx<'_> {
    fn descend(&self, t: usize, s: i64, v: &mut [i64], w: &mut [i64], out: &mut Vec<Border>) {
        if t == self.n {
            if s == self.target {
                out.push(Border { v: v.to_vec(), w: w.to_vec() });
            }
            return;
        }
        let n = self.n;
        // cross terms of node t with the already assigned nodes
        let row: i64 = (0..t).map(|j| self.k[t * n + j] * w[j]).sum();
        let col: i64 = (0..t).map(|i| v[i] * self.k[i * n + t]).sum();
        for &(vt, wt) in self.choices {
            let ds = vt * row + wt * col + vt * self.k[t * n + t] * wt;
            if s + ds > self.target {
                continue;
            }
            v[t] = vt;
            w[t] = wt;
            self.descend(t + 1, s + ds, v, w, out);
        }
        v[t] = 0;
        w[t] = 0;
    }
}

fn bordered(a: &Matrix, b: &Border) -> Matrix {
    let n = a.rows();
    Matrix::from_fn(n + 1, n + 1, |i, j| match (i, j) {
        (0, 0) => GoldenRat::from_int(2),
        (0, j) => GoldenRat::from_int(b.v[j - 1]),
        (i, 0) => GoldenRat::from_int(b.w[i - 1]),
        (i, j) => a[(i - 1, j - 1)].clone(),
    })
}
