//! Compact `Z[tau]` values on `i64` with checked arithmetic.
//!
//! Used on hot paths (group closure, orbit enumeration) where every value is
//! known to be a small golden integer. Any overflow surfaces as an error.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::golden::GoldenRat;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub(crate) struct Zt {
    pub a: i64,
    pub b: i64,
}

impl Zt {
    pub const ZERO: Zt = Zt { a: 0, b: 0 };

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn from_golden(x: &GoldenRat) -> Option<Zt> {
        if !x.is_golden_integer() {
            return None;
        }
        Some(Zt { a: x.a().to_i64()?, b: x.b().to_i64()? })
    }

    pub fn to_golden(self) -> GoldenRat {
        GoldenRat::new(self.a, self.b, 1)
    }

    /// `self / den` as a `GoldenRat`.
    pub fn over(self, den: i64) -> GoldenRat {
        GoldenRat::new(BigInt::from(self.a), BigInt::from(self.b), den)
    }

    pub fn add(self, o: Zt) -> Result<Zt> {
        Ok(Zt { a: ck(self.a.checked_add(o.a))?, b: ck(self.b.checked_add(o.b))? })
    }

    pub fn sub(self, o: Zt) -> Result<Zt> {
        Ok(Zt { a: ck(self.a.checked_sub(o.a))?, b: ck(self.b.checked_sub(o.b))? })
    }

    pub fn mul(self, o: Zt) -> Result<Zt> {
        if self.is_zero() || o.is_zero() {
            return Ok(Zt::ZERO);
        }
        let ac = ck(self.a.checked_mul(o.a))?;
        let bd = ck(self.b.checked_mul(o.b))?;
        let ad = ck(self.a.checked_mul(o.b))?;
        let bc = ck(self.b.checked_mul(o.a))?;
        Ok(Zt { a: ck(ac.checked_add(bd))?, b: ck(ck(ad.checked_add(bc))?.checked_add(bd))? })
    }
}

fn ck(x: Option<i64>) -> Result<i64> {
    x.ok_or(Error::Overflow("compact golden-integer arithmetic"))
}

/// Sign of `s + t sqrt5`.
fn sign_sqrt5(s: i128, t: i128) -> Ordering {
    const LIMIT: u128 = 1 << 62;
    let squares = || -> Ordering {
        if s.unsigned_abs() < LIMIT && t.unsigned_abs() < LIMIT {
            (s * s).cmp(&(5 * t * t))
        } else {
            let (bs, bt) = (BigInt::from(s), BigInt::from(t));
            (&bs * &bs).cmp(&(BigInt::from(5) * &bt * &bt))
        }
    };
    match (s.cmp(&0), t.cmp(&0)) {
        (Ordering::Equal, o) | (o, Ordering::Equal) => o,
        (Ordering::Greater, Ordering::Greater) => Ordering::Greater,
        (Ordering::Less, Ordering::Less) => Ordering::Less,
        (Ordering::Greater, Ordering::Less) => squares(),
        (Ordering::Less, Ordering::Greater) => squares().reverse(),
    }
}

/// Numeric order under `tau -> (1 + sqrt 5)/2`.
impl Ord for Zt {
    fn cmp(&self, other: &Self) -> Ordering {
        let da = self.a as i128 - other.a as i128;
        let db = self.b as i128 - other.b as i128;
        // a + b tau = (2a + b + b sqrt5) / 2
        sign_sqrt5(2 * da + db, db)
    }
}

impl PartialOrd for Zt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Dense square matrix over compact golden integers, row-major.
pub(crate) type ZtMatrix = Vec<Zt>;

/// `M v` for a row-major `n x n` matrix.
pub(crate) fn mat_vec(m: &[Zt], v: &[Zt], out: &mut [Zt]) -> Result<()> {
    let n = v.len();
    for i in 0..n {
        let mut acc = Zt::ZERO;
        for j in 0..n {
            let e = m[i * n + j];
            if !e.is_zero() && !v[j].is_zero() {
                acc = acc.add(e.mul(v[j])?)?;
            }
        }
        out[i] = acc;
    }
    Ok(())
}

pub(crate) fn cmp_slices(x: &[Zt], y: &[Zt]) -> Ordering {
    for (a, b) in x.iter().zip(y) {
        match a.cmp(b) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    x.len().cmp(&y.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_matches_bigint() {
        let x = Zt { a: 3, b: -2 };
        let y = Zt { a: -1, b: 5 };
        assert_eq!(x.mul(y).unwrap().to_golden(), x.to_golden() * y.to_golden());
        assert_eq!(x.add(y).unwrap().to_golden(), x.to_golden() + y.to_golden());
        assert!(x < y);
    }

    #[test]
    fn overflow_is_reported() {
        let big = Zt { a: i64::MAX, b: 0 };
        assert!(big.add(Zt { a: 1, b: 0 }).is_err());
        assert!(big.mul(Zt { a: 0, b: 2 }).is_err());
    }

    #[test]
    fn order_is_numeric() {
        let mut v = vec![Zt { a: -13, b: 8 }, Zt { a: 0, b: 0 }, Zt { a: 21, b: -13 }, Zt { a: 1, b: -1 }];
        v.sort();
        let f: Vec<f64> = v.iter().map(|z| z.to_golden().to_f64()).collect();
        assert!(f.windows(2).all(|w| w[0] < w[1]));
    }
}
