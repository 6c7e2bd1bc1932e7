//! Resultants over `Z` by the subresultant pseudo-remainder sequence, and
//! discriminants of monic polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::intpoly::IntPoly;
use crate::error::{invalid, Error, Result};

fn content(a: &IntPoly) -> BigInt {
    a.coeffs().iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// `lc(b)^(deg a − deg b + 1) · a mod b`, computed without fractions.
fn pseudo_rem(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let db = b.degree().expect("nonzero divisor");
    let lb = b.leading().expect("nonzero divisor").clone();
    let mut rem = a.coeffs().to_vec();
    let Some(da) = a.degree() else { return IntPoly::zero() };
    if da < db {
        return a.clone();
    }
    let steps = da - db + 1;
    for k in (0..steps).rev() {
        let c = rem[k + db].clone();
        for r in rem.iter_mut().take(k + db + 1) {
            *r *= &lb;
        }
        if !c.is_zero() {
            for (j, bj) in b.coeffs().iter().enumerate() {
                rem[k + j] -= &c * bj;
            }
        }
        rem.truncate(k + db);
    }
    IntPoly::new(rem)
}

fn pow(b: &BigInt, e: usize) -> BigInt {
    num_traits::pow(b.clone(), e)
}

fn exact_div(a: &BigInt, b: &BigInt) -> Result<BigInt> {
    let (q, r) = a.div_rem(b);
    if r.is_zero() {
        Ok(q)
    } else {
        Err(Error::Inconsistent("inexact division in subresultant sequence".into()))
    }
}

/// `Res(a, b)` via the subresultant algorithm; every division is exact.
pub fn resultant(a: &IntPoly, b: &IntPoly) -> Result<BigInt> {
    if a.is_zero() || b.is_zero() {
        return Ok(BigInt::zero());
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut sign = BigInt::one();
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
        if a.degree().unwrap() % 2 == 1 && b.degree().unwrap() % 2 == 1 {
            sign = -sign;
        }
    }
    let (ca, cb) = (content(&a), content(&b));
    let t = pow(&ca, b.degree().unwrap()) * pow(&cb, a.degree().unwrap());
    a = a.div_exact(&ca).expect("content divides");
    b = b.div_exact(&cb).expect("content divides");
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
        if db == 0 {
            break;
        }
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign = -sign;
        }
        let r = pseudo_rem(&a, &b);
        if r.is_zero() {
            return Ok(BigInt::zero());
        }
        a = b;
        let divisor = &g * pow(&h, delta);
        b = r
            .div_exact(&divisor)
            .ok_or_else(|| Error::Inconsistent("subresultant step is not exact".into()))?;
        g = a.leading().unwrap().clone();
        // h ← g^δ / h^(δ−1)
        h = if delta == 0 {
            h
        } else {
            exact_div(&pow(&g, delta), &pow(&h, delta - 1))?
        };
    }
    let da = a.degree().unwrap();
    let lb = b.leading().unwrap().clone();
    let h = if da == 0 {
        // Only reached when both inputs were constants.
        BigInt::one()
    } else {
        exact_div(&pow(&lb, da), &pow(&h, da - 1))?
    };
    Ok(sign * t * h)
}

/// Discriminant of a monic polynomial of positive degree,
/// `(−1)^(n(n−1)/2) · Res(a, a')`.
pub fn discriminant(a: &IntPoly) -> Result<BigInt> {
    let n = match a.degree() {
        None | Some(0) => return invalid("discriminant of a constant polynomial"),
        Some(n) => n,
    };
    if !a.is_monic() {
        return invalid("discriminant is only defined here for monic polynomials");
    }
    if n == 1 {
        return Ok(BigInt::one());
    }
    let r = resultant(a, &a.derivative())?;
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -r } else { r })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn small_discriminants() {
        for m in [-5i64, 2, 3, 7] {
            assert_eq!(discriminant(&ip(&[-m, 0, 1])).unwrap(), BigInt::from(4 * m));
        }
        assert_eq!(discriminant(&ip(&[-9, 0, 0, 1])).unwrap(), BigInt::from(-2187));
        // x^2 + x + 1: 1 - 4 = -3
        assert_eq!(discriminant(&ip(&[1, 1, 1])).unwrap(), BigInt::from(-3));
        assert!(discriminant(&ip(&[5])).is_err());
        assert!(discriminant(&ip(&[1, 2])).is_err());
    }

    #[test]
    fn resultant_basics() {
        // Res(x - a, x - b) = a - b ... with sign convention Res(x-a, g) = g(a)
        let f = ip(&[-3, 1]);
        let g = ip(&[5, 0, 2, 1]);
        assert_eq!(resultant(&f, &g).unwrap(), g.eval(&BigInt::from(3)));
        // common root gives zero
        let h = ip(&[-3, 1]) * ip(&[1, 1, 1]);
        assert!(resultant(&h, &ip(&[-9, 0, 1])).unwrap().is_zero());
    }
}
