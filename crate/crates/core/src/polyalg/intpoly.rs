use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{invalid, Result};
use crate::intsupport::{padic_valuation, ExtNat, Prime};

/// Dense univariate polynomial with arbitrary-precision integer coefficients.
///
/// `coeffs[i]` is the coefficient of `x^i`. Trailing zeros are stripped, so the
/// zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> IntPoly {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> IntPoly {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> IntPoly {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigInt) -> IntPoly {
        IntPoly::new(vec![c])
    }

    pub fn x() -> IntPoly {
        IntPoly::from_i64(&[0, 1])
    }

    pub fn monomial(c: BigInt, k: usize) -> IntPoly {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPoly::new(coeffs)
    }

    /// `x^n - m`.
    pub fn pure(n: usize, m: &BigInt) -> IntPoly {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        coeffs[0] -= m;
        IntPoly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, mut exp: u32) -> IntPoly {
        let mut base = self.clone();
        let mut acc = IntPoly::constant(BigInt::one());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, at: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * at + c)
    }

    /// The polynomial `self(x + c)`.
    pub fn shift(&self, c: &BigInt) -> IntPoly {
        let linear = IntPoly::new(vec![c.clone(), BigInt::one()]);
        self.coeffs.iter().rev().fold(IntPoly::zero(), |acc, a| {
            &(&acc * &linear) + &IntPoly::constant(a.clone())
        })
    }

    /// Euclidean division by a monic divisor: `self = q·b + r`, `deg r < deg b`.
    pub fn divrem_monic(&self, b: &IntPoly) -> Result<(IntPoly, IntPoly)> {
        if !b.is_monic() {
            return invalid("divisor must be monic");
        }
        let db = b.coeffs.len() - 1;
        if self.coeffs.len() <= db {
            return Ok((IntPoly::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - db];
        for k in (0..quot.len()).rev() {
            let c = std::mem::take(&mut rem[k + db]);
            if c.is_zero() {
                continue;
            }
            for (j, bj) in b.coeffs[..db].iter().enumerate() {
                rem[k + j] -= &c * bj;
            }
            quot[k] = c;
        }
        rem.truncate(db);
        Ok((IntPoly::new(quot), IntPoly::new(rem)))
    }

    /// `min_i ν_p(a_i)`, `Infinity` for the zero polynomial.
    pub fn content_valuation(&self, p: Prime) -> ExtNat {
        let mut best = ExtNat::Infinity;
        for c in &self.coeffs {
            let v = padic_valuation(c, p);
            if v < best {
                best = v;
                if v == ExtNat::Finite(0) {
                    break;
                }
            }
        }
        best
    }

    /// Divide every coefficient by `d`, failing unless all divisions are exact.
    pub fn div_exact(&self, d: &BigInt) -> Option<IntPoly> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(IntPoly::new(out))
    }

    /// Coefficients reduced into `[0, p)`.
    pub fn residues(&self, p: Prime) -> Vec<u64> {
        let pb = p.to_bigint();
        let mut out: Vec<u64> = self
            .coeffs
            .iter()
            .map(|c| {
                let r = c.mod_floor(&pb);
                r.iter_u64_digits().next().unwrap_or(0)
            })
            .collect();
        while out.last() == Some(&0) {
            out.pop();
        }
        out
    }

    pub fn from_residues(residues: &[u64]) -> IntPoly {
        IntPoly::new(residues.iter().map(|&c| BigInt::from(c)).collect())
    }
}

impl fmt::Display for IntPoly {
    /// Canonical text form, highest degree first, e.g. `x^2 + x - 1`. Parses back
    /// to the same polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => f.write_str(if show_coeff { "*x" } else { "x" })?,
                _ => write!(f, "{}x^{i}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: &IntPoly) -> IntPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = long.coeffs.clone();
        for (o, s) in out.iter_mut().zip(&short.coeffs) {
            *o += s;
        }
        IntPoly::new(out)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self + &(-rhs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: IntPoly) -> IntPoly {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
