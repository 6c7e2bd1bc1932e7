//! Integer utilities: p-adic valuations, the Möbius function, Gauss's count of
//! irreducible polynomials, squarefreeness and the Bézout solve used to change
//! generators of pure fields.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{invalid, Error, Result};

/// A natural number or `Infinity`, the codomain of a p-adic valuation.
///
/// `Infinity` compares above every finite value and absorbs addition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtNat {
    Finite(u64),
    Infinity,
}

impl ExtNat {
    pub fn is_finite(self) -> bool {
        matches!(self, ExtNat::Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            ExtNat::Finite(v) => Some(v),
            ExtNat::Infinity => None,
        }
    }
}

impl PartialOrd for ExtNat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtNat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtNat::Finite(a), ExtNat::Finite(b)) => a.cmp(b),
            (ExtNat::Finite(_), ExtNat::Infinity) => Ordering::Less,
            (ExtNat::Infinity, ExtNat::Finite(_)) => Ordering::Greater,
            (ExtNat::Infinity, ExtNat::Infinity) => Ordering::Equal,
        }
    }
}

impl Add<u64> for ExtNat {
    type Output = ExtNat;

    fn add(self, k: u64) -> ExtNat {
        match self {
            ExtNat::Finite(v) => ExtNat::Finite(v + k),
            ExtNat::Infinity => ExtNat::Infinity,
        }
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Finite(v) => write!(f, "{v}"),
            ExtNat::Infinity => f.write_str("inf"),
        }
    }
}

/// A rational prime, checked at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Prime> {
        if is_prime_u64(p) {
            Ok(Prime(p))
        } else {
            invalid(format!("{p} is not prime"))
        }
    }

    /// For values already known to be prime.
    pub(crate) fn new_unchecked(p: u64) -> Prime {
        debug_assert!(is_prime_u64(p));
        Prime(p)
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn to_bigint(self) -> BigInt {
        BigInt::from(self.0)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality test for the whole `u64` range (trial division by
/// small primes, then Miller–Rabin on the first twelve prime bases).
pub fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Strong probable-prime test for arbitrary-size integers on fixed bases.
/// Exact for `n < 2^64`; beyond that a composite passing all bases is
/// astronomically unlikely but not excluded.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    const BASES: [u64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];
    for &b in &BASES {
        if (n % b).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for &a in &BASES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Largest `k` with `p^k | n`; `Infinity` for `n = 0`. The sign of `n` is ignored.
pub fn padic_valuation(n: &BigInt, p: Prime) -> ExtNat {
    if n.is_zero() {
        return ExtNat::Infinity;
    }
    let p = BigUint::from(p.get());
    let mut rest = n.magnitude().clone();
    let mut k = 0;
    loop {
        let (q, r) = rest.div_rem(&p);
        if !r.is_zero() {
            return ExtNat::Finite(k);
        }
        rest = q;
        k += 1;
    }
}

/// Prime factorization of `|n|` by trial division, as `(prime, exponent)` pairs
/// in increasing order. `n` must be nonzero.
pub fn factor_small(n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut rest = n;
    let mut d = 2u64;
    while d.saturating_mul(d) <= rest {
        if rest % d == 0 {
            let mut e = 0;
            while rest % d == 0 {
                rest /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        out.push((rest, 1));
    }
    out
}

pub fn mobius(d: u64) -> Result<i8> {
    if d == 0 {
        return invalid("Möbius function is undefined at 0");
    }
    let mut sign = 1i8;
    for (_, e) in factor_small(d) {
        if e > 1 {
            return Ok(0);
        }
        sign = -sign;
    }
    Ok(sign)
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).take_while(|d| d * d <= n).filter(|d| n % d == 0).collect();
    let mut upper: Vec<u64> = out.iter().rev().map(|d| n / d).filter(|&q| q * q != n).collect();
    out.append(&mut upper);
    out
}

/// Number of monic irreducible polynomials of degree `f` over `F_p`, by the
/// Möbius-inversion formula `N_f(p) = (1/f) Σ_{d|f} μ(d) p^(f/d)`.
pub fn gauss_irreducible_count(p: Prime, f: u32) -> Result<BigUint> {
    if f == 0 {
        return invalid("degree must be at least 1");
    }
    let base = BigInt::from(p.get());
    let mut sum = BigInt::zero();
    for d in divisors(f as u64) {
        let mu = mobius(d)?;
        if mu != 0 {
            sum += BigInt::from(mu) * num_traits::pow(base.clone(), (f as u64 / d) as usize);
        }
    }
    let (q, r) = sum.div_rem(&BigInt::from(f));
    if !r.is_zero() || !q.is_positive() {
        return Err(Error::Inconsistent(format!(
            "Gauss sum for p = {p}, f = {f} is not a positive multiple of f"
        )));
    }
    Ok(q.magnitude().clone())
}

/// Whether no prime square divides `m`, by trial division up to `sqrt(|m|)`.
pub fn is_squarefree_int(m: i64) -> Result<bool> {
    if (-1..=1).contains(&m) {
        return invalid(format!("squarefreeness is only tested for |m| >= 2, got {m}"));
    }
    Ok(factor_small(m.unsigned_abs()).iter().all(|&(_, e)| e == 1))
}

/// The unique `(x, y)` with `u·x − n·y = 1` and `0 <= y < u`.
///
/// With `n = 60` and `θ = α^x / a^y` this turns a root of `x^60 − a^u` into a
/// root of `x^60 − a`.
pub fn solve_power_reduction(u: u64, n: u64) -> Result<(i64, i64)> {
    if u == 0 || n == 0 {
        return invalid("u and n must be positive");
    }
    let (ui, ni) = (u as i128, n as i128);
    let egcd = ui.extended_gcd(&ni);
    if egcd.gcd != 1 {
        return Err(Error::NoSolution(format!("gcd({u}, {n}) = {} is not 1", egcd.gcd)));
    }
    // egcd.y * n ≡ 1 (mod u), and we need n·y ≡ −1 (mod u).
    let y = (-egcd.y).mod_floor(&ui);
    let x = (1 + ni * y) / ui;
    debug_assert_eq!(ui * x - ni * y, 1);
    Ok((x as i64, y as i64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn valuations() {
        assert_eq!(padic_valuation(&BigInt::from(12), p(2)), ExtNat::Finite(2));
        assert_eq!(padic_valuation(&BigInt::from(0), p(5)), ExtNat::Infinity);
        assert_eq!(padic_valuation(&BigInt::from(2400), p(5)), ExtNat::Finite(2));
        assert_eq!(padic_valuation(&BigInt::from(-2400), p(2)), ExtNat::Finite(5));
        assert!(Prime::new(12).is_err());
        assert!(Prime::new(1).is_err());
    }

    #[test]
    fn extnat_order() {
        assert!(ExtNat::Infinity > ExtNat::Finite(u64::MAX));
        assert_eq!(ExtNat::Infinity + 3, ExtNat::Infinity);
        assert_eq!(ExtNat::Finite(2) + 3, ExtNat::Finite(5));
    }

    #[test]
    fn mobius_values() {
        assert_eq!(mobius(1).unwrap(), 1);
        assert_eq!(mobius(6).unwrap(), 1);
        assert_eq!(mobius(12).unwrap(), 0);
        assert_eq!(mobius(30).unwrap(), -1);
        assert!(mobius(0).is_err());
    }

    #[test]
    fn gauss_counts() {
        let n = |q, f| gauss_irreducible_count(p(q), f).unwrap();
        assert_eq!(n(2, 2), BigUint::from(1u32));
        assert_eq!(n(3, 2), BigUint::from(3u32));
        assert_eq!(n(5, 2), BigUint::from(10u32));
        for q in [2, 3, 5, 7, 11] {
            assert_eq!(n(q, 1), BigUint::from(q));
        }
    }

    #[test]
    fn squarefree() {
        assert!(is_squarefree_int(67).unwrap());
        assert!(!is_squarefree_int(9).unwrap());
        assert!(is_squarefree_int(302).unwrap());
        assert!(is_squarefree_int(-30).unwrap());
        assert!(is_squarefree_int(1).is_err());
        assert!(is_squarefree_int(0).is_err());
    }

    #[test]
    fn power_reduction() {
        assert_eq!(solve_power_reduction(13, 60).unwrap(), (37, 8));
        assert_eq!(solve_power_reduction(1, 60).unwrap(), (1, 0));
        let (x, y) = solve_power_reduction(31, 60).unwrap();
        assert_eq!(31 * x - 60 * y, 1);
        assert!((0..31).contains(&y));
        assert!(matches!(solve_power_reduction(6, 60), Err(Error::NoSolution(_))));
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..60).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(small, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime_u64(18446744073709551557));
        assert!(!is_prime_u64(3215031751));
        assert!(is_probable_prime(&(BigUint::from(2u32).pow(127u32) - 1u32)));
        assert!(!is_probable_prime(&(BigUint::from(2u32).pow(128u32) + 1u32)));
    }

}
