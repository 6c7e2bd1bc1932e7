use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use rand::Rng;

use super::fp;
use super::intpoly::IntPoly;
use crate::error::{invalid, Result};
use crate::intsupport::Prime;

/// The finite field `F_p[t]/(modulus)` with `modulus` monic irreducible over `F_p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FqContext {
    p: Prime,
    modulus: Vec<u64>,
}

/// An element of an [`FqContext`]: an `F_p[t]` residue of degree below the
/// modulus degree, coefficients in `[0, p)`, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FqElem(Vec<u64>);

impl FqElem {
    pub fn residues(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

impl FqContext {
    /// `F_p` itself, presented as `F_p[t]/(t)`.
    pub fn prime_field(p: Prime) -> Arc<FqContext> {
        Arc::new(FqContext { p, modulus: vec![0, 1] })
    }

    /// `F_p[t]/(φ̄)` where `φ̄` is the reduction of `phi` mod `p`. Fails unless
    /// `φ̄` is monic and irreducible of degree at least one.
    pub fn new(p: Prime, phi: &IntPoly) -> Result<Arc<FqContext>> {
        let modulus = phi.residues(p);
        if modulus.len() < 2 || modulus.len() != phi.coeffs().len() || modulus.last() != Some(&1) {
            return invalid(format!("{phi} is not monic of positive degree modulo {p}"));
        }
        if !fp::is_irreducible(&modulus, p.get()) {
            return invalid(format!("{phi} is not irreducible modulo {p}"));
        }
        Ok(Arc::new(FqContext { p, modulus }))
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn characteristic(&self) -> u64 {
        self.p.get()
    }

    /// Degree of the field over `F_p`.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> IntPoly {
        IntPoly::from_residues(&self.modulus)
    }

    /// `p^d`.
    pub fn order(&self) -> BigUint {
        num_traits::pow(BigUint::from(self.p.get()), self.degree())
    }

    pub fn zero(&self) -> FqElem {
        FqElem(Vec::new())
    }

    pub fn one(&self) -> FqElem {
        FqElem(vec![1])
    }

    pub fn from_u64(&self, c: u64) -> FqElem {
        let mut v = vec![c % self.p.get()];
        fp::trim(&mut v);
        FqElem(v)
    }

    /// Reduce raw `F_p[t]` residues modulo the field polynomial.
    pub fn from_residues(&self, residues: &[u64]) -> FqElem {
        let p = self.p.get();
        let mut v: Vec<u64> = residues.iter().map(|&c| c % p).collect();
        fp::trim(&mut v);
        FqElem(fp::rem(&v, &self.modulus, p))
    }

    /// Image of an integer polynomial under `Z[t] → F_p[t]/(modulus)`.
    pub fn from_int_poly(&self, a: &IntPoly) -> FqElem {
        FqElem(fp::rem(&a.residues(self.p), &self.modulus, self.p.get()))
    }

    /// Canonical integer lift with coefficients in `[0, p)`.
    pub fn lift(&self, a: &FqElem) -> IntPoly {
        IntPoly::from_residues(&a.0)
    }

    pub fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        FqElem(fp::add(&a.0, &b.0, self.p.get()))
    }

    pub fn sub(&self, a: &FqElem, b: &FqElem) -> FqElem {
        FqElem(fp::sub(&a.0, &b.0, self.p.get()))
    }

    pub fn neg(&self, a: &FqElem) -> FqElem {
        self.sub(&self.zero(), a)
    }

    pub fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let p = self.p.get();
        if self.modulus.len() == 2 {
            // Prime field: skip the polynomial reduction.
            return match (a.0.first(), b.0.first()) {
                (Some(&x), Some(&y)) => self.from_u64(fp::mul_mod(x, y, p)),
                _ => self.zero(),
            };
        }
        FqElem(fp::rem(&fp::mul(&a.0, &b.0, p), &self.modulus, p))
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self, a: &FqElem) -> Option<FqElem> {
        if a.is_zero() {
            return None;
        }
        let p = self.p.get();
        if self.modulus.len() == 2 {
            return Some(FqElem(vec![fp::inv_mod(a.0[0], p)]));
        }
        fp::inv_poly_mod(&a.0, &self.modulus, p).map(FqElem)
    }

    pub fn pow(&self, a: &FqElem, exp: &BigUint) -> FqElem {
        let mut acc = self.one();
        for i in (0..exp.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if exp.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    /// The unique `b` with `b^p = a`, namely `a^(p^(d-1))`.
    pub fn pth_root(&self, a: &FqElem) -> FqElem {
        let exp = num_traits::pow(BigUint::from(self.p.get()), self.degree() - 1);
        self.pow(a, &exp)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FqElem {
        let p = self.p.get();
        let mut v: Vec<u64> = (0..self.degree()).map(|_| rng.gen_range(0..p)).collect();
        fp::trim(&mut v);
        FqElem(v)
    }

    /// Text form of an element in terms of the generator `var`.
    pub fn format_elem(&self, a: &FqElem, var: &str) -> String {
        if a.is_zero() {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for (i, &c) in a.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            terms.push(match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => var.to_string(),
                (1, c) => format!("{c}{var}"),
                (i, 1) => format!("{var}^{i}"),
                (i, c) => format!("{c}{var}^{i}"),
            });
        }
        terms.join(" + ")
    }
}

impl fmt::Debug for FqContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}[t]/({})", self.p, IntPoly::from_residues(&self.modulus))
        }
    }
}

/// A polynomial over an [`FqContext`], coefficients lowest degree first with
/// no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FqPoly {
    ctx: Arc<FqContext>,
    coeffs: Vec<FqElem>,
}

impl FqPoly {
    pub fn new(ctx: Arc<FqContext>, mut coeffs: Vec<FqElem>) -> FqPoly {
        while coeffs.last().is_some_and(FqElem::is_zero) {
            coeffs.pop();
        }
        FqPoly { ctx, coeffs }
    }

    pub fn zero(ctx: Arc<FqContext>) -> FqPoly {
        FqPoly { ctx, coeffs: Vec::new() }
    }

    pub fn one(ctx: Arc<FqContext>) -> FqPoly {
        let one = ctx.one();
        FqPoly { ctx, coeffs: vec![one] }
    }

    /// The indeterminate.
    pub fn x(ctx: Arc<FqContext>) -> FqPoly {
        let coeffs = vec![ctx.zero(), ctx.one()];
        FqPoly { ctx, coeffs }
    }

    /// Coefficientwise image of an integer polynomial, each coefficient sent
    /// to `F_p ⊂ F_q`.
    pub fn from_int_poly(ctx: Arc<FqContext>, a: &IntPoly) -> FqPoly {
        let coeffs = a.residues(ctx.prime()).into_iter().map(|c| ctx.from_u64(c)).collect();
        FqPoly::new(ctx, coeffs)
    }

    /// Integer lift of a polynomial over the prime field, coefficients in `[0, p)`.
    pub fn lift_prime_field(&self) -> IntPoly {
        IntPoly::from_residues(
            &self.coeffs.iter().map(|c| c.0.first().copied().unwrap_or(0)).collect::<Vec<_>>(),
        )
    }

    pub fn context(&self) -> &Arc<FqContext> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FqElem {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == self.ctx.one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&FqElem> {
        self.coeffs.last()
    }

    fn with(&self, coeffs: Vec<FqElem>) -> FqPoly {
        FqPoly::new(self.ctx.clone(), coeffs)
    }

    pub fn add(&self, other: &FqPoly) -> FqPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        self.with((0..n).map(|i| self.ctx.add(&self.coeff(i), &other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &FqPoly) -> FqPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        self.with((0..n).map(|i| self.ctx.sub(&self.coeff(i), &other.coeff(i))).collect())
    }

    pub fn scale(&self, c: &FqElem) -> FqPoly {
        self.with(self.coeffs.iter().map(|a| self.ctx.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &FqPoly) -> FqPoly {
        if self.is_zero() || other.is_zero() {
            return FqPoly::zero(self.ctx.clone());
        }
        let mut out = vec![self.ctx.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = self.ctx.add(&out[i + j], &self.ctx.mul(a, b));
            }
        }
        self.with(out)
    }

    pub fn pow(&self, mut exp: u64) -> FqPoly {
        let mut base = self.clone();
        let mut acc = FqPoly::one(self.ctx.clone());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Euclidean division. Fails on a zero divisor.
    pub fn divrem(&self, b: &FqPoly) -> Result<(FqPoly, FqPoly)> {
        let Some(db) = b.degree() else {
            return invalid("division by the zero polynomial");
        };
        if self.coeffs.len() <= db {
            return Ok((FqPoly::zero(self.ctx.clone()), self.clone()));
        }
        let ctx = &self.ctx;
        let lead_inv = ctx.inv(&b.coeffs[db]).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![ctx.zero(); rem.len() - db];
        for k in (0..quot.len()).rev() {
            let c = ctx.mul(&rem[k + db], &lead_inv);
            rem[k + db] = ctx.zero();
            if c.is_zero() {
                continue;
            }
            for j in 0..db {
                rem[k + j] = ctx.sub(&rem[k + j], &ctx.mul(&c, &b.coeffs[j]));
            }
            quot[k] = c;
        }
        rem.truncate(db);
        Ok((self.with(quot), self.with(rem)))
    }

    pub fn rem(&self, b: &FqPoly) -> Result<FqPoly> {
        Ok(self.divrem(b)?.1)
    }

    /// Exact quotient; panics if `b` does not divide `self` (internal use only).
    pub(crate) fn div_exact(&self, b: &FqPoly) -> FqPoly {
        let (q, r) = self.divrem(b).expect("nonzero divisor");
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn monic(&self) -> FqPoly {
        match self.leading() {
            None => self.clone(),
            Some(lc) => self.scale(&self.ctx.inv(lc).expect("nonzero leading coefficient")),
        }
    }

    /// Monic gcd. Fails when both inputs are zero.
    pub fn gcd(&self, other: &FqPoly) -> Result<FqPoly> {
        if self.is_zero() && other.is_zero() {
            return invalid("gcd(0, 0) is undefined");
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    pub fn derivative(&self) -> FqPoly {
        let ctx = &self.ctx;
        self.with(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| ctx.mul(c, &ctx.from_u64(i as u64)))
                .collect(),
        )
    }

    /// `self^exp mod m`.
    pub fn powmod(&self, exp: &BigUint, m: &FqPoly) -> Result<FqPoly> {
        let mut acc = FqPoly::one(self.ctx.clone()).rem(m)?;
        let base = self.rem(m)?;
        for i in (0..exp.bits()).rev() {
            acc = acc.mul(&acc).rem(m)?;
            if exp.bit(i) {
                acc = acc.mul(&base).rem(m)?;
            }
        }
        Ok(acc)
    }

    /// Squarefree in `F_q[x]`; nonzero constants are squarefree, zero is not.
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => {
                let d = self.derivative();
                !d.is_zero() && self.gcd(&d).map(|g| g.is_one()).unwrap_or(false)
            }
        }
    }

    pub fn eval(&self, at: &FqElem) -> FqElem {
        self.coeffs
            .iter()
            .rev()
            .fold(self.ctx.zero(), |acc, c| self.ctx.add(&self.ctx.mul(&acc, at), c))
    }

    /// Deterministic ordering used to present factor lists: by degree, then by
    /// coefficients from the top down.
    pub fn canonical_cmp(&self, other: &FqPoly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }

    /// Text form in the variable `var`, field elements in terms of `gen`.
    pub fn format_with(&self, var: &str, gen: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let nontrivial = |c: &FqElem| c.0.iter().filter(|&&r| r != 0).count() > 1;
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = self.ctx.format_elem(c, gen);
            let cs = if nontrivial(c) && i > 0 { format!("({cs})") } else { cs };
            let one = *c == self.ctx.one();
            terms.push(match i {
                0 => cs,
                1 if one => var.to_string(),
                1 => format!("{cs}{var}"),
                _ if one => format!("{var}^{i}"),
                _ => format!("{cs}{var}^{i}"),
            });
        }
        terms.join(" + ")
    }
}

impl fmt::Display for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with("x", "t"))
    }
}

impl fmt::Debug for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FqPoly[{:?}]({self})", self.ctx)
    }
}
