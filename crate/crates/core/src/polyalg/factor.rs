//! Factorization over `F_q`: squarefree decomposition, distinct-degree
//! factorization and Cantor–Zassenhaus equal-degree splitting.
//!
//! The splitter is randomized, seeded by the caller. The returned factor list
//! is sorted canonically, so the output does not depend on the seed.

use num_bigint::BigUint;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::fq::FqPoly;
use crate::error::{invalid, Result};

/// Complete factorization of a nonzero polynomial into monic irreducibles with
/// multiplicities. The leading coefficient is dropped (it is a unit).
pub fn fq_factor(a: &FqPoly, seed: u64) -> Result<Vec<(FqPoly, usize)>> {
    if a.is_zero() {
        return invalid("cannot factor the zero polynomial");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (part, mult) in squarefree_decomposition(&a.monic()) {
        for (block, deg) in distinct_degree(&part) {
            for factor in equal_degree(&block, deg, &mut rng) {
                out.push((factor, mult));
            }
        }
    }
    out.sort_by(|x, y| x.0.canonical_cmp(&y.0).then(x.1.cmp(&y.1)));
    Ok(out)
}

/// `f = ∏ g_i^i` for a monic `f`, returned as the nontrivial `(g_i, i)` pairs.
/// Each `g_i` is squarefree and the `g_i` are pairwise coprime.
pub fn squarefree_decomposition(f: &FqPoly) -> Vec<(FqPoly, usize)> {
    let mut out = Vec::new();
    squarefree_into(f, 1, &mut out);
    out.sort_by(|x, y| x.1.cmp(&y.1));
    out
}

fn squarefree_into(f: &FqPoly, scale: usize, out: &mut Vec<(FqPoly, usize)>) {
    if f.degree().unwrap_or(0) == 0 {
        return;
    }
    let ctx = f.context().clone();
    let p = ctx.characteristic() as usize;
    let deriv = f.derivative();
    let mut c = f.gcd(&deriv).expect("f is nonzero");
    let mut w = f.div_exact(&c);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c).expect("w is nonzero");
        let fac = w.div_exact(&y);
        if !fac.is_one() {
            out.push((fac, i * scale));
        }
        c = c.div_exact(&y);
        w = y;
        i += 1;
    }
    if !c.is_one() {
        // c is a p-th power: c(x) = r(x)^p with r having p-th-root coefficients.
        let root: Vec<_> = c.coeffs().iter().step_by(p).map(|e| ctx.pth_root(e)).collect();
        squarefree_into(&FqPoly::new(ctx, root), scale * p, out);
    }
}

/// Splits a monic squarefree `f` into `(product of all irreducible factors of
/// degree d, d)` blocks.
pub fn distinct_degree(f: &FqPoly) -> Vec<(FqPoly, usize)> {
    let ctx = f.context().clone();
    let q = ctx.order();
    let x = FqPoly::x(ctx);
    let mut rest = f.clone();
    let mut h = x.rem(&rest).expect("nonzero");
    let mut out = Vec::new();
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.powmod(&q, &rest).expect("nonzero");
        let g = rest.gcd(&h.sub(&x)).expect("nonzero");
        if !g.is_one() {
            rest = rest.div_exact(&g);
            h = h.rem(&rest).expect("nonzero");
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(deg) = rest.degree().filter(|&deg| deg > 0) {
        out.push((rest, deg));
    }
    out
}

/// Cantor–Zassenhaus: split a monic squarefree `f` whose irreducible factors
/// all have degree `d`.
pub fn equal_degree(f: &FqPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<FqPoly> {
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    if n == d {
        return vec![f.clone()];
    }
    let ctx = f.context().clone();
    let q = ctx.order();
    let p = ctx.characteristic();
    loop {
        let a = FqPoly::new(ctx.clone(), (0..n).map(|_| ctx.random(rng)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let g = a.gcd(f).expect("nonzero");
        let candidate = if !g.is_one() {
            g
        } else if p == 2 {
            // Trace map a + a^2 + ... + a^(2^(kd - 1)) with q = 2^k.
            let k = ctx.degree();
            let two = BigUint::from(2u32);
            let mut term = a.rem(f).expect("nonzero");
            let mut sum = term.clone();
            for _ in 1..k * d {
                term = term.powmod(&two, f).expect("nonzero");
                sum = sum.add(&term);
            }
            f.gcd(&sum).expect("nonzero")
        } else {
            let exp = (num_traits::pow(q.clone(), d) - BigUint::one()) >> 1;
            let b = a.powmod(&exp, f).expect("nonzero").sub(&FqPoly::one(ctx.clone()));
            f.gcd(&b).expect("nonzero")
        };
        let cd = candidate.degree().unwrap_or(0);
        if cd > 0 && cd < n {
            let other = f.div_exact(&candidate);
            let mut out = equal_degree(&candidate, d, rng);
            out.extend(equal_degree(&other, d, rng));
            return out;
        }
    }
}

/// Rabin's test over `F_q`: `g` of degree `n` is irreducible iff
/// `x^(q^n) ≡ x (mod g)` and `gcd(x^(q^(n/r)) − x, g) = 1` for each prime `r | n`.
pub fn is_irreducible(g: &FqPoly) -> bool {
    let n = match g.degree() {
        None | Some(0) => return false,
        Some(n) => n,
    };
    if n == 1 {
        return true;
    }
    let ctx = g.context().clone();
    let q = ctx.order();
    let g = g.monic();
    let x = FqPoly::x(ctx).rem(&g).expect("nonzero");
    let mut frob = Vec::with_capacity(n);
    let mut h = x.clone();
    for _ in 0..n {
        h = h.powmod(&q, &g).expect("nonzero");
        frob.push(h.clone());
    }
    if frob[n - 1] != x {
        return false;
    }
    crate::intsupport::factor_small(n as u64).iter().all(|&(r, _)| {
        let k = n / r as usize;
        g.gcd(&frob[k - 1].sub(&x)).map(|d| d.is_one()).unwrap_or(false)
    })
}
