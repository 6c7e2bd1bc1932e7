//! Dense polynomials over a prime field `F_p` stored as `Vec<u64>` residues in
//! `[0, p)`, lowest degree first, trailing zeros stripped. These are the
//! element representation of `F_{p^d} = F_p[x]/(modulus)`.

use num_bigint::BigUint;
use num_traits::Zero;

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

pub(crate) fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        p - (b - a)
    }
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    let mut acc = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub(crate) fn add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out: Vec<u64> = (0..n)
        .map(|i| add_mod(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), p))
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out: Vec<u64> = (0..n)
        .map(|i| sub_mod(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), p))
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn scale(a: &[u64], c: u64, p: u64) -> Vec<u64> {
    let mut out: Vec<u64> = a.iter().map(|&x| mul_mod(x, c, p)).collect();
    trim(&mut out);
    out
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = add_mod(out[i + j], mul_mod(x, y, p), p);
        }
    }
    trim(&mut out);
    out
}

/// `(q, r)` with `a = q·b + r`, `deg r < deg b`. `b` must be nonzero.
pub(crate) fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let db = b.len() - 1;
    if a.len() <= db {
        return (Vec::new(), a.to_vec());
    }
    let lead_inv = inv_mod(b[db], p);
    let mut rem = a.to_vec();
    let mut quot = vec![0u64; a.len() - db];
    for k in (0..quot.len()).rev() {
        let c = mul_mod(rem[k + db], lead_inv, p);
        rem[k + db] = 0;
        if c == 0 {
            continue;
        }
        for j in 0..db {
            rem[k + j] = sub_mod(rem[k + j], mul_mod(c, b[j], p), p);
        }
        quot[k] = c;
    }
    rem.truncate(db);
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

pub(crate) fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    divrem(a, b, p).1
}

pub(crate) fn monic(a: &[u64], p: u64) -> Vec<u64> {
    match a.last() {
        None => Vec::new(),
        Some(&lc) => scale(a, inv_mod(lc, p), p),
    }
}

pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub(crate) fn inv_poly_mod(a: &[u64], m: &[u64], p: u64) -> Option<Vec<u64>> {
    // Extended Euclid tracking only the coefficient of `a`.
    let (mut r0, mut r1) = (m.to_vec(), rem(a, m, p));
    let (mut s0, mut s1): (Vec<u64>, Vec<u64>) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s = sub(&s0, &mul(&q, &s1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    if r0.len() != 1 {
        return None;
    }
    let c = inv_mod(r0[0], p);
    Some(rem(&scale(&s0, c, p), m, p))
}

pub(crate) fn powmod(base: &[u64], exp: &BigUint, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = rem(&[1], m, p);
    if exp.is_zero() {
        return acc;
    }
    let base = rem(base, m, p);
    for i in (0..exp.bits()).rev() {
        acc = rem(&mul(&acc, &acc, p), m, p);
        if exp.bit(i) {
            acc = rem(&mul(&acc, &base, p), m, p);
        }
    }
    acc
}

/// Rabin's irreducibility test over `F_p` for a monic `f`.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let n = match f.len().checked_sub(1) {
        None | Some(0) => return false,
        Some(n) => n,
    };
    if n == 1 {
        return true;
    }
    let pb = BigUint::from(p);
    let x = vec![0, 1];
    // x^(p^k) mod f for k = 1..=n
    let mut frob = Vec::with_capacity(n);
    let mut h = rem(&x, f, p);
    for _ in 0..n {
        h = powmod(&h, &pb, f, p);
        frob.push(h.clone());
    }
    if !sub(&frob[n - 1], &rem(&x, f, p), p).is_empty() {
        return false;
    }
    for (r, _) in crate::intsupport::factor_small(n as u64) {
        let k = n / r as usize;
        let g = gcd(f, &sub(&frob[k - 1], &x, p), p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}
