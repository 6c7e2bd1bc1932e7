//! Field-level conclusions: common index divisors, the congruence classifier
//! for `x^60 − m`, and computed analysis reports that cross-check it.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{invalid, Error, Result};
use crate::idealfactor::{dedekind_test, ore_analysis, DedekindReport, IndexValuation, OreAnalysis, PrimeFactorShape};
use crate::intsupport::{factor_small, gauss_irreducible_count, is_probable_prime, is_squarefree_int, solve_power_reduction, Prime};
use crate::polyalg::{discriminant, IntPoly};

/// `P_f > N_f`: more primes of residue degree `f` above `p` than monic
/// irreducible polynomials of degree `f` over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexDivisorWitness {
    pub prime: Prime,
    pub f: u64,
    pub ideal_count: u64,
    pub irreducible_count: BigUint,
}

impl IndexDivisorWitness {
    pub fn is_valid(&self) -> bool {
        BigUint::from(self.ideal_count) > self.irreducible_count
    }
}

impl fmt::Display for IndexDivisorWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "p = {}: P_{} = {} > N_{} = {}",
            self.prime, self.f, self.ideal_count, self.f, self.irreducible_count
        )
    }
}

/// The first residue degree `f` at which the listed primes outnumber the
/// irreducible polynomials of degree `f`. Counts of a partial shape are lower
/// bounds, so a witness found there is still valid.
pub fn common_index_divisor(shape: &PrimeFactorShape, p: Prime) -> Option<IndexDivisorWitness> {
    for f in shape.residue_degrees() {
        let ideal_count = shape.primes_of_degree(f);
        let irreducible_count = gauss_irreducible_count(p, f as u32).ok()?;
        if BigUint::from(ideal_count) > irreducible_count {
            return Some(IndexDivisorWitness { prime: p, f, ideal_count, irreducible_count });
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VerdictKind {
    Monogenic,
    NotMonogenic,
    Undecided,
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictKind::Monogenic => "Monogenic",
            VerdictKind::NotMonogenic => "NotMonogenic",
            VerdictKind::Undecided => "Undecided",
        })
    }
}

/// `m mod modulus` tested against a set of canonical residues.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceCheck {
    pub prime: Prime,
    pub modulus: u64,
    pub residue: u64,
    pub excluded: Vec<u64>,
    /// `residue ∈ excluded`.
    pub hit: bool,
}

impl CongruenceCheck {
    fn new(m: i64, prime: u64, modulus: u64, excluded: &[u64]) -> CongruenceCheck {
        let residue = m.rem_euclid(modulus as i64) as u64;
        CongruenceCheck {
            prime: Prime::new_unchecked(prime),
            modulus,
            residue,
            excluded: excluded.to_vec(),
            hit: excluded.contains(&residue),
        }
    }
}

impl fmt::Display for CongruenceCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let set: Vec<String> = self.excluded.iter().map(u64::to_string).collect();
        let rel = if self.hit { "∈" } else { "∉" };
        write!(f, "m ≡ {} (mod {}) {rel} {{{}}}", self.residue, self.modulus, set.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reason {
    Congruence(CongruenceCheck),
    Witness(IndexDivisorWitness),
    Index(IndexValuation),
    /// `θ = α^x / a^y` is a root of `x^60 − a`.
    PowerReduction { u: u64, x: i64, y: i64 },
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reason::Congruence(c) => write!(f, "{c}"),
            Reason::Witness(w) => write!(f, "common index divisor {w}"),
            Reason::Index(v) => write!(f, "ν_{}(index) = {v}", v.prime),
            Reason::PowerReduction { u, x, y } => {
                write!(f, "θ = α^{x} / a^{y} generates the same field ({u}·{x} − 60·{y} = 1)")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub reasons: Vec<Reason>,
}

impl Verdict {
    pub fn witnesses(&self) -> impl Iterator<Item = &IndexDivisorWitness> {
        self.reasons.iter().filter_map(|r| match r {
            Reason::Witness(w) => Some(w),
            _ => None,
        })
    }
}

const RESIDUES_MOD_4: &[u64] = &[1];
const RESIDUES_MOD_9: &[u64] = &[1, 8];
const RESIDUES_MOD_25: &[u64] = &[1, 24];
const OPEN_MOD_25: &[u64] = &[7, 18];
const CLOSURE_MOD_25: &[u64] = &[1, 7, 18, 24];

fn check_m(m: i64) -> Result<()> {
    if !is_squarefree_int(m)? {
        return invalid(format!("m = {m} is not squarefree"));
    }
    Ok(())
}

/// The three integral-closure congruences at 2, 3 and 5.
fn closure_checks(m: i64) -> [CongruenceCheck; 3] {
    [
        CongruenceCheck::new(m, 2, 4, RESIDUES_MOD_4),
        CongruenceCheck::new(m, 3, 9, RESIDUES_MOD_9),
        CongruenceCheck::new(m, 5, 25, CLOSURE_MOD_25),
    ]
}

/// Whether `Z[α] = Z_K` for `α^60 = m`.
pub fn pure60_integral_closure(m: i64) -> Result<bool> {
    check_m(m)?;
    Ok(closure_checks(m).iter().all(|c| !c.hit))
}

/// Monogeneity of `Q(m^(1/60))` decided by congruences alone.
pub fn pure60_monogeneity(m: i64) -> Result<Verdict> {
    check_m(m)?;
    let checks = closure_checks(m);
    if checks.iter().all(|c| !c.hit) {
        return Ok(Verdict { kind: VerdictKind::Monogenic, reasons: checks.into_iter().map(Reason::Congruence).collect() });
    }
    let obstructions = [
        CongruenceCheck::new(m, 2, 4, RESIDUES_MOD_4),
        CongruenceCheck::new(m, 3, 9, RESIDUES_MOD_9),
        CongruenceCheck::new(m, 5, 25, RESIDUES_MOD_25),
    ];
    let hits: Vec<Reason> = obstructions.into_iter().filter(|c| c.hit).map(Reason::Congruence).collect();
    if !hits.is_empty() {
        return Ok(Verdict { kind: VerdictKind::NotMonogenic, reasons: hits });
    }
    Ok(Verdict {
        kind: VerdictKind::Undecided,
        reasons: vec![Reason::Congruence(CongruenceCheck::new(m, 5, 25, OPEN_MOD_25))],
    })
}

/// Monogeneity of the field of `x^60 − a^u`, which equals `Q(a^(1/60))`.
pub fn pure60_power_case(a: i64, u: u64) -> Result<Verdict> {
    if u == 0 || u.gcd(&30) != 1 {
        return invalid(format!("u = {u} must be positive and coprime to 30"));
    }
    let (x, y) = solve_power_reduction(u, 60)?;
    let mut verdict = pure60_monogeneity(a)?;
    verdict.reasons.insert(0, Reason::PowerReduction { u, x, y });
    Ok(verdict)
}

/// Everything computed at one prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeAnalysis {
    pub prime: Prime,
    pub dedekind: DedekindReport,
    pub ore: OreAnalysis,
    pub index: IndexValuation,
    pub shape: PrimeFactorShape,
    pub witness: Option<IndexDivisorWitness>,
}

pub fn analyze_prime(f: &IntPoly, p: Prime, seed: u64) -> Result<PrimeAnalysis> {
    let dedekind = dedekind_test(f, p, seed)?;
    let ore = ore_analysis(f, p, seed)?;
    let index = ore.index_valuation();
    if dedekind.passes != (index.lower_bound == 0) {
        return Err(Error::Inconsistent(format!(
            "Dedekind and Ore disagree on whether {p} divides the index of {f}"
        )));
    }
    let shape = ore.shape();
    let witness = common_index_divisor(&shape, p);
    Ok(PrimeAnalysis { prime: p, dedekind, ore, index, shape, witness })
}

/// Per-prime data plus the verdict it supports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisReport {
    pub polynomial: IntPoly,
    pub primes: Vec<PrimeAnalysis>,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

/// Verdict from per-prime data. `covers_index` says the analysed primes
/// include every prime that can divide the index.
fn computed_verdict(primes: &[PrimeAnalysis], covers_index: bool) -> Verdict {
    let witnesses: Vec<Reason> = primes.iter().filter_map(|pa| pa.witness.clone()).map(Reason::Witness).collect();
    if !witnesses.is_empty() {
        return Verdict { kind: VerdictKind::NotMonogenic, reasons: witnesses };
    }
    let reasons = primes.iter().map(|pa| Reason::Index(pa.index)).collect();
    let closed = primes.iter().all(|pa| pa.index.exact && pa.index.lower_bound == 0);
    let kind = if closed && covers_index { VerdictKind::Monogenic } else { VerdictKind::Undecided };
    Verdict { kind, reasons }
}

const TRIAL_BOUND: u64 = 100_000;

/// Primes whose square divides `d`, and whether that list is certainly
/// complete. Factors beyond trial division are recognised when the cofactor
/// is a probable prime or the square of one.
pub fn square_divisor_primes(d: &BigInt) -> (Vec<Prime>, bool) {
    let mut rest = d.magnitude().clone();
    let mut out = Vec::new();
    if rest.is_zero() {
        return (out, false);
    }
    let mut q = 2u64;
    while q <= TRIAL_BOUND && BigUint::from(q) * q <= rest {
        let mut e = 0;
        loop {
            let (quot, r) = rest.div_rem(&BigUint::from(q));
            if !r.is_zero() {
                break;
            }
            rest = quot;
            e += 1;
        }
        if e >= 2 {
            out.push(Prime::new_unchecked(q));
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if rest.is_one() || BigUint::from(q) * q > rest || is_probable_prime(&rest) {
        return (out, true);
    }
    let s = rest.sqrt();
    if &s * &s == rest && is_probable_prime(&s) {
        if let Some(s) = s.to_u64() {
            out.push(Prime::new_unchecked(s));
            return (out, true);
        }
    }
    (out, false)
}

/// Full analysis of a monic polynomial. Without explicit primes, every prime
/// whose square divides the discriminant is examined.
pub fn analyze_polynomial(f: &IntPoly, primes: Option<&[Prime]>, seed: u64) -> Result<AnalysisReport> {
    let mut notes = Vec::new();
    let disc = discriminant(f)?;
    if disc.is_zero() {
        return invalid(format!("{f} has a repeated factor"));
    }
    let (candidates, complete) = square_divisor_primes(&disc);
    if !complete {
        notes.push("the discriminant was not fully factored; primes beyond trial division were skipped".to_string());
    }
    let (list, covers) = match primes {
        Some(ps) => {
            let covers = complete && candidates.iter().all(|c| ps.contains(c));
            (ps.to_vec(), covers)
        }
        None => (candidates, complete),
    };
    let primes = list.iter().map(|&p| analyze_prime(f, p, seed)).collect::<Result<Vec<_>>>()?;
    let verdict = computed_verdict(&primes, covers);
    Ok(AnalysisReport { polynomial: f.clone(), primes, verdict, notes })
}

/// Residues that differ from commonly quoted values, keyed by `m`.
const RESIDUE_NOTES: &[(i64, &str)] = &[
    (
        106,
        "discrepancy: 106 ≡ 1 (mod 5) but 106 ≡ 6 (mod 25), so no non-monogeneity congruence applies; \
         2 mod 4, 7 mod 9 and 6 mod 25 satisfy every integral-closure condition, hence Monogenic",
    ),
    (302, "residue check: 302 ≡ 2 (mod 25), not 6; the verdict is the same either way"),
];

/// `{2, 3, 5}` together with the prime divisors of `m`, ascending.
pub fn pure60_primes(m: i64) -> Vec<Prime> {
    let mut ps: Vec<u64> = vec![2, 3, 5];
    ps.extend(factor_small(m.unsigned_abs()).into_iter().map(|(q, _)| q));
    ps.sort_unstable();
    ps.dedup();
    ps.into_iter().map(Prime::new_unchecked).collect()
}

/// Computational analysis of `x^60 − m`, checked against the congruence
/// classifier. Only `2, 3, 5` and the primes of `m` can divide the index,
/// since `|Δ| = 60^60·|m|^59`.
pub fn analyze_pure60(m: i64, seed: u64) -> Result<AnalysisReport> {
    let by_congruence = pure60_monogeneity(m)?;
    let f = IntPoly::pure(60, &BigInt::from(m));
    let primes = pure60_primes(m)
        .into_iter()
        .map(|p| analyze_prime(&f, p, seed))
        .collect::<Result<Vec<_>>>()?;
    let computed = computed_verdict(&primes, true);
    let mut notes: Vec<String> = RESIDUE_NOTES.iter().filter(|(k, _)| *k == m).map(|(_, s)| s.to_string()).collect();

    let decided = |k: VerdictKind| k != VerdictKind::Undecided;
    if decided(by_congruence.kind) && decided(computed.kind) && by_congruence.kind != computed.kind {
        return Err(Error::Inconsistent(format!(
            "m = {m}: congruences give {} but the computation gives {}",
            by_congruence.kind, computed.kind
        )));
    }
    let kind = if decided(by_congruence.kind) { by_congruence.kind } else { computed.kind };
    if by_congruence.kind == VerdictKind::NotMonogenic && computed.kind != VerdictKind::NotMonogenic {
        notes.push("no common index divisor was certified by first-order data".to_string());
    }
    if by_congruence.kind == VerdictKind::Undecided {
        if let Some(five) = primes.iter().find(|pa| pa.prime.get() == 5) {
            notes.push(format!("open case m ≡ ±7 (mod 25): ν_5(index) = {}", five.index));
        }
    }
    let mut reasons = by_congruence.reasons;
    reasons.extend(computed.reasons);
    Ok(AnalysisReport { polynomial: f, primes, verdict: Verdict { kind, reasons }, notes })
}

/// Moves a root of `(x − c)^n − b` to a root of `x^n − b` by `x → x + c`.
pub fn unshift(f: &IntPoly, c: &BigInt) -> IntPoly {
    f.shift(c)
}

/// Returns `(c, n, b)` when `f = (x − c)^n − b` with `n ≥ 2`.
pub fn detect_shifted_pure(f: &IntPoly) -> Option<(BigInt, usize, BigInt)> {
    let n = f.degree()?;
    if n < 2 || !f.is_monic() {
        return None;
    }
    // coefficient of x^(n-1) is −n·c
    let (c, r) = (-f.coeff(n - 1)).div_rem(&BigInt::from(n));
    if !r.is_zero() {
        return None;
    }
    let g = f.shift(&c);
    let b = -g.coeff(0);
    if g == IntPoly::pure(n, &b) {
        Some((c, n, b))
    } else {
        None
    }
}

/// `b = a^u` with `u` maximal, for `|b| ≥ 2`.
pub fn perfect_power(b: &BigInt) -> (BigInt, u64) {
    let mag = b.magnitude();
    if mag <= &BigUint::one() {
        return (b.clone(), 1);
    }
    let bits = mag.bits();
    for u in (2..=bits).rev() {
        let r = mag.nth_root(u as u32);
        if num_traits::pow(r.clone(), u as usize) == *mag {
            if b.is_negative() && u % 2 == 0 {
                continue;
            }
            let root = if b.is_negative() { -BigInt::from(r) } else { BigInt::from(r) };
            return (root, u);
        }
    }
    (b.clone(), 1)
}
