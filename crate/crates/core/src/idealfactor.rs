//! Dedekind's criterion, Ore's index bound and the first-order factorization
//! of `p·Z_K` for `K = Q(α)`, `F(α) = 0`.
//!
//! Both routes start from `F̄ = ∏ φ̄_i^{l_i}` over `F_p`, lifted to monic
//! integer `φ_i` with coefficients in `[0, p)`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{invalid, Error, Result};
use crate::intsupport::Prime;
use crate::polyalg::{factor_mod_p, fq_factor, reduce_mod_p, FqPoly, IntPoly};
use crate::polygon::{phi_expand, principal_polygon, residual_polys, NewtonPolygon, PhiExpansion, ResidualPolynomial};

/// Outcome of Dedekind's criterion at one prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DedekindReport {
    pub prime: Prime,
    pub passes: bool,
    /// Irreducible factors of `F̄` (canonical lifts) with multiplicities.
    pub factors: Vec<(IntPoly, usize)>,
    /// `M = (F − ∏ φ_i^{l_i}) / p`.
    pub m_poly: IntPoly,
    /// Repeated factors whose reduction divides `M̄`.
    pub failing_factors: Vec<(IntPoly, usize)>,
}

fn check_monic(f: &IntPoly) -> Result<usize> {
    match f.degree() {
        Some(n) if n > 0 && f.is_monic() => Ok(n),
        _ => invalid(format!("{f} is not monic of positive degree")),
    }
}

/// Dedekind's criterion: `p ∤ (Z_K : Z[α])` iff no repeated `φ̄_i` divides `M̄`.
pub fn dedekind_test(f: &IntPoly, p: Prime, seed: u64) -> Result<DedekindReport> {
    check_monic(f)?;
    let factors = factor_mod_p(f, p, seed)?;
    let product = factors
        .iter()
        .fold(IntPoly::constant(1.into()), |acc, (phi, l)| &acc * &phi.pow(*l as u32));
    let m_poly = (f - &product)
        .div_exact(&p.to_bigint())
        .ok_or_else(|| Error::Inconsistent(format!("F − ∏φ_i^l_i is not divisible by {p}")))?;
    let m_bar = reduce_mod_p(&m_poly, p);
    let mut failing_factors = Vec::new();
    for (phi, l) in &factors {
        if *l >= 2 && m_bar.rem(&reduce_mod_p(phi, p))?.is_zero() {
            failing_factors.push((phi.clone(), *l));
        }
    }
    Ok(DedekindReport { prime: p, passes: failing_factors.is_empty(), factors, m_poly, failing_factors })
}

/// One `(e, f)` class of prime ideals above `p`, with its multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ShapeEntry {
    pub e: u64,
    pub f: u64,
    pub count: u64,
}

/// The multiset of `(e, f)` over the prime ideals dividing `p·Z_K`.
///
/// An incomplete shape lists only primes that are known to exist, so every
/// count is a lower bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeFactorShape {
    pub prime: Prime,
    pub entries: Vec<ShapeEntry>,
    pub complete: bool,
}

impl PrimeFactorShape {
    /// Merges equal `(e, f)` pairs and sorts by `(e, f)`.
    pub fn new(prime: Prime, entries: impl IntoIterator<Item = ShapeEntry>, complete: bool) -> PrimeFactorShape {
        let mut merged: BTreeMap<(u64, u64), u64> = BTreeMap::new();
        for en in entries {
            if en.count > 0 {
                *merged.entry((en.e, en.f)).or_default() += en.count;
            }
        }
        let entries = merged.into_iter().map(|((e, f), count)| ShapeEntry { e, f, count }).collect();
        PrimeFactorShape { prime, entries, complete }
    }

    /// `Σ count·e·f`.
    pub fn degree_sum(&self) -> u64 {
        self.entries.iter().map(|en| en.count * en.e * en.f).sum()
    }

    /// Number of listed primes of residue degree `f`.
    pub fn primes_of_degree(&self, f: u64) -> u64 {
        self.entries.iter().filter(|en| en.f == f).map(|en| en.count).sum()
    }

    pub fn prime_count(&self) -> u64 {
        self.entries.iter().map(|en| en.count).sum()
    }

    /// Residue degrees that occur, ascending.
    pub fn residue_degrees(&self) -> Vec<u64> {
        let mut fs: Vec<u64> = self.entries.iter().map(|en| en.f).collect();
        fs.sort_unstable();
        fs.dedup();
        fs
    }

    /// Checks the fundamental identity `Σ e·f = n` for a complete shape.
    pub fn check_identity(&self, n: usize) -> Result<()> {
        if self.complete && self.degree_sum() != n as u64 {
            return Err(Error::Inconsistent(format!(
                "shape at {} sums to {} instead of {n}",
                self.prime,
                self.degree_sum()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for PrimeFactorShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|en| format!("{}×(e={}, f={})", en.count, en.e, en.f))
            .collect();
        write!(f, "{}", parts.join(" + "))?;
        if !self.complete {
            write!(f, " (partial)")?;
        }
        Ok(())
    }
}

/// Splitting of `p` read off from a passing Dedekind test.
pub fn dedekind_factorization(f: &IntPoly, p: Prime, seed: u64) -> Result<PrimeFactorShape> {
    let n = check_monic(f)?;
    let report = dedekind_test(f, p, seed)?;
    if !report.passes {
        return Err(Error::NotApplicable(format!(
            "{p} divides the index; use the Ore factorization instead"
        )));
    }
    let shape = PrimeFactorShape::new(
        p,
        report.factors.iter().map(|(phi, l)| ShapeEntry {
            e: *l as u64,
            f: phi.degree().unwrap() as u64,
            count: 1,
        }),
        true,
    );
    shape.check_identity(n)?;
    Ok(shape)
}

/// `ν_p((Z_K : Z[α]))`, or a lower bound for it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IndexValuation {
    pub prime: Prime,
    pub lower_bound: u64,
    pub exact: bool,
}

impl fmt::Display for IndexValuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exact {
            write!(f, "{}", self.lower_bound)
        } else {
            write!(f, ">= {}", self.lower_bound)
        }
    }
}

/// A residual polynomial together with its factorization over `F_φ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualAnalysis {
    pub residual: ResidualPolynomial,
    pub factors: Vec<(FqPoly, usize)>,
}

/// Polygon data for one irreducible factor of `F̄`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorAnalysis {
    pub phi: IntPoly,
    pub multiplicity: usize,
    /// Absent for simple factors, which need no polygon.
    pub expansion: Option<PhiExpansion>,
    pub polygon: Option<NewtonPolygon>,
    pub residuals: Vec<ResidualAnalysis>,
    /// `ind_φ(F)`.
    pub index: u64,
    /// Every residual polynomial is squarefree.
    pub regular: bool,
    /// Primes certified by this factor. For an irregular factor these come
    /// only from simple factors of residual polynomials.
    pub entries: Vec<ShapeEntry>,
}

/// First-order Ore data for `F` at `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OreAnalysis {
    pub prime: Prime,
    pub degree: usize,
    pub factors: Vec<FactorAnalysis>,
}

impl OreAnalysis {
    pub fn is_regular(&self) -> bool {
        self.factors.iter().all(|fa| fa.regular)
    }

    pub fn index_valuation(&self) -> IndexValuation {
        let lower_bound = self.factors.iter().map(|fa| fa.index).sum();
        IndexValuation { prime: self.prime, lower_bound, exact: lower_bound == 0 || self.is_regular() }
    }

    /// The full shape when `F` is `p`-regular, otherwise the certified part.
    pub fn shape(&self) -> PrimeFactorShape {
        PrimeFactorShape::new(
            self.prime,
            self.factors.iter().flat_map(|fa| fa.entries.iter().copied()),
            self.is_regular(),
        )
    }
}

fn analyze_factor(f: &IntPoly, p: Prime, phi: IntPoly, l: usize, seed: u64) -> Result<FactorAnalysis> {
    let deg_phi = phi.degree().unwrap() as u64;
    if l == 1 {
        return Ok(FactorAnalysis {
            phi,
            multiplicity: 1,
            expansion: None,
            polygon: None,
            residuals: Vec::new(),
            index: 0,
            regular: true,
            entries: vec![ShapeEntry { e: 1, f: deg_phi, count: 1 }],
        });
    }
    let expansion = phi_expand(f, &phi)?;
    let polygon = principal_polygon(&expansion, p)?;
    if polygon.phi_divides {
        return Err(Error::NotApplicable(format!("{phi} divides {f}, so F is reducible")));
    }
    let mut residuals = Vec::new();
    let mut entries = Vec::new();
    let mut regular = true;
    for residual in residual_polys(&expansion, &polygon)? {
        let factors = fq_factor(&residual.poly, seed)?;
        for (psi, mult) in &factors {
            if *mult == 1 {
                entries.push(ShapeEntry {
                    e: residual.side.e,
                    f: deg_phi * psi.degree().unwrap() as u64,
                    count: 1,
                });
            } else {
                regular = false;
            }
        }
        residuals.push(ResidualAnalysis { residual, factors });
    }
    let index = polygon.index();
    Ok(FactorAnalysis {
        phi,
        multiplicity: l,
        expansion: Some(expansion),
        polygon: Some(polygon),
        residuals,
        index,
        regular,
        entries,
    })
}

/// Runs the polygon machinery on every irreducible factor of `F̄`.
pub fn ore_analysis(f: &IntPoly, p: Prime, seed: u64) -> Result<OreAnalysis> {
    let degree = check_monic(f)?;
    let factors = factor_mod_p(f, p, seed)?
        .into_iter()
        .map(|(phi, l)| analyze_factor(f, p, phi, l, seed))
        .collect::<Result<Vec<_>>>()?;
    let analysis = OreAnalysis { prime: p, degree, factors };
    analysis.shape().check_identity(degree)?;
    Ok(analysis)
}

/// `Σ ind_φi(F) ≤ ν_p((Z_K : Z[α]))`, with equality when `F` is `p`-regular.
pub fn ore_index_bound(f: &IntPoly, p: Prime, seed: u64) -> Result<IndexValuation> {
    Ok(ore_analysis(f, p, seed)?.index_valuation())
}

/// The splitting of `p` given by Ore's theorem for a `p`-regular `F`.
pub fn ore_factorization(f: &IntPoly, p: Prime, seed: u64) -> Result<PrimeFactorShape> {
    let analysis = ore_analysis(f, p, seed)?;
    if !analysis.is_regular() {
        return Err(Error::NotApplicable(format!(
            "{f} is not {p}-regular; first-order Ore data does not determine the splitting"
        )));
    }
    Ok(analysis.shape())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn pure60(m: i64) -> IntPoly {
        IntPoly::pure(60, &BigInt::from(m))
    }

    fn entry(e: u64, f: u64, count: u64) -> ShapeEntry {
        ShapeEntry { e, f, count }
    }

    #[test]
    fn dedekind_examples() {
        let f = IntPoly::from_i64(&[-9, 0, 0, 1]);
        let r = dedekind_test(&f, p(3), 0).unwrap();
        assert!(!r.passes);
        assert_eq!(r.failing_factors, vec![(IntPoly::x(), 3)]);
        assert!(dedekind_test(&pure60(67), p(2), 0).unwrap().passes);
        for (m, q) in [(67, 67), (30, 2), (30, 3), (30, 5), (-105, 7)] {
            assert!(dedekind_test(&pure60(m), p(q), 0).unwrap().passes, "m={m} p={q}");
        }
        assert!(dedekind_test(&IntPoly::from_i64(&[1, 2]), p(2), 0).is_err());
    }

    #[test]
    fn dedekind_quotient_identity() {
        let f = pure60(17);
        let r = dedekind_test(&f, p(2), 0).unwrap();
        let product = r.factors.iter().fold(IntPoly::constant(1.into()), |acc, (g, l)| &acc * &g.pow(*l as u32));
        assert_eq!(&r.m_poly.scale(&BigInt::from(2)) + &product, f);
        assert!(!r.passes);
    }

    #[test]
    fn dedekind_shapes() {
        let s = dedekind_factorization(&pure60(67), p(67), 0).unwrap();
        assert_eq!(s.entries, vec![entry(60, 1, 1)]);
        let s = dedekind_factorization(&pure60(302), p(3), 0).unwrap();
        assert!(s.complete);
        assert_eq!(s.degree_sum(), 60);
        let s = dedekind_factorization(&IntPoly::from_i64(&[-3, 0, 1]), p(5), 0).unwrap();
        assert_eq!(s.entries, vec![entry(1, 2, 1)]);
        let err = dedekind_factorization(&IntPoly::from_i64(&[-9, 0, 0, 1]), p(3), 0).unwrap_err();
        assert!(matches!(err, Error::NotApplicable(_)));
    }

    #[test]
    fn ore_bounds() {
        for (m, q) in [(30, 2), (30, 3), (30, 5), (67, 67)] {
            let v = ore_index_bound(&pure60(m), p(q), 0).unwrap();
            assert_eq!((v.lower_bound, v.exact), (0, true), "m={m} p={q}");
        }
        assert!(ore_index_bound(&IntPoly::from_i64(&[-9, 0, 0, 1]), p(3), 0).unwrap().lower_bound >= 1);
    }

    #[test]
    fn ore_shapes() {
        let s = ore_factorization(&pure60(67), p(67), 0).unwrap();
        assert_eq!(s.entries, vec![entry(60, 1, 1)]);

        // m = -3: ν_2(1 - m) = 2, φ = x^2 + x + 1 gives two primes (e=2, f=2)
        let a = ore_analysis(&pure60(-3), p(2), 0).unwrap();
        let quad = a.factors.iter().find(|fa| fa.phi == IntPoly::from_i64(&[1, 1, 1])).unwrap();
        assert_eq!(quad.entries, vec![entry(2, 2, 1), entry(2, 2, 1)]);

        // m = 10: 10 ≡ 1 mod 9, φ = x - 1 contributes two primes of degree 1
        let a = ore_analysis(&pure60(10), p(3), 0).unwrap();
        let lin = a.factors.iter().find(|fa| fa.phi == IntPoly::from_i64(&[2, 1])).unwrap();
        let pts: Vec<(usize, u64)> = lin.polygon.as_ref().unwrap().vertices.iter().map(|v| (v.x, v.y)).collect();
        assert_eq!(pts[0].0, 0);
        assert!(pts[0].1 >= 2);
        assert_eq!(&pts[1..], &[(1, 1), (3, 0)]);
        assert_eq!(lin.entries.iter().filter(|en| en.f == 1).count(), 2);
    }

    #[test]
    fn dedekind_and_ore_agree() {
        let samples = [
            IntPoly::from_i64(&[-9, 0, 0, 1]),
            IntPoly::from_i64(&[12, 0, -4, 0, 1]),
            IntPoly::from_i64(&[-3, 0, 1]),
            IntPoly::from_i64(&[2, 2, 0, 1]),
        ];
        for f in &samples {
            for q in [2, 3, 5, 7] {
                let d = dedekind_test(f, p(q), 0).unwrap();
                let a = ore_analysis(f, p(q), 0).unwrap();
                assert_eq!(d.passes, a.index_valuation().lower_bound == 0, "{f} at {q}");
                if d.passes && a.is_regular() {
                    assert_eq!(dedekind_factorization(f, p(q), 0).unwrap(), a.shape());
                }
            }
        }
    }

    #[test]
    fn irregular_prime_is_not_applicable() {
        // x^4 - 4x^2 + 12 at 2: residual y^2 + 1 = (y + 1)^2
        let f = IntPoly::from_i64(&[12, 0, -4, 0, 1]);
        let a = ore_analysis(&f, p(2), 0).unwrap();
        assert!(!a.is_regular());
        assert!(!a.shape().complete);
        assert!(!a.index_valuation().exact);
        assert!(matches!(ore_factorization(&f, p(2), 0), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn reducible_input_is_rejected() {
        // (x^2 + 1) · x^2 has a_0 = 0 for φ = x at 2
        let f = IntPoly::from_i64(&[0, 0, 1, 0, 1]);
        assert!(matches!(ore_analysis(&f, p(2), 0), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn shape_merging() {
        let s = PrimeFactorShape::new(p(2), [entry(2, 2, 1), entry(1, 1, 0), entry(2, 2, 1), entry(1, 4, 3)], true);
        assert_eq!(s.entries, vec![entry(1, 4, 3), entry(2, 2, 2)]);
        assert_eq!(s.degree_sum(), 20);
        assert_eq!(s.primes_of_degree(2), 2);
        assert!(s.check_identity(20).is_ok());
        assert!(s.check_identity(21).is_err());
        assert_eq!(s.to_string(), "3×(e=1, f=4) + 2×(e=2, f=2)");
    }
}
