//! φ-adic expansions, principal Newton polygons, residual polynomials and the
//! φ-index.
//!
//! For a monic `φ` whose reduction mod `p` is irreducible, `F = Σ a_i φ^i` with
//! `deg a_i < deg φ`. The points `(i, ν_p(a_i))` for `a_i ≠ 0` span a lower
//! convex hull; its strictly decreasing part is the principal polygon. Each side
//! of slope `−h/e` and degree `d` carries a residual polynomial of degree `d`
//! over `F_φ = F_p[t]/(φ̄)`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{invalid, Error, Result};
use crate::intsupport::{ExtNat, Prime};
use crate::polyalg::{factor_mod_p, FqContext, FqElem, FqPoly, IntPoly};

/// `F = Σ terms[i] · φ^i`, every term of degree below `deg φ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiExpansion {
    phi: IntPoly,
    terms: Vec<IntPoly>,
}

impl PhiExpansion {
    pub fn phi(&self) -> &IntPoly {
        &self.phi
    }

    pub fn terms(&self) -> &[IntPoly] {
        &self.terms
    }

    /// `a_i`, zero beyond the top of the expansion.
    pub fn term(&self, i: usize) -> IntPoly {
        self.terms.get(i).cloned().unwrap_or_default()
    }

    pub fn valuations(&self, p: Prime) -> Vec<ExtNat> {
        self.terms.iter().map(|a| a.content_valuation(p)).collect()
    }

    /// `Σ a_i φ^i`, by Horner's scheme.
    pub fn reconstruct(&self) -> IntPoly {
        self.terms.iter().rev().fold(IntPoly::zero(), |acc, a| &(&acc * &self.phi) + a)
    }
}

/// Canonical φ-expansion of `f` by repeated Euclidean division.
pub fn phi_expand(f: &IntPoly, phi: &IntPoly) -> Result<PhiExpansion> {
    if !phi.is_monic() || phi.degree() == Some(0) {
        return invalid(format!("φ = {phi} must be monic of positive degree"));
    }
    let mut terms = Vec::new();
    let mut rest = f.clone();
    while !rest.is_zero() {
        let (q, r) = rest.divrem_monic(phi)?;
        terms.push(r);
        rest = q;
    }
    Ok(PhiExpansion { phi: phi.clone(), terms })
}

/// A lattice point `(x, y)` of a Newton polygon.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: usize,
    pub y: u64,
}

impl Point {
    pub fn new(x: usize, y: u64) -> Point {
        Point { x, y }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A side of a principal polygon, of slope `−h/e` with `gcd(h, e) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Side {
    pub start: Point,
    pub end: Point,
    /// Reduced slope numerator `h` (the slope is `−h/e`).
    pub h: u64,
    /// Reduced slope denominator `e`; also the ramification index of the primes
    /// attached to this side.
    pub e: u64,
    pub length: u64,
    pub height: u64,
    /// `length / e`, the degree of the residual polynomial.
    pub degree: u64,
    /// Data points lying on the side, endpoints included, left to right.
    pub on_side: Vec<Point>,
}

impl Side {
    fn between(start: Point, end: Point) -> Side {
        let length = (end.x - start.x) as u64;
        let height = start.y - end.y;
        let g = length.gcd(&height);
        Side {
            start,
            end,
            h: height / g,
            e: length / g,
            length,
            height,
            degree: g,
            on_side: Vec::new(),
        }
    }

    /// The slope as text, `-h/e`.
    pub fn slope(&self) -> String {
        format!("-{}/{}", self.h, self.e)
    }

    /// Whether the lattice point lies on the segment.
    pub fn contains(&self, pt: Point) -> bool {
        if pt.x < self.start.x || pt.x > self.end.x {
            return false;
        }
        let dx = (pt.x - self.start.x) as u64;
        // y = start.y − h·dx/e exactly
        (dx * self.h) % self.e == 0 && pt.y as u128 + (dx * self.h / self.e) as u128 == self.start.y as u128
    }

    /// ⌊y⌋ of the side at abscissa `x` (which must lie in its range).
    fn floor_at(&self, x: usize) -> i128 {
        let dx = (x - self.start.x) as i128;
        let drop = (dx * self.h as i128 + self.e as i128 - 1) / self.e as i128;
        self.start.y as i128 - drop
    }
}

/// The principal φ-Newton polygon of `F` at `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub prime: Prime,
    pub phi: IntPoly,
    /// Sides in order of increasing slope (left to right).
    pub sides: Vec<Side>,
    /// Side endpoints, left to right.
    pub vertices: Vec<Point>,
    /// The point cloud `(i, ν_p(a_i))` for every `a_i ≠ 0`.
    pub points: Vec<Point>,
    /// `a_0 = 0`, i.e. `φ` divides `F`; the polygon then starts at the first
    /// nonzero term.
    pub phi_divides: bool,
}

impl NewtonPolygon {
    /// Principal polygon of a point cloud given as `(i, u_i)` pairs. Points with
    /// `u_i = Infinity` are ignored.
    pub fn from_points(prime: Prime, phi: IntPoly, points: &[(usize, ExtNat)]) -> Result<NewtonPolygon> {
        let mut finite: Vec<Point> = points
            .iter()
            .filter_map(|&(x, u)| u.finite().map(|y| Point::new(x, y)))
            .collect();
        finite.sort();
        finite.dedup_by_key(|pt| pt.x);
        if finite.is_empty() {
            return invalid("every valuation is infinite; no polygon exists");
        }
        let phi_divides = finite[0].x > 0;

        // Lower hull by monotone chain, dropping collinear interior points.
        let mut hull: Vec<Point> = Vec::new();
        for &pt in &finite {
            while hull.len() >= 2 {
                let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
                if cross(a, b, pt) <= 0 {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(pt);
        }

        let mut sides = Vec::new();
        for w in hull.windows(2) {
            if w[1].y >= w[0].y {
                break;
            }
            let mut side = Side::between(w[0], w[1]);
            side.on_side = finite.iter().copied().filter(|&pt| side.contains(pt)).collect();
            sides.push(side);
        }
        let mut vertices = Vec::new();
        if let Some(first) = sides.first() {
            vertices.push(first.start);
            vertices.extend(sides.iter().map(|s| s.end));
        }
        Ok(NewtonPolygon { prime, phi, sides, vertices, points: finite, phi_divides })
    }

    pub fn is_empty(&self) -> bool {
        self.sides.is_empty()
    }

    /// Lattice points `(x, y)` with `x ≥ 1`, `y ≥ 1` on or under the polygon.
    pub fn counted_points(&self) -> Vec<Point> {
        let mut out = Vec::new();
        let Some(first) = self.sides.first() else { return out };
        let x0 = first.start.x.max(1);
        for x in x0..=self.sides.last().unwrap().end.x {
            let side = self.sides.iter().find(|s| s.start.x <= x && x <= s.end.x).unwrap();
            for y in 1..=side.floor_at(x).max(0) as u64 {
                out.push(Point::new(x, y));
            }
        }
        out
    }

    /// `ind_φ(F)`: `deg φ` times the number of counted lattice points.
    pub fn index(&self) -> u64 {
        self.phi.degree().unwrap_or(0) as u64 * self.counted_points().len() as u64
    }
}

fn cross(o: Point, a: Point, b: Point) -> i128 {
    let (ox, oy) = (o.x as i128, o.y as i128);
    (a.x as i128 - ox) * (b.y as i128 - oy) - (a.y as i128 - oy) * (b.x as i128 - ox)
}

/// The principal polygon of an expansion at `p`.
pub fn principal_polygon(exp: &PhiExpansion, p: Prime) -> Result<NewtonPolygon> {
    let pts: Vec<(usize, ExtNat)> = exp.valuations(p).into_iter().enumerate().collect();
    NewtonPolygon::from_points(p, exp.phi.clone(), &pts)
}

pub fn phi_index(exp: &PhiExpansion, p: Prime) -> Result<u64> {
    Ok(principal_polygon(exp, p)?.index())
}

/// The residual polynomial attached to one side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualPolynomial {
    pub side: Side,
    /// Polynomial in `y` over `F_φ`.
    pub poly: FqPoly,
}

impl ResidualPolynomial {
    pub fn is_squarefree(&self) -> bool {
        self.poly.is_squarefree()
    }
}

/// Residue coefficient `(a_i / p^(u_i)) mod (p, φ)` for a point on the side.
fn residue_coefficient(exp: &PhiExpansion, p: Prime, ctx: &FqContext, i: usize, u: u64) -> FqElem {
    let scale = num_traits::pow(BigInt::from(p.get()), u as usize);
    let reduced = exp.term(i).div_exact(&scale).expect("u is the content valuation");
    ctx.from_int_poly(&reduced)
}

fn residual_on(exp: &PhiExpansion, p: Prime, ctx: &Arc<FqContext>, side: &Side) -> ResidualPolynomial {
    let coeffs = (0..=side.degree)
        .map(|k| {
            let x = side.start.x + (k * side.e) as usize;
            let y = side.start.y - k * side.h;
            if side.on_side.contains(&Point::new(x, y)) {
                residue_coefficient(exp, p, ctx, x, y)
            } else {
                ctx.zero()
            }
        })
        .collect();
    ResidualPolynomial { side: side.clone(), poly: FqPoly::new(ctx.clone(), coeffs) }
}

/// `R_λ(F)(y)` for a side of the principal polygon of `exp` at `p`.
pub fn residual_poly(exp: &PhiExpansion, p: Prime, side: &Side) -> Result<ResidualPolynomial> {
    let polygon = principal_polygon(exp, p)?;
    if !polygon.sides.contains(side) {
        return invalid("side does not belong to the principal polygon");
    }
    let ctx = FqContext::new(p, &exp.phi)?;
    Ok(residual_on(exp, p, &ctx, side))
}

/// Residual polynomials of every side, in side order.
pub fn residual_polys(exp: &PhiExpansion, polygon: &NewtonPolygon) -> Result<Vec<ResidualPolynomial>> {
    if polygon.is_empty() {
        return Ok(Vec::new());
    }
    let ctx = FqContext::new(polygon.prime, &exp.phi)?;
    let out: Vec<ResidualPolynomial> =
        polygon.sides.iter().map(|s| residual_on(exp, polygon.prime, &ctx, s)).collect();
    for r in &out {
        if r.poly.degree() != Some(r.side.degree as usize) || r.poly.coeff(0).is_zero() {
            return Err(Error::Inconsistent(format!(
                "residual polynomial of side {}–{} has the wrong shape",
                r.side.start, r.side.end
            )));
        }
    }
    Ok(out)
}

/// Every residual polynomial of the principal polygon is squarefree.
pub fn is_phi_regular(exp: &PhiExpansion, p: Prime) -> Result<bool> {
    let polygon = principal_polygon(exp, p)?;
    Ok(residual_polys(exp, &polygon)?.iter().all(ResidualPolynomial::is_squarefree))
}

/// `F` is φ-regular for the canonical lift of every irreducible factor of `F̄`.
pub fn is_p_regular(f: &IntPoly, p: Prime, seed: u64) -> Result<bool> {
    if f.residues(p).is_empty() {
        return invalid(format!("{f} vanishes modulo {p}"));
    }
    for (phi, _) in factor_mod_p(f, p, seed)? {
        if phi.degree() == Some(0) {
            continue;
        }
        if !is_phi_regular(&phi_expand(f, &phi)?, p)? {
            return Ok(false);
        }
    }
    Ok(true)
}
