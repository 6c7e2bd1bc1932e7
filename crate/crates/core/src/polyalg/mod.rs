//! Exact polynomial algebra over `Z`, `F_p` and `F_{p^d}`.

mod factor;
mod fp;
mod fq;
mod intpoly;
mod resultant;

pub use factor::{distinct_degree, equal_degree, fq_factor, is_irreducible, squarefree_decomposition};
pub use fq::{FqContext, FqElem, FqPoly};
pub use intpoly::IntPoly;
pub use resultant::{discriminant, resultant};

use crate::error::Result;
use crate::intsupport::Prime;

/// `a (mod p)` as a polynomial over the prime field.
pub fn reduce_mod_p(a: &IntPoly, p: Prime) -> FqPoly {
    FqPoly::from_int_poly(FqContext::prime_field(p), a)
}

/// `(q, r)` with `a = q·b + r` and `deg r < deg b`, for monic `b`.
pub fn poly_divrem(a: &IntPoly, b: &IntPoly) -> Result<(IntPoly, IntPoly)> {
    a.divrem_monic(b)
}

/// Factor `a mod p` into monic irreducibles, returning canonical integer lifts
/// (coefficients in `[0, p)`) with multiplicities.
pub fn factor_mod_p(a: &IntPoly, p: Prime, seed: u64) -> Result<Vec<(IntPoly, usize)>> {
    let reduced = reduce_mod_p(a, p);
    Ok(fq_factor(&reduced, seed)?
        .into_iter()
        .map(|(g, m)| (g.lift_prime_field(), m))
        .collect())
}
