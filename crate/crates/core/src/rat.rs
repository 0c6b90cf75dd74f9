//! Exact rational scalars.
//!
//! Every number in this workspace is a [`Rat`] — an arbitrary-precision
//! rational in lowest terms. There are no floats and no tolerances anywhere;
//! equality of scalars, matrices and morphisms is always exact.

use num_bigint::BigInt;

pub type Rat = num_rational::BigRational;

/// `n/d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as an exact rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"` (optionally signed) into a rational.
///
/// The result is reduced to lowest terms; a zero denominator is rejected.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    match s.parse::<Rat>() {
        Ok(r) => Ok(r),
        Err(_) => Err(format!("`{s}` is not a rational (expected `p` or `p/q`)")),
    }
}

/// Formats a rational as `p/q` in lowest terms, omitting `/q` when `q == 1`.
///
/// This is the canonical text form used by the CLI; it is exactly the
/// `Display` of the reduced fraction.
pub fn format_rat(r: &Rat) -> String {
    r.to_string()
}
