//! Exact scalar and polynomial arithmetic.

pub mod cyclotomic;
pub mod dft;
pub mod motive;
pub mod multipoly;
pub mod poly;

pub use cyclotomic::{cyclotomic_polynomial, totient, CyclotomicNumber};
pub use dft::{cyclo_dft_multiplicities, DftError};
pub use motive::{MotiveError, MotiveExpr};
pub use multipoly::{MultiPoly, PolyError};
pub use poly::QPoly;

/// Arbitrary-precision rational, always in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for a small rational `p/q`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

/// Serializes rationals as their `p/q` text so structured output stays readable.
pub(crate) mod rational_text {
    use serde::ser::{SerializeSeq, Serializer};

    use super::Rational;

    pub fn one<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(r)
    }

    pub fn many<S: Serializer>(rs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(rs.len()))?;
        for r in rs {
            seq.serialize_element(&r.to_string())?;
        }
        seq.end()
    }

    pub fn disagreement<S: Serializer>(d: &Option<(usize, Rational, Rational)>, s: S) -> Result<S::Ok, S::Error> {
        match d {
            Some((k, a, b)) => s.serialize_some(&(k, a.to_string(), b.to_string())),
            None => s.serialize_none(),
        }
    }
}
