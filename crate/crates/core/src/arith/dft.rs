//! Eigenvalue multiplicities of a finite-order matrix from the traces of its powers.

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use thiserror::Error;

use super::{CyclotomicNumber, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DftError {
    #[error("expected {expected} traces, got {got}")]
    Length { expected: usize, got: usize },
    #[error("multiplicity of eigenvalue exponent {index} is {value}, not a nonnegative integer")]
    NonIntegral { index: usize, value: String },
}

/// Given `traces[k] = tr(g^k)` for `k = 0..r` with `g^r = 1`, returns `m_0..m_{r-1}` where
/// `m_j` is the multiplicity of the eigenvalue `ζ_r^j`:
/// `m_j = (1/r) Σ_k tr(g^k) ζ_r^{-jk}`.
///
/// Traces may live in any conductor; they are embedded into a common multiple of `r`.
pub fn cyclo_dft_multiplicities(traces: &[CyclotomicNumber], r: u32) -> Result<Vec<u64>, DftError> {
    if traces.len() != r as usize {
        return Err(DftError::Length { expected: r as usize, got: traces.len() });
    }
    let conductor = traces.iter().fold(r, |acc, t| acc.lcm(&t.conductor()));
    let step = (conductor / r) as i64;
    let traces: Vec<CyclotomicNumber> = traces.iter().map(|t| t.embed(conductor)).collect();
    let inv_r = Rational::new(1.into(), (r as i64).into());
    (0..r as i64)
        .map(|j| {
            let mut acc = CyclotomicNumber::zero(conductor);
            for (k, t) in traces.iter().enumerate() {
                let w = CyclotomicNumber::zeta_pow(-j * k as i64 * step, conductor);
                acc = &acc + &(t * &w);
            }
            let m = acc.scale(&inv_r);
            match m.to_rational() {
                Some(q) if q.is_integer() && !q.is_negative() => {
                    Ok(q.to_integer().to_u64().expect("multiplicity fits in u64"))
                }
                _ => Err(DftError::NonIntegral { index: j as usize, value: m.to_string() }),
            }
        })
        .collect()
}

/// Total of the multiplicities; equals the matrix dimension.
pub fn multiplicity_total(m: &[u64]) -> u64 {
    m.iter().sum()
}
