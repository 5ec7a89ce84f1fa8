//! Exact Bernoulli numbers from the binomial convolution recurrence
//! `sum_{k=0}^{n} C(n+1, k) B_k = 0`, with `B_1 = -1/2`.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Result, ZetaError};

/// Largest index accepted by [`bernoulli_table`].
pub const MAX_BERNOULLI_INDEX: usize = 120;

/// Exact rationals `B_0 ..= B_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BernoulliTable {
    values: Vec<BigRational>,
}

/// A Bernoulli number as a reduced numerator/denominator pair (decimal strings).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RationalPair {
    pub numerator: String,
    pub denominator: String,
}

impl BernoulliTable {
    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, index: usize) -> Option<&BigRational> {
        self.values.get(index)
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn pair(&self, index: usize) -> Option<RationalPair> {
        self.values.get(index).map(|b| RationalPair {
            numerator: b.numer().to_string(),
            denominator: b.denom().to_string(),
        })
    }
}

/// Builds `B_0 ..= B_max_index` exactly.
pub fn bernoulli_table(max_index: usize) -> Result<BernoulliTable> {
    if max_index > MAX_BERNOULLI_INDEX {
        return Err(ZetaError::Parameter(format!(
            "Bernoulli index {max_index} exceeds {MAX_BERNOULLI_INDEX}"
        )));
    }
    Ok(BernoulliTable {
        values: generate(max_index),
    })
}

fn generate(max_index: usize) -> Vec<BigRational> {
    let mut values: Vec<BigRational> = Vec::with_capacity(max_index + 1);
    values.push(BigRational::one());
    // row holds C(n+1, k) for k = 0..=n+1
    let mut row: Vec<BigInt> = vec![BigInt::one(), BigInt::one()];
    for n in 1..=max_index {
        row = next_binomial_row(&row);
        if n > 1 && n % 2 == 1 {
            values.push(BigRational::zero());
            continue;
        }
        let mut acc = BigRational::zero();
        for (k, b) in values.iter().enumerate() {
            if !b.is_zero() {
                acc += b * BigRational::from_integer(row[k].clone());
            }
        }
        let lead = BigRational::from_integer(row[n].clone());
        values.push(-acc / lead);
    }
    values
}

fn next_binomial_row(row: &[BigInt]) -> Vec<BigInt> {
    let mut next = Vec::with_capacity(row.len() + 1);
    next.push(BigInt::one());
    for pair in row.windows(2) {
        next.push(&pair[0] + &pair[1]);
    }
    next.push(BigInt::one());
    next
}

/// Euler-Maclaurin coefficients `B_{2k} / (2k)!` for `k = 0 ..= 61`, rounded
/// once from the exact rationals. Index 61 is only used for the error estimate
/// of a 60-term tail.
pub(crate) fn em_coefficients() -> &'static [f64] {
    static COEFFS: OnceLock<Vec<f64>> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let bern = generate(122);
        let mut factorial = BigInt::one();
        let mut out = Vec::with_capacity(62);
        for (i, b) in bern.iter().enumerate() {
            if i > 0 {
                factorial *= BigInt::from(i);
            }
            if i % 2 == 0 {
                let c = b / BigRational::from_integer(factorial.clone());
                out.push(c.to_f64().expect("finite EM coefficient"));
            }
        }
        out
    })
}
