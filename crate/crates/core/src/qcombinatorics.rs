//! q-integers, q-factorials, binomial coefficients and the complete homogeneous
//! symmetric function specialised at `r` ones and `r` copies of `q`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{QPoly, TPoly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QError {
    #[error("argument must be non-negative, got {0}")]
    NegativeArgument(i64),
    #[error("the expansion oracle needs a non-negative pair count, got {0}")]
    NegativePairCount(i64),
}

/// `[k] = 1 + q + … + q^{k-1}`.
pub fn q_int(k: i64) -> Result<QPoly, QError> {
    if k < 0 {
        return Err(QError::NegativeArgument(k));
    }
    Ok(QPoly::from_q_i64s(&vec![1; k as usize]))
}

/// `[k]! = [1][2]…[k]`.
pub fn q_factorial(k: i64) -> Result<QPoly, QError> {
    if k < 0 {
        return Err(QError::NegativeArgument(k));
    }
    let mut acc = QPoly::one();
    for i in 1..=k {
        acc = &acc * &q_int(i)?;
    }
    Ok(acc)
}

/// Binomial coefficient, zero outside `0 ≤ k ≤ n` (including every negative `n`).
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `h_j` evaluated at `r` ones and `r` copies of `q`, by the closed form
/// `Σ_i C(r-1+i, r-1) · C(r-1+j-i, r-1) · q^i`.
///
/// Edge table: `j < 0` gives 0, `j = 0` gives 1 (any `r`), and `j > 0` with
/// `r ≤ 0` gives 0.
pub fn h_spec(j: i64, r: i64) -> QPoly {
    if j < 0 {
        return QPoly::zero();
    }
    if j == 0 {
        return QPoly::one();
    }
    if r <= 0 {
        return QPoly::zero();
    }
    let coeffs: Vec<BigInt> = (0..=j)
        .flat_map(|i| {
            let c = binomial(r - 1 + i, r - 1) * binomial(r - 1 + j - i, r - 1);
            [c, BigInt::zero()]
        })
        .collect();
    QPoly::try_from(TPoly::new(coeffs)).expect("only even exponents were set")
}

/// Independent evaluation of `h_j({1,q}^r)` from the definition: variables are
/// adjoined one at a time with `h_j(A ∪ {v}) = Σ_a v^a · h_{j-a}(A)`.
pub fn h_spec_oracle(j: i64, r: i64) -> Result<QPoly, QError> {
    if r < 0 {
        return Err(QError::NegativePairCount(r));
    }
    if j < 0 {
        return Ok(QPoly::zero());
    }
    let j = j as usize;
    // table[d] = h_d(current alphabet), starting from the empty alphabet
    let mut table: Vec<TPoly> = (0..=j)
        .map(|d| if d == 0 { TPoly::one() } else { TPoly::zero() })
        .collect();
    let alphabet = std::iter::repeat_n(0usize, r as usize).chain(std::iter::repeat_n(1, r as usize));
    for q_exp in alphabet {
        let next = (0..=j)
            .map(|d| {
                (0..=d).fold(TPoly::zero(), |acc, a| acc + table[d - a].shift(2 * q_exp * a))
            })
            .collect();
        table = next;
    }
    Ok(QPoly::try_from(table.swap_remove(j)).expect("alphabet is q-pure"))
}
