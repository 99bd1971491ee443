use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

pub fn factorial(n: u32) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// `(n; b_1, …, b_m) = n! / (b_1! ⋯ b_m!)`. The parts must sum to `n`.
pub fn multinomial(n: u32, parts: &[u32]) -> Result<BigUint> {
    let sum: u64 = parts.iter().map(|&b| b as u64).sum();
    if sum != n as u64 {
        return Err(Error::InvalidArgument(format!(
            "multinomial parts sum to {sum}, expected {n}"
        )));
    }
    // product of binomials keeps intermediates small
    let mut acc = BigUint::one();
    let mut filled: u32 = 0;
    for &b in parts {
        filled += b;
        acc *= binomial(filled, b);
    }
    Ok(acc)
}

pub fn binomial(n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_values() {
        assert_eq!(multinomial(2, &[2, 0]).unwrap(), BigUint::from(1u32));
        assert_eq!(multinomial(4, &[2, 1, 1]).unwrap(), BigUint::from(12u32));
        assert_eq!(multinomial(0, &[0, 0, 0]).unwrap(), BigUint::from(1u32));
        assert_eq!(multinomial(0, &[]).unwrap(), BigUint::from(1u32));
        assert!(multinomial(3, &[1, 1]).is_err());
        assert_eq!(binomial(5, 7), BigUint::ZERO);
    }

    proptest! {
        #[test]
        fn agrees_with_factorial_ratio(parts in proptest::collection::vec(0u32..9, 0..6)) {
            let n: u32 = parts.iter().sum();
            let denom = parts.iter().fold(BigUint::one(), |acc, &b| acc * factorial(b));
            prop_assert_eq!(multinomial(n, &parts).unwrap(), factorial(n) / denom);
        }
    }
}
