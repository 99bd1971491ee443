use crate::error::{Error, Result};

/// Step and size caps applied before any brute-force enumeration starts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub steps: u64,
    pub max_len: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            steps: 100_000_000,
            max_len: 24,
        }
    }
}

impl Budget {
    pub fn with_steps(steps: u64) -> Self {
        Budget {
            steps,
            ..Budget::default()
        }
    }

    pub fn check(&self, what: &'static str, needed: u128) -> Result<()> {
        if needed > self.steps as u128 {
            Err(Error::Capacity {
                what,
                needed,
                budget: self.steps,
            })
        } else {
            Ok(())
        }
    }

    pub fn check_len(&self, n: usize) -> Result<()> {
        if n > self.max_len {
            return Err(Error::Capacity {
                what: "code length",
                needed: n as u128,
                budget: self.max_len as u64,
            });
        }
        Ok(())
    }
}

/// Saturating `base^exp` in u128, used only for capacity estimates.
pub(crate) fn pow_sat(base: u128, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
    }
    acc
}

pub(crate) fn factorial_sat(n: usize) -> u128 {
    (1..=n as u128).fold(1u128, |a, b| a.saturating_mul(b))
}
