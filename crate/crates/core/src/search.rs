//! Search limits shared by the exhaustive algorithms.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Hom/End spaces with at most this many elements are searched exhaustively.
pub const SEARCH_BOUND: u64 = 1 << 16;

/// Random trials used once a space is above [`SEARCH_BOUND`].
pub const RANDOM_TRIALS: usize = 512;

pub const DEFAULT_BUDGET: u64 = 5_000_000;

/// A step counter for long searches; exceeding it aborts with
/// [`Error::BudgetExceeded`] instead of running unbounded.
#[derive(Clone, Debug)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn unlimited() -> Self {
        Budget::new(u64::MAX)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn spend(&mut self, steps: u64) -> Result<()> {
        self.used = self.used.saturating_add(steps);
        if self.used > self.limit {
            Err(Error::BudgetExceeded { budget: self.limit })
        } else {
            Ok(())
        }
    }

    /// Fails up front when a search of `steps` would not fit.
    pub fn require(&self, steps: u128) -> Result<()> {
        if steps > (self.limit - self.used.min(self.limit)) as u128 {
            Err(Error::BudgetExceeded { budget: self.limit })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_BUDGET)
    }
}

/// All coefficient tuples in `F_p^d`, first coordinate varying fastest.
pub struct Tuples {
    p: u32,
    current: Option<Vec<u32>>,
}

impl Tuples {
    pub fn new(p: u32, d: usize) -> Self {
        Tuples {
            p,
            current: Some(vec![0; d]),
        }
    }
}

impl Iterator for Tuples {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().unwrap();
        let mut i = 0;
        loop {
            if i == cur.len() {
                self.current = None;
                break;
            }
            cur[i] += 1;
            if cur[i] < self.p {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
        Some(out)
    }
}

/// `p^d`, saturating.
pub fn cardinality(p: u32, d: usize) -> u128 {
    (p as u128).saturating_pow(d.min(128) as u32)
}

pub(crate) fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x0f17_7a5e_ed00_0000 ^ salt)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuples_enumerate_everything_once() {
        let all: Vec<_> = Tuples::new(3, 2).collect();
        assert_eq!(all.len(), 9);
        assert_eq!(all[0], vec![0, 0]);
        assert_eq!(all[1], vec![1, 0]);
        assert_eq!(Tuples::new(2, 0).count(), 1);
    }

    #[test]
    fn budget_trips() {
        let mut b = Budget::new(10);
        assert!(b.spend(10).is_ok());
        assert_eq!(b.spend(1), Err(Error::BudgetExceeded { budget: 10 }));
        assert!(Budget::new(5).require(6).is_err());
    }
}
