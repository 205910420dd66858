use std::time::{Duration, Instant};

use crate::error::{Error, Result};

/// Limits for the exponential searches (path enumeration, exact solvers).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub nodes: u64,
    pub time: Option<Duration>,
}

impl Budget {
    pub const fn nodes(nodes: u64) -> Self {
        Budget { nodes, time: None }
    }

    pub const fn unlimited() -> Self {
        Budget {
            nodes: u64::MAX,
            time: None,
        }
    }

    pub fn with_time(mut self, time: Duration) -> Self {
        self.time = Some(time);
        self
    }

    pub fn meter(&self) -> Meter {
        Meter {
            limit: self.nodes,
            deadline: self.time.map(|t| Instant::now() + t),
            used: 0,
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::nodes(50_000_000)
    }
}

/// Running node counter for one search.
#[derive(Debug)]
pub struct Meter {
    limit: u64,
    deadline: Option<Instant>,
    used: u64,
}

impl Meter {
    #[inline]
    pub fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            return Err(Error::BudgetExceeded { nodes: self.used });
        }
        if self.used & 0x3ff == 0 {
            if let Some(deadline) = self.deadline {
                if Instant::now() > deadline {
                    return Err(Error::BudgetExceeded { nodes: self.used });
                }
            }
        }
        Ok(())
    }

    pub fn used(&self) -> u64 {
        self.used
    }
}
