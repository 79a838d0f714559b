use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Node budget for an exact search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_nodes: u64,
}

impl SearchBudget {
    pub const DEFAULT_NODES: u64 = 50_000_000;

    pub fn new(max_nodes: u64) -> Result<Self> {
        if max_nodes == 0 {
            return Err(Error::invalid("search budget must be positive"));
        }
        Ok(Self { max_nodes })
    }

    pub(crate) fn counter(self) -> NodeCounter {
        NodeCounter {
            used: 0,
            max: self.max_nodes,
        }
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            max_nodes: Self::DEFAULT_NODES,
        }
    }
}

/// Running node count of one search.
#[derive(Debug)]
pub(crate) struct NodeCounter {
    used: u64,
    max: u64,
}

impl NodeCounter {
    #[inline]
    pub(crate) fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.max {
            Err(Error::BudgetExhausted { max_nodes: self.max })
        } else {
            Ok(())
        }
    }

    #[cfg(test)]
    pub(crate) fn used(&self) -> u64 {
        self.used
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_budget_is_rejected() {
        assert!(SearchBudget::new(0).is_err());
    }

    #[test]
    fn counter_fails_after_max() {
        let mut c = SearchBudget::new(2).unwrap().counter();
        assert!(c.tick().is_ok());
        assert!(c.tick().is_ok());
        assert!(matches!(c.tick(), Err(Error::BudgetExhausted { max_nodes: 2 })));
        assert_eq!(c.used(), 3);
    }
}
