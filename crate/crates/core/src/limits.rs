use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::grid::DEFAULT_BOX_CAP;

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// Resource limits shared by the depth and Stanley depth engines.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub box_cap: u128,
    /// Search nodes allowed per `exists_partition` call.
    pub node_budget: u64,
    pub deadline: Option<Instant>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            box_cap: DEFAULT_BOX_CAP,
            node_budget: DEFAULT_NODE_BUDGET,
            deadline: None,
        }
    }
}

impl Limits {
    pub fn with_timeout(mut self, timeout: Duration) -> Self {
        self.deadline = Some(Instant::now() + timeout);
        self
    }

    pub(crate) fn check_deadline(&self, started: Instant) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() >= d => Err(Error::Timeout {
                elapsed_ms: started.elapsed().as_millis(),
            }),
            _ => Ok(()),
        }
    }
}
