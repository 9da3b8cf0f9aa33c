use std::time::{Duration, Instant};

use lfqas_core::budget::Budget;

/// Wall-clock budget measured from construction.
#[derive(Debug, Clone, Copy)]
pub struct Deadline {
    start: Instant,
    limit: Option<Duration>,
}

impl Deadline {
    pub fn new(limit: Option<Duration>) -> Self {
        Deadline { start: Instant::now(), limit }
    }

    pub fn unlimited() -> Self {
        Deadline::new(None)
    }

    pub fn elapsed(&self) -> Duration {
        self.start.elapsed()
    }
}

impl Budget for Deadline {
    fn expired(&self) -> bool {
        self.limit.is_some_and(|l| self.start.elapsed() >= l)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_limit_is_expired_and_none_never_is() {
        assert!(Deadline::new(Some(Duration::ZERO)).expired());
        assert!(!Deadline::unlimited().expired());
        assert!(!Deadline::new(Some(Duration::from_secs(3600))).expired());
    }
}
