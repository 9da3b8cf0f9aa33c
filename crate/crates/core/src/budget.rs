//! Cooperative cancellation. The core crate has no clock, so long-running
//! operations poll a caller-supplied budget between units of work.

/// Polled between iterations; once it reports `true` the operation returns
/// what it has so far.
pub trait Budget: Sync {
    fn expired(&self) -> bool;
}

/// A budget that never runs out.
#[derive(Debug, Clone, Copy, Default)]
pub struct Unlimited;

impl Budget for Unlimited {
    fn expired(&self) -> bool {
        false
    }
}

impl<F: Fn() -> bool + Sync> Budget for F {
    fn expired(&self) -> bool {
        self()
    }
}
