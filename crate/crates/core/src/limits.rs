//! Process-wide size guards.
//!
//! Doubly exponential constructions fail with [`Error::SizeLimitExceeded`]
//! instead of running away. The open-count guard can be overridden with the
//! `TOPOLAB_LIMIT_OPENS` environment variable; the CLI exposes all three.
//!
//! [`Error::SizeLimitExceeded`]: crate::Error::SizeLimitExceeded

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Once;

pub const DEFAULT_MAX_POINTS: usize = 1 << 20;
pub const DEFAULT_MAX_OPENS: usize = 1 << 24;
pub const DEFAULT_MAX_ENUMERATE: usize = 4;

pub const LIMIT_OPENS_ENV: &str = "TOPOLAB_LIMIT_OPENS";

static MAX_POINTS: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_POINTS);
static MAX_OPENS: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_OPENS);
static MAX_ENUMERATE: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_ENUMERATE);
static ENV_INIT: Once = Once::new();

fn init_from_env() {
    ENV_INIT.call_once(|| {
        if let Some(v) = std::env::var(LIMIT_OPENS_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<usize>().ok())
        {
            MAX_OPENS.store(v, Ordering::Relaxed);
        }
    });
}

/// Largest ground set any construction may produce.
pub fn max_points() -> usize {
    init_from_env();
    MAX_POINTS.load(Ordering::Relaxed)
}

/// Largest number of open sets a materialized topology may have.
pub fn max_opens() -> usize {
    init_from_env();
    MAX_OPENS.load(Ordering::Relaxed)
}

/// Largest ground set for exhaustive topology enumeration.
pub fn max_enumerate() -> usize {
    MAX_ENUMERATE.load(Ordering::Relaxed)
}

pub fn set_max_points(v: usize) {
    init_from_env();
    MAX_POINTS.store(v, Ordering::Relaxed);
}

pub fn set_max_opens(v: usize) {
    init_from_env();
    MAX_OPENS.store(v, Ordering::Relaxed);
}

pub fn set_max_enumerate(v: usize) {
    MAX_ENUMERATE.store(v, Ordering::Relaxed);
}
