//! Process-wide capacity limits.
//!
//! Everything in this crate grows factorially with the degree `d`, so every
//! enumeration checks `d` against a configurable cap and fails cleanly when
//! it is exceeded. The dense Weingarten oracle has its own, lower cap.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{Error, Result};

pub const DEFAULT_DEGREE_CAP: usize = 6;
pub const DEFAULT_ORACLE_CAP: usize = 5;

/// Degrees above this are never accepted, whatever the configured cap.
/// Permutations store images as `u8`.
pub const HARD_DEGREE_LIMIT: usize = 12;

static DEGREE_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_DEGREE_CAP);
static ORACLE_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_ORACLE_CAP);

pub fn degree_cap() -> usize {
    DEGREE_CAP.load(Ordering::Relaxed)
}

pub fn oracle_cap() -> usize {
    ORACLE_CAP.load(Ordering::Relaxed)
}

pub fn set_degree_cap(cap: usize) -> Result<()> {
    if cap == 0 || cap > HARD_DEGREE_LIMIT {
        return Err(Error::InvalidArgument(format!(
            "degree cap must lie in 1..={HARD_DEGREE_LIMIT}, got {cap}"
        )));
    }
    DEGREE_CAP.store(cap, Ordering::Relaxed);
    Ok(())
}

pub fn set_oracle_cap(cap: usize) -> Result<()> {
    if cap == 0 || cap > HARD_DEGREE_LIMIT {
        return Err(Error::InvalidArgument(format!(
            "oracle cap must lie in 1..={HARD_DEGREE_LIMIT}, got {cap}"
        )));
    }
    ORACLE_CAP.store(cap, Ordering::Relaxed);
    Ok(())
}

pub(crate) fn check_degree(degree: usize) -> Result<()> {
    let cap = degree_cap();
    if degree > cap {
        return Err(Error::DegreeCap { degree, cap });
    }
    Ok(())
}

pub(crate) fn check_oracle_degree(degree: usize) -> Result<()> {
    let cap = oracle_cap();
    if degree > cap {
        return Err(Error::DegreeCap { degree, cap });
    }
    Ok(())
}
