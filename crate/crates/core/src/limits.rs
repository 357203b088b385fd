//! Size caps for exponential enumerations.
//!
//! Both caps can be overridden through the environment:
//! `CYMAT_ENUM_CAP` for circuit/cocircuit enumeration and `CYMAT_SEARCH_CAP`
//! for ordering search. Unparseable values fall back to the defaults.

pub const DEFAULT_ENUMERATION_CAP: usize = 20;
pub const DEFAULT_SEARCH_CAP: usize = 12;

pub const ENUMERATION_CAP_VAR: &str = "CYMAT_ENUM_CAP";
pub const SEARCH_CAP_VAR: &str = "CYMAT_SEARCH_CAP";

fn from_env(var: &str, default: usize) -> usize {
    std::env::var(var)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(default)
}

/// Largest ground set for which circuits and cocircuits are enumerated.
pub fn enumeration_cap() -> usize {
    from_env(ENUMERATION_CAP_VAR, DEFAULT_ENUMERATION_CAP)
}

/// Largest ground set for which cyclic orderings are searched.
pub fn search_cap() -> usize {
    from_env(SEARCH_CAP_VAR, DEFAULT_SEARCH_CAP)
}
