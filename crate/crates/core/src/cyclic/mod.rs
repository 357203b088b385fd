//! Cyclic orderings and the nearly cyclic and fully cyclic conditions.
//!
//! For an ordering `(e_1, .., e_n)` the `k`-window at `i` is
//! `{e_i, .., e_{i+k-1}}` with positions taken mod `n`. An ordering is nearly
//! `(s, t)`-cyclic when every `(s-1)`-window lies in an `s`-element circuit
//! and every `(t-1)`-window in a `t`-element cocircuit. It is `(s, t)`-cyclic
//! (full) when `s`-windows at one parity class of starts are circuits and
//! `t`-windows at one parity class are cocircuits, in the sense of clauses
//! (i)-(iv) checked by [`certify`].

mod certificate;
mod ordering;
mod search;
mod windows;

pub use certificate::{
    bound_predicates, certify, is_fully_cyclic, is_nearly_cyclic, BoundReport, OrderingCertificate,
    OrderingKind, Parity, StParams,
};
pub use ordering::CyclicOrdering;
pub use search::{find_orderings, find_orderings_capped, SearchMode};
pub use windows::{
    check_adjacent_windows, check_closure_windows, check_matroid_rank, check_nearly_upgrade,
    check_odd_window_upgrade, check_unique_window_circuit, check_window_ranks,
    check_window_structure, closure_windows, window_rank, ClosureOutcome, RankPrediction,
    UpgradeOutcome,
};
