//! Explicit rational induction formulae for finite permutation groups,
//! computed from series Lefschetz invariants in the rational Burnside ring.

pub mod burnside;
pub mod decomposition;
pub mod exactnum;
pub mod fincat;
pub mod induction;
pub mod permgroup;
pub mod poset;
