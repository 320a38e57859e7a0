//! Guide chapters, compiled as doctests.

#[doc = include_str!("../../../book/src/introduction.md")]
mod introduction {}

#[doc = include_str!("../../../book/src/landau-levels.md")]
mod landau_levels {}

#[doc = include_str!("../../../book/src/overlap-weights.md")]
mod overlap_weights {}

#[doc = include_str!("../../../book/src/rate-engine.md")]
mod rate_engine {}

#[doc = include_str!("../../../book/src/lowest-level.md")]
mod lowest_level {}

#[doc = include_str!("../../../book/src/units.md")]
mod units {}

#[doc = include_str!("../../../book/src/cli.md")]
mod cli {}
