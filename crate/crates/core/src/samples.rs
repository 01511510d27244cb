//! Example schedule tables shipped with the crate.

/// Twelve-activity project with durations; explicit α/ω rows.
pub const TWELVE_ACTIVITIES: &str = include_str!("../data/table1.csv");

/// Fourteen-activity precedence-only project whose network needs five
/// dummy activities.
pub const FIVE_DUMMIES: &str = include_str!("../data/table3.csv");

/// Smallest table that needs a dummy: `c` after `a` and `b`, `d` after `b`.
pub const SINGLE_Z: &str = include_str!("../data/single_z.csv");
