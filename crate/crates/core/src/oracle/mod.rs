//! Brute-force ground truth: weight censuses, Cayley balls and the
//! cross-check harness.

pub mod ball;
pub mod census;
pub mod verify;

pub use ball::{bfs_group_ball, bfs_positive_monoid, BallElement, BallStats};
pub use census::{enumerate_positive_by_weight, enumerate_positive_with, enumerate_subtrees_by_weight, PositiveCensus};
pub use verify::{verify_suite, verify_suite_with, CheckResult, Profile, Status, VerifyConfig, VerifyReport};
