//! Shared workloads for the benchmarks.

use thompson_fp::oracle::bfs_group_ball;
use thompson_fp::Word;

/// Geodesic words for every element of the Cayley ball, in a fixed order,
/// each repeated twice so rewriting has work to do.
pub fn ball_words(p: usize, radius: usize) -> Vec<Word> {
    let ball = bfs_group_ball(p, radius).expect("ball within guard");
    ball.sorted().into_iter().map(|(_, e)| e.word.concat(&e.word)).collect()
}
