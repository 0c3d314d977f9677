//! Exhaustive enumeration of p-trees by Fordham weight.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::diagrams::PTree;
use crate::error::{Error, Result};
use crate::fordham::{CaretClass, Classifier, Position, WeightTable};

/// Largest number of trees a census may visit.
pub const CENSUS_LIMIT: u64 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositiveCensus {
    pub p: usize,
    pub max_weight: usize,
    /// `counts[w]` is the number of reduced positive elements of weight `w`.
    pub counts: Vec<u64>,
    /// First tree met at each weight, in preorder text.
    pub witnesses: Vec<Option<String>>,
    /// Largest number of `R_empty` carets seen in one counted tree.
    pub max_right_empty: usize,
    pub trees_visited: u64,
}

/// Number of p-trees with exactly `c` carets: `C(pc, c) / ((p-1)c + 1)`.
pub fn tree_count(p: usize, c: usize) -> BigUint {
    let mut binom = BigUint::from(1u32);
    for k in 0..c {
        binom = binom * BigUint::from(p * c - k) / BigUint::from(k + 1);
    }
    binom / BigUint::from((p - 1) * c + 1)
}

fn guard(p: usize, max_carets: usize) -> Result<()> {
    let total: BigUint = (0..=max_carets).map(|c| tree_count(p, c)).sum();
    if total > BigUint::from(CENSUS_LIMIT) {
        return Err(Error::GuardExceeded {
            estimate: total.to_string(),
            limit: CENSUS_LIMIT.to_string(),
            hint: "lower the maximum weight",
        });
    }
    Ok(())
}

/// Calls `f` with the preorder bits of every p-tree with exactly `carets` carets.
pub fn for_each_tree(p: usize, carets: usize, mut f: impl FnMut(&[bool])) {
    let mut bits = Vec::with_capacity(p * carets + 1);
    fill(p, carets, 1, &mut bits, &mut f);
}

/// `open` counts unfilled child slots.
fn fill(p: usize, remaining: usize, open: usize, bits: &mut Vec<bool>, f: &mut impl FnMut(&[bool])) {
    if open == 0 {
        if remaining == 0 {
            f(bits);
        }
        return;
    }
    if remaining > 0 {
        bits.push(true);
        fill(p, remaining - 1, open + p - 1, bits, f);
        bits.pop();
    }
    // A leaf may close the last slot only once all carets are placed.
    if open > 1 || remaining == 0 {
        bits.push(false);
        fill(p, remaining, open - 1, bits, f);
        bits.pop();
    }
}

fn subtree_end(p: usize, bits: &[bool], start: usize) -> usize {
    let mut open = 1usize;
    let mut i = start;
    while open > 0 {
        open = open - 1 + if bits[i] { p } else { 0 };
        i += 1;
    }
    i
}

/// A positive tree paired with the right spine is reduced iff it is empty or
/// its deepest right-spine caret has a caret among children `0..p-1`.
pub fn is_reduced_positive_bits(p: usize, bits: &[bool]) -> bool {
    if !bits[0] {
        return true;
    }
    let mut caret = 0usize;
    loop {
        let mut child = caret + 1;
        let mut inner = false;
        for _ in 0..p - 1 {
            inner |= bits[child];
            child = subtree_end(p, bits, child);
        }
        if bits[child] {
            caret = child;
        } else {
            return inner;
        }
    }
}

/// Counts reduced positive elements by Fordham weight, up to `max_weight`.
pub fn enumerate_positive_by_weight(p: usize, max_weight: usize) -> Result<PositiveCensus> {
    enumerate_positive_with(p, max_weight, &WeightTable::default())
}

/// Same census under a different weight table.
///
/// Only the root and at most one `R_empty` caret weigh 0, so trees of weight
/// `W` have at most `W + 2` carets.
pub fn enumerate_positive_with(p: usize, max_weight: usize, table: &WeightTable) -> Result<PositiveCensus> {
    if p < 2 {
        return Err(Error::InvalidP(p));
    }
    let max_carets = max_weight + 2;
    guard(p, max_carets)?;
    let mut census = PositiveCensus {
        p,
        max_weight,
        counts: vec![0; max_weight + 1],
        witnesses: vec![None; max_weight + 1],
        max_right_empty: 0,
        trees_visited: 0,
    };
    let mut classifier = Classifier::new();
    for c in 0..=max_carets {
        for_each_tree(p, c, |bits| {
            census.trees_visited += 1;
            if !is_reduced_positive_bits(p, bits) {
                return;
            }
            let (classes, _) = classifier.classify_bits(p, bits, Position::Root);
            let w: u64 = classes.iter().map(|k| u64::from(k.weight(table))).sum();
            let empties = classes.iter().filter(|&&k| k == CaretClass::RightEmpty).count();
            census.max_right_empty = census.max_right_empty.max(empties);
            if let Some(w) = w.to_usize().filter(|&w| w <= max_weight) {
                census.counts[w] += 1;
                if census.witnesses[w].is_none() {
                    census.witnesses[w] = PTree::from_preorder_bits(p, bits).map(|t| t.to_string());
                }
            }
        });
    }
    Ok(census)
}

/// Counts all subtrees (including the empty one) whose top caret sits at
/// `top`, by weight. Only valid for positions where every caret weighs at
/// least 1, i.e. left and middle positions.
pub fn enumerate_subtrees_by_weight(p: usize, top: Position, max_weight: usize) -> Result<Vec<u64>> {
    if p < 2 {
        return Err(Error::InvalidP(p));
    }
    guard(p, max_weight)?;
    let table = WeightTable::default();
    let mut counts = vec![0u64; max_weight + 1];
    let mut classifier = Classifier::new();
    for c in 0..=max_weight {
        for_each_tree(p, c, |bits| {
            let w = classifier.weight_bits(p, bits, top, &table) as usize;
            if w <= max_weight {
                counts[w] += 1;
            }
        });
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fuss_catalan_counts() {
        let p2: Vec<u64> = (0..7).map(|c| tree_count(2, c).to_u64().unwrap()).collect();
        assert_eq!(p2, vec![1, 1, 2, 5, 14, 42, 132]);
        let p3: Vec<u64> = (0..5).map(|c| tree_count(3, c).to_u64().unwrap()).collect();
        assert_eq!(p3, vec![1, 1, 3, 12, 55]);
    }

    #[test]
    fn enumeration_matches_count() {
        for p in 2..=4 {
            for c in 0..6 {
                let mut n = 0u64;
                let mut seen = std::collections::HashSet::new();
                for_each_tree(p, c, |bits| {
                    n += 1;
                    let t = PTree::from_preorder_bits(p, bits).expect("valid tree");
                    assert_eq!(t.carets(), c);
                    seen.insert(bits.to_vec());
                });
                assert_eq!(n, tree_count(p, c).to_u64().unwrap());
                assert_eq!(seen.len() as u64, n);
            }
        }
    }

    #[test]
    fn reducedness() {
        let t = |s: &str| PTree::from_preorder(2, s).unwrap().preorder_bits();
        assert!(is_reduced_positive_bits(2, &t("L")));
        assert!(!is_reduced_positive_bits(2, &t("CLL")));
        assert!(!is_reduced_positive_bits(2, &t("CLCLL")));
        assert!(is_reduced_positive_bits(2, &t("CCLLL")));
        assert!(is_reduced_positive_bits(2, &t("CCLLCCLLL")));
        assert!(!is_reduced_positive_bits(2, &t("CCLLCLL")));
    }

    #[test]
    fn small_census() {
        let c = enumerate_positive_by_weight(2, 5).unwrap();
        assert_eq!(c.counts, vec![1, 2, 4, 9, 20, 45]);
        for p in 2..=5 {
            let c = enumerate_positive_by_weight(p, 1).unwrap();
            assert_eq!(c.counts, vec![1, p as u64]);
            assert!(c.max_right_empty <= 1);
        }
    }

    #[test]
    fn guard_trips() {
        assert!(matches!(enumerate_positive_by_weight(5, 30), Err(Error::GuardExceeded { .. })));
    }
}
