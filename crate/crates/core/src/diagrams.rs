//! Tree-pair diagrams for F(p).
//!
//! An element is a pair of rooted p-trees with the same number of leaves.
//! A word `g1 g2` evaluates as `compose(g1, g2)`: the target of the left
//! factor is matched against the source of the right factor.

use std::fmt;

use crate::error::{Error, Result};
use crate::words::{Sign, Word};

/// A rooted tree in which every internal node (caret) has exactly p children.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PTree {
    Leaf,
    Caret(Vec<PTree>),
}

impl PTree {
    pub fn caret_of_leaves(p: usize) -> PTree {
        PTree::Caret(vec![PTree::Leaf; p])
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, PTree::Leaf)
    }

    pub fn children(&self) -> &[PTree] {
        match self {
            PTree::Leaf => &[],
            PTree::Caret(ch) => ch,
        }
    }

    /// A caret whose children are all leaves.
    pub fn is_exposed_caret(&self) -> bool {
        match self {
            PTree::Leaf => false,
            PTree::Caret(ch) => ch.iter().all(PTree::is_leaf),
        }
    }

    pub fn carets(&self) -> usize {
        match self {
            PTree::Leaf => 0,
            PTree::Caret(ch) => 1 + ch.iter().map(PTree::carets).sum::<usize>(),
        }
    }

    pub fn leaves(&self) -> usize {
        match self {
            PTree::Leaf => 1,
            PTree::Caret(ch) => ch.iter().map(PTree::leaves).sum(),
        }
    }

    /// Preorder text: `C` then the children, `L` for a leaf.
    pub fn preorder(&self) -> String {
        let mut s = String::new();
        self.write_preorder(&mut s);
        s
    }

    fn write_preorder(&self, out: &mut String) {
        match self {
            PTree::Leaf => out.push('L'),
            PTree::Caret(ch) => {
                out.push('C');
                ch.iter().for_each(|c| c.write_preorder(out));
            }
        }
    }

    /// Preorder as booleans, `true` for a caret.
    pub fn preorder_bits(&self) -> Vec<bool> {
        let mut bits = Vec::with_capacity(2 * self.carets() + 1);
        self.push_bits(&mut bits);
        bits
    }

    fn push_bits(&self, out: &mut Vec<bool>) {
        match self {
            PTree::Leaf => out.push(false),
            PTree::Caret(ch) => {
                out.push(true);
                ch.iter().for_each(|c| c.push_bits(out));
            }
        }
    }

    pub fn from_preorder_bits(p: usize, bits: &[bool]) -> Option<PTree> {
        let mut pos = 0;
        let tree = Self::read_bits(p, bits, &mut pos)?;
        (pos == bits.len()).then_some(tree)
    }

    fn read_bits(p: usize, bits: &[bool], pos: &mut usize) -> Option<PTree> {
        let is_caret = *bits.get(*pos)?;
        *pos += 1;
        if !is_caret {
            return Some(PTree::Leaf);
        }
        let children = (0..p).map(|_| Self::read_bits(p, bits, pos)).collect::<Option<Vec<_>>>()?;
        Some(PTree::Caret(children))
    }

    pub fn from_preorder(p: usize, text: &str) -> Option<PTree> {
        let bits = text
            .chars()
            .map(|c| match c {
                'C' => Some(true),
                'L' => Some(false),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()?;
        Self::from_preorder_bits(p, &bits)
    }

    /// True iff the tree is `R_k` for some k: every caret hangs from child p-1.
    pub fn is_right_spine(&self) -> bool {
        match self {
            PTree::Leaf => true,
            PTree::Caret(ch) => {
                let (last, rest) = ch.split_last().expect("caret has children");
                rest.iter().all(PTree::is_leaf) && last.is_right_spine()
            }
        }
    }

    /// Replace leaf number `leaf` with a caret of leaves.
    pub fn with_caret_at_leaf(&self, p: usize, leaf: usize) -> PTree {
        let mut counter = 0;
        self.map_leaves(&mut |_| {
            let t = if counter == leaf { PTree::caret_of_leaves(p) } else { PTree::Leaf };
            counter += 1;
            t
        })
    }

    /// Rebuild the tree replacing each leaf, in left-to-right order.
    fn map_leaves(&self, f: &mut impl FnMut(usize) -> PTree) -> PTree {
        fn go(t: &PTree, next: &mut usize, f: &mut impl FnMut(usize) -> PTree) -> PTree {
            match t {
                PTree::Leaf => {
                    let i = *next;
                    *next += 1;
                    f(i)
                }
                PTree::Caret(ch) => PTree::Caret(ch.iter().map(|c| go(c, next, f)).collect()),
            }
        }
        go(self, &mut 0, f)
    }

    /// Starting leaf index of every exposed caret, in increasing order.
    fn exposed_starts(&self) -> Vec<usize> {
        fn go(t: &PTree, next: &mut usize, out: &mut Vec<usize>) {
            match t {
                PTree::Leaf => *next += 1,
                PTree::Caret(ch) if t.is_exposed_caret() => {
                    out.push(*next);
                    *next += ch.len();
                }
                PTree::Caret(ch) => ch.iter().for_each(|c| go(c, next, out)),
            }
        }
        let mut out = Vec::new();
        go(self, &mut 0, &mut out);
        out
    }

    /// Collapse the exposed carets whose first leaf is in `starts` (sorted).
    fn collapse(&self, starts: &[usize]) -> PTree {
        fn go(t: &PTree, next: &mut usize, starts: &[usize]) -> PTree {
            match t {
                PTree::Leaf => {
                    *next += 1;
                    PTree::Leaf
                }
                PTree::Caret(ch) if t.is_exposed_caret() => {
                    let start = *next;
                    *next += ch.len();
                    if starts.binary_search(&start).is_ok() {
                        PTree::Leaf
                    } else {
                        t.clone()
                    }
                }
                PTree::Caret(ch) => PTree::Caret(ch.iter().map(|c| go(c, next, starts)).collect()),
            }
        }
        go(self, &mut 0, starts)
    }
}

impl fmt::Display for PTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.preorder())
    }
}

/// `R_k`: k carets, each hanging from child p-1 of the previous one.
pub fn right_spine(p: usize, k: usize) -> PTree {
    (0..k).fold(PTree::Leaf, |below, _| {
        let mut ch = vec![PTree::Leaf; p];
        ch[p - 1] = below;
        PTree::Caret(ch)
    })
}

/// Least common refinement of two trees.
fn union(a: &PTree, b: &PTree) -> PTree {
    match (a, b) {
        (PTree::Leaf, t) | (t, PTree::Leaf) => t.clone(),
        (PTree::Caret(x), PTree::Caret(y)) => {
            PTree::Caret(x.iter().zip(y).map(|(u, v)| union(u, v)).collect())
        }
    }
}

/// For each leaf of `tree`, the subtree of `refinement` hanging at that leaf.
fn leaf_expansions(tree: &PTree, refinement: &PTree, out: &mut Vec<PTree>) {
    match tree {
        PTree::Leaf => out.push(refinement.clone()),
        PTree::Caret(ch) => {
            let rch = refinement.children();
            for (c, r) in ch.iter().zip(rch) {
                leaf_expansions(c, r, out);
            }
        }
    }
}

fn graft(tree: &PTree, subtrees: Vec<PTree>) -> PTree {
    let mut it = subtrees.into_iter();
    tree.map_leaves(&mut |_| it.next().expect("one subtree per leaf"))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TreePair {
    p: usize,
    source: PTree,
    target: PTree,
}

impl TreePair {
    /// Pair two trees. Panics if p < 2 or the leaf counts differ.
    pub fn new(p: usize, source: PTree, target: PTree) -> TreePair {
        assert!(p >= 2, "F(p) needs p >= 2");
        assert_eq!(source.leaves(), target.leaves(), "source and target leaf counts differ");
        TreePair { p, source, target }
    }

    pub fn identity(p: usize) -> TreePair {
        TreePair::new(p, PTree::Leaf, PTree::Leaf)
    }

    /// Reduced diagram of `x_n`: source is `R_k` with a caret at leaf n,
    /// target is `R_{k+1}`, where `k = n/(p-1) + 1`.
    pub fn generator(p: usize, n: usize) -> TreePair {
        assert!(p >= 2, "F(p) needs p >= 2");
        let k = n / (p - 1) + 1;
        TreePair::new(p, right_spine(p, k).with_caret_at_leaf(p, n), right_spine(p, k + 1))
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn source(&self) -> &PTree {
        &self.source
    }

    pub fn target(&self) -> &PTree {
        &self.target
    }

    pub fn is_identity(&self) -> bool {
        self.source.is_leaf() && self.target.is_leaf()
    }

    pub fn inverse(&self) -> TreePair {
        TreePair { p: self.p, source: self.target.clone(), target: self.source.clone() }
    }

    /// The reduced diagram of `self * other`.
    pub fn compose(&self, other: &TreePair) -> Result<TreePair> {
        if self.p != other.p {
            return Err(Error::MismatchedP { left: self.p, right: other.p });
        }
        let common = union(&self.target, &other.source);
        let mut left = Vec::new();
        leaf_expansions(&self.target, &common, &mut left);
        let mut right = Vec::new();
        leaf_expansions(&other.source, &common, &mut right);
        let pair = TreePair {
            p: self.p,
            source: graft(&self.source, left),
            target: graft(&other.target, right),
        };
        Ok(pair.reduce())
    }

    /// Remove caret pairs exposed on the same leaf range in both trees.
    pub fn reduce(&self) -> TreePair {
        let mut source = self.source.clone();
        let mut target = self.target.clone();
        loop {
            let s = source.exposed_starts();
            let t = target.exposed_starts();
            let common = sorted_intersection(&s, &t);
            if common.is_empty() {
                return TreePair { p: self.p, source, target };
            }
            source = source.collapse(&common);
            target = target.collapse(&common);
        }
    }

    pub fn is_reduced(&self) -> bool {
        sorted_intersection(&self.source.exposed_starts(), &self.target.exposed_starts())
            .is_empty()
    }

    /// Word-problem test: equal reduced representatives.
    pub fn equal(&self, other: &TreePair) -> Result<bool> {
        if self.p != other.p {
            return Err(Error::MismatchedP { left: self.p, right: other.p });
        }
        let (a, b) = (self.reduce(), other.reduce());
        Ok(a.source == b.source && a.target == b.target)
    }

    /// Positive elements have a right spine as the target of the reduced pair.
    pub fn is_positive(&self) -> bool {
        self.reduce().target.is_right_spine()
    }

    /// `source|target` in preorder text.
    pub fn canonical(&self) -> String {
        format!("{}|{}", self.source, self.target)
    }

    pub fn from_canonical(p: usize, text: &str) -> Option<TreePair> {
        let (s, t) = text.split_once('|')?;
        let source = PTree::from_preorder(p, s)?;
        let target = PTree::from_preorder(p, t)?;
        (source.leaves() == target.leaves()).then_some(TreePair { p, source, target })
    }
}

impl fmt::Display for TreePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.source, self.target)
    }
}

fn sorted_intersection(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

pub fn generator_pair(p: usize, n: usize) -> TreePair {
    TreePair::generator(p, n)
}

pub fn compose(a: &TreePair, b: &TreePair) -> Result<TreePair> {
    a.compose(b)
}

pub fn reduce(d: &TreePair) -> TreePair {
    d.reduce()
}

pub fn equal(a: &TreePair, b: &TreePair) -> Result<bool> {
    a.equal(b)
}

pub fn is_positive(d: &TreePair) -> bool {
    d.is_positive()
}

/// Reduced diagram of the element a word represents.
pub fn evaluate(p: usize, w: &Word) -> TreePair {
    w.letters().iter().fold(TreePair::identity(p), |acc, letter| {
        let g = TreePair::generator(p, letter.index as usize);
        let g = match letter.sign {
            Sign::Plus => g,
            Sign::Minus => g.inverse(),
        };
        acc.compose(&g).expect("same p")
    })
}
