//! Caret classification and word length for positive elements.
//!
//! Each caret of a p-tree gets a base position (root, left, middle `M^i`,
//! right) from its parent. Children split into predecessors, ordered before
//! the caret, and successors, ordered after it. Middle and right carets are
//! then refined into empty/full variants and weighted; the weight sum of the
//! source tree of a reduced positive diagram is its distance to the identity
//! in the generators `x_0, ..., x_{p-1}`.

use std::fmt;

use serde::Serialize;

use crate::diagrams::{evaluate, PTree, TreePair};
use crate::error::{Error, Result};
use crate::words::Word;

/// Position of a caret before refinement, assigned by its parent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Position {
    Root,
    Left,
    /// `M^i`, `1 <= i <= p-1`
    Middle(usize),
    Right,
}

impl Position {
    /// Number of leading children that are predecessors.
    fn predecessors(self, p: usize) -> usize {
        match self {
            Position::Middle(i) => p - i,
            _ => 1,
        }
    }

    fn child(self, p: usize, k: usize) -> Position {
        match self {
            Position::Root if k == 0 => Position::Left,
            Position::Root if k == p - 1 => Position::Right,
            Position::Root => Position::Middle(k),
            Position::Left if k == 0 => Position::Left,
            Position::Left => Position::Middle(k),
            Position::Right if k == 0 => Position::Middle(p - 1),
            Position::Right if k == p - 1 => Position::Right,
            Position::Right => Position::Middle(k),
            Position::Middle(i) if k < p - i => Position::Middle(i + k),
            Position::Middle(i) => Position::Middle(k + i + 1 - p),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaretClass {
    Root,
    Left,
    MiddleEmpty(usize),
    MiddleFull(usize),
    RightEmpty,
    RightFull,
}

impl CaretClass {
    pub fn weight(self, table: &WeightTable) -> u32 {
        match self {
            CaretClass::Root => table.root,
            CaretClass::Left => table.left,
            CaretClass::MiddleEmpty(_) => table.middle_empty,
            CaretClass::MiddleFull(_) => table.middle_full,
            CaretClass::RightEmpty => table.right_empty,
            CaretClass::RightFull => table.right_full,
        }
    }
}

impl fmt::Display for CaretClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaretClass::Root => f.write_str("Root"),
            CaretClass::Left => f.write_str("Left"),
            CaretClass::MiddleEmpty(i) => write!(f, "M{i}_empty"),
            CaretClass::MiddleFull(i) => write!(f, "M{i}_full"),
            CaretClass::RightEmpty => f.write_str("R_empty"),
            CaretClass::RightFull => f.write_str("R_full"),
        }
    }
}

/// Weight of each caret class. `Default` is Fordham's table; other values
/// exist so the cross-checks can be mutation-tested.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeightTable {
    pub root: u32,
    pub left: u32,
    pub middle_empty: u32,
    pub middle_full: u32,
    pub right_empty: u32,
    pub right_full: u32,
}

impl Default for WeightTable {
    fn default() -> Self {
        WeightTable {
            root: 0,
            left: 1,
            middle_empty: 1,
            middle_full: 3,
            right_empty: 0,
            right_full: 2,
        }
    }
}

const NO_CARET: u32 = u32::MAX;

/// Reusable classification state. The tree is read from its preorder bits
/// into a flat child table, `p` slots per caret, carets numbered in preorder.
#[derive(Debug, Default)]
pub struct Classifier {
    children: Vec<u32>,
    stack: Vec<(u32, usize)>,
}

impl Classifier {
    pub fn new() -> Classifier {
        Classifier::default()
    }

    fn load(&mut self, p: usize, bits: &[bool]) -> usize {
        self.children.clear();
        self.stack.clear();
        let mut carets = 0u32;
        for &is_caret in bits {
            let node = if is_caret {
                let id = carets;
                carets += 1;
                self.children.extend(std::iter::repeat_n(NO_CARET, p));
                id
            } else {
                NO_CARET
            };
            if let Some(top) = self.stack.last_mut() {
                self.children[top.0 as usize * p + top.1] = node;
                top.1 += 1;
                if top.1 == p {
                    self.stack.pop();
                }
            }
            if node != NO_CARET {
                self.stack.push((node, 0));
            }
        }
        carets as usize
    }

    fn child(&self, p: usize, caret: u32, k: usize) -> u32 {
        self.children[caret as usize * p + k]
    }

    /// Some caret below `caret` (through any child) is off the right spine.
    fn has_off_spine(&self, p: usize, caret: u32) -> bool {
        (0..p - 1).any(|k| self.child(p, caret, k) != NO_CARET) || {
            let last = self.child(p, caret, p - 1);
            last != NO_CARET && self.has_off_spine(p, last)
        }
    }

    fn refine(&self, p: usize, caret: u32, pos: Position) -> CaretClass {
        match pos {
            Position::Root => CaretClass::Root,
            Position::Left => CaretClass::Left,
            Position::Middle(i) => {
                if (p - i..p).any(|k| self.child(p, caret, k) != NO_CARET) {
                    CaretClass::MiddleFull(i)
                } else {
                    CaretClass::MiddleEmpty(i)
                }
            }
            Position::Right => {
                // Everything in the successor subtrees is ordered after a
                // right caret; any non-right caret there makes it full.
                let middle_child = (1..p - 1).any(|k| self.child(p, caret, k) != NO_CARET);
                let last = self.child(p, caret, p - 1);
                if middle_child || (last != NO_CARET && self.has_off_spine(p, last)) {
                    CaretClass::RightFull
                } else {
                    CaretClass::RightEmpty
                }
            }
        }
    }

    /// Visit carets in the total order: predecessor subtrees, the caret,
    /// successor subtrees.
    fn visit(&self, p: usize, caret: u32, pos: Position, f: &mut impl FnMut(u32, CaretClass)) {
        let preds = pos.predecessors(p);
        for k in 0..preds {
            let c = self.child(p, caret, k);
            if c != NO_CARET {
                self.visit(p, c, pos.child(p, k), f);
            }
        }
        f(caret, self.refine(p, caret, pos));
        for k in preds..p {
            let c = self.child(p, caret, k);
            if c != NO_CARET {
                self.visit(p, c, pos.child(p, k), f);
            }
        }
    }

    /// Weight of the tree given by preorder bits, its top caret sitting at `top`.
    pub fn weight_bits(&mut self, p: usize, bits: &[bool], top: Position, table: &WeightTable) -> u64 {
        if self.load(p, bits) == 0 {
            return 0;
        }
        let mut total = 0u64;
        self.visit(p, 0, top, &mut |_, class| total += u64::from(class.weight(table)));
        total
    }

    /// Classes indexed by preorder caret number, plus the total order.
    pub fn classify_bits(&mut self, p: usize, bits: &[bool], top: Position) -> (Vec<CaretClass>, Vec<usize>) {
        let n = self.load(p, bits);
        let mut classes = vec![CaretClass::Root; n];
        let mut order = Vec::with_capacity(n);
        if n > 0 {
            self.visit(p, 0, top, &mut |c, class| {
                classes[c as usize] = class;
                order.push(c as usize);
            });
        }
        (classes, order)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifiedTree {
    pub p: usize,
    pub tree: PTree,
    /// Class of each caret, indexed by preorder caret number.
    pub classes: Vec<CaretClass>,
    /// Preorder caret numbers in the total order.
    pub order: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CaretRecord {
    pub index: usize,
    pub class: String,
    pub weight: u32,
}

impl ClassifiedTree {
    pub fn weight(&self, table: &WeightTable) -> u64 {
        self.classes.iter().map(|c| u64::from(c.weight(table))).sum()
    }

    pub fn count(&self, class: CaretClass) -> usize {
        self.classes.iter().filter(|&&c| c == class).count()
    }

    /// One record per caret in preorder, for the JSON dump.
    pub fn records(&self) -> Vec<CaretRecord> {
        let table = WeightTable::default();
        self.classes
            .iter()
            .enumerate()
            .map(|(index, c)| CaretRecord { index, class: c.to_string(), weight: c.weight(&table) })
            .collect()
    }
}

pub fn classify(p: usize, tree: &PTree) -> Result<ClassifiedTree> {
    if tree.is_leaf() {
        return Err(Error::EmptyTree);
    }
    let (classes, order) = Classifier::new().classify_bits(p, &tree.preorder_bits(), Position::Root);
    Ok(ClassifiedTree { p, tree: tree.clone(), classes, order })
}

/// Weight of a subtree whose top caret sits at `top`; a leaf weighs 0.
pub fn subtree_weight(p: usize, top: Position, tree: &PTree, table: &WeightTable) -> u64 {
    Classifier::new().weight_bits(p, &tree.preorder_bits(), top, table)
}

/// Word length of a positive element in `x_0, ..., x_{p-1}`.
pub fn positive_length(d: &TreePair) -> Result<u64> {
    positive_length_with(d, &WeightTable::default())
}

pub fn positive_length_with(d: &TreePair, table: &WeightTable) -> Result<u64> {
    let d = d.reduce();
    if !d.target().is_right_spine() {
        return Err(Error::NotPositive);
    }
    Ok(subtree_weight(d.p(), Position::Root, d.source(), table))
}

pub fn positive_length_of_word(p: usize, w: &Word) -> Result<u64> {
    positive_length(&evaluate(p, w))
}
