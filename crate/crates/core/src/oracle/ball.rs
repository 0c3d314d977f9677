//! Breadth-first search over Cayley balls of `F(p)` and boxes of the positive monoid.

use std::collections::HashMap;

use num_rational::BigRational;

use crate::diagrams::TreePair;
use crate::error::{Error, Result};
use crate::rates::xi;
use crate::words::{Letter, Word};

/// Largest ball size a BFS may be asked for.
pub const BALL_LIMIT: f64 = 1.0e6;

#[derive(Debug, Clone)]
pub struct BallElement {
    pub distance: usize,
    /// A geodesic word for the element in `x_0^{±1}, ..., x_{p-1}^{±1}`.
    pub word: Word,
    pub pair: TreePair,
}

#[derive(Debug, Clone)]
pub struct BallStats {
    pub p: usize,
    pub radius: usize,
    /// `σ_0 .. σ_r`
    pub sphere_sizes: Vec<u64>,
    /// `γ_0 .. γ_r`
    pub ball_sizes: Vec<u64>,
    /// Keyed by the canonical text of the reduced tree-pair.
    pub elements: HashMap<String, BallElement>,
}

impl BallStats {
    pub fn distance(&self, d: &TreePair) -> Option<usize> {
        self.elements.get(&d.reduce().canonical()).map(|e| e.distance)
    }

    /// Elements sorted by distance, then key, for deterministic iteration.
    pub fn sorted(&self) -> Vec<(&String, &BallElement)> {
        let mut v: Vec<_> = self.elements.iter().collect();
        v.sort_by(|a, b| a.1.distance.cmp(&b.1.distance).then_with(|| a.0.cmp(b.0)));
        v
    }

    /// All `(m, n)` with `m + n <= radius` and `γ_{m+n} > γ_m γ_n`.
    pub fn submultiplicativity_failures(&self) -> Vec<(usize, usize)> {
        let g = &self.ball_sizes;
        let mut out = Vec::new();
        for m in 0..=self.radius {
            for n in 0..=self.radius - m {
                if g[m + n] > g[m] * g[n] {
                    out.push((m, n));
                }
            }
        }
        out
    }
}

/// The `2p` generators `x_0^{±1} .. x_{p-1}^{±1}` with their diagrams.
fn generators(p: usize) -> Vec<(Letter, TreePair)> {
    (0..p)
        .flat_map(|i| {
            let g = TreePair::generator(p, i);
            let inv = g.inverse();
            [(Letter::pos(i as u32), g), (Letter::neg(i as u32), inv)]
        })
        .collect()
}

pub fn bfs_group_ball(p: usize, radius: usize) -> Result<BallStats> {
    if p < 2 {
        return Err(Error::InvalidP(p));
    }
    let rate = xi(p, &BigRational::new(1.into(), 1_000_000.into()))?.to_f64();
    let estimate = rate.powi(radius as i32);
    if estimate > BALL_LIMIT {
        return Err(Error::GuardExceeded {
            estimate: format!("{estimate:.0}"),
            limit: format!("{BALL_LIMIT:.0}"),
            hint: "lower the radius",
        });
    }
    let gens = generators(p);
    let identity = TreePair::identity(p);
    let mut elements = HashMap::new();
    elements.insert(
        identity.canonical(),
        BallElement { distance: 0, word: Word::empty(), pair: identity.clone() },
    );
    let mut frontier = vec![(identity, Word::empty())];
    let mut sphere_sizes = vec![1u64];
    for d in 1..=radius {
        let mut next = Vec::new();
        for (pair, word) in &frontier {
            for (letter, g) in &gens {
                let product = pair.compose(g)?;
                let key = product.canonical();
                if elements.contains_key(&key) {
                    continue;
                }
                let mut w = word.clone();
                w.push(*letter);
                elements.insert(key, BallElement { distance: d, word: w.clone(), pair: product.clone() });
                next.push((product, w));
            }
        }
        sphere_sizes.push(next.len() as u64);
        frontier = next;
    }
    let ball_sizes = sphere_sizes
        .iter()
        .scan(0u64, |acc, s| {
            *acc += s;
            Some(*acc)
        })
        .collect();
    Ok(BallStats { p, radius, sphere_sizes, ball_sizes, elements })
}

/// Every positive normal form `x_{i_1} ... x_{i_m}`, `i_1 <= ... <= i_m`, with
/// `m <= max_len` and indices `<= index_bound`.
/// The box does not depend on `p`; the parameter keeps the signature uniform.
pub fn bfs_positive_monoid(_p: usize, max_len: usize, index_bound: u32) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            let start = w.letters().last().map_or(0, |l| l.index);
            for i in start..=index_bound {
                let mut v = w.clone();
                v.push(Letter::pos(i));
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normal_forms::is_infinite_nf;

    #[test]
    fn first_spheres() {
        for p in 2..=3 {
            let b = bfs_group_ball(p, 2).unwrap();
            assert_eq!(b.sphere_sizes[0], 1);
            assert_eq!(b.sphere_sizes[1], 2 * p as u64);
            assert!(b.submultiplicativity_failures().is_empty());
        }
        // Thompson's group F in x0, x1
        assert_eq!(bfs_group_ball(2, 3).unwrap().sphere_sizes, vec![1, 4, 12, 36]);
    }

    #[test]
    fn monoid_box() {
        let words = bfs_positive_monoid(2, 2, 3);
        // 1 + 4 + C(5, 2)
        assert_eq!(words.len(), 1 + 4 + 10);
        assert!(words.iter().all(|w| is_infinite_nf(2, w)));
    }

    #[test]
    fn guard_trips() {
        assert!(matches!(bfs_group_ball(5, 9), Err(Error::GuardExceeded { .. })));
    }
}
