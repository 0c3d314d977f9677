//! The complete rewriting system over `{x_i^{±1}}`, its irreducible words
//! (the locally testable normal form), and the regular finite-alphabet
//! normal form obtained through the bar substitution
//! `x_j -> x_0^{-d} x_r x_0^d` with `j = r + d(p-1)`.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::words::{Letter, Sign, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "rule")]
pub enum RewriteRule {
    /// `x_i^e x_i^-e -> 1`
    Cancel { index: u32 },
    /// `x_j^e x_i -> x_i x_{j+p-1}^e`, `j > i`
    PushPositive { j: u32, i: u32, sign: i32 },
    /// `x_{j+p-1}^e x_i^-1 -> x_i^-1 x_j^e`, `j > i`
    PushNegative { j: u32, i: u32, sign: i32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RewriteStep {
    pub position: usize,
    #[serde(flatten)]
    pub rule: RewriteRule,
}

/// The rule whose left side is `a b`, if any.
pub fn applicable_rule(p: usize, a: Letter, b: Letter) -> Option<RewriteRule> {
    let shift = (p - 1) as u32;
    if a.cancels(b) {
        return Some(RewriteRule::Cancel { index: a.index });
    }
    match b.sign {
        Sign::Plus if a.index > b.index => Some(RewriteRule::PushPositive {
            j: a.index,
            i: b.index,
            sign: a.sign.as_i32(),
        }),
        Sign::Minus if a.index >= b.index + p as u32 => Some(RewriteRule::PushNegative {
            j: a.index - shift,
            i: b.index,
            sign: a.sign.as_i32(),
        }),
        _ => None,
    }
}

fn right_side(p: usize, rule: RewriteRule, a: Letter, b: Letter) -> Option<[Letter; 2]> {
    let shift = (p - 1) as u32;
    match rule {
        RewriteRule::Cancel { .. } => None,
        RewriteRule::PushPositive { .. } => Some([b, Letter { index: a.index + shift, sign: a.sign }]),
        RewriteRule::PushNegative { .. } => Some([b, Letter { index: a.index - shift, sign: a.sign }]),
    }
}

/// Apply the rule at `pos`, returning it, or `None` if `pos` is not a redex.
fn rewrite_at(p: usize, letters: &mut Vec<Letter>, pos: usize) -> Option<RewriteRule> {
    let (a, b) = (letters[pos], letters[pos + 1]);
    let rule = applicable_rule(p, a, b)?;
    match right_side(p, rule, a, b) {
        None => {
            letters.drain(pos..pos + 2);
        }
        Some([c, d]) => {
            letters[pos] = c;
            letters[pos + 1] = d;
        }
    }
    Some(rule)
}

/// Leftmost-redex rewriting to the irreducible form, recording each step.
pub fn rewrite_with_trace(p: usize, w: &Word) -> (Word, Vec<RewriteStep>) {
    let mut letters = w.letters().to_vec();
    let mut trace = Vec::new();
    let mut pos = 0;
    // Everything left of `pos` is irreducible, so after a rewrite only the
    // pair straddling the change needs a second look.
    while pos + 1 < letters.len() {
        match rewrite_at(p, &mut letters, pos) {
            Some(rule) => {
                trace.push(RewriteStep { position: pos, rule });
                pos = pos.saturating_sub(1);
            }
            None => pos += 1,
        }
    }
    (Word::new(letters), trace)
}

/// The unique irreducible word equal to `w` in F(p).
pub fn to_infinite_nf(p: usize, w: &Word) -> Word {
    rewrite_with_trace(p, w).0
}

/// Rewrite by choosing a uniformly random redex each step. Returns the
/// irreducible word and the number of steps taken.
pub fn rewrite_random<R: Rng + ?Sized>(p: usize, w: &Word, rng: &mut R) -> (Word, usize) {
    let mut letters = w.letters().to_vec();
    let mut steps = 0;
    let mut redexes = Vec::new();
    loop {
        redexes.clear();
        redexes.extend(
            (0..letters.len().saturating_sub(1))
                .filter(|&k| applicable_rule(p, letters[k], letters[k + 1]).is_some()),
        );
        if redexes.is_empty() {
            return (Word::new(letters), steps);
        }
        let pos = redexes[rng.random_range(0..redexes.len())];
        rewrite_at(p, &mut letters, pos);
        steps += 1;
    }
}

/// Adjacent-pair test: a word is irreducible iff every length-2 factor is.
pub fn is_infinite_nf(p: usize, w: &Word) -> bool {
    w.letters().windows(2).all(|pair| applicable_rule(p, pair[0], pair[1]).is_none())
}

/// `j = r + d(p-1)` with `1 <= r <= p-1`; `j >= 1`.
pub fn split_index(p: usize, j: u32) -> (u32, u32) {
    let q = (p - 1) as u32;
    ((j - 1) % q + 1, (j - 1) / q)
}

fn push_zero_run(out: &mut Vec<Letter>, exponent: i64) {
    let letter = if exponent >= 0 { Letter::pos(0) } else { Letter::neg(0) };
    out.extend(std::iter::repeat_n(letter, exponent.unsigned_abs() as usize));
}

/// Cancel adjacent `x_0^e x_0^-e` only.
fn reduce_zeros(letters: Vec<Letter>) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    for l in letters {
        match out.last() {
            Some(&top) if top.index == 0 && top.cancels(l) => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    out
}

/// The bar substitution followed by cancellation of `x_0` pairs.
pub fn bar(p: usize, w: &Word) -> Word {
    let mut out = Vec::with_capacity(w.len());
    for &l in w.letters() {
        if l.index == 0 {
            out.push(l);
            continue;
        }
        let (r, d) = split_index(p, l.index);
        push_zero_run(&mut out, -i64::from(d));
        out.push(Letter { index: r, sign: l.sign });
        push_zero_run(&mut out, i64::from(d));
    }
    Word::new(reduce_zeros(out))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pattern {
    /// `x_i^e x_i^-e`
    Cancelling,
    /// `x_a^e x_0^k x_b`, `b < a`
    DescendingPositive,
    /// `x_a^e x_0^{k+1} x_b^-1`, `b < a`
    DescendingNegative,
    /// `x_a^e x_0^{k+1} x_b`, `a <= b`
    AscendingPositive,
    /// `x_a^e x_0^{k+2} x_b^-1`, `a <= b`
    AscendingNegative,
}

impl Pattern {
    pub fn number(self) -> u8 {
        match self {
            Pattern::Cancelling => 1,
            Pattern::DescendingPositive => 2,
            Pattern::DescendingNegative => 3,
            Pattern::AscendingPositive => 4,
            Pattern::AscendingNegative => 5,
        }
    }
}

/// First forbidden factor of a finite-alphabet word, as (end position, pattern).
pub fn forbidden_factor(p: usize, v: &Word) -> Result<Option<(usize, Pattern)>> {
    if let Some(l) = v.letters().iter().find(|l| l.index as usize >= p) {
        return Err(Error::IndexOutOfAlphabet { p, index: l.index });
    }
    Ok(forbidden_factor_in(v.letters()))
}

/// Same as [`forbidden_factor`] without the alphabet check.
pub(crate) fn forbidden_factor_in(letters: &[Letter]) -> Option<(usize, Pattern)> {
    // `anchor` is the last x_a (a >= 1), valid while only positive x_0
    // letters have followed it; `run` counts those x_0 letters.
    let mut anchor: Option<Letter> = None;
    let mut run = 0usize;
    for (pos, &l) in letters.iter().enumerate() {
        if pos > 0 && letters[pos - 1].cancels(l) {
            return Some((pos, Pattern::Cancelling));
        }
        if l.index == 0 {
            match l.sign {
                Sign::Plus => run += 1,
                Sign::Minus => anchor = None,
            }
            continue;
        }
        if let Some(a) = anchor {
            let (alpha, beta) = (a.index, l.index);
            let hit = match l.sign {
                Sign::Plus if beta < alpha => Some(Pattern::DescendingPositive),
                Sign::Plus if run >= 1 => Some(Pattern::AscendingPositive),
                Sign::Minus if beta < alpha && run >= 1 => Some(Pattern::DescendingNegative),
                Sign::Minus if alpha <= beta && run >= 2 => Some(Pattern::AscendingNegative),
                _ => None,
            };
            if let Some(pattern) = hit {
                return Some((pos, pattern));
            }
        }
        anchor = Some(l);
        run = 0;
    }
    None
}

/// Membership in the regular normal-form language `L_p`.
pub fn is_in_lp(p: usize, v: &Word) -> Result<bool> {
    Ok(forbidden_factor(p, v)?.is_none())
}

/// One `x_alpha^l` block of `x_0^{k_0} x_{a_1}^{l_1} x_0^{k_1} ... x_{a_h}^{l_h} x_0^{k_h}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpineBlock {
    /// Exponent of the `x_0` run preceding the block.
    pub zeros_before: i64,
    pub alpha: u32,
    pub exponent: i64,
    pub r: u32,
    pub d: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpineDecomposition {
    pub blocks: Vec<SpineBlock>,
    /// `k_h`, the trailing `x_0` exponent.
    pub trailing: i64,
}

impl SpineDecomposition {
    /// Split a word whose `x_0` runs are sign-constant (true of every freely
    /// reduced word) into maximal `x_0` runs and maximal blocks of a repeated
    /// letter `x_a^{±1}`, `a >= 1`.
    pub fn of(p: usize, w: &Word) -> SpineDecomposition {
        let mut blocks = Vec::new();
        let mut zeros = 0i64;
        let letters = w.letters();
        let mut i = 0;
        while i < letters.len() {
            let l = letters[i];
            if l.index == 0 {
                zeros += i64::from(l.sign.as_i32());
                i += 1;
                continue;
            }
            let mut end = i;
            while end < letters.len() && letters[end] == l {
                end += 1;
            }
            let (r, d) = split_index(p, l.index);
            blocks.push(SpineBlock {
                zeros_before: zeros,
                alpha: l.index,
                exponent: (end - i) as i64 * i64::from(l.sign.as_i32()),
                r,
                d,
            });
            zeros = 0;
            i = end;
        }
        SpineDecomposition { blocks, trailing: zeros }
    }

    pub fn to_word(&self) -> Word {
        let mut out = Vec::new();
        for b in &self.blocks {
            push_zero_run(&mut out, b.zeros_before);
            push_block(&mut out, b.alpha, b.exponent);
        }
        push_zero_run(&mut out, self.trailing);
        Word::new(out)
    }

    /// The bar image assembled from the block data:
    /// `x_0^{k_0-d_1} x_{r_1}^{l_1} x_0^{d_1+k_1-d_2} ... x_{r_h}^{l_h} x_0^{d_h+k_h}`.
    pub fn barred(&self) -> Word {
        let mut out = Vec::new();
        let mut carry = 0i64;
        for b in &self.blocks {
            push_zero_run(&mut out, carry + b.zeros_before - i64::from(b.d));
            push_block(&mut out, b.r, b.exponent);
            carry = i64::from(b.d);
        }
        push_zero_run(&mut out, carry + self.trailing);
        Word::new(out)
    }
}

fn push_block(out: &mut Vec<Letter>, index: u32, exponent: i64) {
    let sign = if exponent > 0 { Sign::Plus } else { Sign::Minus };
    out.extend(std::iter::repeat_n(Letter { index, sign }, exponent.unsigned_abs() as usize));
}

/// Inverse of [`bar`] on `L_p`: recover the irreducible word from the
/// barred `x_0` exponents, scanning blocks right to left.
pub fn unbar(p: usize, v: &Word) -> Result<Word> {
    if let Some((pos, pattern)) = forbidden_factor(p, v)? {
        return Err(Error::NotInLanguage {
            p,
            reason: format!("forbidden factor of type {} ending at letter {pos}", pattern.number()),
        });
    }
    let barred = SpineDecomposition::of(p, v);
    let h = barred.blocks.len();
    // m_0..m_h are the x_0 exponents of the barred word.
    let m: Vec<i64> = barred
        .blocks
        .iter()
        .map(|b| b.zeros_before)
        .chain(std::iter::once(barred.trailing))
        .collect();
    let q = (p - 1) as u32;
    let mut blocks = barred.blocks.clone();
    let mut zeros_after = vec![0i64; h];
    let mut value = m[h];
    for i in (0..h).rev() {
        let (k, d) = if value < 0 { (value, 0) } else { (0, value) };
        zeros_after[i] = k;
        let d = u32::try_from(d).expect("x_0 exponent fits in u32");
        blocks[i].d = d;
        blocks[i].alpha = blocks[i].r + d * q;
        value = m[i] + i64::from(d);
    }
    // `value` is now k_0; shift the per-block trailing exponents into place.
    let mut leading = value;
    for (b, &k) in blocks.iter_mut().zip(&zeros_after) {
        b.zeros_before = leading;
        leading = k;
    }
    Ok(SpineDecomposition { blocks, trailing: leading }.to_word())
}

/// The regular normal form: bar of the irreducible form.
pub fn finite_nf(p: usize, w: &Word) -> Word {
    bar(p, &to_infinite_nf(p, w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::evaluate;
    use crate::words::tests::arb_word;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn rewriting_examples() {
        assert_eq!(to_infinite_nf(2, &w("x1 x0")), w("x0 x2"));
        assert_eq!(to_infinite_nf(3, &w("x3 x0^-1")), w("x0^-1 x1"));
        assert_eq!(to_infinite_nf(2, &w("x0 x0^-1")), Word::empty());
        assert_eq!(to_infinite_nf(2, &w("x1 x0 x0^-1")), w("x1"));
    }

    #[test]
    fn trace_records_rules() {
        let (nf, trace) = rewrite_with_trace(2, &w("x1 x0 x0^-1"));
        assert_eq!(nf, w("x1"));
        assert_eq!(
            trace.iter().map(|s| s.rule).collect::<Vec<_>>(),
            vec![
                RewriteRule::PushPositive { j: 1, i: 0, sign: 1 },
                RewriteRule::PushNegative { j: 1, i: 0, sign: 1 },
                RewriteRule::Cancel { index: 0 },
            ]
        );
    }

    #[test]
    fn infinite_nf_membership() {
        assert!(is_infinite_nf(2, &w("x0 x2")));
        assert!(is_infinite_nf(3, &w("x2 x1^-1")));
        assert!(!is_infinite_nf(2, &w("x1 x0")));
        assert!(!is_infinite_nf(2, &w("x2 x0^-1")));
        assert!(is_infinite_nf(3, &w("x2 x0^-1")));
        assert!(is_infinite_nf(2, &Word::empty()));
    }

    #[test]
    fn bar_examples() {
        assert_eq!(bar(3, &w("x5")), w("x0^-1 x0^-1 x1 x0 x0"));
        assert_eq!(bar(2, &w("x0 x2")), w("x1 x0"));
        assert_eq!(bar(2, &w("x1^-1")), w("x1^-1"));
    }

    #[test]
    fn unbar_examples() {
        assert_eq!(unbar(2, &w("x1 x0")).unwrap(), w("x0 x2"));
        assert_eq!(unbar(2, &Word::empty()).unwrap(), Word::empty());
        assert_eq!(unbar(3, &w("x0^-1 x0^-1 x1 x0 x0")).unwrap(), w("x5"));
        assert_eq!(unbar(2, &w("x0^-1 x0^-1")).unwrap(), w("x0^-1 x0^-1"));
        assert!(matches!(unbar(2, &w("x1 x0 x1")), Err(Error::NotInLanguage { .. })));
    }

    #[test]
    fn language_membership() {
        assert_eq!(forbidden_factor(2, &w("x1 x0 x1")).unwrap(), Some((2, Pattern::AscendingPositive)));
        assert!(is_in_lp(2, &w("x1 x0 x0 x0")).unwrap());
        assert!(is_in_lp(2, &Word::empty()).unwrap());
        assert!(!is_in_lp(2, &w("x0 x0^-1")).unwrap());
        assert!(is_in_lp(3, &w("x2 x1^-1")).unwrap());
        assert!(!is_in_lp(3, &w("x2 x0 x1^-1")).unwrap());
        assert!(!is_in_lp(3, &w("x2 x1")).unwrap());
        assert!(is_in_lp(3, &w("x1 x0 x2^-1")).unwrap());
        assert!(!is_in_lp(3, &w("x1 x0 x0 x2^-1")).unwrap());
        // a sign change breaks the x_0 run
        assert!(is_in_lp(3, &w("x2 x0^-1 x0^-1 x1")).unwrap());
        assert!(matches!(is_in_lp(2, &w("x2")), Err(Error::IndexOutOfAlphabet { p: 2, index: 2 })));
    }

    #[test]
    fn finite_nf_examples() {
        assert_eq!(finite_nf(2, &w("x1 x0")), w("x1 x0"));
        assert_eq!(finite_nf(2, &Word::empty()), Word::empty());
        assert_eq!(finite_nf(2, &w("x1 x0 x0^-1")), w("x1"));
    }

    #[test]
    fn decomposition_round_trip() {
        let word = w("x0 x0 x4 x4 x0^-1 x2^-1 x7");
        let dec = SpineDecomposition::of(3, &word);
        assert_eq!(dec.blocks.len(), 3);
        assert_eq!((dec.blocks[0].r, dec.blocks[0].d, dec.blocks[0].exponent), (2, 1, 2));
        assert_eq!(dec.to_word(), word);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn rewriting_is_sound_and_irreducible(word in arb_word(6, 10), p in 2usize..=4) {
            let nf = to_infinite_nf(p, &word);
            prop_assert!(is_infinite_nf(p, &nf));
            prop_assert_eq!(evaluate(p, &nf), evaluate(p, &word));
        }

        #[test]
        fn random_strategy_agrees(word in arb_word(9, 12), p in 2usize..=5, seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            prop_assert_eq!(rewrite_random(p, &word, &mut rng).0, to_infinite_nf(p, &word));
        }

        #[test]
        fn bar_formula_matches_substitution(word in arb_word(8, 10), p in 2usize..=4) {
            let nf = to_infinite_nf(p, &word);
            let barred = bar(p, &nf);
            prop_assert_eq!(SpineDecomposition::of(p, &nf).barred().free_reduce(), barred.clone());
            prop_assert!(is_in_lp(p, &barred).unwrap());
            prop_assert_eq!(unbar(p, &barred).unwrap(), nf);
        }

        #[test]
        fn lp_is_factor_closed(word in arb_word(2, 12), start in 0usize..12, len in 0usize..12) {
            let v = to_infinite_nf(3, &word);
            let v = finite_nf(3, &v);
            let s = start.min(v.len());
            let e = (s + len).min(v.len());
            prop_assert!(is_in_lp(3, &Word::new(v.letters()[s..e].to_vec())).unwrap());
        }
    
        #[test]
        fn rewriting_terminates_within_budget(
            word in arb_word(9, 14),
            p in 2usize..=3,
            seed in any::<u64>(),
        ) {
            let word = Word::new(word.letters().iter().map(|l| Letter { index: l.index.min(3 * p as u32), ..*l }).collect());
            let n = word.len();
            let budget = n * (n + 1) / 2;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut letters = word.letters().to_vec();
            let mut steps = 0;
            loop {
                let redexes: Vec<usize> = (0..letters.len().saturating_sub(1))
                    .filter(|&k| applicable_rule(p, letters[k], letters[k + 1]).is_some())
                    .collect();
                if redexes.is_empty() {
                    break;
                }
                let before: Vec<u32> = letters.iter().map(|l| l.index).collect();
                rewrite_at(p, &mut letters, redexes[rng.random_range(0..redexes.len())]);
                let after: Vec<u32> = letters.iter().map(|l| l.index).collect();
                // (length, subscript vector) decreases lexicographically
                prop_assert!(after.len() < before.len() || after < before);
                steps += 1;
                prop_assert!(steps <= budget, "{} exceeded {} steps", word, budget);
            }
        }
    }
}
