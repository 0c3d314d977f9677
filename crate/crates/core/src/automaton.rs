//! The (2p+1)-state path-counting graph for the normal-form language `L_p`.
//!
//! States, in matrix order: `q`, `q_0 .. q_{p-1}`, `q_{1,0} .. q_{p-1,0}`,
//! `q̄`. Entry `(u, v)` is the number of arrows `u -> v`; paths of length n
//! from `q` are in bijection with words of length n in `L_p`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::normal_forms::forbidden_factor_in;
use crate::poly::IntPoly;
use crate::series::{expand_rational, PowerSeries};
use crate::words::{Letter, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum State {
    /// The empty word.
    Start,
    /// Ends in `x_i^{±1}` (i = 0: ends in `x_0^{±1}` without a tail `x_j^{±1} x_0^k`, j >= 1, k >= 1).
    Letter(usize),
    /// Ends in `x_i^{±1} x_0`, `i >= 1`.
    LetterZero(usize),
    /// Ends in `x_i^{±1} x_0^k`, `i >= 1`, `k >= 2`.
    Tail,
}

impl State {
    pub fn index(self, p: usize) -> usize {
        match self {
            State::Start => 0,
            State::Letter(i) => 1 + i,
            State::LetterZero(i) => p + i,
            State::Tail => 2 * p,
        }
    }

    pub fn all(p: usize) -> Vec<State> {
        std::iter::once(State::Start)
            .chain((0..p).map(State::Letter))
            .chain((1..p).map(State::LetterZero))
            .chain(std::iter::once(State::Tail))
            .collect()
    }

    /// The suffix class of `L_p` this state stands for.
    pub fn describe(self) -> String {
        match self {
            State::Start => "the empty word".into(),
            State::Letter(0) => "ends in x0^±1, no tail x_i^±1 x0^k with i>=1, k>=1".into(),
            State::Letter(i) => format!("ends in x{i}^±1"),
            State::LetterZero(i) => format!("ends in x{i}^±1 x0"),
            State::Tail => "ends in x_i^±1 x0^k, i>=1, k>=2".into(),
        }
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            State::Start => f.write_str("q"),
            State::Letter(i) => write!(f, "q{i}"),
            State::LetterZero(i) => write!(f, "q{i},0"),
            State::Tail => f.write_str("qbar"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountingAutomaton {
    pub p: usize,
    /// Row-major `(2p+1) x (2p+1)` arrow multiplicities.
    pub multiplicity: Vec<Vec<u32>>,
}

impl CountingAutomaton {
    pub fn new(p: usize) -> Result<CountingAutomaton> {
        if p < 2 {
            return Err(Error::InvalidP(p));
        }
        let n = 2 * p + 1;
        let mut m = vec![vec![0u32; n]; n];
        let mut arrow = |from: State, to: State, k: u32| m[from.index(p)][to.index(p)] += k;

        for i in 0..p {
            arrow(State::Start, State::Letter(i), 2);
        }
        arrow(State::Letter(0), State::Letter(0), 1);
        for j in 1..p {
            arrow(State::Letter(0), State::Letter(j), 2);
        }
        for i in 1..p {
            arrow(State::Letter(i), State::Letter(0), 1);
            arrow(State::Letter(i), State::LetterZero(i), 1);
            for j in 1..p {
                arrow(State::Letter(i), State::Letter(j), if j <= i { 1 } else { 2 });
            }
            arrow(State::LetterZero(i), State::Tail, 1);
            for j in i..p {
                arrow(State::LetterZero(i), State::Letter(j), 1);
            }
        }
        arrow(State::Tail, State::Tail, 1);
        Ok(CountingAutomaton { p, multiplicity: m })
    }

    pub fn states(&self) -> Vec<State> {
        State::all(self.p)
    }

    pub fn out_degree(&self, s: State) -> u32 {
        self.multiplicity[s.index(self.p)].iter().sum()
    }

    /// One step of the path-count recurrence: `v -> v M`.
    fn step(&self, v: &[BigUint]) -> Vec<BigUint> {
        let n = v.len();
        let mut out = vec![BigUint::zero(); n];
        for (u, count) in v.iter().enumerate() {
            if count.is_zero() {
                continue;
            }
            for (w, &k) in self.multiplicity[u].iter().enumerate() {
                if k != 0 {
                    out[w] += count * k;
                }
            }
        }
        out
    }

    /// Per-state path counts from `q` for lengths `0..=n_max`.
    pub fn state_counts(&self, n_max: usize) -> Vec<Vec<BigUint>> {
        let n = 2 * self.p + 1;
        let mut v = vec![BigUint::zero(); n];
        v[0] = BigUint::one();
        let mut out = Vec::with_capacity(n_max + 1);
        for _ in 0..n_max {
            let next = self.step(&v);
            out.push(v);
            v = next;
        }
        out.push(v);
        out
    }

    /// Number of paths of each length `0..=n_max` starting at `q`.
    pub fn path_counts(&self, n_max: usize) -> Vec<BigUint> {
        self.state_counts(n_max).into_iter().map(|v| v.into_iter().sum()).collect()
    }

    /// Generating function of paths ending at `s`, to `order`.
    pub fn state_series(&self, s: State, order: usize) -> PowerSeries {
        let idx = s.index(self.p);
        let coeffs = self
            .state_counts(order.saturating_sub(1))
            .into_iter()
            .take(order)
            .map(|v| num_rational::BigRational::from_integer(v[idx].clone().into()))
            .collect();
        PowerSeries::from_coeffs(coeffs)
    }
}

pub fn build_automaton(p: usize) -> Result<CountingAutomaton> {
    CountingAutomaton::new(p)
}

/// Number of words of length `n` in `L_p`.
pub fn count_paths(p: usize, n: usize) -> Result<BigUint> {
    Ok(CountingAutomaton::new(p)?.path_counts(n).pop().expect("nonempty"))
}

/// `(1-t)^p + (1-t)^{p-1} - 1`
pub fn phi_denominator_core(p: usize) -> IntPoly {
    let one_minus_t = IntPoly::new([1, -1]);
    &(&one_minus_t.pow(p as u32) + &one_minus_t.pow(p as u32 - 1)) - &IntPoly::one()
}

/// Numerator and denominator of the closed form
/// `(1+t)/(1-t) * (1 - t(1-t)^{p-1}) / ((1-t)^p + (1-t)^{p-1} - 1)`.
pub fn phi_rational(p: usize) -> (IntPoly, IntPoly) {
    let one_minus_t = IntPoly::new([1, -1]);
    let numerator = &IntPoly::new([1, 1]) * &(&IntPoly::one() - &(&IntPoly::x() * &one_minus_t.pow(p as u32 - 1)));
    let denominator = &one_minus_t * &phi_denominator_core(p);
    (numerator, denominator)
}

pub fn phi_series(p: usize, order: usize) -> Result<PowerSeries> {
    if p < 2 {
        return Err(Error::InvalidP(p));
    }
    let (num, den) = phi_rational(p);
    expand_rational(&num, &den, order)
}

/// `2t / ((1-t)^p + (1-t)^{p-1} - 1)`: paths ending at `q_{p-1}`.
pub fn last_letter_series(p: usize, order: usize) -> Result<PowerSeries> {
    expand_rational(&IntPoly::monomial(2, 1), &phi_denominator_core(p), order)
}

pub const BRUTE_FORCE_LIMIT: u64 = 10_000_000;

/// Count words of length `n` over `x_0^{±1} .. x_{p-1}^{±1}` with no forbidden
/// factor, by enumerating all `(2p)^n` of them.
pub fn count_language_bruteforce(p: usize, n: usize) -> Result<u64> {
    if p < 2 {
        return Err(Error::InvalidP(p));
    }
    let total = (2 * p as u64).checked_pow(n as u32).filter(|&t| t <= BRUTE_FORCE_LIMIT);
    let Some(_) = total else {
        return Err(Error::GuardExceeded {
            estimate: format!("{}^{}", 2 * p, n),
            limit: BRUTE_FORCE_LIMIT.to_string(),
            hint: "use count_paths instead",
        });
    };
    let alphabet: Vec<Letter> = (0..p as u32)
        .flat_map(|i| [Letter { index: i, sign: Sign::Plus }, Letter { index: i, sign: Sign::Minus }])
        .collect();
    let mut digits = vec![0usize; n];
    let mut word = vec![alphabet[0]; n];
    let mut count = 0u64;
    loop {
        if forbidden_factor_in(&word).is_none() {
            count += 1;
        }
        // odometer increment
        let mut k = 0;
        loop {
            if k == n {
                return Ok(count);
            }
            digits[k] += 1;
            if digits[k] < alphabet.len() {
                word[k] = alphabet[digits[k]];
                break;
            }
            digits[k] = 0;
            word[k] = alphabet[0];
            k += 1;
        }
    }
}
