//! The cross-check harness: every analytic module against brute force.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::ball::{bfs_group_ball, bfs_positive_monoid, BallStats};
use super::census::enumerate_positive_with;
use crate::automaton::{count_language_bruteforce, count_paths, phi_series};
use crate::diagrams::{evaluate, TreePair};
use crate::error::Result;
use crate::fordham::{positive_length_with, WeightTable};
use crate::normal_forms::{bar, finite_nf, is_in_lp, is_infinite_nf, rewrite_random, to_infinite_nf, unbar};
use crate::rates::{default_tolerance, xi, zeta};
use crate::series::{identity_residuals, positive_growth_series};
use crate::words::{Letter, Sign, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    Small,
    Full,
}

impl FromStr for Profile {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "small" => Ok(Profile::Small),
            "full" => Ok(Profile::Full),
            other => Err(format!("unknown profile {other:?}, expected small or full")),
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Profile::Small => "small",
            Profile::Full => "full",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    /// Weight table used by the census and Fordham checks.
    pub weights: WeightTable,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { weights: WeightTable::default(), seed: 0x5eed }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub check_name: String,
    pub status: Status,
    pub details: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub p: usize,
    pub profile: Profile,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.check_name == name)
    }
}

struct Sizes {
    radius: usize,
    census_weight: usize,
    samples: usize,
    series_order: usize,
    automaton_len: usize,
    brute_limit: u64,
    box_len: usize,
}

fn sizes(p: usize, profile: Profile) -> Sizes {
    match profile {
        Profile::Small => Sizes {
            radius: if p <= 3 { 4 } else { 3 },
            census_weight: match p {
                2 => 8,
                3 => 5,
                _ => 4,
            },
            samples: 500,
            series_order: 15,
            automaton_len: 20,
            brute_limit: 100_000,
            box_len: 3,
        },
        Profile::Full => Sizes {
            radius: if p <= 3 { 5 } else { 4 },
            census_weight: match p {
                2 => 12,
                3 | 4 => 6,
                _ => 5,
            },
            samples: 10_000,
            series_order: 30,
            automaton_len: 40,
            brute_limit: 2_000_000,
            box_len: 4,
        },
    }
}

fn check(name: &str, f: impl FnOnce() -> Result<std::result::Result<String, String>>) -> CheckResult {
    let (status, details) = match f() {
        Ok(Ok(d)) => (Status::Pass, d),
        Ok(Err(d)) => (Status::Fail, d),
        Err(e) => (Status::Fail, format!("error: {e}")),
    };
    CheckResult { check_name: name.to_string(), status, details }
}

/// A random word of length `0..=max_len` with indices below `index_bound`.
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, index_bound: u32, max_len: usize) -> Word {
    let len = rng.random_range(0..=max_len);
    (0..len)
        .map(|_| {
            let index = rng.random_range(0..index_bound);
            let sign = if rng.random_bool(0.5) { Sign::Plus } else { Sign::Minus };
            Letter { index, sign }
        })
        .collect()
}

/// `x_1 x_0 x_p^{-1} x_0^{-1}`, a defining relator.
fn relator(p: usize) -> Word {
    Word::new(vec![Letter::pos(1), Letter::pos(0), Letter::neg(p as u32), Letter::neg(0)])
}

fn pad_with_relator(p: usize, w: &Word) -> Word {
    let letters = w.letters();
    let mid = letters.len() / 2;
    let mut out = letters[..mid].to_vec();
    out.extend(relator(p).into_letters());
    out.extend_from_slice(&letters[mid..]);
    Word::new(out)
}

fn relations(p: usize) -> Result<std::result::Result<String, String>> {
    let mut tested = 0;
    for j in 1..=2 * p as u32 {
        for i in 0..j {
            let lhs = evaluate(p, &Word::new(vec![Letter::pos(j), Letter::pos(i)]));
            let rhs = evaluate(p, &Word::new(vec![Letter::pos(i), Letter::pos(j + p as u32 - 1)]));
            if !lhs.equal(&rhs)? {
                return Ok(Err(format!("x{j} x{i} != x{i} x{}", j + p as u32 - 1)));
            }
            tested += 1;
        }
        let g = TreePair::generator(p, j as usize);
        if !g.compose(&g.inverse())?.is_identity() {
            return Ok(Err(format!("x{j} x{j}^-1 is not the identity")));
        }
    }
    Ok(Ok(format!("{tested} relations hold")))
}

fn confluence(p: usize, s: &Sizes, seed: u64) -> Result<std::result::Result<String, String>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..s.samples {
        let w = random_word(&mut rng, 2 * p as u32 + 2, 10);
        let leftmost = to_infinite_nf(p, &w);
        let (random, _) = rewrite_random(p, &w, &mut rng);
        if leftmost != random {
            return Ok(Err(format!("{w}: leftmost gives {leftmost}, random order gives {random}")));
        }
    }
    Ok(Ok(format!("{} random words, two strategies agree", s.samples)))
}

fn infinite_nf(p: usize, s: &Sizes, seed: u64) -> Result<std::result::Result<String, String>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
    for _ in 0..s.samples / 5 {
        let w = random_word(&mut rng, 2 * p as u32 + 2, 8);
        let nf = to_infinite_nf(p, &w);
        if !is_infinite_nf(p, &nf) {
            return Ok(Err(format!("{w} rewrites to {nf}, which still has a redex")));
        }
        if !evaluate(p, &w).equal(&evaluate(p, &nf))? {
            return Ok(Err(format!("{w} and its normal form {nf} differ")));
        }
    }
    Ok(Ok(format!("{} words: irreducible and evaluation-preserving", s.samples / 5)))
}

fn bar_round_trips(p: usize, s: &Sizes, ball: &BallStats) -> Result<std::result::Result<String, String>> {
    let mut corpus = bfs_positive_monoid(p, s.box_len, 2 * p as u32 + 1);
    corpus.extend(ball.sorted().into_iter().map(|(_, e)| to_infinite_nf(p, &e.word)));
    for w in &corpus {
        let v = bar(p, w);
        if !is_in_lp(p, &v)? {
            return Ok(Err(format!("bar({w}) = {v} has a forbidden factor")));
        }
        let back = unbar(p, &v)?;
        if &back != w {
            return Ok(Err(format!("unbar(bar({w})) = {back}")));
        }
    }
    Ok(Ok(format!("{} normal forms round-trip", corpus.len())))
}

fn lp_uniqueness(p: usize, ball: &BallStats) -> Result<std::result::Result<String, String>> {
    let mut seen: HashMap<String, &str> = HashMap::new();
    for (key, e) in ball.sorted() {
        let nf = finite_nf(p, &e.word);
        if !is_in_lp(p, &nf)? {
            return Ok(Err(format!("finite normal form {nf} of {} has a forbidden factor", e.word)));
        }
        if evaluate(p, &nf).canonical() != *key {
            return Ok(Err(format!("finite normal form {nf} of {} evaluates elsewhere", e.word)));
        }
        for other in [to_infinite_nf(p, &e.word), pad_with_relator(p, &e.word)] {
            let alt = finite_nf(p, &other);
            if alt != nf {
                return Ok(Err(format!("{} and {other} give {nf} and {alt}", e.word)));
            }
        }
        if let Some(prev) = seen.insert(nf.to_string(), key) {
            return Ok(Err(format!("{nf} represents both {prev} and {key}")));
        }
    }
    Ok(Ok(format!("{} elements, distinct normal forms in L_p", ball.elements.len())))
}

fn fordham_vs_bfs(ball: &BallStats, table: &WeightTable) -> Result<std::result::Result<String, String>> {
    let mut positives = 0;
    for (key, e) in ball.sorted() {
        if !e.pair.is_positive() {
            continue;
        }
        positives += 1;
        let len = positive_length_with(&e.pair, table)?;
        if len != e.distance as u64 {
            return Ok(Err(format!("{key} ({}): Fordham length {len}, distance {}", e.word, e.distance)));
        }
    }
    Ok(Ok(format!("{positives} positive elements within radius {}", ball.radius)))
}

fn positive_spheres(p: usize, ball: &BallStats) -> Result<std::result::Result<String, String>> {
    let s = positive_growth_series(p, ball.radius + 1)?.s;
    let mut counts = vec![0u64; ball.radius + 1];
    for e in ball.elements.values() {
        if e.pair.is_positive() {
            counts[e.distance] += 1;
        }
    }
    let expected: Vec<u64> = (0..=ball.radius).map(|n| s.coeff(n).to_integer().try_into().unwrap_or(u64::MAX)).collect();
    if counts == expected {
        Ok(Ok(format!("positive sphere sizes {counts:?}")))
    } else {
        Ok(Err(format!("positive sphere sizes {counts:?}, series {expected:?}")))
    }
}

fn census_vs_series(p: usize, s: &Sizes, table: &WeightTable) -> Result<std::result::Result<String, String>> {
    let census = enumerate_positive_with(p, s.census_weight, table)?;
    let series = positive_growth_series(p, s.census_weight + 1)?.s;
    let expected: Vec<BigInt> = (0..=s.census_weight).map(|n| series.coeff(n).to_integer()).collect();
    let got: Vec<BigInt> = census.counts.iter().map(|&c| BigInt::from(c)).collect();
    if got != expected {
        return Ok(Err(format!("census {:?}, series {:?}", census.counts, expected)));
    }
    if census.max_right_empty > 1 {
        return Ok(Err(format!("a reduced tree has {} R_empty carets", census.max_right_empty)));
    }
    Ok(Ok(format!("weights 0..={}: {:?}", s.census_weight, census.counts)))
}

fn automaton_triple(p: usize, s: &Sizes) -> Result<std::result::Result<String, String>> {
    let phi = phi_series(p, s.automaton_len + 1)?;
    let mut brute_checked = 0;
    for n in 0..=s.automaton_len {
        let paths = BigInt::from(count_paths(p, n)?);
        if BigRational::from_integer(paths.clone()) != *phi.coeff(n) {
            return Ok(Err(format!("n={n}: {paths} paths, closed form {}", phi.coeff(n))));
        }
        if (2 * p as u64).checked_pow(n as u32).is_some_and(|t| t <= s.brute_limit) {
            let brute = count_language_bruteforce(p, n)?;
            if BigInt::from(brute) != paths {
                return Ok(Err(format!("n={n}: {paths} paths, {brute} words by enumeration")));
            }
            brute_checked = n;
        }
    }
    Ok(Ok(format!("n <= {}, enumeration up to n = {brute_checked}", s.automaton_len)))
}

fn growth_sandwich(p: usize, ball: &BallStats) -> Result<std::result::Result<String, String>> {
    for n in 0..=ball.radius {
        let paths = count_paths(p, n)?;
        if paths > ball.ball_sizes[n].into() {
            return Ok(Err(format!("n={n}: {paths} normal forms but ball has {}", ball.ball_sizes[n])));
        }
    }
    let failures = ball.submultiplicativity_failures();
    if !failures.is_empty() {
        return Ok(Err(format!("ball sizes not submultiplicative at {failures:?}")));
    }
    Ok(Ok(format!("ball sizes {:?}", ball.ball_sizes)))
}

fn series_residuals(p: usize, s: &Sizes) -> Result<std::result::Result<String, String>> {
    let bundle = positive_growth_series(p, s.series_order)?;
    let residuals = identity_residuals(&bundle)?;
    match residuals.iter().find(|r| !r.holds()) {
        Some(r) => Ok(Err(format!("{} has residual {}", r.name, r.residual))),
        None => Ok(Ok(format!("{} identities to order {}", residuals.len(), s.series_order))),
    }
}

const XI_TABLE: [&str; 4] = ["2.618033989", "4.079595623", "5.530132718", "6.977144180"];

fn rate_checks(p: usize) -> Result<std::result::Result<String, String>> {
    let tol = default_tolerance();
    let z = zeta(p, &tol)?;
    let pr = BigRational::from_integer(p.into());
    if !z.value.lies_within(&pr, &(&pr + BigRational::new(1.into(), 2.into()))) {
        return Ok(Err(format!("zeta enclosure {} outside (p, p + 1/2)", z.value)));
    }
    if !z.forms_agree(&tol) {
        return Ok(Err("zeta equation forms disagree".into()));
    }
    let x = xi(p, &tol)?;
    if x.value.hi >= BigRational::from_integer((2 * p - 1).into()) {
        return Ok(Err(format!("xi enclosure {} not below 2p - 1", x.value)));
    }
    if !x.forms_agree(&tol) {
        return Ok(Err("xi equation forms disagree".into()));
    }
    if let Some(expected) = XI_TABLE.get(p - 2) {
        let e: f64 = expected.parse().expect("table entry");
        if (x.to_f64() - e).abs() >= 1e-6 {
            return Ok(Err(format!("xi = {} but the table lists {expected}", x.to_f64())));
        }
    }
    Ok(Ok(format!("zeta = {:.9}, xi = {:.9}", z.to_f64(), x.to_f64())))
}

pub fn verify_suite(p: usize, profile: Profile) -> Result<VerifyReport> {
    verify_suite_with(p, profile, &VerifyConfig::default())
}

/// Runs every check; failures are collected, not short-circuited.
pub fn verify_suite_with(p: usize, profile: Profile, config: &VerifyConfig) -> Result<VerifyReport> {
    if p < 2 {
        return Err(crate::error::Error::InvalidP(p));
    }
    let s = sizes(p, profile);
    let ball = bfs_group_ball(p, s.radius)?;
    let table = &config.weights;
    let checks = vec![
        check("relations", || relations(p)),
        check("confluence", || confluence(p, &s, config.seed)),
        check("infinite-normal-form", || infinite_nf(p, &s, config.seed)),
        check("bar-unbar-round-trip", || bar_round_trips(p, &s, &ball)),
        check("finite-normal-form-uniqueness", || lp_uniqueness(p, &ball)),
        check("fordham-vs-bfs", || fordham_vs_bfs(&ball, table)),
        check("positive-spheres-vs-series", || positive_spheres(p, &ball)),
        check("census-vs-series", || census_vs_series(p, &s, table)),
        check("automaton-triple", || automaton_triple(p, &s)),
        check("growth-sandwich", || growth_sandwich(p, &ball)),
        check("series-identities", || series_residuals(p, &s)),
        check("rates", || rate_checks(p)),
    ];
    Ok(VerifyReport { p, profile, checks })
}
