//! Acceptance gate: one line per criterion, nonzero exit if any fails.

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thompson_fp::automaton::{count_language_bruteforce, count_paths, phi_series, BRUTE_FORCE_LIMIT};
use thompson_fp::fordham::positive_length;
use thompson_fp::normal_forms::{applicable_rule, bar, finite_nf, is_in_lp, is_infinite_nf, rewrite_random, to_infinite_nf, unbar};
use thompson_fp::oracle::verify::random_word;
use thompson_fp::oracle::{bfs_group_ball, enumerate_positive_by_weight};
use thompson_fp::poly::IntPoly;
use thompson_fp::rates::{certifies, default_tolerance, to_f64, xi, xi_asymptotic, zeta};
use thompson_fp::series::{expand_rational, identity_residuals, positive_growth_series};
use thompson_fp::{evaluate, Letter, Sign, Word};

type Outcome = Result<String, String>;

type Criterion = (u8, &'static str, Duration, fn() -> Outcome);

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn positive_growth_p2() -> Outcome {
    let s = positive_growth_series(2, 30).map_err(|e| e.to_string())?.s;
    let closed = expand_rational(&IntPoly::new([1, 0, -1]), &IntPoly::new([1, -2, -1, 1]), 30)
        .map_err(|e| e.to_string())?;
    ensure(s == closed, || "series differs from the rational expansion".into())?;
    let first: Vec<String> = (0..6).map(|k| s.coeff(k).to_string()).collect();
    ensure(first == ["1", "2", "4", "9", "20", "45"], || format!("first coefficients {first:?}"))?;
    Ok(format!("30 coefficients equal, s_29 = {}", s.coeff(29)))
}

fn census_vs_series() -> Outcome {
    let mut summary = Vec::new();
    for (p, w) in [(2, 12), (3, 6), (4, 6)] {
        let census = enumerate_positive_by_weight(p, w).map_err(|e| e.to_string())?;
        let s = positive_growth_series(p, w + 1).map_err(|e| e.to_string())?.s;
        let expected: Vec<BigInt> = (0..=w).map(|k| s.coeff(k).to_integer()).collect();
        let got: Vec<BigInt> = census.counts.iter().map(|&c| c.into()).collect();
        ensure(got == expected, || format!("p={p}: census {:?}, series {expected:?}", census.counts))?;
        summary.push(format!("p={p} W={w} ({} trees)", census.trees_visited));
    }
    Ok(summary.join(", "))
}

fn fordham_vs_bfs() -> Outcome {
    let mut summary = Vec::new();
    for p in [2, 3] {
        let ball = bfs_group_ball(p, 5).map_err(|e| e.to_string())?;
        let mut positives = 0;
        let mut mismatches = 0;
        for e in ball.elements.values() {
            if e.pair.is_positive() {
                positives += 1;
                if positive_length(&e.pair).map_err(|e| e.to_string())? != e.distance as u64 {
                    mismatches += 1;
                }
            }
        }
        ensure(mismatches == 0, || format!("p={p}: {mismatches} of {positives} mismatch"))?;
        summary.push(format!("p={p}: {positives} positive of {}", ball.elements.len()));
    }
    Ok(summary.join(", "))
}

fn zeta_bounds() -> Outcome {
    let tol = default_tolerance();
    for p in 2..=10 {
        let z = zeta(p, &tol).map_err(|e| e.to_string())?;
        let pr = BigRational::from_integer(p.into());
        ensure(z.value.lies_within(&pr, &(&pr + rat(1, 2))), || format!("p={p}: {}", z.value))?;
        ensure(z.value.width() <= tol, || format!("p={p}: enclosure too wide"))?;
        ensure(z.forms_agree(&tol), || format!("p={p}: forms disagree by {}", z.max_disagreement()))?;
    }
    let z2 = zeta(2, &tol).map_err(|e| e.to_string())?;
    ensure(z2.value.lies_within(&rat(224, 100), &rat(225, 100)), || format!("zeta_2 = {}", z2.value))?;
    Ok(format!("zeta_2 = {:.10}", z2.to_f64()))
}

fn xi_table() -> Outcome {
    let tol = default_tolerance();
    let table = [2.618033989, 4.079595623, 5.530132718, 6.977144180];
    for (k, expected) in table.iter().enumerate() {
        let x = xi(k + 2, &tol).map_err(|e| e.to_string())?;
        ensure((x.to_f64() - expected).abs() < 1e-6, || format!("p={}: {}", k + 2, x.to_f64()))?;
    }
    let x2 = xi(2, &tol).map_err(|e| e.to_string())?;
    let golden = (3.0 + 5f64.sqrt()) / 2.0;
    ensure((x2.to_f64() - golden).abs() < 1e-9, || format!("xi_2 = {}", x2.to_f64()))?;
    // (3 + sqrt 5)/2 is the larger root of y^2 - 3y + 1
    let quadratic = IntPoly::new([1, -3, 1]);
    ensure(certifies(&quadratic, &x2.value), || "xi_2 enclosure misses (3 + sqrt 5)/2".into())?;
    Ok(format!("xi_2 = {:.10}", x2.to_f64()))
}

fn automaton_triple() -> Outcome {
    let mut brute_words = 0u64;
    for p in 2..=6 {
        let phi = phi_series(p, 41).map_err(|e| e.to_string())?;
        for n in 0..=40 {
            let paths = BigInt::from(count_paths(p, n).map_err(|e| e.to_string())?);
            ensure(BigRational::from_integer(paths.clone()) == *phi.coeff(n), || {
                format!("p={p} n={n}: {paths} paths, closed form {}", phi.coeff(n))
            })?;
            if (2 * p as u64).checked_pow(n as u32).is_some_and(|t| t <= BRUTE_FORCE_LIMIT) {
                let brute = count_language_bruteforce(p, n).map_err(|e| e.to_string())?;
                ensure(BigInt::from(brute) == paths, || format!("p={p} n={n}: brute force {brute}, paths {paths}"))?;
                brute_words += (2 * p as u64).pow(n as u32);
            }
        }
    }
    Ok(format!("p<=6, n<=40; {brute_words} words enumerated"))
}

/// All words of length `<= max_len` over `x_0^{±1} .. x_{bound-1}^{±1}`.
fn all_words(bound: u32, max_len: usize) -> Vec<Word> {
    let letters: Vec<Letter> =
        (0..bound).flat_map(|i| [Letter { index: i, sign: Sign::Plus }, Letter { index: i, sign: Sign::Minus }]).collect();
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let next: Vec<Word> = layer
            .iter()
            .flat_map(|w| {
                letters.iter().map(move |&l| {
                    let mut v = w.clone();
                    v.push(l);
                    v
                })
            })
            .collect();
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Calls `f` on every irreducible word of length `<= max_len` with indices
/// `<= max_index`. Irreducibility is a condition on adjacent pairs, so the
/// search only extends words by letters that keep the last pair irreducible.
fn for_each_infinite_nf(p: usize, max_index: u32, max_len: usize, f: &mut impl FnMut(&Word) -> Result<(), String>) -> Result<(), String> {
    fn extend(
        p: usize,
        letters: &[Letter],
        word: &mut Word,
        max_len: usize,
        f: &mut impl FnMut(&Word) -> Result<(), String>,
    ) -> Result<(), String> {
        f(word)?;
        if word.len() == max_len {
            return Ok(());
        }
        for &l in letters {
            if let Some(&last) = word.letters().last() {
                if applicable_rule(p, last, l).is_some() {
                    continue;
                }
            }
            word.push(l);
            extend(p, letters, word, max_len, f)?;
            let mut v = std::mem::take(word).into_letters();
            v.pop();
            *word = Word::new(v);
        }
        Ok(())
    }
    let letters: Vec<Letter> = (0..=max_index)
        .flat_map(|i| [Letter { index: i, sign: Sign::Plus }, Letter { index: i, sign: Sign::Minus }])
        .collect();
    extend(p, &letters, &mut Word::empty(), max_len, f)
}

fn normal_forms() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20261016);
    for p in [2, 3, 5] {
        for _ in 0..10_000 {
            let w = random_word(&mut rng, 2 * p as u32 + 2, 12);
            let a = to_infinite_nf(p, &w);
            let (b, _) = rewrite_random(p, &w, &mut rng);
            ensure(a == b, || format!("p={p} {w}: {a} vs {b}"))?;
        }
    }

    let mut round_trips = 0;
    for p in [2, 3] {
        for_each_infinite_nf(p, 2 * p as u32, 8, &mut |w| {
            debug_assert!(is_infinite_nf(p, w));
            let v = bar(p, w);
            ensure(is_in_lp(p, &v).unwrap_or(false), || format!("p={p}: bar({w}) = {v} not in L_p"))?;
            let back = unbar(p, &v).map_err(|e| e.to_string())?;
            ensure(&back == w, || format!("p={p}: unbar(bar({w})) = {back}"))?;
            round_trips += 1;
            Ok(())
        })?;
        for v in all_words(p as u32, 5) {
            if !is_in_lp(p, &v).map_err(|e| e.to_string())? {
                continue;
            }
            let u = unbar(p, &v).map_err(|e| e.to_string())?;
            ensure(bar(p, &u) == v, || format!("p={p}: bar(unbar({v})) = {}", bar(p, &u)))?;
            round_trips += 1;
        }
    }

    let mut elements = 0;
    for p in [2, 3] {
        let ball = bfs_group_ball(p, 4).map_err(|e| e.to_string())?;
        let mut seen: HashMap<String, String> = HashMap::new();
        for (key, e) in ball.sorted() {
            let nf = finite_nf(p, &e.word);
            ensure(evaluate(p, &nf).canonical() == *key, || format!("p={p}: {nf} does not evaluate to {}", e.word))?;
            if let Some(prev) = seen.insert(nf.to_string(), key.clone()) {
                return Err(format!("p={p}: {nf} represents {prev} and {key}"));
            }
            elements += 1;
        }
    }
    Ok(format!("3x10^4 confluence samples, {round_trips} round trips, {elements} ball elements"))
}

fn series_identities() -> Outcome {
    let mut count = 0;
    for p in 2..=6 {
        let bundle = positive_growth_series(p, 30).map_err(|e| e.to_string())?;
        for r in identity_residuals(&bundle).map_err(|e| e.to_string())? {
            ensure(r.holds(), || format!("p={p}: {} has residual {}", r.name, r.residual))?;
            count += 1;
        }
    }
    Ok(format!("{count} residuals vanish to order 30"))
}

fn asymptotics() -> Outcome {
    let tol = default_tolerance();
    let gap = |p: usize| -> Result<f64, String> {
        let x = xi(p, &tol).map_err(|e| e.to_string())?;
        Ok((x.to_f64() - to_f64(&xi_asymptotic(p))).abs())
    };
    let g50 = gap(50)?;
    ensure(g50 < 0.05, || format!("gap at p=50 is {g50}"))?;
    let gaps = (4..=64).map(gap).collect::<Result<Vec<_>, _>>()?;
    let inversions: Vec<usize> =
        gaps.windows(2).enumerate().filter(|(_, w)| w[1] > w[0]).map(|(k, _)| k + 5).collect();
    if inversions.is_empty() {
        Ok(format!("gap at p=50 is {g50:.6}; nonincreasing on 4..=64"))
    } else {
        Ok(format!("gap at p=50 is {g50:.6}; WARNING: gap increases at p = {inversions:?}"))
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (1, "p=2 positive growth series", Duration::from_secs(1), positive_growth_p2),
        (2, "census equals series", Duration::from_secs(300), census_vs_series),
        (3, "Fordham length equals BFS distance", Duration::from_secs(300), fordham_vs_bfs),
        (4, "zeta_p enclosures", Duration::from_secs(1), zeta_bounds),
        (5, "xi_p table", Duration::from_secs(1), xi_table),
        (6, "automaton triple agreement", Duration::from_secs(30), automaton_triple),
        (7, "normal-form soundness and uniqueness", Duration::from_secs(120), normal_forms),
        (8, "series identities", Duration::from_secs(30), series_identities),
        (9, "xi_p asymptotics", Duration::from_secs(5), asymptotics),
    ];
    let mut failed = 0;
    for (n, name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (status, detail) = match outcome {
            Ok(d) if elapsed <= limit => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; took {elapsed:.2?}, limit {limit:?}")),
            Err(d) => ("FAIL", d),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("criterion {n} {status}: {name} ({elapsed:.2?}) {detail}");
    }
    if failed == 0 {
        println!("acceptance: all 9 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
