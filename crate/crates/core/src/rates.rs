//! Certified root isolation for the exponential growth rates.
//!
//! `ζ_p` is the growth rate of the positive monoid, `ξ_p` the lower bound for
//! the group coming from the normal-form language. Every root is bracketed by
//! bisection with exact rational sign evaluation, so the returned intervals are
//! proofs, not estimates.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::automaton::phi_denominator_core;
use crate::error::{Error, Result};
use crate::poly::IntPoly;

/// Polynomial equations whose roots define the rates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Equation {
    /// `(1-x^2)^{p-1}(1+x-x^2) = 1`, `ζ = 1/x`.
    ZetaX,
    /// `(y^2-1)^{p-1}(y^2+y-1) = y^{2p}`, `ζ = y`.
    ZetaY,
    /// `(1-t)^p + (1-t)^{p-1} = 1`, `ξ = 1/t`.
    XiT,
    /// `(2ξ-1)(ξ-1)^{p-1} = ξ^p`.
    XiDirect,
    /// `y^p = y + 1`, `ξ = y/(y-1)`.
    XiY,
}

impl Equation {
    pub fn name(self) -> &'static str {
        match self {
            Equation::ZetaX => "(1-x^2)^(p-1) (1+x-x^2) = 1",
            Equation::ZetaY => "(y^2-1)^(p-1) (y^2+y-1) = y^(2p)",
            Equation::XiT => "(1-t)^p + (1-t)^(p-1) = 1",
            Equation::XiDirect => "(2xi-1) (xi-1)^(p-1) = xi^p",
            Equation::XiY => "y^p = y + 1",
        }
    }

    /// The defining polynomial, written as `lhs - rhs`.
    pub fn polynomial(self, p: usize) -> IntPoly {
        let e = p as u32;
        match self {
            Equation::ZetaX => {
                IntPoly::new([1, 0, -1]).pow(e - 1) * IntPoly::new([1, 1, -1]) - IntPoly::one()
            }
            Equation::ZetaY => {
                IntPoly::new([-1, 0, 1]).pow(e - 1) * IntPoly::new([-1, 1, 1])
                    - IntPoly::monomial(1, 2 * p)
            }
            Equation::XiT => phi_denominator_core(p),
            Equation::XiDirect => {
                IntPoly::new([-1, 2]) * IntPoly::new([-1, 1]).pow(e - 1) - IntPoly::monomial(1, p)
            }
            Equation::XiY => IntPoly::monomial(1, p) - IntPoly::new([1, 1]),
        }
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A closed rational interval `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enclosure {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Enclosure {
    pub fn new(lo: BigRational, hi: BigRational) -> Enclosure {
        debug_assert!(lo <= hi);
        Enclosure { lo, hi }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn contains(&self, v: &BigRational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn lies_within(&self, lo: &BigRational, hi: &BigRational) -> bool {
        lo < &self.lo && &self.hi < hi
    }

    pub fn shift(&self, by: &BigRational) -> Enclosure {
        Enclosure::new(&self.lo + by, &self.hi + by)
    }

    pub fn scale(&self, by: &BigRational) -> Enclosure {
        debug_assert!(by.is_positive());
        Enclosure::new(&self.lo * by, &self.hi * by)
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.midpoint())
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// A certified enclosure of a rate together with the same rate obtained from
/// the alternative equation forms.
#[derive(Debug, Clone)]
pub struct RateResult {
    pub p: usize,
    pub value: Enclosure,
    pub equation: Equation,
    /// `max |f|` over the endpoints of the bracket in the solving variable.
    pub residual_bound: BigRational,
    pub alternates: Vec<(Equation, Enclosure)>,
}

impl RateResult {
    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    /// Largest midpoint distance between the primary and any alternate form.
    pub fn max_disagreement(&self) -> BigRational {
        let mid = self.value.midpoint();
        self.alternates
            .iter()
            .map(|(_, e)| (e.midpoint() - &mid).abs())
            .max()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn forms_agree(&self, tol: &BigRational) -> bool {
        self.max_disagreement() <= tol * BigRational::from_integer(2.into())
    }
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn default_tolerance() -> BigRational {
    rat(1, 1_000_000_000)
}

/// Parses `"1/1000"`, `"0.001"` or `"1e-9"` into an exact positive rational.
pub fn parse_tolerance(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let value = if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| Error::InvalidTolerance)?;
        let d = BigInt::from_str(d.trim()).map_err(|_| Error::InvalidTolerance)?;
        if d.is_zero() {
            return Err(Error::InvalidTolerance);
        }
        BigRational::new(n, d)
    } else {
        parse_decimal(s).ok_or(Error::InvalidTolerance)?
    };
    if value.is_positive() {
        Ok(value)
    } else {
        Err(Error::InvalidTolerance)
    }
}

fn parse_decimal(s: &str) -> Option<BigRational> {
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(k) => (&s[..k], s[k + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{}{}", if int_part.is_empty() { "0" } else { int_part }, frac_part);
    let n = BigInt::from_str(&digits).ok()?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    Some(if scale >= 0 {
        BigRational::from_integer(n * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(n, num_traits::pow(ten, (-scale) as usize))
    })
}

/// Bisects `poly` on `[lo, hi]` until `done(lo, hi)` holds. The endpoints must
/// have opposite signs; the returned bracket keeps them.
fn bisect(
    poly: &IntPoly,
    mut lo: BigRational,
    mut hi: BigRational,
    equation: Equation,
    done: impl Fn(&BigRational, &BigRational) -> bool,
) -> Result<(BigRational, BigRational)> {
    let s_lo = poly.sign_at(&lo);
    let s_hi = poly.sign_at(&hi);
    if s_lo == 0 {
        return Ok((lo.clone(), lo));
    }
    if s_hi == 0 {
        return Ok((hi.clone(), hi));
    }
    if s_lo == s_hi {
        return Err(Error::NoSignChange { equation: equation.name() });
    }
    let two = BigRational::from_integer(2.into());
    while !done(&lo, &hi) {
        let mid = (&lo + &hi) / &two;
        match poly.sign_at(&mid) {
            0 => return Ok((mid.clone(), mid)),
            s if s == s_lo => lo = mid,
            _ => hi = mid,
        }
    }
    Ok((lo, hi))
}

fn residual_bound(poly: &IntPoly, lo: &BigRational, hi: &BigRational) -> BigRational {
    poly.eval(lo).abs().max(poly.eval(hi).abs())
}

fn check_p(p: usize) -> Result<()> {
    if p < 2 {
        Err(Error::InvalidP(p))
    } else {
        Ok(())
    }
}

fn check_tol(tol: &BigRational) -> Result<()> {
    if tol.is_positive() {
        Ok(())
    } else {
        Err(Error::InvalidTolerance)
    }
}

/// Does the polynomial change sign (or vanish) on the interval?
pub fn certifies(poly: &IntPoly, e: &Enclosure) -> bool {
    let a = poly.sign_at(&e.lo);
    let b = poly.sign_at(&e.hi);
    a == 0 || b == 0 || a != b
}

/// Enclosure of `ζ_p`, the growth rate of the positive monoid.
pub fn zeta(p: usize, tol: &BigRational) -> Result<RateResult> {
    check_p(p)?;
    check_tol(tol)?;
    let f = Equation::ZetaX.polynomial(p);
    // f(x) ~ x near 0 and f(1/p) < 0; the root sits near 1/(p + 1/2).
    let (xlo, xhi) = bisect(&f, rat(1, 2 * p as i64), rat(1, p as i64), Equation::ZetaX, |lo, hi| {
        &(lo.recip() - hi.recip()) <= tol
    })?;
    let value = Enclosure::new(xhi.recip(), xlo.recip());

    let g = Equation::ZetaY.polynomial(p);
    if !certifies(&g, &value) {
        return Err(Error::NoSignChange { equation: Equation::ZetaY.name() });
    }
    let (ylo, yhi) = bisect(
        &g,
        BigRational::from_integer(p.into()),
        BigRational::from_integer((p + 1).into()),
        Equation::ZetaY,
        |lo, hi| &(hi - lo) <= tol,
    )?;

    Ok(RateResult {
        p,
        residual_bound: residual_bound(&f, &xlo, &xhi),
        value,
        equation: Equation::ZetaX,
        alternates: vec![(Equation::ZetaY, Enclosure::new(ylo, yhi))],
    })
}

/// Enclosure of `ξ_p`, the growth rate of the normal-form language.
pub fn xi(p: usize, tol: &BigRational) -> Result<RateResult> {
    check_p(p)?;
    check_tol(tol)?;
    let h = Equation::XiT.polynomial(p);
    // h is decreasing on (0, 1) with h(0) = 1; the root exceeds 1/(2p - 1).
    let (tlo, thi) = bisect(&h, rat(1, 2 * p as i64), rat(1, 2), Equation::XiT, |lo, hi| {
        &(lo.recip() - hi.recip()) <= tol
    })?;
    let value = Enclosure::new(thi.recip(), tlo.recip());

    let direct = Equation::XiDirect.polynomial(p);
    let (dlo, dhi) = bisect(
        &direct,
        BigRational::from_integer(2.into()),
        BigRational::from_integer((2 * p).into()),
        Equation::XiDirect,
        |lo, hi| &(hi - lo) <= tol,
    )?;

    let one = BigRational::one();
    let y_to_xi = |y: &BigRational| y / (y - &one);
    let ypoly = Equation::XiY.polynomial(p);
    let (ylo, yhi) = bisect(&ypoly, one.clone(), rat(2, 1), Equation::XiY, |lo, hi| {
        !lo.is_one() && &(y_to_xi(lo) - y_to_xi(hi)) <= tol
    })?;

    Ok(RateResult {
        p,
        residual_bound: residual_bound(&h, &tlo, &thi),
        value,
        equation: Equation::XiT,
        alternates: vec![
            (Equation::XiDirect, Enclosure::new(dlo, dhi)),
            (Equation::XiY, Enclosure::new(y_to_xi(&yhi), y_to_xi(&ylo))),
        ],
    })
}

/// Enclosure of `ln 2` of width below `10^-digits`, from
/// `ln 2 = 2 atanh(1/3) = 2 Σ 3^{-(2k+1)} / (2k+1)`.
pub fn ln2_enclosure(digits: u32) -> Enclosure {
    let bound = BigRational::new(1.into(), num_traits::pow(BigInt::from(10), digits as usize));
    let ninth = rat(1, 9);
    let mut power = rat(1, 3);
    let mut sum = BigRational::zero();
    let mut k: i64 = 0;
    loop {
        sum += &power / BigRational::from_integer((2 * k + 1).into());
        power *= &ninth;
        k += 1;
        // Tail after k terms: 2 Σ_{j≥k} 3^{-(2j+1)}/(2j+1) ≤ 2·3^{-(2k+1)}/(2k+1) · 9/8.
        let tail = &power * rat(9, 4) / BigRational::from_integer((2 * k + 1).into());
        if tail < bound {
            let lo = &sum * rat(2, 1);
            return Enclosure::new(lo.clone(), lo + tail);
        }
    }
}

/// `(p - 1/2)/ln 2 + 1/2` evaluated with a 30-digit enclosure of `ln 2`.
pub fn xi_asymptotic(p: usize) -> BigRational {
    xi_asymptotic_enclosure(p).midpoint()
}

pub fn xi_asymptotic_enclosure(p: usize) -> Enclosure {
    let ln2 = ln2_enclosure(30);
    let a = BigRational::from_integer(p.into()) - rat(1, 2);
    let half = rat(1, 2);
    Enclosure::new(&a / &ln2.hi + &half, &a / &ln2.lo + &half)
}

#[derive(Debug, Clone)]
pub struct RateRow {
    pub p: usize,
    pub zeta: RateResult,
    /// `ζ_p - p`
    pub lambda: Enclosure,
    pub xi: RateResult,
    /// `ξ_p / (2p - 1)`
    pub xi_ratio: Enclosure,
    /// `|ξ_p - ((p - 1/2)/ln 2 + 1/2)|` at the midpoints.
    pub asymptotic_gap: BigRational,
    /// Set when `p < ζ_p < p + 1/2` is not certified.
    pub violation: bool,
}

#[derive(Debug, Clone)]
pub struct RateReport {
    pub rows: Vec<RateRow>,
    /// Whether the `λ_p` midpoints are nondecreasing in `p`.
    pub lambda_nondecreasing: bool,
    /// Values of `p` at which the asymptotic gap grew.
    pub gap_inversions: Vec<usize>,
}

impl RateReport {
    pub fn violations(&self) -> Vec<usize> {
        self.rows.iter().filter(|r| r.violation).map(|r| r.p).collect()
    }
}

pub fn rate_row(p: usize, tol: &BigRational) -> Result<RateRow> {
    let z = zeta(p, tol)?;
    let x = xi(p, tol)?;
    let pr = BigRational::from_integer(p.into());
    let lambda = z.value.shift(&-pr.clone());
    let violation = !z.value.lies_within(&pr, &(&pr + rat(1, 2)));
    let xi_ratio = x.value.scale(&rat(1, 2 * p as i64 - 1));
    let asymptotic_gap = (x.value.midpoint() - xi_asymptotic(p)).abs();
    Ok(RateRow { p, zeta: z, lambda, xi: x, xi_ratio, asymptotic_gap, violation })
}

pub fn rate_report(p_max: usize, tol: &BigRational) -> Result<RateReport> {
    check_p(p_max)?;
    let rows = (2..=p_max).map(|p| rate_row(p, tol)).collect::<Result<Vec<_>>>()?;
    let lambda_nondecreasing = rows.windows(2).all(|w| w[0].lambda.midpoint() <= w[1].lambda.midpoint());
    let gap_inversions = rows
        .windows(2)
        .filter(|w| w[1].asymptotic_gap > w[0].asymptotic_gap)
        .map(|w| w[1].p)
        .collect();
    Ok(RateReport { rows, lambda_nondecreasing, gap_inversions })
}
