//! Truncated power series with exact rational coefficients, and the
//! generating functions counting positive elements by word length.
//!
//! All series here are in one variable `x`. A series of order `N` knows
//! the coefficients of `x^0 .. x^{N-1}`; binary operations truncate to the
//! smaller order.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::IntPoly;

pub const DEFAULT_ORDER: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl PowerSeries {
    pub fn zero(order: usize) -> PowerSeries {
        PowerSeries { coeffs: vec![BigRational::zero(); order] }
    }

    pub fn one(order: usize) -> PowerSeries {
        PowerSeries::monomial(1, 0, order)
    }

    /// `c x^k` truncated to `order`.
    pub fn monomial(c: i64, k: usize, order: usize) -> PowerSeries {
        let mut s = PowerSeries::zero(order);
        if k < order {
            s.coeffs[k] = rat(c);
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> PowerSeries {
        PowerSeries { coeffs }
    }

    pub fn from_ints<I: IntoIterator<Item = i64>>(coeffs: I) -> PowerSeries {
        PowerSeries { coeffs: coeffs.into_iter().map(rat).collect() }
    }

    pub fn from_poly(p: &IntPoly, order: usize) -> PowerSeries {
        PowerSeries {
            coeffs: (0..order).map(|k| BigRational::from_integer(p.coeff(k))).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Truncate or zero-pad to `order`.
    pub fn with_order(&self, order: usize) -> PowerSeries {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order, BigRational::zero());
        PowerSeries { coeffs }
    }

    /// Coefficients as integers, if they all are.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }

    pub fn is_nonnegative_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer() && !c.is_negative())
    }

    pub fn scale(&self, c: &BigRational) -> PowerSeries {
        PowerSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Multiply by `x^k`, keeping the order.
    pub fn shift_up(&self, k: usize) -> PowerSeries {
        let n = self.order();
        let mut coeffs = vec![BigRational::zero(); n];
        if k < n {
            coeffs[k..].clone_from_slice(&self.coeffs[..n - k]);
        }
        PowerSeries { coeffs }
    }

    /// Exact division by `x^k`; the order drops by `k`.
    pub fn shift_down(&self, k: usize) -> Result<PowerSeries> {
        if let Some(e) = (0..k.min(self.order())).find(|&e| !self.coeffs[e].is_zero()) {
            return Err(Error::NotDivisible { shift: k, exponent: e });
        }
        Ok(PowerSeries { coeffs: self.coeffs.iter().skip(k).cloned().collect() })
    }

    pub fn reciprocal(&self) -> Result<PowerSeries> {
        let n = self.order();
        if n == 0 {
            return Ok(self.clone());
        }
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let inv0 = a0.recip();
        let mut out: Vec<BigRational> = Vec::with_capacity(n);
        out.push(inv0.clone());
        for k in 1..n {
            let mut acc = BigRational::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * &out[k - j];
                }
            }
            out.push(-acc * &inv0);
        }
        Ok(PowerSeries { coeffs: out })
    }

    pub fn pow(&self, e: u32) -> PowerSeries {
        let mut acc = PowerSeries::one(self.order());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn product<'a, I: IntoIterator<Item = &'a PowerSeries>>(order: usize, factors: I) -> PowerSeries {
        factors.into_iter().fold(PowerSeries::one(order), |acc, f| &acc * f)
    }
}

impl Add<&PowerSeries> for &PowerSeries {
    type Output = PowerSeries;

    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        PowerSeries { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Sub<&PowerSeries> for &PowerSeries {
    type Output = PowerSeries;

    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        PowerSeries { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl Mul<&PowerSeries> for &PowerSeries {
    type Output = PowerSeries;

    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.order().min(rhs.order());
        let mut coeffs = vec![BigRational::zero(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n - i).enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        PowerSeries { coeffs }
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;

    fn neg(self) -> PowerSeries {
        PowerSeries { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<PowerSeries> for PowerSeries {
            type Output = PowerSeries;
            fn $m(self, rhs: PowerSeries) -> PowerSeries {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&PowerSeries> for PowerSeries {
            type Output = PowerSeries;
            fn $m(self, rhs: &PowerSeries) -> PowerSeries {
                (&self).$m(rhs)
            }
        }
        impl $tr<PowerSeries> for &PowerSeries {
            type Output = PowerSeries;
            fn $m(self, rhs: PowerSeries) -> PowerSeries {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}] + O(x^{})", parts.join(", "), self.order())
    }
}

/// Maclaurin expansion of `numerator / denominator`.
pub fn expand_rational(numerator: &IntPoly, denominator: &IntPoly, order: usize) -> Result<PowerSeries> {
    let den = PowerSeries::from_poly(denominator, order);
    let inv = den.reciprocal()?;
    Ok(&PowerSeries::from_poly(numerator, order) * &inv)
}

/// `x^2 M = (1 - x^3 M)^{-(p-1)} + x^2 - 1`, solved by fixed-point
/// iteration from `M = 1`.
pub fn solve_m(p: usize, order: usize) -> Result<PowerSeries> {
    if p < 2 {
        return Err(Error::InvalidP(p));
    }
    let one = PowerSeries::one(order + 2);
    let mut m = PowerSeries::one(order);
    for _ in 0..=order {
        let u = m.with_order(order + 2).shift_up(3);
        let bracket = &(&one - &u).reciprocal()?.pow((p - 1) as u32) - &one;
        let next = &bracket.shift_down(2)? + &PowerSeries::one(order);
        if next == m {
            break;
        }
        m = next;
    }
    Ok(m)
}

/// `1 / (1 - x^3 M)`, to the order of `m`.
pub fn auxiliary_n(m: &PowerSeries) -> Result<PowerSeries> {
    let n = m.order();
    (&PowerSeries::one(n) - &m.shift_up(3)).reciprocal()
}

/// `M_1 ... M_i = 1 + x^{-2} ((1 - x^3 M)^{-i} - 1)`, for `i = 0..=p-1`.
fn partial_products(p: usize, m: &PowerSeries) -> Result<Vec<PowerSeries>> {
    let order = m.order();
    let n = auxiliary_n(&m.with_order(order + 2))?;
    let one = PowerSeries::one(order + 2);
    (0..p)
        .map(|i| {
            let top = &n.pow(i as u32) - &one;
            Ok(&top.shift_down(2)? + &PowerSeries::one(order))
        })
        .collect()
}

/// `M_i` for `1 <= i <= p-1`, as a quotient of consecutive partial products.
pub fn solve_mi(p: usize, i: usize, order: usize) -> Result<PowerSeries> {
    assert!((1..p).contains(&i), "M_i needs 1 <= i <= p-1");
    let m = solve_m(p, order)?;
    let prods = partial_products(p, &m)?;
    Ok(&prods[i] * &prods[i - 1].reciprocal()?)
}

/// Generating functions of positive elements by word length, and of the
/// left, right and middle subtrees they decompose into.
#[derive(Debug, Clone)]
pub struct GrowthSeriesBundle {
    pub p: usize,
    pub order: usize,
    /// `M_1 .. M_{p-1}`; `mi[k]` is `M_{k+1}`.
    pub mi: Vec<PowerSeries>,
    pub m: PowerSeries,
    pub l: PowerSeries,
    pub r: PowerSeries,
    pub s: PowerSeries,
}

impl GrowthSeriesBundle {
    pub fn middle(&self, i: usize) -> &PowerSeries {
        &self.mi[i - 1]
    }
}

pub fn positive_growth_series(p: usize, order: usize) -> Result<GrowthSeriesBundle> {
    let m = solve_m(p, order)?;
    let prods = partial_products(p, &m)?;
    let mi = (1..p)
        .map(|i| Ok(&prods[i] * &prods[i - 1].reciprocal()?))
        .collect::<Result<Vec<_>>>()?;
    let one = PowerSeries::one(order);
    let x = PowerSeries::monomial(1, 1, order);
    let x2 = PowerSeries::monomial(1, 2, order);
    let one_minus_xm = &one - &(&x * &m);
    let one_minus_x2m = &one - &(&x2 * &m);
    let one_minus_x2 = &one - &x2;
    let l = one_minus_xm.reciprocal()?;
    let r = &(&one_minus_x2 * &mi[p - 2]) * &one_minus_x2m.reciprocal()?;
    let s = &(&(&one_minus_x2 * &m) * &l) * &one_minus_x2m.reciprocal()?;
    Ok(GrowthSeriesBundle { p, order, mi, m, l, r, s })
}

/// Named residual of one functional equation; zero when the identity holds.
#[derive(Debug, Clone)]
pub struct IdentityResidual {
    pub name: String,
    pub residual: PowerSeries,
}

impl IdentityResidual {
    fn new(name: impl Into<String>, residual: PowerSeries) -> Self {
        IdentityResidual { name: name.into(), residual }
    }

    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

/// `x N^p + (x^3 - x - 1) N + 1` with `N = 1/(1 - x^3 M)`.
pub fn auxiliary_equation_residual(p: usize, order: usize) -> Result<PowerSeries> {
    let m = solve_m(p, order)?;
    let n = auxiliary_n(&m)?;
    let x = PowerSeries::monomial(1, 1, order);
    let cubic = PowerSeries::from_poly(&IntPoly::new([-1, -1, 0, 1]), order);
    Ok(&(&(&x * &n.pow(p as u32)) + &(&cubic * &n)) + &PowerSeries::one(order))
}

/// Residuals of every relation among `S, L, R, M, M_i`.
pub fn identity_residuals(bundle: &GrowthSeriesBundle) -> Result<Vec<IdentityResidual>> {
    let p = bundle.p;
    let order = bundle.order;
    let one = PowerSeries::one(order);
    let x = PowerSeries::monomial(1, 1, order);
    let x2 = PowerSeries::monomial(1, 2, order);
    let x3 = PowerSeries::monomial(1, 3, order);
    let (m, l, r, s) = (&bundle.m, &bundle.l, &bundle.r, &bundle.s);
    let m_last = &bundle.mi[p - 2];
    let mut out = Vec::new();

    out.push(IdentityResidual::new("M = M_1 ... M_{p-1}", m - &PowerSeries::product(order, &bundle.mi)));

    let inner = PowerSeries::product(order, &bundle.mi[..p - 2]);
    out.push(IdentityResidual::new("S = L M_1 ... M_{p-2} R", s - &(&(l * &inner) * r)));

    out.push(IdentityResidual::new("L - 1 = x L M", &(l - &one) - &(&(&x * l) * m)));

    let gfr_rhs = m_last + &(&x2 * &(&(m * r) - m_last));
    out.push(IdentityResidual::new("R = M_{p-1} + x^2 (M R - M_{p-1})", r - &gfr_rhs));

    for i in 1..p {
        let tail = PowerSeries::product(order, &bundle.mi[i - 1..]);
        let head = PowerSeries::product(order, &bundle.mi[..i]);
        let rhs = &(&x * &tail) + &(&(&x3 * &tail) * &(&head - &one));
        out.push(IdentityResidual::new(format!("M_i - 1 = x M_i...M_{{p-1}} + x^3 M_i...M_{{p-1}} (M_1...M_i - 1), i={i}"), &(bundle.middle(i) - &one) - &rhs));
    }

    let n = auxiliary_n(m)?;
    let x2_minus_one = &x2 - &one;
    for i in 0..p {
        let head = PowerSeries::product(order, &bundle.mi[..i]);
        let rhs = &n.pow(i as u32) + &x2_minus_one;
        out.push(IdentityResidual::new(
            format!("partial product i={i}: x^2 M_1...M_i = (1 - x^3 M)^-i + x^2 - 1"),
            &(&x2 * &head) - &rhs,
        ));
    }

    out.push(IdentityResidual::new(
        "x^2 M = (1 - x^3 M)^-(p-1) + x^2 - 1",
        &(&x2 * m) - &(&n.pow((p - 1) as u32) + &x2_minus_one),
    ));

    let one_minus_x2 = &one - &x2;
    let lhs = &(s * &(&one - &(&x * m))) * &(&one - &(&x2 * m));
    out.push(IdentityResidual::new("S (1 - xM)(1 - x^2 M) = (1 - x^2) M", &lhs - &(&one_minus_x2 * m)));

    out.push(IdentityResidual::new("x N^p + (x^3 - x - 1) N + 1 = 0", auxiliary_equation_residual(p, order)?));
    Ok(out)
}
