//! Dense univariate polynomials with big-integer coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `coeffs[k]` is the coefficient of `x^k`. Trailing zeros are trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new<I, T>(coeffs: I) -> IntPoly
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut p = IntPoly { coeffs: coeffs.into_iter().map(Into::into).collect() };
        p.trim();
        p
    }

    pub fn zero() -> IntPoly {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> IntPoly {
        IntPoly::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> IntPoly {
        IntPoly::new([c.into()])
    }

    /// `c * x^k`
    pub fn monomial(c: impl Into<BigInt>, k: usize) -> IntPoly {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c.into());
        IntPoly::new(coeffs)
    }

    /// The polynomial `x`.
    pub fn x() -> IntPoly {
        IntPoly::monomial(1, 1)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        let mut acc = IntPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Horner evaluation at a rational point.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| {
            acc * x + BigRational::from_integer(c.clone())
        })
    }

    /// Sign of the value at `x`: -1, 0 or 1.
    pub fn sign_at(&self, x: &BigRational) -> i8 {
        // Sign of d^deg f(n/d) = sum c_i n^i d^(deg-i), all in integers;
        // BigRational is kept normalized so d > 0.
        let (n, d) = (x.numer(), x.denom());
        let mut coeffs = self.coeffs.iter().rev();
        let Some(lead) = coeffs.next() else { return 0 };
        let mut acc = lead.clone();
        let mut dpow = BigInt::one();
        for c in coeffs {
            dpow *= d;
            acc = acc * n + c * &dpow;
        }
        let v = acc;
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    /// Evaluate at `x` using `f64` arithmetic (for diagnostics only).
    pub fn eval_f64(&self, x: f64) -> f64 {
        use num_traits::ToPrimitive;
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }
}

impl Add<&IntPoly> for &IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)))
    }
}

impl Sub<&IntPoly> for &IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)))
    }
}

impl Mul<&IntPoly> for &IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: &IntPoly) -> IntPoly {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (k, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => f.write_str("x")?,
                (1, false) => write!(f, "{a}x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{a}x^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_power() {
        let one_minus_x = IntPoly::new([1, -1]);
        assert_eq!(one_minus_x.pow(3), IntPoly::new([1, -3, 3, -1]));
        assert_eq!(one_minus_x.pow(0), IntPoly::one());
    }

    #[test]
    fn arithmetic_trims() {
        let a = IntPoly::new([1, 2, 3]);
        let b = IntPoly::new([0, 0, 3]);
        assert_eq!((&a - &b).degree(), Some(1));
        assert!((&a - &a).is_zero());
        assert_eq!(&IntPoly::new([1, 1]) * &IntPoly::new([1, -1]), IntPoly::new([1, 0, -1]));
    }

    #[test]
    fn evaluates_exactly() {
        // y^3 - 2y^2 - y + 1 at 1/2
        let p = IntPoly::new([1, -1, -2, 1]);
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(p.eval(&half), BigRational::new(1.into(), 8.into()));
        assert_eq!(p.sign_at(&half), 1);
        assert_eq!(p.to_string(), "x^3 - 2x^2 - x + 1");
    }

    proptest::proptest! {
        #[test]
        fn sign_matches_exact_value(
            coeffs in proptest::collection::vec(-20i64..20, 0..8),
            n in -50i64..50,
            d in 1i64..50,
        ) {
            let p = IntPoly::new(coeffs);
            let x = BigRational::new(n.into(), d.into());
            let v = p.eval(&x);
            let expected = if v.is_zero() { 0 } else if v.is_positive() { 1 } else { -1 };
            proptest::prop_assert_eq!(p.sign_at(&x), expected);
        }
    }
}
