//! Exact rationals and dense rational polynomials.
//!
//! Polynomials are ordered lexicographically: `p < q` iff the leading
//! coefficient of `q - p` is positive. This is the order in which
//! polynomial-valued stability functions are compared.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{malformed, Result};

/// Arbitrary-precision rational in canonical form.
pub type Rat = BigRational;

/// `n / d` as a [`Rat`]. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a [`Rat`].
pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `"a"` or `"a/b"` (surrounding whitespace allowed).
pub fn parse_rat(s: &str) -> Result<Rat> {
    let t = s.trim();
    let r = Rat::from_str(t).map_err(|_| malformed(alloc::format!("not a rational number: {s:?}")))?;
    Ok(r)
}

/// Canonical text form: `"a"` for integers, `"a/b"` otherwise.
pub fn rat_to_string(r: &Rat) -> String {
    alloc::format!("{r}")
}

/// `max(t, 0)`.
pub fn positive_part(t: &Rat) -> Rat {
    if t.is_positive() {
        t.clone()
    } else {
        Rat::zero()
    }
}

/// Rational polynomial, coefficients indexed by degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    coeffs: Vec<Rat>,
}

impl RatPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_coeffs(alloc::vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::from_coeffs(alloc::vec![Rat::zero(), Rat::one()])
    }

    /// Builds from ascending coefficients, stripping trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    /// Positive in the lexicographic order, i.e. positive leading coefficient.
    pub fn is_positive(&self) -> bool {
        self.leading_coeff().is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.leading_coeff().is_negative()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Horner evaluation.
    pub fn eval(&self, x0: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x0 + c)
    }

    /// Lexicographic comparison.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        let n = self.coeffs.len().max(other.coeffs.len());
        for k in (0..n).rev() {
            match self.coeff(k).cmp(&other.coeff(k)) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }

    /// Sign in the lexicographic order.
    pub fn signum(&self) -> Ordering {
        self.lex_cmp(&Self::zero())
    }
}

impl PartialOrd for RatPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RatPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lex_cmp(other)
    }
}

impl From<Rat> for RatPoly {
    fn from(c: Rat) -> Self {
        Self::constant(c)
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = alloc::vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::from_coeffs(out)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatPoly {
            type Output = RatPoly;
            fn $m(self, rhs: RatPoly) -> RatPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RatPoly> for RatPoly {
            type Output = RatPoly;
            fn $m(self, rhs: &RatPoly) -> RatPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        -&self
    }
}

impl core::iter::Sum for RatPoly {
    fn sum<I: Iterator<Item = RatPoly>>(iter: I) -> RatPoly {
        iter.fold(RatPoly::zero(), |a, b| a + b)
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                if mag.is_integer() || k == 0 {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})")?;
                }
            }
            match k {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn lex_examples() {
        let p = RatPoly::from_ints(&[0, -5, 2]);
        let q = RatPoly::from_ints(&[0, 100, 1]);
        assert_eq!(p.lex_cmp(&q), Ordering::Greater);
        assert_eq!(
            RatPoly::from_ints(&[-3, 1]).lex_cmp(&RatPoly::from_ints(&[-2, 1])),
            Ordering::Less
        );
        assert_eq!(RatPoly::zero().lex_cmp(&RatPoly::zero()), Ordering::Equal);
    }

    #[test]
    fn arithmetic_examples() {
        let a = RatPoly::from_ints(&[1, 1]);
        let b = RatPoly::from_ints(&[-1, 1]);
        assert_eq!(&a * &b, RatPoly::from_ints(&[-1, 0, 1]));
        assert!((&a + &RatPoly::from_ints(&[-1, -1])).is_zero());
        assert_eq!(
            RatPoly::from_ints(&[2, 1]).scale(&rat(3, 2)),
            RatPoly::from_coeffs(alloc::vec![int(3), rat(3, 2)])
        );
    }

    #[test]
    fn eval_examples() {
        assert_eq!(RatPoly::from_ints(&[1, 0, 1]).eval(&int(2)), int(5));
        assert_eq!(RatPoly::zero().eval(&rat(7, 3)), int(0));
        assert_eq!(RatPoly::from_ints(&[1, 1]).eval(&int(-1)), int(0));
    }

    #[test]
    fn display_and_parse() {
        let p = RatPoly::from_coeffs(alloc::vec![rat(1, 2), int(0), int(3)]);
        assert_eq!(p.to_string(), "3x^2 + 1/2");
        assert_eq!(RatPoly::from_ints(&[-1, -1]).to_string(), "-x - 1");
        assert_eq!(parse_rat(" -4/6 ").unwrap(), rat(-2, 3));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }
}
