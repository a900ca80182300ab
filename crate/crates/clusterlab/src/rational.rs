//! Unreduced rational functions with Laurent polynomial numerator and
//! denominator.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::LaurentPolynomial;

/// A fraction `num / den` of Laurent polynomials.
///
/// No gcd is taken, so equality is decided by cross-multiplication.
#[derive(Clone)]
pub struct RationalFunction {
    num: LaurentPolynomial,
    den: LaurentPolynomial,
}

impl RationalFunction {
    pub fn new(num: LaurentPolynomial, den: LaurentPolynomial) -> Result<Self> {
        num.check_dim(&den)?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RationalFunction { num, den })
    }

    pub fn from_poly(p: LaurentPolynomial) -> Self {
        let den = LaurentPolynomial::one(p.num_vars());
        RationalFunction { num: p, den }
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(LaurentPolynomial::one(nvars))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::from_poly(LaurentPolynomial::var(nvars, i))
    }

    pub fn num(&self) -> &LaurentPolynomial {
        &self.num
    }

    pub fn den(&self) -> &LaurentPolynomial {
        &self.den
    }

    pub fn num_vars(&self) -> usize {
        self.num.num_vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn mul(&self, other: &Self) -> Self {
        RationalFunction {
            num: &self.num * &other.num,
            den: &self.den * &other.den,
        }
        .normalized()
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return RationalFunction {
                num: &self.num + &other.num,
                den: self.den.clone(),
            }
            .normalized();
        }
        RationalFunction {
            num: &(&self.num * &other.den) + &(&other.num * &self.den),
            den: &self.den * &other.den,
        }
        .normalized()
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RationalFunction {
            num: self.den.clone(),
            den: self.num.clone(),
        }
        .normalized())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs() as u32;
        Ok(RationalFunction {
            num: base.num.pow(k),
            den: base.den.pow(k),
        })
    }

    /// Rewrites the fraction without changing its value: the monomial content
    /// and integer content of the denominator are moved out, the denominator
    /// gets a positive leading coefficient, and a denominator dividing the
    /// numerator exactly is cancelled.
    pub fn normalized(self) -> Self {
        let RationalFunction { mut num, mut den } = self;
        if num.is_zero() {
            return RationalFunction {
                den: LaurentPolynomial::one(num.num_vars()),
                num,
            };
        }
        let shift: Vec<i32> = den.min_exponents().iter().map(|e| -e).collect();
        num = num.shift(&shift);
        den = den.shift(&shift);
        let g = num.content().gcd(&den.content());
        let lead_neg = den.leading_term().map(|(_, c)| c.is_negative()).unwrap_or(false);
        let g = if lead_neg { -g } else { g };
        if !g.is_one() {
            num = num.divide_exact(&LaurentPolynomial::constant(num.num_vars(), g.clone()))
                .expect("content divides");
            den = den.divide_exact(&LaurentPolynomial::constant(den.num_vars(), g))
                .expect("content divides");
        }
        if den.num_terms() > 1 {
            if let Ok(q) = num.divide_exact(&den) {
                return RationalFunction::from_poly(q);
            }
        }
        RationalFunction { num, den }
    }

    /// Returns the Laurent polynomial value if the fraction has one.
    pub fn as_laurent(&self) -> Option<LaurentPolynomial> {
        self.num.divide_exact(&self.den).ok()
    }

    pub fn eval(&self, point: &[BigRational]) -> Result<BigRational> {
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(point)? / d)
    }

    /// Renders as `(num) / (den)` with the given variable names.
    pub fn pretty(&self, names: &[String]) -> String {
        if self.den.is_one() {
            return self.num.pretty(names);
        }
        format!("({}) / ({})", self.num.pretty(names), self.den.pretty(names))
    }

    pub fn to_doc(&self) -> RationalDoc {
        RationalDoc {
            num: self.num.to_string(),
            den: self.den.to_string(),
        }
    }

    pub fn from_doc(doc: &RationalDoc, nvars: usize) -> Result<Self> {
        let num = LaurentPolynomial::parse_with_vars(&doc.num, nvars)?;
        let den = LaurentPolynomial::parse_with_vars(&doc.den, nvars)?;
        Self::new(num, den)
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.num.num_vars() == other.num.num_vars()
            && &self.num * &other.den == &other.num * &self.den
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.num_vars()).map(|i| format!("x{i}")).collect();
        write!(f, "RationalFunction({})", self.pretty(&names))
    }
}

/// JSON form `{"num": "...", "den": "..."}` using canonical polynomial strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalDoc {
    pub num: String,
    pub den: String,
}

/// Values that can populate a Y-seed: a field with the operations Y-seed
/// mutation needs.
pub trait YValue: Clone + PartialEq {
    fn one_like(&self) -> Self;
    fn is_zero_value(&self) -> bool;
    fn add_value(&self, other: &Self) -> Self;
    fn mul_value(&self, other: &Self) -> Self;
    fn inv_value(&self) -> Result<Self>;

    fn pow_value(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv_value()? } else { self.clone() };
        let mut acc = self.one_like();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul_value(&base);
        }
        Ok(acc)
    }
}

impl YValue for RationalFunction {
    fn one_like(&self) -> Self {
        RationalFunction::one(self.num_vars())
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
    fn add_value(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn mul_value(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn inv_value(&self) -> Result<Self> {
        self.inv().map_err(|_| Error::ZeroDenominator)
    }
    fn pow_value(&self, e: i64) -> Result<Self> {
        self.pow(e)
            .map(RationalFunction::normalized)
            .map_err(|_| Error::ZeroDenominator)
    }
}

impl YValue for BigRational {
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
    fn add_value(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_value(&self, other: &Self) -> Self {
        self * other
    }
    fn inv_value(&self) -> Result<Self> {
        if self.is_zero() {
            Err(Error::ZeroDenominator)
        } else {
            Ok(self.recip())
        }
    }
    fn pow_value(&self, e: i64) -> Result<Self> {
        if e < 0 && self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(crate::poly::rational_pow(self, e as i32))
    }
}

/// Convenience: the rational number `p/q`.
pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> RationalFunction {
        RationalFunction::var(n, i)
    }

    #[test]
    fn equality_by_cross_multiplication() {
        let a = x(2, 0).div(&x(2, 1)).unwrap();
        let b = x(2, 0)
            .mul(&x(2, 0))
            .div(&x(2, 0).mul(&x(2, 1)))
            .unwrap();
        assert_eq!(a, b);
        assert_ne!(a, x(2, 1).div(&x(2, 0)).unwrap());
    }

    #[test]
    fn zero_denominator_rejected() {
        let z = LaurentPolynomial::zero(1);
        assert!(RationalFunction::new(LaurentPolynomial::one(1), z).is_err());
        let zero = RationalFunction::from_poly(LaurentPolynomial::zero(1));
        assert_eq!(zero.inv().unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn normalization_cancels_exact_denominators() {
        let one = RationalFunction::one(2);
        let s = x(2, 0).add(&one);
        let sq = s.mul(&s);
        let q = sq.div(&s).unwrap();
        assert!(q.den().is_one());
        assert_eq!(q, s);
    }

    #[test]
    fn arithmetic_is_consistent() {
        let one = RationalFunction::one(2);
        let a = x(2, 0).add(&one).div(&x(2, 1)).unwrap();
        let b = x(2, 1).add(&one).inv().unwrap();
        let lhs = a.add(&b).mul(&a);
        let rhs = a.mul(&a).add(&b.mul(&a));
        assert_eq!(lhs, rhs);
        assert_eq!(a.sub(&a), RationalFunction::from_poly(LaurentPolynomial::zero(2)));
    }
}
