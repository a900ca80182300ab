//! The tropical semifield `Trop(q_1, ..., q_l)`: Laurent monomials with
//! ordinary multiplication and componentwise-minimum addition.

use std::fmt;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::LaurentPolynomial;
use crate::rational::RationalFunction;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TropicalMonomial {
    pub exps: Vec<i64>,
}

impl TropicalMonomial {
    pub fn new(exps: Vec<i64>) -> Self {
        TropicalMonomial { exps }
    }

    pub fn one(len: usize) -> Self {
        TropicalMonomial { exps: vec![0; len] }
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.exps.len() != other.exps.len() {
            return Err(Error::DimensionMismatch {
                expected: self.exps.len(),
                found: other.exps.len(),
            });
        }
        Ok(())
    }

    /// Semifield multiplication: exponent vectors add.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(TropicalMonomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        })
    }

    /// Auxiliary addition: componentwise minimum of exponents.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(TropicalMonomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.min(b))
                .collect(),
        })
    }

    pub fn inv(&self) -> Self {
        TropicalMonomial {
            exps: self.exps.iter().map(|e| -e).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Self {
        TropicalMonomial {
            exps: self.exps.iter().map(|e| e * k).collect(),
        }
    }

    /// `self ⊕ 1`.
    pub fn add_one(&self) -> Self {
        TropicalMonomial {
            exps: self.exps.iter().map(|&e| e.min(0)).collect(),
        }
    }

    /// The monomial as a Laurent polynomial in `nvars` variables, placing
    /// exponent `i` on variable `positions[i]`.
    pub fn to_laurent(&self, nvars: usize, positions: &[usize]) -> LaurentPolynomial {
        let mut e = vec![0i32; nvars];
        for (i, &p) in positions.iter().enumerate() {
            e[p] = self.exps[i] as i32;
        }
        LaurentPolynomial::monomial(nvars, e, 1)
    }

    /// Renders as a product of named generators, `1` for the identity.
    pub fn pretty(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| {
                let name = names.get(i).cloned().unwrap_or_else(|| format!("q{}", i + 1));
                if e == 1 {
                    name
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Debug for TropicalMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Trop({})", self.pretty(&[]))
    }
}

/// Free-function form of [`TropicalMonomial::mul`].
pub fn trop_mul(a: &TropicalMonomial, b: &TropicalMonomial) -> Result<TropicalMonomial> {
    a.mul(b)
}

/// Free-function form of [`TropicalMonomial::add`].
pub fn trop_add(a: &TropicalMonomial, b: &TropicalMonomial) -> Result<TropicalMonomial> {
    a.add(b)
}

fn frozen_positions(nvars: usize, mutable: &[usize]) -> Vec<usize> {
    (0..nvars).filter(|i| !mutable.contains(i)).collect()
}

/// The semifield homomorphism sending mutable variables to 1 and frozen
/// variables to themselves, applied to a subtraction-free Laurent polynomial.
///
/// `mutable` lists zero-based variable indices; the remaining indices, in
/// increasing order, index the tropical exponent vector.
pub fn tropicalize_positive(p: &LaurentPolynomial, mutable: &[usize]) -> Result<TropicalMonomial> {
    if !p.is_positive() {
        return Err(Error::NonPositiveInput);
    }
    let frozen = frozen_positions(p.num_vars(), mutable);
    let mut acc: Option<Vec<i64>> = None;
    for (e, _) in p.terms() {
        let v: Vec<i64> = frozen.iter().map(|&i| e[i] as i64).collect();
        acc = Some(match acc {
            None => v,
            Some(a) => a.iter().zip(&v).map(|(x, y)| *x.min(y)).collect(),
        });
    }
    Ok(TropicalMonomial::new(acc.unwrap_or_default()))
}

/// Tropicalization of a fraction whose numerator and denominator are both
/// subtraction-free (up to a common sign).
pub fn tropicalize_rational(r: &RationalFunction, mutable: &[usize]) -> Result<TropicalMonomial> {
    let (num, den) = if r.den().leading_term().map(|(_, c)| c.is_negative()).unwrap_or(false) {
        (-r.num(), -r.den())
    } else {
        (r.num().clone(), r.den().clone())
    };
    let a = tropicalize_positive(&num, mutable)?;
    let b = tropicalize_positive(&den, mutable)?;
    a.mul(&b.inv())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn tropical_addition_example() {
        let a = TropicalMonomial::new(vec![1, -1]);
        let b = TropicalMonomial::new(vec![0, 1]);
        assert_eq!(a.add(&b).unwrap().exps, vec![0, -1]);
        assert_eq!(a.add(&a).unwrap(), a);
        assert!(a.add(&TropicalMonomial::one(3)).is_err());
    }

    #[test]
    fn tropicalize_single_monomial() {
        let p = LaurentPolynomial::monomial(3, vec![2, 0, 5], 1);
        assert_eq!(tropicalize_positive(&p, &[0, 1]).unwrap().exps, vec![5]);
    }

    #[test]
    fn tropicalize_coprime_exchange_binomial_is_one() {
        // x2 * x3^2 + x4: frozen x3, x4 appear in different monomials.
        let p = LaurentPolynomial::from_terms(
            4,
            vec![
                (vec![0, 1, 2, 0], BigInt::from(1)),
                (vec![0, 0, 0, 1], BigInt::from(1)),
            ],
        )
        .unwrap();
        assert!(tropicalize_positive(&p, &[0, 1]).unwrap().is_one());
    }

    #[test]
    fn tropicalize_rejects_signs() {
        let p = &LaurentPolynomial::var(2, 0) - &LaurentPolynomial::var(2, 1);
        assert_eq!(tropicalize_positive(&p, &[0]), Err(Error::NonPositiveInput));
    }
}
