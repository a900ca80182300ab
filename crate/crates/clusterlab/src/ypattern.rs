//! Y-seeds, Y-seed mutation and the `ŷ` construction.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::ExchangeMatrix;
use crate::poly::LaurentPolynomial;
use crate::rational::{RationalDoc, RationalFunction, YValue};
use crate::seed::{MutationWord, Seed};

/// An `n`-tuple of values together with an `n × n` exchange matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct YSeed<T> {
    pub y: Vec<T>,
    pub matrix: ExchangeMatrix,
}

impl<T: YValue> YSeed<T> {
    pub fn new(y: Vec<T>, matrix: ExchangeMatrix) -> Result<Self> {
        if matrix.m() != matrix.n() {
            return Err(Error::invalid("Y-seeds use a square exchange matrix"));
        }
        if y.len() != matrix.n() {
            return Err(Error::DimensionMismatch {
                expected: matrix.n(),
                found: y.len(),
            });
        }
        if y.iter().any(|v| v.is_zero_value()) {
            return Err(Error::ZeroDenominator);
        }
        Ok(YSeed { y, matrix })
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    /// `Y'_k = Y_k^{-1}`; `Y'_j = Y_j (Y_k + 1)^{-b_kj}` if `b_kj ≤ 0`,
    /// `Y_j (Y_k^{-1} + 1)^{-b_kj}` if `b_kj ≥ 0`; the matrix mutates.
    pub fn mutate(&self, k: usize) -> Result<Self> {
        let n = self.n();
        if k >= n {
            return Err(Error::IndexOutOfRange { index: k + 1, max: n });
        }
        let yk = &self.y[k];
        let one = yk.one_like();
        let inv = yk.inv_value()?;
        let plus = yk.add_value(&one);
        let inv_plus = inv.add_value(&one);
        let mut y = Vec::with_capacity(n);
        for (j, yj) in self.y.iter().enumerate() {
            if j == k {
                y.push(inv.clone());
                continue;
            }
            let b = self.matrix.get(k, j);
            let factor = match b.signum() {
                0 => one.clone(),
                -1 => degenerate(&plus)?.pow_value(-b)?,
                _ => degenerate(&inv_plus)?.pow_value(-b)?,
            };
            let v = yj.mul_value(&factor);
            if v.is_zero_value() {
                return Err(Error::ZeroDenominator);
            }
            y.push(v);
        }
        Ok(YSeed {
            y,
            matrix: self.matrix.mutate(k)?,
        })
    }

    /// The Y-seeds visited along a word, starting with `self`.
    pub fn orbit(&self, word: &MutationWord) -> Result<Vec<Self>> {
        let mut out = vec![self.clone()];
        for &k in word.letters() {
            let next = out.last().expect("nonempty").mutate(k)?;
            out.push(next);
        }
        Ok(out)
    }
}

fn degenerate<T: YValue>(v: &T) -> Result<&T> {
    if v.is_zero_value() {
        Err(Error::ZeroDenominator)
    } else {
        Ok(v)
    }
}

pub fn mutate_y<T: YValue>(ys: &YSeed<T>, k: usize) -> Result<YSeed<T>> {
    ys.mutate(k)
}

pub fn y_pattern_orbit<T: YValue>(ys: &YSeed<T>, word: &MutationWord) -> Result<Vec<YSeed<T>>> {
    ys.orbit(word)
}

impl YSeed<RationalFunction> {
    /// The initial Y-seed `(y_1, …, y_n)` in `n` independent variables.
    pub fn generic(matrix: ExchangeMatrix) -> Result<Self> {
        let n = matrix.n();
        Self::new((0..n).map(|i| RationalFunction::var(n, i)).collect(), matrix)
    }

    pub fn to_doc(&self) -> YSeedDoc {
        YSeedDoc {
            matrix: self.matrix.rows().to_vec(),
            y: self.y.iter().map(RationalFunction::to_doc).collect(),
        }
    }

    /// Reads a Y-seed document whose values live in `nvars` variables.
    pub fn from_doc(doc: &YSeedDoc, nvars: usize) -> Result<Self> {
        let matrix = ExchangeMatrix::square(doc.matrix.clone())?;
        let y = doc
            .y
            .iter()
            .map(|d| RationalFunction::from_doc(d, nvars))
            .collect::<Result<Vec<_>>>()?;
        Self::new(y, matrix)
    }
}

/// JSON form `{"matrix": [[…]], "y": [{"num": …, "den": …}, …]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct YSeedDoc {
    pub matrix: Vec<Vec<i64>>,
    pub y: Vec<RationalDoc>,
}

/// `ŷ_k = ∏_{i=1}^m x_i^{b_ik}` for the extended cluster of a seed, as
/// rational functions in the initial variables.
pub fn hat_y(s: &Seed) -> YSeed<RationalFunction> {
    let m = s.m();
    let y = (0..s.n())
        .map(|k| {
            let mut num = LaurentPolynomial::one(m);
            let mut den = LaurentPolynomial::one(m);
            for i in 0..m {
                let b = s.matrix().get(i, k);
                if b > 0 {
                    num = &num * &s.extended(i).pow(b as u32);
                } else if b < 0 {
                    den = &den * &s.extended(i).pow((-b) as u32);
                }
            }
            RationalFunction::new(num, den)
                .expect("cluster variables are nonzero")
                .normalized()
        })
        .collect();
    YSeed {
        y,
        matrix: s.matrix().principal(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> ExchangeMatrix {
        ExchangeMatrix::square(vec![vec![0, 1], vec![-1, 0]]).unwrap()
    }

    fn rf(num: &str, den: &str) -> RationalFunction {
        let names = ["y1", "y2"];
        RationalFunction::new(
            LaurentPolynomial::parse_pretty(num, &names).unwrap(),
            LaurentPolynomial::parse_pretty(den, &names).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn first_mutation() {
        let ys = YSeed::generic(a2()).unwrap();
        let t1 = ys.mutate(0).unwrap();
        assert_eq!(t1.y[0], rf("1", "y1"));
        assert_eq!(t1.y[1], rf("y1*y2", "y1 + 1"));
    }

    #[test]
    fn involutive() {
        let ys = YSeed::generic(a2()).unwrap();
        for k in 0..2 {
            assert_eq!(ys.mutate(k).unwrap().mutate(k).unwrap(), ys);
        }
    }

    #[test]
    fn hat_y_of_initial_seed() {
        let s = Seed::initial(a2());
        let h = hat_y(&s);
        assert_eq!(h.y[0].num(), &LaurentPolynomial::parse_pretty("x2^-1", &["x1", "x2"]).unwrap());
        assert_eq!(h.y[1], RationalFunction::var(2, 0));
    }

    #[test]
    fn degenerate_value_is_reported() {
        use crate::rational::ratio;
        let ys = YSeed::new(vec![ratio(-1, 1), ratio(2, 1)], a2()).unwrap();
        assert_eq!(ys.mutate(0).unwrap_err(), Error::ZeroDenominator);
    }

    #[test]
    fn json_round_trip() {
        let ys = YSeed::generic(a2()).unwrap().mutate(0).unwrap();
        let doc = ys.to_doc();
        assert_eq!(YSeed::from_doc(&doc, 2).unwrap(), ys);
    }
}
