//! Multivariate Laurent polynomials with arbitrary-precision integer coefficients.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exponent vector ordered by graded lexicographic order.
///
/// Total degree is compared first, ties are broken lexicographically with
/// `x1 > x2 > ... > xm`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<i32>);

impl Monomial {
    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A Laurent polynomial in `num_vars` variables over the integers.
///
/// Terms are kept in a map keyed by exponent vector, so the representation is
/// canonical: no zero coefficients are stored and the zero polynomial has no
/// terms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

/// Arithmetic operation selector for [`lp_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    /// Negation of the first operand; the second is only dimension-checked.
    NegA,
}

/// Checked binary arithmetic on Laurent polynomials.
pub fn lp_arith(
    a: &LaurentPolynomial,
    b: &LaurentPolynomial,
    op: ArithOp,
) -> Result<LaurentPolynomial> {
    a.check_dim(b)?;
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::NegA => -a,
    })
}

impl LaurentPolynomial {
    pub fn zero(nvars: usize) -> Self {
        LaurentPolynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    /// The variable `x_{i+1}` (zero-based index `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range");
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, 1)
    }

    pub fn monomial(nvars: usize, exps: Vec<i32>, c: impl Into<BigInt>) -> Self {
        assert_eq!(exps.len(), nvars, "exponent vector has wrong length");
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial(exps), c);
        }
        LaurentPolynomial { nvars, terms }
    }

    /// Builds a polynomial from (exponents, coefficient) pairs, merging repeats.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<i32>, BigInt)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    found: e.len(),
                });
            }
            p.add_term(Monomial(e), c);
        }
        Ok(p)
    }

    pub fn num_vars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(m, c)| c.is_one() && m.0.iter().all(|&e| e == 0))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending canonical order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&[i32], &BigInt)> {
        self.terms.iter().map(|(m, c)| (m.0.as_slice(), c))
    }

    /// Largest term under the canonical order.
    pub fn leading_term(&self) -> Option<(&[i32], &BigInt)> {
        self.terms.iter().next_back().map(|(m, c)| (m.0.as_slice(), c))
    }

    /// Returns the single term if the polynomial is a monomial.
    pub fn as_monomial(&self) -> Option<(&[i32], &BigInt)> {
        if self.terms.len() == 1 {
            self.leading_term()
        } else {
            None
        }
    }

    pub fn check_dim(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        lp_arith(self, other, ArithOp::Add)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        lp_arith(self, other, ArithOp::Sub)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        lp_arith(self, other, ArithOp::Mul)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Multiplies by the monomial `x^shift`.
    pub fn shift(&self, shift: &[i32]) -> Self {
        assert_eq!(shift.len(), self.nvars);
        LaurentPolynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let e = m.0.iter().zip(shift).map(|(a, b)| a + b).collect();
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Componentwise minimum of exponents over all terms (the monomial content
    /// up to sign and integer content). Zero for the zero polynomial.
    pub fn min_exponents(&self) -> Vec<i32> {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return vec![0; self.nvars];
        };
        let mut mins = first.0.clone();
        for m in it {
            for (a, &b) in mins.iter_mut().zip(&m.0) {
                *a = (*a).min(b);
            }
        }
        mins
    }

    /// Componentwise maximum of exponents over all terms.
    pub fn max_exponents(&self) -> Vec<i32> {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return vec![0; self.nvars];
        };
        let mut maxs = first.0.clone();
        for m in it {
            for (a, &b) in maxs.iter_mut().zip(&m.0) {
                *a = (*a).max(b);
            }
        }
        maxs
    }

    /// Gcd of all coefficients, zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// True when every exponent is nonnegative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|m| m.0.iter().all(|&e| e >= 0))
    }

    /// Exact quotient `self / den`, failing unless the quotient is a Laurent
    /// polynomial.
    ///
    /// The monomial content of both operands is factored out, leaving ordinary
    /// polynomials, and then multivariate division by the single divisor runs
    /// under the graded lexicographic order. Division by one polynomial is
    /// exact iff the remainder vanishes, and as soon as a leading term is not
    /// divisible the remainder cannot vanish, so the loop stops early.
    pub fn divide_exact(&self, den: &Self) -> Result<Self> {
        self.check_dim(den)?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        if let Some((e, c)) = den.as_monomial() {
            let neg: Vec<i32> = e.iter().map(|x| -x).collect();
            let mut terms = BTreeMap::new();
            for (m, v) in &self.terms {
                let (q, r) = v.div_rem(c);
                if !r.is_zero() {
                    return Err(Error::NonExactDivision);
                }
                let e = m.0.iter().zip(&neg).map(|(a, b)| a + b).collect();
                terms.insert(Monomial(e), q);
            }
            return Ok(LaurentPolynomial {
                nvars: self.nvars,
                terms,
            });
        }
        let dshift: Vec<i32> = den.min_exponents();
        let nshift: Vec<i32> = self.min_exponents();
        let neg = |v: &[i32]| v.iter().map(|x| -x).collect::<Vec<_>>();
        let d = den.shift(&neg(&dshift));
        let mut r = self.shift(&neg(&nshift)).terms;
        let (lt_d, lc_d) = {
            let (m, c) = d.terms.iter().next_back().expect("nonzero divisor");
            (m.0.clone(), c.clone())
        };
        let mut quotient: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        while let Some((m, c)) = r.iter().next_back() {
            let mut t = Vec::with_capacity(self.nvars);
            for (a, b) in m.0.iter().zip(&lt_d) {
                let diff = a - b;
                if diff < 0 {
                    return Err(Error::NonExactDivision);
                }
                t.push(diff);
            }
            let (qc, rem) = c.div_rem(&lc_d);
            if !rem.is_zero() {
                return Err(Error::NonExactDivision);
            }
            for (dm, dc) in &d.terms {
                let e: Vec<i32> = dm.0.iter().zip(&t).map(|(a, b)| a + b).collect();
                let delta = -(dc * &qc);
                use std::collections::btree_map::Entry;
                match r.entry(Monomial(e)) {
                    Entry::Vacant(v) => {
                        v.insert(delta);
                    }
                    Entry::Occupied(mut o) => {
                        *o.get_mut() += delta;
                        if o.get().is_zero() {
                            o.remove();
                        }
                    }
                }
            }
            quotient.insert(Monomial(t), qc);
        }
        let q = LaurentPolynomial {
            nvars: self.nvars,
            terms: quotient,
        };
        let total: Vec<i32> = nshift.iter().zip(&dshift).map(|(a, b)| a - b).collect();
        Ok(q.shift(&total))
    }

    /// For each variable, the largest power appearing in a denominator:
    /// `max(0, -min exponent)`.
    pub fn denominator_vector(&self) -> Result<Vec<u32>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self
            .min_exponents()
            .into_iter()
            .map(|e| if e < 0 { (-e) as u32 } else { 0 })
            .collect())
    }

    /// True iff nonzero and every coefficient is positive.
    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.terms.values().all(|c| c.is_positive())
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &[BigRational]) -> Result<BigRational> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: point.len(),
            });
        }
        let mins = self.min_exponents();
        for (i, &e) in mins.iter().enumerate() {
            if e < 0 && point[i].is_zero() {
                return Err(Error::DivisionByZero);
            }
        }
        let mut cache: HashMap<(usize, i32), BigRational> = HashMap::new();
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut v = BigRational::from_integer(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = cache
                    .entry((i, e))
                    .or_insert_with(|| rational_pow(&point[i], e))
                    .clone();
                v *= p;
            }
            total += v;
        }
        Ok(total)
    }

    /// Evaluation at an integer point where the result is known to be an
    /// integer; returns `None` when a denominator variable is zero or the value
    /// is not integral.
    pub fn eval_integer(&self, point: &[BigInt]) -> Option<BigInt> {
        let q: Vec<BigRational> = point
            .iter()
            .map(|x| BigRational::from_integer(x.clone()))
            .collect();
        let v = self.eval(&q).ok()?;
        v.is_integer().then(|| v.to_integer())
    }

    /// Re-embeds into `nvars` variables, sending variable `i` to `map[i]`.
    pub fn reindex(&self, nvars: usize, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.nvars);
        let mut p = Self::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0; nvars];
            for (i, &x) in m.0.iter().enumerate() {
                e[map[i]] += x;
            }
            p.add_term(Monomial(e), c.clone());
        }
        p
    }

    /// Sets variable `i` to one.
    pub fn specialize_to_one(&self, vars: &[usize]) -> Self {
        let mut p = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            for &i in vars {
                e[i] = 0;
            }
            p.add_term(Monomial(e), c.clone());
        }
        p
    }

    /// Substitutes polynomials for the variables. All exponents must be
    /// nonnegative unless the image of that variable is a unit monomial.
    pub fn substitute(&self, images: &[LaurentPolynomial]) -> Result<LaurentPolynomial> {
        if images.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: images.len(),
            });
        }
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut cache: HashMap<(usize, i32), LaurentPolynomial> = HashMap::new();
        let mut total = LaurentPolynomial::zero(target);
        for (m, c) in &self.terms {
            let mut v = LaurentPolynomial::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !cache.contains_key(&(i, e)) {
                    let p = if e > 0 {
                        images[i].pow(e as u32)
                    } else {
                        images[i].inverse_monomial()?.pow((-e) as u32)
                    };
                    cache.insert((i, e), p);
                }
                v = &v * &cache[&(i, e)];
            }
            total = &total + &v;
        }
        Ok(total)
    }

    /// Substitutes arbitrary nonzero images for the variables, dividing out
    /// the images of denominator variables exactly.
    pub fn substitute_exact(&self, images: &[LaurentPolynomial]) -> Result<LaurentPolynomial> {
        if self.is_zero() {
            let target = images.first().map(|p| p.nvars).unwrap_or(0);
            return Ok(LaurentPolynomial::zero(target));
        }
        let d = self.denominator_vector()?;
        let shift: Vec<i32> = d.iter().map(|&x| x as i32).collect();
        let num = self.shift(&shift).substitute(images)?;
        let mut den = LaurentPolynomial::one(num.nvars);
        for (i, &e) in d.iter().enumerate() {
            if e > 0 {
                den = &den * &images[i].pow(e);
            }
        }
        num.divide_exact(&den)
    }

    /// Inverse of a monomial with coefficient ±1.
    pub fn inverse_monomial(&self) -> Result<LaurentPolynomial> {
        match self.as_monomial() {
            Some((e, c)) if c.abs().is_one() => Ok(LaurentPolynomial::monomial(
                self.nvars,
                e.iter().map(|x| -x).collect(),
                c.clone(),
            )),
            _ => Err(Error::NonExactDivision),
        }
    }

    /// Human-oriented rendering with the given variable names, e.g.
    /// `x1^2*x2 + 3*x1^-1 - 1`.
    pub fn pretty(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                let name = names.get(i).cloned().unwrap_or_else(|| format!("x{}", i + 1));
                match e {
                    0 => {}
                    1 => factors.push(name),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            let neg = c.is_negative();
            let mag = c.abs();
            let body = if factors.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                factors.join("*")
            } else {
                format!("{}*{}", mag, factors.join("*"))
            };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }

    /// Pretty rendering with default names `x1..xm`.
    pub fn pretty_default(&self) -> String {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("x{i}")).collect();
        self.pretty(&names)
    }

    /// Parses the canonical serialization produced by `Display`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Err(Error::parse(
                "the zero polynomial has no variable count; use parse_with_vars",
            ));
        }
        let mut nvars = None;
        let mut terms = Vec::new();
        for part in s.split(" + ") {
            let (c, e) = parse_term(part)?;
            match nvars {
                None => nvars = Some(e.len()),
                Some(n) if n != e.len() => {
                    return Err(Error::parse(format!("inconsistent term `{part}`")))
                }
                _ => {}
            }
            if c.is_zero() {
                return Err(Error::parse(format!("zero coefficient in `{part}`")));
            }
            terms.push((e, c));
        }
        let nvars = nvars.unwrap_or(0);
        let p = Self::from_terms(nvars, terms.clone())?;
        if p.num_terms() != terms.len() {
            return Err(Error::parse("repeated exponent vector"));
        }
        Ok(p)
    }

    /// Parses a canonical string, checking (or supplying, for `0`) the
    /// variable count.
    pub fn parse_with_vars(s: &str, nvars: usize) -> Result<Self> {
        if s.trim() == "0" {
            return Ok(Self::zero(nvars));
        }
        let p = Self::parse(s)?;
        if p.nvars != nvars {
            return Err(Error::parse(format!(
                "expected {nvars} variables, found {}",
                p.nvars
            )));
        }
        Ok(p)
    }
}

impl LaurentPolynomial {
    /// Parses the human-oriented form written by [`LaurentPolynomial::pretty`],
    /// e.g. `x1^2*x2 - 3*x1^-1 + 1`, over the given variable names.
    pub fn parse_pretty(s: &str, names: &[&str]) -> Result<Self> {
        let nvars = names.len();
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::parse("empty expression"));
        }
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        let mut prev: Option<char> = None;
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && prev.is_some() && prev != Some('^') {
                pieces.push((negative, std::mem::take(&mut current)));
                negative = ch == '-';
            } else if (ch == '+' || ch == '-') && prev.is_none() {
                negative = ch == '-';
            } else {
                current.push(ch);
            }
            prev = Some(ch);
        }
        pieces.push((negative, current));
        let mut acc = Self::zero(nvars);
        for (neg, body) in pieces {
            if body.is_empty() {
                return Err(Error::parse(format!("dangling sign in `{s}`")));
            }
            let mut coeff = BigInt::one();
            let mut exps = vec![0i32; nvars];
            for factor in body.split('*') {
                let (name, e) = match factor.split_once('^') {
                    Some((n, e)) => (
                        n,
                        e.parse::<i32>()
                            .map_err(|_| Error::parse(format!("bad exponent in `{factor}`")))?,
                    ),
                    None => (factor, 1),
                };
                if let Some(i) = names.iter().position(|&v| v == name) {
                    exps[i] += e;
                } else {
                    let c: BigInt = name
                        .parse()
                        .map_err(|_| Error::parse(format!("unknown symbol `{name}`")))?;
                    coeff *= num_traits::pow(c, e.max(0) as usize);
                }
            }
            if neg {
                coeff = -coeff;
            }
            acc = &acc + &Self::monomial(nvars, exps, coeff);
        }
        Ok(acc)
    }
}

fn parse_term(part: &str) -> Result<(BigInt, Vec<i32>)> {
    let (c, rest) = part
        .split_once(" * ")
        .ok_or_else(|| Error::parse(format!("term `{part}` lacks ` * `")))?;
    let c: BigInt = c
        .trim()
        .parse()
        .map_err(|_| Error::parse(format!("bad coefficient `{c}`")))?;
    let mut exps = Vec::new();
    for (idx, f) in rest.split('*').enumerate() {
        let (name, e) = f
            .split_once('^')
            .ok_or_else(|| Error::parse(format!("factor `{f}` lacks `^`")))?;
        if name != format!("x{}", idx + 1) {
            return Err(Error::parse(format!("expected x{} in `{f}`", idx + 1)));
        }
        let e: i32 = e
            .parse()
            .map_err(|_| Error::parse(format!("bad exponent in `{f}`")))?;
        exps.push(e);
    }
    Ok((c, exps))
}

/// `base^e` for a rational base and signed exponent.
pub fn rational_pow(base: &BigRational, e: i32) -> BigRational {
    let mut result = BigRational::one();
    let mut b = if e < 0 { base.recip() } else { base.clone() };
    let mut k = e.unsigned_abs();
    while k > 0 {
        if k & 1 == 1 {
            result *= &b;
        }
        k >>= 1;
        if k > 0 {
            b = &b * &b;
        }
    }
    result
}

impl fmt::Display for LaurentPolynomial {
    /// Canonical serialization: terms from largest to smallest under the
    /// graded lexicographic order, each written `c * x1^e1*...*xm^em`, joined
    /// by ` + `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c} * ")?;
            for (i, e) in m.0.iter().enumerate() {
                if i > 0 {
                    write!(f, "*")?;
                }
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPolynomial({})", self.pretty_default())
    }
}

impl Serialize for LaurentPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for LaurentPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        LaurentPolynomial::parse(&s).map_err(serde::de::Error::custom)
    }
}

impl std::ops::Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        assert_eq!(self.nvars, rhs.nvars, "dimension mismatch");
        let (big, small) = if self.terms.len() >= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        assert_eq!(self.nvars, rhs.nvars, "dimension mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl std::ops::Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl std::ops::Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        assert_eq!(self.nvars, rhs.nvars, "dimension mismatch");
        if self.is_zero() || rhs.is_zero() {
            return LaurentPolynomial::zero(self.nvars);
        }
        // products usually collapse far below len₁·len₂ terms
        let cap = (self.terms.len() * rhs.terms.len()).min(1 << 16);
        let mut acc: HashMap<Vec<i32>, BigInt> = HashMap::with_capacity(cap);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let e: Vec<i32> = m1.0.iter().zip(&m2.0).map(|(a, b)| a + b).collect();
                let v = c1 * c2;
                acc.entry(e)
                    .and_modify(|x| *x += &v)
                    .or_insert(v);
            }
        }
        LaurentPolynomial {
            nvars: self.nvars,
            terms: acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(e, c)| (Monomial(e), c))
                .collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl std::ops::$tr for LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $m(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
                std::ops::$tr::$m(&self, &rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::ops::Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        -&self
    }
}

/// Free-function form of [`LaurentPolynomial::divide_exact`].
pub fn lp_divide_exact(num: &LaurentPolynomial, den: &LaurentPolynomial) -> Result<LaurentPolynomial> {
    num.divide_exact(den)
}

/// Free-function form of [`LaurentPolynomial::denominator_vector`].
pub fn lp_denominator_vector(p: &LaurentPolynomial) -> Result<Vec<u32>> {
    p.denominator_vector()
}

/// Free-function form of [`LaurentPolynomial::eval`].
pub fn lp_eval_rational(p: &LaurentPolynomial, point: &[BigRational]) -> Result<BigRational> {
    p.eval(point)
}

/// Free-function form of [`LaurentPolynomial::is_positive`].
pub fn lp_is_positive(p: &LaurentPolynomial) -> bool {
    p.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> LaurentPolynomial {
        LaurentPolynomial::var(n, i)
    }

    fn one(n: usize) -> LaurentPolynomial {
        LaurentPolynomial::one(n)
    }

    #[test]
    fn distributivity_example() {
        let p = &(&x(2, 1) + &one(2)) * &x(2, 0);
        let q = &(&x(2, 0) * &x(2, 1)) + &x(2, 0);
        assert_eq!(p, q);
    }

    #[test]
    fn additive_inverse_is_zero() {
        let p = &x(3, 0) + &x(3, 2).pow(3);
        assert!((&p + &(-&p)).is_zero());
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        assert!(matches!(
            x(2, 0).try_add(&x(3, 0)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn exact_division_examples() {
        let num = &(&x(2, 0) * &x(2, 1)) + &x(2, 0);
        assert_eq!(num.divide_exact(&x(2, 0)).unwrap(), &x(2, 1) + &one(2));
        let sum = &x(2, 0) + &x(2, 1);
        assert_eq!(sum.divide_exact(&x(2, 0)).unwrap(), &one(2) + &(&x(2, 1) * &x(2, 0).inverse_monomial().unwrap()));
        let two = LaurentPolynomial::constant(2, 2);
        assert_eq!(sum.divide_exact(&two), Err(Error::NonExactDivision));
        let den = &x(2, 0) + &one(2);
        assert_eq!(
            (&den * &den).divide_exact(&den).unwrap(),
            den
        );
        let off = &(&den * &den) + &one(2);
        assert_eq!(off.divide_exact(&den), Err(Error::NonExactDivision));
    }

    #[test]
    fn denominator_vector_and_positivity() {
        let p = LaurentPolynomial::from_terms(
            2,
            vec![(vec![1, -2], BigInt::from(1)), (vec![-1, 0], BigInt::from(3))],
        )
        .unwrap();
        assert_eq!(p.denominator_vector().unwrap(), vec![1, 2]);
        assert!(p.is_positive());
        assert!(!(&x(2, 0) - &x(2, 1)).is_positive());
        assert_eq!(
            LaurentPolynomial::zero(2).denominator_vector(),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn evaluation_rejects_zero_in_denominator() {
        let p = LaurentPolynomial::monomial(2, vec![-1, 0], 1);
        let pt = vec![BigRational::zero(), BigRational::one()];
        assert_eq!(p.eval(&pt), Err(Error::DivisionByZero));
        let pt = vec![BigRational::from_integer(2.into()), BigRational::one()];
        assert_eq!(p.eval(&pt).unwrap(), BigRational::new(1.into(), 2.into()));
    }

    #[test]
    fn canonical_string_round_trip() {
        let p = &(&x(3, 0).pow(2) - &x(3, 2)) + &LaurentPolynomial::monomial(3, vec![0, -1, 2], 7);
        let s = p.to_string();
        assert_eq!(LaurentPolynomial::parse(&s).unwrap(), p);
        assert_eq!(
            (&x(2, 0) + &one(2)).to_string(),
            "1 * x1^1*x2^0 + 1 * x1^0*x2^0"
        );
        assert_eq!((-&x(2, 1)).to_string(), "-1 * x1^0*x2^1");
    }

    #[test]
    fn pretty_printing() {
        let p = &(&x(2, 0) * &x(2, 1)) - &one(2);
        assert_eq!(p.pretty_default(), "x1*x2 - 1");
    }
}
