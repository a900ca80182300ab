//! Extended skew-symmetrizable exchange matrices, matrix mutation, diagrams,
//! skew-symmetrization and the mutation invariants rank, determinant and gcd.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An `m × n` integer matrix whose top `n × n` block is skew-symmetrizable.
/// Rows `n..m` are the frozen rows.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExchangeMatrix {
    m: usize,
    n: usize,
    rows: Vec<Vec<i64>>,
}

impl ExchangeMatrix {
    /// Builds an extended matrix from its rows; the column count is the rank `n`.
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map(|r| r.len()).unwrap_or(0);
        if n == 0 {
            return Err(Error::invalid("matrix must have at least one column"));
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::invalid("rows have different lengths"));
        }
        if m < n {
            return Err(Error::invalid("extended matrix needs at least n rows"));
        }
        let b = ExchangeMatrix { m, n, rows };
        if check_skew_symmetrizable(&b.top()).is_none() {
            return Err(Error::NotSkewSymmetrizable);
        }
        Ok(b)
    }

    /// A square exchange matrix without frozen rows.
    pub fn square(rows: Vec<Vec<i64>>) -> Result<Self> {
        if rows.iter().any(|r| r.len() != rows.len()) {
            return Err(Error::invalid("matrix is not square"));
        }
        Self::new(rows)
    }

    /// Appends frozen rows below a square principal part.
    pub fn with_frozen(principal: &[Vec<i64>], frozen: &[Vec<i64>]) -> Result<Self> {
        let mut rows = principal.to_vec();
        rows.extend(frozen.iter().cloned());
        Self::new(rows)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// The principal `n × n` part.
    pub fn top(&self) -> Vec<Vec<i64>> {
        self.rows[..self.n].to_vec()
    }

    /// The frozen `(m - n) × n` part.
    pub fn bottom(&self) -> Vec<Vec<i64>> {
        self.rows[self.n..].to_vec()
    }

    /// Matrix mutation in direction `k` (zero-based).
    pub fn mutate(&self, k: usize) -> Result<Self> {
        if k >= self.n {
            return Err(Error::IndexOutOfRange {
                index: k + 1,
                max: self.n,
            });
        }
        Ok(ExchangeMatrix {
            m: self.m,
            n: self.n,
            rows: mutate_rows(&self.rows, k)?,
        })
    }

    /// Mutation along a sequence of zero-based directions.
    pub fn mutate_word(&self, word: &[usize]) -> Result<Self> {
        let mut b = self.clone();
        for &k in word {
            b = b.mutate(k)?;
        }
        Ok(b)
    }

    pub fn negated(&self) -> Self {
        ExchangeMatrix {
            m: self.m,
            n: self.n,
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|x| -x).collect())
                .collect(),
        }
    }

    /// Reorders the mutable indices by `perm` (new index `i` is old `perm[i]`)
    /// and the frozen rows by `frozen_perm` (likewise, relative to row `n`).
    pub fn permuted(&self, perm: &[usize], frozen_perm: &[usize]) -> Self {
        let mut rows = Vec::with_capacity(self.m);
        for &pi in perm {
            rows.push(perm.iter().map(|&pj| self.rows[pi][pj]).collect());
        }
        for &fi in frozen_perm {
            rows.push(perm.iter().map(|&pj| self.rows[self.n + fi][pj]).collect());
        }
        ExchangeMatrix {
            m: self.m,
            n: self.n,
            rows,
        }
    }

    /// The matrix with frozen rows removed.
    pub fn principal(&self) -> Self {
        ExchangeMatrix {
            m: self.n,
            n: self.n,
            rows: self.top(),
        }
    }

    /// Text format: first line `m n`, then one row of integers per line.
    pub fn to_text(&self) -> String {
        format_int_matrix(&self.rows, self.n)
    }

    pub fn parse_text(s: &str) -> Result<Self> {
        Self::new(parse_int_matrix(s)?)
    }
}

impl fmt::Debug for ExchangeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExchangeMatrix{:?}", self.rows)
    }
}

/// Matrix mutation of an arbitrary rectangular integer matrix at column `k`,
/// following the rule: negate row and column `k`; `b_ij + b_ik b_kj` when both
/// factors are positive, `b_ij - b_ik b_kj` when both are negative.
pub fn mutate_rows(rows: &[Vec<i64>], k: usize) -> Result<Vec<Vec<i64>>> {
    let mut out = rows.to_vec();
    for (i, row) in rows.iter().enumerate() {
        for (j, &bij) in row.iter().enumerate() {
            out[i][j] = if i == k || j == k {
                bij.checked_neg().ok_or(Error::Overflow)?
            } else {
                let bik = row[k];
                let bkj = rows[k][j];
                if bik > 0 && bkj > 0 {
                    bik.checked_mul(bkj)
                        .and_then(|p| bij.checked_add(p))
                        .ok_or(Error::Overflow)?
                } else if bik < 0 && bkj < 0 {
                    bik.checked_mul(bkj)
                        .and_then(|p| bij.checked_sub(p))
                        .ok_or(Error::Overflow)?
                } else {
                    bij
                }
            };
        }
    }
    Ok(out)
}

/// Free-function form of [`ExchangeMatrix::mutate`].
pub fn mutate_matrix(b: &ExchangeMatrix, k: usize) -> Result<ExchangeMatrix> {
    b.mutate(k)
}

/// Finds a skew-symmetrizing vector `d` (with `d_i b_ij = -d_j b_ji`) for a
/// square matrix, normalized to coprime positive integers on each connected
/// component of the diagram. Returns `None` if none exists.
pub fn check_skew_symmetrizable(b: &[Vec<i64>]) -> Option<Vec<u64>> {
    let n = b.len();
    if b.iter().any(|r| r.len() != n) {
        return None;
    }
    for i in 0..n {
        if b[i][i] != 0 {
            return None;
        }
        for j in 0..n {
            let (x, y) = (b[i][j], b[j][i]);
            if (x == 0) != (y == 0) || (x != 0 && x.signum() == y.signum()) {
                return None;
            }
        }
    }
    let mut d: Vec<Option<BigRational>> = vec![None; n];
    let mut result = vec![0u64; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(BigRational::one());
        let mut component = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            let di = d[i].clone().expect("visited");
            for j in 0..n {
                if b[i][j] == 0 {
                    continue;
                }
                let dj = &di * BigRational::new(BigInt::from(b[i][j].abs()), BigInt::from(b[j][i].abs()));
                match &d[j] {
                    None => {
                        d[j] = Some(dj);
                        component.push(j);
                        queue.push_back(j);
                    }
                    Some(existing) if *existing != dj => return None,
                    Some(_) => {}
                }
            }
        }
        let lcm = component
            .iter()
            .fold(BigInt::one(), |acc, &i| acc.lcm(d[i].as_ref().unwrap().denom()));
        let ints: Vec<BigInt> = component
            .iter()
            .map(|&i| (d[i].as_ref().unwrap() * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        for (&i, v) in component.iter().zip(&ints) {
            result[i] = (v / &g).to_u64()?;
        }
    }
    Some(result)
}

/// The weighted directed graph of a skew-symmetrizable matrix: an edge
/// `i → j` of weight `|b_ij b_ji|` whenever `b_ij > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightedDiagram {
    pub n: usize,
    pub edges: BTreeMap<(usize, usize), u64>,
}

pub fn diagram_of(b: &[Vec<i64>]) -> Result<WeightedDiagram> {
    if check_skew_symmetrizable(b).is_none() {
        return Err(Error::NotSkewSymmetrizable);
    }
    let n = b.len();
    let mut edges = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            if b[i][j] > 0 {
                edges.insert((i, j), (b[i][j] * b[j][i]).unsigned_abs());
            }
        }
    }
    Ok(WeightedDiagram { n, edges })
}

/// An exact real number `sign · √radicand`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignedRadical {
    pub sign: i8,
    pub radicand: u128,
}

impl SignedRadical {
    pub const ZERO: SignedRadical = SignedRadical { sign: 0, radicand: 0 };

    pub fn new(sign: i8, radicand: u128) -> Self {
        if radicand == 0 || sign == 0 {
            Self::ZERO
        } else {
            SignedRadical {
                sign: sign.signum(),
                radicand,
            }
        }
    }

    pub fn from_int(v: i64) -> Self {
        Self::new(v.signum() as i8, (v.unsigned_abs() as u128).pow(2))
    }

    pub fn mul(self, other: Self) -> Self {
        Self::new(self.sign * other.sign, self.radicand * other.radicand)
    }

    pub fn neg(self) -> Self {
        Self::new(-self.sign, self.radicand)
    }

    /// Sum of two radicals, defined when their radicands share a squarefree
    /// part (so the sum is again a single radical).
    pub fn add(self, other: Self) -> Option<Self> {
        if self.sign == 0 {
            return Some(other);
        }
        if other.sign == 0 {
            return Some(self);
        }
        let r = squarefree_part(self.radicand);
        if self.radicand % r != 0 || other.radicand % r != 0 {
            return None;
        }
        let p = exact_sqrt(self.radicand / r)? as i128;
        let q = exact_sqrt(other.radicand / r)? as i128;
        let c = self.sign as i128 * p + other.sign as i128 * q;
        Some(Self::new(c.signum() as i8, (c.unsigned_abs()).pow(2) * r))
    }

    /// The integer value when the radicand is a perfect square.
    pub fn as_integer(self) -> Option<i64> {
        exact_sqrt(self.radicand).map(|s| self.sign as i64 * s as i64)
    }
}

fn exact_sqrt(x: u128) -> Option<u128> {
    let mut r = (x as f64).sqrt() as u128;
    while r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    (r * r == x).then_some(r)
}

fn squarefree_part(mut x: u128) -> u128 {
    let mut out = 1u128;
    let mut p = 2u128;
    while p * p <= x {
        let mut e = 0;
        while x % p == 0 {
            x /= p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= p;
        }
        p += 1;
    }
    out * x
}

/// The skew-symmetrization `S(B)` with `s_ij = sgn(b_ij) √|b_ij b_ji|`.
pub fn skew_symmetrization(b: &[Vec<i64>]) -> Result<Vec<Vec<SignedRadical>>> {
    if check_skew_symmetrizable(b).is_none() {
        return Err(Error::NotSkewSymmetrizable);
    }
    Ok(b.iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, &x)| SignedRadical::new(x.signum() as i8, (x * b[j][i]).unsigned_abs() as u128))
                .collect()
        })
        .collect())
}

/// Matrix mutation applied verbatim to a matrix of radicals.
pub fn mutate_radicals(s: &[Vec<SignedRadical>], k: usize) -> Result<Vec<Vec<SignedRadical>>> {
    let mut out = s.to_vec();
    for i in 0..s.len() {
        for j in 0..s[i].len() {
            out[i][j] = if i == k || j == k {
                s[i][j].neg()
            } else {
                let (a, c) = (s[i][k], s[k][j]);
                if a.sign > 0 && c.sign > 0 {
                    s[i][j].add(a.mul(c)).ok_or(Error::NotSkewSymmetrizable)?
                } else if a.sign < 0 && c.sign < 0 {
                    s[i][j].add(a.mul(c).neg()).ok_or(Error::NotSkewSymmetrizable)?
                } else {
                    s[i][j]
                }
            };
        }
    }
    Ok(out)
}

/// Fraction-free (Bareiss) elimination; returns the rank and, for a square
/// matrix, the determinant.
fn bareiss(rows: &[Vec<i64>]) -> (usize, Option<BigInt>) {
    let r = rows.len();
    let c = rows.first().map(|x| x.len()).unwrap_or(0);
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut prev = BigInt::one();
    let mut rank = 0;
    let mut sign = 1i32;
    let mut col = 0;
    while rank < r && col < c {
        let Some(p) = (rank..r).find(|&i| !a[i][col].is_zero()) else {
            col += 1;
            continue;
        };
        if p != rank {
            a.swap(p, rank);
            sign = -sign;
        }
        for i in rank + 1..r {
            for j in col + 1..c {
                let v = &a[rank][col] * &a[i][j] - &a[i][col] * &a[rank][j];
                a[i][j] = v / &prev;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
        col += 1;
    }
    let det = (r == c).then(|| {
        if rank < r {
            BigInt::zero()
        } else {
            &a[r - 1][c - 1] * sign
        }
    });
    (rank, det)
}

pub fn matrix_rank(rows: &[Vec<i64>]) -> usize {
    bareiss(rows).0
}

/// Determinant of a square integer matrix.
pub fn matrix_det(rows: &[Vec<i64>]) -> Result<BigInt> {
    if rows.iter().any(|r| r.len() != rows.len()) {
        return Err(Error::invalid("determinant needs a square matrix"));
    }
    if rows.is_empty() {
        return Ok(BigInt::one());
    }
    Ok(bareiss(rows).1.expect("square"))
}

/// Gcd of all entries, zero for the zero matrix.
pub fn entries_gcd(rows: &[Vec<i64>]) -> u64 {
    rows.iter()
        .flatten()
        .fold(0u64, |g, &x| g.gcd(&x.unsigned_abs()))
}

pub fn format_int_matrix(rows: &[Vec<i64>], cols: usize) -> String {
    let mut s = format!("{} {}\n", rows.len(), cols);
    for r in rows {
        let line: Vec<String> = r.iter().map(|x| x.to_string()).collect();
        s.push_str(&line.join(" "));
        s.push('\n');
    }
    s
}

/// Parses the `m n` header followed by `m` rows of `n` integers.
pub fn parse_int_matrix(s: &str) -> Result<Vec<Vec<i64>>> {
    let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| Error::parse("empty matrix text"))?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::parse(format!("bad header `{header}`"))))
        .collect::<Result<_>>()?;
    let [m, n] = dims[..] else {
        return Err(Error::parse(format!("header must be `m n`, got `{header}`")));
    };
    let mut rows = Vec::with_capacity(m);
    for _ in 0..m {
        let line = lines.next().ok_or_else(|| Error::parse("too few rows"))?;
        let row: Vec<i64> = line
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::parse(format!("bad entry `{t}`"))))
            .collect::<Result<_>>()?;
        if row.len() != n {
            return Err(Error::parse(format!("row `{line}` does not have {n} entries")));
        }
        rows.push(row);
    }
    if lines.next().is_some() {
        return Err(Error::parse("trailing rows after matrix"));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn markov() -> Vec<Vec<i64>> {
        vec![vec![0, 2, -2], vec![-2, 0, 2], vec![2, -2, 0]]
    }

    #[test]
    fn skew_symmetrizer_examples() {
        assert_eq!(check_skew_symmetrizable(&[vec![0, 2], vec![-1, 0]]), Some(vec![1, 2]));
        assert_eq!(check_skew_symmetrizable(&markov()), Some(vec![1, 1, 1]));
        assert_eq!(check_skew_symmetrizable(&[vec![0, 1], vec![1, 0]]), None);
        assert_eq!(
            check_skew_symmetrizable(&[vec![0, 1, 0], vec![-2, 0, 0], vec![0, 0, 0]]),
            Some(vec![2, 1, 1])
        );
    }

    #[test]
    fn rank_two_mutation_negates() {
        assert_eq!(
            ExchangeMatrix::square(vec![vec![0, 3], vec![5, 0]]).unwrap_err(),
            Error::NotSkewSymmetrizable
        );
        let b = ExchangeMatrix::square(vec![vec![0, 3], vec![-5, 0]]).unwrap();
        assert_eq!(b.mutate(0).unwrap(), b.negated());
        assert_eq!(b.mutate(1).unwrap(), b.negated());
    }

    #[test]
    fn diagram_examples() {
        let g = diagram_of(&[vec![0, 2, -2], vec![-1, 0, 2], vec![1, -2, 0]]).unwrap();
        let expect: BTreeMap<_, _> = [((0, 1), 2), ((1, 2), 4), ((2, 0), 2)].into_iter().collect();
        assert_eq!(g.edges, expect);
        assert_eq!(
            diagram_of(&[vec![0, 1], vec![-4, 0]]).unwrap(),
            diagram_of(&[vec![0, 2], vec![-2, 0]]).unwrap()
        );
        assert!(diagram_of(&[vec![0, 0], vec![0, 0]]).unwrap().edges.is_empty());
    }

    #[test]
    fn skew_symmetrization_example() {
        let s = skew_symmetrization(&[vec![0, 1], vec![-4, 0]]).unwrap();
        let ints: Vec<Vec<i64>> = s
            .iter()
            .map(|r| r.iter().map(|x| x.as_integer().unwrap()).collect())
            .collect();
        assert_eq!(ints, vec![vec![0, 2], vec![-2, 0]]);
    }

    #[test]
    fn invariants_of_markov_matrix() {
        assert_eq!(matrix_det(&markov()).unwrap(), BigInt::zero());
        assert_eq!(matrix_rank(&markov()), 2);
        assert_eq!(entries_gcd(&markov()), 2);
        let z = vec![vec![0; 3]; 3];
        assert_eq!(matrix_rank(&z), 0);
        assert_eq!(entries_gcd(&z), 0);
        assert_eq!(
            matrix_det(&[vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]).unwrap(),
            BigInt::from(18)
        );
    }

    #[test]
    fn text_round_trip() {
        let b = ExchangeMatrix::new(vec![vec![0, 1], vec![-1, 0], vec![1, 1]]).unwrap();
        assert_eq!(ExchangeMatrix::parse_text(&b.to_text()).unwrap(), b);
        assert!(parse_int_matrix("2 2\n0 1\n").is_err());
    }

    #[test]
    fn mutation_index_checked() {
        let b = ExchangeMatrix::square(markov()).unwrap();
        assert!(matches!(b.mutate(3), Err(Error::IndexOutOfRange { .. })));
    }
}
