//! Total positivity: exact minors, Chevalley generators, cluster-derived TP
//! tests and symbolic determinantal identities.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::models::double_wiring::{DoubleWiringDiagram, MinorLabel};
use crate::models::triangulation::{sides, Triangulation};
use crate::models::wiring::WiringDiagram;
use crate::poly::LaurentPolynomial;
use crate::search::{explore_seeds, ExplorationLimits, MutationClassGraph};
use crate::seed::Seed;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: Vec<Vec<BigRational>>,
}

impl RationalMatrix {
    pub fn new(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let c = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || c == 0 {
            return Err(Error::invalid("matrix dimensions must be positive"));
        }
        if let Some(r) = rows.iter().find(|r| r.len() != c) {
            return Err(Error::DimensionMismatch { expected: c, found: r.len() });
        }
        Ok(RationalMatrix { rows })
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect())
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
            .collect();
        RationalMatrix { rows }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows[0].len()
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.rows[i][j] = v;
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.ncols() != other.nrows() {
            return Err(Error::DimensionMismatch { expected: self.ncols(), found: other.nrows() });
        }
        let rows = (0..self.nrows())
            .map(|i| {
                (0..other.ncols())
                    .map(|j| (0..self.ncols()).fold(BigRational::zero(), |acc, k| acc + &self.rows[i][k] * &other.rows[k][j]))
                    .collect()
            })
            .collect();
        Ok(RationalMatrix { rows })
    }

    pub fn transpose(&self) -> Self {
        let rows = (0..self.ncols()).map(|j| (0..self.nrows()).map(|i| self.rows[i][j].clone()).collect()).collect();
        RationalMatrix { rows }
    }

    /// `r c` header, then `r` rows of entries written `p` or `p/q`.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.nrows(), self.ncols());
        for r in &self.rows {
            let line: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn parse_text(s: &str) -> Result<Self> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::parse("empty matrix text"))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::parse(format!("bad header `{header}`"))))
            .collect::<Result<_>>()?;
        let [r, c] = dims[..] else {
            return Err(Error::parse(format!("header must be `r c`, got `{header}`")));
        };
        let mut rows = Vec::with_capacity(r);
        for _ in 0..r {
            let line = lines.next().ok_or_else(|| Error::parse("too few rows"))?;
            let row: Vec<BigRational> = line
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| Error::parse(format!("bad entry `{t}`"))))
                .collect::<Result<_>>()?;
            if row.len() != c {
                return Err(Error::parse(format!("row `{line}` does not have {c} entries")));
            }
            rows.push(row);
        }
        if lines.next().is_some() {
            return Err(Error::parse("trailing rows after matrix"));
        }
        Self::new(rows)
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn det_rational(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let n = a.len();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let pivot = a[c][c].clone();
        det *= &pivot;
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &pivot;
            for k in c..n {
                let v = &f * &a[c][k];
                a[r][k] -= v;
            }
        }
    }
    det
}

fn check_shape(z: &RationalMatrix, r: usize, c: usize) -> Result<()> {
    if z.nrows() != r {
        return Err(Error::DimensionMismatch { expected: r, found: z.nrows() });
    }
    if z.ncols() != c {
        return Err(Error::DimensionMismatch { expected: c, found: z.ncols() });
    }
    Ok(())
}

fn check_set(s: &[usize], bound: usize) -> Result<()> {
    if s.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid("index sets must be strictly increasing"));
    }
    if let Some(&x) = s.iter().find(|&&x| x >= bound) {
        return Err(Error::IndexOutOfRange { index: x + 1, max: bound });
    }
    Ok(())
}

/// `Δ_{I,J}(z)` for increasing zero-based index sets; the empty minor is 1.
pub fn minor(z: &RationalMatrix, rows: &[usize], cols: &[usize]) -> Result<BigRational> {
    if rows.len() != cols.len() {
        return Err(Error::invalid("a minor needs as many rows as columns"));
    }
    check_set(rows, z.nrows())?;
    check_set(cols, z.ncols())?;
    Ok(det_rational(rows.iter().map(|&i| cols.iter().map(|&j| z.rows[i][j].clone()).collect()).collect()))
}

/// `P_J(z)`: the minor in rows `1..|J|` and columns `J`.
pub fn flag_minor(z: &RationalMatrix, cols: &[usize]) -> Result<BigRational> {
    if cols.is_empty() || cols.len() >= z.ncols() || cols.len() > z.nrows() {
        return Err(Error::invalid("flag minors need a proper nonempty column set"));
    }
    let rows: Vec<usize> = (0..cols.len()).collect();
    minor(z, &rows, cols)
}

/// `P_ij(z) = z_{1i} z_{2j} − z_{1j} z_{2i}` for a `2 × m` matrix.
pub fn plucker(z: &RationalMatrix, i: usize, j: usize) -> Result<BigRational> {
    check_shape(z, 2, z.ncols())?;
    if i >= z.ncols() || j >= z.ncols() {
        return Err(Error::IndexOutOfRange { index: i.max(j) + 1, max: z.ncols() });
    }
    Ok(&z.rows[0][i] * &z.rows[1][j] - &z.rows[0][j] * &z.rows[1][i])
}

/// A Chevalley generator `x_i(t)`, `y_i(t)` or `z_i(t)` with zero-based `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    X(usize),
    Y(usize),
    Z(usize),
}

impl Generator {
    pub fn matrix(self, n: usize, t: &BigRational) -> Result<RationalMatrix> {
        let (Generator::X(i) | Generator::Y(i) | Generator::Z(i)) = self;
        if i + 1 >= n {
            return Err(Error::IndexOutOfRange { index: i + 1, max: n - 1 });
        }
        let mut m = RationalMatrix::identity(n);
        match self {
            Generator::X(_) => m.set(i, i + 1, t.clone()),
            Generator::Y(_) => m.set(i + 1, i, t.clone()),
            Generator::Z(_) => {
                m.set(i, i, t.clone());
                m.set(i + 1, i + 1, t.recip());
            }
        }
        Ok(m)
    }
}

/// The product of the generators of `word` with parameters `params`.
pub fn chevalley_tp_matrix(n: usize, params: &[BigRational], word: &[Generator]) -> Result<RationalMatrix> {
    if params.len() != word.len() {
        return Err(Error::DimensionMismatch { expected: word.len(), found: params.len() });
    }
    if params.iter().any(|t| !t.is_positive()) {
        return Err(Error::NonPositiveInput);
    }
    let mut out = RationalMatrix::identity(n);
    for (g, t) in word.iter().zip(params) {
        out = out.mul(&g.matrix(n, t)?)?;
    }
    Ok(out)
}

/// `y`-factors along a reduced word for the longest permutation, then all
/// `z`-factors, then `x`-factors along the same reduced word. Positive
/// parameters give a totally positive matrix.
pub fn full_word(n: usize) -> Vec<Generator> {
    let longest: Vec<usize> = (0..n.saturating_sub(1)).flat_map(|k| (0..=k).rev()).collect();
    let mut w: Vec<Generator> = longest.iter().map(|&i| Generator::Y(i)).collect();
    w.extend((0..n.saturating_sub(1)).map(Generator::Z));
    w.extend(longest.iter().map(|&i| Generator::X(i)));
    w
}

pub fn random_positive_rational<R: Rng>(rng: &mut R) -> BigRational {
    BigRational::new(rng.gen_range(1..=9).into(), rng.gen_range(1..=9).into())
}

pub fn random_tp_matrix<R: Rng>(n: usize, rng: &mut R) -> RationalMatrix {
    let w = full_word(n);
    let params: Vec<BigRational> = w.iter().map(|_| random_positive_rational(rng)).collect();
    chevalley_tp_matrix(n, &params, &w).expect("positive parameters")
}

/// A `2 × m` matrix with all Plücker coordinates positive: columns
/// `c_i (1, t_i)` with `t_1 < … < t_m` and `c_i > 0`.
pub fn random_positive_2xm<R: Rng>(m: usize, rng: &mut R) -> RationalMatrix {
    let mut t = BigRational::zero();
    let mut top = Vec::with_capacity(m);
    let mut bottom = Vec::with_capacity(m);
    for _ in 0..m {
        t += random_positive_rational(rng);
        let c = random_positive_rational(rng);
        bottom.push(&c * &t);
        top.push(c);
    }
    RationalMatrix { rows: vec![top, bottom] }
}

/// Every minor, or every flag minor, of `z` is positive.
pub fn all_minors_positive(z: &RationalMatrix) -> bool {
    let (r, c) = (z.nrows(), z.ncols());
    (1..=r.min(c)).all(|k| {
        let rs = subsets(r, k);
        let cs = subsets(c, k);
        rs.iter().all(|i| cs.iter().all(|j| minor(z, i, j).unwrap().is_positive()))
    })
}

pub fn all_flag_minors_positive(z: &RationalMatrix) -> bool {
    let n = z.ncols();
    (1..n.min(z.nrows() + 1)).all(|k| subsets(n, k).iter().all(|j| flag_minor(z, j).unwrap().is_positive()))
}

/// All Plücker coordinates of a `2 × m` matrix are positive.
pub fn all_pluckers_positive(z: &RationalMatrix) -> bool {
    subsets(z.ncols(), 2).iter().all(|s| plucker(z, s[0], s[1]).is_ok_and(|p| p.is_positive()))
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// The `2m − 3` Plücker coordinates of the diagonals and sides of `t`.
pub fn triangulation_test_minors(t: &Triangulation) -> Vec<MinorLabel> {
    t.diagonals()
        .iter()
        .chain(sides(t.m()).iter())
        .map(|&(i, j)| (vec![0, 1], vec![i, j]))
        .collect()
}

/// The `(n−1)(n+2)/2` chamber minors of a wiring diagram.
pub fn wiring_test_minors(d: &WiringDiagram) -> Vec<MinorLabel> {
    d.chambers().into_iter().map(|c| ((0..c.label.len()).collect(), c.label)).collect()
}

/// The `n²` chamber minors of a double wiring diagram.
pub fn double_wiring_test_minors(d: &DoubleWiringDiagram) -> Vec<MinorLabel> {
    d.chambers().into_iter().map(|c| c.label).collect()
}

/// The `n²` solid minors `Δ_{I,J}` with `1 ∈ I ∪ J`.
pub fn solid_test_minors(n: usize) -> Vec<MinorLabel> {
    let mut out = Vec::new();
    for k in 1..=n {
        for b in 0..=n - k {
            out.push(((0..k).collect(), (b..b + k).collect()));
        }
        for a in 1..=n - k {
            out.push(((a..a + k).collect(), (0..k).collect()));
        }
    }
    out
}

pub fn minors_positive(z: &RationalMatrix, minors: &[MinorLabel]) -> Result<bool> {
    for (i, j) in minors {
        if !minor(z, i, j)?.is_positive() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn tp_test_triangulation(z: &RationalMatrix, t: &Triangulation) -> Result<bool> {
    check_shape(z, 2, t.m())?;
    minors_positive(z, &triangulation_test_minors(t))
}

pub fn tp_test_wiring(z: &RationalMatrix, d: &WiringDiagram) -> Result<bool> {
    check_shape(z, d.n(), d.n())?;
    minors_positive(z, &wiring_test_minors(d))
}

pub fn tp_test_double_wiring(z: &RationalMatrix, d: &DoubleWiringDiagram) -> Result<bool> {
    check_shape(z, d.n(), d.n())?;
    minors_positive(z, &double_wiring_test_minors(d))
}

pub fn tp_test_solid(z: &RationalMatrix) -> Result<bool> {
    check_shape(z, z.nrows(), z.nrows())?;
    minors_positive(z, &solid_test_minors(z.nrows()))
}

/// `Δ_{A,B}` with zero-based increasing sets; `Δ_{∅,∅} = 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MinorSymbol {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl MinorSymbol {
    pub fn new(rows: Vec<usize>, cols: Vec<usize>) -> Result<Self> {
        if rows.len() != cols.len() {
            return Err(Error::invalid("a minor needs as many rows as columns"));
        }
        check_set(&rows, usize::MAX)?;
        check_set(&cols, usize::MAX)?;
        Ok(MinorSymbol { rows, cols })
    }

    /// The flag minor `P_B`.
    pub fn flag(cols: Vec<usize>) -> Result<Self> {
        Self::new((0..cols.len()).collect(), cols)
    }

    pub fn is_flag(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, &r)| i == r)
    }
}

impl fmt::Display for MinorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = |v: &[usize]| {
            if v.is_empty() {
                "∅".to_string()
            } else {
                v.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join("")
            }
        };
        write!(f, "Δ{},{}", s(&self.rows), s(&self.cols))
    }
}

/// `Σ c · Π Δ = 0`, every term with the same number of factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorIdentity {
    pub terms: Vec<(BigInt, Vec<MinorSymbol>)>,
}

impl MinorIdentity {
    pub fn new(terms: Vec<(BigInt, Vec<MinorSymbol>)>) -> Result<Self> {
        let Some(first) = terms.first() else {
            return Err(Error::invalid("an identity needs at least one term"));
        };
        let k = first.1.len();
        if terms.iter().any(|t| t.1.len() != k) {
            return Err(Error::invalid("every term must have the same number of determinants"));
        }
        Ok(MinorIdentity { terms })
    }

    fn symbols(&self) -> impl Iterator<Item = &MinorSymbol> {
        self.terms.iter().flat_map(|t| t.1.iter())
    }

    /// Smallest square generic matrix the identity lives on.
    pub fn size(&self) -> usize {
        self.symbols().flat_map(|s| s.rows.iter().chain(&s.cols)).map(|&x| x + 1).max().unwrap_or(0)
    }
}

impl fmt::Display for MinorIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (c, syms)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if i > 0 || c.is_negative() {
                write!(f, "{}{sign} ", if i > 0 { " " } else { "" })?;
            }
            if !c.abs().is_one() {
                write!(f, "{} ", c.abs())?;
            }
            let body: Vec<String> = syms.iter().map(ToString::to_string).collect();
            write!(f, "{}", body.join("·"))?;
        }
        write!(f, " = 0")
    }
}

/// Entry `z_{ij}` of the generic `n × n` matrix is variable `i n + j`.
pub fn generic_entry(n: usize, i: usize, j: usize) -> LaurentPolynomial {
    LaurentPolynomial::var(n * n, i * n + j)
}

/// The minor `Δ_{I,J}` of the generic `n × n` matrix as a polynomial.
pub fn generic_minor(n: usize, rows: &[usize], cols: &[usize]) -> LaurentPolynomial {
    fn go(
        n: usize,
        rows: &[usize],
        cols: &[usize],
        used: u64,
        memo: &mut HashMap<u64, LaurentPolynomial>,
    ) -> LaurentPolynomial {
        let k = used.count_ones() as usize;
        if k == rows.len() {
            return LaurentPolynomial::one(n * n);
        }
        if let Some(p) = memo.get(&used) {
            return p.clone();
        }
        let mut acc = LaurentPolynomial::zero(n * n);
        let mut sign = true;
        for (c, &col) in cols.iter().enumerate() {
            if used >> c & 1 == 1 {
                continue;
            }
            let rest = go(n, rows, cols, used | 1 << c, memo);
            let term = &generic_entry(n, rows[k], col) * &rest;
            acc = if sign { &acc + &term } else { &acc - &term };
            sign = !sign;
        }
        memo.insert(used, acc.clone());
        acc
    }
    go(n, rows, cols, 0, &mut HashMap::new())
}

/// Checks the identity as a polynomial identity on the generic matrix of
/// size `max(size, id.size())`.
pub fn verify_identity(id: &MinorIdentity, size: usize) -> bool {
    let n = size.max(id.size());
    let mut cache: HashMap<&MinorSymbol, LaurentPolynomial> = HashMap::new();
    let mut total = LaurentPolynomial::zero(n * n);
    for (c, syms) in &id.terms {
        let mut prod = LaurentPolynomial::constant(n * n, c.clone());
        for s in syms {
            let p = cache.entry(s).or_insert_with(|| generic_minor(n, &s.rows, &s.cols));
            prod = &prod * p;
        }
        total = &total + &prod;
    }
    total.is_zero()
}

fn union(a: &[usize], b: &[usize]) -> Vec<usize> {
    let s: BTreeSet<usize> = a.iter().chain(b).copied().collect();
    s.into_iter().collect()
}

/// Replaces each `Δ_{A,B}` by `Δ_{A∪R,B∪C}`.
pub fn muir_extend(id: &MinorIdentity, r: &[usize], c: &[usize]) -> Result<MinorIdentity> {
    if r.len() != c.len() {
        return Err(Error::invalid("R and C must have the same size"));
    }
    if id.symbols().any(|s| s.rows.iter().any(|x| r.contains(x)) || s.cols.iter().any(|x| c.contains(x))) {
        return Err(Error::invalid("R and C must avoid every row and column set"));
    }
    let terms = id
        .terms
        .iter()
        .map(|(k, syms)| {
            let syms = syms.iter().map(|s| MinorSymbol { rows: union(&s.rows, r), cols: union(&s.cols, c) }).collect();
            (k.clone(), syms)
        })
        .collect();
    MinorIdentity::new(terms)
}

/// Replaces each flag minor `P_B` by `P_{B∪C}`.
pub fn muir_flag_extend(id: &MinorIdentity, c: &[usize]) -> Result<MinorIdentity> {
    if id.symbols().any(|s| !s.is_flag()) {
        return Err(Error::invalid("the identity must involve flag minors only"));
    }
    if id.symbols().any(|s| s.cols.iter().any(|x| c.contains(x))) {
        return Err(Error::invalid("C must avoid every column set"));
    }
    let terms = id
        .terms
        .iter()
        .map(|(k, syms)| {
            let syms = syms
                .iter()
                .map(|s| MinorSymbol::flag(union(&s.cols, c)))
                .collect::<Result<Vec<_>>>()?;
            Ok((k.clone(), syms))
        })
        .collect::<Result<Vec<_>>>()?;
    MinorIdentity::new(terms)
}

fn term(c: i64, syms: &[(&[usize], &[usize])]) -> (BigInt, Vec<MinorSymbol>) {
    (c.into(), syms.iter().map(|(r, c)| MinorSymbol { rows: r.to_vec(), cols: c.to_vec() }).collect())
}

/// `ad = Δ + bc` for a 2 × 2 matrix, with the empty minor padding `Δ`.
pub fn two_by_two_identity() -> MinorIdentity {
    MinorIdentity::new(vec![
        term(1, &[(&[0], &[0]), (&[1], &[1])]),
        term(-1, &[(&[0, 1], &[0, 1]), (&[], &[])]),
        term(-1, &[(&[0], &[1]), (&[1], &[0])]),
    ])
    .expect("balanced")
}

/// `Δ_{13,13}Δ_{23,23} = Δ_{123,123}Δ_{3,3} + Δ_{13,23}Δ_{23,13}`.
pub fn lewis_carroll_identity() -> MinorIdentity {
    muir_extend(&two_by_two_identity(), &[2], &[2]).expect("disjoint")
}

/// `P_{ik}P_{jl} = P_{ij}P_{kl} + P_{il}P_{jk}` for `i < j < k < l`.
pub fn grassmann_plucker_identity(i: usize, j: usize, k: usize, l: usize) -> Result<MinorIdentity> {
    if !(i < j && j < k && k < l) {
        return Err(Error::invalid("need i < j < k < l"));
    }
    let r: &[usize] = &[0, 1];
    MinorIdentity::new(vec![
        term(1, &[(r, &[i, k]), (r, &[j, l])]),
        term(-1, &[(r, &[i, j]), (r, &[k, l])]),
        term(-1, &[(r, &[i, l]), (r, &[j, k])]),
    ])
}

/// `P_q P_{pr} = P_p P_{qr} + P_{pq} P_r` for `p < q < r`.
pub fn flag_three_term(p: usize, q: usize, r: usize) -> Result<MinorIdentity> {
    if !(p < q && q < r) {
        return Err(Error::invalid("need p < q < r"));
    }
    let (one, two): (&[usize], &[usize]) = (&[0], &[0, 1]);
    MinorIdentity::new(vec![
        term(1, &[(one, &[q]), (two, &[p, r])]),
        term(-1, &[(one, &[p]), (two, &[q, r])]),
        term(-1, &[(two, &[p, q]), (one, &[r])]),
    ])
}

/// `YZ = AC + BD` at a braid move: `P_{Sq}P_{Spr} = P_{Sp}P_{Sqr} + P_{Spq}P_{Sr}`.
pub fn braid_identity(p: usize, q: usize, r: usize, s: &[usize]) -> Result<MinorIdentity> {
    muir_flag_extend(&flag_three_term(p, q, r)?, s)
}

/// Splits the labels exchanged by a braid move into `(p, q, r, S)` with the
/// shorter label `S ∪ {q}` and the longer one `S ∪ {p, r}`.
pub fn braid_move_data(removed: &[usize], added: &[usize]) -> Result<(usize, usize, usize, Vec<usize>)> {
    let (small, big) = if removed.len() < added.len() { (removed, added) } else { (added, removed) };
    if big.len() != small.len() + 1 {
        return Err(Error::invalid("labels do not come from a braid move"));
    }
    let s: Vec<usize> = small.iter().filter(|x| big.contains(x)).copied().collect();
    let q: Vec<usize> = small.iter().filter(|x| !s.contains(x)).copied().collect();
    let pr: Vec<usize> = big.iter().filter(|x| !s.contains(x)).copied().collect();
    match (&q[..], &pr[..]) {
        ([q], [p, r]) if p < q && q < r => Ok((*p, *q, *r, s)),
        _ => Err(Error::invalid("labels do not come from a braid move")),
    }
}

/// `K = z₃₃Δ₁₂,₁₂ − det z` and `L = z₁₁Δ₂₃,₂₃ − det z` on the generic 3 × 3 matrix.
pub fn kl_functions() -> (LaurentPolynomial, LaurentPolynomial) {
    let det = generic_minor(3, &[0, 1, 2], &[0, 1, 2]);
    let k = &(&generic_entry(3, 2, 2) * &generic_minor(3, &[0, 1], &[0, 1])) - &det;
    let l = &(&generic_entry(3, 0, 0) * &generic_minor(3, &[1, 2], &[1, 2])) - &det;
    (k, l)
}

/// `Δ₂₃,₂₃ K = Δ₁₂,₂₃ Δ₂₃,₁₂ z₃₃ + det(z) z₂₃ z₃₂` as a polynomial identity.
pub fn verify_new_exchange() -> bool {
    let m = |r: &[usize], c: &[usize]| generic_minor(3, r, c);
    let z = |i, j| generic_entry(3, i, j);
    let (k, _) = kl_functions();
    let lhs = &m(&[1, 2], &[1, 2]) * &k;
    let rhs = &(&(&m(&[0, 1], &[1, 2]) * &m(&[1, 2], &[0, 1])) * &z(2, 2))
        + &(&(&m(&[0, 1, 2], &[0, 1, 2]) * &z(1, 2)) * &z(2, 1));
    lhs == rhs
}

/// The exchange graph of the seed of a double wiring diagram, with every
/// cluster variable rewritten as a polynomial in the matrix entries.
pub struct DoubleWiringAlgebra {
    pub graph: MutationClassGraph,
    pub variables: Vec<LaurentPolynomial>,
}

pub fn double_wiring_algebra(d: &DoubleWiringDiagram, limits: ExplorationLimits) -> Result<DoubleWiringAlgebra> {
    let n = d.n();
    let chambers = d.vertex_chambers();
    let images: Vec<LaurentPolynomial> = chambers.iter().map(|c| generic_minor(n, &c.label.0, &c.label.1)).collect();
    let seed = Seed::initial(d.quiver().to_matrix());
    let ex = explore_seeds(&seed, limits)?;
    let mut seen = std::collections::HashSet::new();
    let mut variables = Vec::new();
    for s in &ex.states {
        for x in s.cluster() {
            if seen.insert(x.clone()) {
                variables.push(x.substitute_exact(&images)?);
            }
        }
    }
    Ok(DoubleWiringAlgebra { graph: ex.graph, variables })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn two_by_two_minors() {
        let z = RationalMatrix::from_integers(&[vec![2, 3], vec![5, 7]]).unwrap();
        let d = minor(&z, &[0, 1], &[0, 1]).unwrap();
        assert_eq!(d, ratio(-1, 1));
        // ad = Δ + bc
        assert_eq!(ratio(14, 1), d + ratio(15, 1));
        assert!(minor(&z, &[0], &[0, 1]).is_err());
        assert!(minor(&z, &[1, 0], &[0, 1]).is_err());
    }

    #[test]
    fn unipotent_three_term() {
        let (a, b, c) = (ratio(2, 1), ratio(5, 1), ratio(3, 1));
        let z = RationalMatrix::new(vec![
            vec![ratio(1, 1), a.clone(), b.clone()],
            vec![ratio(0, 1), ratio(1, 1), c.clone()],
            vec![ratio(0, 1), ratio(0, 1), ratio(1, 1)],
        ])
        .unwrap();
        let p = flag_minor(&z, &[1, 2]).unwrap();
        assert_eq!(&a * &c, p + b);
    }

    #[test]
    fn generators() {
        let t = ratio(3, 2);
        let x = Generator::X(0).matrix(2, &t).unwrap();
        assert_eq!(x, RationalMatrix::new(vec![vec![ratio(1, 1), t.clone()], vec![ratio(0, 1), ratio(1, 1)]]).unwrap());
        let z = Generator::Z(0).matrix(2, &t).unwrap();
        assert_eq!(z.get(1, 1), &ratio(2, 3));
        assert!(chevalley_tp_matrix(2, &[ratio(-1, 1)], &[Generator::X(0)]).is_err());
    }

    #[test]
    fn solid_minor_counts() {
        for n in 1..=5 {
            let s = solid_test_minors(n);
            assert_eq!(s.len(), n * n);
            assert_eq!(s.iter().collect::<BTreeSet<_>>().len(), n * n);
        }
        let z = RationalMatrix::from_integers(&[vec![1, 1], vec![1, 2]]).unwrap();
        assert!(tp_test_solid(&z).unwrap());
        let id = RationalMatrix::identity(3);
        for (i, j) in solid_test_minors(3) {
            let v = minor(&id, &i, &j).unwrap();
            assert!(v.is_zero() || v.is_one());
        }
    }

    #[test]
    fn identities() {
        assert!(verify_identity(&two_by_two_identity(), 2));
        let lc = lewis_carroll_identity();
        assert_eq!(lc.size(), 3);
        assert!(verify_identity(&lc, 3));
        assert!(verify_identity(&grassmann_plucker_identity(0, 1, 2, 3).unwrap(), 4));
        assert!(verify_identity(&flag_three_term(0, 1, 2).unwrap(), 3));
        let broken = MinorIdentity::new(vec![term(1, &[(&[0], &[0])]), term(-1, &[(&[0], &[1])])]).unwrap();
        assert!(!verify_identity(&broken, 2));
        assert!(muir_extend(&two_by_two_identity(), &[1], &[2]).is_err());
        assert!(MinorIdentity::new(vec![term(1, &[(&[0], &[0])]), term(1, &[])]).is_err());
    }

    #[test]
    fn k_and_l() {
        let (k, _) = kl_functions();
        let one = vec![ratio(1, 1), ratio(0, 1), ratio(0, 1), ratio(0, 1), ratio(1, 1), ratio(0, 1), ratio(0, 1), ratio(0, 1), ratio(1, 1)];
        assert!(k.eval(&one).unwrap().is_zero());
        assert!(verify_new_exchange());
    }
}
