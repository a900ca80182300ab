//! Labeled seeds of geometric type, seed mutation through exchange relations,
//! the coefficient-tuple form and Laurent phenomenon checks.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::ExchangeMatrix;
use crate::poly::LaurentPolynomial;
use crate::tropical::TropicalMonomial;

/// A sequence of mutable directions (zero-based) with no immediate repeats.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MutationWord(Vec<usize>);

impl MutationWord {
    /// Builds a word, cancelling immediate repeats since mutations are
    /// involutions.
    pub fn new(letters: impl IntoIterator<Item = usize>) -> Self {
        let mut w = MutationWord::default();
        for k in letters {
            w.push(k);
        }
        w
    }

    /// Builds a word from one-based directions.
    pub fn from_one_based(letters: &[usize]) -> Result<Self> {
        if letters.contains(&0) {
            return Err(Error::IndexOutOfRange { index: 0, max: 0 });
        }
        Ok(Self::new(letters.iter().map(|k| k - 1)))
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.0.iter().map(|k| k + 1).collect()
    }

    pub fn push(&mut self, k: usize) {
        if self.0.last() == Some(&k) {
            self.0.pop();
        } else {
            self.0.push(k);
        }
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The alternating word `k0, k1, k0, k1, …` of the given length.
    pub fn alternating(k0: usize, k1: usize, len: usize) -> Self {
        Self::new((0..len).map(|t| if t % 2 == 0 { k0 } else { k1 }))
    }

    /// The cyclic word `0, 1, …, n-1, 0, 1, …` of the given length.
    pub fn cyclic(n: usize, len: usize) -> Self {
        Self::new((0..len).map(|t| t % n))
    }
}

/// A labeled seed: `n` cluster variables expanded as Laurent polynomials in
/// the `m` initial variables, the frozen variables being `x_{n+1}, …, x_m`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Seed {
    matrix: ExchangeMatrix,
    cluster: Vec<LaurentPolynomial>,
    word: MutationWord,
}

impl Seed {
    pub fn initial(matrix: ExchangeMatrix) -> Self {
        let m = matrix.m();
        let cluster = (0..matrix.n()).map(|i| LaurentPolynomial::var(m, i)).collect();
        Seed {
            matrix,
            cluster,
            word: MutationWord::default(),
        }
    }

    /// Assembles a seed from parts, checking dimensions.
    pub fn from_parts(
        matrix: ExchangeMatrix,
        cluster: Vec<LaurentPolynomial>,
        word: MutationWord,
    ) -> Result<Self> {
        if cluster.len() != matrix.n() {
            return Err(Error::DimensionMismatch {
                expected: matrix.n(),
                found: cluster.len(),
            });
        }
        for x in &cluster {
            if x.num_vars() != matrix.m() {
                return Err(Error::DimensionMismatch {
                    expected: matrix.m(),
                    found: x.num_vars(),
                });
            }
            if x.is_zero() {
                return Err(Error::ZeroPolynomial);
            }
        }
        if word.letters().iter().any(|&k| k >= matrix.n()) {
            return Err(Error::invalid("mutation word leaves the mutable range"));
        }
        Ok(Seed {
            matrix,
            cluster,
            word,
        })
    }

    pub fn matrix(&self) -> &ExchangeMatrix {
        &self.matrix
    }

    pub fn cluster(&self) -> &[LaurentPolynomial] {
        &self.cluster
    }

    pub fn word(&self) -> &MutationWord {
        &self.word
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    pub fn m(&self) -> usize {
        self.matrix.m()
    }

    /// Entry `i` of the extended cluster: a cluster variable for `i < n`,
    /// otherwise the frozen variable `x_{i+1}`.
    pub fn extended(&self, i: usize) -> LaurentPolynomial {
        if i < self.n() {
            self.cluster[i].clone()
        } else {
            LaurentPolynomial::var(self.m(), i)
        }
    }

    /// The two monomials `∏_{b_ik>0} x_i^{b_ik}` and `∏_{b_ik<0} x_i^{-b_ik}`
    /// of the exchange relation in direction `k`.
    pub fn exchange_monomials(&self, k: usize) -> (LaurentPolynomial, LaurentPolynomial) {
        let m = self.m();
        let mut plus = LaurentPolynomial::one(m);
        let mut minus = LaurentPolynomial::one(m);
        for i in 0..m {
            let b = self.matrix.get(i, k);
            if b > 0 {
                plus = &plus * &self.extended(i).pow(b as u32);
            } else if b < 0 {
                minus = &minus * &self.extended(i).pow((-b) as u32);
            }
        }
        (plus, minus)
    }

    /// Seed mutation in direction `k` (zero-based): exchange `x_k` by
    /// `(M_1 + M_2) / x_k` and mutate the matrix.
    pub fn mutate(&self, k: usize) -> Result<Self> {
        if k >= self.n() {
            return Err(Error::IndexOutOfRange {
                index: k + 1,
                max: self.n(),
            });
        }
        let (plus, minus) = self.exchange_monomials(k);
        let new = (&plus + &minus).divide_exact(&self.cluster[k])?;
        let mut cluster = self.cluster.clone();
        cluster[k] = new;
        let mut word = self.word.clone();
        word.push(k);
        Ok(Seed {
            matrix: self.matrix.mutate(k)?,
            cluster,
            word,
        })
    }

    pub fn mutate_word(&self, word: &MutationWord) -> Result<Self> {
        let mut s = self.clone();
        for &k in word.letters() {
            s = s.mutate(k)?;
        }
        Ok(s)
    }

    /// Key identifying the unlabeled seed: cluster strings sorted, and the
    /// matrix permuted accordingly, taking the least serialization when
    /// several permutations sort the cluster.
    pub fn unlabeled_key(&self) -> SeedKey {
        let strings: Vec<String> = self.cluster.iter().map(|x| x.to_string()).collect();
        let mut order: Vec<usize> = (0..self.n()).collect();
        order.sort_by(|&a, &b| strings[a].cmp(&strings[b]));
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for &i in &order {
            match groups.last_mut() {
                Some(g) if strings[g[0]] == strings[i] => g.push(i),
                _ => groups.push(vec![i]),
            }
        }
        let mut best: Option<Vec<i64>> = None;
        for_each_group_permutation(&groups, &mut |perm| {
            let ser = self.serialize_permuted(perm);
            if best.as_ref().map_or(true, |b| ser < *b) {
                best = Some(ser);
            }
        });
        SeedKey {
            cluster: order.iter().map(|&i| strings[i].clone()).collect(),
            matrix: best.unwrap_or_default(),
        }
    }

    fn serialize_permuted(&self, perm: &[usize]) -> Vec<i64> {
        let rows: Vec<usize> = perm.iter().copied().chain(self.n()..self.m()).collect();
        let mut out = Vec::with_capacity(self.m() * self.n());
        for &i in &rows {
            for &j in perm {
                out.push(self.matrix.get(i, j));
            }
        }
        out
    }

    /// Relabels the mutable indices: new index `t` is old index `perm[t]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        Seed {
            matrix: self.matrix.permuted(perm, &(0..self.m() - self.n()).collect::<Vec<_>>()),
            cluster: perm.iter().map(|&i| self.cluster[i].clone()).collect(),
            word: self.word.clone(),
        }
    }

    /// Checks the sharp Laurent phenomenon: no frozen variable occurs in a
    /// denominator.
    pub fn check_laurent_sharp(&self) -> LaurentReport {
        let mut violations = Vec::new();
        for (idx, x) in self.cluster.iter().enumerate() {
            if let Ok(d) = x.denominator_vector() {
                for f in self.n()..self.m() {
                    if d[f] > 0 {
                        violations.push((idx, f));
                    }
                }
            }
        }
        LaurentReport { violations }
    }

    /// Deletes all frozen rows, specializing frozen variables to 1.
    pub fn without_frozen(&self) -> Result<Self> {
        let n = self.n();
        let frozen: Vec<usize> = (n..self.m()).collect();
        // Frozen exponents are zero after specialization, so their target is moot.
        let keep: Vec<usize> = (0..self.m()).map(|i| if i < n { i } else { 0 }).collect();
        let cluster = self
            .cluster
            .iter()
            .map(|x| x.specialize_to_one(&frozen).reindex(n, &keep))
            .collect();
        Ok(Seed {
            matrix: self.matrix.principal(),
            cluster,
            word: self.word.clone(),
        })
    }

    pub fn to_triple(&self) -> SeedTriple {
        let n = self.n();
        let coeffs = (0..n)
            .map(|j| TropicalMonomial::new((n..self.m()).map(|i| self.matrix.get(i, j)).collect()))
            .collect();
        SeedTriple {
            cluster: self.cluster.clone(),
            coeffs,
            matrix: self.matrix.principal(),
        }
    }

    pub fn to_doc(&self) -> SeedDoc {
        SeedDoc {
            m: self.m(),
            n: self.n(),
            matrix: self.matrix.rows().to_vec(),
            cluster: self.cluster.iter().map(|x| x.to_string()).collect(),
            word: self.word.to_one_based(),
        }
    }

    pub fn from_doc(doc: &SeedDoc) -> Result<Self> {
        let matrix = ExchangeMatrix::new(doc.matrix.clone())?;
        if matrix.m() != doc.m || matrix.n() != doc.n {
            return Err(Error::parse("m and n disagree with the matrix shape"));
        }
        let cluster = doc
            .cluster
            .iter()
            .map(|s| LaurentPolynomial::parse_with_vars(s, doc.m))
            .collect::<Result<Vec<_>>>()?;
        Seed::from_parts(matrix, cluster, MutationWord::from_one_based(&doc.word)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_doc()).expect("seed documents serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: SeedDoc = serde_json::from_str(s).map_err(|e| Error::parse(e.to_string()))?;
        Self::from_doc(&doc)
    }
}

impl fmt::Debug for Seed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Seed")
            .field("matrix", &self.matrix)
            .field("cluster", &self.cluster)
            .field("word", &self.word.to_one_based())
            .finish()
    }
}

fn for_each_group_permutation(groups: &[Vec<usize>], f: &mut dyn FnMut(&[usize])) {
    fn rec(groups: &[Vec<usize>], idx: usize, acc: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if idx == groups.len() {
            f(acc);
            return;
        }
        let mut g = groups[idx].clone();
        permute(&mut g, 0, &mut |p| {
            let len = acc.len();
            acc.extend_from_slice(p);
            rec(groups, idx + 1, acc, f);
            acc.truncate(len);
        });
    }
    fn permute(v: &mut Vec<usize>, i: usize, f: &mut dyn FnMut(&[usize])) {
        if i == v.len() {
            f(v);
            return;
        }
        for j in i..v.len() {
            v.swap(i, j);
            permute(v, i + 1, f);
            v.swap(i, j);
        }
    }
    rec(groups, 0, &mut Vec::new(), f);
}

/// Free-function form of [`Seed::initial`].
pub fn initial_seed(matrix: ExchangeMatrix) -> Seed {
    Seed::initial(matrix)
}

pub fn mutate_seed(s: &Seed, k: usize) -> Result<Seed> {
    s.mutate(k)
}

/// The seed reached from the initial seed of `matrix` along `word`.
pub fn seed_at(matrix: &ExchangeMatrix, word: &MutationWord) -> Result<Seed> {
    Seed::initial(matrix.clone()).mutate_word(word)
}

/// Canonical key of an unlabeled seed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SeedKey {
    pub cluster: Vec<String>,
    pub matrix: Vec<i64>,
}

impl fmt::Display for SeedKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entries: Vec<String> = self.matrix.iter().map(|x| x.to_string()).collect();
        write!(f, "{} | {}", self.cluster.join(" ; "), entries.join(","))
    }
}

/// Frozen-variable denominators found by [`Seed::check_laurent_sharp`], as
/// `(cluster index, frozen variable index)` pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentReport {
    pub violations: Vec<(usize, usize)>,
}

impl LaurentReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// JSON document for a seed; `word` is one-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedDoc {
    pub m: usize,
    pub n: usize,
    pub matrix: Vec<Vec<i64>>,
    pub cluster: Vec<String>,
    pub word: Vec<usize>,
}

/// A seed written as cluster, tropical coefficient tuple and square matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedTriple {
    pub cluster: Vec<LaurentPolynomial>,
    pub coeffs: Vec<TropicalMonomial>,
    pub matrix: ExchangeMatrix,
}

impl SeedTriple {
    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    /// Mutation of the triple: the coefficient tuple follows the tropical
    /// Y-seed rule and the cluster variable uses the exchange relation with
    /// coefficients `y_k/(y_k ⊕ 1)` and `1/(y_k ⊕ 1)`.
    pub fn mutate(&self, k: usize) -> Result<Self> {
        let n = self.n();
        if k >= n {
            return Err(Error::IndexOutOfRange { index: k + 1, max: n });
        }
        let nvars = self.cluster[k].num_vars();
        let positions: Vec<usize> = (n..nvars).collect();
        let yk = &self.coeffs[k];
        let yk_sum = yk.add_one();
        let c_plus = yk.mul(&yk_sum.inv())?.to_laurent(nvars, &positions);
        let c_minus = yk_sum.inv().to_laurent(nvars, &positions);
        let mut plus = c_plus;
        let mut minus = c_minus;
        for i in 0..n {
            let b = self.matrix.get(i, k);
            if b > 0 {
                plus = &plus * &self.cluster[i].pow(b as u32);
            } else if b < 0 {
                minus = &minus * &self.cluster[i].pow((-b) as u32);
            }
        }
        let mut cluster = self.cluster.clone();
        cluster[k] = (&plus + &minus).divide_exact(&self.cluster[k])?;
        let coeffs = mutate_coefficients(&self.coeffs, &self.matrix, k)?;
        Ok(SeedTriple {
            cluster,
            coeffs,
            matrix: self.matrix.mutate(k)?,
        })
    }

    /// Rebuilds the extended-matrix seed: frozen row `i` holds the exponents
    /// of `x_{n+i+1}` in the coefficients.
    pub fn to_seed(&self, word: MutationWord) -> Result<Seed> {
        let mut rows = self.matrix.rows().to_vec();
        let l = self.coeffs.first().map_or(0, |c| c.len());
        for i in 0..l {
            rows.push(self.coeffs.iter().map(|c| c.exps[i]).collect());
        }
        Seed::from_parts(ExchangeMatrix::new(rows)?, self.cluster.clone(), word)
    }
}

/// Tropical Y-seed mutation of a coefficient tuple:
/// `y'_k = y_k^{-1}`, `y'_j = y_j y_k^{[b_kj]_+} (y_k ⊕ 1)^{-b_kj}`.
pub fn mutate_coefficients(
    coeffs: &[TropicalMonomial],
    matrix: &ExchangeMatrix,
    k: usize,
) -> Result<Vec<TropicalMonomial>> {
    let yk = &coeffs[k];
    let sum = yk.add_one();
    coeffs
        .iter()
        .enumerate()
        .map(|(j, yj)| {
            if j == k {
                return Ok(yk.inv());
            }
            let b = matrix.get(k, j);
            yj.mul(&yk.pow(b.max(0)))?.mul(&sum.pow(-b))
        })
        .collect()
}

pub fn to_triple(s: &Seed) -> SeedTriple {
    s.to_triple()
}

pub fn mutate_triple(t: &SeedTriple, k: usize) -> Result<SeedTriple> {
    t.mutate(k)
}

pub fn check_laurent_sharp(s: &Seed) -> LaurentReport {
    s.check_laurent_sharp()
}

pub fn unlabeled_key(s: &Seed) -> SeedKey {
    s.unlabeled_key()
}
