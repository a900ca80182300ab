//! Integer sequences from seed patterns: Somos-4, Somos-5, Fordy-Marsh
//! recurrences, Markov triples and the factorization of `F₅`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::ExchangeMatrix;
use crate::poly::LaurentPolynomial;
use crate::quiver::somos4_quiver;
use crate::seed::Seed;

/// Symbolic terms are capped at this many beyond the initial ones by default.
pub const DEFAULT_SYMBOLIC_CAP: usize = 12;

fn exact(num: BigInt, den: &BigInt) -> Result<BigInt> {
    let (q, r) = num.div_rem(den);
    if !r.is_zero() {
        return Err(Error::NonExactDivision);
    }
    Ok(q)
}

/// `z_{m+2} z_{m−2} = z_{m+1} z_{m−1} + z_m²` from four ones.
pub fn somos4_terms(k: usize) -> Result<Vec<BigInt>> {
    let mut z: Vec<BigInt> = vec![BigInt::one(); k.min(4)];
    while z.len() < k {
        let m = z.len() - 2;
        let next = exact(&z[m + 1] * &z[m - 1] + &z[m] * &z[m], &z[m - 2])?;
        z.push(next);
    }
    Ok(z)
}

/// `z_m z_{m+5} = z_{m+1} z_{m+4} + z_{m+2} z_{m+3}` from five ones.
pub fn somos5_terms(k: usize) -> Result<Vec<BigInt>> {
    let mut z: Vec<BigInt> = vec![BigInt::one(); k.min(5)];
    while z.len() < k {
        let m = z.len() - 5;
        let next = exact(&z[m + 1] * &z[m + 4] + &z[m + 2] * &z[m + 3], &z[m])?;
        z.push(next);
    }
    Ok(z)
}

/// `z_{m+3} z_m = z_{m+2} z_{m+1} + 1` from three ones.
pub fn three_term_terms(k: usize) -> Result<Vec<BigInt>> {
    let mut z: Vec<BigInt> = vec![BigInt::one(); k.min(3)];
    while z.len() < k {
        let m = z.len() - 3;
        let next = exact(&z[m + 2] * &z[m + 1] + BigInt::one(), &z[m])?;
        z.push(next);
    }
    Ok(z)
}

/// Mutates at `1, 2, …, n, 1, 2, …` and records each new cluster variable
/// after the `n` initial ones; `count` terms in total.
pub fn periodic_terms(seed: &Seed, count: usize) -> Result<Vec<LaurentPolynomial>> {
    let n = seed.n();
    let mut out: Vec<LaurentPolynomial> = seed.cluster().iter().take(count).cloned().collect();
    let mut s = seed.clone();
    let mut k = 0;
    while out.len() < count {
        s = s.mutate(k)?;
        out.push(s.cluster()[k].clone());
        k = (k + 1) % n;
    }
    Ok(out)
}

/// Frozen rows making the Somos-4 seed produce
/// `z_{m+2} z_{m−2} = a z_{m+1} z_{m−1} + b z_m²`.
pub fn somos4_coefficient_rows() -> [Vec<i64>; 2] {
    [vec![1, 1, -1, -1], vec![-1, 0, 0, 1]]
}

pub fn somos4_seed(with_coeffs: bool) -> Result<Seed> {
    let b = somos4_quiver().to_matrix();
    let m = if with_coeffs {
        ExchangeMatrix::with_frozen(b.rows(), &somos4_coefficient_rows())?
    } else {
        b
    };
    Ok(Seed::initial(m))
}

/// `z_k` over `z_0, …, z_3` (and `a, b` as variables 5 and 6 when
/// `with_coeffs`).
pub fn somos4_symbolic(k: usize, with_coeffs: bool) -> Result<LaurentPolynomial> {
    Ok(periodic_terms(&somos4_seed(with_coeffs)?, k + 1)?.pop().expect("k + 1 terms"))
}

/// The exchange matrix of the Somos-5 seed pattern.
pub fn somos5_matrix() -> ExchangeMatrix {
    ExchangeMatrix::square(vec![
        vec![0, -1, 1, 1, -1],
        vec![1, 0, -2, 0, 1],
        vec![-1, 2, 0, -2, 1],
        vec![-1, 0, 2, 0, -1],
        vec![1, -1, -1, 1, 0],
    ])
    .expect("skew-symmetric")
}

fn pos(a: i64) -> i64 {
    a.max(0)
}

/// `b_ij = a_{i−j} + Σ_{k<j} ([−a_{i−k}]₊[a_{j−k}]₊ − [a_{i−k}]₊[−a_{j−k}]₊)`
/// for `j < i` (one-based), extended skew-symmetrically.
pub fn fordy_marsh_matrix(a: &[i64]) -> Result<ExchangeMatrix> {
    let n = a.len() + 1;
    if (1..n).any(|i| a[i - 1] != a[n - i - 1]) {
        return Err(Error::invalid("the vector must be palindromic"));
    }
    let at = |i: usize| a[i - 1];
    let mut b = vec![vec![0i64; n]; n];
    for i in 1..=n {
        for j in 1..i {
            let mut v = at(i - j);
            for k in 1..j {
                v += pos(-at(i - k)) * pos(at(j - k)) - pos(at(i - k)) * pos(-at(j - k));
            }
            b[i - 1][j - 1] = v;
            b[j - 1][i - 1] = -v;
        }
    }
    ExchangeMatrix::square(b)
}

/// `σ(B)`: moves the first row and column to the last place.
pub fn cyclic_shift(b: &ExchangeMatrix) -> ExchangeMatrix {
    let n = b.n();
    let rows = (0..n).map(|i| (0..n).map(|j| b.get((i + 1) % n, (j + 1) % n)).collect()).collect();
    ExchangeMatrix::square(rows).expect("shifts keep skew-symmetry")
}

/// Terms of the Fordy-Marsh recurrence over the initial `z_1, …, z_n`.
pub fn fordy_marsh_terms(a: &[i64], count: usize) -> Result<Vec<LaurentPolynomial>> {
    periodic_terms(&Seed::initial(fordy_marsh_matrix(a)?), count)
}

/// `z_m z_{m+n} = Π z_{m+i}^{[a_i]₊} + Π z_{m+i}^{[−a_i]₊}` holds for the
/// given terms.
pub fn satisfies_fordy_marsh(a: &[i64], z: &[LaurentPolynomial]) -> bool {
    let n = a.len() + 1;
    (0..z.len().saturating_sub(n)).all(|m| {
        let nv = z[m].num_vars();
        let mut plus = LaurentPolynomial::one(nv);
        let mut minus = LaurentPolynomial::one(nv);
        for i in 1..n {
            plus = &plus * &z[m + i].pow(pos(a[i - 1]) as u32);
            minus = &minus * &z[m + i].pow(pos(-a[i - 1]) as u32);
        }
        &z[m] * &z[m + n] == &plus + &minus
    })
}

/// A node of the Markov tree: `mutated` is the direction from the parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkovNode {
    pub triple: [BigInt; 3],
    pub depth: usize,
    pub parent: Option<usize>,
    pub mutated: Option<usize>,
}

/// Vieta jumps `x′_k = (x_i² + x_j²)/x_k` from `(1,1,1)` in all
/// non-backtracking directions, breadth first.
pub fn markov_tree(depth: usize) -> Vec<MarkovNode> {
    let one = || BigInt::one();
    let mut nodes = vec![MarkovNode { triple: [one(), one(), one()], depth: 0, parent: None, mutated: None }];
    let mut i = 0;
    while i < nodes.len() {
        let node = nodes[i].clone();
        if node.depth < depth {
            for k in 0..3 {
                if node.mutated == Some(k) {
                    continue;
                }
                let x = &node.triple;
                let (p, q) = (&x[(k + 1) % 3], &x[(k + 2) % 3]);
                let mut t = x.clone();
                t[k] = (p * p + q * q) / &x[k];
                nodes.push(MarkovNode { triple: t, depth: node.depth + 1, parent: Some(i), mutated: Some(k) });
            }
        }
        i += 1;
    }
    nodes
}

/// `(x₁² + x₂² + x₃²)/(x₁x₂x₃)`.
pub fn markov_invariant(x: &[BigInt; 3]) -> Result<BigRational> {
    let den: BigInt = x.iter().product();
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(x.iter().map(|v| v * v).sum(), den))
}

pub fn is_markov_triple(x: &[BigInt; 3]) -> bool {
    x.iter().map(|v| v * v).sum::<BigInt>() == BigInt::from(3) * x.iter().product::<BigInt>()
}

/// One step of the Fermat example: the two specialized cluster variables
/// and the extended exchange matrix after the step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FermatStep {
    pub values: [BigRational; 2],
    pub matrix: ExchangeMatrix,
}

pub fn fermat_matrix() -> ExchangeMatrix {
    ExchangeMatrix::with_frozen(&[vec![0, 4], vec![-1, 0]], &[vec![1, -3]]).expect("valid")
}

/// Alternating `μ₁, μ₂` from `B̃ = [[0,4],[−1,0],[1,−3]]` specialized at
/// `(x₁,x₂,x₃) = (3,−1,16)`; the initial state comes first.
pub fn fermat_demo(steps: usize) -> Result<Vec<FermatStep>> {
    let point: Vec<BigRational> = [3, -1, 16].iter().map(|&v| BigRational::from_integer(v.into())).collect();
    let mut s = Seed::initial(fermat_matrix());
    let mut out = Vec::with_capacity(steps + 1);
    for t in 0..=steps {
        if t > 0 {
            s = s.mutate((t - 1) % 2)?;
        }
        let v0 = s.cluster()[0].eval(&point)?;
        let v1 = s.cluster()[1].eval(&point)?;
        out.push(FermatStep { values: [v0, v1], matrix: s.matrix().clone() });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn short_prefixes() {
        assert_eq!(somos4_terms(3).unwrap(), vec![BigInt::one(); 3]);
        assert_eq!(somos4_terms(0).unwrap(), vec![]);
        assert_eq!(three_term_terms(8).unwrap().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","), "1,1,1,2,3,7,11,26");
    }

    #[test]
    fn fordy_marsh_examples() {
        assert_eq!(fordy_marsh_matrix(&[1, -1, -1, 1]).unwrap(), somos5_matrix());
        assert!(fordy_marsh_matrix(&[1, 2]).is_err());
        let zero = fordy_marsh_matrix(&[0, 0, 0]).unwrap();
        assert!(zero.rows().iter().flatten().all(|&x| x == 0));
        for c in -3..=3 {
            let b = fordy_marsh_matrix(&[c, c]).unwrap();
            assert_eq!(cyclic_shift(&b.mutate(0).unwrap()), b);
        }
    }

    #[test]
    fn markov_root() {
        let t = markov_tree(1);
        assert_eq!(t.len(), 4);
        assert_eq!(markov_invariant(&t[0].triple).unwrap(), BigRational::from_integer(3.into()));
    }
}
