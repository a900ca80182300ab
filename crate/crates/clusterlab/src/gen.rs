//! Random instances for property tests and experiments.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::matrix::ExchangeMatrix;
use crate::quiver::Quiver;
use crate::seed::{MutationWord, Seed};

pub fn random_skew_symmetric<R: Rng>(n: usize, max: i64, rng: &mut R) -> Vec<Vec<i64>> {
    let mut b = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = rng.gen_range(-max..=max);
            b[i][j] = v;
            b[j][i] = -v;
        }
    }
    b
}

/// `b_ij = s_ij d_j` for a random skew-symmetric `S` and symmetrizer entries
/// `d_j ∈ {1, 2, 3}`, so `diag(d) B` is skew-symmetric.
pub fn random_skew_symmetrizable<R: Rng>(n: usize, max: i64, rng: &mut R) -> ExchangeMatrix {
    let s = random_skew_symmetric(n, max, rng);
    let d: Vec<i64> = (0..n).map(|_| *[1, 1, 2, 3].choose(rng).expect("nonempty")).collect();
    let rows = (0..n).map(|i| (0..n).map(|j| s[i][j] * d[j]).collect()).collect();
    ExchangeMatrix::square(rows).expect("skew-symmetrizable by construction")
}

/// A skew-symmetrizable principal part with `frozen` random rows below.
pub fn random_extended<R: Rng>(n: usize, frozen: usize, max: i64, rng: &mut R) -> ExchangeMatrix {
    let b = random_skew_symmetrizable(n, max, rng);
    let rows: Vec<Vec<i64>> = (0..frozen).map(|_| (0..n).map(|_| rng.gen_range(-max..=max)).collect()).collect();
    ExchangeMatrix::with_frozen(b.rows(), &rows).expect("valid")
}

pub fn random_quiver<R: Rng>(n: usize, frozen: usize, max: i64, rng: &mut R) -> Quiver {
    let b = random_skew_symmetric(n, max, rng);
    let rows: Vec<Vec<i64>> = (0..frozen).map(|_| (0..n).map(|_| rng.gen_range(-max..=max)).collect()).collect();
    Quiver::from_matrix(&ExchangeMatrix::with_frozen(&b, &rows).expect("valid")).expect("skew-symmetric")
}

/// A word of length `len` over `0..n` without immediate repetitions.
pub fn random_word<R: Rng>(n: usize, len: usize, rng: &mut R) -> MutationWord {
    let mut w: Vec<usize> = Vec::with_capacity(len);
    while w.len() < len {
        let k = rng.gen_range(0..n);
        if n == 1 || w.last() != Some(&k) {
            w.push(k);
        }
    }
    MutationWord::new(w)
}

/// The seed reached from a random initial seed along a random word.
pub fn random_seed<R: Rng>(n: usize, frozen: usize, max: i64, word_len: usize, rng: &mut R) -> Seed {
    let s = Seed::initial(random_extended(n, frozen, max, rng));
    let w = random_word(n, word_len, rng);
    s.mutate_word(&w).expect("mutation of a valid seed")
}

/// Like [`random_seed`], but each step of the walk is taken only if the
/// mutated matrix keeps every entry within `bound`; otherwise it is skipped.
/// Keeps symbolic expansions small.
pub fn random_tame_seed<R: Rng>(n: usize, frozen: usize, len: usize, bound: i64, rng: &mut R) -> Seed {
    let mut s = Seed::initial(random_extended(n, frozen, 1, rng));
    for _ in 0..len {
        let k = rng.gen_range(0..n);
        let b = s.matrix().mutate(k).expect("valid index");
        if b.rows().iter().flatten().all(|x| x.abs() <= bound) {
            s = s.mutate(k).expect("valid index");
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::check_skew_symmetrizable;
    use rand::SeedableRng;

    #[test]
    fn generated_matrices_are_valid() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
        for n in 1..=6 {
            let b = random_skew_symmetrizable(n, 3, &mut rng);
            assert!(check_skew_symmetrizable(b.rows()).is_some());
            let w = random_word(n, 10, &mut rng);
            assert!(w.letters().windows(2).all(|p| n == 1 || p[0] != p[1]));
        }
    }
}
