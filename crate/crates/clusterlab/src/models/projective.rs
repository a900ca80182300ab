//! Exact projective geometry in the plane: lines and intersections, the
//! pentagram map and the y-parameters of a polygon.

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::matrix::ExchangeMatrix;
use crate::ypattern::YSeed;

/// Homogeneous coordinates of a point (or a line) of the projective plane.
pub type Point = [BigRational; 3];

pub fn cross(a: &Point, b: &Point) -> Point {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

pub fn dot(a: &Point, b: &Point) -> BigRational {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

pub fn det3(a: &Point, b: &Point, c: &Point) -> BigRational {
    dot(a, &cross(b, c))
}

fn is_null(p: &Point) -> bool {
    p.iter().all(Zero::is_zero)
}

/// The line through two distinct points.
pub fn line(a: &Point, b: &Point) -> Result<Point> {
    let l = cross(a, b);
    if is_null(&l) {
        return Err(Error::invalid("coincident points do not span a line"));
    }
    Ok(l)
}

/// The intersection point of two distinct lines.
pub fn meet(l: &Point, m: &Point) -> Result<Point> {
    let p = cross(l, m);
    if is_null(&p) {
        return Err(Error::invalid("coincident lines do not meet in a point"));
    }
    Ok(p)
}

fn ratio(num: BigRational, den: BigRational) -> Result<BigRational> {
    if den.is_zero() || num.is_zero() {
        return Err(Error::invalid("degenerate configuration"));
    }
    Ok(num / den)
}

/// `Y(P₁,P₂,P₃,P₄) = P₁₄P₂₃ / (P₁₂P₃₄)` for four distinct collinear points.
/// The brackets `P_ij` are `det(R, P_i, P_j)` for any point `R` off the line,
/// which are Plücker coordinates of the points in a frame of that line.
pub fn collinear_y(p: [&Point; 4]) -> Result<BigRational> {
    let l = line(p[0], p[2])?;
    let r = (0..3)
        .map(|i| {
            let mut e: Point = [BigRational::zero(), BigRational::zero(), BigRational::zero()];
            e[i] = BigRational::one();
            e
        })
        .find(|e| !dot(&l, e).is_zero())
        .expect("a line misses some coordinate point");
    let b = |i: usize, j: usize| det3(&r, p[i], p[j]);
    ratio(b(0, 3) * b(1, 2), b(0, 1) * b(2, 3))
}

/// `Y(L₁,L₂,L₃,L₄)` for the lines through `q` and the points `p_i`, computed
/// with the brackets `det(q, p_i, p_j)`.
pub fn concurrent_y(q: &Point, p: [&Point; 4]) -> Result<BigRational> {
    let b = |i: usize, j: usize| det3(q, p[i], p[j]);
    ratio(b(0, 3) * b(1, 2), b(0, 1) * b(2, 3))
}

/// An `n`-gon indexed by the integers (`half = false`) or the half-integers
/// (`half = true`): `points[i]` is `A_i` or `A_{i+½}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectivePolygon {
    pub points: Vec<Point>,
    pub half: bool,
}

impl ProjectivePolygon {
    pub fn new(points: Vec<Point>, half: bool) -> Result<Self> {
        if points.len() < 5 {
            return Err(Error::invalid("the pentagram map needs at least 5 vertices"));
        }
        let p = ProjectivePolygon { points, half };
        for t in 0..p.n() as i64 {
            let s = 2 * t + p.parity();
            if det3(p.at(s), p.at(s + 2), p.at(s + 4)).is_zero() {
                return Err(Error::invalid("three consecutive vertices are collinear"));
            }
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    fn parity(&self) -> i64 {
        self.half as i64
    }

    /// The vertex with doubled index `s`, i.e. `A_{s/2}`; `s` must have the
    /// parity of the indexing.
    pub fn at(&self, s: i64) -> &Point {
        debug_assert_eq!(s.rem_euclid(2), self.parity());
        let i = ((s - self.parity()) / 2).rem_euclid(self.n() as i64);
        &self.points[i as usize]
    }

    /// `A′_{k} = (A_{k−3/2} A_{k+1/2}) ∩ (A_{k−1/2} A_{k+3/2})`: the vertices cut
    /// out by the shortest diagonals, indexed with the other parity.
    pub fn pentagram_map(&self) -> Result<Self> {
        let half = !self.half;
        let parity = half as i64;
        let points = (0..self.n() as i64)
            .map(|i| {
                let s = 2 * i + parity;
                meet(&line(self.at(s - 3), self.at(s + 1))?, &line(self.at(s - 1), self.at(s + 3))?)
            })
            .collect::<Result<Vec<_>>>()?;
        ProjectivePolygon::new(points, half)
    }

    /// `y_1, …, y_{2n}`; entry `j−1` holds `y_j`.
    pub fn y_params(&self) -> Result<Vec<BigRational>> {
        let n = self.n() as i64;
        (1..=2 * n)
            .map(|j| {
                if j.rem_euclid(2) == self.parity() {
                    // y_{2k} with A_k at doubled index j
                    let q = self.at(j);
                    let y = concurrent_y(q, [self.at(j - 2), self.at(j + 4), self.at(j + 2), self.at(j - 4)])?;
                    Ok(y.recip())
                } else {
                    // y_{2k+1} with A_k at doubled index j − 1
                    let (ak, ak1) = (self.at(j - 1), self.at(j + 1));
                    let l = line(ak, ak1)?;
                    let x = meet(&line(self.at(j + 3), self.at(j + 5))?, &l)?;
                    let z = meet(&line(self.at(j - 5), self.at(j - 3))?, &l)?;
                    collinear_y([ak, &x, ak1, &z])
                }
            })
            .collect()
    }

    /// Applies a projective transformation given by an invertible matrix.
    pub fn transform(&self, g: &[[BigRational; 3]; 3]) -> Self {
        let points = self
            .points
            .iter()
            .map(|p| {
                let row = |r: &[BigRational; 3]| &r[0] * &p[0] + &r[1] * &p[1] + &r[2] * &p[2];
                [row(&g[0]), row(&g[1]), row(&g[2])]
            })
            .collect();
        ProjectivePolygon { points, half: self.half }
    }
}

/// The `2n × 2n` matrix with `b_ij = (−1)^j` for `i − j ≡ ±1`, `(−1)^{j+1}`
/// for `i − j ≡ ±3` (mod `2n`), else 0; indices one-based in the formula.
pub fn pentagram_b(n: usize) -> Result<ExchangeMatrix> {
    if n < 4 {
        return Err(Error::invalid("the pentagram matrix needs n ≥ 4"));
    }
    let size = 2 * n as i64;
    let rows = (1..=size)
        .map(|i| {
            (1..=size)
                .map(|j| {
                    let d = (i - j).rem_euclid(size);
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    if d == 1 || d == size - 1 {
                        sign
                    } else if d == 3 || d == size - 3 {
                        -sign
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect();
    ExchangeMatrix::square(rows)
}

/// `(Y(A), B)`, or `(Y(A), −B)` for a half-integer indexed polygon.
pub fn pentagram_y_seed(a: &ProjectivePolygon) -> Result<YSeed<BigRational>> {
    let b = pentagram_b(a.n())?;
    let b = if a.half { b.negated() } else { b };
    YSeed::new(a.y_params()?, b)
}

/// Mutates at the one-based even indices (`even`) or odd indices.
pub fn mutate_parity(ys: &YSeed<BigRational>, even: bool) -> Result<YSeed<BigRational>> {
    let start = if even { 1 } else { 0 };
    let mut out = ys.clone();
    for k in (start..ys.n()).step_by(2) {
        out = out.mutate(k)?;
    }
    Ok(out)
}

/// A polygon with small random integer coordinates, resampled until it and
/// its first `steps` images under the pentagram map are nondegenerate.
pub fn random_polygon<R: Rng>(n: usize, steps: usize, rng: &mut R) -> ProjectivePolygon {
    let good = |p: &ProjectivePolygon| -> bool {
        let mut p = p.clone();
        for _ in 0..steps {
            if p.y_params().is_err() {
                return false;
            }
            match p.pentagram_map() {
                Ok(q) => p = q,
                Err(_) => return false,
            }
        }
        p.y_params().is_ok()
    };
    loop {
        let points: Vec<Point> = (0..n)
            .map(|_| {
                [
                    BigRational::from_integer(rng.gen_range(-20..=20).into()),
                    BigRational::from_integer(rng.gen_range(-20..=20).into()),
                    BigRational::from_integer(rng.gen_range(1..=20).into()),
                ]
            })
            .collect();
        if let Ok(p) = ProjectivePolygon::new(points, false) {
            if good(&p) {
                return p;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn pt(x: i64, y: i64) -> Point {
        [ratio(x, 1), ratio(y, 1), ratio(1, 1)]
    }

    #[test]
    fn collinear_cross_ratio_matches_line_formula() {
        // points (a : b) of the line y = 0 embedded as (a, 0, b)
        let p = |a: i64, b: i64| [ratio(a, 1), ratio(0, 1), ratio(b, 1)];
        let y = collinear_y([&p(1, 0), &p(0, 1), &p(1, 1), &p(1, 2)]).unwrap();
        assert_eq!(y, ratio(-2, 1));
    }

    #[test]
    fn b_matrix_for_five() {
        let b = pentagram_b(5).unwrap();
        assert_eq!(b.get(1, 0), -1);
        assert_eq!(b.get(0, 1), 1);
        assert_eq!(b.get(3, 0), 1);
        assert_eq!(b.get(0, 9), 1);
        assert_eq!(b.get(0, 2), 0);
        for i in 0..10 {
            for j in 0..10 {
                assert_eq!(b.get(i, j), -b.get(j, i));
            }
        }
    }

    #[test]
    fn regular_pentagon_like_polygon_maps() {
        let a = ProjectivePolygon::new(vec![pt(0, 0), pt(4, 0), pt(6, 3), pt(2, 6), pt(-2, 3)], false).unwrap();
        let b = a.pentagram_map().unwrap();
        assert!(b.half);
        assert_eq!(b.n(), 5);
        assert!(ProjectivePolygon::new(vec![pt(0, 0), pt(1, 0), pt(2, 0), pt(2, 6), pt(-2, 3)], false).is_err());
    }

    #[test]
    fn pentagram_map_is_a_y_pattern_step() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for n in 5..=8 {
            let a = random_polygon(n, 2, &mut rng);
            let a1 = a.pentagram_map().unwrap();
            let a2 = a1.pentagram_map().unwrap();
            let s0 = pentagram_y_seed(&a).unwrap();
            let s1 = mutate_parity(&s0, true).unwrap();
            assert_eq!(s1, pentagram_y_seed(&a1).unwrap(), "n = {n}");
            let s2 = mutate_parity(&s1, false).unwrap();
            assert_eq!(s2, pentagram_y_seed(&a2).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn y_params_are_projective_invariants() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let a = random_polygon(7, 0, &mut rng);
        let g = [
            [ratio(2, 1), ratio(1, 1), ratio(0, 1)],
            [ratio(-1, 3), ratio(1, 1), ratio(4, 1)],
            [ratio(1, 1), ratio(0, 1), ratio(5, 2)],
        ];
        assert_eq!(a.transform(&g).y_params().unwrap(), a.y_params().unwrap());
    }
}
