//! Triangulations of a convex polygon, flips, the quivers `Q(T)` and
//! `Q₃(T)`, and the Plücker seed of `Gr(2, m)`.
//!
//! Vertices are `0..m` in clockwise order; a chord is a pair `(a, b)` with
//! `a < b`. Text and display forms use one-based labels.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::poly::LaurentPolynomial;
use crate::quiver::Quiver;
use crate::seed::Seed;
use crate::ypattern::YSeed;

pub type Chord = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triangulation {
    m: usize,
    diagonals: Vec<Chord>,
}

fn norm(a: usize, b: usize) -> Chord {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Strict interior crossing of two chords.
pub fn crosses(p: Chord, q: Chord) -> bool {
    let (a, b) = p;
    let (c, d) = q;
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

pub fn is_side(m: usize, c: Chord) -> bool {
    c.1 == c.0 + 1 || (c.0 == 0 && c.1 == m - 1)
}

/// The sides `(0,1), (1,2), …, (m−2,m−1), (0,m−1)` in this order.
pub fn sides(m: usize) -> Vec<Chord> {
    let mut s: Vec<Chord> = (0..m - 1).map(|i| (i, i + 1)).collect();
    s.push((0, m - 1));
    s
}

/// Label `P_ij` of a chord, one-based.
pub fn chord_name(c: Chord) -> String {
    let (a, b) = (c.0 + 1, c.1 + 1);
    if b < 10 {
        format!("P{a}{b}")
    } else {
        format!("P{a},{b}")
    }
}

impl Triangulation {
    pub fn new(m: usize, diagonals: impl IntoIterator<Item = Chord>) -> Result<Self> {
        if m < 3 {
            return Err(Error::invalid("a polygon needs at least 3 vertices"));
        }
        let mut ds: Vec<Chord> = diagonals.into_iter().map(|(a, b)| norm(a, b)).collect();
        ds.sort_unstable();
        ds.dedup();
        if ds.len() != m - 3 {
            return Err(Error::invalid(format!(
                "a triangulation of an {m}-gon has {} diagonals, found {}",
                m - 3,
                ds.len()
            )));
        }
        for &d in &ds {
            if d.1 >= m || d.0 == d.1 || is_side(m, d) {
                return Err(Error::invalid(format!("{}-{} is not a diagonal", d.0 + 1, d.1 + 1)));
            }
        }
        for (i, &p) in ds.iter().enumerate() {
            for &q in &ds[i + 1..] {
                if crosses(p, q) {
                    return Err(Error::invalid(format!(
                        "diagonals {}-{} and {}-{} cross",
                        p.0 + 1,
                        p.1 + 1,
                        q.0 + 1,
                        q.1 + 1
                    )));
                }
            }
        }
        Ok(Triangulation { m, diagonals: ds })
    }

    /// All diagonals from one vertex.
    pub fn fan(m: usize, apex: usize) -> Result<Self> {
        let ds = (0..m).filter(|&v| v != apex && !is_side(m, norm(apex, v))).map(|v| norm(apex, v));
        Self::new(m, ds)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Diagonals in increasing order.
    pub fn diagonals(&self) -> &[Chord] {
        &self.diagonals
    }

    pub fn contains(&self, c: Chord) -> bool {
        let c = norm(c.0, c.1);
        is_side(self.m, c) || self.diagonals.binary_search(&c).is_ok()
    }

    /// The `m − 2` triangles `(a, b, c)` with `a < b < c`, listed clockwise.
    pub fn triangles(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.m {
            for b in a + 1..self.m {
                if !self.contains((a, b)) {
                    continue;
                }
                for c in b + 1..self.m {
                    if self.contains((b, c)) && self.contains((a, c)) {
                        out.push((a, b, c));
                    }
                }
            }
        }
        out
    }

    /// The other diagonal of the quadrilateral formed by the two triangles on `d`.
    pub fn flipped_diagonal(&self, d: Chord) -> Result<Chord> {
        let d = norm(d.0, d.1);
        if self.diagonals.binary_search(&d).is_err() {
            return Err(Error::invalid(format!("{}-{} is not a diagonal of T", d.0 + 1, d.1 + 1)));
        }
        let apexes: Vec<usize> = (0..self.m)
            .filter(|&v| v != d.0 && v != d.1 && self.contains((d.0, v)) && self.contains((d.1, v)))
            .collect();
        debug_assert_eq!(apexes.len(), 2);
        Ok(norm(apexes[0], apexes[1]))
    }

    pub fn flip(&self, d: Chord) -> Result<Self> {
        let e = self.flipped_diagonal(d)?;
        let d = norm(d.0, d.1);
        Self::new(self.m, self.diagonals.iter().map(|&x| if x == d { e } else { x }))
    }

    /// The quadrilateral around `d` as `(i, j, k, l)` clockwise with `d = ik`
    /// and `i < k`.
    pub fn quadrilateral(&self, d: Chord) -> Result<(usize, usize, usize, usize)> {
        let e = self.flipped_diagonal(d)?;
        let (i, k) = norm(d.0, d.1);
        let (j, l) = if i < e.0 && e.0 < k { (e.0, e.1) } else { (e.1, e.0) };
        Ok((i, j, k, l))
    }

    /// `Q(T)` with mutable vertices in the given order of diagonals, then the
    /// sides in the order of [`sides`].
    pub fn quiver_ordered(&self, order: &[Chord]) -> Result<Quiver> {
        let mut sorted: Vec<Chord> = order.iter().map(|&(a, b)| norm(a, b)).collect();
        sorted.sort_unstable();
        if sorted != self.diagonals {
            return Err(Error::invalid("vertex order must list the diagonals of T"));
        }
        let mut index: HashMap<Chord, usize> = HashMap::new();
        for (t, &c) in order.iter().chain(sides(self.m).iter()).enumerate() {
            index.insert(norm(c.0, c.1), t);
        }
        let n = order.len();
        let mm = index.len();
        let mut b = vec![vec![0i64; mm]; mm];
        for (a, bb, c) in self.triangles() {
            let cyc = [index[&(a, bb)], index[&(bb, c)], index[&(a, c)]];
            for t in 0..3 {
                let (u, v) = (cyc[t], cyc[(t + 1) % 3]);
                if u < n || v < n {
                    b[u][v] += 1;
                    b[v][u] -= 1;
                }
            }
        }
        Quiver::from_net(n, b)
    }

    /// `Q(T)`: diagonals (in increasing order) are mutable, sides frozen, and
    /// each triangle contributes the clockwise cycle on its three edges.
    pub fn quiver(&self) -> Quiver {
        self.quiver_ordered(&self.diagonals).expect("diagonals are in order")
    }

    /// `Q₃(T)`. Mutable vertices: two points per diagonal (near its smaller,
    /// then its larger endpoint) in diagonal order, then one point per
    /// triangle in [`Triangulation::triangles`] order. Frozen vertices: two
    /// points per side, in side order.
    pub fn q3_quiver(&self) -> Quiver {
        let tris = self.triangles();
        let mut index: HashMap<(Chord, usize), usize> = HashMap::new();
        let mut next = 0;
        for &d in &self.diagonals {
            index.insert((d, d.0), next);
            index.insert((d, d.1), next + 1);
            next += 2;
        }
        let centers = next;
        next += tris.len();
        let n = next;
        for s in sides(self.m) {
            index.insert((s, s.0), next);
            index.insert((s, s.1), next + 1);
            next += 2;
        }
        let mm = next;
        let pt = |x: usize, y: usize| index[&(norm(x, y), x)];
        let mut b = vec![vec![0i64; mm]; mm];
        for (t, &(a, bb, c)) in tris.iter().enumerate() {
            let k = centers + t;
            let (a1, a2) = (pt(a, bb), pt(bb, a));
            let (b1, b2) = (pt(bb, c), pt(c, bb));
            let (c1, c2) = (pt(c, a), pt(a, c));
            let path = [a1, k, b2, c1, k, a2, b1, k, c2, a1];
            for w in path.windows(2) {
                let (u, v) = (w[0], w[1]);
                if u < n || v < n {
                    b[u][v] += 1;
                    b[v][u] -= 1;
                }
            }
        }
        Quiver::from_net(n, b).expect("arrows avoid frozen pairs")
    }

    /// Mutable vertices of `Q₃(T)` touching diagonal `d`: its two points and
    /// the centers of its two triangles.
    pub fn q3_flip_vertices(&self, d: Chord) -> Result<Vec<usize>> {
        let d = norm(d.0, d.1);
        let i = self
            .diagonals
            .binary_search(&d)
            .map_err(|_| Error::invalid("not a diagonal of T"))?;
        let base = 2 * self.diagonals.len();
        let mut out = vec![2 * i, 2 * i + 1];
        for (t, &(a, b, c)) in self.triangles().iter().enumerate() {
            if [(a, b), (b, c), (a, c)].contains(&d) {
                out.push(base + t);
            }
        }
        Ok(out)
    }

    /// The seed of `Gr(2, m)` attached to `T`: mutable variables `P_d` for
    /// the diagonals (increasing), frozen `P_s` for the sides.
    pub fn plucker_seed(&self) -> Seed {
        Seed::initial(self.quiver().to_matrix())
    }

    /// Variable names of [`Triangulation::plucker_seed`].
    pub fn plucker_names(&self) -> Vec<String> {
        self.diagonals
            .iter()
            .chain(sides(self.m).iter())
            .map(|&c| chord_name(c))
            .collect()
    }

    /// The one-based text form `m; a-b, c-d, …`.
    pub fn to_text(&self) -> String {
        let ds: Vec<String> = self.diagonals.iter().map(|d| format!("{}-{}", d.0 + 1, d.1 + 1)).collect();
        format!("{}; {}", self.m, ds.join(", "))
    }

    pub fn parse_text(s: &str) -> Result<Self> {
        let (m, rest) = s.split_once(';').unwrap_or((s, ""));
        let m: usize = m.trim().parse().map_err(|_| Error::parse(format!("bad polygon size {m:?}")))?;
        let mut ds = Vec::new();
        for part in rest.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (a, b) = part
                .split_once('-')
                .ok_or_else(|| Error::parse(format!("bad diagonal {part:?}")))?;
            let a: usize = a.trim().parse().map_err(|_| Error::parse(format!("bad vertex {a:?}")))?;
            let b: usize = b.trim().parse().map_err(|_| Error::parse(format!("bad vertex {b:?}")))?;
            if a == 0 || b == 0 || a > m || b > m {
                return Err(Error::parse(format!("vertex out of range in {part:?}")));
            }
            ds.push((a - 1, b - 1));
        }
        Self::new(m, ds)
    }
}

impl fmt::Display for Triangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for Triangulation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_text(s)
    }
}

fn triangulate(verts: &[usize], out: &mut Vec<Vec<Chord>>) {
    let l = verts.len();
    if l <= 3 {
        out.push(Vec::new());
        return;
    }
    for k in 1..l - 1 {
        let mut left = Vec::new();
        triangulate(&verts[..=k], &mut left);
        let mut right = Vec::new();
        triangulate(&verts[k..], &mut right);
        for lt in &left {
            for rt in &right {
                let mut ds = lt.clone();
                ds.extend(rt.iter().copied());
                if k >= 2 {
                    ds.push(norm(verts[0], verts[k]));
                }
                if k + 2 <= l - 1 {
                    ds.push(norm(verts[k], verts[l - 1]));
                }
                out.push(ds);
            }
        }
    }
}

/// All triangulations of the `m`-gon, sorted.
pub fn enumerate_triangulations(m: usize) -> Vec<Triangulation> {
    if m < 3 {
        return Vec::new();
    }
    let verts: Vec<usize> = (0..m).collect();
    let mut raw = Vec::new();
    triangulate(&verts, &mut raw);
    let mut out: Vec<Triangulation> = raw
        .into_iter()
        .map(|ds| Triangulation::new(m, ds).expect("valid by construction"))
        .collect();
    out.sort();
    out
}

/// Expansions of every Plücker coordinate `P_ij` in the extended cluster of
/// `start`, obtained by walking a spanning tree of the flip graph and
/// performing one seed mutation per new triangulation. Sides map to their
/// frozen variables.
pub fn plucker_expansions(start: &Triangulation) -> Result<BTreeMap<Chord, LaurentPolynomial>> {
    let m = start.m;
    let mm = 2 * m - 3;
    let n = m - 3;
    let mut out = BTreeMap::new();
    for (t, &c) in start.diagonals.iter().chain(sides(m).iter()).enumerate() {
        out.insert(c, LaurentPolynomial::var(mm, t));
    }
    let mut seen: BTreeSet<Triangulation> = BTreeSet::new();
    seen.insert(start.clone());
    let mut queue = VecDeque::new();
    queue.push_back((start.clone(), start.diagonals.clone(), start.plucker_seed()));
    while let Some((t, order, seed)) = queue.pop_front() {
        for k in 0..n {
            let t2 = t.flip(order[k])?;
            if seen.contains(&t2) {
                continue;
            }
            let new = t.flipped_diagonal(order[k])?;
            let s2 = seed.mutate(k)?;
            out.entry(new).or_insert_with(|| s2.cluster()[k].clone());
            let mut o2 = order.clone();
            o2[k] = new;
            seen.insert(t2.clone());
            queue.push_back((t2, o2, s2));
        }
    }
    Ok(out)
}

/// `P_ij = a_i b_j − a_j b_i` for points `(a : b)` of the projective line.
pub fn plucker2(p: &[(BigRational, BigRational)], i: usize, j: usize) -> BigRational {
    &p[i].0 * &p[j].1 - &p[j].0 * &p[i].1
}

/// `Y(P₁,P₂,P₃,P₄) = P₁₄P₂₃ / (P₁₂P₃₄)` for points of the projective line.
pub fn cross_ratio_y(p: [&(BigRational, BigRational); 4]) -> Result<BigRational> {
    let pts: Vec<(BigRational, BigRational)> = p.iter().map(|&x| x.clone()).collect();
    let den = plucker2(&pts, 0, 1) * plucker2(&pts, 2, 3);
    if num_traits::Zero::is_zero(&den) {
        return Err(Error::DivisionByZero);
    }
    Ok(plucker2(&pts, 0, 3) * plucker2(&pts, 1, 2) / den)
}

/// The Y-seed of a triangulation and a configuration of `m` points on the
/// projective line: `Y_d = Y(P_i,P_j,P_k,P_l)` for the quadrilateral
/// `(i,j,k,l)` around `d = ik`, and `B_T` the mutable part of `Q(T)`.
pub fn triangulation_y_seed_ordered(
    t: &Triangulation,
    order: &[Chord],
    points: &[(BigRational, BigRational)],
) -> Result<YSeed<BigRational>> {
    if points.len() != t.m {
        return Err(Error::DimensionMismatch {
            expected: t.m,
            found: points.len(),
        });
    }
    let mut y = Vec::with_capacity(order.len());
    for &d in order {
        let (i, j, k, l) = t.quadrilateral(d)?;
        y.push(cross_ratio_y([&points[i], &points[j], &points[k], &points[l]])?);
    }
    let b = t.quiver_ordered(order)?.mutable_part().to_matrix();
    YSeed::new(y, b)
}

pub fn triangulation_y_seed(t: &Triangulation, points: &[(BigRational, BigRational)]) -> Result<YSeed<BigRational>> {
    triangulation_y_seed_ordered(t, &t.diagonals, points)
}
