//! Quivers with frozen vertices, quiver mutation, canonical forms and the
//! stock example quivers.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::canon::canonical_labeling;
use crate::error::{Error, Result};
use crate::matrix::ExchangeMatrix;

/// A quiver on vertices `0..m`, of which `0..n` are mutable.
///
/// Arrows are stored as net signed counts `b[i][j] = #(i→j) − #(j→i)`, which
/// is exactly the extended exchange matrix extended skew-symmetrically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Quiver {
    m: usize,
    n: usize,
    b: Vec<Vec<i64>>,
}

/// Canonical serialization of a quiver up to relabeling mutable vertices
/// among themselves and frozen vertices among themselves.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuiverKey {
    pub m: usize,
    pub n: usize,
    pub adjacency: Vec<i64>,
}

impl std::fmt::Display for QuiverKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let entries: Vec<String> = self.adjacency.iter().map(|x| x.to_string()).collect();
        write!(f, "{}/{}:{}", self.m, self.n, entries.join(","))
    }
}

impl Quiver {
    /// Builds a quiver from `(tail, head, multiplicity)` triples.
    pub fn from_arrows(m: usize, n: usize, arrows: &[(usize, usize, u64)]) -> Result<Self> {
        if n > m {
            return Err(Error::InvalidQuiver("more mutable vertices than vertices".into()));
        }
        let mut b = vec![vec![0i64; m]; m];
        for &(i, j, c) in arrows {
            if i >= m || j >= m {
                return Err(Error::InvalidQuiver(format!("arrow {}→{} out of range", i + 1, j + 1)));
            }
            if i == j {
                return Err(Error::InvalidQuiver(format!("loop at {}", i + 1)));
            }
            if i >= n && j >= n && c > 0 {
                return Err(Error::InvalidQuiver(format!(
                    "arrow {}→{} joins two frozen vertices",
                    i + 1,
                    j + 1
                )));
            }
            if b[j][i] > 0 && c > 0 {
                return Err(Error::InvalidQuiver(format!("2-cycle between {} and {}", i + 1, j + 1)));
            }
            b[i][j] += c as i64;
            b[j][i] -= c as i64;
        }
        Ok(Quiver { m, n, b })
    }

    /// Builds a quiver from a full `m × m` skew-symmetric matrix of net counts.
    pub fn from_net(n: usize, b: Vec<Vec<i64>>) -> Result<Self> {
        let m = b.len();
        if b.iter().any(|r| r.len() != m) {
            return Err(Error::InvalidQuiver("net-count matrix is not square".into()));
        }
        for i in 0..m {
            for j in 0..m {
                if b[i][j] != -b[j][i] {
                    return Err(Error::NotSkewSymmetric);
                }
                if i >= n && j >= n && b[i][j] != 0 {
                    return Err(Error::InvalidQuiver("arrow between frozen vertices".into()));
                }
            }
        }
        Ok(Quiver { m, n, b })
    }

    /// The quiver of an extended matrix with skew-symmetric principal part.
    pub fn from_matrix(bt: &ExchangeMatrix) -> Result<Self> {
        let (m, n) = (bt.m(), bt.n());
        for i in 0..n {
            for j in 0..n {
                if bt.get(i, j) != -bt.get(j, i) {
                    return Err(Error::NotSkewSymmetric);
                }
            }
        }
        let mut b = vec![vec![0i64; m]; m];
        for i in 0..m {
            for j in 0..n {
                b[i][j] = bt.get(i, j);
                b[j][i] = -bt.get(i, j);
            }
        }
        Ok(Quiver { m, n, b })
    }

    pub fn to_matrix(&self) -> ExchangeMatrix {
        let rows = self.b.iter().map(|r| r[..self.n].to_vec()).collect();
        ExchangeMatrix::new(rows).expect("quiver matrices are skew-symmetric")
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_mutable(&self, v: usize) -> bool {
        v < self.n
    }

    /// Net number of arrows `i → j` (negative when they point the other way).
    pub fn net(&self, i: usize, j: usize) -> i64 {
        self.b[i][j]
    }

    pub fn net_matrix(&self) -> &[Vec<i64>] {
        &self.b
    }

    /// All arrows as `(tail, head, multiplicity)`.
    pub fn arrows(&self) -> Vec<(usize, usize, u64)> {
        let mut out = Vec::new();
        for i in 0..self.m {
            for j in 0..self.m {
                if self.b[i][j] > 0 {
                    out.push((i, j, self.b[i][j] as u64));
                }
            }
        }
        out
    }

    pub fn arrow_count(&self) -> u64 {
        self.arrows().iter().map(|a| a.2).sum()
    }

    /// Quiver mutation at the mutable vertex `k`:
    /// for each path `i → k → j` add an arrow `i → j` (never between two
    /// frozen vertices), reverse all arrows at `k`, then cancel 2-cycles.
    pub fn mutate(&self, k: usize) -> Result<Self> {
        if k >= self.n {
            return Err(Error::IndexOutOfRange {
                index: k + 1,
                max: self.n,
            });
        }
        let mut b = self.b.clone();
        let into_k: Vec<(usize, i64)> = (0..self.m).filter(|&i| self.b[i][k] > 0).map(|i| (i, self.b[i][k])).collect();
        let out_of_k: Vec<(usize, i64)> = (0..self.m).filter(|&j| self.b[k][j] > 0).map(|j| (j, self.b[k][j])).collect();
        // Steps 1 and 3: net counts cancel opposite arrows automatically.
        for &(i, p) in &into_k {
            for &(j, q) in &out_of_k {
                if i == j || (i >= self.n && j >= self.n) {
                    continue;
                }
                let add = p.checked_mul(q).ok_or(Error::Overflow)?;
                b[i][j] = b[i][j].checked_add(add).ok_or(Error::Overflow)?;
                b[j][i] = b[j][i].checked_sub(add).ok_or(Error::Overflow)?;
            }
        }
        // Step 2: reverse the arrows incident to k.
        for v in 0..self.m {
            b[k][v] = -b[k][v];
            b[v][k] = -b[v][k];
        }
        Ok(Quiver { m: self.m, n: self.n, b })
    }

    pub fn mutate_word(&self, word: &[usize]) -> Result<Self> {
        let mut q = self.clone();
        for &k in word {
            q = q.mutate(k)?;
        }
        Ok(q)
    }

    /// Reverses every arrow.
    pub fn opposite(&self) -> Self {
        Quiver {
            m: self.m,
            n: self.n,
            b: self.b.iter().map(|r| r.iter().map(|x| -x).collect()).collect(),
        }
    }

    /// Relabels vertices: new vertex `t` is old vertex `order[t]`. The order
    /// must keep mutable vertices in front.
    pub fn relabel(&self, order: &[usize]) -> Self {
        let b = order
            .iter()
            .map(|&i| order.iter().map(|&j| self.b[i][j]).collect())
            .collect();
        Quiver { m: self.m, n: self.n, b }
    }

    /// The vertex ordering realizing [`Quiver::canonical_form`].
    pub fn canonical_order(&self) -> Vec<usize> {
        let cells = vec![(0..self.n).collect(), (self.n..self.m).collect()];
        canonical_labeling(&self.b, cells).0
    }

    pub fn canonical_form(&self) -> QuiverKey {
        let cells = vec![(0..self.n).collect(), (self.n..self.m).collect()];
        let (_, adjacency) = canonical_labeling(&self.b, cells);
        QuiverKey {
            m: self.m,
            n: self.n,
            adjacency,
        }
    }

    pub fn is_isomorphic(&self, other: &Quiver) -> bool {
        self.m == other.m && self.n == other.n && self.canonical_form() == other.canonical_form()
    }

    /// The full subquiver on the mutable vertices.
    pub fn mutable_part(&self) -> Quiver {
        Quiver {
            m: self.n,
            n: self.n,
            b: self.b[..self.n].iter().map(|r| r[..self.n].to_vec()).collect(),
        }
    }

    pub fn is_acyclic(&self) -> bool {
        let mut indeg: Vec<usize> = (0..self.m)
            .map(|j| (0..self.m).filter(|&i| self.b[i][j] > 0).count())
            .collect();
        let mut stack: Vec<usize> = (0..self.m).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for j in 0..self.m {
                if self.b[v][j] > 0 {
                    indeg[j] -= 1;
                    if indeg[j] == 0 {
                        stack.push(j);
                    }
                }
            }
        }
        seen == self.m
    }

    pub fn is_sink(&self, v: usize) -> bool {
        (0..self.m).all(|j| self.b[v][j] <= 0)
    }

    pub fn is_source(&self, v: usize) -> bool {
        (0..self.m).all(|j| self.b[v][j] >= 0)
    }

    /// Underlying undirected multigraph as a symmetric matrix of |b_ij|.
    pub fn underlying_graph(&self) -> Vec<Vec<i64>> {
        self.b.iter().map(|r| r.iter().map(|x| x.abs()).collect()).collect()
    }

    /// DOT export: mutable vertices are circles, frozen ones squares, and
    /// multiple arrows carry their multiplicity as a label.
    pub fn to_dot(&self, labels: Option<&[String]>) -> String {
        let mut s = String::from("digraph quiver {\n");
        for v in 0..self.m {
            let shape = if self.is_mutable(v) { "circle" } else { "square" };
            let label = labels
                .and_then(|l| l.get(v).cloned())
                .unwrap_or_else(|| (v + 1).to_string());
            let _ = writeln!(s, "  v{} [shape={shape}, label=\"{label}\"];", v + 1);
        }
        for (i, j, c) in self.arrows() {
            if c == 1 {
                let _ = writeln!(s, "  v{} -> v{};", i + 1, j + 1);
            } else {
                let _ = writeln!(s, "  v{} -> v{} [label=\"{c}\"];", i + 1, j + 1);
            }
        }
        s.push_str("}\n");
        s
    }
}

/// Free-function form of [`Quiver::mutate`].
pub fn mutate_quiver(q: &Quiver, k: usize) -> Result<Quiver> {
    q.mutate(k)
}

pub fn quiver_to_matrix(q: &Quiver) -> ExchangeMatrix {
    q.to_matrix()
}

pub fn matrix_to_quiver(b: &ExchangeMatrix) -> Result<Quiver> {
    Quiver::from_matrix(b)
}

pub fn are_isomorphic(a: &Quiver, b: &Quiver) -> bool {
    a.is_isomorphic(b)
}

/// The Markov quiver: double arrows `1 ⇒ 2 ⇒ 3 ⇒ 1`.
pub fn markov_quiver() -> Quiver {
    Quiver::from_arrows(3, 3, &[(0, 1, 2), (1, 2, 2), (2, 0, 2)]).expect("valid")
}

/// The `a × b` grid quiver with every square oriented as a cycle. Vertex
/// `(r, c)` has index `r·b + c`.
pub fn grid_quiver(a: usize, b: usize) -> Result<Quiver> {
    if a == 0 || b == 0 {
        return Err(Error::invalid("grid dimensions must be positive"));
    }
    let idx = |r: usize, c: usize| r * b + c;
    let mut arrows = Vec::new();
    for r in 0..a {
        for c in 0..b {
            if c + 1 < b {
                if (r + c) % 2 == 0 {
                    arrows.push((idx(r, c), idx(r, c + 1), 1));
                } else {
                    arrows.push((idx(r, c + 1), idx(r, c), 1));
                }
            }
            if r + 1 < a {
                if (r + c) % 2 == 1 {
                    arrows.push((idx(r, c), idx(r + 1, c), 1));
                } else {
                    arrows.push((idx(r + 1, c), idx(r, c), 1));
                }
            }
        }
    }
    Quiver::from_arrows(a * b, a * b, &arrows)
}

/// The `a × b` grid with all horizontal arrows pointing right, vertical
/// arrows pointing up, and a diagonal closing each triangle.
pub fn triangulated_grid_quiver(a: usize, b: usize) -> Result<Quiver> {
    if a == 0 || b == 0 {
        return Err(Error::invalid("grid dimensions must be positive"));
    }
    let idx = |r: usize, c: usize| r * b + c;
    let mut arrows = Vec::new();
    for r in 0..a {
        for c in 0..b {
            if c + 1 < b {
                arrows.push((idx(r, c), idx(r, c + 1), 1));
            }
            if r + 1 < a {
                arrows.push((idx(r, c), idx(r + 1, c), 1));
            }
            if r + 1 < a && c + 1 < b {
                arrows.push((idx(r + 1, c + 1), idx(r, c), 1));
            }
        }
    }
    Quiver::from_arrows(a * b, a * b, &arrows)
}

/// Triangular grid with `k` vertices on each side: `C(k+1, 2)` vertices and
/// `3·C(k, 2)` arrows, each upward triangle oriented as a cycle.
pub fn triangular_grid_quiver(k: usize) -> Result<Quiver> {
    if k == 0 {
        return Err(Error::invalid("side length must be positive"));
    }
    let mut index = vec![];
    let mut count = 0;
    for r in 0..k {
        index.push((0..k - r).map(|i| count + i).collect::<Vec<_>>());
        count += k - r;
    }
    let mut arrows = Vec::new();
    for r in 0..k.saturating_sub(1) {
        for i in 0..k - r - 1 {
            let (a, b, c) = (index[r][i], index[r][i + 1], index[r + 1][i]);
            arrows.push((a, b, 1));
            arrows.push((b, c, 1));
            arrows.push((c, a, 1));
        }
    }
    Quiver::from_arrows(count, count, &arrows)
}

/// Cycle on `n` vertices; `forward[i]` orients edge `{i, i+1 mod n}` as
/// `i → i+1`, otherwise backwards.
pub fn cycle_quiver(forward: &[bool]) -> Result<Quiver> {
    let n = forward.len();
    if n < 3 {
        return Err(Error::invalid("a cycle needs at least 3 vertices"));
    }
    let arrows: Vec<_> = forward
        .iter()
        .enumerate()
        .map(|(i, &f)| if f { (i, (i + 1) % n, 1) } else { ((i + 1) % n, i, 1) })
        .collect();
    Quiver::from_arrows(n, n, &arrows)
}

/// Orientation of a tree given as directed edges `tail → head`.
pub fn tree_quiver(n: usize, edges: &[(usize, usize)]) -> Result<Quiver> {
    if edges.len() + 1 != n {
        return Err(Error::invalid("a tree on n vertices has n-1 edges"));
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for &(a, b) in edges {
        if a >= n || b >= n {
            return Err(Error::invalid("edge endpoint out of range"));
        }
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return Err(Error::invalid("edges contain a cycle"));
        }
        parent[ra] = rb;
    }
    let arrows: Vec<_> = edges.iter().map(|&(a, b)| (a, b, 1)).collect();
    Quiver::from_arrows(n, n, &arrows)
}

/// Edges of a simply-laced Dynkin diagram `A_n`, `D_n` (n ≥ 4) or `E_6,7,8`,
/// listed as `(lower, higher)` pairs.
pub fn dynkin_edges(kind: &str) -> Result<(usize, Vec<(usize, usize)>)> {
    let (letter, rank) = kind.split_at(1);
    let n: usize = rank
        .parse()
        .map_err(|_| Error::invalid(format!("bad Dynkin type `{kind}`")))?;
    let path = |len: usize| (0..len.saturating_sub(1)).map(|i| (i, i + 1)).collect::<Vec<_>>();
    match letter.to_ascii_uppercase().as_str() {
        "A" if n >= 1 => Ok((n, path(n))),
        "D" if n >= 4 => {
            let mut e = path(n - 1);
            e.push((n - 3, n - 1));
            Ok((n, e))
        }
        "E" if (6..=8).contains(&n) => {
            let mut e = path(n - 1);
            e.push((2, n - 1));
            Ok((n, e))
        }
        _ => Err(Error::invalid(format!("unsupported Dynkin type `{kind}`"))),
    }
}

/// Orientation of a Dynkin diagram; `forward[e]` keeps edge `e` as listed by
/// [`dynkin_edges`], otherwise reverses it. `None` orients every edge forward.
pub fn dynkin_quiver(kind: &str, forward: Option<&[bool]>) -> Result<Quiver> {
    let (n, edges) = dynkin_edges(kind)?;
    if let Some(f) = forward {
        if f.len() != edges.len() {
            return Err(Error::invalid("orientation length differs from edge count"));
        }
    }
    let directed: Vec<(usize, usize)> = edges
        .iter()
        .enumerate()
        .map(|(e, &(a, b))| {
            if forward.map_or(true, |f| f[e]) {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect();
    tree_quiver(n, &directed)
}

/// Two-row triangulated strip quivers that are mutation equivalent to
/// `D4, D5, E6, E7, E8`: bottom and top rows of lengths `p` and `q`,
/// arrows right along rows, up from bottom to top, and diagonally from the
/// top row back down.
pub fn dynkin_strip_quiver(kind: &str) -> Result<Quiver> {
    let (p, q): (usize, usize) = match kind.to_ascii_uppercase().as_str() {
        "D4" => (2, 2),
        "D5" => (2, 3),
        "E6" => (3, 3),
        "E7" => (3, 4),
        "E8" => (4, 4),
        _ => return Err(Error::invalid(format!("no strip quiver for `{kind}`"))),
    };
    let bottom = |c: usize| c;
    let top = |c: usize| p + c;
    let mut arrows = Vec::new();
    for c in 0..p.saturating_sub(1) {
        arrows.push((bottom(c), bottom(c + 1), 1));
    }
    for c in 0..q.saturating_sub(1) {
        arrows.push((top(c), top(c + 1), 1));
    }
    for c in 0..p.min(q) {
        arrows.push((bottom(c), top(c), 1));
    }
    for c in 0..p.min(q - 1) {
        arrows.push((top(c + 1), bottom(c), 1));
    }
    Quiver::from_arrows(p + q, p + q, &arrows)
}

/// The Somos-4 quiver on vertices 1..4 placed clockwise from the top left:
/// mutating at 1 rotates it by a quarter turn.
pub fn somos4_quiver() -> Quiver {
    Quiver::from_arrows(
        4,
        4,
        &[(1, 0, 1), (3, 0, 1), (1, 3, 2), (3, 2, 1), (2, 1, 3), (0, 2, 2)],
    )
    .expect("valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn markov_matrix() {
        assert_eq!(
            markov_quiver().to_matrix().rows(),
            &[vec![0, 2, -2], vec![-2, 0, 2], vec![2, -2, 0]]
        );
    }

    #[test]
    fn mutation_figure_example() {
        // Vertices a=0, b=1, k=2 mutable, q=3, r=4 frozen.
        // Paths a→k→b, a→k→q, r→k→b; plus b→a which cancels with the new a→b.
        let q = Quiver::from_arrows(
            5,
            3,
            &[(0, 2, 1), (2, 1, 1), (2, 3, 1), (4, 2, 1), (1, 0, 1)],
        )
        .unwrap();
        let mu = q.mutate(2).unwrap();
        let expected = Quiver::from_arrows(
            5,
            3,
            &[(2, 0, 1), (1, 2, 1), (3, 2, 1), (2, 4, 1), (0, 3, 1), (4, 1, 1)],
        )
        .unwrap();
        assert_eq!(mu, expected);
    }

    #[test]
    fn sink_mutation_reverses() {
        let q = Quiver::from_arrows(3, 3, &[(0, 1, 1), (2, 1, 2)]).unwrap();
        assert_eq!(q.mutate(1).unwrap(), q.opposite());
    }

    #[test]
    fn frozen_arrows_rejected() {
        assert!(Quiver::from_arrows(3, 1, &[(1, 2, 1)]).is_err());
        assert!(Quiver::from_arrows(2, 2, &[(0, 0, 1)]).is_err());
        assert!(Quiver::from_arrows(2, 2, &[(0, 1, 1), (1, 0, 1)]).is_err());
    }

    #[test]
    fn markov_is_mutation_rigid() {
        let q = markov_quiver();
        for k in 0..3 {
            assert!(q.mutate(k).unwrap().is_isomorphic(&q));
        }
    }

    #[test]
    fn builders_have_expected_sizes() {
        let t = triangular_grid_quiver(3).unwrap();
        assert_eq!((t.m(), t.arrow_count()), (6, 9));
        let g = grid_quiver(1, 2).unwrap();
        assert_eq!(g.arrows(), vec![(0, 1, 1)]);
        assert_eq!(grid_quiver(3, 4).unwrap().arrow_count(), 17);
    }

    #[test]
    fn somos4_rotation() {
        let q = somos4_quiver();
        // Rotation sends vertex i to i+1: new vertex t is old vertex t-1.
        let rotated = q.relabel(&[3, 0, 1, 2]);
        assert_eq!(q.mutate(0).unwrap(), rotated);
    }

    #[test]
    fn path_isomorphisms() {
        let a = Quiver::from_arrows(3, 3, &[(0, 1, 1), (1, 2, 1)]).unwrap();
        let b = Quiver::from_arrows(3, 3, &[(2, 1, 1), (1, 0, 1)]).unwrap();
        let c = Quiver::from_arrows(3, 3, &[(0, 1, 1), (2, 1, 1)]).unwrap();
        assert!(a.is_isomorphic(&b));
        assert!(!a.is_isomorphic(&c));
    }

    #[test]
    fn dot_export_marks_frozen() {
        let q = Quiver::from_arrows(2, 1, &[(0, 1, 3)]).unwrap();
        let dot = q.to_dot(None);
        assert!(dot.contains("v1 [shape=circle"));
        assert!(dot.contains("v2 [shape=square"));
        assert!(dot.contains("label=\"3\""));
    }
}
