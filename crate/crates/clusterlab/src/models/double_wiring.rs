//! Double wiring diagrams: chamber minors `Δ_{I,J}`, the quiver `Q(D)` and
//! local moves.
//!
//! Thick wire `h` enters at height `h`; thin wire `n−1−h` enters at height
//! `h`. A chamber in gap `g` (between heights `g` and `g+1`) is labeled by
//! the thin wires `I` and the thick wires `J` at heights `0..=g`. Gap `n−1`
//! holds the single chamber above everything, labeled `([n], [n])`.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::models::wiring::{check_reduced, random_reduced_word, reduced_words, set_name};
use crate::quiver::Quiver;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub thick: bool,
    pub pos: usize,
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.pos + 1, if self.thick { 'T' } else { 't' })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DoubleWiringDiagram {
    n: usize,
    word: Vec<Letter>,
}

/// `(I, J)`: rows from the thin wires, columns from the thick wires.
pub type MinorLabel = (Vec<usize>, Vec<usize>);

/// End of a chamber: the time of the crossing and whether it is thick.
pub type End = Option<(usize, bool)>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DoubleChamber {
    pub gap: usize,
    pub left: End,
    pub right: End,
    pub label: MinorLabel,
}

impl DoubleChamber {
    pub fn is_bounded(&self) -> bool {
        self.left.is_some() && self.right.is_some()
    }

    pub fn spans(&self, t: usize) -> bool {
        self.left.map_or(true, |(l, _)| l < t) && self.right.map_or(true, |(r, _)| t < r)
    }

    /// `D3,1`-style name with one-based indices.
    pub fn name(&self) -> String {
        minor_name(&self.label)
    }
}

pub fn minor_name(l: &MinorLabel) -> String {
    format!("D{},{}", set_name(&l.0), set_name(&l.1))
}

impl DoubleWiringDiagram {
    pub fn new(n: usize, word: Vec<Letter>) -> Result<Self> {
        let thin: Vec<usize> = word.iter().filter(|l| !l.thick).map(|l| l.pos).collect();
        let thick: Vec<usize> = word.iter().filter(|l| l.thick).map(|l| l.pos).collect();
        check_reduced(n, &thick, true)?;
        check_reduced(n, &thin, false)?;
        Ok(DoubleWiringDiagram { n, word })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn word(&self) -> &[Letter] {
        &self.word
    }

    /// Chambers gap by gap, left to right, ending with the top chamber.
    pub fn chambers(&self) -> Vec<DoubleChamber> {
        let n = self.n;
        let mut out = Vec::new();
        for g in 0..n.saturating_sub(1) {
            let mut thin: Vec<usize> = (0..n).rev().collect();
            let mut thick: Vec<usize> = (0..n).collect();
            let label = |thin: &[usize], thick: &[usize]| {
                let mut i = thin[..=g].to_vec();
                let mut j = thick[..=g].to_vec();
                i.sort_unstable();
                j.sort_unstable();
                (i, j)
            };
            let mut left = None;
            for (t, l) in self.word.iter().enumerate() {
                if l.pos == g {
                    out.push(DoubleChamber {
                        gap: g,
                        left,
                        right: Some((t, l.thick)),
                        label: label(&thin, &thick),
                    });
                    left = Some((t, l.thick));
                }
                if l.thick {
                    thick.swap(l.pos, l.pos + 1);
                } else {
                    thin.swap(l.pos, l.pos + 1);
                }
            }
            out.push(DoubleChamber {
                gap: g,
                left,
                right: None,
                label: label(&thin, &thick),
            });
        }
        out.push(DoubleChamber {
            gap: n - 1,
            left: None,
            right: None,
            label: ((0..n).collect(), (0..n).collect()),
        });
        out
    }

    /// Chambers in quiver vertex order: bounded first.
    pub fn vertex_chambers(&self) -> Vec<DoubleChamber> {
        let (mut bounded, frozen): (Vec<_>, Vec<_>) = self.chambers().into_iter().partition(DoubleChamber::is_bounded);
        bounded.extend(frozen);
        bounded
    }

    pub fn cluster_labels(&self) -> BTreeSet<MinorLabel> {
        self.chambers().into_iter().map(|c| c.label).collect()
    }

    /// `Q(D)` on [`DoubleWiringDiagram::vertex_chambers`].
    pub fn quiver(&self) -> Quiver {
        let cs = self.vertex_chambers();
        let n = cs.iter().filter(|c| c.is_bounded()).count();
        let m = cs.len();
        let mut b = vec![vec![0i64; m]; m];
        for (u, c) in cs.iter().enumerate() {
            for (v, d) in cs.iter().enumerate() {
                if u != v && (u < n || v < n) && arrow(c, d) {
                    b[u][v] += 1;
                    b[v][u] -= 1;
                }
            }
        }
        Quiver::from_net(n, b).expect("chamber arrows avoid frozen pairs")
    }

    /// `Q(D)` with vertices listed by chamber label in the given order.
    pub fn quiver_by_labels(&self, labels: &[MinorLabel]) -> Result<Quiver> {
        let cs = self.vertex_chambers();
        let pos: HashMap<&MinorLabel, usize> = cs.iter().enumerate().map(|(i, c)| (&c.label, i)).collect();
        let order = labels
            .iter()
            .map(|l| pos.get(l).copied().ok_or_else(|| Error::invalid("unknown chamber label")))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.quiver().relabel(&order))
    }

    /// Thin braid moves, thick braid moves and mixed swaps `t_i T_i ↔ T_i t_i`
    /// on consecutive letters.
    pub fn local_moves(&self) -> Vec<LocalMove> {
        let w = &self.word;
        let mut out = Vec::new();
        for t in 0..w.len().saturating_sub(2) {
            let (a, b, c) = (w[t], w[t + 1], w[t + 2]);
            if a == c && a.thick == b.thick && a.pos.abs_diff(b.pos) == 1 {
                let mut nw = w.clone();
                nw[t] = b;
                nw[t + 1] = a;
                nw[t + 2] = b;
                out.push(self.make_move(t, t + 2, a.pos, b.pos, nw, MoveKind::Braid { thick: a.thick }));
            }
        }
        for t in 0..w.len().saturating_sub(1) {
            let (a, b) = (w[t], w[t + 1]);
            if a.pos == b.pos && a.thick != b.thick {
                let mut nw = w.clone();
                nw.swap(t, t + 1);
                out.push(self.make_move(t, t + 1, a.pos, a.pos, nw, MoveKind::Mixed));
            }
        }
        out
    }

    fn make_move(&self, l: usize, r: usize, old_gap: usize, new_gap: usize, word: Vec<Letter>, kind: MoveKind) -> LocalMove {
        let result = DoubleWiringDiagram { n: self.n, word };
        let find = |d: &DoubleWiringDiagram, g: usize| {
            d.chambers()
                .into_iter()
                .find(|c| c.gap == g && c.left.map(|e| e.0) == Some(l) && c.right.map(|e| e.0) == Some(r))
                .expect("a local move bounds a chamber")
                .label
        };
        LocalMove {
            time: l,
            kind,
            removed: find(self, old_gap),
            added: find(&result, new_gap),
            result,
        }
    }

    /// Swaps of adjacent letters that commute: different colors at
    /// different positions, or one color at positions two or more apart.
    pub fn commutation_moves(&self) -> Vec<DoubleWiringDiagram> {
        let w = &self.word;
        let mut out = Vec::new();
        for t in 0..w.len().saturating_sub(1) {
            let (a, b) = (w[t], w[t + 1]);
            let commute = if a.thick == b.thick { a.pos.abs_diff(b.pos) >= 2 } else { a.pos != b.pos };
            if commute {
                let mut nw = w.clone();
                nw.swap(t, t + 1);
                out.push(DoubleWiringDiagram { n: self.n, word: nw });
            }
        }
        out
    }

    /// Letters as `2t,1T,…` (one-based positions, `t` thin, `T` thick).
    pub fn to_text(&self) -> String {
        let ls: Vec<String> = self.word.iter().map(Letter::to_string).collect();
        ls.join(",")
    }

    pub fn parse_text(s: &str) -> Result<Self> {
        let mut word = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (num, tag) = part.split_at(part.len() - 1);
            let thick = match tag {
                "T" => true,
                "t" => false,
                _ => return Err(Error::parse(format!("letter {part:?} needs a t or T suffix"))),
            };
            let p: usize = num.parse().map_err(|_| Error::parse(format!("bad letter {part:?}")))?;
            if p == 0 {
                return Err(Error::parse("crossing positions start at 1"));
            }
            word.push(Letter { thick, pos: p - 1 });
        }
        let half = word.len() / 2;
        let n = (1..64)
            .find(|n| n * (n - 1) / 2 == half)
            .ok_or_else(|| Error::parse("word length is not n(n-1)"))?;
        Self::new(n, word)
    }
}

impl fmt::Display for DoubleWiringDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoveKind {
    Braid { thick: bool },
    Mixed,
}

/// A local move exchanging chamber `removed` for chamber `added`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalMove {
    pub time: usize,
    pub kind: MoveKind,
    pub removed: MinorLabel,
    pub added: MinorLabel,
    pub result: DoubleWiringDiagram,
}

fn end_above(c: &DoubleChamber, t: usize, d: &DoubleChamber) -> bool {
    // an end of c sits in gap c.gap, directly above gap c.gap − 1
    d.gap + 1 == c.gap && d.spans(t)
}

fn end_below(c: &DoubleChamber, t: usize, d: &DoubleChamber) -> bool {
    c.gap + 1 == d.gap && d.spans(t)
}

/// `x` lies entirely directly above or below `y`.
fn lies_beside(x: &DoubleChamber, y: &DoubleChamber) -> bool {
    let (Some((l, _)), Some((r, _))) = (x.left, x.right) else {
        return false;
    };
    x.gap.abs_diff(y.gap) == 1 && y.spans(l) && y.spans(r)
}

fn arrow(c: &DoubleChamber, d: &DoubleChamber) -> bool {
    // (i)
    if let (Some((t, true)), Some((s, _))) = (c.right, d.left) {
        if t == s {
            return true;
        }
    }
    if let (Some((t, false)), Some((s, _))) = (c.left, d.right) {
        if t == s {
            return true;
        }
    }
    // (ii)
    if matches!((d.left, d.right), (Some((_, false)), Some((_, true)))) && lies_beside(d, c) {
        return true;
    }
    // (iii)
    if matches!((c.left, c.right), (Some((_, true)), Some((_, false)))) && lies_beside(c, d) {
        return true;
    }
    // (iv)
    if let (Some((t1, false)), Some((t2, false))) = (d.left, c.right) {
        if end_above(d, t1, c) && end_below(c, t2, d) {
            return true;
        }
    }
    if let (Some((t1, true)), Some((t2, true))) = (d.right, c.left) {
        if end_above(d, t1, c) && end_below(c, t2, d) {
            return true;
        }
    }
    // (v)
    if let (Some((t1, true)), Some((t2, true))) = (c.left, d.right) {
        if end_above(c, t1, d) && end_below(d, t2, c) {
            return true;
        }
    }
    if let (Some((t1, false)), Some((t2, false))) = (c.right, d.left) {
        if end_above(c, t1, d) && end_below(d, t2, c) {
            return true;
        }
    }
    false
}

/// All shuffles of a thin and a thick reduced word.
pub fn all_double_wiring_diagrams(n: usize) -> Vec<DoubleWiringDiagram> {
    let words = reduced_words(n);
    let len = n * (n - 1) / 2;
    let mut out = Vec::new();
    for thin in &words {
        for thick in &words {
            for mask in 0u64..(1 << (2 * len)) {
                if mask.count_ones() as usize != len {
                    continue;
                }
                let (mut i, mut j) = (0, 0);
                let word = (0..2 * len)
                    .map(|t| {
                        if mask >> t & 1 == 1 {
                            j += 1;
                            Letter { thick: true, pos: thick[j - 1] }
                        } else {
                            i += 1;
                            Letter { thick: false, pos: thin[i - 1] }
                        }
                    })
                    .collect();
                out.push(DoubleWiringDiagram { n, word });
            }
        }
    }
    out
}

/// A random double wiring diagram: a random shuffle of two random reduced words.
pub fn random_double_wiring<R: Rng>(n: usize, rng: &mut R) -> DoubleWiringDiagram {
    let thin = random_reduced_word(n, rng);
    let thick = random_reduced_word(n, rng);
    let (mut i, mut j) = (0, 0);
    let mut word = Vec::with_capacity(thin.len() + thick.len());
    while i < thin.len() || j < thick.len() {
        let left_thin = thin.len() - i;
        let left_thick = thick.len() - j;
        if rng.gen_range(0..left_thin + left_thick) < left_thin {
            word.push(Letter { thick: false, pos: thin[i] });
            i += 1;
        } else {
            word.push(Letter { thick: true, pos: thick[j] });
            j += 1;
        }
    }
    DoubleWiringDiagram { n, word }
}

/// Clusters of chamber minors reachable by local and commutation moves, with
/// the adjacency given by local moves.
#[derive(Clone, Debug)]
pub struct ClusterGraph {
    pub clusters: Vec<BTreeSet<MinorLabel>>,
    pub adjacency: Vec<BTreeSet<usize>>,
    pub diagrams: usize,
}

impl ClusterGraph {
    /// Histogram degree → number of clusters.
    pub fn degree_profile(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for a in &self.adjacency {
            *h.entry(a.len()).or_insert(0) += 1;
        }
        h
    }
}

/// Breadth-first search over diagrams from `start`.
pub fn double_wiring_cluster_graph(start: &DoubleWiringDiagram) -> ClusterGraph {
    let mut seen: BTreeSet<DoubleWiringDiagram> = BTreeSet::new();
    let mut queue = VecDeque::new();
    let mut index: BTreeMap<BTreeSet<MinorLabel>, usize> = BTreeMap::new();
    let mut clusters = Vec::new();
    let mut adjacency: Vec<BTreeSet<usize>> = Vec::new();
    let mut id = |c: BTreeSet<MinorLabel>, clusters: &mut Vec<_>, adjacency: &mut Vec<BTreeSet<usize>>| {
        *index.entry(c.clone()).or_insert_with(|| {
            clusters.push(c);
            adjacency.push(BTreeSet::new());
            clusters.len() - 1
        })
    };
    seen.insert(start.clone());
    queue.push_back(start.clone());
    while let Some(d) = queue.pop_front() {
        let u = id(d.cluster_labels(), &mut clusters, &mut adjacency);
        for mv in d.local_moves() {
            let v = id(mv.result.cluster_labels(), &mut clusters, &mut adjacency);
            if u != v {
                adjacency[u].insert(v);
                adjacency[v].insert(u);
            }
            if seen.insert(mv.result.clone()) {
                queue.push_back(mv.result);
            }
        }
        for e in d.commutation_moves() {
            if seen.insert(e.clone()) {
                queue.push_back(e);
            }
        }
    }
    ClusterGraph {
        clusters,
        adjacency,
        diagrams: seen.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn figure_diagram() -> DoubleWiringDiagram {
        DoubleWiringDiagram::parse_text("2t,1T,2T,1t,2t,1T").unwrap()
    }

    #[test]
    fn figure_chamber_minors() {
        let d = figure_diagram();
        let names: Vec<String> = d.chambers().iter().map(DoubleChamber::name).collect();
        assert_eq!(
            names,
            vec!["D3,1", "D3,2", "D1,2", "D1,3", "D23,12", "D13,12", "D13,23", "D12,23", "D123,123"]
        );
    }

    #[test]
    fn figure_quiver() {
        let d = figure_diagram();
        let names: Vec<String> = d.vertex_chambers().iter().map(DoubleChamber::name).collect();
        let q = d.quiver();
        let mut got: Vec<(String, String)> = q
            .arrows()
            .into_iter()
            .map(|(a, b, k)| {
                assert_eq!(k, 1);
                (names[a].clone(), names[b].clone())
            })
            .collect();
        got.sort();
        let mut expected: Vec<(String, String)> = [
            ("D123,123", "D13,12"),
            ("D13,12", "D23,12"),
            ("D13,12", "D13,23"),
            ("D13,23", "D123,123"),
            ("D13,23", "D1,2"),
            ("D12,23", "D13,23"),
            ("D3,1", "D3,2"),
            ("D3,2", "D13,12"),
            ("D1,2", "D3,2"),
            ("D1,2", "D1,3"),
        ]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
        expected.sort();
        assert_eq!(got, expected);
        let mutable: Vec<&String> = names[..q.n()].iter().collect();
        assert_eq!(mutable, vec!["D3,2", "D1,2", "D13,12", "D13,23"]);
    }

    #[test]
    fn text_round_trip() {
        let d = figure_diagram();
        assert_eq!(d.to_text(), "2t,1T,2T,1t,2t,1T");
        assert!(DoubleWiringDiagram::parse_text("2t,2t,1T").is_err());
        assert!(DoubleWiringDiagram::parse_text("2x,1T").is_err());
    }

    #[test]
    fn counts() {
        assert_eq!(all_double_wiring_diagrams(3).len(), 80);
        for d in all_double_wiring_diagrams(3) {
            assert_eq!(d.chambers().len(), 9);
        }
    }
}
