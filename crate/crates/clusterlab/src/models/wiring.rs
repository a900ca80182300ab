//! Wiring diagrams for the longest permutation, chamber labels, the quiver
//! `Q(D)` and braid moves.
//!
//! Heights and wires are zero-based: wire `h` enters at height `h`, counted
//! from the bottom. A letter `p` crosses the wires at heights `p` and `p+1`.
//! Gap `g` is the strip between heights `g` and `g+1`; a chamber in gap `g`
//! is labeled by the wires at heights `0..=g`.

use std::collections::HashMap;
use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::quiver::Quiver;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WiringDiagram {
    n: usize,
    word: Vec<usize>,
}

/// A chamber: its gap, the times of its left and right ends (the crossings
/// delimiting it, if any) and the set of wires below it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chamber {
    pub gap: usize,
    pub left: Option<usize>,
    pub right: Option<usize>,
    pub label: Vec<usize>,
}

impl Chamber {
    pub fn is_bounded(&self) -> bool {
        self.left.is_some() && self.right.is_some()
    }

    /// True when time `t` lies strictly inside the chamber's extent.
    pub fn spans(&self, t: usize) -> bool {
        self.left.map_or(true, |l| l < t) && self.right.map_or(true, |r| t < r)
    }

    /// `P12`-style name with one-based wires.
    pub fn name(&self) -> String {
        set_name(&self.label)
    }
}

pub(crate) fn set_name(s: &[usize]) -> String {
    let digits: Vec<String> = s.iter().map(|w| (w + 1).to_string()).collect();
    if s.iter().all(|&w| w < 9) {
        digits.concat()
    } else {
        digits.join(",")
    }
}

/// Checks that `word` is a reduced word for the longest permutation of
/// `n` strands; the strands are assumed to start in increasing order
/// (`ascending`) or decreasing order.
pub(crate) fn check_reduced(n: usize, word: &[usize], ascending: bool) -> Result<()> {
    if n < 1 {
        return Err(Error::invalid("need at least one wire"));
    }
    if word.len() != n * (n - 1) / 2 {
        return Err(Error::invalid(format!(
            "a reduced word for the longest element of S_{n} has length {}, found {}",
            n * (n - 1) / 2,
            word.len()
        )));
    }
    let mut h: Vec<usize> = if ascending { (0..n).collect() } else { (0..n).rev().collect() };
    for &p in word {
        if p + 1 >= n {
            return Err(Error::invalid(format!("crossing position {} out of range", p + 1)));
        }
        if (h[p] < h[p + 1]) != ascending {
            return Err(Error::invalid("word is not reduced: two wires cross twice"));
        }
        h.swap(p, p + 1);
    }
    Ok(())
}

impl WiringDiagram {
    pub fn new(n: usize, word: Vec<usize>) -> Result<Self> {
        check_reduced(n, &word, true)?;
        Ok(WiringDiagram { n, word })
    }

    pub fn from_one_based(n: usize, word: &[usize]) -> Result<Self> {
        if word.contains(&0) {
            return Err(Error::invalid("crossing positions start at 1"));
        }
        Self::new(n, word.iter().map(|p| p - 1).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// Chambers gap by gap, left to right. The region above everything
    /// (labeled by all wires) is not a chamber.
    pub fn chambers(&self) -> Vec<Chamber> {
        let n = self.n;
        let mut out = Vec::new();
        for g in 0..n.saturating_sub(1) {
            let mut heights: Vec<usize> = (0..n).collect();
            let mut left = None;
            for (t, &p) in self.word.iter().enumerate() {
                if p == g {
                    let mut label = heights[..=g].to_vec();
                    label.sort_unstable();
                    out.push(Chamber { gap: g, left, right: Some(t), label });
                    left = Some(t);
                }
                heights.swap(p, p + 1);
            }
            let mut label = heights[..=g].to_vec();
            label.sort_unstable();
            out.push(Chamber { gap: g, left, right: None, label });
        }
        out
    }

    /// Chambers in quiver vertex order: bounded ones first.
    pub fn vertex_chambers(&self) -> Vec<Chamber> {
        let (mut bounded, frozen): (Vec<Chamber>, Vec<Chamber>) =
            self.chambers().into_iter().partition(Chamber::is_bounded);
        bounded.extend(frozen);
        bounded
    }

    /// `Q(D)` on [`WiringDiagram::vertex_chambers`].
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
    pub fn quiver_by_labels(&self, labels: &[Vec<usize>]) -> Result<Quiver> {
        let cs = self.vertex_chambers();
        let pos: HashMap<&Vec<usize>, usize> = cs.iter().enumerate().map(|(i, c)| (&c.label, i)).collect();
        let order = labels
            .iter()
            .map(|l| pos.get(l).copied().ok_or_else(|| Error::invalid("unknown chamber label")))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.quiver().relabel(&order))
    }

    /// All braid moves `s_i s_{i+1} s_i ↔ s_{i+1} s_i s_{i+1}` available on
    /// consecutive letters.
    pub fn braid_moves(&self) -> Vec<BraidMove> {
        let mut out = Vec::new();
        for t in 0..self.word.len().saturating_sub(2) {
            let (a, b, c) = (self.word[t], self.word[t + 1], self.word[t + 2]);
            if a == c && (a + 1 == b || b + 1 == a) {
                let mut w = self.word.clone();
                w[t] = b;
                w[t + 1] = a;
                w[t + 2] = b;
                let old = self.chamber_between(a, t, t + 2);
                let new = WiringDiagram { n: self.n, word: w };
                let fresh = new.chamber_between(b, t, t + 2);
                out.push(BraidMove {
                    time: t,
                    removed: old,
                    added: fresh,
                    result: new,
                });
            }
        }
        out
    }

    /// Swaps of adjacent letters `p, q` with `|p − q| ≥ 2`; the chambers are
    /// unchanged.
    pub fn commutation_moves(&self) -> Vec<WiringDiagram> {
        let mut out = Vec::new();
        for t in 0..self.word.len().saturating_sub(1) {
            if self.word[t].abs_diff(self.word[t + 1]) >= 2 {
                let mut w = self.word.clone();
                w.swap(t, t + 1);
                out.push(WiringDiagram { n: self.n, word: w });
            }
        }
        out
    }

    fn chamber_between(&self, gap: usize, l: usize, r: usize) -> Vec<usize> {
        self.chambers()
            .into_iter()
            .find(|c| c.gap == gap && c.left == Some(l) && c.right == Some(r))
            .expect("a braid pattern bounds a chamber")
            .label
    }

    pub fn to_text(&self) -> String {
        let ps: Vec<String> = self.word.iter().map(|p| (p + 1).to_string()).collect();
        ps.join(",")
    }

    /// Reads a comma-separated one-based word; `n` is inferred from its length.
    pub fn parse_text(s: &str) -> Result<Self> {
        let word = parse_positions(s)?;
        let n = strands_for_length(word.len())?;
        Self::from_one_based(n, &word)
    }
}

impl fmt::Display for WiringDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

pub(crate) fn parse_positions(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse::<usize>().map_err(|_| Error::parse(format!("bad crossing position {x:?}"))))
        .collect()
}

/// The `n` with `n(n−1)/2 = len`.
pub(crate) fn strands_for_length(len: usize) -> Result<usize> {
    (1..64)
        .find(|n| n * (n - 1) / 2 == len)
        .ok_or_else(|| Error::parse(format!("{len} is not the length of a longest-element word")))
}

/// A braid move at letters `time..time+3`, exchanging chamber `removed`
/// for chamber `added`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidMove {
    pub time: usize,
    pub removed: Vec<usize>,
    pub added: Vec<usize>,
    pub result: WiringDiagram,
}

/// Arrow rule for chambers of an ordinary wiring diagram.
fn arrow(c: &Chamber, d: &Chamber) -> bool {
    if c.right.is_some() && c.right == d.left {
        return true;
    }
    let (Some(l), Some(r)) = (c.left, d.right) else {
        return false;
    };
    // The left end of c sits in gap c.gap, directly above gap c.gap − 1 and
    // directly below gap c.gap + 1; likewise for the right end of d.
    (d.gap + 1 == c.gap || c.gap + 1 == d.gap) && d.spans(l) && c.spans(r)
}

/// Every reduced word for the longest permutation of `n` strands.
pub fn reduced_words(n: usize) -> Vec<Vec<usize>> {
    fn go(h: &mut Vec<usize>, word: &mut Vec<usize>, len: usize, out: &mut Vec<Vec<usize>>) {
        if word.len() == len {
            out.push(word.clone());
            return;
        }
        for p in 0..h.len() - 1 {
            if h[p] < h[p + 1] {
                h.swap(p, p + 1);
                word.push(p);
                go(h, word, len, out);
                word.pop();
                h.swap(p, p + 1);
            }
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    go(&mut (0..n).collect(), &mut Vec::new(), n * (n - 1) / 2, &mut out);
    out
}

/// A uniformly random step-by-step reduced word (each available crossing
/// equally likely at every step).
pub fn random_reduced_word<R: Rng>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut h: Vec<usize> = (0..n).collect();
    let mut word = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
    loop {
        let ps: Vec<usize> = (0..n.saturating_sub(1)).filter(|&p| h[p] < h[p + 1]).collect();
        if ps.is_empty() {
            return word;
        }
        let p = ps[rng.gen_range(0..ps.len())];
        h.swap(p, p + 1);
        word.push(p);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(d: &WiringDiagram) -> Vec<String> {
        d.chambers().iter().map(Chamber::name).collect()
    }

    #[test]
    fn chambers_of_121() {
        let d = WiringDiagram::parse_text("1,2,1").unwrap();
        assert_eq!(labels(&d), vec!["1", "2", "3", "12", "23"]);
        let bounded: Vec<String> = d.chambers().iter().filter(|c| c.is_bounded()).map(Chamber::name).collect();
        assert_eq!(bounded, vec!["2"]);
    }

    #[test]
    fn quiver_of_121() {
        let d = WiringDiagram::parse_text("1,2,1").unwrap();
        let names: Vec<String> = d.vertex_chambers().iter().map(Chamber::name).collect();
        let q = d.quiver();
        let idx = |s: &str| names.iter().position(|x| x == s).unwrap();
        let mut arrows: Vec<(String, String)> = q
            .arrows()
            .into_iter()
            .map(|(a, b, _)| (names[a].clone(), names[b].clone()))
            .collect();
        arrows.sort();
        let expected = [("1", "2"), ("2", "12"), ("2", "3"), ("23", "2")];
        let mut expected: Vec<(String, String)> = expected.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        expected.sort();
        assert_eq!(arrows, expected);
        assert_eq!(q.net(idx("12"), idx("23")), 0);
    }

    #[test]
    fn counts_of_reduced_words() {
        let counts: Vec<usize> = (1..=5).map(|n| reduced_words(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 16, 768]);
    }

    #[test]
    fn rejects_non_reduced() {
        assert!(WiringDiagram::from_one_based(3, &[1, 1, 2]).is_err());
        assert!(WiringDiagram::from_one_based(3, &[1, 2]).is_err());
        assert!(WiringDiagram::parse_text("1,2,x").is_err());
    }

    #[test]
    fn chamber_count() {
        for n in 2..=5 {
            for w in reduced_words(n).into_iter().take(20) {
                let d = WiringDiagram::new(n, w).unwrap();
                assert_eq!(d.chambers().len(), (n - 1) * (n + 2) / 2);
            }
        }
    }
}
