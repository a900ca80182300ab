//! Bounded breadth-first exploration of mutation classes and exchange graphs.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;
use std::hash::Hash;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::canonical_labeling;
use crate::error::{Error, Result};
use crate::matrix::ExchangeMatrix;
use crate::quiver::{Quiver, QuiverKey};
use crate::seed::{Seed, SeedKey};

/// Search bounds: at most `max_nodes` nodes, none farther than `max_depth`
/// mutations from the start.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExplorationLimits {
    pub max_nodes: usize,
    pub max_depth: usize,
}

impl ExplorationLimits {
    pub fn new(max_nodes: usize, max_depth: usize) -> Result<Self> {
        if max_nodes == 0 || max_depth == 0 {
            return Err(Error::invalid("limits must be positive"));
        }
        Ok(ExplorationLimits { max_nodes, max_depth })
    }
}

impl Default for ExplorationLimits {
    fn default() -> Self {
        ExplorationLimits {
            max_nodes: 10_000,
            max_depth: 64,
        }
    }
}

/// Result of a bounded exploration. Edges `[i, k, j]` record that mutating
/// node `i` in direction `k` (zero-based) gives node `j`; every explored node
/// carries one edge per direction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MutationClassGraph {
    pub nodes: Vec<String>,
    pub edges: Vec<[usize; 3]>,
    pub truncated: bool,
    /// Distance of each node from the start.
    pub depth: Vec<usize>,
}

impl MutationClassGraph {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Distinct neighbors of a node, excluding itself.
    pub fn neighbors(&self, v: usize) -> BTreeSet<usize> {
        self.edges
            .iter()
            .filter(|e| e[0] == v && e[2] != v)
            .map(|e| e[2])
            .chain(self.edges.iter().filter(|e| e[2] == v && e[0] != v).map(|e| e[0]))
            .collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).len()
    }

    /// The degree shared by all nodes, if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degree(0);
        (1..self.len()).all(|v| self.degree(v) == d).then_some(d)
    }

    /// Whether every recorded edge `v → j` out of an explored node `j` has a
    /// partner edge `j → v`. Stored states may be relabeled copies, so the
    /// partner's direction label can differ.
    pub fn is_symmetric(&self) -> bool {
        let expanded: BTreeSet<usize> = self.edges.iter().map(|e| e[0]).collect();
        let pairs: BTreeSet<(usize, usize)> = self.edges.iter().map(|e| (e[0], e[2])).collect();
        pairs
            .iter()
            .all(|&(a, b)| !expanded.contains(&b) || pairs.contains(&(b, a)))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graphs serialize")
    }

    /// DOT export; node labels are 1-based positions, edge labels 1-based
    /// directions, each undirected edge drawn once.
    pub fn to_dot(&self, highlight: Option<usize>) -> String {
        let mut s = String::from("graph exchange {\n");
        for (i, key) in self.nodes.iter().enumerate() {
            let style = if Some(i) == highlight { ", style=filled" } else { "" };
            let _ = writeln!(s, "  n{} [label=\"{}\", tooltip=\"{}\"{style}];", i + 1, i + 1, key.replace('"', "'"));
        }
        let mut seen = BTreeSet::new();
        for e in &self.edges {
            let (a, b) = (e[0].min(e[2]), e[0].max(e[2]));
            if a == b || !seen.insert((a, b)) {
                continue;
            }
            let _ = writeln!(s, "  n{} -- n{} [label=\"{}\"];", a + 1, b + 1, e[1] + 1);
        }
        s.push_str("}\n");
        s
    }
}

/// Raw result of [`bfs`]: the graph plus the representative state of each node.
pub struct Exploration<S> {
    pub graph: MutationClassGraph,
    pub states: Vec<S>,
    /// Index of the node whose key matched the target, if one was given.
    pub found: Option<usize>,
}

/// Frontier-parallel breadth-first search. Children of the whole frontier
/// are computed in parallel, then merged in (node, direction) order, so the
/// numbering of nodes never depends on scheduling.
pub fn bfs<S, K, FK, FS>(
    start: S,
    directions: usize,
    key: FK,
    step: FS,
    limits: ExplorationLimits,
    target: Option<&K>,
) -> Result<Exploration<S>>
where
    S: Clone + Send + Sync,
    K: Clone + Eq + Hash + Send + Sync + ToString,
    FK: Fn(&S) -> K + Sync,
    FS: Fn(&S, usize) -> Result<S> + Sync,
{
    let mut index: HashMap<K, usize> = HashMap::new();
    let k0 = key(&start);
    index.insert(k0.clone(), 0);
    let mut graph = MutationClassGraph {
        nodes: vec![k0.to_string()],
        edges: Vec::new(),
        truncated: false,
        depth: vec![0],
    };
    let mut states = vec![start];
    if target == Some(&k0) {
        return Ok(Exploration { graph, states, found: Some(0) });
    }
    let mut frontier: Vec<usize> = vec![0];
    let mut depth = 0;
    while !frontier.is_empty() {
        let jobs: Vec<(usize, usize)> = frontier
            .iter()
            .flat_map(|&v| (0..directions).map(move |k| (v, k)))
            .collect();
        // a child whose entries leave i64 is unrepresentable: it is treated
        // like a limit and marks the graph truncated
        let children: Vec<Option<(S, K)>> = jobs
            .par_iter()
            .map(|&(v, k)| match step(&states[v], k) {
                Ok(s) => {
                    let kk = key(&s);
                    Ok(Some((s, kk)))
                }
                Err(Error::Overflow) => Ok(None),
                Err(e) => Err(e),
            })
            .collect::<Result<Vec<_>>>()?;
        let mut next = Vec::new();
        for ((v, k), child) in jobs.into_iter().zip(children) {
            let Some((s, kk)) = child else {
                graph.truncated = true;
                continue;
            };
            let j = match index.get(&kk) {
                Some(&j) => j,
                None => {
                    if depth + 1 > limits.max_depth || graph.nodes.len() >= limits.max_nodes {
                        graph.truncated = true;
                        continue;
                    }
                    let j = graph.nodes.len();
                    index.insert(kk.clone(), j);
                    graph.nodes.push(kk.to_string());
                    graph.depth.push(depth + 1);
                    states.push(s);
                    next.push(j);
                    if target == Some(&kk) {
                        graph.edges.push([v, k, j]);
                        return Ok(Exploration { graph, states, found: Some(j) });
                    }
                    j
                }
            };
            graph.edges.push([v, k, j]);
        }
        frontier = next;
        depth += 1;
    }
    Ok(Exploration { graph, states, found: None })
}

/// Bounded exploration of the mutation class of a quiver, nodes keyed by
/// canonical form. Each stored state is the canonically relabeled quiver.
pub fn explore_quiver_class_states(q: &Quiver, limits: ExplorationLimits) -> Result<Exploration<Quiver>> {
    let canonical = |q: &Quiver| q.relabel(&q.canonical_order());
    bfs(
        canonical(q),
        q.n(),
        |q: &Quiver| q.canonical_form(),
        |q: &Quiver, k| Ok(canonical(&q.mutate(k)?)),
        limits,
        None::<&QuiverKey>,
    )
}

pub fn explore_quiver_class(q: &Quiver, limits: ExplorationLimits) -> Result<MutationClassGraph> {
    Ok(explore_quiver_class_states(q, limits)?.graph)
}

/// Outcome of a bounded equivalence search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Equivalence {
    /// Found at the given mutation distance.
    Yes { depth: usize },
    /// The class was exhausted without finding the target.
    No,
    /// A limit was hit first.
    Unknown,
}

pub fn are_mutation_equivalent(a: &Quiver, b: &Quiver, limits: ExplorationLimits) -> Result<Equivalence> {
    if a.m() != b.m() || a.n() != b.n() {
        return Ok(Equivalence::No);
    }
    let target = b.canonical_form();
    let canonical = |q: &Quiver| q.relabel(&q.canonical_order());
    let ex = bfs(
        canonical(a),
        a.n(),
        |q: &Quiver| q.canonical_form(),
        |q: &Quiver, k| Ok(canonical(&q.mutate(k)?)),
        limits,
        Some(&target),
    )?;
    Ok(match ex.found {
        Some(j) => Equivalence::Yes { depth: ex.graph.depth[j] },
        None if ex.graph.truncated => Equivalence::Unknown,
        None => Equivalence::No,
    })
}

/// Exchange graph of the seed pattern of `bt`, on unlabeled seeds.
pub fn explore_seeds(start: &Seed, limits: ExplorationLimits) -> Result<Exploration<Seed>> {
    bfs(
        start.clone(),
        start.n(),
        Seed::unlabeled_key,
        |s: &Seed, k| s.mutate(k),
        limits,
        None::<&SeedKey>,
    )
}

pub fn exchange_graph(bt: &ExchangeMatrix, limits: ExplorationLimits) -> Result<MutationClassGraph> {
    Ok(explore_seeds(&Seed::initial(bt.clone()), limits)?.graph)
}

/// Bounded exploration of the class of a matrix up to simultaneous
/// permutation of mutable indices (and of frozen rows).
pub fn explore_matrix_class(bt: &ExchangeMatrix, limits: ExplorationLimits) -> Result<Exploration<ExchangeMatrix>> {
    bfs(
        bt.clone(),
        bt.n(),
        matrix_key,
        |b: &ExchangeMatrix, k| b.mutate(k),
        limits,
        None::<&MatrixKey>,
    )
}

/// Canonical form of an extended matrix under relabeling.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatrixKey(Vec<i64>);

impl std::fmt::Display for MatrixKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let entries: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", entries.join(","))
    }
}

/// Embeds the `m × n` matrix in an `m × m` one (zeros in the frozen
/// columns) and takes its canonical labeling.
pub fn matrix_key(b: &ExchangeMatrix) -> MatrixKey {
    let (m, n) = (b.m(), b.n());
    let a: Vec<Vec<i64>> = (0..m)
        .map(|i| (0..m).map(|j| if j < n { b.get(i, j) } else { 0 }).collect())
        .collect();
    let cells = vec![(0..n).collect(), (n..m).collect()];
    MatrixKey(canonical_labeling(&a, cells).1)
}

/// Result of probing whether a class is finite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FiniteProbe {
    Finite(usize),
    Exceeded,
}

pub fn finite_mutation_type_probe(q: &Quiver, limits: ExplorationLimits) -> Result<FiniteProbe> {
    let g = explore_quiver_class(q, limits)?;
    Ok(if g.truncated {
        FiniteProbe::Exceeded
    } else {
        FiniteProbe::Finite(g.len())
    })
}

/// One mutation class in [`acyclic_class_experiment`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AcyclicClass {
    pub representative: QuiverKey,
    pub class_size: usize,
    pub truncated: bool,
    pub acyclic_members: usize,
    /// Canonical forms of the underlying undirected graphs of acyclic members.
    pub underlying_graphs: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AcyclicReport {
    pub vertices: usize,
    pub quivers: usize,
    pub classes: Vec<AcyclicClass>,
}

impl AcyclicReport {
    /// True when every class has one underlying graph among its acyclic members.
    pub fn consistent(&self) -> bool {
        self.classes.iter().all(|c| c.underlying_graphs == 1)
    }
}

/// Every acyclic quiver on `n` vertices with arrow multiplicities at most
/// `max_mult`, up to isomorphism.
pub fn acyclic_quivers(n: usize, max_mult: u64) -> Vec<Quiver> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let choices = 2 * max_mult as i64 + 1;
    let total = (choices as u64).pow(pairs.len() as u32);
    let mut seen: BTreeMap<QuiverKey, Quiver> = BTreeMap::new();
    for code in 0..total {
        let mut c = code;
        let mut arrows = Vec::new();
        for &(i, j) in &pairs {
            let w = (c % choices as u64) as i64 - max_mult as i64;
            c /= choices as u64;
            if w > 0 {
                arrows.push((i, j, w as u64));
            } else if w < 0 {
                arrows.push((j, i, (-w) as u64));
            }
        }
        let q = Quiver::from_arrows(n, n, &arrows).expect("valid by construction");
        if q.is_acyclic() {
            seen.entry(q.canonical_form()).or_insert(q);
        }
    }
    seen.into_values().collect()
}

fn underlying_key(q: &Quiver) -> Vec<i64> {
    let g = q.underlying_graph();
    canonical_labeling(&g, vec![(0..q.m()).collect()]).1
}

/// For each acyclic quiver on `n` vertices, explores its class (bounded) and
/// counts the distinct underlying graphs among its acyclic members.
pub fn acyclic_class_experiment(n: usize, max_mult: u64, limits: ExplorationLimits) -> Result<AcyclicReport> {
    let quivers = acyclic_quivers(n, max_mult);
    let mut assigned: BTreeSet<QuiverKey> = BTreeSet::new();
    let mut classes = Vec::new();
    for q in &quivers {
        let key = q.canonical_form();
        if assigned.contains(&key) {
            continue;
        }
        let ex = explore_quiver_class_states(q, limits)?;
        let acyclic: Vec<&Quiver> = ex.states.iter().filter(|s| s.is_acyclic()).collect();
        for s in &acyclic {
            assigned.insert(s.canonical_form());
        }
        let graphs: BTreeSet<Vec<i64>> = acyclic.iter().map(|s| underlying_key(s)).collect();
        classes.push(AcyclicClass {
            representative: key,
            class_size: ex.graph.len(),
            truncated: ex.graph.truncated,
            acyclic_members: acyclic.len(),
            underlying_graphs: graphs.len(),
        });
    }
    Ok(AcyclicReport {
        vertices: n,
        quivers: quivers.len(),
        classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{dynkin_quiver, markov_quiver};

    fn lim(n: usize, d: usize) -> ExplorationLimits {
        ExplorationLimits::new(n, d).unwrap()
    }

    #[test]
    fn markov_class_is_a_point() {
        let g = explore_quiver_class(&markov_quiver(), lim(100, 10)).unwrap();
        assert_eq!(g.len(), 1);
        assert!(!g.truncated);
    }

    #[test]
    fn a3_class_has_four_members() {
        let q = dynkin_quiver("A3", None).unwrap();
        assert_eq!(finite_mutation_type_probe(&q, lim(100, 20)).unwrap(), FiniteProbe::Finite(4));
    }

    #[test]
    fn truncation_is_reported() {
        let q = Quiver::from_arrows(3, 3, &[(0, 1, 2), (1, 2, 1)]).unwrap();
        let g = explore_quiver_class(&q, lim(5, 50)).unwrap();
        assert!(g.truncated);
        assert_eq!(g.len(), 5);
    }

    #[test]
    fn a11_exchange_graph_is_a_pentagon() {
        let b = ExchangeMatrix::square(vec![vec![0, 1], vec![-1, 0]]).unwrap();
        let g = exchange_graph(&b, lim(100, 20)).unwrap();
        assert_eq!(g.len(), 5);
        assert!(!g.truncated);
        assert_eq!(g.regular_degree(), Some(2));
        assert!(g.is_symmetric());
    }

    #[test]
    fn equivalence_answers() {
        let a = dynkin_quiver("A3", None).unwrap();
        let b = dynkin_quiver("A3", Some(&[true, false])).unwrap();
        assert!(matches!(are_mutation_equivalent(&a, &b, lim(100, 10)).unwrap(), Equivalence::Yes { .. }));
        assert_eq!(are_mutation_equivalent(&a, &a, lim(100, 10)).unwrap(), Equivalence::Yes { depth: 0 });
        let m = markov_quiver();
        assert_eq!(are_mutation_equivalent(&a, &m, lim(100, 10)).unwrap(), Equivalence::No);
    }
}
