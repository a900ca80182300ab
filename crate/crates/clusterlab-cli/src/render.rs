//! JSON shapes shared by the CLI and the service. Indices are one-based.

use clusterlab::rational::RationalDoc;
use clusterlab::search::MutationClassGraph;
use clusterlab::seed::Seed;
use clusterlab::ypattern::hat_y;
use clusterlab::{ExchangeMatrix, Quiver};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: usize,
    pub frozen: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowJson {
    pub from: usize,
    pub to: usize,
    pub multiplicity: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverJson {
    pub vertices: Vec<VertexJson>,
    pub arrows: Vec<ArrowJson>,
}

pub fn quiver_json(q: &Quiver) -> QuiverJson {
    QuiverJson {
        vertices: (0..q.m()).map(|v| VertexJson { id: v + 1, frozen: v >= q.n() }).collect(),
        arrows: q
            .arrows()
            .into_iter()
            .map(|(a, b, k)| ArrowJson { from: a + 1, to: b + 1, multiplicity: k })
            .collect(),
    }
}

/// The quiver of a matrix whose principal part is skew-symmetric.
pub fn quiver_of(b: &ExchangeMatrix) -> Option<Quiver> {
    Quiver::from_matrix(b).ok()
}

/// Everything a client needs to draw a seed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedState {
    pub m: usize,
    pub n: usize,
    pub matrix: Vec<Vec<i64>>,
    /// Absent when the exchange matrix is not skew-symmetric.
    pub quiver: Option<QuiverJson>,
    pub cluster: Vec<String>,
    /// Exponents of the frozen variables in each coefficient `y_j`.
    pub coefficients: Vec<Vec<i64>>,
    pub y_hat: Vec<RationalDoc>,
    pub word: Vec<usize>,
}

pub fn seed_state(s: &Seed) -> SeedState {
    let triple = s.to_triple();
    SeedState {
        m: s.m(),
        n: s.n(),
        matrix: s.matrix().rows().to_vec(),
        quiver: quiver_of(s.matrix()).map(|q| quiver_json(&q)),
        cluster: s.cluster().iter().map(ToString::to_string).collect(),
        coefficients: triple.coeffs.iter().map(|c| c.exps.clone()).collect(),
        y_hat: hat_y(s).y.iter().map(|y| y.to_doc()).collect(),
        word: s.word().to_one_based(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeJson {
    pub id: usize,
    pub key: String,
    pub depth: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub from: usize,
    pub direction: usize,
    pub to: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub nodes: Vec<NodeJson>,
    pub edges: Vec<EdgeJson>,
    pub truncated: bool,
    /// The node of the starting seed or matrix.
    pub current: usize,
}

pub fn graph_json(g: &MutationClassGraph) -> GraphJson {
    GraphJson {
        nodes: g
            .nodes
            .iter()
            .zip(&g.depth)
            .enumerate()
            .map(|(i, (key, &depth))| NodeJson { id: i + 1, key: key.clone(), depth })
            .collect(),
        edges: g
            .edges
            .iter()
            .map(|e| EdgeJson { from: e[0] + 1, direction: e[1] + 1, to: e[2] + 1 })
            .collect(),
        truncated: g.truncated,
        current: 1,
    }
}
