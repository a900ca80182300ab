//! Bipartite graphs embedded in a disk, their quivers and urban renewal.
//!
//! A graph is given by its vertices (color, on the boundary or not), edges
//! and faces. Each face is the counterclockwise cycle of vertices around it.
//! Around a face touching the disk boundary, consecutive boundary vertices
//! that are not joined by an edge are joined by an arc of the boundary.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quiver::Quiver;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    White,
    Black,
}

impl Color {
    pub fn other(self) -> Self {
        match self {
            Color::White => Color::Black,
            Color::Black => Color::White,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub color: Color,
    #[serde(default)]
    pub boundary: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    pub cycle: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiskBipartiteGraph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<[usize; 2]>,
    pub faces: Vec<Face>,
}

fn key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

fn darts(cycle: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    (0..cycle.len()).map(move |i| (cycle[i], cycle[(i + 1) % cycle.len()]))
}

impl DiskBipartiteGraph {
    pub fn new(vertices: Vec<Vertex>, edges: Vec<[usize; 2]>, faces: Vec<Face>) -> Result<Self> {
        let g = DiskBipartiteGraph { vertices, edges, faces };
        g.validate()?;
        Ok(g)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let g: DiskBipartiteGraph = serde_json::from_str(s).map_err(|e| Error::parse(e.to_string()))?;
        g.validate()?;
        Ok(g)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graphs serialize")
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.contains(&v)).count()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&[a, b]| if a == v { Some(b) } else if b == v { Some(a) } else { None })
            .collect()
    }

    fn validate(&self) -> Result<()> {
        let nv = self.vertices.len();
        let mut set = BTreeSet::new();
        for &[u, v] in &self.edges {
            if u >= nv || v >= nv {
                return Err(Error::IndexOutOfRange { index: u.max(v) + 1, max: nv });
            }
            if self.vertices[u].color == self.vertices[v].color {
                return Err(Error::invalid(format!("edge {u}-{v} joins vertices of one color")));
            }
            if !set.insert(key(u, v)) {
                return Err(Error::invalid(format!("edge {u}-{v} is repeated")));
            }
        }
        for (v, vert) in self.vertices.iter().enumerate() {
            let d = self.degree(v);
            if vert.boundary && d != 1 {
                return Err(Error::invalid(format!("boundary vertex {v} must have degree 1")));
            }
            if !vert.boundary && d < 2 {
                return Err(Error::invalid(format!("interior vertex {v} has degree {d}")));
            }
        }
        let mut seen = BTreeSet::new();
        for (f, face) in self.faces.iter().enumerate() {
            if face.cycle.len() < 2 {
                return Err(Error::invalid(format!("face {f} is too short")));
            }
            for (u, v) in darts(&face.cycle) {
                if u >= nv || v >= nv {
                    return Err(Error::IndexOutOfRange { index: u.max(v) + 1, max: nv });
                }
                if set.contains(&key(u, v)) {
                    if !seen.insert((u, v)) {
                        return Err(Error::invalid(format!("edge {u}-{v} is traversed twice in one direction")));
                    }
                } else if !(self.vertices[u].boundary && self.vertices[v].boundary) {
                    return Err(Error::invalid(format!("face {f} steps from {u} to {v} along no edge")));
                }
            }
        }
        for &(u, v) in &set {
            if !seen.contains(&(u, v)) || !seen.contains(&(v, u)) {
                return Err(Error::invalid(format!("edge {u}-{v} does not border two faces")));
            }
        }
        Ok(())
    }

    /// Faces touching the disk boundary are frozen.
    pub fn is_frozen(&self, f: usize) -> bool {
        self.faces[f].cycle.iter().any(|&v| self.vertices[v].boundary)
    }

    /// Quiver vertex order: mutable faces, then frozen faces, each in face order.
    pub fn face_order(&self) -> Vec<usize> {
        let (mut mutable, frozen): (Vec<usize>, Vec<usize>) = (0..self.faces.len()).partition(|&f| !self.is_frozen(f));
        mutable.extend(frozen);
        mutable
    }

    /// One arrow across each edge, seeing the white endpoint on its left and
    /// the black one on its right; 2-cycles cancel and arrows between frozen
    /// faces are dropped.
    pub fn quiver(&self) -> Quiver {
        let order = self.face_order();
        let mut pos = vec![0; self.faces.len()];
        for (i, &f) in order.iter().enumerate() {
            pos[f] = i;
        }
        let n = order.iter().filter(|&&f| !self.is_frozen(f)).count();
        let mut left = BTreeMap::new();
        for (f, face) in self.faces.iter().enumerate() {
            for d in darts(&face.cycle) {
                left.insert(d, pos[f]);
            }
        }
        let m = self.faces.len();
        let mut b = vec![vec![0i64; m]; m];
        for &[u, v] in &self.edges {
            let (w, k) = if self.vertices[u].color == Color::White { (u, v) } else { (v, u) };
            // walking from w to k, the arrow crosses from the right face to the left one
            let (to, from) = (left[&(w, k)], left[&(k, w)]);
            if from != to && (from < n || to < n) {
                b[from][to] += 1;
                b[to][from] -= 1;
            }
        }
        Quiver::from_net(n, b).expect("face quivers are valid")
    }

    fn check_renewable(&self, f: usize) -> Result<[usize; 4]> {
        let face = self.faces.get(f).ok_or(Error::IndexOutOfRange { index: f + 1, max: self.faces.len() })?;
        if face.cycle.len() != 4 || self.is_frozen(f) {
            return Err(Error::invalid(format!("face {f} is not an interior quadrilateral")));
        }
        let c = [face.cycle[0], face.cycle[1], face.cycle[2], face.cycle[3]];
        if c.iter().any(|&v| self.degree(v) < 3) {
            return Err(Error::invalid(format!("face {f} has a vertex of degree 2")));
        }
        Ok(c)
    }

    /// Urban renewal at a quadrilateral face whose vertices all have degree at
    /// least 3: the square is replaced by a smaller square of the opposite
    /// colors joined to the old corners by four legs. The new face keeps the
    /// index of the old one.
    pub fn urban_renewal(&self, f: usize) -> Result<Self> {
        let c = self.check_renewable(f)?;
        let mut g = self.clone();
        let base = g.vertices.len();
        for &v in &c {
            g.vertices.push(Vertex { color: self.vertices[v].color.other(), boundary: false });
        }
        let inner = |v: usize| base + c.iter().position(|&x| x == v).unwrap();
        let square: BTreeSet<_> = (0..4).map(|i| key(c[i], c[(i + 1) % 4])).collect();
        g.edges.retain(|&[u, v]| !square.contains(&key(u, v)));
        for i in 0..4 {
            g.edges.push([c[i], base + i]);
            g.edges.push([base + i, base + (i + 1) % 4]);
        }
        for (h, face) in g.faces.iter_mut().enumerate() {
            if h == f {
                face.cycle = (base..base + 4).collect();
                continue;
            }
            let mut cycle = Vec::with_capacity(face.cycle.len() + 2);
            for (u, v) in darts(&face.cycle) {
                cycle.push(u);
                if square.contains(&key(u, v)) {
                    cycle.push(inner(u));
                    cycle.push(inner(v));
                }
            }
            face.cycle = cycle;
        }
        g.validate()?;
        Ok(g)
    }

    /// Removes an interior vertex of degree 2 and merges its two neighbors.
    /// Vertex and face indices above the removed ones shift down.
    pub fn contract_degree2(&self, v: usize) -> Result<Self> {
        if v >= self.vertices.len() {
            return Err(Error::IndexOutOfRange { index: v + 1, max: self.vertices.len() });
        }
        let nb = self.neighbors(v);
        if self.vertices[v].boundary || nb.len() != 2 {
            return Err(Error::invalid(format!("vertex {v} is not an interior vertex of degree 2")));
        }
        let (a, b) = (nb[0].min(nb[1]), nb[0].max(nb[1]));
        if self.vertices[a].boundary || self.vertices[b].boundary {
            return Err(Error::invalid(format!("vertex {v} has a boundary neighbor")));
        }
        let merged: BTreeSet<(usize, usize)> = self
            .edges
            .iter()
            .filter(|e| !e.contains(&v))
            .map(|&[x, y]| key(if x == b { a } else { x }, if y == b { a } else { y }))
            .collect();
        if merged.len() != self.edges.len() - 2 {
            return Err(Error::invalid(format!("contracting {v} would create a double edge")));
        }
        let renumber = |x: usize| {
            let x = if x == b { a } else { x };
            x - (x > v) as usize - (x > b) as usize
        };
        let vertices = self
            .vertices
            .iter()
            .enumerate()
            .filter(|&(x, _)| x != v && x != b)
            .map(|(_, vert)| vert.clone())
            .collect();
        let edges = self
            .edges
            .iter()
            .filter(|e| !e.contains(&v))
            .map(|&[x, y]| [renumber(x), renumber(y)])
            .collect();
        let mut faces = Vec::new();
        for face in &self.faces {
            let mut cycle: Vec<usize> = face.cycle.iter().filter(|&&x| x != v).map(|&x| renumber(x)).collect();
            cycle.dedup();
            while cycle.len() > 1 && cycle.first() == cycle.last() {
                cycle.pop();
            }
            if cycle.len() < 2 {
                return Err(Error::invalid(format!("contracting {v} collapses a face")));
            }
            faces.push(Face { cycle });
        }
        DiskBipartiteGraph::new(vertices, edges, faces)
    }

    /// Contracts interior degree-2 vertices until none can be contracted.
    pub fn contract_all_degree2(&self) -> Self {
        let mut g = self.clone();
        'outer: loop {
            for v in 0..g.vertices.len() {
                if !g.vertices[v].boundary && g.degree(v) == 2 {
                    if let Ok(h) = g.contract_degree2(v) {
                        g = h;
                        continue 'outer;
                    }
                }
            }
            return g;
        }
    }

    /// Interior quadrilateral faces where urban renewal applies.
    pub fn renewable_faces(&self) -> Vec<usize> {
        (0..self.faces.len()).filter(|&f| self.check_renewable(f).is_ok()).collect()
    }
}

/// A 2 × 1 ladder of squares with six legs to the boundary: two interior
/// faces and six boundary faces.
pub fn ladder_example() -> DiskBipartiteGraph {
    use Color::{Black as B, White as W};
    let colors = [W, B, W, B, W, B, B, W, B, W, B, W];
    let vertices = colors
        .iter()
        .enumerate()
        .map(|(i, &color)| Vertex { color, boundary: i >= 6 })
        .collect();
    let edges = vec![
        [0, 1],
        [1, 2],
        [3, 4],
        [4, 5],
        [0, 3],
        [1, 4],
        [2, 5],
        [0, 6],
        [1, 7],
        [2, 8],
        [3, 9],
        [4, 10],
        [5, 11],
    ];
    let cycles: [&[usize]; 8] = [
        &[0, 1, 4, 3],
        &[1, 2, 5, 4],
        &[6, 7, 1, 0],
        &[7, 8, 2, 1],
        &[8, 11, 5, 2],
        &[11, 10, 4, 5],
        &[10, 9, 3, 4],
        &[9, 6, 0, 3],
    ];
    let faces = cycles.iter().map(|c| Face { cycle: c.to_vec() }).collect();
    DiskBipartiteGraph::new(vertices, edges, faces).expect("the ladder is a valid graph")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ladder_quiver() {
        let g = ladder_example();
        let q = g.quiver();
        assert_eq!((q.m(), q.n()), (8, 2));
        // the shared edge 1-4 has black 1 below white 4
        assert_eq!(q.net(1, 0).abs(), 1);
        assert!(q.arrows().iter().all(|&(_, _, c)| c == 1));
    }

    #[test]
    fn renewal_is_mutation() {
        let g = ladder_example();
        let q = g.quiver();
        for f in g.renewable_faces() {
            let k = g.face_order().iter().position(|&x| x == f).unwrap();
            let h = g.urban_renewal(f).unwrap();
            assert_eq!(h.quiver(), q.mutate(k).unwrap());
            assert_eq!(h.contract_all_degree2().quiver(), h.quiver());
            assert_eq!(h.urban_renewal(f).unwrap().quiver(), q);
        }
    }

    #[test]
    fn contraction_keeps_the_quiver() {
        // subdivide the shared edge 1-4 with a white vertex and a black vertex
        let mut g = ladder_example();
        g.vertices.push(Vertex { color: Color::White, boundary: false });
        g.vertices.push(Vertex { color: Color::Black, boundary: false });
        g.edges.retain(|e| *e != [1, 4]);
        g.edges.extend([[1, 12], [12, 13], [13, 4]]);
        g.faces[0].cycle = vec![0, 1, 12, 13, 4, 3];
        g.faces[1].cycle = vec![1, 2, 5, 4, 13, 12];
        let g = DiskBipartiteGraph::new(g.vertices, g.edges, g.faces).unwrap();
        let h = g.contract_degree2(12).unwrap();
        assert_eq!(h.vertices.len(), 12);
        assert_eq!(h.quiver(), g.quiver());
        assert_eq!(h.quiver(), ladder_example().quiver());
    }

    #[test]
    fn json_round_trip() {
        let g = ladder_example();
        assert_eq!(DiskBipartiteGraph::from_json(&g.to_json()).unwrap(), g);
        assert!(g.urban_renewal(2).is_err());
    }
}
