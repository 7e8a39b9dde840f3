//! Plane trivalent graphs as rotation systems.
//!
//! Half-edges are numbered `0..3V`. Every vertex lists its three half-edges in
//! counterclockwise order, and every edge pairs two half-edges.

use crate::error::{Error, Result};
use std::fmt::Write as _;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneTrivalentGraph {
    rotation: Vec<[usize; 3]>,
    edges: Vec<[usize; 2]>,
    vertex_of: Vec<usize>,
    slot_of: Vec<u8>,
    edge_of: Vec<usize>,
}

impl PlaneTrivalentGraph {
    /// Builds a graph from counterclockwise rotations and the edge list.
    /// Edge `i` of the result is `edges[i]`.
    pub fn new(rotation: Vec<[usize; 3]>, edges: Vec<[usize; 2]>) -> Result<Self> {
        let h = rotation.len() * 3;
        if edges.len() * 2 != h {
            return Err(Error::Graph(format!(
                "{} vertices need {} edges, found {}",
                rotation.len(),
                h / 2,
                edges.len()
            )));
        }
        let mut vertex_of = vec![usize::MAX; h];
        let mut slot_of = vec![0u8; h];
        for (v, rot) in rotation.iter().enumerate() {
            for (i, &he) in rot.iter().enumerate() {
                if he >= h {
                    return Err(Error::Graph(format!("half-edge {he} out of range")));
                }
                if vertex_of[he] != usize::MAX {
                    return Err(Error::Graph(format!("half-edge {he} appears at two vertices")));
                }
                vertex_of[he] = v;
                slot_of[he] = i as u8;
            }
        }
        let mut edge_of = vec![usize::MAX; h];
        for (e, pair) in edges.iter().enumerate() {
            if pair[0] == pair[1] {
                return Err(Error::Graph(format!("edge {e} pairs half-edge {} with itself", pair[0])));
            }
            for &he in pair {
                if he >= h {
                    return Err(Error::Graph(format!("half-edge {he} out of range")));
                }
                if edge_of[he] != usize::MAX {
                    return Err(Error::Graph(format!("half-edge {he} is on two edges")));
                }
                edge_of[he] = e;
            }
        }
        Ok(PlaneTrivalentGraph { rotation, edges, vertex_of, slot_of, edge_of })
    }

    /// Builds a simple plane graph from vertex coordinates. Rotations are read
    /// off the straight-line drawing; edge `i` is `edge_list[i]`.
    pub fn from_drawing(points: &[(f64, f64)], edge_list: &[(usize, usize)]) -> Result<Self> {
        let n = points.len();
        let mut around: Vec<Vec<(f64, usize)>> = vec![Vec::new(); n];
        let mut edges = Vec::with_capacity(edge_list.len());
        for (e, &(a, b)) in edge_list.iter().enumerate() {
            if a >= n || b >= n || a == b {
                return Err(Error::Graph(format!("bad edge {a}-{b}")));
            }
            let (ha, hb) = (2 * e, 2 * e + 1);
            let ang = |p: (f64, f64), q: (f64, f64)| (q.1 - p.1).atan2(q.0 - p.0);
            around[a].push((ang(points[a], points[b]), ha));
            around[b].push((ang(points[b], points[a]), hb));
            edges.push([ha, hb]);
        }
        let mut rotation = Vec::with_capacity(n);
        for (v, list) in around.iter_mut().enumerate() {
            if list.len() != 3 {
                return Err(Error::Graph(format!("vertex {v} has degree {}", list.len())));
            }
            list.sort_by(|x, y| x.0.total_cmp(&y.0));
            rotation.push([list[0].1, list[1].1, list[2].1]);
        }
        PlaneTrivalentGraph::new(rotation, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.rotation.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn half_edge_count(&self) -> usize {
        self.vertex_of.len()
    }

    pub fn rotation(&self, v: usize) -> [usize; 3] {
        self.rotation[v]
    }

    pub fn edge(&self, e: usize) -> [usize; 2] {
        self.edges[e]
    }

    pub fn vertex_of(&self, h: usize) -> usize {
        self.vertex_of[h]
    }

    pub fn edge_of(&self, h: usize) -> usize {
        self.edge_of[h]
    }

    pub fn twin(&self, h: usize) -> usize {
        let [a, b] = self.edges[self.edge_of[h]];
        if a == h {
            b
        } else {
            a
        }
    }

    /// Next half-edge counterclockwise around the same vertex.
    pub fn next_ccw(&self, h: usize) -> usize {
        let v = self.vertex_of[h];
        self.rotation[v][(self.slot_of[h] as usize + 1) % 3]
    }

    pub fn prev_ccw(&self, h: usize) -> usize {
        let v = self.vertex_of[h];
        self.rotation[v][(self.slot_of[h] as usize + 2) % 3]
    }

    /// Faces of the embedding, each as the cyclic list of half-edges that
    /// have the face on their left.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let h = self.half_edge_count();
        let mut seen = vec![false; h];
        let mut faces = Vec::new();
        for start in 0..h {
            if seen[start] {
                continue;
            }
            let mut face = Vec::new();
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                face.push(cur);
                cur = self.prev_ccw(self.twin(cur));
            }
            faces.push(face);
        }
        faces
    }

    /// Splits a face by a new edge. `h1` and `h2` must be distinct half-edges
    /// with the same face on their left; each of their edges is subdivided and
    /// the two new vertices are joined across the face. Returns the new edge.
    pub fn insert_chord(&mut self, h1: usize, h2: usize) -> Result<usize> {
        let face = self
            .faces()
            .into_iter()
            .find(|f| f.contains(&h1))
            .ok_or_else(|| Error::Graph(format!("half-edge {h1} out of range")))?;
        if h1 == h2 || !face.contains(&h2) {
            return Err(Error::Graph(format!("half-edges {h1} and {h2} do not share a face")));
        }
        let mut rotation = self.rotation.clone();
        let mut edges = self.edges.clone();
        let base = self.half_edge_count();
        let mut mids = [0usize; 2];
        for (i, &h) in [h1, h2].iter().enumerate() {
            let e = self.edge_of[h];
            let t = self.twin(h);
            let (back, fwd, side) = (base + 3 * i, base + 3 * i + 1, base + 3 * i + 2);
            // Travelling along h the face is on the left, so the new spoke
            // sits between the forward and backward halves.
            rotation.push([fwd, side, back]);
            edges[e] = [h, back];
            edges.push([fwd, t]);
            mids[i] = side;
        }
        edges.push([mids[0], mids[1]]);
        *self = PlaneTrivalentGraph::new(rotation, edges)?;
        Ok(self.edge_count() - 1)
    }

    /// Plain-text form: `v h0 h1 h2` per vertex, then `e h h' index` per edge.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for rot in &self.rotation {
            let _ = writeln!(out, "v {} {} {}", rot[0], rot[1], rot[2]);
        }
        for (e, [a, b]) in self.edges.iter().enumerate() {
            let _ = writeln!(out, "e {a} {b} {e}");
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut rotation = Vec::new();
        let mut edges: Vec<Option<[usize; 2]>> = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut words = line.split_whitespace();
            let tag = words.next().unwrap_or("");
            let nums: Vec<usize> = words
                .map(|w| w.parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Graph(format!("line {}: {e}", ln + 1)))?;
            match (tag, nums.as_slice()) {
                ("v", &[a, b, c]) => rotation.push([a, b, c]),
                ("e", &[a, b, idx]) => {
                    if edges.len() <= idx {
                        edges.resize(idx + 1, None);
                    }
                    if edges[idx].replace([a, b]).is_some() {
                        return Err(Error::Graph(format!("line {}: edge {idx} given twice", ln + 1)));
                    }
                }
                _ => return Err(Error::Graph(format!("line {}: cannot read {line:?}", ln + 1))),
            }
        }
        let edges = edges
            .into_iter()
            .enumerate()
            .map(|(i, e)| e.ok_or_else(|| Error::Graph(format!("edge {i} missing"))))
            .collect::<Result<Vec<_>>>()?;
        PlaneTrivalentGraph::new(rotation, edges)
    }
}

pub fn theta() -> PlaneTrivalentGraph {
    // The second vertex sees the three parallel edges in the opposite order.
    PlaneTrivalentGraph::new(vec![[0, 1, 2], [3, 5, 4]], vec![[0, 3], [1, 4], [2, 5]])
        .expect("theta graph")
}

pub fn k4() -> PlaneTrivalentGraph {
    let pts = [(0.0, 2.0), (-2.0, -1.0), (2.0, -1.0), (0.0, 0.0)];
    let edges = [(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)];
    PlaneTrivalentGraph::from_drawing(&pts, &edges).expect("K4")
}

/// The n-gonal prism: two concentric n-cycles joined by rungs.
pub fn prism(n: usize) -> PlaneTrivalentGraph {
    assert!(n >= 3);
    let mut pts = Vec::with_capacity(2 * n);
    for r in [1.0, 2.0] {
        for i in 0..n {
            let t = std::f64::consts::TAU * i as f64 / n as f64;
            pts.push((r * t.cos(), r * t.sin()));
        }
    }
    let mut edges = Vec::with_capacity(3 * n);
    for i in 0..n {
        edges.push((i, (i + 1) % n));
        edges.push((n + i, n + (i + 1) % n));
        edges.push((i, n + i));
    }
    PlaneTrivalentGraph::from_drawing(&pts, &edges).expect("prism")
}

pub fn cube() -> PlaneTrivalentGraph {
    prism(4)
}

pub fn builtin(name: &str) -> Option<PlaneTrivalentGraph> {
    match name {
        "theta" => Some(theta()),
        "k4" => Some(k4()),
        "prism3" => Some(prism(3)),
        "cube" => Some(cube()),
        "prism5" => Some(prism(5)),
        _ => None,
    }
}

/// theta, K4, 3-prism, cube and pentagonal prism.
pub fn small_graph_corpus() -> Vec<(&'static str, PlaneTrivalentGraph)> {
    ["theta", "k4", "prism3", "cube", "prism5"]
        .into_iter()
        .map(|n| (n, builtin(n).unwrap()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_spherical() {
        for (name, g) in small_graph_corpus() {
            let f = g.faces().len() as i64;
            let chi = g.vertex_count() as i64 - g.edge_count() as i64 + f;
            assert_eq!(chi, 2, "{name}");
        }
    }

    #[test]
    fn text_round_trip() {
        for (_, g) in small_graph_corpus() {
            assert_eq!(PlaneTrivalentGraph::parse(&g.to_text()).unwrap(), g);
        }
    }

    #[test]
    fn chord_keeps_sphere() {
        let mut g = cube();
        let face = g.faces().into_iter().max_by_key(|f| f.len()).unwrap();
        g.insert_chord(face[0], face[2]).unwrap();
        assert_eq!(g.vertex_count(), 10);
        assert_eq!(g.vertex_count() as i64 - g.edge_count() as i64 + g.faces().len() as i64, 2);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(PlaneTrivalentGraph::parse("v 0 1 2\nv 3 4 5\ne 0 0 0\n").is_err());
        assert!(PlaneTrivalentGraph::parse("v 0 1 2\nv 3 5 4\ne 0 3 0\ne 1 4 1\n").is_err());
        assert!(PlaneTrivalentGraph::parse("x 1 2\n").is_err());
    }
}
