//! State graphs, boundary circles and the coloring sums over them.
//!
//! A ribbon side is `2h + s` for half-edge `h` and side `s` (0 = left when
//! looking out along `h`, 1 = right). At a vertex with rotation `(h0, h1, h2)`
//! the corner between `h_i` and `h_{i+1}` joins `(h_i, L)` to `(h_{i+1}, R)`.
//! A flat edge joins left to right; a twisted edge joins left to left.

use crate::error::{Error, Result};
use crate::graph::PlaneTrivalentGraph;
use rayon::prelude::*;

pub const DEFAULT_ENUMERATION_CAP: usize = 24;

const L: usize = 0;
const R: usize = 1;

/// Twist bits, one per edge. Bit `i` set means edge `i` is half-twisted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StateVector {
    bits: Vec<bool>,
}

impl StateVector {
    pub fn zero(len: usize) -> Self {
        StateVector { bits: vec![false; len] }
    }

    /// Bit `i` of the state is bit `i` of `mask`.
    pub fn from_mask(mask: u64, len: usize) -> Self {
        StateVector { bits: (0..len).map(|i| mask >> i & 1 == 1).collect() }
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        StateVector { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits[i]
    }

    pub fn flip(&mut self, i: usize) {
        self.bits[i] = !self.bits[i];
    }

    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }
}

impl std::fmt::Display for StateVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl std::str::FromStr for StateVector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::Graph(format!("state {s:?} is not a bit string"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(StateVector::from_bits)
    }
}

/// Boundary circles of a state graph.
///
/// Segment `2e + k` is strand `k` of edge `e`; strand 0 is the one through
/// the left side of the edge's first half-edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleSet {
    pub circles: Vec<Vec<usize>>,
    pub segment_circle: Vec<usize>,
    /// One unordered circle pair per edge, in edge order.
    pub adjacency: Vec<(usize, usize)>,
}

impl CircleSet {
    pub fn len(&self) -> usize {
        self.circles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.circles.is_empty()
    }

    /// Edges whose two strands lie on the same circle.
    pub fn bridges(&self) -> Vec<usize> {
        self.adjacency
            .iter()
            .enumerate()
            .filter(|(_, (a, b))| a == b)
            .map(|(e, _)| e)
            .collect()
    }
}

fn edge_partner(g: &PlaneTrivalentGraph, twisted: bool, node: usize) -> usize {
    let h = node / 2;
    let s = node % 2;
    let t = g.twin(h);
    if twisted {
        2 * t + s
    } else {
        2 * t + (1 - s)
    }
}

fn corner_partner(g: &PlaneTrivalentGraph, node: usize) -> usize {
    let h = node / 2;
    if node % 2 == L {
        2 * g.next_ccw(h) + R
    } else {
        2 * g.prev_ccw(h) + L
    }
}

fn segment_of(g: &PlaneTrivalentGraph, twisted: bool, node: usize) -> usize {
    let h = node / 2;
    let e = g.edge_of(h);
    let first = g.edge(e)[0];
    let s = node % 2;
    let on_first_left = if h == first || twisted { s == L } else { s == R };
    2 * e + usize::from(!on_first_left)
}

pub fn trace_circles(g: &PlaneTrivalentGraph, state: &StateVector) -> Result<CircleSet> {
    let m = g.edge_count();
    if state.len() != m {
        return Err(Error::StateLength { expected: m, got: state.len() });
    }
    let nodes = 2 * g.half_edge_count();
    let mut seen = vec![false; nodes];
    let mut raw: Vec<Vec<usize>> = Vec::new();
    // Walk sides in order, leaving each node through its edge link.
    for start in 0..nodes {
        if seen[start] {
            continue;
        }
        let mut circle = Vec::new();
        let mut cur = start;
        loop {
            let tw = state.get(g.edge_of(cur / 2));
            circle.push(segment_of(g, tw, cur));
            let across = edge_partner(g, tw, cur);
            seen[cur] = true;
            seen[across] = true;
            cur = corner_partner(g, across);
            if cur == start {
                break;
            }
        }
        raw.push(circle);
    }
    for c in raw.iter_mut() {
        canonical_rotation(c);
    }
    raw.sort_by_key(|c| c[0]);
    let mut segment_circle = vec![0; 2 * m];
    for (i, c) in raw.iter().enumerate() {
        for &s in c {
            segment_circle[s] = i;
        }
    }
    let adjacency = (0..m).map(|e| (segment_circle[2 * e], segment_circle[2 * e + 1])).collect();
    Ok(CircleSet { circles: raw, segment_circle, adjacency })
}

/// Starts the cycle at its smallest entry, heading towards the smaller neighbour.
fn canonical_rotation(c: &mut [usize]) {
    let n = c.len();
    let (pos, _) = c.iter().enumerate().min_by_key(|(_, &s)| s).unwrap();
    c.rotate_left(pos);
    if n > 2 && c[n - 1] < c[1] {
        c[1..].reverse();
    }
}

pub fn euler_characteristic(g: &PlaneTrivalentGraph, state: &StateVector) -> Result<i64> {
    let c = trace_circles(g, state)?;
    Ok(g.vertex_count() as i64 - g.edge_count() as i64 + c.len() as i64)
}

fn adjacency_masks(
    n_circles: usize,
    pairs: impl IntoIterator<Item = (usize, usize)>,
) -> Result<Option<Vec<u64>>> {
    assert!(n_circles <= 64, "at most 64 circles supported");
    let mut adj = vec![0u64; n_circles];
    for (a, b) in pairs {
        if a >= n_circles {
            return Err(Error::NoSuchCircle(a));
        }
        if b >= n_circles {
            return Err(Error::NoSuchCircle(b));
        }
        if a == b {
            return Ok(None);
        }
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
    }
    Ok(Some(adj))
}

/// Number of proper `n`-colorings of the circles, where circles joined by an
/// edge of the state or by an extra constraint must differ.
pub fn count_face_colorings(
    circles: &CircleSet,
    extra: &[(usize, usize)],
    n: u32,
) -> Result<u128> {
    let pairs = circles.adjacency.iter().chain(extra.iter()).copied();
    match adjacency_masks(circles.len(), pairs)? {
        None => Ok(0),
        Some(adj) => Ok(count_colorings(&adj, n)),
    }
}

/// Counts colorings by enumerating partitions into independent classes, then
/// multiplying by the number of ways to name `k` classes with `n` colors.
pub fn count_colorings(adj: &[u64], n: u32) -> u128 {
    fn rec(v: usize, adj: &[u64], classes: &mut Vec<u64>, by_k: &mut Vec<u128>, n: usize) {
        if v == adj.len() {
            by_k[classes.len()] += 1;
            return;
        }
        for i in 0..classes.len() {
            if classes[i] & adj[v] == 0 {
                classes[i] |= 1 << v;
                rec(v + 1, adj, classes, by_k, n);
                classes[i] &= !(1 << v);
            }
        }
        if classes.len() < n {
            classes.push(1 << v);
            rec(v + 1, adj, classes, by_k, n);
            classes.pop();
        }
    }
    let n = n as usize;
    let mut by_k = vec![0u128; adj.len() + 1];
    rec(0, adj, &mut Vec::new(), &mut by_k, n);
    let mut total = 0u128;
    for (k, &cnt) in by_k.iter().enumerate() {
        if cnt == 0 || k > n {
            continue;
        }
        let falling: u128 = (0..k).map(|i| (n - i) as u128).product();
        total += cnt * falling;
    }
    total
}

fn guard(g: &PlaneTrivalentGraph, cap: usize) -> Result<()> {
    if g.edge_count() > cap || g.edge_count() >= 64 {
        return Err(Error::TooManyEdges { edges: g.edge_count(), cap });
    }
    Ok(())
}

fn all_states(g: &PlaneTrivalentGraph) -> impl ParallelIterator<Item = StateVector> + '_ {
    let m = g.edge_count();
    (0..1u64 << m).into_par_iter().map(move |mask| StateVector::from_mask(mask, m))
}

/// Penrose polynomial as coefficients of `n^0, n^1, ...`.
pub fn penrose_polynomial(g: &PlaneTrivalentGraph) -> Result<Vec<i64>> {
    penrose_polynomial_capped(g, DEFAULT_ENUMERATION_CAP)
}

pub fn penrose_polynomial_capped(g: &PlaneTrivalentGraph, cap: usize) -> Result<Vec<i64>> {
    guard(g, cap)?;
    let size = 2 * g.half_edge_count() + 1;
    let coeffs = all_states(g)
        .map(|s| {
            let mut v = vec![0i64; size];
            let c = trace_circles(g, &s).expect("length checked").len();
            v[c] += if s.weight() % 2 == 0 { 1 } else { -1 };
            v
        })
        .reduce(
            || vec![0i64; size],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    let mut coeffs = coeffs;
    while coeffs.len() > 1 && *coeffs.last().unwrap() == 0 {
        coeffs.pop();
    }
    Ok(coeffs)
}

pub fn evaluate(coeffs: &[i64], n: i64) -> i64 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * n + c)
}

/// Proper 4-colorings of the faces of the plane embedding, by brute force
/// over every assignment.
pub fn count_4_face_colorings_plane(g: &PlaneTrivalentGraph) -> Result<u64> {
    let faces = trace_circles(g, &StateVector::zero(g.edge_count()))?;
    let f = faces.len();
    if f > 12 {
        return Err(Error::TooManyEdges { edges: g.edge_count(), cap: 18 });
    }
    let mut count = 0;
    for code in 0..4u64.pow(f as u32) {
        let color = |i: usize| (code >> (2 * i)) & 3;
        if faces.adjacency.iter().all(|&(a, b)| color(a) != color(b)) {
            count += 1;
        }
    }
    Ok(count)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaitReport {
    pub plane_4_colorings: u64,
    pub state_3_colorings: u128,
    pub holds: bool,
}

/// Checks that the plane 4-face colorings number four times the 3-face
/// colorings summed over all states.
pub fn verify_tait_identity(g: &PlaneTrivalentGraph) -> Result<TaitReport> {
    guard(g, DEFAULT_ENUMERATION_CAP)?;
    let plane = trace_circles(g, &StateVector::zero(g.edge_count()))?;
    if let Some(&e) = plane.bridges().first() {
        return Err(Error::Bridge(e));
    }
    let lhs = count_4_face_colorings_plane(g)?;
    let rhs: u128 = all_states(g)
        .map(|s| count_face_colorings(&trace_circles(g, &s).unwrap(), &[], 3).unwrap())
        .sum();
    Ok(TaitReport { plane_4_colorings: lhs, state_3_colorings: rhs, holds: lhs as u128 == 4 * rhs })
}

/// True unless some state is 4-face colorable while the plane graph is not.
pub fn verify_state_to_plane_coloring(g: &PlaneTrivalentGraph) -> Result<bool> {
    guard(g, DEFAULT_ENUMERATION_CAP)?;
    let some_state = all_states(g)
        .any(|s| count_face_colorings(&trace_circles(g, &s).unwrap(), &[], 4).unwrap() > 0);
    Ok(!some_state || count_4_face_colorings_plane(g)? > 0)
}
