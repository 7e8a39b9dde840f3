//! Reading the cap off a state of a graph that contains a configuration.
//!
//! The strands outside the configuration run from spoke side to spoke side
//! (the arcs) or close up (dropped). Every outside edge whose two strands lie
//! on different arcs puts a diamond between them. The arcs are then brought
//! to the canonical doubled form of their pre-cap by exchanging the two sides
//! of some spokes, which is the same as flipping those spokes' twist bits.

use crate::cap::{Cap, PreCap};
use crate::error::{Error, Result};
use crate::graph::PlaneTrivalentGraph;
use crate::region::birkhoff_drawing;
use crate::statesum::{trace_circles, StateVector};
use std::collections::BTreeSet;

/// Where a configuration sits in a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionEmbedding {
    /// Per spoke, in order, its half-edge at the outer end (pointing in).
    pub spokes: Vec<usize>,
    pub inside: Vec<bool>,
}

impl RegionEmbedding {
    pub fn new(g: &PlaneTrivalentGraph, spokes: Vec<usize>, inside_vertices: &[usize]) -> Result<Self> {
        let mut inside = vec![false; g.vertex_count()];
        for &v in inside_vertices {
            if v >= inside.len() {
                return Err(Error::Graph(format!("vertex {v} out of range")));
            }
            inside[v] = true;
        }
        for &h in &spokes {
            if h >= g.half_edge_count() || inside[g.vertex_of(h)] || !inside[g.vertex_of(g.twin(h))] {
                return Err(Error::Graph(format!("half-edge {h} does not cross into the region")));
            }
        }
        let crossing = (0..g.half_edge_count())
            .filter(|&h| !inside[g.vertex_of(h)] && inside[g.vertex_of(g.twin(h))])
            .count();
        if crossing != spokes.len() {
            return Err(Error::Graph(format!("{crossing} edges leave the region, {} spokes given", spokes.len())));
        }
        Ok(RegionEmbedding { spokes, inside })
    }

    pub fn is_outside_edge(&self, g: &PlaneTrivalentGraph, e: usize) -> bool {
        let [a, b] = g.edge(e);
        !self.inside[g.vertex_of(a)] && !self.inside[g.vertex_of(b)]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CapReading {
    pub cap: Cap,
    /// Spokes (0-based) whose sides were exchanged.
    pub swapped: Vec<bool>,
    /// Closed circles outside the configuration.
    pub outside_circles: usize,
}

const L: usize = 0;
const R: usize = 1;

pub fn compute_cap(g: &PlaneTrivalentGraph, emb: &RegionEmbedding, state: &StateVector) -> Result<Cap> {
    read_cap(g, emb, state).map(|r| r.cap)
}

pub fn read_cap(g: &PlaneTrivalentGraph, emb: &RegionEmbedding, state: &StateVector) -> Result<CapReading> {
    if let Some(&e) = trace_circles(g, state)?.bridges().first() {
        return Err(Error::Bridge(e));
    }
    let k = emb.spokes.len();
    let nodes = 2 * g.half_edge_count();
    // Terminal sides: looking in along the spoke, its left strand is the
    // right side looking out.
    let mut side_at = vec![0u8; nodes];
    for (i, &h) in emb.spokes.iter().enumerate() {
        side_at[2 * h + L] = 2 * i as u8 + 2;
        side_at[2 * h + R] = 2 * i as u8 + 1;
    }
    let corner = |n: usize| {
        let h = n / 2;
        if n % 2 == L {
            2 * g.next_ccw(h) + R
        } else {
            2 * g.prev_ccw(h) + L
        }
    };
    let across = |n: usize| {
        let h = n / 2;
        let t = g.twin(h);
        if state.get(g.edge_of(h)) {
            2 * t + n % 2
        } else {
            2 * t + 1 - n % 2
        }
    };
    // Component of each node reached from outside; arcs first, by side.
    let mut comp = vec![usize::MAX; nodes];
    let mut partner = vec![0u8; 2 * k + 1];
    for s in 1..=2 * k as u8 {
        let start = side_at.iter().position(|&x| x == s).expect("every side has a node");
        if comp[start] != usize::MAX {
            continue;
        }
        let id = s as usize - 1;
        let mut n = start;
        comp[n] = id;
        loop {
            n = corner(n);
            comp[n] = id;
            if side_at[n] != 0 {
                partner[s as usize] = side_at[n];
                partner[side_at[n] as usize] = s;
                break;
            }
            n = across(n);
            comp[n] = id;
        }
    }
    let outside_node = |n: usize| !emb.inside[g.vertex_of(n / 2)];
    let mut closed = 0;
    for start in 0..nodes {
        if comp[start] != usize::MAX || !outside_node(start) || !emb.is_outside_edge(g, g.edge_of(start / 2)) {
            continue;
        }
        let id = 2 * k + closed;
        closed += 1;
        let mut n = start;
        loop {
            comp[n] = id;
            n = across(n);
            comp[n] = id;
            n = corner(n);
            if n == start {
                break;
            }
        }
    }
    let mut arcs: Vec<(u8, u8)> = (1..=2 * k as u8).filter(|&s| s < partner[s as usize]).map(|s| (s, partner[s as usize])).collect();
    let mut contacts = BTreeSet::new();
    for e in 0..g.edge_count() {
        if !emb.is_outside_edge(g, e) {
            continue;
        }
        let h = g.edge(e)[0];
        let (a, b) = (comp[2 * h + L], comp[2 * h + R]);
        if a == b {
            return Err(Error::Bridge(e));
        }
        if a < 2 * k && b < 2 * k {
            contacts.insert((a.min(b) as u8 + 1, a.max(b) as u8 + 1));
        }
    }
    // Exchange spoke sides to reach the doubled form of the pre-cap.
    let swapped = doubling_swaps(&arcs, k)?;
    let flip = |s: u8| {
        let sp = (s as usize - 1) / 2;
        if swapped[sp] {
            if s % 2 == 1 {
                s + 1
            } else {
                s - 1
            }
        } else {
            s
        }
    };
    for a in arcs.iter_mut() {
        *a = (flip(a.0), flip(a.1));
    }
    let arc_of = |s: u8| arcs.iter().position(|&(a, b)| a == s || b == s).expect("side on an arc");
    let mut inter = Vec::new();
    for (a, b) in contacts {
        let (i, j) = (arc_of(flip(a)), arc_of(flip(b)));
        if i != j && !shares_spoke(arcs[i], arcs[j]) {
            inter.push((i, j));
        }
    }
    let cap = Cap::new(&arcs, &inter)?;
    Ok(CapReading { cap, swapped, outside_circles: closed })
}

fn shares_spoke(a: (u8, u8), b: (u8, u8)) -> bool {
    let sp = |s: u8| s.div_ceil(2);
    [sp(a.0), sp(a.1)].iter().any(|x| *x == sp(b.0) || *x == sp(b.1))
}

/// Per spoke, whether to exchange its sides so that every arc runs from the
/// even side of a spoke to the odd side of the next spoke on its pre-cap
/// cycle.
fn doubling_swaps(arcs: &[(u8, u8)], k: usize) -> Result<Vec<bool>> {
    let sp = |s: u8| (s as usize).div_ceil(2);
    for &(a, b) in arcs {
        if sp(a) == sp(b) {
            return Err(Error::Cap(format!("arc {a}-{b} returns to its own spoke")));
        }
    }
    let perm: Vec<u8> = {
        // Any permutation with these spoke pairs will do.
        let mut next = vec![0u8; k + 1];
        let mut used = vec![false; arcs.len()];
        for start in 1..=k {
            if next[start] != 0 {
                continue;
            }
            let mut cur = start;
            let mut came_from = usize::MAX;
            loop {
                let i = (0..arcs.len())
                    .find(|&i| !used[i] && (sp(arcs[i].0) == cur || sp(arcs[i].1) == cur) && i != came_from)
                    .expect("each spoke meets two arcs");
                used[i] = true;
                let other = if sp(arcs[i].0) == cur { sp(arcs[i].1) } else { sp(arcs[i].0) };
                next[cur] = other as u8;
                came_from = i;
                cur = other;
                if cur == start {
                    break;
                }
            }
        }
        next[1..].to_vec()
    };
    let pre = PreCap::from_permutation(&perm).ok_or_else(|| Error::Cap("arcs do not form a pre-cap".into()))?;
    let sigma = pre.sigma();
    // Walk each cycle keeping its smallest spoke fixed.
    let mut swapped = vec![false; k];
    for c in pre.sigma_cycles() {
        let start = c[0] as usize;
        let mut out_side = 2 * start as u8;
        let mut cur = start;
        loop {
            let next = sigma[cur] as usize;
            let &(a, b) = arcs.iter().find(|&&(a, b)| a == out_side || b == out_side).expect("side on an arc");
            let far = if a == out_side { b } else { a };
            if sp(far) != next {
                // Leave through the other side instead.
                if cur != start {
                    return Err(Error::Cap("arcs do not follow the pre-cap cycle".into()));
                }
                swapped[cur - 1] = true;
                out_side = 2 * cur as u8 - 1;
                continue;
            }
            if next == start {
                break;
            }
            swapped[next - 1] = far % 2 == 0;
            out_side = if swapped[next - 1] { 2 * next as u8 - 1 } else { 2 * next as u8 };
            cur = next;
        }
    }
    Ok(swapped)
}

/// The Birkhoff diamond inside a hexagonal ring of six vertices, one on each
/// spoke. Edges 0..21 are the region's edges in order; ring edge `21 + i`
/// joins the ends of spokes `i + 1` and `i + 2`.
pub fn birkhoff_with_ring() -> (PlaneTrivalentGraph, RegionEmbedding) {
    let (drawing, internal) = birkhoff_drawing();
    let mut points: Vec<(f64, f64)> = drawing.iter().map(|d| d.1).collect();
    let index = |n: &str| drawing.iter().position(|d| d.0 == n).expect("named vertex");
    let mut spoke_vertex = vec![0; 6];
    for (i, d) in drawing.iter().enumerate() {
        if let Some(k) = d.2 {
            spoke_vertex[k as usize - 1] = i;
        }
    }
    let ring0 = points.len();
    for &v in &spoke_vertex {
        let (x, y) = points[v];
        points.push((2.0 * x, 2.0 * y));
    }
    let mut edges: Vec<(usize, usize)> = (0..6).map(|k| (ring0 + k, spoke_vertex[k])).collect();
    edges.extend(internal.iter().map(|&(a, b)| (index(a), index(b))));
    edges.extend((0..6).map(|k| (ring0 + k, ring0 + (k + 1) % 6)));
    let g = PlaneTrivalentGraph::from_drawing(&points, &edges).expect("ring drawing");
    let spokes = (0..6).map(|k| g.edge(k)[0]).collect();
    let emb = RegionEmbedding::new(&g, spokes, &(0..ring0).collect::<Vec<_>>()).expect("ring embedding");
    (g, emb)
}
