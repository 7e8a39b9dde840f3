//! Proper colorings of capped states, and the colored caps that survive the
//! reducer.

use crate::cap::Cap;
use crate::region::{CappedState, RegionState};
use crate::table::RegionTable;
use rayon::prelude::*;

/// Colors `1..=n` for each vertex, adjacent vertices distinct, `pinned`
/// vertices fixed. Results in lexicographic order.
pub fn colorings_of(
    vertices: usize,
    pairs: &[(usize, usize)],
    n: u8,
    pinned: &[Option<u8>],
    limit: usize,
) -> Vec<Vec<u8>> {
    assert!(vertices <= 64 && n <= 31);
    if pairs.iter().any(|&(a, b)| a == b) {
        return Vec::new();
    }
    let mut adj = vec![Vec::new(); vertices];
    for &(a, b) in pairs {
        adj[a].push(b);
        adj[b].push(a);
    }
    for l in adj.iter_mut() {
        l.sort_unstable();
        l.dedup();
    }
    let full: u32 = ((1u32 << n) - 1) << 1;
    let mut domain = vec![full; vertices];
    for (v, p) in pinned.iter().enumerate() {
        if let Some(c) = *p {
            domain[v] = if (1..=n).contains(&c) { 1 << c } else { 0 };
        }
    }
    // Most constrained first; ties by index.
    let mut order: Vec<usize> = (0..vertices).collect();
    order.sort_by_key(|&v| (domain[v].count_ones(), std::cmp::Reverse(adj[v].len()), v));
    let mut out = Vec::new();
    let mut color = vec![0u8; vertices];
    search(0, &order, &adj, &mut domain, &mut color, &mut out, limit);
    out.sort();
    out
}

fn search(
    i: usize,
    order: &[usize],
    adj: &[Vec<usize>],
    domain: &mut Vec<u32>,
    color: &mut Vec<u8>,
    out: &mut Vec<Vec<u8>>,
    limit: usize,
) {
    if out.len() >= limit {
        return;
    }
    if i == order.len() {
        out.push(color.clone());
        return;
    }
    let v = order[i];
    let mut d = domain[v];
    while d != 0 {
        let c = d.trailing_zeros();
        d &= d - 1;
        // Forward check: no uncolored neighbour may lose its last color.
        let mut saved = Vec::with_capacity(adj[v].len());
        let mut wiped = false;
        for &w in &adj[v] {
            if color[w] == 0 && domain[w] >> c & 1 == 1 {
                saved.push(w);
                domain[w] &= !(1 << c);
                if domain[w] == 0 {
                    wiped = true;
                }
            }
        }
        if !wiped {
            color[v] = c as u8;
            search(i + 1, order, adj, domain, color, out, limit);
            color[v] = 0;
        }
        for w in saved {
            domain[w] |= 1 << c;
        }
        if out.len() >= limit {
            return;
        }
    }
}

/// All proper `n`-colorings of the circles of a capped state that extend
/// `pinned` (one entry per circle). Empty if a circle is constrained
/// against itself.
pub fn proper_colorings(capped: &CappedState, n: u8, pinned: &[Option<u8>]) -> Vec<Vec<u8>> {
    let pairs: Vec<(usize, usize)> = capped.constraints.iter().map(|c| (c.a, c.b)).collect();
    colorings_of(capped.circles.len(), &pairs, n, pinned, usize::MAX)
}

pub fn first_proper_coloring(capped: &CappedState, n: u8, pinned: &[Option<u8>]) -> Option<Vec<u8>> {
    let pairs: Vec<(usize, usize)> = capped.constraints.iter().map(|c| (c.a, c.b)).collect();
    colorings_of(capped.circles.len(), &pairs, n, pinned, 1).pop()
}

/// Pins the circle through each arc to the arc's color.
pub fn pin_arcs(capped: &CappedState, arc_colors: &[u8]) -> Option<Vec<Option<u8>>> {
    let mut pinned = vec![None; capped.circles.len()];
    for (i, &c) in arc_colors.iter().enumerate() {
        let slot = &mut pinned[capped.arc_circle[i]];
        match *slot {
            Some(old) if old != c => return None,
            _ => *slot = Some(c),
        }
    }
    Some(pinned)
}

/// Constraint pairs between arcs of a cap: shared spokes and diamonds.
pub fn cap_constraints(cap: &Cap) -> Vec<(usize, usize)> {
    let arc_of = cap.arc_of_sides();
    let mut pairs: Vec<(usize, usize)> =
        (1..=cap.spokes()).map(|k| (arc_of[2 * k - 1], arc_of[2 * k])).collect();
    pairs.extend(cap.interactions());
    pairs
}

/// 3-colorings of the arcs alone with the arc at side 1 red (1) and the arc
/// at side 2 blue (2), lexicographic in arc order.
pub fn cap_colorings(cap: &Cap) -> Vec<Vec<u8>> {
    let mut pinned = vec![None; cap.spokes()];
    pinned[cap.arc_of_side(1)] = Some(1);
    pinned[cap.arc_of_side(2)] = Some(2);
    colorings_of(cap.spokes(), &cap_constraints(cap), 3, &pinned, usize::MAX)
}

pub fn colorable_caps_standalone(caps: &[Cap]) -> usize {
    caps.par_iter().filter(|c| !cap_colorings(c).is_empty()).count()
}

/// Side colors (0-based sides) induced by arc colors.
pub fn side_colors(cap: &Cap, arc_colors: &[u8]) -> Vec<u8> {
    let mut out = vec![0u8; 2 * cap.spokes()];
    for (i, &(a, b)) in cap.arcs().iter().enumerate() {
        out[a as usize - 1] = arc_colors[i];
        out[b as usize - 1] = arc_colors[i];
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredCap {
    /// Position in the planar cap list (0-based).
    pub cap_index: usize,
    pub cap: Cap,
    /// One color in 1..=3 per arc.
    pub colors: Vec<u8>,
    /// Smallest reducer state whose capped state takes this coloring.
    pub witness: RegionState,
}

#[derive(Clone, Debug)]
pub struct ReducerColorings {
    pub colored: Vec<ColoredCap>,
    pub caps_with_coloring: usize,
}

/// Keeps each canonical cap coloring that extends to a proper 3-coloring of
/// some reducer capped state. Output ordered by cap, then coloring.
pub fn colored_caps_for_reducer(caps: &[Cap], reducer: &RegionTable) -> ReducerColorings {
    let per_cap: Vec<Vec<ColoredCap>> = caps
        .par_iter()
        .enumerate()
        .map(|(idx, cap)| {
            cap_colorings(cap)
                .into_iter()
                .filter_map(|colors| {
                    let m = reducer.first_match(&side_colors(cap, &colors), 3)?;
                    Some(ColoredCap {
                        cap_index: idx,
                        cap: cap.clone(),
                        colors,
                        witness: reducer.state(m.state),
                    })
                })
                .collect()
        })
        .collect();
    let caps_with_coloring = per_cap.iter().filter(|v| !v.is_empty()).count();
    ReducerColorings { colored: per_cap.into_iter().flatten().collect(), caps_with_coloring }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle() {
        let t = [(0, 1), (1, 2), (0, 2)];
        assert_eq!(colorings_of(3, &t, 3, &[None; 3], usize::MAX).len(), 6);
        assert_eq!(colorings_of(3, &t, 2, &[None; 3], usize::MAX).len(), 0);
        let pinned = [Some(2), None, None];
        let all = colorings_of(3, &t, 3, &pinned, usize::MAX);
        assert_eq!(all, vec![vec![2, 1, 3], vec![2, 3, 1]]);
        assert!(colorings_of(2, &[(0, 0)], 3, &[None; 2], usize::MAX).is_empty());
    }

    #[test]
    fn one_color_with_a_constraint() {
        assert!(colorings_of(2, &[(0, 1)], 1, &[None; 2], usize::MAX).is_empty());
    }

    #[test]
    fn first_basic_cap_colorings() {
        let cap = Cap::new(&[(1, 12), (2, 11), (3, 10), (4, 9), (5, 8), (6, 7)], &[]).unwrap();
        let cs = cap_colorings(&cap);
        assert!(cs.iter().all(|c| c[0] == 1 && c[1] == 2));
        assert!(cs.contains(&vec![1, 2, 1, 2, 1, 3]));
    }
}
