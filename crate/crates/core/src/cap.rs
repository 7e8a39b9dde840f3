//! Caps: six arcs pairing the twelve boundary sides of a configuration, plus
//! the diamond interactions between arcs.
//!
//! Spoke `k` carries sides `2k-1` and `2k`, numbered clockwise.

use crate::error::{Error, Result};
use itertools::Itertools;
use rayon::prelude::*;
use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

pub const SPOKES: usize = 6;

pub fn spoke_of(side: u8) -> u8 {
    side.div_ceil(2)
}

/// Index of the unordered pair `i < j` among `n` items, row by row.
pub fn pair_index(i: usize, j: usize, n: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

pub fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cap {
    arcs: Vec<(u8, u8)>,
    /// Bit `pair_index(i, j)` set when arcs `i` and `j` carry a diamond.
    interactions: u64,
}

impl Cap {
    /// Builds a cap in canonical form. Interactions name arcs by index into
    /// `arcs` as given.
    pub fn new(arcs: &[(u8, u8)], interactions: &[(usize, usize)]) -> Result<Cap> {
        let k = arcs.len();
        if k == 0 || k > 11 {
            return Err(Error::Cap(format!("{k} arcs")));
        }
        let mut used = vec![false; 2 * k + 1];
        for &(a, b) in arcs {
            if a == b {
                return Err(Error::Cap(format!("arc joins side {a} to itself")));
            }
            for s in [a, b] {
                if s == 0 || s as usize > 2 * k {
                    return Err(Error::Cap(format!("side {s} out of range 1..{}", 2 * k)));
                }
                if std::mem::replace(&mut used[s as usize], true) {
                    return Err(Error::Cap(format!("side {s} used twice")));
                }
            }
        }
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by_key(|&i| arcs[i].0.min(arcs[i].1));
        let mut rank = vec![0; k];
        for (r, &i) in order.iter().enumerate() {
            rank[i] = r;
        }
        let canon: Vec<(u8, u8)> =
            order.iter().map(|&i| (arcs[i].0.min(arcs[i].1), arcs[i].0.max(arcs[i].1))).collect();
        let mut cap = Cap { arcs: canon, interactions: 0 };
        for &(i, j) in interactions {
            if i >= k || j >= k {
                return Err(Error::Cap(format!("interaction names arc {} of {k}", i.max(j))));
            }
            if i == j {
                return Err(Error::Cap("interaction of an arc with itself".into()));
            }
            let (a, b) = (rank[i].min(rank[j]), rank[i].max(rank[j]));
            if cap.shares_spoke(a, b) {
                return Err(Error::Cap(format!(
                    "arcs {:?} and {:?} share a spoke",
                    cap.arcs[a], cap.arcs[b]
                )));
            }
            cap.interactions |= 1 << pair_index(a, b, k);
        }
        Ok(cap)
    }

    pub fn spokes(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[(u8, u8)] {
        &self.arcs
    }

    pub fn interaction_mask(&self) -> u64 {
        self.interactions
    }

    pub fn interactions(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let k = self.arcs.len();
        pairs(k).filter(move |&(i, j)| self.interactions >> pair_index(i, j, k) & 1 == 1)
    }

    pub fn has_interaction(&self, i: usize, j: usize) -> bool {
        let (a, b) = (i.min(j), i.max(j));
        a != b && self.interactions >> pair_index(a, b, self.arcs.len()) & 1 == 1
    }

    /// Diamond or shared spoke.
    pub fn interacts(&self, i: usize, j: usize) -> bool {
        self.has_interaction(i, j) || self.shares_spoke(i, j)
    }

    /// Index of the arc containing `side`.
    pub fn arc_of_side(&self, side: u8) -> usize {
        self.arcs.iter().position(|&(a, b)| a == side || b == side).expect("side in range")
    }

    pub fn arc_of_sides(&self) -> Vec<usize> {
        let mut out = vec![0; 2 * self.arcs.len() + 1];
        for (i, &(a, b)) in self.arcs.iter().enumerate() {
            out[a as usize] = i;
            out[b as usize] = i;
        }
        out
    }

    pub fn shares_spoke(&self, i: usize, j: usize) -> bool {
        let (a, b) = (self.arcs[i], self.arcs[j]);
        let sa = [spoke_of(a.0), spoke_of(a.1)];
        sa.contains(&spoke_of(b.0)) || sa.contains(&spoke_of(b.1))
    }

    /// Endpoints alternate around the boundary.
    pub fn interleaved(&self, i: usize, j: usize) -> bool {
        let ((p, q), (r, s)) = (self.arcs[i], self.arcs[j]);
        (p < r && r < q && q < s) || (r < p && p < s && s < q)
    }

    /// True when the chord of arc `z` has both endpoints of one of `x`, `y`
    /// strictly inside it and both endpoints of the other strictly outside.
    pub fn separates(&self, z: usize, x: usize, y: usize) -> bool {
        let (e, f) = self.arcs[z];
        let inside = |s: u8| e < s && s < f;
        let (xa, xb) = self.arcs[x];
        let (ya, yb) = self.arcs[y];
        let (xi, yi) = (inside(xa), inside(ya));
        xi == inside(xb) && yi == inside(yb) && xi != yi
    }

    pub fn with_interactions(&self, mask: u64) -> Cap {
        Cap { arcs: self.arcs.clone(), interactions: mask }
    }

    /// The interactions forced by crossing arcs that do not share a spoke.
    pub fn basic_mask(&self) -> u64 {
        let k = self.arcs.len();
        pairs(k)
            .filter(|&(i, j)| self.interleaved(i, j) && !self.shares_spoke(i, j))
            .fold(0, |m, (i, j)| m | 1 << pair_index(i, j, k))
    }

    pub fn spoke_mask(&self) -> u64 {
        let k = self.arcs.len();
        pairs(k)
            .filter(|&(i, j)| self.shares_spoke(i, j))
            .fold(0, |m, (i, j)| m | 1 << pair_index(i, j, k))
    }

    pub fn basic(&self) -> Cap {
        self.with_interactions(self.basic_mask())
    }

    /// The spoke permutation of the arcs, in the pairing form of a pre-cap.
    pub fn precap(&self) -> PreCap {
        PreCap::from_pairs(
            self.arcs.iter().map(|&(a, b)| (spoke_of(a), spoke_of(b))).collect(),
        )
    }

    /// Product notation, e.g. `arc[1,12] arc[2,3] V[1,4]`.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Cap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &(a, b) in &self.arcs {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "arc[{a},{b}]")?;
        }
        for (i, j) in self.interactions() {
            write!(f, " V[{},{}]", self.arcs[i].0, self.arcs[j].0)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cap({self})")
    }
}

/// True when every diamond is consistent with a planar outside: any arc whose
/// chord separates two interacting arcs must itself interact with one of them.
pub fn is_planar_cap(cap: &Cap) -> bool {
    let k = cap.spokes();
    cap.interactions().all(|(x, y)| {
        (0..k).all(|z| {
            z == x
                || z == y
                || !cap.separates(z, x, y)
                || cap.interacts(z, x)
                || cap.interacts(z, y)
        })
    })
}

/// Multiset of unordered spoke pairs `{k, σ(k)}` of a fixed-point-free
/// permutation σ, kept sorted.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PreCap {
    pairs: Vec<(u8, u8)>,
}

impl PreCap {
    pub fn from_permutation(sigma: &[u8]) -> Option<PreCap> {
        let mut pairs = Vec::with_capacity(sigma.len());
        for (i, &t) in sigma.iter().enumerate() {
            let k = i as u8 + 1;
            if t == k {
                return None;
            }
            pairs.push((k, t));
        }
        Some(PreCap::from_pairs(pairs))
    }

    fn from_pairs(mut pairs: Vec<(u8, u8)>) -> PreCap {
        for p in pairs.iter_mut() {
            *p = (p.0.min(p.1), p.0.max(p.1));
        }
        pairs.sort_unstable();
        PreCap { pairs }
    }

    pub fn pairs(&self) -> &[(u8, u8)] {
        &self.pairs
    }

    /// Distinct pairs with their multiplicities, ascending.
    fn factors(&self) -> Vec<((u8, u8), usize)> {
        self.pairs.iter().dedup_with_count().map(|(n, &p)| (p, n)).collect()
    }

    /// Cycle lengths of the underlying permutation, in traversal order.
    pub fn cycle_type(&self) -> Vec<usize> {
        self.sigma_cycles().iter().map(|c| c.len()).collect()
    }

    /// Each cycle starts at its smallest spoke and heads to the smaller of
    /// that spoke's two neighbours.
    pub fn sigma_cycles(&self) -> Vec<Vec<u8>> {
        let k = self.pairs.len();
        let mut nbrs: Vec<Vec<u8>> = vec![Vec::new(); k + 1];
        for &(a, b) in &self.pairs {
            nbrs[a as usize].push(b);
            nbrs[b as usize].push(a);
        }
        let mut done = vec![false; k + 1];
        let mut cycles = Vec::new();
        for start in 1..=k as u8 {
            if done[start as usize] {
                continue;
            }
            let mut cycle = vec![start];
            done[start as usize] = true;
            let mut prev = start;
            let mut cur = *nbrs[start as usize].iter().min().unwrap();
            while cur != start {
                cycle.push(cur);
                done[cur as usize] = true;
                let n = &nbrs[cur as usize];
                let next = if n[0] == prev && n[1] != prev { n[1] } else if n[1] == prev { n[0] } else { n[1] };
                prev = cur;
                cur = next;
            }
            cycles.push(cycle);
        }
        cycles
    }

    pub fn sigma(&self) -> Vec<u8> {
        let mut sigma = vec![0u8; self.pairs.len() + 1];
        for c in self.sigma_cycles() {
            for (i, &k) in c.iter().enumerate() {
                sigma[k as usize] = c[(i + 1) % c.len()];
            }
        }
        sigma
    }
}

/// Order of the published numbering: factor lists compared from the largest
/// factor down, a factor by pair then multiplicity; a list that runs out
/// first sorts first.
pub fn precap_order(a: &PreCap, b: &PreCap) -> Ordering {
    let (fa, fb) = (a.factors(), b.factors());
    for (x, y) in fa.iter().rev().zip(fb.iter().rev()) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    fa.len().cmp(&fb.len())
}

/// All pre-caps for `k` spokes in the published order.
pub fn generate_precaps_k(k: usize) -> Vec<PreCap> {
    let mut set: BTreeSet<Vec<(u8, u8)>> = BTreeSet::new();
    for perm in (1..=k as u8).permutations(k) {
        if let Some(p) = PreCap::from_permutation(&perm) {
            set.insert(p.pairs);
        }
    }
    let mut out: Vec<PreCap> = set.into_iter().map(|pairs| PreCap { pairs }).collect();
    out.sort_by(precap_order);
    out
}

pub fn generate_precaps() -> Vec<PreCap> {
    generate_precaps_k(SPOKES)
}

/// Doubles the spoke permutation into arcs `{2k, 2σ(k)-1}` and adds the
/// diamonds forced by crossings.
pub fn precap_to_basic_cap(p: &PreCap) -> Cap {
    let sigma = p.sigma();
    let arcs: Vec<(u8, u8)> = (1..sigma.len()).map(|k| (2 * k as u8, 2 * sigma[k] - 1)).collect();
    Cap::new(&arcs, &[]).expect("doubled pre-cap is a cap").basic()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CapGeneration {
    pub precaps: Vec<PreCap>,
    pub basic_caps: Vec<Cap>,
    /// Distinct nonzero candidates before the planarity sift.
    pub candidates: usize,
    pub caps: Vec<Cap>,
    /// Basic-cap index of each planar cap.
    pub block: Vec<usize>,
}

/// Candidate caps of one basic cap: its forced diamonds plus every subset of
/// the remaining pairs that share no spoke, subsets by size and then
/// lexicographically. Each distinct candidate appears once.
pub fn block_candidates(basic: &Cap) -> impl Iterator<Item = Cap> + '_ {
    let k = basic.spokes();
    let forced = basic.interaction_mask();
    let blocked = forced | basic.spoke_mask();
    let free: Vec<usize> = (0..k * (k - 1) / 2).filter(|b| blocked >> b & 1 == 0).collect();
    (0..=free.len()).flat_map(move |r| {
        free.clone()
            .into_iter()
            .combinations(r)
            .map(move |c| basic.with_interactions(c.iter().fold(forced, |m, &b| m | 1 << b)))
    })
}

pub fn generate_planar_caps() -> CapGeneration {
    let precaps = generate_precaps();
    let basic_caps: Vec<Cap> = precaps.iter().map(precap_to_basic_cap).collect();
    let blocks: Vec<(usize, Vec<Cap>)> = basic_caps
        .par_iter()
        .map(|b| {
            let mut n = 0;
            let caps = block_candidates(b).inspect(|_| n += 1).filter(is_planar_cap).collect();
            (n, caps)
        })
        .collect();
    let candidates = blocks.iter().map(|(n, _)| n).sum();
    let mut caps = Vec::new();
    let mut block = Vec::new();
    for (i, (_, c)) in blocks.into_iter().enumerate() {
        block.extend(std::iter::repeat(i).take(c.len()));
        caps.extend(c);
    }
    CapGeneration { precaps, basic_caps, candidates, caps, block }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cap(arcs: &[(u8, u8)], v: &[(u8, u8)]) -> Cap {
        let c = Cap::new(arcs, &[]).unwrap();
        let ix: Vec<(usize, usize)> =
            v.iter().map(|&(a, b)| (c.arc_of_side(a), c.arc_of_side(b))).collect();
        Cap::new(arcs, &ix).unwrap()
    }

    const B91: [(u8, u8); 6] = [(1, 12), (2, 3), (4, 9), (5, 8), (6, 7), (10, 11)];

    #[test]
    fn doubling_of_fig9_permutation() {
        let p = PreCap::from_permutation(&[2, 5, 4, 3, 6, 1]).unwrap();
        assert_eq!(precap_to_basic_cap(&p), cap(&B91, &[]));
    }

    #[test]
    fn published_numbering() {
        let pcs = generate_precaps();
        assert_eq!(pcs.len(), 130);
        let first = precap_to_basic_cap(&pcs[0]);
        assert_eq!(first.to_string(), "arc[1,12] arc[2,11] arc[3,10] arc[4,9] arc[5,8] arc[6,7]");
        assert_eq!(precap_to_basic_cap(&pcs[90]), cap(&B91, &[]));
    }

    #[test]
    fn sift_example() {
        assert!(!is_planar_cap(&cap(&B91, &[(1, 5)])));
        assert!(is_planar_cap(&cap(&B91, &[(1, 5), (1, 4)])));
        assert!(is_planar_cap(&cap(&B91, &[(1, 5), (4, 5)])));
        assert!(is_planar_cap(&cap(&B91, &[])));
    }

    #[test]
    fn fig6_basic_caps() {
        // B' has arc[1,5] crossing arc[4,12].
        let bp = Cap::new(&[(1, 5), (2, 3), (4, 12), (6, 7), (8, 9), (10, 11)], &[]).unwrap();
        assert!(bp.basic().has_interaction(bp.arc_of_side(1), bp.arc_of_side(4)));
        assert_eq!(cap(&B91, &[]).basic_mask(), 0);
    }

    #[test]
    fn rejects_malformed() {
        assert!(Cap::new(&[(1, 1)], &[]).is_err());
        assert!(Cap::new(&[(1, 3), (2, 3)], &[]).is_err());
        assert!(Cap::new(&[(1, 3), (2, 5)], &[]).is_err());
        // arc[1,12] and arc[2,3] share spoke 1.
        assert!(Cap::new(&B91, &[(0, 1)]).is_err());
    }

    #[test]
    fn pair_index_is_dense() {
        let v: Vec<usize> = pairs(6).map(|(i, j)| pair_index(i, j, 6)).collect();
        assert_eq!(v, (0..15).collect::<Vec<_>>());
    }
}
