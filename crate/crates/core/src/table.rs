//! Every state of a region reduced to what a cap coloring can see: how the
//! strands pair up the boundary sides, and which strands must differ.
//!
//! Two states with the same pairing and the same constraint shape accept
//! exactly the same side colorings, so each shape is stored once, tagged with
//! the smallest state that has it.

use crate::region::{EdgeEnds, Region, RegionState};
use std::collections::HashMap;

/// Constraint shape of one or more states sharing a pairing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Profile {
    /// Smallest state index with this shape.
    pub state: u32,
    /// Boundary paths (named by a side, 0-based) that must differ.
    pub path_pairs: Vec<(u8, u8)>,
    /// Closed circles inside the region.
    pub closed: u8,
    /// Closed circle and the path it touches.
    pub closed_path: Vec<(u8, u8)>,
    pub closed_pairs: Vec<(u8, u8)>,
}

#[derive(Clone, Debug)]
pub struct PairingClass {
    /// Partner of each boundary side (0-based) through the region.
    pub partner: Vec<u8>,
    /// Sorted by state.
    pub profiles: Vec<Profile>,
}

#[derive(Clone, Debug)]
pub struct RegionTable {
    pub sides: usize,
    pub edges: usize,
    pub classes: Vec<PairingClass>,
    /// States whose shape forces a circle to touch itself.
    pub dead_states: u64,
}

/// Result of matching side colors against the table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Match {
    pub state: u32,
    pub closed_colors: Vec<u8>,
}

/// Work done by [`RegionTable::search`]. Every state of the region belongs
/// to a class that was bounded, rejected, or had its profiles tried.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Classes skipped because their smallest state is above the bound.
    pub classes_bounded: u64,
    /// Classes whose pairing joins sides of different colors.
    pub classes_rejected: u64,
    pub profiles_tried: u64,
}

impl std::ops::AddAssign for SearchStats {
    fn add_assign(&mut self, o: SearchStats) {
        self.classes_bounded += o.classes_bounded;
        self.classes_rejected += o.classes_rejected;
        self.profiles_tried += o.profiles_tried;
    }
}

/// Fixed wiring of a region, ready to be traced per state.
pub(crate) struct Tracer {
    sides: usize,
    /// Corner partner of each half-edge side node (index `2h + t`).
    corner: Vec<u16>,
    /// Per half-edge side node: (edge, partner when flat, strand when flat,
    /// partner when twisted, strand when twisted). Partners at or above
    /// `BOUNDARY` are boundary sides.
    link: Vec<(u8, u16, u8, u16, u8)>,
    /// Per boundary side: (edge, node when flat, node when twisted, strand).
    side_link: Vec<(u8, u16, u16, u8)>,
    edges: usize,
}

const BOUNDARY: u16 = 0x8000;

impl Tracer {
    pub(crate) fn new(region: &Region) -> Tracer {
        let hn = 2 * 3 * region.vertex_count();
        let mut corner = vec![0u16; hn];
        for v in 0..region.vertex_count() {
            for i in 0..3 {
                let (h, g) = (3 * v + i, 3 * v + (i + 1) % 3);
                corner[2 * h] = (2 * g + 1) as u16;
                corner[2 * g + 1] = (2 * h) as u16;
            }
        }
        let sides = 2 * region.spokes();
        let mut link = vec![(0u8, 0u16, 0u8, 0u16, 0u8); hn];
        let mut side_link = vec![(0u8, 0u16, 0u16, 0u8); sides];
        for (e, ends) in region.edges().iter().enumerate() {
            let e8 = e as u8;
            match *ends {
                EdgeEnds::Spoke { spoke, inner } => {
                    let (odd, even) = (2 * spoke as usize - 2, 2 * spoke as usize - 1);
                    let (l, r) = (2 * inner, 2 * inner + 1);
                    side_link[odd] = (e8, l as u16, r as u16, 0);
                    side_link[even] = (e8, r as u16, l as u16, 1);
                    link[l] = (e8, BOUNDARY | odd as u16, 0, BOUNDARY | even as u16, 1);
                    link[r] = (e8, BOUNDARY | even as u16, 1, BOUNDARY | odd as u16, 0);
                }
                EdgeEnds::Chord { a, b } => {
                    let (ao, ae) = (2 * a as usize - 2, 2 * a as usize - 1);
                    let (bo, be) = (2 * b as usize - 2, 2 * b as usize - 1);
                    let f = |x: usize| BOUNDARY | x as u16;
                    side_link[ao] = (e8, f(be), f(bo), 0);
                    side_link[ae] = (e8, f(bo), f(be), 1);
                    side_link[bo] = (e8, f(ae), f(ao), 1);
                    side_link[be] = (e8, f(ao), f(ae), 0);
                }
                EdgeEnds::Internal { a, b } => {
                    let (al, ar, bl, br) = (2 * a, 2 * a + 1, 2 * b, 2 * b + 1);
                    link[al] = (e8, br as u16, 0, bl as u16, 0);
                    link[ar] = (e8, bl as u16, 1, br as u16, 1);
                    link[bl] = (e8, ar as u16, 1, al as u16, 0);
                    link[br] = (e8, al as u16, 0, ar as u16, 1);
                }
            }
        }
        Tracer { sides, corner, link, side_link, edges: region.edge_count() }
    }

    /// Traces one state. Fills `partner` (per side) and `strand` (component of
    /// each edge strand `2e + t`): paths are named by their smaller side,
    /// closed circles by `sides + i`.
    pub(crate) fn trace(&self, state: u32, partner: &mut [u8], strand: &mut [u8], seen: &mut [bool]) {
        let bit = |e: u8| (state >> (self.edges - 1 - e as usize)) & 1 == 1;
        seen.iter_mut().for_each(|s| *s = false);
        for p in partner.iter_mut() {
            *p = u8::MAX;
        }
        for s in 0..self.sides {
            if partner[s] != u8::MAX {
                continue;
            }
            let (e, flat, tw, t) = self.side_link[s];
            strand[2 * e as usize + t as usize] = s as u8;
            let first = if bit(e) { tw } else { flat };
            if first & BOUNDARY != 0 {
                let t = (first & !BOUNDARY) as usize;
                partner[s] = t as u8;
                partner[t] = s as u8;
                continue;
            }
            let mut node = first as usize;
            loop {
                seen[node] = true;
                let c = self.corner[node] as usize;
                seen[c] = true;
                let (e, pf, sf, pt, st) = self.link[c];
                let (p, st) = if bit(e) { (pt, st) } else { (pf, sf) };
                strand[2 * e as usize + st as usize] = s as u8;
                if p & BOUNDARY != 0 {
                    let t = (p & !BOUNDARY) as usize;
                    partner[s] = t as u8;
                    partner[t] = s as u8;
                    break;
                }
                node = p as usize;
            }
        }
        let mut next = self.sides as u8;
        for start in 0..seen.len() {
            if seen[start] {
                continue;
            }
            let mut node = start;
            loop {
                seen[node] = true;
                let c = self.corner[node] as usize;
                seen[c] = true;
                let (e, pf, sf, pt, st) = self.link[c];
                let (p, st) = if bit(e) { (pt, st) } else { (pf, sf) };
                strand[2 * e as usize + st as usize] = next;
                node = p as usize;
                if node == start {
                    break;
                }
            }
            next += 1;
        }
    }
}

impl RegionTable {
    pub fn build(region: &Region) -> RegionTable {
        let tracer = Tracer::new(region);
        let sides = tracer.sides;
        let edges = region.edge_count();
        let mut partner = vec![0u8; sides];
        let mut strand = vec![0u8; 2 * edges];
        let mut seen = vec![false; 6 * region.vertex_count()];
        let mut classes: Vec<PairingClass> = Vec::new();
        let mut class_of: HashMap<Vec<u8>, usize> = HashMap::new();
        let mut shapes: HashMap<(usize, Profile), ()> = HashMap::new();
        let mut dead = 0;
        let sides8 = sides as u8;
        for state in 0..1u32 << edges {
            tracer.trace(state, &mut partner, &mut strand, &mut seen);
            let mut pp = Vec::new();
            let mut cp = Vec::new();
            let mut cc = Vec::new();
            let mut closed = 0u8;
            let mut ok = true;
            for e in 0..edges {
                let (a, b) = (strand[2 * e], strand[2 * e + 1]);
                if a == b {
                    ok = false;
                    break;
                }
                match (a < sides8, b < sides8) {
                    (true, true) => pp.push((a.min(b), a.max(b))),
                    (false, true) => cp.push((a - sides8, b)),
                    (true, false) => cp.push((b - sides8, a)),
                    (false, false) => cc.push(((a - sides8).min(b - sides8), (a - sides8).max(b - sides8))),
                }
                closed = closed.max(a.saturating_sub(sides8 - 1)).max(b.saturating_sub(sides8 - 1));
            }
            if !ok {
                dead += 1;
                continue;
            }
            for v in [&mut pp, &mut cp, &mut cc] {
                v.sort_unstable();
                v.dedup();
            }
            let ci = *class_of.entry(partner.clone()).or_insert_with(|| {
                classes.push(PairingClass { partner: partner.clone(), profiles: Vec::new() });
                classes.len() - 1
            });
            let profile = Profile { state, path_pairs: pp, closed, closed_path: cp, closed_pairs: cc };
            let key = (ci, Profile { state: 0, ..profile.clone() });
            if shapes.insert(key, ()).is_none() {
                classes[ci].profiles.push(profile);
            }
        }
        RegionTable { sides, edges, classes, dead_states: dead }
    }

    pub fn profile_count(&self) -> usize {
        self.classes.iter().map(|c| c.profiles.len()).sum()
    }

    /// Smallest state accepting the given side colors (1-based colors, one per
    /// side, 0-based sides) with `n` colors available to closed circles.
    pub fn first_match(&self, colors: &[u8], n: u8) -> Option<Match> {
        self.first_match_below(colors, n, u32::MAX)
    }

    /// As [`first_match`](Self::first_match), considering only states below `bound`.
    pub fn first_match_below(&self, colors: &[u8], n: u8, bound: u32) -> Option<Match> {
        self.search(colors, n, bound, &mut SearchStats::default())
    }

    /// As [`first_match_below`](Self::first_match_below), counting the work done.
    pub fn search(&self, colors: &[u8], n: u8, bound: u32, stats: &mut SearchStats) -> Option<Match> {
        let mut best: Option<Match> = None;
        for class in &self.classes {
            let limit = best.as_ref().map_or(bound, |m| m.state);
            if class.profiles[0].state >= limit {
                stats.classes_bounded += 1;
                continue;
            }
            if !(0..self.sides).all(|s| colors[s] == colors[class.partner[s] as usize]) {
                stats.classes_rejected += 1;
                continue;
            }
            for p in &class.profiles {
                if p.state >= limit {
                    break;
                }
                stats.profiles_tried += 1;
                if let Some(cols) = accept(p, colors, n) {
                    best = Some(Match { state: p.state, closed_colors: cols });
                    break;
                }
            }
        }
        best
    }

    pub fn state(&self, index: u32) -> RegionState {
        RegionState::new(index, self.edges)
    }
}

/// Colors for the closed circles of `p` given path colors, if any exist.
pub fn accept(p: &Profile, colors: &[u8], n: u8) -> Option<Vec<u8>> {
    if p.path_pairs.iter().any(|&(a, b)| colors[a as usize] == colors[b as usize]) {
        return None;
    }
    let k = p.closed as usize;
    let mut banned = vec![0u32; k];
    for &(c, s) in &p.closed_path {
        banned[c as usize] |= 1 << colors[s as usize];
    }
    let mut out = vec![0u8; k];
    if color_closed(0, &mut out, &banned, &p.closed_pairs, n) {
        Some(out)
    } else {
        None
    }
}

fn color_closed(i: usize, out: &mut [u8], banned: &[u32], pairs: &[(u8, u8)], n: u8) -> bool {
    if i == out.len() {
        return true;
    }
    'color: for c in 1..=n {
        if banned[i] >> c & 1 == 1 {
            continue;
        }
        for &(a, b) in pairs {
            let other = if a as usize == i { b } else if b as usize == i { a } else { continue };
            if (other as usize) < i && out[other as usize] == c {
                continue 'color;
            }
        }
        out[i] = c;
        if color_closed(i + 1, out, banned, pairs, n) {
            return true;
        }
    }
    out[i] = 0;
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::region::{birkhoff_region, reducer_region};

    #[test]
    fn flat_states_pair_neighbouring_spokes() {
        for r in [reducer_region(), birkhoff_region()] {
            let t = Tracer::new(&r);
            let mut partner = vec![0; 12];
            let mut strand = vec![0; 2 * r.edge_count()];
            let mut seen = vec![false; 6 * r.vertex_count()];
            t.trace(0, &mut partner, &mut strand, &mut seen);
            if r.vertex_count() == 12 {
                // Spokes clockwise: side 2k (right of spoke k) meets 2k+1.
                for k in 0..6 {
                    assert_eq!(partner[2 * k + 1] as usize, (2 * k + 2) % 12);
                }
            } else {
                // Sides {1,12} {2,11} {3,10} {4,5} {6,7} {8,9}, 0-based.
                assert_eq!(partner, vec![11, 10, 9, 4, 3, 6, 5, 8, 7, 2, 1, 0]);
            }
        }
    }

    #[test]
    fn reducer_table() {
        let t = RegionTable::build(&reducer_region());
        assert_eq!(t.dead_states, 0);
        assert!(t.classes.iter().all(|c| c.profiles.iter().all(|p| p.closed == 0)));
    }
}
