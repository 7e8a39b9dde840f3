//! Test-only oracles, written without the library's tracing code.
#![allow(dead_code)]

use diamond::cap::Cap;
use diamond::region::birkhoff_drawing;

const L: usize = 0;
const R: usize = 1;

/// The Birkhoff diamond as a bare ribbon graph: per boundary side and per
/// half-edge side, where each strand goes in every state.
pub struct Ribbon {
    pub edges: usize,
    /// Half-edge count; node `2h + t`.
    halves: usize,
    corner: Vec<usize>,
    /// Per half-edge: (edge, twin half-edge or `None` for a spoke, spoke number).
    ends: Vec<(usize, Option<usize>, usize)>,
}

impl Ribbon {
    pub fn birkhoff() -> Ribbon {
        let (drawing, internal) = birkhoff_drawing();
        let at = |n: &str| drawing.iter().position(|d| d.0 == n).unwrap();
        // Half-edges: spokes first (edges 0..6 by spoke), then internal edges.
        let mut ends = Vec::new();
        let mut around: Vec<Vec<(f64, usize)>> = vec![Vec::new(); drawing.len()];
        for k in 1..=6u8 {
            let v = drawing.iter().position(|d| d.2 == Some(k)).unwrap();
            let (x, y) = drawing[v].1;
            around[v].push((y.atan2(x), ends.len()));
            ends.push((k as usize - 1, None, k as usize));
        }
        for (i, &(a, b)) in internal.iter().enumerate() {
            let (va, vb) = (at(a), at(b));
            let (pa, pb) = (drawing[va].1, drawing[vb].1);
            let h = ends.len();
            around[va].push(((pb.1 - pa.1).atan2(pb.0 - pa.0), h));
            around[vb].push(((pa.1 - pb.1).atan2(pa.0 - pb.0), h + 1));
            ends.push((6 + i, Some(h + 1), 0));
            ends.push((6 + i, Some(h), 0));
        }
        let halves = ends.len();
        let mut corner = vec![0; 2 * halves];
        for list in around.iter_mut() {
            assert_eq!(list.len(), 3);
            list.sort_by(|a, b| a.0.total_cmp(&b.0));
            for i in 0..3 {
                let (h, g) = (list[i].1, list[(i + 1) % 3].1);
                corner[2 * h + L] = 2 * g + R;
                corner[2 * g + R] = 2 * h + L;
            }
        }
        Ribbon { edges: 6 + internal.len(), halves, corner, ends }
    }

    /// Traces state `index` (bit of edge `e` is `index >> (E-1-e)`).
    /// Returns the side partner (1-based sides, index 0 unused), the
    /// component of each strand `2e + t`, and the component count; paths
    /// are components `0..6`, numbered by their smaller side's rank.
    pub fn trace(&self, index: u32, partner: &mut [u8; 13], strand: &mut Vec<usize>) -> usize {
        let bit = |e: usize| (index >> (self.edges - 1 - e)) & 1 == 1;
        strand.clear();
        strand.resize(2 * self.edges, usize::MAX);
        let mut node_comp = vec![usize::MAX; 2 * self.halves];
        // Where a strand leaves a node across its edge: another node or a side.
        let across = |n: usize| -> Result<usize, u8> {
            let h = n / 2;
            let t = n % 2;
            let (e, twin, spoke) = self.ends[h];
            match twin {
                Some(g) => Ok(if bit(e) { 2 * g + t } else { 2 * g + 1 - t }),
                None => {
                    let left = (t == L) != bit(e);
                    Err(if left { 2 * spoke as u8 - 1 } else { 2 * spoke as u8 })
                }
            }
        };
        let mut comps = 0;
        let mut side_node = [usize::MAX; 13];
        for n in 0..2 * self.halves {
            if let Err(s) = across(n) {
                side_node[s as usize] = n;
            }
        }
        for s in 1..=12u8 {
            let start = side_node[s as usize];
            if node_comp[start] != usize::MAX {
                continue;
            }
            let c = comps;
            comps += 1;
            let mut n = start;
            // Strand of the spoke at this side.
            strand[2 * self.ends[n / 2].0 + usize::from(s % 2 == 0)] = c;
            loop {
                node_comp[n] = c;
                n = self.corner[n];
                node_comp[n] = c;
                match across(n) {
                    Err(t) => {
                        partner[s as usize] = t;
                        partner[t as usize] = s;
                        strand[2 * self.ends[n / 2].0 + usize::from(t % 2 == 0)] = c;
                        break;
                    }
                    Ok(m) => {
                        self.mark(n, m, c, index, strand);
                        n = m;
                    }
                }
            }
        }
        for start in 0..2 * self.halves {
            if node_comp[start] != usize::MAX {
                continue;
            }
            let c = comps;
            comps += 1;
            let mut n = start;
            loop {
                node_comp[n] = c;
                let m = across(n).expect("closed strands avoid the boundary");
                self.mark(n, m, c, index, strand);
                node_comp[m] = c;
                n = self.corner[m];
                if n == start {
                    break;
                }
            }
        }
        comps
    }

    /// Records which strand of the edge joins nodes `n` and `m`.
    fn mark(&self, n: usize, m: usize, c: usize, _index: u32, strand: &mut [usize]) {
        let (e, _, _) = self.ends[n / 2];
        // The two strands of an edge are told apart by the node on the
        // smaller half-edge.
        let low = if n / 2 < m / 2 { n } else { m };
        strand[2 * e + low % 2] = c;
    }
}

/// Arcs of the cap joined into one glued circle by the region's paths:
/// per arc, the smallest arc on its circle.
pub fn glued_roots(arc_of: &[usize], partner: &[u8; 13]) -> [usize; 6] {
    let mut root = [0, 1, 2, 3, 4, 5];
    fn find(r: &[usize; 6], mut x: usize) -> usize {
        while r[x] != x {
            x = r[x];
        }
        x
    }
    for s in 1..=12usize {
        let (a, b) = (find(&root, arc_of[s]), find(&root, arc_of[partner[s] as usize]));
        root[a.max(b)] = a.min(b);
    }
    for i in 0..6 {
        root[i] = find(&root, i);
    }
    root
}

/// Whether the glued state extends the arc colors `colors` to a proper
/// coloring with `n` colors.
pub fn extends(
    cap: &Cap,
    arc_of: &[usize],
    roots: &[usize; 6],
    colors: &[u8],
    strand: &[usize],
    comps: usize,
    n: u8,
) -> bool {
    if (0..6).any(|i| colors[i] != colors[roots[i]]) {
        return false;
    }
    // Path components are found through the spoke strands; closed circles
    // are numbered from 6.
    let mut circle = vec![usize::MAX; comps];
    for s in 1..=12u8 {
        let e = (s as usize - 1) / 2;
        let c = strand[2 * e + usize::from(s % 2 == 0)];
        circle[c] = roots[arc_of[s as usize]];
    }
    for (c, slot) in circle.iter_mut().enumerate() {
        if *slot == usize::MAX {
            *slot = 6 + c;
        }
    }
    let mut color = vec![0u8; 6 + comps];
    for i in 0..6 {
        color[roots[i]] = colors[i];
    }
    let mut pairs = Vec::with_capacity(strand.len() / 2 + 6);
    for e in 0..strand.len() / 2 {
        pairs.push((circle[strand[2 * e]], circle[strand[2 * e + 1]]));
    }
    for (i, j) in cap.interactions() {
        pairs.push((roots[i], roots[j]));
    }
    let mut free = Vec::new();
    for &(a, b) in &pairs {
        if a == b || (color[a] != 0 && color[a] == color[b]) {
            return false;
        }
        for x in [a, b] {
            if color[x] == 0 && !free.contains(&x) {
                free.push(x);
            }
        }
    }
    fn fill(i: usize, free: &[usize], color: &mut [u8], pairs: &[(usize, usize)], n: u8) -> bool {
        if i == free.len() {
            return true;
        }
        let x = free[i];
        for c in 1..=n {
            if pairs.iter().all(|&(a, b)| !((a == x && color[b] == c) || (b == x && color[a] == c))) {
                color[x] = c;
                if fill(i + 1, free, color, pairs, n) {
                    return true;
                }
                color[x] = 0;
            }
        }
        false
    }
    fill(0, &free, &mut color, &pairs, n)
}

/// For each colored cap, the first (recolor set index, state) in the
/// recolor-major search order, over every state of the diamond.
pub fn brute_force_extensions(items: &[(Cap, Vec<u8>)]) -> Vec<Option<(usize, u32)>> {
    let rb = Ribbon::birkhoff();
    let sets: Vec<Vec<Vec<usize>>> = items
        .iter()
        .map(|(cap, _)| {
            let mut out = vec![vec![]];
            out.extend((0..6).map(|i| vec![i]));
            for i in 0..6 {
                for j in i + 1..6 {
                    if !cap.interacts(i, j) {
                        out.push(vec![i, j]);
                    }
                }
            }
            out
        })
        .collect();
    let recolored: Vec<Vec<Vec<u8>>> = items
        .iter()
        .zip(&sets)
        .map(|((_, colors), ss)| {
            ss.iter()
                .map(|s| {
                    let mut c = colors.clone();
                    for &i in s {
                        c[i] = 4;
                    }
                    c
                })
                .collect()
        })
        .collect();
    let arc_of: Vec<Vec<usize>> = items.iter().map(|(cap, _)| cap.arc_of_sides()).collect();
    let mut best: Vec<Option<(usize, u32)>> = vec![None; items.len()];
    let mut partner = [0u8; 13];
    let mut strand = Vec::new();
    for index in 0..1u32 << rb.edges {
        let comps = rb.trace(index, &mut partner, &mut strand);
        for (k, (cap, _)) in items.iter().enumerate() {
            let limit = best[k].map_or(sets[k].len(), |b| b.0);
            if limit == 0 {
                continue;
            }
            let roots = glued_roots(&arc_of[k], &partner);
            for (si, colors) in recolored[k][..limit].iter().enumerate() {
                if extends(cap, &arc_of[k], &roots, colors, &strand, comps, 4) {
                    best[k] = Some((si, index));
                    break;
                }
            }
        }
    }
    best
}

/// Proper `n`-edge-colorings, by backtracking over edges.
pub fn edge_colorings(g: &diamond::graph::PlaneTrivalentGraph, n: u8) -> u64 {
    let m = g.edge_count();
    let ends: Vec<[usize; 2]> = (0..m).map(|e| g.edge(e).map(|h| g.vertex_of(h))).collect();
    fn go(e: usize, ends: &[[usize; 2]], color: &mut Vec<u8>, n: u8) -> u64 {
        if e == ends.len() {
            return 1;
        }
        let mut total = 0;
        for c in 1..=n {
            let clash = (0..e).any(|f| color[f] == c && ends[f].iter().any(|v| ends[e].contains(v)));
            if !clash {
                color[e] = c;
                total += go(e + 1, ends, color, n);
            }
        }
        color[e] = 0;
        total
    }
    go(0, &ends, &mut vec![0; m], n)
}

/// Proper `n`-colorings of the faces of the plane embedding.
pub fn face_colorings(g: &diamond::graph::PlaneTrivalentGraph, n: u8) -> u64 {
    let faces = g.faces();
    let mut face_of = vec![0; g.half_edge_count()];
    for (i, f) in faces.iter().enumerate() {
        for &h in f {
            face_of[h] = i;
        }
    }
    let adj: Vec<(usize, usize)> = (0..g.edge_count())
        .map(|e| {
            let [a, b] = g.edge(e);
            (face_of[a], face_of[b])
        })
        .collect();
    fn go(i: usize, k: usize, adj: &[(usize, usize)], color: &mut Vec<u8>, n: u8) -> u64 {
        if i == k {
            return 1;
        }
        let mut total = 0;
        for c in 1..=n {
            let ok = adj.iter().all(|&(a, b)| {
                !((a == i && b < i && color[b] == c) || (b == i && a < i && color[a] == c) || (a == i && b == i))
            });
            if ok {
                color[i] = c;
                total += go(i + 1, k, adj, color, n);
            }
        }
        color[i] = 0;
        total
    }
    go(0, faces.len(), &adj, &mut vec![0; faces.len()], n)
}

/// Adds `chords.len()` random chords, each across a face chosen by the seed.
pub fn with_chords(mut g: diamond::graph::PlaneTrivalentGraph, chords: &[u64]) -> diamond::graph::PlaneTrivalentGraph {
    for &seed in chords {
        let faces = g.faces();
        let f = &faces[(seed % faces.len() as u64) as usize];
        if f.len() < 2 {
            continue;
        }
        let a = ((seed >> 16) % f.len() as u64) as usize;
        let b = (a + 1 + ((seed >> 32) % (f.len() as u64 - 1)) as usize) % f.len();
        g.insert_chord(f[a], f[b]).expect("chord across a face");
    }
    g
}
