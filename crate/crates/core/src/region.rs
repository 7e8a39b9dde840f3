//! Configuration regions with spokes, their relative states, and gluing a
//! cap onto a region state.
//!
//! Internal vertex `v` owns half-edges `3v..3v+3` in counterclockwise order.
//! Looking out along a flat spoke `k`, its left side meets boundary side
//! `2k-1` and its right side meets `2k`; a twisted spoke swaps them.

use crate::cap::Cap;
use crate::error::{Error, Result};
use std::collections::HashMap;
use std::fmt::Write as _;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeEnds {
    /// Spoke number (1-based) and its inner half-edge.
    Spoke { spoke: u8, inner: usize },
    /// An edge running straight from spoke `a` to spoke `b` (`a < b`) with no
    /// vertex inside the region.
    Chord { a: u8, b: u8 },
    Internal { a: usize, b: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    name: String,
    spokes: usize,
    vertex_names: Vec<String>,
    /// Per vertex, the three neighbours counterclockwise (for the text form).
    neighbours: Vec<[Nbr; 3]>,
    edges: Vec<EdgeEnds>,
    edge_of: Vec<usize>,
    blowup: Vec<u16>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Nbr {
    Spoke(u8),
    Vertex(usize),
}

impl Region {
    /// Builds a region from named vertices, each with its three neighbours
    /// counterclockwise, and the internal edge order. A neighbour `@K` is
    /// spoke `K`.
    pub fn from_rotations(
        name: &str,
        spokes: usize,
        vertices: &[(&str, [&str; 3])],
        internal_edges: &[(&str, &str)],
    ) -> Result<Region> {
        Region::with_chords(name, spokes, vertices, &[], internal_edges)
    }

    /// As [`Region::from_rotations`], with chords joining pairs of spokes
    /// directly. A chord takes the edge slot of its smaller spoke.
    pub fn with_chords(
        name: &str,
        spokes: usize,
        vertices: &[(&str, [&str; 3])],
        chords: &[(u8, u8)],
        internal_edges: &[(&str, &str)],
    ) -> Result<Region> {
        let index: HashMap<&str, usize> =
            vertices.iter().enumerate().map(|(i, (n, _))| (*n, i)).collect();
        if index.len() != vertices.len() {
            return Err(Error::Region("duplicate vertex name".into()));
        }
        let nbr = |w: &str| -> Result<Nbr> {
            if let Some(&v) = index.get(w) {
                return Ok(Nbr::Vertex(v));
            }
            match w.strip_prefix('@').and_then(|k| k.parse::<u8>().ok()) {
                Some(k) if k >= 1 && k as usize <= spokes => Ok(Nbr::Spoke(k)),
                _ => Err(Error::Region(format!("unknown neighbour {w:?}"))),
            }
        };
        let neighbours = vertices
            .iter()
            .map(|(_, ns)| Ok([nbr(ns[0])?, nbr(ns[1])?, nbr(ns[2])?]))
            .collect::<Result<Vec<_>>>()?;
        let mut spoke_inner = vec![None; spokes + 1];
        for (v, ns) in neighbours.iter().enumerate() {
            for (i, n) in ns.iter().enumerate() {
                match *n {
                    Nbr::Spoke(k) => {
                        if spoke_inner[k as usize].replace(3 * v + i).is_some() {
                            return Err(Error::Region(format!("spoke {k} attached twice")));
                        }
                    }
                    Nbr::Vertex(w) => {
                        let back = neighbours[w].iter().filter(|&&x| x == Nbr::Vertex(v)).count();
                        let here = ns.iter().filter(|&&x| x == Nbr::Vertex(w)).count();
                        if back != 1 || here != 1 {
                            return Err(Error::Region(format!(
                                "vertices {} and {} must be joined by exactly one edge",
                                vertices[v].0, vertices[w].0
                            )));
                        }
                    }
                }
            }
        }
        let mut chord_at = vec![None; spokes + 1];
        for &(a, b) in chords {
            let (a, b) = (a.min(b), a.max(b));
            if a == 0 || a == b || b as usize > spokes {
                return Err(Error::Region(format!("bad chord {a}-{b}")));
            }
            for k in [a, b] {
                if spoke_inner[k as usize].is_some() || chord_at[k as usize].is_some() {
                    return Err(Error::Region(format!("spoke {k} attached twice")));
                }
            }
            chord_at[a as usize] = Some((a, b));
            chord_at[b as usize] = Some((a, b));
        }
        let mut edges = Vec::new();
        for (k, inner) in spoke_inner.iter().enumerate().skip(1) {
            match (*inner, chord_at[k]) {
                (Some(inner), _) => edges.push(EdgeEnds::Spoke { spoke: k as u8, inner }),
                (None, Some((a, b))) if a as usize == k => edges.push(EdgeEnds::Chord { a, b }),
                (None, Some(_)) => {}
                (None, None) => return Err(Error::Region(format!("spoke {k} not attached"))),
            }
        }
        let slot = |v: usize, w: usize| neighbours[v].iter().position(|&x| x == Nbr::Vertex(w));
        for &(a, b) in internal_edges {
            let (va, vb) = match (index.get(a), index.get(b)) {
                (Some(&x), Some(&y)) => (x, y),
                _ => return Err(Error::Region(format!("edge {a}-{b} names an unknown vertex"))),
            };
            match (slot(va, vb), slot(vb, va)) {
                (Some(i), Some(j)) => edges.push(EdgeEnds::Internal { a: 3 * va + i, b: 3 * vb + j }),
                _ => return Err(Error::Region(format!("edge {a}-{b} not in the rotations"))),
            }
        }
        let mut edge_of = vec![usize::MAX; 3 * vertices.len()];
        for (e, ends) in edges.iter().enumerate() {
            let hs = match *ends {
                EdgeEnds::Spoke { inner, .. } => vec![inner],
                EdgeEnds::Chord { .. } => vec![],
                EdgeEnds::Internal { a, b } => vec![a, b],
            };
            for h in hs {
                if edge_of[h] != usize::MAX {
                    return Err(Error::Region(format!("edge listed twice at half-edge {h}")));
                }
                edge_of[h] = e;
            }
        }
        if edge_of.contains(&usize::MAX) {
            return Err(Error::Region("an internal edge is missing from the edge list".into()));
        }
        if edges.len() > 31 {
            return Err(Error::Region(format!("{} edges is more than 31", edges.len())));
        }
        let first = 2 * spokes as u16 + 1;
        Ok(Region {
            name: name.to_string(),
            spokes,
            vertex_names: vertices.iter().map(|(n, _)| n.to_string()).collect(),
            neighbours,
            edges,
            edge_of,
            blowup: (0..3 * vertices.len() as u16).map(|i| first + i).collect(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn spokes(&self) -> usize {
        self.spokes
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[EdgeEnds] {
        &self.edges
    }

    pub fn state_count(&self) -> u64 {
        1 << self.edges.len()
    }

    /// Label of the corner between slots `i` and `i+1` of vertex `v`.
    pub fn blowup_label(&self, v: usize, i: usize) -> u16 {
        self.blowup[3 * v + i]
    }

    pub fn blowup_labels(&self) -> &[u16] {
        &self.blowup
    }

    /// Strands of the region in state `s`, as links between nodes. Boundary
    /// side `j` (1-based) is node `j - 1`; side `t` of half-edge `h` is node
    /// `2k + 2h + t`.
    pub(crate) fn links(&self, state: RegionState) -> Vec<Link> {
        let k2 = 2 * self.spokes;
        let node = |h: usize, t: usize| k2 + 2 * h + t;
        let mut out = Vec::with_capacity(3 * self.vertex_count() + 2 * self.edges.len());
        for v in 0..self.vertex_count() {
            for i in 0..3 {
                let (h, g) = (3 * v + i, 3 * v + (i + 1) % 3);
                out.push(Link { a: node(h, 0), b: node(g, 1), kind: LinkKind::Corner(self.blowup[h]) });
            }
        }
        for (e, ends) in self.edges.iter().enumerate() {
            let tw = state.bit(e) as usize;
            match *ends {
                EdgeEnds::Spoke { spoke, inner } => {
                    let (odd, even) = (2 * spoke as usize - 2, 2 * spoke as usize - 1);
                    out.push(Link { a: odd, b: node(inner, tw), kind: LinkKind::Strand(e, 0) });
                    out.push(Link { a: even, b: node(inner, 1 - tw), kind: LinkKind::Strand(e, 1) });
                }
                EdgeEnds::Chord { a, b } => {
                    let (ao, ae) = (2 * a as usize - 2, 2 * a as usize - 1);
                    let (bo, be) = (2 * b as usize - 2, 2 * b as usize - 1);
                    let (x, y) = if tw == 0 { (be, bo) } else { (bo, be) };
                    out.push(Link { a: ao, b: x, kind: LinkKind::Strand(e, 0) });
                    out.push(Link { a: ae, b: y, kind: LinkKind::Strand(e, 1) });
                }
                EdgeEnds::Internal { a, b } => {
                    out.push(Link { a: node(a, 0), b: node(b, 1 - tw), kind: LinkKind::Strand(e, 0) });
                    out.push(Link { a: node(a, 1), b: node(b, tw), kind: LinkKind::Strand(e, 1) });
                }
            }
        }
        out
    }

    pub fn node_count(&self) -> usize {
        2 * self.spokes + 6 * self.vertex_count()
    }

    /// Text form: `name`, `spokes`, one `vertex` line per vertex with its
    /// neighbours counterclockwise, one `edge` line per internal edge, and
    /// `blowup` lines giving each vertex's corner labels.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "name {}", self.name);
        let _ = writeln!(out, "spokes {}", self.spokes);
        let show = |n: &Nbr| match *n {
            Nbr::Spoke(k) => format!("@{k}"),
            Nbr::Vertex(w) => self.vertex_names[w].clone(),
        };
        for (v, ns) in self.neighbours.iter().enumerate() {
            let _ = writeln!(
                out,
                "vertex {} {} {} {}",
                self.vertex_names[v],
                show(&ns[0]),
                show(&ns[1]),
                show(&ns[2])
            );
        }
        for e in &self.edges {
            if let EdgeEnds::Chord { a, b } = *e {
                let _ = writeln!(out, "chord @{a} @{b}");
            }
        }
        for e in &self.edges {
            if let EdgeEnds::Internal { a, b } = *e {
                let _ = writeln!(out, "edge {} {}", self.vertex_names[a / 3], self.vertex_names[b / 3]);
            }
        }
        for v in 0..self.vertex_count() {
            let l = &self.blowup[3 * v..3 * v + 3];
            let _ = writeln!(out, "blowup {} {} {} {}", self.vertex_names[v], l[0], l[1], l[2]);
        }
        out
    }

    pub fn parse(text: &str) -> Result<Region> {
        let mut name = None;
        let mut spokes = None;
        let mut vertices: Vec<(String, [String; 3])> = Vec::new();
        let mut edges: Vec<(String, String)> = Vec::new();
        let mut chords: Vec<(u8, u8)> = Vec::new();
        let mut blowups: Vec<(String, [u16; 3])> = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let w: Vec<&str> = line.split_whitespace().collect();
            let bad = || Error::Region(format!("line {}: cannot read {line:?}", ln + 1));
            match w.as_slice() {
                ["name", n] => name = Some(n.to_string()),
                ["spokes", k] => spokes = Some(k.parse::<usize>().map_err(|_| bad())?),
                ["vertex", v, a, b, c] => {
                    vertices.push((v.to_string(), [a.to_string(), b.to_string(), c.to_string()]))
                }
                ["edge", a, b] => edges.push((a.to_string(), b.to_string())),
                ["chord", a, b] => {
                    let p = |s: &str| s.strip_prefix('@').and_then(|k| k.parse::<u8>().ok()).ok_or_else(bad);
                    chords.push((p(a)?, p(b)?));
                }
                ["blowup", v, x, y, z] => {
                    let p = |s: &str| s.parse::<u16>().map_err(|_| bad());
                    blowups.push((v.to_string(), [p(x)?, p(y)?, p(z)?]));
                }
                _ => return Err(bad()),
            }
        }
        let spokes = spokes.ok_or_else(|| Error::Region("missing `spokes` line".into()))?;
        let vs: Vec<(&str, [&str; 3])> = vertices
            .iter()
            .map(|(n, ns)| (n.as_str(), [ns[0].as_str(), ns[1].as_str(), ns[2].as_str()]))
            .collect();
        let es: Vec<(&str, &str)> = edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let mut region =
            Region::with_chords(name.as_deref().unwrap_or("region"), spokes, &vs, &chords, &es)?;
        for (v, labels) in blowups {
            let i = region
                .vertex_names
                .iter()
                .position(|n| *n == v)
                .ok_or_else(|| Error::Region(format!("blowup for unknown vertex {v}")))?;
            region.blowup[3 * i..3 * i + 3].copy_from_slice(&labels);
        }
        let mut seen = region.blowup.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != region.blowup.len() || seen[0] as usize <= 2 * spokes {
            return Err(Error::Region("blowup labels must be distinct and above the side labels".into()));
        }
        Ok(region)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum LinkKind {
    Corner(u16),
    Arc(usize),
    /// Strand `t` of region edge `e`.
    Strand(usize, u8),
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Link {
    pub a: usize,
    pub b: usize,
    pub kind: LinkKind,
}

/// One twist bit per region edge. States are numbered so that counting up
/// walks the bit strings `b0 b1 ... b(E-1)` in lexicographic order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RegionState {
    index: u32,
    len: u8,
}

impl RegionState {
    pub fn new(index: u32, len: usize) -> RegionState {
        assert!(len <= 31 && (index as u64) < 1u64 << len);
        RegionState { index, len: len as u8 }
    }

    pub fn index(self) -> u32 {
        self.index
    }

    pub fn len(self) -> usize {
        self.len as usize
    }

    pub fn is_empty(self) -> bool {
        self.len == 0
    }

    pub fn bit(self, e: usize) -> bool {
        self.index >> (self.len as usize - 1 - e) & 1 == 1
    }

    pub fn from_bits(bits: &str) -> Result<RegionState> {
        let len = bits.len();
        if len == 0 || len > 31 || !bits.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(Error::Region(format!("bad state bits {bits:?}")));
        }
        Ok(RegionState::new(u32::from_str_radix(bits, 2).unwrap(), len))
    }
}

impl std::fmt::Display for RegionState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:0width$b}", self.index, width = self.len as usize)
    }
}

pub fn region_states(region: &Region) -> impl Iterator<Item = RegionState> {
    let len = region.edge_count();
    (0..1u32 << len).map(move |i| RegionState::new(i, len))
}

/// Piece of a capped-state circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Piece {
    /// Cap arc by index.
    Arc(usize),
    Blowup(u16),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Source {
    RegionEdge(usize),
    /// Diamond between two cap arcs.
    Diamond(usize, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub a: usize,
    pub b: usize,
    pub source: Source,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CappedState {
    pub cap: Cap,
    pub region: String,
    pub state: RegionState,
    pub circles: Vec<Vec<Piece>>,
    /// Region edges in order, then the cap's diamonds.
    pub constraints: Vec<Constraint>,
    pub arc_circle: Vec<usize>,
}

impl CappedState {
    /// Side and blowup labels on a circle, ascending.
    pub fn labels(&self, circle: usize) -> Vec<u16> {
        let arcs = self.cap.arcs();
        let mut out: Vec<u16> = self.circles[circle]
            .iter()
            .flat_map(|p| match *p {
                Piece::Arc(i) => vec![arcs[i].0 as u16, arcs[i].1 as u16],
                Piece::Blowup(l) => vec![l],
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn has_self_constraint(&self) -> bool {
        self.constraints.iter().any(|c| c.a == c.b)
    }
}

/// Joins the cap's arcs to the region's strands in the given state.
pub fn glue(cap: &Cap, region: &Region, state: RegionState) -> Result<CappedState> {
    if cap.spokes() != region.spokes() {
        return Err(Error::SpokeMismatch { cap: cap.spokes(), region: region.spokes() });
    }
    if state.len() != region.edge_count() {
        return Err(Error::Region(format!(
            "state has {} bits, region has {} edges",
            state.len(),
            region.edge_count()
        )));
    }
    let n = region.node_count();
    let mut links = region.links(state);
    let arc_base = links.len();
    for (i, &(a, b)) in cap.arcs().iter().enumerate() {
        links.push(Link { a: a as usize - 1, b: b as usize - 1, kind: LinkKind::Arc(i) });
    }
    let mut at: Vec<[usize; 2]> = vec![[usize::MAX; 2]; n];
    for (li, l) in links.iter().enumerate() {
        for x in [l.a, l.b] {
            let slot = if at[x][0] == usize::MAX { 0 } else { 1 };
            at[x][slot] = li;
        }
    }
    let mut link_circle = vec![usize::MAX; links.len()];
    let mut circles: Vec<Vec<Piece>> = Vec::new();
    for start in 0..links.len() {
        if link_circle[start] != usize::MAX {
            continue;
        }
        let c = circles.len();
        let mut pieces = Vec::new();
        let mut li = start;
        let mut node = links[start].a;
        loop {
            link_circle[li] = c;
            match links[li].kind {
                LinkKind::Arc(i) => pieces.push(Piece::Arc(i)),
                LinkKind::Corner(l) => pieces.push(Piece::Blowup(l)),
                LinkKind::Strand(..) => {}
            }
            node = if links[li].a == node { links[li].b } else { links[li].a };
            li = if at[node][0] == li { at[node][1] } else { at[node][0] };
            if li == start {
                break;
            }
        }
        circles.push(pieces);
    }
    // Order circles by their smallest label.
    let arcs = cap.arcs();
    let key = |ps: &Vec<Piece>| {
        ps.iter()
            .map(|p| match *p {
                Piece::Arc(i) => arcs[i].0 as u16,
                Piece::Blowup(l) => l,
            })
            .min()
            .unwrap()
    };
    let mut order: Vec<usize> = (0..circles.len()).collect();
    order.sort_by_key(|&c| key(&circles[c]));
    let mut rank = vec![0; circles.len()];
    for (r, &c) in order.iter().enumerate() {
        rank[c] = r;
    }
    let circles: Vec<Vec<Piece>> = order.iter().map(|&c| circles[c].clone()).collect();
    let mut strand = vec![[0usize; 2]; region.edge_count()];
    for (li, l) in links.iter().enumerate() {
        if let LinkKind::Strand(e, t) = l.kind {
            strand[e][t as usize] = rank[link_circle[li]];
        }
    }
    let mut constraints: Vec<Constraint> = strand
        .iter()
        .enumerate()
        .map(|(e, s)| Constraint { a: s[0], b: s[1], source: Source::RegionEdge(e) })
        .collect();
    let arc_circle: Vec<usize> =
        (0..cap.spokes()).map(|i| rank[link_circle[arc_base + i]]).collect();
    for (i, j) in cap.interactions() {
        constraints.push(Constraint { a: arc_circle[i], b: arc_circle[j], source: Source::Diamond(i, j) });
    }
    Ok(CappedState {
        cap: cap.clone(),
        region: region.name().to_string(),
        state,
        circles,
        constraints,
        arc_circle,
    })
}

/// The Birkhoff diamond: four pentagons around the central edge `u v`, drawn
/// with the northern tip `n2 n1` on top. Spokes run clockwise `n1 x2 s1 s2 w2
/// n2`, so the spoke pairs 3,4 and 6,1 sit on the two tips.
pub fn birkhoff_region() -> Region {
    let (drawing, edges) = birkhoff_drawing();
    Region::from_drawing("birkhoff-diamond", 6, &drawing, &edges).expect("Birkhoff diamond")
}

/// Vertex positions (with the spoke each spoke vertex carries) and internal
/// edges of the Birkhoff diamond.
#[allow(clippy::type_complexity)]
pub fn birkhoff_drawing() -> (Vec<(&'static str, (f64, f64), Option<u8>)>, Vec<(&'static str, &'static str)>) {
    let drawing = vec![
        ("u", (0.0, 1.0), None),
        ("v", (0.0, -1.0), None),
        ("w1", (-1.0, -1.5), None),
        ("w2", (-2.0, 0.0), Some(5)),
        ("w3", (-1.0, 1.5), None),
        ("x1", (1.0, -1.5), None),
        ("x2", (2.0, 0.0), Some(2)),
        ("x3", (1.0, 1.5), None),
        ("n1", (0.5, 3.0), Some(1)),
        ("n2", (-0.5, 3.0), Some(6)),
        ("s1", (0.5, -3.0), Some(3)),
        ("s2", (-0.5, -3.0), Some(4)),
    ];
    let edges = vec![
        ("u", "v"),
        ("v", "w1"),
        ("w1", "w2"),
        ("w2", "w3"),
        ("w3", "u"),
        ("v", "x1"),
        ("x1", "x2"),
        ("x2", "x3"),
        ("x3", "u"),
        ("x3", "n1"),
        ("n1", "n2"),
        ("n2", "w3"),
        ("x1", "s1"),
        ("s1", "s2"),
        ("s2", "w1"),
    ];
    (drawing, edges)
}

/// The reducer: vertex `a` on spokes 2 and 3, vertex `b` on spokes 4 and 5,
/// an edge `a`-`b`, and a chord from spoke 6 to spoke 1. Edges in order:
/// chord 1-6, spokes 2..5, then `a`-`b`.
pub fn reducer_region() -> Region {
    Region::with_chords(
        "reducer",
        6,
        &[("a", ["b", "@3", "@2"]), ("b", ["a", "@5", "@4"])],
        &[(6, 1)],
        &[("a", "b")],
    )
    .expect("reducer")
}

impl Region {
    /// Builds a region from a straight-line drawing. Spoke vertices send their
    /// spoke straight away from the origin.
    pub fn from_drawing(
        name: &str,
        spokes: usize,
        drawing: &[(&str, (f64, f64), Option<u8>)],
        internal_edges: &[(&str, &str)],
    ) -> Result<Region> {
        let pos: HashMap<&str, (f64, f64)> = drawing.iter().map(|(n, p, _)| (*n, *p)).collect();
        let mut around: Vec<Vec<(f64, String)>> = vec![Vec::new(); drawing.len()];
        let at = |n: &str| drawing.iter().position(|d| d.0 == n);
        for &(a, b) in internal_edges {
            let (ia, ib) = match (at(a), at(b)) {
                (Some(x), Some(y)) => (x, y),
                _ => return Err(Error::Region(format!("edge {a}-{b} names an unknown vertex"))),
            };
            let (pa, pb) = (pos[a], pos[b]);
            around[ia].push(((pb.1 - pa.1).atan2(pb.0 - pa.0), b.to_string()));
            around[ib].push(((pa.1 - pb.1).atan2(pa.0 - pb.0), a.to_string()));
        }
        for (i, (_, p, spoke)) in drawing.iter().enumerate() {
            if let Some(k) = spoke {
                around[i].push((p.1.atan2(p.0), format!("@{k}")));
            }
        }
        let mut names: Vec<[String; 3]> = Vec::new();
        for (i, list) in around.iter_mut().enumerate() {
            if list.len() != 3 {
                return Err(Error::Region(format!("vertex {} has degree {}", drawing[i].0, list.len())));
            }
            list.sort_by(|x, y| x.0.total_cmp(&y.0));
            names.push([list[0].1.clone(), list[1].1.clone(), list[2].1.clone()]);
        }
        let vs: Vec<(&str, [&str; 3])> = drawing
            .iter()
            .zip(&names)
            .map(|((n, _, _), ns)| (*n, [ns[0].as_str(), ns[1].as_str(), ns[2].as_str()]))
            .collect();
        Region::from_rotations(name, spokes, &vs, internal_edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cap::{generate_precaps, precap_to_basic_cap};

    /// Closed circles of the region alone (no cap), with their corner counts.
    fn interior_faces(r: &Region, s: RegionState) -> Vec<usize> {
        let cap = precap_to_basic_cap(&generate_precaps()[0]);
        let cs = glue(&cap, r, s).unwrap();
        cs.circles
            .iter()
            .filter(|c| c.iter().all(|p| matches!(p, Piece::Blowup(_))))
            .map(|c| c.len())
            .collect()
    }

    #[test]
    fn birkhoff_shape() {
        let r = birkhoff_region();
        assert_eq!(r.vertex_count(), 12);
        assert_eq!(r.edge_count(), 21);
        assert_eq!(interior_faces(&r, RegionState::new(0, 21)), vec![5, 5, 5, 5]);
        assert_eq!(r.blowup_labels().first(), Some(&13));
        assert_eq!(r.blowup_labels().last(), Some(&48));
    }

    #[test]
    fn birkhoff_boundary_is_ten_cycle() {
        // Corners on paths between consecutive spokes, at the flat state.
        let r = birkhoff_region();
        let cap = precap_to_basic_cap(&generate_precaps()[0]);
        let cs = glue(&cap, &r, RegionState::new(0, 21)).unwrap();
        let mut on_boundary = std::collections::BTreeSet::new();
        for c in cs.circles.iter().filter(|c| c.iter().any(|p| matches!(p, Piece::Arc(_)))) {
            for p in c {
                if let Piece::Blowup(l) = p {
                    on_boundary.insert((l - 13) / 3);
                }
            }
        }
        assert_eq!(on_boundary.len(), 10);
        assert!(!on_boundary.contains(&0) && !on_boundary.contains(&1));
    }

    #[test]
    fn reducer_shape() {
        let r = reducer_region();
        assert_eq!(r.edge_count(), 6);
        assert_eq!(region_states(&r).count(), 64);
        assert_eq!(region_states(&r).next().unwrap().index(), 0);
    }

    #[test]
    fn flat_reducer_pairs() {
        let r = reducer_region();
        let cap = Cap::new(&[(1, 12), (2, 11), (3, 10), (4, 5), (6, 7), (8, 9)], &[]).unwrap();
        let cs = glue(&cap, &r, RegionState::new(0, 6)).unwrap();
        for c in 0..cs.circles.len() {
            let arcs = cs.circles[c].iter().filter(|p| matches!(p, Piece::Arc(_))).count();
            assert_eq!(arcs, 1, "{:?}", cs.labels(c));
        }
    }

    #[test]
    fn text_round_trip() {
        for r in [birkhoff_region(), reducer_region()] {
            assert_eq!(Region::parse(&r.to_text()).unwrap(), r);
        }
    }

    #[test]
    fn state_bits() {
        let s = RegionState::from_bits("100000").unwrap();
        assert!(s.bit(0) && !s.bit(5));
        assert_eq!(s.to_string(), "100000");
        assert!(RegionState::from_bits("10a").is_err());
    }

    #[test]
    fn glue_checks_dimensions() {
        let cap = Cap::new(&[(1, 4), (2, 3)], &[]).unwrap();
        assert!(matches!(
            glue(&cap, &reducer_region(), RegionState::new(0, 6)),
            Err(Error::SpokeMismatch { .. })
        ));
    }
}
