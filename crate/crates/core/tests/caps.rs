use diamond::cap::{generate_planar_caps, generate_precaps, precap_to_basic_cap, Cap};
use itertools::Itertools;
use std::collections::{BTreeSet, HashSet};

/// Spoke pairs of every fixed-point-free permutation of six spokes.
fn derangement_classes() -> (usize, BTreeSet<Vec<(u8, u8)>>) {
    let mut n = 0;
    let mut classes = BTreeSet::new();
    for p in (1..=6u8).permutations(6) {
        if p.iter().enumerate().any(|(i, &t)| t == i as u8 + 1) {
            continue;
        }
        n += 1;
        let mut pairs: Vec<(u8, u8)> = p.iter().enumerate().map(|(i, &t)| ((i as u8 + 1).min(t), (i as u8 + 1).max(t))).collect();
        pairs.sort();
        classes.insert(pairs);
    }
    (n, classes)
}

#[test]
fn precaps_are_derangement_classes() {
    let (n, classes) = derangement_classes();
    assert_eq!(n, 265);
    assert_eq!(classes.len(), 130);
    let ours: BTreeSet<Vec<(u8, u8)>> = generate_precaps().iter().map(|p| p.pairs().to_vec()).collect();
    assert_eq!(ours, classes);
}

fn spoke(s: u8) -> u8 {
    s.div_ceil(2)
}

fn crossing(a: (u8, u8), b: (u8, u8)) -> bool {
    (a.0 < b.0 && b.0 < a.1 && a.1 < b.1) || (b.0 < a.0 && a.0 < b.1 && b.1 < a.1)
}

fn same_spoke(a: (u8, u8), b: (u8, u8)) -> bool {
    let s = [spoke(a.0), spoke(a.1)];
    s.contains(&spoke(b.0)) || s.contains(&spoke(b.1))
}

/// Every interaction subset, crossings added, spoke interactions zeroed,
/// duplicates dropped; then the separation sift.
fn sweep(arcs: &[(u8, u8)]) -> (usize, Vec<BTreeSet<(usize, usize)>>) {
    let pairs: Vec<(usize, usize)> = (0..6).tuple_combinations().collect();
    let forced: BTreeSet<(usize, usize)> =
        pairs.iter().copied().filter(|&(i, j)| crossing(arcs[i], arcs[j]) && !same_spoke(arcs[i], arcs[j])).collect();
    let mut seen = HashSet::new();
    let mut planar = Vec::new();
    for mask in 0u32..1 << 15 {
        let chosen: BTreeSet<(usize, usize)> =
            pairs.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &p)| p).collect();
        if chosen.iter().any(|&(i, j)| same_spoke(arcs[i], arcs[j])) {
            continue;
        }
        let set: BTreeSet<(usize, usize)> = chosen.union(&forced).copied().collect();
        if !seen.insert(set.clone()) {
            continue;
        }
        let touches = |x: usize, y: usize| set.contains(&(x.min(y), x.max(y))) || same_spoke(arcs[x], arcs[y]);
        let separated = |z: usize, x: usize, y: usize| {
            let inside = |s: u8| arcs[z].0 < s && s < arcs[z].1;
            let (xi, yi) = (inside(arcs[x].0), inside(arcs[y].0));
            xi == inside(arcs[x].1) && yi == inside(arcs[y].1) && xi != yi
        };
        let ok = set.iter().all(|&(x, y)| {
            (0..6).filter(|&z| z != x && z != y).all(|z| !separated(z, x, y) || touches(z, x) || touches(z, y))
        });
        if ok {
            planar.push(set);
        }
    }
    (seen.len(), planar)
}

fn interaction_set(cap: &Cap) -> BTreeSet<(usize, usize)> {
    cap.interactions().collect()
}

#[test]
fn generation_matches_the_full_sweep() {
    let g = generate_planar_caps();
    assert_eq!(g.basic_caps.len(), 130);
    let mut candidates = 0;
    let mut total = 0;
    for (b, basic) in g.basic_caps.iter().enumerate() {
        let (n, planar) = sweep(basic.arcs());
        candidates += n;
        let ours: Vec<BTreeSet<(usize, usize)>> =
            g.caps.iter().zip(&g.block).filter(|(_, &k)| k == b).map(|(c, _)| interaction_set(c)).collect();
        let want: BTreeSet<_> = planar.iter().cloned().collect();
        let got: BTreeSet<_> = ours.iter().cloned().collect();
        assert_eq!(got, want, "basic cap {}", b + 1);
        assert_eq!(ours.len(), got.len(), "duplicates in block {}", b + 1);
        total += planar.len();
    }
    assert_eq!(candidates, g.candidates);
    assert_eq!(total, g.caps.len());
}

#[test]
fn basic_cap_91() {
    let pcs = generate_precaps();
    let b = precap_to_basic_cap(&pcs[90]);
    assert_eq!(b.to_string(), "arc[1,12] arc[2,3] arc[4,9] arc[5,8] arc[6,7] arc[10,11]");
}
