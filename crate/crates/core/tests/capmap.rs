use diamond::cap::{generate_planar_caps, Cap};
use diamond::capmap::{birkhoff_with_ring, read_cap, RegionEmbedding};
use diamond::graph::PlaneTrivalentGraph;
use diamond::region::{birkhoff_region, glue, RegionState};
use diamond::statesum::{trace_circles, StateVector};
use diamond::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;

/// Adds `chords` random chords across faces made only of outside edges.
fn grow(g: &mut PlaneTrivalentGraph, emb: &RegionEmbedding, chords: usize, rng: &mut ChaCha8Rng) -> RegionEmbedding {
    let inside: Vec<usize> = (0..g.vertex_count()).filter(|&v| emb.inside[v]).collect();
    let mut emb = emb.clone();
    for _ in 0..chords {
        let faces: Vec<Vec<usize>> = g
            .faces()
            .into_iter()
            .filter(|f| f.iter().all(|&h| emb.is_outside_edge(g, g.edge_of(h))))
            .collect();
        let f = &faces[rng.gen_range(0..faces.len())];
        let a = rng.gen_range(0..f.len());
        let mut b = rng.gen_range(0..f.len());
        if f.len() > 1 {
            while b == a {
                b = rng.gen_range(0..f.len());
            }
        }
        if a != b {
            g.insert_chord(f[a], f[b]).unwrap();
            emb = RegionEmbedding::new(g, emb.spokes.clone(), &inside).unwrap();
        }
    }
    emb
}

/// A random 4-coloring of the faces of the plane graph.
fn random_face_coloring(g: &PlaneTrivalentGraph, rng: &mut ChaCha8Rng) -> (Vec<usize>, Vec<u8>) {
    let faces = g.faces();
    let mut face_of = vec![0; g.half_edge_count()];
    for (i, f) in faces.iter().enumerate() {
        for &h in f {
            face_of[h] = i;
        }
    }
    let mut adj = vec![Vec::new(); faces.len()];
    for h in 0..g.half_edge_count() {
        adj[face_of[h]].push(face_of[g.twin(h)]);
    }
    fn go(i: usize, adj: &[Vec<usize>], col: &mut [u8], rng: &mut ChaCha8Rng) -> bool {
        if i == col.len() {
            return true;
        }
        let mut order = [1u8, 2, 3, 4];
        for j in (1..4).rev() {
            order.swap(j, rng.gen_range(0..=j));
        }
        for c in order {
            if adj[i].iter().all(|&w| col[w] != c) {
                col[i] = c;
                if go(i + 1, adj, col, rng) {
                    return true;
                }
            }
        }
        col[i] = 0;
        false
    }
    let mut col = vec![0; faces.len()];
    assert!(go(0, &adj, &mut col, rng));
    (face_of, col)
}

/// Twists the edges whose two faces' colors differ by a random nonzero
/// pattern (colors as 0..3, compared by xor), which tends to avoid bridges.
fn tait_state(g: &PlaneTrivalentGraph, rng: &mut ChaCha8Rng) -> StateVector {
    let (face_of, col) = random_face_coloring(g, rng);
    let twist: Vec<u8> = (1..4u8).filter(|_| rng.gen_bool(0.5)).collect();
    StateVector::from_bits(
        (0..g.edge_count())
            .map(|e| {
                let h = g.edge(e)[0];
                let t = (col[face_of[h]] - 1) ^ (col[face_of[g.twin(h)]] - 1);
                twist.contains(&t)
            })
            .collect(),
    )
}

/// Flips two edges running between the same two circles: the first merges
/// them, the second splits them again.
fn pair_move(g: &PlaneTrivalentGraph, state: &StateVector, rng: &mut ChaCha8Rng) -> StateVector {
    let cs = trace_circles(g, state).unwrap();
    let mut by_pair: std::collections::BTreeMap<(usize, usize), Vec<usize>> = Default::default();
    for (e, &(a, b)) in cs.adjacency.iter().enumerate() {
        by_pair.entry((a.min(b), a.max(b))).or_default().push(e);
    }
    let groups: Vec<&Vec<usize>> = by_pair.values().filter(|v| v.len() >= 2).collect();
    let mut next = state.clone();
    if groups.is_empty() {
        return next;
    }
    let grp = groups[rng.gen_range(0..groups.len())];
    let i = rng.gen_range(0..grp.len());
    let mut j = rng.gen_range(0..grp.len() - 1);
    if j >= i {
        j += 1;
    }
    next.flip(grp[i]);
    next.flip(grp[j]);
    next
}

#[test]
fn caps_of_random_states_are_planar_caps() {
    let caps: HashSet<Cap> = generate_planar_caps().caps.into_iter().collect();
    let bd = birkhoff_region();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut checked, mut distinct) = (0, HashSet::new());
    for round in 0..200 {
        let (mut g, emb) = birkhoff_with_ring();
        let emb = grow(&mut g, &emb, round % 16, &mut rng);
        let mut state = tait_state(&g, &mut rng);
        for step in 0..600 {
            if step % 150 == 0 {
                state = tait_state(&g, &mut rng);
            }
            let next = pair_move(&g, &state, &mut rng);
            let reading = match read_cap(&g, &emb, &next) {
                Ok(r) => r,
                Err(Error::Bridge(_)) => continue,
                Err(e) => panic!("{e}"),
            };
            state = next.clone();
            assert!(caps.contains(&reading.cap), "{} not generated", reading.cap);
            // Gluing the cap back onto the region state gives the circles of
            // the whole graph, less the closed ones outside.
            let mut index = 0u32;
            for e in 0..21 {
                let swap = e < 6 && reading.swapped[e];
                index = index << 1 | u32::from(next.get(e) != swap);
            }
            let capped = glue(&reading.cap, &bd, RegionState::new(index, 21)).unwrap();
            let total = trace_circles(&g, &next).unwrap().len();
            assert_eq!(capped.circles.len() + reading.outside_circles, total);
            checked += 1;
            distinct.insert(reading.cap);
        }
    }
    assert!(checked > 500, "only {checked} bridge-free states");
    eprintln!("{checked} states, {} distinct caps", distinct.len());
}

#[test]
fn plain_ring_gives_basic_caps() {
    // With nothing outside the ring every contact comes from the ring itself.
    let (g, emb) = birkhoff_with_ring();
    let mut seen = 0;
    for mask in 0..1u64 << 6 {
        let mut bits = vec![false; g.edge_count()];
        for (i, b) in bits.iter_mut().skip(21).enumerate() {
            *b = mask >> i & 1 == 1;
        }
        if let Ok(r) = read_cap(&g, &emb, &StateVector::from_bits(bits)) {
            assert_eq!(r.cap, r.cap.basic());
            seen += 1;
        }
    }
    assert!(seen > 0);
}

#[test]
fn bridges_are_rejected() {
    let (g, emb) = birkhoff_with_ring();
    let bad = (0..1u64 << g.edge_count().min(20))
        .map(|m| StateVector::from_mask(m, g.edge_count()))
        .find(|s| !trace_circles(&g, s).unwrap().bridges().is_empty())
        .unwrap();
    assert!(matches!(read_cap(&g, &emb, &bad), Err(Error::Bridge(_))));
}
