use diamond::cap::{generate_planar_caps, Cap};
use diamond::coloring::{cap_colorings, colorable_caps_standalone, colored_caps_for_reducer, first_proper_coloring, pin_arcs};
use diamond::region::{glue, reducer_region};
use diamond::table::RegionTable;

/// Proper 3-colorings of the arcs alone, all 3^6 assignments.
fn all_colorings(cap: &Cap) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    for code in 0..729u32 {
        let c: Vec<u8> = (0..6).map(|i| (code / 3u32.pow(i) % 3) as u8 + 1).collect();
        let ok = (0..6).all(|i| (i + 1..6).all(|j| !cap.interacts(i, j) || c[i] != c[j]));
        if ok {
            out.push(c);
        }
    }
    out
}

#[test]
fn pinning_divides_by_six() {
    let caps = generate_planar_caps().caps;
    let mut colorable = 0;
    for cap in &caps {
        let all = all_colorings(cap);
        let pinned = cap_colorings(cap);
        assert_eq!(all.len(), 6 * pinned.len(), "{cap}");
        let (a1, a2) = (cap.arc_of_side(1), cap.arc_of_side(2));
        assert!(pinned.iter().all(|c| c[a1] == 1 && c[a2] == 2));
        colorable += usize::from(!all.is_empty());
    }
    assert_eq!(colorable, colorable_caps_standalone(&caps));
}

#[test]
fn witnesses_hold() {
    let caps = generate_planar_caps().caps;
    let reducer = reducer_region();
    let res = colored_caps_for_reducer(&caps, &RegionTable::build(&reducer));
    for c in &res.colored {
        assert!(!all_colorings(&c.cap).is_empty());
        let capped = glue(&c.cap, &reducer, c.witness).unwrap();
        let pinned = pin_arcs(&capped, &c.colors).expect("arcs on one circle share a color");
        assert!(first_proper_coloring(&capped, 3, &pinned).is_some());
        for i in 0..6 {
            for j in 0..6 {
                if capped.arc_circle[i] == capped.arc_circle[j] {
                    assert_eq!(c.colors[i], c.colors[j]);
                }
            }
        }
    }
}
