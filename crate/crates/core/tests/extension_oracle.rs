mod common;

use diamond::cap::generate_planar_caps;
use diamond::certificates::{check_cap_match, check_color};
use diamond::coloring::colored_caps_for_reducer;
use diamond::extension::{find_extension, number_colored, recolor_sets, SearchOrder};
use diamond::region::{birkhoff_region, reducer_region};
use diamond::table::RegionTable;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

#[test]
fn search_agrees_with_exhaustive_tracing() {
    let caps = generate_planar_caps().caps;
    let colored = colored_caps_for_reducer(&caps, &RegionTable::build(&reducer_region())).colored;
    let numbers = number_colored(&colored);
    let bd = birkhoff_region();
    let table = RegionTable::build(&bd);

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut picks = sample(&mut rng, colored.len(), 100).into_vec();
    picks.sort_unstable();
    let items: Vec<_> = picks.iter().map(|&i| (colored[i].cap.clone(), colored[i].colors.clone())).collect();

    let t0 = Instant::now();
    let oracle = common::brute_force_extensions(&items);
    eprintln!("exhaustive pass over 2^21 states: {:.1?}", t0.elapsed());

    for (&i, want) in picks.iter().zip(&oracle) {
        let c = &colored[i];
        let (si, state) = want.unwrap_or_else(|| panic!("no extension for {:?}", numbers[i]));
        let cert = find_extension(c, numbers[i], &bd, &table, SearchOrder::RecolorMajor)
            .unwrap_or_else(|e| panic!("search failed where tracing succeeded: {e:?}"));
        assert_eq!(cert.recolored, recolor_sets(&c.cap)[si], "{:?}", numbers[i]);
        assert_eq!(cert.state.index(), state, "{:?}", numbers[i]);
        assert!(check_color(&cert, &bd) && check_cap_match(&c.cap, &c.colors, &cert, &bd));
    }
}
