//! Extending each colored cap of the reducer to a 4-face coloring of some
//! capped state of the configuration, recoloring at most two
//! non-interacting arcs to color 4.

use crate::cap::Cap;
use crate::certificates::{check_cap_match, check_color};
use crate::coloring::{first_proper_coloring, pin_arcs, side_colors, ColoredCap};
use crate::region::{glue, Region, RegionState};
use crate::table::{RegionTable, SearchStats};
use rayon::prelude::*;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

pub const FOURTH: u8 = 4;

/// Which certificate wins when several exist.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SearchOrder {
    /// First recolor set (empty, singletons, pairs) that extends; smallest
    /// state for that set.
    #[default]
    RecolorMajor,
    /// Smallest state over all recolor sets; ties go to the earlier set.
    StateMajor,
}

impl FromStr for SearchOrder {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "recolor" | "recolor-major" => Ok(SearchOrder::RecolorMajor),
            "state" | "state-major" => Ok(SearchOrder::StateMajor),
            _ => Err(format!("unknown search order {s:?} (recolor-major | state-major)")),
        }
    }
}

impl fmt::Display for SearchOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchOrder::RecolorMajor => "recolor-major",
            SearchOrder::StateMajor => "state-major",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    /// 1-based cap number among caps with a reducer coloring, and 1-based
    /// coloring number within the cap.
    pub number: (usize, usize),
    pub cap: Cap,
    /// The reducer coloring, one color per arc.
    pub colors: Vec<u8>,
    pub state: RegionState,
    /// Arc indices painted color 4, ascending.
    pub recolored: Vec<usize>,
    /// One color per circle of `glue(cap, region, state)`.
    pub full_coloring: Vec<u8>,
}

/// The search space was exhausted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotFound {
    pub number: (usize, usize),
    pub recolor_sets: usize,
    pub stats: SearchStats,
}

/// Recolor sets in search order: empty, each arc, each non-interacting pair.
pub fn recolor_sets(cap: &Cap) -> Vec<Vec<usize>> {
    let k = cap.spokes();
    let mut out = vec![vec![]];
    out.extend((0..k).map(|i| vec![i]));
    for i in 0..k {
        for j in i + 1..k {
            if !cap.interacts(i, j) {
                out.push(vec![i, j]);
            }
        }
    }
    out
}

pub fn recolor(colors: &[u8], set: &[usize]) -> Vec<u8> {
    let mut c = colors.to_vec();
    for &i in set {
        c[i] = FOURTH;
    }
    c
}

/// Numbers colored caps as in the results table: caps counted from 1 in the
/// order they first appear, colorings from 1 within each cap.
pub fn number_colored(colored: &[ColoredCap]) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(colored.len());
    let (mut cap, mut no, mut last) = (0, 0, usize::MAX);
    for c in colored {
        if c.cap_index != last {
            cap += 1;
            no = 0;
            last = c.cap_index;
        }
        no += 1;
        out.push((cap, no));
    }
    out
}

pub fn find_extension(
    colored: &ColoredCap,
    number: (usize, usize),
    region: &Region,
    table: &RegionTable,
    order: SearchOrder,
) -> Result<Certificate, NotFound> {
    let sets = recolor_sets(&colored.cap);
    let mut stats = SearchStats::default();
    let mut best: Option<(u32, usize)> = None;
    for (si, set) in sets.iter().enumerate() {
        let arc_colors = recolor(&colored.colors, set);
        let sides = side_colors(&colored.cap, &arc_colors);
        let bound = best.map_or(u32::MAX, |b| b.0);
        if let Some(m) = table.search(&sides, FOURTH, bound, &mut stats) {
            best = Some((m.state, si));
            if order == SearchOrder::RecolorMajor {
                break;
            }
        }
    }
    let Some((state, si)) = best else {
        return Err(NotFound { number, recolor_sets: sets.len(), stats });
    };
    let state = table.state(state);
    let arc_colors = recolor(&colored.colors, &sets[si]);
    let capped = glue(&colored.cap, region, state).expect("table and region agree");
    let full = pin_arcs(&capped, &arc_colors)
        .and_then(|pinned| first_proper_coloring(&capped, FOURTH, &pinned))
        .expect("a table match has a proper coloring");
    Ok(Certificate {
        number,
        cap: colored.cap.clone(),
        colors: colored.colors.clone(),
        state,
        recolored: sets[si].clone(),
        full_coloring: full,
    })
}

#[derive(Clone, Debug)]
pub struct ProofReport {
    pub certificates: Vec<Certificate>,
    pub failures: Vec<NotFound>,
    /// Certificates rejected by the independent checks.
    pub rejected: Vec<(usize, usize)>,
    /// Count of certificates by recolor set size.
    pub by_recolor_size: [usize; 3],
    pub elapsed: Duration,
}

impl ProofReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty() && self.rejected.is_empty()
    }
}

/// Runs the search on every colored cap, then checks every certificate from
/// scratch.
pub fn run_reducibility_proof(
    colored: &[ColoredCap],
    region: &Region,
    table: &RegionTable,
    order: SearchOrder,
) -> ProofReport {
    let t0 = Instant::now();
    let numbers = number_colored(colored);
    let results: Vec<Result<Certificate, NotFound>> = colored
        .par_iter()
        .zip(numbers.par_iter())
        .map(|(c, &n)| find_extension(c, n, region, table, order))
        .collect();
    let mut certificates = Vec::new();
    let mut failures = Vec::new();
    for r in results {
        match r {
            Ok(c) => certificates.push(c),
            Err(e) => failures.push(e),
        }
    }
    let rejected = certificates
        .par_iter()
        .filter(|c| !(check_color(c, region) && check_cap_match(&c.cap, &c.colors, c, region)))
        .map(|c| c.number)
        .collect();
    let mut by_recolor_size = [0; 3];
    for c in &certificates {
        by_recolor_size[c.recolored.len()] += 1;
    }
    ProofReport { certificates, failures, rejected, by_recolor_size, elapsed: t0.elapsed() }
}
