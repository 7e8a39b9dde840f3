//! Checking certificates from scratch, and reading and writing the results
//! table.
//!
//! A table row has four tab-separated columns: cap number, coloring number,
//! colored cap, 4-face colored state. The sidecar has one row per
//! certificate: cap number, coloring number, state bits, and the recolored
//! arcs by smallest side (`-` for none).

use crate::cap::Cap;
use crate::error::{Error, Result};
use crate::extension::{Certificate, FOURTH};
use crate::notation::{parse_colored_cap, parse_colored_state, render_colored_cap, ColoredState};
use crate::region::{glue, CappedState, Region, RegionState};
use std::collections::HashMap;
use std::fmt::Write as _;

/// Recomputes the capped state from the cap and state bits and checks the
/// coloring is proper with at most four colors.
pub fn check_color(cert: &Certificate, region: &Region) -> bool {
    if cert.state.len() != region.edge_count() {
        return false;
    }
    let Ok(capped) = glue(&cert.cap, region, cert.state) else {
        return false;
    };
    coloring_is_proper(&capped, &cert.full_coloring)
}

pub fn coloring_is_proper(capped: &CappedState, coloring: &[u8]) -> bool {
    coloring.len() == capped.circles.len()
        && coloring.iter().all(|c| (1..=FOURTH).contains(c))
        && capped.constraints.iter().all(|k| k.a != k.b && coloring[k.a] != coloring[k.b])
}

/// The certificate keeps the reducer coloring on every arc outside its
/// recolor set, paints the recolor set with color 4, and recolors at most two
/// arcs that do not interact.
pub fn check_cap_match(cap: &Cap, colors: &[u8], cert: &Certificate, region: &Region) -> bool {
    if cert.cap != *cap || cert.colors != colors || colors.len() != cap.spokes() {
        return false;
    }
    let r = &cert.recolored;
    if r.len() > 2 || r.iter().any(|&i| i >= cap.spokes()) {
        return false;
    }
    if r.len() == 2 && (r[0] == r[1] || cap.interacts(r[0], r[1])) {
        return false;
    }
    // The arc colors are read back through the capped state.
    let Ok(capped) = glue(&cert.cap, region, cert.state) else {
        return false;
    };
    if capped.circles.len() != cert.full_coloring.len() {
        return false;
    }
    (0..cap.spokes()).all(|i| {
        let want = if r.contains(&i) { FOURTH } else { colors[i] };
        cert.full_coloring[capped.arc_circle[i]] == want
    })
}

/// Circles with colors and labels, interactions by smallest label.
pub fn colored_state(capped: &CappedState, coloring: &[u8]) -> ColoredState {
    let labels: Vec<Vec<u16>> = (0..capped.circles.len()).map(|c| capped.labels(c)).collect();
    ColoredState {
        circles: labels.iter().zip(coloring).map(|(l, &c)| (c, l.clone())).collect(),
        interactions: capped.constraints.iter().map(|k| (labels[k.a][0], labels[k.b][0])).collect(),
    }
    .canonical()
}

pub fn table_row(cert: &Certificate, region: &Region) -> Result<String> {
    let capped = glue(&cert.cap, region, cert.state)?;
    Ok(format!(
        "{}\t{}\t{}\t{}",
        cert.number.0,
        cert.number.1,
        render_colored_cap(&cert.cap, &cert.colors),
        colored_state(&capped, &cert.full_coloring).render()
    ))
}

pub fn sidecar_row(cert: &Certificate) -> String {
    let recolored = if cert.recolored.is_empty() {
        "-".to_string()
    } else {
        cert.recolored.iter().map(|&i| cert.cap.arcs()[i].0.to_string()).collect::<Vec<_>>().join(",")
    };
    format!("{}\t{}\t{}\t{}", cert.number.0, cert.number.1, cert.state, recolored)
}

pub fn write_table(certs: &[Certificate], region: &Region) -> Result<String> {
    let mut out = String::from("Cap\tNo.\tColored Cap\t4-Face Colored State\n");
    for c in certs {
        let _ = writeln!(out, "{}", table_row(c, region)?);
    }
    Ok(out)
}

pub fn write_sidecar(certs: &[Certificate]) -> String {
    let mut out = String::from("cap\tno\tstate\trecolored\n");
    for c in certs {
        let _ = writeln!(out, "{}", sidecar_row(c));
    }
    out
}

fn columns(line: &str) -> Vec<&str> {
    let sep = if line.contains('\t') { '\t' } else { '|' };
    line.split(sep).map(str::trim).collect()
}

fn bad(line: usize, msg: impl Into<String>) -> Error {
    Error::Snapshot(format!("line {line}: {}", msg.into()))
}

/// A table row as read: the columns, not yet checked against a region.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub number: (usize, usize),
    pub cap: Cap,
    pub colors: Vec<u8>,
    pub state: ColoredState,
}

/// Reads table rows (tab or `|` separated); the header and blank lines are
/// skipped.
pub fn read_table(text: &str) -> Result<Vec<TableRow>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let cols = columns(line);
        if line.trim().is_empty() || cols[0] == "Cap" {
            continue;
        }
        if cols.len() != 4 {
            return Err(bad(i + 1, format!("{} columns, expected 4", cols.len())));
        }
        let num = |s: &str| s.parse::<usize>().map_err(|_| bad(i + 1, format!("not a number: {s:?}")));
        let (cap, colors) = parse_colored_cap(cols[2]).map_err(|e| bad(i + 1, e.to_string()))?;
        let state = parse_colored_state(cols[3]).map_err(|e| bad(i + 1, e.to_string()))?;
        out.push(TableRow { number: (num(cols[0])?, num(cols[1])?), cap, colors, state });
    }
    Ok(out)
}

/// State and recolored sides, keyed by (cap, coloring) number.
pub type Sidecar = HashMap<(usize, usize), (RegionState, Vec<u8>)>;

pub fn read_sidecar(text: &str) -> Result<Sidecar> {
    let mut out = HashMap::new();
    for (i, line) in text.lines().enumerate() {
        let cols = columns(line);
        if line.trim().is_empty() || cols[0] == "cap" {
            continue;
        }
        if cols.len() != 4 {
            return Err(bad(i + 1, format!("{} columns, expected 4", cols.len())));
        }
        let num = |s: &str| s.parse::<usize>().map_err(|_| bad(i + 1, format!("not a number: {s:?}")));
        let state = RegionState::from_bits(cols[2]).map_err(|e| bad(i + 1, e.to_string()))?;
        let recolored = if cols[3] == "-" {
            Vec::new()
        } else {
            cols[3]
                .split(',')
                .map(|s| s.trim().parse::<u8>().map_err(|_| bad(i + 1, format!("bad arc {s:?}"))))
                .collect::<Result<Vec<u8>>>()?
        };
        if out.insert((num(cols[0])?, num(cols[1])?), (state, recolored)).is_some() {
            return Err(bad(i + 1, "duplicate row"));
        }
    }
    Ok(out)
}

/// Rebuilds a certificate from a table row and its sidecar entry. The circle
/// colors are matched to the recomputed circles by label set; the row's
/// interaction list is not used.
pub fn certificate_from_row(
    row: &TableRow,
    state: RegionState,
    recolored_sides: &[u8],
    region: &Region,
) -> Result<Certificate> {
    let capped = glue(&row.cap, region, state)?;
    let by_labels: HashMap<Vec<u16>, u8> = row
        .state
        .circles
        .iter()
        .map(|(c, l)| {
            let mut l = l.clone();
            l.sort_unstable();
            (l, *c)
        })
        .collect();
    if by_labels.len() != capped.circles.len() {
        return Err(Error::Snapshot(format!(
            "row {:?}: {} circles, the capped state has {}",
            row.number,
            by_labels.len(),
            capped.circles.len()
        )));
    }
    let full_coloring = (0..capped.circles.len())
        .map(|c| {
            by_labels.get(&capped.labels(c)).copied().ok_or_else(|| {
                Error::Snapshot(format!("row {:?}: circle {:?} not in the capped state", row.number, capped.labels(c)))
            })
        })
        .collect::<Result<Vec<u8>>>()?;
    let mut recolored = recolored_sides
        .iter()
        .map(|&s| {
            row.cap
                .arcs()
                .iter()
                .position(|&(a, _)| a == s)
                .ok_or_else(|| Error::Snapshot(format!("row {:?}: no arc starts at side {s}", row.number)))
        })
        .collect::<Result<Vec<usize>>>()?;
    recolored.sort_unstable();
    Ok(Certificate {
        number: row.number,
        cap: row.cap.clone(),
        colors: row.colors.clone(),
        state,
        recolored,
        full_coloring,
    })
}

/// Outcome of checking a table against its sidecar.
#[derive(Clone, Debug, Default)]
pub struct Verification {
    pub rows: usize,
    pub passed: usize,
    pub failed: Vec<((usize, usize), String)>,
    /// Rows whose printed interactions differ from the recomputed ones.
    pub interaction_mismatches: usize,
}

impl Verification {
    pub fn ok(&self) -> bool {
        self.failed.is_empty() && self.rows > 0
    }
}

pub fn verify_table(table: &str, sidecar: &str, region: &Region) -> Result<Verification> {
    let rows = read_table(table)?;
    let side = read_sidecar(sidecar)?;
    let mut v = Verification { rows: rows.len(), ..Default::default() };
    for row in &rows {
        let Some((state, rec)) = side.get(&row.number) else {
            v.failed.push((row.number, "no sidecar entry".into()));
            continue;
        };
        let cert = match certificate_from_row(row, *state, rec, region) {
            Ok(c) => c,
            Err(e) => {
                v.failed.push((row.number, e.to_string()));
                continue;
            }
        };
        if !check_color(&cert, region) {
            v.failed.push((row.number, "coloring is not proper".into()));
        } else if !check_cap_match(&row.cap, &row.colors, &cert, region) {
            v.failed.push((row.number, "coloring does not match the cap".into()));
        } else {
            v.passed += 1;
        }
        if let Ok(capped) = glue(&cert.cap, region, cert.state) {
            let printed = row.state.clone().canonical().interactions;
            if colored_state(&capped, &cert.full_coloring).interactions != printed {
                v.interaction_mismatches += 1;
            }
        }
    }
    Ok(v)
}
