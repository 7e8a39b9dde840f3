//! The staged pipeline: caps, colored caps, extensions, verification. Each
//! stage reads its predecessor's snapshot from the snapshot directory and
//! writes its own.

use crate::cap::{generate_planar_caps, Cap};
use crate::certificates::{check_cap_match, check_color, write_sidecar, write_table};
use crate::coloring::{colorable_caps_standalone, colored_caps_for_reducer, ColoredCap};
use crate::error::{Error, Result};
use crate::extension::{find_extension, number_colored, Certificate, SearchOrder};
use crate::notation::parse_cap;
use crate::region::{birkhoff_region, reducer_region, Region, RegionState};
use crate::snapshot::Snapshot;
use crate::table::RegionTable;
use rayon::prelude::*;
use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

pub const CAPS: &str = "caps.snap";
pub const COLORED: &str = "colored.snap";
pub const CERTIFICATES: &str = "certificates.snap";
pub const PARTIAL: &str = "certificates.partial";
pub const TABLE: &str = "table.tsv";
pub const SIDECAR: &str = "sidecar.tsv";

/// Colored caps per unit of resumable work.
pub const CHUNK: usize = 128;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Stage {
    GenCaps,
    ColorCaps,
    Extend,
    Verify,
}

impl Stage {
    pub const ALL: [Stage; 4] = [Stage::GenCaps, Stage::ColorCaps, Stage::Extend, Stage::Verify];

    pub fn name(self) -> &'static str {
        match self {
            Stage::GenCaps => "gen-caps",
            Stage::ColorCaps => "color-caps",
            Stage::Extend => "extend",
            Stage::Verify => "verify",
        }
    }
}

#[derive(Clone, Debug)]
pub struct PipelineConfig {
    pub snapshot_dir: PathBuf,
    pub workers: usize,
    /// Use only the first caps of the cap snapshot (debug subsets).
    pub limit_caps: Option<usize>,
    /// The configuration searched for extensions.
    pub region: Region,
    pub reducer: Region,
    pub order: SearchOrder,
    /// Recompute stages whose snapshot is already current.
    pub force: bool,
}

impl PipelineConfig {
    pub fn new(snapshot_dir: impl Into<PathBuf>) -> PipelineConfig {
        PipelineConfig {
            snapshot_dir: snapshot_dir.into(),
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            limit_caps: None,
            region: birkhoff_region(),
            reducer: reducer_region(),
            order: SearchOrder::default(),
            force: false,
        }
    }

    pub fn path(&self, file: &str) -> PathBuf {
        self.snapshot_dir.join(file)
    }

    fn pool(&self) -> Result<rayon::ThreadPool> {
        if self.workers == 0 {
            return Err(Error::Snapshot("worker count must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
            .map_err(|e| Error::Io(e.to_string()))
    }

    fn ensure_dir(&self) -> Result<()> {
        std::fs::create_dir_all(&self.snapshot_dir)?;
        Ok(())
    }

    /// An existing snapshot that was built from `upstream` with the same
    /// settings, unless `force` is set.
    fn current(&self, file: &str, kind: &str, settings: &[(&str, String)]) -> Option<Snapshot> {
        if self.force {
            return None;
        }
        let snap = Snapshot::read(&self.path(file), kind).ok()?;
        settings.iter().all(|(k, v)| snap.get(k) == Some(v.as_str())).then_some(snap)
    }
}

fn meta(pairs: &[(&str, String)]) -> Vec<(String, String)> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn digits(colors: &[u8]) -> String {
    colors.iter().map(|c| char::from(b'0' + c)).collect()
}

fn parse_digits(s: &str) -> Option<Vec<u8>> {
    s.bytes().map(|b| b.is_ascii_digit().then(|| b - b'0')).collect()
}

fn bad_line(kind: &str, i: usize, msg: impl std::fmt::Display) -> Error {
    Error::Snapshot(format!("{kind} snapshot line {}: {msg}", i + 1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CapsSummary {
    pub precaps: usize,
    pub candidates: usize,
    pub caps: usize,
    pub reused: bool,
}

pub fn gen_caps(cfg: &PipelineConfig) -> Result<CapsSummary> {
    cfg.ensure_dir()?;
    if let Some(s) = cfg.current(CAPS, "caps", &[]) {
        return Ok(CapsSummary {
            precaps: s.get_usize("precaps")?,
            candidates: s.get_usize("candidates")?,
            caps: s.lines.len(),
            reused: true,
        });
    }
    let g = cfg.pool()?.install(generate_planar_caps);
    let lines = g
        .caps
        .iter()
        .zip(&g.block)
        .enumerate()
        .map(|(i, (cap, block))| format!("{:05}\t{block:03}\t{cap}", i + 1))
        .collect();
    let snap = Snapshot::new(
        "caps",
        meta(&[("precaps", g.precaps.len().to_string()), ("candidates", g.candidates.to_string())]),
        lines,
    );
    snap.write(&cfg.path(CAPS))?;
    Ok(CapsSummary { precaps: g.precaps.len(), candidates: g.candidates, caps: g.caps.len(), reused: false })
}

pub fn caps_from_snapshot(snap: &Snapshot) -> Result<Vec<Cap>> {
    snap.lines
        .iter()
        .enumerate()
        .map(|(i, l)| {
            let cols: Vec<&str> = l.split('\t').collect();
            if cols.len() != 3 || cols[0].parse::<usize>().ok() != Some(i + 1) {
                return Err(bad_line("caps", i, "expected index, block, cap"));
            }
            parse_cap(cols[2]).map_err(|e| bad_line("caps", i, e))
        })
        .collect()
}

pub fn load_caps(cfg: &PipelineConfig) -> Result<Vec<Cap>> {
    caps_from_snapshot(&Snapshot::read(&cfg.path(CAPS), "caps")?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorSummary {
    pub caps: usize,
    pub standalone: usize,
    pub caps_with_coloring: usize,
    pub colored: usize,
    pub reused: bool,
}

pub fn color_caps(cfg: &PipelineConfig) -> Result<ColorSummary> {
    cfg.ensure_dir()?;
    let caps_snap = Snapshot::read(&cfg.path(CAPS), "caps")
        .map_err(|e| Error::Snapshot(format!("color-caps needs the gen-caps snapshot ({e})")))?;
    let limit = cfg.limit_caps.map_or("all".to_string(), |n| n.to_string());
    let settings = [
        ("caps_sha256", caps_snap.digest()),
        ("limit", limit.clone()),
        ("reducer", cfg.reducer.name().to_string()),
    ];
    if let Some(s) = cfg.current(COLORED, "colored", &settings) {
        return Ok(ColorSummary {
            caps: s.get_usize("caps")?,
            standalone: s.get_usize("standalone")?,
            caps_with_coloring: s.get_usize("with_coloring")?,
            colored: s.lines.len(),
            reused: true,
        });
    }
    let mut caps = caps_from_snapshot(&caps_snap)?;
    if let Some(n) = cfg.limit_caps {
        caps.truncate(n);
    }
    let (standalone, res) = cfg.pool()?.install(|| {
        let table = RegionTable::build(&cfg.reducer);
        (colorable_caps_standalone(&caps), colored_caps_for_reducer(&caps, &table))
    });
    let numbers = number_colored(&res.colored);
    let lines = res
        .colored
        .iter()
        .zip(&numbers)
        .map(|(c, n)| format!("{:05}\t{:03}\t{:05}\t{}\t{}\t{}", n.0, n.1, c.cap_index + 1, digits(&c.colors), c.witness, c.cap))
        .collect();
    let mut m = meta(&settings);
    m.extend(meta(&[
        ("caps", caps.len().to_string()),
        ("standalone", standalone.to_string()),
        ("with_coloring", res.caps_with_coloring.to_string()),
    ]));
    Snapshot::new("colored", m, lines).write(&cfg.path(COLORED))?;
    Ok(ColorSummary {
        caps: caps.len(),
        standalone,
        caps_with_coloring: res.caps_with_coloring,
        colored: res.colored.len(),
        reused: false,
    })
}

/// Colored caps with their (cap, coloring) numbers.
pub fn colored_from_snapshot(snap: &Snapshot) -> Result<Vec<((usize, usize), ColoredCap)>> {
    snap.lines
        .iter()
        .enumerate()
        .map(|(i, l)| {
            let cols: Vec<&str> = l.split('\t').collect();
            if cols.len() != 6 {
                return Err(bad_line("colored", i, "expected 6 columns"));
            }
            let num = |s: &str| s.parse::<usize>().map_err(|_| bad_line("colored", i, format!("bad number {s:?}")));
            let cap = parse_cap(cols[5]).map_err(|e| bad_line("colored", i, e))?;
            let colors = parse_digits(cols[3])
                .filter(|c| c.len() == cap.spokes())
                .ok_or_else(|| bad_line("colored", i, "bad colors"))?;
            let witness = RegionState::from_bits(cols[4]).map_err(|e| bad_line("colored", i, e))?;
            let cap_index = num(cols[2])?.checked_sub(1).ok_or_else(|| bad_line("colored", i, "cap index 0"))?;
            Ok(((num(cols[0])?, num(cols[1])?), ColoredCap { cap_index, cap, colors, witness }))
        })
        .collect()
}

pub fn load_colored(cfg: &PipelineConfig) -> Result<Vec<((usize, usize), ColoredCap)>> {
    colored_from_snapshot(&Snapshot::read(&cfg.path(COLORED), "colored")?)
}

/// One certificate line; a colored cap without an extension has `none`
/// for its state.
pub fn certificate_line(number: (usize, usize), cert: Option<&Certificate>) -> String {
    match cert {
        None => format!("{:05}\t{:03}\tnone\t-\t-", number.0, number.1),
        Some(c) => {
            let rec = if c.recolored.is_empty() {
                "-".to_string()
            } else {
                c.recolored.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
            };
            format!("{:05}\t{:03}\t{}\t{rec}\t{}", number.0, number.1, c.state, digits(&c.full_coloring))
        }
    }
}

/// Reads a certificate line against its colored cap. `Ok(None)` for a
/// recorded failure.
pub fn parse_certificate_line(line: &str, colored: &HashMap<(usize, usize), &ColoredCap>) -> Result<((usize, usize), Option<Certificate>)> {
    let bad = |m: String| Error::Snapshot(format!("certificate line {line:?}: {m}"));
    let cols: Vec<&str> = line.split('\t').collect();
    if cols.len() != 5 {
        return Err(bad("expected 5 columns".into()));
    }
    let num = |s: &str| s.parse::<usize>().map_err(|_| bad(format!("bad number {s:?}")));
    let number = (num(cols[0])?, num(cols[1])?);
    let c = colored.get(&number).ok_or_else(|| bad("no such colored cap".into()))?;
    if cols[2] == "none" {
        return Ok((number, None));
    }
    let state = RegionState::from_bits(cols[2]).map_err(|e| bad(e.to_string()))?;
    let recolored = if cols[3] == "-" {
        Vec::new()
    } else {
        cols[3]
            .split(',')
            .map(|s| match s.parse::<usize>() {
                Ok(i) if i >= 1 => Ok(i - 1),
                _ => Err(bad(format!("bad arc {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()?
    };
    let full_coloring = parse_digits(cols[4]).ok_or_else(|| bad("bad coloring".into()))?;
    Ok((number, Some(Certificate { number, cap: c.cap.clone(), colors: c.colors.clone(), state, recolored, full_coloring })))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendSummary {
    pub colored: usize,
    pub certificates: usize,
    pub failures: Vec<(usize, usize)>,
    pub by_recolor_size: [usize; 3],
    /// Colored caps taken from an interrupted run.
    pub resumed: usize,
    pub reused: bool,
    pub elapsed: Duration,
}

/// Complete lines of the partial file, if it belongs to this run.
fn read_partial(path: &Path, header: &str) -> Vec<String> {
    let Ok(text) = std::fs::read_to_string(path) else {
        return Vec::new();
    };
    let mut lines = text.split_inclusive('\n');
    if lines.next() != Some(&format!("{header}\n")) {
        return Vec::new();
    }
    lines.filter_map(|l| l.strip_suffix('\n')).map(str::to_string).collect()
}

/// Searches every colored cap, appending finished chunks to the partial
/// file so an interrupted run picks up where it stopped. `progress` gets
/// (done, total) after each chunk.
pub fn extend(cfg: &PipelineConfig, progress: &(dyn Fn(usize, usize) + Sync)) -> Result<ExtendSummary> {
    let t0 = Instant::now();
    cfg.ensure_dir()?;
    let colored_snap = Snapshot::read(&cfg.path(COLORED), "colored")
        .map_err(|e| Error::Snapshot(format!("extend needs the color-caps snapshot ({e})")))?;
    let colored = colored_from_snapshot(&colored_snap)?;
    let by_number: HashMap<(usize, usize), &ColoredCap> = colored.iter().map(|(n, c)| (*n, c)).collect();
    let settings = [
        ("colored_sha256", colored_snap.digest()),
        ("region", cfg.region.name().to_string()),
        ("order", cfg.order.to_string()),
    ];
    let summarize = |lines: &[String], resumed: usize, reused: bool| -> Result<ExtendSummary> {
        let mut s = ExtendSummary {
            colored: colored.len(),
            certificates: 0,
            failures: Vec::new(),
            by_recolor_size: [0; 3],
            resumed,
            reused,
            elapsed: t0.elapsed(),
        };
        for l in lines {
            match parse_certificate_line(l, &by_number)? {
                (n, None) => s.failures.push(n),
                (_, Some(c)) => {
                    s.certificates += 1;
                    s.by_recolor_size[c.recolored.len().min(2)] += 1;
                }
            }
        }
        Ok(s)
    };
    if let Some(s) = cfg.current(CERTIFICATES, "certificates", &settings) {
        return summarize(&s.lines, 0, true);
    }

    let header = settings.iter().fold("#".to_string(), |mut h, (k, v)| {
        let _ = write!(h, " {k}={v}");
        h
    });
    let partial_path = cfg.path(PARTIAL);
    let mut done: BTreeMap<(usize, usize), String> = BTreeMap::new();
    for l in read_partial(&partial_path, &header) {
        if let Ok((n, _)) = parse_certificate_line(&l, &by_number) {
            done.insert(n, l);
        }
    }
    let resumed = done.len();
    // Rewrite the partial file with only the lines that survived.
    let mut partial = std::fs::File::create(&partial_path)?;
    writeln!(partial, "{header}")?;
    for l in done.values() {
        writeln!(partial, "{l}")?;
    }
    partial.sync_data()?;

    let todo: Vec<&((usize, usize), ColoredCap)> = colored.iter().filter(|(n, _)| !done.contains_key(n)).collect();
    let pool = cfg.pool()?;
    let table = pool.install(|| RegionTable::build(&cfg.region));
    for chunk in todo.chunks(CHUNK) {
        let lines: Vec<String> = pool.install(|| {
            chunk
                .par_iter()
                .map(|(n, c)| certificate_line(*n, find_extension(c, *n, &cfg.region, &table, cfg.order).ok().as_ref()))
                .collect()
        });
        for (l, (n, _)) in lines.into_iter().zip(chunk) {
            writeln!(partial, "{l}")?;
            done.insert(*n, l);
        }
        partial.flush()?;
        progress(done.len(), colored.len());
    }
    drop(partial);

    let lines: Vec<String> = done.into_values().collect();
    let summary = summarize(&lines, resumed, false)?;
    let mut m = meta(&settings);
    m.extend(meta(&[
        ("certificates", summary.certificates.to_string()),
        ("failures", summary.failures.len().to_string()),
    ]));
    let snap = Snapshot::new("certificates", m, lines);
    let certs: Vec<Certificate> = snap
        .lines
        .iter()
        .filter_map(|l| parse_certificate_line(l, &by_number).ok().and_then(|x| x.1))
        .collect();
    std::fs::write(cfg.path(TABLE), write_table(&certs, &cfg.region)?)?;
    std::fs::write(cfg.path(SIDECAR), write_sidecar(&certs))?;
    snap.write(&cfg.path(CERTIFICATES))?;
    std::fs::remove_file(&partial_path)?;
    Ok(ExtendSummary { elapsed: t0.elapsed(), ..summary })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifySummary {
    pub checked: usize,
    pub passed: usize,
    pub failed: Vec<((usize, usize), String)>,
}

impl VerifySummary {
    pub fn ok(&self) -> bool {
        self.failed.is_empty() && self.checked > 0
    }
}

/// Checks every colored cap has a certificate and every certificate passes
/// both checks, recomputing each capped state from scratch.
pub fn verify(cfg: &PipelineConfig) -> Result<VerifySummary> {
    let colored_snap = Snapshot::read(&cfg.path(COLORED), "colored")?;
    let certs = Snapshot::read(&cfg.path(CERTIFICATES), "certificates")?;
    if certs.get("colored_sha256") != Some(colored_snap.digest().as_str()) {
        return Err(Error::Snapshot("certificates were not built from this colored-cap snapshot".into()));
    }
    let colored = colored_from_snapshot(&colored_snap)?;
    let by_number: HashMap<(usize, usize), &ColoredCap> = colored.iter().map(|(n, c)| (*n, c)).collect();
    let mut found: HashMap<(usize, usize), Option<Certificate>> = HashMap::new();
    let mut failed = Vec::new();
    for l in &certs.lines {
        match parse_certificate_line(l, &by_number) {
            Ok((n, c)) => {
                if found.insert(n, c).is_some() {
                    failed.push((n, "duplicate certificate".to_string()));
                }
            }
            Err(e) => failed.push(((0, 0), e.to_string())),
        }
    }
    let region = &cfg.region;
    let results: Vec<((usize, usize), Option<String>)> = cfg.pool()?.install(|| {
        colored
            .par_iter()
            .map(|(n, c)| {
                let verdict = match found.get(n) {
                    None => Some("no certificate".to_string()),
                    Some(None) => Some("no extension found".to_string()),
                    Some(Some(cert)) => {
                        if !check_color(cert, region) {
                            Some("coloring is not proper".to_string())
                        } else if !check_cap_match(&c.cap, &c.colors, cert, region) {
                            Some("coloring does not match the cap".to_string())
                        } else {
                            None
                        }
                    }
                };
                (*n, verdict)
            })
            .collect()
    });
    let mut s = VerifySummary { checked: results.len(), ..Default::default() };
    for (n, v) in results {
        match v {
            None => s.passed += 1,
            Some(msg) => s.failed.push((n, msg)),
        }
    }
    s.failed.extend(failed);
    Ok(s)
}
