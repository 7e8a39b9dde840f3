//! Plain-text snapshots: one header line, then sorted body lines.
//!
//! ```text
//! diamond-snapshot v1 kind=caps lines=34017 precaps=130 sha256=...
//! ```
//!
//! The digest covers the body exactly as written (each line with its `\n`).

use crate::error::{Error, Result};
use sha2::{Digest, Sha256};
use std::fmt::Write as _;
use std::path::Path;

pub const MAGIC: &str = "diamond-snapshot";
pub const VERSION: &str = "v1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snapshot {
    pub kind: String,
    /// Extra header fields, in order.
    pub meta: Vec<(String, String)>,
    pub lines: Vec<String>,
}

pub fn digest(lines: &[String]) -> String {
    let mut h = Sha256::new();
    for l in lines {
        h.update(l.as_bytes());
        h.update(b"\n");
    }
    h.finalize().iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

impl Snapshot {
    /// Sorts the body lines.
    pub fn new(kind: &str, meta: Vec<(String, String)>, mut lines: Vec<String>) -> Snapshot {
        lines.sort();
        Snapshot { kind: kind.to_string(), meta, lines }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.meta.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn get_usize(&self, key: &str) -> Result<usize> {
        self.get(key)
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| Error::Snapshot(format!("{} snapshot: missing or bad {key}", self.kind)))
    }

    pub fn digest(&self) -> String {
        digest(&self.lines)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{MAGIC} {VERSION} kind={} lines={}", self.kind, self.lines.len());
        for (k, v) in &self.meta {
            let _ = write!(out, " {k}={v}");
        }
        let _ = writeln!(out, " sha256={}", self.digest());
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Snapshot> {
        let bad = |m: String| Error::Snapshot(m);
        let (header, body) = text.split_once('\n').ok_or_else(|| bad("no header line".into()))?;
        let mut words = header.split(' ');
        if words.next() != Some(MAGIC) {
            return Err(bad("not a snapshot".into()));
        }
        match words.next() {
            Some(VERSION) => {}
            v => return Err(bad(format!("unsupported format version {v:?}"))),
        }
        let mut kind = None;
        let mut count = None;
        let mut sha = None;
        let mut meta = Vec::new();
        for w in words {
            let (k, v) = w.split_once('=').ok_or_else(|| bad(format!("bad header field {w:?}")))?;
            match k {
                "kind" => kind = Some(v.to_string()),
                "lines" => count = v.parse::<usize>().ok(),
                "sha256" => sha = Some(v.to_string()),
                _ => meta.push((k.to_string(), v.to_string())),
            }
        }
        let kind = kind.ok_or_else(|| bad("header has no kind".into()))?;
        let lines: Vec<String> = body.lines().map(str::to_string).collect();
        if count != Some(lines.len()) {
            return Err(bad(format!("{kind} snapshot: header says {count:?} lines, body has {}", lines.len())));
        }
        let snap = Snapshot { kind, meta, lines };
        if sha.as_deref() != Some(snap.digest().as_str()) {
            return Err(bad(format!("{} snapshot: digest mismatch", snap.kind)));
        }
        Ok(snap)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        std::fs::write(&tmp, self.to_text())?;
        std::fs::rename(&tmp, path)?;
        Ok(())
    }

    pub fn read(path: &Path, kind: &str) -> Result<Snapshot> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Snapshot(format!("{}: {e}", path.display())))?;
        let snap = Snapshot::parse(&text).map_err(|e| Error::Snapshot(format!("{}: {e}", path.display())))?;
        if snap.kind != kind {
            return Err(Error::Snapshot(format!("{}: expected a {kind} snapshot, found {}", path.display(), snap.kind)));
        }
        Ok(snap)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_tamper() {
        let s = Snapshot::new("caps", vec![("precaps".into(), "130".into())], vec!["b".into(), "a".into()]);
        let text = s.to_text();
        assert!(text.ends_with("\na\nb\n"));
        assert_eq!(Snapshot::parse(&text).unwrap(), s);
        assert!(Snapshot::parse(&text.replace("\nb\n", "\nc\n")).is_err());
        assert!(Snapshot::parse(&text.replace(" v1 ", " v2 ")).is_err());
    }
}
