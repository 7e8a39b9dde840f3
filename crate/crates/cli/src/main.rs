use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use diamond::certificates::verify_table;
use diamond::extension::SearchOrder;
use diamond::graph::{builtin, small_graph_corpus, PlaneTrivalentGraph};
use diamond::pipeline::{self, PipelineConfig};
use diamond::region::Region;
use diamond::statesum::{
    euler_characteristic, evaluate, penrose_polynomial, trace_circles, verify_state_to_plane_coloring,
    verify_tait_identity, StateVector,
};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "diamond", version, about = "State-reducibility of the Birkhoff diamond")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[arg(long, global = true, default_value = "snapshots")]
    snapshot_dir: PathBuf,
    /// Replace the Birkhoff diamond with the region in this file.
    #[arg(long, global = true)]
    region_file: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Only use the first N planar caps.
    #[arg(long, global = true)]
    limit_caps: Option<usize>,
    /// Which certificate the search keeps: recolor-major or state-major.
    #[arg(long, global = true, default_value = "recolor-major")]
    seed_order: SearchOrder,
    /// Recompute stages whose snapshots are current.
    #[arg(long, global = true)]
    force: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Generate the planar caps.
    GenCaps,
    /// Color the caps against the reducer.
    ColorCaps,
    /// Find an extension for every colored cap.
    Extend,
    /// Check the certificates, or a results table with its sidecar.
    Verify {
        #[arg(long, requires = "sidecar")]
        table: Option<PathBuf>,
        #[arg(long, requires = "table")]
        sidecar: Option<PathBuf>,
    },
    /// Run every stage in order.
    Run,
    /// Penrose polynomial and coloring identities on small graphs.
    Smallgraph {
        /// Builtin names or graph files (default: the whole corpus).
        graphs: Vec<String>,
    },
    /// Circles of one state.
    Trace {
        graph: String,
        /// One bit per edge, edge 0 first.
        state: String,
    },
    Penrose {
        graph: String,
    },
    TaitCheck {
        graph: String,
    },
}

struct Report {
    format: Format,
    rows: Vec<(String, String)>,
}

impl Report {
    fn new(format: Format) -> Report {
        Report { format, rows: Vec::new() }
    }

    fn add(&mut self, key: impl Into<String>, value: impl ToString) {
        self.rows.push((key.into(), value.to_string()));
    }

    fn print(&mut self) {
        let width = self.rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
        for (k, v) in self.rows.drain(..) {
            match self.format {
                Format::Table => println!("{k:<width$}  {v}"),
                Format::Machine => println!("{k}\t{v}"),
            }
        }
    }
}

fn load_graph(name: &str) -> Result<PlaneTrivalentGraph> {
    if let Some(g) = builtin(name) {
        return Ok(g);
    }
    let text = std::fs::read_to_string(name).with_context(|| format!("{name} is neither a builtin graph nor a file"))?;
    Ok(PlaneTrivalentGraph::parse(&text)?)
}

fn polynomial(coeffs: &[i64]) -> String {
    let mut out = String::new();
    for (d, &c) in coeffs.iter().enumerate().rev().filter(|(_, c)| **c != 0) {
        let sign = if c < 0 { "-" } else { "+" };
        if out.is_empty() {
            if c < 0 {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        let a = c.unsigned_abs();
        match (a, d) {
            (_, 0) => out.push_str(&a.to_string()),
            (1, _) => {}
            _ => out.push_str(&a.to_string()),
        }
        match d {
            0 => {}
            1 => out.push('n'),
            _ => out.push_str(&format!("n^{d}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn config(cli: &Cli) -> Result<PipelineConfig> {
    let mut cfg = PipelineConfig::new(&cli.snapshot_dir);
    if let Some(w) = cli.workers {
        if w == 0 {
            bail!("--workers must be at least 1");
        }
        cfg.workers = w;
    }
    if let Some(path) = &cli.region_file {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        cfg.region = Region::parse(&text)?;
    }
    cfg.limit_caps = cli.limit_caps;
    cfg.order = cli.seed_order;
    cfg.force = cli.force;
    Ok(cfg)
}

fn gen_caps(cfg: &PipelineConfig, r: &mut Report) -> Result<()> {
    eprintln!("gen-caps: generating planar caps");
    let s = pipeline::gen_caps(cfg)?;
    r.add("pre-caps", s.precaps);
    r.add("candidates", s.candidates);
    r.add("planar caps", s.caps);
    r.add("snapshot", cfg.path(pipeline::CAPS).display());
    if s.reused {
        r.add("note", "snapshot already current");
    }
    Ok(())
}

fn color_caps(cfg: &PipelineConfig, r: &mut Report) -> Result<()> {
    eprintln!("color-caps: coloring caps against the reducer");
    let s = pipeline::color_caps(cfg)?;
    r.add("caps", s.caps);
    r.add("standalone 3-colorable", s.standalone);
    r.add("reducer-compatible caps", s.caps_with_coloring);
    r.add("colored caps", s.colored);
    r.add("snapshot", cfg.path(pipeline::COLORED).display());
    if s.reused {
        r.add("note", "snapshot already current");
    }
    Ok(())
}

fn extend(cfg: &PipelineConfig, r: &mut Report) -> Result<()> {
    eprintln!("extend: building the state table of {}", cfg.region.name());
    let s = pipeline::extend(cfg, &|done, total| eprintln!("extend: {done}/{total}"))?;
    r.add("colored caps", s.colored);
    r.add("certificates", s.certificates);
    r.add("no extension", s.failures.len());
    for (k, n) in s.by_recolor_size.iter().enumerate() {
        r.add(format!("recolored {k}"), n);
    }
    if s.resumed > 0 {
        r.add("resumed", s.resumed);
    }
    r.add("seconds", format!("{:.1}", s.elapsed.as_secs_f64()));
    r.add("snapshot", cfg.path(pipeline::CERTIFICATES).display());
    r.add("table", cfg.path(pipeline::TABLE).display());
    if s.reused {
        r.add("note", "snapshot already current");
    }
    Ok(())
}

fn verify(cfg: &PipelineConfig, r: &mut Report) -> Result<bool> {
    eprintln!("verify: checking certificates");
    let s = pipeline::verify(cfg)?;
    for (n, msg) in s.failed.iter().take(20) {
        eprintln!("verify: ({}, {}) {msg}", n.0, n.1);
    }
    r.add("checked", s.checked);
    r.add("passed", s.passed);
    r.add("failed", s.failed.len());
    Ok(s.ok())
}

fn run(cli: &Cli) -> Result<bool> {
    let mut r = Report::new(cli.format);
    match &cli.command {
        Command::GenCaps => gen_caps(&config(cli)?, &mut r)?,
        Command::ColorCaps => color_caps(&config(cli)?, &mut r)?,
        Command::Extend => extend(&config(cli)?, &mut r)?,
        Command::Verify { table: None, .. } => {
            let ok = verify(&config(cli)?, &mut r)?;
            r.print();
            return Ok(ok);
        }
        Command::Verify { table: Some(t), sidecar: Some(s) } => {
            let cfg = config(cli)?;
            let v = verify_table(&std::fs::read_to_string(t)?, &std::fs::read_to_string(s)?, &cfg.region)?;
            for (n, msg) in v.failed.iter().take(20) {
                eprintln!("verify: ({}, {}) {msg}", n.0, n.1);
            }
            r.add("rows", v.rows);
            r.add("passed", v.passed);
            r.add("failed", v.failed.len());
            r.add("interaction lists differing", v.interaction_mismatches);
            r.print();
            return Ok(v.ok());
        }
        Command::Verify { .. } => unreachable!("clap requires both files"),
        Command::Run => {
            let cfg = config(cli)?;
            gen_caps(&cfg, &mut r)?;
            color_caps(&cfg, &mut r)?;
            extend(&cfg, &mut r)?;
            let ok = verify(&cfg, &mut r)?;
            r.print();
            return Ok(ok);
        }
        Command::Smallgraph { graphs } => {
            let list: Vec<(String, PlaneTrivalentGraph)> = if graphs.is_empty() {
                small_graph_corpus().into_iter().map(|(n, g)| (n.to_string(), g)).collect()
            } else {
                graphs.iter().map(|n| Ok((n.clone(), load_graph(n)?))).collect::<Result<_>>()?
            };
            let mut ok = true;
            for (name, g) in list {
                eprintln!("smallgraph: {name}");
                let p = penrose_polynomial(&g)?;
                let t = verify_tait_identity(&g)?;
                let s = verify_state_to_plane_coloring(&g)?;
                ok &= t.holds && s;
                r.add(format!("{name} edges"), g.edge_count());
                r.add(format!("{name} penrose"), polynomial(&p));
                r.add(format!("{name} P(3)"), evaluate(&p, 3));
                r.add(format!("{name} 4-face colorings"), t.plane_4_colorings);
                r.add(format!("{name} state 3-face colorings"), t.state_3_colorings);
                r.add(format!("{name} tait identity"), t.holds);
                r.add(format!("{name} state to plane"), s);
            }
            r.print();
            return Ok(ok);
        }
        Command::Trace { graph, state } => {
            let g = load_graph(graph)?;
            let bits = state
                .chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => bail!("state must be 0s and 1s"),
                })
                .collect::<Result<Vec<_>>>()?;
            let sv = StateVector::from_bits(bits);
            let cs = trace_circles(&g, &sv)?;
            r.add("circles", cs.len());
            r.add("euler characteristic", euler_characteristic(&g, &sv)?);
            let bridges = cs.bridges();
            r.add("bridges", if bridges.is_empty() { "-".to_string() } else { format!("{bridges:?}") });
            for (i, c) in cs.circles.iter().enumerate() {
                r.add(format!("circle {i}"), format!("{c:?}"));
            }
        }
        Command::Penrose { graph } => {
            let p = penrose_polynomial(&load_graph(graph)?)?;
            r.add("penrose", polynomial(&p));
            r.add("coefficients", format!("{p:?}"));
            r.add("P(3)", evaluate(&p, 3));
            r.add("P(4)", evaluate(&p, 4));
        }
        Command::TaitCheck { graph } => {
            let t = verify_tait_identity(&load_graph(graph)?)?;
            r.add("4-face colorings", t.plane_4_colorings);
            r.add("state 3-face colorings", t.state_3_colorings);
            r.add("holds", t.holds);
            r.print();
            return Ok(t.holds);
        }
    }
    r.print();
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(w) = cli.workers.filter(|&w| w > 0) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(w).build_global();
    }
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
