use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use pathecc::bounds::{bound_report, certificate_bound, CertificateOutcome};
use pathecc::exact::{longest_paths, pe_exact, pe_tree, Budget, DEFAULT_LONGEST_CAP, DEFAULT_PE_CAP};
use pathecc::families::{generate, Instance};
use pathecc::graph::{ecc_of_set, Vertex, VertexPath};
use pathecc::io::{parse, serialize_family, Document};
use pathecc::report::RunReport;
use pathecc::structured::{dom_path_biconvex, dom_path_bpg, dom_path_interval, interval_order, two_dom_path_convex, Claim};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "pathecc", version, about = "Path eccentricity: exact values, dominating paths, bounds and certificates")]
struct Cli {
    /// Print the JSON run report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact path eccentricity with a central path.
    Exact {
        /// Input file, or `-` for stdin.
        file: PathBuf,
        /// Largest graph searched exhaustively (trees of any size are exact).
        #[arg(long, default_value_t = DEFAULT_PE_CAP)]
        cap: usize,
    },
    /// Dominating path from the class-specific algorithm.
    Dominate {
        file: PathBuf,
        #[arg(long, value_enum)]
        class: Class,
    },
    /// Lower bound on pe from a separator.
    Certify {
        file: PathBuf,
        /// Separator vertices, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        sep: Vec<Vertex>,
    },
    /// Emit a named family in the text format.
    Generate {
        family: String,
        params: Vec<String>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Upper bounds that apply to the graph, compared with the measured pe.
    Bounds {
        file: PathBuf,
        /// Connectivity to assume (defaults to the measured vertex connectivity).
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_LONGEST_CAP)]
        cap: usize,
    },
    /// All longest paths and their eccentricities.
    Longest {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_LONGEST_CAP)]
        cap: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Class {
    Interval,
    Convex,
    Bpg,
    Biconvex,
}

enum Failure {
    Lib(pathecc::Error),
    Input(String),
}

impl<E: Into<pathecc::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Lib(e.into())
    }
}

struct Outcome {
    text: String,
    result: Value,
    input: Option<Vec<u8>>,
    seed: Option<u64>,
}

fn read_input(path: &PathBuf) -> Result<Vec<u8>, Failure> {
    let res = if path.as_os_str() == "-" {
        let mut buf = Vec::new();
        std::io::stdin().read_to_end(&mut buf).map(|_| buf)
    } else {
        std::fs::read(path)
    };
    res.map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(path: &PathBuf) -> Result<(Vec<u8>, Document), Failure> {
    let bytes = read_input(path)?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| Failure::Input(format!("{}: not UTF-8", path.display())))?;
    let doc = parse(&text)?;
    Ok((bytes, doc))
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn exact(file: &PathBuf, cap: usize) -> Result<Outcome, Failure> {
    let (input, doc) = load(file)?;
    let g = doc.graph();
    let r = if g.n() > cap && g.is_tree() { pe_tree(&g)? } else { pe_exact(&g, cap)? };
    let text = format!("pe {}\nwitness {}\nmethod {}\n", r.pe, r.witness, to_json(&r.method).as_str().unwrap_or(""));
    Ok(Outcome { text, result: to_json(&r), input: Some(input), seed: None })
}

fn dominate(file: &PathBuf, class: Class) -> Result<Outcome, Failure> {
    let (input, doc) = load(file)?;
    let path: VertexPath = match (class, &doc.instance) {
        (Class::Interval, Instance::Intervals(f)) => {
            let order = interval_order(f)?;
            dom_path_interval(&order.graph, &order.order)?
        }
        (Class::Convex, Instance::Bipartite(b)) => two_dom_path_convex(b)?,
        (Class::Bpg, Instance::Bipartite(b)) if b.claim() == Claim::Strong => dom_path_bpg(b)?,
        (Class::Biconvex, Instance::Bipartite(b)) if b.claim() != Claim::ConvexX => dom_path_biconvex(b)?,
        (Class::Interval, _) => return Err(Failure::Input("interval class needs a `p intervals` file".into())),
        (Class::Convex, _) => return Err(Failure::Input("convex class needs a `p bigraph` file".into())),
        (Class::Bpg, _) => return Err(Failure::Input("bpg class needs a `p bigraph ... strong` file".into())),
        (Class::Biconvex, _) => return Err(Failure::Input("biconvex class needs a `p bigraph ... biconvex|strong` file".into())),
    };
    let ecc = ecc_of_set(&doc.graph(), path.vertices())?;
    let text = format!("path {path}\necc {ecc}\n");
    Ok(Outcome { text, result: json!({ "path": path, "ecc": ecc }), input: Some(input), seed: None })
}

fn certify(file: &PathBuf, sep: &[Vertex]) -> Result<Outcome, Failure> {
    let (input, doc) = load(file)?;
    let outcome = certificate_bound(&doc.graph(), sep)?;
    let text = match &outcome {
        CertificateOutcome::Certificate(c) => {
            let mut t = format!("bound {}\ncomponents {}\n", c.bound, c.components.len());
            for comp in &c.components {
                let _ = writeln!(t, "  ecc {} size {}", comp.ecc, comp.component.len());
            }
            t
        }
        CertificateOutcome::NotACertificate { components, required } => {
            format!("not a certificate: {components} components, at least {required} needed\n")
        }
    };
    Ok(Outcome { text, result: to_json(&outcome), input: Some(input), seed: None })
}

fn generate_cmd(family: &str, params: &[String], seed: Option<u64>) -> Result<Outcome, Failure> {
    let f = generate(family, params, seed)?;
    let text = serialize_family(&f);
    let params: serde_json::Map<String, Value> = f.params.iter().map(|(k, v)| (k.to_string(), Value::String(v.clone()))).collect();
    let result = json!({ "family": f.name, "params": params, "text": text });
    Ok(Outcome { text, result, input: None, seed })
}

fn bounds(file: &PathBuf, k: Option<usize>, cap: usize) -> Result<Outcome, Failure> {
    let (input, doc) = load(file)?;
    let r = bound_report(&doc.graph(), k, Budget::new(cap))?;
    let verdict = |v: &Option<pathecc::bounds::Verdict>| v.map(|v| to_json(&v).as_str().unwrap_or("").to_string()).unwrap_or_else(|| "unmeasured".into());
    let mut t = format!("n {}\n", r.n);
    if let Some(kappa) = r.kappa {
        let _ = writeln!(t, "kappa {kappa}");
    }
    match (&r.pe, &r.witness) {
        (Some(pe), Some(w)) => {
            let _ = writeln!(t, "pe {pe}\nwitness {w}");
        }
        _ => t.push_str("pe unmeasured (graph above cap)\n"),
    }
    let _ = writeln!(t, "general {} {}", r.general, verdict(&r.general_verdict));
    if let (Some(b), Some(k)) = (r.kconn, r.k) {
        let _ = writeln!(t, "k-connected (k = {k}) {b} {}", verdict(&r.kconn_verdict));
    }
    if let Some(l) = &r.longest {
        let _ = writeln!(t, "longest length {} ecc_max {} bound {} {}", l.length, l.ecc_max, l.bound, if l.holds { "holds" } else { "violated" });
    }
    Ok(Outcome { text: t, result: to_json(&r), input: Some(input), seed: None })
}

fn longest(file: &PathBuf, cap: usize) -> Result<Outcome, Failure> {
    let (input, doc) = load(file)?;
    let r = longest_paths(&doc.graph(), Budget::new(cap))?;
    let mut t = format!("length {}\ncount {}\necc_min {}\necc_max {}\n", r.length, r.paths.len(), r.ecc_min, r.ecc_max);
    for (p, e) in r.paths.iter().zip(&r.eccs) {
        let _ = writeln!(t, "  {p} ecc {e}");
    }
    Ok(Outcome { text: t, result: to_json(&r), input: Some(input), seed: None })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let start = Instant::now();
    let out = match &cli.cmd {
        Cmd::Exact { file, cap } => exact(file, *cap),
        Cmd::Dominate { file, class } => dominate(file, *class),
        Cmd::Certify { file, sep } => certify(file, sep),
        Cmd::Generate { family, params, seed } => generate_cmd(family, params, *seed),
        Cmd::Bounds { file, k, cap } => bounds(file, *k, *cap),
        Cmd::Longest { file, cap } => longest(file, *cap),
    };
    match out {
        Ok(o) => {
            if cli.json {
                let ms = start.elapsed().as_millis() as u64;
                let report = RunReport::new(command, o.input.as_deref(), o.result, o.seed, ms);
                println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            } else {
                print!("{}", o.text);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
