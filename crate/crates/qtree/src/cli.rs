use std::f64::consts::PI;
use std::fmt::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use qtree_core::spectrum::det_scan;
use qtree_core::sturm::real_roots;
use qtree_core::{
    build_dictionary, closed_form_spectrum, count_by_pendants, direct_spectrum, dirichlet_poly,
    dirichlet_poly_interpolated, enumerate_trees, find_classes, normalize, recover_trees,
    sine_exponent, BoundaryConfig, BranchData, EdgeOrientation, Graph, ShapeDictionary,
    SpectrumSample,
};
use serde::Serialize;

use crate::edgelist::parse_graph;
use crate::error::{CliError, CliResult};
use crate::fixtures::Fixture;
use crate::formats::{load_dictionary, save_dictionary, PolyJson, SpectrumJson, TreeJson};
use crate::report::{render_csv, render_text, verify_tables};

/// Environment variable naming the dictionary cache file.
pub const DICT_ENV: &str = "QTREE_DICT";

#[derive(Debug, Parser)]
#[command(
    name = "qtree",
    version,
    about = "Dirichlet spectra and shape recovery for equilateral trees"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Closed,
    Direct,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List every tree on p vertices with its canonical code.
    Enumerate {
        #[arg(long)]
        p: usize,
    },
    /// Pencil determinant P(z) of a tree read from an edge list.
    Poly {
        /// Edge-list file, or `-` for stdin.
        #[arg(long)]
        input: PathBuf,
        /// `all`, `none`, or comma-separated pendant vertices.
        #[arg(long, default_value = "all")]
        dirichlet: String,
    },
    /// Cospectral classes among trees on p vertices (Dirichlet at all pendants).
    Classes {
        #[arg(long)]
        p: usize,
    },
    /// Eigenvalues with √λ·l ≤ x_max.
    Spectrum {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "all")]
        dirichlet: String,
        /// Edge length.
        #[arg(long, default_value_t = 1.0)]
        l: f64,
        /// Upper end of the range in x = √λ·l; defaults to 6π.
        #[arg(long)]
        x_max: Option<f64>,
        #[arg(long, value_enum, default_value_t = Method::Closed)]
        method: Method,
        /// Also write the sampled determinant of the direct route to this CSV file.
        #[arg(long)]
        det_csv: Option<PathBuf>,
    },
    /// Trees whose spectrum has the given asymptotic branch data.
    Invert {
        /// Cosines cos(γ_i·l), comma-separated.
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        alphas: Vec<f64>,
        /// Number of pendant vertices.
        #[arg(long)]
        ppen: usize,
        #[arg(long, default_value_t = 1.0)]
        l: f64,
        /// Dictionary cache file (falls back to $QTREE_DICT); built and saved when missing.
        #[arg(long)]
        dict: Option<PathBuf>,
        /// Smallest dictionary bound to use.
        #[arg(long, default_value_t = 9)]
        max_p: usize,
    },
    /// Reconcile the bundled polynomial tables with computed values.
    VerifyPaper {
        #[arg(long, default_value_t = 3)]
        p_min: usize,
        #[arg(long, default_value_t = 9)]
        p_max: usize,
        /// Fixture file replacing the bundled one.
        #[arg(long)]
        fixture: Option<PathBuf>,
    },
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

fn read_input(path: &Path) -> CliResult<String> {
    if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| CliError::io("<stdin>", e))
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
    }
}

fn parse_boundary(g: &Graph, spec: &str) -> CliResult<BoundaryConfig> {
    match spec.trim() {
        "all" => Ok(BoundaryConfig::all_dirichlet(g)),
        "none" | "" => Ok(BoundaryConfig::all_neumann()),
        list => {
            let vs = list
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<usize>()
                        .map_err(|_| usage(format!("bad vertex {s:?} in --dirichlet")))
                })
                .collect::<CliResult<Vec<_>>>()?;
            Ok(BoundaryConfig::new(g, vs)?)
        }
    }
}

fn edges_field(edges: &[(usize, usize)]) -> String {
    edges
        .iter()
        .map(|(u, v)| format!("{u}-{v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Runs one command and returns what it prints.
pub fn run(cli: &Cli) -> CliResult<String> {
    match &cli.command {
        Command::Enumerate { p } => enumerate(*p, cli.format),
        Command::Poly { input, dirichlet } => poly(input, dirichlet, cli.format),
        Command::Classes { p } => classes(*p, cli.format),
        Command::Spectrum {
            input,
            dirichlet,
            l,
            x_max,
            method,
            det_csv,
        } => spectrum(
            input,
            dirichlet,
            *l,
            x_max.unwrap_or(6.0 * PI),
            *method,
            det_csv.as_deref(),
            cli.format,
        ),
        Command::Invert {
            alphas,
            ppen,
            l,
            dict,
            max_p,
        } => {
            let dict = dict
                .clone()
                .or_else(|| std::env::var_os(DICT_ENV).map(PathBuf::from));
            invert(alphas, *ppen, *l, dict.as_deref(), *max_p, cli.format)
        }
        Command::VerifyPaper {
            p_min,
            p_max,
            fixture,
        } => verify(*p_min, *p_max, fixture.as_deref(), cli.format),
    }
}

#[derive(Serialize)]
struct EnumerateJson {
    p: usize,
    count: usize,
    buckets: Vec<(usize, usize)>,
    trees: Vec<TreeJson>,
}

fn enumerate(p: usize, format: Format) -> CliResult<String> {
    if p == 0 {
        return Err(usage("--p must be at least 1"));
    }
    let catalog = enumerate_trees(p);
    let buckets: Vec<(usize, usize)> = count_by_pendants(&catalog).into_iter().collect();
    let trees: Vec<TreeJson> = catalog.iter().map(|(t, c)| TreeJson::new(t, c)).collect();
    Ok(match format {
        Format::Json => json(&EnumerateJson {
            p,
            count: trees.len(),
            buckets,
            trees,
        }),
        Format::Csv => {
            let mut out = String::from("index,p_pen,code,edges\n");
            for (i, t) in trees.iter().enumerate() {
                writeln!(
                    out,
                    "{},{},{},{}",
                    i + 1,
                    t.p_pen,
                    t.code,
                    edges_field(&t.edges)
                )
                .unwrap();
            }
            out
        }
        Format::Text => {
            let mut out = format!("{} trees on {p} vertices\n", trees.len());
            let summary: Vec<String> = buckets.iter().map(|(k, n)| format!("{k}:{n}")).collect();
            writeln!(out, "pendant buckets {{{}}}", summary.join(",")).unwrap();
            for (i, t) in trees.iter().enumerate() {
                writeln!(
                    out,
                    "{:>4}  p_pen={}  {}  {}",
                    i + 1,
                    t.p_pen,
                    t.code,
                    edges_field(&t.edges)
                )
                .unwrap();
            }
            out
        }
    })
}

#[derive(Serialize)]
struct RootJson {
    z: f64,
    multiplicity: usize,
}

#[derive(Serialize)]
struct PolyReport {
    p: usize,
    p_pen: usize,
    dirichlet: Vec<usize>,
    poly: PolyJson,
    normalized: PolyJson,
    interpolation_agrees: bool,
    sine_exponent: i64,
    roots: Vec<RootJson>,
    note: &'static str,
}

const SIGN_NOTE: &str =
    "published tables may print P(z) with the opposite sign; compare up to a constant multiple";

fn poly(input: &Path, dirichlet: &str, format: Format) -> CliResult<String> {
    let g = parse_graph(&read_input(input)?)?;
    let b = parse_boundary(&g, dirichlet)?;
    let q = dirichlet_poly(&g, &b)?;
    let agrees = dirichlet_poly_interpolated(&g, &b)? == q;
    let n = normalize(&q)?;
    let report = PolyReport {
        p: g.vertex_count(),
        p_pen: g.pendant_count(),
        dirichlet: b.dirichlet_vertices().collect(),
        poly: PolyJson::new(&q),
        normalized: PolyJson::new(n.as_poly()),
        interpolation_agrees: agrees,
        sine_exponent: sine_exponent(&g, &b),
        roots: real_roots(&q)
            .into_iter()
            .map(|(z, multiplicity)| RootJson { z, multiplicity })
            .collect(),
        note: SIGN_NOTE,
    };
    Ok(match format {
        Format::Json => json(&report),
        Format::Csv => {
            let mut out = String::from("degree,coefficient\n");
            for (k, c) in report.poly.coeffs.iter().enumerate() {
                writeln!(out, "{k},{c}").unwrap();
            }
            out
        }
        Format::Text => {
            let mut out = format!("P(z) = {}\n", report.poly.text);
            writeln!(out, "normalized: {}", report.normalized.text).unwrap();
            writeln!(out, "sine exponent: {}", report.sine_exponent).unwrap();
            let roots: Vec<String> = report
                .roots
                .iter()
                .map(|r| {
                    if r.multiplicity > 1 {
                        format!("{:.12} (x{})", r.z, r.multiplicity)
                    } else {
                        format!("{:.12}", r.z)
                    }
                })
                .collect();
            writeln!(out, "roots: {}", roots.join(", ")).unwrap();
            if !agrees {
                writeln!(out, "warning: interpolation route disagrees").unwrap();
            }
            writeln!(out, "note: {SIGN_NOTE}").unwrap();
            out
        }
    })
}

#[derive(Serialize)]
struct ClassJson {
    p_pen: usize,
    normalized: PolyJson,
    members: Vec<TreeJson>,
}

fn classes(p: usize, format: Format) -> CliResult<String> {
    if p == 0 {
        return Err(usage("--p must be at least 1"));
    }
    let found = if p < 3 { Vec::new() } else { find_classes(p)? };
    let classes: Vec<ClassJson> = found
        .iter()
        .map(|c| ClassJson {
            p_pen: c.key.p_pen,
            normalized: PolyJson::new(c.key.poly.as_poly()),
            members: c.members.iter().map(TreeJson::from_code).collect(),
        })
        .collect();
    Ok(match format {
        Format::Json => json(&serde_json::json!({ "p": p, "classes": classes })),
        Format::Csv => {
            let mut out = String::from("class,p_pen,normalized,code,edges\n");
            for (i, c) in classes.iter().enumerate() {
                for m in &c.members {
                    writeln!(
                        out,
                        "{},{},{},{},{}",
                        i + 1,
                        c.p_pen,
                        c.normalized.text,
                        m.code,
                        edges_field(&m.edges)
                    )
                    .unwrap();
                }
            }
            out
        }
        Format::Text => {
            if classes.is_empty() {
                return Ok(format!("p={p}: no cospectral classes\n"));
            }
            let mut out = format!("p={p}: {} cospectral classes\n", classes.len());
            for c in &classes {
                writeln!(
                    out,
                    "p_pen={} size={} normalized {}",
                    c.p_pen,
                    c.members.len(),
                    c.normalized.text
                )
                .unwrap();
                for m in &c.members {
                    writeln!(out, "  {}  {}", m.code, edges_field(&m.edges)).unwrap();
                }
            }
            out
        }
    })
}

#[derive(Serialize)]
struct Agreement {
    same_count: bool,
    same_multiplicities: bool,
    max_abs_dx: f64,
}

fn compare(a: &SpectrumSample, b: &SpectrumSample) -> Agreement {
    let same_count = a.eigenvalues.len() == b.eigenvalues.len();
    let pairs = a.eigenvalues.iter().zip(&b.eigenvalues);
    Agreement {
        same_count,
        same_multiplicities: same_count
            && a.zero_multiplicity == b.zero_multiplicity
            && pairs.clone().all(|(x, y)| x.multiplicity == y.multiplicity),
        max_abs_dx: pairs.map(|(x, y)| (x.x - y.x).abs()).fold(0.0, f64::max),
    }
}

fn spectrum(
    input: &Path,
    dirichlet: &str,
    l: f64,
    x_max: f64,
    method: Method,
    det_csv: Option<&Path>,
    format: Format,
) -> CliResult<String> {
    if !(l.is_finite() && l > 0.0) {
        return Err(usage(format!("--l must be positive, got {l}")));
    }
    if !(x_max.is_finite() && x_max > 0.0) {
        return Err(usage(format!("--x-max must be positive, got {x_max}")));
    }
    let g = parse_graph(&read_input(input)?)?;
    let b = parse_boundary(&g, dirichlet)?;
    let closed = match method {
        Method::Closed | Method::Both => Some(closed_form_spectrum(&g, &b, l, x_max)?),
        Method::Direct => None,
    };
    let direct = match method {
        Method::Direct | Method::Both => Some(direct_spectrum(&g, &b, l, x_max)?),
        Method::Closed => None,
    };
    if let Some(path) = det_csv {
        let mut out = String::from("x,det,sigma_ratio\n");
        let step = qtree_core::spectrum::ScanOptions::default().step;
        for (x, d, r) in det_scan(&g, &b, &EdgeOrientation::standard(&g), x_max, step) {
            writeln!(out, "{x:.12},{d:.12e},{r:.12e}").unwrap();
        }
        std::fs::write(path, out).map_err(|e| CliError::io(path, e))?;
    }
    let agreement = match (&closed, &direct) {
        (Some(c), Some(d)) => Some(compare(c, d)),
        _ => None,
    };
    let samples: Vec<(&str, &SpectrumSample)> =
        [("closed", closed.as_ref()), ("direct", direct.as_ref())]
            .into_iter()
            .filter_map(|(name, s)| s.map(|s| (name, s)))
            .collect();
    Ok(match format {
        Format::Json => {
            let spectra: Vec<SpectrumJson> = samples
                .iter()
                .map(|(m, s)| SpectrumJson::new(m, s))
                .collect();
            json(&serde_json::json!({ "spectra": spectra, "agreement": agreement }))
        }
        Format::Csv | Format::Text if agreement.is_some() => {
            let (c, d) = (closed.as_ref().unwrap(), direct.as_ref().unwrap());
            let a = agreement.as_ref().unwrap();
            let mut out = String::new();
            if format == Format::Csv {
                out.push_str("index,x_closed,x_direct,abs_dx,mult_closed,mult_direct\n");
            } else {
                writeln!(
                    out,
                    "zero eigenvalue multiplicity: {} closed, {} direct",
                    c.zero_multiplicity, d.zero_multiplicity
                )
                .unwrap();
                writeln!(
                    out,
                    "{:>5} {:>20} {:>20} {:>10} {:>4} {:>4}",
                    "k", "x closed", "x direct", "|dx|", "mc", "md"
                )
                .unwrap();
            }
            let n = c.eigenvalues.len().max(d.eigenvalues.len());
            for k in 0..n {
                let (ec, ed) = (c.eigenvalues.get(k), d.eigenvalues.get(k));
                let fx = |e: Option<&qtree_core::spectrum::Eigenvalue>| {
                    e.map_or(String::new(), |e| format!("{:.12}", e.x))
                };
                let fm = |e: Option<&qtree_core::spectrum::Eigenvalue>| {
                    e.map_or(String::new(), |e| e.multiplicity.to_string())
                };
                let dx = match (ec, ed) {
                    (Some(a), Some(b)) => format!("{:.3e}", (a.x - b.x).abs()),
                    _ => String::new(),
                };
                if format == Format::Csv {
                    writeln!(
                        out,
                        "{},{},{},{},{},{}",
                        k + 1,
                        fx(ec),
                        fx(ed),
                        dx,
                        fm(ec),
                        fm(ed)
                    )
                    .unwrap();
                } else {
                    writeln!(
                        out,
                        "{:>5} {:>20} {:>20} {:>10} {:>4} {:>4}",
                        k + 1,
                        fx(ec),
                        fx(ed),
                        dx,
                        fm(ec),
                        fm(ed)
                    )
                    .unwrap();
                }
            }
            if format == Format::Text {
                writeln!(
                    out,
                    "agreement: count {}, multiplicities {}, max |dx| = {:.3e}",
                    if a.same_count { "equal" } else { "DIFFERENT" },
                    if a.same_multiplicities {
                        "equal"
                    } else {
                        "DIFFERENT"
                    },
                    a.max_abs_dx
                )
                .unwrap();
            }
            out
        }
        Format::Csv => {
            let (_, s) = samples[0];
            let mut out = String::from("index,x,lambda,multiplicity\n");
            for (k, e) in s.eigenvalues.iter().enumerate() {
                writeln!(
                    out,
                    "{},{:.12},{:.12},{}",
                    k + 1,
                    e.x,
                    e.lambda,
                    e.multiplicity
                )
                .unwrap();
            }
            out
        }
        Format::Text => {
            let (name, s) = samples[0];
            let mut out = format!("{name} spectrum, l = {}, x in (0, {:.12}]\n", s.l, s.x_max);
            writeln!(out, "zero eigenvalue multiplicity: {}", s.zero_multiplicity).unwrap();
            writeln!(out, "{:>5} {:>20} {:>22} {:>4}", "k", "x", "lambda", "mult").unwrap();
            for (k, e) in s.eigenvalues.iter().enumerate() {
                writeln!(
                    out,
                    "{:>5} {:>20.12} {:>22.12} {:>4}",
                    k + 1,
                    e.x,
                    e.lambda,
                    e.multiplicity
                )
                .unwrap();
            }
            out
        }
    })
}

/// Loads the cache at `path` if it covers `need`, otherwise builds (and
/// saves, when a path is given) a dictionary up to `need`.
pub fn obtain_dictionary(path: Option<&Path>, need: usize) -> CliResult<ShapeDictionary> {
    if let Some(path) = path {
        if path.exists() {
            let dict = load_dictionary(path)?;
            if dict.max_p >= need {
                return Ok(dict);
            }
        }
    }
    let dict = build_dictionary(need)?;
    if let Some(path) = path {
        save_dictionary(&dict, path)?;
    }
    Ok(dict)
}

#[derive(Serialize)]
struct InvertJson {
    p_tilde: usize,
    p_pen_tilde: usize,
    gammas: Vec<f64>,
    candidates: Vec<TreeJson>,
}

fn invert(
    alphas: &[f64],
    ppen: usize,
    l: f64,
    dict: Option<&Path>,
    max_p: usize,
    format: Format,
) -> CliResult<String> {
    if !(l.is_finite() && l > 0.0) {
        return Err(usage(format!("--l must be positive, got {l}")));
    }
    if let Some(a) = alphas.iter().find(|a| a.is_nan() || a.abs() >= 1.0) {
        return Err(usage(format!(
            "alpha {a} lies outside (-1, 1); the values are cosines cos(γ·l) of real branches"
        )));
    }
    let branches = BranchData::new(alphas.to_vec(), ppen)?;
    let dict = obtain_dictionary(dict, max_p.max(branches.p_tilde + ppen).max(3))?;
    let found = recover_trees(&branches, &dict)?;
    let report = InvertJson {
        p_tilde: branches.p_tilde,
        p_pen_tilde: ppen,
        gammas: branches.gammas(l),
        candidates: found.iter().map(TreeJson::from_code).collect(),
    };
    Ok(match format {
        Format::Json => json(&report),
        Format::Csv => {
            let mut out = String::from("code,p,p_pen,edges\n");
            for t in &report.candidates {
                writeln!(
                    out,
                    "{},{},{},{}",
                    t.code,
                    t.p,
                    t.p_pen,
                    edges_field(&t.edges)
                )
                .unwrap();
            }
            out
        }
        Format::Text => {
            let mut out = format!(
                "p = {}, p_pen = {}: {} candidate tree(s)\n",
                branches.p_tilde + ppen,
                ppen,
                report.candidates.len()
            );
            for t in &report.candidates {
                writeln!(out, "  {}  {}", t.code, edges_field(&t.edges)).unwrap();
            }
            out
        }
    })
}

fn verify(p_min: usize, p_max: usize, fixture: Option<&Path>, format: Format) -> CliResult<String> {
    if p_min > p_max {
        return Err(usage(format!("--p-min {p_min} exceeds --p-max {p_max}")));
    }
    let fixture = match fixture {
        Some(path) => Fixture::load(path)?,
        None => Fixture::embedded(),
    };
    let report = verify_tables(&fixture, p_min, p_max)?;
    Ok(match format {
        Format::Json => json(&report),
        Format::Csv => render_csv(&report),
        Format::Text => render_text(&report),
    })
}
