//! Command-line front end: constructions, spectra, bounds, containment,
//! factors, extremal search, and lemma diagnostics as reproducible runs.
//!
//! Every run carries a manifest (command, semantic parameters, solver
//! settings, timestamp, input digests). Single-document JSON outputs embed it
//! under a `manifest` key; stream outputs written to a file get a
//! `<path>.manifest.json` sidecar. All inputs are read and parsed before any
//! output is opened, and files are written atomically (temp + rename), so a
//! failing run never leaves a partial artifact. Worker count and output
//! paths are deliberately absent from the manifest: they change wall time
//! and placement, never bytes.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::process::ExitCode;
use std::str::FromStr;

use chrono::{DateTime, SecondsFormat, Utc};
use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use spexlab::bounds::{
    clique_vector_check, double_eigenvector_identity, feng_yu_bound, hong_nikiforov_bound,
    motzkin_straus_check, wilf_bound, BoundReport,
};
use spexlab::embed::{contains_spanning, has_factor, FactorQuery};
use spexlab::enumerate::{search_extremal_with, search_stream, Objective, SearchConfig};
use spexlab::graph::{graph6_decode, graph6_encode};
use spexlab::lemmas::{
    check_adjacency_chain, check_q_chain, verify_corollary, CorollaryCase, LemmaReport,
};
use spexlab::spectra::{dominant_eigenpair_with, MatrixKind, SolverSettings};
use spexlab::{Error, FamilySpec, Graph};

const ARTIFACT_VERSION: &str = "1";

// ===== errors and exit codes =====

/// A failure with the exit code it maps to: 1 usage, 2 input parse,
/// 3 capacity/budget (unknown result), 4 internal assertion.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: 1,
            message: message.into(),
        }
    }

    fn input(message: impl Into<String>) -> Failure {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn internal(message: impl Into<String>) -> Failure {
        Failure {
            code: 4,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Failure {
        let code = match err {
            Error::MalformedGraph6 { .. } | Error::DisconnectedInput(_) => 2,
            Error::CapacityExceeded(_)
            | Error::BudgetExhausted(_)
            | Error::ConvergenceFailure { .. } => 3,
            Error::Internal(_) => 4,
            // Remaining variants are rejected invocations: bad parameters,
            // dimension mismatches, out-of-range epsilon, and the like.
            _ => 1,
        };
        Failure {
            code,
            message: err.to_string(),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

// ===== run manifests =====

#[derive(Serialize)]
struct RunManifest {
    command: String,
    parameters: BTreeMap<String, Value>,
    artifact_version: String,
    solver_settings: SolverSettings,
    timestamp: String,
    input_digests: BTreeMap<String, String>,
}

/// ISO-8601 UTC timestamp; `SOURCE_DATE_EPOCH` pins it for reproducible runs.
fn run_timestamp() -> CliResult<String> {
    let now = match std::env::var("SOURCE_DATE_EPOCH") {
        Ok(raw) => {
            let secs: i64 = raw.parse().map_err(|_| {
                Failure::usage(format!("SOURCE_DATE_EPOCH must be an integer, got `{raw}`"))
            })?;
            DateTime::from_timestamp(secs, 0).ok_or_else(|| {
                Failure::usage(format!("SOURCE_DATE_EPOCH {secs} is out of range"))
            })?
        }
        Err(_) => Utc::now(),
    };
    Ok(now.to_rfc3339_opts(SecondsFormat::Secs, true))
}

/// Solver settings for solves this binary issues directly; the tolerance can
/// be overridden through `SPEXLAB_SOLVER_TOL`.
fn solver_settings() -> CliResult<SolverSettings> {
    let mut settings = SolverSettings::default();
    if let Ok(raw) = std::env::var("SPEXLAB_SOLVER_TOL") {
        let tol: f64 = raw.parse().map_err(|_| {
            Failure::usage(format!("SPEXLAB_SOLVER_TOL must be a number, got `{raw}`"))
        })?;
        if !tol.is_finite() || tol <= 0.0 {
            return Err(Failure::usage(format!(
                "SPEXLAB_SOLVER_TOL must be finite and positive, got {tol}"
            )));
        }
        settings.tolerance = tol;
    }
    Ok(settings)
}

fn manifest(
    command: &str,
    parameters: BTreeMap<String, Value>,
    input_digests: BTreeMap<String, String>,
    solver: SolverSettings,
) -> CliResult<RunManifest> {
    Ok(RunManifest {
        command: command.to_string(),
        parameters,
        artifact_version: ARTIFACT_VERSION.to_string(),
        solver_settings: solver,
        timestamp: run_timestamp()?,
        input_digests,
    })
}

// ===== input and output plumbing =====

fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut hex = String::with_capacity(2 * digest.len() + 7);
    hex.push_str("sha256:");
    for byte in digest {
        let _ = write!(hex, "{byte:02x}");
    }
    hex
}

/// Reads a source named on the command line; `-` means standard input.
fn read_source(path: &str) -> CliResult<String> {
    if path == "-" {
        let mut text = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut text)
            .map_err(|e| Failure::input(format!("reading standard input: {e}")))?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::input(format!("reading {path}: {e}")))
    }
}

/// One graph per non-empty line, with the line number attached to any
/// decoding diagnostic.
fn parse_graph6_lines(source: &str, text: &str) -> CliResult<Vec<(String, Graph)>> {
    let mut graphs = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        if line.is_empty() {
            continue;
        }
        match graph6_decode(line) {
            Ok(g) => graphs.push((line.to_string(), g)),
            Err(Error::MalformedGraph6 { byte, reason }) => {
                return Err(Failure::input(format!(
                    "{source}:{}: malformed graph6 at byte {byte}: {reason}",
                    index + 1
                )));
            }
            Err(other) => return Err(other.into()),
        }
    }
    Ok(graphs)
}

/// Decodes a graph6 string passed directly as an argument.
fn parse_graph6_argument(flag: &str, s: &str) -> CliResult<Graph> {
    graph6_decode(s).map_err(|err| match err {
        Error::MalformedGraph6 { byte, reason } => {
            Failure::input(format!("{flag}: malformed graph6 at byte {byte}: {reason}"))
        }
        other => other.into(),
    })
}

fn write_file_atomic(path: &str, text: &str) -> CliResult<()> {
    // Renaming over a device node, fifo, or symlink would replace the node
    // itself rather than its contents, so those are written through directly;
    // the temp + rename atomicity only matters for regular artifact files.
    match fs::symlink_metadata(path) {
        Ok(meta) if !meta.is_file() => {
            return fs::write(path, text)
                .map_err(|e| Failure::input(format!("writing {path}: {e}")));
        }
        _ => {}
    }
    let temp = format!("{path}.partial-{}", std::process::id());
    let finish = fs::write(&temp, text).and_then(|()| fs::rename(&temp, path));
    if let Err(e) = finish {
        let _ = fs::remove_file(&temp);
        return Err(Failure::input(format!("writing {path}: {e}")));
    }
    Ok(())
}

/// Writes finished output to a path or (with `-`) standard output. A stream
/// destination that is a real file also receives a manifest sidecar.
fn emit(path: &str, text: &str, sidecar: Option<&RunManifest>) -> CliResult<()> {
    if path == "-" {
        let stdout = std::io::stdout();
        stdout
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::internal(format!("writing standard output: {e}")))?;
        return Ok(());
    }
    write_file_atomic(path, text)?;
    if let Some(m) = sidecar {
        write_file_atomic(&format!("{path}.manifest.json"), &to_pretty(m)?)
    } else {
        Ok(())
    }
}

fn to_pretty<T: Serialize>(value: &T) -> CliResult<String> {
    let body = serde_json::to_string_pretty(value)
        .map_err(|e| Failure::internal(format!("serializing output: {e}")))?;
    Ok(format!("{body}\n"))
}

fn to_line<T: Serialize>(value: &T) -> CliResult<String> {
    serde_json::to_string(value).map_err(|e| Failure::internal(format!("serializing output: {e}")))
}

// ===== argument grammar =====

#[derive(Parser)]
#[command(
    name = "spexlab",
    version,
    about = "Extremal spectral graph theory toolkit",
    after_help = "Environment: SPEXLAB_SOLVER_TOL overrides the 1e-10 eigensolver tolerance \
                  for solves issued by this binary; SOURCE_DATE_EPOCH pins manifest timestamps.\n\
                  Exit codes: 0 success, 1 usage, 2 input parse, 3 capacity or budget, 4 internal."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named family member and emit it as graph6.
    Construct {
        /// Family spec: h:n,k | turan:n,r | cyclepower:n,k | cliquefactor:n,r
        /// | perfectmatching:n | g6:<string>.
        #[arg(long)]
        family: String,
        /// Output path, `-` for standard output.
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Dominant eigenpair of each input graph.
    Spectra {
        /// graph6 input, one graph per line; `-` reads standard input.
        #[arg(long = "in")]
        input: String,
        /// Matrix: adj | q | alpha:<a> with a in [0, 1].
        #[arg(long, default_value = "adj")]
        matrix: String,
        /// Emit one JSON record per graph instead of plain lines.
        #[arg(long)]
        json: bool,
        /// Include the eigenvector in each record.
        #[arg(long)]
        with_vector: bool,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Classical spectral and quadratic-form bounds, one report per check.
    Bounds {
        #[arg(long = "in")]
        input: String,
        /// hong | wilf | fengyu | ms | cv | all. `ms` is evaluated at the
        /// uniform distribution, `cv` at the adjacency Perron vector.
        #[arg(long, default_value = "all")]
        check: String,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Two-graph eigenvector identity report for connected G and H.
    Identity {
        /// First graph as a graph6 string.
        #[arg(long)]
        g: String,
        /// Second graph as a graph6 string.
        #[arg(long)]
        h: String,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Spanning containment of a pattern in each input graph.
    Contains {
        /// Host graphs: graph6, one per line; `-` reads standard input.
        #[arg(long)]
        g: String,
        /// Pattern: a family spec, or a bare graph6 string.
        #[arg(long)]
        f: String,
        /// Include the embedding (host vertex per pattern vertex) when found.
        #[arg(long)]
        witness: bool,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Whether each input graph has a spanning subgraph with all degrees in [a, b].
    Factor {
        #[arg(long = "in")]
        input: String,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Exhaustive extremal search over F-free graphs.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        family: String,
        /// edges | lambda | q.
        #[arg(long)]
        objective: String,
        /// Scan complements of sparse graphs instead of all classes.
        #[arg(long)]
        dense: bool,
        /// Dense-mode complement edge budget (default 2n).
        #[arg(long)]
        emax: Option<usize>,
        /// Worker threads: 1 is the sequential path, omitted uses the global
        /// pool. Changes wall time only, never output bytes.
        #[arg(long)]
        workers: Option<usize>,
        /// Score this graph6 file instead of the internal generator
        /// (single-threaded; --dense and --emax do not apply).
        #[arg(long)]
        stream: Option<String>,
        #[arg(long, default_value = "-")]
        out: String,
        /// Also write the witnesses as a graph6 file.
        #[arg(long)]
        witness_out: Option<String>,
    },
    /// Structural lemma chain diagnostics for one target graph.
    Lemmas {
        /// h:<n>,<delta> for the benchmark construction, or graph6:<s>.
        #[arg(long)]
        target: String,
        /// adj | q.
        #[arg(long)]
        chain: String,
        /// Sparse-set parameter for the q chain, in (0, 1/7); default 0.1.
        #[arg(long)]
        eps: Option<f64>,
        /// Pattern minimum degree; defaults to delta for h: targets.
        #[arg(long = "deltaF")]
        delta_f: Option<usize>,
        #[arg(long, default_value = "-")]
        out: String,
        /// Also write the lemma rows as CSV.
        #[arg(long)]
        csv: Option<String>,
    },
    /// Threshold corollary report for one concrete case.
    Corollary {
        /// cyclepower:n,k | factor:n,a,b | cliquefactor:n,r.
        #[arg(long)]
        case: String,
        #[arg(long, default_value = "-")]
        out: String,
    },
}

fn parse_matrix(s: &str) -> CliResult<MatrixKind> {
    match s {
        "adj" => Ok(MatrixKind::Adjacency),
        "q" => Ok(MatrixKind::SignlessLaplacian),
        _ => {
            let alpha = s
                .strip_prefix("alpha:")
                .and_then(|a| a.parse::<f64>().ok())
                .ok_or_else(|| {
                    Failure::usage(format!("--matrix must be adj, q, or alpha:<a>, got `{s}`"))
                })?;
            Ok(MatrixKind::Alpha(alpha))
        }
    }
}

fn parse_family(s: &str) -> CliResult<FamilySpec> {
    FamilySpec::from_str(s).map_err(|e| Failure::usage(e.to_string()))
}

/// Pattern argument for `contains`: family spec if it has a grammar head,
/// otherwise a bare graph6 string (graph6 bytes never include `:`).
fn parse_pattern(s: &str) -> CliResult<FamilySpec> {
    if s.contains(':') {
        parse_family(s)
    } else {
        parse_graph6_argument("--f", s)?;
        Ok(FamilySpec::Custom {
            graph6: s.to_string(),
        })
    }
}

enum LemmaTarget {
    Benchmark { delta: usize },
    Graph6,
}

fn parse_target(s: &str) -> CliResult<(LemmaTarget, Graph)> {
    let bad = || {
        Failure::usage(format!(
            "--target must be h:<n>,<delta> or graph6:<s>, got `{s}`"
        ))
    };
    let (head, tail) = s.split_once(':').ok_or_else(bad)?;
    match head {
        "h" => {
            let (n, delta) = tail.split_once(',').ok_or_else(bad)?;
            let n: usize = n.trim().parse().map_err(|_| bad())?;
            let delta: usize = delta.trim().parse().map_err(|_| bad())?;
            let g = FamilySpec::ExtremalH { n, k: delta }.build()?;
            Ok((LemmaTarget::Benchmark { delta }, g))
        }
        "graph6" => {
            let g = parse_graph6_argument("--target", tail)?;
            Ok((LemmaTarget::Graph6, g))
        }
        _ => Err(bad()),
    }
}

// ===== subcommand bodies =====

fn run_construct(family: &str, out: &str) -> CliResult<()> {
    let spec = parse_family(family)?;
    let g = spec.build()?;
    let mut parameters = BTreeMap::new();
    parameters.insert("family".to_string(), json!(spec.to_string()));
    let m = manifest("construct", parameters, BTreeMap::new(), solver_settings()?)?;
    emit(out, &format!("{}\n", graph6_encode(&g)), Some(&m))
}

fn run_spectra(
    input: &str,
    matrix: &str,
    json_records: bool,
    with_vector: bool,
    out: &str,
) -> CliResult<()> {
    let kind = parse_matrix(matrix)?;
    let settings = solver_settings()?;
    let text = read_source(input)?;
    let graphs = parse_graph6_lines(input, &text)?;

    let mut body = String::new();
    for (g6, g) in &graphs {
        let pair = dominant_eigenpair_with(g, kind, settings)?;
        if json_records {
            let mut record = json!({
                "graph6": g6,
                "matrix": matrix,
                "value": pair.value,
                "residual": pair.residual,
                "iterations": pair.iterations,
            });
            if with_vector {
                record["vector"] = json!(pair.vector);
            }
            let _ = writeln!(body, "{}", to_line(&record)?);
        } else {
            let _ = write!(
                body,
                "{g6} value={} residual={} iterations={}",
                pair.value, pair.residual, pair.iterations
            );
            if with_vector {
                let entries: Vec<String> = pair.vector.iter().map(f64::to_string).collect();
                let _ = write!(body, " vector={}", entries.join(","));
            }
            body.push('\n');
        }
    }

    let mut parameters = BTreeMap::new();
    parameters.insert("matrix".to_string(), json!(matrix));
    parameters.insert("json".to_string(), json!(json_records));
    parameters.insert("with_vector".to_string(), json!(with_vector));
    let mut digests = BTreeMap::new();
    digests.insert(input.to_string(), sha256_hex(text.as_bytes()));
    let m = manifest("spectra", parameters, digests, settings)?;
    emit(out, &body, Some(&m))
}

fn run_bounds(input: &str, check: &str, out: &str) -> CliResult<()> {
    let single: fn(&str) -> bool = |name| matches!(name, "hong" | "wilf" | "fengyu" | "ms" | "cv");
    if check != "all" && !single(check) {
        return Err(Failure::usage(format!(
            "--check must be hong, wilf, fengyu, ms, cv, or all, got `{check}`"
        )));
    }
    let text = read_source(input)?;
    let graphs = parse_graph6_lines(input, &text)?;

    let one = |name: &str, g: &Graph| -> Result<BoundReport, Error> {
        match name {
            "hong" => hong_nikiforov_bound(g),
            "wilf" => wilf_bound(g),
            "fengyu" => feng_yu_bound(g),
            "ms" => motzkin_straus_check(g, &vec![1.0 / g.n() as f64; g.n()]),
            "cv" => clique_vector_check(g),
            _ => unreachable!("checked above"),
        }
    };
    let checks: &[&str] = if check == "all" {
        &["hong", "wilf", "fengyu", "ms", "cv"]
    } else {
        &[check]
    };

    let mut body = String::new();
    for (_, g) in &graphs {
        for name in checks {
            let _ = writeln!(body, "{}", to_line(&one(name, g)?)?);
        }
    }

    let mut parameters = BTreeMap::new();
    parameters.insert("check".to_string(), json!(check));
    let mut digests = BTreeMap::new();
    digests.insert(input.to_string(), sha256_hex(text.as_bytes()));
    let m = manifest("bounds", parameters, digests, solver_settings()?)?;
    emit(out, &body, Some(&m))
}

fn run_identity(g6: &str, h6: &str, out: &str) -> CliResult<()> {
    let g = parse_graph6_argument("--g", g6)?;
    let h = parse_graph6_argument("--h", h6)?;
    let report = double_eigenvector_identity(&g, &h)?;

    let mut parameters = BTreeMap::new();
    parameters.insert("g".to_string(), json!(g6));
    parameters.insert("h".to_string(), json!(h6));
    let m = manifest("identity", parameters, BTreeMap::new(), solver_settings()?)?;
    let doc = json!({ "manifest": m, "identity": report });
    emit(out, &to_pretty(&doc)?, None)
}

fn run_contains(g_path: &str, f_arg: &str, witness: bool, out: &str) -> CliResult<()> {
    let pattern_spec = parse_pattern(f_arg)?;
    let pattern = pattern_spec.build()?;
    let text = read_source(g_path)?;
    let hosts = parse_graph6_lines(g_path, &text)?;

    let mut body = String::new();
    for (g6, host) in &hosts {
        let embedding = contains_spanning(host, &pattern)?;
        if let Some(w) = &embedding {
            if !w.verify(host, &pattern) {
                return Err(Failure::internal(format!(
                    "embedding witness failed re-verification on {g6}"
                )));
            }
        }
        let mut record = json!({ "graph6": g6, "contains": embedding.is_some() });
        if witness {
            if let Some(w) = &embedding {
                record["witness"] = json!(w.mapping);
            }
        }
        let _ = writeln!(body, "{}", to_line(&record)?);
    }

    let mut parameters = BTreeMap::new();
    parameters.insert("f".to_string(), json!(pattern_spec.to_string()));
    parameters.insert("witness".to_string(), json!(witness));
    let mut digests = BTreeMap::new();
    digests.insert(g_path.to_string(), sha256_hex(text.as_bytes()));
    let m = manifest("contains", parameters, digests, solver_settings()?)?;
    emit(out, &body, Some(&m))
}

fn run_factor(input: &str, a: usize, b: usize, out: &str) -> CliResult<()> {
    let text = read_source(input)?;
    let graphs = parse_graph6_lines(input, &text)?;

    let mut body = String::new();
    for (g6, g) in &graphs {
        let answer = has_factor(g, FactorQuery { a, b })?;
        let record = json!({ "graph6": g6, "a": a, "b": b, "has_factor": answer });
        let _ = writeln!(body, "{}", to_line(&record)?);
    }

    let mut parameters = BTreeMap::new();
    parameters.insert("a".to_string(), json!(a));
    parameters.insert("b".to_string(), json!(b));
    let mut digests = BTreeMap::new();
    digests.insert(input.to_string(), sha256_hex(text.as_bytes()));
    let m = manifest("factor", parameters, digests, solver_settings()?)?;
    emit(out, &body, Some(&m))
}

#[allow(clippy::too_many_arguments)]
fn run_search(
    n: usize,
    family: &str,
    objective: &str,
    dense: bool,
    emax: Option<usize>,
    workers: Option<usize>,
    stream: Option<&str>,
    out: &str,
    witness_out: Option<&str>,
) -> CliResult<()> {
    let spec = parse_family(family)?;
    let objective = Objective::from_str(objective).map_err(|e| Failure::usage(e.to_string()))?;
    let config = SearchConfig {
        dense_mode: dense,
        e_max: emax,
        workers,
        ..SearchConfig::default()
    };

    let mut parameters = BTreeMap::new();
    parameters.insert("n".to_string(), json!(n));
    parameters.insert("family".to_string(), json!(spec.to_string()));
    parameters.insert("objective".to_string(), json!(objective.to_string()));
    let mut digests = BTreeMap::new();

    let outcome = if let Some(stream_path) = stream {
        let text = read_source(stream_path)?;
        let graphs = parse_graph6_lines(stream_path, &text)?;
        digests.insert(stream_path.to_string(), sha256_hex(text.as_bytes()));
        parameters.insert("stream".to_string(), json!(true));
        search_stream(
            n,
            &spec,
            objective,
            graphs.into_iter().map(|(_, g)| g),
            &config,
        )?
    } else {
        parameters.insert("dense".to_string(), json!(dense));
        if dense {
            parameters.insert("emax".to_string(), json!(emax.unwrap_or(2 * n)));
        }
        search_extremal_with(n, &spec, objective, &config)?
    };

    let m = manifest("search", parameters, digests, solver_settings()?)?;
    if let Some(path) = witness_out {
        let mut lines = String::new();
        for w in &outcome.witnesses {
            let _ = writeln!(lines, "{w}");
        }
        emit(path, &lines, Some(&m))?;
    }
    let doc = json!({ "manifest": m, "outcome": outcome });
    emit(out, &to_pretty(&doc)?, None)
}

fn lemma_csv(rows: &[LemmaReport]) -> CliResult<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    let fail = |e: String| Failure::internal(format!("writing CSV: {e}"));
    writer
        .write_record([
            "lemma_id",
            "n",
            "delta_f",
            "epsilon",
            "lhs",
            "rhs",
            "satisfied",
        ])
        .map_err(|e| fail(e.to_string()))?;
    for row in rows {
        writer
            .write_record([
                row.lemma_id.wire().to_string(),
                row.n.to_string(),
                row.delta_f.map(|d| d.to_string()).unwrap_or_default(),
                row.epsilon.map(|e| e.to_string()).unwrap_or_default(),
                row.lhs.to_string(),
                row.rhs.to_string(),
                row.satisfied.to_string(),
            ])
            .map_err(|e| fail(e.to_string()))?;
    }
    let bytes = writer.into_inner().map_err(|e| fail(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| fail(e.to_string()))
}

fn run_lemmas(
    target: &str,
    chain: &str,
    eps: Option<f64>,
    delta_f: Option<usize>,
    out: &str,
    csv_out: Option<&str>,
) -> CliResult<()> {
    let (parsed, g) = parse_target(target)?;
    let delta_f = match (&parsed, delta_f) {
        (_, Some(d)) => d,
        (LemmaTarget::Benchmark { delta }, None) => *delta,
        (LemmaTarget::Graph6, None) => {
            return Err(Failure::usage("--deltaF is required for graph6 targets"));
        }
    };

    let mut parameters = BTreeMap::new();
    parameters.insert("target".to_string(), json!(target));
    parameters.insert("chain".to_string(), json!(chain));
    parameters.insert("delta_f".to_string(), json!(delta_f));

    let (m, doc, rows) = match chain {
        "adj" => {
            if eps.is_some() {
                return Err(Failure::usage("--eps applies to --chain q only"));
            }
            let reports = check_adjacency_chain(&g, delta_f)?;
            let m = manifest("lemmas", parameters, BTreeMap::new(), solver_settings()?)?;
            let doc = json!({
                "manifest": &m,
                "target": target,
                "chain": "adj",
                "delta_f": delta_f,
                "reports": &reports,
            });
            (m, doc, reports)
        }
        "q" => {
            let epsilon = eps.unwrap_or(0.1);
            parameters.insert("epsilon".to_string(), json!(epsilon));
            let report = check_q_chain(&g, delta_f, epsilon)?;
            let m = manifest("lemmas", parameters, BTreeMap::new(), solver_settings()?)?;
            let rows = report.lemmas.clone();
            let doc = json!({
                "manifest": &m,
                "target": target,
                "chain": "q",
                "delta_f": delta_f,
                "epsilon": epsilon,
                "report": report,
            });
            (m, doc, rows)
        }
        _ => {
            return Err(Failure::usage(format!(
                "--chain must be adj or q, got `{chain}`"
            )))
        }
    };

    if let Some(path) = csv_out {
        emit(path, &lemma_csv(&rows)?, Some(&m))?;
    }
    emit(out, &to_pretty(&doc)?, None)
}

fn run_corollary(case: &str, out: &str) -> CliResult<()> {
    let parsed = CorollaryCase::from_str(case).map_err(|e| Failure::usage(e.to_string()))?;
    let reports = verify_corollary(&parsed)?;

    let mut parameters = BTreeMap::new();
    parameters.insert("case".to_string(), json!(parsed.to_string()));
    let m = manifest("corollary", parameters, BTreeMap::new(), solver_settings()?)?;
    let doc = json!({ "manifest": m, "case": parsed.to_string(), "reports": reports });
    emit(out, &to_pretty(&doc)?, None)
}

// ===== entry point =====

fn dispatch(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Construct { family, out } => run_construct(&family, &out),
        Command::Spectra {
            input,
            matrix,
            json,
            with_vector,
            out,
        } => run_spectra(&input, &matrix, json, with_vector, &out),
        Command::Bounds { input, check, out } => run_bounds(&input, &check, &out),
        Command::Identity { g, h, out } => run_identity(&g, &h, &out),
        Command::Contains { g, f, witness, out } => run_contains(&g, &f, witness, &out),
        Command::Factor { input, a, b, out } => run_factor(&input, a, b, &out),
        Command::Search {
            n,
            family,
            objective,
            dense,
            emax,
            workers,
            stream,
            out,
            witness_out,
        } => run_search(
            n,
            &family,
            &objective,
            dense,
            emax,
            workers,
            stream.as_deref(),
            &out,
            witness_out.as_deref(),
        ),
        Command::Lemmas {
            target,
            chain,
            eps,
            delta_f,
            out,
            csv,
        } => run_lemmas(&target, &chain, eps, delta_f, &out, csv.as_deref()),
        Command::Corollary { case, out } => run_corollary(&case, &out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version requests are successes; everything else is a
            // usage error, which this tool reports as exit 1.
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("spexlab: error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
