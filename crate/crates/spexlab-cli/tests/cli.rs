//! End-to-end tests of the installed binary: exit codes, output bytes,
//! manifests, and the no-partial-output guarantee.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use spexlab::enumerate::canonical_form;
use spexlab::graph::graph6_encode;
use spexlab::FamilySpec;

fn spexlab() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_spexlab"));
    cmd.env_remove("SOURCE_DATE_EPOCH");
    cmd.env_remove("SPEXLAB_SOLVER_TOL");
    cmd
}

fn run(cmd: &mut Command) -> Output {
    cmd.output().expect("binary runs")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr_str(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is UTF-8")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

/// Fresh scratch directory, removed on drop.
struct Scratch(PathBuf);

impl Scratch {
    fn new(name: &str) -> Scratch {
        let dir = std::env::temp_dir().join(format!("spexlab-cli-{name}-{}", std::process::id()));
        let _ = fs::remove_dir_all(&dir);
        fs::create_dir_all(&dir).expect("scratch dir");
        Scratch(dir)
    }

    fn path(&self, file: &str) -> PathBuf {
        self.0.join(file)
    }

    fn path_str(&self, file: &str) -> String {
        self.path(file).to_str().expect("UTF-8 path").to_string()
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = fs::remove_dir_all(&self.0);
    }
}

fn family_g6(spec: FamilySpec) -> String {
    graph6_encode(&spec.build().expect("family builds"))
}

fn json_doc(out: &Output) -> Value {
    serde_json::from_str(&stdout_str(out)).expect("stdout is one JSON document")
}

#[test]
fn construct_emits_graph6_with_a_sidecar_manifest() {
    let scratch = Scratch::new("construct");
    let out_path = scratch.path_str("h92.g6");
    let out = run(spexlab().args(["construct", "--family", "h:9,2", "--out", &out_path]));
    assert_eq!(code(&out), 0, "stderr: {}", stderr_str(&out));

    let written = fs::read_to_string(scratch.path("h92.g6")).expect("output file");
    assert_eq!(
        written,
        format!("{}\n", family_g6(FamilySpec::ExtremalH { n: 9, k: 2 }))
    );

    let sidecar: Value = serde_json::from_str(
        &fs::read_to_string(scratch.path("h92.g6.manifest.json")).expect("sidecar"),
    )
    .expect("sidecar parses");
    assert_eq!(sidecar["command"], "construct");
    assert_eq!(sidecar["parameters"]["family"], "h:9,2");
    assert_eq!(sidecar["artifact_version"], "1");
    assert_eq!(sidecar["solver_settings"]["tolerance"], 1e-10);
    let stamp = sidecar["timestamp"].as_str().expect("timestamp string");
    assert!(stamp.ends_with('Z'), "ISO-8601 UTC, got {stamp}");
}

#[test]
fn spectra_reports_the_clique_eigenvalue() {
    let scratch = Scratch::new("spectra");
    let k9 = family_g6(FamilySpec::Turan { n: 9, r: 9 });
    fs::write(scratch.path("k9.g6"), format!("{k9}\n")).unwrap();

    let out = run(spexlab().args([
        "spectra",
        "--in",
        &scratch.path_str("k9.g6"),
        "--matrix",
        "adj",
        "--json",
    ]));
    assert_eq!(code(&out), 0, "stderr: {}", stderr_str(&out));
    let record: Value = serde_json::from_str(stdout_str(&out).trim()).expect("one JSONL record");
    assert_eq!(record["graph6"], k9.as_str());
    let value = record["value"].as_f64().unwrap();
    assert!((value - 8.0).abs() <= 1e-9, "lambda(K_9) = {value}");
    assert!(record["residual"].as_f64().unwrap() <= 1e-10 * 8.0);
    assert!(record["iterations"].as_u64().unwrap() >= 1);
    assert!(
        record.get("vector").is_none(),
        "vector only with --with-vector"
    );
}

#[test]
fn solver_tolerance_override_is_recorded_and_validated() {
    let scratch = Scratch::new("tolerance");
    let k5 = family_g6(FamilySpec::Turan { n: 5, r: 5 });
    fs::write(scratch.path("k5.g6"), format!("{k5}\n")).unwrap();
    let out_path = scratch.path_str("spec.txt");

    let out = run(spexlab().env("SPEXLAB_SOLVER_TOL", "1e-6").args([
        "spectra",
        "--in",
        &scratch.path_str("k5.g6"),
        "--out",
        &out_path,
    ]));
    assert_eq!(code(&out), 0, "stderr: {}", stderr_str(&out));
    let sidecar: Value = serde_json::from_str(
        &fs::read_to_string(scratch.path("spec.txt.manifest.json")).expect("sidecar"),
    )
    .unwrap();
    assert_eq!(sidecar["solver_settings"]["tolerance"], 1e-6);

    let bad = run(spexlab().env("SPEXLAB_SOLVER_TOL", "fast").args([
        "spectra",
        "--in",
        &scratch.path_str("k5.g6"),
    ]));
    assert_eq!(code(&bad), 1);
    assert!(stderr_str(&bad).contains("SPEXLAB_SOLVER_TOL"));
}

#[test]
fn malformed_graph6_exits_2_with_location_and_no_partial_file() {
    let scratch = Scratch::new("malformed");
    let k9 = family_g6(FamilySpec::Turan { n: 9, r: 9 });
    fs::write(scratch.path("bad.g6"), format!("{k9}\n;;;\n")).unwrap();
    let out_path = scratch.path_str("out.txt");

    let out = run(spexlab().args([
        "spectra",
        "--in",
        &scratch.path_str("bad.g6"),
        "--out",
        &out_path,
    ]));
    assert_eq!(code(&out), 2);
    let message = stderr_str(&out);
    assert!(message.contains(":2:"), "line number in: {message}");
    assert!(message.contains("byte"), "byte offset in: {message}");

    assert!(
        !Path::new(&out_path).exists(),
        "no output file on parse failure"
    );
    let leftovers: Vec<_> = fs::read_dir(&scratch.0)
        .unwrap()
        .filter_map(|e| e.ok())
        .map(|e| e.file_name().to_string_lossy().into_owned())
        .filter(|name| name.contains(".partial"))
        .collect();
    assert!(leftovers.is_empty(), "stray temp files: {leftovers:?}");
}

#[test]
fn worker_count_never_changes_search_bytes() {
    let mut runs = Vec::new();
    for workers in ["1", "3"] {
        let out = run(spexlab().env("SOURCE_DATE_EPOCH", "1700000000").args([
            "search",
            "--n",
            "6",
            "--family",
            "cyclepower:6,1",
            "--objective",
            "lambda",
            "--workers",
            workers,
        ]));
        assert_eq!(code(&out), 0, "stderr: {}", stderr_str(&out));
        runs.push(out.stdout);
    }
    assert_eq!(
        runs[0], runs[1],
        "output bytes must not depend on --workers"
    );

    let doc: Value = serde_json::from_slice(&runs[0]).unwrap();
    let expected = canonical_form(&FamilySpec::ExtremalH { n: 6, k: 2 }.build().unwrap()).unwrap();
    assert_eq!(doc["outcome"]["witnesses"], serde_json::json!([expected]));
    assert_eq!(doc["manifest"]["timestamp"], "2023-11-14T22:13:20Z");
    assert!(doc["manifest"]["parameters"].get("workers").is_none());
}

#[test]
fn exit_codes_cover_usage_capacity_and_input_classes() {
    let usage = run(spexlab().arg("frobnicate"));
    assert_eq!(code(&usage), 1);

    let help = run(spexlab().arg("--help"));
    assert_eq!(code(&help), 0);
    assert!(stdout_str(&help).contains("Exit codes"));

    let capacity = run(spexlab().args([
        "search",
        "--n",
        "11",
        "--family",
        "cyclepower:11,1",
        "--objective",
        "edges",
    ]));
    assert_eq!(code(&capacity), 3);

    let needs_delta = run(spexlab().args(["lemmas", "--target", "graph6:D~{", "--chain", "adj"]));
    assert_eq!(code(&needs_delta), 1);
    assert!(stderr_str(&needs_delta).contains("--deltaF"));

    // C_5 against K_4 plus an isolated vertex: the identity requires
    // connected inputs, which is an input-data problem.
    let c5 = family_g6(FamilySpec::CyclePower { n: 5, k: 1 });
    let split = family_g6(FamilySpec::ExtremalH { n: 5, k: 1 });
    let disconnected = run(spexlab().args(["identity", "--g", &c5, "--h", &split]));
    assert_eq!(code(&disconnected), 2);
    assert!(stderr_str(&disconnected).contains("disconnected"));
}

#[test]
fn lemma_csv_has_the_contract_columns() {
    let scratch = Scratch::new("lemmas");
    let csv_path = scratch.path_str("rows.csv");
    let doc_path = scratch.path_str("chain.json");
    let out = run(spexlab().args([
        "lemmas", "--target", "h:12,2", "--chain", "adj", "--csv", &csv_path, "--out", &doc_path,
    ]));
    assert_eq!(code(&out), 0, "stderr: {}", stderr_str(&out));

    let csv = fs::read_to_string(scratch.path("rows.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "lemma_id,n,delta_f,epsilon,lhs,rhs,satisfied");
    assert_eq!(lines.len(), 11, "header plus ten chain rows");
    assert!(
        lines[1].starts_with("L3.1,12,2,,"),
        "first row: {}",
        lines[1]
    );

    let doc: Value =
        serde_json::from_str(&fs::read_to_string(scratch.path("chain.json")).unwrap()).unwrap();
    assert_eq!(doc["manifest"]["command"], "lemmas");
    assert_eq!(doc["reports"].as_array().unwrap().len(), 10);
    assert!(
        scratch.path("rows.csv.manifest.json").exists(),
        "CSV manifest sidecar"
    );
}

#[test]
fn q_chain_doc_carries_partition_and_entries() {
    let out = run(spexlab().args([
        "lemmas", "--target", "h:20,3", "--chain", "q", "--eps", "0.12",
    ]));
    assert_eq!(code(&out), 0, "stderr: {}", stderr_str(&out));
    let doc = json_doc(&out);
    assert_eq!(doc["epsilon"], 0.12);
    assert_eq!(doc["report"]["lemmas"].as_array().unwrap().len(), 9);
    assert_eq!(doc["report"]["entries"].as_array().unwrap().len(), 20);
    assert_eq!(doc["manifest"]["parameters"]["epsilon"], 0.12);
}

#[test]
fn corollary_report_round_trips_the_case() {
    let out = run(spexlab().args(["corollary", "--case", "cyclepower:7,1"]));
    assert_eq!(code(&out), 0, "stderr: {}", stderr_str(&out));
    let doc = json_doc(&out);
    assert_eq!(doc["case"], "cyclepower:7,1");
    let reports = doc["reports"].as_array().unwrap();
    assert_eq!(
        reports.len(),
        4,
        "freeness, count, and two search cross-checks"
    );
    assert!(reports.iter().all(|r| r["satisfied"] == true));
}

#[test]
fn contains_and_factor_answer_per_graph() {
    let scratch = Scratch::new("contains");
    let k6 = family_g6(FamilySpec::Turan { n: 6, r: 6 });
    let split = family_g6(FamilySpec::ExtremalH { n: 6, k: 1 });
    fs::write(scratch.path("hosts.g6"), format!("{k6}\n{split}\n")).unwrap();

    let out = run(spexlab().args([
        "contains",
        "--g",
        &scratch.path_str("hosts.g6"),
        "--f",
        "cyclepower:6,1",
        "--witness",
    ]));
    assert_eq!(code(&out), 0, "stderr: {}", stderr_str(&out));
    let stdout = stdout_str(&out);
    let records: Vec<Value> = stdout
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(records.len(), 2);
    assert_eq!(records[0]["contains"], true);
    assert_eq!(records[0]["witness"].as_array().unwrap().len(), 6);
    assert_eq!(
        records[1]["contains"], false,
        "K_5 plus an isolate has no spanning cycle"
    );
    assert!(records[1].get("witness").is_none());

    let factors = run(spexlab().args([
        "factor",
        "--in",
        &scratch.path_str("hosts.g6"),
        "--a",
        "1",
        "--b",
        "1",
    ]));
    assert_eq!(code(&factors), 0);
    let rows: Vec<Value> = stdout_str(&factors)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(rows[0]["has_factor"], true, "K_6 has a perfect matching");
    assert_eq!(
        rows[1]["has_factor"], false,
        "an isolated vertex blocks every matching"
    );
}

#[test]
fn stream_search_scores_only_the_supplied_graphs() {
    let scratch = Scratch::new("stream");
    let h62 = family_g6(FamilySpec::ExtremalH { n: 6, k: 2 });
    let k6 = family_g6(FamilySpec::Turan { n: 6, r: 6 });
    fs::write(scratch.path("pool.g6"), format!("{h62}\n{k6}\n")).unwrap();

    let out = run(spexlab().args([
        "search",
        "--n",
        "6",
        "--family",
        "cyclepower:6,1",
        "--objective",
        "edges",
        "--stream",
        &scratch.path_str("pool.g6"),
    ]));
    assert_eq!(code(&out), 0, "stderr: {}", stderr_str(&out));
    let doc = json_doc(&out);
    assert_eq!(
        doc["outcome"]["best_value"], 11.0,
        "K_6 is Hamiltonian, so H_{{6,2}} wins"
    );
    let digest_keys: Vec<&String> = doc["manifest"]["input_digests"]
        .as_object()
        .unwrap()
        .keys()
        .collect();
    assert_eq!(digest_keys.len(), 1);
    let digest = doc["manifest"]["input_digests"][digest_keys[0]]
        .as_str()
        .unwrap();
    assert!(digest.starts_with("sha256:"), "digest format: {digest}");
}

#[test]
fn witness_file_lists_each_extremal_graph() {
    let scratch = Scratch::new("witness");
    let witness_path = scratch.path_str("ex.g6");
    let out = run(spexlab().args([
        "search",
        "--n",
        "5",
        "--family",
        "cyclepower:5,1",
        "--objective",
        "edges",
        "--witness-out",
        &witness_path,
        "--out",
        &scratch.path_str("outcome.json"),
    ]));
    assert_eq!(code(&out), 0, "stderr: {}", stderr_str(&out));

    let listed: Vec<String> = fs::read_to_string(scratch.path("ex.g6"))
        .unwrap()
        .lines()
        .map(str::to_string)
        .collect();
    // Two co-extremal edge maximizers at this order.
    assert_eq!(listed.len(), 2);
    let doc: Value =
        serde_json::from_str(&fs::read_to_string(scratch.path("outcome.json")).unwrap()).unwrap();
    assert_eq!(doc["outcome"]["witnesses"].as_array().unwrap().len(), 2);
    assert!(scratch.path("ex.g6.manifest.json").exists());
}
