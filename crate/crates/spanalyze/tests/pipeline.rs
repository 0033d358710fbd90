//! Staged-pipeline tests: each command persists artifacts the next one
//! consumes, missing artifacts and config violations exit with the
//! documented statuses, and reruns are byte-identical.

use std::io::BufReader;
use std::path::{Path, PathBuf};

use spanalyze::cli::run;
use spanalyze::graph::io::{read_dot, read_graphml};

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn config_arg() -> String {
    fixtures().join("run.toml").display().to_string()
}

fn run_cmd(args: &[&str]) -> i32 {
    let argv: Vec<String> = std::iter::once("spanalyze".to_string())
        .chain(args.iter().map(|s| s.to_string()))
        .collect();
    run(argv)
}

fn tree(root: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files = Vec::new();
    fn walk(dir: &Path, base: &Path, out: &mut Vec<(String, Vec<u8>)>) {
        for entry in std::fs::read_dir(dir).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                walk(&path, base, out);
            } else {
                out.push((
                    path.strip_prefix(base).unwrap().display().to_string(),
                    std::fs::read(&path).unwrap(),
                ));
            }
        }
    }
    walk(root, root, &mut files);
    files.sort_by(|a, b| a.0.cmp(&b.0));
    files
}

#[test]
fn staged_pipeline_produces_consistent_artifacts() {
    let out = tempfile::tempdir().unwrap();
    let out_arg = out.path().display().to_string();
    let cfg = config_arg();

    for command in ["ingest", "delineate", "network", "boundary", "indicators", "windows"] {
        let status = run_cmd(&[command, "--config", &cfg, "--out", &out_arg]);
        assert_eq!(status, 0, "{command} failed");
    }

    for expected in [
        "artifacts/corpus.jsonl",
        "artifacts/citations.csv",
        "artifacts/ingest.json",
        "artifacts/domains.json",
        "traces/expansion_ret.json",
        "graphs/ret_2008_2013.graphml",
        "graphs/boundary_2008_2013.graphml",
        "indicators.json",
        "tables/network_ret.csv",
        "tables/network_boundary.csv",
        "windows.json",
        "manifest.json",
    ] {
        assert!(out.path().join(expected).is_file(), "{expected} missing");
    }

    // export round-trips the persisted boundary graph in all formats
    for format in ["graphml", "dot", "csv", "json"] {
        let status = run_cmd(&[
            "export", "--config", &cfg, "--out", &out_arg, "--net", "boundary", "--window",
            "2008:2013", "--format", format,
        ]);
        assert_eq!(status, 0, "export {format} failed");
    }
    let (g_artifact, s_artifact) = read_graphml(BufReader::new(
        std::fs::File::open(out.path().join("graphs/boundary_2008_2013.graphml")).unwrap(),
    ))
    .unwrap();
    let (g_exported, s_exported) = read_graphml(BufReader::new(
        std::fs::File::open(out.path().join("export/boundary_2008_2013.graphml")).unwrap(),
    ))
    .unwrap();
    assert_eq!(g_artifact, g_exported);
    assert_eq!(s_artifact, s_exported);
    let (g_dot, _) = read_dot(BufReader::new(
        std::fs::File::open(out.path().join("export/boundary_2008_2013.dot")).unwrap(),
    ))
    .unwrap();
    assert_eq!(
        g_artifact.edges().collect::<Vec<_>>(),
        g_dot.edges().collect::<Vec<_>>()
    );
}

#[test]
fn missing_artifact_exits_2() {
    let out = tempfile::tempdir().unwrap();
    let status = run_cmd(&[
        "delineate",
        "--config",
        &config_arg(),
        "--out",
        &out.path().display().to_string(),
    ]);
    assert_eq!(status, 2, "delineate without ingest must exit 2");

    let status = run_cmd(&[
        "boundary",
        "--config",
        &config_arg(),
        "--out",
        &out.path().display().to_string(),
    ]);
    assert_eq!(status, 2, "boundary without network must exit 2");
}

#[test]
fn config_violation_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    let text = std::fs::read_to_string(fixtures().join("run.toml"))
        .unwrap()
        .replace("corpus_small.jsonl", "no_such_file.jsonl");
    std::fs::write(&bad, text).unwrap();
    let status = run_cmd(&[
        "report",
        "--config",
        &bad.display().to_string(),
        "--out",
        &dir.path().join("out").display().to_string(),
    ]);
    assert_eq!(status, 3);
}

#[test]
fn rerun_is_byte_identical() {
    let cfg = config_arg();
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    assert_eq!(
        run_cmd(&["report", "--config", &cfg, "--out", &a.path().display().to_string()]),
        0
    );
    assert_eq!(
        run_cmd(&["report", "--config", &cfg, "--out", &b.path().display().to_string()]),
        0
    );
    assert_eq!(tree(a.path()), tree(b.path()));

    // rerunning into the same directory rewrites identical bytes
    let before = tree(a.path());
    assert_eq!(
        run_cmd(&["report", "--config", &cfg, "--out", &a.path().display().to_string()]),
        0
    );
    assert_eq!(before, tree(a.path()));
}

#[test]
fn thread_cap_env_var_does_not_change_outputs() {
    let cfg = config_arg();
    let out = tempfile::tempdir().unwrap();
    std::env::set_var("SPANALYZE_THREADS", "4");
    let status = run_cmd(&["report", "--config", &cfg, "--out", &out.path().display().to_string()]);
    std::env::remove_var("SPANALYZE_THREADS");
    assert_eq!(status, 0);
    let golden = fixtures().join("golden/report");
    for rel in ["report.json", "graphs/boundary_2008_2013.graphml"] {
        assert_eq!(
            std::fs::read(out.path().join(rel)).unwrap(),
            std::fs::read(golden.join(rel)).unwrap(),
            "{rel} differs under SPANALYZE_THREADS=4"
        );
    }
}

#[test]
fn output_directory_lock_rejects_concurrent_runs() {
    let out = tempfile::tempdir().unwrap();
    std::fs::write(out.path().join(".lock"), b"").unwrap();
    let status = run_cmd(&[
        "ingest",
        "--config",
        &config_arg(),
        "--out",
        &out.path().display().to_string(),
    ]);
    assert_eq!(status, 1, "locked directory must refuse the run");
    // lock was not ours; it stays
    assert!(out.path().join(".lock").exists());
}

#[test]
fn every_output_is_declared_in_the_manifest() {
    let out = tempfile::tempdir().unwrap();
    let status = run_cmd(&[
        "report",
        "--config",
        &config_arg(),
        "--out",
        &out.path().display().to_string(),
    ]);
    assert_eq!(status, 0);
    let manifest: serde_json::Value = serde_json::from_slice(
        &std::fs::read(out.path().join("manifest.json")).unwrap(),
    )
    .unwrap();
    let declared: std::collections::BTreeSet<String> = manifest["outputs"]
        .as_object()
        .unwrap()
        .keys()
        .cloned()
        .collect();
    let on_disk: std::collections::BTreeSet<String> = tree(out.path())
        .into_iter()
        .map(|(rel, _)| rel)
        .filter(|rel| rel != "manifest.json")
        .collect();
    assert_eq!(declared, on_disk, "undeclared or missing outputs");
}
