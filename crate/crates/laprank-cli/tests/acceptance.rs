//! Acceptance check for the command-line layer: identical `rank`
//! invocations must produce byte-identical score files. Companion to the
//! criterion 1-8 suite in the library crate.

use std::path::{Path, PathBuf};
use std::process::Command;

fn laprank() -> Command {
    Command::new(env!("CARGO_BIN_EXE_laprank"))
}

fn write_sample_graph(dir: &Path) -> PathBuf {
    let path = dir.join("edges.tsv");
    std::fs::write(
        &path,
        "hub\tleft\t2.5\nhub\tright\t1.25\nleft\tright\t0.5\nhub\ttail\t4\n",
    )
    .unwrap();
    path
}

/// Two runs of `rank` with identical inputs produce byte-identical score
/// files, for both methods.
#[test]
fn criterion_9_rank_score_files_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let edges = write_sample_graph(dir.path());

    for (method, extra) in [
        ("pagerank", Vec::new()),
        ("plaplacian", vec!["--p", "1.5", "--mu", "0.7"]),
    ] {
        let mut outputs = Vec::new();
        for run in 0..2 {
            let scores = dir.path().join(format!("{method}-{run}.tsv"));
            let output = laprank()
                .arg("rank")
                .arg(&edges)
                .args(["--method", method])
                .args(&extra)
                .arg("--output")
                .arg(&scores)
                .output()
                .expect("binary must launch");
            assert!(
                output.status.success(),
                "rank --method {method} failed (run {run}): {}",
                String::from_utf8_lossy(&output.stderr)
            );
            outputs.push(std::fs::read(&scores).unwrap());
        }
        assert_eq!(
            outputs[0], outputs[1],
            "score files differ between identical {method} runs"
        );
        assert!(!outputs[0].is_empty(), "score file is empty for {method}");
    }
    println!("criterion 9 (byte-identical score files across reruns): PASS");
}
