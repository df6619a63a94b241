use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

use oneshot::channel::parse_channel;
use oneshot::decoding::is_max_admissible;
use oneshot::{Prob, Scheme};

const STAIRCASE: &str = "channel 3 3\n1 0 0\n1/100 99/100 0\n0.02 0 0.98\n";
const ID2: &str = "channel 2 2\n1 0\n0 1\n";
const K4: &str = "graph 4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";

fn oneshot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oneshot")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn staircase_capacity_at_one_percent() {
    let dir = TempDir::new().unwrap();
    let staircase = write(&dir, "staircase.txt", STAIRCASE);
    let o = oneshot(&["capacity", &staircase, "--metric", "max", "--epsilon", "1/100"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("k=2\n"), "{out}");
    assert!(out.contains("1.000000000000 bits"), "{out}");
}

#[test]
fn identity_capacity_at_zero() {
    let dir = TempDir::new().unwrap();
    let id2 = write(&dir, "id2.txt", ID2);
    let o = oneshot(&["capacity", &id2, "--metric", "max", "--epsilon", "0"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("k=2\n"));
}

#[test]
fn cross_check_runs_every_engine() {
    let dir = TempDir::new().unwrap();
    let staircase = write(&dir, "staircase.txt", STAIRCASE);
    for metric in ["max", "avg"] {
        for eps in ["0", "1/200", "0.01", "1/50", "1"] {
            let o = oneshot(&["capacity", &staircase, "--metric", metric, "--epsilon", eps, "--cross-check"]);
            assert!(o.status.success(), "{metric} {eps}: {}", String::from_utf8_lossy(&o.stderr));
            let err = String::from_utf8(o.stderr).unwrap();
            assert_eq!(err.matches("agrees").count(), 2, "{err}");
        }
    }
}

#[test]
fn witness_file_feeds_simulate() {
    let dir = TempDir::new().unwrap();
    let staircase = write(&dir, "staircase.txt", STAIRCASE);
    let scheme = dir.path().join("scheme.json");
    let scheme = scheme.to_str().unwrap();
    let o = oneshot(&["capacity", &staircase, "--metric", "max", "--epsilon", "1/50", "--witness", scheme]);
    assert!(o.status.success());
    let s = Scheme::from_json(&fs::read_to_string(scheme).unwrap()).unwrap();
    assert_eq!(s.len(), 3);
    assert!(is_max_admissible(&parse_channel(STAIRCASE).unwrap(), &s, &Prob::new(1, 50)).unwrap());

    let args = ["simulate", &staircase, "--scheme", scheme, "--trials", "20000", "--seed", "9"];
    let a = oneshot(&args);
    let b = oneshot(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let report: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(report["exact_max_error"], "1/50");
    assert_eq!(report["codewords"].as_array().unwrap().len(), 3);
}

#[test]
fn curve_csv() {
    let dir = TempDir::new().unwrap();
    let staircase = write(&dir, "staircase.txt", STAIRCASE);
    let csv = dir.path().join("curve.csv");
    let o = oneshot(&["curve", &staircase, "--metric", "max", "--out", csv.to_str().unwrap()]);
    assert!(o.status.success());
    let text = fs::read_to_string(&csv).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "epsilon,codebook_size,capacity_bits");
    assert_eq!(&rows[1..], ["0/1,1,0.000000000000", "1/100,2,1.000000000000", "1/50,3,1.584962500721"]);

    let o = oneshot(&["curve", &staircase, "--metric", "avg"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().nth(1).unwrap().starts_with("0/1,1,"));
}

#[test]
fn sparse_and_graph_dump() {
    let dir = TempDir::new().unwrap();
    let staircase = write(&dir, "staircase.txt", STAIRCASE);
    let o = oneshot(&["sparse", &staircase, "--epsilon", "1/200"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("alpha=2\n"));

    let o = oneshot(&["graph-dump", &staircase, "--epsilon", "1/100", "--variant", "max"]);
    assert!(o.status.success());
    let dump = stdout(&o);
    assert!(dump.lines().all(|l| l.starts_with("node ") || l.starts_with("edge ")));
    assert!(dump.contains("node 0 0 {0}"));

    let o = oneshot(&["graph-dump", &staircase, "--variant", "avg"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains(" 3/100\n"));

    let o = oneshot(&["graph-dump", &staircase, "--variant", "max"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn reduce_and_verify() {
    let dir = TempDir::new().unwrap();
    let k4 = write(&dir, "k4.txt", K4);
    let o = oneshot(&["verify-reduction", &k4, "--epsilon", "1/4"]);
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["agree"], true);
    assert_eq!(report["graph_alpha"], 1);
    assert_eq!(report["channel_capacity_k"], 1);

    let o = oneshot(&["verify-reduction", &k4, "--epsilon", "1/3"]);
    assert_eq!(o.status.code(), Some(1));

    let out = dir.path().join("k4-channel.txt");
    let o = oneshot(&["reduce", &k4, "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let c = parse_channel(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!((c.num_inputs(), c.num_outputs()), (4, 6));
    assert_eq!(c.prob(0, 0), &Prob::new(1, 3));
}

#[test]
fn generators_are_seeded() {
    let a = oneshot(&["gen", "random", "--nx", "3", "--ny", "4", "--seed", "5", "--denom", "20"]);
    let b = oneshot(&["gen", "random", "--nx", "3", "--ny", "4", "--seed", "5", "--denom", "20"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    parse_channel(&stdout(&a)).unwrap();

    let g = oneshot(&["gen", "cubic", "--vertices", "10", "--seed", "1"]);
    assert!(g.status.success());
    assert!(stdout(&g).starts_with("graph 10 15\n"));

    let e = oneshot(&["gen", "example1", "--n", "3", "--e", "1/100,1/50"]);
    assert_eq!(parse_channel(&stdout(&e)).unwrap(), parse_channel(STAIRCASE).unwrap());
}

#[test]
fn validate_reports_shape_and_errors() {
    let dir = TempDir::new().unwrap();
    let staircase = write(&dir, "staircase.txt", STAIRCASE);
    let o = oneshot(&["validate", &staircase]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("inputs=3 outputs=3\nrow 0: sum=1"));

    let bad = write(&dir, "bad.txt", "channel 1 2\n1/2 1/3\n");
    let o = oneshot(&["validate", &bad]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8(o.stderr).unwrap().contains("error:"));
}

#[test]
fn usage_errors() {
    for args in [&["nope"][..], &["capacity", "x", "--metric", "max", "--epsilon", "0.1", "--frob"][..], &[][..]] {
        let o = oneshot(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8(o.stderr).unwrap().contains("Usage:"));
    }
    let o = oneshot(&["capacity", "x", "--metric", "max", "--epsilon", "0.1f"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(Path::new(env!("CARGO_BIN_EXE_oneshot")).exists());
}
