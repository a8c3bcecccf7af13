use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use shakekit::eval::{read_sweep_csv, EvalReport};
use shakekit::trace_io::{read_events, write_labels, write_trace};
use shakekit::{generate_trace, synth, AccelSample, TraceDocument};

fn shakekit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shakekit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

struct Scratch(tempfile::TempDir);

impl Scratch {
    fn new() -> Self {
        Scratch(tempfile::tempdir().unwrap())
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.path().join(name)
    }

    fn clean_corpus(&self) -> (PathBuf, PathBuf) {
        let (trace, labels) = generate_trace(&synth::clean_spec(synth::CORPUS_SEED)).unwrap();
        let t = self.path("clean.csv");
        let l = self.path("clean.jsonl");
        fs::write(&t, write_trace(&trace)).unwrap();
        fs::write(&l, write_labels(&labels)).unwrap();
        (t, l)
    }
}

fn report(out: &Output) -> EvalReport {
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let stdout = String::from_utf8(out.stdout.clone()).unwrap();
    assert_eq!(stdout.lines().count(), 1);
    serde_json::from_str(stdout.trim_end()).unwrap()
}

#[test]
fn replay_quiet_trace_writes_empty_events() {
    let dir = Scratch::new();
    let samples = (0..50)
        .map(|k| AccelSample::new(k as f64 / 50.0, 0.3, -0.2, 1.0))
        .collect();
    let input = dir.path("quiet.csv");
    fs::write(
        &input,
        write_trace(&TraceDocument::new(samples, "x").unwrap()),
    )
    .unwrap();
    let out_path = dir.path("e.jsonl");
    let out = shakekit(&[
        "replay",
        "--input",
        p(&input),
        "--threshold",
        "1.0",
        "--out",
        p(&out_path),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(fs::read_to_string(&out_path).unwrap(), "");
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "samples=50 events=0\n"
    );
}

#[test]
fn replay_clean_corpus_finds_ten() {
    let dir = Scratch::new();
    let (trace, _) = dir.clean_corpus();
    let out_path = dir.path("e.jsonl");
    let out = shakekit(&[
        "replay",
        "--input",
        p(&trace),
        "--threshold",
        "1.0",
        "--delay",
        "0.5",
        "--out",
        p(&out_path),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        read_events(&fs::read_to_string(&out_path).unwrap())
            .unwrap()
            .len(),
        10
    );
}

#[test]
fn sensibility_matches_explicit_threshold() {
    let dir = Scratch::new();
    let (trace, _) = generate_trace(&synth::near_threshold_spec(1)).unwrap();
    let input = dir.path("near.csv");
    fs::write(&input, write_trace(&trace)).unwrap();
    let (a, b) = (dir.path("a.jsonl"), dir.path("b.jsonl"));
    assert!(shakekit(&[
        "replay",
        "--input",
        p(&input),
        "--sensibility",
        "normal",
        "--out",
        p(&a)
    ])
    .status
    .success());
    assert!(shakekit(&[
        "replay",
        "--input",
        p(&input),
        "--threshold",
        "1.2",
        "--out",
        p(&b)
    ])
    .status
    .success());
    let a = fs::read(&a).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, fs::read(&b).unwrap());
}

#[test]
fn replay_errors_map_to_exit_codes() {
    let dir = Scratch::new();
    let bad = dir.path("bad.csv");
    fs::write(&bad, "t,ax,ay,az\n0.02,0,0,0\n0.01,0,0,0\n").unwrap();
    let out = shakekit(&[
        "replay",
        "--input",
        p(&bad),
        "--threshold",
        "1",
        "--out",
        p(&dir.path("e")),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    let missing = dir.path("missing.csv");
    let out = shakekit(&[
        "replay",
        "--input",
        p(&missing),
        "--threshold",
        "1",
        "--out",
        p(&dir.path("e")),
    ]);
    assert_eq!(out.status.code(), Some(3));

    let (trace, _) = dir.clean_corpus();
    let unwritable = dir.path("no/such/dir/e.jsonl");
    let out = shakekit(&[
        "replay",
        "--input",
        p(&trace),
        "--threshold",
        "1",
        "--out",
        p(&unwritable),
    ]);
    assert_eq!(out.status.code(), Some(3));

    let out = shakekit(&[
        "replay",
        "--input",
        p(&trace),
        "--sensibility",
        "medium",
        "--out",
        p(&dir.path("e")),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = shakekit(&[
        "replay",
        "--input",
        p(&trace),
        "--threshold",
        "-1",
        "--out",
        p(&dir.path("e")),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = shakekit(&["replay", "--input", p(&trace), "--out", p(&dir.path("e"))]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn generate_is_deterministic() {
    let dir = Scratch::new();
    let bursts = dir.path("bursts.jsonl");
    fs::write(
        &bursts,
        "{\"start_t\":0.5,\"direction\":\"left\",\"amplitude\":1.5,\"duration\":0.2}\n\
         {\"start_t\":2.0,\"direction\":\"up\",\"amplitude\":2.0,\"duration\":0.3}\n",
    )
    .unwrap();
    let run = |tag: &str| {
        let (t, l) = (
            dir.path(&format!("{tag}.csv")),
            dir.path(&format!("{tag}.jsonl")),
        );
        let out = shakekit(&[
            "generate",
            "--duration",
            "3",
            "--rate",
            "50",
            "--noise",
            "0.1",
            "--bursts",
            p(&bursts),
            "--seed",
            "17",
            "--out",
            p(&t),
            "--labels",
            p(&l),
        ]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        (fs::read(t).unwrap(), fs::read(l).unwrap())
    };
    let first = run("a");
    assert_eq!(first, run("b"));
    // labels are the burst list, re-serialized at fixed precision
    let bursts_text = fs::read_to_string(&bursts).unwrap();
    let expected = write_labels(&shakekit::trace_io::read_labels(&bursts_text).unwrap());
    assert_eq!(first.1, expected.into_bytes());
}

#[test]
fn generate_silent_trace() {
    let dir = Scratch::new();
    let (t, l) = (dir.path("t.csv"), dir.path("l.jsonl"));
    let out = shakekit(&[
        "generate",
        "--duration",
        "1",
        "--rate",
        "10",
        "--noise",
        "0",
        "--out",
        p(&t),
        "--labels",
        p(&l),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(&t).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,ax,ay,az"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 11);
    assert_eq!(rows[1], "0.100000,0.000000,0.000000,0.000000");
    assert_eq!(fs::read_to_string(&l).unwrap(), "");
}

#[test]
fn generate_rejects_bad_specs() {
    let dir = Scratch::new();
    let (t, l) = (dir.path("t.csv"), dir.path("l.jsonl"));
    let overlapping = dir.path("o.jsonl");
    fs::write(
        &overlapping,
        "{\"start_t\":0.5,\"direction\":\"left\",\"amplitude\":1.5,\"duration\":0.5}\n\
         {\"start_t\":0.7,\"direction\":\"up\",\"amplitude\":2.0,\"duration\":0.3}\n",
    )
    .unwrap();
    for args in [
        vec![
            "generate",
            "--duration",
            "2",
            "--bursts",
            p(&overlapping),
            "--out",
            p(&t),
            "--labels",
            p(&l),
        ],
        vec![
            "generate",
            "--duration",
            "2",
            "--rate",
            "0",
            "--out",
            p(&t),
            "--labels",
            p(&l),
        ],
        vec![
            "generate",
            "--duration",
            "2",
            "--noise",
            "-1",
            "--out",
            p(&t),
            "--labels",
            p(&l),
        ],
        vec![
            "generate",
            "--corpus",
            "bogus",
            "--out",
            p(&t),
            "--labels",
            p(&l),
        ],
        vec![
            "generate",
            "--corpus",
            "clean",
            "--duration",
            "3",
            "--out",
            p(&t),
            "--labels",
            p(&l),
        ],
        vec!["generate", "--out", p(&t), "--labels", p(&l)],
    ] {
        assert_eq!(shakekit(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn every_corpus_generates_and_round_trips() {
    let dir = Scratch::new();
    for name in synth::CORPUS_NAMES {
        let (t, l) = (
            dir.path(&format!("{name}.csv")),
            dir.path(&format!("{name}.jsonl")),
        );
        let out = shakekit(&[
            "generate",
            "--corpus",
            name,
            "--out",
            p(&t),
            "--labels",
            p(&l),
        ]);
        assert_eq!(out.status.code(), Some(0));
        let text = fs::read_to_string(&t).unwrap();
        let doc = shakekit::trace_io::parse_trace(&text, name).unwrap();
        assert_eq!(write_trace(&doc), text);
        let (expected, labels) =
            generate_trace(&synth::corpus_spec(name, synth::CORPUS_SEED).unwrap()).unwrap();
        assert_eq!(text, write_trace(&expected));
        assert_eq!(fs::read_to_string(&l).unwrap(), write_labels(&labels));
    }
}

#[test]
fn evaluate_empty_inputs() {
    let dir = Scratch::new();
    let (e, l) = (dir.path("e.jsonl"), dir.path("l.jsonl"));
    fs::write(&e, "").unwrap();
    fs::write(&l, "").unwrap();
    let r = report(&shakekit(&[
        "evaluate",
        "--events",
        p(&e),
        "--labels",
        p(&l),
    ]));
    assert_eq!((r.precision, r.recall), (1.0, 1.0));
    assert_eq!(r.mean_latency, None);
}

#[test]
fn evaluate_clean_pipeline() {
    let dir = Scratch::new();
    let (trace, labels) = dir.clean_corpus();
    let events = dir.path("e.jsonl");
    assert!(shakekit(&[
        "replay",
        "--input",
        p(&trace),
        "--threshold",
        "1.0",
        "--out",
        p(&events)
    ])
    .status
    .success());
    let r = report(&shakekit(&[
        "evaluate",
        "--events",
        p(&events),
        "--labels",
        p(&labels),
    ]));
    assert_eq!(
        (r.precision, r.recall, r.direction_accuracy),
        (1.0, 1.0, 1.0)
    );
    assert_eq!(r.true_positives, 10);

    let flipped = dir.path("flipped.jsonl");
    let text = fs::read_to_string(&labels)
        .unwrap()
        .replacen("\"right\"", "\"left\"", 1);
    fs::write(&flipped, text).unwrap();
    let r = report(&shakekit(&[
        "evaluate",
        "--events",
        p(&events),
        "--labels",
        p(&flipped),
    ]));
    assert_eq!(r.recall, 1.0);
    assert!(r.direction_accuracy < 1.0);

    let bad = dir.path("bad.jsonl");
    fs::write(&bad, "{\"t\":1}\n").unwrap();
    let out = shakekit(&["evaluate", "--events", p(&bad), "--labels", p(&labels)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
}

#[test]
fn sweep_one_cell_matches_evaluate() {
    let dir = Scratch::new();
    let (trace, labels) = dir.clean_corpus();
    let events = dir.path("e.jsonl");
    assert!(shakekit(&[
        "replay",
        "--input",
        p(&trace),
        "--threshold",
        "1.0",
        "--delay",
        "0.5",
        "--out",
        p(&events)
    ])
    .status
    .success());
    let direct = report(&shakekit(&[
        "evaluate",
        "--events",
        p(&events),
        "--labels",
        p(&labels),
    ]));

    let csv = dir.path("r.csv");
    let out = shakekit(&[
        "sweep",
        "--input",
        p(&trace),
        "--labels",
        p(&labels),
        "--thresholds",
        "1.0",
        "--delays",
        "0.5",
        "--out",
        p(&csv),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let cells = read_sweep_csv(&fs::read_to_string(&csv).unwrap()).unwrap();
    assert_eq!(cells.len(), 1);
    let r = &cells[0].report;
    assert_eq!(
        (r.true_positives, r.false_positives, r.false_negatives),
        (
            direct.true_positives,
            direct.false_positives,
            direct.false_negatives
        )
    );
    assert!((r.mean_latency.unwrap() - direct.mean_latency.unwrap()).abs() < 1e-6);
}

#[test]
fn sweep_grid_and_errors() {
    let dir = Scratch::new();
    let (trace, labels) = dir.clean_corpus();
    let csv = dir.path("r.csv");
    let out = shakekit(&[
        "sweep",
        "--input",
        p(&trace),
        "--labels",
        p(&labels),
        "--thresholds",
        "0.8,1.0,1.6",
        "--delays",
        "0.25,0.5",
        "--out",
        p(&csv),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let cells = read_sweep_csv(&fs::read_to_string(&csv).unwrap()).unwrap();
    assert_eq!(cells.len(), 6);
    assert!(cells[..4].iter().all(|c| c.report.recall == 1.0));
    assert!(cells[4..].iter().all(|c| c.report.true_positives == 0));

    for (th, de) in [
        ("", "0.5"),
        ("1.0", ""),
        ("1.0,x", "0.5"),
        ("0", "0.5"),
        ("1.0", "-0.5"),
    ] {
        let out = shakekit(&[
            "sweep",
            "--input",
            p(&trace),
            "--labels",
            p(&labels),
            "--thresholds",
            th,
            "--delays",
            de,
            "--out",
            p(&csv),
        ]);
        assert_eq!(out.status.code(), Some(2), "{th:?} {de:?}");
    }
}
