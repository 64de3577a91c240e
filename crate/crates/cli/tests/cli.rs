//! Black-box tests of the `dhopc` binary: exit codes, violation reports,
//! pipeline soundness, and byte-identical reruns.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dhopc"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn dhopc")
}

fn tmpdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dhopc-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(path: &Path, text: &str) {
    std::fs::write(path, text).unwrap();
}

fn s(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn color_then_verify_roundtrip_exits_zero() {
    let dir = tmpdir("roundtrip");
    let graph = dir.join("g.json");
    let coloring = dir.join("c.json");
    write(&graph, r#"{"num_nodes": 3, "edges": [[0,1],[1,2]]}"#);

    let out = run(&["color", "-i", s(&graph), "--d", "1", "-o", s(&coloring)]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    let out = run(&[
        "verify",
        "-i",
        s(&graph),
        "--coloring",
        s(&coloring),
        "--d",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_reports_first_violation_and_exits_one() {
    let dir = tmpdir("violation");
    let graph = dir.join("g.json");
    let coloring = dir.join("c.json");
    write(&graph, r#"{"num_nodes": 3, "edges": [[0,1],[1,2]]}"#);
    write(
        &coloring,
        r#"{"d": 1, "num_colors": 2, "colors": [0, 1, 0]}"#,
    );

    let out = run(&[
        "verify",
        "-i",
        s(&graph),
        "--coloring",
        s(&coloring),
        "--d",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(
        stdout.contains("node 1"),
        "report names the violated ball: {stdout}"
    );
}

#[test]
fn parse_errors_exit_two() {
    let dir = tmpdir("parse");
    let graph = dir.join("broken.json");
    let coloring = dir.join("c.json");
    write(&graph, "{ this is not json");
    let out = run(&["color", "-i", s(&graph), "--d", "1", "-o", s(&coloring)]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn validation_errors_exit_one() {
    let dir = tmpdir("validation");
    let graph = dir.join("selfloop.json");
    let coloring = dir.join("c.json");
    write(&graph, r#"{"num_nodes": 3, "edges": [[0,0]]}"#);
    let out = run(&["color", "-i", s(&graph), "--d", "1", "-o", s(&coloring)]);
    assert_eq!(out.status.code(), Some(1));

    // d = 0 is rejected, not reinterpreted
    write(&graph, r#"{"num_nodes": 3, "edges": [[0,1]]}"#);
    let out = run(&["color", "-i", s(&graph), "--d", "0", "-o", s(&coloring)]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    let out = run(&["color", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["not-a-command"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bound_matches_spec_example() {
    let out = run(&[
        "bound",
        "--p",
        "1",
        "--colors",
        "1",
        "--theta-emb",
        "1",
        "--theta-merge",
        "1",
        "--depth",
        "1",
        "--delta",
        "0.7357588823",
        "--epsilon",
        "1",
    ]);
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.starts_with("2 "), "{stdout}");
    assert!(stdout.contains("natural"));
}

#[test]
fn bound_requires_exactly_one_direction() {
    let out = run(&[
        "bound",
        "--p",
        "1",
        "--colors",
        "1",
        "--theta-emb",
        "1",
        "--theta-merge",
        "1",
        "--depth",
        "1",
        "--delta",
        "0.5",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&[
        "bound",
        "--p",
        "1",
        "--colors",
        "1",
        "--theta-emb",
        "1",
        "--theta-merge",
        "1",
        "--depth",
        "1",
        "--delta",
        "0.5",
        "--n",
        "10",
        "--epsilon",
        "0.5",
    ]);
    assert_eq!(out.status.code(), Some(2)); // clap conflict
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tmpdir("idempotent");
    let graph = dir.join("g.json");
    let coloring = dir.join("c.json");
    let features = dir.join("f.json");
    let ilp = dir.join("ilp.json");
    let bip = dir.join("bip.json");

    run(&[
        "gen",
        "binpack",
        "--items",
        "4",
        "--bins",
        "3",
        "--seed",
        "11",
        "-o",
        s(&ilp),
    ]);
    run(&["encode", "-i", s(&ilp), "-o", s(&bip)]);
    run(&["color", "-i", s(&bip), "--d", "1", "-o", s(&coloring)]);
    run(&[
        "augment",
        "-i",
        s(&bip),
        "--scheme",
        "uniform",
        "--seed",
        "5",
        "-o",
        s(&features),
    ]);
    run(&[
        "gen",
        "er",
        "--nodes",
        "30",
        "--edge-prob",
        "0.2",
        "--seed",
        "3",
        "-o",
        s(&graph),
    ]);

    let snapshot: Vec<Vec<u8>> = [&ilp, &bip, &coloring, &features, &graph]
        .iter()
        .map(|p| std::fs::read(p).unwrap())
        .collect();

    run(&[
        "gen",
        "binpack",
        "--items",
        "4",
        "--bins",
        "3",
        "--seed",
        "11",
        "-o",
        s(&ilp),
    ]);
    run(&["encode", "-i", s(&ilp), "-o", s(&bip)]);
    run(&["color", "-i", s(&bip), "--d", "1", "-o", s(&coloring)]);
    run(&[
        "augment",
        "-i",
        s(&bip),
        "--scheme",
        "uniform",
        "--seed",
        "5",
        "-o",
        s(&features),
    ]);
    run(&[
        "gen",
        "er",
        "--nodes",
        "30",
        "--edge-prob",
        "0.2",
        "--seed",
        "3",
        "-o",
        s(&graph),
    ]);

    for (path, before) in [&ilp, &bip, &coloring, &features, &graph]
        .iter()
        .zip(&snapshot)
    {
        assert_eq!(&std::fs::read(path).unwrap(), before, "{}", path.display());
    }
}

#[test]
fn json_stdout_mirrors_file_content() {
    let dir = tmpdir("mirror");
    let graph = dir.join("g.json");
    let coloring = dir.join("c.json");
    write(&graph, r#"{"num_nodes": 2, "edges": [[0,1]]}"#);
    let out = run(&[
        "--json-stdout",
        "color",
        "-i",
        s(&graph),
        "--d",
        "1",
        "-o",
        s(&coloring),
    ]);
    assert!(out.status.success());
    assert_eq!(out.stdout, std::fs::read(&coloring).unwrap());
}

#[test]
fn augment_requires_seed_for_uniform() {
    let dir = tmpdir("augseed");
    let ilp = dir.join("ilp.json");
    let bip = dir.join("bip.json");
    let features = dir.join("f.json");
    write(&ilp, r#"{"n":1,"m":1,"c":[1],"b":[2],"A":[[0,0,1]]}"#);
    run(&["encode", "-i", s(&ilp), "-o", s(&bip)]);
    let out = run(&[
        "augment",
        "-i",
        s(&bip),
        "--scheme",
        "uniform",
        "-o",
        s(&features),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn wl_colored_requires_coloring() {
    let dir = tmpdir("wlmode");
    let graph = dir.join("g.json");
    let report = dir.join("r.json");
    write(&graph, r#"{"num_nodes": 2, "edges": [[0,1]]}"#);
    let out = run(&[
        "wl",
        "-i",
        s(&graph),
        "--mode",
        "colored",
        "--rounds",
        "1",
        "-o",
        s(&report),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn missing_input_file_exits_one() {
    let out = run(&[
        "color",
        "-i",
        "/nonexistent/g.json",
        "--d",
        "1",
        "-o",
        "/tmp/x.json",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn forward_seeded_params_reproducible() {
    let dir = tmpdir("fwd");
    let ilp = dir.join("ilp.json");
    let bip = dir.join("bip.json");
    let features = dir.join("f.json");
    let out1 = dir.join("o1.json");
    let out2 = dir.join("o2.json");
    write(
        &ilp,
        r#"{"n":2,"m":1,"c":[1,-1],"b":[3],"A":[[0,0,1],[0,1,2]]}"#,
    );
    run(&["encode", "-i", s(&ilp), "-o", s(&bip)]);
    run(&[
        "augment",
        "-i",
        s(&bip),
        "--scheme",
        "position",
        "-o",
        s(&features),
    ]);
    let args = |o: &Path| {
        vec![
            "forward".to_string(),
            "--graph".into(),
            s(&bip).into(),
            "--features".into(),
            s(&features).into(),
            "--params-seed".into(),
            "9".into(),
            "--depth".into(),
            "2".into(),
            "--hidden-dim".into(),
            "3".into(),
            "--out-dim".into(),
            "1".into(),
            "-o".into(),
            s(o).into(),
        ]
    };
    assert!(bin().args(args(&out1)).status().unwrap().success());
    assert!(bin().args(args(&out2)).status().unwrap().success());
    assert_eq!(std::fs::read(&out1).unwrap(), std::fs::read(&out2).unwrap());
}
