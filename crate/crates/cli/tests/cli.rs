use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn piped(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_piped"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn verify_solution_and_non_solution() {
    let ok = piped(&["verify", "--s", "1/2,16/7,16/5,16/35"]);
    assert_eq!(ok.status.code(), Some(0));
    let text = stdout(&ok);
    assert!(text.contains("residual: 0\n"), "{text}");
    assert!(text.contains("canonical: [7/16, 1/2, 5/16, 16/35]"), "{text}");

    let bad = piped(&["verify", "--s", "1/2,1/2,1/2,1/2"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("residual: -9/512"));
}

#[test]
fn malformed_input_names_the_parameter() {
    let o = piped(&["verify", "--s", "1/2,1/0,1,2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--s"), "{}", stderr(&o));

    let o = piped(&["verify", "--s", "1/2,1/3"]);
    assert_eq!(o.status.code(), Some(2));

    let o = piped(&["family", "--name", "acute", "--params", "1/2,3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("acute parameter 1"), "{}", stderr(&o));

    let o = piped(&["no-such-command"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reconstruct_integer_piped() {
    let o = piped(&["reconstruct", "--s", "1/2,7/16,5/16,16/35", "--integer"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(
        text.lines().next(),
        Some("1120 840 1035 1400 1525 1617 969 1967 1481")
    );
    assert!(text.contains("cos_theta: -3879/8050"));
    assert!(text.contains("area_rational: false"));

    let rational = piped(&["reconstruct", "--s", "1/2,7/16,5/16,16/35"]);
    assert_eq!(
        stdout(&rational).lines().next(),
        Some("1 3/4 207/224 5/4 305/224 231/160 969/1120 281/160 1481/1120")
    );

    let not_solution = piped(&["reconstruct", "--s", "1/2,1/2,1/2,1/2"]);
    assert_eq!(not_solution.status.code(), Some(2));
}

#[test]
fn family_lines() {
    let o = piped(&["family", "--name", "pattern2-rat", "--params", "1/3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "{\"family\":\"P2_RAT\",\"params\":[\"1/3\"],\"s\":[\"1/2\",\"7/16\",\"5/16\",\"35/16\"],\"canonical\":[\"7/16\",\"1/2\",\"5/16\",\"16/35\"],\"feasible\":true}\n"
    );
    let four = piped(&["family", "--name", "pattern1", "--params", "2,1"]);
    assert_eq!(stdout(&four).lines().count(), 4);
    let general = piped(&["family", "--name", "general", "--params", "1,2,2,1"]);
    assert!(stdout(&general).starts_with("{\"family\":\"GEN_INT\""));
}

#[test]
fn family_range_flags_degenerate_points() {
    let o = piped(&["family", "--name", "acute", "--range", "4..5,2..3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 3);
    let err = stderr(&o);
    assert!(err.contains("degenerate at (5, 2)"), "{err}");

    let f = piped(&["family", "--name", "pattern1-rat", "--range", "farey:3"]);
    assert_eq!(f.status.code(), Some(0));
    // 1/3 1/2 2/3 1 3/2 2 3, with q = 1 flagged
    assert_eq!(stdout(&f).lines().count(), 6);
}

#[test]
fn fixtures_cover_and_plot() {
    let dir = tempfile::tempdir().unwrap();
    let t1 = piped(&["fixtures", "--emit", "table1"]);
    let t2 = piped(&["fixtures", "--emit", "table2"]);
    assert_eq!(stdout(&t1).lines().count(), 20);
    assert_eq!(stdout(&t2).lines().count(), 16);
    let both = dir.path().join("both.jsonl");
    fs::write(&both, stdout(&t1) + &stdout(&t2)).unwrap();

    let report = dir.path().join("report.json");
    let o = piped(&["cover", "--in", path(&both), "--out", path(&report)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "total 36 covered 20 anomalous 16");
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json["covered"], 20);
    assert_eq!(json["records"][0]["general"]["r"], "1/3");

    let o = piped(&["cover", "--in", path(&both), "--out", path(&report), "--unbounded"]);
    assert_eq!(stdout(&o).trim(), "total 36 covered 32 anomalous 4");

    let csv = dir.path().join("points.csv");
    let o = piped(&["plot-data", "--in", path(&both), "--out", path(&csv)]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x_exact,x_abs,y,family"));
    assert_eq!(lines.next(), Some("96/35,2.74285714286e0,16,TABLE1"));
    assert_eq!(text.lines().count(), 37);

    let acute = piped(&["fixtures", "--emit", "acute18"]);
    assert_eq!(
        stdout(&acute).lines().next(),
        Some("{\"d\":2,\"s_coefficient\":\"8/3\",\"t_coefficient\":\"32/3\"}")
    );
}

#[test]
fn plot_data_from_family_output() {
    let dir = tempfile::tempdir().unwrap();
    let fam = dir.path().join("ob.jsonl");
    let o = piped(&["family", "--name", "obtuse", "--params", "2", "--out", path(&fam)]);
    assert_eq!(o.status.code(), Some(0));
    let csv = dir.path().join("ob.csv");
    piped(&["plot-data", "--in", path(&fam), "--out", path(&csv)]);
    let text = fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().nth(1), Some("-81/560,1.44642857143e-1,7,OBTUSE"));
}

#[test]
fn search_output_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.jsonl");
    let b = dir.path().join("b.jsonl");
    let ckpt = dir.path().join("s.ckpt");
    let o = piped(&["search", "--height", "20", "--fix-s1", "1/2", "--out", path(&a)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = piped(&[
        "search", "--height", "20", "--fix-s1", "1/2", "--workers", "2", "--checkpoint",
        path(&ckpt), "--out", path(&b),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let first = fs::read(&a).unwrap();
    assert!(!first.is_empty());
    assert_eq!(first, fs::read(&b).unwrap());
    assert!(String::from_utf8(first)
        .unwrap()
        .contains("\"s\":[\"1/7\",\"1/2\",\"1/10\",\"7/10\"]"));
    assert!(fs::read_to_string(&ckpt).unwrap().starts_with("s1=1/2 s2="));

    let oracle = dir.path().join("o.jsonl");
    piped(&["search", "--height", "12", "--oracle", "--out", path(&oracle)]);
    let reduced = dir.path().join("r.jsonl");
    piped(&["search", "--height", "12", "--out", path(&reduced)]);
    assert_eq!(fs::read(&oracle).unwrap(), fs::read(&reduced).unwrap());

    let bad = piped(&["search", "--height", "1", "--out", path(&a)]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn cover_reports_rejected_lines() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.jsonl");
    fs::write(
        &input,
        "{\"s\":[\"1/2\",\"16/7\",\"16/5\",\"16/35\"]}\n{\"s\":[\"1/2\",\"1/2\",\"1/2\",\"1/2\"]}\n",
    )
    .unwrap();
    let out = dir.path().join("r.json");
    let o = piped(&["cover", "--in", path(&input), "--out", path(&out)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains(":2: rejected"), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "total 1 covered 1 anomalous 0");

    fs::write(&input, "{\"s\": 3}\n").unwrap();
    let o = piped(&["cover", "--in", path(&input), "--out", path(&out)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 1"), "{}", stderr(&o));
}
