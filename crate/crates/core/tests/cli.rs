use std::path::PathBuf;
use std::process::{Command, Output};

fn qdiff(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdiff"))
        .args(args)
        .env_remove("QCHAR_SEED")
        .output()
        .expect("binary runs")
}

fn golden(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name]
        .iter()
        .collect();
    std::fs::read_to_string(path).expect("golden file")
}

fn sorted_lines(s: &str) -> Vec<String> {
    let mut v: Vec<String> = s.lines().map(str::to_string).collect();
    v.sort();
    v
}

/// Monomial lines of `character` text output: everything after the header.
fn monomials(out: &Output) -> String {
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    text.lines().skip(3).map(|l| format!("{l}\n")).collect()
}

#[test]
fn rank_two_fundamentals_match_golden() {
    for (a, file, count) in [
        ("1", "c2_fundamental_1.txt", 4),
        ("2", "c2_fundamental_2.txt", 5),
    ] {
        let out = qdiff(&["character", "--rank", "2", "--fundamental", a]);
        assert!(out.status.success());
        let got = monomials(&out);
        assert_eq!(sorted_lines(&got), sorted_lines(&golden(file)), "a={a}");
        assert_eq!(got.lines().count(), count);
        let text = String::from_utf8(out.stdout).unwrap();
        assert!(text.contains(&format!("monomials: {count}\nhighest weight: yes")));
    }
}

#[test]
fn trivial_fundamental() {
    let out = qdiff(&["character", "--rank", "2", "--fundamental", "0"]);
    assert!(out.status.success());
    assert_eq!(monomials(&out), "1\n");
}

#[test]
fn rectangle_matches_pinned_json() {
    let out = qdiff(&[
        "character",
        "--rank",
        "3",
        "--rect",
        "2",
        "2",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        golden("c3_rect_2_2.json")
    );
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(qdiff(&["verify", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(qdiff(&["character", "--rank", "2"]).status.code(), Some(2));
    assert_eq!(
        qdiff(&[
            "character",
            "--rank",
            "2",
            "--fundamental",
            "1",
            "--row",
            "2"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        qdiff(&["verify", "forms", "--format", "xml"]).status.code(),
        Some(2)
    );
    assert_eq!(
        qdiff(&["verify", "bijection", "--rank", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(qdiff(&["bd", "--algebra", "C"]).status.code(), Some(2));
    assert_eq!(
        qdiff(&["verify", "forms", "--config", "/nonexistent/qdiff.conf"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn verify_writes_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = qdiff(&[
        "verify",
        "cancellation",
        "--rank",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["suite"], "cancellation");
    assert_eq!(report["passed"], true);
    assert_eq!(report["rank"], 3);
    assert!(report["checks"].as_array().unwrap().len() >= 15);
}

#[test]
fn seeded_reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let out = qdiff(&[
            "verify",
            "hookchi",
            "--rank",
            "2",
            "--seed",
            "3",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        std::fs::read(path).unwrap()
    };
    assert_eq!(run("a.json"), run("b.json"));
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("run.conf");
    std::fs::write(&conf, "# settings\nrank = 3\nseed = 5\nformat = json\n").unwrap();
    let c = conf.to_str().unwrap();

    let out = qdiff(&["verify", "forms", "--config", c]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!((v["rank"].as_u64(), v["seed"].as_u64()), (Some(3), Some(5)));

    let out = qdiff(&[
        "verify", "forms", "--config", c, "--rank", "2", "--seed", "9",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!((v["rank"].as_u64(), v["seed"].as_u64()), (Some(2), Some(9)));

    // the environment seed sits below the config file
    let with_env = |args: &[&str]| {
        let out = Command::new(env!("CARGO_BIN_EXE_qdiff"))
            .args(args)
            .env("QCHAR_SEED", "42")
            .output()
            .unwrap();
        serde_json::from_slice::<serde_json::Value>(&out.stdout).unwrap()["seed"].as_u64()
    };
    assert_eq!(with_env(&["verify", "forms", "--format", "json"]), Some(42));
    assert_eq!(with_env(&["verify", "forms", "--config", c]), Some(5));

    std::fs::write(&conf, "rank: 3\n").unwrap();
    assert_eq!(
        qdiff(&["verify", "forms", "--config", c]).status.code(),
        Some(2)
    );
}

#[test]
fn operator_and_bd_outputs() {
    let out = qdiff(&[
        "operator", "--rank", "2", "--form", "x-rev", "--eps", "minus",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("C2 L\nD^0: -1\n"));
    assert!(text.contains("D^6: 1\n"));

    let out = qdiff(&["bd", "--algebra", "B", "--rank", "2", "--order", "4"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("T^0(u) = 1\n") && text.contains("T_0(u) = 1\n"));

    let out = qdiff(&[
        "bd",
        "--algebra",
        "D",
        "--rank",
        "3",
        "--order",
        "8",
        "--emit",
        "report",
    ]);
    assert_eq!(out.status.code(), Some(0));
}
