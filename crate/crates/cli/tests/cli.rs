use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use cover_forge::catalog::Certificate;
use cover_forge::cover::RelationsJson;
use cover_forge::groebner::{ideal_equal, Ideal};
use cover_forge::Ring;
use serde_json::Value;

fn problems() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../problems")
}

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cover-forge"))
        .args(args)
        .env_remove("COVER_FORGE_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn file(name: &str) -> String {
    problems().join(name).to_string_lossy().into_owned()
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn triple_cover_relations_in_display_names() {
    let o = cli(&["relations", &file("triple.cover"), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let ring = Ring::degrevlex(&["c0", "c1", "c2", "c3"]);
    let want = ["2*(c0*c2 - c1^2)", "-(c0*c3 - c1*c2)", "2*(c1*c3 - c2^2)"];
    let got = v["display"]["D"].as_array().unwrap();
    assert_eq!(got.len(), 3);
    for (g, w) in got.iter().zip(want) {
        assert_eq!(
            ring.parse(g.as_str().unwrap()).unwrap(),
            ring.parse(w).unwrap()
        );
    }
    // the engine-side fields read back as a parameter-relations object
    let back = RelationsJson::from_json(&stdout(&o)).unwrap();
    assert!(back.cubics_ok);
    assert_eq!(back.d_polynomials().unwrap().len(), 3);
}

#[test]
fn degree_six_fiber_on_the_linear_section() {
    let o = cli(&[
        "fiber",
        &file("deg6.cover"),
        "--e",
        "1,0,0,1",
        "--c",
        "2,0,0,3",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("points: 6, betti: 1,9,16,9,1"));
    assert!(text.contains("delta_tc(c) = 36"));
    assert!(text.contains("flat: true"));
}

#[test]
fn section_flags_need_the_degree_six_problem() {
    let o = cli(&[
        "fiber",
        &file("triple.cover"),
        "--e",
        "1,0,0,1",
        "--c",
        "2,0,0,3",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn fiber_at_free_parameters() {
    let o = cli(&[
        "fiber",
        &file("triple.cover"),
        "--point",
        "c01=1,c11=0,c20=0,c21=1",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["points"], 3);
    assert_eq!(v["betti"], serde_json::json!([1, 3, 2]));
    assert_eq!(v["flat"], true);
}

#[test]
fn verify_exit_code_follows_the_certificate() {
    for name in ["triple-cover", "deg6-ogr"] {
        let o = cli(&["verify", name, "--json"]);
        let cert = Certificate::from_json(&stdout(&o)).unwrap();
        assert_eq!(
            o.status.code(),
            Some(if cert.passed() { 0 } else { 3 }),
            "{name}"
        );
        if name == "deg6-ogr" {
            assert!(cert.checks.iter().any(|c| c.id == "ideal_equal"));
        }
    }
}

#[test]
fn verify_against_a_saved_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let o = cli(&["verify", "triple-cover", "--json"]);
    let saved = write_temp(&dir, "ok.json", &stdout(&o));
    let again = cli(&["verify", "triple-cover", "--against", &saved]);
    assert_eq!(again.status.code(), Some(0));

    let mut cert = Certificate::from_json(&stdout(&o)).unwrap();
    cert.checks[0].witness.push_str(" (edited)");
    let tampered = write_temp(&dir, "bad.json", &cert.to_json());
    let o = cli(&["verify", "triple-cover", "--against", &tampered]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("witness changed"));
}

#[test]
fn exit_codes_by_error_class() {
    let dir = tempfile::tempdir().unwrap();
    let caret = write_temp(&dir, "caret.cover", "ring z1 z2 : degrevlex\nq0 = z1^\n");
    let o = cli(&["gb", &caret]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2, column 8"));

    let unknown = write_temp(&dir, "unknown.cover", "ring x y\nq0 = x*t\n");
    assert_eq!(cli(&["gb", &unknown]).status.code(), Some(1));

    let cubic = write_temp(&dir, "cubic.cover", "ring x y\nq0 = x^3\nq1 = y^2\n");
    assert_eq!(cli(&["relations", &cubic]).status.code(), Some(1));

    let affine = write_temp(&dir, "affine.ideal", "ring x y\nq0 = x^2 - y\n");
    assert_eq!(cli(&["resolve", &affine]).status.code(), Some(2));
    assert_eq!(cli(&["catalog", "no-such-entry"]).status.code(), Some(2));
    assert_eq!(cli(&["gb", "/nonexistent/file"]).status.code(), Some(2));

    // bad verb: rejected by the argument parser before any file is read
    assert_eq!(cli(&["frobnicate", &caret]).status.code(), Some(1));

    let threads = Command::new(env!("CARGO_BIN_EXE_cover-forge"))
        .args(["catalog", "triple-cover"])
        .env("COVER_FORGE_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(threads.status.code(), Some(2));
}

#[test]
fn groebner_output_round_trips() {
    let path = file("twisted-cubic.ideal");
    for order in ["degrevlex", "lex", "block:1"] {
        let o = cli(&["gb", &path, "--order", order, "--json"]);
        assert_eq!(o.status.code(), Some(0));
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        let ring = Ring::degrevlex(&["x", "y", "z", "w"]);
        let basis: Vec<_> = v["basis"]
            .as_array()
            .unwrap()
            .iter()
            .map(|g| ring.parse(g.as_str().unwrap()).unwrap())
            .collect();
        let original = Ideal::parse(&ring, &["x*z - y^2", "x*w - y*z", "y*w - z^2"]).unwrap();
        assert!(ideal_equal(&Ideal::new(&ring, basis).unwrap(), &original).unwrap());
        assert_eq!(v["order"], order);
    }
}

#[test]
fn other_verbs_on_the_twisted_cubic() {
    let path = file("twisted-cubic.ideal");
    let o = cli(&["resolve", &path, "--json"]);
    let table: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let ranks: Vec<u64> = table
        .as_array()
        .unwrap()
        .iter()
        .map(|b| b["rank"].as_u64().unwrap())
        .collect();
    assert_eq!(ranks, [1, 3, 2]);

    let o = cli(&["syz", &path, "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["syzygies"].as_array().unwrap().len(), 2);

    let o = cli(&["nf", &path, "--poly", "y^2", "--poly", "x*z", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["normal_forms"][0], v["normal_forms"][1]);

    let o = cli(&["eliminate", &path, "--vars", "y"]);
    assert_eq!(stdout(&o).trim(), "z^3 - x*w^2");
}

#[test]
fn outputs_are_deterministic() {
    let cases: [&[&str]; 3] = [
        &["relations", &file("deg6.cover"), "--json"],
        &["catalog", "three-points", "--json"],
        &["syz", &file("deg6.cover")],
    ];
    for args in cases {
        let a = cli(args);
        let b = cli(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn catalog_all_reports_in_name_order() {
    let o = Command::new(env!("CARGO_BIN_EXE_cover-forge"))
        .args(["catalog", "--all"])
        .env("COVER_FORGE_THREADS", "2")
        .output()
        .unwrap();
    let text = stdout(&o);
    let names: Vec<&str> = text.lines().map(|l| l.split(':').next().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    assert_eq!(names.len(), cover_forge::catalog::ENTRIES.len());
    let any_fail = text.lines().any(|l| l.contains(": FAIL"));
    assert_eq!(o.status.code(), Some(if any_fail { 3 } else { 0 }));
}
