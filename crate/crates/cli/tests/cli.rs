use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_quasifold"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("quasifold-cli-{}-{name}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn path_str(p: &PathBuf) -> &str {
    p.to_str().unwrap()
}

#[test]
fn report_all_passes_with_embedded_manifest() {
    let o = run(&["report-all"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(!text.contains("FAIL"), "{text}");
    assert!(text.contains("checks passed"));
}

#[test]
fn report_all_json_has_one_record_per_criterion() {
    let o = run(&["report-all", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pass"], true);
    let criteria: Vec<u64> =
        v["criteria"].as_array().unwrap().iter().map(|c| c["criterion"].as_u64().unwrap()).collect();
    assert_eq!(criteria, (1..=9).collect::<Vec<_>>());
    for c in v["criteria"].as_array().unwrap() {
        for check in c["checks"].as_array().unwrap() {
            assert!(!check["citation"].as_str().unwrap().is_empty());
        }
    }
}

#[test]
fn corrupted_golden_names_the_failing_check() {
    let dir = scratch("golden");
    let manifest = fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/golden.toml")).unwrap();
    let corrupted = manifest.replacen("value = 292", "value = 293", 1);
    assert_ne!(manifest, corrupted);
    let path = dir.join("golden.toml");
    fs::write(&path, corrupted).unwrap();
    let o = run(&["report-all", "--golden", path_str(&path)]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("FAIL double.E8"), "{text}");
    assert!(text.contains("expected 293"));
    assert!(text.contains("actual   292"));
    assert_eq!(text.matches("  FAIL ").count(), 1);
}

#[test]
fn unknown_extension_is_a_usage_error_listing_the_catalogue() {
    let o = run(&["classify", "--ext", "H5="]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("H3<") && err.contains("Hbar4="), "{err}");
}

#[test]
fn unparsable_vector_is_a_usage_error() {
    let o = run(&["project", "--source", "E8", "--vector", "1,phi"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn projection_of_the_e8_affine_root() {
    let o = run(&["project", "--source", "E8", "--vector", "2,3,4,5,6,4,2,3", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["image"]["group"], "H4");
}

#[test]
fn h2_tau_fragment_renders_fifty_points() {
    let dir = scratch("render");
    let json = dir.join("points.json");
    let svg = dir.join("points.svg");
    let o = run(&[
        "fragment",
        "--group",
        "H2",
        "--axis",
        "twofold",
        "--length",
        "tau",
        "--n",
        "1",
        "--out",
        path_str(&json),
    ]);
    assert!(o.status.success());
    let o = run(&["render", "--input", path_str(&json), "--out", path_str(&svg), "--no-timestamp"]);
    assert!(o.status.success());
    let text = fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("class=\"point\"").count(), 50);
    assert!(text.contains("P(0): 10 points"));
    assert!(text.contains("P(1): 40 points"));
    assert!(text.contains("version=\"1.1\""));
    assert!(!text.contains("unix time"));
}

#[test]
fn h3_render_uses_the_chosen_plane_and_keeps_the_count() {
    let dir = scratch("h3");
    let json = dir.join("h3.json");
    assert!(run(&["fragment", "--group", "H3", "--length", "tau", "--out", path_str(&json)]).status.success());
    let mut svgs = Vec::new();
    for plane in ["0,1", "1,2"] {
        let svg = dir.join(format!("h3-{plane}.svg"));
        let o =
            run(&["render", "--input", path_str(&json), "--out", path_str(&svg), "--plane", plane, "--no-timestamp"]);
        assert!(o.status.success());
        let text = fs::read_to_string(&svg).unwrap();
        assert_eq!(text.matches("class=\"point\"").count(), 30 + 552);
        svgs.push(text);
    }
    assert_ne!(svgs[0], svgs[1]);
}

#[test]
fn root_system_only_fragment() {
    let dir = scratch("empty");
    let json = dir.join("roots.json");
    let svg = dir.join("roots.svg");
    assert!(run(&["fragment", "--group", "H2", "--n", "0", "--out", path_str(&json)]).status.success());
    assert!(run(&["render", "--input", path_str(&json), "--out", path_str(&svg)]).status.success());
    let text = fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("class=\"point\"").count(), 10);
    assert!(text.contains("unix time"));
}

#[test]
fn malformed_fragment_file_is_rejected() {
    let dir = scratch("bad");
    let json = dir.join("bad.json");
    fs::write(&json, "{\"not\": \"a fragment\"}").unwrap();
    let o = run(&["render", "--input", path_str(&json), "--out", path_str(&dir.join("bad.svg"))]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn outputs_are_reproducible_across_thread_counts() {
    let dir = scratch("repro");
    let mut outputs = Vec::new();
    for threads in ["1", "4"] {
        let json = dir.join(format!("f{threads}.json"));
        let csv = dir.join(format!("f{threads}.csv"));
        let o = run(&[
            "--threads",
            threads,
            "fragment",
            "--group",
            "H3",
            "--axis",
            "fivefold",
            "--length",
            "1/2",
            "--n",
            "1",
            "--out",
            path_str(&json),
            "--csv",
            path_str(&csv),
        ]);
        assert!(o.status.success());
        outputs.push((fs::read(&json).unwrap(), fs::read(&csv).unwrap(), o.stdout));
    }
    assert_eq!(outputs[0], outputs[1]);
    let csv = String::from_utf8(outputs[0].1.clone()).unwrap();
    // header plus 30 roots plus 212 points
    assert_eq!(csv.lines().count(), 1 + 30 + 212);
}

#[test]
fn double_extension_diagrams() {
    let o = run(&["double", "--base", "A4", "--diagrams", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["count"], 6);
    assert_eq!(v["trivial_kernel"], 0);
    assert_eq!(v["diagrams"].as_array().unwrap().len(), 3);
}

#[test]
fn classify_and_induce_agree() {
    let o = run(&["induce", "--ext", "D6>", "--json"]);
    assert!(o.status.success());
    let induced: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let o = run(&["classify", "--ext", "H3>", "--json"]);
    let classified: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(induced["record"], classified);
    assert_eq!(classified["k"], -1);
}
