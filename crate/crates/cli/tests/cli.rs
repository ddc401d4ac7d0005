use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn hwp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hwp"))
        .args(args)
        .output()
        .expect("run hwp")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

fn repo_file(rel: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..").join(rel);
    p.to_string_lossy().into_owned()
}

#[test]
fn list_shows_nine_solutions() {
    let o = hwp(&["list", "--format", "canonical"]);
    assert!(o.status.success());
    let ids: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(ids.len(), 9);
    assert_eq!(ids[0], "48-5-18");
    assert!(ids.contains(&"24-5-6".to_string()));
}

#[test]
fn every_embedded_solution_verifies() {
    for id in stdout(&hwp(&["list", "--format", "canonical"])).lines() {
        let o = hwp(&["verify", id]);
        assert_eq!(o.status.code(), Some(0), "{id}: {}", stderr(&o));
        assert!(stdout(&o).contains("VERIFIED"));
    }
}

#[test]
fn omega_of_subgroup_quadrangle() {
    let o = hwp(&["omega", "48-5-18", "C4"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "{k}^{±1}");
}

#[test]
fn orbit_of_triangle_under_h() {
    let o = hwp(&["orbit", "24-9-2", "C4", "H"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("Orb_H(C4): 4 cycles"));
    assert_eq!(text.lines().filter(|l| l.starts_with("  (")).count(), 4);
}

#[test]
fn corrupted_file_fails_with_witness() {
    let o = hwp(&["export", "24-9-2"]);
    let text = stdout(&o).replace(r#"C3 = ["1", "a4", "a7b"]"#, r#"C3 = ["1", "a4", "a5b"]"#);
    assert!(text.contains("a5b"));
    let path = scratch("corrupt-24-9-2.toml");
    fs::write(&path, text).unwrap();
    let o = hwp(&["verify", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAILED"));
    assert!(stderr(&o).starts_with("verification failed: "));
}

#[test]
fn parse_errors_exit_2() {
    let path = scratch("broken.toml");
    fs::write(&path, "id = \"x\"\ngroup = \"Q24\"\n[cycles\n").unwrap();
    let o = hwp(&["verify", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("malformed document"));

    let o = hwp(&["verify", "no-such-solution"]);
    assert_eq!(o.status.code(), Some(2));

    let o = hwp(&["omega", "24-9-2", "C99"]);
    assert_eq!(o.status.code(), Some(2));

    let o = hwp(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sl23_solution_carries_its_notes() {
    let o = hwp(&["verify", "24-5-6"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("HWP(24; 3, 4; 5, 6)"));
    assert!(text.contains("HWP(24; 3, 4; 5, 5)"));
    assert!(text.contains("replaced by"));
}

#[test]
fn canonical_output_is_byte_stable() {
    let a = hwp(&["verify", "48-9-14", "--format", "canonical"]);
    let b = hwp(&["verify", "48-9-14", "--format", "canonical"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["verdict"], "verified");
    assert_eq!(v["format"], "hwp-certificate/1");
}

#[test]
fn search_finds_and_reports() {
    let target = repo_file("targets/24-9-2.toml");
    let out = scratch("search-24-9-2.json");
    let o = hwp(&["search", &target, "--format", "canonical", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["verdict"], "found");
    let sol = scratch("found-24-9-2.toml");
    fs::write(&sol, v["solution"].as_str().unwrap()).unwrap();
    assert_eq!(hwp(&["verify", sol.to_str().unwrap()]).status.code(), Some(0));

    let o = hwp(&["search", &target, "--budget-nodes", "10"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("BudgetExceeded"));

    let o = hwp(&["search", &repo_file("targets/24-7-5-infeasible.toml")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("infeasible target"));
}

#[test]
fn export_round_trips_and_draws() {
    let o = hwp(&["export", "48-13-10"]);
    let path = scratch("export-48-13-10.toml");
    fs::write(&path, &o.stdout).unwrap();
    assert_eq!(hwp(&["verify", path.to_str().unwrap()]).status.code(), Some(0));

    let dot = stdout(&hwp(&["export", "24-7-4", "--dot"]));
    // v(v-2)/2 edges of K_24 - I
    assert_eq!(dot.lines().filter(|l| l.contains(" -- ")).count(), 264);
}
