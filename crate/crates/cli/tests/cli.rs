//! End-to-end runs of the binary: exit codes, report shapes, witnesses.

use std::path::PathBuf;
use std::process::{Command, Output};

fn manifest(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("manifests").join(name)
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(args: &[&str], manifest_path: &PathBuf) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eala"))
        .args(args)
        .arg("--manifest")
        .arg(manifest_path)
        .output()
        .expect("binary runs")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn build_reports_the_affine_summary() {
    let out = run(&["build"], &manifest("affine_sl2.json"));
    assert_eq!(exit_code(&out), 0);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["nullity"], 1);
    assert_eq!(report["delta"]["series"], "A");
    assert_eq!(report["cartan_dim"], 3);
    assert_eq!(report["gamma_order"], 1);
}

#[test]
fn build_reports_the_twisted_summary() {
    let out = run(&["build"], &manifest("a2_twisted.json"));
    assert_eq!(exit_code(&out), 0);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["gamma_order"], 2);
    assert_eq!(report["delta"]["series"], "BC");
    assert_eq!(report["delta"]["rank"], 1);
}

#[test]
fn checkers_pass_on_bundled_manifests() {
    for name in ["affine_sl2.json", "a2_twisted.json", "toroidal_sl2_n2.json"] {
        for which in ["lietorus", "eala", "descent"] {
            let out = run(&["check", which], &manifest(name));
            assert_eq!(exit_code(&out), 0, "{} {}: {:?}", name, which, out);
        }
    }
}

#[test]
fn roots_emits_series_rank_roots_constants() {
    let out = run(&["roots"], &manifest("a2_twisted.json"));
    assert_eq!(exit_code(&out), 0);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["series"], "A");
    assert_eq!(report["rank"], 2);
    assert_eq!(report["roots"].as_array().unwrap().len(), 7);
    let constants = report["constants"].as_object().unwrap();
    // The height-lex order makes (x(0,1), x(1,0)) the extraspecial pair.
    assert_eq!(constants["[x(0,1),x(1,0)]"], "(1)*x(1,1)");
    assert_eq!(constants["[x(1,0),x(0,1)]"], "(-1)*x(1,1)");
}

#[test]
fn validation_failures_exit_two() {
    for name in ["noncommuting.json", "bc_base.json", "badjson.json"] {
        let out = run(&["build"], &fixture(name));
        assert_eq!(exit_code(&out), 2, "{}", name);
        assert!(!out.stderr.is_empty());
    }
    let missing = PathBuf::from("does-not-exist.json");
    let out = run(&["build"], &missing);
    assert_eq!(exit_code(&out), 2);
    let out = run(&["check", "nonsense"], &manifest("affine_sl2.json"));
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn noncommuting_witness_names_the_pair() {
    let out = run(&["build"], &fixture("noncommuting.json"));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("0") && stderr.contains("1"), "{}", stderr);
    assert!(stderr.contains("commute"), "{}", stderr);
}

#[test]
fn failed_axiom_exits_one_and_names_it() {
    let out = run(&["check", "lietorus"], &fixture("inner_twist.json"));
    assert_eq!(exit_code(&out), 1);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["axioms"]["LT2"]["pass"], false);
    assert_eq!(report["axioms"]["LT1"]["pass"], true);
}

#[test]
fn elementary_lift_command_verifies_the_contract() {
    let out = run(&["lift"], &fixture("lift_elementary_affine.json"));
    assert_eq!(exit_code(&out), 0, "{:?}", out);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["contract"]["pass"], true);
    assert_eq!(report["verdict"]["pass"], true);
}

#[test]
fn planted_non_derivation_is_rejected_with_witness() {
    let out = run(&["lift"], &fixture("lift_kernel_bad.json"));
    assert_eq!(exit_code(&out), 1);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let msg = report["error"].as_str().unwrap();
    assert!(msg.contains("derivation"), "{}", msg);
}

#[test]
fn conjugate_roundtrip_manifest_verifies() {
    let out = run(&["conjugate"], &manifest("conjugacy_roundtrip_n2.json"));
    assert_eq!(exit_code(&out), 0, "{:?}", out);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["status"], "ok");
    assert_eq!(report["verified"], true);
    // The recovered table matches the planted derivation on D^0.
    let psi = report["psi"].as_array().unwrap();
    assert!(psi.iter().any(|row| row["d"] == 0 && row["value"]["2"] == "1"));
}

#[test]
fn conjugate_rejects_mismatched_core_part() {
    let out = run(&["conjugate"], &fixture("conjugate_mismatch.json"));
    assert_eq!(exit_code(&out), 1);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["status"], "CoreCartanMismatch");
}

#[test]
fn gamma_equivariance_lift_passes() {
    let out = run(&["lift", "--samples", "3"], &fixture("gamma_equivariance_a2.json"));
    assert_eq!(exit_code(&out), 0, "{:?}", out);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for (args, name) in [
        (vec!["build"], "affine_sl2.json"),
        (vec!["check", "eala"], "a2_twisted.json"),
        (vec!["conjugate"], "conjugacy_roundtrip_n2.json"),
    ] {
        let a = run(&args, &manifest(name));
        let b = run(&args, &manifest(name));
        assert_eq!(a.stdout, b.stdout, "{:?} {}", args, name);
        assert_eq!(exit_code(&a), exit_code(&b));
    }
}

#[test]
fn seed_flag_changes_sampling_but_not_validity() {
    let out1 = run(&["check", "eala", "--seed", "1"], &manifest("affine_sl2.json"));
    let out2 = run(&["check", "eala", "--seed", "2"], &manifest("affine_sl2.json"));
    assert_eq!(exit_code(&out1), 0);
    assert_eq!(exit_code(&out2), 0);
}

#[test]
fn conjugate_with_reduction_map_succeeds() {
    let out = run(&["conjugate"], &fixture("conjugate_with_g.json"));
    assert_eq!(exit_code(&out), 0, "{:?}", out);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["g_applied"], true);
    assert_eq!(report["verified"], true);
    // Without the reduction map the same candidate has a different core
    // Cartan and must be rejected.
    let manifest_text =
        std::fs::read_to_string(fixture("conjugate_with_g.json")).unwrap();
    let mut value: serde_json::Value = serde_json::from_str(&manifest_text).unwrap();
    value["conjugacy"].as_object_mut().unwrap().remove("g");
    let stripped = std::env::temp_dir().join(format!("eala-no-g-{}.json", std::process::id()));
    std::fs::write(&stripped, serde_json::to_string(&value).unwrap()).unwrap();
    let out = run(&["conjugate"], &stripped);
    let _ = std::fs::remove_file(&stripped);
    assert_eq!(exit_code(&out), 1);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["status"], "CoreCartanMismatch");
}
