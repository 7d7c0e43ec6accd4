//! End-to-end runs of the `swapchsh` binary.

use std::process::{Command, Output};

fn swapchsh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_swapchsh"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn violation_subcommand() {
    let o = swapchsh(&["violation", "--p", "0.2", "--alpha", "0.5", "--which", "final"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("r (analytic) = 1.067644"));
    assert!(stdout(&o).contains("verdict: violation"));

    let o = swapchsh(&["violation", "--p", "0.2", "--alpha", "0.5"]);
    assert!(stdout(&o).contains("r (numeric)  = 0.952016"));
    assert!(stdout(&o).contains("verdict: no violation"));
}

#[test]
fn degrees_flag_converts_alpha() {
    let o = swapchsh(&["violation", "--p", "0", "--alpha", "45", "--degrees"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("r (analytic) = 1.414214"));
}

#[test]
fn undefined_final_state_exits_with_domain_error() {
    let o = swapchsh(&["violation", "--p", "1", "--alpha", "0.3", "--which", "final"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("undefined"));
    let o = swapchsh(&["violation", "--p", "0.2", "--alpha", "2.0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn thresholds_and_swap_subcommands() {
    let o = swapchsh(&["thresholds", "--p", "0.2"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("alpha'       = 0.542051"));
    assert!(s.contains("p*           = 0.292893"));

    let o = swapchsh(&["swap", "--p", "1", "--alpha", "0.3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("state undefined").count(), 2);
}

#[test]
fn sweep_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let paths = [dir.path().join("a.csv"), dir.path().join("b.csv")];
    for path in &paths {
        let o = swapchsh(&[
            "sweep", "--p-min", "0", "--p-max", "0.5", "--p-steps", "2", "--alpha-steps", "2",
            "--out", path.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let a = std::fs::read(&paths[0]).unwrap();
    let b = std::fs::read(&paths[1]).unwrap();
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    assert_eq!(text.lines().count(), 5);
    assert!(!text.contains('\r'));
    assert!(text.starts_with("p,alpha,r_initial,r_final,initial_violates,final_violates\n"));
}

#[test]
fn sweep_to_unwritable_path_exits_with_io_error() {
    let o = swapchsh(&["sweep", "--p-steps", "2", "--alpha-steps", "2", "--out", "/nonexistent-dir/x.csv"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn invalid_sweep_spec_is_domain_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.csv");
    let o = swapchsh(&["sweep", "--p-min", "0.6", "--p-max", "0.4", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}
