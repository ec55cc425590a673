use kernel_regimes::cli::embedded_config;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_kregimes"))
}

fn example(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/configs").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn kregimes")
}

fn write_config(dir: &tempfile::TempDir, name: &str, body: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn every_subcommand_runs_on_its_example() {
    let cases = [
        ("effdim", "effdim_torus_matern.json"),
        ("effdim", "effdim_gaussian_empirical.json"),
        ("bounds", "bounds_taylor_d100.json"),
        ("sweep", "sweep_small.json"),
        ("online", "online_quintic.json"),
        ("weights", "weights_n1.json"),
        ("weights", "weights_torus.json"),
        ("decomp", "decomp_cubic.json"),
    ];
    for (sub, file) in cases {
        let path = example(file);
        let out = run(&[sub, "--config", path.to_str().unwrap()]);
        assert!(out.status.success(), "{sub} {file}: {}", String::from_utf8_lossy(&out.stderr));
        let text = String::from_utf8(out.stdout).unwrap();
        let mut lines = text.lines();
        assert!(lines.next().unwrap().starts_with("# {"), "{file}");
        assert!(lines.next().is_some_and(|h| h.contains(',')), "{file}: header");
        assert!(lines.next().is_some(), "{file}: no rows");
    }
}

#[test]
fn header_round_trips_and_seed_override_applies() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("sweep.csv");
    let cfg = example("sweep_small.json");
    let out = run(&["sweep", "--config", cfg.to_str().unwrap(), "--seed", "99", "--out", out_path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&out_path).unwrap();
    let resolved = embedded_config(&text).unwrap();
    assert_eq!(resolved.seed(), 99);
    assert_eq!(resolved.experiment.as_ref().unwrap().base_seed, 99);

    // the embedded config reproduces the file byte for byte
    let again = write_config(&dir, "again.json", text.lines().next().unwrap().trim_start_matches("# "));
    let out_path2 = dir.path().join("again.csv");
    let out2 = run(&["sweep", "--config", &again, "--out", out_path2.to_str().unwrap()]);
    assert!(out2.status.success());
    let reproduced = std::fs::read_to_string(&out_path2).unwrap();
    let strip = |s: &str| s.lines().skip(1).collect::<Vec<_>>().join("\n");
    assert_eq!(strip(&reproduced), strip(&text));
}

#[test]
fn profile_subcommand_streams_rows() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        &dir,
        "p.json",
        r#"{"schema":"kregimes/1","base_seed":2,"experiment":{"domain":{"kind":"torus","d":1,"kernel_sum":"periodized"},
        "family":{"type":"gaussian"},"sigmas":[0.05,0.2],"lambdas":[1e-4,1e-2],"ns":[8,32],
        "target":{"kind":"cosine","frequency":[3.0]},"eps":0.2,"runs":10}}"#,
    );
    let out = run(&["profile", "--config", &cfg]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 4);
    assert!(text.lines().nth(1).unwrap().starts_with("n,sigma_best,lambda_best"));
}

#[test]
fn configuration_errors_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write_config(
        &dir,
        "empty.json",
        r#"{"schema":"kregimes/1","experiment":{"domain":{"kind":"torus","d":1},"family":{"type":"gaussian"},
        "sigmas":[0.1],"lambdas":[1e-3],"ns":[],"target":{"kind":"zero"},"eps":0.1}}"#,
    );
    assert_eq!(run(&["sweep", "--config", &empty]).status.code(), Some(1));
    let unknown = write_config(&dir, "unknown.json", r#"{"schema":"kregimes/1","bogus":1}"#);
    assert_eq!(run(&["bounds", "--config", &unknown]).status.code(), Some(1));
    let schema = write_config(&dir, "schema.json", r#"{"schema":"other/9"}"#);
    assert_eq!(run(&["bounds", "--config", &schema]).status.code(), Some(1));
    assert_eq!(run(&["sweep"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn exhausted_budget_exits_with_three_and_keeps_rows() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        &dir,
        "b.json",
        r#"{"schema":"kregimes/1","budget":{"max_cells":2},"experiment":{"domain":{"kind":"cube","d":1,"lower":-1.0,"upper":1.0},
        "family":{"type":"gaussian"},"sigmas":[0.3],"lambdas":[1e-3],"ns":[4,8,16,32],"target":{"kind":"sign_first_coord"},
        "eps":0.5,"runs":5}}"#,
    );
    let out = run(&["sweep", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(3));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 4, "{text}");
}

#[test]
fn numerical_failures_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    // polynomial spectrum tail too heavy for the lattice cap
    let cfg = write_config(
        &dir,
        "t.json",
        r#"{"schema":"kregimes/1","effdim":{"domain":{"kind":"torus","d":2},"family":{"type":"matern","beta":1.5},
        "sigmas":[0.01],"lambdas":[1e-6],"method":{"kind":"spectral"}}}"#,
    );
    let out = run(&["effdim", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stderr).contains("trunc"));
}
