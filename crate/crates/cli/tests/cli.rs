use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn pilotwave(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pilotwave")).args(args).output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli").join(name);
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn contents(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&p).unwrap()))
        .collect()
}

#[test]
fn estimates_prints_atmospheric_sphere() {
    let o = pilotwave(&["estimates"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    for key in ["lambda_th", "eta"] {
        assert!(text.contains(key), "{text}");
    }
    assert!(text.contains("3.65e22") || text.contains("3.653e22"), "{text}");
}

#[test]
fn nonphysical_estimate_inputs_are_usage_errors() {
    assert_eq!(pilotwave(&["estimates", "--radius", "-1"]).status.code(), Some(2));
    assert_eq!(pilotwave(&["estimates", "--temp", "0"]).status.code(), Some(2));
}

#[test]
fn bad_usage_exits_2() {
    assert_eq!(pilotwave(&[]).status.code(), Some(2));
    assert_eq!(pilotwave(&["run", "--scenario", "nonsense", "--out", "x"]).status.code(), Some(2));
    assert_eq!(pilotwave(&["verify", "--only", "12"]).status.code(), Some(2));
}

#[test]
fn unknown_config_key_names_key_and_line() {
    let dir = scratch("unknown-key");
    let cfg = dir.join("bad.toml");
    fs::write(&cfg, "scenario = \"z-statistics\"\n[grid]\nwidth = 3.0\n").unwrap();
    let o = pilotwave(&["run", "--config", cfg.to_str().unwrap(), "--out", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("width") && err.contains("line 3"), "{err}");
    assert!(!dir.join("z-statistics").exists());
}

#[test]
fn rerun_reproduces_every_file_but_the_manifest() {
    let a = scratch("rerun-a");
    let b = scratch("rerun-b");
    for dir in [&a, &b] {
        let o = pilotwave(&["run", "--scenario", "z-statistics", "--seed", "7", "--out", dir.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), stderr(&o));
    }
    let mut first = contents(&a.join("z-statistics"));
    let mut second = contents(&b.join("z-statistics"));
    let manifest = first.remove("manifest.toml").expect("manifest written");
    second.remove("manifest.toml");
    assert!(first.contains_key("z_samples.csv") && first.contains_key("config.toml") && first.contains_key("plot.gp"));
    assert_eq!(first, second);
    let manifest = String::from_utf8(manifest).unwrap();
    assert!(manifest.contains("seed = 7") && manifest.contains("passed = true"), "{manifest}");
}

#[test]
fn echoed_config_replays_the_run() {
    let a = scratch("replay-a");
    let b = scratch("replay-b");
    let o = pilotwave(&["run", "--scenario", "single-collision", "--seed", "3", "--out", a.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let echoed = a.join("single-collision").join("config.toml");
    let o = pilotwave(&["run", "--config", echoed.to_str().unwrap(), "--out", b.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let mut first = contents(&a.join("single-collision"));
    let mut second = contents(&b.join("single-collision"));
    first.remove("manifest.toml");
    second.remove("manifest.toml");
    assert_eq!(first, second);
}

#[test]
fn bath_turns_the_bounce_into_a_crossing() {
    let dir = scratch("bounce");
    let o = pilotwave(&["run", "--scenario", "interference-bounce", "--out", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("bounces PASS"), "{}", stdout(&o));

    let cfg = dir.join("bathed.toml");
    fs::write(&cfg, "scenario = \"interference-bounce\"\n[bath]\nenabled = true\n").unwrap();
    let bathed = dir.join("bathed");
    let o = pilotwave(&["run", "--config", cfg.to_str().unwrap(), "--out", bathed.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("crosses_midpoint PASS"), "{}", stdout(&o));
    let collisions = fs::read_to_string(bathed.join("interference-bounce").join("collisions.csv")).unwrap();
    assert!(collisions.starts_with("t,k,Y0,Z\n") && collisions.lines().count() > 1);
}

#[test]
fn small_grw_vs_bath_run_writes_both_ensembles() {
    let dir = scratch("grw-vs-bath");
    let cfg = dir.join("small.toml");
    fs::write(&cfg, "scenario = \"grw-vs-bath\"\n[grid]\npoints = 128\nduration = 0.5\n[statistics]\nsamples = 200\n").unwrap();
    let o = pilotwave(&["run", "--config", cfg.to_str().unwrap(), "--out", dir.to_str().unwrap()]);
    assert!(matches!(o.status.code(), Some(0 | 1)), "{}", stderr(&o));
    let files = contents(&dir.join("grw-vs-bath"));
    for name in ["final_positions.csv", "grw_events.csv", "manifest.toml"] {
        assert!(files.contains_key(name), "missing {name}: {:?}", files.keys().collect::<Vec<_>>());
    }
}

#[test]
fn verify_subset_passes() {
    let o = pilotwave(&["verify", "--only", "1,2,5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.contains("PASS")).count(), 3, "{text}");
}

#[test]
fn injected_norm_drift_fails_only_its_check() {
    let o = pilotwave(&["verify", "--only", "1,11", "--inject-norm-drift", "1e-6"]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    let text = stdout(&o);
    let line = |id: &str| text.lines().find(|l| l.contains(id)).unwrap_or_default().to_string();
    assert!(line("estimates").contains("PASS"), "{text}");
    let props = line("property-suites");
    assert!(props.contains("FAIL") && props.contains("norm=fail"), "{text}");
}

#[test]
fn verify_matrix_is_byte_identical_across_runs() {
    let dir = scratch("verify");
    let a = dir.join("a.txt");
    let b = dir.join("b.txt");
    for p in [&a, &b] {
        let o = pilotwave(&["verify", "--only", "1,2,5", "--seed", "11", "--out", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(fs::read(a).unwrap(), fs::read(b).unwrap());
}

#[test]
fn domain_error_exits_1() {
    let dir = scratch("domain");
    let cfg = dir.join("coarse.toml");
    fs::write(&cfg, "scenario = \"grw-vs-bath\"\n[grid]\ndt = 1e-3\n").unwrap();
    let o = pilotwave(&["run", "--config", cfg.to_str().unwrap(), "--out", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("dt"), "{}", stderr(&o));
}
