use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn pic2ha(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pic2ha"))
        .env_remove("PIC2HA_CACHE")
        .arg("--cache")
        .arg(cache)
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

fn only_entry(dir: &Path) -> PathBuf {
    let entries: Vec<PathBuf> = fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(entries.len(), 1, "{entries:?}");
    entries[0].clone()
}

#[test]
fn pi_of_cyclic() {
    let tmp = tempfile::tempdir().unwrap();
    let o = pic2ha(tmp.path(), &["pi", data("z6.pic").to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "pi0 = Z/6\npi1 = 0\n");
    let o = pic2ha(tmp.path(), &["--format", "records", "pi", data("nondiscrete.pic").to_str().unwrap()]);
    assert_eq!(stdout(&o), "pi0=Z/8\npi1=0\n");
}

#[test]
fn derived_tor_of_cyclics() {
    let tmp = tempfile::tempdir().unwrap();
    let f = data("z6.pic");
    let o = pic2ha(tmp.path(), &["derived", f.to_str().unwrap(), "--functor", "tensor:Z/4", "--degree", "1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("pi0 = Z/2, pi1 = 0\n"), "{}", stdout(&o));
    let o = pic2ha(tmp.path(), &["derived", f.to_str().unwrap(), "--functor", "tensor:Z/4", "--degree", "0"]);
    assert!(stdout(&o).contains("pi0 = Z/2, pi1 = Z/2\n"), "{}", stdout(&o));
}

#[test]
fn check_names_the_incoherent_index() {
    let tmp = tempfile::tempdir().unwrap();
    let o = pic2ha(tmp.path(), &["check", data("incoherent.cx").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("FAIL complex index 3: coherence"), "{}", stdout(&o));
    assert!(stderr(&o).contains("at index 3"), "{}", stderr(&o));
    let o = pic2ha(tmp.path(), &["homology", data("incoherent.cx").to_str().unwrap(), "--degree", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn check_accepts_valid_files() {
    let tmp = tempfile::tempdir().unwrap();
    for f in ["z6.pic", "nondiscrete.pic", "m.mat", "mult4.ext", "discrete.cx"] {
        let o = pic2ha(tmp.path(), &["check", data(f).to_str().unwrap()]);
        assert!(o.status.success(), "{f}: {}", stdout(&o));
        assert!(!stdout(&o).contains("FAIL"));
    }
}

#[test]
fn parse_errors_exit_one() {
    let tmp = tempfile::tempdir().unwrap();
    let bad = tmp.path().join("bad.pic");
    fs::write(&bad, "pic2\ngroup1 gens=1 rels=1\n2\ngroup0 gens=1 rels=0\ndiff\n1\n").unwrap();
    let o = pic2ha(tmp.path(), &["pi", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line"), "{}", stderr(&o));
    let o = pic2ha(tmp.path(), &["pi", tmp.path().join("missing.pic").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let o = pic2ha(tmp.path(), &["derived", bad.to_str().unwrap(), "--functor", "tensor:Q", "--degree", "1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn longseq_reports_every_point() {
    let tmp = tempfile::tempdir().unwrap();
    let f = data("mult4.ext");
    let o = pic2ha(tmp.path(), &["longseq", f.to_str().unwrap(), "--functor", "tensor:Z/2", "--length", "1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert_eq!(out.matches("PASS 2-exact at").count(), 5, "{out}");
    assert!(out.contains("L1T(C): pi0 = Z/2, pi1 = 0\n"));
    let o = pic2ha(tmp.path(), &["longseq", f.to_str().unwrap(), "--functor", "hom:Z/2", "--length", "1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn cache_miss_then_hit_is_identical() {
    let tmp = tempfile::tempdir().unwrap();
    let cache = tmp.path().join("cache");
    let f = data("nondiscrete.pic");
    let args = ["resolve", f.to_str().unwrap(), "--length", "3"];
    let first = pic2ha(&cache, &args);
    assert!(first.status.success(), "{}", stderr(&first));
    assert!(stderr(&first).contains("cache miss"));
    let entry = only_entry(&cache);
    let stored = fs::read(&entry).unwrap();
    let second = pic2ha(&cache, &args);
    assert!(stderr(&second).contains("cache hit"));
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(fs::read(&entry).unwrap(), stored);
    assert!(stdout(&first).contains(&String::from_utf8(stored).unwrap()));
}

#[test]
fn corrupt_entry_is_recomputed() {
    let tmp = tempfile::tempdir().unwrap();
    let f = data("z6.pic");
    let args = ["derived", f.to_str().unwrap(), "--functor", "tensor:Z/4", "--degree", "1"];
    let fresh = pic2ha(tmp.path(), &args);
    let entry = only_entry(tmp.path());
    let stored = fs::read(&entry).unwrap();
    for garbage in ["not a resolution\n", "", &String::from_utf8(stored.clone()).unwrap().replace("6", "7")] {
        fs::write(&entry, garbage).unwrap();
        let again = pic2ha(tmp.path(), &args);
        assert!(again.status.success());
        assert!(stderr(&again).contains("corrupt entry replaced"), "{}", stderr(&again));
        assert_eq!(again.stdout, fresh.stdout);
        assert_eq!(fs::read(&entry).unwrap(), stored);
    }
}

#[test]
fn seed_changes_the_key() {
    let tmp = tempfile::tempdir().unwrap();
    let f = data("z6.pic");
    let key = |seed: Option<&str>| {
        let mut args = vec!["--format", "records", "resolve", f.to_str().unwrap(), "--length", "2"];
        if let Some(s) = seed {
            args.extend(["--seed", s]);
        }
        let o = pic2ha(tmp.path(), &args);
        assert!(o.status.success(), "{}", stderr(&o));
        stdout(&o).lines().find_map(|l| l.strip_prefix("key=").map(str::to_string)).unwrap()
    };
    let (none, one, two) = (key(None), key(Some("1")), key(Some("2")));
    assert_ne!(none, one);
    assert_ne!(one, two);
    assert_eq!(one, key(Some("1")));
    assert_eq!(fs::read_dir(tmp.path()).unwrap().count(), 3);
}

#[test]
fn environment_selects_the_cache() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().join("from-env");
    let o = Command::new(env!("CARGO_BIN_EXE_pic2ha"))
        .env("PIC2HA_CACHE", &dir)
        .current_dir(tmp.path())
        .args(["resolve", data("z6.pic").to_str().unwrap(), "--length", "1"])
        .output()
        .unwrap();
    assert!(o.status.success());
    only_entry(&dir);
    assert!(!tmp.path().join(".pic2ha-cache").exists());
}

#[test]
fn every_command_is_deterministic() {
    let tmp = tempfile::tempdir().unwrap();
    let p = |n: &str| data(n).to_str().unwrap().to_string();
    let commands: Vec<Vec<String>> = vec![
        vec!["snf".into(), p("m.mat")],
        vec!["pi".into(), p("nondiscrete.pic")],
        vec!["homology".into(), p("discrete.cx"), "--degree".into(), "1".into()],
        vec!["resolve".into(), p("nondiscrete.pic"), "--length".into(), "3".into(), "--seed".into(), "5".into()],
        vec![
            "derived".into(),
            p("nondiscrete.pic"),
            "--functor".into(),
            "tensor:Z/2".into(),
            "--degree".into(),
            "1".into(),
        ],
        vec!["longseq".into(), p("mult4.ext"), "--functor".into(), "tensor:Z/2".into(), "--length".into(), "1".into()],
        vec!["check".into(), p("incoherent.cx")],
        vec!["table".into(), "--functor".into(), "tensor".into(), "--range".into(), "2..5".into()],
    ];
    for format in ["text", "records"] {
        for c in &commands {
            let mut args: Vec<&str> = vec!["--format", format];
            args.extend(c.iter().map(String::as_str));
            let runs: Vec<Output> = (0..3).map(|_| pic2ha(tmp.path(), &args)).collect();
            for o in &runs[1..] {
                assert_eq!(o.stdout, runs[0].stdout, "{args:?}");
                assert_eq!(o.status.code(), runs[0].status.code());
            }
        }
    }
}

#[test]
fn table_matches_the_classical_values() {
    let tmp = tempfile::tempdir().unwrap();
    let o = pic2ha(tmp.path(), &["table", "--functor", "tensor", "--range", "2..6"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 25);
    assert!(out.lines().all(|l| l.starts_with("PASS")));
    assert!(out.contains("PASS a = 4 b = 6 L0: pi0 = Z/2, pi1 = Z/2; L1: pi0 = Z/2, pi1 = 0\n"));
}
