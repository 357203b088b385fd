use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn cymat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cymat")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

struct Scratch(PathBuf);

impl Scratch {
    fn new(tag: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("cymat-{tag}-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        Scratch(dir)
    }

    fn write(&self, name: &str, bytes: &[u8]) -> String {
        let p = self.0.join(name);
        std::fs::write(&p, bytes).unwrap();
        p.display().to_string()
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.join(name)
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

fn gen(dir: &Scratch, name: &str, args: &[&str]) -> String {
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    let o = cymat(&full);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    dir.write(name, &o.stdout)
}

#[test]
fn gen_documents_build_and_round_trip() {
    let dir = Scratch::new("gen");
    let psi = gen(&dir, "psi.json", &["--psi", "12", "4"]);
    let o = cymat(&["rank", &psi]);
    assert_eq!(json(&o)["full_rank"], 6);

    let u = gen(&dir, "u.json", &["--uniform", "2", "5"]);
    let o = cymat(&["circuits", &u]);
    assert_eq!(json(&o)["count"], 10);

    let t = gen(&dir, "t.json", &["--truncate", "1", "--psi", "10", "3"]);
    let o = cymat(&["rank", &t]);
    assert_eq!(json(&o)["full_rank"], 4);

    let again = cymat(&["gen", "--truncate", "1", "--psi", "10", "3"]);
    assert_eq!(std::fs::read(&t).unwrap(), again.stdout);
}

#[test]
fn rank_of_a_set() {
    let dir = Scratch::new("rank");
    let psi = gen(&dir, "psi.json", &["--psi", "8", "3"]);
    assert_eq!(json(&cymat(&["rank", &psi, "--set", "1,2,3"]))["rank"], 2);
    assert_eq!(json(&cymat(&["rank", &psi, "--set", "1,2"]))["rank"], 2);
    assert_eq!(code(&cymat(&["rank", &psi, "--set", "0,9"])), 2);
}

#[test]
fn verify_ordering_exit_codes() {
    let dir = Scratch::new("verify");
    let psi = gen(&dir, "psi.json", &["--psi", "8", "3"]);
    let o = cymat(&["verify-ordering", &psi, "--s", "3", "--t", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["holds"], true);

    let wheel = gen(&dir, "wheel.json", &["--wheel", "4"]);
    let scrambled = dir.write("scrambled.json", b"[1,3,5,7,2,4,6,8]");
    let o = cymat(&["verify-ordering", &wheel, "--order", &scrambled, "--s", "3", "--t", "3", "--mode", "nearly"]);
    assert_eq!(code(&o), 1);

    let repeated = dir.write("repeated.json", b"[1,1,2,3,4,5,6,7]");
    let o = cymat(&["verify-ordering", &wheel, "--order", &repeated, "--s", "3", "--t", "3"]);
    assert_eq!(code(&o), 2);
    assert!(!o.stderr.is_empty());

    assert_eq!(code(&cymat(&["verify-ordering", &psi, "--s", "1", "--t", "3"])), 2);
}

#[test]
fn find_orderings_counts_classes() {
    let dir = Scratch::new("find");
    let u = gen(&dir, "u.json", &["--uniform", "2", "4"]);
    let o = cymat(&["find-orderings", &u, "--s", "3", "--t", "3", "--mode", "nearly"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["count"], 3);
}

#[test]
fn weakmap_and_quotient() {
    let dir = Scratch::new("weakmap");
    let whirl = gen(&dir, "whirl.json", &["--whirl", "4"]);
    let wheel = gen(&dir, "wheel.json", &["--wheel", "4"]);
    assert_eq!(code(&cymat(&["weakmap", &whirl, &wheel])), 0);
    assert_eq!(code(&cymat(&["weakmap", &wheel, &whirl])), 1);

    let swap = dir.write("swap.json", b"[2,1,3,4,5,6,7,8]");
    let o = cymat(&["weakmap", &whirl, &whirl, "--map", &swap]);
    assert!(matches!(code(&o), 0 | 1));

    let psi = gen(&dir, "psi.json", &["--psi", "10", "3"]);
    let t = gen(&dir, "t.json", &["--truncate", "1", "--psi", "10", "3"]);
    assert_eq!(code(&cymat(&["weakmap", &psi, &t, "--quotient"])), 0);
    assert_eq!(code(&cymat(&["weakmap", &t, &psi, "--quotient"])), 1);
    assert_eq!(code(&cymat(&["weakmap", &psi, &wheel])), 2);
}

#[test]
fn counterexample_exit_codes() {
    let o = cymat(&["counterexample", "12", "5"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["rank_bound"]["contradiction"], true);
    assert!(v["rank_bound"]["statement"].as_str().unwrap().contains("6 < 7"));
    assert_eq!(code(&cymat(&["counterexample", "10", "5"])), 2);
}

#[test]
fn suite_reports_the_mutant() {
    let o = cymat(&["suite", "--families", "psi", "--max-n", "8", "--mutant"]);
    assert_eq!(code(&o), 1);
    assert!(!o.stderr.is_empty());
    let v = json(&o);
    assert_eq!(v["passed"], false);

    let o = cymat(&["suite", "--families", "psi", "--max-n", "8"]);
    assert_eq!(code(&o), 0);
    assert_eq!(code(&cymat(&["suite", "--families", "bogus"])), 2);
}

#[test]
fn out_flag_and_stdin() {
    let dir = Scratch::new("out");
    let target = dir.path("psi.json");
    let o = cymat(&["gen", "--psi", "8", "3", "--out", target.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let text = std::fs::read(&target).unwrap();

    let mut child = Command::new(env!("CARGO_BIN_EXE_cymat"))
        .args(["rank", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    std::io::Write::write_all(child.stdin.as_mut().unwrap(), &text).unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(json(&o)["full_rank"], 4);
    assert!(Path::new(&target).exists());
}

#[test]
fn max_n_rejects_large_documents() {
    let dir = Scratch::new("maxn");
    let psi = gen(&dir, "psi.json", &["--psi", "12", "3"]);
    assert_eq!(code(&cymat(&["rank", &psi, "--max-n", "10"])), 2);
}
