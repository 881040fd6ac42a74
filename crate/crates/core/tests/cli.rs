use std::path::PathBuf;
use std::process::Command;

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn corpus_files() -> Vec<PathBuf> {
    let mut files: Vec<_> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "ced"))
        .collect();
    files.sort();
    files
}

fn cedlite(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cedlite"))
        .args(args)
        .env_remove("CEDLITE_FUEL")
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

/// In-process run through the library entry point.
fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = cedlite::cli::run(
        std::iter::once("cedlite").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn checking_the_corpus_files_succeeds() {
    let files = corpus_files();
    assert_eq!(files.len(), 11);
    let mut args = vec!["check".to_string()];
    args.extend(files.iter().map(|f| f.display().to_string()));
    let args: Vec<&str> = args.iter().map(String::as_str).collect();
    let (code, out, _) = cedlite(&args);
    assert_eq!(code, 0, "{out}");
    assert!(out.ends_with("0 failures\n"), "{out}");
}

#[test]
fn bundled_corpus_checks() {
    let (code, out, _) = run(&["corpus"]);
    assert_eq!(code, 0, "{out}");
    let (_, list, _) = run(&["corpus", "--list"]);
    assert_eq!(list.lines().count(), 11);
}

#[test]
fn porcelain_output_is_line_oriented_and_stable() {
    let neg = corpus_dir().join("10-negative.ced");
    let neg = neg.to_str().unwrap();
    let (code, first, _) = cedlite(&["--porcelain", "check", neg]);
    assert_eq!(code, 0);
    let (_, second, _) = cedlite(&["check", neg, "--porcelain"]);
    assert_eq!(first, second);
    for line in first.lines() {
        let tag = line.split(' ').next().unwrap();
        assert!(matches!(tag, "OK" | "ERR" | "ASSERT-FAIL"), "{line}");
    }
    assert_eq!(
        first
            .lines()
            .filter(|l| l.starts_with("OK assert-fail@"))
            .count(),
        4
    );
}

#[test]
fn identity_and_conversion_verdicts() {
    assert_eq!(
        run(&["assert-id", "vec.ced", "elimVec"]),
        (0, "identity: yes\n".into(), String::new())
    );
    assert_eq!(run(&["assert-id", "negative.ced", "v2lC'"]).0, 1);
    let (code, out, _) = run(&["eq", "reuse-vec.ced", "appendL", "appendV-direct"]);
    assert_eq!((code, out.as_str()), (0, "convertible: yes\n"));
    let (code, out, _) = run(&["eq", "reuse-nested.ced", "concatV", "concatL"]);
    assert_eq!((code, out.as_str()), (0, "convertible: yes\n"));
    assert_eq!(run(&["eq", "nat.ced", "zero", "suc zero"]).0, 1);
}

#[test]
fn erase_then_normalize() {
    let (code, out, _) = run(&["erase", "vec.ced", "nilV"]);
    assert_eq!((code, out.as_str()), (0, "nilV\n"));
    let (code, out, _) = run(&["norm", "vec.ced", "nilV"]);
    assert_eq!((code, out.as_str()), (0, "λ cN . λ cC . cN\n"));
    let (_, out, _) = run(&["--ascii", "norm", "list.ced", "consL"]);
    assert_eq!(out, "\\ x . \\ xs . \\ cN . \\ cC . cC x (xs cN cC)\n");
    let (_, out, _) = run(&["norm", "map.ced", "mapL (λ x . x)"]);
    assert_eq!(out, "λ xs . xs\n");
}

#[test]
fn fuel_is_bounded_and_reported() {
    let (code, _, err) = run(&[
        "--fuel",
        "5",
        "norm",
        "nat.ced",
        "mult (suc (suc zero)) (suc (suc zero))",
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("ran out of fuel after 5 steps"), "{err}");
    let out = Command::new(env!("CARGO_BIN_EXE_cedlite"))
        .args(["norm", "nat.ced", "mult (suc zero) (suc zero)"])
        .env("CEDLITE_FUEL", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn input_errors_exit_with_two() {
    let dir = std::env::temp_dir().join(format!("cedlite-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("bad.ced");
    std::fs::write(&file, "x ◂ ★ ➔ ★ =\n  λ A : ★ . undefinedThing .\n").unwrap();
    let (code, _, err) = run(&["check", file.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(
        err.contains("bad.ced:2:13: unbound identifier `undefinedThing`"),
        "{err}"
    );
    assert_eq!(
        run(&["check", dir.join("missing.ced").to_str().unwrap()]).0,
        2
    );
    assert_eq!(run(&["erase", "nat.ced", "nosuch"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn failed_checks_exit_with_one() {
    let dir = std::env::temp_dir().join(format!("cedlite-fail-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("wrong.ced");
    std::fs::write(&file, "id ◂ ∀ X : ★ . X ➔ X = Λ X . λ x . x .\nbad ◂ ★ ➔ ★ = λ X : ★ . id .\n#assert-id id\n#assert-not-id id\n").unwrap();
    let (code, out, _) = run(&["--porcelain", "check", file.to_str().unwrap()]);
    assert_eq!(code, 1);
    let tags: Vec<_> = out.lines().map(|l| l.split(' ').next().unwrap()).collect();
    assert_eq!(tags, ["OK", "ERR", "OK", "ASSERT-FAIL"], "{out}");
    std::fs::remove_dir_all(dir).unwrap();
}
