//! Golden traces. Set `BAIRE_BLESS=1` to rewrite them.

mod cases;

use cases::{golden_path, run, CASES};

#[test]
fn traces_match_the_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let bless = std::env::var_os("BAIRE_BLESS").is_some();
    for case in CASES {
        let out = dir.path().join(format!("{}.jsonl", case.name));
        let code = run(case, &out);
        assert_eq!(code, case.exit, "{}: exit code", case.name);
        let got = std::fs::read(&out).unwrap();
        let path = golden_path(case);
        if bless {
            std::fs::write(&path, &got).unwrap();
            continue;
        }
        let want = std::fs::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert!(got == want, "{}: trace differs from {}", case.name, path.display());
    }
}

#[test]
fn parse_errors_have_their_own_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.jsonl");
    for args in [
        &["game", "--problem", "bogus", "--i", "stall", "--ii", "stall"][..],
        &["eval", "--name", "{\"literal\":", "--input", "count:1"],
        &["eval", "--name", "graph:identity", "--input", "count:1", "--depth", "0"],
        &["game", "--problem", "dis", "--i", "echo", "--ii", "stall"],
    ] {
        let c = cases::Case { name: "adhoc", args, exit: 2 };
        assert_eq!(run(&c, &out), 2, "{args:?}");
    }
}
