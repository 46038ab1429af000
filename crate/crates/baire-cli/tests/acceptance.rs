//! Acceptance suite: one line per criterion, nonzero exit if any fails.

mod cases;

use std::process::ExitCode;
use std::time::Instant;

use baire::checks::{self, CheckResult};

const SEED: u64 = 0x5eed;
const DEPTH: u64 = 16;

fn cli_determinism() -> CheckResult {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    for case in cases::CASES {
        let a = dir.path().join(format!("{}.a.jsonl", case.name));
        let b = dir.path().join(format!("{}.b.jsonl", case.name));
        for out in [&a, &b] {
            let code = cases::run(case, out);
            if code != case.exit {
                return Err(format!("{}: exit {code}, expected {}", case.name, case.exit));
            }
        }
        let (ta, tb) = (std::fs::read(&a).map_err(|e| e.to_string())?, std::fs::read(&b).map_err(|e| e.to_string())?);
        if ta != tb {
            return Err(format!("{}: two runs differ", case.name));
        }
        let golden = std::fs::read(cases::golden_path(case)).map_err(|e| format!("{}: {e}", case.name))?;
        if ta != golden {
            return Err(format!("{}: trace differs from the golden file", case.name));
        }
    }
    Ok(format!("{} stock invocations byte-identical across runs and with the corpus", cases::CASES.len()))
}

fn main() -> ExitCode {
    let suites: [(&str, Box<dyn Fn() -> CheckResult>); 9] = [
        ("coding laws", Box::new(|| checks::coding_laws(10_000, 1000, SEED))),
        ("phi semantics", Box::new(|| checks::phi_semantics(100, 100, 1000, DEPTH, SEED))),
        ("smn contract", Box::new(|| checks::smn_contract(100, DEPTH, SEED))),
        ("recursion theorems", Box::new(|| checks::recursion_theorems(20, 50, DEPTH, SEED))),
        ("dis discontinuity", Box::new(|| checks::dis_discontinuity(50, DEPTH, SEED))),
        ("witness compilers", Box::new(|| checks::witness_compilers(1000, DEPTH, SEED))),
        ("game theorem", Box::new(|| checks::game_compilers(1000, DEPTH, SEED))),
        ("translations", Box::new(|| checks::translations(1000, 100, SEED))),
        ("cli determinism", Box::new(cli_determinism)),
    ];
    let mut failed = 0;
    for (i, (label, suite)) in suites.iter().enumerate() {
        let t = Instant::now();
        let result = suite();
        let secs = t.elapsed().as_secs_f64();
        let over = secs >= 60.0;
        match result {
            Ok(msg) if !over => println!("criterion {}: PASS {label}: {msg} ({secs:.2}s)", i + 1),
            Ok(msg) => {
                failed += 1;
                println!("criterion {}: FAIL {label}: over the 60s budget: {msg} ({secs:.2}s)", i + 1);
            }
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL {label}: {msg} ({secs:.2}s)", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
