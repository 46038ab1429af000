//! Stock invocations of every subcommand, shared by the golden test and the
//! acceptance target. Paths are relative to the crate root.

use std::path::{Path, PathBuf};
use std::process::Command;

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub exit: i32,
}

pub const CASES: &[Case] = &[
    Case { name: "eval_identity", args: &["eval", "--name", "graph:identity", "--input", "count:1", "--fuel", "8"], exit: 0 },
    Case { name: "eval_empty_graph", args: &["eval", "--name", "const:0", "--input", "count:1", "--fuel", "8"], exit: 0 },
    Case {
        name: "eval_inconsistent",
        args: &["eval", "--name", "tests/golden/inputs/inconsistent_name.json", "--input", "count:0", "--fuel", "8"],
        exit: 0,
    },
    Case { name: "fixpoint_even", args: &["fixpoint", "--f", "even", "--q", "count:1"], exit: 0 },
    Case { name: "fixpoint_quine", args: &["fixpoint", "--f", "universal", "--q", "graph:identity"], exit: 0 },
    Case { name: "game_dis_disc_vs_echo", args: &["game", "--problem", "dis", "--i", "disc", "--ii", "echo", "--rounds", "6"], exit: 12 },
    Case {
        name: "game_id_realizer_vs_random",
        args: &["game", "--problem", "id", "--i", "random", "--ii", "realizer", "--seed", "7"],
        exit: 12,
    },
    Case {
        name: "game_lpo_naive",
        args: &["game", "--problem", "lpo", "--i", "const:1", "--ii", "const:1", "--rounds", "1", "--depth", "1"],
        exit: 10,
    },
    Case { name: "reduce_verify_id", args: &["reduce", "verify", "--from", "id", "--to", "id", "--witness", "identity"], exit: 0 },
    Case {
        name: "reduce_verify_dis_lpo",
        args: &["reduce", "verify", "--from", "dis", "--to", "lpo", "--witness", "tests/golden/inputs/dis_to_lpo.json", "--seed", "3"],
        exit: 0,
    },
    Case {
        name: "reduce_verify_corrupt",
        args: &["reduce", "verify", "--from", "id", "--to", "id", "--witness", "tests/golden/inputs/corrupt_witness.json"],
        exit: 3,
    },
    Case { name: "reduce_compile_dis_lpo", args: &["reduce", "compile", "dis-to-lpo"], exit: 0 },
    Case {
        name: "reduce_compile_reduction_to_disc",
        args: &["reduce", "compile", "reduction-to-disc", "--witness", "identity", "--depth", "8", "--seed", "2"],
        exit: 0,
    },
    Case {
        name: "translate_wadge",
        args: &["translate", "--problem", "chi:first%2=0", "--i", "random", "--ii", "echo", "--rounds", "5", "--seed", "5"],
        exit: 0,
    },
    Case {
        name: "translate_gale_stewart",
        args: &["translate", "--problem", "lpo", "--mode", "gale-stewart", "--i", "random", "--ii", "echo", "--rounds", "6", "--seed", "5"],
        exit: 0,
    },
];

pub fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn golden_path(case: &Case) -> PathBuf {
    crate_dir().join("tests/golden").join(format!("{}.jsonl", case.name))
}

/// Runs the binary with the trace sent to `out`; returns the exit code.
pub fn run(case: &Case, out: &Path) -> i32 {
    let status = Command::new(env!("CARGO_BIN_EXE_baire"))
        .current_dir(crate_dir())
        .args(case.args)
        .arg("--out")
        .arg(out)
        .status()
        .expect("spawning baire");
    status.code().unwrap_or(-1)
}
