//! `baire`: evaluate names, build fixed points, play games, check and
//! compile reductions, translate strategies. Every run writes a JSONL trace.
//!
//! Exit codes: 0 ok, 1 runtime failure, 2 unparseable operand, 3 refuted
//! (a witness, a fixed point or a translation failed its check), 10/11/12
//! game won by I / won by II / undecided at the adjudication depth.

mod parse;
mod trace;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use baire::expr::MachineExpr;
use baire::games::{self, adjudicate_run, GameVerdict, Side};
use baire::problems;
use baire::reductions::{self, WitnessExpr};
use baire::sample::Sampler;
use baire::term::Term;
use baire::word::{word_code, Word};
use baire::{eval, eval_name, param_fixpoint, universal, DigitMap, Fuel, Nat, Status};

use parse::ParseError;
use trace::Trace;

const EXIT_RUNTIME: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_REFUTED: u8 = 3;
const EXIT_WON_BY_I: u8 = 10;
const EXIT_WON_BY_II: u8 = 11;
const EXIT_UNDECIDED: u8 = 12;

#[derive(Parser)]
#[command(name = "baire", version, about = "Computability on Baire space at desk scale")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate Φ_q(x) at a doubling fuel schedule.
    Eval(EvalArgs),
    /// Compare U R(q) with F⟨q, R(q)⟩ for the parameterised fixed point R of F.
    Fixpoint(FixpointArgs),
    /// Play a Wadge game of a problem and adjudicate the run.
    Game(GameArgs),
    /// Verify or compile reduction witnesses.
    Reduce {
        #[command(subcommand)]
        action: ReduceAction,
    },
    /// Translate strategies between Wadge, Lipschitz and Gale-Stewart games.
    Translate(TranslateArgs),
}

#[derive(Args, Serialize, Clone)]
struct Common {
    /// Evaluation fuel; defaults to 64·depth.
    #[arg(long)]
    fuel: Option<u64>,
    #[arg(long, default_value_t = 16)]
    depth: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Trace destination; stdout when absent.
    #[arg(long)]
    #[serde(skip)]
    out: Option<PathBuf>,
}

impl Common {
    fn fuel(&self) -> u64 {
        self.fuel.unwrap_or(64 * self.depth)
    }

    fn check(&self) -> Result<(), ParseError> {
        if self.depth == 0 || self.fuel == Some(0) {
            return Err(ParseError("fuel and depth must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Args, Serialize)]
struct EvalArgs {
    /// The name q.
    #[arg(long)]
    name: String,
    /// The input x; `word:a,b,…` for a finite word.
    #[arg(long)]
    input: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Serialize)]
struct FixpointArgs {
    /// The machine F.
    #[arg(long = "f")]
    f: String,
    /// The parameter q.
    #[arg(long)]
    q: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Serialize)]
struct GameArgs {
    #[arg(long)]
    problem: String,
    /// Player I's strategy.
    #[arg(long = "i")]
    i: String,
    /// Player II's strategy.
    #[arg(long = "ii")]
    ii: String,
    /// Rounds to play; defaults to the depth.
    #[arg(long)]
    rounds: Option<u64>,
    #[command(flatten)]
    common: Common,
}

#[derive(Subcommand)]
enum ReduceAction {
    /// Sample inputs and adjudicate the witness's candidate realizer.
    Verify(VerifyArgs),
    /// Build a witness or a discontinuity function.
    Compile(CompileArgs),
}

#[derive(Args, Serialize)]
struct VerifyArgs {
    #[arg(long)]
    from: String,
    #[arg(long)]
    to: String,
    #[arg(long)]
    witness: String,
    /// Realizer of the target problem, when it carries none of its own.
    #[arg(long)]
    realizer: Option<String>,
    #[arg(long, default_value_t = 1000)]
    samples: u64,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Compiler {
    DisToLpo,
    DiscToDis,
    ReductionToDisc,
    ManyOne,
}

#[derive(Args, Serialize)]
struct CompileArgs {
    #[arg(value_enum)]
    compiler: Compiler,
    /// Input witness for `reduction-to-disc`.
    #[arg(long)]
    witness: Option<String>,
    /// Digit map for `many-one`, as JSON.
    #[arg(long)]
    map: Option<String>,
    #[arg(long)]
    a: Option<String>,
    #[arg(long)]
    b: Option<String>,
    /// Names to probe a compiled discontinuity function on.
    #[arg(long, default_value_t = 3)]
    samples: u64,
    /// Where to write the compiled witness as JSON.
    #[arg(long)]
    #[serde(skip)]
    witness_out: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Mode {
    /// Wadge game of f against the Lipschitz game of its word lift.
    Wadge,
    /// Lipschitz game of f against the Gale-Stewart game of its payoff.
    GaleStewart,
}

#[derive(Args, Serialize)]
struct TranslateArgs {
    #[arg(long)]
    problem: String,
    #[arg(long = "i")]
    i: String,
    #[arg(long = "ii")]
    ii: String,
    #[arg(long, value_enum, default_value_t = Mode::Wadge)]
    mode: Mode,
    #[arg(long)]
    rounds: Option<u64>,
    #[command(flatten)]
    common: Common,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("baire: {e:#}");
            if e.downcast_ref::<ParseError>().is_some() {
                ExitCode::from(EXIT_PARSE)
            } else {
                ExitCode::from(EXIT_RUNTIME)
            }
        }
    }
}

fn run(cmd: Command) -> anyhow::Result<u8> {
    match cmd {
        Command::Eval(a) => cmd_eval(a),
        Command::Fixpoint(a) => cmd_fixpoint(a),
        Command::Game(a) => cmd_game(a),
        Command::Reduce { action: ReduceAction::Verify(a) } => cmd_verify(a),
        Command::Reduce { action: ReduceAction::Compile(a) } => cmd_compile(a),
        Command::Translate(a) => cmd_translate(a),
    }
}

fn open(command: &str, common: &Common, args: &impl Serialize) -> anyhow::Result<Trace> {
    common.check()?;
    let mut t = Trace::open(common.out.as_deref()).context("opening the trace")?;
    t.schema(command, args)?;
    Ok(t)
}

/// `1, 2, 4, …` up to and including `fuel`.
fn schedule(start: u64, fuel: u64) -> Vec<u64> {
    let mut steps = Vec::new();
    let mut f = start.clamp(1, fuel);
    loop {
        steps.push(f);
        if f == fuel {
            return steps;
        }
        f = (f * 2).min(fuel);
    }
}

#[derive(Serialize)]
struct EvalStep {
    fuel: u64,
    output: Word,
    #[serde(flatten)]
    status: Status,
}

fn cmd_eval(a: EvalArgs) -> anyhow::Result<u8> {
    let q = parse::stream(&a.name)?;
    let x = parse::input(&a.input)?;
    let mut t = open("eval", &a.common, &a)?;
    let mut last = None;
    for f in schedule(1, a.common.fuel()) {
        let out = eval_name(&q, x.clone(), Fuel(f));
        let changed = last.as_ref() != Some(&out);
        if changed || f == a.common.fuel() {
            t.emit(
                "step",
                &EvalStep {
                    fuel: f,
                    output: out.output.clone(),
                    status: out.status.clone(),
                },
            )?;
        }
        last = Some(out);
    }
    t.finish()?;
    Ok(0)
}

#[derive(Serialize)]
struct FixpointStep {
    fuel: u64,
    r_q: Word,
    u_r_q: Word,
    f_q_r_q: Word,
    reached: u64,
}

#[derive(Serialize)]
struct FixpointResult {
    depth: u64,
    reached: u64,
    agree: bool,
}

fn cmd_fixpoint(a: FixpointArgs) -> anyhow::Result<u8> {
    let f = parse::machine(&a.f)?;
    let q = parse::stream(&a.q)?;
    let mut t = open("fixpoint", &a.common, &a)?;
    let depth = a.common.depth;
    let d = depth as usize;
    let rq = param_fixpoint(&f).apply(&q);
    let arg = Term::interleave(Term::stream(q.clone()), Term::stream(rq.clone()));
    let (mut reached, mut agree) = (0, true);
    for fuel in schedule(depth, a.common.fuel()) {
        let lhs = universal(&rq, Fuel(fuel)).output.take(d);
        let rhs = eval::eval(&Term::apply(f.clone(), arg.clone()), fuel).take(d);
        let n = lhs.len().min(rhs.len());
        agree = lhs.take(n) == rhs.take(n);
        reached = if agree { n as u64 } else { 0 };
        t.emit(
            "step",
            &FixpointStep {
                fuel,
                r_q: rq.prefix(d),
                u_r_q: lhs,
                f_q_r_q: rhs,
                reached,
            },
        )?;
        if !agree || reached >= depth {
            break;
        }
    }
    t.emit("result", &FixpointResult { depth, reached, agree })?;
    t.finish()?;
    Ok(if !agree {
        EXIT_REFUTED
    } else if reached < depth {
        EXIT_UNDECIDED
    } else {
        0
    })
}

#[derive(Serialize)]
struct Round<T> {
    round: u64,
    x: T,
    y: T,
}

#[derive(Serialize)]
struct GameResult {
    verdict: GameVerdict,
    depth: u64,
    x: Word,
    y: Word,
}

fn verdict_code(v: GameVerdict) -> u8 {
    match v {
        GameVerdict::I => EXIT_WON_BY_I,
        GameVerdict::II => EXIT_WON_BY_II,
        GameVerdict::UnknownAtDepth => EXIT_UNDECIDED,
    }
}

fn cmd_game(a: GameArgs) -> anyhow::Result<u8> {
    let bundle = parse::problem(&a.problem)?;
    let seed = a.common.seed;
    let s1 = parse::strategy(&a.i, Side::I, &bundle, seed)?;
    let s2 = parse::strategy(&a.ii, Side::II, &bundle, seed.wrapping_add(1))?;
    let rounds = a.rounds.unwrap_or(a.common.depth);
    if rounds == 0 {
        return Err(ParseError("rounds must be positive".into()).into());
    }
    let mut t = open("game", &a.common, &a)?;
    let run = games::run_wadge(&s1, &s2, rounds as usize);
    for (i, (x, y)) in run.x_moves.iter().zip(&run.y_moves).enumerate() {
        t.emit("round", &Round { round: i as u64, x, y })?;
    }
    let depth = a.common.depth as usize;
    let verdict = adjudicate_run(&run, &*bundle.oracle, depth);
    t.emit(
        "verdict",
        &GameResult {
            verdict,
            depth: a.common.depth,
            x: run.x().take(depth),
            y: run.y().take(depth),
        },
    )?;
    t.finish()?;
    Ok(verdict_code(verdict))
}

fn cmd_verify(a: VerifyArgs) -> anyhow::Result<u8> {
    let f = parse::problem(&a.from)?;
    let mut g = parse::problem(&a.to)?;
    if let Some(r) = &a.realizer {
        g = g.with_realizer(parse::machine(r)?);
    }
    let wit = parse::witness(&a.witness)?;
    let mut t = open("reduce-verify", &a.common, &a)?;
    let c = &a.common;
    let report = reductions::verify_reduction(&*f.oracle, &g, &wit, a.samples, c.depth, Fuel(c.fuel()), c.seed)?;
    t.emit("report", &report)?;
    t.finish()?;
    Ok(if report.refuted() { EXIT_REFUTED } else { 0 })
}

#[derive(Serialize)]
struct Compiled {
    compiler: Compiler,
    label: String,
    witness: Option<WitnessExpr>,
    machine: Option<MachineExpr>,
}

#[derive(Serialize)]
struct Probe {
    sample: u64,
    q: Word,
    d_q: Word,
    u_d_q: Word,
    phi_q_d_q: Word,
    agree: bool,
}

fn cmd_compile(a: CompileArgs) -> anyhow::Result<u8> {
    let need = |o: &Option<String>, what: &str| o.clone().ok_or_else(|| ParseError(format!("--{what} is required")));
    let witness = match a.compiler {
        Compiler::DisToLpo => Some(reductions::dis_to_lpo()),
        Compiler::DiscToDis => Some(reductions::disc_to_dis_reduction(&problems::dis_discontinuity())),
        Compiler::ManyOne => {
            let map: DigitMap = serde_json::from_str(&need(&a.map, "map")?).map_err(|e| ParseError(format!("digit map: {e}")))?;
            let (sa, sb) = (parse::set(&need(&a.a, "a")?)?, parse::set(&need(&a.b, "b")?)?);
            Some(reductions::many_one_to_sw(&map, &sa, &sb).map_err(|e| ParseError(e.to_string()))?)
        }
        Compiler::ReductionToDisc => None,
    };
    let input = match a.compiler {
        Compiler::ReductionToDisc => Some(parse::witness(&need(&a.witness, "witness")?)?),
        _ => None,
    };
    let mut t = open("reduce-compile", &a.common, &a)?;
    let mut code = 0;
    match (witness, input) {
        (Some(w), _) => {
            let expr = WitnessExpr::try_from(&w).ok();
            t.emit(
                "compiled",
                &Compiled {
                    compiler: a.compiler,
                    label: format!("h={:?} k={:?}", w.h, w.k),
                    witness: expr.clone(),
                    machine: None,
                },
            )?;
            if let Some(path) = &a.witness_out {
                let e = expr.context("the compiled witness has no expression form")?;
                std::fs::write(path, serde_json::to_string_pretty(&e)? + "\n").context("writing the witness")?;
            }
        }
        (None, Some(w)) => {
            let d = reductions::reduction_to_disc(&w);
            t.emit(
                "compiled",
                &Compiled {
                    compiler: a.compiler,
                    label: d.label().to_string(),
                    witness: None,
                    machine: MachineExpr::try_from(d.machine()).ok(),
                },
            )?;
            code = probe_discontinuity(&mut t, &d, &a)?;
        }
        (None, None) => unreachable!("every compiler has an input"),
    }
    t.finish()?;
    Ok(code)
}

fn probe_discontinuity(t: &mut Trace, d: &baire::NameTransformer, a: &CompileArgs) -> anyhow::Result<u8> {
    let depth = a.common.depth;
    let n = depth as usize;
    let mut s = Sampler::new(a.common.seed);
    let mut code = 0;
    for i in 0..a.samples {
        let q = s.name();
        let dq = d.apply(&q);
        let lhs = universal(&dq, Fuel(depth)).output;
        let rhs = eval_name(&q, dq.clone(), Fuel(depth)).output;
        let agree = lhs.comparable(&rhs);
        if !agree {
            code = EXIT_REFUTED;
        }
        t.emit(
            "probe",
            &Probe {
                sample: i,
                q: q.prefix(n.min(4)),
                d_q: dq.prefix(n),
                u_d_q: lhs.take(n),
                phi_q_d_q: rhs.take(n),
                agree,
            },
        )?;
    }
    Ok(code)
}

#[derive(Serialize)]
struct TranslateRound {
    round: u64,
    x: Word,
    y: Word,
    x_code: Nat,
    y_code: Nat,
    round_trip: bool,
}

#[derive(Serialize)]
struct Correspondence {
    mode: Mode,
    left: GameVerdict,
    right: GameVerdict,
    agree: bool,
}

fn cmd_translate(a: TranslateArgs) -> anyhow::Result<u8> {
    let bundle = parse::problem(&a.problem)?;
    let rounds = a.rounds.unwrap_or(a.common.depth) as usize;
    if rounds == 0 {
        return Err(ParseError("rounds must be positive".into()).into());
    }
    let seed = a.common.seed;
    let f = bundle.oracle.clone();
    let (mut t, left, right, mut ok) = match a.mode {
        Mode::Wadge => {
            let s1 = parse::strategy(&a.i, Side::I, &bundle, seed)?;
            let s2 = parse::strategy(&a.ii, Side::II, &bundle, seed.wrapping_add(1))?;
            let mut t = open("translate", &a.common, &a)?;
            let (l1, l2) = (games::wadge_to_lipschitz(&s1), games::wadge_to_lipschitz(&s2));
            let (b1, b2) = (games::lipschitz_to_wadge(&l1), games::lipschitz_to_wadge(&l2));
            let wrun = games::run_wadge(&s1, &s2, rounds);
            let lrun = games::run_lipschitz(&l1, &l2, rounds);
            let mut ok = true;
            for i in 0..rounds {
                let same = b1.play(&wrun.y_moves[..i]) == wrun.x_moves[i] && b2.play(&wrun.x_moves[..=i]) == wrun.y_moves[i];
                ok &= same;
                t.emit(
                    "round",
                    &TranslateRound {
                        round: i as u64,
                        x: wrun.x_moves[i].clone(),
                        y: wrun.y_moves[i].clone(),
                        x_code: word_code(&wrun.x_moves[i]),
                        y_code: word_code(&wrun.y_moves[i]),
                        round_trip: same,
                    },
                )?;
            }
            let wv = adjudicate_run(&wrun, &*f, usize::MAX);
            let lv = adjudicate_run(&lrun, &*problems::word_lift(f.clone()), rounds);
            (t, wv, lv, ok)
        }
        Mode::GaleStewart => {
            let l1 = parse::digit_strategy(&a.i, Side::I, seed)?;
            let l2 = parse::digit_strategy(&a.ii, Side::II, seed.wrapping_add(1))?;
            let mut t = open("translate", &a.common, &a)?;
            let lrun = games::run_lipschitz(&l1, &l2, rounds);
            for (i, (x, y)) in lrun.x_moves.iter().zip(&lrun.y_moves).enumerate() {
                t.emit("round", &Round { round: i as u64, x, y })?;
            }
            let lv = adjudicate_run(&lrun, &*f, rounds);
            let (_, gv) = games::run_gale_stewart(&l1, &l2, &*games::gs_payoff_from_problem(f.clone()), rounds);
            (t, lv, gv, true)
        }
    };
    let agree = left == right;
    ok &= agree;
    t.emit(
        "correspondence",
        &Correspondence {
            mode: a.mode,
            left,
            right,
            agree,
        },
    )?;
    t.finish()?;
    Ok(if ok { 0 } else { EXIT_REFUTED })
}
