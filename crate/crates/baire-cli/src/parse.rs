//! Resolution of command-line operands: names, inputs, machines, problems,
//! sets, strategies and witnesses.

use std::fmt;
use std::path::Path;

use baire::expr::{MachineExpr, StreamExpr};
use baire::games::{self, Side, WadgeStrategy};
use baire::problems::{self, ProblemBundle};
use baire::reductions::{self, WitnessExpr};
use baire::stream::Tail;
use baire::term::Term;
use baire::word::Word;
use baire::{encode_machine, LipschitzStrategy, Machine, Nat, SetExpr, SetRef, Stream, Witness};

/// A malformed operand. Reported with exit code 2.
#[derive(Debug)]
pub struct ParseError(pub String);

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ParseError {}

type Parsed<T> = Result<T, ParseError>;

fn bad(msg: impl Into<String>) -> ParseError {
    ParseError(msg.into())
}

fn digits(s: &str) -> Parsed<Word> {
    if s.is_empty() {
        return Ok(Word::empty());
    }
    s.split(',')
        .map(|d| d.trim().parse::<u64>().map(Nat::small).map_err(|_| bad(format!("bad digit `{d}`"))))
        .collect()
}

fn digit(s: &str) -> Parsed<u64> {
    s.trim().parse().map_err(|_| bad(format!("bad number `{s}`")))
}

/// Inline JSON, or the contents of a file.
fn json_source(s: &str) -> Parsed<Option<String>> {
    let t = s.trim_start();
    if t.starts_with('{') || t.starts_with('"') || t.starts_with('[') {
        return Ok(Some(s.to_string()));
    }
    let path = s.strip_prefix('@').unwrap_or(s);
    if s.starts_with('@') || path.ends_with(".json") || Path::new(path).is_file() {
        return std::fs::read_to_string(path)
            .map(Some)
            .map_err(|e| bad(format!("cannot read `{path}`: {e}")));
    }
    Ok(None)
}

pub fn stock_machine(s: &str) -> Option<Machine> {
    Some(match s {
        "identity" | "id" => Machine::identity(),
        "even" => Machine::even(),
        "odd" => Machine::odd(),
        "swap" => Machine::swap(),
        "hold_first" => Machine::hold_first(),
        "universal" => Machine::universal(),
        "lpo" => problems::lpo_oracle_machine(),
        _ => return None,
    })
}

/// A machine: a stock name or a machine expression (inline or file).
pub fn machine(s: &str) -> Parsed<Machine> {
    if let Some(m) = stock_machine(s) {
        return Ok(m);
    }
    let src = json_source(s)?.ok_or_else(|| bad(format!("unknown machine `{s}`")))?;
    let e: MachineExpr = serde_json::from_str(&src).map_err(|e| bad(format!("machine expression: {e}")))?;
    Machine::try_from(&e).map_err(|e| bad(e.to_string()))
}

/// A stream. Shorthands: `count:N` (N, N+1, …), `const:N`, `cycle:a,b,…`,
/// `lit:a,b,…/T` with `T` one of the other shorthands, and `graph:M` for
/// the listing of machine `M`. Otherwise a stream expression, or a machine
/// expression which is read as its listing.
pub fn stream(s: &str) -> Parsed<Stream> {
    if let Some(rest) = s.strip_prefix("graph:") {
        return Ok(encode_machine(&machine(rest)?));
    }
    if let Some(rest) = s.strip_prefix("lit:") {
        let (pre, tail) = rest.split_once('/').unwrap_or((rest, "const:0"));
        return Ok(Stream::literal(digits(pre)?, tail_of(tail)?));
    }
    if s.starts_with("count:") || s.starts_with("const:") || s.starts_with("cycle:") {
        return Ok(Stream::literal(Word::empty(), tail_of(s)?));
    }
    let src = json_source(s)?.ok_or_else(|| bad(format!("unknown stream `{s}`")))?;
    match serde_json::from_str::<StreamExpr>(&src) {
        Ok(e) => Stream::try_from(&e).map_err(|e| bad(e.to_string())),
        Err(stream_err) => match serde_json::from_str::<MachineExpr>(&src) {
            Ok(e) => Ok(encode_machine(&Machine::try_from(&e).map_err(|e| bad(e.to_string()))?)),
            Err(_) => Err(bad(format!("stream expression: {stream_err}"))),
        },
    }
}

fn tail_of(s: &str) -> Parsed<Tail> {
    let (kind, arg) = s.split_once(':').ok_or_else(|| bad(format!("bad tail `{s}`")))?;
    match kind {
        "count" => Ok(Tail::Count(Nat::small(digit(arg)?))),
        "const" => Ok(Tail::Const(Nat::small(digit(arg)?))),
        "cycle" => {
            let c = digits(arg)?;
            if c.is_empty() {
                return Err(bad("cycle must be nonempty"));
            }
            Ok(Tail::Cycle(c))
        }
        _ => Err(bad(format!("bad tail `{s}`"))),
    }
}

/// An evaluation input: `word:a,b,…` is a finite word, anything else a
/// stream.
pub fn input(s: &str) -> Parsed<Term> {
    match s.strip_prefix("word:") {
        Some(rest) => Ok(Term::word(digits(rest)?)),
        None => Ok(Term::stream(stream(s)?)),
    }
}

/// `all`, `none`, `first=7|8`, `first%2=0`, `!S` or `@file.json`.
pub fn set(s: &str) -> Parsed<SetRef> {
    if let Some(rest) = s.strip_prefix('!') {
        if rest.starts_with('@') {
            return Ok(SetExpr::Not(Box::new(set_expr_file(rest)?)).oracle());
        }
    }
    if s.starts_with('@') {
        return Ok(set_expr_file(s)?.oracle());
    }
    SetExpr::parse(s).map(|e| e.oracle()).map_err(bad)
}

fn set_expr_file(s: &str) -> Parsed<SetExpr> {
    let src = json_source(s)?.ok_or_else(|| bad(format!("unknown set `{s}`")))?;
    serde_json::from_str(&src).map_err(|e| bad(format!("set expression: {e}")))
}

/// `dis`, `lpo`, `id`, `nrng`, `chi:<set>` or `quot:<set>:<set>`.
pub fn problem(s: &str) -> Parsed<ProblemBundle> {
    match s {
        "dis" => return Ok(problems::dis_problem()),
        "lpo" => return Ok(problems::lpo_problem()),
        "id" => return Ok(problems::id_problem()),
        "nrng" => return Ok(problems::nrng_problem()),
        _ => {}
    }
    if let Some(rest) = s.strip_prefix("chi:") {
        return Ok(problems::chi_problem(set(rest)?));
    }
    if let Some(rest) = s.strip_prefix("quot:") {
        let (a, b) = split_sets(rest)?;
        return Ok(problems::quotient_problem(set(a)?, set(b)?));
    }
    Err(bad(format!("unknown problem `{s}`")))
}

/// Splits `A:B` at the colon that is not inside a file reference.
fn split_sets(s: &str) -> Parsed<(&str, &str)> {
    s.rsplit_once(':').ok_or_else(|| bad(format!("expected two sets in `{s}`")))
}

/// A Wadge strategy for `side`. `echo`, `stall`, `const:a,b,…`,
/// `random[:seed]`, `realizer[:M]` (compiled player II), `disc` (compiled
/// player I from the problem's discontinuity).
pub fn strategy(s: &str, side: Side, bundle: &ProblemBundle, seed: u64) -> Parsed<WadgeStrategy> {
    let (head, arg) = s.split_once(':').unwrap_or((s, ""));
    let st = match (head, side) {
        ("echo", Side::II) => games::echo(),
        ("stall", _) => games::stall(side),
        ("const", _) => games::constant(side, digits(arg)?),
        ("random", _) => games::random(side, if arg.is_empty() { seed } else { digit(arg)? }),
        ("realizer", Side::II) => {
            let h = if arg.is_empty() {
                bundle
                    .realizer
                    .clone()
                    .ok_or_else(|| bad(format!("{} carries no realizer", bundle.name())))?
            } else {
                machine(arg)?
            };
            games::realizer_to_strategy_ii(&h)
        }
        ("disc", Side::I) => {
            let d = bundle
                .discontinuity
                .as_ref()
                .ok_or_else(|| bad(format!("{} carries no discontinuity function", bundle.name())))?;
            games::disc_to_strategy_i(d.machine())
        }
        _ => return Err(bad(format!("unknown strategy `{s}` for player {side:?}"))),
    };
    Ok(st)
}

/// A digit strategy: `echo`, `const:N` or `random[:seed]` over `{0,…,3}`.
pub fn digit_strategy(s: &str, side: Side, seed: u64) -> Parsed<LipschitzStrategy> {
    let (head, arg) = s.split_once(':').unwrap_or((s, ""));
    Ok(match (head, side) {
        ("echo", Side::II) => games::digit_echo(),
        ("const", _) => games::digit_constant(side, digit(arg)?),
        ("random", _) => games::digit_random(side, if arg.is_empty() { seed } else { digit(arg)? }, 4),
        _ => return Err(bad(format!("unknown digit strategy `{s}` for player {side:?}"))),
    })
}

/// `identity`, `dis-to-lpo`, `disc-to-dis`, or a witness file.
pub fn witness(s: &str) -> Parsed<Witness> {
    match s {
        "identity" | "id" => return Ok(Witness::identity()),
        "dis-to-lpo" => return Ok(reductions::dis_to_lpo()),
        "disc-to-dis" => return Ok(reductions::disc_to_dis_reduction(&problems::dis_discontinuity())),
        _ => {}
    }
    let src = json_source(s)?.ok_or_else(|| bad(format!("unknown witness `{s}`")))?;
    let e: WitnessExpr = serde_json::from_str(&src).map_err(|e| bad(format!("witness: {e}")))?;
    Witness::try_from(&e).map_err(|e| bad(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shorthands() {
        assert_eq!(stream("count:1").unwrap().prefix(3), Word::from_digits(&[1, 2, 3]));
        assert_eq!(stream("lit:5,6/cycle:1,2").unwrap().prefix(5), Word::from_digits(&[5, 6, 1, 2, 1]));
        assert_eq!(stream("const:0").unwrap().prefix(2), Word::from_digits(&[0, 0]));
        assert!(stream("cycle:").is_err());
        assert!(stream("bogus").is_err());
    }

    #[test]
    fn problems_and_sets() {
        assert_eq!(problem("chi:first%2=0").unwrap().name(), "chi:first%2=0");
        assert!(problem("quot:all:none").is_ok());
        assert!(problem("nope").is_err());
        assert!(set("first=").is_err());
    }

    #[test]
    fn strategies_respect_sides() {
        let b = problems::dis_problem();
        assert!(strategy("disc", Side::I, &b, 0).is_ok());
        assert!(strategy("disc", Side::II, &b, 0).is_err());
        assert!(strategy("echo", Side::I, &b, 0).is_err());
        assert!(strategy("realizer", Side::II, &b, 0).is_err());
    }
}
