//! The machine-expression format: a JSON tree of combinators with explicit
//! word literals. Everything except host closures round-trips bit-exactly.

use serde::{Deserialize, Serialize};

use crate::machine::{DigitMap, Kind, Machine};
use crate::nat::Nat;
use crate::stream::{Rule, Stream, Tail};
use crate::term::{Term, TermKind};
use crate::word::Word;

#[derive(Debug, thiserror::Error)]
pub enum ExprError {
    #[error("host closure `{0}` has no expression form")]
    NotSerializable(String),
    #[error("table is not the restriction of a monotone function")]
    InconsistentTable,
    #[error("stutter factor must be positive")]
    ZeroStutter,
    #[error("cycle tail must be nonempty")]
    EmptyCycle,
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum MachineExpr {
    Identity,
    Const(Word),
    Repeat(Word),
    Prepend(Word),
    Even,
    Odd,
    Section { f: Box<MachineExpr>, s: TermExpr },
    Compose(Box<MachineExpr>, Box<MachineExpr>),
    Pair(Box<MachineExpr>, Box<MachineExpr>),
    Map(DigitMap),
    Table(Vec<(Word, Word)>),
    Stutter(u64),
    Delay(u64),
    Pad { g: Box<MachineExpr>, pad: Nat },
    Latch(Box<MachineExpr>),
    HoldFirst,
    Universal,
    Smn(Box<MachineExpr>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum StreamExpr {
    Literal { prefix: Word, tail: Tail },
    Graph(MachineExpr),
    Interleave(Box<StreamExpr>, Box<StreamExpr>),
    Even(Box<StreamExpr>),
    Odd(Box<StreamExpr>),
    Project { of: Box<StreamExpr>, index: u64 },
    Term(TermExpr),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum TermExpr {
    Stream(Box<StreamExpr>),
    Word(Word),
    Interleave(Box<TermExpr>, Box<TermExpr>),
    Even(Box<TermExpr>),
    Odd(Box<TermExpr>),
    Apply { machine: Box<MachineExpr>, arg: Box<TermExpr> },
}

fn bx<T>(t: T) -> Box<T> {
    Box::new(t)
}

impl TryFrom<&Machine> for MachineExpr {
    type Error = ExprError;
    fn try_from(m: &Machine) -> Result<Self, ExprError> {
        let conv = |m: &Machine| MachineExpr::try_from(m).map(bx);
        Ok(match m.kind() {
            Kind::Identity => MachineExpr::Identity,
            Kind::Const(w) => MachineExpr::Const(w.clone()),
            Kind::Repeat(w) => MachineExpr::Repeat(w.clone()),
            Kind::Prepend(w) => MachineExpr::Prepend(w.clone()),
            Kind::Even => MachineExpr::Even,
            Kind::Odd => MachineExpr::Odd,
            Kind::Section(f, s) => MachineExpr::Section {
                f: conv(f)?,
                s: TermExpr::try_from(s)?,
            },
            Kind::Compose(g, h) => MachineExpr::Compose(conv(g)?, conv(h)?),
            Kind::Pair(g, h) => MachineExpr::Pair(conv(g)?, conv(h)?),
            Kind::Map(d) => MachineExpr::Map(d.clone()),
            Kind::Table(es) => MachineExpr::Table(es.clone()),
            Kind::Stutter(k) => MachineExpr::Stutter(*k),
            Kind::Delay(k) => MachineExpr::Delay(*k),
            Kind::Pad(g, d) => MachineExpr::Pad {
                g: conv(g)?,
                pad: d.clone(),
            },
            Kind::Latch(g) => MachineExpr::Latch(conv(g)?),
            Kind::HoldFirst => MachineExpr::HoldFirst,
            Kind::Universal => MachineExpr::Universal,
            Kind::Smn(f) => MachineExpr::Smn(conv(f)?),
            Kind::Host(h) => return Err(ExprError::NotSerializable(h.label.clone())),
        })
    }
}

impl TryFrom<&MachineExpr> for Machine {
    type Error = ExprError;
    fn try_from(e: &MachineExpr) -> Result<Self, ExprError> {
        let conv = |e: &MachineExpr| Machine::try_from(e);
        Ok(match e {
            MachineExpr::Identity => Machine::identity(),
            MachineExpr::Const(w) => Machine::constant(w.clone()),
            MachineExpr::Repeat(w) => Machine::repeat(w.clone()),
            MachineExpr::Prepend(w) => Machine::prepend(w.clone()),
            MachineExpr::Even => Machine::even(),
            MachineExpr::Odd => Machine::odd(),
            MachineExpr::Section { f, s } => Machine::section(conv(f)?, Term::try_from(s)?),
            MachineExpr::Compose(g, h) => Machine::compose(conv(g)?, conv(h)?),
            MachineExpr::Pair(g, h) => Machine::pair(conv(g)?, conv(h)?),
            MachineExpr::Map(d) => Machine::map(d.clone()),
            MachineExpr::Table(es) => Machine::table(es.clone()).map_err(|_| ExprError::InconsistentTable)?,
            MachineExpr::Stutter(0) => return Err(ExprError::ZeroStutter),
            MachineExpr::Stutter(k) => Machine::stutter(*k),
            MachineExpr::Delay(k) => Machine::delay(*k),
            MachineExpr::Pad { g, pad } => Machine::pad(conv(g)?, pad.clone()),
            MachineExpr::Latch(g) => Machine::latch(conv(g)?),
            MachineExpr::HoldFirst => Machine::hold_first(),
            MachineExpr::Universal => Machine::universal(),
            MachineExpr::Smn(f) => Machine::smn(conv(f)?),
        })
    }
}

impl TryFrom<&Stream> for StreamExpr {
    type Error = ExprError;
    fn try_from(s: &Stream) -> Result<Self, ExprError> {
        let conv = |s: &Stream| StreamExpr::try_from(s).map(bx);
        Ok(match s.rule() {
            Rule::Literal { prefix, tail } => StreamExpr::Literal {
                prefix: prefix.clone(),
                tail: tail.clone(),
            },
            Rule::Graph(m) => StreamExpr::Graph(MachineExpr::try_from(m)?),
            Rule::Interleave(a, b) => StreamExpr::Interleave(conv(a)?, conv(b)?),
            Rule::Even(a) => StreamExpr::Even(conv(a)?),
            Rule::Odd(a) => StreamExpr::Odd(conv(a)?),
            Rule::Project(a, i) => StreamExpr::Project {
                of: conv(a)?,
                index: *i,
            },
            Rule::Term(t) => StreamExpr::Term(TermExpr::try_from(t)?),
            Rule::Merge(h) => return Err(ExprError::NotSerializable(h.label.clone())),
            Rule::Host(h) => return Err(ExprError::NotSerializable(h.label.clone())),
        })
    }
}

impl TryFrom<&StreamExpr> for Stream {
    type Error = ExprError;
    fn try_from(e: &StreamExpr) -> Result<Self, ExprError> {
        Ok(match e {
            StreamExpr::Literal { prefix, tail } => {
                if matches!(tail, Tail::Cycle(w) if w.is_empty()) {
                    return Err(ExprError::EmptyCycle);
                }
                Stream::literal(prefix.clone(), tail.clone())
            }
            StreamExpr::Graph(m) => Stream::graph(Machine::try_from(m)?),
            StreamExpr::Interleave(a, b) => Stream::interleave(&Stream::try_from(&**a)?, &Stream::try_from(&**b)?),
            StreamExpr::Even(a) => Stream::new(Rule::Even(Stream::try_from(&**a)?)),
            StreamExpr::Odd(a) => Stream::new(Rule::Odd(Stream::try_from(&**a)?)),
            StreamExpr::Project { of, index } => Stream::new(Rule::Project(Stream::try_from(&**of)?, *index)),
            StreamExpr::Term(t) => Stream::new(Rule::Term(Term::try_from(t)?)),
        })
    }
}

impl TryFrom<&Term> for TermExpr {
    type Error = ExprError;
    fn try_from(t: &Term) -> Result<Self, ExprError> {
        let conv = |t: &Term| TermExpr::try_from(t).map(bx);
        Ok(match t.kind() {
            TermKind::Stream(s) => TermExpr::Stream(bx(StreamExpr::try_from(s)?)),
            TermKind::Word(w) => TermExpr::Word(w.clone()),
            TermKind::Interleave(a, b) => TermExpr::Interleave(conv(a)?, conv(b)?),
            TermKind::Even(a) => TermExpr::Even(conv(a)?),
            TermKind::Odd(a) => TermExpr::Odd(conv(a)?),
            TermKind::Apply(m, a) => TermExpr::Apply {
                machine: bx(MachineExpr::try_from(m)?),
                arg: conv(a)?,
            },
        })
    }
}

impl TryFrom<&TermExpr> for Term {
    type Error = ExprError;
    fn try_from(e: &TermExpr) -> Result<Self, ExprError> {
        Ok(match e {
            TermExpr::Stream(s) => Term::stream(Stream::try_from(&**s)?),
            TermExpr::Word(w) => Term::word(w.clone()),
            TermExpr::Interleave(a, b) => Term::interleave(Term::try_from(&**a)?, Term::try_from(&**b)?),
            TermExpr::Even(a) => Term::even(Term::try_from(&**a)?),
            TermExpr::Odd(a) => Term::odd(Term::try_from(&**a)?),
            TermExpr::Apply { machine, arg } => Term::apply(Machine::try_from(&**machine)?, Term::try_from(&**arg)?),
        })
    }
}

pub fn machine_to_json(m: &Machine) -> Result<String, ExprError> {
    Ok(serde_json::to_string(&MachineExpr::try_from(m)?)?)
}

pub fn machine_from_json(s: &str) -> Result<Machine, ExprError> {
    Machine::try_from(&serde_json::from_str::<MachineExpr>(s)?)
}

pub fn stream_to_json(s: &Stream) -> Result<String, ExprError> {
    Ok(serde_json::to_string(&StreamExpr::try_from(s)?)?)
}

pub fn stream_from_json(s: &str) -> Result<Stream, ExprError> {
    Stream::try_from(&serde_json::from_str::<StreamExpr>(s)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_variants_are_strings() {
        assert_eq!(machine_to_json(&Machine::identity()).unwrap(), "\"identity\"");
        let m = machine_from_json(r#"{"compose":[{"prepend":[1,2]},"odd"]}"#).unwrap();
        assert_eq!(machine_to_json(&m).unwrap(), r#"{"compose":[{"prepend":[1,2]},"odd"]}"#);
    }

    #[test]
    fn host_is_rejected() {
        let h = Machine::host("h", |u| u.clone());
        assert!(matches!(machine_to_json(&h), Err(ExprError::NotSerializable(_))));
    }

    #[test]
    fn bad_table_is_rejected() {
        let r = machine_from_json(r#"{"table":[[[0],[1]],[[0,0],[2]]]}"#);
        assert!(matches!(r, Err(ExprError::InconsistentTable)));
    }
}
