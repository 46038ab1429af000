//! Problems on Baire space as three-valued, prefix-monotone adjudicators,
//! and the catalog.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::eval;
use crate::machine::Machine;
use crate::name::{self, eval_words};
use crate::nat::Nat;
use crate::smn::{param_fixpoint, NameTransformer};
use crate::stream::Stream;
use crate::term::Term;
use crate::word::{even_word, odd_word, word_decode, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Accept,
    Reject,
    Unknown,
}

/// A multi-valued problem `f :⊆ N^N ⇉ N^N`, observed through finite prefixes.
///
/// Both adjudicators must be prefix-monotone, and sound: `Accept` only when
/// every infinite extension has the property, `Reject` only when none does.
pub trait Problem: Send + Sync {
    fn name(&self) -> String;
    /// Is `u` a prefix of a point of `dom(f)`?
    fn dom_adj(&self, u: &Word) -> Verdict;
    /// Are the extensions of `(u, v)` in `graph(f)`?
    fn graph_adj(&self, u: &Word, v: &Word) -> Verdict;
}

pub type ProblemOracle = Arc<dyn Problem>;

/// A subset of Baire space, observed through finite prefixes.
pub trait SetOracle: Send + Sync {
    fn label(&self) -> String;
    fn adj(&self, u: &Word) -> Verdict;
}

pub type SetRef = Arc<dyn SetOracle>;

/// Serializable set descriptions; all of them are clopen.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum SetExpr {
    All,
    None,
    /// First digit lies in the list.
    FirstIn(Vec<Nat>),
    /// First digit is `residue` mod `modulus`.
    FirstMod { modulus: u64, residue: u64 },
    /// Decision table over the first `depth` digits: members are listed.
    Table { depth: usize, members: Vec<Word> },
    Not(Box<SetExpr>),
}

impl SetExpr {
    /// Parses the command-line syntax: `all`, `none`, `first=7|8`,
    /// `first%2=0`. File references are resolved by the caller.
    pub fn parse(s: &str) -> Result<SetExpr, String> {
        let s = s.trim();
        if s == "all" {
            return Ok(SetExpr::All);
        }
        if s == "none" {
            return Ok(SetExpr::None);
        }
        if let Some(rest) = s.strip_prefix('!') {
            return Ok(SetExpr::Not(Box::new(SetExpr::parse(rest)?)));
        }
        if let Some(rest) = s.strip_prefix("first%") {
            let (m, r) = rest.split_once('=').ok_or_else(|| format!("bad set `{s}`"))?;
            let modulus: u64 = m.parse().map_err(|_| format!("bad modulus in `{s}`"))?;
            let residue: u64 = r.parse().map_err(|_| format!("bad residue in `{s}`"))?;
            if modulus == 0 {
                return Err("modulus must be positive".into());
            }
            return Ok(SetExpr::FirstMod { modulus, residue });
        }
        if let Some(rest) = s.strip_prefix("first=") {
            let ds = rest
                .split('|')
                .map(|d| d.parse::<u64>().map(Nat::small).map_err(|_| format!("bad digit in `{s}`")))
                .collect::<Result<Vec<_>, _>>()?;
            return Ok(SetExpr::FirstIn(ds));
        }
        Err(format!("unknown set expression `{s}`"))
    }

    pub fn oracle(&self) -> SetRef {
        Arc::new(self.clone())
    }

    fn decide(&self, u: &Word) -> Verdict {
        let yes = |b: bool| if b { Verdict::Accept } else { Verdict::Reject };
        match self {
            SetExpr::All => Verdict::Accept,
            SetExpr::None => Verdict::Reject,
            SetExpr::FirstIn(ds) => match u.first() {
                Some(d) => yes(ds.contains(d)),
                None => Verdict::Unknown,
            },
            SetExpr::FirstMod { modulus, residue } => match u.first() {
                Some(d) => yes(d.rem_small(*modulus) == *residue),
                None => Verdict::Unknown,
            },
            SetExpr::Table { depth, members } => {
                if u.len() < *depth {
                    // decided early if no member (or every extension) matches
                    let hits = members.iter().filter(|m| m.len() == *depth && u.is_prefix_of(m)).count();
                    if hits == 0 {
                        Verdict::Reject
                    } else {
                        Verdict::Unknown
                    }
                } else {
                    let head = u.take(*depth);
                    yes(members.iter().any(|m| *m == head))
                }
            }
            SetExpr::Not(a) => match a.decide(u) {
                Verdict::Accept => Verdict::Reject,
                Verdict::Reject => Verdict::Accept,
                Verdict::Unknown => Verdict::Unknown,
            },
        }
    }
}

impl fmt::Display for SetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetExpr::All => write!(f, "all"),
            SetExpr::None => write!(f, "none"),
            SetExpr::FirstIn(ds) => {
                let ds: Vec<String> = ds.iter().map(|d| d.to_string()).collect();
                write!(f, "first={}", ds.join("|"))
            }
            SetExpr::FirstMod { modulus, residue } => write!(f, "first%{modulus}={residue}"),
            SetExpr::Table { depth, members } => write!(f, "table[{depth};{}]", members.len()),
            SetExpr::Not(a) => write!(f, "!{a}"),
        }
    }
}

impl SetOracle for SetExpr {
    fn label(&self) -> String {
        self.to_string()
    }
    fn adj(&self, u: &Word) -> Verdict {
        self.decide(u)
    }
}

/// A problem together with whatever is known to realize it or to witness
/// its discontinuity.
#[derive(Clone)]
pub struct ProblemBundle {
    pub oracle: ProblemOracle,
    pub realizer: Option<Machine>,
    pub discontinuity: Option<NameTransformer>,
}

impl ProblemBundle {
    pub fn new(oracle: ProblemOracle) -> Self {
        ProblemBundle {
            oracle,
            realizer: None,
            discontinuity: None,
        }
    }

    pub fn with_realizer(mut self, m: Machine) -> Self {
        self.realizer = Some(m);
        self
    }

    pub fn with_discontinuity(mut self, d: NameTransformer) -> Self {
        self.discontinuity = Some(d);
        self
    }

    pub fn name(&self) -> String {
        self.oracle.name()
    }
}

impl fmt::Debug for ProblemBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProblemBundle")
            .field("name", &self.oracle.name())
            .field("realizer", &self.realizer)
            .field("discontinuity", &self.discontinuity)
            .finish()
    }
}

fn first_mismatch(u: &[Nat], v: &[Nat]) -> bool {
    u.iter().zip(v.iter()).any(|(a, b)| a != b)
}

struct Id;

impl Problem for Id {
    fn name(&self) -> String {
        "id".into()
    }
    fn dom_adj(&self, _: &Word) -> Verdict {
        Verdict::Accept
    }
    fn graph_adj(&self, u: &Word, v: &Word) -> Verdict {
        if first_mismatch(u, v) {
            Verdict::Reject
        } else {
            Verdict::Unknown
        }
    }
}

pub fn id_problem() -> ProblemBundle {
    ProblemBundle::new(Arc::new(Id)).with_realizer(Machine::identity())
}

/// `U` on a finite input prefix, reading every pair of its even part.
pub fn certified_universal(u: &Word) -> Word {
    eval_words(&even_word(u), &odd_word(u)).output
}

struct Dis;

impl Problem for Dis {
    fn name(&self) -> String {
        "dis".into()
    }
    fn dom_adj(&self, _: &Word) -> Verdict {
        Verdict::Accept
    }
    fn graph_adj(&self, u: &Word, v: &Word) -> Verdict {
        if first_mismatch(&certified_universal(u), v) {
            Verdict::Accept
        } else {
            Verdict::Unknown
        }
    }
}

/// `D` with `U D(p) = Φ_p D(p)` for every `p`.
pub fn dis_discontinuity() -> NameTransformer {
    let r = param_fixpoint(&Machine::universal());
    NameTransformer::new("dis_discontinuity", r.machine().clone())
}

pub fn dis_problem() -> ProblemBundle {
    ProblemBundle::new(Arc::new(Dis)).with_discontinuity(dis_discontinuity())
}

struct Lpo;

impl Problem for Lpo {
    fn name(&self) -> String {
        "lpo".into()
    }
    fn dom_adj(&self, _: &Word) -> Verdict {
        Verdict::Accept
    }
    /// `LPO(p) = 1` iff `p = 000…`, read off the first output digit.
    fn graph_adj(&self, u: &Word, v: &Word) -> Verdict {
        let Some(b) = v.first() else {
            return Verdict::Unknown;
        };
        if !(b.is_zero() || *b == 1) {
            return Verdict::Reject;
        }
        if u.has_nonzero() {
            if b.is_zero() {
                Verdict::Accept
            } else {
                Verdict::Reject
            }
        } else {
            Verdict::Unknown
        }
    }
}

/// The finite-stage guess of `LPO`: `1` while the input looks like `000…`,
/// `0` once a nonzero digit shows up. Not monotone, and not a realizer in
/// the limit sense; it stands in for the non-computable oracle when
/// reductions to `LPO` are checked prefix by prefix.
pub fn lpo_oracle_machine() -> Machine {
    Machine::host("lpo_oracle", |u| {
        if u.is_empty() {
            Word::empty()
        } else {
            Word::from_digits(&[u64::from(!u.has_nonzero())])
        }
    })
}

pub fn lpo_problem() -> ProblemBundle {
    ProblemBundle::new(Arc::new(Lpo)).with_realizer(lpo_oracle_machine())
}

struct Chi(SetRef);

impl Problem for Chi {
    fn name(&self) -> String {
        format!("chi:{}", self.0.label())
    }
    fn dom_adj(&self, _: &Word) -> Verdict {
        Verdict::Accept
    }
    fn graph_adj(&self, u: &Word, v: &Word) -> Verdict {
        if !v.has_nonzero() {
            return Verdict::Unknown;
        }
        match self.0.adj(u) {
            Verdict::Accept => Verdict::Accept,
            Verdict::Reject => Verdict::Reject,
            Verdict::Unknown => Verdict::Unknown,
        }
    }
}

/// Emits `1` at stage `i` once `A` certifies membership of `u[..i]`, else
/// `0`. Realizes `χ_A` whenever `A` is open in the certified sense.
pub fn chi_realizer(a: SetRef) -> Machine {
    Machine::host(&format!("chi_realizer:{}", a.label()), move |u| {
        let mut on = a.adj(&Word::empty()) == Verdict::Accept;
        (1..=u.len())
            .map(|i| {
                on = on || a.adj(&u.take(i)) == Verdict::Accept;
                Nat::small(u64::from(on))
            })
            .collect()
    })
}

pub fn chi_problem(a: SetRef) -> ProblemBundle {
    ProblemBundle::new(Arc::new(Chi(a.clone()))).with_realizer(chi_realizer(a))
}

struct Quotient(SetRef, SetRef);

impl Problem for Quotient {
    fn name(&self) -> String {
        format!("quot:{}:{}", self.0.label(), self.1.label())
    }
    fn dom_adj(&self, _: &Word) -> Verdict {
        Verdict::Accept
    }
    fn graph_adj(&self, u: &Word, v: &Word) -> Verdict {
        use Verdict::*;
        match (self.0.adj(u), self.1.adj(v)) {
            (Accept, Accept) | (Reject, Reject) => Accept,
            (Accept, Reject) | (Reject, Accept) => Reject,
            _ => Unknown,
        }
    }
}

/// `B/A` with `graph = (A×B) ∪ (A^c×B^c)`.
pub fn quotient_problem(a: SetRef, b: SetRef) -> ProblemBundle {
    ProblemBundle::new(Arc::new(Quotient(a, b)))
}

struct Nrng;

impl Problem for Nrng {
    fn name(&self) -> String {
        "nrng".into()
    }
    fn dom_adj(&self, _: &Word) -> Verdict {
        Verdict::Accept
    }
    /// `v` is read through the sign map, so every answer names a set and
    /// only a certified exclusion decides.
    fn graph_adj(&self, u: &Word, v: &Word) -> Verdict {
        let excluded = u.iter().filter_map(|d| d.pred()).any(|n| match n.to_usize() {
            Some(i) => i < v.len() && v[i].is_zero(),
            None => false,
        });
        if excluded {
            Verdict::Accept
        } else {
            Verdict::Unknown
        }
    }
}

/// `p ↦ {A ∈ 2^N : A ≠ range(p−1)}`, with `A = {i : v(i) ≠ 0}`.
pub fn nrng_problem() -> ProblemBundle {
    ProblemBundle::new(Arc::new(Nrng))
}

struct Totalized(ProblemOracle);

impl Problem for Totalized {
    fn name(&self) -> String {
        format!("T({})", self.0.name())
    }
    fn dom_adj(&self, _: &Word) -> Verdict {
        Verdict::Accept
    }
    fn graph_adj(&self, u: &Word, v: &Word) -> Verdict {
        let dom = self.0.dom_adj(u);
        match self.0.graph_adj(u, v) {
            Verdict::Accept => Verdict::Accept,
            _ if dom == Verdict::Reject => Verdict::Accept,
            Verdict::Reject if dom == Verdict::Accept => Verdict::Reject,
            _ => Verdict::Unknown,
        }
    }
}

pub fn totalize(f: ProblemOracle) -> ProblemOracle {
    Arc::new(Totalized(f))
}

/// `w_{p(0)} w_{p(1)} …` on a finite prefix.
pub fn lift_decode(u: &[Nat]) -> Word {
    let mut out = Word::empty();
    for d in u {
        out.extend_from(&word_decode(d));
    }
    out
}

struct WordLift(ProblemOracle);

impl Problem for WordLift {
    fn name(&self) -> String {
        format!("{}^w", self.0.name())
    }
    fn dom_adj(&self, u: &Word) -> Verdict {
        self.0.dom_adj(&lift_decode(u))
    }
    fn graph_adj(&self, u: &Word, v: &Word) -> Verdict {
        self.0.graph_adj(&lift_decode(u), &lift_decode(v))
    }
}

/// `f^w = w^{-1} ∘ f ∘ w`
pub fn word_lift(f: ProblemOracle) -> ProblemOracle {
    Arc::new(WordLift(f))
}

/// `G` with `Φ_{G(q)}` total and `δ_S Φ_{G(q)} = δ_S Φ_q` wherever
/// `Φ_q(x)` is infinite.
pub fn sierpinski_totalizer_transformer() -> NameTransformer {
    NameTransformer::new("sierpinski_totalizer", Machine::smn(Machine::latch(Machine::universal())))
}

pub fn sierpinski_totalizer(q: &Stream) -> Stream {
    sierpinski_totalizer_transformer().apply(q)
}

struct Delta(SetRef);

impl Problem for Delta {
    fn name(&self) -> String {
        format!("delta:{}", self.0.label())
    }
    fn dom_adj(&self, _: &Word) -> Verdict {
        Verdict::Unknown
    }
    fn graph_adj(&self, p: &Word, x: &Word) -> Verdict {
        let in_u = eval_words(p, x).output.has_nonzero();
        if !in_u {
            return Verdict::Unknown;
        }
        match self.0.adj(x) {
            Verdict::Reject => Verdict::Accept,
            Verdict::Accept => Verdict::Reject,
            Verdict::Unknown => Verdict::Unknown,
        }
    }
}

/// `Δ_A : U ↦ A Δ U` on names of realizers of `χ_U`.
pub fn delta_problem(a: SetRef) -> ProblemOracle {
    Arc::new(Delta(a))
}

/// Certified prefix of `U` on a symbolic point, at fuel `f`.
pub fn universal_prefix(r: &Stream, f: u64) -> Word {
    name::universal(r, name::Fuel(f)).output
}

/// Certified prefix of `Φ_q(x)` where `x` is a symbolic point.
pub fn phi_prefix(q: &Stream, x: &Stream, f: u64) -> Word {
    name::eval_name(q, Term::stream(x.clone()), name::Fuel(f)).output
}

/// Applies a machine to a symbolic point and returns `f` certified digits.
pub fn machine_prefix(m: &Machine, x: &Stream, f: u64) -> Word {
    eval::eval(&Term::apply(m.clone(), Term::stream(x.clone())), f)
}
