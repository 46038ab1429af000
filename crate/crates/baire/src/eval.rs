//! Evaluation of terms.
//!
//! Two routes compute the same partial points. The literal route reads a
//! name pair by pair exactly as the representation prescribes. The symbolic
//! route notices when a name is a listing `graph(g)` of a known machine and
//! runs `g` directly; it also unfolds the smn and section combinators and the
//! projections of interleavings before any digit is produced. Both routes
//! only ever certify prefixes of the same limit.
//!
//! Fuel semantics: `eval(t, f)` reads every stream leaf of `t` at positions
//! below `f` and every word leaf to length at most `f`. A machine applied to
//! a finite word `u` is therefore evaluated at fuel `|u|`.

use std::collections::{HashMap, HashSet};

use crate::machine::{Kind, Machine};
use crate::name;
use crate::stream::{Rule, Stream};
use crate::term::{Term, TermKind};
use crate::word::{even_word, interleave_words, odd_word, Word};

/// Weak head normal form of a term, as far as the evaluator can see.
#[derive(Clone, Debug)]
pub enum Head {
    /// The term is the name listing the graph of this machine.
    Graph(Machine),
    Interleave(Term, Term),
    Opaque,
}

const WHNF_LIMIT: usize = 512;

pub fn whnf(t: &Term) -> Head {
    whnf_at(t, 0)
}

fn whnf_at(t: &Term, depth: usize) -> Head {
    if depth > WHNF_LIMIT {
        return Head::Opaque;
    }
    let d = depth + 1;
    match t.kind() {
        TermKind::Stream(s) => match s.rule() {
            Rule::Graph(m) => Head::Graph(m.clone()),
            Rule::Interleave(a, b) => Head::Interleave(Term::stream(a.clone()), Term::stream(b.clone())),
            Rule::Even(s) => part(&Term::stream(s.clone()), true, d),
            Rule::Odd(s) => part(&Term::stream(s.clone()), false, d),
            Rule::Term(inner) => whnf_at(inner, d),
            _ => Head::Opaque,
        },
        TermKind::Word(_) => Head::Opaque,
        TermKind::Interleave(a, b) => Head::Interleave(a.clone(), b.clone()),
        TermKind::Even(x) => part(x, true, d),
        TermKind::Odd(x) => part(x, false, d),
        TermKind::Apply(m, x) => match m.kind() {
            Kind::Identity => whnf_at(x, d),
            Kind::Compose(g, h) => whnf_at(&Term::apply(g.clone(), Term::apply(h.clone(), x.clone())), d),
            Kind::Section(f, s) => whnf_at(&Term::apply(f.clone(), Term::interleave(s.clone(), x.clone())), d),
            Kind::Pair(g, h) => Head::Interleave(Term::apply(g.clone(), x.clone()), Term::apply(h.clone(), x.clone())),
            Kind::Even => part(x, true, d),
            Kind::Odd => part(x, false, d),
            Kind::Smn(f) => Head::Graph(Machine::section(f.clone(), normalize(x))),
            Kind::Universal => {
                let (name, input) = split_at(x, d);
                match whnf_at(&name, d) {
                    Head::Graph(g) => whnf_at(&Term::apply(g, input), d),
                    _ => Head::Opaque,
                }
            }
            _ => Head::Opaque,
        },
    }
}

fn part(x: &Term, even: bool, depth: usize) -> Head {
    match whnf_at(x, depth) {
        Head::Interleave(a, b) => whnf_at(if even { &a } else { &b }, depth + 1),
        _ => Head::Opaque,
    }
}

fn split_at(x: &Term, depth: usize) -> (Term, Term) {
    match whnf_at(x, depth) {
        Head::Interleave(a, b) => (a, b),
        _ => (Term::even(x.clone()), Term::odd(x.clone())),
    }
}

/// Rewrites a term to a canonical representative of its head, so that
/// names produced along different reduction paths share one description
/// (and therefore one memo).
pub fn normalize(t: &Term) -> Term {
    if t.as_stream().is_some() {
        return t.clone();
    }
    match whnf(t) {
        Head::Graph(m) => Term::stream(Stream::graph(m)),
        Head::Interleave(a, b) => {
            let (a, b) = (normalize(&a), normalize(&b));
            match (a.as_stream(), b.as_stream()) {
                (Some(p), Some(q)) => Term::stream(Stream::interleave(p, q)),
                _ => Term::interleave(a, b),
            }
        }
        Head::Opaque => t.clone(),
    }
}

/// `(name, input)` parts of an argument to the universal function.
pub fn split(x: &Term) -> (Term, Term) {
    split_at(x, 0)
}

/// Certified prefix of the point denoted by `t`, at fuel `f`.
pub fn eval(t: &Term, f: u64) -> Word {
    Ctx::default().eval(t, f)
}

#[derive(Default)]
struct Ctx {
    cache: HashMap<(Term, u64), Word>,
    /// Terms under evaluation. Meeting one again at the same fuel means the
    /// symbolic unfolding made no progress.
    active: HashSet<(Term, u64)>,
    /// Nesting of symbolic unfoldings through the universal function.
    unfold: usize,
}

/// Past this many nested unfoldings the universal function reads its name
/// literally instead.
const UNFOLD_LIMIT: usize = 64;

impl Ctx {
    fn eval(&mut self, t: &Term, f: u64) -> Word {
        match t.kind() {
            TermKind::Word(w) => return w.take(f as usize),
            TermKind::Stream(s) => return s.prefix(f as usize),
            _ => {}
        }
        let key = (t.clone(), f);
        if let Some(w) = self.cache.get(&key) {
            return w.clone();
        }
        self.active.insert(key.clone());
        let out = match t.kind() {
            TermKind::Interleave(a, b) => {
                let x = self.eval(a, f);
                let y = self.eval(b, f);
                interleave_words(&x, &y)
            }
            TermKind::Even(x) => match whnf(x) {
                Head::Interleave(a, _) => self.eval(&a, f),
                _ => even_word(&self.eval(x, f)),
            },
            TermKind::Odd(x) => match whnf(x) {
                Head::Interleave(_, b) => self.eval(&b, f),
                _ => odd_word(&self.eval(x, f)),
            },
            TermKind::Apply(m, x) => self.apply(m, x, f),
            TermKind::Word(_) | TermKind::Stream(_) => unreachable!(),
        };
        self.active.remove(&key);
        self.cache.insert(key, out.clone());
        out
    }

    /// How much of the argument is certified, capped by the fuel. Machines
    /// that read embedded streams or emit one digit per stage never run
    /// ahead of their argument.
    fn avail(&mut self, x: &Term, f: u64) -> u64 {
        f.min(self.eval(x, f).len() as u64)
    }

    fn apply(&mut self, m: &Machine, x: &Term, f: u64) -> Word {
        match m.kind() {
            Kind::Identity => self.eval(x, f),
            Kind::Const(c) => c.clone(),
            Kind::Repeat(c) => {
                let n = self.avail(x, f) as usize;
                let mut out = Word::empty();
                for _ in 0..n {
                    out.extend_from(c);
                }
                out
            }
            Kind::Prepend(w) => w.concat(&self.eval(x, f)),
            Kind::Even => self.eval(&Term::even(x.clone()), f),
            Kind::Odd => self.eval(&Term::odd(x.clone()), f),
            Kind::Section(g, s) => {
                let a = self.avail(x, f);
                self.eval(&Term::apply(g.clone(), Term::interleave(s.clone(), x.clone())), a)
            }
            Kind::Compose(g, h) => self.eval(&Term::apply(g.clone(), Term::apply(h.clone(), x.clone())), f),
            Kind::Pair(g, h) => {
                let a = self.eval(&Term::apply(g.clone(), x.clone()), f);
                let b = self.eval(&Term::apply(h.clone(), x.clone()), f);
                interleave_words(&a, &b)
            }
            Kind::Map(dm) => self.eval(x, f).iter().map(|d| dm.apply(d)).collect(),
            Kind::Table(entries) => {
                let input = self.eval(x, f);
                entries
                    .iter()
                    .filter(|(i, _)| i.is_prefix_of(&input))
                    .map(|(_, o)| o)
                    .max_by_key(|o| o.len())
                    .cloned()
                    .unwrap_or_default()
            }
            Kind::Stutter(k) => self
                .eval(x, f)
                .iter()
                .flat_map(|d| std::iter::repeat(d.clone()).take(*k as usize))
                .collect(),
            Kind::Delay(k) => {
                let w = self.eval(x, f);
                w.take(w.len().saturating_sub(*k as usize))
            }
            Kind::Pad(g, pad) => {
                let a = self.avail(x, f);
                let inner = Term::apply(g.clone(), x.clone());
                let mut out = Word::empty();
                let mut consumed = 0;
                for s in 0..a {
                    let o = self.eval(&inner, s);
                    if o.len() > consumed {
                        out.push(o[consumed].clone());
                        consumed += 1;
                    } else {
                        out.push(pad.clone());
                    }
                }
                out
            }
            Kind::Latch(g) => {
                let a = self.avail(x, f);
                let inner = Term::apply(g.clone(), x.clone());
                let mut out = Word::empty();
                let mut on = false;
                for s in 0..a {
                    on = on || self.eval(&inner, s).has_nonzero();
                    out.push(u64::from(on).into());
                }
                out
            }
            Kind::HoldFirst => {
                let w = self.eval(x, f);
                match w.first() {
                    Some(d) => Word::repeat(d, (f as usize).min(w.len())),
                    None => Word::empty(),
                }
            }
            Kind::Universal => {
                // no pair of the name is read at zero fuel
                if f == 0 {
                    return Word::empty();
                }
                let (name, input) = split(x);
                let unfolded = match whnf(&name) {
                    Head::Graph(g) if self.unfold < UNFOLD_LIMIT => Some(Term::apply(g, input.clone())),
                    _ => None,
                };
                match unfolded {
                    // a cycle falls back to reading the name, whose digits
                    // only need strictly smaller fuel
                    Some(t) if !self.active.contains(&(t.clone(), f)) => {
                        self.unfold += 1;
                        let out = self.eval(&t, f);
                        self.unfold -= 1;
                        out
                    }
                    _ => {
                        let q = self.eval(&name, f);
                        let p = self.eval(&input, f);
                        name::eval_words(&q, &p).output
                    }
                }
            }
            Kind::Smn(g) => {
                let a = self.avail(x, f);
                Stream::graph(Machine::section(g.clone(), normalize(x))).prefix(a as usize)
            }
            Kind::Host(h) => (h.f)(&self.eval(x, f)),
        }
    }
}
