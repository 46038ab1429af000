//! Partial points: expressions denoting elements of Baire space (or finite
//! approximations of them) whose digits are produced on demand.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::machine::Machine;
use crate::nat::mix;
use crate::stream::Stream;
use crate::word::Word;

#[derive(Clone, Debug)]
pub enum TermKind {
    Stream(Stream),
    /// A finite approximation; it carries no information past its end.
    Word(Word),
    Interleave(Term, Term),
    Even(Term),
    Odd(Term),
    Apply(Machine, Term),
}

#[derive(Clone)]
pub struct Term(Arc<TermNode>);

struct TermNode {
    kind: TermKind,
    hash: u64,
}

fn kind_hash(k: &TermKind) -> u64 {
    match k {
        TermKind::Stream(s) => mix(201, s.hash64()),
        TermKind::Word(w) => w.iter().fold(mix(202, w.len() as u64), |h, d| mix(h, d.hash64())),
        TermKind::Interleave(a, b) => mix(mix(203, a.hash64()), b.hash64()),
        TermKind::Even(t) => mix(204, t.hash64()),
        TermKind::Odd(t) => mix(205, t.hash64()),
        TermKind::Apply(m, t) => mix(mix(206, m.hash64()), t.hash64()),
    }
}

impl Term {
    pub fn new(kind: TermKind) -> Term {
        let hash = kind_hash(&kind);
        Term(Arc::new(TermNode { kind, hash }))
    }
    pub fn stream(s: Stream) -> Term {
        Term::new(TermKind::Stream(s))
    }
    pub fn word(w: Word) -> Term {
        Term::new(TermKind::Word(w))
    }
    pub fn interleave(a: Term, b: Term) -> Term {
        Term::new(TermKind::Interleave(a, b))
    }
    /// Projections cancel a syntactic interleaving, which keeps terms from
    /// growing along non-productive unfoldings.
    pub fn even(t: Term) -> Term {
        match t.kind() {
            TermKind::Interleave(a, _) => a.clone(),
            _ => Term::new(TermKind::Even(t)),
        }
    }
    pub fn odd(t: Term) -> Term {
        match t.kind() {
            TermKind::Interleave(_, b) => b.clone(),
            _ => Term::new(TermKind::Odd(t)),
        }
    }
    pub fn apply(m: Machine, t: Term) -> Term {
        Term::new(TermKind::Apply(m, t))
    }

    pub fn kind(&self) -> &TermKind {
        &self.0.kind
    }

    pub fn hash64(&self) -> u64 {
        self.0.hash
    }

    pub fn as_stream(&self) -> Option<&Stream> {
        match &self.0.kind {
            TermKind::Stream(s) => Some(s),
            _ => None,
        }
    }
}

impl From<Stream> for Term {
    fn from(s: Stream) -> Term {
        Term::stream(s)
    }
}

impl From<&Stream> for Term {
    fn from(s: &Stream) -> Term {
        Term::stream(s.clone())
    }
}

impl From<Word> for Term {
    fn from(w: Word) -> Term {
        Term::word(w)
    }
}

impl From<&Word> for Term {
    fn from(w: &Word) -> Term {
        Term::word(w.clone())
    }
}

fn kind_eq(a: &TermKind, b: &TermKind) -> bool {
    use TermKind::*;
    match (a, b) {
        (Stream(x), Stream(y)) => x == y,
        (Word(x), Word(y)) => x == y,
        (Interleave(a1, b1), Interleave(a2, b2)) => a1 == a2 && b1 == b2,
        (Even(x), Even(y)) | (Odd(x), Odd(y)) => x == y,
        (Apply(m, x), Apply(n, y)) => m == n && x == y,
        _ => false,
    }
}

impl PartialEq for Term {
    fn eq(&self, other: &Term) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.hash == other.0.hash && kind_eq(&self.0.kind, &other.0.kind))
    }
}

impl Eq for Term {}

impl Hash for Term {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.kind {
            TermKind::Stream(s) => write!(f, "{s:?}"),
            TermKind::Word(w) => write!(f, "{w}"),
            TermKind::Interleave(a, b) => write!(f, "⟨{a:?},{b:?}⟩"),
            TermKind::Even(t) => write!(f, "even({t:?})"),
            TermKind::Odd(t) => write!(f, "odd({t:?})"),
            TermKind::Apply(m, t) => write!(f, "{m:?}({t:?})"),
        }
    }
}
