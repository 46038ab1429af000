//! Total, memoised digit producers: the points of Baire space.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::eval;
use crate::host::Host;
use crate::machine::Machine;
use crate::nat::{mix, pair_u64, unpair_u64, Nat};
use crate::term::Term;
use crate::word::{word_code, word_decode, Word};

pub type DigitFn = dyn Fn(u64) -> Nat + Send + Sync;
pub type FamilyFn = dyn Fn(u64) -> Stream + Send + Sync;

/// What follows the explicit prefix of a literal stream.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tail {
    Const(Nat),
    /// Repeats the word forever; must be nonempty.
    Cycle(Word),
    /// `start, start+1, start+2, …`
    Count(Nat),
}

#[derive(Clone, Debug)]
pub enum Rule {
    Literal { prefix: Word, tail: Tail },
    /// The name listing `(n, code(g(w_n)))` for every n.
    Graph(Machine),
    Interleave(Stream, Stream),
    Even(Stream),
    Odd(Stream),
    Merge(Host<FamilyFn>),
    Project(Stream, u64),
    /// A term that is total on this input; digits come from evaluating it
    /// at growing fuel.
    Term(Term),
    Host(Host<DigitFn>),
}

#[derive(Clone)]
pub struct Stream(Arc<StreamNode>);

struct StreamNode {
    rule: Rule,
    hash: u64,
    memo: Mutex<HashMap<u64, Nat>>,
}

/// Fuel ceiling per requested digit for term-backed streams; exceeding it
/// means the term was not total on this input.
const TERM_FUEL_FACTOR: u64 = 64;

fn rule_hash(rule: &Rule) -> u64 {
    match rule {
        Rule::Literal { prefix, tail } => {
            let mut h = mix(1, prefix.len() as u64);
            for d in prefix.iter() {
                h = mix(h, d.hash64());
            }
            match tail {
                Tail::Const(d) => mix(mix(h, 11), d.hash64()),
                Tail::Cycle(w) => w.iter().fold(mix(h, 12), |h, d| mix(h, d.hash64())),
                Tail::Count(d) => mix(mix(h, 13), d.hash64()),
            }
        }
        Rule::Graph(m) => mix(2, m.hash64()),
        Rule::Interleave(a, b) => mix(mix(3, a.hash64()), b.hash64()),
        Rule::Even(s) => mix(4, s.hash64()),
        Rule::Odd(s) => mix(5, s.hash64()),
        Rule::Merge(h) => mix(6, h.id()),
        Rule::Project(s, i) => mix(mix(7, s.hash64()), *i),
        Rule::Term(t) => mix(8, t.hash64()),
        Rule::Host(h) => mix(9, h.id()),
    }
}

fn graph_interner() -> &'static Mutex<HashMap<Machine, Stream>> {
    static CELL: OnceLock<Mutex<HashMap<Machine, Stream>>> = OnceLock::new();
    CELL.get_or_init(|| Mutex::new(HashMap::new()))
}

const INTERNER_LIMIT: usize = 1 << 14;

impl Stream {
    pub fn new(rule: Rule) -> Stream {
        let hash = rule_hash(&rule);
        Stream(Arc::new(StreamNode {
            rule,
            hash,
            memo: Mutex::new(HashMap::new()),
        }))
    }

    pub fn literal(prefix: Word, tail: Tail) -> Stream {
        if let Tail::Cycle(w) = &tail {
            assert!(!w.is_empty(), "cycle tail must be nonempty");
        }
        Stream::new(Rule::Literal { prefix, tail })
    }

    pub fn constant(d: impl Into<Nat>) -> Stream {
        Stream::literal(Word::empty(), Tail::Const(d.into()))
    }

    pub fn zeros() -> Stream {
        Stream::constant(0)
    }

    /// `0, 1, 2, 3, …`
    pub fn naturals() -> Stream {
        Stream::literal(Word::empty(), Tail::Count(Nat::ZERO))
    }

    /// The word followed by `pad` forever.
    pub fn padded(w: Word, pad: impl Into<Nat>) -> Stream {
        Stream::literal(w, Tail::Const(pad.into()))
    }

    /// Names are interned by machine so that repeated constructions share
    /// their memoised digits.
    pub fn graph(m: Machine) -> Stream {
        let mut table = graph_interner().lock().unwrap();
        if let Some(s) = table.get(&m) {
            return s.clone();
        }
        if table.len() >= INTERNER_LIMIT {
            table.clear();
        }
        let s = Stream::new(Rule::Graph(m.clone()));
        table.insert(m, s.clone());
        s
    }

    pub fn from_fn(label: &str, f: impl Fn(u64) -> Nat + Send + Sync + 'static) -> Stream {
        Stream::new(Rule::Host(Host::new(label, Arc::new(f) as Arc<DigitFn>)))
    }

    /// Normalises the term first, so that names built by transformers keep
    /// their symbolic shape (a listing or an interleaving) visible to the
    /// evaluator.
    pub fn from_term(t: Term) -> Stream {
        if let Some(s) = t.as_stream() {
            return s.clone();
        }
        match eval::whnf(&t) {
            eval::Head::Graph(m) => Stream::graph(m),
            eval::Head::Interleave(a, b) => Stream::interleave(&Stream::from_term(a), &Stream::from_term(b)),
            eval::Head::Opaque => Stream::new(Rule::Term(t)),
        }
    }

    pub fn interleave(p: &Stream, q: &Stream) -> Stream {
        Stream::new(Rule::Interleave(p.clone(), q.clone()))
    }

    pub fn even_part(&self) -> Stream {
        match self.rule() {
            Rule::Interleave(a, _) => a.clone(),
            _ => Stream::new(Rule::Even(self.clone())),
        }
    }

    pub fn odd_part(&self) -> Stream {
        match self.rule() {
            Rule::Interleave(_, b) => b.clone(),
            _ => Stream::new(Rule::Odd(self.clone())),
        }
    }

    pub fn merge(label: &str, family: impl Fn(u64) -> Stream + Send + Sync + 'static) -> Stream {
        Stream::new(Rule::Merge(Host::new(label, Arc::new(family) as Arc<FamilyFn>)))
    }

    pub fn project(&self, i: u64) -> Stream {
        match self.rule() {
            Rule::Merge(fam) => (fam.f)(i),
            _ => Stream::new(Rule::Project(self.clone(), i)),
        }
    }

    pub fn rule(&self) -> &Rule {
        &self.0.rule
    }

    pub fn hash64(&self) -> u64 {
        self.0.hash
    }

    pub fn ptr_eq(&self, other: &Stream) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn digit(&self, n: u64) -> Nat {
        match &self.0.rule {
            Rule::Literal { prefix, tail } => {
                if (n as usize) < prefix.len() {
                    return prefix[n as usize].clone();
                }
                let k = n - prefix.len() as u64;
                match tail {
                    Tail::Const(d) => d.clone(),
                    Tail::Cycle(w) => w[(k % w.len() as u64) as usize].clone(),
                    Tail::Count(start) => start.add_small(k),
                }
            }
            Rule::Interleave(a, b) => {
                if n % 2 == 0 {
                    a.digit(n / 2)
                } else {
                    b.digit(n / 2)
                }
            }
            Rule::Even(s) => s.digit(2 * n),
            Rule::Odd(s) => s.digit(2 * n + 1),
            Rule::Project(s, i) => {
                let idx = pair_u64(*i, n).expect("projection index exceeds u64");
                s.digit(idx)
            }
            _ => {
                if let Some(d) = self.0.memo.lock().unwrap().get(&n) {
                    return d.clone();
                }
                self.compute(n)
            }
        }
    }

    fn compute(&self, n: u64) -> Nat {
        let d = match &self.0.rule {
            Rule::Graph(m) => {
                let input = word_decode(&Nat::small(n));
                let out = m.apply_word(&input);
                Nat::pair(&Nat::small(n), &word_code(&out))
            }
            Rule::Merge(fam) => {
                let (i, j) = unpair_u64(n);
                (fam.f)(i).digit(j)
            }
            Rule::Host(h) => (h.f)(n),
            Rule::Term(t) => return self.term_digit(t, n),
            _ => unreachable!("memoised rules only"),
        };
        self.0.memo.lock().unwrap().insert(n, d.clone());
        d
    }

    fn term_digit(&self, t: &Term, n: u64) -> Nat {
        let ceiling = TERM_FUEL_FACTOR * (n + 1) + TERM_FUEL_FACTOR;
        let mut fuel = n + 1;
        loop {
            let out = eval::eval(t, fuel);
            if out.len() as u64 > n {
                let mut memo = self.0.memo.lock().unwrap();
                for (i, d) in out.iter().enumerate() {
                    memo.entry(i as u64).or_insert_with(|| d.clone());
                }
                return out[n as usize].clone();
            }
            if fuel >= ceiling {
                panic!("stream term is not total: digit {n} not produced within fuel {fuel}");
            }
            fuel = (fuel * 2).min(ceiling);
        }
    }

    pub fn prefix(&self, n: usize) -> Word {
        (0..n as u64).map(|i| self.digit(i)).collect()
    }

    /// Whether the first `n` digits agree with those of `other`.
    pub fn agrees_with(&self, other: &Stream, n: usize) -> bool {
        (0..n as u64).all(|i| self.digit(i) == other.digit(i))
    }
}

fn rule_eq(a: &Rule, b: &Rule) -> bool {
    match (a, b) {
        (Rule::Literal { prefix: p, tail: t }, Rule::Literal { prefix: q, tail: u }) => p == q && t == u,
        (Rule::Graph(m), Rule::Graph(n)) => m == n,
        (Rule::Interleave(a1, b1), Rule::Interleave(a2, b2)) => a1 == a2 && b1 == b2,
        (Rule::Even(x), Rule::Even(y)) | (Rule::Odd(x), Rule::Odd(y)) => x == y,
        (Rule::Merge(x), Rule::Merge(y)) => x == y,
        (Rule::Project(x, i), Rule::Project(y, j)) => i == j && x == y,
        (Rule::Term(x), Rule::Term(y)) => x == y,
        (Rule::Host(x), Rule::Host(y)) => x == y,
        _ => false,
    }
}

/// Structural equality of stream descriptions (not extensional equality,
/// which is undecidable).
impl PartialEq for Stream {
    fn eq(&self, other: &Stream) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.hash == other.0.hash && rule_eq(&self.0.rule, &other.0.rule))
    }
}

impl Eq for Stream {}

impl Hash for Stream {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

impl fmt::Debug for Stream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.rule {
            Rule::Literal { prefix, tail } => write!(f, "literal{prefix}{tail:?}"),
            Rule::Graph(m) => write!(f, "graph({m:?})"),
            Rule::Interleave(a, b) => write!(f, "<{a:?},{b:?}>"),
            Rule::Even(s) => write!(f, "even({s:?})"),
            Rule::Odd(s) => write!(f, "odd({s:?})"),
            Rule::Merge(h) => write!(f, "merge({h:?})"),
            Rule::Project(s, i) => write!(f, "project({s:?},{i})"),
            Rule::Term(t) => write!(f, "term({t:?})"),
            Rule::Host(h) => write!(f, "{h:?}"),
        }
    }
}
