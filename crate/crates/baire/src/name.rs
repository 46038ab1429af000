//! Names: streams read as listings of graph pairs, and their evaluation.

use serde::{Deserialize, Serialize};

use crate::eval::{self, Head};
use crate::machine::Machine;
use crate::stream::Stream;
use crate::term::{Term, TermKind};
use crate::word::{word_decode, Word};

/// Evaluation budget. On the literal route one unit is one decoded pair; on
/// the symbolic route it bounds how far the argument and every stream
/// embedded in the machine are read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fuel(pub u64);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Status {
    Progressing,
    /// Pair `second` contradicts the earlier pair `first`; output is frozen.
    InconsistentName { first: u64, second: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalOutcome {
    pub output: Word,
    pub status: Status,
}

impl EvalOutcome {
    pub fn is_consistent(&self) -> bool {
        self.status == Status::Progressing
    }
}

/// True iff the constraints extend to a monotone word function.
pub fn check_consistent(constraints: &[(Word, Word)]) -> bool {
    constraints.iter().enumerate().all(|(i, (u, a))| {
        constraints[i + 1..].iter().all(|(v, b)| compatible((u, a), (v, b)))
    })
}

fn compatible((u, a): (&Word, &Word), (v, b): (&Word, &Word)) -> bool {
    (!u.is_prefix_of(v) || a.is_prefix_of(b)) && (!v.is_prefix_of(u) || b.is_prefix_of(a))
}

/// `encode_machine(g)`: the name whose n-th digit is `⟨n, code(g(w_n))⟩`.
pub fn encode_machine(g: &Machine) -> Stream {
    Stream::graph(g.clone())
}

enum Input {
    Word(Word),
    Stream(Stream),
}

impl Input {
    fn extends(&self, c: &Word) -> bool {
        match self {
            Input::Word(w) => c.is_prefix_of(w),
            Input::Stream(s) => c.iter().enumerate().all(|(i, d)| s.digit(i as u64) == *d),
        }
    }
}

/// Pair-by-pair reader implementing the listing semantics.
struct Listing {
    constraints: Vec<(Word, Word)>,
    output: Word,
    status: Status,
}

impl Listing {
    fn new() -> Self {
        Listing {
            constraints: Vec::new(),
            output: Word::empty(),
            status: Status::Progressing,
        }
    }

    fn read(&mut self, digit: &crate::nat::Nat, input: &Input) {
        if self.status != Status::Progressing {
            return;
        }
        let (n, k) = digit.unpair();
        let (u, a) = (word_decode(&n), word_decode(&k));
        let idx = self.constraints.len() as u64;
        if let Some(j) = self.constraints.iter().position(|(v, b)| !compatible((&u, &a), (v, b))) {
            self.status = Status::InconsistentName { first: j as u64, second: idx };
            return;
        }
        if input.extends(&u) && a.len() > self.output.len() {
            self.output = a.clone();
        }
        self.constraints.push((u, a));
    }

    fn finish(self) -> EvalOutcome {
        EvalOutcome {
            output: self.output,
            status: self.status,
        }
    }
}

/// Reads every digit of the finite name `q` against the finite input `p`.
pub fn eval_words(q: &[crate::nat::Nat], p: &Word) -> EvalOutcome {
    let input = Input::Word(p.clone());
    let mut l = Listing::new();
    for d in q {
        l.read(d, &input);
    }
    l.finish()
}

/// The listing semantics, verbatim: decode the first `fuel` pairs of `q`
/// and take the supremum of the applicable outputs.
pub fn eval_name_literal(q: &Stream, x: impl Into<Term>, fuel: Fuel) -> EvalOutcome {
    let x = x.into();
    let input = match x.kind() {
        TermKind::Stream(s) => Input::Stream(s.clone()),
        TermKind::Word(w) => Input::Word(w.clone()),
        _ => Input::Word(eval::eval(&x, fuel.0)),
    };
    let mut l = Listing::new();
    for i in 0..fuel.0 {
        l.read(&q.digit(i), &input);
        if l.status != Status::Progressing {
            break;
        }
    }
    l.finish()
}

/// `Φ_q(x)` to the given fuel. Listings of known machines are run
/// symbolically; every other name is read pair by pair.
pub fn eval_name(q: &Stream, x: impl Into<Term>, fuel: Fuel) -> EvalOutcome {
    let x = x.into();
    match eval::whnf(&Term::stream(q.clone())) {
        Head::Graph(g) => EvalOutcome {
            output: eval::eval(&Term::apply(g, x), fuel.0),
            status: Status::Progressing,
        },
        _ => eval_name_literal(q, x, fuel),
    }
}

/// `U(r) = Φ_{even(r)}(odd(r))`.
pub fn universal(r: &Stream, fuel: Fuel) -> EvalOutcome {
    eval_name(&r.even_part(), r.odd_part(), fuel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nat::Nat;
    use crate::word::word_code;

    fn w(d: &[u64]) -> Word {
        Word::from_digits(d)
    }

    #[test]
    fn consistency_examples() {
        assert!(check_consistent(&[(w(&[]), w(&[]))]));
        assert!(check_consistent(&[(w(&[]), w(&[1])), (w(&[0]), w(&[1, 2]))]));
        assert!(!check_consistent(&[(w(&[0]), w(&[1])), (w(&[0, 0]), w(&[2]))]));
        assert!(!check_consistent(&[(w(&[]), w(&[1])), (w(&[]), w(&[2]))]));
    }

    #[test]
    fn identity_listing() {
        let q = encode_machine(&Machine::identity());
        for i in 0..50 {
            assert_eq!(q.digit(i), Nat::pair(&Nat::small(i), &Nat::small(i)));
        }
        let x = Stream::literal(w(&[5, 7]), crate::stream::Tail::Const(Nat::ZERO));
        let lit = eval_name_literal(&q, x.clone(), Fuel(3000));
        assert!(lit.output.len() >= 2 && lit.output[..2] == w(&[5, 7])[..]);
        let sym = eval_name(&q, x, Fuel(8));
        assert_eq!(sym.output, w(&[5, 7, 0, 0, 0, 0, 0, 0]));
    }

    #[test]
    fn zero_fuel_is_empty() {
        let q = encode_machine(&Machine::identity());
        let out = eval_name_literal(&q, w(&[1, 2]), Fuel(0));
        assert_eq!(out.output, Word::empty());
        assert!(out.is_consistent());
    }

    #[test]
    fn contradictory_pairs_freeze() {
        let e = word_code(&w(&[]));
        let d1 = Nat::pair(&e, &word_code(&w(&[1])));
        let d2 = Nat::pair(&e, &word_code(&w(&[2])));
        let q = Stream::literal(vec![d1, d2].into(), crate::stream::Tail::Const(Nat::ZERO));
        let out = eval_name_literal(&q, w(&[0]), Fuel(10));
        assert_eq!(out.status, Status::InconsistentName { first: 0, second: 1 });
        assert_eq!(out.output, w(&[1]));
    }
}
