//! The smn theorem and the recursion theorems as name transformers.

use std::fmt;

use crate::machine::Machine;
use crate::nat::Nat;
use crate::stream::Stream;
use crate::term::Term;
use crate::word::word_decode;

/// A total continuous map on names, described by a machine.
#[derive(Clone)]
pub struct NameTransformer {
    label: String,
    machine: Machine,
}

impl NameTransformer {
    pub fn new(label: impl Into<String>, machine: Machine) -> Self {
        NameTransformer {
            label: label.into(),
            machine,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn machine(&self) -> &Machine {
        &self.machine
    }

    pub fn apply(&self, q: &Stream) -> Stream {
        Stream::from_term(self.apply_term(Term::stream(q.clone())))
    }

    pub fn apply_term(&self, q: Term) -> Term {
        Term::apply(self.machine.clone(), q)
    }

    /// `self ∘ inner`
    pub fn after(&self, inner: &NameTransformer) -> NameTransformer {
        NameTransformer::new(
            format!("{}∘{}", self.label, inner.label),
            Machine::compose(self.machine.clone(), inner.machine.clone()),
        )
    }
}

impl fmt::Debug for NameTransformer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {:?}", self.label, self.machine)
    }
}

/// `S` with `Φ_{S(q)}(p) = F⟨q, p⟩`.
pub fn smn_transform(f: &Machine) -> NameTransformer {
    NameTransformer::new("smn", Machine::smn(f.clone()))
}

/// Digits `0..=n` of `S(q)` depend only on digits of `q` below this bound.
pub fn smn_modulus(n: u64) -> u64 {
    (0..=n).map(|i| word_decode(&Nat::small(i)).len() as u64).max().unwrap_or(0)
}

/// `R` with `Φ_{R(p)}(q) = U(p)`.
pub fn const_section_transformer() -> NameTransformer {
    NameTransformer::new(
        "const_section",
        Machine::smn(Machine::compose(Machine::universal(), Machine::even())),
    )
}

pub fn const_section(p: &Stream) -> Stream {
    const_section_transformer().apply(p)
}

/// `F_d⟨r, x⟩ = U⟨U⟨r, r⟩, x⟩`
fn diagonal() -> Machine {
    let rr = Machine::compose(Machine::universal(), Machine::pair(Machine::even(), Machine::even()));
    Machine::compose(Machine::universal(), Machine::pair(rr, Machine::odd()))
}

/// `d` with `Φ_{d(r)}(x) = U⟨U⟨r, r⟩, x⟩`.
pub fn diagonal_transformer() -> NameTransformer {
    NameTransformer::new("d", Machine::smn(diagonal()))
}

/// `e` with `Φ_{e(p)}(r) = Φ_p(d(r))`.
pub fn e_transformer() -> NameTransformer {
    let f_e = Machine::compose(
        Machine::universal(),
        Machine::pair(Machine::even(), Machine::compose(Machine::smn(diagonal()), Machine::odd())),
    );
    NameTransformer::new("e", Machine::smn(f_e))
}

/// `T = d ∘ e`, with `Φ_{T(p)} = Φ_{Φ_p(T(p))}` whenever `Φ_p` is total.
pub fn fixpoint_transformer() -> NameTransformer {
    let t = diagonal_transformer().after(&e_transformer());
    NameTransformer::new("fixpoint", t.machine().clone())
}

pub fn fixpoint(p: &Stream) -> Stream {
    fixpoint_transformer().apply(p)
}

/// `R` with `U(R(q)) = F⟨q, R(q)⟩`, built as `R(q) = ⟨T(S(q)), q⟩` where
/// `Φ_{Φ_{S(q)}(r)}(p) = F⟨p, ⟨r, q⟩⟩`.
pub fn param_fixpoint(f: &Machine) -> NameTransformer {
    let swapped = Machine::compose(f.clone(), Machine::swap());
    let g = Machine::compose(Machine::smn(swapped), Machine::swap());
    let s = Machine::smn(g);
    let ts = Machine::compose(fixpoint_transformer().machine().clone(), s);
    NameTransformer::new("param_fixpoint", Machine::pair(ts, Machine::identity()))
}
