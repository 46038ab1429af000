//! Monotone word machines: finite descriptions of continuous maps on Baire
//! space, built from a closed set of combinators.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::eval;
use crate::host::Host;
use crate::name::check_consistent;
use crate::nat::{mix, Nat};
use crate::term::Term;
use crate::word::Word;

pub type WordFn = dyn Fn(&Word) -> Word + Send + Sync;

/// Digitwise maps.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DigitMap {
    /// `d ↦ mul·d + add`
    Affine { mul: u64, add: u64 },
    /// `0 ↦ 0`, anything else `↦ 1`.
    Sign,
    Const(Nat),
    /// Listed digits are replaced, all others pass through.
    Lookup(Vec<(Nat, Nat)>),
}

impl DigitMap {
    pub fn apply(&self, d: &Nat) -> Nat {
        match self {
            DigitMap::Affine { mul, add } => match d.to_u64() {
                Some(v) => match v.checked_mul(*mul).and_then(|x| x.checked_add(*add)) {
                    Some(x) => Nat::small(x),
                    None => Nat::from_biguint(&(BigUint::from(v) * *mul + *add)),
                },
                None => Nat::from_biguint(&(d.to_biguint() * *mul + *add)),
            },
            DigitMap::Sign => Nat::small(u64::from(!d.is_zero())),
            DigitMap::Const(c) => c.clone(),
            DigitMap::Lookup(table) => table
                .iter()
                .find(|(k, _)| k == d)
                .map(|(_, v)| v.clone())
                .unwrap_or_else(|| d.clone()),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Kind {
    Identity,
    /// `u ↦ c`
    Const(Word),
    /// `u ↦ c^|u|`
    Repeat(Word),
    /// `u ↦ w⌢u`
    Prepend(Word),
    Even,
    Odd,
    /// `u ↦ F⟨s, u⟩`, reading `s` with modulus `|u|`.
    Section(Machine, Term),
    /// `u ↦ g(h(u))`
    Compose(Machine, Machine),
    /// `u ↦ ⟨g(u), h(u)⟩`
    Pair(Machine, Machine),
    Map(DigitMap),
    /// Monotone completion of a consistent finite table.
    Table(Vec<(Word, Word)>),
    /// Every digit repeated `k` times.
    Stutter(u64),
    /// Drops the last `k` digits.
    Delay(u64),
    /// One digit per stage: the next digit of `g` if one is newly available,
    /// otherwise the pad digit. Total whatever `g` does.
    Pad(Machine, Nat),
    /// One digit per stage: 1 once `g` has emitted a nonzero digit, else 0.
    Latch(Machine),
    /// `u ↦ u(0)^|u|`
    HoldFirst,
    /// The universal function `⟨q, x⟩ ↦ Φ_q(x)`.
    Universal,
    /// `r ↦` the name of the section `F⟨r, ·⟩`.
    Smn(Machine),
    Host(Host<WordFn>),
}

#[derive(Clone)]
pub struct Machine(Arc<MachineNode>);

struct MachineNode {
    kind: Kind,
    hash: u64,
}

fn words_hash(h: u64, w: &Word) -> u64 {
    w.iter().fold(mix(h, w.len() as u64), |h, d| mix(h, d.hash64()))
}

fn kind_hash(k: &Kind) -> u64 {
    match k {
        Kind::Identity => 101,
        Kind::Const(w) => words_hash(102, w),
        Kind::Repeat(w) => words_hash(103, w),
        Kind::Prepend(w) => words_hash(104, w),
        Kind::Even => 105,
        Kind::Odd => 106,
        Kind::Section(f, t) => mix(mix(107, f.hash64()), t.hash64()),
        Kind::Compose(g, h) => mix(mix(108, g.hash64()), h.hash64()),
        Kind::Pair(g, h) => mix(mix(109, g.hash64()), h.hash64()),
        Kind::Map(m) => {
            let mut s = std::collections::hash_map::DefaultHasher::new();
            m.hash(&mut s);
            mix(110, s.finish())
        }
        Kind::Table(es) => es
            .iter()
            .fold(111, |h, (a, b)| words_hash(words_hash(h, a), b)),
        Kind::Stutter(k) => mix(112, *k),
        Kind::Delay(k) => mix(113, *k),
        Kind::Pad(g, d) => mix(mix(114, g.hash64()), d.hash64()),
        Kind::Latch(g) => mix(115, g.hash64()),
        Kind::HoldFirst => 116,
        Kind::Universal => 117,
        Kind::Smn(f) => mix(118, f.hash64()),
        Kind::Host(h) => mix(119, h.id()),
    }
}

#[derive(Debug, thiserror::Error)]
#[error("table is not the restriction of a monotone function")]
pub struct InconsistentTable;

impl Machine {
    pub fn new(kind: Kind) -> Machine {
        let hash = kind_hash(&kind);
        Machine(Arc::new(MachineNode { kind, hash }))
    }

    pub fn identity() -> Machine {
        Machine::new(Kind::Identity)
    }
    pub fn constant(w: Word) -> Machine {
        Machine::new(Kind::Const(w))
    }
    pub fn repeat(w: Word) -> Machine {
        Machine::new(Kind::Repeat(w))
    }
    pub fn prepend(w: Word) -> Machine {
        Machine::new(Kind::Prepend(w))
    }
    pub fn even() -> Machine {
        Machine::new(Kind::Even)
    }
    pub fn odd() -> Machine {
        Machine::new(Kind::Odd)
    }
    pub fn section(f: Machine, s: impl Into<Term>) -> Machine {
        Machine::new(Kind::Section(f, s.into()))
    }
    /// `outer ∘ inner`
    pub fn compose(outer: Machine, inner: Machine) -> Machine {
        Machine::new(Kind::Compose(outer, inner))
    }
    /// `g₁ ∘ g₂ ∘ … ∘ gₙ`
    pub fn chain(ms: &[Machine]) -> Machine {
        let mut it = ms.iter().rev();
        let first = it.next().cloned().unwrap_or_else(Machine::identity);
        it.fold(first, |acc, m| Machine::compose(m.clone(), acc))
    }
    pub fn pair(g: Machine, h: Machine) -> Machine {
        Machine::new(Kind::Pair(g, h))
    }
    /// `⟨q, r⟩ ↦ ⟨r, q⟩`
    pub fn swap() -> Machine {
        Machine::pair(Machine::odd(), Machine::even())
    }
    pub fn map(m: DigitMap) -> Machine {
        Machine::new(Kind::Map(m))
    }
    pub fn table(entries: Vec<(Word, Word)>) -> Result<Machine, InconsistentTable> {
        if check_consistent(&entries) {
            Ok(Machine::new(Kind::Table(entries)))
        } else {
            Err(InconsistentTable)
        }
    }
    pub fn stutter(k: u64) -> Machine {
        assert!(k >= 1, "stutter factor must be positive");
        Machine::new(Kind::Stutter(k))
    }
    pub fn delay(k: u64) -> Machine {
        Machine::new(Kind::Delay(k))
    }
    pub fn pad(g: Machine, d: impl Into<Nat>) -> Machine {
        Machine::new(Kind::Pad(g, d.into()))
    }
    pub fn latch(g: Machine) -> Machine {
        Machine::new(Kind::Latch(g))
    }
    pub fn hold_first() -> Machine {
        Machine::new(Kind::HoldFirst)
    }
    pub fn universal() -> Machine {
        Machine::new(Kind::Universal)
    }
    pub fn smn(f: Machine) -> Machine {
        Machine::new(Kind::Smn(f))
    }
    /// A host-code machine. The caller is responsible for monotonicity.
    pub fn host(label: &str, f: impl Fn(&Word) -> Word + Send + Sync + 'static) -> Machine {
        Machine::new(Kind::Host(Host::new(label, Arc::new(f) as Arc<WordFn>)))
    }

    pub fn kind(&self) -> &Kind {
        &self.0.kind
    }

    pub fn hash64(&self) -> u64 {
        self.0.hash
    }

    /// The word function `g(u)`: the machine run on the finite input `u`
    /// with every embedded stream read to depth `|u|`.
    pub fn apply_word(&self, u: &Word) -> Word {
        eval::eval(&Term::apply(self.clone(), Term::word(u.clone())), u.len() as u64)
    }

    /// Certified output prefix on a (possibly partial) argument at `fuel`.
    pub fn apply_term(&self, t: &Term, fuel: u64) -> Word {
        eval::eval(&Term::apply(self.clone(), t.clone()), fuel)
    }

    /// Whether the machine can be written in the expression format.
    pub fn is_serializable(&self) -> bool {
        crate::expr::MachineExpr::try_from(self).is_ok()
    }
}

fn kind_eq(a: &Kind, b: &Kind) -> bool {
    use Kind::*;
    match (a, b) {
        (Identity, Identity) | (Even, Even) | (Odd, Odd) | (HoldFirst, HoldFirst) | (Universal, Universal) => true,
        (Const(x), Const(y)) | (Repeat(x), Repeat(y)) | (Prepend(x), Prepend(y)) => x == y,
        (Section(f, s), Section(g, t)) => f == g && s == t,
        (Compose(a1, b1), Compose(a2, b2)) | (Pair(a1, b1), Pair(a2, b2)) => a1 == a2 && b1 == b2,
        (Map(x), Map(y)) => x == y,
        (Table(x), Table(y)) => x == y,
        (Stutter(x), Stutter(y)) | (Delay(x), Delay(y)) => x == y,
        (Pad(g, d), Pad(h, e)) => d == e && g == h,
        (Latch(g), Latch(h)) | (Smn(g), Smn(h)) => g == h,
        (Host(x), Host(y)) => x == y,
        _ => false,
    }
}

/// Structural equality of descriptions.
impl PartialEq for Machine {
    fn eq(&self, other: &Machine) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.hash == other.0.hash && kind_eq(&self.0.kind, &other.0.kind))
    }
}

impl Eq for Machine {}

impl Hash for Machine {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

impl fmt::Debug for Machine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Kind::*;
        match &self.0.kind {
            Identity => f.write_str("id"),
            Const(w) => write!(f, "const{w}"),
            Repeat(w) => write!(f, "repeat{w}"),
            Prepend(w) => write!(f, "prepend{w}"),
            Even => f.write_str("even"),
            Odd => f.write_str("odd"),
            Section(g, t) => write!(f, "section({g:?},{t:?})"),
            Compose(g, h) => write!(f, "({g:?}∘{h:?})"),
            Pair(g, h) => write!(f, "⟨{g:?},{h:?}⟩"),
            Map(m) => write!(f, "map({m:?})"),
            Table(es) => write!(f, "table({es:?})"),
            Stutter(k) => write!(f, "stutter({k})"),
            Delay(k) => write!(f, "delay({k})"),
            Pad(g, d) => write!(f, "pad({g:?},{d})"),
            Latch(g) => write!(f, "latch({g:?})"),
            HoldFirst => f.write_str("hold_first"),
            Universal => f.write_str("U"),
            Smn(g) => write!(f, "smn({g:?})"),
            Host(h) => write!(f, "{h:?}"),
        }
    }
}
