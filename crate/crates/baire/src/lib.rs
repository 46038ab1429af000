//! A desk-scale kernel for computability on Baire space.
//!
//! Points are [`Stream`]s, continuous maps are monotone word [`Machine`]s,
//! and a name is a stream listing the graph of a word function. The
//! universal function, the smn and recursion theorems, the discontinuity
//! problem and the Wadge-game compilers are all executable here.

pub mod checks;
pub mod eval;
pub mod expr;
pub mod games;
pub mod host;
pub mod machine;
pub mod name;
pub mod nat;
pub mod problems;
pub mod reductions;
pub mod sample;
pub mod smn;
pub mod stream;
pub mod term;
pub mod word;

pub use games::{GameVerdict, LipschitzStrategy, Run, Side, WadgeStrategy};
pub use machine::{DigitMap, Kind, Machine};
pub use name::{check_consistent, encode_machine, eval_name, eval_name_literal, universal, EvalOutcome, Fuel, Status};
pub use nat::Nat;
pub use problems::{Problem, ProblemBundle, ProblemOracle, SetExpr, SetOracle, SetRef, Verdict};
pub use reductions::{apply_witness, verify_reduction, Flavor, Report, Witness};
pub use smn::{const_section, fixpoint, param_fixpoint, smn_transform, NameTransformer};
pub use stream::{Stream, Tail};
pub use term::Term;
pub use word::{interleave_words, word_code, word_decode, Word};

/// Cantor pairing `⟨n, k⟩ = ½(n+k)(n+k+1)+k`.
pub fn cantor_pair(n: &Nat, k: &Nat) -> Nat {
    Nat::pair(n, k)
}

pub fn cantor_unpair(m: &Nat) -> (Nat, Nat) {
    m.unpair()
}

pub fn interleave(p: &Stream, q: &Stream) -> Stream {
    Stream::interleave(p, q)
}

pub fn even_part(r: &Stream) -> Stream {
    r.even_part()
}

pub fn odd_part(r: &Stream) -> Stream {
    r.odd_part()
}

pub fn tuple_merge(label: &str, family: impl Fn(u64) -> Stream + Send + Sync + 'static) -> Stream {
    Stream::merge(label, family)
}

pub fn tuple_project(r: &Stream, i: u64) -> Stream {
    r.project(i)
}
