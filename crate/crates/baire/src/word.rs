//! Finite words over the naturals and the bijective word numbering.

use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::nat::Nat;

#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<Nat>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn from_digits(d: &[u64]) -> Word {
        Word(d.iter().map(|&v| Nat::small(v)).collect())
    }

    pub fn repeat(d: &Nat, n: usize) -> Word {
        Word(vec![d.clone(); n])
    }

    pub fn into_vec(self) -> Vec<Nat> {
        self.0
    }

    pub fn push(&mut self, d: Nat) {
        self.0.push(d);
    }

    pub fn extend_from(&mut self, other: &[Nat]) {
        self.0.extend_from_slice(other);
    }

    pub fn concat(&self, other: &[Nat]) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(other);
        Word(v)
    }

    /// The prefix of length `min(n, len)`.
    pub fn take(&self, n: usize) -> Word {
        Word(self.0[..n.min(self.0.len())].to_vec())
    }

    /// `self ⊑ other`.
    pub fn is_prefix_of(&self, other: &[Nat]) -> bool {
        self.0.len() <= other.len() && self.0[..] == other[..self.0.len()]
    }

    /// Prefix-comparable in either direction.
    pub fn comparable(&self, other: &Word) -> bool {
        self.is_prefix_of(other) || other.is_prefix_of(self)
    }

    /// Length of the longest common prefix.
    pub fn agreement(&self, other: &[Nat]) -> usize {
        self.0.iter().zip(other).take_while(|(a, b)| a == b).count()
    }

    pub fn has_nonzero(&self) -> bool {
        self.0.iter().any(|d| !d.is_zero())
    }

    pub fn code(&self) -> Nat {
        word_code(self)
    }
}

impl Deref for Word {
    type Target = [Nat];
    fn deref(&self) -> &[Nat] {
        &self.0
    }
}

impl From<Vec<Nat>> for Word {
    fn from(v: Vec<Nat>) -> Word {
        Word(v)
    }
}

impl FromIterator<Nat> for Word {
    fn from_iter<I: IntoIterator<Item = Nat>>(it: I) -> Word {
        Word(it.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `code(ε) = 0`, `code(u⌢b) = ⟨code(u), b⟩ + 1`.
pub fn word_code(u: &[Nat]) -> Nat {
    u.iter()
        .fold(Nat::ZERO, |c, b| Nat::pair(&c, b).succ())
}

pub fn word_decode(n: &Nat) -> Word {
    let mut digits = Vec::new();
    let mut cur = n.clone();
    while let Some(p) = cur.pred() {
        let (a, b) = p.unpair();
        digits.push(b);
        cur = a;
    }
    digits.reverse();
    Word(digits)
}

/// Longest prefix of the interleaving determined by both finite prefixes.
pub fn interleave_words(a: &[Nat], b: &[Nat]) -> Word {
    let len = if a.len() > b.len() { 2 * b.len() + 1 } else { 2 * a.len() };
    (0..len)
        .map(|i| if i % 2 == 0 { a[i / 2].clone() } else { b[i / 2].clone() })
        .collect()
}

pub fn even_word(u: &[Nat]) -> Word {
    u.iter().step_by(2).cloned().collect()
}

pub fn odd_word(u: &[Nat]) -> Word {
    u.iter().skip(1).step_by(2).cloned().collect()
}

/// ⊑-supremum of two comparable words.
pub fn sup(a: &Word, b: &Word) -> Word {
    if a.len() >= b.len() {
        a.clone()
    } else {
        b.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(d: &[u64]) -> Word {
        Word::from_digits(d)
    }

    #[test]
    fn small_codes() {
        assert_eq!(word_decode(&Nat::ZERO), Word::empty());
        assert_eq!(word_decode(&Nat::small(1)), w(&[0]));
        assert_eq!(word_code(&w(&[0, 0])), Nat::small(2));
        assert_eq!(word_code(&w(&[0, 0, 0])), Nat::small(4));
        assert_eq!(word_code(&w(&[0; 4])), Nat::small(11));
        assert_eq!(word_code(&w(&[0; 5])), Nat::small(67));
        assert_eq!(word_code(&w(&[0; 6])), Nat::small(2279));
    }

    #[test]
    fn long_words_round_trip() {
        let u: Word = (0..40u64).map(|i| Nat::small(i * 1_000_003)).collect();
        let c = word_code(&u);
        assert!(c.to_u64().is_none());
        assert_eq!(word_decode(&c), u);
    }

    #[test]
    fn interleave_prefixes() {
        assert_eq!(interleave_words(&w(&[0, 2]), &w(&[1])), w(&[0, 1, 2]));
        assert_eq!(interleave_words(&w(&[0]), &w(&[1, 3])), w(&[0, 1]));
        assert_eq!(interleave_words(&w(&[]), &w(&[1])), w(&[]));
        assert_eq!(even_word(&w(&[0, 1, 2, 3, 4])), w(&[0, 2, 4]));
        assert_eq!(odd_word(&w(&[0, 1, 2, 3, 4])), w(&[1, 3]));
    }
}
