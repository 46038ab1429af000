//! Seeded generators for machines, words, streams and names.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::machine::{DigitMap, Machine};
use crate::name::encode_machine;
use crate::nat::Nat;
use crate::stream::{Stream, Tail};
use crate::word::Word;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Uniform in `0..bound` (and `0` when `bound` is `0`).
    pub fn below(&mut self, bound: u64) -> u64 {
        self.rng.gen_range(0..bound.max(1))
    }

    pub fn digit(&mut self, alphabet: u64) -> Nat {
        Nat::small(self.rng.gen_range(0..alphabet))
    }

    pub fn word(&mut self, max_len: usize, alphabet: u64) -> Word {
        let n = self.rng.gen_range(0..=max_len);
        (0..n).map(|_| self.digit(alphabet)).collect()
    }

    pub fn word_of_len(&mut self, len: usize, alphabet: u64) -> Word {
        (0..len).map(|_| self.digit(alphabet)).collect()
    }

    /// A stream with a random prefix and a random eventually periodic or
    /// counting tail.
    pub fn stream(&mut self, alphabet: u64) -> Stream {
        let prefix = self.word(6, alphabet);
        let tail = match self.rng.gen_range(0..3) {
            0 => Tail::Const(self.digit(alphabet)),
            1 => {
                let mut c = self.word(3, alphabet);
                if c.is_empty() {
                    c.push(Nat::ZERO);
                }
                Tail::Cycle(c)
            }
            _ => Tail::Count(self.digit(alphabet)),
        };
        Stream::literal(prefix, tail)
    }

    fn digit_map(&mut self) -> DigitMap {
        match self.rng.gen_range(0..4) {
            0 => DigitMap::Affine {
                mul: self.rng.gen_range(0..3),
                add: self.rng.gen_range(0..3),
            },
            1 => DigitMap::Sign,
            2 => DigitMap::Const(self.digit(4)),
            _ => DigitMap::Lookup(vec![(self.digit(4), self.digit(4)), (self.digit(4), self.digit(4))]),
        }
    }

    /// A random total machine from the combinator set, of nesting at most
    /// `depth`.
    pub fn machine(&mut self, depth: u32) -> Machine {
        let leaf = depth == 0 || self.rng.gen_bool(0.35);
        if leaf {
            return match self.rng.gen_range(0..9) {
                0 => Machine::identity(),
                1 => Machine::even(),
                2 => Machine::odd(),
                3 => Machine::prepend(self.word(2, 4)),
                4 => Machine::constant(self.word(3, 4)),
                5 => Machine::repeat(self.word(2, 4)),
                6 => Machine::map(self.digit_map()),
                7 => Machine::stutter(self.rng.gen_range(1..3)),
                _ => Machine::delay(self.rng.gen_range(0..2)),
            };
        }
        match self.rng.gen_range(0..5) {
            0 => Machine::compose(self.machine(depth - 1), self.machine(depth - 1)),
            1 => Machine::pair(self.machine(depth - 1), self.machine(depth - 1)),
            2 => {
                let s = self.stream(4);
                Machine::section(self.machine(depth - 1), s)
            }
            3 => Machine::pad(self.machine(depth - 1), self.digit(2)),
            _ => Machine::latch(self.machine(depth - 1)),
        }
    }

    /// Machines that never run behind their input: digit `n` of the
    /// output depends on at most `n+1` input digits. Useful where a test
    /// needs a full certified prefix at depth `d` from fuel `d`.
    pub fn productive_machine(&mut self, depth: u32) -> Machine {
        let leaf = depth == 0 || self.rng.gen_bool(0.4);
        if leaf {
            return match self.rng.gen_range(0..5) {
                0 => Machine::identity(),
                1 => Machine::prepend(self.word(2, 4)),
                2 => Machine::repeat(self.word_of_len(1, 4)),
                3 => Machine::map(self.digit_map()),
                _ => Machine::stutter(self.rng.gen_range(1..3)),
            };
        }
        match self.rng.gen_range(0..3) {
            0 => Machine::compose(self.productive_machine(depth - 1), self.productive_machine(depth - 1)),
            1 => Machine::latch(self.productive_machine(depth - 1)),
            _ => Machine::pad(self.productive_machine(depth - 1), self.digit(2)),
        }
    }

    /// A name: the listing of a random machine, or now and then a raw
    /// literal stream read as a listing.
    pub fn name(&mut self) -> Stream {
        if self.rng.gen_bool(0.8) {
            encode_machine(&self.machine(2))
        } else {
            self.stream(8)
        }
    }

    pub fn pick<'a, T>(&mut self, xs: &'a [T]) -> &'a T {
        xs.choose(&mut self.rng).expect("nonempty choice")
    }
}

/// Stock machines `F` used for the parameterised recursion theorem.
pub fn stock_machines() -> Vec<(&'static str, Machine)> {
    vec![
        ("identity", Machine::identity()),
        ("even", Machine::even()),
        ("odd", Machine::odd()),
        ("constant", Machine::repeat(Word::from_digits(&[3]))),
        ("prepend_odd", Machine::compose(Machine::prepend(Word::from_digits(&[1, 2])), Machine::odd())),
        ("sign_even", Machine::compose(Machine::map(DigitMap::Sign), Machine::even())),
        ("latch_even", Machine::latch(Machine::even())),
        ("universal", Machine::universal()),
        ("universal_swapped", Machine::compose(Machine::universal(), Machine::swap())),
    ]
}
