//! Fixtures shared by the kernel benchmarks.

use baire::sample::Sampler;
use baire::{encode_machine, Machine, Stream, Word};

/// A fixed batch of random machines, fed to every evaluator benchmark.
pub fn machines(n: usize, seed: u64) -> Vec<Machine> {
    let mut s = Sampler::new(seed);
    (0..n).map(|_| s.machine(3)).collect()
}

pub fn words(n: usize, len: usize, seed: u64) -> Vec<Word> {
    let mut s = Sampler::new(seed);
    (0..n).map(|_| s.word_of_len(len, 4)).collect()
}

pub fn names(ms: &[Machine]) -> Vec<Stream> {
    ms.iter().map(encode_machine).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_deterministic() {
        assert_eq!(machines(4, 1), machines(4, 1));
        assert_eq!(words(3, 5, 2), words(3, 5, 2));
        assert_eq!(names(&machines(2, 3)).len(), 2);
    }
}
