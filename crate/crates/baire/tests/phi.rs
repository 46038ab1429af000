use baire::sample::Sampler;
use baire::*;
use proptest::prelude::*;

fn n(v: u64) -> Nat {
    Nat::small(v)
}

fn w(d: &[u64]) -> Word {
    Word::from_digits(d)
}

#[test]
fn encode_examples() {
    let id = encode_machine(&Machine::identity());
    for i in 0..50 {
        assert_eq!(id.digit(i), cantor_pair(&n(i), &n(i)), "identity pair {i}");
    }
    let empty = encode_machine(&Machine::constant(Word::empty()));
    for i in 0..50 {
        assert_eq!(empty.digit(i), cantor_pair(&n(i), &n(0)), "const ε pair {i}");
    }
}

#[test]
fn eval_examples() {
    let id = encode_machine(&Machine::identity());
    let x = Stream::literal(w(&[5, 7]), Tail::Count(n(0)));
    let out = eval_name(&id, x.clone(), Fuel(64));
    assert!(w(&[5, 7]).is_prefix_of(&out.output));
    let lit = eval_name_literal(&id, x.clone(), Fuel(500));
    assert!(w(&[5, 7]).is_prefix_of(&lit.output), "literal route gives {}", lit.output);

    let zero = eval_name(&id, x.clone(), Fuel(0));
    assert_eq!(zero.output, Word::empty());
    assert_eq!(zero.status, Status::Progressing);

    // (ε ↦ (1)) then (ε ↦ (2))
    let one = word_code(&w(&[1]));
    let two = word_code(&w(&[2]));
    let q = Stream::literal(Word::from(vec![cantor_pair(&n(0), &one), cantor_pair(&n(0), &two)]), Tail::Const(n(0)));
    let out = eval_name_literal(&q, x, Fuel(10));
    assert_eq!(out.status, Status::InconsistentName { first: 0, second: 1 });
    assert_eq!(out.output, w(&[1]));
}

#[test]
fn universal_examples() {
    let x = Stream::literal(w(&[3, 1, 4, 1, 5]), Tail::Const(n(9)));
    let r = interleave(&encode_machine(&Machine::identity()), &x);
    assert_eq!(universal(&r, Fuel(16)).output, x.prefix(16));
    let r = interleave(&encode_machine(&Machine::constant(Word::empty())), &x);
    for f in [0, 16, 256] {
        assert_eq!(universal(&r, Fuel(f)).output, Word::empty());
    }
    let mut s = Sampler::new(5);
    for _ in 0..1000 {
        let r = interleave(&s.name(), &s.stream(4));
        let f = Fuel(s.below(17));
        assert_eq!(universal(&r, f), eval_name(&even_part(&r), odd_part(&r), f));
    }
}

#[test]
fn consistency_examples() {
    assert!(check_consistent(&[(w(&[]), w(&[]))]));
    assert!(check_consistent(&[(w(&[]), w(&[1])), (w(&[0]), w(&[1, 2]))]));
    assert!(!check_consistent(&[(w(&[0]), w(&[1])), (w(&[0, 0]), w(&[2]))]));
}

#[test]
fn phi_semantics_at_reduced_scale() {
    checks::phi_semantics(20, 20, 200, 16, 21).unwrap();
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn machines_are_monotone(seed in any::<u64>(), u in prop::collection::vec(0u64..4, 0..12), cut in 0usize..12) {
        let g = Sampler::new(seed).machine(3);
        let v = Word::from_digits(&u);
        let short = v.take(cut);
        prop_assert!(g.apply_word(&short).is_prefix_of(&g.apply_word(&v)), "{:?}", g);
    }

    #[test]
    fn encoding_is_sound(seed in any::<u64>(), u in prop::collection::vec(0u64..4, 0..10)) {
        let g = Sampler::new(seed).machine(3);
        let u = Word::from_digits(&u);
        let q = encode_machine(&g);
        prop_assert_eq!(eval_name(&q, u.clone(), Fuel(u.len() as u64)).output, g.apply_word(&u));
        // the literal route needs fuel past the word's code
        if let Some(code) = word_code(&u).to_u64().filter(|&c| c < 500) {
            prop_assert_eq!(eval_name_literal(&q, u.clone(), Fuel(code + 1)).output, g.apply_word(&u));
        }
    }

    #[test]
    fn fuel_and_input_monotone(seed in any::<u64>(), f1 in 0u64..40, df in 0u64..40, u in prop::collection::vec(0u64..4, 0..10), cut in 0usize..10) {
        let q = Sampler::new(seed).name();
        let v = Word::from_digits(&u);
        let short = v.take(cut);
        let a = eval_name_literal(&q, short.clone(), Fuel(f1));
        prop_assert!(a.output.is_prefix_of(&eval_name_literal(&q, short, Fuel(f1 + df)).output));
        prop_assert!(a.output.is_prefix_of(&eval_name_literal(&q, v, Fuel(f1)).output));
    }

    #[test]
    fn inconsistency_is_permanent(seed in any::<u64>(), extra in 0u64..64) {
        let mut s = Sampler::new(seed);
        let q = s.stream(64);
        let x = s.stream(4);
        let at = eval_name_literal(&q, x.clone(), Fuel(24));
        if let Status::InconsistentName { .. } = at.status {
            prop_assert_eq!(eval_name_literal(&q, x, Fuel(24 + extra)), at);
        }
    }
}
