use baire::*;
use proptest::prelude::*;

fn n(v: u64) -> Nat {
    Nat::small(v)
}

fn w(d: &[u64]) -> Word {
    Word::from_digits(d)
}

#[test]
fn cantor_examples() {
    assert_eq!(cantor_pair(&n(0), &n(0)), n(0));
    assert_eq!(cantor_pair(&n(0), &n(1)), n(2));
    assert_eq!(cantor_unpair(&n(5)), (n(0), n(2)));
    assert_eq!(cantor_unpair(&n(0)), (n(0), n(0)));
    assert_eq!(cantor_unpair(&n(1)), (n(1), n(0)));
}

#[test]
fn word_code_examples() {
    assert_eq!(word_decode(&n(0)), Word::empty());
    assert_eq!(word_decode(&n(1)), w(&[0]));
    for m in 0..10_000 {
        assert_eq!(word_code(&word_decode(&n(m))), n(m));
    }
}

#[test]
fn interleave_examples() {
    let r = interleave(&Stream::zeros(), &Stream::constant(1u64));
    assert_eq!(r.prefix(4), w(&[0, 1, 0, 1]));
    assert_eq!(interleave_words(&w(&[0, 2]), &w(&[1])), w(&[0, 1, 2]));
    let nat = Stream::naturals();
    assert_eq!(even_part(&nat).prefix(3), w(&[0, 2, 4]));
    assert_eq!(even_part(&Stream::constant(7u64)).prefix(5), odd_part(&Stream::constant(7u64)).prefix(5));
    assert_eq!(interleave(&even_part(&nat), &odd_part(&nat)).prefix(32), nat.prefix(32));
}

#[test]
fn merge_examples() {
    let merged = tuple_merge("const-i", |i| Stream::constant(i));
    assert_eq!(merged.digit(cantor_pair(&n(2), &n(5)).to_u64().unwrap()), n(2));
    let p = Stream::literal(w(&[4, 1]), Tail::Count(n(9)));
    let q = p.clone();
    let same = tuple_merge("same", move |_| q.clone());
    for i in 0..5 {
        assert_eq!(tuple_project(&same, i).prefix(8), p.prefix(8));
    }
}

#[test]
fn coding_laws_at_reduced_scale() {
    checks::coding_laws(2_000, 200, 11).unwrap();
}

fn digit() -> impl Strategy<Value = Nat> {
    prop_oneof![
        (0u64..8).prop_map(Nat::small),
        any::<u64>().prop_map(Nat::small),
        (any::<u64>(), any::<u64>()).prop_map(|(a, b)| Nat::pair(&Nat::small(a), &Nat::small(b))),
    ]
}

fn word() -> impl Strategy<Value = Word> {
    prop::collection::vec(digit(), 0..8).prop_map(Word::from)
}

fn stream() -> impl Strategy<Value = Stream> {
    (prop::collection::vec(0u64..16, 0..6), 0u64..3, 0u64..16).prop_map(|(pre, kind, d)| {
        let tail = match kind {
            0 => Tail::Const(Nat::small(d)),
            1 => Tail::Cycle(Word::from_digits(&[d, d + 1])),
            _ => Tail::Count(Nat::small(d)),
        };
        Stream::literal(Word::from_digits(&pre), tail)
    })
}

proptest! {
    #[test]
    fn pair_unpair_round_trip(a in digit(), b in digit()) {
        let m = cantor_pair(&a, &b);
        prop_assert_eq!(cantor_unpair(&m), (a, b));
    }

    #[test]
    fn unpair_pair_round_trip(m in digit()) {
        let (a, b) = cantor_unpair(&m);
        prop_assert_eq!(cantor_pair(&a, &b), m);
    }

    #[test]
    fn word_code_round_trip(u in word()) {
        prop_assert_eq!(word_decode(&word_code(&u)), u);
    }

    #[test]
    fn interleave_laws(p in stream(), q in stream(), i in 0u64..200) {
        let r = interleave(&p, &q);
        prop_assert_eq!(r.digit(2 * i), p.digit(i));
        prop_assert_eq!(r.digit(2 * i + 1), q.digit(i));
        prop_assert_eq!(interleave(&even_part(&r), &odd_part(&r)).digit(i), r.digit(i));
    }

    #[test]
    fn word_interleave_is_monotone(a in word(), b in word(), c in word()) {
        let short = interleave_words(&a, &b);
        prop_assert!(short.is_prefix_of(&interleave_words(&a.concat(&c), &b)));
        prop_assert!(short.is_prefix_of(&interleave_words(&a, &b.concat(&c))));
    }

    #[test]
    fn streams_are_stable(p in stream(), q in stream(), order in prop::collection::vec(0u64..64, 1..40)) {
        let r = tuple_merge("pq", {
            let (p, q) = (p.clone(), q.clone());
            move |i| if i % 2 == 0 { p.clone() } else { interleave(&q, &p) }
        });
        let expected: Vec<Nat> = (0..64).map(|i| r.digit(i)).collect();
        for &i in order.iter().rev() {
            prop_assert_eq!(&r.digit(i), &expected[i as usize]);
        }
        prop_assert_eq!(r.prefix(64), Word::from(expected));
    }

    #[test]
    fn merge_project(i in 0u64..40, j in 0u64..40, p in stream()) {
        let q = p.clone();
        let m = tuple_merge("shift", move |i| interleave(&q, &Stream::constant(i)));
        let expected = interleave(&p, &Stream::constant(i)).digit(j);
        prop_assert_eq!(tuple_project(&m, i).digit(j), expected.clone());
        prop_assert_eq!(m.digit(cantor_pair(&Nat::small(i), &Nat::small(j)).to_u64().unwrap()), expected);
    }
}
