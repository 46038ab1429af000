use baire::sample::{stock_machines, Sampler};
use baire::smn::smn_modulus;
use baire::*;
use proptest::prelude::*;

const D: usize = 16;

fn w(d: &[u64]) -> Word {
    Word::from_digits(d)
}

#[test]
fn smn_of_projections() {
    let mut s = Sampler::new(1);
    for _ in 0..10 {
        let (q, p) = (s.stream(8), s.stream(8));
        let odd = smn_transform(&Machine::odd()).apply(&q);
        assert_eq!(eval_name(&odd, p.clone(), Fuel(D as u64)).output, p.prefix(D));
        let even = smn_transform(&Machine::even()).apply(&q);
        assert_eq!(eval_name(&even, p.clone(), Fuel(D as u64)).output, q.prefix(D));
    }
}

#[test]
fn const_section_examples() {
    let x = Stream::literal(w(&[2, 7, 1, 8]), Tail::Count(Nat::small(3)));
    let p = interleave(&encode_machine(&Machine::identity()), &x);
    let rp = const_section(&p);
    let mut s = Sampler::new(2);
    let a = universal(&interleave(&rp, &s.stream(4)), Fuel(D as u64)).output;
    let b = universal(&interleave(&rp, &s.stream(4)), Fuel(D as u64)).output;
    assert_eq!(a, x.prefix(D));
    assert_eq!(a, b);

    let silent = interleave(&encode_machine(&Machine::constant(Word::empty())), &x);
    let rs = const_section(&silent);
    assert_eq!(eval_name(&rs, s.stream(4), Fuel(64)).output, Word::empty());
}

#[test]
fn fixpoint_of_a_constant_transformer() {
    let mut s = Sampler::new(3);
    let c = encode_machine(&Machine::compose(Machine::prepend(w(&[1])), Machine::odd()));
    let p = encode_machine(&Machine::section(Machine::even(), c.clone()));
    let tp = fixpoint(&p);
    for _ in 0..20 {
        let x = s.stream(4);
        let lhs = eval_name(&tp, x.clone(), Fuel(D as u64)).output;
        let rhs = eval_name(&c, x, Fuel(D as u64)).output;
        assert!(lhs.comparable(&rhs), "{lhs} vs {rhs}");
        assert_eq!(lhs.take(D), rhs.take(D));
    }
}

#[test]
fn fixpoint_of_the_identity_is_total() {
    let tp = fixpoint(&encode_machine(&Machine::identity()));
    assert_eq!(tp.prefix(D).len(), D);
}

#[test]
fn param_fixpoint_examples() {
    let mut s = Sampler::new(4);
    let even = param_fixpoint(&Machine::even());
    let constant = param_fixpoint(&Machine::repeat(w(&[6])));
    for _ in 0..10 {
        let q = s.name();
        assert_eq!(universal(&even.apply(&q), Fuel(D as u64)).output.take(D), q.prefix(D));
        assert_eq!(universal(&constant.apply(&q), Fuel(D as u64)).output.take(D), Word::repeat(&Nat::small(6), D));
    }
    assert_eq!(stock_machines().len(), 9);
}

#[test]
fn quine_reproduces_itself() {
    let tp = fixpoint(&encode_machine(&Machine::smn(Machine::even())));
    let mut s = Sampler::new(5);
    for _ in 0..5 {
        assert_eq!(eval_name(&tp, s.stream(4), Fuel(D as u64)).output, tp.prefix(D));
    }
}

#[test]
fn contracts_at_reduced_scale() {
    checks::smn_contract(30, 16, 31).unwrap();
    checks::recursion_theorems(5, 10, 16, 32).unwrap();
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn smn_modulus_bounds_dependence(seed in any::<u64>(), n in 0u64..40, noise in 0u64..1000) {
        let mut s = Sampler::new(seed);
        let f = s.machine(2);
        let q = s.stream(8);
        let m = smn_modulus(n) as usize;
        let tail = Stream::literal(Word::empty(), Tail::Count(Nat::small(noise)));
        let q2 = tuple_project(&tuple_merge("perturb", {
            let (q, tail) = (q.clone(), tail.clone());
            move |_| Stream::from_fn("cut", {
                let (q, tail) = (q.clone(), tail.clone());
                move |i| if (i as usize) < m { q.digit(i) } else { tail.digit(i) }
            })
        }), 0);
        let sq = smn_transform(&f);
        prop_assert_eq!(sq.apply(&q).prefix(n as usize + 1), sq.apply(&q2).prefix(n as usize + 1));
    }

    #[test]
    fn smn_contract_holds(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let f = s.machine(2);
        let (q, p) = (s.stream(8), s.stream(8));
        let lhs = eval_name(&smn_transform(&f).apply(&q), p.clone(), Fuel(D as u64)).output;
        let rhs = eval::eval(&Term::apply(f, Term::interleave(Term::stream(q), Term::stream(p))), D as u64);
        prop_assert_eq!(lhs, rhs);
    }
}
