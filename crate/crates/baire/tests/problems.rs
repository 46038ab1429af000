use baire::problems::{
    self, certified_universal, chi_problem, dis_problem, id_problem, lpo_problem, nrng_problem, quotient_problem,
    totalize, word_lift,
};
use baire::{checks, encode_machine, Machine, ProblemOracle, SetExpr, Verdict, Word};
use proptest::prelude::*;

fn w(d: &[u64]) -> Word {
    Word::from_digits(d)
}

#[test]
fn dis_accepts_only_a_certified_mismatch() {
    let dis = dis_problem().oracle;
    // name of the identity interleaved with 5,5,…
    let q = encode_machine(&Machine::identity()).prefix(8);
    let p = baire::interleave_words(&q, &w(&[5; 8]));
    let out = certified_universal(&p);
    assert!(out.is_prefix_of(&w(&[5; 8])));
    assert_eq!(dis.graph_adj(&p, &w(&[5])), Verdict::Unknown);
    if !out.is_empty() {
        assert_eq!(dis.graph_adj(&p, &w(&[6])), Verdict::Accept);
    }
    assert_eq!(dis.dom_adj(&p), Verdict::Accept);
}

#[test]
fn lpo_answers_one_only_on_zeros() {
    let lpo = lpo_problem().oracle;
    assert_eq!(lpo.graph_adj(&w(&[0, 0, 3]), &w(&[0])), Verdict::Accept);
    assert_eq!(lpo.graph_adj(&w(&[0, 0, 3]), &w(&[1])), Verdict::Reject);
    assert_eq!(lpo.graph_adj(&w(&[0, 0, 0]), &w(&[1])), Verdict::Unknown);
    assert_eq!(lpo.graph_adj(&w(&[0]), &w(&[2])), Verdict::Reject);
}

#[test]
fn chi_and_quotient() {
    let even = SetExpr::parse("first%2=0").unwrap().oracle();
    let chi = chi_problem(even.clone());
    let r = chi.realizer.clone().unwrap();
    assert_eq!(r.apply_word(&w(&[4, 1, 1])), w(&[1, 1, 1]));
    assert_eq!(r.apply_word(&w(&[3, 1, 1])), w(&[0, 0, 0]));
    assert_eq!(chi.oracle.graph_adj(&w(&[4]), &w(&[1])), Verdict::Accept);

    let all = SetExpr::All.oracle();
    let q = quotient_problem(even, all).oracle;
    assert_eq!(q.graph_adj(&w(&[2]), &w(&[9])), Verdict::Accept);
    assert_eq!(q.graph_adj(&w(&[3]), &w(&[9])), Verdict::Reject);
    assert_eq!(q.graph_adj(&w(&[]), &w(&[9])), Verdict::Unknown);
}

#[test]
fn nrng_excludes_a_listed_index() {
    let n = nrng_problem().oracle;
    // p = 3 lists index 2, so A must miss 2; A(2)=0 settles it
    assert_eq!(n.graph_adj(&w(&[3]), &w(&[1, 1, 0])), Verdict::Accept);
    assert_eq!(n.graph_adj(&w(&[3]), &w(&[1, 1])), Verdict::Unknown);
    // answers are read through the sign map
    assert_eq!(n.graph_adj(&w(&[3]), &w(&[2, 7, 0])), Verdict::Accept);
}

#[test]
fn totalized_and_lifted() {
    let t = totalize(id_problem().oracle);
    assert_eq!(t.dom_adj(&w(&[7])), Verdict::Accept);
    assert_eq!(t.graph_adj(&w(&[1]), &w(&[2])), Verdict::Reject);
    let l = word_lift(id_problem().oracle);
    // word codes 1 and 3 decode to single digits 0 and 1
    assert_eq!(l.graph_adj(&w(&[1]), &w(&[1])), Verdict::Unknown);
    assert_eq!(l.graph_adj(&w(&[1]), &w(&[3])), Verdict::Reject);
}

#[test]
fn discontinuity_at_reduced_scale() {
    checks::dis_discontinuity(10, 12, 5).unwrap();
}

fn catalog() -> Vec<ProblemOracle> {
    let even = SetExpr::parse("first%2=0").unwrap().oracle();
    vec![
        id_problem().oracle,
        dis_problem().oracle,
        lpo_problem().oracle,
        nrng_problem().oracle,
        chi_problem(even.clone()).oracle,
        quotient_problem(even, SetExpr::parse("first=1|2").unwrap().oracle()).oracle,
        totalize(lpo_problem().oracle),
        problems::delta_problem(SetExpr::All.oracle()),
    ]
}

fn digits() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(0u64..4, 0..8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    /// A decided verdict survives extending either side.
    #[test]
    fn adjudicators_are_prefix_monotone(u in digits(), du in digits(), v in digits(), dv in digits()) {
        let (u, v) = (w(&u), w(&v));
        let mut u2 = u.clone();
        u2.extend_from(&w(&du));
        let mut v2 = v.clone();
        v2.extend_from(&w(&dv));
        for p in catalog() {
            let g = p.graph_adj(&u, &v);
            if g != Verdict::Unknown {
                prop_assert_eq!(g, p.graph_adj(&u2, &v2), "{} graph at {:?} {:?}", p.name(), u, v);
            }
            let d = p.dom_adj(&u);
            if d != Verdict::Unknown {
                prop_assert_eq!(d, p.dom_adj(&u2), "{} dom at {:?}", p.name(), u);
            }
        }
    }
}
