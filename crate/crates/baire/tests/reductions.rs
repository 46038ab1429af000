use baire::problems::{dis_problem, id_problem, lpo_problem, SetExpr};
use baire::reductions::{self, disc_to_dis_reduction, dis_to_lpo, many_one_to_sw, reduction_to_disc};
use baire::{checks, verify_reduction, DigitMap, Flavor, Fuel, Machine, Witness};

#[test]
fn identity_witness_verifies() {
    let id = id_problem();
    let r = verify_reduction(&*id.oracle, &id, &Witness::identity(), 200, 12, Fuel(64), 1).unwrap();
    assert!(!r.refuted());
    assert_eq!(r.samples, 200);
}

#[test]
fn dis_to_lpo_verifies() {
    let r = verify_reduction(&*dis_problem().oracle, &lpo_problem(), &dis_to_lpo(), 200, 12, Fuel(64), 2).unwrap();
    assert!(!r.refuted(), "{r:?}");
}

#[test]
fn shifted_witness_is_refuted() {
    let id = id_problem();
    let bad = Witness {
        h: Machine::map(DigitMap::Affine { mul: 1, add: 1 }),
        k: Machine::identity(),
        flavor: Flavor::Strong,
    };
    let r = verify_reduction(&*id.oracle, &id, &bad, 50, 8, Fuel(64), 3).unwrap();
    assert!(r.refuted());
    assert_eq!(r.first_refutation.unwrap().sample, 0);
}

#[test]
fn lpo_without_realizer_is_an_error() {
    let bare = baire::ProblemBundle::new(lpo_problem().oracle);
    assert!(verify_reduction(&*id_problem().oracle, &bare, &Witness::identity(), 1, 4, Fuel(8), 0).is_err());
}

#[test]
fn many_one_checks_the_condition() {
    let even = SetExpr::parse("first%2=0").unwrap().oracle();
    let odd = SetExpr::parse("first%2=1").unwrap().oracle();
    assert!(many_one_to_sw(&DigitMap::Affine { mul: 1, add: 1 }, &even, &odd).is_ok());
    let e = many_one_to_sw(&DigitMap::Affine { mul: 1, add: 0 }, &even, &odd).unwrap_err();
    assert_eq!(e.n, 0);
}

#[test]
fn compilers_round_trip() {
    let d = reduction_to_disc(&disc_to_dis_reduction(&baire::problems::dis_discontinuity()));
    checks::discontinuity_on(&d, 5, 8, 9).unwrap();
    // the compiled map is K after a fixpoint
    let w = reductions::dis_to_lpo();
    match reduction_to_disc(&w).machine().kind() {
        baire::Kind::Compose(k, _) => assert_eq!(k, &w.k),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn witness_compilers_at_reduced_scale() {
    checks::witness_compilers(60, 10, 4).unwrap();
}
