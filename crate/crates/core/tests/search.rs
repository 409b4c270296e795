use resolvd::classify::{e_verdict, Status};
use resolvd::constructions::construct_t28;
use resolvd::design::DesignSetting;
use resolvd::fixtures;
use resolvd::optimality::criterion_e;
use resolvd::search::{enumerate, interchange_search, EnumerationSpec, InterchangeSpec, SearchCriterion};

#[test]
fn interchange_reaches_the_theorem28_value() {
    let built = construct_t28(9, 5, None).unwrap().to_design().unwrap();
    let target = criterion_e(&built).unwrap().to_f64();
    let s = DesignSetting::new(9, 5, 5, 4).unwrap();
    let mut spec = InterchangeSpec::new(s, SearchCriterion::E, 0);
    spec.restarts = 10;
    let res = interchange_search(&spec).unwrap();
    assert!((res.best_f64() - target).abs() < 1e-9, "{} vs {target}", res.best_f64());
}

#[test]
fn interchange_does_not_beat_the_certified_fixture() {
    let (_, file) = &fixtures::grouped_arrays()[2];
    let d = file.to_design().unwrap();
    let v = e_verdict(&d).unwrap();
    assert_eq!((v.status, v.witness.as_deref()), (Status::Optimal, Some("Theorem 14")));
    let certified = criterion_e(&d).unwrap().to_f64();
    let res = interchange_search(&InterchangeSpec::new(d.setting(), SearchCriterion::E, 7)).unwrap();
    assert!(res.best_f64() >= certified - 1e-9);
}

#[test]
fn fixing_the_first_replicate_on_spot_checks() {
    for (v, r, k1) in [(6, 3, 3), (7, 3, 4), (8, 3, 5)] {
        let s = DesignSetting::new(v, r, k1, v - k1).unwrap();
        for c in [SearchCriterion::E, SearchCriterion::A, SearchCriterion::F] {
            let mut fixed = EnumerationSpec::new(s, c);
            fixed.force = true;
            let mut free = fixed.clone();
            free.fix_first_replicate = false;
            let a = enumerate(&fixed).unwrap();
            let b = enumerate(&free).unwrap();
            assert!((a.best_f64() - b.best_f64()).abs() < 1e-12, "{s} {c}");
        }
    }
}
