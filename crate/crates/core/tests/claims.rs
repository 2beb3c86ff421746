//! End-to-end behaviour of the claim harness.

use irrtree::claims::{
    evaluate_all, evaluate_claim, find_claim, recheck, registry, EvaluationConfig, EvaluationContext, Instance, Outcome,
    Scalar, Witness,
};
use irrtree::construct::star;
use irrtree::format::write_graph6;

fn small() -> EvaluationConfig {
    EvaluationConfig::new(4, 8, 0)
}

#[test]
fn sandwich_and_extrema_claims_hold() {
    for id in ["C2", "C5", "C8", "C31"] {
        let v = evaluate_claim(&find_claim(id).unwrap(), EvaluationConfig::new(4, 10, 0)).unwrap();
        assert_eq!(v.fails, 0, "{id}");
        assert!(v.first_counterexample.is_none());
    }
}

#[test]
fn sigma_maximum_claim_fails_on_the_star() {
    let v = evaluate_claim(&find_claim("C9").unwrap(), small()).unwrap();
    assert_eq!(v.fails, v.domain_size);
    let s6 = write_graph6(&star(6).unwrap());
    let ce = v.counterexamples.iter().find(|c| c.witness_g6.as_deref() == Some(&s6)).expect("S_6 witness");
    assert_eq!(ce.instance, Instance::Order { n: 6 });
    let sides = [ce.values.left.clone(), ce.values.right.clone()];
    assert!(sides.contains(&Scalar::Int(80)) && sides.contains(&Scalar::Int(20)));
}

#[test]
fn tallies_add_up() {
    let report = evaluate_all(small()).unwrap();
    assert_eq!(report.claims.len(), registry().len());
    for v in &report.claims {
        assert_eq!(v.holds + v.fails + v.vacuous, v.domain_size, "{}", v.id);
        assert!(v.counterexamples.len() as u64 <= v.fails);
        assert_eq!(v.first_counterexample.as_ref(), v.counterexamples.first());
    }
}

#[test]
fn recorded_counterexamples_recheck_in_isolation() {
    let report = evaluate_all(small()).unwrap();
    for v in &report.claims {
        let claim = find_claim(&v.id).unwrap();
        for ce in &v.counterexamples {
            let Outcome::Fails(f) = recheck(&claim, &ce.instance).unwrap() else {
                panic!("{}: {:?} no longer fails", v.id, ce.instance);
            };
            assert_eq!(f.values, ce.values, "{}", v.id);
            match f.witness {
                Witness::Graph(g) => assert_eq!(ce.witness_g6.as_deref(), Some(g.as_str())),
                Witness::Pair(a, b) => assert_eq!(ce.witness_pair_g6, Some([a, b])),
                Witness::None => assert!(ce.witness_g6.is_none() && ce.witness_pair_g6.is_none()),
            }
        }
    }
}

#[test]
fn recheck_rejects_mismatched_instances() {
    let claim = find_claim("C5").unwrap();
    let wrong = Instance::Tree { graph6: "Ch".into() };
    assert!(recheck(&claim, &wrong).is_err());
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    let run = |threads| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| {
            let ctx = EvaluationContext::build(small()).unwrap();
            serde_json::to_string(&ctx.evaluate_claims(&registry()).body()).unwrap()
        })
    };
    let one = run(1);
    assert_eq!(one, run(4));
    assert_eq!(one, run(1));
}

#[test]
fn seed_only_moves_the_random_sequence_pairs() {
    let a = evaluate_all(EvaluationConfig::new(4, 6, 0)).unwrap();
    let b = evaluate_all(EvaluationConfig::new(4, 6, 1)).unwrap();
    for (x, y) in a.claims.iter().zip(&b.claims) {
        if x.id != "C29" {
            assert_eq!((x.holds, x.fails, x.vacuous), (y.holds, y.fails, y.vacuous), "{}", x.id);
        }
    }
}

#[test]
fn invalid_ranges_are_rejected() {
    assert!(evaluate_all(EvaluationConfig::new(1, 5, 0)).is_err());
    assert!(evaluate_all(EvaluationConfig::new(6, 5, 0)).is_err());
    assert!(evaluate_all(EvaluationConfig::new(4, 15, 0)).is_err());
    assert!(find_claim("C0").is_err());
}
