//! Calculus identities on random cochains, over associative and
//! non-associative products.

use std::fs;

use preoperad_core::{load_algebra, AlgebraSpec, Calculus, Cochain, Defect, EndoOperad, Error, PreOperad, Result};
use proptest::prelude::*;

fn fixture(name: &str) -> AlgebraSpec {
    let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    load_algebra(&fs::read_to_string(path).unwrap(), None).unwrap()
}

fn calc(name: &str) -> Calculus<EndoOperad> {
    let spec = fixture(name);
    Calculus::new(spec.operad(), spec.mu()).unwrap()
}

/// A defect must vanish unless some term lies in negative degree.
fn holds(d: Result<Defect<Cochain>>) -> bool {
    match d {
        Ok(d) => d.holds(),
        Err(Error::NegativeDegree(_)) => true,
        Err(e) => panic!("{e}"),
    }
}

fn algebra() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec!["dual_numbers.json", "nonassociative.json"])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn binary_identities(name in algebra(), seed in any::<u64>(), p in 0usize..4, q in 0usize..4) {
        let c = calc(name);
        let f = c.operad().random(p, seed).unwrap();
        let g = c.operad().random(q, seed ^ 1).unwrap();
        prop_assert!(holds(c.antisymmetry(&f, &g)));
        prop_assert!(holds(c.total_deviation_identity(&f, &g)));
        prop_assert!(holds(c.delta_bracket_derivation(&f, &g)));
        prop_assert!(holds(c.cup_derivation(&f, &g)));
        prop_assert!(holds(c.cup_tribrace(&f, &g)));
        prop_assert!(holds(c.delta_squared(&f)));
        prop_assert!(holds(c.delta_as_bracket(&f)));
    }

    #[test]
    fn ternary_identities(name in algebra(), seed in any::<u64>(), p in 0usize..4, q in 0usize..4, r in 0usize..3) {
        let c = calc(name);
        let h = c.operad().random(p, seed).unwrap();
        let f = c.operad().random(q, seed ^ 1).unwrap();
        let g = c.operad().random(r, seed ^ 2).unwrap();
        prop_assert!(holds(c.getzler(&h, &f, &g)));
        prop_assert!(holds(c.gerstenhaber(&h, &f, &g)));
        prop_assert!(holds(c.jacobi(&h, &f, &g)));
        prop_assert!(holds(c.tribrace_deviation_identity(&h, &f, &g)));
        prop_assert!(holds(c.bracket_deviation_identity(&h, &f, &g)));
        prop_assert!(holds(c.right_translation(&h, &f, &g)));
        prop_assert!(holds(c.cup_associator(&h, &f, &g)));
        for d in c.composition_relations(&h, &f, &g).unwrap() {
            prop_assert!(d.holds(), "{:?}", d.witness());
        }
    }

    /// With `μ² = 0` the cup product is associative and `δ² = 0`.
    #[test]
    fn associative_consequences(seed in any::<u64>(), p in 0usize..3, q in 0usize..3, r in 0usize..3) {
        let c = calc("matrix_m2.json");
        prop_assert!(c.operad().is_zero(c.formal_associator()));
        let f = c.operad().random(p, seed).unwrap();
        let g = c.operad().random(q, seed ^ 1).unwrap();
        let h = c.operad().random(r, seed ^ 2).unwrap();
        prop_assert!(c.cup_associativity_defect(&f, &g, &h).unwrap().is_zero());
        prop_assert!(c.delta(&c.delta(&f).unwrap()).unwrap().is_zero());
    }
}

#[test]
fn formal_associator_detects_non_associativity() {
    assert!(calc("dual_numbers.json").formal_associator().is_zero());
    assert!(!calc("nonassociative.json").formal_associator().is_zero());
}

#[test]
fn stated_cup_associator_fails_for_odd_middle_degree() {
    let c = calc("nonassociative.json");
    let op = c.operad();
    let (f, g, h) = (op.random(0, 1).unwrap(), op.random(1, 2).unwrap(), op.random(0, 3).unwrap());
    let lhs = c.cup_associativity_defect(&f, &g, &h).unwrap();
    let rhs = c.tetrabrace(c.formal_associator(), &f, &g, &h).unwrap();
    assert!(!lhs.is_zero());
    assert_eq!(lhs, rhs.neg());
    assert!(c.cup_associator(&f, &g, &h).unwrap().holds());
}
