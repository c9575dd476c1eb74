use detmor_core::determined::{
    auslander_table, fan_is_epi, im_hom, is_left_determined, is_right_determined, represent_pair,
    right_equivalent, Fan,
};
use detmor_core::linalg::Field;
use detmor_core::quiver::{Quiver, QuiverCategory};
use detmor_core::suites::{Instance, RightEquivalenceSuite, Suite, SuiteContext};
use detmor_core::tube::{NilpotentPair, TubeCategory, TubeMorphism};
use detmor_core::{Category, Opposite};
use proptest::prelude::*;

fn tube() -> TubeCategory {
    TubeCategory::new(Field::prime(2))
}

/// All morphisms between tube objects of length at most 3, by index.
fn morphisms(cat: &TubeCategory) -> Vec<TubeMorphism> {
    let objs = cat.enumerate_objects(3).unwrap();
    let mut out = Vec::new();
    for x in &objs {
        for y in &objs {
            out.extend(cat.enumerate_hom(x, y).unwrap());
        }
    }
    out
}

/// Vector-space duality: `(V, N) -> (V*, Nᵀ)`.
fn dual_object(x: &NilpotentPair) -> NilpotentPair {
    NilpotentPair::new(x.operator().transpose()).unwrap()
}

fn dual_morphism(f: &TubeMorphism) -> TubeMorphism {
    TubeMorphism::new(
        dual_object(f.target()),
        dual_object(f.source()),
        f.matrix().transpose(),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn false_verdicts_persist(k in 0usize..990, c_len in 0usize..=2, extra in 1usize..3) {
        let cat = tube();
        let alpha = &morphisms(&cat)[k];
        let c = if c_len == 0 { cat.zero_object() } else { cat.jordan(c_len) };
        let fan = Fan::single(&cat, alpha);
        let l = c_len + 2;
        if !is_right_determined(&cat, &fan, &c, l).unwrap().is_determined() {
            prop_assert!(!is_right_determined(&cat, &fan, &c, l + extra).unwrap().is_determined());
        }
    }

    #[test]
    fn left_oracle_is_the_right_oracle_on_duals(k in 0usize..990, c_len in 0usize..=2) {
        let cat = tube();
        let beta = &morphisms(&cat)[k];
        let c = if c_len == 0 { cat.zero_object() } else { cat.jordan(c_len) };
        let bound = 5;
        let left = is_left_determined(&cat, &Fan::single(&Opposite(&cat), beta), &c, bound).unwrap();
        let dual = dual_morphism(beta);
        let right = is_right_determined(&cat, &Fan::single(&cat, &dual), &dual_object(&c), bound).unwrap();
        prop_assert_eq!(left.is_determined(), right.is_determined());
    }
}

#[test]
fn right_equivalence_preserves_epis() {
    let cat = tube();
    for y in cat.enumerate_objects(2).unwrap() {
        let mut fans = Vec::new();
        for t in cat.pool(3).unwrap() {
            for f in cat.enumerate_hom(&t, &y).unwrap() {
                fans.push(Fan::single(&cat, &f));
            }
        }
        for a in &fans {
            for b in &fans {
                if right_equivalent(&cat, a, b) {
                    assert_eq!(fan_is_epi(&cat, a), fan_is_epi(&cat, b));
                }
            }
        }
    }
}

#[test]
fn representers_round_trip() {
    let cat = tube();
    let objs = cat.enumerate_objects(2).unwrap();
    for c in &objs {
        for y in &objs {
            let bound = y.dim() + c.partition().max_part() + 1;
            for row in auslander_table(&cat, c, y, bound).unwrap().rows {
                let raw = represent_pair(&cat, c, y, &row.submodule, bound).unwrap();
                assert_eq!(im_hom(&cat, c, &raw), row.submodule);
                assert!(is_right_determined(&cat, &raw, c, bound)
                    .unwrap()
                    .is_determined());
                assert!(right_equivalent(&cat, &raw, &row.representative));
            }
        }
    }
}

#[test]
fn lemma_pairs_on_both_instances() {
    let suite = RightEquivalenceSuite { pairs: 60 };
    for inst in [
        Instance::Tube(TubeCategory::new(Field::prime(3))),
        Instance::Quiver(QuiverCategory::new(Field::prime(3), Quiver::linear_a(3))),
    ] {
        let out = suite.run(&SuiteContext::new(inst).with_seed(7)).unwrap();
        assert!(out.passed, "{:?}", out.lines);
        assert_eq!(out.checks, 120);
    }
}
