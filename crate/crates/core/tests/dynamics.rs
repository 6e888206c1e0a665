mod common;

use common::{descriptor, seq, word};
use proptest::prelude::*;
use symspace::dynamics::{self, EStarBoundary, OpTable, TermwiseStructure};
use symspace::{Alphabet, BiSequenceDescriptor, LevelSystem, SequenceDescriptor, Symbol};

fn z(n: usize) -> OpTable {
    OpTable::cyclic_group(n).unwrap()
}

/// Z/3 at level 1, then Z/2 with identity 1 written multiplicatively.
fn mixed() -> TermwiseStructure {
    let flipped = OpTable::from_fn(Alphabet::binary(), |a, b| 1 - ((1 - a) ^ (1 - b)))
        .unwrap()
        .into_group()
        .unwrap();
    TermwiseStructure::new(vec![z(3), flipped]).unwrap()
}

fn in_system(x: SequenceDescriptor, sys: &LevelSystem) -> Option<SequenceDescriptor> {
    sys.check_descriptor(&x).ok().map(|_| x)
}

fn structures() -> Vec<TermwiseStructure> {
    vec![
        TermwiseStructure::homogeneous(z(3)).unwrap(),
        TermwiseStructure::homogeneous(OpTable::left_projection(3).unwrap()).unwrap(),
        mixed(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn termwise_op_is_associative(x in descriptor(2), y in descriptor(2), w in descriptor(2), pick in 0..3usize) {
        let s = &structures()[pick];
        let sys = s.level_system();
        let (Some(x), Some(y), Some(w)) = (in_system(x, &sys), in_system(y, &sys), in_system(w, &sys)) else {
            return Ok(());
        };
        let op = |a: &SequenceDescriptor, b: &SequenceDescriptor| dynamics::termwise_op(a, b, s).unwrap();
        prop_assert!(op(&op(&x, &y), &w).same_point(&op(&x, &op(&y, &w))));
    }

    #[test]
    fn termwise_op_is_symbolwise(x in descriptor(3), y in descriptor(3)) {
        let s = TermwiseStructure::homogeneous(z(3)).unwrap();
        let p = dynamics::termwise_op(&x, &y, &s).unwrap();
        for l in 1..60 {
            prop_assert_eq!(p.symbol_at(l), (x.symbol_at(l) + y.symbol_at(l)) % 3);
        }
    }

    #[test]
    fn group_laws_lift(x in descriptor(2)) {
        let s = mixed();
        let Some(x) = in_system(x, &s.level_system()) else { return Ok(()) };
        let e = s.identity_sequence().unwrap();
        prop_assert_eq!(e.prefix(3), vec![0, 1, 1]);
        let inv = dynamics::termwise_inverse(&x, &s).unwrap();
        prop_assert!(dynamics::termwise_op(&x, &e, &s).unwrap().same_point(&x));
        prop_assert!(dynamics::termwise_op(&e, &x, &s).unwrap().same_point(&x));
        prop_assert!(dynamics::termwise_op(&x, &inv, &s).unwrap().same_point(&e));
        prop_assert!(dynamics::termwise_op(&inv, &x, &s).unwrap().same_point(&e));
    }

    #[test]
    fn preimages_shift_back(y in descriptor(3)) {
        let sys = LevelSystem::homogeneous(Alphabet::numbered(3).unwrap());
        let pre = dynamics::shift_preimages(&y, &sys).unwrap();
        prop_assert_eq!(pre.len(), 3);
        for (a, x) in pre.iter().enumerate() {
            prop_assert_eq!(x.symbol_at(1), a as Symbol);
            prop_assert!(dynamics::shift_one_sided(x, &sys).unwrap().same_point(&y));
        }
    }

    #[test]
    fn two_sided_shift_is_invertible(l in word(3, 1..4), c in word(3, 0..5), r in word(3, 1..4), o in -8i64..8) {
        let x = BiSequenceDescriptor::new(l, c, r, o).unwrap();
        prop_assert!(dynamics::unshift_two_sided(&dynamics::shift_two_sided(&x)).same_point(&x));
        prop_assert!(dynamics::shift_two_sided(&dynamics::unshift_two_sided(&x)).same_point(&x));
        let s = dynamics::shift_two_sided(&x);
        for i in -15..15 {
            prop_assert_eq!(s.symbol_at(i), x.symbol_at(i + 1));
        }
    }

    #[test]
    fn basepoint_space_is_closed(c1 in word(3, 0..5), r1 in word(3, 1..4), o1 in -6i64..6,
                                 c2 in word(3, 0..5), r2 in word(3, 1..4), o2 in -6i64..6) {
        // the basepoint 0 is the identity of Z/3
        let alphabet = Alphabet::numbered(3).unwrap().with_basepoint(0).unwrap();
        let x = BiSequenceDescriptor::new(vec![0], c1, r1, o1).unwrap();
        let y = BiSequenceDescriptor::new(vec![0], c2, r2, o2).unwrap();
        prop_assert!(dynamics::in_e_star(&x, &alphabet).unwrap().is_some());
        let p = dynamics::termwise_op_two_sided(&x, &y, &z(3)).unwrap();
        let boundary = dynamics::in_e_star(&p, &alphabet).unwrap();
        prop_assert!(boundary.is_some());
        if let Some(EStarBoundary::Finite(b)) = boundary {
            prop_assert!((b - 20..=b).all(|l| p.symbol_at(l) == 0));
            prop_assert_ne!(p.symbol_at(b + 1), 0);
        }
        for l in -20..20 {
            prop_assert_eq!(p.symbol_at(l), (x.symbol_at(l) + y.symbol_at(l)) % 3);
        }
    }
}

#[test]
fn locality_holds_for_every_valid_structure() {
    for s in structures() {
        if s.level_system().is_homogeneous() {
            for m in 0..=4 {
                assert!(dynamics::locality_check(&s, m).unwrap());
            }
        } else {
            assert!(dynamics::locality_check(&s, 2).is_err());
        }
    }
}

#[test]
fn non_basepoint_tails_leave_the_space() {
    let alphabet = Alphabet::binary().with_basepoint(0).unwrap();
    let x = BiSequenceDescriptor::new(vec![1, 0], vec![], vec![0], 0).unwrap();
    assert_eq!(dynamics::in_e_star(&x, &alphabet).unwrap(), None);
    assert!(dynamics::in_e_star(&x, &Alphabet::binary()).is_err());
}

#[test]
fn orbit_of_a_shifted_period() {
    let sys = LevelSystem::binary();
    let o = dynamics::orbit(&seq(&[0, 1], &[0, 1, 1]), 7, &sys).unwrap();
    // 0 1 (0 1 1)^inf = 0 (1 0 1)^inf
    assert_eq!((o.preperiod, o.cycle), (1, 3));
    assert!(o.points[7].same_point(&o.points[4]));
}
