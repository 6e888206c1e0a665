#![allow(dead_code)]

use proptest::prelude::*;
use symspace::rational::rat;
use symspace::{Rational, SequenceDescriptor, Symbol};

pub fn seq(pre: &[Symbol], per: &[Symbol]) -> SequenceDescriptor {
    SequenceDescriptor::new(pre.to_vec(), per.to_vec()).unwrap()
}

pub fn word(k: Symbol, len: std::ops::Range<usize>) -> impl Strategy<Value = Vec<Symbol>> {
    prop::collection::vec(0..k, len)
}

pub fn descriptor(k: Symbol) -> impl Strategy<Value = SequenceDescriptor> {
    (word(k, 0..6), word(k, 1..5)).prop_map(|(pre, per)| seq(&pre, &per))
}

/// Another presentation of the same point: part of the period moved into
/// the preperiod and the period repeated.
pub fn rewrite(x: &SequenceDescriptor, shift: usize, repeat: usize) -> SequenceDescriptor {
    let per = x.per();
    let mut pre = x.pre().to_vec();
    pre.extend((0..shift).map(|i| per[i % per.len()]));
    let rotated: Vec<Symbol> = (0..per.len()).map(|i| per[(i + shift) % per.len()]).collect();
    seq(&pre, &rotated.repeat(repeat + 1))
}

/// A descriptor together with a few other presentations of nearby or equal
/// points, so that equality cases are common.
pub fn related_triple(k: Symbol) -> impl Strategy<Value = [SequenceDescriptor; 3]> {
    (descriptor(k), prop::array::uniform2((0..6usize, 0..3usize, any::<bool>(), 0..8usize, word(k, 1..3))))
        .prop_map(|(x, tweaks)| {
            let derived = tweaks.map(|(shift, repeat, same, keep, tail)| {
                if same {
                    rewrite(&x, shift, repeat)
                } else {
                    seq(&x.prefix(keep), &tail)
                }
            });
            [x, derived[0].clone(), derived[1].clone()]
        })
}

pub fn nonneg_rational() -> impl Strategy<Value = Rational> {
    (0i64..20, 1i64..8).prop_map(|(n, d)| rat(n, d))
}

pub fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..20, 1i64..8).prop_map(|(n, d)| rat(n, d))
}

/// Positive weights summing to 1.
pub fn distribution(k: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(1i64..10, k).prop_map(|raw| {
        let total: i64 = raw.iter().sum();
        raw.into_iter().map(|r| rat(r, total)).collect()
    })
}
