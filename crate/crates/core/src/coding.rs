//! The middle-thirds construction and the two coding maps from binary
//! sequences to the unit interval.
//!
//! `tau` reads a binary sequence as a ternary expansion with digits `0` and
//! `2`, landing in the Cantor set; `beta` reads it as a binary expansion.
//! Both are evaluated exactly on eventually periodic points: the preperiod
//! contributes a finite sum and the period a geometric series.
//!
//! Decoding uses long division. Rationals have eventually periodic
//! expansions, so the remainder sequence repeats and decoding terminates.
//! Where a rational has two expansions the canonical choices are:
//!
//! * `tau_decode` returns the expansion with digits in `{0, 2}` (at most one
//!   of the two qualifies);
//! * `beta_decode` returns the eventually-zero expansion for dyadic
//!   rationals in `[0, 1)` and the all-ones sequence for `1`.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, format_rational, in_unit_interval, int, pow, rat, Rational};
use crate::space::{LevelSystem, SequenceDescriptor, Symbol, DEFAULT_BUDGET};

/// A closed interval `[lo, hi]` with exact endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Interval {
    #[serde(with = "rational::as_string")]
    pub lo: Rational,
    #[serde(with = "rational::as_string")]
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        Interval { lo, hi }
    }

    pub fn length(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, q: &Rational) -> bool {
        self.lo <= *q && *q <= self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn is_disjoint_from(&self, other: &Interval) -> bool {
        self.hi < other.lo || other.hi < self.lo
    }
}

/// Which coding map to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CodingMap {
    Tau,
    Beta,
}

/// The `2^j` closed intervals of length `3^-j` making up stage `j` of the
/// middle-thirds construction, in increasing order.
///
/// Computed by repeatedly removing open middle thirds. Fails with
/// [`Error::BudgetExceeded`] once `2^j` passes [`DEFAULT_BUDGET`].
pub fn stage_intervals(j: usize) -> Result<Vec<Interval>> {
    let required = 1u128.checked_shl(j as u32).unwrap_or(u128::MAX);
    if j >= 128 || required > DEFAULT_BUDGET {
        return Err(Error::BudgetExceeded { required, budget: DEFAULT_BUDGET });
    }
    let mut stage = vec![Interval::new(int(0), int(1))];
    for _ in 0..j {
        stage = stage
            .into_iter()
            .flat_map(|iv| {
                let third = iv.length() / int(3);
                let left = Interval::new(iv.lo.clone(), &iv.lo + &third);
                let right = Interval::new(&iv.hi - &third, iv.hi);
                [left, right]
            })
            .collect();
    }
    Ok(stage)
}

/// A point of the space of binary sequences.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryPoint(SequenceDescriptor);

impl BinaryPoint {
    pub fn new(descriptor: SequenceDescriptor) -> Result<Self> {
        LevelSystem::binary().check_descriptor(&descriptor)?;
        Ok(BinaryPoint(descriptor))
    }

    pub fn from_parts(pre: Vec<Symbol>, per: Vec<Symbol>) -> Result<Self> {
        BinaryPoint::new(SequenceDescriptor::new(pre, per)?)
    }

    pub fn descriptor(&self) -> &SequenceDescriptor {
        &self.0
    }

    pub fn into_descriptor(self) -> SequenceDescriptor {
        self.0
    }

    pub fn canonical(&self) -> BinaryPoint {
        BinaryPoint(self.0.canonical())
    }

    pub fn same_point(&self, other: &BinaryPoint) -> bool {
        self.0.same_point(&other.0)
    }
}

/// Exact value of `sum_l digit_l / base^l` for `pre` followed by `per` repeated:
/// with `A`, `B` the integers spelled by `pre` and `per`,
/// `(A (base^p - 1) + B) / (base^k (base^p - 1))`.
fn expansion_value(pre: &[u8], per: &[u8], base: u32) -> Rational {
    let spell = |digits: &[u8]| {
        BigUint::from_radix_be(digits, base).map_or_else(BigInt::zero, BigInt::from)
    };
    let cycle = num_traits::pow(BigInt::from(base), per.len()) - 1;
    let numer = spell(pre) * &cycle + spell(per);
    let denom = num_traits::pow(BigInt::from(base), pre.len()) * cycle;
    rational::reduced(numer, denom)
}

/// `tau(x) = sum 2 x_l / 3^l`.
pub fn tau(x: &BinaryPoint) -> Rational {
    let d = x.descriptor();
    let twice = |w: &[Symbol]| w.iter().map(|&s| 2 * s as u8).collect::<Vec<_>>();
    expansion_value(&twice(d.pre()), &twice(d.per()), 3)
}

/// `beta(x) = sum x_l / 2^l`.
pub fn beta(x: &BinaryPoint) -> Rational {
    let d = x.descriptor();
    let bits = |w: &[Symbol]| w.iter().map(|&s| s as u8).collect::<Vec<_>>();
    expansion_value(&bits(d.pre()), &bits(d.per()), 2)
}

pub fn encode(map: CodingMap, x: &BinaryPoint) -> Rational {
    match map {
        CodingMap::Tau => tau(x),
        CodingMap::Beta => beta(x),
    }
}

/// Greedy base-`base` expansion of `q` in `[0, 1)` as (preperiod, period)
/// digit words. Terminating expansions come back with period `[0]`.
fn greedy_expansion(q: &Rational, base: u32) -> (Vec<u32>, Vec<u32>) {
    debug_assert!(*q >= Rational::zero() && *q < Rational::one());
    match (q.numer().to_u64(), q.denom().to_u64()) {
        (Some(n), Some(d)) if d < 1 << 56 => long_division(n, d, base as u64, |r, b, d| {
            let t = r * b;
            ((t / d) as u32, t % d)
        }),
        _ => long_division(q.numer().clone(), q.denom().clone(), BigInt::from(base), |r, b, d| {
            let (digit, next) = (r * b).div_rem(d);
            (digit.to_u32().expect("digit is below the base"), next)
        }),
    }
}

fn long_division<T: Clone + Eq + std::hash::Hash>(
    numer: T,
    denom: T,
    base: T,
    step: impl Fn(&T, &T, &T) -> (u32, T),
) -> (Vec<u32>, Vec<u32>) {
    let mut rem = numer;
    let mut seen: HashMap<T, usize> = HashMap::new();
    let mut digits = Vec::new();
    while !seen.contains_key(&rem) {
        seen.insert(rem.clone(), digits.len());
        let (digit, next) = step(&rem, &base, &denom);
        digits.push(digit);
        rem = next;
    }
    let start = seen[&rem];
    let per = digits.split_off(start);
    (digits, per)
}

fn check_unit(q: &Rational) -> Result<()> {
    if in_unit_interval(q) {
        Ok(())
    } else {
        Err(Error::OutOfUnitInterval(format_rational(q)))
    }
}

fn ternary_to_binary(digits: &[u32]) -> Option<Vec<Symbol>> {
    digits
        .iter()
        .map(|&d| match d {
            0 => Some(0),
            2 => Some(1),
            _ => None,
        })
        .collect()
}

/// Inverse of [`tau`] on the Cantor set: `Ok(None)` when `q` is not in it.
pub fn tau_decode(q: &Rational) -> Result<Option<BinaryPoint>> {
    check_unit(q)?;
    if q.is_one() {
        return Ok(Some(BinaryPoint(SequenceDescriptor::constant(1))));
    }
    let (pre, per) = greedy_expansion(q, 3);
    if let (Some(p), Some(r)) = (ternary_to_binary(&pre), ternary_to_binary(&per)) {
        return Ok(Some(BinaryPoint(SequenceDescriptor::new(p, r)?.canonical())));
    }
    // Triadic rationals also expand as ... (d-1) 2 2 2 ...
    if per != [0] {
        return Ok(None);
    }
    let Some(last) = pre.iter().rposition(|&d| d != 0) else {
        return Ok(None);
    };
    let mut alt = pre[..=last].to_vec();
    alt[last] -= 1;
    Ok(ternary_to_binary(&alt).map(|p| {
        BinaryPoint(SequenceDescriptor::new(p, vec![1]).expect("period is non-empty").canonical())
    }))
}

/// Canonical binary expansion of `q`; [`beta`] of the result is `q`.
pub fn beta_decode(q: &Rational) -> Result<BinaryPoint> {
    check_unit(q)?;
    if q.is_one() {
        return Ok(BinaryPoint(SequenceDescriptor::constant(1)));
    }
    let (pre, per) = greedy_expansion(q, 2);
    Ok(BinaryPoint(SequenceDescriptor::new(pre, per)?.canonical()))
}

/// `tau` image of the cylinder with the given binary prefix: the stage-`m`
/// interval `[tau(w 0 0 ...), tau(w 1 1 ...)]`.
pub fn cylinder_interval(prefix: &[Symbol]) -> Result<Interval> {
    LevelSystem::binary().check_prefix(prefix)?;
    let lo = tau(&BinaryPoint(SequenceDescriptor::new(prefix.to_vec(), vec![0])?));
    let hi = tau(&BinaryPoint(SequenceDescriptor::new(prefix.to_vec(), vec![1])?));
    Ok(Interval::new(lo, hi))
}

/// `beta` image of the cylinder with the given binary prefix:
/// `[k / 2^m, (k + 1) / 2^m]` where `k` is the prefix read in binary.
pub fn dyadic_interval(prefix: &[Symbol]) -> Result<Interval> {
    LevelSystem::binary().check_prefix(prefix)?;
    let k = prefix
        .iter()
        .fold(BigInt::zero(), |acc, &s| acc * 2 + BigInt::from(s));
    let denom = BigInt::one() << prefix.len();
    Ok(Interval::new(
        Rational::new(k.clone(), denom.clone()),
        Rational::new(k + 1, denom),
    ))
}

pub fn image_interval(map: CodingMap, prefix: &[Symbol]) -> Result<Interval> {
    match map {
        CodingMap::Tau => cylinder_interval(prefix),
        CodingMap::Beta => dyadic_interval(prefix),
    }
}

/// `1 / 3^j`, the length of a stage-`j` interval.
pub fn stage_length(j: usize) -> Rational {
    pow(&rat(1, 3), j)
}
