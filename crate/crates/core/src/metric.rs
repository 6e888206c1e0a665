//! Ultrametrics whose closed balls are exactly the cylinders.
//!
//! For one-sided points `d(x, y) = r^m` where `m` is the number of leading
//! levels on which `x` and `y` agree, and `d(x, x) = 0`. For two-sided points
//! `d(x, y) = r^(1 + M)` where `M` is the largest `m >= -1` with agreement on
//! every `|l| <= m`. The ratio `r` lies strictly between 0 and 1.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, pow, rat, Rational};
use crate::space::{BiSequenceDescriptor, Cylinder, SequenceDescriptor};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UltrametricParams {
    ratio: Rational,
}

impl UltrametricParams {
    pub fn new(ratio: Rational) -> Result<Self> {
        if ratio <= Rational::zero() || ratio >= Rational::one() {
            return Err(Error::InvalidParameter(format!(
                "ratio {} must lie strictly between 0 and 1",
                format_rational(&ratio)
            )));
        }
        Ok(UltrametricParams { ratio })
    }

    pub fn ratio(&self) -> &Rational {
        &self.ratio
    }

    /// `ratio^m`, the radius of the depth-`m` ball.
    pub fn radius(&self, m: usize) -> Rational {
        pow(&self.ratio, m)
    }
}

impl Default for UltrametricParams {
    fn default() -> Self {
        UltrametricParams { ratio: rat(1, 2) }
    }
}

/// How far two points agree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Agreement {
    /// Agree on levels `1..=m` and differ at `m + 1`.
    Depth(usize),
    Equal,
}

pub fn agreement_depth(x: &SequenceDescriptor, y: &SequenceDescriptor) -> Agreement {
    match x.first_difference(y) {
        Some(l) => Agreement::Depth(l - 1),
        None => Agreement::Equal,
    }
}

pub fn distance(x: &SequenceDescriptor, y: &SequenceDescriptor, p: &UltrametricParams) -> Rational {
    match agreement_depth(x, y) {
        Agreement::Equal => Rational::zero(),
        Agreement::Depth(m) => p.radius(m),
    }
}

/// The closed ball of radius `ratio^m` around `center`, as a cylinder.
pub fn ball_to_cylinder(center: &SequenceDescriptor, m: usize) -> Cylinder {
    Cylinder::new(center.prefix(m))
}

/// `distance(center, y) <= ratio^m`, decided from the metric directly.
pub fn in_ball(center: &SequenceDescriptor, y: &SequenceDescriptor, m: usize, p: &UltrametricParams) -> bool {
    distance(center, y, p) <= p.radius(m)
}

/// Smallest `k >= 0` such that the points differ at level `k` or `-k`;
/// `None` when they are equal.
pub fn two_sided_disagreement(x: &BiSequenceDescriptor, y: &BiSequenceDescriptor) -> Option<u64> {
    let (lo, hi) = x.comparison_window(y);
    let reach = lo.unsigned_abs().max(hi.unsigned_abs());
    (0..=reach).find(|&k| {
        let k = k as i64;
        x.symbol_at(k) != y.symbol_at(k) || x.symbol_at(-k) != y.symbol_at(-k)
    })
}

pub fn two_sided_distance(x: &BiSequenceDescriptor, y: &BiSequenceDescriptor, p: &UltrametricParams) -> Rational {
    match two_sided_disagreement(x, y) {
        // agreement on |l| <= k - 1, so the exponent 1 + M is k
        Some(k) => p.radius(k as usize),
        None => Rational::zero(),
    }
}
