//! Integration of locally constant functions against cylinder measures.
//!
//! A [`StepFunction`] of depth `m` is constant on every depth-`m` cylinder,
//! so its integral is the finite sum of value times cylinder mass. Going
//! the other way, a nonnegative linear functional on step functions yields a
//! measure by evaluating it on cylinder indicators.
//!
//! General continuous functions cannot be integrated exactly from black-box
//! samples. [`approximate_integral`] instead returns the Riemann sum at depth
//! `m` together with an error bound derived from a caller-supplied modulus
//! of continuity.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::measure::{CylinderMeasure, TreeMeasure};
use crate::metric::UltrametricParams;
use crate::rational::{format_rational, int, Rational};
use crate::space::{Cylinder, LevelSystem, SequenceDescriptor, Symbol, DEFAULT_BUDGET};

/// A function constant on every depth-`depth` cylinder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepFunction {
    system: LevelSystem,
    depth: usize,
    /// one value per depth-`depth` word, in [`LevelSystem::words`] order
    values: Vec<Rational>,
}

impl StepFunction {
    pub fn new(system: LevelSystem, depth: usize, values: Vec<Rational>) -> Result<Self> {
        system.check_budget(depth, DEFAULT_BUDGET)?;
        let expected = system.word_count(depth) as usize;
        if values.len() != expected {
            return Err(Error::InvalidInput(format!(
                "{} values given for {expected} words of depth {depth}",
                values.len()
            )));
        }
        Ok(StepFunction { system, depth, values })
    }

    pub fn from_fn(system: LevelSystem, depth: usize, mut f: impl FnMut(&[Symbol]) -> Rational) -> Result<Self> {
        system.check_budget(depth, DEFAULT_BUDGET)?;
        let values = system.words(depth).map(|w| f(&w)).collect();
        StepFunction::new(system, depth, values)
    }

    pub fn constant(system: LevelSystem, depth: usize, c: Rational) -> Result<Self> {
        StepFunction::from_fn(system, depth, |_| c.clone())
    }

    pub fn system(&self) -> &LevelSystem {
        &self.system
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, word: &[Symbol]) -> Result<&Rational> {
        if word.len() != self.depth {
            return Err(Error::DepthMismatch { expected: self.depth, found: word.len() });
        }
        self.system.check_prefix(word)?;
        Ok(&self.values[self.system.word_rank(word)])
    }

    /// Value at a point: the value on the cylinder containing it.
    pub fn evaluate(&self, x: &SequenceDescriptor) -> Rational {
        self.values[self.system.word_rank(&x.prefix(self.depth))].clone()
    }

    pub fn entries(&self) -> impl Iterator<Item = (Vec<Symbol>, &Rational)> + '_ {
        self.system.words(self.depth).zip(&self.values)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.values.iter().all(|v| !v.is_negative())
    }

    pub fn scaled(&self, a: &Rational) -> StepFunction {
        StepFunction {
            values: self.values.iter().map(|v| v * a).collect(),
            ..self.clone()
        }
    }

    /// `a f + b h`, computed at the deeper of the two depths.
    pub fn linear_combination(a: &Rational, f: &StepFunction, b: &Rational, h: &StepFunction) -> Result<StepFunction> {
        let depth = f.depth.max(h.depth);
        if !f.system.agrees_with(&h.system, depth) {
            return Err(Error::IncompatibleSystems(depth));
        }
        let f = refine_step(f, depth)?;
        let h = refine_step(h, depth)?;
        let values = f.values.iter().zip(&h.values).map(|(x, y)| a * x + b * y).collect();
        StepFunction::new(f.system, depth, values)
    }
}

impl fmt::Display for StepFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "step[{}](", self.depth)?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(&format_rational(v))?;
        }
        f.write_str(")")
    }
}

/// The same function viewed at a deeper level: each deeper word takes the
/// value of its depth-`f.depth()` prefix.
pub fn refine_step(f: &StepFunction, depth: usize) -> Result<StepFunction> {
    if depth < f.depth {
        return Err(Error::DepthMismatch { expected: f.depth, found: depth });
    }
    if depth == f.depth {
        return Ok(f.clone());
    }
    f.system.check_budget(depth, DEFAULT_BUDGET)?;
    let block = f.system.word_count_from(f.depth + 1, depth - f.depth) as usize;
    let values = f
        .values
        .iter()
        .flat_map(|v| std::iter::repeat_n(v.clone(), block))
        .collect();
    StepFunction::new(f.system.clone(), depth, values)
}

/// 1 on the depth-`depth` words inside `c`, 0 elsewhere.
pub fn indicator(c: &Cylinder, depth: usize, system: &LevelSystem) -> Result<StepFunction> {
    if depth < c.depth() {
        return Err(Error::DepthMismatch { expected: c.depth(), found: depth });
    }
    system.check_prefix(c.prefix())?;
    StepFunction::from_fn(system.clone(), depth, |w| {
        if c.contains_word(w) {
            Rational::one()
        } else {
            Rational::zero()
        }
    })
}

/// `sum_w f(w) mu(N_w)` over the depth-`f.depth()` words.
pub fn integrate_step(f: &StepFunction, mu: &dyn CylinderMeasure) -> Result<Rational> {
    if !f.system.agrees_with(mu.system(), f.depth) {
        return Err(Error::IncompatibleSystems(f.depth));
    }
    let masses = mu.masses_at_depth(f.depth, DEFAULT_BUDGET)?;
    Ok(f.values.iter().zip(&masses).map(|(v, m)| v * m).sum())
}

/// Recovers cylinder masses from a functional on step functions:
/// `mass(w) = I(indicator(w))` for every word of length at most `depth`.
///
/// Linearity and positivity are not assumed. Every probe must be
/// nonnegative, each cylinder's value must equal the sum over its children,
/// and `I(0) = 0`, `I(2 * 1) = 2 I(1)`; any failure is reported as
/// [`Error::FunctionalViolation`].
pub fn measure_from_functional(
    functional: impl Fn(&StepFunction) -> Rational,
    system: &LevelSystem,
    depth: usize,
) -> Result<TreeMeasure> {
    system.check_budget(depth, DEFAULT_BUDGET)?;
    let one = StepFunction::constant(system.clone(), 0, int(1))?;
    let zero = StepFunction::constant(system.clone(), 0, int(0))?;
    if !functional(&zero).is_zero() {
        return Err(Error::FunctionalViolation("I(0) is not 0".into()));
    }
    let total = functional(&one);
    if functional(&one.scaled(&int(2))) != &total * int(2) {
        return Err(Error::FunctionalViolation("I(2 * 1) differs from 2 I(1)".into()));
    }
    let tree = TreeMeasure::from_fn(system.clone(), depth, |w| {
        let v = functional(&indicator(&Cylinder::new(w.to_vec()), w.len(), system)?);
        if v.is_negative() {
            return Err(Error::FunctionalViolation(format!(
                "negative value {} on the indicator of {w:?}",
                format_rational(&v)
            )));
        }
        Ok(v)
    })?;
    if let Some(v) = crate::measure::check_consistency(&tree).first() {
        return Err(Error::FunctionalViolation(format!(
            "indicator of {:?} maps to {} but its children sum to {}",
            v.word,
            format_rational(&v.mass),
            format_rational(&v.children_total)
        )));
    }
    Ok(tree)
}

/// A modulus of continuity `omega`: `|g(x) - g(y)| <= omega(d(x, y))`.
///
/// Only the radii actually queried are checked: they must lie in `(0, 1]`,
/// the bound must be nonnegative, and shrinking the radius must not grow
/// the bound.
pub struct ModulusFunction {
    omega: Box<dyn Fn(&Rational) -> Rational + Send + Sync>,
}

impl ModulusFunction {
    pub fn new(omega: impl Fn(&Rational) -> Rational + Send + Sync + 'static) -> Self {
        ModulusFunction { omega: Box::new(omega) }
    }

    /// `omega(r) = c r`, for `c`-Lipschitz functions.
    pub fn lipschitz(c: Rational) -> Self {
        ModulusFunction::new(move |r| &c * r)
    }

    pub fn bound(&self, radius: &Rational) -> Result<Rational> {
        if !radius.is_positive() || *radius > Rational::one() {
            return Err(Error::InvalidModulus(format!(
                "radius {} outside (0, 1]",
                format_rational(radius)
            )));
        }
        let b = (self.omega)(radius);
        if b.is_negative() {
            return Err(Error::InvalidModulus(format!(
                "negative bound {} at radius {}",
                format_rational(&b),
                format_rational(radius)
            )));
        }
        Ok(b)
    }
}

impl fmt::Debug for ModulusFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("ModulusFunction")
    }
}

/// A Riemann sum with a certified error bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Approximation {
    pub value: Rational,
    pub error_bound: Rational,
}

/// The point `w 0 0 0 ...` at which `approximate_integral` samples the
/// cylinder of `w`.
pub fn zero_extension(word: &[Symbol]) -> SequenceDescriptor {
    SequenceDescriptor::new(word.to_vec(), vec![0]).expect("period is non-empty")
}

/// Depth-`m` Riemann sum of a function known through its values at the
/// zero-extended points ([`zero_extension`]) of each depth-`m` cylinder.
///
/// `sample(w)` must return the function's value at `w 0 0 ...`, and the
/// caller warrants `|g(x) - g(y)| <= omega(d(x, y))` for the metric with
/// ratio `params.ratio()`. Two points of one depth-`m` cylinder are within
/// `ratio^m`, so the true integral against the probability measure `mu` lies
/// within `omega(ratio^m)` of the returned value.
pub fn approximate_integral(
    sample: impl Fn(&[Symbol]) -> Rational,
    omega: &ModulusFunction,
    mu: &dyn CylinderMeasure,
    m: usize,
    params: &UltrametricParams,
) -> Result<Approximation> {
    let total = mu.total_mass();
    if !total.is_one() {
        return Err(Error::NotNormalized(format_rational(&total)));
    }
    let mut error_bound = omega.bound(&params.radius(0))?;
    for k in 1..=m {
        let next = omega.bound(&params.radius(k))?;
        if next > error_bound {
            return Err(Error::InvalidModulus(format!(
                "bound grows from {} to {} as the radius shrinks",
                format_rational(&error_bound),
                format_rational(&next)
            )));
        }
        error_bound = next;
    }
    let masses = mu.masses_at_depth(m, DEFAULT_BUDGET)?;
    let value = mu
        .system()
        .words(m)
        .zip(&masses)
        .map(|(w, mass)| sample(&w) * mass)
        .sum();
    Ok(Approximation { value, error_bound })
}
