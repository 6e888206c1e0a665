//! Cylinder measures: point masses on finite products, product measures and
//! explicit measure trees, with consistency checks and pushforwards along
//! the coding maps.
//!
//! All masses are exact rationals, so additivity and consistency are checked
//! with equality rather than tolerances.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::coding::{CodingMap, Interval};
use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};
use crate::space::{disjointify, Cylinder, LevelSystem, Symbol, DEFAULT_BUDGET};

/// Anything that assigns masses to cylinders.
pub trait CylinderMeasure {
    fn system(&self) -> &LevelSystem;

    /// Deepest cylinder depth with a defined mass; `None` when every depth is.
    fn defined_depth(&self) -> Option<usize>;

    fn cylinder_mass(&self, prefix: &[Symbol]) -> Result<Rational>;

    fn total_mass(&self) -> Rational {
        self.cylinder_mass(&[]).expect("the whole space always has a mass")
    }

    /// Masses of all depth-`depth` cylinders in [`LevelSystem::words`] order.
    fn masses_at_depth(&self, depth: usize, budget: u128) -> Result<Vec<Rational>> {
        check_defined(self.defined_depth(), depth)?;
        self.system().check_budget(depth, budget)?;
        self.system().words(depth).map(|w| self.cylinder_mass(&w)).collect()
    }
}

fn check_defined(defined: Option<usize>, depth: usize) -> Result<()> {
    match defined {
        Some(d) if depth > d => Err(Error::DepthExceeded { requested: depth, defined: d }),
        _ => Ok(()),
    }
}

/// Optional validation applied when a measure is constructed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MeasureFlags {
    /// Every point (or weight) must carry positive mass.
    pub strictly_positive: bool,
    /// Total mass must be 1.
    pub probability: bool,
}

impl MeasureFlags {
    pub fn probability() -> Self {
        MeasureFlags { probability: true, ..Default::default() }
    }
}

fn check_mass(word: &[Symbol], mass: &Rational, flags: MeasureFlags) -> Result<()> {
    if mass.is_negative() {
        return Err(Error::NegativeMass { word: word.to_vec(), mass: format_rational(mass) });
    }
    if flags.strictly_positive && mass.is_zero() {
        return Err(Error::NotStrictlyPositive(word.to_vec()));
    }
    Ok(())
}

/// A measure on `E_1 x ... x E_n`: one mass per `n`-tuple.
///
/// As a cylinder measure it answers every depth up to `n` by summing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePointMeasure {
    system: LevelSystem,
    depth: usize,
    masses: Vec<Rational>,
}

impl FinitePointMeasure {
    /// `masses` lists the tuples in [`LevelSystem::words`] order.
    pub fn new(system: LevelSystem, depth: usize, masses: Vec<Rational>, flags: MeasureFlags) -> Result<Self> {
        system.check_budget(depth, DEFAULT_BUDGET)?;
        let expected = system.word_count(depth) as usize;
        if masses.len() != expected {
            return Err(Error::InvalidInput(format!(
                "{} masses given for {expected} tuples",
                masses.len()
            )));
        }
        for (rank, m) in masses.iter().enumerate() {
            check_mass(&system.word_at_rank(rank, depth), m, flags)?;
        }
        let total: Rational = masses.iter().sum();
        if flags.probability && !total.is_one() {
            return Err(Error::NotNormalized(format_rational(&total)));
        }
        Ok(FinitePointMeasure { system, depth, masses })
    }

    pub fn from_fn(
        system: LevelSystem,
        depth: usize,
        mass: impl Fn(&[Symbol]) -> Rational,
        flags: MeasureFlags,
    ) -> Result<Self> {
        system.check_budget(depth, DEFAULT_BUDGET)?;
        let masses = system.words(depth).map(|w| mass(&w)).collect();
        FinitePointMeasure::new(system, depth, masses, flags)
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn point_mass(&self, tuple: &[Symbol]) -> Result<Rational> {
        if tuple.len() != self.depth {
            return Err(Error::DepthMismatch { expected: self.depth, found: tuple.len() });
        }
        self.system.check_prefix(tuple)?;
        Ok(self.masses[self.system.word_rank(tuple)].clone())
    }
}

impl CylinderMeasure for FinitePointMeasure {
    fn system(&self) -> &LevelSystem {
        &self.system
    }

    fn defined_depth(&self) -> Option<usize> {
        Some(self.depth)
    }

    fn cylinder_mass(&self, prefix: &[Symbol]) -> Result<Rational> {
        check_defined(Some(self.depth), prefix.len())?;
        self.system.check_prefix(prefix)?;
        // the extensions of a prefix occupy one contiguous block of ranks
        let block = self.system.word_count_from(prefix.len() + 1, self.depth - prefix.len()) as usize;
        let start = self.system.word_rank(prefix) * block;
        Ok(self.masses[start..start + block].iter().sum())
    }
}

/// Independent per-level weights; the mass of a cylinder is the product of
/// the weights along its prefix.
///
/// The weight table list is reused past its end like an explicit level
/// system, so the repeated last table must total 1 for the infinite product
/// to be a measure. Leading tables may have any nonnegative total; the mass
/// of a cylinder then also carries the totals of the leading levels below
/// its depth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductMeasure {
    system: LevelSystem,
    weights: Vec<Vec<Rational>>,
    totals: Vec<Rational>,
}

impl ProductMeasure {
    pub fn new(system: LevelSystem, weights: Vec<Vec<Rational>>, flags: MeasureFlags) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidInput("no weight tables".into()));
        }
        let levels = weights.len().max(system.irregular_levels() + 1);
        for l in 1..=levels {
            let w = &weights[(l - 1).min(weights.len() - 1)];
            let size = system.size_at(l);
            if w.len() != size {
                return Err(Error::AlphabetSize { expected: w.len().to_string(), found: size });
            }
        }
        for w in &weights {
            for (s, m) in w.iter().enumerate() {
                check_mass(&[s as Symbol], m, flags)?;
            }
        }
        let totals: Vec<Rational> = weights.iter().map(|w| w.iter().sum()).collect();
        let tail = totals.last().expect("non-empty");
        if !tail.is_one() {
            return Err(Error::NotNormalized(format_rational(tail)));
        }
        if flags.probability {
            if let Some(t) = totals.iter().find(|t| !t.is_one()) {
                return Err(Error::NotNormalized(format_rational(t)));
            }
        }
        Ok(ProductMeasure { system, weights, totals })
    }

    /// Equal weights at every level.
    pub fn uniform(system: LevelSystem) -> Result<Self> {
        let levels = system.irregular_levels() + 1;
        let weights = (1..=levels)
            .map(|l| {
                let n = system.size_at(l);
                vec![Rational::new(BigInt::one(), BigInt::from(n)); n]
            })
            .collect();
        ProductMeasure::new(system, weights, MeasureFlags::probability())
    }

    /// Binary i.i.d. measure with `P(1) = p`.
    pub fn bernoulli(p: Rational) -> Result<Self> {
        let q = Rational::one() - &p;
        ProductMeasure::new(LevelSystem::binary(), vec![vec![q, p]], MeasureFlags::probability())
    }

    /// The same weight table at every level of a homogeneous system.
    pub fn iid(system: LevelSystem, weights: Vec<Rational>) -> Result<Self> {
        ProductMeasure::new(system, vec![weights], MeasureFlags::default())
    }

    pub fn weights_at(&self, level: usize) -> &[Rational] {
        &self.weights[level.saturating_sub(1).min(self.weights.len() - 1)]
    }

    pub fn weight_tables(&self) -> &[Vec<Rational>] {
        &self.weights
    }

    pub fn level_total(&self, level: usize) -> &Rational {
        &self.totals[level.saturating_sub(1).min(self.totals.len() - 1)]
    }

    /// Product of the stored level totals deeper than `depth`; unstored levels total 1.
    fn tail_factor(&self, depth: usize) -> Rational {
        self.totals.iter().skip(depth).product()
    }
}

impl CylinderMeasure for ProductMeasure {
    fn system(&self) -> &LevelSystem {
        &self.system
    }

    fn defined_depth(&self) -> Option<usize> {
        None
    }

    fn cylinder_mass(&self, prefix: &[Symbol]) -> Result<Rational> {
        self.system.check_prefix(prefix)?;
        let head: Rational = prefix
            .iter()
            .enumerate()
            .map(|(i, &s)| &self.weights_at(i + 1)[s as usize])
            .product();
        Ok(head * self.tail_factor(prefix.len()))
    }

    fn masses_at_depth(&self, depth: usize, budget: u128) -> Result<Vec<Rational>> {
        self.system.check_budget(depth, budget)?;
        let mut masses = vec![Rational::one()];
        for l in 1..=depth {
            let w = self.weights_at(l);
            masses = masses
                .iter()
                .flat_map(|m| w.iter().map(move |x| m * x))
                .collect();
        }
        let tail = self.tail_factor(depth);
        if !tail.is_one() {
            masses.iter_mut().for_each(|m| *m *= &tail);
        }
        Ok(masses)
    }
}

/// Explicit masses for every cylinder of depth at most `depth`.
///
/// All depths are stored, so consistency between a cylinder and its
/// children is a checkable property (see [`check_consistency`]) rather than
/// an assumption.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeMeasure {
    system: LevelSystem,
    depth: usize,
    /// `layers[d]` holds the depth-`d` masses in word order.
    layers: Vec<Vec<Rational>>,
}

/// A word whose children's masses do not add up to its own.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyViolation {
    pub word: Vec<Symbol>,
    pub mass: Rational,
    pub children_total: Rational,
}

impl TreeMeasure {
    /// Builds a tree from `mass`, checking totality and nonnegativity but not
    /// consistency.
    pub fn from_fn(system: LevelSystem, depth: usize, mut mass: impl FnMut(&[Symbol]) -> Result<Rational>) -> Result<Self> {
        system.check_budget(depth, DEFAULT_BUDGET)?;
        let mut layers = Vec::with_capacity(depth + 1);
        for d in 0..=depth {
            let layer = system
                .words(d)
                .map(|w| {
                    let m = mass(&w)?;
                    check_mass(&w, &m, MeasureFlags::default())?;
                    Ok(m)
                })
                .collect::<Result<Vec<_>>>()?;
            layers.push(layer);
        }
        Ok(TreeMeasure { system, depth, layers })
    }

    /// Every word of length at most `depth` must have an entry.
    pub fn from_map(system: LevelSystem, depth: usize, masses: &HashMap<Vec<Symbol>, Rational>) -> Result<Self> {
        for w in masses.keys() {
            if w.len() > depth {
                return Err(Error::DepthExceeded { requested: w.len(), defined: depth });
            }
            system.check_prefix(w)?;
        }
        TreeMeasure::from_fn(system, depth, |w| {
            masses.get(w).cloned().ok_or_else(|| Error::MissingMass(w.to_vec()))
        })
    }

    /// Like [`TreeMeasure::from_map`] but rejects inconsistent trees.
    pub fn consistent(self) -> Result<Self> {
        match check_consistency(&self).len() {
            0 => Ok(self),
            n => Err(Error::Inconsistent(n)),
        }
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn mass(&self, word: &[Symbol]) -> Result<&Rational> {
        check_defined(Some(self.depth), word.len())?;
        self.system.check_prefix(word)?;
        Ok(&self.layers[word.len()][self.system.word_rank(word)])
    }

    /// Replaces one mass, leaving every other entry alone.
    pub fn with_mass(mut self, word: &[Symbol], mass: Rational) -> Result<Self> {
        self.mass(word)?;
        check_mass(word, &mass, MeasureFlags::default())?;
        let rank = self.system.word_rank(word);
        self.layers[word.len()][rank] = mass;
        Ok(self)
    }

    /// The same tree cut off at `depth`.
    pub fn truncated(&self, depth: usize) -> Result<TreeMeasure> {
        check_defined(Some(self.depth), depth)?;
        Ok(TreeMeasure {
            system: self.system.clone(),
            depth,
            layers: self.layers[..=depth].to_vec(),
        })
    }

    /// `(word, mass)` for every stored word, shallowest first.
    pub fn entries(&self) -> impl Iterator<Item = (Vec<Symbol>, &Rational)> + '_ {
        self.layers.iter().enumerate().flat_map(move |(d, layer)| {
            layer
                .iter()
                .enumerate()
                .map(move |(rank, m)| (self.system.word_at_rank(rank, d), m))
        })
    }

    pub fn scaled(&self, factor: &Rational) -> Result<TreeMeasure> {
        TreeMeasure::from_fn(self.system.clone(), self.depth, |w| Ok(self.mass(w)? * factor))
    }
}

impl CylinderMeasure for TreeMeasure {
    fn system(&self) -> &LevelSystem {
        &self.system
    }

    fn defined_depth(&self) -> Option<usize> {
        Some(self.depth)
    }

    fn cylinder_mass(&self, prefix: &[Symbol]) -> Result<Rational> {
        self.mass(prefix).cloned()
    }

    fn masses_at_depth(&self, depth: usize, _budget: u128) -> Result<Vec<Rational>> {
        check_defined(Some(self.depth), depth)?;
        Ok(self.layers[depth].clone())
    }
}

/// Every internal word whose children's masses do not sum to its mass.
pub fn check_consistency(tree: &TreeMeasure) -> Vec<ConsistencyViolation> {
    let mut out = Vec::new();
    for d in 0..tree.depth {
        let fanout = tree.system.size_at(d + 1);
        for (rank, mass) in tree.layers[d].iter().enumerate() {
            let children = &tree.layers[d + 1][rank * fanout..(rank + 1) * fanout];
            let children_total: Rational = children.iter().sum();
            if children_total != *mass {
                out.push(ConsistencyViolation {
                    word: tree.system.word_at_rank(rank, d),
                    mass: mass.clone(),
                    children_total,
                });
            }
        }
    }
    out
}

/// Materializes any cylinder measure as a tree of the given depth.
pub fn measure_to_tree(mu: &dyn CylinderMeasure, depth: usize, budget: u128) -> Result<TreeMeasure> {
    check_defined(mu.defined_depth(), depth)?;
    mu.system().check_budget(depth, budget)?;
    let layers = (0..=depth)
        .map(|d| mu.masses_at_depth(d, budget))
        .collect::<Result<Vec<_>>>()?;
    Ok(TreeMeasure { system: mu.system().clone(), depth, layers })
}

pub fn product_to_tree(mu: &ProductMeasure, depth: usize, budget: u128) -> Result<TreeMeasure> {
    measure_to_tree(mu, depth, budget)
}

/// Mass of a finite union of cylinders, counting overlaps once.
pub fn clopen_mass(mu: &dyn CylinderMeasure, cylinders: &[Cylinder]) -> Result<Rational> {
    disjointify(cylinders, mu.system())?
        .iter()
        .map(|c| mu.cylinder_mass(c.prefix()))
        .sum()
}

/// Images of the depth-`m` cylinders under a coding map, with their masses.
///
/// `Tau` yields the stage-`m` intervals of the middle-thirds construction,
/// `Beta` the dyadic intervals `[k / 2^m, (k + 1) / 2^m]`.
pub fn pushforward_intervals(
    mu: &dyn CylinderMeasure,
    map: CodingMap,
    m: usize,
    budget: u128,
) -> Result<Vec<(Interval, Rational)>> {
    for l in 1..=m {
        let size = mu.system().size_at(l);
        if size != 2 {
            return Err(Error::AlphabetSize { expected: "2".into(), found: size });
        }
    }
    let masses = mu.masses_at_depth(m, budget)?;
    // tau reads bit b as ternary digit 2b, beta as binary digit b
    let (base, scale) = match map {
        CodingMap::Tau => (3u32, 2u32),
        CodingMap::Beta => (2u32, 1u32),
    };
    let denom = num_traits::pow(BigInt::from(base), m);
    Ok(masses
        .into_iter()
        .enumerate()
        .map(|(k, mass)| {
            let lo = (0..m).rev().fold(BigInt::zero(), |acc, shift| {
                acc * base + scale * ((k >> shift) as u32 & 1)
            });
            let hi = &lo + 1u32;
            let iv = Interval::new(Rational::new(lo, denom.clone()), Rational::new(hi, denom.clone()));
            (iv, mass)
        })
        .collect())
}

/// A measure of any supported kind, as read from JSON.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Measure {
    Point(FinitePointMeasure),
    Product(ProductMeasure),
    Tree(TreeMeasure),
}

impl Measure {
    fn inner(&self) -> &dyn CylinderMeasure {
        match self {
            Measure::Point(m) => m,
            Measure::Product(m) => m,
            Measure::Tree(m) => m,
        }
    }
}

impl CylinderMeasure for Measure {
    fn system(&self) -> &LevelSystem {
        self.inner().system()
    }

    fn defined_depth(&self) -> Option<usize> {
        self.inner().defined_depth()
    }

    fn cylinder_mass(&self, prefix: &[Symbol]) -> Result<Rational> {
        self.inner().cylinder_mass(prefix)
    }

    fn masses_at_depth(&self, depth: usize, budget: u128) -> Result<Vec<Rational>> {
        self.inner().masses_at_depth(depth, budget)
    }
}
