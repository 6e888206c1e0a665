//! Alphabets, graded product spaces, finitely described points and cylinders.
//!
//! A point of the sequence space is a sequence `x_1, x_2, ...` with `x_l`
//! drawn from the alphabet of level `l`. Levels are 1-indexed everywhere in
//! the public API. Symbols are stored as indices into their level's
//! alphabet; labels only matter for I/O.
//!
//! Points are represented by [`SequenceDescriptor`]s: a finite preperiod
//! followed by a period repeated forever. Equality of points, agreement
//! depth and the like are then decidable by unrolling a bounded number of
//! levels.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::lcm;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a symbol within its level's alphabet.
pub type Symbol = u32;

/// Upper bound on the number of words any enumeration will materialize.
pub const DEFAULT_BUDGET: u128 = 1 << 20;

/// External name of a symbol: a small integer or a string.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Int(i64),
    Str(String),
}

impl Label {
    /// Integers become [`Label::Int`], anything else a string label.
    pub fn from_text(text: &str) -> Label {
        text.parse::<i64>()
            .map(Label::Int)
            .unwrap_or_else(|_| Label::Str(text.to_string()))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Int(n) => write!(f, "{n}"),
            Label::Str(s) => f.write_str(s),
        }
    }
}

/// A finite, non-empty, duplicate-free set of symbols with an optional basepoint.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    labels: Vec<Label>,
    basepoint: Option<Symbol>,
}

impl Alphabet {
    pub fn new(labels: Vec<Label>, basepoint: Option<Symbol>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet is empty".into()));
        }
        let distinct: BTreeSet<&Label> = labels.iter().collect();
        if distinct.len() != labels.len() {
            return Err(Error::InvalidAlphabet("duplicate labels".into()));
        }
        if let Some(b) = basepoint {
            if b as usize >= labels.len() {
                return Err(Error::InvalidAlphabet(format!(
                    "basepoint {b} out of range for {} symbols",
                    labels.len()
                )));
            }
        }
        Ok(Alphabet { labels, basepoint })
    }

    /// Symbols labelled `0, 1, ..., size - 1`.
    pub fn numbered(size: usize) -> Result<Self> {
        Alphabet::new((0..size as i64).map(Label::Int).collect(), None)
    }

    pub fn binary() -> Self {
        Alphabet::numbered(2).expect("two symbols")
    }

    /// One symbol per character, e.g. `"01"` or `"abc"`.
    pub fn from_compact(chars: &str) -> Result<Self> {
        Alphabet::new(
            chars.chars().map(|c| Label::from_text(&c.to_string())).collect(),
            None,
        )
    }

    pub fn with_basepoint(self, basepoint: Symbol) -> Result<Self> {
        Alphabet::new(self.labels, Some(basepoint))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, symbol: Symbol) -> Option<&Label> {
        self.labels.get(symbol as usize)
    }

    pub fn index_of(&self, label: &Label) -> Option<Symbol> {
        self.labels.iter().position(|l| l == label).map(|i| i as Symbol)
    }

    /// Looks a label up by its text form, so `"1"` finds `Label::Int(1)`.
    pub fn index_of_text(&self, text: &str) -> Option<Symbol> {
        self.labels
            .iter()
            .position(|l| l.to_string() == text)
            .map(|i| i as Symbol)
    }

    pub fn basepoint(&self) -> Option<Symbol> {
        self.basepoint
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> {
        0..self.labels.len() as Symbol
    }

    pub fn contains(&self, symbol: Symbol) -> bool {
        (symbol as usize) < self.labels.len()
    }

    /// True when every label prints as a single character.
    pub fn is_compact(&self) -> bool {
        self.labels.iter().all(|l| l.to_string().chars().count() == 1)
    }
}

/// The alphabets `E_1, E_2, ...` of a graded product space.
///
/// An explicit list covers levels `1..=n`; every level past `n` reuses the
/// last alphabet, so the system is defined at all levels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LevelSystem {
    Homogeneous(Alphabet),
    Explicit(Vec<Alphabet>),
}

impl LevelSystem {
    pub fn homogeneous(alphabet: Alphabet) -> Self {
        LevelSystem::Homogeneous(alphabet)
    }

    pub fn binary() -> Self {
        LevelSystem::Homogeneous(Alphabet::binary())
    }

    pub fn explicit(levels: Vec<Alphabet>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::InvalidAlphabet("level list is empty".into()));
        }
        Ok(LevelSystem::Explicit(levels))
    }

    /// Alphabet of level `level` (1-indexed; 0 is treated as 1).
    pub fn alphabet(&self, level: usize) -> &Alphabet {
        match self {
            LevelSystem::Homogeneous(a) => a,
            LevelSystem::Explicit(levels) => {
                let i = level.saturating_sub(1).min(levels.len() - 1);
                &levels[i]
            }
        }
    }

    pub fn size_at(&self, level: usize) -> usize {
        self.alphabet(level).len()
    }

    /// Number of leading levels that may differ from the final, repeated alphabet.
    pub fn irregular_levels(&self) -> usize {
        match self {
            LevelSystem::Homogeneous(_) => 0,
            LevelSystem::Explicit(levels) => levels.len() - 1,
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.uniform_alphabet().is_some()
    }

    /// The single alphabet used at every level, if there is one.
    pub fn uniform_alphabet(&self) -> Option<&Alphabet> {
        match self {
            LevelSystem::Homogeneous(a) => Some(a),
            LevelSystem::Explicit(levels) => {
                let first = &levels[0];
                levels.iter().all(|a| a == first).then_some(first)
            }
        }
    }

    /// True when both systems use the same alphabets on levels `1..=depth`.
    pub fn agrees_with(&self, other: &LevelSystem, depth: usize) -> bool {
        (1..=depth).all(|l| self.alphabet(l) == other.alphabet(l))
    }

    pub fn check_symbol(&self, level: usize, symbol: Symbol) -> Result<()> {
        let size = self.size_at(level);
        if (symbol as usize) < size {
            Ok(())
        } else {
            Err(Error::SymbolOutOfRange { level: level as i64, symbol, size })
        }
    }

    /// Checks a word placed at levels `start_level, start_level + 1, ...`.
    pub fn check_word_at(&self, start_level: usize, symbols: &[Symbol]) -> Result<()> {
        symbols
            .iter()
            .enumerate()
            .try_for_each(|(i, &s)| self.check_symbol(start_level + i, s))
    }

    pub fn check_prefix(&self, prefix: &[Symbol]) -> Result<()> {
        self.check_word_at(1, prefix)
    }

    /// Validates every level of the point, including all the levels the
    /// period visits before the alphabets become constant.
    pub fn check_descriptor(&self, x: &SequenceDescriptor) -> Result<()> {
        self.check_prefix(&x.pre)?;
        let horizon = x.pre.len().max(self.irregular_levels()) + x.per.len();
        (x.pre.len() + 1..=horizon).try_for_each(|l| self.check_symbol(l, x.symbol_at(l)))
    }

    /// Number of words on levels `1..=depth`, saturating at `u128::MAX`.
    pub fn word_count(&self, depth: usize) -> u128 {
        self.word_count_from(1, depth)
    }

    pub fn word_count_from(&self, start_level: usize, len: usize) -> u128 {
        (start_level..start_level + len)
            .fold(1u128, |acc, l| acc.saturating_mul(self.size_at(l) as u128))
    }

    pub fn check_budget(&self, depth: usize, budget: u128) -> Result<()> {
        let required = self.word_count(depth);
        if required > budget {
            Err(Error::BudgetExceeded { required, budget })
        } else {
            Ok(())
        }
    }

    /// All words on levels `1..=depth` in lexicographic order.
    pub fn words(&self, depth: usize) -> Words<'_> {
        self.words_from(1, depth)
    }

    /// All words on levels `start_level..start_level + len` in lexicographic order.
    pub fn words_from(&self, start_level: usize, len: usize) -> Words<'_> {
        Words {
            system: self,
            start_level,
            current: Some(vec![0; len]),
        }
    }

    /// Position of `word` in [`LevelSystem::words`] order (mixed radix).
    pub fn word_rank(&self, word: &[Symbol]) -> usize {
        word.iter()
            .enumerate()
            .fold(0usize, |acc, (i, &s)| acc * self.size_at(i + 1) + s as usize)
    }

    /// Inverse of [`LevelSystem::word_rank`] for words of length `depth`.
    pub fn word_at_rank(&self, mut rank: usize, depth: usize) -> Vec<Symbol> {
        let mut word = vec![0; depth];
        for l in (1..=depth).rev() {
            let size = self.size_at(l);
            word[l - 1] = (rank % size) as Symbol;
            rank /= size;
        }
        word
    }
}

/// Lexicographic odometer over words of a fixed length.
pub struct Words<'a> {
    system: &'a LevelSystem,
    start_level: usize,
    current: Option<Vec<Symbol>>,
}

impl Iterator for Words<'_> {
    type Item = Vec<Symbol>;

    fn next(&mut self) -> Option<Vec<Symbol>> {
        let word = self.current.take()?;
        let mut next = word.clone();
        for i in (0..next.len()).rev() {
            let size = self.system.size_at(self.start_level + i) as Symbol;
            if next[i] + 1 < size {
                next[i] += 1;
                self.current = Some(next);
                break;
            }
            next[i] = 0;
        }
        Some(word)
    }
}

/// A finite word occupying levels `start_level, start_level + 1, ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    start_level: i64,
    symbols: Vec<Symbol>,
}

impl Word {
    pub fn new(start_level: i64, symbols: Vec<Symbol>) -> Self {
        Word { start_level, symbols }
    }

    /// A word starting at level 1.
    pub fn prefix(symbols: Vec<Symbol>) -> Self {
        Word { start_level: 1, symbols }
    }

    pub fn start_level(&self) -> i64 {
        self.start_level
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.symbols
    }
}

/// The standard neighborhood fixed by a prefix: all points that begin with it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cylinder {
    prefix: Vec<Symbol>,
}

impl Cylinder {
    pub fn new(prefix: Vec<Symbol>) -> Self {
        Cylinder { prefix }
    }

    /// The depth-0 cylinder, i.e. the whole space.
    pub fn whole() -> Self {
        Cylinder { prefix: Vec::new() }
    }

    pub fn from_word(word: Word) -> Result<Self> {
        if word.start_level != 1 {
            return Err(Error::InvalidLevel(word.start_level));
        }
        Ok(Cylinder { prefix: word.symbols })
    }

    pub fn prefix(&self) -> &[Symbol] {
        &self.prefix
    }

    pub fn depth(&self) -> usize {
        self.prefix.len()
    }

    pub fn contains(&self, x: &SequenceDescriptor) -> bool {
        self.prefix
            .iter()
            .enumerate()
            .all(|(i, &s)| x.symbol_at(i + 1) == s)
    }

    /// True when `word` (starting at level 1) lies inside this cylinder.
    pub fn contains_word(&self, word: &[Symbol]) -> bool {
        word.len() >= self.prefix.len() && word[..self.prefix.len()] == self.prefix[..]
    }

    /// One child per symbol of level `depth + 1`.
    pub fn children(&self, system: &LevelSystem) -> Vec<Cylinder> {
        system
            .alphabet(self.depth() + 1)
            .symbols()
            .map(|s| {
                let mut prefix = self.prefix.clone();
                prefix.push(s);
                Cylinder { prefix }
            })
            .collect()
    }

    /// Every depth-`depth` cylinder inside this one, in lexicographic order.
    pub fn refine_to(&self, system: &LevelSystem, depth: usize) -> Vec<Cylinder> {
        if depth <= self.depth() {
            return vec![self.clone()];
        }
        system
            .words_from(self.depth() + 1, depth - self.depth())
            .map(|tail| {
                let mut prefix = self.prefix.clone();
                prefix.extend(tail);
                Cylinder { prefix }
            })
            .collect()
    }
}

pub fn cylinder_contains(c: &Cylinder, x: &SequenceDescriptor) -> bool {
    c.contains(x)
}

pub fn cylinder_children(c: &Cylinder, system: &LevelSystem) -> Vec<Cylinder> {
    c.children(system)
}

/// Rewrites a finite union of cylinders as pairwise-disjoint cylinders of the
/// common maximum depth, sorted lexicographically.
pub fn disjointify(cylinders: &[Cylinder], system: &LevelSystem) -> Result<Vec<Cylinder>> {
    let Some(depth) = cylinders.iter().map(Cylinder::depth).max() else {
        return Ok(Vec::new());
    };
    let mut required = 0u128;
    for c in cylinders {
        system.check_prefix(c.prefix())?;
        required = required
            .saturating_add(system.word_count_from(c.depth() + 1, depth - c.depth()));
    }
    if required > DEFAULT_BUDGET {
        return Err(Error::BudgetExceeded { required, budget: DEFAULT_BUDGET });
    }
    let refined: BTreeSet<Cylinder> = cylinders
        .iter()
        .flat_map(|c| c.refine_to(system, depth))
        .collect();
    Ok(refined.into_iter().collect())
}

/// An eventually periodic point: `pre` followed by `per` repeated forever.
///
/// The derived `PartialEq` is structural. Use [`SequenceDescriptor::same_point`]
/// to compare points, or compare [`SequenceDescriptor::canonical`] forms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SequenceDescriptor {
    pre: Vec<Symbol>,
    per: Vec<Symbol>,
}

impl SequenceDescriptor {
    pub fn new(pre: Vec<Symbol>, per: Vec<Symbol>) -> Result<Self> {
        if per.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        Ok(SequenceDescriptor { pre, per })
    }

    /// Constructs and validates against `system`.
    pub fn in_system(pre: Vec<Symbol>, per: Vec<Symbol>, system: &LevelSystem) -> Result<Self> {
        let x = SequenceDescriptor::new(pre, per)?;
        system.check_descriptor(&x)?;
        Ok(x)
    }

    pub fn constant(symbol: Symbol) -> Self {
        SequenceDescriptor { pre: Vec::new(), per: vec![symbol] }
    }

    pub fn pre(&self) -> &[Symbol] {
        &self.pre
    }

    pub fn per(&self) -> &[Symbol] {
        &self.per
    }

    /// Symbol at level `level`.
    ///
    /// # Panics
    ///
    /// Levels start at 1; `level == 0` panics.
    pub fn symbol_at(&self, level: usize) -> Symbol {
        assert!(level >= 1, "levels are 1-indexed");
        if level <= self.pre.len() {
            self.pre[level - 1]
        } else {
            self.per[(level - self.pre.len() - 1) % self.per.len()]
        }
    }

    /// The first `depth` symbols.
    pub fn prefix(&self, depth: usize) -> Vec<Symbol> {
        (1..=depth).map(|l| self.symbol_at(l)).collect()
    }

    /// Number of levels after which two points that still agree agree forever.
    pub fn comparison_horizon(&self, other: &SequenceDescriptor) -> usize {
        self.pre.len() + other.pre.len() + lcm(self.per.len(), other.per.len())
    }

    /// First level at which the points differ, or `None` if they are equal.
    pub fn first_difference(&self, other: &SequenceDescriptor) -> Option<usize> {
        (1..=self.comparison_horizon(other)).find(|&l| self.symbol_at(l) != other.symbol_at(l))
    }

    pub fn same_point(&self, other: &SequenceDescriptor) -> bool {
        self.first_difference(other).is_none()
    }

    /// The unique representation with primitive period and shortest preperiod.
    pub fn canonical(&self) -> SequenceDescriptor {
        let p = self.per.len();
        let period = (1..=p)
            .find(|&d| p.is_multiple_of(d) && (0..p).all(|i| self.per[i] == self.per[i % d]))
            .unwrap_or(p);
        let mut per = self.per[..period].to_vec();
        let mut pre = self.pre.clone();
        while let Some(&last) = pre.last() {
            if last != *per.last().expect("period is non-empty") {
                break;
            }
            pre.pop();
            per.rotate_right(1);
        }
        SequenceDescriptor { pre, per }
    }
}

pub fn symbol_at(x: &SequenceDescriptor, level: usize) -> Symbol {
    x.symbol_at(level)
}

pub fn descriptor_equal(x: &SequenceDescriptor, y: &SequenceDescriptor) -> bool {
    x.same_point(y)
}

/// A doubly infinite, eventually periodic point in both directions.
///
/// `center[i]` sits at level `origin_offset + i`. Left of the center the
/// `left_period` repeats toward minus infinity, with its last symbol adjacent
/// to the center; right of the center `right_period` repeats toward plus
/// infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BiSequenceDescriptor {
    left_period: Vec<Symbol>,
    center: Vec<Symbol>,
    right_period: Vec<Symbol>,
    origin_offset: i64,
}

impl BiSequenceDescriptor {
    pub fn new(
        left_period: Vec<Symbol>,
        center: Vec<Symbol>,
        right_period: Vec<Symbol>,
        origin_offset: i64,
    ) -> Result<Self> {
        if left_period.is_empty() || right_period.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        Ok(BiSequenceDescriptor { left_period, center, right_period, origin_offset })
    }

    pub fn constant(symbol: Symbol) -> Self {
        BiSequenceDescriptor {
            left_period: vec![symbol],
            center: Vec::new(),
            right_period: vec![symbol],
            origin_offset: 0,
        }
    }

    pub fn left_period(&self) -> &[Symbol] {
        &self.left_period
    }

    pub fn center(&self) -> &[Symbol] {
        &self.center
    }

    pub fn right_period(&self) -> &[Symbol] {
        &self.right_period
    }

    pub fn origin_offset(&self) -> i64 {
        self.origin_offset
    }

    /// The center as a word at its levels.
    pub fn center_word(&self) -> Word {
        Word::new(self.origin_offset, self.center.clone())
    }

    /// First level of the center.
    pub fn left_edge(&self) -> i64 {
        self.origin_offset
    }

    /// One past the last level of the center.
    pub fn right_edge(&self) -> i64 {
        self.origin_offset + self.center.len() as i64
    }

    pub fn symbol_at(&self, level: i64) -> Symbol {
        let rel = level - self.origin_offset;
        let n = self.center.len() as i64;
        if rel < 0 {
            let len = self.left_period.len() as i64;
            self.left_period[(len - 1 - (-rel - 1) % len) as usize]
        } else if rel < n {
            self.center[rel as usize]
        } else {
            let len = self.right_period.len() as i64;
            self.right_period[((rel - n) % len) as usize]
        }
    }

    /// A window of levels outside of which both points are periodic with a
    /// common period on each side; agreement on it implies equality.
    pub fn comparison_window(&self, other: &BiSequenceDescriptor) -> (i64, i64) {
        let left = lcm(self.left_period.len(), other.left_period.len()) as i64;
        let right = lcm(self.right_period.len(), other.right_period.len()) as i64;
        (
            self.left_edge().min(other.left_edge()) - left,
            self.right_edge().max(other.right_edge()) + right,
        )
    }

    pub fn same_point(&self, other: &BiSequenceDescriptor) -> bool {
        let (lo, hi) = self.comparison_window(other);
        (lo..hi).all(|l| self.symbol_at(l) == other.symbol_at(l))
    }

    pub fn check_alphabet(&self, alphabet: &Alphabet) -> Result<()> {
        let all = self.left_period.iter().chain(&self.center).chain(&self.right_period);
        match all.copied().find(|&s| !alphabet.contains(s)) {
            Some(symbol) => Err(Error::SymbolOutOfRange {
                level: self.origin_offset,
                symbol,
                size: alphabet.len(),
            }),
            None => Ok(()),
        }
    }

    /// Same symbols with every level index moved by `delta`.
    pub fn relabeled(&self, delta: i64) -> BiSequenceDescriptor {
        BiSequenceDescriptor { origin_offset: self.origin_offset + delta, ..self.clone() }
    }
}

/// A depth-`d` prefix shared by a cluster of input words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cluster {
    pub prefix: Word,
    pub indices: Vec<usize>,
}

/// Finite-depth pigeonhole step of the diagonal subsequence argument: among
/// `points` (equal-depth words from level 1) find a depth-`d` prefix shared
/// by at least `ceil(N / prod_{l <= d} |E_l|)` of them.
///
/// The most popular prefix is returned; ties go to the lexicographically
/// smallest.
pub fn pigeonhole_cluster(points: &[Word], d: usize) -> Result<Cluster> {
    let first = points
        .first()
        .ok_or_else(|| Error::InvalidParameter("at least one point is required".into()))?;
    let m = first.len();
    for p in points {
        if p.start_level() != 1 {
            return Err(Error::InvalidLevel(p.start_level()));
        }
        if p.len() != m {
            return Err(Error::DepthMismatch { expected: m, found: p.len() });
        }
    }
    if d > m {
        return Err(Error::DepthExceeded { requested: d, defined: m });
    }
    let mut groups: BTreeMap<&[Symbol], Vec<usize>> = BTreeMap::new();
    for (i, p) in points.iter().enumerate() {
        groups.entry(&p.symbols()[..d]).or_default().push(i);
    }
    let mut best: Option<(&[Symbol], Vec<usize>)> = None;
    for (prefix, indices) in groups {
        if best.as_ref().is_none_or(|(_, b)| indices.len() > b.len()) {
            best = Some((prefix, indices));
        }
    }
    let (prefix, indices) = best.expect("points is non-empty");
    Ok(Cluster { prefix: Word::prefix(prefix.to_vec()), indices })
}

/// Repeats [`pigeonhole_cluster`] at depths `1..=depth`, each time within the
/// survivors of the previous step. The prefixes are nested, which is the
/// finite shadow of extracting a convergent subsequence.
pub fn nested_clusters(points: &[Word], depth: usize) -> Result<Vec<Cluster>> {
    let mut survivors: Vec<usize> = (0..points.len()).collect();
    let mut out = Vec::with_capacity(depth);
    for d in 1..=depth {
        let subset: Vec<Word> = survivors.iter().map(|&i| points[i].clone()).collect();
        let cluster = pigeonhole_cluster(&subset, d)?;
        survivors = cluster.indices.iter().map(|&j| survivors[j]).collect();
        out.push(Cluster { prefix: cluster.prefix, indices: survivors.clone() });
    }
    Ok(out)
}
