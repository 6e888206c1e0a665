//! Shift maps and termwise (semi)group structure on sequence spaces.

use num_integer::lcm;

use crate::error::{Error, Result};
use crate::space::{Alphabet, BiSequenceDescriptor, LevelSystem, SequenceDescriptor, Symbol};

/// A finite binary operation given by its Cayley table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpTable {
    alphabet: Alphabet,
    table: Vec<Vec<Symbol>>,
    identity: Option<Symbol>,
    inverse: Option<Vec<Symbol>>,
}

/// Outcome of brute-force checks on an [`OpTable`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpTableReport {
    pub associative: bool,
    pub has_identity: bool,
    pub is_group: bool,
    /// A two-sided identity, when one exists.
    pub identity: Option<Symbol>,
    /// First triple `(a, b, c)` with `(ab)c != a(bc)`, in lexicographic order.
    pub counterexample: Option<(Symbol, Symbol, Symbol)>,
}

impl OpTable {
    /// `table[a][b]` is `a * b`. The table must be total on the alphabet.
    pub fn new(alphabet: Alphabet, table: Vec<Vec<Symbol>>) -> Result<Self> {
        let n = alphabet.len();
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidTable(format!("table must be {n} x {n}")));
        }
        if let Some(&bad) = table.iter().flatten().find(|&&s| s as usize >= n) {
            return Err(Error::InvalidTable(format!("entry {bad} is not a symbol")));
        }
        Ok(OpTable { alphabet, table, identity: None, inverse: None })
    }

    pub fn from_fn(alphabet: Alphabet, op: impl Fn(Symbol, Symbol) -> Symbol) -> Result<Self> {
        let table = alphabet
            .symbols()
            .map(|a| alphabet.symbols().map(|b| op(a, b)).collect())
            .collect();
        OpTable::new(alphabet, table)
    }

    /// Addition modulo `n`, with identity and inverses filled in.
    pub fn cyclic_group(n: usize) -> Result<Self> {
        let m = n as Symbol;
        OpTable::from_fn(Alphabet::numbered(n)?, |a, b| (a + b) % m)?.into_group()
    }

    /// `a * b = a`.
    pub fn left_projection(n: usize) -> Result<Self> {
        OpTable::from_fn(Alphabet::numbered(n)?, |a, _| a)
    }

    /// Declares `identity`, checking `e a = a e = a` for every `a`.
    pub fn with_identity(mut self, identity: Symbol) -> Result<Self> {
        if !self.alphabet.contains(identity) {
            return Err(Error::InvalidTable(format!("identity {identity} is not a symbol")));
        }
        if !self.is_identity(identity) {
            return Err(Error::InvalidTable(format!("{identity} is not a two-sided identity")));
        }
        self.identity = Some(identity);
        Ok(self)
    }

    /// Declares inverses (`inverse[a]` is `a^-1`); requires an identity.
    pub fn with_inverse(mut self, inverse: Vec<Symbol>) -> Result<Self> {
        let e = self.identity.ok_or(Error::MissingIdentity)?;
        if inverse.len() != self.alphabet.len() {
            return Err(Error::InvalidTable("inverse map must cover every symbol".into()));
        }
        for (a, &b) in inverse.iter().enumerate() {
            let a = a as Symbol;
            if !self.alphabet.contains(b) || self.apply(a, b) != e || self.apply(b, a) != e {
                return Err(Error::InvalidTable(format!("{b} is not an inverse of {a}")));
            }
        }
        self.inverse = Some(inverse);
        Ok(self)
    }

    /// Finds the identity and inverses by search; fails unless the table is a group.
    pub fn into_group(self) -> Result<Self> {
        let report = validate_op_table(&self);
        if let Some((a, b, c)) = report.counterexample {
            return Err(Error::NotAssociative(a, b, c));
        }
        let e = report.identity.ok_or(Error::MissingIdentity)?;
        if !report.is_group {
            return Err(Error::MissingInverse);
        }
        let inverse = self
            .alphabet
            .symbols()
            .map(|a| self.alphabet.symbols().find(|&b| self.apply(a, b) == e).expect("group"))
            .collect();
        self.with_identity(e)?.with_inverse(inverse)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rows(&self) -> &[Vec<Symbol>] {
        &self.table
    }

    pub fn apply(&self, a: Symbol, b: Symbol) -> Symbol {
        self.table[a as usize][b as usize]
    }

    pub fn identity(&self) -> Option<Symbol> {
        self.identity
    }

    pub fn inverse(&self, a: Symbol) -> Option<Symbol> {
        self.inverse.as_ref().map(|inv| inv[a as usize])
    }

    pub fn inverses(&self) -> Option<&[Symbol]> {
        self.inverse.as_deref()
    }

    fn is_identity(&self, e: Symbol) -> bool {
        self.alphabet
            .symbols()
            .all(|a| self.apply(e, a) == a && self.apply(a, e) == a)
    }
}

/// Exhaustive check of associativity over all `|E|^3` triples, and of the
/// identity and inverse axioms.
pub fn validate_op_table(t: &OpTable) -> OpTableReport {
    let symbols: Vec<Symbol> = t.alphabet.symbols().collect();
    let mut counterexample = None;
    'search: for &a in &symbols {
        for &b in &symbols {
            for &c in &symbols {
                if t.apply(t.apply(a, b), c) != t.apply(a, t.apply(b, c)) {
                    counterexample = Some((a, b, c));
                    break 'search;
                }
            }
        }
    }
    let identity = symbols.iter().copied().find(|&e| t.is_identity(e));
    let has_inverses = identity.is_some_and(|e| {
        symbols
            .iter()
            .all(|&a| symbols.iter().any(|&b| t.apply(a, b) == e && t.apply(b, a) == e))
    });
    let associative = counterexample.is_none();
    OpTableReport {
        associative,
        has_identity: identity.is_some(),
        is_group: associative && has_inverses,
        identity,
        counterexample,
    }
}

/// One associative table per level; the last table is reused at every
/// deeper level, matching [`LevelSystem::Explicit`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermwiseStructure {
    tables: Vec<OpTable>,
}

impl TermwiseStructure {
    pub fn new(tables: Vec<OpTable>) -> Result<Self> {
        if tables.is_empty() {
            return Err(Error::InvalidTable("at least one table is required".into()));
        }
        for t in &tables {
            if let Some((a, b, c)) = validate_op_table(t).counterexample {
                return Err(Error::NotAssociative(a, b, c));
            }
        }
        Ok(TermwiseStructure { tables })
    }

    pub fn homogeneous(table: OpTable) -> Result<Self> {
        TermwiseStructure::new(vec![table])
    }

    pub fn table_at(&self, level: usize) -> &OpTable {
        &self.tables[level.saturating_sub(1).min(self.tables.len() - 1)]
    }

    pub fn tables(&self) -> &[OpTable] {
        &self.tables
    }

    pub fn level_system(&self) -> LevelSystem {
        match self.tables.as_slice() {
            [t] => LevelSystem::homogeneous(t.alphabet.clone()),
            ts => LevelSystem::Explicit(ts.iter().map(|t| t.alphabet.clone()).collect()),
        }
    }

    fn irregular_levels(&self) -> usize {
        self.tables.len() - 1
    }

    /// The point whose every term is the identity of its level.
    pub fn identity_sequence(&self) -> Result<SequenceDescriptor> {
        let ids = self
            .tables
            .iter()
            .map(|t| t.identity.ok_or(Error::MissingIdentity))
            .collect::<Result<Vec<_>>>()?;
        let (last, head) = ids.split_last().expect("non-empty");
        Ok(SequenceDescriptor::new(head.to_vec(), vec![*last])?.canonical())
    }
}

/// `z_l = x_l * y_l` at every level.
pub fn termwise_op(
    x: &SequenceDescriptor,
    y: &SequenceDescriptor,
    s: &TermwiseStructure,
) -> Result<SequenceDescriptor> {
    let system = s.level_system();
    system.check_descriptor(x)?;
    system.check_descriptor(y)?;
    // past this many levels both inputs and the tables are periodic
    let head = x.pre().len().max(y.pre().len()).max(s.irregular_levels());
    let period = lcm(x.per().len(), y.per().len());
    let at = |l: usize| s.table_at(l).apply(x.symbol_at(l), y.symbol_at(l));
    let pre = (1..=head).map(at).collect();
    let per = (head + 1..=head + period).map(at).collect();
    Ok(SequenceDescriptor::new(pre, per)?.canonical())
}

/// `z_l = x_l^-1` at every level.
pub fn termwise_inverse(x: &SequenceDescriptor, s: &TermwiseStructure) -> Result<SequenceDescriptor> {
    if s.tables.iter().any(|t| t.inverse.is_none()) {
        return Err(Error::MissingInverse);
    }
    s.level_system().check_descriptor(x)?;
    let head = x.pre().len().max(s.irregular_levels());
    let at = |l: usize| s.table_at(l).inverse(x.symbol_at(l)).expect("checked above");
    let pre = (1..=head).map(at).collect();
    let per = (head + 1..=head + x.per().len()).map(at).collect();
    Ok(SequenceDescriptor::new(pre, per)?.canonical())
}

/// Checks that the depth-`m` prefix of `x * y` is determined by the depth-`m`
/// prefixes of `x` and `y`, by trying every prefix pair with every choice of
/// symbols at level `m + 1` (each continued constantly).
///
/// Exhaustive, so limited to homogeneous alphabets of size at most 4 and
/// `m <= 4`.
pub fn locality_check(s: &TermwiseStructure, m: usize) -> Result<bool> {
    let system = s.level_system();
    let alphabet = system.uniform_alphabet().ok_or(Error::NotHomogeneous)?;
    if alphabet.len() > 4 || m > 4 {
        return Err(Error::InvalidParameter(format!(
            "locality check is exhaustive: needs |E| <= 4 and m <= 4, got |E| = {}, m = {m}",
            alphabet.len()
        )));
    }
    let prefixes: Vec<Vec<Symbol>> = system.words(m).collect();
    for u in &prefixes {
        for v in &prefixes {
            let mut expected: Option<Vec<Symbol>> = None;
            for a in alphabet.symbols() {
                for b in alphabet.symbols() {
                    let x = SequenceDescriptor::new(u.clone(), vec![a])?;
                    let y = SequenceDescriptor::new(v.clone(), vec![b])?;
                    let z = termwise_op(&x, &y, s)?.prefix(m);
                    match &expected {
                        None => expected = Some(z),
                        Some(e) if *e != z => return Ok(false),
                        Some(_) => {}
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Termwise product of two-sided points under a single table.
pub fn termwise_op_two_sided(
    x: &BiSequenceDescriptor,
    y: &BiSequenceDescriptor,
    table: &OpTable,
) -> Result<BiSequenceDescriptor> {
    x.check_alphabet(table.alphabet())?;
    y.check_alphabet(table.alphabet())?;
    let start = x.left_edge().min(y.left_edge());
    let end = x.right_edge().max(y.right_edge());
    let left = lcm(x.left_period().len(), y.left_period().len()) as i64;
    let right = lcm(x.right_period().len(), y.right_period().len()) as i64;
    let at = |l: i64| table.apply(x.symbol_at(l), y.symbol_at(l));
    BiSequenceDescriptor::new(
        (start - left..start).map(at).collect(),
        (start..end).map(at).collect(),
        (end..end + right).map(at).collect(),
        start,
    )
}

/// Where a two-sided point stops being identically the basepoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EStarBoundary {
    /// `x_l` is the basepoint for all `l <= L`, and `x_(L+1)` is not.
    Finite(i64),
    /// Every term is the basepoint, so any `L` works; reports the left
    /// edge of the descriptor's center.
    AllBasepoint { center_left_edge: i64 },
}

/// Membership in the basepoint sequence space: `None` when the left tail is
/// not constantly the basepoint.
pub fn in_e_star(x: &BiSequenceDescriptor, alphabet: &Alphabet) -> Result<Option<EStarBoundary>> {
    let b = alphabet.basepoint().ok_or(Error::MissingBasepoint)?;
    x.check_alphabet(alphabet)?;
    if x.left_period().iter().any(|&s| s != b) {
        return Ok(None);
    }
    let scan_end = x.right_edge() + x.right_period().len() as i64;
    Ok(Some(match (x.left_edge()..scan_end).find(|&l| x.symbol_at(l) != b) {
        Some(first) => EStarBoundary::Finite(first - 1),
        None => EStarBoundary::AllBasepoint { center_left_edge: x.left_edge() },
    }))
}

fn shift_alphabet(system: &LevelSystem) -> Result<&Alphabet> {
    system.uniform_alphabet().ok_or(Error::NotHomogeneous)
}

/// `(x_l) -> (x_(l+1))`, dropping the first term.
pub fn shift_one_sided(x: &SequenceDescriptor, system: &LevelSystem) -> Result<SequenceDescriptor> {
    shift_alphabet(system)?;
    system.check_descriptor(x)?;
    let shifted = match x.pre().split_first() {
        Some((_, rest)) => SequenceDescriptor::new(rest.to_vec(), x.per().to_vec())?,
        None => {
            let mut per = x.per().to_vec();
            per.rotate_left(1);
            SequenceDescriptor::new(Vec::new(), per)?
        }
    };
    Ok(shifted.canonical())
}

/// The `|E|` points that shift onto `y`, one per possible first term.
pub fn shift_preimages(y: &SequenceDescriptor, system: &LevelSystem) -> Result<Vec<SequenceDescriptor>> {
    let alphabet = shift_alphabet(system)?;
    system.check_descriptor(y)?;
    alphabet
        .symbols()
        .map(|s| {
            let mut pre = vec![s];
            pre.extend_from_slice(y.pre());
            Ok(SequenceDescriptor::new(pre, y.per().to_vec())?.canonical())
        })
        .collect()
}

/// Two-sided shift: the term at level `l + 1` moves to level `l`.
pub fn shift_two_sided(x: &BiSequenceDescriptor) -> BiSequenceDescriptor {
    x.relabeled(-1)
}

pub fn unshift_two_sided(x: &BiSequenceDescriptor) -> BiSequenceDescriptor {
    x.relabeled(1)
}

/// The first `n + 1` points of a shift orbit with its eventual cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    /// `x, shift(x), ..., shift^n(x)`.
    pub points: Vec<SequenceDescriptor>,
    /// Steps before the orbit enters its cycle.
    pub preperiod: usize,
    pub cycle: usize,
}

pub fn orbit(x: &SequenceDescriptor, n: usize, system: &LevelSystem) -> Result<Orbit> {
    let mut trail = vec![x.canonical()];
    let (preperiod, cycle) = loop {
        let next = shift_one_sided(trail.last().expect("non-empty"), system)?;
        if let Some(j) = trail.iter().position(|p| p.same_point(&next)) {
            break (j, trail.len() - j);
        }
        trail.push(next);
    };
    let points = (0..=n)
        .map(|k| {
            let i = if k < trail.len() { k } else { preperiod + (k - preperiod) % cycle };
            trail[i].clone()
        })
        .collect();
    Ok(Orbit { points, preperiod, cycle })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(pre: &[Symbol], per: &[Symbol]) -> SequenceDescriptor {
        SequenceDescriptor::new(pre.to_vec(), per.to_vec()).unwrap()
    }

    fn xor() -> OpTable {
        OpTable::cyclic_group(2).unwrap()
    }

    #[test]
    fn report_for_z2() {
        let r = validate_op_table(&xor());
        assert!(r.associative && r.has_identity && r.is_group);
        assert_eq!(r.identity, Some(0));
    }

    #[test]
    fn report_for_left_projection() {
        let r = validate_op_table(&OpTable::left_projection(2).unwrap());
        assert!(r.associative);
        assert!(!r.has_identity);
        assert!(!r.is_group);
    }

    #[test]
    fn report_for_corrupted_table() {
        // Z/3 with 1+1 changed from 2 to 0: (1+1)+2 = 2 but 1+(1+2) = 1
        let mut rows = OpTable::cyclic_group(3).unwrap().rows().to_vec();
        rows[1][1] = 0;
        let t = OpTable::new(Alphabet::numbered(3).unwrap(), rows).unwrap();
        let r = validate_op_table(&t);
        assert!(!r.associative);
        let (a, b, c) = r.counterexample.unwrap();
        assert_ne!(t.apply(t.apply(a, b), c), t.apply(a, t.apply(b, c)));
        assert!(TermwiseStructure::homogeneous(t).is_err());
    }

    #[test]
    fn table_shape_validation() {
        let a = Alphabet::binary();
        assert!(OpTable::new(a.clone(), vec![vec![0, 1]]).is_err());
        assert!(OpTable::new(a.clone(), vec![vec![0, 2], vec![1, 0]]).is_err());
        assert!(xor().with_identity(1).is_err());
        let plain = OpTable::from_fn(a, |x, y| x ^ y).unwrap();
        assert_eq!(plain.clone().with_inverse(vec![0, 1]), Err(Error::MissingIdentity));
        assert!(plain.with_identity(0).unwrap().with_inverse(vec![1, 0]).is_err());
    }

    #[test]
    fn termwise_examples() {
        let s = TermwiseStructure::homogeneous(xor()).unwrap();
        let x = seq(&[1, 0], &[1, 1, 0]);
        let e = s.identity_sequence().unwrap();
        assert!(termwise_op(&e, &x, &s).unwrap().same_point(&x));
        assert_eq!(termwise_op(&seq(&[], &[1]), &seq(&[], &[1]), &s).unwrap(), seq(&[], &[0]));
        assert_eq!(termwise_op(&seq(&[], &[0, 1]), &seq(&[], &[1]), &s).unwrap(), seq(&[], &[1, 0]));
    }

    #[test]
    fn inverse_examples() {
        let z2 = TermwiseStructure::homogeneous(xor()).unwrap();
        let e = z2.identity_sequence().unwrap();
        assert_eq!(termwise_inverse(&e, &z2).unwrap(), e);
        let x = seq(&[0, 1], &[1, 0, 0]);
        assert!(termwise_inverse(&x, &z2).unwrap().same_point(&x));
        let z3 = TermwiseStructure::homogeneous(OpTable::cyclic_group(3).unwrap()).unwrap();
        assert_eq!(termwise_inverse(&seq(&[], &[1]), &z3).unwrap(), seq(&[], &[2]));
        let proj = TermwiseStructure::homogeneous(OpTable::left_projection(2).unwrap()).unwrap();
        assert_eq!(termwise_inverse(&x, &proj), Err(Error::MissingInverse));
        assert_eq!(proj.identity_sequence(), Err(Error::MissingIdentity));
    }

    #[test]
    fn per_level_tables() {
        // Z/3 at level 1, Z/2 afterwards
        let s = TermwiseStructure::new(vec![
            OpTable::cyclic_group(3).unwrap(),
            OpTable::cyclic_group(2).unwrap(),
        ])
        .unwrap();
        let x = seq(&[2], &[1]);
        let y = seq(&[2], &[1, 0]);
        let z = termwise_op(&x, &y, &s).unwrap();
        assert_eq!(z.prefix(5), vec![1, 0, 1, 0, 1]);
        assert_eq!(s.identity_sequence().unwrap(), seq(&[], &[0]));
        let inv = termwise_inverse(&x, &s).unwrap();
        assert_eq!(inv.prefix(3), vec![1, 1, 1]);
        assert!(termwise_op(&seq(&[], &[2]), &y, &s).is_err());
    }

    #[test]
    fn locality_examples() {
        let s = TermwiseStructure::homogeneous(xor()).unwrap();
        assert!(locality_check(&s, 2).unwrap());
        assert!(locality_check(&s, 0).unwrap());
        let proj = TermwiseStructure::homogeneous(OpTable::left_projection(3).unwrap()).unwrap();
        assert!(locality_check(&proj, 2).unwrap());
        assert!(locality_check(&s, 5).is_err());
        let big = TermwiseStructure::homogeneous(OpTable::cyclic_group(5).unwrap()).unwrap();
        assert!(locality_check(&big, 1).is_err());
    }

    #[test]
    fn e_star_examples() {
        let a = Alphabet::binary().with_basepoint(0).unwrap();
        let x = BiSequenceDescriptor::new(vec![0], vec![1, 0, 1], vec![0], -2).unwrap();
        assert_eq!(in_e_star(&x, &a).unwrap(), Some(EStarBoundary::Finite(-3)));
        let y = BiSequenceDescriptor::new(vec![1], vec![0], vec![0], 0).unwrap();
        assert_eq!(in_e_star(&y, &a).unwrap(), None);
        let z = BiSequenceDescriptor::new(vec![0], vec![0, 0], vec![0], 4).unwrap();
        assert_eq!(
            in_e_star(&z, &a).unwrap(),
            Some(EStarBoundary::AllBasepoint { center_left_edge: 4 })
        );
        // leading basepoints in the center move the boundary right
        let w = BiSequenceDescriptor::new(vec![0], vec![0, 0], vec![1], 4).unwrap();
        assert_eq!(in_e_star(&w, &a).unwrap(), Some(EStarBoundary::Finite(5)));
        assert_eq!(in_e_star(&x, &Alphabet::binary()), Err(Error::MissingBasepoint));
    }

    #[test]
    fn e_star_closed_under_termwise_op() {
        let a = Alphabet::binary().with_basepoint(0).unwrap();
        let x = BiSequenceDescriptor::new(vec![0], vec![1, 1], vec![0, 1], -3).unwrap();
        let y = BiSequenceDescriptor::new(vec![0, 0], vec![1], vec![1], 2).unwrap();
        let z = termwise_op_two_sided(&x, &y, &xor()).unwrap();
        assert_eq!(in_e_star(&z, &a).unwrap(), Some(EStarBoundary::Finite(-4)));
        for l in -10..10 {
            assert_eq!(z.symbol_at(l), x.symbol_at(l) ^ y.symbol_at(l));
        }
    }

    #[test]
    fn shift_examples() {
        let bin = LevelSystem::binary();
        assert_eq!(shift_one_sided(&seq(&[0], &[1]), &bin).unwrap(), seq(&[], &[1]));
        assert_eq!(shift_one_sided(&seq(&[], &[0, 1]), &bin).unwrap(), seq(&[], &[1, 0]));
        assert_eq!(shift_one_sided(&seq(&[], &[0]), &bin).unwrap(), seq(&[], &[0]));
        let mixed = LevelSystem::explicit(vec![Alphabet::numbered(3).unwrap(), Alphabet::binary()]).unwrap();
        assert_eq!(shift_one_sided(&seq(&[], &[0]), &mixed), Err(Error::NotHomogeneous));
    }

    #[test]
    fn preimage_examples() {
        let bin = LevelSystem::binary();
        let y = seq(&[], &[0]);
        let pre = shift_preimages(&y, &bin).unwrap();
        assert_eq!(pre, vec![seq(&[], &[0]), seq(&[1], &[0])]);
        for p in &pre {
            assert!(shift_one_sided(p, &bin).unwrap().same_point(&y));
        }
        let tern = LevelSystem::homogeneous(Alphabet::numbered(3).unwrap());
        assert_eq!(shift_preimages(&seq(&[2], &[1, 0]), &tern).unwrap().len(), 3);
    }

    #[test]
    fn two_sided_shift_examples() {
        let x = BiSequenceDescriptor::new(vec![0], vec![5, 6, 7], vec![1], 0).unwrap();
        let s = shift_two_sided(&x);
        assert_eq!(s.center_word().start_level(), -1);
        assert_eq!((s.symbol_at(-1), s.symbol_at(0), s.symbol_at(1)), (5, 6, 7));
        assert!(unshift_two_sided(&s).same_point(&x));
        let c = BiSequenceDescriptor::constant(3);
        assert!(shift_two_sided(&c).same_point(&c));
    }

    #[test]
    fn orbit_examples() {
        let bin = LevelSystem::binary();
        let o = orbit(&seq(&[], &[0, 1]), 4, &bin).unwrap();
        assert_eq!((o.preperiod, o.cycle), (0, 2));
        assert_eq!(o.points.len(), 5);
        assert!(o.points[4].same_point(&o.points[0]));
        let o = orbit(&seq(&[1, 1, 1], &[0]), 5, &bin).unwrap();
        assert_eq!((o.preperiod, o.cycle), (3, 1));
        assert_eq!(o.points[5], seq(&[], &[0]));
        let o = orbit(&seq(&[], &[1]), 0, &bin).unwrap();
        assert_eq!((o.preperiod, o.cycle), (0, 1));
    }
}
