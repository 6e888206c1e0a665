//! Deterministic self-checks behind `symspace check`.

use num_traits::{One, Zero};
use serde::Serialize;
use symspace::coding::{self, BinaryPoint, CodingMap};
use symspace::dynamics::{self, validate_op_table, OpTable, TermwiseStructure};
use symspace::integration::{approximate_integral, indicator, integrate_step, zero_extension, ModulusFunction};
use symspace::measure::{self, CylinderMeasure, ProductMeasure};
use symspace::metric::{self, UltrametricParams};
use symspace::rational::{int, pow, rat};
use symspace::space::{descriptor_equal, disjointify};
use symspace::{Alphabet, Cylinder, LevelSystem, Rational, SequenceDescriptor, Symbol};

#[derive(Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Serialize)]
pub struct Report {
    pub passed: usize,
    pub failed: usize,
    pub results: Vec<CheckResult>,
}

type Check = fn() -> Result<(), String>;

const CHECKS: &[(&str, Check)] = &[
    ("stage_intervals_shrink", stage_intervals_shrink),
    ("tau_is_injective_on_short_words", tau_injective),
    ("tau_decode_round_trips", tau_round_trip),
    ("beta_decode_round_trips", beta_round_trip),
    ("dyadic_rationals_have_two_expansions", dyadic_pairs),
    ("distance_is_ultrametric", ultrametric),
    ("balls_are_cylinders", balls),
    ("termwise_group_laws", group_laws),
    ("shift_preimages_cover", preimages),
    ("uniform_measure_is_consistent", uniform_consistent),
    ("clopen_mass_is_additive", clopen_additive),
    ("indicator_integrals_are_masses", indicators),
    ("beta_integral_is_bracketed", beta_integral),
];

pub fn run_all() -> Report {
    let results: Vec<CheckResult> = CHECKS
        .iter()
        .map(|&(name, check)| {
            let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
            CheckResult { name, passed: outcome.is_ok(), detail: outcome.err() }
        })
        .collect();
    let passed = results.iter().filter(|r| r.passed).count();
    Report { passed, failed: results.len() - passed, results }
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn lib<T>(r: symspace::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn binary_words(depth: usize) -> impl Iterator<Item = Vec<Symbol>> {
    (0..1usize << depth).map(move |k| (0..depth).rev().map(|i| ((k >> i) & 1) as Symbol).collect())
}

/// Eventually periodic binary points with short parts, in a fixed order.
fn sample_points() -> Vec<BinaryPoint> {
    let mut out = Vec::new();
    for pre_len in 0..3 {
        for per_len in 1..3 {
            for pre in binary_words(pre_len) {
                for per in binary_words(per_len) {
                    out.push(BinaryPoint::from_parts(pre.clone(), per).expect("binary"));
                }
            }
        }
    }
    out
}

fn stage_intervals_shrink() -> Result<(), String> {
    for j in 0..8 {
        let stage = lib(coding::stage_intervals(j))?;
        ensure!(stage.len() == 1 << j, "stage {j} has {} intervals", stage.len());
        let total: Rational = stage.iter().map(|iv| iv.length()).sum();
        ensure!(total == pow(&rat(2, 3), j), "stage {j} has total length {total}");
        ensure!(stage.windows(2).all(|p| p[0].hi < p[1].lo), "stage {j} intervals overlap");
    }
    Ok(())
}

fn tau_injective() -> Result<(), String> {
    let points = sample_points();
    for (i, x) in points.iter().enumerate() {
        for y in &points[i + 1..] {
            ensure!(
                (coding::tau(x) == coding::tau(y)) == x.same_point(y),
                "tau identifies {:?} and {:?}",
                x.descriptor(),
                y.descriptor()
            );
        }
    }
    Ok(())
}

fn tau_round_trip() -> Result<(), String> {
    for x in sample_points() {
        let q = coding::tau(&x);
        let back = lib(coding::tau_decode(&q))?.ok_or(format!("tau({q}) not recognized as a member"))?;
        ensure!(back.same_point(&x), "tau_decode({q}) returned another point");
    }
    ensure!(lib(coding::tau_decode(&rat(1, 2)))?.is_none(), "1/2 reported as a member");
    Ok(())
}

fn beta_round_trip() -> Result<(), String> {
    for d in 1..40 {
        for n in 0..=d {
            let q = rat(n, d);
            let x = lib(coding::beta_decode(&q))?;
            ensure!(coding::beta(&x) == q, "beta(beta_decode({q})) differs");
        }
    }
    Ok(())
}

fn dyadic_pairs() -> Result<(), String> {
    let low = BinaryPoint::from_parts(vec![0], vec![1]).expect("binary");
    let high = BinaryPoint::from_parts(vec![1], vec![0]).expect("binary");
    ensure!(coding::beta(&low) == rat(1, 2) && coding::beta(&high) == rat(1, 2), "1/2 expansions disagree");
    ensure!(coding::tau(&low) != coding::tau(&high), "tau merges the two expansions of 1/2");
    Ok(())
}

fn ultrametric() -> Result<(), String> {
    let p = UltrametricParams::default();
    let points: Vec<SequenceDescriptor> = sample_points().into_iter().map(BinaryPoint::into_descriptor).collect();
    let d = |a: &SequenceDescriptor, b: &SequenceDescriptor| metric::distance(a, b, &p);
    for x in &points {
        for y in &points {
            ensure!(d(x, y) == d(y, x), "distance is not symmetric");
            ensure!(d(x, y).is_zero() == descriptor_equal(x, y), "zero distance between distinct points");
            for z in points.iter().step_by(3) {
                ensure!(d(x, z) <= d(x, y).max(d(y, z)), "strong triangle inequality fails");
            }
        }
    }
    Ok(())
}

fn balls() -> Result<(), String> {
    let p = UltrametricParams::default();
    let points: Vec<SequenceDescriptor> = sample_points().into_iter().map(BinaryPoint::into_descriptor).collect();
    for x in &points {
        for m in 0..5 {
            let c = metric::ball_to_cylinder(x, m);
            for y in &points {
                ensure!(metric::in_ball(x, y, m, &p) == c.contains(y), "ball of depth {m} differs from its cylinder");
            }
        }
    }
    Ok(())
}

fn group_laws() -> Result<(), String> {
    let table = lib(OpTable::cyclic_group(3))?;
    let report = validate_op_table(&table);
    ensure!(report.is_group, "Z/3 not recognized as a group");
    ensure!(!validate_op_table(&lib(OpTable::left_projection(2))?).has_identity, "left projection has an identity");
    let s = lib(TermwiseStructure::homogeneous(table))?;
    let e = lib(s.identity_sequence())?;
    let x = lib(SequenceDescriptor::new(vec![2], vec![0, 1]))?;
    let y = lib(SequenceDescriptor::new(vec![], vec![1, 1, 2]))?;
    let inv = lib(dynamics::termwise_inverse(&x, &s))?;
    ensure!(lib(dynamics::termwise_op(&x, &inv, &s))?.same_point(&e), "x * x^-1 is not the identity");
    ensure!(lib(dynamics::termwise_op(&x, &e, &s))?.same_point(&x), "x * e differs from x");
    let xy_x = lib(dynamics::termwise_op(&lib(dynamics::termwise_op(&x, &y, &s))?, &x, &s))?;
    let x_yx = lib(dynamics::termwise_op(&x, &lib(dynamics::termwise_op(&y, &x, &s))?, &s))?;
    ensure!(xy_x.same_point(&x_yx), "termwise product is not associative");
    ensure!(lib(dynamics::locality_check(&s, 3))?, "termwise product is not local");
    Ok(())
}

fn preimages() -> Result<(), String> {
    let sys = LevelSystem::homogeneous(lib(Alphabet::numbered(3))?);
    let y = lib(SequenceDescriptor::new(vec![1], vec![0, 2]))?;
    let pre = lib(dynamics::shift_preimages(&y, &sys))?;
    ensure!(pre.len() == 3, "expected 3 preimages, found {}", pre.len());
    for (a, x) in pre.iter().enumerate() {
        ensure!(x.symbol_at(1) == a as Symbol, "preimages out of order");
        ensure!(lib(dynamics::shift_one_sided(x, &sys))?.same_point(&y), "preimage does not shift onto y");
    }
    Ok(())
}

fn uniform_consistent() -> Result<(), String> {
    let mu = lib(ProductMeasure::uniform(LevelSystem::binary()))?;
    let tree = lib(measure::product_to_tree(&mu, 6, 1 << 20))?;
    ensure!(measure::check_consistency(&tree).is_empty(), "uniform tree is inconsistent");
    ensure!(lib(mu.cylinder_mass(&[0, 1]))? == rat(1, 4), "uniform mass of 01 is not 1/4");
    let broken = lib(tree.with_mass(&[1, 0], rat(1, 2)))?;
    let flagged: Vec<Vec<Symbol>> = measure::check_consistency(&broken).into_iter().map(|v| v.word).collect();
    ensure!(flagged == vec![vec![1], vec![1, 0]], "perturbation flagged {flagged:?}");
    Ok(())
}

fn clopen_additive() -> Result<(), String> {
    let sys = LevelSystem::homogeneous(lib(Alphabet::numbered(3))?);
    let mu = lib(ProductMeasure::iid(sys.clone(), vec![rat(1, 2), rat(1, 3), rat(1, 6)]))?;
    let cover = [vec![0], vec![0, 1], vec![2, 2], vec![1, 0, 0], vec![2]];
    let cylinders: Vec<Cylinder> = cover.into_iter().map(Cylinder::new).collect();
    let parts = lib(disjointify(&cylinders, &sys))?;
    let sum: Rational = parts.iter().map(|c| mu.cylinder_mass(c.prefix())).collect::<symspace::Result<Vec<_>>>().map_err(|e| e.to_string())?.into_iter().sum();
    let mass = lib(measure::clopen_mass(&mu, &cylinders))?;
    ensure!(mass == sum, "clopen mass {mass} differs from the sum over a partition {sum}");
    ensure!(mass == rat(1, 2) + rat(1, 6) + rat(1, 3) * rat(1, 2) * rat(1, 2), "clopen mass {mass} is wrong");
    Ok(())
}

fn indicators() -> Result<(), String> {
    let mu = lib(ProductMeasure::bernoulli(rat(1, 3)))?;
    let sys = LevelSystem::binary();
    for w in binary_words(4) {
        let f = lib(indicator(&Cylinder::new(w.clone()), 4, &sys))?;
        ensure!(lib(integrate_step(&f, &mu))? == lib(mu.cylinder_mass(&w))?, "indicator of {w:?} disagrees");
    }
    Ok(())
}

fn beta_integral() -> Result<(), String> {
    let mu = lib(ProductMeasure::bernoulli(rat(1, 2)))?;
    let omega = ModulusFunction::lipschitz(Rational::one());
    let sample = |w: &[Symbol]| coding::encode(CodingMap::Beta, &BinaryPoint::new(zero_extension(w)).expect("binary"));
    for m in 0..8 {
        let a = lib(approximate_integral(sample, &omega, &mu, m, &UltrametricParams::default()))?;
        let gap = rat(1, 2) - &a.value;
        ensure!(gap >= int(0) && gap <= a.error_bound, "depth {m}: 1/2 not within the error bound");
    }
    Ok(())
}
