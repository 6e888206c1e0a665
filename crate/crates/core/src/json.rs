//! JSON wire formats.
//!
//! Symbols travel as their alphabet labels, rationals as `"p/q"` strings
//! (bare integers are accepted on input). Words used as object keys are
//! written compactly (`"011"`) when every label involved is a single
//! character, and comma-separated (`"ab,c"`) otherwise.
//!
//! ```text
//! sequence   {"pre": [0], "per": [1, 0]}
//! cylinder   {"prefix": [0, 1]}
//! two-sided  {"left": [0], "center": [1, 1], "right": [0], "origin": -1}
//! system     {"symbols": ["a", "b"], "basepoint": "a"}  or  {"levels": [[0, 1, 2], [0, 1]]}
//! measure    {"type": "product", "weights": [["1/2", "1/2"]]}
//!            {"type": "tree", "mass": {"": "1/1", "0": "1/2", "1": "1/2"}}
//!            {"type": "point", "depth": 1, "mass": {"0": "1/3", "1": "2/3"}}
//! step       {"depth": 1, "values": {"0": "0/1", "1": "1/1"}}
//! op table   {"symbols": [0, 1], "table": [[0, 1], [1, 0]], "identity": 0, "inverse": {"0": 0, "1": 1}}
//! ```

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::coding::BinaryPoint;
use crate::dynamics::OpTable;
use crate::error::{Error, Result};
use crate::integration::StepFunction;
use crate::measure::{FinitePointMeasure, Measure, MeasureFlags, ProductMeasure, TreeMeasure};
use crate::rational::{self, Rational};
use crate::space::{
    Alphabet, BiSequenceDescriptor, Cylinder, Label, LevelSystem, SequenceDescriptor, Symbol,
};

/// A rational that serializes as `"p/q"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Q(pub Rational);

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        rational::as_string::serialize(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        rational::as_string::deserialize(d).map(Q)
    }
}

fn resolve(alphabet: &Alphabet, label: &Label, level: i64) -> Result<Symbol> {
    alphabet
        .index_of(label)
        .or_else(|| alphabet.index_of_text(&label.to_string()))
        .ok_or_else(|| Error::UnknownLabel { label: label.to_string(), level })
}

fn labels_at(system: &LevelSystem, start_level: usize, symbols: &[Symbol]) -> Result<Vec<Label>> {
    symbols
        .iter()
        .enumerate()
        .map(|(i, &s)| {
            let level = start_level + i;
            system
                .alphabet(level)
                .label(s)
                .cloned()
                .ok_or(Error::SymbolOutOfRange { level: level as i64, symbol: s, size: system.size_at(level) })
        })
        .collect()
}

fn symbols_at(system: &LevelSystem, start_level: usize, labels: &[Label]) -> Result<Vec<Symbol>> {
    labels
        .iter()
        .enumerate()
        .map(|(i, l)| resolve(system.alphabet(start_level + i), l, (start_level + i) as i64))
        .collect()
}

fn compact_up_to(system: &LevelSystem, depth: usize) -> bool {
    (1..=depth.max(1)).all(|l| system.alphabet(l).is_compact())
}

/// Text form of a word starting at level 1.
pub fn encode_word(word: &[Symbol], system: &LevelSystem) -> Result<String> {
    let labels = labels_at(system, 1, word)?;
    let texts: Vec<String> = labels.iter().map(Label::to_string).collect();
    Ok(if compact_up_to(system, word.len()) { texts.concat() } else { texts.join(",") })
}

/// Parses `"011"` or `"a,bc,d"` into a word starting at level 1.
pub fn decode_word(text: &str, system: &LevelSystem) -> Result<Vec<Symbol>> {
    let parts: Vec<String> = if text.is_empty() {
        Vec::new()
    } else if text.contains(',') {
        text.split(',').map(|p| p.trim().to_string()).collect()
    } else {
        text.chars().map(String::from).collect()
    };
    parts
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let level = i + 1;
            system
                .alphabet(level)
                .index_of_text(p)
                .ok_or_else(|| Error::UnknownLabel { label: p.clone(), level: level as i64 })
        })
        .collect()
}

/// `{"pre": [...], "per": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescriptorJson {
    #[serde(default)]
    pub pre: Vec<Label>,
    pub per: Vec<Label>,
}

impl DescriptorJson {
    pub fn from_descriptor(x: &SequenceDescriptor, system: &LevelSystem) -> Result<Self> {
        Ok(DescriptorJson {
            pre: labels_at(system, 1, x.pre())?,
            per: labels_at(system, x.pre().len() + 1, x.per())?,
        })
    }

    pub fn to_descriptor(&self, system: &LevelSystem) -> Result<SequenceDescriptor> {
        let pre = symbols_at(system, 1, &self.pre)?;
        let per = symbols_at(system, self.pre.len() + 1, &self.per)?;
        SequenceDescriptor::in_system(pre, per, system)
    }

    pub fn to_binary_point(&self) -> Result<BinaryPoint> {
        BinaryPoint::new(self.to_descriptor(&LevelSystem::binary())?)
    }
}

/// `{"prefix": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CylinderJson {
    pub prefix: Vec<Label>,
}

impl CylinderJson {
    pub fn from_cylinder(c: &Cylinder, system: &LevelSystem) -> Result<Self> {
        Ok(CylinderJson { prefix: labels_at(system, 1, c.prefix())? })
    }

    pub fn to_cylinder(&self, system: &LevelSystem) -> Result<Cylinder> {
        Ok(Cylinder::new(symbols_at(system, 1, &self.prefix)?))
    }
}

/// `{"left": [...], "center": [...], "right": [...], "origin": l}` where
/// `origin` is the level of the first center symbol.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiDescriptorJson {
    pub left: Vec<Label>,
    #[serde(default)]
    pub center: Vec<Label>,
    pub right: Vec<Label>,
    #[serde(default)]
    pub origin: i64,
}

impl BiDescriptorJson {
    pub fn from_descriptor(x: &BiSequenceDescriptor, alphabet: &Alphabet) -> Result<Self> {
        x.check_alphabet(alphabet)?;
        let labels = |w: &[Symbol]| w.iter().map(|&s| alphabet.label(s).cloned().expect("checked")).collect();
        Ok(BiDescriptorJson {
            left: labels(x.left_period()),
            center: labels(x.center()),
            right: labels(x.right_period()),
            origin: x.origin_offset(),
        })
    }

    pub fn to_descriptor(&self, alphabet: &Alphabet) -> Result<BiSequenceDescriptor> {
        let symbols = |w: &[Label]| -> Result<Vec<Symbol>> {
            w.iter().map(|l| resolve(alphabet, l, self.origin)).collect()
        };
        BiSequenceDescriptor::new(
            symbols(&self.left)?,
            symbols(&self.center)?,
            symbols(&self.right)?,
            self.origin,
        )
    }
}

/// A level system: one alphabet for every level, or an explicit list whose
/// last entry repeats.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SystemJson {
    Homogeneous {
        symbols: Vec<Label>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        basepoint: Option<Label>,
    },
    Explicit { levels: Vec<Vec<Label>> },
}

impl SystemJson {
    pub fn to_system(&self) -> Result<LevelSystem> {
        match self {
            SystemJson::Homogeneous { symbols, basepoint } => {
                let alphabet = Alphabet::new(symbols.clone(), None)?;
                let alphabet = match basepoint {
                    Some(b) => {
                        let idx = resolve(&alphabet, b, 0)?;
                        alphabet.with_basepoint(idx)?
                    }
                    None => alphabet,
                };
                Ok(LevelSystem::homogeneous(alphabet))
            }
            SystemJson::Explicit { levels } => LevelSystem::explicit(
                levels
                    .iter()
                    .map(|l| Alphabet::new(l.clone(), None))
                    .collect::<Result<_>>()?,
            ),
        }
    }

    pub fn from_system(system: &LevelSystem) -> Self {
        match system {
            LevelSystem::Homogeneous(a) => SystemJson::Homogeneous {
                symbols: a.labels().to_vec(),
                basepoint: a.basepoint().and_then(|b| a.label(b).cloned()),
            },
            LevelSystem::Explicit(levels) => SystemJson::Explicit {
                levels: levels.iter().map(|a| a.labels().to_vec()).collect(),
            },
        }
    }
}

/// Measures, tagged by `"type"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum MeasureJson {
    /// One weight list per level; the last list repeats. Symbols default to
    /// `0, 1, ...` per level.
    Product {
        weights: Vec<Vec<Q>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        symbols: Option<Vec<Label>>,
    },
    /// Masses for every word up to the deepest key.
    Tree {
        mass: BTreeMap<String, Q>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        symbols: Option<Vec<Label>>,
    },
    /// Masses of the tuples of one depth.
    Point {
        depth: usize,
        mass: BTreeMap<String, Q>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        symbols: Option<Vec<Label>>,
    },
}

fn keyed_masses(mass: &BTreeMap<String, Q>, system: &LevelSystem) -> Result<HashMap<Vec<Symbol>, Rational>> {
    mass.iter()
        .map(|(k, v)| Ok((decode_word(k, system)?, v.0.clone())))
        .collect()
}

impl MeasureJson {
    /// Builds the measure. Tree and point measures without `symbols` use
    /// `default_system`.
    pub fn to_measure(&self, default_system: &LevelSystem) -> Result<Measure> {
        let with_symbols = |symbols: &Option<Vec<Label>>| -> Result<LevelSystem> {
            Ok(match symbols {
                Some(s) => LevelSystem::homogeneous(Alphabet::new(s.clone(), None)?),
                None => default_system.clone(),
            })
        };
        match self {
            MeasureJson::Product { weights, symbols } => {
                let system = match symbols {
                    Some(_) => with_symbols(symbols)?,
                    None => match weights.as_slice() {
                        [w] => LevelSystem::homogeneous(Alphabet::numbered(w.len())?),
                        ws => LevelSystem::explicit(
                            ws.iter().map(|w| Alphabet::numbered(w.len())).collect::<Result<_>>()?,
                        )?,
                    },
                };
                let weights = weights
                    .iter()
                    .map(|w| w.iter().map(|q| q.0.clone()).collect())
                    .collect();
                Ok(Measure::Product(ProductMeasure::new(system, weights, MeasureFlags::default())?))
            }
            MeasureJson::Tree { mass, symbols } => {
                let system = with_symbols(symbols)?;
                let masses = keyed_masses(mass, &system)?;
                let depth = masses.keys().map(Vec::len).max().unwrap_or(0);
                Ok(Measure::Tree(TreeMeasure::from_map(system, depth, &masses)?))
            }
            MeasureJson::Point { depth, mass, symbols } => {
                let system = with_symbols(symbols)?;
                let masses = keyed_masses(mass, &system)?;
                let point = FinitePointMeasure::from_fn(
                    system,
                    *depth,
                    |w| masses.get(w).cloned().unwrap_or_default(),
                    MeasureFlags::default(),
                )?;
                if let Some(w) = masses.keys().find(|w| w.len() != *depth) {
                    return Err(Error::DepthMismatch { expected: *depth, found: w.len() });
                }
                Ok(Measure::Point(point))
            }
        }
    }

    pub fn from_tree(tree: &TreeMeasure) -> Result<Self> {
        let system = crate::measure::CylinderMeasure::system(tree);
        let mass = tree
            .entries()
            .map(|(w, m)| Ok((encode_word(&w, system)?, Q(m.clone()))))
            .collect::<Result<_>>()?;
        Ok(MeasureJson::Tree { mass, symbols: uniform_labels(system) })
    }

    pub fn from_product(mu: &ProductMeasure) -> Self {
        let system = crate::measure::CylinderMeasure::system(mu);
        MeasureJson::Product {
            weights: mu
                .weight_tables()
                .iter()
                .map(|w| w.iter().cloned().map(Q).collect())
                .collect(),
            symbols: uniform_labels(system).filter(|s| {
                *s != Alphabet::numbered(s.len()).expect("non-empty").labels().to_vec()
            }),
        }
    }
}

fn uniform_labels(system: &LevelSystem) -> Option<Vec<Label>> {
    system.uniform_alphabet().map(|a| a.labels().to_vec())
}

/// `{"depth": m, "values": {"word": "p/q", ...}}`; words without an entry
/// take the value 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepFunctionJson {
    pub depth: usize,
    pub values: BTreeMap<String, Q>,
}

impl StepFunctionJson {
    pub fn from_step(f: &StepFunction) -> Result<Self> {
        let values = f
            .entries()
            .map(|(w, v)| Ok((encode_word(&w, f.system())?, Q(v.clone()))))
            .collect::<Result<_>>()?;
        Ok(StepFunctionJson { depth: f.depth(), values })
    }

    pub fn to_step(&self, system: &LevelSystem) -> Result<StepFunction> {
        let mut table = HashMap::new();
        for (k, v) in &self.values {
            let w = decode_word(k, system)?;
            if w.len() != self.depth {
                return Err(Error::DepthMismatch { expected: self.depth, found: w.len() });
            }
            table.insert(w, v.0.clone());
        }
        StepFunction::from_fn(system.clone(), self.depth, |w| table.get(w).cloned().unwrap_or_default())
    }
}

/// Cayley table with optional identity and inverse map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpTableJson {
    pub symbols: Vec<Label>,
    pub table: Vec<Vec<Label>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identity: Option<Label>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverse: Option<BTreeMap<String, Label>>,
}

impl OpTableJson {
    pub fn to_table(&self) -> Result<OpTable> {
        let alphabet = Alphabet::new(self.symbols.clone(), None)?;
        let rows = self
            .table
            .iter()
            .map(|row| row.iter().map(|l| resolve(&alphabet, l, 0)).collect())
            .collect::<Result<Vec<Vec<Symbol>>>>()?;
        let mut table = OpTable::new(alphabet.clone(), rows)?;
        if let Some(e) = &self.identity {
            table = table.with_identity(resolve(&alphabet, e, 0)?)?;
        }
        if let Some(inv) = &self.inverse {
            let mut map = vec![None; alphabet.len()];
            for (k, v) in inv {
                let a = alphabet
                    .index_of_text(k)
                    .ok_or_else(|| Error::UnknownLabel { label: k.clone(), level: 0 })?;
                map[a as usize] = Some(resolve(&alphabet, v, 0)?);
            }
            let map = map
                .into_iter()
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::InvalidTable("inverse map must cover every symbol".into()))?;
            table = table.with_inverse(map)?;
        }
        Ok(table)
    }

    pub fn from_table(t: &OpTable) -> Self {
        let a = t.alphabet();
        let label = |s: Symbol| a.label(s).cloned().expect("table entries are symbols");
        OpTableJson {
            symbols: a.labels().to_vec(),
            table: t.rows().iter().map(|r| r.iter().map(|&s| label(s)).collect()).collect(),
            identity: t.identity().map(label),
            inverse: t.inverses().map(|inv| {
                inv.iter()
                    .enumerate()
                    .map(|(i, &b)| (label(i as Symbol).to_string(), label(b)))
                    .collect()
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::CylinderMeasure;
    use crate::rational::{int, rat};

    #[test]
    fn descriptor_round_trip_with_labels() {
        let sys = LevelSystem::homogeneous(Alphabet::from_compact("ab").unwrap());
        let json: DescriptorJson = serde_json::from_str(r#"{"pre": ["a"], "per": ["b", "a"]}"#).unwrap();
        let x = json.to_descriptor(&sys).unwrap();
        assert_eq!(x.prefix(4), vec![0, 1, 0, 1]);
        assert_eq!(DescriptorJson::from_descriptor(&x, &sys).unwrap(), json);
        let bad: DescriptorJson = serde_json::from_str(r#"{"pre": [], "per": ["c"]}"#).unwrap();
        assert!(matches!(bad.to_descriptor(&sys), Err(Error::UnknownLabel { .. })));
    }

    #[test]
    fn integer_labels_serialize_as_numbers() {
        let x = SequenceDescriptor::new(vec![1], vec![0]).unwrap();
        let json = DescriptorJson::from_descriptor(&x, &LevelSystem::binary()).unwrap();
        assert_eq!(serde_json::to_string(&json).unwrap(), r#"{"pre":[1],"per":[0]}"#);
    }

    #[test]
    fn word_keys() {
        let bin = LevelSystem::binary();
        assert_eq!(encode_word(&[0, 1, 1], &bin).unwrap(), "011");
        assert_eq!(decode_word("011", &bin).unwrap(), vec![0, 1, 1]);
        assert_eq!(decode_word("", &bin).unwrap(), Vec::<Symbol>::new());
        assert!(decode_word("012", &bin).is_err());
        let wide = LevelSystem::homogeneous(
            Alphabet::new(vec![Label::from_text("up"), Label::from_text("down")], None).unwrap(),
        );
        assert_eq!(encode_word(&[1, 0], &wide).unwrap(), "down,up");
        assert_eq!(decode_word("down,up", &wide).unwrap(), vec![1, 0]);
    }

    #[test]
    fn product_measure_json() {
        let json: MeasureJson =
            serde_json::from_str(r#"{"type":"product","weights":[["1/2","1/2"]]}"#).unwrap();
        let mu = json.to_measure(&LevelSystem::binary()).unwrap();
        assert_eq!(mu.cylinder_mass(&[0, 1]).unwrap(), rat(1, 4));
        let Measure::Product(p) = &mu else { panic!("expected a product measure") };
        assert_eq!(MeasureJson::from_product(p), json);
    }

    #[test]
    fn tree_measure_json() {
        let text = r#"{"type":"tree","mass":{"":"1","0":"1/3","1":"2/3"}}"#;
        let json: MeasureJson = serde_json::from_str(text).unwrap();
        let mu = json.to_measure(&LevelSystem::binary()).unwrap();
        assert_eq!(mu.defined_depth(), Some(1));
        assert_eq!(mu.cylinder_mass(&[1]).unwrap(), rat(2, 3));
        let Measure::Tree(t) = &mu else { panic!("expected a tree") };
        let back = MeasureJson::from_tree(t).unwrap();
        assert_eq!(back.to_measure(&LevelSystem::binary()).unwrap(), mu);
        let missing: MeasureJson = serde_json::from_str(r#"{"type":"tree","mass":{"":"1","0":"1"}}"#).unwrap();
        assert!(missing.to_measure(&LevelSystem::binary()).is_err());
    }

    #[test]
    fn point_measure_json() {
        let text = r#"{"type":"point","depth":1,"mass":{"0":"1/3","1":"2/3"}}"#;
        let json: MeasureJson = serde_json::from_str(text).unwrap();
        let mu = json.to_measure(&LevelSystem::binary()).unwrap();
        assert_eq!(mu.total_mass(), int(1));
    }

    #[test]
    fn step_function_json() {
        let json: StepFunctionJson = serde_json::from_str(r#"{"depth":2,"values":{"01":"3/4","11":"1"}}"#).unwrap();
        let f = json.to_step(&LevelSystem::binary()).unwrap();
        assert_eq!(f.values(), &[int(0), rat(3, 4), int(0), int(1)]);
        let back = StepFunctionJson::from_step(&f).unwrap();
        assert_eq!(back.values.len(), 4);
        assert_eq!(back.to_step(&LevelSystem::binary()).unwrap(), f);
        let bad: StepFunctionJson = serde_json::from_str(r#"{"depth":2,"values":{"0":"1"}}"#).unwrap();
        assert!(bad.to_step(&LevelSystem::binary()).is_err());
    }

    #[test]
    fn op_table_json() {
        let text = r#"{"symbols":[0,1],"table":[[0,1],[1,0]],"identity":0,"inverse":{"0":0,"1":1}}"#;
        let json: OpTableJson = serde_json::from_str(text).unwrap();
        let t = json.to_table().unwrap();
        assert_eq!(t.identity(), Some(0));
        assert_eq!(t.inverse(1), Some(1));
        assert_eq!(OpTableJson::from_table(&t), json);
        let wrong: OpTableJson = serde_json::from_str(r#"{"symbols":[0,1],"table":[[0,1],[1,0]],"identity":1}"#).unwrap();
        assert!(wrong.to_table().is_err());
    }

    #[test]
    fn system_json() {
        let json: SystemJson = serde_json::from_str(r#"{"symbols":["a","b"],"basepoint":"a"}"#).unwrap();
        let sys = json.to_system().unwrap();
        assert_eq!(sys.alphabet(3).basepoint(), Some(0));
        assert_eq!(SystemJson::from_system(&sys), json);
        let json: SystemJson = serde_json::from_str(r#"{"levels":[[0,1,2],[0,1]]}"#).unwrap();
        let sys = json.to_system().unwrap();
        assert_eq!((sys.size_at(1), sys.size_at(9)), (3, 2));
    }

    #[test]
    fn bi_descriptor_json() {
        let a = Alphabet::binary();
        let json: BiDescriptorJson = serde_json::from_str(r#"{"left":[0],"center":[1,1],"right":[0,1],"origin":-1}"#).unwrap();
        let x = json.to_descriptor(&a).unwrap();
        assert_eq!(x.symbol_at(0), 1);
        assert_eq!(BiDescriptorJson::from_descriptor(&x, &a).unwrap(), json);
    }
}
