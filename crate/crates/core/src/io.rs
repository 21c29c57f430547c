//! JSON documents for semigroups, Rees specs, acts, congruences and
//! classifications. Every emitted document carries `"version": 1`.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::act::RightAct;
use crate::catalog;
use crate::closedform::RectBandClassification;
use crate::congruence::Congruence;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::rees::{rees_matrix, ReesMatrixSpec, SandwichEntry};
use crate::semigroup::FiniteSemigroup;

pub const FORMAT_VERSION: u32 = 1;

fn version() -> u32 {
    FORMAT_VERSION
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupJson {
    #[serde(default = "version")]
    pub version: u32,
    pub elements: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupJson {
    Cyclic { cyclic: usize },
    Named { name: String },
    Inline(SemigroupJson),
}

/// A sandwich entry: a group-element index, or the string `"0"` for zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EntryJson {
    Group(usize),
    Mark(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReesSpecJson {
    #[serde(default = "version")]
    pub version: u32,
    pub group: GroupJson,
    pub i_size: usize,
    pub lambda_size: usize,
    pub sandwich: Vec<Vec<EntryJson>>,
    pub with_zero: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SemigroupRef {
    File { file: String },
    Rees(ReesSpecJson),
    Inline(SemigroupJson),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActJson {
    #[serde(default = "version")]
    pub version: u32,
    pub semigroup: SemigroupRef,
    pub states: Vec<String>,
    pub action: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceJson {
    #[serde(default = "version")]
    pub version: u32,
    pub classes: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationJson {
    pub version: u32,
    pub si: bool,
    pub irreducible: Option<bool>,
    pub uniform: bool,
    pub case: String,
    pub lambda_partition: Option<[Vec<usize>; 2]>,
    pub kernel: Option<Vec<String>>,
    pub witnesses: BTreeMap<String, Vec<String>>,
}

/// Any input document, told apart by its fields.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum DocumentJson {
    Act(ActJson),
    Rees(ReesSpecJson),
    Semigroup(SemigroupJson),
}

/// A parsed and validated document.
#[derive(Debug, Clone)]
pub enum Document {
    Semigroup(FiniteSemigroup),
    Rees(ReesMatrixSpec),
    Act {
        act: RightAct,
        /// Present when the act's semigroup was given as a Rees spec.
        rees: Option<ReesMatrixSpec>,
    },
}

impl SemigroupJson {
    pub fn from_semigroup(s: &FiniteSemigroup) -> Self {
        Self {
            version: FORMAT_VERSION,
            elements: s.labels().to_vec(),
            table: s.rows(),
        }
    }

    pub fn build(&self) -> Result<FiniteSemigroup> {
        FiniteSemigroup::new(self.elements.clone(), self.table.clone())
    }
}

impl GroupJson {
    pub fn build(&self) -> Result<FiniteGroup> {
        match self {
            GroupJson::Cyclic { cyclic } => catalog::cyclic(*cyclic),
            GroupJson::Named { name } => catalog::group(name),
            GroupJson::Inline(s) => FiniteGroup::from_semigroup(s.build()?),
        }
    }
}

impl ReesSpecJson {
    pub fn from_spec(spec: &ReesMatrixSpec) -> Self {
        Self {
            version: FORMAT_VERSION,
            group: GroupJson::Inline(SemigroupJson::from_semigroup(spec.group().semigroup())),
            i_size: spec.i_size(),
            lambda_size: spec.lambda_size(),
            sandwich: spec
                .sandwich()
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|e| match *e {
                            SandwichEntry::Zero => EntryJson::Mark("0".into()),
                            SandwichEntry::Group(g) => EntryJson::Group(g),
                        })
                        .collect()
                })
                .collect(),
            with_zero: spec.with_zero(),
        }
    }

    pub fn build(&self) -> Result<ReesMatrixSpec> {
        let sandwich = self
            .sandwich
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| match e {
                        EntryJson::Group(g) => Ok(SandwichEntry::Group(*g)),
                        EntryJson::Mark(m) if m == "0" => Ok(SandwichEntry::Zero),
                        EntryJson::Mark(m) => Err(Error::UnknownLabel(m.clone())),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        ReesMatrixSpec::new(self.group.build()?, self.i_size, self.lambda_size, sandwich, self.with_zero)
    }
}

impl ActJson {
    pub fn from_act(act: &RightAct) -> Self {
        Self {
            version: FORMAT_VERSION,
            semigroup: SemigroupRef::Inline(SemigroupJson::from_semigroup(act.semigroup())),
            states: act.states().to_vec(),
            action: act.action_rows(),
        }
    }

    /// Resolves `{"file": …}` relative to `base`.
    pub fn build(&self, base: &Path) -> Result<(RightAct, Option<ReesMatrixSpec>)> {
        let (semigroup, rees) = match &self.semigroup {
            SemigroupRef::Inline(s) => (s.build()?, None),
            SemigroupRef::Rees(r) => {
                let spec = r.build()?;
                (rees_matrix(&spec)?, Some(spec))
            }
            SemigroupRef::File { file } => match load(&base.join(file))? {
                Document::Semigroup(s) => (s, None),
                Document::Rees(spec) => (rees_matrix(&spec)?, Some(spec)),
                Document::Act { .. } => {
                    return Err(Error::Parse {
                        path: Some(file.clone()),
                        message: "expected a semigroup, found an act".into(),
                    })
                }
            },
        };
        let act = RightAct::new(Arc::new(semigroup), self.states.clone(), self.action.clone())?;
        Ok((act, rees))
    }
}

impl CongruenceJson {
    pub fn from_congruence(act: &RightAct, rho: &Congruence) -> Self {
        Self {
            version: FORMAT_VERSION,
            classes: rho
                .classes()
                .into_iter()
                .map(|c| c.into_iter().map(|a| act.state_label(a).to_string()).collect())
                .collect(),
        }
    }

    pub fn build(&self, act: &RightAct) -> Result<Congruence> {
        let mut class_of = vec![usize::MAX; act.size()];
        for (k, class) in self.classes.iter().enumerate() {
            for label in class {
                let a = act.index_of(label).ok_or_else(|| Error::UnknownLabel(label.clone()))?;
                class_of[a] = k;
            }
        }
        if let Some(a) = class_of.iter().position(|&c| c == usize::MAX) {
            return Err(Error::UnknownLabel(format!("state {} is in no class", act.state_label(a))));
        }
        let rho = Congruence::from_classes(act, class_of);
        if !rho.is_right_compatible(act) {
            return Err(Error::PreconditionViolated("partition is not a right congruence".into()));
        }
        Ok(rho)
    }
}

impl ClassificationJson {
    pub fn from_classification(act: &RightAct, c: &RectBandClassification, irreducible: Option<bool>) -> Self {
        let names = |v: &[usize]| v.iter().map(|&a| act.state_label(a).to_string()).collect();
        Self {
            version: FORMAT_VERSION,
            si: c.si,
            irreducible,
            uniform: c.uniform,
            case: c.case_tag.as_str().to_string(),
            lambda_partition: c.lambda_partition.clone().map(|(a, b)| [a, b]),
            kernel: c.kernel_states.map(|(x, y)| names(&[x, y])),
            witnesses: c.witnesses.iter().map(|(k, v)| (k.clone(), names(v))).collect(),
        }
    }
}

/// Parses a document from text; `{"file": …}` references resolve against
/// `base`.
pub fn parse(text: &str, base: &Path, path: Option<&str>) -> Result<Document> {
    let doc: DocumentJson = serde_json::from_str(text).map_err(|e| Error::Parse {
        path: path.map(str::to_string),
        message: e.to_string(),
    })?;
    Ok(match doc {
        DocumentJson::Semigroup(s) => Document::Semigroup(s.build()?),
        DocumentJson::Rees(r) => Document::Rees(r.build()?),
        DocumentJson::Act(a) => {
            let (act, rees) = a.build(base)?;
            Document::Act { act, rees }
        }
    })
}

pub fn load(path: &Path) -> Result<Document> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_else(PathBuf::new);
    parse(&text, &base, Some(&path.display().to_string()))
}

/// Indented JSON with a trailing newline; arrays of scalars stay on one
/// line so tables read as rows.
pub fn to_pretty<T: Serialize>(value: &T) -> String {
    let value = serde_json::to_value(value).expect("serializable");
    let mut out = String::new();
    write_pretty(&value, 0, &mut out);
    out.push('\n');
    out
}

fn write_pretty(value: &Value, depth: usize, out: &mut String) {
    let pad = |d: usize| "  ".repeat(d);
    match value {
        Value::Array(items) if items.iter().all(|v| !v.is_array() && !v.is_object()) => {
            out.push_str(&serde_json::to_string(value).expect("serializable"));
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (k, v) in items.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                write_pretty(v, depth + 1, out);
                out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (k, (key, v)) in map.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                out.push_str(&serde_json::to_string(key).expect("serializable"));
                out.push_str(": ");
                write_pretty(v, depth + 1, out);
                out.push_str(if k + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
        scalar => out.push_str(&serde_json::to_string(scalar).expect("serializable")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::monocyclic;
    use crate::semigroup::left_zero;

    #[test]
    fn semigroup_round_trip() {
        for (_, s) in catalog::semigroups() {
            let text = to_pretty(&SemigroupJson::from_semigroup(&s));
            match parse(&text, Path::new("."), None).unwrap() {
                Document::Semigroup(t) => assert_eq!(s, t),
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn rees_round_trip_and_cyclic_shorthand() {
        let text = r#"{"group": {"cyclic": 4}, "i_size": 1, "lambda_size": 2,
                       "sandwich": [[0], [1]], "with_zero": true}"#;
        let Document::Rees(spec) = parse(text, Path::new("."), None).unwrap() else {
            panic!()
        };
        assert_eq!(spec.order(), 9);
        let again = to_pretty(&ReesSpecJson::from_spec(&spec));
        let Document::Rees(back) = parse(&again, Path::new("."), None).unwrap() else {
            panic!()
        };
        assert_eq!(spec, back);
        let zero = r#"{"group": {"name": "Z2"}, "i_size": 2, "lambda_size": 2,
                       "sandwich": [["0", 1], [0, "0"]], "with_zero": true}"#;
        assert!(matches!(parse(zero, Path::new("."), None).unwrap(), Document::Rees(_)));
    }

    #[test]
    fn act_and_congruence_round_trip() {
        let act = RightAct::new(
            Arc::new(left_zero(2).unwrap()),
            vec!["t1".into(), "t2".into(), "a".into()],
            vec![vec![0, 0], vec![1, 1], vec![0, 1]],
        )
        .unwrap();
        let text = to_pretty(&ActJson::from_act(&act));
        let Document::Act { act: back, rees } = parse(&text, Path::new("."), None).unwrap() else {
            panic!()
        };
        assert_eq!(act, back);
        assert!(rees.is_none());
        let rho = monocyclic(&act, 0, 1);
        let j = CongruenceJson::from_congruence(&act, &rho);
        assert_eq!(j.classes, vec![vec!["t1".to_string(), "t2".to_string()], vec!["a".to_string()]]);
        assert_eq!(j.build(&act).unwrap(), rho);
    }

    #[test]
    fn errors_carry_context() {
        let err = parse("{\"elements\": [\"a\"],\n \"table\": [[0]", Path::new("."), Some("x.json")).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("x.json") && msg.contains("line 2"), "{msg}");
        let bad = r#"{"elements": ["a","b"], "table": [[1,0],[0,0]]}"#;
        assert_eq!(
            parse(bad, Path::new("."), None).unwrap_err(),
            Error::NonAssociative { x: 0, y: 0, z: 1 }
        );
    }
}
