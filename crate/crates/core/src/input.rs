//! JSON input formats: group specifications, action-pair files and corpus
//! files. Every file carries `"schema": 1`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::action::{ActionError, ActionPair, ActionTable};
use crate::cayley::{FiniteGroup, GroupError};
use crate::fpgroup::{parse_presentation, ParseError};
use crate::perm::{Perm, PermError};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InputError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("unsupported schema {found:?}, expected {SCHEMA_VERSION}")]
    Schema { found: Option<u64> },
    #[error("presentation: {0}")]
    Presentation(#[from] ParseError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error("unknown action {0:?}, expected \"trivial\", \"conjugation\" or a table")]
    UnknownAction(String),
    #[error("conjugation actions need G and H to have the same multiplication table")]
    ConjugationMismatch,
}

impl InputError {
    /// True for errors in the action tables rather than in the syntax or the
    /// groups themselves.
    pub fn is_invalid_action(&self) -> bool {
        matches!(self, InputError::Action(_) | InputError::ConjugationMismatch)
    }
}

impl From<serde_json::Error> for InputError {
    fn from(e: serde_json::Error) -> Self {
        let message = e.to_string();
        // serde_json appends " at line L column C"; keep only the description
        let message = match message.rfind(" at line ") {
            Some(i) => message[..i].to_string(),
            None => message,
        };
        InputError::Json { line: e.line(), column: e.column(), message }
    }
}

/// A finite group given by name, Cayley table, permutation generators or a
/// presentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Name(String),
    Builtin {
        builtin: String,
    },
    Table {
        table: Vec<Vec<u32>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        elements: Option<Vec<String>>,
    },
    Permutations {
        permutations: Vec<Vec<u32>>,
    },
    Presentation {
        presentation: String,
    },
}

impl GroupSpec {
    pub fn builtin(name: &str) -> GroupSpec {
        GroupSpec::Builtin { builtin: name.to_string() }
    }

    pub fn resolve(&self, max_cosets: usize) -> Result<FiniteGroup, InputError> {
        match self {
            GroupSpec::Name(name) | GroupSpec::Builtin { builtin: name } => Ok(FiniteGroup::builtin(name)?),
            GroupSpec::Table { table, elements } => {
                let names = match elements {
                    Some(names) => names.clone(),
                    None => (0..table.len()).map(|i| i.to_string()).collect(),
                };
                Ok(FiniteGroup::from_table(names, table.clone())?)
            }
            GroupSpec::Permutations { permutations } => {
                if permutations.is_empty() {
                    return Ok(FiniteGroup::trivial());
                }
                let gens = permutations.iter().map(|p| Perm::from_images(p.clone())).collect::<Result<Vec<_>, _>>()?;
                Ok(FiniteGroup::from_permutations(gens)?)
            }
            GroupSpec::Presentation { presentation } => {
                let p = parse_presentation(presentation)?;
                Ok(FiniteGroup::from_presentation(&p, max_cosets)?)
            }
        }
    }

    /// Short label for reports.
    pub fn label(&self) -> String {
        match self {
            GroupSpec::Name(name) | GroupSpec::Builtin { builtin: name } => name.clone(),
            GroupSpec::Table { table, .. } => format!("table[{}]", table.len()),
            GroupSpec::Permutations { permutations } => format!("perms[{}]", permutations.len()),
            GroupSpec::Presentation { presentation } => presentation.clone(),
        }
    }
}

/// Reads a group from file contents: either a JSON group file or, if the text
/// starts with `<`, a presentation.
pub fn parse_group_text(text: &str, max_cosets: usize) -> Result<(GroupSpec, FiniteGroup), InputError> {
    if text.trim_start().starts_with('<') {
        let spec = GroupSpec::Presentation { presentation: text.trim().to_string() };
        let group = spec.resolve(max_cosets)?;
        return Ok((spec, group));
    }
    let file: GroupFile = from_json(text)?;
    let group = file.group.resolve(max_cosets)?;
    Ok((file.group, group))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    pub schema: u32,
    pub group: GroupSpec,
}

/// Either a named standard action or an explicit table whose row `h` lists
/// `g^h` for every element `g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ActionSpec {
    Named(String),
    Table(Vec<Vec<u32>>),
}

impl ActionSpec {
    fn resolve(&self, acted: &FiniteGroup, acting: &FiniteGroup) -> Result<ActionTable, InputError> {
        match self {
            ActionSpec::Named(s) if s == "trivial" => Ok(ActionTable::trivial(acted, acting)),
            ActionSpec::Named(s) if s == "conjugation" => {
                if acted.rows() != acting.rows() {
                    return Err(InputError::ConjugationMismatch);
                }
                Ok(ActionTable::conjugation(acted))
            }
            ActionSpec::Named(s) => Err(InputError::UnknownAction(s.clone())),
            ActionSpec::Table(rows) => Ok(ActionTable::new(rows.clone(), acted.order(), acting.order())?),
        }
    }
}

/// Two groups and the actions of each on the other.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairSpec {
    pub g: GroupSpec,
    pub h: GroupSpec,
    /// `H` acting on `G`
    pub action_on_g: ActionSpec,
    /// `G` acting on `H`
    pub action_on_h: ActionSpec,
}

impl PairSpec {
    pub fn resolve(&self, max_cosets: usize) -> Result<ActionPair, InputError> {
        let g = self.g.resolve(max_cosets)?;
        let h = self.h.resolve(max_cosets)?;
        let on_g = self.action_on_g.resolve(&g, &h)?;
        let on_h = self.action_on_h.resolve(&h, &g)?;
        Ok(ActionPair::new(g, h, on_g, on_h)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairFile {
    pub schema: u32,
    #[serde(flatten)]
    pub pair: PairSpec,
}

pub fn parse_pair_text(text: &str) -> Result<PairSpec, InputError> {
    let file: PairFile = from_json(text)?;
    Ok(file.pair)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedGroupSpec {
    pub name: String,
    pub group: GroupSpec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedPairSpec {
    pub name: String,
    /// `false` marks a pair the suite must reject as incompatible
    #[serde(default = "yes")]
    pub expect_compatible: bool,
    #[serde(flatten)]
    pub pair: PairSpec,
}

fn yes() -> bool {
    true
}

/// User corpus for the verification suite.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusFile {
    pub schema: u32,
    #[serde(default)]
    pub groups: Vec<NamedGroupSpec>,
    #[serde(default)]
    pub pairs: Vec<NamedPairSpec>,
}

pub fn parse_corpus_text(text: &str) -> Result<CorpusFile, InputError> {
    from_json(text)
}

/// Deserializes after checking the schema field, so that a wrong version is
/// reported as such rather than as a shape error.
fn from_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, InputError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    match value.get("schema").and_then(serde_json::Value::as_u64) {
        Some(v) if v == SCHEMA_VERSION as u64 => {}
        found => return Err(InputError::Schema { found }),
    }
    Ok(serde_json::from_str(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_spec_forms() {
        let specs = [
            r#""S3""#,
            r#"{"builtin": "S3"}"#,
            r#"{"permutations": [[1, 2, 0], [1, 0, 2]]}"#,
            r#"{"presentation": "<a, b | a^3, b^2, (ab)^2>"}"#,
        ];
        for s in specs {
            let spec: GroupSpec = serde_json::from_str(s).unwrap();
            assert_eq!(spec.resolve(1000).unwrap().order(), 6, "{s}");
        }
        let spec: GroupSpec = serde_json::from_str(r#"{"table": [[0, 1], [1, 0]], "elements": ["e", "t"]}"#).unwrap();
        let g = spec.resolve(1000).unwrap();
        assert_eq!(g.names(), ["e", "t"]);
        let spec: GroupSpec = serde_json::from_str(r#"{"permutations": []}"#).unwrap();
        assert_eq!(spec.resolve(10).unwrap().order(), 1);
    }

    #[test]
    fn bad_inputs_are_classified() {
        let err = parse_pair_text("{\"schema\": 1,\n \"g\": ").unwrap_err();
        assert!(matches!(err, InputError::Json { line: 2, .. }), "{err:?}");
        let err = parse_pair_text(r#"{"schema": 2}"#).unwrap_err();
        assert_eq!(err, InputError::Schema { found: Some(2) });
        let err = parse_group_text("<a | a^>", 10).unwrap_err();
        assert!(matches!(err, InputError::Presentation(_)));

        let pair = parse_pair_text(
            r#"{"schema": 1, "g": "C2", "h": "C3", "action_on_g": "conjugation", "action_on_h": "trivial"}"#,
        )
        .unwrap();
        let err = pair.resolve(10).unwrap_err();
        assert!(err.is_invalid_action());
        let pair = parse_pair_text(
            r#"{"schema": 1, "g": "C3", "h": "C2", "action_on_g": [[0, 1, 2], [0, 1, 1]], "action_on_h": "trivial"}"#,
        )
        .unwrap();
        assert!(pair.resolve(10).unwrap_err().is_invalid_action());
    }

    #[test]
    fn pair_file_round_trip() {
        let text = r#"{"schema": 1, "g": "S3", "h": "S3", "action_on_g": "conjugation", "action_on_h": "conjugation"}"#;
        let pair = parse_pair_text(text).unwrap();
        let resolved = pair.resolve(10).unwrap();
        assert_eq!(resolved, ActionPair::conjugation(&FiniteGroup::builtin("S3").unwrap()));
        let file = PairFile { schema: 1, pair };
        let again = parse_pair_text(&serde_json::to_string(&file).unwrap()).unwrap();
        assert_eq!(again, file.pair);
    }

    #[test]
    fn corpus_file() {
        let c = parse_corpus_text(r#"{"schema": 1}"#).unwrap();
        assert!(c.groups.is_empty() && c.pairs.is_empty());
        let c = parse_corpus_text(
            r#"{"schema": 1, "groups": [{"name": "mine", "group": {"builtin": "C5"}}],
                "pairs": [{"name": "p", "g": "C2", "h": "C4", "action_on_g": "trivial", "action_on_h": "trivial"}]}"#,
        )
        .unwrap();
        assert_eq!(c.groups[0].name, "mine");
        assert_eq!(c.pairs[0].pair.resolve(10).unwrap().h().order(), 4);
    }
}
