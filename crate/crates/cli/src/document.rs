//! The JSON assessment document and its resolution into core types.

use std::collections::BTreeMap;
use std::sync::Arc;

use prevision::{parse_rational, Assessment, ConditionalGamble, Event, Gamble, Partition, Rational};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// A rational written either as a JSON integer or as a `"p/q"` string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Int(i64),
    Text(String),
}

impl Number {
    pub fn parse(&self, path: &str) -> Result<Rational, CliError> {
        match self {
            Number::Int(i) => Ok(Rational::from_integer((*i).into())),
            Number::Text(s) => parse_rational(s)
                .map_err(|_| CliError::field(path, format!("'{s}' is not an exact rational"))),
        }
    }
}

impl From<&Rational> for Number {
    fn from(r: &Rational) -> Self {
        Number::Text(r.to_string())
    }
}

/// Gamble values, as a list in partition order or keyed by atom.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GambleSpec {
    Values(Vec<Number>),
    ByAtom(BTreeMap<String, Number>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GambleRef {
    Named(String),
    Inline(GambleSpec),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EventRef {
    Named(String),
    Atoms(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntrySpec {
    pub gamble: GambleRef,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cond: Option<EventRef>,
    pub value: Number,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssessmentDocument {
    pub partition: Vec<String>,
    #[serde(default)]
    pub gambles: BTreeMap<String, GambleSpec>,
    #[serde(default)]
    pub events: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub entries: Vec<EntrySpec>,
}

/// A document with every name resolved.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub partition: Arc<Partition>,
    pub gambles: BTreeMap<String, Gamble>,
    pub events: BTreeMap<String, Event>,
    pub assessment: Assessment,
    /// A readable label per assessment entry, e.g. `X|B`.
    pub labels: Vec<String>,
}

impl AssessmentDocument {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(CliError::Json)
    }

    pub fn resolve(&self) -> Result<Resolved, CliError> {
        let partition = Partition::new(self.partition.iter().cloned())
            .map_err(|e| CliError::field("partition", e.to_string()))?;
        let mut gambles = BTreeMap::new();
        for (name, spec) in &self.gambles {
            let g = gamble_from_spec(&partition, spec, &format!("gambles.{name}"))?;
            gambles.insert(name.clone(), g);
        }
        let mut events = BTreeMap::new();
        for (name, atoms) in &self.events {
            let e = event_from_atoms(&partition, atoms, &format!("events.{name}"))?;
            events.insert(name.clone(), e);
        }
        let mut assessment = Assessment::new(&partition);
        let mut labels: Vec<String> = Vec::new();
        for (i, entry) in self.entries.iter().enumerate() {
            let path = format!("entries[{i}]");
            let (gamble, gamble_label) = match &entry.gamble {
                GambleRef::Named(name) => {
                    let g = gambles.get(name).ok_or_else(|| {
                        CliError::field(&format!("{path}.gamble"), format!("unknown gamble '{name}'"))
                    })?;
                    (g.clone(), name.clone())
                }
                GambleRef::Inline(spec) => {
                    let g = gamble_from_spec(&partition, spec, &format!("{path}.gamble"))?;
                    let label = g.to_string();
                    (g, label)
                }
            };
            let (cond, cond_label) = match &entry.cond {
                None => (Event::omega(&partition), None),
                Some(r) => {
                    let (e, l) = resolve_event(&partition, &events, r, &format!("{path}.cond"))?;
                    (e, Some(l))
                }
            };
            let cg = ConditionalGamble::new(gamble, cond)
                .map_err(|e| CliError::field(&format!("{path}.cond"), e.to_string()))?;
            let value = entry.value.parse(&format!("{path}.value"))?;
            let before = assessment.len();
            assessment
                .insert(cg, value)
                .map_err(|e| CliError::field(&path, e.to_string()))?;
            if assessment.len() > before {
                labels.push(match cond_label {
                    Some(c) => format!("{gamble_label}|{c}"),
                    None => gamble_label,
                });
            }
        }
        Ok(Resolved {
            partition,
            gambles,
            events,
            assessment,
            labels,
        })
    }
}

pub fn gamble_from_spec(
    partition: &Arc<Partition>,
    spec: &GambleSpec,
    path: &str,
) -> Result<Gamble, CliError> {
    let values = match spec {
        GambleSpec::Values(vals) => {
            if vals.len() != partition.size() {
                return Err(CliError::field(
                    path,
                    format!("expected {} values, found {}", partition.size(), vals.len()),
                ));
            }
            vals.iter()
                .enumerate()
                .map(|(i, v)| v.parse(&format!("{path}[{i}]")))
                .collect::<Result<Vec<_>, _>>()?
        }
        GambleSpec::ByAtom(map) => {
            if let Some(extra) = map.keys().find(|k| partition.index_of(k).is_none()) {
                return Err(CliError::field(path, format!("unknown atom '{extra}'")));
            }
            partition
                .atoms()
                .iter()
                .map(|atom| match map.get(atom) {
                    Some(v) => v.parse(&format!("{path}.{atom}")),
                    None => Err(CliError::field(path, format!("missing value for atom '{atom}'"))),
                })
                .collect::<Result<Vec<_>, _>>()?
        }
    };
    Gamble::new(partition, values).map_err(|e| CliError::field(path, e.to_string()))
}

pub fn event_from_atoms(
    partition: &Arc<Partition>,
    atoms: &[String],
    path: &str,
) -> Result<Event, CliError> {
    if let Some(bad) = atoms.iter().find(|a| partition.index_of(a).is_none()) {
        return Err(CliError::field(path, format!("unknown atom '{bad}'")));
    }
    Event::from_labels(partition, atoms.iter().map(String::as_str))
        .map_err(|e| CliError::field(path, e.to_string()))
}

fn resolve_event(
    partition: &Arc<Partition>,
    events: &BTreeMap<String, Event>,
    r: &EventRef,
    path: &str,
) -> Result<(Event, String), CliError> {
    match r {
        EventRef::Named(name) => events
            .get(name)
            .map(|e| (e.clone(), name.clone()))
            .ok_or_else(|| CliError::field(path, format!("unknown event '{name}'"))),
        EventRef::Atoms(atoms) => {
            let e = event_from_atoms(partition, atoms, path)?;
            let label = e.to_string();
            Ok((e, label))
        }
    }
}

impl Resolved {
    /// Parses `NAME` or `NAME|EVENT`, where `EVENT` is an event name, `Ω`
    /// or a braced atom list such as `{a,b}`.
    pub fn target(&self, text: &str, path: &str) -> Result<(ConditionalGamble, String), CliError> {
        let (g, c) = match text.split_once('|') {
            Some((g, c)) => (g.trim(), Some(c.trim())),
            None => (text.trim(), None),
        };
        let gamble = self
            .gambles
            .get(g)
            .ok_or_else(|| CliError::field(path, format!("unknown gamble '{g}'")))?;
        let cond = match c {
            None | Some("Ω") | Some("omega") => Event::omega(&self.partition),
            Some(c) if c.starts_with('{') && c.ends_with('}') => {
                let atoms: Vec<String> = c[1..c.len() - 1]
                    .split(',')
                    .map(|s| s.trim().to_string())
                    .filter(|s| !s.is_empty())
                    .collect();
                event_from_atoms(&self.partition, &atoms, path)?
            }
            Some(c) => self
                .events
                .get(c)
                .cloned()
                .ok_or_else(|| CliError::field(path, format!("unknown event '{c}'")))?,
        };
        let cg = ConditionalGamble::new(gamble.clone(), cond)
            .map_err(|e| CliError::field(path, e.to_string()))?;
        Ok((cg, text.trim().to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use prevision::rat;

    const DOC: &str = r#"{
        "partition": ["a", "b", "c"],
        "gambles": {"X": {"a": -1, "b": "1", "c": "0"}, "Y": [1, "1/2", 0]},
        "events": {"B": ["a", "b"]},
        "entries": [
            {"gamble": "X", "cond": "B", "value": "1/5"},
            {"gamble": "Y", "value": 0},
            {"gamble": [0, 0, 1], "cond": ["c"], "value": "1"}
        ]
    }"#;

    #[test]
    fn resolves_names_and_defaults() {
        let r = AssessmentDocument::from_json(DOC).unwrap().resolve().unwrap();
        assert_eq!(r.assessment.len(), 3);
        assert_eq!(r.labels[0], "X|B");
        assert_eq!(r.labels[1], "Y");
        assert!(r.assessment.entries()[1].cond().is_omega());
        assert_eq!(r.assessment.entries()[0].value, rat(1, 5));
        assert_eq!(*r.gambles["Y"].value(1), rat(1, 2));
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let doc = DOC.replace("\"events\"", "\"evnets\"");
        assert!(matches!(AssessmentDocument::from_json(&doc), Err(CliError::Json(_))));
    }

    #[test]
    fn errors_carry_field_paths() {
        let doc = DOC.replace("\"cond\": \"B\"", "\"cond\": \"Q\"");
        let err = AssessmentDocument::from_json(&doc).unwrap().resolve().unwrap_err();
        assert_eq!(err.to_string(), "entries[0].cond: unknown event 'Q'");
        let doc = DOC.replace("\"1/5\"", "\"0.2\"");
        let err = AssessmentDocument::from_json(&doc).unwrap().resolve().unwrap_err();
        assert!(err.to_string().starts_with("entries[0].value:"));
        let doc = DOC.replace("\"c\": \"0\"", "\"d\": \"0\"");
        let err = AssessmentDocument::from_json(&doc).unwrap().resolve().unwrap_err();
        assert_eq!(err.to_string(), "gambles.X: unknown atom 'd'");
    }

    #[test]
    fn conflicting_duplicates_are_reported() {
        let doc = DOC.replace("{\"gamble\": \"Y\", \"value\": 0}", "{\"gamble\": \"X\", \"cond\": \"B\", \"value\": 1}");
        let err = AssessmentDocument::from_json(&doc).unwrap().resolve().unwrap_err();
        assert!(err.to_string().starts_with("entries[1]:"));
    }

    #[test]
    fn targets_accept_names_and_atom_lists() {
        let r = AssessmentDocument::from_json(DOC).unwrap().resolve().unwrap();
        let (t, _) = r.target("X|B", "--target").unwrap();
        assert_eq!(t, r.assessment.entries()[0].gamble);
        let (t, _) = r.target("X|{a, b}", "--target").unwrap();
        assert_eq!(t, r.assessment.entries()[0].gamble);
        assert!(r.target("X", "--target").unwrap().0.cond().is_omega());
        assert!(r.target("Z|B", "--target").is_err());
    }
}
