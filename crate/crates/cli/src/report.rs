//! Reports: a serializable record of a command's results and its rendering.

use std::fmt::Write;

use prevision::checker::{Verdict, Violation, Witness};
use prevision::{Attainment, Event, ExtensionReport};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermRecord {
    pub entry: usize,
    pub label: String,
    /// Gamble values in partition order.
    pub values: Vec<String>,
    pub cond: Vec<String>,
    pub price: String,
    /// Positive stakes buy the entry, negative stakes sell it.
    pub stake: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessRecord {
    pub terms: Vec<TermRecord>,
    pub conditioning: Vec<String>,
    pub sup: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckRecord {
    pub class: String,
    pub satisfied: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AttainmentRecord {
    /// Absent when the bound `inf(Z|B)` attains the value.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entry: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stake: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionRecord {
    pub target: String,
    pub mode: String,
    /// A rational, `-inf` or `+inf`.
    pub value: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub attained_by: Option<AttainmentRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValueRecord {
    pub name: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub command: String,
    #[serde(default)]
    pub checks: Vec<CheckRecord>,
    #[serde(default)]
    pub extensions: Vec<ExtensionRecord>,
    #[serde(default)]
    pub values: Vec<ValueRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interval: Option<[String; 2]>,
    pub exit_status: i32,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            checks: Vec::new(),
            extensions: Vec::new(),
            values: Vec::new(),
            interval: None,
            exit_status: 0,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Exit status 1 if any check is violated.
    pub fn with_check_status(mut self) -> Self {
        self.exit_status = i32::from(self.checks.iter().any(|c| !c.satisfied));
        self
    }
}

fn atom_labels(e: &Event) -> Vec<String> {
    e.labels().into_iter().map(str::to_string).collect()
}

pub fn witness_record(w: &Witness, labels: &[String]) -> WitnessRecord {
    WitnessRecord {
        terms: w
            .terms
            .iter()
            .map(|t| TermRecord {
                entry: t.entry,
                label: labels
                    .get(t.entry)
                    .cloned()
                    .unwrap_or_else(|| t.gamble.to_string()),
                values: t.gamble.gamble().values().iter().map(|v| v.to_string()).collect(),
                cond: atom_labels(t.gamble.cond()),
                price: t.value.to_string(),
                stake: t.stake.to_string(),
            })
            .collect(),
        conditioning: atom_labels(&w.conditioning),
        sup: w.sup_value.to_string(),
    }
}

pub fn check_record(class: &str, v: &Verdict, labels: &[String]) -> CheckRecord {
    let (witness, detail) = match v {
        Verdict::Satisfied => (None, None),
        Verdict::Violated(Violation::Gain(w)) => (Some(witness_record(w, labels)), None),
        Verdict::Violated(Violation::Uncentered { cond, value }) => (
            None,
            Some(match value {
                None => format!("0|{cond} is not assessed"),
                Some(v) => format!("P(0|{cond}) = {v}, not 0"),
            }),
        ),
    };
    CheckRecord {
        class: class.to_string(),
        satisfied: v.is_satisfied(),
        witness,
        detail,
    }
}

pub fn extension_record(
    target: &str,
    mode: &str,
    r: &ExtensionReport,
    labels: &[String],
) -> ExtensionRecord {
    let attained_by = r.attained_by.as_ref().map(|a| match a {
        Attainment::Entry { index, stake } => AttainmentRecord {
            entry: Some(*index),
            label: labels.get(*index).cloned(),
            stake: stake.as_ref().map(|s| s.to_string()),
        },
        Attainment::Vacuous => AttainmentRecord {
            entry: None,
            label: None,
            stake: None,
        },
    });
    ExtensionRecord {
        target: target.to_string(),
        mode: mode.to_string(),
        value: r.value.to_string(),
        attained_by,
    }
}

fn render_witness(out: &mut String, w: &WitnessRecord) {
    let _ = writeln!(
        out,
        "    witness: sup over {{{}}} = {}",
        w.conditioning.join(","),
        w.sup
    );
    for t in &w.terms {
        let action = if t.stake.starts_with('-') { "sell" } else { "buy" };
        let stake = t.stake.trim_start_matches('-');
        let _ = writeln!(
            out,
            "      {action} {stake} × [{}] at {} (entry {})",
            t.label, t.price, t.entry
        );
    }
}

/// The human-readable table printed by default.
pub fn render(report: &Report) -> String {
    let mut out = String::new();
    if let Some([lo, hi]) = &report.interval {
        let _ = writeln!(out, "interval: [{lo}, {hi}]");
    }
    for v in &report.values {
        let _ = writeln!(out, "{:<24} {}", v.name, v.value);
    }
    if !report.extensions.is_empty() {
        let _ = writeln!(out, "{:<24} {:<10} {:<10} attained by", "target", "mode", "value");
        for e in &report.extensions {
            let by = match &e.attained_by {
                None => "-".to_string(),
                Some(AttainmentRecord { entry: None, .. }) => "inf of target".to_string(),
                Some(a) => {
                    let mut s = format!(
                        "entry {} [{}]",
                        a.entry.unwrap_or_default(),
                        a.label.as_deref().unwrap_or("?")
                    );
                    if let Some(st) = &a.stake {
                        let _ = write!(s, " stake {st}");
                    }
                    s
                }
            };
            let _ = writeln!(out, "{:<24} {:<10} {:<10} {by}", e.target, e.mode, e.value);
        }
    }
    for c in &report.checks {
        let verdict = if c.satisfied { "yes" } else { "no" };
        match &c.detail {
            Some(d) => {
                let _ = writeln!(out, "{}: {verdict} ({d})", c.class);
            }
            None => {
                let _ = writeln!(out, "{}: {verdict}", c.class);
            }
        }
        if let Some(w) = &c.witness {
            render_witness(&mut out, w);
        }
    }
    out
}
