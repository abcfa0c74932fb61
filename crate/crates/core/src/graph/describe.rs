use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::{RGraph, VertexId};
use crate::rational::Rational;

/// A raw, possibly malformed presentation, addressed by names. Attaching
/// maps may be partial or point anywhere; [`validate`] reports what is wrong.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GraphDescription {
    pub criticals: Vec<Rational>,
    pub levels: Vec<Vec<String>>,
    pub slots: Vec<SlotDescription>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SlotDescription {
    pub edges: Vec<String>,
    pub down: BTreeMap<String, String>,
    pub up: BTreeMap<String, String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    CriticalsNotIncreasing,
    LevelCount,
    SlotCount,
    LevelOutOfRange,
    DuplicateId,
    PartialAttachingMap,
    UnknownVertex,
    WrongLevel,
    StrayAttachment,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::CriticalsNotIncreasing => "criticals not strictly increasing",
            Rule::LevelCount => "level count differs from critical count",
            Rule::SlotCount => "slot count is not one less than level count",
            Rule::LevelOutOfRange => "level out of range",
            Rule::DuplicateId => "duplicate id",
            Rule::PartialAttachingMap => "partial attaching map",
            Rule::UnknownVertex => "attaching map names unknown vertex",
            Rule::WrongLevel => "attaching map lands on wrong level",
            Rule::StrayAttachment => "attaching map defined off its slot",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub rule: Rule,
    pub id: String,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, rule: Rule, id: &str, message: impl Into<String>) {
        self.violations.push(Violation {
            rule,
            id: id.to_string(),
            message: message.into(),
        });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return f.write_str("ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{} `{}`: {}", v.rule, v.id, v.message)?;
        }
        Ok(())
    }
}

impl std::error::Error for ValidationReport {}

/// Checks every structural invariant of a presentation.
pub fn validate(d: &GraphDescription) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = d.criticals.len();
    if d.criticals.windows(2).any(|w| w[0] >= w[1]) {
        report.push(Rule::CriticalsNotIncreasing, "criticals", "values must increase strictly");
    }
    if d.levels.len() != n {
        report.push(
            Rule::LevelCount,
            "levels",
            format!("{} levels for {n} criticals", d.levels.len()),
        );
    }
    if d.slots.len() != n.saturating_sub(1) {
        report.push(
            Rule::SlotCount,
            "slots",
            format!("{} slots for {n} criticals", d.slots.len()),
        );
    }
    let mut seen: HashMap<&str, ()> = HashMap::new();
    let mut level_of: HashMap<&str, usize> = HashMap::new();
    for (i, level) in d.levels.iter().enumerate() {
        for v in level {
            if seen.insert(v, ()).is_some() {
                report.push(Rule::DuplicateId, v, "id used twice");
            }
            level_of.insert(v, i);
        }
    }
    for (i, slot) in d.slots.iter().enumerate() {
        for e in &slot.edges {
            if seen.insert(e, ()).is_some() {
                report.push(Rule::DuplicateId, e, "id used twice");
            }
        }
        for (map, side, want) in [(&slot.down, "lower", i), (&slot.up, "upper", i + 1)] {
            for e in &slot.edges {
                match map.get(e) {
                    None => report.push(
                        Rule::PartialAttachingMap,
                        e,
                        format!("no {side} attaching vertex in slot {i}"),
                    ),
                    Some(v) => match level_of.get(v.as_str()) {
                        None => report.push(Rule::UnknownVertex, e, format!("{side} vertex `{v}`")),
                        Some(&l) if l != want => report.push(
                            Rule::WrongLevel,
                            e,
                            format!("{side} vertex `{v}` is on level {l}, expected {want}"),
                        ),
                        Some(_) => {}
                    },
                }
            }
            for key in map.keys() {
                if !slot.edges.contains(key) {
                    report.push(
                        Rule::StrayAttachment,
                        key,
                        format!("{side} map of slot {i} names an edge outside the slot"),
                    );
                }
            }
        }
    }
    report
}

impl GraphDescription {
    /// Builds the graph if the description is valid.
    pub fn to_graph(&self) -> Result<RGraph, ValidationReport> {
        let report = validate(self);
        if !report.is_ok() {
            return Err(report);
        }
        let mut vertices = Vec::new();
        let mut index = HashMap::new();
        for (i, level) in self.levels.iter().enumerate() {
            for v in level {
                index.insert(v.as_str(), VertexId(vertices.len() as u32));
                vertices.push((v.clone(), i));
            }
        }
        let mut edges = Vec::new();
        for slot in &self.slots {
            for e in &slot.edges {
                edges.push((e.clone(), index[slot.down[e].as_str()], index[slot.up[e].as_str()]));
            }
        }
        RGraph::new(self.criticals.clone(), vertices, edges)
    }
}

impl RGraph {
    pub fn describe(&self) -> GraphDescription {
        let levels = (0..self.num_levels())
            .map(|i| self.level(i).iter().map(|&v| self.vertex(v).name.clone()).collect())
            .collect();
        let slots = (0..self.num_slots())
            .map(|i| {
                let mut s = SlotDescription::default();
                for &e in self.slot(i) {
                    let name = self.edge(e).name.clone();
                    s.down.insert(name.clone(), self.vertex(self.down(e)).name.clone());
                    s.up.insert(name.clone(), self.vertex(self.up(e)).name.clone());
                    s.edges.push(name);
                }
                s
            })
            .collect();
        GraphDescription {
            criticals: self.criticals().to_vec(),
            levels,
            slots,
        }
    }
}
