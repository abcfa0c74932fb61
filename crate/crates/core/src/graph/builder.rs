use std::collections::{BTreeMap, HashMap, HashSet};

use thiserror::Error;

use super::{RGraph, ValidationReport, VertexId};
use crate::rational::{sorted_unique, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("edge `{edge}` names unknown vertex `{vertex}`")]
    UnknownVertex { edge: String, vertex: String },
    #[error("edge `{edge}` does not go strictly upward ({low} -> {high})")]
    NotIncreasing {
        edge: String,
        low: Rational,
        high: Rational,
    },
    #[error("invalid graph: {0}")]
    Invalid(ValidationReport),
}

/// Output of [`GraphBuilder::build`].
#[derive(Clone, Debug)]
pub struct Built {
    pub graph: RGraph,
    /// Declared edges that were split at intermediate critical values,
    /// mapped to their segment names bottom to top.
    pub splits: BTreeMap<String, Vec<String>>,
}

/// Assembles a graph from vertex values and edges given by their endpoint
/// names. Edges whose span crosses other critical values are split there;
/// segment `k` of edge `e` is named `e.k` and the vertex between segments
/// `k - 1` and `k` is named `e:k`.
#[derive(Clone, Debug, Default)]
pub struct GraphBuilder {
    vertices: Vec<(String, Rational)>,
    edges: Vec<(String, String, String)>,
    extra: Vec<Rational>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(&mut self, name: impl Into<String>, value: Rational) -> &mut Self {
        self.vertices.push((name.into(), value));
        self
    }

    pub fn edge(
        &mut self,
        name: impl Into<String>,
        low: impl Into<String>,
        high: impl Into<String>,
    ) -> &mut Self {
        self.edges.push((name.into(), low.into(), high.into()));
        self
    }

    /// Critical values to include even when no vertex sits there.
    pub fn extra_criticals(&mut self, values: impl IntoIterator<Item = Rational>) -> &mut Self {
        self.extra.extend(values);
        self
    }

    pub fn build(&self) -> Result<Built, BuildError> {
        let mut taken: HashSet<&str> = HashSet::new();
        let mut value_of: HashMap<&str, Rational> = HashMap::new();
        for (name, value) in &self.vertices {
            if !taken.insert(name) {
                return Err(BuildError::DuplicateId(name.clone()));
            }
            value_of.insert(name, *value);
        }
        for (name, _, _) in &self.edges {
            if !taken.insert(name) {
                return Err(BuildError::DuplicateId(name.clone()));
            }
        }
        let mut all: Vec<Rational> = self.vertices.iter().map(|(_, v)| *v).collect();
        all.extend(self.extra.iter().copied());
        let criticals = sorted_unique(all);
        let level = |t: Rational| criticals.binary_search(&t).expect("value is critical");

        let mut vertices: Vec<(String, usize)> = self
            .vertices
            .iter()
            .map(|(n, v)| (n.clone(), level(*v)))
            .collect();
        let mut index: HashMap<String, VertexId> = vertices
            .iter()
            .enumerate()
            .map(|(i, (n, _))| (n.clone(), VertexId(i as u32)))
            .collect();
        let mut edges = Vec::new();
        let mut splits = BTreeMap::new();
        let fresh = |base: String, index: &HashMap<String, VertexId>| -> String {
            let mut name = base;
            while index.contains_key(&name) || taken.contains(name.as_str()) {
                name.push('\'');
            }
            name
        };
        for (name, low, high) in &self.edges {
            let lv = *value_of.get(low.as_str()).ok_or_else(|| BuildError::UnknownVertex {
                edge: name.clone(),
                vertex: low.clone(),
            })?;
            let hv = *value_of.get(high.as_str()).ok_or_else(|| BuildError::UnknownVertex {
                edge: name.clone(),
                vertex: high.clone(),
            })?;
            if lv >= hv {
                return Err(BuildError::NotIncreasing {
                    edge: name.clone(),
                    low: lv,
                    high: hv,
                });
            }
            let (li, hi) = (level(lv), level(hv));
            if hi == li + 1 {
                edges.push((name.clone(), index[low], index[high]));
                continue;
            }
            let mut prev = index[low];
            let mut segs = Vec::new();
            for (k, lvl) in (li + 1..hi).enumerate() {
                let vname = fresh(format!("{name}:{}", k + 1), &index);
                let id = VertexId(vertices.len() as u32);
                vertices.push((vname.clone(), lvl));
                index.insert(vname, id);
                let ename = fresh(format!("{name}.{k}"), &index);
                edges.push((ename.clone(), prev, id));
                segs.push(ename);
                prev = id;
            }
            let ename = fresh(format!("{name}.{}", hi - li - 1), &index);
            edges.push((ename.clone(), prev, index[high]));
            segs.push(ename);
            splits.insert(name.clone(), segs);
        }
        let graph = RGraph::new(criticals, vertices, edges).map_err(BuildError::Invalid)?;
        Ok(Built { graph, splits })
    }
}
