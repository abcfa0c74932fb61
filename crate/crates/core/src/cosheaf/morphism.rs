use std::fmt;

use super::Cosheaf;

/// Problems found by [`CosheafMorphism::validate`], one line each.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CosheafReport {
    pub violations: Vec<String>,
}

impl CosheafReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for CosheafReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.violations.join("; "))
    }
}

impl std::error::Error for CosheafReport {}

/// A natural transformation between cosheaves presented over the same
/// critical values: one map per node set and per edge set, commuting with
/// the attaching maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosheafMorphism {
    source: Cosheaf,
    target: Cosheaf,
    nodes: Vec<Vec<usize>>,
    edges: Vec<Vec<usize>>,
}

impl CosheafMorphism {
    pub fn new(
        source: Cosheaf,
        target: Cosheaf,
        nodes: Vec<Vec<usize>>,
        edges: Vec<Vec<usize>>,
    ) -> Result<CosheafMorphism, CosheafReport> {
        let m = CosheafMorphism {
            source,
            target,
            nodes,
            edges,
        };
        let report = m.validate();
        if report.is_ok() {
            Ok(m)
        } else {
            Err(report)
        }
    }

    pub fn source(&self) -> &Cosheaf {
        &self.source
    }

    pub fn target(&self) -> &Cosheaf {
        &self.target
    }

    /// Map on `V_i`.
    pub fn node_map(&self, i: usize) -> &[usize] {
        &self.nodes[i]
    }

    /// Map on `E_i`.
    pub fn edge_map(&self, i: usize) -> &[usize] {
        &self.edges[i]
    }

    pub fn validate(&self) -> CosheafReport {
        let (f, g) = (&self.source, &self.target);
        let mut out = Vec::new();
        if f.criticals() != g.criticals() {
            out.push("source and target have different critical values".to_string());
            return CosheafReport { violations: out };
        }
        let n = f.num_levels();
        if self.nodes.len() != n || self.edges.len() != n.saturating_sub(1) {
            out.push("one map per level and per slot is required".to_string());
            return CosheafReport { violations: out };
        }
        for i in 0..n {
            if self.nodes[i].len() != f.nodes(i).len() {
                out.push(format!("map on level {i} is not total"));
            } else if let Some(k) = self.nodes[i].iter().position(|&x| x >= g.nodes(i).len()) {
                out.push(format!("`{}` maps outside level {i}", f.nodes(i)[k].name));
            }
        }
        for i in 0..n.saturating_sub(1) {
            if self.edges[i].len() != f.edges(i).len() {
                out.push(format!("map on slot {i} is not total"));
                continue;
            }
            for (k, &y) in self.edges[i].iter().enumerate() {
                let name = &f.edges(i)[k].name;
                if y >= g.edges(i).len() {
                    out.push(format!("`{name}` maps outside slot {i}"));
                    continue;
                }
                let lo = self.nodes[i].get(f.left(i)[k]);
                if lo.is_some_and(|&v| g.left(i)[y] != v) {
                    out.push(format!("`{name}` in slot {i} breaks the left attaching map"));
                }
                let hi = self.nodes[i + 1].get(f.right(i)[k]);
                if hi.is_some_and(|&v| g.right(i)[y] != v) {
                    out.push(format!("`{name}` in slot {i} breaks the right attaching map"));
                }
            }
        }
        CosheafReport { violations: out }
    }

    /// Whether every component map is a bijection.
    pub fn is_isomorphism(&self) -> bool {
        let bij = |m: &[usize], size: usize| {
            let mut hit = vec![false; size];
            m.len() == size && m.iter().all(|&x| !std::mem::replace(&mut hit[x], true))
        };
        (0..self.source.num_levels()).all(|i| bij(&self.nodes[i], self.target.nodes(i).len()))
            && (0..self.edges.len()).all(|i| bij(&self.edges[i], self.target.edges(i).len()))
    }
}

#[cfg(test)]
mod tests {
    use super::super::reeb_cosheaf;
    use super::*;
    use crate::fixtures::looped;
    use crate::rational::Rational as Q;

    #[test]
    fn identity_and_broken_maps() {
        let f = reeb_cosheaf(&looped(Q::ZERO, Q::ONE));
        let id = CosheafMorphism::new(f.clone(), f.clone(), vec![vec![0], vec![0]], vec![vec![0, 1]]).unwrap();
        assert!(id.is_isomorphism());
        let fold = CosheafMorphism::new(f.clone(), f.clone(), vec![vec![0], vec![0]], vec![vec![0, 0]]).unwrap();
        assert!(!fold.is_isomorphism());
        let bad = CosheafMorphism::new(f.clone(), f, vec![vec![0], vec![1]], vec![vec![0, 1]]).unwrap_err();
        assert!(bad.violations[0].contains("level 1"));
    }
}
