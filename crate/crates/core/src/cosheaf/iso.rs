use super::{display, resample, Cosheaf, CosheafMorphism};
use crate::graph::{iso::match_reduced, IsoError, DEFAULT_ISO_BUDGET};
use crate::rational::{sorted_unique, Rational};

/// Searches for an isomorphism of cosheaves. Both are first presented over
/// the union of their critical values, so the answer does not depend on
/// presentation; the witness relates those presentations.
pub fn is_cosheaf_iso(f: &Cosheaf, g: &Cosheaf) -> Result<Option<CosheafMorphism>, IsoError> {
    let common = sorted_unique(f.criticals().iter().chain(g.criticals()).copied().collect());
    let fc = resample(f, &common, Rational::ZERO).expect("common values refine both");
    let gc = resample(g, &common, Rational::ZERO).expect("common values refine both");
    let (df, dg) = (display(&fc), display(&gc));
    let Some((sigma, tau)) = match_reduced(&df, &dg, DEFAULT_ISO_BUDGET)? else {
        return Ok(None);
    };
    // `display` numbers vertices level by level and edges slot by slot.
    let split = |sizes: Vec<usize>, flat: Vec<usize>| -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut at = 0;
        for s in sizes {
            out.push(flat[at..at + s].to_vec());
            at += s;
        }
        out
    };
    let n = common.len();
    let local = |x: usize, sizes: &[usize]| -> usize {
        let mut x = x;
        for &s in sizes {
            if x < s {
                return x;
            }
            x -= s;
        }
        unreachable!("index within the display")
    };
    let gn: Vec<usize> = (0..n).map(|i| gc.nodes(i).len()).collect();
    let ge: Vec<usize> = (0..n.saturating_sub(1)).map(|i| gc.edges(i).len()).collect();
    let nodes = split(
        (0..n).map(|i| fc.nodes(i).len()).collect(),
        sigma.iter().map(|v| local(v.index(), &gn)).collect(),
    );
    let edges = split(
        (0..n.saturating_sub(1)).map(|i| fc.edges(i).len()).collect(),
        tau.iter().map(|e| local(e.index(), &ge)).collect(),
    );
    Ok(Some(
        CosheafMorphism::new(fc, gc, nodes, edges).expect("a level-preserving graph iso is natural"),
    ))
}
