//! Commuting-diagram checking by exhaustive path comparison.

use super::{CatError, TensorCategory};
use crate::report::Report;

/// A finite diagram: objects at the vertices, morphisms on directed edges.
///
/// Isomorphism edges are entered as two opposite edges (every structural
/// isomorphism in this workspace carries an explicit inverse), so a diagram
/// is just a labelled directed multigraph.
pub struct Diagram<C: TensorCategory> {
    pub objects: Vec<C::Obj>,
    pub edges: Vec<Edge<C>>,
}

pub struct Edge<C: TensorCategory> {
    pub from: usize,
    pub to: usize,
    pub label: String,
    pub mor: C::Mor,
}

impl<C: TensorCategory> Diagram<C> {
    pub fn new(objects: Vec<C::Obj>) -> Diagram<C> {
        Diagram { objects, edges: Vec::new() }
    }

    pub fn edge(&mut self, from: usize, to: usize, label: &str, mor: C::Mor) {
        self.edges.push(Edge { from, to, label: label.to_string(), mor });
    }
}

/// Checks that every pair of parallel simple paths has equal composites.
///
/// Endpoints are validated against the morphisms' sources and targets first;
/// a mismatch there is a construction error, not a law failure. Cycles are
/// cut by never revisiting a vertex, which is exact for the (acyclic or
/// iso-square) diagrams this workspace builds.
pub fn check_diagram<C: TensorCategory>(d: &Diagram<C>) -> Result<Report, CatError> {
    for e in &d.edges {
        if C::source(&e.mor) != d.objects[e.from] || C::target(&e.mor) != d.objects[e.to] {
            return Err(CatError::Shape(format!(
                "edge `{}` does not run between its declared vertices",
                e.label
            )));
        }
    }
    let mut report = Report::new("diagram");
    for start in 0..d.objects.len() {
        // All simple paths out of `start`, grouped by endpoint.
        let mut composites: Vec<Vec<(String, C::Mor)>> = vec![Vec::new(); d.objects.len()];
        let mut stack: Vec<(usize, Vec<usize>, Option<(String, C::Mor)>)> =
            vec![(start, vec![start], None)];
        while let Some((v, visited, acc)) = stack.pop() {
            if let Some((label, mor)) = &acc {
                composites[v].push((label.clone(), mor.clone()));
            }
            for (idx, e) in d.edges.iter().enumerate() {
                let _ = idx;
                if e.from != v || visited.contains(&e.to) {
                    continue;
                }
                let next = match &acc {
                    None => (e.label.clone(), e.mor.clone()),
                    Some((label, mor)) => {
                        (format!("{label};{}", e.label), C::compose(&e.mor, mor)?)
                    }
                };
                let mut seen = visited.clone();
                seen.push(e.to);
                stack.push((e.to, seen, Some(next)));
            }
        }
        for (end, paths) in composites.iter().enumerate() {
            report.cases += paths.len().saturating_sub(1);
            for pair in paths.windows(2) {
                if pair[0].1 != pair[1].1 {
                    report.record(
                        "parallel paths disagree",
                        format!(
                            "paths `{}` and `{}` from vertex {start} to {end}",
                            pair[0].0, pair[1].0
                        ),
                    );
                }
            }
        }
    }
    Ok(report)
}
