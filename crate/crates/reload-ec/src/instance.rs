//! Problem instances and whole-instance validation.

use crate::color::ColorSet;
use crate::cost::CostMatrix;
use crate::eval::Objective;
use crate::graph::Graph;
use crate::path::Path;
use thiserror::Error;

/// Which problem family an instance belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemKind {
    /// Find a proper edge coloring minimizing the cost of a given path set.
    Coloring,
    /// Find a proper edge coloring and a rooted spanning tree minimizing the
    /// cost of all root-to-vertex paths.
    PathTree,
}

impl ProblemKind {
    pub fn name(&self) -> &'static str {
        match self {
            ProblemKind::Coloring => "coloring",
            ProblemKind::PathTree => "path-tree",
        }
    }
}

/// A full problem instance. `paths` is used by coloring instances, `root`
/// by path-tree instances. `objective == None` means the instance file left
/// the objective open ("both").
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub kind: ProblemKind,
    pub graph: Graph,
    pub paths: Vec<Path>,
    pub root: Option<usize>,
    pub colors: ColorSet,
    pub costs: CostMatrix,
    pub objective: Option<Objective>,
    pub metadata: Vec<(String, String)>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Violation {
    #[error("color set has {have} colors, need at least max degree + 1 = {need}")]
    ColorSetTooSmall { have: usize, need: usize },
    #[error("cost matrix covers {have} colors, color set has {expect}")]
    MatrixSizeMismatch { have: usize, expect: usize },
    #[error("edge {edge} ({u}-{v}) is not covered by any path")]
    UncoveredEdge { edge: usize, u: usize, v: usize },
    #[error("paths {first} and {second} are identical")]
    DuplicatePath { first: usize, second: usize },
    #[error("coloring instance has no paths")]
    MissingPaths,
    #[error("path-tree instance has no root")]
    MissingRoot,
    #[error("root {root} is out of range")]
    RootOutOfRange { root: usize },
    #[error("path-tree instance must be connected")]
    Disconnected,
    #[error("path-tree instance carries {count} explicit paths")]
    UnexpectedPaths { count: usize },
}

/// Checks every instance invariant and returns all violations, not just the
/// first. An empty result means the instance is valid.
pub fn validate_instance(instance: &Instance) -> Vec<Violation> {
    let mut out = Vec::new();
    let need = instance.graph.max_degree() + 1;
    if instance.colors.count() < need {
        out.push(Violation::ColorSetTooSmall { have: instance.colors.count(), need });
    }
    if instance.costs.colors() != instance.colors.count() {
        out.push(Violation::MatrixSizeMismatch {
            have: instance.costs.colors(),
            expect: instance.colors.count(),
        });
    }
    match instance.kind {
        ProblemKind::Coloring => {
            if instance.paths.is_empty() && instance.graph.edge_count() > 0 {
                out.push(Violation::MissingPaths);
            }
            let mut covered = vec![false; instance.graph.edge_count()];
            for p in &instance.paths {
                for &e in p.edges() {
                    covered[e] = true;
                }
            }
            for (e, &c) in covered.iter().enumerate() {
                if !c {
                    let (u, v) = instance.graph.endpoints(e);
                    out.push(Violation::UncoveredEdge { edge: e, u, v });
                }
            }
            for i in 0..instance.paths.len() {
                for j in i + 1..instance.paths.len() {
                    if instance.paths[i].edges() == instance.paths[j].edges() {
                        out.push(Violation::DuplicatePath { first: i, second: j });
                    }
                }
            }
        }
        ProblemKind::PathTree => {
            match instance.root {
                None => out.push(Violation::MissingRoot),
                Some(r) if r >= instance.graph.vertex_count() => {
                    out.push(Violation::RootOutOfRange { root: r })
                }
                Some(_) => {}
            }
            if !instance.graph.is_connected() {
                out.push(Violation::Disconnected);
            }
            if !instance.paths.is_empty() {
                out.push(Violation::UnexpectedPaths { count: instance.paths.len() });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::cost;

    fn triangle_instance() -> Instance {
        let mut g = Graph::undirected(3);
        let ab = g.add_edge(0, 1).unwrap();
        let bc = g.add_edge(1, 2).unwrap();
        let ca = g.add_edge(2, 0).unwrap();
        let paths = vec![
            Path::new(&g, vec![ab, bc]).unwrap(),
            Path::new(&g, vec![bc, ca]).unwrap(),
            Path::new(&g, vec![ca, ab]).unwrap(),
        ];
        Instance {
            kind: ProblemKind::Coloring,
            graph: g,
            paths,
            root: None,
            colors: ColorSet::new(3).unwrap(),
            costs: CostMatrix::uniform(3, cost(1)),
            objective: Some(Objective::Changeover),
            metadata: Vec::new(),
        }
    }

    #[test]
    fn valid_triangle_passes() {
        assert_eq!(validate_instance(&triangle_instance()), vec![]);
    }

    #[test]
    fn too_small_color_set_is_reported() {
        let mut inst = triangle_instance();
        inst.colors = ColorSet::new(2).unwrap();
        inst.costs = CostMatrix::uniform(2, cost(1));
        assert_eq!(
            validate_instance(&inst),
            vec![Violation::ColorSetTooSmall { have: 2, need: 3 }]
        );
    }

    #[test]
    fn uncovered_edge_is_reported() {
        let mut inst = triangle_instance();
        inst.paths.pop();
        // edge ca (id 2) is still covered by path 1; drop path 0 too so ab loses cover
        inst.paths.remove(0);
        let violations = validate_instance(&inst);
        assert!(violations.contains(&Violation::UncoveredEdge { edge: 0, u: 0, v: 1 }));
    }

    #[test]
    fn every_violation_is_returned() {
        let mut inst = triangle_instance();
        inst.colors = ColorSet::new(2).unwrap();
        inst.paths.truncate(1);
        let violations = validate_instance(&inst);
        assert!(violations.len() >= 3); // small colors, size mismatch, uncovered edges
    }

    #[test]
    fn path_tree_requires_root_and_connectivity() {
        let mut g = Graph::undirected(3);
        g.add_edge(0, 1).unwrap();
        let inst = Instance {
            kind: ProblemKind::PathTree,
            graph: g,
            paths: Vec::new(),
            root: None,
            colors: ColorSet::new(3).unwrap(),
            costs: CostMatrix::uniform(3, cost(1)),
            objective: None,
            metadata: Vec::new(),
        };
        let violations = validate_instance(&inst);
        assert!(violations.contains(&Violation::MissingRoot));
        assert!(violations.contains(&Violation::Disconnected));
    }
}
