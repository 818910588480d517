//! Exact evaluation of reload and changeover costs of a colored path set.

use crate::color::{ColoringError, EdgeColoring};
use crate::cost::{Cost, CostMatrix};
use crate::graph::Graph;
use crate::path::{traversals_of_path, Path, Traversal};
use num_traits::Zero;
use std::collections::BTreeMap;

/// Which of the two global cost measures to optimize.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Objective {
    /// Every traversal occurrence counts, once per path using it.
    Reload,
    /// Each distinct traversal counts once.
    Changeover,
}

impl Objective {
    pub fn name(&self) -> &'static str {
        match self {
            Objective::Reload => "reload",
            Objective::Changeover => "changeover",
        }
    }
}

impl std::str::FromStr for Objective {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "reload" => Ok(Objective::Reload),
            "changeover" => Ok(Objective::Changeover),
            other => Err(format!("unknown objective {other:?}")),
        }
    }
}

/// Distinct traversals of a path set with their occurrence counts, in
/// traversal order. The reload cost weights each traversal by its count;
/// the changeover cost ignores the counts.
pub(crate) fn traversal_counts(paths: &[Path]) -> BTreeMap<Traversal, usize> {
    let mut counts = BTreeMap::new();
    for p in paths {
        for t in traversals_of_path(p) {
            *counts.entry(t).or_insert(0) += 1;
        }
    }
    counts
}

fn cost_of_traversals(
    counts: &BTreeMap<Traversal, usize>,
    coloring: &EdgeColoring,
    tc: &CostMatrix,
    objective: Objective,
) -> Cost {
    let mut total = Cost::zero();
    for (t, &count) in counts {
        let c = tc.get(coloring.color(t.edges.0), coloring.color(t.edges.1));
        match objective {
            Objective::Reload => total += c * Cost::from_integer(count as i128),
            Objective::Changeover => total += c,
        }
    }
    total
}

/// Reload cost of `paths` under `coloring`: the sum of traversal costs over
/// all paths, counting repeated traversals once per occurrence. Fails if the
/// coloring is not proper.
pub fn reload_cost(
    g: &Graph,
    paths: &[Path],
    coloring: &EdgeColoring,
    tc: &CostMatrix,
) -> Result<Cost, ColoringError> {
    coloring.check_proper(g)?;
    Ok(cost_of_traversals(&traversal_counts(paths), coloring, tc, Objective::Reload))
}

/// Changeover cost of `paths` under `coloring`: the sum over the
/// deduplicated traversal set. Fails if the coloring is not proper.
pub fn changeover_cost(
    g: &Graph,
    paths: &[Path],
    coloring: &EdgeColoring,
    tc: &CostMatrix,
) -> Result<Cost, ColoringError> {
    coloring.check_proper(g)?;
    Ok(cost_of_traversals(&traversal_counts(paths), coloring, tc, Objective::Changeover))
}

/// Cost under the requested objective.
pub fn objective_cost(
    g: &Graph,
    paths: &[Path],
    coloring: &EdgeColoring,
    tc: &CostMatrix,
    objective: Objective,
) -> Result<Cost, ColoringError> {
    match objective {
        Objective::Reload => reload_cost(g, paths, coloring, tc),
        Objective::Changeover => changeover_cost(g, paths, coloring, tc),
    }
}

/// Cost contributed by the traversals at vertex `v` only (the traversals
/// within the star of `v`). `coloring` must assign every edge incident to
/// `v` that appears in a traversal at `v`.
pub fn cost_within_star(
    paths: &[Path],
    v: usize,
    coloring: &EdgeColoring,
    tc: &CostMatrix,
    objective: Objective,
) -> Cost {
    let mut total = Cost::zero();
    for (t, &count) in &traversal_counts(paths) {
        if t.vertex != v {
            continue;
        }
        let c = tc.get(coloring.color(t.edges.0), coloring.color(t.edges.1));
        match objective {
            Objective::Reload => total += c * Cost::from_integer(count as i128),
            Objective::Changeover => total += c,
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::cost;

    /// Spider r(0) - a(1) - b(2) - c(3) with root paths to a, b and c.
    fn spider() -> (Graph, Vec<Path>) {
        let mut g = Graph::undirected(4);
        for v in 1..4 {
            g.add_edge(v - 1, v).unwrap();
        }
        let paths = vec![
            Path::new(&g, vec![0]).unwrap(),
            Path::new(&g, vec![0, 1]).unwrap(),
            Path::new(&g, vec![0, 1, 2]).unwrap(),
        ];
        (g, paths)
    }

    #[test]
    fn repeated_traversals_split_the_two_objectives() {
        let (g, paths) = spider();
        let tc = CostMatrix::uniform(3, cost(1));
        let coloring = EdgeColoring::from_vec(vec![1, 2, 3]);
        // traversal (0,1) occurs in two paths, (1,2) in one
        assert_eq!(reload_cost(&g, &paths, &coloring, &tc).unwrap(), cost(3));
        assert_eq!(changeover_cost(&g, &paths, &coloring, &tc).unwrap(), cost(2));
    }

    #[test]
    fn length_one_paths_cost_nothing() {
        let mut g = Graph::undirected(4);
        for v in 1..4 {
            g.add_edge(0, v).unwrap();
        }
        let paths: Vec<Path> = (0..3).map(|e| Path::new(&g, vec![e]).unwrap()).collect();
        let tc = CostMatrix::uniform(4, cost(7));
        let coloring = EdgeColoring::from_vec(vec![1, 2, 3]);
        assert_eq!(reload_cost(&g, &paths, &coloring, &tc).unwrap(), cost(0));
    }

    #[test]
    fn path_coloring_example() {
        // path (ab, bc, cd) colored (1,3,1) with tc(1,3)=1 costs 2
        let mut g = Graph::undirected(4);
        for v in 1..4 {
            g.add_edge(v - 1, v).unwrap();
        }
        let paths = vec![Path::new(&g, vec![0, 1, 2]).unwrap()];
        let tc = CostMatrix::from_lower(3, &[vec![cost(0)], vec![cost(1), cost(0)]]).unwrap();
        let coloring = EdgeColoring::from_vec(vec![1, 3, 1]);
        assert_eq!(reload_cost(&g, &paths, &coloring, &tc).unwrap(), cost(2));
        assert_eq!(changeover_cost(&g, &paths, &coloring, &tc).unwrap(), cost(2));
    }

    #[test]
    fn improper_coloring_is_rejected_with_vertex() {
        let (g, paths) = spider();
        let tc = CostMatrix::uniform(3, cost(1));
        let coloring = EdgeColoring::from_vec(vec![1, 1, 2]);
        let err = reload_cost(&g, &paths, &coloring, &tc).unwrap_err();
        assert_eq!(err, ColoringError::Improper { vertex: 1, edges: (0, 1), color: 1 });
    }

    #[test]
    fn zero_matrix_costs_zero() {
        let (g, paths) = spider();
        let tc = CostMatrix::zero(3);
        let coloring = EdgeColoring::from_vec(vec![1, 2, 1]);
        assert_eq!(reload_cost(&g, &paths, &coloring, &tc).unwrap(), cost(0));
        assert_eq!(changeover_cost(&g, &paths, &coloring, &tc).unwrap(), cost(0));
    }

    #[test]
    fn star_cost_distinguishes_objectives() {
        let (_, paths) = spider();
        let tc = CostMatrix::uniform(3, cost(1));
        let coloring = EdgeColoring::from_vec(vec![1, 2, 3]);
        // vertex 1 carries the repeated traversal (edges 0,1)
        assert_eq!(cost_within_star(&paths, 1, &coloring, &tc, Objective::Reload), cost(2));
        assert_eq!(cost_within_star(&paths, 1, &coloring, &tc, Objective::Changeover), cost(1));
        // leaves carry nothing
        assert_eq!(cost_within_star(&paths, 3, &coloring, &tc, Objective::Reload), cost(0));
        // a degree-2 vertex on one path with colors (2,3), tc(2,3)=1
        assert_eq!(cost_within_star(&paths, 2, &coloring, &tc, Objective::Changeover), cost(1));
    }
}
