//! Error type shared by the polynomial solvers, and the greedy/backtracking
//! extension that colors edges left open by a tree-restricted optimum.

use crate::cost::CostMatrixError;
use crate::graph::Graph;
use crate::oracle::OracleError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("input graph is not a tree")]
    NotATree,
    #[error("input graph is disconnected")]
    Disconnected,
    #[error("directed instances are only solvable by the brute-force oracle")]
    DirectedUnsupported,
    #[error("root {root} is out of range")]
    RootOutOfRange { root: usize },
    #[error("path {index} does not have the root as an endpoint")]
    NotSingleSource { index: usize },
    #[error("color set has {have} colors, need at least max degree + 1 = {need}")]
    ColorSetTooSmall { have: usize, need: usize },
    #[error("estimated enumeration size {estimate} exceeds the budget of {limit}")]
    BudgetExceeded { estimate: u128, limit: u64 },
    #[error("cut vertex {vertex} has degree {degree}, above the cap {cap}")]
    CutDegreeExceeded { vertex: usize, degree: usize, cap: usize },
    #[error("block with {edges} edges and {vertices} vertices exceeds the sparsity cap {cap}")]
    BlockTooDense { edges: usize, vertices: usize, cap: usize },
    #[error("graph has cyclomatic number {excess}, above the cap {cap}")]
    TooFarFromTree { excess: usize, cap: usize },
    #[error("block spanning tree enumeration would exceed {limit} trees")]
    BlockTreeBudget { limit: u64 },
    #[error("could not extend the tree coloring to the remaining edges")]
    ExtensionFailed,
    #[error(transparent)]
    Cost(#[from] CostMatrixError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Assigns colors from `1..=k` to every edge with `colors[e] == 0`, keeping
/// the whole coloring proper. Greedy in edge order first; when `k` is below
/// the always-safe threshold `2 * max_degree - 1` a bounded backtracking
/// pass takes over. The step budget keeps pathological instances from
/// running away.
pub(crate) fn extend_partial_coloring(
    g: &Graph,
    colors: &mut [usize],
    k: usize,
) -> Result<(), SolveError> {
    let open: Vec<usize> = (0..g.edge_count()).filter(|&e| colors[e] == 0).collect();
    if open.is_empty() {
        return Ok(());
    }
    let conflicts = |colors: &[usize], e: usize, c: usize| -> bool {
        let (u, v) = g.endpoints(e);
        g.incident(u).iter().chain(g.incident(v)).any(|&(f, _)| f != e && colors[f] == c)
    };
    let greedy_safe = k >= 2 * g.max_degree().max(1) - 1;
    if greedy_safe {
        for &e in &open {
            let c = (1..=k)
                .find(|&c| !conflicts(colors, e, c))
                .expect("greedy extension always succeeds with 2*max_degree-1 colors");
            colors[e] = c;
        }
        return Ok(());
    }
    // bounded backtracking
    let mut steps: u64 = 0;
    const MAX_STEPS: u64 = 1_000_000;
    fn rec(
        g: &Graph,
        open: &[usize],
        colors: &mut [usize],
        k: usize,
        i: usize,
        steps: &mut u64,
        conflicts: &impl Fn(&[usize], usize, usize) -> bool,
    ) -> Result<bool, SolveError> {
        if i == open.len() {
            return Ok(true);
        }
        let e = open[i];
        for c in 1..=k {
            *steps += 1;
            if *steps > MAX_STEPS {
                return Err(SolveError::ExtensionFailed);
            }
            if conflicts(colors, e, c) {
                continue;
            }
            colors[e] = c;
            if rec(g, open, colors, k, i + 1, steps, conflicts)? {
                return Ok(true);
            }
            colors[e] = 0;
        }
        Ok(false)
    }
    if rec(g, &open, colors, k, 0, &mut steps, &conflicts)? {
        Ok(())
    } else {
        Err(SolveError::ExtensionFailed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn greedy_extension_fills_open_edges() {
        let mut g = Graph::undirected(4);
        g.add_edge(0, 1).unwrap();
        g.add_edge(1, 2).unwrap();
        g.add_edge(2, 3).unwrap();
        g.add_edge(3, 0).unwrap();
        let mut colors = vec![1, 0, 0, 2];
        extend_partial_coloring(&g, &mut colors, 3).unwrap();
        assert!(colors.iter().all(|&c| c >= 1 && c <= 3));
        let coloring = crate::color::EdgeColoring::from_vec(colors);
        assert!(coloring.check_proper(&g).is_ok());
    }

    #[test]
    fn backtracking_handles_tight_color_counts() {
        // triangle with 3 colors: max degree 2, threshold would be 3, but
        // force the backtracking path by pre-coloring one edge
        let mut g = Graph::undirected(3);
        g.add_edge(0, 1).unwrap();
        g.add_edge(1, 2).unwrap();
        g.add_edge(0, 2).unwrap();
        let mut colors = vec![0, 0, 3];
        extend_partial_coloring(&g, &mut colors, 3).unwrap();
        let coloring = crate::color::EdgeColoring::from_vec(colors);
        assert!(coloring.check_proper(&g).is_ok());
    }

    #[test]
    fn impossible_extension_is_reported() {
        // star K_{1,3} with 2 colors cannot be completed
        let mut g = Graph::undirected(4);
        g.add_edge(0, 1).unwrap();
        g.add_edge(0, 2).unwrap();
        g.add_edge(0, 3).unwrap();
        let mut colors = vec![1, 2, 0];
        assert_eq!(extend_partial_coloring(&g, &mut colors, 2), Err(SolveError::ExtensionFailed));
    }
}
