//! Minimum-cost assignment, and the matching-based solvers for
//! single-source tree instances and path-tree instances on trees.
//!
//! At each non-leaf vertex the choice of child-edge colors is an assignment
//! problem: rows are the children, columns are the colors other than the
//! inbound edge's color, and a weight combines the traversal cost with the
//! child's subtree optimum. A minimum-weight matching solves it exactly.

use crate::color::{ColorSet, EdgeColoring};
use crate::cost::{Cost, CostMatrix};
use crate::eval::Objective;
use crate::graph::{Graph, RootedTree};
use crate::path::{path_tree_paths, Path};
use crate::solve::SolveError;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AssignmentError {
    #[error("assignment needs rows <= columns, got {rows} rows and {cols} columns")]
    MoreRowsThanColumns { rows: usize, cols: usize },
    #[error("row {row} has {have} entries, expected {expect}")]
    RaggedRow { row: usize, have: usize, expect: usize },
    #[error("weight at ({row},{col}) is negative")]
    NegativeWeight { row: usize, col: usize },
}

/// A rectangular min-cost assignment problem: match every row to a distinct
/// column minimizing the total weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssignmentProblem {
    weights: Vec<Vec<Cost>>,
    cols: usize,
}

impl AssignmentProblem {
    pub fn new(weights: Vec<Vec<Cost>>) -> Result<Self, AssignmentError> {
        let cols = weights.iter().map(|r| r.len()).max().unwrap_or(0);
        for (i, row) in weights.iter().enumerate() {
            if row.len() != cols {
                return Err(AssignmentError::RaggedRow { row: i, have: row.len(), expect: cols });
            }
            for (j, w) in row.iter().enumerate() {
                if w < &Cost::zero() {
                    return Err(AssignmentError::NegativeWeight { row: i, col: j });
                }
            }
        }
        Ok(AssignmentProblem { weights, cols })
    }

    pub fn rows(&self) -> usize {
        self.weights.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }
}

/// Shortest-augmenting-path Hungarian algorithm on a rectangular matrix
/// (`rows <= cols`). Returns the optimal value and one optimal assignment
/// (column per row); ties inside are broken deterministically but not
/// necessarily lexicographically.
fn hungarian(w: &[Vec<Cost>]) -> (Cost, Vec<usize>) {
    let rows = w.len();
    if rows == 0 {
        return (Cost::zero(), Vec::new());
    }
    let cols = w[0].len();
    debug_assert!(rows <= cols);
    // 1-based potentials and matching
    let mut u = vec![Cost::zero(); rows + 1];
    let mut v = vec![Cost::zero(); cols + 1];
    let mut matched_row = vec![0usize; cols + 1]; // column -> row (0 = free)
    let mut way = vec![0usize; cols + 1];

    for i in 1..=rows {
        matched_row[0] = i;
        let mut j0 = 0usize;
        let mut minv: Vec<Option<Cost>> = vec![None; cols + 1];
        let mut used = vec![false; cols + 1];
        loop {
            used[j0] = true;
            let i0 = matched_row[j0];
            let mut delta: Option<Cost> = None;
            let mut j1 = 0usize;
            for j in 1..=cols {
                if used[j] {
                    continue;
                }
                let cur = w[i0 - 1][j - 1].clone() - u[i0].clone() - v[j].clone();
                if minv[j].as_ref().map_or(true, |m| cur < *m) {
                    minv[j] = Some(cur);
                    way[j] = j0;
                }
                if delta.as_ref().map_or(true, |d| minv[j].as_ref().unwrap() < d) {
                    delta = minv[j].clone();
                    j1 = j;
                }
            }
            let delta = delta.expect("rows <= cols leaves a free column");
            for j in 0..=cols {
                if used[j] {
                    u[matched_row[j]] += delta.clone();
                    v[j] -= delta.clone();
                } else if let Some(m) = &mut minv[j] {
                    *m -= delta.clone();
                }
            }
            j0 = j1;
            if matched_row[j0] == 0 {
                break;
            }
        }
        // augment along the alternating path
        while j0 != 0 {
            let j1 = way[j0];
            matched_row[j0] = matched_row[j1];
            j0 = j1;
        }
    }

    let mut assign = vec![0usize; rows];
    let mut total = Cost::zero();
    for j in 1..=cols {
        let i = matched_row[j];
        if i != 0 {
            assign[i - 1] = j - 1;
            total += w[i - 1][j - 1].clone();
        }
    }
    (total, assign)
}

fn hungarian_value(w: &[Vec<Cost>]) -> Cost {
    hungarian(w).0
}

/// Exact minimum-cost injective row-to-column assignment. Among all optimal
/// assignments the lexicographically smallest column vector is returned.
pub fn min_cost_assignment(problem: &AssignmentProblem) -> Result<(Cost, Vec<usize>), AssignmentError> {
    let rows = problem.rows();
    let cols = problem.cols();
    if rows > cols {
        return Err(AssignmentError::MoreRowsThanColumns { rows, cols });
    }
    if rows == 0 {
        return Ok((Cost::zero(), Vec::new()));
    }
    let opt = hungarian_value(&problem.weights);

    // Fix rows one at a time to the smallest column that keeps the total
    // optimal; re-solving the remainder keeps the check exact.
    let mut remaining: Vec<usize> = (0..cols).collect();
    let mut assign = Vec::with_capacity(rows);
    let mut fixed_sum = Cost::zero();
    for i in 0..rows {
        let mut chosen = None;
        for (pos, &c) in remaining.iter().enumerate() {
            let here = fixed_sum.clone() + problem.weights[i][c].clone();
            if here > opt {
                continue;
            }
            let rest: Vec<Vec<Cost>> = problem.weights[i + 1..]
                .iter()
                .map(|row| {
                    remaining
                        .iter()
                        .enumerate()
                        .filter(|&(p, _)| p != pos)
                        .map(|(_, &cc)| row[cc].clone())
                        .collect()
                })
                .collect();
            if here + hungarian_value(&rest) == opt {
                chosen = Some((pos, c));
                break;
            }
        }
        let (pos, c) = chosen.expect("an optimal assignment always extends");
        fixed_sum += problem.weights[i][c].clone();
        assign.push(c);
        remaining.remove(pos);
    }
    Ok((opt, assign))
}

/// How many paths contain each edge.
fn edge_path_counts(g: &Graph, paths: &[Path]) -> Vec<usize> {
    let mut counts = vec![0usize; g.edge_count()];
    for p in paths {
        for &e in p.edges() {
            counts[e] += 1;
        }
    }
    counts
}

fn check_tree_preconditions(g: &Graph, root: usize, colors: &ColorSet) -> Result<(), SolveError> {
    if g.is_directed() {
        return Err(SolveError::DirectedUnsupported);
    }
    if root >= g.vertex_count() {
        return Err(SolveError::RootOutOfRange { root });
    }
    if !g.is_tree() {
        return Err(SolveError::NotATree);
    }
    let need = g.max_degree() + 1;
    if colors.count() < need {
        return Err(SolveError::ColorSetTooSmall { have: colors.count(), need });
    }
    Ok(())
}

/// Exact solver for tree instances in which `root` is an endpoint of every
/// path. Every traversal at a vertex then involves its inbound edge, so the
/// per-vertex color choice reduces to a min-cost assignment over children.
pub fn solve_tree_single_source(
    g: &Graph,
    paths: &[Path],
    root: usize,
    colors: &ColorSet,
    tc: &CostMatrix,
    objective: Objective,
) -> Result<(Cost, EdgeColoring), SolveError> {
    check_tree_preconditions(g, root, colors)?;
    for (i, p) in paths.iter().enumerate() {
        if !p.has_endpoint(root) {
            return Err(SolveError::NotSingleSource { index: i });
        }
    }
    let tree = RootedTree::of_tree(g, root).expect("validated tree");
    let k = colors.count();
    let n = g.vertex_count();
    let path_counts = edge_path_counts(g, paths);
    // weight multiplier for the traversal (in(v), e_child): the number of
    // paths through the child edge for reload, its 0/1 indicator for
    // changeover (an uncovered edge has no traversal)
    let mult = |e: usize| -> Cost {
        match objective {
            Objective::Reload => Cost::from_integer(path_counts[e] as i128),
            Objective::Changeover => Cost::from_integer(i128::from(path_counts[e] > 0)),
        }
    };

    // opt[v][x-1]: best cost in the subtree hanging from v given in(v) has
    // color x; choice[v][x-1]: the child colors achieving it
    let mut opt: Vec<Vec<Cost>> = vec![vec![Cost::zero(); k]; n];
    let mut choice: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); k]; n];

    for v in tree.postorder() {
        if v == root || tree.children(v).is_empty() {
            continue;
        }
        let kids = tree.children(v);
        for x in 1..=k {
            let cols: Vec<usize> = (1..=k).filter(|&y| y != x).collect();
            let weights: Vec<Vec<Cost>> = kids
                .iter()
                .map(|&(child, e)| {
                    cols.iter()
                        .map(|&y| tc.get(x, y).clone() * mult(e) + opt[child][y - 1].clone())
                        .collect()
                })
                .collect();
            let problem = AssignmentProblem::new(weights).expect("DP weights are nonnegative");
            let (value, assign) = min_cost_assignment(&problem).expect("colors >= degree");
            opt[v][x - 1] = value;
            choice[v][x - 1] = assign.iter().map(|&j| cols[j]).collect();
        }
    }

    // the root sees no traversals: pick distinct colors for its edges
    // minimizing the children's subtree optima
    let kids = tree.children(root);
    let mut coloring = EdgeColoring::from_vec(vec![0; g.edge_count()]);
    let value = if kids.is_empty() {
        Cost::zero()
    } else {
        let cols: Vec<usize> = (1..=k).collect();
        let weights: Vec<Vec<Cost>> = kids
            .iter()
            .map(|&(child, _)| cols.iter().map(|&y| opt[child][y - 1].clone()).collect())
            .collect();
        let problem = AssignmentProblem::new(weights).expect("DP weights are nonnegative");
        let (value, assign) = min_cost_assignment(&problem).expect("colors > root degree");
        let mut stack: Vec<(usize, usize)> = Vec::new();
        for (i, &(child, e)) in kids.iter().enumerate() {
            coloring.set(e, cols[assign[i]]);
            stack.push((child, cols[assign[i]]));
        }
        while let Some((v, x)) = stack.pop() {
            for (i, &(child, e)) in tree.children(v).iter().enumerate() {
                let y = choice[v][x - 1][i];
                coloring.set(e, y);
                stack.push((child, y));
            }
        }
        value
    };
    Ok((value, coloring))
}

/// Path-tree problems on a tree: the only spanning tree is the graph
/// itself, so this is a single-source instance over the root-to-vertex
/// paths.
pub fn solve_tree_path_tree(
    g: &Graph,
    root: usize,
    colors: &ColorSet,
    tc: &CostMatrix,
    objective: Objective,
) -> Result<(Cost, EdgeColoring, RootedTree), SolveError> {
    check_tree_preconditions(g, root, colors)?;
    let tree = RootedTree::of_tree(g, root).expect("validated tree");
    let paths = path_tree_paths(g, &tree);
    let (value, coloring) = solve_tree_single_source(g, &paths, root, colors, tc, objective)?;
    Ok((value, coloring, tree))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::cost;
    use crate::oracle::{brute_min_coloring, brute_min_path_tree, OracleBudget};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn problem(rows: &[&[i128]]) -> AssignmentProblem {
        AssignmentProblem::new(rows.iter().map(|r| r.iter().map(|&x| cost(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn tiny_assignments() {
        let (v, a) = min_cost_assignment(&problem(&[&[7]])).unwrap();
        assert_eq!((v, a), (cost(7), vec![0]));
        let (v, a) = min_cost_assignment(&problem(&[&[0, 9], &[9, 0]])).unwrap();
        assert_eq!((v, a), (cost(0), vec![0, 1]));
        let err = min_cost_assignment(&problem(&[&[1], &[2]])).unwrap_err();
        assert_eq!(err, AssignmentError::MoreRowsThanColumns { rows: 2, cols: 1 });
    }

    #[test]
    fn lexicographic_tie_break() {
        // both diagonals cost 2: (0,1) wins over (1,0)
        let (v, a) = min_cost_assignment(&problem(&[&[1, 1], &[1, 1]])).unwrap();
        assert_eq!((v, a), (cost(2), vec![0, 1]));
    }

    fn factorial_minimum(w: &[Vec<Cost>]) -> Cost {
        fn rec(w: &[Vec<Cost>], used: &mut Vec<bool>, i: usize) -> Option<Cost> {
            if i == w.len() {
                return Some(Cost::zero());
            }
            let mut best: Option<Cost> = None;
            for c in 0..used.len() {
                if used[c] {
                    continue;
                }
                used[c] = true;
                if let Some(rest) = rec(w, used, i + 1) {
                    let total = w[i][c].clone() + rest;
                    if best.as_ref().map_or(true, |b| total < *b) {
                        best = Some(total);
                    }
                }
                used[c] = false;
            }
            best
        }
        let mut used = vec![false; w[0].len()];
        rec(w, &mut used, 0).unwrap()
    }

    #[test]
    fn random_matrices_match_factorial_brute_force() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..120 {
            let rows = rng.random_range(1..=5);
            let cols = rng.random_range(rows..=6);
            let w: Vec<Vec<Cost>> =
                (0..rows).map(|_| (0..cols).map(|_| cost(rng.random_range(0..30))).collect()).collect();
            let p = AssignmentProblem::new(w.clone()).unwrap();
            let (value, assign) = min_cost_assignment(&p).unwrap();
            assert_eq!(value, factorial_minimum(&w));
            // the returned assignment realizes the value and is injective
            let mut seen = vec![false; cols];
            let mut total = Cost::zero();
            for (i, &c) in assign.iter().enumerate() {
                assert!(!seen[c]);
                seen[c] = true;
                total += w[i][c].clone();
            }
            assert_eq!(total, value);
        }
    }

    /// Random bounded-degree tree on n vertices.
    fn random_tree(n: usize, max_degree: usize, rng: &mut StdRng) -> Graph {
        let mut g = Graph::undirected(n);
        for v in 1..n {
            loop {
                let p = rng.random_range(0..v);
                if g.degree(p) < max_degree {
                    g.add_edge(p, v).unwrap();
                    break;
                }
            }
        }
        g
    }

    fn random_matrix(k: usize, max: i128, rng: &mut StdRng) -> CostMatrix {
        let entries: Vec<Vec<i128>> =
            (0..k).map(|_| (0..k).map(|_| rng.random_range(0..=max)).collect()).collect();
        CostMatrix::from_fn(k, |i, j| if i == j { cost(0) } else { cost(entries[i - 1][j - 1]) })
            .unwrap()
    }

    #[test]
    fn spider_with_two_legs() {
        // legs (a) and (b, b'): one forced traversal
        let mut g = Graph::undirected(4);
        g.add_edge(0, 1).unwrap(); // r-a
        g.add_edge(0, 2).unwrap(); // r-b
        g.add_edge(2, 3).unwrap(); // b-b'
        let paths = vec![
            Path::new(&g, vec![0]).unwrap(),
            Path::new(&g, vec![1]).unwrap(),
            Path::new(&g, vec![1, 2]).unwrap(),
        ];
        let colors = ColorSet::new(3).unwrap();
        let tc = CostMatrix::uniform(3, cost(1));
        for objective in [Objective::Changeover, Objective::Reload] {
            let (value, coloring) =
                solve_tree_single_source(&g, &paths, 0, &colors, &tc, objective).unwrap();
            assert_eq!(value, cost(1));
            assert_eq!(
                crate::eval::objective_cost(&g, &paths, &coloring, &tc, objective).unwrap(),
                value
            );
        }
    }

    #[test]
    fn single_leg_matches_oracle() {
        // leg r-a-b-c with all root paths: reload 3, changeover 2
        let mut g = Graph::undirected(4);
        for v in 1..4 {
            g.add_edge(v - 1, v).unwrap();
        }
        let paths = vec![
            Path::new(&g, vec![0]).unwrap(),
            Path::new(&g, vec![0, 1]).unwrap(),
            Path::new(&g, vec![0, 1, 2]).unwrap(),
        ];
        let colors = ColorSet::new(3).unwrap();
        let tc = CostMatrix::uniform(3, cost(1));
        let (rc, _) = solve_tree_single_source(&g, &paths, 0, &colors, &tc, Objective::Reload).unwrap();
        let (co, _) =
            solve_tree_single_source(&g, &paths, 0, &colors, &tc, Objective::Changeover).unwrap();
        assert_eq!(rc, cost(3));
        assert_eq!(co, cost(2));
    }

    #[test]
    fn star_instances_are_free() {
        let mut g = Graph::undirected(5);
        for v in 1..5 {
            g.add_edge(0, v).unwrap();
        }
        let paths: Vec<Path> = (0..4).map(|e| Path::new(&g, vec![e]).unwrap()).collect();
        let colors = ColorSet::new(5).unwrap();
        let tc = CostMatrix::uniform(5, cost(3));
        let (value, _) = solve_tree_single_source(&g, &paths, 0, &colors, &tc, Objective::Reload).unwrap();
        assert_eq!(value, cost(0));
    }

    #[test]
    fn precondition_failures_are_named() {
        let mut g = Graph::undirected(3);
        g.add_edge(0, 1).unwrap();
        g.add_edge(1, 2).unwrap();
        let paths = vec![Path::new(&g, vec![1]).unwrap()];
        let colors = ColorSet::new(3).unwrap();
        let tc = CostMatrix::uniform(3, cost(1));
        assert_eq!(
            solve_tree_single_source(&g, &paths, 0, &colors, &tc, Objective::Reload),
            Err(SolveError::NotSingleSource { index: 0 })
        );
        let small = ColorSet::new(2).unwrap();
        let tc2 = CostMatrix::uniform(2, cost(1));
        assert_eq!(
            solve_tree_single_source(&g, &paths, 1, &small, &tc2, Objective::Reload),
            Err(SolveError::ColorSetTooSmall { have: 2, need: 3 })
        );
    }

    #[test]
    fn random_single_source_instances_match_oracle() {
        let mut rng = StdRng::seed_from_u64(11);
        let budget = OracleBudget::default();
        for trial in 0..40 {
            let n = rng.random_range(2..=7);
            let g = random_tree(n, 3, &mut rng);
            let k = g.max_degree() + 1 + rng.random_range(0..=1);
            let colors = ColorSet::new(k).unwrap();
            let tc = random_matrix(k, 5, &mut rng);
            // paths from root 0 to every leaf plus a few random vertices
            let tree = RootedTree::of_tree(&g, 0).unwrap();
            let mut targets: Vec<usize> = (1..n).filter(|&v| tree.children(v).is_empty()).collect();
            for _ in 0..rng.random_range(0..=2) {
                targets.push(rng.random_range(1..n));
            }
            targets.sort_unstable();
            targets.dedup();
            let paths: Vec<Path> =
                targets.iter().map(|&v| Path::new(&g, tree.path_from_root(v)).unwrap()).collect();
            for objective in [Objective::Reload, Objective::Changeover] {
                let (fast, witness) =
                    solve_tree_single_source(&g, &paths, 0, &colors, &tc, objective).unwrap();
                let (brute, _) = brute_min_coloring(&g, &paths, &colors, &tc, objective, &budget).unwrap();
                assert_eq!(fast, brute, "trial {trial} objective {objective:?}");
                assert_eq!(
                    crate::eval::objective_cost(&g, &paths, &witness, &tc, objective).unwrap(),
                    fast
                );
            }
        }
    }

    #[test]
    fn path_tree_on_random_trees_matches_oracle() {
        let mut rng = StdRng::seed_from_u64(13);
        let budget = OracleBudget::default();
        for trial in 0..30 {
            let n = rng.random_range(2..=7);
            let g = random_tree(n, 3, &mut rng);
            let k = g.max_degree() + 1;
            let colors = ColorSet::new(k).unwrap();
            let tc = random_matrix(k, 5, &mut rng);
            let root = rng.random_range(0..n);
            for objective in [Objective::Reload, Objective::Changeover] {
                let (fast, coloring, tree) =
                    solve_tree_path_tree(&g, root, &colors, &tc, objective).unwrap();
                let (brute, _, _) =
                    brute_min_path_tree(&g, root, &colors, &tc, objective, &budget).unwrap();
                assert_eq!(fast, brute, "trial {trial} objective {objective:?}");
                let paths = path_tree_paths(&g, &tree);
                assert_eq!(
                    crate::eval::objective_cost(&g, &paths, &coloring, &tc, objective).unwrap(),
                    fast
                );
            }
        }
    }

    #[test]
    fn multiplicity_equals_subtree_size_on_path_trees() {
        let mut rng = StdRng::seed_from_u64(17);
        let g = random_tree(8, 3, &mut rng);
        let tree = RootedTree::of_tree(&g, 0).unwrap();
        let paths = path_tree_paths(&g, &tree);
        let counts = edge_path_counts(&g, &paths);
        let sizes = tree.subtree_sizes();
        for v in 1..8 {
            let e = tree.in_edge(v).unwrap();
            assert_eq!(counts[e], sizes[v]);
        }
    }
}
