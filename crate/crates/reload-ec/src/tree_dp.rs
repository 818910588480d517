//! Dynamic programming for the coloring problems on trees.
//!
//! Rooted at a fixed vertex, the table entry for `(v, x)` is the optimal
//! cost of all traversals inside the subtree hanging from `v` (including
//! the inbound edge) given that the inbound edge has color `x`. Every
//! traversal lies either at `v` or strictly below one child, so the entry
//! is computed by enumerating proper star colorings at `v` and summing
//! child entries. The enumeration is exponential only in the maximum
//! degree.

use crate::color::{ColorSet, EdgeColoring};
use crate::cost::{Cost, CostMatrix};
use crate::eval::{traversal_counts, Objective};
use crate::graph::{Graph, RootedTree};
use crate::path::Path;
use crate::solve::SolveError;
use num_traits::Zero;

/// Cap on the total number of star colorings the DP may enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeDpBudget {
    pub max_star_colorings: u64,
}

impl Default for TreeDpBudget {
    fn default() -> Self {
        TreeDpBudget { max_star_colorings: 10_000_000 }
    }
}

/// Exact number of star colorings the DP would enumerate: for every
/// non-leaf vertex, injective assignments of its child edges over the
/// remaining colors, for every inbound color. Saturates on overflow.
pub fn star_enumeration_estimate(g: &Graph, colors: &ColorSet, root: usize) -> u128 {
    let k = colors.count() as u128;
    let falling = |from: u128, take: usize| -> u128 {
        let mut acc: u128 = 1;
        for i in 0..take as u128 {
            acc = acc.saturating_mul(from.saturating_sub(i));
        }
        acc
    };
    let mut total: u128 = 0;
    for v in 0..g.vertex_count() {
        let d = g.degree(v);
        if v == root {
            total = total.saturating_add(falling(k, d));
        } else if d > 1 {
            total = total.saturating_add(k.saturating_mul(falling(k - 1, d - 1)));
        }
    }
    total
}

struct StarEnum<'a> {
    kids: &'a [(usize, usize)],
    star: &'a [(usize, usize, usize)], // (edge, edge, occurrence count)
    k: usize,
    objective: Objective,
    tc: &'a CostMatrix,
    opt: &'a [Vec<Cost>],
    used: Vec<bool>,
    edge_color: &'a mut [usize],
    assigned: Vec<usize>,
    best: Option<(Cost, Vec<usize>)>,
}

impl StarEnum<'_> {
    fn run(&mut self, i: usize, acc: Cost) {
        if i == self.kids.len() {
            let mut total = acc;
            for &(e, f, count) in self.star {
                let c = self.tc.get(self.edge_color[e], self.edge_color[f]).clone();
                total += match self.objective {
                    Objective::Reload => c * Cost::from_integer(count as i128),
                    Objective::Changeover => c,
                };
            }
            if self.best.as_ref().map_or(true, |(b, _)| total < *b) {
                self.best = Some((total, self.assigned.clone()));
            }
            return;
        }
        let (child, e) = self.kids[i];
        for c in 1..=self.k {
            if self.used[c] {
                continue;
            }
            self.used[c] = true;
            self.edge_color[e] = c;
            self.assigned.push(c);
            let below = self.opt[child][c - 1].clone();
            self.run(i + 1, acc + below);
            self.assigned.pop();
            self.edge_color[e] = 0;
            self.used[c] = false;
        }
    }
}

/// Exact solver for the coloring problems when the union of paths is a
/// tree. The tree is rooted at vertex 0; ties between optimal star
/// colorings break lexicographically in (child order, color).
pub fn solve_tree(
    g: &Graph,
    paths: &[Path],
    colors: &ColorSet,
    tc: &CostMatrix,
    objective: Objective,
    budget: &TreeDpBudget,
) -> Result<(Cost, EdgeColoring), SolveError> {
    if g.is_directed() {
        return Err(SolveError::DirectedUnsupported);
    }
    if !g.is_tree() {
        return Err(SolveError::NotATree);
    }
    let need = g.max_degree() + 1;
    if colors.count() < need {
        return Err(SolveError::ColorSetTooSmall { have: colors.count(), need });
    }
    let root = 0usize;
    let estimate = star_enumeration_estimate(g, colors, root);
    if estimate > budget.max_star_colorings as u128 {
        return Err(SolveError::BudgetExceeded { estimate, limit: budget.max_star_colorings });
    }

    let k = colors.count();
    let n = g.vertex_count();
    let mut coloring = EdgeColoring::from_vec(vec![0; g.edge_count()]);
    if n <= 1 {
        return Ok((Cost::zero(), coloring));
    }
    let tree = RootedTree::of_tree(g, root).expect("validated tree");

    // traversals grouped by their vertex
    let mut star: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); n];
    for (t, count) in traversal_counts(paths) {
        star[t.vertex].push((t.edges.0, t.edges.1, count));
    }

    let mut opt: Vec<Vec<Cost>> = vec![vec![Cost::zero(); k]; n];
    let mut choice: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); k]; n];
    let mut edge_color: Vec<usize> = vec![0; g.edge_count()];

    for v in tree.postorder() {
        if v == root || tree.children(v).is_empty() {
            continue;
        }
        let in_edge = tree.in_edge(v).expect("non-root vertex");
        for x in 1..=k {
            let mut e = StarEnum {
                kids: tree.children(v),
                star: &star[v],
                k,
                objective,
                tc,
                opt: &opt,
                used: vec![false; k + 1],
                edge_color: &mut edge_color,
                assigned: Vec::new(),
                best: None,
            };
            e.used[x] = true;
            e.edge_color[in_edge] = x;
            e.run(0, Cost::zero());
            let (value, assigned) = e.best.expect("colors >= degree leaves room");
            edge_color[in_edge] = 0;
            opt[v][x - 1] = value;
            choice[v][x - 1] = assigned;
        }
    }

    // root: enumerate proper colorings of all root edges
    let mut e = StarEnum {
        kids: tree.children(root),
        star: &star[root],
        k,
        objective,
        tc,
        opt: &opt,
        used: vec![false; k + 1],
        edge_color: &mut edge_color,
        assigned: Vec::new(),
        best: None,
    };
    e.run(0, Cost::zero());
    let (value, root_assigned) = e.best.expect("colors >= degree leaves room");

    let mut stack: Vec<(usize, usize)> = Vec::new();
    for (i, &(child, edge)) in tree.children(root).iter().enumerate() {
        coloring.set(edge, root_assigned[i]);
        stack.push((child, root_assigned[i]));
    }
    while let Some((v, x)) = stack.pop() {
        for (i, &(child, edge)) in tree.children(v).iter().enumerate() {
            let y = choice[v][x - 1][i];
            coloring.set(edge, y);
            stack.push((child, y));
        }
    }
    Ok((value, coloring))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::cost;
    use crate::oracle::{brute_min_coloring, OracleBudget};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn path_graph(n: usize) -> Graph {
        let mut g = Graph::undirected(n);
        for v in 1..n {
            g.add_edge(v - 1, v).unwrap();
        }
        g
    }

    #[test]
    fn short_path_example() {
        // path (ab, bc, cd), |X| = 3, tc(1,2)=5, tc(1,3)=1, tc(2,3)=1 -> 2
        let g = path_graph(4);
        let paths = vec![Path::new(&g, vec![0, 1, 2]).unwrap()];
        let colors = ColorSet::new(3).unwrap();
        let tc = CostMatrix::from_lower(3, &[vec![cost(5)], vec![cost(1), cost(1)]]).unwrap();
        for objective in [Objective::Reload, Objective::Changeover] {
            let (value, witness) =
                solve_tree(&g, &paths, &colors, &tc, objective, &TreeDpBudget::default()).unwrap();
            assert_eq!(value, cost(2));
            assert_eq!(
                crate::eval::objective_cost(&g, &paths, &witness, &tc, objective).unwrap(),
                value
            );
        }
    }

    #[test]
    fn zero_matrix_tree_is_free() {
        let g = path_graph(5);
        let paths = vec![Path::new(&g, vec![0, 1, 2, 3]).unwrap()];
        let colors = ColorSet::new(3).unwrap();
        let tc = CostMatrix::zero(3);
        let (value, _) =
            solve_tree(&g, &paths, &colors, &tc, Objective::Reload, &TreeDpBudget::default()).unwrap();
        assert_eq!(value, cost(0));
    }

    #[test]
    fn star_with_leaf_to_leaf_paths() {
        // K_{1,3}, all three length-2 leaf paths, |X| = 4, unit costs -> 3
        let mut g = Graph::undirected(4);
        for v in 1..4 {
            g.add_edge(0, v).unwrap();
        }
        let paths = vec![
            Path::new(&g, vec![0, 1]).unwrap(),
            Path::new(&g, vec![0, 2]).unwrap(),
            Path::new(&g, vec![1, 2]).unwrap(),
        ];
        let colors = ColorSet::new(4).unwrap();
        let tc = CostMatrix::uniform(4, cost(1));
        for objective in [Objective::Reload, Objective::Changeover] {
            let (value, _) =
                solve_tree(&g, &paths, &colors, &tc, objective, &TreeDpBudget::default()).unwrap();
            assert_eq!(value, cost(3));
        }
    }

    #[test]
    fn budget_guard_reports_estimate() {
        let g = path_graph(4);
        let paths = vec![Path::new(&g, vec![0, 1, 2]).unwrap()];
        let colors = ColorSet::new(3).unwrap();
        let tc = CostMatrix::zero(3);
        let tiny = TreeDpBudget { max_star_colorings: 2 };
        match solve_tree(&g, &paths, &colors, &tc, Objective::Reload, &tiny) {
            Err(SolveError::BudgetExceeded { estimate, limit: 2 }) => {
                assert_eq!(estimate, star_enumeration_estimate(&g, &colors, 0));
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn non_tree_input_is_rejected() {
        let mut g = path_graph(3);
        g.add_edge(0, 2).unwrap();
        let paths = vec![Path::new(&g, vec![0, 1, 2]).unwrap()];
        let colors = ColorSet::new(3).unwrap();
        let tc = CostMatrix::zero(3);
        assert_eq!(
            solve_tree(&g, &paths, &colors, &tc, Objective::Reload, &TreeDpBudget::default()),
            Err(SolveError::NotATree)
        );
    }

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

    /// Random covering path set: tree paths between random vertex pairs,
    /// topped up with single-edge paths for any uncovered edge.
    fn random_cover(g: &Graph, rng: &mut StdRng) -> Vec<Path> {
        let n = g.vertex_count();
        let tree = RootedTree::of_tree(g, 0).unwrap();
        let tree_path = |a: usize, b: usize| -> Vec<usize> {
            // walk both vertices to the root, drop the common suffix
            let pa = tree.path_from_root(a);
            let pb = tree.path_from_root(b);
            let mut i = 0;
            while i < pa.len() && i < pb.len() && pa[i] == pb[i] {
                i += 1;
            }
            let mut edges: Vec<usize> = pa[i..].iter().rev().copied().collect();
            edges.extend(&pb[i..]);
            edges
        };
        let mut paths: Vec<Vec<usize>> = Vec::new();
        for _ in 0..rng.random_range(1..=4) {
            let a = rng.random_range(0..n);
            let b = rng.random_range(0..n);
            if a != b {
                paths.push(tree_path(a, b));
            }
        }
        let mut covered = vec![false; g.edge_count()];
        for p in &paths {
            for &e in p {
                covered[e] = true;
            }
        }
        for e in 0..g.edge_count() {
            if !covered[e] {
                paths.push(vec![e]);
            }
        }
        paths.sort();
        paths.dedup();
        paths.into_iter().map(|p| Path::new(g, p).unwrap()).collect()
    }

    #[test]
    fn random_trees_match_oracle() {
        let mut rng = StdRng::seed_from_u64(23);
        let budget = OracleBudget::default();
        for trial in 0..40 {
            let n = rng.random_range(2..=7);
            let g = random_tree(n, 3, &mut rng);
            let k = (g.max_degree() + 1).max(rng.random_range(2..=4));
            let colors = ColorSet::new(k).unwrap();
            let entries: Vec<Vec<i128>> =
                (0..k).map(|_| (0..k).map(|_| rng.random_range(0..=5)).collect()).collect();
            let tc = CostMatrix::from_fn(k, |i, j| {
                if i == j {
                    cost(0)
                } else {
                    cost(entries[i - 1][j - 1])
                }
            })
            .unwrap();
            let paths = random_cover(&g, &mut rng);
            for objective in [Objective::Reload, Objective::Changeover] {
                let (dp, witness) =
                    solve_tree(&g, &paths, &colors, &tc, objective, &TreeDpBudget::default()).unwrap();
                let (brute, _) = brute_min_coloring(&g, &paths, &colors, &tc, objective, &budget).unwrap();
                assert_eq!(dp, brute, "trial {trial} objective {objective:?}");
                assert_eq!(
                    crate::eval::objective_cost(&g, &paths, &witness, &tc, objective).unwrap(),
                    dp
                );
            }
        }
    }

    #[test]
    fn extra_colors_never_hurt() {
        let mut rng = StdRng::seed_from_u64(29);
        for _ in 0..15 {
            let n = rng.random_range(3..=6);
            let g = random_tree(n, 3, &mut rng);
            let k = g.max_degree() + 1;
            let entries: Vec<Vec<i128>> =
                (0..k + 1).map(|_| (0..k + 1).map(|_| rng.random_range(0..=5)).collect()).collect();
            let tc_small = CostMatrix::from_fn(k, |i, j| {
                if i == j {
                    cost(0)
                } else {
                    cost(entries[i - 1][j - 1])
                }
            })
            .unwrap();
            let tc_big = CostMatrix::from_fn(k + 1, |i, j| {
                if i == j {
                    cost(0)
                } else {
                    cost(entries[i - 1][j - 1])
                }
            })
            .unwrap();
            let paths = random_cover(&g, &mut rng);
            let (small, _) = solve_tree(
                &g,
                &paths,
                &ColorSet::new(k).unwrap(),
                &tc_small,
                Objective::Changeover,
                &TreeDpBudget::default(),
            )
            .unwrap();
            let (big, _) = solve_tree(
                &g,
                &paths,
                &ColorSet::new(k + 1).unwrap(),
                &tc_big,
                Objective::Changeover,
                &TreeDpBudget::default(),
            )
            .unwrap();
            assert!(big <= small);
        }
    }
}
