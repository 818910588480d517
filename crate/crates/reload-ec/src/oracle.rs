//! Brute-force exact solvers by exhaustive enumeration.
//!
//! These are deliberately simple: backtracking prunes by partial properness
//! only, never by partial cost. They exist as ground truth for the
//! polynomial solvers and for frozen expected values in tests.

use crate::color::{ColorSet, EdgeColoring};
use crate::cost::{Cost, CostMatrix, CostMatrixError, ScaledCosts};
use crate::eval::{traversal_counts, Objective};
use crate::graph::{Graph, RootedTree};
use crate::path::Path;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("oracle budget exceeded: more than {limit} {what}")]
    BudgetExceeded { what: &'static str, limit: u64 },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("no proper coloring exists with {colors} colors")]
    NoProperColoring { colors: usize },
    #[error("no spanning tree rooted at {root}")]
    NoSpanningTree { root: usize },
    #[error(transparent)]
    Cost(#[from] CostMatrixError),
}

/// Enumeration caps. Exceeding a cap is an explicit error, never a silent
/// truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_colorings: u64,
    pub max_trees: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_colorings: 10_000_000, max_trees: 100_000 }
    }
}

/// Environment variable overriding the default coloring cap.
pub const ORACLE_BUDGET_ENV: &str = "RELOAD_EC_ORACLE_BUDGET";

impl OracleBudget {
    /// Default budget, with `RELOAD_EC_ORACLE_BUDGET` (if set and parsable)
    /// overriding the coloring cap.
    pub fn from_env() -> Self {
        let mut budget = OracleBudget::default();
        if let Ok(s) = std::env::var(ORACLE_BUDGET_ENV) {
            if let Ok(v) = s.trim().parse::<u64>() {
                budget.max_colorings = v;
            }
        }
        budget
    }
}

/// For each edge, the smaller-id edges sharing a vertex with it.
fn neighbors_before(g: &Graph) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); g.edge_count()];
    for v in 0..g.vertex_count() {
        let inc = g.incident(v);
        for (i, &(e, _)) in inc.iter().enumerate() {
            for &(f, _) in &inc[i + 1..] {
                let (lo, hi) = (e.min(f), e.max(f));
                out[hi].push(lo);
            }
        }
    }
    for l in &mut out {
        l.sort_unstable();
        l.dedup();
    }
    out
}

/// Streams every proper edge coloring of `g` exactly once, in lexicographic
/// order over (edge id, color). The final item is an error if the budget is
/// exhausted before the enumeration finishes.
pub struct ProperColorings {
    k: usize,
    neighbors: Vec<Vec<usize>>,
    colors: Vec<usize>,
    depth: usize,
    yielded: u64,
    budget: u64,
    done: bool,
}

pub fn enumerate_proper_colorings(g: &Graph, colors: &ColorSet, budget: &OracleBudget) -> ProperColorings {
    ProperColorings {
        k: colors.count(),
        neighbors: neighbors_before(g),
        colors: vec![0; g.edge_count()],
        depth: 0,
        yielded: 0,
        budget: budget.max_colorings,
        done: false,
    }
}

impl ProperColorings {
    fn conflicts(&self, e: usize, c: usize) -> bool {
        self.neighbors[e].iter().any(|&f| self.colors[f] == c)
    }
}

impl Iterator for ProperColorings {
    type Item = Result<EdgeColoring, OracleError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let m = self.colors.len();
        if m == 0 {
            self.done = true;
            return Some(Ok(EdgeColoring::from_vec(Vec::new())));
        }
        loop {
            let mut placed = false;
            for c in self.colors[self.depth] + 1..=self.k {
                if !self.conflicts(self.depth, c) {
                    self.colors[self.depth] = c;
                    placed = true;
                    break;
                }
            }
            if placed {
                if self.depth + 1 == m {
                    self.yielded += 1;
                    if self.yielded > self.budget {
                        self.done = true;
                        return Some(Err(OracleError::BudgetExceeded {
                            what: "proper colorings",
                            limit: self.budget,
                        }));
                    }
                    return Some(Ok(EdgeColoring::from_vec(self.colors.clone())));
                }
                self.depth += 1;
                self.colors[self.depth] = 0;
            } else {
                self.colors[self.depth] = 0;
                if self.depth == 0 {
                    self.done = true;
                    return None;
                }
                self.depth -= 1;
            }
        }
    }
}

/// Exhaustive minimum over all proper colorings of the graph of `paths`.
/// Ties break toward the lexicographically smallest coloring.
pub fn brute_min_coloring(
    g: &Graph,
    paths: &[Path],
    colors: &ColorSet,
    tc: &CostMatrix,
    objective: Objective,
    budget: &OracleBudget,
) -> Result<(Cost, EdgeColoring), OracleError> {
    let scaled = ScaledCosts::new(tc)?;
    let entries: Vec<(usize, usize, i128)> = traversal_counts(paths)
        .into_iter()
        .map(|(t, count)| {
            let mult = if objective == Objective::Reload { count as i128 } else { 1 };
            (t.edges.0, t.edges.1, mult)
        })
        .collect();
    let mut best: Option<(i128, EdgeColoring)> = None;
    for item in enumerate_proper_colorings(g, colors, budget) {
        let coloring = item?;
        let total: i128 = entries
            .iter()
            .map(|&(e, f, mult)| scaled.get(coloring.color(e), coloring.color(f)) * mult)
            .sum();
        match &best {
            Some((b, _)) if *b <= total => {}
            _ => best = Some((total, coloring)),
        }
    }
    let (total, witness) = best.ok_or(OracleError::NoProperColoring { colors: colors.count() })?;
    Ok((scaled.to_cost(total), witness))
}

/// Union-find with rollback, for the spanning tree backtracking.
struct Dsu {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect(), size: vec![1; n] }
    }

    fn find(&self, mut v: usize) -> usize {
        while self.parent[v] != v {
            v = self.parent[v];
        }
        v
    }

    /// Unions by size without path compression so it can be undone.
    fn union(&mut self, a: usize, b: usize) -> Option<usize> {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return None;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        Some(small)
    }

    fn undo(&mut self, small: usize) {
        let big = self.parent[small];
        self.size[big] -= self.size[small];
        self.parent[small] = small;
    }
}

/// Every spanning tree of `g` rooted at `root`, in deterministic order
/// (lexicographic by included edge ids). For digraphs: every arborescence
/// rooted at `root`.
pub fn enumerate_spanning_trees(
    g: &Graph,
    root: usize,
    budget: &OracleBudget,
) -> Result<Vec<RootedTree>, OracleError> {
    if !g.is_connected() {
        return Err(OracleError::Disconnected);
    }
    if g.is_directed() {
        return enumerate_arborescences(g, root, budget);
    }
    let n = g.vertex_count();
    let mut trees = Vec::new();
    if n <= 1 {
        trees.push(RootedTree::from_edges(g, &[], root).expect("trivial tree"));
        return Ok(trees);
    }
    let mut dsu = Dsu::new(n);
    let mut chosen: Vec<usize> = Vec::with_capacity(n - 1);

    fn rec(
        g: &Graph,
        root: usize,
        idx: usize,
        dsu: &mut Dsu,
        chosen: &mut Vec<usize>,
        trees: &mut Vec<RootedTree>,
        max: u64,
    ) -> Result<(), OracleError> {
        let n = g.vertex_count();
        if chosen.len() == n - 1 {
            if trees.len() as u64 >= max {
                return Err(OracleError::BudgetExceeded { what: "spanning trees", limit: max });
            }
            trees.push(RootedTree::from_edges(g, chosen, root).expect("acyclic n-1 edge set spans"));
            return Ok(());
        }
        if idx == g.edge_count() || chosen.len() + (g.edge_count() - idx) < n - 1 {
            return Ok(());
        }
        let (u, v) = g.endpoints(idx);
        if let Some(undo) = dsu.union(u, v) {
            chosen.push(idx);
            rec(g, root, idx + 1, dsu, chosen, trees, max)?;
            chosen.pop();
            dsu.undo(undo);
        }
        rec(g, root, idx + 1, dsu, chosen, trees, max)
    }

    rec(g, root, 0, &mut dsu, &mut chosen, &mut trees, budget.max_trees)?;
    Ok(trees)
}

fn enumerate_arborescences(
    g: &Graph,
    root: usize,
    budget: &OracleBudget,
) -> Result<Vec<RootedTree>, OracleError> {
    let n = g.vertex_count();
    let others: Vec<usize> = (0..n).filter(|&v| v != root).collect();
    // inbound arcs per vertex, in arc-id order
    let mut in_arcs = vec![Vec::new(); n];
    for e in 0..g.edge_count() {
        let (tail, head) = g.endpoints(e);
        in_arcs[head].push((e, tail));
    }
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut arcs: Vec<usize> = Vec::with_capacity(n.saturating_sub(1));
    let mut trees = Vec::new();

    fn creates_cycle(parent: &[Option<usize>], from: usize, target: usize) -> bool {
        let mut at = from;
        loop {
            if at == target {
                return true;
            }
            match parent[at] {
                Some(p) => at = p,
                None => return false,
            }
        }
    }

    fn rec(
        g: &Graph,
        root: usize,
        others: &[usize],
        in_arcs: &[Vec<(usize, usize)>],
        i: usize,
        parent: &mut Vec<Option<usize>>,
        arcs: &mut Vec<usize>,
        trees: &mut Vec<RootedTree>,
        max: u64,
    ) -> Result<(), OracleError> {
        if i == others.len() {
            if trees.len() as u64 >= max {
                return Err(OracleError::BudgetExceeded { what: "arborescences", limit: max });
            }
            trees.push(RootedTree::from_edges(g, arcs, root).expect("acyclic parent choice"));
            return Ok(());
        }
        let v = others[i];
        for &(e, tail) in &in_arcs[v] {
            if creates_cycle(parent, tail, v) {
                continue;
            }
            parent[v] = Some(tail);
            arcs.push(e);
            rec(g, root, others, in_arcs, i + 1, parent, arcs, trees, max)?;
            arcs.pop();
            parent[v] = None;
        }
        Ok(())
    }

    rec(g, root, &others, &in_arcs, 0, &mut parent, &mut arcs, &mut trees, budget.max_trees)?;
    Ok(trees)
}

/// Traversals of the root-to-vertex path set of a tree, read off the tree
/// structure: at each non-root vertex the inbound edge meets every child
/// edge, and that traversal lies on one path per vertex in the child's
/// subtree.
fn tree_traversal_entries(tree: &RootedTree, objective: Objective) -> Vec<(usize, usize, i128)> {
    let sizes = tree.subtree_sizes();
    let mut out = Vec::new();
    for v in 0..tree.vertex_count() {
        let Some(e) = tree.in_edge(v) else { continue };
        for &(child, f) in tree.children(v) {
            let mult = if objective == Objective::Reload { sizes[child] as i128 } else { 1 };
            out.push((e, f, mult));
        }
    }
    out
}

/// Exhaustive minimum over (spanning tree, proper coloring of the whole
/// graph) pairs, evaluating the cost of the root-to-vertex path set of the
/// tree. The coloring must be proper on every edge of `g`, including edges
/// outside the tree.
pub fn brute_min_path_tree(
    g: &Graph,
    root: usize,
    colors: &ColorSet,
    tc: &CostMatrix,
    objective: Objective,
    budget: &OracleBudget,
) -> Result<(Cost, EdgeColoring, RootedTree), OracleError> {
    let scaled = ScaledCosts::new(tc)?;
    let trees = enumerate_spanning_trees(g, root, budget)?;
    if trees.is_empty() {
        return Err(OracleError::NoSpanningTree { root });
    }
    let neighbors = full_neighbors(g);
    let k = colors.count();
    let m = g.edge_count();
    let mut enumerated: u64 = 0;
    let mut best: Option<(i128, EdgeColoring, usize)> = None;

    for (ti, tree) in trees.iter().enumerate() {
        let entries = tree_traversal_entries(tree, objective);
        // color tree edges first so the objective is fixed by a prefix
        let mut order: Vec<usize> = tree.tree_edges().to_vec();
        order.extend((0..m).filter(|e| !tree.contains_edge(*e)));
        let t = tree.tree_edges().len();
        let mut assigned: Vec<usize> = vec![0; m];

        if t == 0 {
            // single-vertex graph
            best = Some((0, EdgeColoring::from_vec(assigned), ti));
            break;
        }

        // depth-first over `order[..t]`; each completed prefix counts
        // against the coloring budget
        let mut depth = 0usize;
        let mut cursor: Vec<usize> = vec![0; t];
        loop {
            let e = order[depth];
            let mut placed = false;
            for c in cursor[depth] + 1..=k {
                if !neighbors[e].iter().any(|&f| assigned[f] == c) {
                    assigned[e] = c;
                    cursor[depth] = c;
                    placed = true;
                    break;
                }
            }
            if placed {
                if depth + 1 == t {
                    enumerated += 1;
                    if enumerated > budget.max_colorings {
                        return Err(OracleError::BudgetExceeded {
                            what: "tree colorings",
                            limit: budget.max_colorings,
                        });
                    }
                    let total: i128 = entries
                        .iter()
                        .map(|&(e, f, mult)| scaled.get(assigned[e], assigned[f]) * mult)
                        .sum();
                    let improves = match &best {
                        Some((b, _, _)) => total < *b,
                        None => true,
                    };
                    if improves {
                        if let Some(full) = extend_coloring(&order[t..], &neighbors, &assigned, k) {
                            best = Some((total, EdgeColoring::from_vec(full), ti));
                        }
                    }
                    assigned[e] = 0;
                    // advance at the same depth
                } else {
                    depth += 1;
                    cursor[depth] = 0;
                }
            } else {
                cursor[depth] = 0;
                assigned[e] = 0;
                if depth == 0 {
                    break;
                }
                depth -= 1;
                assigned[order[depth]] = 0;
            }
        }
    }

    let (total, coloring, ti) = best.ok_or(OracleError::NoProperColoring { colors: k })?;
    Ok((scaled.to_cost(total), coloring, trees[ti].clone()))
}

/// For each edge, every other edge sharing a vertex with it.
fn full_neighbors(g: &Graph) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); g.edge_count()];
    for v in 0..g.vertex_count() {
        let inc = g.incident(v);
        for (i, &(e, _)) in inc.iter().enumerate() {
            for &(f, _) in &inc[i + 1..] {
                out[e].push(f);
                out[f].push(e);
            }
        }
    }
    for l in &mut out {
        l.sort_unstable();
        l.dedup();
    }
    out
}

/// First proper completion of `assigned` over `rest`, in lexicographic
/// order, or `None` if none exists.
fn extend_coloring(rest: &[usize], neighbors: &[Vec<usize>], assigned: &[usize], k: usize) -> Option<Vec<usize>> {
    fn rec(rest: &[usize], neighbors: &[Vec<usize>], work: &mut Vec<usize>, k: usize, i: usize) -> bool {
        if i == rest.len() {
            return true;
        }
        let e = rest[i];
        for c in 1..=k {
            if neighbors[e].iter().any(|&f| work[f] == c) {
                continue;
            }
            work[e] = c;
            if rec(rest, neighbors, work, k, i + 1) {
                return true;
            }
            work[e] = 0;
        }
        false
    }
    let mut work = assigned.to_vec();
    if rec(rest, neighbors, &mut work, k, 0) {
        Some(work)
    } else {
        None
    }
}
