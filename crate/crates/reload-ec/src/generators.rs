//! Instance generators: the hardness-gadget families and seeded random
//! instances for the property suites.

use crate::color::ColorSet;
use crate::cost::{cost, render_cost, Cost, CostMatrix};
use crate::graph::{Graph, GraphError, RootedTree};
use crate::instance::{Instance, ProblemKind};
use crate::path::Path;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("graph has no length-2 path (every vertex has degree <= 1)")]
    NoLengthTwoPath,
    #[error("set {index} is empty")]
    EmptySet { index: usize },
    #[error("target size {k} exceeds {max}")]
    TargetTooLarge { k: usize, max: usize },
    #[error("clique must have more vertices than the target size, got {q} <= {k}")]
    CliqueTooSmall { q: usize, k: usize },
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error("solution tree is not feasible for the set-cover instance: {0}")]
    InfeasibleSolution(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A set system over a universe of named elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetSystem {
    element_names: Vec<String>,
    set_names: Vec<String>,
    /// element indices per set, sorted
    sets: Vec<Vec<usize>>,
}

impl SetSystem {
    /// Builds from named sets; the universe is the union, elements indexed
    /// by first appearance.
    pub fn new(sets: Vec<(String, Vec<String>)>) -> Result<Self, GenError> {
        let mut element_names: Vec<String> = Vec::new();
        let mut out_sets = Vec::with_capacity(sets.len());
        let mut set_names = Vec::with_capacity(sets.len());
        for (i, (name, members)) in sets.iter().enumerate() {
            if members.is_empty() {
                return Err(GenError::EmptySet { index: i });
            }
            let mut ids = Vec::with_capacity(members.len());
            for m in members {
                let id = match element_names.iter().position(|e| e == m) {
                    Some(id) => id,
                    None => {
                        element_names.push(m.clone());
                        element_names.len() - 1
                    }
                };
                ids.push(id);
            }
            ids.sort_unstable();
            ids.dedup();
            out_sets.push(ids);
            set_names.push(name.clone());
        }
        Ok(SetSystem { element_names, set_names, sets: out_sets })
    }

    /// Parses a line-oriented system: `set <name> <element>...`, one per
    /// line; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self, GenError> {
        let mut sets = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut tokens = line.split_whitespace();
            match tokens.next() {
                Some("set") => {
                    let name = tokens
                        .next()
                        .ok_or_else(|| GenError::BadParams(format!("line {}: set needs a name", ln + 1)))?;
                    let members: Vec<String> = tokens.map(str::to_owned).collect();
                    sets.push((name.to_owned(), members));
                }
                Some(other) => {
                    return Err(GenError::BadParams(format!("line {}: unknown directive {other:?}", ln + 1)))
                }
                None => {}
            }
        }
        SetSystem::new(sets)
    }

    pub fn universe_size(&self) -> usize {
        self.element_names.len()
    }

    pub fn set_count(&self) -> usize {
        self.sets.len()
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn set_name(&self, i: usize) -> &str {
        &self.set_names[i]
    }

    pub fn element_name(&self, i: usize) -> &str {
        &self.element_names[i]
    }

    /// Whether sets have size <= 3 and every element lies in <= 2 sets.
    pub fn is_three_two(&self) -> bool {
        let mut occurrences = vec![0usize; self.element_names.len()];
        for s in &self.sets {
            if s.len() > 3 {
                return false;
            }
            for &e in s {
                occurrences[e] += 1;
            }
        }
        occurrences.into_iter().all(|c| c <= 2)
    }

    /// Size of a cover found greedily (an upper bound on the optimum).
    pub fn greedy_cover_size(&self) -> usize {
        let mut covered = vec![false; self.element_names.len()];
        let mut picked = 0;
        while covered.iter().any(|&c| !c) {
            let best = (0..self.sets.len())
                .max_by_key(|&i| self.sets[i].iter().filter(|&&e| !covered[e]).count())
                .expect("nonempty system");
            if self.sets[best].iter().all(|&e| covered[e]) {
                break;
            }
            for &e in &self.sets[best] {
                covered[e] = true;
            }
            picked += 1;
        }
        picked
    }
}

/// A complete graph with symmetric edge weights and a target subgraph size,
/// the input of the lightest-k-subgraph gadget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedClique {
    pub size: usize,
    pub target: usize,
    pub weights: CostMatrix,
}

impl WeightedClique {
    pub fn new(size: usize, target: usize, weights: CostMatrix) -> Result<Self, GenError> {
        if size <= target {
            return Err(GenError::CliqueTooSmall { q: size, k: target });
        }
        if weights.colors() != size {
            return Err(GenError::BadParams(format!(
                "weight matrix covers {} vertices, clique has {size}",
                weights.colors()
            )));
        }
        Ok(WeightedClique { size, target, weights })
    }

    /// Random weights in {1, 2}.
    pub fn random(size: usize, target: usize, seed: u64) -> Result<Self, GenError> {
        let mut rng = StdRng::seed_from_u64(seed);
        let raw: Vec<Vec<i128>> =
            (0..size).map(|_| (0..size).map(|_| rng.random_range(1..=2)).collect()).collect();
        let weights = CostMatrix::from_fn(size, |i, j| {
            if i == j {
                Cost::zero()
            } else {
                cost(raw[i - 1][j - 1])
            }
        })
        .expect("valid weight matrix");
        WeightedClique::new(size, target, weights)
    }

    /// Total weight of the lightest induced subgraph on `target` vertices,
    /// by exhaustive subset enumeration.
    pub fn lightest_subgraph_value(&self) -> Cost {
        fn rec(wc: &WeightedClique, chosen: &mut Vec<usize>, from: usize, best: &mut Option<Cost>) {
            if chosen.len() == wc.target {
                let mut total = Cost::zero();
                for (idx, &a) in chosen.iter().enumerate() {
                    for &b in &chosen[idx + 1..] {
                        total += wc.weights.get(a, b).clone();
                    }
                }
                if best.as_ref().map_or(true, |b| total < *b) {
                    *best = Some(total);
                }
                return;
            }
            for v in from..=wc.size {
                if wc.size - v + 1 < wc.target - chosen.len() {
                    break;
                }
                chosen.push(v);
                rec(wc, chosen, v + 1, best);
                chosen.pop();
            }
        }
        let mut best = None;
        rec(self, &mut Vec::new(), 1, &mut best);
        best.expect("q > k leaves at least one subset")
    }
}

fn meta(pairs: &[(&str, String)]) -> Vec<(String, String)> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

/// Coloring instance whose optimum separates graphs colorable with their
/// maximum degree from those needing one more color: the path set is all
/// distinct length-2 paths, the first `max_degree` colors pair up at unit
/// cost, and any traversal touching the extra color costs `paths * f`.
pub fn gen_chromatic_index_gadget(graph: &Graph, f_value: &Cost) -> Result<Instance, GenError> {
    let mut paths = Vec::new();
    for v in 0..graph.vertex_count() {
        let inc = graph.incident(v);
        for (i, &(e, _)) in inc.iter().enumerate() {
            for &(f, _) in &inc[i + 1..] {
                let (lo, hi) = (e.min(f), e.max(f));
                paths.push(Path::new(graph, vec![lo, hi]).expect("incident edges form a walk"));
            }
        }
    }
    if paths.is_empty() {
        return Err(GenError::NoLengthTwoPath);
    }
    let delta = graph.max_degree();
    let k = delta + 1;
    let big = Cost::from_integer(paths.len() as i128) * f_value.clone();
    let tc = CostMatrix::from_fn(k, |i, j| {
        if i == j {
            Cost::zero()
        } else if i <= delta && j <= delta {
            cost(1)
        } else {
            big.clone()
        }
    })
    .expect("nonnegative gadget costs");
    let metadata = meta(&[
        ("generator", "chromatic-index".into()),
        ("paths", paths.len().to_string()),
        ("f-value", render_cost(f_value)),
        ("threshold", render_cost(&big)),
        ("big-cost", render_cost(&big)),
    ]);
    Ok(Instance {
        kind: ProblemKind::Coloring,
        graph: graph.clone(),
        paths,
        root: None,
        colors: ColorSet::new(k).expect("positive"),
        costs: tc,
        objective: None,
        metadata,
    })
}

/// Star instance encoding the lightest-k-subgraph problem: colors are the
/// clique vertices, costs are the edge weights, and any proper coloring of
/// the k star edges picks a k-subset whose total weight is the cost of the
/// leaf-to-leaf path set.
pub fn gen_light_subgraph_star(problem: &WeightedClique) -> Instance {
    let k = problem.target;
    let mut graph = Graph::undirected(k + 1);
    let mut labels = vec!["c".to_string()];
    for leaf in 1..=k {
        graph.add_edge(0, leaf).expect("star edge");
        labels.push(format!("l{leaf}"));
    }
    graph.set_labels(labels).expect("unique labels");
    let mut paths = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            paths.push(Path::new(&graph, vec![i, j]).expect("leaf-to-leaf walk"));
        }
    }
    let metadata = meta(&[
        ("generator", "light-subgraph-star".into()),
        ("clique-size", problem.size.to_string()),
        ("target-size", k.to_string()),
    ]);
    Instance {
        kind: ProblemKind::Coloring,
        graph,
        paths,
        root: None,
        colors: ColorSet::new(problem.size).expect("positive"),
        costs: problem.weights.clone(),
        objective: None,
        metadata,
    }
}

/// Directed path-tree instance encoding minimum set cover: arcs from the
/// root to every set, and from each set to its elements. The first `k`
/// colors are cheap among themselves (cost 1), everything else costs 2.
/// Only the brute-force oracle accepts directed instances.
pub fn gen_setcover_dag(system: &SetSystem, k: usize) -> Result<Instance, GenError> {
    let m = system.set_count();
    let n = system.universe_size();
    if k > m {
        return Err(GenError::TargetTooLarge { k, max: m });
    }
    if k == 0 {
        return Err(GenError::BadParams("target cover size must be positive".into()));
    }
    let mut graph = Graph::directed(1 + m + n);
    let mut labels = vec!["r".to_string()];
    labels.extend((0..m).map(|i| system.set_name(i).to_string()));
    labels.extend((0..n).map(|j| system.element_name(j).to_string()));
    graph.set_labels(labels)?;
    for i in 0..m {
        graph.add_edge(0, 1 + i)?;
    }
    for (i, set) in system.sets().iter().enumerate() {
        for &j in set {
            graph.add_edge(1 + i, 1 + m + j)?;
        }
    }
    let delta = graph.max_degree();
    let total_colors = delta + 1;
    if k > total_colors {
        return Err(GenError::TargetTooLarge { k, max: total_colors });
    }
    let tc = CostMatrix::from_fn(total_colors, |i, j| {
        if i == j {
            Cost::zero()
        } else if i <= k && j <= k {
            cost(1)
        } else {
            cost(2)
        }
    })
    .expect("nonnegative gadget costs");
    let metadata = meta(&[
        ("generator", "setcover-dag".into()),
        ("sets", m.to_string()),
        ("elements", n.to_string()),
        ("cheap-colors", k.to_string()),
        ("expensive-colors", (total_colors - k).to_string()),
        ("greedy-cover-size", system.greedy_cover_size().to_string()),
    ]);
    Ok(Instance {
        kind: ProblemKind::PathTree,
        graph,
        paths: Vec::new(),
        root: Some(0),
        colors: ColorSet::new(total_colors).expect("positive"),
        costs: tc,
        objective: None,
        metadata,
    })
}

/// Reads a set cover off an arborescence for a set-cover instance: the
/// parents of the element vertices. The result indexes into the system's
/// sets and always covers the universe.
pub fn extract_cover(system: &SetSystem, tree: &RootedTree) -> Result<Vec<usize>, GenError> {
    let m = system.set_count();
    let n = system.universe_size();
    if tree.vertex_count() != 1 + m + n {
        return Err(GenError::InfeasibleSolution(format!(
            "tree has {} vertices, instance has {}",
            tree.vertex_count(),
            1 + m + n
        )));
    }
    let mut cover = Vec::new();
    for j in 0..n {
        let u = 1 + m + j;
        let p = tree
            .parent(u)
            .ok_or_else(|| GenError::InfeasibleSolution(format!("element {j} has no parent")))?;
        if p == 0 || p > m {
            return Err(GenError::InfeasibleSolution(format!(
                "element {j} hangs below vertex {p}, not a set"
            )));
        }
        let set = p - 1;
        if !system.sets()[set].contains(&j) {
            return Err(GenError::InfeasibleSolution(format!("set {set} does not contain element {j}")));
        }
        cover.push(set);
    }
    cover.sort_unstable();
    cover.dedup();
    Ok(cover)
}

/// Shape of a random instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RandomKind {
    /// Random bounded-degree tree with a covering path set; `single_source`
    /// roots every path at vertex 0, `path_tree` emits a path-tree instance
    /// instead of an explicit path set.
    Tree { n: usize, max_degree: usize, single_source: bool, path_tree: bool },
    /// Star of `legs` legs of `leg_len` edges each, with all paths from the
    /// center.
    Spider { legs: usize, leg_len: usize },
    /// Path-tree instance glued from bridges, triangles, four-cycles and
    /// diamonds at low-degree vertices.
    SparseBlock { blocks: usize, max_vertices: usize },
    /// Path-tree instance on a single cycle.
    Cycle { n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomParams {
    pub kind: RandomKind,
    /// Color count; defaults to max degree + 1 (sparse blocks:
    /// 2 * max degree - 1).
    pub colors: Option<usize>,
    /// Cost entries are uniform integers in 0..=max_cost.
    pub max_cost: i128,
}

impl RandomParams {
    pub fn new(kind: RandomKind) -> Self {
        RandomParams { kind, colors: None, max_cost: 5 }
    }
}

fn random_matrix(k: usize, max_cost: i128, rng: &mut StdRng) -> CostMatrix {
    let raw: Vec<Vec<i128>> =
        (0..k).map(|_| (0..k).map(|_| rng.random_range(0..=max_cost)).collect()).collect();
    CostMatrix::from_fn(k, |i, j| if i == j { Cost::zero() } else { cost(raw[i - 1][j - 1]) })
        .expect("nonnegative entries")
}

fn random_tree_graph(n: usize, max_degree: usize, rng: &mut StdRng) -> Result<Graph, GenError> {
    if n == 0 {
        return Err(GenError::BadParams("tree needs at least one vertex".into()));
    }
    if n > 2 && max_degree < 2 {
        return Err(GenError::BadParams("max degree below 2 only fits a single edge".into()));
    }
    let mut g = Graph::undirected(n);
    for v in 1..n {
        let candidates: Vec<usize> = (0..v).filter(|&p| g.degree(p) < max_degree).collect();
        if candidates.is_empty() {
            return Err(GenError::BadParams(format!(
                "cannot fit {n} vertices with max degree {max_degree}"
            )));
        }
        let p = candidates[rng.random_range(0..candidates.len())];
        g.add_edge(p, v)?;
    }
    Ok(g)
}

fn tree_path_between(tree: &RootedTree, a: usize, b: usize) -> Vec<usize> {
    let pa = tree.path_from_root(a);
    let pb = tree.path_from_root(b);
    let mut i = 0;
    while i < pa.len() && i < pb.len() && pa[i] == pb[i] {
        i += 1;
    }
    let mut edges: Vec<usize> = pa[i..].iter().rev().copied().collect();
    edges.extend(&pb[i..]);
    edges
}

/// Reproducible random instance; the same seed yields the same instance.
pub fn gen_random(params: &RandomParams, seed: u64) -> Result<Instance, GenError> {
    let mut rng = StdRng::seed_from_u64(seed);
    let (graph, kind, paths, root) = match &params.kind {
        RandomKind::Tree { n, max_degree, single_source, path_tree } => {
            let g = random_tree_graph(*n, *max_degree, &mut rng)?;
            if *path_tree {
                (g, ProblemKind::PathTree, Vec::new(), Some(0))
            } else {
                let tree = RootedTree::of_tree(&g, 0).expect("generated tree");
                let mut raw: Vec<Vec<usize>> = Vec::new();
                if *single_source {
                    // leaves are enough to cover every edge
                    for v in 1..g.vertex_count() {
                        if tree.children(v).is_empty() {
                            raw.push(tree.path_from_root(v));
                        }
                    }
                    for _ in 0..rng.random_range(0..=2) {
                        let v = rng.random_range(1..g.vertex_count());
                        raw.push(tree.path_from_root(v));
                    }
                } else {
                    for _ in 0..rng.random_range(1..=4) {
                        let a = rng.random_range(0..g.vertex_count());
                        let b = rng.random_range(0..g.vertex_count());
                        if a != b {
                            raw.push(tree_path_between(&tree, a, b));
                        }
                    }
                    let mut covered = vec![false; g.edge_count()];
                    for p in &raw {
                        for &e in p {
                            covered[e] = true;
                        }
                    }
                    for e in 0..g.edge_count() {
                        if !covered[e] {
                            raw.push(vec![e]);
                        }
                    }
                }
                raw.sort();
                raw.dedup();
                let paths = raw.into_iter().map(|p| Path::new(&g, p).expect("tree walk")).collect();
                (g, ProblemKind::Coloring, paths, None)
            }
        }
        RandomKind::Spider { legs, leg_len } => {
            if *legs == 0 || *leg_len == 0 {
                return Err(GenError::BadParams("spider needs positive legs and leg length".into()));
            }
            let n = 1 + legs * leg_len;
            let mut g = Graph::undirected(n);
            for leg in 0..*legs {
                let mut prev = 0;
                for step in 0..*leg_len {
                    let v = 1 + leg * leg_len + step;
                    g.add_edge(prev, v)?;
                    prev = v;
                }
            }
            let tree = RootedTree::of_tree(&g, 0).expect("spider is a tree");
            let mut raw: Vec<Vec<usize>> = Vec::new();
            for leg in 0..*legs {
                let tip = 1 + leg * leg_len + (leg_len - 1);
                raw.push(tree.path_from_root(tip));
            }
            for _ in 0..rng.random_range(0..=2) {
                let v = rng.random_range(1..n);
                raw.push(tree.path_from_root(v));
            }
            raw.sort();
            raw.dedup();
            let paths = raw.into_iter().map(|p| Path::new(&g, p).expect("tree walk")).collect();
            (g, ProblemKind::Coloring, paths, None)
        }
        RandomKind::SparseBlock { blocks, max_vertices } => {
            let mut edges: Vec<(usize, usize)> = Vec::new();
            let mut degree = vec![0usize; max_vertices + 4];
            let mut n = 1usize;
            for _ in 0..*blocks {
                let candidates: Vec<usize> = (0..n).filter(|&v| degree[v] <= 2).collect();
                if candidates.is_empty() {
                    break;
                }
                let attach = candidates[rng.random_range(0..candidates.len())];
                let mut add = |list: &mut Vec<(usize, usize)>, degree: &mut Vec<usize>, u: usize, v: usize| {
                    list.push((u, v));
                    degree[u] += 1;
                    degree[v] += 1;
                };
                match rng.random_range(0..4) {
                    0 if n + 1 <= *max_vertices => {
                        add(&mut edges, &mut degree, attach, n);
                        n += 1;
                    }
                    1 if n + 2 <= *max_vertices => {
                        add(&mut edges, &mut degree, attach, n);
                        add(&mut edges, &mut degree, n, n + 1);
                        add(&mut edges, &mut degree, attach, n + 1);
                        n += 2;
                    }
                    2 if n + 3 <= *max_vertices => {
                        add(&mut edges, &mut degree, attach, n);
                        add(&mut edges, &mut degree, n, n + 1);
                        add(&mut edges, &mut degree, n + 1, n + 2);
                        add(&mut edges, &mut degree, attach, n + 2);
                        n += 3;
                    }
                    _ if n + 3 <= *max_vertices => {
                        // diamond: a four-cycle with one chord, excess 1
                        add(&mut edges, &mut degree, attach, n);
                        add(&mut edges, &mut degree, n, n + 1);
                        add(&mut edges, &mut degree, n + 1, n + 2);
                        add(&mut edges, &mut degree, attach, n + 2);
                        add(&mut edges, &mut degree, n, n + 2);
                        n += 3;
                    }
                    _ => {}
                }
            }
            if n == 1 {
                edges.push((0, 1));
                n = 2;
            }
            let mut g = Graph::undirected(n);
            for (u, v) in edges {
                g.add_edge(u, v)?;
            }
            (g, ProblemKind::PathTree, Vec::new(), Some(0))
        }
        RandomKind::Cycle { n } => {
            if *n < 3 {
                return Err(GenError::BadParams("a cycle needs at least 3 vertices".into()));
            }
            let mut g = Graph::undirected(*n);
            for v in 0..*n {
                g.add_edge(v, (v + 1) % n)?;
            }
            (g, ProblemKind::PathTree, Vec::new(), Some(0))
        }
    };

    let delta = graph.max_degree();
    let default_colors = match params.kind {
        RandomKind::SparseBlock { .. } => (2 * delta).saturating_sub(1).max(delta + 1),
        _ => delta + 1,
    };
    let k = params.colors.unwrap_or(default_colors);
    if k < delta + 1 {
        return Err(GenError::BadParams(format!(
            "{k} colors cannot properly color a graph of max degree {delta}"
        )));
    }
    let tc = random_matrix(k, params.max_cost, &mut rng);
    let kind_name = match params.kind {
        RandomKind::Tree { .. } => "random-tree",
        RandomKind::Spider { .. } => "random-spider",
        RandomKind::SparseBlock { .. } => "random-sparse-block",
        RandomKind::Cycle { .. } => "random-cycle",
    };
    let metadata = meta(&[("generator", kind_name.into()), ("seed", seed.to_string())]);
    Ok(Instance {
        kind,
        graph,
        paths,
        root,
        colors: ColorSet::new(k).expect("positive"),
        costs: tc,
        objective: None,
        metadata,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::Objective;
    use crate::instance::validate_instance;
    use crate::oracle::{brute_min_coloring, brute_min_path_tree, OracleBudget};

    fn cycle(n: usize) -> Graph {
        let mut g = Graph::undirected(n);
        for v in 0..n {
            g.add_edge(v, (v + 1) % n).unwrap();
        }
        g
    }

    fn k3() -> Graph {
        cycle(3)
    }

    #[test]
    fn c4_gadget_reaches_the_class_one_bound() {
        let inst = gen_chromatic_index_gadget(&cycle(4), &cost(1)).unwrap();
        assert!(validate_instance(&inst).is_empty());
        assert_eq!(inst.paths.len(), 4);
        let budget = OracleBudget::default();
        let (value, _) = brute_min_coloring(
            &inst.graph,
            &inst.paths,
            &inst.colors,
            &inst.costs,
            Objective::Reload,
            &budget,
        )
        .unwrap();
        assert_eq!(value, cost(4)); // |paths|, all unit traversals
    }

    #[test]
    fn k3_gadget_exceeds_the_threshold() {
        let inst = gen_chromatic_index_gadget(&k3(), &cost(1)).unwrap();
        assert_eq!(inst.paths.len(), 3);
        let budget = OracleBudget::default();
        let (value, _) = brute_min_coloring(
            &inst.graph,
            &inst.paths,
            &inst.colors,
            &inst.costs,
            Objective::Reload,
            &budget,
        )
        .unwrap();
        // a class-2 graph pays at least |paths| + big - 1 > |paths| * f
        assert!(value >= cost(3 + 3 - 1));
        assert!(value > cost(3));
    }

    #[test]
    fn single_cherry_costs_one() {
        let mut g = Graph::undirected(3);
        g.add_edge(0, 1).unwrap();
        g.add_edge(1, 2).unwrap();
        let inst = gen_chromatic_index_gadget(&g, &cost(1)).unwrap();
        let budget = OracleBudget::default();
        let (value, _) = brute_min_coloring(
            &inst.graph,
            &inst.paths,
            &inst.colors,
            &inst.costs,
            Objective::Reload,
            &budget,
        )
        .unwrap();
        assert_eq!(value, cost(1));
        assert!(gen_chromatic_index_gadget(&Graph::undirected(2), &cost(1)).is_err());
    }

    #[test]
    fn star_gadget_small_example() {
        // q=3, k=2, w12=1, w13=2, w23=2: the lightest pair weighs 1
        let weights = CostMatrix::from_lower(3, &[vec![cost(1)], vec![cost(2), cost(2)]]).unwrap();
        let wc = WeightedClique::new(3, 2, weights).unwrap();
        let inst = gen_light_subgraph_star(&wc);
        assert!(validate_instance(&inst).is_empty());
        let budget = OracleBudget::default();
        let (value, _) = brute_min_coloring(
            &inst.graph,
            &inst.paths,
            &inst.colors,
            &inst.costs,
            Objective::Changeover,
            &budget,
        )
        .unwrap();
        assert_eq!(value, cost(1));
        assert_eq!(wc.lightest_subgraph_value(), cost(1));
    }

    #[test]
    fn star_gadget_uniform_weights() {
        let weights = CostMatrix::uniform(5, cost(2));
        let wc = WeightedClique::new(5, 3, weights).unwrap();
        let inst = gen_light_subgraph_star(&wc);
        let budget = OracleBudget::default();
        let (value, _) = brute_min_coloring(
            &inst.graph,
            &inst.paths,
            &inst.colors,
            &inst.costs,
            Objective::Reload,
            &budget,
        )
        .unwrap();
        assert_eq!(value, cost(3 * 2)); // C(3,2) pairs of weight 2
    }

    #[test]
    fn star_gadget_matches_subset_enumeration() {
        let budget = OracleBudget::default();
        for seed in 0..8 {
            let q = 4 + (seed as usize % 3);
            let k = 2 + (seed as usize % 2);
            let wc = WeightedClique::random(q, k, seed).unwrap();
            let inst = gen_light_subgraph_star(&wc);
            let (value, _) = brute_min_coloring(
                &inst.graph,
                &inst.paths,
                &inst.colors,
                &inst.costs,
                Objective::Reload,
                &budget,
            )
            .unwrap();
            assert_eq!(value, wc.lightest_subgraph_value(), "seed {seed}");
        }
    }

    fn small_system() -> SetSystem {
        SetSystem::new(vec![
            ("S1".into(), vec!["u1".into(), "u2".into()]),
            ("S2".into(), vec!["u2".into(), "u3".into()]),
            ("S3".into(), vec!["u3".into()]),
        ])
        .unwrap()
    }

    #[test]
    fn setcover_dag_structure() {
        let sys = small_system();
        assert!(sys.is_three_two());
        let inst = gen_setcover_dag(&sys, 2).unwrap();
        assert!(inst.graph.is_directed());
        assert!(validate_instance(&inst).is_empty());
        // r -> each set, set -> members
        assert_eq!(inst.graph.edge_count(), 3 + 5);
        assert_eq!(inst.graph.vertex_count(), 1 + 3 + 3);
        assert!(gen_setcover_dag(&sys, 9).is_err());
    }

    #[test]
    fn extracted_cover_is_valid_and_cost_bounded() {
        let sys = small_system();
        let inst = gen_setcover_dag(&sys, 2).unwrap();
        let budget = OracleBudget::default();
        let (value, _, tree) = brute_min_path_tree(
            &inst.graph,
            0,
            &inst.colors,
            &inst.costs,
            Objective::Changeover,
            &budget,
        )
        .unwrap();
        let cover = extract_cover(&sys, &tree).unwrap();
        // coverage
        let mut covered = vec![false; sys.universe_size()];
        for &s in &cover {
            for &e in &sys.sets()[s] {
                covered[e] = true;
            }
        }
        assert!(covered.into_iter().all(|c| c));
        // every element forces one traversal of cost >= 1
        assert!(value >= cost(sys.universe_size() as i128));
    }

    #[test]
    fn random_instances_are_reproducible() {
        let params = RandomParams::new(RandomKind::Tree {
            n: 7,
            max_degree: 3,
            single_source: false,
            path_tree: false,
        });
        let a = gen_random(&params, 1).unwrap();
        let b = gen_random(&params, 1).unwrap();
        assert_eq!(a, b);
        let c = gen_random(&params, 2).unwrap();
        assert_ne!(a, c);
        assert!(validate_instance(&a).is_empty());
    }

    #[test]
    fn random_spider_is_single_source() {
        let params = RandomParams::new(RandomKind::Spider { legs: 3, leg_len: 2 });
        let inst = gen_random(&params, 5).unwrap();
        assert!(validate_instance(&inst).is_empty());
        assert!(inst.paths.iter().all(|p| p.has_endpoint(0)));
    }

    #[test]
    fn random_sparse_block_respects_caps() {
        for seed in 0..6 {
            let params = RandomParams::new(RandomKind::SparseBlock { blocks: 3, max_vertices: 9 });
            let inst = gen_random(&params, seed).unwrap();
            assert!(validate_instance(&inst).is_empty());
            let bt = crate::blocks::block_decompose(&inst.graph, 0).unwrap();
            for b in bt.blocks() {
                assert!(b.edges.len() <= b.vertices.len() + 1);
            }
            for v in bt.cut_vertices() {
                if v < inst.graph.vertex_count() {
                    assert!(inst.graph.degree(v) <= 6);
                }
            }
        }
    }

    #[test]
    fn parse_set_system() {
        let sys = SetSystem::parse("# demo\nset A x y\nset B y z\n").unwrap();
        assert_eq!(sys.set_count(), 2);
        assert_eq!(sys.universe_size(), 3);
        assert_eq!(sys.greedy_cover_size(), 2);
        assert!(SetSystem::parse("set A\n").is_err());
        assert!(SetSystem::parse("junk A x\n").is_err());
    }
}
