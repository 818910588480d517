//! Block-cut-tree decomposition and the path-tree solvers for graphs that
//! are close to trees: the sparse-block dynamic program and the
//! spanning-tree-enumeration fallback.
//!
//! The instance is augmented with a virtual root `r'` joined to the real
//! root by an edge carrying the reserved color 0, which costs 0 against
//! every color. The block tree is rooted at the virtual block `{r, r'}`,
//! and the DP walks it bottom-up: inside a block it solves a min-cost
//! assignment per vertex and per spanning tree of the block; at a cut
//! vertex it guesses a proper coloring of all incident tree-edge candidates
//! and, independently per child block, the spanning tree the solution
//! induces there.

use crate::assignment::{min_cost_assignment, AssignmentProblem};
use crate::color::{ColorSet, EdgeColoring};
use crate::cost::{Cost, CostMatrix};
use crate::eval::Objective;
use crate::graph::{Graph, RootedTree};
use crate::oracle::{enumerate_spanning_trees, OracleBudget};
use crate::solve::{extend_partial_coloring, SolveError};
use num_traits::Zero;
use std::collections::BTreeMap;

/// Caps under which the sparse-block DP is polynomial: `c1` bounds the
/// degree of every cut vertex, `c2` bounds `|E(B)| - |V(B)|` per block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SparseCaps {
    pub c1: usize,
    pub c2: usize,
    pub max_block_trees: u64,
}

impl Default for SparseCaps {
    fn default() -> Self {
        SparseCaps { c1: 6, c2: 2, max_block_trees: 1_000_000 }
    }
}

impl SparseCaps {
    pub fn new(c1: usize, c2: usize) -> Self {
        SparseCaps { c1, c2, ..Default::default() }
    }
}

/// One biconnected component, as edge ids and the sorted vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub edges: Vec<usize>,
    pub vertices: Vec<usize>,
}

/// The rooted block tree of the augmented graph. Vertex ids refer to the
/// augmented graph: the original ids plus the virtual root `n` and the
/// virtual edge `m`.
#[derive(Debug, Clone)]
pub struct BlockTree {
    aug: Graph,
    original_root: usize,
    virtual_root: usize,
    virtual_edge: usize,
    blocks: Vec<Block>,
    root_block: usize,
    is_cut: Vec<bool>,
    parent_cut_of_block: Vec<Option<usize>>,
    child_blocks_of_cut: Vec<Vec<usize>>,
    /// |v*|: number of vertices in the blocks of the subtree rooted at the
    /// cut vertex v (0 for non-cut vertices).
    cut_subtree_vertices: Vec<usize>,
    /// blocks in postorder of the block tree (root block last)
    block_postorder: Vec<usize>,
}

impl BlockTree {
    pub fn augmented_graph(&self) -> &Graph {
        &self.aug
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn root_block(&self) -> usize {
        self.root_block
    }

    pub fn virtual_edge(&self) -> usize {
        self.virtual_edge
    }

    pub fn virtual_root(&self) -> usize {
        self.virtual_root
    }

    pub fn is_cut_vertex(&self, v: usize) -> bool {
        self.is_cut[v]
    }

    /// Cut vertices of the augmented graph, ascending.
    pub fn cut_vertices(&self) -> Vec<usize> {
        (0..self.aug.vertex_count()).filter(|&v| self.is_cut[v]).collect()
    }

    /// The parent cut vertex of a block (the virtual root for the root
    /// block).
    pub fn block_root(&self, b: usize) -> usize {
        self.parent_cut_of_block[b].unwrap_or(self.virtual_root)
    }

    pub fn child_blocks(&self, v: usize) -> &[usize] {
        &self.child_blocks_of_cut[v]
    }
}

/// Iterative lowpoint computation; returns the blocks (edge lists) and the
/// articulation flags.
fn biconnected_components(g: &Graph, start: usize) -> (Vec<Vec<usize>>, Vec<bool>) {
    let n = g.vertex_count();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut is_cut = vec![false; n];
    let mut timer = 0usize;
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut edge_stack: Vec<usize> = Vec::new();
    // frame: (vertex, inbound edge, next incident index)
    let mut stack: Vec<(usize, Option<usize>, usize)> = vec![(start, None, 0)];
    disc[start] = timer;
    low[start] = timer;
    timer += 1;
    let mut root_children = 0usize;

    while let Some(&mut (v, in_edge, ref mut idx)) = stack.last_mut() {
        if *idx < g.incident(v).len() {
            let (e, w) = g.incident(v)[*idx];
            *idx += 1;
            if Some(e) == in_edge {
                continue;
            }
            if disc[w] == usize::MAX {
                edge_stack.push(e);
                disc[w] = timer;
                low[w] = timer;
                timer += 1;
                stack.push((w, Some(e), 0));
            } else if disc[w] < disc[v] {
                edge_stack.push(e);
                low[v] = low[v].min(disc[w]);
            }
        } else {
            stack.pop();
            if let Some(&mut (p, _, _)) = stack.last_mut() {
                low[p] = low[p].min(low[v]);
                if low[v] >= disc[p] {
                    if p == start {
                        root_children += 1;
                    } else {
                        is_cut[p] = true;
                    }
                    // pop the block closed by the tree edge p-v
                    let mut block = Vec::new();
                    while let Some(&top) = edge_stack.last() {
                        edge_stack.pop();
                        block.push(top);
                        let (a, b) = g.endpoints(top);
                        if (a == p && b == v) || (a == v && b == p) {
                            break;
                        }
                    }
                    block.sort_unstable();
                    blocks.push(block);
                }
            }
        }
    }
    if root_children > 1 {
        is_cut[start] = true;
    }
    (blocks, is_cut)
}

/// Decomposes the instance graph into its rooted block tree, after adding
/// the virtual root, the virtual edge and its block.
pub fn block_decompose(g: &Graph, root: usize) -> Result<BlockTree, SolveError> {
    if g.is_directed() {
        return Err(SolveError::DirectedUnsupported);
    }
    if root >= g.vertex_count() {
        return Err(SolveError::RootOutOfRange { root });
    }
    if !g.is_connected() {
        return Err(SolveError::Disconnected);
    }
    let n = g.vertex_count();
    let mut aug = Graph::undirected(n + 1);
    for e in 0..g.edge_count() {
        let (u, v) = g.endpoints(e);
        aug.add_edge(u, v).expect("copying a simple graph");
    }
    let virtual_root = n;
    let virtual_edge = aug.add_edge(root, virtual_root).expect("fresh vertex");

    let (edge_blocks, is_cut) = biconnected_components(&aug, virtual_root);
    let blocks: Vec<Block> = edge_blocks
        .into_iter()
        .map(|edges| {
            let mut vertices: Vec<usize> = edges
                .iter()
                .flat_map(|&e| {
                    let (u, v) = aug.endpoints(e);
                    [u, v]
                })
                .collect();
            vertices.sort_unstable();
            vertices.dedup();
            Block { edges, vertices }
        })
        .collect();

    let root_block = blocks
        .iter()
        .position(|b| b.edges.contains(&virtual_edge))
        .expect("the virtual edge forms a block");

    // bipartite adjacency between blocks and cut vertices
    let mut blocks_of_cut: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for (bi, b) in blocks.iter().enumerate() {
        for &v in &b.vertices {
            if is_cut[v] {
                blocks_of_cut[v].push(bi);
            }
        }
    }

    // root the block tree at the virtual block
    let mut parent_cut_of_block: Vec<Option<usize>> = vec![None; blocks.len()];
    let mut child_blocks_of_cut: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    let mut block_seen = vec![false; blocks.len()];
    let mut cut_seen = vec![false; n + 1];
    let mut order = Vec::new();
    let mut queue = std::collections::VecDeque::from([root_block]);
    block_seen[root_block] = true;
    while let Some(b) = queue.pop_front() {
        order.push(b);
        for &v in &blocks[b].vertices {
            if !is_cut[v] || cut_seen[v] {
                continue;
            }
            cut_seen[v] = true;
            for &b2 in &blocks_of_cut[v] {
                if !block_seen[b2] {
                    block_seen[b2] = true;
                    parent_cut_of_block[b2] = Some(v);
                    child_blocks_of_cut[v].push(b2);
                    queue.push_back(b2);
                }
            }
        }
    }
    let mut block_postorder = order;
    block_postorder.reverse();

    // subtree vertex counts, bottom-up over the block tree
    let mut block_subtree = vec![0usize; blocks.len()];
    let mut cut_subtree_vertices = vec![0usize; n + 1];
    for &b in &block_postorder {
        let mut total = blocks[b].vertices.len();
        for &v in &blocks[b].vertices {
            if is_cut[v] && parent_cut_of_block[b] != Some(v) && !child_blocks_of_cut[v].is_empty() {
                if cut_subtree_vertices[v] == 0 {
                    let mut size = 1;
                    for &b2 in &child_blocks_of_cut[v] {
                        size += block_subtree[b2] - 1;
                    }
                    cut_subtree_vertices[v] = size;
                }
                total += cut_subtree_vertices[v] - 1;
            }
        }
        block_subtree[b] = total;
    }
    for v in 0..=n {
        if is_cut[v] && cut_subtree_vertices[v] == 0 {
            let mut size = 1;
            for &b2 in &child_blocks_of_cut[v] {
                size += block_subtree[b2] - 1;
            }
            cut_subtree_vertices[v] = size;
        }
    }

    Ok(BlockTree {
        aug,
        original_root: root,
        virtual_root,
        virtual_edge,
        blocks,
        root_block,
        is_cut,
        parent_cut_of_block,
        child_blocks_of_cut,
        cut_subtree_vertices,
        block_postorder,
    })
}

/// A spanning tree of one block, rooted at the block's parent cut vertex.
/// Vertex ids are sparse (they live in the host graph).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedSubtree {
    root: usize,
    edges: Vec<usize>,
    parent: BTreeMap<usize, (usize, usize)>,
    children: BTreeMap<usize, Vec<(usize, usize)>>,
    postorder: Vec<usize>,
}

impl RootedSubtree {
    fn from_edges(g: &Graph, edges: &[usize], root: usize) -> Self {
        let mut adj: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
        for &e in edges {
            let (u, v) = g.endpoints(e);
            adj.entry(u).or_default().push((e, v));
            adj.entry(v).or_default().push((e, u));
        }
        adj.entry(root).or_default();
        let mut parent = BTreeMap::new();
        let mut children: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
        let mut queue = std::collections::VecDeque::from([root]);
        let mut seen: std::collections::BTreeSet<usize> = std::collections::BTreeSet::new();
        seen.insert(root);
        while let Some(v) = queue.pop_front() {
            let mut kids = Vec::new();
            for &(e, w) in adj.get(&v).into_iter().flatten() {
                if seen.contains(&w) {
                    continue;
                }
                seen.insert(w);
                parent.insert(w, (v, e));
                kids.push((w, e));
                queue.push_back(w);
            }
            kids.sort_unstable();
            children.insert(v, kids);
        }
        let postorder = {
            let mut out = Vec::with_capacity(seen.len());
            let mut stack = vec![(root, 0usize)];
            while let Some(&mut (v, ref mut next)) = stack.last_mut() {
                let kids = children.get(&v).map(|k| k.as_slice()).unwrap_or(&[]);
                if *next < kids.len() {
                    let c = kids[*next].0;
                    *next += 1;
                    stack.push((c, 0));
                } else {
                    out.push(v);
                    stack.pop();
                }
            }
            out
        };
        let mut sorted = edges.to_vec();
        sorted.sort_unstable();
        RootedSubtree { root, edges: sorted, parent, children, postorder }
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn children(&self, v: usize) -> &[(usize, usize)] {
        self.children.get(&v).map(|k| k.as_slice()).unwrap_or(&[])
    }

    pub fn in_edge(&self, v: usize) -> Option<usize> {
        self.parent.get(&v).map(|&(_, e)| e)
    }

    /// Non-root vertices in postorder.
    pub fn postorder_non_root(&self) -> impl Iterator<Item = usize> + '_ {
        self.postorder.iter().copied().filter(move |&v| v != self.root)
    }
}

/// All spanning trees of a block (given by its edge ids in `g`), rooted at
/// `root`, in deterministic order.
pub fn enumerate_block_trees(
    g: &Graph,
    block_edges: &[usize],
    root: usize,
    cap: u64,
) -> Result<Vec<RootedSubtree>, SolveError> {
    let mut vertices: Vec<usize> = block_edges
        .iter()
        .flat_map(|&e| {
            let (u, v) = g.endpoints(e);
            [u, v]
        })
        .collect();
    vertices.sort_unstable();
    vertices.dedup();
    let index: BTreeMap<usize, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let need = vertices.len().saturating_sub(1);
    let mut edges = block_edges.to_vec();
    edges.sort_unstable();

    fn find(parent: &[usize], mut v: usize) -> usize {
        while parent[v] != v {
            v = parent[v];
        }
        v
    }

    #[allow(clippy::too_many_arguments)]
    fn rec(
        g: &Graph,
        edges: &[usize],
        index: &BTreeMap<usize, usize>,
        need: usize,
        root: usize,
        idx: usize,
        parent: &mut Vec<usize>,
        chosen: &mut Vec<usize>,
        out: &mut Vec<RootedSubtree>,
        cap: u64,
    ) -> Result<(), SolveError> {
        if chosen.len() == need {
            if out.len() as u64 >= cap {
                return Err(SolveError::BlockTreeBudget { limit: cap });
            }
            out.push(RootedSubtree::from_edges(g, chosen, root));
            return Ok(());
        }
        if idx == edges.len() || chosen.len() + (edges.len() - idx) < need {
            return Ok(());
        }
        let (u, v) = g.endpoints(edges[idx]);
        let (ru, rv) = (find(parent, index[&u]), find(parent, index[&v]));
        if ru != rv {
            parent[rv] = ru;
            chosen.push(edges[idx]);
            rec(g, edges, index, need, root, idx + 1, parent, chosen, out, cap)?;
            chosen.pop();
            parent[rv] = rv;
        }
        rec(g, edges, index, need, root, idx + 1, parent, chosen, out, cap)
    }

    let mut parent: Vec<usize> = (0..vertices.len()).collect();
    let mut chosen: Vec<usize> = Vec::with_capacity(need);
    let mut out: Vec<RootedSubtree> = Vec::new();
    rec(g, &edges, &index, need, root, 0, &mut parent, &mut chosen, &mut out, cap)?;
    Ok(out)
}

/// Per-vertex decision recorded for witness reconstruction.
#[derive(Debug, Clone)]
enum Record {
    Plain { child_colors: Vec<usize> },
    Cut { within: Vec<usize>, blocks: Vec<CutBlockChoice> },
}

#[derive(Debug, Clone)]
struct CutBlockChoice {
    block: usize,
    tree_idx: usize,
    // (child vertex, edge, color) for the children of the cut vertex in
    // the chosen spanning tree of the child block
    child_colors: Vec<(usize, usize, usize)>,
}

#[derive(Debug, Clone)]
struct Entry {
    value: Cost,
    record: Record,
}

/// DP tables for one block: per spanning tree of the block, a map from
/// (vertex, inbound color) to the entry, plus full-subtree sizes.
struct BlockTables {
    trees: Vec<RootedSubtree>,
    entries: Vec<BTreeMap<(usize, usize), Entry>>,
    sizes: Vec<BTreeMap<usize, usize>>,
}

fn tc0(tc: &CostMatrix, x: usize, y: usize) -> Cost {
    if x == 0 || y == 0 {
        Cost::zero()
    } else {
        tc.get(x, y).clone()
    }
}

fn reload_mult(objective: Objective, size: usize) -> Cost {
    match objective {
        Objective::Reload => Cost::from_integer(size as i128),
        Objective::Changeover => Cost::from_integer(1),
    }
}

/// Assignment step for a vertex whose tree children all lie in its own
/// block and which has no child blocks.
fn compute_plain_vertex(
    t: &RootedSubtree,
    table: &BTreeMap<(usize, usize), Entry>,
    sizes: &BTreeMap<usize, usize>,
    v: usize,
    x: usize,
    k: usize,
    tc: &CostMatrix,
    objective: Objective,
) -> Entry {
    let kids = t.children(v);
    if kids.is_empty() {
        return Entry { value: Cost::zero(), record: Record::Plain { child_colors: Vec::new() } };
    }
    let cols: Vec<usize> = (1..=k).filter(|&y| y != x).collect();
    let weights: Vec<Vec<Cost>> = kids
        .iter()
        .map(|&(child, _)| {
            let mult = reload_mult(objective, sizes[&child]);
            cols.iter()
                .map(|&y| tc0(tc, x, y) * mult.clone() + table[&(child, y)].value.clone())
                .collect()
        })
        .collect();
    let problem = AssignmentProblem::new(weights).expect("DP weights are nonnegative");
    let (value, assign) = min_cost_assignment(&problem).expect("colors cover the degree");
    Entry { value, record: Record::Plain { child_colors: assign.iter().map(|&j| cols[j]).collect() } }
}

/// Joint guess at a cut vertex: a proper coloring of all its incident
/// tree-edge candidates (children inside the current block plus all of its
/// edges in child blocks), then an independent best spanning tree per
/// child block under that coloring.
#[allow(clippy::too_many_arguments)]
fn compute_cut_vertex(
    bt: &BlockTree,
    tables: &[Option<BlockTables>],
    t: &RootedSubtree,
    current: &BTreeMap<(usize, usize), Entry>,
    sizes: &BTreeMap<usize, usize>,
    v: usize,
    x: usize,
    k: usize,
    tc: &CostMatrix,
    objective: Objective,
) -> Entry {
    let within: Vec<(usize, usize)> = t.children(v).to_vec();
    let child_blocks = &bt.child_blocks_of_cut[v];
    let mut block_edges_at_v: Vec<(usize, Vec<usize>)> = Vec::new();
    for &b in child_blocks {
        let es: Vec<usize> = bt.blocks[b]
            .edges
            .iter()
            .copied()
            .filter(|&e| {
                let (a, c) = bt.aug.endpoints(e);
                a == v || c == v
            })
            .collect();
        block_edges_at_v.push((b, es));
    }
    let mut guessed: Vec<usize> = within.iter().map(|&(_, e)| e).collect();
    for (_, es) in &block_edges_at_v {
        guessed.extend(es.iter().copied());
    }

    let evaluate = |guess: &BTreeMap<usize, usize>| -> Entry {
        let mut total = Cost::zero();
        let mut within_colors = Vec::with_capacity(within.len());
        for &(child, e) in &within {
            let y = guess[&e];
            let mult = reload_mult(objective, sizes[&child]);
            total += tc0(tc, x, y) * mult + current[&(child, y)].value.clone();
            within_colors.push(y);
        }
        let mut choices = Vec::with_capacity(block_edges_at_v.len());
        for &(b, _) in &block_edges_at_v {
            let tabs = tables[b].as_ref().expect("child block processed before its parent");
            let mut best_tree: Option<(Cost, usize, Vec<(usize, usize, usize)>)> = None;
            for (ti, tree) in tabs.trees.iter().enumerate() {
                let mut sum = Cost::zero();
                let mut cc = Vec::new();
                for &(child, e) in tree.children(v) {
                    let y = guess[&e];
                    let mult = reload_mult(objective, tabs.sizes[ti][&child]);
                    sum += tc0(tc, x, y) * mult + tabs.entries[ti][&(child, y)].value.clone();
                    cc.push((child, e, y));
                }
                if best_tree.as_ref().map_or(true, |(bv, _, _)| sum < *bv) {
                    best_tree = Some((sum, ti, cc));
                }
            }
            let (sum, ti, cc) = best_tree.expect("every block has a spanning tree");
            total += sum;
            choices.push(CutBlockChoice { block: b, tree_idx: ti, child_colors: cc });
        }
        Entry { value: total, record: Record::Cut { within: within_colors, blocks: choices } }
    };

    fn rec(
        guessed: &[usize],
        i: usize,
        k: usize,
        guess: &mut BTreeMap<usize, usize>,
        used: &mut Vec<bool>,
        best: &mut Option<Entry>,
        evaluate: &impl Fn(&BTreeMap<usize, usize>) -> Entry,
    ) {
        if i == guessed.len() {
            let entry = evaluate(guess);
            if best.as_ref().map_or(true, |b| entry.value < b.value) {
                *best = Some(entry);
            }
            return;
        }
        for c in 1..=k {
            if used[c] {
                continue;
            }
            used[c] = true;
            guess.insert(guessed[i], c);
            rec(guessed, i + 1, k, guess, used, best, evaluate);
            guess.remove(&guessed[i]);
            used[c] = false;
        }
    }

    let mut guess: BTreeMap<usize, usize> = BTreeMap::new();
    let mut used = vec![false; k + 1];
    if x >= 1 {
        used[x] = true;
    }
    let mut best: Option<Entry> = None;
    rec(&guessed, 0, k, &mut guess, &mut used, &mut best, &evaluate);
    best.expect("enough colors for a proper star guess")
}

/// Exact solver for path-tree instances on graphs whose blocks are sparse
/// and whose cut vertices have bounded degree.
pub fn solve_sparse_blocks(
    g: &Graph,
    root: usize,
    colors: &ColorSet,
    tc: &CostMatrix,
    objective: Objective,
    caps: &SparseCaps,
) -> Result<(Cost, EdgeColoring, RootedTree), SolveError> {
    if g.is_directed() {
        return Err(SolveError::DirectedUnsupported);
    }
    if root >= g.vertex_count() {
        return Err(SolveError::RootOutOfRange { root });
    }
    if !g.is_connected() {
        return Err(SolveError::Disconnected);
    }
    let need = g.max_degree() + 1;
    let k = colors.count();
    if k < need {
        return Err(SolveError::ColorSetTooSmall { have: k, need });
    }
    if g.vertex_count() == 1 {
        let tree = RootedTree::from_edges(g, &[], root).expect("trivial");
        return Ok((Cost::zero(), EdgeColoring::from_vec(Vec::new()), tree));
    }

    let bt = block_decompose(g, root)?;
    // cap verification on the original graph (the virtual edge is exempt)
    for v in 0..g.vertex_count() {
        if bt.is_cut[v] && g.degree(v) > caps.c1 {
            return Err(SolveError::CutDegreeExceeded { vertex: v, degree: g.degree(v), cap: caps.c1 });
        }
    }
    for b in &bt.blocks {
        if b.edges.contains(&bt.virtual_edge) {
            continue;
        }
        if b.edges.len() > b.vertices.len() + caps.c2 {
            return Err(SolveError::BlockTooDense {
                edges: b.edges.len(),
                vertices: b.vertices.len(),
                cap: caps.c2,
            });
        }
    }

    let aug = &bt.aug;
    let mut tables: Vec<Option<BlockTables>> = (0..bt.blocks.len()).map(|_| None).collect();

    for &bi in &bt.block_postorder {
        let block = &bt.blocks[bi];
        let block_root = bt.block_root(bi);
        let trees = enumerate_block_trees(aug, &block.edges, block_root, caps.max_block_trees)?;
        let mut entries: Vec<BTreeMap<(usize, usize), Entry>> = Vec::with_capacity(trees.len());
        let mut sizes_per_tree: Vec<BTreeMap<usize, usize>> = Vec::with_capacity(trees.len());

        for t in &trees {
            // full-subtree sizes within this block tree, including the
            // closures hanging below cut vertices
            let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
            for v in t.postorder_non_root() {
                let mut s = 1usize;
                if bt.is_cut[v] {
                    s += bt.cut_subtree_vertices[v].saturating_sub(1);
                }
                for &(c, _) in t.children(v) {
                    s += sizes[&c];
                }
                sizes.insert(v, s);
            }

            let mut table: BTreeMap<(usize, usize), Entry> = BTreeMap::new();
            for v in t.postorder_non_root() {
                let xs: Vec<usize> = if bi == bt.root_block { vec![0] } else { (1..=k).collect() };
                for x in xs {
                    let entry = if bt.is_cut[v] && !bt.child_blocks_of_cut[v].is_empty() {
                        compute_cut_vertex(&bt, &tables, t, &table, &sizes, v, x, k, tc, objective)
                    } else {
                        compute_plain_vertex(t, &table, &sizes, v, x, k, tc, objective)
                    };
                    table.insert((v, x), entry);
                }
            }
            entries.push(table);
            sizes_per_tree.push(sizes);
        }
        tables[bi] = Some(BlockTables { trees, entries, sizes: sizes_per_tree });
    }

    // the optimum is the entry for the real root under the virtual color
    let root_tables = tables[bt.root_block].as_ref().expect("root block processed");
    let value = root_tables.entries[0][&(bt.original_root, 0)].value.clone();

    // witness reconstruction over the augmented graph
    let mut aug_colors = vec![0usize; aug.edge_count()];
    let mut tree_edges: Vec<usize> = Vec::new();
    let mut stack: Vec<(usize, usize, usize, usize)> = vec![(bt.root_block, 0, bt.original_root, 0)];
    while let Some((bi, ti, v, x)) = stack.pop() {
        let tabs = tables[bi].as_ref().expect("processed block");
        let tree = &tabs.trees[ti];
        let entry = &tabs.entries[ti][&(v, x)];
        match &entry.record {
            Record::Plain { child_colors } => {
                for (i, &(child, e)) in tree.children(v).iter().enumerate() {
                    aug_colors[e] = child_colors[i];
                    tree_edges.push(e);
                    stack.push((bi, ti, child, child_colors[i]));
                }
            }
            Record::Cut { within, blocks } => {
                for (i, &(child, e)) in tree.children(v).iter().enumerate() {
                    aug_colors[e] = within[i];
                    tree_edges.push(e);
                    stack.push((bi, ti, child, within[i]));
                }
                for choice in blocks {
                    for &(child, e, color) in &choice.child_colors {
                        aug_colors[e] = color;
                        tree_edges.push(e);
                        stack.push((choice.block, choice.tree_idx, child, color));
                    }
                }
            }
        }
    }

    // drop the augmentation, extend to the remaining edges
    let mut final_colors: Vec<usize> = aug_colors[..g.edge_count()].to_vec();
    extend_partial_coloring(g, &mut final_colors, k)?;
    tree_edges.retain(|&e| e != bt.virtual_edge);
    tree_edges.sort_unstable();
    let tree = RootedTree::from_edges(g, &tree_edges, root).expect("DP assembles a spanning tree");
    Ok((value, EdgeColoring::from_vec(final_colors), tree))
}

/// Path-tree solver for graphs a constant number of edges away from a
/// tree: enumerate the spanning trees, solve each as a tree, keep the
/// first best in enumeration order.
pub fn solve_near_tree(
    g: &Graph,
    root: usize,
    colors: &ColorSet,
    tc: &CostMatrix,
    objective: Objective,
    c: usize,
    budget: &OracleBudget,
) -> Result<(Cost, EdgeColoring, RootedTree), SolveError> {
    if g.is_directed() {
        return Err(SolveError::DirectedUnsupported);
    }
    if root >= g.vertex_count() {
        return Err(SolveError::RootOutOfRange { root });
    }
    if !g.is_connected() {
        return Err(SolveError::Disconnected);
    }
    let need = g.max_degree() + 1;
    let k = colors.count();
    if k < need {
        return Err(SolveError::ColorSetTooSmall { have: k, need });
    }
    let excess = g.edge_count() + 1 - g.vertex_count();
    if excess > c {
        return Err(SolveError::TooFarFromTree { excess, cap: c });
    }
    if g.vertex_count() == 1 {
        let tree = RootedTree::from_edges(g, &[], root).expect("trivial");
        return Ok((Cost::zero(), EdgeColoring::from_vec(Vec::new()), tree));
    }

    let trees = enumerate_spanning_trees(g, root, budget)?;
    let mut best: Option<(Cost, Vec<usize>, usize)> = None;
    for (ti, tree) in trees.iter().enumerate() {
        // solve on the tree subgraph, with edge ids remapped
        let mut sub = Graph::undirected(g.vertex_count());
        for &e in tree.tree_edges() {
            let (u, v) = g.endpoints(e);
            sub.add_edge(u, v).expect("subgraph of a simple graph");
        }
        let (value, sub_coloring, _) =
            crate::assignment::solve_tree_path_tree(&sub, root, colors, tc, objective)?;
        if best.as_ref().map_or(true, |(b, _, _)| value < *b) {
            let mut full = vec![0usize; g.edge_count()];
            for (i, &e) in tree.tree_edges().iter().enumerate() {
                full[e] = sub_coloring.color(i);
            }
            best = Some((value, full, ti));
        }
    }
    let (value, mut full, ti) = best.expect("a connected graph has a spanning tree");
    extend_partial_coloring(g, &mut full, k)?;
    Ok((value, EdgeColoring::from_vec(full), trees[ti].clone()))
}
