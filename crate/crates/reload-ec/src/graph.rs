//! Simple graphs with dense vertex/edge ids, plus rooted (spanning) trees.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(usize),
    #[error("edge {0} is out of range")]
    EdgeOutOfRange(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("parallel edge between {0} and {1}")]
    ParallelEdge(usize, usize),
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph is not a tree ({vertices} vertices, {edges} edges)")]
    NotATree { vertices: usize, edges: usize },
    #[error("edge set is not a spanning tree")]
    NotSpanning,
    #[error("arc {0} points toward the root and cannot appear in an arborescence")]
    BadOrientation(usize),
    #[error("duplicate vertex label {0:?}")]
    DuplicateLabel(String),
}

/// A simple graph (no self-loops, no parallel edges) over vertices
/// `0..n-1` with dense edge ids `0..m-1`. Undirected edges are stored with
/// the smaller endpoint first; directed graphs store `(tail, head)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    directed: bool,
    n: usize,
    labels: Option<Vec<String>>,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<(usize, usize)>>, // (edge id, other endpoint), in edge-id order
}

impl Graph {
    pub fn undirected(n: usize) -> Self {
        Graph { directed: false, n, labels: None, edges: Vec::new(), adj: vec![Vec::new(); n] }
    }

    pub fn directed(n: usize) -> Self {
        Graph { directed: true, n, labels: None, edges: Vec::new(), adj: vec![Vec::new(); n] }
    }

    /// Attaches one label per vertex; labels must be unique.
    pub fn set_labels(&mut self, labels: Vec<String>) -> Result<(), GraphError> {
        assert_eq!(labels.len(), self.n);
        for (i, a) in labels.iter().enumerate() {
            if labels[..i].contains(a) {
                return Err(GraphError::DuplicateLabel(a.clone()));
            }
        }
        self.labels = Some(labels);
        Ok(())
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<usize, GraphError> {
        if u >= self.n {
            return Err(GraphError::VertexOutOfRange(u));
        }
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange(v));
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.adj[u].iter().any(|&(_, w)| w == v) {
            return Err(GraphError::ParallelEdge(u, v));
        }
        let pair = if self.directed || u < v { (u, v) } else { (v, u) };
        let id = self.edges.len();
        self.edges.push(pair);
        self.adj[u].push((id, v));
        self.adj[v].push((id, u));
        Ok(id)
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    /// The endpoint of `e` that is not `v`. Panics if `v` is not an endpoint.
    pub fn other_endpoint(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.edges[e];
        if v == a {
            b
        } else {
            assert_eq!(v, b, "vertex {v} is not an endpoint of edge {e}");
            a
        }
    }

    /// Incident edges of `v` (both directions for digraphs) as
    /// `(edge id, other endpoint)`, in edge-id order.
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        self.adj.get(u)?.iter().find(|&&(_, w)| w == v).map(|&(e, _)| e)
    }

    /// Connectivity of the underlying undirected graph.
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &(_, w) in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// Whether the underlying undirected graph is a tree.
    pub fn is_tree(&self) -> bool {
        self.n > 0 && self.edges.len() == self.n - 1 && self.is_connected()
    }

    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn has_custom_labels(&self) -> bool {
        self.labels.is_some()
    }

    /// Resolves a vertex reference: a label if labels are set, otherwise a
    /// numeric id; numeric ids are always accepted.
    pub fn vertex_by_name(&self, name: &str) -> Option<usize> {
        if let Some(labels) = &self.labels {
            if let Some(i) = labels.iter().position(|l| l == name) {
                return Some(i);
            }
        }
        match name.parse::<usize>() {
            Ok(i) if i < self.n => Some(i),
            _ => None,
        }
    }
}

/// A tree rooted in a host graph: a subset of the host's edges together with
/// parent/children structure. For spanning trees the vertex set is the whole
/// host graph; `in_edge(v)` is the tree edge from `parent(v)` to `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    root: usize,
    parent: Vec<Option<usize>>,
    in_edge: Vec<Option<usize>>,
    children: Vec<Vec<(usize, usize)>>, // (child, edge id), sorted by child id
    tree_edges: Vec<usize>,             // sorted edge ids
}

impl RootedTree {
    /// Roots a graph that is itself a tree. For digraphs every arc must point
    /// away from the root.
    pub fn of_tree(g: &Graph, root: usize) -> Result<Self, GraphError> {
        if root >= g.vertex_count() {
            return Err(GraphError::VertexOutOfRange(root));
        }
        if !g.is_tree() {
            return Err(GraphError::NotATree { vertices: g.vertex_count(), edges: g.edge_count() });
        }
        let all: Vec<usize> = (0..g.edge_count()).collect();
        Self::from_edges(g, &all, root)
    }

    /// Builds a rooted spanning tree from `edge_ids`, which must form a
    /// spanning tree of `g` (an arborescence rooted at `root` for digraphs).
    pub fn from_edges(g: &Graph, edge_ids: &[usize], root: usize) -> Result<Self, GraphError> {
        let n = g.vertex_count();
        if root >= n {
            return Err(GraphError::VertexOutOfRange(root));
        }
        for &e in edge_ids {
            if e >= g.edge_count() {
                return Err(GraphError::EdgeOutOfRange(e));
            }
        }
        if edge_ids.len() + 1 != n {
            return Err(GraphError::NotSpanning);
        }
        let mut chosen = vec![false; g.edge_count()];
        for &e in edge_ids {
            if chosen[e] {
                return Err(GraphError::NotSpanning);
            }
            chosen[e] = true;
        }

        let mut parent = vec![None; n];
        let mut in_edge = vec![None; n];
        let mut children = vec![Vec::new(); n];
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let mut kids: Vec<(usize, usize)> = Vec::new();
            for &(e, w) in g.incident(v) {
                if !chosen[e] || seen[w] {
                    continue;
                }
                if g.is_directed() && g.endpoints(e).0 != v {
                    return Err(GraphError::BadOrientation(e));
                }
                seen[w] = true;
                parent[w] = Some(v);
                in_edge[w] = Some(e);
                kids.push((w, e));
                queue.push_back(w);
            }
            kids.sort_unstable();
            children[v] = kids;
        }
        if seen.iter().any(|s| !s) {
            return Err(GraphError::NotSpanning);
        }
        let mut tree_edges = edge_ids.to_vec();
        tree_edges.sort_unstable();
        Ok(RootedTree { root, parent, in_edge, children, tree_edges })
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn in_edge(&self, v: usize) -> Option<usize> {
        self.in_edge[v]
    }

    pub fn children(&self, v: usize) -> &[(usize, usize)] {
        &self.children[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.parent.len()
    }

    /// Sorted ids of the tree edges within the host graph.
    pub fn tree_edges(&self) -> &[usize] {
        &self.tree_edges
    }

    pub fn contains_edge(&self, e: usize) -> bool {
        self.tree_edges.binary_search(&e).is_ok()
    }

    /// Vertices in postorder (children before parents).
    pub fn postorder(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.vertex_count());
        let mut stack = vec![(self.root, 0usize)];
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if *next < self.children[v].len() {
                let child = self.children[v][*next].0;
                *next += 1;
                stack.push((child, 0));
            } else {
                order.push(v);
                stack.pop();
            }
        }
        order
    }

    /// Number of vertices in each subtree (the subtree of `v` includes `v`).
    pub fn subtree_sizes(&self) -> Vec<usize> {
        let mut size = vec![1usize; self.vertex_count()];
        for v in self.postorder() {
            for &(c, _) in &self.children[v] {
                size[v] += size[c];
            }
        }
        size
    }

    /// Edge ids along the path from the root down to `v`.
    pub fn path_from_root(&self, v: usize) -> Vec<usize> {
        let mut edges = Vec::new();
        let mut cur = v;
        while let Some(e) = self.in_edge[cur] {
            edges.push(e);
            cur = self.parent[cur].expect("vertex with an in-edge has a parent");
        }
        edges.reverse();
        edges
    }
}
