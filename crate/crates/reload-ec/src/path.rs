//! Paths (edge sequences), their traversals, and root-to-vertex path sets.

use crate::graph::{Graph, RootedTree};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathError {
    #[error("a path must contain at least one edge")]
    Empty,
    #[error("edge {edge} at position {index} is out of range")]
    EdgeOutOfRange { index: usize, edge: usize },
    #[error("edge repeated immediately at position {index}")]
    ImmediateRepetition { index: usize },
    #[error("edges at positions {index} and {} are not adjacent", index + 1)]
    NonAdjacent { index: usize },
    #[error("arc at position {index} runs against the walk direction")]
    WrongDirection { index: usize },
}

/// A walk `(e_1, ..., e_l)` where consecutive edges share exactly one vertex
/// and no edge repeats immediately. Walks of length one are allowed; they
/// have no traversals and contribute no cost.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    edges: Vec<usize>,
    vertices: Vec<usize>,
}

impl Path {
    /// Validates `edges` against `g` and derives the vertex sequence.
    /// For digraphs the walk must follow arc directions.
    pub fn new(g: &Graph, edges: Vec<usize>) -> Result<Self, PathError> {
        if edges.is_empty() {
            return Err(PathError::Empty);
        }
        for (i, &e) in edges.iter().enumerate() {
            if e >= g.edge_count() {
                return Err(PathError::EdgeOutOfRange { index: i, edge: e });
            }
        }
        for i in 0..edges.len() - 1 {
            if edges[i] == edges[i + 1] {
                return Err(PathError::ImmediateRepetition { index: i });
            }
        }

        let start = if edges.len() == 1 {
            g.endpoints(edges[0]).0
        } else if g.is_directed() {
            g.endpoints(edges[0]).0
        } else {
            let (a, b) = g.endpoints(edges[0]);
            let (c, d) = g.endpoints(edges[1]);
            if a == c || a == d {
                b
            } else if b == c || b == d {
                a
            } else {
                return Err(PathError::NonAdjacent { index: 0 });
            }
        };

        let mut vertices = Vec::with_capacity(edges.len() + 1);
        vertices.push(start);
        let mut at = start;
        for (i, &e) in edges.iter().enumerate() {
            let (a, b) = g.endpoints(e);
            let next = if g.is_directed() {
                if a != at {
                    return Err(if at == b {
                        PathError::WrongDirection { index: i }
                    } else {
                        PathError::NonAdjacent { index: i.saturating_sub(1) }
                    });
                }
                b
            } else if at == a {
                b
            } else if at == b {
                a
            } else {
                return Err(PathError::NonAdjacent { index: i - 1 });
            };
            vertices.push(next);
            at = next;
        }
        Ok(Path { edges, vertices })
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    /// Vertex sequence of the walk, one longer than the edge sequence.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.vertices[0], *self.vertices.last().unwrap())
    }

    pub fn has_endpoint(&self, v: usize) -> bool {
        let (a, b) = self.endpoints();
        a == v || b == v
    }
}

/// A traversal: a visit of two consecutive edges meeting at `vertex`.
/// The edge pair is unordered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Traversal {
    pub vertex: usize,
    pub edges: (usize, usize),
}

impl Traversal {
    pub fn new(vertex: usize, e: usize, f: usize) -> Self {
        debug_assert_ne!(e, f);
        Traversal { vertex, edges: (e.min(f), e.max(f)) }
    }
}

/// The traversals of a path in walk order; empty for single-edge paths.
pub fn traversals_of_path(path: &Path) -> Vec<Traversal> {
    let edges = path.edges();
    let vertices = path.vertices();
    (1..edges.len()).map(|i| Traversal::new(vertices[i], edges[i - 1], edges[i])).collect()
}

/// The set of root-to-vertex paths of a rooted tree: one path per non-root
/// vertex, in vertex-id order.
pub fn path_tree_paths(g: &Graph, tree: &RootedTree) -> Vec<Path> {
    (0..tree.vertex_count())
        .filter(|&v| v != tree.root())
        .map(|v| Path::new(g, tree.path_from_root(v)).expect("tree paths are valid walks"))
        .collect()
}
