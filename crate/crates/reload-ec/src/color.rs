//! Color sets and proper edge colorings.

use crate::graph::Graph;
use thiserror::Error;

/// Colors `1..=count`. Color `0` is reserved; the block solver uses it
/// internally for its virtual root edge and it never appears in a public
/// coloring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColorSet {
    count: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error("color set must contain at least one color")]
    EmptyColorSet,
    #[error("edges {edges:?} at vertex {vertex} share color {color}")]
    Improper { vertex: usize, edges: (usize, usize), color: usize },
    #[error("edge {edge} has color {color}, outside 1..={count}")]
    ColorOutOfRange { edge: usize, color: usize, count: usize },
    #[error("coloring covers {have} edges, graph has {expect}")]
    WrongEdgeCount { have: usize, expect: usize },
}

impl ColorSet {
    pub fn new(count: usize) -> Result<Self, ColoringError> {
        if count == 0 {
            return Err(ColoringError::EmptyColorSet);
        }
        Ok(ColorSet { count })
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn iter(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.count
    }
}

/// Total map from edge ids to colors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    colors: Vec<usize>,
}

impl EdgeColoring {
    pub fn from_vec(colors: Vec<usize>) -> Self {
        EdgeColoring { colors }
    }

    pub fn color(&self, e: usize) -> usize {
        self.colors[e]
    }

    pub(crate) fn set(&mut self, e: usize, color: usize) {
        self.colors[e] = color;
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    /// Checks the properness invariant: edges sharing a vertex have distinct
    /// colors. Reports the first violating vertex in id order.
    pub fn check_proper(&self, g: &Graph) -> Result<(), ColoringError> {
        if self.colors.len() != g.edge_count() {
            return Err(ColoringError::WrongEdgeCount { have: self.colors.len(), expect: g.edge_count() });
        }
        for v in 0..g.vertex_count() {
            let inc = g.incident(v);
            for (i, &(e, _)) in inc.iter().enumerate() {
                for &(f, _) in &inc[i + 1..] {
                    if self.colors[e] == self.colors[f] {
                        return Err(ColoringError::Improper { vertex: v, edges: (e, f), color: self.colors[e] });
                    }
                }
            }
        }
        Ok(())
    }

    /// Checks that every color is within `1..=colors.count()`.
    pub fn check_in_range(&self, colors: &ColorSet) -> Result<(), ColoringError> {
        for (e, &c) in self.colors.iter().enumerate() {
            if c < 1 || c > colors.count() {
                return Err(ColoringError::ColorOutOfRange { edge: e, color: c, count: colors.count() });
            }
        }
        Ok(())
    }

    /// Coloring with every color relabeled by `perm` (1-based).
    pub fn permuted(&self, perm: &[usize]) -> EdgeColoring {
        EdgeColoring { colors: self.colors.iter().map(|&c| perm[c - 1]).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn properness_names_the_vertex() {
        let mut g = Graph::undirected(3);
        g.add_edge(0, 1).unwrap();
        g.add_edge(1, 2).unwrap();
        let ok = EdgeColoring::from_vec(vec![1, 2]);
        assert!(ok.check_proper(&g).is_ok());
        let bad = EdgeColoring::from_vec(vec![2, 2]);
        assert_eq!(
            bad.check_proper(&g),
            Err(ColoringError::Improper { vertex: 1, edges: (0, 1), color: 2 })
        );
    }

    #[test]
    fn range_check() {
        let colors = ColorSet::new(2).unwrap();
        let c = EdgeColoring::from_vec(vec![1, 3]);
        assert_eq!(
            c.check_in_range(&colors),
            Err(ColoringError::ColorOutOfRange { edge: 1, color: 3, count: 2 })
        );
        assert!(ColorSet::new(0).is_err());
    }
}
