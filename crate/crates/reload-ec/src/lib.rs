//! Exact solvers for minimum reload and changeover cost edge coloring.
//!
//! Given a set of paths in a graph and a symmetric traversal cost matrix
//! over a color set, the coloring problems ask for a proper edge coloring
//! minimizing the reload cost (every traversal occurrence counts) or the
//! changeover cost (each distinct traversal counts once). The path-tree
//! problems additionally choose a rooted spanning tree whose root-to-vertex
//! paths are the path set.
//!
//! The crate provides polynomial-time exact solvers for the tractable cases
//! (trees via dynamic programming, single-source instances via minimum-cost
//! assignment, graphs with sparse blocks via a block-tree DP), brute-force
//! oracles for verification, and generators for the hardness-gadget
//! instance families.
//!
//! ```
//! use reload_ec::{cost, CostMatrix, ColorSet, Graph, Path, Objective};
//! use reload_ec::tree_dp::{solve_tree, TreeDpBudget};
//!
//! // A path a-b-c-d covered by one walk, three colors.
//! let mut g = Graph::undirected(4);
//! for v in 1..4 { g.add_edge(v - 1, v).unwrap(); }
//! let paths = vec![Path::new(&g, vec![0, 1, 2]).unwrap()];
//! let tc = CostMatrix::from_lower(3, &[vec![cost(5)], vec![cost(1), cost(1)]]).unwrap();
//! let colors = ColorSet::new(3).unwrap();
//! let (value, coloring) = solve_tree(
//!     &g, &paths, &colors, &tc, Objective::Changeover, &TreeDpBudget::default(),
//! ).unwrap();
//! assert_eq!(value, cost(2));
//! assert!(coloring.check_proper(&g).is_ok());
//! ```

pub mod assignment;
pub mod blocks;
pub mod color;
pub mod cost;
pub mod dispatch;
pub mod eval;
pub mod format;
pub mod generators;
pub mod graph;
pub mod instance;
pub mod oracle;
pub mod path;
pub mod solve;
pub mod tree_dp;

pub use color::{ColorSet, ColoringError, EdgeColoring};
pub use cost::{cost, parse_cost, render_cost, Cost, CostMatrix, CostMatrixError};
pub use eval::{changeover_cost, cost_within_star, objective_cost, reload_cost, Objective};
pub use graph::{Graph, GraphError, RootedTree};
pub use instance::{validate_instance, Instance, ProblemKind, Violation};
pub use path::{path_tree_paths, traversals_of_path, Path, PathError, Traversal};
