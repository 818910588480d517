//! Exact cost arithmetic and the traversal cost matrix.
//!
//! All objective values are exact rationals so that "solver optimum equals
//! oracle optimum" checks can use plain equality. The hot enumeration loops
//! avoid per-term rational reduction by working on a scaled integer view of
//! the matrix (see [`ScaledCosts`]).

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use thiserror::Error;

/// Exact nonnegative cost value. `i128` numerators/denominators are plenty
/// for the instance sizes this crate targets: inputs are short decimal
/// literals and every solver sums at most a few million terms.
pub type Cost = Ratio<i128>;

/// Shorthand for an integer cost.
pub fn cost(n: i128) -> Cost {
    Cost::from_integer(n)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CostMatrixError {
    #[error("cost matrix must have at least one color")]
    Empty,
    #[error("cost matrix row {row} has {have} entries, expected {expect}")]
    RowLength { row: usize, have: usize, expect: usize },
    #[error("cost matrix entry ({i},{j}) is negative")]
    Negative { i: usize, j: usize },
    #[error("cost matrix diagonal entry ({i},{i}) must be zero")]
    NonzeroDiagonal { i: usize },
    #[error("cost matrix is asymmetric at ({i},{j})")]
    Asymmetric { i: usize, j: usize },
    #[error("cost matrix denominators are too large to put over a common denominator")]
    DenominatorOverflow,
}

/// Symmetric nonnegative traversal cost matrix over colors `1..=k`, with a
/// zero diagonal. Entry `(i, j)` is the cost of traversing a vertex via two
/// consecutive edges colored `i` and `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostMatrix {
    colors: usize,
    entries: Vec<Cost>,
}

impl CostMatrix {
    /// All-zero matrix over `colors` colors.
    pub fn zero(colors: usize) -> Self {
        CostMatrix { colors, entries: vec![Cost::zero(); colors * colors] }
    }

    /// Constant `c` off the diagonal, zero on it.
    pub fn uniform(colors: usize, c: Cost) -> Self {
        Self::from_fn(colors, |i, j| if i == j { Cost::zero() } else { c })
            .expect("uniform matrix is always valid")
    }

    /// Builds from `f(i, j)` for colors `1..=k`; `f` is only consulted for
    /// `i <= j` and mirrored, so symmetry holds by construction.
    pub fn from_fn(colors: usize, f: impl Fn(usize, usize) -> Cost) -> Result<Self, CostMatrixError> {
        if colors == 0 {
            return Err(CostMatrixError::Empty);
        }
        let mut entries = vec![Cost::zero(); colors * colors];
        for i in 1..=colors {
            for j in i..=colors {
                let c = f(i, j);
                if c.is_negative() {
                    return Err(CostMatrixError::Negative { i, j });
                }
                if i == j && !c.is_zero() {
                    return Err(CostMatrixError::NonzeroDiagonal { i });
                }
                entries[(i - 1) * colors + (j - 1)] = c;
                entries[(j - 1) * colors + (i - 1)] = c;
            }
        }
        Ok(CostMatrix { colors, entries })
    }

    /// Builds from full `k x k` rows, validating symmetry and the diagonal.
    pub fn from_full(rows: &[Vec<Cost>]) -> Result<Self, CostMatrixError> {
        let colors = rows.len();
        if colors == 0 {
            return Err(CostMatrixError::Empty);
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != colors {
                return Err(CostMatrixError::RowLength { row: i + 1, have: row.len(), expect: colors });
            }
        }
        for i in 1..=colors {
            for j in 1..=colors {
                if rows[i - 1][j - 1] != rows[j - 1][i - 1] {
                    return Err(CostMatrixError::Asymmetric { i, j });
                }
            }
        }
        Self::from_fn(colors, |i, j| rows[i - 1][j - 1])
    }

    /// Builds from the strict lower triangle: `rows[i]` holds the entries
    /// `tc(i+2, 1), ..., tc(i+2, i+1)` for colors `2..=k`.
    pub fn from_lower(colors: usize, rows: &[Vec<Cost>]) -> Result<Self, CostMatrixError> {
        if colors == 0 {
            return Err(CostMatrixError::Empty);
        }
        if rows.len() + 1 != colors {
            return Err(CostMatrixError::RowLength { row: rows.len(), have: rows.len(), expect: colors - 1 });
        }
        for (idx, row) in rows.iter().enumerate() {
            if row.len() != idx + 1 {
                return Err(CostMatrixError::RowLength { row: idx + 2, have: row.len(), expect: idx + 1 });
            }
        }
        Self::from_fn(colors, |i, j| {
            // from_fn consults i <= j; the strict lower triangle stores (j, i).
            if i == j {
                Cost::zero()
            } else {
                rows[j - 2][i - 1]
            }
        })
    }

    pub fn colors(&self) -> usize {
        self.colors
    }

    /// Traversal cost of the (unordered) color pair, colors are `1..=k`.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Cost {
        debug_assert!(i >= 1 && i <= self.colors && j >= 1 && j <= self.colors);
        &self.entries[(i - 1) * self.colors + (j - 1)]
    }

    /// Ratio of the largest entry to the smallest positive entry; `None`
    /// when every entry is zero.
    pub fn kappa(&self) -> Option<Cost> {
        let mut max: Option<&Cost> = None;
        let mut min_pos: Option<&Cost> = None;
        for e in &self.entries {
            if e.is_zero() {
                continue;
            }
            max = Some(match max {
                Some(m) if m >= e => m,
                _ => e,
            });
            min_pos = Some(match min_pos {
                Some(m) if m <= e => m,
                _ => e,
            });
        }
        Some(max? / min_pos?)
    }

    /// Matrix with colors relabeled by `perm` (1-based, `perm[i-1]` is the
    /// new name of color `i`). Used by the relabeling-invariance tests.
    pub fn permuted(&self, perm: &[usize]) -> CostMatrix {
        assert_eq!(perm.len(), self.colors);
        let mut out = CostMatrix::zero(self.colors);
        for i in 1..=self.colors {
            for j in 1..=self.colors {
                let c = self.get(i, j).clone();
                out.entries[(perm[i - 1] - 1) * self.colors + (perm[j - 1] - 1)] = c;
            }
        }
        out
    }
}

/// Integer view of a [`CostMatrix`]: every entry as `numerator / den` for a
/// single common denominator. Enumeration loops sum plain `i128`s and convert
/// back to [`Cost`] once at the end.
#[derive(Debug, Clone)]
pub(crate) struct ScaledCosts {
    den: i128,
    colors: usize,
    num: Vec<i128>,
}

impl ScaledCosts {
    pub fn new(m: &CostMatrix) -> Result<Self, CostMatrixError> {
        let mut den: i128 = 1;
        for e in &m.entries {
            den = den
                .checked_mul(e.denom() / den.gcd(e.denom()))
                .ok_or(CostMatrixError::DenominatorOverflow)?;
        }
        let mut num = Vec::with_capacity(m.entries.len());
        for e in &m.entries {
            let scaled = e
                .numer()
                .checked_mul(den / e.denom())
                .ok_or(CostMatrixError::DenominatorOverflow)?;
            num.push(scaled);
        }
        Ok(ScaledCosts { den, colors: m.colors, num })
    }

    /// Scaled cost of a color pair; color `0` is the block solver's virtual
    /// color and always costs zero.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i128 {
        if i == 0 || j == 0 {
            return 0;
        }
        self.num[(i - 1) * self.colors + (j - 1)]
    }

    #[inline]
    pub fn to_cost(&self, total: i128) -> Cost {
        Cost::new(total, self.den)
    }
}

/// Parses a cost literal: an integer `p`, a fraction `p/q`, or a decimal
/// `a.b` (promoted exactly, e.g. `0.25` becomes `1/4`).
pub fn parse_cost(s: &str) -> Result<Cost, String> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: i128 = p.trim().parse().map_err(|_| format!("bad numerator in {s:?}"))?;
        let q: i128 = q.trim().parse().map_err(|_| format!("bad denominator in {s:?}"))?;
        if q == 0 {
            return Err(format!("zero denominator in {s:?}"));
        }
        return Ok(Cost::new(p, q));
    }
    if let Some((a, b)) = s.split_once('.') {
        if b.len() > 24 {
            return Err(format!("too many decimal digits in {s:?}"));
        }
        let negative = a.starts_with('-');
        let a: i128 = if a.is_empty() || a == "-" {
            0
        } else {
            a.parse().map_err(|_| format!("bad decimal in {s:?}"))?
        };
        let frac: i128 = if b.is_empty() {
            0
        } else {
            b.parse().map_err(|_| format!("bad decimal in {s:?}"))?
        };
        let scale = 10i128.pow(b.len() as u32);
        let whole = a.unsigned_abs() as i128 * scale + frac;
        let signed = if negative { -whole } else { whole };
        return Ok(Cost::new(signed, scale));
    }
    let p: i128 = s.parse().map_err(|_| format!("bad cost literal {s:?}"))?;
    Ok(Cost::from_integer(p))
}

/// Renders a cost as `p` or `p/q`.
pub fn render_cost(c: &Cost) -> String {
    if *c.denom() == 1 {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}
