//! Coordinate charts carrying a metric and its cached curvature.

use std::sync::OnceLock;

use pseudosym_expr::{parse_expression, Context, Expr, ExprError};
use thiserror::Error;

use crate::linalg::{determinant, inverse};
use crate::tensor::Tensor;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChartError {
    #[error("dimension {0} is below 3")]
    DimensionTooSmall(usize),
    #[error("metric matrix must be {expected}x{expected}")]
    Shape { expected: usize },
    #[error("metric is not symmetric at ({0},{1})")]
    Asymmetric(usize, usize),
    #[error("metric is identically singular")]
    Singular,
    #[error("metric entry ({row},{col}): {source}")]
    Parse {
        row: usize,
        col: usize,
        #[source]
        source: ExprError,
    },
}

/// A metric on an open set of `R^n`.
///
/// Invariants: `g` symmetric, `det != 0`, `g_inv * g = I` componentwise.
#[derive(Debug)]
pub struct Chart {
    name: String,
    ctx: Context,
    g: Tensor,
    g_inv: Tensor,
    det: Expr,
    pub(crate) cache: Cache,
}

#[derive(Debug, Default)]
pub(crate) struct Cache {
    pub christoffel: OnceLock<Tensor>,
    pub riemann_up: OnceLock<Tensor>,
    pub riemann: OnceLock<Tensor>,
    pub ricci: OnceLock<Tensor>,
    pub scalar: OnceLock<Expr>,
    pub ricci_square: OnceLock<Tensor>,
}

impl Chart {
    /// Builds from a full component matrix.
    pub fn new(name: &str, ctx: Context, g: Vec<Vec<Expr>>) -> Result<Chart, ChartError> {
        let n = ctx.dim();
        if n < 3 {
            return Err(ChartError::DimensionTooSmall(n));
        }
        if g.len() != n || g.iter().any(|row| row.len() != n) {
            return Err(ChartError::Shape { expected: n });
        }
        for i in 0..n {
            for j in 0..i {
                if g[i][j] != g[j][i] {
                    return Err(ChartError::Asymmetric(i, j));
                }
            }
        }
        let det = determinant(&g);
        if det.is_zero() {
            return Err(ChartError::Singular);
        }
        let inv = inverse(&g).ok_or(ChartError::Singular)?;
        let g = Tensor::from_components(n, 2, g.into_iter().flatten().collect());
        let g_inv = Tensor::from_components(n, 2, inv.into_iter().flatten().collect());
        Ok(Chart {
            name: name.to_string(),
            ctx,
            g,
            g_inv,
            det,
            cache: Cache::default(),
        })
    }

    /// Builds from the lower triangle (row `i` has `i + 1` entries) or a full matrix of expression strings.
    pub fn from_strings<S: AsRef<str>>(
        name: &str,
        ctx: Context,
        rows: &[Vec<S>],
    ) -> Result<Chart, ChartError> {
        let n = ctx.dim();
        if rows.len() != n {
            return Err(ChartError::Shape { expected: n });
        }
        let lower = rows.iter().enumerate().all(|(i, r)| r.len() == i + 1);
        let full = rows.iter().all(|r| r.len() == n);
        if !lower && !full {
            return Err(ChartError::Shape { expected: n });
        }
        let mut g = vec![vec![Expr::zero(); n]; n];
        for (i, row) in rows.iter().enumerate() {
            for (j, src) in row.iter().enumerate() {
                let e = parse_expression(src.as_ref(), &ctx)
                    .map_err(|source| ChartError::Parse { row: i, col: j, source })?;
                g[i][j] = e.clone();
                if lower {
                    g[j][i] = e;
                }
            }
        }
        Chart::new(name, ctx, g)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.ctx.dim()
    }

    /// Metric components `g_ij`.
    pub fn metric(&self) -> &Tensor {
        &self.g
    }

    /// Inverse metric components `g^ij`.
    pub fn inverse_metric(&self) -> &Tensor {
        &self.g_inv
    }

    pub fn determinant(&self) -> &Expr {
        &self.det
    }

    pub fn g(&self, i: usize, j: usize) -> &Expr {
        self.g.get(&[i, j])
    }

    pub fn g_inv(&self, i: usize, j: usize) -> &Expr {
        self.g_inv.get(&[i, j])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_chart() {
        let ctx = Context::numbered(4);
        let rows: Vec<Vec<&str>> = (0..4)
            .map(|i| (0..=i).map(|j| if i == j { "1" } else { "0" }).collect())
            .collect();
        let c = Chart::from_strings("flat4", ctx, &rows).unwrap();
        assert!(c.determinant().is_one());
        assert_eq!(c.inverse_metric(), c.metric());
    }

    #[test]
    fn conformal_factor_inverse() {
        let ctx = Context::numbered(4);
        let rows: Vec<Vec<&str>> = (0..4)
            .map(|i| (0..=i).map(|j| if i == j { "x1" } else { "0" }).collect())
            .collect();
        let c = Chart::from_strings("c", ctx, &rows).unwrap();
        assert_eq!(c.determinant(), &Expr::coord(0).powi(4));
        assert_eq!(c.g_inv(2, 2), &Expr::coord(0).powi(-1));
        assert!(c.g_inv(0, 1).is_zero());
    }

    #[test]
    fn rejects_bad_input() {
        let ctx = Context::numbered(3);
        let sing = vec![vec!["1"], vec!["1", "1"], vec!["0", "0", "1"]];
        assert_eq!(Chart::from_strings("s", ctx.clone(), &sing).unwrap_err(), ChartError::Singular);
        let asym = vec![vec!["1", "x1", "0"], vec!["0", "1", "0"], vec!["0", "0", "1"]];
        assert_eq!(
            Chart::from_strings("a", ctx.clone(), &asym).unwrap_err(),
            ChartError::Asymmetric(1, 0)
        );
        let small = Context::numbered(2);
        let rows = vec![vec!["1"], vec!["0", "1"]];
        assert_eq!(
            Chart::from_strings("t", small, &rows).unwrap_err(),
            ChartError::DimensionTooSmall(2)
        );
        let bad = vec![vec!["1"], vec!["0", "1"], vec!["0", "0", "y"]];
        assert!(matches!(Chart::from_strings("p", ctx, &bad), Err(ChartError::Parse { row: 2, col: 2, .. })));
    }
}
