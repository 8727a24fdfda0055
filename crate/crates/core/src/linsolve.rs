//! Incremental Gauss-Jordan elimination over the expression field.
//!
//! Pivot columns are chosen left to right, so when a system is
//! underdetermined the free unknowns are the rightmost ones.

use std::collections::HashSet;

use pseudosym_expr::{Context, Expr};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug)]
struct Row {
    coeffs: Vec<Expr>,
    rhs: Expr,
}

/// Linear equations `Σ_j a_j u_j = b` in named unknowns.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    unknowns: Vec<String>,
    // reduced rows, each with coefficient 1 at its pivot column and 0 at other pivots
    pivots: Vec<(usize, Row)>,
    equations: Vec<Row>,
    seen: HashSet<(Vec<Expr>, Expr)>,
    inconsistent: bool,
}

impl LinearSystem {
    pub fn new<S: Into<String>>(unknowns: impl IntoIterator<Item = S>) -> Self {
        LinearSystem {
            unknowns: unknowns.into_iter().map(Into::into).collect(),
            pivots: Vec::new(),
            equations: Vec::new(),
            seen: HashSet::new(),
            inconsistent: false,
        }
    }

    pub fn unknown_count(&self) -> usize {
        self.unknowns.len()
    }

    pub fn equation_count(&self) -> usize {
        self.equations.len()
    }

    pub fn is_inconsistent(&self) -> bool {
        self.inconsistent
    }

    /// Adds `Σ coeffs_j u_j = rhs`. Trivial and repeated equations are dropped.
    pub fn add_equation(&mut self, coeffs: Vec<Expr>, rhs: Expr) {
        assert_eq!(coeffs.len(), self.unknowns.len(), "coefficient count");
        if rhs.is_zero() && coeffs.iter().all(Expr::is_zero) {
            return;
        }
        if !self.seen.insert((coeffs.clone(), rhs.clone())) {
            return;
        }
        let row = Row { coeffs, rhs };
        self.equations.push(row.clone());
        if self.inconsistent {
            return;
        }
        self.absorb(row);
    }

    fn absorb(&mut self, mut row: Row) {
        for (col, p) in &self.pivots {
            let f = row.coeffs[*col].clone();
            if f.is_zero() {
                continue;
            }
            for (j, c) in p.coeffs.iter().enumerate() {
                if !c.is_zero() {
                    row.coeffs[j] = &row.coeffs[j] - &(&f * c);
                }
            }
            if !p.rhs.is_zero() {
                row.rhs = &row.rhs - &(&f * &p.rhs);
            }
        }
        let Some(col) = row.coeffs.iter().position(|c| !c.is_zero()) else {
            if !row.rhs.is_zero() {
                self.inconsistent = true;
            }
            return;
        };
        let inv = row.coeffs[col].recip().expect("nonzero pivot");
        for c in row.coeffs.iter_mut() {
            if !c.is_zero() {
                *c = &*c * &inv;
            }
        }
        row.rhs = &row.rhs * &inv;
        for (_, p) in self.pivots.iter_mut() {
            let f = p.coeffs[col].clone();
            if f.is_zero() {
                continue;
            }
            for (j, c) in row.coeffs.iter().enumerate() {
                if !c.is_zero() {
                    p.coeffs[j] = &p.coeffs[j] - &(&f * c);
                }
            }
            if !row.rhs.is_zero() {
                p.rhs = &p.rhs - &(&f * &row.rhs);
            }
        }
        let at = self.pivots.partition_point(|(c, _)| *c < col);
        self.pivots.insert(at, (col, row));
    }

    /// The full affine solution set.
    pub fn solve(&self) -> SolutionSpace {
        let m = self.unknowns.len();
        if self.inconsistent {
            return SolutionSpace {
                unknowns: self.unknowns.clone(),
                consistent: false,
                particular: Vec::new(),
                basis: Vec::new(),
                free: Vec::new(),
            };
        }
        let mut particular = vec![Expr::zero(); m];
        let pivot_cols: Vec<usize> = self.pivots.iter().map(|(c, _)| *c).collect();
        for (col, row) in &self.pivots {
            particular[*col] = row.rhs.clone();
        }
        let free: Vec<usize> = (0..m).filter(|c| !pivot_cols.contains(c)).collect();
        let basis = free
            .iter()
            .map(|&f| {
                let mut v = vec![Expr::zero(); m];
                v[f] = Expr::one();
                for (col, row) in &self.pivots {
                    v[*col] = -&row.coeffs[f];
                }
                v
            })
            .collect();
        SolutionSpace {
            unknowns: self.unknowns.clone(),
            consistent: true,
            particular,
            basis,
            free,
        }
    }

    /// Residuals of the stored equations at `u` (homogeneous part only if `homogeneous`).
    pub fn residuals(&self, u: &[Expr], homogeneous: bool) -> impl Iterator<Item = Expr> + '_ {
        let u = u.to_vec();
        self.equations.iter().map(move |row| {
            let mut acc = if homogeneous { Expr::zero() } else { -&row.rhs };
            for (a, x) in row.coeffs.iter().zip(&u) {
                if !a.is_zero() && !x.is_zero() {
                    acc = &acc + &(a * x);
                }
            }
            acc
        })
    }

    /// Back-substitution: the particular solution and every basis vector satisfy the equations.
    pub fn verify(&self, space: &SolutionSpace) -> bool {
        if !space.consistent {
            return self.inconsistent;
        }
        self.residuals(&space.particular, false).all(|r| r.is_zero())
            && space
                .basis
                .iter()
                .all(|b| self.residuals(b, true).all(|r| r.is_zero()))
    }
}

/// Affine solution set `particular + span(basis)`.
///
/// Invariants: `consistent == false` implies `particular` and `basis` are
/// empty; `free[i]` is the unknown set to 1 in `basis[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSpace {
    pub unknowns: Vec<String>,
    pub consistent: bool,
    pub particular: Vec<Expr>,
    pub basis: Vec<Vec<Expr>>,
    pub free: Vec<usize>,
}

impl SolutionSpace {
    pub fn is_unique(&self) -> bool {
        self.consistent && self.basis.is_empty()
    }

    /// `particular + Σ t_i basis_i`.
    pub fn member(&self, t: &[Expr]) -> Vec<Expr> {
        assert_eq!(t.len(), self.basis.len());
        let mut v = self.particular.clone();
        for (ti, b) in t.iter().zip(&self.basis) {
            for (x, bj) in v.iter_mut().zip(b) {
                if !bj.is_zero() {
                    *x = &*x + &(ti * bj);
                }
            }
        }
        v
    }

    /// True iff `v` lies in the affine set.
    pub fn contains(&self, v: &[Expr]) -> bool {
        if !self.consistent || v.len() != self.unknowns.len() {
            return false;
        }
        let t: Vec<Expr> = self.free.iter().map(|&f| &v[f] - &self.particular[f]).collect();
        self.member(&t) == v
    }

    /// Each unknown as an affine function of the free unknowns.
    pub fn describe(&self, ctx: &Context) -> SpaceSummary {
        if !self.consistent {
            return SpaceSummary {
                consistent: false,
                free: Vec::new(),
                values: Vec::new(),
            };
        }
        let free: Vec<String> = self.free.iter().map(|&f| self.unknowns[f].clone()).collect();
        let values = self
            .unknowns
            .iter()
            .enumerate()
            .map(|(j, name)| {
                let mut parts = Vec::new();
                if !self.particular[j].is_zero() {
                    parts.push(self.particular[j].render(ctx));
                }
                for (b, fname) in self.basis.iter().zip(&free) {
                    let c = &b[j];
                    if c.is_zero() {
                        continue;
                    }
                    if c.is_one() {
                        parts.push(fname.clone());
                    } else {
                        parts.push(format!("({}) * {fname}", c.render(ctx)));
                    }
                }
                let value = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
                (name.clone(), value)
            })
            .collect();
        SpaceSummary {
            consistent: true,
            free,
            values,
        }
    }
}

/// Printable view of a [`SolutionSpace`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceSummary {
    pub consistent: bool,
    pub free: Vec<String>,
    pub values: Vec<(String, String)>,
}
