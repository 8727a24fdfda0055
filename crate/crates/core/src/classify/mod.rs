//! Symmetry and decomposition classifiers, each reduced to exact linear
//! algebra over the expression field.

pub mod decompose;
pub mod forms;
pub mod pseudo;
pub mod torse;
pub mod weak;

use pseudosym_expr::Expr;
use serde::{Deserialize, Serialize};

use crate::linsolve::{LinearSystem, SolutionSpace};
use crate::tensor::{OneForm, Tensor};

/// Result of a classifier on a chart.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "reason")]
pub enum Outcome {
    Holds,
    Fails,
    /// The defining nonvanishing condition fails identically.
    Degenerate(String),
}

impl Outcome {
    pub fn from_bool(b: bool) -> Outcome {
        if b {
            Outcome::Holds
        } else {
            Outcome::Fails
        }
    }

    pub fn holds(&self) -> bool {
        matches!(self, Outcome::Holds)
    }
}

/// A claimed tensor identity `lhs = Σ coef_j · terms_j`.
#[derive(Clone, Debug)]
pub struct Identity {
    pub label: String,
    pub lhs: Tensor,
    pub terms: Vec<(Expr, Tensor)>,
}

impl Identity {
    pub fn new(label: impl Into<String>, lhs: Tensor, terms: Vec<(Expr, Tensor)>) -> Identity {
        Identity {
            label: label.into(),
            lhs,
            terms,
        }
    }

    /// `lhs - Σ coef_j terms_j`, exactly.
    pub fn residual(&self) -> Tensor {
        let mut r = self.lhs.clone();
        for (c, t) in &self.terms {
            if !c.is_zero() {
                r = r.add_scaled(&-c, t);
            }
        }
        r
    }

    pub fn holds(&self) -> bool {
        self.residual().is_zero()
    }
}

/// `lhs = Σ_j u_j coeffs_j` for scalar unknowns `u_j`, one equation per component.
#[derive(Clone, Debug)]
pub struct TensorEquation {
    pub names: Vec<String>,
    pub lhs: Tensor,
    pub coeffs: Vec<Tensor>,
}

/// A solved [`TensorEquation`].
#[derive(Clone, Debug)]
pub struct Solved {
    pub space: SolutionSpace,
    /// Back-substitution of every member succeeded.
    pub verified: bool,
}

impl TensorEquation {
    pub fn new(names: Vec<String>, lhs: Tensor, coeffs: Vec<Tensor>) -> TensorEquation {
        assert_eq!(names.len(), coeffs.len());
        TensorEquation { names, lhs, coeffs }
    }

    pub fn system(&self) -> LinearSystem {
        let mut sys = LinearSystem::new(self.names.iter().cloned());
        for c in 0..self.lhs.len() {
            let row: Vec<Expr> = self.coeffs.iter().map(|t| t.components()[c].clone()).collect();
            sys.add_equation(row, self.lhs.components()[c].clone());
        }
        sys
    }

    pub fn solve(&self) -> Solved {
        let sys = self.system();
        let space = sys.solve();
        let verified = sys.verify(&space);
        Solved { space, verified }
    }

    pub fn identity(&self, label: impl Into<String>, u: &[Expr]) -> Identity {
        let terms = u.iter().cloned().zip(self.coeffs.iter().cloned()).collect();
        Identity::new(label, self.lhs.clone(), terms)
    }

    /// Right-hand side with the homogeneous part only, for kernel members.
    pub fn kernel_identity(&self, label: impl Into<String>, u: &[Expr]) -> Identity {
        let zero = Tensor::zeros(self.lhs.dim(), self.lhs.order());
        let terms = u.iter().cloned().zip(self.coeffs.iter().cloned()).collect();
        Identity::new(label, zero, terms)
    }
}

/// Unknown names `prefix1 .. prefixn`.
pub fn oneform_names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// Splits a flat unknown vector into consecutive 1-forms of dimension `n`.
pub fn split_oneforms(u: &[Expr], n: usize) -> Vec<OneForm> {
    u.chunks(n).map(|c| OneForm(c.to_vec())).collect()
}
