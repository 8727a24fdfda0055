//! Recurrence of curvature 2-forms and of the Ricci-type 1-form.
//!
//! For a (0,4) tensor `T` with `D = ∇T` in derivative-first layout, the
//! cyclic sum is `D[h,i,j,k,l] + D[i,j,h,k,l] + D[j,h,i,k,l]`.

use pseudosym_expr::Expr;

use crate::algebra::second_bianchi_sum;
use crate::chart::Chart;
use crate::geometry::covariant_derivative;
use crate::linsolve::SolutionSpace;
use crate::tensor::{OneForm, Tensor};

use super::{oneform_names, Identity, Outcome, Solved, TensorEquation};

/// Coefficient of `α_p` in `α_h T_ijkl + α_i T_jhkl + α_j T_hikl`, stored `[h,i,j,k,l]`.
fn cyclic_coeff(t: &Tensor, p: usize) -> Tensor {
    Tensor::from_fn(t.dim(), 5, |ix| {
        let (h, i, j, k, l) = (ix[0], ix[1], ix[2], ix[3], ix[4]);
        let mut v = Expr::zero();
        if h == p {
            v = &v + t.get(&[i, j, k, l]);
        }
        if i == p {
            v = &v + t.get(&[j, h, k, l]);
        }
        if j == p {
            v = &v + t.get(&[h, i, k, l]);
        }
        v
    })
}

/// Verdicts for the three conditions on a (0,4) tensor.
#[derive(Clone, Debug)]
pub struct TwoFormRecurrence {
    /// Cyclic sum of `∇T` vanishes.
    pub b1: bool,
    /// Nonzero solutions `α` of the homogeneous cyclic system.
    pub b2: Solved,
    /// Solutions `α` of the inhomogeneous cyclic system.
    pub b3: Solved,
    pub equation: TensorEquation,
}

impl TwoFormRecurrence {
    pub fn b1_outcome(&self) -> Outcome {
        Outcome::from_bool(self.b1)
    }

    pub fn b2_outcome(&self) -> Outcome {
        Outcome::from_bool(!self.b2.space.basis.is_empty())
    }

    pub fn b3_outcome(&self) -> Outcome {
        Outcome::from_bool(self.b3.space.consistent)
    }

    pub fn b3_alpha(&self) -> Option<OneForm> {
        self.b3
            .space
            .consistent
            .then(|| OneForm(self.b3.space.particular.clone()))
    }

    pub fn b3_identity(&self, label: impl Into<String>) -> Option<Identity> {
        let s = &self.b3.space;
        s.consistent.then(|| self.equation.identity(label, &s.particular))
    }
}

pub fn check_two_form_recurrence(chart: &Chart, t: &Tensor) -> TwoFormRecurrence {
    assert_eq!(t.order(), 4);
    let n = t.dim();
    let cyc = second_bianchi_sum(&covariant_derivative(chart, t));
    let b1 = cyc.is_zero();
    let coeffs: Vec<Tensor> = (0..n).map(|p| cyclic_coeff(t, p)).collect();
    let names = oneform_names("alpha", n);
    let homogeneous = TensorEquation::new(names.clone(), Tensor::zeros(n, 5), coeffs.clone());
    let equation = TensorEquation::new(names, cyc, coeffs);
    TwoFormRecurrence {
        b1,
        b2: homogeneous.solve(),
        b3: equation.solve(),
        equation,
    }
}

/// `∇_i Z_kl - ∇_k Z_il = α_i Z_kl - α_k Z_il`.
#[derive(Clone, Debug)]
pub struct OneFormRecurrence {
    pub solved: Solved,
    pub equation: TensorEquation,
}

impl OneFormRecurrence {
    pub fn outcome(&self) -> Outcome {
        Outcome::from_bool(self.solved.space.consistent)
    }

    pub fn space(&self) -> &SolutionSpace {
        &self.solved.space
    }

    pub fn alpha(&self) -> Option<OneForm> {
        self.space().consistent.then(|| OneForm(self.space().particular.clone()))
    }

    pub fn identity(&self, label: impl Into<String>) -> Option<Identity> {
        let s = self.space();
        s.consistent.then(|| self.equation.identity(label, &s.particular))
    }
}

pub fn check_one_form_recurrence(chart: &Chart, z: &Tensor) -> OneFormRecurrence {
    assert_eq!(z.order(), 2);
    let n = z.dim();
    let dz = covariant_derivative(chart, z);
    let lhs = dz.sub(&dz.permuted(&[1, 0, 2]));
    let coeffs = (0..n)
        .map(|p| {
            Tensor::from_fn(n, 3, |ix| {
                let (i, k, l) = (ix[0], ix[1], ix[2]);
                let mut v = Expr::zero();
                if i == p {
                    v = &v + z.get(&[k, l]);
                }
                if k == p {
                    v = &v - z.get(&[i, l]);
                }
                v
            })
        })
        .collect();
    let equation = TensorEquation::new(oneform_names("alpha", n), lhs, coeffs);
    OneFormRecurrence {
        solved: equation.solve(),
        equation,
    }
}
