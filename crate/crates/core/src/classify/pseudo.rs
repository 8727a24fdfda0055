//! Semisymmetry and Deszcz-type proportionality `B·T = L Q(W,T)`.

use pseudosym_expr::Expr;

use crate::algebra::{dot_action, tachibana};
use crate::chart::Chart;
use crate::geometry::riemann;
use crate::tensor::Tensor;

use super::Identity;

/// `R·T = 0`.
pub fn check_semisymmetric(chart: &Chart, t: &Tensor) -> bool {
    dot_action(chart, riemann(chart), t).is_zero()
}

/// Outcome of `lhs = L rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Proportionality {
    /// Both sides vanish identically.
    Degenerate,
    Factor(Expr),
    Independent,
}

impl Proportionality {
    pub fn factor(&self) -> Option<&Expr> {
        match self {
            Proportionality::Factor(l) => Some(l),
            _ => None,
        }
    }
}

/// `L = lhs_c / rhs_c` at the first nonzero `rhs_c`, then checked on every component.
pub fn solve_proportionality(lhs: &Tensor, rhs: &Tensor) -> Proportionality {
    assert_eq!((lhs.dim(), lhs.order()), (rhs.dim(), rhs.order()), "shape mismatch");
    let Some(pivot) = rhs.components().iter().position(|c| !c.is_zero()) else {
        return if lhs.is_zero() {
            Proportionality::Degenerate
        } else {
            Proportionality::Independent
        };
    };
    let l = &lhs.components()[pivot] / &rhs.components()[pivot];
    let all = lhs
        .components()
        .iter()
        .zip(rhs.components())
        .all(|(a, b)| *a == &l * b);
    if all {
        Proportionality::Factor(l)
    } else {
        Proportionality::Independent
    }
}

/// `B·T` against `Q(W,T)`.
#[derive(Clone, Debug)]
pub struct DeszczResult {
    pub result: Proportionality,
    pub lhs: Tensor,
    pub rhs: Tensor,
}

impl DeszczResult {
    pub fn identity(&self, label: impl Into<String>) -> Option<Identity> {
        let l = self.result.factor()?;
        Some(Identity::new(label, self.lhs.clone(), vec![(l.clone(), self.rhs.clone())]))
    }
}

/// Solves `B·T = L Q(W,T)` with `B` the acting (0,4) tensor.
pub fn classify_deszcz(chart: &Chart, acting: &Tensor, t: &Tensor, w: &Tensor) -> DeszczResult {
    let lhs = dot_action(chart, acting, t);
    let rhs = tachibana(w, t);
    DeszczResult {
        result: solve_proportionality(&lhs, &rhs),
        lhs,
        rhs,
    }
}
