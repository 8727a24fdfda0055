//! Torseforming vector fields and the identity
//! `R·T = 2dα ⊗ T + Q(J,T)`, `J = π⊗π - ∇π`, for type-III weak symmetry.

use pseudosym_expr::Expr;

use crate::algebra::{dot_action, tachibana};
use crate::chart::Chart;
use crate::geometry::{
    christoffel, covariant_derivative_oneform, exterior_derivative_oneform, lower, ricci, riemann,
};
use crate::tensor::{OneForm, Tensor};

use super::pseudo::{solve_proportionality, Proportionality};
use super::{Identity, TensorEquation};

/// `J = π⊗π - ∇π` with `J[h,i] = π_h π_i - ∇_h π_i`.
pub fn compute_j(chart: &Chart, pi: &OneForm) -> Tensor {
    let p = pi.as_tensor();
    p.outer(&p).sub(&covariant_derivative_oneform(chart, pi))
}

/// `(dα ⊗ T)[I, h, l] = dα_hl T_I`, in the output layout of `B·T`.
pub fn two_form_times(dalpha: &Tensor, t: &Tensor) -> Tensor {
    t.outer(dalpha)
}

/// `R·T - 2dα⊗T - Q(J,T)`; zero whenever `∇_h T_I = α_h T_I + Σ_m π_{i_m} T_{I[m→h]}`.
pub fn theorem41_residual(chart: &Chart, t: &Tensor, alpha: &OneForm, pi: &OneForm) -> Tensor {
    theorem41_identity(chart, t, alpha, pi).residual()
}

pub fn theorem41_identity(chart: &Chart, t: &Tensor, alpha: &OneForm, pi: &OneForm) -> Identity {
    let rt = dot_action(chart, riemann(chart), t);
    let da = two_form_times(&exterior_derivative_oneform(chart, alpha), t);
    let q = tachibana(&compute_j(chart, pi), t);
    Identity::new("R·T = 2dα⊗T + Q(J,T)", rt, vec![(Expr::int(2), da), (Expr::one(), q)])
}

/// `∇_i V^k` for a vector field, stored at `[i, k]`.
pub fn covariant_derivative_vector(chart: &Chart, v: &OneForm) -> Tensor {
    let n = chart.dim();
    let gam = christoffel(chart);
    Tensor::from_fn(n, 2, |ix| {
        let (i, k) = (ix[0], ix[1]);
        let mut acc = v[k].differentiate(i);
        for j in 0..n {
            let c = gam.get(&[k, i, j]);
            if !c.is_zero() && !v[j].is_zero() {
                acc = &acc + &(c * &v[j]);
            }
        }
        acc
    })
}

/// A solution of `∇_X V = aX + τ(X)V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Torseforming {
    pub a: Expr,
    pub tau: OneForm,
    /// `a = 0`.
    pub recurrent: bool,
    /// `dτ = 0`; over the expression field this is also local concircularity (`τ = dh`).
    pub proper_concircular: bool,
    /// Concircular with `da = a τ`, i.e. `a` a constant multiple of `e^h`.
    pub convergent: bool,
    /// With `ω = g(·, V)` closed, the scalar `b` in `τ = b ω`.
    pub b: Option<Expr>,
}

/// Solves `∇_i V^k = a δ_i^k + τ_i V^k` for `(a, τ)`; `None` if `V` is not torseforming.
///
/// When `V` is not determined up to the split (e.g. `V` parallel), the solver's
/// rightmost-free convention fixes the free unknowns at zero.
pub fn check_torseforming(chart: &Chart, v: &OneForm) -> Option<Torseforming> {
    assert!(!v.is_zero(), "torseforming check needs a nonzero field");
    let n = chart.dim();
    let dv = covariant_derivative_vector(chart, v);
    let mut names = vec!["a".to_string()];
    names.extend((0..n).map(|p| format!("tau{}", p + 1)));
    let mut coeffs = vec![Tensor::from_fn(n, 2, |ix| {
        if ix[0] == ix[1] {
            Expr::one()
        } else {
            Expr::zero()
        }
    })];
    coeffs.extend((0..n).map(|p| {
        Tensor::from_fn(n, 2, |ix| if ix[0] == p { v[ix[1]].clone() } else { Expr::zero() })
    }));
    let solved = TensorEquation::new(names, dv, coeffs).solve();
    if !solved.space.consistent {
        return None;
    }
    let u = &solved.space.particular;
    let a = u[0].clone();
    let tau = OneForm(u[1..].to_vec());
    let proper_concircular = exterior_derivative_oneform(chart, &tau).is_zero();
    let convergent = proper_concircular
        && (0..n).all(|i| a.differentiate(i) == &a * &tau[i]);
    let omega = lower(chart, v);
    let b = if exterior_derivative_oneform(chart, &omega).is_zero() {
        let p = (0..n).find(|&i| !omega[i].is_zero()).expect("nonzero field");
        let b = &tau[p] / &omega[p];
        (omega.scale(&b) == tau).then_some(b)
    } else {
        None
    };
    Some(Torseforming {
        recurrent: a.is_zero(),
        a,
        tau,
        proper_concircular,
        convergent,
        b,
    })
}

/// The sufficient conditions attached to a Chaki 1-form `φ` with `H = φ⊗φ - ∇φ`.
#[derive(Clone, Debug)]
pub struct ChakiConditions {
    pub phi_closed: bool,
    pub h: Tensor,
    /// `H = L g`.
    pub h_to_g: Proportionality,
    /// `H = L S`.
    pub h_to_s: Proportionality,
    /// Torseforming data of the vector field dual to `φ`, if any.
    pub torseforming: Option<Torseforming>,
}

impl ChakiConditions {
    /// Closed `φ` and `H = 0`: the sufficient condition for semisymmetry.
    pub fn implies_semisymmetric(&self) -> bool {
        self.phi_closed && self.h.is_zero()
    }

    /// Closed `φ` and `H ∝ g`: sufficient for Deszcz pseudosymmetry.
    pub fn implies_deszcz(&self) -> bool {
        self.phi_closed && self.h_to_g.factor().is_some()
    }

    /// Closed `φ` and `H ∝ S`: sufficient for Ricci-generalized pseudosymmetry.
    pub fn implies_ricci_generalized(&self) -> bool {
        self.phi_closed && self.h_to_s.factor().is_some()
    }

    /// The dual field is torseforming with `b = 1`.
    pub fn torseforming_b_one(&self) -> bool {
        self.torseforming
            .as_ref()
            .and_then(|t| t.b.as_ref())
            .is_some_and(Expr::is_one)
    }
}

pub fn chaki_conditions(chart: &Chart, phi: &OneForm) -> ChakiConditions {
    let h = compute_j(chart, phi);
    let v = crate::geometry::raise(chart, phi);
    ChakiConditions {
        phi_closed: exterior_derivative_oneform(chart, phi).is_zero(),
        h_to_g: solve_proportionality(&h, chart.metric()),
        h_to_s: solve_proportionality(&h, ricci(chart)),
        torseforming: (!v.is_zero()).then(|| check_torseforming(chart, &v)).flatten(),
        h,
    }
}
