//! Weak symmetry, Chaki pseudosymmetry and recurrence: `∇T` expressed
//! through 1-forms acting on `T`. All equations use the derivative-first
//! layout `[h, i_1..i_k]` of [`covariant_derivative`].

use pseudosym_expr::Expr;
use thiserror::Error;

use crate::algebra::check_second_bianchi;
use crate::chart::Chart;
use crate::geometry::{covariant_derivative, generic_rank};
use crate::linsolve::SolutionSpace;
use crate::tensor::{Index, OneForm, Tensor};

use super::{oneform_names, split_oneforms, Identity, Outcome, Solved, TensorEquation};

/// `C[h, I] = δ_{hp} T_I`: coefficient of `α_p` in `α ⊗ T`.
fn alpha_coeff(t: &Tensor, p: usize) -> Tensor {
    Tensor::from_fn(t.dim(), t.order() + 1, |ix| {
        if ix[0] == p {
            t.get(&ix[1..]).clone()
        } else {
            Expr::zero()
        }
    })
}

/// `C[h, I] = δ_{i_m p} T_{I[m→h]}`: coefficient of `π_p` acting on slot `m`.
fn slot_coeff(t: &Tensor, m: usize, p: usize) -> Tensor {
    Tensor::from_fn(t.dim(), t.order() + 1, |ix| {
        let idx = &ix[1..];
        if idx[m] != p {
            return Expr::zero();
        }
        let mut moved: Index = idx.iter().copied().collect();
        moved[m] = ix[0];
        t.get(&moved).clone()
    })
}

fn sum(tensors: impl IntoIterator<Item = Tensor>) -> Tensor {
    let mut it = tensors.into_iter();
    let first = it.next().expect("nonempty");
    it.fold(first, |acc, t| acc.add(&t))
}

/// A 1-form equation for `∇T`, solved.
#[derive(Clone, Debug)]
pub struct FormSolution {
    pub equation: TensorEquation,
    pub solved: Solved,
    /// Why the defining set is empty, if it is.
    pub degenerate: Option<String>,
    /// `∇T = ξ ⊗ T` is solvable; relevant to the sets `U_J`, `U_Q`.
    pub recurrent: bool,
}

impl FormSolution {
    pub fn outcome(&self) -> Outcome {
        match &self.degenerate {
            Some(why) => Outcome::Degenerate(why.clone()),
            None => Outcome::from_bool(self.solved.space.consistent),
        }
    }

    pub fn space(&self) -> &SolutionSpace {
        &self.solved.space
    }

    /// Particular solution split into its 1-forms.
    pub fn forms(&self) -> Vec<OneForm> {
        split_oneforms(&self.solved.space.particular, self.equation.lhs.dim())
    }

    pub fn identity(&self, label: impl Into<String>) -> Option<Identity> {
        let s = &self.solved.space;
        s.consistent.then(|| self.equation.identity(label, &s.particular))
    }
}

fn gradient_degeneracy(t: &Tensor, dt: &Tensor) -> Option<String> {
    if t.is_zero() {
        Some("T vanishes identically".to_string())
    } else if dt.is_zero() {
        Some("outside U_L: ∇T = 0".to_string())
    } else {
        None
    }
}

fn finish(equation: TensorEquation, degenerate: Option<String>, recurrent: bool) -> FormSolution {
    let solved = equation.solve();
    FormSolution {
        equation,
        solved,
        degenerate,
        recurrent,
    }
}

fn recurrence_equation(t: &Tensor, dt: &Tensor, prefix: &str) -> TensorEquation {
    let n = t.dim();
    let coeffs = (0..n).map(|p| alpha_coeff(t, p)).collect();
    TensorEquation::new(oneform_names(prefix, n), dt.clone(), coeffs)
}

/// `∇T = π ⊗ T`.
pub fn solve_recurrence(chart: &Chart, t: &Tensor) -> FormSolution {
    let dt = covariant_derivative(chart, t);
    let degenerate = gradient_degeneracy(t, &dt);
    let eq = recurrence_equation(t, &dt, "pi");
    let sol = finish(eq, degenerate, false);
    let recurrent = sol.solved.space.consistent;
    FormSolution { recurrent, ..sol }
}

fn is_recurrent(t: &Tensor, dt: &Tensor) -> bool {
    recurrence_equation(t, dt, "xi").solve().space.consistent
}

/// `∇_h T_I = 2φ_h T_I + Σ_m φ_{i_m} T_{I[m→h]}`.
pub fn solve_chaki(chart: &Chart, t: &Tensor) -> FormSolution {
    let n = t.dim();
    let k = t.order();
    let dt = covariant_derivative(chart, t);
    let degenerate = gradient_degeneracy(t, &dt);
    let coeffs = (0..n)
        .map(|p| {
            let a = alpha_coeff(t, p).scale(&Expr::int(2));
            a.add(&sum((0..k).map(|m| slot_coeff(t, m, p))))
        })
        .collect();
    finish(TensorEquation::new(oneform_names("phi", n), dt, coeffs), degenerate, false)
}

/// `∇_h T_I = α_h T_I + Σ_m π_{i_m} T_{I[m→h]}`; unknowns `(α, π)`.
pub fn solve_weak_type3(chart: &Chart, t: &Tensor) -> FormSolution {
    let n = t.dim();
    let k = t.order();
    let dt = covariant_derivative(chart, t);
    let degenerate = gradient_degeneracy(t, &dt);
    let mut names = oneform_names("alpha", n);
    names.extend(oneform_names("pi", n));
    let mut coeffs: Vec<Tensor> = (0..n).map(|p| alpha_coeff(t, p)).collect();
    coeffs.extend((0..n).map(|p| sum((0..k).map(|m| slot_coeff(t, m, p)))));
    finish(TensorEquation::new(names, dt, coeffs), degenerate, false)
}

/// `∇_h T_I = α_h T_I + Σ_m π^{(m)}_{i_m} T_{I[m→h]}` with one 1-form per slot.
/// Unknowns are ordered `α, π^{(1)}, …, π^{(k)}`, named by `prefixes`.
pub fn solve_weak_type2(chart: &Chart, t: &Tensor, prefixes: &[&str]) -> FormSolution {
    let n = t.dim();
    let k = t.order();
    assert_eq!(prefixes.len(), k + 1, "one prefix per 1-form");
    let dt = covariant_derivative(chart, t);
    let degenerate = gradient_degeneracy(t, &dt);
    let recurrent = degenerate.is_none() && is_recurrent(t, &dt);
    let names = prefixes.iter().flat_map(|p| oneform_names(p, n)).collect();
    let mut coeffs: Vec<Tensor> = (0..n).map(|p| alpha_coeff(t, p)).collect();
    for m in 0..k {
        coeffs.extend((0..n).map(|p| slot_coeff(t, m, p)));
    }
    finish(TensorEquation::new(names, dt, coeffs), degenerate, recurrent)
}

/// Weak symmetry of a (0,4) tensor with unknowns `(α, β, β̄, γ, γ̄)`.
pub fn solve_weak_symmetry_04(chart: &Chart, t: &Tensor) -> FormSolution {
    assert_eq!(t.order(), 4);
    solve_weak_type2(chart, t, &["alpha", "beta", "betabar", "gamma", "gammabar"])
}

fn swap_slots(t: &Tensor, i: usize, j: usize) -> Tensor {
    let mut perm: Vec<usize> = (0..t.order()).collect();
    perm.swap(i, j);
    t.permuted(&perm)
}

/// Slot pairs in which `t` is skew.
pub fn skew_pairs(t: &Tensor) -> Vec<(usize, usize)> {
    let k = t.order();
    let mut out = Vec::new();
    if t.is_zero() {
        return out;
    }
    for i in 0..k {
        for j in i + 1..k {
            if t.add(&swap_slots(t, i, j)).is_zero() {
                out.push((i, j));
            }
        }
    }
    out
}

fn form(u: &[Expr], n: usize, which: usize) -> &[Expr] {
    &u[which * n..(which + 1) * n]
}

/// Predicate on the `(δ, η, λ)` parts of one solution.
type FormPredicate<'a> = &'a dyn Fn(&[Expr], &[Expr], &[Expr]) -> bool;

fn members(space: &SolutionSpace) -> impl Iterator<Item = &Vec<Expr>> {
    std::iter::once(&space.particular).chain(space.basis.iter())
}

/// For every skew pair `(i, j)` of `T`, whether `π^{(i)} = π^{(j)}` on the whole solution set.
pub fn skew_slot_forms_agree(sol: &FormSolution, t: &Tensor) -> Vec<((usize, usize), bool)> {
    let n = t.dim();
    let space = sol.space();
    skew_pairs(t)
        .into_iter()
        .map(|(i, j)| {
            let ok = !space.consistent
                || members(space).all(|u| form(u, n, i + 1) == form(u, n, j + 1));
            ((i, j), ok)
        })
        .collect()
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NormalizeError {
    #[error("solution set is empty")]
    Inconsistent,
    #[error("normalized representative `{0}` does not satisfy the equation")]
    Verification(&'static str),
}

/// Normalized images of the particular solution (first) and each basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    /// `(α, σ, σ, σ, σ)` with `σ = (β + γ)/2`.
    pub sigma: Vec<Vec<Expr>>,
    /// `(2ε, ε, ε, ε, ε)` with `ε = (α + 2σ)/4`, for proper tensors only.
    pub chaki: Option<Vec<Vec<Expr>>>,
}

impl Normalized {
    /// `ε` of the particular solution.
    pub fn epsilon(&self) -> Option<OneForm> {
        let v = &self.chaki.as_ref()?[0];
        let n = v.len() / 5;
        Some(OneForm(v[n..2 * n].to_vec()))
    }
}

fn check(eq: &TensorEquation, v: &[Expr], homogeneous: bool) -> bool {
    let id = if homogeneous {
        eq.kernel_identity("", v)
    } else {
        eq.identity("", v)
    };
    id.holds()
}

/// Reduces a weak-symmetry solution set of a generalized curvature tensor to
/// its `σ` and, when `proper`, Chaki representatives; each is re-verified.
pub fn normalize_weak_solution(sol: &FormSolution, proper: bool) -> Result<Normalized, NormalizeError> {
    let space = sol.space();
    if !space.consistent {
        return Err(NormalizeError::Inconsistent);
    }
    let n = sol.equation.lhs.dim();
    let half = Expr::ratio(1, 2);
    let quarter = Expr::ratio(1, 4);
    let mut sigma_reps = Vec::new();
    let mut chaki_reps = Vec::new();
    for (idx, u) in members(space).enumerate() {
        let homogeneous = idx > 0;
        let alpha = form(u, n, 0);
        let sigma: Vec<Expr> = (0..n)
            .map(|p| &half * &(&form(u, n, 1)[p] + &form(u, n, 3)[p]))
            .collect();
        let mut v = alpha.to_vec();
        for _ in 0..4 {
            v.extend(sigma.iter().cloned());
        }
        if !check(&sol.equation, &v, homogeneous) {
            return Err(NormalizeError::Verification("sigma"));
        }
        sigma_reps.push(v);
        if proper {
            let eps: Vec<Expr> = (0..n)
                .map(|p| &quarter * &(&alpha[p] + &(&Expr::int(2) * &sigma[p])))
                .collect();
            let mut w: Vec<Expr> = eps.iter().map(|e| e * &Expr::int(2)).collect();
            for _ in 0..4 {
                w.extend(eps.iter().cloned());
            }
            if !check(&sol.equation, &w, homogeneous) {
                return Err(NormalizeError::Verification("chaki"));
            }
            chaki_reps.push(w);
        }
    }
    Ok(Normalized {
        sigma: sigma_reps,
        chaki: proper.then_some(chaki_reps),
    })
}

/// `∇_i Z_kl = ∇_k Z_il`.
pub fn is_codazzi(chart: &Chart, z: &Tensor) -> bool {
    let dz = covariant_derivative(chart, z);
    dz == dz.permuted(&[1, 0, 2])
}

/// `∇_i Z_jk + ∇_j Z_ki + ∇_k Z_ij = 0`.
pub fn is_cyclic_parallel(chart: &Chart, z: &Tensor) -> bool {
    let dz = covariant_derivative(chart, z);
    let cyc = Tensor::from_fn(z.dim(), 3, |ix| {
        let (i, j, k) = (ix[0], ix[1], ix[2]);
        &(dz.get(&[i, j, k]) + dz.get(&[j, k, i])) + dz.get(&[k, i, j])
    });
    cyc.is_zero()
}

/// Weak `Z`-symmetry with the structural checks that must hold on its solutions.
#[derive(Clone, Debug)]
pub struct WeakZ {
    pub solution: FormSolution,
    pub codazzi: bool,
    pub cyclic_parallel: bool,
    pub rank: usize,
    /// Named structural assertions evaluated on the solution set.
    pub checks: Vec<(&'static str, bool)>,
}

impl WeakZ {
    pub fn checks_pass(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

/// `∇_h Z_ij = δ_h Z_ij + η_i Z_hj + λ_j Z_ih`.
pub fn solve_weak_z(chart: &Chart, z: &Tensor) -> WeakZ {
    assert_eq!(z.order(), 2);
    let n = z.dim();
    let solution = solve_weak_type2(chart, z, &["delta", "eta", "lambda"]);
    let codazzi = is_codazzi(chart, z);
    let cyclic_parallel = is_cyclic_parallel(chart, z);
    let rank = generic_rank(z);
    let symmetric = *z == z.permuted(&[1, 0]);
    let skew = !z.is_zero() && z.add(&z.permuted(&[1, 0])).is_zero();
    let mut checks = Vec::new();
    let space = solution.space().clone();
    // on a degenerate set every form solves and the structure says nothing
    if space.consistent && solution.degenerate.is_none() {
        let all = |f: FormPredicate| {
            members(&space).all(|u| f(form(u, n, 0), form(u, n, 1), form(u, n, 2)))
        };
        if symmetric {
            let half = Expr::ratio(1, 2);
            let ok = members(&space).enumerate().all(|(idx, u)| {
                let nu: Vec<Expr> = (0..n)
                    .map(|p| &half * &(&form(u, n, 1)[p] + &form(u, n, 2)[p]))
                    .collect();
                let mut v = form(u, n, 0).to_vec();
                v.extend(nu.iter().cloned());
                v.extend(nu);
                check(&solution.equation, &v, idx > 0)
            });
            checks.push(("symmetric: (delta, nu, nu) solves", ok));
            if rank > 1 {
                checks.push(("symmetric rank > 1: eta = lambda", all(&|_, e, l| e == l)));
            }
            if codazzi && rank > 1 {
                checks.push(("codazzi rank > 1: delta = eta = lambda", all(&|d, e, l| d == e && e == l)));
            }
            if cyclic_parallel {
                let ok = all(&|d, e, l| (0..n).all(|p| (&(&d[p] + &e[p]) + &l[p]).is_zero()));
                checks.push(("cyclic parallel: delta + eta + lambda = 0", ok));
            }
        }
        if skew {
            checks.push(("skew: eta = lambda", all(&|_, e, l| e == l)));
        }
    }
    WeakZ {
        solution,
        codazzi,
        cyclic_parallel,
        rank,
        checks,
    }
}

/// Whether `T` is a proper generalized curvature tensor.
pub fn is_proper(chart: &Chart, t: &Tensor) -> bool {
    t.order() == 4 && crate::algebra::check_gct(t).all() && check_second_bianchi(chart, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{derived_tensor, CurvatureKind};
    use crate::geometry::{is_closed, ricci, riemann};
    use crate::zoo::builtin;
    use pseudosym_expr::parse_expression;

    fn chart(name: &str) -> Chart {
        builtin(name).unwrap().chart().unwrap()
    }

    fn ex(chart: &Chart, src: &str) -> Expr {
        parse_expression(src, chart.context()).unwrap()
    }

    fn dx1(n: usize, v: Expr) -> OneForm {
        OneForm::basis(n, 0, v)
    }

    #[test]
    fn chaki_form_of_exponential_example() {
        let c = chart("ex5_1");
        let sol = solve_chaki(&c, riemann(&c));
        assert!(sol.solved.verified);
        assert!(sol.space().is_unique());
        assert_eq!(sol.forms()[0], dx1(5, Expr::ratio(-1, 2)));
        assert!(sol.identity("chaki").unwrap().holds());
    }

    #[test]
    fn chaki_form_of_conformally_flat_examples() {
        let c = chart("ex5_4");
        let sol = solve_chaki(&c, riemann(&c));
        assert!(sol.space().is_unique());
        assert_eq!(sol.forms()[0], dx1(4, ex(&c, "-exp(x1)/(2*(exp(x1)+1))")));
        assert!(is_closed(&c, &sol.forms()[0]));
        let c = chart("ex5_2");
        assert_eq!(solve_chaki(&c, riemann(&c)).outcome(), Outcome::Fails);
    }

    #[test]
    fn weak_symmetry_contains_chaki_point() {
        let c = chart("ex5_1");
        let r = riemann(&c);
        let sol = solve_weak_symmetry_04(&c, r);
        assert!(sol.solved.verified);
        let phi = dx1(5, Expr::ratio(-1, 2));
        let mut point: Vec<Expr> = phi.0.iter().map(|e| e * &Expr::int(2)).collect();
        for _ in 0..4 {
            point.extend(phi.0.iter().cloned());
        }
        assert!(sol.space().contains(&point));
        for (pair, ok) in skew_slot_forms_agree(&sol, r) {
            assert!(ok, "{pair:?}");
        }
        let norm = normalize_weak_solution(&sol, is_proper(&c, r)).unwrap();
        assert_eq!(norm.epsilon().unwrap(), phi);
        for w in &norm.chaki.as_ref().unwrap()[1..] {
            assert!(w.iter().all(Expr::is_zero));
        }
    }

    #[test]
    fn chaki_point_is_a_fixed_point_of_normalization() {
        let c = chart("ex5_4");
        let r = riemann(&c);
        let chaki = solve_chaki(&c, r);
        let phi = &chaki.forms()[0];
        let sol = solve_weak_symmetry_04(&c, r);
        let norm = normalize_weak_solution(&sol, true).unwrap();
        assert_eq!(&norm.epsilon().unwrap(), phi);
    }

    #[test]
    fn conharmonic_tensor_of_conformal_example_is_recurrent() {
        let c = chart("ex5_2");
        let conh = derived_tensor(&c, CurvatureKind::Conh);
        let sol = solve_weak_symmetry_04(&c, &conh);
        assert!(sol.recurrent);
        let mut point = dx1(4, ex(&c, "-3/x1")).0;
        point.extend(vec![Expr::zero(); 16]);
        assert!(sol.space().contains(&point));
        for (_, ok) in skew_slot_forms_agree(&sol, &conh) {
            assert!(ok);
        }
    }

    #[test]
    fn flat_weak_symmetry_is_degenerate() {
        let c = chart("flat4");
        let sol = solve_weak_symmetry_04(&c, riemann(&c));
        assert!(matches!(sol.outcome(), Outcome::Degenerate(_)));
    }

    #[test]
    fn recurrence_in_flat_chart() {
        let c = chart("flat3");
        let z = c.metric().scale(&Expr::exp_coord(0, 1));
        let sol = solve_recurrence(&c, &z);
        assert!(sol.space().is_unique());
        let pi = &sol.forms()[0];
        assert_eq!(pi, &dx1(3, Expr::one()));
        assert!(is_closed(&c, pi));

        let wz = solve_weak_z(&c, &z);
        let mut point = dx1(3, Expr::one()).0;
        point.extend(vec![Expr::zero(); 6]);
        assert!(wz.solution.space().contains(&point));
        assert!(wz.checks_pass(), "{:?}", wz.checks);
    }

    #[test]
    fn chaki_example_is_not_recurrent() {
        let c = chart("ex5_1");
        assert_eq!(solve_recurrence(&c, riemann(&c)).outcome(), Outcome::Fails);
        let scaled = chart_scaled();
        let sol = solve_recurrence(&scaled, riemann(&scaled));
        assert!(matches!(sol.outcome(), Outcome::Degenerate(_)));
    }

    fn chart_scaled() -> Chart {
        let ctx = pseudosym_expr::Context::numbered(3);
        let rows: Vec<Vec<&str>> = vec![vec!["3"], vec!["0", "3"], vec!["0", "0", "3"]];
        Chart::from_strings("scaled", ctx, &rows).unwrap()
    }

    #[test]
    fn ricci_of_quasi_einstein_example() {
        let c = chart("ex5_5");
        let s = ricci(&c);
        assert!(is_cyclic_parallel(&c, s));
        assert!(!is_codazzi(&c, s));
        let wz = solve_weak_z(&c, s);
        assert!(wz.checks_pass(), "{:?}", wz.checks);
    }

    #[test]
    fn weak_z_structure_on_examples() {
        for name in ["ex5_1", "ex5_4"] {
            let c = chart(name);
            let wz = solve_weak_z(&c, ricci(&c));
            assert!(wz.solution.solved.verified);
            assert!(wz.checks_pass(), "{name}: {:?}", wz.checks);
        }
    }
}
