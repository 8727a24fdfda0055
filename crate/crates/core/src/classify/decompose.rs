//! Linear decompositions of curvature tensors: Roter and generalized Roter
//! type, quasi-Einstein Ricci tensors, and `B = L₁ D∧D` with `D = L₂W - H`.

use pseudosym_expr::Expr;

use crate::algebra::kulkarni_nomizu;
use crate::chart::Chart;
use crate::geometry::{ricci, ricci_square, trace};
use crate::linsolve::SolutionSpace;
use crate::tensor::{OneForm, Tensor};

use super::{Identity, Outcome, Solved, TensorEquation};

/// `target = Σ c_i generator_i`.
#[derive(Clone, Debug)]
pub struct Combination {
    pub equation: TensorEquation,
    pub solved: Solved,
}

impl Combination {
    pub fn outcome(&self) -> Outcome {
        Outcome::from_bool(self.solved.space.consistent)
    }

    pub fn space(&self) -> &SolutionSpace {
        &self.solved.space
    }

    pub fn identity(&self, label: impl Into<String>) -> Option<Identity> {
        let s = self.space();
        s.consistent.then(|| self.equation.identity(label, &s.particular))
    }
}

pub fn solve_linear_combination(target: &Tensor, generators: Vec<(String, Tensor)>) -> Combination {
    let (names, coeffs) = generators.into_iter().unzip();
    let equation = TensorEquation::new(names, target.clone(), coeffs);
    Combination {
        solved: equation.solve(),
        equation,
    }
}

/// Linear relations `Σ c_i generator_i = 0`, as a kernel basis.
pub fn relations(generators: Vec<(String, Tensor)>) -> Combination {
    let zero = Tensor::zeros(generators[0].1.dim(), generators[0].1.order());
    solve_linear_combination(&zero, generators)
}

/// `[g∧g, g∧S, S∧S]` named `N1..N3`.
pub fn roter_generators(chart: &Chart) -> Vec<(String, Tensor)> {
    let g = chart.metric();
    let s = ricci(chart);
    vec![
        ("N1".to_string(), kulkarni_nomizu(g, g)),
        ("N2".to_string(), kulkarni_nomizu(g, s)),
        ("N3".to_string(), kulkarni_nomizu(s, s)),
    ]
}

/// `[S∧S, S∧S², g∧S, g∧S², g∧g, S²∧S²]` named `L1..L6`.
pub fn generalized_roter_generators(chart: &Chart) -> Vec<(String, Tensor)> {
    let g = chart.metric();
    let s = ricci(chart);
    let s2 = ricci_square(chart);
    let tensors = [
        kulkarni_nomizu(s, s),
        kulkarni_nomizu(s, s2),
        kulkarni_nomizu(g, s),
        kulkarni_nomizu(g, s2),
        kulkarni_nomizu(g, g),
        kulkarni_nomizu(s2, s2),
    ];
    tensors
        .into_iter()
        .enumerate()
        .map(|(i, t)| (format!("L{}", i + 1), t))
        .collect()
}

pub fn solve_roter(chart: &Chart, b: &Tensor) -> Combination {
    solve_linear_combination(b, roter_generators(chart))
}

pub fn solve_generalized_roter(chart: &Chart, b: &Tensor) -> Combination {
    solve_linear_combination(b, generalized_roter_generators(chart))
}

/// Roots of `a t² + b t + c` in the expression field; `None` if the polynomial is zero.
pub fn quadratic_roots(a: &Expr, b: &Expr, c: &Expr) -> Option<Vec<Expr>> {
    if a.is_zero() {
        if b.is_zero() {
            return if c.is_zero() { None } else { Some(Vec::new()) };
        }
        return Some(vec![-&(c / b)]);
    }
    let disc = &(b * b) - &(&Expr::int(4) * &(a * c));
    let two_a = a * &Expr::int(2);
    if disc.is_zero() {
        return Some(vec![-&(b / &two_a)]);
    }
    let Some(r) = disc.sqrt_exact() else {
        return Some(Vec::new());
    };
    Some(vec![&(&-b + &r) / &two_a, &(&-b - &r) / &two_a])
}

// Univariate polynomials over the expression field, low degree first.
type UPoly = Vec<Expr>;

fn trim(mut p: UPoly) -> UPoly {
    while p.last().is_some_and(Expr::is_zero) {
        p.pop();
    }
    p
}

fn upoly_rem(a: &UPoly, b: &UPoly) -> UPoly {
    let mut r = a.clone();
    let lead = b.last().expect("nonzero divisor");
    while r.len() >= b.len() {
        let q = r.last().expect("nonempty") / lead;
        let shift = r.len() - b.len();
        for (i, c) in b.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &(&q * c);
        }
        r = trim(r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn upoly_gcd(a: UPoly, b: UPoly) -> UPoly {
    let (mut a, mut b) = (trim(a), trim(b));
    while !b.is_empty() {
        let r = upoly_rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

/// Shape of the Ricci tensor found by [`solve_quasi_einstein`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuasiEinsteinKind {
    /// `S = α g`.
    Einstein,
    /// `S = α g + β η⊗η` with `g⁻¹(η,η) = eps`, `η` determined up to sign.
    Proper { beta: Expr, eta: OneForm, eps: i64 },
    /// `S - αg` has rank one but no normalized factor lies in the expression field.
    NoExprFactor,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiEinstein {
    pub alpha: Expr,
    pub kind: QuasiEinsteinKind,
}

impl QuasiEinstein {
    /// `S = α g + β η⊗η`.
    pub fn identity(&self, chart: &Chart, label: impl Into<String>) -> Option<Identity> {
        let s = ricci(chart).clone();
        let mut terms = vec![(self.alpha.clone(), chart.metric().clone())];
        match &self.kind {
            QuasiEinsteinKind::Einstein => {}
            QuasiEinsteinKind::Proper { beta, eta, .. } => {
                terms.push((beta.clone(), eta.as_tensor().outer(&eta.as_tensor())));
            }
            QuasiEinsteinKind::NoExprFactor => return None,
        }
        Some(Identity::new(label, s, terms))
    }
}

fn factor_rank_one(chart: &Chart, m: &Tensor) -> QuasiEinsteinKind {
    let n = chart.dim();
    let tr = trace(chart, m);
    if tr.is_zero() {
        return QuasiEinsteinKind::NoExprFactor;
    }
    let p = (0..n).find(|&p| !m.get(&[p, p]).is_zero());
    let Some(p) = p else {
        return QuasiEinsteinKind::NoExprFactor;
    };
    for eps in [1i64, -1] {
        let beta = &tr * &Expr::int(eps);
        let Some(eta_p) = (m.get(&[p, p]) / &beta).sqrt_exact() else {
            continue;
        };
        let scale = &beta * &eta_p;
        let eta = OneForm((0..n).map(|i| m.get(&[i, p]) / &scale).collect());
        let t = eta.as_tensor();
        if t.outer(&t).scale(&beta) == *m {
            return QuasiEinsteinKind::Proper { beta, eta, eps };
        }
    }
    QuasiEinsteinKind::NoExprFactor
}

/// Scalars `α` with `rank(S - αg) ≤ 1`, each with its factorization.
pub fn solve_quasi_einstein(chart: &Chart) -> Vec<QuasiEinstein> {
    let n = chart.dim();
    let s = ricci(chart);
    let g = |i: usize, j: usize| chart.g(i, j);
    let sv = |i: usize, j: usize| s.get(&[i, j]);
    let mut common: UPoly = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                for l in k + 1..n {
                    let c2 = &(g(i, k) * g(j, l)) - &(g(i, l) * g(j, k));
                    let c1 = &(&(sv(i, l) * g(j, k)) + &(g(i, l) * sv(j, k)))
                        - &(&(sv(i, k) * g(j, l)) + &(g(i, k) * sv(j, l)));
                    let c0 = &(sv(i, k) * sv(j, l)) - &(sv(i, l) * sv(j, k));
                    common = upoly_gcd(common, vec![c0, c1, c2]);
                    if common.len() == 1 {
                        return Vec::new();
                    }
                }
            }
        }
    }
    let roots = match common.len() {
        0 => return Vec::new(),
        2 => vec![-&(&common[0] / &common[1])],
        3 => quadratic_roots(&common[2], &common[1], &common[0]).unwrap_or_default(),
        _ => Vec::new(),
    };
    roots
        .into_iter()
        .map(|alpha| {
            let m = s.sub(&chart.metric().scale(&alpha));
            let kind = if m.is_zero() {
                QuasiEinsteinKind::Einstein
            } else {
                factor_rank_one(chart, &m)
            };
            QuasiEinstein { alpha, kind }
        })
        .collect()
}

/// `B = L₁ (L₂W - H)∧(L₂W - H)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WedgeSquare {
    /// `B` vanishes identically.
    Degenerate,
    Solutions(Vec<(Expr, Expr)>),
    /// The linear system in `(L₁L₂², -2L₁L₂, L₁)` has more than one free parameter.
    Underdetermined,
}

/// Solves `B = L₁ D∧D` with `D = L₂W - H` for scalar functions `L₁`, `L₂`.
pub fn corollary47_decomposition(b: &Tensor, w: &Tensor, h: &Tensor) -> WedgeSquare {
    if b.is_zero() {
        return WedgeSquare::Degenerate;
    }
    // B = u1 W∧W + u2 W∧H + u3 H∧H with u1 = L1 L2², u2 = -2 L1 L2, u3 = L1
    let comb = solve_linear_combination(
        b,
        vec![
            ("u1".to_string(), kulkarni_nomizu(w, w)),
            ("u2".to_string(), kulkarni_nomizu(w, h)),
            ("u3".to_string(), kulkarni_nomizu(h, h)),
        ],
    );
    let space = comb.space();
    if !space.consistent {
        return WedgeSquare::Solutions(Vec::new());
    }
    let from_u = |u: &[Expr]| -> Option<(Expr, Expr)> {
        if u[2].is_zero() {
            return None;
        }
        let l2 = -&(&u[1] / &(&u[2] * &Expr::int(2)));
        (u[0] == &(&l2 * &l2) * &u[2]).then(|| (u[2].clone(), l2))
    };
    let p = &space.particular;
    match space.basis.len() {
        0 => WedgeSquare::Solutions(from_u(p).into_iter().collect()),
        1 => {
            let d = &space.basis[0];
            let four = Expr::int(4);
            // (p2 + t d2)² - 4 (p1 + t d1)(p3 + t d3) = 0
            let a = &(&d[1] * &d[1]) - &(&four * &(&d[0] * &d[2]));
            let bq = &(&Expr::int(2) * &(&p[1] * &d[1])) - &(&four * &(&(&p[0] * &d[2]) + &(&d[0] * &p[2])));
            let c = &(&p[1] * &p[1]) - &(&four * &(&p[0] * &p[2]));
            match quadratic_roots(&a, &bq, &c) {
                None => WedgeSquare::Underdetermined,
                Some(ts) => WedgeSquare::Solutions(
                    ts.iter().filter_map(|t| from_u(&space.member(std::slice::from_ref(t)))).collect(),
                ),
            }
        }
        _ => WedgeSquare::Underdetermined,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{riemann, scalar_curvature};
    use crate::zoo::builtin;
    use pseudosym_expr::parse_expression;

    fn chart(name: &str) -> Chart {
        builtin(name).unwrap().chart().unwrap()
    }

    fn ex(c: &Chart, src: &str) -> Expr {
        parse_expression(src, c.context()).unwrap()
    }

    #[test]
    fn quadratic_root_cases() {
        let x = Expr::coord(0);
        // (t - x)(t + 2) = t² + (2 - x) t - 2x
        let roots = quadratic_roots(&Expr::one(), &(&Expr::int(2) - &x), &(&Expr::int(-2) * &x)).unwrap();
        assert!(roots.contains(&x) && roots.contains(&Expr::int(-2)));
        assert_eq!(quadratic_roots(&Expr::zero(), &Expr::int(2), &x).unwrap(), vec![&x * &Expr::ratio(-1, 2)]);
        assert!(quadratic_roots(&Expr::one(), &Expr::zero(), &-&x).unwrap().is_empty());
        assert!(quadratic_roots(&Expr::zero(), &Expr::zero(), &Expr::zero()).is_none());
    }

    #[test]
    fn conformally_flat_roter_family() {
        // C = 0 in dimension 4 gives R = ½ g∧S - κ/12 g∧g
        for name in ["ex5_2", "ex5_4"] {
            let c = chart(name);
            let roter = solve_roter(&c, riemann(&c));
            assert!(roter.solved.verified);
            let space = roter.space();
            assert_eq!(space.free, vec![2]);
            let kappa = scalar_curvature(&c);
            assert_eq!(space.particular, vec![kappa * &Expr::ratio(-1, 12), Expr::ratio(1, 2), Expr::zero()]);
            let member = space.member(&[Expr::param(0)]);
            assert!(roter.equation.identity("roter", &member).holds());
        }
    }

    #[test]
    fn roter_family_with_half_squares() {
        // R = N1 G + N2 g∧S + N3 ½ S∧S with G = ½ g∧g
        let c = chart("ex5_4");
        let space = solve_roter(&c, riemann(&c)).solved.space;
        let ctx = c.context().with_param("N3");
        let p = |s: &str| parse_expression(s, &ctx).unwrap();
        let n1 = p("-(2+exp(x1))/(4*(1+exp(x1))^2) + (3+2*exp(x1))^2/(16*(1+exp(x1))^4)*N3");
        let n2 = p("1/2 - (3+2*exp(x1))/(4*(1+exp(x1))^2)*N3");
        let n3 = p("N3");
        let half = Expr::ratio(1, 2);
        assert!(space.contains(&[&n1 * &half, n2.clone(), &n3 * &half]));
        // the opposite sign on the N3 term of N2 is not a solution
        let flipped = p("1/2 + (3+2*exp(x1))/(4*(1+exp(x1))^2)*N3");
        assert!(!space.contains(&[&n1 * &half, flipped, &n3 * &half]));
    }

    #[test]
    fn generalized_roter_one_parameter_family() {
        let c = chart("ex5_1");
        assert!(!solve_roter(&c, riemann(&c)).space().consistent);
        let gr = solve_generalized_roter(&c, riemann(&c));
        assert!(gr.solved.verified);
        assert_eq!(gr.space().free, vec![5]);
        let ctx = c.context().with_param("L6");
        let member: Vec<Expr> = [
            "-1/16*exp(-2*x1)*(80*exp(3*x1) - 49*L6)",
            "1/2*exp(-x1)*(8*exp(3*x1) - 7*L6)",
            "7/24*exp(-3*x1)*(20*exp(3*x1) - 9*L6)",
            "-1/6*exp(-2*x1)*(20*exp(3*x1) - 9*L6)",
            "-1/16*exp(-4*x1)*(20*exp(3*x1) - 9*L6)",
            "L6",
        ]
        .iter()
        .map(|s| parse_expression(s, &ctx).unwrap())
        .collect();
        assert!(gr.space().contains(&member));
    }

    #[test]
    fn five_dimensional_wedge_relations() {
        let c = chart("ex5_5");
        assert!(!solve_roter(&c, riemann(&c)).space().consistent);
        assert!(!solve_generalized_roter(&c, riemann(&c)).space().consistent);

        // (S - κ/2 g)∧(S - κ/2 g) = 0 spans the Roter relations
        let rel = relations(roter_generators(&c));
        assert_eq!(rel.space().basis.len(), 1);
        let k = scalar_curvature(&c);
        let v = vec![&(k * k) * &Expr::ratio(1, 4), -k, Expr::one()];
        assert!(rel.space().contains(&v));

        let rel = relations(generalized_roter_generators(&c));
        assert_eq!(rel.space().basis.len(), 4);
        // Squares below are read as ½ A∧A, so they carry half the unit value.
        let k2 = k * k;
        let (k3, kinv2) = (&k2 * k, k2.recip().unwrap());
        let kinv3 = &kinv2 * &k.recip().unwrap();
        let half = Expr::ratio(1, 2);
        let family = [
            [half.clone(), Expr::zero(), Expr::zero(), Expr::zero(), &k2 * &Expr::ratio(-1, 4), &kinv2 * &Expr::int(2)],
            [Expr::zero(), Expr::one(), Expr::zero(), Expr::zero(), &k3 * &Expr::ratio(-1, 8), Expr::zero()],
            [Expr::zero(), Expr::zero(), Expr::one(), Expr::zero(), k * &Expr::ratio(-3, 4), &kinv3 * &Expr::int(4)],
            [Expr::zero(), Expr::zero(), Expr::zero(), Expr::one(), &k2 * &Expr::ratio(-1, 8), &kinv2 * &Expr::int(-2)],
        ];
        for v in family {
            assert!(rel.space().contains(&v));
        }
    }

    #[test]
    fn quasi_einstein_examples() {
        let c = chart("ex5_5");
        let qe = solve_quasi_einstein(&c);
        assert_eq!(qe.len(), 1);
        let kappa = scalar_curvature(&c);
        assert_eq!(qe[0].alpha, kappa * &Expr::ratio(1, 2));
        match &qe[0].kind {
            QuasiEinsteinKind::Proper { beta, eta, eps } => {
                assert_eq!(beta, &(kappa * &Expr::ratio(-3, 2)));
                assert_eq!(*eps, 1);
                let printed = OneForm(vec![
                    Expr::zero(),
                    Expr::zero(),
                    ex(&c, "-rho"),
                    ex(&c, "-x*rho"),
                    ex(&c, "y*rho"),
                ]);
                assert!(eta == &printed || eta == &printed.scale(&Expr::int(-1)));
            }
            other => panic!("{other:?}"),
        }
        assert!(qe[0].identity(&c, "qe").unwrap().holds());

        let godel = chart("ex5_3");
        let qe = solve_quasi_einstein(&godel);
        assert_eq!(qe.len(), 1);
        assert!(qe[0].alpha.is_zero());
        assert!(qe[0].identity(&godel, "qe").unwrap().holds());

        let flat = chart("flat3");
        let qe = solve_quasi_einstein(&flat);
        assert_eq!(qe[0].kind, QuasiEinsteinKind::Einstein);
    }

    #[test]
    fn wedge_square_factorizations_of_chaki_example() {
        let c = chart("ex5_4");
        let phi = crate::classify::weak::solve_chaki(&c, riemann(&c)).forms().remove(0);
        let h = crate::classify::torse::compute_j(&c, &phi);
        let r = riemann(&c);
        let l1 = ex(&c, "2*(exp(x1)+1)^3/(exp(x1)-1)^2");
        let l2 = ex(&c, "1/(4*(1+exp(x1))^2)");
        let WedgeSquare::Solutions(sols) = corollary47_decomposition(r, c.metric(), &h) else {
            panic!("expected solutions");
        };
        assert!(sols.contains(&(l1.clone(), l2.clone())), "{sols:?}");
        let d1 = c.metric().scale(&l2).sub(&h);
        assert!(Identity::new("D1", r.clone(), vec![(l1, kulkarni_nomizu(&d1, &d1))]).holds());

        let s = ricci(&c);
        let WedgeSquare::Solutions(sols) = corollary47_decomposition(r, s, &h) else {
            panic!("expected solutions");
        };
        let l = ex(&c, "2*(exp(x1)+1)^3/(3+exp(x1))^2");
        assert!(sols.contains(&(l, Expr::one())), "{sols:?}");
    }

    #[test]
    fn flat_wedge_square_is_degenerate() {
        let c = chart("flat4");
        let r = riemann(&c);
        assert_eq!(corollary47_decomposition(r, c.metric(), c.metric()), WedgeSquare::Degenerate);
    }
}
