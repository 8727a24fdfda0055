//! Kulkarni-Nomizu products, derived curvature tensors and the actions
//! `B·T`, `Q(A,T)` and `μ_X·T`.
//!
//! For a `(0,k)` tensor `T`, the results of [`dot_action`] and
//! [`tachibana`] are stored as `[i_1..i_k, h, l]`: the two operator slots
//! `(X, Y)` come last. [`oneform_dot`] appends one slot for `X`.

use std::fmt;

use pseudosym_expr::Expr;
use serde::{Deserialize, Serialize};

use crate::chart::Chart;
use crate::geometry::{covariant_derivative, raise_last, ricci, riemann, riemann_up, scalar_curvature};
use crate::tensor::{Index, OneForm, Tensor};

/// `(A∧D)_abcd = A_ad D_bc + A_bc D_ad - A_ac D_bd - A_bd D_ac`.
pub fn kulkarni_nomizu(a: &Tensor, d: &Tensor) -> Tensor {
    assert_eq!((a.order(), d.order()), (2, 2));
    Tensor::from_fn(a.dim(), 4, |ix| {
        let (p, q, r, s) = (ix[0], ix[1], ix[2], ix[3]);
        let prod = |x: [usize; 2], y: [usize; 2]| -> Expr {
            let u = a.get(&x);
            if u.is_zero() {
                return Expr::zero();
            }
            let v = d.get(&y);
            if v.is_zero() {
                Expr::zero()
            } else {
                u * v
            }
        };
        let plus = &prod([p, s], [q, r]) + &prod([q, r], [p, s]);
        let minus = &prod([p, r], [q, s]) + &prod([q, s], [p, r]);
        &plus - &minus
    })
}

/// Curvature tensors built from `R`, `S` and `g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CurvatureKind {
    R,
    G,
    C,
    K,
    Conh,
    P,
}

impl CurvatureKind {
    pub const ALL: [CurvatureKind; 6] = [
        CurvatureKind::R,
        CurvatureKind::G,
        CurvatureKind::C,
        CurvatureKind::K,
        CurvatureKind::Conh,
        CurvatureKind::P,
    ];

    pub fn parse(s: &str) -> Option<CurvatureKind> {
        Some(match s {
            "R" => CurvatureKind::R,
            "G" => CurvatureKind::G,
            "C" => CurvatureKind::C,
            "K" => CurvatureKind::K,
            "conh" => CurvatureKind::Conh,
            "P" => CurvatureKind::P,
            _ => return None,
        })
    }
}

impl fmt::Display for CurvatureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CurvatureKind::R => "R",
            CurvatureKind::G => "G",
            CurvatureKind::C => "C",
            CurvatureKind::K => "K",
            CurvatureKind::Conh => "conh",
            CurvatureKind::P => "P",
        })
    }
}

/// The (0,4) tensor of the given kind.
pub fn derived_tensor(chart: &Chart, which: CurvatureKind) -> Tensor {
    let n = chart.dim() as i64;
    let g = chart.metric();
    let r = riemann(chart);
    let s = ricci(chart);
    let kappa = scalar_curvature(chart);
    match which {
        CurvatureKind::R => r.clone(),
        CurvatureKind::G => kulkarni_nomizu(g, g).scale(&Expr::ratio(1, 2)),
        CurvatureKind::C => {
            let gs = kulkarni_nomizu(g, s);
            let gg = kulkarni_nomizu(g, g);
            let c2 = kappa * &Expr::ratio(1, 2 * (n - 1) * (n - 2));
            r.add_scaled(&Expr::ratio(-1, n - 2), &gs).add_scaled(&c2, &gg)
        }
        CurvatureKind::K => {
            let gg = kulkarni_nomizu(g, g);
            let c = -(kappa * &Expr::ratio(1, 2 * n * (n - 1)));
            r.add_scaled(&c, &gg)
        }
        CurvatureKind::Conh => r.add_scaled(&Expr::ratio(-1, n - 2), &kulkarni_nomizu(g, s)),
        CurvatureKind::P => {
            // P_abcd = R_abcd - (S_bc g_ad - S_ac g_bd)/(n-1)
            let c = Expr::ratio(1, n - 1);
            Tensor::from_fn(chart.dim(), 4, |ix| {
                let (a, b, cc, d) = (ix[0], ix[1], ix[2], ix[3]);
                let w = &(s.get(&[b, cc]) * chart.g(a, d)) - &(s.get(&[a, cc]) * chart.g(b, d));
                r.get(ix) - &(&c * &w)
            })
        }
    }
}

/// Operator form `[a,b,c,m]` of a (0,4) tensor; reuses the cached lift of `R`.
pub fn operator_form(chart: &Chart, b: &Tensor) -> Tensor {
    if std::ptr::eq(b, riemann(chart)) || b == riemann(chart) {
        return riemann_up(chart).clone();
    }
    raise_last(chart, b)
}

/// `(B·T)[I, h, l] = -Σ_m Σ_p B^p_{h l i_m} T_{I[m→p]}`, with `b_up` the operator form of `B`.
pub fn dot_action_up(b_up: &Tensor, t: &Tensor) -> Tensor {
    let n = t.dim();
    let k = t.order();
    Tensor::from_fn(n, k + 2, |ix| {
        let (h, l) = (ix[k], ix[k + 1]);
        if h == l {
            return Expr::zero();
        }
        let idx = &ix[..k];
        let mut moved: Index = idx.iter().copied().collect();
        let mut acc = Expr::zero();
        for m in 0..k {
            for p in 0..n {
                let c = b_up.get(&[h, l, idx[m], p]);
                if c.is_zero() {
                    continue;
                }
                moved[m] = p;
                let tv = t.get(&moved);
                if !tv.is_zero() {
                    acc = &acc - &(c * tv);
                }
            }
            moved[m] = idx[m];
        }
        acc
    })
}

/// `B·T` for a (0,4) tensor `B` on `chart`.
pub fn dot_action(chart: &Chart, b: &Tensor, t: &Tensor) -> Tensor {
    dot_action_up(&operator_form(chart, b), t)
}

/// `Q(A,T)[I, h, l] = -Σ_m (A_{l i_m} T_{I[m→h]} - A_{h i_m} T_{I[m→l]})`.
pub fn tachibana(a: &Tensor, t: &Tensor) -> Tensor {
    let n = t.dim();
    let k = t.order();
    Tensor::from_fn(n, k + 2, |ix| {
        let (h, l) = (ix[k], ix[k + 1]);
        if h == l {
            return Expr::zero();
        }
        let idx = &ix[..k];
        let mut moved: Index = idx.iter().copied().collect();
        let mut acc = Expr::zero();
        for m in 0..k {
            let im = idx[m];
            let alv = a.get(&[l, im]);
            if !alv.is_zero() {
                moved[m] = h;
                let tv = t.get(&moved);
                if !tv.is_zero() {
                    acc = &acc - &(alv * tv);
                }
            }
            let ahv = a.get(&[h, im]);
            if !ahv.is_zero() {
                moved[m] = l;
                let tv = t.get(&moved);
                if !tv.is_zero() {
                    acc = &acc + &(ahv * tv);
                }
            }
            moved[m] = im;
        }
        acc
    })
}

/// `(μ_X·T)[I, h] = -Σ_m μ_{i_m} T_{I[m→h]}`.
pub fn oneform_dot(mu: &OneForm, t: &Tensor) -> Tensor {
    let n = t.dim();
    let k = t.order();
    Tensor::from_fn(n, k + 1, |ix| {
        let h = ix[k];
        let idx = &ix[..k];
        let mut moved: Index = idx.iter().copied().collect();
        let mut acc = Expr::zero();
        for m in 0..k {
            let c = &mu[idx[m]];
            if !c.is_zero() {
                moved[m] = h;
                let tv = t.get(&moved);
                if !tv.is_zero() {
                    acc = &acc - &(c * tv);
                }
                moved[m] = idx[m];
            }
        }
        acc
    })
}

/// `(ω ⊗ T)[h, I] = ω_h T_I`, the derivative-slot-first layout of `∇T`.
pub fn oneform_times(mu: &OneForm, t: &Tensor) -> Tensor {
    mu.as_tensor().outer(t)
}

/// Per-axiom verdicts for a (0,4) tensor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GctAxioms {
    pub first_bianchi: bool,
    pub pair_skew: bool,
    pub block_interchange: bool,
}

impl GctAxioms {
    pub fn all(&self) -> bool {
        self.first_bianchi && self.pair_skew && self.block_interchange
    }
}

pub fn check_gct(b: &Tensor) -> GctAxioms {
    let mut ax = GctAxioms {
        first_bianchi: true,
        pair_skew: true,
        block_interchange: true,
    };
    for flat in 0..b.len() {
        let ix = b.index_of(flat);
        let (p, q, r, s) = (ix[0], ix[1], ix[2], ix[3]);
        let v = b.get(&ix);
        if ax.first_bianchi {
            let cyc = &(v + b.get(&[q, r, p, s])) + b.get(&[r, p, q, s]);
            ax.first_bianchi = cyc.is_zero();
        }
        if ax.pair_skew {
            ax.pair_skew = (v + b.get(&[q, p, r, s])).is_zero();
        }
        if ax.block_interchange {
            ax.block_interchange = v == b.get(&[r, s, p, q]);
        }
    }
    ax
}

/// `∇_a B_bcde + ∇_b B_cade + ∇_c B_abde = 0` componentwise.
pub fn check_second_bianchi(chart: &Chart, b: &Tensor) -> bool {
    second_bianchi_sum(&covariant_derivative(chart, b)).is_zero()
}

/// Cyclic sum over the derivative slot and the first two slots of `∇B`.
pub fn second_bianchi_sum(db: &Tensor) -> Tensor {
    Tensor::from_fn(db.dim(), 5, |ix| {
        let (a, b, c, d, e) = (ix[0], ix[1], ix[2], ix[3], ix[4]);
        &(db.get(&[a, b, c, d, e]) + db.get(&[b, c, a, d, e])) + db.get(&[c, a, b, d, e])
    })
}

/// The cyclic block sum of `R·B` over the pairs `(1,2)`, `(3,4)`, `(5,6)`.
pub fn walker_cyclic_sum(chart: &Chart, b: &Tensor) -> Tensor {
    let rb = dot_action_up(riemann_up(chart), b);
    Tensor::from_fn(chart.dim(), 6, |x| {
        let t1 = rb.get(&[x[2], x[3], x[4], x[5], x[0], x[1]]);
        let t2 = rb.get(&[x[4], x[5], x[0], x[1], x[2], x[3]]);
        let t3 = rb.get(&[x[0], x[1], x[2], x[3], x[4], x[5]]);
        &(t1 + t2) + t3
    })
}

pub fn walker_cyclic_check(chart: &Chart, b: &Tensor) -> bool {
    walker_cyclic_sum(chart, b).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo::builtin;
    use pseudosym_expr::parse_expression;

    fn chart(name: &str) -> Chart {
        builtin(name).unwrap().chart().unwrap()
    }

    fn ex(chart: &Chart, src: &str) -> Expr {
        parse_expression(src, chart.context()).unwrap()
    }

    fn skew_in_last_pair(t: &Tensor) -> bool {
        let k = t.order();
        let mut perm: Vec<usize> = (0..k).collect();
        perm.swap(k - 2, k - 1);
        t.add(&t.permuted(&perm)).is_zero()
    }

    #[test]
    fn kulkarni_nomizu_symmetries() {
        let c = chart("ex5_4");
        let g = c.metric();
        let s = ricci(&c);
        let gs = kulkarni_nomizu(g, s);
        assert_eq!(gs, kulkarni_nomizu(s, g));
        assert!(check_gct(&gs).all());
        assert!(check_gct(&kulkarni_nomizu(s, s)).all());
    }

    #[test]
    fn g_wedge_identities() {
        let c = chart("ex5_1");
        let g = c.metric();
        let s = ricci(&c);
        assert!(tachibana(g, &kulkarni_nomizu(g, g)).is_zero());
        // Q(A, A∧D) = -Q(D, ½ A∧A); vanishes only for D proportional to g
        let big_g = derived_tensor(&c, CurvatureKind::G);
        let lhs = tachibana(g, &kulkarni_nomizu(g, s));
        assert!(!lhs.is_zero());
        assert_eq!(lhs, tachibana(s, &big_g).scale(&Expr::int(-1)));
    }

    #[test]
    fn conformally_flat_pseudosymmetry() {
        let c = chart("ex5_2");
        let r = riemann(&c);
        let rr = dot_action(&c, r, r);
        let qg = tachibana(c.metric(), r);
        let qs = tachibana(ricci(&c), r);
        assert!(!rr.is_zero());
        assert_eq!(rr, qg.scale(&ex(&c, "-1/(2*x1^3)")));
        assert_eq!(rr, qs);
        assert!(skew_in_last_pair(&rr) && skew_in_last_pair(&qs));
    }

    #[test]
    fn derived_tensor_axioms() {
        let c = chart("ex5_1");
        for kind in [CurvatureKind::R, CurvatureKind::C, CurvatureKind::K, CurvatureKind::Conh] {
            assert!(check_gct(&derived_tensor(&c, kind)).all(), "{kind}");
        }
        assert!(check_second_bianchi(&c, riemann(&c)));
        let p = derived_tensor(&chart("ex5_2"), CurvatureKind::P);
        let ax = check_gct(&p);
        assert!(!ax.block_interchange);
    }

    #[test]
    fn flat_derived_tensors_vanish() {
        let c = chart("flat4");
        for kind in [CurvatureKind::R, CurvatureKind::C, CurvatureKind::K, CurvatureKind::Conh, CurvatureKind::P] {
            assert!(derived_tensor(&c, kind).is_zero());
        }
        let r = riemann(&c);
        assert!(dot_action(&c, r, r).is_zero());
    }

    #[test]
    fn walker_identity() {
        for name in ["ex5_1", "ex5_3", "flat3"] {
            let c = chart(name);
            assert!(walker_cyclic_check(&c, riemann(&c)), "{name}");
        }
    }

    #[test]
    fn weyl_annihilates_ricci_on_quasi_einstein_example() {
        let c = chart("ex5_5");
        let weyl = derived_tensor(&c, CurvatureKind::C);
        assert!(dot_action(&c, &weyl, ricci(&c)).is_zero());
        let p = derived_tensor(&c, CurvatureKind::P);
        let kappa = scalar_curvature(&c);
        let ps = dot_action(&c, &p, ricci(&c));
        let qs = tachibana(c.metric(), ricci(&c));
        assert_eq!(ps, qs.scale(&(&Expr::ratio(-1, 4) * kappa)));
    }

    #[test]
    fn oneform_dot_on_metric() {
        let c = chart("ex5_2");
        let mu = OneForm(vec![Expr::coord(0), Expr::int(2), Expr::zero(), Expr::exp_coord(0, 1)]);
        let t = oneform_dot(&mu, c.metric());
        for i in 0..4 {
            for j in 0..4 {
                for h in 0..4 {
                    let expected = -&(&(&mu[i] * c.g(h, j)) + &(&mu[j] * c.g(i, h)));
                    assert_eq!(t.get(&[i, j, h]), &expected);
                }
            }
        }
        assert!(oneform_dot(&OneForm::zero(4), c.metric()).is_zero());
    }

    #[test]
    fn actions_are_linear() {
        let c = chart("ex5_4");
        let r = riemann(&c);
        let s = ricci(&c);
        let f = ex(&c, "x2 + exp(x1)/(1+x3)");
        let q1 = tachibana(&s.scale(&f), r);
        assert_eq!(q1, tachibana(s, r).scale(&f));
        let b = derived_tensor(&c, CurvatureKind::C);
        let sum = r.add(&b);
        assert_eq!(dot_action(&c, &sum, s), dot_action(&c, r, s).add(&dot_action(&c, &b, s)));
        assert_eq!(dot_action(&c, r, &s.scale(&f)), dot_action(&c, r, s).scale(&f));
    }
}
