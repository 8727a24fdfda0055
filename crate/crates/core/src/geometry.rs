//! Levi-Civita connection and curvature in coordinates.
//!
//! Sign convention: the (0,4) curvature tensor is the negative of
//! `g(R(X,Y)Z, W)` with `R(X,Y) = [∇_X, ∇_Y] - ∇_[X,Y]`. The Ricci tensor is
//! the trace `S(Y,Z) = tr(X ↦ R(X,Y)Z)` of the same operator, so
//! `S`, `κ` and `R` all change sign together.

use pseudosym_expr::Expr;

use crate::chart::Chart;
use crate::linalg::{minor, subsets, Matrix};
use crate::tensor::{Index, OneForm, Tensor};

/// Overall factor applied to the operator `[∇_X, ∇_Y] - ∇_[X,Y]`.
pub const CURVATURE_SIGN: i64 = -1;

/// Factor `c` in `dα_ij = c (∂_i α_j - ∂_j α_i)`.
pub const EXTERIOR_DERIVATIVE_FACTOR: (i64, i64) = (-1, 2);

/// `Γ^k_ij`, stored at `[k, i, j]`.
pub fn christoffel(chart: &Chart) -> &Tensor {
    chart.cache.christoffel.get_or_init(|| {
        let n = chart.dim();
        // dg[l,i,j] = ∂_l g_ij
        let dg = Tensor::from_fn(n, 3, |ix| chart.g(ix[1], ix[2]).differentiate(ix[0]));
        // Γ_lij = ½(∂_i g_jl + ∂_j g_il - ∂_l g_ij)
        let half = Expr::ratio(1, 2);
        let first = Tensor::from_fn(n, 3, |ix| {
            let (l, i, j) = (ix[0], ix[1], ix[2]);
            let s = dg.get(&[i, j, l]) + dg.get(&[j, i, l]);
            &half * &(&s - dg.get(&[l, i, j]))
        });
        Tensor::from_fn(n, 3, |ix| {
            let (k, i, j) = (ix[0], ix[1], ix[2]);
            (0..n)
                .filter(|&l| !chart.g_inv(k, l).is_zero())
                .map(|l| chart.g_inv(k, l) * first.get(&[l, i, j]))
                .sum()
        })
    })
}

/// Curvature operator components: `R(∂_a, ∂_b)∂_c = Σ_m up[a,b,c,m] ∂_m`.
pub fn riemann_up(chart: &Chart) -> &Tensor {
    chart.cache.riemann_up.get_or_init(|| {
        let n = chart.dim();
        let gam = christoffel(chart);
        let sign = Expr::int(CURVATURE_SIGN);
        Tensor::from_fn(n, 4, |ix| {
            let (a, b, c, d) = (ix[0], ix[1], ix[2], ix[3]);
            if a == b {
                return Expr::zero();
            }
            let mut v = &gam.get(&[d, b, c]).differentiate(a) - &gam.get(&[d, a, c]).differentiate(b);
            for e in 0..n {
                let p = gam.get(&[e, b, c]);
                if !p.is_zero() {
                    v = &v + &(p * gam.get(&[d, a, e]));
                }
                let q = gam.get(&[e, a, c]);
                if !q.is_zero() {
                    v = &v - &(q * gam.get(&[d, b, e]));
                }
            }
            &sign * &v
        })
    })
}

/// `R(X_1,X_2,X_3,X_4) = g(R(X_1,X_2)X_3, X_4)`.
pub fn riemann(chart: &Chart) -> &Tensor {
    chart.cache.riemann.get_or_init(|| lower_last(chart, riemann_up(chart)))
}

/// `B_abcd = Σ_m g_dm B^m_abc` for an operator stored as `[a,b,c,m]`.
pub fn lower_last(chart: &Chart, up: &Tensor) -> Tensor {
    let n = chart.dim();
    Tensor::from_fn(n, 4, |ix| {
        (0..n)
            .filter(|&m| !chart.g(ix[3], m).is_zero())
            .map(|m| chart.g(ix[3], m) * up.get(&[ix[0], ix[1], ix[2], m]))
            .sum()
    })
}

/// `B^m_abc = Σ_d g^md B_abcd`, stored as `[a,b,c,m]`.
pub fn raise_last(chart: &Chart, b: &Tensor) -> Tensor {
    let n = chart.dim();
    Tensor::from_fn(n, 4, |ix| {
        (0..n)
            .filter(|&d| !chart.g_inv(ix[3], d).is_zero())
            .map(|d| chart.g_inv(ix[3], d) * b.get(&[ix[0], ix[1], ix[2], d]))
            .sum()
    })
}

/// `S_bc = Σ_a R^a_abc`.
pub fn ricci(chart: &Chart) -> &Tensor {
    chart.cache.ricci.get_or_init(|| {
        let up = riemann_up(chart);
        Tensor::from_fn(chart.dim(), 2, |ix| {
            (0..chart.dim()).map(|a| up.get(&[a, ix[0], ix[1], a]).clone()).sum()
        })
    })
}

/// `κ = g^ij S_ij`.
pub fn scalar_curvature(chart: &Chart) -> &Expr {
    chart.cache.scalar.get_or_init(|| trace(chart, ricci(chart)))
}

/// `g^ij Z_ij`.
pub fn trace(chart: &Chart, z: &Tensor) -> Expr {
    let n = chart.dim();
    let mut acc = Expr::zero();
    for i in 0..n {
        for j in 0..n {
            let gi = chart.g_inv(i, j);
            if !gi.is_zero() {
                acc = &acc + &(gi * z.get(&[i, j]));
            }
        }
    }
    acc
}

/// `S²(X,Y) = S(𝒮X, Y)` with `g(𝒮X, Y) = S(X, Y)`.
pub fn ricci_square(chart: &Chart) -> &Tensor {
    chart.cache.ricci_square.get_or_init(|| {
        let s = ricci(chart);
        Tensor::from_fn(chart.dim(), 2, |ix| {
            let n = chart.dim();
            let mut acc = Expr::zero();
            for k in 0..n {
                for l in 0..n {
                    let gi = chart.g_inv(k, l);
                    if gi.is_zero() {
                        continue;
                    }
                    let a = s.get(&[ix[0], l]);
                    let b = s.get(&[k, ix[1]]);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(&(gi * a) * b);
                    }
                }
            }
            acc
        })
    })
}

/// `(∇T)[h, i_1..i_k] = ∂_h T_I - Σ_m Γ^l_{h i_m} T_{I[m→l]}`.
pub fn covariant_derivative(chart: &Chart, t: &Tensor) -> Tensor {
    let n = chart.dim();
    let k = t.order();
    let gam = christoffel(chart);
    Tensor::from_fn(n, k + 1, |ix| {
        let h = ix[0];
        let idx = &ix[1..];
        let mut v = t.get(idx).differentiate(h);
        let mut moved: Index = idx.iter().copied().collect();
        for m in 0..k {
            for l in 0..n {
                let c = gam.get(&[l, h, idx[m]]);
                if c.is_zero() {
                    continue;
                }
                moved[m] = l;
                let tv = t.get(&moved);
                if !tv.is_zero() {
                    v = &v - &(c * tv);
                }
            }
            moved[m] = idx[m];
        }
        v
    })
}

/// `(∇ω)[i, j]` for a 1-form.
pub fn covariant_derivative_oneform(chart: &Chart, w: &OneForm) -> Tensor {
    covariant_derivative(chart, &w.as_tensor())
}

/// `dα_ij = c (∂_i α_j - ∂_j α_i)` with `c` = [`EXTERIOR_DERIVATIVE_FACTOR`].
pub fn exterior_derivative_oneform(chart: &Chart, alpha: &OneForm) -> Tensor {
    let (p, q) = EXTERIOR_DERIVATIVE_FACTOR;
    let c = Expr::ratio(p, q);
    Tensor::from_fn(chart.dim(), 2, |ix| {
        let (i, j) = (ix[0], ix[1]);
        if i == j {
            return Expr::zero();
        }
        &c * &(&alpha[j].differentiate(i) - &alpha[i].differentiate(j))
    })
}

pub fn is_closed(chart: &Chart, alpha: &OneForm) -> bool {
    exterior_derivative_oneform(chart, alpha).is_zero()
}

/// Raises a 1-form to a vector field: `V^k = g^kj ω_j`.
pub fn raise(chart: &Chart, w: &OneForm) -> OneForm {
    let n = chart.dim();
    OneForm((0..n).map(|k| (0..n).map(|j| chart.g_inv(k, j) * &w[j]).sum()).collect())
}

/// Lowers a vector field: `ω_j = g_jk V^k`.
pub fn lower(chart: &Chart, v: &OneForm) -> OneForm {
    let n = chart.dim();
    OneForm((0..n).map(|j| (0..n).map(|k| chart.g(j, k) * &v[k]).sum()).collect())
}

fn as_matrix(z: &Tensor) -> Matrix {
    let n = z.dim();
    (0..n)
        .map(|i| (0..n).map(|j| z.get(&[i, j]).clone()).collect())
        .collect()
}

/// True iff every `(r+1)`-minor of the component matrix is canonical zero.
pub fn rank_at_most(z: &Tensor, r: usize) -> bool {
    let n = z.dim();
    if r >= n {
        return true;
    }
    let m = as_matrix(z);
    let subs = subsets(n, r + 1);
    subs.iter()
        .all(|rows| subs.iter().all(|cols| minor(&m, rows, cols).is_zero()))
}

/// Rank by elimination; agrees with [`rank_at_most`] over the function field.
pub fn generic_rank(z: &Tensor) -> usize {
    crate::linalg::rank(&as_matrix(z))
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

    #[test]
    fn scalar_curvature_sign_calibration() {
        let c = chart("ex5_1");
        assert_eq!(scalar_curvature(&c), &ex(&c, "7/2 * exp(-x1)"));
        let c = chart("ex5_2");
        assert_eq!(scalar_curvature(&c), &ex(&c, "-3/(2*x1^3)"));
        let c = chart("ex5_5");
        assert_eq!(scalar_curvature(&c), &ex(&c, "rho^2"));
        let c = chart("ex5_4");
        assert_eq!(scalar_curvature(&c), &ex(&c, "3*(2+exp(x1))/(2*(1+exp(x1))^2)"));
    }

    #[test]
    fn conformal_christoffel_symbols() {
        let c = chart("ex5_2");
        let g = christoffel(&c);
        let h = ex(&c, "1/(2*x1)");
        assert_eq!(g.get(&[0, 0, 0]), &h);
        assert_eq!(g.get(&[1, 0, 1]), &h);
        assert_eq!(g.get(&[0, 1, 1]), &-&h);
        for name in ["ex5_1", "ex5_3", "ex5_5"] {
            let c = chart(name);
            let g = christoffel(&c);
            assert!(g.sub(&g.permuted(&[0, 2, 1])).is_zero());
        }
    }

    // R_abcd from second metric derivatives, independent of the operator path.
    fn second_derivative_riemann(chart: &Chart) -> Tensor {
        let n = chart.dim();
        let gam = christoffel(chart);
        let dd = |p: usize, q: usize, a: usize, b: usize| chart.g(p, q).differentiate(a).differentiate(b);
        // first kind Γ_{e;ij} = g_el Γ^l_ij
        let low = Tensor::from_fn(n, 3, |ix| {
            (0..n).map(|l| chart.g(ix[0], l) * gam.get(&[l, ix[1], ix[2]])).sum()
        });
        // standard R_{ρσμν} = g(R(∂μ,∂ν)∂σ, ∂ρ)
        let std = |r: usize, s: usize, m: usize, v: usize| -> Expr {
            let mut e = &Expr::ratio(1, 2)
                * &(&(&dd(r, v, s, m) + &dd(s, m, r, v)) - &(&dd(r, m, s, v) + &dd(s, v, r, m)));
            for z in 0..n {
                e = &e + &(low.get(&[z, s, m]) * gam.get(&[z, r, v]));
                e = &e - &(low.get(&[z, s, v]) * gam.get(&[z, r, m]));
            }
            e
        };
        Tensor::from_fn(n, 4, |ix| &Expr::int(CURVATURE_SIGN) * &std(ix[3], ix[2], ix[0], ix[1]))
    }

    #[test]
    fn riemann_matches_second_derivative_formula() {
        for name in ["ex5_1", "ex5_2", "ex5_3", "ex5_4", "ex5_5"] {
            let c = chart(name);
            assert_eq!(riemann(&c), &second_derivative_riemann(&c), "{name}");
        }
    }

    #[test]
    fn metric_is_parallel() {
        for name in ["ex5_1", "ex5_3", "ex5_5"] {
            let c = chart(name);
            assert!(covariant_derivative(&c, c.metric()).is_zero(), "{name}");
        }
    }

    #[test]
    fn flat_chart_has_no_curvature() {
        let c = chart("flat4");
        assert!(christoffel(&c).is_zero());
        assert!(riemann(&c).is_zero());
        assert!(rank_at_most(ricci(&c), 0));
    }

    #[test]
    fn flat_covariant_derivative_is_partial() {
        let c = chart("flat3");
        let t = Expr::exp_coord(0, 1);
        let z = c.metric().scale(&t);
        let dz = covariant_derivative(&c, &z);
        let expected = Tensor::from_fn(3, 3, |ix| {
            if ix[0] == 0 && ix[1] == ix[2] {
                t.clone()
            } else {
                Expr::zero()
            }
        });
        assert_eq!(dz, expected);
    }

    #[test]
    fn exterior_derivative_normalisation() {
        let c = chart("flat4");
        let mut alpha = OneForm::zero(4);
        alpha.0[1] = Expr::coord(0);
        let d = exterior_derivative_oneform(&c, &alpha);
        let factor = Expr::ratio(EXTERIOR_DERIVATIVE_FACTOR.0, EXTERIOR_DERIVATIVE_FACTOR.1);
        assert_eq!(d.get(&[0, 1]), &factor);
        assert_eq!(d.get(&[1, 0]), &-&factor);
        assert_eq!(d.nonzero_count(), 2);
        let mut constant = OneForm::zero(5);
        constant.0[0] = Expr::ratio(-1, 2);
        assert!(is_closed(&chart("flat5"), &constant));
    }

    #[test]
    fn ricci_rank_by_minors_and_by_elimination() {
        let godel = chart("ex5_3");
        let s = ricci(&godel);
        assert!(rank_at_most(s, 1));
        assert!(!rank_at_most(s, 0));
        assert_eq!(generic_rank(s), 1);

        let c = chart("ex5_5");
        let half_kappa = &Expr::ratio(1, 2) * scalar_curvature(&c);
        let z = ricci(&c).sub(&c.metric().scale(&half_kappa));
        assert!(rank_at_most(&z, 1));
        assert_eq!(generic_rank(&z), 1);

        for name in ["ex5_1", "ex5_2", "ex5_4", "flat3"] {
            let c = chart(name);
            let s = ricci(&c);
            let r = generic_rank(s);
            for k in 0..=c.dim() {
                assert_eq!(rank_at_most(s, k), k >= r, "{name} k={k}");
            }
        }
    }
}
