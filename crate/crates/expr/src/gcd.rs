//! Multivariate polynomial gcd over the integers.
//!
//! Integer and monomial contents are split off first; what remains goes
//! through a handful of cheap shortcuts (shared constants, exact divisibility,
//! variables present on one side only) before falling back to a recursive
//! primitive pseudo-remainder sequence in a chosen main variable. Before the
//! fallback, a modular image test proves coprimality in the common case.

use dashu_int::IBig;

use crate::atom::Var;
use crate::poly::Poly;

/// Greatest common divisor with positive leading coefficient.
///
/// `gcd(0, 0)` is `0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return normalize_sign(b.clone());
    }
    if b.is_zero() {
        return normalize_sign(a.clone());
    }
    let (ca, cb) = (a.content(), b.content());
    let c = IBig::from(dashu_base::Gcd::gcd(&ca, &cb));
    if a.is_constant() || b.is_constant() {
        return Poly::constant(c);
    }
    let (ma, mb) = (a.monomial_content(), b.monomial_content());
    let m = ma.gcd(&mb);
    let a1 = a
        .div_monomial(&ma)
        .and_then(|p| p.div_int(&IBig::from(ca)))
        .expect("content divides");
    let b1 = b
        .div_monomial(&mb)
        .and_then(|p| p.div_int(&IBig::from(cb)))
        .expect("content divides");
    let g = gcd_primitive(&a1, &b1);
    normalize_sign(g.mul_term(&m, &c))
}

/// Positive-leading-coefficient associate of `p`.
pub fn normalize_sign(p: Poly) -> Poly {
    if p.leading_sign_negative() {
        p.neg()
    } else {
        p
    }
}

/// Primitive part with respect to the integers (content 1, positive lead).
pub fn primitive(p: &Poly) -> Poly {
    if p.is_zero() {
        return Poly::zero();
    }
    let c = IBig::from(p.content());
    normalize_sign(p.div_int(&c).expect("content divides"))
}

// Both inputs have integer content 1 and no monomial factor.
fn gcd_primitive(a: &Poly, b: &Poly) -> Poly {
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    let (a, b) = (normalize_sign(a.clone()), normalize_sign(b.clone()));
    if a == b {
        return a;
    }
    let (small, large) = if a.len() <= b.len() { (&a, &b) } else { (&b, &a) };
    if large.div_exact(small).is_some() {
        return small.clone();
    }
    let (va, vb) = (a.vars(), b.vars());
    let shared: Vec<Var> = va.iter().copied().filter(|v| vb.binary_search(v).is_ok()).collect();
    if shared.is_empty() || coprime_by_images(&a, &b, &shared) {
        return Poly::one();
    }
    if let Some(&v) = va.iter().find(|v| vb.binary_search(v).is_err()) {
        return gcd_with_coefficients(&a, v, &b);
    }
    if let Some(&v) = vb.iter().find(|v| va.binary_search(v).is_err()) {
        return gcd_with_coefficients(&b, v, &a);
    }
    // same variable set: pick the variable of smallest combined degree
    let v = *va
        .iter()
        .min_by_key(|&&v| a.degree_in(v).max(b.degree_in(v)))
        .expect("nonconstant");
    gcd_in_main_var(&a, &b, v)
}

// `v` occurs in `p` but not in `other`: the gcd divides every coefficient of `p` in `v`.
fn gcd_with_coefficients(p: &Poly, v: Var, other: &Poly) -> Poly {
    let mut g = other.clone();
    let mut coeffs = p.coeffs_in(v);
    coeffs.sort_by_key(|(_, c)| c.len());
    for (_, c) in coeffs {
        g = gcd(&c, &g);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Content of `p` seen as a polynomial in `v` over `Z[other vars]`.
fn content_in(p: &Poly, v: Var) -> Poly {
    let mut coeffs = p.coeffs_in(v);
    coeffs.sort_by_key(|(_, c)| c.len());
    let mut g = Poly::zero();
    for (_, c) in coeffs {
        g = gcd(&g, &c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive_part_in(p: &Poly, v: Var) -> (Poly, Poly) {
    let c = content_in(p, v);
    let pp = p.div_exact(&c).expect("content divides");
    (c, normalize_sign(pp))
}

fn gcd_in_main_var(a: &Poly, b: &Poly, v: Var) -> Poly {
    let (ca, pa) = primitive_part_in(a, v);
    let (cb, pb) = primitive_part_in(b, v);
    let content = gcd(&ca, &cb);
    let (mut f, mut g) = if pa.degree_in(v) >= pb.degree_in(v) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    let pp = loop {
        if g.degree_in(v) == 0 {
            break Poly::one();
        }
        let r = pseudo_remainder(&f, &g, v);
        if r.is_zero() {
            break g;
        }
        if r.degree_in(v) == 0 {
            break Poly::one();
        }
        let (_, r) = primitive_part_in(&r, v);
        f = g;
        g = r;
    };
    normalize_sign(content.mul(&pp))
}

const PRIME: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b);
        }
        b = mul_mod(b, b);
        e >>= 1;
    }
    acc
}

fn ibig_mod(c: &IBig) -> u64 {
    let m = IBig::from(PRIME);
    let r = ((c % &m) + &m) % &m;
    u64::try_from(r).expect("reduced below the prime")
}

/// Fixed evaluation point for a variable; any value works, the test is one-sided.
fn point(v: Var) -> u64 {
    let x = (v.0 as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    x % (PRIME - 2) + 2
}

/// Image of `p` in `F_p[v]` with every other variable evaluated at [`point`].
fn image_in(p: &Poly, v: Var) -> Vec<u64> {
    let mut out = vec![0u64; p.degree_in(v) as usize + 1];
    for t in p.terms() {
        let mut val = ibig_mod(&t.coeff);
        let mut k = 0;
        for (w, e) in t.mono.iter() {
            if w == v {
                k = e as usize;
            } else {
                val = mul_mod(val, pow_mod(point(w), e as u64));
            }
        }
        out[k] = (out[k] + val) % PRIME;
    }
    out
}

fn trim_mod(p: &mut Vec<u64>) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

fn univariate_gcd_degree(mut f: Vec<u64>, mut g: Vec<u64>) -> usize {
    trim_mod(&mut f);
    trim_mod(&mut g);
    while !g.is_empty() {
        let inv = pow_mod(*g.last().unwrap(), PRIME - 2);
        while f.len() >= g.len() {
            let q = mul_mod(*f.last().unwrap(), inv);
            let shift = f.len() - g.len();
            for (i, &c) in g.iter().enumerate() {
                f[shift + i] = (f[shift + i] + PRIME - mul_mod(q, c)) % PRIME;
            }
            trim_mod(&mut f);
        }
        std::mem::swap(&mut f, &mut g);
    }
    f.len().saturating_sub(1)
}

/// True only if `gcd(a, b)` is provably constant. For each shared variable `v`
/// the images keep their `v`-degree, so the true gcd's `v`-degree is at most
/// that of the image gcd; a constant image gcd in every `v` rules out every
/// variable of the gcd.
fn coprime_by_images(a: &Poly, b: &Poly, shared: &[Var]) -> bool {
    shared.iter().all(|&v| {
        let (fa, fb) = (image_in(a, v), image_in(b, v));
        let kept = fa.last() != Some(&0) && fb.last() != Some(&0);
        kept && univariate_gcd_degree(fa, fb) == 0
    })
}

/// `lc(g)^k * f mod g` in the main variable `v`.
fn pseudo_remainder(f: &Poly, g: &Poly, v: Var) -> Poly {
    let (dg, lc_g) = g.lead_coeff_in(v);
    let mut r = f.clone();
    loop {
        let (dr, lc_r) = r.lead_coeff_in(v);
        if r.is_zero() || dr < dg {
            return r;
        }
        let shift = crate::poly::Monomial::var(v, dr - dg);
        let sub = g.mul(&lc_r).mul_term(&shift, &IBig::ONE);
        r = r.mul(&lc_g).sub(&sub);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atom::Atom;

    fn x() -> Poly {
        Poly::atom(Atom::Coord(0))
    }
    fn y() -> Poly {
        Poly::atom(Atom::Coord(1))
    }
    fn t() -> Poly {
        Poly::atom(Atom::Exp(0))
    }
    fn c(v: i64) -> Poly {
        Poly::constant(IBig::from(v))
    }

    #[test]
    fn integer_and_monomial_content() {
        let a = x().mul(&t()).scale(&IBig::from(6));
        let b = x().mul(&x()).scale(&IBig::from(4));
        assert_eq!(gcd(&a, &b), x().scale(&IBig::from(2)));
    }

    #[test]
    fn shared_binomial_factor() {
        let f = t().add(&c(1));
        let a = f.pow(3).mul(&x());
        let b = f.pow(2).mul(&t().sub(&c(2)));
        assert_eq!(gcd(&a, &b), f.pow(2));
    }

    #[test]
    fn multivariate_common_factor() {
        let common = x().mul(&y()).add(&t()).sub(&c(3));
        let a = common.mul(&x().add(&y()));
        let b = common.mul(&x().sub(&t()).add(&c(5)));
        assert_eq!(gcd(&a, &b), normalize_sign(common));
    }

    #[test]
    fn coprime_inputs() {
        let a = x().add(&c(1));
        let b = x().sub(&c(1));
        assert!(gcd(&a, &b).is_one());
    }

    #[test]
    fn image_test_is_one_sided() {
        let f = x().mul(&y()).add(&t()).sub(&c(3));
        let a = f.mul(&x().add(&c(2)));
        let b = f.mul(&y().sub(&t()));
        let shared = [Atom::Coord(0), Atom::Coord(1), Atom::Exp(0)].map(|a| Poly::atom(a).vars()[0]);
        assert!(!coprime_by_images(&a, &b, &shared));
        assert!(coprime_by_images(&x().add(&c(2)), &y().sub(&t()).add(&x()), &shared[..1]));
        assert_eq!(univariate_gcd_degree(vec![PRIME - 1, 0, 1], vec![1, 1]), 1);
    }

    #[test]
    fn zero_arguments() {
        assert_eq!(gcd(&Poly::zero(), &x().neg()), x());
        assert!(gcd(&Poly::zero(), &Poly::zero()).is_zero());
    }
}
