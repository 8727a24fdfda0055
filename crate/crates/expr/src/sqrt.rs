//! Exact square roots of perfect squares.

use dashu_base::{Signed, SquareRoot, UnsignedAbs};
use dashu_int::IBig;

use crate::expr::Expr;
use crate::poly::{Monomial, Poly, Term};

fn int_sqrt(c: &IBig) -> Option<IBig> {
    if c.is_negative() {
        return None;
    }
    let r = c.unsigned_abs().sqrt();
    (&r * &r == c.unsigned_abs()).then(|| IBig::from(r))
}

fn mono_sqrt(m: &Monomial) -> Option<Monomial> {
    let mut out = Monomial::one();
    for (v, e) in m.iter() {
        if e % 2 != 0 {
            return None;
        }
        out = out.mul(&Monomial::var(v, e / 2));
    }
    Some(out)
}

impl Poly {
    /// `r` with positive leading coefficient and `r * r == self`, if one exists.
    pub fn sqrt_exact(&self) -> Option<Poly> {
        let Some(lead) = self.leading() else {
            return Some(Poly::zero());
        };
        let lc = int_sqrt(&lead.coeff)?;
        let lm = mono_sqrt(&lead.mono)?;
        let floor = &self.trailing().expect("nonzero").mono;
        let two_lead = Term {
            mono: lm.clone(),
            coeff: &lc * IBig::from(2),
        };
        let mut root = Poly::monomial(lm, lc);
        let mut rem = self.sub(&root.mul(&root));
        // each new root term is the leading remainder term over twice the root's lead
        while let Some(top) = rem.leading() {
            let mono = top.mono.div(&two_lead.mono)?;
            if mono.mul(&mono) < *floor {
                return None;
            }
            let (q, r) = (&top.coeff / &two_lead.coeff, &top.coeff % &two_lead.coeff);
            if r != IBig::ZERO {
                return None;
            }
            let t = Poly::monomial(mono, q);
            let step = root.add(&root).add(&t).mul(&t);
            root = root.add(&t);
            rem = rem.sub(&step);
        }
        Some(root)
    }
}

impl Expr {
    /// Exact square root with positive-leading numerator, if `self` is a perfect square.
    pub fn sqrt_exact(&self) -> Option<Expr> {
        let n = self.numerator().sqrt_exact()?;
        let d = self.denominator().sqrt_exact()?;
        Some(Expr::from_parts(n, d))
    }
}

#[cfg(test)]
mod tests {
    use crate::atom::Context;
    use crate::parse::parse_expression;

    fn p(s: &str) -> crate::Expr {
        parse_expression(s, &Context::new(&["x1", "x2"], &["a"])).unwrap()
    }

    #[test]
    fn perfect_squares() {
        let r = p("(3*x1 - 2*exp(x2) + a)^2 / (4*(1+x1)^2)").sqrt_exact().unwrap();
        assert_eq!(&r * &r, p("(3*x1 - 2*exp(x2) + a)^2 / (4*(1+x1)^2)"));
        assert_eq!(p("9/4").sqrt_exact(), Some(p("3/2")));
        assert!(p("0").sqrt_exact().unwrap().is_zero());
    }

    #[test]
    fn non_squares() {
        assert_eq!(p("2").sqrt_exact(), None);
        assert_eq!(p("-x1^2").sqrt_exact(), None);
        assert_eq!(p("x1^2 + 1").sqrt_exact(), None);
        assert_eq!(p("x1^2 + x1").sqrt_exact(), None);
        assert_eq!(p("x1").sqrt_exact(), None);
    }
}
