//! Text rendering that the parser reads back to the same canonical form.
//!
//! A monomial denominator is folded into the numerator terms with negative
//! exponents (`7/2 * exp(-x1)`); otherwise the output is `(num) / (den)`.

use std::fmt;

use dashu_base::Signed;

use dashu_ratio::RBig;

use crate::atom::{Atom, Context};
use crate::expr::Expr;
use crate::poly::{Monomial, Poly};

pub struct ExprDisplay<'a> {
    pub(crate) expr: &'a Expr,
    pub(crate) ctx: &'a Context,
}

type Factors = Vec<(Atom, i64)>;

fn atom_rank(a: &Atom) -> (u8, u16) {
    match *a {
        Atom::Param(j) => (0, j),
        Atom::Coord(i) => (1, i),
        Atom::Exp(i) => (2, i),
    }
}

fn factors_of(m: &Monomial) -> Factors {
    m.iter().map(|(v, e)| (v.atom(), e as i64)).collect()
}

fn laurent(n: &Monomial, d: &Monomial) -> Factors {
    let mut out = factors_of(n);
    for (v, e) in d.iter() {
        let atom = v.atom();
        match out.iter_mut().find(|(a, _)| *a == atom) {
            Some(slot) => slot.1 -= e as i64,
            None => out.push((atom, -(e as i64))),
        }
    }
    out.retain(|&(_, e)| e != 0);
    out
}

impl ExprDisplay<'_> {
    fn write_term(
        &self,
        f: &mut fmt::Formatter<'_>,
        first: bool,
        coeff: &RBig,
        mut factors: Factors,
    ) -> fmt::Result {
        let negative = coeff.is_negative();
        match (first, negative) {
            (true, true) => write!(f, "-")?,
            (true, false) => {}
            (false, true) => write!(f, " - ")?,
            (false, false) => write!(f, " + ")?,
        }
        let mag = if negative { -coeff } else { coeff.clone() };
        factors.sort_by_key(|(a, _)| atom_rank(a));
        let mut need_sep = false;
        if factors.is_empty() || mag != RBig::ONE {
            write!(f, "{mag}")?;
            need_sep = true;
        }
        for (atom, e) in factors {
            if need_sep {
                write!(f, " * ")?;
            }
            self.ctx.write_atom(f, atom, e)?;
            need_sep = true;
        }
        Ok(())
    }

    fn write_poly(&self, f: &mut fmt::Formatter<'_>, p: &Poly) -> fmt::Result {
        for (k, t) in p.terms().iter().enumerate() {
            self.write_term(f, k == 0, &RBig::from(t.coeff.clone()), factors_of(&t.mono))?;
        }
        Ok(())
    }
}

impl fmt::Display for ExprDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = self.expr;
        if e.is_zero() {
            return write!(f, "0");
        }
        if let Some((dm, dc)) = e.monomial_denominator() {
            let dc = RBig::from(dc.clone());
            for (k, t) in e.numerator().terms().iter().enumerate() {
                let c = RBig::from(t.coeff.clone()) / &dc;
                self.write_term(f, k == 0, &c, laurent(&t.mono, dm))?;
            }
            return Ok(());
        }
        let num = e.numerator();
        if num.len() > 1 {
            write!(f, "(")?;
            self.write_poly(f, num)?;
            write!(f, ")")?;
        } else {
            self.write_poly(f, num)?;
        }
        write!(f, " / (")?;
        self.write_poly(f, e.denominator())?;
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_expression;

    fn show(src: &str, ctx: &Context) -> String {
        parse_expression(src, ctx).unwrap().render(ctx)
    }

    #[test]
    fn laurent_forms() {
        let ctx = Context::numbered(2);
        assert_eq!(show("7/2 * exp(-1*x1)", &ctx), "7/2 * exp(-x1)");
        assert_eq!(show("-3/(2*x1^3)", &ctx), "-3/2 * x1^-3");
        assert_eq!(show("x1 + exp(2*x2)", &ctx), "exp(2*x2) + x1");
        assert_eq!(show("0*x1", &ctx), "0");
    }

    #[test]
    fn quotient_form() {
        let ctx = Context::numbered(1);
        assert_eq!(show("exp(2*x1)/(1+exp(x1))", &ctx), "exp(2*x1) / (exp(x1) + 1)");
    }

    #[test]
    fn parameters_lead_factors() {
        let ctx = Context::new(&["x", "y"], &["rho"]);
        assert_eq!(show("x*rho^2", &ctx), "rho^2 * x");
    }
}
