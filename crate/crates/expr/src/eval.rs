//! Exact evaluation at rational points.

use std::collections::HashMap;

use dashu_int::IBig;
use dashu_ratio::RBig;

use crate::atom::Atom;
use crate::error::ExprError;
use crate::expr::Expr;
use crate::poly::Poly;

/// Values for atoms. Lookup failures surface as [`ExprError::MissingAtom`].
pub type Assignment = HashMap<Atom, RBig>;

impl Poly {
    /// Value under `values`; every atom of `self` must be assigned.
    pub fn evaluate(&self, values: &Assignment) -> Result<RBig, ExprError> {
        let mut acc = RBig::ZERO;
        for t in self.terms() {
            let mut v = RBig::from(t.coeff.clone());
            for (var, e) in t.mono.iter() {
                let atom = var.atom();
                let x = values.get(&atom).ok_or(ExprError::MissingAtom(atom))?;
                v *= x.pow(e as isize);
            }
            acc += v;
        }
        Ok(acc)
    }
}

impl Expr {
    /// Exact value of numerator over denominator.
    pub fn evaluate_rational(&self, values: &Assignment) -> Result<RBig, ExprError> {
        let d = self.denominator().evaluate(values)?;
        if d == RBig::ZERO {
            return Err(ExprError::ZeroDenominator);
        }
        Ok(self.numerator().evaluate(values)? / d)
    }

    pub fn from_rbig(r: &RBig) -> Expr {
        let n = Poly::constant(r.numerator().clone());
        let d = Poly::constant(IBig::from(r.denominator().clone()));
        Expr::from_parts(n, d)
    }

    /// The rational value if `self` is constant.
    pub fn as_rational(&self) -> Option<RBig> {
        let n = self.numerator().as_constant()?;
        let d = self.denominator().as_constant()?;
        Some(RBig::from(n) / RBig::from(d))
    }
}
