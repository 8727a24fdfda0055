//! Canonical rational functions.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use dashu_int::IBig;

use crate::atom::{Atom, Context, Var};
use crate::error::ExprError;
use crate::gcd::{gcd, normalize_sign};
use crate::poly::{Monomial, Poly};

/// An exact rational function `num / den` over the atoms.
///
/// Invariants: `den != 0`, `gcd(num, den) = 1` over the integers (so integer
/// contents are coprime as well), and the leading coefficient of `den` is
/// positive. Zero is `0 / 1`. Structural equality therefore decides equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Expr {
    num: Poly,
    den: Poly,
}

impl Expr {
    pub fn zero() -> Self {
        Expr {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Expr::int(1)
    }

    pub fn int(v: i64) -> Self {
        Expr {
            num: Poly::constant(IBig::from(v)),
            den: Poly::one(),
        }
    }

    /// `p / q` for integers; panics if `q == 0`.
    pub fn ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Expr::from_parts(Poly::constant(IBig::from(p)), Poly::constant(IBig::from(q)))
    }

    pub fn from_ibig(v: IBig) -> Self {
        Expr {
            num: Poly::constant(v),
            den: Poly::one(),
        }
    }

    pub fn atom(atom: Atom) -> Self {
        Expr {
            num: Poly::atom(atom),
            den: Poly::one(),
        }
    }

    pub fn coord(i: usize) -> Self {
        Expr::atom(Atom::Coord(i as u16))
    }

    /// `exp(k * x_i)`.
    pub fn exp_coord(i: usize, k: i32) -> Self {
        Expr::atom(Atom::Exp(i as u16)).powi(k)
    }

    pub fn param(j: usize) -> Self {
        Expr::atom(Atom::Param(j as u16))
    }

    pub fn from_poly(p: Poly) -> Self {
        Expr {
            num: p,
            den: Poly::one(),
        }
    }

    /// Canonicalises an arbitrary quotient. Panics if `den` is zero.
    pub fn from_parts(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Expr::zero();
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        Expr::with_sign(num, den)
    }

    fn with_sign(num: Poly, den: Poly) -> Self {
        if den.leading_sign_negative() {
            Expr {
                num: num.neg(),
                den: den.neg(),
            }
        } else {
            Expr { num, den }
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// Atoms occurring in numerator or denominator, sorted.
    pub fn atoms(&self) -> Vec<Atom> {
        let mut vars = self.num.vars();
        for v in self.den.vars() {
            if let Err(pos) = vars.binary_search(&v) {
                vars.insert(pos, v);
            }
        }
        let mut atoms: Vec<Atom> = vars.into_iter().map(Var::atom).collect();
        atoms.sort();
        atoms
    }

    pub fn add_ref(&self, other: &Expr) -> Expr {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            let num = self.num.add(&other.num);
            if self.den.is_one() {
                return Expr {
                    num,
                    den: Poly::one(),
                };
            }
            return Expr::reduce_against(num, self.den.clone(), &self.den);
        }
        if self.den.is_one() {
            let num = self.num.mul(&other.den).add(&other.num);
            return Expr {
                num,
                den: other.den.clone(),
            };
        }
        if other.den.is_one() {
            let num = other.num.mul(&self.den).add(&self.num);
            return Expr {
                num,
                den: self.den.clone(),
            };
        }
        // Henrici: only the gcd of the denominators can cancel.
        let g = gcd(&self.den, &other.den);
        if g.is_one() {
            let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
            if num.is_zero() {
                return Expr::zero();
            }
            return Expr::with_sign(num, self.den.mul(&other.den));
        }
        let b1 = self.den.div_exact(&g).expect("gcd divides");
        let d1 = other.den.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&d1).add(&other.num.mul(&b1));
        let den = self.den.mul(&d1);
        Expr::reduce_against(num, den, &g)
    }

    // `num / den` where any common factor must divide `g`.
    fn reduce_against(num: Poly, den: Poly, g: &Poly) -> Expr {
        if num.is_zero() {
            return Expr::zero();
        }
        let h = gcd(&num, g);
        if h.is_one() {
            return Expr::with_sign(num, den);
        }
        Expr::with_sign(
            num.div_exact(&h).expect("gcd divides"),
            den.div_exact(&h).expect("gcd divides"),
        )
    }

    pub fn sub_ref(&self, other: &Expr) -> Expr {
        self.add_ref(&other.neg_ref())
    }

    pub fn neg_ref(&self) -> Expr {
        Expr {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul_ref(&self, other: &Expr) -> Expr {
        if self.is_zero() || other.is_zero() {
            return Expr::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return Expr {
                num: self.num.mul(&other.num),
                den: Poly::one(),
            };
        }
        let (a, b) = cancel(&self.num, &other.den);
        let (c, d) = cancel(&other.num, &self.den);
        Expr::with_sign(a.mul(&c), d.mul(&b))
    }

    pub fn recip(&self) -> Result<Expr, ExprError> {
        if self.is_zero() {
            return Err(ExprError::DivisionByZero);
        }
        Ok(Expr::with_sign(self.den.clone(), self.num.clone()))
    }

    pub fn div_ref(&self, other: &Expr) -> Result<Expr, ExprError> {
        Ok(self.mul_ref(&other.recip()?))
    }

    /// Integer power; negative exponents of zero panic.
    pub fn powi(&self, e: i32) -> Expr {
        if e < 0 {
            return self
                .recip()
                .expect("negative power of zero")
                .powi(-e);
        }
        let e = e as u32;
        Expr {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    pub fn scale_int(&self, k: i64) -> Expr {
        self.mul_ref(&Expr::int(k))
    }

    /// Partial derivative with respect to coordinate `i`; `t_i' = t_i`.
    pub fn differentiate(&self, i: usize) -> Expr {
        let dn = poly_derivative(&self.num, i);
        if self.den.is_one() {
            return Expr {
                num: dn,
                den: Poly::one(),
            };
        }
        let dd = poly_derivative(&self.den, i);
        if dd.is_zero() {
            return Expr::from_parts(dn, self.den.clone());
        }
        // (n' d - n d') / d^2; a repeated factor of d may cancel more than once
        let num = dn.mul(&self.den).sub(&self.num.mul(&dd));
        Expr::from_parts(num, self.den.mul(&self.den))
    }

    /// Substitutes `value` for an atom.
    pub fn substitute(&self, atom: Atom, value: &Expr) -> Expr {
        let v: Var = atom.into();
        let n = substitute_poly(&self.num, v, value);
        let d = substitute_poly(&self.den, v, value);
        n.div_ref(&d).expect("substitution made the denominator vanish")
    }

    pub fn display<'a>(&'a self, ctx: &'a Context) -> crate::print::ExprDisplay<'a> {
        crate::print::ExprDisplay { expr: self, ctx }
    }

    /// Renders with `ctx`; shorthand for `display(ctx).to_string()`.
    pub fn render(&self, ctx: &Context) -> String {
        self.display(ctx).to_string()
    }

    /// Leading term of the denominator, used for Laurent-style printing.
    pub(crate) fn monomial_denominator(&self) -> Option<(&Monomial, &IBig)> {
        match self.den.terms() {
            [t] => Some((&t.mono, &t.coeff)),
            _ => None,
        }
    }
}

fn cancel(num: &Poly, den: &Poly) -> (Poly, Poly) {
    if den.is_one() || num.is_one() {
        return (num.clone(), den.clone());
    }
    let g = gcd(num, den);
    if g.is_one() {
        (num.clone(), den.clone())
    } else {
        (
            num.div_exact(&g).expect("gcd divides"),
            den.div_exact(&g).expect("gcd divides"),
        )
    }
}

fn poly_derivative(p: &Poly, i: usize) -> Poly {
    let x: Var = Atom::Coord(i as u16).into();
    let t: Var = Atom::Exp(i as u16).into();
    // d/dx (x^a t^b) = a x^(a-1) t^b + b x^a t^b
    let from_x = p.diff_var(x);
    let from_t = p.diff_var(t).mul(&Poly::atom(Atom::Exp(i as u16)));
    from_x.add(&from_t)
}

fn substitute_poly(p: &Poly, v: Var, value: &Expr) -> Expr {
    let mut acc = Expr::zero();
    for (e, c) in p.coeffs_in(v) {
        acc = acc.add_ref(&Expr::from_poly(c).mul_ref(&value.powi(e as i32)));
    }
    acc
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ctx = Context::default();
        write!(f, "{}", self.display(&ctx))
    }
}

impl Default for Expr {
    fn default() -> Self {
        Expr::zero()
    }
}

impl From<i64> for Expr {
    fn from(v: i64) -> Self {
        Expr::int(v)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $imp:ident) => {
        impl $tr<&Expr> for &Expr {
            type Output = Expr;
            fn $method(self, rhs: &Expr) -> Expr {
                self.$imp(rhs)
            }
        }
        impl $tr<Expr> for Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                (&self).$imp(&rhs)
            }
        }
        impl $tr<&Expr> for Expr {
            type Output = Expr;
            fn $method(self, rhs: &Expr) -> Expr {
                (&self).$imp(rhs)
            }
        }
        impl $tr<Expr> for &Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                self.$imp(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

/// Division panics on a zero divisor; use [`Expr::div_ref`] for a checked version.
impl Div<&Expr> for &Expr {
    type Output = Expr;
    fn div(self, rhs: &Expr) -> Expr {
        self.div_ref(rhs).expect("division by zero")
    }
}

impl Div<Expr> for Expr {
    type Output = Expr;
    fn div(self, rhs: Expr) -> Expr {
        &self / &rhs
    }
}

impl Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        self.neg_ref()
    }
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        self.neg_ref()
    }
}

impl std::iter::Sum for Expr {
    fn sum<I: Iterator<Item = Expr>>(iter: I) -> Self {
        iter.fold(Expr::zero(), |acc, e| acc.add_ref(&e))
    }
}

/// Positive-leading-coefficient associate, re-exported for callers building
/// canonical polynomials by hand.
pub fn canonical_poly(p: Poly) -> Poly {
    normalize_sign(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x1() -> Expr {
        Expr::coord(0)
    }
    fn t1() -> Expr {
        Expr::exp_coord(0, 1)
    }

    #[test]
    fn additive_and_multiplicative_inverse() {
        assert!((&x1() + &(-&x1())).is_zero());
        assert!((&t1() * &t1().powi(-1)).is_one());
    }

    #[test]
    fn laurent_storage() {
        let k = &Expr::ratio(7, 2) * &Expr::exp_coord(0, -1);
        assert_eq!(k.numerator(), &Poly::constant(IBig::from(7)));
        let two_t = Poly::atom(Atom::Exp(0)).scale(&IBig::from(2));
        assert_eq!(k.denominator(), &two_t);
    }

    #[test]
    fn derivative_rules() {
        assert_eq!(t1().differentiate(0), t1());
        assert_eq!((&x1() * &t1()).differentiate(0), &t1() + &(&x1() * &t1()));
        assert!(t1().differentiate(1).is_zero());
        assert!(Expr::param(0).differentiate(0).is_zero());
        // d/dx1 (-3/(2 x1^3)) = 9/(2 x1^4)
        let k = &Expr::ratio(-3, 2) * &x1().powi(-3);
        assert_eq!(k.differentiate(0), &Expr::ratio(9, 2) * &x1().powi(-4));
    }

    #[test]
    fn sign_normalisation() {
        let a = Expr::from_parts(Poly::one(), Poly::atom(Atom::Coord(0)).neg());
        assert_eq!(a, -&x1().powi(-1));
        assert!(!a.denominator().leading_sign_negative());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(x1().div_ref(&Expr::zero()), Err(ExprError::DivisionByZero));
    }
}
