//! Sparse multivariate polynomials with integer coefficients.
//!
//! Terms are kept sorted in strictly descending lexicographic monomial order
//! (the variable with the largest id is the most significant) and never carry
//! a zero coefficient, so structural equality is polynomial equality.

use std::cmp::Ordering;

use dashu_base::{Gcd, Signed, UnsignedAbs};
use dashu_int::{IBig, UBig};
use smallvec::SmallVec;

use crate::atom::{Atom, Var};

/// Power product of variables: `(var, exponent)` pairs sorted by var, exponents > 0.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(pub(crate) SmallVec<[(Var, u32); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: Var, exp: u32) -> Self {
        if exp == 0 {
            return Monomial::one();
        }
        let mut m = SmallVec::new();
        m.push((v, exp));
        Monomial(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0
            .iter()
            .find(|(w, _)| *w == v)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.0.iter().copied()
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&(_, e)| e as u64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = SmallVec::with_capacity(self.0.len());
        let mut j = 0;
        let b = &other.0;
        for &(v, e) in self.0.iter() {
            if j < b.len() && b[j].0 < v {
                return None;
            }
            if j < b.len() && b[j].0 == v {
                match e.cmp(&b[j].1) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => out.push((v, e - b[j].1)),
                }
                j += 1;
            } else {
                out.push((v, e));
            }
        }
        if j < b.len() {
            return None;
        }
        Some(Monomial(out))
    }

    /// Componentwise minimum of exponents.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = SmallVec::new();
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1.min(b[j].1)));
                    i += 1;
                    j += 1;
                }
            }
        }
        Monomial(out)
    }

    fn without(&self, v: Var) -> Monomial {
        Monomial(self.0.iter().copied().filter(|&(w, _)| w != v).collect())
    }

    fn with_exponent(&self, v: Var, exp: u32) -> Monomial {
        let mut m = self.without(v);
        if exp > 0 {
            let pos = m.0.iter().position(|&(w, _)| w > v).unwrap_or(m.0.len());
            m.0.insert(pos, (v, exp));
        }
        m
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (a.len(), b.len());
        while i > 0 && j > 0 {
            let (va, ea) = a[i - 1];
            let (vb, eb) = b[j - 1];
            if va != vb {
                return va.cmp(&vb);
            }
            if ea != eb {
                return ea.cmp(&eb);
            }
            i -= 1;
            j -= 1;
        }
        (i > 0).cmp(&(j > 0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub mono: Monomial,
    pub coeff: IBig,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: Vec<Term>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(IBig::ONE)
    }

    pub fn constant(c: IBig) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly {
                terms: vec![Term {
                    mono: Monomial::one(),
                    coeff: c,
                }],
            }
        }
    }

    pub fn monomial(mono: Monomial, coeff: IBig) -> Self {
        if coeff.is_zero() {
            Poly::zero()
        } else {
            Poly {
                terms: vec![Term { mono, coeff }],
            }
        }
    }

    pub fn atom(atom: Atom) -> Self {
        Poly::monomial(Monomial::var(atom.into(), 1), IBig::ONE)
    }

    /// Builds from unsorted terms, combining duplicates and dropping zeros.
    pub fn from_terms(mut terms: Vec<Term>) -> Self {
        terms.sort_unstable_by(|a, b| b.mono.cmp(&a.mono));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.mono == t.mono => last.coeff += t.coeff,
                _ => {
                    if let Some(last) = out.last() {
                        if last.coeff.is_zero() {
                            out.pop();
                        }
                    }
                    out.push(t);
                }
            }
        }
        if out.last().is_some_and(|t| t.coeff.is_zero()) {
            out.pop();
        }
        Poly { terms: out }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].mono.is_one() && self.terms[0].coeff.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].mono.is_one())
    }

    /// Constant value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<IBig> {
        match self.terms.as_slice() {
            [] => Some(IBig::ZERO),
            [t] if t.mono.is_one() => Some(t.coeff.clone()),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn trailing(&self) -> Option<&Term> {
        self.terms.last()
    }

    pub fn leading_sign_negative(&self) -> bool {
        self.terms.first().is_some_and(|t| t.coeff.is_negative())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    mono: t.mono.clone(),
                    coeff: -&t.coeff,
                })
                .collect(),
        }
    }

    fn merge(&self, other: &Poly, negate_other: bool) -> Poly {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let other_coeff = |c: &IBig| if negate_other { -c } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].mono.cmp(&b[j].mono) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(Term {
                        mono: b[j].mono.clone(),
                        coeff: other_coeff(&b[j].coeff),
                    });
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        &a[i].coeff - &b[j].coeff
                    } else {
                        &a[i].coeff + &b[j].coeff
                    };
                    if !c.is_zero() {
                        out.push(Term {
                            mono: a[i].mono.clone(),
                            coeff: c,
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|t| Term {
            mono: t.mono.clone(),
            coeff: other_coeff(&t.coeff),
        }));
        Poly { terms: out }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.merge(other, true)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if self.terms.len() == 1 {
            let t = &self.terms[0];
            return other.mul_term(&t.mono, &t.coeff);
        }
        if other.terms.len() == 1 {
            let t = &other.terms[0];
            return self.mul_term(&t.mono, &t.coeff);
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                terms.push(Term {
                    mono: a.mono.mul(&b.mono),
                    coeff: &a.coeff * &b.coeff,
                });
            }
        }
        Poly::from_terms(terms)
    }

    /// Multiplication by a single term keeps the order, so no sort is needed.
    pub fn mul_term(&self, mono: &Monomial, coeff: &IBig) -> Poly {
        if coeff.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    mono: t.mono.mul(mono),
                    coeff: &t.coeff * coeff,
                })
                .collect(),
        }
    }

    pub fn scale(&self, c: &IBig) -> Poly {
        self.mul_term(&Monomial::one(), c)
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact division by an integer; `None` if some coefficient is not divisible.
    pub fn div_int(&self, c: &IBig) -> Option<Poly> {
        if c.is_one() {
            return Some(self.clone());
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let (q, r) = (&t.coeff / c, &t.coeff % c);
            if !r.is_zero() {
                return None;
            }
            terms.push(Term {
                mono: t.mono.clone(),
                coeff: q,
            });
        }
        Some(Poly { terms })
    }

    pub fn div_monomial(&self, m: &Monomial) -> Option<Poly> {
        if m.is_one() {
            return Some(self.clone());
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            terms.push(Term {
                mono: t.mono.div(m)?,
                coeff: t.coeff.clone(),
            });
        }
        Some(Poly { terms })
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if d.terms.len() == 1 {
            let t = &d.terms[0];
            return self.div_monomial(&t.mono)?.div_int(&t.coeff);
        }
        if self.terms.len() < d.terms.len() {
            return None;
        }
        // the lex-smallest term of a product is the product of the smallest terms
        let (st, dt) = (self.trailing()?, d.trailing()?);
        st.mono.div(&dt.mono)?;
        if !(&st.coeff % &dt.coeff).is_zero() {
            return None;
        }
        let bound = self.max_exponents();
        let dmax = d.max_exponents();
        let lead = d.terms[0].clone();
        let mut rem = self.clone();
        let mut quotient = Vec::new();
        while let Some(lt) = rem.terms.first() {
            let mono = lt.mono.div(&lead.mono)?;
            for (v, e) in mono.iter() {
                if e + exponent_in(&dmax, v) > exponent_in(&bound, v) {
                    return None;
                }
            }
            let (q, r) = (&lt.coeff / &lead.coeff, &lt.coeff % &lead.coeff);
            if !r.is_zero() {
                return None;
            }
            rem = rem.sub(&d.mul_term(&mono, &q));
            quotient.push(Term { mono, coeff: q });
        }
        Some(Poly { terms: quotient })
    }

    fn max_exponents(&self) -> Vec<(Var, u32)> {
        let mut out: Vec<(Var, u32)> = Vec::new();
        for t in &self.terms {
            for (v, e) in t.mono.iter() {
                match out.iter_mut().find(|(w, _)| *w == v) {
                    Some(slot) => slot.1 = slot.1.max(e),
                    None => out.push((v, e)),
                }
            }
        }
        out
    }

    /// Nonnegative gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> UBig {
        let mut g = UBig::ZERO;
        for t in &self.terms {
            g = if g.is_zero() {
                (&t.coeff).unsigned_abs()
            } else {
                (&g).gcd(&t.coeff)
            };
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut iter = self.terms.iter();
        let Some(first) = iter.next() else {
            return Monomial::one();
        };
        let mut m = first.mono.clone();
        for t in iter {
            if m.is_one() {
                break;
            }
            m = m.gcd(&t.mono);
        }
        m
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut out: Vec<Var> = Vec::new();
        for t in &self.terms {
            for (v, _) in t.mono.iter() {
                if let Err(pos) = out.binary_search(&v) {
                    out.insert(pos, v);
                }
            }
        }
        out
    }

    pub fn atoms(&self) -> Vec<Atom> {
        self.vars().into_iter().map(Var::atom).collect()
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.iter().map(|t| t.mono.exponent(v)).max().unwrap_or(0)
    }

    /// Coefficients with respect to `v`, highest degree first.
    pub fn coeffs_in(&self, v: Var) -> Vec<(u32, Poly)> {
        let mut groups: Vec<(u32, Vec<Term>)> = Vec::new();
        for t in &self.terms {
            let e = t.mono.exponent(v);
            let term = Term {
                mono: t.mono.without(v),
                coeff: t.coeff.clone(),
            };
            match groups.iter_mut().find(|(d, _)| *d == e) {
                Some((_, ts)) => ts.push(term),
                None => groups.push((e, vec![term])),
            }
        }
        groups.sort_unstable_by_key(|g| std::cmp::Reverse(g.0));
        groups
            .into_iter()
            .map(|(e, terms)| (e, Poly { terms }))
            .collect()
    }

    /// Leading coefficient with respect to `v`.
    pub fn lead_coeff_in(&self, v: Var) -> (u32, Poly) {
        let d = self.degree_in(v);
        let terms: Vec<Term> = self
            .terms
            .iter()
            .filter(|t| t.mono.exponent(v) == d)
            .map(|t| Term {
                mono: t.mono.without(v),
                coeff: t.coeff.clone(),
            })
            .collect();
        (d, Poly { terms })
    }

    /// Partial derivative with respect to a variable treated as an indeterminate.
    pub fn diff_var(&self, v: Var) -> Poly {
        let mut terms = Vec::new();
        for t in &self.terms {
            let e = t.mono.exponent(v);
            if e > 0 {
                terms.push(Term {
                    mono: t.mono.with_exponent(v, e - 1),
                    coeff: &t.coeff * IBig::from(e),
                });
            }
        }
        Poly::from_terms(terms)
    }

    /// `sum_k c_k * v^k` from coefficient list.
    pub fn from_coeffs_in(v: Var, coeffs: &[(u32, Poly)]) -> Poly {
        let mut terms = Vec::new();
        for (e, c) in coeffs {
            let m = Monomial::var(v, *e);
            for t in &c.terms {
                terms.push(Term {
                    mono: t.mono.mul(&m),
                    coeff: t.coeff.clone(),
                });
            }
        }
        Poly::from_terms(terms)
    }

    /// Substitutes integer/polynomial values for variables, leaving others symbolic.
    pub fn substitute(&self, v: Var, value: &Poly) -> Poly {
        let mut acc = Poly::zero();
        let mut powers: Vec<Poly> = vec![Poly::one()];
        for (e, c) in self.coeffs_in(v) {
            while powers.len() <= e as usize {
                let next = powers.last().expect("nonempty").mul(value);
                powers.push(next);
            }
            acc = acc.add(&c.mul(&powers[e as usize]));
        }
        acc
    }
}

fn exponent_in(list: &[(Var, u32)], v: Var) -> u32 {
    list.iter().find(|(w, _)| *w == v).map(|&(_, e)| e).unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Poly {
        Poly::atom(Atom::Coord(0))
    }

    fn t() -> Poly {
        Poly::atom(Atom::Exp(0))
    }

    fn c(v: i64) -> Poly {
        Poly::constant(IBig::from(v))
    }

    #[test]
    fn expansion_of_square() {
        let p = x().add(&c(1)).pow(2);
        let q = x().mul(&x()).add(&x().scale(&IBig::from(2))).add(&c(1));
        assert_eq!(p, q);
        assert!(p.sub(&q).is_zero());
    }

    #[test]
    fn exact_division() {
        let a = x().add(&t());
        let b = x().sub(&c(3));
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&b), Some(a));
        assert_eq!(prod.add(&c(1)).div_exact(&b), None);
    }

    #[test]
    fn monomial_order_is_total() {
        let m1 = Monomial::var(Atom::Coord(0).into(), 2);
        let m2 = Monomial::var(Atom::Exp(0).into(), 1);
        assert_ne!(m1.cmp(&m2), Ordering::Equal);
        assert_eq!(m1.cmp(&m1), Ordering::Equal);
        assert!(Monomial::one() < m1);
    }

    #[test]
    fn derivative_of_power() {
        let p = x().pow(3);
        assert_eq!(p.diff_var(Atom::Coord(0).into()), x().pow(2).scale(&IBig::from(3)));
    }
}
