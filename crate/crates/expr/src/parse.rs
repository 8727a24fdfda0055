//! Recursive-descent parser for the expression grammar.
//!
//! ```text
//! sum     := product (('+' | '-') product)*
//! product := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' exponent)?
//! exponent:= ['-'] integer | '(' ['-'] integer ')'
//! primary := integer | identifier | 'exp(' ['-'] [integer '*'] coord ')' | '(' sum ')'
//! ```

use dashu_int::IBig;

use crate::atom::Context;
use crate::error::ExprError;
use crate::expr::Expr;

/// Parses `src` against the names declared in `ctx`.
pub fn parse_expression(src: &str, ctx: &Context) -> Result<Expr, ExprError> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        ctx,
    };
    let e = p.sum()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.syntax("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ctx: &'a Context,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ExprError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.syntax(&format!("expected `{}`", c as char)))
        }
    }

    fn syntax(&self, msg: &str) -> ExprError {
        ExprError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn sum(&mut self) -> Result<Expr, ExprError> {
        let mut acc = self.product()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.product()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.product()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<Expr, ExprError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.eat(b'/') {
                let rhs = self.unary()?;
                acc = acc.div_ref(&rhs)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.primary()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let start = self.pos;
        let k = self.exponent().map_err(|_| ExprError::NonIntegerExponent { pos: start })?;
        if k < 0 && base.is_zero() {
            return Err(ExprError::DivisionByZero);
        }
        Ok(base.powi(k))
    }

    fn exponent(&mut self) -> Result<i32, ExprError> {
        let paren = self.eat(b'(');
        let neg = self.eat(b'-');
        let k = self.integer_i32()?;
        if paren {
            self.expect(b')')?;
        }
        if self.peek() == Some(b'.') {
            return Err(self.syntax("fractional exponent"));
        }
        Ok(if neg { -k } else { k })
    }

    fn integer_digits(&mut self) -> Option<&str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            None
        } else {
            std::str::from_utf8(&self.src[start..self.pos]).ok()
        }
    }

    fn integer_i32(&mut self) -> Result<i32, ExprError> {
        let pos = self.pos;
        let parsed = self.integer_digits().map(|d| d.parse::<i32>());
        match parsed {
            Some(Ok(k)) => Ok(k),
            Some(Err(_)) => Err(ExprError::Syntax { pos, msg: "integer out of range".into() }),
            None => Err(self.syntax("expected integer")),
        }
    }

    fn identifier(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        let ok_start = |c: u8| c.is_ascii_alphabetic() || c == b'_';
        if self.pos < self.src.len() && ok_start(self.src[self.pos]) {
            self.pos += 1;
            while self.pos < self.src.len()
                && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
            {
                self.pos += 1;
            }
            Some(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
        } else {
            None
        }
    }

    fn primary(&mut self) -> Result<Expr, ExprError> {
        match self.peek() {
            None => Err(self.syntax("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let e = self.sum()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.integer_digits().expect("digit present").to_string();
                let v: IBig = digits.parse().map_err(|_| self.syntax("bad integer"))?;
                if self.src.get(self.pos) == Some(&b'.') {
                    return Err(self.syntax("decimal literals are not supported"));
                }
                Ok(Expr::from_ibig(v))
            }
            Some(_) => {
                let start = self.pos;
                let name = self
                    .identifier()
                    .ok_or_else(|| self.syntax("expected a number, identifier or `(`"))?;
                if name == "exp" && self.peek() == Some(b'(') {
                    return self.exp_argument();
                }
                if let Some(i) = self.ctx.coord_index(&name) {
                    Ok(Expr::coord(i as usize))
                } else if let Some(j) = self.ctx.param_index(&name) {
                    Ok(Expr::param(j as usize))
                } else {
                    Err(ExprError::UnknownIdentifier { name, pos: start })
                }
            }
        }
    }

    // After `exp`; consumes `( [-] [k *] coord )`.
    fn exp_argument(&mut self) -> Result<Expr, ExprError> {
        self.expect(b'(')?;
        let start = self.pos;
        let bad = ExprError::BadExpArgument { pos: start };
        let neg = self.eat(b'-');
        let mut k: i32 = 1;
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            k = self.integer_i32().map_err(|_| bad.clone())?;
            if !self.eat(b'*') {
                return Err(bad);
            }
        }
        let name = self.identifier().ok_or(bad.clone())?;
        let i = self.ctx.coord_index(&name).ok_or(bad.clone())?;
        if !self.eat(b')') {
            return Err(bad);
        }
        if neg {
            k = -k;
        }
        Ok(Expr::exp_coord(i as usize, k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atom::Atom;
    use crate::poly::Poly;

    fn ctx() -> Context {
        Context::new(&["x1", "x2"], &["a"])
    }

    fn p(s: &str) -> Result<Expr, ExprError> {
        parse_expression(s, &ctx())
    }

    #[test]
    fn quotient_with_exponentials() {
        let e = p("exp(2*x1)/(1+exp(x1))").unwrap();
        let t = Poly::atom(Atom::Exp(0));
        assert_eq!(e.numerator(), &t.pow(2));
        assert_eq!(e.denominator(), &t.add(&Poly::one()));
    }

    #[test]
    fn expansion_cancels() {
        assert!(p("(x1+1)^2 - x1^2 - 2*x1 - 1").unwrap().is_zero());
        assert!(p("(1+exp(x1))^2 - 1 - 2*exp(x1) - exp(x1)^2").unwrap().is_zero());
        assert!(!p("exp(x1) - x1").unwrap().is_zero());
    }

    #[test]
    fn negative_exp_spellings_agree() {
        let a = p("7/2 * exp(-1*x1)").unwrap();
        assert_eq!(a, p("7/2*exp(-x1)").unwrap());
        assert_eq!(a, p("7/(2*exp(x1))").unwrap());
        assert_eq!(a.numerator(), &Poly::constant(IBig::from(7)));
    }

    #[test]
    fn precedence() {
        assert_eq!(p("-x1^2").unwrap(), -(p("x1").unwrap().powi(2)));
        assert_eq!(p("2*x1/4").unwrap(), p("x1/2").unwrap());
        assert_eq!(p("x1^-2").unwrap(), p("1/x1^2").unwrap());
        assert_eq!(p("x1^(-2)").unwrap(), p("1/(x1*x1)").unwrap());
        assert_eq!(p("1 - 2 - 3").unwrap(), Expr::int(-4));
    }

    #[test]
    fn combined_quotient_matches_literal() {
        let t = p("exp(x1)").unwrap();
        let base = Expr::int(3)
            .div_ref(&(&Expr::int(2) * &(&Expr::one() + &t).powi(2)))
            .unwrap();
        let k = &base * &(&Expr::int(2) + &t);
        assert_eq!(k, p("3*(2+exp(x1)) / (2*(1+exp(x1))^2)").unwrap());
    }

    #[test]
    fn errors() {
        assert!(matches!(p("x1 +"), Err(ExprError::Syntax { .. })));
        assert!(matches!(p("(x1"), Err(ExprError::Syntax { .. })));
        assert_eq!(
            p("x1 + y"),
            Err(ExprError::UnknownIdentifier { name: "y".into(), pos: 5 })
        );
        assert!(matches!(p("x1^a"), Err(ExprError::NonIntegerExponent { .. })));
        assert!(matches!(p("x1^1.5"), Err(ExprError::NonIntegerExponent { .. })));
        assert!(matches!(p("exp(x1+x2)"), Err(ExprError::BadExpArgument { .. })));
        assert!(matches!(p("exp(a)"), Err(ExprError::BadExpArgument { .. })));
        assert!(matches!(p("exp(x1*x1)"), Err(ExprError::BadExpArgument { .. })));
        assert_eq!(p("1/(x1-x1)"), Err(ExprError::DivisionByZero));
    }
}
