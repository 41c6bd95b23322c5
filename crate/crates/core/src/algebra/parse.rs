//! Text syntax for elements.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ['^' int]
//! atom   := int ['/' int] | 'b' int | 'c' int | '$' name | '(' expr ')'
//! ```
//!
//! Products are taken left to right; `$name` refers to a previously bound value.

use alloc::format;
use alloc::string::{String, ToString};

use super::context::Context;
use super::element::AlgebraElement;
use crate::coeff::Rational;
use crate::error::{Error, Result};

pub type Resolver<'a> = dyn Fn(&str) -> Option<AlgebraElement> + 'a;

struct Parser<'s, 'r> {
    src: &'s [u8],
    pos: usize,
    ctx: Context,
    resolve: &'r Resolver<'r>,
}

impl Parser<'_, '_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { offset: self.pos, message: message.into() })
    }

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

    fn digits(&mut self) -> Result<&str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        Ok(core::str::from_utf8(&self.src[start..self.pos]).expect("ascii"))
    }

    fn small_int(&mut self) -> Result<usize> {
        let d = self.digits()?.to_string();
        d.parse::<usize>().or_else(|_| self.err(format!("integer `{d}` too large")))
    }

    fn index(&mut self) -> Result<usize> {
        let k = self.small_int()?;
        if k >= self.ctx.n() {
            return self.err(format!("index {k} out of range for n = {}", self.ctx.n()));
        }
        Ok(k)
    }

    fn expr(&mut self) -> Result<AlgebraElement> {
        let mut acc = AlgebraElement::zero(self.ctx);
        let mut first = true;
        loop {
            let neg = if self.eat(b'-') {
                true
            } else if self.eat(b'+') || first {
                false
            } else {
                break;
            };
            let t = self.term()?;
            acc = acc.add(&if neg { t.neg() } else { t })?;
            first = false;
            match self.peek() {
                Some(b'+') | Some(b'-') => continue,
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<AlgebraElement> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            let f = self.factor()?;
            acc = acc.mul(&f)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<AlgebraElement> {
        let a = self.atom()?;
        if self.eat(b'^') {
            let e = self.small_int()?;
            return a.pow(e as u32);
        }
        Ok(a)
    }

    fn atom(&mut self) -> Result<AlgebraElement> {
        match self.peek() {
            Some(b'b') => {
                self.pos += 1;
                let k = self.index()?;
                Ok(AlgebraElement::b(self.ctx, k))
            }
            Some(b'c') => {
                self.pos += 1;
                let k = self.index()?;
                Ok(AlgebraElement::c(self.ctx, k))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return self.err("expected `)`");
                }
                Ok(e)
            }
            Some(b'$') => {
                self.pos += 1;
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = core::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                match (self.resolve)(name) {
                    Some(e) => {
                        e.context().ensure_same(&self.ctx)?;
                        Ok(e)
                    }
                    None => self.err(format!("unknown reference `${name}`")),
                }
            }
            Some(c) if c.is_ascii_digit() => {
                let mut lit = self.digits()?.to_string();
                if self.eat(b'/') {
                    lit.push('/');
                    lit.push_str(self.digits()?);
                }
                let r: Rational = lit.parse()?;
                Ok(AlgebraElement::scalar(self.ctx, r))
            }
            Some(c) => self.err(format!("unexpected `{}`", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn parse_element(ctx: Context, src: &str, resolve: &Resolver<'_>) -> Result<AlgebraElement> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, ctx, resolve };
    if p.peek().is_none() {
        return p.err("empty expression");
    }
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

impl AlgebraElement {
    /// Parses the text syntax with no references.
    pub fn parse(ctx: Context, src: &str) -> Result<Self> {
        parse_element(ctx, src, &|_| None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let ctx = Context::new(6, [1, 2, 3, 4, 5]).unwrap();
        for s in ["0", "1", "-3/4", "1/2*c0^3*b4 - b0*b2", "c0*b1*b4*b5 + 1/2*c0^2*b4"] {
            let e = AlgebraElement::parse(ctx, s).unwrap();
            let again = AlgebraElement::parse(ctx, &e.to_string()).unwrap();
            assert_eq!(e, again, "{s}");
        }
        assert_eq!(AlgebraElement::parse(ctx, "b3*b3").unwrap().to_string(), "1/2*c0");
    }

    #[test]
    fn errors() {
        let ctx = Context::free(3).unwrap();
        assert!(AlgebraElement::parse(ctx, "b3").is_err());
        assert!(AlgebraElement::parse(ctx, "b1 +").is_err());
        assert!(AlgebraElement::parse(ctx, "(b1").is_err());
        assert!(AlgebraElement::parse(ctx, "$x").is_err());
        assert!(AlgebraElement::parse(ctx, "1/0").is_err());
    }
}
