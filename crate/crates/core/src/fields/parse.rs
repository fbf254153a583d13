//! Small arithmetic-expression parser: integers, named atoms, `+ - * / ^`,
//! parentheses, and juxtaposition (`2theta`).

use std::sync::Arc;

use super::{FieldDescriptor, FieldElement, FieldError, FieldKind};
use crate::ring::Ring;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(i64),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Tok::Num(text.parse().map_err(|_| format!("bad number {text}"))?));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else if c == '\u{2212}' {
            out.push(Tok::Op('-'));
            i += 1;
        } else {
            return Err(format!("unexpected character {c:?}"));
        }
    }
    Ok(out)
}

struct Parser<'a, V, I, N, D> {
    toks: Vec<Tok>,
    pos: usize,
    ident: &'a I,
    int: &'a N,
    div: &'a D,
    _v: std::marker::PhantomData<V>,
}

impl<V, I, N, D> Parser<'_, V, I, N, D>
where
    V: Ring,
    I: Fn(&str) -> Option<V>,
    N: Fn(i64) -> V,
    D: Fn(&V, &V) -> Option<V>,
{
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn expr(&mut self) -> Result<V, String> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == '+' { acc.add(&t) } else { acc.sub(&t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<V, String> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(Tok::Op('/')) => {
                    self.pos += 1;
                    let d = self.unary()?;
                    acc = (self.div)(&acc, &d).ok_or("division by zero")?;
                }
                Some(Tok::Ident(_)) | Some(Tok::Op('(')) => {
                    acc = acc.mul(&self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<V, String> {
        if let Some(Tok::Op('-')) = self.peek() {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<V, String> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            match self.toks.get(self.pos) {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    return Ok(base.pow(*n as u64));
                }
                _ => return Err("exponent must be a non-negative integer".into()),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<V, String> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok((self.int)(n))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                (self.ident)(&name).ok_or_else(|| format!("unknown name {name}"))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                match self.peek() {
                    Some(Tok::Op(')')) => {
                        self.pos += 1;
                        Ok(v)
                    }
                    _ => Err("missing ')'".into()),
                }
            }
            other => Err(format!("unexpected token {other:?}")),
        }
    }
}

/// Parse `s` with caller-supplied atoms and division.
pub fn parse_expr<V: Ring>(
    s: &str,
    ident: impl Fn(&str) -> Option<V>,
    int: impl Fn(i64) -> V,
    div: impl Fn(&V, &V) -> Option<V>,
) -> Result<V, String> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err("empty expression".into());
    }
    let mut p = Parser { toks, pos: 0, ident: &ident, int: &int, div: &div, _v: Default::default() };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(format!("trailing input at token {}", p.pos));
    }
    Ok(v)
}

/// Parse a field element. Recognized names: the tower variables (`theta`,
/// `theta1`, ... and `θ` for `theta`), and `a`/`alpha` for the generator of an extension.
pub fn parse_element(desc: &Arc<FieldDescriptor>, s: &str) -> Result<FieldElement, FieldError> {
    let ident = |name: &str| -> Option<FieldElement> {
        let name = if name == "θ" { "theta" } else { name };
        if let Some(v) = desc.variable(name) {
            return Some(v);
        }
        let ground = desc.ground();
        if matches!(ground.kind(), FieldKind::Extension { .. }) && matches!(name, "a" | "alpha" | "α")
        {
            let g = ground.generator();
            let mut x = g;
            let mut d = desc.clone();
            let mut chain = Vec::new();
            while let Some(b) = d.base_field().cloned() {
                chain.push(d.clone());
                d = b;
            }
            for level in chain.into_iter().rev() {
                x = level.from_base(x);
            }
            return Some(x);
        }
        None
    };
    parse_expr(s, ident, |n| desc.from_int(n), |a, b| a.checked_div(b).ok())
        .map_err(FieldError::Parse)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rational_expressions() {
        let f = FieldDescriptor::rational(3).unwrap();
        let th = f.generator();
        let x = parse_element(&f, "theta*(theta+1)").unwrap();
        assert_eq!(x, th.mul(&th.add(&f.one())));
        let y = parse_element(&f, "(θ+1)/θ - 1/θ").unwrap();
        assert_eq!(y, f.one());
        assert_eq!(parse_element(&f, "2theta^2").unwrap(), th.pow(2).scale_int(2));
    }

    #[test]
    fn parses_extension_generator() {
        let f = FieldDescriptor::extension(3, 2).unwrap();
        assert_eq!(parse_element(&f, "a^2").unwrap(), f.from_int(-1));
    }

    #[test]
    fn rejects_garbage() {
        let f = FieldDescriptor::prime(5).unwrap();
        assert!(parse_element(&f, "1 +").is_err());
        assert!(parse_element(&f, "x").is_err());
        assert!(parse_element(&f, "1/0").is_err());
    }
}
