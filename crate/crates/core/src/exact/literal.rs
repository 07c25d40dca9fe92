//! Text syntax for Cyclo and Poly values.
//!
//! Grammar (usual precedence, `^` binds tightest and takes an integer):
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' '-'? integer)?
//! atom  := integer | 'zeta' | 'z' | '(' expr ')'
//! ```
//!
//! Division is only allowed by nonzero constants and negative powers only
//! of constants. Printing produces the canonical reduced form, so
//! `parse(print(x)) == x` and `print(parse(print(x))) == print(x)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::cyclo::{Cyclo, Q};
use super::poly::Poly;
use super::ExactError;

fn rational_literal(r: &Q) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Joins signed terms as `a + b - c`.
fn join_terms(terms: &[String]) -> String {
    let mut out = String::new();
    for (i, t) in terms.iter().enumerate() {
        if i == 0 {
            out.push_str(t);
        } else if let Some(rest) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(t);
        }
    }
    out
}

/// `c*x^k` with the conventions 1*x = x, -1*x = -x, x^1 = x.
fn monomial_literal(c: &Q, var: &str, k: usize) -> String {
    let power = match k {
        0 => return rational_literal(c),
        1 => var.to_string(),
        _ => format!("{var}^{k}"),
    };
    if c.is_one() {
        power
    } else if (-c).is_one() {
        format!("-{power}")
    } else {
        format!("{}*{power}", rational_literal(c))
    }
}

/// Canonical literal for a Cyclo, ascending powers of zeta.
pub fn cyclo_to_literal(c: &Cyclo) -> String {
    if c.is_zero() {
        return "0".to_string();
    }
    let terms: Vec<String> = c
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, a)| !a.is_zero())
        .map(|(j, a)| monomial_literal(a, "zeta", j))
        .collect();
    join_terms(&terms)
}

/// Canonical literal for a Poly, descending powers of z.
pub fn poly_to_literal(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut terms = Vec::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        if let Some(r) = c.as_rational() {
            terms.push(monomial_literal(&r, "z", k));
        } else {
            let inner = format!("({})", cyclo_to_literal(c));
            terms.push(match k {
                0 => inner,
                1 => format!("{inner}*z"),
                _ => format!("{inner}*z^{k}"),
            });
        }
    }
    join_terms(&terms)
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigInt),
    Zeta,
    Z,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Token>, ExactError> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '-' => {
                out.push(Token::Minus);
                i += 1;
            }
            '*' => {
                out.push(Token::Star);
                i += 1;
            }
            '/' => {
                out.push(Token::Slash);
                i += 1;
            }
            '^' => {
                out.push(Token::Caret);
                i += 1;
            }
            '(' => {
                out.push(Token::LParen);
                i += 1;
            }
            ')' => {
                out.push(Token::RParen);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push(Token::Int(digits.parse().unwrap()));
            }
            'a'..='z' | 'A'..='Z' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_alphabetic() {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                match word.as_str() {
                    "zeta" => out.push(Token::Zeta),
                    "z" => out.push(Token::Z),
                    _ => return Err(ExactError::Parse(format!("unknown identifier `{word}`"))),
                }
            }
            _ => return Err(ExactError::Parse(format!("unexpected character `{c}`"))),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    order: u32,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Poly, ExactError> {
        let mut acc = self.term()?;
        while let Some(t) = self.peek() {
            match t {
                Token::Plus => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Token::Minus => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly, ExactError> {
        let mut acc = self.unary()?;
        while let Some(t) = self.peek() {
            match t {
                Token::Star => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Token::Slash => {
                    self.pos += 1;
                    let d = self.unary()?;
                    if !d.is_constant() {
                        return Err(ExactError::Parse("division by a non-constant".into()));
                    }
                    let inv = d.coeff(0).inv()?;
                    acc = acc.scale(&inv);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly, ExactError> {
        if self.peek() == Some(&Token::Minus) {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly, ExactError> {
        let base = self.atom()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let negative = if self.peek() == Some(&Token::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let e = match self.next() {
            Some(Token::Int(n)) => n,
            _ => return Err(ExactError::Parse("expected an integer exponent".into())),
        };
        let e: i64 =
            num_traits::ToPrimitive::to_i64(&e).ok_or_else(|| ExactError::Parse("exponent too large".into()))?;
        if negative {
            if !base.is_constant() {
                return Err(ExactError::Parse("negative power of a non-constant".into()));
            }
            return Ok(Poly::constant(base.coeff(0).pow(-e)?));
        }
        Ok(base.pow(e as u32))
    }

    fn atom(&mut self) -> Result<Poly, ExactError> {
        match self.next() {
            Some(Token::Int(n)) => Ok(Poly::constant(Cyclo::from_rational(Q::from_integer(n)))),
            Some(Token::Zeta) => Ok(Poly::constant(Cyclo::zeta(self.order))),
            Some(Token::Z) => Ok(Poly::x()),
            Some(Token::LParen) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Token::RParen) => Ok(e),
                    _ => Err(ExactError::Parse("expected `)`".into())),
                }
            }
            Some(t) => Err(ExactError::Parse(format!("unexpected token {t:?}"))),
            None => Err(ExactError::Parse("unexpected end of input".into())),
        }
    }
}

/// Parses a polynomial in `z` with coefficients in ℚ(ζ_order).
pub fn parse_poly(s: &str, order: u32) -> Result<Poly, ExactError> {
    let tokens = tokenize(s)?;
    if tokens.is_empty() {
        return Err(ExactError::Parse("empty literal".into()));
    }
    let mut p = Parser { tokens, pos: 0, order };
    let out = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(ExactError::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(out)
}

/// Parses a constant of ℚ(ζ_order).
pub fn parse_cyclo(s: &str, order: u32) -> Result<Cyclo, ExactError> {
    let p = parse_poly(s, order)?;
    if !p.is_constant() {
        return Err(ExactError::Parse(format!("`{s}` is not a constant")));
    }
    Ok(p.coeff(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_two_literal() {
        let p = parse_poly("z^3 + (1/4)*(zeta^15+zeta^105)", 120).unwrap();
        let s = (Cyclo::zeta_pow(120, 15) + Cyclo::zeta_pow(120, 105)).scale(&crate::exact::q(1, 4));
        assert_eq!(p.coeff(0), s);
        assert_eq!(p.deg(), 3);
        let printed = poly_to_literal(&p);
        assert_eq!(parse_poly(&printed, 120).unwrap(), p);
        assert_eq!(poly_to_literal(&parse_poly(&printed, 120).unwrap()), printed);
    }

    #[test]
    fn printing_conventions() {
        let p = parse_poly("z^11 + 11*z^6 - z", 1).unwrap();
        assert_eq!(poly_to_literal(&p), "z^11 + 11*z^6 - z");
        let c = parse_cyclo("-3/2*zeta^2 + 1 + zeta", 5).unwrap();
        assert_eq!(cyclo_to_literal(&c), "1 + zeta - 3/2*zeta^2");
        assert_eq!(cyclo_to_literal(&parse_cyclo("zeta^-1", 8).unwrap()), "-zeta^3");
    }

    #[test]
    fn errors() {
        assert!(parse_poly("z/z", 1).is_err());
        assert!(parse_poly("z +", 1).is_err());
        assert!(parse_poly("w", 1).is_err());
        assert!(parse_cyclo("z", 4).is_err());
        assert!(parse_poly("1/0", 4).is_err());
    }
}
