//! Expression trees over the variables `x` and `n`, the base infinitesimal
//! `eps`, rational literals, `pi`, field operations, rational powers, and the
//! built-in elementary functions. One infix grammar serves both the library
//! and the command line:
//!
//! ```text
//! expr   := term  (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := unary ('^' exponent)?
//! unary  := ('-' | '+') unary | atom
//! atom   := number | 'eps' | 'pi' | name '(' expr ')' | name | '(' expr ')'
//! ```
//!
//! Exponents are rational literals such as `2`, `-1`, `(3/2)`, `(-1/2)`;
//! numbers are integers, decimals, or scientific notation, all read exactly.

use num_rational::{BigRational, Rational64};

use crate::error::{Error, Result};

/// Elementary functions liftable to series arguments, plus the discontinuous
/// `step` fixture (0 below zero, 1 from zero up).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Exp,
    Ln,
    Sin,
    Cos,
    Sinh,
    Cosh,
    Sqrt,
    Arctan,
    Step,
}

impl Func {
    pub fn name(&self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Sqrt => "sqrt",
            Func::Arctan => "arctan",
            Func::Step => "step",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "exp" => Func::Exp,
            "ln" => Func::Ln,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "sinh" => Func::Sinh,
            "cosh" => Func::Cosh,
            "sqrt" => Func::Sqrt,
            "arctan" => Func::Arctan,
            "step" => Func::Step,
            _ => return None,
        })
    }

    /// Every liftable function, for table-driven tests.
    pub const ANALYTIC: [Func; 8] = [
        Func::Exp,
        Func::Ln,
        Func::Sin,
        Func::Cos,
        Func::Sinh,
        Func::Cosh,
        Func::Sqrt,
        Func::Arctan,
    ];
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprTree {
    Variable(String),
    Literal(BigRational),
    Pi,
    Eps,
    Neg(Box<ExprTree>),
    Add(Box<ExprTree>, Box<ExprTree>),
    Sub(Box<ExprTree>, Box<ExprTree>),
    Mul(Box<ExprTree>, Box<ExprTree>),
    Div(Box<ExprTree>, Box<ExprTree>),
    Pow(Box<ExprTree>, Rational64),
    Apply(Func, Box<ExprTree>),
}

impl ExprTree {
    pub fn parse(src: &str) -> Result<ExprTree> {
        let tokens = lex(src)?;
        let mut parser = Parser { tokens, cursor: 0 };
        let expr = parser.expr()?;
        parser.expect_end()?;
        Ok(expr)
    }

    pub fn literal_integer(n: i64) -> ExprTree {
        ExprTree::Literal(BigRational::from_integer(n.into()))
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<(Token, usize)>> {
    let bytes = src.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                tokens.push((Token::Plus, i));
                i += 1;
            }
            '-' => {
                tokens.push((Token::Minus, i));
                i += 1;
            }
            '*' => {
                tokens.push((Token::Star, i));
                i += 1;
            }
            '/' => {
                tokens.push((Token::Slash, i));
                i += 1;
            }
            '^' => {
                tokens.push((Token::Caret, i));
                i += 1;
            }
            '(' => {
                tokens.push((Token::LParen, i));
                i += 1;
            }
            ')' => {
                tokens.push((Token::RParen, i));
                i += 1;
            }
            '0'..='9' | '.' => {
                let start = i;
                while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] as char == '.' {
                    i += 1;
                    while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                        i += 1;
                    }
                }
                // Exponent part only when followed by a digit (with optional
                // sign), so `2*e` still lexes `e` as an identifier.
                if i < bytes.len() && matches!(bytes[i] as char, 'e' | 'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && matches!(bytes[j] as char, '+' | '-') {
                        j += 1;
                    }
                    if j < bytes.len() && (bytes[j] as char).is_ascii_digit() {
                        i = j;
                        while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let text = &src[start..i];
                if text == "." {
                    return Err(Error::Parse {
                        position: start,
                        message: "stray `.`".into(),
                    });
                }
                tokens.push((Token::Number(text.to_string()), start));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let start = i;
                while i < bytes.len()
                    && matches!(bytes[i] as char, 'a'..='z' | 'A'..='Z' | '0'..='9' | '_')
                {
                    i += 1;
                }
                tokens.push((Token::Ident(src[start..i].to_string()), start));
            }
            other => {
                return Err(Error::Parse {
                    position: i,
                    message: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    cursor: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.cursor).map(|(t, _)| t)
    }

    fn position(&self) -> usize {
        self.tokens
            .get(self.cursor)
            .map(|(_, p)| *p)
            .unwrap_or_else(|| self.tokens.last().map(|(_, p)| p + 1).unwrap_or(0))
    }

    fn advance(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.cursor).map(|(t, _)| t.clone());
        if t.is_some() {
            self.cursor += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            position: self.position(),
            message: message.into(),
        }
    }

    fn expect(&mut self, token: Token, what: &str) -> Result<()> {
        if self.peek() == Some(&token) {
            self.cursor += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    fn expect_end(&self) -> Result<()> {
        if self.cursor == self.tokens.len() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }

    fn expr(&mut self) -> Result<ExprTree> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.cursor += 1;
                    let rhs = self.term()?;
                    lhs = ExprTree::Add(Box::new(lhs), Box::new(rhs));
                }
                Some(Token::Minus) => {
                    self.cursor += 1;
                    let rhs = self.term()?;
                    lhs = ExprTree::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<ExprTree> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.cursor += 1;
                    let rhs = self.factor()?;
                    lhs = ExprTree::Mul(Box::new(lhs), Box::new(rhs));
                }
                Some(Token::Slash) => {
                    self.cursor += 1;
                    let rhs = self.factor()?;
                    lhs = ExprTree::Div(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<ExprTree> {
        let base = self.unary()?;
        if self.peek() == Some(&Token::Caret) {
            self.cursor += 1;
            let exponent = self.rational_exponent()?;
            return Ok(ExprTree::Pow(Box::new(base), exponent));
        }
        Ok(base)
    }

    fn unary(&mut self) -> Result<ExprTree> {
        match self.peek() {
            Some(Token::Minus) => {
                self.cursor += 1;
                Ok(ExprTree::Neg(Box::new(self.unary()?)))
            }
            Some(Token::Plus) => {
                self.cursor += 1;
                self.unary()
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<ExprTree> {
        match self.advance() {
            Some(Token::Number(text)) => {
                let value = decimal_to_big_rational(&text)
                    .map_err(|message| self.error(message))?;
                Ok(ExprTree::Literal(value))
            }
            Some(Token::Ident(name)) => match name.as_str() {
                "eps" => Ok(ExprTree::Eps),
                "pi" => Ok(ExprTree::Pi),
                _ => {
                    if let Some(func) = Func::from_name(&name) {
                        self.expect(Token::LParen, "`(` after function name")?;
                        let arg = self.expr()?;
                        self.expect(Token::RParen, "`)`")?;
                        Ok(ExprTree::Apply(func, Box::new(arg)))
                    } else if self.peek() == Some(&Token::LParen) {
                        Err(self.error(format!("unknown function `{name}`")))
                    } else {
                        Ok(ExprTree::Variable(name))
                    }
                }
            },
            Some(Token::LParen) => {
                let inner = self.expr()?;
                self.expect(Token::RParen, "`)`")?;
                Ok(inner)
            }
            _ => Err(self.error("expected a value")),
        }
    }

    /// Rational exponent literal: `2` or `-1` bare; a ratio like `3/2` or
    /// `-1/2` must be parenthesized so that `n^2 / m` keeps its ordinary
    /// division reading.
    fn rational_exponent(&mut self) -> Result<Rational64> {
        if self.peek() == Some(&Token::LParen) {
            self.cursor += 1;
            let r = self.signed_ratio(true)?;
            self.expect(Token::RParen, "`)` after exponent")?;
            Ok(r)
        } else {
            self.signed_ratio(false)
        }
    }

    fn signed_ratio(&mut self, allow_slash: bool) -> Result<Rational64> {
        let negative = if self.peek() == Some(&Token::Minus) {
            self.cursor += 1;
            true
        } else {
            false
        };
        let numer = self.integer_literal()?;
        let denom = if allow_slash && self.peek() == Some(&Token::Slash) {
            self.cursor += 1;
            let d = self.integer_literal()?;
            if d == 0 {
                return Err(self.error("zero denominator in exponent"));
            }
            d
        } else {
            1
        };
        let sign = if negative { -1 } else { 1 };
        Ok(Rational64::new(sign * numer, denom))
    }

    fn integer_literal(&mut self) -> Result<i64> {
        match self.advance() {
            Some(Token::Number(text)) if text.chars().all(|c| c.is_ascii_digit()) => {
                text.parse::<i64>()
                    .map_err(|_| self.error("exponent out of range"))
            }
            _ => Err(self.error("expected an integer in exponent")),
        }
    }
}

/// Exact conversion of an unsigned decimal literal (`12`, `3.5`, `2e-3`) to
/// a rational.
pub(crate) fn decimal_to_big_rational(text: &str) -> std::result::Result<BigRational, String> {
    use num_bigint::BigInt;

    let (mantissa, exp10) = match text.find(['e', 'E']) {
        Some(idx) => {
            let e: i64 = text[idx + 1..]
                .parse()
                .map_err(|_| format!("invalid exponent in `{text}`"))?;
            (&text[..idx], e)
        }
        None => (text, 0),
    };
    let (int_part, frac_part) = match mantissa.find('.') {
        Some(idx) => (&mantissa[..idx], &mantissa[idx + 1..]),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(format!("invalid number `{text}`"));
    }
    let digits = format!("{int_part}{frac_part}");
    if !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(format!("invalid number `{text}`"));
    }
    let numer: BigInt = digits.parse().map_err(|_| format!("invalid number `{text}`"))?;
    let shift = exp10 - frac_part.len() as i64;
    let ten = BigInt::from(10);
    let mut value = BigRational::from_integer(numer);
    if shift >= 0 {
        value *= BigRational::from_integer(ten.pow(shift as u32));
    } else {
        value /= BigRational::from_integer(ten.pow((-shift) as u32));
    }
    Ok(value)
}
