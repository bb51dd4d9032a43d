//! The function-spec grammar used by `expand` and `laurent`:
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary ("*" unary)*
//! unary  := "-" unary | power
//! power  := atom ("^" integer)?
//! atom   := number | x0 | x1 | x2 | e1 | e2 | e3
//!         | A(k, l) | phi(k, l) | kernel(c0, c1, c2) | "(" expr ")"
//! ```
//!
//! Products keep their order, so `A(2,1)*(1+e2)` puts the constant on the right.

use monogenica::basis::cauchy_kernel;
use monogenica::{eval_basis, BasisFamily, BasisIndex, Field, MonogenicError, Point3, Quaternion};

#[derive(Clone, Debug, PartialEq)]
pub struct ParseError {
    /// 1-based character column.
    pub column: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "column {}: {}", self.column, self.message)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Const(Quaternion),
    Coord(usize),
    Basis(BasisFamily, BasisIndex),
    Kernel(Point3),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    /// Points where some term is singular: the origin for outer basis
    /// elements, the centre for kernels.
    pub fn singular_points(&self) -> Vec<Point3> {
        let mut out = Vec::new();
        self.collect_singular(&mut out);
        out
    }

    fn collect_singular(&self, out: &mut Vec<Point3>) {
        match self {
            Expr::Basis(_, i) if !i.is_inner() => out.push(Point3::ORIGIN),
            Expr::Kernel(c) => out.push(*c),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.collect_singular(out);
                b.collect_singular(out);
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.collect_singular(out),
            _ => {}
        }
    }
}

impl Field for Expr {
    fn eval(&self, x: Point3) -> monogenica::Result<Quaternion> {
        Ok(match self {
            Expr::Const(q) => *q,
            Expr::Coord(i) => Quaternion::real(x.coord(*i)),
            Expr::Basis(fam, idx) => eval_basis(*fam, *idx, x)?,
            Expr::Kernel(c) => cauchy_kernel(x - *c)?,
            Expr::Add(a, b) => a.eval(x)? + b.eval(x)?,
            Expr::Sub(a, b) => a.eval(x)? - b.eval(x)?,
            Expr::Mul(a, b) => a.eval(x)? * b.eval(x)?,
            Expr::Neg(a) => -a.eval(x)?,
            Expr::Pow(a, e) => a.eval(x)?.powi(*e),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Sym(char),
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            // exponent, only when followed by digits
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    i = j;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let text: String = chars[start..i].iter().collect();
            let v = text
                .parse::<f64>()
                .map_err(|_| ParseError { column: col, message: format!("bad number '{text}'") })?;
            out.push((Tok::Num(v), col));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else if "+-*^(),".contains(c) {
            out.push((Tok::Sym(c), col));
            i += 1;
        } else {
            return Err(ParseError { column: col, message: format!("unexpected character '{c}'") });
        }
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

impl Lexer {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn col(&self) -> usize {
        self.toks[self.pos].1
    }

    fn next(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { column: self.col(), message: message.into() })
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if *self.peek() == Tok::Sym(c) {
            self.next();
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Sym('+') => {
                    self.next();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Sym('-') => {
                    self.next();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Sym('*') {
            self.next();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Sym('-') {
            self.next();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Sym('^') {
            return Ok(base);
        }
        self.next();
        match self.next() {
            (Tok::Num(v), _) if v.fract() == 0.0 && (0.0..=64.0).contains(&v) => Ok(Expr::Pow(Box::new(base), v as u32)),
            (_, col) => Err(ParseError { column: col, message: "exponent must be an integer in 0..=64".into() }),
        }
    }

    fn signed_number(&mut self) -> Result<f64, ParseError> {
        let neg = if *self.peek() == Tok::Sym('-') {
            self.next();
            true
        } else {
            false
        };
        match self.next() {
            (Tok::Num(v), _) => Ok(if neg { -v } else { v }),
            (_, col) => Err(ParseError { column: col, message: "expected a number".into() }),
        }
    }

    fn signed_integer(&mut self) -> Result<i64, ParseError> {
        let col = self.col();
        let v = self.signed_number()?;
        if v.fract() != 0.0 || v.abs() > 1e6 {
            return Err(ParseError { column: col, message: "expected an integer".into() });
        }
        Ok(v as i64)
    }

    fn basis(&mut self, family: BasisFamily, col: usize) -> Result<Expr, ParseError> {
        self.expect('(')?;
        let k = self.signed_integer()?;
        self.expect(',')?;
        let l = self.signed_integer()?;
        self.expect(')')?;
        let idx = i32::try_from(k)
            .ok()
            .zip(u32::try_from(l).ok())
            .ok_or(MonogenicError::InvalidIndex { k, l })
            .and_then(|(k, l)| BasisIndex::new(k, l))
            .map_err(|e| ParseError { column: col, message: e.to_string() })?;
        if idx.degree() > monogenica::MAX_DEGREE {
            return Err(ParseError { column: col, message: format!("degree exceeds {}", monogenica::MAX_DEGREE) });
        }
        Ok(Expr::Basis(family, idx))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let (tok, col) = self.next();
        match tok {
            Tok::Num(v) => Ok(Expr::Const(Quaternion::real(v))),
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => match name.as_str() {
                "x0" => Ok(Expr::Coord(0)),
                "x1" => Ok(Expr::Coord(1)),
                "x2" => Ok(Expr::Coord(2)),
                "e1" => Ok(Expr::Const(Quaternion::E1)),
                "e2" => Ok(Expr::Const(Quaternion::E2)),
                "e3" => Ok(Expr::Const(Quaternion::E3)),
                "A" => self.basis(BasisFamily::AppellA, col),
                "phi" => self.basis(BasisFamily::OrthonormalPhi, col),
                "kernel" => {
                    self.expect('(')?;
                    let a = self.signed_number()?;
                    self.expect(',')?;
                    let b = self.signed_number()?;
                    self.expect(',')?;
                    let c = self.signed_number()?;
                    self.expect(')')?;
                    Ok(Expr::Kernel(Point3::new(a, b, c)))
                }
                other => Err(ParseError { column: col, message: format!("unknown name '{other}'") }),
            },
            Tok::End => Err(ParseError { column: col, message: "unexpected end of input".into() }),
            Tok::Sym(c) => Err(ParseError { column: col, message: format!("unexpected '{c}'") }),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let mut lx = Lexer { toks: lex(src)?, pos: 0 };
    let e = lx.expr()?;
    if *lx.peek() != Tok::End {
        return lx.err("unexpected trailing input");
    }
    Ok(e)
}
