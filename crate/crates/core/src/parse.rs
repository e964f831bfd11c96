//! Recursive-descent parser for matrix polynomial expressions.
//!
//! Grammar:
//!   matrix := '[' row (';' row)* ']'
//!   row    := poly (',' poly)*
//!   poly   := term (('+'|'-') term)*
//!   term   := factor ('*' factor)*
//!   factor := ('+'|'-')* primary ('^' natural)?
//!   primary:= rational | 'i' | variable | '(' poly ')'
//! Rational literals look like `3` or `3/2`; variables are `x1` .. `x9`.
//! There is no implicit multiplication. The session dimension is the
//! highest variable index that occurs, unless overridden.

use crate::gaussian::GaussianRational;
use crate::matrix::MatrixPoly;
use crate::poly::ScalarPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at line {}, column {}: {}",
            self.line, self.col, self.message
        )
    }
}

impl std::error::Error for ParseError {}

/// Raw text plus an optional dimension override.
#[derive(Debug, Clone)]
pub struct ParseInput {
    pub text: String,
    pub declared_dim: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    LBracket,
    RBracket,
    LParen,
    RParen,
    Comma,
    Semicolon,
    Plus,
    Minus,
    Star,
    Caret,
    Number(BigRational),
    ImagUnit,
    Var(usize), // 0-based axis
    Eof,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn err(line: usize, col: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        col,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut toks = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0usize;
    while i < chars.len() {
        let c = chars[i];
        let (tline, tcol) = (line, col);
        let mut push = |tok: Tok| {
            toks.push(Spanned {
                tok,
                line: tline,
                col: tcol,
            })
        };
        match c {
            '\n' => {
                line += 1;
                col = 1;
                i += 1;
                continue;
            }
            ' ' | '\t' | '\r' => {}
            '[' => push(Tok::LBracket),
            ']' => push(Tok::RBracket),
            '(' => push(Tok::LParen),
            ')' => push(Tok::RParen),
            ',' => push(Tok::Comma),
            ';' => push(Tok::Semicolon),
            '+' => push(Tok::Plus),
            '-' | '\u{2212}' => push(Tok::Minus),
            '*' => push(Tok::Star),
            '^' => push(Tok::Caret),
            'i' => push(Tok::ImagUnit),
            'x' => {
                let d = chars.get(i + 1).copied().unwrap_or(' ');
                match d.to_digit(10) {
                    Some(v) if (1..=9).contains(&v) => {
                        push(Tok::Var(v as usize - 1));
                        i += 1;
                        col += 1;
                    }
                    _ => {
                        return Err(err(
                            line,
                            col,
                            "expected a variable x1..x9 after 'x'",
                        ))
                    }
                }
            }
            '0'..='9' => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let numer: BigInt = chars[i..j].iter().collect::<String>().parse().unwrap();
                let mut denom = BigInt::from(1);
                if j < chars.len() && chars[j] == '/' {
                    let mut k = j + 1;
                    while k < chars.len() && chars[k].is_ascii_digit() {
                        k += 1;
                    }
                    if k == j + 1 {
                        return Err(err(
                            line,
                            col + (j - i) as usize,
                            "expected digits after '/' in rational literal",
                        ));
                    }
                    denom = chars[j + 1..k].iter().collect::<String>().parse().unwrap();
                    if denom == BigInt::from(0) {
                        return Err(err(line, col, "zero denominator in rational literal"));
                    }
                    j = k;
                }
                push(Tok::Number(BigRational::new(numer, denom)));
                col += j - i;
                i = j;
                continue;
            }
            other => {
                return Err(err(line, col, format!("unexpected character '{}'", other)));
            }
        }
        col += 1;
        i += 1;
    }
    toks.push(Spanned {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(toks)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    dim: usize,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        let t = self.peek().clone();
        if t.tok == tok {
            self.bump();
            Ok(())
        } else {
            Err(err(t.line, t.col, format!("expected {}", what)))
        }
    }

    fn poly(&mut self) -> Result<ScalarPoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<ScalarPoly, ParseError> {
        let mut acc = self.factor()?;
        while self.peek().tok == Tok::Star {
            self.bump();
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<ScalarPoly, ParseError> {
        match self.peek().tok {
            Tok::Minus => {
                self.bump();
                Ok(-&self.factor()?)
            }
            Tok::Plus => {
                self.bump();
                self.factor()
            }
            _ => {
                let base = self.primary()?;
                if self.peek().tok == Tok::Caret {
                    self.bump();
                    let t = self.bump();
                    match t.tok {
                        Tok::Number(r) if r.is_integer() && r.numer() >= &BigInt::from(0) => {
                            let e: u32 = r.numer().try_into().map_err(|_| {
                                err(t.line, t.col, "exponent too large")
                            })?;
                            Ok(base.pow(e))
                        }
                        _ => Err(err(
                            t.line,
                            t.col,
                            "expected a nonnegative integer exponent after '^'",
                        )),
                    }
                } else {
                    Ok(base)
                }
            }
        }
    }

    fn primary(&mut self) -> Result<ScalarPoly, ParseError> {
        let t = self.bump();
        match t.tok {
            Tok::Number(r) => Ok(ScalarPoly::constant(
                self.dim,
                GaussianRational::real(r),
            )),
            Tok::ImagUnit => Ok(ScalarPoly::constant(self.dim, GaussianRational::i())),
            Tok::Var(axis) => Ok(ScalarPoly::variable(self.dim, axis)),
            Tok::LParen => {
                let inner = self.poly()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            _ => Err(err(t.line, t.col, "expected a number, 'i', a variable, or '('")),
        }
    }

    fn matrix(&mut self) -> Result<MatrixPoly, ParseError> {
        self.expect(Tok::LBracket, "'['")?;
        let mut rows: Vec<Vec<ScalarPoly>> = Vec::new();
        loop {
            let mut row = vec![self.poly()?];
            while self.peek().tok == Tok::Comma {
                self.bump();
                row.push(self.poly()?);
            }
            rows.push(row);
            match self.peek().tok {
                Tok::Semicolon => {
                    self.bump();
                }
                Tok::RBracket => {
                    self.bump();
                    break;
                }
                _ => {
                    let t = self.peek().clone();
                    return Err(err(t.line, t.col, "expected ',', ';' or ']'"));
                }
            }
        }
        let t = self.peek().clone();
        MatrixPoly::from_rows(rows).map_err(|e| err(t.line, t.col, e.to_string()))
    }
}

/// Scans for the highest variable index, applying the optional override.
fn session_dim(toks: &[Spanned], declared: Option<usize>) -> Result<usize, ParseError> {
    let mut max_axis = None;
    for t in toks {
        if let Tok::Var(axis) = t.tok {
            if let Some(limit) = declared {
                if axis >= limit {
                    return Err(err(
                        t.line,
                        t.col,
                        format!("variable x{} exceeds declared dimension {}", axis + 1, limit),
                    ));
                }
            }
            max_axis = Some(max_axis.map_or(axis, |m: usize| m.max(axis)));
        }
    }
    Ok(declared.unwrap_or_else(|| max_axis.map_or(1, |m| m + 1)))
}

pub fn parse_matrix_poly(input: &ParseInput) -> Result<MatrixPoly, ParseError> {
    parse_matrix_str(&input.text, input.declared_dim)
}

pub fn parse_matrix_str(text: &str, declared_dim: Option<usize>) -> Result<MatrixPoly, ParseError> {
    let toks = tokenize(text)?;
    let dim = session_dim(&toks, declared_dim)?;
    let mut p = Parser { toks, pos: 0, dim };
    let m = p.matrix()?;
    let t = p.peek().clone();
    if t.tok != Tok::Eof {
        return Err(err(t.line, t.col, "trailing input after matrix"));
    }
    Ok(m)
}

pub fn parse_scalar_str(text: &str, declared_dim: Option<usize>) -> Result<ScalarPoly, ParseError> {
    let toks = tokenize(text)?;
    let dim = session_dim(&toks, declared_dim)?;
    let mut p = Parser { toks, pos: 0, dim };
    // accept either a bare polynomial or a 1x1 matrix
    if p.peek().tok == Tok::LBracket {
        let m = p.matrix()?;
        let t = p.peek().clone();
        if t.tok != Tok::Eof {
            return Err(err(t.line, t.col, "trailing input after matrix"));
        }
        if m.rows() != 1 || m.cols() != 1 {
            return Err(err(1, 1, "expected a scalar (1x1) expression"));
        }
        return Ok(m.entry(0, 0).clone());
    }
    let q = p.poly()?;
    let t = p.peek().clone();
    if t.tok != Tok::Eof {
        return Err(err(t.line, t.col, "trailing input after expression"));
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_2x2_example() {
        let m = parse_matrix_str("[x1^2+x2^2, x1; x2, 0]", None).unwrap();
        assert_eq!(m.rows(), 2);
        assert_eq!(m.cols(), 2);
        assert_eq!(m.dim(), 2);
        assert_eq!(
            m.entry(0, 0),
            &parse_scalar_str("x1^2 + x2^2", Some(2)).unwrap()
        );
        assert!(m.entry(1, 1).is_zero());
    }

    #[test]
    fn parses_row_vector() {
        let m = parse_matrix_str("[x1, x2]", None).unwrap();
        assert_eq!((m.rows(), m.cols()), (1, 2));
    }

    #[test]
    fn rejects_dangling_comma() {
        let e = parse_matrix_str("[x1,; x2]", None).unwrap_err();
        assert_eq!(e.line, 1);
        assert_eq!(e.col, 5);
    }

    #[test]
    fn rejects_ragged_rows() {
        assert!(parse_matrix_str("[x1, x2; x1]", None).is_err());
    }

    #[test]
    fn rejects_implicit_multiplication() {
        assert!(parse_scalar_str("2 x1", None).is_err());
        assert!(parse_scalar_str("x1 x2", None).is_err());
    }

    #[test]
    fn dimension_inference_and_override() {
        assert_eq!(parse_scalar_str("x3 + x1", None).unwrap().dim(), 3);
        assert_eq!(parse_scalar_str("5", None).unwrap().dim(), 1);
        assert_eq!(parse_scalar_str("x1", Some(4)).unwrap().dim(), 4);
        let e = parse_scalar_str("x5", Some(2)).unwrap_err();
        assert!(e.message.contains("exceeds declared dimension"));
    }

    #[test]
    fn rational_and_complex_literals() {
        let p = parse_scalar_str("3/2*x1 - i*x2 + (1/4 + 2*i)", None).unwrap();
        let s = p.to_canonical_string();
        assert_eq!(parse_scalar_str(&s, Some(2)).unwrap(), p);
        assert!(parse_scalar_str("3/0", None).is_err());
        assert!(parse_scalar_str("x1^(1/2)", None).is_err());
    }

    #[test]
    fn unary_minus_chains() {
        assert_eq!(
            parse_scalar_str("--x1", None).unwrap(),
            parse_scalar_str("x1", None).unwrap()
        );
        assert_eq!(
            parse_scalar_str("-x1^2", None).unwrap(),
            parse_scalar_str("0 - x1^2", None).unwrap()
        );
    }

    #[test]
    fn error_positions_track_lines() {
        let e = parse_matrix_str("[x1,\n x2,, x1]", None).unwrap_err();
        assert_eq!(e.line, 2);
        assert_eq!(e.col, 5);
    }
}
