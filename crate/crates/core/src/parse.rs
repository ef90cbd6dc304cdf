//! Text format for polynomial systems.
//!
//! ```text
//! system := poly (';' poly)* ';'?
//! poly   := ('+'|'-')? term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' uint)?
//! atom   := integer | integer '/' uint | identifier | '(' poly ')'
//! ```
//!
//! Whitespace is ignored and `#` starts a comment running to the end of the line.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::{Field, Rational, Rationals};
use crate::poly::Polynomial;
use crate::vars::VarTable;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Semi,
    End,
}

#[derive(Clone, Copy, Debug)]
struct Pos {
    line: usize,
    column: usize,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(v) => format!("integer `{v}`"),
        Tok::Ident(s) => format!("identifier `{s}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Slash => "`/`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Semi => "`;`".into(),
        Tok::End => "end of input".into(),
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, Pos)>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut i, mut line, mut column) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, column };
        if c == '\n' {
            i += 1;
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            column += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            Tok::Int(digits.parse().expect("ascii digits"))
        } else if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else {
            i += 1;
            match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ';' => Tok::Semi,
                _ => {
                    return Err(Error::Syntax {
                        line,
                        column,
                        message: format!("unexpected character `{c}`"),
                    })
                }
            }
        };
        column += i - start;
        out.push((tok, pos));
    }
    out.push((Tok::End, Pos { line, column }));
    Ok(out)
}

#[derive(Clone, Debug)]
enum Expr {
    Num(Rational),
    Var(String),
    Sum(Vec<(bool, Expr)>),
    Product(Vec<Expr>),
    Pow(Box<Expr>, u32),
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    seen: Vec<String>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn error(&self, message: String) -> Error {
        let p = self.pos();
        Error::Syntax {
            line: p.line,
            column: p.column,
            message,
        }
    }

    fn unexpected(&self, wanted: &str) -> Error {
        self.error(format!("expected {wanted}, found {}", describe(self.peek())))
    }

    fn system(&mut self) -> Result<Vec<Expr>> {
        let mut polys = vec![self.poly()?];
        while *self.peek() == Tok::Semi {
            self.bump();
            if *self.peek() == Tok::End {
                break;
            }
            polys.push(self.poly()?);
        }
        if *self.peek() != Tok::End {
            return Err(self.unexpected("`;`, `+`, `-` or end of input"));
        }
        Ok(polys)
    }

    fn poly(&mut self) -> Result<Expr> {
        let mut terms = Vec::new();
        let mut neg = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        loop {
            terms.push((neg, self.term()?));
            neg = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => break,
            };
            self.bump();
        }
        Ok(Expr::Sum(terms))
    }

    fn term(&mut self) -> Result<Expr> {
        let mut factors = vec![self.factor()?];
        while *self.peek() == Tok::Star {
            self.bump();
            factors.push(self.factor()?);
        }
        Ok(Expr::Product(factors))
    }

    fn factor(&mut self) -> Result<Expr> {
        let atom = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(atom);
        }
        self.bump();
        match self.peek().clone() {
            Tok::Int(v) => {
                let e: u32 = v
                    .try_into()
                    .map_err(|_| self.error("exponent too large".into()))?;
                self.bump();
                Ok(Expr::Pow(Box::new(atom), e))
            }
            _ => Err(self.unexpected("an unsigned integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().clone() {
            Tok::Int(num) => {
                self.bump();
                if *self.peek() != Tok::Slash {
                    return Ok(Expr::Num(Rational::from_integer(num)));
                }
                self.bump();
                match self.peek().clone() {
                    Tok::Int(den) if !den.is_zero() => {
                        self.bump();
                        Ok(Expr::Num(Rational::new(num, den)))
                    }
                    Tok::Int(_) => Err(self.error("zero denominator".into())),
                    _ => Err(self.unexpected("an unsigned integer denominator")),
                }
            }
            Tok::Ident(name) => {
                self.bump();
                if !self.seen.contains(&name) {
                    self.seen.push(name.clone());
                }
                Ok(Expr::Var(name))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.poly()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.unexpected("`)`"));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.unexpected("a number, variable or `(`")),
        }
    }
}

fn eval(e: &Expr, ranks: &HashMap<&str, usize>, n: usize) -> Result<Polynomial<Rationals>> {
    let q = Rationals;
    Ok(match e {
        Expr::Num(c) => Polynomial::constant(&q, n, c.clone()),
        Expr::Var(name) => {
            let r = *ranks
                .get(name.as_str())
                .ok_or_else(|| Error::UnknownVariable(name.clone()))?;
            Polynomial::var(&q, n, r)
        }
        Expr::Sum(terms) => {
            let mut acc = Polynomial::zero(&q, n);
            for (neg, t) in terms {
                let v = eval(t, ranks, n)?;
                acc = if *neg { &acc - &v } else { &acc + &v };
            }
            acc
        }
        Expr::Product(fs) => {
            let mut acc = Polynomial::one(&q, n);
            for f in fs {
                acc = &acc * &eval(f, ranks, n)?;
            }
            acc
        }
        Expr::Pow(b, k) => eval(b, ranks, n)?.pow(*k),
    })
}

fn parse_exprs(src: &str) -> Result<(Vec<Expr>, Vec<String>)> {
    let mut p = Parser {
        toks: lex(src)?,
        at: 0,
        seen: Vec::new(),
    };
    let exprs = p.system()?;
    Ok((exprs, p.seen))
}

/// Parses a `;`-separated system.
///
/// Without an explicit ordering the variables are ranked by first appearance.
/// With one, `ordering` lists the names from smallest to greatest and every
/// variable in the text must occur in it.
pub fn parse_system(
    src: &str,
    ordering: Option<&[String]>,
) -> Result<(Vec<Polynomial<Rationals>>, VarTable)> {
    let (exprs, seen) = parse_exprs(src)?;
    let names = match ordering {
        Some(o) => o.to_vec(),
        None => seen,
    };
    let vars = VarTable::natural(names)?;
    let ranks: HashMap<&str, usize> = vars
        .names()
        .iter()
        .enumerate()
        .map(|(i, n)| (n.as_str(), i))
        .collect();
    let polys = exprs
        .iter()
        .map(|e| eval(e, &ranks, vars.len()))
        .collect::<Result<Vec<_>>>()?;
    Ok((polys, vars))
}

/// Parses one polynomial whose variables are `names`, listed by ascending rank.
pub fn parse_poly_in<S: AsRef<str>>(src: &str, names: &[S]) -> Result<Polynomial<Rationals>> {
    let (exprs, _) = parse_exprs(src)?;
    if exprs.len() != 1 {
        return Err(Error::Invalid("expected a single polynomial".into()));
    }
    let ranks: HashMap<&str, usize> = names
        .iter()
        .enumerate()
        .map(|(i, n)| (n.as_ref(), i))
        .collect();
    eval(&exprs[0], &ranks, names.len())
}

/// Parses polynomials over `x1 < .. < xn`.
pub fn parse_polys_indexed(src: &str, n: usize) -> Result<Vec<Polynomial<Rationals>>> {
    let names = VarTable::indexed(n).rank_names();
    parse_system(src, Some(&names)).map(|(p, _)| p)
}

/// Prints a system in the text format, one polynomial per line.
pub fn print_system<F: Field>(polys: &[Polynomial<F>], vars: &VarTable) -> String {
    let names = vars.rank_names();
    polys
        .iter()
        .map(|p| p.to_string_with(&names))
        .collect::<Vec<_>>()
        .join(";\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_system_prefix() {
        let (f, vars) = parse_system("x2+x1+2; (x2+2)*x3+x1", None).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(vars.names(), ["x2", "x1", "x3"]);
        let names = vars.rank_names();
        assert_eq!(f[1].to_string_with(&names), "x2*x3 + 2*x3 + x1");
    }

    #[test]
    fn exact_rational_coefficient() {
        let f = parse_poly_in("x1^2 - 1/2", &["x1"]).unwrap();
        assert_eq!(f.constant_value(), None);
        let c = f.coeff_of_power(0, 0).constant_value().unwrap();
        assert_eq!(c, Rational::new((-1).into(), 2.into()));
    }

    #[test]
    fn reports_position_of_dangling_operator() {
        match parse_system("x1 + ", None) {
            Err(Error::Syntax { line, column, message }) => {
                assert_eq!((line, column), (1, 6));
                assert!(message.contains("end of input"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
        match parse_system("x1;\nx2 ** x3", None) {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 5)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_implicit_multiplication_and_bad_chars() {
        assert!(parse_system("2 x1", None).is_err());
        assert!(parse_system("x1 $ x2", None).is_err());
        assert!(parse_system("1/0", None).is_err());
    }

    #[test]
    fn unknown_variable_in_explicit_ordering() {
        let order = vec!["x1".to_string()];
        assert_eq!(
            parse_system("x1 + y", Some(&order)).unwrap_err(),
            Error::UnknownVariable("y".into())
        );
    }

    #[test]
    fn comments_and_trailing_separator() {
        let (f, _) = parse_system("# header\nx1 - 1; # first\n x2;\n", None).unwrap();
        assert_eq!(f.len(), 2);
    }

    #[test]
    fn round_trip_on_worked_examples() {
        let corpus = [
            "x2+x1+2; (x2+2)*x3+x1; (x3+x2)*x4 + x3 - 1; x4+x2",
            "x2+x1; x3+x1; x4^2+x2; x4^3+x3; x5+x2; x5+x3+x2",
            "x1+x2; x1+x3; x2+x3; x4^3+x1; x3*x4^2+x3+x4",
            "-x2*x4 + x3; x3^2 + x2^3; 1/2*x1 - 3/4",
        ];
        for src in corpus {
            let (f, vars) = parse_system(src, None).unwrap();
            let printed = print_system(&f, &vars);
            let (g, _) = parse_system(&printed, Some(&vars.rank_names())).unwrap();
            assert_eq!(f, g, "{src}");
        }
    }

    proptest! {
        #[test]
        fn print_parse_identity(coeffs in proptest::collection::vec((-9i64..10, 1i64..5, 0u32..3, 0u32..3), 0..6)) {
            let q = Rationals;
            let f = Polynomial::from_terms(&q, 2, coeffs.into_iter().map(|(n, d, a, b)| {
                (vec![a, b], Rational::new(n.into(), d.into()))
            }));
            let names = ["a", "b"];
            let g = parse_poly_in(&f.to_string_with(&names), &names).unwrap();
            prop_assert_eq!(f, g);
        }
    }
}
