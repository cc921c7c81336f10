//! S-expression reader shared by message terms and the integer and rational
//! expression languages.
//!
//! Terms: `(nonce N)`, `(mpair T T)`, `(crypt K T)`, `(decrypt K T)`.
//! Integer expressions: literals and `(+ a b ..)`, `(- a [b])`, `(* a b ..)`,
//! `(neg a)`, `(nat a)`, `(le a b)`. Rational expressions: literals `n` or
//! `n/d` and `(+ ..)`, `(* ..)`, `(neg a)`, `(inv a)`.

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, ParseError, ParseErrorKind, Result};
use crate::int::{Nat, QInt};
use crate::msg::FreeMsg;
use crate::rat::QRat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sexp {
    Atom {
        text: String,
        offset: usize,
    },
    List {
        items: Vec<Sexp>,
        open: usize,
        close: usize,
    },
}

impl Sexp {
    pub fn offset(&self) -> usize {
        match self {
            Sexp::Atom { offset, .. } => *offset,
            Sexp::List { open, .. } => *open,
        }
    }
}

impl fmt::Display for Sexp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sexp::Atom { text, .. } => f.write_str(text),
            Sexp::List { items, .. } => {
                f.write_str("(")?;
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    item.fmt(f)?;
                }
                f.write_str(")")
            }
        }
    }
}

struct Reader<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Reader<'a> {
    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn read(&mut self) -> std::result::Result<Sexp, ParseError> {
        self.skip_ws();
        match self.peek() {
            None => Err(ParseError::new(self.pos, ParseErrorKind::UnexpectedEof)),
            Some(')') => Err(ParseError::new(self.pos, ParseErrorKind::UnexpectedClose)),
            Some('(') => {
                let open = self.pos;
                self.pos += 1;
                let mut items = Vec::new();
                loop {
                    self.skip_ws();
                    match self.peek() {
                        None => {
                            return Err(ParseError::new(self.pos, ParseErrorKind::UnexpectedEof))
                        }
                        Some(')') => {
                            let close = self.pos;
                            self.pos += 1;
                            return Ok(Sexp::List { items, open, close });
                        }
                        Some(_) => items.push(self.read()?),
                    }
                }
            }
            Some(_) => {
                let offset = self.pos;
                let rest = &self.src[offset..];
                let len = rest
                    .find(|c: char| c.is_whitespace() || c == '(' || c == ')')
                    .unwrap_or(rest.len());
                self.pos += len;
                Ok(Sexp::Atom {
                    text: rest[..len].to_string(),
                    offset,
                })
            }
        }
    }
}

/// Reads exactly one s-expression.
pub fn parse_sexp(text: &str) -> std::result::Result<Sexp, ParseError> {
    let mut r = Reader { src: text, pos: 0 };
    let e = r.read()?;
    r.skip_ws();
    if r.pos < text.len() {
        return Err(ParseError::new(r.pos, ParseErrorKind::TrailingInput));
    }
    Ok(e)
}

fn err<T>(offset: usize, kind: ParseErrorKind) -> std::result::Result<T, ParseError> {
    Err(ParseError::new(offset, kind))
}

/// Splits a list into its head symbol and arguments.
fn head_and_args(e: &Sexp) -> std::result::Result<(&str, usize, &[Sexp], usize), ParseError> {
    match e {
        Sexp::Atom { offset, .. } => err(*offset, ParseErrorKind::ExpectedList),
        Sexp::List { items, open, close } => match items.split_first() {
            None => err(*open, ParseErrorKind::EmptyList),
            Some((Sexp::Atom { text, offset }, args)) => Ok((text, *offset, args, *close)),
            Some((head, _)) => err(head.offset(), ParseErrorKind::ExpectedAtom),
        },
    }
}

fn arity(head: &str, expected: &str, found: usize, close: usize) -> ParseError {
    ParseError::new(
        close,
        ParseErrorKind::Arity {
            head: head.to_string(),
            expected: expected.to_string(),
            found,
        },
    )
}

fn natural(e: &Sexp) -> std::result::Result<u64, ParseError> {
    match e {
        Sexp::Atom { text, offset } => text
            .parse::<u64>()
            .map_err(|_| ParseError::new(*offset, ParseErrorKind::BadNumber(text.clone()))),
        Sexp::List { open, .. } => err(*open, ParseErrorKind::ExpectedAtom),
    }
}

fn term_of(e: &Sexp) -> std::result::Result<FreeMsg, ParseError> {
    let (head, head_at, args, close) = head_and_args(e)?;
    let want = |n: usize| {
        if args.len() == n {
            Ok(())
        } else {
            Err(arity(head, &n.to_string(), args.len(), close))
        }
    };
    match head {
        "nonce" => {
            want(1)?;
            Ok(crate::msg::nonce(natural(&args[0])?))
        }
        "mpair" => {
            want(2)?;
            Ok(crate::msg::mpair(term_of(&args[0])?, term_of(&args[1])?))
        }
        "crypt" => {
            want(2)?;
            Ok(crate::msg::crypt(natural(&args[0])?, term_of(&args[1])?))
        }
        "decrypt" => {
            want(2)?;
            Ok(crate::msg::decrypt(natural(&args[0])?, term_of(&args[1])?))
        }
        other => err(
            head_at,
            ParseErrorKind::UnknownConstructor(other.to_string()),
        ),
    }
}

pub fn parse_term(text: &str) -> std::result::Result<FreeMsg, ParseError> {
    term_of(&parse_sexp(text)?)
}

/// Result of an integer expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IntValue {
    Int(QInt),
    Nat(Nat),
    Bool(bool),
}

impl fmt::Display for IntValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntValue::Int(z) => write!(f, "{z}"),
            IntValue::Nat(n) => write!(f, "{n}"),
            IntValue::Bool(b) => write!(f, "{b}"),
        }
    }
}

fn int_operand(e: &Sexp) -> std::result::Result<QInt, ParseError> {
    match eval_int_sexp(e)? {
        IntValue::Int(z) => Ok(z),
        IntValue::Nat(n) => Ok(QInt::from_nat(n)),
        IntValue::Bool(_) => err(
            e.offset(),
            ParseErrorKind::Type("expected an integer, found a boolean".into()),
        ),
    }
}

fn eval_int_sexp(e: &Sexp) -> std::result::Result<IntValue, ParseError> {
    if let Sexp::Atom { text, offset } = e {
        let i: BigInt = text
            .parse()
            .map_err(|_| ParseError::new(*offset, ParseErrorKind::BadNumber(text.clone())))?;
        return Ok(IntValue::Int(QInt::from_bigint(&i)));
    }
    let (head, head_at, args, close) = head_and_args(e)?;
    let operands = || {
        args.iter()
            .map(int_operand)
            .collect::<std::result::Result<Vec<_>, _>>()
    };
    let value = match (head, args.len()) {
        ("+", n) if n >= 2 => IntValue::Int(fold(operands()?, QInt::add)),
        ("*", n) if n >= 2 => IntValue::Int(fold(operands()?, QInt::mul)),
        ("-", 1) | ("neg", 1) => IntValue::Int(int_operand(&args[0])?.neg()),
        ("-", 2) => {
            let v = operands()?;
            IntValue::Int(v[0].add(&v[1].neg()))
        }
        ("nat", 1) => IntValue::Nat(int_operand(&args[0])?.to_nat()),
        ("le", 2) => {
            let v = operands()?;
            IntValue::Bool(v[0].le(&v[1]))
        }
        ("+", n) | ("*", n) => return Err(arity(head, "at least 2", n, close)),
        ("-", n) => return Err(arity(head, "1 or 2", n, close)),
        ("neg", n) | ("nat", n) => return Err(arity(head, "1", n, close)),
        ("le", n) => return Err(arity(head, "2", n, close)),
        (other, _) => return err(head_at, ParseErrorKind::UnknownOperator(other.to_string())),
    };
    Ok(value)
}

fn fold<T>(values: Vec<T>, op: impl Fn(&T, &T) -> T) -> T {
    let mut it = values.into_iter();
    let first = it.next().expect("at least one operand");
    it.fold(first, |acc, v| op(&acc, &v))
}

pub fn eval_int(text: &str) -> std::result::Result<IntValue, ParseError> {
    eval_int_sexp(&parse_sexp(text)?)
}

fn rat_literal(text: &str, offset: usize) -> Result<QRat> {
    let bad = || {
        Error::Parse(ParseError::new(
            offset,
            ParseErrorKind::BadNumber(text.to_string()),
        ))
    };
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    QRat::new(num, den)
}

fn eval_rat_sexp(e: &Sexp) -> Result<QRat> {
    if let Sexp::Atom { text, offset } = e {
        return rat_literal(text, *offset);
    }
    let (head, head_at, args, close) = head_and_args(e)?;
    let operands = || args.iter().map(eval_rat_sexp).collect::<Result<Vec<_>>>();
    match (head, args.len()) {
        ("+", n) if n >= 2 => Ok(fold(operands()?, QRat::add)),
        ("*", n) if n >= 2 => Ok(fold(operands()?, QRat::mul)),
        ("neg", 1) => Ok(eval_rat_sexp(&args[0])?.neg()),
        ("inv", 1) => eval_rat_sexp(&args[0])?.inv(),
        ("+", n) | ("*", n) => Err(arity(head, "at least 2", n, close).into()),
        ("neg", n) | ("inv", n) => Err(arity(head, "1", n, close).into()),
        (other, _) => {
            Err(ParseError::new(head_at, ParseErrorKind::UnknownOperator(other.to_string())).into())
        }
    }
}

/// Evaluates a rational expression. Zero denominators and inverting zero are
/// domain errors.
pub fn eval_rat(text: &str) -> Result<QRat> {
    eval_rat_sexp(&parse_sexp(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::msg::{crypt, decrypt, nonce};

    #[test]
    fn parses_terms() {
        assert_eq!(
            parse_term("(crypt 1 (decrypt 1 (nonce 5)))").unwrap(),
            crypt(1, decrypt(1, nonce(5)))
        );
        assert_eq!(parse_term("  ( nonce\n 5 )  ").unwrap(), nonce(5));
    }

    #[test]
    fn term_errors() {
        let e = parse_term("(mpair (nonce 1))").unwrap_err();
        assert_eq!(e.offset, 16);
        assert!(
            matches!(e.kind, ParseErrorKind::Arity { ref head, found: 1, .. } if head == "mpair")
        );

        let e = parse_term("(seal 1 (nonce 2))").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnknownConstructor("seal".into()));
        assert_eq!(e.offset, 1);
        assert!(e.to_string().contains("seal"));

        assert_eq!(
            parse_term("(nonce 1").unwrap_err().kind,
            ParseErrorKind::UnexpectedEof
        );
        assert_eq!(
            parse_term("(nonce 1))").unwrap_err().kind,
            ParseErrorKind::TrailingInput
        );
        assert_eq!(
            parse_term(")").unwrap_err().kind,
            ParseErrorKind::UnexpectedClose
        );
        assert_eq!(
            parse_term("()").unwrap_err().kind,
            ParseErrorKind::EmptyList
        );
        assert_eq!(
            parse_term("nonce").unwrap_err().kind,
            ParseErrorKind::ExpectedList
        );
        assert_eq!(
            parse_term("(nonce -1)").unwrap_err().kind,
            ParseErrorKind::BadNumber("-1".into())
        );
        assert_eq!(
            parse_term("((nonce) 1)").unwrap_err().kind,
            ParseErrorKind::ExpectedAtom
        );
        assert_eq!(
            parse_term("").unwrap_err().kind,
            ParseErrorKind::UnexpectedEof
        );
    }

    #[test]
    fn int_expressions() {
        assert_eq!(
            eval_int("(* (+ 1 1) -3)").unwrap(),
            IntValue::Int(QInt::from_native(-6))
        );
        assert_eq!(
            eval_int("(- 2 5)").unwrap(),
            IntValue::Int(QInt::from_native(-3))
        );
        assert_eq!(
            eval_int("(nat (- 2 5))").unwrap(),
            IntValue::Nat(Nat::from(0u32))
        );
        assert_eq!(eval_int("(le (neg 2) 1)").unwrap(), IntValue::Bool(true));
        assert_eq!(
            eval_int("(+ (nat 4) 1)").unwrap(),
            IntValue::Int(QInt::from_native(5))
        );
        assert!(matches!(
            eval_int("(+ (le 1 2) 1)").unwrap_err().kind,
            ParseErrorKind::Type(_)
        ));
        assert!(matches!(
            eval_int("(neg)").unwrap_err().kind,
            ParseErrorKind::Arity { .. }
        ));
        assert!(matches!(
            eval_int("(pow 2 3)").unwrap_err().kind,
            ParseErrorKind::UnknownOperator(_)
        ));
    }

    #[test]
    fn rat_expressions() {
        assert_eq!(eval_rat("(+ 1/2 1/3)").unwrap(), QRat::new(5, 6).unwrap());
        assert_eq!(eval_rat("(* 2/4 3/6)").unwrap(), QRat::new(1, 4).unwrap());
        assert_eq!(
            eval_rat("(inv (neg 3/4))").unwrap(),
            QRat::new(-4, 3).unwrap()
        );
        assert!(matches!(eval_rat("(inv 0)"), Err(Error::Domain { .. })));
        assert!(matches!(eval_rat("1/0"), Err(Error::Domain { .. })));
        assert!(matches!(eval_rat("1/x"), Err(Error::Parse(_))));
    }
}
