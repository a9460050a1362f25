//! A small arithmetic expression language shared by group specs, the
//! `invariants` command and motive text.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' ['-'] integer)?
//! atom   := integer | ident | 'E' '(' integer ')' | '(' expr ')'
//! ```
//!
//! `E(k)` is the primitive root of unity `exp(2πi/k)`. The meaning of an
//! identifier depends on the evaluator: `z` in a cyclotomic context, a
//! polynomial variable in [`eval_multipoly`], and `L` in [`eval_motive`].

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use thiserror::Error;

use crate::arith::{CyclotomicNumber, MotiveExpr, MultiPoly, QPoly, Rational};

/// Longest accepted input in bytes.
pub const MAX_INPUT: usize = 64 * 1024;
/// Deepest accepted nesting of parentheses and unary minus.
pub const MAX_DEPTH: usize = 64;
/// Largest accepted exponent magnitude.
pub const MAX_EXPONENT: i64 = 4096;
/// Largest polynomial degree an evaluator will build.
pub const MAX_DEGREE: usize = 4096;
/// Largest coefficient size (in bits) an evaluator will build.
const MAX_BITS: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {pos}: {message}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("E({k}) is not available in conductor {conductor}")]
    Conductor { k: u32, conductor: u32 },
    #[error("{0} is not a polynomial")]
    NotPolynomial(String),
    #[error("result too large")]
    TooLarge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Var(String),
    /// `E(k)`.
    Root(u32),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

impl Expr {
    /// Binding strength: sums 0, products 1, negation 2, powers 3, atoms 4.
    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 0,
            Expr::Mul(..) | Expr::Div(..) => 1,
            Expr::Neg(_) => 2,
            Expr::Pow(..) => 3,
            Expr::Int(n) if n.is_negative() => 2,
            Expr::Int(_) | Expr::Var(_) | Expr::Root(_) => 4,
        }
    }

    /// Writes `self` where the grammar expects something binding at least `min`.
    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            f.write_str("(")?;
            self.write_at(f, 0)?;
            return f.write_str(")");
        }
        let binary = |f: &mut fmt::Formatter<'_>, a: &Expr, op: &str, b: &Expr, level: u8| {
            a.write_at(f, level)?;
            f.write_str(op)?;
            b.write_at(f, level + 1)
        };
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Var(v) => f.write_str(v),
            Expr::Root(k) => write!(f, "E({k})"),
            Expr::Neg(a) => {
                f.write_str("-")?;
                a.write_at(f, 2)
            }
            Expr::Add(a, b) => binary(f, a, " + ", b, 0),
            Expr::Sub(a, b) => binary(f, a, " - ", b, 0),
            Expr::Mul(a, b) => binary(f, a, "*", b, 1),
            Expr::Div(a, b) => binary(f, a, "/", b, 1),
            Expr::Pow(a, e) => {
                a.write_at(f, 4)?;
                write!(f, "^{e}")
            }
        }
    }
}

/// Prints with the fewest parentheses that reparse to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    depth: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { pos: self.pos, message: message.into() })
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

    fn enter(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return self.err("expression nested too deeply");
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(b'*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat(b'/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat(b'-') {
            self.enter()?;
            let inner = self.unary()?;
            self.depth -= 1;
            return Ok(Expr::Neg(Box::new(inner)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let negative = self.eat(b'-');
        self.skip_ws();
        let start = self.pos;
        let n = self.integer()?;
        let e = match n.to_i64() {
            Some(e) if e <= MAX_EXPONENT => e,
            _ => {
                self.pos = start;
                return self.err(format!("exponent exceeds {MAX_EXPONENT}"));
            }
        };
        Ok(Expr::Pow(Box::new(base), if negative { -e } else { e }))
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("decimal digits"))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                self.enter()?;
                let inner = self.expr()?;
                self.depth -= 1;
                if !self.eat(b')') {
                    return self.err("expected `)`");
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => Ok(Expr::Int(self.integer()?)),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier");
                if name == "E" && self.peek() == Some(b'(') {
                    self.pos += 1;
                    let at = self.pos;
                    let k = self.integer()?;
                    let k = match k.to_u32() {
                        Some(k) if (1..=crate::group::MAX_CONDUCTOR).contains(&k) => k,
                        _ => {
                            self.pos = at;
                            return self.err(format!(
                                "root order must lie in 1..={}",
                                crate::group::MAX_CONDUCTOR
                            ));
                        }
                    };
                    if !self.eat(b')') {
                        return self.err("expected `)` after E(k");
                    }
                    return Ok(Expr::Root(k));
                }
                Ok(Expr::Var(name.to_string()))
            }
            Some(c) => self.err(format!("unexpected character `{}`", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses an expression.
pub fn parse(input: &str) -> Result<Expr, ParseError> {
    if input.len() > MAX_INPUT {
        return Err(ParseError { pos: MAX_INPUT, message: "input too long".into() });
    }
    let mut p = Parser { src: input.as_bytes(), pos: 0, depth: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

fn rational_bits(q: &Rational) -> u64 {
    q.numer().bits() + q.denom().bits()
}

fn cyclo_bits(c: &CyclotomicNumber) -> u64 {
    c.coeffs().iter().map(rational_bits).max().unwrap_or(0)
}

fn check_pow_bits(bits: u64, e: i64) -> Result<(), EvalError> {
    if (bits + 8).saturating_mul(e.unsigned_abs()) > MAX_BITS {
        return Err(EvalError::TooLarge);
    }
    Ok(())
}

/// Evaluates in `Q(ζ_m)`, reading `symbol` as `ζ_m` and `E(k)` as `ζ_k` for `k | m`.
pub fn eval_cyclotomic(expr: &Expr, conductor: u32, symbol: &str) -> Result<CyclotomicNumber, EvalError> {
    let rec = |e: &Expr| eval_cyclotomic(e, conductor, symbol);
    Ok(match expr {
        Expr::Int(n) => CyclotomicNumber::from_rational(Rational::from_integer(n.clone()), conductor),
        Expr::Var(v) if v == symbol => CyclotomicNumber::zeta_pow(1, conductor),
        Expr::Var(v) => return Err(EvalError::UnknownSymbol(v.clone())),
        Expr::Root(k) => root_in(*k, conductor)?,
        Expr::Neg(a) => -&rec(a)?,
        Expr::Add(a, b) => &rec(a)? + &rec(b)?,
        Expr::Sub(a, b) => &rec(a)? - &rec(b)?,
        Expr::Mul(a, b) => &rec(a)? * &rec(b)?,
        Expr::Div(a, b) => {
            let d = rec(b)?.inverse().ok_or(EvalError::DivisionByZero)?;
            &rec(a)? * &d
        }
        Expr::Pow(a, e) => {
            let base = rec(a)?;
            check_pow_bits(cyclo_bits(&base), *e)?;
            base.pow(*e).ok_or(EvalError::DivisionByZero)?
        }
    })
}

fn root_in(k: u32, conductor: u32) -> Result<CyclotomicNumber, EvalError> {
    if !conductor.is_multiple_of(k) {
        return Err(EvalError::Conductor { k, conductor });
    }
    Ok(CyclotomicNumber::zeta_pow((conductor / k) as i64, conductor))
}

/// Evaluates to a polynomial with coefficients in `Q(ζ_conductor)`; every
/// identifier is a variable. Division and negative powers are allowed only for constants.
pub fn eval_multipoly(expr: &Expr, conductor: u32) -> Result<MultiPoly, EvalError> {
    let rec = |e: &Expr| eval_multipoly(e, conductor);
    let out = match expr {
        Expr::Int(n) => MultiPoly::constant(CyclotomicNumber::from_rational(
            Rational::from_integer(n.clone()),
            conductor,
        )),
        Expr::Var(v) => MultiPoly::var(v, conductor),
        Expr::Root(k) => MultiPoly::constant(root_in(*k, conductor)?),
        Expr::Neg(a) => -&rec(a)?,
        Expr::Add(a, b) => &rec(a)? + &rec(b)?,
        Expr::Sub(a, b) => &rec(a)? - &rec(b)?,
        Expr::Mul(a, b) => {
            let (x, y) = (rec(a)?, rec(b)?);
            let deg = x.total_degree().unwrap_or(0) as usize + y.total_degree().unwrap_or(0) as usize;
            if deg > MAX_DEGREE {
                return Err(EvalError::TooLarge);
            }
            &x * &y
        }
        Expr::Div(a, b) => {
            let d = as_constant(&rec(b)?, expr)?.inverse().ok_or(EvalError::DivisionByZero)?;
            rec(a)?.scale(&d)
        }
        Expr::Pow(a, e) => {
            let base = rec(a)?;
            if *e < 0 {
                let c = as_constant(&base, expr)?;
                check_pow_bits(cyclo_bits(&c), *e)?;
                MultiPoly::constant(c.pow(*e).ok_or(EvalError::DivisionByZero)?)
            } else {
                let deg = base.total_degree().unwrap_or(0) as u64;
                if deg.saturating_mul(*e as u64) > MAX_DEGREE as u64 {
                    return Err(EvalError::TooLarge);
                }
                let bits = base.terms().map(|(_, c)| cyclo_bits(c)).max().unwrap_or(0);
                check_pow_bits(bits + base.num_terms() as u64, *e)?;
                base.pow(*e as u32)
            }
        }
    };
    Ok(out)
}

fn as_constant(p: &MultiPoly, ctx: &Expr) -> Result<CyclotomicNumber, EvalError> {
    if p.is_zero() {
        return Ok(CyclotomicNumber::zero(p.conductor()));
    }
    match p.terms().next() {
        Some((exps, c)) if p.num_terms() == 1 && exps.iter().all(|&x| x == 0) => Ok(c.clone()),
        _ => Err(EvalError::NotPolynomial(ctx.to_string())),
    }
}

/// Evaluates to a rational function of `L`.
pub fn eval_motive(expr: &Expr) -> Result<MotiveExpr, EvalError> {
    let out = match expr {
        Expr::Int(n) => MotiveExpr::from_rational(Rational::from_integer(n.clone())),
        Expr::Var(v) if v == "L" => MotiveExpr::lefschetz(),
        Expr::Var(v) => return Err(EvalError::UnknownSymbol(v.clone())),
        Expr::Root(k) => return Err(EvalError::UnknownSymbol(format!("E({k})"))),
        Expr::Neg(a) => -&eval_motive(a)?,
        Expr::Add(a, b) => sized(&eval_motive(a)? + &eval_motive(b)?)?,
        Expr::Sub(a, b) => sized(&eval_motive(a)? - &eval_motive(b)?)?,
        Expr::Mul(a, b) => sized(&eval_motive(a)? * &eval_motive(b)?)?,
        Expr::Div(a, b) => {
            let d = eval_motive(b)?;
            if d.is_zero() {
                return Err(EvalError::DivisionByZero);
            }
            sized(&eval_motive(a)? / &d)?
        }
        Expr::Pow(a, e) => {
            let base = eval_motive(a)?;
            let size = motive_size(&base);
            if (size.0 as u64).saturating_mul(e.unsigned_abs()) > MAX_DEGREE as u64 {
                return Err(EvalError::TooLarge);
            }
            check_pow_bits(size.1, *e)?;
            base.pow(*e).map_err(|_| EvalError::DivisionByZero)?
        }
    };
    Ok(out)
}

fn poly_bits(p: &QPoly) -> u64 {
    p.coeffs().iter().map(rational_bits).max().unwrap_or(0)
}

fn motive_size(m: &MotiveExpr) -> (usize, u64) {
    let deg = m.numerator().degree().unwrap_or(0) + m.denominator().degree().unwrap_or(0);
    (deg, poly_bits(m.numerator()).max(poly_bits(m.denominator())) + deg as u64)
}

fn sized(m: MotiveExpr) -> Result<MotiveExpr, EvalError> {
    let (deg, bits) = motive_size(&m);
    if deg > 2 * MAX_DEGREE || bits > MAX_BITS {
        return Err(EvalError::TooLarge);
    }
    Ok(m)
}

/// True when the expression is a signed integer literal.
pub fn as_integer(expr: &Expr) -> Option<BigInt> {
    match expr {
        Expr::Int(n) => Some(n.clone()),
        Expr::Neg(a) => as_integer(a).map(|n| -n),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use proptest::prelude::*;

    #[test]
    fn precedence_and_powers() {
        let e = parse("2 + 3*4^2 - -1").unwrap();
        let v = eval_cyclotomic(&e, 1, "z").unwrap();
        assert_eq!(v.to_rational(), Some(rat(51, 1)));
        let e = parse("-2^2").unwrap();
        assert_eq!(eval_cyclotomic(&e, 1, "z").unwrap().to_rational(), Some(rat(-4, 1)));
    }

    #[test]
    fn roots_of_unity() {
        let e = parse("z^3 - 2").unwrap();
        let v = eval_cyclotomic(&e, 4, "z").unwrap();
        assert_eq!(v, &CyclotomicNumber::zeta_pow(3, 4) - &CyclotomicNumber::from_int(2, 4));
        let e = parse("E(4)^2").unwrap();
        assert_eq!(eval_cyclotomic(&e, 8, "z").unwrap(), CyclotomicNumber::from_int(-1, 8));
        assert!(matches!(
            eval_cyclotomic(&parse("E(3)").unwrap(), 8, "z"),
            Err(EvalError::Conductor { k: 3, conductor: 8 })
        ));
        let inv = eval_cyclotomic(&parse("1/z").unwrap(), 5, "z").unwrap();
        assert_eq!(inv, CyclotomicNumber::zeta_pow(4, 5));
    }

    #[test]
    fn motive_text() {
        let m = eval_motive(&parse("(L^2 - 1)/(L - 1)").unwrap()).unwrap();
        assert_eq!(m.to_string(), "L + 1");
        assert!(eval_motive(&parse("x").unwrap()).is_err());
        assert_eq!(eval_motive(&parse("1/0").unwrap()), Err(EvalError::DivisionByZero));
    }

    #[test]
    fn polynomials() {
        let p = eval_multipoly(&parse("(u + v)^2 / 2").unwrap(), 1).unwrap();
        assert_eq!(p.to_string(), "1/2*u^2 + u*v + 1/2*v^2");
        assert!(eval_multipoly(&parse("1/u").unwrap(), 1).is_err());
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("1 + (2 * ").unwrap_err();
        assert_eq!(e.pos, 9);
        let e = parse("x ^ 99999").unwrap_err();
        assert_eq!(e.pos, 4);
        assert!(parse("1 2").is_err());
        let deep = "(".repeat(100) + "1" + &")".repeat(100);
        assert!(parse(&deep).is_err());
    }

    #[test]
    fn oversized_results_are_refused() {
        assert_eq!(eval_motive(&parse("(L^4096)^4096").unwrap()), Err(EvalError::TooLarge));
        assert_eq!(
            eval_cyclotomic(&parse("((2^4096)^4096)^4096").unwrap(), 1, "z"),
            Err(EvalError::TooLarge)
        );
    }

    #[test]
    fn printing_uses_minimal_parentheses() {
        for (input, printed) in [
            ("1 + 2 + 3 - 4", "1 + 2 + 3 - 4"),
            ("1 - (2 - 3)", "1 - (2 - 3)"),
            ("a/(b*c)", "a/(b*c)"),
            ("(x^2)^3", "(x^2)^3"),
            ("-x^2 * -(y + 1)", "-x^2*-(y + 1)"),
            ("((((x))))^-3", "x^-3"),
        ] {
            assert_eq!(parse(input).unwrap().to_string(), printed);
        }
        let long = (1..200).map(|i| i.to_string()).collect::<Vec<_>>().join(" + ");
        let e = parse(&long).unwrap();
        assert_eq!(parse(&e.to_string()).unwrap(), e);
    }

    fn arb_expr() -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![
            (0u32..50).prop_map(|n| Expr::Int(n.into())),
            prop_oneof![Just("x"), Just("z"), Just("L")].prop_map(|v| Expr::Var(v.into())),
            (1u32..13).prop_map(Expr::Root),
        ];
        leaf.prop_recursive(6, 48, 2, |inner| {
            let pair = || (inner.clone(), inner.clone()).prop_map(|(a, b)| (Box::new(a), Box::new(b)));
            prop_oneof![
                inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
                pair().prop_map(|(a, b)| Expr::Add(a, b)),
                pair().prop_map(|(a, b)| Expr::Sub(a, b)),
                pair().prop_map(|(a, b)| Expr::Mul(a, b)),
                pair().prop_map(|(a, b)| Expr::Div(a, b)),
                (inner, -5i64..6).prop_map(|(a, e)| Expr::Pow(Box::new(a), e)),
            ]
        })
    }

    proptest! {
        #[test]
        fn printed_expressions_reparse(e in arb_expr()) {
            prop_assert_eq!(parse(&e.to_string()).unwrap(), e);
        }
    }
}
