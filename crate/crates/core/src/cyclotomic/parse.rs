//! Whitespace-insensitive parser for the coefficient grammar: rational
//! expressions in the symbol `z` (also accepted: `ζ`) built from integer
//! literals, `+ - * /`, integer powers `^k`, and parentheses.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{CycloError, CycloNum};

struct Parser<'a> {
    input: &'a str,
    chars: Vec<char>,
    pos: usize,
    order: u32,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, reason: impl Into<String>) -> Result<T, CycloError> {
        Err(CycloError::Parse { input: self.input.to_string(), reason: reason.into() })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.pos += 1;
        c
    }

    fn expr(&mut self) -> Result<CycloNum, CycloError> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.bump();
            let rhs = self.term()?;
            acc = if c == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<CycloNum, CycloError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.bump();
                    let rhs = self.unary()?;
                    acc = &acc * &rhs;
                }
                Some('/') => {
                    self.bump();
                    let rhs = self.unary()?;
                    if rhs.is_zero() {
                        return self.err("division by zero");
                    }
                    acc = acc.checked_div(&rhs)?;
                }
                // juxtaposition: `2z`, `3(z+1)`
                Some(c) if c.is_ascii_digit() || c == 'z' || c == 'ζ' || c == '(' => {
                    let rhs = self.unary()?;
                    acc = &acc * &rhs;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<CycloNum, CycloError> {
        match self.peek() {
            Some('-') => {
                self.bump();
                Ok(-self.unary()?)
            }
            Some('+') => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<CycloNum, CycloError> {
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.bump();
        let negative = if self.peek() == Some('-') {
            self.bump();
            true
        } else {
            false
        };
        let Some(digits) = self.digits() else {
            return self.err("expected an integer exponent after '^'");
        };
        let Ok(mut e) = digits.parse::<i64>() else {
            return self.err("exponent out of range");
        };
        if negative {
            e = -e;
        }
        if e < 0 && base.is_zero() {
            return self.err("division by zero");
        }
        base.pow(e)
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn atom(&mut self) -> Result<CycloNum, CycloError> {
        match self.peek() {
            Some('z' | 'ζ') => {
                self.bump();
                Ok(CycloNum::root_power(self.order, 1))
            }
            Some('(') => {
                self.bump();
                let inner = self.expr()?;
                if self.bump() != Some(')') {
                    return self.err("unbalanced parenthesis");
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits().expect("peeked a digit");
                let n: BigInt = digits.parse().expect("ascii digits");
                CycloNum::from_rational(self.order, BigRational::from_integer(n))
            }
            Some(c) => self.err(format!("unexpected character {c:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses `text` as an element of Q(ζ_order).
pub fn parse_poly(order: u32, text: &str) -> Result<CycloNum, CycloError> {
    if order == 0 {
        return Err(CycloError::NonPositiveOrder);
    }
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace() && *c != '·').collect();
    let mut p = Parser { input: text, chars, pos: 0, order };
    let value = p.expr()?;
    if p.pos != p.chars.len() {
        return p.err("trailing input");
    }
    Ok(value)
}
