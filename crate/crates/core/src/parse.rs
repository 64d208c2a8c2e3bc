//! Recursive descent parser for polynomials and holomorphic vector fields.
//!
//! ```text
//! expr   := ('+'|'-')? term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' uint)?
//! atom   := rational | 'i' | 'z1' | 'z2' | 'Z1' | 'Z2' | 'w' | 'W' | 'u'
//!         | 'Re(' expr ')' | 'Im(' expr ')' | 'conj(' expr ')' | '(' expr ')'
//!         | 'd1' | 'd2' | 'dw'            (fields only)
//! ```

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::{GaussRat, HoloField, MixedPoly, Mono, Rat};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
enum Val {
    Poly(MixedPoly),
    Field(HoloField),
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    fields: bool,
}

fn syntax(pos: usize, message: impl Into<String>) -> Error {
    Error::Syntax { pos, message: message.into() }
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(syntax(self.pos, format!("expected '{}'", c as char)))
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.s[start..self.pos]).ok()?.parse().ok()
    }

    fn expr(&mut self) -> Result<Val> {
        let mut acc = if self.eat(b'-') {
            neg(self.term()?)
        } else {
            self.eat(b'+');
            self.term()?
        };
        loop {
            let at = self.pos;
            if self.eat(b'+') {
                acc = add(acc, self.term()?, at)?;
            } else if self.eat(b'-') {
                acc = add(acc, neg(self.term()?), at)?;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Val> {
        let mut acc = self.factor()?;
        loop {
            let at = self.pos;
            if self.eat(b'*') {
                acc = mul(acc, self.factor()?, at)?;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Val> {
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let at = self.pos;
            let e = self.digits().ok_or_else(|| syntax(at, "expected exponent"))?;
            let e: u32 = e.try_into().map_err(|_| syntax(at, "exponent too large"))?;
            return match base {
                Val::Poly(p) => Ok(Val::Poly(p.pow(e))),
                Val::Field(_) => Err(syntax(at, "cannot raise a vector field to a power")),
            };
        }
        Ok(base)
    }

    fn ident(&mut self) -> &'a [u8] {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        &self.s[start..self.pos]
    }

    fn atom(&mut self) -> Result<Val> {
        let c = self.peek().ok_or_else(|| syntax(self.pos, "unexpected end of input"))?;
        let at = self.pos;
        if c.is_ascii_digit() {
            let n = self.digits().unwrap();
            let mut r = Rat::from_integer(n);
            if self.s.get(self.pos) == Some(&b'/') {
                self.pos += 1;
                let dpos = self.pos;
                let d = self.digits().ok_or_else(|| syntax(dpos, "expected denominator"))?;
                if d.is_zero() {
                    return Err(syntax(dpos, "zero denominator"));
                }
                r /= Rat::from_integer(d);
            }
            return Ok(Val::Poly(MixedPoly::constant(GaussRat::real(r))));
        }
        if c == b'(' {
            self.pos += 1;
            let v = self.expr()?;
            self.expect(b')')?;
            return Ok(v);
        }
        if !c.is_ascii_alphabetic() {
            return Err(syntax(at, format!("unexpected '{}'", c as char)));
        }
        let id = self.ident();
        let mono = |m: Mono| Ok(Val::Poly(MixedPoly::mono(m)));
        match id {
            b"i" => Ok(Val::Poly(MixedPoly::constant(GaussRat::i()))),
            b"z1" => mono(Mono::z(1, 0)),
            b"z2" => mono(Mono::z(0, 1)),
            b"Z1" => mono(Mono::zz(0, 0, 1, 0)),
            b"Z2" => mono(Mono::zz(0, 0, 0, 1)),
            b"w" => mono(Mono::holo(0, 0, 1)),
            b"W" => mono(Mono { cwb: 1, ..Mono::ONE }),
            b"u" => mono(Mono { cu: 1, ..Mono::ONE }),
            b"d1" | b"d2" | b"dw" if self.fields => {
                let one = MixedPoly::one();
                let f = match id {
                    b"d1" => HoloField { f1: one, ..HoloField::zero() },
                    b"d2" => HoloField { f2: one, ..HoloField::zero() },
                    _ => HoloField { g: one, ..HoloField::zero() },
                };
                Ok(Val::Field(f))
            }
            b"Re" | b"Im" | b"conj" => {
                self.expect(b'(')?;
                let inner = self.expr()?;
                self.expect(b')')?;
                let Val::Poly(p) = inner else {
                    return Err(syntax(at, "Re/Im/conj apply to polynomials only"));
                };
                Ok(Val::Poly(match id {
                    b"Re" => p.re(),
                    b"Im" => p.im(),
                    _ => p.conj(),
                }))
            }
            _ => Err(syntax(at, format!("unknown identifier '{}'", String::from_utf8_lossy(id)))),
        }
    }
}

fn neg(v: Val) -> Val {
    match v {
        Val::Poly(p) => Val::Poly(-&p),
        Val::Field(f) => Val::Field(f.scale(&GaussRat::from_int(-1))),
    }
}

fn add(a: Val, b: Val, at: usize) -> Result<Val> {
    match (a, b) {
        (Val::Poly(x), Val::Poly(y)) => Ok(Val::Poly(&x + &y)),
        (Val::Field(x), Val::Field(y)) => Ok(Val::Field(x.add(&y))),
        (Val::Poly(x), Val::Field(y)) | (Val::Field(y), Val::Poly(x)) if x.is_zero() => Ok(Val::Field(y)),
        _ => Err(syntax(at, "cannot add a polynomial and a vector field")),
    }
}

fn mul(a: Val, b: Val, at: usize) -> Result<Val> {
    match (a, b) {
        (Val::Poly(x), Val::Poly(y)) => Ok(Val::Poly(&x * &y)),
        (Val::Poly(x), Val::Field(f)) | (Val::Field(f), Val::Poly(x)) => {
            Ok(Val::Field(HoloField { f1: &x * &f.f1, f2: &x * &f.f2, g: &x * &f.g }))
        }
        (Val::Field(_), Val::Field(_)) => Err(syntax(at, "cannot multiply two vector fields")),
    }
}

fn run(text: &str, fields: bool) -> Result<Val> {
    let mut p = Parser { s: text.as_bytes(), pos: 0, fields };
    let v = p.expr()?;
    if p.peek().is_some() {
        return Err(syntax(p.pos, "trailing input"));
    }
    Ok(v)
}

/// Parses a polynomial expression.
pub fn parse_polynomial(text: &str) -> Result<MixedPoly> {
    match run(text, false)? {
        Val::Poly(p) => Ok(p),
        Val::Field(_) => unreachable!("field atoms are disabled"),
    }
}

/// Parses a real model polynomial; rejects non-real input.
pub fn parse_model(text: &str) -> Result<MixedPoly> {
    MixedPoly::real_from(parse_polynomial(text)?)
}

/// Parses a holomorphic vector field written as a sum of coefficient *
/// direction terms.
pub fn parse_field(text: &str) -> Result<HoloField> {
    let f = match run(text, true)? {
        Val::Field(f) => f,
        Val::Poly(p) if p.is_zero() => HoloField::zero(),
        Val::Poly(_) => return Err(syntax(text.len(), "expected a vector field (missing d1, d2 or dw)")),
    };
    HoloField::new(f.f1, f.f2, f.g)
}
