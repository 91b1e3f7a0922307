//! Textual syntax: parsing and canonical printing of scalars, Lie
//! expressions, and generator-assignment maps.
//!
//! Grammar (whitespace free between tokens):
//!
//! ```text
//! expr     := ['-'] term (('+'|'-') term)*
//! term     := coeff '*' atom | atom | zero-scalar
//! atom     := generator | '[' expr ',' expr ']' | '(' expr ')'
//! coeff    := rational | quad | '(' quad ')'
//! quad     := '(' rational ')' '+' '(' rational ')' '*' 'w'      (w = sqrt d)
//! rational := ['-'] digits ['/' digits]
//! map      := generator '=>' expr (';' generator '=>' expr)* [';']
//! ```
//!
//! Printing emits terms in canonical graded basis order and round-trips:
//! `parse(format(p)) = p`. These entry points accept untrusted input and
//! must fail with positioned errors, never panic.

use crate::error::{Error, Result};
use crate::hall::BasisTable;
use crate::poly::LiePoly;
use crate::scalar::{Field, Scalar};
use num::{BigInt, BigRational, Zero};
use std::sync::Arc;

const MAX_DEPTH: usize = 240;

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    ctx: &'a Arc<BasisTable>,
    depth: usize,
}

/// Parses an expression into a normalized polynomial over the table's basis.
pub fn parse_poly(text: &str, ctx: &Arc<BasisTable>) -> Result<LiePoly> {
    let mut p = Parser { chars: text.chars().collect(), pos: 0, ctx, depth: 0 };
    p.skip_ws();
    let poly = p.parse_expr()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(p.fail("unexpected trailing input"));
    }
    Ok(poly)
}

/// Parses a standalone scalar literal in the given field.
pub fn parse_scalar(text: &str, field: Field) -> Result<Scalar> {
    // reuse the expression machinery with a dummy rank-1 table
    let ctx = BasisTable::generate(1, 1, field, None)?;
    let mut p = Parser { chars: text.chars().collect(), pos: 0, ctx: &ctx, depth: 0 };
    p.skip_ws();
    let s = p
        .parse_scalar_literal()?
        .ok_or_else(|| p.fail("expected a scalar literal"))?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(p.fail("unexpected trailing input"));
    }
    Ok(s)
}

/// Parses a generator-assignment map `x=>expr; y=>expr; ...` where the
/// left-hand names come from the table itself. Every generator must be
/// assigned exactly once.
pub fn parse_endo_map(text: &str, ctx: &Arc<BasisTable>) -> Result<Vec<LiePoly>> {
    parse_map(text, ctx.gen_names(), ctx)
}

/// Parses an assignment map whose left-hand names are the source
/// generators and whose expressions live over `ctx` (possibly a different
/// algebra), as used for morphisms between free algebras.
pub fn parse_map(text: &str, names: &[String], ctx: &Arc<BasisTable>) -> Result<Vec<LiePoly>> {
    let mut p = Parser { chars: text.chars().collect(), pos: 0, ctx, depth: 0 };
    let n = names.len();
    let mut images: Vec<Option<LiePoly>> = vec![None; n];
    loop {
        p.skip_ws();
        if p.pos == p.chars.len() {
            break;
        }
        let name = p.parse_ident().ok_or_else(|| p.fail("expected a generator name"))?;
        let gen = names
            .iter()
            .position(|g| *g == name)
            .ok_or(Error::UnknownGenerator(name.clone()))?;
        p.skip_ws();
        if !(p.eat('=') && p.eat('>')) {
            return Err(p.fail("expected `=>`"));
        }
        p.skip_ws();
        let value = p.parse_expr()?;
        if images[gen].replace(value).is_some() {
            return Err(Error::BadSpec(format!("generator `{name}` assigned twice")));
        }
        p.skip_ws();
        if !p.eat(';') {
            break;
        }
    }
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(p.fail("unexpected trailing input"));
    }
    images
        .into_iter()
        .enumerate()
        .map(|(i, img)| {
            img.ok_or_else(|| Error::BadSpec(format!("generator `{}` unassigned", names[i])))
        })
        .collect()
}

impl<'a> Parser<'a> {
    fn fail(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.into() }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn enter(&mut self) -> Result<()> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.fail("expression nesting too deep"));
        }
        Ok(())
    }

    fn parse_expr(&mut self) -> Result<LiePoly> {
        self.enter()?;
        self.skip_ws();
        let mut negate_first = false;
        if self.peek() == Some('-') {
            // unary minus only when a term follows, not a signed coefficient
            // like `-2*x`, which the term parser handles itself
            let save = self.pos;
            self.pos += 1;
            self.skip_ws();
            if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                self.pos = save;
            } else {
                negate_first = true;
            }
        }
        let first = self.parse_term()?;
        let mut acc = if negate_first { first.negate() } else { first };
        loop {
            self.skip_ws();
            let op = match self.peek() {
                Some('+') => false,
                Some('-') => true,
                _ => break,
            };
            self.pos += 1;
            self.skip_ws();
            let term = self.parse_term()?;
            acc = if op { acc.sub(&term)? } else { acc.add(&term)? };
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn parse_term(&mut self) -> Result<LiePoly> {
        self.enter()?;
        let save = self.pos;
        if let Some(coeff) = self.parse_scalar_literal()? {
            self.skip_ws();
            if self.eat('*') {
                self.skip_ws();
                let atom = self.parse_atom()?;
                self.depth -= 1;
                return atom.scale(&coeff);
            }
            if coeff.is_zero() {
                self.depth -= 1;
                return Ok(LiePoly::zero(self.ctx.clone()));
            }
            // a bare nonzero scalar is not a Lie element; maybe the text was
            // an atom after all (e.g. `(x+y)` almost parsed as a quad)
            self.pos = save;
        }
        let atom = self.parse_atom()?;
        self.depth -= 1;
        Ok(atom)
    }

    fn parse_atom(&mut self) -> Result<LiePoly> {
        self.enter()?;
        self.skip_ws();
        let result = match self.peek() {
            Some('[') => {
                self.pos += 1;
                let left = self.parse_expr()?;
                self.skip_ws();
                if !self.eat(',') {
                    return Err(self.fail("expected `,` in bracket"));
                }
                let right = self.parse_expr()?;
                self.skip_ws();
                if !self.eat(']') {
                    return Err(self.fail("expected `]`"));
                }
                left.bracket(&right)?
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.parse_expr()?;
                self.skip_ws();
                if !self.eat(')') {
                    return Err(self.fail("expected `)`"));
                }
                inner
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let name = self.parse_ident().expect("alphabetic start");
                let gen = self
                    .ctx
                    .gen_index(&name)
                    .ok_or(Error::UnknownGenerator(name))?;
                LiePoly::generator(self.ctx.clone(), gen)?
            }
            _ => return Err(self.fail("expected generator, `[` or `(`")),
        };
        self.depth -= 1;
        Ok(result)
    }

    fn parse_ident(&mut self) -> Option<String> {
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_alphabetic() || c == '_' => self.pos += 1,
            _ => return None,
        }
        while matches!(self.peek(), Some(c) if c.is_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        Some(self.chars[start..self.pos].iter().collect())
    }

    /// Tries to read a scalar literal. Backtracks and returns None when the
    /// text cannot start one; semantic failures inside a syntactically
    /// complete literal (zero denominator, a surd over the plain rationals)
    /// propagate instead of being retried as something else.
    fn parse_scalar_literal(&mut self) -> Result<Option<Scalar>> {
        let save = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_digit() || c == '-' => match self.parse_rational() {
                Ok(r) => Ok(Some(Scalar::from_rational(r, self.ctx.field()))),
                Err(Error::Syntax { .. }) => {
                    self.pos = save;
                    Ok(None)
                }
                Err(e) => Err(e),
            },
            Some('(') => {
                // either `(a)+(b)*w` or the same wrapped in one more layer
                match self.parse_quad() {
                    Ok(s) => return Ok(Some(s)),
                    Err(Error::Syntax { .. }) => {}
                    Err(e) => return Err(e),
                }
                self.pos = save;
                self.pos += 1;
                self.skip_ws();
                match self.parse_quad() {
                    Ok(s) => {
                        self.skip_ws();
                        if self.eat(')') {
                            return Ok(Some(s));
                        }
                    }
                    Err(Error::Syntax { .. }) => {}
                    Err(e) => return Err(e),
                }
                self.pos = save;
                Ok(None)
            }
            _ => Ok(None),
        }
    }

    fn parse_quad(&mut self) -> Result<Scalar> {
        if !self.eat('(') {
            return Err(self.fail("expected `(`"));
        }
        self.skip_ws();
        let a = self.parse_rational()?;
        self.skip_ws();
        if !self.eat(')') {
            return Err(self.fail("expected `)`"));
        }
        self.skip_ws();
        if !self.eat('+') {
            return Err(self.fail("expected `+`"));
        }
        self.skip_ws();
        if !self.eat('(') {
            return Err(self.fail("expected `(`"));
        }
        self.skip_ws();
        let b = self.parse_rational()?;
        self.skip_ws();
        if !self.eat(')') {
            return Err(self.fail("expected `)`"));
        }
        self.skip_ws();
        if !self.eat('*') {
            return Err(self.fail("expected `*`"));
        }
        self.skip_ws();
        if !self.eat('w') {
            return Err(self.fail("expected `w`"));
        }
        if !self.ctx.field().is_quad() && !b.is_zero() {
            return Err(Error::FieldMismatch);
        }
        Scalar::quad(a, b, self.ctx.field())
    }

    fn parse_rational(&mut self) -> Result<BigRational> {
        let negative = self.eat('-');
        let numer = self.parse_digits()?;
        let denom = if self.eat('/') {
            let d = self.parse_digits()?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            d
        } else {
            BigInt::from(1)
        };
        let r = BigRational::new(numer, denom);
        Ok(if negative { -r } else { r })
    }

    fn parse_digits(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.fail("expected digits"));
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse::<BigInt>().map_err(|_| self.fail("bad integer"))
    }
}

/// Canonical text: terms in graded basis order, `0` for the zero polynomial.
pub fn format_poly(p: &LiePoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let ctx = p.ctx();
    let mut out = String::new();
    for (k, (idx, coeff)) in p.terms().iter().enumerate() {
        let atom = ctx.bracket_text(*idx);
        let (joined_negative, body) = render_term(coeff, &atom);
        if k == 0 {
            if joined_negative {
                out.push('-');
            }
        } else if joined_negative {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        out.push_str(&body);
    }
    out
}

/// Renders one term, factoring the sign out of prime-subfield coefficients.
fn render_term(coeff: &Scalar, atom: &str) -> (bool, String) {
    if coeff.in_prime_subfield() {
        let r = coeff.rational_part();
        let negative = r < &BigRational::zero();
        let abs = if negative { -r } else { r.clone() };
        let field = coeff.field();
        let abs_scalar = Scalar::from_rational(abs, field);
        if abs_scalar.is_one() {
            (negative, atom.to_string())
        } else {
            (negative, format!("{}*{}", abs_scalar.canonical_text(), atom))
        }
    } else {
        (false, format!("({})*{}", coeff.canonical_text(), atom))
    }
}

/// Canonical text for a generator-assignment map.
pub fn format_endo_map(images: &[LiePoly], ctx: &Arc<BasisTable>) -> String {
    images
        .iter()
        .enumerate()
        .map(|(i, img)| format!("{}=>{}", ctx.gen_names()[i], format_poly(img)))
        .collect::<Vec<_>>()
        .join("; ")
}
