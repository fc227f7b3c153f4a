//! Text grammar for polynomials and coordinate lists.
//!
//! ```text
//! poly    := term (("+" | "-") term)* ;
//! term    := coeff ("*" factor)* | factor ("*" factor)* ;
//! factor  := var ("^" uint)? ;
//! var     := "X" uint              (1-based index <= n_vars)
//! coeff   := uint | "g" ("^" uint)? ;
//! ```
//!
//! Whitespace is insignificant. `-` means subtraction, which in
//! characteristic 2 coincides with `+`. In dimension <= 3 the parser also
//! accepts `X`, `Y`, `Z` as aliases for `X1`, `X2`, `X3`; the printer never
//! emits them. Coordinate lists are polynomials separated by `;`.
//!
//! The printer stays inside the grammar: a coefficient that is neither an
//! integer nor a power of `g` (possible when the residue of `t` does not
//! generate `F_q^*`) is split across several printed terms for the same
//! monomial, which the parser re-collects.

use crate::gf::{FFElem, FieldSpec};
use crate::mpoly::{Mono, Poly};
use crate::{Error, Result};

struct Scanner<'a> {
    text: &'a str,
    pos: usize,
    /// Added to positions in reported errors, so errors inside a `;`
    /// segment point into the full input.
    base: usize,
}

impl<'a> Scanner<'a> {
    fn new(text: &'a str, base: usize) -> Scanner<'a> {
        Scanner { text, pos: 0, base }
    }

    fn err<T>(&self, pos: usize, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.base + pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        let bytes = self.text.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.text.as_bytes().get(self.pos).copied()
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn read_uint(&mut self) -> Result<u64> {
        let bytes = self.text.as_bytes();
        let start = self.pos;
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err(start, "expected an integer");
        }
        self.text[start..self.pos]
            .parse()
            .or_else(|_| self.err(start, "integer literal too large"))
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.text.len()
    }
}

fn parse_var(s: &mut Scanner, n_vars: usize) -> Result<usize> {
    let start = s.pos;
    let c = s.peek();
    s.bump();
    let alias = |s: &Scanner, idx: usize| -> Result<usize> {
        if n_vars > 3 {
            return s.err(start, "X/Y/Z aliases are only available in dimension <= 3");
        }
        if idx >= n_vars {
            return s.err(start, format!("variable X{} out of range (n = {n_vars})", idx + 1));
        }
        Ok(idx)
    };
    match c {
        Some(b'X') => {
            if matches!(s.peek(), Some(d) if d.is_ascii_digit()) {
                let idx = s.read_uint()?;
                if idx == 0 {
                    return s.err(start, "variables are 1-based: X1, X2, ...");
                }
                if idx as usize > n_vars {
                    return s.err(start, format!("variable X{idx} out of range (n = {n_vars})"));
                }
                Ok(idx as usize - 1)
            } else {
                alias(s, 0)
            }
        }
        Some(b'Y') => alias(s, 1),
        Some(b'Z') => alias(s, 2),
        _ => s.err(start, "expected a variable"),
    }
}

/// factor := var ("^" uint)?  — returns (variable index, exponent).
fn parse_factor(s: &mut Scanner, n_vars: usize) -> Result<(usize, u32)> {
    let var = parse_var(s, n_vars)?;
    s.skip_ws();
    let exp = if s.peek() == Some(b'^') {
        s.bump();
        s.skip_ws();
        let start = s.pos;
        let e = s.read_uint()?;
        u32::try_from(e).or_else(|_| s.err(start, "exponent too large"))?
    } else {
        1
    };
    Ok((var, exp))
}

fn parse_term(s: &mut Scanner, field: &FieldSpec, n_vars: usize) -> Result<Poly> {
    s.skip_ws();
    let start = s.pos;
    let mut coeff = field.one();
    let leading_coeff = match s.peek() {
        Some(d) if d.is_ascii_digit() => {
            let v = s.read_uint()?;
            coeff = field.from_int((v % field.p() as u64) as i64);
            true
        }
        Some(b'g') => {
            s.bump();
            let g = match field.g() {
                Some(g) => g,
                None => return s.err(start, "g is undefined for prime fields"),
            };
            let mut e = 1u64;
            s.skip_ws();
            if s.peek() == Some(b'^') {
                s.bump();
                s.skip_ws();
                e = s.read_uint()?;
            }
            coeff = field.pow(g, e);
            true
        }
        _ => false,
    };

    let mut exps = vec![0u32; n_vars];
    let mut any_factor = false;
    if !leading_coeff {
        s.skip_ws();
        match s.peek() {
            Some(b'X') | Some(b'Y') | Some(b'Z') => {
                let (var, e) = parse_factor(s, n_vars)?;
                exps[var] = exps[var].checked_add(e).expect("exponent overflow");
                any_factor = true;
            }
            _ => return s.err(s.pos, "expected a term"),
        }
    }
    loop {
        s.skip_ws();
        if s.peek() != Some(b'*') {
            break;
        }
        s.bump();
        s.skip_ws();
        let (var, e) = parse_factor(s, n_vars)?;
        exps[var] = exps[var].checked_add(e).expect("exponent overflow");
        any_factor = true;
    }
    let _ = any_factor;
    let mut p = Poly::zero(field, n_vars);
    p.add_term(Mono::new(exps), coeff);
    Ok(p)
}

fn parse_poly_scanner(s: &mut Scanner, field: &FieldSpec, n_vars: usize) -> Result<Poly> {
    let mut acc = parse_term(s, field, n_vars)?;
    loop {
        s.skip_ws();
        match s.peek() {
            Some(b'+') => {
                s.bump();
                let t = parse_term(s, field, n_vars)?;
                acc = acc.add(&t)?;
            }
            Some(b'-') => {
                s.bump();
                let t = parse_term(s, field, n_vars)?;
                acc = acc.sub(&t)?;
            }
            _ => return Ok(acc),
        }
    }
}

/// Parse a polynomial in `n_vars` variables.
pub fn parse_poly(text: &str, field: &FieldSpec, n_vars: usize) -> Result<Poly> {
    let mut s = Scanner::new(text, 0);
    let p = parse_poly_scanner(&mut s, field, n_vars)?;
    if !s.at_end() {
        return s.err(s.pos, "unexpected character");
    }
    Ok(p)
}

/// Parse a `;`-separated list of polynomials, each in `n_vars` variables.
/// Error positions refer to the full input text.
pub fn parse_coords(text: &str, field: &FieldSpec, n_vars: usize) -> Result<Vec<Poly>> {
    let mut out = Vec::new();
    let mut base = 0usize;
    for segment in text.split(';') {
        if segment.trim().is_empty() {
            return Err(Error::Parse { pos: base, msg: "empty coordinate".to_string() });
        }
        let mut s = Scanner::new(segment, base);
        let p = parse_poly_scanner(&mut s, field, n_vars)?;
        if !s.at_end() {
            return Err(Error::Parse {
                pos: base + s.pos,
                msg: "unexpected character".to_string(),
            });
        }
        out.push(p);
        base += segment.len() + 1;
    }
    Ok(out)
}

/// Coefficient as a single grammar literal, when one exists.
fn single_coeff_literal(field: &FieldSpec, c: FFElem) -> Option<String> {
    if let Some(k) = field.as_prime_int(c) {
        return Some(k.to_string());
    }
    let k = field.dlog(c)?;
    Some(if k == 1 { "g".to_string() } else { format!("g^{k}") })
}

fn format_term(coeff_literal: Option<&str>, mono: &Mono) -> String {
    let mut parts: Vec<String> = Vec::new();
    if let Some(lit) = coeff_literal {
        if lit != "1" || mono.total_degree() == 0 {
            parts.push(lit.to_string());
        }
    }
    for (i, &e) in mono.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(format!("X{}", i + 1)),
            _ => parts.push(format!("X{}^{e}", i + 1)),
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// Canonical rendering: terms in descending graded-lex order, `+` only.
pub fn format_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let field = p.field();
    let mut rendered: Vec<String> = Vec::new();
    for (mono, coeff) in p.terms().rev() {
        if let Some(lit) = single_coeff_literal(field, coeff) {
            rendered.push(format_term(Some(&lit), mono));
            continue;
        }
        // Not expressible as one literal: emit one printed term per base-p
        // component, repeating terms when the component multiplier is not
        // itself expressible.
        let g = field.g().expect("non-literal coefficients require m >= 2");
        for (i, a) in field.components(coeff) {
            let value = field.mul(field.from_int(a as i64), field.pow(g, i as u64));
            if let Some(lit) = single_coeff_literal(field, value) {
                rendered.push(format_term(Some(&lit), mono));
            } else {
                let lit = if i == 1 { "g".to_string() } else { format!("g^{i}") };
                for _ in 0..a {
                    rendered.push(format_term(Some(&lit), mono));
                }
            }
        }
    }
    rendered.join(" + ")
}

/// Render a coordinate list in the map syntax.
pub fn format_coords(polys: &[Poly]) -> String {
    polys.iter().map(format_poly).collect::<Vec<_>>().join("; ")
}
