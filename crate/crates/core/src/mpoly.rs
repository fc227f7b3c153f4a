//! Sparse multivariate polynomials over a [`FieldSpec`].
//!
//! Terms live in a map keyed by exponent vector under graded lexicographic
//! order, which doubles as the canonical form for equality and printing.
//! All operations are formal: in particular [`Poly::substitute`] expands
//! the composition without ever identifying `X^q` with `X`. The functional
//! view (two polynomials inducing the same map on `F_q^n`) is available
//! separately through [`Poly::functional_reduce`]; keeping the two apart is
//! the point of the whole exercise.

use std::collections::BTreeMap;
use std::fmt;

use crate::gf::{FFElem, FieldSpec};
use crate::{Error, Result};

pub mod text;

/// Exponent vector with graded lexicographic ordering: compare total degree
/// first, then the exponents of `X1, X2, ...` in turn.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono(Vec<u32>);

impl Mono {
    pub fn new(exponents: Vec<u32>) -> Mono {
        Mono(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    fn mul(&self, other: &Mono) -> Mono {
        Mono(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.checked_add(b).expect("exponent overflow"))
                .collect(),
        )
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `n_vars` variables over a fixed finite field, stored
/// sparsely. No stored coefficient is zero; the zero polynomial has no
/// terms.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: FieldSpec,
    n_vars: usize,
    terms: BTreeMap<Mono, FFElem>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.field, text::format_poly(self))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", text::format_poly(self))
    }
}

impl Poly {
    pub fn zero(field: &FieldSpec, n_vars: usize) -> Poly {
        Poly { field: field.clone(), n_vars, terms: BTreeMap::new() }
    }

    pub fn constant(field: &FieldSpec, n_vars: usize, c: FFElem) -> Poly {
        let mut p = Poly::zero(field, n_vars);
        if c != field.zero() {
            p.terms.insert(Mono(vec![0; n_vars]), c);
        }
        p
    }

    /// The variable `X_{i+1}` (zero-based `i`).
    pub fn var(field: &FieldSpec, n_vars: usize, i: usize) -> Poly {
        assert!(i < n_vars, "variable index {i} out of range for {n_vars} variables");
        let mut exps = vec![0; n_vars];
        exps[i] = 1;
        let mut p = Poly::zero(field, n_vars);
        p.terms.insert(Mono(exps), field.one());
        p
    }

    /// Build from raw `(exponents, coefficient)` pairs; duplicates are
    /// summed and zero coefficients dropped.
    pub fn from_terms<I>(field: &FieldSpec, n_vars: usize, terms: I) -> Poly
    where
        I: IntoIterator<Item = (Vec<u32>, FFElem)>,
    {
        let mut p = Poly::zero(field, n_vars);
        for (exps, c) in terms {
            assert_eq!(exps.len(), n_vars);
            p.add_term(Mono(exps), c);
        }
        p
    }

    fn add_term(&mut self, mono: Mono, c: FFElem) {
        if c == self.field.zero() {
            return;
        }
        let entry = self.terms.entry(mono);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = self.field.add(*o.get(), c);
                if sum == self.field.zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, FFElem)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    /// Total degree of the highest term; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().next_back().map(|m| m.total_degree())
    }

    pub fn coeff(&self, exponents: &[u32]) -> FFElem {
        self.terms
            .get(&Mono(exponents.to_vec()))
            .copied()
            .unwrap_or_else(|| self.field.zero())
    }

    /// True when the polynomial is literally the variable `X_{i+1}`.
    pub fn is_variable(&self, i: usize) -> bool {
        self.terms.len() == 1 && {
            let (m, c) = self.terms.iter().next().unwrap();
            c == &self.field.one()
                && m.total_degree() == 1
                && m.0.get(i) == Some(&1)
        }
    }

    /// True when variable `X_{i+1}` appears in no term.
    pub fn omits_variable(&self, i: usize) -> bool {
        self.terms.keys().all(|m| m.0[i] == 0)
    }

    fn check_compatible(&self, other: &Poly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.n_vars != other.n_vars {
            return Err(Error::ArityMismatch { expected: self.n_vars, got: other.n_vars });
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Poly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = self.field.neg(*c);
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        let mut out = Poly::zero(&self.field, self.n_vars);
        for (ma, &ca) in &self.terms {
            for (mb, &cb) in &other.terms {
                out.add_term(ma.mul(mb), self.field.mul(ca, cb));
            }
        }
        Ok(out)
    }

    /// Multiply every coefficient by `c` (interpreted in this polynomial's
    /// field).
    pub fn scale(&self, c: FFElem) -> Poly {
        let mut out = Poly::zero(&self.field, self.n_vars);
        for (m, &a) in &self.terms {
            out.add_term(m.clone(), self.field.mul(a, c));
        }
        out
    }

    /// `self^e` by repeated squaring.
    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::constant(&self.field, self.n_vars, self.field.one());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same field");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same field");
            }
        }
        acc
    }

    /// Evaluate at a point of `F_q^n`.
    pub fn eval(&self, point: &[FFElem]) -> Result<FFElem> {
        if point.len() != self.n_vars {
            return Err(Error::ArityMismatch { expected: self.n_vars, got: point.len() });
        }
        let f = &self.field;
        let mut total = f.zero();
        for (m, &c) in &self.terms {
            let mut v = c;
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    v = f.mul(v, f.pow(*x, e as u64));
                }
            }
            total = f.add(total, v);
        }
        Ok(total)
    }

    /// Formal composition `self(args[0], ..., args[n-1])`, fully expanded.
    /// The arguments must share a field and a common variable count, which
    /// becomes the variable count of the result.
    pub fn substitute(&self, args: &[Poly]) -> Result<Poly> {
        if args.len() != self.n_vars {
            return Err(Error::ArityMismatch { expected: self.n_vars, got: args.len() });
        }
        let out_vars = match args.first() {
            Some(a) => {
                for b in args {
                    a.check_compatible(b)?;
                }
                if a.field != self.field {
                    return Err(Error::FieldMismatch);
                }
                a.n_vars
            }
            // A constant in zero variables substitutes into zero variables.
            None => 0,
        };
        let mut out = Poly::zero(&self.field, out_vars);
        // Powers of each argument are shared across terms.
        let mut powers: Vec<std::collections::HashMap<u32, Poly>> =
            vec![Default::default(); args.len()];
        for (m, &c) in &self.terms {
            let mut acc = Poly::constant(&self.field, out_vars, c);
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = powers[i]
                    .entry(e)
                    .or_insert_with(|| args[i].pow(e))
                    .clone();
                acc = acc.mul(&pw)?;
            }
            out = out.add(&acc)?;
        }
        Ok(out)
    }

    /// The canonical functional representative: every exponent `e >= 1`
    /// becomes `((e-1) mod (q-1)) + 1` and coefficients are re-collected,
    /// using `x^q = x` on `F_q`. Exponent 0 stays 0 (so `x^0 = 1` survives
    /// at `x = 0`).
    pub fn functional_reduce(&self) -> Poly {
        let q = self.field.q() as u64;
        let mut out = Poly::zero(&self.field, self.n_vars);
        for (m, &c) in &self.terms {
            let exps: Vec<u32> = m
                .0
                .iter()
                .map(|&e| {
                    if e == 0 {
                        0
                    } else {
                        (((e as u64 - 1) % (q - 1)) + 1) as u32
                    }
                })
                .collect();
            out.add_term(Mono(exps), c);
        }
        out
    }
}
