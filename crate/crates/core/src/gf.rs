//! Exact arithmetic in `F_{p^m}` with a canonical element indexing.
//!
//! An element is the coefficient vector `(a_0, ..., a_{m-1})` of
//! `a_0 + a_1 t + ... + a_{m-1} t^{m-1}` modulo the field modulus, encoded
//! as the base-`p` integer with `a_0` least significant. Index 0 is the
//! additive identity, index 1 the multiplicative identity, and for `m >= 2`
//! the residue class of `t` (index `p`) is called `g`.
//!
//! Fields are small by design (`q <= 256`); all arithmetic goes through
//! precomputed tables built at construction time. A [`FieldSpec`] is an
//! immutable shared handle, cheap to clone and safe to use from any thread.

use std::fmt;
use std::sync::Arc;

use crate::{Error, Result};

/// Largest supported field size. Everything downstream works pointwise on
/// `F_q^n` with `q^n <= 4096`, so fields beyond this are out of scope.
pub const MAX_FIELD_SIZE: u64 = 256;

/// An element of a finite field, identified by its canonical index in
/// `0..q-1`. Only meaningful together with the [`FieldSpec`] it came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FFElem(u32);

impl FFElem {
    /// The canonical index of this element.
    pub fn index(self) -> u32 {
        self.0
    }
}

struct Inner {
    p: u32,
    m: u32,
    q: u32,
    /// `m + 1` coefficients of the monic irreducible modulus, constant first.
    modulus: Vec<u32>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    /// `inv[0]` is unused.
    inv: Vec<u32>,
    /// Discrete log base `g` (residue of `t`); `None` for elements outside
    /// the cyclic group generated by `g`. Empty for prime fields.
    dlog: Vec<Option<u32>>,
    /// Index of a multiplicative generator of `F_q^*`.
    primitive: u32,
}

/// A finite field `F_{p^m}`, given by its characteristic, extension degree
/// and a monic irreducible modulus. Validated at construction; immutable
/// afterwards.
#[derive(Clone)]
pub struct FieldSpec(Arc<Inner>);

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p
                && self.0.m == other.0.m
                && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.designation_with_modulus())
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.designation())
    }
}

/// Built-in default moduli. Standard low-weight irreducibles; all of them
/// except the `F_9` one have `t` as a multiplicative generator.
const DEFAULT_MODULI: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),          // t^2 + t + 1
    (2, 3, &[1, 1, 0, 1]),       // t^3 + t + 1
    (2, 4, &[1, 1, 0, 0, 1]),    // t^4 + t + 1
    (2, 5, &[1, 0, 1, 0, 0, 1]), // t^5 + t^2 + 1
    (2, 6, &[1, 1, 0, 0, 0, 0, 1]), // t^6 + t + 1
    (3, 2, &[1, 0, 1]),          // t^2 + 1
];

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Format a polynomial over `F_p` (coefficients ascending) in the variable
/// `t`, for error messages.
fn fmt_fp_poly(coeffs: &[u32]) -> String {
    let mut parts = Vec::new();
    for (e, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let var = match e {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{e}"),
        };
        let part = match (c, e) {
            (_, 0) => format!("{c}"),
            (1, _) => var,
            _ => format!("{c}{var}"),
        };
        parts.push(part);
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join("+")
    }
}

/// Remainder of `dividend` modulo a monic `divisor`, coefficients mod `p`.
fn fp_poly_rem(dividend: &[u32], divisor: &[u32], p: u32) -> Vec<u32> {
    let d = divisor.len() - 1;
    debug_assert_eq!(divisor[d], 1);
    let mut rem: Vec<u32> = dividend.to_vec();
    while rem.len() > d {
        let lead = *rem.last().unwrap();
        let shift = rem.len() - 1 - d;
        if lead != 0 {
            for (i, &dc) in divisor.iter().enumerate() {
                let idx = shift + i;
                let sub = (lead * dc) % p;
                rem[idx] = (rem[idx] + p - sub) % p;
            }
        }
        debug_assert_eq!(*rem.last().unwrap(), 0);
        rem.pop();
    }
    rem
}

/// Exhaustive irreducibility test: a reducible polynomial of degree `m` has
/// a monic factor of degree at most `m/2`.
fn find_monic_factor(modulus: &[u32], p: u32) -> Option<Vec<u32>> {
    let m = modulus.len() - 1;
    for d in 1..=(m / 2) {
        let count = (p as u64).pow(d as u32);
        for k in 0..count {
            let mut divisor = vec![0u32; d + 1];
            let mut kk = k;
            for c in divisor.iter_mut().take(d) {
                *c = (kk % p as u64) as u32;
                kk /= p as u64;
            }
            divisor[d] = 1;
            let rem = fp_poly_rem(modulus, &divisor, p);
            if rem.iter().all(|&c| c == 0) {
                return Some(divisor);
            }
        }
    }
    None
}

impl FieldSpec {
    /// Construct `F_{p^m}`. When `modulus` is omitted a built-in default is
    /// used; the supplied or default modulus is checked to be monic,
    /// reduced, and irreducible over `F_p`.
    pub fn new(p: u32, m: u32, modulus: Option<&[u32]>) -> Result<FieldSpec> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if m == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = (p as u64).checked_pow(m).ok_or(Error::FieldTooLarge {
            q: u64::MAX,
            max: MAX_FIELD_SIZE,
        })?;
        if q > MAX_FIELD_SIZE {
            return Err(Error::FieldTooLarge { q, max: MAX_FIELD_SIZE });
        }
        let q = q as u32;

        let modulus: Vec<u32> = match modulus {
            Some(coeffs) => coeffs.to_vec(),
            None => {
                if m == 1 {
                    vec![0, 1] // t: any degree-1 monic works for a prime field
                } else {
                    DEFAULT_MODULI
                        .iter()
                        .find(|&&(dp, dm, _)| dp == p && dm == m)
                        .map(|&(_, _, c)| c.to_vec())
                        .ok_or(Error::NoDefaultModulus { p, m })?
                }
            }
        };

        if modulus.len() != m as usize + 1 {
            return Err(Error::ModulusLength {
                got: modulus.len(),
                expected: m as usize + 1,
                degree: m,
            });
        }
        if modulus[m as usize] != 1 {
            return Err(Error::ModulusNotMonic);
        }
        if let Some(&c) = modulus.iter().find(|&&c| c >= p) {
            return Err(Error::ModulusCoefficient(c, p));
        }
        if let Some(factor) = find_monic_factor(&modulus, p) {
            return Err(Error::ModulusReducible(fmt_fp_poly(&factor)));
        }

        Ok(FieldSpec(Arc::new(Inner::build(p, m, q, modulus))))
    }

    /// Parse a field designation: `GF(p^m)` or `GF(q)` with `q` a prime
    /// power, optionally followed by `mod=a0,a1,...,am`.
    pub fn parse_designation(text: &str) -> Result<FieldSpec> {
        let text = text.trim();
        let err = |msg: &str| Error::Parse { pos: 0, msg: msg.to_string() };
        let rest = text
            .strip_prefix("GF(")
            .ok_or_else(|| err("expected field designation starting with GF("))?;
        let close = rest
            .find(')')
            .ok_or_else(|| err("unclosed parenthesis in field designation"))?;
        let inside = &rest[..close];
        let after = rest[close + 1..].trim();

        let (p, m) = if let Some((ps, ms)) = inside.split_once('^') {
            let p: u32 = ps
                .trim()
                .parse()
                .map_err(|_| err("characteristic is not an integer"))?;
            let m: u32 = ms
                .trim()
                .parse()
                .map_err(|_| err("extension degree is not an integer"))?;
            (p, m)
        } else {
            let q: u64 = inside
                .trim()
                .parse()
                .map_err(|_| err("field size is not an integer"))?;
            prime_power(q).ok_or_else(|| err("field size is not a prime power"))?
        };

        let modulus = if after.is_empty() {
            None
        } else {
            let coeffs = after
                .strip_prefix("mod=")
                .ok_or_else(|| err("expected `mod=<coefficients>` after field designation"))?;
            let parsed: std::result::Result<Vec<u32>, _> =
                coeffs.split(',').map(|c| c.trim().parse()).collect();
            Some(parsed.map_err(|_| err("modulus coefficients must be integers"))?)
        };

        FieldSpec::new(p, m, modulus.as_deref())
    }

    /// `GF(p)` or `GF(p^m)`.
    pub fn designation(&self) -> String {
        if self.m() == 1 {
            format!("GF({})", self.p())
        } else {
            format!("GF({}^{})", self.p(), self.m())
        }
    }

    /// Designation together with the modulus, enough to reconstruct the
    /// field exactly.
    pub fn designation_with_modulus(&self) -> String {
        let coeffs: Vec<String> = self.modulus().iter().map(|c| c.to_string()).collect();
        format!("{} mod={}", self.designation(), coeffs.join(","))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn m(&self) -> u32 {
        self.0.m
    }

    /// Number of elements, `p^m`.
    pub fn q(&self) -> u32 {
        self.0.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn zero(&self) -> FFElem {
        FFElem(0)
    }

    pub fn one(&self) -> FFElem {
        FFElem(1)
    }

    /// The residue class of `t`, defined for extension fields only.
    pub fn g(&self) -> Option<FFElem> {
        if self.0.m >= 2 {
            Some(FFElem(self.0.p))
        } else {
            None
        }
    }

    /// A multiplicative generator of `F_q^*` (the smallest-index one).
    pub fn primitive_element(&self) -> FFElem {
        FFElem(self.0.primitive)
    }

    /// Checked element construction from an index.
    pub fn elem(&self, index: u32) -> Result<FFElem> {
        if index < self.0.q {
            Ok(FFElem(index))
        } else {
            Err(Error::ElementRange { index, q: self.0.q })
        }
    }

    /// Embed an integer via reduction mod `p`.
    pub fn from_int(&self, k: i64) -> FFElem {
        let p = self.0.p as i64;
        FFElem(k.rem_euclid(p) as u32)
    }

    /// All `q` elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FFElem> {
        (0..self.0.q).map(FFElem)
    }

    pub fn add(&self, a: FFElem, b: FFElem) -> FFElem {
        FFElem(self.0.add[(a.0 * self.0.q + b.0) as usize])
    }

    pub fn sub(&self, a: FFElem, b: FFElem) -> FFElem {
        self.add(a, self.neg(b))
    }

    pub fn neg(&self, a: FFElem) -> FFElem {
        FFElem(self.0.neg[a.0 as usize])
    }

    pub fn mul(&self, a: FFElem, b: FFElem) -> FFElem {
        FFElem(self.0.mul[(a.0 * self.0.q + b.0) as usize])
    }

    pub fn inv(&self, a: FFElem) -> Result<FFElem> {
        if a.0 == 0 {
            Err(Error::ZeroInverse)
        } else {
            Ok(FFElem(self.0.inv[a.0 as usize]))
        }
    }

    /// `a^e` with the convention `a^0 = 1` for every `a` (empty product).
    pub fn pow(&self, a: FFElem, e: u64) -> FFElem {
        if e == 0 {
            return self.one();
        }
        if a.0 == 0 {
            return self.zero();
        }
        // Nonzero elements satisfy a^(q-1) = 1.
        let mut e = (e % (self.0.q as u64 - 1)) as u32;
        if e == 0 {
            return self.one();
        }
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The Frobenius map `a -> a^p`.
    pub fn frobenius(&self, a: FFElem) -> FFElem {
        self.pow(a, self.0.p as u64)
    }

    /// Coefficient vector `(a_0, ..., a_{m-1})` of an element.
    pub fn coeff_vector(&self, a: FFElem) -> Vec<u32> {
        let mut v = vec![0u32; self.0.m as usize];
        let mut idx = a.0;
        for c in v.iter_mut() {
            *c = idx % self.0.p;
            idx /= self.0.p;
        }
        v
    }

    /// Inverse of [`coeff_vector`](Self::coeff_vector).
    pub fn from_coeff_vector(&self, v: &[u32]) -> Result<FFElem> {
        if v.len() != self.0.m as usize {
            return Err(Error::ArityMismatch { expected: self.0.m as usize, got: v.len() });
        }
        let mut idx = 0u32;
        for &c in v.iter().rev() {
            if c >= self.0.p {
                return Err(Error::ModulusCoefficient(c, self.0.p));
            }
            idx = idx * self.0.p + c;
        }
        Ok(FFElem(idx))
    }

    /// `Some(k)` when the element equals the integer `k` embedded from the
    /// prime subfield.
    pub fn as_prime_int(&self, a: FFElem) -> Option<u32> {
        if a.0 < self.0.p {
            Some(a.0)
        } else {
            None
        }
    }

    /// Discrete log base `g`: minimal `k >= 0` with `g^k = a`. `None` for
    /// zero, for prime fields, and for elements outside `<g>`.
    pub fn dlog(&self, a: FFElem) -> Option<u32> {
        self.0.dlog.get(a.0 as usize).copied().flatten()
    }

    /// Nonzero base-p components of an element: pairs `(i, a_i)` with
    /// `a_i != 0`, so that the element equals `sum a_i * g^i`.
    pub fn components(&self, a: FFElem) -> Vec<(u32, u32)> {
        self.coeff_vector(a)
            .into_iter()
            .enumerate()
            .filter(|&(_, c)| c != 0)
            .map(|(i, c)| (i as u32, c))
            .collect()
    }

    /// Render an element in the literal syntax: `0`, integers, `g`, `g^k`,
    /// falling back to a sum of such parts for elements that are neither in
    /// the prime subfield nor a power of `g`.
    pub fn format_elem(&self, a: FFElem) -> String {
        if let Some(k) = self.as_prime_int(a) {
            return k.to_string();
        }
        if let Some(k) = self.dlog(a) {
            return if k == 1 { "g".to_string() } else { format!("g^{k}") };
        }
        let g = self.g().expect("non-prime element requires m >= 2");
        let mut parts = Vec::new();
        for (i, c) in self.components(a) {
            if i == 0 {
                parts.push(c.to_string());
                continue;
            }
            let value = self.mul(self.from_int(c as i64), self.pow(g, i as u64));
            if let Some(k) = self.dlog(value) {
                parts.push(if k == 1 { "g".to_string() } else { format!("g^{k}") });
            } else if c == 1 {
                parts.push(if i == 1 { "g".to_string() } else { format!("g^{i}") });
            } else {
                parts.push(if i == 1 {
                    format!("{c}*g")
                } else {
                    format!("{c}*g^{i}")
                });
            }
        }
        parts.join("+")
    }

    /// Parse an element literal (the output language of
    /// [`format_elem`](Self::format_elem)).
    pub fn parse_elem(&self, text: &str) -> Result<FFElem> {
        let bytes = text.as_bytes();
        let mut pos = 0usize;
        let mut total = self.zero();
        let err = |pos: usize, msg: &str| Error::Parse { pos, msg: msg.to_string() };

        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        let read_uint = |pos: &mut usize| -> Result<u64> {
            let start = *pos;
            while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
                *pos += 1;
            }
            if *pos == start {
                return Err(err(start, "expected an integer"));
            }
            text[start..*pos]
                .parse()
                .map_err(|_| err(start, "integer literal too large"))
        };

        loop {
            skip_ws(&mut pos);
            let mut coeff = self.one();
            let mut have_digit = false;
            let mut have_g = false;
            if pos < bytes.len() && bytes[pos].is_ascii_digit() {
                have_digit = true;
                let k = read_uint(&mut pos)?;
                coeff = self.from_int((k % self.0.p as u64) as i64);
                skip_ws(&mut pos);
                if pos < bytes.len() && bytes[pos] == b'*' {
                    pos += 1;
                    skip_ws(&mut pos);
                    if pos >= bytes.len() || bytes[pos] != b'g' {
                        return Err(err(pos, "expected g after *"));
                    }
                }
            }
            if pos < bytes.len() && bytes[pos] == b'g' {
                have_g = true;
                pos += 1;
                let g = self
                    .g()
                    .ok_or_else(|| err(pos - 1, "g is undefined for prime fields"))?;
                let mut exp = 1u64;
                if pos < bytes.len() && bytes[pos] == b'^' {
                    pos += 1;
                    exp = read_uint(&mut pos)?;
                }
                coeff = self.mul(coeff, self.pow(g, exp));
            }
            if !have_digit && !have_g {
                return Err(err(pos, "expected an element literal"));
            }
            total = self.add(total, coeff);
            skip_ws(&mut pos);
            if pos >= bytes.len() {
                return Ok(total);
            }
            if bytes[pos] == b'+' {
                pos += 1;
            } else {
                return Err(err(pos, "unexpected character in element literal"));
            }
        }
    }
}

fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q {
        if q.is_multiple_of(p) {
            let mut m = 0u32;
            let mut rest = q;
            while rest.is_multiple_of(p) {
                rest /= p;
                m += 1;
            }
            return if rest == 1 { Some((p as u32, m)) } else { None };
        }
        p += 1;
    }
    Some((q as u32, 1)) // q itself is prime
}

impl Inner {
    fn build(p: u32, m: u32, q: u32, modulus: Vec<u32>) -> Inner {
        let md = m as usize;
        let digits = |idx: u32| -> Vec<u32> {
            let mut v = vec![0u32; md];
            let mut i = idx;
            for c in v.iter_mut() {
                *c = i % p;
                i /= p;
            }
            v
        };
        let undigits = |v: &[u32]| -> u32 {
            let mut idx = 0u32;
            for &c in v.iter().rev() {
                idx = idx * p + c;
            }
            idx
        };

        let qs = q as usize;
        let mut add = vec![0u32; qs * qs];
        let mut mul = vec![0u32; qs * qs];
        let mut neg = vec![0u32; qs];
        for a in 0..q {
            let va = digits(a);
            let vn: Vec<u32> = va.iter().map(|&c| (p - c) % p).collect();
            neg[a as usize] = undigits(&vn);
            for b in 0..q {
                let vb = digits(b);
                let vs: Vec<u32> = va.iter().zip(&vb).map(|(&x, &y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = undigits(&vs);

                let mut prod = vec![0u32; 2 * md];
                for (i, &x) in va.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    for (j, &y) in vb.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let mut rem = fp_poly_rem(&prod, &modulus, p);
                rem.resize(md, 0);
                mul[(a * q + b) as usize] = undigits(&rem);
            }
        }

        let mut inv = vec![0u32; qs];
        for a in 1..q {
            for b in 1..q {
                if mul[(a * q + b) as usize] == 1 {
                    inv[a as usize] = b;
                    break;
                }
            }
        }

        let order_of = |a: u32| -> u32 {
            let mut acc = a;
            let mut ord = 1;
            while acc != 1 {
                acc = mul[(acc * q + a) as usize];
                ord += 1;
            }
            ord
        };

        let mut dlog = vec![None; qs];
        if m >= 2 {
            let g = p; // index of the residue of t
            let mut acc = 1u32;
            let mut k = 0u32;
            loop {
                if dlog[acc as usize].is_none() {
                    dlog[acc as usize] = Some(k);
                }
                acc = mul[(acc * q + g) as usize];
                k += 1;
                if acc == 1 {
                    break;
                }
            }
        }

        let primitive = (1..q)
            .find(|&a| order_of(a) == q - 1)
            .expect("F_q^* is cyclic");

        Inner { p, m, q, modulus, add, mul, neg, inv, dlog, primitive }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> FieldSpec {
        FieldSpec::new(2, 2, None).unwrap()
    }

    #[test]
    fn default_fields() {
        let f = f4();
        assert_eq!(f.q(), 4);
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let f2 = FieldSpec::new(2, 1, None).unwrap();
        assert_eq!(f2.q(), 2);
        assert_eq!(f2.modulus(), &[0, 1]);
        for (q, p, m) in [(8, 2, 3), (16, 2, 4), (32, 2, 5), (64, 2, 6), (9, 3, 2)] {
            let f = FieldSpec::new(p, m, None).unwrap();
            assert_eq!(f.q(), q);
        }
    }

    #[test]
    fn construction_errors() {
        assert_eq!(FieldSpec::new(4, 1, None).unwrap_err(), Error::NotPrime(4));
        assert_eq!(FieldSpec::new(2, 0, None).unwrap_err(), Error::ZeroDegree);
        // t^2 = t * t is reducible
        assert!(matches!(
            FieldSpec::new(2, 2, Some(&[0, 0, 1])).unwrap_err(),
            Error::ModulusReducible(_)
        ));
        assert_eq!(
            FieldSpec::new(2, 2, Some(&[1, 1, 0])).unwrap_err(),
            Error::ModulusNotMonic
        );
        assert!(matches!(
            FieldSpec::new(5, 3, None).unwrap_err(),
            Error::NoDefaultModulus { p: 5, m: 3 }
        ));
        assert!(matches!(
            FieldSpec::new(2, 10, None).unwrap_err(),
            Error::FieldTooLarge { q: 1024, .. }
        ));
    }

    #[test]
    fn f4_multiplication_table() {
        let f = f4();
        let g = f.g().unwrap();
        assert_eq!(g.index(), 2);
        // t * t = t^2 = t + 1 under t^2 + t + 1
        assert_eq!(f.mul(g, g).index(), 3);
        for a in f.elements() {
            assert_eq!(f.mul(f.one(), a), a);
        }
        assert_eq!(f.inv(g).unwrap().index(), 3);
        assert_eq!(f.inv(f.zero()).unwrap_err(), Error::ZeroInverse);
    }

    #[test]
    fn frobenius_examples() {
        let f = f4();
        let g = f.g().unwrap();
        assert_eq!(f.frobenius(g).index(), 3);
        assert_eq!(f.frobenius(f.zero()), f.zero());
        assert_eq!(f.frobenius(f.one()), f.one());
        let f8 = FieldSpec::new(2, 3, None).unwrap();
        let g8 = f8.g().unwrap();
        assert_eq!(f8.frobenius(g8).index(), 4); // t^2, already reduced
    }

    #[test]
    fn enumeration_order() {
        let f2 = FieldSpec::new(2, 1, None).unwrap();
        let idx: Vec<u32> = f2.elements().map(|a| a.index()).collect();
        assert_eq!(idx, vec![0, 1]);
        let f8 = FieldSpec::new(2, 3, None).unwrap();
        let idx: Vec<u32> = f8.elements().map(|a| a.index()).collect();
        assert_eq!(idx, (0..8).collect::<Vec<u32>>());
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for (p, m) in [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (5, 1)] {
            let f = FieldSpec::new(p, m, None).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn inverses_and_frobenius_orbit() {
        for (p, m) in [(2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (5, 1), (7, 1)] {
            let f = FieldSpec::new(p, m, None).unwrap();
            for a in f.elements() {
                if a != f.zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
                }
                let mut b = a;
                for _ in 0..m {
                    b = f.frobenius(b);
                }
                assert_eq!(b, a, "a^(p^m) = a must hold");
            }
        }
    }

    #[test]
    fn coeff_vector_round_trip() {
        let f = FieldSpec::new(3, 2, None).unwrap();
        for a in f.elements() {
            let v = f.coeff_vector(a);
            assert_eq!(f.from_coeff_vector(&v).unwrap(), a);
        }
        // index = a0 + a1*p, a0 least significant
        assert_eq!(f.from_coeff_vector(&[1, 2]).unwrap().index(), 7);
    }

    #[test]
    fn from_int_reduction() {
        let f5 = FieldSpec::new(5, 1, None).unwrap();
        assert_eq!(f5.from_int(-2).index(), 3);
        assert_eq!(f5.from_int(7).index(), 2);
        let f = f4();
        assert_eq!(f.from_int(2).index(), 0);
        assert_eq!(f.from_int(-1).index(), 1);
    }

    #[test]
    fn literal_round_trip_all_defaults() {
        for (p, m) in [(2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 1), (3, 2), (5, 1)] {
            let f = FieldSpec::new(p, m, None).unwrap();
            for a in f.elements() {
                let text = f.format_elem(a);
                assert_eq!(f.parse_elem(&text).unwrap(), a, "field {f:?} literal {text}");
            }
        }
    }

    #[test]
    fn literal_sum_fallback() {
        // Under t^2 + 1 over F_3 the residue g has order 4, so 1 + g is not
        // a power of g and needs the sum form.
        let f9 = FieldSpec::new(3, 2, None).unwrap();
        let a = f9.elem(4).unwrap(); // coefficient vector (1, 1)
        assert!(f9.dlog(a).is_none());
        let text = f9.format_elem(a);
        assert_eq!(f9.parse_elem(&text).unwrap(), a);

        // Under t^2 + t + 1 over F_5 the residue g has order 3 and 2g is
        // outside <g> with a non-unit multiplier.
        let f25 = FieldSpec::new(5, 2, Some(&[1, 1, 1])).unwrap();
        let two_g = f25.from_coeff_vector(&[0, 2]).unwrap();
        assert!(f25.dlog(two_g).is_none());
        let text = f25.format_elem(two_g);
        assert_eq!(text, "2*g");
        assert_eq!(f25.parse_elem(&text).unwrap(), two_g);
    }

    #[test]
    fn literal_errors() {
        let f2 = FieldSpec::new(2, 1, None).unwrap();
        assert!(f2.parse_elem("g").is_err());
        let f = f4();
        assert!(f.parse_elem("h").is_err());
        assert!(f.parse_elem("1+" ).is_err());
    }

    #[test]
    fn primitive_elements() {
        for (p, m) in [(2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 2), (5, 1), (7, 1)] {
            let f = FieldSpec::new(p, m, None).unwrap();
            let c = f.primitive_element();
            let mut acc = c;
            let mut ord = 1;
            while acc != f.one() {
                acc = f.mul(acc, c);
                ord += 1;
            }
            assert_eq!(ord, f.q() - 1);
        }
        // the chosen default moduli in characteristic 2 all make g primitive
        for m in 2..=6 {
            let f = FieldSpec::new(2, m, None).unwrap();
            assert_eq!(f.primitive_element(), f.g().unwrap());
        }
    }

    #[test]
    fn designation_parsing() {
        let f = FieldSpec::parse_designation("GF(2^2)").unwrap();
        assert_eq!(f.q(), 4);
        let f = FieldSpec::parse_designation("GF(4)").unwrap();
        assert_eq!((f.p(), f.m()), (2, 2));
        let f = FieldSpec::parse_designation("GF(8) mod=1,1,0,1").unwrap();
        assert_eq!(f.modulus(), &[1, 1, 0, 1]);
        let f = FieldSpec::parse_designation("GF(7)").unwrap();
        assert_eq!((f.p(), f.m()), (7, 1));
        assert!(FieldSpec::parse_designation("GF(6)").is_err());
        assert!(FieldSpec::parse_designation("GF[4]").is_err());
        assert_eq!(f4().designation_with_modulus(), "GF(2^2) mod=1,1,1");
    }

    #[test]
    fn equality_ignores_handle_identity() {
        let a = f4();
        let b = FieldSpec::new(2, 2, Some(&[1, 1, 1])).unwrap();
        assert_eq!(a, b);
        let f9a = FieldSpec::new(3, 2, None).unwrap();
        let f9b = FieldSpec::new(3, 2, Some(&[2, 2, 1])).unwrap(); // t^2+2t+2
        assert_ne!(f9a, f9b);
    }
}
