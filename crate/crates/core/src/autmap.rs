//! Polynomial maps of affine n-space, automorphisms carried together with a
//! formal inverse, and tame words.
//!
//! The central distinction here is *formal* versus *functional*. A
//! [`PolyMap`] is a tuple of polynomials; composition substitutes and
//! expands with no reduction, so `X^2 ∘ X^2 = X^4` even over `F_4` where
//! `X^4` and `X` induce the same function. [`verify_inverse_pair`] works at
//! the formal level, while [`PolyMap::functional_equal`] compares induced
//! functions (by two independent routes that are cross-checked).

use std::fmt;

use rand::Rng;

use crate::gf::{FFElem, FieldSpec};
use crate::mpoly::{text, Poly};
use crate::{Error, Result};

/// Row-major square matrix over a finite field. Internal helper for linear
/// letters and triangular diagonals.
#[derive(Clone)]
struct Matrix {
    field: FieldSpec,
    n: usize,
    entries: Vec<FFElem>,
}

impl Matrix {
    fn new(field: &FieldSpec, n: usize, entries: Vec<FFElem>) -> Result<Matrix> {
        if entries.len() != n * n {
            return Err(Error::SizeMismatch(entries.len(), n * n));
        }
        Ok(Matrix { field: field.clone(), n, entries })
    }

    fn at(&self, r: usize, c: usize) -> FFElem {
        self.entries[r * self.n + c]
    }

    /// Gauss-Jordan inverse; `SingularMatrix` when rank < n.
    fn inverse(&self) -> Result<Matrix> {
        let f = &self.field;
        let n = self.n;
        // augmented [A | I], row-major with width 2n
        let w = 2 * n;
        let mut aug = vec![f.zero(); n * w];
        for r in 0..n {
            for c in 0..n {
                aug[r * w + c] = self.at(r, c);
            }
            aug[r * w + n + r] = f.one();
        }
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| aug[r * w + col] != f.zero())
                .ok_or(Error::SingularMatrix)?;
            if pivot != col {
                for c in 0..w {
                    aug.swap(pivot * w + c, col * w + c);
                }
            }
            let inv = f.inv(aug[col * w + col])?;
            for c in 0..w {
                aug[col * w + c] = f.mul(aug[col * w + c], inv);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = aug[r * w + col];
                if factor == f.zero() {
                    continue;
                }
                for c in 0..w {
                    let sub = f.mul(factor, aug[col * w + c]);
                    aug[r * w + c] = f.sub(aug[r * w + c], sub);
                }
            }
        }
        let mut entries = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                entries.push(aug[r * w + n + c]);
            }
        }
        Matrix::new(f, n, entries)
    }

    fn is_invertible(&self) -> bool {
        self.inverse().is_ok()
    }

    fn to_map(&self) -> PolyMap {
        let f = &self.field;
        let coords = (0..self.n)
            .map(|r| {
                let mut acc = Poly::zero(f, self.n);
                for c in 0..self.n {
                    let term = Poly::var(f, self.n, c).scale(self.at(r, c));
                    acc = acc.add(&term).expect("same field");
                }
                acc
            })
            .collect();
        PolyMap { field: f.clone(), coords }
    }
}

/// A tuple of `n` polynomials in `n` variables over one field: a formal
/// self-map of affine n-space. Not necessarily invertible or even
/// bijective on points.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMap {
    field: FieldSpec,
    coords: Vec<Poly>,
}

impl PolyMap {
    /// Build from coordinates; they must share one field and each be a
    /// polynomial in exactly `coords.len()` variables.
    pub fn new(coords: Vec<Poly>) -> Result<PolyMap> {
        let first = coords.first().ok_or(Error::ArityMismatch { expected: 1, got: 0 })?;
        let field = first.field().clone();
        let n = coords.len();
        for c in &coords {
            if c.field() != &field {
                return Err(Error::FieldMismatch);
            }
            if c.n_vars() != n {
                return Err(Error::ArityMismatch { expected: n, got: c.n_vars() });
            }
        }
        Ok(PolyMap { field, coords })
    }

    pub fn identity(field: &FieldSpec, n: usize) -> PolyMap {
        let coords = (0..n).map(|i| Poly::var(field, n, i)).collect();
        PolyMap { field: field.clone(), coords }
    }

    /// Parse the `;`-separated coordinate syntax, requiring exactly `n`
    /// coordinates.
    pub fn parse(input: &str, field: &FieldSpec, n: usize) -> Result<PolyMap> {
        let coords = text::parse_coords(input, field, n)?;
        if coords.len() != n {
            return Err(Error::ArityMismatch { expected: n, got: coords.len() });
        }
        PolyMap::new(coords)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    /// Dimension: number of coordinates = number of variables.
    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Poly] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Poly {
        &self.coords[i]
    }

    /// Largest total degree over the coordinates.
    pub fn degree(&self) -> u64 {
        self.coords.iter().filter_map(|c| c.total_degree()).max().unwrap_or(0)
    }

    pub fn eval(&self, point: &[FFElem]) -> Result<Vec<FFElem>> {
        self.coords.iter().map(|c| c.eval(point)).collect()
    }

    /// Formal composition `self ∘ other`: substitute the coordinates of
    /// `other` into each coordinate of `self`, expanding fully.
    pub fn compose(&self, other: &PolyMap) -> Result<PolyMap> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.n() != other.n() {
            return Err(Error::ArityMismatch { expected: self.n(), got: other.n() });
        }
        let coords = self
            .coords
            .iter()
            .map(|c| c.substitute(&other.coords))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyMap { field: self.field.clone(), coords })
    }

    /// Coordinate-wise functional reduction (`x^q = x`).
    pub fn functional_reduce(&self) -> PolyMap {
        let coords = self.coords.iter().map(|c| c.functional_reduce()).collect();
        PolyMap { field: self.field.clone(), coords }
    }

    /// Formally the identity: coordinate `i` is literally `X_{i+1}`.
    pub fn is_identity(&self) -> bool {
        self.coords.iter().enumerate().all(|(i, c)| c.is_variable(i))
    }

    /// Do the two maps induce the same function on `F_q^n`? Decided twice —
    /// once by comparing functional reductions, once by evaluating at every
    /// point — and the two answers are asserted to agree.
    pub fn functional_equal(&self, other: &PolyMap) -> Result<bool> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.n() != other.n() {
            return Err(Error::ArityMismatch { expected: self.n(), got: other.n() });
        }
        let by_reduction = self.functional_reduce() == other.functional_reduce();
        let mut by_points = true;
        each_point(&self.field, self.n(), |point| {
            if by_points {
                let a = self.eval(point).expect("arity checked");
                let b = other.eval(point).expect("arity checked");
                if a != b {
                    by_points = false;
                }
            }
        });
        assert_eq!(
            by_reduction, by_points,
            "functional_reduce and pointwise evaluation disagree: internal bug"
        );
        Ok(by_reduction)
    }
}

impl fmt::Display for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", text::format_coords(&self.coords))
    }
}

impl fmt::Debug for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyMap[{}]({})", self.field, self)
    }
}

/// Call `visit` on every point of `F_q^n`, in lexicographic order of the
/// (little-endian) coordinate tuples.
fn each_point(field: &FieldSpec, n: usize, mut visit: impl FnMut(&[FFElem])) {
    let elems: Vec<FFElem> = field.elements().collect();
    let q = elems.len();
    let mut idx = vec![0usize; n];
    let mut point: Vec<FFElem> = vec![field.zero(); n];
    loop {
        for (slot, &i) in point.iter_mut().zip(&idx) {
            *slot = elems[i];
        }
        visit(&point);
        let mut pos = 0;
        loop {
            if pos == n {
                return;
            }
            idx[pos] += 1;
            if idx[pos] < q {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Check that `f ∘ g` and `g ∘ f` are both *formally* the identity.
///
/// This is stricter than inducing mutually inverse functions: over `F_4`
/// the square map `(X1^2; X2^2)` composed with itself gives
/// `(X1^4; X2^4)`, which acts as the identity on points but is not the
/// identity tuple, so the pair fails here.
pub fn verify_inverse_pair(f: &PolyMap, g: &PolyMap) -> Result<bool> {
    Ok(f.compose(g)?.is_identity() && g.compose(f)?.is_identity())
}

/// Substitute `X_{fix+1} = value` into a map that formally fixes that
/// coordinate, and renumber the remaining variables. The result is a map of
/// the (n-1)-dimensional slice.
pub fn slice_map(map: &PolyMap, fix: usize, value: FFElem) -> Result<PolyMap> {
    let n = map.n();
    assert!(fix < n, "fix index out of range");
    if n == 1 {
        return Err(Error::ArityMismatch { expected: 2, got: 1 });
    }
    if !map.coord(fix).is_variable(fix) {
        return Err(Error::VariableNotFixed(fix + 1));
    }
    let field = map.field();
    let args: Vec<Poly> = (0..n)
        .map(|j| {
            if j == fix {
                Poly::constant(field, n - 1, value)
            } else {
                let new_index = if j > fix { j - 1 } else { j };
                Poly::var(field, n - 1, new_index)
            }
        })
        .collect();
    let coords = (0..n)
        .filter(|&j| j != fix)
        .map(|j| map.coord(j).substitute(&args))
        .collect::<Result<Vec<_>>>()?;
    PolyMap::new(coords)
}

/// A polynomial automorphism: a map stored together with a formal inverse.
/// Every constructor either derives the inverse or verifies a supplied one,
/// so a value of this type is always a genuine formal inverse pair.
#[derive(Clone, PartialEq, Eq)]
pub struct Automorphism {
    map: PolyMap,
    inverse: PolyMap,
}

impl Automorphism {
    /// Wrap a map with its claimed inverse, verifying both compositions
    /// formally.
    pub fn from_pair(map: PolyMap, inverse: PolyMap) -> Result<Automorphism> {
        if !verify_inverse_pair(&map, &inverse)? {
            return Err(Error::NotAnInversePair);
        }
        Ok(Automorphism { map, inverse })
    }

    /// For composites of already-verified pairs, where associativity of
    /// substitution guarantees the result.
    fn from_pair_unchecked(map: PolyMap, inverse: PolyMap) -> Automorphism {
        debug_assert!(verify_inverse_pair(&map, &inverse).unwrap_or(false));
        Automorphism { map, inverse }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Automorphism {
        let id = PolyMap::identity(field, n);
        Automorphism { map: id.clone(), inverse: id }
    }

    /// Elementary map `X_{target+1} += shift`, the other coordinates fixed.
    /// The shift must not involve the target variable.
    pub fn elementary(field: &FieldSpec, n: usize, target: usize, shift: Poly) -> Result<Automorphism> {
        assert!(target < n, "target index out of range");
        if shift.field() != field {
            return Err(Error::FieldMismatch);
        }
        if shift.n_vars() != n {
            return Err(Error::ArityMismatch { expected: n, got: shift.n_vars() });
        }
        if !shift.omits_variable(target) {
            return Err(Error::TargetVariableUsed(target + 1));
        }
        let build = |sh: &Poly| -> Result<PolyMap> {
            let coords = (0..n)
                .map(|i| {
                    let v = Poly::var(field, n, i);
                    if i == target {
                        v.add(sh)
                    } else {
                        Ok(v)
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            PolyMap::new(coords)
        };
        let map = build(&shift)?;
        let inverse = build(&shift.neg())?;
        Ok(Automorphism::from_pair_unchecked(map, inverse))
    }

    /// Invertible linear map from an `n x n` row-major coefficient list.
    pub fn linear(field: &FieldSpec, n: usize, entries: &[FFElem]) -> Result<Automorphism> {
        let m = Matrix::new(field, n, entries.to_vec())?;
        let inv = m.inverse()?;
        Ok(Automorphism::from_pair_unchecked(m.to_map(), inv.to_map()))
    }

    /// Diagonal linear map `X_i -> diag[i] * X_i`.
    pub fn diagonal(field: &FieldSpec, diag: &[FFElem]) -> Result<Automorphism> {
        let n = diag.len();
        let mut entries = vec![field.zero(); n * n];
        for (i, &d) in diag.iter().enumerate() {
            if d == field.zero() {
                return Err(Error::ZeroDiagonal(i + 1));
            }
            entries[i * n + i] = d;
        }
        Automorphism::linear(field, n, &entries)
    }

    /// Triangular map `X_i -> diag[i] * X_i + shifts[i]` where `shifts[i]`
    /// may only involve variables strictly after `X_{i+1}` (so the last
    /// shift is a constant). The map is assembled as one diagonal composed
    /// with `n` elementary maps; the inverse is found independently by
    /// back-substitution and the pair is verified.
    pub fn triangular(field: &FieldSpec, diag: &[FFElem], shifts: &[Poly]) -> Result<Automorphism> {
        let n = diag.len();
        if shifts.len() != n {
            return Err(Error::SizeMismatch(shifts.len(), n));
        }
        for (i, &d) in diag.iter().enumerate() {
            if d == field.zero() {
                return Err(Error::ZeroDiagonal(i + 1));
            }
        }
        for (i, s) in shifts.iter().enumerate() {
            if s.field() != field {
                return Err(Error::FieldMismatch);
            }
            if s.n_vars() != n {
                return Err(Error::ArityMismatch { expected: n, got: s.n_vars() });
            }
            for j in 0..=i {
                if !s.omits_variable(j) {
                    return Err(Error::TriangularViolation { coord: i + 1, found: j + 1 });
                }
            }
        }
        // T = S ∘ E_n ∘ ... ∘ E_1 with E_i adding diag[i]^{-1} * shifts[i]
        // to X_{i+1}: the rightmost factor acts first, so each E_i reads the
        // still-unshifted later variables, and S then scales every
        // coordinate to diag[i]*X_i + shifts[i].
        let mut acc = Automorphism::diagonal(field, diag)?;
        for i in (0..n).rev() {
            let e =
                Automorphism::elementary(field, n, i, shifts[i].scale(field.inv(diag[i])?))?;
            acc = acc.compose(&e)?;
        }
        let map = acc.into_pair().0;

        // back-substitute from the last coordinate up
        let mut inv_coords: Vec<Option<Poly>> = vec![None; n];
        for i in (0..n).rev() {
            let args: Vec<Poly> = (0..n)
                .map(|j| {
                    if j > i {
                        inv_coords[j].clone().expect("filled in reverse order")
                    } else {
                        Poly::var(field, n, j)
                    }
                })
                .collect();
            let shifted = shifts[i].substitute(&args)?;
            let num = Poly::var(field, n, i).sub(&shifted)?;
            inv_coords[i] = Some(num.scale(field.inv(diag[i])?));
        }
        let inverse = PolyMap::new(inv_coords.into_iter().map(Option::unwrap).collect())?;
        Automorphism::from_pair(map, inverse)
    }

    /// Variable permutation `X_{i+1} -> X_{perm[i]+1}` (0-based images).
    pub fn permute_vars(field: &FieldSpec, perm: &[usize]) -> Result<Automorphism> {
        let n = perm.len();
        let mut inv_perm = vec![usize::MAX; n];
        for (i, &img) in perm.iter().enumerate() {
            if img >= n || inv_perm[img] != usize::MAX {
                return Err(Error::NotAPermutation);
            }
            inv_perm[img] = i;
        }
        let build = |p: &[usize]| {
            PolyMap::new(p.iter().map(|&img| Poly::var(field, n, img)).collect())
        };
        Ok(Automorphism::from_pair_unchecked(build(perm)?, build(&inv_perm)?))
    }

    /// The Nagata map in dimension 3, with `Δ = X1*X3 + X2^2`:
    /// `(X1 - 2*X2*Δ - X3*Δ^2; X2 + X3*Δ; X3)`. In characteristic 2 the
    /// sign flips vanish and the map is its own formal inverse.
    pub fn nagata(field: &FieldSpec) -> Automorphism {
        let n = 3;
        let x1 = Poly::var(field, n, 0);
        let x2 = Poly::var(field, n, 1);
        let x3 = Poly::var(field, n, 2);
        let delta = x1.mul(&x3).and_then(|a| a.add(&x2.pow(2))).expect("same field");
        let delta2 = delta.pow(2);
        let two = field.from_int(2);
        // forward: (X1 - 2*X2*Δ - X3*Δ^2; X2 + X3*Δ; X3); the inverse flips
        // the sign on the Δ terms but keeps -X3*Δ^2.
        let build = |sign: FFElem| -> PolyMap {
            let c1 = x1
                .sub(&x2.mul(&delta).expect("same field").scale(field.mul(two, sign)))
                .and_then(|p| p.sub(&x3.mul(&delta2)?))
                .expect("same field");
            let c2 = x2.add(&x3.mul(&delta).expect("same field").scale(sign)).expect("same field");
            PolyMap::new(vec![c1, c2, x3.clone()]).expect("well-formed")
        };
        let map = build(field.one());
        let inverse = build(field.from_int(-1));
        Automorphism::from_pair_unchecked(map, inverse)
    }

    pub fn map(&self) -> &PolyMap {
        &self.map
    }

    pub fn inverse(&self) -> &PolyMap {
        &self.inverse
    }

    pub fn into_pair(self) -> (PolyMap, PolyMap) {
        (self.map, self.inverse)
    }

    pub fn field(&self) -> &FieldSpec {
        self.map.field()
    }

    pub fn n(&self) -> usize {
        self.map.n()
    }

    /// Formal composition `self ∘ other`, with the inverse composed the
    /// other way around.
    pub fn compose(&self, other: &Automorphism) -> Result<Automorphism> {
        let map = self.map.compose(&other.map)?;
        let inverse = other.inverse.compose(&self.inverse)?;
        Ok(Automorphism { map, inverse })
    }

    pub fn inverted(&self) -> Automorphism {
        Automorphism { map: self.inverse.clone(), inverse: self.map.clone() }
    }

    /// Conjugation `phi^{-1} ∘ self ∘ phi`.
    pub fn conjugate(&self, phi: &Automorphism) -> Result<Automorphism> {
        let map = phi.inverse.compose(&self.map)?.compose(&phi.map)?;
        let inverse = phi.inverse.compose(&self.inverse)?.compose(&phi.map)?;
        Ok(Automorphism { map, inverse })
    }

    /// Slice both the map and its inverse at `X_{fix+1} = value`.
    pub fn slice(&self, fix: usize, value: FFElem) -> Result<Automorphism> {
        let map = slice_map(&self.map, fix, value)?;
        let inverse = slice_map(&self.inverse, fix, value)?;
        Automorphism::from_pair(map, inverse)
    }
}

impl fmt::Display for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.map)
    }
}

impl fmt::Debug for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Automorphism[{}]({})", self.map.field(), self.map)
    }
}

/// One letter of a tame word: an invertible linear map (row-major entries)
/// or an elementary shift of a single coordinate.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TameLetter {
    Lin(Vec<FFElem>),
    Elem { target: usize, shift: Poly },
}

impl TameLetter {
    pub fn to_automorphism(&self, field: &FieldSpec, n: usize) -> Result<Automorphism> {
        match self {
            TameLetter::Lin(entries) => Automorphism::linear(field, n, entries),
            TameLetter::Elem { target, shift } => {
                Automorphism::elementary(field, n, *target, shift.clone())
            }
        }
    }

    fn inverted(&self, field: &FieldSpec, n: usize) -> Result<TameLetter> {
        match self {
            TameLetter::Lin(entries) => {
                let inv = Matrix::new(field, n, entries.clone())?.inverse()?;
                Ok(TameLetter::Lin(inv.entries))
            }
            TameLetter::Elem { target, shift } => {
                Ok(TameLetter::Elem { target: *target, shift: shift.neg() })
            }
        }
    }
}

/// A word in the tame generators, remembering its field and dimension.
/// The composite is `letters[0] ∘ letters[1] ∘ ...`, so the last letter
/// acts first on points.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TameWord {
    field: FieldSpec,
    n: usize,
    letters: Vec<TameLetter>,
}

impl TameWord {
    pub fn new(field: &FieldSpec, n: usize, letters: Vec<TameLetter>) -> Result<TameWord> {
        if letters.is_empty() {
            return Err(Error::EmptyWord);
        }
        for l in &letters {
            match l {
                TameLetter::Lin(entries) => {
                    if entries.len() != n * n {
                        return Err(Error::SizeMismatch(entries.len(), n * n));
                    }
                }
                TameLetter::Elem { target, shift } => {
                    assert!(*target < n, "target index out of range");
                    if shift.field() != field {
                        return Err(Error::FieldMismatch);
                    }
                    if shift.n_vars() != n {
                        return Err(Error::ArityMismatch { expected: n, got: shift.n_vars() });
                    }
                    if !shift.omits_variable(*target) {
                        return Err(Error::TargetVariableUsed(target + 1));
                    }
                }
            }
        }
        Ok(TameWord { field: field.clone(), n, letters })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[TameLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Compose the letters into a single automorphism.
    pub fn compose(&self) -> Result<Automorphism> {
        let mut acc: Option<Automorphism> = None;
        for letter in &self.letters {
            let a = letter.to_automorphism(&self.field, self.n)?;
            acc = Some(match acc {
                None => a,
                Some(prev) => prev.compose(&a)?,
            });
        }
        acc.ok_or(Error::EmptyWord)
    }

    /// The word spelling the inverse: letters reversed and individually
    /// inverted.
    pub fn inverted(&self) -> Result<TameWord> {
        let letters = self
            .letters
            .iter()
            .rev()
            .map(|l| l.inverted(&self.field, self.n))
            .collect::<Result<Vec<_>>>()?;
        TameWord::new(&self.field, self.n, letters)
    }

    /// One line per letter: `lin` followed by `n^2` row-major element
    /// literals, or `elem` followed by the 1-based target and the shift.
    pub fn to_lines(&self) -> Vec<String> {
        self.letters
            .iter()
            .map(|l| match l {
                TameLetter::Lin(entries) => {
                    let cells: Vec<String> =
                        entries.iter().map(|&e| self.field.format_elem(e)).collect();
                    format!("lin {}", cells.join(" "))
                }
                TameLetter::Elem { target, shift } => {
                    format!("elem {} {}", target + 1, text::format_poly(shift))
                }
            })
            .collect()
    }

    /// Parse the output of [`to_lines`](Self::to_lines). Blank lines are
    /// skipped.
    pub fn from_lines<'a, I>(field: &FieldSpec, n: usize, lines: I) -> Result<TameWord>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut letters = Vec::new();
        for line in lines {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (keyword, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            match keyword {
                "lin" => {
                    let entries = rest
                        .split_whitespace()
                        .map(|tok| field.parse_elem(tok))
                        .collect::<Result<Vec<_>>>()?;
                    letters.push(TameLetter::Lin(entries));
                }
                "elem" => {
                    let (target_tok, poly_text) =
                        rest.trim().split_once(char::is_whitespace).ok_or_else(|| Error::Parse {
                            pos: 0,
                            msg: "elem line needs a target and a polynomial".to_string(),
                        })?;
                    let target: usize = target_tok.parse().map_err(|_| Error::Parse {
                        pos: 0,
                        msg: format!("bad target index {target_tok:?}"),
                    })?;
                    if target == 0 || target > n {
                        return Err(Error::Parse {
                            pos: 0,
                            msg: format!("target X{target} out of range (n = {n})"),
                        });
                    }
                    let shift = text::parse_poly(poly_text, field, n)?;
                    letters.push(TameLetter::Elem { target: target - 1, shift });
                }
                other => {
                    return Err(Error::Parse {
                        pos: 0,
                        msg: format!("unknown letter keyword {other:?}"),
                    });
                }
            }
        }
        TameWord::new(field, n, letters)
    }
}

fn random_elem<R: Rng>(field: &FieldSpec, rng: &mut R) -> FFElem {
    field.elem(rng.gen_range(0..field.q())).expect("in range")
}

fn random_nonzero<R: Rng>(field: &FieldSpec, rng: &mut R) -> FFElem {
    field.elem(rng.gen_range(1..field.q())).expect("in range")
}

/// Invertible matrix by rejection; `fix_row` (when given) is pinned to the
/// corresponding standard basis vector.
fn random_lin_letter<R: Rng>(
    field: &FieldSpec,
    n: usize,
    fix_row: Option<usize>,
    rng: &mut R,
) -> TameLetter {
    loop {
        let mut entries: Vec<FFElem> = (0..n * n).map(|_| random_elem(field, rng)).collect();
        if let Some(r) = fix_row {
            for c in 0..n {
                entries[r * n + c] = if c == r { field.one() } else { field.zero() };
            }
        }
        let m = Matrix::new(field, n, entries.clone()).expect("square");
        if m.is_invertible() {
            return TameLetter::Lin(entries);
        }
    }
}

/// Elementary letter with a nonzero shift: 1..=max_degree terms, each with
/// exponents bounded by `max_degree` entry-wise and in total, and a uniform
/// nonzero coefficient. `skip_target` (when given) is excluded from the
/// target choices.
fn random_elem_letter<R: Rng>(
    field: &FieldSpec,
    n: usize,
    max_degree: u32,
    skip_target: Option<usize>,
    rng: &mut R,
) -> TameLetter {
    let target = loop {
        let t = rng.gen_range(0..n);
        if Some(t) != skip_target {
            break t;
        }
    };
    loop {
        let num_terms = rng.gen_range(1..=max_degree.max(1));
        let mut terms = Vec::with_capacity(num_terms as usize);
        for _ in 0..num_terms {
            let exps = loop {
                let exps: Vec<u32> = (0..n)
                    .map(|j| if j == target { 0 } else { rng.gen_range(0..=max_degree) })
                    .collect();
                if exps.iter().map(|&e| e as u64).sum::<u64>() <= max_degree as u64 {
                    break exps;
                }
            };
            terms.push((exps, random_nonzero(field, rng)));
        }
        let shift = Poly::from_terms(field, n, terms);
        if !shift.is_zero() {
            return TameLetter::Elem { target, shift };
        }
    }
}

/// A random word of `length` letters, each a fair coin flip between an
/// invertible linear map and an elementary shift of degree at most
/// `max_degree`.
pub fn random_tame_word<R: Rng>(
    field: &FieldSpec,
    n: usize,
    length: usize,
    max_degree: u32,
    rng: &mut R,
) -> TameWord {
    assert!(length >= 1, "word length must be at least 1");
    assert!(max_degree >= 1, "degree bound must be at least 1");
    let letters = (0..length)
        .map(|_| {
            if rng.gen_bool(0.5) {
                random_lin_letter(field, n, None, rng)
            } else {
                random_elem_letter(field, n, max_degree, None, rng)
            }
        })
        .collect();
    TameWord::new(field, n, letters).expect("letters are valid by construction")
}

/// Like [`random_tame_word`], but every letter formally fixes the
/// coordinate `X_{fix+1}`, so the composite can be sliced there.
pub fn random_fixing_tame_word<R: Rng>(
    field: &FieldSpec,
    n: usize,
    fix: usize,
    length: usize,
    max_degree: u32,
    rng: &mut R,
) -> TameWord {
    assert!(length >= 1, "word length must be at least 1");
    assert!(max_degree >= 1, "degree bound must be at least 1");
    assert!(fix < n, "fix index out of range");
    assert!(n >= 2, "need a variable besides the fixed one");
    let letters = (0..length)
        .map(|_| {
            if rng.gen_bool(0.5) {
                random_lin_letter(field, n, Some(fix), rng)
            } else {
                random_elem_letter(field, n, max_degree, Some(fix), rng)
            }
        })
        .collect();
    TameWord::new(field, n, letters).expect("letters are valid by construction")
}
