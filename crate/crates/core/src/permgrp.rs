//! Permutations of the finite point set `F_q^n`, their parity, and exact
//! group orders via a deterministic stabilizer chain.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::autmap::PolyMap;
use crate::gf::{FFElem, FieldSpec};
use crate::{Error, Result};

/// Bijection between `F_q^n` and `0..q^n`. Points are numbered in base `q`
/// with `X_1` as the least significant digit, using element indices as
/// digits.
#[derive(Clone, Debug)]
pub struct PointIndexer {
    field: FieldSpec,
    n: usize,
    size: usize,
}

impl PointIndexer {
    pub fn new(field: &FieldSpec, n: usize) -> PointIndexer {
        assert!(n >= 1, "need at least one variable");
        let size = (field.q() as usize)
            .checked_pow(n as u32)
            .expect("point count overflows usize");
        PointIndexer { field: field.clone(), n, size }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `q^n`.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn index_of(&self, point: &[FFElem]) -> usize {
        assert_eq!(point.len(), self.n);
        let q = self.field.q() as usize;
        let mut idx = 0usize;
        for x in point.iter().rev() {
            idx = idx * q + x.index() as usize;
        }
        idx
    }

    pub fn point_of(&self, index: usize) -> Vec<FFElem> {
        assert!(index < self.size);
        let q = self.field.q();
        let mut rest = index;
        (0..self.n)
            .map(|_| {
                let digit = (rest % q as usize) as u32;
                rest /= q as usize;
                self.field.elem(digit).expect("digit < q")
            })
            .collect()
    }

    pub fn points(&self) -> impl Iterator<Item = Vec<FFElem>> + '_ {
        (0..self.size).map(|i| self.point_of(i))
    }
}

/// Parity of a permutation.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_transposition_count(k: usize) -> Parity {
        if k.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    /// Parity of a product of permutations with these parities.
    pub fn combine(self, other: Parity) -> Parity {
        if other == Parity::Odd {
            self.flip()
        } else {
            self
        }
    }

    pub fn is_even(self) -> bool {
        self == Parity::Even
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// A permutation of `0..size`, stored as its image table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(size: usize) -> Perm {
        Perm { images: (0..size as u32).collect() }
    }

    /// Validate an image table.
    pub fn from_images(images: Vec<u32>) -> Result<Perm> {
        let n = images.len();
        let mut first_source = vec![usize::MAX; n];
        for (src, &img) in images.iter().enumerate() {
            let img = img as usize;
            assert!(img < n, "image out of range");
            if first_source[img] != usize::MAX {
                return Err(Error::NotBijective { a: first_source[img], b: src, image: img });
            }
            first_source[img] = src;
        }
        Ok(Perm { images })
    }

    /// The permutation a polynomial map induces on points, or
    /// `NotBijective` naming a colliding pair.
    pub fn from_map(map: &PolyMap, indexer: &PointIndexer) -> Result<Perm> {
        assert_eq!(map.n(), indexer.n(), "dimension mismatch");
        if map.field() != indexer.field() {
            return Err(Error::FieldMismatch);
        }
        let n = indexer.size();
        let mut images = Vec::with_capacity(n);
        let mut first_source = vec![usize::MAX; n];
        for idx in 0..n {
            let image = map.eval(&indexer.point_of(idx))?;
            let img = indexer.index_of(&image);
            if first_source[img] != usize::MAX {
                return Err(Error::NotBijective { a: first_source[img], b: idx, image: img });
            }
            first_source[img] = idx;
            images.push(img as u32);
        }
        Ok(Perm { images })
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn as_images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| i as u32 == img)
    }

    /// First point moved, if any.
    pub fn first_moved(&self) -> Option<usize> {
        self.images.iter().enumerate().find(|&(i, &img)| i as u32 != img).map(|(i, _)| i)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch(self.size(), other.size()));
        }
        let images = other.images.iter().map(|&i| self.images[i as usize]).collect();
        Ok(Perm { images })
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u32; self.images.len()];
        for (src, &img) in self.images.iter().enumerate() {
            images[img as usize] = src as u32;
        }
        Perm { images }
    }

    pub fn fixed_points(&self) -> usize {
        self.images.iter().enumerate().filter(|&(i, &img)| i as u32 == img).count()
    }

    /// Nontrivial cycles, each starting at its smallest element, ordered by
    /// that element.
    pub fn cycle_decomposition(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] || self.image(start) == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut cur = self.image(start);
            while cur != start {
                seen[cur] = true;
                cycle.push(cur);
                cur = self.image(cur);
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Cycle type as length -> count, fixed points included as length 1.
    pub fn cycle_histogram(&self) -> BTreeMap<usize, usize> {
        let mut hist = BTreeMap::new();
        let cycles = self.cycle_decomposition();
        let moved: usize = cycles.iter().map(Vec::len).sum();
        if self.images.len() > moved {
            hist.insert(1, self.images.len() - moved);
        }
        for c in cycles {
            *hist.entry(c.len()).or_insert(0) += 1;
        }
        hist
    }

    /// Cycle notation, e.g. `(2 3)(5 9 11)`; the identity prints as `()`.
    pub fn format_cycles(&self) -> String {
        let cycles = self.cycle_decomposition();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles
            .iter()
            .map(|c| {
                let body: Vec<String> = c.iter().map(usize::to_string).collect();
                format!("({})", body.join(" "))
            })
            .collect()
    }

    /// Parity from the cycle count: a cycle of length `k` is `k - 1`
    /// transpositions, so the total is `size` minus the number of cycles
    /// (fixed points counted as cycles).
    pub fn sign(&self) -> Parity {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut cycle_count = 0usize;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            cycle_count += 1;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cur = self.image(cur);
            }
        }
        Parity::from_transposition_count(n - cycle_count)
    }

    /// Parity by counting inversions — quadratic, kept as an independent
    /// cross-check of [`sign`](Self::sign) in tests. Not used by the
    /// production paths.
    pub fn sign_by_inversions(&self) -> Parity {
        let mut inversions = 0usize;
        for i in 0..self.images.len() {
            for j in i + 1..self.images.len() {
                if self.images[i] > self.images[j] {
                    inversions += 1;
                }
            }
        }
        Parity::from_transposition_count(inversions)
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm({})", self.format_cycles())
    }
}

struct Level {
    base: usize,
    /// `transversal[p]` maps `base` to `p`; `None` outside the orbit.
    transversal: Vec<Option<Perm>>,
    /// Strong generators assigned to this level: they fix the bases of all
    /// earlier levels.
    gens: Vec<Perm>,
}

/// Base and strong generating set built by the deterministic Schreier-Sims
/// procedure, with explicit transversal tables. Supports exact order
/// computation and membership testing by sifting.
pub struct Bsgs {
    size: usize,
    levels: Vec<Level>,
}

impl Bsgs {
    pub fn new(generators: &[Perm]) -> Result<Bsgs> {
        let first = generators.first().ok_or(Error::EmptyGenerators)?;
        let size = first.size();
        for g in generators {
            if g.size() != size {
                return Err(Error::SizeMismatch(g.size(), size));
            }
        }
        let mut levels: Vec<Level> = Vec::new();
        // first base: smallest point moved by any generator
        if let Some(base) =
            generators.iter().filter_map(Perm::first_moved).min()
        {
            levels.push(Level { base, transversal: Vec::new(), gens: Vec::new() });
            for g in generators {
                if !g.is_identity() {
                    levels[0].gens.push(g.clone());
                }
            }
        }
        let mut bsgs = Bsgs { size, levels };
        bsgs.complete();
        Ok(bsgs)
    }

    /// Handbook-style verification loop: make the deepest levels clean
    /// first; a new strong generator at level `lev` re-opens levels up to
    /// `lev`.
    fn complete(&mut self) {
        if self.levels.is_empty() {
            return;
        }
        let mut l = self.levels.len() - 1;
        loop {
            match self.verify_level(l) {
                Some((lev, residue)) => {
                    if lev == self.levels.len() {
                        self.levels.push(Level {
                            base: residue.first_moved().expect("nontrivial residue"),
                            transversal: Vec::new(),
                            gens: Vec::new(),
                        });
                    }
                    self.levels[lev].gens.push(residue);
                    l = lev;
                }
                None => {
                    if l == 0 {
                        return;
                    }
                    l -= 1;
                }
            }
        }
    }

    /// Generators of the candidate group at `level`: everything assigned at
    /// this level or deeper.
    fn level_generators(&self, level: usize) -> Vec<Perm> {
        self.levels[level..].iter().flat_map(|lv| lv.gens.iter().cloned()).collect()
    }

    /// Recompute the orbit of `level`'s base and test every Schreier
    /// generator by sifting below. Returns the first non-identity residue
    /// with the level it should join, or `None` when the level is clean.
    fn verify_level(&mut self, level: usize) -> Option<(usize, Perm)> {
        let gens = self.level_generators(level);
        let base = self.levels[level].base;
        let mut transversal: Vec<Option<Perm>> = vec![None; self.size];
        transversal[base] = Some(Perm::identity(self.size));
        let mut queue = vec![base];
        let mut head = 0;
        while head < queue.len() {
            let pt = queue[head];
            head += 1;
            let t_pt = transversal[pt].clone().expect("queued points have reps");
            for g in &gens {
                let img = g.image(pt);
                if transversal[img].is_none() {
                    transversal[img] = Some(g.compose(&t_pt).expect("same size"));
                    queue.push(img);
                }
            }
        }
        self.levels[level].transversal = transversal;

        for &pt in &queue {
            let t_pt = self.levels[level].transversal[pt].clone().expect("in orbit");
            for g in &gens {
                let img = g.image(pt);
                let t_img = self.levels[level].transversal[img].clone().expect("orbit closed");
                let schreier = t_img
                    .inverse()
                    .compose(&g.compose(&t_pt).expect("same size"))
                    .expect("same size");
                if schreier.is_identity() {
                    continue;
                }
                let (residue, lev) = self.strip(schreier, level + 1);
                if !residue.is_identity() {
                    return Some((lev, residue));
                }
            }
        }
        None
    }

    /// Sift: repeatedly divide off transversal representatives starting at
    /// `from`. Returns the residue and the first level whose transversal
    /// could not absorb it (`levels.len()` when it fell off the end).
    fn strip(&self, mut perm: Perm, from: usize) -> (Perm, usize) {
        for l in from..self.levels.len() {
            let img = perm.image(self.levels[l].base);
            match &self.levels[l].transversal[img] {
                Some(t) => {
                    perm = t.inverse().compose(&perm).expect("same size");
                }
                None => return (perm, l),
            }
        }
        (perm, self.levels.len())
    }

    /// Number of points acted on.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn base_points(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// Exact group order: the product of the orbit sizes along the chain.
    pub fn order(&self) -> BigUint {
        let mut order = BigUint::one();
        for level in &self.levels {
            let orbit = level.transversal.iter().filter(|t| t.is_some()).count();
            order *= BigUint::from(orbit);
        }
        order
    }

    /// Membership test by sifting.
    pub fn contains(&self, perm: &Perm) -> Result<bool> {
        if perm.size() != self.size {
            return Err(Error::SizeMismatch(perm.size(), self.size));
        }
        let (residue, _) = self.strip(perm.clone(), 0);
        Ok(residue.is_identity())
    }
}

impl fmt::Debug for Bsgs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bsgs(size={}, base={:?}, order={})", self.size, self.base_points(), self.order())
    }
}
