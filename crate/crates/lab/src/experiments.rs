//! The five experiments behind the `oddaut` binary.
//!
//! Each runner validates its inputs, does the exact computation through
//! `oddaut-core`, and returns a structured outcome together with a
//! [`ReportRecord`] ready for serialization.  All sampling is driven by a
//! ChaCha stream seeded from the configured seed, so a run is reproducible
//! from its record alone.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, ensure, Context, Result};
use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use oddaut_core::{
    random_tame_word, slice_map, verify_inverse_pair, Automorphism, Bsgs, FieldSpec, Parity, Perm,
    PointIndexer, Poly, PolyMap,
};

use crate::config::SearchFamily;
use crate::report::ReportRecord;

/// Ceiling on the number of points `q^n`.  Experiments that would have to
/// walk a larger point space refuse to start.
pub const MAX_POINTS: usize = 4096;

/// Size of the point space `F_q^n`, checked against [`MAX_POINTS`].
pub fn point_space_size(field: &FieldSpec, n: usize) -> Result<usize> {
    ensure!(n >= 1, "need at least one variable");
    let size = (0..n).try_fold(1usize, |acc, _| acc.checked_mul(field.q() as usize));
    match size {
        Some(s) if s <= MAX_POINTS => Ok(s),
        _ => bail!(
            "point space for {} with n = {n} exceeds the {MAX_POINTS}-point ceiling",
            field.designation()
        ),
    }
}

pub fn factorial(k: usize) -> BigUint {
    (1..=k as u64).map(BigUint::from).fold(BigUint::one(), |a, b| a * b)
}

/// Generating alphabet for the tame automorphisms acting on `F_q^n`.
///
/// The linear part is `diag(c, 1, .., 1)` with `c` a primitive element,
/// the transvection `X1 += X2`, the swap of the first two variables and
/// the full cycle of all variables: scalings of one coordinate by powers
/// of `c` conjugated around by permutations give every invertible diagonal
/// map, and diagonals with transvections and permutations generate the
/// whole invertible linear group.  The nonlinear part is every elementary
/// map `X1 += c*M` with `M` a monomial in the other variables of
/// per-variable degree at most `q-1` (including `M = 1`, the
/// translations) and `c` running over a basis of the field over its prime
/// subfield; shifts add componentwise, so these generate `X1 += h` for
/// every polynomial `h` in the remaining variables, and conjugating by
/// the cycle reaches the other coordinates.
pub fn tame_generator_alphabet(field: &FieldSpec, n: usize) -> Result<Vec<Automorphism>> {
    ensure!(n >= 2, "the alphabet needs at least two variables");
    let one = field.one();
    let mut out = Vec::new();

    let mut diag = vec![one; n];
    diag[0] = field.primitive_element();
    out.push(Automorphism::diagonal(field, &diag)?);

    out.push(Automorphism::elementary(field, n, 0, Poly::var(field, n, 1))?);

    let mut swap: Vec<usize> = (0..n).collect();
    swap.swap(0, 1);
    out.push(Automorphism::permute_vars(field, &swap)?);
    let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    out.push(Automorphism::permute_vars(field, &cycle)?);

    let basis: Vec<_> = match field.g() {
        None => vec![one],
        Some(g) => (0..field.m()).map(|k| field.pow(g, k as u64)).collect(),
    };
    let mut exps = vec![0u32; n - 1];
    loop {
        let mut full = vec![0u32; n];
        full[1..].copy_from_slice(&exps);
        for &c in &basis {
            let shift = Poly::from_terms(field, n, [(full.clone(), c)]);
            out.push(Automorphism::elementary(field, n, 0, shift)?);
        }
        // odometer over exponent vectors with entries 0..q-1
        let mut i = 0;
        loop {
            if i == exps.len() {
                return Ok(out);
            }
            exps[i] += 1;
            if exps[i] < field.q() {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

#[derive(Debug)]
pub struct ParityOutcome {
    pub record: ReportRecord,
    pub parity: Parity,
    pub fixed_points: usize,
    pub cycle_histogram: BTreeMap<usize, usize>,
    pub cycles: String,
    /// `None` when no inverse was supplied.
    pub inverse_verified: Option<bool>,
    pub witness: bool,
}

/// Parity, fixed points and cycle structure of the permutation a map
/// induces on the point space.  A supplied inverse is verified formally;
/// odd parity plus a verified inverse makes the record a witness.
pub fn run_parity(
    field: &FieldSpec,
    n: usize,
    map_text: &str,
    inverse_text: Option<&str>,
) -> Result<ParityOutcome> {
    let start = Instant::now();
    point_space_size(field, n)?;
    let map = PolyMap::parse(map_text, field, n).context("parsing map")?;
    let inverse_verified = match inverse_text {
        None => None,
        Some(text) => {
            let inv = PolyMap::parse(text, field, n).context("parsing inverse")?;
            Some(verify_inverse_pair(&map, &inv)?)
        }
    };
    let indexer = PointIndexer::new(field, n);
    let perm = Perm::from_map(&map, &indexer).context("the map does not permute the points")?;
    let parity = perm.sign();
    let witness = parity == Parity::Odd && inverse_verified == Some(true);

    let mut record = ReportRecord::new("parity", field, n);
    record.map = Some(map.to_string());
    record.parity = Some(parity.to_string());
    record.inverse_verified = inverse_verified;
    record.fixed_points = Some(perm.fixed_points());
    record.cycle_histogram = Some(perm.cycle_histogram());
    if witness {
        record.witness = Some(true);
    }
    record.elapsed_ms = start.elapsed().as_millis() as u64;

    Ok(ParityOutcome {
        record,
        parity,
        fixed_points: perm.fixed_points(),
        cycle_histogram: perm.cycle_histogram(),
        cycles: perm.format_cycles(),
        inverse_verified,
        witness,
    })
}

#[derive(Debug)]
pub struct VerifyOutcome {
    pub record: ReportRecord,
    /// `F.compose(G)`, i.e. F after G.
    pub forward: PolyMap,
    /// `G.compose(F)`.
    pub backward: PolyMap,
    /// Both compositions are formally the identity.
    pub formal: bool,
    /// Both compositions act as the identity on every point.  Can hold
    /// without `formal` (the Frobenius map against itself, for example).
    pub functional: bool,
}

pub fn run_verify_inverse(
    field: &FieldSpec,
    n: usize,
    map_text: &str,
    inverse_text: &str,
) -> Result<VerifyOutcome> {
    let start = Instant::now();
    point_space_size(field, n)?;
    let f = PolyMap::parse(map_text, field, n).context("parsing map")?;
    let g = PolyMap::parse(inverse_text, field, n).context("parsing inverse")?;
    let forward = f.compose(&g)?;
    let backward = g.compose(&f)?;
    let formal = forward.is_identity() && backward.is_identity();
    let identity = PolyMap::identity(field, n);
    let functional =
        forward.functional_equal(&identity)? && backward.functional_equal(&identity)?;

    let mut record = ReportRecord::new("verify-inverse", field, n);
    record.map = Some(f.to_string());
    record.inverse_verified = Some(formal);
    record.elapsed_ms = start.elapsed().as_millis() as u64;

    Ok(VerifyOutcome { record, forward, backward, formal, functional })
}

#[derive(Debug)]
pub struct TheoremOutcome {
    pub record: ReportRecord,
    pub points: usize,
    pub alphabet_size: usize,
    pub order: BigUint,
    pub symmetric_order: BigUint,
    pub alternating_order: BigUint,
    pub matches_symmetric: bool,
    pub matches_alternating: bool,
    /// Sign of every alphabet generator, in alphabet order.
    pub generator_signs: Vec<(String, Parity)>,
}

/// Order of the group generated by the tame alphabet on the point space,
/// compared against the full symmetric and alternating orders.  Every
/// generator is formally verified as an automorphism before its
/// permutation is taken, and every generator's sign is reported.
pub fn run_theorem_check(field: &FieldSpec, n: usize) -> Result<TheoremOutcome> {
    let start = Instant::now();
    let points = point_space_size(field, n)?;
    let alphabet = tame_generator_alphabet(field, n)?;
    let indexer = PointIndexer::new(field, n);
    let mut perms = Vec::with_capacity(alphabet.len());
    let mut generator_signs = Vec::with_capacity(alphabet.len());
    for a in &alphabet {
        ensure!(
            verify_inverse_pair(a.map(), a.inverse())?,
            "alphabet generator {} failed inverse verification",
            a.map()
        );
        let perm = Perm::from_map(a.map(), &indexer)?;
        generator_signs.push((a.map().to_string(), perm.sign()));
        perms.push(perm);
    }
    let group = Bsgs::new(&perms)?;
    let order = group.order();
    let symmetric_order = factorial(points);
    let alternating_order = &symmetric_order / 2u32;
    let matches_symmetric = order == symmetric_order;
    let matches_alternating = order == alternating_order;

    let mut record = ReportRecord::new("theorem-check", field, n);
    record.group_order = Some(order.to_string());
    record.elapsed_ms = start.elapsed().as_millis() as u64;

    Ok(TheoremOutcome {
        record,
        points,
        alphabet_size: alphabet.len(),
        order,
        symmetric_order,
        alternating_order,
        matches_symmetric,
        matches_alternating,
        generator_signs,
    })
}

#[derive(Debug)]
pub struct SliceOutcome {
    pub record: ReportRecord,
    pub total: Parity,
    /// `(value literal, sign of the slice at that value)`, in element
    /// order.
    pub slices: Vec<(String, Parity)>,
    pub product: Parity,
    pub all_slices_even: bool,
}

/// Slice a map that formally fixes one coordinate at every value of that
/// coordinate and compare the product of the slice parities with the
/// parity of the full map.  The two always agree; the runner fails hard
/// if they do not.
pub fn run_slice_check(
    field: &FieldSpec,
    n: usize,
    map_text: &str,
    fix: usize,
) -> Result<SliceOutcome> {
    let start = Instant::now();
    point_space_size(field, n)?;
    ensure!(n >= 2, "slicing needs at least two variables");
    ensure!(fix < n, "fixed coordinate out of range");
    let map = PolyMap::parse(map_text, field, n).context("parsing map")?;
    let indexer = PointIndexer::new(field, n);
    let full = Perm::from_map(&map, &indexer).context("the map does not permute the points")?;
    let total = full.sign();

    let sub_indexer = PointIndexer::new(field, n - 1);
    let mut slices = Vec::new();
    let mut product = Parity::Even;
    for value in field.elements() {
        let s = slice_map(&map, fix, value)?;
        let sign = Perm::from_map(&s, &sub_indexer)?.sign();
        product = product.combine(sign);
        slices.push((field.format_elem(value), sign));
    }
    ensure!(
        product == total,
        "slice parity product disagrees with the total parity"
    );
    let all_slices_even = slices.iter().all(|(_, s)| s.is_even());

    let mut record = ReportRecord::new("slice-check", field, n);
    record.map = Some(map.to_string());
    record.parity = Some(total.to_string());
    record.fixed_points = Some(full.fixed_points());
    record.cycle_histogram = Some(full.cycle_histogram());
    record.elapsed_ms = start.elapsed().as_millis() as u64;

    Ok(SliceOutcome { record, total, slices, product, all_slices_even })
}

#[derive(Debug, Clone)]
pub struct SearchParams {
    pub field: FieldSpec,
    pub n: usize,
    pub family: SearchFamily,
    pub samples: usize,
    pub seed: u64,
    pub word_length: usize,
    pub degree_bound: u32,
    /// Candidate file for [`SearchFamily::Candidates`].
    pub candidates: Option<PathBuf>,
}

#[derive(Debug)]
pub struct SearchOutcome {
    pub samples_run: usize,
    /// The witness record, when one was found; the search halts on it.
    pub witness: Option<ReportRecord>,
}

/// Sample candidate automorphisms, record the parity of each, and halt
/// immediately if one is odd with a formally verified inverse.
/// `on_record` sees every record in order, the witness included.
pub fn run_search(
    params: &SearchParams,
    mut on_record: impl FnMut(&ReportRecord) -> Result<()>,
) -> Result<SearchOutcome> {
    point_space_size(&params.field, params.n)?;
    match params.family {
        SearchFamily::Tame => search_tame(params, &mut on_record),
        SearchFamily::ConjugatedNagata => search_conjugated_nagata(params, &mut on_record),
        SearchFamily::Candidates => search_candidates(params, &mut on_record),
    }
}

/// Record one sampled automorphism.  The inverse either comes verified by
/// construction (tame words and their conjugates) or was checked by the
/// caller; odd parity triggers an explicit re-verification either way, so
/// a witness is never flagged on the construction invariant alone.
fn record_sample(
    params: &SearchParams,
    aut: &Automorphism,
    word_lines: Option<Vec<String>>,
    perm: &Perm,
    start: Instant,
) -> Result<(ReportRecord, bool)> {
    let parity = perm.sign();
    let verified = if parity == Parity::Odd {
        verify_inverse_pair(aut.map(), aut.inverse())?
    } else {
        true
    };
    let witness = parity == Parity::Odd && verified;

    let mut record = ReportRecord::new("search", &params.field, params.n);
    record.map = Some(aut.map().to_string());
    record.word = word_lines;
    record.parity = Some(parity.to_string());
    record.inverse_verified = Some(verified);
    record.fixed_points = Some(perm.fixed_points());
    record.cycle_histogram = Some(perm.cycle_histogram());
    record.seed = Some(params.seed);
    if witness {
        record.witness = Some(true);
    }
    record.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok((record, witness))
}

fn search_tame(
    params: &SearchParams,
    on_record: &mut dyn FnMut(&ReportRecord) -> Result<()>,
) -> Result<SearchOutcome> {
    let field = &params.field;
    let indexer = PointIndexer::new(field, params.n);
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut outcome = SearchOutcome { samples_run: 0, witness: None };
    for _ in 0..params.samples {
        let start = Instant::now();
        let word =
            random_tame_word(field, params.n, params.word_length, params.degree_bound, &mut rng);
        let aut = word.compose()?;
        let perm = Perm::from_map(aut.map(), &indexer)?;
        let (record, witness) =
            record_sample(params, &aut, Some(word.to_lines()), &perm, start)?;
        on_record(&record)?;
        outcome.samples_run += 1;
        if witness {
            outcome.witness = Some(record);
            break;
        }
    }
    Ok(outcome)
}

fn search_conjugated_nagata(
    params: &SearchParams,
    on_record: &mut dyn FnMut(&ReportRecord) -> Result<()>,
) -> Result<SearchOutcome> {
    ensure!(params.n == 3, "the conjugated-nagata family needs n = 3");
    let field = &params.field;
    let nagata = Automorphism::nagata(field);
    let indexer = PointIndexer::new(field, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut outcome = SearchOutcome { samples_run: 0, witness: None };
    for _ in 0..params.samples {
        let start = Instant::now();
        let depth = rng.gen_range(1..=3usize);
        let word = random_tame_word(field, 3, depth, params.degree_bound, &mut rng);
        let phi = word.compose()?;
        let conj = nagata.conjugate(&phi)?;
        let perm = Perm::from_map(conj.map(), &indexer)?;
        let (record, witness) =
            record_sample(params, &conj, Some(word.to_lines()), &perm, start)?;
        on_record(&record)?;
        outcome.samples_run += 1;
        if witness {
            outcome.witness = Some(record);
            break;
        }
    }
    Ok(outcome)
}

fn search_candidates(
    params: &SearchParams,
    on_record: &mut dyn FnMut(&ReportRecord) -> Result<()>,
) -> Result<SearchOutcome> {
    let path = params
        .candidates
        .as_ref()
        .context("the candidates family needs a candidate file")?;
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading candidate file {}", path.display()))?;
    let field = &params.field;
    let indexer = PointIndexer::new(field, params.n);
    let mut outcome = SearchOutcome { samples_run: 0, witness: None };
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let start = Instant::now();
        let (map_text, inverse_text) = line
            .split_once('\t')
            .with_context(|| format!("candidate line {}: expected `map<TAB>inverse`", i + 1))?;
        let map = PolyMap::parse(map_text.trim(), field, params.n)
            .with_context(|| format!("candidate line {}: map", i + 1))?;
        let inverse = PolyMap::parse(inverse_text.trim(), field, params.n)
            .with_context(|| format!("candidate line {}: inverse", i + 1))?;
        let verified = verify_inverse_pair(&map, &inverse)?;
        let perm = Perm::from_map(&map, &indexer)
            .with_context(|| format!("candidate line {}: the map does not permute the points", i + 1))?;
        let parity = perm.sign();
        let witness = parity == Parity::Odd && verified;

        let mut record = ReportRecord::new("search", field, params.n);
        record.map = Some(map.to_string());
        record.parity = Some(parity.to_string());
        record.inverse_verified = Some(verified);
        record.fixed_points = Some(perm.fixed_points());
        record.cycle_histogram = Some(perm.cycle_histogram());
        if witness {
            record.witness = Some(true);
        }
        record.elapsed_ms = start.elapsed().as_millis() as u64;
        on_record(&record)?;
        outcome.samples_run += 1;
        if witness {
            outcome.witness = Some(record);
            break;
        }
    }
    Ok(outcome)
}
