//! Acceptance suite: one numbered criterion per test, one printed
//! PASS/FAIL line per criterion (visible with `--nocapture`).

use std::collections::BTreeSet;
use std::panic::{catch_unwind, resume_unwind, UnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use oddaut_core::{
    random_fixing_tame_word, random_tame_word, verify_inverse_pair, Automorphism, Bsgs, FieldSpec,
    Parity, Perm, PointIndexer,
};
use oddaut_lab::{
    run_parity, run_search, run_theorem_check, run_verify_inverse, SearchFamily, SearchParams,
};

fn criterion<F>(number: u32, summary: &str, body: F)
where
    F: FnOnce() + UnwindSafe,
{
    match catch_unwind(body) {
        Ok(()) => println!("ACCEPTANCE PASS criterion {number}: {summary}"),
        Err(cause) => {
            println!("ACCEPTANCE FAIL criterion {number}: {summary}");
            resume_unwind(cause);
        }
    }
}

fn field(p: u32, m: u32) -> FieldSpec {
    FieldSpec::new(p, m, None).unwrap()
}

fn fact(k: usize) -> BigUint {
    (1..=k as u64).map(BigUint::from).fold(BigUint::one(), |a, b| a * b)
}

#[test]
fn criterion_01_smallest_field_generates_sym_4() {
    criterion(1, "alphabet over GF(2), n=2 generates Sym(4), order 24, < 1 s", || {
        let start = Instant::now();
        let out = run_theorem_check(&field(2, 1), 2).unwrap();
        assert_eq!(out.order, BigUint::from(24u32));
        assert!(out.matches_symmetric);
        assert!(!out.matches_alternating);
        assert!(start.elapsed() < Duration::from_secs(1));
    });
}

#[test]
fn criterion_02_gf3_generates_sym_9() {
    criterion(2, "alphabet over GF(3), n=2 generates Sym(9), order 362880, < 5 s", || {
        let start = Instant::now();
        let out = run_theorem_check(&field(3, 1), 2).unwrap();
        assert_eq!(out.order, BigUint::from(362880u32));
        assert!(out.matches_symmetric);
        assert!(start.elapsed() < Duration::from_secs(5));
    });
}

#[test]
fn criterion_03_gf4_generates_alt_16() {
    criterion(3, "alphabet over GF(4), n=2 generates Alt(16), every generator even, < 60 s", || {
        let start = Instant::now();
        let out = run_theorem_check(&field(2, 2), 2).unwrap();
        assert_eq!(out.order, BigUint::from(10461394944000u64));
        assert!(out.matches_alternating);
        assert!(!out.matches_symmetric);
        assert!(out.generator_signs.iter().all(|(_, s)| s.is_even()));
        assert!(start.elapsed() < Duration::from_secs(60));
    });
}

#[test]
fn criterion_04_gf8_generates_alt_64() {
    criterion(4, "alphabet over GF(8), n=2 generates Alt(64), order 64!/2, < 10 min", || {
        let start = Instant::now();
        let out = run_theorem_check(&field(2, 3), 2).unwrap();
        assert_eq!(out.order, fact(64) / 2u32);
        assert!(out.matches_alternating);
        assert!(out.generator_signs.iter().all(|(_, s)| s.is_even()));
        assert!(start.elapsed() < Duration::from_secs(600));
    });
}

#[test]
fn criterion_05_random_tame_words_are_all_even() {
    criterion(5, "1000 tame words over GF(4) and 200 over GF(8), n=2, all even, < 5 min", || {
        let start = Instant::now();
        for (m, samples, seed) in [(2u32, 1000usize, 42u64), (3, 200, 43)] {
            let params = SearchParams {
                field: field(2, m),
                n: 2,
                family: SearchFamily::Tame,
                samples,
                seed,
                word_length: 6,
                degree_bound: 2,
                candidates: None,
            };
            let mut seen = 0usize;
            let outcome = run_search(&params, |record| {
                assert_eq!(record.parity.as_deref(), Some("even"));
                assert_eq!(record.inverse_verified, Some(true));
                seen += 1;
                Ok(())
            })
            .unwrap();
            assert_eq!(seen, samples);
            assert_eq!(outcome.samples_run, samples);
            assert!(outcome.witness.is_none());
        }
        assert!(start.elapsed() < Duration::from_secs(300));
    });
}

#[test]
fn criterion_06_odd_shear_over_gf2() {
    criterion(6, "(X1 + X2; X2) over GF(2) induces an odd permutation", || {
        let out = run_parity(&field(2, 1), 2, "X1 + X2; X2", None).unwrap();
        assert_eq!(out.parity, Parity::Odd);
    });
}

#[test]
fn criterion_07_nagata_profile() {
    criterion(
        7,
        "Nagata over GF(4): formal involution, even, 28 fixed, 18 two-cycles; inverse verifies over GF(3), GF(5)",
        || {
            let start = Instant::now();
            let f4 = field(2, 2);
            let nagata = Automorphism::nagata(&f4);
            let squared = nagata.map().compose(nagata.map()).unwrap();
            assert!(squared.is_identity());
            assert!(verify_inverse_pair(nagata.map(), nagata.inverse()).unwrap());
            let indexer = PointIndexer::new(&f4, 3);
            let perm = Perm::from_map(nagata.map(), &indexer).unwrap();
            assert_eq!(perm.sign(), Parity::Even);
            assert_eq!(perm.fixed_points(), 28);
            assert_eq!(perm.cycle_histogram().get(&2), Some(&18));
            assert_eq!(perm.cycle_histogram().get(&1), Some(&28));
            for p in [3, 5] {
                let f = field(p, 1);
                let n = Automorphism::nagata(&f);
                assert!(verify_inverse_pair(n.map(), n.inverse()).unwrap());
            }
            assert!(start.elapsed() < Duration::from_secs(1));
        },
    );
}

#[test]
fn criterion_08_frobenius_is_bijective_but_not_an_automorphism() {
    criterion(8, "(X1^2; X2^2) over GF(4): bijective, functionally self-inverse, formally not", || {
        let f4 = field(2, 2);
        let out = run_verify_inverse(&f4, 2, "X1^2; X2^2", "X1^2; X2^2").unwrap();
        assert!(!out.formal);
        assert!(out.functional);
        // bijective: it induces a permutation at all
        let parity = run_parity(&f4, 2, "X1^2; X2^2", None).unwrap();
        assert_eq!(parity.inverse_verified, None);
        assert_eq!(parity.parity, Parity::Even);
    });
}

#[test]
fn criterion_09_slice_parity_product_law() {
    criterion(9, "100 variable-fixing tame maps over GF(4), n=3: slice product = total, every slice even", || {
        let start = Instant::now();
        let f4 = field(2, 2);
        let indexer = PointIndexer::new(&f4, 3);
        let sub_indexer = PointIndexer::new(&f4, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(90);
        for sample in 0..100usize {
            let fix = sample % 3;
            let word = random_fixing_tame_word(&f4, 3, fix, 4, 2, &mut rng);
            let aut = word.compose().unwrap();
            let total = Perm::from_map(aut.map(), &indexer).unwrap().sign();
            let mut product = Parity::Even;
            for value in f4.elements() {
                let slice = aut.slice(fix, value).unwrap();
                let sign = Perm::from_map(slice.map(), &sub_indexer).unwrap().sign();
                assert_eq!(sign, Parity::Even);
                product = product.combine(sign);
            }
            assert_eq!(product, total);
        }
        assert!(start.elapsed() < Duration::from_secs(120));
    });
}

#[test]
fn criterion_10_conjugation_preserves_parity() {
    criterion(10, "200 conjugated pairs over GF(4), n=2: parity invariant under conjugation", || {
        let start = Instant::now();
        let f4 = field(2, 2);
        let indexer = PointIndexer::new(&f4, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(100);
        for _ in 0..200usize {
            let f = random_tame_word(&f4, 2, 4, 2, &mut rng).compose().unwrap();
            let phi = random_tame_word(&f4, 2, 2, 2, &mut rng).compose().unwrap();
            let conj = f.conjugate(&phi).unwrap();
            let sign_f = Perm::from_map(f.map(), &indexer).unwrap().sign();
            let sign_conj = Perm::from_map(conj.map(), &indexer).unwrap().sign();
            assert_eq!(sign_f, sign_conj);
        }
        assert!(start.elapsed() < Duration::from_secs(120));
    });
}

fn random_perm<R: rand::Rng>(size: usize, rng: &mut R) -> Perm {
    let mut images: Vec<u32> = (0..size as u32).collect();
    images.shuffle(rng);
    Perm::from_images(images).unwrap()
}

fn brute_force_order(generators: &[Perm]) -> usize {
    let size = generators[0].size();
    let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
    let mut frontier = vec![Perm::identity(size)];
    seen.insert(frontier[0].as_images().to_vec());
    while let Some(current) = frontier.pop() {
        for g in generators {
            let next = g.compose(&current).unwrap();
            if seen.insert(next.as_images().to_vec()) {
                frontier.push(next);
            }
        }
    }
    seen.len()
}

#[test]
fn criterion_11_parity_and_order_oracles_agree() {
    criterion(11, "cycle vs inversion parity on 3000 permutations; stabilizer-chain vs brute-force order on 20 generator sets", || {
        let mut rng = ChaCha8Rng::seed_from_u64(110);
        for size in [4usize, 16, 64] {
            for _ in 0..1000usize {
                let perm = random_perm(size, &mut rng);
                assert_eq!(perm.sign(), perm.sign_by_inversions());
            }
        }
        for round in 0..20usize {
            let degree = 5 + round % 3; // orders at most 7! = 5040
            let count = 2 + round % 2;
            let generators: Vec<Perm> =
                (0..count).map(|_| random_perm(degree, &mut rng)).collect();
            let expected = brute_force_order(&generators);
            let order = Bsgs::new(&generators).unwrap().order();
            assert_eq!(order, BigUint::from(expected));
        }
    });
}
