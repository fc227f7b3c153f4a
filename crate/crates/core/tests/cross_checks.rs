//! Deterministic cross-checks: constructor inverse verification across
//! fields and dimensions, characteristic-2 involutions, modulus
//! independence of parity, the slice-parity law, and exact group orders
//! against independent computations.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::One;
use oddaut_core::gf::FieldSpec;
use oddaut_core::mpoly::Poly;
use oddaut_core::{
    random_fixing_tame_word, random_tame_word, slice_map, verify_inverse_pair, Automorphism,
    Bsgs, Parity, Perm, PointIndexer, PolyMap,
};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small_fields() -> Vec<FieldSpec> {
    [(2, 1), (3, 1), (2, 2), (2, 3)]
        .into_iter()
        .map(|(p, m)| FieldSpec::new(p, m, None).unwrap())
        .collect()
}

#[test]
fn every_inverse_promising_constructor_verifies() {
    for field in small_fields() {
        for n in [2usize, 3] {
            let prim = field.primitive_element();

            // elementary: X1 += X2^2 + 1
            let shift = {
                let x2 = Poly::var(&field, n, 1);
                x2.pow(2).add(&Poly::constant(&field, n, field.one())).unwrap()
            };
            let e = Automorphism::elementary(&field, n, 0, shift).unwrap();
            assert!(verify_inverse_pair(e.map(), e.inverse()).unwrap());

            // linear: swap, transvection, diagonal, and their product
            let swap = {
                let mut perm: Vec<usize> = (0..n).collect();
                perm.swap(0, 1);
                Automorphism::permute_vars(&field, &perm).unwrap()
            };
            let transvection = {
                let shift = Poly::var(&field, n, 1);
                Automorphism::elementary(&field, n, 0, shift).unwrap()
            };
            let diag = {
                let mut d = vec![field.one(); n];
                d[0] = prim;
                Automorphism::diagonal(&field, &d).unwrap()
            };
            for lin in [&swap, &transvection, &diag] {
                assert!(verify_inverse_pair(lin.map(), lin.inverse()).unwrap());
            }
            let product = swap.compose(&transvection).unwrap().compose(&diag).unwrap();
            assert!(verify_inverse_pair(product.map(), product.inverse()).unwrap());

            // triangular with nontrivial diagonal and quadratic shifts
            let shifts: Vec<Poly> = (0..n)
                .map(|i| {
                    if i + 1 < n {
                        Poly::var(&field, n, i + 1).pow(2)
                    } else {
                        Poly::constant(&field, n, field.one())
                    }
                })
                .collect();
            let t = Automorphism::triangular(&field, &vec![prim; n], &shifts).unwrap();
            assert!(verify_inverse_pair(t.map(), t.inverse()).unwrap());

            // random tame words
            for seed in 0..5u64 {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let word = random_tame_word(&field, n, 4, 2, &mut rng);
                let a = word.compose().unwrap();
                assert!(
                    verify_inverse_pair(a.map(), a.inverse()).unwrap(),
                    "word seed {seed} over {field} n={n}"
                );
            }
        }

        // Nagata in dimension 3
        let nag = Automorphism::nagata(&field);
        assert!(verify_inverse_pair(nag.map(), nag.inverse()).unwrap());
    }
}

#[test]
fn nagata_is_a_formal_involution_in_characteristic_two() {
    for (p, m) in [(2u32, 2u32), (2, 3)] {
        let field = FieldSpec::new(p, m, None).unwrap();
        let nag = Automorphism::nagata(&field);
        assert!(nag.map().compose(nag.map()).unwrap().is_identity());
        assert_eq!(nag.map(), nag.inverse());
    }
    // odd characteristic: not an involution
    let f3 = FieldSpec::new(3, 1, None).unwrap();
    let nag = Automorphism::nagata(&f3);
    assert!(!nag.map().compose(nag.map()).unwrap().is_identity());
}

#[test]
fn nagata_renders_canonically_over_f4() {
    let field = FieldSpec::new(2, 2, None).unwrap();
    let nag = Automorphism::nagata(&field);
    assert_eq!(
        nag.map().to_string(),
        "X1^2*X3^3 + X2^4*X3 + X1; X1*X3^2 + X2^2*X3 + X2; X3"
    );
}

/// Maps written with integer coefficients only are preserved by any field
/// isomorphism, so their permutation structure cannot depend on which
/// irreducible modulus realizes the field.
#[test]
fn parity_is_modulus_independent() {
    let alt_moduli: &[(u32, u32, &[&[u32]])] = &[
        (3, 2, &[&[1, 0, 1], &[2, 1, 1], &[2, 2, 1]]),
        (2, 4, &[&[1, 1, 0, 0, 1], &[1, 0, 0, 1, 1], &[1, 1, 1, 1, 1]]),
    ];
    for &(p, m, moduli) in alt_moduli {
        let mut nagata_profiles = Vec::new();
        let mut planar_profiles = Vec::new();
        for modulus in moduli {
            let field = FieldSpec::new(p, m, Some(modulus)).unwrap();

            let nag = Automorphism::nagata(&field);
            let ix3 = PointIndexer::new(&field, 3);
            let perm = Perm::from_map(nag.map(), &ix3).unwrap();
            nagata_profiles.push((perm.sign(), perm.fixed_points(), perm.cycle_histogram()));

            let planar = PolyMap::parse("X1 + X2^2; X2", &field, 2).unwrap();
            let ix2 = PointIndexer::new(&field, 2);
            let perm = Perm::from_map(&planar, &ix2).unwrap();
            planar_profiles.push((perm.sign(), perm.fixed_points(), perm.cycle_histogram()));
        }
        assert!(
            nagata_profiles.windows(2).all(|w| w[0] == w[1]),
            "Nagata profiles differ across moduli of GF({p}^{m}): {nagata_profiles:?}"
        );
        assert!(
            planar_profiles.windows(2).all(|w| w[0] == w[1]),
            "planar profiles differ across moduli of GF({p}^{m}): {planar_profiles:?}"
        );
    }
}

#[test]
fn slice_parity_law_for_fixing_tame_maps() {
    let field = FieldSpec::new(2, 2, None).unwrap();
    let ix3 = PointIndexer::new(&field, 3);
    let ix2 = PointIndexer::new(&field, 2);
    for seed in 0..10u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fix = (seed % 3) as usize;
        let word = random_fixing_tame_word(&field, 3, fix, 4, 2, &mut rng);
        let a = word.compose().unwrap();
        let total = Perm::from_map(a.map(), &ix3).unwrap().sign();
        let mut product = Parity::Even;
        for value in field.elements() {
            let sliced = slice_map(a.map(), fix, value).unwrap();
            let slice_sign = Perm::from_map(&sliced, &ix2).unwrap().sign();
            assert_eq!(slice_sign, Parity::Even, "seed {seed}, slice at {value:?}");
            product = product.combine(slice_sign);
        }
        assert_eq!(product, total, "seed {seed}");
    }
}

fn factorial(n: u64) -> BigUint {
    (1..=n).map(BigUint::from).product::<BigUint>().max(BigUint::one())
}

#[test]
fn bsgs_matches_factorials_for_symmetric_groups() {
    for n in 4usize..=16 {
        let transposition = {
            let mut v: Vec<u32> = (0..n as u32).collect();
            v.swap(0, 1);
            Perm::from_images(v).unwrap()
        };
        let cycle = {
            let v: Vec<u32> = (1..n as u32).chain([0]).collect();
            Perm::from_images(v).unwrap()
        };
        let bsgs = Bsgs::new(&[transposition, cycle]).unwrap();
        assert_eq!(bsgs.order(), factorial(n as u64), "Sym({n})");
    }
}

fn brute_force_order(gens: &[Perm]) -> usize {
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let id = Perm::identity(gens[0].size());
    seen.insert(id.as_images().to_vec());
    let mut frontier = vec![id];
    while let Some(p) = frontier.pop() {
        for g in gens {
            let next = g.compose(&p).unwrap();
            if seen.insert(next.as_images().to_vec()) {
                frontier.push(next);
            }
        }
    }
    seen.len()
}

#[test]
fn bsgs_agrees_with_brute_force_on_random_subgroups() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for round in 0..8 {
        let size = 5 + (round % 3);
        let n_gens = 1 + (round % 3);
        let gens: Vec<Perm> = (0..n_gens)
            .map(|_| {
                let mut v: Vec<u32> = (0..size as u32).collect();
                v.shuffle(&mut rng);
                Perm::from_images(v).unwrap()
            })
            .collect();
        let bsgs = Bsgs::new(&gens).unwrap();
        assert_eq!(
            bsgs.order(),
            BigUint::from(brute_force_order(&gens)),
            "round {round}"
        );
    }
}

#[test]
fn displayed_map_corpus_round_trips() {
    let f2 = FieldSpec::new(2, 1, None).unwrap();
    let f3 = FieldSpec::new(3, 1, None).unwrap();
    let f4 = FieldSpec::new(2, 2, None).unwrap();
    let corpus: Vec<(&FieldSpec, usize, &str)> = vec![
        (&f4, 2, "X1; X2"),
        (&f4, 3, "X1; X2; X3"),
        (&f4, 2, "X1 + X2^2; X2"),
        (&f3, 2, "X1 - X2^2; X2"),
        (&f2, 2, "X1 + X2; X2"),
        (&f4, 2, "X1^2; X2^2"),
        (&f4, 2, "X1^4; X2^4"),
        (&f4, 2, "X2; X1"),
        (&f4, 3, "X2; X3; X1"),
        (&f4, 3, "g*X1 + X2*X3; X2 + X3^2; g*X3 + 1"),
        (&f4, 2, "X1 + X2; X2 + 1"),
        (&f4, 2, "X1*X2; X2"),
        (&f4, 3, "X1^2*X3^3 + X2^4*X3 + X1; X1*X3^2 + X2^2*X3 + X2; X3"),
        (&f3, 3, "X1 - 2*X2*X3^2 - X2^3; X2 + X3; X3"),
    ];
    for (field, n, src) in corpus {
        let parsed = PolyMap::parse(src, field, n).unwrap();
        let rendered = parsed.to_string();
        let reparsed = PolyMap::parse(&rendered, field, n).unwrap();
        assert_eq!(reparsed, parsed, "{src} -> {rendered}");
        // rendering is a fixed point
        assert_eq!(reparsed.to_string(), rendered);
    }
}

#[test]
fn plus_y_squared_inverse_pair_example() {
    for field in small_fields() {
        let fwd = PolyMap::parse("X1 + X2^2; X2", &field, 2).unwrap();
        let bwd = PolyMap::parse("X1 - X2^2; X2", &field, 2).unwrap();
        assert!(verify_inverse_pair(&fwd, &bwd).unwrap(), "{field}");
    }
}
