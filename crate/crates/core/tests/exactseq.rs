mod support;

use std::collections::HashSet;

use cechtower_core::cochain::fixtures;
use cechtower_core::exactseq::{connecting, long_exact_sequence, Slot};
use cechtower_core::{CechComplex, CechSequence, ShortExactSequence};
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use support::{cech_coboundary, for_each_vector, image_by_enumeration, kernel_by_enumeration, named_fixtures, random_cochain, random_cocycle, sequences, to_u32};

fn h1_generator(c: &CechComplex) -> cechtower_core::Cochain {
    c.cohomology(1).unwrap().representatives().remove(0)
}

#[test]
fn projective_plane_bockstein_is_nonzero() {
    let x = fixtures::projective_plane();
    let seq = CechSequence::new(&x, &ShortExactSequence::bockstein(2)).unwrap();
    let c = h1_generator(seq.over_c());
    let class = seq.connecting_class(&c).unwrap();
    assert_eq!(class.group.to_string(), "Z/2");
    assert!(!class.is_zero());
    assert_eq!(connecting(&x, seq.ses(), &c).unwrap(), seq.connecting(&c).unwrap());
}

/// Every lift of the generator to `Z/4` has a coboundary `2w` with `w` not
/// a coboundary mod 2, checked by enumeration.
#[test]
fn projective_plane_bockstein_over_all_lifts() {
    let x = fixtures::projective_plane();
    let edges = x.count(1);
    let seq = CechSequence::new(&x, &ShortExactSequence::bockstein(2)).unwrap();
    let c = to_u32(h1_generator(seq.over_c()).coords());
    let mut boundaries = HashSet::new();
    for_each_vector(&vec![2; edges], |b| {
        boundaries.insert(cech_coboundary(&x, &[2], 1, b));
    });
    let mut lifts = 0;
    for_each_vector(&vec![2; edges], |twist| {
        let lift: Vec<u32> = c.iter().zip(twist).map(|(&a, &t)| a + 2 * t).collect();
        let d = cech_coboundary(&x, &[4], 1, &lift);
        assert!(d.iter().all(|&v| v % 2 == 0));
        let w: Vec<u32> = d.iter().map(|&v| v / 2).collect();
        assert!(!boundaries.contains(&w));
        lifts += 1;
    });
    assert_eq!(lifts, 1 << 15);
}

#[test]
fn section_independence_on_fixtures() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (name, x) in named_fixtures() {
        for (sname, ses) in sequences() {
            let seq = CechSequence::new(&x, &ses).unwrap();
            for p in 0..=x.dim() {
                let c = random_cocycle(seq.over_c(), p, &mut rng);
                let failures = seq.section_independence(&c, 20, &mut rng).unwrap();
                assert_eq!(failures, 0, "{name}, {sname}, degree {p}");
            }
        }
    }
}

#[test]
fn coboundaries_map_to_coboundaries() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (name, x) in named_fixtures() {
        for (sname, ses) in sequences() {
            let seq = CechSequence::new(&x, &ses).unwrap();
            for p in 1..=x.dim() {
                let b = random_cochain(seq.over_c(), p - 1, &mut rng);
                let db = seq.over_c().coboundary(&b).unwrap();
                let class = seq.connecting_class(&db).unwrap();
                assert!(class.is_zero(), "{name}, {sname}, degree {p}");
            }
        }
    }
}

#[test]
fn connecting_output_is_a_cocycle() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let x = fixtures::torus();
    for (_, ses) in sequences() {
        let seq = CechSequence::new(&x, &ses).unwrap();
        for p in 0..=x.dim() {
            let c = random_cocycle(seq.over_c(), p, &mut rng);
            let d = seq.connecting(&c).unwrap();
            assert_eq!(d.degree(), p + 1);
            assert!(seq.over_a().is_cocycle(&d).unwrap());
        }
    }
}

#[test]
fn non_cocycle_input_is_rejected() {
    let x = fixtures::triangle();
    let seq = CechSequence::new(&x, &ShortExactSequence::bockstein(2)).unwrap();
    let e = seq.over_c().indicator(&[0, 1], vec![BigInt::from(1)]).unwrap();
    assert!(seq.connecting(&e).is_err());
}

#[test]
fn long_exact_sequences_are_exact() {
    let mut pairs = 0;
    let mut enumerated = 0;
    for (name, x) in named_fixtures() {
        for (sname, ses) in sequences() {
            let les = long_exact_sequence(&x, &ses, x.dim()).unwrap();
            assert!(les.is_exact(), "{name}, {sname}");
            assert_eq!(les.terms.len(), 3 * (x.dim() + 1) + 1);
            assert_eq!(les.terms.last().unwrap().slot, Slot::A);
            pairs += 1;
            if let Some(k) = kernel_by_enumeration(&les.maps[0]) {
                assert_eq!(k.len(), 1, "{name}, {sname}: first map not injective");
            }
            for i in 1..les.maps.len() {
                let (Some(k), Some(im)) = (kernel_by_enumeration(&les.maps[i]), image_by_enumeration(&les.maps[i - 1]))
                else {
                    continue;
                };
                assert_eq!(k, im, "{name}, {sname}: at {}", les.terms[i].label());
                enumerated += 1;
            }
        }
    }
    assert!(pairs >= 5);
    assert!(enumerated > 50, "only {enumerated} positions enumerated");
}

#[test]
fn induced_maps_compose_to_zero() {
    let x = fixtures::projective_plane();
    let seq = CechSequence::new(&x, &ShortExactSequence::bockstein(2)).unwrap();
    for p in 0..=2 {
        assert!(seq.iota_star(p).unwrap().then(&seq.pi_star(p).unwrap()).unwrap().is_zero());
        assert!(seq.pi_star(p).unwrap().then(&seq.delta_star(p).unwrap()).unwrap().is_zero());
    }
    // the Bockstein is the only nonzero connecting map on H^1
    assert!(!seq.delta_star(1).unwrap().is_zero());
}
