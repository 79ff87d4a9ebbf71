mod support;

use std::collections::HashSet;

use cechtower_core::cochain::fixtures;
use cechtower_core::spectral::{check_degeneration, filtered_terms, les_direct_sum};
use cechtower_core::{FgAbGroup, FilteredComplex, SimplicialComplex};
use num_integer::Integer;
use proptest::prelude::*;
use support::{cech_coboundary, for_each_vector, group, image_by_enumeration, kernel_by_enumeration, size, Profile, Vector};

/// Filtered cochains enumerated directly: coordinates are laid out per
/// simplex, summand by summand, and `V_p` zeroes the summands before `p`.
struct Brute<'a> {
    site: &'a SimplicialComplex,
    summands: Vec<u64>,
}

impl Brute<'_> {
    fn slots(&self, n: usize) -> usize {
        if n <= self.site.dim() {
            self.site.count(n)
        } else {
            0
        }
    }

    fn moduli(&self, n: usize) -> Vec<u64> {
        support::slot_moduli(self.slots(n), &self.summands)
    }

    fn in_filtration(&self, v: &[u32], p: i64) -> bool {
        let k = self.summands.len();
        v.iter().enumerate().all(|(i, &x)| x == 0 || (i % k) as i64 + 1 >= p)
    }

    fn d(&self, n: usize, v: &[u32]) -> Vector {
        cech_coboundary(self.site, &self.summands, n, v)
    }

    fn filtered(&self, n: usize, p: i64) -> Vec<Vector> {
        let mut out = Vec::new();
        for_each_vector(&self.moduli(n), |v| {
            if self.in_filtration(v, p) {
                out.push(v.to_vec());
            }
        });
        out
    }

    fn z(&self, r: i64, p: i64, n: usize) -> HashSet<Vector> {
        self.filtered(n, p).into_iter().filter(|v| self.in_filtration(&self.d(n, v), p + r)).collect()
    }

    fn b(&self, r: i64, p: i64, n: usize) -> HashSet<Vector> {
        if n == 0 {
            return HashSet::from([vec![0; self.moduli(0).len()]]);
        }
        self.filtered(n - 1, p - r)
            .iter()
            .map(|y| self.d(n - 1, y))
            .filter(|x| self.in_filtration(x, p))
            .collect()
    }

    fn add(&self, n: usize, a: &[u32], b: &[u32]) -> Vector {
        a.iter().zip(b).zip(self.moduli(n)).map(|((&x, &y), m)| ((u64::from(x) + u64::from(y)) % m) as u32).collect()
    }

    fn e(&self, r: i64, p: i64, n: usize) -> Profile {
        let z = self.z(r, p, n);
        let b = self.b(r - 1, p, n);
        let z_next = self.z(r - 1, p + 1, n);
        let mut denominator = z_next;
        for x in &b {
            while !denominator.contains(x) {
                let shifted: Vec<Vector> = denominator.iter().map(|y| self.add(n, x, y)).collect();
                denominator.extend(shifted);
            }
        }
        let moduli = self.moduli(n);
        let exponent = moduli.iter().fold(1u64, |acc, &m| acc.lcm(&m));
        let torsion_counts = (1..=exponent)
            .map(|k| {
                let hits = z
                    .iter()
                    .filter(|v| {
                        let kv: Vector =
                            v.iter().zip(&moduli).map(|(&x, &m)| ((u64::from(x) * k) % m) as u32).collect();
                        denominator.contains(&kv)
                    })
                    .count() as u64;
                hits / denominator.len() as u64
            })
            .collect();
        Profile {
            cocycles: z.len() as u64,
            boundaries: denominator.len() as u64,
            torsion_counts,
        }
    }
}

fn filtered(site: &SimplicialComplex, summands: &[u64]) -> FilteredComplex {
    FilteredComplex::new(site, summands.iter().map(|&m| group(&[m])).collect()).unwrap()
}

/// Compares every term with `1 <= r <= 3` and `1 <= p <= s + 1` against
/// enumeration. Returns the number of terms compared.
fn compare_with_enumeration(site: &SimplicialComplex, summands: &[u64]) -> usize {
    let brute = Brute { site, summands: summands.to_vec() };
    let f = filtered(site, summands);
    let mut compared = 0;
    for r in 1..=3 {
        for p in 1..=summands.len() + 1 {
            for n in 0..=site.dim() {
                let t = filtered_terms(&f, r, p, n as i64 - p as i64).unwrap();
                let (ri, pi) = (r as i64, p as i64);
                let z = brute.z(ri, pi, n);
                let b = brute.b(ri, pi, n);
                assert_eq!(t.z.order().unwrap(), z.len().into(), "Z r={r} p={p} n={n}");
                assert_eq!(t.b.order().unwrap(), b.len().into(), "B r={r} p={p} n={n}");
                assert!(b.is_subset(&z));
                let e = brute.e(ri, pi, n);
                assert!(e.matches(&t.e), "E r={r} p={p} n={n}: {} vs {e:?}", t.e);
                compared += 1;
            }
        }
    }
    compared
}

#[test]
fn circle_terms_match_enumeration() {
    assert_eq!(compare_with_enumeration(&fixtures::circle(), &[2, 3]), 18);
}

#[test]
fn triangle_terms_match_enumeration() {
    compare_with_enumeration(&fixtures::triangle(), &[2, 3]);
    compare_with_enumeration(&fixtures::triangle(), &[2, 2, 2]);
    compare_with_enumeration(&fixtures::two_points(), &[4, 2, 3]);
}

#[test]
fn circle_with_two_summands() {
    let f = filtered(&fixtures::circle(), &[2, 3]);
    let t = filtered_terms(&f, 2, 2, -1).unwrap();
    assert_eq!(t.e.to_string(), "Z/3");
    let report = check_degeneration(&f, 3).unwrap();
    assert!(report.passed());
    assert_eq!(report.entries.len(), 2 * 2 * 3);
}

#[test]
fn projective_plane_with_integers() {
    let f = FilteredComplex::new(&fixtures::projective_plane(), vec![FgAbGroup::cyclic(2), FgAbGroup::integers()]).unwrap();
    let t = filtered_terms(&f, 2, 2, 0).unwrap();
    assert_eq!(t.e.to_string(), "Z/2");
    assert_eq!(filtered_terms(&f, 1, 1, 0).unwrap().e.to_string(), "Z/2");
    assert_eq!(filtered_terms(&f, 3, 2, -1).unwrap().e.to_string(), "0");
}

#[test]
fn full_grids_on_fixtures() {
    let cases: Vec<(SimplicialComplex, Vec<FgAbGroup>)> = vec![
        (
            fixtures::projective_plane(),
            vec![FgAbGroup::cyclic(2), FgAbGroup::cyclic(4), FgAbGroup::integers()],
        ),
        (fixtures::torus(), vec![FgAbGroup::integers(), FgAbGroup::cyclic(2)]),
        (fixtures::octahedron(), vec![FgAbGroup::cyclic(3), FgAbGroup::integers()]),
        (fixtures::circle(), vec![FgAbGroup::cyclic(2), FgAbGroup::cyclic(3)]),
    ];
    for (x, summands) in cases {
        let s = summands.len();
        let f = FilteredComplex::new(&x, summands).unwrap();
        let report = check_degeneration(&f, 3).unwrap();
        assert_eq!(report.entries.len(), 3 * s * (x.dim() + 1));
        for (key, entry) in report.grid() {
            assert!(entry.passed(), "{key}: {entry:?}");
        }
        for e in &report.infinity {
            assert!(e.e.is_isomorphic(&e.expected), "E_inf {}/{}", e.p, e.q);
        }
        assert!(report.page_stable && report.tail_vanishes);
    }
}

#[test]
fn contractible_triangle() {
    let f = FilteredComplex::new(&fixtures::triangle(), vec![FgAbGroup::integers(), FgAbGroup::cyclic(5)]).unwrap();
    let report = check_degeneration(&f, 2).unwrap();
    assert!(report.passed());
    for entry in &report.entries {
        let n = entry.terms.p as i64 + entry.terms.q;
        assert_eq!(entry.terms.e.is_trivial(), n > 0);
    }
}

#[test]
fn out_of_range_indices() {
    let f = filtered(&fixtures::circle(), &[2, 3]);
    assert!(filtered_terms(&f, 0, 1, 0).is_err());
    assert!(filtered_terms(&f, 1, 0, 0).is_err());
    assert!(filtered_terms(&f, 1, 4, 0).is_err());
    assert!(filtered_terms(&f, 1, 1, 1).is_err());
    assert!(filtered_terms(&f, 1, 1, -2).is_err());
}

#[test]
fn direct_sum_sequence_on_projective_plane() {
    let x = fixtures::projective_plane();
    let d = les_direct_sum(&x, &FgAbGroup::integers(), &FgAbGroup::cyclic(2), 3, 2).unwrap();
    assert!(d.passed());
    assert!(d.les.is_exact());
    assert!(d.connecting_zero && d.splits);
    let h2 = cechtower_core::CechComplex::new(&x, &FgAbGroup::integers().direct_sum(&FgAbGroup::cyclic(2)))
        .unwrap()
        .cohomology(2)
        .unwrap()
        .group()
        .clone();
    assert_eq!(h2.to_string(), "Z/2 + Z/2");
    let mut enumerated = 0;
    for i in 1..d.les.maps.len() {
        if let (Some(k), Some(im)) = (kernel_by_enumeration(&d.les.maps[i]), image_by_enumeration(&d.les.maps[i - 1])) {
            assert_eq!(k, im);
            enumerated += 1;
        }
    }
    assert!(enumerated > 0);
    assert!(les_direct_sum(&x, &FgAbGroup::integers(), &FgAbGroup::cyclic(2), 1, 2).is_err());
}

fn complex_strategy() -> impl Strategy<Value = SimplicialComplex> {
    (1usize..=4).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::btree_set(0..n, 1..=3.min(n)), 1..=3).prop_map(move |facets| {
            let facets: Vec<Vec<usize>> = facets.into_iter().map(|f| f.into_iter().collect()).collect();
            SimplicialComplex::from_facets(n, &facets).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_filtrations_match_enumeration(x in complex_strategy(), summands in prop::collection::vec(2u64..=4, 1..=3)) {
        let total: u64 = summands.iter().product();
        prop_assume!((0..=x.dim()).all(|n| size(&vec![total; x.count(n)]).is_some_and(|s| s <= 1 << 12)));
        compare_with_enumeration(&x, &summands);
    }

    #[test]
    fn random_filtrations_degenerate(x in complex_strategy(), which in prop::collection::vec(0usize..4, 1..=3)) {
        let choices = [FgAbGroup::integers(), FgAbGroup::cyclic(2), FgAbGroup::cyclic(3), FgAbGroup::cyclic(4)];
        let summands = which.iter().map(|&i| choices[i].clone()).collect();
        let f = FilteredComplex::new(&x, summands).unwrap();
        prop_assert!(check_degeneration(&f, 3).unwrap().passed());
    }
}
