//! Exhaustive-enumeration oracles. Nothing here uses the engine's
//! differentials or elimination; coboundaries are recomputed from the
//! simplices directly.

#![allow(dead_code)]

pub mod gerbe;

use std::collections::HashSet;

use cechtower_core::cochain::fixtures;
use cechtower_core::{FgAbGroup, Homomorphism, SimplicialComplex};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

/// Largest cochain group the oracles will enumerate.
pub const ORACLE_LIMIT: u64 = 1 << 16;

pub type Vector = Vec<u32>;

pub fn named_fixtures() -> Vec<(&'static str, SimplicialComplex)> {
    vec![
        ("two points", fixtures::two_points()),
        ("circle", fixtures::circle()),
        ("triangle", fixtures::triangle()),
        ("projective plane", fixtures::projective_plane()),
        ("torus", fixtures::torus()),
        ("octahedron", fixtures::octahedron()),
        ("suspended projective plane", fixtures::suspended_projective_plane()),
    ]
}

pub fn finite_coefficients() -> Vec<Vec<u64>> {
    vec![vec![2], vec![3], vec![4], vec![6], vec![2, 2], vec![2, 4]]
}

/// Moduli of the coordinates of a cochain group with `slots` copies of a
/// coefficient group with the given moduli.
pub fn slot_moduli(slots: usize, coefficient: &[u64]) -> Vec<u64> {
    (0..slots).flat_map(|_| coefficient.iter().copied()).collect()
}

pub fn size(moduli: &[u64]) -> Option<u64> {
    moduli.iter().try_fold(1u64, |acc, &m| acc.checked_mul(m))
}

/// Calls `f` on every vector with `0 <= v[i] < moduli[i]`.
pub fn for_each_vector(moduli: &[u64], mut f: impl FnMut(&[u32])) {
    let mut v = vec![0u32; moduli.len()];
    loop {
        f(&v);
        let mut i = 0;
        loop {
            if i == v.len() {
                return;
            }
            v[i] += 1;
            if u64::from(v[i]) == moduli[i] {
                v[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
    }
}

/// The alternating-sum coboundary of a degree-`p` cochain, recomputed from
/// the face relation.
pub fn cech_coboundary(site: &SimplicialComplex, coefficient: &[u64], p: usize, c: &[u32]) -> Vector {
    let k = coefficient.len();
    let src = site.simplices(p);
    let tgt = if p + 1 <= site.dim() { site.simplices(p + 1) } else { &[] };
    let mut out = vec![0u32; tgt.len() * k];
    for (t, sigma) in tgt.iter().enumerate() {
        for drop in 0..sigma.len() {
            let face: Vec<usize> = sigma.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &v)| v).collect();
            let s = src.iter().position(|x| *x == face).expect("faces are simplices");
            for g in 0..k {
                let m = coefficient[g];
                let x = u64::from(c[s * k + g]);
                let term = if drop % 2 == 0 { x } else { (m - x % m) % m };
                out[t * k + g] = ((u64::from(out[t * k + g]) + term) % m) as u32;
            }
        }
    }
    out
}

/// `#{z in Z : n z in B} / |B|` for `n = 1..=exponent`, plus the orders of
/// `Z` and `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profile {
    pub cocycles: u64,
    pub boundaries: u64,
    pub torsion_counts: Vec<u64>,
}

impl Profile {
    pub fn order(&self) -> u64 {
        self.cocycles / self.boundaries
    }

    /// Whether a finite abelian group has the same `|G[n]|` for every `n`,
    /// which determines it up to isomorphism.
    pub fn matches(&self, g: &FgAbGroup) -> bool {
        if !g.is_finite() {
            return false;
        }
        let torsion: Vec<u64> = g.torsion().iter().map(|d| d.to_u64().unwrap()).collect();
        let product: u64 = torsion.iter().product();
        if product != self.order() {
            return false;
        }
        self.torsion_counts
            .iter()
            .enumerate()
            .all(|(i, &count)| torsion.iter().map(|d| d.gcd(&(i as u64 + 1))).product::<u64>() == count)
    }
}

/// Brute-force profile of `ker d_cur / im d_prev`, with `d_prev` defined on
/// vectors with moduli `prev` and `d_cur` on vectors with moduli `cur`.
pub fn profile(
    prev: &[u64],
    cur: &[u64],
    d_prev: impl Fn(&[u32]) -> Vector,
    d_cur: impl Fn(&[u32]) -> Vector,
) -> Option<Profile> {
    if size(prev)? > ORACLE_LIMIT || size(cur)? > ORACLE_LIMIT {
        return None;
    }
    let mut boundaries: HashSet<Vector> = HashSet::new();
    for_each_vector(prev, |c| {
        boundaries.insert(d_prev(c));
    });
    let mut cocycles: Vec<Vector> = Vec::new();
    for_each_vector(cur, |z| {
        if d_cur(z).iter().all(|&x| x == 0) {
            cocycles.push(z.to_vec());
        }
    });
    let exponent = cur.iter().fold(1u64, |acc, &m| acc.lcm(&m));
    let torsion_counts = (1..=exponent)
        .map(|n| {
            let hits = cocycles
                .iter()
                .filter(|z| {
                    let nz: Vector = z.iter().zip(cur).map(|(&x, &m)| ((u64::from(x) * n) % m) as u32).collect();
                    boundaries.contains(&nz)
                })
                .count() as u64;
            hits / boundaries.len() as u64
        })
        .collect();
    Some(Profile {
        cocycles: cocycles.len() as u64,
        boundaries: boundaries.len() as u64,
        torsion_counts,
    })
}

/// Brute-force profile of `H^p(site, L)` for finite `L`, or `None` when a
/// cochain group involved exceeds [`ORACLE_LIMIT`].
pub fn cech_profile(site: &SimplicialComplex, coefficient: &[u64], p: usize) -> Option<Profile> {
    let count = |q: usize| if q <= site.dim() { site.count(q) } else { 0 };
    let cur = slot_moduli(count(p), coefficient);
    if p == 0 {
        // a single zero vector stands in for the empty degree below
        return profile(&[], &cur, |_| vec![0; cur.len()], |z| cech_coboundary(site, coefficient, 0, z));
    }
    let prev = slot_moduli(count(p - 1), coefficient);
    profile(
        &prev,
        &cur,
        |c| cech_coboundary(site, coefficient, p - 1, c),
        |z| cech_coboundary(site, coefficient, p, z),
    )
}

/// Whether every cochain group of `site` with coefficients `coefficient`
/// is small enough to enumerate.
pub fn enumerable(site: &SimplicialComplex, coefficient: &[u64]) -> bool {
    (0..=site.dim()).all(|p| size(&slot_moduli(site.count(p), coefficient)).is_some_and(|s| s <= ORACLE_LIMIT))
}

/// Whether `c` is a coboundary, by enumerating every cochain one degree down.
pub fn is_coboundary_brute(site: &SimplicialComplex, coefficient: &[u64], p: usize, c: &[u32]) -> bool {
    if p == 0 {
        return c.iter().all(|&x| x == 0);
    }
    let prev = slot_moduli(site.count(p - 1), coefficient);
    assert!(size(&prev).is_some_and(|s| s <= ORACLE_LIMIT), "too large to enumerate");
    let mut found = false;
    for_each_vector(&prev, |b| {
        if !found && cech_coboundary(site, coefficient, p - 1, b) == c {
            found = true;
        }
    });
    found
}

pub fn group(moduli: &[u64]) -> FgAbGroup {
    FgAbGroup::from_moduli(moduli.iter().map(|&m| m.into()).collect()).unwrap()
}

pub fn to_u32(coords: &[BigInt]) -> Vector {
    coords.iter().map(|x| x.to_u32().unwrap()).collect()
}

pub fn to_big(v: &[u32]) -> Vec<BigInt> {
    v.iter().map(|&x| x.into()).collect()
}

/// A cochain with uniformly random torsion coordinates and free
/// coordinates in `-5..=5`.
pub fn random_cochain(
    complex: &cechtower_core::CochainComplex,
    p: usize,
    rng: &mut impl rand::Rng,
) -> cechtower_core::Cochain {
    let g = complex.group(p);
    let coords = g
        .moduli()
        .iter()
        .map(|m| match m.to_i64().unwrap() {
            0 => rng.gen_range(-5i64..=5).into(),
            m => rng.gen_range(0..m).into(),
        })
        .collect();
    complex.cochain(p, coords).unwrap()
}

/// A random combination of the cohomology generators plus a random
/// coboundary.
pub fn random_cocycle(
    complex: &cechtower_core::CochainComplex,
    p: usize,
    rng: &mut impl rand::Rng,
) -> cechtower_core::Cochain {
    let h = complex.cohomology(p).unwrap();
    let mut c = complex.zero_cochain(p);
    for rep in h.representatives() {
        for _ in 0..rng.gen_range(0..3) {
            c = complex.add(&c, &rep).unwrap();
        }
    }
    if p > 0 {
        let b = complex.coboundary(&random_cochain(complex, p - 1, rng)).unwrap();
        c = complex.add(&c, &b).unwrap();
    }
    c
}

pub fn sequences() -> Vec<(&'static str, cechtower_core::ShortExactSequence)> {
    use cechtower_core::{IntMatrix, ShortExactSequence};
    vec![
        ("Z/2 -> Z/4 -> Z/2", ShortExactSequence::bockstein(2)),
        ("Z/3 -> Z/9 -> Z/3", ShortExactSequence::bockstein(3)),
        ("Z -> Z -> Z/2", ShortExactSequence::integral(2)),
        ("Z/2 -> Z/2 + Z/3 -> Z/3", ShortExactSequence::split(&group(&[2]), &group(&[3]))),
        (
            "Z/2 -> Z/8 -> Z/4",
            ShortExactSequence::new(
                group(&[2]),
                group(&[8]),
                group(&[4]),
                IntMatrix::from_i64_rows(&[&[4]]),
                IntMatrix::from_i64_rows(&[&[1]]),
            )
            .unwrap(),
        ),
    ]
}

/// Rank of a list of vectors over `GF(p)`.
pub fn rank_mod_p(rows: &[Vector], p: u32) -> usize {
    let mut rows: Vec<Vector> = rows.iter().map(|r| r.iter().map(|x| x % p).collect()).collect();
    let width = rows.first().map_or(0, Vec::len);
    let inverse = |a: u32| (1..p).find(|&b| (a as u64 * b as u64) % p as u64 == 1).unwrap();
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = inverse(rows[rank][col]);
        let pivot_row: Vector = rows[rank].iter().map(|&x| ((x as u64 * inv as u64) % p as u64) as u32).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let f = row[col] as u64;
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = ((*x as u64 + (p as u64 - f) * y as u64) % p as u64) as u32;
                }
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
    }
    rank
}

/// Coboundary test over `Z/p` for prime `p`, by comparing ranks of the
/// coboundary image with and without `c`.
pub fn is_coboundary_mod_p(site: &SimplicialComplex, p: u32, degree: usize, c: &[u32]) -> bool {
    if degree == 0 {
        return c.iter().all(|&x| x % p == 0);
    }
    let n = site.count(degree - 1);
    let mut images: Vec<Vector> = (0..n)
        .map(|i| {
            let mut e = vec![0u32; n];
            e[i] = 1;
            cech_coboundary(site, &[u64::from(p)], degree - 1, &e)
        })
        .collect();
    let before = rank_mod_p(&images, p);
    images.push(c.to_vec());
    rank_mod_p(&images, p) == before
}

/// Elements of a finite group of order at most [`ORACLE_LIMIT`].
pub fn elements_of(g: &FgAbGroup) -> Option<Vec<Vec<BigInt>>> {
    let n = g.order()?;
    (n <= BigInt::from(ORACLE_LIMIT)).then(|| g.elements().collect())
}

pub fn kernel_by_enumeration(h: &Homomorphism) -> Option<HashSet<Vec<BigInt>>> {
    let zero = vec![BigInt::from(0); h.target().generator_count()];
    Some(elements_of(h.source())?.into_iter().filter(|x| h.apply_coords(x) == zero).collect())
}

pub fn image_by_enumeration(h: &Homomorphism) -> Option<HashSet<Vec<BigInt>>> {
    Some(elements_of(h.source())?.iter().map(|x| h.apply_coords(x)).collect())
}
