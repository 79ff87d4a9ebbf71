//! Extensions, transitions and an independent lift search for the
//! lifting-obstruction tests.

use cechtower_core::{CechComplex, CentralExtension, FgAbGroup, FiniteGroup, SimplicialComplex, TransitionCocycle};
use rand::Rng;

use super::{random_cocycle, to_u32};

pub fn z4_over_z2() -> CentralExtension {
    CentralExtension::new(FiniteGroup::cyclic(4), vec![0, 2], vec![0, 1, 0, 1], FiniteGroup::cyclic(2)).unwrap()
}

pub fn klein() -> FiniteGroup {
    FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2))
}

/// `D4 -> Z/2 x Z/2`, sending the rotation to `(1, 0)` and the reflection to
/// `(0, 1)`.
pub fn d4_over_klein() -> CentralExtension {
    let pi = (0..8).map(|x| (x % 4 % 2) * 2 + x / 4).collect();
    CentralExtension::new(FiniteGroup::dihedral(4), vec![0, 2], pi, klein()).unwrap()
}

/// `Dic3 -> S3` with kernel generated by `a^3`.
pub fn dic3_over_s3() -> CentralExtension {
    let pi = (0..12).map(|x| (x % 6) % 3 + 3 * (x / 6)).collect();
    CentralExtension::new(FiniteGroup::dicyclic(3), vec![0, 3], pi, FiniteGroup::dihedral(3)).unwrap()
}

/// Backtracking search for a `G`-valued cocycle over `t`, choosing edge values
/// by scanning `G` and pruning on every completed triangle.
pub fn lift_exists(t: &TransitionCocycle, ext: &CentralExtension) -> Option<Vec<usize>> {
    let site = t.site();
    let g = ext.g();
    let edges = site.simplices(1).to_vec();
    let position = |i: usize, j: usize| edges.iter().position(|e| *e == [i, j]).unwrap();
    // triangles to check once edge `e` is assigned, with edges `(ij, jk, ik)`
    let mut checks: Vec<Vec<[usize; 3]>> = vec![Vec::new(); edges.len()];
    for s in site.simplices(2) {
        let tri = [position(s[0], s[1]), position(s[1], s[2]), position(s[0], s[2])];
        checks[*tri.iter().max().unwrap()].push(tri);
    }
    let candidates: Vec<Vec<usize>> = edges
        .iter()
        .map(|e| (0..g.order()).filter(|&x| ext.pi()[x] == t.get(e[0], e[1]).unwrap()).collect())
        .collect();
    fn go(
        e: usize,
        chosen: &mut Vec<usize>,
        candidates: &[Vec<usize>],
        checks: &[Vec<[usize; 3]>],
        g: &FiniteGroup,
    ) -> bool {
        if e == candidates.len() {
            return true;
        }
        for &x in &candidates[e] {
            chosen.push(x);
            let ok = checks[e].iter().all(|&[ij, jk, ik]| g.mul(chosen[ij], chosen[jk]) == chosen[ik]);
            if ok && go(e + 1, chosen, candidates, checks, g) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut chosen = Vec::new();
    go(0, &mut chosen, &candidates, &checks, g).then_some(chosen)
}

pub fn z2_cocycle(site: &SimplicialComplex, rng: &mut impl Rng) -> Vec<usize> {
    let c = CechComplex::new(site, &FgAbGroup::cyclic(2)).unwrap();
    to_u32(random_cocycle(&c, 1, rng).coords()).into_iter().map(|x| x as usize).collect()
}

/// A random transition for each extension: images of `Z/2` cocycles,
/// conjugated vertexwise when the quotient is not abelian.
pub fn random_transition(which: usize, site: &SimplicialComplex, rng: &mut impl Rng) -> (CentralExtension, TransitionCocycle) {
    let z = z2_cocycle(site, rng);
    let edges = site.simplices(1);
    let (ext, values): (CentralExtension, Vec<usize>) = match which {
        0 => (z4_over_z2(), z),
        1 => {
            let w = z2_cocycle(site, rng);
            (d4_over_klein(), z.iter().zip(&w).map(|(&a, &b)| a * 2 + b).collect())
        }
        _ => {
            let ext = dic3_over_s3();
            let q = ext.q().clone();
            let reflection = 3 + rng.gen_range(0..3);
            let h: Vec<usize> = (0..site.vertex_count()).map(|_| rng.gen_range(0..q.order())).collect();
            let values = edges
                .iter()
                .zip(&z)
                .map(|(e, &bit)| {
                    let rho = if bit == 1 { reflection } else { q.identity() };
                    q.mul(q.mul(h[e[0]], rho), q.inv(h[e[1]]))
                })
                .collect();
            (ext, values)
        }
    };
    let t = TransitionCocycle::from_values(site, ext.q(), values).unwrap();
    (ext, t)
}

/// Checks the returned lift independently: it maps onto `t` and satisfies
/// the cocycle law in `G`.
pub fn check_lift(t: &TransitionCocycle, ext: &CentralExtension, lift: &[usize]) {
    let site = t.site();
    let edges = site.simplices(1);
    let value = |i: usize, j: usize| lift[edges.iter().position(|e| *e == [i, j]).unwrap()];
    for (e, &x) in edges.iter().zip(lift) {
        assert_eq!(ext.pi()[x], t.get(e[0], e[1]).unwrap());
    }
    for s in site.simplices(2) {
        assert_eq!(ext.g().mul(value(s[0], s[1]), value(s[1], s[2])), value(s[0], s[2]));
    }
}
