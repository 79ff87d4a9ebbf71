use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::Rng;

use super::{CentralExtension, TransitionCocycle};
use crate::cochain::{CechComplex, Cochain, CohomologyClass};
use crate::error::{Error, Result};

/// Default cap on the number of lifts examined by [`brute_force_lift`].
pub const DEFAULT_LIFT_BUDGET: u128 = 1 << 20;

/// The `L`-valued 2-cocycle `c_ijk = s(g_ik)^-1 s(g_ij) s(g_jk)` and its class.
#[derive(Clone, Debug)]
pub struct Obstruction {
    pub complex: CechComplex,
    pub cochain: Cochain,
    pub class: CohomologyClass,
    /// The section used, indexed by elements of `Q`.
    pub section: Vec<usize>,
}

impl Obstruction {
    pub fn is_zero(&self) -> bool {
        self.class.is_zero()
    }

    /// Nonzero values keyed by 2-simplex, as elements of `G`.
    pub fn elements(&self, ext: &CentralExtension) -> BTreeMap<Vec<usize>, usize> {
        self.complex
            .values(&self.cochain)
            .into_iter()
            .map(|(s, v)| (s, ext.band_element(&v).expect("values lie in the band")))
            .collect()
    }
}

pub fn lifting_obstruction(t: &TransitionCocycle, ext: &CentralExtension) -> Result<Obstruction> {
    lifting_obstruction_with_section(t, ext, ext.canonical_section())
}

pub fn lifting_obstruction_with_section(
    t: &TransitionCocycle,
    ext: &CentralExtension,
    section: &[usize],
) -> Result<Obstruction> {
    if t.group() != ext.q() {
        return Err(Error::InvalidTransition("values do not lie in the quotient of the extension".into()));
    }
    ext.check_section(section)?;
    let g = ext.g();
    let site = t.site();
    let complex = CechComplex::new(site, ext.band())?;
    let lift = |i: usize, j: usize| section[t.get(i, j).expect("faces are edges")];
    let mut values = BTreeMap::new();
    for s in site.simplices(2) {
        let (i, j, k) = (s[0], s[1], s[2]);
        let x = g.mul(g.inv(lift(i, k)), g.mul(lift(i, j), lift(j, k)));
        let coords = ext.band_coords(x).ok_or_else(|| {
            Error::Verification(format!("obstruction on simplex {i},{j},{k} is {x}, outside L"))
        })?;
        values.insert(s.clone(), coords.to_vec());
    }
    let cochain = complex.cochain_from_values(2, &values)?;
    if !complex.is_cocycle(&cochain)? {
        return Err(Error::Verification("obstruction cochain is not a cocycle".into()));
    }
    let class = complex.class_of(&cochain)?;
    Ok(Obstruction {
        complex,
        cochain,
        class,
        section: section.to_vec(),
    })
}

/// A uniformly random set-theoretic section of `pi`.
pub fn random_section(ext: &CentralExtension, rng: &mut impl Rng) -> Vec<usize> {
    (0..ext.q().order())
        .map(|y| {
            let fiber = ext.fiber(y);
            fiber[rng.gen_range(0..fiber.len())]
        })
        .collect()
}

/// Number of random sections, out of `trials`, whose obstruction class
/// differs from the canonical one.
pub fn section_independence(
    t: &TransitionCocycle,
    ext: &CentralExtension,
    trials: usize,
    rng: &mut impl Rng,
) -> Result<usize> {
    let base = lifting_obstruction(t, ext)?;
    let mut failures = 0;
    for _ in 0..trials {
        let other = lifting_obstruction_with_section(t, ext, &random_section(ext, rng))?;
        let diff = base.complex.add(&base.cochain, &negate(&base.complex, &other.cochain))?;
        if !base.complex.is_coboundary(&diff)? {
            failures += 1;
        }
    }
    Ok(failures)
}

fn negate(complex: &CechComplex, c: &Cochain) -> Cochain {
    let coords: Vec<BigInt> = c.coords().iter().map(|x| -x).collect();
    complex.cochain(c.degree(), coords).expect("same shape")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftSearch {
    /// A `G`-valued cocycle lifting `t`, in edge order, if one exists.
    pub lift: Option<Vec<usize>>,
    pub states_searched: u128,
}

/// Searches every twist of the canonical lift by an element of `L` on each
/// edge, in mixed-radix order, and returns the first one satisfying the
/// cocycle law in `G`.
pub fn brute_force_lift(t: &TransitionCocycle, ext: &CentralExtension, budget: u128) -> Result<LiftSearch> {
    if t.group() != ext.q() {
        return Err(Error::InvalidTransition("values do not lie in the quotient of the extension".into()));
    }
    let l = ext.l_elements();
    let edges = t.values().len();
    let states = (l.len() as u128).checked_pow(edges as u32).unwrap_or(u128::MAX);
    if states > budget {
        return Err(Error::BudgetExceeded {
            what: "lift search states".into(),
            needed: states,
            budget,
        });
    }
    let g = ext.g();
    let base: Vec<usize> = t.values().iter().map(|&y| ext.canonical_section()[y]).collect();
    let mut digits = vec![0usize; edges];
    let mut lift = base.clone();
    let mut searched = 0u128;
    loop {
        searched += 1;
        if t.violation(g, &lift).is_none() {
            return Ok(LiftSearch {
                lift: Some(lift),
                states_searched: searched,
            });
        }
        let mut e = 0;
        loop {
            if e == edges {
                return Ok(LiftSearch {
                    lift: None,
                    states_searched: searched,
                });
            }
            digits[e] += 1;
            if digits[e] == l.len() {
                digits[e] = 0;
            }
            lift[e] = g.mul(base[e], l[digits[e]]);
            if digits[e] != 0 {
                break;
            }
            e += 1;
        }
    }
}
