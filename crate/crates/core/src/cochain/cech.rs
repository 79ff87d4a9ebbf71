use std::collections::BTreeMap;
use std::ops::Deref;

use num_bigint::BigInt;

use super::complex::{Cochain, CochainComplex, CohomologyClass};
use super::simplicial::SimplicialComplex;
use crate::abelian::{FgAbGroup, Homomorphism, IntMatrix};
use crate::error::{Error, Result};

/// The Čech cochain complex of a nerve with constant coefficients.
///
/// `C^p` is one copy of the coefficient group per `p`-simplex; the
/// coordinate of generator `k` on simplex number `s` is `s * gens + k`.
/// The coboundary is the alternating face sum
/// `(δc)(i_0..i_{p+1}) = Σ_j (-1)^j c(i_0..î_j..i_{p+1})`.
#[derive(Clone, Debug)]
pub struct CechComplex {
    site: SimplicialComplex,
    coefficients: FgAbGroup,
    complex: CochainComplex,
}

impl CechComplex {
    pub fn new(site: &SimplicialComplex, coefficients: &FgAbGroup) -> Result<Self> {
        let n = site.dim();
        let gens = coefficients.generator_count();
        let groups: Vec<FgAbGroup> = (0..=n).map(|p| coefficients.power(site.count(p))).collect();
        let mut differentials = Vec::with_capacity(n + 1);
        for p in 0..=n {
            let target = coefficients.power(site.count(p + 1));
            let mut m = IntMatrix::zeros(target.generator_count(), groups[p].generator_count());
            for (t, tau) in site.simplices(p + 1).iter().enumerate() {
                for j in 0..tau.len() {
                    let face: Vec<usize> = tau.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &v)| v).collect();
                    let f = site.index_of(&face).expect("complex is downward closed");
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    for k in 0..gens {
                        m[(t * gens + k, f * gens + k)] += sign;
                    }
                }
            }
            differentials.push(Homomorphism::new_unchecked(groups[p].clone(), target, m)?);
        }
        let complex = CochainComplex::new_internal(groups, differentials, false)?;
        Ok(CechComplex {
            site: site.clone(),
            coefficients: coefficients.clone(),
            complex,
        })
    }

    pub fn site(&self) -> &SimplicialComplex {
        &self.site
    }

    pub fn coefficients(&self) -> &FgAbGroup {
        &self.coefficients
    }

    pub fn complex(&self) -> &CochainComplex {
        &self.complex
    }

    /// Builds a cochain from per-simplex values; missing simplices are zero.
    pub fn cochain_from_values(&self, degree: usize, values: &BTreeMap<Vec<usize>, Vec<BigInt>>) -> Result<Cochain> {
        let gens = self.coefficients.generator_count();
        let mut coords = vec![BigInt::from(0); self.site.count(degree) * gens];
        for (simplex, v) in values {
            if simplex.len() != degree + 1 {
                return Err(Error::DimensionMismatch(format!(
                    "simplex {} does not have degree {degree}",
                    SimplicialComplex::key(simplex)
                )));
            }
            let s = self.site.index_of(simplex).ok_or_else(|| {
                Error::InvalidComplex(format!("{} is not a simplex of the complex", SimplicialComplex::key(simplex)))
            })?;
            if v.len() != gens {
                return Err(Error::DimensionMismatch(format!(
                    "value on {} has {} coordinates, coefficient group has {gens}",
                    SimplicialComplex::key(simplex),
                    v.len()
                )));
            }
            coords[s * gens..(s + 1) * gens].clone_from_slice(v);
        }
        self.complex.cochain(degree, coords)
    }

    /// Cochain taking the value `value` on one simplex and 0 elsewhere.
    pub fn indicator(&self, simplex: &[usize], value: Vec<BigInt>) -> Result<Cochain> {
        let degree = simplex.len().checked_sub(1).ok_or_else(|| Error::InvalidComplex("empty simplex".into()))?;
        self.cochain_from_values(degree, &BTreeMap::from([(simplex.to_vec(), value)]))
    }

    /// Value of `c` on its `index`-th simplex.
    pub fn value<'a>(&self, c: &'a Cochain, index: usize) -> &'a [BigInt] {
        let gens = self.coefficients.generator_count();
        &c.coords()[index * gens..(index + 1) * gens]
    }

    /// Nonzero values keyed by simplex.
    pub fn values(&self, c: &Cochain) -> BTreeMap<Vec<usize>, Vec<BigInt>> {
        self.site
            .simplices(c.degree())
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), self.value(c, i).to_vec()))
            .filter(|(_, v)| v.iter().any(|x| x != &BigInt::from(0)))
            .collect()
    }

    /// Applies a coefficient homomorphism simplexwise.
    pub fn push_forward(&self, c: &Cochain, h: &Homomorphism, target: &CechComplex) -> Result<Cochain> {
        if h.source() != &self.coefficients || h.target() != &target.coefficients || self.site != target.site {
            return Err(Error::Incompatible("coefficient map does not match the complexes".into()));
        }
        let mut coords = Vec::with_capacity(self.site.count(c.degree()) * h.target().generator_count());
        for i in 0..self.site.count(c.degree()) {
            coords.extend(h.apply_coords(self.value(c, i)));
        }
        target.complex.cochain(c.degree(), coords)
    }

    /// Like [`CochainComplex::class_of`], naming the offending simplex.
    pub fn class_of(&self, c: &Cochain) -> Result<CohomologyClass> {
        if let Some(k) = self.complex.cocycle_violation(c)? {
            let gens = self.coefficients.generator_count().max(1);
            let simplex = &self.site.simplices(c.degree() + 1)[k / gens];
            return Err(Error::NotACocycle {
                degree: c.degree(),
                location: format!("simplex {}", SimplicialComplex::key(simplex)),
            });
        }
        self.complex.class_of_cocycle(c)
    }
}

impl Deref for CechComplex {
    type Target = CochainComplex;

    fn deref(&self) -> &CochainComplex {
        &self.complex
    }
}

pub fn cech_complex(x: &SimplicialComplex, l: &FgAbGroup) -> Result<CechComplex> {
    CechComplex::new(x, l)
}
