use std::borrow::Cow;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::abelian::{FgAbGroup, Homomorphism, Lattice, Subquotient};
use crate::error::{Error, Result};

/// A cochain in a fixed degree. Coordinates follow the generator order of
/// the cochain group of that degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cochain {
    degree: usize,
    coords: Vec<BigInt>,
}

impl Cochain {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

/// A cohomology group with its fixed projection from cocycles.
#[derive(Debug)]
pub struct Cohomology {
    degree: usize,
    quotient: Subquotient,
    cochain_group: FgAbGroup,
}

impl Cohomology {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn group(&self) -> &FgAbGroup {
        self.quotient.group()
    }

    /// Cocycles mapping to the standard generators of [`Cohomology::group`].
    pub fn representatives(&self) -> Vec<Cochain> {
        (0..self.group().generator_count())
            .map(|i| Cochain {
                degree: self.degree,
                coords: self.cochain_group.normalized(self.quotient.generator(i)),
            })
            .collect()
    }

    /// Class coordinates of a cocycle; `None` if `c` is not a cocycle.
    pub fn project(&self, c: &Cochain) -> Option<Vec<BigInt>> {
        self.quotient.coords(&c.coords)
    }
}

/// A cohomology class with the representative it was computed from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyClass {
    pub degree: usize,
    pub group: FgAbGroup,
    pub coords: Vec<BigInt>,
    pub representative: Cochain,
}

impl CohomologyClass {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

/// Cochain groups `C^0..C^N` with differentials `δ^p: C^p -> C^{p+1}`.
///
/// `δ^N` is stored too; its target is the trivial group for complexes that
/// stop at `N` and a genuine `C^{N+1}` for truncations of longer complexes
/// such as the bar complex. Above `N` every group is trivial, except that a
/// truncated complex refuses degrees it cannot answer for.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    groups: Vec<FgAbGroup>,
    differentials: Vec<Homomorphism>,
    truncated: bool,
    cache: Vec<OnceLock<Arc<Cohomology>>>,
}

impl CochainComplex {
    /// Checks shapes, well-definedness and `δ∘δ = 0`.
    pub fn new(groups: Vec<FgAbGroup>, differentials: Vec<Homomorphism>, truncated: bool) -> Result<Self> {
        if groups.is_empty() || groups.len() != differentials.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} groups need as many differentials, got {}",
                groups.len(),
                differentials.len()
            )));
        }
        for (p, d) in differentials.iter().enumerate() {
            if d.source() != &groups[p] {
                return Err(Error::Incompatible(format!("differential {p} has the wrong source")));
            }
            if p + 1 < groups.len() && d.target() != &groups[p + 1] {
                return Err(Error::Incompatible(format!("differential {p} has the wrong target")));
            }
            d.validate()?;
        }
        for p in 0..differentials.len().saturating_sub(1) {
            if !differentials[p].then(&differentials[p + 1])?.is_zero() {
                return Err(Error::Incompatible(format!(
                    "differentials do not compose to zero at degree {p}"
                )));
            }
        }
        let cache = (0..groups.len()).map(|_| OnceLock::new()).collect();
        Ok(CochainComplex {
            groups,
            differentials,
            truncated,
            cache,
        })
    }

    /// Like [`CochainComplex::new`] for complexes built by this crate, where a
    /// failed `δ∘δ = 0` check is a bug rather than bad input.
    pub(crate) fn new_internal(groups: Vec<FgAbGroup>, differentials: Vec<Homomorphism>, truncated: bool) -> Result<Self> {
        Self::new(groups, differentials, truncated).map_err(|e| Error::Verification(e.to_string()))
    }

    /// Highest degree with a stored cochain group.
    pub fn max_degree(&self) -> usize {
        self.groups.len() - 1
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    fn check_degree(&self, p: usize) -> Result<()> {
        if self.truncated && p > self.max_degree() {
            return Err(Error::DegreeOutOfRange {
                degree: p,
                detail: format!("complex is truncated at degree {}", self.max_degree()),
            });
        }
        Ok(())
    }

    pub fn group(&self, p: usize) -> Cow<'_, FgAbGroup> {
        let n = self.max_degree();
        if p <= n {
            Cow::Borrowed(&self.groups[p])
        } else if p == n + 1 {
            Cow::Borrowed(self.differentials[n].target())
        } else {
            Cow::Owned(FgAbGroup::trivial())
        }
    }

    pub fn differential(&self, p: usize) -> Cow<'_, Homomorphism> {
        if p <= self.max_degree() {
            Cow::Borrowed(&self.differentials[p])
        } else {
            Cow::Owned(Homomorphism::zero(&self.group(p), &self.group(p + 1)))
        }
    }

    pub fn cochain(&self, degree: usize, coords: Vec<BigInt>) -> Result<Cochain> {
        let g = self.group(degree);
        if coords.len() != g.generator_count() {
            return Err(Error::DimensionMismatch(format!(
                "degree-{degree} cochain needs {} coordinates, got {}",
                g.generator_count(),
                coords.len()
            )));
        }
        Ok(Cochain {
            degree,
            coords: g.normalized(coords),
        })
    }

    pub fn zero_cochain(&self, degree: usize) -> Cochain {
        Cochain {
            degree,
            coords: vec![BigInt::zero(); self.group(degree).generator_count()],
        }
    }

    fn check_cochain(&self, c: &Cochain) -> Result<()> {
        let n = self.group(c.degree).generator_count();
        if c.coords.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "cochain has {} coordinates, degree {} has {n} generators",
                c.coords.len(),
                c.degree
            )));
        }
        Ok(())
    }

    pub fn add(&self, a: &Cochain, b: &Cochain) -> Result<Cochain> {
        if a.degree != b.degree {
            return Err(Error::Incompatible("adding cochains of different degrees".into()));
        }
        self.check_cochain(a)?;
        self.check_cochain(b)?;
        let coords = a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect();
        self.cochain(a.degree, coords)
    }

    pub fn coboundary(&self, c: &Cochain) -> Result<Cochain> {
        self.check_degree(c.degree)?;
        self.check_cochain(c)?;
        Ok(Cochain {
            degree: c.degree + 1,
            coords: self.differential(c.degree).apply_coords(&c.coords),
        })
    }

    /// First generator index where `δc` is nonzero, if any.
    pub fn cocycle_violation(&self, c: &Cochain) -> Result<Option<usize>> {
        let d = self.coboundary(c)?;
        let g = self.group(d.degree);
        Ok(d.coords.iter().zip(g.moduli()).position(|(x, m)| {
            if m.is_zero() {
                !x.is_zero()
            } else {
                !(x % m).is_zero()
            }
        }))
    }

    pub fn is_cocycle(&self, c: &Cochain) -> Result<bool> {
        Ok(self.cocycle_violation(c)?.is_none())
    }

    /// Decides `c ∈ im δ^{p-1}` by solving the linear system directly.
    pub fn is_coboundary(&self, c: &Cochain) -> Result<bool> {
        self.check_cochain(c)?;
        if c.degree == 0 {
            return Ok(self.group(0).is_zero_element(&c.coords));
        }
        self.check_degree(c.degree)?;
        Ok(self.differential(c.degree - 1).solve(&c.coords).is_some())
    }

    pub fn cohomology(&self, p: usize) -> Result<Arc<Cohomology>> {
        self.check_degree(p)?;
        if p <= self.max_degree() {
            if let Some(h) = self.cache[p].get() {
                return Ok(h.clone());
            }
            let h = Arc::new(self.compute_cohomology(p)?);
            Ok(self.cache[p].get_or_init(|| h).clone())
        } else {
            Ok(Arc::new(self.compute_cohomology(p)?))
        }
    }

    fn compute_cohomology(&self, p: usize) -> Result<Cohomology> {
        let g = self.group(p).into_owned();
        let relations = g.relation_matrix();
        let cycles = self.differential(p).kernel_lattice();
        let boundaries = if p == 0 {
            Lattice::new(relations)
        } else {
            Lattice::new(self.differential(p - 1).matrix().hcat(&relations))
        };
        let quotient = Subquotient::new(cycles, &boundaries)?;
        Ok(Cohomology {
            degree: p,
            quotient,
            cochain_group: g,
        })
    }

    pub fn class_of(&self, c: &Cochain) -> Result<CohomologyClass> {
        if let Some(k) = self.cocycle_violation(c)? {
            return Err(Error::NotACocycle {
                degree: c.degree,
                location: format!("coordinate {k}"),
            });
        }
        self.class_of_cocycle(c)
    }

    pub(crate) fn class_of_cocycle(&self, c: &Cochain) -> Result<CohomologyClass> {
        let h = self.cohomology(c.degree)?;
        let coords = h
            .project(c)
            .ok_or_else(|| Error::Verification("cocycle outside the cycle lattice".into()))?;
        Ok(CohomologyClass {
            degree: c.degree,
            group: h.group().clone(),
            coords,
            representative: c.clone(),
        })
    }
}
