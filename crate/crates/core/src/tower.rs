//! Iterated connecting morphisms along a chain of exact band sequences.
//!
//! Starting from a 2-cocycle `c_2` with values in `L_1` and sequences
//! `0 -> L_{k+1} -> L'_{k+1} -> L_k -> 0`, each stage feeds the previous
//! representative through the next connecting morphism, giving classes
//! `[c_2] ∈ H^2(X, L_1)`, `[c_3] ∈ H^3(X, L_2)`, ... A family is treated as
//! trivial from the first stage at which it vanishes: connecting morphisms
//! are homomorphisms on classes, so every later stage must vanish too.

use num_bigint::BigInt;

use crate::abelian::FgAbGroup;
use crate::cochain::{CechComplex, Cochain, SimplicialComplex};
use crate::error::{Error, Result};
use crate::exactseq::{CechSequence, ShortExactSequence};

/// Initial cocycle plus the chain of sequences it is pushed along.
#[derive(Clone, Debug)]
pub struct TowerSpec {
    site: SimplicialComplex,
    c2: Cochain,
    base: FgAbGroup,
    sequences: Vec<ShortExactSequence>,
}

impl TowerSpec {
    /// `base` is the coefficient group `L_1` of `c2`. Sequence `k` must have
    /// quotient `L_k` and kernel `L_{k+1}`.
    pub fn new(site: SimplicialComplex, base: FgAbGroup, c2: Cochain, sequences: Vec<ShortExactSequence>) -> Result<Self> {
        if c2.degree() != 2 {
            return Err(Error::Incompatible(format!("c2 has degree {}, expected 2", c2.degree())));
        }
        let mut band = &base;
        for (k, s) in sequences.iter().enumerate() {
            if s.c() != band {
                return Err(Error::Incompatible(format!(
                    "sequence {} has quotient {:?}, expected the previous band {:?}",
                    k + 1,
                    s.c(),
                    band
                )));
            }
            band = s.a();
        }
        let complex = CechComplex::new(&site, &base)?;
        complex.class_of(&c2)?;
        Ok(TowerSpec {
            site,
            c2,
            base,
            sequences,
        })
    }

    pub fn site(&self) -> &SimplicialComplex {
        &self.site
    }

    pub fn c2(&self) -> &Cochain {
        &self.c2
    }

    pub fn base(&self) -> &FgAbGroup {
        &self.base
    }

    pub fn sequences(&self) -> &[ShortExactSequence] {
        &self.sequences
    }

    /// `L_1, L_2, ..., L_{n+1}`
    pub fn bands(&self) -> Vec<FgAbGroup> {
        std::iter::once(self.base.clone())
            .chain(self.sequences.iter().map(|s| s.a().clone()))
            .collect()
    }

    /// Same chain, different initial representative.
    pub fn with_c2(&self, c2: Cochain) -> Result<Self> {
        Self::new(self.site.clone(), self.base.clone(), c2, self.sequences.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerStage {
    pub degree: usize,
    pub band: FgAbGroup,
    /// Presentation of `H^degree(X, band)`.
    pub group: FgAbGroup,
    pub coords: Vec<BigInt>,
    pub representative: Cochain,
}

impl TowerStage {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|x| x == &BigInt::from(0))
    }
}

#[derive(Clone, Debug)]
pub struct TowerClasses {
    pub site: SimplicialComplex,
    pub stages: Vec<TowerStage>,
}

impl TowerClasses {
    pub fn bands(&self) -> Vec<FgAbGroup> {
        self.stages.iter().map(|s| s.band.clone()).collect()
    }

    /// Degree of the first stage from which every class vanishes.
    pub fn trivial_from(&self) -> Option<usize> {
        let last_nonzero = self.stages.iter().rposition(|s| !s.is_zero());
        match last_nonzero {
            None => self.stages.first().map(|s| s.degree),
            Some(i) => self.stages.get(i + 1).map(|s| s.degree),
        }
    }
}

pub fn tower_classes(spec: &TowerSpec) -> Result<TowerClasses> {
    let base = CechComplex::new(&spec.site, &spec.base)?;
    let first = base.class_of(&spec.c2)?;
    let mut stages = vec![TowerStage {
        degree: 2,
        band: spec.base.clone(),
        group: first.group,
        coords: first.coords,
        representative: first.representative,
    }];
    for s in &spec.sequences {
        let seq = CechSequence::new(&spec.site, s)?;
        let prev = &stages.last().expect("nonempty").representative;
        let next = seq.connecting(prev)?;
        let class = seq.over_a().class_of(&next)?;
        stages.push(TowerStage {
            degree: class.degree,
            band: s.a().clone(),
            group: class.group,
            coords: class.coords,
            representative: next,
        });
    }
    Ok(TowerClasses {
        site: spec.site.clone(),
        stages,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct TowerReport {
    pub checks: Vec<Check>,
}

impl TowerReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Recomputes the class family and re-checks, on fresh complexes, that
/// every representative is a cocycle, that zero coordinates coincide with
/// coboundary membership decided by solving, and that vanishing propagates.
pub fn verify_tower(spec: &TowerSpec) -> Result<TowerReport> {
    let classes = tower_classes(spec)?;
    let mut checks = Vec::new();
    for stage in &classes.stages {
        let fresh = CechComplex::new(&spec.site, &stage.band)?;
        let cocycle = fresh.is_cocycle(&stage.representative)?;
        checks.push(Check {
            name: format!("stage {} cocycle", stage.degree),
            passed: cocycle,
            detail: format!("coboundary of c_{} vanishes", stage.degree),
        });
        let boundary = fresh.is_coboundary(&stage.representative)?;
        checks.push(Check {
            name: format!("stage {} class", stage.degree),
            passed: boundary == stage.is_zero(),
            detail: format!(
                "coordinates {} zero, coboundary membership {}",
                if stage.is_zero() { "are" } else { "are not" },
                boundary
            ),
        });
    }
    let first_zero = classes.stages.iter().position(TowerStage::is_zero);
    let propagation = match first_zero {
        None => true,
        Some(i) => classes.stages[i..].iter().all(TowerStage::is_zero),
    };
    checks.push(Check {
        name: "vanishing propagation".into(),
        passed: propagation,
        detail: match first_zero {
            None => "no stage vanishes".into(),
            Some(i) => format!("first zero stage has degree {}", classes.stages[i].degree),
        },
    });
    Ok(TowerReport { checks })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TowerComparison {
    Equal,
    /// Degree of the first stage whose class coordinates differ.
    DiffersAt(usize),
}

pub fn compare_towers(t1: &TowerClasses, t2: &TowerClasses) -> Result<TowerComparison> {
    if t1.site != t2.site {
        return Err(Error::Incompatible("towers live on different complexes".into()));
    }
    if t1.bands() != t2.bands() {
        return Err(Error::Incompatible("towers use different band chains".into()));
    }
    for (a, b) in t1.stages.iter().zip(&t2.stages) {
        if a.coords != b.coords {
            return Ok(TowerComparison::DiffersAt(a.degree));
        }
    }
    Ok(TowerComparison::Equal)
}
