use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::IntMatrix;
use super::snf::smith_normal_form;
use crate::error::{Error, Result};

/// A finitely generated abelian group presented as a direct sum of cyclic
/// groups `Z/m_0 + Z/m_1 + ...`, where a modulus of 0 stands for `Z`.
///
/// Groups built with [`FgAbGroup::new`] are in invariant-factor form: free
/// generators first, then torsion `d_1 | d_2 | ...`. Every group computed by
/// this crate (kernels, quotients, cohomology) is returned in that form.
/// Direct sums keep the summand coordinates instead, so a cochain over
/// `L_1 + L_2` still reads its components off directly.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FgAbGroup {
    moduli: Vec<BigInt>,
}

impl FgAbGroup {
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Result<Self> {
        for (i, d) in torsion.iter().enumerate() {
            if *d < BigInt::from(2) {
                return Err(Error::InvalidGroup(format!(
                    "torsion coefficient {d} at index {i} must be at least 2"
                )));
            }
            if i > 0 && !d.is_multiple_of(&torsion[i - 1]) {
                return Err(Error::InvalidGroup(format!(
                    "torsion coefficients must form a divisibility chain: {} does not divide {d}",
                    torsion[i - 1]
                )));
            }
        }
        let mut moduli = vec![BigInt::zero(); free_rank];
        moduli.extend(torsion);
        Ok(FgAbGroup { moduli })
    }

    /// Direct sum of cyclic groups in the given order. Moduli of 1 are
    /// dropped; 0 means a free summand.
    pub fn from_moduli(moduli: Vec<BigInt>) -> Result<Self> {
        if let Some(m) = moduli.iter().find(|m| m.is_negative()) {
            return Err(Error::InvalidGroup(format!("negative modulus {m}")));
        }
        Ok(FgAbGroup {
            moduli: moduli.into_iter().filter(|m| !m.is_one()).collect(),
        })
    }

    pub fn trivial() -> Self {
        FgAbGroup { moduli: Vec::new() }
    }

    pub fn integers() -> Self {
        Self::free(1)
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup {
            moduli: vec![BigInt::zero(); rank],
        }
    }

    /// `Z/n`; `cyclic(0)` is `Z` and `cyclic(1)` is trivial.
    pub fn cyclic(n: u64) -> Self {
        Self::from_moduli(vec![BigInt::from(n)]).expect("non-negative modulus")
    }

    pub fn direct_sum(&self, other: &FgAbGroup) -> FgAbGroup {
        let mut moduli = self.moduli.clone();
        moduli.extend(other.moduli.iter().cloned());
        FgAbGroup { moduli }
    }

    /// `n` copies of `self`, summand-major.
    pub fn power(&self, n: usize) -> FgAbGroup {
        let mut moduli = Vec::with_capacity(self.moduli.len() * n);
        for _ in 0..n {
            moduli.extend(self.moduli.iter().cloned());
        }
        FgAbGroup { moduli }
    }

    /// Order of each coordinate, 0 for free coordinates.
    pub fn moduli(&self) -> &[BigInt] {
        &self.moduli
    }

    pub fn generator_count(&self) -> usize {
        self.moduli.len()
    }

    pub fn free_rank(&self) -> usize {
        self.moduli.iter().filter(|m| m.is_zero()).count()
    }

    /// Invariant factors of the torsion part.
    pub fn torsion(&self) -> Vec<BigInt> {
        let torsion: Vec<BigInt> = self
            .moduli
            .iter()
            .filter(|m| !m.is_zero())
            .cloned()
            .collect();
        if self.is_canonical() {
            return torsion;
        }
        let s = smith_normal_form(&IntMatrix::diagonal(&torsion));
        s.invariant_factors()
            .into_iter()
            .filter(|d| !d.is_one())
            .collect()
    }

    pub fn is_canonical(&self) -> bool {
        let free = self.free_rank();
        if self.moduli[..free].iter().any(|m| !m.is_zero()) {
            return false;
        }
        let t = &self.moduli[free..];
        t.windows(2).all(|w| w[1].is_multiple_of(&w[0]))
    }

    /// The invariant-factor form of this group (not the coordinates).
    pub fn canonical(&self) -> FgAbGroup {
        FgAbGroup::new(self.free_rank(), self.torsion()).expect("invariant factors form a chain")
    }

    pub fn is_isomorphic(&self, other: &FgAbGroup) -> bool {
        self.free_rank() == other.free_rank() && self.torsion() == other.torsion()
    }

    pub fn is_trivial(&self) -> bool {
        self.moduli.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank() == 0
    }

    /// Number of elements, `None` for infinite groups.
    pub fn order(&self) -> Option<BigInt> {
        if !self.is_finite() {
            return None;
        }
        Some(self.moduli.iter().product())
    }

    /// Reduces torsion coordinates into `[0, d)`.
    pub fn normalize(&self, coords: &mut [BigInt]) {
        debug_assert_eq!(coords.len(), self.moduli.len());
        for (x, m) in coords.iter_mut().zip(&self.moduli) {
            if !m.is_zero() {
                *x = x.mod_floor(m);
            }
        }
    }

    pub fn normalized(&self, mut coords: Vec<BigInt>) -> Vec<BigInt> {
        self.normalize(&mut coords);
        coords
    }

    pub fn is_zero_element(&self, coords: &[BigInt]) -> bool {
        coords
            .iter()
            .zip(&self.moduli)
            .all(|(x, m)| if m.is_zero() { x.is_zero() } else { x.is_multiple_of(m) })
    }

    /// Relation lattice generators, one column per torsion coordinate.
    pub fn relation_matrix(&self) -> IntMatrix {
        let n = self.moduli.len();
        let cols: Vec<Vec<BigInt>> = self
            .moduli
            .iter()
            .enumerate()
            .filter(|(_, m)| !m.is_zero())
            .map(|(i, m)| {
                let mut c = vec![BigInt::zero(); n];
                c[i] = m.clone();
                c
            })
            .collect();
        IntMatrix::from_columns(&cols, n)
    }

    /// Iterates every element of a finite group in lexicographic coordinate
    /// order. Panics on infinite groups.
    pub fn elements(&self) -> impl Iterator<Item = Vec<BigInt>> + '_ {
        assert!(self.is_finite(), "cannot enumerate an infinite group");
        let sizes: Vec<u64> = self
            .moduli
            .iter()
            .map(|m| m.to_u64().expect("small modulus"))
            .collect();
        let total: u64 = sizes.iter().product();
        (0..total).map(move |mut k| {
            let mut v = vec![BigInt::zero(); sizes.len()];
            for i in (0..sizes.len()).rev() {
                v[i] = BigInt::from(k % sizes[i]);
                k /= sizes[i];
            }
            v
        })
    }
}

impl fmt::Display for FgAbGroup {
    /// Invariant-factor rendering such as `Z^2 + Z/2 + Z/4`, or `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank() {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in self.torsion() {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m: Vec<String> = self.moduli.iter().map(ToString::to_string).collect();
        write!(f, "FgAbGroup[{}]", m.join(","))
    }
}

/// An element of a specific group with normalized coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    group: FgAbGroup,
    coords: Vec<BigInt>,
}

impl GroupElement {
    pub fn new(group: &FgAbGroup, coords: Vec<BigInt>) -> Result<Self> {
        if coords.len() != group.generator_count() {
            return Err(Error::DimensionMismatch(format!(
                "element has {} coordinates, group has {} generators",
                coords.len(),
                group.generator_count()
            )));
        }
        Ok(GroupElement {
            coords: group.normalized(coords),
            group: group.clone(),
        })
    }

    pub fn from_i64(group: &FgAbGroup, coords: &[i64]) -> Result<Self> {
        Self::new(group, coords.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero(group: &FgAbGroup) -> Self {
        GroupElement {
            group: group.clone(),
            coords: vec![BigInt::zero(); group.generator_count()],
        }
    }

    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &GroupElement) -> GroupElement {
        assert_eq!(self.group, other.group, "adding elements of different groups");
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        GroupElement {
            coords: self.group.normalized(coords),
            group: self.group.clone(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> GroupElement {
        let coords = self.coords.iter().map(|a| a * k).collect();
        GroupElement {
            coords: self.group.normalized(coords),
            group: self.group.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn rejects_broken_chain() {
        assert!(FgAbGroup::new(0, big(&[2, 3])).is_err());
        assert!(FgAbGroup::new(0, big(&[1])).is_err());
        assert!(FgAbGroup::new(1, big(&[2, 6, 12])).is_ok());
    }

    #[test]
    fn invariant_factors_of_sums() {
        let g = FgAbGroup::cyclic(2).direct_sum(&FgAbGroup::cyclic(3));
        assert!(!g.is_canonical() || g.generator_count() == 2);
        assert_eq!(g.torsion(), big(&[6]));
        assert_eq!(g.to_string(), "Z/6");
        let h = FgAbGroup::cyclic(4)
            .direct_sum(&FgAbGroup::integers())
            .direct_sum(&FgAbGroup::cyclic(2));
        assert_eq!(h.to_string(), "Z + Z/2 + Z/4");
        assert_eq!(FgAbGroup::trivial().to_string(), "0");
        assert_eq!(FgAbGroup::free(3).to_string(), "Z^3");
    }

    #[test]
    fn element_normalization() {
        let g = FgAbGroup::new(1, big(&[4])).unwrap();
        let e = GroupElement::from_i64(&g, &[-3, -1]).unwrap();
        assert_eq!(e.coords(), &big(&[-3, 3])[..]);
        assert!(GroupElement::from_i64(&g, &[0, 4]).unwrap().is_zero());
    }

    #[test]
    fn enumerates_finite_groups() {
        let g = FgAbGroup::new(0, big(&[2, 4])).unwrap();
        assert_eq!(g.elements().count(), 8);
        assert_eq!(g.order(), Some(BigInt::from(8)));
        assert_eq!(FgAbGroup::integers().order(), None);
    }
}
