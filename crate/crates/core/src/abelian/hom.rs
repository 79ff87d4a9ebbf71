use num_bigint::BigInt;
use num_traits::Zero;

use super::group::{FgAbGroup, GroupElement};
use super::lattice::{kernel_lattice, relation_columns, solve_modular, Lattice, Subquotient};
use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// A homomorphism between presented groups. The matrix has one row per
/// target generator and one column per source generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homomorphism {
    source: FgAbGroup,
    target: FgAbGroup,
    matrix: IntMatrix,
}

/// Kernel, image and cokernel of a homomorphism, each in invariant-factor
/// form with its structure map.
#[derive(Clone, Debug)]
pub struct HomInvariants {
    pub kernel: FgAbGroup,
    /// kernel -> source
    pub kernel_inclusion: Homomorphism,
    pub image: FgAbGroup,
    /// image -> target
    pub image_inclusion: Homomorphism,
    pub cokernel: FgAbGroup,
    /// target -> cokernel
    pub cokernel_projection: Homomorphism,
}

/// Outcome of [`Homomorphism::is_exact_at`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Exactness {
    Exact,
    /// `f(x)` is not killed by `g`; carries the offending element `f(x)`.
    ImageNotInKernel(Vec<BigInt>),
    /// An element of `ker g` that `f` does not reach.
    KernelNotInImage(Vec<BigInt>),
}

impl Exactness {
    pub fn is_exact(&self) -> bool {
        matches!(self, Exactness::Exact)
    }

    pub fn witness(&self) -> Option<&[BigInt]> {
        match self {
            Exactness::Exact => None,
            Exactness::ImageNotInKernel(w) | Exactness::KernelNotInImage(w) => Some(w),
        }
    }
}

impl Homomorphism {
    /// Builds and validates a homomorphism.
    pub fn new(source: FgAbGroup, target: FgAbGroup, matrix: IntMatrix) -> Result<Self> {
        let h = Self::new_unchecked(source, target, matrix)?;
        h.validate()?;
        Ok(h)
    }

    /// Checks dimensions only; call [`Homomorphism::validate`] before use.
    pub fn new_unchecked(source: FgAbGroup, target: FgAbGroup, mut matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.generator_count() || matrix.cols() != source.generator_count() {
            return Err(Error::DimensionMismatch(format!(
                "matrix is {}x{}, expected {}x{} (target x source generators)",
                matrix.rows(),
                matrix.cols(),
                target.generator_count(),
                source.generator_count()
            )));
        }
        for j in 0..matrix.cols() {
            let mut col = matrix.column(j);
            target.normalize(&mut col);
            for (i, x) in col.into_iter().enumerate() {
                matrix[(i, j)] = x;
            }
        }
        Ok(Homomorphism {
            source,
            target,
            matrix,
        })
    }

    pub fn from_i64(source: &FgAbGroup, target: &FgAbGroup, rows: &[&[i64]]) -> Result<Self> {
        let m = if rows.is_empty() {
            IntMatrix::zeros(0, source.generator_count())
        } else {
            IntMatrix::from_i64_rows(rows)
        };
        Self::new(source.clone(), target.clone(), m)
    }

    pub fn zero(source: &FgAbGroup, target: &FgAbGroup) -> Self {
        Homomorphism {
            source: source.clone(),
            target: target.clone(),
            matrix: IntMatrix::zeros(target.generator_count(), source.generator_count()),
        }
    }

    pub fn identity(group: &FgAbGroup) -> Self {
        Homomorphism {
            source: group.clone(),
            target: group.clone(),
            matrix: IntMatrix::identity(group.generator_count()),
        }
    }

    pub fn source(&self) -> &FgAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// Well-definedness: `d_j * column_j` must vanish in the target for every
    /// source torsion generator of order `d_j`.
    pub fn validate(&self) -> Result<()> {
        for (j, d) in self.source.moduli().iter().enumerate() {
            if d.is_zero() {
                continue;
            }
            let col: Vec<BigInt> = self.matrix.column(j).into_iter().map(|x| x * d).collect();
            if !self.target.is_zero_element(&col) {
                return Err(Error::IllDefined {
                    column: j,
                    detail: format!(
                        "generator of order {d} maps to an element whose {d}-fold multiple is nonzero"
                    ),
                });
            }
        }
        Ok(())
    }

    /// Applies the map to raw coordinates; the result is normalized.
    pub fn apply_coords(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.target.normalized(self.matrix.mul_vec(x))
    }

    pub fn apply(&self, x: &GroupElement) -> Result<GroupElement> {
        if x.group() != &self.source {
            return Err(Error::Incompatible("element is not in the source group".into()));
        }
        GroupElement::new(&self.target, self.matrix.mul_vec(x.coords()))
    }

    /// `other ∘ self`
    pub fn then(&self, other: &Homomorphism) -> Result<Homomorphism> {
        if self.target != other.source {
            return Err(Error::NotComposable(format!(
                "target {:?} differs from source {:?}",
                self.target, other.source
            )));
        }
        Homomorphism::new_unchecked(
            self.source.clone(),
            other.target.clone(),
            other.matrix.mul(&self.matrix),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.matrix
            .columns()
            .all(|c| self.target.is_zero_element(&c))
    }

    /// Generators of the lattice `{x : f(x) = 0}` in source coordinates,
    /// including the source relations.
    pub(crate) fn kernel_lattice(&self) -> Lattice {
        let k = kernel_lattice(&self.matrix, self.target.moduli());
        Lattice::new(k.hcat(&self.source.relation_matrix()))
    }

    /// Image lattice (plus target relations) in target coordinates.
    pub(crate) fn image_lattice(&self) -> Lattice {
        Lattice::new(self.matrix.hcat(&relation_columns(self.target.moduli())))
    }

    pub fn invariants(&self) -> Result<HomInvariants> {
        let src_rel = Lattice::new(self.source.relation_matrix());
        let tgt_rel = Lattice::new(self.target.relation_matrix());

        let ker = Subquotient::new(self.kernel_lattice(), &src_rel)?;
        let kernel_inclusion = Homomorphism::new(
            ker.group().clone(),
            self.source.clone(),
            ker.generator_matrix().clone(),
        )?;

        let image_lattice = self.image_lattice();
        let im = Subquotient::new(image_lattice.clone(), &tgt_rel)?;
        let image_inclusion = Homomorphism::new(
            im.group().clone(),
            self.target.clone(),
            im.generator_matrix().clone(),
        )?;

        let n = self.target.generator_count();
        let coker = Subquotient::new(Lattice::full(n), &image_lattice)?;
        let columns: Vec<Vec<BigInt>> = (0..n)
            .map(|j| {
                let mut e = vec![BigInt::zero(); n];
                e[j] = 1.into();
                coker.coords(&e).expect("full lattice contains every vector")
            })
            .collect();
        let cokernel_projection = Homomorphism::new(
            self.target.clone(),
            coker.group().clone(),
            IntMatrix::from_columns(&columns, coker.group().generator_count()),
        )?;

        Ok(HomInvariants {
            kernel: ker.group().clone(),
            kernel_inclusion,
            image: im.group().clone(),
            image_inclusion,
            cokernel: coker.group().clone(),
            cokernel_projection,
        })
    }

    /// Canonical preimage of `y`, or `None` when `y` is not in the image.
    pub fn solve(&self, y: &[BigInt]) -> Option<Vec<BigInt>> {
        solve_modular(&self.matrix, self.target.moduli(), y).map(|x| self.source.normalized(x))
    }

    pub fn solve_element(&self, y: &GroupElement) -> Result<Option<GroupElement>> {
        if y.group() != &self.target {
            return Err(Error::Incompatible("element is not in the target group".into()));
        }
        Ok(self
            .solve(y.coords())
            .map(|x| GroupElement::new(&self.source, x).expect("dimension matches")))
    }

    /// Whether `im(self) = ker(next)` inside the middle group.
    pub fn is_exact_at(&self, next: &Homomorphism) -> Result<Exactness> {
        if self.target != next.source {
            return Err(Error::NotComposable(format!(
                "target {:?} differs from source {:?}",
                self.target, next.source
            )));
        }
        for j in 0..self.source.generator_count() {
            let fx = self.apply_coords(&self.matrix_column_unit(j));
            if !next.target.is_zero_element(&next.matrix.mul_vec(&fx)) {
                return Ok(Exactness::ImageNotInKernel(fx));
            }
        }
        let kernel = next.kernel_lattice();
        for k in kernel.generators().columns() {
            let k = self.target.normalized(k);
            if self.solve(&k).is_none() {
                return Ok(Exactness::KernelNotInImage(k));
            }
        }
        Ok(Exactness::Exact)
    }

    fn matrix_column_unit(&self, j: usize) -> Vec<BigInt> {
        let mut e = vec![BigInt::zero(); self.source.generator_count()];
        e[j] = 1.into();
        e
    }

    pub fn is_injective(&self) -> Result<bool> {
        Ok(self.invariants()?.kernel.is_trivial())
    }

    pub fn is_surjective(&self) -> Result<bool> {
        Ok(self.invariants()?.cokernel.is_trivial())
    }
}

/// Free-function form of [`Homomorphism::validate`].
pub fn hom_validate(h: &Homomorphism) -> Result<()> {
    h.validate()
}

pub fn hom_invariants(h: &Homomorphism) -> Result<HomInvariants> {
    h.invariants()
}

pub fn solve_in_group(h: &Homomorphism, y: &GroupElement) -> Result<Option<GroupElement>> {
    h.solve_element(y)
}

pub fn is_exact_at(f: &Homomorphism, g: &Homomorphism) -> Result<Exactness> {
    f.is_exact_at(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> FgAbGroup {
        FgAbGroup::integers()
    }

    fn zn(n: u64) -> FgAbGroup {
        FgAbGroup::cyclic(n)
    }

    #[test]
    fn validation() {
        let bad = Homomorphism::new_unchecked(zn(2), zn(4), IntMatrix::from_i64_rows(&[&[1]])).unwrap();
        match bad.validate() {
            Err(Error::IllDefined { column, .. }) => assert_eq!(column, 0),
            other => panic!("expected violation, got {other:?}"),
        }
        assert!(Homomorphism::from_i64(&zn(2), &zn(4), &[&[2]]).is_ok());
        for k in -7..7 {
            assert!(Homomorphism::from_i64(&z(), &zn(6), &[&[k]]).is_ok());
        }
        assert!(matches!(
            Homomorphism::from_i64(&z(), &zn(6), &[&[1, 2]]),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn invariants_of_multiplication() {
        let h = Homomorphism::from_i64(&z(), &z(), &[&[4]]).unwrap();
        let inv = h.invariants().unwrap();
        assert!(inv.kernel.is_trivial());
        assert_eq!(inv.image, z());
        assert_eq!(inv.cokernel, zn(4));
    }

    #[test]
    fn invariants_of_reduction_and_zero() {
        let h = Homomorphism::from_i64(&zn(4), &zn(2), &[&[1]]).unwrap();
        let inv = h.invariants().unwrap();
        assert_eq!(inv.kernel, zn(2));
        assert!(inv.cokernel.is_trivial());
        assert!(inv.kernel_inclusion.then(&h).unwrap().is_zero());

        let zero = Homomorphism::zero(&zn(6), &zn(6));
        let inv = zero.invariants().unwrap();
        assert_eq!(inv.kernel, zn(6));
        assert_eq!(inv.cokernel, zn(6));
        assert!(inv.image.is_trivial());
    }

    #[test]
    fn solving() {
        let two = Homomorphism::from_i64(&zn(4), &zn(4), &[&[2]]).unwrap();
        let one = GroupElement::from_i64(&zn(4), &[1]).unwrap();
        assert!(two.solve_element(&one).unwrap().is_none());
        let three = Homomorphism::from_i64(&zn(4), &zn(4), &[&[3]]).unwrap();
        let x = three.solve_element(&one).unwrap().unwrap();
        assert_eq!(x, GroupElement::from_i64(&zn(4), &[3]).unwrap());

        let z2 = FgAbGroup::free(2);
        let diag = Homomorphism::from_i64(&z2, &z2, &[&[2, 0], &[0, 3]]).unwrap();
        let y = GroupElement::from_i64(&z2, &[4, 6]).unwrap();
        let x = diag.solve_element(&y).unwrap().unwrap();
        assert_eq!(x, GroupElement::from_i64(&z2, &[2, 2]).unwrap());
    }

    #[test]
    fn exactness() {
        let iota = Homomorphism::from_i64(&zn(2), &zn(4), &[&[2]]).unwrap();
        let pi = Homomorphism::from_i64(&zn(4), &zn(2), &[&[1]]).unwrap();
        assert!(iota.is_exact_at(&pi).unwrap().is_exact());

        let id = Homomorphism::identity(&zn(4));
        let e = iota.is_exact_at(&id).unwrap();
        assert_eq!(
            e,
            Exactness::ImageNotInKernel(vec![BigInt::from(2)])
        );

        let times3 = Homomorphism::from_i64(&z(), &z(), &[&[3]]).unwrap();
        let mod3 = Homomorphism::from_i64(&z(), &zn(3), &[&[1]]).unwrap();
        assert!(times3.is_exact_at(&mod3).unwrap().is_exact());
        assert!(times3.is_injective().unwrap());
        assert!(mod3.is_surjective().unwrap());
        assert!(matches!(
            mod3.is_exact_at(&times3),
            Err(Error::NotComposable(_))
        ));
    }
}
