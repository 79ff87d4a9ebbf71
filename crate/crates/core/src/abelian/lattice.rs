//! Sublattices of `Z^n` and their quotients.
//!
//! A subgroup of a presented group `Z^n / R` is handled as the lattice it
//! spans together with `R`. Kernels, images, cokernels, cohomology and the
//! spectral-sequence terms all reduce to [`Subquotient`]: the quotient of one
//! lattice by a sublattice, put in invariant-factor form with explicit
//! generators and a coordinate map.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::group::FgAbGroup;
use super::matrix::IntMatrix;
use super::snf::{smith_normal_form, SmithForm};
use crate::error::{Error, Result};

/// The lattice spanned by the columns of a generator matrix.
#[derive(Clone, Debug)]
pub struct Lattice {
    generators: IntMatrix,
    snf: OnceLock<SmithForm>,
}

impl Lattice {
    pub fn new(generators: IntMatrix) -> Self {
        Lattice {
            generators,
            snf: OnceLock::new(),
        }
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(IntMatrix::zeros(dim, 0))
    }

    pub fn full(dim: usize) -> Self {
        Self::new(IntMatrix::identity(dim))
    }

    pub fn from_vectors(vectors: &[Vec<BigInt>], dim: usize) -> Self {
        Self::new(IntMatrix::from_columns(vectors, dim))
    }

    pub fn dim(&self) -> usize {
        self.generators.rows()
    }

    pub fn generators(&self) -> &IntMatrix {
        &self.generators
    }

    fn smith(&self) -> &SmithForm {
        self.snf.get_or_init(|| smith_normal_form(&self.generators))
    }

    pub fn rank(&self) -> usize {
        self.smith().rank
    }

    /// Coordinates of `w` in the basis `u_inv[:, i] * d_i` (i < rank), or
    /// `None` when `w` is outside the lattice.
    fn basis_coords(&self, w: &[BigInt]) -> Option<Vec<BigInt>> {
        let s = self.smith();
        let y = s.u.mul_vec(w);
        let mut c = Vec::with_capacity(s.rank);
        for (i, yi) in y.into_iter().enumerate() {
            if i < s.rank {
                let (q, r) = yi.div_rem(&s.d[(i, i)]);
                if !r.is_zero() {
                    return None;
                }
                c.push(q);
            } else if !yi.is_zero() {
                return None;
            }
        }
        Some(c)
    }

    fn basis(&self) -> IntMatrix {
        let s = self.smith();
        let n = self.dim();
        let mut b = IntMatrix::zeros(n, s.rank);
        for j in 0..s.rank {
            for i in 0..n {
                b[(i, j)] = &s.u_inv[(i, j)] * &s.d[(j, j)];
            }
        }
        b
    }

    pub fn contains(&self, w: &[BigInt]) -> bool {
        self.basis_coords(w).is_some()
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.generators.columns().all(|c| self.contains(&c))
    }

    pub fn same_as(&self, other: &Lattice) -> bool {
        self.contains_lattice(other) && other.contains_lattice(self)
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        Lattice::new(self.generators.hcat(&other.generators))
    }

    /// Image of the lattice under `map` (a `k x n` matrix).
    pub fn image(&self, map: &IntMatrix) -> Lattice {
        Lattice::new(map.mul(&self.generators))
    }
}

/// One column `m_i e_i` per nonzero modulus.
pub fn relation_columns(moduli: &[BigInt]) -> IntMatrix {
    let n = moduli.len();
    let cols: Vec<Vec<BigInt>> = moduli
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

/// Generators of `{ x in Z^n : A x in diag(moduli) Z^m }`.
pub fn kernel_lattice(a: &IntMatrix, target_moduli: &[BigInt]) -> IntMatrix {
    assert_eq!(a.rows(), target_moduli.len(), "modulus count mismatch");
    let n = a.cols();
    if a.rows() == 0 || a.is_zero() {
        return IntMatrix::identity(n);
    }
    let rel = relation_columns(target_moduli);
    let m = a.hcat(&rel);
    let s = smith_normal_form(&m);
    let null: Vec<usize> = (s.rank..m.cols()).collect();
    let rows: Vec<usize> = (0..n).collect();
    s.v.select(&rows, &null)
}

/// Solves `A x = y (mod diag(moduli))` over the integers. The returned
/// solution is the SNF back-substitution with zero homogeneous part.
pub fn solve_modular(a: &IntMatrix, target_moduli: &[BigInt], y: &[BigInt]) -> Option<Vec<BigInt>> {
    let n = a.cols();
    let m = a.hcat(&relation_columns(target_moduli));
    let s = smith_normal_form(&m);
    let b = s.u.mul_vec(y);
    let mut w = vec![BigInt::zero(); m.cols()];
    for (i, bi) in b.into_iter().enumerate() {
        if i < s.rank {
            let (q, r) = bi.div_rem(&s.d[(i, i)]);
            if !r.is_zero() {
                return None;
            }
            w[i] = q;
        } else if !bi.is_zero() {
            return None;
        }
    }
    let z = s.v.mul_vec(&w);
    Some(z[..n].to_vec())
}

/// The quotient `numerator / denominator` of two lattices in `Z^n`.
#[derive(Clone, Debug)]
pub struct Subquotient {
    group: FgAbGroup,
    numerator: Lattice,
    /// Representatives in `Z^n` of the generators of `group`, one per column.
    generators: IntMatrix,
    /// Rows of the second change of basis, one per kept generator.
    projection: IntMatrix,
}

impl Subquotient {
    pub fn new(numerator: Lattice, denominator: &Lattice) -> Result<Self> {
        if numerator.dim() != denominator.dim() {
            return Err(Error::DimensionMismatch(format!(
                "subquotient of lattices in dimensions {} and {}",
                numerator.dim(),
                denominator.dim()
            )));
        }
        let rank = numerator.rank();
        let mut denom_coords = Vec::with_capacity(denominator.generators().cols());
        for c in denominator.generators().columns() {
            let coords = numerator.basis_coords(&c).ok_or_else(|| {
                Error::Verification("denominator lattice is not contained in numerator".into())
            })?;
            denom_coords.push(coords);
        }
        let rel = IntMatrix::from_columns(&denom_coords, rank);
        let s = smith_normal_form(&rel);
        let mut free = Vec::new();
        let mut torsion = Vec::new();
        for i in 0..rank {
            if i >= s.rank {
                free.push(i);
            } else if !s.d[(i, i)].is_one() {
                torsion.push(i);
            }
        }
        let kept: Vec<usize> = free.iter().chain(&torsion).copied().collect();
        let group = FgAbGroup::new(
            free.len(),
            torsion.iter().map(|&i| s.d[(i, i)].clone()).collect(),
        )?;
        let basis = numerator.basis();
        let all_rows: Vec<usize> = (0..rank).collect();
        let generators = basis.mul(&s.u_inv.select(&all_rows, &kept));
        let projection = s.u.select(&kept, &all_rows);
        Ok(Subquotient {
            group,
            numerator,
            generators,
            projection,
        })
    }

    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    pub fn ambient_dim(&self) -> usize {
        self.numerator.dim()
    }

    pub fn numerator(&self) -> &Lattice {
        &self.numerator
    }

    pub fn generator(&self, i: usize) -> Vec<BigInt> {
        self.generators.column(i)
    }

    pub fn generator_matrix(&self) -> &IntMatrix {
        &self.generators
    }

    /// Normalized quotient coordinates of `w`, or `None` if `w` lies outside
    /// the numerator lattice.
    pub fn coords(&self, w: &[BigInt]) -> Option<Vec<BigInt>> {
        let c = self.numerator.basis_coords(w)?;
        Some(self.group.normalized(self.projection.mul_vec(&c)))
    }
}
