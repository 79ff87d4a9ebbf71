//! Smith normal form over the integers.
//!
//! For an `m x n` matrix `M` we compute unimodular `U` (`m x m`) and `V`
//! (`n x n`) such that `U * M * V = D` is diagonal with non-negative entries
//! `d_0 | d_1 | ... | d_{r-1}` followed by zeros. The inverses of `U` and `V`
//! are tracked alongside so callers never have to invert a matrix.
//!
//! Pivot rule: the nonzero entry of smallest absolute value in the active
//! submatrix, ties broken by row-major position.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl SmithForm {
    /// The first `rank` diagonal entries, all positive.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }
}

struct Reducer {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    /// row[dst] += f * row[src]
    fn row_op(&mut self, dst: usize, src: usize, f: &BigInt) {
        self.a.add_row_multiple(dst, src, f);
        self.u.add_row_multiple(dst, src, f);
        self.u_inv.add_col_multiple(src, dst, &-f);
    }

    /// col[dst] += f * col[src]
    fn col_op(&mut self, dst: usize, src: usize, f: &BigInt) {
        self.a.add_col_multiple(dst, src, f);
        self.v.add_col_multiple(dst, src, f);
        self.v_inv.add_row_multiple(src, dst, &-f);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some(b) => x.abs() < self.a[b].abs(),
                };
                if better {
                    best = Some((i, j));
                }
            }
        }
        best
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut r = Reducer {
        a: m.clone(),
        u: IntMatrix::identity(rows),
        u_inv: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
        v_inv: IntMatrix::identity(cols),
    };
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = r.pivot(t) else { break };
        r.swap_rows(t, pi);
        r.swap_cols(t, pj);
        loop {
            let mut residue = false;
            for i in t + 1..rows {
                if r.a[(i, t)].is_zero() {
                    continue;
                }
                let q = r.a[(i, t)].div_floor(&r.a[(t, t)]);
                r.row_op(i, t, &-q);
                residue |= !r.a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if r.a[(t, j)].is_zero() {
                    continue;
                }
                let q = r.a[(t, j)].div_floor(&r.a[(t, t)]);
                r.col_op(j, t, &-q);
                residue |= !r.a[(t, j)].is_zero();
            }
            if residue {
                // A remainder smaller than the pivot survived; restart on it.
                let (pi, pj) = r.pivot(t).expect("nonzero remainder present");
                r.swap_rows(t, pi);
                r.swap_cols(t, pj);
                continue;
            }
            // Row and column are clear; enforce divisibility of the rest.
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !r.a[(i, j)].is_multiple_of(&r.a[(t, t)]));
            match bad {
                Some((i, _)) => {
                    r.row_op(t, i, &BigInt::from(1));
                }
                None => break,
            }
        }
        if r.a[(t, t)].is_negative() {
            r.negate_row(t);
        }
        t += 1;
    }
    SmithForm {
        u: r.u,
        u_inv: r.u_inv,
        d: r.a,
        v: r.v,
        v_inv: r.v_inv,
        rank: t,
    }
}
