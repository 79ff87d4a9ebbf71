use num_bigint::BigInt;

use super::complex::CochainComplex;
use crate::abelian::{FgAbGroup, Homomorphism, IntMatrix};
use crate::error::{Error, Result};
use crate::liftgerbe::FiniteGroup;

/// Default cap on the total number of cochain generators of a bar complex.
pub const DEFAULT_BAR_BUDGET: u128 = 2048;

/// A left action of a finite group on an abelian group by automorphisms.
#[derive(Clone, Debug)]
pub struct GroupAction {
    group: FiniteGroup,
    module: FgAbGroup,
    maps: Vec<Homomorphism>,
}

impl GroupAction {
    /// `matrices[g]` is the automorphism by which element `g` acts.
    pub fn new(group: FiniteGroup, module: FgAbGroup, matrices: Vec<IntMatrix>) -> Result<Self> {
        if matrices.len() != group.order() {
            return Err(Error::DimensionMismatch(format!(
                "{} action matrices for a group of order {}",
                matrices.len(),
                group.order()
            )));
        }
        let maps = matrices
            .into_iter()
            .map(|m| Homomorphism::new(module.clone(), module.clone(), m))
            .collect::<Result<Vec<_>>>()?;
        for (g, h) in maps.iter().enumerate() {
            let inv = h.invariants()?;
            if !inv.kernel.is_trivial() || !inv.cokernel.is_trivial() {
                return Err(Error::Incompatible(format!("element {g} does not act by an automorphism")));
            }
        }
        if maps[group.identity()] != Homomorphism::identity(&module) {
            return Err(Error::Incompatible("identity does not act trivially".into()));
        }
        for a in 0..group.order() {
            for b in 0..group.order() {
                let composite = maps[b].then(&maps[a])?;
                if composite != maps[group.mul(a, b)] {
                    return Err(Error::Incompatible(format!(
                        "action is not a homomorphism: rho({a}) rho({b}) != rho({a}*{b})"
                    )));
                }
            }
        }
        Ok(GroupAction { group, module, maps })
    }

    pub fn trivial(group: FiniteGroup, module: FgAbGroup) -> Self {
        let maps = vec![Homomorphism::identity(&module); group.order()];
        GroupAction { group, module, maps }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn module(&self) -> &FgAbGroup {
        &self.module
    }

    pub fn map(&self, g: usize) -> &Homomorphism {
        &self.maps[g]
    }
}

/// The unnormalized inhomogeneous bar complex `C^p = Maps(H^p, M)`, built
/// through degree `max_degree + 1` so cohomology is exact through
/// `max_degree`.
///
/// Tuples `(g_1, ..., g_p)` are ordered lexicographically with `g_1` most
/// significant. The differential is
/// `(δf)(g_1..g_{p+1}) = g_1·f(g_2..g_{p+1}) + Σ_{i=1}^{p} (-1)^i f(..g_i g_{i+1}..) + (-1)^{p+1} f(g_1..g_p)`.
pub fn bar_complex(action: &GroupAction, max_degree: usize, budget: u128) -> Result<CochainComplex> {
    let h = action.group();
    let m = h.order();
    let gens = action.module().generator_count();
    let mut needed: u128 = 0;
    for p in 0..=max_degree + 1 {
        let tuples = (m as u128).checked_pow(p as u32).unwrap_or(u128::MAX);
        needed = needed.saturating_add(tuples.saturating_mul(gens as u128));
    }
    if needed > budget {
        return Err(Error::BudgetExceeded {
            what: "bar complex generators".into(),
            needed,
            budget,
        });
    }
    let groups: Vec<FgAbGroup> = (0..=max_degree + 1).map(|p| action.module().power(m.pow(p as u32))).collect();
    let mut differentials = Vec::with_capacity(max_degree + 1);
    for p in 0..=max_degree {
        let src_tuples = m.pow(p as u32);
        let dst_tuples = src_tuples * m;
        let mut mat = IntMatrix::zeros(dst_tuples * gens, src_tuples * gens);
        let mut add_block = |row: usize, col: usize, block: &IntMatrix, sign: i64| {
            for a in 0..gens {
                for b in 0..gens {
                    let v = &block[(a, b)] * BigInt::from(sign);
                    mat[(row * gens + a, col * gens + b)] += v;
                }
            }
        };
        let identity = IntMatrix::identity(gens);
        for t in 0..dst_tuples {
            let g = digits(t, m, p + 1);
            // g_1 acting on f(g_2..g_{p+1})
            add_block(t, encode(&g[1..], m), action.map(g[0]).matrix(), 1);
            for i in 0..p {
                let mut merged = g[..i].to_vec();
                merged.push(h.mul(g[i], g[i + 1]));
                merged.extend_from_slice(&g[i + 2..]);
                let sign = if (i + 1) % 2 == 0 { 1 } else { -1 };
                add_block(t, encode(&merged, m), &identity, sign);
            }
            let sign = if (p + 1) % 2 == 0 { 1 } else { -1 };
            add_block(t, encode(&g[..p], m), &identity, sign);
        }
        differentials.push(Homomorphism::new_unchecked(groups[p].clone(), groups[p + 1].clone(), mat)?);
    }
    let top = groups.len() - 1;
    let stored: Vec<FgAbGroup> = groups[..top].to_vec();
    CochainComplex::new_internal(stored, differentials, true)
}

fn digits(mut t: usize, base: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for i in (0..len).rev() {
        out[i] = t % base;
        t /= base;
    }
    out
}

fn encode(tuple: &[usize], base: usize) -> usize {
    tuple.iter().fold(0, |acc, &x| acc * base + x)
}
