use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};

/// Default cap on `order^3`, the number of associativity checks.
pub const DEFAULT_TABLE_BUDGET: u128 = 1 << 24;

/// A finite group given by its Cayley table on indices `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    pub fn new(table: Vec<Vec<usize>>, identity: usize) -> Result<Self> {
        Self::with_budget(table, identity, DEFAULT_TABLE_BUDGET)
    }

    /// Validates the group axioms exhaustively, refusing tables whose
    /// associativity check would exceed `budget` triples.
    pub fn with_budget(table: Vec<Vec<usize>>, identity: usize, budget: u128) -> Result<Self> {
        let m = table.len();
        if m == 0 {
            return Err(Error::InvalidFiniteGroup("empty table".into()));
        }
        let checks = (m as u128).pow(3);
        if checks > budget {
            return Err(Error::BudgetExceeded {
                what: "associativity checks".into(),
                needed: checks,
                budget,
            });
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != m {
                return Err(Error::InvalidFiniteGroup(format!("row {i} has length {}, expected {m}", row.len())));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= m) {
                return Err(Error::InvalidFiniteGroup(format!("row {i} contains {x}, outside 0..{m}")));
            }
        }
        if identity >= m {
            return Err(Error::InvalidFiniteGroup(format!("identity {identity} outside 0..{m}")));
        }
        for a in 0..m {
            if table[identity][a] != a || table[a][identity] != a {
                return Err(Error::InvalidFiniteGroup(format!("identity law fails at element {a}")));
            }
        }
        let mut inverse = vec![0; m];
        for a in 0..m {
            match (0..m).find(|&b| table[a][b] == identity && table[b][a] == identity) {
                Some(b) => inverse[a] = b,
                None => return Err(Error::InvalidFiniteGroup(format!("element {a} has no inverse"))),
            }
        }
        for a in 0..m {
            for b in 0..m {
                let ab = table[a][b];
                for c in 0..m {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidFiniteGroup(format!(
                            "associativity fails on ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            table,
            identity,
            inverse,
        })
    }

    /// Builds the table of `mul` on `0..order`.
    pub fn from_fn(order: usize, identity: usize, mul: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let table = (0..order).map(|a| (0..order).map(|b| mul(a, b)).collect()).collect();
        Self::new(table, identity)
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `Z/n` with element `k` at index `k`.
    pub fn cyclic(n: usize) -> Self {
        Self::from_fn(n, 0, |a, b| (a + b) % n).expect("cyclic group")
    }

    /// Dihedral group of order `2n`; index `i + n*j` is `r^i s^j`.
    pub fn dihedral(n: usize) -> Self {
        Self::from_fn(2 * n, 0, move |x, y| {
            let (i, j) = (x % n, x / n);
            let (k, l) = (y % n, y / n);
            let rot = if j == 0 { (i + k) % n } else { (i + n - k) % n };
            rot + n * ((j + l) % 2)
        })
        .expect("dihedral group")
    }

    /// Dicyclic group of order `4n`; index `i + 2n*j` is `a^i x^j` with
    /// `a^{2n} = 1`, `x^2 = a^n`, `x a x^{-1} = a^{-1}`.
    pub fn dicyclic(n: usize) -> Self {
        let m = 2 * n;
        Self::from_fn(2 * m, 0, move |x, y| {
            let (i, j) = (x % m, x / m);
            let (k, l) = (y % m, y / m);
            let mut e = if j == 0 { (i + k) % m } else { (i + m - k) % m };
            if j == 1 && l == 1 {
                e = (e + n) % m;
            }
            e + m * ((j + l) % 2)
        })
        .expect("dicyclic group")
    }

    /// `A x B` with index `a * |B| + b`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let nb = b.order();
        Self::from_fn(a.order() * nb, a.identity * nb + b.identity, |x, y| {
            a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb)
        })
        .expect("direct product")
    }

    /// The permutation group generated by `generators`, elements sorted
    /// lexicographically as images lists. Composition is `(p*q)(i) = p(q(i))`.
    pub fn from_permutations(generators: &[Vec<usize>]) -> Result<Self> {
        let n = generators.first().map_or(0, Vec::len);
        for g in generators {
            let mut s = g.clone();
            s.sort_unstable();
            if s != (0..n).collect::<Vec<_>>() {
                return Err(Error::InvalidFiniteGroup(format!("{g:?} is not a permutation of 0..{n}")));
            }
        }
        let id: Vec<usize> = (0..n).collect();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(p) = queue.pop_front() {
            for g in generators {
                let q: Vec<usize> = (0..n).map(|i| p[g[i]]).collect();
                if seen.insert(q.clone()) {
                    queue.push_back(q);
                }
            }
        }
        let elems: Vec<Vec<usize>> = seen.into_iter().collect();
        let pos: HashMap<&Vec<usize>, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let table = elems
            .iter()
            .map(|p| {
                elems
                    .iter()
                    .map(|q| pos[&(0..n).map(|i| p[q[i]]).collect::<Vec<_>>()])
                    .collect()
            })
            .collect();
        Self::new(table, 0)
    }

    pub fn symmetric3() -> Self {
        Self::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]]).expect("S3")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order())
            .filter(|&a| (0..self.order()).all(|b| self.mul(a, b) == self.mul(b, a)))
            .collect()
    }
}
