use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};

/// A finite abstract simplicial complex on vertices `0..vertex_count`.
///
/// Simplices are strictly increasing vertex lists, grouped by dimension and
/// sorted lexicographically within each dimension. That order fixes the
/// generator order of every cochain group built on the complex.
#[derive(Clone)]
pub struct SimplicialComplex {
    vertex_count: usize,
    simplices: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

impl SimplicialComplex {
    /// Downward closure of the given facets. Every vertex in range is a
    /// 0-simplex whether or not a facet mentions it.
    pub fn from_facets(vertex_count: usize, facets: &[Vec<usize>]) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::InvalidComplex("vertex_count must be positive".into()));
        }
        let mut by_dim: Vec<BTreeSet<Vec<usize>>> = vec![(0..vertex_count).map(|v| vec![v]).collect()];
        for (fi, facet) in facets.iter().enumerate() {
            if facet.is_empty() {
                return Err(Error::InvalidComplex(format!("facet {fi} is empty")));
            }
            if let Some(&v) = facet.iter().find(|&&v| v >= vertex_count) {
                return Err(Error::InvalidComplex(format!(
                    "facet {fi} uses vertex {v}, outside 0..{vertex_count}"
                )));
            }
            let mut sorted = facet.clone();
            sorted.sort_unstable();
            if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::InvalidComplex(format!(
                    "facet {fi} repeats vertex {}",
                    w[0]
                )));
            }
            if sorted.len() > 24 {
                return Err(Error::InvalidComplex(format!(
                    "facet {fi} has {} vertices; at most 24 supported",
                    sorted.len()
                )));
            }
            let k = sorted.len();
            for mask in 1u32..(1u32 << k) {
                let face: Vec<usize> = (0..k).filter(|b| mask >> b & 1 == 1).map(|b| sorted[b]).collect();
                let d = face.len() - 1;
                if by_dim.len() <= d {
                    by_dim.resize_with(d + 1, BTreeSet::new);
                }
                by_dim[d].insert(face);
            }
        }
        Ok(Self::from_sets(vertex_count, by_dim))
    }

    fn from_sets(vertex_count: usize, by_dim: Vec<BTreeSet<Vec<usize>>>) -> Self {
        let simplices: Vec<Vec<Vec<usize>>> = by_dim.into_iter().map(|s| s.into_iter().collect()).collect();
        let index = simplices
            .iter()
            .map(|s| s.iter().enumerate().map(|(i, x)| (x.clone(), i)).collect())
            .collect();
        SimplicialComplex {
            vertex_count,
            simplices,
            index,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn dim(&self) -> usize {
        self.simplices.len() - 1
    }

    /// Number of `p`-simplices (0 above the dimension).
    pub fn count(&self, p: usize) -> usize {
        self.simplices.get(p).map_or(0, Vec::len)
    }

    pub fn simplices(&self, p: usize) -> &[Vec<usize>] {
        self.simplices.get(p).map_or(&[], Vec::as_slice)
    }

    pub fn index_of(&self, simplex: &[usize]) -> Option<usize> {
        let p = simplex.len().checked_sub(1)?;
        self.index.get(p)?.get(simplex).copied()
    }

    /// Maximal simplices, lexicographic within each dimension.
    pub fn facets(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for p in 0..=self.dim() {
            for s in self.simplices(p) {
                let maximal = self.simplices(p + 1).iter().all(|t| !is_face(s, t));
                if maximal {
                    out.push(s.clone());
                }
            }
        }
        out
    }

    pub fn euler_characteristic(&self) -> i64 {
        (0..=self.dim())
            .map(|p| {
                let c = self.count(p) as i64;
                if p % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .sum()
    }

    /// Suspension with apexes `vertex_count` and `vertex_count + 1`.
    pub fn suspension(&self) -> SimplicialComplex {
        let a = self.vertex_count;
        let b = a + 1;
        let mut by_dim: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); self.dim() + 2];
        for p in 0..=self.dim() {
            for s in self.simplices(p) {
                by_dim[p].insert(s.clone());
                for apex in [a, b] {
                    let mut t = s.clone();
                    t.push(apex);
                    by_dim[p + 1].insert(t);
                }
            }
        }
        by_dim[0].insert(vec![a]);
        by_dim[0].insert(vec![b]);
        Self::from_sets(self.vertex_count + 2, by_dim)
    }

    /// Comma-joined key such as `"0,2,5"`.
    pub fn key(simplex: &[usize]) -> String {
        simplex.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
    }

    pub fn parse_key(key: &str) -> Option<Vec<usize>> {
        key.split(',').map(|t| t.trim().parse().ok()).collect()
    }
}

fn is_face(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|v| big.binary_search(v).is_ok())
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count && self.simplices == other.simplices
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let counts: Vec<usize> = (0..=self.dim()).map(|p| self.count(p)).collect();
        write!(f, "SimplicialComplex(n={}, f={:?})", self.vertex_count, counts)
    }
}

pub fn build_complex_from_facets(vertex_count: usize, facets: &[Vec<usize>]) -> Result<SimplicialComplex> {
    SimplicialComplex::from_facets(vertex_count, facets)
}

pub fn suspension(x: &SimplicialComplex) -> SimplicialComplex {
    x.suspension()
}
