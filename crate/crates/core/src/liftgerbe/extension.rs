use std::collections::{BTreeMap, HashMap, VecDeque};

use num_bigint::BigInt;

use super::FiniteGroup;
use crate::abelian::{FgAbGroup, Lattice, Subquotient};
use crate::cochain::SimplicialComplex;
use crate::error::{Error, Result};
use crate::exactseq::ShortExactSequence;

/// A central extension `1 -> L -> G -> Q -> 1` of finite groups.
///
/// `L` is given as a list of element indices of `G`. Its structure as an
/// abelian group is computed on construction, together with the
/// correspondence between elements of `L` and normalized coordinates.
#[derive(Clone, Debug)]
pub struct CentralExtension {
    g: FiniteGroup,
    q: FiniteGroup,
    l_elements: Vec<usize>,
    pi: Vec<usize>,
    band: FgAbGroup,
    to_band: HashMap<usize, Vec<BigInt>>,
    from_band: HashMap<Vec<BigInt>, usize>,
    section: Vec<usize>,
}

impl CentralExtension {
    pub fn new(g: FiniteGroup, l_elements: Vec<usize>, pi: Vec<usize>, q: FiniteGroup) -> Result<Self> {
        let invalid = |msg: String| Err(Error::InvalidExtension(msg));
        let (m, k) = (g.order(), q.order());
        if pi.len() != m {
            return invalid(format!("pi has {} entries, expected |G| = {m}", pi.len()));
        }
        if let Some(x) = pi.iter().position(|&y| y >= k) {
            return invalid(format!("pi({x}) = {} outside 0..{k}", pi[x]));
        }
        let mut in_l = vec![false; m];
        for &x in &l_elements {
            if x >= m {
                return invalid(format!("L element {x} outside 0..{m}"));
            }
            if in_l[x] {
                return invalid(format!("L element {x} listed twice"));
            }
            in_l[x] = true;
        }
        if !in_l[g.identity()] {
            return invalid("L does not contain the identity".into());
        }
        for &a in &l_elements {
            for &b in &l_elements {
                if !in_l[g.mul(a, b)] {
                    return invalid(format!("L is not closed: {a} * {b} = {}", g.mul(a, b)));
                }
            }
        }
        for &a in &l_elements {
            for x in 0..m {
                if g.mul(a, x) != g.mul(x, a) {
                    return invalid(format!("L not central: {a} and {x} do not commute"));
                }
            }
        }
        for a in 0..m {
            for b in 0..m {
                if pi[g.mul(a, b)] != q.mul(pi[a], pi[b]) {
                    return invalid(format!("pi is not a homomorphism on ({a}, {b})"));
                }
            }
        }
        let mut section = vec![usize::MAX; k];
        for x in 0..m {
            if section[pi[x]] == usize::MAX {
                section[pi[x]] = x;
            }
        }
        if let Some(y) = section.iter().position(|&s| s == usize::MAX) {
            return invalid(format!("pi is not surjective: {y} has no preimage"));
        }
        for x in 0..m {
            if (pi[x] == q.identity()) != in_l[x] {
                return invalid(format!("kernel of pi differs from L at element {x}"));
            }
        }
        let mut l_elements = l_elements;
        l_elements.sort_unstable();
        let (band, to_band) = band_structure(&g, &l_elements)?;
        let from_band = to_band.iter().map(|(&x, v)| (v.clone(), x)).collect();
        Ok(CentralExtension {
            g,
            q,
            l_elements,
            pi,
            band,
            to_band,
            from_band,
            section,
        })
    }

    pub fn g(&self) -> &FiniteGroup {
        &self.g
    }

    pub fn q(&self) -> &FiniteGroup {
        &self.q
    }

    /// Elements of `L`, ascending.
    pub fn l_elements(&self) -> &[usize] {
        &self.l_elements
    }

    pub fn pi(&self) -> &[usize] {
        &self.pi
    }

    /// `L` as an abelian group in invariant-factor form.
    pub fn band(&self) -> &FgAbGroup {
        &self.band
    }

    /// Coordinates in [`Self::band`] of an element of `L`.
    pub fn band_coords(&self, x: usize) -> Option<&[BigInt]> {
        self.to_band.get(&x).map(Vec::as_slice)
    }

    /// The element of `L` with the given coordinates.
    pub fn band_element(&self, coords: &[BigInt]) -> Option<usize> {
        self.from_band.get(&self.band.normalized(coords.to_vec())).copied()
    }

    /// The lowest-index preimage of each element of `Q`.
    pub fn canonical_section(&self) -> &[usize] {
        &self.section
    }

    pub fn fiber(&self, y: usize) -> Vec<usize> {
        (0..self.g.order()).filter(|&x| self.pi[x] == y).collect()
    }

    /// Checks that `section` is a set-theoretic section of `pi`.
    pub fn check_section(&self, section: &[usize]) -> Result<()> {
        if section.len() != self.q.order() {
            return Err(Error::InvalidExtension(format!(
                "section has {} entries, expected |Q| = {}",
                section.len(),
                self.q.order()
            )));
        }
        for (y, &x) in section.iter().enumerate() {
            if x >= self.g.order() || self.pi[x] != y {
                return Err(Error::InvalidExtension(format!("section value {x} does not lie over {y}")));
            }
        }
        Ok(())
    }
}

pub fn validate_extension(g: FiniteGroup, l_elements: Vec<usize>, pi: Vec<usize>, q: FiniteGroup) -> Result<CentralExtension> {
    CentralExtension::new(g, l_elements, pi, q)
}

/// A central extension built from a short exact sequence of finite abelian
/// groups, with the enumerations used to index `B` and `C`.
#[derive(Clone, Debug)]
pub struct AbelianModel {
    pub extension: CentralExtension,
    pub ses: ShortExactSequence,
    /// Coordinates in `B` of each element of `G`.
    pub b_elements: Vec<Vec<BigInt>>,
    /// Coordinates in `C` of each element of `Q`.
    pub c_elements: Vec<Vec<BigInt>>,
}

impl AbelianModel {
    pub fn new(ses: &ShortExactSequence) -> Result<Self> {
        if !ses.b().is_finite() {
            return Err(Error::InvalidExtension("the middle group must be finite".into()));
        }
        let (b_elements, b_index) = enumerate(ses.b());
        let (c_elements, c_index) = enumerate(ses.c());
        let add = |group: &FgAbGroup, index: &HashMap<Vec<BigInt>, usize>, x: &[BigInt], y: &[BigInt]| {
            index[&group.normalized(x.iter().zip(y).map(|(a, b)| a + b).collect())]
        };
        let g = FiniteGroup::from_fn(b_elements.len(), b_index[&vec![BigInt::from(0); ses.b().generator_count()]], |x, y| {
            add(ses.b(), &b_index, &b_elements[x], &b_elements[y])
        })?;
        let q = FiniteGroup::from_fn(c_elements.len(), c_index[&vec![BigInt::from(0); ses.c().generator_count()]], |x, y| {
            add(ses.c(), &c_index, &c_elements[x], &c_elements[y])
        })?;
        let pi = b_elements.iter().map(|b| c_index[&ses.pi().apply_coords(b)]).collect();
        let l = ses.a().elements().map(|a| b_index[&ses.iota().apply_coords(&a)]).collect();
        Ok(AbelianModel {
            extension: CentralExtension::new(g, l, pi, q)?,
            ses: ses.clone(),
            b_elements,
            c_elements,
        })
    }

    /// The element of `Q` with the given coordinates in `C`.
    pub fn q_index(&self, c: &[BigInt]) -> Option<usize> {
        let c = self.ses.c().normalized(c.to_vec());
        self.c_elements.iter().position(|x| *x == c)
    }

    /// Coordinates in `A` of an element of `L`.
    pub fn source_coords(&self, x: usize) -> Option<Vec<BigInt>> {
        if self.extension.band_coords(x).is_none() {
            return None;
        }
        self.ses.iota().solve(&self.b_elements[x])
    }
}

fn enumerate(group: &FgAbGroup) -> (Vec<Vec<BigInt>>, HashMap<Vec<BigInt>, usize>) {
    let elements: Vec<Vec<BigInt>> = group.elements().collect();
    let index = elements.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
    (elements, index)
}

/// Presents the abelian subgroup `l` of `g`: greedy generators, a
/// breadth-first coordinate assignment, and the relations it leaves.
fn band_structure(g: &FiniteGroup, l: &[usize]) -> Result<(FgAbGroup, HashMap<usize, Vec<BigInt>>)> {
    let mut gens: Vec<usize> = Vec::new();
    let mut path: HashMap<usize, Vec<i64>> = HashMap::new();
    loop {
        path.clear();
        path.insert(g.identity(), vec![0; gens.len()]);
        let mut queue = VecDeque::from([g.identity()]);
        while let Some(x) = queue.pop_front() {
            for (i, &s) in gens.iter().enumerate() {
                let y = g.mul(x, s);
                if !path.contains_key(&y) {
                    let mut v = path[&x].clone();
                    v[i] += 1;
                    path.insert(y, v);
                    queue.push_back(y);
                }
            }
        }
        match l.iter().find(|x| !path.contains_key(x)) {
            Some(&x) => gens.push(x),
            None => break,
        }
    }
    let k = gens.len();
    let big = |v: &[i64]| v.iter().map(|&a| BigInt::from(a)).collect::<Vec<_>>();
    let mut relations = Vec::new();
    for (&x, v) in &path {
        for (i, &s) in gens.iter().enumerate() {
            let mut r = v.clone();
            r[i] += 1;
            for (a, b) in r.iter_mut().zip(&path[&g.mul(x, s)]) {
                *a -= b;
            }
            if r.iter().any(|&a| a != 0) {
                relations.push(big(&r));
            }
        }
    }
    let quotient = Subquotient::new(Lattice::full(k), &Lattice::from_vectors(&relations, k))?;
    let mut coords = HashMap::new();
    let mut seen = BTreeMap::new();
    for (&x, v) in &path {
        let c = quotient.coords(&big(v)).expect("full lattice contains every vector");
        if let Some(y) = seen.insert(c.clone(), x) {
            return Err(Error::Verification(format!("band elements {x} and {y} share coordinates")));
        }
        coords.insert(x, c);
    }
    let band = quotient.group().clone();
    if band.order() != Some(BigInt::from(l.len())) {
        return Err(Error::Verification(format!("band presentation {band} has the wrong order")));
    }
    for &a in l {
        for &b in l {
            let sum = band.normalized(
                coords[&a].iter().zip(&coords[&b]).map(|(x, y)| x + y).collect(),
            );
            if sum != coords[&g.mul(a, b)] {
                return Err(Error::Verification(format!("band coordinates fail on ({a}, {b})")));
            }
        }
    }
    Ok((band, coords))
}

/// A `Q`-valued 1-cocycle on the edges of a simplicial complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionCocycle {
    site: SimplicialComplex,
    q: FiniteGroup,
    /// `g_ij` for each edge `i < j`, in the order of `site.simplices(1)`.
    values: Vec<usize>,
}

impl TransitionCocycle {
    /// Builds a cocycle from values on every edge. A key `(j, i)` with
    /// `j > i` assigns `g_ij` the inverse of the given value.
    pub fn new(site: &SimplicialComplex, q: &FiniteGroup, edges: &BTreeMap<(usize, usize), usize>) -> Result<Self> {
        let invalid = |msg: String| Err(Error::InvalidTransition(msg));
        let mut values: Vec<Option<usize>> = vec![None; site.count(1)];
        for (&(i, j), &v) in edges {
            if v >= q.order() {
                return invalid(format!("value {v} on edge {i},{j} outside 0..{}", q.order()));
            }
            let (key, v) = if i < j { (vec![i, j], v) } else { (vec![j, i], q.inv(v)) };
            let Some(idx) = site.index_of(&key) else {
                return invalid(format!("{i},{j} is not an edge"));
            };
            match values[idx] {
                Some(w) if w != v => return invalid(format!("edge {},{} given conflicting values", key[0], key[1])),
                _ => values[idx] = Some(v),
            }
        }
        let mut out = Vec::with_capacity(values.len());
        for (idx, v) in values.into_iter().enumerate() {
            match v {
                Some(v) => out.push(v),
                None => {
                    let e = &site.simplices(1)[idx];
                    return invalid(format!("edge {},{} has no value", e[0], e[1]));
                }
            }
        }
        Self::from_values(site, q, out)
    }

    /// Builds a cocycle from values listed in edge order.
    pub fn from_values(site: &SimplicialComplex, q: &FiniteGroup, values: Vec<usize>) -> Result<Self> {
        if values.len() != site.count(1) {
            return Err(Error::InvalidTransition(format!(
                "{} values for {} edges",
                values.len(),
                site.count(1)
            )));
        }
        if let Some(&v) = values.iter().find(|&&v| v >= q.order()) {
            return Err(Error::InvalidTransition(format!("value {v} outside 0..{}", q.order())));
        }
        let t = TransitionCocycle {
            site: site.clone(),
            q: q.clone(),
            values,
        };
        if let Some(s) = t.violation(q, &t.values) {
            return Err(Error::InvalidTransition(format!(
                "cocycle law fails on simplex {}",
                SimplicialComplex::key(&s)
            )));
        }
        Ok(t)
    }

    pub fn identity(site: &SimplicialComplex, q: &FiniteGroup) -> Self {
        TransitionCocycle {
            site: site.clone(),
            q: q.clone(),
            values: vec![q.identity(); site.count(1)],
        }
    }

    pub fn site(&self) -> &SimplicialComplex {
        &self.site
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.q
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// `g_ij` for any ordered pair of adjacent vertices.
    pub fn get(&self, i: usize, j: usize) -> Option<usize> {
        if i == j {
            return Some(self.q.identity());
        }
        let key = if i < j { vec![i, j] } else { vec![j, i] };
        let v = self.values[self.site.index_of(&key)?];
        Some(if i < j { v } else { self.q.inv(v) })
    }

    /// Values keyed by edge.
    pub fn edges(&self) -> BTreeMap<(usize, usize), usize> {
        self.site
            .simplices(1)
            .iter()
            .zip(&self.values)
            .map(|(e, &v)| ((e[0], e[1]), v))
            .collect()
    }

    /// First 2-simplex where `values` (edge-ordered, in `group`) violate
    /// `g_ij g_jk = g_ik`.
    pub(crate) fn violation(&self, group: &FiniteGroup, values: &[usize]) -> Option<Vec<usize>> {
        let site = &self.site;
        site.simplices(2)
            .iter()
            .find(|s| {
                let e = |a: usize, b: usize| values[site.index_of(&[s[a], s[b]]).expect("faces are simplices")];
                group.mul(e(0, 1), e(1, 2)) != e(0, 2)
            })
            .cloned()
    }
}
