//! Short exact coefficient sequences, the connecting morphism they induce
//! on Čech cohomology, and the resulting long exact sequence.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;

use crate::abelian::{Exactness, FgAbGroup, Homomorphism, IntMatrix};
use crate::cochain::{CechComplex, Cochain, CohomologyClass, SimplicialComplex};
use crate::error::{Error, Result};

/// `0 -> A --iota--> B --pi--> C -> 0`, validated at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortExactSequence {
    a: FgAbGroup,
    b: FgAbGroup,
    c: FgAbGroup,
    iota: Homomorphism,
    pi: Homomorphism,
}

impl ShortExactSequence {
    pub fn new(a: FgAbGroup, b: FgAbGroup, c: FgAbGroup, iota: IntMatrix, pi: IntMatrix) -> Result<Self> {
        let iota = Homomorphism::new(a.clone(), b.clone(), iota)?;
        let pi = Homomorphism::new(b.clone(), c.clone(), pi)?;
        Self::from_maps(iota, pi)
    }

    pub fn from_maps(iota: Homomorphism, pi: Homomorphism) -> Result<Self> {
        if iota.target() != pi.source() {
            return Err(Error::NotComposable("target of iota differs from source of pi".into()));
        }
        let inv = iota.invariants()?;
        if !inv.kernel.is_trivial() {
            let w = inv.kernel_inclusion.matrix().column(0);
            return Err(Error::NotExact(format!(
                "iota is not injective: A-element {} maps to zero",
                fmt_coords(&w)
            )));
        }
        let c = pi.target();
        for j in 0..c.generator_count() {
            let mut e = vec![BigInt::zero(); c.generator_count()];
            e[j] = 1.into();
            if pi.solve(&e).is_none() {
                return Err(Error::NotExact(format!(
                    "pi is not surjective: C-element {} has no preimage",
                    fmt_coords(&e)
                )));
            }
        }
        match iota.is_exact_at(&pi)? {
            Exactness::Exact => {}
            Exactness::ImageNotInKernel(w) => {
                return Err(Error::NotExact(format!(
                    "not exact at B: {} is in the image of iota but pi does not kill it",
                    fmt_coords(&w)
                )))
            }
            Exactness::KernelNotInImage(w) => {
                return Err(Error::NotExact(format!(
                    "not exact at B: {} is killed by pi but is not in the image of iota",
                    fmt_coords(&w)
                )))
            }
        }
        Ok(ShortExactSequence {
            a: iota.source().clone(),
            b: iota.target().clone(),
            c: pi.target().clone(),
            iota,
            pi,
        })
    }

    /// `0 -> Z/m --×m--> Z/m² --mod m--> Z/m -> 0`
    pub fn bockstein(m: u64) -> Self {
        let zm = FgAbGroup::cyclic(m);
        let zm2 = FgAbGroup::cyclic(m * m);
        Self::new(
            zm.clone(),
            zm2,
            zm,
            IntMatrix::from_i64_rows(&[&[m as i64]]),
            IntMatrix::from_i64_rows(&[&[1]]),
        )
        .expect("Bockstein sequence is exact")
    }

    /// `0 -> Z --×m--> Z --mod m--> Z/m -> 0`
    pub fn integral(m: u64) -> Self {
        let z = FgAbGroup::integers();
        Self::new(
            z.clone(),
            z,
            FgAbGroup::cyclic(m),
            IntMatrix::from_i64_rows(&[&[m as i64]]),
            IntMatrix::from_i64_rows(&[&[1]]),
        )
        .expect("integral Bockstein sequence is exact")
    }

    /// `0 -> A -> A + C -> C -> 0`
    pub fn split(a: &FgAbGroup, c: &FgAbGroup) -> Self {
        let (na, nc) = (a.generator_count(), c.generator_count());
        let mut iota = IntMatrix::zeros(na + nc, na);
        for i in 0..na {
            iota[(i, i)] = 1.into();
        }
        let mut pi = IntMatrix::zeros(nc, na + nc);
        for i in 0..nc {
            pi[(i, na + i)] = 1.into();
        }
        Self::new(a.clone(), a.direct_sum(c), c.clone(), iota, pi).expect("split sequence is exact")
    }

    /// `0 -> second -> first + second -> first -> 0`, the sequence of a
    /// two-summand direct sum with the first summand as quotient.
    pub fn direct_sum(first: &FgAbGroup, second: &FgAbGroup) -> Self {
        let (nf, ns) = (first.generator_count(), second.generator_count());
        let mut iota = IntMatrix::zeros(nf + ns, ns);
        for i in 0..ns {
            iota[(nf + i, i)] = 1.into();
        }
        let mut pi = IntMatrix::zeros(nf, nf + ns);
        for i in 0..nf {
            pi[(i, i)] = 1.into();
        }
        Self::new(second.clone(), first.direct_sum(second), first.clone(), iota, pi)
            .expect("direct-sum sequence is exact")
    }

    pub fn a(&self) -> &FgAbGroup {
        &self.a
    }

    pub fn b(&self) -> &FgAbGroup {
        &self.b
    }

    pub fn c(&self) -> &FgAbGroup {
        &self.c
    }

    pub fn iota(&self) -> &Homomorphism {
        &self.iota
    }

    pub fn pi(&self) -> &Homomorphism {
        &self.pi
    }
}

pub fn validate_ses(
    a: FgAbGroup,
    b: FgAbGroup,
    c: FgAbGroup,
    iota: IntMatrix,
    pi: IntMatrix,
) -> Result<ShortExactSequence> {
    ShortExactSequence::new(a, b, c, iota, pi)
}

fn fmt_coords(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

/// A short exact sequence together with the three Čech complexes it
/// induces on one nerve.
#[derive(Clone, Debug)]
pub struct CechSequence {
    ses: ShortExactSequence,
    over_a: CechComplex,
    over_b: CechComplex,
    over_c: CechComplex,
    /// Canonical preimage under pi of each generator of C, one per column.
    section: IntMatrix,
}

impl CechSequence {
    pub fn new(site: &SimplicialComplex, ses: &ShortExactSequence) -> Result<Self> {
        let over_a = CechComplex::new(site, ses.a())?;
        let over_b = CechComplex::new(site, ses.b())?;
        let over_c = CechComplex::new(site, ses.c())?;
        let nc = ses.c().generator_count();
        let cols: Vec<Vec<BigInt>> = (0..nc)
            .map(|k| {
                let mut e = vec![BigInt::zero(); nc];
                e[k] = 1.into();
                ses.pi().solve(&e).expect("pi is surjective")
            })
            .collect();
        let section = IntMatrix::from_columns(&cols, ses.b().generator_count());
        let seq = CechSequence {
            ses: ses.clone(),
            over_a,
            over_b,
            over_c,
            section,
        };
        seq.verify_degreewise()?;
        Ok(seq)
    }

    /// Re-checks `0 -> C^p(A) -> C^p(B) -> C^p(C) -> 0` in every degree.
    fn verify_degreewise(&self) -> Result<()> {
        let site = self.over_a.site();
        for p in 0..=site.dim() {
            let n = site.count(p);
            let iota = block_diagonal(self.ses.iota(), n)?;
            let pi = block_diagonal(self.ses.pi(), n)?;
            let fail = |what: &str| Err(Error::Verification(format!("degree-{p} cochain sequence {what}")));
            if !iota.is_injective()? {
                return fail("has a non-injective first map");
            }
            if !pi.is_surjective()? {
                return fail("has a non-surjective second map");
            }
            if !iota.is_exact_at(&pi)?.is_exact() {
                return fail("is not exact in the middle");
            }
        }
        Ok(())
    }

    pub fn ses(&self) -> &ShortExactSequence {
        &self.ses
    }

    pub fn over_a(&self) -> &CechComplex {
        &self.over_a
    }

    pub fn over_b(&self) -> &CechComplex {
        &self.over_b
    }

    pub fn over_c(&self) -> &CechComplex {
        &self.over_c
    }

    pub fn site(&self) -> &SimplicialComplex {
        self.over_a.site()
    }

    /// Simplexwise lift of a C-valued cochain through the canonical section.
    pub fn lift(&self, c: &Cochain) -> Result<Cochain> {
        let n = self.site().count(c.degree());
        let mut coords = Vec::with_capacity(n * self.ses.b().generator_count());
        for i in 0..n {
            coords.extend(self.section.mul_vec(self.over_c.value(c, i)));
        }
        self.over_b.cochain(c.degree(), coords)
    }

    /// The canonical lift shifted by `iota` of a random A-valued cochain.
    pub fn random_lift(&self, c: &Cochain, rng: &mut impl Rng) -> Result<Cochain> {
        let base = self.lift(c)?;
        let coords: Vec<BigInt> = self
            .over_a
            .group(c.degree())
            .moduli()
            .iter()
            .map(|m| {
                if m.is_zero() {
                    BigInt::from(rng.gen_range(-5i64..=5))
                } else {
                    let top = u64::try_from(m.clone()).unwrap_or(u64::MAX);
                    BigInt::from(rng.gen_range(0..top))
                }
            })
            .collect();
        let shift = self.over_a.cochain(c.degree(), coords)?;
        let shift = self.over_a.push_forward(&shift, self.ses.iota(), &self.over_b)?;
        self.over_b.add(&base, &shift)
    }

    pub fn push_iota(&self, a: &Cochain) -> Result<Cochain> {
        self.over_a.push_forward(a, self.ses.iota(), &self.over_b)
    }

    pub fn push_pi(&self, b: &Cochain) -> Result<Cochain> {
        self.over_b.push_forward(b, self.ses.pi(), &self.over_c)
    }

    /// Connecting morphism on cocycles: lift, take the coboundary over B,
    /// pull back through iota.
    pub fn connecting(&self, c: &Cochain) -> Result<Cochain> {
        self.over_c.class_of(c)?;
        let lift = self.lift(c)?;
        self.pull_back_coboundary(&lift)
    }

    /// Connecting morphism computed from a caller-chosen lift of a cocycle.
    pub fn connecting_from_lift(&self, lift: &Cochain) -> Result<Cochain> {
        let image = self.push_pi(lift)?;
        self.over_c.class_of(&image)?;
        self.pull_back_coboundary(lift)
    }

    fn pull_back_coboundary(&self, lift: &Cochain) -> Result<Cochain> {
        let db = self.over_b.coboundary(lift)?;
        let p = db.degree();
        let n = self.site().count(p);
        let mut coords = Vec::with_capacity(n * self.ses.a().generator_count());
        for i in 0..n {
            let v = self.over_b.value(&db, i);
            let x = self.ses.iota().solve(v).ok_or_else(|| {
                Error::Verification(format!(
                    "coboundary of the lift leaves the image of iota on simplex {}",
                    SimplicialComplex::key(&self.site().simplices(p)[i])
                ))
            })?;
            coords.extend(x);
        }
        let out = self.over_a.cochain(p, coords)?;
        if !self.over_a.is_cocycle(&out)? {
            return Err(Error::Verification("connecting morphism produced a non-cocycle".into()));
        }
        Ok(out)
    }

    pub fn connecting_class(&self, c: &Cochain) -> Result<CohomologyClass> {
        let out = self.connecting(c)?;
        self.over_a.class_of(&out)
    }

    /// Checks that `trials` random lifts all give the class of the
    /// canonical one. Returns the number of disagreeing trials.
    pub fn section_independence(&self, c: &Cochain, trials: usize, rng: &mut impl Rng) -> Result<usize> {
        let reference = self.connecting_class(c)?;
        let mut failures = 0;
        for _ in 0..trials {
            let lift = self.random_lift(c, rng)?;
            let out = self.connecting_from_lift(&lift)?;
            if self.over_a.class_of(&out)?.coords != reference.coords {
                failures += 1;
            }
        }
        Ok(failures)
    }

    /// H^p(A) -> H^p(B)
    pub fn iota_star(&self, p: usize) -> Result<Homomorphism> {
        induced(&self.over_a, &self.over_b, p, p, |x| self.push_iota(x))
    }

    /// H^p(B) -> H^p(C)
    pub fn pi_star(&self, p: usize) -> Result<Homomorphism> {
        induced(&self.over_b, &self.over_c, p, p, |x| self.push_pi(x))
    }

    /// H^p(C) -> H^{p+1}(A)
    pub fn delta_star(&self, p: usize) -> Result<Homomorphism> {
        induced(&self.over_c, &self.over_a, p, p + 1, |x| self.connecting(x))
    }
}

fn block_diagonal(h: &Homomorphism, copies: usize) -> Result<Homomorphism> {
    let (r, c) = (h.matrix().rows(), h.matrix().cols());
    let mut m = IntMatrix::zeros(r * copies, c * copies);
    for k in 0..copies {
        for i in 0..r {
            for j in 0..c {
                m[(k * r + i, k * c + j)] = h.matrix()[(i, j)].clone();
            }
        }
    }
    Homomorphism::new(h.source().power(copies), h.target().power(copies), m)
}

fn induced(
    from: &CechComplex,
    to: &CechComplex,
    p: usize,
    q: usize,
    map: impl Fn(&Cochain) -> Result<Cochain>,
) -> Result<Homomorphism> {
    let hs = from.cohomology(p)?;
    let ht = to.cohomology(q)?;
    let mut cols = Vec::new();
    for rep in hs.representatives() {
        let image = map(&rep)?;
        let coords = ht
            .project(&image)
            .ok_or_else(|| Error::Verification(format!("induced map sends a degree-{p} cocycle to a non-cocycle")))?;
        cols.push(coords);
    }
    let m = IntMatrix::from_columns(&cols, ht.group().generator_count());
    Homomorphism::new(hs.group().clone(), ht.group().clone(), m)
        .map_err(|e| Error::Verification(format!("induced map is ill defined: {e}")))
}

/// Free-function form of [`CechSequence::connecting`].
pub fn connecting(site: &SimplicialComplex, ses: &ShortExactSequence, c: &Cochain) -> Result<Cochain> {
    CechSequence::new(site, ses)?.connecting(c)
}

/// Which coefficient group of the short exact sequence a term uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    A,
    B,
    C,
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Slot::A => "A",
            Slot::B => "B",
            Slot::C => "C",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub struct LesTerm {
    pub degree: usize,
    pub slot: Slot,
    pub group: FgAbGroup,
}

impl LesTerm {
    pub fn label(&self) -> String {
        format!("H{}({})", self.degree, self.slot)
    }
}

#[derive(Clone, Debug)]
pub struct PositionReport {
    /// Index into [`LongExactSequence::terms`].
    pub term: usize,
    pub exact: bool,
    pub witness: Option<Vec<BigInt>>,
}

/// `0 -> H^0(A) -> H^0(B) -> H^0(C) -> H^1(A) -> ... -> H^m(C) -> H^{m+1}(A)`
/// with every map materialized; `maps[i]` goes from `terms[i]` to `terms[i+1]`.
#[derive(Clone, Debug)]
pub struct LongExactSequence {
    pub terms: Vec<LesTerm>,
    pub maps: Vec<Homomorphism>,
    pub positions: Vec<PositionReport>,
}

impl LongExactSequence {
    pub fn is_exact(&self) -> bool {
        self.positions.iter().all(|p| p.exact)
    }

    /// The connecting maps `H^p(C) -> H^{p+1}(A)`, in degree order.
    pub fn connecting_maps(&self) -> impl Iterator<Item = &Homomorphism> {
        self.terms
            .iter()
            .zip(&self.maps)
            .filter(|(t, _)| t.slot == Slot::C)
            .map(|(_, m)| m)
    }
}

pub fn long_exact_sequence(site: &SimplicialComplex, ses: &ShortExactSequence, max_degree: usize) -> Result<LongExactSequence> {
    let seq = CechSequence::new(site, ses)?;
    seq.long_exact_sequence(max_degree)
}

impl CechSequence {
    pub fn long_exact_sequence(&self, max_degree: usize) -> Result<LongExactSequence> {
        let mut terms = Vec::new();
        let mut maps = Vec::new();
        for p in 0..=max_degree {
            let i = self.iota_star(p)?;
            let pi = self.pi_star(p)?;
            let d = self.delta_star(p)?;
            terms.push(LesTerm {
                degree: p,
                slot: Slot::A,
                group: i.source().clone(),
            });
            terms.push(LesTerm {
                degree: p,
                slot: Slot::B,
                group: pi.source().clone(),
            });
            terms.push(LesTerm {
                degree: p,
                slot: Slot::C,
                group: d.source().clone(),
            });
            maps.extend([i, pi, d]);
        }
        terms.push(LesTerm {
            degree: max_degree + 1,
            slot: Slot::A,
            group: maps.last().expect("at least one degree").target().clone(),
        });

        let mut positions = Vec::new();
        let injective = maps[0].invariants()?;
        positions.push(PositionReport {
            term: 0,
            exact: injective.kernel.is_trivial(),
            witness: (!injective.kernel.is_trivial()).then(|| injective.kernel_inclusion.matrix().column(0)),
        });
        for t in 1..terms.len() - 1 {
            let e = maps[t - 1].is_exact_at(&maps[t])?;
            positions.push(PositionReport {
                term: t,
                exact: e.is_exact(),
                witness: e.witness().map(<[BigInt]>::to_vec),
            });
        }
        Ok(LongExactSequence {
            terms,
            maps,
            positions,
        })
    }
}
