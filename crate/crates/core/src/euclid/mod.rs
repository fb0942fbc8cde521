//! The Euclidean representation realized on the coordinate space over `P_1`
//! with the form `⟨a,b⟩ = [n](a·b) − (Σa)(Σb)`. Its kernel is the all-ones
//! line, so vectors are compared modulo constants.

mod verify;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gflinalg::Subspace;
use crate::grassmann::GraphContext;
use crate::orbits::{OrbitClass, YPartition};

pub use verify::{gram_brute, rank_mod_prime, verify_identity, Check, FixVectors, IdentityId, IdentityReport};

/// An element of the coordinate space over `P_1`, stored as integer
/// numerators over a common positive denominator.
#[derive(Clone, Debug)]
pub struct EVector {
    q: u32,
    n: usize,
    coords: Vec<BigInt>,
    den: BigInt,
    support: Vec<u32>,
    sum: BigInt,
}

impl EVector {
    fn build(q: u32, n: usize, mut coords: Vec<BigInt>, mut den: BigInt) -> Self {
        if den.is_negative() {
            den = -den;
            coords.iter_mut().for_each(|c| *c = -&*c);
        }
        let g = coords.iter().fold(den.clone(), |g, c| g.gcd(c));
        if !g.is_one() && !g.is_zero() {
            coords.iter_mut().for_each(|c| *c /= &g);
            den /= &g;
        }
        let support = coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, _)| j as u32)
            .collect();
        let sum = coords.iter().sum();
        EVector {
            q,
            n,
            coords,
            den,
            support,
            sum,
        }
    }

    pub fn zero(ctx: &GraphContext) -> Self {
        Self::from_counts(ctx, &vec![0; ctx.p1().len()])
    }

    /// Integer coordinates given as machine integers.
    pub fn from_counts(ctx: &GraphContext, counts: &[i64]) -> Self {
        assert_eq!(counts.len(), ctx.p1().len());
        Self::build(
            ctx.q(),
            ctx.n(),
            counts.iter().map(|&c| BigInt::from(c)).collect(),
            BigInt::one(),
        )
    }

    pub fn from_rationals(ctx: &GraphContext, coords: &[BigRational]) -> Self {
        assert_eq!(coords.len(), ctx.p1().len());
        let den = coords.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let nums = coords.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Self::build(ctx.q(), ctx.n(), nums, den)
    }

    /// The all-ones vector, which spans the kernel of the form.
    pub fn ones(ctx: &GraphContext) -> Self {
        Self::from_counts(ctx, &vec![1; ctx.p1().len()])
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coord(&self, j: usize) -> BigRational {
        BigRational::new(self.coords[j].clone(), self.den.clone())
    }

    pub fn coords(&self) -> Vec<BigRational> {
        (0..self.len()).map(|j| self.coord(j)).collect()
    }

    /// Sum of the coordinates.
    pub fn total(&self) -> BigRational {
        BigRational::new(self.sum.clone(), self.den.clone())
    }

    fn check(&self, other: &EVector) -> Result<()> {
        if self.q != other.q || self.n != other.n {
            return Err(Error::AmbientMismatch {
                q_a: self.q,
                n_a: self.n,
                q_b: other.q,
                n_b: other.n,
            });
        }
        Ok(())
    }

    /// `Σ c_j v_j` over vectors of one context.
    pub fn combination(terms: &[(BigRational, &EVector)]) -> Result<EVector> {
        let (_, first) = terms.first().ok_or_else(|| Error::Domain("empty combination".into()))?;
        for (_, v) in terms {
            first.check(v)?;
        }
        let den = terms
            .iter()
            .fold(BigInt::one(), |l, (c, v)| l.lcm(&(c.denom() * &v.den)));
        let mut acc = vec![BigInt::zero(); first.len()];
        for (c, v) in terms {
            let f = c.numer() * (&den / (c.denom() * &v.den));
            for &j in &v.support {
                acc[j as usize] += &f * &v.coords[j as usize];
            }
        }
        Ok(Self::build(first.q, first.n, acc, den))
    }

    pub fn add(&self, other: &EVector) -> Result<EVector> {
        Self::combination(&[(BigRational::one(), self), (BigRational::one(), other)])
    }

    pub fn sub(&self, other: &EVector) -> Result<EVector> {
        Self::combination(&[(BigRational::one(), self), (-BigRational::one(), other)])
    }

    pub fn scale(&self, c: &BigRational) -> EVector {
        Self::combination(&[(c.clone(), self)]).expect("single term")
    }

    /// Export as exact rational strings together with the `P_1` index.
    pub fn export(&self, ctx: &GraphContext) -> EVectorExport {
        EVectorExport {
            q: self.q,
            n: self.n,
            coords: self.coords().iter().map(ToString::to_string).collect(),
            p1: ctx.p1().iter().map(Subspace::to_text).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EVectorExport {
    pub q: u32,
    pub n: usize,
    pub coords: Vec<String>,
    pub p1: Vec<String>,
}

/// `û`: the incidence vector of the lines of `u`.
pub fn hat(ctx: &GraphContext, u: &Subspace) -> EVector {
    let mut counts = vec![0i64; ctx.p1().len()];
    for j in ctx.incidence(u).indices() {
        counts[j] = 1;
    }
    EVector::from_counts(ctx, &counts)
}

/// `[n](a·b) − (Σa)(Σb)`.
pub fn form(a: &EVector, b: &EVector) -> Result<BigRational> {
    a.check(b)?;
    let (short, long) = if a.support.len() <= b.support.len() { (a, b) } else { (b, a) };
    let dot: BigInt = short
        .support
        .iter()
        .map(|&j| &short.coords[j as usize] * &long.coords[j as usize])
        .sum();
    let lines = crate::qalg::bracket(a.n as i64, a.q as u64)?;
    Ok(BigRational::new(lines * dot - &a.sum * &b.sum, &a.den * &b.den))
}

/// Equality in the quotient by the all-ones line.
pub fn e_equal(a: &EVector, b: &EVector) -> Result<bool> {
    a.check(b)?;
    let mut diffs = a
        .coords
        .iter()
        .zip(&b.coords)
        .map(|(x, y)| x * &b.den - y * &a.den);
    let Some(first) = diffs.next() else {
        return Ok(true);
    };
    Ok(diffs.all(|d| d == first))
}

/// `Σ_{z ∈ class} ẑ`.
pub fn orbit_vector(ctx: &GraphContext, part: &YPartition, c: OrbitClass) -> EVector {
    sum_of_hats(ctx, part.class(c))
}

pub fn sum_of_hats(ctx: &GraphContext, members: &[Subspace]) -> EVector {
    let mut counts = vec![0i64; ctx.p1().len()];
    for z in members {
        for j in ctx.incidence(z).indices() {
            counts[j] += 1;
        }
    }
    EVector::from_counts(ctx, &counts)
}
