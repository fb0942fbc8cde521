//! Closed-form q-analog formulas for the Grassmann graph and its local
//! five-class partition, evaluated exactly.

mod matrix;
mod tables;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

pub use matrix::{rat, QMatrix};
pub use tables::{closed_table, geometric_gram_inverse, basis_transition, TableId, TransitionId};

/// Parameters of `J_q(n,k)`, optionally with a distance `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Params {
    pub q: u32,
    pub n: u32,
    pub k: u32,
    pub i: Option<u32>,
}

impl Params {
    /// Validates `q` a prime power and `n > 2k >= 6`.
    pub fn new(q: u32, n: u32, k: u32) -> Result<Self> {
        if !is_prime_power(q) {
            return domain(format!("q = {q} is not a prime power"));
        }
        if 2 * k < 6 {
            return domain(format!("need 2k >= 6, got k = {k}"));
        }
        if n <= 2 * k {
            return domain(format!("need n > 2k, got n = {n}, k = {k}"));
        }
        Ok(Params { q, n, k, i: None })
    }

    /// Attaches a distance with `0 <= i <= k`.
    pub fn with_i(self, i: u32) -> Result<Self> {
        if i > self.k {
            return domain(format!("distance i = {i} exceeds k = {}", self.k));
        }
        Ok(Params { i: Some(i), ..self })
    }

    /// Parameters with a distance in the open range `1 < i < k`.
    pub fn local(q: u32, n: u32, k: u32, i: u32) -> Result<Self> {
        let p = Params::new(q, n, k)?.with_i(i)?;
        p.interior_i()?;
        Ok(p)
    }

    pub fn i(&self) -> Result<u32> {
        self.i.ok_or_else(|| crate::Error::Domain("distance i is required".into()))
    }

    /// The distance, checked to satisfy `1 < i < k`.
    pub fn interior_i(&self) -> Result<u32> {
        let i = self.i()?;
        if !(1 < i && i < self.k) {
            return domain(format!("need 1 < i < k, got i = {i}, k = {}", self.k));
        }
        Ok(i)
    }

    pub(crate) fn sym(&self) -> Sym {
        Sym {
            q: self.q as i64,
            n: self.n as i64,
            k: self.k as i64,
            i: self.i.unwrap_or(0) as i64,
        }
    }

    /// Valency `q[k][n−k]`.
    pub fn valency(&self) -> BigInt {
        let s = self.sym();
        to_int(s.r(s.q) * s.b(s.k) * s.b(s.n - s.k))
    }

    /// `a_1 = q[k] + q[n−k] − q − 1`, the valency of the local graph.
    pub fn a1(&self) -> BigInt {
        let s = self.sym();
        to_int(s.r(s.q) * s.b(s.k) + s.r(s.q) * s.b(s.n - s.k) - s.r(s.q + 1))
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q={} n={} k={}", self.q, self.n, self.k)?;
        if let Some(i) = self.i {
            write!(f, " i={i}")?;
        }
        Ok(())
    }
}

pub fn is_prime_power(q: u32) -> bool {
    if q < 2 {
        return false;
    }
    let p = (2..=q).find(|&d| q.is_multiple_of(d)).unwrap();
    let mut m = q;
    while m.is_multiple_of(p) {
        m /= p;
    }
    m == 1
}

/// Evaluation helper shared by the formula tables.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Sym {
    pub q: i64,
    pub n: i64,
    pub k: i64,
    pub i: i64,
}

impl Sym {
    /// `[m]` for `m >= 0`.
    pub fn b(&self, m: i64) -> BigRational {
        assert!(m >= 0, "negative bracket [{m}] under validated parameters");
        BigRational::from_integer(bracket_unchecked(m as u32, BigInt::from(self.q)))
    }

    /// `q^e`, possibly with negative `e`.
    pub fn p(&self, e: i64) -> BigRational {
        let base = BigRational::from_integer(BigInt::from(self.q));
        if e >= 0 {
            Pow::pow(base, e as u32)
        } else {
            Pow::pow(base, (-e) as u32).recip()
        }
    }

    pub fn r(&self, v: i64) -> BigRational {
        rat(v)
    }
}

fn bracket_unchecked(m: u32, q: BigInt) -> BigInt {
    (0..m).fold(BigInt::zero(), |acc, _| acc * &q + 1)
}

pub(crate) fn to_int(v: BigRational) -> BigInt {
    assert!(v.is_integer(), "expected an integer, got {v}");
    v.to_integer()
}

fn check_q(q: u64) -> Result<()> {
    if q < 2 {
        return domain(format!("q = {q} must be at least 2"));
    }
    Ok(())
}

/// Gaussian bracket `[m] = (q^m − 1)/(q − 1)` for `m >= 0`.
pub fn bracket(m: i64, q: u64) -> Result<BigInt> {
    check_q(q)?;
    if m < 0 {
        return domain(format!("bracket [{m}] with negative argument"));
    }
    Ok(bracket_unchecked(m as u32, BigInt::from(q)))
}

/// Gaussian binomial coefficient: the number of `r`-dimensional subspaces of
/// an `m`-dimensional space over GF(q).
pub fn gauss_binom(m: i64, r: i64, q: u64) -> Result<BigInt> {
    check_q(q)?;
    if r < 0 || r > m {
        return domain(format!("gaussian binomial needs 0 <= r <= m, got m = {m}, r = {r}"));
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 1..=r {
        num *= bracket(m - j + 1, q)?;
        den *= bracket(j, q)?;
    }
    Ok(num / den)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionNumbers {
    pub b: BigInt,
    pub c: BigInt,
    pub a: BigInt,
}

/// `(b_i, c_i, a_i)` for `0 <= i <= k`.
pub fn intersection_numbers(p: &Params) -> Result<IntersectionNumbers> {
    let i = p.i()?;
    let s = p.sym();
    let (k, n, ii) = (s.k, s.n, i as i64);
    let b = if i == p.k {
        BigInt::zero()
    } else {
        to_int(s.p(2 * ii + 1) * s.b(k - ii) * s.b(n - k - ii))
    };
    let c = to_int(s.b(ii) * s.b(ii));
    let a = p.valency() - &b - &c;
    Ok(IntersectionNumbers { b, c, a })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitSizes {
    pub plus: BigInt,
    pub zero: BigInt,
    pub minus: BigInt,
}

/// `(a_i^+, a_i^0, a_i^-)` for `1 < i < k`.
pub fn orbit_sizes(p: &Params) -> Result<OrbitSizes> {
    p.interior_i()?;
    let s = p.sym();
    Ok(OrbitSizes {
        plus: to_int(s.p(s.i + 1) * s.b(s.i) * s.b(s.n - s.k - s.i)),
        zero: to_int(s.r(s.q - 1) * s.b(s.i) * s.b(s.i)),
        minus: to_int(s.p(s.i + 1) * s.b(s.i) * s.b(s.k - s.i)),
    })
}

/// Eigenvalue `θ_i = q^{i+1}[k−i][n−k−i] − [i]` for `0 <= i <= k`.
pub fn eigenvalue_theta(p: &Params) -> Result<BigInt> {
    let i = p.i()? as i64;
    let s = p.sym();
    Ok(to_int(s.p(i + 1) * s.b(s.k - i) * s.b(s.n - s.k - i) - s.b(i)))
}

/// One eigenvalue of the structure matrix with its left and right eigenvectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenTriple {
    pub value: BigInt,
    /// 1×5 left eigenvector.
    pub row: QMatrix,
    /// 5×1 right eigenvector.
    pub col: QMatrix,
}

/// The five eigen-triples of the structure matrix, class order (B, C, A⁺, A⁰, A⁻).
pub fn eigen_data(p: &Params) -> Result<Vec<EigenTriple>> {
    p.interior_i()?;
    let s = p.sym();
    let inum = intersection_numbers(p)?;
    let os = orbit_sizes(p)?;
    let q = BigInt::from(p.q);
    let (b, c) = (inum.b, inum.c);
    let (ap, a0, am) = (os.plus, os.zero, os.minus);
    let qc = &q * &c;
    let one = BigInt::one;
    let zero = BigInt::zero;
    let z = |v: [BigInt; 5]| v;
    let triples: Vec<(BigInt, [BigInt; 5], [BigInt; 5])> = vec![
        (
            p.a1(),
            z([b.clone(), c.clone(), ap.clone(), a0.clone(), am.clone()]),
            z([one(), one(), one(), one(), one()]),
        ),
        (
            to_int(s.r(s.q) * s.b(s.n - s.k) - s.r(s.q + 1)),
            z([ap.clone(), -c.clone(), -ap.clone(), -a0.clone(), qc.clone()]),
            z([qc.clone(), -am.clone(), -am.clone(), -am.clone(), qc.clone()]),
        ),
        (
            to_int(s.r(s.q) * s.b(s.k) - s.r(s.q + 1)),
            z([am.clone(), -c.clone(), qc.clone(), -a0.clone(), -am.clone()]),
            z([qc.clone(), -ap.clone(), qc.clone(), -ap.clone(), -ap.clone()]),
        ),
        (
            BigInt::from(-1),
            z([zero(), one(), zero(), -one(), zero()]),
            z([zero(), &q - 1, zero(), -one(), zero()]),
        ),
        (
            -&q - 1,
            z([q.clone(), one(), -q.clone(), &q - 1, -q.clone()]),
            z([qc.clone(), b.clone(), -am.clone(), b.clone(), -ap.clone()]),
        ),
    ];
    Ok(triples
        .into_iter()
        .map(|(value, row, col)| EigenTriple {
            value,
            row: QMatrix::from_fn(1, 5, |_, j| BigRational::from_integer(row[j].clone())),
            col: QMatrix::from_fn(5, 1, |j, _| BigRational::from_integer(col[j].clone())),
        })
        .collect())
}

/// The five (eigenvalue, multiplicity) pairs of the local graph `Γ(x)`.
pub fn local_spectrum_closed(p: &Params) -> Vec<(BigInt, BigInt)> {
    let s = p.sym();
    let (n, k) = (s.n, s.k);
    [
        (p.a1(), BigInt::one()),
        (
            to_int(s.r(s.q) * s.b(n - k) - s.r(s.q + 1)),
            to_int(s.b(k) - s.r(1)),
        ),
        (to_int(s.r(s.q) * s.b(k) - s.r(s.q + 1)), to_int(s.b(n - k) - s.r(1))),
        (BigInt::from(-1), to_int(s.r(s.q - 1) * s.b(k) * s.b(n - k))),
        (
            BigInt::from(-(s.q + 1)),
            to_int(s.p(2) * s.b(k - 1) * s.b(n - k - 1)),
        ),
    ]
    .into()
}
