use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::{e_equal, form, hat, orbit_vector, sum_of_hats, EVector};
use crate::error::{domain, Error, Result};
use crate::gflinalg::Subspace;
use crate::grassmann::GraphContext;
use crate::orbits::{y_partition, OrbitClass, YPartition};
use crate::qalg::{basis_transition, bracket, eigenvalue_theta, Params, QMatrix, TableId, TransitionId};

/// The Mersenne prime `2^61 − 1`.
pub const RANK_PRIME: u64 = (1 << 61) - 1;

/// The vectors attached to a pair `(x, y)`: the geometric quadruple and the
/// five class sums.
#[derive(Clone, Debug)]
pub struct FixVectors {
    pub params: Params,
    pub partition: YPartition,
    pub x: EVector,
    pub y: EVector,
    pub cap: EVector,
    pub plus: EVector,
    pub classes: [EVector; 5],
}

impl FixVectors {
    pub fn build(ctx: &GraphContext, x: &Subspace, y: &Subspace) -> Result<Self> {
        let part = y_partition(ctx, x, y)?;
        Self::from_partition(ctx, part)
    }

    pub fn from_partition(ctx: &GraphContext, partition: YPartition) -> Result<Self> {
        let f = ctx.field();
        let (x, y) = (&partition.x, &partition.y);
        let params = ctx.params().with_i(partition.i as u32)?;
        Ok(FixVectors {
            params,
            x: hat(ctx, x),
            y: hat(ctx, y),
            cap: hat(ctx, &f.intersect(x, y)?),
            plus: hat(ctx, &f.sum(x, y)?),
            classes: OrbitClass::ALL.map(|c| orbit_vector(ctx, &partition, c)),
            partition,
        })
    }

    /// Looks up a vector by its table label.
    pub fn vector(&self, label: &str) -> &EVector {
        match label {
            "x" => &self.x,
            "y" => &self.y,
            "x_cap_y" => &self.cap,
            "x_plus_y" => &self.plus,
            other => {
                let c: OrbitClass = other.parse().expect("table labels name vectors");
                &self.classes[c.index()]
            }
        }
    }

    /// A Gram table computed from explicit vectors.
    pub fn gram(&self, id: TableId) -> Result<QMatrix> {
        if !id.is_gram() {
            return domain(format!("{id} is not a table of inner products"));
        }
        let (rows, cols) = id.labels();
        let mut entries = Vec::with_capacity(rows.len());
        for r in rows {
            let mut row = Vec::with_capacity(cols.len());
            for c in cols {
                row.push(form(self.vector(r), self.vector(c))?);
            }
            entries.push(row);
        }
        Ok(QMatrix::from_rows(entries))
    }

    /// Checks one family of identities.
    pub fn verify(&self, ctx: &GraphContext, id: IdentityId) -> Result<IdentityReport> {
        let checks = match id {
            IdentityId::Alin => self.transition_checks(TransitionId::Alin)?,
            IdentityId::Alin2 => self.transition_checks(TransitionId::Alin2)?,
            IdentityId::XcapXplus => self.transition_checks(TransitionId::XcapXplus)?,
            IdentityId::Theta1Local => self.theta1_checks(ctx)?,
            IdentityId::CConditions => c_conditions(ctx)?,
            IdentityId::GramRank => self.gram_rank_checks()?,
        };
        Ok(IdentityReport { id, checks })
    }

    fn transition_checks(&self, tid: TransitionId) -> Result<Vec<Check>> {
        let t = basis_transition(tid, &self.params)?;
        let (basis, targets) = tid.labels();
        let mut out = Vec::new();
        for (j, target) in targets.iter().enumerate() {
            let terms: Vec<(BigRational, &EVector)> = basis
                .iter()
                .enumerate()
                .map(|(r, b)| (t[(r, j)].clone(), self.vector(b)))
                .collect();
            let rhs = EVector::combination(&terms)?;
            out.push(residual_check(format!("{tid}/{target}"), self.vector(target), &rhs)?);
        }
        Ok(out)
    }

    fn theta1_checks(&self, ctx: &GraphContext) -> Result<Vec<Check>> {
        let members: Vec<Subspace> = self.partition.members().map(|(_, z)| z.clone()).collect();
        let lhs = sum_of_hats(ctx, &members);
        let theta = eigenvalue_theta(&self.params.with_i(1)?)?;
        let rhs = self.x.scale(&BigRational::from_integer(theta));
        Ok(vec![residual_check("THETA1_LOCAL".into(), &lhs, &rhs)?])
    }

    fn gram_rank_checks(&self) -> Result<Vec<Check>> {
        let mut out = Vec::new();
        for (name, id) in [("geometric", TableId::GeomGram), ("combinatorial", TableId::CombGram)] {
            let rank = self.gram(id)?.rank();
            out.push(Check::new(format!("GRAM_RANK/{name}"), "4".into(), rank.to_string()));
        }
        Ok(out)
    }
}

/// Compares two vectors modulo the kernel; the reported value is the squared
/// norm of the difference, which vanishes exactly when they agree.
fn residual_check(name: String, lhs: &EVector, rhs: &EVector) -> Result<Check> {
    let d = lhs.sub(rhs)?;
    let norm = form(&d, &d)?;
    let equal = e_equal(lhs, rhs)?;
    if equal != norm.is_zero() {
        return Err(Error::Internal(format!("{name}: kernel test and norm disagree")));
    }
    Ok(Check::new(name, "0".into(), norm.to_string()))
}

/// The four defining conditions of the representation, checked on the hats
/// of all lines: the form has rank `[n] − 1`, each `ŝ` has squared norm
/// `[n] − 1`, distinct lines have inner product `−1`, and the hats sum to zero.
fn c_conditions(ctx: &GraphContext) -> Result<Vec<Check>> {
    let lines: Vec<EVector> = ctx.p1().par_iter().map(|s| hat(ctx, s)).collect();
    let m = lines.len();
    let nb = bracket(ctx.n() as i64, ctx.q() as u64)?;
    let gram: Vec<Vec<i64>> = lines
        .par_iter()
        .map(|a| {
            lines
                .iter()
                .map(|b| {
                    let v = form(a, b).expect("same context");
                    assert!(v.is_integer());
                    v.to_integer().to_i64().expect("small entry")
                })
                .collect()
        })
        .collect::<Vec<_>>();

    let norm = (nb - num_bigint::BigInt::from(1)).to_i64().expect("small bracket");
    let bad_norms = (0..m).filter(|&s| gram[s][s] != norm).count();
    let bad_pairs = (0..m)
        .into_par_iter()
        .map(|s| (0..m).filter(|&t| t != s && gram[s][t] != -1).count())
        .sum::<usize>();

    let kernel = gram.iter().all(|row| row.iter().sum::<i64>() == 0);
    let residues: Vec<Vec<u64>> = gram
        .iter()
        .map(|row| row.iter().map(|&v| v.rem_euclid(RANK_PRIME as i64) as u64).collect())
        .collect();
    let rank_p = rank_mod_prime(residues, RANK_PRIME);
    // The all-ones vector is a kernel vector, so rank ≤ [n]−1; a nonsingular
    // (m−1)-minor mod p gives rank ≥ [n]−1.
    let rank = if kernel && rank_p == m - 1 { rank_p.to_string() } else { format!("{rank_p} mod p, kernel {kernel}") };

    let sum = lines.iter().try_fold(EVector::zero(ctx), |acc, v| acc.add(v))?;
    let c4 = e_equal(&sum, &EVector::zero(ctx))?;
    Ok(vec![
        Check::new("C_CONDITIONS/C1".into(), (m - 1).to_string(), rank),
        Check::new("C_CONDITIONS/C2".into(), "0".into(), bad_norms.to_string()),
        Check::new("C_CONDITIONS/C3".into(), "0".into(), bad_pairs.to_string()),
        Check::new("C_CONDITIONS/C4".into(), "true".into(), c4.to_string()),
    ])
}

/// Rank of an integer matrix reduced modulo the prime `p < 2^63`.
pub fn rank_mod_prime(mut m: Vec<Vec<u64>>, p: u64) -> usize {
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        r
    };
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = powmod(m[rank][c], p - 2);
        let pivot: Vec<u64> = m[rank].iter().map(|&v| mulmod(v, inv)).collect();
        m[rank + 1..].par_iter_mut().for_each(|row| {
            let f = row[c];
            if f != 0 {
                for j in c..cols {
                    row[j] = (row[j] + p - mulmod(f, pivot[j])) % p;
                }
            }
        });
        rank += 1;
    }
    rank
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    Alin,
    Alin2,
    XcapXplus,
    Theta1Local,
    CConditions,
    GramRank,
}

impl IdentityId {
    pub const ALL: [IdentityId; 6] = [
        IdentityId::Alin,
        IdentityId::Alin2,
        IdentityId::XcapXplus,
        IdentityId::Theta1Local,
        IdentityId::CConditions,
        IdentityId::GramRank,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityId::Alin => "ALIN",
            IdentityId::Alin2 => "ALIN2",
            IdentityId::XcapXplus => "XCAP_XPLUS",
            IdentityId::Theta1Local => "THETA1_LOCAL",
            IdentityId::CConditions => "C_CONDITIONS",
            IdentityId::GramRank => "GRAM_RANK",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IdentityId::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Domain(format!("unknown identity id {s:?}")))
    }
}

impl Serialize for IdentityId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// A single exact comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub expected: String,
    pub actual: String,
}

impl Check {
    pub fn new(name: String, expected: String, actual: String) -> Self {
        Check {
            passed: expected == actual,
            name,
            expected,
            actual,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub id: IdentityId,
    pub checks: Vec<Check>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// A Gram table computed purely from explicit vectors for the pair `(x, y)`.
pub fn gram_brute(ctx: &GraphContext, id: TableId, x: &Subspace, y: &Subspace) -> Result<QMatrix> {
    if !id.is_gram() {
        return domain(format!("{id} is not a table of inner products"));
    }
    FixVectors::build(ctx, x, y)?.gram(id)
}

/// Checks one family of identities for the pair `(x, y)`.
pub fn verify_identity(ctx: &GraphContext, id: IdentityId, x: &Subspace, y: &Subspace) -> Result<IdentityReport> {
    if id == IdentityId::CConditions {
        ctx.check_vertex(x)?;
        ctx.check_vertex(y)?;
        return Ok(IdentityReport {
            id,
            checks: c_conditions(ctx)?,
        });
    }
    FixVectors::build(ctx, x, y)?.verify(ctx, id)
}
