//! Exact spectral checks for the quotient matrix of the five-class partition
//! and for the local graph `Γ(x)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::euclid::Check;
use crate::gflinalg::Subspace;
use crate::grassmann::GraphContext;
use crate::qalg::{
    bracket, closed_table, eigen_data, intersection_numbers, local_spectrum_closed, orbit_sizes, Params, QMatrix,
    TableId,
};

/// Default cap on the valency for which the local adjacency matrix is built.
pub const DEFAULT_LOCAL_BUDGET: u128 = 1500;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumReport {
    pub eigenvalues: Vec<BigInt>,
    pub multiplicities: Vec<BigInt>,
    pub checks: Vec<Check>,
}

impl SpectrumReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl Serialize for SpectrumReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct View<'a> {
            eigenvalues: Vec<String>,
            multiplicities: Vec<String>,
            checks: &'a [Check],
        }
        View {
            eigenvalues: self.eigenvalues.iter().map(ToString::to_string).collect(),
            multiplicities: self.multiplicities.iter().map(ToString::to_string).collect(),
            checks: &self.checks,
        }
        .serialize(s)
    }
}

fn list<T: ToString>(v: &[T]) -> String {
    format!("[{}]", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
}

/// Coefficients of `Π (t − λ)`, lowest degree first.
pub fn poly_from_roots(roots: &[BigInt]) -> Vec<BigRational> {
    let mut c = vec![BigRational::one()];
    for r in roots {
        let r = BigRational::from_integer(r.clone());
        let mut next = vec![BigRational::zero(); c.len() + 1];
        for (j, a) in c.iter().enumerate() {
            next[j + 1] += a;
            next[j] -= a * &r;
        }
        c = next;
    }
    c
}

/// Eigen-structure of the closed-form quotient matrix: its characteristic
/// polynomial splits over the claimed eigenvalues, every claimed left and
/// right eigenvector is one, and `Mᵗ D = D M` with `D` the class sizes.
pub fn verify_structure_eigen(p: &Params) -> Result<SpectrumReport> {
    let m = closed_table(TableId::Structure, p)?;
    let triples = eigen_data(p)?;
    let values: Vec<BigInt> = triples.iter().map(|t| t.value.clone()).collect();
    let mut checks = Vec::new();

    let cp = m.char_poly()?;
    checks.push(Check::new(
        "char_poly".into(),
        list(&poly_from_roots(&values)),
        list(&cp),
    ));

    for t in &triples {
        let lam = BigRational::from_integer(t.value.clone());
        let left = t.row.mul(&m)?.sub(&t.row.scale(&lam))?;
        let right = m.mul(&t.col)?.sub(&t.col.scale(&lam))?;
        for (side, res) in [("row", left), ("col", right)] {
            checks.push(Check::new(
                format!("eigenvector/{}/{side}", t.value),
                "0".into(),
                residual(&res),
            ));
        }
    }

    let inum = intersection_numbers(p)?;
    let os = orbit_sizes(p)?;
    let d = [inum.b, inum.c, os.plus, os.zero, os.minus];
    let dm = QMatrix::from_fn(5, 5, |r, c| if r == c { BigRational::from_integer(d[r].clone()) } else { BigRational::zero() });
    let rel = m.transpose().mul(&dm)?.sub(&dm.mul(&m)?)?;
    checks.push(Check::new("transpose_relation".into(), "0".into(), residual(&rel)));

    let mut local: Vec<BigInt> = local_spectrum_closed(p).into_iter().map(|x| x.0).collect();
    let mut mine = values.clone();
    local.sort();
    mine.sort();
    mine.dedup();
    let subset = mine.iter().all(|v| local.binary_search(v).is_ok());
    checks.push(Check::new("within_local_spectrum".into(), "true".into(), subset.to_string()));

    Ok(SpectrumReport {
        multiplicities: vec![BigInt::one(); values.len()],
        eigenvalues: values,
        checks,
    })
}

/// Largest absolute entry, as an exact string.
fn residual(m: &QMatrix) -> String {
    (0..m.rows())
        .flat_map(|r| m.row(r).iter().map(|v| v.abs()))
        .max()
        .unwrap_or_else(BigRational::zero)
        .to_string()
}

/// Adjacency lists of `Γ(x)` in the canonical order of its vertices.
pub fn local_adjacency(ctx: &GraphContext, x: &Subspace) -> Result<Vec<Vec<u32>>> {
    let nbrs = ctx.local_neighbors(x)?;
    let target = u32::try_from(bracket(ctx.k() as i64 - 1, ctx.q() as u64)?).expect("small bracket");
    let inc: Vec<_> = nbrs.par_iter().map(|z| ctx.incidence(z)).collect();
    Ok((0..nbrs.len())
        .into_par_iter()
        .map(|a| {
            (0..nbrs.len())
                .filter(|&b| b != a && inc[a].and_count(&inc[b]) == target)
                .map(|b| b as u32)
                .collect()
        })
        .collect())
}

fn overflow() -> Error {
    Error::Internal("integer overflow in exact local spectrum".into())
}

/// Number of columns of `Π (A − λ I)` that are not identically zero.
fn annihilator_defect(adj: &[Vec<u32>], eigenvalues: &[i128]) -> Result<usize> {
    let size = adj.len();
    let bad: Vec<bool> = (0..size)
        .into_par_iter()
        .map(|j| -> Result<bool> {
            let mut v = vec![0i128; size];
            v[j] = 1;
            for &lam in eigenvalues {
                let mut w = vec![0i128; size];
                for (r, nb) in adj.iter().enumerate() {
                    let mut acc = lam.checked_mul(v[r]).and_then(|t| 0i128.checked_sub(t)).ok_or_else(overflow)?;
                    for &c in nb {
                        acc = acc.checked_add(v[c as usize]).ok_or_else(overflow)?;
                    }
                    w[r] = acc;
                }
                v = w;
            }
            Ok(v.iter().any(|&e| e != 0))
        })
        .collect::<Result<_>>()?;
    Ok(bad.into_iter().filter(|&b| b).count())
}

/// `trace(A^t)` for `t = 0..=4`.
fn traces(adj: &[Vec<u32>]) -> [i128; 5] {
    let size = adj.len();
    let rows: Vec<(i128, i128, i128, i128)> = (0..size)
        .into_par_iter()
        .map(|a| {
            let mut a2 = vec![0i64; size];
            for &b in &adj[a] {
                for &c in &adj[b as usize] {
                    a2[c as usize] += 1;
                }
            }
            let t1 = adj[a].iter().filter(|&&b| b as usize == a).count() as i128;
            let t2 = a2[a] as i128;
            let t3: i128 = adj[a].iter().map(|&b| a2[b as usize] as i128).sum();
            let t4: i128 = a2.iter().map(|&v| (v as i128) * (v as i128)).sum();
            (t1, t2, t3, t4)
        })
        .collect();
    let mut t = [size as i128, 0, 0, 0, 0];
    for (t1, t2, t3, t4) in rows {
        t[1] += t1;
        t[2] += t2;
        t[3] += t3;
        t[4] += t4;
    }
    t
}

/// Spectrum of `Γ(x)`: the claimed five eigenvalues annihilate the exact
/// adjacency matrix, and the multiplicities are recovered from `trace(A^t)`,
/// `t = 0..4`, by an exact Vandermonde solve.
pub fn verify_local_spectrum(ctx: &GraphContext, x: &Subspace, budget: u128) -> Result<SpectrumReport> {
    let p = ctx.params();
    let valency = p.valency();
    if valency > BigInt::from(budget) {
        return Err(Error::BudgetExceeded {
            what: "local spectrum",
            needed: u128::try_from(&valency).unwrap_or(u128::MAX),
            budget,
        });
    }
    let claimed = local_spectrum_closed(&p);
    let lams: Vec<i128> = claimed
        .iter()
        .map(|(l, _)| i128::try_from(l).map_err(|_| overflow()))
        .collect::<Result<_>>()?;

    let adj = local_adjacency(ctx, x)?;
    let size = adj.len();
    let mut checks = vec![Check::new("order".into(), valency.to_string(), size.to_string())];

    let defect = annihilator_defect(&adj, &lams)?;
    checks.push(Check::new("annihilator".into(), "0".into(), defect.to_string()));

    let t = traces(&adj);
    checks.push(Check::new("trace/1".into(), "0".into(), t[1].to_string()));
    checks.push(Check::new(
        "trace/2".into(),
        (&valency * p.a1()).to_string(),
        t[2].to_string(),
    ));

    let vander = QMatrix::from_fn(5, 5, |r, c| {
        BigRational::from_integer(BigInt::from(lams[c]).pow(r as u32))
    });
    let rhs = QMatrix::from_fn(5, 1, |r, _| BigRational::from_integer(BigInt::from(t[r])));
    let sol = vander.solve(&rhs)?;
    let mults: Vec<BigRational> = sol.column(0);
    let integral = mults.iter().all(|m| m.is_integer() && !m.is_negative());
    checks.push(Check::new("multiplicities_integral".into(), "true".into(), integral.to_string()));
    let want: Vec<BigInt> = claimed.iter().map(|x| x.1.clone()).collect();
    checks.push(Check::new("multiplicities".into(), list(&want), list(&mults)));

    Ok(SpectrumReport {
        eigenvalues: claimed.into_iter().map(|x| x.0).collect(),
        multiplicities: mults.iter().map(|m| m.to_integer()).collect(),
        checks,
    })
}
