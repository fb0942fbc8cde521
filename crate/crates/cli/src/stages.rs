use std::time::Instant;

use clap::ValueEnum;
use grasslab::euclid::{Check, FixVectors, IdentityId};
use grasslab::gflinalg::{rng_from_seed, LinearMap, Subspace};
use grasslab::grassmann::GraphContext;
use grasslab::orbits::{structure_matrix_brute, witness_pair, OrbitClass, StructureMatrix, YPartition};
use grasslab::qalg::{
    closed_table, gauss_binom, geometric_gram_inverse, intersection_numbers, orbit_sizes, Params, QMatrix, TableId,
};
use grasslab::spectra::{poly_from_roots, verify_local_spectrum, verify_structure_eigen};
use grasslab::{Error, Result};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::Serialize;

use crate::report::Skipped;
use crate::RunConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Stage {
    OrbitSizes,
    Structure,
    Gram,
    Identities,
    Eigen,
    LocalSpectrum,
    Witnesses,
    Bfs,
}

impl Stage {
    pub const ALL: [Stage; 8] = [
        Stage::OrbitSizes,
        Stage::Structure,
        Stage::Gram,
        Stage::Identities,
        Stage::Eigen,
        Stage::LocalSpectrum,
        Stage::Witnesses,
        Stage::Bfs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Stage::OrbitSizes => "orbit-sizes",
            Stage::Structure => "structure",
            Stage::Gram => "gram",
            Stage::Identities => "identities",
            Stage::Eigen => "eigen",
            Stage::LocalSpectrum => "local-spectrum",
            Stage::Witnesses => "witnesses",
            Stage::Bfs => "bfs",
        }
    }
}

pub(crate) enum Outcome {
    Done(Vec<Check>),
    Skipped(String),
}

/// Data shared by all stages of one run.
pub(crate) struct Shared<'a> {
    pub cfg: &'a RunConfig,
    pub ctx: GraphContext,
    pub fix: FixVectors,
    pub structure: (StructureMatrix, bool),
}

impl<'a> Shared<'a> {
    pub fn build(cfg: &'a RunConfig) -> Result<Self> {
        let ctx = GraphContext::from_params(&cfg.params)?;
        let (x, y) = ctx.choose_pair(cfg.i(), cfg.seed)?;
        let fix = FixVectors::build(&ctx, &x, &y)?;
        let structure = structure_matrix_brute(&ctx, &fix.partition)?;
        Ok(Shared { cfg, ctx, fix, structure })
    }

    /// A closed-form table, perturbed when the run asks for it.
    fn closed(&self, id: TableId) -> Result<QMatrix> {
        let mut m = closed_table(id, &self.fix.params)?;
        if self.cfg.tamper == Some(id) {
            let v = m.get(0, 0) + grasslab::qalg::rat(1);
            m.set(0, 0, v);
        }
        Ok(m)
    }
}

/// Runs the requested stages concurrently; results come back in stage order.
pub(crate) fn run_stages(shared: &Shared<'_>) -> (Vec<Check>, Vec<Skipped>, Vec<(String, u128)>) {
    let results: Vec<(Stage, Outcome, u128)> = Stage::ALL
        .par_iter()
        .map(|&stage| {
            let start = Instant::now();
            let outcome = if shared.cfg.skip.contains(&stage) {
                Outcome::Skipped("skipped on request".into())
            } else {
                match run_stage(shared, stage) {
                    Ok(o) => o,
                    Err(Error::BudgetExceeded { what, needed, budget }) => {
                        Outcome::Skipped(format!("{what} needs {needed}, budget is {budget}"))
                    }
                    Err(e) => Outcome::Done(vec![Check::new(
                        format!("{}/error", stage.name().to_uppercase()),
                        "no error".into(),
                        e.to_string(),
                    )]),
                }
            };
            (stage, outcome, start.elapsed().as_millis())
        })
        .collect();

    let mut checks = Vec::new();
    let mut skipped = Vec::new();
    let mut timings = Vec::new();
    for (stage, outcome, ms) in results {
        match outcome {
            Outcome::Done(c) => checks.extend(c),
            Outcome::Skipped(reason) => skipped.push(Skipped {
                stage: stage.name().into(),
                reason,
            }),
        }
        timings.push((stage.name().to_string(), ms));
    }
    (checks, skipped, timings)
}

fn run_stage(s: &Shared<'_>, stage: Stage) -> Result<Outcome> {
    let checks = match stage {
        Stage::OrbitSizes => orbit_size_checks(&s.fix.params, &s.fix.partition)?,
        Stage::Structure => structure_checks(s)?,
        Stage::Gram => gram_checks(s)?,
        Stage::Identities => identity_checks(s)?,
        Stage::Eigen => eigen_checks(s)?,
        Stage::LocalSpectrum => {
            let r = verify_local_spectrum(&s.ctx, &s.fix.partition.x, s.cfg.local_budget)?;
            prefixed("LOCAL_SPECTRUM", r.checks)
        }
        Stage::Witnesses => witness_checks(s)?,
        Stage::Bfs => bfs_checks(s)?,
    };
    Ok(Outcome::Done(checks))
}

fn prefixed(prefix: &str, checks: Vec<Check>) -> Vec<Check> {
    checks
        .into_iter()
        .map(|c| Check { name: format!("{prefix}/{}", c.name), ..c })
        .collect()
}

/// Brute class sizes against the closed forms.
pub(crate) fn orbit_size_checks(p: &Params, part: &YPartition) -> Result<Vec<Check>> {
    let inum = intersection_numbers(p)?;
    let os = orbit_sizes(p)?;
    let want = [inum.b, inum.c, os.plus, os.zero, os.minus];
    let got = part.sizes();
    let mut out: Vec<Check> = OrbitClass::ALL
        .iter()
        .map(|c| {
            Check::new(
                format!("ORBIT_SIZES/{}", c.name()),
                want[c.index()].to_string(),
                got[c.index()].to_string(),
            )
        })
        .collect();
    out.push(Check::new(
        "ORBIT_SIZES/total".into(),
        p.valency().to_string(),
        got.iter().sum::<usize>().to_string(),
    ));
    Ok(out)
}

fn table_checks(name: &str, labels: (&[&str], &[&str]), want: &QMatrix, got: &QMatrix) -> Vec<Check> {
    let (rows, cols) = labels;
    let (w, g) = (want.to_strings(), got.to_strings());
    let mut out = Vec::with_capacity(rows.len() * cols.len());
    for (r, rl) in rows.iter().enumerate() {
        for (c, cl) in cols.iter().enumerate() {
            out.push(Check::new(format!("{name}/{rl},{cl}"), w[r][c].clone(), g[r][c].clone()));
        }
    }
    out
}

fn structure_checks(s: &Shared<'_>) -> Result<Vec<Check>> {
    let (m, equitable) = &s.structure;
    let id = TableId::Structure;
    let mut out = table_checks(id.name(), id.labels(), &s.closed(id)?, &m.to_qmatrix());
    out.push(Check::new("STRUCTURE/equitable".into(), "true".into(), equitable.to_string()));
    let a1 = s.fix.params.a1().to_string();
    for c in OrbitClass::ALL {
        out.push(Check::new(
            format!("STRUCTURE/row_sum/{}", c.name()),
            a1.clone(),
            m.row_sums()[c.index()].to_string(),
        ));
    }
    Ok(out)
}

fn gram_checks(s: &Shared<'_>) -> Result<Vec<Check>> {
    let ids: Vec<TableId> = TableId::ALL.into_iter().filter(|t| t.is_gram()).collect();
    let mut out: Vec<Check> = ids
        .par_iter()
        .map(|&id| -> Result<Vec<Check>> {
            Ok(table_checks(id.name(), id.labels(), &s.closed(id)?, &s.fix.gram(id)?))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let product = s.fix.gram(TableId::GeomGram)?.mul(&geometric_gram_inverse(&s.fix.params)?)?;
    out.push(Check::new(
        "GEOM_GRAM_INVERSE/product".into(),
        "identity".into(),
        if product.is_identity() { "identity".into() } else { format!("{product}") },
    ));
    Ok(out)
}

fn identity_checks(s: &Shared<'_>) -> Result<Vec<Check>> {
    let reports = IdentityId::ALL
        .par_iter()
        .map(|&id| s.fix.verify(&s.ctx, id))
        .collect::<Result<Vec<_>>>()?;
    Ok(reports.into_iter().flat_map(|r| r.checks).collect())
}

fn eigen_checks(s: &Shared<'_>) -> Result<Vec<Check>> {
    let r = verify_structure_eigen(&s.fix.params)?;
    let mut out = prefixed("EIGEN", r.checks);
    let brute = s.structure.0.to_qmatrix().char_poly()?;
    let want = poly_from_roots(&r.eigenvalues);
    out.push(Check::new("EIGEN/brute_char_poly".into(), list(&want), list(&brute)));
    Ok(out)
}

fn list<T: ToString>(v: &[T]) -> String {
    format!("[{}]", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
}

/// Whether `sigma` fixes `x` and `y` and sends `z` to `z2`, checked directly.
pub(crate) fn moves(ctx: &GraphContext, sigma: &LinearMap, x: &Subspace, y: &Subspace, z: &Subspace, z2: &Subspace) -> Result<bool> {
    let f = ctx.field();
    Ok(f.apply_map(sigma, x)? == *x && f.apply_map(sigma, y)? == *y && f.apply_map(sigma, z)? == *z2)
}

fn witness_checks(s: &Shared<'_>) -> Result<Vec<Check>> {
    let part = &s.fix.partition;
    let (x, y) = (&part.x, &part.y);
    let n = s.cfg.witness_samples;
    let mut rng = rng_from_seed(s.cfg.seed ^ 0x5EED_0F0A_B175);
    let mut same: Vec<(OrbitClass, Subspace, Subspace)> = Vec::new();
    for c in OrbitClass::ALL {
        for _ in 0..n {
            let z = part.class(c).choose(&mut rng).expect("nonempty class");
            let z2 = part.class(c).choose(&mut rng).expect("nonempty class");
            same.push((c, z.clone(), z2.clone()));
        }
    }
    let mut cross: Vec<(Subspace, Subspace)> = Vec::new();
    while cross.len() < n {
        let (a, b) = (OrbitClass::ALL.choose(&mut rng).unwrap(), OrbitClass::ALL.choose(&mut rng).unwrap());
        if a != b {
            let z = part.class(*a).choose(&mut rng).unwrap();
            let z2 = part.class(*b).choose(&mut rng).unwrap();
            cross.push((z.clone(), z2.clone()));
        }
    }

    let ok: Vec<bool> = same
        .par_iter()
        .map(|(_, z, z2)| match witness_pair(&s.ctx, x, y, z, z2) {
            Ok(sigma) => moves(&s.ctx, &sigma, x, y, z, z2),
            Err(Error::Internal(_)) => Ok(false),
            Err(e) => Err(e),
        })
        .collect::<Result<_>>()?;
    let mut out: Vec<Check> = OrbitClass::ALL
        .iter()
        .map(|c| {
            let hits = same.iter().zip(&ok).filter(|((cl, _, _), good)| cl == c && **good).count();
            Check::new(format!("WITNESS/{}", c.name()), format!("{n}/{n}"), format!("{hits}/{n}"))
        })
        .collect();
    let rejected = cross
        .par_iter()
        .filter(|(z, z2)| matches!(witness_pair(&s.ctx, x, y, z, z2), Err(Error::OrbitMismatch { .. })))
        .count();
    out.push(Check::new(
        "WITNESS/cross_class".into(),
        format!("{n}/{n} rejected"),
        format!("{rejected}/{n} rejected"),
    ));
    Ok(out)
}

/// Graph distance by BFS over all vertices against `k − dim(x∩y)`.
fn bfs_checks(s: &Shared<'_>) -> Result<Vec<Check>> {
    let ctx = &s.ctx;
    let x = &s.fix.partition.x;
    let dist = ctx.bfs_distances(x, s.cfg.vertex_budget)?;
    let mut layers = vec![0usize; ctx.k() + 1];
    let mut mismatches = 0usize;
    for (v, &d) in &dist {
        if ctx.distance(x, v)? != d {
            mismatches += 1;
        }
        layers[d] += 1;
    }
    let (q, n, k) = (ctx.q() as i64, ctx.n() as i64, ctx.k() as i64);
    let want: Vec<BigInt> = (0..=k)
        .map(|d| -> Result<BigInt> {
            Ok(BigInt::from(q).pow((d * d) as u32) * gauss_binom(k, d, q as u64)? * gauss_binom(n - k, d, q as u64)?)
        })
        .collect::<Result<_>>()?;
    Ok(vec![
        Check::new("BFS/vertices".into(), ctx.vertex_count().to_string(), dist.len().to_string()),
        Check::new("BFS/distance_mismatches".into(), "0".into(), mismatches.to_string()),
        Check::new("BFS/layers".into(), list(&want), list(&layers)),
    ])
}
