use std::collections::BTreeMap;

use grasslab::euclid::Check;
use grasslab::grassmann::GraphContext;
use grasslab::orbits::{classify, witness_pair, y_partition};
use serde_json::json;

use crate::stages::{moves, orbit_size_checks, run_stages, Shared};

use crate::{parse_subspace, CliError, Command, RunConfig, VerificationReport};

/// Executes a parsed command line, returning the report and its output format.
pub fn run(command: &Command) -> Result<(VerificationReport, crate::Format), CliError> {
    Ok(match command {
        Command::Partition(a) => {
            let cfg = a.common.config()?;
            (run_partition(&cfg)?, cfg.format)
        }
        Command::Verify(a) => {
            let cfg = a.config()?;
            (run_verify(&cfg)?, cfg.format)
        }
        Command::Witness(a) => {
            let cfg = a.common.config()?;
            let (z, z2) = (parse_subspace(&a.z)?, parse_subspace(&a.z2)?);
            (run_witness(&cfg, &z, &z2)?, cfg.format)
        }
    })
}

pub fn run_partition(cfg: &RunConfig) -> Result<VerificationReport, CliError> {
    let ctx = GraphContext::from_params(&cfg.params)?;
    let (x, y) = ctx.choose_pair(cfg.i(), cfg.seed)?;
    let part = y_partition(&ctx, &x, &y)?;
    let mut report = VerificationReport::new("partition", cfg, orbit_size_checks(&cfg.params.with_i(part.i as u32)?, &part)?, Vec::new());
    report.data = Some(serde_json::to_value(&part).expect("partition serializes"));
    Ok(report)
}

pub fn run_verify(cfg: &RunConfig) -> Result<VerificationReport, CliError> {
    let shared = Shared::build(cfg)?;
    let (checks, skipped, timings) = run_stages(&shared);
    let mut report = VerificationReport::new("verify", cfg, checks, skipped);
    if cfg.timings {
        report.timings_ms = Some(timings.into_iter().collect::<BTreeMap<_, _>>());
    }
    Ok(report)
}

pub fn run_witness(
    cfg: &RunConfig,
    z: &grasslab::gflinalg::Subspace,
    z2: &grasslab::gflinalg::Subspace,
) -> Result<VerificationReport, CliError> {
    let ctx = GraphContext::from_params(&cfg.params)?;
    let (x, y) = ctx.choose_pair(cfg.i(), cfg.seed)?;
    let (c1, c2) = (classify(&ctx, &x, &y, z)?, classify(&ctx, &x, &y, z2)?);
    let sigma = witness_pair(&ctx, &x, &y, z, z2)?;
    let f = ctx.field();
    let checks = vec![
        Check::new("WITNESS/class".into(), c1.to_string(), c2.to_string()),
        Check::new("WITNESS/fixes_x".into(), x.to_text(), f.apply_map(&sigma, &x)?.to_text()),
        Check::new("WITNESS/fixes_y".into(), y.to_text(), f.apply_map(&sigma, &y)?.to_text()),
        Check::new("WITNESS/maps_z".into(), z2.to_text(), f.apply_map(&sigma, z)?.to_text()),
        Check::new(
            "WITNESS/invertible".into(),
            "true".into(),
            sigma.compose(f, &sigma.inverse(f)).is_identity().to_string(),
        ),
        Check::new(
            "WITNESS/moves".into(),
            "true".into(),
            moves(&ctx, &sigma, &x, &y, z, z2)?.to_string(),
        ),
    ];
    let n = sigma.n();
    let rows: Vec<String> = (0..n)
        .map(|r| (0..n).map(|c| sigma.entry(r, c).to_string()).collect::<Vec<_>>().join(" "))
        .collect();
    let mut report = VerificationReport::new("witness", cfg, checks, Vec::new());
    report.data = Some(json!({
        "x": x.to_text(),
        "y": y.to_text(),
        "z": z.to_text(),
        "z2": z2.to_text(),
        "class": c1.name(),
        "sigma": rows,
    }));
    Ok(report)
}
