use std::sync::Arc;
use std::time::Instant;

use super::fixed::FixedTheory;
use super::ptheory::PTheory;
use super::report::{CheckSelection, SCTReport};
use super::table::SupercharacterTable;
use crate::algebra::spec::Instance;
use crate::dual::OrbitContext;
use crate::error::Result;

/// Orbit context for an instance, with the fixed structures when σ is present.
pub fn context(inst: &Instance, cap: u64) -> Result<Arc<OrbitContext>> {
    Ok(Arc::new(match &inst.sigma {
        Some(s) => OrbitContext::with_sigma(s.clone(), cap)?,
        None => OrbitContext::new(inst.algebra.clone(), cap)?,
    }))
}

/// The table of P (no σ) or of C_P(σ), and its verification report.
pub fn build_and_verify(
    inst: &Instance,
    sel: &CheckSelection,
    cap: u64,
    oracle_cap: u64,
) -> Result<(SupercharacterTable, SCTReport)> {
    let ctx = context(inst, cap)?;
    let pt = PTheory::build(ctx.clone())?;
    let (table, mut report) = if inst.sigma.is_some() {
        let ft = FixedTheory::build(ctx)?;
        (SupercharacterTable::from_fixed(&ft), ft.verify(&pt, sel, oracle_cap))
    } else {
        (SupercharacterTable::from_p(&pt), pt.verify(sel, oracle_cap))
    };
    report.elapsed_ms = None;
    Ok((table, report))
}

/// Like [`build_and_verify`] with wall-clock time recorded in the report.
pub fn build_and_verify_timed(
    inst: &Instance,
    sel: &CheckSelection,
    cap: u64,
    oracle_cap: u64,
) -> Result<(SupercharacterTable, SCTReport)> {
    let start = Instant::now();
    let (t, mut r) = build_and_verify(inst, sel, cap, oracle_cap)?;
    r.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    Ok((t, r))
}

/// The table only.
pub fn build_table(inst: &Instance, cap: u64) -> Result<SupercharacterTable> {
    let ctx = context(inst, cap)?;
    Ok(if inst.sigma.is_some() {
        SupercharacterTable::from_fixed(&FixedTheory::build(ctx)?)
    } else {
        SupercharacterTable::from_p(&PTheory::build(ctx)?)
    })
}
