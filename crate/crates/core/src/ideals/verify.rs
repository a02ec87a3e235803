use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sampling::{NamedModule, Sampler};
use crate::workbench::Workbench;

use super::{enumerate_tilt_ideals, intersect_with_tilt, RepIdealHandle, TensorTable, TiltIdeal};

#[derive(Clone, Debug, Serialize)]
pub struct TwoOfThreeViolation {
    pub case: usize,
    pub description: String,
    /// Memberships of (A, B, C).
    pub memberships: [bool; 3],
}

/// One sampled sequence with the memberships of (A, B, C), or none when a label left the window.
#[derive(Clone, Debug, Serialize)]
pub struct SesSample {
    pub case: usize,
    pub description: String,
    pub dims: [usize; 3],
    pub memberships: Option<[bool; 3]>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TwoOfThreeReport {
    pub ell: u32,
    pub window: u32,
    pub ideal: String,
    pub seed: u64,
    pub cases: usize,
    /// Cases whose C_min labels left the window.
    pub skipped: usize,
    /// Cases with at least two members.
    pub decisive: usize,
    pub violations: Vec<TwoOfThreeViolation>,
    pub samples: Vec<SesSample>,
}

impl TwoOfThreeReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Samples `budget` short exact sequences and checks that two members force the third.
pub fn verify_two_out_of_three(j: &RepIdealHandle, budget: usize, seed: u64) -> Result<TwoOfThreeReport> {
    let wb = &j.wb;
    let w = j.ideal.window;
    let mut sampler = Sampler::new(seed, w.min(8));
    sampler.max_top = w;
    let cases = (0..budget).map(|_| sampler.ses(wb)).collect::<Result<Vec<_>>>()?;
    let results: Vec<Result<Option<[bool; 3]>>> = cases
        .par_iter()
        .map(|s| {
            let mut m = [false; 3];
            for (k, x) in [&s.a, &s.b, &s.c].into_iter().enumerate() {
                match j.contains(x) {
                    Ok(b) => m[k] = b,
                    Err(Error::WindowOverflow { .. }) => return Ok(None),
                    Err(e) => return Err(e),
                }
            }
            Ok(Some(m))
        })
        .collect();
    let mut report = TwoOfThreeReport {
        ell: wb.ell(),
        window: w,
        ideal: j.ideal.describe(),
        seed,
        cases: budget,
        skipped: 0,
        decisive: 0,
        violations: Vec::new(),
        samples: Vec::new(),
    };
    for (case, (s, r)) in cases.iter().zip(results).enumerate() {
        let r = r?;
        report.samples.push(SesSample {
            case,
            description: s.description.clone(),
            dims: [s.a.dim(), s.b.dim(), s.c.dim()],
            memberships: r,
        });
        let Some(m) = r else {
            report.skipped += 1;
            continue;
        };
        let count = m.iter().filter(|&&b| b).count();
        if count >= 2 {
            report.decisive += 1;
        }
        if count == 2 {
            report.violations.push(TwoOfThreeViolation { case, description: s.description.clone(), memberships: m });
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct Separation {
    pub first: String,
    pub second: String,
    /// T(n) lies in exactly one of the two ideals.
    pub witness: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct BijectionReport {
    pub ell: u32,
    pub window: u32,
    pub ideals: Vec<String>,
    pub pool: Vec<String>,
    /// Membership table: ideal → modules of the pool in ⟨I⟩.
    pub memberships: BTreeMap<String, Vec<String>>,
    pub separations: Vec<Separation>,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl BijectionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks on the window that I ↦ ⟨I⟩ is injective with inverse J ↦ J ∩ Tilt, that it
/// commutes with intersections and that it is monotone, using a pool of test modules.
pub fn verify_bijection(wb: &Arc<Workbench>, window: u32, pool: &[NamedModule]) -> Result<BijectionReport> {
    let table = TensorTable::new(wb, 2 * window)?;
    let ideals = enumerate_tilt_ideals(&table, window)?;
    let handles: Vec<RepIdealHandle> = ideals.iter().map(|i| RepIdealHandle::new(wb.clone(), i.clone())).collect();
    let mut failures = Vec::new();
    let mut checks = 0;

    // pool memberships, computed once per (ideal, module)
    let member: Vec<Vec<bool>> = handles
        .iter()
        .map(|h| pool.par_iter().map(|m| h.contains(&m.module)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;

    for (i, h) in handles.iter().enumerate() {
        checks += 1;
        let back = intersect_with_tilt(h)?;
        if back != ideals[i] {
            failures.push(format!("⟨{}⟩ ∩ Tilt = {}", ideals[i].describe(), back.describe()));
        }
    }

    let mut separations = Vec::new();
    for a in 0..ideals.len() {
        for b in a + 1..ideals.len() {
            checks += 1;
            let (x, y) = (&ideals[a], &ideals[b]);
            let Some(&n) = x.members.symmetric_difference(&y.members).next() else {
                failures.push(format!("{} and {} are not separated", x.describe(), y.describe()));
                continue;
            };
            let t = wb.tilting(n);
            if handles[a].contains(&t)? == handles[b].contains(&t)? {
                failures.push(format!("T({n}) does not separate ⟨{}⟩ and ⟨{}⟩", x.describe(), y.describe()));
            }
            separations.push(Separation { first: x.describe(), second: y.describe(), witness: n });
        }
    }

    for a in 0..ideals.len() {
        for b in 0..ideals.len() {
            let meet = ideals[a].intersection(&ideals[b]);
            let hm = RepIdealHandle::new(wb.clone(), meet.clone());
            for (k, m) in pool.iter().enumerate() {
                checks += 1;
                let lhs = hm.contains(&m.module)?;
                if lhs != (member[a][k] && member[b][k]) {
                    failures.push(format!(
                        "{}: ⟨{} ∩ {}⟩ membership {lhs} differs from the conjunction",
                        m.name,
                        ideals[a].describe(),
                        ideals[b].describe()
                    ));
                }
                if ideals[a].is_subset(&ideals[b]) && member[a][k] && !member[b][k] {
                    failures.push(format!(
                        "{} lies in ⟨{}⟩ but not in the larger ⟨{}⟩",
                        m.name,
                        ideals[a].describe(),
                        ideals[b].describe()
                    ));
                }
            }
        }
    }

    let memberships = ideals
        .iter()
        .enumerate()
        .map(|(i, id)| {
            let names = pool.iter().enumerate().filter(|(k, _)| member[i][*k]).map(|(_, m)| m.name.clone()).collect();
            (id.describe(), names)
        })
        .collect();
    Ok(BijectionReport {
        ell: wb.ell(),
        window,
        ideals: ideals.iter().map(TiltIdeal::describe).collect(),
        pool: pool.iter().map(|m| m.name.clone()).collect(),
        memberships,
        separations,
        checks,
        failures,
    })
}
