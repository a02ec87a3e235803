//! Verification suites shared by the command line and the tests. Every suite returns a
//! serializable report whose `failures` list is empty exactly when the suite passes.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::alcove::{build_root_system, is_p_regular, separating_hyperplane_count, RootType};
use crate::arith::Character;
use crate::complexes::tensor_complexes;
use crate::error::{Error, Result};
use crate::ideals::{enumerate_tilt_ideals, verify_bijection, verify_two_out_of_three, RepIdealHandle, TensorTable};
use crate::sampling::{standard_module, Family, NamedModule, Sampler};
use crate::sl2::{direct_sum, tensor_module, UModule};
use crate::workbench::Workbench;

pub const SUITES: [&str; 4] = ["lemmas", "two-out-of-three", "bijection", "alcove-cross"];

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub ell: u32,
    pub window: u32,
    pub budget: usize,
    pub seed: u64,
    pub cases: Vec<Value>,
    /// Observations that are recorded but never fail the suite.
    pub findings: Vec<Value>,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(suite: &str, ell: u32, window: u32, budget: usize, seed: u64) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            ell,
            window,
            budget,
            seed,
            cases: Vec::new(),
            findings: Vec::new(),
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// One checked instance of a structural statement about C_min.
#[derive(Clone, Debug, Serialize)]
pub struct LemmaCase {
    pub kind: &'static str,
    pub description: String,
    pub ok: bool,
    pub detail: Option<String>,
}

type Labels = BTreeMap<i64, Vec<u32>>;

fn labels_of(wb: &Workbench, m: &Arc<UModule>) -> Result<Labels> {
    Ok(wb.minimal_tilting_complex(m)?.complex.label_multisets())
}

fn degree(l: &Labels, i: i64) -> Vec<u32> {
    l.get(&i).cloned().unwrap_or_default()
}

fn union(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut v: Vec<u32> = a.iter().chain(b).copied().collect();
    v.sort_unstable();
    v
}

/// Multiset inclusion of sorted vectors.
pub fn multiset_contains(big: &[u32], small: &[u32]) -> bool {
    let mut count: BTreeMap<u32, i64> = BTreeMap::new();
    for &x in big {
        *count.entry(x).or_default() += 1;
    }
    small.iter().all(|x| {
        let c = count.entry(*x).or_default();
        *c -= 1;
        *c >= 0
    })
}

fn pick_pair(sampler: &mut Sampler, wb: &Workbench) -> Result<(NamedModule, NamedModule)> {
    Ok((sampler.standard(wb)?, sampler.standard(wb)?))
}

/// C_min(M ⊕ N) has the labels of C_min(M) and C_min(N) in every degree.
pub fn check_direct_sums(wb: &Workbench, pairs: usize, seed: u64, max_weight: u32) -> Result<Vec<LemmaCase>> {
    let mut sampler = Sampler::new(seed, max_weight);
    let cases = (0..pairs).map(|_| pick_pair(&mut sampler, wb)).collect::<Result<Vec<_>>>()?;
    cases
        .par_iter()
        .map(|(m, n)| {
            let sum = direct_sum(wb.ell(), &[m.module.clone(), n.module.clone()]).module;
            let (lm, ln, ls) = (labels_of(wb, &m.module)?, labels_of(wb, &n.module)?, labels_of(wb, &sum)?);
            let mut expected: Labels = BTreeMap::new();
            for (i, v) in lm.iter().chain(ln.iter()) {
                let e = expected.entry(*i).or_default();
                *e = union(e, v);
            }
            let ok = expected == ls;
            Ok(LemmaCase {
                kind: "direct-sum",
                description: format!("{} ⊕ {}", m.name, n.name),
                ok,
                detail: (!ok).then(|| format!("got {ls:?}, expected {expected:?}")),
            })
        })
        .collect()
}

/// For 0 → A → B → C → 0, in every degree i:
/// A_i ⊆ B_i ⊎ C_{i−1}, B_i ⊆ A_i ⊎ C_i and C_i ⊆ A_{i+1} ⊎ B_i.
pub fn check_ses(wb: &Workbench, count: usize, seed: u64, max_weight: u32) -> Result<Vec<LemmaCase>> {
    let mut sampler = Sampler::new(seed, max_weight);
    let cases = (0..count).map(|_| sampler.ses(wb)).collect::<Result<Vec<_>>>()?;
    cases
        .par_iter()
        .map(|s| {
            let (a, b, c) = (labels_of(wb, &s.a)?, labels_of(wb, &s.b)?, labels_of(wb, &s.c)?);
            let lo = [&a, &b, &c].iter().filter_map(|l| l.keys().next().copied()).min().unwrap_or(0) - 1;
            let hi = [&a, &b, &c].iter().filter_map(|l| l.keys().last().copied()).max().unwrap_or(0) + 1;
            let mut bad = Vec::new();
            for i in lo..=hi {
                if !multiset_contains(&union(&degree(&b, i), &degree(&c, i - 1)), &degree(&a, i)) {
                    bad.push(format!("A_{i}"));
                }
                if !multiset_contains(&union(&degree(&a, i), &degree(&c, i)), &degree(&b, i)) {
                    bad.push(format!("B_{i}"));
                }
                if !multiset_contains(&union(&degree(&a, i + 1), &degree(&b, i)), &degree(&c, i)) {
                    bad.push(format!("C_{i}"));
                }
            }
            Ok(LemmaCase {
                kind: "ses",
                description: format!("{} [A {:?}, B {:?}, C {:?}]", s.description, a, b, c),
                ok: bad.is_empty(),
                detail: (!bad.is_empty()).then(|| format!("containment fails for {}", bad.join(", "))),
            })
        })
        .collect()
}

/// Labels of C_min(M) ⊗ C_min(N) per degree, from the tensor table of tiltings.
pub fn tensor_labels(wb: &Workbench, x: &Labels, y: &Labels) -> Result<Labels> {
    let mut out: Labels = BTreeMap::new();
    for (i, xs) in x {
        for (j, ys) in y {
            for &a in xs {
                for &b in ys {
                    let e = out.entry(i + j).or_default();
                    *e = union(e, &wb.tensor_labels(a, b)?);
                }
            }
        }
    }
    Ok(out)
}

/// C_min(M ⊗ N) has labels inside those of C_min(M) ⊗ C_min(N), and the latter has
/// cohomology M ⊗ N in degree 0 only.
pub fn check_tensors(wb: &Workbench, pairs: usize, seed: u64, max_weight: u32, max_dim: usize) -> Result<Vec<LemmaCase>> {
    let mut sampler = Sampler::new(seed, max_weight);
    let mut cases = Vec::with_capacity(pairs);
    while cases.len() < pairs {
        let (m, n) = pick_pair(&mut sampler, wb)?;
        if m.module.dim() * n.module.dim() <= max_dim {
            cases.push((m, n));
        }
    }
    cases
        .par_iter()
        .map(|(m, n)| {
            let mn = Arc::new(tensor_module(&m.module, &n.module)?);
            let (cm, cn) = (wb.minimal_tilting_complex(&m.module)?, wb.minimal_tilting_complex(&n.module)?);
            let bound = tensor_labels(wb, &cm.complex.label_multisets(), &cn.complex.label_multisets())?;
            let own = labels_of(wb, &mn)?;
            let mut problems = Vec::new();
            for (i, v) in &own {
                if !multiset_contains(&degree(&bound, *i), v) {
                    problems.push(format!("degree {i}: {v:?} not inside {:?}", degree(&bound, *i)));
                }
            }
            let total = tensor_complexes(&cm.complex.to_chain_complex(), &cn.complex.to_chain_complex())?;
            let h = total.nonzero_cohomology();
            let expected = mn.character();
            let h0 = h.get(&0).cloned().unwrap_or_else(Character::zero);
            if h.keys().any(|&i| i != 0) || h0 != expected {
                problems.push(format!("Künneth: cohomology in degrees {:?}", h.keys().collect::<Vec<_>>()));
            }
            Ok(LemmaCase {
                kind: "tensor",
                description: format!("{} ⊗ {}", m.name, n.name),
                ok: problems.is_empty(),
                detail: (!problems.is_empty()).then(|| problems.join("; ")),
            })
        })
        .collect()
}

fn absorb(report: &mut SuiteReport, cases: Vec<LemmaCase>) -> Result<()> {
    for c in cases {
        if !c.ok {
            report.failures.push(format!("{} {}: {}", c.kind, c.description, c.detail.clone().unwrap_or_default()));
        }
        report.cases.push(serde_json::to_value(&c)?);
    }
    Ok(())
}

/// Direct sums, short exact sequences and tensor products, `budget` cases each (the tensor
/// part is capped at 20 pairs of small modules).
pub fn lemma_suite(wb: &Workbench, window: u32, budget: usize, seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("lemmas", wb.ell(), window, budget, seed);
    let w = window.min(8);
    absorb(&mut report, check_direct_sums(wb, budget, seed, w)?)?;
    absorb(&mut report, check_ses(wb, budget, seed.wrapping_add(1), w)?)?;
    absorb(&mut report, check_tensors(wb, budget.min(20), seed.wrapping_add(2), w.min(6), 48)?)?;
    Ok(report)
}

/// The two-out-of-three property for ⟨I⟩ for every proper ideal I of the window.
pub fn two_out_of_three_suite(wb: &Arc<Workbench>, window: u32, budget: usize, seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("two-out-of-three", wb.ell(), window, budget, seed);
    let table = TensorTable::new(wb, 2 * window)?;
    for ideal in enumerate_tilt_ideals(&table, window)?.into_iter().filter(|i| i.is_proper()) {
        let r = verify_two_out_of_three(&RepIdealHandle::new(wb.clone(), ideal), budget, seed)?;
        for v in &r.violations {
            report.failures.push(format!("⟨{}⟩ case {}: {} with memberships {:?}", r.ideal, v.case, v.description, v.memberships));
        }
        report.cases.push(serde_json::to_value(&r)?);
    }
    Ok(report)
}

/// The correspondence I ↦ ⟨I⟩ on the window, tested on the standard modules of the window
/// and `budget` sampled tensor products, plus primality and negligibility of each ideal.
pub fn bijection_suite(wb: &Arc<Workbench>, window: u32, budget: usize, seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("bijection", wb.ell(), window, budget, seed);
    let mut pool = Vec::new();
    for f in Family::ALL {
        for n in 0..=window.min(8) {
            pool.push(standard_module(wb, f, n)?);
        }
    }
    let mut sampler = Sampler::new(seed, window.min(8));
    sampler.max_top = window;
    while pool.len() < 4 * (window.min(8) as usize + 1) + budget {
        let m = sampler.module(wb)?;
        if sampler.rng().gen_bool(0.5) || m.name.contains('⊗') {
            pool.push(m);
        }
    }
    let r = verify_bijection(wb, window, &pool)?;
    report.failures.extend(r.failures.iter().cloned());
    let table = TensorTable::new(wb, 2 * window)?;
    for ideal in enumerate_tilt_ideals(&table, window)? {
        let negligible = ideal.members.iter().copied().eq(wb.ell() - 1..=window);
        report.findings.push(json!({
            "ideal": ideal.describe(),
            "prime": ideal.is_prime_on_window(&table),
            "negligible": negligible,
        }));
    }
    report.cases.push(serde_json::to_value(&r)?);
    Ok(report)
}

/// Labels ν of C_min(L(λ)) that break the degree bound |i| ≤ d(λ) − d(ν) or leave the
/// linkage class of λ, recorded as findings.
fn probes(ell: u32, lambda: u32, d: &dyn Fn(u32) -> Result<i64>, labels: &Labels) -> Result<Vec<Value>> {
    let mut out = Vec::new();
    let two_l = 2 * ell as i64;
    let linked = |nu: u32| {
        let (a, b) = (lambda as i64, nu as i64);
        (a - b).rem_euclid(two_l) == 0 || (a + b + 2).rem_euclid(two_l) == 0
    };
    for (i, v) in labels {
        for &nu in v {
            if i.abs() > d(lambda)? - d(nu)? {
                out.push(json!({"ell": ell, "lambda": lambda, "degree": i, "label": nu, "probe": "degree-bound"}));
            }
            if !linked(nu) {
                out.push(json!({"ell": ell, "lambda": lambda, "degree": i, "label": nu, "probe": "linkage"}));
            }
        }
    }
    Ok(out)
}

/// gfd and wfd of L(λ) against the alcove count d(λ) for every ℓ-regular λ ≤ max_lambda.
/// Mismatches fail the suite only for λ < ℓ.
pub fn alcove_cross_suite(ells: &[u32], max_lambda: u32, window: u32, seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("alcove-cross", ells.first().copied().unwrap_or(0), window, 0, seed);
    let rs = build_root_system(RootType::A(1));
    for &ell in ells {
        let wb = Workbench::shared(ell)?;
        let p = ell as i64;
        let d = |n: u32| separating_hyperplane_count(&rs, &[n as i64], p);
        for lambda in 0..=max_lambda {
            let regular = is_p_regular(&rs, &[lambda as i64], p);
            let l = standard_module(&wb, Family::Simple, lambda)?;
            let c = wb.minimal_tilting_complex(&l.module)?;
            let (gfd, wfd) = c.filtration_dimensions();
            let dl = d(lambda)?;
            report.findings.extend(probes(ell, lambda, &d, &c.complex.label_multisets())?);
            report.cases.push(json!({
                "ell": ell, "lambda": lambda, "regular": regular, "gfd": gfd, "wfd": wfd, "d": dl,
            }));
            if regular && (gfd != dl || wfd != dl) {
                let msg = format!("ℓ = {ell}, λ = {lambda}: gfd {gfd}, wfd {wfd}, d {dl}");
                // below ℓ, L(λ) = T(λ) forces gfd = 0 = d; elsewhere a mismatch is an observation
                if lambda < ell {
                    report.failures.push(msg);
                } else {
                    report.findings.push(json!({"ell": ell, "lambda": lambda, "probe": "gfd-vs-d", "note": msg}));
                }
            }
        }
    }
    Ok(report)
}

/// Runs a suite by name.
pub fn run_suite(name: &str, wb: &Arc<Workbench>, window: u32, budget: usize, seed: u64) -> Result<SuiteReport> {
    match name {
        "lemmas" => lemma_suite(wb, window, budget, seed),
        "two-out-of-three" => two_out_of_three_suite(wb, window, budget, seed),
        "bijection" => bijection_suite(wb, window, budget, seed),
        "alcove-cross" => alcove_cross_suite(&[wb.ell()], window.min(12), window, seed),
        other => Err(Error::InvalidArgument(format!("unknown suite {other:?}, expected one of {SUITES:?}"))),
    }
}
