//! Thick tensor ideals of tilting modules inside a weight window, the ideals ⟨I⟩ of all
//! modules whose minimal tilting complex lives in I, and checks relating the two sides.

mod verify;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sl2::UModule;
use crate::workbench::Workbench;

pub use verify::{verify_bijection, verify_two_out_of_three, BijectionReport, SesSample, TwoOfThreeReport, TwoOfThreeViolation};

/// Labels (with multiplicity) of T(m) ⊗ T(n) for all m + n ≤ bound, from characters.
#[derive(Clone, Debug)]
pub struct TensorTable {
    pub ell: u32,
    pub bound: u32,
    labels: HashMap<(u32, u32), Vec<u32>>,
}

impl TensorTable {
    pub fn new(wb: &Workbench, bound: u32) -> Result<Self> {
        let mut labels = HashMap::new();
        for m in 0..=bound {
            for n in m..=bound - m {
                labels.insert((m, n), wb.tensor_labels(m, n)?.to_vec());
            }
        }
        Ok(TensorTable { ell: wb.ell(), bound, labels })
    }

    /// Sorted labels of T(m) ⊗ T(n); requires m + n ≤ bound.
    pub fn labels(&self, m: u32, n: u32) -> &[u32] {
        let key = if m <= n { (m, n) } else { (n, m) };
        self.labels.get(&key).map(Vec::as_slice).unwrap_or_else(|| panic!("T({m}) ⊗ T({n}) outside the table"))
    }
}

/// A thick tensor ideal of Tilt truncated to the window [0, W]. Closure is computed over
/// [0, 2W]: `extended` holds every label reached there, `members` its part in [0, W].
#[derive(Clone, Debug, Serialize)]
pub struct TiltIdeal {
    pub ell: u32,
    pub window: u32,
    pub members: BTreeSet<u32>,
    pub extended: BTreeSet<u32>,
    /// Products (m, n, labels) that contributed new labels during closure.
    pub certificate: Vec<(u32, u32, Vec<u32>)>,
}

impl PartialEq for TiltIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.ell == other.ell && self.window == other.window && self.members == other.members
    }
}

impl Eq for TiltIdeal {}

impl TiltIdeal {
    pub fn contains(&self, n: u32) -> bool {
        self.members.contains(&n)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.members.len() == self.window as usize + 1
    }

    pub fn is_proper(&self) -> bool {
        !self.is_full()
    }

    /// Compact set notation, e.g. `{2..12}` or `{0, 3, 5..7}`.
    pub fn describe(&self) -> String {
        describe_set(&self.members)
    }

    /// Proper, and for all m, n ≤ W: if every label of T(m) ⊗ T(n) is in the extended ideal
    /// then m or n is a member.
    pub fn is_prime_on_window(&self, table: &TensorTable) -> bool {
        self.is_proper() && self.prime_counterexample(table).is_none()
    }

    pub fn prime_counterexample(&self, table: &TensorTable) -> Option<(u32, u32)> {
        for m in 0..=self.window {
            for n in m..=self.window {
                if self.contains(m) || self.contains(n) {
                    continue;
                }
                if table.labels(m, n).iter().all(|k| self.extended.contains(k)) {
                    return Some((m, n));
                }
            }
        }
        None
    }

    /// I ∩ I′, again an ideal.
    pub fn intersection(&self, other: &TiltIdeal) -> TiltIdeal {
        TiltIdeal {
            ell: self.ell,
            window: self.window,
            members: self.members.intersection(&other.members).copied().collect(),
            extended: self.extended.intersection(&other.extended).copied().collect(),
            certificate: Vec::new(),
        }
    }

    pub fn is_subset(&self, other: &TiltIdeal) -> bool {
        self.extended.is_subset(&other.extended)
    }
}

pub fn describe_set(s: &BTreeSet<u32>) -> String {
    let v: Vec<u32> = s.iter().copied().collect();
    let mut parts = Vec::new();
    let mut i = 0;
    while i < v.len() {
        let mut j = i;
        while j + 1 < v.len() && v[j + 1] == v[j] + 1 {
            j += 1;
        }
        parts.push(match j - i {
            0 => v[i].to_string(),
            1 => format!("{}, {}", v[i], v[j]),
            _ => format!("{}..{}", v[i], v[j]),
        });
        i = j + 1;
    }
    format!("{{{}}}", parts.join(", "))
}

/// T(n) is negligible iff n + 1 ≥ ℓ.
pub fn is_negligible_window(n: u32, ell: u32) -> bool {
    n + 1 >= ell
}

fn close(table: &TensorTable, window: u32, seed: BTreeSet<u32>) -> TiltIdeal {
    let bound = table.bound;
    let mut ext = seed;
    let mut certificate = Vec::new();
    let mut queue: Vec<u32> = ext.iter().copied().collect();
    while let Some(n) = queue.pop() {
        for m in 0..=bound - n {
            let labels = table.labels(n, m);
            let fresh: Vec<u32> = labels.iter().copied().filter(|k| !ext.contains(k)).collect();
            if fresh.is_empty() {
                continue;
            }
            certificate.push((n, m, labels.to_vec()));
            for k in fresh {
                if ext.insert(k) {
                    queue.push(k);
                }
            }
        }
    }
    let members = ext.range(..=window).copied().collect();
    TiltIdeal { ell: table.ell, window, members, extended: ext, certificate }
}

/// The least ideal containing T(g) for all generators g, closed under tensoring with
/// T(m) and taking summands for all products of highest weight ≤ 2W.
pub fn generate_tilt_ideal(table: &TensorTable, generators: &[u32], window: u32) -> Result<TiltIdeal> {
    if table.bound < 2 * window {
        return Err(Error::InvalidArgument(format!("tensor table bound {} is below 2W = {}", table.bound, 2 * window)));
    }
    if let Some(&g) = generators.iter().find(|&&g| g > window) {
        return Err(Error::WindowOverflow { label: g, window });
    }
    Ok(close(table, window, generators.iter().copied().collect()))
}

/// All ideals in the window, found as joins of principal ideals and deduplicated.
pub fn enumerate_tilt_ideals(table: &TensorTable, window: u32) -> Result<Vec<TiltIdeal>> {
    let empty = generate_tilt_ideal(table, &[], window)?;
    let mut seen: BTreeMap<BTreeSet<u32>, TiltIdeal> = BTreeMap::new();
    let mut stack = vec![empty];
    while let Some(i) = stack.pop() {
        if seen.contains_key(&i.extended) {
            continue;
        }
        for n in 0..=window {
            if !i.contains(n) {
                let mut seed = i.extended.clone();
                seed.insert(n);
                let j = close(table, window, seed);
                if !seen.contains_key(&j.extended) {
                    stack.push(j);
                }
            }
        }
        seen.insert(i.extended.clone(), i);
    }
    let mut out: Vec<TiltIdeal> = seen.into_values().collect();
    out.sort_by_key(|i| (i.members.len(), i.members.iter().copied().collect::<Vec<_>>()));
    Ok(out)
}

/// ⟨I⟩: the modules all of whose C_min terms lie in I.
#[derive(Clone, Debug)]
pub struct RepIdealHandle {
    pub wb: Arc<Workbench>,
    pub ideal: TiltIdeal,
}

impl RepIdealHandle {
    pub fn new(wb: Arc<Workbench>, ideal: TiltIdeal) -> Self {
        RepIdealHandle { wb, ideal }
    }

    /// Whether every label of C_min(M) lies in I. Labels beyond the window are an error.
    pub fn contains(&self, m: &Arc<UModule>) -> Result<bool> {
        let c = self.wb.minimal_tilting_complex(m)?;
        let labels = c.complex.all_labels();
        if let Some(&l) = labels.iter().find(|&&l| l > self.ideal.window) {
            return Err(Error::WindowOverflow { label: l, window: self.ideal.window });
        }
        Ok(labels.iter().all(|&l| self.ideal.contains(l)))
    }
}

/// ⟨I⟩ ∩ Tilt on the window: the n with T(n) ∈ ⟨I⟩.
pub fn intersect_with_tilt(j: &RepIdealHandle) -> Result<TiltIdeal> {
    let w = j.ideal.window;
    let mut members = BTreeSet::new();
    for n in 0..=w {
        if j.contains(&j.wb.tilting(n))? {
            members.insert(n);
        }
    }
    let mut extended = members.clone();
    extended.extend(j.ideal.extended.range(w + 1..).copied());
    Ok(TiltIdeal { ell: j.ideal.ell, window: w, members, extended, certificate: Vec::new() })
}
