//! Minimal tilting complexes C_min(M) and the filtration dimensions read off them.

mod construct;

use std::sync::Arc;

use serde::Serialize;

use crate::complexes::{minimalize, ComplexJson, TiltingComplex};
use crate::error::Result;
use crate::sl2::UModule;
use crate::workbench::Workbench;

pub use construct::tilting_complex_of;

/// C_min(M) together with the module it resolves.
#[derive(Clone, Debug)]
pub struct MinimalTiltingComplex {
    pub module: Arc<UModule>,
    pub complex: Arc<TiltingComplex>,
}

impl MinimalTiltingComplex {
    /// (gfd, wfd): the largest degree with a nonzero term and minus the smallest.
    pub fn filtration_dimensions(&self) -> (i64, i64) {
        self.complex.width()
    }
}

/// Compact JSON summary: per-degree label multisets.
#[derive(Clone, Debug, Serialize)]
pub struct CminSummary {
    pub ell: u32,
    pub module: String,
    pub degrees: std::collections::BTreeMap<i64, Vec<u32>>,
}

impl CminSummary {
    pub fn new(name: &str, c: &TiltingComplex) -> Self {
        let degrees = c.label_multisets();
        CminSummary { ell: c.ell, module: name.to_string(), degrees }
    }
}

impl Workbench {
    /// C_min(M) = minimalize(tilting_complex_of(M)), memoized in memory and, when a disk
    /// cache is configured, on disk under the module fingerprint.
    pub fn minimal_tilting_complex(&self, m: &Arc<UModule>) -> Result<MinimalTiltingComplex> {
        let fp = m.fingerprint();
        if let Some(c) = self.cmin_cache.lock().unwrap().get(&fp) {
            return Ok(MinimalTiltingComplex { module: m.clone(), complex: c.clone() });
        }
        let key = format!("cmin/{}/{}", self.ell(), fp);
        let cached = self.disk.as_ref().and_then(|d| d.load::<ComplexJson>(&key)).and_then(|j| {
            TiltingComplex::from_json(self, &j)
                .map_err(|e| eprintln!("warning: discarding invalid cached complex: {e}"))
                .ok()
        });
        let c = match cached {
            Some(c) => Arc::new(c),
            None => {
                let raw = tilting_complex_of(self, m)?;
                let (min, _) = minimalize(&raw, false);
                if let Some(d) = &self.disk {
                    d.store(&key, &min.to_json());
                }
                Arc::new(min)
            }
        };
        self.cmin_cache.lock().unwrap().insert(fp, c.clone());
        Ok(MinimalTiltingComplex { module: m.clone(), complex: c })
    }

    /// (gfd(M), wfd(M)) from C_min(M).
    pub fn filtration_dimensions(&self, m: &Arc<UModule>) -> Result<(i64, i64)> {
        Ok(self.minimal_tilting_complex(m)?.filtration_dimensions())
    }
}
