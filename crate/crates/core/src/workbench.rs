//! Per-ℓ computation context holding the memoized tilting modules, their characters and
//! minimal complexes.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use crate::arith::{Character, CyclotomicScalar};
use crate::cache::DiskCache;
use crate::complexes::TiltingComplex;
use crate::error::{Error, Result};
use crate::arith::ExactMatrix;
use crate::sl2::{tensor_module, UModule, UMorphism};
use crate::standard::{hom_space, weyl_module};

pub struct Workbench {
    ell: u32,
    tiltings: RwLock<Vec<Arc<UModule>>>,
    build_lock: Mutex<()>,
    tilting_homs: Mutex<HashMap<(u32, u32), Arc<Vec<UMorphism>>>>,
    tensor_splits: Mutex<HashMap<(u32, u32), Arc<TensorSplit>>>,
    tensor_labels: Mutex<HashMap<(u32, u32), Arc<Vec<u32>>>>,
    pub(crate) cmin_cache: Mutex<HashMap<String, Arc<TiltingComplex>>>,
    pub(crate) disk: Option<DiskCache>,
}

impl std::fmt::Debug for Workbench {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Workbench(ℓ={}, tiltings built: {})", self.ell, self.tiltings.read().unwrap().len())
    }
}

impl Workbench {
    /// A fresh context. The on-disk cache is taken from `TILTLAB_CACHE` when set.
    pub fn new(ell: u32) -> Result<Self> {
        CyclotomicScalar::validate_ell(ell)?;
        Ok(Workbench {
            ell,
            tiltings: RwLock::new(Vec::new()),
            build_lock: Mutex::new(()),
            tilting_homs: Mutex::new(HashMap::new()),
            tensor_splits: Mutex::new(HashMap::new()),
            tensor_labels: Mutex::new(HashMap::new()),
            cmin_cache: Mutex::new(HashMap::new()),
            disk: DiskCache::from_env(),
        })
    }

    pub fn with_disk_cache(ell: u32, disk: Option<DiskCache>) -> Result<Self> {
        let mut w = Self::new(ell)?;
        w.disk = disk;
        Ok(w)
    }

    /// Process-wide context for `ell`, created on first use.
    pub fn shared(ell: u32) -> Result<Arc<Workbench>> {
        static REGISTRY: OnceLock<Mutex<HashMap<u32, Arc<Workbench>>>> = OnceLock::new();
        CyclotomicScalar::validate_ell(ell)?;
        let reg = REGISTRY.get_or_init(|| Mutex::new(HashMap::new()));
        let mut reg = reg.lock().unwrap();
        if let Some(w) = reg.get(&ell) {
            return Ok(w.clone());
        }
        let w = Arc::new(Workbench::new(ell)?);
        reg.insert(ell, w.clone());
        Ok(w)
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    /// The indecomposable tilting module T(n). Its first basis vector spans the n-weight space.
    ///
    /// T(0) is trivial, T(1) = Δ(1), and T(n) is what remains of T(n-1) ⊗ T(1) after all
    /// summands T(μ), μ < n, have been split off.
    pub fn tilting(&self, n: u32) -> Arc<UModule> {
        if let Some(t) = self.tiltings.read().unwrap().get(n as usize) {
            return t.clone();
        }
        let _guard = self.build_lock.lock().unwrap();
        loop {
            let k = self.tiltings.read().unwrap().len() as u32;
            if k > n {
                break;
            }
            let t = self.load_or_build_tilting(k);
            self.tiltings.write().unwrap().push(t);
        }
        self.tiltings.read().unwrap()[n as usize].clone()
    }

    fn load_or_build_tilting(&self, k: u32) -> Arc<UModule> {
        let key = format!("tilting/{}/{}", self.ell, k);
        if let Some(disk) = &self.disk {
            if let Some(m) = disk.load_module(&key) {
                return Arc::new(m);
            }
        }
        let t = Arc::new(self.build_tilting(k));
        if let Some(disk) = &self.disk {
            disk.store_module(&key, &t);
        }
        t
    }

    fn build_tilting(&self, k: u32) -> UModule {
        match k {
            0 => UModule::trivial(self.ell),
            1 => weyl_module(self.ell, 1).expect("Δ(1)"),
            _ => {
                let prev = self.tiltings.read().unwrap()[k as usize - 1].clone();
                let t1 = self.tiltings.read().unwrap()[1].clone();
                let m = Arc::new(tensor_module(&prev, &t1).expect("same ℓ"));
                let rest = self.strip_tilting_summands(m, k - 1);
                debug_assert_eq!(rest.max_weight(), Some(k as i64));
                debug_assert_eq!(rest.weight_dim(k as i64), 1);
                (*rest).clone()
            }
        }
    }

    /// Number of tilting modules built so far.
    pub fn tiltings_built(&self) -> usize {
        self.tiltings.read().unwrap().len()
    }

    pub fn tilting_character(&self, n: u32) -> Character {
        self.tilting(n).character()
    }

    /// Basis of Hom(T(a), T(b)), memoized.
    pub fn tilting_hom(&self, a: u32, b: u32) -> Arc<Vec<UMorphism>> {
        if let Some(h) = self.tilting_homs.lock().unwrap().get(&(a, b)) {
            return h.clone();
        }
        let h = Arc::new(hom_space(&self.tilting(a), &self.tilting(b)));
        self.tilting_homs.lock().unwrap().insert((a, b), h.clone());
        h
    }

    /// Sorted labels of the summands of T(a) ⊗ T(b), from characters alone, memoized.
    pub fn tensor_labels(&self, a: u32, b: u32) -> Result<Arc<Vec<u32>>> {
        let key = (a.min(b), a.max(b));
        if let Some(v) = self.tensor_labels.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let prod = &self.tilting_character(a) * &self.tilting_character(b);
        let coords = prod
            .decompose_unitriangular(|k| self.tilting_character(k))
            .ok_or_else(|| Error::Construction(format!("T({a}) ⊗ T({b}) is not W-symmetric")))?;
        let mut v = Vec::new();
        for (k, c) in coords {
            if c < 0 {
                return Err(Error::Construction(format!("T({a}) ⊗ T({b}) has a negative tilting coefficient")));
            }
            v.extend(std::iter::repeat(k).take(c as usize));
        }
        let v = Arc::new(v);
        self.tensor_labels.lock().unwrap().insert(key, v.clone());
        Ok(v)
    }

    /// T(a) ⊗ T(b) with its splitting into canonical tilting summands, memoized.
    pub fn tilting_tensor(&self, a: u32, b: u32) -> Result<Arc<TensorSplit>> {
        if let Some(t) = self.tensor_splits.lock().unwrap().get(&(a, b)) {
            return Ok(t.clone());
        }
        let module = Arc::new(tensor_module(&self.tilting(a), &self.tilting(b))?);
        let pieces = self.tilting_pieces(&module)?;
        let t = Arc::new(TensorSplit { module, pieces });
        self.tensor_splits.lock().unwrap().insert((a, b), t.clone());
        Ok(t)
    }
}

/// A tensor product of tilting modules with labelled summand inclusions and projections.
#[derive(Debug)]
pub struct TensorSplit {
    pub module: Arc<UModule>,
    pub pieces: Vec<(u32, ExactMatrix, ExactMatrix)>,
}
