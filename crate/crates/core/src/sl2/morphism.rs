use std::sync::Arc;

use crate::arith::{CyclotomicScalar, ExactMatrix};
use crate::error::{Error, Result};

use super::module::{Generator, UModule};

/// A module homomorphism, stored as a dense `target.dim x source.dim` matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct UMorphism {
    pub source: Arc<UModule>,
    pub target: Arc<UModule>,
    pub matrix: ExactMatrix,
}

impl std::fmt::Debug for UMorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "UMorphism({} -> {}, {:?})", self.source.dim(), self.target.dim(), self.matrix)
    }
}

impl UMorphism {
    /// Wraps a matrix after checking shape, weight preservation and intertwining.
    pub fn new(source: Arc<UModule>, target: Arc<UModule>, matrix: ExactMatrix) -> Result<Self> {
        let f = Self::new_unchecked(source, target, matrix)?;
        if let Some((g, w)) = f.intertwining_failure() {
            return Err(Error::InvalidArgument(format!(
                "matrix does not intertwine {} at source weight {w}",
                g.map_or("the weight grading", |g| g.name())
            )));
        }
        Ok(f)
    }

    /// Wraps a matrix after checking only its shape.
    pub fn new_unchecked(source: Arc<UModule>, target: Arc<UModule>, matrix: ExactMatrix) -> Result<Self> {
        if source.ell() != target.ell() {
            return Err(Error::EllMismatch(source.ell(), target.ell()));
        }
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::Dimension(format!(
                "morphism matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim(),
                source.dim()
            )));
        }
        Ok(UMorphism { source, target, matrix })
    }

    /// Assembles a weight-preserving map from its blocks `M_w -> N_w`; missing blocks are zero.
    pub fn from_blocks(
        source: Arc<UModule>,
        target: Arc<UModule>,
        blocks: impl IntoIterator<Item = (i64, ExactMatrix)>,
    ) -> Self {
        let mut m = ExactMatrix::zeros(source.ell(), target.dim(), source.dim());
        for (w, b) in blocks {
            if let (Some(r0), Some(c0)) = (target.offset(w), source.offset(w)) {
                m.set_block(r0, c0, &b);
            }
        }
        UMorphism { source, target, matrix: m }
    }

    pub fn identity(m: Arc<UModule>) -> Self {
        let id = ExactMatrix::identity(m.ell(), m.dim());
        UMorphism { source: m.clone(), target: m, matrix: id }
    }

    pub fn zero(source: Arc<UModule>, target: Arc<UModule>) -> Self {
        let z = ExactMatrix::zeros(source.ell(), target.dim(), source.dim());
        UMorphism { source, target, matrix: z }
    }

    pub fn ell(&self) -> u32 {
        self.source.ell()
    }

    /// The restriction `M_w -> N_w`.
    pub fn block(&self, w: i64) -> ExactMatrix {
        self.matrix.submatrix(self.target.weight_range(w), self.source.weight_range(w))
    }

    /// First generator (or `None` for a grading violation) and source weight where `self`
    /// fails to be a homomorphism.
    pub fn intertwining_failure(&self) -> Option<(Option<Generator>, i64)> {
        let (src, dst) = (&*self.source, &*self.target);
        let weights = src.basis_weights();
        let tweights = dst.basis_weights();
        for j in 0..self.matrix.cols() {
            for i in 0..self.matrix.rows() {
                if tweights[i] != weights[j] && !self.matrix.get(i, j).is_zero() {
                    return Some((None, weights[j]));
                }
            }
        }
        let ell = self.ell();
        for &(w, _) in src.spaces() {
            let fw = self.block(w);
            for g in Generator::ALL {
                let t = w + g.shift(ell);
                let lhs = self.block(t).mul(&src.act(g, w));
                let rhs = dst.act(g, w).mul(&fw);
                if lhs != rhs {
                    return Some((Some(g), w));
                }
            }
        }
        None
    }

    pub fn is_homomorphism(&self) -> bool {
        self.intertwining_failure().is_none()
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &UMorphism) -> Result<UMorphism> {
        if first.target.dim() != self.source.dim() {
            return Err(Error::Dimension("composition of incompatible morphisms".into()));
        }
        Ok(UMorphism {
            source: first.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&first.matrix),
        })
    }

    pub fn add(&self, other: &UMorphism) -> UMorphism {
        UMorphism { source: self.source.clone(), target: self.target.clone(), matrix: self.matrix.add(&other.matrix) }
    }

    pub fn sub(&self, other: &UMorphism) -> UMorphism {
        UMorphism { source: self.source.clone(), target: self.target.clone(), matrix: self.matrix.sub(&other.matrix) }
    }

    pub fn scale(&self, s: &CyclotomicScalar) -> UMorphism {
        UMorphism { source: self.source.clone(), target: self.target.clone(), matrix: self.matrix.scale(s) }
    }

    pub fn neg(&self) -> UMorphism {
        UMorphism { source: self.source.clone(), target: self.target.clone(), matrix: self.matrix.neg() }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn rank(&self) -> usize {
        self.source.spaces().iter().map(|&(w, _)| self.block(w).rank()).sum()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.dim() == self.target.dim() && self.is_injective()
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Result<UMorphism> {
        if !self.is_isomorphism() {
            return Err(Error::InvalidArgument("morphism is not invertible".into()));
        }
        let blocks = self
            .source
            .spaces()
            .iter()
            .map(|&(w, _)| Ok((w, self.block(w).inverse()?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(UMorphism::from_blocks(self.target.clone(), self.source.clone(), blocks))
    }

    /// Replaces the endpoints by modules with identical bases (e.g. rebuilt copies).
    pub fn with_endpoints(&self, source: Arc<UModule>, target: Arc<UModule>) -> Result<UMorphism> {
        UMorphism::new_unchecked(source, target, self.matrix.clone())
    }
}
