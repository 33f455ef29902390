use crate::error::{Error, Result};
use crate::linalg::permutation::Permutation;
use crate::linalg::scalar::{self, Scalar};

/// Row-major dense tensor of exact scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseTensor {
    shape: Vec<usize>,
    entries: Vec<Scalar>,
}

impl DenseTensor {
    pub fn zeros(shape: Vec<usize>) -> Self {
        let len = shape.iter().product();
        Self { shape, entries: vec![scalar::zero(); len] }
    }

    pub fn from_entries(shape: Vec<usize>, entries: Vec<Scalar>) -> Result<Self> {
        let len: usize = shape.iter().product();
        if entries.len() != len {
            return Err(Error::Shape(format!("{} entries for shape {shape:?}", entries.len())));
        }
        Ok(Self { shape, entries })
    }

    /// The simple tensor `e_{i_1} ⊗ … ⊗ e_{i_n}`.
    pub fn basis(shape: Vec<usize>, index: &[usize]) -> Result<Self> {
        let mut t = Self::zeros(shape);
        let off = t.offset(index)?;
        t.entries[off] = scalar::one();
        Ok(t)
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn order(&self) -> usize {
        self.shape.len()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn offset(&self, index: &[usize]) -> Result<usize> {
        if index.len() != self.shape.len() {
            return Err(Error::Shape(format!("index {index:?} for tensor of order {}", self.order())));
        }
        let mut off = 0;
        for (&i, &d) in index.iter().zip(&self.shape) {
            if i >= d {
                return Err(Error::Shape(format!("index {index:?} outside shape {:?}", self.shape)));
            }
            off = off * d + i;
        }
        Ok(off)
    }

    pub fn get(&self, index: &[usize]) -> Result<&Scalar> {
        Ok(&self.entries[self.offset(index)?])
    }

    pub fn set(&mut self, index: &[usize], value: Scalar) -> Result<()> {
        let off = self.offset(index)?;
        self.entries[off] = value;
        Ok(())
    }

    /// Multi-indices in row-major order.
    pub fn indices(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        multi_indices(&self.shape)
    }

    /// Permutes tensor legs: the entry at `(i_1, …, i_n)` moves to
    /// `(i_{σ(1)}, …, i_{σ(n)})`, so `e_1 ⊗ e_2` becomes `e_2 ⊗ e_1` under a
    /// transposition.
    pub fn permute_legs(&self, sigma: &Permutation) -> Result<Self> {
        if sigma.len() != self.order() {
            return Err(Error::Shape(format!("permutation of {} letters for a tensor of order {}", sigma.len(), self.order())));
        }
        self.permute_leg_group(0, sigma)
    }

    /// Permutes only legs `start .. start + σ.len()`.
    pub fn permute_leg_group(&self, start: usize, sigma: &Permutation) -> Result<Self> {
        let n = sigma.len();
        if start + n > self.order() {
            return Err(Error::Shape(format!(
                "permutation of {n} legs starting at {start} for tensor of order {}",
                self.order()
            )));
        }
        let full = Permutation::identity(start)
            .direct_sum(sigma)
            .direct_sum(&Permutation::identity(self.order() - start - n));
        let new_shape = full.permute_slice(&self.shape);
        let mut out = Self::zeros(new_shape);
        for (idx, value) in self.indices().zip(&self.entries) {
            let target = full.permute_slice(&idx);
            let off = out.offset(&target)?;
            out.entries[off] = value.clone();
        }
        Ok(out)
    }
}

/// Row-major enumeration of all multi-indices below `shape`.
pub fn multi_indices(shape: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    let total: usize = shape.iter().product();
    (0..total).map(move |mut flat| {
        let mut idx = vec![0; shape.len()];
        for (slot, &d) in shape.iter().enumerate().rev() {
            idx[slot] = flat % d;
            flat /= d;
        }
        idx
    })
}
