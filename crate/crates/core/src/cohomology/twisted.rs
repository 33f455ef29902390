//! The twisted complex on `Hom(C, L)` with coefficients in `Hom(C, B)`.
//!
//! A twisted `n`-cochain is represented by an alternating cochain `f` that
//! induces it; `f` and `f'` represent the same cochain iff `ι_n(f − f') = 0`,
//! where `ι_n` sends `f` to the materialized operator it induces.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use super::{ce_matrices, ce_differential, unshuffles, AltCochain, ComplexMatrices};
use crate::algebra::LieModule;
use crate::coalgebra::Coalgebra;
use crate::convolution::{induced, HomOperator};
use crate::error::{Error, Result};
use crate::guard::Guard;
use crate::linalg::scalar::{self, Scalar};
use crate::linalg::RationalMatrix;
use crate::td::TdModule;

/// `ι_n` as a matrix from Alt^n coordinates to operator coordinates. Only
/// operator coordinates that some induced cochain touches get a row.
#[derive(Clone, Debug)]
pub struct Induction {
    degree: usize,
    matrix: RationalMatrix,
    rows: BTreeMap<(Vec<usize>, usize), usize>,
}

impl Induction {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// Row coordinates of a materialized operator, or `None` when it has an
    /// entry no induced cochain can produce.
    pub fn coordinates_of(&self, op: &HomOperator) -> Option<Vec<Scalar>> {
        let mut v = vec![scalar::zero(); self.matrix.rows()];
        for (key, out, q) in op.map().triples() {
            let r = *self.rows.get(&(key.clone(), out[0]))?;
            v[r] = q.clone();
        }
        Some(v)
    }

    pub fn apply(&self, f: &AltCochain) -> Result<Vec<Scalar>> {
        self.matrix.apply(f.coordinates())
    }
}

fn guard_induction(n: usize, module: &LieModule, c: &Coalgebra, guard: &Guard) -> Result<()> {
    if AltCochain::dim(module.algebra().dim(), module.space().dim(), n) == 0 {
        return Ok(());
    }
    guard.check(module.algebra().dim() * c.dim(), n, &format!("induction map ι_{n}"))
}

/// The operator induced by an alternating cochain of degree ≥ 1.
pub fn induced_cochain(f: &AltCochain, c: &Arc<Coalgebra>) -> Result<HomOperator> {
    induced(&f.to_map(), c)?.materialize()
}

pub fn induction_matrix(n: usize, module: &LieModule, c: &Arc<Coalgebra>, guard: &Guard) -> Result<Induction> {
    let (l, b) = (module.algebra().space(), module.space());
    if n == 0 {
        let rows = (0..b.dim()).map(|i| ((Vec::new(), i), i)).collect();
        return Ok(Induction { degree: 0, matrix: RationalMatrix::identity(b.dim()), rows });
    }
    guard_induction(n, module, c, guard)?;
    let basis = AltCochain::basis(l, b, n);
    let mut columns = Vec::with_capacity(basis.len());
    let mut rows = BTreeMap::new();
    for e in &basis {
        let op = induced_cochain(e, c)?;
        let col: Vec<((Vec<usize>, usize), Scalar)> =
            op.map().triples().map(|(k, o, q)| ((k.clone(), o[0]), q.clone())).collect();
        for (key, _) in &col {
            rows.entry(key.clone()).or_insert(0);
        }
        columns.push(col);
    }
    for (r, slot) in rows.values_mut().enumerate() {
        *slot = r;
    }
    let mut matrix = RationalMatrix::zeros(rows.len(), basis.len());
    for (j, col) in columns.into_iter().enumerate() {
        for (key, q) in col {
            matrix.set(rows[&key], j, q);
        }
    }
    Ok(Induction { degree: n, matrix, rows })
}

/// A twisted cochain, held by an inducing alternating cochain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TdCochain {
    pub inducing: AltCochain,
}

impl TdCochain {
    pub fn degree(&self) -> usize {
        self.inducing.degree()
    }

    /// Whether two representatives differ by an element of `ker ι_n`.
    pub fn same_class(&self, other: &Self, iota: &Induction) -> Result<bool> {
        let a = iota.apply(&self.inducing)?;
        let b = iota.apply(&other.inducing)?;
        Ok(a == b)
    }

    pub fn is_zero(&self, iota: &Induction) -> Result<bool> {
        Ok(iota.apply(&self.inducing)?.iter().all(Zero::is_zero))
    }
}

/// `ι_{n+1} · d_n` kills `ker ι_n`.
fn check_well_defined(n: usize, iota_n: &Induction, iota_next: &Induction, d: &RationalMatrix) -> Result<()> {
    let image = iota_next.matrix.mul(d)?;
    for v in iota_n.matrix.kernel_basis() {
        if !image.apply(&v)?.iter().all(Zero::is_zero) {
            return Err(Error::Consistency(format!("d sends ker ι_{n} outside ker ι_{}", n + 1)));
        }
    }
    Ok(())
}

/// `δF` as the class of `d f`, after checking that `d` preserves the kernels
/// of the induction maps in this degree.
pub fn td_differential_induced(f: &TdCochain, tdm: &TdModule, guard: &Guard) -> Result<TdCochain> {
    let n = f.degree();
    let iota_n = induction_matrix(n, &tdm.module, &tdm.coalgebra, guard)?;
    let iota_next = induction_matrix(n + 1, &tdm.module, &tdm.coalgebra, guard)?;
    check_well_defined(n, &iota_n, &iota_next, &super::ce_matrix(&tdm.module, n)?)?;
    Ok(TdCochain { inducing: ce_differential(&f.inducing, &tdm.module)? })
}

/// The twisted differential evaluated directly on operators:
/// `δF = Σ_σ (−1)^σ (Ψ(1⊗F))^σ∘σ − Σ_σ' (−1)^σ' (F(Φ⊗1))^σ'∘σ'`, twists
/// applied on coordinates of the materialized composites. In degree 0,
/// `(δf₀)(g)(c) = ψ(g(c), f₀)`.
pub fn td_delta_operator(f: &TdCochain, tdm: &TdModule, guard: &Guard) -> Result<HomOperator> {
    let n = f.degree();
    let c = &tdm.coalgebra;
    let (l, b) = (tdm.module.algebra().space().clone(), tdm.module.space().clone());
    guard_induction(n + 1, &tdm.module, c, guard)?;
    let dc = c.dim();
    if n == 0 {
        let mut map = HomOperator::zero(c.clone(), vec![l.clone()], b.clone()).map().clone();
        let f0 = f.inducing.coordinates();
        for x in 0..l.dim() {
            let value = tdm.module.action().apply_dense(&[unit(l.dim(), x), f0.to_vec()])?;
            for a in 0..dc {
                for (w, q) in value.iter().enumerate() {
                    if !q.is_zero() {
                        map.add_entry(vec![x * dc + a], vec![w * dc + a], q);
                    }
                }
            }
        }
        return HomOperator::from_map(map, c.clone(), vec![l], b);
    }
    let big_f = induced_cochain(&f.inducing, c)?;
    let psi = tdm.psi()?.materialize()?;
    let phi = tdm.phi()?.materialize()?;
    let first = psi.compose_at(1, &big_f)?;
    let second = big_f.compose_at(0, &phi)?;
    let mut delta = HomOperator::zero(c.clone(), vec![l; n + 1], b);
    for sigma in unshuffles(1, n) {
        let term = first.twist(&sigma)?.precompose(&sigma)?;
        delta = delta.add(&term.scale(&scalar::sign(sigma.sign())))?;
    }
    for sigma in unshuffles(2, n - 1) {
        let term = second.twist(&sigma)?.precompose(&sigma)?;
        delta = delta.sub(&term.scale(&scalar::sign(sigma.sign())))?;
    }
    Ok(delta)
}

fn unit(dim: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![scalar::zero(); dim];
    v[i] = scalar::one();
    v
}

/// `δF` from the direct formula, pulled back to an inducing cochain. An
/// operator outside the image of `ι_{n+1}` is an internal inconsistency.
pub fn td_differential_direct(f: &TdCochain, tdm: &TdModule, guard: &Guard) -> Result<TdCochain> {
    let n = f.degree();
    let delta = td_delta_operator(f, tdm, guard)?;
    let iota = induction_matrix(n + 1, &tdm.module, &tdm.coalgebra, guard)?;
    let outside = || Error::Consistency(format!("directly computed δ of a degree-{n} cochain is not induced"));
    let target = iota.coordinates_of(&delta).ok_or_else(outside)?;
    let pre = iota.matrix.solve(&target)?.ok_or_else(outside)?;
    let (l, b) = (tdm.module.algebra().space().clone(), tdm.module.space().clone());
    Ok(TdCochain { inducing: AltCochain::from_coordinates(l, b, n + 1, pre)? })
}

/// Everything needed for the twisted cohomology up to `maxdeg`.
#[derive(Clone, Debug)]
pub struct TdComplex {
    pub maxdeg: usize,
    /// `dim Alt^k`, `k = 0..=maxdeg+1`.
    pub alt_dims: Vec<usize>,
    /// `dim ker ι_k`.
    pub kernel_dims: Vec<usize>,
    /// `dim TDalt^k = rank ι_k`.
    pub td_dims: Vec<usize>,
    /// `rank δ_k = rank ι_{k+1} d_k`, `k = 0..=maxdeg`.
    pub delta_ranks: Vec<usize>,
    /// `dim H^k`, `k = 0..=maxdeg`.
    pub cohomology: Vec<usize>,
    pub classical: ComplexMatrices,
    pub inductions: Vec<Induction>,
}

pub fn td_complex(tdm: &TdModule, maxdeg: usize, guard: &Guard) -> Result<TdComplex> {
    let classical = ce_matrices(&tdm.module, maxdeg)?;
    let inductions: Vec<Induction> =
        (0..=maxdeg + 1).map(|k| induction_matrix(k, &tdm.module, &tdm.coalgebra, guard)).collect::<Result<_>>()?;
    let mut delta_ranks = Vec::with_capacity(maxdeg + 1);
    for (k, d) in classical.maps().iter().enumerate() {
        check_well_defined(k, &inductions[k], &inductions[k + 1], d)?;
        delta_ranks.push(inductions[k + 1].matrix.mul(d)?.rank());
    }
    let alt_dims = classical.dims();
    let td_dims: Vec<usize> = inductions.iter().map(Induction::rank).collect();
    let kernel_dims = alt_dims.iter().zip(&td_dims).map(|(a, t)| a - t).collect();
    let cohomology = (0..=maxdeg)
        .map(|k| td_dims[k] - delta_ranks[k] - if k == 0 { 0 } else { delta_ranks[k - 1] })
        .collect();
    Ok(TdComplex { maxdeg, alt_dims, kernel_dims, td_dims, delta_ranks, cohomology, classical, inductions })
}

pub fn td_cohomology_dims(tdm: &TdModule, maxdeg: usize, guard: &Guard) -> Result<Vec<usize>> {
    Ok(td_complex(tdm, maxdeg, guard)?.cohomology)
}

/// `{β ∈ B : Ψ(α, β) = 0 for all α}`, from the matrix of `β ↦ Ψ(α, β)`
/// stacked over matrix units `α = E_{x,a}`.
pub fn invariants_h0(tdm: &TdModule) -> Result<Vec<Vec<Scalar>>> {
    let (l, b) = (tdm.module.algebra().space(), tdm.module.space());
    let dc = tdm.coalgebra.dim();
    let mut stacked = RationalMatrix::zeros(l.dim() * dc * b.dim() * dc, b.dim());
    for x in 0..l.dim() {
        for a in 0..dc {
            let block = (x * dc + a) * b.dim() * dc;
            for beta in 0..b.dim() {
                // Ψ(E_{x,a}, β)(c_a) = ψ(x, β), zero at every other c
                for (w, q) in tdm.module.action().apply_dense(&[unit(l.dim(), x), unit(b.dim(), beta)])?.iter().enumerate() {
                    if !q.is_zero() {
                        stacked.set(block + w * dc + a, beta, q.clone());
                    }
                }
            }
        }
    }
    Ok(stacked.kernel_basis())
}
