//! Elements of `Hom(C, L)`, the interchange map `Λ`, and the operators
//! `Φ^σ = φ_* ∘ Δ^{(n-1)*} ∘ σ^* ∘ Λ` induced by a multilinear `φ`.
//!
//! An induced operator is kept as its data `(φ, C, σ)`. [`InducedOperator::evaluate`]
//! runs the Sweedler formula literally; [`InducedOperator::materialize`]
//! produces its structure constants on the matrix-unit bases of the Hom
//! spaces, where the index of `E_{t,s} : c_s ↦ t` is `t · dim C + s`.

use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::multilinear::MultilinearMap;
use crate::coalgebra::Coalgebra;
use crate::error::{Error, Result};
use crate::linalg::permutation::Permutation;
use crate::linalg::scalar::{self, Scalar};
use crate::linalg::RationalMatrix;
use crate::space::{BasedSpace, Space};
use crate::witness::{CheckReport, Verdict};

/// A linear map `C → L` as a `dim L × dim C` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomElement {
    coalgebra: Arc<Coalgebra>,
    target: Space,
    matrix: RationalMatrix,
}

impl HomElement {
    pub fn new(coalgebra: Arc<Coalgebra>, target: Space, matrix: RationalMatrix) -> Result<Self> {
        if matrix.rows() != target.dim() || matrix.cols() != coalgebra.dim() {
            return Err(Error::Shape(format!(
                "Hom({}, {}) needs a {}×{} matrix, got {}×{}",
                coalgebra.name(),
                target.name(),
                target.dim(),
                coalgebra.dim(),
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(Self { coalgebra, target, matrix })
    }

    pub fn zero(coalgebra: Arc<Coalgebra>, target: Space) -> Self {
        let matrix = RationalMatrix::zeros(target.dim(), coalgebra.dim());
        Self { coalgebra, target, matrix }
    }

    /// The matrix unit `E_{t,s}` sending `c_s` to the `t`-th basis vector.
    pub fn unit(coalgebra: Arc<Coalgebra>, target: Space, t: usize, s: usize) -> Self {
        let mut e = Self::zero(coalgebra, target);
        e.matrix.set(t, s, scalar::one());
        e
    }

    /// All matrix units in Hom-index order.
    pub fn basis(coalgebra: &Arc<Coalgebra>, target: &Space) -> Vec<Self> {
        let mut out = Vec::with_capacity(target.dim() * coalgebra.dim());
        for t in 0..target.dim() {
            for s in 0..coalgebra.dim() {
                out.push(Self::unit(coalgebra.clone(), target.clone(), t, s));
            }
        }
        out
    }

    pub fn from_coordinates(coalgebra: Arc<Coalgebra>, target: Space, coords: &[Scalar]) -> Result<Self> {
        let dc = coalgebra.dim();
        if coords.len() != dc * target.dim() {
            return Err(Error::Shape(format!("{} coordinates for Hom of dimension {}", coords.len(), dc * target.dim())));
        }
        let mut e = Self::zero(coalgebra, target);
        for (i, q) in coords.iter().enumerate() {
            if !q.is_zero() {
                e.matrix.set(i / dc, i % dc, q.clone());
            }
        }
        Ok(e)
    }

    pub fn coordinates(&self) -> Vec<Scalar> {
        let mut out = Vec::with_capacity(self.matrix.rows() * self.matrix.cols());
        for t in 0..self.matrix.rows() {
            out.extend_from_slice(self.matrix.row(t));
        }
        out
    }

    pub fn coalgebra(&self) -> &Arc<Coalgebra> {
        &self.coalgebra
    }

    pub fn target(&self) -> &Space {
        &self.target
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.matrix
    }

    pub fn space(&self) -> Space {
        BasedSpace::hom(self.coalgebra.space(), &self.target)
    }

    /// `f(c_s)`.
    pub fn apply(&self, s: usize) -> Vec<Scalar> {
        self.matrix.column(s)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    fn combine(&self, other: &Self, q: &Scalar) -> Result<Self> {
        if *self.coalgebra != *other.coalgebra || self.target.dim() != other.target.dim() {
            return Err(Error::Shape("Hom elements of different spaces".into()));
        }
        let coords: Vec<Scalar> = self.coordinates().iter().zip(other.coordinates()).map(|(a, b)| a + b * q).collect();
        Self::from_coordinates(self.coalgebra.clone(), self.target.clone(), &coords)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, &scalar::one())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, &-scalar::one())
    }

    /// Short label: the matrix-unit label when `self` is a unit, otherwise
    /// the nonzero coordinates.
    pub fn label(&self) -> String {
        let space = self.space();
        let terms: Vec<String> = self
            .coordinates()
            .iter()
            .enumerate()
            .filter(|(_, q)| !q.is_zero())
            .map(|(i, q)| if *q == scalar::one() { space.label(i).to_string() } else { format!("{}*{}", scalar::format(q), space.label(i)) })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

/// `Λ(f_1 ⊗ … ⊗ f_n) : C_1 ⊗ … ⊗ C_n → L_1 ⊗ … ⊗ L_n`, the map
/// `c_1 ⊗ … ⊗ c_n ↦ f_1(c_1) ⊗ … ⊗ f_n(c_n)`.
pub fn interchange(fs: &[HomElement]) -> Result<MultilinearMap> {
    if fs.is_empty() {
        return Err(Error::Arity("interchange of an empty list".into()));
    }
    let domain: Vec<Space> = fs.iter().map(|f| f.coalgebra.space().clone()).collect();
    let codomain: Vec<Space> = fs.iter().map(|f| f.target.clone()).collect();
    // nonzero (row, col, value) per factor
    let nonzero: Vec<Vec<(usize, usize, Scalar)>> = fs
        .iter()
        .map(|f| {
            let mut v = Vec::new();
            for s in 0..f.matrix.cols() {
                for t in 0..f.matrix.rows() {
                    let q = f.matrix.get(t, s);
                    if !q.is_zero() {
                        v.push((t, s, q.clone()));
                    }
                }
            }
            v
        })
        .collect();
    let mut map = MultilinearMap::zero(domain, codomain);
    let mut partial: Vec<(Vec<usize>, Vec<usize>, Scalar)> = vec![(Vec::new(), Vec::new(), scalar::one())];
    for factor in &nonzero {
        let mut next = Vec::with_capacity(partial.len() * factor.len());
        for (ins, outs, q) in &partial {
            for (t, s, c) in factor {
                let mut i = ins.clone();
                i.push(*s);
                let mut o = outs.clone();
                o.push(*t);
                next.push((i, o, q * c));
            }
        }
        partial = next;
    }
    for (i, o, q) in partial {
        map.add_entry(i, o, &q);
    }
    Ok(map)
}

/// A multilinear operator `Hom(C, V_1) ⊗ … ⊗ Hom(C, V_n) → Hom(C, W)` by
/// structure constants on matrix units.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomOperator {
    map: MultilinearMap,
    coalgebra: Arc<Coalgebra>,
    inputs: Vec<Space>,
    target: Space,
}

impl HomOperator {
    pub fn zero(coalgebra: Arc<Coalgebra>, inputs: Vec<Space>, target: Space) -> Self {
        let domain = inputs.iter().map(|v| BasedSpace::hom(coalgebra.space(), v)).collect();
        let map = MultilinearMap::zero(domain, vec![BasedSpace::hom(coalgebra.space(), &target)]);
        Self { map, coalgebra, inputs, target }
    }

    /// Wraps structure constants already expressed in matrix-unit indices.
    pub fn from_map(map: MultilinearMap, coalgebra: Arc<Coalgebra>, inputs: Vec<Space>, target: Space) -> Result<Self> {
        let shell = Self::zero(coalgebra, inputs, target);
        if !shell.map.same_shape(&map) {
            return Err(Error::Shape("operator map does not match the Hom spaces".into()));
        }
        Ok(Self { map: map.with_spaces(shell.map.domain().to_vec(), shell.map.codomain().to_vec())?, ..shell })
    }

    pub fn map(&self) -> &MultilinearMap {
        &self.map
    }

    pub fn coalgebra(&self) -> &Arc<Coalgebra> {
        &self.coalgebra
    }

    pub fn inputs(&self) -> &[Space] {
        &self.inputs
    }

    pub fn target(&self) -> &Space {
        &self.target
    }

    pub fn arity(&self) -> usize {
        self.map.arity()
    }

    pub fn is_zero(&self) -> bool {
        self.map.is_zero()
    }

    fn same_coalgebra(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.coalgebra, &other.coalgebra) || *self.coalgebra == *other.coalgebra {
            Ok(())
        } else {
            Err(Error::Shape(format!(
                "operators over different coalgebras {} and {}",
                self.coalgebra.name(),
                other.coalgebra.name()
            )))
        }
    }

    fn with_map(&self, map: MultilinearMap) -> Self {
        Self { map, coalgebra: self.coalgebra.clone(), inputs: self.inputs.clone(), target: self.target.clone() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_coalgebra(other)?;
        Ok(self.with_map(self.map.add(&other.map)?))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_coalgebra(other)?;
        Ok(self.with_map(self.map.sub(&other.map)?))
    }

    pub fn scale(&self, q: &Scalar) -> Self {
        self.with_map(self.map.scale(q))
    }

    pub fn neg(&self) -> Self {
        self.with_map(self.map.neg())
    }

    /// `self ∘ σ` on the argument list.
    pub fn precompose(&self, sigma: &Permutation) -> Result<Self> {
        let map = self.map.precompose(sigma)?;
        let inputs = sigma.inverse().permute_slice(&self.inputs);
        Ok(Self { map, coalgebra: self.coalgebra.clone(), inputs, target: self.target.clone() })
    }

    /// `self ∘ (1 ⊗ … ⊗ inner ⊗ … ⊗ 1)` with `inner` feeding argument `slot`.
    pub fn compose_at(&self, slot: usize, inner: &Self) -> Result<Self> {
        self.same_coalgebra(inner)?;
        if slot >= self.arity() || self.inputs[slot].dim() != inner.target.dim() {
            return Err(Error::Shape(format!("operator into {} cannot feed argument {slot}", inner.target.name())));
        }
        let map = self.map.compose_at(slot, &inner.map)?;
        let mut inputs = self.inputs[..slot].to_vec();
        inputs.extend(inner.inputs.iter().cloned());
        inputs.extend(self.inputs[slot + 1..].iter().cloned());
        Ok(Self { map, coalgebra: self.coalgebra.clone(), inputs, target: self.target.clone() })
    }

    /// `H^σ`: routes argument `i` to Sweedler leg `σ(i)`. On coordinates the
    /// coalgebra index `a` of each argument key is replaced by `σ · a`
    /// (pulling), target indices stay. For an operator induced by `h` this
    /// is the operator `h_* ∘ Δ^* ∘ σ^* ∘ Λ`.
    pub fn twist(&self, sigma: &Permutation) -> Result<Self> {
        if sigma.len() != self.arity() {
            return Err(Error::Shape(format!("twist by a permutation of {} letters on arity {}", sigma.len(), self.arity())));
        }
        let dc = self.coalgebra.dim();
        let mut out = MultilinearMap::zero(self.map.domain().to_vec(), self.map.codomain().to_vec());
        for (key, outputs, q) in self.map.triples() {
            let legs: Vec<usize> = key.iter().map(|k| k % dc).collect();
            let moved = sigma.permute_slice(&legs);
            let new_key = key.iter().zip(&moved).map(|(k, a)| (k / dc) * dc + a).collect();
            out.add_entry(new_key, outputs.clone(), q);
        }
        Ok(self.with_map(out))
    }

    pub fn equality_verdict(&self, other: &Self) -> Result<Verdict> {
        self.same_coalgebra(other)?;
        self.map.equality_verdict(&other.map)
    }

    pub fn zero_verdict(&self) -> Verdict {
        self.map.zero_verdict()
    }

    pub fn evaluate(&self, args: &[HomElement]) -> Result<HomElement> {
        if args.len() != self.arity() {
            return Err(Error::Arity(format!("{} arguments for an operator of arity {}", args.len(), self.arity())));
        }
        let coords: Vec<Vec<Scalar>> = args.iter().map(HomElement::coordinates).collect();
        let v = self.map.apply_dense(&coords)?;
        HomElement::from_coordinates(self.coalgebra.clone(), self.target.clone(), &v)
    }
}

/// `Φ^σ` for `φ : V_1 ⊗ … ⊗ V_n → W` over `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedOperator {
    base: MultilinearMap,
    coalgebra: Arc<Coalgebra>,
    twist: Permutation,
}

/// `Φ = φ_* ∘ Δ^{(n-1)*} ∘ Λ`.
pub fn induced(phi: &MultilinearMap, coalgebra: &Arc<Coalgebra>) -> Result<InducedOperator> {
    twisted(phi, coalgebra, &Permutation::identity(phi.arity()))
}

/// `Φ^σ`, evaluated as `φ(f_1(c_{(σ(1))}), …, f_n(c_{(σ(n))}))`.
pub fn twisted(phi: &MultilinearMap, coalgebra: &Arc<Coalgebra>, sigma: &Permutation) -> Result<InducedOperator> {
    if phi.arity() == 0 {
        return Err(Error::Arity("induced operator of arity 0".into()));
    }
    if phi.codomain().len() != 1 {
        return Err(Error::Shape("induced operators need a single codomain factor".into()));
    }
    if sigma.len() != phi.arity() {
        return Err(Error::Shape(format!("twist of {} letters for arity {}", sigma.len(), phi.arity())));
    }
    if let Verdict::Fail(witness) = coalgebra.check_coassociativity() {
        return Err(Error::Axiom { axiom: "coassociativity (Δ⊗1)Δ = (1⊗Δ)Δ".into(), witness });
    }
    Ok(InducedOperator { base: phi.clone(), coalgebra: coalgebra.clone(), twist: sigma.clone() })
}

impl InducedOperator {
    pub fn base(&self) -> &MultilinearMap {
        &self.base
    }

    pub fn coalgebra(&self) -> &Arc<Coalgebra> {
        &self.coalgebra
    }

    pub fn twist(&self) -> &Permutation {
        &self.twist
    }

    pub fn arity(&self) -> usize {
        self.base.arity()
    }

    pub fn is_twisted(&self) -> bool {
        !self.twist.is_identity()
    }

    /// Same data with a different twist.
    pub fn with_twist(&self, sigma: &Permutation) -> Result<Self> {
        twisted(&self.base, &self.coalgebra, sigma)
    }

    pub fn evaluate(&self, args: &[HomElement]) -> Result<HomElement> {
        let n = self.arity();
        if args.len() != n {
            return Err(Error::Arity(format!("{} arguments for an operator of arity {n}", args.len())));
        }
        for (i, (f, v)) in args.iter().zip(self.base.domain()).enumerate() {
            if *f.coalgebra != *self.coalgebra || f.target.dim() != v.dim() {
                return Err(Error::Shape(format!("argument {i} is not in Hom({}, {})", self.coalgebra.name(), v.name())));
            }
        }
        let target = self.base.target().clone();
        let mut out = RationalMatrix::zeros(target.dim(), self.coalgebra.dim());
        for c in 0..self.coalgebra.dim() {
            for (legs, q) in self.coalgebra.sweedler(n, c)? {
                let vals: Vec<Vec<Scalar>> = (0..n).map(|i| args[i].apply(legs[self.twist.apply(i)])).collect();
                let w = self.base.apply_dense(&vals)?;
                for (t, x) in w.iter().enumerate() {
                    if !x.is_zero() {
                        out.add_to(t, c, &(x * &q));
                    }
                }
            }
        }
        HomElement::new(self.coalgebra.clone(), target, out)
    }

    /// Structure constants on matrix units: `E_{v_1,a_1} ⊗ … ↦ Σ q·r E_{w,c}`
    /// over Sweedler terms `q · c_{s_1} ⊗ … ⊗ c_{s_n}` of `Δ^{(n-1)}(c)` with
    /// `a_i = s_{σ(i)}` and entries `r · w` of `φ(v_1, …, v_n)`.
    pub fn materialize(&self) -> Result<HomOperator> {
        let n = self.arity();
        let dc = self.coalgebra.dim();
        let inputs = self.base.domain().to_vec();
        let target = self.base.target().clone();
        let mut op = HomOperator::zero(self.coalgebra.clone(), inputs.clone(), target.clone());
        let delta = self.coalgebra.iterated_coproduct(n)?;
        let mut map = op.map.clone();
        for (c, row) in delta.entries() {
            for (legs, q) in row {
                let a = self.twist.permute_slice(legs);
                for (v, w, r) in self.base.triples() {
                    let key = v.iter().zip(&a).map(|(vi, ai)| vi * dc + ai).collect();
                    map.add_entry(key, vec![w[0] * dc + c[0]], &(q * r));
                }
            }
        }
        op.map = map;
        Ok(op)
    }
}

/// The operator induced by `ψ ∘ (1 ⊗ … ⊗ φ ⊗ … ⊗ 1)`, with `φ` feeding
/// argument `slot` of `ψ`; both inputs must be untwisted.
pub fn compose_induced(psi: &InducedOperator, phi: &InducedOperator, slot: usize) -> Result<InducedOperator> {
    if psi.is_twisted() || phi.is_twisted() {
        return Err(Error::Argument("compose_induced takes untwisted operators; twist the composite instead".into()));
    }
    if *psi.coalgebra != *phi.coalgebra {
        return Err(Error::Shape("operators over different coalgebras".into()));
    }
    if slot >= psi.arity() || psi.base.domain()[slot].dim() != phi.base.target().dim() {
        return Err(Error::Shape(format!(
            "{} cannot feed argument {slot} of the outer operator",
            phi.base.target().name()
        )));
    }
    induced(&psi.base.compose_at(slot, &phi.base)?, &psi.coalgebra)
}

pub fn td_skew_identity(sigma: &Permutation) -> String {
    format!("TD skew Φ∘σ = (−1)^σ Φ^(σ⁻¹), σ = {sigma}")
}

/// `Φ ∘ σ = (−1)^σ Φ^{σ⁻¹}` for every `σ ∈ S_n`, as operator equalities.
pub fn check_td_skew(phi: &MultilinearMap, coalgebra: &Arc<Coalgebra>, max_arity: usize) -> Result<CheckReport> {
    let n = phi.arity();
    if n > max_arity {
        return Err(Error::Guard(format!("TD skew check of arity {n} exceeds the limit {max_arity}")));
    }
    let plain = induced(phi, coalgebra)?.materialize()?;
    let mut report = CheckReport::new();
    for sigma in Permutation::all(n) {
        let lhs = plain.precompose(&sigma)?;
        let rhs = twisted(phi, coalgebra, &sigma.inverse())?
            .materialize()?
            .scale(&scalar::sign(sigma.sign()));
        report.push(td_skew_identity(&sigma), lhs.equality_verdict(&rhs)?);
    }
    Ok(report)
}
