//! Sparse structure constants of multilinear maps `V_1 ⊗ … ⊗ V_n → W_1 ⊗ … ⊗ W_m`.
//!
//! Entries are keyed by the input basis tuple and hold a sparse output
//! vector keyed by the output basis tuple. Zero coefficients are never
//! stored, so two maps are equal exactly when their entry tables are.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::permutation::Permutation;
use crate::linalg::scalar::{self, Scalar};
use crate::space::Space;
use crate::witness::{Verdict, Witness};

pub type SparseVector = BTreeMap<Vec<usize>, Scalar>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultilinearMap {
    domain: Vec<Space>,
    codomain: Vec<Space>,
    entries: BTreeMap<Vec<usize>, SparseVector>,
}

impl MultilinearMap {
    pub fn zero(domain: Vec<Space>, codomain: Vec<Space>) -> Self {
        Self { domain, codomain, entries: BTreeMap::new() }
    }

    /// Builds a map from `(inputs, outputs, coefficient)` triples, summing
    /// repeated keys. Indices are range-checked.
    pub fn from_entries<I>(domain: Vec<Space>, codomain: Vec<Space>, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Vec<usize>, Scalar)>,
    {
        let mut map = Self::zero(domain, codomain);
        for (n, (inputs, outputs, q)) in entries.into_iter().enumerate() {
            map.check_key(&inputs, &outputs).map_err(|e| Error::Malformed(format!("entry {n}: {e}")))?;
            map.add_entry(inputs, outputs, &q);
        }
        Ok(map)
    }

    /// Convenience for single-factor codomains: `(inputs, output, coefficient)`.
    pub fn from_simple_entries<I>(domain: Vec<Space>, codomain: Space, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, usize, Scalar)>,
    {
        Self::from_entries(domain, vec![codomain], entries.into_iter().map(|(i, o, q)| (i, vec![o], q)))
    }

    pub fn identity(space: Space) -> Self {
        let mut map = Self::zero(vec![space.clone()], vec![space.clone()]);
        for i in 0..space.dim() {
            map.add_entry(vec![i], vec![i], &scalar::one());
        }
        map
    }

    fn check_key(&self, inputs: &[usize], outputs: &[usize]) -> std::result::Result<(), String> {
        if inputs.len() != self.domain.len() || outputs.len() != self.codomain.len() {
            return Err(format!(
                "expected {} input and {} output indices, got {} and {}",
                self.domain.len(),
                self.codomain.len(),
                inputs.len(),
                outputs.len()
            ));
        }
        for (&i, space) in inputs.iter().zip(&self.domain).chain(outputs.iter().zip(&self.codomain)) {
            if i >= space.dim() {
                return Err(format!("index {i} out of range for space {:?} of dimension {}", space.name(), space.dim()));
            }
        }
        Ok(())
    }

    /// Adds `q` to the coefficient of `outputs` at `inputs`.
    pub fn add_entry(&mut self, inputs: Vec<usize>, outputs: Vec<usize>, q: &Scalar) {
        if q.is_zero() {
            return;
        }
        let row = self.entries.entry(inputs.clone()).or_default();
        let slot = row.entry(outputs.clone()).or_insert_with(scalar::zero);
        *slot += q;
        if slot.is_zero() {
            row.remove(&outputs);
            if row.is_empty() {
                self.entries.remove(&inputs);
            }
        }
    }

    pub fn arity(&self) -> usize {
        self.domain.len()
    }

    pub fn domain(&self) -> &[Space] {
        &self.domain
    }

    pub fn codomain(&self) -> &[Space] {
        &self.codomain
    }

    /// The single codomain factor; panics for tensor-valued maps.
    pub fn target(&self) -> &Space {
        assert_eq!(self.codomain.len(), 1, "map has a tensor-product codomain");
        &self.codomain[0]
    }

    pub fn entries(&self) -> &BTreeMap<Vec<usize>, SparseVector> {
        &self.entries
    }

    /// Flat `(inputs, outputs, coefficient)` listing in key order.
    pub fn triples(&self) -> impl Iterator<Item = (&Vec<usize>, &Vec<usize>, &Scalar)> {
        self.entries.iter().flat_map(|(i, row)| row.iter().map(move |(o, q)| (i, o, q)))
    }

    pub fn nnz(&self) -> usize {
        self.entries.values().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Value on a basis tuple.
    pub fn on_basis(&self, inputs: &[usize]) -> Option<&SparseVector> {
        self.entries.get(inputs)
    }

    /// Same shape, compared by dimensions (space names may differ).
    pub fn same_shape(&self, other: &Self) -> bool {
        let dims = |v: &[Space]| v.iter().map(|s| s.dim()).collect::<Vec<_>>();
        dims(&self.domain) == dims(&other.domain) && dims(&self.codomain) == dims(&other.codomain)
    }

    fn require_same_shape(&self, other: &Self, what: &str) -> Result<()> {
        if self.same_shape(other) {
            Ok(())
        } else {
            Err(Error::Shape(format!("{what}: maps of different shapes")))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.require_same_shape(other, "add")?;
        let mut out = self.clone();
        for (i, o, q) in other.triples() {
            out.add_entry(i.clone(), o.clone(), q);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.require_same_shape(other, "sub")?;
        let mut out = self.clone();
        for (i, o, q) in other.triples() {
            out.add_entry(i.clone(), o.clone(), &-q);
        }
        Ok(out)
    }

    pub fn scale(&self, q: &Scalar) -> Self {
        let mut out = Self::zero(self.domain.clone(), self.codomain.clone());
        if q.is_zero() {
            return out;
        }
        for (i, o, c) in self.triples() {
            out.add_entry(i.clone(), o.clone(), &(c * q));
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-scalar::one())
    }

    /// `self ∘ σ`, i.e. `(x_1, …, x_n) ↦ self(x_{σ(1)}, …, x_{σ(n)})`.
    pub fn precompose(&self, sigma: &Permutation) -> Result<Self> {
        if sigma.len() != self.arity() {
            return Err(Error::Shape(format!("permutation of {} letters on a map of arity {}", sigma.len(), self.arity())));
        }
        // key k of self becomes key j with j_{σ(t)} = k_t
        let inv = sigma.inverse();
        let domain = inv.permute_slice(&self.domain);
        let mut out = Self::zero(domain, self.codomain.clone());
        for (k, row) in &self.entries {
            let j = inv.permute_slice(k);
            out.entries.insert(j, row.clone());
        }
        Ok(out)
    }

    /// Permutes output legs: `σ_* ∘ self`, moving output tuple `o` to
    /// `(o_{σ(1)}, …, o_{σ(m)})`.
    pub fn permute_outputs(&self, sigma: &Permutation) -> Result<Self> {
        if sigma.len() != self.codomain.len() {
            return Err(Error::Shape(format!(
                "permutation of {} letters on {} output legs",
                sigma.len(),
                self.codomain.len()
            )));
        }
        let mut out = Self::zero(self.domain.clone(), sigma.permute_slice(&self.codomain));
        for (i, o, q) in self.triples() {
            out.add_entry(i.clone(), sigma.permute_slice(o), q);
        }
        Ok(out)
    }

    /// `self ∘ (1^{⊗slot} ⊗ inner ⊗ 1^{⊗…})`: feeds `inner` into input `slot`.
    pub fn compose_at(&self, slot: usize, inner: &Self) -> Result<Self> {
        if slot >= self.arity() {
            return Err(Error::Shape(format!("slot {slot} on a map of arity {}", self.arity())));
        }
        if inner.codomain.len() != 1 || inner.codomain[0].dim() != self.domain[slot].dim() {
            return Err(Error::Shape(format!(
                "inner map into {:?} cannot feed slot {slot} ({:?})",
                inner.codomain.iter().map(|s| s.name()).collect::<Vec<_>>(),
                self.domain[slot].name()
            )));
        }
        let mut by_output: HashMap<usize, Vec<(&Vec<usize>, &Scalar)>> = HashMap::new();
        for (i, o, q) in inner.triples() {
            by_output.entry(o[0]).or_default().push((i, q));
        }
        let mut domain = self.domain[..slot].to_vec();
        domain.extend(inner.domain.iter().cloned());
        domain.extend(self.domain[slot + 1..].iter().cloned());
        let mut out = Self::zero(domain, self.codomain.clone());
        for (x, row) in &self.entries {
            let Some(feeders) = by_output.get(&x[slot]) else { continue };
            for (y, c) in feeders {
                let mut key = x[..slot].to_vec();
                key.extend(y.iter().copied());
                key.extend(x[slot + 1..].iter().copied());
                for (o, q) in row {
                    out.add_entry(key.clone(), o.clone(), &(q * *c));
                }
            }
        }
        Ok(out)
    }

    /// `(1 ⊗ … ⊗ post ⊗ … ⊗ 1) ∘ self`: applies `post` (arity 1) to output
    /// leg `leg`, splicing its codomain factors in place of that leg.
    pub fn post_on_leg(&self, leg: usize, post: &Self) -> Result<Self> {
        if leg >= self.codomain.len() || post.arity() != 1 || post.domain[0].dim() != self.codomain[leg].dim() {
            return Err(Error::Shape(format!("cannot apply map on output leg {leg}")));
        }
        let mut codomain = self.codomain[..leg].to_vec();
        codomain.extend(post.codomain.iter().cloned());
        codomain.extend(self.codomain[leg + 1..].iter().cloned());
        let mut out = Self::zero(self.domain.clone(), codomain);
        for (i, o, q) in self.triples() {
            let Some(images) = post.entries.get(&vec![o[leg]]) else { continue };
            for (p, c) in images {
                let mut key = o[..leg].to_vec();
                key.extend(p.iter().copied());
                key.extend(o[leg + 1..].iter().copied());
                out.add_entry(i.clone(), key, &(q * c));
            }
        }
        Ok(out)
    }

    /// Evaluates on dense argument vectors.
    pub fn apply(&self, args: &[Vec<Scalar>]) -> Result<SparseVector> {
        if args.len() != self.arity() {
            return Err(Error::Arity(format!("{} arguments for a map of arity {}", args.len(), self.arity())));
        }
        for (a, s) in args.iter().zip(&self.domain) {
            if a.len() != s.dim() {
                return Err(Error::Shape(format!("argument of length {} for space of dimension {}", a.len(), s.dim())));
            }
        }
        let mut out = SparseVector::new();
        for (inputs, row) in &self.entries {
            let mut coeff = scalar::one();
            for (a, &i) in args.iter().zip(inputs) {
                if a[i].is_zero() {
                    coeff = scalar::zero();
                    break;
                }
                coeff *= &a[i];
            }
            if coeff.is_zero() {
                continue;
            }
            for (o, q) in row {
                let slot = out.entry(o.clone()).or_insert_with(scalar::zero);
                *slot += q * &coeff;
            }
        }
        out.retain(|_, q| !q.is_zero());
        Ok(out)
    }

    /// Evaluates a map with a single codomain factor to a dense vector.
    pub fn apply_dense(&self, args: &[Vec<Scalar>]) -> Result<Vec<Scalar>> {
        let dim = self.target().dim();
        let mut out = vec![scalar::zero(); dim];
        for (o, q) in self.apply(args)? {
            out[o[0]] = q;
        }
        Ok(out)
    }

    /// Labels for a witness at the given input tuple.
    pub fn witness_at(&self, inputs: &[usize], residual: &SparseVector) -> Witness {
        Witness {
            tuple: inputs.iter().zip(&self.domain).map(|(&i, s)| s.label(i).to_string()).collect(),
            residual: residual
                .iter()
                .map(|(o, q)| {
                    let label: Vec<&str> = o.iter().zip(&self.codomain).map(|(&i, s)| s.label(i)).collect();
                    (label.join("⊗"), q.clone())
                })
                .collect(),
        }
    }

    /// `Pass` when the map is zero, otherwise the first nonzero basis tuple.
    pub fn zero_verdict(&self) -> Verdict {
        match self.entries.iter().next() {
            None => Verdict::Pass,
            Some((inputs, row)) => Verdict::Fail(self.witness_at(inputs, row)),
        }
    }

    /// Compares two maps; the witness carries `self − other`.
    pub fn equality_verdict(&self, other: &Self) -> Result<Verdict> {
        Ok(self.sub(other)?.zero_verdict())
    }

    /// Whether `self ∘ σ = sign(σ) · self` for every σ (checked on adjacent
    /// transpositions, which generate the symmetric group).
    pub fn skew_verdict(&self) -> Result<Verdict> {
        let n = self.arity();
        for p in 0..n.saturating_sub(1) {
            let t = Permutation::transposition(n, p, p + 1)?;
            let v = self.precompose(&t)?.add(self)?.zero_verdict();
            if !v.passed() {
                return Ok(v);
            }
        }
        Ok(Verdict::Pass)
    }

    pub fn symmetric_verdict(&self) -> Result<Verdict> {
        let n = self.arity();
        for p in 0..n.saturating_sub(1) {
            let t = Permutation::transposition(n, p, p + 1)?;
            let v = self.precompose(&t)?.sub(self)?.zero_verdict();
            if !v.passed() {
                return Ok(v);
            }
        }
        Ok(Verdict::Pass)
    }

    /// Replaces the space handles (same dimensions) for relabelled output.
    pub fn with_spaces(&self, domain: Vec<Space>, codomain: Vec<Space>) -> Result<Self> {
        let out = Self { domain, codomain, entries: self.entries.clone() };
        if !out.same_shape(self) {
            return Err(Error::Shape("relabelling with spaces of different dimensions".into()));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::BasedSpace;
    use proptest::prelude::*;

    fn space(dim: usize) -> Space {
        BasedSpace::numbered("V", "v", dim)
    }

    fn random_map(arity: usize, dim: usize, vals: &[i64]) -> MultilinearMap {
        let v = space(dim);
        let mut m = MultilinearMap::zero(vec![v.clone(); arity], vec![v.clone()]);
        let mut it = vals.iter().cycle();
        for inputs in crate::linalg::tensor::multi_indices(&vec![dim; arity]) {
            for o in 0..dim {
                m.add_entry(inputs.clone(), vec![o], &scalar::int(*it.next().unwrap()));
            }
        }
        m
    }

    fn basis_vec(dim: usize, i: usize) -> Vec<Scalar> {
        (0..dim).map(|j| if i == j { scalar::one() } else { scalar::zero() }).collect()
    }

    #[test]
    fn out_of_range_entry_is_named() {
        let v = space(2);
        let err = MultilinearMap::from_simple_entries(vec![v.clone()], v, vec![(vec![0], 0, scalar::one()), (vec![2], 0, scalar::one())])
            .unwrap_err();
        assert!(err.to_string().contains("entry 1"), "{err}");
    }

    #[test]
    fn cancelling_entries_leave_no_trace() {
        let v = space(2);
        let m = MultilinearMap::from_simple_entries(
            vec![v.clone()],
            v,
            vec![(vec![0], 1, scalar::int(2)), (vec![0], 1, scalar::int(-2))],
        )
        .unwrap();
        assert!(m.is_zero());
    }

    #[test]
    fn precompose_pulls_arguments() {
        // m(x, y) = x_0 y_1 e_0 ; (m∘τ)(x, y) = m(y, x) = y_0 x_1 e_0
        let v = space(2);
        let m = MultilinearMap::from_simple_entries(vec![v.clone(), v.clone()], v, vec![(vec![0, 1], 0, scalar::one())]).unwrap();
        let t = m.precompose(&Permutation::transposition(2, 0, 1).unwrap()).unwrap();
        assert!(t.on_basis(&[1, 0]).is_some());
        assert!(t.on_basis(&[0, 1]).is_none());
    }

    proptest! {
        #[test]
        fn precompose_matches_evaluation(vals in prop::collection::vec(-3i64..=3, 27), a in 0usize..3, b in 0usize..3, c in 0usize..3) {
            let m = random_map(3, 3, &vals);
            let xi = Permutation::cycle(3, &[0, 1, 2]).unwrap();
            let args = vec![basis_vec(3, a), basis_vec(3, b), basis_vec(3, c)];
            let lhs = m.precompose(&xi).unwrap().apply(&args).unwrap();
            let rhs = m.apply(&xi.permute_slice(&args)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn compose_matches_evaluation(outer in prop::collection::vec(-3i64..=3, 8), inner in prop::collection::vec(-3i64..=3, 8),
                                      x in prop::collection::vec(-2i64..=2, 6)) {
            let f = random_map(2, 2, &outer);
            let g = random_map(2, 2, &inner);
            let h = f.compose_at(1, &g).unwrap();
            let a: Vec<Scalar> = x[0..2].iter().map(|&v| scalar::int(v)).collect();
            let b: Vec<Scalar> = x[2..4].iter().map(|&v| scalar::int(v)).collect();
            let c: Vec<Scalar> = x[4..6].iter().map(|&v| scalar::int(v)).collect();
            let inner_val = g.apply_dense(&[b.clone(), c.clone()]).unwrap();
            let literal = f.apply(&[a.clone(), inner_val]).unwrap();
            prop_assert_eq!(h.apply(&[a, b, c]).unwrap(), literal);
        }
    }
}
