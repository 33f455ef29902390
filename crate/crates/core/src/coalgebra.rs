//! Finite-dimensional coassociative coalgebras without counit.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::Zero;

use crate::algebra::multilinear::MultilinearMap;
use crate::error::{Error, Result};
use crate::linalg::permutation::Permutation;
use crate::linalg::scalar::{self, Scalar};
use crate::space::{BasedSpace, Space};
use crate::witness::Verdict;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SymmetryClass {
    Cocommutative,
    SkewCocommutative,
    Neither,
}

impl fmt::Display for SymmetryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SymmetryClass::Cocommutative => "cocommutative",
            SymmetryClass::SkewCocommutative => "skew_cocommutative",
            SymmetryClass::Neither => "neither",
        })
    }
}

pub struct Coalgebra {
    name: String,
    space: Space,
    coproduct: MultilinearMap,
    iterated: Mutex<BTreeMap<usize, Arc<MultilinearMap>>>,
}

impl Clone for Coalgebra {
    fn clone(&self) -> Self {
        Self::from_parts(self.name.clone(), self.space.clone(), self.coproduct.clone())
    }
}

impl PartialEq for Coalgebra {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.coproduct == other.coproduct
    }
}
impl Eq for Coalgebra {}

impl fmt::Debug for Coalgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Coalgebra")
            .field("name", &self.name)
            .field("dim", &self.dim())
            .field("coproduct_terms", &self.coproduct.nnz())
            .finish()
    }
}

impl Coalgebra {
    fn from_parts(name: String, space: Space, coproduct: MultilinearMap) -> Self {
        Self { name, space, coproduct, iterated: Mutex::new(BTreeMap::new()) }
    }

    /// Builds a coalgebra from `(source, left, right, coefficient)` terms,
    /// meaning `Δ(c_source)` contains `q · c_left ⊗ c_right`, and rejects it
    /// unless it is coassociative.
    pub fn new(name: impl Into<String>, space: Space, terms: Vec<(usize, usize, usize, Scalar)>) -> Result<Self> {
        let c = Self::new_unchecked(name, space, terms)?;
        if let Verdict::Fail(witness) = c.check_coassociativity() {
            return Err(Error::Axiom { axiom: "coassociativity (Δ⊗1)Δ = (1⊗Δ)Δ".into(), witness });
        }
        Ok(c)
    }

    /// Range-checks the terms but skips the coassociativity check.
    pub fn new_unchecked(name: impl Into<String>, space: Space, terms: Vec<(usize, usize, usize, Scalar)>) -> Result<Self> {
        let coproduct = MultilinearMap::from_entries(
            vec![space.clone()],
            vec![space.clone(), space.clone()],
            terms.into_iter().map(|(i, j, k, q)| (vec![i], vec![j, k], q)),
        )?;
        Ok(Self::from_parts(name.into(), space, coproduct))
    }

    pub fn from_coproduct(name: impl Into<String>, coproduct: MultilinearMap) -> Result<Self> {
        let space = coproduct.domain().first().cloned().ok_or_else(|| Error::Malformed("coproduct without domain".into()))?;
        if coproduct.arity() != 1 || coproduct.codomain().len() != 2 || !coproduct.codomain().iter().all(|s| s.dim() == space.dim()) {
            return Err(Error::Malformed("coproduct must map C to C ⊗ C".into()));
        }
        let c = Self::from_parts(name.into(), space, coproduct);
        if let Verdict::Fail(witness) = c.check_coassociativity() {
            return Err(Error::Axiom { axiom: "coassociativity (Δ⊗1)Δ = (1⊗Δ)Δ".into(), witness });
        }
        Ok(c)
    }

    /// Δ = 0 on the given space.
    pub fn zero(name: impl Into<String>, space: Space) -> Self {
        let coproduct = MultilinearMap::zero(vec![space.clone()], vec![space.clone(), space.clone()]);
        Self::from_parts(name.into(), space, coproduct)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn coproduct(&self) -> &MultilinearMap {
        &self.coproduct
    }

    /// Coproduct terms as `(source, left, right, coefficient)`.
    pub fn terms(&self) -> Vec<(usize, usize, usize, Scalar)> {
        self.coproduct.triples().map(|(i, o, q)| (i[0], o[0], o[1], q.clone())).collect()
    }

    /// Pass iff `(Δ⊗1)Δ − (1⊗Δ)Δ` vanishes; the witness names the first
    /// basis element where it does not.
    pub fn check_coassociativity(&self) -> Verdict {
        let left = self.coproduct.post_on_leg(0, &self.coproduct).expect("legs match");
        let right = self.coproduct.post_on_leg(1, &self.coproduct).expect("legs match");
        left.equality_verdict(&right).expect("same shape")
    }

    /// `Δ^{(n-1)} = (Δ⊗1^{⊗(n-2)}) ∘ … ∘ (Δ⊗1) ∘ Δ : C → C^{⊗n}`; `n = 1` is
    /// the identity.
    pub fn iterated_coproduct(&self, n: usize) -> Result<Arc<MultilinearMap>> {
        if n == 0 {
            return Err(Error::Argument("iterated coproduct needs n ≥ 1".into()));
        }
        if let Some(m) = self.iterated.lock().expect("cache lock").get(&n) {
            return Ok(m.clone());
        }
        if n >= 3 {
            if let Verdict::Fail(witness) = self.check_coassociativity() {
                return Err(Error::Axiom { axiom: "coassociativity (Δ⊗1)Δ = (1⊗Δ)Δ".into(), witness });
            }
        }
        let map = match n {
            1 => MultilinearMap::identity(self.space.clone()),
            2 => self.coproduct.clone(),
            _ => self.iterated_coproduct(n - 1)?.post_on_leg(0, &self.coproduct)?,
        };
        let map = Arc::new(map);
        self.iterated.lock().expect("cache lock").insert(n, map.clone());
        Ok(map)
    }

    /// Sweedler expansion of `Δ^{(n-1)}(c_i)`: legs and coefficients.
    pub fn sweedler(&self, n: usize, i: usize) -> Result<Vec<(Vec<usize>, Scalar)>> {
        let d = self.iterated_coproduct(n)?;
        Ok(d.on_basis(&[i]).map(|row| row.iter().map(|(o, q)| (o.clone(), q.clone())).collect()).unwrap_or_default())
    }

    fn flipped(&self) -> MultilinearMap {
        self.coproduct.permute_outputs(&Permutation::transposition(2, 0, 1).expect("S_2")).expect("two legs")
    }

    pub fn is_cocommutative(&self) -> bool {
        self.flipped() == self.coproduct
    }

    /// `τ∘Δ = −Δ`; the zero coproduct satisfies this as well.
    pub fn is_skew_cocommutative(&self) -> bool {
        self.flipped() == self.coproduct.neg()
    }

    pub fn symmetry_class(&self) -> SymmetryClass {
        if self.is_cocommutative() {
            SymmetryClass::Cocommutative
        } else if self.is_skew_cocommutative() {
            SymmetryClass::SkewCocommutative
        } else {
            SymmetryClass::Neither
        }
    }
}

fn word_label(v: &BasedSpace, word: &[usize]) -> String {
    if word.is_empty() {
        return "1".into();
    }
    let sep = if v.labels().iter().all(|l| l.chars().count() == 1) { "" } else { "." };
    word.iter().map(|&i| v.label(i)).collect::<Vec<_>>().join(sep)
}

fn words(dim: usize, len: usize) -> Vec<Vec<usize>> {
    crate::linalg::tensor::multi_indices(&vec![dim; len]).collect()
}

/// Truncated tensor coalgebra `T^{≤maxdeg}(V)` with deconcatenation. The
/// reduced version has no empty word; `counital` adds it (labelled `1`) with
/// the full deconcatenation.
pub fn build_tensor_coalgebra(v: &BasedSpace, maxdeg: usize, counital: bool) -> Result<Coalgebra> {
    if maxdeg < 1 {
        return Err(Error::Argument("tensor coalgebra needs maxdeg ≥ 1".into()));
    }
    let min_len = if counital { 0 } else { 1 };
    let basis: Vec<Vec<usize>> = (min_len..=maxdeg).flat_map(|n| words(v.dim(), n)).collect();
    let index: BTreeMap<&Vec<usize>, usize> = basis.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let labels = basis.iter().map(|w| word_label(v, w)).collect();
    let name = format!("T<={maxdeg}({})", v.name());
    let space = BasedSpace::new(name.clone(), labels)?;
    let mut terms = Vec::new();
    for (i, w) in basis.iter().enumerate() {
        let splits = if counital { 0..=w.len() } else { 1..=w.len().saturating_sub(1) };
        for cut in splits {
            if !counital && (cut == 0 || cut == w.len()) {
                continue;
            }
            let (left, right) = (w[..cut].to_vec(), w[cut..].to_vec());
            terms.push((i, index[&left], index[&right], scalar::one()));
        }
    }
    Coalgebra::new(name, space, terms)
}

/// Symmetric tensors of degree `1..=maxdeg` as multisets with the reduced
/// deshuffle coproduct, counted with multiplicity: the coefficient of
/// `A ⊗ B` in `Δ(A ∪ B)` is `Π_v C(m_v, a_v)`.
pub fn build_symmetric_coalgebra(v: &BasedSpace, maxdeg: usize) -> Result<Coalgebra> {
    if maxdeg < 1 {
        return Err(Error::Argument("symmetric coalgebra needs maxdeg ≥ 1".into()));
    }
    let basis: Vec<Vec<usize>> = (1..=maxdeg)
        .flat_map(|n| words(v.dim(), n).into_iter().filter(|w| w.windows(2).all(|p| p[0] <= p[1])))
        .collect();
    let index: BTreeMap<&Vec<usize>, usize> = basis.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let labels = basis.iter().map(|w| w.iter().map(|&i| v.label(i)).collect::<Vec<_>>().join("·")).collect();
    let name = format!("S<={maxdeg}({})", v.name());
    let space = BasedSpace::new(name.clone(), labels)?;
    let mut acc: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
    for (i, m) in basis.iter().enumerate() {
        let n = m.len();
        // every nonempty proper subset of positions
        for mask in 1..(1u32 << n) - 1 {
            let left: Vec<usize> = (0..n).filter(|p| mask & (1 << p) != 0).map(|p| m[p]).collect();
            let right: Vec<usize> = (0..n).filter(|p| mask & (1 << p) == 0).map(|p| m[p]).collect();
            *acc.entry((i, index[&left], index[&right])).or_insert_with(scalar::zero) += scalar::one();
        }
    }
    let terms = acc.into_iter().filter(|(_, q)| !q.is_zero()).map(|((i, j, k), q)| (i, j, k, q)).collect();
    Coalgebra::new(name, space, terms)
}

/// `V ⊕ Λ²V` with `Δ(v) = 0` and `Δ(x∧y) = x⊗y − y⊗x`.
pub fn build_exterior_square_coalgebra(v: &BasedSpace) -> Result<Coalgebra> {
    if v.dim() < 2 {
        return Err(Error::Argument("exterior-square coalgebra needs dim V ≥ 2".into()));
    }
    let mut labels: Vec<String> = v.labels().to_vec();
    let mut terms = Vec::new();
    for x in 0..v.dim() {
        for y in x + 1..v.dim() {
            let i = labels.len();
            labels.push(format!("{}∧{}", v.label(x), v.label(y)));
            terms.push((i, x, y, scalar::one()));
            terms.push((i, y, x, -scalar::one()));
        }
    }
    let name = format!("E2({})", v.name());
    let space = BasedSpace::new(name.clone(), labels)?;
    Coalgebra::new(name, space, terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Space {
        BasedSpace::from_labels("V", &["a", "b"])
    }

    fn term(c: &Coalgebra, src: &str) -> Vec<(String, String, Scalar)> {
        let i = c.space().index_of(src).unwrap();
        c.terms()
            .into_iter()
            .filter(|t| t.0 == i)
            .map(|(_, j, k, q)| (c.space().label(j).to_string(), c.space().label(k).to_string(), q))
            .collect()
    }

    #[test]
    fn zero_coproduct_is_coassociative_and_cocommutative() {
        let c = Coalgebra::zero("Z", BasedSpace::numbered("Z", "z", 3));
        assert!(c.check_coassociativity().passed());
        assert_eq!(c.symmetry_class(), SymmetryClass::Cocommutative);
        assert!(c.is_skew_cocommutative());
    }

    #[test]
    fn group_like_generator_example_is_coassociative() {
        // Δ(c1) = c1⊗c1, Δ(c2) = c1⊗c2: both sides on c2 expand to c1⊗c1⊗c2
        let s = BasedSpace::from_labels("C", &["c1", "c2"]);
        let c = Coalgebra::new_unchecked("C", s, vec![(0, 0, 0, scalar::one()), (1, 0, 1, scalar::one())]).unwrap();
        assert!(c.check_coassociativity().passed());
    }

    #[test]
    fn inconsistent_coproduct_fails_with_witness() {
        // Δ(c1) = 0, Δ(c2) = c1⊗c2: (Δ⊗1)Δ(c2) = 0 but (1⊗Δ)Δ(c2) = c1⊗c1⊗c2
        let s = BasedSpace::from_labels("C", &["c1", "c2"]);
        let terms = vec![(1, 0, 1, scalar::one())];
        let c = Coalgebra::new_unchecked("C", s.clone(), terms.clone()).unwrap();
        let Verdict::Fail(w) = c.check_coassociativity() else { panic!("expected failure") };
        assert_eq!(w.tuple, vec!["c2".to_string()]);
        assert_eq!(w.residual, vec![("c1⊗c1⊗c2".to_string(), -scalar::one())]);
        assert!(matches!(Coalgebra::new("C", s.clone(), terms), Err(Error::Axiom { .. })));
        assert!(Coalgebra::new_unchecked("C", s, vec![(2, 0, 0, scalar::one())]).is_err());
    }

    #[test]
    fn tensor_coalgebra_examples() {
        let x = BasedSpace::from_labels("V", &["x"]);
        let t = build_tensor_coalgebra(&x, 2, false).unwrap();
        assert_eq!(t.space().labels(), &["x", "xx"]);
        assert!(term(&t, "x").is_empty());
        assert_eq!(term(&t, "xx"), vec![("x".into(), "x".into(), scalar::one())]);

        let t1 = build_tensor_coalgebra(&ab(), 1, false).unwrap();
        assert!(t1.coproduct().is_zero());

        let t3 = build_tensor_coalgebra(&ab(), 3, false).unwrap();
        assert_eq!(t3.dim(), 14);
        assert_eq!(
            term(&t3, "aba"),
            vec![("a".into(), "ba".into(), scalar::one()), ("ab".into(), "a".into(), scalar::one())]
        );
        assert_eq!(t3.symmetry_class(), SymmetryClass::Neither);
        assert!(build_tensor_coalgebra(&ab(), 0, false).is_err());
    }

    #[test]
    fn counital_tensor_coalgebra_is_coassociative() {
        let t = build_tensor_coalgebra(&ab(), 2, true).unwrap();
        assert_eq!(t.dim(), 7);
        assert!(term(&t, "1").contains(&("1".into(), "1".into(), scalar::one())));
        assert_eq!(term(&t, "ab").len(), 3);
    }

    #[test]
    fn iterated_coproduct_on_words() {
        let t = build_tensor_coalgebra(&ab(), 3, false).unwrap();
        let ab_ = t.space().index_of("ab").unwrap();
        let abc = t.space().index_of("aba").unwrap();
        assert_eq!(t.sweedler(2, ab_).unwrap(), vec![(vec![0, 1], scalar::one())]);
        assert_eq!(t.sweedler(3, abc).unwrap(), vec![(vec![0, 1, 0], scalar::one())]);
        assert_eq!(*t.iterated_coproduct(1).unwrap(), MultilinearMap::identity(t.space().clone()));
        assert!(t.iterated_coproduct(0).is_err());
    }

    #[test]
    fn iterated_coproduct_association_orders_agree() {
        let v = BasedSpace::from_labels("V", &["a", "b"]);
        for c in [
            build_tensor_coalgebra(&v, 4, false).unwrap(),
            build_symmetric_coalgebra(&v, 3).unwrap(),
            build_exterior_square_coalgebra(&v).unwrap(),
        ] {
            for n in 1..4 {
                let d = c.iterated_coproduct(n).unwrap();
                let next = c.iterated_coproduct(n + 1).unwrap();
                for leg in 0..n {
                    assert_eq!(*next, d.post_on_leg(leg, c.coproduct()).unwrap(), "{} n={n} leg={leg}", c.name());
                }
            }
        }
    }

    #[test]
    fn refuses_iterating_non_coassociative_input() {
        let s = BasedSpace::from_labels("C", &["c1", "c2"]);
        let bad = Coalgebra::new_unchecked("C", s, vec![(1, 0, 1, scalar::one())]).unwrap();
        assert!(matches!(bad.iterated_coproduct(3), Err(Error::Axiom { .. })));
    }

    #[test]
    fn symmetric_coalgebra_examples() {
        let x = BasedSpace::from_labels("V", &["x"]);
        let s = build_symmetric_coalgebra(&x, 2).unwrap();
        assert_eq!(term(&s, "x·x"), vec![("x".into(), "x".into(), scalar::int(2))]);
        assert!(build_symmetric_coalgebra(&ab(), 1).unwrap().coproduct().is_zero());
        let s2 = build_symmetric_coalgebra(&ab(), 2).unwrap();
        assert_eq!(
            term(&s2, "a·b"),
            vec![("a".into(), "b".into(), scalar::one()), ("b".into(), "a".into(), scalar::one())]
        );
        assert_eq!(s2.symmetry_class(), SymmetryClass::Cocommutative);
    }

    #[test]
    fn exterior_square_examples() {
        let e = build_exterior_square_coalgebra(&ab()).unwrap();
        assert_eq!(
            term(&e, "a∧b"),
            vec![("a".into(), "b".into(), scalar::one()), ("b".into(), "a".into(), -scalar::one())]
        );
        assert!(term(&e, "a").is_empty());
        assert!(e.iterated_coproduct(3).unwrap().is_zero());
        assert_eq!(e.symmetry_class(), SymmetryClass::SkewCocommutative);
        assert!(build_exterior_square_coalgebra(&BasedSpace::from_labels("V", &["x"])).is_err());
    }

    #[test]
    fn deconcatenation_on_t2_is_neither() {
        let t = build_tensor_coalgebra(&ab(), 2, false).unwrap();
        assert_eq!(t.symmetry_class(), SymmetryClass::Neither);
    }
}
