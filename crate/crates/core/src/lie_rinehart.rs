//! Lie–Rinehart pairs `(L, B)`, the twisted pair `(Hom(C, L), Hom(C, B))`
//! they induce, `Hom(C, B)`-linear cochains, and the check that the twisted
//! differential preserves linearity.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::multilinear::MultilinearMap;
use crate::algebra::{self, tau, xi_inverse, AssociativeAlgebra, LieAlgebra, LieModule};
use crate::coalgebra::Coalgebra;
use crate::cohomology::{td_complex, AltCochain};
use crate::convolution::{compose_induced, induced, HomOperator, InducedOperator};
use crate::error::{Error, Result};
use crate::guard::Guard;
use crate::linalg::permutation::Permutation;
use crate::linalg::scalar::{self, Scalar};
use crate::linalg::RationalMatrix;
use crate::space::{BasedSpace, Space};
use crate::td::{twisted_then_permuted, TdModule};
use crate::witness::CheckReport;

pub const NU_ASSOCIATIVE: &str = "ν associative ν(ν⊗1) = ν(1⊗ν)";
pub const MU_MODULE: &str = "μ module μ(1⊗μ) = μ(ν⊗1)";
pub const PSI_MODULE: &str = "ψ module ψ(φ⊗1) = ψ(1⊗ψ) − ψ(1⊗ψ)τ";
pub const DERIVATION: &str = "derivation ψ(1⊗ν) = ν(1⊗ψ)τ + ν(ψ⊗1)";
pub const LRA: &str = "LRa ψ(μ⊗1) = ν(1⊗ψ)";
pub const LRB: &str = "LRb φ(1⊗μ) = μ(1⊗φ)τ + μ(ψ⊗1)";
pub const LRB_ROTATED: &str = "LRb rotated φ(μ⊗1) = μ(1⊗φ) − μ(ψ⊗1)ξ⁻¹";
pub const LRB_FORMS_AGREE: &str = "LRb forms agree";

pub const TD_NU_ASSOCIATIVE: &str = "ν̄ associative ν̄(ν̄⊗1) = ν̄(1⊗ν̄)";
pub const TD_MU_MODULE: &str = "μ̄ module μ̄(1⊗μ̄) = μ̄(ν̄⊗1)";
pub const TD_DERIVATION: &str = "twisted derivation Ψ(1⊗ν̄) = ν̄(1⊗Ψ)^τ∘τ + ν̄(Ψ⊗1)";
pub const TDLRA: &str = "TDLRa Ψ(μ̄⊗1) = ν̄(1⊗Ψ)";
pub const TDLRB: &str = "TDLRb Φ(1⊗μ̄) = μ̄(1⊗Φ)^τ∘τ + μ̄(Ψ⊗1)";
pub const TDLRB_ROTATED: &str = "TDLRb rotated Φ(μ̄⊗1) = μ̄(1⊗Φ) − μ̄(Ψ⊗1)^ξ⁻¹∘ξ⁻¹";
pub const TDLRB_FORMS_AGREE: &str = "TDLRb forms agree";

/// A Lie algebra `L` and an associative algebra `(B, ν)` with `μ : B⊗L → L`
/// and `ψ : L⊗B → B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieRinehartPair {
    name: String,
    lie: LieAlgebra,
    algebra: AssociativeAlgebra,
    module: MultilinearMap,
    action: MultilinearMap,
}

impl LieRinehartPair {
    pub fn new(
        name: impl Into<String>,
        lie: LieAlgebra,
        algebra: AssociativeAlgebra,
        module: MultilinearMap,
        action: MultilinearMap,
    ) -> Result<Self> {
        let p = Self::new_unchecked(name, lie, algebra, module, action)?;
        check_lr(&p)?.into_result()?;
        Ok(p)
    }

    pub fn new_unchecked(
        name: impl Into<String>,
        lie: LieAlgebra,
        algebra: AssociativeAlgebra,
        module: MultilinearMap,
        action: MultilinearMap,
    ) -> Result<Self> {
        let (l, b) = (lie.space().dim(), algebra.space().dim());
        let dims = |m: &MultilinearMap| -> Vec<usize> { m.domain().iter().chain(m.codomain()).map(|s| s.dim()).collect() };
        if dims(&module) != [b, l, l] {
            return Err(Error::Malformed("μ must map B⊗L → L".into()));
        }
        if dims(&action) != [l, b, b] {
            return Err(Error::Malformed("ψ must map L⊗B → B".into()));
        }
        Ok(Self { name: name.into(), lie, algebra, module, action })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn lie(&self) -> &LieAlgebra {
        &self.lie
    }

    pub fn algebra(&self) -> &AssociativeAlgebra {
        &self.algebra
    }

    /// `μ : B ⊗ L → L`.
    pub fn module_map(&self) -> &MultilinearMap {
        &self.module
    }

    /// `ψ : L ⊗ B → B`.
    pub fn action(&self) -> &MultilinearMap {
        &self.action
    }

    /// `B` as an `L`-module through `ψ`.
    pub fn lie_module(&self) -> LieModule {
        LieModule::new_unchecked(format!("{}:B", self.name), self.lie.clone(), self.algebra.space().clone(), self.action.clone())
            .expect("ψ has module shape")
    }
}

/// Component axioms and both forms of LRb. A bracket failing the Lie axioms
/// is a precondition failure.
pub fn check_lr(p: &LieRinehartPair) -> Result<CheckReport> {
    algebra::check_lie(&p.lie)?.into_result().map_err(|e| Error::Precondition(e.to_string()))?;
    let (phi, nu, mu, psi) = (p.lie.bracket(), p.algebra.product(), &p.module, &p.action);
    let mut report = CheckReport::new();
    report.push(NU_ASSOCIATIVE, nu.compose_at(0, nu)?.equality_verdict(&nu.compose_at(1, nu)?)?);
    report.push(MU_MODULE, mu.compose_at(1, mu)?.equality_verdict(&mu.compose_at(0, nu)?)?);
    report.push(PSI_MODULE, algebra::check_module(&p.lie_module())?.checks.remove(0).verdict);

    let derivation = nu.compose_at(1, psi)?.precompose(&tau(3))?.add(&nu.compose_at(0, psi)?)?;
    report.push(DERIVATION, psi.compose_at(1, nu)?.equality_verdict(&derivation)?);
    report.push(LRA, psi.compose_at(0, mu)?.equality_verdict(&nu.compose_at(1, psi)?)?);

    let r1 = phi.compose_at(1, mu)?.sub(&mu.compose_at(1, phi)?.precompose(&tau(3))?)?.sub(&mu.compose_at(0, psi)?)?;
    let r2 = phi
        .compose_at(0, mu)?
        .sub(&mu.compose_at(1, phi)?)?
        .add(&mu.compose_at(0, psi)?.precompose(&xi_inverse())?)?;
    report.push(LRB, r1.zero_verdict());
    report.push(LRB_ROTATED, r2.zero_verdict());
    report.push(LRB_FORMS_AGREE, r2.add(&r1.precompose(&xi_inverse())?)?.zero_verdict());
    Ok(report)
}

/// The induced operators `Φ, Ψ, ν̄, μ̄` of a pair over `C`.
#[derive(Clone, Debug)]
pub struct TdLrStructure {
    pub pair: LieRinehartPair,
    pub coalgebra: Arc<Coalgebra>,
}

impl TdLrStructure {
    pub fn new(pair: LieRinehartPair, coalgebra: Arc<Coalgebra>) -> Self {
        Self { pair, coalgebra }
    }

    pub fn phi(&self) -> Result<InducedOperator> {
        induced(self.pair.lie.bracket(), &self.coalgebra)
    }

    pub fn psi(&self) -> Result<InducedOperator> {
        induced(&self.pair.action, &self.coalgebra)
    }

    pub fn nu_bar(&self) -> Result<InducedOperator> {
        induced(self.pair.algebra.product(), &self.coalgebra)
    }

    pub fn mu_bar(&self) -> Result<InducedOperator> {
        induced(&self.pair.module, &self.coalgebra)
    }

    pub fn td_module(&self) -> TdModule {
        TdModule::new(self.pair.lie_module(), self.coalgebra.clone())
    }
}

pub fn check_td_lr(s: &TdLrStructure) -> Result<CheckReport> {
    check_lr(&s.pair)?.into_result().map_err(|e| Error::Precondition(e.to_string()))?;
    let (phi, psi, nu, mu) = (s.phi()?, s.psi()?, s.nu_bar()?, s.mu_bar()?);
    let m = |a: &InducedOperator, b: &InducedOperator, slot: usize| compose_induced(a, b, slot)?.materialize();
    let mut report = CheckReport::new();
    report.push(TD_NU_ASSOCIATIVE, m(&nu, &nu, 0)?.equality_verdict(&m(&nu, &nu, 1)?)?);
    report.push(TD_MU_MODULE, m(&mu, &mu, 1)?.equality_verdict(&m(&mu, &nu, 0)?)?);

    let nu_psi = compose_induced(&nu, &psi, 1)?;
    let derivation = twisted_then_permuted(&nu_psi, &tau(3))?.add(&m(&nu, &psi, 0)?)?;
    report.push(TD_DERIVATION, m(&psi, &nu, 1)?.equality_verdict(&derivation)?);
    report.push(TDLRA, m(&psi, &mu, 0)?.equality_verdict(&nu_psi.materialize()?)?);

    let mu_phi = compose_induced(&mu, &phi, 1)?;
    let mu_psi = compose_induced(&mu, &psi, 0)?;
    let r1 = m(&phi, &mu, 1)?.sub(&twisted_then_permuted(&mu_phi, &tau(3))?)?.sub(&mu_psi.materialize()?)?;
    let r2 = m(&phi, &mu, 0)?.sub(&mu_phi.materialize()?)?.add(&twisted_then_permuted(&mu_psi, &xi_inverse())?)?;
    report.push(TDLRB, r1.zero_verdict());
    report.push(TDLRB_ROTATED, r2.zero_verdict());
    report.push(TDLRB_FORMS_AGREE, r2.add(&r1.precompose(&xi_inverse())?)?.zero_verdict());
    Ok(report)
}

/// The permutation of `(g_1, …, g_{i−1}, β, g_i, …, g_n)` that brings `β`
/// to the front: slot 0 reads position `i − 1`, slots `1..i` read one
/// position earlier, the rest stay.
pub fn linearity_permutation(n: usize, i: usize) -> Permutation {
    let mut images = vec![i - 1];
    images.extend(0..i - 1);
    images.extend(i..=n);
    Permutation::new(images).expect("cycle on n + 1 letters")
}

/// How `ν̄(β, α(…))` is rearranged to match the argument order of
/// `α(…, μ̄(β, g_i), …)`. Only `Twisted` is correct; `Untwisted` exists so
/// tests can show the subcomplex check tells them apart.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Convention {
    Twisted,
    #[cfg(test)]
    Untwisted,
}

/// `α(…, μ̄(β, g_i), …) − (ν̄(β, α(g_1, …, g_n)))^π∘π` for slot `i` (1-based).
fn linearity_defect(alpha: &HomOperator, mu: &HomOperator, nu: &HomOperator, i: usize, conv: Convention) -> Result<HomOperator> {
    let n = alpha.arity();
    let pi = linearity_permutation(n, i);
    let lhs = alpha.compose_at(i - 1, mu)?;
    let composite = nu.compose_at(1, alpha)?;
    let rhs = match conv {
        Convention::Twisted => composite.twist(&pi)?.precompose(&pi)?,
        #[cfg(test)]
        Convention::Untwisted => composite.precompose(&pi)?,
    };
    lhs.sub(&rhs)
}

fn linearity_ops(s: &TdLrStructure) -> Result<(HomOperator, HomOperator)> {
    Ok((s.mu_bar()?.materialize()?, s.nu_bar()?.materialize()?))
}

fn guard_degree(n: usize, s: &TdLrStructure, guard: &Guard) -> Result<()> {
    let (l, b) = (s.pair.lie.dim(), s.pair.algebra.space().dim());
    if n == 0 || AltCochain::dim(l, b, n) == 0 {
        return Ok(());
    }
    guard.check(l * s.coalgebra.dim(), n, &format!("Hom(C,B)-linear {n}-cochains"))
}

/// Basis, in Alt^n coordinates, of the cochains whose induced operators are
/// `Hom(C, B)`-linear in every slot. Contains `ker ι_n`.
pub fn blinear_subspace(n: usize, s: &TdLrStructure, guard: &Guard) -> Result<Vec<Vec<Scalar>>> {
    linear_subspace_with(n, s, guard, Convention::Twisted)
}

fn linear_subspace_with(n: usize, s: &TdLrStructure, guard: &Guard, conv: Convention) -> Result<Vec<Vec<Scalar>>> {
    let (l, b) = (s.pair.lie.space(), s.pair.algebra.space());
    if n == 0 {
        return Ok((0..b.dim()).map(|j| RationalMatrix::identity(b.dim()).column(j)).collect());
    }
    guard_degree(n, s, guard)?;
    let (mu, nu) = linearity_ops(s)?;
    let basis = AltCochain::basis(l, b, n);
    let mut rows: BTreeMap<(usize, Vec<usize>, usize), usize> = BTreeMap::new();
    let mut columns = Vec::with_capacity(basis.len());
    for e in &basis {
        let alpha = crate::cohomology::twisted::induced_cochain(e, &s.coalgebra)?;
        let mut col = Vec::new();
        for i in 1..=n {
            for (k, o, q) in linearity_defect(&alpha, &mu, &nu, i, conv)?.map().triples() {
                let key = (i, k.clone(), o[0]);
                let next = rows.len();
                rows.entry(key.clone()).or_insert(next);
                col.push((key, q.clone()));
            }
        }
        columns.push(col);
    }
    let mut defect = RationalMatrix::zeros(rows.len(), basis.len());
    for (j, col) in columns.into_iter().enumerate() {
        for (key, q) in col {
            defect.set(rows[&key], j, q);
        }
    }
    Ok(defect.kernel_basis())
}

/// Dimensions of the linear subspaces checked by [`check_subcomplex`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubcomplexReport {
    /// `dim` of the linear subspace of Alt^n, `n = 0..=maxdeg+1`.
    pub linear_dims: Vec<usize>,
}

/// For `n ≤ maxdeg`, `δ` maps every `Hom(C, B)`-linear cochain to a linear
/// one. A violation is an internal inconsistency naming the cochain and slot.
pub fn check_subcomplex(s: &TdLrStructure, maxdeg: usize, guard: &Guard) -> Result<SubcomplexReport> {
    check_td_lr(s)?.into_result().map_err(|e| Error::Precondition(e.to_string()))?;
    linear_dims_preserved(s, maxdeg, guard, Convention::Twisted)
}

fn linear_dims_preserved(s: &TdLrStructure, maxdeg: usize, guard: &Guard, conv: Convention) -> Result<SubcomplexReport> {
    let complex = td_complex(&s.td_module(), maxdeg, guard)?;
    let (l, b) = (s.pair.lie.space().clone(), s.pair.algebra.space().clone());
    let spaces: Vec<Vec<Vec<Scalar>>> = (0..=maxdeg + 1).map(|n| linear_subspace_with(n, s, guard, conv)).collect::<Result<_>>()?;
    for n in 0..=maxdeg {
        let next = RationalMatrix::from_columns(AltCochain::dim(l.dim(), b.dim(), n + 1), &spaces[n + 1])?;
        let d = &complex.classical.maps()[n];
        for v in &spaces[n] {
            let dv = d.apply(v)?;
            if next.solve(&dv)?.is_none() {
                let slot = violating_slot(s, n + 1, &dv, conv)?;
                let labels = AltCochain::from_coordinates(l.clone(), b.clone(), n, v.clone())?;
                return Err(Error::Consistency(format!(
                    "δ of the linear {n}-cochain {:?} fails Hom(C,B)-linearity in slot {slot}",
                    labels.coordinates().iter().map(scalar::format).collect::<Vec<_>>()
                )));
            }
        }
    }
    Ok(SubcomplexReport { linear_dims: spaces.iter().map(Vec::len).collect() })
}

fn violating_slot(s: &TdLrStructure, n: usize, coords: &[Scalar], conv: Convention) -> Result<usize> {
    let (l, b) = (s.pair.lie.space().clone(), s.pair.algebra.space().clone());
    let f = AltCochain::from_coordinates(l, b, n, coords.to_vec())?;
    let alpha = crate::cohomology::twisted::induced_cochain(&f, &s.coalgebra)?;
    let (mu, nu) = linearity_ops(s)?;
    for i in 1..=n {
        if !linearity_defect(&alpha, &mu, &nu, i, conv)?.is_zero() {
            return Ok(i);
        }
    }
    Ok(0)
}

fn bilinear(left: &Space, right: &Space, target: &Space, table: &[(usize, usize, usize, i64)]) -> MultilinearMap {
    MultilinearMap::from_simple_entries(
        vec![left.clone(), right.clone()],
        target.clone(),
        table.iter().map(|&(i, j, k, q)| (vec![i, j], k, scalar::int(q))),
    )
    .expect("indices in range")
}

fn scalar_module(b: &Space, l: &Space) -> MultilinearMap {
    // the unit 1 = b_0 acts as the identity
    let table: Vec<_> = (0..l.dim()).map(|x| (0, x, x, 1)).collect();
    bilinear(b, l, l, &table)
}

/// `B = k`, `μ` scalar multiplication, `ψ = 0`.
pub fn trivial_pair(lie: &LieAlgebra) -> LieRinehartPair {
    let k = BasedSpace::from_labels("k", &["1"]);
    let nu = bilinear(&k, &k, &k, &[(0, 0, 0, 1)]);
    let algebra = AssociativeAlgebra::new("k", k.clone(), nu).expect("k is associative");
    let mu = scalar_module(&k, lie.space());
    let psi = MultilinearMap::zero(vec![lie.space().clone(), k.clone()], vec![k]);
    LieRinehartPair::new(format!("trivial-lr({})", lie.name()), lie.clone(), algebra, mu, psi).expect("trivial pair")
}

fn dual_numbers_with(name: &str, psi_on_one: bool) -> LieRinehartPair {
    let b = BasedSpace::from_labels("D", &["1", "x"]);
    let l = BasedSpace::from_labels("Der", &["x∂"]);
    let lie = LieAlgebra::new("Der(D)", l.clone(), MultilinearMap::zero(vec![l.clone(), l.clone()], vec![l.clone()])).expect("abelian");
    let algebra = AssociativeAlgebra::new("D", b.clone(), bilinear(&b, &b, &b, &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)]))
        .expect("dual numbers");
    // x·(x∂) = x²∂ = 0
    let mu = scalar_module(&b, &l);
    let mut table = vec![(0, 1, 1, 1)];
    if psi_on_one {
        table.push((0, 0, 0, 1));
    }
    let psi = bilinear(&l, &b, &b, &table);
    LieRinehartPair::new_unchecked(name, lie, algebra, mu, psi).expect("shapes")
}

/// Dual numbers `k[x]/(x²)` with `L = span{x∂}`.
pub fn dual_numbers_pair() -> LieRinehartPair {
    dual_numbers_with("dual-numbers-lr", false)
}

/// As [`dual_numbers_pair`] but `ψ(x∂, 1) = 1`, which is not a derivation.
pub fn dual_numbers_bad_pair() -> LieRinehartPair {
    dual_numbers_with("dual-numbers-lr-bad", true)
}

/// `k[x]/(x³)` with its derivations `D₁ = x∂`, `D₂ = x²∂`.
pub fn truncated_polynomial_pair() -> LieRinehartPair {
    let b = BasedSpace::from_labels("T", &["1", "x", "x2"]);
    let l = BasedSpace::from_labels("Der", &["D1", "D2"]);
    let lie = LieAlgebra::new("Der(T)", l.clone(), bilinear(&l, &l, &l, &[(0, 1, 1, 1), (1, 0, 1, -1)])).expect("Lie");
    let nu = bilinear(&b, &b, &b, &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (0, 2, 2, 1), (2, 0, 2, 1), (1, 1, 2, 1)]);
    let algebra = AssociativeAlgebra::new("T", b.clone(), nu).expect("truncated polynomials");
    let mut mu_table: Vec<_> = (0..2).map(|x| (0, x, x, 1)).collect();
    mu_table.push((1, 0, 1, 1));
    let mu = bilinear(&b, &l, &l, &mu_table);
    let psi = bilinear(&l, &b, &b, &[(0, 1, 1, 1), (0, 2, 2, 2), (1, 1, 2, 1)]);
    LieRinehartPair::new("kx3-lr", lie, algebra, mu, psi).expect("derivations of k[x]/(x³)")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{heisenberg, sl2};
    use crate::coalgebra::{build_exterior_square_coalgebra, build_symmetric_coalgebra, build_tensor_coalgebra};
    use crate::witness::Verdict;

    fn ab() -> Space {
        BasedSpace::from_labels("V", &["a", "b"])
    }

    fn coalgebras() -> Vec<Arc<Coalgebra>> {
        vec![
            Arc::new(build_tensor_coalgebra(&ab(), 2, false).unwrap()),
            Arc::new(build_tensor_coalgebra(&ab(), 3, false).unwrap()),
            Arc::new(build_symmetric_coalgebra(&ab(), 2).unwrap()),
            Arc::new(build_exterior_square_coalgebra(&ab()).unwrap()),
            Arc::new(Coalgebra::zero("Z", BasedSpace::numbered("Z", "z", 2))),
        ]
    }

    fn pairs() -> Vec<LieRinehartPair> {
        vec![trivial_pair(&sl2()), dual_numbers_pair(), truncated_polynomial_pair()]
    }

    #[test]
    fn classical_pairs_pass() {
        for p in pairs().into_iter().chain([trivial_pair(&heisenberg())]) {
            let r = check_lr(&p).unwrap();
            assert_eq!(r.checks.len(), 8);
            assert!(r.passed(), "{}: {:?}", p.name(), r.first_failure());
        }
    }

    #[test]
    fn derivation_must_kill_one() {
        let r = check_lr(&dual_numbers_bad_pair()).unwrap();
        let Verdict::Fail(w) = r.get(DERIVATION).unwrap() else { panic!("derivation axiom should fail") };
        // ψ(x∂, 1·1) = 1 but 1·ψ(x∂, 1) + ψ(x∂, 1)·1 = 2
        assert_eq!(w.tuple, vec!["x∂", "1", "1"]);
        assert_eq!(w.residual, vec![("1".to_string(), scalar::int(-1))]);
        assert!(matches!(check_td_lr(&TdLrStructure::new(dual_numbers_bad_pair(), coalgebras()[0].clone())), Err(Error::Precondition(_))));
    }

    #[test]
    fn broken_lrb_is_caught_in_both_forms() {
        // drop [D1, D2] = D2 on k[x]/(x³): LRb fails, the two forms still agree
        let p = truncated_polynomial_pair();
        let l = p.lie().space().clone();
        let abelian = LieAlgebra::new("ab", l.clone(), MultilinearMap::zero(vec![l.clone(), l.clone()], vec![l])).unwrap();
        let broken = LieRinehartPair::new_unchecked("broken", abelian, p.algebra().clone(), p.module_map().clone(), p.action().clone()).unwrap();
        let r = check_lr(&broken).unwrap();
        assert!(!r.get(LRB).unwrap().passed());
        assert!(!r.get(LRB_ROTATED).unwrap().passed());
        assert!(r.get(LRB_FORMS_AGREE).unwrap().passed());
    }

    #[test]
    fn td_pairs_pass_over_every_coalgebra() {
        for p in pairs() {
            for c in coalgebras() {
                let r = check_td_lr(&TdLrStructure::new(p.clone(), c.clone())).unwrap();
                assert!(r.passed(), "{} over {}: {:?}", p.name(), c.name(), r.first_failure());
            }
        }
    }

    #[test]
    fn linearity_permutation_moves_beta_to_front() {
        assert_eq!(linearity_permutation(2, 1), Permutation::identity(3));
        assert_eq!(linearity_permutation(2, 2).images(), &[1, 0, 2]);
        assert_eq!(linearity_permutation(3, 3).images(), &[2, 0, 1, 3]);
        let args = ["g1", "g2", "β", "g3"];
        assert_eq!(linearity_permutation(3, 3).permute_slice(&args), vec!["β", "g1", "g2", "g3"]);
    }

    #[test]
    fn linear_subspaces() {
        let g = Guard::default();
        let c = coalgebras()[0].clone();
        // trivial pair: everything is linear
        let s = TdLrStructure::new(trivial_pair(&sl2()), c.clone());
        for n in 0..=3 {
            assert_eq!(blinear_subspace(n, &s, &g).unwrap().len(), AltCochain::dim(3, 1, n));
        }
        // dual numbers: f(x∂) must lie in span{x}
        let s = TdLrStructure::new(dual_numbers_pair(), c.clone());
        assert_eq!(blinear_subspace(0, &s, &g).unwrap().len(), 2);
        assert_eq!(blinear_subspace(1, &s, &g).unwrap().len(), 1);
        // with Δ = 0 every cochain of degree ≥ 2 induces zero
        let z = TdLrStructure::new(truncated_polynomial_pair(), coalgebras()[4].clone());
        assert_eq!(blinear_subspace(2, &z, &g).unwrap().len(), 3);
    }

    #[test]
    fn linear_subcomplex_is_preserved() {
        let g = Guard::default().with_entry_limit(100_000);
        for p in pairs() {
            for c in coalgebras() {
                let s = TdLrStructure::new(p.clone(), c.clone());
                let report = check_subcomplex(&s, 2, &g).unwrap_or_else(|e| panic!("{} over {}: {e}", p.name(), c.name()));
                assert_eq!(report.linear_dims.len(), 4);
            }
        }
    }

    #[test]
    fn non_lr_action_breaks_linearity_preservation() {
        // a pair whose ψ is not B-linear is refused before any subcomplex work
        let s = TdLrStructure::new(dual_numbers_bad_pair(), coalgebras()[0].clone());
        assert!(matches!(check_subcomplex(&s, 1, &Guard::default()), Err(Error::Precondition(_))));
        // past the precondition, δ1 has δ1(x∂) = 1 ∉ span{x}
        let err = linear_dims_preserved(&s, 1, &Guard::default(), Convention::Twisted).unwrap_err();
        assert!(matches!(&err, Error::Consistency(m) if m.contains("0-cochain") && m.ends_with("slot 1")), "{err}");
    }

    #[test]
    fn linear_dims_for_truncated_polynomials() {
        // f(D1) ∈ span{x, x²}; f(D1, D2) = f(D1, x·D1) = x·f(D1, D1) = 0,
        // which T≤2 cannot see since its Δ² vanishes
        let dims = |c: &Arc<Coalgebra>| {
            let s = TdLrStructure::new(truncated_polynomial_pair(), c.clone());
            check_subcomplex(&s, 1, &Guard::default()).unwrap().linear_dims
        };
        assert_eq!(dims(&coalgebras()[0]), vec![3, 2, 3]);
        assert_eq!(dims(&coalgebras()[1]), vec![3, 2, 0]);
    }

    #[test]
    fn subcomplex_check_rejects_the_untwisted_reading() {
        let g = Guard::default().with_entry_limit(100_000);
        let s = TdLrStructure::new(trivial_pair(&sl2()), coalgebras()[1].clone());
        assert!(linear_dims_preserved(&s, 2, &g, Convention::Twisted).is_ok());
        let err = linear_dims_preserved(&s, 2, &g, Convention::Untwisted).unwrap_err();
        assert!(matches!(&err, Error::Consistency(m) if m.ends_with("slot 2")), "{err}");
    }
}
