//! Twisted-domain structures on `Hom(C, L)`: the TD Lie identities, the
//! collapse for cocommutative `C`, the Jordan identities for skew
//! cocommutative `C`, TD Poisson algebras and TD modules.
//!
//! Every identity is an equality of materialized operators, so it is decided
//! on all tuples of matrix units at once.

use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::multilinear::MultilinearMap;
use crate::algebra::{self, tau, xi, xi_inverse, LieAlgebra, LieModule, PoissonAlgebra};
use crate::coalgebra::Coalgebra;
use crate::convolution::{compose_induced, induced, HomElement, HomOperator, InducedOperator};
use crate::error::{Error, Result};
use crate::linalg::permutation::Permutation;
use crate::witness::{CheckReport, Verdict, Witness};

pub const TD_SKEW: &str = "TD skew Φ∘τ = −Φ^τ";
pub const TD_JACOBI: &str = "TD Jacobi Φ(1⊗Φ) + Φ(1⊗Φ)^ξ∘ξ + Φ(1⊗Φ)^ξ²∘ξ² = 0";
pub const SKEW: &str = "skew symmetry Φ∘τ = −Φ";
pub const JACOBI: &str = "Jacobi Φ(1⊗Φ)(1+ξ+ξ²) = 0";
pub const SYMMETRY: &str = "symmetry Φ∘τ = Φ";
pub const JORDAN_COMMUTATIVE: &str = "fg = gf";
pub const JORDAN_CUBE: &str = "(f²)f = 0";
pub const JORDAN: &str = "(f²g)f + f²(gf) = 0";
pub const TD_COMMUTATIVE: &str = "TD commutativity M∘τ = M^τ";
pub const TD_LEIBNIZ: &str = "TD Leibniz Φ(1⊗M) = M(1⊗Φ)^ξ⁻¹∘ξ⁻¹ + M(1⊗Φ)^τ∘τ";
pub const TD_MODULE: &str = "TD module Ψ(Φ⊗1) = Ψ(1⊗Ψ) − Ψ(1⊗Ψ)^τ∘τ";

/// `(h_*Δ^*Λ)^σ ∘ σ`, the operator induced by `h∘σ`.
pub(crate) fn twisted_then_permuted(h: &InducedOperator, sigma: &Permutation) -> Result<HomOperator> {
    h.with_twist(sigma)?.materialize()?.precompose(sigma)
}

fn materialized(phi: &MultilinearMap, c: &Arc<Coalgebra>) -> Result<HomOperator> {
    induced(phi, c)?.materialize()
}

/// `Φ` for a Lie algebra `L` over `C`.
#[derive(Clone, Debug)]
pub struct TdLie {
    pub lie: LieAlgebra,
    pub coalgebra: Arc<Coalgebra>,
    pub phi: InducedOperator,
}

impl TdLie {
    pub fn new(lie: LieAlgebra, coalgebra: Arc<Coalgebra>) -> Result<Self> {
        let phi = induced(lie.bracket(), &coalgebra)?;
        Ok(Self { lie, coalgebra, phi })
    }
}

/// TD skew symmetry and the TD Jacobi identity, with the Jacobi terms built
/// as `compose_induced(Φ, Φ)` twisted by `1, ξ, ξ²`.
///
/// The bracket is not required to pass the classical checks first, so a
/// broken bracket shows up as a failing identity here.
pub fn check_td_lie(l: &LieAlgebra, c: &Arc<Coalgebra>) -> Result<CheckReport> {
    let td = TdLie::new(l.clone(), c.clone())?;
    let phi = td.phi.materialize()?;
    let phi_tau = td.phi.with_twist(&tau(2))?.materialize()?;
    let mut report = CheckReport::new();
    report.push(TD_SKEW, phi.precompose(&tau(2))?.equality_verdict(&phi_tau.neg())?);

    let nested = compose_induced(&td.phi, &td.phi, 1)?;
    let xi = xi();
    let mut sum = nested.materialize()?;
    sum = sum.add(&twisted_then_permuted(&nested, &xi)?)?;
    sum = sum.add(&twisted_then_permuted(&nested, &xi.compose(&xi))?)?;
    report.push(TD_JACOBI, sum.zero_verdict());
    Ok(report)
}

fn untwisted_lie(phi: &HomOperator) -> Result<CheckReport> {
    let mut report = CheckReport::new();
    report.push(SKEW, phi.precompose(&tau(2))?.add(phi)?.zero_verdict());
    report.push(JACOBI, untwisted_jacobi(phi)?);
    Ok(report)
}

fn untwisted_jacobi(phi: &HomOperator) -> Result<Verdict> {
    let h = phi.compose_at(1, phi)?;
    let xi = xi();
    Ok(h.add(&h.precompose(&xi)?)?.add(&h.precompose(&xi.compose(&xi))?)?.zero_verdict())
}

/// For cocommutative `C`, `Φ` is an honest Lie bracket on `Hom(C, L)`.
pub fn check_cocommutative_collapse(l: &LieAlgebra, c: &Arc<Coalgebra>) -> Result<CheckReport> {
    if !c.is_cocommutative() {
        return Err(Error::Precondition(format!("{} is {}, not cocommutative", c.name(), c.symmetry_class())));
    }
    untwisted_lie(&materialized(l.bracket(), c)?)
}

fn element_verdict(tuple: &[&HomElement], value: &HomElement) -> Verdict {
    if value.is_zero() {
        return Verdict::Pass;
    }
    let space = value.space();
    let residual = value
        .coordinates()
        .into_iter()
        .enumerate()
        .filter(|(_, q)| !q.is_zero())
        .map(|(i, q)| (space.label(i).to_string(), q))
        .collect();
    Verdict::Fail(Witness { tuple: tuple.iter().map(|f| f.label()).collect(), residual })
}

/// The Jordan identities `fg = gf`, `(f²)f = 0` and `(f²g)f + f²(gf) = 0`
/// for `f, g` running over `elements`, with `fg := Φ(f, g)`.
pub fn jordan_element_checks(phi: &HomOperator, elements: &[HomElement]) -> Result<CheckReport> {
    let mul = |a: &HomElement, b: &HomElement| phi.evaluate(&[a.clone(), b.clone()]);
    let (mut commutative, mut cube, mut jordan) = (Verdict::Pass, Verdict::Pass, Verdict::Pass);
    for f in elements {
        let f2 = mul(f, f)?;
        if cube.passed() {
            cube = element_verdict(&[f], &mul(&f2, f)?);
        }
        for g in elements {
            if commutative.passed() {
                commutative = element_verdict(&[f, g], &mul(f, g)?.sub(&mul(g, f)?)?);
            }
            if jordan.passed() {
                let lhs = mul(&mul(&f2, g)?, f)?;
                let rhs = mul(&f2, &mul(g, f)?)?;
                jordan = element_verdict(&[f, g], &lhs.add(&rhs)?);
            }
        }
    }
    let mut report = CheckReport::new();
    report.push(JORDAN_COMMUTATIVE, commutative);
    report.push(JORDAN_CUBE, cube);
    report.push(JORDAN, jordan);
    Ok(report)
}

/// For `τ∘Δ = −Δ`: `Φ` is symmetric, satisfies Jacobi, and the Jordan
/// identities hold on every matrix unit.
pub fn check_jordan(l: &LieAlgebra, c: &Arc<Coalgebra>) -> Result<CheckReport> {
    if !c.is_skew_cocommutative() {
        return Err(Error::Precondition(format!("{} does not satisfy τ∘Δ = −Δ", c.name())));
    }
    algebra::check_lie(l)?.into_result().map_err(|e| Error::Precondition(e.to_string()))?;
    let phi = materialized(l.bracket(), c)?;
    let mut report = CheckReport::new();
    report.push(SYMMETRY, phi.precompose(&tau(2))?.equality_verdict(&phi)?);
    report.push(JACOBI, untwisted_jacobi(&phi)?);
    report.extend(jordan_element_checks(&phi, &HomElement::basis(c, l.space()))?);
    Ok(report)
}

/// TD Lie for the bracket, TD commutativity of `M` and the twisted Leibniz
/// rule.
pub fn check_td_poisson(p: &PoissonAlgebra, c: &Arc<Coalgebra>) -> Result<CheckReport> {
    algebra::check_poisson(p)?.into_result().map_err(|e| Error::Precondition(e.to_string()))?;
    let mut report = check_td_lie(&p.lie(), c)?;
    let m = induced(p.product(), c)?;
    let m_tau = m.with_twist(&tau(2))?.materialize()?;
    report.push(TD_COMMUTATIVE, m.materialize()?.precompose(&tau(2))?.equality_verdict(&m_tau)?);

    let phi = induced(p.bracket(), c)?;
    let lhs = compose_induced(&phi, &m, 1)?.materialize()?;
    let h = compose_induced(&m, &phi, 1)?;
    let rhs = twisted_then_permuted(&h, &xi_inverse())?.add(&twisted_then_permuted(&h, &tau(3))?)?;
    report.push(TD_LEIBNIZ, lhs.equality_verdict(&rhs)?);
    Ok(report)
}

/// `Ψ` induced by a Lie module, together with `Φ`.
#[derive(Clone, Debug)]
pub struct TdModule {
    pub module: LieModule,
    pub coalgebra: Arc<Coalgebra>,
}

impl TdModule {
    pub fn new(module: LieModule, coalgebra: Arc<Coalgebra>) -> Self {
        Self { module, coalgebra }
    }

    pub fn phi(&self) -> Result<InducedOperator> {
        induced(self.module.algebra().bracket(), &self.coalgebra)
    }

    pub fn psi(&self) -> Result<InducedOperator> {
        induced(self.module.action(), &self.coalgebra)
    }
}

pub fn check_td_module(m: &TdModule) -> Result<CheckReport> {
    algebra::check_module(&m.module)?.into_result().map_err(|e| Error::Precondition(e.to_string()))?;
    let (phi, psi) = (m.phi()?, m.psi()?);
    let lhs = compose_induced(&psi, &phi, 0)?.materialize()?;
    let h = compose_induced(&psi, &psi, 1)?;
    let rhs = h.materialize()?.sub(&twisted_then_permuted(&h, &tau(3))?)?;
    let mut report = CheckReport::new();
    report.push(TD_MODULE, lhs.equality_verdict(&rhs)?);
    Ok(report)
}
