//! Lie, associative and Poisson algebras and Lie modules given by structure
//! constants, with exact axiom checkers.

pub mod multilinear;

use crate::error::{Error, Result};
use crate::linalg::permutation::Permutation;
use crate::linalg::scalar;
use crate::space::{BasedSpace, Space};
use crate::witness::CheckReport;

use multilinear::MultilinearMap;

pub const SKEW: &str = "skew symmetry φ∘τ = −φ";
pub const JACOBI: &str = "Jacobi φ(1⊗φ)(1+ξ+ξ²) = 0";
pub const MODULE: &str = "module ψ(φ⊗1) = ψ(1⊗ψ) − ψ(1⊗ψ)τ";
pub const ASSOCIATIVE: &str = "associativity μ(μ⊗1) = μ(1⊗μ)";
pub const COMMUTATIVE: &str = "commutativity μ∘τ = μ";
pub const LEIBNIZ: &str = "Leibniz φ(1⊗μ) = μ(1⊗φ)ξ⁻¹ + μ(1⊗φ)(τ⊗1)";

/// `ξ = (0 1 2)`.
pub(crate) fn xi() -> Permutation {
    Permutation::cycle(3, &[0, 1, 2]).expect("S_3")
}

/// The pulling permutation taking `(z0, z1, z2)` to `(z2, z0, z1)`.
pub(crate) fn xi_inverse() -> Permutation {
    Permutation::new(vec![2, 0, 1]).expect("S_3")
}

pub(crate) fn tau(n: usize) -> Permutation {
    Permutation::transposition(n, 0, 1).expect("n ≥ 2")
}

fn require_binary(map: &MultilinearMap, left: &Space, right: &Space, target: &Space, what: &str) -> Result<()> {
    let ok = map.arity() == 2
        && map.codomain().len() == 1
        && map.domain()[0].dim() == left.dim()
        && map.domain()[1].dim() == right.dim()
        && map.target().dim() == target.dim();
    if ok {
        Ok(())
    } else {
        Err(Error::Malformed(format!(
            "{what} must map {}⊗{} → {}",
            left.name(),
            right.name(),
            target.name()
        )))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    name: String,
    space: Space,
    bracket: MultilinearMap,
}

impl LieAlgebra {
    /// Rejects brackets that fail skew symmetry or Jacobi.
    pub fn new(name: impl Into<String>, space: Space, bracket: MultilinearMap) -> Result<Self> {
        let l = Self::new_unchecked(name, space, bracket)?;
        check_lie(&l)?.into_result()?;
        Ok(l)
    }

    /// Shape checks only.
    pub fn new_unchecked(name: impl Into<String>, space: Space, bracket: MultilinearMap) -> Result<Self> {
        require_binary(&bracket, &space, &space, &space, "bracket")?;
        Ok(Self { name: name.into(), space, bracket })
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

    pub fn bracket(&self) -> &MultilinearMap {
        &self.bracket
    }
}

/// Skew symmetry for `τ` and Jacobi summed over `{1, ξ, ξ²}`, each on every
/// basis tuple.
pub fn check_lie(l: &LieAlgebra) -> Result<CheckReport> {
    let phi = &l.bracket;
    let mut report = CheckReport::new();
    report.push(SKEW, phi.precompose(&tau(2))?.add(phi)?.zero_verdict());
    let h = phi.compose_at(1, phi)?;
    let xi = xi();
    let sum = h.add(&h.precompose(&xi)?)?.add(&h.precompose(&xi.compose(&xi))?)?;
    report.push(JACOBI, sum.zero_verdict());
    Ok(report)
}

/// `B` with an action `ψ : L ⊗ B → B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieModule {
    name: String,
    algebra: LieAlgebra,
    space: Space,
    action: MultilinearMap,
}

impl LieModule {
    pub fn new(name: impl Into<String>, algebra: LieAlgebra, space: Space, action: MultilinearMap) -> Result<Self> {
        let m = Self::new_unchecked(name, algebra, space, action)?;
        check_module(&m)?.into_result()?;
        Ok(m)
    }

    pub fn new_unchecked(name: impl Into<String>, algebra: LieAlgebra, space: Space, action: MultilinearMap) -> Result<Self> {
        require_binary(&action, algebra.space(), &space, &space, "action")?;
        Ok(Self { name: name.into(), algebra, space, action })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn action(&self) -> &MultilinearMap {
        &self.action
    }
}

pub fn check_module(m: &LieModule) -> Result<CheckReport> {
    let psi = &m.action;
    let lhs = psi.compose_at(0, m.algebra.bracket())?;
    let nested = psi.compose_at(1, psi)?;
    let rhs = nested.sub(&nested.precompose(&tau(3))?)?;
    let mut report = CheckReport::new();
    report.push(MODULE, lhs.equality_verdict(&rhs)?);
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociativeAlgebra {
    name: String,
    space: Space,
    product: MultilinearMap,
}

impl AssociativeAlgebra {
    pub fn new(name: impl Into<String>, space: Space, product: MultilinearMap) -> Result<Self> {
        let a = Self::new_unchecked(name, space, product)?;
        check_associative(&a)?.into_result()?;
        Ok(a)
    }

    pub fn new_unchecked(name: impl Into<String>, space: Space, product: MultilinearMap) -> Result<Self> {
        require_binary(&product, &space, &space, &space, "product")?;
        Ok(Self { name: name.into(), space, product })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn product(&self) -> &MultilinearMap {
        &self.product
    }
}

pub fn check_associative(a: &AssociativeAlgebra) -> Result<CheckReport> {
    let mu = &a.product;
    let mut report = CheckReport::new();
    report.push(ASSOCIATIVE, mu.compose_at(0, mu)?.equality_verdict(&mu.compose_at(1, mu)?)?);
    Ok(report)
}

pub fn check_commutative(a: &AssociativeAlgebra) -> Result<CheckReport> {
    let mu = &a.product;
    let mut report = CheckReport::new();
    report.push(COMMUTATIVE, mu.precompose(&tau(2))?.equality_verdict(mu)?);
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonAlgebra {
    name: String,
    space: Space,
    bracket: MultilinearMap,
    product: MultilinearMap,
}

impl PoissonAlgebra {
    pub fn new(name: impl Into<String>, space: Space, bracket: MultilinearMap, product: MultilinearMap) -> Result<Self> {
        let p = Self::new_unchecked(name, space, bracket, product)?;
        check_poisson(&p)?.into_result()?;
        Ok(p)
    }

    pub fn new_unchecked(name: impl Into<String>, space: Space, bracket: MultilinearMap, product: MultilinearMap) -> Result<Self> {
        require_binary(&bracket, &space, &space, &space, "bracket")?;
        require_binary(&product, &space, &space, &space, "product")?;
        Ok(Self { name: name.into(), space, bracket, product })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn bracket(&self) -> &MultilinearMap {
        &self.bracket
    }

    pub fn product(&self) -> &MultilinearMap {
        &self.product
    }

    pub fn lie(&self) -> LieAlgebra {
        LieAlgebra { name: self.name.clone(), space: self.space.clone(), bracket: self.bracket.clone() }
    }

    pub fn associative(&self) -> AssociativeAlgebra {
        AssociativeAlgebra { name: self.name.clone(), space: self.space.clone(), product: self.product.clone() }
    }
}

/// Lie axioms, associativity, commutativity and the Leibniz rule in the
/// form `[a, bc] = c[a, b] + b[a, c]`.
pub fn check_poisson(p: &PoissonAlgebra) -> Result<CheckReport> {
    let mut report = check_lie(&p.lie())?;
    report.extend(check_associative(&p.associative())?);
    report.extend(check_commutative(&p.associative())?);
    let lhs = p.bracket.compose_at(1, &p.product)?;
    let h = p.product.compose_at(1, &p.bracket)?;
    let rhs = h.precompose(&xi_inverse())?.add(&h.precompose(&tau(3))?)?;
    report.push(LEIBNIZ, lhs.equality_verdict(&rhs)?);
    Ok(report)
}

fn bracket_from(space: &Space, table: &[(usize, usize, usize, i64)]) -> MultilinearMap {
    MultilinearMap::from_simple_entries(
        vec![space.clone(), space.clone()],
        space.clone(),
        table.iter().map(|&(i, j, k, q)| (vec![i, j], k, scalar::int(q))),
    )
    .expect("indices in range")
}

/// `sl₂` on `{h, e, f}`: `[h,e] = 2e`, `[h,f] = −2f`, `[e,f] = h`.
pub fn sl2() -> LieAlgebra {
    let l = BasedSpace::from_labels("sl2", &["h", "e", "f"]);
    let b = bracket_from(&l, &[(0, 1, 1, 2), (1, 0, 1, -2), (0, 2, 2, -2), (2, 0, 2, 2), (1, 2, 0, 1), (2, 1, 0, -1)]);
    LieAlgebra::new("sl2", l, b).expect("sl2 is a Lie algebra")
}

/// Heisenberg algebra on `{x, y, z}` with `[x, y] = z`.
pub fn heisenberg() -> LieAlgebra {
    let l = BasedSpace::from_labels("heis", &["x", "y", "z"]);
    let b = bracket_from(&l, &[(0, 1, 2, 1), (1, 0, 2, -1)]);
    LieAlgebra::new("heisenberg", l, b).expect("Heisenberg is a Lie algebra")
}

pub fn abelian(dim: usize) -> LieAlgebra {
    let l = BasedSpace::numbered(&format!("k{dim}"), "x", dim);
    let b = MultilinearMap::zero(vec![l.clone(), l.clone()], vec![l.clone()]);
    LieAlgebra::new(format!("abelian{dim}"), l, b).expect("zero bracket")
}

/// `L` acting on itself by the bracket.
pub fn adjoint_module(l: &LieAlgebra) -> LieModule {
    LieModule::new_unchecked(format!("ad({})", l.name()), l.clone(), l.space().clone(), l.bracket().clone())
        .expect("bracket has module shape")
}

/// `B = k^dim` with `ψ = 0`.
pub fn trivial_module(l: &LieAlgebra, dim: usize) -> LieModule {
    let b = BasedSpace::numbered("k", "b", dim);
    let psi = MultilinearMap::zero(vec![l.space().clone(), b.clone()], vec![b.clone()]);
    LieModule::new_unchecked(format!("trivial({})", l.name()), l.clone(), b, psi).expect("zero action")
}

/// `sl₂` with `[e,f] = h + e`: still skew, Jacobi fails.
pub fn broken_jacobi() -> LieAlgebra {
    let l = sl2();
    let mut b = l.bracket().clone();
    b.add_entry(vec![1, 2], vec![1], &scalar::one());
    b.add_entry(vec![2, 1], vec![1], &-scalar::one());
    LieAlgebra::new_unchecked("broken-jacobi", l.space().clone(), b).expect("sl2 shape")
}

fn truncated_poisson_with(name: &str, shift: bool) -> PoissonAlgebra {
    let s = BasedSpace::from_labels("P", &["1", "x", "y"]);
    let mu = bracket_from(&s, &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (0, 2, 2, 1), (2, 0, 2, 1)]);
    let mut table = vec![(1, 2, 1, 1), (2, 1, 1, -1)];
    if shift {
        table.extend([(1, 2, 0, 1), (2, 1, 0, -1)]);
    }
    PoissonAlgebra::new_unchecked(name, s.clone(), bracket_from(&s, &table), mu).expect("shape")
}

/// `k[x,y]/(x², xy, y²)` on `{1, x, y}` with `{x, y} = x`.
pub fn truncated_poisson() -> PoissonAlgebra {
    truncated_poisson_with("poisson-truncated", false)
}

/// As [`truncated_poisson`] but `{x, y} = x + 1`, which breaks Leibniz.
pub fn truncated_poisson_bad() -> PoissonAlgebra {
    truncated_poisson_with("poisson-bad", true)
}

/// Dual numbers `k[x]/(x²)` with the zero bracket.
pub fn dual_numbers_poisson() -> PoissonAlgebra {
    let d = BasedSpace::from_labels("D", &["1", "x"]);
    let mu = bracket_from(&d, &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)]);
    let zero = MultilinearMap::zero(vec![d.clone(), d.clone()], vec![d.clone()]);
    PoissonAlgebra::new("dual-numbers-poisson", d, zero, mu).expect("dual numbers are Poisson")
}
