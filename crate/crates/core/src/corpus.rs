//! Example structure files shipped with the crate.

use std::sync::Arc;

use crate::algebra::{LieAlgebra, LieModule, PoissonAlgebra};
use crate::coalgebra::Coalgebra;
use crate::error::Result;
use crate::format::{load_structure_constants, Role, Structure};
use crate::lie_rinehart::LieRinehartPair;

#[derive(Clone, Copy, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub text: &'static str,
    /// Deliberately fails an axiom; loads with checks skipped.
    pub broken: bool,
}

macro_rules! fixtures {
    ($($name:literal $(broken $b:literal)?),* $(,)?) => {
        &[$(Fixture {
            name: $name,
            text: include_str!(concat!("../corpus/", $name, ".json")),
            broken: false $(|| $b)?,
        }),*]
    };
}

pub const FIXTURES: &[Fixture] = fixtures![
    "sl2",
    "heisenberg",
    "abelian2",
    "broken-jacobi" broken true,
    "sl2-trivial",
    "sl2-adjoint",
    "heisenberg-adjoint",
    "abelian2-trivial",
    "sl2-bad-action" broken true,
    "poisson-truncated",
    "poisson-bad" broken true,
    "dual-numbers-poisson",
    "trivial-lr",
    "dual-numbers-lr",
    "dual-numbers-lr-bad" broken true,
    "kx3-lr",
    "tensor-coalgebra-le2",
    "tensor-coalgebra-le3",
    "symmetric-coalgebra-le2",
    "exterior-square-coalgebra",
    "zero-coalgebra",
    "noncoassociative-coalgebra" broken true,
    "hom-element",
];

pub fn get(name: &str) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.name == name)
}

impl Fixture {
    pub fn load(&self) -> Result<Structure> {
        load_structure_constants(self.text, self.broken)
    }

    pub fn role(&self) -> Role {
        self.load().expect("corpus fixtures parse").role()
    }

    /// Role plus what the checkers say about it, e.g. `coalgebra,
    /// skew_cocommutative` or `lie, fails Jacobi …`.
    pub fn classification(&self) -> String {
        let s = self.load().expect("corpus fixtures parse");
        let mut out = s.role().as_str().to_string();
        if let Structure::Coalgebra(c) = &s {
            out += &format!(", {}", c.symmetry_class());
        }
        if self.broken {
            match load_structure_constants(self.text, false) {
                Err(crate::Error::Axiom { axiom, .. }) => out += &format!(", fails {axiom}"),
                Err(crate::Error::Precondition(why)) => out += &format!(", fails {why}"),
                _ => out += ", broken",
            }
        }
        out
    }
}

fn healthy(role: Role) -> impl Iterator<Item = Structure> {
    FIXTURES
        .iter()
        .filter(move |f| !f.broken)
        .map(|f| f.load().expect("corpus fixtures load"))
        .filter(move |s| s.role() == role)
}

/// Every axiom-satisfying Lie algebra in the corpus, including those
/// underlying modules and pairs, without repeats.
pub fn lie_algebras() -> Vec<LieAlgebra> {
    let mut out: Vec<LieAlgebra> = Vec::new();
    let all = healthy(Role::Lie)
        .filter_map(|s| match s {
            Structure::Lie(l) => Some(l),
            _ => None,
        })
        .chain(modules().into_iter().map(|m| m.algebra().clone()))
        .chain(lr_pairs().into_iter().map(|p| p.lie().clone()));
    for l in all {
        if !out.iter().any(|o| o.bracket() == l.bracket()) {
            out.push(l);
        }
    }
    out
}

pub fn modules() -> Vec<LieModule> {
    healthy(Role::Module)
        .filter_map(|s| match s {
            Structure::Module(m) => Some(m),
            _ => None,
        })
        .collect()
}

pub fn coalgebras() -> Vec<Arc<Coalgebra>> {
    healthy(Role::Coalgebra)
        .filter_map(|s| match s {
            Structure::Coalgebra(c) => Some(Arc::new(c)),
            _ => None,
        })
        .collect()
}

pub fn poisson_algebras() -> Vec<PoissonAlgebra> {
    healthy(Role::Poisson)
        .filter_map(|s| match s {
            Structure::Poisson(p) => Some(p),
            _ => None,
        })
        .collect()
}

pub fn lr_pairs() -> Vec<LieRinehartPair> {
    healthy(Role::LieRinehart)
        .filter_map(|s| match s {
            Structure::LieRinehart(p) => Some(p),
            _ => None,
        })
        .collect()
}

pub fn load(name: &str) -> Option<Result<Structure>> {
    get(name).map(Fixture::load)
}
