use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Finite-dimensional vector space with a named basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BasedSpace {
    name: String,
    labels: Vec<String>,
}

pub type Space = Arc<BasedSpace>;

impl BasedSpace {
    pub fn new(name: impl Into<String>, labels: Vec<String>) -> Result<Space> {
        let name = name.into();
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::Malformed(format!("space {name:?} repeats basis label {l:?}")));
            }
        }
        Ok(Arc::new(Self { name, labels }))
    }

    pub fn from_labels(name: &str, labels: &[&str]) -> Space {
        Self::new(name, labels.iter().map(|s| s.to_string()).collect()).expect("distinct labels")
    }

    /// Basis `e0, e1, …` (or `name0, …` when a prefix is given).
    pub fn numbered(name: &str, prefix: &str, dim: usize) -> Space {
        Arc::new(Self { name: name.to_string(), labels: (0..dim).map(|i| format!("{prefix}{i}")).collect() })
    }

    /// `Hom(source, target)` with matrix-unit basis `t<-s`, row-major in
    /// `(target, source)`: index `t * dim(source) + s`.
    pub fn hom(source: &BasedSpace, target: &BasedSpace) -> Space {
        let mut labels = Vec::with_capacity(source.dim() * target.dim());
        for t in &target.labels {
            for s in &source.labels {
                labels.push(format!("{t}<-{s}"));
            }
        }
        Arc::new(Self { name: format!("Hom({},{})", source.name, target.name), labels })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn renamed(&self, name: &str) -> Space {
        Arc::new(Self { name: name.to_string(), labels: self.labels.clone() })
    }
}

impl fmt::Debug for BasedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.name, self.labels)
    }
}
