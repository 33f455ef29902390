//! The `tdhom/1` structure-file format: UTF-8 JSON, spaces by name and
//! labels, maps as sparse entry lists `[i_1, …, i_n, o_1, …, o_m, "p/q"]`.

use std::collections::BTreeMap;
use std::io;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::multilinear::MultilinearMap;
use crate::algebra::{AssociativeAlgebra, LieAlgebra, LieModule, PoissonAlgebra};
use crate::coalgebra::Coalgebra;
use crate::convolution::HomElement;
use crate::error::{Error, Result};
use crate::lie_rinehart::LieRinehartPair;
use crate::linalg::scalar;
use crate::linalg::RationalMatrix;
use crate::space::{BasedSpace, Space};

pub const FORMAT_VERSION: &str = "tdhom/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Role {
    Lie,
    Associative,
    Module,
    Poisson,
    LieRinehart,
    Coalgebra,
    HomElement,
}

impl Role {
    pub fn as_str(self) -> &'static str {
        match self {
            Role::Lie => "lie",
            Role::Associative => "associative",
            Role::Module => "module",
            Role::Poisson => "poisson",
            Role::LieRinehart => "lie-rinehart",
            Role::Coalgebra => "coalgebra",
            Role::HomElement => "hom-element",
        }
    }

    /// Map names a file of this role must provide.
    fn maps(self) -> &'static [&'static str] {
        match self {
            Role::Lie => &["bracket"],
            Role::Associative => &["product"],
            Role::Module => &["action", "bracket"],
            Role::Poisson => &["bracket", "product"],
            Role::LieRinehart => &["action", "bracket", "module", "product"],
            Role::Coalgebra => &["coproduct"],
            Role::HomElement => &["coproduct", "element"],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceEntry {
    pub name: String,
    pub dim: usize,
    pub labels: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapEntry {
    pub domain: Vec<String>,
    pub codomain: Vec<String>,
    pub entries: Vec<Vec<Value>>,
}

/// On-disk layout. `parts` names the constituents of composite structures.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    pub format: String,
    pub role: Role,
    pub name: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub parts: BTreeMap<String, String>,
    pub spaces: Vec<SpaceEntry>,
    pub maps: BTreeMap<String, MapEntry>,
}

#[derive(Clone, Debug)]
pub enum Structure {
    Lie(LieAlgebra),
    Associative(AssociativeAlgebra),
    Module(LieModule),
    Poisson(PoissonAlgebra),
    LieRinehart(LieRinehartPair),
    Coalgebra(Coalgebra),
    HomElement(HomElement),
}

impl Structure {
    pub fn role(&self) -> Role {
        match self {
            Structure::Lie(_) => Role::Lie,
            Structure::Associative(_) => Role::Associative,
            Structure::Module(_) => Role::Module,
            Structure::Poisson(_) => Role::Poisson,
            Structure::LieRinehart(_) => Role::LieRinehart,
            Structure::Coalgebra(_) => Role::Coalgebra,
            Structure::HomElement(_) => Role::HomElement,
        }
    }

    pub fn name(&self) -> String {
        match self {
            Structure::Lie(l) => l.name().to_string(),
            Structure::Associative(a) => a.name().to_string(),
            Structure::Module(m) => m.name().to_string(),
            Structure::Poisson(p) => p.name().to_string(),
            Structure::LieRinehart(p) => p.name().to_string(),
            Structure::Coalgebra(c) => c.name().to_string(),
            Structure::HomElement(h) => h.label(),
        }
    }
}

pub fn parse(text: &str) -> Result<StructureFile> {
    let file: StructureFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if file.format != FORMAT_VERSION {
        return Err(Error::Parse(format!("unsupported format {:?}, expected {FORMAT_VERSION:?}", file.format)));
    }
    Ok(file)
}

/// Parses and builds the declared structure. Unless `skip_axioms`, the
/// structure's axioms are checked and the first failure is returned with its
/// witness.
pub fn load_structure_constants(text: &str, skip_axioms: bool) -> Result<Structure> {
    parse(text)?.build(skip_axioms)
}

pub fn to_text(s: &Structure) -> Result<String> {
    StructureFile::from_structure(s)?.to_text()
}

impl StructureFile {
    pub fn to_text(&self) -> Result<String> {
        let mut out = Vec::new();
        let mut ser = serde_json::Serializer::with_formatter(&mut out, EntryFormatter::default());
        self.serialize(&mut ser).map_err(|e| Error::Malformed(e.to_string()))?;
        out.push(b'\n');
        Ok(String::from_utf8(out).expect("serde_json writes UTF-8"))
    }

    pub fn build(&self, skip_axioms: bool) -> Result<Structure> {
        let expected = self.role.maps();
        let found: Vec<&str> = self.maps.keys().map(String::as_str).collect();
        if found != expected {
            return Err(Error::Parse(format!("role {} needs maps {expected:?}, found {found:?}", self.role.as_str())));
        }
        let spaces = self.spaces()?;
        let map = |key: &str| -> Result<MultilinearMap> { self.maps[key].build(key, &spaces) };
        let part = |key: &str| -> String { self.parts.get(key).cloned().unwrap_or_else(|| self.name.clone()) };
        let name = self.name.clone();
        let domain0 = |m: &MultilinearMap| m.domain()[0].clone();
        let codomain0 = |m: &MultilinearMap| m.codomain()[0].clone();
        Ok(match self.role {
            Role::Lie => {
                let b = map("bracket")?;
                let sp = domain0(&b);
                Structure::Lie(if skip_axioms { LieAlgebra::new_unchecked(name, sp, b)? } else { LieAlgebra::new(name, sp, b)? })
            }
            Role::Associative => {
                let p = map("product")?;
                let sp = domain0(&p);
                Structure::Associative(if skip_axioms {
                    AssociativeAlgebra::new_unchecked(name, sp, p)?
                } else {
                    AssociativeAlgebra::new(name, sp, p)?
                })
            }
            Role::Module => {
                let b = map("bracket")?;
                let lie = LieAlgebra::new_unchecked(part("lie"), domain0(&b), b)?;
                let a = map("action")?;
                let sp = codomain0(&a);
                Structure::Module(if skip_axioms {
                    LieModule::new_unchecked(name, lie, sp, a)?
                } else {
                    crate::algebra::check_lie(&lie)?.into_result()?;
                    LieModule::new(name, lie, sp, a)?
                })
            }
            Role::Poisson => {
                let (b, p) = (map("bracket")?, map("product")?);
                let sp = domain0(&b);
                Structure::Poisson(if skip_axioms {
                    PoissonAlgebra::new_unchecked(name, sp, b, p)?
                } else {
                    PoissonAlgebra::new(name, sp, b, p)?
                })
            }
            Role::LieRinehart => {
                let b = map("bracket")?;
                let lie = LieAlgebra::new_unchecked(part("lie"), domain0(&b), b)?;
                let p = map("product")?;
                let algebra = AssociativeAlgebra::new_unchecked(part("algebra"), domain0(&p), p)?;
                let (mu, psi) = (map("module")?, map("action")?);
                Structure::LieRinehart(if skip_axioms {
                    LieRinehartPair::new_unchecked(name, lie, algebra, mu, psi)?
                } else {
                    LieRinehartPair::new(name, lie, algebra, mu, psi)?
                })
            }
            Role::Coalgebra => Structure::Coalgebra(coalgebra(name, map("coproduct")?, skip_axioms)?),
            Role::HomElement => {
                let c = Arc::new(coalgebra(part("coalgebra"), map("coproduct")?, skip_axioms)?);
                let e = map("element")?;
                if e.arity() != 1 || e.codomain().len() != 1 || e.domain()[0] != *c.space() {
                    return Err(Error::Parse("element must map the coalgebra space to one target space".into()));
                }
                let target = codomain0(&e);
                let mut m = RationalMatrix::zeros(target.dim(), c.dim());
                for (i, o, q) in e.triples() {
                    m.set(o[0], i[0], q.clone());
                }
                Structure::HomElement(HomElement::new(c, target, m)?)
            }
        })
    }

    fn spaces(&self) -> Result<BTreeMap<String, Space>> {
        let mut out = BTreeMap::new();
        for s in &self.spaces {
            if s.labels.len() != s.dim {
                return Err(Error::Parse(format!("space {}: dim {} but {} labels", s.name, s.dim, s.labels.len())));
            }
            let space = BasedSpace::new(s.name.clone(), s.labels.clone()).map_err(|e| Error::Parse(format!("space {}: {e}", s.name)))?;
            if out.insert(s.name.clone(), space).is_some() {
                return Err(Error::Parse(format!("space {} declared twice", s.name)));
            }
        }
        Ok(out)
    }

    pub fn from_structure(s: &Structure) -> Result<Self> {
        let mut maps: Vec<(&str, &MultilinearMap)> = Vec::new();
        let mut parts = BTreeMap::new();
        let element;
        match s {
            Structure::Lie(l) => maps.push(("bracket", l.bracket())),
            Structure::Associative(a) => maps.push(("product", a.product())),
            Structure::Module(m) => {
                parts.insert("lie".to_string(), m.algebra().name().to_string());
                maps.extend([("bracket", m.algebra().bracket()), ("action", m.action())]);
            }
            Structure::Poisson(p) => maps.extend([("bracket", p.bracket()), ("product", p.product())]),
            Structure::LieRinehart(p) => {
                parts.insert("lie".to_string(), p.lie().name().to_string());
                parts.insert("algebra".to_string(), p.algebra().name().to_string());
                maps.extend([
                    ("bracket", p.lie().bracket()),
                    ("product", p.algebra().product()),
                    ("module", p.module_map()),
                    ("action", p.action()),
                ]);
            }
            Structure::Coalgebra(c) => maps.push(("coproduct", c.coproduct())),
            Structure::HomElement(h) => {
                parts.insert("coalgebra".to_string(), h.coalgebra().name().to_string());
                let entries = (0..h.coalgebra().dim()).flat_map(|c| {
                    (0..h.target().dim()).map(move |t| (vec![c], vec![t], h.matrix().get(t, c).clone()))
                });
                element = MultilinearMap::from_entries(vec![h.coalgebra().space().clone()], vec![h.target().clone()], entries)?;
                maps.extend([("coproduct", h.coalgebra().coproduct()), ("element", &element)]);
            }
        }
        let mut spaces: Vec<SpaceEntry> = Vec::new();
        for (_, m) in &maps {
            for sp in m.domain().iter().chain(m.codomain()) {
                match spaces.iter().find(|e| e.name == sp.name()) {
                    Some(e) if e.labels != sp.labels() => {
                        return Err(Error::Malformed(format!("two different spaces are both named {}", sp.name())))
                    }
                    Some(_) => {}
                    None => spaces.push(SpaceEntry { name: sp.name().to_string(), dim: sp.dim(), labels: sp.labels().to_vec() }),
                }
            }
        }
        let maps = maps.into_iter().map(|(k, m)| (k.to_string(), MapEntry::from_map(m))).collect();
        Ok(Self { format: FORMAT_VERSION.to_string(), role: s.role(), name: s.name(), parts, spaces, maps })
    }
}

fn coalgebra(name: String, coproduct: MultilinearMap, skip_axioms: bool) -> Result<Coalgebra> {
    if skip_axioms {
        let space = coproduct.domain().first().cloned().ok_or_else(|| Error::Parse("coproduct without domain".into()))?;
        let terms = coproduct.triples().map(|(i, o, q)| (i[0], o[0], o[1], q.clone())).collect();
        Coalgebra::new_unchecked(name, space, terms)
    } else {
        Coalgebra::from_coproduct(name, coproduct)
    }
}

impl MapEntry {
    pub fn from_map(m: &MultilinearMap) -> Self {
        let names = |v: &[Space]| v.iter().map(|s| s.name().to_string()).collect();
        let entries = m
            .triples()
            .map(|(i, o, q)| i.iter().chain(o).map(|&k| Value::from(k)).chain([Value::from(scalar::format(q))]).collect())
            .collect();
        Self { domain: names(m.domain()), codomain: names(m.codomain()), entries }
    }

    fn build(&self, key: &str, spaces: &BTreeMap<String, Space>) -> Result<MultilinearMap> {
        let lookup = |n: &String| spaces.get(n).cloned().ok_or_else(|| Error::Parse(format!("map {key}: unknown space {n}")));
        let domain: Vec<Space> = self.domain.iter().map(lookup).collect::<Result<_>>()?;
        let codomain: Vec<Space> = self.codomain.iter().map(lookup).collect::<Result<_>>()?;
        let legs: Vec<&Space> = domain.iter().chain(&codomain).collect();
        let mut m = MultilinearMap::zero(domain.clone(), codomain.clone());
        let mut seen = std::collections::BTreeSet::new();
        for (n, e) in self.entries.iter().enumerate() {
            let bad = |why: String| Error::Parse(format!("map {key} entry {n} {}: {why}", Value::from(e.clone())));
            if e.len() != legs.len() + 1 {
                return Err(bad(format!("expected {} indices and a coefficient", legs.len())));
            }
            let mut idx = Vec::with_capacity(legs.len());
            for (v, sp) in e.iter().zip(&legs) {
                let k = v.as_u64().ok_or_else(|| bad("indices must be nonnegative integers".into()))? as usize;
                if k >= sp.dim() {
                    return Err(bad(format!("index {k} out of range for space {} of dim {}", sp.name(), sp.dim())));
                }
                idx.push(k);
            }
            let q = e[legs.len()].as_str().ok_or_else(|| bad("coefficient must be a \"p/q\" string".into()))?;
            let q = scalar::parse(q).map_err(|err| bad(err.to_string()))?;
            if num_traits::Zero::is_zero(&q) {
                return Err(bad("zero coefficient".into()));
            }
            if !seen.insert(idx.clone()) {
                return Err(bad("duplicate index tuple".into()));
            }
            let outputs = idx.split_off(domain.len());
            m.add_entry(idx, outputs, &q);
        }
        Ok(m)
    }
}

/// Pretty JSON with every array nested directly in another array kept on one
/// line, so each map entry is a single line.
#[derive(Default)]
struct EntryFormatter {
    indent: usize,
    // (is_array, inline) per open container
    stack: Vec<(bool, bool)>,
    has_value: bool,
}

impl EntryFormatter {
    fn inline(&self) -> bool {
        self.stack.last().is_some_and(|&(_, inline)| inline)
    }

    fn newline<W: ?Sized + io::Write>(&self, w: &mut W) -> io::Result<()> {
        w.write_all(b"\n")?;
        for _ in 0..self.indent {
            w.write_all(b"  ")?;
        }
        Ok(())
    }

    fn open<W: ?Sized + io::Write>(&mut self, w: &mut W, array: bool) -> io::Result<()> {
        let inline = self.inline() || (array && self.stack.last().is_some_and(|&(a, _)| a));
        self.stack.push((array, inline));
        if !inline {
            self.indent += 1;
        }
        self.has_value = false;
        w.write_all(if array { b"[" } else { b"{" })
    }

    fn close<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        let (array, inline) = self.stack.pop().expect("balanced");
        if !inline {
            self.indent -= 1;
            if self.has_value {
                self.newline(w)?;
            }
        }
        w.write_all(if array { b"]" } else { b"}" })
    }

    fn separator<W: ?Sized + io::Write>(&self, w: &mut W, first: bool) -> io::Result<()> {
        if self.inline() {
            if !first {
                w.write_all(b", ")?;
            }
            Ok(())
        } else {
            if !first {
                w.write_all(b",")?;
            }
            self.newline(w)
        }
    }
}

impl serde_json::ser::Formatter for EntryFormatter {
    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.open(w, true)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.close(w)
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.separator(w, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, _w: &mut W) -> io::Result<()> {
        self.has_value = true;
        Ok(())
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.open(w, false)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.close(w)
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.separator(w, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        w.write_all(b": ")
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, _w: &mut W) -> io::Result<()> {
        self.has_value = true;
        Ok(())
    }
}
