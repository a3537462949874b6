//! Syntax tree of a model file, its canonical text form, and the step from
//! syntax to validated structures.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::order::{validate_poset, FinitePoset, OrderError};
use crate::ortho::{validate_orthoposet, OrthoError, OrthoPoset};
use crate::repsys::{
    validate_boolean_rs, validate_rs, BooleanRepresentationSystem, BooleanRsError, RepresentationSystem,
    RsCandidate, RsError,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Poset,
    Orthoposet,
    Repsys,
}

impl Kind {
    pub fn keyword(self) -> &'static str {
        match self {
            Kind::Poset => "poset",
            Kind::Orthoposet => "orthoposet",
            Kind::Repsys => "repsys",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelDocument {
    pub name: String,
    pub body: Body,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Body {
    Poset(PosetSpec),
    Orthoposet(OrthoSpec),
    Repsys(RepsysSpec),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PosetSpec {
    pub elements: Vec<String>,
    /// Hasse pairs `(lower, upper)`.
    pub covers: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OrthoSpec {
    pub poset: PosetSpec,
    /// Unordered complement pairs.
    pub ortho: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ViewSpec {
    Poset(PosetSpec),
    Orthoposet(OrthoSpec),
}

/// `map target<source { x->y ... ; * -> t }` defines `f[target|source]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapSpec {
    pub target: String,
    pub source: String,
    pub entries: Vec<(String, String)>,
    pub default: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RepsysItem {
    View { name: String, spec: ViewSpec },
    Map(MapSpec),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RepsysSpec {
    pub items: Vec<RepsysItem>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Ortho(#[from] OrthoError),
    #[error(transparent)]
    Rs(#[from] RsError),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("unknown view `{0}`")]
    UnknownView(String),
    #[error("duplicate view `{0}`")]
    DuplicateView(String),
    #[error("duplicate map {0}<{1}")]
    DuplicateMap(String, String),
    #[error("element `{element}` is listed twice in map {target}<{source_view}")]
    DuplicateEntry {
        target: String,
        source_view: String,
        element: String,
    },
    #[error("`{0}` is given two different orthocomplements")]
    OrthoConflict(String),
    #[error("`{0}` has no orthocomplement")]
    OrthoMissing(String),
    #[error("map {target}<{source_view} leaves `{element}` unmapped and has no default")]
    Unmapped {
        target: String,
        source_view: String,
        element: String,
    },
}

/// A validated model.
#[derive(Debug, Clone)]
pub enum Model {
    Poset(FinitePoset),
    Orthoposet(OrthoPoset),
    Repsys(RepsysModel),
}

/// A validated representation system plus the orthocomplement tables of
/// the views that declared one.
#[derive(Debug, Clone)]
pub struct RepsysModel {
    pub rs: RepresentationSystem,
    pub orthos: Vec<Option<Vec<usize>>>,
}

impl RepsysModel {
    pub fn boolean(&self) -> Result<BooleanRepresentationSystem, BooleanRsError> {
        validate_boolean_rs(self.rs.clone(), self.orthos.clone())
    }
}

impl PosetSpec {
    pub fn build(&self) -> Result<FinitePoset, ModelError> {
        Ok(validate_poset(&self.elements, &self.covers)?)
    }
}

impl OrthoSpec {
    /// The poset and the orthocomplement table, before orthoposet validation.
    pub fn build_parts(&self) -> Result<(FinitePoset, Vec<usize>), ModelError> {
        let p = self.poset.build()?;
        let lookup = |s: &str| {
            p.index_of(s)
                .ok_or_else(|| ModelError::UnknownElement(s.to_owned()))
        };
        let mut ortho = vec![usize::MAX; p.len()];
        for (a, b) in &self.ortho {
            let (ai, bi) = (lookup(a)?, lookup(b)?);
            for (x, y) in [(ai, bi), (bi, ai)] {
                if ortho[x] != usize::MAX && ortho[x] != y {
                    return Err(ModelError::OrthoConflict(p.name(x).to_owned()));
                }
                ortho[x] = y;
            }
        }
        if let Some(x) = ortho.iter().position(|&y| y == usize::MAX) {
            return Err(ModelError::OrthoMissing(p.name(x).to_owned()));
        }
        Ok((p, ortho))
    }

    pub fn build(&self) -> Result<OrthoPoset, ModelError> {
        let (p, ortho) = self.build_parts()?;
        Ok(validate_orthoposet(p, ortho)?)
    }
}

/// Per-view orthocomplement tables, `None` for plain posets.
pub type OrthoTables = Vec<Option<Vec<usize>>>;

impl RepsysSpec {
    /// Assembles the candidate system: identity maps are implicit, listed
    /// entries override the `*` default, and a map block that is absent
    /// altogether is left for the axiom checker to report.
    pub fn candidate(&self) -> Result<(RsCandidate, OrthoTables), ModelError> {
        let mut views = Vec::new();
        let mut posets = Vec::new();
        let mut orthos = Vec::new();
        for item in &self.items {
            if let RepsysItem::View { name, spec } = item {
                if views.contains(name) {
                    return Err(ModelError::DuplicateView(name.clone()));
                }
                views.push(name.clone());
                match spec {
                    ViewSpec::Poset(p) => {
                        posets.push(p.build()?);
                        orthos.push(None);
                    }
                    ViewSpec::Orthoposet(o) => {
                        let (p, table) = o.build_parts()?;
                        posets.push(p);
                        orthos.push(Some(table));
                    }
                }
            }
        }
        let view_index: HashMap<&str, usize> =
            views.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let find_view = |v: &str| {
            view_index
                .get(v)
                .copied()
                .ok_or_else(|| ModelError::UnknownView(v.to_owned()))
        };

        let k = views.len();
        let mut candidate = RsCandidate::new(views.clone(), posets);
        for i in 0..k {
            let n = candidate.posets[i].len();
            candidate.set_transform(i, i, (0..n).collect());
        }
        let mut seen = vec![false; k * k];
        for item in &self.items {
            let RepsysItem::Map(m) = item else { continue };
            let (i, j) = (find_view(&m.target)?, find_view(&m.source)?);
            if std::mem::replace(&mut seen[i * k + j], true) {
                return Err(ModelError::DuplicateMap(m.target.clone(), m.source.clone()));
            }
            let (target, source) = (&candidate.posets[i], &candidate.posets[j]);
            let in_target = |s: &str| {
                target
                    .index_of(s)
                    .ok_or_else(|| ModelError::UnknownElement(s.to_owned()))
            };
            let default = m.default.as_deref().map(in_target).transpose()?;
            let mut table = vec![None; source.len()];
            for (x, y) in &m.entries {
                let xi = source
                    .index_of(x)
                    .ok_or_else(|| ModelError::UnknownElement(x.clone()))?;
                if table[xi].replace(in_target(y)?).is_some() {
                    return Err(ModelError::DuplicateEntry {
                        target: m.target.clone(),
                        source_view: m.source.clone(),
                        element: x.clone(),
                    });
                }
            }
            let table = table
                .into_iter()
                .enumerate()
                .map(|(x, y)| {
                    y.or(default).ok_or_else(|| ModelError::Unmapped {
                        target: m.target.clone(),
                        source_view: m.source.clone(),
                        element: source.name(x).to_owned(),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            candidate.set_transform(i, j, table);
        }
        Ok((candidate, orthos))
    }

    pub fn build(&self) -> Result<RepsysModel, ModelError> {
        let (candidate, orthos) = self.candidate()?;
        Ok(RepsysModel {
            rs: validate_rs(candidate)?,
            orthos,
        })
    }
}

impl ModelDocument {
    pub fn kind(&self) -> Kind {
        match self.body {
            Body::Poset(_) => Kind::Poset,
            Body::Orthoposet(_) => Kind::Orthoposet,
            Body::Repsys(_) => Kind::Repsys,
        }
    }

    /// Resolves names and runs the validator for the document's kind.
    pub fn build(&self) -> Result<Model, ModelError> {
        Ok(match &self.body {
            Body::Poset(p) => Model::Poset(p.build()?),
            Body::Orthoposet(o) => Model::Orthoposet(o.build()?),
            Body::Repsys(r) => Model::Repsys(r.build()?),
        })
    }

    pub fn from_poset(name: &str, p: &FinitePoset) -> Self {
        ModelDocument {
            name: name.to_owned(),
            body: Body::Poset(poset_spec(p)),
        }
    }

    pub fn from_orthoposet(name: &str, o: &OrthoPoset) -> Self {
        ModelDocument {
            name: name.to_owned(),
            body: Body::Orthoposet(ortho_spec(o)),
        }
    }

    /// Serializes a system. Each map lists only the entries that differ from
    /// its most frequent image, which becomes the `*` default.
    pub fn from_repsys(name: &str, rs: &RepresentationSystem, orthos: &[Option<Vec<usize>>]) -> Self {
        let mut items = Vec::new();
        for (i, view) in rs.views().iter().enumerate() {
            let p = rs.poset(i);
            let spec = match orthos.get(i).and_then(Option::as_ref) {
                Some(table) => ViewSpec::Orthoposet(OrthoSpec {
                    poset: poset_spec(p),
                    ortho: ortho_pairs(p, table),
                }),
                None => ViewSpec::Poset(poset_spec(p)),
            };
            items.push(RepsysItem::View {
                name: view.clone(),
                spec,
            });
        }
        for i in 0..rs.view_count() {
            for j in 0..rs.view_count() {
                if i == j {
                    continue;
                }
                let table = rs.table(i, j);
                let mut counts = vec![0usize; rs.poset(i).len()];
                for &y in table {
                    counts[y] += 1;
                }
                // most frequent image, lowest index on ties
                let default = (0..counts.len()).rev().max_by_key(|&y| counts[y]);
                let entries = table
                    .iter()
                    .enumerate()
                    .filter(|&(_, &y)| Some(y) != default)
                    .map(|(x, &y)| (rs.poset(j).name(x).to_owned(), rs.poset(i).name(y).to_owned()))
                    .collect();
                items.push(RepsysItem::Map(MapSpec {
                    target: rs.views()[i].clone(),
                    source: rs.views()[j].clone(),
                    entries,
                    default: default.map(|y| rs.poset(i).name(y).to_owned()),
                }));
            }
        }
        ModelDocument {
            name: name.to_owned(),
            body: Body::Repsys(RepsysSpec { items }),
        }
    }
}

fn poset_spec(p: &FinitePoset) -> PosetSpec {
    PosetSpec {
        elements: p.names().to_vec(),
        covers: p
            .covers()
            .into_iter()
            .map(|(a, b)| (p.name(a).to_owned(), p.name(b).to_owned()))
            .collect(),
    }
}

fn ortho_pairs(p: &FinitePoset, ortho: &[usize]) -> Vec<(String, String)> {
    (0..p.len())
        .filter(|&x| ortho[x] >= x)
        .map(|x| (p.name(x).to_owned(), p.name(ortho[x]).to_owned()))
        .collect()
}

fn ortho_spec(o: &OrthoPoset) -> OrthoSpec {
    OrthoSpec {
        poset: poset_spec(o.poset()),
        ortho: ortho_pairs(o.poset(), o.ortho_map()),
    }
}

fn write_poset(f: &mut fmt::Formatter<'_>, p: &PosetSpec, indent: &str) -> fmt::Result {
    write!(f, "{indent}elements")?;
    for e in &p.elements {
        write!(f, " {e}")?;
    }
    write!(f, " ;\n{indent}covers")?;
    for (a, b) in &p.covers {
        write!(f, " {a}<{b}")?;
    }
    Ok(())
}

fn write_ortho(f: &mut fmt::Formatter<'_>, o: &OrthoSpec, indent: &str) -> fmt::Result {
    write_poset(f, &o.poset, indent)?;
    write!(f, " ;\n{indent}ortho")?;
    for (a, b) in &o.ortho {
        write!(f, " {a}:{b}")?;
    }
    Ok(())
}

impl fmt::Display for ModelDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} {{", self.kind().keyword(), self.name)?;
        match &self.body {
            Body::Poset(p) => write_poset(f, p, "  ")?,
            Body::Orthoposet(o) => write_ortho(f, o, "  ")?,
            Body::Repsys(r) => {
                for (k, item) in r.items.iter().enumerate() {
                    if k > 0 {
                        writeln!(f, " ;")?;
                    }
                    match item {
                        RepsysItem::View { name, spec } => {
                            match spec {
                                ViewSpec::Poset(p) => {
                                    writeln!(f, "  view {name} = poset {{")?;
                                    write_poset(f, p, "    ")?;
                                }
                                ViewSpec::Orthoposet(o) => {
                                    writeln!(f, "  view {name} = orthoposet {{")?;
                                    write_ortho(f, o, "    ")?;
                                }
                            }
                            write!(f, "\n  }}")?;
                        }
                        RepsysItem::Map(m) => {
                            write!(f, "  map {}<{} {{", m.target, m.source)?;
                            for (x, y) in &m.entries {
                                write!(f, " {x}->{y}")?;
                            }
                            if let Some(d) = &m.default {
                                if !m.entries.is_empty() {
                                    write!(f, " ;")?;
                                }
                                write!(f, " * -> {d}")?;
                            }
                            write!(f, " }}")?;
                        }
                    }
                }
            }
        }
        writeln!(f, "\n}}")
    }
}
