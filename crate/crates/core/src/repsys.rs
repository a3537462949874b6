//! Representation systems: a family of view posets with transformation
//! tables `f[i|j] : P_j -> P_i`, plus the extra axioms of the boolean case.

use thiserror::Error;

use crate::order::FinitePoset;
use crate::ortho::{validate_orthoposet, BooleanFailure, OrthoError, OrthoPoset};
use crate::verdict::Verdict;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RsError {
    #[error("no views")]
    Empty,
    #[error("{views} views but {posets} posets")]
    ViewCountMismatch { views: usize, posets: usize },
    #[error("duplicate view `{0}`")]
    DuplicateView(String),
    #[error("unknown view `{0}`")]
    UnknownView(String),
    #[error("view `{view}` has no element `{element}`")]
    UnknownElement { view: String, element: String },
    #[error("missing transform {target}<{source_view}")]
    MissingTransform { target: String, source_view: String },
    #[error("transform {target}<{source_view} sends `{element}` outside the target view")]
    TransformOutOfRange {
        target: String,
        source_view: String,
        element: String,
    },
    #[error("identity fails: f[{view}|{view}]({x}) != {x}")]
    IdentityViolation { view: String, x: String },
    #[error("monotony fails: {x} <= {y} in {j} but f[{i}|{j}]({x}) is not below f[{i}|{j}]({y})")]
    MonotonyViolation {
        i: String,
        j: String,
        x: String,
        y: String,
    },
    #[error("composition fails: f[{i}|{k}]({x}) is not below f[{i}|{j}](f[{j}|{k}]({x}))")]
    CompositionViolation {
        i: String,
        j: String,
        k: String,
        x: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BooleanRsError {
    #[error("{views} views but {orthos} orthocomplement tables")]
    OrthoCountMismatch { views: usize, orthos: usize },
    #[error("view `{view}` is not a boolean algebra: {reason}")]
    ViewNotBoolean { view: String, reason: ViewFailure },
    #[error("f[{i}|{j}] does not preserve the join of {x} and {y}")]
    JoinPreservationViolation {
        i: String,
        j: String,
        x: String,
        y: String,
    },
    #[error("ortho adjunction fails: f[{i}|{j}]({x}) <= {y} but f[{j}|{i}]({y}') is not below {x}'")]
    OrthoAdjunctionViolation {
        i: String,
        j: String,
        x: String,
        y: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ViewFailure {
    #[error("no orthocomplement given")]
    NoOrthocomplement,
    #[error("{0}")]
    NotOrthoposet(OrthoError),
    #[error("{0}")]
    Boolean(String),
}

/// Unchecked input to [`validate_rs`]. `transforms[i * k + j]` is the table
/// for `f[i|j]` (indexed by elements of view `j`) or `None` when absent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RsCandidate {
    pub views: Vec<String>,
    pub posets: Vec<FinitePoset>,
    pub transforms: Vec<Option<Vec<usize>>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepresentationSystem {
    views: Vec<String>,
    posets: Vec<FinitePoset>,
    transforms: Vec<Vec<usize>>,
}

impl RsCandidate {
    pub fn new(views: Vec<String>, posets: Vec<FinitePoset>) -> Self {
        let k = views.len();
        RsCandidate {
            views,
            posets,
            transforms: vec![None; k * k],
        }
    }

    pub fn set_transform(&mut self, target: usize, source: usize, table: Vec<usize>) {
        let k = self.views.len();
        self.transforms[target * k + source] = Some(table);
    }
}

/// Checks Identity, Monotony and Composition exhaustively, in that order,
/// scanning views then elements in index order.
pub fn validate_rs(c: RsCandidate) -> Result<RepresentationSystem, RsError> {
    let rs = materialize(c)?;
    rs.check_identity()?;
    rs.check_monotony()?;
    rs.check_composition()?;
    Ok(rs)
}

/// Per-axiom outcome, each with its own first witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RsAxioms {
    pub identity: Result<(), RsError>,
    pub monotony: Result<(), RsError>,
    pub composition: Result<(), RsError>,
}

impl RsAxioms {
    pub fn holds(&self) -> bool {
        self.identity.is_ok() && self.monotony.is_ok() && self.composition.is_ok()
    }
}

/// Runs all three axiom scans independently. Structural problems (missing
/// or out-of-range tables) are returned as the outer error.
pub fn check_rs_axioms(c: RsCandidate) -> Result<RsAxioms, RsError> {
    let rs = materialize(c)?;
    Ok(RsAxioms {
        identity: rs.check_identity(),
        monotony: rs.check_monotony(),
        composition: rs.check_composition(),
    })
}

fn materialize(c: RsCandidate) -> Result<RepresentationSystem, RsError> {
    let k = c.views.len();
    if k == 0 {
        return Err(RsError::Empty);
    }
    if c.posets.len() != k {
        return Err(RsError::ViewCountMismatch {
            views: k,
            posets: c.posets.len(),
        });
    }
    for (i, v) in c.views.iter().enumerate() {
        if c.views[..i].contains(v) {
            return Err(RsError::DuplicateView(v.clone()));
        }
    }
    let view = |i: usize| c.views[i].clone();
    let mut transforms = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            let Some(table) = &c.transforms[i * k + j] else {
                return Err(RsError::MissingTransform {
                    target: view(i),
                    source_view: view(j),
                });
            };
            if table.len() != c.posets[j].len() {
                return Err(RsError::MissingTransform {
                    target: view(i),
                    source_view: view(j),
                });
            }
            if let Some(x) = table.iter().position(|&y| y >= c.posets[i].len()) {
                return Err(RsError::TransformOutOfRange {
                    target: view(i),
                    source_view: view(j),
                    element: c.posets[j].name(x).to_owned(),
                });
            }
            transforms.push(table.clone());
        }
    }
    Ok(RepresentationSystem {
        views: c.views,
        posets: c.posets,
        transforms,
    })
}

impl RepresentationSystem {
    fn elem(&self, i: usize, x: usize) -> String {
        self.posets[i].name(x).to_owned()
    }

    fn check_identity(&self) -> Result<(), RsError> {
        let name = |i, x| self.elem(i, x);
        for i in 0..self.view_count() {
            for x in 0..self.posets[i].len() {
                if self.transform(i, i, x) != x {
                    return Err(RsError::IdentityViolation {
                        view: self.views[i].clone(),
                        x: name(i, x),
                    });
                }
            }
        }
        Ok(())
    }

    fn check_monotony(&self) -> Result<(), RsError> {
        let k = self.view_count();
        let name = |i, x| self.elem(i, x);
        for i in 0..k {
            for j in 0..k {
                let pj = &self.posets[j];
                for x in 0..pj.len() {
                    for y in 0..pj.len() {
                        if pj.leq(x, y)
                            && !self.posets[i].leq(self.transform(i, j, x), self.transform(i, j, y))
                        {
                            return Err(RsError::MonotonyViolation {
                                i: self.views[i].clone(),
                                j: self.views[j].clone(),
                                x: name(j, x),
                                y: name(j, y),
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn check_composition(&self) -> Result<(), RsError> {
        let k = self.view_count();
        let name = |i, x| self.elem(i, x);
        for i in 0..k {
            for j in 0..k {
                for kk in 0..k {
                    for x in 0..self.posets[kk].len() {
                        let direct = self.transform(i, kk, x);
                        let round = self.transform(i, j, self.transform(j, kk, x));
                        if !self.posets[i].leq(direct, round) {
                            return Err(RsError::CompositionViolation {
                                i: self.views[i].clone(),
                                j: self.views[j].clone(),
                                k: self.views[kk].clone(),
                                x: name(kk, x),
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn view_count(&self) -> usize {
        self.views.len()
    }

    pub fn views(&self) -> &[String] {
        &self.views
    }

    pub fn view_index(&self, name: &str) -> Option<usize> {
        self.views.iter().position(|v| v == name)
    }

    pub fn poset(&self, i: usize) -> &FinitePoset {
        &self.posets[i]
    }

    pub fn posets(&self) -> &[FinitePoset] {
        &self.posets
    }

    /// `f[i|j](x)` by index.
    #[inline]
    pub fn transform(&self, i: usize, j: usize, x: usize) -> usize {
        self.transforms[i * self.view_count() + j][x]
    }

    pub fn table(&self, i: usize, j: usize) -> &[usize] {
        &self.transforms[i * self.view_count() + j]
    }

    /// Name-based lookup of `f[target|source](x)`.
    pub fn apply_transform(&self, target: &str, source: &str, x: &str) -> Result<&str, RsError> {
        let i = self
            .view_index(target)
            .ok_or_else(|| RsError::UnknownView(target.to_owned()))?;
        let j = self
            .view_index(source)
            .ok_or_else(|| RsError::UnknownView(source.to_owned()))?;
        let xi = self.posets[j]
            .index_of(x)
            .ok_or_else(|| RsError::UnknownElement {
                view: source.to_owned(),
                element: x.to_owned(),
            })?;
        Ok(self.posets[i].name(self.transform(i, j, xi)))
    }

    /// Converts back to an editable candidate (every table present).
    pub fn to_candidate(&self) -> RsCandidate {
        RsCandidate {
            views: self.views.clone(),
            posets: self.posets.clone(),
            transforms: self.transforms.iter().cloned().map(Some).collect(),
        }
    }
}

/// A representation system whose views are boolean algebras and whose
/// transforms preserve joins and satisfy the ortho adjunction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanRepresentationSystem {
    base: RepresentationSystem,
    orthos: Vec<OrthoPoset>,
}

/// `orthos[i]` is the orthocomplement table of view `i`, if one was given.
pub fn validate_boolean_rs(
    rs: RepresentationSystem,
    orthos: Vec<Option<Vec<usize>>>,
) -> Result<BooleanRepresentationSystem, BooleanRsError> {
    let k = rs.view_count();
    if orthos.len() != k {
        return Err(BooleanRsError::OrthoCountMismatch {
            views: k,
            orthos: orthos.len(),
        });
    }
    let mut views = Vec::with_capacity(k);
    for (i, table) in orthos.into_iter().enumerate() {
        let not_boolean = |reason| BooleanRsError::ViewNotBoolean {
            view: rs.views[i].clone(),
            reason,
        };
        let table = table.ok_or_else(|| not_boolean(ViewFailure::NoOrthocomplement))?;
        let o = validate_orthoposet(rs.posets[i].clone(), table)
            .map_err(|e| not_boolean(ViewFailure::NotOrthoposet(e)))?;
        if let Verdict::Fails(w) = o.is_boolean_algebra() {
            return Err(not_boolean(ViewFailure::Boolean(describe_boolean_failure(&o, w))));
        }
        views.push(o);
    }

    for i in 0..k {
        for j in 0..k {
            let (oi, oj) = (&views[i], &views[j]);
            for x in 0..oj.len() {
                for y in 0..oj.len() {
                    let xy = oj.join(x, y).expect("boolean join");
                    let lhs = rs.transform(i, j, xy);
                    let rhs = oi
                        .join(rs.transform(i, j, x), rs.transform(i, j, y))
                        .expect("boolean join");
                    if lhs != rhs {
                        return Err(BooleanRsError::JoinPreservationViolation {
                            i: rs.views[i].clone(),
                            j: rs.views[j].clone(),
                            x: oj.name(x).to_owned(),
                            y: oj.name(y).to_owned(),
                        });
                    }
                }
            }
        }
    }

    for i in 0..k {
        for j in 0..k {
            let (oi, oj) = (&views[i], &views[j]);
            for x in 0..oj.len() {
                for y in 0..oi.len() {
                    if oi.leq(rs.transform(i, j, x), y)
                        && !oj.leq(rs.transform(j, i, oi.ortho(y)), oj.ortho(x))
                    {
                        return Err(BooleanRsError::OrthoAdjunctionViolation {
                            i: rs.views[i].clone(),
                            j: rs.views[j].clone(),
                            x: oj.name(x).to_owned(),
                            y: oi.name(y).to_owned(),
                        });
                    }
                }
            }
        }
    }
    Ok(BooleanRepresentationSystem {
        base: rs,
        orthos: views,
    })
}

fn describe_boolean_failure(o: &OrthoPoset, w: BooleanFailure) -> String {
    match w {
        BooleanFailure::NotLattice(l) => format!(
            "no {} for {} and {}",
            l.missing.as_str(),
            o.name(l.x),
            o.name(l.y)
        ),
        BooleanFailure::NotDistributive { x, y, z } => format!(
            "distributivity fails at ({}, {}, {})",
            o.name(x),
            o.name(y),
            o.name(z)
        ),
    }
}

impl BooleanRepresentationSystem {
    pub fn base(&self) -> &RepresentationSystem {
        &self.base
    }

    pub fn view(&self, i: usize) -> &OrthoPoset {
        &self.orthos[i]
    }

    pub fn views(&self) -> &[OrthoPoset] {
        &self.orthos
    }
}
