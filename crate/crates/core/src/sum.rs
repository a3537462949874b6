//! The pre-sum preorder of a representation system, its quotient poset (the
//! sum), the per-view closure operators, and the orthocomplement the sum
//! inherits in the boolean case.
//!
//! Pairs `(i, x)` are ordered by view, then element. Classes are the
//! mutual-reachability components of the pre-sum relation, ordered by their
//! smallest member pair, and every class keeps its full member list so that
//! failures can name them.

use thiserror::Error;

use crate::order::{FinitePoset, OrderError};
use crate::ortho::{validate_orthoposet, OrthoError, OrthoPoset};
use crate::repsys::{BooleanRepresentationSystem, RepresentationSystem};
use crate::verdict::Verdict;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SumError {
    #[error("pre-sum is not a preorder: {0}")]
    PreorderViolation(String),
    #[error("quotient is not a poset: {0}")]
    NotAPoset(OrderError),
    #[error("closure for view `{view}` depends on the representative of class `{class}`")]
    IllDefined { view: String, class: String },
    #[error("orthocomplement depends on the representative of class `{class}`")]
    IllDefinedOrtho { class: String },
    #[error("bounds differ between views `{0}` and `{1}`")]
    ViewDependentBounds(String, String),
    #[error("sum is not an orthoposet: {0}")]
    NotOrthoposet(OrthoError),
}

/// Disjoint union of the view posets with `(i,x) <= (j,y)` iff `f[j|i](x) <= y` in view `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreSum {
    pairs: Vec<(usize, usize)>,
    labels: Vec<(String, String)>,
    rel: Vec<bool>,
}

pub fn build_presum(rs: &RepresentationSystem) -> Result<PreSum, SumError> {
    let mut pairs = Vec::new();
    let mut labels = Vec::new();
    for (i, p) in rs.posets().iter().enumerate() {
        for x in 0..p.len() {
            pairs.push((i, x));
            labels.push((rs.views()[i].clone(), p.name(x).to_owned()));
        }
    }
    let n = pairs.len();
    let mut rel = vec![false; n * n];
    for (a, &(i, x)) in pairs.iter().enumerate() {
        for (b, &(j, y)) in pairs.iter().enumerate() {
            rel[a * n + b] = rs.poset(j).leq(rs.transform(j, i, x), y);
        }
    }
    let ps = PreSum { pairs, labels, rel };
    for a in 0..n {
        if !ps.leq(a, a) {
            return Err(SumError::PreorderViolation(format!(
                "not reflexive at {}",
                ps.label(a)
            )));
        }
        for b in 0..n {
            if !ps.leq(a, b) {
                continue;
            }
            for c in 0..n {
                if ps.leq(b, c) && !ps.leq(a, c) {
                    return Err(SumError::PreorderViolation(format!(
                        "not transitive through {} <= {} <= {}",
                        ps.label(a),
                        ps.label(b),
                        ps.label(c)
                    )));
                }
            }
        }
    }
    Ok(ps)
}

impl PreSum {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.rel[a * self.len() + b]
    }

    /// `View.element` for pair `a`.
    pub fn label(&self, a: usize) -> String {
        let (v, x) = &self.labels[a];
        format!("{v}.{x}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumPoset {
    pairs: Vec<(usize, usize)>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    order: FinitePoset,
    // embed[i][x] = class of (i, x)
    embed: Vec<Vec<usize>>,
}

pub fn quotient_sum(ps: &PreSum) -> Result<SumPoset, SumError> {
    let n = ps.len();
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for a in 0..n {
        if class_of[a] != usize::MAX {
            continue;
        }
        let members: Vec<usize> = (a..n).filter(|&b| ps.leq(a, b) && ps.leq(b, a)).collect();
        for &b in &members {
            class_of[b] = classes.len();
        }
        classes.push(members);
    }

    let names = class_names(ps, &classes);
    let m = classes.len();
    let mut leq = vec![false; m * m];
    for c in 0..m {
        for d in 0..m {
            leq[c * m + d] = ps.leq(classes[c][0], classes[d][0]);
        }
    }
    let order = FinitePoset::from_matrix(names, leq).map_err(SumError::NotAPoset)?;

    let views = ps.pairs.iter().map(|&(i, _)| i + 1).max().unwrap_or(0);
    let mut embed = vec![Vec::new(); views];
    for (a, &(i, _)) in ps.pairs.iter().enumerate() {
        embed[i].push(class_of[a]);
    }
    Ok(SumPoset {
        pairs: ps.pairs.clone(),
        classes,
        class_of,
        order,
        embed,
    })
}

// A class is named after its element when every member carries the same
// element name and no other class claims it; otherwise `View.element` of its
// smallest member.
fn class_names(ps: &PreSum, classes: &[Vec<usize>]) -> Vec<String> {
    let bare: Vec<Option<&str>> = classes
        .iter()
        .map(|members| {
            let first = ps.labels[members[0]].1.as_str();
            members.iter().all(|&a| ps.labels[a].1 == first).then_some(first)
        })
        .collect();
    let mut names: Vec<String> = bare
        .iter()
        .enumerate()
        .map(|(c, b)| match b {
            Some(b) if bare.iter().filter(|o| **o == Some(*b)).count() == 1 => (*b).to_owned(),
            _ => ps.label(classes[c][0]),
        })
        .collect();
    for c in 0..names.len() {
        let mut k = 1;
        while names[..c].contains(&names[c]) {
            names[c] = format!("{}_{k}", ps.label(classes[c][0]));
            k += 1;
        }
    }
    names
}

impl SumPoset {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn order(&self) -> &FinitePoset {
        &self.order
    }

    pub fn leq(&self, c: usize, d: usize) -> bool {
        self.order.leq(c, d)
    }

    pub fn name(&self, c: usize) -> &str {
        self.order.name(c)
    }

    /// Member pairs `(view, element)` of class `c`.
    pub fn members(&self, c: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.classes[c].iter().map(|&a| self.pairs[a])
    }

    pub fn class_of_pair(&self, a: usize) -> usize {
        self.class_of[a]
    }

    /// The class `⟨i, x⟩`.
    pub fn embed(&self, i: usize, x: usize) -> usize {
        self.embed[i][x]
    }
}

/// `rho[i][c]` is the closure of class `c` under view `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Closures {
    rho: Vec<Vec<usize>>,
}

impl Closures {
    pub fn view_count(&self) -> usize {
        self.rho.len()
    }

    pub fn rho(&self, i: usize, c: usize) -> usize {
        self.rho[i][c]
    }

    pub fn fixes(&self, i: usize, c: usize) -> bool {
        self.rho[i][c] == c
    }
}

/// `ρ_i(⟨j,x⟩) = ⟨i, f[i|j](x)⟩`, checked against every representative of `c`.
pub fn closure(s: &SumPoset, rs: &RepresentationSystem, i: usize, c: usize) -> Result<usize, SumError> {
    let mut members = s.members(c);
    let (j, x) = members.next().expect("classes are nonempty");
    let image = s.embed(i, rs.transform(i, j, x));
    for (j, x) in members {
        if s.embed(i, rs.transform(i, j, x)) != image {
            return Err(SumError::IllDefined {
                view: rs.views()[i].clone(),
                class: s.name(c).to_owned(),
            });
        }
    }
    Ok(image)
}

pub fn closure_table(s: &SumPoset, rs: &RepresentationSystem) -> Result<Closures, SumError> {
    let rho = (0..rs.view_count())
        .map(|i| (0..s.len()).map(|c| closure(s, rs, i, c)).collect())
        .collect::<Result<_, _>>()?;
    Ok(Closures { rho })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosureWitness {
    Extension { view: usize, class: usize },
    Idempotence { view: usize, class: usize },
    Monotony { view: usize, lower: usize, upper: usize },
}

/// Extension, idempotence and monotony of every `ρ_i`.
pub fn verify_closure_properties(s: &SumPoset, rho: &Closures) -> Verdict<ClosureWitness> {
    for view in 0..rho.view_count() {
        for class in 0..s.len() {
            let r = rho.rho(view, class);
            if !s.leq(class, r) {
                return Verdict::Fails(ClosureWitness::Extension { view, class });
            }
            if rho.rho(view, r) != r {
                return Verdict::Fails(ClosureWitness::Idempotence { view, class });
            }
        }
        for lower in 0..s.len() {
            for upper in 0..s.len() {
                if s.leq(lower, upper) && !s.leq(rho.rho(view, lower), rho.rho(view, upper)) {
                    return Verdict::Fails(ClosureWitness::Monotony { view, lower, upper });
                }
            }
        }
    }
    Verdict::Holds
}

/// Everything derived from one representation system.
#[derive(Debug, Clone)]
pub struct Sum {
    pub presum: PreSum,
    pub poset: SumPoset,
    pub closures: Closures,
}

impl Sum {
    pub fn build(rs: &RepresentationSystem) -> Result<Self, SumError> {
        let presum = build_presum(rs)?;
        let poset = quotient_sum(&presum)?;
        let closures = closure_table(&poset, rs)?;
        Ok(Sum {
            presum,
            poset,
            closures,
        })
    }
}

/// The sum of a boolean system with `⟨i,x⟩ ↦ ⟨i,x^⊥⟩` as orthocomplement.
pub fn sum_as_orthoposet(s: &SumPoset, brs: &BooleanRepresentationSystem) -> Result<OrthoPoset, SumError> {
    let mut ortho = Vec::with_capacity(s.len());
    for c in 0..s.len() {
        let mut images = s.members(c).map(|(i, x)| s.embed(i, brs.view(i).ortho(x)));
        let first = images.next().expect("classes are nonempty");
        if images.any(|d| d != first) {
            return Err(SumError::IllDefinedOrtho {
                class: s.name(c).to_owned(),
            });
        }
        ortho.push(first);
    }
    let views = brs.views();
    let bottom = |i: usize| s.embed(i, views[i].least());
    let top = |i: usize| s.embed(i, views[i].greatest());
    for i in 1..views.len() {
        if bottom(i) != bottom(0) || top(i) != top(0) {
            let names = brs.base().views();
            return Err(SumError::ViewDependentBounds(names[0].clone(), names[i].clone()));
        }
    }
    validate_orthoposet(s.order().clone(), ortho).map_err(SumError::NotOrthoposet)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SameViewJoinWitness {
    pub view: usize,
    pub x: usize,
    pub y: usize,
}

/// `⟨i,x⟩ ∨ ⟨i,y⟩` exists in the sum and equals `⟨i, x ∨ y⟩`.
pub fn check_same_view_joins(
    s: &SumPoset,
    brs: &BooleanRepresentationSystem,
) -> Verdict<SameViewJoinWitness> {
    for (view, o) in brs.views().iter().enumerate() {
        for x in 0..o.len() {
            for y in 0..o.len() {
                let local = o.join(x, y).expect("boolean join");
                if s.order().join(s.embed(view, x), s.embed(view, y)) != Some(s.embed(view, local)) {
                    return Verdict::Fails(SameViewJoinWitness { view, x, y });
                }
            }
        }
    }
    Verdict::Holds
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixedPointWitness {
    /// `c` is fixed by `ρ_view` but `c^⊥` is not.
    Complement { view: usize, class: usize },
    /// `c` and `d` are fixed but their join is missing or not fixed.
    Join { view: usize, c: usize, d: usize },
}

/// The fixed points of each `ρ_i` are closed under `⊥` and pairwise joins.
pub fn check_fixed_points(o: &OrthoPoset, rho: &Closures) -> Verdict<FixedPointWitness> {
    for view in 0..rho.view_count() {
        let fixed: Vec<usize> = (0..o.len()).filter(|&c| rho.fixes(view, c)).collect();
        for &class in &fixed {
            if !rho.fixes(view, o.ortho(class)) {
                return Verdict::Fails(FixedPointWitness::Complement { view, class });
            }
        }
        for &c in &fixed {
            for &d in &fixed {
                match o.join(c, d) {
                    Some(j) if rho.fixes(view, j) => {}
                    _ => return Verdict::Fails(FixedPointWitness::Join { view, c, d }),
                }
            }
        }
    }
    Verdict::Holds
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::validate_poset;
    use crate::repsys::{validate_boolean_rs, validate_rs, RsCandidate};

    fn single_view(p: FinitePoset) -> RepresentationSystem {
        let n = p.len();
        let mut c = RsCandidate::new(vec!["V".into()], vec![p]);
        c.set_transform(0, 0, (0..n).collect());
        validate_rs(c).unwrap()
    }

    #[test]
    fn single_view_sum_is_the_view() {
        let p = validate_poset(
            &["0", "a", "b", "1"],
            &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")],
        )
        .unwrap();
        let rs = single_view(p.clone());
        let sum = Sum::build(&rs).unwrap();
        assert_eq!(sum.presum.len(), 4);
        assert_eq!(sum.poset.len(), 4);
        assert_eq!(sum.poset.order().names(), p.names());
        for c in 0..4 {
            assert!(sum.closures.fixes(0, c));
        }
        assert!(verify_closure_properties(&sum.poset, &sum.closures).holds());

        let brs = validate_boolean_rs(rs, vec![Some(vec![3, 2, 1, 0])]).unwrap();
        let o = sum_as_orthoposet(&sum.poset, &brs).unwrap();
        assert_eq!(o.ortho_map(), &[3, 2, 1, 0]);
        assert!(check_same_view_joins(&sum.poset, &brs).holds());
        assert!(check_fixed_points(&o, &sum.closures).holds());
    }

    #[test]
    fn two_views_merge_shared_bounds() {
        // view A = {0,1}, view B = {0,a,a',1}, maps are the obvious closures
        let two = validate_poset(&["0", "1"], &[("0", "1")]).unwrap();
        let four = validate_poset(
            &["0", "a", "a'", "1"],
            &[("0", "a"), ("0", "a'"), ("a", "1"), ("a'", "1")],
        )
        .unwrap();
        let mut c = RsCandidate::new(vec!["A".into(), "B".into()], vec![two, four]);
        c.set_transform(0, 0, vec![0, 1]);
        c.set_transform(1, 1, vec![0, 1, 2, 3]);
        c.set_transform(1, 0, vec![0, 3]);
        c.set_transform(0, 1, vec![0, 1, 1, 1]);
        let rs = validate_rs(c).unwrap();
        let sum = Sum::build(&rs).unwrap();
        assert_eq!(sum.presum.len(), 6);
        assert_eq!(sum.poset.len(), 4);
        assert_eq!(sum.poset.embed(0, 0), sum.poset.embed(1, 0));
        assert_eq!(sum.poset.embed(0, 1), sum.poset.embed(1, 3));
        let names: Vec<&str> = (0..4).map(|c| sum.poset.name(c)).collect();
        assert_eq!(names, ["0", "1", "a", "a'"]);
        // ρ_A sends a to 1
        let a = sum.poset.embed(1, 1);
        assert_eq!(closure(&sum.poset, &rs, 0, a).unwrap(), sum.poset.embed(0, 1));
    }

    #[test]
    fn clashing_element_names_are_qualified() {
        let two = validate_poset(&["lo", "hi"], &[("lo", "hi")]).unwrap();
        let mut c = RsCandidate::new(vec!["A".into(), "B".into()], vec![two.clone(), two]);
        c.set_transform(0, 0, vec![0, 1]);
        c.set_transform(1, 1, vec![0, 1]);
        c.set_transform(0, 1, vec![1, 1]);
        c.set_transform(1, 0, vec![1, 1]);
        let sum = Sum::build(&validate_rs(c).unwrap()).unwrap();
        // the two tops merge, the two bottoms stay apart
        let names: Vec<&str> = (0..sum.poset.len()).map(|c| sum.poset.name(c)).collect();
        assert_eq!(names, ["A.lo", "hi", "B.lo"]);
    }
}
