//! Orthocomplemented posets and their classification.

use thiserror::Error;

use crate::order::{FinitePoset, LatticeWitness, MissingBound};
use crate::verdict::Verdict;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrthoError {
    #[error("orthocomplement table has {got} entries for {expected} elements")]
    BadOrthoMap { expected: usize, got: usize },
    #[error("poset has no least or no greatest element")]
    NotBounded,
    #[error("orthocomplement is not an involution at `{0}`")]
    NotInvolutive(String),
    #[error("orthocomplement is not antitone: `{0}` <= `{1}` but not `{1}'` <= `{0}'`")]
    NotAntitone(String, String),
    #[error("complement law fails at `{0}`")]
    ComplementLawFails(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthoPoset {
    poset: FinitePoset,
    ortho: Vec<usize>,
    least: usize,
    greatest: usize,
}

/// Validates `ortho` (indexed by element) as an orthocomplementation on `p`.
/// Checks run in the order bounded, involution, antitone, complement law;
/// the first witness in element order is reported.
pub fn validate_orthoposet(p: FinitePoset, ortho: Vec<usize>) -> Result<OrthoPoset, OrthoError> {
    let n = p.len();
    if ortho.len() != n || ortho.iter().any(|&y| y >= n) {
        return Err(OrthoError::BadOrthoMap {
            expected: n,
            got: ortho.len(),
        });
    }
    let (Some(least), Some(greatest)) = p.bounds() else {
        return Err(OrthoError::NotBounded);
    };
    for x in 0..n {
        if ortho[ortho[x]] != x {
            return Err(OrthoError::NotInvolutive(p.name(x).to_owned()));
        }
    }
    for x in 0..n {
        for y in 0..n {
            if p.leq(x, y) && !p.leq(ortho[y], ortho[x]) {
                return Err(OrthoError::NotAntitone(
                    p.name(x).to_owned(),
                    p.name(y).to_owned(),
                ));
            }
        }
    }
    for (x, &c) in ortho.iter().enumerate() {
        if p.meet(x, c) != Some(least) || p.join(x, c) != Some(greatest) {
            return Err(OrthoError::ComplementLawFails(p.name(x).to_owned()));
        }
    }
    Ok(OrthoPoset {
        poset: p,
        ortho,
        least,
        greatest,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BooleanFailure {
    NotLattice(LatticeWitness),
    /// `x ∧ (y ∨ z) ≠ (x ∧ y) ∨ (x ∧ z)`
    NotDistributive {
        x: usize,
        y: usize,
        z: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OmpClause {
    /// A join that the orthomodular law needs does not exist.
    MissingJoin,
    /// `y ∧ x^⊥` does not exist for some `x <= y`.
    MissingMeet,
    /// `x <= y` but `x ∨ (y ∧ x^⊥) ≠ y`.
    LawViolation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OmpWitness {
    pub x: usize,
    pub y: usize,
    pub clause: OmpClause,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OmlWitness {
    NotOrthomodular(OmpWitness),
    NotLattice(LatticeWitness),
}

/// Classification flags with the witness of each failed test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureClass {
    pub is_boolean: bool,
    pub is_ortholattice: bool,
    pub is_omp: bool,
    pub is_oml: bool,
    pub boolean_witness: Option<BooleanFailure>,
    pub lattice_witness: Option<LatticeWitness>,
    pub omp_witness: Option<OmpWitness>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("structure is not an orthomodular lattice")]
pub struct NotOml;

impl OrthoPoset {
    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn name(&self, x: usize) -> &str {
        self.poset.name(x)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.poset.index_of(name)
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.poset.leq(x, y)
    }

    pub fn join(&self, x: usize, y: usize) -> Option<usize> {
        self.poset.join(x, y)
    }

    pub fn meet(&self, x: usize, y: usize) -> Option<usize> {
        self.poset.meet(x, y)
    }

    pub fn ortho(&self, x: usize) -> usize {
        self.ortho[x]
    }

    pub fn ortho_map(&self) -> &[usize] {
        &self.ortho
    }

    pub fn least(&self) -> usize {
        self.least
    }

    pub fn greatest(&self) -> usize {
        self.greatest
    }

    /// Lattice plus distributivity over every triple. With the complement law
    /// already in force this is exactly a boolean algebra.
    pub fn is_boolean_algebra(&self) -> Verdict<BooleanFailure> {
        if let Verdict::Fails(w) = self.poset.is_lattice() {
            return Verdict::Fails(BooleanFailure::NotLattice(w));
        }
        let n = self.len();
        let join = |a, b| self.join(a, b).expect("lattice join");
        let meet = |a, b| self.meet(a, b).expect("lattice meet");
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if meet(x, join(y, z)) != join(meet(x, y), meet(x, z)) {
                        return Verdict::Fails(BooleanFailure::NotDistributive { x, y, z });
                    }
                }
            }
        }
        Verdict::Holds
    }

    /// Orthogonal joins exist, and `x <= y` implies `y = x ∨ (y ∧ x^⊥)`.
    /// Existence of every join and meet the law uses is checked before the law
    /// itself is evaluated.
    pub fn is_orthomodular_poset(&self) -> Verdict<OmpWitness> {
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                if self.leq(x, self.ortho(y)) && self.join(x, y).is_none() {
                    return Verdict::Fails(OmpWitness {
                        x,
                        y,
                        clause: OmpClause::MissingJoin,
                    });
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                if !self.leq(x, y) {
                    continue;
                }
                let Some(m) = self.meet(y, self.ortho(x)) else {
                    return Verdict::Fails(OmpWitness {
                        x,
                        y,
                        clause: OmpClause::MissingMeet,
                    });
                };
                match self.join(x, m) {
                    None => {
                        return Verdict::Fails(OmpWitness {
                            x,
                            y,
                            clause: OmpClause::MissingJoin,
                        })
                    }
                    Some(j) if j != y => {
                        return Verdict::Fails(OmpWitness {
                            x,
                            y,
                            clause: OmpClause::LawViolation,
                        })
                    }
                    Some(_) => {}
                }
            }
        }
        Verdict::Holds
    }

    pub fn is_orthomodular_lattice(&self) -> Verdict<OmlWitness> {
        if let Verdict::Fails(w) = self.is_orthomodular_poset() {
            return Verdict::Fails(OmlWitness::NotOrthomodular(w));
        }
        self.poset.is_lattice().map(OmlWitness::NotLattice)
    }

    pub fn classify(&self) -> StructureClass {
        let lattice = self.poset.is_lattice();
        let omp = self.is_orthomodular_poset();
        let boolean = self.is_boolean_algebra();
        StructureClass {
            is_boolean: boolean.holds(),
            is_ortholattice: lattice.holds(),
            is_omp: omp.holds(),
            is_oml: omp.holds() && lattice.holds(),
            boolean_witness: boolean.into_witness(),
            lattice_witness: lattice.into_witness(),
            omp_witness: omp.into_witness(),
        }
    }

    /// The suborder on `subset` (host indices), keeping the host's
    /// orthocomplement. Fails if the subset is not closed under it or does not
    /// form an orthoposet in the induced order.
    pub fn restrict(&self, subset: &[usize]) -> Result<OrthoPoset, OrthoError> {
        let mut local = vec![usize::MAX; self.len()];
        for (i, &x) in subset.iter().enumerate() {
            local[x] = i;
        }
        let ortho: Vec<usize> = subset.iter().map(|&x| local[self.ortho(x)]).collect();
        if let Some(i) = ortho.iter().position(|&y| y == usize::MAX) {
            return Err(OrthoError::NotInvolutive(self.name(subset[i]).to_owned()));
        }
        validate_orthoposet(self.poset.induced(subset), ortho)
    }
}

/// Sasaki projection `x ↦ (x ∨ y^⊥) ∧ y`, available only on orthomodular
/// lattices where every join and meet exists.
#[derive(Debug, Clone, Copy)]
pub struct Sasaki<'a> {
    o: &'a OrthoPoset,
}

impl<'a> Sasaki<'a> {
    pub fn new(o: &'a OrthoPoset) -> Result<Self, NotOml> {
        if o.is_orthomodular_lattice().holds() {
            Ok(Sasaki { o })
        } else {
            Err(NotOml)
        }
    }

    pub fn project(&self, x: usize, y: usize) -> usize {
        let j = self.o.join(x, self.o.ortho(y)).expect("OML join");
        self.o.meet(j, y).expect("OML meet")
    }
}

/// One-shot form of [`Sasaki::project`].
pub fn sasaki_projection(o: &OrthoPoset, x: usize, y: usize) -> Result<usize, NotOml> {
    Ok(Sasaki::new(o)?.project(x, y))
}

impl MissingBound {
    pub fn as_str(self) -> &'static str {
        match self {
            MissingBound::Join => "join",
            MissingBound::Meet => "meet",
        }
    }
}

impl OmpClause {
    pub fn as_str(self) -> &'static str {
        match self {
            OmpClause::MissingJoin => "missing_join",
            OmpClause::MissingMeet => "missing_meet",
            OmpClause::LawViolation => "law_violation",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::validate_poset;

    fn build(
        elements: &[&str],
        covers: &[(&str, &str)],
        pairs: &[(&str, &str)],
    ) -> Result<OrthoPoset, OrthoError> {
        let p = validate_poset(elements, covers).unwrap();
        let mut ortho = vec![usize::MAX; p.len()];
        for (a, b) in pairs {
            let (a, b) = (p.index_of(a).unwrap(), p.index_of(b).unwrap());
            ortho[a] = b;
            ortho[b] = a;
        }
        validate_orthoposet(p, ortho)
    }

    fn mo2() -> OrthoPoset {
        let mut covers = Vec::new();
        for a in ["a", "a'", "b", "b'"] {
            covers.push(("0", a));
            covers.push((a, "1"));
        }
        build(
            &["0", "a", "a'", "b", "b'", "1"],
            &covers,
            &[("0", "1"), ("a", "a'"), ("b", "b'")],
        )
        .unwrap()
    }

    fn o6() -> OrthoPoset {
        build(
            &["0", "a", "b", "b'", "a'", "1"],
            &[
                ("0", "a"),
                ("a", "b"),
                ("b", "1"),
                ("0", "b'"),
                ("b'", "a'"),
                ("a'", "1"),
            ],
            &[("0", "1"), ("a", "a'"), ("b", "b'")],
        )
        .unwrap()
    }

    fn boolean_8() -> OrthoPoset {
        // subsets of {a,b,c}
        let names = ["0", "a", "b", "c", "ab", "ac", "bc", "1"];
        let mut covers = Vec::new();
        for x in names {
            for y in names {
                let xs: Vec<char> = if x == "0" {
                    vec![]
                } else if x == "1" {
                    "abc".chars().collect()
                } else {
                    x.chars().collect()
                };
                let ys: Vec<char> = if y == "0" {
                    vec![]
                } else if y == "1" {
                    "abc".chars().collect()
                } else {
                    y.chars().collect()
                };
                if xs.len() + 1 == ys.len() && xs.iter().all(|c| ys.contains(c)) {
                    covers.push((x, y));
                }
            }
        }
        build(
            &names,
            &covers,
            &[("0", "1"), ("a", "bc"), ("b", "ac"), ("c", "ab")],
        )
        .unwrap()
    }

    #[test]
    fn boolean_4_accepted() {
        let o = build(
            &["0", "a", "b", "1"],
            &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")],
            &[("0", "1"), ("a", "b")],
        )
        .unwrap();
        assert!(o.is_boolean_algebra().holds());
        assert_eq!((o.least(), o.greatest()), (0, 3));
    }

    #[test]
    fn self_complement_fails_complement_law() {
        let err = build(
            &["0", "a", "1"],
            &[("0", "a"), ("a", "1")],
            &[("0", "1"), ("a", "a")],
        )
        .unwrap_err();
        assert_eq!(err, OrthoError::ComplementLawFails("a".into()));
    }

    #[test]
    fn unbounded_and_non_involutive_rejected() {
        let p = validate_poset::<&str>(&["x", "y"], &[]).unwrap();
        assert_eq!(
            validate_orthoposet(p, vec![1, 0]).unwrap_err(),
            OrthoError::NotBounded
        );
        let p = validate_poset(
            &["0", "a", "b", "1"],
            &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")],
        )
        .unwrap();
        assert_eq!(
            validate_orthoposet(p, vec![3, 2, 2, 0]).unwrap_err(),
            OrthoError::NotInvolutive("a".into())
        );
    }

    #[test]
    fn monotone_complement_rejected() {
        // identity-like swap on a chain of four: a <= b but a' = b', b' = ... not antitone
        let p = validate_poset(&["0", "a", "b", "1"], &[("0", "a"), ("a", "b"), ("b", "1")]).unwrap();
        // a <-> b is involutive but sends a <= b to b' = a <= a' = b, which is monotone
        assert_eq!(
            validate_orthoposet(p, vec![3, 2, 1, 0]).unwrap_err(),
            OrthoError::ComplementLawFails("a".into())
        );
        let p = validate_poset(
            &["0", "a", "b", "1"],
            &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")],
        )
        .unwrap();
        assert_eq!(
            validate_orthoposet(p, vec![0, 2, 1, 3]).unwrap_err(),
            OrthoError::NotAntitone("0".into(), "a".into())
        );
    }

    #[test]
    fn hexagon_is_an_orthoposet_but_not_orthomodular() {
        let o = o6();
        assert!(!o.is_boolean_algebra().holds());
        // x = a, y = b: a ∨ (b ∧ a') = a ∨ 0 = a ≠ b
        assert_eq!(
            o.is_orthomodular_poset(),
            Verdict::Fails(OmpWitness {
                x: 1,
                y: 2,
                clause: OmpClause::LawViolation
            })
        );
        assert!(matches!(
            o.is_orthomodular_lattice(),
            Verdict::Fails(OmlWitness::NotOrthomodular(_))
        ));
        assert!(Sasaki::new(&o).is_err());
    }

    #[test]
    fn mo2_is_oml_not_boolean() {
        let o = mo2();
        // first failing triple in element order 0 a a' b b' 1:
        // a ∧ (a' ∨ b) = a ∧ 1 = a but (a ∧ a') ∨ (a ∧ b) = 0
        assert_eq!(
            o.is_boolean_algebra(),
            Verdict::Fails(BooleanFailure::NotDistributive { x: 1, y: 2, z: 3 })
        );
        // the triple (a, b, b') also fails
        let (a, b, bp) = (1, 3, 4);
        let lhs = o.meet(a, o.join(b, bp).unwrap()).unwrap();
        let rhs = o.join(o.meet(a, b).unwrap(), o.meet(a, bp).unwrap()).unwrap();
        assert_eq!((lhs, rhs), (a, 0));
        assert!(o.is_orthomodular_poset().holds());
        assert!(o.is_orthomodular_lattice().holds());
    }

    #[test]
    fn classification_flags() {
        let c = boolean_8().classify();
        assert!(c.is_boolean && c.is_oml && c.is_omp && c.is_ortholattice);
        let c = mo2().classify();
        assert!(!c.is_boolean && c.is_oml && c.is_omp && c.is_ortholattice);
        let c = o6().classify();
        assert!(!c.is_boolean && !c.is_oml && !c.is_omp && c.is_ortholattice);
        assert!(c.omp_witness.is_some());
    }

    #[test]
    fn sasaki_values() {
        let o = mo2();
        let s = Sasaki::new(&o).unwrap();
        // (a ∨ b') ∧ b = 1 ∧ b = b
        assert_eq!(s.project(1, 3), 3);
        for x in 0..o.len() {
            for y in 0..o.len() {
                let p = s.project(x, y);
                assert!(o.leq(p, y));
                if o.leq(x, y) {
                    assert_eq!(p, x);
                }
            }
        }
        let b = boolean_8();
        let s = Sasaki::new(&b).unwrap();
        for x in 0..b.len() {
            for y in 0..b.len() {
                assert_eq!(s.project(x, y), b.meet(x, y).unwrap());
            }
        }
        assert_eq!(sasaki_projection(&o6(), 1, 2), Err(NotOml));
    }

    #[test]
    fn restrict_to_block() {
        let o = mo2();
        let block = o.restrict(&[0, 1, 2, 5]).unwrap();
        assert!(block.is_boolean_algebra().holds());
        assert!(o.restrict(&[0, 1, 5]).is_err());
    }
}
