//! Boolean subalgebras of a finite bounded orthoposet, and the canonical
//! boolean representation system with one view per subalgebra.
//!
//! Every boolean subalgebra of a finite structure is complete, so "complete
//! boolean subalgebra" reduces to "boolean subalgebra" here. Structures are
//! limited to [`DEFAULT_CAP`] elements unless a larger cap is passed.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::order::find_order_isomorphism;
use crate::ortho::OrthoPoset;
use crate::repsys::{
    validate_boolean_rs, validate_rs, BooleanRepresentationSystem, BooleanRsError, RsCandidate, RsError,
};
use crate::sum::{sum_as_orthoposet, Sum};
use crate::verdict::Verdict;

pub const DEFAULT_CAP: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("structure has {size} elements, above the cap of {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("canonical system fails the representation-system axioms: {0}")]
    NotRs(RsError),
    #[error("canonical system is not boolean: {0}")]
    NotBooleanRs(BooleanRsError),
}

/// A subset of the host closed under its orthocomplement, joins and meets,
/// and forming a boolean algebra. `carrier` holds sorted host indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct BooleanSubalgebra {
    carrier: Vec<usize>,
    atoms: Vec<usize>,
}

impl BooleanSubalgebra {
    pub fn carrier(&self) -> &[usize] {
        &self.carrier
    }

    pub fn atoms(&self) -> &[usize] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.carrier.binary_search(&x).is_ok()
    }

    /// Position of host element `x` in the carrier.
    pub fn local(&self, x: usize) -> Option<usize> {
        self.carrier.binary_search(&x).ok()
    }

    /// Checks every subalgebra invariant against `host`; `None` if any fails.
    pub fn from_carrier(host: &OrthoPoset, carrier: &BTreeSet<usize>) -> Option<Self> {
        if !carrier.contains(&host.least()) || !carrier.contains(&host.greatest()) {
            return None;
        }
        for &x in carrier {
            if !carrier.contains(&host.ortho(x)) {
                return None;
            }
            for &y in carrier {
                match (host.join(x, y), host.meet(x, y)) {
                    (Some(j), Some(m)) if carrier.contains(&j) && carrier.contains(&m) => {}
                    _ => return None,
                }
            }
        }
        let carrier: Vec<usize> = carrier.iter().copied().collect();
        let induced = host.restrict(&carrier).ok()?;
        if !induced.is_boolean_algebra().holds() {
            return None;
        }
        let bottom = host.least();
        let atoms: Vec<usize> = carrier
            .iter()
            .copied()
            .filter(|&a| a != bottom && !carrier.iter().any(|&b| b != bottom && b != a && host.leq(b, a)))
            .collect();
        (carrier.len() == 1usize << atoms.len()).then_some(BooleanSubalgebra { carrier, atoms })
    }
}

// Adds joins, meets and complements until nothing changes; `None` as soon as
// some pair has no join or meet in the host.
fn close(o: &OrthoPoset, mut set: BTreeSet<usize>) -> Option<BTreeSet<usize>> {
    loop {
        let mut next = set.clone();
        for &x in &set {
            next.insert(o.ortho(x));
            for &y in &set {
                next.insert(o.join(x, y)?);
                next.insert(o.meet(x, y)?);
            }
        }
        if next.len() == set.len() {
            return Some(set);
        }
        set = next;
    }
}

pub fn enumerate_boolean_subalgebras(o: &OrthoPoset) -> Result<Vec<BooleanSubalgebra>, DecomposeError> {
    enumerate_boolean_subalgebras_with_cap(o, DEFAULT_CAP)
}

/// Grows subalgebras from the seeds `{0, 1}` and `{0, x, x^⊥, 1}` by adding
/// one seed at a time and closing. Every boolean subalgebra is the closure of
/// the seeds of its atoms, and each partial closure stays inside it, so the
/// search reaches all of them. Output is sorted by size, then carrier.
pub fn enumerate_boolean_subalgebras_with_cap(
    o: &OrthoPoset,
    cap: usize,
) -> Result<Vec<BooleanSubalgebra>, DecomposeError> {
    if o.len() > cap {
        return Err(DecomposeError::CapExceeded { size: o.len(), cap });
    }
    let (bottom, top) = (o.least(), o.greatest());
    let seeds: Vec<BTreeSet<usize>> = (0..o.len())
        .map(|x| BTreeSet::from([bottom, top, x, o.ortho(x)]))
        .filter_map(|s| close(o, s))
        .filter(|s| BooleanSubalgebra::from_carrier(o, s).is_some())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();

    let mut found: BTreeSet<BTreeSet<usize>> = seeds.iter().cloned().collect();
    let mut frontier: Vec<BTreeSet<usize>> = seeds.clone();
    while let Some(current) = frontier.pop() {
        for seed in &seeds {
            if seed.is_subset(&current) {
                continue;
            }
            let Some(merged) = close(o, current.union(seed).copied().collect()) else {
                continue;
            };
            if found.contains(&merged) || BooleanSubalgebra::from_carrier(o, &merged).is_none() {
                continue;
            }
            found.insert(merged.clone());
            frontier.push(merged);
        }
    }

    let mut out: Vec<BooleanSubalgebra> = found
        .iter()
        .filter_map(|s| BooleanSubalgebra::from_carrier(o, s))
        .collect();
    out.sort_by(|a, b| (a.len(), &a.carrier).cmp(&(b.len(), &b.carrier)));
    Ok(out)
}

/// Least element of `b` above `x`, as the meet of all such elements.
pub fn rho_b(o: &OrthoPoset, b: &BooleanSubalgebra, x: usize) -> usize {
    let r = b
        .carrier
        .iter()
        .copied()
        .filter(|&y| o.leq(x, y))
        .reduce(|acc, y| o.meet(acc, y).expect("subalgebra meets exist"))
        .expect("the top element lies in every subalgebra");
    debug_assert!(o.leq(x, r) && b.contains(r));
    r
}

/// The boolean representation system whose views are the boolean
/// subalgebras of `o`, named `B0, B1, ...` in enumeration order, with
/// `f[B|B']` the restriction of `rho_b(B, -)` to `B'`.
#[derive(Debug, Clone)]
pub struct CanonicalSystem {
    pub subalgebras: Vec<BooleanSubalgebra>,
    pub brs: BooleanRepresentationSystem,
}

pub fn build_canonical_rs(o: &OrthoPoset) -> Result<CanonicalSystem, DecomposeError> {
    let subalgebras = enumerate_boolean_subalgebras(o)?;
    let views: Vec<String> = (0..subalgebras.len()).map(|i| format!("B{i}")).collect();
    let posets = subalgebras
        .iter()
        .map(|b| o.poset().induced(&b.carrier))
        .collect();
    let mut candidate = RsCandidate::new(views, posets);
    for (i, target) in subalgebras.iter().enumerate() {
        for (j, source) in subalgebras.iter().enumerate() {
            let table = source
                .carrier
                .iter()
                .map(|&y| {
                    target
                        .local(rho_b(o, target, y))
                        .expect("rho lands in the target")
                })
                .collect();
            candidate.set_transform(i, j, table);
        }
    }
    let rs = validate_rs(candidate).map_err(DecomposeError::NotRs)?;
    let orthos = subalgebras
        .iter()
        .map(|b| {
            Some(
                b.carrier
                    .iter()
                    .map(|&x| b.local(o.ortho(x)).expect("closed under ortho"))
                    .collect(),
            )
        })
        .collect();
    let brs = validate_boolean_rs(rs, orthos).map_err(DecomposeError::NotBooleanRs)?;
    Ok(CanonicalSystem { subalgebras, brs })
}

/// Some subalgebra contains both `a` and `b`.
pub fn compatible(subalgebras: &[BooleanSubalgebra], a: usize, b: usize) -> bool {
    subalgebras.iter().any(|s| s.contains(a) && s.contains(b))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RoundtripStage {
    Decompose,
    Sum,
    WellDefined,
    Bijective,
    Order,
    Ortho,
}

impl fmt::Display for RoundtripStage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RoundtripStage::Decompose => "decompose",
            RoundtripStage::Sum => "sum",
            RoundtripStage::WellDefined => "well_defined",
            RoundtripStage::Bijective => "bijective",
            RoundtripStage::Order => "order",
            RoundtripStage::Ortho => "ortho",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("roundtrip fails at {stage}: {detail}")]
pub struct RoundtripFailure {
    pub stage: RoundtripStage,
    pub detail: String,
}

/// Result of decomposing `o` and summing the pieces back together.
/// `iso[c]` is the host element represented by class `c`.
#[derive(Debug, Clone)]
pub struct Roundtrip {
    pub canonical: CanonicalSystem,
    pub sum: Sum,
    pub sum_ortho: OrthoPoset,
    pub iso: Vec<usize>,
}

pub fn roundtrip_check(o: &OrthoPoset) -> Result<Roundtrip, RoundtripFailure> {
    let fail = |stage, detail: String| RoundtripFailure { stage, detail };
    let canonical = build_canonical_rs(o).map_err(|e| fail(RoundtripStage::Decompose, e.to_string()))?;
    let sum = Sum::build(canonical.brs.base()).map_err(|e| fail(RoundtripStage::Sum, e.to_string()))?;
    let sum_ortho = sum_as_orthoposet(&sum.poset, &canonical.brs)
        .map_err(|e| fail(RoundtripStage::Sum, e.to_string()))?;

    let mut iso = Vec::with_capacity(sum.poset.len());
    for c in 0..sum.poset.len() {
        let mut hosts = sum
            .poset
            .members(c)
            .map(|(b, y)| canonical.subalgebras[b].carrier[y]);
        let x = hosts.next().expect("classes are nonempty");
        if let Some(other) = hosts.find(|&h| h != x) {
            return Err(fail(
                RoundtripStage::WellDefined,
                format!(
                    "class {} holds {} and {}",
                    sum.poset.name(c),
                    o.name(x),
                    o.name(other)
                ),
            ));
        }
        iso.push(x);
    }
    if iso.len() != o.len() || iso.iter().collect::<BTreeSet<_>>().len() != iso.len() {
        return Err(fail(
            RoundtripStage::Bijective,
            format!("{} classes for {} elements", iso.len(), o.len()),
        ));
    }
    if find_order_isomorphism(sum.poset.order(), o.poset(), Some(&iso))
        .ok()
        .flatten()
        .is_none()
    {
        return Err(fail(
            RoundtripStage::Order,
            "class map is not an order isomorphism".into(),
        ));
    }
    if let Some(c) = (0..iso.len()).find(|&c| iso[sum_ortho.ortho(c)] != o.ortho(iso[c])) {
        return Err(fail(
            RoundtripStage::Ortho,
            format!("complement of {} is not preserved", sum.poset.name(c)),
        ));
    }
    Ok(Roundtrip {
        canonical,
        sum,
        sum_ortho,
        iso,
    })
}

/// `(a ∨ b) ∧ (a ∨ b^⊥)`, when the joins and the meet exist.
pub fn cover_element(o: &OrthoPoset, a: usize, b: usize) -> Option<usize> {
    o.join(a, b)
        .zip(o.join(a, o.ortho(b)))
        .and_then(|(l, r)| o.meet(l, r))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverClause {
    Missing,
    NotCompatible,
    NotAbove,
    NotLeast,
}

impl CoverClause {
    pub fn as_str(self) -> &'static str {
        match self {
            CoverClause::Missing => "missing",
            CoverClause::NotCompatible => "not_compatible",
            CoverClause::NotAbove => "not_above",
            CoverClause::NotLeast => "not_least",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoverWitness {
    pub a: usize,
    pub b: usize,
    /// The element under test, when it exists.
    pub c: Option<usize>,
    pub clause: CoverClause,
}

/// For every pair, `c = (a ∨ b) ∧ (a ∨ b^⊥)` exists, is compatible with `a`,
/// lies above `b`, and lies below every `d` compatible with `a` with `b <= d`.
/// Clauses are tested in that order; the witness is the first failure.
pub fn check_compatible_cover(o: &OrthoPoset, subalgebras: &[BooleanSubalgebra]) -> Verdict<CoverWitness> {
    for a in 0..o.len() {
        for b in 0..o.len() {
            let fail = |c, clause| Verdict::Fails(CoverWitness { a, b, c, clause });
            let Some(c) = cover_element(o, a, b) else {
                return fail(None, CoverClause::Missing);
            };
            if !compatible(subalgebras, a, c) {
                return fail(Some(c), CoverClause::NotCompatible);
            }
            if !o.leq(b, c) {
                return fail(Some(c), CoverClause::NotAbove);
            }
            if (0..o.len()).any(|d| o.leq(b, d) && compatible(subalgebras, a, d) && !o.leq(c, d)) {
                return fail(Some(c), CoverClause::NotLeast);
            }
        }
    }
    Verdict::Holds
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::validate_poset;
    use crate::ortho::validate_orthoposet;

    fn build(elements: &[&str], covers: &[(&str, &str)], pairs: &[(&str, &str)]) -> OrthoPoset {
        let p = validate_poset(elements, covers).unwrap();
        let mut ortho = vec![usize::MAX; p.len()];
        for (a, b) in pairs {
            let (a, b) = (p.index_of(a).unwrap(), p.index_of(b).unwrap());
            ortho[a] = b;
            ortho[b] = a;
        }
        validate_orthoposet(p, ortho).unwrap()
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
    }

    fn carriers(o: &OrthoPoset) -> Vec<Vec<usize>> {
        enumerate_boolean_subalgebras(o)
            .unwrap()
            .into_iter()
            .map(|b| b.carrier)
            .collect()
    }

    #[test]
    fn mo2_has_three_subalgebras() {
        assert_eq!(
            carriers(&mo2()),
            vec![vec![0, 5], vec![0, 1, 2, 5], vec![0, 3, 4, 5]]
        );
    }

    #[test]
    fn hexagon_has_three_subalgebras() {
        // 0 a b b' a' 1: {0,1}, {0,a,a',1}, {0,b,b',1}
        assert_eq!(
            carriers(&o6()),
            vec![vec![0, 5], vec![0, 1, 4, 5], vec![0, 2, 3, 5]]
        );
    }

    #[test]
    fn rho_values() {
        let o = mo2();
        let subs = enumerate_boolean_subalgebras(&o).unwrap();
        let block_a = &subs[1];
        assert_eq!(rho_b(&o, block_a, 3), 5);
        assert_eq!(rho_b(&o, block_a, 1), 1);
        let trivial = &subs[0];
        assert_eq!(rho_b(&o, trivial, 0), 0);
        for x in 1..o.len() {
            assert_eq!(rho_b(&o, trivial, x), 5);
        }
    }

    #[test]
    fn compatibility() {
        let o = mo2();
        let subs = enumerate_boolean_subalgebras(&o).unwrap();
        assert!(!compatible(&subs, 1, 3));
        for x in 0..o.len() {
            assert!(compatible(&subs, x, o.ortho(x)));
        }
        let h = o6();
        let subs = enumerate_boolean_subalgebras(&h).unwrap();
        assert!(h.leq(1, 2));
        assert!(!compatible(&subs, 1, 2));
    }

    #[test]
    fn cover_element_does_not_dominate_b() {
        // a = 0, b = a: (0 ∨ a) ∧ (0 ∨ a') = 0
        let o = mo2();
        let subs = enumerate_boolean_subalgebras(&o).unwrap();
        assert_eq!(cover_element(&o, 0, 1), Some(0));
        assert_eq!(
            check_compatible_cover(&o, &subs),
            Verdict::Fails(CoverWitness {
                a: 0,
                b: 1,
                c: Some(0),
                clause: CoverClause::NotAbove
            })
        );
        // with the roles swapped the element is the least one compatible with a above b
        for a in 0..o.len() {
            for b in 0..o.len() {
                let c = cover_element(&o, b, a).unwrap();
                assert!(compatible(&subs, a, c) && o.leq(b, c));
                for d in 0..o.len() {
                    if o.leq(b, d) && compatible(&subs, a, d) {
                        assert!(o.leq(c, d));
                    }
                }
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(
            enumerate_boolean_subalgebras_with_cap(&mo2(), 4).unwrap_err(),
            DecomposeError::CapExceeded { size: 6, cap: 4 }
        );
    }

    #[test]
    fn roundtrips() {
        for o in [mo2(), o6()] {
            let r = roundtrip_check(&o).unwrap();
            assert_eq!(r.canonical.subalgebras.len(), 3);
            assert_eq!(r.sum.presum.len(), 10);
            assert_eq!(r.sum.poset.len(), 6);
            assert_eq!(r.iso.len(), 6);
        }
    }
}
