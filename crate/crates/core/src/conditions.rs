//! Point-of-view conditions on the sum of a boolean system, and the `&`
//! operation built from preferred views.
//!
//! Two conditions are checked on classes `a, b` of the sum:
//!
//! * comparable pairs are observable together: `a <= b` implies some view
//!   fixes both;
//! * preferred views exist: for every `(a, b)` some view `i` fixes `a` and
//!   `ρ_i(b) <= ρ_j(b)` for every view `j` fixing `a`.
//!
//! When both hold, `a & b = ρ_i(a) ∧ b` where `i` fixes `b` and minimises
//! `ρ_i(a)`. That is the second condition read at `(b, a)`; the builder and the
//! checker are kept as separate code paths and cross-checked in tests.

use thiserror::Error;

use crate::ortho::{NotOml, OrthoPoset, Sasaki};
use crate::sum::{Closures, SumPoset};
use crate::verdict::Verdict;

/// Maximum number of violations kept in an [`AmpReport`].
pub const REPORT_CAP: usize = 16;

/// A pair `(a, b)` of classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairWitness {
    pub a: usize,
    pub b: usize,
}

pub fn check_condition_omp(s: &SumPoset, rho: &Closures) -> Verdict<PairWitness> {
    for a in 0..s.len() {
        for b in 0..s.len() {
            if s.leq(a, b) && !(0..rho.view_count()).any(|i| rho.fixes(i, a) && rho.fixes(i, b)) {
                return Verdict::Fails(PairWitness { a, b });
            }
        }
    }
    Verdict::Holds
}

/// Lowest-indexed view fixing `fixed` whose image of `probe` lies below the
/// image under every other view fixing `fixed`.
fn preferred_view(s: &SumPoset, rho: &Closures, fixed: usize, probe: usize) -> Option<usize> {
    let fixing: Vec<usize> = (0..rho.view_count()).filter(|&i| rho.fixes(i, fixed)).collect();
    fixing.iter().copied().find(|&i| {
        fixing
            .iter()
            .all(|&j| s.leq(rho.rho(i, probe), rho.rho(j, probe)))
    })
}

pub fn check_condition_oml(s: &SumPoset, rho: &Closures) -> Verdict<PairWitness> {
    for a in 0..s.len() {
        for b in 0..s.len() {
            let fixing: Vec<usize> = (0..rho.view_count()).filter(|&i| rho.fixes(i, a)).collect();
            let found = fixing
                .iter()
                .any(|&i| fixing.iter().all(|&j| s.leq(rho.rho(i, b), rho.rho(j, b))));
            if !found {
                return Verdict::Fails(PairWitness { a, b });
            }
        }
    }
    Verdict::Holds
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AmpError {
    #[error("no preferred view for ({a}, {b})")]
    NoPreferredView { a: String, b: String },
    #[error("meet of {0} and {1} does not exist in the sum")]
    MissingMeet(String, String),
    #[error("table has {got} entries, expected {expected}")]
    BadTable { expected: usize, got: usize },
}

/// A binary operation on `n` elements, `table[a * n + b] = a & b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmpOperation {
    n: usize,
    table: Vec<usize>,
    chosen_view: Option<Vec<usize>>,
}

impl AmpOperation {
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        let table = (0..n * n).map(|k| f(k / n, k % n)).collect();
        AmpOperation {
            n,
            table,
            chosen_view: None,
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn apply(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    /// View selected for `(a, b)` when the table came from [`build_amp`].
    pub fn chosen_view(&self, a: usize, b: usize) -> Option<usize> {
        self.chosen_view.as_ref().map(|v| v[a * self.n + b])
    }
}

/// `a & b = ρ_i(a) ∧ b` with `i` a preferred view fixing `b`.
pub fn build_amp(s: &SumPoset, rho: &Closures) -> Result<AmpOperation, AmpError> {
    let n = s.len();
    let mut table = Vec::with_capacity(n * n);
    let mut chosen = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let i = preferred_view(s, rho, b, a).ok_or_else(|| AmpError::NoPreferredView {
                a: s.name(a).to_owned(),
                b: s.name(b).to_owned(),
            })?;
            let r = rho.rho(i, a);
            let m = s
                .order()
                .meet(r, b)
                .ok_or_else(|| AmpError::MissingMeet(s.name(r).to_owned(), s.name(b).to_owned()))?;
            table.push(m);
            chosen.push(i);
        }
    }
    Ok(AmpOperation {
        n,
        table,
        chosen_view: Some(chosen),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AmpAxiom {
    /// `x1 <= x2` implies `x1 & y <= x2 & y`
    Monotony,
    /// `x & y <= y`
    Reduction,
    /// `x <= y` implies `x & y = x`
    Orthomodularity,
    /// `x & y <= z` implies `z^⊥ & y <= x^⊥`
    Galois,
}

impl AmpAxiom {
    pub const ALL: [AmpAxiom; 4] = [
        AmpAxiom::Monotony,
        AmpAxiom::Reduction,
        AmpAxiom::Orthomodularity,
        AmpAxiom::Galois,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            AmpAxiom::Monotony => "amp_monotony",
            AmpAxiom::Reduction => "amp_reduction",
            AmpAxiom::Orthomodularity => "amp_orthomodularity",
            AmpAxiom::Galois => "amp_galois",
        }
    }
}

/// One violated instance; `args` are the quantified variables in the order
/// they appear in the axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmpViolation {
    pub axiom: AmpAxiom,
    pub args: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmpReport {
    /// First [`REPORT_CAP`] violations in scan order.
    pub violations: Vec<AmpViolation>,
    /// Violation counts per axiom, in [`AmpAxiom::ALL`] order.
    pub counts: [usize; 4],
    /// Instances examined per axiom.
    pub checked: [usize; 4],
}

impl AmpReport {
    pub fn holds(&self) -> bool {
        self.counts.iter().all(|&c| c == 0)
    }

    pub fn count(&self, axiom: AmpAxiom) -> usize {
        self.counts[axiom as usize]
    }
}

pub fn verify_amp_axioms(amp: &AmpOperation, o: &OrthoPoset) -> Result<AmpReport, AmpError> {
    let n = o.len();
    if amp.len() != n {
        return Err(AmpError::BadTable {
            expected: n,
            got: amp.len(),
        });
    }
    let mut report = AmpReport {
        violations: Vec::new(),
        counts: [0; 4],
        checked: [0; 4],
    };
    let record = |report: &mut AmpReport, axiom: AmpAxiom, ok: bool, args: &[usize]| {
        report.checked[axiom as usize] += 1;
        if !ok {
            report.counts[axiom as usize] += 1;
            if report.violations.len() < REPORT_CAP {
                report.violations.push(AmpViolation {
                    axiom,
                    args: args.to_vec(),
                });
            }
        }
    };
    for x1 in 0..n {
        for x2 in 0..n {
            if !o.leq(x1, x2) {
                continue;
            }
            for y in 0..n {
                let ok = o.leq(amp.apply(x1, y), amp.apply(x2, y));
                record(&mut report, AmpAxiom::Monotony, ok, &[x1, x2, y]);
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            record(
                &mut report,
                AmpAxiom::Reduction,
                o.leq(amp.apply(x, y), y),
                &[x, y],
            );
        }
    }
    for x in 0..n {
        for y in 0..n {
            if o.leq(x, y) {
                record(
                    &mut report,
                    AmpAxiom::Orthomodularity,
                    amp.apply(x, y) == x,
                    &[x, y],
                );
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if o.leq(amp.apply(x, y), z) {
                    let ok = o.leq(amp.apply(o.ortho(z), y), o.ortho(x));
                    record(&mut report, AmpAxiom::Galois, ok, &[x, y, z]);
                }
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("({x} ⊼ {y}) = {candidate} is not their meet (witness {witness})")]
pub struct NotAMeet {
    pub x: String,
    pub y: String,
    pub candidate: String,
    pub witness: String,
}

/// `x ⊼ y = (x^⊥ & y)^⊥ & y`, checked to be the greatest lower bound.
pub fn derived_meet(amp: &AmpOperation, o: &OrthoPoset, x: usize, y: usize) -> Result<usize, NotAMeet> {
    let c = amp.apply(o.ortho(amp.apply(o.ortho(x), y)), y);
    let fail = |w: usize| NotAMeet {
        x: o.name(x).to_owned(),
        y: o.name(y).to_owned(),
        candidate: o.name(c).to_owned(),
        witness: o.name(w).to_owned(),
    };
    if !o.leq(c, x) {
        return Err(fail(x));
    }
    if !o.leq(c, y) {
        return Err(fail(y));
    }
    match (0..o.len()).find(|&z| o.leq(z, x) && o.leq(z, y) && !o.leq(z, c)) {
        Some(z) => Err(fail(z)),
        None => Ok(c),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Agreement {
    pub agree: usize,
    pub total: usize,
    pub first_disagreement: Option<(usize, usize)>,
}

impl Agreement {
    pub fn ratio(&self) -> f64 {
        if self.total == 0 {
            1.0
        } else {
            self.agree as f64 / self.total as f64
        }
    }

    pub fn is_full(&self) -> bool {
        self.agree == self.total
    }
}

/// Compares `amp` with the Sasaki projection of `o` on every pair.
pub fn amp_vs_sasaki(amp: &AmpOperation, o: &OrthoPoset) -> Result<Agreement, NotOml> {
    let sasaki = Sasaki::new(o)?;
    let n = o.len();
    let mut out = Agreement {
        agree: 0,
        total: n * n,
        first_disagreement: None,
    };
    for x in 0..n {
        for y in 0..n {
            if amp.apply(x, y) == sasaki.project(x, y) {
                out.agree += 1;
            } else if out.first_disagreement.is_none() {
                out.first_disagreement = Some((x, y));
            }
        }
    }
    Ok(out)
}
