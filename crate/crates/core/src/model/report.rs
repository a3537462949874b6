//! Check reports: a plain-text summary and a JSON Lines record stream.
//!
//! Each record is one JSON object per line with fields in this order:
//!
//! | field     | type                 | notes                                       |
//! |-----------|----------------------|---------------------------------------------|
//! | `model`   | string               | model name                                  |
//! | `check`   | string               | check identifier                            |
//! | `verdict` | bool                 |                                             |
//! | `witness` | array of strings     | element/view names, empty when it holds     |
//! | `detail`  | string, optional     | failure kind or extra context               |
//! | `counts`  | object, optional     | named counters, keys sorted                 |
//! | `mapping` | array of pairs, opt. | `[from, to]` name pairs of an isomorphism   |
//!
//! Output is byte-stable for identical input.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::conditions::{AmpAxiom, AmpReport, PairWitness};
use crate::order::{FinitePoset, LatticeWitness};
use crate::ortho::{BooleanFailure, OmpWitness, OrthoPoset};
use crate::repsys::RsAxioms;
use crate::sum::{ClosureWitness, SumPoset};
use crate::verdict::Verdict;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Record {
    pub model: String,
    pub check: String,
    pub verdict: bool,
    pub witness: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub counts: BTreeMap<String, usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mapping: Option<Vec<[String; 2]>>,
}

impl Record {
    pub fn new(model: &str, check: &str, verdict: bool) -> Self {
        Record {
            model: model.to_owned(),
            check: check.to_owned(),
            verdict,
            witness: Vec::new(),
            detail: None,
            counts: BTreeMap::new(),
            mapping: None,
        }
    }

    pub fn with_witness<S: Into<String>>(mut self, witness: impl IntoIterator<Item = S>) -> Self {
        self.witness = witness.into_iter().map(Into::into).collect();
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn with_count(mut self, key: &str, value: usize) -> Self {
        self.counts.insert(key.to_owned(), value);
        self
    }

    pub fn with_mapping(mut self, mapping: Vec<[String; 2]>) -> Self {
        self.mapping = Some(mapping);
        self
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub records: Vec<Record>,
}

impl Report {
    pub fn push(&mut self, r: Record) {
        self.records.push(r);
    }

    pub fn extend(&mut self, rs: impl IntoIterator<Item = Record>) {
        self.records.extend(rs);
    }

    pub fn all_hold(&self) -> bool {
        self.records.iter().all(|r| r.verdict)
    }

    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("records serialize"));
            out.push('\n');
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let _ = write!(
                out,
                "{} {:<24} {}",
                r.model,
                r.check,
                if r.verdict { "PASS" } else { "FAIL" }
            );
            if !r.witness.is_empty() {
                let _ = write!(out, "  witness ({})", r.witness.join(", "));
            }
            if let Some(d) = &r.detail {
                let _ = write!(out, "  [{d}]");
            }
            for (k, v) in &r.counts {
                let _ = write!(out, "  {k}={v}");
            }
            out.push('\n');
            if let Some(m) = &r.mapping {
                for [a, b] in m {
                    let _ = writeln!(out, "    {a} -> {b}");
                }
            }
        }
        out
    }
}

fn lattice_record(model: &str, p: &FinitePoset, v: Verdict<LatticeWitness>) -> Record {
    match v {
        Verdict::Holds => Record::new(model, "lattice", true),
        Verdict::Fails(w) => Record::new(model, "lattice", false)
            .with_witness([p.name(w.x), p.name(w.y)])
            .with_detail(format!("missing_{}", w.missing.as_str())),
    }
}

pub fn poset_records(model: &str, p: &FinitePoset) -> Vec<Record> {
    let (least, greatest) = p.bounds();
    let bounds = Record::new(model, "bounded", least.is_some() && greatest.is_some())
        .with_detail(format!(
            "least={} greatest={}",
            least.map_or("none", |x| p.name(x)),
            greatest.map_or("none", |x| p.name(x))
        ))
        .with_count("elements", p.len());
    vec![bounds, lattice_record(model, p, p.is_lattice())]
}

pub fn omp_record(model: &str, o: &OrthoPoset, v: Verdict<OmpWitness>) -> Record {
    match v {
        Verdict::Holds => Record::new(model, "orthomodular_poset", true),
        Verdict::Fails(w) => Record::new(model, "orthomodular_poset", false)
            .with_witness([o.name(w.x), o.name(w.y)])
            .with_detail(w.clause.as_str()),
    }
}

/// Boolean, ortholattice, orthomodular poset and orthomodular lattice verdicts.
pub fn classification_records(model: &str, o: &OrthoPoset) -> Vec<Record> {
    let class = o.classify();
    let boolean = match class.boolean_witness {
        None => Record::new(model, "boolean_algebra", true),
        Some(BooleanFailure::NotLattice(w)) => Record::new(model, "boolean_algebra", false)
            .with_witness([o.name(w.x), o.name(w.y)])
            .with_detail(format!("missing_{}", w.missing.as_str())),
        Some(BooleanFailure::NotDistributive { x, y, z }) => Record::new(model, "boolean_algebra", false)
            .with_witness([o.name(x), o.name(y), o.name(z)])
            .with_detail("not_distributive"),
    };
    let lattice = lattice_record(model, o.poset(), class.lattice_witness.into());
    let mut lattice = lattice;
    lattice.check = "ortholattice".into();
    let omp = omp_record(model, o, class.omp_witness.into());
    let mut oml = Record::new(model, "orthomodular_lattice", class.is_oml);
    if !class.is_oml {
        let (w, d) = if !omp.verdict {
            (omp.witness.clone(), "not_orthomodular".to_owned())
        } else {
            (lattice.witness.clone(), "not_lattice".to_owned())
        };
        oml = oml.with_witness(w).with_detail(d);
    }
    vec![boolean, lattice, omp, oml]
}

pub fn rs_axiom_records(model: &str, axioms: &RsAxioms) -> Vec<Record> {
    [
        ("rs_identity", &axioms.identity),
        ("rs_monotony", &axioms.monotony),
        ("rs_composition", &axioms.composition),
    ]
    .into_iter()
    .map(|(check, r)| match r {
        Ok(()) => Record::new(model, check, true),
        Err(e) => Record::new(model, check, false).with_detail(e.to_string()),
    })
    .collect()
}

pub fn closure_record(model: &str, s: &SumPoset, views: &[String], v: Verdict<ClosureWitness>) -> Record {
    let r = Record::new(model, "closure_operators", v.holds());
    match v {
        Verdict::Holds => r,
        Verdict::Fails(ClosureWitness::Extension { view, class }) => r
            .with_witness([views[view].as_str(), s.name(class)])
            .with_detail("extension"),
        Verdict::Fails(ClosureWitness::Idempotence { view, class }) => r
            .with_witness([views[view].as_str(), s.name(class)])
            .with_detail("idempotence"),
        Verdict::Fails(ClosureWitness::Monotony { view, lower, upper }) => r
            .with_witness([views[view].as_str(), s.name(lower), s.name(upper)])
            .with_detail("monotony"),
    }
}

pub fn pair_record(model: &str, check: &str, s: &SumPoset, v: Verdict<PairWitness>) -> Record {
    match v {
        Verdict::Holds => Record::new(model, check, true),
        Verdict::Fails(w) => Record::new(model, check, false).with_witness([s.name(w.a), s.name(w.b)]),
    }
}

pub fn amp_records(model: &str, o: &OrthoPoset, report: &AmpReport) -> Vec<Record> {
    AmpAxiom::ALL
        .iter()
        .map(|&axiom| {
            let mut r = Record::new(model, axiom.as_str(), report.count(axiom) == 0)
                .with_count("checked", report.checked[axiom as usize])
                .with_count("violations", report.count(axiom));
            if let Some(v) = report.violations.iter().find(|v| v.axiom == axiom) {
                r = r.with_witness(v.args.iter().map(|&x| o.name(x)));
            }
            r
        })
        .collect()
}
